use std::io::{IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::thread;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use tetrad::analyze::{analyze, AnalysisConfig, MatchMode};
use tetrad::cadence::{
    is_cadential, is_minimal_cadential, minimal_cadential_sets, region_of, Arity, CadentialSet, DegreeSet, ScaleDegree,
    Tonality,
};
use tetrad::chordsym::{parse_leadsheet, realize_chord, ParsedChord};
use tetrad::dot::{cayley_dot, conglomerate_dot, prism_dot};
use tetrad::modulation::{common_degree_chords, descending_chain, PivotTable};
use tetrad::pitch::{PitchClass, RootedChord};
use tetrad::transform::{shortest_path, verify_theory, Check, TransformationWord};

#[derive(Parser)]
#[command(
    name = "tetrad",
    version,
    about = "Seventh-chord transformations, cadential sets and lead-sheet analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a word of generators to a chord.
    Transform {
        #[arg(long)]
        chord: ParsedChord,
        /// Comma-separated generators applied left to right, e.g. `L42,T8`.
        #[arg(long)]
        word: TransformationWord,
    },
    /// List the minimal cadential sets of a major key.
    Cadences {
        #[arg(long)]
        key: PitchClass,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(3..=4))]
        arity: u8,
    },
    /// Common degree chords of two keys and the pivot-table requirement.
    Pivots {
        #[arg(long)]
        from: PitchClass,
        #[arg(long)]
        to: PitchClass,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(3..=4))]
        arity: u8,
        /// Pivot table file (`interval=<n> degrees=<list>` lines).
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Shortest generator word between two chords.
    Path {
        #[arg(long)]
        from: ParsedChord,
        #[arg(long)]
        to: ParsedChord,
        /// Generator set, comma-separated.
        #[arg(long, default_value = "R42,L13,L42,P42")]
        gens: TransformationWord,
    },
    /// Analyze lead sheets.
    Analyze {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, default_value = "degree_root")]
        mode: MatchMode,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        window: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        stride: u64,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
        cover_span: u64,
        /// Do not read a tonic sixth chord as the tonic seventh.
        #[arg(long)]
        no_sixth_as_tonic: bool,
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the diagram laws and the cadential-set enumeration.
    Verify {
        /// One of triangles, prism, r42_t_commute, triadic_diagram,
        /// involutions, p42_supertonic, cadences, or all.
        #[arg(long, default_value = "all", value_parser = parse_check_id)]
        check: String,
    },
    /// Whole-step descending ii-V-I chain.
    Chain {
        #[arg(long)]
        key: PitchClass,
        #[arg(long, default_value_t = 3)]
        length: usize,
        /// Drop the dominants.
        #[arg(long)]
        fast: bool,
    },
    /// Graphviz description of a diagram.
    ExportDot {
        #[arg(long, value_enum)]
        what: DotTarget,
        #[arg(long, default_value = "C")]
        key: PitchClass,
        #[arg(long, default_value = "R42,L13,L42,P42")]
        gens: TransformationWord,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, ValueEnum)]
enum DotTarget {
    Conglomerate,
    Prism,
    Cayley,
}

fn parse_check_id(s: &str) -> Result<String, String> {
    if s == "all" || s == "cadences" || s.parse::<Check>().is_ok() {
        Ok(s.to_string())
    } else {
        let ids: Vec<&str> = Check::ALL.iter().map(|c| c.id()).collect();
        Err(format!("expected one of {}, cadences, all", ids.join(", ")))
    }
}

fn arity(n: u8) -> Arity {
    if n == 3 {
        Arity::Triadic
    } else {
        Arity::Tetradic
    }
}

fn realize(p: &ParsedChord) -> Result<RootedChord> {
    Ok(realize_chord(p).with_context(|| format!("cannot realize {p}"))?.0)
}

fn load_table(path: &Option<PathBuf>) -> Result<PivotTable> {
    match path {
        None => Ok(PivotTable::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            Ok(text.parse().with_context(|| format!("in {}", p.display()))?)
        }
    }
}

fn paint(ok: bool) -> String {
    let word = if ok { "PASS" } else { "FAIL" };
    let colour = std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal();
    match (colour, ok) {
        (false, _) => word.to_string(),
        (true, true) => format!("\x1b[32m{word}\x1b[0m"),
        (true, false) => format!("\x1b[31m{word}\x1b[0m"),
    }
}

/// Enumeration cross-check: for every root, the tetradic and triadic
/// minimal sets are the named ones, and {II, V} is cadential but not
/// minimal. Returns (cases, failure messages).
fn check_cadences() -> (usize, Vec<String>) {
    let mut cases = 0;
    let mut failures = Vec::new();
    let ii_v = DegreeSet::of(&[ScaleDegree::II, ScaleDegree::V]);
    for root in PitchClass::all() {
        let key = Tonality::major(root);
        for a in [Arity::Tetradic, Arity::Triadic] {
            cases += 1;
            let mut got = minimal_cadential_sets(&key, a);
            got.sort_by_key(|s| s.name);
            let want = CadentialSet::all_named(a);
            if got != want {
                failures.push(format!("{key} {a:?}: got {got:?}"));
            }
        }
        cases += 1;
        if !is_cadential(&key, ii_v, Arity::Tetradic) || is_minimal_cadential(&key, ii_v, Arity::Tetradic) {
            failures.push(format!("{key}: {{II,V}} should be cadential and not minimal"));
        }
    }
    (cases, failures)
}

fn run_verify(which: &str, out: &mut impl Write) -> Result<bool> {
    let checks: Vec<Check> = match which {
        "all" => Check::ALL.to_vec(),
        "cadences" => Vec::new(),
        id => vec![id.parse()?],
    };
    let mut all_ok = true;
    for c in checks {
        let r = verify_theory(c);
        all_ok &= r.passed();
        writeln!(out, "{} {:<16} {:>4} cases", paint(r.passed()), c.id(), r.cases_checked)?;
        for f in r.failures.iter().take(10) {
            let got = f.got.map_or("undefined".to_string(), |g| g.symbol());
            writeln!(out, "    {}: {} expected {} got {}", f.case, f.input, f.expected, got)?;
        }
    }
    if which == "all" || which == "cadences" {
        let (cases, failures) = check_cadences();
        all_ok &= failures.is_empty();
        writeln!(
            out,
            "{} {:<16} {:>4} cases",
            paint(failures.is_empty()),
            "cadences",
            cases
        )?;
        for f in failures.iter().take(10) {
            writeln!(out, "    {f}")?;
        }
    }
    Ok(all_ok)
}

fn run(cli: Cli) -> Result<bool> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Transform { chord, word } => {
            let c = realize(&chord)?;
            let r = word.apply(&c)?;
            writeln!(out, "{r}")?;
        }
        Command::Cadences { key, arity: n } => {
            let key = Tonality::major(key);
            let a = arity(n);
            let mut sets = minimal_cadential_sets(&key, a);
            sets.sort_by_key(|s| s.name);
            for s in sets {
                let chords: Vec<String> = s.degrees.iter().map(|d| key.degree_chord(d, a).symbol()).collect();
                let label = s.name.map_or_else(|| "-".to_string(), |n| n.to_string());
                let region = if a == Arity::Tetradic {
                    format!("  region {}", region_of(&s))
                } else {
                    String::new()
                };
                let line = format!(
                    "{label:<3} {:<12} {:<16}{region}",
                    s.degrees.to_string(),
                    chords.join(" ")
                );
                writeln!(out, "{}", line.trim_end())?;
            }
        }
        Command::Pivots {
            from,
            to,
            arity: n,
            table,
        } => {
            let table = load_table(&table)?;
            let (k1, k2) = (Tonality::major(from), Tonality::major(to));
            let common = common_degree_chords(&k1, &k2, arity(n));
            if common.is_empty() {
                writeln!(out, "no common degree chords")?;
            }
            for c in common {
                writeln!(out, "{:<8} {} in {k1}, {} in {k2}", c.chord.symbol(), c.first, c.second)?;
            }
            let interval = from.interval_to(to);
            match table.required(interval) {
                Some(req) => writeln!(out, "interval +{interval}: quantized when {k2} presents {req}")?,
                None => writeln!(out, "interval +{interval}: no pivot table entry, not quantized")?,
            }
        }
        Command::Path { from, to, gens } => {
            let (a, b) = (realize(&from)?, realize(&to)?);
            match shortest_path(&a, &b, gens.generators())? {
                Some(w) => writeln!(out, "{w} (length {})", w.len())?,
                None => writeln!(out, "NoPath")?,
            }
        }
        Command::Analyze {
            files,
            mode,
            window,
            stride,
            radius,
            cover_span,
            no_sixth_as_tonic,
            table,
            format,
        } => {
            let config = AnalysisConfig {
                mode,
                window: window as usize,
                stride: stride as usize,
                cover_span: cover_span as usize,
                passage_radius: radius,
                sixth_as_tonic: !no_sixth_as_tonic,
                pivot_table: load_table(&table)?,
            };
            let results: Vec<Result<String>> = thread::scope(|s| {
                let handles: Vec<_> = files
                    .iter()
                    .map(|path| {
                        let config = &config;
                        s.spawn(move || -> Result<String> {
                            let text =
                                std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                            let sheet = parse_leadsheet(&text).with_context(|| format!("in {}", path.display()))?;
                            let report = analyze(&sheet, config);
                            Ok(match format {
                                Format::Text => report.to_text(),
                                Format::Structured => report.to_json() + "\n",
                            })
                        })
                    })
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("analysis thread panicked"))
                    .collect()
            });
            let mut ok = true;
            for (i, r) in results.into_iter().enumerate() {
                match r {
                    Ok(text) => {
                        if i > 0 && matches!(format, Format::Text) {
                            writeln!(out)?;
                        }
                        out.write_all(text.as_bytes())?;
                    }
                    Err(e) => {
                        eprintln!("error: {e:#}");
                        ok = false;
                    }
                }
            }
            return Ok(ok);
        }
        Command::Verify { check } => return run_verify(&check, &mut out),
        Command::Chain { key, length, fast } => {
            if length == 0 {
                bail!("length must be at least 1");
            }
            writeln!(out, "{}", descending_chain(&Tonality::major(key), length, fast))?;
        }
        Command::ExportDot { what, key, gens } => {
            let key = Tonality::major(key);
            let dot = match what {
                DotTarget::Conglomerate => conglomerate_dot(&key),
                DotTarget::Prism => prism_dot(&key),
                DotTarget::Cayley => cayley_dot(gens.generators()),
            };
            out.write_all(dot.as_bytes())?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
