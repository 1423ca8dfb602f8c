//! Lead-sheet analysis: degree matching, windowed cadential-set activation,
//! key inference, modulation and bridge detection.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::cadence::{
    minimal_cadential_sets, region_of, Arity, CadentialSet, DegreeSet, Region, ScaleDegree, Tonality,
};
use crate::chordsym::{realize_chord, ParsedChord, Progression};
use crate::modulation::p42_bridge;
use crate::modulation::{classify_modulation_with, BridgeResult, ModulationClassification, PivotTable, Verdict};
use crate::pitch::{ChordQuality, PcSet, PitchClass, RootedChord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchMode {
    /// The realized chord equals the degree seventh.
    Exact,
    /// The chord's root is the degree's scale note.
    DegreeRoot,
    /// The degree seventh's pitch classes lie in the union of a few
    /// consecutive chords.
    Cover,
}

impl MatchMode {
    pub const ALL: [MatchMode; 3] = [MatchMode::Exact, MatchMode::DegreeRoot, MatchMode::Cover];

    pub fn id(self) -> &'static str {
        match self {
            MatchMode::Exact => "exact",
            MatchMode::DegreeRoot => "degree_root",
            MatchMode::Cover => "cover",
        }
    }
}

impl fmt::Display for MatchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown match mode `{0}` (expected exact, degree_root or cover)")]
pub struct UnknownMatchMode(pub String);

impl FromStr for MatchMode {
    type Err = UnknownMatchMode;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_lowercase().replace('-', "_");
        MatchMode::ALL
            .into_iter()
            .find(|m| m.id() == norm)
            .ok_or_else(|| UnknownMatchMode(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchKind {
    Exact,
    /// A major sixth chord on the tonic, read as the tonic seventh.
    TonicSubstitute,
    DegreeRoot,
    Cover,
}

impl MatchKind {
    pub fn strength(self) -> u8 {
        match self {
            MatchKind::Exact | MatchKind::TonicSubstitute => 2,
            MatchKind::DegreeRoot | MatchKind::Cover => 1,
        }
    }

    fn is_literal(self) -> bool {
        self.strength() == 2
    }
}

impl fmt::Display for MatchKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatchKind::Exact => "exact",
            MatchKind::TonicSubstitute => "tonic substitute",
            MatchKind::DegreeRoot => "root",
            MatchKind::Cover => "cover",
        })
    }
}

/// One chord (or, for cover matches, a run of chords starting at
/// `measure`) read as a degree of `key`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeMatch {
    pub measure: usize,
    pub position: usize,
    pub chord: ParsedChord,
    pub key: Tonality,
    pub degree: ScaleDegree,
    pub kind: MatchKind,
    pub strength: u8,
    /// Later chords of a cover window.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cover_with: Vec<ParsedChord>,
    pub end_measure: usize,
}

impl DegreeMatch {
    fn describe(&self) -> String {
        let chords: Vec<String> = std::iter::once(&self.chord)
            .chain(&self.cover_with)
            .map(ParsedChord::render)
            .collect();
        let at = if self.end_measure == self.measure {
            format!("m.{}", self.measure)
        } else {
            format!("mm.{}-{}", self.measure, self.end_measure)
        };
        format!("{} {} ({}, {at})", self.degree, chords.join("+"), self.kind)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AnalysisConfig {
    /// Matching used for cadential-set activation in the window report.
    pub mode: MatchMode,
    /// Measures per key-inference window.
    pub window: usize,
    pub stride: usize,
    /// Consecutive chords pooled by cover matching.
    pub cover_span: usize,
    /// Measures either side of a key change searched for pivot evidence.
    pub passage_radius: usize,
    pub sixth_as_tonic: bool,
    pub pivot_table: PivotTable,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            mode: MatchMode::DegreeRoot,
            window: 4,
            stride: 1,
            cover_span: 2,
            passage_radius: 2,
            sixth_as_tonic: true,
            pivot_table: PivotTable::default(),
        }
    }
}

/// A chord occurrence with its pitch content; unrealizable symbols carry
/// `None` and match nothing.
#[derive(Clone, Debug)]
struct Ev {
    measure: usize,
    position: usize,
    chord: ParsedChord,
    realized: Option<RootedChord>,
}

fn events_of(p: &Progression) -> Vec<Ev> {
    p.events()
        .map(|e| Ev {
            measure: e.measure,
            position: e.position,
            chord: e.chord.clone(),
            realized: realize_chord(e.chord).ok().map(|(c, _)| c),
        })
        .collect()
}

fn single(e: &Ev, key: &Tonality, degree: ScaleDegree, kind: MatchKind) -> DegreeMatch {
    DegreeMatch {
        measure: e.measure,
        position: e.position,
        chord: e.chord.clone(),
        key: key.clone(),
        degree,
        kind,
        strength: kind.strength(),
        cover_with: Vec::new(),
        end_measure: e.measure,
    }
}

/// Root-based reading of one event, with the literal cases promoted.
fn root_match(e: &Ev, key: &Tonality, sixth_as_tonic: bool) -> Option<DegreeMatch> {
    let c = e.realized?;
    let d = key.degree_of_note(c.root())?;
    let kind = if key.degree_chord(d, Arity::Tetradic) == c {
        MatchKind::Exact
    } else if sixth_as_tonic && d == ScaleDegree::I && c.quality() == ChordQuality::Sixth {
        MatchKind::TonicSubstitute
    } else {
        MatchKind::DegreeRoot
    };
    Some(single(e, key, d, kind))
}

fn matches_in(evs: &[Ev], key: &Tonality, mode: MatchMode, config: &AnalysisConfig) -> Vec<DegreeMatch> {
    let mut out: Vec<DegreeMatch> = match mode {
        MatchMode::Exact => evs
            .iter()
            .filter_map(|e| root_match(e, key, false).filter(|m| m.kind == MatchKind::Exact))
            .collect(),
        MatchMode::DegreeRoot => evs
            .iter()
            .filter_map(|e| root_match(e, key, config.sixth_as_tonic))
            .collect(),
        MatchMode::Cover => {
            let span = config.cover_span.max(1).min(evs.len());
            let tetrads: Vec<(ScaleDegree, PcSet)> = key
                .degrees()
                .map(|d| (d, key.degree_chord(d, Arity::Tetradic).pc_set()))
                .collect();
            let mut v = Vec::new();
            if span > 0 {
                for w in evs.windows(span) {
                    let union = w
                        .iter()
                        .filter_map(|e| e.realized)
                        .fold(PcSet::EMPTY, |acc, c| acc.union(c.pc_set()));
                    for (d, pcs) in &tetrads {
                        if pcs.is_subset(union) {
                            let mut m = single(&w[0], key, *d, MatchKind::Cover);
                            m.cover_with = w[1..].iter().map(|e| e.chord.clone()).collect();
                            m.end_measure = w[span - 1].measure;
                            v.push(m);
                        }
                    }
                }
            }
            v
        }
    };
    out.sort_by_key(|m| (m.measure, m.position, m.degree, m.kind));
    out
}

/// Every (event, degree) pair meeting the criterion of `mode`, using
/// default settings.
pub fn match_degrees(p: &Progression, key: &Tonality, mode: MatchMode) -> Vec<DegreeMatch> {
    match_degrees_with(p, key, mode, &AnalysisConfig::default())
}

pub fn match_degrees_with(
    p: &Progression,
    key: &Tonality,
    mode: MatchMode,
    config: &AnalysisConfig,
) -> Vec<DegreeMatch> {
    matches_in(&events_of(p), key, mode, config)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Activation {
    pub set: CadentialSet,
    pub region: Region,
}

/// Minimal cadential sets of `key` whose degrees are all among the
/// matched ones, in naming order.
pub fn activated_cadences(matches: &[DegreeMatch], key: &Tonality) -> Vec<Activation> {
    let matched: DegreeSet = matches.iter().map(|m| m.degree).collect();
    activated_for(matched, key)
}

fn activated_for(matched: DegreeSet, key: &Tonality) -> Vec<Activation> {
    let mut sets: Vec<CadentialSet> = minimal_cadential_sets(key, Arity::Tetradic)
        .into_iter()
        .filter(|s| s.degrees.is_subset(matched))
        .collect();
    sets.sort_by(|a, b| a.name.cmp(&b.name).then_with(|| a.degrees.canonical_cmp(&b.degrees)));
    sets.into_iter()
        .map(|set| Activation {
            region: region_of(&set),
            set,
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KeySpan {
    pub start: usize,
    pub end: usize,
    pub key: Tonality,
    /// Score of the window in which the key was adopted.
    pub score: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChromaticEvent {
    pub measure: usize,
    pub chord: ParsedChord,
    /// The degree of the chord's root, when the root is in the scale.
    pub root_degree: Option<ScaleDegree>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowReport {
    pub start: usize,
    pub end: usize,
    pub key: Option<Tonality>,
    pub score: u32,
    pub matched: DegreeSet,
    pub activated: Vec<Activation>,
    pub regions: Vec<Region>,
    pub chromatic: Vec<ChromaticEvent>,
    pub notes: Vec<String>,
}

struct Decision {
    start: usize,
    end: usize,
    key: Option<Tonality>,
    score: u32,
}

fn window_events(evs: &[Ev], start: usize, end: usize) -> &[Ev] {
    let lo = evs.partition_point(|e| e.measure < start);
    let hi = evs.partition_point(|e| e.measure <= end);
    &evs[lo..hi]
}

fn key_score(evs: &[Ev], key: &Tonality, sixth_as_tonic: bool) -> u32 {
    evs.iter()
        .filter_map(|e| root_match(e, key, sixth_as_tonic))
        .map(|m| u32::from(m.strength))
        .sum()
}

/// A key is asserted when its tonic seventh appears literally and, read by
/// roots, the window activates a cadential set containing the tonic.
fn tonic_arrival(evs: &[Ev], key: &Tonality, config: &AnalysisConfig) -> bool {
    let matches = matches_in(evs, key, MatchMode::DegreeRoot, config);
    matches
        .iter()
        .any(|m| m.degree == ScaleDegree::I && m.kind == MatchKind::Exact)
        && activated_cadences(&matches, key)
            .iter()
            .any(|a| a.set.degrees.contains(ScaleDegree::I))
}

/// Tie-break origin: the declared key, else the first chord's root.
fn reference_pc(p: &Progression, evs: &[Ev]) -> PitchClass {
    p.key
        .map(|k| k.pitch_class())
        .or_else(|| evs.first().map(|e| e.chord.root_pc()))
        .unwrap_or(PitchClass::C)
}

fn decide(p: &Progression, evs: &[Ev], config: &AnalysisConfig) -> Vec<Decision> {
    let n = p.measure_count();
    let reference = reference_pc(p, evs);
    let mut prev: Option<Tonality> = None;
    let mut out = Vec::new();
    for end in (1..=n).step_by(config.stride.max(1)) {
        let start = (end + 1).saturating_sub(config.window.max(1)).max(1);
        let w = window_events(evs, start, end);
        if w.is_empty() {
            out.push(Decision {
                start,
                end,
                key: prev.clone(),
                score: 0,
            });
            continue;
        }
        let scored: Vec<(Tonality, u32)> = PitchClass::all()
            .map(Tonality::major)
            .map(|k| {
                let s = key_score(w, &k, config.sixth_as_tonic);
                (k, s)
            })
            .collect();
        let best = scored.iter().map(|(_, s)| *s).max().unwrap_or(0);
        let mut top: Vec<&Tonality> = scored.iter().filter(|(_, s)| *s == best).map(|(k, _)| k).collect();
        top.sort_by_key(|k| reference.interval_to(k.root()));
        let key = match &prev {
            None => Some(top[0].clone()),
            Some(p) if top.contains(&p) => Some(p.clone()),
            Some(p) => Some(
                top.into_iter()
                    .find(|k| tonic_arrival(w, k, config))
                    .cloned()
                    .unwrap_or_else(|| p.clone()),
            ),
        };
        let score = key.as_ref().map_or(0, |k| key_score(w, k, config.sixth_as_tonic));
        prev = key.clone();
        out.push(Decision { start, end, key, score });
    }
    out
}

fn timeline(decisions: &[Decision], n: usize) -> Vec<KeySpan> {
    let mut spans: Vec<KeySpan> = Vec::new();
    let mut idx = 0;
    for m in 1..=n {
        while idx + 1 < decisions.len() && decisions[idx + 1].end <= m {
            idx += 1;
        }
        let Some(d) = decisions.get(idx).filter(|d| d.end <= m) else {
            continue;
        };
        let Some(key) = &d.key else { continue };
        match spans.last_mut() {
            Some(s) if s.key == *key && s.end + 1 == m => s.end = m,
            _ => spans.push(KeySpan {
                start: m,
                end: m,
                key: key.clone(),
                score: d.score,
            }),
        }
    }
    spans
}

/// Sliding-window key inference. Every major key is scored by summed
/// root-match strength (literal degree chords count double); the key only
/// changes when a new best key arrives on its tonic seventh with a
/// cadential set around it. Ties keep the current key.
pub fn infer_keys(p: &Progression, config: &AnalysisConfig) -> Vec<KeySpan> {
    let evs = events_of(p);
    timeline(&decide(p, &evs, config), p.measure_count())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModulationFinding {
    pub measure: usize,
    pub passage: (usize, usize),
    #[serde(flatten)]
    pub classification: ModulationClassification,
    /// Matches in the passage for the required pivot degrees.
    pub evidence: Vec<DegreeMatch>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BridgeFinding {
    pub measure: usize,
    pub next_measure: usize,
    pub from: ParsedChord,
    pub to: ParsedChord,
    /// The first chord was a tonic sixth standing in for the major seventh.
    pub surrogate: bool,
    #[serde(flatten)]
    pub bridge: BridgeResult,
}

fn modulations_from(p: &Progression, evs: &[Ev], spans: &[KeySpan], config: &AnalysisConfig) -> Vec<ModulationFinding> {
    let n = p.measure_count();
    spans
        .windows(2)
        .filter(|w| w[0].end + 1 == w[1].start)
        .map(|w| {
            let (from, to, m) = (&w[0].key, &w[1].key, w[1].start);
            let lo = m.saturating_sub(config.passage_radius).max(1);
            let hi = (m + config.passage_radius).min(n);
            let passage = window_events(evs, lo, hi);
            let mut matches: Vec<DegreeMatch> = MatchMode::ALL
                .into_iter()
                .flat_map(|mode| matches_in(passage, to, mode, config))
                .collect();
            matches.sort_by_key(|m| (m.measure, m.position, m.degree, m.kind, m.end_measure));
            // exact hits come back from both the exact and the root pass
            matches.dedup_by_key(|m| (m.measure, m.position, m.degree, m.kind, m.end_measure));
            let presented: DegreeSet = matches.iter().map(|m| m.degree).collect();
            let classification = classify_modulation_with(&config.pivot_table, from, to, presented);
            let evidence = match classification.verdict {
                Verdict::Quantized { required } => {
                    matches.into_iter().filter(|m| required.contains(m.degree)).collect()
                }
                Verdict::NonQuantized { .. } => match config.pivot_table.required(classification.interval) {
                    Some(required) => matches.into_iter().filter(|m| required.contains(m.degree)).collect(),
                    None => Vec::new(),
                },
            };
            ModulationFinding {
                measure: m,
                passage: (lo, hi),
                classification,
                evidence,
            }
        })
        .collect()
}

fn bridges_in(evs: &[Ev], config: &AnalysisConfig) -> Vec<BridgeFinding> {
    evs.windows(2)
        .filter_map(|w| {
            let (a, b) = (w[0].realized?, w[1].realized?);
            let surrogate = config.sixth_as_tonic && a.quality() == ChordQuality::Sixth;
            let source = if surrogate {
                RootedChord::of_quality(a.root(), &ChordQuality::Maj7)
            } else {
                a
            };
            let bridge = p42_bridge(&source).ok()?;
            (bridge.bridge_chord == b).then(|| BridgeFinding {
                measure: w[0].measure,
                next_measure: w[1].measure,
                from: w[0].chord.clone(),
                to: w[1].chord.clone(),
                surrogate,
                bridge,
            })
        })
        .collect()
}

/// Key changes classified against the pivot table, plus P42 bridges
/// between consecutive chords.
pub fn detect_modulations(p: &Progression, config: &AnalysisConfig) -> (Vec<ModulationFinding>, Vec<BridgeFinding>) {
    let evs = events_of(p);
    let spans = timeline(&decide(p, &evs, config), p.measure_count());
    (modulations_from(p, &evs, &spans, config), bridges_in(&evs, config))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct RegionStats {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "C")]
    pub c: f64,
}

impl RegionStats {
    pub fn get(&self, r: Region) -> f64 {
        match r {
            Region::A => self.a,
            Region::B => self.b,
            Region::C => self.c,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    #[serde(skip)]
    pub title: Option<String>,
    #[serde(skip)]
    pub mode: MatchMode,
    pub key_timeline: Vec<KeySpan>,
    pub windows: Vec<WindowReport>,
    pub modulations: Vec<ModulationFinding>,
    pub bridges: Vec<BridgeFinding>,
    pub region_stats: RegionStats,
}

fn window_report(d: &Decision, evs: &[Ev], config: &AnalysisConfig) -> WindowReport {
    let w = window_events(evs, d.start, d.end);
    let mut report = WindowReport {
        start: d.start,
        end: d.end,
        key: d.key.clone(),
        score: d.score,
        matched: DegreeSet::EMPTY,
        activated: Vec::new(),
        regions: Vec::new(),
        chromatic: Vec::new(),
        notes: Vec::new(),
    };
    let Some(key) = &d.key else { return report };
    let matches = matches_in(w, key, config.mode, config);
    report.matched = matches.iter().map(|m| m.degree).collect();
    report.activated = activated_cadences(&matches, key);
    report.regions = report.activated.iter().map(|a| a.region).collect();
    report.regions.sort();
    report.regions.dedup();
    for a in &report.activated {
        let loose: Vec<String> = a
            .set
            .degrees
            .iter()
            .filter(|deg| !matches.iter().any(|m| m.degree == *deg && m.kind.is_literal()))
            .map(|deg| {
                let chords: Vec<String> = matches
                    .iter()
                    .filter(|m| m.degree == deg)
                    .map(|m| m.chord.render())
                    .collect();
                format!("{deg} ({})", chords.join(", "))
            })
            .collect();
        if !loose.is_empty() && config.mode != MatchMode::Exact {
            let label = a.set.name.map_or_else(|| a.set.degrees.to_string(), |n| n.to_string());
            report
                .notes
                .push(format!("{label} rests on non-literal matches: {}", loose.join("; ")));
        }
    }
    let literal = matches_in(w, key, MatchMode::DegreeRoot, config);
    report.chromatic = w
        .iter()
        .filter(|e| {
            !literal
                .iter()
                .any(|m| m.measure == e.measure && m.position == e.position && m.kind.is_literal())
        })
        .map(|e| ChromaticEvent {
            measure: e.measure,
            chord: e.chord.clone(),
            root_degree: e.realized.and_then(|c| key.degree_of_note(c.root())),
        })
        .collect();
    report
}

fn region_stats(windows: &[WindowReport]) -> RegionStats {
    let mut stats = RegionStats::default();
    if windows.is_empty() {
        return stats;
    }
    for w in windows.iter().filter(|w| !w.activated.is_empty()) {
        let share = 1.0 / w.activated.len() as f64;
        for a in &w.activated {
            match a.region {
                Region::A => stats.a += share,
                Region::B => stats.b += share,
                Region::C => stats.c += share,
            }
        }
    }
    let total = windows.len() as f64;
    stats.a /= total;
    stats.b /= total;
    stats.c /= total;
    stats
}

pub fn analyze(p: &Progression, config: &AnalysisConfig) -> AnalysisReport {
    let evs = events_of(p);
    let decisions = decide(p, &evs, config);
    let key_timeline = timeline(&decisions, p.measure_count());
    let windows: Vec<WindowReport> = decisions.iter().map(|d| window_report(d, &evs, config)).collect();
    AnalysisReport {
        title: p.title.clone(),
        mode: config.mode,
        modulations: modulations_from(p, &evs, &key_timeline, config),
        bridges: bridges_in(&evs, config),
        region_stats: region_stats(&windows),
        key_timeline,
        windows,
    }
}

fn measures(a: usize, b: usize) -> String {
    if a == b {
        format!("m.{a}")
    } else {
        format!("mm.{a}-{b}")
    }
}

impl AnalysisReport {
    /// The structured report document (JSON), byte-stable for equal input.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(t) = &self.title {
            let _ = writeln!(out, "{t}");
        }
        let _ = writeln!(out, "key timeline:");
        for s in &self.key_timeline {
            let _ = writeln!(
                out,
                "  {:<10} {:<3} (score {})",
                measures(s.start, s.end),
                s.key,
                s.score
            );
        }
        let _ = writeln!(out, "windows ({} matching):", self.mode);
        for w in &self.windows {
            let key = w.key.as_ref().map_or("-".to_string(), |k| k.to_string());
            let sets: Vec<String> = w
                .activated
                .iter()
                .map(|a| format!("{} [{}]", a.set, a.region))
                .collect();
            let _ = writeln!(
                out,
                "  {:<10} {:<3} degrees {:<22} {}",
                measures(w.start, w.end),
                key,
                w.matched.to_string(),
                if sets.is_empty() {
                    "-".to_string()
                } else {
                    sets.join(" ")
                }
            );
            if !w.chromatic.is_empty() {
                let list: Vec<String> = w
                    .chromatic
                    .iter()
                    .map(|c| match c.root_degree {
                        Some(d) => format!("{} (root on {d})", c.chord),
                        None => c.chord.render(),
                    })
                    .collect();
                let _ = writeln!(out, "{:14}not diatonic: {}", "", list.join(", "));
            }
            for n in &w.notes {
                let _ = writeln!(out, "{:14}note: {n}", "");
            }
        }
        let _ = writeln!(out, "modulations:");
        if self.modulations.is_empty() {
            let _ = writeln!(out, "  none");
        }
        for m in &self.modulations {
            let c = &m.classification;
            let _ = writeln!(
                out,
                "  m.{:<8} {} -> {} (+{}): {}",
                m.measure, c.from, c.to, c.interval, c.verdict
            );
            if !m.evidence.is_empty() {
                let ev: Vec<String> = m.evidence.iter().map(DegreeMatch::describe).collect();
                let _ = writeln!(out, "{:14}evidence: {}", "", ev.join("; "));
            }
        }
        let _ = writeln!(out, "bridges:");
        if self.bridges.is_empty() {
            let _ = writeln!(out, "  none");
        }
        for b in &self.bridges {
            let _ = writeln!(
                out,
                "  {:<10} {} -> {}: P42 gives {} of {}{}",
                measures(b.measure, b.next_measure),
                b.from,
                b.to,
                b.bridge.target_degree,
                b.bridge.target_key,
                if b.surrogate {
                    " (sixth read as major seventh)"
                } else {
                    ""
                }
            );
        }
        let _ = writeln!(
            out,
            "region occupancy: A {:.3}  B {:.3}  C {:.3}",
            self.region_stats.a, self.region_stats.b, self.region_stats.c
        );
        out
    }
}
