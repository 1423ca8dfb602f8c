//! Pivot chords, quantized-modulation lookup and parallel-seventh bridges.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::cadence::{Arity, DegreeSet, ScaleDegree, Tonality};
use crate::chordsym::{Measure, ParsedChord, Progression, Spelling};
use crate::pitch::{ChordQuality, RootedChord};
use crate::transform::{Generator, TransformError};

const DEFAULT_PIVOTS: &str = include_str!("../corpus/pivots.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("pivot table line {line}: {message}")]
pub struct PivotTableError {
    pub line: usize,
    pub message: String,
}

/// Required pivot degrees (read in the target key) indexed by the interval
/// from source root to target root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PivotTable {
    entries: BTreeMap<u8, DegreeSet>,
}

impl Default for PivotTable {
    /// Fourth up requires {II, VII}; fifth up requires {III, V}.
    fn default() -> Self {
        DEFAULT_PIVOTS.parse().expect("bundled pivot table parses")
    }
}

impl PivotTable {
    pub fn empty() -> Self {
        PivotTable {
            entries: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, interval: u8, degrees: DegreeSet) {
        self.entries.insert(interval % 12, degrees);
    }

    pub fn required(&self, interval: u8) -> Option<DegreeSet> {
        self.entries.get(&(interval % 12)).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (u8, DegreeSet)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl FromStr for PivotTable {
    type Err = PivotTableError;

    /// Lines of `interval=<0..11> degrees=<Roman,...>`; `#` comments and
    /// blank lines are skipped.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut table = PivotTable::empty();
        for (i, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| PivotTableError { line: i + 1, message };
            let mut interval = None;
            let mut degrees = None;
            for field in line.split_whitespace() {
                match field.split_once('=') {
                    Some(("interval", v)) => {
                        let n: u8 = v.parse().map_err(|_| err(format!("bad interval `{v}`")))?;
                        if n > 11 {
                            return Err(err(format!("interval {n} out of range 0..11")));
                        }
                        interval = Some(n);
                    }
                    Some(("degrees", v)) => {
                        let d: DegreeSet = v.parse().map_err(|e| err(format!("{e}")))?;
                        if d.is_empty() || d.iter().any(|x| x.index() > 7) {
                            return Err(err(format!("bad degree list `{v}`")));
                        }
                        degrees = Some(d);
                    }
                    _ => return Err(err(format!("unexpected `{field}`"))),
                }
            }
            match (interval, degrees) {
                (Some(n), Some(d)) => table.insert(n, d),
                _ => return Err(err("expected interval=<n> degrees=<list>".into())),
            }
        }
        Ok(table)
    }
}

impl fmt::Display for PivotTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, d) in self.entries() {
            let list: Vec<&str> = d.iter().map(ScaleDegree::roman).collect();
            writeln!(f, "interval={n} degrees={}", list.join(","))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Quantized { required: DegreeSet },
    NonQuantized { reason: NonQuantizedReason },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NonQuantizedReason {
    Missing { required: DegreeSet, missing: DegreeSet },
    NoTableEntry,
}

impl Verdict {
    pub fn is_quantized(&self) -> bool {
        matches!(self, Verdict::Quantized { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Quantized { required } => write!(f, "quantized (pivots {required} present)"),
            Verdict::NonQuantized {
                reason: NonQuantizedReason::Missing { required, missing },
            } => write!(f, "not quantized (needs {required}, missing {missing})"),
            Verdict::NonQuantized {
                reason: NonQuantizedReason::NoTableEntry,
            } => f.write_str("not quantized (no pivot table entry)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModulationClassification {
    pub from: Tonality,
    pub to: Tonality,
    pub interval: u8,
    pub presented: DegreeSet,
    #[serde(flatten)]
    pub verdict: Verdict,
}

/// Classifies with the default table.
pub fn classify_modulation(from: &Tonality, to: &Tonality, presented: DegreeSet) -> ModulationClassification {
    classify_modulation_with(&PivotTable::default(), from, to, presented)
}

pub fn classify_modulation_with(
    table: &PivotTable,
    from: &Tonality,
    to: &Tonality,
    presented: DegreeSet,
) -> ModulationClassification {
    let interval = from.root().interval_to(to.root());
    let verdict = match table.required(interval) {
        None => Verdict::NonQuantized {
            reason: NonQuantizedReason::NoTableEntry,
        },
        Some(required) if required.is_subset(presented) => Verdict::Quantized { required },
        Some(required) => Verdict::NonQuantized {
            reason: NonQuantizedReason::Missing {
                required,
                missing: required.difference(presented),
            },
        },
    };
    ModulationClassification {
        from: from.clone(),
        to: to.clone(),
        interval,
        presented,
        verdict,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CommonChord {
    pub chord: RootedChord,
    pub first: ScaleDegree,
    pub second: ScaleDegree,
}

/// Degree chords shared by two keys, in degree order of `k1`.
pub fn common_degree_chords(k1: &Tonality, k2: &Tonality, arity: Arity) -> Vec<CommonChord> {
    k1.degrees()
        .filter_map(|d| {
            let chord = k1.degree_chord(d, arity);
            k2.degree_of(&chord, arity).map(|second| CommonChord {
                chord,
                first: d,
                second,
            })
        })
        .collect()
}

/// A tonic major seventh turned by P42 into the supertonic of the key a
/// whole step below.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BridgeResult {
    pub source_chord: RootedChord,
    pub bridge_chord: RootedChord,
    pub target_key: Tonality,
    pub target_degree: ScaleDegree,
    /// Sets that then establish the target key: {II, V}, which is cadential
    /// but not minimal, and J1 = {I, II}.
    pub establishing: Vec<DegreeSet>,
}

pub fn p42_bridge(c: &RootedChord) -> Result<BridgeResult, TransformError> {
    if c.quality() != ChordQuality::Maj7 {
        return Err(TransformError::Domain {
            generator: Generator::P42,
            chord: *c,
            quality: c.quality(),
        });
    }
    let bridge_chord = Generator::P42.apply(c)?;
    let target_key = Tonality::major(c.root().transpose(-2));
    debug_assert_eq!(target_key.degree_chord(ScaleDegree::II, Arity::Tetradic), bridge_chord);
    Ok(BridgeResult {
        source_chord: *c,
        bridge_chord,
        target_key,
        target_degree: ScaleDegree::II,
        establishing: vec![
            DegreeSet::of(&[ScaleDegree::II, ScaleDegree::V]),
            DegreeSet::of(&[ScaleDegree::I, ScaleDegree::II]),
        ],
    })
}

/// Whole-step descending ii–V–I chain, one bar per key; the `fast` form
/// drops the dominants (ii–I).
pub fn descending_chain(start: &Tonality, length: usize, fast: bool) -> Progression {
    let degrees: &[ScaleDegree] = if fast {
        &[ScaleDegree::II, ScaleDegree::I]
    } else {
        &[ScaleDegree::II, ScaleDegree::V, ScaleDegree::I]
    };
    let measures = (0..length.max(1))
        .map(|i| {
            let key = start.transpose(-2 * i as i32);
            let spell = |pc| Spelling::in_key(pc, key.root());
            Measure::new(
                degrees
                    .iter()
                    .map(|d| {
                        let chord = key.degree_chord(*d, Arity::Tetradic);
                        ParsedChord::from_rooted(&chord, spell).expect("major-scale sevenths have symbols")
                    })
                    .collect(),
            )
        })
        .collect();
    let mut p = Progression::new(measures);
    p.key = Some(Spelling::in_key(start.root(), start.root()));
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pitch::PitchClass;

    fn key(s: &str) -> Tonality {
        s.parse().unwrap()
    }

    fn degrees(s: &str) -> DegreeSet {
        s.parse().unwrap()
    }

    #[test]
    fn default_table() {
        let t = PivotTable::default();
        assert_eq!(t.len(), 2);
        assert_eq!(t.required(5), Some(degrees("II,VII")));
        assert_eq!(t.required(7), Some(degrees("III,V")));
        assert_eq!(t.to_string().parse::<PivotTable>().unwrap(), t);
    }

    #[test]
    fn table_errors() {
        assert!("interval=12 degrees=II".parse::<PivotTable>().is_err());
        assert!("interval=4 degrees=II,Q".parse::<PivotTable>().is_err());
        assert!("interval=4".parse::<PivotTable>().is_err());
        let t: PivotTable = "interval=4 degrees=I,III # third up\n".parse().unwrap();
        assert_eq!(t.required(4), Some(degrees("I,III")));
    }

    #[test]
    fn cherokee_verdicts() {
        let up = classify_modulation(&key("Bb"), &key("Eb"), degrees("I,II,V,VII"));
        assert!(up.verdict.is_quantized());
        let back = classify_modulation(&key("Eb"), &key("Bb"), degrees("III,V,II,VI"));
        assert!(back.verdict.is_quantized());
        let bridge = classify_modulation(&key("B"), &key("A"), degrees("II,V,I"));
        assert_eq!(bridge.interval, 10);
        assert_eq!(
            bridge.verdict,
            Verdict::NonQuantized {
                reason: NonQuantizedReason::NoTableEntry
            }
        );
        let missing = classify_modulation(&key("Bb"), &key("Eb"), degrees("II"));
        assert_eq!(
            missing.verdict,
            Verdict::NonQuantized {
                reason: NonQuantizedReason::Missing {
                    required: degrees("II,VII"),
                    missing: degrees("VII")
                }
            }
        );
    }

    #[test]
    fn common_chords() {
        let got: Vec<String> = common_degree_chords(&key("Bb"), &key("Eb"), Arity::Tetradic)
            .iter()
            .map(|c| format!("{} {}/{}", c.chord, c.first, c.second))
            .collect();
        assert_eq!(got, ["Cm7 II/VI", "Ebmaj7 IV/I", "Gm7 VI/III"]);
        assert_eq!(common_degree_chords(&key("C"), &key("C"), Arity::Tetradic).len(), 7);
        assert!(common_degree_chords(&key("C"), &key("F#"), Arity::Tetradic).is_empty());
    }

    #[test]
    fn bridges() {
        let b = p42_bridge(&RootedChord::of_quality(PitchClass::new(11), &ChordQuality::Maj7)).unwrap();
        assert_eq!(b.bridge_chord.symbol(), "Bm7");
        assert_eq!(b.target_key, key("A"));
        let c = p42_bridge(&RootedChord::of_quality(PitchClass::C, &ChordQuality::Maj7)).unwrap();
        assert_eq!(c.target_key, key("Bb"));
        let g7 = RootedChord::of_quality(PitchClass::new(7), &ChordQuality::Dom7);
        assert!(matches!(p42_bridge(&g7), Err(TransformError::Domain { .. })));
        let cm7 = RootedChord::of_quality(PitchClass::C, &ChordQuality::Min7);
        assert!(p42_bridge(&cm7).is_err());
    }

    #[test]
    fn chains() {
        assert_eq!(
            descending_chain(&key("B"), 3, false).to_string(),
            "C#m7 F#7 Bmaj7 | Bm7 E7 Amaj7 | Am7 D7 Gmaj7"
        );
        assert_eq!(
            descending_chain(&key("B"), 3, true).to_string(),
            "C#m7 Bmaj7 | Bm7 Amaj7 | Am7 Gmaj7"
        );
        assert_eq!(descending_chain(&key("F"), 1, false).to_string(), "Gm7 C7 Fmaj7");
        assert_eq!(
            descending_chain(&key("F"), 2, true).to_string(),
            "Gm7 Fmaj7 | Fm7 Ebmaj7"
        );
    }
}
