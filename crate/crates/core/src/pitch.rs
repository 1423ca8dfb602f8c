//! Mod-12 pitch classes and rooted chords.
//!
//! A [`RootedChord`] is stored root-first: a root pitch class plus the set of
//! semitone offsets above it. Bracket notations that list the root somewhere
//! in the middle (e.g. `[x+2, x+4, x+7, x+10]` rooted on `x+4`) are normalized
//! on construction, so structural equality is the only notion of identity.

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

/// Flat-preferring note names indexed by pitch class.
pub const FLAT_NAMES: [&str; 12] = ["C", "Db", "D", "Eb", "E", "F", "Gb", "G", "Ab", "A", "Bb", "B"];

/// A pitch class in 12-tone equal temperament, `C = 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PitchClass(u8);

impl PitchClass {
    pub const C: PitchClass = PitchClass(0);

    /// Reduces any integer mod 12.
    pub fn new(value: i32) -> Self {
        PitchClass(value.rem_euclid(12) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn transpose(self, steps: i32) -> Self {
        PitchClass::new(i32::from(self.0) + steps)
    }

    /// Ascending interval from `self` up to `other`, in `0..12`.
    pub fn interval_to(self, other: PitchClass) -> u8 {
        (other.0 + 12 - self.0) % 12
    }

    pub fn flat_name(self) -> &'static str {
        FLAT_NAMES[usize::from(self.0)]
    }

    pub fn all() -> impl Iterator<Item = PitchClass> {
        (0..12).map(PitchClass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("`{0}` is not a note name (A-G with optional b/#) or a pitch class 0-11")]
pub struct BadNoteName(pub String);

impl std::str::FromStr for PitchClass {
    type Err = BadNoteName;

    /// Accepts a note name (`Bb`, `F#`, `E♭`) or a number `0..=11`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BadNoteName(s.to_string());
        let t = s.trim();
        if let Ok(n) = t.parse::<u8>() {
            return if n < 12 { Ok(PitchClass(n)) } else { Err(bad()) };
        }
        let mut chars = t.chars();
        let base = match chars.next().ok_or_else(bad)? {
            'C' | 'c' => 0,
            'D' | 'd' => 2,
            'E' | 'e' => 4,
            'F' | 'f' => 5,
            'G' | 'g' => 7,
            'A' | 'a' => 9,
            'B' | 'b' => 11,
            _ => return Err(bad()),
        };
        let shift = match chars.as_str() {
            "" => 0,
            "b" | "♭" => -1,
            "#" | "♯" => 1,
            _ => return Err(bad()),
        };
        Ok(PitchClass::new(base + shift))
    }
}

impl fmt::Display for PitchClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for PitchClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_u8(self.0)
    }
}

/// A set of pitch classes as a 12-bit mask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct PcSet(u16);

impl PcSet {
    pub const EMPTY: PcSet = PcSet(0);

    pub fn from_pcs<I: IntoIterator<Item = PitchClass>>(pcs: I) -> Self {
        pcs.into_iter().fold(PcSet::EMPTY, |s, pc| s.with(pc))
    }

    pub fn with(self, pc: PitchClass) -> Self {
        PcSet(self.0 | 1 << pc.0)
    }

    pub fn contains(self, pc: PitchClass) -> bool {
        self.0 & (1 << pc.0) != 0
    }

    pub fn union(self, other: PcSet) -> Self {
        PcSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: PcSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = PitchClass> {
        (0..12u8).filter(move |i| self.0 & (1 << i) != 0).map(PitchClass)
    }
}

impl fmt::Display for PcSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.iter().map(|pc| pc.to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChordError {
    #[error("chord has no intervals")]
    EmptyChord,
    #[error("intervals {0:?} are not strictly increasing offsets in 0..12 starting at 0")]
    NonCanonicalIntervals(Vec<i32>),
}

/// Offsets above the root, bit `i` set when interval `i` is present.
/// Bit 0 is always set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Intervals(u16);

impl Intervals {
    const fn from_list(list: &[u8]) -> Intervals {
        let mut mask = 0u16;
        let mut i = 0;
        while i < list.len() {
            mask |= 1 << list[i];
            i += 1;
        }
        Intervals(mask)
    }

    pub fn iter(self) -> impl Iterator<Item = u8> {
        (0..12u8).filter(move |i| self.0 & (1 << i) != 0)
    }

    pub fn to_vec(self) -> Vec<u8> {
        self.iter().collect()
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, interval: u8) -> bool {
        interval < 12 && self.0 & (1 << interval) != 0
    }
}

/// A cyclically ordered pitch-class set with a distinguished root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootedChord {
    root: PitchClass,
    intervals: Intervals,
}

/// Builds a chord from a root and root-first offsets. The offsets must start
/// at 0 and be strictly increasing below 12.
pub fn make_chord(root: PitchClass, intervals: &[i32]) -> Result<RootedChord, ChordError> {
    if intervals.is_empty() {
        return Err(ChordError::EmptyChord);
    }
    let canonical = intervals[0] == 0
        && intervals.windows(2).all(|w| w[0] < w[1])
        && intervals.iter().all(|&i| (0..12).contains(&i));
    if !canonical {
        return Err(ChordError::NonCanonicalIntervals(intervals.to_vec()));
    }
    let mask = intervals.iter().fold(0u16, |m, &i| m | 1 << i);
    Ok(RootedChord {
        root,
        intervals: Intervals(mask),
    })
}

impl RootedChord {
    /// Builds a chord from a root and any collection of pitch classes; the
    /// root is added if missing and duplicates collapse.
    pub fn from_pitch_classes<I: IntoIterator<Item = PitchClass>>(root: PitchClass, pcs: I) -> Self {
        let mask = pcs.into_iter().fold(1u16, |m, pc| m | 1 << root.interval_to(pc));
        RootedChord {
            root,
            intervals: Intervals(mask),
        }
    }

    pub fn of_quality(root: PitchClass, quality: &ChordQuality) -> Self {
        RootedChord {
            root,
            intervals: quality.intervals(),
        }
    }

    pub fn root(&self) -> PitchClass {
        self.root
    }

    pub fn intervals(&self) -> Intervals {
        self.intervals
    }

    pub fn arity(&self) -> usize {
        self.intervals.len()
    }

    /// Realized pitch classes in root-first order.
    pub fn pitch_classes(&self) -> Vec<PitchClass> {
        let root = self.root;
        self.intervals.iter().map(|i| root.transpose(i32::from(i))).collect()
    }

    pub fn pc_set(&self) -> PcSet {
        PcSet::from_pcs(self.pitch_classes())
    }

    pub fn transpose(&self, steps: i32) -> RootedChord {
        RootedChord {
            root: self.root.transpose(steps),
            intervals: self.intervals,
        }
    }

    pub fn quality(&self) -> ChordQuality {
        classify_quality(self)
    }

    /// Flat-preferring chord symbol, e.g. `Bbmaj7`; unnamed shapes are
    /// written as the root followed by the offset list.
    pub fn symbol(&self) -> String {
        let q = self.quality();
        match q.symbol_suffix() {
            Some(suffix) => format!("{}{}", self.root.flat_name(), suffix),
            None => format!("{}{}", self.root.flat_name(), q),
        }
    }
}

impl fmt::Display for RootedChord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbol())
    }
}

impl Serialize for RootedChord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.symbol())
    }
}

pub fn transpose(c: &RootedChord, steps: i32) -> RootedChord {
    c.transpose(steps)
}

/// Named chord species, keyed by their root-first interval lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChordQuality {
    MajorTriad,
    MinorTriad,
    DimTriad,
    AugTriad,
    Maj7,
    Dom7,
    Min7,
    HalfDim7,
    Dim7,
    AugDom7,
    Sixth,
    MinSixth,
    Other(Intervals),
}

const NAMED: [(ChordQuality, Intervals); 12] = [
    (ChordQuality::MajorTriad, Intervals::from_list(&[0, 4, 7])),
    (ChordQuality::MinorTriad, Intervals::from_list(&[0, 3, 7])),
    (ChordQuality::DimTriad, Intervals::from_list(&[0, 3, 6])),
    (ChordQuality::AugTriad, Intervals::from_list(&[0, 4, 8])),
    (ChordQuality::Maj7, Intervals::from_list(&[0, 4, 7, 11])),
    (ChordQuality::Dom7, Intervals::from_list(&[0, 4, 7, 10])),
    (ChordQuality::Min7, Intervals::from_list(&[0, 3, 7, 10])),
    (ChordQuality::HalfDim7, Intervals::from_list(&[0, 3, 6, 10])),
    (ChordQuality::Dim7, Intervals::from_list(&[0, 3, 6, 9])),
    (ChordQuality::AugDom7, Intervals::from_list(&[0, 4, 8, 10])),
    (ChordQuality::Sixth, Intervals::from_list(&[0, 4, 7, 9])),
    (ChordQuality::MinSixth, Intervals::from_list(&[0, 3, 7, 9])),
];

impl ChordQuality {
    /// The five seventh-chord species the transformation graph works over.
    pub const SEVENTHS: [ChordQuality; 5] = [
        ChordQuality::Maj7,
        ChordQuality::Dom7,
        ChordQuality::Min7,
        ChordQuality::HalfDim7,
        ChordQuality::Dim7,
    ];

    pub const TRIADS: [ChordQuality; 4] = [
        ChordQuality::MajorTriad,
        ChordQuality::MinorTriad,
        ChordQuality::DimTriad,
        ChordQuality::AugTriad,
    ];

    pub fn intervals(&self) -> Intervals {
        match self {
            ChordQuality::Other(iv) => *iv,
            named => NAMED
                .iter()
                .find(|(q, _)| q == named)
                .map(|(_, iv)| *iv)
                .expect("every named quality has an interval list"),
        }
    }

    pub fn is_named(&self) -> bool {
        !matches!(self, ChordQuality::Other(_))
    }

    fn symbol_suffix(&self) -> Option<&'static str> {
        Some(match self {
            ChordQuality::MajorTriad => "",
            ChordQuality::MinorTriad => "m",
            ChordQuality::DimTriad => "dim",
            ChordQuality::AugTriad => "aug",
            ChordQuality::Maj7 => "maj7",
            ChordQuality::Dom7 => "7",
            ChordQuality::Min7 => "m7",
            ChordQuality::HalfDim7 => "m7b5",
            ChordQuality::Dim7 => "dim7",
            ChordQuality::AugDom7 => "+7",
            ChordQuality::Sixth => "6",
            ChordQuality::MinSixth => "m6",
            ChordQuality::Other(_) => return None,
        })
    }
}

impl fmt::Display for ChordQuality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChordQuality::Other(iv) => write!(f, "{:?}", iv.to_vec()),
            named => write!(f, "{named:?}"),
        }
    }
}

pub fn classify_quality(c: &RootedChord) -> ChordQuality {
    NAMED
        .iter()
        .find(|(_, iv)| *iv == c.intervals)
        .map(|(q, _)| *q)
        .unwrap_or(ChordQuality::Other(c.intervals))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pc(v: i32) -> PitchClass {
        PitchClass::new(v)
    }

    #[test]
    fn fmaj7_from_offsets() {
        let c = make_chord(pc(5), &[0, 4, 7, 11]).unwrap();
        assert_eq!(c.pitch_classes(), vec![pc(5), pc(9), pc(0), pc(4)]);
        assert_eq!(c.quality(), ChordQuality::Maj7);
    }

    #[test]
    fn single_note_is_legal() {
        let c = make_chord(pc(0), &[0]).unwrap();
        assert_eq!(c.arity(), 1);
    }

    #[test]
    fn duplicate_offset_is_rejected() {
        assert_eq!(
            make_chord(pc(2), &[0, 4, 0, 7]),
            Err(ChordError::NonCanonicalIntervals(vec![0, 4, 0, 7]))
        );
        assert!(make_chord(pc(2), &[0, 12]).is_err());
        assert!(make_chord(pc(2), &[4, 7]).is_err());
        assert_eq!(make_chord(pc(2), &[]), Err(ChordError::EmptyChord));
    }

    #[test]
    fn construction_is_idempotent() {
        let c = make_chord(pc(7), &[0, 4, 7, 10]).unwrap();
        let offsets: Vec<i32> = c.intervals().iter().map(i32::from).collect();
        assert_eq!(make_chord(c.root(), &offsets).unwrap(), c);
    }

    #[test]
    fn transposition_examples() {
        let cmaj7 = make_chord(pc(0), &[0, 4, 7, 11]).unwrap();
        assert_eq!(transpose(&cmaj7, 5), make_chord(pc(5), &[0, 4, 7, 11]).unwrap());
        let em7 = make_chord(pc(4), &[0, 3, 7, 10]).unwrap();
        assert_eq!(transpose(&em7, 10), make_chord(pc(2), &[0, 3, 7, 10]).unwrap());
        assert_eq!(transpose(&em7, 0), em7);
    }

    #[test]
    fn transposition_is_a_z12_action() {
        let c = make_chord(pc(3), &[0, 3, 6, 10]).unwrap();
        for a in 0..12 {
            for b in 0..12 {
                assert_eq!(c.transpose(a).transpose(b), c.transpose((a + b) % 12));
            }
        }
    }

    #[test]
    fn classification_examples() {
        assert_eq!(make_chord(pc(7), &[0, 4, 7, 10]).unwrap().quality(), ChordQuality::Dom7);
        assert_eq!(
            make_chord(pc(9), &[0, 3, 6, 10]).unwrap().quality(),
            ChordQuality::HalfDim7
        );
        let cluster = make_chord(pc(0), &[0, 1, 2]).unwrap();
        assert_eq!(cluster.quality(), ChordQuality::Other(cluster.intervals()));
        assert_eq!(cluster.quality().intervals().to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn rotated_bracket_normalizes_root_first() {
        // [x+2, x+4, x+7, x+10] rooted on x+4, x = 7
        let c = RootedChord::from_pitch_classes(pc(11), [pc(9), pc(11), pc(2), pc(5)]);
        assert_eq!(c, make_chord(pc(11), &[0, 3, 6, 10]).unwrap());
    }

    #[test]
    fn note_names_parse() {
        assert_eq!("Bb".parse::<PitchClass>().unwrap(), pc(10));
        assert_eq!("F#".parse::<PitchClass>().unwrap(), pc(6));
        assert_eq!("E♭".parse::<PitchClass>().unwrap(), pc(3));
        assert_eq!("Cb".parse::<PitchClass>().unwrap(), pc(11));
        assert_eq!("7".parse::<PitchClass>().unwrap(), pc(7));
        assert!("H".parse::<PitchClass>().is_err());
        assert!("12".parse::<PitchClass>().is_err());
        assert!("Bbb".parse::<PitchClass>().is_err());
    }

    #[test]
    fn symbols_prefer_flats() {
        assert_eq!(make_chord(pc(10), &[0, 4, 7, 11]).unwrap().symbol(), "Bbmaj7");
        assert_eq!(make_chord(pc(1), &[0, 3, 7, 10]).unwrap().symbol(), "Dbm7");
        assert_eq!(make_chord(pc(0), &[0, 1, 2]).unwrap().symbol(), "C[0, 1, 2]");
    }
}
