//! Scales, degree chords and minimal cadential sets.
//!
//! A set of degrees is *cadential* for a tonality when the tonality is the
//! only transposition of its scale pattern whose degree chords include every
//! chord of the set (compared as rooted chords). It is *minimal* when no
//! proper subset is cadential. For the major scale this yields the five
//! triadic sets k1..k5 and the six tetradic sets J1..J6, which are named
//! here by convention.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::pitch::{PitchClass, RootedChord};
use crate::transform::{Generator, TransformError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Arity {
    Triadic,
    Tetradic,
}

impl Arity {
    pub fn notes(self) -> usize {
        match self {
            Arity::Triadic => 3,
            Arity::Tetradic => 4,
        }
    }

    pub fn from_notes(n: usize) -> Option<Arity> {
        match n {
            3 => Some(Arity::Triadic),
            4 => Some(Arity::Tetradic),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CadenceError {
    #[error("scale pattern {0:?} must be strictly increasing offsets below 12, starting at 0, at most 12 notes")]
    InvalidPattern(Vec<u8>),
    #[error("`{0}` is not a Roman numeral degree")]
    BadDegree(String),
    #[error("{0} and {1} are not linked in the conglomerate")]
    UnlinkedPair(CadentialSet, CadentialSet),
    #[error("{morphism} does not carry {from} onto {to} in {key}")]
    MorphismMismatch {
        from: CadentialSet,
        to: CadentialSet,
        morphism: Generator,
        key: Tonality,
    },
    #[error(transparent)]
    Transform(#[from] TransformError),
}

/// Offsets of a scale above its root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScalePattern(Vec<u8>);

impl ScalePattern {
    pub const MAJOR_OFFSETS: [u8; 7] = [0, 2, 4, 5, 7, 9, 11];

    pub fn new(offsets: Vec<u8>) -> Result<Self, CadenceError> {
        let ok =
            offsets.first() == Some(&0) && offsets.windows(2).all(|w| w[0] < w[1]) && offsets.iter().all(|&o| o < 12);
        if ok {
            Ok(ScalePattern(offsets))
        } else {
            Err(CadenceError::InvalidPattern(offsets))
        }
    }

    pub fn major() -> Self {
        ScalePattern(Self::MAJOR_OFFSETS.to_vec())
    }

    pub fn is_major(&self) -> bool {
        self.0 == Self::MAJOR_OFFSETS
    }

    pub fn is_heptatonic(&self) -> bool {
        self.0.len() == 7
    }

    pub fn offsets(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// A 1-based scale degree, shown as a Roman numeral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ScaleDegree(u8);

const ROMAN: [&str; 12] = ["I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII"];

impl ScaleDegree {
    pub const I: ScaleDegree = ScaleDegree(1);
    pub const II: ScaleDegree = ScaleDegree(2);
    pub const III: ScaleDegree = ScaleDegree(3);
    pub const IV: ScaleDegree = ScaleDegree(4);
    pub const V: ScaleDegree = ScaleDegree(5);
    pub const VI: ScaleDegree = ScaleDegree(6);
    pub const VII: ScaleDegree = ScaleDegree(7);

    pub fn new(index: u8) -> Option<Self> {
        (1..=12).contains(&index).then_some(ScaleDegree(index))
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn roman(self) -> &'static str {
        ROMAN[usize::from(self.0 - 1)]
    }
}

impl fmt::Display for ScaleDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.roman())
    }
}

impl FromStr for ScaleDegree {
    type Err = CadenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let up = s.trim().to_ascii_uppercase();
        ROMAN
            .iter()
            .position(|r| *r == up)
            .map(|i| ScaleDegree(i as u8 + 1))
            .ok_or_else(|| CadenceError::BadDegree(s.trim().to_string()))
    }
}

impl Serialize for ScaleDegree {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.roman())
    }
}

/// A set of scale degrees; iteration is in ascending degree order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct DegreeSet(u16);

impl DegreeSet {
    pub const EMPTY: DegreeSet = DegreeSet(0);

    pub fn of(degrees: &[ScaleDegree]) -> Self {
        degrees.iter().fold(DegreeSet::EMPTY, |s, d| s.with(*d))
    }

    pub fn with(self, d: ScaleDegree) -> Self {
        DegreeSet(self.0 | 1 << (d.0 - 1))
    }

    pub fn contains(self, d: ScaleDegree) -> bool {
        self.0 & (1 << (d.0 - 1)) != 0
    }

    pub fn union(self, other: DegreeSet) -> Self {
        DegreeSet(self.0 | other.0)
    }

    pub fn intersection(self, other: DegreeSet) -> Self {
        DegreeSet(self.0 & other.0)
    }

    pub fn difference(self, other: DegreeSet) -> Self {
        DegreeSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: DegreeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = ScaleDegree> {
        (0..12u8)
            .filter(move |i| self.0 & (1 << i) != 0)
            .map(|i| ScaleDegree(i + 1))
    }

    /// Size first, then lexicographic on the ascending degree lists.
    pub fn canonical_cmp(&self, other: &DegreeSet) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.iter().cmp(other.iter()))
    }
}

impl FromIterator<ScaleDegree> for DegreeSet {
    fn from_iter<I: IntoIterator<Item = ScaleDegree>>(iter: I) -> Self {
        iter.into_iter().fold(DegreeSet::EMPTY, |s, d| s.with(d))
    }
}

impl fmt::Display for DegreeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<&str> = self.iter().map(ScaleDegree::roman).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

impl FromStr for DegreeSet {
    type Err = CadenceError;

    /// Comma-separated Roman numerals, optionally in braces: `II,VII`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
        inner
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse::<ScaleDegree>)
            .collect()
    }
}

impl Serialize for DegreeSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

/// A scale pattern placed on a root.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tonality {
    root: PitchClass,
    pattern: ScalePattern,
}

impl Tonality {
    pub fn new(root: PitchClass, pattern: ScalePattern) -> Self {
        Tonality { root, pattern }
    }

    pub fn major(root: PitchClass) -> Self {
        Tonality::new(root, ScalePattern::major())
    }

    pub fn root(&self) -> PitchClass {
        self.root
    }

    pub fn pattern(&self) -> &ScalePattern {
        &self.pattern
    }

    pub fn is_heptatonic(&self) -> bool {
        self.pattern.is_heptatonic()
    }

    pub fn transpose(&self, steps: i32) -> Tonality {
        Tonality::new(self.root.transpose(steps), self.pattern.clone())
    }

    pub fn degrees(&self) -> impl Iterator<Item = ScaleDegree> {
        (1..=self.pattern.len() as u8).map(ScaleDegree)
    }

    pub fn all_degrees(&self) -> DegreeSet {
        self.degrees().collect()
    }

    pub fn scale_note(&self, d: ScaleDegree) -> PitchClass {
        let offsets = self.pattern.offsets();
        let i = usize::from(d.0 - 1) % offsets.len();
        self.root.transpose(i32::from(offsets[i]))
    }

    /// The chord stacked in scale thirds on `d`: positions d, d+2, d+4
    /// (and d+6 for tetrads), wrapping around the pattern. For patterns
    /// with fewer than seven notes coincident stack members collapse.
    ///
    /// # Panics
    /// If `d` lies beyond the pattern length.
    pub fn degree_chord(&self, d: ScaleDegree, arity: Arity) -> RootedChord {
        let n = self.pattern.len();
        assert!(usize::from(d.0) <= n, "degree {d} outside a {n}-note pattern");
        let start = usize::from(d.0 - 1);
        let pcs = (0..arity.notes()).map(|k| {
            let i = (start + 2 * k) % n;
            self.root.transpose(i32::from(self.pattern.offsets()[i]))
        });
        RootedChord::from_pitch_classes(self.scale_note(d), pcs)
    }

    pub fn degree_chords(&self, arity: Arity) -> Vec<RootedChord> {
        self.degrees().map(|d| self.degree_chord(d, arity)).collect()
    }

    /// The degree whose chord (at `arity`) equals `c`, if any.
    pub fn degree_of(&self, c: &RootedChord, arity: Arity) -> Option<ScaleDegree> {
        self.degrees().find(|d| self.degree_chord(*d, arity) == *c)
    }

    /// The degree whose scale note is `pc`, if any.
    pub fn degree_of_note(&self, pc: PitchClass) -> Option<ScaleDegree> {
        self.degrees().find(|d| self.scale_note(*d) == pc)
    }
}

pub fn degree_chord(t: &Tonality, d: ScaleDegree, arity: Arity) -> RootedChord {
    t.degree_chord(d, arity)
}

impl fmt::Display for Tonality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pattern.is_major() {
            f.write_str(self.root.flat_name())
        } else {
            write!(f, "{} {:?}", self.root.flat_name(), self.pattern.offsets())
        }
    }
}

impl FromStr for Tonality {
    type Err = crate::pitch::BadNoteName;

    /// A major key from its root name.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse().map(Tonality::major)
    }
}

impl Serialize for Tonality {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Every transposition of `pattern` having `c` among its degree chords,
/// with the degree it occupies there. Ordered by root pitch class.
pub fn scales_containing(c: &RootedChord, pattern: &ScalePattern, arity: Arity) -> Vec<(Tonality, ScaleDegree)> {
    PitchClass::all()
        .map(|root| Tonality::new(root, pattern.clone()))
        .filter_map(|t| t.degree_of(c, arity).map(|d| (t, d)))
        .collect()
}

/// Degree chords of all twelve transpositions, indexed by offset from `t`.
struct TranspositionTable {
    chords: Vec<Vec<RootedChord>>,
}

impl TranspositionTable {
    fn new(t: &Tonality, arity: Arity) -> Self {
        let chords = (0..12).map(|u| t.transpose(u).degree_chords(arity)).collect();
        TranspositionTable { chords }
    }

    fn is_cadential(&self, degrees: DegreeSet) -> bool {
        if degrees.is_empty() {
            return false;
        }
        let home = &self.chords[0];
        let needed: Vec<&RootedChord> = degrees.iter().map(|d| &home[usize::from(d.0 - 1)]).collect();
        self.chords[1..]
            .iter()
            .all(|other| !needed.iter().all(|c| other.contains(c)))
    }
}

/// Whether `t` is the only transposition of its pattern containing every
/// degree chord of `degrees`.
pub fn is_cadential(t: &Tonality, degrees: DegreeSet, arity: Arity) -> bool {
    TranspositionTable::new(t, arity).is_cadential(degrees)
}

/// Cadential, and no proper subset is.
pub fn is_minimal_cadential(t: &Tonality, degrees: DegreeSet, arity: Arity) -> bool {
    let table = TranspositionTable::new(t, arity);
    table.is_cadential(degrees) && proper_subsets(degrees).all(|s| !table.is_cadential(s))
}

fn proper_subsets(s: DegreeSet) -> impl Iterator<Item = DegreeSet> {
    // Standard submask enumeration, skipping s itself.
    let full = s.0;
    let mut sub = full;
    std::iter::from_fn(move || {
        if sub == 0 {
            return None;
        }
        sub = (sub - 1) & full;
        Some(DegreeSet(sub))
    })
    .filter(|d| !d.is_empty())
}

/// Conventional label of a named cadential set of the major scale.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CadenceName {
    /// Triadic k1..k5.
    K(u8),
    /// Tetradic J1..J6.
    J(u8),
}

impl fmt::Display for CadenceName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CadenceName::K(n) => write!(f, "k{n}"),
            CadenceName::J(n) => write!(f, "J{n}"),
        }
    }
}

impl Serialize for CadenceName {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

const TRIADIC_NAMES: [(CadenceName, &[ScaleDegree]); 5] = [
    (CadenceName::K(1), &[ScaleDegree::II, ScaleDegree::V]),
    (CadenceName::K(2), &[ScaleDegree::II, ScaleDegree::III]),
    (CadenceName::K(3), &[ScaleDegree::III, ScaleDegree::IV]),
    (CadenceName::K(4), &[ScaleDegree::IV, ScaleDegree::V]),
    (CadenceName::K(5), &[ScaleDegree::VII]),
];

const TETRADIC_NAMES: [(CadenceName, &[ScaleDegree]); 6] = [
    (CadenceName::J(1), &[ScaleDegree::I, ScaleDegree::II]),
    (CadenceName::J(2), &[ScaleDegree::I, ScaleDegree::IV]),
    (CadenceName::J(3), &[ScaleDegree::II, ScaleDegree::III]),
    (CadenceName::J(4), &[ScaleDegree::III, ScaleDegree::IV]),
    (CadenceName::J(5), &[ScaleDegree::V]),
    (CadenceName::J(6), &[ScaleDegree::VII]),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CadentialSet {
    pub degrees: DegreeSet,
    pub arity: Arity,
    pub name: Option<CadenceName>,
}

impl CadentialSet {
    /// An unnamed set; see [`CadentialSet::named`] for the conventional ones.
    pub fn new(degrees: DegreeSet, arity: Arity) -> Self {
        CadentialSet {
            degrees,
            arity,
            name: None,
        }
    }

    /// A conventional set by name, e.g. `CadenceName::J(3)`.
    pub fn named(name: CadenceName) -> Option<Self> {
        let (table, arity): (&[(CadenceName, &[ScaleDegree])], Arity) = match name {
            CadenceName::K(_) => (&TRIADIC_NAMES, Arity::Triadic),
            CadenceName::J(_) => (&TETRADIC_NAMES, Arity::Tetradic),
        };
        table.iter().find(|(n, _)| *n == name).map(|(n, ds)| CadentialSet {
            degrees: DegreeSet::of(ds),
            arity,
            name: Some(*n),
        })
    }

    pub fn j(n: u8) -> Self {
        CadentialSet::named(CadenceName::J(n)).expect("J1..J6")
    }

    pub fn k(n: u8) -> Self {
        CadentialSet::named(CadenceName::K(n)).expect("k1..k5")
    }

    /// All conventional sets of the major scale at `arity`, in numbering order.
    pub fn all_named(arity: Arity) -> Vec<CadentialSet> {
        let table: &[(CadenceName, &[ScaleDegree])] = match arity {
            Arity::Triadic => &TRIADIC_NAMES,
            Arity::Tetradic => &TETRADIC_NAMES,
        };
        table.iter().filter_map(|(n, _)| CadentialSet::named(*n)).collect()
    }

    fn conventional_name(degrees: DegreeSet, arity: Arity) -> Option<CadenceName> {
        CadentialSet::all_named(arity)
            .into_iter()
            .find(|s| s.degrees == degrees)
            .and_then(|s| s.name)
    }
}

impl fmt::Display for CadentialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name {
            Some(name) => write!(f, "{name}={}", self.degrees),
            None => write!(f, "{}", self.degrees),
        }
    }
}

impl Serialize for CadentialSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("CadentialSet", 3)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("degrees", &self.degrees)?;
        st.serialize_field("arity", &self.arity)?;
        st.end()
    }
}

/// All minimal cadential sets of `t`, sorted by size and then by degree
/// list. Names are attached for the major pattern only.
pub fn minimal_cadential_sets(t: &Tonality, arity: Arity) -> Vec<CadentialSet> {
    let table = TranspositionTable::new(t, arity);
    let n = t.pattern().len();
    let mut cadential: Vec<DegreeSet> = (1u16..(1 << n))
        .map(DegreeSet)
        .filter(|s| table.is_cadential(*s))
        .collect();
    cadential.sort_by(DegreeSet::canonical_cmp);
    let mut minimal: Vec<DegreeSet> = Vec::new();
    for s in cadential {
        // any cadential proper subset is smaller, so it was seen first
        if !minimal.iter().any(|m| m.is_subset(s)) {
            minimal.push(s);
        }
    }
    minimal
        .into_iter()
        .map(|degrees| CadentialSet {
            degrees,
            arity,
            name: if t.pattern().is_major() {
                CadentialSet::conventional_name(degrees, arity)
            } else {
                None
            },
        })
        .collect()
}

/// Region of the cadential conglomerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Region {
    /// Unstable: sets built on II, III, IV without the tonic.
    A,
    /// Home: sets containing the tonic seventh.
    B,
    /// Tension: the singleton sets.
    C,
}

impl Region {
    pub const ALL: [Region; 3] = [Region::A, Region::B, Region::C];

    pub fn description(self) -> &'static str {
        match self {
            Region::A => "Alice",
            Region::B => "Blues",
            Region::C => "Cherokee",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// B if the set contains I, else C if it is a singleton, else A.
pub fn region_of(s: &CadentialSet) -> Region {
    if s.degrees.contains(ScaleDegree::I) {
        Region::B
    } else if s.degrees.len() == 1 {
        Region::C
    } else {
        Region::A
    }
}

/// A conglomerate edge between two cadential sets: the shared degrees stay
/// put while `morphism` carries the remaining chords of `from` onto those of
/// `to`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairLink {
    pub from: CadentialSet,
    pub to: CadentialSet,
    pub anchor: DegreeSet,
    pub morphism: Generator,
    pub mapped: Vec<(ScaleDegree, ScaleDegree)>,
}

/// The linked pairs: (J3, J4) and (J1, J2) by R42, (J5, J6) by L13.
pub const LINKED_PAIRS: [(u8, u8, Generator); 3] =
    [(3, 4, Generator::R42), (1, 2, Generator::R42), (5, 6, Generator::L13)];

pub fn cadence_pair_morphism(a: &CadentialSet, b: &CadentialSet, t: &Tonality) -> Result<PairLink, CadenceError> {
    let same = |x: &CadentialSet, n: u8| x.arity == Arity::Tetradic && x.degrees == CadentialSet::j(n).degrees;
    let morphism = LINKED_PAIRS
        .iter()
        .find(|(p, q, _)| (same(a, *p) && same(b, *q)) || (same(a, *q) && same(b, *p)))
        .map(|(_, _, g)| *g)
        .ok_or(CadenceError::UnlinkedPair(*a, *b))?;

    let anchor = a.degrees.intersection(b.degrees);
    let mismatch = || CadenceError::MorphismMismatch {
        from: *a,
        to: *b,
        morphism,
        key: t.clone(),
    };
    let mut mapped = Vec::new();
    let mut image = DegreeSet::EMPTY;
    for d in a.degrees.difference(anchor).iter() {
        let chord = morphism.apply(&t.degree_chord(d, Arity::Tetradic))?;
        let target = t.degree_of(&chord, Arity::Tetradic).ok_or_else(mismatch)?;
        mapped.push((d, target));
        image = image.with(target);
    }
    if image != b.degrees.difference(anchor) {
        return Err(mismatch());
    }
    Ok(PairLink {
        from: *a,
        to: *b,
        anchor,
        morphism,
        mapped,
    })
}

/// One chord of a cadential set pushed through a generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImageChord {
    pub source: ScaleDegree,
    pub chord: RootedChord,
    /// `None` when the image is foreign to the key.
    pub degree: Option<ScaleDegree>,
}

pub fn cadence_image(s: &CadentialSet, g: Generator, t: &Tonality) -> Result<Vec<ImageChord>, CadenceError> {
    s.degrees
        .iter()
        .map(|d| {
            let chord = g.apply(&t.degree_chord(d, s.arity))?;
            Ok(ImageChord {
                source: d,
                chord,
                degree: t.degree_of(&chord, s.arity),
            })
        })
        .collect()
}
