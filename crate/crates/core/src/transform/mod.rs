//! Seventh-chord (and triadic) neo-Riemannian generators as partial maps.
//!
//! Each generator acts only on the chord species its interval pattern
//! describes; applying it elsewhere is a [`TransformError::Domain`] rather
//! than a silent no-op. Words are applied left to right.

mod path;
mod verify;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::pitch::{ChordQuality, RootedChord};

pub use path::{cayley_edges, shortest_path, state_space, PathError, DEFAULT_GENERATORS};
pub use verify::{
    prism_paths, verify_theory, verify_theory_with, Check, Failure, PrismEdge, PrismNode, UnknownCheckId,
    VerificationReport, PRISM_EDGES,
};

/// A transposition by `1..=11` semitones. `T(0)` is the empty word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transposition(u8);

impl Transposition {
    pub fn new(steps: i32) -> Option<Self> {
        let n = steps.rem_euclid(12);
        (n != 0).then_some(Transposition(n as u8))
    }

    pub fn steps(self) -> u8 {
        self.0
    }
}

/// Generator order doubles as the tie-break order for path search:
/// `R42 < L13 < L42 < P42 < T1 < ... < T11 < R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// Maj7 on x <-> Min7 on x+9.
    R42,
    /// Dom7 on x <-> HalfDim7 on x+4.
    L13,
    /// Maj7 on x <-> Min7 on x+4.
    L42,
    /// Maj7 <-> Min7 on the same root.
    P42,
    T(Transposition),
    /// Triadic relative: major on x <-> minor on x+9.
    TriadR,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("{generator} is not defined on {chord} ({quality})")]
    Domain {
        generator: Generator,
        chord: RootedChord,
        quality: ChordQuality,
    },
    #[error("generator {index} of the word failed")]
    Word {
        index: usize,
        #[source]
        source: Box<TransformError>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown generator `{0}` (expected R42, L13, L42, P42, R or T1..T11)")]
pub struct UnknownGenerator(pub String);

impl Generator {
    pub fn t(steps: i32) -> Option<Generator> {
        Transposition::new(steps).map(Generator::T)
    }

    /// The generator undoing `self`; everything but `T(n)` is an involution.
    pub fn inverse(self) -> Generator {
        match self {
            Generator::T(t) => Generator::T(Transposition(12 - t.0)),
            other => other,
        }
    }

    /// Qualities the generator accepts, or `None` when it is total.
    pub fn domain(self) -> Option<&'static [ChordQuality]> {
        use ChordQuality::*;
        match self {
            Generator::R42 | Generator::L42 | Generator::P42 => Some(&[Maj7, Min7]),
            Generator::L13 => Some(&[Dom7, HalfDim7]),
            Generator::TriadR => Some(&[MajorTriad, MinorTriad]),
            Generator::T(_) => None,
        }
    }

    pub fn apply(self, c: &RootedChord) -> Result<RootedChord, TransformError> {
        use ChordQuality::*;
        let quality = c.quality();
        let root = c.root();
        let (target_quality, shift) = match (self, quality) {
            (Generator::T(t), _) => return Ok(c.transpose(i32::from(t.0))),
            (Generator::R42, Maj7) => (Min7, 9),
            (Generator::R42, Min7) => (Maj7, 3),
            (Generator::L13, Dom7) => (HalfDim7, 4),
            (Generator::L13, HalfDim7) => (Dom7, -4),
            (Generator::L42, Maj7) => (Min7, 4),
            (Generator::L42, Min7) => (Maj7, -4),
            (Generator::P42, Maj7) => (Min7, 0),
            (Generator::P42, Min7) => (Maj7, 0),
            (Generator::TriadR, MajorTriad) => (MinorTriad, 9),
            (Generator::TriadR, MinorTriad) => (MajorTriad, 3),
            _ => {
                return Err(TransformError::Domain {
                    generator: self,
                    chord: *c,
                    quality,
                })
            }
        };
        Ok(RootedChord::of_quality(root.transpose(shift), &target_quality))
    }
}

pub fn apply_generator(g: Generator, c: &RootedChord) -> Result<RootedChord, TransformError> {
    g.apply(c)
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::R42 => f.write_str("R42"),
            Generator::L13 => f.write_str("L13"),
            Generator::L42 => f.write_str("L42"),
            Generator::P42 => f.write_str("P42"),
            Generator::T(t) => write!(f, "T{}", t.0),
            Generator::TriadR => f.write_str("R"),
        }
    }
}

impl FromStr for Generator {
    type Err = UnknownGenerator;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let token = s.trim();
        let g = match token.to_ascii_uppercase().as_str() {
            "R42" => Generator::R42,
            "L13" => Generator::L13,
            "L42" => Generator::L42,
            "P42" => Generator::P42,
            "R" | "TRIADR" => Generator::TriadR,
            t if t.starts_with('T') => t[1..]
                .parse::<i32>()
                .ok()
                .filter(|n| (1..12).contains(n))
                .and_then(Generator::t)
                .ok_or_else(|| UnknownGenerator(token.to_string()))?,
            _ => return Err(UnknownGenerator(token.to_string())),
        };
        Ok(g)
    }
}

impl Serialize for Generator {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A sequence of generators, applied left to right. Empty is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TransformationWord(Vec<Generator>);

impl TransformationWord {
    pub fn new(gens: Vec<Generator>) -> Self {
        TransformationWord(gens)
    }

    pub fn identity() -> Self {
        TransformationWord(Vec::new())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn then(mut self, g: Generator) -> Self {
        self.0.push(g);
        self
    }

    pub fn apply(&self, c: &RootedChord) -> Result<RootedChord, TransformError> {
        apply_word_with(self, c, &|g, c| g.apply(c))
    }

    pub fn inverse(&self) -> TransformationWord {
        TransformationWord(self.0.iter().rev().map(|g| g.inverse()).collect())
    }
}

pub(crate) fn apply_word_with<F>(
    w: &TransformationWord,
    c: &RootedChord,
    apply: &F,
) -> Result<RootedChord, TransformError>
where
    F: Fn(Generator, &RootedChord) -> Result<RootedChord, TransformError>,
{
    w.0.iter().enumerate().try_fold(*c, |acc, (index, g)| {
        apply(*g, &acc).map_err(|e| TransformError::Word {
            index,
            source: Box::new(e),
        })
    })
}

pub fn apply_word(w: &TransformationWord, c: &RootedChord) -> Result<RootedChord, TransformError> {
    w.apply(c)
}

pub fn invert_word(w: &TransformationWord) -> TransformationWord {
    w.inverse()
}

impl From<Vec<Generator>> for TransformationWord {
    fn from(gens: Vec<Generator>) -> Self {
        TransformationWord(gens)
    }
}

impl fmt::Display for TransformationWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("id");
        }
        let parts: Vec<String> = self.0.iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for TransformationWord {
    type Err = UnknownGenerator;

    /// Comma-separated generators; an empty string or `id` is the identity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "id" {
            return Ok(TransformationWord::identity());
        }
        s.split(',')
            .map(str::parse)
            .collect::<Result<Vec<_>, _>>()
            .map(TransformationWord)
    }
}

impl Serialize for TransformationWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
