//! Exhaustive checks of the commutation claims relating the cadential sets.
//!
//! Every check runs over all twelve keys (and every chord in the relevant
//! generator domains) and records each failing case. `verify_theory_with`
//! takes the generator semantics as a parameter so that the harness itself
//! can be mutation-tested.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use super::{apply_word_with, Generator, TransformError, TransformationWord, Transposition};
use crate::cadence::{Arity, ScaleDegree, Tonality};
use crate::pitch::{ChordQuality, PitchClass, RootedChord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Triangles,
    Prism,
    R42TCommute,
    TriadicDiagram,
    Involutions,
    P42Supertonic,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown check id `{0}`")]
pub struct UnknownCheckId(pub String);

impl Check {
    pub const ALL: [Check; 6] = [
        Check::Triangles,
        Check::Prism,
        Check::R42TCommute,
        Check::TriadicDiagram,
        Check::Involutions,
        Check::P42Supertonic,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Check::Triangles => "triangles",
            Check::Prism => "prism",
            Check::R42TCommute => "r42_t_commute",
            Check::TriadicDiagram => "triadic_diagram",
            Check::Involutions => "involutions",
            Check::P42Supertonic => "p42_supertonic",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Check {
    type Err = UnknownCheckId;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| UnknownCheckId(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub case: String,
    pub input: RootedChord,
    pub expected: RootedChord,
    /// `None` when evaluation left a generator's domain.
    pub got: Option<RootedChord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub check_id: Check,
    pub cases_checked: usize,
    pub failures: Vec<Failure>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.cases_checked > 0 && self.failures.is_empty()
    }
}

/// Nodes of the prism diagram relating (J1, J2) and (J3, J4).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrismNode {
    BackIV,
    BackII,
    FrontII,
    FrontIV,
    Tonic,
    Mediant,
}

impl PrismNode {
    pub const ALL: [PrismNode; 6] = [
        PrismNode::BackIV,
        PrismNode::BackII,
        PrismNode::FrontII,
        PrismNode::FrontIV,
        PrismNode::Tonic,
        PrismNode::Mediant,
    ];

    pub fn degree(self) -> ScaleDegree {
        match self {
            PrismNode::BackIV | PrismNode::FrontIV => ScaleDegree::IV,
            PrismNode::BackII | PrismNode::FrontII => ScaleDegree::II,
            PrismNode::Tonic => ScaleDegree::I,
            PrismNode::Mediant => ScaleDegree::III,
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            PrismNode::BackIV => "iv_back",
            PrismNode::BackII => "ii_back",
            PrismNode::FrontII => "ii_front",
            PrismNode::FrontIV => "iv_front",
            PrismNode::Tonic => "i",
            PrismNode::Mediant => "iii",
        }
    }
}

pub struct PrismEdge {
    pub from: PrismNode,
    pub to: PrismNode,
    /// Applied left to right.
    pub word: &'static [Generator],
    /// `None` for the two arrows drawn without a label; they carry the
    /// composite forced by commutativity.
    pub label: Option<&'static str>,
}

const T5: Generator = Generator::T(Transposition(5));
const T7: Generator = Generator::T(Transposition(7));
const T10: Generator = Generator::T(Transposition(10));

pub const PRISM_EDGES: [PrismEdge; 9] = [
    PrismEdge {
        from: PrismNode::BackIV,
        to: PrismNode::BackII,
        word: &[Generator::R42],
        label: Some("R42"),
    },
    PrismEdge {
        from: PrismNode::BackIV,
        to: PrismNode::FrontII,
        word: &[Generator::R42],
        label: Some("R42"),
    },
    PrismEdge {
        from: PrismNode::BackII,
        to: PrismNode::FrontIV,
        word: &[Generator::R42],
        label: Some("R42"),
    },
    PrismEdge {
        from: PrismNode::FrontII,
        to: PrismNode::FrontIV,
        word: &[Generator::R42],
        label: Some("R42"),
    },
    PrismEdge {
        from: PrismNode::Tonic,
        to: PrismNode::Mediant,
        word: &[Generator::R42, T7],
        label: Some("T7∘R42"),
    },
    PrismEdge {
        from: PrismNode::Tonic,
        to: PrismNode::FrontII,
        word: &[T5, Generator::R42],
        label: None,
    },
    PrismEdge {
        from: PrismNode::Tonic,
        to: PrismNode::BackIV,
        word: &[T5],
        label: Some("T5"),
    },
    PrismEdge {
        from: PrismNode::Mediant,
        to: PrismNode::FrontIV,
        word: &[T10, Generator::R42],
        label: None,
    },
    PrismEdge {
        from: PrismNode::Mediant,
        to: PrismNode::BackII,
        word: &[T10],
        label: Some("T10"),
    },
];

/// All directed paths of the prism, as lists of edge indices.
pub fn prism_paths() -> Vec<Vec<usize>> {
    fn extend(path: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let end = PRISM_EDGES[*path.last().unwrap()].to;
        out.push(path.clone());
        for (i, e) in PRISM_EDGES.iter().enumerate() {
            if e.from == end {
                let mut next = path.clone();
                next.push(i);
                extend(next, out);
            }
        }
    }
    let mut out = Vec::new();
    for i in 0..PRISM_EDGES.len() {
        extend(vec![i], &mut out);
    }
    out
}

struct Tally<'a, F> {
    apply: &'a F,
    cases: usize,
    failures: Vec<Failure>,
}

impl<'a, F> Tally<'a, F>
where
    F: Fn(Generator, &RootedChord) -> Result<RootedChord, TransformError>,
{
    fn new(apply: &'a F) -> Self {
        Tally {
            apply,
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn eval(&self, word: &[Generator], input: &RootedChord) -> Option<RootedChord> {
        apply_word_with(&TransformationWord::new(word.to_vec()), input, self.apply).ok()
    }

    fn expect(&mut self, case: impl FnOnce() -> String, word: &[Generator], input: RootedChord, expected: RootedChord) {
        self.cases += 1;
        let got = self.eval(word, &input);
        if got != Some(expected) {
            self.failures.push(Failure {
                case: case(),
                input,
                expected,
                got,
            });
        }
    }

    /// Both words must be defined on `input` and agree.
    fn agree(&mut self, case: impl FnOnce() -> String, lhs: &[Generator], rhs: &[Generator], input: RootedChord) {
        self.cases += 1;
        let left = self.eval(lhs, &input);
        let right = self.eval(rhs, &input);
        match (left, right) {
            (Some(l), Some(r)) if l == r => {}
            (l, r) => self.failures.push(Failure {
                case: case(),
                input,
                expected: l.unwrap_or(input),
                got: r,
            }),
        }
    }

    fn finish(self, check_id: Check) -> VerificationReport {
        VerificationReport {
            check_id,
            cases_checked: self.cases,
            failures: self.failures,
        }
    }
}

fn seventh(key: PitchClass, d: ScaleDegree) -> RootedChord {
    Tonality::major(key).degree_chord(d, Arity::Tetradic)
}

fn chords_of(quality: ChordQuality) -> impl Iterator<Item = RootedChord> {
    PitchClass::all().map(move |r| RootedChord::of_quality(r, &quality))
}

fn key_name(key: PitchClass) -> &'static str {
    key.flat_name()
}

pub fn verify_theory(check: Check) -> VerificationReport {
    verify_theory_with(check, &|g: Generator, c: &RootedChord| g.apply(c))
}

/// Runs `check` with `apply` standing in for generator application.
pub fn verify_theory_with<F>(check: Check, apply: &F) -> VerificationReport
where
    F: Fn(Generator, &RootedChord) -> Result<RootedChord, TransformError>,
{
    use ScaleDegree as D;
    let mut t = Tally::new(apply);
    match check {
        Check::Triangles => {
            for key in PitchClass::all() {
                let k = key_name(key);
                let (i, ii, iii, iv) = (
                    seventh(key, D::I),
                    seventh(key, D::II),
                    seventh(key, D::III),
                    seventh(key, D::IV),
                );
                t.expect(|| format!("{k}: T5(I7) = IV7"), &[T5], i, iv);
                t.expect(|| format!("{k}: T10(III7) = II7"), &[T10], iii, ii);
                t.expect(|| format!("{k}: R42(IV7) = II7"), &[Generator::R42], iv, ii);
                t.expect(|| format!("{k}: R42(II7) = IV7"), &[Generator::R42], ii, iv);
                t.expect(|| format!("{k}: R42∘T5(I7) = II7"), &[T5, Generator::R42], i, ii);
                t.expect(|| format!("{k}: R42∘T10(III7) = IV7"), &[T10, Generator::R42], iii, iv);
            }
        }
        Check::Prism => {
            let paths = prism_paths();
            for key in PitchClass::all() {
                let node_chord = |n: PrismNode| seventh(key, n.degree());
                for path in &paths {
                    let from = PRISM_EDGES[path[0]].from;
                    let to = PRISM_EDGES[*path.last().unwrap()].to;
                    let word: Vec<Generator> = path.iter().flat_map(|&e| PRISM_EDGES[e].word.iter().copied()).collect();
                    let route: Vec<String> = std::iter::once(from.id().to_string())
                        .chain(path.iter().map(|&e| PRISM_EDGES[e].to.id().to_string()))
                        .collect();
                    t.expect(
                        || format!("{}: path {}", key_name(key), route.join(" -> ")),
                        &word,
                        node_chord(from),
                        node_chord(to),
                    );
                }
            }
        }
        Check::R42TCommute => {
            for q in [ChordQuality::Maj7, ChordQuality::Min7] {
                for c in chords_of(q) {
                    for n in 0..12 {
                        let tn: Vec<Generator> = Generator::t(n).into_iter().collect();
                        let lhs: Vec<Generator> = tn.iter().copied().chain([Generator::R42]).collect();
                        let rhs: Vec<Generator> = [Generator::R42].into_iter().chain(tn.iter().copied()).collect();
                        t.agree(|| format!("{c}: R42∘T{n} = T{n}∘R42"), &lhs, &rhs, c);
                    }
                }
            }
        }
        Check::TriadicDiagram => {
            for q in [ChordQuality::MajorTriad, ChordQuality::MinorTriad] {
                for c in chords_of(q) {
                    for n in [5, 7] {
                        let tn = Generator::t(n).unwrap();
                        t.agree(
                            || format!("{c}: R∘T{n} = T{n}∘R"),
                            &[tn, Generator::TriadR],
                            &[Generator::TriadR, tn],
                            c,
                        );
                    }
                }
            }
            for key in PitchClass::all() {
                let triad = |d| Tonality::major(key).degree_chord(d, Arity::Triadic);
                let k = key_name(key);
                t.expect(
                    || format!("{k}: R(I) = VI"),
                    &[Generator::TriadR],
                    triad(D::I),
                    triad(D::VI),
                );
                t.expect(
                    || format!("{k}: R(IV) = II"),
                    &[Generator::TriadR],
                    triad(D::IV),
                    triad(D::II),
                );
                t.expect(
                    || format!("{k}: R(V) = III"),
                    &[Generator::TriadR],
                    triad(D::V),
                    triad(D::III),
                );
            }
        }
        Check::Involutions => {
            for g in [
                Generator::R42,
                Generator::L13,
                Generator::L42,
                Generator::P42,
                Generator::TriadR,
            ] {
                for q in g.domain().unwrap_or(&[]) {
                    for c in chords_of(*q) {
                        t.expect(|| format!("{g}∘{g}({c}) = {c}"), &[g, g], c, c);
                    }
                }
            }
        }
        Check::P42Supertonic => {
            for key in PitchClass::all() {
                let below = key.transpose(-2);
                t.expect(
                    || format!("P42(I7 of {}) = II7 of {}", key_name(key), key_name(below)),
                    &[Generator::P42],
                    seventh(key, D::I),
                    seventh(below, D::II),
                );
            }
        }
    }
    t.finish(check)
}
