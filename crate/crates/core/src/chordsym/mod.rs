//! Jazz chord symbols: parsing, canonical rendering and pitch realization,
//! plus the plain-text lead-sheet format.
//!
//! Grammar, after `♭`/`♯` and a few other glyphs are folded to ASCII:
//!
//! ```text
//! chord  := root quality? alteration* ('/' root)?
//! root   := [A-G] ('b' | '#')?
//! alteration := ('b5' | '#5' | 'b9' | '#9' | '#11' | 'b13'), optionally
//!               wrapped in parentheses and comma-separated
//! ```

mod leadsheet;
mod realize;

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::pitch::PitchClass;

pub use leadsheet::{parse_leadsheet, Event, LeadsheetError, Measure, Progression};
pub use realize::realize_chord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    C,
    D,
    E,
    F,
    G,
    A,
    B,
}

impl Letter {
    const ALL: [Letter; 7] = [
        Letter::C,
        Letter::D,
        Letter::E,
        Letter::F,
        Letter::G,
        Letter::A,
        Letter::B,
    ];

    pub fn natural_pc(self) -> u8 {
        match self {
            Letter::C => 0,
            Letter::D => 2,
            Letter::E => 4,
            Letter::F => 5,
            Letter::G => 7,
            Letter::A => 9,
            Letter::B => 11,
        }
    }

    fn from_char(c: char) -> Option<Letter> {
        Letter::ALL.into_iter().find(|l| l.as_char() == c)
    }

    fn as_char(self) -> char {
        match self {
            Letter::C => 'C',
            Letter::D => 'D',
            Letter::E => 'E',
            Letter::F => 'F',
            Letter::G => 'G',
            Letter::A => 'A',
            Letter::B => 'B',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Accidental {
    Natural,
    Flat,
    Sharp,
}

/// A note name: letter plus at most one accidental.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spelling {
    pub letter: Letter,
    pub accidental: Accidental,
}

impl Spelling {
    pub fn new(letter: Letter, accidental: Accidental) -> Self {
        Spelling { letter, accidental }
    }

    pub fn pitch_class(self) -> PitchClass {
        let base = i32::from(self.letter.natural_pc());
        match self.accidental {
            Accidental::Natural => PitchClass::new(base),
            Accidental::Flat => PitchClass::new(base - 1),
            Accidental::Sharp => PitchClass::new(base + 1),
        }
    }

    /// Naturals where possible, otherwise flats.
    pub fn flat(pc: PitchClass) -> Self {
        Spelling::choose(pc, Accidental::Flat)
    }

    /// Naturals where possible, otherwise sharps.
    pub fn sharp(pc: PitchClass) -> Self {
        Spelling::choose(pc, Accidental::Sharp)
    }

    /// Spells `pc` with the accidental type of the major key on `key_root`:
    /// sharps for G, D, A, E and B, flats otherwise.
    pub fn in_key(pc: PitchClass, key_root: PitchClass) -> Self {
        if [7, 2, 9, 4, 11].contains(&key_root.value()) {
            Spelling::sharp(pc)
        } else {
            Spelling::flat(pc)
        }
    }

    fn choose(pc: PitchClass, acc: Accidental) -> Self {
        if let Some(l) = Letter::ALL.into_iter().find(|l| l.natural_pc() == pc.value()) {
            return Spelling::new(l, Accidental::Natural);
        }
        let shift = if acc == Accidental::Flat { 1 } else { -1 };
        let l = Letter::ALL
            .into_iter()
            .find(|l| i32::from(l.natural_pc()) == (i32::from(pc.value()) + shift).rem_euclid(12))
            .expect("every black key neighbours a white key");
        Spelling::new(l, acc)
    }
}

impl fmt::Display for Spelling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter.as_char())?;
        match self.accidental {
            Accidental::Natural => Ok(()),
            Accidental::Flat => f.write_str("b"),
            Accidental::Sharp => f.write_str("#"),
        }
    }
}

impl Serialize for Spelling {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl FromStr for Spelling {
    type Err = ChordSymbolError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = Normalized::new(s.trim());
        match parse_root(&norm.text, 0) {
            Some((sp, end)) if end == norm.text.len() => Ok(sp),
            _ => Err(ChordSymbolError::UnknownRoot {
                text: s.trim().to_string(),
                span: 0..s.trim().chars().count(),
            }),
        }
    }
}

/// The quality token written after the root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QualityToken {
    Major,
    Minor,
    Dim,
    Aug,
    HalfDim7,
    Sixth,
    MinSixth,
    Dom7,
    Maj7,
    Min7,
    Dim7,
    AugDom7,
    Dom9,
    Maj9,
    Min9,
    Dom13,
    Sus2,
    Sus4,
}

/// Accepted spellings, longest first so that prefix matching is greedy.
const QUALITY_SPELLINGS: &[(&str, QualityToken)] = &[
    ("maj7", QualityToken::Maj7),
    ("maj9", QualityToken::Maj9),
    ("min7", QualityToken::Min7),
    ("m7b5", QualityToken::HalfDim7),
    ("dim7", QualityToken::Dim7),
    ("aug7", QualityToken::AugDom7),
    ("sus2", QualityToken::Sus2),
    ("sus4", QualityToken::Sus4),
    ("maj", QualityToken::Major),
    ("min", QualityToken::Minor),
    ("mi7", QualityToken::Min7),
    ("dim", QualityToken::Dim),
    ("aug", QualityToken::Aug),
    ("sus", QualityToken::Sus4),
    ("M7", QualityToken::Maj7),
    ("^7", QualityToken::Maj7),
    ("m7", QualityToken::Min7),
    ("-7", QualityToken::Min7),
    ("m6", QualityToken::MinSixth),
    ("m9", QualityToken::Min9),
    ("o7", QualityToken::Dim7),
    ("+7", QualityToken::AugDom7),
    ("13", QualityToken::Dom13),
    ("mi", QualityToken::Minor),
    ("^", QualityToken::Maj7),
    ("m", QualityToken::Minor),
    ("-", QualityToken::Minor),
    ("o", QualityToken::Dim),
    ("+", QualityToken::Aug),
    ("6", QualityToken::Sixth),
    ("7", QualityToken::Dom7),
    ("9", QualityToken::Dom9),
];

impl QualityToken {
    pub fn canonical(self) -> &'static str {
        match self {
            QualityToken::Major => "",
            QualityToken::Minor => "m",
            QualityToken::Dim => "dim",
            QualityToken::Aug => "aug",
            QualityToken::HalfDim7 => "m7b5",
            QualityToken::Sixth => "6",
            QualityToken::MinSixth => "m6",
            QualityToken::Dom7 => "7",
            QualityToken::Maj7 => "maj7",
            QualityToken::Min7 => "m7",
            QualityToken::Dim7 => "dim7",
            QualityToken::AugDom7 => "+7",
            QualityToken::Dom9 => "9",
            QualityToken::Maj9 => "maj9",
            QualityToken::Min9 => "m9",
            QualityToken::Dom13 => "13",
            QualityToken::Sus2 => "sus2",
            QualityToken::Sus4 => "sus4",
        }
    }

    pub fn all() -> impl Iterator<Item = QualityToken> {
        use QualityToken::*;
        [
            Major, Minor, Dim, Aug, HalfDim7, Sixth, MinSixth, Dom7, Maj7, Min7, Dim7, AugDom7, Dom9, Maj9, Min9,
            Dom13, Sus2, Sus4,
        ]
        .into_iter()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Alteration {
    Flat5,
    Sharp5,
    Flat9,
    Sharp9,
    Sharp11,
    Flat13,
}

const ALTERATION_SPELLINGS: &[(&str, Alteration)] = &[
    ("#11", Alteration::Sharp11),
    ("b13", Alteration::Flat13),
    ("b5", Alteration::Flat5),
    ("#5", Alteration::Sharp5),
    ("b9", Alteration::Flat9),
    ("#9", Alteration::Sharp9),
];

impl Alteration {
    pub const ALL: [Alteration; 6] = [
        Alteration::Flat5,
        Alteration::Sharp5,
        Alteration::Flat9,
        Alteration::Sharp9,
        Alteration::Sharp11,
        Alteration::Flat13,
    ];

    pub fn as_str(self) -> &'static str {
        ALTERATION_SPELLINGS
            .iter()
            .find(|(_, a)| *a == self)
            .map(|(s, _)| *s)
            .expect("every alteration has a spelling")
    }
}

impl fmt::Display for Alteration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A chord symbol as written. Equality is structural: `Bbmaj7` and `Bb^7`
/// parse to equal values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParsedChord {
    pub root: Spelling,
    pub quality: QualityToken,
    pub alterations: Vec<Alteration>,
    pub bass: Option<Spelling>,
}

impl ParsedChord {
    pub fn new(root: Spelling, quality: QualityToken) -> Self {
        ParsedChord {
            root,
            quality,
            alterations: Vec::new(),
            bass: None,
        }
    }

    pub fn root_pc(&self) -> PitchClass {
        self.root.pitch_class()
    }

    /// Shifts root and bass by `n` semitones, respelling with flats.
    pub fn transpose(&self, n: i32) -> ParsedChord {
        if n.rem_euclid(12) == 0 {
            return self.clone();
        }
        let shift = |s: Spelling| Spelling::flat(s.pitch_class().transpose(n));
        ParsedChord {
            root: shift(self.root),
            quality: self.quality,
            alterations: self.alterations.clone(),
            bass: self.bass.map(shift),
        }
    }

    /// Canonical text, e.g. `A7b9`, `F+7`, `C(b5)`, `Bbmaj7/D`.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ParsedChord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.root, self.quality.canonical())?;
        if !self.alterations.is_empty() {
            // After a bare root an accidental would be read as part of it,
            // and `m7b5` would be read as a half-diminished quality.
            let alts: Vec<&str> = self.alterations.iter().map(|a| a.as_str()).collect();
            let fused = self.quality == QualityToken::Min7 && self.alterations[0] == Alteration::Flat5;
            if self.quality == QualityToken::Major || fused {
                write!(f, "({})", alts.join(","))?;
            } else {
                f.write_str(&alts.concat())?;
            }
        }
        if let Some(b) = self.bass {
            write!(f, "/{b}")?;
        }
        Ok(())
    }
}

impl FromStr for ParsedChord {
    type Err = ChordSymbolError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_chord(s)
    }
}

impl Serialize for ParsedChord {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Spans are character ranges in the original token.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChordSymbolError {
    #[error("empty chord symbol")]
    Empty,
    #[error("unknown root `{text}` at {span:?}")]
    UnknownRoot { text: String, span: Range<usize> },
    #[error("unknown chord quality `{text}` at {span:?}")]
    UnknownQuality { text: String, span: Range<usize> },
    #[error("unexpected `{text}` at {span:?}")]
    TrailingGarbage { text: String, span: Range<usize> },
    #[error("alterations {0:?} contradict the chord quality")]
    ContradictoryAlterations(Vec<Alteration>),
}

impl ChordSymbolError {
    pub fn span(&self) -> Option<Range<usize>> {
        match self {
            ChordSymbolError::UnknownRoot { span, .. }
            | ChordSymbolError::UnknownQuality { span, .. }
            | ChordSymbolError::TrailingGarbage { span, .. } => Some(span.clone()),
            _ => None,
        }
    }
}

/// ASCII-folded text with a map from byte offsets back to source chars.
struct Normalized {
    text: String,
    source_char: Vec<usize>,
    source_len: usize,
}

impl Normalized {
    fn new(s: &str) -> Self {
        let mut text = String::new();
        let mut source_char = Vec::new();
        let chars: Vec<char> = s.chars().collect();
        let mut skip = false;
        for (i, &c) in chars.iter().enumerate() {
            if std::mem::take(&mut skip) {
                continue;
            }
            let folded = match c {
                '♭' => "b",
                '♯' => "#",
                'Δ' | '∆' => "^",
                'ø' | 'Ø' => {
                    skip = chars.get(i + 1) == Some(&'7');
                    "m7b5"
                }
                '°' => "o",
                _ => {
                    text.push(c);
                    source_char.extend(std::iter::repeat_n(i, c.len_utf8()));
                    continue;
                }
            };
            text.push_str(folded);
            source_char.extend(std::iter::repeat_n(i, folded.len()));
        }
        Normalized {
            text,
            source_char,
            source_len: s.chars().count(),
        }
    }

    fn span(&self, from: usize, to: usize) -> Range<usize> {
        let start = self.source_char.get(from).copied().unwrap_or(self.source_len);
        let end = if to >= self.text.len() {
            self.source_len
        } else {
            self.source_char[to]
        };
        start..end.max(start + 1).min(self.source_len.max(start + 1))
    }

    fn source_text(&self, original: &str, span: &Range<usize>) -> String {
        original.chars().skip(span.start).take(span.len()).collect()
    }
}

fn parse_root(s: &str, at: usize) -> Option<(Spelling, usize)> {
    let mut chars = s[at..].chars();
    let letter = Letter::from_char(chars.next()?)?;
    let (acc, len) = match chars.next() {
        Some('b') => (Accidental::Flat, 2),
        Some('#') => (Accidental::Sharp, 2),
        _ => (Accidental::Natural, 1),
    };
    Some((Spelling::new(letter, acc), at + len))
}

fn parse_alteration(s: &str, at: usize) -> Option<(Alteration, usize)> {
    ALTERATION_SPELLINGS
        .iter()
        .find(|(txt, _)| s[at..].starts_with(txt))
        .map(|(txt, a)| (*a, at + txt.len()))
}

/// Parses one chord symbol such as `A7b9`, `F+7`, `Bbmaj7` or `C7(b9,#11)/E`.
pub fn parse_chord(text: &str) -> Result<ParsedChord, ChordSymbolError> {
    let original = text.trim();
    if original.is_empty() {
        return Err(ChordSymbolError::Empty);
    }
    let norm = Normalized::new(original);
    let s = norm.text.as_str();
    let err_span = |from: usize, to: usize| {
        let span = norm.span(from, to);
        (norm.source_text(original, &span), span)
    };

    let Some((root, mut at)) = parse_root(s, 0) else {
        let end = s.find(|c: char| !c.is_alphabetic()).unwrap_or(s.len()).max(1);
        let (text, span) = err_span(0, end.min(s.len()));
        return Err(ChordSymbolError::UnknownRoot { text, span });
    };

    let mut quality = QualityToken::Major;
    if let Some((txt, q)) = QUALITY_SPELLINGS.iter().find(|(txt, _)| s[at..].starts_with(txt)) {
        quality = *q;
        at += txt.len();
    } else if !s[at..].is_empty() && !s[at..].starts_with(['/', '(']) && parse_alteration(s, at).is_none() {
        let end = s[at..].find(['/', '(']).map_or(s.len(), |i| at + i);
        let (text, span) = err_span(at, end);
        return Err(ChordSymbolError::UnknownQuality { text, span });
    }

    let mut alterations = Vec::new();
    loop {
        if let Some((a, next)) = parse_alteration(s, at) {
            alterations.push(a);
            at = next;
        } else if s[at..].starts_with('(') {
            let close = s[at..].find(')').map(|i| at + i);
            let Some(close) = close else {
                let (text, span) = err_span(at, s.len());
                return Err(ChordSymbolError::TrailingGarbage { text, span });
            };
            let mut inner = at + 1;
            loop {
                let Some((a, next)) = parse_alteration(s, inner) else {
                    let (text, span) = err_span(inner, close.max(inner + 1));
                    return Err(ChordSymbolError::TrailingGarbage { text, span });
                };
                alterations.push(a);
                inner = next;
                if s[inner..].starts_with(',') {
                    inner += 1;
                } else {
                    break;
                }
            }
            if inner != close {
                let (text, span) = err_span(inner, close);
                return Err(ChordSymbolError::TrailingGarbage { text, span });
            }
            at = close + 1;
        } else {
            break;
        }
    }

    let mut bass = None;
    if s[at..].starts_with('/') {
        match parse_root(s, at + 1) {
            Some((b, next)) => {
                bass = Some(b);
                at = next;
            }
            None => {
                let (text, span) = err_span(at + 1, s.len());
                return Err(ChordSymbolError::UnknownRoot { text, span });
            }
        }
    }

    if at < s.len() {
        let (text, span) = err_span(at, s.len());
        return Err(ChordSymbolError::TrailingGarbage { text, span });
    }
    Ok(ParsedChord {
        root,
        quality,
        alterations,
        bass,
    })
}
