//! The lead-sheet text format.
//!
//! ```text
//! title: Blues for Alice
//! key: F
//! # comment
//! | F6 | Em7 A7b9 | Dm7 G7 |
//! ```
//!
//! Bars are separated by `|`, chords within a bar by whitespace. Bar lines at
//! the start and end of a line are optional and adjacent bar lines (`||`)
//! merge, but a bar holding only whitespace is kept as an empty measure.
//! `#` starts a comment when it begins a token, so `C#m7` is still a chord.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::{parse_chord, ChordSymbolError, ParsedChord, Spelling};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Measure {
    pub chords: Vec<ParsedChord>,
}

impl Measure {
    pub fn new(chords: Vec<ParsedChord>) -> Self {
        Measure { chords }
    }

    /// Each chord gets an equal share of the bar.
    pub fn weight(&self) -> f64 {
        1.0 / self.chords.len().max(1) as f64
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Progression {
    pub title: Option<String>,
    pub key: Option<Spelling>,
    pub measures: Vec<Measure>,
}

/// One chord occurrence; `measure` is 1-based.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Event<'a> {
    pub measure: usize,
    pub position: usize,
    pub chord: &'a ParsedChord,
    pub weight: f64,
}

impl Progression {
    pub fn new(measures: Vec<Measure>) -> Self {
        Progression {
            title: None,
            key: None,
            measures,
        }
    }

    pub fn measure_count(&self) -> usize {
        self.measures.len()
    }

    /// The 1-based measure `m`.
    pub fn measure(&self, m: usize) -> Option<&Measure> {
        m.checked_sub(1).and_then(|i| self.measures.get(i))
    }

    pub fn events(&self) -> impl Iterator<Item = Event<'_>> {
        self.measures.iter().enumerate().flat_map(|(i, m)| {
            let weight = m.weight();
            m.chords.iter().enumerate().map(move |(position, chord)| Event {
                measure: i + 1,
                position,
                chord,
                weight,
            })
        })
    }

    pub fn transpose(&self, n: i32) -> Progression {
        let key = self.key.map(|k| {
            if n.rem_euclid(12) == 0 {
                k
            } else {
                Spelling::flat(k.pitch_class().transpose(n))
            }
        });
        Progression {
            title: self.title.clone(),
            key,
            measures: self
                .measures
                .iter()
                .map(|m| Measure::new(m.chords.iter().map(|c| c.transpose(n)).collect()))
                .collect(),
        }
    }

    /// Renders back to the lead-sheet format, four bars per line.
    pub fn to_leadsheet(&self) -> String {
        let mut out = String::new();
        if let Some(t) = &self.title {
            out.push_str(&format!("title: {t}\n"));
        }
        if let Some(k) = &self.key {
            out.push_str(&format!("key: {k}\n"));
        }
        for line in self.measures.chunks(4) {
            out.push('|');
            for m in line {
                let chords: Vec<String> = m.chords.iter().map(ParsedChord::render).collect();
                out.push_str(&format!(" {} |", chords.join(" ")));
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for Progression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bars: Vec<String> = self
            .measures
            .iter()
            .map(|m| m.chords.iter().map(ParsedChord::render).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{}", bars.join(" | "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LeadsheetError {
    #[error("line {line}, column {column}: {source}")]
    Parse {
        line: usize,
        column: usize,
        token: String,
        source: ChordSymbolError,
    },
    #[error("line {line}: bad key `{text}`")]
    BadKey { line: usize, text: String },
    #[error("lead sheet contains no measures")]
    EmptySheet,
}

/// Byte offset where a comment starts, if any.
fn comment_start(line: &str) -> Option<usize> {
    let mut prev: Option<char> = None;
    for (i, c) in line.char_indices() {
        if c == '#' && prev.is_none_or(|p| p.is_whitespace() || p == '|') {
            return Some(i);
        }
        prev = Some(c);
    }
    None
}

fn header<'a>(line: &'a str, name: &str) -> Option<&'a str> {
    let (head, rest) = line.split_once(':')?;
    head.trim().eq_ignore_ascii_case(name).then(|| rest.trim())
}

pub fn parse_leadsheet(text: &str) -> Result<Progression, LeadsheetError> {
    let mut sheet = Progression::default();
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = match comment_start(raw) {
            Some(i) => &raw[..i],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        if let Some(t) = header(line, "title") {
            sheet.title = Some(t.to_string());
            continue;
        }
        if let Some(k) = header(line, "key") {
            let key = k.parse().map_err(|_| LeadsheetError::BadKey {
                line: line_no,
                text: k.to_string(),
            })?;
            sheet.key = Some(key);
            continue;
        }

        let segments: Vec<(usize, &str)> = {
            let mut v = Vec::new();
            let mut start = 0;
            for (i, c) in line.char_indices() {
                if c == '|' {
                    v.push((start, &line[start..i]));
                    start = i + 1;
                }
            }
            v.push((start, &line[start..]));
            v
        };
        let last = segments.len() - 1;
        for (idx, (offset, seg)) in segments.into_iter().enumerate() {
            let blank = seg.trim().is_empty();
            if seg.is_empty() || (blank && (idx == 0 || idx == last)) {
                continue;
            }
            let mut chords = Vec::new();
            let mut pos = 0;
            for tok in seg.split_whitespace() {
                let rel = seg[pos..].find(tok).map(|i| pos + i).unwrap_or(pos);
                pos = rel + tok.len();
                let chord = parse_chord(tok).map_err(|source| {
                    let start_byte = offset + rel;
                    let column = line[..start_byte].chars().count() + 1 + source.span().map_or(0, |s| s.start);
                    LeadsheetError::Parse {
                        line: line_no,
                        column,
                        token: tok.to_string(),
                        source,
                    }
                })?;
                chords.push(chord);
            }
            sheet.measures.push(Measure::new(chords));
        }
    }
    if sheet.measures.is_empty() {
        return Err(LeadsheetError::EmptySheet);
    }
    Ok(sheet)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_sheet() {
        let p = parse_leadsheet("| C |").unwrap();
        assert_eq!(p.measure_count(), 1);
        assert_eq!(p.measures[0].chords.len(), 1);
    }

    #[test]
    fn headers_and_comments() {
        let p = parse_leadsheet("title: Test\nkey: Bb\n# intro\n| C#m7 F#7 | Bmaj7 | # bridge\n").unwrap();
        assert_eq!(p.title.as_deref(), Some("Test"));
        assert_eq!(p.key.unwrap().to_string(), "Bb");
        assert_eq!(p.measure_count(), 2);
        assert_eq!(p.measures[0].chords[0].render(), "C#m7");
    }

    #[test]
    fn bad_token_position() {
        match parse_leadsheet("| C ? |") {
            Err(LeadsheetError::Parse {
                line, column, token, ..
            }) => {
                assert_eq!((line, column, token.as_str()), (1, 5, "?"));
            }
            other => panic!("{other:?}"),
        }
        match parse_leadsheet("title: x\n| C | Dm7\n| G7x |") {
            Err(LeadsheetError::Parse { line, column, .. }) => assert_eq!((line, column), (3, 5)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_inputs() {
        assert_eq!(parse_leadsheet(""), Err(LeadsheetError::EmptySheet));
        assert_eq!(
            parse_leadsheet("title: x\n# nothing\n||"),
            Err(LeadsheetError::EmptySheet)
        );
        let p = parse_leadsheet("| | |").unwrap();
        assert_eq!(p.measure_count(), 2);
        assert_eq!(p.events().count(), 0);
    }

    #[test]
    fn bars_merge_across_lines() {
        let p = parse_leadsheet("| C | F |\n| G7 | C |\nDm7 G7").unwrap();
        assert_eq!(p.measure_count(), 5);
        assert_eq!(p.measures[4].chords.len(), 2);
    }

    #[test]
    fn weights_share_the_bar() {
        let p = parse_leadsheet("| C F G | D |").unwrap();
        let ws: Vec<f64> = p.events().map(|e| e.weight).collect();
        assert_eq!(ws, vec![1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 1.0]);
    }

    #[test]
    fn render_round_trip() {
        let p = parse_leadsheet("title: T\nkey: Eb\n| Ebmaj7 | Ab9 Bb6 | F+7 | G7b9 | Cm7 |").unwrap();
        assert_eq!(parse_leadsheet(&p.to_leadsheet()).unwrap(), p);
    }
}
