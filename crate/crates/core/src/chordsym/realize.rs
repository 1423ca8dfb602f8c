use super::{Alteration, ChordSymbolError, ParsedChord, QualityToken};
use crate::pitch::{ChordQuality, PitchClass, RootedChord};

/// Offsets of the written quality, before alterations. Ninths are listed
/// reduced mod 12 (a ninth above the root is offset 2).
fn base_offsets(q: QualityToken) -> &'static [u8] {
    match q {
        QualityToken::Major => &[0, 4, 7],
        QualityToken::Minor => &[0, 3, 7],
        QualityToken::Dim => &[0, 3, 6],
        QualityToken::Aug => &[0, 4, 8],
        QualityToken::Sixth => &[0, 4, 7, 9],
        QualityToken::MinSixth => &[0, 3, 7, 9],
        QualityToken::Dom7 => &[0, 4, 7, 10],
        QualityToken::Maj7 => &[0, 4, 7, 11],
        QualityToken::Min7 => &[0, 3, 7, 10],
        QualityToken::HalfDim7 => &[0, 3, 6, 10],
        QualityToken::Dim7 => &[0, 3, 6, 9],
        QualityToken::AugDom7 => &[0, 4, 8, 10],
        QualityToken::Dom9 => &[0, 4, 7, 10, 2],
        QualityToken::Maj9 => &[0, 4, 7, 11, 2],
        QualityToken::Min9 => &[0, 3, 7, 10, 2],
        QualityToken::Dom13 => &[0, 4, 7, 10, 2, 9],
        QualityToken::Sus2 => &[0, 2, 7],
        QualityToken::Sus4 => &[0, 5, 7],
    }
}

/// Whether the quality itself fixes the fifth / ninth / thirteenth at a
/// value an alteration would contradict.
fn fixes_fifth(q: QualityToken) -> bool {
    matches!(
        q,
        QualityToken::Dim | QualityToken::Aug | QualityToken::HalfDim7 | QualityToken::Dim7 | QualityToken::AugDom7
    )
}

fn fixes_ninth(q: QualityToken) -> bool {
    matches!(
        q,
        QualityToken::Dom9 | QualityToken::Maj9 | QualityToken::Min9 | QualityToken::Dom13
    )
}

/// Pitch content of a symbol. Fifth alterations replace the natural fifth,
/// flat and sharp ninths replace a written ninth or are added, `#11` and
/// `b13` are added. The slash bass is ignored.
pub fn realize_chord(p: &ParsedChord) -> Result<(RootedChord, ChordQuality), ChordSymbolError> {
    let q = p.quality;
    let contradictory = p.alterations.iter().any(|a| match a {
        Alteration::Flat5 | Alteration::Sharp5 => fixes_fifth(q),
        Alteration::Flat9 | Alteration::Sharp9 => fixes_ninth(q),
        Alteration::Flat13 => q == QualityToken::Dom13,
        Alteration::Sharp11 => false,
    });
    if contradictory {
        return Err(ChordSymbolError::ContradictoryAlterations(p.alterations.clone()));
    }

    let mut offsets: Vec<u8> = base_offsets(q).to_vec();
    let has = |a: Alteration| p.alterations.contains(&a);
    if has(Alteration::Flat5) || has(Alteration::Sharp5) {
        offsets.retain(|&o| o != 7);
    }
    if has(Alteration::Flat9) || has(Alteration::Sharp9) {
        offsets.retain(|&o| o != 2);
    }
    for a in &p.alterations {
        offsets.push(match a {
            Alteration::Flat5 => 6,
            Alteration::Sharp5 => 8,
            Alteration::Flat9 => 1,
            Alteration::Sharp9 => 3,
            Alteration::Sharp11 => 6,
            Alteration::Flat13 => 8,
        });
    }
    let root = p.root_pc();
    let chord = RootedChord::from_pitch_classes(root, offsets.iter().map(|&o| root.transpose(i32::from(o))));
    Ok((chord, chord.quality()))
}

impl ParsedChord {
    /// The symbol for a rooted chord, when one exists in the vocabulary.
    /// Roots are spelled with `spell`.
    pub fn from_rooted(c: &RootedChord, spell: impl Fn(PitchClass) -> super::Spelling) -> Option<ParsedChord> {
        let root = spell(c.root());
        QualityToken::all()
            .find(|q| {
                let cand = ParsedChord::new(root, *q);
                realize_chord(&cand).map(|(r, _)| r == *c).unwrap_or(false)
            })
            .map(|q| ParsedChord::new(root, q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chordsym::{parse_chord, Spelling};

    fn pcs(s: &str) -> Vec<u8> {
        let (c, _) = realize_chord(&parse_chord(s).unwrap()).unwrap();
        let mut v: Vec<u8> = c.pitch_classes().iter().map(|p| p.value()).collect();
        v.sort();
        v
    }

    #[test]
    fn interval_tables() {
        assert_eq!(pcs("Bbmaj7"), vec![2, 5, 9, 10]);
        assert_eq!(pcs("Ab9"), vec![0, 3, 6, 8, 10]);
        assert_eq!(pcs("F6"), vec![0, 2, 5, 9]);
        assert_eq!(pcs("F+7"), vec![1, 3, 5, 9]);
        assert_eq!(pcs("A7b9"), vec![1, 4, 7, 9, 10]);
        assert_eq!(pcs("C7b9"), vec![0, 1, 4, 7, 10]);
        assert_eq!(pcs("C7(b5)"), vec![0, 4, 6, 10]);
    }

    #[test]
    fn qualities() {
        let q = |s: &str| realize_chord(&parse_chord(s).unwrap()).unwrap().1;
        assert_eq!(q("F6"), ChordQuality::Sixth);
        assert_eq!(q("F+7"), ChordQuality::AugDom7);
        assert_eq!(q("Bm7b5"), ChordQuality::HalfDim7);
        assert_eq!(q("Cdim7"), ChordQuality::Dim7);
        assert!(matches!(q("Ab9"), ChordQuality::Other(_)));
    }

    #[test]
    fn slash_bass_keeps_root() {
        let (c, _) = realize_chord(&parse_chord("C7/E").unwrap()).unwrap();
        assert_eq!(c.root().value(), 0);
    }

    #[test]
    fn contradictions() {
        for s in ["C+7b5", "Cdim(#5)", "C9b9", "C13b13"] {
            assert!(
                matches!(
                    realize_chord(&parse_chord(s).unwrap()),
                    Err(ChordSymbolError::ContradictoryAlterations(_))
                ),
                "{s}"
            );
        }
    }

    #[test]
    fn symbol_from_chord() {
        let (c, _) = realize_chord(&parse_chord("Dbmaj7").unwrap()).unwrap();
        assert_eq!(
            ParsedChord::from_rooted(&c, Spelling::sharp).unwrap().render(),
            "C#maj7"
        );
        let cluster = crate::pitch::make_chord(PitchClass::C, &[0, 1, 2]).unwrap();
        assert_eq!(ParsedChord::from_rooted(&cluster, Spelling::flat), None);
    }
}
