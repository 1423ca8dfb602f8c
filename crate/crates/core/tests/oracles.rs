//! Library results against oracles built from raw pitch-class arithmetic.

use std::collections::BTreeSet;

use tetrad::cadence::{
    cadence_image, minimal_cadential_sets, scales_containing, Arity, CadentialSet, ScaleDegree, ScalePattern, Tonality,
};
use tetrad::chordsym::{parse_chord, realize_chord};
use tetrad::modulation::common_degree_chords;
use tetrad::pitch::{ChordQuality, PitchClass, RootedChord};
use tetrad::transform::{invert_word, shortest_path, state_space, Generator, TransformationWord, DEFAULT_GENERATORS};

const MAJOR: [u8; 7] = [0, 2, 4, 5, 7, 9, 11];

/// Every (key root, 1-based degree) whose stacked-thirds chord has the
/// given root and pitch classes.
fn oracle_scales(root: u8, pcs: &[u8], notes: usize) -> BTreeSet<(u8, u8)> {
    let want: BTreeSet<u8> = pcs.iter().copied().collect();
    let mut out = BTreeSet::new();
    for k in 0..12u8 {
        let scale: Vec<u8> = MAJOR.iter().map(|o| (k + o) % 12).collect();
        for d in 0..7 {
            let chord: BTreeSet<u8> = (0..notes).map(|i| scale[(d + 2 * i) % 7]).collect();
            if scale[d] == root && chord == want {
                out.insert((k, d as u8 + 1));
            }
        }
    }
    out
}

fn library_scales(sym: &str, arity: Arity) -> BTreeSet<(u8, u8)> {
    let (c, _) = realize_chord(&parse_chord(sym).unwrap()).unwrap();
    scales_containing(&c, &ScalePattern::major(), arity)
        .into_iter()
        .map(|(t, d)| (t.root().value(), d.index()))
        .collect()
}

fn pcs(c: &RootedChord) -> BTreeSet<u8> {
    c.pitch_classes().iter().map(|p| p.value()).collect()
}

#[test]
fn dm7_lives_in_three_keys() {
    let oracle = oracle_scales(2, &[2, 5, 9, 0], 4);
    assert_eq!(oracle, BTreeSet::from([(0, 2), (10, 3), (5, 6)]));
    assert_eq!(library_scales("Dm7", Arity::Tetradic), oracle);
}

#[test]
fn g7_lives_only_in_c() {
    let oracle = oracle_scales(7, &[7, 11, 2, 5], 4);
    assert_eq!(oracle, BTreeSet::from([(0, 5)]));
    assert_eq!(library_scales("G7", Arity::Tetradic), oracle);
}

#[test]
fn c_triad_lives_in_three_keys() {
    let oracle = oracle_scales(0, &[0, 4, 7], 3);
    assert_eq!(oracle, BTreeSet::from([(0, 1), (5, 5), (7, 4)]));
    assert_eq!(library_scales("C", Arity::Triadic), oracle);
}

#[test]
fn every_diatonic_seventh_matches_the_oracle() {
    for k in 0..12 {
        let t = Tonality::major(PitchClass::new(k));
        for d in t.degrees() {
            let c = t.degree_chord(d, Arity::Tetradic);
            let got: BTreeSet<(u8, u8)> = scales_containing(&c, &ScalePattern::major(), Arity::Tetradic)
                .into_iter()
                .map(|(t, d)| (t.root().value(), d.index()))
                .collect();
            let want = oracle_scales(c.root().value(), &pcs(&c).into_iter().collect::<Vec<_>>(), 4);
            assert_eq!(got, want, "{c} in key {t}");
        }
    }
}

#[test]
fn b_flat_leading_tone_seventh() {
    let t: Tonality = "Bb".parse().unwrap();
    let c = t.degree_chord(ScaleDegree::VII, Arity::Tetradic);
    // Bb C D Eb F G A: thirds above A are A C Eb G
    assert_eq!(c.root().value(), 9);
    assert_eq!(pcs(&c), BTreeSet::from([9, 0, 3, 7]));
    assert_eq!(c.quality(), ChordQuality::HalfDim7);
}

#[test]
fn whole_tone_has_no_cadential_sets() {
    let wt = ScalePattern::new(vec![0, 2, 4, 6, 8, 10]).unwrap();
    assert!(!wt.is_heptatonic());
    for arity in [Arity::Triadic, Arity::Tetradic] {
        assert!(minimal_cadential_sets(&Tonality::new(PitchClass::C, wt.clone()), arity).is_empty());
    }
}

#[test]
fn realized_pitch_classes() {
    // spelled by hand: Bb D F A, Ab C Eb Gb Bb, F A C D, F A C# Eb, A C# E G Bb
    let cases: [(&str, u8, &[u8]); 6] = [
        ("Bbmaj7", 10, &[10, 2, 5, 9]),
        ("Ab9", 8, &[8, 0, 3, 6, 10]),
        ("F6", 5, &[5, 9, 0, 2]),
        ("F+7", 5, &[5, 9, 1, 3]),
        ("A7b9", 9, &[9, 1, 4, 7, 10]),
        ("Bbmaj7/D", 10, &[10, 2, 5, 9]),
    ];
    for (sym, root, want) in cases {
        let (c, _) = realize_chord(&parse_chord(sym).unwrap()).unwrap();
        assert_eq!(c.root().value(), root, "{sym}");
        assert_eq!(pcs(&c), want.iter().copied().collect(), "{sym}");
    }
}

#[test]
fn common_chords_of_b_flat_and_e_flat() {
    let (a, b): (Tonality, Tonality) = ("Bb".parse().unwrap(), "Eb".parse().unwrap());
    let chords = |t: &Tonality| -> Vec<(BTreeSet<u8>, u8, u8)> {
        let s: Vec<u8> = MAJOR.iter().map(|o| (t.root().value() + o) % 12).collect();
        (0..7)
            .map(|d| ((0..4).map(|i| s[(d + 2 * i) % 7]).collect(), s[d], d as u8 + 1))
            .collect()
    };
    let mut oracle = Vec::new();
    for (pa, ra, da) in chords(&a) {
        for (pb, rb, db) in chords(&b) {
            if pa == pb && ra == rb {
                oracle.push((ra, da, db));
            }
        }
    }
    assert_eq!(oracle, vec![(0, 2, 6), (3, 4, 1), (7, 6, 3)]);
    let got: Vec<(u8, u8, u8)> = common_degree_chords(&a, &b, Arity::Tetradic)
        .iter()
        .map(|c| (c.chord.root().value(), c.first.index(), c.second.index()))
        .collect();
    assert_eq!(got, oracle);
    assert!(common_degree_chords(&Tonality::major(PitchClass::C), &"F#".parse().unwrap(), Arity::Tetradic).is_empty());
}

#[test]
fn r42_image_of_j3_leaves_the_key() {
    let c = Tonality::major(PitchClass::C);
    let image = cadence_image(&CadentialSet::j(3), Generator::R42, &c).unwrap();
    let got: Vec<(u8, Option<u8>)> = image
        .iter()
        .map(|i| (i.chord.root().value(), i.degree.map(|d| d.index())))
        .collect();
    // Dm7 -> F A C E, Em7 -> G B D F#
    assert_eq!(got, vec![(5, Some(4)), (7, None)]);
    assert_eq!(pcs(&image[1].chord), BTreeSet::from([7, 11, 2, 6]));
}

#[test]
fn inverse_of_p42_derivation() {
    let w = TransformationWord::new(vec![Generator::L42, Generator::t(8).unwrap()]);
    let inv = invert_word(&w);
    assert_eq!(inv.generators(), [Generator::t(4).unwrap(), Generator::L42]);
    for r in 0..12 {
        let c = RootedChord::of_quality(PitchClass::new(r), &ChordQuality::Maj7);
        assert_eq!(inv.apply(&w.apply(&c).unwrap()).unwrap(), c);
    }
}

/// Brute force over every word up to the BFS length, in generator order.
fn least_word(from: &RootedChord, to: &RootedChord, max: usize) -> Option<Vec<Generator>> {
    let mut gens = DEFAULT_GENERATORS.to_vec();
    gens.sort();
    for len in 0..=max {
        let mut idx = vec![0usize; len];
        loop {
            let word: Vec<Generator> = idx.iter().map(|&i| gens[i]).collect();
            let mut cur = Some(*from);
            for g in &word {
                cur = cur.and_then(|c| g.apply(&c).ok());
            }
            if cur == Some(*to) {
                return Some(word);
            }
            let mut k = len;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < gens.len() {
                    break;
                }
                idx[k] = 0;
            }
            if idx.iter().all(|&i| i == 0) {
                break;
            }
        }
    }
    None
}

#[test]
fn shortest_words_are_lexicographically_least() {
    let space = state_space();
    let sevenths: Vec<RootedChord> = space
        .iter()
        .copied()
        .filter(|c| matches!(c.quality(), ChordQuality::Maj7 | ChordQuality::Min7))
        .collect();
    let from = RootedChord::of_quality(PitchClass::C, &ChordQuality::Maj7);
    for to in &sevenths {
        let bfs = shortest_path(&from, to, &DEFAULT_GENERATORS)
            .unwrap()
            .expect("Maj7/Min7 component is connected");
        let brute = least_word(&from, to, bfs.len()).unwrap();
        assert_eq!(bfs.generators(), brute.as_slice(), "Cmaj7 -> {to}");
    }
}
