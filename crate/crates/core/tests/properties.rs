use proptest::prelude::*;
use proptest::sample::select;

use tetrad::analyze::{activated_cadences, analyze, match_degrees, AnalysisConfig, MatchMode};
use tetrad::cadence::{is_cadential, Arity, DegreeSet, ScaleDegree, Tonality};
use tetrad::chordsym::{parse_chord, Accidental, Alteration, Letter, ParsedChord, QualityToken, Spelling};
use tetrad::corpus;
use tetrad::modulation::classify_modulation;
use tetrad::pitch::{classify_quality, ChordQuality, PitchClass, RootedChord};
use tetrad::transform::{invert_word, Generator, TransformationWord};

const INVOLUTIONS: [Generator; 5] = [
    Generator::R42,
    Generator::L13,
    Generator::L42,
    Generator::P42,
    Generator::TriadR,
];

fn pc() -> impl Strategy<Value = PitchClass> {
    (0i32..12).prop_map(PitchClass::new)
}

fn any_chord() -> impl Strategy<Value = RootedChord> {
    (pc(), prop::collection::btree_set(0i32..12, 0..6))
        .prop_map(|(root, pcs)| RootedChord::from_pitch_classes(root, pcs.into_iter().map(PitchClass::new)))
}

fn seventh() -> impl Strategy<Value = RootedChord> {
    (pc(), select(ChordQuality::SEVENTHS.to_vec())).prop_map(|(r, q)| RootedChord::of_quality(r, &q))
}

fn generator() -> impl Strategy<Value = Generator> {
    prop_oneof![
        select(INVOLUTIONS.to_vec()),
        (1i32..12).prop_map(|n| Generator::t(n).unwrap()),
    ]
}

fn in_domain(g: Generator) -> Vec<ChordQuality> {
    g.domain()
        .map(|d| d.to_vec())
        .unwrap_or_else(|| ChordQuality::SEVENTHS.to_vec())
}

fn degree() -> impl Strategy<Value = ScaleDegree> {
    (1u8..=7).prop_map(|i| ScaleDegree::new(i).unwrap())
}

fn degree_set() -> impl Strategy<Value = DegreeSet> {
    prop::collection::vec(degree(), 0..7).prop_map(|v| v.into_iter().collect())
}

fn spelling() -> impl Strategy<Value = Spelling> {
    (
        select(vec![
            Letter::C,
            Letter::D,
            Letter::E,
            Letter::F,
            Letter::G,
            Letter::A,
            Letter::B,
        ]),
        select(vec![Accidental::Natural, Accidental::Flat, Accidental::Sharp]),
    )
        .prop_map(|(l, a)| Spelling::new(l, a))
}

fn parsed_chord() -> impl Strategy<Value = ParsedChord> {
    (
        spelling(),
        select(QualityToken::all().collect::<Vec<_>>()),
        prop::collection::vec(select(Alteration::ALL.to_vec()), 0..3),
        prop::option::of(spelling()),
    )
        .prop_map(|(root, quality, alterations, bass)| ParsedChord {
            root,
            quality,
            alterations,
            bass,
        })
}

proptest! {
    #[test]
    fn transposition_is_an_action(c in any_chord(), a in -24i32..24, b in -24i32..24) {
        prop_assert_eq!(c.transpose(a).transpose(b), c.transpose(a + b));
        prop_assert_eq!(c.transpose(12), c);
    }

    #[test]
    fn quality_is_transposition_invariant(c in any_chord(), n in 0i32..12) {
        prop_assert_eq!(classify_quality(&c.transpose(n)), classify_quality(&c));
        prop_assert_eq!(c.transpose(n).root(), c.root().transpose(n));
    }

    #[test]
    fn involutions_square_to_identity(g in select(INVOLUTIONS.to_vec()), r in pc(), i in 0usize..2) {
        let q = in_domain(g)[i];
        let c = RootedChord::of_quality(r, &q);
        let once = g.apply(&c).unwrap();
        prop_assert_ne!(once, c);
        prop_assert_eq!(g.apply(&once).unwrap(), c);
    }

    #[test]
    fn generators_commute_with_transposition(g in generator(), c in seventh(), n in 1i32..12) {
        let t = Generator::t(n).unwrap();
        let direct = g.apply(&c).and_then(|x| t.apply(&x));
        let shifted = t.apply(&c).and_then(|x| g.apply(&x));
        prop_assert_eq!(direct.ok(), shifted.ok());
    }

    #[test]
    fn p42_is_l42_then_t8(r in pc(), minor in any::<bool>()) {
        let q = if minor { ChordQuality::Min7 } else { ChordQuality::Maj7 };
        let c = RootedChord::of_quality(r, &q);
        let via = TransformationWord::new(vec![Generator::L42, Generator::t(if minor { 4 } else { 8 }).unwrap()]);
        prop_assert_eq!(via.apply(&c).unwrap(), Generator::P42.apply(&c).unwrap());
    }

    #[test]
    fn inverse_word_undoes(c in seventh(), gens in prop::collection::vec(generator(), 0..6)) {
        let w = TransformationWord::new(gens);
        if let Ok(out) = w.apply(&c) {
            prop_assert_eq!(invert_word(&w).apply(&out).unwrap(), c);
            prop_assert_eq!(invert_word(&invert_word(&w)), w);
        }
    }

    #[test]
    fn chord_symbols_round_trip(p in parsed_chord()) {
        let text = p.render();
        let back = parse_chord(&text);
        prop_assert_eq!(back.as_ref(), Ok(&p), "rendered as {}", text);
    }

    #[test]
    fn chord_transpose_moves_root(p in parsed_chord(), n in -12i32..12) {
        let moved = p.transpose(n);
        prop_assert_eq!(moved.root_pc(), p.root_pc().transpose(n));
        prop_assert_eq!(moved.quality, p.quality);
        prop_assert_eq!(&moved.alterations, &p.alterations);
    }

    #[test]
    fn cadential_is_upward_closed(r in pc(), s in degree_set(), extra in degree_set(), triadic in any::<bool>()) {
        let arity = if triadic { Arity::Triadic } else { Arity::Tetradic };
        let t = Tonality::major(r);
        if is_cadential(&t, s, arity) {
            prop_assert!(is_cadential(&t, s.union(extra), arity));
        }
    }

    #[test]
    fn classification_is_monotone(from in pc(), to in pc(), s in degree_set(), extra in degree_set()) {
        let (a, b) = (Tonality::major(from), Tonality::major(to));
        if classify_modulation(&a, &b, s).verdict.is_quantized() {
            prop_assert!(classify_modulation(&a, &b, s.union(extra)).verdict.is_quantized());
        }
        let shifted = classify_modulation(&a.transpose(5), &b.transpose(5), s);
        prop_assert_eq!(shifted.verdict, classify_modulation(&a, &b, s).verdict);
    }

    #[test]
    fn activation_grows_with_matches(n in 0i32..12, take in 0usize..40, more in 0usize..40) {
        let sheet = corpus::blues_for_alice().transpose(n);
        let key = Tonality::major(PitchClass::new(5 + n));
        let all = match_degrees(&sheet, &key, MatchMode::DegreeRoot);
        let small = &all[..take.min(all.len())];
        let large = &all[..(take + more).min(all.len())];
        let covered = |acts: &[tetrad::analyze::Activation]| -> DegreeSet {
            acts.iter().fold(DegreeSet::EMPTY, |acc, a| acc.union(a.set.degrees))
        };
        let (s, l) = (activated_cadences(small, &key), activated_cadences(large, &key));
        prop_assert!(covered(&s).is_subset(covered(&l)));
    }

    #[test]
    fn blues_analysis_is_equivariant(n in 0i32..12) {
        let config = AnalysisConfig::default();
        let base = analyze(&corpus::blues_for_alice(), &config);
        let moved = analyze(&corpus::blues_for_alice().transpose(n), &config);
        prop_assert_eq!(base.key_timeline.len(), moved.key_timeline.len());
        for (a, b) in base.key_timeline.iter().zip(&moved.key_timeline) {
            prop_assert_eq!((a.start, a.end, a.score), (b.start, b.end, b.score));
            prop_assert_eq!(&a.key.transpose(n), &b.key);
        }
        let sets = |r: &tetrad::analyze::AnalysisReport| -> Vec<Vec<String>> {
            r.windows.iter().map(|w| w.activated.iter().map(|a| a.set.to_string()).collect()).collect()
        };
        prop_assert_eq!(sets(&base), sets(&moved));
        prop_assert_eq!(base.region_stats, moved.region_stats);
    }
}
