//! Graphviz DOT export of the conglomerate, the prism and Cayley graphs.

use std::fmt::Write as _;

use crate::cadence::{cadence_pair_morphism, region_of, Arity, CadentialSet, Region, Tonality, LINKED_PAIRS};
use crate::pitch::{ChordQuality, PitchClass, RootedChord};
use crate::transform::{cayley_edges, Generator, TransformationWord, PRISM_EDGES};

fn region_colour(r: Region) -> &'static str {
    match r {
        Region::A => "lightblue",
        Region::B => "palegreen",
        Region::C => "lightsalmon",
    }
}

/// The six tetradic sets of `key`, solid edges for the linked pairs and
/// dashed edges for the prism morphisms between the A and B faces.
pub fn conglomerate_dot(key: &Tonality) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph conglomerate {{");
    let _ = writeln!(out, "  label=\"ABC conglomerate in {key}\";");
    let _ = writeln!(out, "  node [shape=box, style=filled];");
    for n in 1..=6 {
        let set = CadentialSet::j(n);
        let chords: Vec<String> = set
            .degrees
            .iter()
            .map(|d| key.degree_chord(d, Arity::Tetradic).symbol())
            .collect();
        let region = region_of(&set);
        let _ = writeln!(
            out,
            "  J{n} [label=\"J{n} {}\\n{}\\nregion {region} ({})\", fillcolor={}];",
            set.degrees,
            chords.join(", "),
            region.description(),
            region_colour(region)
        );
    }
    for (a, b, _) in LINKED_PAIRS {
        let (sa, sb) = (CadentialSet::j(a), CadentialSet::j(b));
        let label = match cadence_pair_morphism(&sa, &sb, key) {
            Ok(link) => {
                let maps: Vec<String> = link.mapped.iter().map(|(x, y)| format!("{x}->{y}")).collect();
                format!("{} ({})", link.morphism, maps.join(", "))
            }
            Err(e) => format!("unverified: {e}"),
        };
        let _ = writeln!(out, "  J{a} -- J{b} [label=\"{label}\", penwidth=2];");
    }
    let _ = writeln!(out, "  J1 -- J3 [style=dashed, label=\"T7∘R42\"];");
    let _ = writeln!(out, "  J2 -- J4 [style=dashed, label=\"T5\"];");
    let _ = writeln!(
        out,
        "  legend [shape=note, style=solid, label=\"solid: pair morphisms\\ndashed: prism morphisms (labels pick the bottom-edge composites; the pairing is a reading of the figure)\"];"
    );
    let _ = writeln!(out, "}}");
    out
}

/// The prism diagram with its chords in `key`.
pub fn prism_dot(key: &Tonality) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph prism {{");
    let _ = writeln!(out, "  label=\"prism in {key}\";");
    for node in crate::transform::PrismNode::ALL {
        let chord = key.degree_chord(node.degree(), Arity::Tetradic);
        let _ = writeln!(
            out,
            "  {} [label=\"{}7\\n{}\"];",
            node.id(),
            node.degree(),
            chord.symbol()
        );
    }
    for e in PRISM_EDGES.iter() {
        let word = TransformationWord::new(e.word.to_vec());
        match e.label {
            Some(l) => {
                let _ = writeln!(out, "  {} -> {} [label=\"{l}\"];", e.from.id(), e.to.id());
            }
            None => {
                let _ = writeln!(
                    out,
                    "  {} -> {} [label=\"{word}\", style=dashed];",
                    e.from.id(),
                    e.to.id()
                );
            }
        }
    }
    let _ = writeln!(out, "}}");
    out
}

/// The sixty seventh chords of the five classic qualities with the edges
/// of `gens`. Involutive generators are drawn once per pair.
pub fn cayley_dot(gens: &[Generator]) -> String {
    let nodes: Vec<RootedChord> = ChordQuality::SEVENTHS
        .iter()
        .flat_map(|q| PitchClass::all().map(move |r| RootedChord::of_quality(r, q)))
        .collect();
    let mut out = String::new();
    let _ = writeln!(out, "digraph cayley {{");
    for c in &nodes {
        let _ = writeln!(out, "  \"{c}\";");
    }
    for (a, g, b) in cayley_edges(&nodes, gens) {
        if g.inverse() == g {
            if a < b {
                let _ = writeln!(out, "  \"{a}\" -> \"{b}\" [label=\"{g}\", dir=both];");
            }
        } else {
            let _ = writeln!(out, "  \"{a}\" -> \"{b}\" [label=\"{g}\"];");
        }
    }
    let _ = writeln!(out, "}}");
    out
}
