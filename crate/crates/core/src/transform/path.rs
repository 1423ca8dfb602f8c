//! Breadth-first search over the Cayley graph of a generator set.

use std::collections::{HashMap, HashSet, VecDeque};

use thiserror::Error;

use super::{Generator, TransformationWord};
use crate::pitch::{ChordQuality, PitchClass, RootedChord};

pub const DEFAULT_GENERATORS: [Generator; 4] = [Generator::R42, Generator::L13, Generator::L42, Generator::P42];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("generator set is empty")]
    EmptyGeneratorSet,
}

/// Every rooted chord of the five seventh qualities and four triad
/// qualities (108 chords), seventh chords first.
pub fn state_space() -> Vec<RootedChord> {
    ChordQuality::SEVENTHS
        .iter()
        .chain(ChordQuality::TRIADS.iter())
        .flat_map(|q| PitchClass::all().map(move |r| RootedChord::of_quality(r, q)))
        .collect()
}

/// Labelled edges among `nodes`; generators undefined on a node contribute
/// nothing, and images outside `nodes` are dropped.
pub fn cayley_edges(nodes: &[RootedChord], gens: &[Generator]) -> Vec<(RootedChord, Generator, RootedChord)> {
    let members: HashSet<&RootedChord> = nodes.iter().collect();
    let mut gens = gens.to_vec();
    gens.sort();
    gens.dedup();
    nodes
        .iter()
        .flat_map(|c| {
            gens.iter()
                .filter_map(move |g| g.apply(c).ok().map(|img| (*c, *g, img)))
        })
        .filter(|(_, _, img)| members.contains(img))
        .collect()
}

/// A minimum-length word taking `from` to `to`, or `None` when `to` is not
/// reachable. Among shortest words the lexicographically least (in
/// generator order) is returned.
pub fn shortest_path(
    from: &RootedChord,
    to: &RootedChord,
    gens: &[Generator],
) -> Result<Option<TransformationWord>, PathError> {
    if gens.is_empty() {
        return Err(PathError::EmptyGeneratorSet);
    }
    if from == to {
        return Ok(Some(TransformationWord::identity()));
    }
    let mut gens = gens.to_vec();
    gens.sort();
    gens.dedup();

    let space: HashSet<RootedChord> = state_space().into_iter().collect();
    // Expanding nodes in discovery order with generators in sorted order
    // makes the first discovery of each node its lexicographically least
    // shortest word.
    let mut parent: HashMap<RootedChord, (RootedChord, Generator)> = HashMap::new();
    let mut queue = VecDeque::from([*from]);
    while let Some(node) = queue.pop_front() {
        for g in &gens {
            let Ok(next) = g.apply(&node) else { continue };
            if next == *from || !space.contains(&next) || parent.contains_key(&next) {
                continue;
            }
            parent.insert(next, (node, *g));
            if next == *to {
                let mut word = Vec::new();
                let mut cur = next;
                while cur != *from {
                    let (prev, g) = parent[&cur];
                    word.push(g);
                    cur = prev;
                }
                word.reverse();
                return Ok(Some(TransformationWord::new(word)));
            }
            queue.push_back(next);
        }
    }
    Ok(None)
}
