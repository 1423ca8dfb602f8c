//! Seventh-chord transformations, cadential sets and lead-sheet analysis.
//!
//! The crate is organised bottom-up:
//!
//! * [`pitch`]: pitch classes, rooted chords, chord qualities;
//! * [`transform`]: the generators R42, L13, L42, P42, the triadic relative
//!   and transpositions, words over them, diagram checks and path search;
//! * [`cadence`]: scales, degree chords, minimal cadential sets and the
//!   linked pairs between them;
//! * [`modulation`]: pivot chords, quantized modulations, P42 bridges;
//! * [`chordsym`]: chord symbols and the lead-sheet format;
//! * [`analyze`]: key inference and cadence/modulation reports;
//! * [`dot`]: Graphviz export.
//!
//! ```
//! use tetrad::pitch::RootedChord;
//! use tetrad::transform::Generator;
//!
//! let fmaj7: RootedChord = "Fmaj7".parse::<tetrad::chordsym::ParsedChord>()
//!     .map(|p| tetrad::chordsym::realize_chord(&p).unwrap().0)
//!     .unwrap();
//! assert_eq!(Generator::R42.apply(&fmaj7).unwrap().symbol(), "Dm7");
//! ```

pub mod analyze;
pub mod cadence;
pub mod chordsym;
pub mod corpus;
pub mod dot;
pub mod modulation;
pub mod pitch;
pub mod transform;

pub use cadence::{Arity, CadentialSet, DegreeSet, Region, ScaleDegree, Tonality};
pub use pitch::{ChordQuality, PitchClass, RootedChord};
pub use transform::{Generator, TransformationWord};
