//! Virasoro minimal-model characters, RSOS and half-lattice paths, the two
//! weight-preserving bijections between them, and the particle calculus on
//! half-lattice paths.
//!
//! Half-lattice quantities are stored doubled (`T = 2t`, `A = 2â`, positions
//! and heights times two) so that everything is an integer.

pub mod bijections;
pub mod characters;
pub mod error;
pub mod halfpath;
pub mod particles;
pub mod qseries;
pub mod render;
pub mod rsos;
pub mod verify;

pub use bijections::{bij1_forward, bij1_inverse, bij2_forward, bij2_inverse, Bij1Trace, Bij2Trace, Family, Partition};
pub use characters::{bosonic_character, fermionic_character_12, CharacterLabel, ClosedForm};
pub use error::{Error, Result};
pub use halfpath::HalfPath;
pub use particles::{dissect, minimal_path, minimal_weight, sector_gf, Dissection, Sector};
pub use qseries::QSeries;
pub use rsos::RsosPath;
pub use verify::{run_suite, Suite, VerifyOptions, VerifyReport};
