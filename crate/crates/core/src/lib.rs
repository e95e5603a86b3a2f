//! Desk-scale checks of the falsification by fellow traveler property (FFTP),
//! almost convexity and van Kampen filling bounds on finitely generated groups.
//!
//! Everything is built on an exact ball of the Cayley graph ([`cayley::Ball`]) over a
//! pluggable group backend ([`group::GroupSpec`]).

pub mod alphabet;
pub mod bounds;
pub mod cayley;
pub mod convexity;
pub mod error;
pub mod fellow;
pub mod fftp;
pub mod filling;
pub mod group;

pub use alphabet::{GeneratorAlphabet, Letter, Word};
pub use cayley::{path_point, Ball, PathTrace};
pub use error::{Error, Result};
pub use group::{GroupElement, GroupSpec};
