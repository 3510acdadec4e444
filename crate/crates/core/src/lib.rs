//! Construction and verification of string C-groups on permutation
//! representation graphs.
//!
//! The crate builds groups from edge-labeled graphs, decides the
//! intersection property by two independent methods, constructs fracture
//! graphs, generates the candidate graph families for ranks close to the
//! degree, and enumerates string C-group representations of symmetric
//! groups up to automorphism-conjugacy.

pub mod aut6;
pub mod cpr;
pub mod fracture;
pub mod error;
pub mod families;
pub mod group;
pub mod perm;
pub mod sggi;
pub mod verifier;

pub use cpr::{CprGraph, Edge};
pub use fracture::FractureGraph;
pub use error::{Error, Result};
pub use families::{build_family, build_family_sggi, expected_verdict, FamilyId, FamilyTag, FamilyVerdict, RankClass};
pub use group::{factorial, orbits, PermGroup, StabilizerChain};
pub use perm::Permutation;
pub use verifier::{are_isomorphic, fingerprint, intersection_property_full, is_string_c_group, verify_theorem, Fingerprint, TheoremReport, Verdict, Witness};
pub use sggi::{Diagram, SchlafliType, Sggi};
