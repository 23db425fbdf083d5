//! Finite atomic orthomodular lattices, the poset of their Boolean
//! subalgebras, and reconstruction of the lattice from that poset alone.
//!
//! The pipeline is
//!
//! 1. build a lattice ([`builders`], [`greechie`], or parse a [`format::oml`] file),
//! 2. enumerate its Boolean subalgebras ([`bsa::enumerate_bsas`]),
//! 3. strip everything but the cover relation ([`poset::anonymize`]),
//! 4. rebuild an ortholattice from the covers ([`reconstruct::assemble`]),
//! 5. compare with the original ([`iso::are_isomorphic`]).

pub mod bsa;
pub mod builders;
pub mod format;
pub mod greechie;
pub mod harness;
pub mod iso;
pub mod lattice;
pub mod poset;
pub mod reconstruct;
pub mod verify;

pub use bsa::{enumerate_bsas, BsaPoset, EnumerateOptions, OrthoPartition};
pub use iso::{are_isomorphic, check_reconstruction, fingerprint, IsoResult, RoundTripOptions, RoundTripReport, Verdict};
pub use lattice::{Elem, Lattice, LatticeError};
pub use poset::{anonymize, AbstractPoset, NodeId};
pub use reconstruct::{assemble, reconstruct, ReconstructError, ReconstructOptions, Reconstruction};
pub use verify::{verify, VerifyReport};
