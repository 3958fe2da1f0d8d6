//! Finite-lattice duality toolkit.
//!
//! The crate computes the dual digraph of a finite bounded lattice
//! (vertices are the maximal disjoint filter-ideal pairs, edges record
//! non-containment between a filter generator and an ideal generator),
//! checks the TiRS axioms that characterize such digraphs, rebuilds a
//! lattice from a digraph through its stable partial maps, and decides
//! join- and meet-semidistributivity by three independent methods that
//! cross-check one another.

pub mod duality;
pub mod embed;
pub mod error;
pub mod genlat;
pub mod ideals;
pub mod io;
pub mod lattice;
pub mod oracle;
pub mod reconstruct;
pub mod semidist;
pub mod subset;
pub mod tirs;

pub use duality::{
    birkhoff_poset, dual_digraph, enumerate_mdfips, extend_to_maximal, BirkhoffPoset, DualDigraph,
    Mdfip,
};
pub use embed::{
    find_bounded_sublattice_embedding, find_sublattice_embedding, is_distributive,
    lattice_isomorphic, verify_sublattice_embedding,
};
pub use error::{Error, Result};
pub use genlat::{fixture, GeneratorSpec, FIXTURE_NAMES};
pub use ideals::{filter_of_ideal_lattice, ideal_lattice, FiltIdlLattice, SubsetLattice};
pub use lattice::{Lattice, MAX_N};
pub use reconstruct::{
    check_doubly_disconnected, check_first_roundtrip, check_second_roundtrip, check_separation,
    enumerate_mpms, mpm_lattice, MpmLattice, StablePair,
};
pub use semidist::{
    classify_jsd_failure, FailureClassification, SdMethod, SdProperty, SdReport, SdWitness,
};
pub use subset::Subset;
pub use tirs::{check_tirs, Digraph, TirsReport};
