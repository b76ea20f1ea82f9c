//! Exact Bruhat order computations in Weyl groups of types A and B.
//!
//! The crate provides:
//! - signed and unsigned permutation arithmetic for the groups `A_n`
//!   and `B_n` ([`group`]);
//! - Bruhat order comparisons, covering relations, interval
//!   materialization, maximal chains and their deletion labels
//!   ([`order`]);
//! - poset isomorphism search, automorphism enumeration and complete
//!   canonical certificates for intervals ([`iso`]);
//! - an inductive interval invariant built from coatom subinterval
//!   classes, with a matcher that both decides isomorphism and produces
//!   the explicit vertex bijection ([`invariant`]);
//! - a classifier that enumerates all intervals of a given length in a
//!   group and deduplicates them into representative stores
//!   ([`classify`]);
//! - parsing and emission of interval lists in reduced-word pair
//!   notation, plus store persistence ([`appendix`], [`store_io`]).

pub mod appendix;
pub mod classify;
pub mod group;
pub mod invariant;
pub mod iso;
pub mod order;
pub mod store_io;

pub use group::{multiply, Element, Family, Group, GroupError, Reflection, Side, Word};
pub use invariant::{ClassResult, MatchOutcome, PhiEntry, Profile, StoreChain, StoreError};
pub use iso::{automorphisms, certificate, find_isomorphism, Certificate, PosetIso};
pub use order::{
    bruhat_edges, chain_label, coatoms, covers, dual, increasing_chain, interval, leq,
    maximal_chains, Chain, ChainLabel, Interval, IntervalKey, OrderError,
};
