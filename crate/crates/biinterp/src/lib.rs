//! Brute-force verification of first-order definability constructions in
//! SL2 and SL3 over finite products of residue rings.
//!
//! The crate implements, at exhaustive desk scale, the standard toolkit for
//! encoding a commutative ring inside its special linear groups: unipotent
//! and torus generators, centralizer-defined subgroups, a sorted
//! first-order formula language evaluated over finite carriers, the induced
//! ring structure on the unipotent subgroup, and the reconstruction map
//! sending a matrix to its entrywise unipotent encoding. Every construction
//! is checked against an independent brute-force oracle, including negative
//! controls on rings where the identities genuinely break.
//!
//! ## Modules
//!
//! - [`ring`] — products of residue rings `Z/p^k`, square-difference shift
//!   sets, residue-set membership.
//! - [`sl2`] — SL2 and its central quotients with canonical coset
//!   representatives.
//! - [`formula`] — lexer, parser, printer and evaluator for a sorted group
//!   language with parameters.
//! - [`interp`] — the ring interpreted inside the group: definable
//!   subgroups, star multiplication, entrywise encodings, round trips.
//! - [`sl3`] — the rank-two picture: root subgroups of SL3, SL2 block
//!   embeddings, bounded elementary width, the 3x3 encoding.
//! - [`suites`], [`report`], [`config`] — the batch suite runner behind the
//!   `verifier` binary.
//!
//! ## Examples
//!
//! One runnable example per major capability lives in `examples/`:
//!
//! ```text
//! cargo run -p biinterp --example ring_decomposition   # shift sets, witnesses
//! cargo run -p biinterp --example definable_subgroups  # H, U, V, W vs oracles
//! cargo run -p biinterp --example formula_queries      # parse / eval / witness
//! cargo run -p biinterp --example ring_inside_group    # star multiplication
//! cargo run -p biinterp --example group_reconstruction # encodings, round trips
//! cargo run -p biinterp --example chevalley_sl3        # SL3 roots and width
//! cargo run -p biinterp --example suite_run            # programmatic suite run
//! ```

pub mod config;
pub mod formula;
pub mod interp;
pub mod report;
pub mod ring;
pub mod sl2;
pub mod sl3;
pub mod suites;

pub use config::SuiteConfig;
pub use ring::{LocalRing, ProductRing, RingElem, ShiftSet};
pub use sl2::{GroupCtx, GroupElem, Mat2, QuotientKind};
pub use suites::run;
