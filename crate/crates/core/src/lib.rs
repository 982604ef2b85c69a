//! Quandle counting invariants of oriented virtual links.
//!
//! Links are read as signed Gauss codes ([`gauss`]), turned into knot
//! quandle presentations ([`wirtinger`]) and colored by finite quandles
//! ([`quandle`], [`homcount`]). For two-component links the counts against
//! the trivial orbit quandles `X_n` determine the virtual linking numbers up
//! to divisibility, and for classical links they recover `|lk|`
//! ([`linking`]). [`moves`] generates Reidemeister-equivalent diagrams for
//! invariance testing.

pub mod corpus;
pub mod gauss;
pub mod homcount;
pub mod linking;
pub mod moves;
pub mod quandle;
pub mod wirtinger;

pub use gauss::{arcs, ArcTable, GaussError, Passage, Role, Sign, SignedGaussCode};
pub use homcount::{
    count, count_decomposition_check, count_oracle, count_propagate, ColoringReport, CountOptions,
    HomError, Method,
};
pub use linking::{
    classify_splitness_evidence, linking_profile, recover_abs_linking, virtual_linking_numbers,
    xn_count_closed_form, xn_counts, CountClass, Evidence, LinkingError, LinkingProfile,
    RecoveryResult, SweepMethod,
};
pub use quandle::{
    is_connected, is_trivial_orbit_quandle, make_dihedral, make_trivial, make_xn, orbits,
    verify_quandle, AxiomViolation, OperationMatrix, OrbitDecomposition, Quandle, QuandleError,
};
pub use wirtinger::{presentation, CrossingRelation, KnotQuandlePresentation};
