//! Exact arithmetic for the numerical shadow of stability conditions on
//! coherent systems over a genus-4 curve, degenerating to the boundary of
//! the stability manifold.
//!
//! Everything is computed over `Q` with `i128` rational arithmetic: Euler
//! pairings on the rank-degree-sections lattice, piecewise-affine
//! Brill-Noether bounds, central charges and slope comparisons, quadratic
//! support forms with machine-checkable dominance certificates, bounded
//! wall-and-chamber scans, and the S-equivalence collapse at the degenerate
//! boundary point.  No floating point enters any decision; floats appear
//! only as optional companion columns in plot output.
//!
//! Module map:
//! - [`rat`]: the rational scalar type and its serialization.
//! - [`klattice`]: lattice classes, Euler pairing, kernel quotient.
//! - [`brill_noether`]: validated piecewise bounds and exact quadratic
//!   dominance decisions.
//! - [`charge`]: central charges, slope classification and comparison.
//! - [`support`]: quadratic support forms, certificates, parameter search,
//!   phase-one support checks.
//! - [`walls`]: destabilizer enumeration, wall loci, chamber reports,
//!   bounded splitting search, moduli boundary arithmetic.
//! - [`degeneration`]: descended charges and S-equivalence at the boundary.

pub mod brill_noether;
pub mod charge;
pub mod degeneration;
pub mod klattice;
pub mod rat;
pub mod support;
pub mod walls;

pub use brill_noether::{
    emit_plot_data, general_bound, genus4_bound, quadratic_dominates, BoundError, Dominance,
    PiecewiseBound, Quadratic,
};
pub use charge::{
    central_charge, compare_slopes, heart_slope, is_admissible, mu_slope, ChargeError,
    ChargeParams, ChargeValue, MuSlope, SlopeClass, SlopeOrdering,
};
pub use degeneration::{
    degenerate_point, descended_charge, s_equivalent, sequiv_classes, weak_classify,
    weak_classify_at, WeakClass,
};
pub use klattice::{
    euler_matrix, euler_pairing, project_mod_kernel, ClassVector, Genus, LatticeError,
    QuotientClass, GENUS4_KERNEL,
};
pub use rat::{ParseRatError, Rat};
pub use support::{
    dominance_certificate, find_params, genus4_qform, kernel_negative, phase1_support_check,
    qform, DominanceCertificate, Phase1Verdict, QuadFormParams, SupportError,
};
pub use walls::{
    chamber_report, chamber_scan, enumerate_candidates, hn_candidates, verify_moduli_arithmetic,
    wall_locus, ChamberReport, GapEntry, ModuliReport, ModuliRow, SearchBounds, WallKind,
    WallReport, WallsError,
};
