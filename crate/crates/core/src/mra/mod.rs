//! Centered bases and the wavelet construction between two nested ones.

pub mod centered;
pub mod scaffold;

pub use centered::{
    knot_label, spline_basis, verify_centered, verify_orth_condition, CenteredBasis, CenteredReport, KnotGroup,
    OrthConditionReport,
};
pub use scaffold::{
    build_scaffold, build_wavelets, check_wavelets, parseval_defect, DimensionReport, KnotDims, KnotScaffold,
    WaveletCheck, WaveletScaffold,
};
