//! Finite-field coding engine for quantum codes with locality.
//!
//! The pipeline: arithmetic in GF(p^m) ([`gf`]), exact matrices and linear
//! codes over it ([`fmatrix`], [`code`]), matrix-product codes with
//! Gram-based dual-containment certificates ([`mpc`]), (r, delta) recovery
//! structures ([`locality`]), and the derived quantum parameters plus the
//! named optimal families ([`qlrc`]).

pub mod code;
pub mod error;
pub mod fmatrix;
pub mod gf;
pub mod locality;
pub mod mpc;
pub mod qlrc;

pub use code::{
    grs, hermitian_dc_grs, rs, rs_enlarge, CertKind, CodeDescriptor, DistanceCertificate,
    DistanceMethod, DistanceValue, DualKind, LinearCode, DEFAULT_BUDGET,
};
pub use error::{Error, Result};
pub use fmatrix::{FMatrix, MatrixDescriptor, MonomialWitness};
pub use gf::{make_field, El, Field, FieldDescriptor};
pub use locality::{
    block_recovery, column_recovery, singleton_defect, singleton_defect_eq1, verify_ers,
    RecoveryOrigin, RecoveryStructure,
};
pub use mpc::{
    check_dual_containing, euclidean_selforth_matrix, ext_mpc_code, hermitian_ordered_matrix,
    hermitian_selforth_matrix, mpc_code, mpc_distance, mpc_dual, mpc_dual_distance_bound,
    twisted_beta, vandermonde, GramReport, GramReportDescriptor, MpcSpec, MpcSpecDescriptor,
    SelforthVariant, ZetaFailure,
};
pub use qlrc::{
    build_family, field_from_order, qlrc_from_code, quantum_defect, reproduce_table,
    DeltaCondition, DualWitness, FamilyBuild, FamilyClaims, FamilyRequest, LocalityClaim,
    QlrcReport, TableRow, VerificationLevel, FULL_VERIFY_MAX_LEN,
};
