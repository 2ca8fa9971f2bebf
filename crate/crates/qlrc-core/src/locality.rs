//! Extended recovery sets, the two product-code recovery structures, and
//! the classical Singleton-type defect.
//!
//! A coordinate i of a code has an extended recovery set R-bar when the set
//! contains i, is small (RD1: |R-bar| <= r + delta - 1) and the projection
//! of the code onto it still has minimum distance at least delta (RD2), so
//! any delta - 1 erasures inside the set are repairable from the rest of it.
//! Product codes inherit such sets two ways: block translates of a set of a
//! common supercode D, or column translates of a set of the row-space code
//! of A across blocks at a fixed inner position.

use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::mpc::{mpc_code, MpcSpec};

/// Where a recovery structure came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecoveryOrigin {
    Block,
    Column,
    Enlarged,
    Custom,
}

/// A claimed (r, delta) locality: one extended recovery set per coordinate.
/// `verified` flips to true only when every set has passed [`verify_ers`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecoveryStructure {
    r: usize,
    delta: usize,
    origin: RecoveryOrigin,
    sets: Vec<Vec<usize>>,
    verified: bool,
}

impl RecoveryStructure {
    /// An unverified structure from explicit sets; `sets[i]` must contain i.
    pub fn new_custom(r: usize, delta: usize, sets: Vec<Vec<usize>>) -> Result<RecoveryStructure> {
        if r == 0 || delta == 0 || sets.is_empty() {
            return Err(Error::NonPositive);
        }
        for (i, set) in sets.iter().enumerate() {
            if !set.contains(&i) {
                return Err(Error::CoordinateNotInSet { coord: i });
            }
        }
        Ok(RecoveryStructure {
            r,
            delta,
            origin: RecoveryOrigin::Custom,
            sets,
            verified: false,
        })
    }

    /// The one-set structure where every coordinate uses the whole support,
    /// verified immediately (a single distance check covers all of them).
    pub fn whole_support(
        code: &LinearCode,
        r: usize,
        delta: usize,
        budget: u64,
    ) -> Result<RecoveryStructure> {
        let n = code.len();
        let all: Vec<usize> = (0..n).collect();
        let ok = verify_ers(code, &all, 0, r, delta, budget)?;
        Ok(RecoveryStructure {
            r,
            delta,
            origin: RecoveryOrigin::Custom,
            sets: vec![all; n],
            verified: ok,
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn origin(&self) -> RecoveryOrigin {
        self.origin
    }

    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    pub fn set_of(&self, i: usize) -> &[usize] {
        &self.sets[i]
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub(crate) fn with_origin(mut self, origin: RecoveryOrigin) -> RecoveryStructure {
        self.origin = origin;
        self
    }

    /// Re-runs [`verify_ers`] on every coordinate of `code` and records the
    /// outcome in the `verified` flag.
    pub fn verify_against(&mut self, code: &LinearCode, budget: u64) -> Result<bool> {
        if self.sets.len() != code.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} recovery sets for a length-{} code",
                self.sets.len(),
                code.len()
            )));
        }
        let mut ok = true;
        for (i, set) in self.sets.iter().enumerate() {
            if !verify_ers(code, set, i, self.r, self.delta, budget)? {
                ok = false;
                break;
            }
        }
        self.verified = ok;
        Ok(ok)
    }
}

/// Checks RD1 and RD2 for one coordinate: the set is small enough and the
/// projection of the code onto it has minimum distance at least delta.
/// A lower-bound distance certificate is accepted when the bound itself
/// already clears delta.
pub fn verify_ers(
    code: &LinearCode,
    rbar: &[usize],
    i: usize,
    r: usize,
    delta: usize,
    budget: u64,
) -> Result<bool> {
    if code.is_degenerate() {
        return Err(Error::Degenerate);
    }
    if !rbar.contains(&i) {
        return Err(Error::CoordinateNotInSet { coord: i });
    }
    if rbar.len() > r + delta - 1 {
        return Ok(false);
    }
    let projected = code.puncture(rbar)?;
    if projected.dim() == 0 {
        return Ok(false);
    }
    Ok(projected
        .min_distance(budget)
        .guarantees_at_least(delta as u32))
}

/// Pushes a verified structure of a common supercode D into every block of
/// the product: coordinate (j, l) recovers inside block j using D's set
/// for l. Every translated set is re-checked on the product code itself.
pub fn block_recovery(
    spec: &MpcSpec,
    d_code: &LinearCode,
    d_struct: &RecoveryStructure,
    budget: u64,
) -> Result<RecoveryStructure> {
    for c in spec.constituents() {
        if !d_code.contains(c)? {
            return Err(Error::NotSubcode);
        }
    }
    if !d_struct.is_verified() {
        return Err(Error::PreconditionFailed(
            "supercode recovery structure must be verified".to_string(),
        ));
    }
    let m = spec.m();
    if d_struct.len() != m || d_code.len() != m {
        return Err(Error::ShapeMismatch(
            "supercode structure must live on the constituent length".into(),
        ));
    }
    let h = spec.h();
    let mut sets = Vec::with_capacity(m * h);
    for j in 0..h {
        for l in 0..m {
            sets.push(d_struct.set_of(l).iter().map(|&x| j * m + x).collect());
        }
    }
    let mut out = RecoveryStructure::new_custom(d_struct.r(), d_struct.delta(), sets)?
        .with_origin(RecoveryOrigin::Block);
    out.verify_against(&mpc_code(spec), budget)?;
    Ok(out)
}

/// Pushes a verified structure of the row-space code of A across blocks:
/// coordinate (j, l) recovers from the positions (t, l) with t in A's set
/// for j. Every translated set is re-checked on the product code itself.
pub fn column_recovery(
    spec: &MpcSpec,
    a_struct: &RecoveryStructure,
    budget: u64,
) -> Result<RecoveryStructure> {
    if !a_struct.is_verified() {
        return Err(Error::UnverifiedMatrixStructure);
    }
    let (m, h) = (spec.m(), spec.h());
    if a_struct.len() != h {
        return Err(Error::ShapeMismatch(
            "matrix structure must live on the block count".into(),
        ));
    }
    let mut sets = Vec::with_capacity(m * h);
    for j in 0..h {
        for l in 0..m {
            sets.push(a_struct.set_of(j).iter().map(|&t| t * m + l).collect());
        }
    }
    let mut out = RecoveryStructure::new_custom(a_struct.r(), a_struct.delta(), sets)?
        .with_origin(RecoveryOrigin::Column);
    out.verify_against(&mpc_code(spec), budget)?;
    Ok(out)
}

/// n + 1 - d - k - (ceil(k/r) - 1)(delta - 1); zero means the locality
/// Singleton-type bound is met with equality.
pub fn singleton_defect(n: usize, k: usize, d: usize, r: usize, delta: usize) -> Result<i64> {
    if n == 0 || k == 0 || d == 0 || r == 0 || delta == 0 {
        return Err(Error::NonPositive);
    }
    Ok(n as i64 + 1 - d as i64 - k as i64 - (k.div_ceil(r) as i64 - 1) * (delta as i64 - 1))
}

/// The delta = 2 classical variant: n + 2 - d - k - ceil(k/r).
pub fn singleton_defect_eq1(n: usize, k: usize, d: usize, r: usize) -> Result<i64> {
    if n == 0 || k == 0 || d == 0 || r == 0 {
        return Err(Error::NonPositive);
    }
    Ok(n as i64 + 2 - d as i64 - k as i64 - k.div_ceil(r) as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{rs, DEFAULT_BUDGET};
    use crate::fmatrix::FMatrix;
    use crate::gf::make_field;
    use crate::mpc::vandermonde;
    use std::sync::Arc;

    #[test]
    fn ers_worked_examples() {
        let f5 = make_field(5, 1).unwrap();
        let c = rs(&f5, 5, 2).unwrap();
        assert!(verify_ers(&c, &[0, 1, 2], 0, 2, 2, DEFAULT_BUDGET).unwrap());
        // RD1: the set may have at most r + delta - 1 coordinates
        assert!(!verify_ers(&c, &[0, 1, 2, 3], 0, 2, 2, DEFAULT_BUDGET).unwrap());
        // whole support of an MDS code
        let mds = rs(&f5, 5, 3).unwrap();
        assert!(verify_ers(&mds, &[0, 1, 2, 3, 4], 2, 3, 3, DEFAULT_BUDGET).unwrap());
        assert_eq!(
            verify_ers(&c, &[1, 2], 0, 2, 2, DEFAULT_BUDGET).unwrap_err(),
            Error::CoordinateNotInSet { coord: 0 }
        );
    }

    #[test]
    fn ers_rejects_degenerate_codes() {
        let f3 = make_field(3, 1).unwrap();
        let g = FMatrix::from_rows(f3, &[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        let c = LinearCode::code_from_generator(&g).unwrap();
        assert!(c.is_degenerate());
        assert_eq!(
            verify_ers(&c, &[0, 1, 2], 0, 2, 2, DEFAULT_BUDGET).unwrap_err(),
            Error::Degenerate
        );
    }

    fn block_example_spec() -> (MpcSpec, LinearCode) {
        let f5 = make_field(5, 1).unwrap();
        let d = rs(&f5, 5, 3).unwrap();
        let a = vandermonde(&f5, 2, 2).unwrap();
        let spec = MpcSpec::new(vec![d.clone(), d.clone()], a, None).unwrap();
        (spec, d)
    }

    #[test]
    fn block_recovery_example() {
        let (spec, d) = block_example_spec();
        let d_struct = RecoveryStructure::whole_support(&d, 3, 3, DEFAULT_BUDGET).unwrap();
        assert!(d_struct.is_verified());
        let st = block_recovery(&spec, &d, &d_struct, DEFAULT_BUDGET).unwrap();
        assert!(st.is_verified());
        assert_eq!(st.origin(), RecoveryOrigin::Block);
        assert_eq!(st.len(), 10);
        assert_eq!(st.set_of(7), &[5, 6, 7, 8, 9]);
        // each block projects onto D itself
        let c = mpc_code(&spec);
        for j in 0..2 {
            let blk: Vec<usize> = (j * 5..(j + 1) * 5).collect();
            assert_eq!(c.puncture(&blk).unwrap(), d);
        }
        // distinct sets partition the support
        let mut seen: Vec<usize> = st.sets().concat();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen, (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn block_recovery_requires_subcodes_and_verification() {
        let (spec, d) = block_example_spec();
        let f5 = d.field().clone();
        let unverified =
            RecoveryStructure::new_custom(3, 3, vec![(0..5).collect::<Vec<_>>(); 5]).unwrap();
        assert!(matches!(
            block_recovery(&spec, &d, &unverified, DEFAULT_BUDGET).unwrap_err(),
            Error::PreconditionFailed(_)
        ));
        let small = rs(&f5, 5, 2).unwrap();
        let small_struct = RecoveryStructure::whole_support(&small, 2, 4, DEFAULT_BUDGET).unwrap();
        assert_eq!(
            block_recovery(&spec, &small, &small_struct, DEFAULT_BUDGET).unwrap_err(),
            Error::NotSubcode
        );
    }

    #[test]
    fn single_block_recovery_reduces_to_the_supercode_structure() {
        let f3 = make_field(3, 1).unwrap();
        let d = rs(&f3, 3, 2).unwrap();
        let a = FMatrix::from_rows(f3, &[vec![1]]).unwrap();
        let spec = MpcSpec::new(vec![d.clone()], a, None).unwrap();
        let d_struct = RecoveryStructure::whole_support(&d, 2, 2, DEFAULT_BUDGET).unwrap();
        let st = block_recovery(&spec, &d, &d_struct, DEFAULT_BUDGET).unwrap();
        assert_eq!(st.sets(), d_struct.sets());
        assert!(st.is_verified());
    }

    #[test]
    fn column_recovery_example() {
        let f3 = make_field(3, 1).unwrap();
        let c_rs = rs(&f3, 3, 2).unwrap();
        let a = vandermonde(&f3, 3, 2).unwrap();
        let spec = MpcSpec::new(vec![c_rs.clone(), c_rs.clone()], a.clone(), None).unwrap();
        let a_code = LinearCode::code_from_generator(&a).unwrap();
        let a_struct = RecoveryStructure::whole_support(&a_code, 2, 2, DEFAULT_BUDGET).unwrap();
        assert!(a_struct.is_verified());
        let st = column_recovery(&spec, &a_struct, DEFAULT_BUDGET).unwrap();
        assert!(st.is_verified());
        assert_eq!(st.origin(), RecoveryOrigin::Column);
        assert_eq!(st.set_of(4), &[1, 4, 7]);
        // fixed-position slices project exactly onto the row space of A
        let c = mpc_code(&spec);
        for l in 0..3 {
            let cols: Vec<usize> = (0..3).map(|j| j * 3 + l).collect();
            assert_eq!(c.puncture(&cols).unwrap(), a_code);
        }
        let unverified =
            RecoveryStructure::new_custom(2, 2, vec![(0..3).collect::<Vec<_>>(); 3]).unwrap();
        assert_eq!(
            column_recovery(&spec, &unverified, DEFAULT_BUDGET).unwrap_err(),
            Error::UnverifiedMatrixStructure
        );
    }

    #[test]
    fn defect_worked_examples() {
        assert_eq!(singleton_defect(25, 20, 2, 4, 2).unwrap(), 0);
        assert_eq!(singleton_defect(9, 6, 2, 2, 2).unwrap(), 0);
        assert_eq!(singleton_defect_eq1(9, 6, 2, 2).unwrap(), 0);
        // an MDS code with r = k, delta = 2 meets the classical bound
        assert_eq!(singleton_defect(5, 3, 3, 3, 2).unwrap(), 0);
        assert_eq!(
            singleton_defect(0, 1, 1, 1, 1).unwrap_err(),
            Error::NonPositive
        );
        // with delta = 2 both forms agree
        for (n, k, d, r) in [(25, 20, 2, 4), (9, 6, 2, 2), (12, 8, 3, 4)] {
            assert_eq!(
                singleton_defect(n, k, d, r, 2).unwrap(),
                singleton_defect_eq1(n, k, d, r).unwrap()
            );
        }
    }

    #[test]
    fn custom_structure_validation_and_serde() {
        assert_eq!(
            RecoveryStructure::new_custom(2, 2, vec![vec![1, 2]]).unwrap_err(),
            Error::CoordinateNotInSet { coord: 0 }
        );
        let st = RecoveryStructure::new_custom(2, 2, vec![vec![0, 1], vec![0, 1]]).unwrap();
        assert!(!st.is_verified());
        let json = serde_json::to_string(&st).unwrap();
        let back: RecoveryStructure = serde_json::from_str(&json).unwrap();
        assert_eq!(back, st);
    }

    #[test]
    fn verification_is_idempotent() {
        let (spec, d) = block_example_spec();
        let d_struct = RecoveryStructure::whole_support(&d, 3, 3, DEFAULT_BUDGET).unwrap();
        let mut st = block_recovery(&spec, &d, &d_struct, DEFAULT_BUDGET).unwrap();
        let c = mpc_code(&spec);
        for _ in 0..2 {
            assert!(st.verify_against(&c, DEFAULT_BUDGET).unwrap());
        }
    }

    #[test]
    fn simultaneous_structures_on_one_product() {
        // nested RS constituents with an NSC matrix carry both structures
        let f5 = make_field(5, 1).unwrap();
        let d = rs(&f5, 5, 3).unwrap();
        let c2 = rs(&f5, 5, 2).unwrap();
        let a = vandermonde(&f5, 3, 2).unwrap();
        let spec = MpcSpec::new(vec![d.clone(), c2], a.clone(), None).unwrap();
        let d_struct = RecoveryStructure::whole_support(&d, 3, 3, DEFAULT_BUDGET).unwrap();
        let blocks = block_recovery(&spec, &d, &d_struct, DEFAULT_BUDGET).unwrap();
        assert!(blocks.is_verified());
        let a_code = LinearCode::code_from_generator(&a).unwrap();
        let a_struct = RecoveryStructure::whole_support(&a_code, 2, 2, DEFAULT_BUDGET).unwrap();
        let cols = column_recovery(&spec, &a_struct, DEFAULT_BUDGET).unwrap();
        assert!(cols.is_verified());
    }

    #[test]
    fn whole_support_structure_arc_field_is_shared() {
        let f5: Arc<_> = make_field(5, 1).unwrap();
        let c = rs(&f5, 5, 2).unwrap();
        let st = RecoveryStructure::whole_support(&c, 4, 2, DEFAULT_BUDGET).unwrap();
        assert!(st.is_verified());
        assert_eq!(st.len(), 5);
    }
}
