//! Linear codes held as reduced generator matrices.
//!
//! A [`LinearCode`] stores the RREF basis of its row space, so two codes are
//! equal exactly when they are equal as sets of codewords. Duals exist for
//! both the Euclidean and the Hermitian inner product, and minimum distances
//! come with an explicit certificate: `Exact` only when an exhaustive
//! enumeration, a MacWilliams transform, or a structural formula (MDS,
//! nested product) pins the value down, `LowerBound` otherwise.

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fmatrix::FMatrix;
use crate::gf::{El, Field, FieldDescriptor};

/// Default enumeration budget: number of words an exhaustive pass may visit.
pub const DEFAULT_BUDGET: u64 = 1 << 22;

/// Which inner product a dual or containment check uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DualKind {
    Euclidean,
    Hermitian,
}

impl fmt::Display for DualKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DualKind::Euclidean => write!(f, "euclidean"),
            DualKind::Hermitian => write!(f, "hermitian"),
        }
    }
}

/// Minimum distance, with the zero code's `Unbounded` comparing above every
/// finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DistanceValue {
    Finite(u32),
    Unbounded,
}

impl DistanceValue {
    pub fn at_least(&self, d: u32) -> bool {
        match self {
            DistanceValue::Finite(v) => *v >= d,
            DistanceValue::Unbounded => true,
        }
    }

    pub fn finite(&self) -> Option<u32> {
        match self {
            DistanceValue::Finite(v) => Some(*v),
            DistanceValue::Unbounded => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertKind {
    Exact,
    LowerBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceMethod {
    Enumeration,
    NestedFormula,
    Mds,
    BoundTheorem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceCertificate {
    pub value: DistanceValue,
    pub kind: CertKind,
    pub method: DistanceMethod,
}

impl DistanceCertificate {
    pub fn exact(value: DistanceValue, method: DistanceMethod) -> Self {
        DistanceCertificate {
            value,
            kind: CertKind::Exact,
            method,
        }
    }

    /// True when the certificate guarantees distance >= d (a lower bound is
    /// enough; RD2-style conditions only need one direction).
    pub fn guarantees_at_least(&self, d: u32) -> bool {
        self.value.at_least(d)
    }
}

/// A q-ary linear code of length n and dimension k.
#[derive(Clone)]
pub struct LinearCode {
    field: Arc<Field>,
    n: usize,
    k: usize,
    /// RREF basis of the row space; k rows (possibly zero).
    gen: FMatrix,
    degenerate: bool,
    /// Set when the code was built as rs(m, k); enables enlargement.
    rs_of: Option<(usize, usize)>,
    /// Structural MDS knowledge (d = n - k + 1 without enumeration).
    mds: bool,
    distance: OnceLock<DistanceCertificate>,
}

/// Serializable code form; generator entries are enumeration indices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub field: FieldDescriptor,
    pub n: usize,
    pub k: usize,
    pub generator: Vec<u32>,
    pub distance: Option<DistanceCertificate>,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.gen == other.gen
    }
}

impl Eq for LinearCode {}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] code over {:?}", self.n, self.k, self.field)
    }
}

fn has_zero_column(gen: &FMatrix, n: usize) -> bool {
    (0..n).any(|j| (0..gen.rows()).all(|i| gen.at(i, j) == 0))
}

impl LinearCode {
    fn from_basis(field: Arc<Field>, n: usize, gen: FMatrix) -> LinearCode {
        let k = gen.rows();
        let degenerate = has_zero_column(&gen, n);
        LinearCode {
            field,
            n,
            k,
            gen,
            degenerate,
            rs_of: None,
            mds: false,
            distance: OnceLock::new(),
        }
    }

    /// Builds the code spanned by the rows of `g` (need not be independent).
    pub fn code_from_generator(g: &FMatrix) -> Result<LinearCode> {
        if g.rows() == 0 || g.entries().iter().all(|&e| e == 0) {
            return Err(Error::ZeroMatrix);
        }
        let (reduced, _, _) = g.rref();
        Ok(LinearCode::from_basis(g.field().clone(), g.cols(), reduced))
    }

    /// The full space F^n.
    pub fn full_code(field: Arc<Field>, n: usize) -> LinearCode {
        let gen = FMatrix::identity(field.clone(), n);
        let mut c = LinearCode::from_basis(field, n, gen);
        c.mds = true;
        c
    }

    /// The zero code {0} of length n; its distance is `Unbounded`.
    pub fn zero_code(field: Arc<Field>, n: usize) -> LinearCode {
        let gen = FMatrix::zero(field.clone(), 0, n);
        LinearCode::from_basis(field, n, gen)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.k == 0
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> &FMatrix {
        &self.gen
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn is_mds(&self) -> bool {
        self.mds
    }

    pub fn rs_parameters(&self) -> Option<(usize, usize)> {
        self.rs_of
    }

    // -- membership and containment -----------------------------------------

    pub fn contains_vec(&self, v: &[El]) -> bool {
        if v.len() != self.n {
            return false;
        }
        let f = &self.field;
        let mut v = v.to_vec();
        // reduce against the RREF basis; pivot of row i is its first nonzero
        for i in 0..self.k {
            let row = self.gen.row(i);
            let pivot = row.iter().position(|&x| x != 0).expect("basis row nonzero");
            if v[pivot] != 0 {
                let factor = v[pivot];
                for (vj, &rj) in v.iter_mut().zip(row) {
                    *vj = f.sub(*vj, f.mul(factor, rj));
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn contains(&self, other: &LinearCode) -> Result<bool> {
        if self.n != other.n || self.field != other.field {
            return Err(Error::ShapeMismatch(
                "containment needs matching field and length".into(),
            ));
        }
        Ok((0..other.k).all(|i| self.contains_vec(other.gen.row(i))))
    }

    // -- duals ---------------------------------------------------------------

    pub fn dual(&self, kind: DualKind) -> Result<LinearCode> {
        let basis_src = match kind {
            DualKind::Euclidean => self.gen.clone(),
            DualKind::Hermitian => self.gen.frobenius()?,
        };
        let mut out = if self.k == 0 {
            LinearCode::full_code(self.field.clone(), self.n)
        } else {
            let ns = basis_src.nullspace();
            if ns.rows() == 0 {
                LinearCode::zero_code(self.field.clone(), self.n)
            } else {
                LinearCode::code_from_generator(&ns)?
            }
        };
        // the dual of an MDS code is MDS
        if self.mds && out.k > 0 {
            out.mds = true;
        }
        Ok(out)
    }

    // -- puncturing ------------------------------------------------------------

    /// Restriction to the given coordinate set (sorted, deduplicated).
    pub fn puncture(&self, coords: &[usize]) -> Result<LinearCode> {
        if coords.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut cols: Vec<usize> = coords.to_vec();
        cols.sort_unstable();
        cols.dedup();
        if let Some(&bad) = cols.iter().find(|&&c| c >= self.n) {
            return Err(Error::OutOfRange {
                what: "coordinate",
                got: bad as i64,
                lo: 0,
                hi: self.n as i64 - 1,
            });
        }
        if self.k == 0 {
            return Ok(LinearCode::zero_code(self.field.clone(), cols.len()));
        }
        let rows: Vec<Vec<El>> = (0..self.k)
            .map(|i| cols.iter().map(|&c| self.gen.at(i, c)).collect())
            .collect();
        let m = FMatrix::from_rows(self.field.clone(), &rows)?;
        if m.entries().iter().all(|&e| e == 0) {
            return Ok(LinearCode::zero_code(self.field.clone(), cols.len()));
        }
        LinearCode::code_from_generator(&m)
    }

    // -- codeword enumeration ----------------------------------------------------

    /// Number of codewords q^k, saturating at u64::MAX.
    pub fn codeword_count(&self) -> u64 {
        let q = self.field.q() as u64;
        let mut acc: u64 = 1;
        for _ in 0..self.k {
            acc = acc.saturating_mul(q);
        }
        acc
    }

    /// Visits every codeword (the zero word included) exactly once.
    /// Cost is O(q^k * n); callers gate on `codeword_count`.
    pub fn for_each_codeword(&self, mut visit: impl FnMut(&[El])) {
        let f = &self.field;
        let q = f.q();
        let (n, k) = (self.n, self.k);
        if k == 0 {
            visit(&vec![0; n]);
            return;
        }
        // scaled[i][c] = elements()[c] * basis_row_i, so an odometer step
        // updates the running word in O(n)
        let scaled: Vec<Vec<Vec<El>>> = (0..k)
            .map(|i| {
                f.elements()
                    .iter()
                    .map(|&c| self.gen.row(i).iter().map(|&x| f.mul(c, x)).collect())
                    .collect()
            })
            .collect();
        let mut digits = vec![0usize; k];
        let mut word = vec![0 as El; n];
        loop {
            visit(&word);
            let mut pos = 0;
            loop {
                if pos == k {
                    return;
                }
                let old = digits[pos];
                let new = if old + 1 == q { 0 } else { old + 1 };
                digits[pos] = new;
                let (sub, add) = (&scaled[pos][old], &scaled[pos][new]);
                for ((w, &s), &a) in word.iter_mut().zip(sub).zip(add) {
                    *w = f.add(f.sub(*w, s), a);
                }
                if new != 0 {
                    break;
                }
                pos += 1;
            }
        }
    }

    /// Weight histogram A_0..A_n by full enumeration.
    pub fn weight_histogram(&self) -> Vec<u64> {
        let mut hist = vec![0u64; self.n + 1];
        self.for_each_codeword(|w| {
            let wt = w.iter().filter(|&&x| x != 0).count();
            hist[wt] += 1;
        });
        hist
    }

    // -- minimum distance ----------------------------------------------------------

    /// Installs an externally derived exact certificate (structural formulas
    /// from product constructions). First writer wins; later exact results
    /// agree by correctness.
    pub(crate) fn set_distance_hint(&self, cert: DistanceCertificate) {
        debug_assert_eq!(cert.kind, CertKind::Exact);
        let _ = self.distance.set(cert);
    }

    /// Certified minimum distance. Exact whenever the code or its dual fits
    /// in `budget` enumerated words or a structural formula applies;
    /// otherwise the trivial lower bound 1.
    pub fn min_distance(&self, budget: u64) -> DistanceCertificate {
        if let Some(c) = self.distance.get() {
            return *c;
        }
        let cert = self.compute_distance(budget);
        if cert.kind == CertKind::Exact {
            let _ = self.distance.set(cert);
        }
        cert
    }

    fn compute_distance(&self, budget: u64) -> DistanceCertificate {
        if self.k == 0 {
            return DistanceCertificate::exact(
                DistanceValue::Unbounded,
                DistanceMethod::Enumeration,
            );
        }
        if self.mds {
            return DistanceCertificate::exact(
                DistanceValue::Finite((self.n - self.k + 1) as u32),
                DistanceMethod::Mds,
            );
        }
        if self.codeword_count() <= budget {
            let mut best = (self.n + 1) as u32;
            self.for_each_codeword(|w| {
                let wt = w.iter().filter(|&&x| x != 0).count() as u32;
                if wt > 0 && wt < best {
                    best = wt;
                }
            });
            return DistanceCertificate::exact(
                DistanceValue::Finite(best),
                DistanceMethod::Enumeration,
            );
        }
        let dual_count = {
            let q = self.field.q() as u64;
            let mut acc: u64 = 1;
            for _ in 0..(self.n - self.k) {
                acc = acc.saturating_mul(q);
            }
            acc
        };
        if dual_count <= budget {
            if let Some(d) = self.macwilliams_distance() {
                return DistanceCertificate::exact(
                    DistanceValue::Finite(d),
                    DistanceMethod::Enumeration,
                );
            }
        }
        DistanceCertificate {
            value: DistanceValue::Finite(1),
            kind: CertKind::LowerBound,
            method: DistanceMethod::BoundTheorem,
        }
    }

    /// Recovers the weight distribution of the code from its (smaller) dual
    /// via the MacWilliams identity and reports the first nonzero weight.
    fn macwilliams_distance(&self) -> Option<u32> {
        let dual = self.dual(DualKind::Euclidean).ok()?;
        let b = dual.weight_histogram();
        let n = self.n;
        let q = BigInt::from(self.field.q());
        let qm1 = BigInt::from(self.field.q() - 1);
        let size_dual = num_traits::pow::pow(q, dual.k);
        for j in 1..=n {
            let mut votes = BigInt::zero();
            for (i, &bi) in b.iter().enumerate() {
                if bi == 0 {
                    continue;
                }
                let mut kraw = BigInt::zero();
                for l in 0..=i.min(j) {
                    if j - l > n - i {
                        continue;
                    }
                    let term = BigInt::from(binomial(i, l))
                        * BigInt::from(binomial(n - i, j - l))
                        * num_traits::pow::pow(qm1.clone(), j - l);
                    if l % 2 == 0 {
                        kraw += term;
                    } else {
                        kraw -= term;
                    }
                }
                votes += BigInt::from(bi) * kraw;
            }
            debug_assert!(!votes.is_negative());
            debug_assert!((votes.clone() % &size_dual).is_zero());
            if !(votes / &size_dual).is_zero() {
                return Some(j as u32);
            }
        }
        None
    }

    // -- serialization ---------------------------------------------------------------

    pub fn descriptor(&self) -> CodeDescriptor {
        CodeDescriptor {
            field: self.field.descriptor(),
            n: self.n,
            k: self.k,
            generator: self
                .gen
                .entries()
                .iter()
                .map(|&e| self.field.index_of(e) as u32)
                .collect(),
            distance: self.distance.get().copied().or_else(|| {
                self.mds.then(|| {
                    DistanceCertificate::exact(
                        DistanceValue::Finite((self.n - self.k + 1) as u32),
                        DistanceMethod::Mds,
                    )
                })
            }),
        }
    }

    pub fn from_descriptor(d: &CodeDescriptor) -> Result<LinearCode> {
        let field = d.field.realize()?;
        if d.k == 0 {
            return Ok(LinearCode::zero_code(field, d.n));
        }
        let mut entries = Vec::with_capacity(d.generator.len());
        for &idx in &d.generator {
            entries.push(field.element_at(idx as usize)?);
        }
        let g = FMatrix::new(field, d.k, d.n, entries)?;
        let c = LinearCode::code_from_generator(&g)?;
        if c.dim() != d.k {
            return Err(Error::NotFullRank);
        }
        Ok(c)
    }
}

fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 1..=k.min(n - k) {
        acc = acc * BigUint::from(n - k.min(n - k) + i) / BigUint::from(i);
    }
    acc
}

// ---------------------------------------------------------------------------
// evaluation-code constructors

/// Reed-Solomon code: rows evaluate 1, X, ..., X^(k-1) at the first `m`
/// enumerated field elements.
pub fn rs(field: &Arc<Field>, m: usize, k: usize) -> Result<LinearCode> {
    if m > field.q() {
        return Err(Error::TooLong);
    }
    if m == 0 {
        return Err(Error::NonPositive);
    }
    if k > m {
        return Err(Error::OutOfRange {
            what: "dimension",
            got: k as i64,
            lo: 0,
            hi: m as i64,
        });
    }
    let points = field.elements()[..m].to_vec();
    let mults = vec![1 as El; m];
    let mut c = grs(field, &points, &mults, k)?;
    c.rs_of = Some((m, k));
    Ok(c)
}

/// Generalized Reed-Solomon code on explicit points and column multipliers.
pub fn grs(field: &Arc<Field>, points: &[El], multipliers: &[El], k: usize) -> Result<LinearCode> {
    let m = points.len();
    if m == 0 {
        return Err(Error::NonPositive);
    }
    if multipliers.len() != m {
        return Err(Error::ShapeMismatch(
            "one multiplier per evaluation point".into(),
        ));
    }
    if multipliers.contains(&0) {
        return Err(Error::ZeroMultiplier);
    }
    let mut seen = vec![false; field.q()];
    for &a in points {
        if seen[a as usize] {
            return Err(Error::RepeatedPoint);
        }
        seen[a as usize] = true;
    }
    if k > m {
        return Err(Error::OutOfRange {
            what: "dimension",
            got: k as i64,
            lo: 0,
            hi: m as i64,
        });
    }
    if k == 0 {
        return Ok(LinearCode::zero_code(field.clone(), m));
    }
    let rows: Vec<Vec<El>> = (0..k)
        .map(|e| {
            points
                .iter()
                .zip(multipliers)
                .map(|(&a, &v)| field.mul(v, field.pow(a, e as i64)))
                .collect()
        })
        .collect();
    let g = FMatrix::from_rows(field.clone(), &rows)?;
    let mut c = LinearCode::code_from_generator(&g)?;
    debug_assert_eq!(c.dim(), k);
    c.mds = true;
    Ok(c)
}

/// Extends rs(m, k) with one more evaluation point, giving an
/// [m+1, k, m-k+2] code whose last-coordinate deletion recovers the input.
pub fn rs_enlarge(c: &LinearCode) -> Result<LinearCode> {
    let (m, k) = c.rs_of.ok_or(Error::PreconditionFailed(
        "enlargement is defined for plain evaluation-point codes".into(),
    ))?;
    if m >= c.field.q() {
        return Err(Error::FieldExhausted);
    }
    rs(&c.field, m + 1, k)
}

/// A GRS code over GF(q0^2) on all field elements minus the first `a`
/// nonzero subfield elements, with dimension `k` high enough that the code
/// contains its Hermitian dual. Containment is verified before returning.
pub fn hermitian_dc_grs(q0: u16, a: usize, k: usize) -> Result<LinearCode> {
    let (p, e) = prime_power(q0).ok_or(Error::NotOddPrime(q0 as u64))?;
    if p == 2 {
        return Err(Error::NotOddPrime(q0 as u64));
    }
    let field = crate::gf::make_field(p, 2 * e)?;
    let q0 = q0 as usize;
    if a + 2 > q0 {
        return Err(Error::OutOfRange {
            what: "point deficit",
            got: a as i64,
            lo: 0,
            hi: q0 as i64 - 2,
        });
    }
    let m = q0 * q0 - a;
    let lo = q0 * q0 - q0 + 1;
    if k < lo || k > m {
        return Err(Error::OutOfRange {
            what: "dimension",
            got: k as i64,
            lo: lo as i64,
            hi: m as i64,
        });
    }
    let removed: Vec<El> = field
        .subfield_elements()?
        .into_iter()
        .filter(|&v| v != 0)
        .take(a)
        .collect();
    let points: Vec<El> = field
        .elements()
        .iter()
        .copied()
        .filter(|v| !removed.contains(v))
        .collect();
    debug_assert_eq!(points.len(), m);

    // all-ones multipliers work throughout the verified range; the vanishing
    // polynomial of the removed set and its small powers are the deterministic
    // fallbacks, and every candidate is checked before being accepted
    let mut candidates: Vec<Vec<El>> = vec![vec![1; m]];
    if a > 0 {
        let vanish: Vec<El> = points
            .iter()
            .map(|&x| {
                removed
                    .iter()
                    .fold(1 as El, |acc, &s| field.mul(acc, field.sub(x, s)))
            })
            .collect();
        for t in 1..q0 {
            let powered: Vec<El> = vanish.iter().map(|&v| field.pow(v, t as i64)).collect();
            if powered.iter().all(|&v| v != 0) {
                candidates.push(powered);
            }
        }
    }
    for mults in &candidates {
        let c = grs(&field, &points, mults, k)?;
        let dual = c.dual(DualKind::Hermitian)?;
        if c.contains(&dual)? {
            return Ok(c);
        }
    }
    Err(Error::ConstructionFailed(format!(
        "no multiplier vector gave a Hermitian dual-containing GRS({m}, {k})"
    )))
}

pub(crate) fn prime_power(n: u16) -> Option<(u16, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2u16;
    while (p as u32) * (p as u32) <= n as u32 {
        if n.is_multiple_of(p) {
            let mut x = n;
            let mut e = 0u32;
            while x.is_multiple_of(p) {
                x /= p;
                e += 1;
            }
            return (x == 1).then_some((p, e));
        }
        p += 1;
    }
    Some((n, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;
    use proptest::prelude::*;

    fn f3() -> Arc<Field> {
        make_field(3, 1).unwrap()
    }

    fn f5() -> Arc<Field> {
        make_field(5, 1).unwrap()
    }

    fn f9() -> Arc<Field> {
        make_field(3, 2).unwrap()
    }

    #[test]
    fn generator_basics() {
        let g = FMatrix::from_rows(f3(), &[vec![1, 1, 1], vec![0, 1, 2], vec![0, 1, 1]]).unwrap();
        let c = LinearCode::code_from_generator(&g).unwrap();
        assert_eq!((c.len(), c.dim()), (3, 3));

        let dup = FMatrix::from_rows(f3(), &[vec![1, 2, 0], vec![1, 2, 0]]).unwrap();
        assert_eq!(LinearCode::code_from_generator(&dup).unwrap().dim(), 1);

        let zero = FMatrix::zero(f3(), 2, 3);
        assert_eq!(
            LinearCode::code_from_generator(&zero).unwrap_err(),
            Error::ZeroMatrix
        );
    }

    #[test]
    fn rs_dual_is_complementary_rs() {
        let c1 = rs(&f3(), 3, 1).unwrap();
        let c2 = rs(&f3(), 3, 2).unwrap();
        assert_eq!(c1.dual(DualKind::Euclidean).unwrap(), c2);
        assert_eq!(c2.dual(DualKind::Euclidean).unwrap(), c1);
    }

    #[test]
    fn dual_of_full_space_is_zero() {
        let full = LinearCode::full_code(f3(), 4);
        let z = full.dual(DualKind::Euclidean).unwrap();
        assert_eq!(z.dim(), 0);
        let cert = z.min_distance(DEFAULT_BUDGET);
        assert_eq!(cert.value, DistanceValue::Unbounded);
        assert_eq!(cert.kind, CertKind::Exact);
        assert_eq!(z.dual(DualKind::Euclidean).unwrap(), full);
    }

    #[test]
    fn containment_chain() {
        let c1 = rs(&f3(), 3, 1).unwrap();
        let c2 = rs(&f3(), 3, 2).unwrap();
        assert!(c2.contains(&c2).unwrap());
        assert!(c2.contains(&c1).unwrap());
        assert!(!c1.contains(&c2).unwrap());
    }

    #[test]
    fn puncture_examples() {
        let c = rs(&f5(), 5, 2).unwrap();
        let all: Vec<usize> = (0..5).collect();
        assert_eq!(c.puncture(&all).unwrap(), c);
        let p = c.puncture(&[0, 1, 2]).unwrap();
        assert_eq!((p.len(), p.dim()), (3, 2));
        assert_eq!(
            p.min_distance(DEFAULT_BUDGET).value,
            DistanceValue::Finite(2)
        );
        assert_eq!(c.puncture(&[]).unwrap_err(), Error::EmptySet);
        assert!(matches!(
            c.puncture(&[7]).unwrap_err(),
            Error::OutOfRange { .. }
        ));
    }

    #[test]
    fn distance_certificates() {
        let full = LinearCode::full_code(f3(), 4);
        let cert = full.min_distance(DEFAULT_BUDGET);
        assert_eq!(cert.value, DistanceValue::Finite(1));
        assert_eq!(cert.kind, CertKind::Exact);

        // same code words as rs(3,2) but without the MDS flag: enumeration path
        let g = FMatrix::from_rows(f3(), &[vec![1, 1, 1], vec![0, 1, 2]]).unwrap();
        let c = LinearCode::code_from_generator(&g).unwrap();
        let cert = c.min_distance(DEFAULT_BUDGET);
        assert_eq!(cert.value, DistanceValue::Finite(2));
        assert_eq!(cert.method, DistanceMethod::Enumeration);

        let via_mds = rs(&f3(), 3, 2).unwrap().min_distance(DEFAULT_BUDGET);
        assert_eq!(via_mds.value, DistanceValue::Finite(2));
        assert_eq!(via_mds.method, DistanceMethod::Mds);
    }

    #[test]
    fn macwilliams_path_agrees_with_enumeration() {
        // force the dual-side transform with a tiny budget: 5^4 messages
        // exceed it, 5^1 dual words do not
        let g = FMatrix::from_rows(
            f5(),
            &[
                vec![1, 1, 1, 1, 1],
                vec![0, 1, 2, 3, 4],
                vec![0, 1, 4, 4, 1],
                vec![0, 1, 3, 2, 4],
            ],
        )
        .unwrap();
        let c = LinearCode::code_from_generator(&g).unwrap();
        let low_budget = c.min_distance(10);
        assert_eq!(low_budget.value, DistanceValue::Finite(2));
        assert_eq!(low_budget.kind, CertKind::Exact);
    }

    #[test]
    fn budget_exhaustion_gives_lower_bound() {
        let g = FMatrix::from_rows(f5(), &[vec![1, 0, 2, 1], vec![0, 1, 3, 3]]).unwrap();
        let c = LinearCode::code_from_generator(&g).unwrap();
        let cert = c.min_distance(3);
        assert_eq!(cert.kind, CertKind::LowerBound);
        assert_eq!(cert.value, DistanceValue::Finite(1));
    }

    #[test]
    fn rs_constructors() {
        let c = rs(&f3(), 3, 2).unwrap();
        let expect = FMatrix::from_rows(f3(), &[vec![1, 1, 1], vec![0, 1, 2]]).unwrap();
        assert_eq!(c, LinearCode::code_from_generator(&expect).unwrap());

        assert_eq!(
            rs(&f5(), 5, 3).unwrap().min_distance(DEFAULT_BUDGET).value,
            DistanceValue::Finite(3)
        );
        assert_eq!(rs(&f3(), 4, 1).unwrap_err(), Error::TooLong);

        let pts = f5().elements()[..4].to_vec();
        let ones = vec![1; 4];
        assert_eq!(
            grs(&f5(), &pts, &ones, 2).unwrap(),
            rs(&f5(), 4, 2).unwrap()
        );
        assert_eq!(
            grs(&f5(), &[1, 1], &[1, 1], 1).unwrap_err(),
            Error::RepeatedPoint
        );
        assert_eq!(
            grs(&f5(), &[1, 2], &[1, 0], 1).unwrap_err(),
            Error::ZeroMultiplier
        );
    }

    #[test]
    fn enlargement() {
        let c = rs(&f5(), 4, 2).unwrap();
        let e = rs_enlarge(&c).unwrap();
        assert_eq!((e.len(), e.dim()), (5, 2));
        assert_eq!(
            e.min_distance(DEFAULT_BUDGET).value,
            DistanceValue::Finite(4)
        );
        // deleting the added coordinate recovers the input
        assert_eq!(e.puncture(&[0, 1, 2, 3]).unwrap(), c);

        let rep = rs_enlarge(&rs(&f3(), 2, 1).unwrap()).unwrap();
        assert_eq!(
            rep.min_distance(DEFAULT_BUDGET).value,
            DistanceValue::Finite(3)
        );
        assert_eq!(
            rs_enlarge(&rs(&f3(), 3, 2).unwrap()).unwrap_err(),
            Error::FieldExhausted
        );
    }

    #[test]
    fn hermitian_dc_grs_small_field() {
        for a in [0usize, 1] {
            for k in (9 - 3 + 1)..=(9 - a) {
                let c = hermitian_dc_grs(3, a, k).unwrap();
                assert_eq!((c.len(), c.dim()), (9 - a, k));
                let dual = c.dual(DualKind::Hermitian).unwrap();
                assert!(c.contains(&dual).unwrap());
            }
        }
        assert!(matches!(
            hermitian_dc_grs(3, 0, 6).unwrap_err(),
            Error::OutOfRange { .. }
        ));
        assert_eq!(hermitian_dc_grs(3, 0, 9).unwrap().dim(), 9);
    }

    #[test]
    fn hermitian_dc_grs_gf81() {
        let c = hermitian_dc_grs(9, 1, 74).unwrap();
        assert_eq!((c.len(), c.dim()), (80, 74));
        let dual = c.dual(DualKind::Hermitian).unwrap();
        assert!(c.contains(&dual).unwrap());
    }

    #[test]
    fn degenerate_flag() {
        let g = FMatrix::from_rows(f3(), &[vec![1, 0, 2], vec![2, 0, 1]]).unwrap();
        let c = LinearCode::code_from_generator(&g).unwrap();
        assert!(c.is_degenerate());
        assert!(!rs(&f3(), 3, 2).unwrap().is_degenerate());
    }

    #[test]
    fn descriptor_round_trip() {
        let c = rs(&f9(), 6, 3).unwrap();
        let d = c.descriptor();
        let back = LinearCode::from_descriptor(&d).unwrap();
        assert_eq!(back, c);
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(serde_json::from_str::<CodeDescriptor>(&json).unwrap(), d);
    }

    fn random_code(q_m: (u16, u32), k: usize, n: usize) -> impl Strategy<Value = LinearCode> {
        let f = make_field(q_m.0, q_m.1).unwrap();
        let q = f.q();
        proptest::collection::vec((0..q).prop_map(move |v| v as El), k * n).prop_filter_map(
            "nonzero generator",
            move |entries| {
                let m = FMatrix::new(f.clone(), k, n, entries).ok()?;
                LinearCode::code_from_generator(&m).ok()
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn dual_dimension_and_orthogonality(c in random_code((3, 1), 2, 5)) {
            {
                let kind = DualKind::Euclidean;
                let d = c.dual(kind).unwrap();
                prop_assert_eq!(c.dim() + d.dim(), c.len());
                prop_assert_eq!(d.dual(kind).unwrap(), c.clone());
            }
        }

        #[test]
        fn hermitian_dual_involution(c in random_code((3, 2), 2, 4)) {
            let d = c.dual(DualKind::Hermitian).unwrap();
            prop_assert_eq!(c.dim() + d.dim(), c.len());
            prop_assert_eq!(d.dual(DualKind::Hermitian).unwrap(), c.clone());
            // generator rows are pairwise orthogonal under sum a_j b_j^q0
            let f = c.field().clone();
            let q0 = f.conjugation_base().unwrap() as i64;
            for i in 0..c.dim() {
                for j in 0..d.dim() {
                    let mut acc: El = 0;
                    for t in 0..c.len() {
                        let b = f.pow(d.generator().at(j, t), q0);
                        acc = f.add(acc, f.mul(c.generator().at(i, t), b));
                    }
                    prop_assert_eq!(acc, 0);
                }
            }
        }

        #[test]
        fn puncture_dimension_bound(c in random_code((5, 1), 3, 6), keep in 1usize..6) {
            let coords: Vec<usize> = (0..keep).collect();
            let p = c.puncture(&coords).unwrap();
            prop_assert!(p.dim() <= c.dim().min(coords.len()));
        }
    }
}
