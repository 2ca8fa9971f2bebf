//! Matrix-product codes and their dual machinery.
//!
//! An [`MpcSpec`] bundles constituent codes C_1..C_s of a common length m
//! with a full-rank s x h matrix A; the product code interleaves the
//! constituents block-major, so coordinate (j, l) lives at index j*m + l.
//! The module also builds the special square matrices whose Euclidean or
//! Hermitian Gram is monomial, which is what turns dual containment of the
//! whole product into conditions on the constituents, checked here via the
//! zeta matrix (B B^t)^-1.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::code::{
    CertKind, DistanceCertificate, DistanceMethod, DistanceValue, DualKind, LinearCode,
};
use crate::error::{Error, Result};
use crate::fmatrix::{FMatrix, MatrixDescriptor, MonomialWitness};
use crate::gf::{El, Field};

// ---------------------------------------------------------------------------
// special matrices

fn power_rows(field: &Field, points: &[El], s: usize) -> Vec<Vec<El>> {
    (0..s)
        .map(|e| points.iter().map(|&a| field.pow(a, e as i64)).collect())
        .collect()
}

/// Vandermonde-type s x h matrix on the first h enumerated elements;
/// non-singular by columns exactly because h <= q.
pub fn vandermonde(field: &Arc<Field>, h: usize, s: usize) -> Result<FMatrix> {
    if h > field.q() {
        return Err(Error::TooWide);
    }
    if s < 2 || s > h {
        return Err(Error::OutOfRange {
            what: "row count",
            got: s as i64,
            lo: 2,
            hi: h as i64,
        });
    }
    let rows = power_rows(field, &field.elements()[..h], s);
    let mut m = FMatrix::from_rows(field.clone(), &rows)?;
    m.certify_nsc();
    Ok(m)
}

/// Rows a_1..a_q over the whole field: the Vandermonde rows with the last
/// one shifted by lambda times the first, making the Euclidean Gram the
/// anti-diagonal of -1.
fn whole_field_rows(field: &Field) -> Vec<Vec<El>> {
    let q = field.q();
    let mut rows = power_rows(field, field.elements(), q);
    let lambda = field.lambda();
    let first = rows[0].clone();
    let last = rows.last_mut().expect("q >= 3");
    for (x, &w) in last.iter_mut().zip(&first) {
        *x = field.add(*x, field.mul(lambda, w));
    }
    rows
}

/// Rows on the roots of X^h - X (zero plus the (h-1)-st roots of unity),
/// with the first row scaled by beta, beta^2 = 1 - h, and the usual lambda
/// shift on the last row. Euclidean Gram: anti-diagonal of h - 1.
fn twisted_rows(field: &Field, h: usize) -> Result<(Vec<Vec<El>>, El)> {
    if h < 2 || h > field.q() {
        return Err(Error::OutOfRange {
            what: "matrix size",
            got: h as i64,
            lo: 2,
            hi: field.q() as i64,
        });
    }
    if !(field.q() - 1).is_multiple_of(h - 1) {
        return Err(Error::PreconditionFailed("h - 1 divides q - 1".to_string()));
    }
    let one_minus_h = field.sub(1, field.from_int(h as u64));
    let beta = match field.sqrt_first(one_minus_h) {
        Some(b) if b != 0 => b,
        _ => {
            return Err(Error::PreconditionFailed(
                "1 - h is a nonzero square".to_string(),
            ))
        }
    };
    let mut points = vec![0 as El];
    points.extend(field.unit_roots(h - 1)?);
    debug_assert_eq!(points.len(), h);
    let w = power_rows(field, &points, h);
    let mut a1 = vec![1 as El; h];
    a1[0] = beta;
    let lambda = field.lambda();
    let mut rows = vec![a1.clone()];
    rows.extend(w[1..h - 1].iter().cloned());
    let last: Vec<El> = w[h - 1]
        .iter()
        .zip(&a1)
        .map(|(&x, &y)| field.add(x, field.mul(lambda, y)))
        .collect();
    rows.push(last);
    Ok((rows, beta))
}

/// Plain Vandermonde rows on the h-th roots of unity. Euclidean Gram:
/// h at (1,1) and along the anti-diagonal i + j = h + 2.
fn xh1_rows(field: &Field, h: usize) -> Result<Vec<Vec<El>>> {
    if !(field.q() - 1).is_multiple_of(h) {
        return Err(Error::PreconditionFailed("h divides q - 1".to_string()));
    }
    let points = field.unit_roots(h)?;
    Ok(power_rows(field, &points, h))
}

/// The three evaluation-point layouts that make B B^t monomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelforthVariant {
    /// All q field elements; forces h = q.
    FullQ,
    /// Roots of X^h - X; needs (h-1) | (q-1) and 1-h a square.
    RootsOfXhMinusX,
    /// Roots of X^h - 1; needs h | (q-1).
    RootsOfXhMinus1,
}

/// Builds the h x h matrix of the chosen variant together with the monomial
/// witness of its Euclidean Gram.
pub fn euclidean_selforth_matrix(
    field: &Arc<Field>,
    h: usize,
    variant: SelforthVariant,
) -> Result<(FMatrix, MonomialWitness)> {
    let rows = match variant {
        SelforthVariant::FullQ => {
            if h != field.q() {
                return Err(Error::PreconditionFailed(
                    "h equals the field order".to_string(),
                ));
            }
            whole_field_rows(field)
        }
        SelforthVariant::RootsOfXhMinusX => twisted_rows(field, h)?.0,
        SelforthVariant::RootsOfXhMinus1 => xh1_rows(field, h)?,
    };
    let mut b = FMatrix::from_rows(field.clone(), &rows)?;
    b.certify_nsc();
    let witness = b
        .gram_euclidean()
        .monomial_decompose()
        .expect("Gram of a self-orthogonality matrix is monomial");
    Ok((b, witness))
}

/// The beta used by the roots-of-X^h-X layout (first square root of 1-h).
pub fn twisted_beta(field: &Field, h: usize) -> Result<El> {
    twisted_rows(field, h).map(|(_, beta)| beta)
}

/// The square-field analogue on all q^2 elements: returns the matrix and
/// the involutive row pairing sigma for which the Hermitian Gram is -1 at
/// (i, sigma(i)) and zero elsewhere.
pub fn hermitian_selforth_matrix(field: &Arc<Field>) -> Result<(FMatrix, Vec<usize>)> {
    if field.conjugation_base().is_none() {
        return Err(Error::NonSquareOrder);
    }
    let mut a = FMatrix::from_rows(field.clone(), &whole_field_rows(field))?;
    a.certify_nsc();
    let gram = a.gram_hermitian()?;
    let witness = gram
        .monomial_decompose()
        .expect("Hermitian Gram of the whole-field matrix is monomial");
    let neg1 = field.neg(1);
    assert!(
        witness.diagonal.iter().all(|&d| d == neg1),
        "pairing entries are all -1"
    );
    let sigma = witness.permutation;
    for (i, &j) in sigma.iter().enumerate() {
        assert_eq!(sigma[j], i, "pairing is involutive");
    }
    Ok((a, sigma))
}

/// Rows of the whole-field matrix reordered so the Hermitian Gram becomes
/// block-diagonal: -identity on the self-paired rows, then an anti-diagonal
/// of -1 across the remaining pairs. Returns the first s rows.
pub fn hermitian_ordered_matrix(field: &Arc<Field>, s: usize) -> Result<FMatrix> {
    let q0 = field.conjugation_base().ok_or(Error::NonSquareOrder)?;
    let q = field.q();
    let lo = (q + q0) / 2;
    if s < lo || s > q {
        return Err(Error::RowCountOutOfRange { got: s, lo, hi: q });
    }
    let (a, sigma) = hermitian_selforth_matrix(field)?;
    let self_paired: Vec<usize> = (0..q).filter(|&i| sigma[i] == i).collect();
    let reps: Vec<usize> = (0..q).filter(|&i| i < sigma[i]).collect();
    let mut order = self_paired;
    order.extend(&reps);
    order.extend(reps.iter().rev().map(|&i| sigma[i]));
    let rows: Vec<Vec<El>> = order.iter().map(|&i| a.row(i).to_vec()).collect();
    let full = FMatrix::from_rows(field.clone(), &rows)?;
    full.top_rows(s)
}

// ---------------------------------------------------------------------------
// the product code

/// Constituents C_1..C_s with the s x h matrix A and an optional invertible
/// completion B extending A.
#[derive(Debug, Clone)]
pub struct MpcSpec {
    constituents: Vec<LinearCode>,
    a: FMatrix,
    completion: Option<FMatrix>,
}

/// Serializable spec form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MpcSpecDescriptor {
    pub field: crate::gf::FieldDescriptor,
    pub m: usize,
    pub h: usize,
    pub s: usize,
    pub a: Vec<u32>,
    pub constituents: Vec<crate::code::CodeDescriptor>,
    pub completion: Option<Vec<u32>>,
}

impl MpcSpec {
    pub fn new(
        constituents: Vec<LinearCode>,
        a: FMatrix,
        completion: Option<FMatrix>,
    ) -> Result<MpcSpec> {
        let s = a.rows();
        let h = a.cols();
        if constituents.is_empty() || constituents.len() != s || s > h {
            return Err(Error::ShapeMismatch(format!(
                "{} constituents against a {s} x {h} matrix",
                constituents.len()
            )));
        }
        let m = constituents[0].len();
        if m == 0 {
            return Err(Error::ShapeMismatch("constituents of length zero".into()));
        }
        for c in &constituents {
            if c.len() != m || c.field() != a.field() {
                return Err(Error::ShapeMismatch(
                    "constituents must share field and length".into(),
                ));
            }
        }
        if a.rank() != s {
            return Err(Error::NotFullRank);
        }
        if let Some(b) = &completion {
            if b.rows() != h || b.cols() != h {
                return Err(Error::ShapeMismatch("completion must be h x h".into()));
            }
            if b.rank() != h {
                return Err(Error::Singular);
            }
            if b.top_rows(s)? != a {
                return Err(Error::PreconditionFailed(
                    "completion must extend the matrix row-for-row".to_string(),
                ));
            }
        }
        Ok(MpcSpec {
            constituents,
            a,
            completion,
        })
    }

    pub fn s(&self) -> usize {
        self.a.rows()
    }

    pub fn h(&self) -> usize {
        self.a.cols()
    }

    pub fn m(&self) -> usize {
        self.constituents[0].len()
    }

    pub fn field(&self) -> &Arc<Field> {
        self.a.field()
    }

    pub fn constituents(&self) -> &[LinearCode] {
        &self.constituents
    }

    pub fn matrix(&self) -> &FMatrix {
        &self.a
    }

    pub fn completion(&self) -> Option<&FMatrix> {
        self.completion.as_ref()
    }

    /// The completion to use for dual formulas: the stored one, the matrix
    /// itself when square, or the deterministic standard-basis extension.
    pub fn completion_or_compute(&self) -> Result<FMatrix> {
        if let Some(b) = &self.completion {
            return Ok(b.clone());
        }
        if self.s() == self.h() {
            return Ok(self.a.clone());
        }
        self.a.complete_to_invertible()
    }

    /// True when C_1 contains C_2 contains ... contains C_s.
    pub fn is_nested(&self) -> bool {
        self.constituents.windows(2).all(|w| {
            w[0].contains(&w[1])
                .expect("constituents share field and length")
        })
    }

    pub fn descriptor(&self) -> MpcSpecDescriptor {
        let f = self.field();
        MpcSpecDescriptor {
            field: f.descriptor(),
            m: self.m(),
            h: self.h(),
            s: self.s(),
            a: self
                .a
                .entries()
                .iter()
                .map(|&e| f.index_of(e) as u32)
                .collect(),
            constituents: self.constituents.iter().map(|c| c.descriptor()).collect(),
            completion: self
                .completion
                .as_ref()
                .map(|b| b.entries().iter().map(|&e| f.index_of(e) as u32).collect()),
        }
    }

    pub fn from_descriptor(d: &MpcSpecDescriptor) -> Result<MpcSpec> {
        let field = d.field.realize()?;
        let mut a_entries = Vec::with_capacity(d.a.len());
        for &idx in &d.a {
            a_entries.push(field.element_at(idx as usize)?);
        }
        let a = FMatrix::new(field.clone(), d.s, d.h, a_entries)?;
        let constituents = d
            .constituents
            .iter()
            .map(LinearCode::from_descriptor)
            .collect::<Result<Vec<_>>>()?;
        let completion = match &d.completion {
            None => None,
            Some(ents) => {
                let mut b_entries = Vec::with_capacity(ents.len());
                for &idx in ents {
                    b_entries.push(field.element_at(idx as usize)?);
                }
                Some(FMatrix::new(field.clone(), d.h, d.h, b_entries)?)
            }
        };
        MpcSpec::new(constituents, a, completion)
    }
}

/// Assembles the product code: one generator row a_t * g per constituent
/// basis row g, laid out block-major.
pub fn mpc_code(spec: &MpcSpec) -> LinearCode {
    let f = spec.field();
    let (m, h) = (spec.m(), spec.h());
    let mut gens: Vec<Vec<El>> = Vec::new();
    for (t, c) in spec.constituents().iter().enumerate() {
        for gi in 0..c.dim() {
            let g = c.generator().row(gi);
            let mut word = Vec::with_capacity(m * h);
            for j in 0..h {
                let a = spec.matrix().at(t, j);
                word.extend(g.iter().map(|&x| f.mul(a, x)));
            }
            gens.push(word);
        }
    }
    if gens.is_empty() {
        return LinearCode::zero_code(f.clone(), m * h);
    }
    let g = FMatrix::from_rows(f.clone(), &gens).expect("rows share length m*h");
    let code = LinearCode::code_from_generator(&g).expect("nonzero generator");
    debug_assert_eq!(
        code.dim(),
        spec.constituents().iter().map(|c| c.dim()).sum::<usize>()
    );
    code
}

fn mul_distance(a: DistanceValue, b: DistanceValue) -> DistanceValue {
    match (a, b) {
        (DistanceValue::Finite(x), DistanceValue::Finite(y)) => DistanceValue::Finite(x * y),
        _ => DistanceValue::Unbounded,
    }
}

/// min_i d(C_i) d(A_i) over the nonzero constituents, where A_i is the code
/// of the first i rows of A. Exact when the constituents are nested and
/// every factor is exact, otherwise a lower bound.
pub fn mpc_distance(spec: &MpcSpec, budget: u64) -> DistanceCertificate {
    let h = spec.h();
    let mut best = DistanceValue::Unbounded;
    let mut all_exact = true;
    for (i, c) in spec.constituents().iter().enumerate() {
        if c.dim() == 0 {
            continue;
        }
        let d_c = c.min_distance(budget);
        let d_a = if spec.matrix().nsc_certified() {
            // prefix codes of a non-singular-by-columns matrix are MDS
            DistanceCertificate::exact(DistanceValue::Finite((h - i) as u32), DistanceMethod::Mds)
        } else {
            let prefix = spec
                .matrix()
                .top_rows(i + 1)
                .expect("prefix within row count");
            LinearCode::code_from_generator(&prefix)
                .expect("full-rank prefix is nonzero")
                .min_distance(budget)
        };
        all_exact &= d_c.kind == CertKind::Exact && d_a.kind == CertKind::Exact;
        let term = mul_distance(d_c.value, d_a.value);
        if term < best {
            best = term;
        }
    }
    let exact = all_exact && spec.is_nested();
    DistanceCertificate {
        value: best,
        kind: if exact {
            CertKind::Exact
        } else {
            CertKind::LowerBound
        },
        method: DistanceMethod::NestedFormula,
    }
}

/// The dual of the product as another product: dual constituents padded
/// with full spaces, against the inverse-transpose of the completion
/// (conjugated first in the Hermitian case).
pub fn mpc_dual(spec: &MpcSpec, kind: DualKind) -> Result<LinearCode> {
    let f = spec.field();
    let (m, h, s) = (spec.m(), spec.h(), spec.s());
    let b = spec.completion_or_compute()?;
    let b_inv = match kind {
        DualKind::Euclidean => b.invert()?,
        DualKind::Hermitian => b.frobenius()?.invert()?,
    };
    let b_it = b_inv.transpose();
    let mut duals = Vec::with_capacity(h);
    for c in spec.constituents() {
        duals.push(c.dual(kind)?);
    }
    for _ in s..h {
        duals.push(LinearCode::full_code(f.clone(), m));
    }
    let dual_spec = MpcSpec::new(duals, b_it, None)?;
    Ok(mpc_code(&dual_spec))
}

/// One violated condition of the zeta criterion at 1-based position (t, j).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaFailure {
    pub t: usize,
    pub j: usize,
    pub condition: u8,
}

/// Outcome of the zeta-matrix dual-containment criterion.
#[derive(Debug, Clone)]
pub struct GramReport {
    pub kind: DualKind,
    pub zeta: FMatrix,
    pub failures: Vec<ZetaFailure>,
    pub verdict: bool,
}

/// Serializable report form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GramReportDescriptor {
    pub kind: DualKind,
    pub zeta: MatrixDescriptor,
    pub failures: Vec<ZetaFailure>,
    pub verdict: bool,
}

impl GramReport {
    pub fn descriptor(&self) -> GramReportDescriptor {
        GramReportDescriptor {
            kind: self.kind,
            zeta: self.zeta.descriptor(),
            failures: self.failures.clone(),
            verdict: self.verdict,
        }
    }
}

/// Evaluates the four zeta conditions. With zeta = (B B^t)^-1 (conjugated B
/// in the Hermitian case) and a nonzero zeta_{t,j}:
/// both indices past s violates (1); one index past s needs the other's
/// constituent to be the full space (2)/(3); both within s needs
/// C_t-dual inside C_j (4). The verdict is equivalent to containment of the
/// dual in the product code.
pub fn check_dual_containing(spec: &MpcSpec, kind: DualKind) -> Result<GramReport> {
    let (m, h, s) = (spec.m(), spec.h(), spec.s());
    let b = spec.completion_or_compute()?;
    let gram = match kind {
        DualKind::Euclidean => b.gram_euclidean(),
        DualKind::Hermitian => b.gram_hermitian()?,
    };
    let zeta = gram.invert()?;
    let mut failures = Vec::new();
    for t in 0..h {
        for j in 0..h {
            if zeta.at(t, j) == 0 {
                continue;
            }
            if t >= s && j >= s {
                failures.push(ZetaFailure {
                    t: t + 1,
                    j: j + 1,
                    condition: 1,
                });
            } else if t < s && j >= s {
                if spec.constituents()[t].dim() != m {
                    failures.push(ZetaFailure {
                        t: t + 1,
                        j: j + 1,
                        condition: 2,
                    });
                }
            } else if j < s && t >= s {
                if spec.constituents()[j].dim() != m {
                    failures.push(ZetaFailure {
                        t: t + 1,
                        j: j + 1,
                        condition: 3,
                    });
                }
            } else {
                let dual_t = spec.constituents()[t].dual(kind)?;
                if !spec.constituents()[j].contains(&dual_t)? {
                    failures.push(ZetaFailure {
                        t: t + 1,
                        j: j + 1,
                        condition: 4,
                    });
                }
            }
        }
    }
    let verdict = failures.is_empty();
    Ok(GramReport {
        kind,
        zeta,
        failures,
        verdict,
    })
}

/// Lower bound on the dual distance of the product:
/// min over {s+1 (only when s < h)} and {i * d(C_i-dual)} for the
/// constituents with nonzero duals. Unbounded when no term is finite.
pub fn mpc_dual_distance_bound(
    spec: &MpcSpec,
    kind: DualKind,
    budget: u64,
) -> Result<DistanceValue> {
    if !spec.matrix().nsc_certified() && !spec.matrix().is_nsc()? {
        return Err(Error::NotNsc);
    }
    let (s, h) = (spec.s(), spec.h());
    let mut best = DistanceValue::Unbounded;
    if s < h {
        best = DistanceValue::Finite((s + 1) as u32);
    }
    for i in (1..=s).rev() {
        let dual = spec.constituents()[i - 1].dual(kind)?;
        if dual.dim() == 0 {
            continue;
        }
        if let DistanceValue::Finite(d) = dual.min_distance(budget).value {
            let term = DistanceValue::Finite(i as u32 * d);
            if term < best {
                best = term;
            }
        }
    }
    Ok(best)
}

/// Product of two nested pairs against a 2 x h matrix where the first
/// `s_ext` blocks use the one-coordinate enlargements, giving a code of
/// length m*h + s_ext and dimension k_1 + k_2.
pub fn ext_mpc_code(
    c1hat: &LinearCode,
    c1: &LinearCode,
    c2hat: &LinearCode,
    c2: &LinearCode,
    a: &FMatrix,
    s_ext: usize,
    budget: u64,
) -> Result<LinearCode> {
    let f = a.field().clone();
    let m = c1.len();
    let h = a.cols();
    if a.rows() != 2 {
        return Err(Error::ShapeMismatch(
            "extension needs a 2-row matrix".into(),
        ));
    }
    if c2.len() != m || c1.field() != &f || c2.field() != &f {
        return Err(Error::ShapeMismatch(
            "base codes must share field and length".into(),
        ));
    }
    if s_ext < 1 || s_ext > h {
        return Err(Error::OutOfRange {
            what: "extended block count",
            got: s_ext as i64,
            lo: 1,
            hi: h as i64,
        });
    }
    if !c1.contains(c2)? {
        return Err(Error::NotNested);
    }
    if !c1hat.contains(c2hat)? {
        return Err(Error::NotNested);
    }
    let base: Vec<usize> = (0..m).collect();
    for (hat, plain) in [(c1hat, c1), (c2hat, c2)] {
        if hat.len() != m + 1 || hat.dim() != plain.dim() {
            return Err(Error::NotEnlargement);
        }
        if plain.dim() == 0 {
            continue;
        }
        if &hat.puncture(&base)? != plain {
            return Err(Error::NotEnlargement);
        }
        let (dh, dp) = (hat.min_distance(budget), plain.min_distance(budget));
        if dh.kind == CertKind::Exact && dp.kind == CertKind::Exact {
            if let (DistanceValue::Finite(a), DistanceValue::Finite(b)) = (dh.value, dp.value) {
                if a != b + 1 {
                    return Err(Error::NotEnlargement);
                }
            }
        }
    }
    let mut gens: Vec<Vec<El>> = Vec::new();
    for (t, hat) in [(0usize, c1hat), (1, c2hat)] {
        for gi in 0..hat.dim() {
            let g = hat.generator().row(gi);
            let mut word = Vec::new();
            for j in 0..h {
                let av = a.at(t, j);
                let take = if j < s_ext { m + 1 } else { m };
                word.extend(g[..take].iter().map(|&x| f.mul(av, x)));
            }
            gens.push(word);
        }
    }
    if gens.is_empty() {
        return Ok(LinearCode::zero_code(f, m * h + s_ext));
    }
    let gmat = FMatrix::from_rows(f, &gens)?;
    let code = LinearCode::code_from_generator(&gmat)?;
    debug_assert_eq!(code.dim(), c1hat.dim() + c2hat.dim());
    Ok(code)
}
