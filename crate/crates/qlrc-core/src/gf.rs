//! Exact arithmetic in GF(p^m) for odd primes p.
//!
//! Elements are stored in a packed coefficient encoding: the element with
//! polynomial-basis coefficients (c_0, ..., c_{m-1}) is the integer
//! v = Σ c_i p^i, kept in a [`El`] (u16). Zero is 0 and prime-subfield
//! constants coincide with their integer value, so printed matrices over
//! prime fields read exactly like their textbook form.
//!
//! Every field carries a fixed element enumeration starting at 0; for prime
//! fields it is 0, 1, ..., p-1, and for extensions it is 0 followed by the
//! powers of the canonical primitive element. Evaluation points, square
//! roots and roots of unity are always reported in this order, which is what
//! makes serialized constructions reproducible run over run.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A field element in packed coefficient encoding.
pub type El = u16;

/// Largest supported field order; tables are sized for u16 encodings.
const MAX_ORDER: usize = u16::MAX as usize;

/// Orders up to this get a full q*q addition table (2 MiB at the limit).
const ADD_TABLE_LIMIT: usize = 1024;

/// Fixed irreducible moduli (Conway-style), coefficients low to high.
/// The chosen class of x is primitive for every entry, so the exp table
/// built from it enumerates the whole multiplicative group.
const BUILTIN_MODULI: &[((u16, u32), &[u16])] = &[
    ((3, 1), &[1, 1]),
    ((3, 2), &[2, 2, 1]),
    ((3, 3), &[1, 2, 0, 1]),
    ((3, 4), &[2, 0, 0, 2, 1]),
    ((5, 1), &[3, 1]),
    ((5, 2), &[2, 4, 1]),
    ((5, 3), &[3, 3, 0, 1]),
    ((5, 4), &[2, 4, 4, 0, 1]),
    ((7, 1), &[4, 1]),
    ((7, 2), &[3, 6, 1]),
    ((7, 3), &[4, 0, 6, 1]),
    ((7, 4), &[3, 4, 5, 0, 1]),
    ((11, 1), &[9, 1]),
    ((11, 2), &[2, 7, 1]),
    ((11, 3), &[9, 2, 0, 1]),
    ((11, 4), &[2, 10, 8, 0, 1]),
    ((13, 1), &[11, 1]),
    ((13, 2), &[2, 12, 1]),
    ((13, 3), &[11, 2, 0, 1]),
    ((13, 4), &[2, 12, 3, 0, 1]),
];

/// Serializable field identity: enough to reconstruct the exact same
/// element encoding on any machine.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u16,
    pub m: u32,
    /// Modulus coefficients, low to high, length m+1, monic.
    pub modulus: Vec<u16>,
}

impl FieldDescriptor {
    pub fn realize(&self) -> Result<Arc<Field>> {
        make_field_with_modulus(self.p, self.m, &self.modulus)
    }
}

/// An explicit finite field GF(p^m) with precomputed arithmetic tables.
pub struct Field {
    p: u16,
    m: u32,
    q: usize,
    modulus: Vec<u16>,
    /// (p-1)/2 as a field element; scales the wrap-around row of the
    /// self-orthogonality matrices.
    lambda: El,
    /// p^(m/2) when m is even; conjugation base.
    q0: Option<usize>,
    /// exp[k] = g^k for the canonical primitive element g, length q-1.
    exp: Vec<El>,
    /// log[v] = k with g^k = v; log[0] is a sentinel.
    log: Vec<u32>,
    /// Canonical element order, zero first.
    enumeration: Vec<El>,
    /// Inverse of `enumeration`, indexed by packed value.
    enum_idx: Vec<u32>,
    neg_table: Vec<El>,
    add_table: Option<Vec<El>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.p, self.m, self.modulus)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for Field {}

// ---------------------------------------------------------------------------
// raw polynomial arithmetic used only during construction

fn digits(p: u16, m: usize, v: usize) -> Vec<u16> {
    let mut out = vec![0u16; m];
    let mut x = v;
    for d in out.iter_mut() {
        *d = (x % p as usize) as u16;
        x /= p as usize;
    }
    out
}

fn undigits(p: u16, ds: &[u16]) -> usize {
    let mut v = 0usize;
    for &d in ds.iter().rev() {
        v = v * p as usize + d as usize;
    }
    v
}

fn add_raw(p: u16, m: usize, a: usize, b: usize) -> usize {
    let (p, mut a, mut b) = (p as usize, a, b);
    let mut out = 0usize;
    let mut mult = 1usize;
    for _ in 0..m {
        out += ((a + b) % p) * mult;
        a /= p;
        b /= p;
        mult *= p;
    }
    out
}

fn neg_raw(p: u16, m: usize, a: usize) -> usize {
    let (p, mut a) = (p as usize, a);
    let mut out = 0usize;
    let mut mult = 1usize;
    for _ in 0..m {
        out += ((p - a % p) % p) * mult;
        a /= p;
        mult *= p;
    }
    out
}

/// Coefficient-vector product reduced by the monic `modulus`.
fn mul_raw(p: u16, m: usize, modulus: &[u16], a: usize, b: usize) -> usize {
    let pa = digits(p, m, a);
    let pb = digits(p, m, b);
    let pp = p as u32;
    let mut co = vec![0u32; 2 * m];
    for (i, &ca) in pa.iter().enumerate() {
        if ca == 0 {
            continue;
        }
        for (j, &cb) in pb.iter().enumerate() {
            co[i + j] = (co[i + j] + ca as u32 * cb as u32) % pp;
        }
    }
    // x^m = -Σ modulus[i] x^i, applied from the top degree down
    for d in (m..2 * m).rev() {
        let c = co[d];
        if c == 0 {
            continue;
        }
        co[d] = 0;
        for i in 0..m {
            let sub = c * modulus[i] as u32 % pp;
            co[d - m + i] = (co[d - m + i] + pp - sub) % pp;
        }
    }
    let ds: Vec<u16> = co[..m].iter().map(|&c| c as u16).collect();
    undigits(p, &ds)
}

fn pow_raw(p: u16, m: usize, modulus: &[u16], mut base: usize, mut e: usize) -> usize {
    let mut acc = 1usize;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_raw(p, m, modulus, acc, base);
        }
        base = mul_raw(p, m, modulus, base, base);
        e >>= 1;
    }
    acc
}

fn is_prime(n: u16) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n as u32 {
        if (n as u32).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2usize;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Remainder of `num` by the monic-normalized `den`, both coefficient
/// vectors low to high over GF(p). Used by the trial-division
/// irreducibility check.
fn poly_rem(p: u16, num: &[u16], den: &[u16]) -> Vec<u16> {
    let pp = p as u32;
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1, "divisor must be monic");
    let mut rem: Vec<u32> = num.iter().map(|&c| c as u32).collect();
    for d in (dd..rem.len()).rev() {
        let c = rem[d];
        if c == 0 {
            continue;
        }
        rem[d] = 0;
        for i in 0..dd {
            let sub = c * den[i] as u32 % pp;
            rem[d - dd + i] = (rem[d - dd + i] + pp - sub) % pp;
        }
    }
    rem.truncate(dd);
    while rem.last() == Some(&0) {
        rem.pop();
    }
    rem.iter().map(|&c| c as u16).collect()
}

fn is_irreducible(p: u16, modulus: &[u16]) -> bool {
    let m = modulus.len() - 1;
    if m == 1 {
        return true;
    }
    // a reducible degree-m polynomial has a monic factor of degree <= m/2
    let mut den = vec![0u16; 0];
    for d in 1..=m / 2 {
        let count = (p as usize).pow(d as u32);
        for tail in 0..count {
            den.clear();
            den.extend_from_slice(&digits(p, d, tail));
            den.push(1);
            if poly_rem(p, modulus, &den).is_empty() {
                return false;
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// construction

/// Builds GF(p^m) from the built-in modulus table.
pub fn make_field(p: u16, m: u32) -> Result<Arc<Field>> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::NotOddPrime(p as u64));
    }
    let modulus = BUILTIN_MODULI
        .iter()
        .find(|((bp, bm), _)| *bp == p && *bm == m)
        .map(|(_, coeffs)| coeffs.to_vec())
        .ok_or(Error::NoModulusKnown { p: p as u64, m })?;
    Field::build(p, m, modulus).map(Arc::new)
}

/// Builds GF(p^m) from a user-supplied monic irreducible modulus
/// (coefficients low to high, length m+1).
pub fn make_field_with_modulus(p: u16, m: u32, modulus: &[u16]) -> Result<Arc<Field>> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::NotOddPrime(p as u64));
    }
    if m == 0 || modulus.len() != m as usize + 1 {
        return Err(Error::PreconditionFailed(format!(
            "modulus must have {} coefficients for degree {}",
            m + 1,
            m
        )));
    }
    if modulus[m as usize] != 1 {
        return Err(Error::PreconditionFailed(
            "modulus must be monic".to_string(),
        ));
    }
    if modulus.iter().any(|&c| c >= p) {
        return Err(Error::PreconditionFailed(format!(
            "modulus coefficients must lie in [0, {p})"
        )));
    }
    if !is_irreducible(p, modulus) {
        return Err(Error::ReducibleModulus);
    }
    Field::build(p, m, modulus.to_vec()).map(Arc::new)
}

impl Field {
    fn build(p: u16, m: u32, modulus: Vec<u16>) -> Result<Field> {
        let md = m as usize;
        let q = (p as usize).checked_pow(m).filter(|&q| q <= MAX_ORDER);
        let q = match q {
            Some(q) => q,
            None => return Err(Error::UnsupportedField((p as u64).pow(m))),
        };
        if md == 0 {
            return Err(Error::PreconditionFailed("degree must be >= 1".into()));
        }

        // canonical primitive element: least packed value of order q-1;
        // for the built-in moduli this is the class of x itself
        let factors = prime_factors(q - 1);
        let mut generator = None;
        for v in 1..q {
            let primitive = factors
                .iter()
                .all(|&l| pow_raw(p, md, &modulus, v, (q - 1) / l) != 1);
            if primitive && pow_raw(p, md, &modulus, v, q - 1) == 1 {
                generator = Some(v);
                break;
            }
        }
        // only a field has a cyclic unit group of full order q-1
        let g = generator.ok_or(Error::ReducibleModulus)?;

        let mut exp = vec![0 as El; q - 1];
        let mut log = vec![u32::MAX; q];
        let mut cur = 1usize;
        for (k, slot) in exp.iter_mut().enumerate() {
            if log[cur] != u32::MAX {
                return Err(Error::ReducibleModulus);
            }
            *slot = cur as El;
            log[cur] = k as u32;
            cur = mul_raw(p, md, &modulus, cur, g);
        }
        if cur != 1 {
            return Err(Error::ReducibleModulus);
        }

        let enumeration: Vec<El> = if m == 1 {
            (0..q as El).collect()
        } else {
            std::iter::once(0).chain(exp.iter().copied()).collect()
        };
        let mut enum_idx = vec![0u32; q];
        for (i, &v) in enumeration.iter().enumerate() {
            enum_idx[v as usize] = i as u32;
        }

        let neg_table: Vec<El> = (0..q).map(|a| neg_raw(p, md, a) as El).collect();
        let add_table = if q <= ADD_TABLE_LIMIT {
            let mut t = vec![0 as El; q * q];
            for a in 0..q {
                for b in 0..q {
                    t[a * q + b] = add_raw(p, md, a, b) as El;
                }
            }
            Some(t)
        } else {
            None
        };

        let q0 = if m.is_multiple_of(2) {
            Some((p as usize).pow(m / 2))
        } else {
            None
        };

        Ok(Field {
            p,
            m,
            q,
            modulus,
            lambda: (p - 1) / 2,
            q0,
            exp,
            log,
            enumeration,
            enum_idx,
            neg_table,
            add_table,
        })
    }

    // -- identity ----------------------------------------------------------

    pub fn p(&self) -> u16 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn modulus(&self) -> &[u16] {
        &self.modulus
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            m: self.m,
            modulus: self.modulus.clone(),
        }
    }

    /// (p-1)/2 as a field element.
    pub fn lambda(&self) -> El {
        self.lambda
    }

    /// The conjugation base p^(m/2) when the order is a perfect square.
    pub fn conjugation_base(&self) -> Option<usize> {
        self.q0
    }

    // -- enumeration -------------------------------------------------------

    /// All q elements in the canonical order, zero first.
    pub fn elements(&self) -> &[El] {
        &self.enumeration
    }

    /// The i-th element of the canonical enumeration.
    pub fn element_at(&self, i: usize) -> Result<El> {
        self.enumeration.get(i).copied().ok_or(Error::OutOfRange {
            what: "enumeration index",
            got: i as i64,
            lo: 0,
            hi: self.q as i64 - 1,
        })
    }

    /// Position of `a` in the canonical enumeration.
    pub fn index_of(&self, a: El) -> usize {
        self.enum_idx[a as usize] as usize
    }

    /// Embeds an ordinary integer through the prime subfield.
    pub fn from_int(&self, n: u64) -> El {
        (n % self.p as u64) as El
    }

    /// Polynomial-basis coefficients of `a`, low to high, length m.
    pub fn coeffs(&self, a: El) -> Vec<u16> {
        digits(self.p, self.m as usize, a as usize)
    }

    // -- arithmetic ---------------------------------------------------------

    #[inline]
    pub fn add(&self, a: El, b: El) -> El {
        match &self.add_table {
            Some(t) => t[a as usize * self.q + b as usize],
            None => add_raw(self.p, self.m as usize, a as usize, b as usize) as El,
        }
    }

    #[inline]
    pub fn neg(&self, a: El) -> El {
        self.neg_table[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: El, b: El) -> El {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: El, b: El) -> El {
        if a == 0 || b == 0 {
            return 0;
        }
        let k = (self.log[a as usize] as usize + self.log[b as usize] as usize) % (self.q - 1);
        self.exp[k]
    }

    /// Multiplicative inverse; panics on zero (call sites guard).
    #[inline]
    pub fn inv(&self, a: El) -> El {
        assert!(a != 0, "inverse of zero");
        let k = (self.q - 1 - self.log[a as usize] as usize) % (self.q - 1);
        self.exp[k]
    }

    #[inline]
    pub fn div(&self, a: El, b: El) -> El {
        self.mul(a, self.inv(b))
    }

    /// a^e with e possibly negative (then a must be nonzero).
    pub fn pow(&self, a: El, e: i64) -> El {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            assert!(e > 0, "negative power of zero");
            return 0;
        }
        let ord = (self.q - 1) as i64;
        let k = (self.log[a as usize] as i64 * (e % ord)).rem_euclid(ord);
        self.exp[k as usize]
    }

    // -- structure maps ------------------------------------------------------

    /// The conjugation x -> x^sqrt(q) on a square-order field.
    pub fn conjugate(&self, a: El) -> Result<El> {
        let q0 = self.q0.ok_or(Error::NonSquareOrder)?;
        Ok(self.pow(a, q0 as i64))
    }

    /// First b in enumeration order with b*b = a, if any.
    pub fn sqrt_first(&self, a: El) -> Option<El> {
        self.enumeration
            .iter()
            .copied()
            .find(|&b| self.mul(b, b) == a)
    }

    /// The r-th roots of unity in enumeration order; r must divide q-1.
    pub fn unit_roots(&self, r: usize) -> Result<Vec<El>> {
        if r == 0 || !(self.q - 1).is_multiple_of(r) {
            return Err(Error::NotADivisor {
                r: r as u64,
                order: (self.q - 1) as u64,
            });
        }
        Ok(self
            .enumeration
            .iter()
            .copied()
            .filter(|&v| v != 0 && self.pow(v, r as i64) == 1)
            .collect())
    }

    /// Σ x^t over the r-th roots of unity: (r mod p) when r | t, else 0;
    /// taking r = q-1 covers the whole multiplicative group.
    pub fn power_sum(&self, r: usize, t: u64) -> Result<El> {
        let roots = self.unit_roots(r)?;
        let mut s = 0 as El;
        for v in roots {
            s = self.add(s, self.pow(v, t as i64));
        }
        Ok(s)
    }

    /// Elements fixed by conjugation (the index-2 subfield), in
    /// enumeration order.
    pub fn subfield_elements(&self) -> Result<Vec<El>> {
        let q0 = self.q0.ok_or(Error::NonSquareOrder)?;
        Ok(self
            .enumeration
            .iter()
            .copied()
            .filter(|&v| self.pow(v, q0 as i64) == v)
            .collect())
    }
}
