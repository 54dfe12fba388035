//! Block structure of the Fock basis under `A^(k)`.
//!
//! The Fock vector `e_n` with `n = i + p·k` sits at position `p` of block `i`.
//! Inside a block the generator acts as a zero-diagonal Jacobi operator
//!
//! ```text
//! A^(k,i) e_p = ω β_{p+1} e_{p+1} + ω̄ β_p e_{p-1},   ω = −i e^{iθ},
//! ```
//!
//! with `β_p² = ∏_{j=1}^{k} (i + (p−1)k + j)`. Factorials are never formed;
//! every ratio of them is a short integer product.

use std::collections::BTreeMap;

use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::arith::{Cplx, Scalar};
use crate::error::{invalid, Error, Result};
use crate::linalg::CMatrix;

/// Block `(k, i)` together with an in-block position `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlockIndex {
    pub k: u32,
    pub i: u32,
    pub p: u64,
}

impl BlockIndex {
    pub fn new(k: u32, i: u32, p: u64) -> Result<Self> {
        check_block(k, i)?;
        Ok(Self { k, i, p })
    }

    pub fn fock_index(&self) -> u64 {
        fock_index(self.k, self.i, self.p)
    }

    pub fn at(&self, p: u64) -> Self {
        Self { p, ..*self }
    }
}

pub(crate) fn check_block(k: u32, i: u32) -> Result<()> {
    if k == 0 {
        return Err(invalid("order k must be at least 1"));
    }
    if i >= k {
        return Err(invalid(format!("residue i = {i} must be below k = {k}")));
    }
    Ok(())
}

pub fn fock_index(k: u32, i: u32, p: u64) -> u64 {
    u64::from(i) + p * u64::from(k)
}

/// Inverse of [`fock_index`]: `(i, p)` with `n = i + p·k`.
pub fn block_of(n: u64, k: u32) -> (u32, u64) {
    let k = u64::from(k);
    ((n % k) as u32, n / k)
}

/// Number of positions of block `i` among the Fock vectors `e_0 .. e_{n−1}`.
pub fn block_len(k: u32, i: u32, n: usize) -> usize {
    let (k, i) = (k as usize, i as usize);
    if n <= i {
        0
    } else {
        (n - i).div_ceil(k)
    }
}

/// `β_p²` as an exact integer. `p = 0` gives 0, which encodes `e_{−1} = 0`.
pub fn beta_sq(k: u32, i: u32, p: u64) -> Integer {
    if p == 0 {
        return Integer::new();
    }
    let base = Integer::from(i) + Integer::from(p - 1) * k;
    let mut acc = Integer::from(1);
    for j in 1..=k {
        acc *= Integer::from(&base + j);
    }
    acc
}

/// Off-diagonal entry `β_p` of a Jacobi block.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderCoefficient<T> {
    pub square: Integer,
    pub value: T,
}

pub fn beta<T: Scalar>(k: u32, i: u32, p: u64, like: &T) -> Result<LadderCoefficient<T>> {
    check_block(k, i)?;
    if p < 1 {
        return Err(invalid("ladder coefficients start at p = 1"));
    }
    let square = beta_sq(k, i, p);
    let value = like.lift_integer(&square).sqrt();
    Ok(LadderCoefficient { square, value })
}

/// `(i + q·k)! / (i + p·k)!` for positions `p` and `q` of block `(k, i)`.
pub fn factorial_ratio(k: u32, i: u32, p: u64, q: u64) -> Rational {
    let (lo, hi) = if q >= p { (p, q) } else { (q, p) };
    let mut prod = Integer::from(1);
    for s in lo + 1..=hi {
        prod *= beta_sq(k, i, s);
    }
    if q >= p {
        Rational::from(prod)
    } else {
        Rational::from((Integer::from(1), prod))
    }
}

/// The block phase `ω = −i e^{iθ}`.
pub fn omega<T: Scalar>(theta: &T) -> Cplx<T> {
    let c = Cplx::cis(theta);
    Cplx::new(c.im, -c.re)
}

/// `β_1, …, β_{n−1}`: the off-diagonal of the real symmetric gauge of block `i`.
pub fn block_off_diagonal<T: Scalar>(k: u32, i: u32, n: usize, like: &T) -> Vec<T> {
    (1..n as u64)
        .map(|p| like.lift_integer(&beta_sq(k, i, p)).sqrt())
        .collect()
}

fn check_matrix_args<T: Scalar>(theta: &T, n: usize) -> Result<()> {
    if n < 2 {
        return Err(invalid(format!(
            "matrix dimension must be at least 2, got {n}"
        )));
    }
    if !theta.is_finite() {
        return Err(invalid("phase θ must be finite"));
    }
    Ok(())
}

/// `n × n` truncation of `A^(k,i)` on `e_0 .. e_{n−1}` of the block.
pub fn build_block_matrix<T: Scalar>(k: u32, i: u32, theta: &T, n: usize) -> Result<CMatrix<T>> {
    check_block(k, i)?;
    check_matrix_args(theta, n)?;
    let w = omega(theta);
    let mut m = CMatrix::zeros(n, n, theta);
    for (p, b) in block_off_diagonal(k, i, n, theta).into_iter().enumerate() {
        let v = w.scale(&b);
        m.set(p, p + 1, v.conj());
        m.set(p + 1, p, v);
    }
    Ok(m)
}

/// `n × n` truncation of the full `A^(k)` on the Fock vectors `e_0 .. e_{n−1}`.
///
/// Built directly from `a₊^k e_m = √((m+1)⋯(m+k)) e_{m+k}`, without reference
/// to the block decomposition.
pub fn build_full_matrix<T: Scalar>(k: u32, theta: &T, n: usize) -> Result<CMatrix<T>> {
    if k == 0 {
        return Err(invalid("order k must be at least 1"));
    }
    check_matrix_args(theta, n)?;
    let w = omega(theta);
    let k = k as usize;
    let mut mat = CMatrix::zeros(n, n, theta);
    for m in 0..n.saturating_sub(k) {
        let mut sq = Integer::from(1);
        for j in 1..=k {
            sq *= (m + j) as u64;
        }
        let v = w.scale(&theta.lift_integer(&sq).sqrt());
        mat.set(m, m + k, v.conj());
        mat.set(m + k, m, v);
    }
    Ok(mat)
}

/// Direct sum of the `k` block truncations, laid out on `e_0 .. e_{n−1}`.
pub fn assemble_from_blocks<T: Scalar>(
    k: u32,
    n: usize,
    like: &T,
    mut block: impl FnMut(u32, usize) -> Result<CMatrix<T>>,
) -> Result<CMatrix<T>> {
    let mut full = CMatrix::zeros(n, n, like);
    for i in 0..k {
        let len = block_len(k, i, n);
        if len == 0 {
            continue;
        }
        let b = block(i, len)?;
        for p in 0..len {
            for q in 0..len {
                let r = fock_index(k, i, p as u64) as usize;
                let c = fock_index(k, i, q as u64) as usize;
                full.set(r, c, b.get(p, q).clone());
            }
        }
    }
    Ok(full)
}

/// One coefficient `r · ω^m` of an [`ExactRadicalVector`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RadicalTerm {
    pub q: u64,
    pub phase: i64,
}

/// Finitely supported block vector with coefficients
/// `r_q · ω^{m_q} · √((i+qk)!/(i+pk)!)`, `p` being the base position.
///
/// The phase is kept as the integer power `m_q`, so norms stay exact
/// rationals for every `θ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactRadicalVector {
    base: BlockIndex,
    coeffs: BTreeMap<RadicalTerm, Rational>,
}

impl ExactRadicalVector {
    /// The basis vector `e_p` of the block named by `base`.
    pub fn basis(base: BlockIndex) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(
            RadicalTerm {
                q: base.p,
                phase: 0,
            },
            Rational::from(1),
        );
        Self { base, coeffs }
    }

    pub fn zero(base: BlockIndex) -> Self {
        Self {
            base,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn base(&self) -> BlockIndex {
        self.base
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RadicalTerm, &Rational)> {
        self.coeffs.iter()
    }

    /// Coefficient `r` at `(q, m)`, zero if absent.
    pub fn coefficient(&self, q: u64, phase: i64) -> Rational {
        self.coeffs
            .get(&RadicalTerm { q, phase })
            .cloned()
            .unwrap_or_default()
    }

    pub fn add_term(&mut self, q: u64, phase: i64, r: Rational) {
        if r == 0 {
            return;
        }
        let key = RadicalTerm { q, phase };
        let slot = self.coeffs.entry(key.clone()).or_default();
        *slot += r;
        if *slot == 0 {
            self.coeffs.remove(&key);
        }
    }

    /// Every phase power has the parity of its distance from the base.
    pub fn parity_consistent(&self) -> bool {
        self.coeffs
            .keys()
            .all(|t| (t.phase - (t.q as i64 - self.base.p as i64)).rem_euclid(2) == 0)
    }

    /// `A^(k,i) v`. Moving from `q` up to `q+1` keeps `r` (the extra `β_{q+1}`
    /// is absorbed by the radical); moving down to `q−1` multiplies `r` by
    /// `β_q²`. The phase power moves by `±1`.
    pub fn apply_block(&self) -> Self {
        let (k, i) = (self.base.k, self.base.i);
        let mut out = Self::zero(self.base);
        for (t, r) in &self.coeffs {
            out.add_term(t.q + 1, t.phase + 1, r.clone());
            if t.q >= 1 {
                let down = Rational::from(r * beta_sq(k, i, t.q));
                out.add_term(t.q - 1, t.phase - 1, down);
            }
        }
        out
    }

    /// `‖v‖²`, exact. Requires one phase per position, which holds for
    /// every `A^n e_p`; mixed phases would make the norm depend on `θ`.
    pub fn norm_sq(&self) -> Result<Rational> {
        let mut total = Rational::new();
        let mut last: Option<u64> = None;
        for (t, r) in &self.coeffs {
            if last == Some(t.q) {
                return Err(Error::InvalidArgument(format!(
                    "position {} carries several phase powers; norm depends on θ",
                    t.q
                )));
            }
            last = Some(t.q);
            let f = factorial_ratio(self.base.k, self.base.i, self.base.p, t.q);
            total += Rational::from(r * r) * f;
        }
        Ok(total)
    }

    /// Numerical coefficients for a concrete `θ`, as `(q, value)` pairs.
    pub fn to_numeric<T: Scalar>(&self, theta: &T) -> Vec<(u64, Cplx<T>)> {
        let w = omega(theta);
        let mut out: Vec<(u64, Cplx<T>)> = Vec::new();
        for (t, r) in &self.coeffs {
            let f = factorial_ratio(self.base.k, self.base.i, self.base.p, t.q);
            let mag = theta.lift_rational(r) * theta.lift_rational(&f).sqrt();
            let ph = cplx_pow(&w, t.phase);
            let v = ph.scale(&mag);
            match out.last_mut() {
                Some((q, acc)) if *q == t.q => *acc += &v,
                _ => out.push((t.q, v)),
            }
        }
        out
    }
}

/// `w^m` for unimodular `w` (negative powers use the conjugate).
pub(crate) fn cplx_pow<T: Scalar>(w: &Cplx<T>, m: i64) -> Cplx<T> {
    let base = if m < 0 { w.conj() } else { w.clone() };
    let mut acc = Cplx::real(w.re.one_like());
    let mut b = base;
    let mut e = m.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * &b;
        }
        b = b.clone() * &b;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_hand_values() {
        assert_eq!(beta(1, 0, 1, &0.0).unwrap().square, 1);
        let b = beta(2, 0, 1, &0.0).unwrap();
        assert_eq!(b.square, 2);
        assert!((b.value - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(beta(3, 0, 2, &0.0).unwrap().square, 120);
    }

    #[test]
    fn beta_rejects_bad_arguments() {
        assert!(beta(3, 3, 1, &0.0).is_err());
        assert!(beta(3, 0, 0, &0.0).is_err());
        assert!(beta(0, 0, 1, &0.0).is_err());
    }

    #[test]
    fn beta_square_times_factorial_is_next_factorial() {
        let fact = |n: u64| -> Integer { (1..=n).fold(Integer::from(1), |a, j| a * j) };
        for k in 1..=5u32 {
            for i in 0..k {
                for p in 1..12u64 {
                    let lhs = beta_sq(k, i, p) * fact(u64::from(i) + (p - 1) * u64::from(k));
                    assert_eq!(lhs, fact(u64::from(i) + p * u64::from(k)));
                }
            }
        }
    }

    #[test]
    fn smallest_block_matrices() {
        let m = build_block_matrix(1, 0, &0.0, 2).unwrap();
        assert_eq!(*m.get(0, 1), Cplx::new(0.0, 1.0));
        assert_eq!(*m.get(1, 0), Cplx::new(0.0, -1.0));
        let m = build_block_matrix(2, 1, &0.0, 2).unwrap();
        assert!((m.get(1, 0).abs() - 6f64.sqrt()).abs() < 1e-15);
        assert!(build_block_matrix(2, 0, &0.0, 1).is_err());
        assert!(build_block_matrix(2, 0, &f64::NAN, 4).is_err());
    }

    #[test]
    fn first_application() {
        let e0 = ExactRadicalVector::basis(BlockIndex::new(1, 0, 0).unwrap());
        let v = e0.apply_block();
        assert_eq!(v.coefficient(1, 1), 1);
        assert_eq!(v.terms().count(), 1);
        let v2 = v.apply_block();
        // ω² √2 e_2 + 1·e_0: r_0 = 1 with phase 0 means ω ω̄ = 1
        assert_eq!(v2.coefficient(2, 2), 1);
        assert_eq!(v2.coefficient(0, 0), 1);
        assert_eq!(v2.norm_sq().unwrap(), 3);
    }

    #[test]
    fn zero_vector_stays_zero() {
        let z = ExactRadicalVector::zero(BlockIndex::new(3, 1, 2).unwrap());
        assert!(z.apply_block().is_zero());
    }

    #[test]
    fn round_trip_block_index() {
        for k in 1..7u32 {
            for n in 0..200u64 {
                let (i, p) = block_of(n, k);
                assert_eq!(fock_index(k, i, p), n);
            }
        }
    }
}
