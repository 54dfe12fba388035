use crate::arith::{Cplx, Scalar};

use super::CMatrix;

/// `exp(a)` by scaling and squaring around a truncated Taylor series.
///
/// The series is summed until the next term drops below the unit roundoff of
/// `a`'s scalar type. Products inside the series reuse the sparsity pattern of
/// `a`, which for banded generators keeps that phase cheap; only the final
/// squarings are dense.
pub fn expm_taylor<T: Scalar>(a: &CMatrix<T>) -> CMatrix<T> {
    let n = a.rows();
    assert_eq!(n, a.cols(), "exponential of a non-square matrix");
    let like = a.get(0, 0).re.clone();
    let eps = like.epsilon().to_f64().max(f64::MIN_POSITIVE);

    let norm = a.norm_inf();
    let mut squarings = 0u32;
    if norm > 0.5 {
        squarings = (norm / 0.5).log2().ceil() as u32;
    }
    let factor = like.lift(2f64.powi(-(squarings as i32)));
    let b = a.scale(&Cplx::real(factor));

    // nonzeros of b by row
    let pattern: Vec<Vec<(usize, Cplx<T>)>> = (0..n)
        .map(|k| {
            b.row(k)
                .iter()
                .enumerate()
                .filter(|(_, v)| !(v.re.is_zero() && v.im.is_zero()))
                .map(|(c, v)| (c, v.clone()))
                .collect()
        })
        .collect();

    let mut sum = CMatrix::identity(n, &like);
    let mut term = CMatrix::identity(n, &like);
    for j in 1..1000 {
        let mut next = CMatrix::zeros(n, n, &like);
        for r in 0..n {
            for k in 0..n {
                let t = term.get(r, k);
                if t.re.is_zero() && t.im.is_zero() {
                    continue;
                }
                for (c, v) in &pattern[k] {
                    next.get_mut(r, *c).fma_assign(t, v);
                }
            }
        }
        let inv = Cplx::real(like.one_like() / like.lift_int(j as i64));
        term = next.scale(&inv);
        sum = sum.add(&term);
        if term.max_abs() < eps * 1e-3 {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum.matmul(&sum);
    }
    sum
}
