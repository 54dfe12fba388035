use crate::arith::Scalar;
use crate::error::{Error, Result};

/// Eigenpairs of a real symmetric tridiagonal matrix.
///
/// `vectors[r][j]` is component `r` of the `j`-th eigenvector; only the
/// leading rows requested from [`tridiagonal_eigen`] are kept.
#[derive(Clone, Debug)]
pub struct TridiagEigen<T> {
    pub values: Vec<T>,
    pub vectors: Vec<Vec<T>>,
}

const MAX_SWEEPS: usize = 60;

/// Implicit QL with Wilkinson shifts (EISPACK `tql2`).
///
/// `off[j]` couples rows `j` and `j + 1`. Plane rotations only ever mix two
/// columns of the eigenvector matrix, so each row evolves on its own and
/// `rows` limits the accumulation to the leading rows. Eigenvalues are
/// returned in ascending order.
pub fn tridiagonal_eigen<T: Scalar>(diag: &[T], off: &[T], rows: usize) -> Result<TridiagEigen<T>> {
    let n = diag.len();
    if n == 0 {
        return Ok(TridiagEigen {
            values: Vec::new(),
            vectors: Vec::new(),
        });
    }
    if off.len() + 1 != n {
        return Err(Error::InvalidArgument(format!(
            "off-diagonal length {} does not match dimension {n}",
            off.len()
        )));
    }
    let rows = rows.min(n);
    let like = diag[0].clone();
    let zero = like.zero_like();
    let one = like.one_like();
    let eps = like.epsilon();

    let mut d: Vec<T> = diag.to_vec();
    let mut e: Vec<T> = off.to_vec();
    e.push(zero.clone());
    let mut z: Vec<Vec<T>> = (0..rows)
        .map(|r| {
            (0..n)
                .map(|c| if r == c { one.clone() } else { zero.clone() })
                .collect()
        })
        .collect();

    let mut f = zero.clone();
    let mut tst1 = zero.clone();
    for l in 0..n {
        tst1 = tst1.max_of(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 {
            if e[m].abs() <= eps.clone() * &tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                if sweeps > MAX_SWEEPS {
                    return Err(Error::Numerical(format!(
                        "tridiagonal QL did not converge for eigenvalue {l}"
                    )));
                }
                let g = d[l].clone();
                let mut p = (d[l + 1].clone() - &g) / (e[l].lift(2.0) * &e[l]);
                let mut r = p.hypot(&one);
                if p < zero {
                    r = -r;
                }
                d[l] = e[l].clone() / (p.clone() + &r);
                d[l + 1] = e[l].clone() * (p.clone() + &r);
                let dl1 = d[l + 1].clone();
                let mut h = g - &d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= &h;
                }
                f += &h;

                p = d[m].clone();
                let mut c = one.clone();
                let mut c2 = one.clone();
                let mut c3 = one.clone();
                let el1 = e[l + 1].clone();
                let mut s = zero.clone();
                let mut s2 = zero.clone();
                for i in (l..m).rev() {
                    c3 = c2.clone();
                    c2 = c.clone();
                    s2 = s.clone();
                    let g = c.clone() * &e[i];
                    h = c.clone() * &p;
                    r = p.hypot(&e[i]);
                    e[i + 1] = s.clone() * &r;
                    s = e[i].clone() / &r;
                    c = p.clone() / &r;
                    p = c.clone() * &d[i] - s.clone() * &g;
                    d[i + 1] = h + s.clone() * (c.clone() * &g + s.clone() * &d[i]);
                    for zr in z.iter_mut() {
                        let (lo, hi) = zr.split_at_mut(i + 1);
                        let (a, b) = (&mut lo[i], &mut hi[0]);
                        let old_b = b.clone();
                        *b *= &c;
                        b.add_mul(&s, a);
                        *a *= &c;
                        a.sub_mul(&s, &old_b);
                    }
                }
                p = -(s.clone() * &s2 * &c3 * &el1 * &e[l]) / &dl1;
                e[l] = s * &p;
                d[l] = c * &p;
                if e[l].abs() <= eps.clone() * &tst1 {
                    break;
                }
            }
        }
        d[l] += &f;
        e[l] = zero.clone();
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&j| d[j].clone()).collect();
    let vectors = z
        .into_iter()
        .map(|zr| order.iter().map(|&j| zr[j].clone()).collect())
        .collect();
    Ok(TridiagEigen { values, vectors })
}
