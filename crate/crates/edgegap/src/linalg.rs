//! Dense LU factorization and a symmetric tridiagonal eigensolver.
//!
//! The Nyström matrices are small (order <= 512), dense and well
//! conditioned away from `det = 0`, so plain partial-pivoting LU covers
//! both the determinant and the resolvent solves. The tridiagonal solver
//! is the implicit-shift QL iteration without eigenvector accumulation.

/// LU factorization with partial pivoting of a square matrix in row-major
/// storage. Keeps the pivot sign and the smallest pivot magnitude so that
/// callers can read off the determinant and a near-singularity diagnostic.
pub(crate) struct LuFactor {
    n: usize,
    lu: Vec<f64>,
    piv: Vec<usize>,
    sign: f64,
    min_pivot: f64,
}

impl LuFactor {
    pub fn factor(mut a: Vec<f64>, n: usize) -> Self {
        assert_eq!(a.len(), n * n);
        let mut piv = vec![0usize; n];
        let mut sign = 1.0;
        let mut min_pivot = f64::INFINITY;
        for k in 0..n {
            let mut p = k;
            let mut best = a[k * n + k].abs();
            for i in k + 1..n {
                let v = a[i * n + k].abs();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            piv[k] = p;
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            let pivot = a[k * n + k];
            min_pivot = min_pivot.min(pivot.abs());
            if pivot == 0.0 {
                continue;
            }
            for i in k + 1..n {
                let factor = a[i * n + k] / pivot;
                a[i * n + k] = factor;
                for j in k + 1..n {
                    a[i * n + j] -= factor * a[k * n + j];
                }
            }
        }
        Self {
            n,
            lu: a,
            piv,
            sign,
            min_pivot,
        }
    }

    pub fn det(&self) -> f64 {
        let mut det = self.sign;
        for k in 0..self.n {
            det *= self.lu[k * self.n + k];
        }
        det
    }

    pub fn min_pivot_abs(&self) -> f64 {
        self.min_pivot
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        assert_eq!(b.len(), self.n);
        let n = self.n;
        let mut x = b.to_vec();
        for k in 0..n {
            x.swap(k, self.piv[k]);
            for i in k + 1..n {
                let factor = self.lu[i * n + k];
                x[i] -= factor * x[k];
            }
        }
        for k in (0..n).rev() {
            x[k] /= self.lu[k * n + k];
            for i in 0..k {
                let factor = self.lu[i * n + k];
                x[i] -= factor * x[k];
            }
        }
        x
    }

    /// Solve with iterative refinement against the unfactored matrix `a`,
    /// accumulating the solution in hi/lo parts. Residuals are formed
    /// with error-free product splits, so the refined solution carries
    /// roughly double-precision-squared information; resolvent systems
    /// near xi = 1 deep in the tail have condition ~1/(1 - lambda_1) and
    /// need this to keep endpoint values meaningful.
    pub fn solve_refined(&self, a: &[f64], b: &[f64]) -> DoubleVec {
        let n = self.n;
        assert_eq!(a.len(), n * n);
        let mut x = DoubleVec {
            hi: self.solve(b),
            lo: vec![0.0; n],
        };
        for _ in 0..4 {
            let mut resid = vec![0.0; n];
            let mut worst = 0.0f64;
            for (i, r) in resid.iter_mut().enumerate() {
                let row = &a[i * n..(i + 1) * n];
                // Neumaier accumulation of b_i - row . (hi + lo).
                let mut sum = b[i];
                let mut comp = 0.0;
                for ((&aij, &h), &l) in row.iter().zip(&x.hi).zip(&x.lo) {
                    let neg = -aij;
                    let p = neg * h;
                    let err = neg.mul_add(h, -p);
                    let t = sum + p;
                    comp += if sum.abs() >= p.abs() {
                        (sum - t) + p
                    } else {
                        (p - t) + sum
                    };
                    sum = t;
                    comp += err + neg * l;
                }
                *r = sum + comp;
                worst = worst.max(r.abs());
            }
            let delta = self.solve(&resid);
            for ((h, l), d) in x.hi.iter_mut().zip(x.lo.iter_mut()).zip(delta) {
                let (s, e) = two_sum(*h, d + *l);
                *h = s;
                *l = e;
            }
            let scale = x.hi.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            if worst <= 1e-300 || worst <= f64::EPSILON * f64::EPSILON * scale {
                break;
            }
        }
        x
    }
}

/// A vector held as an unevaluated hi + lo sum.
pub(crate) struct DoubleVec {
    pub hi: Vec<f64>,
    pub lo: Vec<f64>,
}

impl DoubleVec {
    /// Compensated dot product with per-component coefficients:
    /// sum_j c_j (hi_j + lo_j).
    pub fn dot(&self, coeff: &[f64]) -> f64 {
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for ((&c, &h), &l) in coeff.iter().zip(&self.hi).zip(&self.lo) {
            let p = c * h;
            let err = c.mul_add(h, -p);
            let t = sum + p;
            comp += if sum.abs() >= p.abs() {
                (sum - t) + p
            } else {
                (p - t) + sum
            };
            sum = t;
            comp += err + c * l;
        }
        sum + comp
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// All eigenvalues of a symmetric tridiagonal matrix, ascending.
///
/// `diag` has length `n`, `off` holds the `n - 1` sub-diagonal entries.
/// Implicit-shift QL without eigenvectors (EISPACK `tql1` lineage).
pub(crate) fn symtri_eigenvalues(diag: &[f64], off: &[f64]) -> Vec<f64> {
    let n = diag.len();
    assert_eq!(off.len(), n.saturating_sub(1));
    if n == 0 {
        return Vec::new();
    }
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(off);

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter <= 50, "tridiagonal QL failed to converge");
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if i == l {
                    d[l] -= p;
                    e[l] = g;
                    e[m] = 0.0;
                }
            }
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).unwrap());
    d
}
