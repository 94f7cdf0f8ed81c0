//! 5×5 symmetric matrices over exact or floating scalars.

use cartan_exact::{Poly, Scalar};
use cartan_geometry::Mat5;

pub const N: usize = 5;

/// Upper-triangular storage of a symmetric 5×5 matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix5<T> {
    upper: Vec<T>,
}

fn slot(i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * N - i * (i + 1) / 2 + j
}

impl<T: Clone> SymMatrix5<T> {
    /// `f` is called for `i ≤ j` only.
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut upper = Vec::with_capacity(15);
        for i in 0..N {
            for j in i..N {
                upper.push(f(i, j));
            }
        }
        SymMatrix5 { upper }
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.upper[slot(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        let k = slot(i, j);
        self.upper[k] = v;
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> SymMatrix5<U> {
        SymMatrix5 { upper: self.upper.iter().map(f).collect() }
    }

    pub fn try_map<U: Clone, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<SymMatrix5<U>, E> {
        Ok(SymMatrix5 { upper: self.upper.iter().map(f).collect::<Result<_, _>>()? })
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..N).map(|i| (0..N).map(|j| self.get(i, j).clone()).collect()).collect()
    }

    /// The entries on rows/columns `idx`, as a dense square block.
    pub fn block(&self, idx: &[usize]) -> Vec<Vec<T>> {
        idx.iter().map(|&i| idx.iter().map(|&j| self.get(i, j).clone()).collect()).collect()
    }
}

impl<C: Scalar> SymMatrix5<C> {
    pub fn trace(&self) -> C {
        (0..N).fold(C::zero(), |acc, i| acc.plus(self.get(i, i)))
    }

    /// Coefficients `(1, a₁, …, a₅)` of `det(S·I − A)`.
    pub fn charpoly(&self) -> Vec<C> {
        let rows: Vec<Vec<Poly<C>>> =
            self.rows().into_iter().map(|r| r.into_iter().map(Poly::constant).collect()).collect();
        berkowitz(&rows).into_iter().map(|p| p.constant_term()).collect()
    }
}

pub fn poly_trace<C: Scalar>(m: &SymMatrix5<Poly<C>>) -> Poly<C> {
    (0..N).fold(Poly::zero(), |acc, i| &acc + m.get(i, i))
}

impl SymMatrix5<f64> {
    /// Symmetrizes `m` by averaging.
    pub fn from_mat5(m: &Mat5) -> Self {
        Self::from_fn(|i, j| 0.5 * (m[(i, j)] + m[(j, i)]))
    }

    pub fn to_mat5(&self) -> Mat5 {
        Mat5::from_fn(|i, j| *self.get(i, j))
    }

    pub fn trace_f64(&self) -> f64 {
        (0..N).map(|i| self.get(i, i)).sum()
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> [f64; 5] {
        let mut ev = jacobi_eigenvalues(&self.to_mat5(), JACOBI_TOL, JACOBI_SWEEPS).values;
        ev.sort_by(|a, b| b.total_cmp(a));
        ev
    }
}

/// Division-free characteristic polynomial (Samuelson–Berkowitz).
/// Returns `(1, c₁, …, cₙ)` with `det(S·I − A) = Sⁿ + c₁Sⁿ⁻¹ + … + cₙ`.
pub fn berkowitz<C: Scalar>(a: &[Vec<Poly<C>>]) -> Vec<Poly<C>> {
    let n = a.len();
    let mut p: Vec<Poly<C>> = vec![Poly::constant(C::one())];
    for r in 0..n {
        // A_{r+1} = [[A_r, c], [row, a_rr]]
        let arr = &a[r][r];
        let col: Vec<Poly<C>> = (0..r).map(|i| a[i][r].clone()).collect();
        let row: Vec<Poly<C>> = (0..r).map(|j| a[r][j].clone()).collect();
        // first column of the Toeplitz matrix: 1, −a_rr, −row·c, −row·A·c, …
        let mut toe = vec![Poly::constant(C::one()), arr.neg()];
        let mut v = col;
        for _ in 0..r {
            let dot = row.iter().zip(&v).fold(Poly::zero(), |acc, (x, y)| &acc + &(x * y));
            toe.push(dot.neg());
            v = (0..r)
                .map(|i| (0..r).fold(Poly::zero(), |acc, k| &acc + &(&a[i][k] * &v[k])))
                .collect();
        }
        let mut next = vec![Poly::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, pj) in p.iter().enumerate() {
                if i >= j && i - j < toe.len() {
                    *slot = &*slot + &(&toe[i - j] * pj);
                }
            }
        }
        p = next;
    }
    p
}

pub const JACOBI_TOL: f64 = 1e-13;
pub const JACOBI_SWEEPS: usize = 50;

#[derive(Clone, Debug)]
pub struct JacobiResult {
    pub values: [f64; 5],
    pub vectors: Mat5,
    pub sweeps: usize,
    pub converged: bool,
}

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops
/// below `tol` times the matrix norm.
pub fn jacobi_eigenvalues(m: &Mat5, tol: f64, max_sweeps: usize) -> JacobiResult {
    let mut a = *m;
    let mut v = Mat5::identity();
    let scale = a.norm().max(f64::MIN_POSITIVE);
    let off = |a: &Mat5| -> f64 {
        let mut s = 0.0;
        for i in 0..N {
            for j in 0..N {
                if i != j {
                    s += a[(i, j)] * a[(i, j)];
                }
            }
        }
        s.sqrt()
    };
    let mut sweeps = 0;
    let mut converged = off(&a) <= tol * scale;
    while !converged && sweeps < max_sweeps {
        sweeps += 1;
        for p in 0..N - 1 {
            for q in p + 1..N {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..N {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..N {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..N {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
        converged = off(&a) <= tol * scale;
    }
    JacobiResult { values: std::array::from_fn(|i| a[(i, i)]), vectors: v, sweeps, converged }
}

/// Elementary symmetric functions `E₀ … E₅` of five numbers.
pub fn elementary_symmetric(l: &[f64; 5]) -> [f64; 6] {
    let mut e = [1.0, 0.0, 0.0, 0.0, 0.0, 0.0];
    for &x in l {
        for k in (1..=5).rev() {
            e[k] += x * e[k - 1];
        }
    }
    e
}
