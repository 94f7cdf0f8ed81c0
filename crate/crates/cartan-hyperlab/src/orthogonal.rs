//! Haar-distributed orthogonal 5×5 matrices.

use cartan_geometry::Mat5;
use rand::Rng;
use rand_distr::StandardNormal;

pub const ORTHO_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct Orthogonal5(Mat5);

impl Orthogonal5 {
    pub fn identity() -> Self {
        Orthogonal5(Mat5::identity())
    }

    /// Accepts `m` if `‖mᵀm − I‖ ≤ 10⁻¹²` (Frobenius).
    pub fn new(m: Mat5) -> Option<Self> {
        (defect(&m) <= ORTHO_TOL).then_some(Orthogonal5(m))
    }

    pub fn matrix(&self) -> &Mat5 {
        &self.0
    }

    pub fn transpose(&self) -> Self {
        Orthogonal5(self.0.transpose())
    }

    pub fn defect(&self) -> f64 {
        defect(&self.0)
    }

    pub fn det(&self) -> f64 {
        self.0.determinant()
    }

    /// Left multiplication by the rotation by `angle` in the `(i, j)` plane.
    pub fn rotate(&self, i: usize, j: usize, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        let mut m = self.0;
        for k in 0..5 {
            let (x, y) = (m[(i, k)], m[(j, k)]);
            m[(i, k)] = c * x - s * y;
            m[(j, k)] = s * x + c * y;
        }
        Orthogonal5(m)
    }

    pub fn rows(&self) -> [[f64; 5]; 5] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.0[(i, j)]))
    }
}

fn defect(m: &Mat5) -> f64 {
    (m.transpose() * m - Mat5::identity()).norm()
}

/// `Q` from the QR factorization of a standard Gaussian matrix, with the
/// columns signed so that `R` has a positive diagonal; this makes `Q` exactly
/// Haar distributed. Near-singular draws are resampled.
pub fn random_orthogonal<R: Rng + ?Sized>(rng: &mut R) -> Orthogonal5 {
    loop {
        let g = Mat5::from_fn(|_, _| rng.sample::<f64, _>(StandardNormal));
        let qr = g.qr();
        let r = qr.r();
        if (0..5).any(|i| r[(i, i)].abs() < 1e-8) {
            continue;
        }
        let mut q = qr.q();
        for j in 0..5 {
            if r[(j, j)] < 0.0 {
                q.column_mut(j).neg_mut();
            }
        }
        return Orthogonal5(q);
    }
}
