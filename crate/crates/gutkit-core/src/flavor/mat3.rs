//! Minimal 3x3 complex matrix kernel: products, adjoints, norms, and a
//! one-sided Jacobi SVD.
//!
//! One-sided Jacobi is used instead of an eigendecomposition of the
//! quadratic form because it keeps high *relative* accuracy on the small
//! singular values: for an exactly rank-one matrix the trailing singular
//! values come out at machine epsilon relative to the leading one, not at
//! sqrt(epsilon) as the normal-matrix route would give.

use num_complex::Complex;
// Provides f64 math in no_std builds.
#[allow(unused_imports)]
use num_traits::Float;

pub type C64 = Complex<f64>;

/// Dense 3x3 complex matrix, row major. Serializes as nested arrays of
/// `[re, im]` pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix3(pub [[C64; 3]; 3]);

impl serde::Serialize for Matrix3 {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: [[[f64; 2]; 3]; 3] =
            core::array::from_fn(|i| core::array::from_fn(|j| [self.0[i][j].re, self.0[i][j].im]));
        rows.serialize(serializer)
    }
}

impl<'de> serde::Deserialize<'de> for Matrix3 {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows = <[[[f64; 2]; 3]; 3]>::deserialize(deserializer)?;
        Ok(Matrix3::from_fn(|i, j| C64::new(rows[i][j][0], rows[i][j][1])))
    }
}

impl Matrix3 {
    pub fn zero() -> Self {
        Matrix3([[C64::new(0.0, 0.0); 3]; 3])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..3 {
            m.0[i][i] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zero();
        for (i, row) in m.0.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = f(i, j);
            }
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        Matrix3::from_fn(|i, j| self.0[j][i].conj())
    }

    pub fn mul(&self, other: &Matrix3) -> Matrix3 {
        Matrix3::from_fn(|i, j| {
            (0..3).map(|k| self.0[i][k] * other.0[k][j]).sum()
        })
    }

    pub fn sub(&self, other: &Matrix3) -> Matrix3 {
        Matrix3::from_fn(|i, j| self.0[i][j] - other.0[i][j])
    }

    pub fn scale(&self, s: f64) -> Matrix3 {
        Matrix3::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn frobenius(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|x| x.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|x| x.norm())
            .fold(0.0, f64::max)
    }

    /// Frobenius norm of U†U - I.
    pub fn unitarity_deviation(&self) -> f64 {
        self.adjoint().mul(self).sub(&Matrix3::identity()).frobenius()
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flatten()
            .all(|x| x.re.is_finite() && x.im.is_finite())
    }

    fn col(&self, j: usize) -> [C64; 3] {
        [self.0[0][j], self.0[1][j], self.0[2][j]]
    }

    fn set_col(&mut self, j: usize, c: [C64; 3]) {
        for (row, x) in self.0.iter_mut().zip(c) {
            row[j] = x;
        }
    }
}

/// Singular values (descending) and right singular vectors of A, so that
/// `A = U diag(sigma) V†` for some unitary U. V is returned; U is never
/// needed by the callers and would require an arbitrary completion for
/// rank-deficient input.
#[derive(Debug, Clone, Copy)]
pub struct SvdRight {
    pub sigma: [f64; 3],
    pub v: Matrix3,
}

const JACOBI_REL_TOL: f64 = 1e-15;
const JACOBI_MAX_SWEEPS: usize = 64;

/// One-sided Jacobi: rotate column pairs of a working copy of A until all
/// columns are mutually orthogonal; the accumulated rotations form V and
/// the column norms are the singular values.
pub fn svd_right(a: &Matrix3) -> SvdRight {
    let mut b = *a;
    let mut v = Matrix3::identity();
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..3 {
            for q in (p + 1)..3 {
                let cp = b.col(p);
                let cq = b.col(q);
                let app: f64 = cp.iter().map(|x| x.norm_sqr()).sum();
                let aqq: f64 = cq.iter().map(|x| x.norm_sqr()).sum();
                let g: C64 = cp.iter().zip(&cq).map(|(x, y)| x.conj() * y).sum();
                let m = g.norm();
                if m <= JACOBI_REL_TOL * (app * aqq).sqrt() || m == 0.0 {
                    continue;
                }
                rotated = true;
                // Diagonalize the 2x2 Gram block [[app, g], [g*, aqq]].
                let theta = 0.5 * f64::atan2(2.0 * m, aqq - app);
                let (s, c) = theta.sin_cos();
                let phase = g / m; // e^{i phi}
                let rotate = |xp: C64, xq: C64| -> (C64, C64) {
                    (
                        xp * c - xq * s * phase.conj(),
                        xp * s * phase + xq * c,
                    )
                };
                let (mut nbp, mut nbq) = ([C64::new(0.0, 0.0); 3], [C64::new(0.0, 0.0); 3]);
                let (mut nvp, mut nvq) = ([C64::new(0.0, 0.0); 3], [C64::new(0.0, 0.0); 3]);
                for i in 0..3 {
                    let (x, y) = rotate(b.0[i][p], b.0[i][q]);
                    nbp[i] = x;
                    nbq[i] = y;
                    let (x, y) = rotate(v.0[i][p], v.0[i][q]);
                    nvp[i] = x;
                    nvq[i] = y;
                }
                b.set_col(p, nbp);
                b.set_col(q, nbq);
                v.set_col(p, nvp);
                v.set_col(q, nvq);
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sigma = [0.0f64; 3];
    for (j, s) in sigma.iter_mut().enumerate() {
        *s = b.col(j).iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    }
    // Descending order.
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| sigma[j].partial_cmp(&sigma[i]).unwrap());
    let mut out_v = v;
    let mut out_s = sigma;
    for (dst, &src) in order.iter().enumerate() {
        out_s[dst] = sigma[src];
        for i in 0..3 {
            out_v.0[i][dst] = v.0[i][src];
        }
    }
    SvdRight { sigma: out_s, v: out_v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(rng: &mut impl Rng) -> Matrix3 {
        Matrix3::from_fn(|_, _| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
    }

    #[test]
    fn svd_reconstructs_the_gram_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let a = random_matrix(&mut rng);
            let SvdRight { sigma, v } = svd_right(&a);
            // A†A = V diag(sigma²) V†
            let mut d2 = Matrix3::zero();
            for (i, sv) in sigma.iter().enumerate() {
                d2.0[i][i] = C64::new(sv * sv, 0.0);
            }
            let lhs = a.adjoint().mul(&a);
            let rhs = v.mul(&d2).mul(&v.adjoint());
            let scale = sigma[0] * sigma[0];
            assert!(lhs.sub(&rhs).frobenius() <= 1e-13 * scale.max(1e-300));
            assert!(v.unitarity_deviation() <= 1e-13);
            assert!(sigma[0] >= sigma[1] && sigma[1] >= sigma[2] && sigma[2] >= 0.0);
        }
    }

    #[test]
    fn svd_of_diagonal_matrix() {
        let mut a = Matrix3::zero();
        a.0[0][0] = C64::new(3.0, 0.0);
        a.0[1][1] = C64::new(1.0, 0.0);
        a.0[2][2] = C64::new(2.0, 0.0);
        let SvdRight { sigma, .. } = svd_right(&a);
        assert!((sigma[0] - 3.0).abs() < 1e-14);
        assert!((sigma[1] - 2.0).abs() < 1e-14);
        assert!((sigma[2] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn svd_of_outer_product_is_numerically_rank_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let u: [C64; 3] =
                core::array::from_fn(|_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
            let w: [C64; 3] =
                core::array::from_fn(|_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
            let a = Matrix3::from_fn(|i, j| u[i] * w[j]);
            let SvdRight { sigma, .. } = svd_right(&a);
            if sigma[0] > 0.0 {
                assert!(sigma[1] / sigma[0] <= 1e-12, "ratio {}", sigma[1] / sigma[0]);
                assert!(sigma[2] / sigma[0] <= 1e-12);
            }
        }
    }

    #[test]
    fn zero_matrix_has_zero_singular_values() {
        let SvdRight { sigma, v } = svd_right(&Matrix3::zero());
        assert_eq!(sigma, [0.0; 3]);
        assert!(v.unitarity_deviation() <= 1e-15);
    }
}
