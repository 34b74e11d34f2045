//! Yukawa textures, mass spectra, and CKM extraction.
//!
//! The mass-basis convention follows the diagonalization of the quadratic
//! form `lambda† lambda`: `U lambda† lambda U^{-1} = D²` with descending
//! singular values, so `U` is the adjoint of the right singular-vector
//! matrix. The CKM matrix is `U_u U_d^{-1}`. The alternative left-handed
//! convention (`lambda lambda†`) is available through
//! [`MassBasisConvention`]; the two differ by which rotation the CKM sees
//! whenever the texture is not symmetric.

mod mat3;

pub use mat3::{Matrix3, C64};

use alloc::string::String;
use mat3::{svd_right, SvdRight};
use num_complex::Complex;
// Provides f64 math in no_std builds.
#[allow(unused_imports)]
use num_traits::Float;

/// Input unitarity required of caller-supplied rotation matrices.
pub const UNITARITY_INPUT_TOL: f64 = 1e-10;
/// Unitarity guaranteed on produced CKM matrices.
pub const UNITARITY_OUTPUT_TOL: f64 = 1e-12;
/// Relative tie threshold for degenerate singular values.
const DEGENERACY_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FlavorError {
    #[error("{which} is not unitary: ||U†U - I|| = {deviation:e} exceeds {limit:e}")]
    NonUnitary { which: String, deviation: f64, limit: f64 },
    #[error("degenerate parameterization: |U_13| = 1 leaves theta12 and theta23 undefined")]
    DegenerateParameterization,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

/// Which quark sector a Yukawa matrix belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector {
    Up,
    Down,
}

/// A 3x3 complex Yukawa coupling matrix. Serializes as the bare entry
/// matrix (nested [re, im] arrays); deserialized matrices default to the
/// up sector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct YukawaMatrix {
    entries: Matrix3,
    sector: Sector,
}

impl serde::Serialize for YukawaMatrix {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.entries.serialize(serializer)
    }
}

impl<'de> serde::Deserialize<'de> for YukawaMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let entries = Matrix3::deserialize(deserializer)?;
        YukawaMatrix::new(entries, Sector::Up).map_err(serde::de::Error::custom)
    }
}

impl YukawaMatrix {
    pub fn new(entries: Matrix3, sector: Sector) -> Result<Self, FlavorError> {
        if !entries.is_finite() {
            return Err(FlavorError::InvalidParams(String::from(
                "Yukawa entries must be finite",
            )));
        }
        Ok(YukawaMatrix { entries, sector })
    }

    pub fn entries(&self) -> &Matrix3 {
        &self.entries
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn with_sector(mut self, sector: Sector) -> Self {
        self.sector = sector;
        self
    }
}

/// Froggatt-Nielsen texture data: two suppression parameters and a matrix
/// of order-one coefficients.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "FnParamsWire", into = "FnParamsWire")]
pub struct FNParams {
    pub eps1: f64,
    pub eps2: f64,
    pub coeffs: Matrix3,
}

#[derive(serde::Serialize, serde::Deserialize)]
struct FnParamsWire {
    eps1: f64,
    eps2: f64,
    coeffs: Matrix3,
}

impl From<FNParams> for FnParamsWire {
    fn from(p: FNParams) -> Self {
        FnParamsWire { eps1: p.eps1, eps2: p.eps2, coeffs: p.coeffs }
    }
}

impl TryFrom<FnParamsWire> for FNParams {
    type Error = FlavorError;

    fn try_from(w: FnParamsWire) -> Result<Self, FlavorError> {
        FNParams::new(w.eps1, w.eps2, w.coeffs)
    }
}

impl FNParams {
    /// Suppression parameters live in [0, 1); zero is the exact rank-one
    /// limit.
    pub fn new(eps1: f64, eps2: f64, coeffs: Matrix3) -> Result<Self, FlavorError> {
        for (name, eps) in [("eps1", eps1), ("eps2", eps2)] {
            if !(0.0..1.0).contains(&eps) {
                return Err(FlavorError::InvalidParams(alloc::format!(
                    "{name} = {eps} outside [0, 1)"
                )));
            }
        }
        if !coeffs.is_finite() {
            return Err(FlavorError::InvalidParams(String::from("coefficients must be finite")));
        }
        Ok(FNParams { eps1, eps2, coeffs })
    }

    /// Are all coefficient magnitudes inside the order-one band [lo, hi]?
    pub fn coeffs_in_band(&self, lo: f64, hi: f64) -> bool {
        self.coeffs
            .0
            .iter()
            .flatten()
            .all(|a| (lo..=hi).contains(&a.norm()))
    }
}

/// Dimensionless Yukawa eigenvalues, descending. Serializes as a bare
/// 3-array.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct MassSpectrum {
    sigma: [f64; 3],
}

impl MassSpectrum {
    pub fn sigma(&self) -> [f64; 3] {
        self.sigma
    }

    /// Masses at a given electroweak scale v (same units as v).
    pub fn masses(&self, v: f64) -> [f64; 3] {
        [self.sigma[0] * v, self.sigma[1] * v, self.sigma[2] * v]
    }
}

/// Mass-matrix diagonalization conventions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MassBasisConvention {
    /// Diagonalize lambda† lambda (right-handed rotations).
    #[default]
    RightHanded,
    /// Diagonalize lambda lambda† (left-handed rotations, the common
    /// phenomenology convention).
    LeftHanded,
}

/// A CKM matrix with its standard-parameterization data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ckm {
    pub matrix: Matrix3,
    pub theta12: f64,
    pub theta23: f64,
    pub theta13: f64,
    pub delta: f64,
    pub jarlskog: f64,
}

/// Triple-overlap Yukawa: the outer product `c_ij = h u_i v_j`, which has
/// at most one nonzero singular value.
pub fn rank_one_yukawa(u: [C64; 3], v: [C64; 3], h: C64) -> YukawaMatrix {
    YukawaMatrix {
        entries: Matrix3::from_fn(|i, j| h * u[i] * v[j]),
        sector: Sector::Up,
    }
}

/// Froggatt-Nielsen texture `M_ij = a_ij eps1^(i-1) eps2^(j-1)` with
/// 1-based flavor indices; the (1,1) entry is the least suppressed.
pub fn fn_texture(params: &FNParams) -> YukawaMatrix {
    let pow = |eps: f64, k: usize| -> f64 {
        // 0^0 = 1 so the eps = 0 limit keeps the leading entry.
        if k == 0 {
            1.0
        } else {
            eps.powi(k as i32)
        }
    };
    YukawaMatrix {
        entries: Matrix3::from_fn(|i, j| {
            params.coeffs.0[i][j] * pow(params.eps1, i) * pow(params.eps2, j)
        }),
        sector: Sector::Up,
    }
}

/// Diagonalize the paper-convention quadratic form: returns (U, D) with
/// `U lambda† lambda U^{-1} = diag(sigma1², sigma2², sigma3²)`, descending.
///
/// Rows of U are fixed by two conventions: within a degenerate block
/// (relative tie below 1e-12) rows are ordered by descending magnitude of
/// their first, then second component, and each row's largest-magnitude
/// entry is made real positive.
pub fn diagonalize_mass(lambda: &YukawaMatrix) -> (Matrix3, MassSpectrum) {
    diagonalize_mass_with(lambda, MassBasisConvention::RightHanded)
}

/// Diagonalization with an explicit basis convention.
pub fn diagonalize_mass_with(
    lambda: &YukawaMatrix,
    convention: MassBasisConvention,
) -> (Matrix3, MassSpectrum) {
    let work = match convention {
        MassBasisConvention::RightHanded => lambda.entries,
        MassBasisConvention::LeftHanded => lambda.entries.adjoint(),
    };
    let SvdRight { sigma, mut v } = svd_right(&work);

    // Columns of v are the eigenvectors; resolve degenerate ties by the
    // documented component-magnitude order.
    let mut order = [0usize, 1, 2];
    let tied = |a: f64, b: f64| -> bool {
        let scale = sigma[0].max(f64::MIN_POSITIVE);
        (a - b).abs() <= DEGENERACY_REL_TOL * scale
    };
    order.sort_by(|&a, &b| {
        if tied(sigma[a], sigma[b]) {
            let ka = (ordered_f64(-v.0[0][a].norm()), ordered_f64(-v.0[1][a].norm()));
            let kb = (ordered_f64(-v.0[0][b].norm()), ordered_f64(-v.0[1][b].norm()));
            ka.partial_cmp(&kb).unwrap()
        } else {
            sigma[b].partial_cmp(&sigma[a]).unwrap()
        }
    });
    let sigma_sorted = [sigma[order[0]], sigma[order[1]], sigma[order[2]]];
    let v_orig = v;
    for (dst, &src) in order.iter().enumerate() {
        for i in 0..3 {
            v.0[i][dst] = v_orig.0[i][src];
        }
    }
    // Phase convention: largest component of each U row (= conjugate of a
    // v column) real positive.
    for j in 0..3 {
        let m = (0..3)
            .max_by(|&a, &b| v.0[a][j].norm().partial_cmp(&v.0[b][j].norm()).unwrap())
            .unwrap();
        let pivot = v.0[m][j];
        if pivot.norm() > 0.0 {
            let phase = pivot / pivot.norm();
            for i in 0..3 {
                v.0[i][j] *= phase.conj();
            }
        }
    }
    (v.adjoint(), MassSpectrum { sigma: sigma_sorted })
}

fn ordered_f64(x: f64) -> i64 {
    // Total order on finite f64 via the sign-magnitude trick.
    let bits = x.to_bits() as i64;
    if bits < 0 {
        i64::MIN ^ bits
    } else {
        bits
    }
}

/// CKM matrix from the two sector rotations: `U_u U_d^{-1}`.
///
/// Inputs must be unitary to 1e-10; the product is polished back to
/// unitarity below 1e-12 (a Newton polar step changes entries by at most
/// the input deviation).
pub fn ckm(u_up: &Matrix3, u_down: &Matrix3) -> Result<Ckm, FlavorError> {
    for (name, m) in [("U_u", u_up), ("U_d", u_down)] {
        let dev = m.unitarity_deviation();
        if dev > UNITARITY_INPUT_TOL {
            return Err(FlavorError::NonUnitary {
                which: String::from(name),
                deviation: dev,
                limit: UNITARITY_INPUT_TOL,
            });
        }
    }
    let mut product = u_up.mul(&u_down.adjoint());
    for _ in 0..4 {
        if product.unitarity_deviation() <= UNITARITY_OUTPUT_TOL {
            break;
        }
        // product <- product (3I - product† product) / 2
        let correction = Matrix3::identity()
            .scale(3.0)
            .sub(&product.adjoint().mul(&product));
        product = product.mul(&correction).scale(0.5);
    }
    let j = jarlskog(&product);
    let phases = canonical_phases(&product)?;
    Ok(Ckm {
        matrix: product,
        theta12: phases.theta12,
        theta23: phases.theta23,
        theta13: phases.theta13,
        delta: phases.delta,
        jarlskog: j,
    })
}

/// Standard-parameterization data recovered from a unitary matrix.
#[derive(Debug, Clone, Copy)]
pub struct CanonicalPhases {
    pub theta12: f64,
    pub theta23: f64,
    pub theta13: f64,
    pub delta: f64,
    pub rephased: Matrix3,
}

/// Recover the three angles and the CP phase of the standard
/// parameterization from entry magnitudes and the rephasing-invariant
/// quartet, plus the diagonally-rephased matrix in standard form.
///
/// When the quartet degenerates (any mixing angle at 0 or pi/2) the phase
/// is unobservable and delta = 0 by convention.
pub fn canonical_phases(u: &Matrix3) -> Result<CanonicalPhases, FlavorError> {
    let dev = u.unitarity_deviation();
    if dev > UNITARITY_INPUT_TOL {
        return Err(FlavorError::NonUnitary {
            which: String::from("U"),
            deviation: dev,
            limit: UNITARITY_INPUT_TOL,
        });
    }
    let s13 = u.0[0][2].norm().min(1.0);
    let c13 = (1.0 - s13 * s13).sqrt();
    if c13 < 1e-9 {
        return Err(FlavorError::DegenerateParameterization);
    }
    let theta13 = s13.asin();
    let theta12 = f64::atan2(u.0[0][1].norm(), u.0[0][0].norm());
    let theta23 = f64::atan2(u.0[1][2].norm(), u.0[2][2].norm());
    let (s12, c12) = theta12.sin_cos();
    let (s23, c23) = theta23.sin_cos();

    // Quartet P = U_12 U_23 conj(U_13) conj(U_22) is invariant under
    // diagonal rephasing; in standard form
    // P = s12 s23 s13 c13² (c12 c23 e^{i delta} - s12 s23 s13).
    let prefactor = s12 * s23 * s13 * c13 * c13;
    let delta = if prefactor < 1e-28 || c12 * c23 < 1e-14 {
        0.0
    } else {
        let p = u.0[0][1] * u.0[1][2] * u.0[0][2].conj() * u.0[1][1].conj();
        let e_i_delta = (p / prefactor + s12 * s23 * s13) / (c12 * c23);
        let d = f64::atan2(e_i_delta.im, e_i_delta.re);
        if d == 0.0 {
            0.0
        } else {
            d
        }
    };
    let target = standard_form(theta12, theta23, theta13, delta);
    let rephased = rephase_to(u, &target);
    Ok(CanonicalPhases { theta12, theta23, theta13, delta, rephased })
}

/// The standard-parameterization matrix for given angles and phase.
pub fn standard_form(theta12: f64, theta23: f64, theta13: f64, delta: f64) -> Matrix3 {
    let (s12, c12) = theta12.sin_cos();
    let (s23, c23) = theta23.sin_cos();
    let (s13, c13) = theta13.sin_cos();
    let e = Complex::from_polar(1.0, delta);
    let em = e.conj();
    let r = |x: f64| C64::new(x, 0.0);
    Matrix3([
        [r(c12 * c13), r(s12 * c13), r(s13) * em],
        [
            r(-s12 * c23) - r(c12 * s23 * s13) * e,
            r(c12 * c23) - r(s12 * s23 * s13) * e,
            r(s23 * c13),
        ],
        [
            r(s12 * s23) - r(c12 * c23 * s13) * e,
            r(-c12 * s23) - r(s12 * c23 * s13) * e,
            r(c23 * c13),
        ],
    ])
}

/// Find diagonal phase matrices L, R with L u R = target (entrywise where
/// the magnitudes permit) and return the rephased matrix.
fn rephase_to(u: &Matrix3, target: &Matrix3) -> Matrix3 {
    const NEGLIGIBLE: f64 = 1e-12;
    // Phases: alpha_i + beta_j = arg(target_ij) - arg(u_ij) on entries of
    // significant magnitude. Solve by BFS over the bipartite entry graph;
    // disconnected components keep a free overall phase set to zero.
    let mut alpha = [None::<f64>; 3];
    let mut beta = [None::<f64>; 3];
    loop {
        let seed = (0..3).find(|&i| {
            alpha[i].is_none() && (0..3).any(|j| u.0[i][j].norm() > NEGLIGIBLE)
        });
        let Some(seed) = seed else { break };
        alpha[seed] = Some(0.0);
        let mut changed = true;
        while changed {
            changed = false;
            for (i, row) in u.0.iter().enumerate() {
                for (j, entry) in row.iter().enumerate() {
                    if entry.norm() <= NEGLIGIBLE {
                        continue;
                    }
                    let need = (target.0[i][j] / entry).arg();
                    match (alpha[i], beta[j]) {
                        (Some(a), None) => {
                            beta[j] = Some(need - a);
                            changed = true;
                        }
                        (None, Some(b)) => {
                            alpha[i] = Some(need - b);
                            changed = true;
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    let l: [C64; 3] = core::array::from_fn(|i| Complex::from_polar(1.0, alpha[i].unwrap_or(0.0)));
    let r: [C64; 3] = core::array::from_fn(|j| Complex::from_polar(1.0, beta[j].unwrap_or(0.0)));
    Matrix3::from_fn(|i, j| l[i] * u.0[i][j] * r[j])
}

/// The rephasing-invariant CP measure `Im(U_11 U_22 conj(U_12) conj(U_21))`.
pub fn jarlskog(u: &Matrix3) -> f64 {
    (u.0[0][0] * u.0[1][1] * u.0[0][1].conj() * u.0[1][0].conj()).im
}

/// The paper's epsilon-power CKM magnitude estimate.
pub fn ckm_texture_estimate(eps: f64) -> [[f64; 3]; 3] {
    let e2 = eps * eps;
    let e3 = e2 * eps;
    [[1.0, eps, e3], [eps, 1.0, e2], [e3, e2, 1.0]]
}
