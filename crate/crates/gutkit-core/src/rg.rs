//! One-loop renormalization-group running of the three gauge couplings.
//!
//! Running is piecewise closed form,
//! `alpha_i^{-1}(mu) = alpha_i^{-1}(mu0) - b_i/(2 pi) ln(mu/mu0)`,
//! with exact rational beta coefficients per regime segment. The U(1)
//! coupling is stored GUT-normalized, `alpha_1 = (5/3) alpha_Y`, the
//! normalization forced by embedding hypercharge in a simple group.

use alloc::string::String;
use alloc::vec::Vec;
use num_rational::Ratio;
// Float provides f64 math in no_std builds.
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::ToPrimitive;

use crate::liealg::{dynkin_index, weyl_dimension, AlgebraId, Irrep, Series};

const TWO_PI: f64 = core::f64::consts::TAU;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RgError {
    #[error("invalid run plan: {0}")]
    InvalidPlan(String),
    #[error("alpha_{coupling}^-1 crosses zero at mu = {scale:.4e} GeV (Landau pole)")]
    LandauPole { coupling: usize, scale: f64 },
    #[error("no unification: {0}")]
    NoUnification(String),
    #[error("invalid field content: {0}")]
    InvalidContent(String),
}

/// The three inverse couplings at a scale. `inv_alpha[0]` is
/// GUT-normalized: `alpha_1^{-1} = (3/5) alpha_Y^{-1}`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CouplingState {
    pub mu: f64,
    pub inv_alpha: [f64; 3],
}

impl CouplingState {
    pub fn new(mu: f64, inv_alpha: [f64; 3]) -> Result<Self, RgError> {
        if !mu.is_finite() || mu <= 0.0 {
            return Err(RgError::InvalidPlan(alloc::format!("scale mu = {mu} must be positive")));
        }
        if inv_alpha.iter().any(|a| !a.is_finite() || *a <= 0.0) {
            return Err(RgError::InvalidPlan(alloc::format!(
                "inverse couplings {inv_alpha:?} must be positive and finite"
            )));
        }
        Ok(CouplingState { mu, inv_alpha })
    }

    /// Build the inverse couplings from electroweak data at scale `mu`:
    /// the weak mixing angle, the electromagnetic coupling, and the strong
    /// coupling. These are configuration inputs, not built-in constants.
    pub fn from_electroweak(
        mu: f64,
        sin2_theta_w: f64,
        alpha_em_inv: f64,
        alpha_s: f64,
    ) -> Result<Self, RgError> {
        if !(0.0 < sin2_theta_w && sin2_theta_w < 1.0) || alpha_em_inv <= 0.0 || alpha_s <= 0.0 {
            return Err(RgError::InvalidPlan(String::from(
                "electroweak inputs out of range",
            )));
        }
        let inv_alpha2 = sin2_theta_w * alpha_em_inv;
        let inv_alpha_y = (1.0 - sin2_theta_w) * alpha_em_inv;
        let inv_alpha1 = 0.6 * inv_alpha_y;
        CouplingState::new(mu, [inv_alpha1, inv_alpha2, inv_alpha_s(alpha_s)])
    }
}

fn inv_alpha_s(alpha_s: f64) -> f64 {
    1.0 / alpha_s
}

/// Exact one-loop beta coefficients for a regime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaCoefficients {
    pub b: [Ratio<i64>; 3],
    pub regime: String,
}

impl BetaCoefficients {
    pub fn new(b: [Ratio<i64>; 3], regime: impl Into<String>) -> Self {
        BetaCoefficients { b, regime: regime.into() }
    }

    fn b_f64(&self, i: usize) -> f64 {
        self.b[i].to_f64().expect("rational beta fits in f64")
    }
}

/// A running plan: an initial state and the ordered regime thresholds.
/// `thresholds[k]` applies from its scale upward to the next threshold;
/// the first threshold must not exceed the initial scale so the plan
/// covers it.
#[derive(Debug, Clone, PartialEq)]
pub struct RunPlan {
    pub initial: CouplingState,
    pub thresholds: Vec<(f64, BetaCoefficients)>,
}

impl RunPlan {
    pub fn new(
        initial: CouplingState,
        thresholds: Vec<(f64, BetaCoefficients)>,
    ) -> Result<Self, RgError> {
        if thresholds.is_empty() {
            return Err(RgError::InvalidPlan(String::from("at least one regime is required")));
        }
        for w in thresholds.windows(2) {
            if w[1].0 <= w[0].0 || !w[1].0.is_finite() {
                return Err(RgError::InvalidPlan(alloc::format!(
                    "thresholds must be strictly increasing: {} then {}",
                    w[0].0,
                    w[1].0
                )));
            }
        }
        if thresholds[0].0 > initial.mu {
            return Err(RgError::InvalidPlan(alloc::format!(
                "first threshold {} GeV lies above the initial scale {} GeV",
                thresholds[0].0,
                initial.mu
            )));
        }
        Ok(RunPlan { initial, thresholds })
    }

    /// The beta coefficients in force at scale mu.
    fn regime_at(&self, mu: f64) -> &BetaCoefficients {
        let idx = self
            .thresholds
            .iter()
            .rposition(|(t, _)| *t <= mu)
            .unwrap_or(0);
        &self.thresholds[idx].1
    }

    /// Segment boundaries strictly between two scales, in walking order.
    fn crossings(&self, from: f64, to: f64) -> Vec<f64> {
        let mut pts: Vec<f64> = self
            .thresholds
            .iter()
            .map(|(t, _)| *t)
            .filter(|t| (from.min(to) < *t) && (*t < from.max(to)))
            .collect();
        if to < from {
            pts.reverse();
        }
        pts
    }
}

/// Advance one closed-form segment; errors when a coupling crosses zero.
fn step(state: &CouplingState, beta: &BetaCoefficients, mu: f64) -> Result<CouplingState, RgError> {
    let l = (mu / state.mu).ln();
    let mut inv_alpha = [0.0f64; 3];
    for (i, out) in inv_alpha.iter_mut().enumerate() {
        *out = state.inv_alpha[i] - beta.b_f64(i) / TWO_PI * l;
        if *out <= 0.0 {
            // Closed-form crossing scale within this segment.
            let scale = state.mu * f64::exp(TWO_PI * state.inv_alpha[i] / beta.b_f64(i));
            return Err(RgError::LandauPole { coupling: i + 1, scale });
        }
    }
    Ok(CouplingState { mu, inv_alpha })
}

/// Run the plan to a target scale (up or down), exact segment bookkeeping.
pub fn run(plan: &RunPlan, mu_target: f64) -> Result<CouplingState, RgError> {
    if !mu_target.is_finite() || mu_target <= 0.0 {
        return Err(RgError::InvalidPlan(alloc::format!(
            "target scale {mu_target} must be positive"
        )));
    }
    let mut state = plan.initial;
    for boundary in plan.crossings(state.mu, mu_target) {
        let beta = if boundary > state.mu {
            plan.regime_at(state.mu)
        } else {
            // Walking down: the regime below the boundary applies after it.
            plan.regime_at(state.mu.min(boundary * (1.0 + 1e-15)))
        };
        state = step(&state, beta, boundary)?;
    }
    if mu_target != state.mu {
        let beta = if mu_target > state.mu {
            plan.regime_at(state.mu)
        } else {
            plan.regime_at(mu_target)
        };
        state = step(&state, beta, mu_target)?;
    }
    Ok(state)
}

/// Result of the unification-scale solve.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Unification {
    pub mu_star: f64,
    pub alpha_gut: f64,
    pub sqrt_alpha_gut: f64,
    /// |alpha_3^{-1} - alpha_1^{-1}| / alpha_1^{-1} at mu_star.
    pub mismatch: f64,
}

/// Solve `alpha_1^{-1}(mu) = alpha_2^{-1}(mu)` in closed form in the
/// topmost regime.
pub fn unification_scale(plan: &RunPlan) -> Result<Unification, RgError> {
    let (top_scale, top_beta) = plan.thresholds.last().expect("plan has regimes");
    let b1 = top_beta.b[0];
    let b2 = top_beta.b[1];
    if b1 == b2 {
        return Err(RgError::NoUnification(alloc::format!(
            "b1 = b2 = {b1} in regime {:?}: the couplings run parallel",
            top_beta.regime
        )));
    }
    let anchor_mu = top_scale.max(plan.initial.mu);
    let anchor = run(plan, anchor_mu)?;
    let delta = anchor.inv_alpha[0] - anchor.inv_alpha[1];
    let slope = (top_beta.b_f64(0) - top_beta.b_f64(1)) / TWO_PI;
    let log_ratio = delta / slope;
    if log_ratio < 0.0 {
        return Err(RgError::NoUnification(alloc::format!(
            "alpha_1 and alpha_2 diverge above {anchor_mu:.3e} GeV"
        )));
    }
    let mu_star = anchor_mu * log_ratio.exp();
    let at_star = run(plan, mu_star)?;
    let inv1 = at_star.inv_alpha[0];
    let alpha_gut = 1.0 / inv1;
    Ok(Unification {
        mu_star,
        alpha_gut,
        sqrt_alpha_gut: alpha_gut.sqrt(),
        mismatch: (at_star.inv_alpha[2] - inv1).abs() / inv1,
    })
}

/// Statistics classes entering the one-loop matter sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatClass {
    /// Two-component fermion: contributes 2/3 T(R) (non-SUSY regimes).
    WeylFermion,
    /// Complex scalar: contributes 1/3 T(R) (non-SUSY regimes).
    ComplexScalar,
    /// Chiral supermultiplet: contributes T(R) (SUSY regimes).
    ChiralMultiplet,
}

/// Matter regime selector for `beta_from_content`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    NonSusy,
    Susy,
}

/// One field of standard-model matter: irreps under SU(3) and SU(2) plus
/// the hypercharge in the integer normalization where the quark doublet
/// carries -1 and the lepton doublet +3 (six times the conventional
/// magnitude).
#[derive(Debug, Clone, PartialEq)]
pub struct SmField {
    pub su3: Irrep,
    pub su2: Irrep,
    pub hypercharge: Ratio<i64>,
    pub class: StatClass,
    pub multiplicity: u32,
}

impl SmField {
    pub fn new(
        su3_labels: [i64; 2],
        su2_labels: [i64; 1],
        hypercharge: Ratio<i64>,
        class: StatClass,
        multiplicity: u32,
    ) -> Self {
        let a2 = AlgebraId::new(Series::A, 2).unwrap();
        let a1 = AlgebraId::new(Series::A, 1).unwrap();
        SmField {
            su3: Irrep::new(a2, su3_labels.to_vec()).unwrap(),
            su2: Irrep::new(a1, su2_labels.to_vec()).unwrap(),
            hypercharge,
            class,
            multiplicity,
        }
    }
}

/// One-loop beta coefficients from explicit field content; all sums in
/// exact rational arithmetic with Dynkin indices from the representation
/// theory module.
pub fn beta_from_content(content: &[SmField], regime: Regime) -> Result<BetaCoefficients, RgError> {
    let a2 = AlgebraId::new(Series::A, 2).unwrap();
    let a1 = AlgebraId::new(Series::A, 1).unwrap();
    // C2(G) = T(adjoint).
    let c2_su3 = dynkin_index(&Irrep::adjoint(a2)).expect("small irrep");
    let c2_su2 = dynkin_index(&Irrep::adjoint(a1)).expect("small irrep");
    let gauge_factor = match regime {
        Regime::NonSusy => Ratio::new(-11, 3),
        Regime::Susy => Ratio::from_integer(-3),
    };
    let mut b = [gauge_factor * c2_su3, gauge_factor * c2_su2, Ratio::from_integer(0)];
    // Order: [0] = U(1), [1] = SU(2), [2] = SU(3) in the output; build as
    // (su3, su2, u1) then reverse.
    for field in content {
        let weight = match (regime, field.class) {
            (Regime::NonSusy, StatClass::WeylFermion) => Ratio::new(2, 3),
            (Regime::NonSusy, StatClass::ComplexScalar) => Ratio::new(1, 3),
            (Regime::Susy, StatClass::ChiralMultiplet) => Ratio::from_integer(1),
            (r, c) => {
                return Err(RgError::InvalidContent(alloc::format!(
                    "statistics class {c:?} is not valid in the {r:?} regime"
                )))
            }
        };
        let d3 = weyl_dimension(&field.su3).expect("small irrep") as i64;
        let d2 = weyl_dimension(&field.su2).expect("small irrep") as i64;
        let t3 = dynkin_index(&field.su3).expect("small irrep");
        let t2 = dynkin_index(&field.su2).expect("small irrep");
        let mult = Ratio::from_integer(field.multiplicity as i64);
        // GUT-normalized U(1): T_1(R) = (3/5) (q/6)^2 dim(R).
        let y = field.hypercharge / Ratio::from_integer(6);
        let t1 = Ratio::new(3, 5) * y * y * Ratio::from_integer(d3 * d2);
        b[0] += weight * mult * t3 * Ratio::from_integer(d2);
        b[1] += weight * mult * t2 * Ratio::from_integer(d3);
        b[2] += weight * mult * t1;
    }
    let regime_name = match regime {
        Regime::NonSusy => "non-SUSY",
        Regime::Susy => "SUSY",
    };
    Ok(BetaCoefficients::new([b[2], b[1], b[0]], regime_name))
}

/// Three generations of the standard-model fermion list plus `n_higgs`
/// Higgs doublets, in the given statistics classes.
fn generations(class: StatClass, higgs_class: StatClass, n_higgs: u32) -> Vec<SmField> {
    let q = |n: i64| Ratio::from_integer(n);
    alloc::vec![
        // (3,2)_{-1}: quark doublet
        SmField::new([1, 0], [1], q(-1), class, 3),
        // (3bar,1)_{4}: up antiquark
        SmField::new([0, 1], [0], q(4), class, 3),
        // (3bar,1)_{-2}: down antiquark
        SmField::new([0, 1], [0], q(-2), class, 3),
        // (1,2)_{3}: lepton doublet
        SmField::new([0, 0], [1], q(3), class, 3),
        // (1,1)_{-6}: positron
        SmField::new([0, 0], [0], q(-6), class, 3),
        // Higgs doublets (1,2)_{±3}; hypercharge enters squared.
        SmField::new([0, 0], [1], q(3), higgs_class, n_higgs),
    ]
}

/// Standard Model content: three generations and one Higgs doublet.
pub fn standard_model_content() -> Vec<SmField> {
    generations(StatClass::WeylFermion, StatClass::ComplexScalar, 1)
}

/// MSSM content: three generations and two Higgs doublets, all chiral.
pub fn mssm_content() -> Vec<SmField> {
    generations(StatClass::ChiralMultiplet, StatClass::ChiralMultiplet, 2)
}

/// The Standard Model regime coefficients (41/10, -19/6, -7).
pub fn sm_betas() -> BetaCoefficients {
    let mut b = beta_from_content(&standard_model_content(), Regime::NonSusy)
        .expect("fixed content is valid");
    b.regime = String::from("SM");
    b
}

/// The MSSM regime coefficients (33/5, 1, -3).
pub fn mssm_betas() -> BetaCoefficients {
    let mut b =
        beta_from_content(&mssm_content(), Regime::Susy).expect("fixed content is valid");
    b.regime = String::from("MSSM");
    b
}
