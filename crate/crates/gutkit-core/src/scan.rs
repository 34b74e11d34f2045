//! Deterministic Monte Carlo ensembles over order-one texture
//! coefficients, summary statistics, and derivative-free fitting of the
//! suppression parameter.
//!
//! Reproducibility contract: every sample is generated from its own
//! ChaCha8 stream keyed by (seed, sample index, sector), with entries
//! drawn in row-major order, so results do not depend on evaluation
//! order and identical configs give identical results bit for bit.
//! Reductions store per-sample values and sort, never accumulate.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use num_complex::Complex;
// Provides f64 math in no_std builds.
#[allow(unused_imports)]
use num_traits::Float;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::flavor::{
    ckm, diagonalize_mass, fn_texture, FNParams, Matrix3, Sector,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScanError {
    #[error("invalid scan config: {0}")]
    InvalidConfig(String),
    #[error("invalid targets: {0}")]
    InvalidTargets(String),
}

/// Ensemble configuration.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct ScanConfig {
    pub n_samples: u32,
    pub seed: u64,
    /// (eps1, eps2) for the up-sector texture.
    pub eps_up: (f64, f64),
    /// (eps1, eps2) for the down sector; ignored when `share_eps` is set.
    pub eps_down: (f64, f64),
    /// Use `eps_up` for both sectors.
    pub share_eps: bool,
    /// Magnitude band for the order-one coefficients, log-uniform.
    pub coeff_band: (f64, f64),
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            n_samples: 10_000,
            seed: 42,
            eps_up: (0.2, 0.2),
            eps_down: (0.2, 0.2),
            share_eps: true,
            coeff_band: (1.0 / 3.0, 3.0),
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<(), ScanError> {
        if self.n_samples < 1 {
            return Err(ScanError::InvalidConfig(String::from("n_samples must be >= 1")));
        }
        let (lo, hi) = self.coeff_band;
        if !(0.0 < lo && lo < hi) {
            return Err(ScanError::InvalidConfig(alloc::format!(
                "coefficient band ({lo}, {hi}) must satisfy 0 < lo < hi"
            )));
        }
        for (name, (e1, e2)) in [("eps_up", self.eps_up), ("eps_down", self.eps_down)] {
            for e in [e1, e2] {
                if !(0.0..1.0).contains(&e) {
                    return Err(ScanError::InvalidConfig(alloc::format!(
                        "{name} component {e} outside [0, 1)"
                    )));
                }
            }
        }
        Ok(())
    }

    fn eps_for(&self, sector: Sector) -> (f64, f64) {
        match sector {
            Sector::Up => self.eps_up,
            Sector::Down => {
                if self.share_eps {
                    self.eps_up
                } else {
                    self.eps_down
                }
            }
        }
    }
}

/// Median and 16th/84th percentiles of one observable.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Summary {
    pub p16: f64,
    pub median: f64,
    pub p84: f64,
}

/// Per-observable summaries over the ensemble.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ScanResult {
    pub up_sigma21: Summary,
    pub up_sigma32: Summary,
    pub down_sigma21: Summary,
    pub down_sigma32: Summary,
    pub ckm_u12: Summary,
    pub ckm_u23: Summary,
    pub ckm_u13: Summary,
    pub jarlskog_abs: Summary,
}

impl ScanResult {
    /// (name, summary) rows in a fixed order, for tabular output.
    pub fn rows(&self) -> [(&'static str, Summary); 8] {
        [
            ("up_sigma21", self.up_sigma21),
            ("up_sigma32", self.up_sigma32),
            ("down_sigma21", self.down_sigma21),
            ("down_sigma32", self.down_sigma32),
            ("ckm_u12", self.ckm_u12),
            ("ckm_u23", self.ckm_u23),
            ("ckm_u13", self.ckm_u13),
            ("jarlskog_abs", self.jarlskog_abs),
        ]
    }
}

/// Draw the order-one coefficient matrix for one (sample, sector):
/// magnitudes log-uniform on the band, phases uniform, from the sample's
/// own ChaCha stream.
pub fn sample_coefficients(config: &ScanConfig, sample_index: u64, sector: Sector) -> Matrix3 {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let sector_tag = match sector {
        Sector::Up => 0u64,
        Sector::Down => 1u64,
    };
    rng.set_stream(2 * sample_index + sector_tag);
    let (lo, hi) = config.coeff_band;
    let log_span = (hi / lo).ln();
    Matrix3::from_fn(|_, _| {
        let mag = lo * (rng.random::<f64>() * log_span).exp();
        let phase = rng.random::<f64>() * core::f64::consts::TAU;
        Complex::from_polar(mag, phase)
    })
}

/// The eight observables of one sample.
#[derive(Debug, Clone, Copy)]
struct SampleObs {
    up_s21: f64,
    up_s32: f64,
    down_s21: f64,
    down_s32: f64,
    u12: f64,
    u23: f64,
    u13: f64,
    j: f64,
}

fn evaluate_sample(config: &ScanConfig, idx: u64) -> SampleObs {
    let sector_data = |sector: Sector| {
        let coeffs = sample_coefficients(config, idx, sector);
        let (e1, e2) = config.eps_for(sector);
        let params = FNParams::new(e1, e2, coeffs).expect("validated eps range");
        let y = fn_texture(&params).with_sector(sector);
        diagonalize_mass(&y)
    };
    let (u_up, d_up) = sector_data(Sector::Up);
    let (u_down, d_down) = sector_data(Sector::Down);
    let k = ckm(&u_up, &u_down).expect("rotations from the SVD are unitary");
    let ratio = |s: [f64; 3], i: usize, j: usize| if s[j] > 0.0 { s[i] / s[j] } else { 0.0 };
    let su = d_up.sigma();
    let sd = d_down.sigma();
    SampleObs {
        up_s21: ratio(su, 1, 0),
        up_s32: ratio(su, 2, 1),
        down_s21: ratio(sd, 1, 0),
        down_s32: ratio(sd, 2, 1),
        u12: k.matrix.0[0][1].norm(),
        u23: k.matrix.0[1][2].norm(),
        u13: k.matrix.0[0][2].norm(),
        j: k.jarlskog.abs(),
    }
}

/// Run the ensemble. Samples are independent work units; the reduction is
/// a sort, so any evaluation order gives the same result.
pub fn run_scan(config: &ScanConfig) -> Result<ScanResult, ScanError> {
    config.validate()?;
    let n = config.n_samples as usize;
    let mut columns: [Vec<f64>; 8] = core::array::from_fn(|_| Vec::with_capacity(n));
    for idx in 0..config.n_samples as u64 {
        let o = evaluate_sample(config, idx);
        for (col, x) in columns.iter_mut().zip([
            o.up_s21, o.up_s32, o.down_s21, o.down_s32, o.u12, o.u23, o.u13, o.j,
        ]) {
            col.push(x);
        }
    }
    let mut summaries: [Summary; 8] = [Summary { p16: 0.0, median: 0.0, p84: 0.0 }; 8];
    for (s, col) in summaries.iter_mut().zip(columns.iter_mut()) {
        col.sort_by(|a, b| a.partial_cmp(b).expect("observables are finite"));
        *s = Summary {
            p16: percentile(col, 0.16),
            median: percentile(col, 0.5),
            p84: percentile(col, 0.84),
        };
    }
    Ok(ScanResult {
        up_sigma21: summaries[0],
        up_sigma32: summaries[1],
        down_sigma21: summaries[2],
        down_sigma32: summaries[3],
        ckm_u12: summaries[4],
        ckm_u23: summaries[5],
        ckm_u13: summaries[6],
        jarlskog_abs: summaries[7],
    })
}

/// Linear-interpolation percentile of a sorted slice.
fn percentile(sorted: &[f64], p: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let pos = p * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] * (1.0 - frac) + sorted[hi] * frac
}

/// Observable targets for the fit; absent entries are ignored. Values are
/// dimensionless ratios or |CKM| entries in (0, 1].
#[derive(Debug, Clone, PartialEq, Default, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct Targets {
    pub up_sigma21: Option<f64>,
    pub up_sigma32: Option<f64>,
    pub down_sigma21: Option<f64>,
    pub down_sigma32: Option<f64>,
    pub ckm_u12: Option<f64>,
    pub ckm_u23: Option<f64>,
    pub ckm_u13: Option<f64>,
    /// Free-form provenance notes per entry.
    pub provenance: BTreeMap<String, String>,
}

impl Targets {
    pub fn validate(&self) -> Result<(), ScanError> {
        let all = [
            ("up_sigma21", self.up_sigma21),
            ("up_sigma32", self.up_sigma32),
            ("down_sigma21", self.down_sigma21),
            ("down_sigma32", self.down_sigma32),
            ("ckm_u12", self.ckm_u12),
            ("ckm_u23", self.ckm_u23),
            ("ckm_u13", self.ckm_u13),
        ];
        let mut any = false;
        for (name, v) in all {
            if let Some(x) = v {
                any = true;
                if !(0.0 < x && x <= 1.0) {
                    return Err(ScanError::InvalidTargets(alloc::format!(
                        "{name} = {x} outside (0, 1]"
                    )));
                }
            }
        }
        if !any {
            return Err(ScanError::InvalidTargets(String::from("no targets supplied")));
        }
        Ok(())
    }

    fn residuals(&self, r: &ScanResult) -> f64 {
        let pairs = [
            (self.up_sigma21, r.up_sigma21.median),
            (self.up_sigma32, r.up_sigma32.median),
            (self.down_sigma21, r.down_sigma21.median),
            (self.down_sigma32, r.down_sigma32.median),
            (self.ckm_u12, r.ckm_u12.median),
            (self.ckm_u23, r.ckm_u23.median),
            (self.ckm_u13, r.ckm_u13.median),
        ];
        pairs
            .iter()
            .filter_map(|(t, m)| t.map(|t| (m.max(1e-300).ln() - t.ln()).powi(2)))
            .sum()
    }
}

/// Fit search window and resolution.
const FIT_EPS_LO: f64 = 0.01;
const FIT_EPS_HI: f64 = 0.5;
const FIT_GRID_POINTS: usize = 17;
const GOLDEN: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct FitDiagnostics {
    pub evaluations: u32,
    pub at_lower_bound: bool,
    pub at_upper_bound: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct FitResult {
    pub eps_up: f64,
    pub eps_down: f64,
    pub objective: f64,
    pub diagnostics: FitDiagnostics,
}

/// Fit the suppression parameter to the targets: log-grid scan over
/// [0.01, 0.5] refined by golden-section search around the grid minimum.
/// Deterministic for a fixed config seed. With `share_eps` a single shared
/// epsilon is fitted; otherwise the two sectors are fitted by coordinate
/// descent on the same grid.
pub fn fit_epsilon(targets: &Targets, config: &ScanConfig) -> Result<FitResult, ScanError> {
    targets.validate()?;
    config.validate()?;
    let mut evals = 0u32;
    let mut eval = |eps_up: f64, eps_down: f64| -> Result<f64, ScanError> {
        evals += 1;
        let mut c = config.clone();
        c.eps_up = (eps_up, eps_up);
        c.eps_down = (eps_down, eps_down);
        let r = run_scan(&c)?;
        Ok(targets.residuals(&r))
    };

    let grid: Vec<f64> = (0..FIT_GRID_POINTS)
        .map(|i| {
            let t = i as f64 / (FIT_GRID_POINTS - 1) as f64;
            FIT_EPS_LO * (FIT_EPS_HI / FIT_EPS_LO).powf(t)
        })
        .collect();

    if config.share_eps {
        let mut best = (f64::INFINITY, 0usize);
        for (i, &e) in grid.iter().enumerate() {
            let f = eval(e, e)?;
            if f < best.0 {
                best = (f, i);
            }
        }
        let i = best.1;
        let at_lower = i == 0;
        let at_upper = i == grid.len() - 1;
        let (lo, hi) = (
            grid[i.saturating_sub(1)],
            grid[(i + 1).min(grid.len() - 1)],
        );
        let (eps, obj) = golden_section(&mut |e| eval(e, e), lo, hi)?;
        let note = if at_lower || at_upper {
            Some(String::from(
                "objective minimized at the search boundary; targets carry no interior optimum",
            ))
        } else {
            None
        };
        Ok(FitResult {
            eps_up: eps,
            eps_down: eps,
            objective: obj,
            diagnostics: FitDiagnostics {
                evaluations: evals,
                at_lower_bound: at_lower,
                at_upper_bound: at_upper,
                note,
            },
        })
    } else {
        // Coarse joint grid, then one golden pass per coordinate.
        let coarse: Vec<f64> = grid.iter().copied().step_by(2).collect();
        let mut best = (f64::INFINITY, 0usize, 0usize);
        for (i, &eu) in coarse.iter().enumerate() {
            for (j, &ed) in coarse.iter().enumerate() {
                let f = eval(eu, ed)?;
                if f < best.0 {
                    best = (f, i, j);
                }
            }
        }
        let bracket = |v: &Vec<f64>, k: usize| {
            (v[k.saturating_sub(1)], v[(k + 1).min(v.len() - 1)])
        };
        let (lo_u, hi_u) = bracket(&coarse, best.1);
        let fixed_d = coarse[best.2];
        let (eps_u, _) = golden_section(&mut |e| eval(e, fixed_d), lo_u, hi_u)?;
        let (lo_d, hi_d) = bracket(&coarse, best.2);
        let (eps_d, obj) = golden_section(&mut |e| eval(eps_u, e), lo_d, hi_d)?;
        let at_lower = best.1 == 0 || best.2 == 0;
        let at_upper = best.1 == coarse.len() - 1 || best.2 == coarse.len() - 1;
        Ok(FitResult {
            eps_up: eps_u,
            eps_down: eps_d,
            objective: obj,
            diagnostics: FitDiagnostics {
                evaluations: evals,
                at_lower_bound: at_lower,
                at_upper_bound: at_upper,
                note: None,
            },
        })
    }
}

/// Golden-section minimization in log space; the number of iterations is
/// fixed by the bracket width, keeping the search deterministic.
fn golden_section(
    f: &mut impl FnMut(f64) -> Result<f64, ScanError>,
    lo: f64,
    hi: f64,
) -> Result<(f64, f64), ScanError> {
    let (mut a, mut b) = (lo.ln(), hi.ln());
    let mut c = b - GOLDEN * (b - a);
    let mut d = a + GOLDEN * (b - a);
    let mut fc = f(c.exp())?;
    let mut fd = f(d.exp())?;
    while (b - a) > 1e-3 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - GOLDEN * (b - a);
            fc = f(c.exp())?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + GOLDEN * (b - a);
            fd = f(d.exp())?;
        }
    }
    let (x, fx) = if fc < fd { (c, fc) } else { (d, fd) };
    Ok((x.exp(), fx))
}
