//! Symmetry breaking along a U(1) direction in the Cartan subalgebra: the
//! commutant is the sub-root-system annihilated by the charge functional.

use alloc::vec::Vec;
use num_rational::Ratio;

use super::embed::{classify_component_pub, split_components_pub, Embedding};
use super::roots::RootSystem;
use super::{AlgebraId, LieError, Series};

/// Result of breaking `algebra` along a Cartan direction: the commutant's
/// simple factors plus the embedding that carries the supplied charge
/// functional (for branching supplied irreps).
#[derive(Debug, Clone)]
pub struct CommutantBreaking {
    pub algebra: AlgebraId,
    /// Simple factors of the commutant, largest first.
    pub commutant: Vec<AlgebraId>,
    /// Rank deficit; the broken U(1) itself plus any further abelian
    /// directions left uncharged.
    pub n_u1: usize,
    /// Embedding whose single U(1) functional is the supplied direction,
    /// scaled minimally to give integer charges on the weight lattice.
    pub embedding: Embedding,
}

/// Break `algebra` along an integer Cartan direction.
///
/// The direction is given in the natural basis of each series: for A_n an
/// (n+1)-vector acting on the weights of the defining representation
/// (adjusted to tracelessness), for D_n an n-vector on the orthogonal
/// coordinates, and for E-series directly as a functional on Dynkin
/// labels. Charges of supplied irreps keep the supplied normalization.
pub fn commutant_breaking(
    algebra: AlgebraId,
    direction: &[i64],
) -> Result<CommutantBreaking, LieError> {
    let functional = functional_on_labels(algebra, direction)?;
    if functional.iter().all(|q| *q == Ratio::from_integer(0)) {
        return Err(LieError::DegenerateInput(alloc::format!(
            "direction {direction:?} acts trivially on {algebra}"
        )));
    }
    // Scale minimally so every weight-lattice charge is an integer, keeping
    // the supplied normalization otherwise.
    let scale = functional
        .iter()
        .fold(1i64, |acc, q| num_integer::lcm(acc, *q.denom()));
    let functional: Vec<Ratio<i64>> = functional
        .into_iter()
        .map(|q| q * Ratio::from_integer(scale))
        .collect();

    let rs = RootSystem::new(algebra);
    // Positive roots annihilated by the functional.
    let kept: Vec<Vec<i64>> = rs
        .positive_roots()
        .iter()
        .filter(|r| {
            let w = rs.root_to_weight(r);
            functional
                .iter()
                .zip(&w)
                .map(|(q, &wi)| *q * Ratio::from_integer(wi))
                .sum::<Ratio<i64>>()
                == Ratio::from_integer(0)
        })
        .cloned()
        .collect();
    // Simple system of the commutant: indecomposable kept roots.
    let simple: Vec<Vec<i64>> = kept
        .iter()
        .filter(|r| {
            !kept.iter().any(|a| {
                kept.iter().any(|b| {
                    a < b && a.iter().zip(b).zip(r.iter()).all(|((x, y), z)| x + y == *z)
                })
            })
        })
        .cloned()
        .collect();

    let mut classified: Vec<(AlgebraId, Vec<Vec<i64>>)> = split_components_pub(&rs, &simple)
        .iter()
        .map(|c| classify_component_pub(&rs, c))
        .collect::<Result<_, _>>()?;
    classified.sort_by_key(|(ty, roots)| (core::cmp::Reverse(ty.rank()), *ty, roots.clone()));

    let factors: Vec<AlgebraId> = classified.iter().map(|(ty, _)| *ty).collect();
    let factor_roots: Vec<Vec<Vec<i64>>> = classified.into_iter().map(|(_, r)| r).collect();
    let n_u1 = algebra.rank() - factors.iter().map(|f| f.rank()).sum::<usize>();
    let embedding = Embedding::from_parts(
        algebra,
        factors.clone(),
        factor_roots,
        n_u1,
        alloc::vec![functional],
    );
    Ok(CommutantBreaking { algebra, commutant: factors, n_u1, embedding })
}

/// Convert a series-natural direction vector into a functional on Dynkin
/// labels (values on the fundamental weights).
fn functional_on_labels(algebra: AlgebraId, direction: &[i64]) -> Result<Vec<Ratio<i64>>, LieError> {
    let n = algebra.rank();
    match algebra.series() {
        Series::A => {
            if direction.len() != n + 1 {
                return Err(LieError::DegenerateInput(alloc::format!(
                    "A-series direction must have {} entries, got {}",
                    n + 1,
                    direction.len()
                )));
            }
            // Remove the trace part; the functional on omega_k is then the
            // k-th partial sum.
            let total: i64 = direction.iter().sum();
            let len = (n + 1) as i64;
            let adjusted: Vec<Ratio<i64>> = direction
                .iter()
                .map(|&x| Ratio::from_integer(x) - Ratio::new(total, len))
                .collect();
            Ok((1..=n)
                .map(|k| adjusted[..k].iter().sum())
                .collect())
        }
        Series::D => {
            if direction.len() != n {
                return Err(LieError::DegenerateInput(alloc::format!(
                    "D-series direction must have {n} entries, got {}",
                    direction.len()
                )));
            }
            // omega_k = e_1 + ... + e_k for k <= n-2; the two spinor weights
            // involve half-sums.
            let mut out: Vec<Ratio<i64>> = Vec::with_capacity(n);
            for k in 1..=n - 2 {
                out.push(Ratio::from_integer(direction[..k].iter().sum::<i64>()));
            }
            let all: i64 = direction.iter().sum();
            out.push(Ratio::new(all - 2 * direction[n - 1], 2));
            out.push(Ratio::new(all, 2));
            Ok(out)
        }
        Series::E => {
            if direction.len() != n {
                return Err(LieError::DegenerateInput(alloc::format!(
                    "E-series direction must have {n} entries, got {}",
                    direction.len()
                )));
            }
            Ok(direction.iter().map(|&x| Ratio::from_integer(x)).collect())
        }
    }
}
