//! Weyl dimension formula, weight systems with Freudenthal multiplicities,
//! Dynkin indices, and conjugation.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use num_bigint::BigUint;
use num_rational::Ratio;

use super::roots::RootSystem;
use super::{AlgebraId, Irrep, LieError, Series};

/// Default cap on weight-system sizes (total dimension).
pub const DEFAULT_WEIGHT_CAP: u64 = 1_000_000;

/// The weight multiset of an irrep: Dynkin-label vector -> multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSystem {
    algebra: AlgebraId,
    entries: BTreeMap<Vec<i64>, u64>,
}

impl WeightSystem {
    pub fn algebra(&self) -> AlgebraId {
        self.algebra
    }

    pub fn entries(&self) -> &BTreeMap<Vec<i64>, u64> {
        &self.entries
    }

    pub fn multiplicity(&self, weight: &[i64]) -> u64 {
        self.entries.get(weight).copied().unwrap_or(0)
    }

    /// Total number of weights counted with multiplicity.
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }
}

/// Dimension by the Weyl formula,
/// `prod_{alpha > 0} <lambda + rho, alpha> / <rho, alpha>`,
/// evaluated exactly. In the root/weight bases both pairings are plain
/// integers, so the product is a ratio of big integers that divides
/// exactly.
pub fn weyl_dimension(irrep: &Irrep) -> Result<u64, LieError> {
    let rs = RootSystem::new(irrep.algebra());
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for alpha in rs.positive_roots() {
        // <lambda + rho, alpha> = sum_i (lambda_i + 1) c_i(alpha)
        let lam: i64 = irrep
            .labels()
            .iter()
            .zip(alpha)
            .map(|(l, c)| (l + 1) * c)
            .sum();
        debug_assert!(lam > 0);
        num *= BigUint::from(lam as u64);
        den *= BigUint::from(RootSystem::height(alpha) as u64);
    }
    let (q, r) = num_integer::Integer::div_rem(&num, &den);
    assert!(
        r == BigUint::ZERO,
        "Weyl dimension must be an integer; root-system construction bug"
    );
    u64::try_from(q).map_err(|_| LieError::DimensionOverflow)
}

/// Weight system with the default size cap.
pub fn weight_system(irrep: &Irrep) -> Result<WeightSystem, LieError> {
    weight_system_capped(irrep, DEFAULT_WEIGHT_CAP)
}

/// Full weight multiset of an irrep via Freudenthal's recursion.
///
/// The weight *set* is generated from the highest weight by walking the
/// simple-root strings downward (for a weight `mu` with i-th Dynkin label
/// m > 0, the weights `mu - k alpha_i`, k = 1..m, all occur), tracking the
/// simple-root coordinates of `lambda - mu` incrementally. Freudenthal's
/// formula is evaluated on the dominant weights only, in order of
/// increasing depth, and Weyl invariance fills in the rest; every quantity
/// involved is an integer in our bases.
pub fn weight_system_capped(irrep: &Irrep, cap: u64) -> Result<WeightSystem, LieError> {
    let dim = weyl_dimension(irrep)?;
    if dim > cap {
        return Err(LieError::WeightCapExceeded { dim, cap });
    }
    let rs = RootSystem::new(irrep.algebra());
    let n = rs.rank();
    let lambda: Vec<i64> = irrep.labels().to_vec();

    // weight -> simple-root coordinates of (lambda - weight).
    let mut diffs: BTreeMap<Vec<i64>, Vec<i64>> = BTreeMap::new();
    diffs.insert(lambda.clone(), alloc::vec![0; n]);
    let mut frontier = alloc::vec![lambda.clone()];
    while let Some(mu) = frontier.pop() {
        let diff = diffs.get(&mu).expect("frontier weights are recorded").clone();
        for i in 0..n {
            let m = mu[i];
            if m <= 0 {
                continue;
            }
            let mut nu = mu.clone();
            let mut nu_diff = diff.clone();
            for _ in 1..=m {
                nu = rs_sub_alpha(&rs, &nu, i);
                nu_diff[i] += 1;
                if !diffs.contains_key(&nu) {
                    diffs.insert(nu.clone(), nu_diff.clone());
                    frontier.push(nu.clone());
                }
            }
        }
    }

    // Dominant weights by increasing depth.
    let mut dominant: Vec<(i64, Vec<i64>)> = diffs
        .iter()
        .filter(|(w, _)| w.iter().all(|&l| l >= 0))
        .map(|(w, d)| (RootSystem::height(d), w.clone()))
        .collect();
    dominant.sort();

    // Push a weight to its dominant Weyl-chamber representative.
    let dominantize = |mut w: Vec<i64>| -> Vec<i64> {
        loop {
            match w.iter().position(|&l| l < 0) {
                Some(i) => w = rs.simple_reflection(&w, i),
                None => return w,
            }
        }
    };

    // Freudenthal on the dominant weights. rho = (1,...,1); the
    // denominator <lambda+rho,lambda+rho> - <mu+rho,mu+rho> reduces to
    // the integer pairing <lambda+mu+2rho, lambda-mu>.
    let pos_roots_w: Vec<Vec<i64>> = rs
        .positive_roots()
        .iter()
        .map(|r| rs.root_to_weight(r))
        .collect();
    let mut dominant_mult: BTreeMap<Vec<i64>, u64> = BTreeMap::new();
    for (depth, mu) in &dominant {
        if *depth == 0 {
            dominant_mult.insert(mu.clone(), 1);
            continue;
        }
        let mut numerator: i128 = 0;
        for (alpha, alpha_w) in rs.positive_roots().iter().zip(&pos_roots_w) {
            let mut nu: Vec<i64> = mu.clone();
            loop {
                for (x, a) in nu.iter_mut().zip(alpha_w) {
                    *x += a;
                }
                if !diffs.contains_key(&nu) {
                    break;
                }
                let m = dominant_mult[&dominantize(nu.clone())];
                let pairing = RootSystem::weight_dot_root(&nu, alpha);
                numerator += (m as i128) * (pairing as i128);
            }
        }
        let sum_vec: Vec<i64> = lambda.iter().zip(mu).map(|(l, m)| l + m + 2).collect();
        let denominator =
            RootSystem::weight_dot_root(&sum_vec, &diffs[mu.as_slice() as &[i64]]) as i128;
        assert!(denominator > 0, "Freudenthal denominator must be positive");
        let twice = 2 * numerator;
        assert!(
            twice % denominator == 0,
            "Freudenthal multiplicity must be integral"
        );
        let m = twice / denominator;
        assert!(m > 0);
        dominant_mult.insert(mu.clone(), m as u64);
    }

    // Weyl invariance: every weight carries its dominant representative's
    // multiplicity.
    let entries: BTreeMap<Vec<i64>, u64> = diffs
        .into_keys()
        .map(|w| {
            let m = dominant_mult[&dominantize(w.clone())];
            (w, m)
        })
        .collect();
    Ok(WeightSystem { algebra: irrep.algebra(), entries })
}

fn rs_sub_alpha(rs: &RootSystem, weight: &[i64], i: usize) -> Vec<i64> {
    weight
        .iter()
        .zip(&rs.cartan()[i])
        .map(|(w, a)| w - a)
        .collect()
}

/// Dynkin index T(R), normalized so the defining representation of the
/// A-series has T = 1/2.
///
/// The weighted second moment `sum_w mult(w) <w, h>^2` of a weight system
/// is Weyl-invariant and therefore proportional to T(R) for any fixed
/// Cartan direction h; taking h = alpha_1^vee (where <w, h> is just the
/// first Dynkin label) fixes the proportionality to 1/4.
pub fn dynkin_index(irrep: &Irrep) -> Result<Ratio<i64>, LieError> {
    let ws = weight_system(irrep)?;
    let sum: i64 = ws
        .entries()
        .iter()
        .map(|(w, &m)| (m as i64) * w[0] * w[0])
        .sum();
    Ok(Ratio::new(sum, 4))
}

/// The conjugate (dual) representation: highest weight `-w0(lambda)`,
/// realized by the diagram automorphism induced by the longest Weyl
/// element.
pub fn conjugate(irrep: &Irrep) -> Irrep {
    let algebra = irrep.algebra();
    let n = algebra.rank();
    let labels = irrep.labels();
    let permuted: Vec<i64> = match algebra.series() {
        // -w0 reverses the A-series diagram.
        Series::A => labels.iter().rev().copied().collect(),
        // For odd rank -w0 swaps the two fork nodes; even rank is trivial.
        Series::D => {
            if n % 2 == 1 {
                let mut v = labels.to_vec();
                v.swap(n - 1, n - 2);
                v
            } else {
                labels.to_vec()
            }
        }
        Series::E => {
            if n == 6 {
                // Bourbaki E6: 1<->6, 3<->5; 2 and 4 fixed (0-based: 0<->5, 2<->4).
                let l = labels;
                alloc::vec![l[5], l[1], l[4], l[3], l[2], l[0]]
            } else {
                labels.to_vec()
            }
        }
    };
    Irrep::new(algebra, permuted).expect("permutation preserves validity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn irrep(alg: &str, labels: &[i64]) -> Irrep {
        Irrep::new(AlgebraId::parse(alg).unwrap(), labels.to_vec()).unwrap()
    }

    #[test]
    fn weyl_dimension_small_cases() {
        assert_eq!(weyl_dimension(&irrep("SU(5)", &[0, 1, 0, 0])).unwrap(), 10);
        assert_eq!(weyl_dimension(&irrep("SU(5)", &[1, 0, 0, 0])).unwrap(), 5);
        assert_eq!(weyl_dimension(&irrep("SU(5)", &[0, 0, 0, 0])).unwrap(), 1);
        assert_eq!(weyl_dimension(&irrep("SU(5)", &[1, 0, 0, 1])).unwrap(), 24);
        assert_eq!(weyl_dimension(&irrep("SU(3)", &[1, 1])).unwrap(), 8);
        assert_eq!(weyl_dimension(&irrep("SO(10)", &[0, 0, 0, 0, 1])).unwrap(), 16);
        assert_eq!(weyl_dimension(&irrep("SO(10)", &[1, 0, 0, 0, 0])).unwrap(), 10);
        assert_eq!(weyl_dimension(&irrep("E6", &[1, 0, 0, 0, 0, 0])).unwrap(), 27);
        assert_eq!(weyl_dimension(&irrep("E7", &[0, 0, 0, 0, 0, 0, 1])).unwrap(), 56);
    }

    #[test]
    fn adjoint_dimension_equals_root_count_plus_rank() {
        // Independent cross-check of the Weyl product: the adjoint's
        // dimension must equal the number of roots plus the rank.
        for name in ["SU(2)", "SU(5)", "SU(6)", "SO(8)", "SO(10)", "SO(12)", "E6", "E7", "E8"] {
            let a = AlgebraId::parse(name).unwrap();
            let adj = Irrep::adjoint(a);
            let rs = RootSystem::new(a);
            let expected = 2 * rs.positive_roots().len() as u64 + a.rank() as u64;
            assert_eq!(weyl_dimension(&adj).unwrap(), expected, "{name}");
            assert_eq!(weyl_dimension(&adj).unwrap(), a.dim(), "{name}");
        }
    }

    #[test]
    fn e8_adjoint_is_248() {
        let e8 = AlgebraId::parse("E8").unwrap();
        assert_eq!(weyl_dimension(&Irrep::adjoint(e8)).unwrap(), 248);
    }

    #[test]
    fn weight_system_su5_fundamental() {
        let ws = weight_system(&irrep("SU(5)", &[1, 0, 0, 0])).unwrap();
        assert_eq!(ws.entries().len(), 5);
        assert!(ws.entries().values().all(|&m| m == 1));
    }

    #[test]
    fn weight_system_su3_adjoint() {
        // 6 boundary weights of multiplicity 1 plus the zero weight twice.
        let ws = weight_system(&irrep("SU(3)", &[1, 1])).unwrap();
        assert_eq!(ws.total(), 8);
        assert_eq!(ws.multiplicity(&[0, 0]), 2);
        let boundary = ws.entries().iter().filter(|(w, _)| w.as_slice() != [0, 0]);
        assert_eq!(boundary.clone().count(), 6);
        assert!(boundary.clone().all(|(_, &m)| m == 1));
    }

    #[test]
    fn weight_system_so10_spinor_is_minuscule() {
        let ws = weight_system(&irrep("SO(10)", &[0, 0, 0, 0, 1])).unwrap();
        assert_eq!(ws.entries().len(), 16);
        assert!(ws.entries().values().all(|&m| m == 1));
    }

    #[test]
    fn weight_cap_reports_dimension() {
        let big = irrep("E8", &[1, 0, 0, 0, 0, 0, 0, 1]);
        match weight_system_capped(&big, 1000) {
            Err(LieError::WeightCapExceeded { dim, cap: 1000 }) => assert!(dim > 1000),
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn freudenthal_total_matches_weyl_dimension() {
        for (alg, labels) in [
            ("SU(5)", vec![1, 1, 0, 0]),
            ("SU(5)", vec![1, 0, 0, 1]),
            ("SU(3)", vec![3, 1]),
            ("SO(10)", vec![0, 1, 0, 0, 0]),
            ("SO(12)", vec![0, 1, 0, 0, 0, 0]),
            ("E6", vec![0, 1, 0, 0, 0, 0]),
            ("E7", vec![1, 0, 0, 0, 0, 0, 0]),
        ] {
            let r = Irrep::new(AlgebraId::parse(alg).unwrap(), labels).unwrap();
            let ws = weight_system(&r).unwrap();
            assert_eq!(ws.total(), weyl_dimension(&r).unwrap(), "{r}");
        }
    }

    #[test]
    fn weight_system_is_weyl_symmetric() {
        let r = irrep("SU(5)", &[1, 0, 0, 1]);
        let rs = RootSystem::new(r.algebra());
        let ws = weight_system(&r).unwrap();
        for i in 0..4 {
            for (w, &m) in ws.entries() {
                let reflected = rs.simple_reflection(w, i);
                assert_eq!(ws.multiplicity(&reflected), m);
            }
        }
    }

    #[test]
    fn dynkin_index_su_n_fundamental_is_half() {
        for alg in ["SU(2)", "SU(3)", "SU(5)", "SU(8)"] {
            let a = AlgebraId::parse(alg).unwrap();
            assert_eq!(dynkin_index(&Irrep::fundamental(a)).unwrap(), Ratio::new(1, 2));
        }
    }

    #[test]
    fn dynkin_index_su5_adjoint_and_ten() {
        assert_eq!(dynkin_index(&irrep("SU(5)", &[1, 0, 0, 1])).unwrap(), Ratio::from_integer(5));
        assert_eq!(dynkin_index(&irrep("SU(5)", &[0, 1, 0, 0])).unwrap(), Ratio::new(3, 2));
    }

    #[test]
    fn dynkin_index_so10_vector_and_spinor() {
        assert_eq!(dynkin_index(&irrep("SO(10)", &[1, 0, 0, 0, 0])).unwrap(), Ratio::from_integer(1));
        assert_eq!(dynkin_index(&irrep("SO(10)", &[0, 0, 0, 0, 1])).unwrap(), Ratio::from_integer(2));
    }

    #[test]
    fn conjugation_is_involutive_and_matches_lowest_weight() {
        for (alg, labels) in [
            ("SU(5)", vec![1, 0, 0, 0]),
            ("SU(5)", vec![0, 1, 0, 0]),
            ("SU(4)", vec![1, 1, 0]),
            ("SO(10)", vec![0, 0, 0, 0, 1]),
            ("SO(12)", vec![0, 0, 0, 0, 1, 0]),
            ("E6", vec![1, 0, 0, 0, 0, 0]),
        ] {
            let r = Irrep::new(AlgebraId::parse(alg).unwrap(), labels).unwrap();
            let c = conjugate(&r);
            assert_eq!(conjugate(&c), r, "involution for {r}");
            // The dual's highest weight is minus the lowest weight.
            let ws = weight_system(&r).unwrap();
            let lowest = ws
                .entries()
                .keys()
                .min_by_key(|w| {
                    let rs = RootSystem::new(r.algebra());
                    let diff: Vec<i64> = r.labels().iter().zip(*w).map(|(a, b)| a - b).collect();
                    let c = rs.weight_to_root(&diff).unwrap();
                    -RootSystem::height(&c)
                })
                .unwrap()
                .clone();
            let negated: Vec<i64> = lowest.iter().map(|x| -x).collect();
            assert_eq!(c.labels(), negated.as_slice(), "dual of {r}");
        }
    }

    #[test]
    fn self_conjugate_representations() {
        let e7 = AlgebraId::parse("E7").unwrap();
        let f = Irrep::fundamental(e7);
        assert_eq!(conjugate(&f), f);
        let so12_v = irrep("SO(12)", &[1, 0, 0, 0, 0, 0]);
        assert_eq!(conjugate(&so12_v), so12_v);
    }
}
