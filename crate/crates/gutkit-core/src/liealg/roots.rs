//! Root systems built from Cartan matrices.
//!
//! Conventions, fixed once for the whole crate:
//!
//! - All roots are normalized to squared length 2 (simply laced), so the
//!   Cartan matrix doubles as the Gram matrix of the simple roots and
//!   coroots coincide with roots.
//! - Roots are stored as integer coordinate vectors on the simple roots;
//!   weights as integer coordinate vectors on the fundamental weights
//!   (Dynkin labels). With these bases the pairing of a weight `w` with a
//!   root `sum_i c_i alpha_i` is the plain dot product `sum_i w_i c_i`.
//! - Node numbering follows Bourbaki. For D_n the last node attaches to
//!   node n-3 (0-based); for E_n the branch node is node 3, with node 1
//!   hanging off it and the long arm running 4, 5, ...

use alloc::vec::Vec;
use num_rational::Ratio;

use super::{AlgebraId, Series};

/// The root-system data of one algebra: Cartan matrix, its exact inverse,
/// and the positive roots ordered by height.
#[derive(Debug, Clone)]
pub struct RootSystem {
    algebra: AlgebraId,
    cartan: Vec<Vec<i64>>,
    inv_cartan: Vec<Vec<Ratio<i64>>>,
    /// Positive roots in simple-root coordinates, sorted by (height, coords).
    positive_roots: Vec<Vec<i64>>,
}

impl RootSystem {
    pub fn new(algebra: AlgebraId) -> Self {
        let cartan = cartan_matrix(algebra);
        let inv_cartan = invert_rational(&cartan);
        let positive_roots = generate_positive_roots(&cartan);
        RootSystem { algebra, cartan, inv_cartan, positive_roots }
    }

    pub fn algebra(&self) -> AlgebraId {
        self.algebra
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// The unique root of maximal height.
    pub fn highest_root(&self) -> &[i64] {
        self.positive_roots.last().expect("nonempty root system")
    }

    pub fn height(root: &[i64]) -> i64 {
        root.iter().sum()
    }

    /// Convert a root from simple-root coordinates to Dynkin labels.
    pub fn root_to_weight(&self, root: &[i64]) -> Vec<i64> {
        (0..self.rank())
            .map(|j| (0..self.rank()).map(|i| root[i] * self.cartan[i][j]).sum())
            .collect()
    }

    /// Convert a vector in Dynkin labels to simple-root coordinates.
    /// Returns None when the result is not integral (the weight is not in
    /// the root lattice).
    pub fn weight_to_root(&self, weight: &[i64]) -> Option<Vec<i64>> {
        let n = self.rank();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = Ratio::new(0, 1);
            for (j, &wj) in weight.iter().enumerate() {
                acc += self.inv_cartan[j][i] * Ratio::from_integer(wj);
            }
            if !acc.is_integer() {
                return None;
            }
            out.push(acc.to_integer());
        }
        Some(out)
    }

    /// Pairing of a weight (Dynkin labels) with a root (simple-root
    /// coordinates); equals <w, alpha> in the length²-2 normalization.
    pub fn weight_dot_root(weight: &[i64], root: &[i64]) -> i64 {
        weight.iter().zip(root).map(|(w, c)| w * c).sum()
    }

    /// Inner product of two roots in simple-root coordinates.
    pub fn root_dot_root(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut acc = 0;
        for (ai, row) in a.iter().zip(&self.cartan) {
            if *ai == 0 {
                continue;
            }
            for (m, bj) in row.iter().zip(b) {
                acc += ai * m * bj;
            }
        }
        acc
    }

    /// Inner product of two weights in Dynkin labels (rational).
    pub fn weight_dot_weight(&self, v: &[i64], w: &[i64]) -> Ratio<i64> {
        let mut acc = Ratio::new(0, 1);
        for (vi, row) in v.iter().zip(&self.inv_cartan) {
            if *vi == 0 {
                continue;
            }
            for (g, wj) in row.iter().zip(w) {
                acc += Ratio::from_integer(vi * wj) * *g;
            }
        }
        acc
    }

    /// Simple reflection s_i acting on a weight in Dynkin labels:
    /// w -> w - w_i * alpha_i.
    pub fn simple_reflection(&self, weight: &[i64], i: usize) -> Vec<i64> {
        let wi = weight[i];
        weight
            .iter()
            .zip(&self.cartan[i])
            .map(|(w, a)| w - wi * a)
            .collect()
    }
}

fn cartan_matrix(algebra: AlgebraId) -> Vec<Vec<i64>> {
    let n = algebra.rank();
    let mut m = alloc::vec![alloc::vec![0i64; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    let link = |m: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        m[i][j] = -1;
        m[j][i] = -1;
    };
    match algebra.series() {
        Series::A => {
            for i in 0..n - 1 {
                link(&mut m, i, i + 1);
            }
        }
        Series::D => {
            for i in 0..n - 2 {
                link(&mut m, i, i + 1);
            }
            link(&mut m, n - 3, n - 1);
        }
        Series::E => {
            link(&mut m, 0, 2);
            link(&mut m, 1, 3);
            link(&mut m, 2, 3);
            for i in 3..n - 1 {
                link(&mut m, i, i + 1);
            }
        }
    }
    m
}

/// Close the simple system under root addition. In a simply-laced system
/// two non-proportional roots sum to a root exactly when their inner
/// product is -1, so each new height level is {beta + alpha_i : <beta,
/// alpha_i> = -1}.
fn generate_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut all: alloc::collections::BTreeSet<Vec<i64>> = alloc::collections::BTreeSet::new();
    let mut frontier: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = alloc::vec![0i64; n];
            v[i] = 1;
            v
        })
        .collect();
    for r in &frontier {
        all.insert(r.clone());
    }
    while !frontier.is_empty() {
        let mut next: alloc::collections::BTreeSet<Vec<i64>> = alloc::collections::BTreeSet::new();
        for beta in &frontier {
            for i in 0..n {
                // <beta, alpha_i> = (beta^T A)_i
                let pairing: i64 = (0..n).map(|k| beta[k] * cartan[k][i]).sum();
                if pairing == -1 {
                    let mut cand = beta.clone();
                    cand[i] += 1;
                    if !all.contains(&cand) {
                        next.insert(cand);
                    }
                }
            }
        }
        frontier = next.into_iter().collect();
        for r in &frontier {
            all.insert(r.clone());
        }
    }
    let mut roots: Vec<Vec<i64>> = all.into_iter().collect();
    roots.sort_by_key(|r| (RootSystem::height(r), r.clone()));
    roots
}

/// Exact inverse by Gauss-Jordan elimination over the rationals.
fn invert_rational(m: &[Vec<i64>]) -> Vec<Vec<Ratio<i64>>> {
    let n = m.len();
    let mut a: Vec<Vec<Ratio<i64>>> = m
        .iter()
        .map(|row| row.iter().map(|&x| Ratio::from_integer(x)).collect())
        .collect();
    let mut inv: Vec<Vec<Ratio<i64>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Ratio::from_integer(i64::from(i == j)))
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| a[r][col] != Ratio::new(0, 1))
            .expect("Cartan matrix is invertible");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && a[r][col] != Ratio::new(0, 1) {
                let f = a[r][col];
                for j in 0..n {
                    let ac = a[col][j];
                    let ic = inv[col][j];
                    a[r][j] -= f * ac;
                    inv[r][j] -= f * ic;
                }
            }
        }
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(name: &str) -> AlgebraId {
        AlgebraId::parse(name).unwrap()
    }

    #[test]
    fn positive_root_counts() {
        // |Phi+| = (dim - rank) / 2
        for name in ["SU(2)", "SU(3)", "SU(5)", "SO(8)", "SO(10)", "SO(12)", "E6", "E7", "E8"] {
            let a = alg(name);
            let rs = RootSystem::new(a);
            let expected = (a.dim() - a.rank() as u64) / 2;
            assert_eq!(rs.positive_roots().len() as u64, expected, "{name}");
        }
    }

    #[test]
    fn highest_root_heights() {
        // height of the highest root = Coxeter number - 1
        for (name, h) in [("SU(5)", 5), ("SO(10)", 8), ("E6", 12), ("E7", 18), ("E8", 30)] {
            let rs = RootSystem::new(alg(name));
            assert_eq!(RootSystem::height(rs.highest_root()), h - 1, "{name}");
        }
    }

    #[test]
    fn all_roots_have_norm_two() {
        for name in ["SU(4)", "SO(10)", "E6", "E8"] {
            let rs = RootSystem::new(alg(name));
            for r in rs.positive_roots() {
                assert_eq!(rs.root_dot_root(r, r), 2);
            }
        }
    }

    #[test]
    fn coordinate_conversions_invert() {
        let rs = RootSystem::new(alg("E7"));
        for r in rs.positive_roots() {
            let w = rs.root_to_weight(r);
            assert_eq!(rs.weight_to_root(&w).unwrap(), *r);
        }
    }

    #[test]
    fn weight_root_pairing_matches_rational_form() {
        let rs = RootSystem::new(alg("SO(10)"));
        for r in rs.positive_roots() {
            let rw = rs.root_to_weight(r);
            let w = alloc::vec![1, 0, 2, 0, 1];
            let exact = rs.weight_dot_weight(&w, &rw);
            assert_eq!(exact, Ratio::from_integer(RootSystem::weight_dot_root(&w, r)));
        }
    }

    #[test]
    fn simple_reflection_is_involution() {
        let rs = RootSystem::new(alg("E6"));
        let w = alloc::vec![1, 0, 0, 1, 0, 2];
        for i in 0..6 {
            let once = rs.simple_reflection(&w, i);
            assert_eq!(rs.simple_reflection(&once, i), w);
        }
    }
}
