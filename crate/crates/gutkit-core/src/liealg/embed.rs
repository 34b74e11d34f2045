//! Regular (rank-preserving) subalgebra embeddings.
//!
//! An embedding is stored as a choice of simple system for each semisimple
//! factor, written in the parent's simple-root coordinates, plus integer
//! U(1) functionals spanning the annihilator of the factor roots. Weight
//! projection is then exact integer arithmetic: the j-th Dynkin label of a
//! projected weight is its pairing with the j-th factor simple root.
//!
//! Embeddings are found by searching the subsystem graph generated by the
//! two Borel–de Siebenthal moves: delete a node (trades a simple root for
//! a U(1)), or adjoin the lowest root of a component and delete a node of
//! the extended diagram (rank preserving).

use alloc::collections::{BTreeSet, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;
use num_rational::Ratio;
use num_traits::Signed;

use super::enhance::reachable_types;
use super::roots::RootSystem;
use super::{AlgebraId, LieError, Series};

/// A regular embedding `F_1 x ... x F_k x U(1)^m` in a parent algebra.
#[derive(Debug, Clone)]
pub struct Embedding {
    parent: AlgebraId,
    factors: Vec<AlgebraId>,
    /// Per factor: its simple system, each root in parent simple-root
    /// coordinates, ordered to match this crate's Cartan-matrix layout
    /// for the factor type.
    factor_roots: Vec<Vec<Vec<i64>>>,
    n_u1: usize,
    /// Integer functionals on parent Dynkin labels, content gcd 1, first
    /// nonzero entry positive. One per U(1) for embeddings built by
    /// `find_embedding`; commutant breaking supplies its own.
    u1_charges: Vec<Vec<Ratio<i64>>>,
}

impl Embedding {
    pub fn parent(&self) -> AlgebraId {
        self.parent
    }

    pub fn factors(&self) -> &[AlgebraId] {
        &self.factors
    }

    pub fn n_u1(&self) -> usize {
        self.n_u1
    }

    pub fn u1_charges(&self) -> &[Vec<Ratio<i64>>] {
        &self.u1_charges
    }

    pub fn factor_roots(&self) -> &[Vec<Vec<i64>>] {
        &self.factor_roots
    }

    /// Dynkin-index rescaling of this embedding per factor. Regular
    /// embeddings map roots to roots of equal length, so the index is 1.
    pub fn embedding_index(&self, _factor: usize) -> Ratio<i64> {
        Ratio::from_integer(1)
    }

    /// Project a parent weight (Dynkin labels) onto the factors and U(1)s.
    /// Returns the concatenated factor Dynkin labels and the charge vector.
    pub fn project_weight(&self, weight: &[i64]) -> (Vec<i64>, Vec<Ratio<i64>>) {
        let rs = RootSystem::new(self.parent);
        let mut labels = Vec::new();
        for roots in &self.factor_roots {
            for beta in roots {
                let beta_w = rs.root_to_weight(beta);
                labels.push(RootSystem::weight_dot_root(weight, beta_to_root_coords(beta, &beta_w)));
            }
        }
        let charges = self
            .u1_charges
            .iter()
            .map(|q| {
                q.iter()
                    .zip(weight)
                    .map(|(qi, &wi)| *qi * Ratio::from_integer(wi))
                    .sum()
            })
            .collect();
        (labels, charges)
    }

    /// Identity embedding of an algebra in itself.
    pub fn identity(algebra: AlgebraId) -> Self {
        let n = algebra.rank();
        let simple: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                let mut v = alloc::vec![0i64; n];
                v[i] = 1;
                v
            })
            .collect();
        Embedding {
            parent: algebra,
            factors: alloc::vec![algebra],
            factor_roots: alloc::vec![simple],
            n_u1: 0,
            u1_charges: Vec::new(),
        }
    }

    /// Build an embedding directly from a chosen set of factor simple
    /// systems (parent simple-root coordinates). Used by commutant
    /// breaking, which supplies its own U(1) functional.
    pub(crate) fn from_parts(
        parent: AlgebraId,
        factors: Vec<AlgebraId>,
        factor_roots: Vec<Vec<Vec<i64>>>,
        n_u1: usize,
        u1_charges: Vec<Vec<Ratio<i64>>>,
    ) -> Self {
        Embedding { parent, factors, factor_roots, n_u1, u1_charges }
    }

    pub fn describe(&self) -> String {
        let mut s = String::new();
        for (i, f) in self.factors.iter().enumerate() {
            if i > 0 {
                s.push_str(" x ");
            }
            s.push_str(&f.name());
        }
        for _ in 0..self.n_u1 {
            if !s.is_empty() {
                s.push_str(" x ");
            }
            s.push_str("U(1)");
        }
        alloc::format!("{s} in {}", self.parent)
    }
}

// The j-th Dynkin label of a projected weight is <w, beta_j> in the
// simply-laced pairing, which only needs beta_j's root coordinates.
fn beta_to_root_coords<'a>(beta: &'a [i64], _beta_w: &[i64]) -> &'a [i64] {
    beta
}

/// Find a regular embedding of `factors x U(1)^n_u1` in `parent`.
///
/// The search walks the Borel–de Siebenthal subsystem graph breadth first
/// and returns the first realization whose component types match the
/// request, which makes the chosen realization deterministic.
pub fn find_embedding(
    parent: AlgebraId,
    factors: &[AlgebraId],
    n_u1: usize,
) -> Result<Embedding, LieError> {
    let wanted_desc = || {
        let mut s = String::new();
        for (i, f) in factors.iter().enumerate() {
            if i > 0 {
                s.push('x');
            }
            s.push_str(&f.name());
        }
        for _ in 0..n_u1 {
            if !s.is_empty() {
                s.push('x');
            }
            s.push_str("U(1)");
        }
        s
    };
    let total: usize = factors.iter().map(|f| f.rank()).sum::<usize>() + n_u1;
    if total != parent.rank() {
        return Err(LieError::InvalidEmbedding(alloc::format!(
            "rank mismatch: {} requires total rank {}, parent {} has rank {}",
            wanted_desc(),
            total,
            parent,
            parent.rank()
        )));
    }
    if factors.is_empty() && n_u1 == parent.rank() {
        // Pure Cartan torus.
        return build_embedding(parent, &[], factors);
    }

    let rs = RootSystem::new(parent);
    let mut wanted: Vec<AlgebraId> = factors.to_vec();
    wanted.sort();

    let start: Vec<Vec<i64>> = Embedding::identity(parent).factor_roots[0].clone();
    let mut queue: VecDeque<Vec<Vec<i64>>> = VecDeque::new();
    let mut visited: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
    queue.push_back(start.clone());
    visited.insert(subsystem_closure(&rs, &start));

    while let Some(state) = queue.pop_front() {
        let comps = split_components(&rs, &state);
        let mut types: Vec<AlgebraId> = Vec::new();
        let mut classified = Vec::new();
        for c in &comps {
            let (ty, ordered) = classify_component(&rs, c)?;
            types.push(ty);
            classified.push((ty, ordered));
        }
        types.sort();
        if types == wanted && parent.rank() - state.len() == n_u1 {
            classified.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
            return build_embedding_ordered(parent, &classified, factors);
        }
        if !viable(&types, &wanted) {
            continue;
        }
        // Plain deletion: one simple root becomes a U(1) direction.
        if state.len() > wanted.iter().map(|f| f.rank()).sum::<usize>() {
            for skip in 0..state.len() {
                let next: Vec<Vec<i64>> = state
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .map(|(_, v)| v.clone())
                    .collect();
                let key = subsystem_closure(&rs, &next);
                if visited.insert(key) {
                    queue.push_back(next);
                }
            }
        }
        // Extended-diagram move on each component: adjoin the lowest root,
        // delete one node. (For A-series components every such move gives
        // back the component, so the visited set absorbs them.)
        for comp in &comps {
            let lowest = component_lowest_root(&rs, comp);
            let mut extended: Vec<Vec<i64>> = comp.clone();
            extended.push(lowest);
            for skip in 0..extended.len() - 1 {
                // Deleting the adjoined node restores the component.
                let mut next: Vec<Vec<i64>> = state
                    .iter()
                    .filter(|v| !comp.contains(v))
                    .cloned()
                    .collect();
                for (i, v) in extended.iter().enumerate() {
                    if i != skip {
                        next.push(v.clone());
                    }
                }
                next.sort();
                let key = subsystem_closure(&rs, &next);
                if visited.insert(key) {
                    queue.push_back(next);
                }
            }
        }
    }
    Err(LieError::NoSuchEmbedding { parent, wanted: wanted_desc() })
}

pub(crate) fn split_components_pub(rs: &RootSystem, simple: &[Vec<i64>]) -> Vec<Vec<Vec<i64>>> {
    split_components(rs, simple)
}

pub(crate) fn classify_component_pub(
    rs: &RootSystem,
    comp: &[Vec<i64>],
) -> Result<(AlgebraId, Vec<Vec<i64>>), LieError> {
    classify_component(rs, comp)
}

fn viable(types: &[AlgebraId], wanted: &[AlgebraId]) -> bool {
    let have: usize = types.iter().map(|t| t.rank()).sum();
    let need: usize = wanted.iter().map(|t| t.rank()).sum();
    if need > have {
        return false;
    }
    wanted
        .iter()
        .all(|w| types.iter().any(|t| reachable_types(*t).contains(w)))
}

/// All roots of the subsystem generated by `simple`, as a canonical set.
fn subsystem_closure(rs: &RootSystem, simple: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut all: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut frontier: Vec<Vec<i64>> = simple.to_vec();
    for v in &frontier {
        all.insert(v.clone());
    }
    while let Some(beta) = frontier.pop() {
        for alpha in simple {
            if rs.root_dot_root(&beta, alpha) == -1 {
                let cand: Vec<i64> = beta.iter().zip(alpha).map(|(a, b)| a + b).collect();
                if all.insert(cand.clone()) {
                    frontier.push(cand);
                }
            }
        }
    }
    all.into_iter().collect()
}

/// Partition a simple system into connected components (pairing -1 links).
fn split_components(rs: &RootSystem, simple: &[Vec<i64>]) -> Vec<Vec<Vec<i64>>> {
    let n = simple.len();
    let mut assigned = alloc::vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if assigned[start] != usize::MAX {
            continue;
        }
        let mut stack = alloc::vec![start];
        assigned[start] = count;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if assigned[j] == usize::MAX && rs.root_dot_root(&simple[i], &simple[j]) != 0 {
                    assigned[j] = count;
                    stack.push(j);
                }
            }
        }
        count += 1;
    }
    let mut comps = alloc::vec![Vec::new(); count];
    for (i, v) in simple.iter().enumerate() {
        comps[assigned[i]].push(v.clone());
    }
    for c in &mut comps {
        c.sort();
    }
    comps
}

/// Identify the A-D-E type of a connected simple system and order its
/// roots to match this crate's Cartan layout for that type.
fn classify_component(
    rs: &RootSystem,
    comp: &[Vec<i64>],
) -> Result<(AlgebraId, Vec<Vec<i64>>), LieError> {
    let n = comp.len();
    let adj = |i: usize, j: usize| rs.root_dot_root(&comp[i], &comp[j]) == -1;
    let degree: Vec<usize> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && adj(i, j)).count())
        .collect();
    if let Some(&d) = degree.iter().find(|&&d| d > 3) {
        return Err(LieError::InvalidEmbedding(alloc::format!(
            "simple system node of degree {d}; not an A-D-E diagram"
        )));
    }
    let forks: Vec<usize> = (0..n).filter(|&i| degree[i] == 3).collect();
    if forks.len() > 1 {
        return Err(LieError::InvalidEmbedding(String::from(
            "simple system with two branch nodes; not an A-D-E diagram",
        )));
    }

    if forks.is_empty() {
        // A-series path. Walk from the lexicographically greater endpoint,
        // which keeps the parent's orientation when the simple system is a
        // subset of the parent's simple roots.
        if n == 1 {
            return Ok((AlgebraId::new(Series::A, 1)?, comp.to_vec()));
        }
        let ends: Vec<usize> = (0..n).filter(|&i| degree[i] == 1).collect();
        if ends.len() != 2 {
            return Err(LieError::InvalidEmbedding(String::from(
                "cyclic simple system; not linearly independent",
            )));
        }
        let start = if comp[ends[0]] >= comp[ends[1]] { ends[0] } else { ends[1] };
        let order = walk_path(n, &adj, start);
        let ordered: Vec<Vec<i64>> = order.iter().map(|&i| comp[i].clone()).collect();
        return Ok((AlgebraId::new(Series::A, n as u8)?, ordered));
    }

    let fork = forks[0];
    // Arms from the fork, outward, sorted longest first (ties by content).
    let mut arms: Vec<Vec<usize>> = (0..n)
        .filter(|&i| i != fork && adj(fork, i))
        .map(|first| {
            let mut arm = alloc::vec![first];
            let mut prev = fork;
            loop {
                let cur = *arm.last().unwrap();
                match (0..n).find(|&j| j != prev && j != cur && adj(cur, j)) {
                    Some(next) => {
                        arm.push(next);
                        prev = cur;
                    }
                    None => break,
                }
            }
            arm
        })
        .collect();
    arms.sort_by_key(|arm| {
        (
            core::cmp::Reverse(arm.len()),
            arm.iter().map(|&i| comp[i].clone()).collect::<Vec<_>>(),
        )
    });
    let lens: Vec<usize> = arms.iter().map(|a| a.len()).collect();

    // D_n: arms (n-3, 1, 1); E_n: arms (n-4, 2, 1).
    if lens[1] == 1 && lens[2] == 1 {
        let rank = n as u8;
        let mut ordered: Vec<Vec<i64>> = arms[0].iter().rev().map(|&i| comp[i].clone()).collect();
        ordered.push(comp[fork].clone());
        let mut tails = alloc::vec![comp[arms[1][0]].clone(), comp[arms[2][0]].clone()];
        tails.sort();
        ordered.extend(tails);
        if rank == 3 {
            // D3 = A3: reorder the star as a path: tail, fork, tail.
            let path = alloc::vec![ordered[1].clone(), ordered[0].clone(), ordered[2].clone()];
            return Ok((AlgebraId::new(Series::A, 3)?, path));
        }
        return Ok((AlgebraId::new(Series::D, rank)?, ordered));
    }
    if lens[2] == 1 && lens[1] == 2 && (2..=4).contains(&lens[0]) {
        // E layout: node1 = short arm, nodes (2,0) = middle arm fork-out,
        // node3 = fork, nodes 4.. = long arm fork-out.
        let mut ordered = alloc::vec![Vec::new(); n];
        ordered[3] = comp[fork].clone();
        ordered[1] = comp[arms[2][0]].clone();
        ordered[2] = comp[arms[1][0]].clone();
        ordered[0] = comp[arms[1][1]].clone();
        for (k, &i) in arms[0].iter().enumerate() {
            ordered[4 + k] = comp[i].clone();
        }
        return Ok((AlgebraId::new(Series::E, n as u8)?, ordered));
    }
    // Arms (n-3,1,1) and (n-4,2,1) cover D and E; anything else (e.g. three
    // arms of length >= 2) is not a finite simply-laced diagram.
    Err(LieError::InvalidEmbedding(alloc::format!(
        "branch node with arm lengths {lens:?}; not a finite A-D-E diagram"
    )))
}

fn walk_path(n: usize, adj: &dyn Fn(usize, usize) -> bool, start: usize) -> Vec<usize> {
    let mut order = alloc::vec![start];
    let mut prev = usize::MAX;
    while order.len() < n {
        let cur = *order.last().unwrap();
        let next = (0..n)
            .find(|&j| j != prev && j != cur && adj(cur, j))
            .expect("path component is connected");
        order.push(next);
        prev = cur;
    }
    order
}

/// Lowest root of a component: minus its highest root, mapped to parent
/// coordinates.
fn component_lowest_root(rs: &RootSystem, comp: &[Vec<i64>]) -> Vec<i64> {
    let closure = subsystem_closure(rs, comp);
    // Highest root of the component = the closure element of maximal height
    // when written in component coordinates; equivalently maximal parent
    // height among closure roots with positive expansion. Parent height
    // works because all component members are parent-positive or all
    // parent-negative combinations stay comparable; use expansion height.
    let mut best: Option<(i64, &Vec<i64>)> = None;
    for r in &closure {
        // Height in component coordinates: solve r = sum c_j beta_j by
        // projecting onto the component's dual basis via pairings.
        let h = component_height(rs, comp, r);
        if best.is_none_or(|(bh, bv)| (h, r) > (bh, bv)) {
            best = Some((h, r));
        }
    }
    let (_, top) = best.expect("component closure nonempty");
    top.iter().map(|x| -x).collect()
}

/// Express a subsystem root in component simple-root coordinates and sum.
#[allow(clippy::needless_range_loop)]
fn component_height(rs: &RootSystem, comp: &[Vec<i64>], root: &[i64]) -> i64 {
    // Solve the small linear system G c = p where G is the component Gram
    // matrix and p the pairings of `root` with the component roots.
    let k = comp.len();
    let mut g: Vec<Vec<Ratio<i64>>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| Ratio::from_integer(rs.root_dot_root(&comp[i], &comp[j])))
                .collect()
        })
        .collect();
    let mut p: Vec<Ratio<i64>> = (0..k)
        .map(|i| Ratio::from_integer(rs.root_dot_root(&comp[i], root)))
        .collect();
    // Gaussian elimination.
    for col in 0..k {
        let pivot = (col..k)
            .find(|&r| g[r][col] != Ratio::from_integer(0))
            .expect("component Gram matrix invertible");
        g.swap(col, pivot);
        p.swap(col, pivot);
        let d = g[col][col];
        for j in 0..k {
            g[col][j] /= d;
        }
        p[col] /= d;
        for r in 0..k {
            if r != col && g[r][col] != Ratio::from_integer(0) {
                let f = g[r][col];
                for j in 0..k {
                    let v = g[col][j];
                    g[r][j] -= f * v;
                }
                let v = p[col];
                p[r] -= f * v;
            }
        }
    }
    let mut h = Ratio::from_integer(0);
    for x in p {
        h += x;
    }
    debug_assert!(h.is_integer());
    h.to_integer()
}

fn build_embedding(
    parent: AlgebraId,
    classified: &[(AlgebraId, Vec<Vec<i64>>)],
    requested_order: &[AlgebraId],
) -> Result<Embedding, LieError> {
    build_embedding_ordered(parent, classified, requested_order)
}

fn build_embedding_ordered(
    parent: AlgebraId,
    classified: &[(AlgebraId, Vec<Vec<i64>>)],
    requested_order: &[AlgebraId],
) -> Result<Embedding, LieError> {
    // Assign found components to the requested factor order.
    let mut used = alloc::vec![false; classified.len()];
    let mut factor_roots: Vec<Vec<Vec<i64>>> = Vec::with_capacity(requested_order.len());
    for want in requested_order {
        let idx = classified
            .iter()
            .enumerate()
            .find(|(i, (ty, _))| !used[*i] && ty == want)
            .map(|(i, _)| i)
            .ok_or_else(|| LieError::InvalidEmbedding(String::from("component assignment failed")))?;
        used[idx] = true;
        factor_roots.push(classified[idx].1.clone());
    }
    let n_u1 = parent.rank() - factor_roots.iter().map(|f| f.len()).sum::<usize>();
    let u1_charges = u1_functionals(parent, &factor_roots);
    debug_assert_eq!(u1_charges.len(), n_u1);
    Ok(Embedding {
        parent,
        factors: requested_order.to_vec(),
        factor_roots,
        n_u1,
        u1_charges,
    })
}

/// Canonical integer basis of the annihilator of the factor roots: reduced
/// row echelon nullspace vectors, scaled to integer entries with content
/// gcd 1 and first nonzero entry positive.
fn u1_functionals(parent: AlgebraId, factor_roots: &[Vec<Vec<i64>>]) -> Vec<Vec<Ratio<i64>>> {
    let rs = RootSystem::new(parent);
    let n = parent.rank();
    let rows: Vec<Vec<i64>> = factor_roots
        .iter()
        .flatten()
        .map(|beta| rs.root_to_weight(beta))
        .collect();
    nullspace_integer(&rows, n)
        .into_iter()
        .map(|v| v.into_iter().map(Ratio::from_integer).collect())
        .collect()
}

/// Integer-normalized nullspace basis of `rows` acting on R^n.
#[allow(clippy::needless_range_loop)]
fn nullspace_integer(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let m = rows.len();
    let mut a: Vec<Vec<Ratio<i64>>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Ratio::from_integer(x)).collect())
        .collect();
    let zero = Ratio::from_integer(0);
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row >= m {
            break;
        }
        if let Some(p) = (row..m).find(|&r| a[r][col] != zero) {
            a.swap(row, p);
            let d = a[row][col];
            for j in 0..n {
                a[row][j] /= d;
            }
            for r in 0..m {
                if r != row && a[r][col] != zero {
                    let f = a[r][col];
                    for j in 0..n {
                        let v = a[row][j];
                        a[r][j] -= f * v;
                    }
                }
            }
            pivot_cols.push(col);
            row += 1;
        }
    }
    let free_cols: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free_cols {
        let mut v = alloc::vec![Ratio::from_integer(0); n];
        v[fc] = Ratio::from_integer(1);
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -a[r][fc];
        }
        // Scale to coprime integers, first nonzero positive.
        let lcm = v
            .iter()
            .fold(1i64, |acc, x| num_integer::lcm(acc, *x.denom()));
        let mut ints: Vec<i64> = v.iter().map(|x| (*x * Ratio::from_integer(lcm)).to_integer()).collect();
        let gcd = ints.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x.abs()));
        if gcd > 1 {
            for x in &mut ints {
                *x /= gcd;
            }
        }
        if let Some(first) = ints.iter().find(|&&x| x != 0) {
            if first.is_negative() {
                for x in &mut ints {
                    *x = -*x;
                }
            }
        }
        basis.push(ints);
    }
    basis
}
