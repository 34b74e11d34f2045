//! Branching of an irrep under a regular embedding.
//!
//! Every weight of the parent irrep is projected onto the factor Dynkin
//! labels and U(1) charges. Within each charge sector the factor content is
//! recovered by iterated highest-weight extraction: the dominant projected
//! weight maximal in a fixed total order is a highest weight of the sector,
//! so its factor-irrep weight system is subtracted and the process repeats.
//! The total order is the pairing with the factor Weyl vectors (which
//! refines the root order on dominant weights), with lexicographic
//! tie-breaking; all arithmetic stays exact.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use num_rational::Ratio;

use super::embed::Embedding;
use super::roots::RootSystem;
use super::weights::{conjugate, weight_system, weyl_dimension};
use super::{Irrep, LieError};

/// One summand of a branching: a tuple of factor irreps, its U(1) charge
/// vector, and the multiplicity with which it occurs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchTerm {
    pub irreps: Vec<Irrep>,
    pub charges: Vec<Ratio<i64>>,
    pub multiplicity: u64,
}

impl BranchTerm {
    /// Product of the factor dimensions.
    pub fn dim(&self) -> u64 {
        self.irreps
            .iter()
            .map(|r| weyl_dimension(r).expect("factor dimension fits"))
            .product()
    }

    /// Conjugate term: dual factor irreps, negated charges.
    pub fn conjugate(&self) -> BranchTerm {
        BranchTerm {
            irreps: self.irreps.iter().map(conjugate).collect(),
            charges: self.charges.iter().map(|c| -c).collect(),
            multiplicity: self.multiplicity,
        }
    }

    pub fn is_singlet(&self) -> bool {
        self.irreps.iter().all(Irrep::is_singlet)
    }
}

/// A complete branching of one parent irrep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchResult {
    parent: Irrep,
    terms: Vec<BranchTerm>,
}

impl BranchResult {
    pub fn parent(&self) -> &Irrep {
        &self.parent
    }

    pub fn terms(&self) -> &[BranchTerm] {
        &self.terms
    }

    /// Sum of multiplicity x product of factor dimensions; equals the
    /// parent dimension for a valid embedding.
    pub fn dimension_sum(&self) -> u64 {
        self.terms.iter().map(|t| t.multiplicity * t.dim()).sum()
    }
}

/// Decompose `irrep` under the embedding.
pub fn branch(embedding: &Embedding, irrep: &Irrep) -> Result<BranchResult, LieError> {
    if embedding.parent() != irrep.algebra() {
        return Err(LieError::InvalidEmbedding(alloc::format!(
            "embedding lives in {}, irrep in {}",
            embedding.parent(),
            irrep.algebra()
        )));
    }
    let ws = weight_system(irrep)?;

    // Project onto (charge vector, concatenated factor labels).
    let mut sectors: BTreeMap<Vec<Ratio<i64>>, BTreeMap<Vec<i64>, i64>> = BTreeMap::new();
    for (w, &mult) in ws.entries() {
        let (labels, charges) = embedding.project_weight(w);
        *sectors
            .entry(charges)
            .or_default()
            .entry(labels)
            .or_insert(0) += mult as i64;
    }

    let factor_systems: Vec<RootSystem> = embedding
        .factors()
        .iter()
        .map(|f| RootSystem::new(*f))
        .collect();
    let ranks: Vec<usize> = embedding.factors().iter().map(|f| f.rank()).collect();

    let mut terms = Vec::new();
    for (charges, mut sector) in sectors {
        // Keep only dominant vectors; non-dominant weights carry no new
        // information and every extraction step subtracts them implicitly.
        sector.retain(|labels, _| labels.iter().all(|&l| l >= 0));
        loop {
            // Highest remaining dominant weight.
            let best = sector
                .iter()
                .filter(|(_, &m)| m != 0)
                .max_by(|(wa, _), (wb, _)| {
                    rho_pairing(wa, &factor_systems, &ranks)
                        .cmp(&rho_pairing(wb, &factor_systems, &ranks))
                        .then(wa.cmp(wb))
                })
                .map(|(w, &m)| (w.clone(), m));
            let Some((top, mult)) = best else { break };
            if mult < 0 {
                return Err(LieError::InvalidEmbedding(alloc::format!(
                    "negative multiplicity {mult} during extraction; projection is not a \
                     regular embedding"
                )));
            }
            let factor_irreps = split_labels(&top, &ranks, embedding)?;
            // Subtract mult copies of the product weight system (dominant
            // part only, which factorizes over the factors).
            let dominant_product = dominant_product_weights(&factor_irreps)?;
            for (w, m) in dominant_product {
                let entry = sector.entry(w).or_insert(0);
                *entry -= mult * m as i64;
                if *entry < 0 {
                    return Err(LieError::InvalidEmbedding(alloc::format!(
                        "negative multiplicity during extraction of {top:?}; projection is \
                         not a regular embedding"
                    )));
                }
            }
            terms.push(BranchTerm {
                irreps: factor_irreps,
                charges: charges.clone(),
                multiplicity: mult as u64,
            });
        }
    }

    // Deterministic presentation: large terms first, then by content.
    terms.sort_by_key(|t| {
        (
            core::cmp::Reverse(t.dim()),
            t.irreps.iter().map(|r| r.labels().to_vec()).collect::<Vec<_>>(),
            t.charges.clone(),
        )
    });
    Ok(BranchResult { parent: irrep.clone(), terms })
}

fn rho_pairing(labels: &[i64], systems: &[RootSystem], ranks: &[usize]) -> Ratio<i64> {
    let mut acc = Ratio::from_integer(0);
    let mut offset = 0;
    for (rs, &rank) in systems.iter().zip(ranks) {
        let part = &labels[offset..offset + rank];
        let rho = alloc::vec![1i64; rank];
        acc += rs.weight_dot_weight(part, &rho);
        offset += rank;
    }
    acc
}

fn split_labels(
    labels: &[i64],
    ranks: &[usize],
    embedding: &Embedding,
) -> Result<Vec<Irrep>, LieError> {
    let mut out = Vec::with_capacity(ranks.len());
    let mut offset = 0;
    for (f, &rank) in embedding.factors().iter().zip(ranks) {
        out.push(Irrep::new(*f, labels[offset..offset + rank].to_vec())?);
        offset += rank;
    }
    Ok(out)
}

/// Dominant part of the product weight system of a factor-irrep tuple:
/// concatenated labels -> multiplicity. Dominance of a concatenation is
/// dominance in every factor, so the dominant parts multiply.
fn dominant_product_weights(factors: &[Irrep]) -> Result<Vec<(Vec<i64>, u64)>, LieError> {
    let mut acc: Vec<(Vec<i64>, u64)> = alloc::vec![(Vec::new(), 1)];
    for irrep in factors {
        let ws = weight_system(irrep)?;
        let dominant: Vec<(&Vec<i64>, u64)> = ws
            .entries()
            .iter()
            .filter(|(w, _)| w.iter().all(|&l| l >= 0))
            .map(|(w, &m)| (w, m))
            .collect();
        let mut next = Vec::with_capacity(acc.len() * dominant.len());
        for (prefix, pm) in &acc {
            for (w, m) in &dominant {
                let mut v = prefix.clone();
                v.extend_from_slice(w);
                next.push((v, pm * m));
            }
        }
        acc = next;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{find_embedding, AlgebraId};
    use alloc::vec;

    fn alg(name: &str) -> AlgebraId {
        AlgebraId::parse(name).unwrap()
    }

    fn irrep(a: &str, labels: &[i64]) -> Irrep {
        Irrep::new(alg(a), labels.to_vec()).unwrap()
    }

    /// Collect (sorted factor dims, multiplicity) for content comparison.
    fn content(b: &BranchResult) -> Vec<(u64, u64)> {
        let mut v: Vec<(u64, u64)> = b.terms().iter().map(|t| (t.dim(), t.multiplicity)).collect();
        v.sort();
        v
    }

    #[test]
    fn identity_branching_is_trivial() {
        let su5 = alg("SU(5)");
        let e = Embedding::identity(su5);
        let adj = irrep("SU(5)", &[1, 0, 0, 1]);
        let b = branch(&e, &adj).unwrap();
        assert_eq!(b.terms().len(), 1);
        assert_eq!(b.terms()[0].irreps[0], adj);
        assert_eq!(b.dimension_sum(), 24);
    }

    #[test]
    fn so10_spinor_branches_to_su5() {
        let e = find_embedding(alg("SO(10)"), &[alg("SU(5)")], 1).unwrap();
        for spinor in [irrep("SO(10)", &[0, 0, 0, 0, 1]), irrep("SO(10)", &[0, 0, 0, 1, 0])] {
            let b = branch(&e, &spinor).unwrap();
            assert_eq!(b.dimension_sum(), 16);
            assert_eq!(content(&b), vec![(1, 1), (5, 1), (10, 1)]);
            // Three distinct charges.
            let mut charges: Vec<_> = b.terms().iter().map(|t| t.charges[0]).collect();
            charges.sort();
            charges.dedup();
            assert_eq!(charges.len(), 3);
        }
    }

    #[test]
    fn su6_adjoint_branches_to_su5() {
        let e = find_embedding(alg("SU(6)"), &[alg("SU(5)")], 1).unwrap();
        let b = branch(&e, &irrep("SU(6)", &[1, 0, 0, 0, 1])).unwrap();
        assert_eq!(b.dimension_sum(), 35);
        // 35 -> 24_0 + 1_0 + 5_c + 5bar_{-c}
        assert_eq!(content(&b), vec![(1, 1), (5, 1), (5, 1), (24, 1)]);
        // The two 5-dimensional terms are conjugate with opposite nonzero charges.
        let fives: Vec<&BranchTerm> = b.terms().iter().filter(|t| t.dim() == 5).collect();
        assert_eq!(fives[0].charges[0], -fives[1].charges[0]);
        assert_ne!(fives[0].charges[0], Ratio::from_integer(0));
        assert_eq!(conjugate(&fives[0].irreps[0]), fives[1].irreps[0]);
        // The adjoint 24 and one singlet are uncharged.
        let adj = b.terms().iter().find(|t| t.dim() == 24).unwrap();
        assert_eq!(adj.charges[0], Ratio::from_integer(0));
    }

    #[test]
    fn so10_adjoint_branches_to_su5() {
        let e = find_embedding(alg("SO(10)"), &[alg("SU(5)")], 1).unwrap();
        let b = branch(&e, &irrep("SO(10)", &[0, 1, 0, 0, 0])).unwrap();
        assert_eq!(b.dimension_sum(), 45);
        assert_eq!(content(&b), vec![(1, 1), (10, 1), (10, 1), (24, 1)]);
        let tens: Vec<&BranchTerm> = b.terms().iter().filter(|t| t.dim() == 10).collect();
        assert_eq!(tens[0].charges[0], -tens[1].charges[0]);
        assert_ne!(tens[0].charges[0], Ratio::from_integer(0));
        assert_eq!(conjugate(&tens[0].irreps[0]), tens[1].irreps[0]);
    }

    #[test]
    fn e6_adjoint_under_su5_u1_u1() {
        let e = find_embedding(alg("E6"), &[alg("SU(5)")], 2).unwrap();
        let b = branch(&e, &Irrep::adjoint(alg("E6"))).unwrap();
        assert_eq!(b.dimension_sum(), 78);
        // 24 + 2 x 10 + 2 x 10bar + 5 + 5bar + a charged singlet pair + the
        // two Cartan singlets (one term of multiplicity 2).
        let mut dims: Vec<u64> = b
            .terms()
            .iter()
            .flat_map(|t| core::iter::repeat_n(t.dim(), t.multiplicity as usize))
            .collect();
        dims.sort();
        assert_eq!(dims, vec![1, 1, 1, 1, 5, 5, 10, 10, 10, 10, 24]);
        let cartan_singlets = b
            .terms()
            .iter()
            .find(|t| t.is_singlet() && t.charges.iter().all(|c| *c == Ratio::from_integer(0)))
            .unwrap();
        assert_eq!(cartan_singlets.multiplicity, 2);
    }

    #[test]
    fn conjugation_equivariance() {
        let e = find_embedding(alg("SO(10)"), &[alg("SU(5)")], 1).unwrap();
        let r = irrep("SO(10)", &[0, 0, 0, 0, 1]);
        let b = branch(&e, &r).unwrap();
        let bc = branch(&e, &conjugate(&r)).unwrap();
        let mut expected: Vec<BranchTerm> = b.terms().iter().map(BranchTerm::conjugate).collect();
        expected.sort_by_key(|t| {
            (
                core::cmp::Reverse(t.dim()),
                t.irreps.iter().map(|r| r.labels().to_vec()).collect::<Vec<_>>(),
                t.charges.clone(),
            )
        });
        assert_eq!(bc.terms(), expected.as_slice());
    }

    #[test]
    fn dimension_conservation_for_larger_reps() {
        let e = find_embedding(alg("E7"), &[alg("E6")], 1).unwrap();
        let b = branch(&e, &Irrep::adjoint(alg("E7"))).unwrap();
        assert_eq!(b.dimension_sum(), 133);
        let e56 = Irrep::fundamental(alg("E7"));
        let b56 = branch(&e, &e56).unwrap();
        assert_eq!(b56.dimension_sum(), 56);
        // 56 -> 27 + 27bar + 1 + 1 under E6 x U(1)
        assert_eq!(content(&b56), vec![(1, 1), (1, 1), (27, 1), (27, 1)]);
    }

    #[test]
    fn index_additivity_with_unit_embedding_index() {
        // T_parent(R) = j * sum over terms of mult * T_f(term_f) * prod dims of others
        let e = find_embedding(alg("SO(10)"), &[alg("SU(5)")], 1).unwrap();
        for r in [
            irrep("SO(10)", &[0, 0, 0, 0, 1]),
            irrep("SO(10)", &[1, 0, 0, 0, 0]),
            irrep("SO(10)", &[0, 1, 0, 0, 0]),
        ] {
            let b = branch(&e, &r).unwrap();
            let mut total = Ratio::from_integer(0);
            for t in b.terms() {
                let idx = crate::liealg::dynkin_index(&t.irreps[0]).unwrap();
                total += idx * Ratio::from_integer(t.multiplicity as i64);
            }
            let parent_idx = crate::liealg::dynkin_index(&r).unwrap();
            assert_eq!(total, parent_idx * e.embedding_index(0), "{r}");
        }
    }
}
