//! The regular-subalgebra poset over A-D-E types of rank <= 8, and
//! minimal-enhancement search.
//!
//! Containment here is type-level: K is reachable from H when some chain
//! of Borel–de Siebenthal moves (delete a node of the diagram, or adjoin
//! the lowest root and delete a node of the extended diagram) produces a
//! component of type K. The poset is computed once and cached.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use once_cell::race::OnceBox;

use super::embed::{classify_component_pub, split_components_pub};
use super::roots::RootSystem;
use super::{AlgebraId, LieError, Series};

static POSET: OnceBox<BTreeMap<AlgebraId, BTreeSet<AlgebraId>>> = OnceBox::new();

/// Every A-D-E algebra of rank <= 8 (the physics cap: nothing beyond E8).
pub(crate) fn universe() -> Vec<AlgebraId> {
    let mut out = Vec::new();
    for r in 1..=8u8 {
        out.push(AlgebraId::new(Series::A, r).unwrap());
    }
    for r in 4..=8u8 {
        out.push(AlgebraId::new(Series::D, r).unwrap());
    }
    for r in 6..=8u8 {
        out.push(AlgebraId::new(Series::E, r).unwrap());
    }
    out
}

/// All component types reachable from `algebra` in the subsystem poset
/// (including `algebra` itself).
pub fn reachable_types(algebra: AlgebraId) -> &'static BTreeSet<AlgebraId> {
    let poset = POSET.get_or_init(|| Box::new(build_poset()));
    poset
        .get(&algebra)
        .unwrap_or_else(|| panic!("algebra {algebra} outside the rank-8 poset"))
}

/// Does `sub` embed regularly in `parent` (at type level)?
pub fn contains_regular(parent: AlgebraId, sub: AlgebraId) -> bool {
    if parent.rank() > 8 || sub.rank() > 8 {
        return false;
    }
    reachable_types(parent).contains(&sub)
}

fn build_poset() -> BTreeMap<AlgebraId, BTreeSet<AlgebraId>> {
    let mut memo: BTreeMap<AlgebraId, BTreeSet<AlgebraId>> = BTreeMap::new();
    for a in universe() {
        closure(a, &mut memo);
    }
    memo
}

fn closure(a: AlgebraId, memo: &mut BTreeMap<AlgebraId, BTreeSet<AlgebraId>>) -> BTreeSet<AlgebraId> {
    if let Some(s) = memo.get(&a) {
        return s.clone();
    }
    let mut out: BTreeSet<AlgebraId> = BTreeSet::new();
    out.insert(a);
    for child in direct_subtypes(a) {
        if child == a {
            continue;
        }
        out.extend(closure(child, memo));
    }
    memo.insert(a, out.clone());
    out
}

/// Component types produced by one Borel–de Siebenthal move on `a`.
fn direct_subtypes(a: AlgebraId) -> BTreeSet<AlgebraId> {
    let rs = RootSystem::new(a);
    let n = a.rank();
    let simple: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = alloc::vec![0i64; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut out = BTreeSet::new();
    let record = |vectors: Vec<Vec<i64>>, out: &mut BTreeSet<AlgebraId>| {
        for comp in split_components_pub(&rs, &vectors) {
            if let Ok((ty, _)) = classify_component_pub(&rs, &comp) {
                out.insert(ty);
            }
        }
    };
    // Plain node deletions.
    for skip in 0..n {
        let rest: Vec<Vec<i64>> = simple
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .map(|(_, v)| v.clone())
            .collect();
        record(rest, &mut out);
    }
    // Extended diagram minus one original node.
    let lowest: Vec<i64> = rs.highest_root().iter().map(|x| -x).collect();
    for skip in 0..n {
        let mut rest: Vec<Vec<i64>> = simple
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .map(|(_, v)| v.clone())
            .collect();
        rest.push(lowest.clone());
        record(rest, &mut out);
    }
    out
}

/// The minimal A-D-E enhancement accommodating all `required` algebras over
/// `base`, then `extra_rank` further minimal rank-increasing steps.
///
/// Candidates are ordered by rank and, within a rank, by descending
/// dimension, so the enhancement point carries the largest symmetry of
/// that rank that the required chain forces (SO(12) also hosts an
/// {SU(6), SO(10)} pair over SU(5), but the E-chain is the enhancement
/// the construction selects).
pub fn minimal_enhancement(
    base: AlgebraId,
    required: &[AlgebraId],
    extra_rank: u8,
) -> Result<AlgebraId, LieError> {
    if base.rank() > 8 {
        return Err(LieError::EnhancementOverflow);
    }
    for r in required {
        if r.rank() > 8 {
            return Err(LieError::EnhancementOverflow);
        }
        if !contains_regular(*r, base) {
            return Err(LieError::InvalidEmbedding(alloc::format!(
                "required algebra {r} does not contain the base {base} as a regular subalgebra"
            )));
        }
    }
    let mut candidates = universe();
    candidates.sort_by_key(|c| (c.rank(), core::cmp::Reverse(c.dim())));
    let mut current = candidates
        .iter()
        .copied()
        .find(|h| {
            contains_regular(*h, base) && required.iter().all(|r| contains_regular(*h, *r))
        })
        .ok_or(LieError::EnhancementOverflow)?;
    for _ in 0..extra_rank {
        current = candidates
            .iter()
            .copied()
            .find(|h| h.rank() > current.rank() && contains_regular(*h, current))
            .ok_or(LieError::EnhancementOverflow)?;
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(name: &str) -> AlgebraId {
        AlgebraId::parse(name).unwrap()
    }

    #[test]
    fn basic_containments() {
        assert!(contains_regular(alg("SO(10)"), alg("SU(5)")));
        assert!(contains_regular(alg("SU(6)"), alg("SU(5)")));
        assert!(contains_regular(alg("E6"), alg("SO(10)")));
        assert!(contains_regular(alg("E6"), alg("SU(6)")));
        assert!(contains_regular(alg("E7"), alg("E6")));
        assert!(contains_regular(alg("E7"), alg("SO(12)")));
        assert!(contains_regular(alg("E8"), alg("E7")));
        assert!(contains_regular(alg("SO(12)"), alg("SU(6)")));
        assert!(contains_regular(alg("SO(12)"), alg("SO(10)")));
        // Negative cases.
        assert!(!contains_regular(alg("SO(10)"), alg("SU(6)")));
        assert!(!contains_regular(alg("SU(6)"), alg("SO(10)")));
        assert!(!contains_regular(alg("SO(10)"), alg("E6")));
        assert!(!contains_regular(alg("SU(9)"), alg("SO(10)")));
        assert!(!contains_regular(alg("SO(16)"), alg("E7")));
        assert!(!contains_regular(alg("E6"), alg("SO(12)")));
    }

    #[test]
    fn a_series_contains_only_a() {
        for sub in reachable_types(alg("SU(8)")) {
            assert_eq!(sub.series(), Series::A);
        }
    }

    #[test]
    fn e6_hosts_the_borel_de_siebenthal_triples() {
        let r = reachable_types(alg("E6"));
        assert!(r.contains(&alg("SU(6)"))); // A5 x A1 maximal subalgebra
        assert!(r.contains(&alg("SU(3)"))); // A2 x A2 x A2
        assert!(r.contains(&alg("SO(10)")));
    }

    #[test]
    fn enhancement_chain_from_the_su5_model() {
        let su5 = alg("SU(5)");
        assert_eq!(
            minimal_enhancement(su5, &[alg("SU(6)"), alg("SO(10)")], 0).unwrap(),
            alg("E6")
        );
        assert_eq!(
            minimal_enhancement(su5, &[alg("E6"), alg("SO(12)")], 0).unwrap(),
            alg("E7")
        );
        assert_eq!(
            minimal_enhancement(su5, &[alg("E6"), alg("SO(12)")], 1).unwrap(),
            alg("E8")
        );
    }

    #[test]
    fn enhancement_is_idempotent_on_a_single_requirement() {
        for name in ["SU(5)", "SO(10)", "SU(6)", "E6", "E7", "E8", "SO(12)"] {
            let g = alg(name);
            assert_eq!(minimal_enhancement(g, &[g], 0).unwrap(), g, "{name}");
        }
    }

    #[test]
    fn enhancement_overflow_beyond_e8() {
        let e8 = alg("E8");
        assert!(matches!(
            minimal_enhancement(e8, &[e8], 1),
            Err(LieError::EnhancementOverflow)
        ));
    }

    #[test]
    fn enhancement_requires_base_containment() {
        let err = minimal_enhancement(alg("SO(10)"), &[alg("SU(4)")], 0).unwrap_err();
        assert!(matches!(err, LieError::InvalidEmbedding(_)));
    }
}
