//! The local geometry as a typed graph: branes carrying gauge algebras,
//! matter curves where two branes meet with an enhanced algebra and a
//! flux integer, and interaction points where three curves meet.
//!
//! The flux integral over a curve is bookkept as a plain integer (the
//! generation count); positive flux counts the stored representation,
//! negative flux its conjugate. Coupling allowedness at a point is a
//! weight-level singlet search over the adjoint branching of the point's
//! enhanced algebra, which is exact at these dimensions.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use num_rational::Ratio;

use crate::liealg::{
    branch, commutant_breaking, conjugate, contains_regular, find_embedding, weight_system,
    AlgebraId, BranchTerm, Irrep, LieError,
};

/// A broken-SU(5) piece: SU(3) labels, SU(2) labels, and the U(1) charge.
type ChiralityKey = (Vec<i64>, Vec<i64>, Ratio<i64>);

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("unresolved reference: {0}")]
    Unresolved(String),
    #[error("{0}")]
    Lie(#[from] LieError),
    #[error("invalid model: {0}")]
    Invalid(String),
}

/// Gauge algebra on a brane: a simple A-D-E algebra or a U(1) brane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BraneAlgebra {
    Simple(AlgebraId),
    U1,
}

impl core::fmt::Display for BraneAlgebra {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            BraneAlgebra::Simple(a) => write!(f, "{a}"),
            BraneAlgebra::U1 => write!(f, "U(1)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Brane {
    pub name: String,
    pub algebra: BraneAlgebra,
}

/// A matter curve between two branes. The representation is recorded under
/// the simple brane algebra(s) of the pair, in brane order.
#[derive(Debug, Clone, PartialEq)]
pub struct MatterCurve {
    pub name: String,
    pub branes: (String, String),
    pub enhanced: AlgebraId,
    pub rep: Vec<Irrep>,
    pub flux: i64,
}

/// A triple intersection of matter curves with a further-enhanced algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct InteractionPoint {
    pub name: String,
    pub curves: [String; 3],
    pub enhanced: AlgebraId,
    pub coupling_label: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ModelGraph {
    pub branes: Vec<Brane>,
    pub curves: Vec<MatterCurve>,
    pub points: Vec<InteractionPoint>,
    pub metadata: BTreeMap<String, String>,
}

/// One rule violation found by validation.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Violation {
    pub element: String,
    pub rule: String,
    pub message: String,
}

/// Validation outcome: violations plus human-oriented content summaries.
#[derive(Debug, Clone, PartialEq, Default, serde::Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub summary: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Witness for an allowed coupling: the three branch terms and a weight
/// triple (concatenated factor labels) summing to zero with zero total
/// charge.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingWitness {
    pub terms: [BranchTerm; 3],
    pub weights: [Vec<i64>; 3],
}

/// Outcome of the coupling-allowedness check at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingCheck {
    pub allowed: bool,
    pub witness: Option<CouplingWitness>,
    pub reason: String,
}

impl ModelGraph {
    pub fn brane(&self, name: &str) -> Option<&Brane> {
        self.branes.iter().find(|b| b.name == name)
    }

    pub fn curve(&self, name: &str) -> Option<&MatterCurve> {
        self.curves.iter().find(|c| c.name == name)
    }

    pub fn point(&self, name: &str) -> Option<&InteractionPoint> {
        self.points.iter().find(|p| p.name == name)
    }
}

impl MatterCurve {
    /// The localized matter: flux > 0 gives `flux` copies of the stored
    /// representation, flux < 0 gives |flux| copies of the conjugate,
    /// flux = 0 gives nothing.
    pub fn matter_content(&self) -> Option<(Vec<Irrep>, u64)> {
        match self.flux {
            0 => None,
            n if n > 0 => Some((self.rep.clone(), n as u64)),
            n => Some((self.rep.iter().map(conjugate).collect(), (-n) as u64)),
        }
    }
}

/// The simple factors a set of curves shares, in deterministic order
/// (descending rank, then id). U(1) branes contribute no factor.
fn simple_factors(graph: &ModelGraph, curves: &[&MatterCurve]) -> Result<Vec<AlgebraId>, ModelError> {
    let mut factors: Vec<AlgebraId> = Vec::new();
    for c in curves {
        for brane_name in [&c.branes.0, &c.branes.1] {
            let brane = graph
                .brane(brane_name)
                .ok_or_else(|| ModelError::Unresolved(alloc::format!("brane {brane_name}")))?;
            if let BraneAlgebra::Simple(a) = brane.algebra {
                if !factors.contains(&a) {
                    factors.push(a);
                }
            }
        }
    }
    factors.sort_by_key(|a| (core::cmp::Reverse(a.rank()), *a));
    Ok(factors)
}

/// Is the coupling at `point` allowed: do the three curve representations
/// admit a total singlet of the point's enhanced algebra?
///
/// The representations entering the check are flux-oriented (a negative
/// flux contributes the conjugate, matching the localized zero modes); a
/// flux-zero curve contributes its stored orientation. The adjoint of the
/// enhanced algebra is branched under the curves' common simple factors;
/// each curve representation must appear among the terms, and the search
/// looks for one weight from each matching term triple summing to zero
/// with all U(1) charges summing to zero. The check is symmetric in the
/// three curves by construction.
pub fn yukawa_allowed(point: &InteractionPoint, graph: &ModelGraph) -> Result<CouplingCheck, ModelError> {
    let curves: Vec<&MatterCurve> = point
        .curves
        .iter()
        .map(|n| {
            graph
                .curve(n)
                .ok_or_else(|| ModelError::Unresolved(alloc::format!("curve {n}")))
        })
        .collect::<Result<_, _>>()?;
    let factors = simple_factors(graph, &curves)?;
    let total_rank: usize = factors.iter().map(|f| f.rank()).sum();
    if total_rank > point.enhanced.rank() {
        return Err(ModelError::Invalid(alloc::format!(
            "point {}: factors outrank the enhanced algebra {}",
            point.name,
            point.enhanced
        )));
    }
    let n_u1 = point.enhanced.rank() - total_rank;
    let embedding = find_embedding(point.enhanced, &factors, n_u1)?;
    let adj = branch(&embedding, &Irrep::adjoint(point.enhanced))?;

    // Candidate terms per curve: factor content equal to the curve rep on
    // its own brane algebras and singlet elsewhere.
    let mut candidates: Vec<Vec<&BranchTerm>> = Vec::with_capacity(3);
    for c in &curves {
        let expected = expected_tuple(graph, c, &factors)?;
        let matching: Vec<&BranchTerm> = adj
            .terms()
            .iter()
            .filter(|t| !t.is_singlet() && t.irreps == expected)
            .collect();
        if matching.is_empty() {
            return Ok(CouplingCheck {
                allowed: false,
                witness: None,
                reason: alloc::format!(
                    "curve {} carries no matching matter at {} (representation absent from \
                     the adjoint branching)",
                    c.name,
                    point.enhanced
                ),
            });
        }
        candidates.push(matching);
    }

    // Brute-force singlet search over weight triples.
    for t1 in &candidates[0] {
        for t2 in &candidates[1] {
            for t3 in &candidates[2] {
                let charge_sum: Vec<Ratio<i64>> = t1
                    .charges
                    .iter()
                    .zip(&t2.charges)
                    .zip(&t3.charges)
                    .map(|((a, b), c)| *a + *b + *c)
                    .collect();
                if charge_sum.iter().any(|q| *q != Ratio::from_integer(0)) {
                    continue;
                }
                if let Some(ws) = singlet_weights(t1, t2, t3)? {
                    return Ok(CouplingCheck {
                        allowed: true,
                        witness: Some(CouplingWitness {
                            terms: [(*t1).clone(), (*t2).clone(), (*t3).clone()],
                            weights: ws,
                        }),
                        reason: String::from("weight triple sums to zero with neutral charges"),
                    });
                }
            }
        }
    }
    Ok(CouplingCheck {
        allowed: false,
        witness: None,
        reason: String::from("no zero-sum weight triple with neutral charges"),
    })
}

fn expected_tuple(
    graph: &ModelGraph,
    curve: &MatterCurve,
    factors: &[AlgebraId],
) -> Result<Vec<Irrep>, ModelError> {
    let mut own: Vec<AlgebraId> = Vec::new();
    for brane_name in [&curve.branes.0, &curve.branes.1] {
        let brane = graph
            .brane(brane_name)
            .ok_or_else(|| ModelError::Unresolved(alloc::format!("brane {brane_name}")))?;
        if let BraneAlgebra::Simple(a) = brane.algebra {
            own.push(a);
        }
    }
    if own.len() != curve.rep.len() {
        return Err(ModelError::Invalid(alloc::format!(
            "curve {}: {} representation entries for {} simple branes",
            curve.name,
            curve.rep.len(),
            own.len()
        )));
    }
    let oriented: Vec<Irrep> = if curve.flux < 0 {
        curve.rep.iter().map(conjugate).collect()
    } else {
        curve.rep.clone()
    };
    let mut out = Vec::with_capacity(factors.len());
    for f in factors {
        match own.iter().position(|a| a == f) {
            Some(i) => out.push(oriented[i].clone()),
            None => out.push(Irrep::singlet(*f)),
        }
    }
    Ok(out)
}

/// Full product weight system of a term tuple: concatenated labels with
/// multiplicities (multiplicities are irrelevant for the singlet search,
/// only support matters).
fn tuple_weights(term: &BranchTerm) -> Result<Vec<Vec<i64>>, LieError> {
    let mut acc: Vec<Vec<i64>> = alloc::vec![Vec::new()];
    for irrep in &term.irreps {
        let ws = weight_system(irrep)?;
        let mut next = Vec::with_capacity(acc.len() * ws.entries().len());
        for prefix in &acc {
            for w in ws.entries().keys() {
                let mut v = prefix.clone();
                v.extend_from_slice(w);
                next.push(v);
            }
        }
        acc = next;
    }
    Ok(acc)
}

fn singlet_weights(
    t1: &BranchTerm,
    t2: &BranchTerm,
    t3: &BranchTerm,
) -> Result<Option<[Vec<i64>; 3]>, LieError> {
    let w1 = tuple_weights(t1)?;
    let w2 = tuple_weights(t2)?;
    let w3: alloc::collections::BTreeSet<Vec<i64>> = tuple_weights(t3)?.into_iter().collect();
    for a in &w1 {
        for b in &w2 {
            let need: Vec<i64> = a.iter().zip(b).map(|(x, y)| -(x + y)).collect();
            if w3.contains(&need) {
                return Ok(Some([a.clone(), b.clone(), need]));
            }
        }
    }
    Ok(None)
}

/// The hypercharge direction used for standard-model content checks.
pub const HYPERCHARGE_DIRECTION: [i64; 5] = [2, 2, 2, -3, -3];

/// Validate the whole graph; returns every violation rather than stopping
/// at the first. Pure and idempotent.
pub fn validate_model(graph: &ModelGraph) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut violations: Vec<Violation> = Vec::new();
    let mut push = |element: &str, rule: &str, message: String| {
        violations.push(Violation {
            element: String::from(element),
            rule: String::from(rule),
            message,
        });
    };

    // Name uniqueness.
    for (kind, names) in [
        ("brane", graph.branes.iter().map(|b| &b.name).collect::<Vec<_>>()),
        ("curve", graph.curves.iter().map(|c| &c.name).collect()),
        ("point", graph.points.iter().map(|p| &p.name).collect()),
    ] {
        let mut seen = alloc::collections::BTreeSet::new();
        for n in names {
            if !seen.insert(n) {
                push(n, "unique-name", alloc::format!("duplicate {kind} name"));
            }
        }
    }

    // Curves: resolvable branes, strict enhancement, representation is a
    // matter term of the adjoint branching.
    for c in &graph.curves {
        let mut simple: Vec<AlgebraId> = Vec::new();
        let mut n_u1_branes = 0usize;
        let mut broken = false;
        for brane_name in [&c.branes.0, &c.branes.1] {
            match graph.brane(brane_name) {
                None => {
                    push(&c.name, "unresolved-reference", alloc::format!("brane {brane_name} not found"));
                    broken = true;
                }
                Some(b) => match b.algebra {
                    BraneAlgebra::Simple(a) => simple.push(a),
                    BraneAlgebra::U1 => n_u1_branes += 1,
                },
            }
        }
        if broken {
            continue;
        }
        for a in &simple {
            if !(contains_regular(c.enhanced, *a) && c.enhanced != *a) {
                push(
                    &c.name,
                    "enhancement-containment",
                    alloc::format!("{} does not strictly contain brane algebra {a}", c.enhanced),
                );
            }
        }
        let total: usize = simple.iter().map(|a| a.rank()).sum();
        if c.enhanced.rank() < total + n_u1_branes {
            push(
                &c.name,
                "enhancement-rank",
                alloc::format!(
                    "{} has rank {} but the branes need at least {}",
                    c.enhanced,
                    c.enhanced.rank(),
                    total + n_u1_branes
                ),
            );
            continue;
        }
        if c.rep.len() != simple.len() {
            push(
                &c.name,
                "representation-arity",
                alloc::format!("{} entries for {} simple branes", c.rep.len(), simple.len()),
            );
            continue;
        }
        let mut factors = simple.clone();
        factors.sort_by_key(|a| (core::cmp::Reverse(a.rank()), *a));
        match find_embedding(c.enhanced, &factors, c.enhanced.rank() - total) {
            Err(e) => push(&c.name, "embedding", alloc::format!("{e}")),
            Ok(embedding) => match branch(&embedding, &Irrep::adjoint(c.enhanced)) {
                Err(e) => push(&c.name, "adjoint-branching", alloc::format!("{e}")),
                Ok(adj) => {
                    let expected = match expected_tuple(graph, c, &factors) {
                        Ok(t) => t,
                        Err(e) => {
                            push(&c.name, "representation", alloc::format!("{e}"));
                            continue;
                        }
                    };
                    let is_matter_term = adj.terms().iter().any(|t| {
                        t.irreps == expected
                            && !t.is_singlet()
                            && !is_factor_adjoint(t)
                    });
                    if !is_matter_term {
                        push(
                            &c.name,
                            "matter-representation",
                            alloc::format!(
                                "representation is not a non-adjoint, non-singlet term of the \
                                 adjoint branching of {}",
                                c.enhanced
                            ),
                        );
                    }
                }
            },
        }
    }

    // Points: resolvable curves and the enhancement chain.
    for p in &graph.points {
        let mut curves: Vec<&MatterCurve> = Vec::new();
        for n in &p.curves {
            match graph.curve(n) {
                None => push(&p.name, "unresolved-reference", alloc::format!("curve {n} not found")),
                Some(c) => curves.push(c),
            }
        }
        for c in &curves {
            if !(contains_regular(p.enhanced, c.enhanced) && p.enhanced != c.enhanced) {
                push(
                    &p.name,
                    "chain-condition",
                    alloc::format!(
                        "{} does not strictly contain curve algebra {} of {}",
                        p.enhanced,
                        c.enhanced,
                        c.name
                    ),
                );
            }
        }
    }

    // Content summaries.
    for c in &graph.curves {
        if let Some((reps, n)) = c.matter_content() {
            let names: Vec<String> =
                reps.iter().map(crate::liealg::display_name).collect();
            report
                .summary
                .push(alloc::format!("curve {}: {} generations of {}", c.name, n, names.join(" x ")));
        }
    }

    // Standard-model intent: net chiral content must reproduce three
    // generations of the broken-SU(5) matter list.
    if graph.metadata.get("intent").map(String::as_str) == Some("standard-model") {
        match sm_content_check(graph) {
            Ok(None) => report.summary.push(String::from(
                "net chiral content matches three standard-model generations",
            )),
            Ok(Some(diff)) => push("model", "standard-model-content", diff),
            Err(e) => push("model", "standard-model-content", alloc::format!("{e}")),
        }
    }

    report.violations = violations;
    report
}

fn is_factor_adjoint(term: &BranchTerm) -> bool {
    // A term consisting of one factor's adjoint with all other factors
    // singlet is gauge, not matter.
    let mut found_adjoint = false;
    for r in &term.irreps {
        if r.is_singlet() {
            continue;
        }
        if *r == Irrep::adjoint(r.algebra()) && !found_adjoint {
            found_adjoint = true;
        } else {
            return false;
        }
    }
    found_adjoint
}

/// Compare the graph's net chiral SU(5) content, broken along the
/// hypercharge direction, against three standard-model generations.
/// Returns None on a match, or a description of the difference.
fn sm_content_check(graph: &ModelGraph) -> Result<Option<String>, ModelError> {
    let su5 = AlgebraId::parse("SU(5)").expect("static name");
    let cb = commutant_breaking(su5, &HYPERCHARGE_DIRECTION)?;

    let mut net: BTreeMap<ChiralityKey, i64> = BTreeMap::new();
    let add = |rep: &Irrep, count: i64, net: &mut BTreeMap<ChiralityKey, i64>| -> Result<(), ModelError> {
        let b = branch(&cb.embedding, rep)?;
        for t in b.terms() {
            let key = (
                t.irreps[0].labels().to_vec(),
                t.irreps[1].labels().to_vec(),
                t.charges[0],
            );
            let (canon, sign) = canonical_chirality(key);
            *net.entry(canon).or_insert(0) += sign * count * t.multiplicity as i64;
        }
        Ok(())
    };

    let mut found_su5_matter = false;
    for c in &graph.curves {
        if c.rep.len() == 1 && c.rep[0].algebra() == su5 && c.flux != 0 {
            found_su5_matter = true;
            add(&c.rep[0], c.flux, &mut net)?;
        }
    }
    if !found_su5_matter {
        return Ok(Some(String::from("no SU(5) matter curves with nonzero flux")));
    }

    let mut expected: BTreeMap<ChiralityKey, i64> = BTreeMap::new();
    for rep_name in ["10", "5bar"] {
        let rep = crate::liealg::parse_irrep(su5, rep_name).expect("static name");
        let b = branch(&cb.embedding, &rep)?;
        for t in b.terms() {
            let key = (
                t.irreps[0].labels().to_vec(),
                t.irreps[1].labels().to_vec(),
                t.charges[0],
            );
            let (canon, sign) = canonical_chirality(key);
            *expected.entry(canon).or_insert(0) += sign * 3 * t.multiplicity as i64;
        }
    }
    net.retain(|_, v| *v != 0);
    expected.retain(|_, v| *v != 0);
    if net == expected {
        Ok(None)
    } else {
        Ok(Some(alloc::format!(
            "net chiral content {net:?} differs from three generations {expected:?}"
        )))
    }
}

/// Canonical orientation for a chirality-signed piece: a piece and its
/// conjugate (conjugate labels, negated charge) count with opposite signs
/// under one canonical key.
fn canonical_chirality(key: ChiralityKey) -> (ChiralityKey, i64) {
    let su3 = AlgebraId::parse("SU(3)").expect("static name");
    let su2 = AlgebraId::parse("SU(2)").expect("static name");
    let conj = (
        conjugate(&Irrep::new(su3, key.0.clone()).expect("valid labels"))
            .labels()
            .to_vec(),
        conjugate(&Irrep::new(su2, key.1.clone()).expect("valid labels"))
            .labels()
            .to_vec(),
        -key.2,
    );
    if key <= conj {
        (key, 1)
    } else {
        (conj, -1)
    }
}

/// The minimal three-generation SU(5) model: one GUT brane, four U(1)
/// branes, a 10 curve and a 5bar curve with three generations each, a
/// vector-like Higgs pair, and the two interaction points.
pub fn su5_three_gen() -> ModelGraph {
    let su5 = AlgebraId::parse("SU(5)").expect("static name");
    let so10 = AlgebraId::parse("SO(10)").expect("static name");
    let su6 = AlgebraId::parse("SU(6)").expect("static name");
    let e6 = AlgebraId::parse("E6").expect("static name");
    let so12 = AlgebraId::parse("SO(12)").expect("static name");
    let rep = |name: &str| alloc::vec![crate::liealg::parse_irrep(su5, name).expect("static name")];
    let brane = |name: &str, algebra: BraneAlgebra| Brane { name: String::from(name), algebra };
    let mut metadata = BTreeMap::new();
    metadata.insert(String::from("intent"), String::from("standard-model"));
    metadata.insert(
        String::from("description"),
        String::from("minimal SU(5) model with three generations and one Higgs pair"),
    );
    ModelGraph {
        branes: alloc::vec![
            brane("gut", BraneAlgebra::Simple(su5)),
            brane("u1_a", BraneAlgebra::U1),
            brane("u1_b", BraneAlgebra::U1),
            brane("u1_c", BraneAlgebra::U1),
            brane("u1_d", BraneAlgebra::U1),
        ],
        curves: alloc::vec![
            MatterCurve {
                name: String::from("sigma_10"),
                branes: (String::from("gut"), String::from("u1_a")),
                enhanced: so10,
                rep: rep("10"),
                flux: 3,
            },
            MatterCurve {
                name: String::from("sigma_5bar"),
                branes: (String::from("gut"), String::from("u1_b")),
                enhanced: su6,
                rep: rep("5bar"),
                flux: 3,
            },
            MatterCurve {
                name: String::from("sigma_h_up"),
                branes: (String::from("gut"), String::from("u1_c")),
                enhanced: su6,
                rep: rep("5"),
                flux: 1,
            },
            MatterCurve {
                name: String::from("sigma_h_down"),
                branes: (String::from("gut"), String::from("u1_d")),
                enhanced: su6,
                rep: rep("5"),
                flux: -1,
            },
        ],
        points: alloc::vec![
            InteractionPoint {
                name: String::from("p_top"),
                curves: [
                    String::from("sigma_10"),
                    String::from("sigma_10"),
                    String::from("sigma_h_up"),
                ],
                enhanced: e6,
                coupling_label: String::from("10.10.5"),
            },
            InteractionPoint {
                name: String::from("p_down"),
                curves: [
                    String::from("sigma_10"),
                    String::from("sigma_5bar"),
                    String::from("sigma_h_down"),
                ],
                enhanced: so12,
                coupling_label: String::from("10.5bar.5bar"),
            },
        ],
        metadata,
    }
}
