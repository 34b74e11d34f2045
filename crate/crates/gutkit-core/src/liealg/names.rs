//! Irrep naming: dimension names ("10", "5bar"), structural names
//! ("adjoint", "fundamental", "spinor"), and raw Dynkin labels.

use alloc::string::String;
use alloc::vec::Vec;

use super::weights::{conjugate, weyl_dimension};
use super::{AlgebraId, Irrep, LieError, Series};

/// Parse an irrep specification.
///
/// Accepted forms: `adjoint`, `fundamental`, `singlet`, `spinor` /
/// `cospinor` (D series), a bracketed Dynkin label list `[0,1,0,0]`, a
/// dimension name `10`, or a conjugate dimension name `10bar`. A dimension
/// name resolves to the canonical irrep of that dimension: the one with
/// lexicographically greatest labels (so `10` of SU(5) is the
/// antisymmetric square, `5` the fundamental); `bar` takes its conjugate.
pub fn parse_irrep(algebra: AlgebraId, text: &str) -> Result<Irrep, LieError> {
    let t = text.trim();
    match t {
        "adjoint" => return Ok(Irrep::adjoint(algebra)),
        "fundamental" => return Ok(Irrep::fundamental(algebra)),
        "singlet" | "trivial" => return Ok(Irrep::singlet(algebra)),
        "spinor" | "cospinor" => {
            if algebra.series() != Series::D {
                return Err(LieError::InvalidIrrep {
                    algebra,
                    reason: String::from("spinor names apply to the D series only"),
                });
            }
            let mut labels = alloc::vec![0i64; algebra.rank()];
            if t == "spinor" {
                labels[algebra.rank() - 1] = 1;
            } else {
                labels[algebra.rank() - 2] = 1;
            }
            return Irrep::new(algebra, labels);
        }
        _ => {}
    }
    if let Some(inner) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
        let labels: Result<Vec<i64>, _> = inner
            .split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect();
        let labels = labels.map_err(|_| LieError::InvalidIrrep {
            algebra,
            reason: alloc::format!("unparseable label list {t}"),
        })?;
        return Irrep::new(algebra, labels);
    }
    let (dim_text, conj) = match t.strip_suffix("bar") {
        Some(d) => (d, true),
        None => (t, false),
    };
    let dim: u64 = dim_text.parse().map_err(|_| LieError::InvalidIrrep {
        algebra,
        reason: alloc::format!("unrecognized irrep name {t:?}"),
    })?;
    let r = canonical_of_dimension(algebra, dim).ok_or_else(|| LieError::InvalidIrrep {
        algebra,
        reason: alloc::format!("no irrep of dimension {dim}"),
    })?;
    Ok(if conj { conjugate(&r) } else { r })
}

/// Short display name for an irrep: its dimension, with a `bar` suffix for
/// the conjugate of the canonical irrep of that dimension, or the raw
/// labels when the dimension name would be ambiguous.
pub fn display_name(irrep: &Irrep) -> String {
    let dim = match weyl_dimension(irrep) {
        Ok(d) => d,
        Err(_) => return alloc::format!("{irrep}"),
    };
    match canonical_of_dimension(irrep.algebra(), dim) {
        Some(canon) if &canon == irrep => alloc::format!("{dim}"),
        Some(canon) if conjugate(&canon) == *irrep => alloc::format!("{dim}bar"),
        _ => alloc::format!("{dim}{:?}", irrep.labels()),
    }
}

/// The irrep of the given dimension with lexicographically greatest labels,
/// except that for the D series a spinor beats its cospinor (so "16" of
/// SO(10) is the spinor whose branching carries the 10 of SU(5)).
fn canonical_of_dimension(algebra: AlgebraId, dim: u64) -> Option<Irrep> {
    let mut best: Option<Vec<i64>> = None;
    let mut labels = alloc::vec![0i64; algebra.rank()];
    search_labels(algebra, dim, 0, &mut labels, &mut best);
    let mut best = best?;
    if algebra.series() == Series::D {
        let n = algebra.rank();
        let mut swapped = best.clone();
        swapped.swap(n - 1, n - 2);
        if swapped[n - 1] > best[n - 1]
            && weyl_dimension(&Irrep::new(algebra, swapped.clone()).unwrap()) == Ok(dim)
        {
            best = swapped;
        }
    }
    Some(Irrep::new(algebra, best).expect("searched labels are valid"))
}

// Depth-first search over label vectors; the Weyl dimension is strictly
// increasing in every label, which bounds the walk.
fn search_labels(
    algebra: AlgebraId,
    dim: u64,
    pos: usize,
    labels: &mut Vec<i64>,
    best: &mut Option<Vec<i64>>,
) {
    let current = weyl_dimension(&Irrep::new(algebra, labels.clone()).unwrap()).unwrap_or(u64::MAX);
    if current > dim {
        return;
    }
    if current == dim && (best.is_none() || best.as_deref() < Some(labels.as_slice())) {
        *best = Some(labels.clone());
    }
    if pos >= labels.len() {
        return;
    }
    // Leave labels[pos] = 0.
    search_labels(algebra, dim, pos + 1, labels, best);
    loop {
        labels[pos] += 1;
        let d = weyl_dimension(&Irrep::new(algebra, labels.clone()).unwrap()).unwrap_or(u64::MAX);
        if d > dim {
            break;
        }
        search_labels(algebra, dim, pos + 1, labels, best);
    }
    labels[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(name: &str) -> AlgebraId {
        AlgebraId::parse(name).unwrap()
    }

    #[test]
    fn dimension_names_of_su5() {
        let su5 = alg("SU(5)");
        assert_eq!(parse_irrep(su5, "5").unwrap().labels(), &[1, 0, 0, 0]);
        assert_eq!(parse_irrep(su5, "5bar").unwrap().labels(), &[0, 0, 0, 1]);
        assert_eq!(parse_irrep(su5, "10").unwrap().labels(), &[0, 1, 0, 0]);
        assert_eq!(parse_irrep(su5, "10bar").unwrap().labels(), &[0, 0, 1, 0]);
        assert_eq!(parse_irrep(su5, "24").unwrap().labels(), &[1, 0, 0, 1]);
        assert_eq!(parse_irrep(su5, "1").unwrap().labels(), &[0, 0, 0, 0]);
    }

    #[test]
    fn so10_sixteen_is_the_spinor() {
        let so10 = alg("SO(10)");
        assert_eq!(parse_irrep(so10, "16").unwrap().labels(), &[0, 0, 0, 0, 1]);
        assert_eq!(parse_irrep(so10, "16bar").unwrap().labels(), &[0, 0, 0, 1, 0]);
        assert_eq!(parse_irrep(so10, "16").unwrap(), parse_irrep(so10, "spinor").unwrap());
        assert_eq!(parse_irrep(so10, "10").unwrap().labels(), &[1, 0, 0, 0, 0]);
        assert_eq!(parse_irrep(so10, "45").unwrap().labels(), &[0, 1, 0, 0, 0]);
    }

    #[test]
    fn structural_names() {
        assert_eq!(parse_irrep(alg("SU(5)"), "adjoint").unwrap().labels(), &[1, 0, 0, 1]);
        assert_eq!(
            parse_irrep(alg("SO(10)"), "spinor").unwrap().labels(),
            &[0, 0, 0, 0, 1]
        );
        assert_eq!(
            parse_irrep(alg("SO(10)"), "adjoint").unwrap().labels(),
            &[0, 1, 0, 0, 0]
        );
        assert_eq!(parse_irrep(alg("E6"), "27").unwrap().labels(), &[1, 0, 0, 0, 0, 0]);
        assert_eq!(parse_irrep(alg("E8"), "adjoint").unwrap(), Irrep::adjoint(alg("E8")));
    }

    #[test]
    fn label_lists() {
        assert_eq!(
            parse_irrep(alg("SU(5)"), "[0, 1, 0, 0]").unwrap().labels(),
            &[0, 1, 0, 0]
        );
        assert!(parse_irrep(alg("SU(5)"), "[0,1,0]").is_err());
    }

    #[test]
    fn display_names_round_trip() {
        let su5 = alg("SU(5)");
        for name in ["5", "5bar", "10", "10bar", "24", "1"] {
            let r = parse_irrep(su5, name).unwrap();
            assert_eq!(display_name(&r), name);
        }
    }

    #[test]
    fn unknown_names_rejected() {
        assert!(parse_irrep(alg("SU(5)"), "decuplet").is_err());
        assert!(parse_irrep(alg("SU(5)"), "7").is_err());
        assert!(parse_irrep(alg("SU(5)"), "spinor").is_err());
    }
}
