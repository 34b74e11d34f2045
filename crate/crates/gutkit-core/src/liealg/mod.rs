//! Exact representation theory for the simply-laced (A-D-E) simple Lie
//! algebras.
//!
//! Everything here is built from the Cartan matrix up: positive roots are
//! generated by closing the simple system under addition, weights live in
//! the fundamental-weight (Dynkin label) basis, and all arithmetic is
//! integer or rational so that branching identities hold exactly.
//!
//! The module deliberately covers only what regular (rank-preserving,
//! root-subsystem) embeddings need: Weyl dimensions, weight systems with
//! Freudenthal multiplicities, Dynkin indices, branching under projection,
//! commutant breaking along a Cartan direction, and minimal-enhancement
//! search over the Borel–de Siebenthal subsystem poset. Non-simply-laced
//! series and special (non-regular) embeddings are out of scope.

mod branch;
mod commutant;
mod embed;
mod enhance;
mod names;
mod roots;
mod weights;

pub use branch::{branch, BranchResult, BranchTerm};
pub use commutant::{commutant_breaking, CommutantBreaking};
pub use embed::{find_embedding, Embedding};
pub use enhance::{contains_regular, minimal_enhancement};
pub use names::{display_name, parse_irrep};
pub use roots::RootSystem;
pub use weights::{
    conjugate, dynkin_index, weight_system, weight_system_capped, weyl_dimension, WeightSystem,
    DEFAULT_WEIGHT_CAP,
};

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// The three simply-laced series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub enum Series {
    A,
    D,
    E,
}

/// A simple A-D-E Lie algebra, identified by series and rank.
///
/// Construction normalizes the low-rank coincidence `D3 ≅ A3`
/// (`so(6) ≅ su(4)`), so equality on `AlgebraId` is isomorphism of
/// algebras within the supported families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub struct AlgebraId {
    series: Series,
    rank: u8,
}

/// Errors from representation-theory operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid irrep for {algebra}: {reason}")]
    InvalidIrrep { algebra: AlgebraId, reason: String },
    #[error("representation too large: dimension {dim} exceeds cap {cap}")]
    WeightCapExceeded { dim: u64, cap: u64 },
    #[error("dimension overflows u64 for the requested labels")]
    DimensionOverflow,
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("no regular embedding of {wanted} in {parent}")]
    NoSuchEmbedding { parent: AlgebraId, wanted: String },
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("no A-D-E algebra of rank <= 8 accommodates the required enhancements (beyond E8)")]
    EnhancementOverflow,
}

impl AlgebraId {
    /// Build an algebra id, validating the rank constraints of each series
    /// (A: rank >= 1, D: rank >= 3, E: rank in {6,7,8}).
    pub fn new(series: Series, rank: u8) -> Result<Self, LieError> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::D => rank >= 3,
            Series::E => (6..=8).contains(&rank),
        };
        if !ok {
            return Err(LieError::InvalidAlgebra(alloc::format!(
                "{series:?}{rank} is not a valid A-D-E algebra"
            )));
        }
        // so(6) ≅ su(4): keep one canonical representative.
        if series == Series::D && rank == 3 {
            return Ok(AlgebraId { series: Series::A, rank: 3 });
        }
        Ok(AlgebraId { series, rank })
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    /// Dimension of the algebra (number of roots plus rank).
    pub fn dim(&self) -> u64 {
        let n = self.rank as u64;
        match self.series {
            Series::A => n * (n + 2),
            Series::D => n * (2 * n - 1),
            Series::E => match self.rank {
                6 => 78,
                7 => 133,
                _ => 248,
            },
        }
    }

    /// Parse either the series-rank spelling ("A4", "D5", "E6") or the
    /// physics name ("SU(5)", "SO(10)").
    pub fn parse(text: &str) -> Result<Self, LieError> {
        let t = text.trim();
        let bad = || LieError::InvalidAlgebra(String::from(t));
        if let Some(rest) = t.strip_prefix("SU(").and_then(|r| r.strip_suffix(')')) {
            let n: u8 = rest.parse().map_err(|_| bad())?;
            if n < 2 {
                return Err(bad());
            }
            return AlgebraId::new(Series::A, n - 1);
        }
        if let Some(rest) = t.strip_prefix("SO(").and_then(|r| r.strip_suffix(')')) {
            let n: u8 = rest.parse().map_err(|_| bad())?;
            if !n.is_multiple_of(2) || n < 6 {
                return Err(LieError::InvalidAlgebra(alloc::format!(
                    "{t}: only even orthogonal groups SO(2n), n >= 3, are simply laced"
                )));
            }
            return AlgebraId::new(Series::D, n / 2);
        }
        let mut chars = t.chars();
        let series = match chars.next() {
            Some('A') => Series::A,
            Some('D') => Series::D,
            Some('E') => Series::E,
            _ => return Err(bad()),
        };
        let rank: u8 = chars.as_str().parse().map_err(|_| bad())?;
        AlgebraId::new(series, rank)
    }

    /// Canonical physics name: "SU(n+1)" for A, "SO(2n)" for D, "En" for E.
    pub fn name(&self) -> String {
        alloc::format!("{self}")
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.series {
            Series::A => write!(f, "SU({})", self.rank + 1),
            Series::D => write!(f, "SO({})", 2 * self.rank as u16),
            Series::E => write!(f, "E{}", self.rank),
        }
    }
}

/// An irreducible representation, identified by its highest weight in
/// Dynkin labels (coordinates on the fundamental weights).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub struct Irrep {
    algebra: AlgebraId,
    labels: Vec<i64>,
}

impl Irrep {
    /// Validate label length and non-negativity.
    pub fn new(algebra: AlgebraId, labels: Vec<i64>) -> Result<Self, LieError> {
        if labels.len() != algebra.rank() {
            return Err(LieError::InvalidIrrep {
                algebra,
                reason: alloc::format!(
                    "expected {} Dynkin labels, got {}",
                    algebra.rank(),
                    labels.len()
                ),
            });
        }
        if labels.iter().any(|&l| l < 0) {
            return Err(LieError::InvalidIrrep {
                algebra,
                reason: String::from("Dynkin labels must be non-negative"),
            });
        }
        Ok(Irrep { algebra, labels })
    }

    pub fn algebra(&self) -> AlgebraId {
        self.algebra
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    /// The trivial (singlet) representation.
    pub fn singlet(algebra: AlgebraId) -> Self {
        Irrep { algebra, labels: alloc::vec![0; algebra.rank()] }
    }

    /// The adjoint: highest weight is the highest root.
    pub fn adjoint(algebra: AlgebraId) -> Self {
        let rs = RootSystem::new(algebra);
        let labels = rs.root_to_weight(rs.highest_root());
        Irrep { algebra, labels }
    }

    /// The defining representation: first fundamental weight for A and D
    /// series (SU(n+1) fundamental, SO(2n) vector); for E-series the
    /// smallest fundamental (27 of E6, 56 of E7, adjoint of E8).
    pub fn fundamental(algebra: AlgebraId) -> Self {
        let mut labels = alloc::vec![0i64; algebra.rank()];
        match algebra.series {
            Series::A | Series::D => labels[0] = 1,
            Series::E => match algebra.rank {
                6 => labels[0] = 1,
                7 => labels[6] = 1,
                _ => return Self::adjoint(algebra),
            },
        }
        Irrep { algebra, labels }
    }

    pub fn is_singlet(&self) -> bool {
        self.labels.iter().all(|&l| l == 0)
    }
}

impl fmt::Display for Irrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.algebra)?;
        for (i, l) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "]")
    }
}
