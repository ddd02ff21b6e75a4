//! Named tree and graph families, their closed-form averages, and the
//! extremal bounds that compare an arbitrary tree against them.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fast::{aecc3, EccError};
use crate::graph::Graph;
use crate::rational::Rational;
use crate::tree::{GraphError, Tree, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid parameters for {family}: {reason}")]
    InvalidParameters { family: String, reason: String },
    #[error("{0} is not a tree")]
    NotATree(String),
    #[error("the average Steiner 3-eccentricity needs n >= 3, got n = {0}")]
    TooSmall(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Ecc(#[from] EccError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilySpec {
    Path {
        n: usize,
    },
    Star {
        n: usize,
    },
    Complete {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    CompleteBipartite {
        m: usize,
        n: usize,
    },
    /// `K_{1,delta}` with a path of `n - delta - 1` further vertices hanging
    /// from one leaf.
    Broom {
        n: usize,
        delta: usize,
    },
    /// One branching vertex with `p` legs whose lengths differ by at most one.
    BalancedStarlike {
        n: usize,
        p: usize,
    },
    /// `K_{1,m}` with a pendent edge added at `n - m - 1` of its leaves.
    #[serde(rename = "T_nm")]
    Tnm {
        n: usize,
        m: usize,
    },
    /// Path `v0 .. vd` with the remaining `n - d - 1` vertices as pendants at
    /// the middle vertex (or split over the two middle vertices for odd `d`).
    #[serde(rename = "Tprime_nd")]
    TprimeNd {
        n: usize,
        d: usize,
    },
    /// Path `v0 .. vd` with `pendants[i - 1]` pendent vertices at `vi`.
    #[serde(rename = "Tprime_general")]
    TprimeGeneral {
        n: usize,
        d: usize,
        pendants: Vec<usize>,
    },
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Path { n } => write!(f, "P_{n}"),
            FamilySpec::Star { n } => write!(f, "K_{{1,{}}}", n.saturating_sub(1)),
            FamilySpec::Complete { n } => write!(f, "K_{n}"),
            FamilySpec::Cycle { n } => write!(f, "C_{n}"),
            FamilySpec::CompleteBipartite { m, n } => write!(f, "K_{{{m},{n}}}"),
            FamilySpec::Broom { n, delta } => write!(f, "B({n},{delta})"),
            FamilySpec::BalancedStarlike { n, p } => write!(f, "BS_{{{n},{p}}}"),
            FamilySpec::Tnm { n, m } => write!(f, "T_{{{n},{m}}}"),
            FamilySpec::TprimeNd { n, d } => write!(f, "T'_{{{n},{d}}}"),
            FamilySpec::TprimeGeneral { n, d, pendants } => {
                let list: Vec<String> = pendants.iter().map(usize::to_string).collect();
                write!(f, "T_{{{n},{d}}}({})", list.join(","))
            }
        }
    }
}

/// A generated instance: trees for every family except complete graphs,
/// cycles and complete bipartite graphs that are not stars.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generated {
    Tree(Tree),
    Graph(Graph),
}

impl FamilySpec {
    /// Number of vertices.
    pub fn order(&self) -> usize {
        match *self {
            FamilySpec::CompleteBipartite { m, n } => m + n,
            FamilySpec::Path { n }
            | FamilySpec::Star { n }
            | FamilySpec::Complete { n }
            | FamilySpec::Cycle { n }
            | FamilySpec::Broom { n, .. }
            | FamilySpec::BalancedStarlike { n, .. }
            | FamilySpec::Tnm { n, .. }
            | FamilySpec::TprimeNd { n, .. }
            | FamilySpec::TprimeGeneral { n, .. } => n,
        }
    }

    fn invalid(&self, reason: impl Into<String>) -> FamilyError {
        FamilyError::InvalidParameters {
            family: self.to_string(),
            reason: reason.into(),
        }
    }

    /// Checks the parameter ranges of the family.
    pub fn validate(&self) -> Result<(), FamilyError> {
        let ok = |cond: bool, reason: &str| {
            if cond {
                Ok(())
            } else {
                Err(self.invalid(reason))
            }
        };
        match self {
            FamilySpec::Path { n } | FamilySpec::Complete { n } => ok(*n >= 1, "needs n >= 1"),
            FamilySpec::Star { n } => ok(*n >= 2, "needs n >= 2"),
            FamilySpec::Cycle { n } => ok(*n >= 3, "needs n >= 3"),
            FamilySpec::CompleteBipartite { m, n } => {
                ok(*m >= 1 && *n >= 1, "needs both parts non-empty")
            }
            FamilySpec::Broom { n, delta } => ok(3 <= *delta && delta < n, "needs 3 <= delta < n"),
            FamilySpec::BalancedStarlike { n, p } => ok(2 <= *p && p < n, "needs 2 <= p < n"),
            FamilySpec::Tnm { n, m } => ok(
                *m >= 2 && m + 2 <= *n && *n <= 2 * m + 1,
                "needs m >= 2 and m + 2 <= n <= 2m + 1",
            ),
            FamilySpec::TprimeNd { n, d } => ok(2 <= *d && d < n, "needs 2 <= d < n"),
            FamilySpec::TprimeGeneral { n, d, pendants } => {
                ok(*d >= 1 && d < n, "needs 1 <= d < n")?;
                ok(
                    pendants.len() == d - 1,
                    "needs exactly d - 1 pendant counts",
                )?;
                ok(
                    pendants.iter().sum::<usize>() + d + 1 == *n,
                    "pendant counts must sum to n - d - 1",
                )
            }
        }
    }

    pub fn is_tree(&self) -> bool {
        match *self {
            FamilySpec::Complete { n } => n <= 2,
            FamilySpec::Cycle { .. } => false,
            FamilySpec::CompleteBipartite { m, n } => m.min(n) == 1,
            _ => true,
        }
    }
}

fn tree_with_pendants(
    path_len: usize,
    pendants: &[(Vertex, usize)],
    n: usize,
) -> Result<Tree, GraphError> {
    let mut edges: Vec<(Vertex, Vertex)> = (0..path_len).map(|i| (i, i + 1)).collect();
    let mut next = path_len + 1;
    for &(at, count) in pendants {
        for _ in 0..count {
            edges.push((at, next));
            next += 1;
        }
    }
    Tree::from_edge_list(n, &edges)
}

/// Legs of `BS_{n,p}`: `r` legs of length `q + 1` followed by `p - r` of
/// length `q`, where `n - 1 = qp + r`.
pub fn balanced_leg_lengths(n: usize, p: usize) -> Vec<usize> {
    let (q, r) = ((n - 1) / p, (n - 1) % p);
    (0..p).map(|i| if i < r { q + 1 } else { q }).collect()
}

/// Hub `0` and the given legs, numbered leg by leg.
pub fn spider(legs: &[usize]) -> Result<Tree, GraphError> {
    let n = 1 + legs.iter().sum::<usize>();
    let mut edges = Vec::with_capacity(n - 1);
    let mut next = 1;
    for &len in legs {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Tree::from_edge_list(n, &edges)
}

/// Canonical labeled instance of the family.
pub fn generate(spec: &FamilySpec) -> Result<Generated, FamilyError> {
    spec.validate()?;
    let tree = |t: Result<Tree, GraphError>| Ok(Generated::Tree(t?));
    match *spec {
        FamilySpec::Path { n } => tree(Tree::from_edge_list(
            n,
            &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>(),
        )),
        FamilySpec::Star { n } => tree(spider(&vec![1; n - 1])),
        FamilySpec::Complete { n } => {
            let edges: Vec<_> = (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .collect();
            graph_or_tree(n, &edges)
        }
        FamilySpec::Cycle { n } => Ok(Generated::Graph(Graph::from_edge_list(
            n,
            &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>(),
        )?)),
        FamilySpec::CompleteBipartite { m, n } => {
            let edges: Vec<_> = (0..m)
                .flat_map(|a| (m..m + n).map(move |b| (a, b)))
                .collect();
            graph_or_tree(m + n, &edges)
        }
        FamilySpec::Broom { n, delta } => {
            let mut legs = vec![1; delta];
            legs[0] = n - delta;
            tree(spider(&legs))
        }
        FamilySpec::BalancedStarlike { n, p } => tree(spider(&balanced_leg_lengths(n, p))),
        FamilySpec::Tnm { n, m } => {
            let mut legs = vec![1; m];
            legs.iter_mut().take(n - m - 1).for_each(|l| *l = 2);
            tree(spider(&legs))
        }
        FamilySpec::TprimeNd { n, d } => {
            let extra = n - d - 1;
            let pendants = if d % 2 == 0 {
                vec![(d / 2, extra)]
            } else {
                vec![(d / 2, extra / 2), (d / 2 + 1, extra - extra / 2)]
            };
            tree(tree_with_pendants(d, &pendants, n))
        }
        FamilySpec::TprimeGeneral { n, d, ref pendants } => {
            let at: Vec<(Vertex, usize)> = pendants
                .iter()
                .enumerate()
                .map(|(i, &c)| (i + 1, c))
                .collect();
            tree(tree_with_pendants(d, &at, n))
        }
    }
}

fn graph_or_tree(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Generated, FamilyError> {
    if edges.len() + 1 == n {
        Ok(Generated::Tree(Tree::from_edge_list(n, edges)?))
    } else {
        Ok(Generated::Graph(Graph::from_edge_list(n, edges)?))
    }
}

/// Like [`generate`], but only for families that are trees.
pub fn generate_tree(spec: &FamilySpec) -> Result<Tree, FamilyError> {
    match generate(spec)? {
        Generated::Tree(t) => Ok(t),
        Generated::Graph(_) => Err(FamilyError::NotATree(spec.to_string())),
    }
}

/// Exact average Steiner 3-eccentricity for families with a closed form;
/// `None` for the others, whose values come from the fast algorithm.
pub fn closed_form_aecc3(spec: &FamilySpec) -> Result<Option<Rational>, FamilyError> {
    spec.validate()?;
    let order = spec.order();
    if order < 3 {
        return Err(FamilyError::TooSmall(order));
    }
    let n = order as i64;
    let value = match *spec {
        FamilySpec::Path { .. } => Rational::from_integer(n - 1),
        // K_{1,2} is P_3, where no vertex sees two leaves besides itself.
        FamilySpec::Star { n: 3 } => Rational::from_integer(2),
        FamilySpec::Star { .. } => Rational::from_integer(3) - Rational::new(1, n),
        FamilySpec::Complete { .. } => Rational::from_integer(2),
        // Three vertices on a cycle span all of it except the largest gap.
        FamilySpec::Cycle { n } => Rational::from_integer((n - n.div_ceil(3)) as i64),
        FamilySpec::CompleteBipartite { m, n: k } => {
            // A vertex reaches 3 exactly when its own side has two more vertices.
            let side = |s: usize| if s >= 3 { 3 } else { 2 };
            Rational::new((m * side(m) + k * side(k)) as i64, (m + k) as i64)
        }
        FamilySpec::Broom { delta, .. } => {
            let d = delta as i64;
            Rational::from_integer(n - d + 1) + Rational::new(d, n)
        }
        FamilySpec::Tnm { n: order, m } if order == 2 * m => match order {
            4 => Rational::from_integer(3),
            6 => Rational::new(9, 2),
            _ => Rational::new(11, 2) - Rational::new(2, n),
        },
        _ => return Ok(None),
    };
    Ok(Some(value))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueSource {
    ClosedForm,
    Computed,
}

/// Exact average of a family instance together with where it came from.
pub fn family_aecc3(spec: &FamilySpec) -> Result<(Rational, ValueSource), FamilyError> {
    if let Some(v) = closed_form_aecc3(spec)? {
        return Ok((v, ValueSource::ClosedForm));
    }
    let t = generate_tree(spec)?;
    Ok((aecc3(&t)?, ValueSource::Computed))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundId {
    GeneralLower,
    GeneralUpper,
    MaxdegUpper,
    LeavesLower,
    MatchingLower,
    IndependenceLower,
    DiameterLower,
    RadiusLower,
}

impl BoundId {
    pub const ALL: [BoundId; 8] = [
        BoundId::GeneralLower,
        BoundId::GeneralUpper,
        BoundId::MaxdegUpper,
        BoundId::LeavesLower,
        BoundId::MatchingLower,
        BoundId::IndependenceLower,
        BoundId::DiameterLower,
        BoundId::RadiusLower,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundId::GeneralLower => "general_lower",
            BoundId::GeneralUpper => "general_upper",
            BoundId::MaxdegUpper => "maxdeg_upper",
            BoundId::LeavesLower => "leaves_lower",
            BoundId::MatchingLower => "matching_lower",
            BoundId::IndependenceLower => "independence_lower",
            BoundId::DiameterLower => "diameter_lower",
            BoundId::RadiusLower => "radius_lower",
        }
    }

    pub fn is_upper(self) -> bool {
        matches!(self, BoundId::GeneralUpper | BoundId::MaxdegUpper)
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for BoundId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BoundId::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| format!("unknown bound '{s}'"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("{bound}: {reason}")]
    OutOfRange { bound: BoundId, reason: String },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Ecc(#[from] EccError),
}

/// One extremal comparison. `family` is `None` for the bounds whose right-hand
/// side is a plain formula in `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCandidate {
    pub family: Option<FamilySpec>,
    pub rhs: Rational,
    pub holds: bool,
    pub equality: bool,
    pub source: ValueSource,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub bound_id: BoundId,
    pub n: usize,
    /// The tree parameter the bound depends on, e.g. `("max_degree", 4)`.
    pub parameter: Option<(String, usize)>,
    pub lhs: Rational,
    pub rhs: Rational,
    pub holds: bool,
    pub equality: bool,
    pub extremal_family_value_source: ValueSource,
    pub family: Option<FamilySpec>,
    /// Every comparison made; the headline fields repeat the first one. Only
    /// the independence bound has two (see [`verify_bound`]).
    pub candidates: Vec<BoundCandidate>,
    /// Candidate families that were outside their parameter range.
    pub skipped: Vec<String>,
}

fn compare(
    bound: BoundId,
    lhs: Rational,
    family: Option<FamilySpec>,
    rhs: Rational,
    source: ValueSource,
) -> BoundCandidate {
    let holds = if bound.is_upper() {
        lhs <= rhs
    } else {
        lhs >= rhs
    };
    BoundCandidate {
        family,
        rhs,
        holds,
        equality: lhs == rhs,
        source,
    }
}

/// Evaluates one bound on `t`, computing the relevant tree parameter and
/// both sides exactly.
///
/// The independence bound is checked against two extremal families,
/// `T_{n,alpha}` and `BS_{n,alpha}`, which coincide whenever both exist; the
/// headline result uses `T_{n,alpha}` when it exists.
pub fn verify_bound(t: &Tree, bound: BoundId) -> Result<BoundReport, BoundError> {
    BoundVerifier::new().verify_bound(t, bound)
}

/// Outcome of every bound, in [`BoundId::ALL`] order.
pub type BoundOutcomes = Vec<(BoundId, Result<BoundReport, BoundError>)>;

/// Every bound on `t`, in [`BoundId::ALL`] order.
pub fn verify_all(t: &Tree) -> Result<BoundOutcomes, EccError> {
    BoundVerifier::new().verify_all(t)
}

/// Bound verification that remembers the extremal family values it has
/// computed, for checking many trees of similar sizes.
#[derive(Debug, Default)]
pub struct BoundVerifier {
    cache: HashMap<FamilySpec, Result<(Rational, ValueSource), FamilyError>>,
}

impl BoundVerifier {
    pub fn new() -> Self {
        BoundVerifier::default()
    }

    fn family_value(&mut self, spec: FamilySpec) -> Result<(Rational, ValueSource), FamilyError> {
        if let Some(v) = self.cache.get(&spec) {
            return v.clone();
        }
        let v = family_aecc3(&spec);
        self.cache.insert(spec, v.clone());
        v
    }

    pub fn verify_bound(&mut self, t: &Tree, bound: BoundId) -> Result<BoundReport, BoundError> {
        let lhs = aecc3(t)?;
        self.verify_with(t, bound, lhs)
    }

    /// Every bound on `t`, in [`BoundId::ALL`] order; the average is computed
    /// once.
    pub fn verify_all(&mut self, t: &Tree) -> Result<BoundOutcomes, EccError> {
        let lhs = aecc3(t)?;
        Ok(BoundId::ALL
            .into_iter()
            .map(|b| (b, self.verify_with(t, b, lhs)))
            .collect())
    }

    fn verify_with(
        &mut self,
        t: &Tree,
        bound: BoundId,
        lhs: Rational,
    ) -> Result<BoundReport, BoundError> {
        let n = t.n();
        let out_of_range = |reason: String| BoundError::OutOfRange { bound, reason };
        let (parameter, families): (Option<(&str, usize)>, Vec<FamilySpec>) = match bound {
            BoundId::GeneralLower | BoundId::GeneralUpper => (None, Vec::new()),
            BoundId::MaxdegUpper => {
                let delta = t.max_degree();
                (
                    Some(("max_degree", delta)),
                    vec![FamilySpec::Broom { n, delta }],
                )
            }
            BoundId::LeavesLower => {
                let p = t.leaf_count();
                (
                    Some(("leaves", p)),
                    vec![FamilySpec::BalancedStarlike { n, p }],
                )
            }
            BoundId::MatchingLower => {
                let nu = t.matching_number();
                if nu < 2 {
                    return Err(out_of_range(format!("matching number {nu} is below 2")));
                }
                (
                    Some(("matching_number", nu)),
                    vec![FamilySpec::Tnm { n, m: n - nu }],
                )
            }
            BoundId::IndependenceLower => {
                let alpha = t.independence_number();
                (
                    Some(("independence_number", alpha)),
                    vec![
                        FamilySpec::Tnm { n, m: alpha },
                        FamilySpec::BalancedStarlike { n, p: alpha },
                    ],
                )
            }
            BoundId::DiameterLower => {
                let d = t.diameter();
                (Some(("diameter", d)), vec![FamilySpec::TprimeNd { n, d }])
            }
            BoundId::RadiusLower => {
                let r = t.diameter_radius_center().radius;
                if 2 * r < 3 {
                    return Err(out_of_range(format!(
                        "radius {r} gives a path length 2r - 1 below 2"
                    )));
                }
                (
                    Some(("radius", r)),
                    vec![FamilySpec::TprimeNd { n, d: 2 * r - 1 }],
                )
            }
        };

        let mut candidates = Vec::new();
        let mut skipped = Vec::new();
        match bound {
            BoundId::GeneralLower => candidates.push(compare(
                bound,
                lhs,
                None,
                Rational::from_integer(3) - Rational::new(1, n as i64),
                ValueSource::ClosedForm,
            )),
            BoundId::GeneralUpper => candidates.push(compare(
                bound,
                lhs,
                None,
                Rational::from_integer(n as i64 - 1),
                ValueSource::ClosedForm,
            )),
            _ => {}
        }
        for spec in families {
            match self.family_value(spec.clone()) {
                Ok((rhs, source)) => candidates.push(compare(bound, lhs, Some(spec), rhs, source)),
                Err(FamilyError::InvalidParameters { family, reason }) => {
                    skipped.push(format!("{family}: {reason}"))
                }
                Err(e) => return Err(e.into()),
            }
        }
        let Some(head) = candidates.first().cloned() else {
            return Err(out_of_range(skipped.join("; ")));
        };
        Ok(BoundReport {
            bound_id: bound,
            n,
            parameter: parameter.map(|(name, v)| (name.to_string(), v)),
            lhs,
            rhs: head.rhs,
            holds: head.holds,
            equality: head.equality,
            extremal_family_value_source: head.source,
            family: head.family,
            candidates,
            skipped,
        })
    }
}
