//! Independent combinatorial model of the divisor-pair variety behind a
//! flavor-III stratum.
//!
//! A point of the stratum is a pair of effective divisors `(D, D')` drawn
//! from a subcanonical system whose base locus is the set of directrix
//! points. An irreducible component is determined by the subset `S` of
//! labeled base points placed in `D`; the rest of each divisor moves in
//! fibers, two points on one side and one on the other. Components are
//! enumerated directly as subsets, never through the closed binomial
//! formula, so this module serves as an oracle for the classifier's counts.

use itertools::Itertools;
use num_bigint::BigUint;
use thiserror::Error;

use crate::hirzebruch;
use crate::splitting::SplittingType;
use crate::theory::{alpha_of, flavor_of, Flavor, TheoryError, TrigonalContext};

/// Subset enumeration refuses instances beyond this many labeled points.
pub const MAX_BASE_POINTS: i64 = 30;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PhiError {
    #[error("{base_pts} labeled base points exceed the enumeration guard ({MAX_BASE_POINTS})")]
    TooManyBasePoints { base_pts: i64 },
    #[error("inconsistent parameters: {0}")]
    InvalidParams(String),
}

/// Degrees and base-point data of the divisor-pair model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhiParams {
    /// `deg D = g + 2 + a + b - 2c`.
    pub deg_d: i64,
    /// `deg D' = g + 2 + 2a - b - c`.
    pub deg_dp: i64,
    /// Fiber-twist level of the subcanonical system.
    pub alpha: i64,
    /// Number of labeled directrix points, `(g - 3n)/2 + 1`.
    pub base_pts: i64,
}

/// Parameters of the model attached to a flavor-III splitting type.
pub fn phi_params(ctx: &TrigonalContext, e: &SplittingType) -> Result<PhiParams, TheoryError> {
    let (a, b, c) = ctx.triple_of(e)?;
    if flavor_of(e)? != Flavor::III {
        return Err(TheoryError::Contract(format!(
            "the divisor-pair model needs a flavor-III type, got {e}"
        )));
    }
    let g = ctx.g();
    let params = PhiParams {
        deg_d: g + 2 + a + b - 2 * c,
        deg_dp: g + 2 + 2 * a - b - c,
        alpha: alpha_of(ctx, e)?,
        base_pts: hirzebruch::directrix_points(ctx.maroni()),
    };
    // Total degree of the subcanonical system.
    if params.deg_d + params.deg_dp != params.base_pts + 3 * params.alpha {
        return Err(TheoryError::Internal(format!(
            "divisor-pair degrees {} + {} do not match base points {} + 3*alpha {}",
            params.deg_d, params.deg_dp, params.base_pts, params.alpha
        )));
    }
    Ok(params)
}

/// One irreducible component: a distribution of labeled base points into `D`
/// plus the counts of moving fibers split 2+1 between the two sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhiComponent {
    mask: u32,
    /// Moving fibers contributing two points to `D` and one to `D'`.
    pub fibers_two_in_d: i64,
    /// Moving fibers contributing two points to `D'` and one to `D`.
    pub fibers_two_in_dp: i64,
}

impl PhiComponent {
    /// Labels (indices below `base_pts`) of the base points placed in `D`.
    pub fn labels_in_d(&self) -> Vec<u32> {
        (0..32).filter(|i| self.mask & (1 << i) != 0).collect()
    }

    pub fn base_points_in_d(&self) -> u32 {
        self.mask.count_ones()
    }

    /// Each moving fiber contributes one modulus; every component of one
    /// model has dimension `alpha`.
    pub fn dimension(&self) -> i64 {
        self.fibers_two_in_d + self.fibers_two_in_dp
    }
}

/// All components: one per subset of the labels whose induced fiber counts
/// are both non-negative. Sorted canonically by size of the subset, then
/// lexicographically by its sorted labels.
pub fn enumerate_components(params: &PhiParams) -> Result<Vec<PhiComponent>, PhiError> {
    enumerate_with_window_shift(params, 0)
}

/// Test hook: evaluates subset validity at `m + shift` instead of `m`,
/// deliberately corrupting the admissible window. Used to prove that the
/// oracle cross-check detects a broken enumeration.
pub(crate) fn enumerate_with_window_shift(
    params: &PhiParams,
    shift: i64,
) -> Result<Vec<PhiComponent>, PhiError> {
    if params.base_pts < 0 {
        return Err(PhiError::InvalidParams(format!(
            "negative number of base points: {}",
            params.base_pts
        )));
    }
    if params.base_pts > MAX_BASE_POINTS {
        return Err(PhiError::TooManyBasePoints {
            base_pts: params.base_pts,
        });
    }
    let mut out = Vec::new();
    for m in 0..=params.base_pts {
        let probe = m + shift;
        if params.deg_d - probe - params.alpha < 0 {
            continue;
        }
        if params.deg_dp - (params.base_pts - probe) - params.alpha < 0 {
            continue;
        }
        let fibers_two_in_d = params.deg_d - m - params.alpha;
        let fibers_two_in_dp = params.deg_dp - (params.base_pts - m) - params.alpha;
        for subset in (0..params.base_pts as u32).combinations(m as usize) {
            let mask = subset.iter().fold(0u32, |acc, i| acc | (1 << i));
            out.push(PhiComponent {
                mask,
                fibers_two_in_d,
                fibers_two_in_dp,
            });
        }
    }
    Ok(out)
}

/// Component count by direct enumeration.
pub fn oracle_count(params: &PhiParams) -> Result<BigUint, PhiError> {
    Ok(BigUint::from(enumerate_components(params)?.len()))
}

/// Intersection graph of the components: two components meet exactly when
/// their base-point subsets differ by a single moving label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyGraph {
    pub vertex_count: usize,
    /// Index pairs `(i, j)` with `i < j`.
    pub edges: Vec<(usize, usize)>,
}

pub fn adjacency_graph(components: &[PhiComponent]) -> AdjacencyGraph {
    let index: std::collections::HashMap<u32, usize> = components
        .iter()
        .enumerate()
        .map(|(i, c)| (c.mask, i))
        .collect();
    let mut edges = Vec::new();
    for (i, comp) in components.iter().enumerate() {
        for bit in 0..32 {
            let neighbor = comp.mask ^ (1 << bit);
            if let Some(&j) = index.get(&neighbor) {
                if i < j {
                    edges.push((i, j));
                }
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    AdjacencyGraph {
        vertex_count: components.len(),
        edges,
    }
}

/// Breadth-first connectivity; the empty graph counts as connected.
pub fn is_connected(graph: &AdjacencyGraph) -> bool {
    if graph.vertex_count == 0 {
        return true;
    }
    let mut adjacency = vec![Vec::new(); graph.vertex_count];
    for &(i, j) in &graph.edges {
        adjacency[i].push(j);
        adjacency[j].push(i);
    }
    let mut seen = vec![false; graph.vertex_count];
    let mut queue = std::collections::VecDeque::from([0usize]);
    seen[0] = true;
    let mut reached = 1;
    while let Some(v) = queue.pop_front() {
        for &w in &adjacency[v] {
            if !seen[w] {
                seen[w] = true;
                reached += 1;
                queue.push_back(w);
            }
        }
    }
    reached == graph.vertex_count
}
