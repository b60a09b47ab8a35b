//! Full-stratification reports and their emitters.
//!
//! [`build_stratification`] enumerates every admissible splitting type for a
//! context, classifies each stratum, runs the poset emptiness deduction and
//! computes the covering relations. [`hasse_diagram`] turns the result into
//! a displayable diagram: black for irreducible strata of expected
//! dimension, blue for expected dimension but reducible, red for anomalies
//! (wrong dimension, or an open stratum that vanished where one was
//! expected), light grey for ghost markers showing a red stratum at its
//! expected position. Emitters produce a versioned JSON document, a
//! plain-text table and a DOT graph, each byte-deterministic.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::hirzebruch::{self, SurfaceClass};
use crate::phi;
use crate::splitting::{self, DegreeDatum, SplittingType};
use crate::theory::{
    self, ClosureReport, ClosureStatus, Flavor, Generality, OpenStatus, StratumReport, TheoryError,
    TrigonalContext,
};

/// Display and filtering options for reports and diagrams.
#[derive(Debug, Clone, Default)]
pub struct ReportOptions {
    /// Keep strata that are empty with negative expected dimension.
    pub include_empty: bool,
    /// Drop display rows below this dimension.
    pub min_dim: Option<i64>,
}

/// The classified universe for one context.
#[derive(Debug, Clone, PartialEq)]
pub struct Stratification {
    pub ctx: TrigonalContext,
    /// All enumerated strata, sorted by display rank descending then type.
    pub reports: Vec<StratumReport>,
    /// Covering relations `(lower, upper)` on the full enumerated universe.
    pub edges: Vec<(SplittingType, SplittingType)>,
}

/// Classifies the full universe of strata for `ctx`.
pub fn build_stratification(
    ctx: &TrigonalContext,
    spread_bound: Option<i64>,
) -> Result<Stratification, TheoryError> {
    run_self_checks(ctx)?;
    let bound = match spread_bound {
        Some(b) if b < 0 => {
            return Err(TheoryError::Contract(format!(
                "spread bound must be non-negative, got {b}"
            )))
        }
        Some(b) => b,
        None => splitting::default_spread_bound(ctx.g()),
    };
    let datum = DegreeDatum {
        d: ctx.d(),
        g: ctx.g(),
        k: 3,
    };
    let types = splitting::enumerate_types(&datum, bound);
    let mut reports = types
        .iter()
        .map(|e| theory::classify(ctx, e))
        .collect::<Result<Vec<_>, _>>()?;
    theory::deduce_empty_open(ctx, &mut reports)?;
    reports.sort_by(|x, y| {
        y.display_rank()
            .cmp(&x.display_rank())
            .then_with(|| x.e.cmp(&y.e))
    });
    let edges = splitting::hasse_edges(&types)?;
    Ok(Stratification {
        ctx: *ctx,
        reports,
        edges,
    })
}

/// Cheap cross-route identities that must hold for any valid context.
fn run_self_checks(ctx: &TrigonalContext) -> Result<(), TheoryError> {
    let md = ctx.maroni();
    if !hirzebruch::canonical_degree_check(md) {
        return Err(TheoryError::Internal(format!(
            "canonical degree check failed for g = {}, n = {}",
            ctx.g(),
            ctx.n()
        )));
    }
    let via_formula = hirzebruch::directrix_points(md);
    let via_pairing = hirzebruch::intersect(
        ctx.n(),
        hirzebruch::curve_class(md),
        SurfaceClass::directrix(),
    );
    if via_formula != via_pairing {
        return Err(TheoryError::Internal(format!(
            "directrix point count disagrees with the intersection pairing: {via_formula} vs {via_pairing}"
        )));
    }
    Ok(())
}

/// Diagram coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeColor {
    Black,
    Blue,
    Red,
    Grey,
}

impl NodeColor {
    fn dot_name(self) -> &'static str {
        match self {
            NodeColor::Black => "black",
            NodeColor::Blue => "blue",
            NodeColor::Red => "red",
            NodeColor::Grey => "grey",
        }
    }
}

/// One displayed glyph: an actual stratum, or a grey ghost marking the
/// expected position of a red stratum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisplayNode {
    pub e: SplittingType,
    pub color: NodeColor,
    pub rank: i64,
    pub ghost: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HasseDiagram {
    pub ctx: TrigonalContext,
    /// Displayed strata, sorted by display rank descending then type.
    pub nodes: Vec<StratumReport>,
    /// Covering relations between displayed strata.
    pub edges: Vec<(SplittingType, SplittingType)>,
    /// Display records: every node once, plus ghost entries.
    pub annotations: Vec<DisplayNode>,
}

fn node_color(r: &StratumReport) -> NodeColor {
    if r.anomalous {
        NodeColor::Red
    } else if r.open.status == OpenStatus::Empty {
        if r.expected_dim >= 0 {
            // An open stratum vanished where a non-empty one was expected.
            NodeColor::Red
        } else {
            NodeColor::Grey
        }
    } else if r.open.status == OpenStatus::ConnectedReducible
        || (r.open.status == OpenStatus::Finite
            && r.open
                .point_count
                .as_ref()
                .is_some_and(|c| *c > BigUint::one()))
    {
        NodeColor::Blue
    } else {
        NodeColor::Black
    }
}

fn displayed(r: &StratumReport, opts: &ReportOptions) -> bool {
    if !opts.include_empty && r.open.status == OpenStatus::Empty && r.expected_dim < 0 {
        return false;
    }
    match opts.min_dim {
        Some(min) => r.display_rank() >= min,
        None => true,
    }
}

/// Filters the stratification for display and attaches annotations.
pub fn hasse_diagram(strat: &Stratification, opts: &ReportOptions) -> HasseDiagram {
    let nodes: Vec<StratumReport> = strat
        .reports
        .iter()
        .filter(|r| displayed(r, opts))
        .cloned()
        .collect();
    let shown: BTreeSet<&SplittingType> = nodes.iter().map(|r| &r.e).collect();
    let edges: Vec<_> = strat
        .edges
        .iter()
        .filter(|(lo, hi)| shown.contains(lo) && shown.contains(hi))
        .cloned()
        .collect();

    let mut annotations: Vec<DisplayNode> = nodes
        .iter()
        .map(|r| DisplayNode {
            e: r.e.clone(),
            color: node_color(r),
            rank: r.display_rank(),
            ghost: false,
        })
        .collect();
    // Ghosts: the expected position of every red node displayed away from it.
    let mut ghosts: Vec<DisplayNode> = nodes
        .iter()
        .filter(|r| {
            node_color(r) == NodeColor::Red
                && r.display_rank() != r.expected_dim
                && opts.min_dim.is_none_or(|min| r.expected_dim >= min)
        })
        .map(|r| DisplayNode {
            e: r.e.clone(),
            color: NodeColor::Grey,
            rank: r.expected_dim,
            ghost: true,
        })
        .collect();
    ghosts.sort_by(|x, y| y.rank.cmp(&x.rank).then_with(|| x.e.cmp(&y.e)));
    annotations.append(&mut ghosts);

    HasseDiagram {
        ctx: strat.ctx,
        nodes,
        edges,
        annotations,
    }
}

// ---------------------------------------------------------------------------
// JSON document (schema v1)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub context: ContextDoc,
    pub strata: Vec<StratumDoc>,
    pub edges: Vec<(Vec<i64>, Vec<i64>)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContextDoc {
    pub genus: i64,
    pub maroni: i64,
    pub degree: i64,
    pub general_curve: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StratumDoc {
    #[serde(rename = "type")]
    pub e: Vec<i64>,
    pub flavor: Flavor,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha: Option<i64>,
    pub expected_codim: i64,
    pub expected_dim: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub closure: Option<ClosureDoc>,
    pub open: OpenDoc,
    pub anomalous: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub class: Option<ClassDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosureDoc {
    pub status: ClosureStatus,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dim: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OpenDoc {
    pub status: OpenStatus,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dim: Option<i64>,
    /// Decimal string: counts are exact big integers.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub components: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub points: Option<String>,
    pub generality: Generality,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassDoc {
    /// Decimal string; the class is `multiplier * theta^theta_power /
    /// theta_power!`.
    pub multiplier: String,
    pub theta_power: i64,
}

/// Whether the symbolic class formula applies: the closed stratum must occur
/// in its expected dimension.
fn class_applies(r: &StratumReport) -> bool {
    match &r.closure {
        Some(c) => c.status != ClosureStatus::Empty,
        None => !r.anomalous && r.open.status != OpenStatus::Empty,
    }
}

pub fn stratum_doc(r: &StratumReport) -> Result<StratumDoc, TheoryError> {
    let class = if class_applies(r) {
        let cc = theory::class_coefficient(&r.e)?;
        Some(ClassDoc {
            multiplier: cc.multiplier.to_str_radix(10),
            theta_power: cc.theta_power,
        })
    } else {
        None
    };
    Ok(StratumDoc {
        e: r.e.entries().to_vec(),
        flavor: r.flavor,
        alpha: r.alpha,
        expected_codim: r.expected_codim,
        expected_dim: r.expected_dim,
        closure: r.closure.as_ref().map(|c| ClosureDoc {
            status: c.status,
            dim: c.dim,
        }),
        open: OpenDoc {
            status: r.open.status,
            dim: r.open.dim,
            components: r.open.component_count.as_ref().map(|c| c.to_str_radix(10)),
            points: r.open.point_count.as_ref().map(|c| c.to_str_radix(10)),
            generality: r.generality,
        },
        anomalous: r.anomalous,
        class,
    })
}

pub fn to_document(diagram: &HasseDiagram) -> Result<Document, TheoryError> {
    Ok(Document {
        context: ContextDoc {
            genus: diagram.ctx.g(),
            maroni: diagram.ctx.n(),
            degree: diagram.ctx.d(),
            general_curve: diagram.ctx.general_curve(),
        },
        strata: diagram
            .nodes
            .iter()
            .map(stratum_doc)
            .collect::<Result<_, _>>()?,
        edges: diagram
            .edges
            .iter()
            .map(|(lo, hi)| (lo.entries().to_vec(), hi.entries().to_vec()))
            .collect(),
    })
}

pub fn emit_json(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("document serialization is infallible");
    s.push('\n');
    s
}

/// JSON for a single stratum record (the classify command).
pub fn emit_stratum_json(doc: &StratumDoc) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("stratum serialization is infallible");
    s.push('\n');
    s
}

pub fn parse_document(text: &str) -> Result<Document, serde_json::Error> {
    serde_json::from_str(text)
}

// ---------------------------------------------------------------------------
// DOT
// ---------------------------------------------------------------------------

/// Graph text for the diagram: one box per stratum labeled by its type,
/// colored per the display convention, nodes grouped into same-rank rows by
/// dimension (an invisible spine keeps the rows ordered), and one directed
/// edge per covering relation pointing from the smaller stratum to the
/// larger.
pub fn emit_dot(diagram: &HasseDiagram) -> String {
    let mut out = String::new();
    out.push_str("digraph strata {\n");
    out.push_str("  rankdir=TB;\n");
    out.push_str("  node [shape=box, fontname=\"Helvetica\"];\n");

    let ranks: BTreeSet<i64> = diagram.annotations.iter().map(|a| a.rank).collect();
    for rank in &ranks {
        let mut row: Vec<&DisplayNode> = diagram
            .annotations
            .iter()
            .filter(|a| a.rank == *rank)
            .collect();
        row.sort_by_key(|a| (a.ghost, a.e.clone()));
        let _ = write!(
            out,
            "  {{ rank=same; \"dim {rank}\" [shape=plaintext, fontcolor=grey];"
        );
        for node in row {
            let id = dot_node_id(node);
            let _ = write!(
                out,
                " \"{id}\" [label=\"{}\", color={}, fontcolor={}{}];",
                node.e,
                node.color.dot_name(),
                node.color.dot_name(),
                if node.ghost { ", style=dashed" } else { "" }
            );
        }
        out.push_str(" }\n");
    }
    // Invisible spine: dimension rows appear in ascending order.
    let rank_list: Vec<i64> = ranks.into_iter().collect();
    for pair in rank_list.windows(2) {
        let _ = writeln!(
            out,
            "  \"dim {}\" -> \"dim {}\" [style=invis];",
            pair[0], pair[1]
        );
    }
    for (lo, hi) in &diagram.edges {
        let _ = writeln!(out, "  \"{lo}\" -> \"{hi}\";");
    }
    out.push_str("}\n");
    out
}

fn dot_node_id(node: &DisplayNode) -> String {
    if node.ghost {
        format!("ghost {}", node.e)
    } else {
        node.e.to_string()
    }
}

// ---------------------------------------------------------------------------
// Text
// ---------------------------------------------------------------------------

fn closure_phrase(r: &StratumReport) -> String {
    match &r.closure {
        None => "not determined".to_string(),
        Some(ClosureReport { status, dim }) => match status {
            ClosureStatus::Empty => "empty".to_string(),
            ClosureStatus::Point => "point (dim 0)".to_string(),
            ClosureStatus::Irreducible => {
                format!("irreducible, dim {}", dim.unwrap_or_default())
            }
        },
    }
}

fn open_phrase(r: &StratumReport) -> String {
    let general = match r.generality {
        Generality::AllCurves => "",
        Generality::GeneralMaroniN => " [general curve]",
    };
    match r.open.status {
        OpenStatus::Unknown => "unknown".to_string(),
        OpenStatus::Empty => match &r.open.deduced_empty_witness {
            Some(w) => format!("empty (forced by {w})"),
            None => "empty".to_string(),
        },
        OpenStatus::Finite => {
            let count = r
                .open
                .point_count
                .as_ref()
                .map(|c| c.to_str_radix(10))
                .unwrap_or_default();
            let plural = if count == "1" { "point" } else { "points" };
            format!("finite, {count} {plural}{general}")
        }
        OpenStatus::Irreducible => {
            format!("irreducible, dim {}", r.open.dim.unwrap_or_default())
        }
        OpenStatus::ConnectedReducible => {
            let count = r
                .open
                .component_count
                .as_ref()
                .map(|c| c.to_str_radix(10))
                .unwrap_or_default();
            format!(
                "connected, dim {}, {count} components{general}",
                r.open.dim.unwrap_or_default()
            )
        }
    }
}

fn class_phrase(r: &StratumReport) -> Result<String, TheoryError> {
    if !class_applies(r) {
        return Ok(String::new());
    }
    let cc = theory::class_coefficient(&r.e)?;
    let mult = cc.multiplier.to_str_radix(10);
    Ok(if mult == "1" {
        format!("theta^{p}/{p}!", p = cc.theta_power)
    } else {
        format!("{mult}*theta^{p}/{p}!", p = cc.theta_power)
    })
}

/// Plain-text table: one row per displayed stratum plus the covering
/// relations.
pub fn emit_text(diagram: &HasseDiagram) -> Result<String, TheoryError> {
    let ctx = &diagram.ctx;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "refined splitting stratification: genus {}, maroni invariant {}, degree {}",
        ctx.g(),
        ctx.n(),
        ctx.d()
    );
    let _ = writeln!(
        out,
        "stratum sum {}, general curve: {}",
        ctx.stratum_sum(),
        if ctx.general_curve() { "yes" } else { "no" }
    );
    out.push('\n');
    let _ = writeln!(
        out,
        "{:>5}  {:<16} {:<7} {:>3} {:>4}  {:<22} {:<48} class",
        "dim", "type", "flavor", "u", "exp", "closure", "open"
    );
    for r in &diagram.nodes {
        let anomaly = if r.anomalous { "  ANOMALOUS" } else { "" };
        let _ = writeln!(
            out,
            "{:>5}  {:<16} {:<7} {:>3} {:>4}  {:<22} {:<48} {}{}",
            r.display_rank(),
            r.e.to_string(),
            format!("{:?}", r.flavor),
            r.expected_codim,
            r.expected_dim,
            closure_phrase(r),
            open_phrase(r),
            class_phrase(r)?,
            anomaly,
        );
    }
    out.push('\n');
    let _ = writeln!(out, "covering relations ({}):", diagram.edges.len());
    for (lo, hi) in &diagram.edges {
        let _ = writeln!(out, "  {lo} -> {hi}");
    }
    Ok(out)
}

/// Multi-line rendering of a single stratum, for the classify command.
pub fn render_stratum(ctx: &TrigonalContext, r: &StratumReport) -> Result<String, TheoryError> {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "stratum {} in Pic^{} (genus {}, maroni invariant {})",
        r.e,
        ctx.d(),
        ctx.g(),
        ctx.n()
    );
    let _ = writeln!(out, "  flavor:             {:?}", r.flavor);
    if let Some(alpha) = r.alpha {
        let _ = writeln!(out, "  alpha:              {alpha}");
    }
    let _ = writeln!(out, "  expected codim u:   {}", r.expected_codim);
    let _ = writeln!(out, "  expected dim g - u: {}", r.expected_dim);
    let _ = writeln!(out, "  closure:            {}", closure_phrase(r));
    let _ = writeln!(out, "  open stratum:       {}", open_phrase(r));
    let class = class_phrase(r)?;
    if !class.is_empty() {
        let _ = writeln!(out, "  class:              {class}");
    }
    let _ = writeln!(
        out,
        "  anomalous:          {}",
        if r.anomalous { "yes" } else { "no" }
    );
    Ok(out)
}

// ---------------------------------------------------------------------------
// Oracle cross-validation sweep
// ---------------------------------------------------------------------------

/// Test-only corruption switch used to prove the sweep detects a broken
/// enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InjectedFault {
    /// Shift the admissible base-point window by one.
    MWindowShift,
}

#[derive(Debug, Clone)]
pub struct SweepFailure {
    pub g: i64,
    pub n: i64,
    pub e: SplittingType,
    pub what: String,
}

#[derive(Debug, Clone, Default)]
pub struct SweepReport {
    pub strata_checked: u64,
    pub failures: Vec<SweepFailure>,
}

/// All Maroni invariants a genus-`g` trigonal curve can have.
pub fn valid_maroni_invariants(g: i64) -> Vec<i64> {
    (0..=g)
        .filter(|n| (g - n) % 2 == 0)
        .filter(|&n| hirzebruch::MaroniDatum::new(g, n).is_ok())
        .collect()
}

/// Cross-validates, for every valid `(g, n)` with `g <= max_genus` and every
/// flavor-III gap family, the dimension identity, the two equivalent
/// non-emptiness conditions, and the component structure against the
/// subset-enumeration oracle (count, equidimensionality, connectivity for
/// positive-dimensional strata, isolation at dimension zero, and the
/// point-count formula).
pub fn oracle_sweep(
    max_genus: i64,
    fault: Option<InjectedFault>,
) -> Result<SweepReport, TheoryError> {
    let mut sweep = SweepReport::default();
    let shift = match fault {
        Some(InjectedFault::MWindowShift) => 1,
        None => 0,
    };
    for g in 3..=max_genus {
        for n in valid_maroni_invariants(g) {
            let max_spread = (g + n) / 2 + 4;
            for spread in 4..=max_spread {
                for p in 2..=spread - 2 {
                    let q = spread - p;
                    if q < 2 {
                        continue;
                    }
                    let e = SplittingType::triple(0, p, p + q);
                    let ctx = TrigonalContext::new(g, n, e.total() + g + 2, true)?;
                    check_stratum(&ctx, &e, shift, &mut sweep)?;
                }
            }
        }
    }
    Ok(sweep)
}

fn check_stratum(
    ctx: &TrigonalContext,
    e: &SplittingType,
    shift: i64,
    sweep: &mut SweepReport,
) -> Result<(), TheoryError> {
    let (g, n) = (ctx.g(), ctx.n());
    let fail = |what: String, sweep: &mut SweepReport| {
        sweep.failures.push(SweepFailure {
            g,
            n,
            e: e.clone(),
            what,
        });
    };
    sweep.strata_checked += 1;

    let alpha = theory::alpha_of(ctx, e)?;
    let u = splitting::expected_codim(e);
    if 2 * alpha - n + 1 != g - u {
        fail(
            format!(
                "dimension identity: 2a - n + 1 = {}, g - u = {}",
                2 * alpha - n + 1,
                g - u
            ),
            sweep,
        );
    }
    let report = theory::classify(ctx, e)?;

    if alpha < 0 {
        if report.open.status != OpenStatus::Empty {
            fail("negative alpha must classify empty".to_string(), sweep);
        }
        return Ok(());
    }
    if alpha >= n {
        if report.open.status != OpenStatus::Irreducible
            || report.open.dim != Some(g - u)
            || report.open.component_count != Some(BigUint::one())
        {
            fail(
                "large alpha must be irreducible of expected dimension".to_string(),
                sweep,
            );
        }
        return Ok(());
    }

    // 0 <= alpha <= n - 1: the subset-model regime.
    let (a, b, c) = e.as_triple().expect("rank 3");
    let params = phi::phi_params(ctx, e)?;
    let bound = 1 + (g - n) / 2;
    let spread_form = c - b <= bound && b - a <= bound;
    let degree_form = params.deg_d >= alpha && params.deg_dp >= alpha;
    if spread_form != degree_form {
        fail(
            format!("non-emptiness forms disagree: gaps {spread_form}, degrees {degree_form}"),
            sweep,
        );
    }
    let components = phi::enumerate_with_window_shift(&params, shift)
        .map_err(|err| TheoryError::Contract(err.to_string()))?;

    if report.open.status == OpenStatus::Empty {
        if spread_form {
            fail(
                "classified empty although the non-emptiness conditions hold".to_string(),
                sweep,
            );
        }
        if !components.is_empty() {
            fail(
                "oracle finds components in an empty stratum".to_string(),
                sweep,
            );
        }
        return Ok(());
    }

    let formula = if alpha == 0 {
        theory::point_count(ctx, e)?
    } else {
        theory::component_count(ctx, e)?
    };
    if alpha == 0 && theory::component_count(ctx, e)? != formula {
        fail(
            "point count differs from component count at alpha = 0".to_string(),
            sweep,
        );
    }
    if BigUint::from(components.len()) != formula {
        fail(
            format!(
                "component count mismatch: formula {formula}, oracle {}",
                components.len()
            ),
            sweep,
        );
    }
    if let Some(badly_sized) = components.iter().find(|c| c.dimension() != alpha) {
        fail(
            format!(
                "component of dimension {} in a stratum of dimension {alpha}",
                badly_sized.dimension()
            ),
            sweep,
        );
    }
    let graph = phi::adjacency_graph(&components);
    if alpha >= 1 && !phi::is_connected(&graph) {
        fail(
            "disconnected positive-dimensional stratum".to_string(),
            sweep,
        );
    }
    if alpha == 0 && !graph.edges.is_empty() {
        fail(
            "zero-dimensional components must be isolated".to_string(),
            sweep,
        );
    }
    Ok(())
}
