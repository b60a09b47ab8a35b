//! Classification of rank-3 splitting strata on a trigonal curve.
//!
//! A splitting type `(a, b, c)` is cut out by one rank condition when
//! `b - a <= 1` (flavor I) or `c - b <= 1` (flavor II); those closures are
//! irreducible of the expected dimension `g - u` on every trigonal curve.
//! When both gaps are at least 2 (flavor III) the stratum is controlled by
//! the fiber-twist level `alpha = (g+n)/2 + 1 - c + a` of a subcanonical
//! system on the curve's Hirzebruch surface, and its geometry depends on the
//! Maroni invariant: above `n` the stratum stays irreducible of expected
//! dimension, in `0 <= alpha <= n-1` it is connected of dimension `alpha`
//! (possibly exceeding the expected dimension) with explicitly countable
//! components, and at `alpha = 0` on a general curve it is a finite set of
//! known cardinality.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::binom::binomial;
use crate::hirzebruch::{self, HirzebruchError, MaroniDatum};
use crate::splitting::{dominance_leq, expected_codim, SplittingError, SplittingType};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoryError {
    #[error(transparent)]
    Hirzebruch(#[from] HirzebruchError),
    #[error(transparent)]
    Splitting(#[from] SplittingError),
    #[error("splitting type {e} has rank {rank}; the trigonal engine needs rank 3")]
    RankNotThree { e: SplittingType, rank: usize },
    #[error("splitting type {e} has total {got}; strata of Pic^{d} on a genus-{g} curve need total d - g - 2 = {want}")]
    DegreeMismatch {
        e: SplittingType,
        got: i64,
        d: i64,
        g: i64,
        want: i64,
    },
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// A trigonal curve class together with the line-bundle degree under study.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrigonalContext {
    md: MaroniDatum,
    d: i64,
    general_curve: bool,
    char_zero: bool,
}

impl TrigonalContext {
    pub fn new(g: i64, n: i64, d: i64, general_curve: bool) -> Result<Self, TheoryError> {
        Ok(TrigonalContext {
            md: MaroniDatum::new(g, n)?,
            d,
            general_curve,
            // v1 works over characteristic zero only.
            char_zero: true,
        })
    }

    pub fn maroni(&self) -> &MaroniDatum {
        &self.md
    }

    pub fn g(&self) -> i64 {
        self.md.g()
    }

    pub fn n(&self) -> i64 {
        self.md.n()
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn general_curve(&self) -> bool {
        self.general_curve
    }

    pub fn char_zero(&self) -> bool {
        self.char_zero
    }

    /// Common total degree of all splitting types in this context.
    pub fn stratum_sum(&self) -> i64 {
        self.d - self.g() - 2
    }

    /// Checks the degree constraint and returns the entries.
    pub fn triple_of(&self, e: &SplittingType) -> Result<(i64, i64, i64), TheoryError> {
        let (a, b, c) = e.as_triple().ok_or_else(|| TheoryError::RankNotThree {
            e: e.clone(),
            rank: e.rank(),
        })?;
        if e.total() != self.stratum_sum() {
            return Err(TheoryError::DegreeMismatch {
                e: e.clone(),
                got: e.total(),
                d: self.d,
                g: self.g(),
                want: self.stratum_sum(),
            });
        }
        Ok((a, b, c))
    }
}

/// How many rank conditions cut out the stratum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    /// `b - a <= 1`: one vanishing condition. Takes precedence when both
    /// gaps are small.
    I,
    /// `c - b <= 1` and `b - a >= 2`: one co-vanishing condition.
    II,
    /// Both gaps at least 2: two conditions.
    III,
}

pub fn flavor_of(e: &SplittingType) -> Result<Flavor, TheoryError> {
    let (a, b, c) = e.as_triple().ok_or_else(|| TheoryError::RankNotThree {
        e: e.clone(),
        rank: e.rank(),
    })?;
    Ok(if b - a <= 1 {
        Flavor::I
    } else if c - b <= 1 {
        Flavor::II
    } else {
        Flavor::III
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClosureStatus {
    Empty,
    Point,
    Irreducible,
}

/// What is known about the closed stratum (the union over specializations).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub status: ClosureStatus,
    pub dim: Option<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OpenStatus {
    Empty,
    Finite,
    Irreducible,
    ConnectedReducible,
    Unknown,
}

/// What is known about the open stratum (exact splitting type).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenReport {
    pub status: OpenStatus,
    pub dim: Option<i64>,
    pub component_count: Option<BigUint>,
    pub point_count: Option<BigUint>,
    /// Smaller stratum that forced this open stratum empty, when the
    /// status was obtained by deduction rather than direct classification.
    pub deduced_empty_witness: Option<SplittingType>,
}

/// Whether a reported fact holds for every curve of the given Maroni
/// invariant or only for a general one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Generality {
    AllCurves,
    GeneralMaroniN,
}

/// Full classification record for one splitting type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumReport {
    pub e: SplittingType,
    pub flavor: Flavor,
    /// Fiber-twist level, flavor III only.
    pub alpha: Option<i64>,
    pub expected_codim: i64,
    pub expected_dim: i64,
    /// `None` when the theory does not pin the closure down (flavor III
    /// with `0 <= alpha <= n-1`, where the closed stratum can pick up
    /// pieces inside smaller strata that are not described here).
    pub closure: Option<ClosureReport>,
    pub open: OpenReport,
    pub generality: Generality,
    pub anomalous: bool,
}

impl StratumReport {
    /// Dimension row at which the stratum is displayed: the known open
    /// dimension if any, otherwise the expected dimension.
    pub fn display_rank(&self) -> i64 {
        self.open.dim.unwrap_or(self.expected_dim)
    }

    /// True when the open stratum is known non-empty with a known dimension
    /// on every curve of this Maroni invariant (flavor III classifications).
    pub fn certified_nonempty(&self) -> bool {
        self.flavor == Flavor::III
            && matches!(
                self.open.status,
                OpenStatus::Finite | OpenStatus::Irreducible | OpenStatus::ConnectedReducible
            )
    }
}

/// Fiber-twist level `alpha = (g+n)/2 + 1 - c + a` of the subcanonical
/// system governing a flavor-III stratum.
pub fn alpha_of(ctx: &TrigonalContext, e: &SplittingType) -> Result<i64, TheoryError> {
    let (a, _, c) = ctx.triple_of(e)?;
    Ok((ctx.g() + ctx.n()) / 2 + 1 - c + a)
}

fn spread_conditions_hold(ctx: &TrigonalContext, b_minus_a: i64, c_minus_b: i64) -> bool {
    let bound = 1 + (ctx.g() - ctx.n()) / 2;
    c_minus_b <= bound && b_minus_a <= bound
}

/// Classifies one stratum.
pub fn classify(ctx: &TrigonalContext, e: &SplittingType) -> Result<StratumReport, TheoryError> {
    let (a, b, c) = ctx.triple_of(e)?;
    let flavor = flavor_of(e)?;
    let u = expected_codim(e);
    let expected_dim = ctx.g() - u;

    let unknown_open = OpenReport {
        status: OpenStatus::Unknown,
        dim: None,
        component_count: None,
        point_count: None,
        deduced_empty_witness: None,
    };
    let empty_open = OpenReport {
        status: OpenStatus::Empty,
        ..unknown_open.clone()
    };

    let report = match flavor {
        Flavor::I | Flavor::II => {
            let closure = if expected_dim > 0 {
                ClosureReport {
                    status: ClosureStatus::Irreducible,
                    dim: Some(expected_dim),
                }
            } else if expected_dim == 0 {
                ClosureReport {
                    status: ClosureStatus::Point,
                    dim: Some(0),
                }
            } else {
                ClosureReport {
                    status: ClosureStatus::Empty,
                    dim: None,
                }
            };
            // An empty closure forces the open stratum empty; otherwise the
            // open stratum is only constrained by later deductions.
            let open = if closure.status == ClosureStatus::Empty {
                empty_open
            } else {
                unknown_open
            };
            StratumReport {
                e: e.clone(),
                flavor,
                alpha: None,
                expected_codim: u,
                expected_dim,
                closure: Some(closure),
                open,
                generality: Generality::AllCurves,
                anomalous: false,
            }
        }
        Flavor::III => {
            let alpha = alpha_of(ctx, e)?;
            let base = StratumReport {
                e: e.clone(),
                flavor,
                alpha: Some(alpha),
                expected_codim: u,
                expected_dim,
                closure: None,
                open: unknown_open.clone(),
                generality: Generality::AllCurves,
                anomalous: false,
            };
            if alpha < 0 {
                // No sections at all: both the open and the closed stratum
                // are empty.
                StratumReport {
                    closure: Some(ClosureReport {
                        status: ClosureStatus::Empty,
                        dim: None,
                    }),
                    open: empty_open,
                    ..base
                }
            } else if alpha >= ctx.n() {
                let sections = hirzebruch::restricted_h0(ctx.maroni(), alpha)?;
                let dim = sections.h0 - 1;
                if dim != expected_dim {
                    return Err(TheoryError::Internal(format!(
                        "flavor-III identity 2a-n+1 = g-u failed for {e}: {dim} vs {expected_dim}"
                    )));
                }
                StratumReport {
                    closure: Some(ClosureReport {
                        status: ClosureStatus::Irreducible,
                        dim: Some(dim),
                    }),
                    open: OpenReport {
                        status: OpenStatus::Irreducible,
                        dim: Some(dim),
                        component_count: Some(BigUint::one()),
                        point_count: None,
                        deduced_empty_witness: None,
                    },
                    ..base
                }
            } else if !spread_conditions_hold(ctx, b - a, c - b) {
                // One side of the divisor pair would contain a full fiber.
                StratumReport {
                    open: empty_open,
                    ..base
                }
            } else if alpha == 0 {
                let points = point_count_unchecked(ctx, a, b, c);
                StratumReport {
                    open: OpenReport {
                        status: OpenStatus::Finite,
                        dim: Some(0),
                        component_count: None,
                        point_count: Some(points),
                        deduced_empty_witness: None,
                    },
                    generality: Generality::GeneralMaroniN,
                    anomalous: expected_dim != 0,
                    ..base
                }
            } else {
                let sections = hirzebruch::restricted_h0(ctx.maroni(), alpha)?;
                let dim = sections.h0 - 1;
                if dim != alpha {
                    return Err(TheoryError::Internal(format!(
                        "small-alpha dimension must equal alpha for {e}: {dim} vs {alpha}"
                    )));
                }
                let count = component_count_unchecked(ctx, a, b, c);
                let status = if count == BigUint::one() {
                    OpenStatus::Irreducible
                } else {
                    OpenStatus::ConnectedReducible
                };
                StratumReport {
                    open: OpenReport {
                        status,
                        dim: Some(dim),
                        component_count: Some(count),
                        point_count: None,
                        deduced_empty_witness: None,
                    },
                    generality: Generality::GeneralMaroniN,
                    anomalous: dim != expected_dim,
                    ..base
                }
            }
        }
    };
    Ok(report)
}

fn component_count_unchecked(ctx: &TrigonalContext, a: i64, b: i64, c: i64) -> BigUint {
    let base_pts = hirzebruch::directrix_points(ctx.maroni());
    let lo = (b - a - ctx.n()).max(0);
    let hi = (ctx.g() - ctx.n()) / 2 + 1 + b - c;
    let mut total = BigUint::default();
    for m in lo..=hi {
        total += binomial(base_pts, m);
    }
    total
}

fn point_count_unchecked(ctx: &TrigonalContext, a: i64, b: i64, c: i64) -> BigUint {
    binomial(c - a - 2 * ctx.n(), b - a - ctx.n())
}

/// Number of irreducible components of a non-empty flavor-III stratum with
/// `0 <= alpha <= n-1` on a general curve: the binomial sum over admissible
/// base-point distributions.
pub fn component_count(ctx: &TrigonalContext, e: &SplittingType) -> Result<BigUint, TheoryError> {
    let (a, b, c) = ctx.triple_of(e)?;
    if flavor_of(e)? != Flavor::III {
        return Err(TheoryError::Contract(format!(
            "component_count needs a flavor-III type, got {e}"
        )));
    }
    let alpha = alpha_of(ctx, e)?;
    if !(0..=ctx.n() - 1).contains(&alpha) {
        return Err(TheoryError::Contract(format!(
            "component_count needs 0 <= alpha <= n-1, got alpha = {alpha} for {e}"
        )));
    }
    if !spread_conditions_hold(ctx, b - a, c - b) {
        return Err(TheoryError::Contract(format!(
            "component_count called on the empty stratum {e}"
        )));
    }
    Ok(component_count_unchecked(ctx, a, b, c))
}

/// Cardinality of a flavor-III stratum with `alpha = 0` on a general curve
/// of Maroni invariant `n`: `C(c - a - 2n, b - a - n)`.
pub fn point_count(ctx: &TrigonalContext, e: &SplittingType) -> Result<BigUint, TheoryError> {
    let (a, b, c) = ctx.triple_of(e)?;
    if flavor_of(e)? != Flavor::III {
        return Err(TheoryError::Contract(format!(
            "point_count needs a flavor-III type, got {e}"
        )));
    }
    let alpha = alpha_of(ctx, e)?;
    if alpha != 0 {
        return Err(TheoryError::Contract(format!(
            "point_count needs alpha = 0, got alpha = {alpha} for {e}"
        )));
    }
    if !ctx.general_curve() {
        return Err(TheoryError::Contract(format!(
            "the cardinality of {e} is proven only for a general curve of Maroni invariant {}; \
             this context does not assume generality",
            ctx.n()
        )));
    }
    if !spread_conditions_hold(ctx, b - a, c - b) {
        return Err(TheoryError::Contract(format!(
            "point_count called on the empty stratum {e}"
        )));
    }
    Ok(point_count_unchecked(ctx, a, b, c))
}

/// Symbolic class `multiplier * theta^theta_power / theta_power!` of the
/// closed stratum in the Jacobian, valid when the stratum occurs in its
/// expected codimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCoefficient {
    pub multiplier: BigUint,
    pub theta_power: i64,
}

/// Class coefficient as a pure function of the splitting type. The caller is
/// responsible for pairing it with a context in which the stratum has the
/// expected dimension; see [`class_coefficient_checked`].
pub fn class_coefficient(e: &SplittingType) -> Result<ClassCoefficient, TheoryError> {
    let (a, b, c) = e.as_triple().ok_or_else(|| TheoryError::RankNotThree {
        e: e.clone(),
        rank: e.rank(),
    })?;
    let multiplier = match flavor_of(e)? {
        Flavor::I | Flavor::II => BigUint::one(),
        Flavor::III => binomial(c - a - 2, b - a - 1),
    };
    Ok(ClassCoefficient {
        multiplier,
        theta_power: expected_codim(e),
    })
}

/// Class coefficient, refusing strata that do not occur in the expected
/// dimension in the given context.
pub fn class_coefficient_checked(
    ctx: &TrigonalContext,
    e: &SplittingType,
) -> Result<ClassCoefficient, TheoryError> {
    let report = classify(ctx, e)?;
    if report.anomalous {
        return Err(TheoryError::Contract(format!(
            "{e} does not occur in its expected dimension (expected {}, actual {:?}); \
             the class formula does not apply",
            report.expected_dim, report.open.dim
        )));
    }
    class_coefficient(e)
}

/// One irreducible component of a classical Brill-Noether locus, identified
/// by the splitting type whose closed stratum it is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BnComponent {
    pub e: SplittingType,
    pub dim: i64,
}

/// Decomposition of `W^r_d` on a trigonal curve into (at most) two splitting
/// strata.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BnLocusReport {
    pub g: i64,
    pub d: i64,
    pub r: i64,
    pub rho: i64,
    pub components: Vec<BnComponent>,
}

/// The components of `W^r_d(C)` for a trigonal curve: always the stratum
/// `(d-g-1-r, floor((r-1)/2), ceil((r-1)/2))` of dimension
/// `rho + (r-1)(g-d+r-1)`, plus `(floor((d-g-2-r)/2), ceil((d-g-2-r)/2), r)`
/// of dimension `rho + r(g-d+r-2)` whenever `r >= d - g + 2`.
pub fn bn_components(g: i64, d: i64, r: i64) -> Result<BnLocusReport, TheoryError> {
    if r < 1 {
        return Err(TheoryError::Contract(format!(
            "bn_components needs r >= 1, got r = {r}"
        )));
    }
    if g - d + r < 1 {
        return Err(TheoryError::Contract(format!(
            "bn_components needs g - d + r >= 1, got g = {g}, d = {d}, r = {r}"
        )));
    }
    let rho = g - (r + 1) * (g - d + r);

    let mut components = Vec::new();
    let floor_half = (r - 1).div_euclid(2);
    let first = SplittingType::triple(d - g - 1 - r, floor_half, r - 1 - floor_half);
    let first_dim = rho + (r - 1) * (g - d + r - 1);
    cross_check_bn_dim(&first, first_dim, g)?;
    components.push(BnComponent {
        e: first,
        dim: first_dim,
    });

    if r >= d - g + 2 {
        let lo = (d - g - 2 - r).div_euclid(2);
        let second = SplittingType::triple(lo, d - g - 2 - r - lo, r);
        let second_dim = rho + r * (g - d + r - 2);
        cross_check_bn_dim(&second, second_dim, g)?;
        components.push(BnComponent {
            e: second,
            dim: second_dim,
        });
    }

    Ok(BnLocusReport {
        g,
        d,
        r,
        rho,
        components,
    })
}

fn cross_check_bn_dim(e: &SplittingType, dim: i64, g: i64) -> Result<(), TheoryError> {
    let via_codim = g - expected_codim(e);
    if via_codim != dim {
        return Err(TheoryError::Internal(format!(
            "Brill-Noether dimension mismatch for {e}: {dim} by the locus formula, {via_codim} by codimension"
        )));
    }
    Ok(())
}

/// Emptiness deduction across the poset. When a closed stratum is
/// irreducible of dimension `D` and some strictly smaller splitting type
/// carries a certified non-empty stratum of dimension `>= D`, the closed
/// stratum is exhausted by the smaller one, so its open part is empty.
///
/// The reports must cover the full enumerated universe for the context (the
/// default spread bound guarantees every possibly non-empty witness is
/// present). Only flavor-III classifications certify non-emptiness; the pass
/// never chains through `UNKNOWN` statuses and runs in a single deterministic
/// sweep. Returns the number of strata flipped to empty.
pub fn deduce_empty_open(
    _ctx: &TrigonalContext,
    reports: &mut [StratumReport],
) -> Result<usize, TheoryError> {
    let certified: Vec<(SplittingType, i64)> = reports
        .iter()
        .filter(|r| r.certified_nonempty())
        .map(|r| {
            let dim = r.open.dim.ok_or_else(|| {
                TheoryError::Internal(format!("certified stratum {} without a dimension", r.e))
            })?;
            Ok((r.e.clone(), dim))
        })
        .collect::<Result<_, TheoryError>>()?;

    let mut flipped = 0;
    for report in reports.iter_mut() {
        if !matches!(
            report.open.status,
            OpenStatus::Unknown | OpenStatus::Irreducible
        ) {
            continue;
        }
        let target_dim = match &report.closure {
            Some(ClosureReport {
                status: ClosureStatus::Point,
                ..
            }) => 0,
            Some(ClosureReport {
                status: ClosureStatus::Irreducible,
                dim: Some(d),
            }) => *d,
            _ => continue,
        };
        // Best witness: maximal certified dimension, then smallest type.
        let mut witness: Option<(SplittingType, i64)> = None;
        for (we, wdim) in &certified {
            if we == &report.e || *wdim < target_dim {
                continue;
            }
            if !dominance_leq(we, &report.e)? {
                continue;
            }
            let better = match &witness {
                None => true,
                Some((be, bdim)) => *wdim > *bdim || (*wdim == *bdim && we < be),
            };
            if better {
                witness = Some((we.clone(), *wdim));
            }
        }
        if let Some((we, _)) = witness {
            report.open = OpenReport {
                status: OpenStatus::Empty,
                dim: None,
                component_count: None,
                point_count: None,
                deduced_empty_witness: Some(we),
            };
            flipped += 1;
        }
    }
    Ok(flipped)
}
