//! Splitting types of vector bundles on the projective line.
//!
//! A splitting type is a weakly increasing integer sequence `e1 <= ... <= ek`
//! recording the twists in a direct-sum decomposition. This module provides
//! the rank-agnostic arithmetic: expected codimension, cohomology of the
//! associated sum of line bundles, the dominance (specialization) order,
//! fixed-degree enumeration, and covering relations.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SplittingError {
    #[error("a splitting type needs at least one entry")]
    EmptySequence,
    #[error("incomparable splitting types: rank {left} vs rank {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("incomparable splitting types: total degree {left} vs {right}")]
    SumMismatch { left: i64, right: i64 },
}

/// Twists `e1 <= ... <= ek` of a direct sum of line bundles on the projective
/// line. Always stored in canonical (weakly increasing) order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SplittingType(Vec<i64>);

impl SplittingType {
    /// Canonicalizes an arbitrary non-empty sequence by sorting it.
    pub fn new(raw: impl Into<Vec<i64>>) -> Result<Self, SplittingError> {
        let mut entries = raw.into();
        if entries.is_empty() {
            return Err(SplittingError::EmptySequence);
        }
        entries.sort_unstable();
        Ok(SplittingType(entries))
    }

    /// Rank-3 constructor used throughout the trigonal theory.
    pub fn triple(a: i64, b: i64, c: i64) -> Self {
        Self::new(vec![a, b, c]).expect("non-empty by construction")
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// Total degree `e1 + ... + ek`.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Gap `ek - e1` between the extreme twists.
    pub fn spread(&self) -> i64 {
        self.0[self.0.len() - 1] - self.0[0]
    }

    /// The entries as `(a, b, c)` when the rank is 3.
    pub fn as_triple(&self) -> Option<(i64, i64, i64)> {
        match self.0.as_slice() {
            [a, b, c] => Some((*a, *b, *c)),
            _ => None,
        }
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Degree bookkeeping for strata of `Pic^d` on a genus-`g` curve with a
/// degree-`k` map to the projective line: every admissible splitting type
/// sums to `d - g + 1 - k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeDatum {
    pub d: i64,
    pub g: i64,
    pub k: i64,
}

impl DegreeDatum {
    pub fn stratum_sum(&self) -> i64 {
        self.d - self.g + 1 - self.k
    }
}

/// Expected codimension `u(e) = sum over j > i of max(0, e_j - e_i - 1)`.
pub fn expected_codim(e: &SplittingType) -> i64 {
    let v = e.entries();
    let mut u = 0;
    for j in 1..v.len() {
        for i in 0..j {
            u += (v[j] - v[i] - 1).max(0);
        }
    }
    u
}

/// Global sections of the associated sum of line bundles:
/// `h0 = sum max(0, e_i + 1)`.
pub fn h0_split(e: &SplittingType) -> i64 {
    e.entries().iter().map(|&x| (x + 1).max(0)).sum()
}

/// First cohomology: `h1 = sum max(0, -e_i - 1)`; satisfies
/// `h0 - h1 = total + rank` (Riemann-Roch on the projective line).
pub fn h1_split(e: &SplittingType) -> i64 {
    e.entries().iter().map(|&x| (-x - 1).max(0)).sum()
}

/// Dominance (specialization) order: `lo <= hi` iff every prefix sum of `lo`
/// is at most the corresponding prefix sum of `hi`. Only defined between
/// types of equal rank and equal total degree; anything else is a caller bug
/// and reported as an error rather than `false`.
pub fn dominance_leq(lo: &SplittingType, hi: &SplittingType) -> Result<bool, SplittingError> {
    if lo.rank() != hi.rank() {
        return Err(SplittingError::RankMismatch {
            left: lo.rank(),
            right: hi.rank(),
        });
    }
    if lo.total() != hi.total() {
        return Err(SplittingError::SumMismatch {
            left: lo.total(),
            right: hi.total(),
        });
    }
    let mut acc_lo = 0;
    let mut acc_hi = 0;
    for (a, b) in lo.entries().iter().zip(hi.entries()) {
        acc_lo += a;
        acc_hi += b;
        if acc_lo > acc_hi {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Default enumeration bound: any stratum that can be non-empty on a genus-`g`
/// curve has spread at most `g + 2`.
pub fn default_spread_bound(g: i64) -> i64 {
    g + 2
}

/// All rank-3 splitting types with total `d - g - 2` and spread at most
/// `spread_bound`, in canonical (lexicographic) order.
pub fn enumerate_types(datum: &DegreeDatum, spread_bound: i64) -> Vec<SplittingType> {
    assert!(datum.k == 3, "enumeration is implemented for rank 3 only");
    assert!(spread_bound >= 0, "spread bound must be non-negative");
    let s = datum.stratum_sum();
    let mut out = Vec::new();
    // e1 <= e2 <= e3, e1 + e2 + e3 = s, e3 - e1 <= bound
    // forces ceil((s - 2*bound)/3) <= e1 <= floor(s/3).
    let lo = (s - 2 * spread_bound + 2).div_euclid(3);
    let hi = s.div_euclid(3);
    for e1 in lo..=hi {
        let rest = s - e1;
        // e2 ranges over [e1, floor(rest/2)] so that e2 <= e3.
        for e2 in e1..=rest.div_euclid(2) {
            let e3 = rest - e2;
            if e3 - e1 <= spread_bound {
                out.push(SplittingType(vec![e1, e2, e3]));
            }
        }
    }
    out.sort();
    out
}

/// Covering relations `(lower, upper)` of the dominance order on `types`.
///
/// The caller must pass types of one rank and total degree, closed under
/// intermediate elements (the fixed-sum enumeration up to a spread bound has
/// this property, since everything between two members has smaller spread).
/// Under that hypothesis the result equals the covering relation of the full
/// fixed-sum dominance order restricted to the set.
pub fn hasse_edges(
    types: &[SplittingType],
) -> Result<Vec<(SplittingType, SplittingType)>, SplittingError> {
    let n = types.len();
    let words = n.div_ceil(64);
    // Strict comparability as bitset rows: above[i] holds the j with
    // types[i] < types[j], below[j] the i with types[i] < types[j].
    let mut above = vec![0u64; n * words];
    let mut below = vec![0u64; n * words];
    for i in 0..n {
        for j in 0..n {
            if i == j || types[i] == types[j] {
                continue;
            }
            if dominance_leq(&types[i], &types[j])? {
                above[i * words + j / 64] |= 1 << (j % 64);
                below[j * words + i / 64] |= 1 << (i % 64);
            }
        }
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if above[i * words + j / 64] & (1 << (j % 64)) == 0 {
                continue;
            }
            // A cover admits nothing strictly between.
            let blocked = (0..words).any(|w| above[i * words + w] & below[j * words + w] != 0);
            if !blocked {
                edges.push((types[i].clone(), types[j].clone()));
            }
        }
    }
    edges.sort();
    edges.dedup();
    Ok(edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn st(v: &[i64]) -> SplittingType {
        SplittingType::new(v.to_vec()).unwrap()
    }

    #[test]
    fn construction_sorts() {
        assert_eq!(st(&[0, -5, -8]).entries(), &[-8, -5, 0]);
        assert_eq!(st(&[-8, -5, 0]).entries(), &[-8, -5, 0]);
        assert_eq!(
            SplittingType::new(vec![]),
            Err(SplittingError::EmptySequence)
        );
    }

    #[test]
    fn expected_codim_examples() {
        assert_eq!(expected_codim(&st(&[-8, -5, 0])), 13);
        assert_eq!(expected_codim(&st(&[4, 4, 4])), 0);
        assert_eq!(expected_codim(&st(&[-7, -4, -2])), 7);
    }

    #[test]
    fn cohomology_examples() {
        assert_eq!(h0_split(&st(&[-8, -5, 0])), 1);
        assert_eq!(h0_split(&st(&[-4, 0, 0])), 2);
        assert_eq!(h0_split(&st(&[-1, -1, -1])), 0);
        assert_eq!(h1_split(&st(&[-1, -1, -1])), 0);
    }

    #[test]
    fn dominance_examples() {
        let lo = st(&[-8, -5, 0]);
        let hi = st(&[-7, -6, 0]);
        assert_eq!(dominance_leq(&lo, &hi), Ok(true));
        assert_eq!(dominance_leq(&lo, &lo), Ok(true));
        // Prefix sums (-8,-12,-13) vs (-7,-13,-13) fail in both directions.
        let x = st(&[-8, -4, -1]);
        assert_eq!(dominance_leq(&x, &hi), Ok(false));
        assert_eq!(dominance_leq(&hi, &x), Ok(false));
    }

    #[test]
    fn dominance_domain_errors() {
        let a = st(&[0, 0]);
        let b = st(&[0, 0, 0]);
        assert!(matches!(
            dominance_leq(&a, &b),
            Err(SplittingError::RankMismatch { .. })
        ));
        let c = st(&[0, 0, 1]);
        assert!(matches!(
            dominance_leq(&b, &c),
            Err(SplittingError::SumMismatch { .. })
        ));
        // hasse_edges inherits the domain checks.
        assert!(hasse_edges(&[b, c]).is_err());
    }

    #[test]
    fn enumerate_contains_example_diagram_types() {
        let datum = DegreeDatum { d: 0, g: 11, k: 3 };
        let types = enumerate_types(&datum, default_spread_bound(11));
        for t in [
            [-8, -5, 0],
            [-7, -6, 0],
            [-8, -4, -1],
            [-7, -5, -1],
            [-6, -6, -1],
            [-8, -3, -2],
            [-7, -4, -2],
            [-7, -3, -3],
            [-6, -5, -2],
        ] {
            assert!(types.contains(&st(&t)), "missing {t:?}");
        }
        for t in &types {
            assert_eq!(t.total(), datum.stratum_sum());
        }
    }

    #[test]
    fn enumerate_zero_bound() {
        // d - g - 2 = -13 is not divisible by 3: no balanced type.
        let datum = DegreeDatum { d: 0, g: 11, k: 3 };
        assert!(enumerate_types(&datum, 0).is_empty());
        // Divisible case yields exactly the balanced type.
        let datum = DegreeDatum { d: 1, g: 11, k: 3 };
        assert_eq!(enumerate_types(&datum, 0), vec![st(&[-4, -4, -4])]);
    }

    #[test]
    fn enumerate_genus_six() {
        let datum = DegreeDatum { d: 4, g: 6, k: 3 };
        let types = enumerate_types(&datum, 8);
        assert!(types.contains(&st(&[-4, 0, 0])));
        assert!(types.contains(&st(&[-3, -2, 1])));
    }

    #[test]
    fn hasse_example_edges() {
        let datum = DegreeDatum { d: 0, g: 11, k: 3 };
        let types = enumerate_types(&datum, default_spread_bound(11));
        let edges = hasse_edges(&types).unwrap();
        assert!(edges.contains(&(st(&[-8, -5, 0]), st(&[-7, -6, 0]))));
        assert!(edges.contains(&(st(&[-8, -4, -1]), st(&[-8, -3, -2]))));
        assert!(hasse_edges(&[st(&[-8, -5, 0])]).unwrap().is_empty());
    }

    /// Independent reduction oracle: strict-comparability matrix minus its
    /// composition with itself.
    fn brute_force_reduction(types: &[SplittingType]) -> Vec<(SplittingType, SplittingType)> {
        let n = types.len();
        let mut strict = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                strict[i][j] =
                    i != j && types[i] != types[j] && dominance_leq(&types[i], &types[j]).unwrap();
            }
        }
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if !strict[i][j] {
                    continue;
                }
                let two_step = (0..n).any(|k| strict[i][k] && strict[k][j]);
                if !two_step {
                    out.push((types[i].clone(), types[j].clone()));
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn hasse_matches_brute_force_on_small_universes() {
        for (g, d, bound) in [(5, 0, 5), (6, 4, 6), (8, 3, 8), (11, 0, 9)] {
            let datum = DegreeDatum { d, g, k: 3 };
            let types = enumerate_types(&datum, bound);
            assert_eq!(
                hasse_edges(&types).unwrap(),
                brute_force_reduction(&types),
                "g={g} d={d}"
            );
        }
    }

    fn arb_type(rank: usize, lo: i64, hi: i64) -> impl Strategy<Value = SplittingType> {
        proptest::collection::vec(lo..hi, rank).prop_map(|v| SplittingType::new(v).unwrap())
    }

    /// Same rank and total as `base`, produced by redistributing two entries.
    fn arb_same_sum_pair() -> impl Strategy<Value = (SplittingType, SplittingType)> {
        (arb_type(3, -10, 10), -6i64..=6, 0usize..3, 0usize..3).prop_map(|(base, shift, i, j)| {
            let mut v = base.entries().to_vec();
            if i != j {
                v[i] -= shift;
                v[j] += shift;
            }
            (base, SplittingType::new(v).unwrap())
        })
    }

    proptest! {
        #[test]
        fn riemann_roch_identity(e in arb_type(4, -12, 12)) {
            prop_assert_eq!(h0_split(&e) - h1_split(&e), e.total() + e.rank() as i64);
        }

        #[test]
        fn codim_zero_iff_balanced(e in arb_type(3, -10, 10)) {
            prop_assert_eq!(expected_codim(&e) == 0, e.spread() <= 1);
        }

        #[test]
        fn single_condition_codim_closed_form(
            a in -15i64..=15, da in 0i64..=1, dc in 1i64..=12,
        ) {
            // b - a <= 1 and c - b >= 1: the single-rank-condition regime,
            // where u collapses to 2c - a - b - 2.
            let b = a + da;
            let c = b + dc;
            let e = SplittingType::triple(a, b, c);
            prop_assert_eq!(expected_codim(&e), 2 * c - a - b - 2);
        }

        #[test]
        fn dominance_partial_order_laws(
            (x, y) in arb_same_sum_pair(),
            (p, q) in arb_same_sum_pair(),
        ) {
            // Reflexivity.
            prop_assert!(dominance_leq(&x, &x).unwrap());
            // Antisymmetry.
            if dominance_leq(&x, &y).unwrap() && dominance_leq(&y, &x).unwrap() {
                prop_assert_eq!(&x, &y);
            }
            // Transitivity, on a chain sharing the middle element.
            if p.total() == x.total() {
                if dominance_leq(&p, &x).unwrap() && dominance_leq(&x, &y).unwrap() {
                    prop_assert!(dominance_leq(&p, &y).unwrap());
                }
                if dominance_leq(&q, &p).unwrap() && dominance_leq(&p, &x).unwrap() {
                    prop_assert!(dominance_leq(&q, &x).unwrap());
                }
            }
        }

        #[test]
        fn specialization_is_upper_semicontinuous((x, y) in arb_same_sum_pair()) {
            if dominance_leq(&x, &y).unwrap() {
                prop_assert!(expected_codim(&x) >= expected_codim(&y));
                prop_assert!(h0_split(&x) >= h0_split(&y));
            }
        }

        #[test]
        fn balanced_type_is_unique_maximum(s in -20i64..=20, bound in 2i64..=10) {
            // stratum sum is d - g - 2 = s
            let datum = DegreeDatum { d: s + 12, g: 10, k: 3 };
            let types = enumerate_types(&datum, bound);
            let top = types.iter().min_by_key(|e| e.spread()).cloned().unwrap();
            prop_assert!(top.spread() <= 1);
            for t in &types {
                prop_assert!(dominance_leq(t, &top).unwrap());
            }
        }
    }
}
