//! Intersection theory and section counts on the Hirzebruch surface `F_n`.
//!
//! Divisor classes are integer combinations of the directrix `E` (the section
//! of self-intersection `-n`) and a fiber `F`, with pairing `E^2 = -n`,
//! `E.F = 1`, `F^2 = 0`. A trigonal curve of genus `g` and Maroni invariant
//! `n` sits on `F_n` in class `3E + ((g+3n)/2 + 1)F`; everything the stratum
//! classifier needs about that curve is computed here.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HirzebruchError {
    #[error("maroni invariant must satisfy n >= 0, got n = {n}")]
    NegativeMaroni { n: i64 },
    #[error("genus and maroni invariant must satisfy g = n (mod 2), got g = {g}, n = {n}")]
    ParityViolation { g: i64, n: i64 },
    #[error("genus too small: g >= n + 2 must hold (scroll degrees (g-n)/2 - 1 >= 0), got g = {g}, n = {n}")]
    GenusTooSmall { g: i64, n: i64 },
    #[error("directrix degree (g - 3n)/2 + 1 = {value} must be non-negative (g >= 3n - 2), got g = {g}, n = {n}")]
    NegativeDirectrixDegree { g: i64, n: i64, value: i64 },
    #[error("fiber twist alpha = {alpha} exceeds (g + n)/2 = {bound}; section counts are not modeled beyond it")]
    AlphaOutOfRange { alpha: i64, bound: i64 },
    #[error("class {ell}E + {em}F with ell < 0 is outside the modeled range")]
    NegativeDirectrixMultiple { ell: i64, em: i64 },
    #[error("surface invariant must satisfy n >= 0, got n = {n}")]
    NegativeSurface { n: i64 },
}

/// Integer divisor class `ell*E + em*F` on `F_n`. Negative coefficients make
/// sense as formal classes and are allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SurfaceClass {
    pub ell: i64,
    pub em: i64,
}

impl SurfaceClass {
    pub fn new(ell: i64, em: i64) -> Self {
        SurfaceClass { ell, em }
    }

    /// The directrix class `E`.
    pub fn directrix() -> Self {
        SurfaceClass { ell: 1, em: 0 }
    }

    /// The fiber class `F`.
    pub fn fiber() -> Self {
        SurfaceClass { ell: 0, em: 1 }
    }
}

/// Intersection pairing on `F_n`: `(l1 E + m1 F).(l2 E + m2 F)
/// = l1 m2 + l2 m1 - n l1 l2`.
pub fn intersect(n: i64, a: SurfaceClass, b: SurfaceClass) -> i64 {
    assert!(n >= 0, "Hirzebruch invariant must be non-negative");
    a.ell * b.em + b.ell * a.em - n * a.ell * b.ell
}

/// Validated pair (genus, Maroni invariant) of a trigonal curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaroniDatum {
    g: i64,
    n: i64,
}

impl MaroniDatum {
    pub fn new(g: i64, n: i64) -> Result<Self, HirzebruchError> {
        if n < 0 {
            return Err(HirzebruchError::NegativeMaroni { n });
        }
        if (g - n).rem_euclid(2) != 0 {
            return Err(HirzebruchError::ParityViolation { g, n });
        }
        if g < n + 2 {
            return Err(HirzebruchError::GenusTooSmall { g, n });
        }
        let directrix = (g - 3 * n) / 2 + 1;
        if directrix < 0 {
            return Err(HirzebruchError::NegativeDirectrixDegree {
                g,
                n,
                value: directrix,
            });
        }
        Ok(MaroniDatum { g, n })
    }

    pub fn g(&self) -> i64 {
        self.g
    }

    pub fn n(&self) -> i64 {
        self.n
    }
}

/// Class of the curve on its Hirzebruch surface: `3E + ((g+3n)/2 + 1)F`.
pub fn curve_class(md: &MaroniDatum) -> SurfaceClass {
    SurfaceClass::new(3, (md.g + 3 * md.n) / 2 + 1)
}

/// Number of intersection points of the curve with the directrix,
/// `(g - 3n)/2 + 1`. The points are distinct and reduced only for a general
/// curve of this Maroni invariant; callers must qualify counts accordingly.
pub fn directrix_points(md: &MaroniDatum) -> i64 {
    (md.g - 3 * md.n) / 2 + 1
}

/// `h^0(F_n, ell*E + em*F)` for `ell >= 0`, via the pushforward to the
/// projective line, which splits as the sum of `O(em - i*n)` for
/// `i = 0, ..., ell`.
pub fn h0_surface(n: i64, ell: i64, em: i64) -> Result<i64, HirzebruchError> {
    surface_summands(n, ell, em).map(|it| it.map(|t| (t + 1).max(0)).sum())
}

/// `h^1(F_n, ell*E + em*F)` for `ell >= 0`; vanishes whenever
/// `em >= ell*n >= 0`.
pub fn h1_surface(n: i64, ell: i64, em: i64) -> Result<i64, HirzebruchError> {
    surface_summands(n, ell, em).map(|it| it.map(|t| (-t - 1).max(0)).sum())
}

fn surface_summands(
    n: i64,
    ell: i64,
    em: i64,
) -> Result<impl Iterator<Item = i64>, HirzebruchError> {
    if n < 0 {
        return Err(HirzebruchError::NegativeSurface { n });
    }
    if ell < 0 {
        return Err(HirzebruchError::NegativeDirectrixMultiple { ell, em });
    }
    Ok((0..=ell).map(move |i| em - i * n))
}

/// Base locus of the restricted system `(E + alpha*F)|_C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseLocus {
    /// Base point free (`alpha >= n`).
    None,
    /// The directrix points `E | C` form the base locus (`0 <= alpha <= n-1`).
    Directrix,
    /// No sections at all (`alpha < 0`).
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RestrictedSections {
    pub h0: i64,
    pub base_locus: BaseLocus,
}

/// Sections of `(E + alpha*F)|_C` for `alpha <= (g+n)/2`:
/// `0` below `alpha = 0`, then `alpha + 1` up to `alpha = n - 1`, then
/// `2*alpha - n + 2`.
pub fn restricted_h0(md: &MaroniDatum, alpha: i64) -> Result<RestrictedSections, HirzebruchError> {
    let bound = (md.g + md.n) / 2;
    if alpha > bound {
        return Err(HirzebruchError::AlphaOutOfRange { alpha, bound });
    }
    let out = if alpha < 0 {
        RestrictedSections {
            h0: 0,
            base_locus: BaseLocus::All,
        }
    } else if alpha < md.n {
        RestrictedSections {
            h0: alpha + 1,
            base_locus: BaseLocus::Directrix,
        }
    } else {
        RestrictedSections {
            h0: 2 * alpha - md.n + 2,
            base_locus: BaseLocus::None,
        }
    };
    Ok(out)
}

/// Degree of `(E + alpha*F)|_C`, i.e. `(E + alpha*F).C = (g-3n)/2 + 1 + 3*alpha`.
pub fn restricted_degree(md: &MaroniDatum, alpha: i64) -> i64 {
    intersect(md.n, SurfaceClass::new(1, alpha), curve_class(md))
}

/// Self-test: the canonical class restricts with degree `2g - 2`, i.e.
/// `(E + ((g+n)/2 - 1)F).C = 2g - 2`.
pub fn canonical_degree_check(md: &MaroniDatum) -> bool {
    let canonical = SurfaceClass::new(1, (md.g + md.n) / 2 - 1);
    intersect(md.n, canonical, curve_class(md)) == 2 * md.g - 2
}
