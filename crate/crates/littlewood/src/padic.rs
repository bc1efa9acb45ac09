//! 2-adic Newton polygons and the large-factor certificate for monic
//! sign-vector polynomials of degree `n = 2^r - 1`.
//!
//! The certificate rests on the composition `g(X) = f(X+1)`: at these
//! special degrees every non-leading coefficient of `g` is even, and the
//! least index `i` with `g_i = 2 (mod 4)` pins a Newton-polygon segment of
//! width `n - i` and height 1, hence an irreducible factor of degree at
//! least `n - i` over the 2-adic numbers (and so over `Q`).
//!
//! ```
//! use littlewood::poly::LittlewoodSample;
//! use littlewood::padic::littlewood_2adic_certificate;
//!
//! let f = LittlewoodSample::parse("+-++").unwrap();
//! let cert = littlewood_2adic_certificate(&f);
//! assert_eq!((cert.i_star, cert.lower_bound), (Some(0), Some(3)));
//! ```

use num::rational::Ratio;
use num::BigInt;
use thiserror::Error;

use crate::poly::{shift_compose_mod4, LittlewoodSample};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PadicError {
    #[error("empty valuation vector")]
    Empty,
    #[error("no finite valuations")]
    AllInfinite,
    #[error("leading valuation must be finite")]
    InfiniteLeading,
}

/// A valuation: a nonnegative integer or `+infinity` (for the zero
/// coefficient).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Val {
    Finite(u64),
    Infinite,
}

/// One lower-hull segment, reported with the nonnegative height
/// `v(start) - v(end)` convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Segment {
    pub width: u64,
    pub height: i64,
    pub slope: Ratio<i64>,
}

/// Lower convex hull of the points `(i, v_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub points: Vec<(usize, Val)>,
    /// Hull vertices, left to right, strictly increasing index.
    pub vertices: Vec<(usize, u64)>,
    /// Segments between consecutive vertices; slopes strictly increase.
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    /// Builds the polygon from the valuation sequence (index = coefficient
    /// index). The last valuation must be finite.
    pub fn from_valuations(valuations: &[Val]) -> Result<Self, PadicError> {
        if valuations.is_empty() {
            return Err(PadicError::Empty);
        }
        let finite: Vec<(usize, u64)> = valuations
            .iter()
            .enumerate()
            .filter_map(|(i, v)| match v {
                Val::Finite(x) => Some((i, *x)),
                Val::Infinite => None,
            })
            .collect();
        if finite.is_empty() {
            return Err(PadicError::AllInfinite);
        }
        if finite.last().unwrap().0 != valuations.len() - 1 {
            return Err(PadicError::InfiniteLeading);
        }
        // monotone chain, lower hull; collinear middle points dropped
        let mut hull: Vec<(usize, u64)> = Vec::new();
        for &(x, y) in &finite {
            while hull.len() >= 2 {
                let (x1, y1) = hull[hull.len() - 2];
                let (x2, y2) = hull[hull.len() - 1];
                // keep (x2,y2) only if it turns strictly right of the line
                // (x1,y1)-(x,y), i.e. cross product < 0
                let cross = (x2 as i128 - x1 as i128) * (y as i128 - y1 as i128)
                    - (y2 as i128 - y1 as i128) * (x as i128 - x1 as i128);
                if cross <= 0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push((x, y));
        }
        let segments = hull
            .windows(2)
            .map(|w| {
                let (x1, y1) = w[0];
                let (x2, y2) = w[1];
                Segment {
                    width: (x2 - x1) as u64,
                    height: y1 as i64 - y2 as i64,
                    slope: Ratio::new(y2 as i64 - y1 as i64, (x2 - x1) as i64),
                }
            })
            .collect();
        Ok(NewtonPolygon {
            points: valuations.iter().copied().enumerate().collect(),
            vertices: hull,
            segments,
        })
    }
}

/// Result of the mod-4 scan of `g = f(X+1)`: when valid, every
/// factorization `f = gh` over `Z` has a factor of degree `>= n - i_star`,
/// so proper factor degrees lie in `[0, i_star] u [n - i_star, n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LargeFactorCertificate {
    pub n: usize,
    pub i_star: Option<usize>,
    pub lower_bound: Option<usize>,
    pub valid: bool,
}

/// Runs the mod-4 certificate scan. Non-monic inputs are negated first
/// (`f` is irreducible iff `-f` is). The certificate is only meaningful
/// when `n + 1` is a power of two; otherwise `valid = false`.
pub fn littlewood_2adic_certificate(f: &LittlewoodSample) -> LargeFactorCertificate {
    let (f, _) = f.monic_normalized();
    let n = f.degree();
    if n == 0 || !(n + 1).is_power_of_two() {
        return LargeFactorCertificate {
            n,
            i_star: None,
            lower_bound: None,
            valid: false,
        };
    }
    let g = shift_compose_mod4(&f);
    let i_star = (0..n).find(|&i| g.coeff(i) == 2);
    match i_star {
        Some(i) => LargeFactorCertificate {
            n,
            i_star: Some(i),
            lower_bound: Some(n - i),
            valid: true,
        },
        None => LargeFactorCertificate {
            n,
            i_star: None,
            lower_bound: None,
            valid: false,
        },
    }
}

/// Exact integer composition `g = f(X+1)` (arbitrary degree, big-integer
/// coefficients). Backs the `newton` CLI output and the polygon oracle.
pub fn compose_shift_exact(f: &LittlewoodSample) -> Vec<BigInt> {
    let n = f.degree();
    let mut g = vec![BigInt::from(0); n + 1];
    for j in (0..=n).rev() {
        for i in (0..n).rev() {
            let lo = g[i].clone();
            g[i + 1] += lo;
        }
        g[0] += f.signs()[j];
    }
    g
}

/// 2-adic valuations of an integer coefficient vector.
pub fn valuations_2adic(coeffs: &[BigInt]) -> Vec<Val> {
    use num::Zero;
    coeffs
        .iter()
        .map(|c| {
            if c.is_zero() {
                Val::Infinite
            } else {
                Val::Finite(c.trailing_zeros().unwrap())
            }
        })
        .collect()
}
