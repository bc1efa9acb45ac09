//! Exact equidistribution deficiencies and the bounded-smoothness event.
//!
//! The distribution of a random `±1` polynomial mod a fixed `D` is pushed
//! forward exactly: probabilities are integer counts over the denominator
//! `2^{n+1}`, convolved one coefficient at a time, so the aggregate
//! deficiency comes out as an exact rational with no floating point.
//!
//! ```
//! use littlewood::equidist::delta_exact;
//!
//! let report = delta_exact(3, 1, 1, 1 << 20).unwrap();
//! assert_eq!(report.total.to_string(), "1/3");
//! ```

use std::collections::BTreeMap;

use num::{BigInt, BigRational, BigUint, One, Signed, Zero};
use thiserror::Error;

use crate::factor::{smooth_profile, FactorError};
use crate::poly::{Degree, LittlewoodSample, PolyMod};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EquidistError {
    #[error("modulus D must not be divisible by X")]
    DivisibleByX,
    #[error("modulus D must be monic")]
    NotMonic,
    #[error("budget exceeded: (m+1) * p^m = {0} > {1}")]
    BudgetExceeded(u128, u128),
    #[error("invalid smoothness parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Factor(#[from] FactorError),
}

/// Exact distribution of `f mod D` for a random degree-`n` sign polynomial:
/// integer counts over the implicit denominator `2^{n+1}`, indexed by the
/// base-`p` encoding of the residue.
#[derive(Clone, Debug)]
pub struct ResidueDistribution {
    pub modulus: PolyMod,
    pub n: usize,
    pub counts: Vec<BigUint>,
}

impl ResidueDistribution {
    pub fn denominator(&self) -> BigUint {
        BigUint::one() << (self.n + 1)
    }

    /// Probability of the residue with the given base-`p` encoding.
    pub fn probability(&self, index: usize) -> BigRational {
        BigRational::new(
            BigInt::from(self.counts[index].clone()),
            BigInt::from(self.denominator()),
        )
    }

    /// Encodes a residue polynomial (degree `< deg D`) as an index.
    pub fn encode(&self, residue: &PolyMod) -> usize {
        let p = self.modulus.modulus() as usize;
        let d = self.modulus.degree().finite().unwrap_or(0);
        let mut idx = 0usize;
        for i in (0..d).rev() {
            idx = idx * p + residue.coeff(i) as usize;
        }
        idx
    }
}

/// Push-forward of the uniform `±1` measure: starting from the point mass
/// at 0, convolve with `uniform{+X^i mod D, -X^i mod D}` for each
/// `i = 0..n`.
pub fn distribution_mod(d_poly: &PolyMod, n: usize) -> Result<ResidueDistribution, EquidistError> {
    let p = d_poly.modulus();
    let deg = match d_poly.degree() {
        Degree::NegInfinity => return Err(EquidistError::NotMonic),
        Degree::Finite(d) => d,
    };
    if !d_poly.is_monic() {
        return Err(EquidistError::NotMonic);
    }
    if deg >= 1 && d_poly.coeff(0) == 0 {
        return Err(EquidistError::DivisibleByX);
    }
    let size = (p as usize).pow(deg as u32);
    let pu = p as usize;

    // encode residue coefficient vectors in base p
    let encode = |f: &PolyMod| -> usize {
        let mut idx = 0usize;
        for i in (0..deg).rev() {
            idx = idx * pu + f.coeff(i) as usize;
        }
        idx
    };
    // residue addition on encodings, digitwise mod p
    let add = |a: usize, b: usize| -> usize {
        let (mut a, mut b, mut out, mut mult) = (a, b, 0usize, 1usize);
        for _ in 0..deg {
            out += (a % pu + b % pu) % pu * mult;
            a /= pu;
            b /= pu;
            mult *= pu;
        }
        out
    };
    let negate = |a: usize| -> usize {
        let (mut a, mut out, mut mult) = (a, 0usize, 1usize);
        for _ in 0..deg {
            out += (pu - a % pu) % pu * mult;
            a /= pu;
            mult *= pu;
        }
        out
    };

    let mut counts = vec![BigUint::zero(); size.max(1)];
    counts[0] = BigUint::one();
    if size <= 1 {
        // D constant: point mass stays on residue 0, denominator fixed below
        counts[0] = BigUint::one() << (n + 1);
        return Ok(ResidueDistribution {
            modulus: d_poly.clone(),
            n,
            counts,
        });
    }

    let mut x_i = PolyMod::one(p).divrem(d_poly).map_err(FactorError::from)?.1;
    let x = PolyMod::x(p);
    for _ in 0..=n {
        let plus = encode(&x_i);
        let minus = negate(plus);
        let mut next = vec![BigUint::zero(); size];
        for (u, c) in counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            next[add(u, plus)] += c;
            next[add(u, minus)] += c;
        }
        counts = next;
        x_i = x_i.mul(&x).divrem(d_poly).map_err(FactorError::from)?.1;
    }
    Ok(ResidueDistribution {
        modulus: d_poly.clone(),
        n,
        counts,
    })
}

/// Per-`D` deviations and their sum `Delta_p(n; m)`, all exact rationals.
#[derive(Clone, Debug)]
pub struct DeltaReport {
    pub p: u32,
    pub n: usize,
    pub m: usize,
    /// `(D, max_C |P(f_p = C mod D) - p^{-deg D}|)` per monic `D`, `X∤D`.
    pub per_d: Vec<(PolyMod, BigRational)>,
    pub total: BigRational,
}

/// Monic `D` over `F_p` with `X ∤ D` and `deg D <= m`, ascending degree.
fn enumerate_moduli(p: u32, m: usize) -> Vec<PolyMod> {
    let mut out = vec![PolyMod::one(p)];
    for d in 1..=m {
        let total = (p as u64).pow(d as u32 - 1) * (p as u64 - 1);
        for code in 0..total {
            let mut c = code;
            let mut coeffs = Vec::with_capacity(d + 1);
            coeffs.push((c % (p as u64 - 1) + 1) as u32); // constant term nonzero
            c /= p as u64 - 1;
            for _ in 1..d {
                coeffs.push((c % p as u64) as u32);
                c /= p as u64;
            }
            coeffs.push(1);
            out.push(PolyMod::new(p, coeffs));
        }
    }
    out
}

pub const DEFAULT_DELTA_BUDGET: u128 = 100_000_000;

/// `Delta_p(n; m)` summed over monic `D` with `X ∤ D`, `deg D <= m`.
pub fn delta_exact(
    p: u32,
    n: usize,
    m: usize,
    budget: u128,
) -> Result<DeltaReport, EquidistError> {
    let cost = (m as u128 + 1) * (p as u128).pow(m as u32);
    if cost > budget {
        return Err(EquidistError::BudgetExceeded(cost, budget));
    }
    let mut per_d = Vec::new();
    let mut total = BigRational::zero();
    for d_poly in enumerate_moduli(p, m) {
        let deg = d_poly.degree().finite().unwrap();
        let dist = distribution_mod(&d_poly, n)?;
        let uniform = BigRational::new(
            BigInt::one(),
            BigInt::from((p as u64).pow(deg as u32)),
        );
        let denom = BigInt::from(dist.denominator());
        let mut worst = BigRational::zero();
        for c in &dist.counts {
            let prob = BigRational::new(BigInt::from(c.clone()), denom.clone());
            let dev = (prob - &uniform).abs();
            if dev > worst {
                worst = dev;
            }
        }
        total += &worst;
        per_d.push((d_poly, worst));
    }
    Ok(DeltaReport { p, n, m, per_d, total })
}

/// Parameters of the bounded-smoothness event: both the smooth-part degree
/// bound `eps * m * ln m` and the divisor-count bound `m^{(1+eps) ln 2}`
/// must hold for every integer `m` in `[k, 2 theta n / ln n]`.
#[derive(Clone, Copy, Debug)]
pub struct SmoothnessParams {
    pub k: f64,
    pub theta: f64,
    pub eps: f64,
}

pub fn theta_star() -> f64 {
    2f64.ln() / (2.0 * 3f64.ln())
}

impl SmoothnessParams {
    pub fn validated(k: f64, theta: f64, eps: f64) -> Result<Self, EquidistError> {
        if !(k >= 1.0) {
            return Err(EquidistError::BadParams(format!("k = {k} must be >= 1")));
        }
        if !(theta > 0.0 && theta < theta_star()) {
            return Err(EquidistError::BadParams(format!(
                "theta = {theta} must lie in (0, {})",
                theta_star()
            )));
        }
        if !(eps > 0.0 && eps < 0.5) {
            return Err(EquidistError::BadParams(format!(
                "eps = {eps} must lie in (0, 1/2)"
            )));
        }
        Ok(SmoothnessParams { k, theta, eps })
    }

    /// Closed integer range of checked `m` values for degree `n`.
    pub fn m_range(&self, n: usize) -> (u64, u64) {
        let lo = self.k.ceil() as u64;
        let hi = (2.0 * self.theta * n as f64 / (n as f64).ln()).floor() as u64;
        (lo, hi)
    }
}

/// Evaluates the bounded-smoothness event for `f mod 3`. Returns whether it
/// holds and, if not, the first failing `m`. An empty `m`-range holds
/// vacuously.
pub fn smoothness_event(
    f: &LittlewoodSample,
    params: &SmoothnessParams,
) -> Result<(bool, Option<u64>), EquidistError> {
    let n = f.degree();
    let (lo, hi) = params.m_range(n);
    if lo > hi {
        return Ok((true, None));
    }
    let profile = smooth_profile(&f.reduce(3), hi as usize)?;
    // degree (with multiplicity) and ln(tau) of the m-smooth part, by
    // prefix over factor degree
    let mut by_degree: BTreeMap<usize, (usize, f64)> = BTreeMap::new();
    for c in &profile {
        let e = by_degree.entry(c.degree).or_insert((0, 0.0));
        e.0 += c.degree * c.multiplicity * c.count;
        e.1 += c.count as f64 * ((c.multiplicity + 1) as f64).ln();
    }
    for m in lo..=hi {
        let (deg_smooth, ln_tau) = by_degree
            .range(..=(m as usize))
            .fold((0usize, 0f64), |(d, t), (_, &(dd, tt))| (d + dd, t + tt));
        let m_f = m as f64;
        let deg_ok = deg_smooth as f64 <= params.eps * m_f * m_f.ln();
        let tau_ok = ln_tau <= (1.0 + params.eps) * 2f64.ln() * m_f.ln();
        if !deg_ok || !tau_ok {
            return Ok((false, Some(m)));
        }
    }
    Ok((true, None))
}
