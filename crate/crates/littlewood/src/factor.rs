//! Complete factorization over `F_p`: squarefree decomposition (including
//! the characteristic-`p` perfect-power paths), distinct-degree splitting,
//! randomized equal-degree splitting, Rabin irreducibility testing, and
//! smooth-part / divisor-count extraction.
//!
//! ```
//! use littlewood::factor::factor;
//! use littlewood::poly::PolyMod;
//! use rand_chacha::ChaCha8Rng;
//! use rand_core::SeedableRng;
//!
//! // 1 + x + ... + x^10 mod 2 is the 11th cyclotomic polynomial
//! let f = PolyMod::parse("1,1,1,1,1,1,1,1,1,1,1", 2).unwrap();
//! let mut rng = ChaCha8Rng::seed_from_u64(0);
//! assert_eq!(factor(&f, &mut rng).unwrap().degree_multiset(), vec![10]);
//! ```

use num::BigUint;
use rand_core::RngCore;
use thiserror::Error;

use crate::poly::{Degree, PolyError, PolyMod};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FactorError {
    #[error("cannot factor the zero polynomial")]
    ZeroInput,
    #[error("constant polynomial has no irreducibility status")]
    ConstantInput,
    #[error("input is not squarefree")]
    NotSquarefree,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Factorization of a nonzero polynomial over `F_p`:
/// `input = unit * prod factor_i ^ mult_i` with monic irreducible,
/// pairwise-distinct factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub modulus: u32,
    pub unit: u32,
    pub factors: Vec<(PolyMod, usize)>,
}

impl Factorization {
    /// Multiplies the unit and factor powers back together.
    pub fn expand(&self) -> PolyMod {
        let mut acc = PolyMod::constant(self.modulus, self.unit);
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f);
            }
        }
        acc
    }

    /// Irreducible factor degrees with multiplicity; sums to the degree of
    /// the factored polynomial.
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (f, m) in &self.factors {
            let d = f.degree().finite().expect("factors are nonconstant");
            for _ in 0..*m {
                out.push(d);
            }
        }
        out.sort_unstable();
        out
    }
}

/// Squarefree decomposition over `F_p`.
///
/// Returns monic squarefree pairwise-coprime parts `g_i` with multiplicities
/// `m_i` such that `monic(f) = prod g_i^{m_i}`. Handles `f' = 0` by taking
/// coefficient-wise `p`-th roots (the Frobenius fixes `F_p`, so the root of
/// a coefficient is the coefficient itself).
pub fn squarefree_decompose(f: &PolyMod) -> Result<Vec<(PolyMod, usize)>, FactorError> {
    if f.is_zero() {
        return Err(FactorError::ZeroInput);
    }
    let mut out = Vec::new();
    sff_into(&f.monic(), 1, &mut out)?;
    out.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
    Ok(out)
}

fn pth_root(f: &PolyMod) -> PolyMod {
    // f = g(X^p) with g's coefficients at indices divisible by p.
    let p = f.modulus() as usize;
    let coeffs: Vec<u32> = f.coeffs().iter().step_by(p).copied().collect();
    PolyMod::new(f.modulus(), coeffs)
}

fn sff_into(
    f: &PolyMod,
    outer_mult: usize,
    out: &mut Vec<(PolyMod, usize)>,
) -> Result<(), FactorError> {
    if f.is_constant() {
        return Ok(());
    }
    let fd = f.derivative();
    if fd.is_zero() {
        let p = f.modulus() as usize;
        return sff_into(&pth_root(f), outer_mult * p, out);
    }
    let mut c = f.gcd(&fd)?;
    let mut w = f.divrem(&c)?.0;
    let mut i = 1usize;
    while !w.is_one() {
        let y = w.gcd(&c)?;
        let z = w.divrem(&y)?.0;
        if !z.is_one() {
            out.push((z, i * outer_mult));
        }
        c = c.divrem(&y)?.0;
        w = y;
        i += 1;
    }
    if !c.is_one() {
        let p = f.modulus() as usize;
        sff_into(&pth_root(&c), outer_mult * p, out)?;
    }
    Ok(())
}

/// Distinct-degree splitting of a monic squarefree polynomial.
///
/// Returns `(product of irreducible factors of degree exactly d, d)` pairs
/// in ascending `d`, via iterated `X^{p^d} mod f`. Stops early once the
/// remaining cofactor must itself be irreducible.
pub fn distinct_degree_split(f: &PolyMod) -> Result<Vec<(PolyMod, usize)>, FactorError> {
    distinct_degree_split_capped(f, usize::MAX)
}

/// Same as [`distinct_degree_split`] but abandons the scan beyond degree
/// `cap` (the remaining cofactor, if any, is not reported). Used when only
/// the smooth structure up to some bound is needed.
pub fn distinct_degree_split_capped(
    f: &PolyMod,
    cap: usize,
) -> Result<Vec<(PolyMod, usize)>, FactorError> {
    let Degree::Finite(n) = f.degree() else {
        return Err(FactorError::ZeroInput);
    };
    if n == 0 {
        return Err(FactorError::ConstantInput);
    }
    let fd = f.derivative();
    if fd.is_zero() || !f.gcd(&fd)?.is_one() {
        return Err(FactorError::NotSquarefree);
    }
    let p = f.modulus() as u64;
    let mut fstar = f.monic();
    let mut result = Vec::new();
    let mut h = PolyMod::x(f.modulus()).divrem(&fstar)?.1;
    let mut d = 0usize;
    loop {
        let Degree::Finite(deg_rem) = fstar.degree() else {
            break;
        };
        if deg_rem == 0 {
            break;
        }
        d += 1;
        if d > cap {
            break;
        }
        if deg_rem < 2 * d {
            // cofactor has no factor of degree < d, so it is irreducible
            result.push((fstar.clone(), deg_rem));
            break;
        }
        h = h.powmod(&BigUint::from(p), &fstar)?;
        let g = h.sub(&PolyMod::x(f.modulus())).gcd(&fstar)?;
        if !g.is_one() {
            result.push((g.clone(), d));
            fstar = fstar.divrem(&g)?.0;
            h = h.divrem(&fstar)?.1;
        }
    }
    Ok(result)
}

/// Splits a monic squarefree product of degree-`d` irreducibles into its
/// factors. Randomized (Cantor–Zassenhaus for odd `p`, trace-map splitting
/// for `p = 2`); deterministic given the rng.
pub fn equal_degree_split(
    f: &PolyMod,
    d: usize,
    rng: &mut dyn RngCore,
) -> Result<Vec<PolyMod>, FactorError> {
    let Degree::Finite(n) = f.degree() else {
        return Err(FactorError::ZeroInput);
    };
    assert!(d >= 1 && n % d == 0, "degree bookkeeping violated");
    let mut out = Vec::with_capacity(n / d);
    edf_recurse(&f.monic(), d, rng, &mut out)?;
    out.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    Ok(out)
}

fn random_poly(p: u32, deg_below: usize, rng: &mut dyn RngCore) -> PolyMod {
    let coeffs: Vec<u32> = (0..deg_below).map(|_| rng.next_u32() % p).collect();
    PolyMod::new(p, coeffs)
}

fn edf_recurse(
    f: &PolyMod,
    d: usize,
    rng: &mut dyn RngCore,
    out: &mut Vec<PolyMod>,
) -> Result<(), FactorError> {
    let n = f.degree().finite().unwrap();
    if n == d {
        out.push(f.clone());
        return Ok(());
    }
    let p = f.modulus();
    loop {
        let a = random_poly(p, n, rng);
        if a.is_constant() {
            continue;
        }
        let g = if p == 2 {
            // trace map T(a) = a + a^2 + ... + a^{2^{d-1}} mod f
            let mut t = a.clone();
            let mut cur = a.clone();
            for _ in 1..d {
                cur = cur.mul(&cur).divrem(f)?.1;
                t = t.add(&cur);
            }
            t.gcd(f)?
        } else {
            let g0 = a.gcd(f)?;
            if !g0.is_one() {
                g0
            } else {
                // a^((p^d - 1)/2) - 1
                let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
                let b = a.powmod(&e, f)?;
                b.sub(&PolyMod::one(p)).gcd(f)?
            }
        };
        let gd = g.degree().finite().unwrap_or(0);
        if gd > 0 && gd < n {
            let h = f.divrem(&g)?.0;
            edf_recurse(&g, d, rng, out)?;
            edf_recurse(&h, d, rng, out)?;
            return Ok(());
        }
    }
}

/// Complete factorization into monic irreducibles.
pub fn factor(f: &PolyMod, rng: &mut dyn RngCore) -> Result<Factorization, FactorError> {
    if f.is_zero() {
        return Err(FactorError::ZeroInput);
    }
    let mut factors: Vec<(PolyMod, usize)> = Vec::new();
    for (part, mult) in squarefree_decompose(f)? {
        if part.is_constant() {
            continue;
        }
        for (prod, d) in distinct_degree_split(&part)? {
            for irr in equal_degree_split(&prod, d, rng)? {
                factors.push((irr, mult));
            }
        }
    }
    factors.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
    Ok(Factorization {
        modulus: f.modulus(),
        unit: f.leading_coeff(),
        factors,
    })
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin irreducibility test: `f` of degree `n` is irreducible over `F_p`
/// iff `X^{p^n} = X (mod f)` and `gcd(X^{p^{n/q}} - X, f) = 1` for every
/// prime `q | n`.
pub fn is_irreducible(f: &PolyMod) -> Result<bool, FactorError> {
    let Degree::Finite(n) = f.degree() else {
        return Err(FactorError::ZeroInput);
    };
    if n == 0 {
        return Err(FactorError::ConstantInput);
    }
    if n == 1 {
        return Ok(true);
    }
    let p = BigUint::from(f.modulus());
    let x = PolyMod::x(f.modulus());
    let fm = f.monic();
    // iterated Frobenius: frob[k] = X^{p^k} mod f
    let mut h = x.divrem(&fm)?.1;
    let mut checkpoints: Vec<(usize, PolyMod)> = Vec::new();
    let targets: Vec<usize> = prime_factors(n as u64).iter().map(|&q| n / q as usize).collect();
    for k in 1..=n {
        h = h.powmod(&p, &fm)?;
        if targets.contains(&k) {
            checkpoints.push((k, h.clone()));
        }
    }
    if h != x.divrem(&fm)?.1 {
        return Ok(false);
    }
    for (_, hk) in checkpoints {
        if !hk.sub(&x).gcd(&fm)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Degree of the `m`-smooth part and its monic divisor count `tau`:
/// the smooth degree counts multiplicity, and
/// `tau = prod (mult + 1)` over the distinct factors of degree `<= m`.
pub fn smooth_part(fact: &Factorization, m: usize) -> (usize, u128) {
    let mut degree = 0usize;
    let mut tau = 1u128;
    for (f, mult) in &fact.factors {
        let d = f.degree().finite().expect("factors are nonconstant");
        if d <= m {
            degree += d * mult;
            tau *= (*mult as u128) + 1;
        }
    }
    (degree, tau)
}

/// One class of small-degree factors: `count` distinct monic irreducibles
/// of degree `degree`, each with multiplicity `multiplicity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SmoothClass {
    pub degree: usize,
    pub multiplicity: usize,
    pub count: usize,
}

/// Smooth structure of `f` up to degree `cap` without equal-degree
/// splitting: squarefree decomposition followed by a capped distinct-degree
/// scan. Enough to evaluate smooth-part degrees and `tau` at scale.
pub fn smooth_profile(f: &PolyMod, cap: usize) -> Result<Vec<SmoothClass>, FactorError> {
    if f.is_zero() {
        return Err(FactorError::ZeroInput);
    }
    let mut classes = Vec::new();
    for (part, mult) in squarefree_decompose(f)? {
        if part.is_constant() {
            continue;
        }
        for (prod, d) in distinct_degree_split_capped(&part, cap)? {
            if d > cap {
                continue;
            }
            let pd = prod.degree().finite().unwrap();
            classes.push(SmoothClass {
                degree: d,
                multiplicity: mult,
                count: pd / d,
            });
        }
    }
    classes.sort_by_key(|c| (c.degree, c.multiplicity));
    Ok(classes)
}
