//! Dense univariate polynomial arithmetic over prime fields `F_p` and over
//! `Z/4Z`, plus the `±1`-coefficient sign vectors everything else consumes.
//!
//! Polynomials are stored lowest degree first with no trailing zeros; the
//! zero polynomial is the empty coefficient vector and its degree is the
//! distinguished [`Degree::NegInfinity`] sentinel. Arithmetic over `F_2`
//! routes through the bit-packed [`gf2`] representation.

use std::fmt;

use num::BigUint;
use num::{One, Zero};
use thiserror::Error;

pub mod gf2;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials")]
    GcdOfZeros,
    #[error("powmod modulus must be nonconstant")]
    ConstantModulus,
    #[error("modulus must be a prime >= 2, got {0}")]
    BadModulus(u32),
    #[error("invalid polynomial text: {0}")]
    Parse(String),
}

/// Degree with a sentinel for the zero polynomial, ordered below all
/// finite degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

/// Dense univariate polynomial over `F_p` for a small prime `p`.
///
/// Coefficients are residues in `[0, p)`, lowest degree first, with no
/// trailing zeros. Values are immutable after construction; all operations
/// are pure functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMod {
    p: u32,
    coeffs: Vec<u32>,
}

impl PolyMod {
    /// Builds a polynomial from residues, trimming trailing zeros.
    pub fn new(p: u32, mut coeffs: Vec<u32>) -> Self {
        assert!(p >= 2, "modulus must be >= 2");
        for c in &mut coeffs {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyMod { p, coeffs }
    }

    /// Builds a polynomial from signed integers, reducing each mod `p`.
    pub fn from_signed(p: u32, coeffs: &[i64]) -> Self {
        let m = p as i64;
        Self::new(p, coeffs.iter().map(|&c| (c.rem_euclid(m)) as u32).collect())
    }

    pub fn zero(p: u32) -> Self {
        Self::new(p, vec![])
    }

    pub fn one(p: u32) -> Self {
        Self::new(p, vec![1])
    }

    pub fn constant(p: u32, c: u32) -> Self {
        Self::new(p, vec![c])
    }

    /// The monomial `c X^d`.
    pub fn monomial(p: u32, c: u32, d: usize) -> Self {
        let mut v = vec![0; d + 1];
        v[d] = c;
        Self::new(p, v)
    }

    pub fn x(p: u32) -> Self {
        Self::monomial(p, 1, 1)
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of `X^i` (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Degree {
        if self.coeffs.is_empty() {
            Degree::NegInfinity
        } else {
            Degree::Finite(self.coeffs.len() - 1)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == 1
    }

    pub fn eval(&self, x: u32) -> u32 {
        let p = self.p as u64;
        let x = (x as u64) % p;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = (acc * x + c as u64) % p;
        }
        acc as u32
    }

    fn check_same_modulus(&self, other: &Self) -> (u32, u32) {
        assert_eq!(
            self.p, other.p,
            "modulus mismatch: {} vs {}",
            self.p, other.p
        );
        (self.p, other.p)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same_modulus(other);
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push((self.coeff(i) + other.coeff(i)) % p);
        }
        Self::new(p, out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_same_modulus(other);
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push((self.coeff(i) + p - other.coeff(i)) % p);
        }
        Self::new(p, out)
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        Self::new(p, self.coeffs.iter().map(|&c| (p - c) % p).collect())
    }

    pub fn scale(&self, c: u32) -> Self {
        let p = self.p as u64;
        let c = (c as u64) % p;
        Self::new(
            self.p,
            self.coeffs
                .iter()
                .map(|&a| ((a as u64 * c) % p) as u32)
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same_modulus(other);
        if self.p == 2 && self.coeffs.len().min(other.coeffs.len()) > 8 {
            return gf2::Gf2Poly::from_polymod(self)
                .mul(&gf2::Gf2Poly::from_polymod(other))
                .to_polymod();
        }
        self.mul_generic(other)
    }

    /// Schoolbook product over `F_p`; the reference path the packed `F_2`
    /// representation is checked against.
    pub(crate) fn mul_generic(&self, other: &Self) -> Self {
        let p = self.p as u64;
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let a = a as u64;
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b as u64) % p;
            }
        }
        Self::new(self.p, out.into_iter().map(|c| c as u32).collect())
    }

    /// Inverse of a nonzero residue mod the prime `p`.
    fn inv_mod_p(p: u32, a: u32) -> u32 {
        // Fermat: a^(p-2) mod p.
        let mut result = 1u64;
        let mut base = a as u64 % p as u64;
        let mut e = p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        result as u32
    }

    /// Euclidean division: `self = q * b + r` with `deg r < deg b`.
    pub fn divrem(&self, b: &Self) -> Result<(Self, Self), PolyError> {
        self.check_same_modulus(b);
        if b.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.p == 2 && b.coeffs.len() > 8 {
            let (q, r) = gf2::Gf2Poly::from_polymod(self).divrem(&gf2::Gf2Poly::from_polymod(b));
            return Ok((q.to_polymod(), r.to_polymod()));
        }
        self.divrem_generic(b)
    }

    pub(crate) fn divrem_generic(&self, b: &Self) -> Result<(Self, Self), PolyError> {
        if b.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let p = self.p as u64;
        let db = b.coeffs.len() - 1;
        if self.coeffs.len() < b.coeffs.len() {
            return Ok((Self::zero(self.p), self.clone()));
        }
        let lc_inv = Self::inv_mod_p(self.p, b.leading_coeff()) as u64;
        let mut rem: Vec<u64> = self.coeffs.iter().map(|&c| c as u64).collect();
        let mut quot = vec![0u64; rem.len() - db];
        for i in (db..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let q = c * lc_inv % p;
            quot[i - db] = q;
            for (j, &bc) in b.coeffs.iter().enumerate() {
                let idx = i - db + j;
                rem[idx] = (rem[idx] + p * p - q * bc as u64 % p) % p;
            }
        }
        rem.truncate(db);
        Ok((
            Self::new(self.p, quot.into_iter().map(|c| c as u32).collect()),
            Self::new(self.p, rem.into_iter().map(|c| c as u32).collect()),
        ))
    }

    /// Monic scalar multiple of `self` (zero stays zero).
    pub fn monic(&self) -> Self {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(Self::inv_mod_p(self.p, self.leading_coeff()))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_same_modulus(other);
        if self.is_zero() && other.is_zero() {
            return Err(PolyError::GcdOfZeros);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// `self^e mod m` by binary exponentiation.
    pub fn powmod(&self, e: &BigUint, m: &Self) -> Result<Self, PolyError> {
        self.check_same_modulus(m);
        if m.is_constant() {
            return Err(PolyError::ConstantModulus);
        }
        let mut base = self.divrem(m)?.1;
        let mut result = Self::one(self.p);
        let mut e = e.clone();
        let two = BigUint::from(2u32);
        while !e.is_zero() {
            if (&e % &two).is_one() {
                result = result.mul(&base).divrem(m)?.1;
            }
            base = base.mul(&base).divrem(m)?.1;
            e >>= 1;
        }
        Ok(result)
    }

    pub fn powmod_u64(&self, e: u64, m: &Self) -> Result<Self, PolyError> {
        self.powmod(&BigUint::from(e), m)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        let p = self.p as u64;
        let out: Vec<u32> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| ((i as u64 % p) * c as u64 % p) as u32)
            .collect();
        Self::new(self.p, out)
    }

    /// Parses "c0,c1,..." (lowest degree first); entries may be negative.
    pub fn parse(s: &str, p: u32) -> Result<Self, PolyError> {
        if p < 2 {
            return Err(PolyError::BadModulus(p));
        }
        let mut coeffs = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let c: i64 = tok
                .parse()
                .map_err(|_| PolyError::Parse(format!("bad coefficient {tok:?}")))?;
            coeffs.push(c);
        }
        Ok(Self::from_signed(p, &coeffs))
    }
}

impl fmt::Display for PolyMod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for PolyMod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMod(mod {}: {})", self.p, self)
    }
}

/// A degree-`n` sign vector: `signs[i]` is the coefficient of `X^i`,
/// each `+1` or `-1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LittlewoodSample {
    signs: Vec<i8>,
}

impl LittlewoodSample {
    pub fn new(signs: Vec<i8>) -> Self {
        assert!(!signs.is_empty(), "empty sign vector");
        assert!(
            signs.iter().all(|&s| s == 1 || s == -1),
            "signs must be +1 or -1"
        );
        LittlewoodSample { signs }
    }

    /// Parses a string over `{+, -}`, lowest-degree first, e.g. `"+-++"`.
    pub fn parse(s: &str) -> Result<Self, PolyError> {
        let mut signs = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '+' => signs.push(1),
                '-' => signs.push(-1),
                c if c.is_whitespace() => {}
                c => return Err(PolyError::Parse(format!("bad sign character {c:?}"))),
            }
        }
        if signs.is_empty() {
            return Err(PolyError::Parse("empty sign pattern".into()));
        }
        Ok(Self::new(signs))
    }

    /// Decodes the low `n+1` bits of `bits` as a sign pattern
    /// (bit set = `+1`). Handy for exhaustive scans.
    pub fn from_bits(bits: u64, n: usize) -> Self {
        Self::new(
            (0..=n)
                .map(|i| if bits >> i & 1 == 1 { 1 } else { -1 })
                .collect(),
        )
    }

    pub fn degree(&self) -> usize {
        self.signs.len() - 1
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn leading_sign(&self) -> i8 {
        *self.signs.last().unwrap()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_sign() == 1
    }

    pub fn negated(&self) -> Self {
        Self::new(self.signs.iter().map(|&s| -s).collect())
    }

    /// Returns `(monic version, negated?)`; `f` is irreducible iff `-f` is,
    /// so certification always works on the monic representative.
    pub fn monic_normalized(&self) -> (Self, bool) {
        if self.is_monic() {
            (self.clone(), false)
        } else {
            (self.negated(), true)
        }
    }

    /// `f mod p`: coefficient `i` is `signs[i] mod p`. The degree never
    /// drops (the leading coefficient is `±1`).
    pub fn reduce(&self, p: u32) -> PolyMod {
        PolyMod::new(
            p,
            self.signs
                .iter()
                .map(|&s| if s == 1 { 1 } else { p - 1 })
                .collect(),
        )
    }

    /// Evaluation over the integers (safe for moderate degrees).
    pub fn eval_i64(&self, x: i64) -> i64 {
        let mut acc = 0i64;
        for &s in self.signs.iter().rev() {
            acc = acc * x + s as i64;
        }
        acc
    }
}

impl fmt::Display for LittlewoodSample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.signs {
            write!(f, "{}", if s == 1 { '+' } else { '-' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for LittlewoodSample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LittlewoodSample({self})")
    }
}

/// Polynomial over `Z/4Z` with positional coefficients: trailing zeros are
/// retained so that index `i` always means the coefficient of `X^i`.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMod4 {
    coeffs: Vec<u8>,
}

impl PolyMod4 {
    pub fn new(coeffs: Vec<u8>) -> Self {
        assert!(coeffs.iter().all(|&c| c < 4));
        PolyMod4 { coeffs }
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u8 {
        self.coeffs[i]
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl fmt::Debug for PolyMod4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMod4({:?})", self.coeffs)
    }
}

/// Computes `g(X) = f(X+1)` with every coefficient reduced mod 4, by a
/// Horner iteration carried out entirely in `Z/4Z`.
///
/// Coefficients are held in two bit planes so one Horner step (multiply by
/// `X+1`, add the next `±1`) is a word-parallel shift and 2-bit add; no big
/// integers are ever materialized.
pub fn shift_compose_mod4(f: &LittlewoodSample) -> PolyMod4 {
    let n = f.degree();
    let nwords = n / 64 + 1;
    // lo[w] bit b = low bit of coefficient 64w+b, hi[w] bit b = high bit.
    let mut lo = vec![0u64; nwords];
    let mut hi = vec![0u64; nwords];

    let shl1 = |v: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; v.len()];
        let mut carry = 0u64;
        for (o, &w) in out.iter_mut().zip(v.iter()) {
            *o = (w << 1) | carry;
            carry = w >> 63;
        }
        out
    };

    for j in (0..=n).rev() {
        // g <- g * (X + 1): coefficientwise (g shifted) + g in Z/4.
        let slo = shl1(&lo);
        let shi = shl1(&hi);
        for w in 0..nwords {
            let sum_lo = lo[w] ^ slo[w];
            let carry = lo[w] & slo[w];
            let sum_hi = hi[w] ^ shi[w] ^ carry;
            lo[w] = sum_lo;
            hi[w] = sum_hi;
        }
        // g <- g + f_j, f_j = ±1, i.e. 1 or 3 in Z/4, at position 0.
        let (add_lo, add_hi) = if f.signs()[j] == 1 { (1u64, 0u64) } else { (1, 1) };
        let sum_lo = lo[0] ^ add_lo;
        let carry = lo[0] & add_lo;
        hi[0] ^= add_hi ^ carry;
        lo[0] = sum_lo;
    }

    let coeffs = (0..=n)
        .map(|i| {
            let w = i / 64;
            let b = i % 64;
            ((lo[w] >> b & 1) | ((hi[w] >> b & 1) << 1)) as u8
        })
        .collect();
    PolyMod4::new(coeffs)
}
