//! Irreducibility certificates for `±1`-coefficient integer polynomials,
//! assembled by intersecting proper-factor degree constraints from modular
//! factorizations and the 2-adic large-factor certificate.
//!
//! A [`DegreeConstraint`] is the set of degrees a factor in any split
//! `f = g h` over `Z` could have. Mod-`q` factor degrees constrain it to
//! subset sums; a valid 2-adic certificate constrains it to
//! `[0, i*] u [n - i*, n]`. When the intersection collapses to `{0, n}`,
//! `f` is certified irreducible. The converse direction is never claimed:
//! the verdict is `CertifiedIrreducible` or `Unknown`, never "reducible".

use rand_core::RngCore;
use thiserror::Error;

use crate::factor::{factor, FactorError};
use crate::padic::{littlewood_2adic_certificate, LargeFactorCertificate};
use crate::poly::LittlewoodSample;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertifyError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("cannot build a constraint from an invalid certificate")]
    InvalidCertificate,
    #[error("no constraint sources given")]
    NoSources,
    #[error(transparent)]
    Factor(#[from] FactorError),
}

/// Admissible proper-factor degrees, as a bitset over `{0..n}`.
///
/// Invariants: `0` and `n` are always allowed (trivial splits), and the set
/// is symmetric under `k -> n - k`.
#[derive(Clone, PartialEq, Eq)]
pub struct DegreeConstraint {
    n: usize,
    bits: Vec<u64>,
}

impl DegreeConstraint {
    /// No information: every degree in `{0..n}` allowed.
    pub fn full(n: usize) -> Self {
        let mut bits = vec![u64::MAX; n / 64 + 1];
        Self::mask_top(&mut bits, n);
        DegreeConstraint { n, bits }
    }

    fn mask_top(bits: &mut [u64], n: usize) {
        let top = n % 64;
        let last = n / 64;
        bits[last] &= if top == 63 { u64::MAX } else { (1u64 << (top + 1)) - 1 };
        for w in bits.iter_mut().skip(last + 1) {
            *w = 0;
        }
    }

    pub fn from_degrees(n: usize, degrees: impl IntoIterator<Item = usize>) -> Self {
        let mut bits = vec![0u64; n / 64 + 1];
        for d in degrees {
            assert!(d <= n);
            bits[d / 64] |= 1 << (d % 64);
        }
        let mut c = DegreeConstraint { n, bits };
        c.assert_invariants();
        c
    }

    fn assert_invariants(&mut self) {
        assert!(self.contains(0) && self.contains(self.n), "trivial splits missing");
        debug_assert!(self.is_symmetric(), "constraint not symmetric");
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, k: usize) -> bool {
        k <= self.n && self.bits[k / 64] >> (k % 64) & 1 == 1
    }

    /// Number of allowed degrees.
    pub fn size(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..=self.n).filter(|&k| self.contains(k)).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..=self.n).all(|k| self.contains(k) == self.contains(self.n - k))
    }

    /// True when only the trivial splits `{0, n}` remain.
    pub fn is_certifying(&self) -> bool {
        self.size() == 2 && self.contains(0) && self.contains(self.n)
    }

    /// Setwise intersection; both arguments must describe the same degree.
    pub fn intersect(&self, other: &Self) -> Result<Self, CertifyError> {
        if self.n != other.n {
            return Err(CertifyError::DegreeMismatch(self.n, other.n));
        }
        let bits = self
            .bits
            .iter()
            .zip(&other.bits)
            .map(|(a, b)| a & b)
            .collect();
        let mut c = DegreeConstraint { n: self.n, bits };
        c.assert_invariants();
        Ok(c)
    }
}

impl std::fmt::Debug for DegreeConstraint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "DegreeConstraint(n={}, {:?})", self.n, self.degrees())
    }
}

/// Subset sums of the mod-`q` irreducible factor degree multiset. Any
/// factor of `f` over `Z` reduces to a subproduct mod `q`, so its degree is
/// such a subset sum.
pub fn constraint_from_modular(
    f: &LittlewoodSample,
    q: u32,
    rng: &mut dyn RngCore,
) -> Result<DegreeConstraint, CertifyError> {
    let n = f.degree();
    let fact = factor(&f.reduce(q), rng)?;
    let mut bits = vec![0u64; n / 64 + 1];
    bits[0] = 1;
    for d in fact.degree_multiset() {
        // bits |= bits << d
        let (wq, bs) = (d / 64, d % 64);
        for i in (wq..bits.len()).rev() {
            let mut w = bits[i - wq] << bs;
            if bs > 0 && i > wq {
                w |= bits[i - wq - 1] >> (64 - bs);
            }
            bits[i] |= w;
        }
    }
    DegreeConstraint::mask_top(&mut bits, n);
    let mut c = DegreeConstraint { n, bits };
    c.assert_invariants();
    Ok(c)
}

/// `[0, i*] u [n - i*, n]` from a valid 2-adic certificate.
pub fn constraint_from_2adic(
    cert: &LargeFactorCertificate,
    n: usize,
) -> Result<DegreeConstraint, CertifyError> {
    if !cert.valid {
        return Err(CertifyError::InvalidCertificate);
    }
    let i_star = cert.i_star.expect("valid certificate carries i_star");
    Ok(DegreeConstraint::from_degrees(
        n,
        (0..=i_star).chain(n - i_star..=n),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    CertifiedIrreducible,
    Unknown,
}

/// One constraint source's contribution to the intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub source: String,
    pub allowed_before: usize,
    pub allowed_after: usize,
}

#[derive(Clone, Debug)]
pub struct CertificateOutcome {
    pub verdict: Verdict,
    pub trace: Vec<TraceEntry>,
    pub final_allowed: usize,
}

/// Left-fold intersection of all requested constraint sources,
/// short-circuiting once only the trivial splits remain. An `Unknown`
/// verdict is not a reducibility claim.
pub fn certify(
    f: &LittlewoodSample,
    primes: &[u32],
    use_2adic: bool,
    rng: &mut dyn RngCore,
) -> Result<CertificateOutcome, CertifyError> {
    if primes.is_empty() && !use_2adic {
        return Err(CertifyError::NoSources);
    }
    let (f, _) = f.monic_normalized();
    let n = f.degree();
    let mut allowed = DegreeConstraint::full(n);
    let mut trace = Vec::new();

    let apply = |allowed: &mut DegreeConstraint,
                     trace: &mut Vec<TraceEntry>,
                     source: String,
                     c: Option<DegreeConstraint>|
     -> Result<(), CertifyError> {
        let before = allowed.size();
        if let Some(c) = c {
            *allowed = allowed.intersect(&c)?;
        }
        trace.push(TraceEntry {
            source,
            allowed_before: before,
            allowed_after: allowed.size(),
        });
        Ok(())
    };

    if use_2adic {
        let cert = littlewood_2adic_certificate(&f);
        let c = if cert.valid {
            Some(constraint_from_2adic(&cert, n)?)
        } else {
            None
        };
        apply(&mut allowed, &mut trace, "2adic".into(), c)?;
    }
    if !allowed.is_certifying() {
        for &q in primes {
            let c = constraint_from_modular(&f, q, rng)?;
            apply(&mut allowed, &mut trace, format!("mod-{q}"), Some(c))?;
            if allowed.is_certifying() {
                break;
            }
        }
    }

    Ok(CertificateOutcome {
        verdict: if allowed.is_certifying() {
            Verdict::CertifiedIrreducible
        } else {
            Verdict::Unknown
        },
        final_allowed: allowed.size(),
        trace,
    })
}
