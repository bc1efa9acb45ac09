//! Certified irreducibility of random polynomials with `+-1` coefficients.
//!
//! The library combines three sources of information about the factor
//! degrees of a degree-`n` polynomial with `+-1` coefficients:
//!
//! * factorization patterns modulo small primes ([`factor`], [`certify`]),
//! * a 2-adic Newton polygon certificate available when `n + 1` is a power
//!   of two ([`padic`]),
//! * exact residue equidistribution and smoothness statistics that quantify
//!   how much the mod-`p` reductions behave like uniform random polynomials
//!   ([`equidist`]).
//!
//! The headline special case: when `n = p^r - 1` for an odd prime `p` such
//! that 2 generates the units mod `p^2`, the mod-2 reduction is a product
//! of irreducible cyclotomic factors with rigid degrees ([`numtheory`]),
//! and certification succeeds for every sampled polynomial.
//!
//! ```
//! use littlewood::poly::LittlewoodSample;
//! use littlewood::certify::{certify, Verdict};
//! use rand_chacha::ChaCha8Rng;
//! use rand_core::SeedableRng;
//!
//! let f = LittlewoodSample::parse("+-++").unwrap(); // 1 - x + x^2 + x^3
//! let mut rng = ChaCha8Rng::seed_from_u64(0);
//! let out = certify(&f, &[], true, &mut rng).unwrap();
//! assert_eq!(out.verdict, Verdict::CertifiedIrreducible);
//! ```

pub mod certify;
pub mod equidist;
pub mod factor;
pub mod harness;
pub mod numtheory;
pub mod padic;
pub mod poly;
pub mod spectral;
