//! Seeded sampling and Monte Carlo experiments, with deterministic,
//! schema-versioned reports.
//!
//! Randomness is index-addressable: sample `i` of a stream is a pure
//! function of `(seed, i)`, so parallel runs produce byte-identical reports
//! regardless of thread count. Reports carry exact fractions alongside
//! floating-point rates; regression tests compare the fractions.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certify::{certify, constraint_from_2adic, constraint_from_modular, Verdict};
use crate::equidist::{smoothness_event, SmoothnessParams};
use crate::padic::littlewood_2adic_certificate;
use crate::poly::LittlewoodSample;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Counter-mode sample stream: `sample(i)` is a pure function of
/// `(seed, i)`, identical across runs, platforms, and thread schedules.
#[derive(Clone, Copy, Debug)]
pub struct SampleStream {
    pub seed: u64,
}

impl SampleStream {
    pub fn new(seed: u64) -> Self {
        SampleStream { seed }
    }

    fn keyed_rng(&self, index: u64, lane: u64) -> ChaCha8Rng {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&self.seed.to_le_bytes());
        key[8..16].copy_from_slice(&index.to_le_bytes());
        key[16..24].copy_from_slice(&lane.to_le_bytes());
        ChaCha8Rng::from_seed(key)
    }

    /// `n + 1` independent uniform `±1` signs for sample `index`.
    pub fn sample_littlewood(&self, index: u64, n: usize) -> LittlewoodSample {
        let mut rng = self.keyed_rng(index, 0);
        let mut signs = Vec::with_capacity(n + 1);
        let mut buf = 0u64;
        let mut bits_left = 0u32;
        for _ in 0..=n {
            if bits_left == 0 {
                buf = rng.next_u64();
                bits_left = 64;
            }
            signs.push(if buf & 1 == 1 { 1 } else { -1 });
            buf >>= 1;
            bits_left -= 1;
        }
        LittlewoodSample::new(signs)
    }

    /// Auxiliary rng for per-sample randomized algorithms (a separate lane
    /// so it never aliases the sign draws).
    pub fn aux_rng(&self, index: u64) -> ChaCha8Rng {
        self.keyed_rng(index, 1)
    }
}

fn fraction(k: usize, n: usize) -> String {
    format!("{k}/{n}")
}

/// Per-sample outcome of a certification experiment.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CertifyItem {
    pub index: u64,
    pub negated: bool,
    pub certified: bool,
    pub final_allowed: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct IrreducibilityReport {
    pub schema_version: u32,
    pub command: String,
    pub n: usize,
    pub samples: u64,
    pub primes: Vec<u32>,
    pub use_2adic: bool,
    pub seed: u64,
    pub items: Vec<CertifyItem>,
    pub certified: usize,
    pub certified_fraction: String,
    pub certified_rate: f64,
    /// How often each source strictly shrank the allowed set.
    pub source_shrinks: Vec<(String, usize)>,
}

/// Certifies `samples` random degree-`n` polynomials. The certified rate is
/// a lower bound estimate for the probability of irreducibility.
pub fn estimate_irreducibility(
    n: usize,
    samples: u64,
    primes: &[u32],
    use_2adic: bool,
    seed: u64,
) -> IrreducibilityReport {
    let stream = SampleStream::new(seed);
    let results: Vec<(CertifyItem, Vec<String>)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let f = stream.sample_littlewood(i, n);
            let (_, negated) = f.monic_normalized();
            let mut rng = stream.aux_rng(i);
            let out = certify(&f, primes, use_2adic, &mut rng).expect("certify failed");
            let shrinks = out
                .trace
                .iter()
                .filter(|t| t.allowed_after < t.allowed_before)
                .map(|t| t.source.clone())
                .collect();
            (
                CertifyItem {
                    index: i,
                    negated,
                    certified: out.verdict == Verdict::CertifiedIrreducible,
                    final_allowed: out.final_allowed,
                },
                shrinks,
            )
        })
        .collect();

    let mut source_shrinks: std::collections::BTreeMap<String, usize> = Default::default();
    for (_, shrinks) in &results {
        for s in shrinks {
            *source_shrinks.entry(s.clone()).or_insert(0) += 1;
        }
    }
    let items: Vec<CertifyItem> = results.into_iter().map(|(it, _)| it).collect();
    let certified = items.iter().filter(|i| i.certified).count();
    IrreducibilityReport {
        schema_version: REPORT_SCHEMA_VERSION,
        command: "estimate".into(),
        n,
        samples,
        primes: primes.to_vec(),
        use_2adic,
        seed,
        certified,
        certified_fraction: fraction(certified, samples as usize),
        certified_rate: certified as f64 / samples as f64,
        source_shrinks: source_shrinks.into_iter().collect(),
        items,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct P2Item {
    pub index: u64,
    pub negated: bool,
    pub i_star: Option<usize>,
    pub cert_valid: bool,
    pub certified: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct P2PipelineReport {
    pub schema_version: u32,
    pub command: String,
    pub r: u32,
    pub n: usize,
    pub samples: u64,
    pub primes: Vec<u32>,
    pub seed: u64,
    pub items: Vec<P2Item>,
    pub certified: usize,
    pub certified_fraction: String,
    pub certified_rate: f64,
    /// Count of samples whose mod-4 scan produced no information.
    pub no_info: usize,
    /// `(i_star, count)` over valid certificates; per the bijection with
    /// uniform independent mod-4 digits this is near geometric(1/2).
    pub i_star_histogram: Vec<(usize, usize)>,
}

/// Classification of one sample by the degree-`2^r - 1` pipeline: mod-4
/// scan first, then intersection with mod-`q` constraints.
pub fn p2_classify(
    f: &LittlewoodSample,
    primes: &[u32],
    rng: &mut dyn RngCore,
) -> (Option<usize>, bool, bool) {
    let (f, _) = f.monic_normalized();
    let cert = littlewood_2adic_certificate(&f);
    let n = f.degree();
    let mut allowed = crate::certify::DegreeConstraint::full(n);
    if cert.valid {
        allowed = allowed
            .intersect(&constraint_from_2adic(&cert, n).expect("valid certificate"))
            .expect("same degree");
    }
    for &q in primes {
        if allowed.is_certifying() {
            break;
        }
        let c = constraint_from_modular(&f, q, rng).expect("factorization failed");
        allowed = allowed.intersect(&c).expect("same degree");
    }
    (cert.i_star, cert.valid, allowed.is_certifying())
}

/// Monte Carlo run of the `n = 2^r - 1` certification pipeline.
pub fn estimate_p2_pipeline(r: u32, samples: u64, primes: &[u32], seed: u64) -> P2PipelineReport {
    assert!(r >= 2, "r must be >= 2");
    let n = (1usize << r) - 1;
    let stream = SampleStream::new(seed);
    let items: Vec<P2Item> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let f = stream.sample_littlewood(i, n);
            let (_, negated) = f.monic_normalized();
            let mut rng = stream.aux_rng(i);
            let (i_star, cert_valid, certified) = p2_classify(&f, primes, &mut rng);
            P2Item {
                index: i,
                negated,
                i_star,
                cert_valid,
                certified,
            }
        })
        .collect();
    let certified = items.iter().filter(|i| i.certified).count();
    let no_info = items.iter().filter(|i| !i.cert_valid).count();
    let mut hist: std::collections::BTreeMap<usize, usize> = Default::default();
    for it in &items {
        if let Some(i) = it.i_star {
            *hist.entry(i).or_insert(0) += 1;
        }
    }
    P2PipelineReport {
        schema_version: REPORT_SCHEMA_VERSION,
        command: "estimate-p2".into(),
        r,
        n,
        samples,
        primes: primes.to_vec(),
        seed,
        certified,
        certified_fraction: fraction(certified, samples as usize),
        certified_rate: certified as f64 / samples as f64,
        no_info,
        i_star_histogram: hist.into_iter().collect(),
        items,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SmoothnessItem {
    pub index: u64,
    pub holds: bool,
    pub witness: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SmoothnessReport {
    pub schema_version: u32,
    pub command: String,
    pub n: usize,
    pub k: f64,
    pub theta: f64,
    pub eps: f64,
    pub m_range: (u64, u64),
    pub samples: u64,
    pub seed: u64,
    pub items: Vec<SmoothnessItem>,
    pub holds: usize,
    pub holds_fraction: String,
    pub holds_rate: f64,
    /// `(m, failure count)` over failing samples.
    pub failure_profile: Vec<(u64, usize)>,
}

/// Empirical frequency of the bounded-smoothness event.
pub fn run_smoothness_experiment(
    n: usize,
    params: &SmoothnessParams,
    samples: u64,
    seed: u64,
) -> SmoothnessReport {
    let stream = SampleStream::new(seed);
    let items: Vec<SmoothnessItem> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let f = stream.sample_littlewood(i, n);
            let (holds, witness) = smoothness_event(&f, params).expect("smoothness failed");
            SmoothnessItem {
                index: i,
                holds,
                witness,
            }
        })
        .collect();
    let holds = items.iter().filter(|i| i.holds).count();
    let mut profile: std::collections::BTreeMap<u64, usize> = Default::default();
    for it in &items {
        if let Some(m) = it.witness {
            *profile.entry(m).or_insert(0) += 1;
        }
    }
    SmoothnessReport {
        schema_version: REPORT_SCHEMA_VERSION,
        command: "smoothness".into(),
        n,
        k: params.k,
        theta: params.theta,
        eps: params.eps,
        m_range: params.m_range(n),
        samples,
        seed,
        holds,
        holds_fraction: fraction(holds, samples as usize),
        holds_rate: holds as f64 / samples as f64,
        failure_profile: profile.into_iter().collect(),
        items,
    }
}

/// Canonical JSON serialization used for regression and determinism checks.
pub fn to_canonical_json<T: Serialize>(report: &T) -> String {
    serde_json::to_string_pretty(report).expect("report serialization cannot fail")
}
