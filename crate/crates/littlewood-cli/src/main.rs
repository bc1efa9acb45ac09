use std::fs;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use serde_json::{json, Value};

use littlewood::certify::{certify, Verdict};
use littlewood::equidist::{delta_exact, SmoothnessParams, DEFAULT_DELTA_BUDGET};
use littlewood::factor::factor;
use littlewood::harness::{
    estimate_irreducibility, estimate_p2_pipeline, run_smoothness_experiment,
};
use littlewood::numtheory::{artin_scan, cyclotomic_prime_power};
use littlewood::padic::{
    compose_shift_exact, littlewood_2adic_certificate, valuations_2adic, NewtonPolygon, Val,
};
use littlewood::poly::{LittlewoodSample, PolyMod};
use littlewood::spectral::{verify_section3, FourierCheckParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Parser)]
#[command(name = "littlewood", version, about = "Irreducibility certificates and statistics for random +-1 polynomials")]
struct Cli {
    /// Seed for every randomized step (sampling and factorization splits).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 0 means one per available core.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Orders of 2 mod p and p^2 for odd primes up to a bound.
    ScanPrimes {
        #[arg(long)]
        max: u64,
    },
    /// Factor a polynomial over F_p.
    Factor {
        #[arg(long = "mod")]
        modulus: u32,
        /// Coefficients, lowest degree first, e.g. "1,2,1".
        #[arg(long)]
        poly: String,
    },
    /// Coefficients of the cyclotomic polynomial Phi_{p^k} over F_q.
    Cyclotomic {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
        #[arg(long = "mod")]
        modulus: u32,
    },
    /// 2-adic Newton polygon of f(X+1) and the mod-4 large-factor scan.
    Newton {
        /// Sign pattern, lowest degree first, e.g. "+-++".
        #[arg(long)]
        signs: String,
    },
    /// Degree-constraint irreducibility certificate for a sign pattern.
    Certify {
        #[arg(long)]
        signs: String,
        /// Comma-separated primes for the modular constraints.
        #[arg(long, default_value = "")]
        primes: String,
        /// Include the mod-4 scan when n + 1 is a power of two.
        #[arg(long)]
        two_adic: bool,
    },
    /// Monte Carlo certified-irreducibility rate at degree n.
    Estimate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        samples: u64,
        #[arg(long, default_value = "2")]
        primes: String,
        #[arg(long)]
        two_adic: bool,
    },
    /// Monte Carlo run of the degree 2^r - 1 pipeline.
    EstimateP2 {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        samples: u64,
        #[arg(long, default_value = "3")]
        primes: String,
    },
    /// Exact equidistribution defect Delta_p(n; m).
    Delta {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Cost guard; also settable via LITTLEWOOD_DELTA_BUDGET.
        #[arg(long)]
        budget: Option<u128>,
    },
    /// Empirical frequency of the bounded-smoothness event mod 3.
    Smoothness {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: f64,
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        samples: u64,
    },
    /// Verify the exponential-sum inequality over all divisor cases.
    FourierCheck {
        #[arg(long = "P")]
        p: u64,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        gamma: f64,
        #[arg(long, default_value_t = 0.9999)]
        slack: f64,
    },
}

fn parse_primes(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let p: u32 = t.trim().parse().context("bad prime list")?;
            if !littlewood::numtheory::is_prime(p as u64) {
                return Err(anyhow!("{p} is not prime"));
            }
            Ok(p)
        })
        .collect()
}

fn poly_json(f: &PolyMod) -> Value {
    json!(f.to_string())
}

fn val_json(v: Val) -> Value {
    match v {
        Val::Finite(k) => json!(k),
        Val::Infinite => Value::Null,
    }
}

/// One pass/fail exit decision plus the rendered output.
struct Rendered {
    text: String,
    negative_verdict: bool,
}

fn run(cli: &Cli) -> Result<Rendered> {
    let csv = cli.format == Format::Csv;
    match &cli.command {
        Command::ScanPrimes { max } => {
            let records = artin_scan(*max);
            if csv {
                let mut text = String::from("p,ord_p,ord_p2,qualifies\n");
                for r in &records {
                    text += &format!("{},{},{},{}\n", r.p, r.ord_mod_p, r.ord_mod_p2, r.qualifies);
                }
                Ok(Rendered { text, negative_verdict: false })
            } else {
                let rows: Vec<Value> = records
                    .iter()
                    .map(|r| {
                        json!({
                            "p": r.p,
                            "ord_p": r.ord_mod_p,
                            "ord_p2": r.ord_mod_p2,
                            "qualifies": r.qualifies,
                            "lifting_verified": r.lifting_verified,
                        })
                    })
                    .collect();
                render_json(&json!({ "max": max, "records": rows }))
            }
        }
        Command::Factor { modulus, poly } => {
            let f = PolyMod::parse(poly, *modulus)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let fact = factor(&f, &mut rng)?;
            let factors: Vec<Value> = fact
                .factors
                .iter()
                .map(|(g, m)| {
                    json!({
                        "coeffs": poly_json(g),
                        "degree": g.degree().finite().unwrap(),
                        "multiplicity": m,
                    })
                })
                .collect();
            render_json(&json!({
                "mod": modulus,
                "unit": fact.unit,
                "factors": factors,
            }))
        }
        Command::Cyclotomic { p, k, modulus } => {
            let phi = cyclotomic_prime_power(*p, *k, *modulus)?;
            render_json(&json!({
                "p": p,
                "k": k,
                "mod": modulus,
                "degree": phi.degree().finite().unwrap(),
                "coeffs": poly_json(&phi),
            }))
        }
        Command::Newton { signs } => {
            let f = LittlewoodSample::parse(signs)?;
            let cert = littlewood_2adic_certificate(&f);
            let (g, _) = f.monic_normalized();
            let coeffs = compose_shift_exact(&g);
            let polygon = NewtonPolygon::from_valuations(&valuations_2adic(&coeffs))?;
            let segments: Vec<Value> = polygon
                .segments
                .iter()
                .map(|s| {
                    json!({
                        "width": s.width,
                        "height": s.height,
                        "slope": format!("{}/{}", s.slope.numer(), s.slope.denom()),
                    })
                })
                .collect();
            render_json(&json!({
                "n": cert.n,
                "i_star": cert.i_star,
                "lower_bound": cert.lower_bound,
                "valid": cert.valid,
                "valuations": valuations_2adic(&coeffs).iter().map(|&v| val_json(v)).collect::<Vec<_>>(),
                "segments": segments,
            }))
        }
        Command::Certify { signs, primes, two_adic } => {
            let f = LittlewoodSample::parse(signs)?;
            let primes = parse_primes(primes)?;
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let out = certify(&f, &primes, *two_adic, &mut rng)?;
            let trace: Vec<Value> = out
                .trace
                .iter()
                .map(|t| {
                    json!({
                        "source": t.source,
                        "allowed_before": t.allowed_before,
                        "allowed_after": t.allowed_after,
                    })
                })
                .collect();
            let certified = out.verdict == Verdict::CertifiedIrreducible;
            let mut rendered = render_json(&json!({
                "signs": signs,
                "verdict": if certified { "certified_irreducible" } else { "unknown" },
                "final_allowed": out.final_allowed,
                "trace": trace,
            }))?;
            rendered.negative_verdict = !certified;
            Ok(rendered)
        }
        Command::Estimate { n, samples, primes, two_adic } => {
            let primes = parse_primes(primes)?;
            if *samples == 0 {
                return Err(anyhow!("samples must be >= 1"));
            }
            let report = estimate_irreducibility(*n, *samples, &primes, *two_adic, cli.seed);
            if csv {
                let mut text = String::from("index,negated,certified,final_allowed\n");
                for it in &report.items {
                    text += &format!("{},{},{},{}\n", it.index, it.negated, it.certified, it.final_allowed);
                }
                Ok(Rendered { text, negative_verdict: false })
            } else {
                render_json(&serde_json::to_value(&report)?)
            }
        }
        Command::EstimateP2 { r, samples, primes } => {
            let primes = parse_primes(primes)?;
            if *r < 2 || *samples == 0 {
                return Err(anyhow!("need r >= 2 and samples >= 1"));
            }
            let report = estimate_p2_pipeline(*r, *samples, &primes, cli.seed);
            if csv {
                let mut text = String::from("index,negated,i_star,cert_valid,certified\n");
                for it in &report.items {
                    let i_star = it.i_star.map(|v| v.to_string()).unwrap_or_default();
                    text += &format!("{},{},{},{},{}\n", it.index, it.negated, i_star, it.cert_valid, it.certified);
                }
                Ok(Rendered { text, negative_verdict: false })
            } else {
                render_json(&serde_json::to_value(&report)?)
            }
        }
        Command::Delta { p, n, m, budget } => {
            let budget = budget
                .or_else(|| {
                    std::env::var("LITTLEWOOD_DELTA_BUDGET")
                        .ok()
                        .and_then(|v| v.parse().ok())
                })
                .unwrap_or(DEFAULT_DELTA_BUDGET);
            let report = delta_exact(*p, *n, *m, budget)?;
            let per_d: Vec<Value> = report
                .per_d
                .iter()
                .map(|(d, dev)| json!({ "d": d.to_string(), "max_deviation": dev.to_string() }))
                .collect();
            render_json(&json!({
                "p": report.p,
                "n": report.n,
                "m": report.m,
                "total": report.total.to_string(),
                "total_f64": rational_to_f64(&report.total),
                "per_d": per_d,
            }))
        }
        Command::Smoothness { n, k, theta, eps, samples } => {
            let params = SmoothnessParams::validated(*k, *theta, *eps)?;
            let report = run_smoothness_experiment(*n, &params, *samples, cli.seed);
            if csv {
                let mut text = String::from("index,holds,witness\n");
                for it in &report.items {
                    let w = it.witness.map(|v| v.to_string()).unwrap_or_default();
                    text += &format!("{},{},{}\n", it.index, it.holds, w);
                }
                Ok(Rendered { text, negative_verdict: false })
            } else {
                render_json(&serde_json::to_value(&report)?)
            }
        }
        Command::FourierCheck { p, s, gamma, slack } => {
            let params = FourierCheckParams::validated(*p, *s, *gamma, *slack)?;
            let report = verify_section3(&params)?;
            let rendered = if csv {
                let mut text = String::from("Q,R,l,sum,bound,margin,pass\n");
                for r in &report.rows {
                    text += &format!(
                        "{},{},{},{:.12e},{:.12e},{:.3e},{}\n",
                        r.q, r.r, r.l, r.sum, r.bound, r.margin, r.pass
                    );
                }
                Rendered { text, negative_verdict: !report.all_pass }
            } else {
                let mut r = render_json(&json!({
                    "P": p,
                    "s": s,
                    "gamma": gamma,
                    "slack": slack,
                    "cases": report.cases,
                    "rows": report.rows.len(),
                    "worst_ratio": report.worst_ratio,
                    "all_pass": report.all_pass,
                }))?;
                r.negative_verdict = !report.all_pass;
                r
            };
            Ok(rendered)
        }
    }
}

fn rational_to_f64(r: &num::BigRational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn render_json(v: &Value) -> Result<Rendered> {
    Ok(Rendered {
        text: serde_json::to_string_pretty(v)? + "\n",
        negative_verdict: false,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(rendered) => {
            let write_result = match &cli.out {
                Some(path) => fs::write(path, &rendered.text).map_err(|e| anyhow!(e)),
                None => {
                    print!("{}", rendered.text);
                    Ok(())
                }
            };
            if let Err(e) = write_result {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if rendered.negative_verdict {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
