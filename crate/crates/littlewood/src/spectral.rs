//! Fourier-analytic constants and the numerical cosine-sum verification.
//!
//! The Fourier transform of the uniform `±1` coefficient measure is
//! `cos(2 pi alpha)`; the verification enumerates all factorizations
//! `Q R = P` with `Q > 1` and every shift `l mod R` (the summand is
//! periodic in `l`), and checks the power-sum bound against
//! `slack * Q^{1-gamma}` with an explicit accumulated-error margin.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpectralError {
    #[error("P must be >= 3")]
    BadP,
    #[error("Q must be >= 2")]
    BadQ,
    #[error("shift l = {0} out of range [0, {1})")]
    BadShift(u64, u64),
    #[error("s must be >= 1")]
    BadExponent,
    #[error("gamma must lie in (0, 1)")]
    BadGamma,
}

/// `mu_hat(alpha) = cos(2 pi alpha)`.
pub fn mu_hat(alpha: f64) -> f64 {
    (2.0 * std::f64::consts::PI * alpha).cos()
}

/// `sum_{k mod Q} |cos(2 pi (k/Q + l/R))|^s`, with the angle reduced as the
/// exact rational `(kR + lQ) mod QR` over `QR` before evaluation.
pub fn fourier_case_sum(q: u64, r: u64, l: u64, s: u32) -> Result<f64, SpectralError> {
    if q < 2 {
        return Err(SpectralError::BadQ);
    }
    if l >= r {
        return Err(SpectralError::BadShift(l, r));
    }
    if s < 1 {
        return Err(SpectralError::BadExponent);
    }
    let qr = q * r;
    let mut sum = 0.0;
    for k in 0..q {
        let num = (k * r + l * q) % qr;
        let c = mu_hat(num as f64 / qr as f64).abs();
        sum += c.powi(s as i32);
    }
    Ok(sum)
}

/// Parameters of the power-sum verification.
#[derive(Clone, Copy, Debug)]
pub struct FourierCheckParams {
    /// Square-free product of odd primes.
    pub p: u64,
    pub s: u32,
    pub gamma: f64,
    pub slack: f64,
}

impl FourierCheckParams {
    pub fn validated(p: u64, s: u32, gamma: f64, slack: f64) -> Result<Self, SpectralError> {
        if p < 3 {
            return Err(SpectralError::BadP);
        }
        if s < 1 {
            return Err(SpectralError::BadExponent);
        }
        if !(gamma > 0.0 && gamma < 1.0) {
            return Err(SpectralError::BadGamma);
        }
        Ok(FourierCheckParams { p, s, gamma, slack })
    }
}

#[derive(Clone, Debug)]
pub struct FourierCheckRow {
    pub q: u64,
    pub r: u64,
    pub l: u64,
    pub sum: f64,
    pub bound: f64,
    /// Accumulated floating-point error allowance, `Q * 2^-40`.
    pub margin: f64,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct FourierCheckReport {
    pub params: FourierCheckParams,
    pub rows: Vec<FourierCheckRow>,
    pub cases: usize,
    pub worst_ratio: f64,
    pub all_pass: bool,
}

fn divisors(p: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= p {
        if p % d == 0 {
            out.push(d);
            if d != p / d {
                out.push(p / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// Enumerates every `(Q, R, l)` with `QR = P`, `Q > 1`, `l in [0, R)`, and
/// checks `fourier_case_sum <= slack * Q^{1-gamma}`. Rows are ordered by
/// `Q` then `l`; a pass is rigorous whenever `margin < bound - sum`.
pub fn verify_section3(params: &FourierCheckParams) -> Result<FourierCheckReport, SpectralError> {
    let mut rows = Vec::new();
    let mut cases = 0usize;
    let mut worst_ratio = 0.0f64;
    let mut all_pass = true;
    for q in divisors(params.p) {
        if q < 2 {
            continue;
        }
        cases += 1;
        let r = params.p / q;
        let bound = params.slack * (q as f64).powf(1.0 - params.gamma);
        for l in 0..r {
            let sum = fourier_case_sum(q, r, l, params.s)?;
            let margin = q as f64 * 2f64.powi(-40);
            let pass = sum <= bound;
            worst_ratio = worst_ratio.max(sum / bound);
            all_pass &= pass;
            rows.push(FourierCheckRow {
                q,
                r,
                l,
                sum,
                bound,
                margin,
                pass,
            });
        }
    }
    Ok(FourierCheckReport {
        params: *params,
        rows,
        cases,
        worst_ratio,
        all_pass,
    })
}

/// `gamma(s) = 1 - log(1 + 2^{1-s}) / log 3` (natural logs).
pub fn gamma_of_s(s: u32) -> f64 {
    assert!(s >= 1);
    1.0 - 2f64.powi(1 - s as i32).ln_1p() / 3f64.ln()
}

/// `theta* = log 2 / (2 log 3) ~ 0.315`.
pub fn theta_star() -> f64 {
    2f64.ln() / (2.0 * 3f64.ln())
}

/// Least `s >= 1` with `gamma(s) > x`; `None` if `x >= 1` (the limit).
pub fn smallest_s_with_gamma_above(x: f64) -> Option<u32> {
    if x >= 1.0 {
        return None;
    }
    (1..).find(|&s| gamma_of_s(s) > x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mu_hat_examples() {
        assert_eq!(mu_hat(0.0), 1.0);
        assert!((mu_hat(0.5) + 1.0).abs() < 1e-15);
        assert!((mu_hat(1.0 / 3.0) + 0.5).abs() < 1e-15);
    }

    #[test]
    fn case_sum_examples() {
        // Q=3: |cos| values {1, 1/2, 1/2}
        let s = fourier_case_sum(3, 385, 0, 735).unwrap();
        assert!((s - 1.0).abs() < 1e-12);

        let s = fourier_case_sum(2, 1, 0, 9).unwrap();
        assert!((s - 2.0).abs() < 1e-12);

        let s = fourier_case_sum(1155, 1, 0, 735).unwrap();
        assert!(s <= 0.9999 * (1155f64).sqrt());

        assert!(fourier_case_sum(1, 5, 0, 2).is_err());
        assert!(fourier_case_sum(3, 5, 5, 2).is_err());
    }

    #[test]
    fn verify_main_instance() {
        let params = FourierCheckParams::validated(1155, 735, 0.5, 0.9999).unwrap();
        let report = verify_section3(&params).unwrap();
        assert!(report.all_pass);
        assert_eq!(report.cases, 15);
        assert!(report.worst_ratio < 1.0);
        for row in &report.rows {
            assert!(row.margin < row.bound - row.sum, "slim margin at {row:?}");
        }
    }

    #[test]
    fn verify_s1_fails() {
        let params = FourierCheckParams::validated(1155, 1, 0.5, 0.9999).unwrap();
        let report = verify_section3(&params).unwrap();
        assert!(!report.all_pass);
        // the Q=3, l=0 row alone gives 2 > 0.9999 * sqrt(3)
        let row = report.rows.iter().find(|r| r.q == 3 && r.l == 0).unwrap();
        assert!(row.sum > row.bound);
    }

    #[test]
    fn verify_q3_large_s_passes() {
        for s in [2u32, 10, 100] {
            let params = FourierCheckParams::validated(3, s, 0.5, 0.9999).unwrap();
            let report = verify_section3(&params).unwrap();
            assert!(report.all_pass, "s={s}");
        }
    }

    #[test]
    fn gamma_examples() {
        assert!((gamma_of_s(2) - 2f64.ln() / 3f64.ln()).abs() < 1e-15);
        assert!((gamma_of_s(2) / 2.0 - theta_star()).abs() < 1e-15);
        assert!((gamma_of_s(1) - (1.0 - 2f64.ln() / 3f64.ln())).abs() < 1e-15);
        assert!(gamma_of_s(1) < 0.5);
        assert!((theta_star() - 0.315).abs() < 5e-4);
        assert_eq!(smallest_s_with_gamma_above(0.5), Some(2));
        assert_eq!(smallest_s_with_gamma_above(1.0), None);
    }

    #[test]
    fn gamma_increasing_with_limit_one() {
        // strictly increasing until f64 saturates near s = 55
        for s in 1..50u32 {
            assert!(gamma_of_s(s + 1) > gamma_of_s(s));
        }
        assert!(gamma_of_s(50) < 1.0);
        assert!(1.0 - gamma_of_s(50) < 1e-14);
    }

    #[test]
    fn shift_symmetry() {
        // rows for l and R-l have equal sums (|cos| is even)
        let params = FourierCheckParams::validated(105, 12, 0.5, 0.9999).unwrap();
        let report = verify_section3(&params).unwrap();
        for row in &report.rows {
            if row.l == 0 {
                continue;
            }
            let mirror = report
                .rows
                .iter()
                .find(|r| r.q == row.q && r.l == row.r - row.l)
                .unwrap();
            assert!((row.sum - mirror.sum).abs() <= 1e-9 * row.sum.abs().max(1.0));
        }
    }

    #[test]
    fn case_sum_lower_bound() {
        // for even s and odd Q the nearest-to-zero angle contributes most
        for q in [3u64, 5, 7, 33] {
            for s in [2u32, 8, 100] {
                let sum = fourier_case_sum(q, 1, 0, s).unwrap();
                let floor = (std::f64::consts::PI / q as f64).cos().powi(s as i32);
                assert!(sum >= floor.min(1.0) - 1e-12);
            }
        }
    }
}
