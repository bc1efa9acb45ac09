//! Integer-side structure: multiplicative orders, the scan for primes `p`
//! where 2 generates `(Z/p^2 Z)^x`, prime-power cyclotomic polynomials, and
//! the admissible subproduct degree sets at degrees `n = p^r - 1`.

use thiserror::Error;

use crate::poly::PolyMod;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumTheoryError {
    #[error("arguments must be coprime: gcd({0}, {1}) != 1")]
    NotCoprime(u64, u64),
    #[error("modulus must be >= 2")]
    BadModulus,
    #[error("cyclotomic coefficient modulus {0} must be a prime different from {1}")]
    WrongCharacteristic(u32, u64),
    #[error("expected n = p^r - 1, got n = {0} for p = {1}, r = {2}")]
    NotSpecialDegree(u64, u64, u32),
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd_u64(b, a % b) }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn powmod_u64(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin, valid for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division; adequate for the scanned range.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q * q <= n {
        if n % q == 0 {
            let mut e = 0;
            while n % q == 0 {
                n /= q;
                e += 1;
            }
            out.push((q, e));
        }
        q += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factor_u64(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Least `t >= 1` with `a^t = 1 (mod m)`, by factoring `phi(m)` and
/// descending prime by prime.
pub fn multiplicative_order(a: u64, m: u64) -> Result<u64, NumTheoryError> {
    if m < 2 {
        return Err(NumTheoryError::BadModulus);
    }
    if gcd_u64(a % m, m) != 1 {
        return Err(NumTheoryError::NotCoprime(a, m));
    }
    let mut t = euler_phi(m);
    for (q, _) in factor_u64(t) {
        while t % q == 0 && powmod_u64(a, t / q, m) == 1 {
            t /= q;
        }
    }
    Ok(t)
}

/// Orders of 2 modulo `p` and `p^2` for an odd prime `p`, with the
/// qualification flag `ord(2 mod p^2) = p(p-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinRecord {
    pub p: u64,
    pub ord_mod_p: u64,
    pub ord_mod_p2: u64,
    pub qualifies: bool,
    /// When qualifying, `ord(2 mod p^k) = phi(p^k)` was confirmed for
    /// `k <= 4` (the standard lifting fact).
    pub lifting_verified: bool,
}

/// One record per odd prime `<= p_max`.
pub fn artin_scan(p_max: u64) -> Vec<ArtinRecord> {
    let mut out = Vec::new();
    for p in (3..=p_max).step_by(2) {
        if !is_prime(p) {
            continue;
        }
        let ord_mod_p = multiplicative_order(2, p).unwrap();
        let ord_mod_p2 = multiplicative_order(2, p * p).unwrap();
        let qualifies = ord_mod_p2 == p * (p - 1);
        let lifting_verified = if qualifies {
            (3..=4u32).all(|k| {
                p.checked_pow(k)
                    .is_none_or(|pk| multiplicative_order(2, pk).unwrap() == euler_phi(pk))
            })
        } else {
            false
        };
        out.push(ArtinRecord {
            p,
            ord_mod_p,
            ord_mod_p2,
            qualifies,
            lifting_verified,
        });
    }
    out
}

/// `Phi_{p^k} mod q` computed as `Psi(X^{p^{k-1}})` with
/// `Psi = 1 + X + ... + X^{p-1}`; degree `p^{k-1}(p-1)`.
pub fn cyclotomic_prime_power(p: u64, k: u32, q: u32) -> Result<PolyMod, NumTheoryError> {
    assert!(is_prime(p), "p must be prime");
    assert!(k >= 1);
    if q as u64 == p || !is_prime(q as u64) {
        return Err(NumTheoryError::WrongCharacteristic(q, p));
    }
    let step = (p as usize).pow(k - 1);
    let deg = step * (p as usize - 1);
    let mut coeffs = vec![0u32; deg + 1];
    for i in 0..p as usize {
        coeffs[i * step] = 1;
    }
    Ok(PolyMod::new(q, coeffs))
}

/// Degrees of subproducts of `Phi_p ... Phi_{p^{r-1}}` whose largest factor
/// is `Phi_{p^{j+1}}`, filtered to `k > n^{1/10}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubproductDegreeSet {
    pub j: u32,
    pub degrees: Vec<u64>,
    /// Half-open admissible interval `[p^j, p^{j+1})`.
    pub bounds: (u64, u64),
}

/// Exact integer test for `k > n^{1/10}`, i.e. `k^10 > n`.
fn exceeds_tenth_root(k: u64, n: u64) -> bool {
    match (k as u128).checked_pow(10) {
        Some(k10) => k10 > n as u128,
        None => true,
    }
}

/// The sets `D_j`, `j = 0..r-2`, for `n = p^r - 1`.
pub fn subproduct_degree_sets(
    p: u64,
    r: u32,
    n: u64,
) -> Result<Vec<SubproductDegreeSet>, NumTheoryError> {
    let expected = (p as u128).checked_pow(r).map(|v| v - 1);
    if r < 2 || expected != Some(n as u128) {
        return Err(NumTheoryError::NotSpecialDegree(n, p, r));
    }
    // phi(p^{i+1}) = p^i (p-1)
    let phi = |i: u32| p.pow(i) * (p - 1);
    let mut out = Vec::new();
    for j in 0..=r - 2 {
        let base = phi(j);
        let mut degrees = Vec::new();
        for mask in 0..(1u64 << j) {
            let mut k = base;
            for i in 0..j {
                if mask >> i & 1 == 1 {
                    k += phi(i);
                }
            }
            if exceeds_tenth_root(k, n) {
                degrees.push(k);
            }
        }
        degrees.sort_unstable();
        degrees.dedup();
        out.push(SubproductDegreeSet {
            j,
            degrees,
            bounds: (p.pow(j), p.pow(j + 1)),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::is_irreducible;
    use crate::poly::LittlewoodSample;

    #[test]
    fn order_examples() {
        assert_eq!(multiplicative_order(2, 11).unwrap(), 10);
        assert_eq!(multiplicative_order(2, 9).unwrap(), 6);
        assert_eq!(multiplicative_order(1, 99).unwrap(), 1);
        assert_eq!(
            multiplicative_order(2, 8).unwrap_err(),
            NumTheoryError::NotCoprime(2, 8)
        );
    }

    #[test]
    fn order_matches_naive() {
        for m in 3..200u64 {
            for a in 2..m {
                if gcd_u64(a, m) != 1 {
                    continue;
                }
                let mut x = a % m;
                let mut t = 1;
                while x != 1 {
                    x = x * a % m;
                    t += 1;
                }
                assert_eq!(multiplicative_order(a, m).unwrap(), t, "a={a} m={m}");
            }
        }
    }

    #[test]
    fn artin_examples() {
        let records = artin_scan(11);
        let by_p = |p: u64| records.iter().find(|r| r.p == p).unwrap();
        assert!(!by_p(7).qualifies);
        let r11 = by_p(11);
        assert!(r11.qualifies);
        assert_eq!(r11.ord_mod_p2, 110);
        assert!(r11.lifting_verified);
        let r3 = by_p(3);
        assert_eq!(r3.ord_mod_p2, 6); // = phi(9); theorem excludes p=3 anyway
    }

    #[test]
    fn cyclotomic_examples() {
        let f = cyclotomic_prime_power(11, 1, 2).unwrap();
        assert_eq!(f.coeffs(), &[1u32; 11][..]);

        let f = cyclotomic_prime_power(11, 2, 2).unwrap();
        let mut expected = vec![0u32; 111];
        for i in 0..=10 {
            expected[11 * i] = 1;
        }
        assert_eq!(f.coeffs(), &expected[..]);
        // divrem oracle: (X^121 - 1) / (X^11 - 1)
        let mut num = vec![0u32; 122];
        num[0] = 1;
        num[121] = 1;
        let mut den = vec![0u32; 12];
        den[0] = 1;
        den[11] = 1;
        let (q, r) = PolyMod::new(2, num).divrem(&PolyMod::new(2, den)).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, f);

        let f = cyclotomic_prime_power(2, 2, 3).unwrap();
        assert_eq!(f.coeffs(), &[1, 0, 1]);

        assert!(cyclotomic_prime_power(11, 1, 11).is_err());
    }

    #[test]
    fn cyclotomic_product_identity() {
        // (X-1) * prod_{k=1..r} Phi_{p^k} = X^{p^r} - 1 over F_q
        for (p, r, q) in [(11u64, 2u32, 2u32), (11, 3, 2), (13, 2, 2), (3, 4, 2), (11, 2, 3)] {
            let n = p.pow(r) as usize;
            let mut prod = PolyMod::from_signed(q, &[-1, 1]);
            for k in 1..=r {
                prod = prod.mul(&cyclotomic_prime_power(p, k, q).unwrap());
            }
            let mut rhs = vec![0i64; n + 1];
            rhs[0] = -1;
            rhs[n] = 1;
            assert_eq!(prod, PolyMod::from_signed(q, &rhs), "p={p} r={r} q={q}");
        }
    }

    #[test]
    fn all_ones_equals_cyclotomic_product() {
        for (p, r) in [(11u64, 2u32), (13, 2), (3, 3)] {
            let n = (p.pow(r) - 1) as usize;
            let f = LittlewoodSample::new(vec![1; n + 1]).reduce(2);
            let mut prod = PolyMod::one(2);
            for k in 1..=r {
                prod = prod.mul(&cyclotomic_prime_power(p, k, 2).unwrap());
            }
            assert_eq!(f, prod);
        }
    }

    #[test]
    fn qualifying_primes_give_irreducible_cyclotomics() {
        // capped at p <= 40, k <= 2 plus (11, 3); larger cases take too
        // long for the default test tier
        for rec in artin_scan(40) {
            if !rec.qualifies || rec.p < 7 {
                continue;
            }
            for k in 1..=2u32 {
                let f = cyclotomic_prime_power(rec.p, k, 2).unwrap();
                assert!(is_irreducible(&f).unwrap(), "p={} k={k}", rec.p);
            }
        }
        let f = cyclotomic_prime_power(11, 3, 2).unwrap();
        assert!(is_irreducible(&f).unwrap());
    }

    #[test]
    fn subproduct_examples() {
        let sets = subproduct_degree_sets(11, 3, 1330).unwrap();
        assert_eq!(sets.len(), 2);
        assert_eq!(sets[0].degrees, vec![10]);
        assert_eq!(sets[1].degrees, vec![110, 120]);

        let sets = subproduct_degree_sets(11, 2, 120).unwrap();
        assert_eq!(sets.len(), 1);
        assert_eq!(sets[0].degrees, vec![10]);

        assert!(subproduct_degree_sets(11, 2, 121).is_err());
    }

    #[test]
    fn subproduct_invariants() {
        for (p, r) in [(11u64, 3u32), (13, 3), (3, 6), (19, 2)] {
            let n = p.pow(r) - 1;
            let sets = subproduct_degree_sets(p, r, n).unwrap();
            for s in &sets {
                assert!(s.degrees.len() <= 1 << s.j);
                for &k in &s.degrees {
                    assert!(k >= s.bounds.0 && k < s.bounds.1, "p={p} r={r} k={k}");
                    assert!(exceeds_tenth_root(k, n));
                }
            }
            // max element of D_{r-2} is p^{r-1} - 1
            let last = sets.last().unwrap();
            assert_eq!(*last.degrees.last().unwrap(), p.pow(r - 1) - 1);
        }
    }
}
