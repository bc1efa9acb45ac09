//! Bit-packed polynomials over `F_2`: 64 coefficients per word, addition is
//! XOR and multiplication is a carry-less shift-and-XOR comb. This is the
//! fast path behind [`PolyMod`](super::PolyMod) arithmetic at `p = 2`.

use super::PolyMod;

/// Polynomial over `F_2`; bit `i` of `words[i/64]` is the coefficient of
/// `X^i`. No trailing zero words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gf2Poly {
    words: Vec<u64>,
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly { words: vec![] }
    }

    fn trim(mut words: Vec<u64>) -> Self {
        while words.last() == Some(&0) {
            words.pop();
        }
        Gf2Poly { words }
    }

    pub fn from_polymod(f: &PolyMod) -> Self {
        assert_eq!(f.modulus(), 2);
        let coeffs = f.coeffs();
        let mut words = vec![0u64; coeffs.len() / 64 + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            if c & 1 == 1 {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        Self::trim(words)
    }

    pub fn to_polymod(&self) -> PolyMod {
        match self.degree() {
            None => PolyMod::zero(2),
            Some(d) => PolyMod::new(
                2,
                (0..=d)
                    .map(|i| (self.words[i / 64] >> (i % 64) & 1) as u32)
                    .collect(),
            ),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + (63 - last.leading_zeros() as usize))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.words.len().max(other.words.len());
        let mut out = vec![0u64; n];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.words.get(i).copied().unwrap_or(0) ^ other.words.get(i).copied().unwrap_or(0);
        }
        Self::trim(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (a, b) = if self.words.len() < other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = vec![0u64; self.words.len() + other.words.len()];
        for (wi, &w) in a.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                let shift = bit;
                // xor b << (64*wi + shift) into out
                if shift == 0 {
                    for (j, &bw) in b.words.iter().enumerate() {
                        out[wi + j] ^= bw;
                    }
                } else {
                    let mut carry = 0u64;
                    for (j, &bw) in b.words.iter().enumerate() {
                        out[wi + j] ^= (bw << shift) | carry;
                        carry = bw >> (64 - shift);
                    }
                    out[wi + b.words.len()] ^= carry;
                }
            }
        }
        Self::trim(out)
    }

    /// Square by bit interleaving; linear time over `F_2`.
    pub fn square(&self) -> Self {
        let mut out = vec![0u64; self.words.len() * 2];
        for (i, &w) in self.words.iter().enumerate() {
            out[2 * i] = spread(w as u32);
            out[2 * i + 1] = spread((w >> 32) as u32);
        }
        Self::trim(out)
    }

    fn get_bit(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    fn xor_shifted(&mut self, other: &Self, shift: usize) {
        let need = other.words.len() + shift / 64 + 2;
        if self.words.len() < need {
            self.words.resize(need, 0);
        }
        let (wq, bs) = (shift / 64, shift % 64);
        if bs == 0 {
            for (j, &bw) in other.words.iter().enumerate() {
                self.words[wq + j] ^= bw;
            }
        } else {
            let mut carry = 0u64;
            for (j, &bw) in other.words.iter().enumerate() {
                self.words[wq + j] ^= (bw << bs) | carry;
                carry = bw >> (64 - bs);
            }
            self.words[wq + other.words.len()] ^= carry;
        }
    }

    /// Euclidean division; panics if `b` is zero.
    pub fn divrem(&self, b: &Self) -> (Self, Self) {
        let db = b.degree().expect("division by zero polynomial");
        let Some(da) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if da < db {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.clone();
        let mut quot = Gf2Poly {
            words: vec![0u64; (da - db) / 64 + 1],
        };
        for i in (db..=da).rev() {
            if rem.get_bit(i) {
                let s = i - db;
                quot.words[s / 64] |= 1 << (s % 64);
                rem.xor_shifted(b, s);
            }
        }
        // bits db..=da were cleared by the elimination loop
        rem.words.truncate(db / 64 + 1);
        (Self::trim(quot.words), Self::trim(rem.words))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a
    }
}

/// Spreads the 32 bits of `x` into the even bit positions of a `u64`.
fn spread(x: u32) -> u64 {
    let mut v = x as u64;
    v = (v | (v << 16)) & 0x0000_ffff_0000_ffff;
    v = (v | (v << 8)) & 0x00ff_00ff_00ff_00ff;
    v = (v | (v << 4)) & 0x0f0f_0f0f_0f0f_0f0f;
    v = (v | (v << 2)) & 0x3333_3333_3333_3333;
    v = (v | (v << 1)) & 0x5555_5555_5555_5555;
    v
}
