//! Exact integer kernels: binomial coefficients, shifted binomials and
//! p-adic valuations.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Binomial coefficient `C(top, bottom)`, defined as zero when `top < bottom`.
pub fn binom(top: i64, bottom: i64) -> Result<BigInt> {
    if top < 0 || bottom < 0 {
        return Err(Error::Input(format!(
            "binomial arguments must be nonnegative, got ({top}, {bottom})"
        )));
    }
    Ok(BigInt::from(binom_u(top as u64, bottom as u64)))
}

/// Running-product evaluation over `min(bottom, top - bottom)` factors; each
/// intermediate quotient is itself a binomial coefficient, so every division
/// is exact.
pub(crate) fn binom_u(top: u64, bottom: u64) -> BigUint {
    if top < bottom {
        return BigUint::zero();
    }
    let k = bottom.min(top - bottom);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc *= top - k + i;
        acc /= i;
    }
    acc
}

/// `C(big_n + shift, big_n)` for `shift >= 0`, zero for negative shifts.
pub fn binom_shifted(big_n: u64, shift: i64) -> BigInt {
    if shift < 0 {
        return BigInt::zero();
    }
    BigInt::from(binom_u(big_n + shift as u64, big_n))
}

/// Table of `C(N + m, N)` for `m = 0..=max_shift`, filled by the ratio
/// `C(N+m, N) = C(N+m-1, N) * (N+m) / m`.
#[derive(Debug, Clone)]
pub struct ShiftedBinomials {
    big_n: u64,
    values: Vec<BigInt>,
}

impl ShiftedBinomials {
    pub fn new(big_n: u64, max_shift: u64) -> Self {
        let mut values = Vec::with_capacity(max_shift as usize + 1);
        let mut cur = BigUint::one();
        values.push(BigInt::from(cur.clone()));
        for m in 1..=max_shift {
            cur *= big_n + m;
            cur /= m;
            values.push(BigInt::from(cur.clone()));
        }
        ShiftedBinomials { big_n, values }
    }

    pub fn ambient(&self) -> u64 {
        self.big_n
    }

    /// Same value as [`binom_shifted`]; falls back to direct evaluation
    /// beyond the tabulated range.
    pub fn get(&self, shift: i64) -> BigInt {
        if shift < 0 {
            return BigInt::zero();
        }
        match self.values.get(shift as usize) {
            Some(v) => v.clone(),
            None => binom_shifted(self.big_n, shift),
        }
    }

    pub(crate) fn get_ref(&self, shift: u64) -> &BigInt {
        &self.values[shift as usize]
    }
}

/// Largest `v` with `p^v | x`.
pub fn padic_valuation(x: &BigInt, p: u64) -> Result<u32> {
    if !x.is_positive() {
        return Err(Error::Input(format!("valuation needs x >= 1, got {x}")));
    }
    if p < 2 {
        return Err(Error::Input(format!("valuation needs p >= 2, got {p}")));
    }
    let p = BigInt::from(p);
    let mut x = x.clone();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Ok(v);
        }
        x = q;
        v += 1;
    }
}

/// Machine-word variant used on individual degrees.
pub fn padic_valuation_u64(mut x: u64, p: u64) -> Result<u32> {
    if x == 0 || p < 2 {
        return Err(Error::Input(format!("valuation needs x >= 1 and p >= 2, got ({x}, {p})")));
    }
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    Ok(v)
}
