//! Comparison of multidegree pairs on homeomorphism-relevant data, plus a
//! sufficient prime-power divisibility condition on the total degree.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::padic_valuation_u64;
use crate::error::{Error, Result};
use crate::multidegree::Multidegree;

/// How the required exponent at a prime `p` is derived from `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ExponentRule {
    /// `floor((2n+1) / (2(p-1))) + 1`
    #[serde(rename = "floor-rule")]
    Floor,
    /// `ceil((2n+1) / (2(p-1))) + 1`
    #[default]
    #[serde(rename = "ceiling-rule")]
    Ceiling,
}

impl ExponentRule {
    pub fn required_exponent(self, n: u32, p: u64) -> u32 {
        let num = 2 * n as u64 + 1;
        let den = 2 * (p - 1);
        let q = match self {
            ExponentRule::Floor => num / den,
            ExponentRule::Ceiling => num.div_ceil(den),
        };
        q as u32 + 1
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ExponentRule::Floor => "floor-rule",
            ExponentRule::Ceiling => "ceiling-rule",
        }
    }
}

impl fmt::Display for ExponentRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExponentRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "floor" | "floor-rule" => Ok(ExponentRule::Floor),
            "ceiling" | "ceiling-rule" => Ok(ExponentRule::Ceiling),
            other => Err(Error::Input(format!("unknown exponent rule {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimePowerCondition {
    pub p: u64,
    pub required_exponent: u32,
    pub actual_exponent: u32,
    pub satisfied: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EquivalenceLevel {
    DistinctInvariants,
    SameInvariants,
    SameInvariantsPlusDivisibility,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceVerdict {
    pub level: EquivalenceLevel,
    pub rule: ExponentRule,
    pub conditions: Vec<PrimePowerCondition>,
    pub notes: String,
}

fn check_dimension(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::Input(format!("dimension n must be at least 2, got {n}")));
    }
    Ok(())
}

/// Equal total degree and equal `s_1..s_n`.
pub fn same_homeomorphism_data(a: &Multidegree, b: &Multidegree, n: u32) -> Result<bool> {
    check_dimension(n)?;
    Ok(a.total_degree() == b.total_degree() && a.power_sums(n) == b.power_sums(n))
}

/// Primes with `p(p-1) <= 2n+2`.
pub fn small_primes(n: u32) -> Vec<u64> {
    let limit = 2 * n as u64 + 2;
    (2u64..)
        .take_while(|p| p * (p - 1) <= limit)
        .filter(|&p| (2..p).take_while(|q| q * q <= p).all(|q| p % q != 0))
        .collect()
}

pub fn divisibility_condition(
    md: &Multidegree,
    n: u32,
    rule: ExponentRule,
) -> Result<Vec<PrimePowerCondition>> {
    check_dimension(n)?;
    small_primes(n)
        .into_iter()
        .map(|p| {
            let mut actual = 0;
            for &d in md.degrees() {
                actual += padic_valuation_u64(d, p)?;
            }
            let required = rule.required_exponent(n, p);
            Ok(PrimePowerCondition {
                p,
                required_exponent: required,
                actual_exponent: actual,
                satisfied: actual >= required,
            })
        })
        .collect()
}

const NOTE: &str = "sufficient-condition check on invariant data (dimension, total degree, \
power sums, prime valuations of the total degree); not a topological proof";

pub fn classify(
    a: &Multidegree,
    b: &Multidegree,
    n: u32,
    rule: ExponentRule,
) -> Result<EquivalenceVerdict> {
    if !same_homeomorphism_data(a, b, n)? {
        return Ok(EquivalenceVerdict {
            level: EquivalenceLevel::DistinctInvariants,
            rule,
            conditions: Vec::new(),
            notes: format!("total degree or s_1..s_{n} differ; {NOTE}"),
        });
    }
    // Equal total degrees give identical valuations, so `a` speaks for both.
    let conditions = divisibility_condition(a, n, rule)?;
    let failed: Vec<String> = conditions
        .iter()
        .filter(|c| !c.satisfied)
        .map(|c| format!("p={} needs {} has {}", c.p, c.required_exponent, c.actual_exponent))
        .collect();
    if failed.is_empty() {
        Ok(EquivalenceVerdict {
            level: EquivalenceLevel::SameInvariantsPlusDivisibility,
            rule,
            conditions,
            notes: format!("same n, d, s_1..s_{n}; divisibility holds under {rule}; {NOTE}"),
        })
    } else {
        Ok(EquivalenceVerdict {
            level: EquivalenceLevel::SameInvariants,
            rule,
            conditions: Vec::new(),
            notes: format!(
                "same n, d, s_1..s_{n}; divisibility fails under {rule} ({}); {NOTE}",
                failed.join(", ")
            ),
        })
    }
}
