//! Moduli-space dimension of a complete intersection,
//!
//! ```text
//! m(d) = 1 - (N+1)^2 + sum_i C(N+d_i, N)
//!        + sum_i sum_{j>=1} (-1)^j sum_{k_1<...<k_j} C(N + d_i - d_{k_1} - ... - d_{k_j}, N)
//! ```
//!
//! with `N = n + r` and `C(m, N) = 0` for `m < N`. The inner sum runs over all
//! subsets of the `r` indices, including those containing `i`.
//!
//! The evaluator never enumerates subsets one at a time. Degrees are grouped
//! by value and a table of signed subset counts indexed by `(size, sum)` is
//! built in ascending order, dropping any partial sum above the largest
//! degree (every degree is positive, so such branches can only grow). Each
//! outer term then reads the table for sums up to its own `d_i`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{binom_shifted, binom_u, ShiftedBinomials};
use crate::error::{Error, Exclusion, Result};
use crate::multidegree::{compose, ComposedSpec, Multidegree};

/// Oracle enumerates `2^r` subsets per outer term; refuse beyond this.
pub const ORACLE_MAX_DEGREES: usize = 20;

/// Rejects inputs for which the formula is not asserted.
pub fn check_formula_domain(md: &Multidegree, n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::Input(format!("dimension n must be at least 2, got {n}")));
    }
    if md.degrees() == [2] {
        return Err(Error::Excluded(Exclusion::QuadricHypersurface));
    }
    if n == 2 && matches!(md.degrees(), [4] | [3, 2] | [2, 2, 2]) {
        return Err(Error::Excluded(Exclusion::K3Surface));
    }
    Ok(())
}

/// Signed contribution of all subsets of one size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Correction {
    pub j: usize,
    #[serde(with = "crate::decimal")]
    pub total: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuliReport {
    #[serde(with = "crate::decimal")]
    pub m: BigInt,
    #[serde(rename = "N")]
    pub ambient: u64,
    /// `sum_i C(N + d_i, N)`.
    #[serde(with = "crate::decimal")]
    pub leading: BigInt,
    pub corrections: Vec<Correction>,
    /// Largest subset size with a nonzero contribution.
    pub max_effective_j: usize,
}

impl ModuliReport {
    /// `1 - (N+1)^2 + leading + sum of corrections`.
    pub fn reassemble(&self) -> BigInt {
        let np1 = BigInt::from(self.ambient + 1);
        let base = BigInt::from(1) - &np1 * &np1 + &self.leading;
        self.corrections.iter().fold(base, |acc, c| acc + &c.total)
    }

    pub fn to_json(&self, breakdown: bool) -> Value {
        let mut v = json!({
            "m": self.m.to_string(),
            "N": self.ambient,
            "max_effective_j": self.max_effective_j,
        });
        if breakdown {
            v["leading"] = Value::String(self.leading.to_string());
            v["corrections"] = serde_json::to_value(&self.corrections).expect("serializable");
        }
        v
    }
}

/// Unsigned subset counts: `counts[j][t]` is the number of size-`j` index
/// subsets whose degrees sum to `t <= bound`.
fn subset_counts(distinct: &[(u64, usize)], bound: u64) -> Vec<BTreeMap<u64, BigUint>> {
    let mut counts: Vec<BTreeMap<u64, BigUint>> = vec![BTreeMap::from([(0, BigUint::from(1u32))])];
    for &(value, mult) in distinct {
        if value > bound {
            break;
        }
        let choose: Vec<BigUint> = (0..=mult as u64).map(|q| binom_u(mult as u64, q)).collect();
        let mut next = counts.clone();
        for (j, level) in counts.iter().enumerate() {
            for (&t, cnt) in level {
                for q in 1..=mult {
                    let sum = t + q as u64 * value;
                    if sum > bound {
                        break;
                    }
                    if next.len() <= j + q {
                        next.resize_with(j + q + 1, BTreeMap::new);
                    }
                    *next[j + q].entry(sum).or_insert_with(BigUint::zero) += cnt * &choose[q];
                }
            }
        }
        counts = next;
    }
    counts
}

/// Evaluates the moduli dimension with a per-size breakdown.
pub fn moduli_dimension(md: &Multidegree, n: u32) -> Result<ModuliReport> {
    check_formula_domain(md, n)?;
    let big_n = md.ambient_dimension(n);
    let max_d = md.max_degree();
    let table = ShiftedBinomials::new(big_n, max_d);
    let distinct = md.distinct();
    let counts = subset_counts(&distinct, max_d);
    let max_j = counts.len() - 1;

    // Outer sum, one task per distinct degree value.
    let parts: Vec<(BigInt, Vec<BigInt>)> = distinct
        .par_iter()
        .map(|&(d_i, mult)| {
            let mut leading = table.get_ref(d_i).clone();
            let mut per_j = vec![BigInt::zero(); max_j + 1];
            for (j, level) in counts.iter().enumerate().skip(1) {
                let mut acc = BigInt::zero();
                for (&t, cnt) in level.range(..=d_i) {
                    acc += table.get_ref(d_i - t) * BigInt::from(cnt.clone());
                }
                if j % 2 == 1 {
                    acc = -acc;
                }
                per_j[j] = acc * mult;
            }
            leading *= mult;
            (leading, per_j)
        })
        .collect();

    let mut leading = BigInt::zero();
    let mut totals = vec![BigInt::zero(); max_j + 1];
    for (lead, per_j) in parts {
        leading += lead;
        for (acc, v) in totals.iter_mut().zip(per_j) {
            *acc += v;
        }
    }
    let corrections: Vec<Correction> = totals
        .into_iter()
        .enumerate()
        .skip(1)
        .map(|(j, total)| Correction { j, total })
        .collect();
    let max_effective_j = corrections
        .iter()
        .rev()
        .find(|c| !c.total.is_zero())
        .map_or(0, |c| c.j);

    let mut report = ModuliReport {
        m: BigInt::zero(),
        ambient: big_n,
        leading,
        corrections,
        max_effective_j,
    };
    report.m = report.reassemble();
    Ok(report)
}

/// Unpruned evaluation over every subset of every size; a test device.
pub fn moduli_dimension_oracle(md: &Multidegree, n: u32) -> Result<BigInt> {
    check_formula_domain(md, n)?;
    let r = md.len();
    if r > ORACLE_MAX_DEGREES {
        return Err(Error::OracleRefused { r, limit: ORACLE_MAX_DEGREES });
    }
    let big_n = md.ambient_dimension(n);
    let degrees = md.degrees();
    let np1 = BigInt::from(big_n + 1);
    let mut m = BigInt::from(1) - &np1 * &np1;
    for &d_i in degrees {
        m += binom_shifted(big_n, d_i as i64);
        for mask in 1u32..(1u32 << r) {
            let sum: i64 = (0..r)
                .filter(|k| mask & (1 << k) != 0)
                .map(|k| degrees[k] as i64)
                .sum();
            let term = binom_shifted(big_n, d_i as i64 - sum);
            if mask.count_ones() % 2 == 1 {
                m -= term;
            } else {
                m += term;
            }
        }
    }
    Ok(m)
}

/// `m(d_{lambda+1, s-lambda-1}) - m(d_{lambda, s-lambda})` split as `M0 + M1`
/// under the assumption that only single-element subsets contribute, next
/// to the same difference taken directly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DifferenceReport {
    pub lambda: u32,
    pub s: u32,
    #[serde(rename = "M0", with = "crate::decimal")]
    pub m0: BigInt,
    #[serde(rename = "M1", with = "crate::decimal")]
    pub m1: BigInt,
    #[serde(with = "crate::decimal")]
    pub total: BigInt,
    /// Difference of two full moduli evaluations.
    #[serde(with = "crate::decimal")]
    pub direct: BigInt,
    /// Both composed evaluations have `max_effective_j <= 1`.
    pub single_subsets_only: bool,
    /// `direct - total`; zero whenever `single_subsets_only` holds.
    #[serde(with = "crate::decimal")]
    pub discrepancy: BigInt,
}

impl DifferenceReport {
    pub fn consistent(&self) -> bool {
        self.discrepancy.is_zero()
    }
}

fn check_pair(a: &Multidegree, b: &Multidegree, n: u32, s: u32) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::Input(format!(
            "multidegrees must have equal length, got {} and {}",
            a.len(),
            b.len()
        )));
    }
    if n < 2 {
        return Err(Error::Input(format!("dimension n must be at least 2, got {n}")));
    }
    if s < 1 {
        return Err(Error::Input("s must be at least 1".into()));
    }
    Ok(())
}

/// `(M0, M1)` from the base multidegrees alone.
fn decompose(a: &Multidegree, b: &Multidegree, n: u32, lambda: u32, s: u32) -> (BigInt, BigInt) {
    let big_n = n as u64 + s as u64 * a.len() as u64;
    let table = ShiftedBinomials::new(big_n, a.max_degree().max(b.max_degree()));
    let leading = |md: &Multidegree| {
        md.degrees()
            .iter()
            .fold(BigInt::zero(), |acc, &d| acc + table.get_ref(d))
    };
    let cross = |x: &Multidegree, y: &Multidegree| {
        let mut acc = BigInt::zero();
        for &di in x.degrees() {
            for &dk in y.degrees() {
                acc += table.get(di as i64 - dk as i64);
            }
        }
        acc
    };
    let (l, s) = (lambda as i64, s as i64);
    let m0 = leading(a) - leading(b);
    let m1 = cross(a, a) * (-2 * l - 1)
        + cross(a, b) * (1 + 2 * l - s)
        + cross(b, a) * (1 + 2 * l - s)
        + cross(b, b) * (2 * s - 2 * l - 1);
    (m0, m1)
}

fn composed(a: &Multidegree, b: &Multidegree, lambda: u32, s: u32) -> Multidegree {
    compose(&ComposedSpec::new(a.clone(), b.clone(), lambda, s - lambda))
        .expect("s >= 1 guarantees a nonempty composition")
}

pub fn difference_decomposed(
    a: &Multidegree,
    b: &Multidegree,
    n: u32,
    lambda: u32,
    s: u32,
) -> Result<DifferenceReport> {
    check_pair(a, b, n, s)?;
    if lambda >= s {
        return Err(Error::Input(format!("lambda must be below s, got lambda={lambda}, s={s}")));
    }
    let upper = moduli_dimension(&composed(a, b, lambda + 1, s), n)?;
    let lower = moduli_dimension(&composed(a, b, lambda, s), n)?;
    let (m0, m1) = decompose(a, b, n, lambda, s);
    let total = &m0 + &m1;
    let direct = &upper.m - &lower.m;
    Ok(DifferenceReport {
        lambda,
        s,
        discrepancy: &direct - &total,
        single_subsets_only: upper.max_effective_j <= 1 && lower.max_effective_j <= 1,
        m0,
        m1,
        total,
        direct,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanEntry {
    pub lambda: u32,
    #[serde(with = "crate::decimal")]
    pub m: BigInt,
    /// `m(d_{lambda, s-lambda}) - m(d_{lambda-1, s-lambda+1})`, absent at `lambda = 0`.
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_decimal")]
    pub difference: Option<BigInt>,
    /// The same difference from the `M0 + M1` split.
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_decimal")]
    pub decomposed: Option<BigInt>,
}

mod opt_decimal {
    use num_bigint::BigInt;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, ser: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => ser.collect_str(v),
            None => ser.serialize_none(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub n: u32,
    pub s: u32,
    pub entries: Vec<ScanEntry>,
    pub strictly_increasing: bool,
    /// Every split agreed with direct subtraction where single subsets suffice,
    /// and no larger subset contributed anywhere in the scan.
    pub decomposition_agrees: bool,
}

impl ScanReport {
    pub fn differences(&self) -> impl Iterator<Item = &BigInt> {
        self.entries.iter().filter_map(|e| e.difference.as_ref())
    }

    pub fn min_difference(&self) -> Option<&BigInt> {
        self.differences().min()
    }

    pub fn all_differences_exceed(&self, bound: &BigInt) -> bool {
        self.differences().all(|d| d > bound)
    }
}

/// `m(d_{lambda, s-lambda})` for `lambda = 0..=s`, with consecutive differences.
pub fn monotonic_scan(a: &Multidegree, b: &Multidegree, n: u32, s: u32) -> Result<ScanReport> {
    check_pair(a, b, n, s)?;
    let reports: Vec<ModuliReport> = (0..=s)
        .into_par_iter()
        .map(|lambda| moduli_dimension(&composed(a, b, lambda, s), n))
        .collect::<Result<_>>()?;
    let single = reports.iter().all(|r| r.max_effective_j <= 1);

    let mut entries = Vec::with_capacity(reports.len());
    let mut agrees = single;
    for (lambda, report) in reports.iter().enumerate() {
        let (difference, decomposed) = if lambda == 0 {
            (None, None)
        } else {
            let diff = &report.m - &reports[lambda - 1].m;
            let (m0, m1) = decompose(a, b, n, lambda as u32 - 1, s);
            let split = m0 + m1;
            agrees &= split == diff;
            (Some(diff), Some(split))
        };
        entries.push(ScanEntry {
            lambda: lambda as u32,
            m: report.m.clone(),
            difference,
            decomposed,
        });
    }
    let strictly_increasing = entries
        .iter()
        .filter_map(|e| e.difference.as_ref())
        .all(|d| d.is_positive());
    Ok(ScanReport {
        n,
        s,
        entries,
        strictly_increasing,
        decomposition_agrees: agrees,
    })
}
