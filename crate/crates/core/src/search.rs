//! Search for distinct multidegrees with equal product and equal power sums
//! `s_1..s_k`.
//!
//! Non-increasing `r`-tuples over `[lo, hi]` are enumerated in shards keyed by
//! the leading degree. Each tuple gets a 64-bit fingerprint of its key reduced
//! mod `2^64` (product and power sums are ring maps, so equal keys always
//! share a fingerprint). Fingerprint runs are then split by the exact key and
//! cross-pairs emitted.

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::binom_u;
use crate::error::{Error, Result};
use crate::multidegree::Multidegree;

pub const DEFAULT_BUDGET: u64 = 5_000_000;

/// Exact grouping key: product and `s_1..s_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SearchKey {
    pub product: BigInt,
    pub sums: Vec<BigInt>,
}

impl SearchKey {
    pub fn of(md: &Multidegree, k: u32) -> Self {
        SearchKey {
            product: md.total_degree(),
            sums: md.power_sums(k),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairReport {
    pub a: Multidegree,
    pub b: Multidegree,
    pub k: u32,
    pub verified: bool,
}

pub fn verify_pair(a: &Multidegree, b: &Multidegree, k: u32) -> Result<PairReport> {
    if k < 1 {
        return Err(Error::Input("power-sum depth k must be at least 1".into()));
    }
    let verified = a != b && SearchKey::of(a, k) == SearchKey::of(b, k);
    Ok(PairReport {
        a: a.clone(),
        b: b.clone(),
        k,
        verified,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchParams {
    /// Tuple length.
    pub r: usize,
    /// Power-sum depth.
    pub k: u32,
    pub lo: u64,
    pub hi: u64,
    pub budget: u64,
}

/// Number of non-increasing `r`-tuples over `[lo, hi]`.
pub fn enumeration_size(r: usize, lo: u64, hi: u64) -> BigUint {
    let width = hi - lo + 1;
    binom_u(width + r as u64 - 1, r as u64)
}

fn validate(p: &SearchParams) -> Result<()> {
    if p.k < 1 {
        return Err(Error::Input("power-sum depth k must be at least 1".into()));
    }
    if p.lo < 2 || p.lo > p.hi {
        return Err(Error::Input(format!(
            "degree range must satisfy 2 <= lo <= hi, got [{}, {}]",
            p.lo, p.hi
        )));
    }
    if p.r < p.k as usize + 2 {
        return Err(Error::Input(format!(
            "r={} < k+2={}: by Newton's identities the product and s_1..s_{} determine \
             an r-multiset with r <= k+1, so no distinct pair exists",
            p.r,
            p.k + 2,
            p.k
        )));
    }
    let size = enumeration_size(p.r, p.lo, p.hi);
    if size > BigUint::from(p.budget) {
        return Err(Error::Budget {
            size,
            budget: p.budget,
        });
    }
    Ok(())
}

fn fingerprint(tuple: &[u32], k: u32) -> u64 {
    let mut product = 1u64;
    let mut sums = [0u64; 64];
    let depth = k as usize;
    for &d in tuple {
        let d = d as u64;
        product = product.wrapping_mul(d);
        let mut pow = 1u64;
        for s in sums.iter_mut().take(depth.min(64)) {
            pow = pow.wrapping_mul(d);
            *s = s.wrapping_add(pow);
        }
    }
    let mut h = DefaultHasher::new();
    product.hash(&mut h);
    sums[..depth.min(64)].hash(&mut h);
    h.finish()
}

/// All non-increasing tuples starting with `lead`, as `(fingerprint, tuple)`.
fn shard(lead: u32, r: usize, lo: u32, k: u32) -> Vec<(u64, Vec<u32>)> {
    let mut out = Vec::new();
    let mut tuple = vec![lead; r];
    loop {
        out.push((fingerprint(&tuple, k), tuple.clone()));
        // Step to the next non-increasing tuple in descending lexicographic order.
        let mut pos = r;
        while pos > 1 && tuple[pos - 1] == lo {
            pos -= 1;
        }
        if pos == 1 {
            break;
        }
        let v = tuple[pos - 1] - 1;
        tuple[pos - 1] = v;
        for t in tuple.iter_mut().skip(pos) {
            *t = v;
        }
    }
    out
}

fn to_multidegree(tuple: &[u32]) -> Multidegree {
    Multidegree::new(tuple.iter().map(|&d| d as i64)).expect("search degrees are >= 2")
}

pub fn find_pairs(params: &SearchParams) -> Result<Vec<PairReport>> {
    validate(params)?;
    let SearchParams { r, k, lo, hi, .. } = *params;
    let (lo, hi) = (
        u32::try_from(lo).map_err(|_| Error::Input("lo too large".into()))?,
        u32::try_from(hi).map_err(|_| Error::Input("hi too large".into()))?,
    );

    let mut all: Vec<(u64, Vec<u32>)> = (lo..=hi)
        .into_par_iter()
        .flat_map_iter(|lead| shard(lead, r, lo, k))
        .collect();
    all.par_sort_unstable();

    let mut pairs = Vec::new();
    for run in all.chunk_by(|x, y| x.0 == y.0) {
        if run.len() < 2 {
            continue;
        }
        let mut groups: BTreeMap<SearchKey, Vec<Multidegree>> = BTreeMap::new();
        for (_, tuple) in run {
            let md = to_multidegree(tuple);
            groups.entry(SearchKey::of(&md, k)).or_default().push(md);
        }
        for members in groups.values().filter(|g| g.len() >= 2) {
            for (i, x) in members.iter().enumerate() {
                for y in &members[i + 1..] {
                    let (a, b) = if x < y { (x, y) } else { (y, x) };
                    let report = verify_pair(a, b, k)?;
                    debug_assert!(report.verified);
                    pairs.push(report);
                }
            }
        }
    }
    pairs.sort_by(|p, q| (&p.a, &p.b).cmp(&(&q.a, &q.b)));
    Ok(pairs)
}
