//! Re-derives every reference integer of the built-in fixtures.

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::padic_valuation;
use crate::equivalence::{classify, EquivalenceLevel, ExponentRule};
use crate::fixtures::{self, FixtureSet, CI7_FACTORIZATION};
use crate::moduli::{difference_decomposed, moduli_dimension, monotonic_scan};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub fixture: &'static str,
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

fn check(fixture: &'static str, name: impl Into<String>, expected: String, actual: String) -> Check {
    Check {
        fixture,
        name: name.into(),
        ok: expected == actual,
        expected,
        actual,
    }
}

fn fixture_checks(fx: &FixtureSet) -> Vec<Check> {
    let mut out = Vec::new();
    let want = |key: &str| fx.expected(key).map(BigInt::to_string).unwrap_or_default();
    for (label, md) in [("A", &fx.a), ("B", &fx.b)] {
        out.push(check(fx.name, format!("d({label})"), want("d"), md.total_degree().to_string()));
        for (i, s) in md.power_sums(fx.n).iter().enumerate() {
            let key = format!("s{}", i + 1);
            out.push(check(fx.name, format!("{key}({label})"), want(&key), s.to_string()));
        }
        let m = match moduli_dimension(md, fx.n) {
            Ok(r) => r.m.to_string(),
            Err(e) => e.to_string(),
        };
        out.push(check(fx.name, format!("m({label})"), want(&format!("m({label})")), m));
    }
    for (key, lambda, s) in [
        ("m(d_{1,0})-m(d_{0,1})", 0, 1),
        ("m(d_{2,0})-m(d_{1,1})", 1, 2),
        ("m(d_{1,1})-m(d_{0,2})", 0, 2),
    ] {
        match difference_decomposed(&fx.a, &fx.b, fx.n, lambda, s) {
            Ok(rep) => {
                out.push(check(fx.name, format!("{key} direct"), want(key), rep.direct.to_string()));
                out.push(check(fx.name, format!("{key} M0+M1"), want(key), rep.total.to_string()));
            }
            Err(e) => out.push(check(fx.name, key, want(key), e.to_string())),
        }
    }
    let s = FixtureSet::BOUND_FROM_S;
    let (label, bound) = &fx.difference_bound;
    let verdict = match monotonic_scan(&fx.a, &fx.b, fx.n, s) {
        Ok(scan) => (scan.strictly_increasing && scan.all_differences_exceed(bound)).to_string(),
        Err(e) => e.to_string(),
    };
    out.push(check(fx.name, format!("s={s} differences > {label}"), "true".into(), verdict));
    out
}

fn divisibility_checks() -> Vec<Check> {
    let fx = fixtures::ci7();
    let mut out = Vec::new();
    let d = fx.a.total_degree();
    for &(p, e) in CI7_FACTORIZATION {
        let v = padic_valuation(&d, p).map_or_else(|e| e.to_string(), |v| v.to_string());
        out.push(check("ci7", format!("v_{p}(d)"), e.to_string(), v));
    }
    for rule in [ExponentRule::Floor, ExponentRule::Ceiling] {
        let level = classify(&fx.a, &fx.b, fx.n, rule)
            .map_or_else(|e| e.to_string(), |v| format!("{:?}", v.level));
        out.push(check(
            "ci7",
            format!("classify {rule}"),
            format!("{:?}", EquivalenceLevel::SameInvariantsPlusDivisibility),
            level,
        ));
    }
    out
}

pub fn run_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for fx in fixtures::all() {
        out.extend(fixture_checks(&fx));
    }
    out.extend(divisibility_checks());
    out
}
