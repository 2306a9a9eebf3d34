//! Multidegrees `(d_1, ..., d_r)` of complete intersections and the data
//! derived from them: total degree, power sums and composed multidegrees.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A nonempty multiset of hypersurface degrees, each at least 2, stored in
/// non-increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<u64>")]
pub struct Multidegree(Vec<u64>);

impl Multidegree {
    /// Validates and canonicalizes raw degrees. Degree-1 entries are rejected,
    /// not dropped: they would silently change the codimension.
    pub fn new<I: IntoIterator<Item = i64>>(raw: I) -> Result<Self> {
        let mut degrees = Vec::new();
        for d in raw {
            if d < 2 {
                return Err(Error::Validation(format!("degree below 2: {d}")));
            }
            degrees.push(d as u64);
        }
        if degrees.is_empty() {
            return Err(Error::Validation("empty multidegree".into()));
        }
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Multidegree(degrees))
    }

    pub fn degrees(&self) -> &[u64] {
        &self.0
    }

    /// Codimension `r`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_degree(&self) -> u64 {
        self.0[0]
    }

    pub fn min_degree(&self) -> u64 {
        self.0[self.0.len() - 1]
    }

    /// Distinct degrees in ascending order with their multiplicities.
    pub fn distinct(&self) -> Vec<(u64, usize)> {
        let mut out: Vec<(u64, usize)> = Vec::new();
        for &d in self.0.iter().rev() {
            match out.last_mut() {
                Some((v, c)) if *v == d => *c += 1,
                _ => out.push((d, 1)),
            }
        }
        out
    }

    pub fn total_degree(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, &d| acc * d)
    }

    /// `s_i = sum_j d_j^i`.
    pub fn power_sum(&self, i: u32) -> Result<BigInt> {
        if i < 1 {
            return Err(Error::Input("power sum index must be at least 1".into()));
        }
        Ok(self
            .0
            .iter()
            .fold(BigInt::zero(), |acc, &d| acc + BigInt::from(d).pow(i)))
    }

    /// `s_1, ..., s_k`, computed with running powers.
    pub fn power_sums(&self, k: u32) -> Vec<BigInt> {
        let mut sums = vec![BigInt::zero(); k as usize];
        for &d in &self.0 {
            let mut pow = BigInt::one();
            for s in sums.iter_mut() {
                pow *= d;
                *s += &pow;
            }
        }
        sums
    }

    pub fn invariant_tuple(&self, n: u32) -> Result<InvariantTuple> {
        if n < 1 {
            return Err(Error::Input("dimension n must be at least 1".into()));
        }
        Ok(InvariantTuple {
            n,
            d: self.total_degree(),
            s: self.power_sums(n),
        })
    }

    /// `N = n + r`, the dimension of the ambient projective space.
    pub fn ambient_dimension(&self, n: u32) -> u64 {
        n as u64 + self.0.len() as u64
    }
}

impl TryFrom<Vec<i64>> for Multidegree {
    type Error = Error;

    fn try_from(raw: Vec<i64>) -> Result<Self> {
        Multidegree::new(raw)
    }
}

impl From<Multidegree> for Vec<u64> {
    fn from(md: Multidegree) -> Self {
        md.0
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (idx, d) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

/// Dimension, total degree and power sums `s_1..s_n`: the data that fixes the
/// Pontrjagin numbers and Euler characteristic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantTuple {
    pub n: u32,
    #[serde(with = "crate::decimal")]
    pub d: BigInt,
    #[serde(with = "crate::decimal::vec")]
    pub s: Vec<BigInt>,
}

/// Recipe for `d_{lambda,mu}`: `lambda` copies of `a` followed by `mu` copies of `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComposedSpec {
    pub a: Multidegree,
    pub b: Multidegree,
    pub lambda: u32,
    pub mu: u32,
}

impl ComposedSpec {
    pub fn new(a: Multidegree, b: Multidegree, lambda: u32, mu: u32) -> Self {
        ComposedSpec { a, b, lambda, mu }
    }
}

pub fn compose(spec: &ComposedSpec) -> Result<Multidegree> {
    if spec.lambda == 0 && spec.mu == 0 {
        return Err(Error::Validation("composed multidegree needs lambda + mu >= 1".into()));
    }
    let mut degrees =
        Vec::with_capacity(spec.lambda as usize * spec.a.len() + spec.mu as usize * spec.b.len());
    for _ in 0..spec.lambda {
        degrees.extend_from_slice(spec.a.degrees());
    }
    for _ in 0..spec.mu {
        degrees.extend_from_slice(spec.b.degrees());
    }
    degrees.sort_unstable_by(|x, y| y.cmp(x));
    Ok(Multidegree(degrees))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    fn md(v: &[i64]) -> Multidegree {
        Multidegree::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn canonical_order() {
        assert_eq!(md(&[3, 5, 2]).degrees(), &[5, 3, 2]);
        assert_eq!(md(&[2]).degrees(), &[2]);
        assert_eq!(
            Multidegree::new([4, 1]),
            Err(Error::Validation("degree below 2: 1".into()))
        );
        assert!(Multidegree::new(Vec::<i64>::new()).is_err());
        assert!(Multidegree::new([0, 5]).is_err());
    }

    #[test]
    fn totals_and_sums() {
        assert_eq!(md(&[2, 3]).total_degree(), BigInt::from(6));
        assert_eq!(md(&[2]).power_sum(3).unwrap(), BigInt::from(8));
        assert!(md(&[2]).power_sum(0).is_err());
        let ci6 = fixtures::ci6();
        assert_eq!(
            ci6.a.total_degree().to_string(),
            "371008634983489635445991601"
        );
        assert_eq!(ci6.a.power_sum(1).unwrap(), BigInt::from(16800));
        let ci7 = fixtures::ci7();
        assert_eq!(
            ci7.a.total_degree().to_string(),
            "3753247176539885786786848165802803200000"
        );
        assert_eq!(ci7.b.power_sum(2).unwrap(), BigInt::from(3094964));
    }

    #[test]
    fn invariant_tuples() {
        let t = md(&[2, 3]).invariant_tuple(2).unwrap();
        assert_eq!(t.n, 2);
        assert_eq!(t.d, BigInt::from(6));
        assert_eq!(t.s, vec![BigInt::from(5), BigInt::from(13)]);
        assert_eq!(
            serde_json::to_string(&t).unwrap(),
            r#"{"n":2,"d":"6","s":["5","13"]}"#
        );
        let t6 = fixtures::ci6().a.invariant_tuple(6).unwrap();
        let printed: Vec<String> = t6.s.iter().map(|v| v.to_string()).collect();
        assert_eq!(
            printed,
            [
                "16800",
                "35449960",
                "75160663200",
                "160103709636808",
                "342612368928228000",
                "736443048260836419880"
            ]
        );
        let t7 = fixtures::ci7().a.invariant_tuple(7).unwrap();
        assert_eq!(t7.s[6].to_string(), "111680899229310068732");
        assert!(md(&[2]).invariant_tuple(0).is_err());
    }

    #[test]
    fn composition() {
        let a = md(&[3, 2]);
        let b = md(&[4]);
        assert_eq!(compose(&ComposedSpec::new(a.clone(), b.clone(), 1, 0)).unwrap(), a);
        assert_eq!(
            compose(&ComposedSpec::new(a.clone(), b.clone(), 1, 2)).unwrap().degrees(),
            &[4, 4, 3, 2]
        );
        assert!(compose(&ComposedSpec::new(a, b, 0, 0)).is_err());

        let ci6 = fixtures::ci6();
        let c = compose(&ComposedSpec::new(ci6.a.clone(), ci6.b.clone(), 1, 1)).unwrap();
        assert_eq!(c.len(), 16);
        let direct: u64 = c.degrees().iter().sum();
        assert_eq!(direct, 33600);
        assert_eq!(c.power_sum(1).unwrap(), BigInt::from(2 * 16800));
        assert_eq!(c.ambient_dimension(6), 22);
    }

    #[test]
    fn ambient() {
        assert_eq!(md(&[5]).ambient_dimension(3), 4);
        assert_eq!(fixtures::ci6().a.ambient_dimension(6), 14);
    }

    #[test]
    fn fixture_pairs_share_invariants() {
        for fx in [fixtures::ci6(), fixtures::ci7()] {
            assert_eq!(
                fx.a.invariant_tuple(fx.n).unwrap(),
                fx.b.invariant_tuple(fx.n).unwrap()
            );
        }
    }

    #[test]
    fn json_shape() {
        let m: Multidegree = serde_json::from_str("[2, 5, 3]").unwrap();
        assert_eq!(serde_json::to_string(&m).unwrap(), "[5,3,2]");
        assert!(serde_json::from_str::<Multidegree>("[1, 5]").is_err());
        assert!(serde_json::from_str::<Multidegree>("[]").is_err());
    }

    #[test]
    fn newton_rigidity_small() {
        // Equal length and equal s_1..s_r force equal multisets.
        use std::collections::HashMap;
        for r in 1..=6usize {
            let hi = 12;
            let mut seen: HashMap<Vec<BigInt>, Vec<u64>> = HashMap::new();
            let mut tuple = vec![2u64; r];
            loop {
                let m = Multidegree(tuple.iter().rev().copied().collect());
                let key = m.power_sums(r as u32);
                if let Some(prev) = seen.insert(key, m.0.clone()) {
                    panic!("collision {prev:?} vs {:?}", m.0);
                }
                // next non-decreasing tuple
                let mut pos = r;
                while pos > 0 && tuple[pos - 1] == hi {
                    pos -= 1;
                }
                if pos == 0 {
                    break;
                }
                let v = tuple[pos - 1] + 1;
                for t in &mut tuple[pos - 1..] {
                    *t = v;
                }
            }
        }
    }

    proptest! {
        #[test]
        fn additivity_and_multiplicativity(
            a in prop::collection::vec(2i64..30, 1..6),
            b in prop::collection::vec(2i64..30, 1..6),
            lambda in 0u32..4,
            mu in 0u32..4,
        ) {
            prop_assume!(lambda + mu >= 1);
            let a = Multidegree::new(a).unwrap();
            let b = Multidegree::new(b).unwrap();
            let c = compose(&ComposedSpec::new(a.clone(), b.clone(), lambda, mu)).unwrap();
            prop_assert_eq!(c.len(), lambda as usize * a.len() + mu as usize * b.len());
            for i in 1..=5u32 {
                let expect = a.power_sum(i).unwrap() * lambda + b.power_sum(i).unwrap() * mu;
                prop_assert_eq!(c.power_sum(i).unwrap(), expect);
            }
            prop_assert_eq!(
                c.total_degree(),
                a.total_degree().pow(lambda) * b.total_degree().pow(mu)
            );
        }

        #[test]
        fn permutation_invariance(v in prop::collection::vec(2i64..50, 1..10), seed in any::<u64>()) {
            let mut w = v.clone();
            // deterministic shuffle from the seed
            let len = w.len();
            let mut x = seed | 1;
            for i in (1..len).rev() {
                x ^= x << 13; x ^= x >> 7; x ^= x << 17;
                w.swap(i, (x % (i as u64 + 1)) as usize);
            }
            prop_assert_eq!(Multidegree::new(v).unwrap(), Multidegree::new(w).unwrap());
        }

        #[test]
        fn power_sums_agree(v in prop::collection::vec(2i64..100, 1..8)) {
            let m = Multidegree::new(v).unwrap();
            let sums = m.power_sums(6);
            for i in 1..=6u32 {
                prop_assert_eq!(&sums[i as usize - 1], &m.power_sum(i).unwrap());
            }
        }
    }
}
