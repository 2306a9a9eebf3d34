//! The two multidegree pairs with equal total degree and equal power sums,
//! together with their reference values.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::multidegree::Multidegree;

#[derive(Debug, Clone)]
pub struct FixtureSet {
    pub name: &'static str,
    pub n: u32,
    pub a: Multidegree,
    pub b: Multidegree,
    /// Named expected integers, in publication order.
    pub expected: Vec<(&'static str, BigInt)>,
    /// Lower bound stated for every consecutive scan difference once `s >= 3`.
    pub difference_bound: (&'static str, BigInt),
}

impl FixtureSet {
    pub fn expected(&self, key: &str) -> Option<&BigInt> {
        self.expected.iter().find(|(k, _)| *k == key).map(|(_, v)| v)
    }

    /// Smallest `s` from which `difference_bound` is claimed.
    pub const BOUND_FROM_S: u32 = 3;
}

fn big(s: &str) -> BigInt {
    s.parse().expect("fixture literal")
}

fn md(v: &[i64]) -> Multidegree {
    Multidegree::new(v.iter().copied()).expect("fixture multidegree")
}

/// Six-dimensional pair in `CP^14`.
pub fn ci6() -> FixtureSet {
    FixtureSet {
        name: "ci6",
        n: 6,
        a: md(&[2323, 2241, 2231, 2117, 2079, 1957, 1953, 1899]),
        b: md(&[2321, 2263, 2187, 2163, 2037, 2001, 1919, 1909]),
        expected: vec![
            ("d", big("371008634983489635445991601")),
            ("s1", big("16800")),
            ("s2", big("35449960")),
            ("s3", big("75160663200")),
            ("s4", big("160103709636808")),
            ("s5", big("342612368928228000")),
            ("s6", big("736443048260836419880")),
            ("m(A)", big("4639611966677972182663146217041064938")),
            ("m(B)", big("4639610187986885926979324513081980800")),
            ("m(d_{1,0})-m(d_{0,1})", big("1778691086255683821703959084138")),
            (
                "m(d_{2,0})-m(d_{1,1})",
                big("4499576565311886952937393989311636807018493942453"),
            ),
            (
                "m(d_{1,1})-m(d_{0,2})",
                big("4499576565312040117972354794044912596557706541183"),
            ),
        ],
        difference_bound: ("10^65", BigInt::from(10).pow(65)),
    }
}

/// Seven-dimensional pair in `CP^22`.
pub fn ci7() -> FixtureSet {
    FixtureSet {
        name: "ci7",
        n: 7,
        a: md(&[
            608, 592, 572, 516, 500, 453, 450, 424, 423, 408, 396, 366, 339, 312, 309,
        ]),
        b: md(&[
            604, 600, 564, 528, 488, 456, 452, 429, 416, 412, 387, 375, 333, 318, 306,
        ]),
        expected: vec![
            ("d", big("3753247176539885786786848165802803200000")),
            ("s1", big("6668")),
            ("s2", big("3094964")),
            ("s3", big("1495641932")),
            ("s4", big("749415139508")),
            ("s5", big("387496273524068")),
            ("s6", big("205753667680942844")),
            ("s7", big("111680899229310068732")),
            ("m(A)", big("44406795197386326965368167342722355968367")),
            ("m(B)", big("44384030917398245056066270542147363962375")),
            (
                "m(d_{1,0})-m(d_{0,1})",
                big("22764279988081909301896800574992005992"),
            ),
            (
                "m(d_{2,0})-m(d_{1,1})",
                big("33455700664468562980578980033713637615501603407170478458745"),
            ),
            (
                "m(d_{1,1})-m(d_{0,2})",
                big("33455700663954152769609839164207754699356499185723378335507"),
            ),
        ],
        difference_bound: ("3*10^76", BigInt::from(3) * BigInt::from(10).pow(76)),
    }
}

/// Reference factorization of the seven-dimensional total degree, as `(p, e)`.
pub const CI7_FACTORIZATION: &[(u64, u32)] = &[
    (2, 28),
    (3, 13),
    (5, 5),
    (11, 2),
    (13, 2),
    (17, 1),
    (19, 1),
    (37, 1),
    (43, 1),
    (47, 1),
    (53, 1),
    (61, 1),
    (103, 1),
    (113, 1),
    (151, 1),
];

pub fn all() -> Vec<FixtureSet> {
    vec![ci6(), ci7()]
}

pub fn by_name(name: &str) -> Result<FixtureSet> {
    match name {
        "ci6" => Ok(ci6()),
        "ci7" => Ok(ci7()),
        other => Err(Error::Input(format!("unknown fixture {other:?}; expected ci6 or ci7"))),
    }
}
