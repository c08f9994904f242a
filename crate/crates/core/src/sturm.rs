//! Exact decision of `a(p) >= b(p)` on `[0, 1]`.
//!
//! The difference `d = a - b` is first tested with degree-elevated Bernstein
//! coefficients (all nonnegative is sufficient). Otherwise the factors `x^k`
//! and `(1-x)^j` are divided out, the remaining real roots in `(0, 1)` are
//! isolated by bisection with Sturm sign-variation counts, and `d` is
//! evaluated at one rational point in every sign-constant piece.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::{format_rational, parse_rational, ExactPolynomial};

const ELEVATION: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dominance {
    Dominates,
    /// `a(p) < b(p)` at the witness.
    Crossing(BigRational),
}

impl Dominance {
    pub fn dominates(&self) -> bool {
        matches!(self, Dominance::Dominates)
    }

    pub fn witness(&self) -> Option<&BigRational> {
        match self {
            Dominance::Dominates => None,
            Dominance::Crossing(p) => Some(p),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct VerdictDoc {
    verdict: String,
    witness: Option<String>,
}

impl Serialize for Dominance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let doc = match self {
            Dominance::Dominates => VerdictDoc {
                verdict: "dominates".into(),
                witness: None,
            },
            Dominance::Crossing(p) => VerdictDoc {
                verdict: "crossing".into(),
                witness: Some(format_rational(p)),
            },
        };
        doc.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Dominance {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = VerdictDoc::deserialize(d)?;
        match (doc.verdict.as_str(), doc.witness) {
            ("dominates", None) => Ok(Dominance::Dominates),
            ("crossing", Some(w)) => Ok(Dominance::Crossing(
                parse_rational(&w).map_err(D::Error::custom)?,
            )),
            _ => Err(D::Error::custom("malformed dominance verdict")),
        }
    }
}

/// Sturm chain `p, p', -rem(p, p'), ...`, each member rescaled by a positive
/// constant.
pub struct SturmSequence {
    chain: Vec<ExactPolynomial>,
}

impl SturmSequence {
    pub fn new(p: &ExactPolynomial) -> Self {
        let normalize = |q: ExactPolynomial| match q.leading() {
            Some(l) => {
                let l = l.abs();
                q.scale(&l.recip())
            }
            None => q,
        };
        let mut chain = vec![normalize(p.clone())];
        let mut next = normalize(p.derivative());
        while !next.is_zero() {
            let rem = chain.last().unwrap().div_rem(&next).1;
            chain.push(next);
            next = normalize(-&rem);
        }
        Self { chain }
    }

    pub fn sign_variations(&self, x: &BigRational) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for q in &self.chain {
            let v = q.evaluate(x);
            let sign = if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                continue;
            };
            if last != 0 && sign != last {
                count += 1;
            }
            last = sign;
        }
        count
    }

    /// Distinct roots in `(lo, hi]`.
    pub fn count_roots(&self, lo: &BigRational, hi: &BigRational) -> usize {
        self.sign_variations(lo) - self.sign_variations(hi)
    }
}

fn half() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(2))
}

pub fn dominates_on_unit_interval(a: &ExactPolynomial, b: &ExactPolynomial) -> Dominance {
    let d = a - b;
    if d.is_zero() {
        return Dominance::Dominates;
    }
    let deg = d.degree().unwrap();
    let bern = d
        .bernstein_coefficients(deg + ELEVATION)
        .expect("elevated degree exceeds the degree");
    if bern.iter().all(|c| !c.is_negative()) {
        return Dominance::Dominates;
    }
    decide(&d)
}

/// The full decision without the Bernstein shortcut.
pub fn decide(d: &ExactPolynomial) -> Dominance {
    let zero = BigRational::zero();
    let one = BigRational::one();
    if d.is_zero() {
        return Dominance::Dominates;
    }
    for end in [&zero, &one] {
        if d.evaluate(end).is_negative() {
            return Dominance::Crossing(end.clone());
        }
    }
    // Strip the roots at 0 and 1; the stripped factors are positive inside.
    let mut q = d.clone();
    while q.coeff(0).is_zero() {
        q = q.div_rem(&ExactPolynomial::x()).0;
    }
    while q.evaluate(&one).is_zero() {
        q = q.div_rem(&ExactPolynomial::one_minus_x()).0;
    }
    let sqf = q.square_free_part();
    let sturm = SturmSequence::new(&sqf);

    let mut stack = vec![(zero, one)];
    while let Some((lo, hi)) = stack.pop() {
        let roots = sturm.count_roots(&lo, &hi);
        let touches_end = lo.is_zero() || hi.is_one();
        if roots == 0 {
            let mid = (&lo + &hi) * half();
            if d.evaluate(&mid).is_negative() {
                return Dominance::Crossing(mid);
            }
            continue;
        }
        if roots == 1 && !touches_end {
            // endpoints already sampled; one sign change at most between them
            continue;
        }
        let mid = split_point(&sqf, &lo, &hi);
        if d.evaluate(&mid).is_negative() {
            return Dominance::Crossing(mid);
        }
        // pushed right first so the left piece is examined first
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    Dominance::Dominates
}

/// A point strictly inside `(lo, hi)` that is not a root of `p`, preferring
/// the midpoint.
fn split_point(p: &ExactPolynomial, lo: &BigRational, hi: &BigRational) -> BigRational {
    let width = hi - lo;
    (2i64..)
        .flat_map(|k| (1..k).map(move |j| BigRational::new(j.into(), k.into())))
        .map(|f| lo + &width * f)
        .find(|x| !p.evaluate(x).is_zero())
        .expect("a nonzero polynomial has finitely many roots")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(c: &[i64]) -> ExactPolynomial {
        ExactPolynomial::from_integers(c)
    }

    fn assert_witness(a: &ExactPolynomial, b: &ExactPolynomial) -> BigRational {
        match dominates_on_unit_interval(a, b) {
            Dominance::Crossing(w) => {
                assert!(a.evaluate(&w) < b.evaluate(&w));
                assert!(w >= q(0, 1) && w <= q(1, 1));
                w
            }
            Dominance::Dominates => panic!("expected a crossing"),
        }
    }

    #[test]
    fn identical_dominates() {
        let a = ints(&[0, 2, -4, 2]);
        assert_eq!(dominates_on_unit_interval(&a, &a), Dominance::Dominates);
    }

    #[test]
    fn c4_versus_k3() {
        let c4 = &ints(&[0, 0, 4]) * &ExactPolynomial::one_minus_x().pow(2);
        let k3 = ints(&[0, 2, -4, 2]);
        let w = assert_witness(&c4, &k3);
        assert!(w > q(0, 1) && w < q(1, 2));
        assert_eq!(c4.evaluate(&q(1, 4)), q(9, 64));
        assert_eq!(k3.evaluate(&q(1, 4)), q(9, 32));
    }

    #[test]
    fn touching_without_crossing() {
        // (x - 1/3)^2 >= 0, a double interior root
        let a = &ints(&[-1, 3]).pow(2) * &ExactPolynomial::constant(q(1, 9));
        assert_eq!(decide(&a), Dominance::Dominates);
        assert_eq!(
            dominates_on_unit_interval(&a, &ExactPolynomial::zero()),
            Dominance::Dominates
        );
        // -(x - 1/3)^2 is negative almost everywhere
        assert_witness(&ExactPolynomial::zero(), &a);
    }

    #[test]
    fn narrow_negative_dip() {
        // (x - 1/2)^2 - 1/10^6 dips below zero on a tiny window around 1/2
        let a = &(&ints(&[-1, 2]).pow(2) * &ExactPolynomial::constant(q(1, 4)))
            - &ExactPolynomial::constant(q(1, 1_000_000));
        let w = assert_witness(&a, &ExactPolynomial::zero());
        assert!((w - q(1, 2)).abs() < q(1, 1000));
    }

    #[test]
    fn negative_near_the_ends() {
        // x^3 (x - 1/100): negative on (0, 1/100) only
        let a = &ExactPolynomial::x().pow(3) * &ExactPolynomial::new(vec![q(-1, 100), q(1, 1)]);
        let w = assert_witness(&a, &ExactPolynomial::zero());
        assert!(w < q(1, 100));
        // mirrored at 1
        let b = &ExactPolynomial::one_minus_x().pow(3)
            * &ExactPolynomial::new(vec![q(99, 100), q(-1, 1)]);
        let w = assert_witness(&b, &ExactPolynomial::zero());
        assert!(w > q(99, 100));
    }

    #[test]
    fn decision_agrees_with_shortcut() {
        // positive but with a negative low-degree Bernstein coefficient
        let a = &(&ints(&[-1, 2]).pow(2) * &ExactPolynomial::constant(q(1, 4)))
            + &ExactPolynomial::constant(q(1, 1_000_000));
        assert!(a
            .bernstein_coefficients(2)
            .unwrap()
            .iter()
            .any(|c| c.is_negative()));
        assert_eq!(decide(&a), Dominance::Dominates);
        assert_eq!(
            dominates_on_unit_interval(&a, &ExactPolynomial::zero()),
            Dominance::Dominates
        );
    }

    #[test]
    fn sturm_counts() {
        // roots 1/4, 1/2, 3/4
        let p = &(&ints(&[-1, 4]) * &ints(&[-1, 2])) * &ints(&[-3, 4]);
        let s = SturmSequence::new(&p);
        assert_eq!(s.count_roots(&q(0, 1), &q(1, 1)), 3);
        assert_eq!(s.count_roots(&q(0, 1), &q(3, 8)), 1);
        assert_eq!(s.count_roots(&q(3, 8), &q(1, 1)), 2);
    }

    #[test]
    fn verdict_json() {
        let v = Dominance::Crossing(q(1, 4));
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, r#"{"verdict":"crossing","witness":"1/4"}"#);
        assert_eq!(serde_json::from_str::<Dominance>(&json).unwrap(), v);
        assert_eq!(
            serde_json::to_string(&Dominance::Dominates).unwrap(),
            r#"{"verdict":"dominates","witness":null}"#
        );
    }
}
