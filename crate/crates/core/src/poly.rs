//! Polynomials with exact rational coefficients in the power basis, with
//! conversion to and from the Bernstein basis of any sufficient degree.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients lowest degree first, with no trailing zeros; the zero
/// polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExactPolynomial {
    coeffs: Vec<BigRational>,
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn binom(n: usize, k: usize) -> BigRational {
    BigRational::from_integer(binomial(BigInt::from(n), BigInt::from(k)))
}

impl ExactPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_integers(&[0, 1])
    }

    /// `1 - x`.
    pub fn one_minus_x() -> Self {
        Self::from_integers(&[1, -1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::constant(BigRational::one());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * int(i as i64))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let Some(deg) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if deg < dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); deg - dd + 1];
        for k in (0..=deg - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Rescaled to leading coefficient 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `self / gcd(self, self')`: same roots, all simple.
    pub fn square_free_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    /// Coefficients in the degree-`d` Bernstein basis
    /// `C(d,i) x^i (1-x)^(d-i)`, `i = 0..=d`.
    pub fn bernstein_coefficients(&self, d: usize) -> Result<Vec<BigRational>> {
        if self.degree().is_some_and(|deg| deg > d) {
            return Err(Error::Precondition(format!(
                "degree {} exceeds the Bernstein degree {d}",
                self.degree().unwrap()
            )));
        }
        Ok((0..=d)
            .map(|i| {
                (0..=i)
                    .take_while(|&j| j < self.coeffs.len())
                    .map(|j| &self.coeffs[j] * binom(i, j) / binom(d, j))
                    .fold(BigRational::zero(), |acc, x| acc + x)
            })
            .collect())
    }

    /// Inverse of [`bernstein_coefficients`](Self::bernstein_coefficients).
    pub fn from_bernstein(b: &[BigRational]) -> Self {
        let d = b.len().saturating_sub(1);
        Self::new(
            (0..b.len())
                .map(|j| {
                    (0..=j)
                        .map(|i| {
                            let term = &b[i] * binom(d, j) * binom(j, i);
                            if (j - i) % 2 == 0 {
                                term
                            } else {
                                -term
                            }
                        })
                        .fold(BigRational::zero(), |acc, x| acc + x)
                })
                .collect(),
        )
    }

    /// `Σ counts[i] x^i (1-x)^(m-i)` with `m = counts.len() - 1`.
    pub fn from_counts(counts: &[BigUint]) -> Self {
        let m = counts.len().saturating_sub(1);
        let mut out = Self::zero();
        for (i, c) in counts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = BigRational::from_integer(BigInt::from(c.clone()));
            let term = &(&Self::x().pow(i) * &Self::one_minus_x().pow(m - i)) * &Self::constant(c);
            out = &out + &term;
        }
        out
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(format_rational).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        Ok(Self::new(
            items
                .iter()
                .map(|s| parse_rational(s.as_ref()))
                .collect::<Result<_>>()?,
        ))
    }
}

impl Add for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn add(self, rhs: Self) -> ExactPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        ExactPolynomial::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn sub(self, rhs: Self) -> ExactPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        ExactPolynomial::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn mul(self, rhs: Self) -> ExactPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return ExactPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ExactPolynomial::new(out)
    }
}

impl Neg for &ExactPolynomial {
    type Output = ExactPolynomial;

    fn neg(self) -> ExactPolynomial {
        ExactPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => {}
                _ => write!(f, "{a}")?,
            }
            match i {
                0 => {}
                1 => write!(f, "p")?,
                _ => write!(f, "p^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for ExactPolynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        Self::from_strings(&items).map_err(serde::de::Error::custom)
    }
}

/// `num/den` in lowest terms, always with a denominator.
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts `a/b`, an integer, or a finite decimal such as `0.25`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let digits = format!("{}{frac}", whole.trim_start_matches(['-', '+']));
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let q = BigRational::new(n, d);
        return Ok(if negative { -q } else { q });
    }
    Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn k3_polynomial() {
        let counts: Vec<BigUint> = [0u32, 2, 0, 0].iter().map(|&c| c.into()).collect();
        let sr = ExactPolynomial::from_counts(&counts);
        assert_eq!(sr, ExactPolynomial::from_integers(&[0, 2, -4, 2]));
        assert_eq!(sr.evaluate(&q(1, 2)), q(1, 4));
        assert_eq!(sr.evaluate(&q(0, 1)), q(0, 1));
        assert_eq!(sr.evaluate(&q(1, 1)), q(0, 1));
        assert_eq!(sr.to_string(), "2p - 4p^2 + 2p^3");
    }

    #[test]
    fn c4_polynomial() {
        let counts: Vec<BigUint> = [0u32, 0, 4, 0, 0].iter().map(|&c| c.into()).collect();
        let sr = ExactPolynomial::from_counts(&counts);
        let expected =
            &ExactPolynomial::from_integers(&[0, 0, 4]) * &ExactPolynomial::one_minus_x().pow(2);
        assert_eq!(sr, expected);
        assert!(ExactPolynomial::from_counts(&vec![BigUint::zero(); 4]).is_zero());
    }

    #[test]
    fn bernstein_examples() {
        let one = ExactPolynomial::constant(q(1, 1));
        for d in 0..6 {
            assert!(one
                .bernstein_coefficients(d)
                .unwrap()
                .iter()
                .all(|c| c.is_one()));
        }
        assert_eq!(
            ExactPolynomial::x().bernstein_coefficients(1).unwrap(),
            vec![q(0, 1), q(1, 1)]
        );
        let k3 = ExactPolynomial::from_integers(&[0, 2, -4, 2]);
        let b = k3.bernstein_coefficients(3).unwrap();
        assert_eq!(b, vec![q(0, 1), q(2, 3), q(0, 1), q(0, 1)]);
        // evaluate the Bernstein form directly at five points
        for k in 0..5 {
            let x = q(k, 4);
            let via_basis = (0..=3)
                .map(|i| {
                    &b[i]
                        * binom(3, i)
                        * num_traits::pow(x.clone(), i)
                        * num_traits::pow(q(1, 1) - &x, 3 - i)
                })
                .fold(q(0, 1), |a, t| a + t);
            assert_eq!(via_basis, k3.evaluate(&x));
        }
        assert!(k3.bernstein_coefficients(2).is_err());
    }

    #[test]
    fn division_and_gcd() {
        // (x - 1)^2 (x + 2)
        let a = &ExactPolynomial::from_integers(&[-1, 1]).pow(2)
            * &ExactPolynomial::from_integers(&[2, 1]);
        let b = ExactPolynomial::from_integers(&[-1, 1]);
        let (quot, rem) = a.div_rem(&b);
        assert!(rem.is_zero());
        assert_eq!(&quot * &b, a);
        assert_eq!(a.gcd(&a.derivative()), b);
        assert_eq!(
            a.square_free_part().monic(),
            (&b * &ExactPolynomial::from_integers(&[2, 1])).monic()
        );
    }

    #[test]
    fn rational_text() {
        assert_eq!(parse_rational("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_rational("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), q(-3, 2));
        assert_eq!(parse_rational("2").unwrap(), q(2, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert_eq!(format_rational(&q(2, 4)), "1/2");
        assert_eq!(format_rational(&q(3, 1)), "3/1");
    }

    #[test]
    fn json_shape() {
        let p = ExactPolynomial::new(vec![q(0, 1), q(1, 2), q(-3, 1)]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"["0/1","1/2","-3/1"]"#);
        assert_eq!(serde_json::from_str::<ExactPolynomial>(&json).unwrap(), p);
    }

    fn arb_poly() -> impl Strategy<Value = ExactPolynomial> {
        prop::collection::vec((-50i64..50, 1i64..20), 0..=25)
            .prop_map(|cs| ExactPolynomial::new(cs.into_iter().map(|(n, d)| q(n, d)).collect()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn bernstein_round_trip(p in arb_poly(), extra in 0usize..4) {
            let d = p.degree().unwrap_or(0) + extra;
            let b = p.bernstein_coefficients(d).unwrap();
            prop_assert_eq!(ExactPolynomial::from_bernstein(&b), p);
        }

        #[test]
        fn div_rem_reconstructs(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let (quot, rem) = a.div_rem(&b);
            prop_assert_eq!(&(&quot * &b) + &rem, a);
            prop_assert!(rem.degree().is_none_or(|r| r < b.degree().unwrap()));
        }
    }
}
