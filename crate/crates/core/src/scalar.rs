//! Exact scalars: big integers, rationals, prime fields and integer-valued
//! polynomials written in the binomial basis.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// C(n, k) for n >= 0; zero outside 0..=n.
pub fn binom(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Generalized binomial n(n-1)...(n-k+1)/k! for any integer n and k >= 0.
pub fn binom_signed(n: i64, k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k as i64 {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * i)
}

/// A validated prime modulus p >= 3 with arithmetic on residues in [0, p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p > u32::MAX as u64 {
            return Err(Error::NotPrime(p));
        }
        let mut d = 2;
        while d * d <= p {
            if p % d == 0 {
                return Err(Error::NotPrime(p));
            }
            d += 1;
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.0 - b) % self.0
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }

    pub fn neg(self, a: u64) -> u64 {
        (self.0 - a) % self.0
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.0;
        a %= self.0;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Inverse of a nonzero residue (Fermat).
    pub fn inv(self, a: u64) -> Option<u64> {
        if a % self.0 == 0 {
            None
        } else {
            Some(self.pow(a, self.0 - 2))
        }
    }

    pub fn from_i64(self, v: i64) -> u64 {
        v.rem_euclid(self.0 as i64) as u64
    }

    pub fn from_big(self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.0)).to_u64().unwrap()
    }

    pub fn from_rat(self, r: &Rat) -> Result<u64> {
        let d = self.from_big(r.denom());
        let inv = self
            .inv(d)
            .ok_or_else(|| Error::DenominatorDivisibleByP(r.to_string(), self.0))?;
        Ok(self.mul(self.from_big(r.numer()), inv))
    }

    /// Symmetric lift into (-p/2, p/2], used when printing signed tables.
    pub fn signed(self, a: u64) -> i64 {
        if a > self.0 / 2 {
            a as i64 - self.0 as i64
        } else {
            a as i64
        }
    }

    pub fn elem(self, v: u64) -> Fp {
        Fp { value: v % self.0, modulus: self }
    }
}

/// An element of F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Fp {
    value: u64,
    modulus: Prime,
}

impl Fp {
    pub fn new(v: i64, p: u64) -> Result<Self> {
        let m = Prime::new(p)?;
        Ok(Fp { value: m.from_i64(v), modulus: m })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> Prime {
        self.modulus
    }

    pub fn inv(&self) -> Option<Fp> {
        self.modulus.inv(self.value).map(|v| self.modulus.elem(v))
    }

    pub fn pow(&self, e: u64) -> Fp {
        self.modulus.elem(self.modulus.pow(self.value, e))
    }

    fn check(&self, o: &Fp) {
        assert_eq!(self.modulus, o.modulus, "mixed moduli");
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        self.check(&o);
        self.modulus.elem(self.modulus.add(self.value, o.value))
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        self.check(&o);
        self.modulus.elem(self.modulus.sub(self.value, o.value))
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        self.check(&o);
        self.modulus.elem(self.modulus.mul(self.value, o.value))
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        self.modulus.elem(self.modulus.neg(self.value))
    }
}

/// Reduce a rational modulo p.
pub fn rat_mod_p(r: &Rat, p: u64) -> Result<Fp> {
    let m = Prime::new(p)?;
    Ok(m.elem(m.from_rat(r)?))
}

/// Integer-valued polynomial P(m) = sum c_i C(m, i).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomPoly {
    coeffs: Vec<BigInt>,
}

impl BinomPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        BinomPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn eval(&self, m: i64) -> BigInt {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * binom_signed(m, i))
            .sum()
    }

    /// Coefficient of m^d in the monomial basis: c_d / d!.
    pub fn leading_coefficient(&self) -> Rat {
        let d = self.coeffs.len() - 1;
        Rat::new(self.coeffs[d].clone(), factorial(d as u64))
    }
}

impl fmt::Display for BinomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Interpolate consecutive samples (m, P(m)) in the binomial basis.
pub fn binom_fit(values: &[(i64, BigInt)]) -> Result<BinomPoly> {
    if values.is_empty() {
        return Err(Error::InconsistentSamples("no samples".into()));
    }
    let mut pts: Vec<(i64, BigInt)> = values.to_vec();
    pts.sort_by_key(|(m, _)| *m);
    pts.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);
    for w in pts.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::InconsistentSamples(format!("two values at m={}", w[0].0)));
        }
        if w[1].0 != w[0].0 + 1 {
            return Err(Error::InconsistentSamples(format!(
                "gap between m={} and m={}",
                w[0].0, w[1].0
            )));
        }
    }
    let m0 = pts[0].0;
    // Newton forward differences at m0: P(m) = sum d_i C(m - m0, i).
    let mut row: Vec<BigInt> = pts.iter().map(|(_, v)| v.clone()).collect();
    let mut d = Vec::with_capacity(row.len());
    while !row.is_empty() {
        d.push(row[0].clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    // Vandermonde: C(m - m0, i) = sum_l C(m, l) C(-m0, i - l).
    let mut c = vec![BigInt::zero(); d.len()];
    for (i, di) in d.iter().enumerate() {
        if di.is_zero() {
            continue;
        }
        for (l, cl) in c.iter_mut().enumerate().take(i + 1) {
            *cl += di * binom_signed(-m0, i - l);
        }
    }
    Ok(BinomPoly::new(c))
}

/// Backward difference P(m) - P(m-1).
pub fn finite_difference(p: &BinomPoly) -> BinomPoly {
    let c = p.coeffs();
    let n = c.len();
    let mut d = vec![BigInt::zero(); n.saturating_sub(1).max(1)];
    for i in 1..n {
        for (l, dl) in d.iter_mut().enumerate().take(i) {
            let sign = if (i - 1 - l) % 2 == 0 { 1 } else { -1 };
            *dl += &c[i] * sign;
        }
    }
    BinomPoly::new(d)
}

/// Reduce a BigInt modulo p into [0, p).
pub fn big_mod(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

pub fn is_divisible(v: &BigInt, p: u64) -> bool {
    (v % BigInt::from(p)).is_zero()
}

pub fn rat_is_integer(r: &Rat) -> bool {
    r.denom().abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn samples(f: impl Fn(i64) -> i64, ms: std::ops::RangeInclusive<i64>) -> Vec<(i64, BigInt)> {
        ms.map(|m| (m, BigInt::from(f(m)))).collect()
    }

    #[test]
    fn binom_values() {
        assert_eq!(binom(4, 2), BigInt::from(6));
        assert_eq!(binom(5, 7), BigInt::zero());
        assert_eq!(binom(5, -1), BigInt::zero());
        let row: Vec<u64> = (0..7).map(|j| big_mod(&binom(6, j), 7)).collect();
        assert_eq!(row, vec![1, 6, 1, 6, 1, 6, 1]);
    }

    #[test]
    fn binom_p_minus_two() {
        for p in [3u64, 5, 7, 11] {
            for j in 0..=(p - 2) {
                let lhs = big_mod(&binom(p - 2, j as i64), p);
                let sign: i64 = if j % 2 == 0 { 1 } else { -1 };
                let rhs = ((j as i64 + 1) * sign).rem_euclid(p as i64) as u64;
                assert_eq!(lhs, rhs, "p={p} j={j}");
            }
        }
    }

    #[test]
    fn rational_reduction() {
        assert_eq!(rat_mod_p(&rat(1, 2), 3).unwrap().value(), 2);
        assert_eq!(rat_mod_p(&rat(1, 2), 7).unwrap().value(), 4);
        assert!(matches!(
            rat_mod_p(&rat(1, 3), 3),
            Err(Error::DenominatorDivisibleByP(..))
        ));
        assert_eq!(rat_mod_p(&rat(-3, 2), 5).unwrap().value(), 1);
    }

    #[test]
    fn prime_validation() {
        assert!(Prime::new(2).is_err());
        assert!(Prime::new(9).is_err());
        assert!(Prime::new(1).is_err());
        assert!(Prime::new(13).is_ok());
        assert!(Fp::new(3, 15).is_err());
    }

    #[test]
    fn fp_field_ops() {
        let a = Fp::new(3, 7).unwrap();
        let b = Fp::new(5, 7).unwrap();
        assert_eq!((a + b).value(), 1);
        assert_eq!((a - b).value(), 5);
        assert_eq!((a * b).value(), 1);
        assert_eq!((-a).value(), 4);
        assert_eq!(a.inv().unwrap().value(), 5);
        assert_eq!(a.pow(6).value(), 1);
    }

    #[test]
    fn fit_examples() {
        assert_eq!(binom_fit(&samples(|m| m, 0..=3)).unwrap(), BinomPoly::from_i64(&[0, 1]));
        assert_eq!(
            binom_fit(&samples(|m| m * (m - 1), 0..=4)).unwrap(),
            BinomPoly::from_i64(&[0, 0, 2])
        );
        let s: Vec<(i64, BigInt)> = [(0, 0), (1, 0), (2, 1), (3, 3)]
            .iter()
            .map(|&(m, v)| (m, BigInt::from(v)))
            .collect();
        assert_eq!(binom_fit(&s).unwrap(), BinomPoly::from_i64(&[0, 0, 1]));
    }

    #[test]
    fn fit_from_shifted_start() {
        let s = samples(|m| (m - 1) * (m - 1), 3..=7);
        let p = binom_fit(&s).unwrap();
        for m in -2..10 {
            assert_eq!(p.eval(m), BigInt::from((m - 1) * (m - 1)));
        }
        assert_eq!(p.degree(), Some(2));
    }

    #[test]
    fn fit_rejects_bad_samples() {
        let gap: Vec<(i64, BigInt)> = vec![(0, 1.into()), (2, 3.into())];
        assert!(matches!(binom_fit(&gap), Err(Error::InconsistentSamples(_))));
        let clash: Vec<(i64, BigInt)> = vec![(0, 1.into()), (0, 3.into())];
        assert!(matches!(binom_fit(&clash), Err(Error::InconsistentSamples(_))));
        assert!(binom_fit(&[]).is_err());
    }

    #[test]
    fn differences() {
        let p = BinomPoly::from_i64(&[0, 0, 2]);
        let d = finite_difference(&p);
        for m in 0..6 {
            assert_eq!(d.eval(m), BigInt::from(2 * (m - 1)));
        }
        assert!(finite_difference(&BinomPoly::from_i64(&[5])).is_zero());
        assert_eq!(finite_difference(&BinomPoly::from_i64(&[0, 1])), BinomPoly::from_i64(&[1]));
    }

    #[test]
    fn leading_coefficient_of_binomial_form() {
        // m(m-1)/2 = C(m,2)
        assert_eq!(BinomPoly::from_i64(&[0, 0, 1]).leading_coefficient(), rat(1, 2));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn fit_recovers_the_polynomial(
                coeffs in prop::collection::vec(-20i64..=20, 0..6),
                start in -4i64..=4,
                extra in 0usize..3,
            ) {
                let p = BinomPoly::from_i64(&coeffs);
                let n = p.degree().map_or(1, |d| d + 1) + extra;
                let s: Vec<(i64, BigInt)> = (start..start + n as i64).map(|m| (m, p.eval(m))).collect();
                prop_assert_eq!(binom_fit(&s).unwrap(), p);
            }

            #[test]
            fn difference_operator(coeffs in prop::collection::vec(-20i64..=20, 0..6), m in -10i64..=10) {
                let p = BinomPoly::from_i64(&coeffs);
                prop_assert_eq!(finite_difference(&p).eval(m), p.eval(m) - p.eval(m - 1));
            }

            #[test]
            fn rational_reduction_is_a_ring_map(a in -50i64..50, b in 1i64..50, c in -50i64..50, d in 1i64..50) {
                let p = 7;
                prop_assume!(b % 7 != 0 && d % 7 != 0);
                let (x, y) = (rat(a, b), rat(c, d));
                let red = |r: &Rat| rat_mod_p(r, p).unwrap();
                prop_assert_eq!(red(&(&x * &y)), red(&x) * red(&y));
                prop_assert_eq!(red(&(&x + &y)), red(&x) + red(&y));
            }
        }
    }
}
