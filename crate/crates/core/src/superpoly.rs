//! The free supercommutative ring Z[x0, x1, ...] with |x_{i+1}| = |x_i| + |delta|
//! and the derivation delta(x_i) = x_{i+1}.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u64) -> Self {
        if b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u64 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// (-1)^{|a||b|}
    pub fn koszul(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, o: Parity) -> Parity {
        Parity::from_bit(self.bit() + o.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Parities of x0 and of delta; together they fix |x_i| = |x0| + i|delta|.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParityCase {
    pub x0: Parity,
    pub delta: Parity,
}

impl ParityCase {
    pub const EVEN_EVEN: ParityCase = ParityCase { x0: Parity::Even, delta: Parity::Even };
    pub const EVEN_ODD: ParityCase = ParityCase { x0: Parity::Even, delta: Parity::Odd };
    pub const ODD_EVEN: ParityCase = ParityCase { x0: Parity::Odd, delta: Parity::Even };
    pub const ODD_ODD: ParityCase = ParityCase { x0: Parity::Odd, delta: Parity::Odd };
    pub const ALL: [ParityCase; 4] =
        [Self::EVEN_EVEN, Self::EVEN_ODD, Self::ODD_EVEN, Self::ODD_ODD];

    pub fn var_parity(self, i: u32) -> Parity {
        Parity::from_bit(self.x0.bit() + i as u64 * self.delta.bit())
    }

    /// Tag such as "even/odd" (x0 parity first, then delta).
    pub fn tag(self) -> String {
        format!("{}/{}", self.x0, self.delta)
    }

    pub fn parse(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once('/')
            .ok_or_else(|| Error::Parse(format!("parity case `{s}`")))?;
        let p = |t: &str| match t {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            _ => Err(Error::Parse(format!("parity `{t}`"))),
        };
        Ok(ParityCase { x0: p(a)?, delta: p(b)? })
    }
}

/// Coefficient rings used for polynomials.
pub trait Coeff:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
    fn from_int(v: i64) -> Self;
    fn to_rat(&self) -> Rat;
    fn parse_coeff(s: &str) -> Option<Self>;
    fn is_negative(&self) -> bool;
}

impl Coeff for BigInt {
    fn from_int(v: i64) -> Self {
        BigInt::from(v)
    }
    fn to_rat(&self) -> Rat {
        Rat::from_integer(self.clone())
    }
    fn parse_coeff(s: &str) -> Option<Self> {
        BigInt::from_str(s).ok()
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

impl Coeff for Rat {
    fn from_int(v: i64) -> Self {
        Rat::from_integer(BigInt::from(v))
    }
    fn to_rat(&self) -> Rat {
        self.clone()
    }
    fn parse_coeff(s: &str) -> Option<Self> {
        match s.split_once('/') {
            Some((n, d)) => {
                let d = BigInt::from_str(d).ok()?;
                if d.is_zero() {
                    return None;
                }
                Some(Rat::new(BigInt::from_str(n).ok()?, d))
            }
            None => Some(Rat::from_integer(BigInt::from_str(s).ok()?)),
        }
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// A monomial x_{i1}^{e1} ... x_{is}^{es} with strictly increasing indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct SuperMonomial(Vec<(u32, u32)>);

impl SuperMonomial {
    pub fn one() -> Self {
        SuperMonomial(Vec::new())
    }

    pub fn var(i: u32) -> Self {
        SuperMonomial(vec![(i, 1)])
    }

    /// Build from (index, exponent) pairs; rejects unsorted input, zero
    /// exponents and odd variables with exponent above one.
    pub fn from_pairs(case: ParityCase, pairs: Vec<(u32, u32)>) -> Result<Self> {
        for w in pairs.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::InvalidStructure("indices must increase".into()));
            }
        }
        for &(i, e) in &pairs {
            if e == 0 {
                return Err(Error::InvalidStructure("zero exponent".into()));
            }
            if case.var_parity(i).is_odd() && e > 1 {
                return Err(Error::InvalidStructure(format!("odd x{i} with exponent {e}")));
            }
        }
        Ok(SuperMonomial(pairs))
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn exponent(&self, i: u32) -> u32 {
        self.0.iter().find(|(v, _)| *v == i).map_or(0, |(_, e)| *e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    /// Sum of index times exponent (the weight carried by delta).
    pub fn weight(&self) -> u32 {
        self.0.iter().map(|(i, e)| i * e).sum()
    }

    pub fn max_var(&self) -> Option<u32> {
        self.0.last().map(|(i, _)| *i)
    }

    pub fn parity(&self, case: ParityCase) -> Parity {
        Parity::from_bit(
            self.0
                .iter()
                .map(|&(i, e)| e as u64 * case.var_parity(i).bit())
                .sum(),
        )
    }

    /// Product of two canonical monomials: Koszul sign and result, or None if
    /// an odd variable repeats.
    pub fn mul(&self, other: &Self, case: ParityCase) -> Option<(i64, Self)> {
        let mut inversions = 0u64;
        for &(ib, _) in &other.0 {
            if case.var_parity(ib).is_odd() {
                for &(ia, _) in &self.0 {
                    if ia == ib {
                        return None;
                    }
                    if ia > ib && case.var_parity(ia).is_odd() {
                        inversions += 1;
                    }
                }
            }
        }
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (0, 0);
        while a < self.0.len() || b < other.0.len() {
            if b == other.0.len() || (a < self.0.len() && self.0[a].0 < other.0[b].0) {
                out.push(self.0[a]);
                a += 1;
            } else if a == self.0.len() || other.0[b].0 < self.0[a].0 {
                out.push(other.0[b]);
                b += 1;
            } else {
                out.push((self.0[a].0, self.0[a].1 + other.0[b].1));
                a += 1;
                b += 1;
            }
        }
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((sign, SuperMonomial(out)))
    }

    /// delta applied factor by factor: (sign * multiplicity, monomial) terms.
    pub fn delta(&self, case: ParityCase) -> Vec<(i64, SuperMonomial)> {
        let mut out = Vec::new();
        let mut prefix = 0u64;
        for (t, &(i, e)) in self.0.iter().enumerate() {
            let target_odd = case.var_parity(i + 1).is_odd();
            let next_present = self.0.get(t + 1).is_some_and(|&(j, _)| j == i + 1);
            if !(target_odd && next_present) {
                let mut v = self.0.clone();
                if e == 1 {
                    v.remove(t);
                } else {
                    v[t].1 -= 1;
                }
                let pos = v.partition_point(|&(j, _)| j <= i);
                if pos > 0 && v[pos - 1].0 == i + 1 {
                    v[pos - 1].1 += 1;
                } else if pos < v.len() && v[pos].0 == i + 1 {
                    v[pos].1 += 1;
                } else {
                    v.insert(pos, (i + 1, 1));
                }
                let sign = if case.delta.is_odd() && prefix % 2 == 1 { -1 } else { 1 };
                out.push((sign * e as i64, SuperMonomial(v)));
            }
            prefix += e as u64 * case.var_parity(i).bit();
        }
        out
    }
}

impl fmt::Display for SuperMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(i, e)| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Sparse element of V with coefficients in C; no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperPoly<C: Coeff = BigInt> {
    case: ParityCase,
    terms: BTreeMap<SuperMonomial, C>,
}

impl<C: Coeff> SuperPoly<C> {
    pub fn zero(case: ParityCase) -> Self {
        SuperPoly { case, terms: BTreeMap::new() }
    }

    pub fn one(case: ParityCase) -> Self {
        Self::monomial(case, SuperMonomial::one(), C::one())
    }

    pub fn var(case: ParityCase, i: u32) -> Self {
        Self::monomial(case, SuperMonomial::var(i), C::one())
    }

    pub fn monomial(case: ParityCase, m: SuperMonomial, c: C) -> Self {
        let mut p = Self::zero(case);
        p.add_term(m, c);
        p
    }

    pub fn case(&self) -> ParityCase {
        self.case
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SuperMonomial, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: SuperMonomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn coefficient_of(&self, m: &SuperMonomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.case);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        if self.case != o.case {
            return Err(Error::ParityCaseMismatch);
        }
        let mut out = self.clone();
        for (m, v) in &o.terms {
            out.add_term(m.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.case != o.case {
            return Err(Error::ParityCaseMismatch);
        }
        let mut out = Self::zero(self.case);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                if let Some((s, m)) = ma.mul(mb, self.case) {
                    let c = ca.clone() * cb.clone();
                    out.add_term(m, if s < 0 { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Multiply by x_i^e on the left.
    pub fn mul_var_left(&self, i: u32, e: u32) -> Self {
        let mut out = Self::zero(self.case);
        let left = SuperMonomial(vec![(i, e)]);
        if e == 0 {
            return self.clone();
        }
        for (m, c) in &self.terms {
            if let Some((s, r)) = left.mul(m, self.case) {
                out.add_term(r, if s < 0 { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    pub fn apply_delta(&self) -> Self {
        let mut out = Self::zero(self.case);
        for (m, c) in &self.terms {
            for (s, r) in m.delta(self.case) {
                out.add_term(r, c.clone() * C::from_int(s));
            }
        }
        out
    }

    pub fn apply_delta_n(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |p, _| p.apply_delta())
    }

    /// Parity when homogeneous; zero counts as even.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|m| m.parity(self.case));
        match it.next() {
            None => Some(Parity::Even),
            Some(first) => {
                if it.all(|q| q == first) {
                    Some(first)
                } else {
                    None
                }
            }
        }
    }

    /// Apply (-1)^{|delta||m|} termwise.
    pub fn twist(&self) -> Self {
        if !self.case.delta.is_odd() {
            return self.clone();
        }
        let mut out = Self::zero(self.case);
        for (m, c) in &self.terms {
            let odd = m.parity(self.case).is_odd();
            out.add_term(m.clone(), if odd { -c.clone() } else { c.clone() });
        }
        out
    }

    pub fn max_var(&self) -> Option<u32> {
        self.terms.keys().filter_map(|m| m.max_var()).max()
    }

    pub fn to_rat(&self) -> SuperPoly<Rat> {
        let mut out = SuperPoly::<Rat>::zero(self.case);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.to_rat());
        }
        out
    }

    /// Parse the rendering grammar, e.g. `2*x0^3*x1 - 1/2*x0*x2`.
    /// Factors are multiplied left to right, so Koszul signs apply.
    pub fn parse(case: ParityCase, s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = Self::zero(case);
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (idx, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && !(idx == 0 || cur.ends_with('^')) {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && idx == 0 {
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        terms.push((neg, cur));
        for (neg, t) in terms {
            if t.is_empty() {
                return Err(Error::Parse(format!("empty term in `{s}`")));
            }
            let mut term = Self::one(case);
            for f in t.split('*') {
                let factor = if let Some(rest) = f.strip_prefix('x') {
                    let (idx, exp) = match rest.split_once('^') {
                        Some((i, e)) => (i, e),
                        None => (rest, "1"),
                    };
                    let i: u32 = idx.parse().map_err(|_| Error::Parse(format!("factor `{f}`")))?;
                    let e: u32 = exp.parse().map_err(|_| Error::Parse(format!("factor `{f}`")))?;
                    let mut p = Self::one(case);
                    for _ in 0..e {
                        p = p.try_mul(&Self::var(case, i))?;
                    }
                    p
                } else {
                    let c = C::parse_coeff(f).ok_or_else(|| Error::Parse(format!("coefficient `{f}`")))?;
                    Self::one(case).scale(&c)
                };
                term = term.try_mul(&factor)?;
            }
            if neg {
                term = -term;
            }
            out = out.try_add(&term)?;
        }
        Ok(out)
    }
}

impl<C: Coeff> fmt::Display for SuperPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = abs.is_one();
            let is_const = m.pairs().is_empty();
            match (unit, is_const) {
                (true, true) => f.write_str("1")?,
                (true, false) => write!(f, "{m}")?,
                (false, true) => write!(f, "{abs}")?,
                (false, false) => write!(f, "{abs}*{m}")?,
            }
        }
        Ok(())
    }
}

impl<C: Coeff> Add for &SuperPoly<C> {
    type Output = SuperPoly<C>;
    fn add(self, o: &SuperPoly<C>) -> SuperPoly<C> {
        self.try_add(o).expect("parity case mismatch")
    }
}

impl<C: Coeff> Sub for &SuperPoly<C> {
    type Output = SuperPoly<C>;
    fn sub(self, o: &SuperPoly<C>) -> SuperPoly<C> {
        self.try_add(&-o.clone()).expect("parity case mismatch")
    }
}

impl<C: Coeff> Mul for &SuperPoly<C> {
    type Output = SuperPoly<C>;
    fn mul(self, o: &SuperPoly<C>) -> SuperPoly<C> {
        self.try_mul(o).expect("parity case mismatch")
    }
}

impl<C: Coeff> Neg for SuperPoly<C> {
    type Output = SuperPoly<C>;
    fn neg(self) -> SuperPoly<C> {
        let case = self.case;
        let mut out = SuperPoly::zero(case);
        for (m, c) in self.terms {
            out.terms.insert(m, -c);
        }
        out
    }
}

/// Product in the free model: free function form of [`SuperPoly::try_mul`].
pub fn mul<C: Coeff>(p: &SuperPoly<C>, q: &SuperPoly<C>) -> Result<SuperPoly<C>> {
    p.try_mul(q)
}

pub fn apply_delta<C: Coeff>(p: &SuperPoly<C>) -> SuperPoly<C> {
    p.apply_delta()
}

pub fn coefficient_of<C: Coeff>(p: &SuperPoly<C>, m: &SuperMonomial) -> Rat {
    p.coefficient_of(m).to_rat()
}

/// A ring receiving the evaluation x_i -> alpha^i(a).
pub trait HomTarget {
    type Elem: Clone;
    fn one(&self) -> Self::Elem;
    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &Rat, a: &Self::Elem) -> Result<Self::Elem>;
}

/// Evaluate P with x_i sent to `images[i]`; factors are multiplied in
/// ascending index order, which is the order the signs were normalized to.
pub fn eval_hom<C: Coeff, T: HomTarget>(
    p: &SuperPoly<C>,
    target: &T,
    images: &[T::Elem],
) -> Result<T::Elem> {
    let mut acc = target.zero();
    for (m, c) in p.terms() {
        let mut v = target.one();
        for &(i, e) in m.pairs() {
            let img = images.get(i as usize).ok_or_else(|| {
                Error::IndexOutOfRange(format!("no image supplied for x{i}"))
            })?;
            for _ in 0..e {
                v = target.mul(&v, img);
            }
        }
        acc = target.add(&acc, &target.scale(&c.to_rat(), &v)?);
    }
    Ok(acc)
}
