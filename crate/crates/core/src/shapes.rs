//! Shapes (partitions) indexing the monomials of Gamma_{k,j}, the maps that
//! move between them, and the coefficient sequences P_lambda, Q_lambda.
//!
//! Everything here works in the x0 even / delta odd case.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::report::Report;
use crate::scalar::{big_mod, binom_fit, factorial, finite_difference, BinomPoly, Prime, Rat};
use crate::smash::GammaTable;
use crate::superpoly::{ParityCase, SuperMonomial, SuperPoly};

const CASE: ParityCase = ParityCase::EVEN_ODD;

/// Nondecreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Shape(Vec<u32>);

impl Shape {
    pub fn empty() -> Self {
        Shape(Vec::new())
    }

    /// Validates a nondecreasing, positive sequence.
    pub fn new(v: Vec<u32>) -> Result<Self> {
        if v.iter().any(|&a| a == 0) {
            return Err(Error::InvalidStructure("shape entries must be positive".into()));
        }
        if v.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidStructure("shape must be nondecreasing".into()));
        }
        Ok(Shape(v))
    }

    /// Sorts an arbitrary positive sequence.
    pub fn sorted(mut v: Vec<u32>) -> Self {
        assert!(v.iter().all(|&a| a > 0));
        v.sort_unstable();
        Shape(v)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, a: u32) -> bool {
        self.0.contains(&a)
    }

    /// x^mu vanishes: some odd index repeats.
    pub fn is_null(&self) -> bool {
        self.0.windows(2).any(|w| w[0] == w[1] && w[0] % 2 == 1)
    }

    /// x0^{n - |mu|} x^mu, or None when the exponent is negative or x^mu = 0.
    pub fn monomial(&self, n: i64) -> Option<SuperMonomial> {
        let e0 = n - self.len() as i64;
        if e0 < 0 || self.is_null() {
            return None;
        }
        let mut pairs: Vec<(u32, u32)> = Vec::new();
        if e0 > 0 {
            pairs.push((0, e0 as u32));
        }
        for &a in &self.0 {
            match pairs.last_mut() {
                Some((i, e)) if *i == a => *e += 1,
                _ => pairs.push((a, 1)),
            }
        }
        SuperMonomial::from_pairs(CASE, pairs).ok()
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// A shape with a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ShapePointer {
    pub shape: Shape,
    pub u: usize,
}

impl ShapePointer {
    pub fn new(shape: Shape, u: usize) -> Result<Self> {
        if u == 0 || u > shape.len() {
            return Err(Error::IndexOutOfRange(format!("position {u} in {shape}")));
        }
        Ok(ShapePointer { shape, u })
    }
}

/// All partitions of t, nondecreasing, in lexicographic order.
pub fn shapes_of_weight(t: u32) -> Vec<Shape> {
    fn rec(rem: u32, min: u32, cur: &mut Vec<u32>, out: &mut Vec<Shape>) {
        if rem == 0 {
            out.push(Shape(cur.clone()));
            return;
        }
        for a in min..=rem {
            cur.push(a);
            rec(rem - a, a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(t, 1, &mut Vec::new(), &mut out);
    out
}

pub fn phi(i: u32, mu: &Shape) -> Shape {
    let mut v = mu.0.clone();
    v.push(i);
    Shape::sorted(v)
}

pub fn phi_inverse(i: u32, nu: &Shape) -> Vec<Shape> {
    match nu.0.iter().position(|&a| a == i) {
        Some(pos) => {
            let mut v = nu.0.clone();
            v.remove(pos);
            vec![Shape(v)]
        }
        None => Vec::new(),
    }
}

pub fn phi_inverse_in(i: u32, nu: &Shape, keep: impl Fn(&Shape) -> bool) -> Vec<Shape> {
    phi_inverse(i, nu).into_iter().filter(|s| keep(s)).collect()
}

pub fn psi(i: u32, p: &ShapePointer) -> Shape {
    let mut v = p.shape.0.clone();
    v[p.u - 1] += i;
    Shape::sorted(v)
}

pub fn psi_inverse(i: u32, nu: &Shape) -> Vec<ShapePointer> {
    let mut candidates: Vec<Shape> = Vec::new();
    for (pos, &a) in nu.0.iter().enumerate() {
        if a > i {
            let mut v = nu.0.clone();
            v[pos] -= i;
            let s = Shape::sorted(v);
            if !candidates.contains(&s) {
                candidates.push(s);
            }
        }
    }
    let mut out = Vec::new();
    for mu in candidates {
        for u in 1..=mu.len() {
            let p = ShapePointer { shape: mu.clone(), u };
            if psi(i, &p) == *nu {
                out.push(p);
            }
        }
    }
    out.sort();
    out
}

pub fn psi_inverse_in(i: u32, nu: &Shape, keep: impl Fn(&Shape) -> bool) -> Vec<ShapePointer> {
    psi_inverse(i, nu).into_iter().filter(|p| keep(&p.shape)).collect()
}

/// (-1)^{#{i < u : a_i odd}}
pub fn leibniz_sign(p: &ShapePointer) -> i64 {
    let odd = p.shape.0[..p.u - 1].iter().filter(|a| *a % 2 == 1).count();
    if odd % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn packed_shape(r: u32) -> Shape {
    let mut v = Vec::new();
    if r % 2 == 1 {
        v.push(1);
    }
    v.extend(std::iter::repeat(2).take((r / 2) as usize));
    Shape(v)
}

pub fn is_packed(lambda: &Shape) -> bool {
    *lambda == packed_shape(lambda.weight())
}

/// Coefficient of x0^{n-|mu|} x^mu in p, zero for null or out-of-range shapes.
pub fn shape_coefficient(p: &SuperPoly, mu: &Shape, n: i64) -> BigInt {
    match mu.monomial(n) {
        Some(m) => p.coefficient_of(&m),
        None => BigInt::zero(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeqKind {
    P,
    Q,
}

impl SeqKind {
    /// Row index k of Gamma_{k, k-r} feeding sample m.
    pub fn k(self, m: i64) -> i64 {
        match self {
            SeqKind::P => 2 * m,
            SeqKind::Q => 2 * m + 1,
        }
    }

    fn zero_below(self, r: u32) -> i64 {
        match self {
            SeqKind::P => (r as i64 + 2) / 2,
            SeqKind::Q => (r as i64 + 1) / 2,
        }
    }
}

/// Raw coefficient [x0^{k-|lambda|} x^lambda] Gamma_{k,k-r}, k = 2m or 2m+1,
/// on the extended domain.
pub fn raw_coefficient(t: &GammaTable, kind: SeqKind, lambda: &Shape, m: i64) -> BigInt {
    let k = kind.k(m);
    if k < 0 {
        return BigInt::zero();
    }
    let r = lambda.weight() as i64;
    let g = t.get(k as u32, k - r);
    shape_coefficient(&g, lambda, k)
}

/// P_lambda or Q_lambda: samples plus the fitted interpolant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PLambda {
    pub shape: Shape,
    pub kind: SeqKind,
    pub samples: Vec<(i64, BigInt)>,
    pub poly: BinomPoly,
    /// Samples beyond the fitting window agree with the interpolant.
    pub held_out_ok: bool,
}

impl PLambda {
    pub fn degree(&self) -> Option<usize> {
        self.poly.degree()
    }

    pub fn eval(&self, m: i64) -> BigInt {
        self.poly.eval(m)
    }
}

/// Table large enough to extract sequences of diagonal up to r_max for m <= m_max.
pub fn table_for(r_max: u32, m_max: u32) -> GammaTable {
    GammaTable::build_band(2 * m_max + 1, CASE, r_max)
}

pub fn extract_with(t: &GammaTable, kind: SeqKind, lambda: &Shape, m_max: u32) -> Result<PLambda> {
    let r = lambda.weight();
    let fit_end = r as i64 + 2;
    if (m_max as i64) < fit_end {
        return Err(Error::InsufficientSamples { needed: fit_end as usize, got: m_max as usize });
    }
    if t.case() != CASE || (kind.k(m_max as i64) as u32) > t.k_max() || !t.covers(t.k_max(), t.k_max() as i64 - r as i64) {
        return Err(Error::PreconditionViolated(format!("table too small for {lambda} up to m={m_max}")));
    }
    let samples: Vec<(i64, BigInt)> = (0..=m_max as i64)
        .map(|m| {
            let v = if m < kind.zero_below(r) { BigInt::zero() } else { raw_coefficient(t, kind, lambda, m) };
            (m, v)
        })
        .collect();
    let fit: Vec<(i64, BigInt)> = samples.iter().filter(|(m, _)| *m <= fit_end).cloned().collect();
    let poly = binom_fit(&fit)?;
    let held_out_ok = samples.iter().filter(|(m, _)| *m > fit_end).all(|(m, v)| poly.eval(*m) == *v);
    Ok(PLambda { shape: lambda.clone(), kind, samples, poly, held_out_ok })
}

/// P_lambda with samples up to m_max; fits on m <= r+2 and checks the rest.
pub fn extract_p(lambda: &Shape, m_max: u32) -> Result<PLambda> {
    let t = table_for(lambda.weight(), m_max);
    extract_with(&t, SeqKind::P, lambda, m_max)
}

pub fn extract_q(lambda: &Shape, m_max: u32) -> Result<PLambda> {
    let t = table_for(lambda.weight(), m_max);
    extract_with(&t, SeqKind::Q, lambda, m_max)
}

/// H = sum_mu C_mu x0^{n-|mu|} x^mu over shapes of weight t, at a fixed m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialSum {
    pub t: u32,
    pub n: i64,
    pub coeffs: BTreeMap<Shape, BigInt>,
}

impl PartialSum {
    /// Null shapes and negative x0 exponents contribute nothing.
    pub fn effective(&self, mu: &Shape) -> BigInt {
        if mu.monomial(self.n).is_none() {
            return BigInt::zero();
        }
        self.coeffs.get(mu).cloned().unwrap_or_default()
    }

    pub fn to_poly(&self) -> SuperPoly {
        let mut p = SuperPoly::zero(CASE);
        for (mu, c) in &self.coeffs {
            if let Some(m) = mu.monomial(self.n) {
                p.add_term(m, c.clone());
            }
        }
        p
    }

    /// Reads the weight-t part of a homogeneous polynomial of degree n.
    pub fn from_poly(p: &SuperPoly, t: u32, n: i64) -> Self {
        let coeffs = shapes_of_weight(t)
            .into_iter()
            .map(|mu| {
                let c = shape_coefficient(p, &mu, n);
                (mu, c)
            })
            .filter(|(_, c)| !c.is_zero())
            .collect();
        PartialSum { t, n, coeffs }
    }
}

/// Coefficient of x^nu in delta(H) (|nu| = t+1) or in x0^2 delta^2(H)
/// (|nu| = t+2), once symbolically and once through the preimage sums.
pub fn coeff_extraction_pair(h: &PartialSum, nu: &Shape) -> Option<(BigInt, BigInt)> {
    let n = h.n;
    let base = h.to_poly();
    let (direct, formula) = if nu.weight() == h.t + 1 {
        let d = shape_coefficient(&base.apply_delta(), nu, n);
        let mut f = BigInt::zero();
        for mu in phi_inverse(1, nu) {
            f += BigInt::from(n - mu.len() as i64) * h.effective(&mu);
        }
        for p in psi_inverse(1, nu) {
            f += BigInt::from(leibniz_sign(&p)) * h.effective(&p.shape);
        }
        (d, f)
    } else if nu.weight() == h.t + 2 {
        let x0sq = SuperPoly::var(CASE, 0).mul_var_left(0, 1);
        let d = shape_coefficient(&(&x0sq * &base.apply_delta_n(2)), nu, n + 2);
        let mut f = BigInt::zero();
        for mu in phi_inverse(2, nu) {
            f += BigInt::from(n - mu.len() as i64) * h.effective(&mu);
        }
        for p in psi_inverse(2, nu) {
            f += h.effective(&p.shape);
        }
        (d, f)
    } else {
        return None;
    };
    Some((direct, formula))
}

/// True iff the symbolic and preimage-sum coefficients agree. Null nu holds
/// vacuously since x^nu = 0; weights other than t+1, t+2 are rejected.
pub fn check_coeff_extraction(h: &PartialSum, nu: &Shape) -> bool {
    if nu.is_null() && (nu.weight() == h.t + 1 || nu.weight() == h.t + 2) {
        return true;
    }
    match coeff_extraction_pair(h, nu) {
        Some((d, f)) => d == f,
        None => false,
    }
}

/// Which sign the last term of the Delta P_lambda expansion carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LastTermSign {
    /// -(-1)^r, as produced by the second-order recursion
    Derived,
    /// always +
    Plus,
}

/// Right-hand side of Delta S_lambda(m) for S = P (k = 2m) or Q (k = 2m+1),
/// written through the shape maps. `c(mu, m)` returns the raw coefficient.
pub fn delta_rhs(
    lambda: &Shape,
    m: i64,
    kind: SeqKind,
    sign: LastTermSign,
    c: &impl Fn(&Shape, i64) -> BigInt,
) -> BigInt {
    let r = lambda.weight();
    let n = kind.k(m) - 2;
    let no1 = |s: &Shape| !s.contains(1);
    let mut acc = BigInt::zero();
    if r >= 2 {
        for mu in phi_inverse(2, lambda) {
            acc += BigInt::from(n - mu.len() as i64) * c(&mu, m - 1);
        }
        for p in psi_inverse(2, lambda) {
            acc += c(&p.shape, m - 1);
        }
        for nu in phi_inverse_in(1, lambda, no1) {
            for p in psi_inverse(1, &nu) {
                acc += BigInt::from(leibniz_sign(&p)) * c(&p.shape, m - 1);
            }
        }
    }
    let mut last = BigInt::zero();
    for mu in phi_inverse_in(1, lambda, no1) {
        last += c(&mu, m - 1);
    }
    match sign {
        LastTermSign::Derived if r % 2 == 0 => acc - last,
        _ => acc + last,
    }
}

/// Checks Delta S_lambda(m) against `delta_rhs` for every lambda of weight
/// 1..=r_max and 1 <= m <= m_max. Returns the failing (lambda, m) pairs.
pub fn delta_identity_failures(
    t: &GammaTable,
    kind: SeqKind,
    r_max: u32,
    m_max: i64,
    sign: LastTermSign,
) -> Vec<(Shape, i64)> {
    let c = |mu: &Shape, m: i64| raw_coefficient(t, kind, mu, m);
    let mut bad = Vec::new();
    for r in 1..=r_max {
        for lambda in shapes_of_weight(r) {
            if lambda.is_null() {
                continue;
            }
            for m in 1..=m_max {
                let lhs = c(&lambda, m) - c(&lambda, m - 1);
                if lhs != delta_rhs(&lambda, m, kind, sign, &c) {
                    bad.push((lambda.clone(), m));
                }
            }
        }
    }
    bad
}

/// The four shape statements used in the degree argument, for one r.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PackedPropagation {
    pub r: u32,
    /// odd r: packed (r-2)-shape in the Phi_2 preimage forces lambda packed
    pub phi2_odd: bool,
    /// even r: same, even case
    pub phi2_even: bool,
    /// odd r: packed (r-1)-shape in the no-1 Phi_1 preimage forces lambda packed
    pub phi1_odd: bool,
    /// even r: the packed (r-1)-shape never lies in a no-1 Phi_1 preimage
    pub phi1_even: bool,
}

impl PackedPropagation {
    pub fn holds(&self) -> bool {
        self.phi2_odd && self.phi2_even && self.phi1_odd && self.phi1_even
    }
}

pub fn packed_propagation(r: u32) -> PackedPropagation {
    let no1 = |s: &Shape| !s.contains(1);
    let all = shapes_of_weight(r);
    let mut out = PackedPropagation { r, phi2_odd: true, phi2_even: true, phi1_odd: true, phi1_even: true };
    if r >= 2 {
        let p2 = packed_shape(r - 2);
        let ok = all.iter().all(|l| !phi_inverse(2, l).contains(&p2) || is_packed(l));
        if r % 2 == 1 {
            out.phi2_odd = ok;
        } else {
            out.phi2_even = ok;
        }
    }
    if r >= 1 {
        let p1 = packed_shape(r - 1);
        let hits: Vec<&Shape> = all.iter().filter(|l| phi_inverse_in(1, l, no1).contains(&p1)).collect();
        if r % 2 == 1 {
            out.phi1_odd = hits.iter().all(|l| is_packed(l));
        } else {
            out.phi1_even = hits.is_empty();
        }
    }
    out
}

/// 1 / floor(r/2)!
pub fn packed_leading_coefficient(r: u32) -> Rat {
    Rat::new(BigInt::one(), factorial((r / 2) as u64))
}

/// Degree, packing, leading-coefficient, mod-p and reconstruction claims for
/// P_lambda and Q_lambda. Mismatches become failing claims.
pub fn verify_appendix_bundle(r_max: u32, p_list: &[u64]) -> Result<Report> {
    if r_max < 2 {
        return Err(Error::PreconditionViolated("r_max >= 2".into()));
    }
    let primes: Vec<Prime> = p_list.iter().map(|&p| Prime::new(p)).collect::<Result<_>>()?;
    let r_top = primes.iter().map(|p| p.get() as u32).fold(r_max, u32::max);
    let m_max = r_top + 4;
    let table = table_for(r_top, m_max);
    let mut rep = Report::new("appendix");

    let mut seqs: BTreeMap<(u32, Shape), (PLambda, PLambda)> = BTreeMap::new();
    for r in 1..=r_top {
        for lambda in shapes_of_weight(r) {
            let p = extract_with(&table, SeqKind::P, &lambda, m_max)?;
            let q = extract_with(&table, SeqKind::Q, &lambda, m_max)?;
            seqs.insert((r, lambda), (p, q));
        }
    }

    for ((r, lambda), (p, q)) in seqs.iter().filter(|((r, _), _)| *r <= r_max) {
        let id = format!("r{r}/{lambda}");
        let dp = p.degree();
        let dq = q.degree();
        rep.check(
            format!("{id}/interpolation"),
            "P and Q are polynomial in m, validated on held-out samples",
            p.held_out_ok && q.held_out_ok,
            || json!({"P": p.samples.iter().map(|(m, v)| (m, v.to_string())).collect::<Vec<_>>()}),
        );
        rep.check(
            format!("{id}/degree-bound"),
            "deg P_lambda <= r and deg Q_lambda <= r",
            dp.map_or(true, |d| d <= *r as usize) && dq.map_or(true, |d| d <= *r as usize),
            || json!({"deg_p": dp, "deg_q": dq}),
        );
        let packed = is_packed(lambda);
        rep.check(
            format!("{id}/degree-equality"),
            "deg P_lambda = r exactly when lambda is packed",
            (dp == Some(*r as usize)) == packed,
            || json!({"deg_p": dp, "packed": packed}),
        );
        if packed {
            let lc = p.poly.leading_coefficient();
            let want = packed_leading_coefficient(*r);
            rep.check(
                format!("{id}/leading-coefficient"),
                "packed P_lambda has leading coefficient 1/floor(r/2)!",
                lc == want,
                || json!({"got": lc.to_string(), "want": want.to_string()}),
            );
        }
    }

    let closed: [(u32, &[u32], fn(i64) -> i64, &str); 2] = [
        (1, &[1], |m| m, "P_(1)(m) = m"),
        (2, &[2], |m| m * (m - 1), "P_(2)(m) = m(m-1)"),
    ];
    for (r, parts, f, anchor) in closed {
        let lambda = Shape::new(parts.to_vec())?;
        let (seq, _) = &seqs[&(r, lambda.clone())];
        let bad: Vec<i64> = (1..=m_max as i64).filter(|&m| seq.eval(m) != BigInt::from(f(m))).collect();
        rep.check(format!("r{r}/{lambda}/closed-form"), anchor, bad.is_empty(), || json!(bad));
    }

    for r in 2..=r_max {
        rep.check(
            format!("r{r}/packed-propagation"),
            "packed shapes propagate through the Phi_1 and Phi_2 preimages",
            packed_propagation(r).holds(),
            || json!(packed_propagation(r)),
        );
    }

    for p in &primes {
        let pv = p.get();
        let k = 2 * pv as u32;
        let mut recon = SuperPoly::zero(CASE);
        let mut bad = Vec::new();
        for lambda in shapes_of_weight(pv as u32) {
            let (seq, _) = &seqs[&(pv as u32, lambda.clone())];
            let val = seq.eval(pv as i64);
            if big_mod(&val, pv) != 0 {
                bad.push(json!({"shape": lambda.to_string(), "value": val.to_string()}));
            }
            if seq.poly.coeffs().first().map_or(false, |c0| !c0.is_zero()) {
                bad.push(json!({"shape": lambda.to_string(), "c0": seq.poly.coeffs()[0].to_string()}));
            }
            if let Some(mono) = lambda.monomial(k as i64) {
                recon.add_term(mono, val);
            }
        }
        rep.check(
            format!("p{pv}/shape-values-vanish"),
            "P_lambda(p) = 0 mod p for every lambda of weight p",
            bad.is_empty(),
            || json!(bad),
        );
        let gamma = table.get(k, pv as i64);
        rep.check(
            format!("p{pv}/reconstruction"),
            "sum over shapes of P_lambda(p) x0^{2p-|lambda|} x^lambda equals Gamma_{2p,p}",
            recon == gamma,
            || json!({"gamma": gamma.to_string(), "sum": recon.to_string()}),
        );
        rep.check(
            format!("p{pv}/gamma-2p-p-vanishes"),
            "Gamma_{2p,p} = 0 mod p",
            crate::smash::is_zero_mod(&gamma, pv),
            || json!({"gamma": gamma.to_string()}),
        );
    }
    rep.sort();
    Ok(rep)
}

/// Finite difference of a fitted sequence, as a binomial-basis polynomial.
pub fn delta_poly(p: &PLambda) -> BinomPoly {
    finite_difference(&p.poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[u32]) -> Shape {
        Shape::new(v.to_vec()).unwrap()
    }

    #[test]
    fn enumerates_partitions() {
        assert_eq!(shapes_of_weight(3), vec![s(&[1, 1, 1]), s(&[1, 2]), s(&[3])]);
        assert_eq!(shapes_of_weight(0), vec![Shape::empty()]);
        let counts: Vec<usize> = (0..=10).map(|t| shapes_of_weight(t).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn maps_and_inverses() {
        assert_eq!(phi(2, &s(&[1, 2])), s(&[1, 2, 2]));
        assert_eq!(phi_inverse(2, &s(&[1, 2, 2])), vec![s(&[1, 2])]);
        assert!(phi_inverse(3, &s(&[1, 2, 2])).is_empty());
        assert_eq!(phi(2, &packed_shape(5)), packed_shape(7));
        assert_eq!(psi(1, &ShapePointer::new(s(&[1, 2]), 1).unwrap()), s(&[2, 2]));
        assert_eq!(psi(2, &ShapePointer::new(s(&[1, 1, 1]), 3).unwrap()), s(&[1, 1, 3]));
        assert_eq!(psi_inverse(1, &s(&[2, 2])), vec![ShapePointer::new(s(&[1, 2]), 1).unwrap()]);
        assert_eq!(psi_inverse(1, &s(&[2, 3])).len(), 3);
        assert!(ShapePointer::new(s(&[1]), 2).is_err());
        assert!(Shape::new(vec![2, 1]).is_err());
    }

    #[test]
    fn signs_and_packing() {
        assert_eq!(leibniz_sign(&ShapePointer::new(s(&[1, 2]), 2).unwrap()), -1);
        assert_eq!(leibniz_sign(&ShapePointer::new(s(&[2, 2]), 2).unwrap()), 1);
        assert!(is_packed(&s(&[2, 2])));
        assert!(is_packed(&s(&[1, 2, 2])));
        assert!(!is_packed(&s(&[1, 1, 3])));
    }

    #[test]
    fn leibniz_sign_matches_delta() {
        for t in 1..=6 {
            for mu in shapes_of_weight(t).into_iter().filter(|m| !m.is_null()) {
                let x = SuperPoly::<BigInt>::monomial(CASE, mu.monomial(mu.len() as i64).unwrap(), BigInt::one());
                let mut want = SuperPoly::zero(CASE);
                for u in 1..=mu.len() {
                    let mut v = mu.parts().to_vec();
                    v[u - 1] += 1;
                    let inc = Shape::sorted(v);
                    let sign = leibniz_sign(&ShapePointer { shape: mu.clone(), u });
                    if let Some(m) = inc.monomial(inc.len() as i64) {
                        want.add_term(m, BigInt::from(sign));
                    }
                }
                assert_eq!(x.apply_delta(), want, "{mu}");
            }
        }
    }

    #[test]
    fn low_weight_sequences() {
        let t = table_for(2, 8);
        let p1 = extract_with(&t, SeqKind::P, &s(&[1]), 8).unwrap();
        assert_eq!(p1.poly, BinomPoly::from_i64(&[0, 1]));
        let p2 = extract_with(&t, SeqKind::P, &s(&[2]), 8).unwrap();
        for m in 0..=8 {
            assert_eq!(p2.eval(m), BigInt::from(m * (m - 1)));
        }
        // Gamma_{3,1} = (x0 delta)^2 (x0) = x0^2 x2, so Q_(2)(1) = 1 and Q_(2)(m) = m^2
        let q2 = extract_with(&t, SeqKind::Q, &s(&[2]), 8).unwrap();
        assert_eq!(q2.poly, BinomPoly::from_i64(&[0, 1, 2]));
        for m in 0..=8 {
            assert_eq!(q2.eval(m), BigInt::from(m * m));
        }
        assert!(p1.held_out_ok && p2.held_out_ok && q2.held_out_ok);
        assert_eq!(
            extract_p(&s(&[1, 2]), 4),
            Err(Error::InsufficientSamples { needed: 5, got: 4 })
        );
    }

    #[test]
    fn coefficient_extraction() {
        let t = GammaTable::build(5, CASE);
        let h = PartialSum::from_poly(&t.get(5, 3), 2, 5);
        for nu in shapes_of_weight(3).iter().chain(shapes_of_weight(4).iter()) {
            assert!(check_coeff_extraction(&h, nu), "{nu}");
        }
        let single = PartialSum { t: 1, n: 4, coeffs: [(s(&[1]), BigInt::one())].into_iter().collect() };
        assert!(check_coeff_extraction(&single, &s(&[1, 1])));
        assert!(check_coeff_extraction(&single, &s(&[2])));
        let zero = PartialSum { t: 2, n: 6, coeffs: BTreeMap::new() };
        assert!(check_coeff_extraction(&zero, &s(&[1, 2])));
    }

    #[test]
    fn delta_identity_sign() {
        let t = table_for(6, 10);
        assert!(delta_identity_failures(&t, SeqKind::P, 6, 9, LastTermSign::Derived).is_empty());
        assert!(delta_identity_failures(&t, SeqKind::Q, 6, 9, LastTermSign::Derived).is_empty());
        let plus = delta_identity_failures(&t, SeqKind::P, 6, 9, LastTermSign::Plus);
        assert!(!plus.is_empty());
        assert!(plus.iter().all(|(l, _)| l.weight() % 2 == 0));
    }

    #[test]
    fn propagation_statements() {
        for r in 2..=9 {
            assert!(packed_propagation(r).holds(), "r={r}");
        }
    }

    #[test]
    fn bundle_small() {
        let rep = verify_appendix_bundle(5, &[3]).unwrap();
        let bad: Vec<_> = rep.failures().collect();
        assert!(bad.is_empty(), "{bad:?}");
        let lc = rep.claim("r5/(1,2,2)/leading-coefficient").unwrap();
        assert_eq!(lc.verdict, crate::report::Verdict::Pass);
        assert_eq!(packed_leading_coefficient(5), Rat::new(BigInt::one(), BigInt::from(2)));
        assert_eq!(packed_leading_coefficient(1), Rat::one());
    }
}
