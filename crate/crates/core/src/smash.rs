//! The smash product V#H with H = Z[delta], the Gamma_{k,j} components of
//! (x0#delta)^k, and their structural identities.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::report::Report;
use crate::scalar::{is_divisible, Rat};
use crate::superpoly::{Coeff, Parity, ParityCase, SuperPoly};

/// Finite sum of v_j # delta^j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmashElement<C: Coeff = BigInt> {
    case: ParityCase,
    comps: BTreeMap<u32, SuperPoly<C>>,
}

impl<C: Coeff> SmashElement<C> {
    pub fn zero(case: ParityCase) -> Self {
        SmashElement { case, comps: BTreeMap::new() }
    }

    /// 1 # 1
    pub fn one(case: ParityCase) -> Self {
        Self::term(SuperPoly::one(case), 0)
    }

    /// v # delta^j
    pub fn term(v: SuperPoly<C>, j: u32) -> Self {
        let mut s = Self::zero(v.case());
        s.add_component(j, v);
        s
    }

    pub fn case(&self) -> ParityCase {
        self.case
    }

    pub fn add_component(&mut self, j: u32, v: SuperPoly<C>) {
        if v.is_zero() {
            return;
        }
        let merged = match self.comps.remove(&j) {
            Some(old) => &old + &v,
            None => v,
        };
        if !merged.is_zero() {
            self.comps.insert(j, merged);
        }
    }

    pub fn component(&self, j: u32) -> SuperPoly<C> {
        self.comps.get(&j).cloned().unwrap_or_else(|| SuperPoly::zero(self.case))
    }

    pub fn components(&self) -> impl Iterator<Item = (u32, &SuperPoly<C>)> {
        self.comps.iter().map(|(j, v)| (*j, v))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Parity of the homogeneous element, |v_j| + j|delta|.
    pub fn parity(&self) -> Option<Parity> {
        let mut out: Option<Parity> = None;
        for (j, v) in &self.comps {
            let pv = v.parity()?;
            let q = pv + Parity::from_bit(*j as u64 * self.case.delta.bit());
            match out {
                None => out = Some(q),
                Some(o) if o != q => return None,
                _ => {}
            }
        }
        Some(out.unwrap_or(Parity::Even))
    }
}

/// Left multiplication by (v#delta):
/// (v#delta)(w#h) = (-1)^{|w||delta|} vw # delta h + v delta(w) # h.
pub fn smash_mul_primitive<C: Coeff>(
    v: &SuperPoly<C>,
    wh: &SmashElement<C>,
) -> Result<SmashElement<C>> {
    if v.case() != wh.case() {
        return Err(Error::ParityCaseMismatch);
    }
    let mut out = SmashElement::zero(wh.case());
    for (h, w) in wh.components() {
        out.add_component(h + 1, v.try_mul(&w.twist())?);
        out.add_component(h, v.try_mul(&w.apply_delta())?);
    }
    Ok(out)
}

/// Gamma_{k,j} for 0 <= k <= k_max, optionally only on the band k - j <= max_diag.
#[derive(Debug, Clone)]
pub struct GammaTable {
    case: ParityCase,
    k_max: u32,
    max_diag: Option<u32>,
    rows: Vec<Vec<SuperPoly>>,
}

impl GammaTable {
    pub fn build(k_max: u32, case: ParityCase) -> Self {
        Self::build_inner(k_max, case, None)
    }

    /// Only entries with k - j <= max_diag; enough for coefficient extraction
    /// along fixed diagonals at large k.
    pub fn build_band(k_max: u32, case: ParityCase, max_diag: u32) -> Self {
        Self::build_inner(k_max, case, Some(max_diag))
    }

    fn build_inner(k_max: u32, case: ParityCase, max_diag: Option<u32>) -> Self {
        let x0 = SuperPoly::<BigInt>::var(case, 0);
        let mut rows: Vec<Vec<SuperPoly>> = vec![vec![SuperPoly::one(case)]];
        for k in 1..=k_max {
            let prev = &rows[k as usize - 1];
            let get = |j: i64| -> Option<&SuperPoly> {
                if j < 0 {
                    None
                } else {
                    prev.get(j as usize).filter(|p| !p.is_zero())
                }
            };
            let mut row = Vec::with_capacity(k as usize + 1);
            for j in 0..=k as i64 {
                let in_band = max_diag.map_or(true, |d| (k as i64 - j) <= d as i64);
                let mut acc = SuperPoly::zero(case);
                if in_band && k >= 1 && j >= 1 {
                    if let Some(g) = get(j) {
                        acc = &acc + &(&x0 * &g.apply_delta());
                    }
                    if let Some(g) = get(j - 1) {
                        acc = &acc + &(&x0 * &g.twist());
                    }
                }
                row.push(acc);
            }
            rows.push(row);
        }
        GammaTable { case, k_max, max_diag, rows }
    }

    pub fn case(&self) -> ParityCase {
        self.case
    }

    pub fn k_max(&self) -> u32 {
        self.k_max
    }

    /// Whether (k, j) lies inside the computed region.
    pub fn covers(&self, k: u32, j: i64) -> bool {
        k <= self.k_max && self.max_diag.map_or(true, |d| k as i64 - j <= d as i64)
    }

    /// Gamma_{k,j} on the extended domain: zero for j <= 0 or j > k, Gamma_{0,0} = 1.
    pub fn get(&self, k: u32, j: i64) -> SuperPoly {
        assert!(self.covers(k, j) || j > k as i64 || j < 0, "({k},{j}) outside computed band");
        if j < 0 || j > k as i64 || k > self.k_max {
            return SuperPoly::zero(self.case);
        }
        self.rows[k as usize][j as usize].clone()
    }

    pub fn get_ref(&self, k: u32, j: u32) -> Option<&SuperPoly> {
        self.rows.get(k as usize).and_then(|r| r.get(j as usize))
    }

    pub fn records(&self) -> Vec<GammaRecord> {
        let mut out = Vec::new();
        for k in 1..=self.k_max {
            for j in 1..=k {
                if self.covers(k, j as i64) {
                    out.push(GammaRecord {
                        k,
                        j: j as i64,
                        case: self.case.tag(),
                        polynomial: self.rows[k as usize][j as usize].to_string(),
                    });
                }
            }
        }
        out
    }
}

/// One emitted Gamma entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaRecord {
    pub k: u32,
    pub j: i64,
    pub case: String,
    pub polynomial: String,
}

pub fn gamma_recursive(k: u32, j: i64, case: ParityCase) -> SuperPoly {
    GammaTable::build(k, case).get(k, j)
}

/// Components of (x0#delta)^k by repeated primitive left multiplication.
pub fn gamma_oracle(k: u32, case: ParityCase) -> BTreeMap<u32, SuperPoly> {
    let x0 = SuperPoly::<BigInt>::var(case, 0);
    let mut acc = SmashElement::one(case);
    for _ in 0..k {
        acc = smash_mul_primitive(&x0, &acc).expect("same case");
    }
    acc.components().map(|(j, v)| (j, v.clone())).collect()
}

/// Outcome of the two-step identities at one (k, j).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwoStep {
    /// Gamma_{k,j} = x0^2 G_{k-2,j-2} + (-1)^{k-j} x0^2 delta(G_{k-2,j-1}) + x0 delta(G_{k-1,j})
    pub one_step_substituted: bool,
    /// Gamma_{k,j} = x0^2 G_{k-2,j-2} + x0^2 delta^2(G_{k-2,j})
    ///             + x0 x1 (delta(G_{k-2,j}) - (-1)^{k-j} G_{k-2,j-1})
    pub second_order: bool,
    /// The second-order form with G_{k-2,j-1} in its leading term.
    pub second_order_shifted_lead: bool,
}

pub fn two_step_report(t: &GammaTable, k: u32, j: i64) -> Result<TwoStep> {
    if t.case() != ParityCase::EVEN_ODD {
        return Err(Error::PreconditionViolated("two-step identities need x0 even, delta odd".into()));
    }
    if k < 3 || j < 2 || j > k as i64 - 1 || k > t.k_max() {
        return Err(Error::IndexOutOfRange(format!("(k,j)=({k},{j})")));
    }
    let case = t.case();
    let x0 = SuperPoly::<BigInt>::var(case, 0);
    let x0sq = &x0 * &x0;
    let x0x1 = &x0 * &SuperPoly::var(case, 1);
    let sign = if (k as i64 - j) % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let lhs = t.get(k, j);
    let g = |kk: u32, jj: i64| t.get(kk, jj);

    let f = &(&(&x0sq * &g(k - 2, j - 2)) + &(&x0sq * &g(k - 2, j - 1).apply_delta()).scale(&sign))
        + &(&x0 * &g(k - 1, j).apply_delta());
    let tail = &(&x0sq * &g(k - 2, j).apply_delta_n(2))
        + &(&x0x1 * &(&g(k - 2, j).apply_delta() - &g(k - 2, j - 1).scale(&sign)));
    let uuu = &(&x0sq * &g(k - 2, j - 2)) + &tail;
    let shifted = &(&x0sq * &g(k - 2, j - 1)) + &tail;
    Ok(TwoStep {
        one_step_substituted: lhs == f,
        second_order: lhs == uuu,
        second_order_shifted_lead: lhs == shifted,
    })
}

/// Both two-step identities hold at (k, j) in the even/odd case.
pub fn check_two_step_identities(k: u32, j: i64, case: ParityCase) -> Result<bool> {
    if case != ParityCase::EVEN_ODD {
        return Err(Error::PreconditionViolated("two-step identities need x0 even, delta odd".into()));
    }
    let t = GammaTable::build(k, case);
    let r = two_step_report(&t, k, j)?;
    Ok(r.one_step_substituted && r.second_order)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VanishingEntry {
    pub j: u32,
    pub in_claim_range: bool,
    pub divisible: bool,
    pub terms: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    pub p: u64,
    pub entries: Vec<VanishingEntry>,
}

impl VanishingReport {
    /// Every entry with 3 <= j <= 2p-1 vanishes mod p.
    pub fn all_claimed_vanish(&self) -> bool {
        self.entries.iter().filter(|e| e.in_claim_range).all(|e| e.divisible)
    }
}

/// Check every coefficient of Gamma_{2p,j} modulo p, for all 1 <= j <= 2p.
pub fn gamma_mod_p_vanishing(p: u64, table: Option<&GammaTable>) -> Result<VanishingReport> {
    crate::scalar::Prime::new(p)?;
    let owned;
    let t = match table {
        Some(t) if t.case() == ParityCase::EVEN_ODD && t.k_max() >= 2 * p as u32 => t,
        _ => {
            owned = GammaTable::build(2 * p as u32, ParityCase::EVEN_ODD);
            &owned
        }
    };
    let k = 2 * p as u32;
    let entries = (1..=k)
        .map(|j| {
            let g = t.get(k, j as i64);
            VanishingEntry {
                j,
                in_claim_range: j >= 3 && j < k,
                divisible: is_zero_mod(&g, p),
                terms: g.len(),
            }
        })
        .collect();
    Ok(VanishingReport { p, entries })
}

/// A module M over V#H: x_i acts through f(x_i) = alpha^i(a), delta through beta.
pub trait VHModule {
    type Elem: Clone;
    /// Confirms beta(a m) = alpha(a) m + (-1)^{|a||beta|} a beta(m) on a basis.
    fn validate(&self) -> Result<()>;
    fn zero(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    /// f(v) m
    fn act_poly(&self, v: &SuperPoly<Rat>, m: &Self::Elem) -> Result<Self::Elem>;
    /// beta(m)
    fn beta(&self, m: &Self::Elem) -> Self::Elem;
}

/// (sum v_j # delta^j) m = sum f(v_j) beta^j(m).
pub fn apply_to_module<C: Coeff, M: VHModule>(
    s: &SmashElement<C>,
    module: &M,
    m: &M::Elem,
) -> Result<M::Elem> {
    module.validate()?;
    let mut out = module.zero();
    let mut powers: Vec<M::Elem> = vec![m.clone()];
    for (j, v) in s.components() {
        while powers.len() <= j as usize {
            let next = module.beta(powers.last().unwrap());
            powers.push(next);
        }
        let term = module.act_poly(&v.to_rat(), &powers[j as usize])?;
        out = module.add(&out, &term);
    }
    Ok(out)
}

/// V acting on itself with a = x0 and alpha = beta = delta; f is the identity.
#[derive(Debug, Clone, Copy)]
pub struct FreeModel {
    pub case: ParityCase,
}

impl VHModule for FreeModel {
    type Elem = SuperPoly<Rat>;

    fn validate(&self) -> Result<()> {
        Ok(())
    }

    fn zero(&self) -> Self::Elem {
        SuperPoly::zero(self.case)
    }

    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        x + y
    }

    fn act_poly(&self, v: &SuperPoly<Rat>, m: &Self::Elem) -> Result<Self::Elem> {
        v.try_mul(m)
    }

    fn beta(&self, m: &Self::Elem) -> Self::Elem {
        m.apply_delta()
    }
}

/// Y_i = (x0 delta)^i (x0) in the free model.
pub fn y_chain(n: usize, case: ParityCase) -> Vec<SuperPoly> {
    let x0 = SuperPoly::<BigInt>::var(case, 0);
    let mut out = vec![x0.clone()];
    for _ in 0..n {
        let next = &x0 * &out.last().unwrap().apply_delta();
        out.push(next);
    }
    out
}

pub fn is_zero_mod(p: &SuperPoly, m: u64) -> bool {
    p.terms().all(|(_, c)| is_divisible(c, m))
}

pub fn int_poly_is_zero(p: &SuperPoly) -> bool {
    p.terms().all(|(_, c)| c.is_zero())
}

/// Oracle agreement in all four cases, the degenerate cases, the two-step
/// identities, and mod-p vanishing of Gamma_{2p,j} for each p in `primes`.
pub fn verify_gamma_suite(k_max: u32, primes: &[u64]) -> Result<Report> {
    let mut rep = Report::new("gamma");
    for case in ParityCase::ALL {
        let t = GammaTable::build(k_max, case);
        let mut bad = Vec::new();
        for k in 0..=k_max {
            let oracle = gamma_oracle(k, case);
            for j in 0..=k {
                let want = oracle.get(&j).cloned().unwrap_or_else(|| SuperPoly::zero(case));
                if t.get(k, j as i64) != want && bad.len() < 5 {
                    bad.push(json!({ "k": k, "j": j }));
                }
            }
        }
        rep.check_case(
            format!("gamma/oracle/{}", case.tag()),
            case.tag(),
            "the recursion agrees with repeated left multiplication by x0#delta",
            bad.is_empty(),
            || Value::Array(bad),
        );
    }

    let t = GammaTable::build(k_max, ParityCase::ODD_EVEN);
    let bad: Vec<Value> = (3..=k_max)
        .flat_map(|k| (1..=k).map(move |j| (k, j)))
        .filter(|&(k, j)| !t.get(k, j as i64).is_zero())
        .map(|(k, j)| json!({ "k": k, "j": j }))
        .collect();
    rep.check("gamma/odd-even-vanishes", "odd x0, even delta: Gamma_{k,j} = 0 for k >= 3", bad.is_empty(), || {
        Value::Array(bad)
    });

    let case = ParityCase::ODD_ODD;
    let t = GammaTable::build(k_max, case);
    let mut bad = Vec::new();
    for k in 3..=k_max {
        let lead = SuperPoly::<BigInt>::one(case).mul_var_left(1, k - 1).mul_var_left(0, 1);
        if t.get(k, 1) != lead {
            bad.push(json!({ "k": k, "j": 1, "got": t.get(k, 1).to_string() }));
        }
        for j in 2..=k {
            if !t.get(k, j as i64).is_zero() {
                bad.push(json!({ "k": k, "j": j }));
            }
        }
    }
    rep.check(
        "gamma/odd-odd",
        "odd x0, odd delta: Gamma_{k,1} = x0 x1^{k-1} and Gamma_{k,j} = 0 for j >= 2",
        bad.is_empty(),
        || Value::Array(bad),
    );

    let t = GammaTable::build(k_max, ParityCase::EVEN_ODD);
    let mut bad = Vec::new();
    for k in 3..=k_max {
        for j in 2..k as i64 {
            let r = two_step_report(&t, k, j)?;
            if !(r.one_step_substituted && r.second_order) && bad.len() < 5 {
                bad.push(json!({ "k": k, "j": j, "detail": r }));
            }
        }
    }
    rep.check(
        "gamma/two-step",
        "Gamma_{k,j} through Gamma_{k-2,*}: substituted recursion and second-order form",
        bad.is_empty(),
        || Value::Array(bad),
    );

    for &p in primes {
        let shared = (2 * p as u32 <= k_max).then_some(&t);
        let v = gamma_mod_p_vanishing(p, shared)?;
        rep.check(
            format!("gamma/mod-p/p{p}"),
            "Gamma_{2p,j} = 0 mod p for 3 <= j <= 2p-1",
            v.all_claimed_vanish(),
            || json!(v.entries.iter().filter(|e| e.in_claim_range && !e.divisible).collect::<Vec<_>>()),
        );
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = SuperPoly<BigInt>;

    fn p(case: ParityCase, s: &str) -> P {
        P::parse(case, s).unwrap()
    }

    #[test]
    fn primitive_product_examples() {
        let c = ParityCase::EVEN_ODD;
        let x0 = P::var(c, 0);
        let r = smash_mul_primitive(&x0, &SmashElement::one(c)).unwrap();
        assert_eq!(r, SmashElement::term(x0.clone(), 1));

        let r = smash_mul_primitive(&x0, &SmashElement::term(x0.clone(), 0)).unwrap();
        let mut want = SmashElement::term(p(c, "x0^2"), 1);
        want.add_component(0, p(c, "x0*x1"));
        assert_eq!(r, want);

        let c = ParityCase::ODD_EVEN;
        let x0 = P::var(c, 0);
        let r = smash_mul_primitive(&x0, &SmashElement::term(x0.clone(), 1)).unwrap();
        assert_eq!(r, SmashElement::term(p(c, "x0*x1"), 1));
    }

    #[test]
    fn mismatched_cases_rejected() {
        let x0 = P::var(ParityCase::EVEN_ODD, 0);
        let e = SmashElement::<BigInt>::one(ParityCase::ODD_ODD);
        assert_eq!(smash_mul_primitive(&x0, &e), Err(Error::ParityCaseMismatch));
    }

    #[test]
    fn recursion_examples() {
        for case in ParityCase::ALL {
            assert_eq!(gamma_recursive(1, 1, case), P::var(case, 0));
        }
        assert_eq!(gamma_recursive(3, 2, ParityCase::EVEN_ODD), p(ParityCase::EVEN_ODD, "x0^2*x1"));
        assert_eq!(gamma_recursive(4, 1, ParityCase::ODD_ODD), p(ParityCase::ODD_ODD, "x0*x1^3"));
        assert!(gamma_recursive(3, 1, ParityCase::ODD_EVEN).is_zero());
        assert_eq!(
            gamma_recursive(4, 3, ParityCase::EVEN_ODD),
            p(ParityCase::EVEN_ODD, "2*x0^3*x1")
        );
        assert!(gamma_recursive(3, 5, ParityCase::EVEN_ODD).is_zero());
        assert!(gamma_recursive(3, 0, ParityCase::EVEN_ODD).is_zero());
    }

    #[test]
    fn oracle_examples() {
        let c = ParityCase::EVEN_ODD;
        let o = gamma_oracle(2, c);
        assert_eq!(o.len(), 2);
        assert_eq!(o[&1], p(c, "x0*x1"));
        assert_eq!(o[&2], p(c, "x0^2"));
        let o = gamma_oracle(3, ParityCase::ODD_ODD);
        assert_eq!(o.len(), 1);
        assert_eq!(o[&1], p(ParityCase::ODD_ODD, "x0*x1^2"));
    }

    #[test]
    fn two_step_examples() {
        for (k, j) in [(5, 3), (3, 2), (10, 5)] {
            assert!(check_two_step_identities(k, j, ParityCase::EVEN_ODD).unwrap());
        }
        assert!(check_two_step_identities(5, 3, ParityCase::ODD_ODD).is_err());
        assert!(check_two_step_identities(5, 5, ParityCase::EVEN_ODD).is_err());
    }

    #[test]
    fn mod_p_small() {
        let r = gamma_mod_p_vanishing(3, None).unwrap();
        assert!(r.all_claimed_vanish());
        let six = r.entries.iter().find(|e| e.j == 6).unwrap();
        assert!(!six.in_claim_range && !six.divisible);
    }

    #[test]
    fn band_matches_full_table() {
        let c = ParityCase::EVEN_ODD;
        let full = GammaTable::build(12, c);
        let band = GammaTable::build_band(12, c, 3);
        for k in 1..=12u32 {
            for j in (k as i64 - 3).max(1)..=k as i64 {
                assert_eq!(full.get(k, j), band.get(k, j));
            }
        }
    }

    #[test]
    fn gamma_suite_passes() {
        let r = verify_gamma_suite(10, &[3, 5]).unwrap();
        assert!(r.passed(), "{:?}", r.failures().map(|c| &c.id).collect::<Vec<_>>());
        assert_eq!(r.claims.len(), 4 + 3 + 2);
    }
}
