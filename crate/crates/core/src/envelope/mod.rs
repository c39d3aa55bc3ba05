//! Restricted enveloping algebras. Words over the generators of A and L are
//! rewritten to PBW normal form in U_p(L), or in the smash product A # U_p(L)
//! when an anchor is present; U_p(A, L) is the quotient of the latter by the
//! ideal generated by a.x - (ax), see [`quotient`].

pub mod quotient;
pub mod suites;
pub mod universal;

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use rand::Rng;

use crate::algebra::linalg::Vector;
use crate::algebra::{LieSuperalgebra, PMap};
use crate::error::{Error, Result};
use crate::lierinehart::LRData;
use crate::scalar::Prime;
use crate::superpoly::Parity;

pub use quotient::{check_up_relations, UpAL};
pub use suites::{check_associativity, check_confluence, check_filtration, check_multiplication_table};
pub use universal::{endomorphism_maps, factor_through, AssocSuperalgebra, Factorization};

/// A generator: a basis vector of A or of L.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    A(usize),
    L(usize),
}

pub type Word = Vec<Gen>;

/// Linear combination of words with coefficients in F_p; no zero coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PbwElement {
    pub terms: BTreeMap<Word, u64>,
}

impl PbwElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, 1);
        PbwElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, p: Prime, w: Word, c: u64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(c % p.get());
            }
            Entry::Occupied(mut o) => {
                let n = p.add(*o.get(), c);
                if n == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = n;
                }
            }
        }
    }

    pub fn add(&self, p: Prime, o: &PbwElement) -> PbwElement {
        let mut out = self.clone();
        for (w, &c) in &o.terms {
            out.add_term(p, w.clone(), c);
        }
        out
    }

    pub fn scale(&self, p: Prime, c: u64) -> PbwElement {
        let mut out = PbwElement::zero();
        for (w, &v) in &self.terms {
            out.add_term(p, w.clone(), p.mul(c, v));
        }
        out
    }

    /// Concatenation product of the underlying words (not normalized).
    pub fn concat(&self, p: Prime, o: &PbwElement) -> PbwElement {
        let mut out = PbwElement::zero();
        for (u, &a) in &self.terms {
            for (v, &b) in &o.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(p, w, p.mul(a, b));
            }
        }
        out
    }

    /// Largest number of L-letters in a term.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|w| l_degree(w)).max().unwrap_or(0)
    }
}

pub fn l_degree(w: &[Gen]) -> usize {
    w.iter().filter(|g| matches!(g, Gen::L(_))).count()
}

/// PBW monomial: an optional non-unit basis vector of A followed by
/// e_1^{k_1} ... e_m^{k_m} f_1^{s_1} ... with k_i < p and s_j in {0, 1}.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PbwMonomial {
    pub coeff: Option<usize>,
    pub exps: Vec<u32>,
}

impl PbwMonomial {
    pub fn to_word(&self) -> Word {
        let mut w: Word = self.coeff.map(Gen::A).into_iter().collect();
        for (i, &k) in self.exps.iter().enumerate() {
            w.extend(std::iter::repeat(Gen::L(i)).take(k as usize));
        }
        w
    }
}

/// Anchor data for the smash product A # U_p(L).
#[derive(Debug, Clone)]
struct Anchored {
    data: LRData,
    unit: usize,
}

/// Rules (i) swap, (ii) e^p -> e^[p], (iii) f f -> [f,f]/2 on L-letters; with
/// anchor data also (iv) a b -> ab and (v) x a -> (-1)^{|a||x|} a x + rho(x)(a).
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    l: LieSuperalgebra,
    pmap: PMap,
    lr: Option<Anchored>,
    half: u64,
}

impl RewriteSystem {
    /// U_p(L); basis order is the declaration order of L.
    pub fn for_lie(l: &LieSuperalgebra, pmap: &PMap) -> Self {
        let p = l.prime();
        RewriteSystem { l: l.clone(), pmap: pmap.clone(), lr: None, half: p.inv(2).unwrap() }
    }

    /// A # U_p(L) for a restricted bundle.
    pub fn for_bundle(d: &LRData) -> Result<Self> {
        let pmap = d.pmap.clone().ok_or_else(|| Error::PreconditionViolated(format!("{} has no p-map", d.name)))?;
        let mut sys = Self::for_lie(&d.l, &pmap);
        let unit = d.a.unit_index().ok_or_else(|| Error::InvalidStructure("A must be unital".into()))?;
        sys.lr = Some(Anchored { data: d.clone(), unit });
        Ok(sys)
    }

    pub fn prime(&self) -> Prime {
        self.l.prime()
    }

    pub fn lie(&self) -> &LieSuperalgebra {
        &self.l
    }

    pub fn pmap(&self) -> &PMap {
        &self.pmap
    }

    pub fn bundle(&self) -> Option<&LRData> {
        self.lr.as_ref().map(|a| &a.data)
    }

    fn lpar(&self, i: usize) -> Parity {
        self.l.basis()[i].parity
    }

    fn apar(&self, i: usize) -> Parity {
        self.lr.as_ref().unwrap().data.a.basis()[i].parity
    }

    pub fn gen_parity(&self, g: Gen) -> Parity {
        match g {
            Gen::A(i) => self.apar(i),
            Gen::L(i) => self.lpar(i),
        }
    }

    /// Words for the basis expansion of an element of L, one letter each.
    pub fn l_element(&self, v: &[u64]) -> PbwElement {
        let mut out = PbwElement::zero();
        for (i, &c) in v.iter().enumerate() {
            out.add_term(self.prime(), vec![Gen::L(i)], c);
        }
        out
    }

    /// Words for an element of A; the unit becomes the empty word.
    pub fn a_element(&self, v: &[u64]) -> PbwElement {
        let unit = self.lr.as_ref().map(|a| a.unit);
        let mut out = PbwElement::zero();
        for (i, &c) in v.iter().enumerate() {
            let w = if Some(i) == unit { vec![] } else { vec![Gen::A(i)] };
            out.add_term(self.prime(), w, c);
        }
        out
    }

    /// Positions where some rule applies.
    fn redexes(&self, w: &[Gen]) -> Vec<usize> {
        let p = self.prime().get() as usize;
        let unit = self.lr.as_ref().map(|a| a.unit);
        let mut out = Vec::new();
        for i in 0..w.len() {
            if let Gen::A(a) = w[i] {
                if Some(a) == unit {
                    out.push(i);
                    continue;
                }
            }
            if i + 1 >= w.len() {
                continue;
            }
            let hit = match (w[i], w[i + 1]) {
                (Gen::A(_), Gen::A(_)) | (Gen::L(_), Gen::A(_)) => true,
                (Gen::L(x), Gen::L(y)) if x > y => true,
                (Gen::L(x), Gen::L(y)) if x == y => match self.lpar(x) {
                    Parity::Odd => true,
                    Parity::Even => i + p <= w.len() && w[i..i + p].iter().all(|&g| g == Gen::L(x)),
                },
                _ => false,
            };
            if hit {
                out.push(i);
            }
        }
        out
    }

    pub fn is_normal(&self, w: &[Gen]) -> bool {
        self.redexes(w).is_empty()
    }

    /// Replacement for the redex at position `i`, with the number of letters it consumes.
    fn rewrite_at(&self, w: &[Gen], i: usize) -> (PbwElement, usize) {
        let p = self.prime();
        let unit = self.lr.as_ref().map(|a| a.unit);
        if let Gen::A(a) = w[i] {
            if Some(a) == unit {
                return (PbwElement::word(vec![]), 1);
            }
        }
        match (w[i], w[i + 1]) {
            (Gen::A(a), Gen::A(b)) => {
                let alg = &self.lr.as_ref().unwrap().data.a;
                (self.a_element(&alg.mul(&alg.basis_vec(a), &alg.basis_vec(b))), 2)
            }
            (Gen::L(x), Gen::A(a)) => {
                let d = &self.lr.as_ref().unwrap().data;
                let s = p.from_i64(self.apar(a).koszul(self.lpar(x)));
                let mut out = PbwElement::word(vec![Gen::A(a), Gen::L(x)]).scale(p, s);
                out = out.add(p, &self.a_element(&d.anchor[x].apply(&d.a.basis_vec(a))));
                (out, 2)
            }
            (Gen::L(x), Gen::L(y)) if x > y => {
                let s = p.from_i64(self.lpar(x).koszul(self.lpar(y)));
                let out = PbwElement::word(vec![Gen::L(y), Gen::L(x)]).scale(p, s);
                (out.add(p, &self.l_element(&self.l.table()[x][y])), 2)
            }
            (Gen::L(x), Gen::L(_)) => match self.lpar(x) {
                Parity::Odd => {
                    let sq: Vector = self.l.table()[x][x].iter().map(|&c| p.mul(self.half, c)).collect();
                    (self.l_element(&sq), 2)
                }
                Parity::Even => (self.l_element(self.pmap.image(x).unwrap()), p.get() as usize),
            },
            _ => unreachable!("not a redex"),
        }
    }

    fn splice(&self, w: &[Gen], i: usize, (rep, len): (PbwElement, usize), c: u64, out: &mut BTreeMap<Word, u64>) {
        let p = self.prime();
        for (mid, &k) in &rep.terms {
            let mut nw = w[..i].to_vec();
            nw.extend_from_slice(mid);
            nw.extend_from_slice(&w[i + len..]);
            let e = out.entry(nw).or_insert(0);
            *e = p.add(*e, p.mul(c, k));
        }
    }

    /// Exhaustive rewriting, leftmost redex of the smallest pending word first.
    pub fn normal_form(&self, x: &PbwElement) -> PbwElement {
        self.reduce(x, |_, _| 0)
    }

    /// Exhaustive rewriting with the pending word and the redex chosen at random.
    pub fn normal_form_random<R: Rng>(&self, x: &PbwElement, rng: &mut R) -> PbwElement {
        let mut pick = |n: usize, _: bool| rng.gen_range(0..n);
        self.reduce(x, &mut pick)
    }

    /// `choose(n, is_word)` picks one of `n` pending words or redexes.
    fn reduce<F: FnMut(usize, bool) -> usize>(&self, x: &PbwElement, mut choose: F) -> PbwElement {
        let p = self.prime();
        let mut pending: BTreeMap<Word, u64> = x.terms.clone();
        let mut done = PbwElement::zero();
        while !pending.is_empty() {
            let k = choose(pending.len(), true);
            let w = pending.keys().nth(k).unwrap().clone();
            let c = pending.remove(&w).unwrap();
            if c == 0 {
                continue;
            }
            let rs = self.redexes(&w);
            if rs.is_empty() {
                done.add_term(p, w, c);
                continue;
            }
            let i = rs[choose(rs.len(), false)];
            let rep = self.rewrite_at(&w, i);
            self.splice(&w, i, rep, c, &mut pending);
        }
        done
    }

    /// Normal form of the product of two elements.
    pub fn mul(&self, x: &PbwElement, y: &PbwElement) -> PbwElement {
        self.normal_form(&x.concat(self.prime(), y))
    }

    /// All PBW monomials over L (no A-coefficient), in a fixed order.
    pub fn lie_monomials(&self) -> Vec<PbwMonomial> {
        let p = self.prime().get() as u32;
        let bounds: Vec<u32> = (0..self.l.dim()).map(|i| if self.lpar(i) == Parity::Even { p } else { 2 }).collect();
        let mut out = vec![PbwMonomial { coeff: None, exps: vec![] }];
        for &b in &bounds {
            out = out
                .into_iter()
                .flat_map(|m| {
                    (0..b).map(move |k| {
                        let mut e = m.exps.clone();
                        e.push(k);
                        PbwMonomial { coeff: None, exps: e }
                    })
                })
                .collect();
        }
        out.sort_by_key(|m| (m.exps.iter().sum::<u32>(), std::cmp::Reverse(m.exps.clone())));
        out
    }

    /// PBW basis of U_p(L), or of A # U_p(L) when anchored.
    pub fn monomials(&self) -> Vec<PbwMonomial> {
        let lm = self.lie_monomials();
        match &self.lr {
            None => lm,
            Some(an) => {
                let mut coeffs: Vec<Option<usize>> = vec![None];
                coeffs.extend((0..an.data.a.dim()).filter(|&i| i != an.unit).map(Some));
                lm.iter()
                    .flat_map(|m| coeffs.iter().map(move |&c| PbwMonomial { coeff: c, exps: m.exps.clone() }))
                    .collect()
            }
        }
    }

    pub fn monomial_of(&self, w: &[Gen]) -> Option<PbwMonomial> {
        if !self.is_normal(w) {
            return None;
        }
        let mut exps = vec![0u32; self.l.dim()];
        let mut coeff = None;
        for (k, &g) in w.iter().enumerate() {
            match g {
                Gen::A(a) if k == 0 => coeff = Some(a),
                Gen::A(_) => return None,
                Gen::L(i) => exps[i] += 1,
            }
        }
        Some(PbwMonomial { coeff, exps })
    }

    /// Space-separated generator names; L names take precedence over A names.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let mut w = Vec::new();
        for tok in s.split_whitespace() {
            if let Some(i) = self.l.index_of(tok) {
                w.push(Gen::L(i));
            } else if let Some(i) = self.lr.as_ref().and_then(|a| a.data.a.index_of(tok)) {
                w.push(Gen::A(i));
            } else {
                return Err(Error::Parse(format!("unknown generator {tok}")));
            }
        }
        Ok(w)
    }

    pub fn gen_name(&self, g: Gen) -> &str {
        match g {
            Gen::L(i) => &self.l.basis()[i].name,
            Gen::A(i) => &self.lr.as_ref().unwrap().data.a.basis()[i].name,
        }
    }

    /// `c w` terms joined by " + ", powers as `x^k`, coefficient 1 omitted.
    pub fn format(&self, x: &PbwElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<(&Word, u64)> = x.terms.iter().map(|(w, &c)| (w, c)).collect();
        terms.sort_by_key(|(w, _)| (std::cmp::Reverse(l_degree(w)), (*w).clone()));
        let mut out = String::new();
        for (k, (w, c)) in terms.into_iter().enumerate() {
            if k > 0 {
                out.push_str(" + ");
            }
            let body = self.format_word(w);
            match (c, body.is_empty()) {
                (_, true) => write!(out, "{c}").unwrap(),
                (1, false) => out.push_str(&body),
                (_, false) => write!(out, "{c} {body}").unwrap(),
            }
        }
        out
    }

    fn format_word(&self, w: &[Gen]) -> String {
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            let name = self.gen_name(w[i]);
            parts.push(if j - i == 1 { name.to_string() } else { format!("{name}^{}", j - i) });
            i = j;
        }
        parts.join(" ")
    }
}

/// dim U_p(L) = p^{dim L_even} 2^{dim L_odd}.
pub fn dimension(l: &LieSuperalgebra) -> BigUint {
    let (ne, no) = l.sdim();
    BigUint::from(l.prime().get()).pow(ne as u32) * BigUint::from(2u32).pow(no as u32)
}

#[cfg(test)]
mod tests;
