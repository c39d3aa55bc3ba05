//! U_p(A, L) as the quotient of A # U_p(L) by the two-sided ideal generated
//! by a.x - (ax). The ideal is kept as a reduced echelon basis whose pivots are
//! the largest smash monomials under (L-degree, no A-coefficient, word), so the
//! normal form keeps A-coefficients on the left where the relations allow.
//! Without an anchor this is U_p(L) itself.

use std::collections::{HashMap, VecDeque};
use std::sync::Mutex;

use serde_json::{json, Value};

use super::universal::AssocSuperalgebra;
use super::{l_degree, Gen, PbwElement, RewriteSystem, Word};
use crate::algebra::linalg::{axpy, is_zero_vec, zero_vec, Vector};
use crate::algebra::{BasisElem, LieSuperalgebra, PMap};
use crate::error::{Error, Result};
use crate::lierinehart::LRData;
use crate::report::Report;
use crate::superpoly::Parity;

/// Largest A # U_p(L) handled by the dense ideal computation.
pub const MAX_SMASH_DIM: usize = 1024;

#[derive(Debug)]
pub struct UpAL {
    sys: RewriteSystem,
    smash: Vec<Word>,
    index: HashMap<Word, usize>,
    rank: Vec<usize>,
    /// Reduced echelon basis of the ideal as (pivot, row).
    ideal: Vec<(usize, Vector)>,
    /// Smash indices that are not pivots, in smash order.
    basis: Vec<usize>,
    /// Reduced products of pairs of normal words, filled on demand.
    products: Mutex<HashMap<(Word, Word), Vector>>,
}

impl Clone for UpAL {
    fn clone(&self) -> Self {
        UpAL {
            sys: self.sys.clone(),
            smash: self.smash.clone(),
            index: self.index.clone(),
            rank: self.rank.clone(),
            ideal: self.ideal.clone(),
            basis: self.basis.clone(),
            products: Mutex::new(self.products.lock().expect("unpoisoned").clone()),
        }
    }
}

impl UpAL {
    /// U_p(L).
    pub fn lie(l: &LieSuperalgebra, pmap: &PMap) -> Result<Self> {
        Self::build(RewriteSystem::for_lie(l, pmap))
    }

    /// U_p(A, L) for a restricted bundle.
    pub fn bundle(d: &LRData) -> Result<Self> {
        Self::build(RewriteSystem::for_bundle(d)?)
    }

    fn build(sys: RewriteSystem) -> Result<Self> {
        let p = sys.prime();
        let mons = sys.monomials();
        if mons.len() > MAX_SMASH_DIM {
            return Err(Error::PreconditionViolated(format!(
                "A # U_p(L) has dimension {} > {MAX_SMASH_DIM}",
                mons.len()
            )));
        }
        let smash: Vec<Word> = mons.iter().map(|m| m.to_word()).collect();
        let index: HashMap<Word, usize> = smash.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut keyed: Vec<usize> = (0..smash.len()).collect();
        let key = |w: &Word| (l_degree(w), !matches!(w.first(), Some(Gen::A(_))), w.clone());
        keyed.sort_by_key(|&i| key(&smash[i]));
        let mut rank = vec![0; smash.len()];
        for (r, &i) in keyed.iter().enumerate() {
            rank[i] = r;
        }
        let mut up = UpAL { sys, smash, index, rank, ideal: Vec::new(), basis: Vec::new(), products: Mutex::default() };

        if let Some(d) = up.sys.bundle().cloned() {
            let unit = d.a.unit_index().unwrap();
            let gens: Vec<Gen> = (0..d.a.dim())
                .filter(|&i| i != unit)
                .map(Gen::A)
                .chain((0..d.l.dim()).map(Gen::L))
                .collect();
            let mut queue = VecDeque::new();
            for a in (0..d.a.dim()).filter(|&i| i != unit) {
                for x in 0..d.l.dim() {
                    let lhs = up.sys.normal_form(&PbwElement::word(vec![Gen::A(a), Gen::L(x)]));
                    let rhs = up.sys.l_element(&d.action[a][x]);
                    let r = lhs.add(p, &rhs.scale(p, p.neg(1)));
                    if let Some(v) = up.insert(&r) {
                        queue.push_back(v);
                    }
                }
            }
            while let Some(v) = queue.pop_front() {
                let e = up.element_of(&v);
                for &g in &gens {
                    let g = PbwElement::word(vec![g]);
                    for prod in [up.sys.mul(&g, &e), up.sys.mul(&e, &g)] {
                        if let Some(nv) = up.insert(&prod) {
                            queue.push_back(nv);
                        }
                    }
                }
            }
        }
        let pivots: Vec<usize> = up.ideal.iter().map(|(c, _)| *c).collect();
        up.basis = (0..up.smash.len()).filter(|i| !pivots.contains(i)).collect();
        if up.basis.is_empty() || !up.basis.contains(&up.index[&Vec::new()]) {
            return Err(Error::InvalidStructure("the relations collapse the unit".into()));
        }
        Ok(up)
    }

    pub fn system(&self) -> &RewriteSystem {
        &self.sys
    }

    pub fn smash_dim(&self) -> usize {
        self.smash.len()
    }

    pub fn ideal_dim(&self) -> usize {
        self.ideal.len()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Normal words of the quotient basis.
    pub fn basis_words(&self) -> Vec<Word> {
        self.basis.iter().map(|&i| self.smash[i].clone()).collect()
    }

    fn coords(&self, x: &PbwElement) -> Vector {
        let mut v = zero_vec(self.smash.len());
        for (w, &c) in &x.terms {
            let i = *self.index.get(w).expect("normal word outside the PBW basis");
            v[i] = self.sys.prime().add(v[i], c);
        }
        v
    }

    fn element_of(&self, v: &[u64]) -> PbwElement {
        let mut out = PbwElement::zero();
        for (i, &c) in v.iter().enumerate() {
            out.add_term(self.sys.prime(), self.smash[i].clone(), c);
        }
        out
    }

    fn reduce_vec(&self, mut v: Vector) -> Vector {
        let p = self.sys.prime();
        for (c, row) in &self.ideal {
            if v[*c] != 0 {
                let f = p.neg(v[*c]);
                axpy(p, &mut v, f, row);
            }
        }
        v
    }

    /// Adds a normal element to the ideal; returns it reduced when it was new.
    fn insert(&mut self, x: &PbwElement) -> Option<Vector> {
        let p = self.sys.prime();
        let mut v = self.reduce_vec(self.coords(x));
        if is_zero_vec(&v) {
            return None;
        }
        let piv = (0..v.len()).filter(|&i| v[i] != 0).max_by_key(|&i| self.rank[i]).unwrap();
        let inv = p.inv(v[piv]).unwrap();
        v.iter_mut().for_each(|c| *c = p.mul(*c, inv));
        for (_, row) in self.ideal.iter_mut() {
            if row[piv] != 0 {
                let f = p.neg(row[piv]);
                axpy(p, row, f, &v);
            }
        }
        self.ideal.push((piv, v.clone()));
        Some(v)
    }

    /// Canonical representative of x modulo the ideal; x is rewritten first.
    pub fn normal_form(&self, x: &PbwElement) -> PbwElement {
        let nf = self.sys.normal_form(x);
        self.element_of(&self.reduce_vec(self.coords(&nf)))
    }

    /// Canonical representative of an element already in smash normal form.
    pub fn reduce(&self, x: &PbwElement) -> PbwElement {
        self.element_of(&self.reduce_vec(self.coords(x)))
    }

    /// Product of two elements; both are first brought to normal form.
    pub fn mul(&self, x: &PbwElement, y: &PbwElement) -> PbwElement {
        let p = self.sys.prime();
        let (x, y) = (self.normal_form(x), self.normal_form(y));
        let mut acc = zero_vec(self.smash.len());
        for (u, &a) in &x.terms {
            for (v, &b) in &y.terms {
                axpy(p, &mut acc, p.mul(a, b), &self.word_product(u, v));
            }
        }
        self.element_of(&acc)
    }

    fn word_product(&self, u: &Word, v: &Word) -> Vector {
        let key = (u.clone(), v.clone());
        if let Some(r) = self.products.lock().expect("unpoisoned").get(&key) {
            return r.clone();
        }
        let mut w = u.clone();
        w.extend_from_slice(v);
        let r = self.reduce_vec(self.coords(&self.sys.normal_form(&PbwElement::word(w))));
        self.products.lock().expect("unpoisoned").insert(key, r.clone());
        r
    }

    /// Coordinates over the quotient basis.
    pub fn quotient_coords(&self, x: &PbwElement) -> Vector {
        let v = self.reduce_vec(self.coords(&self.sys.normal_form(x)));
        self.basis.iter().map(|&i| v[i]).collect()
    }

    pub fn from_quotient_coords(&self, c: &[u64]) -> PbwElement {
        let mut out = PbwElement::zero();
        for (k, &v) in c.iter().enumerate() {
            out.add_term(self.sys.prime(), self.smash[self.basis[k]].clone(), v);
        }
        out
    }

    pub fn i_a(&self, a: &[u64]) -> PbwElement {
        self.normal_form(&self.sys.a_element(a))
    }

    pub fn i_l(&self, x: &[u64]) -> PbwElement {
        self.normal_form(&self.sys.l_element(x))
    }

    fn word_parity(&self, w: &[Gen]) -> Parity {
        w.iter().fold(Parity::Even, |q, &g| q + self.sys.gen_parity(g))
    }

    /// The closed multiplication table on the quotient basis.
    pub fn to_assoc(&self) -> Result<AssocSuperalgebra> {
        let words = self.basis_words();
        let basis: Vec<BasisElem> = words
            .iter()
            .map(|w| {
                let name = if w.is_empty() { "1".to_string() } else { self.sys.format(&PbwElement::word(w.clone())) };
                BasisElem::new(name, self.word_parity(w))
            })
            .collect();
        let mut table = Vec::with_capacity(words.len());
        for u in &words {
            let row: Vec<Vector> = words
                .iter()
                .map(|v| {
                    let mut w = u.clone();
                    w.extend_from_slice(v);
                    self.quotient_coords(&PbwElement::word(w))
                })
                .collect();
            table.push(row);
        }
        let mut unit = zero_vec(words.len());
        unit[words.iter().position(|w| w.is_empty()).unwrap()] = 1;
        AssocSuperalgebra::new(self.sys.prime(), basis, table, unit)
    }
}

/// The displayed relations of U_p(A, L) on all basis pairs, the restricted
/// relation on even basis vectors, and i_L as a Lie morphism.
pub fn check_up_relations(d: &LRData) -> Result<Report> {
    let up = UpAL::bundle(d)?;
    let p = d.a.prime();
    let mut rep = Report::new(format!("up-relations/{}", d.name));
    let aname = |i: usize| d.a.basis()[i].name.clone();
    let lname = |j: usize| d.l.basis()[j].name.clone();
    let (na, nl) = (d.a.dim(), d.l.dim());
    let mut ws: [Vec<Value>; 5] = Default::default();

    let one = up.i_a(&d.a.unit().unwrap());
    for j in 0..nl {
        let x = d.l.basis_vec(j);
        if up.mul(&one, &up.i_l(&x)) != up.i_l(&x) && ws[0].len() < 5 {
            ws[0].push(json!({ "x": lname(j) }));
        }
        for i in 0..na {
            let a = d.a.basis_vec(i);
            let (ia, il) = (up.i_a(&a), up.i_l(&x));
            if up.mul(&ia, &il) != up.i_l(&d.act(&a, &x)) && ws[1].len() < 5 {
                ws[1].push(json!({ "a": aname(i), "x": lname(j) }));
            }
            let s = p.from_i64(-d.a.basis()[i].parity.koszul(d.l.basis()[j].parity));
            let comm = up.mul(&il, &ia).add(p, &up.mul(&ia, &il).scale(p, s));
            if comm != up.i_a(&d.anchor[j].apply(&a)) && ws[2].len() < 5 {
                ws[2].push(json!({ "a": aname(i), "x": lname(j) }));
            }
        }
        for k in 0..nl {
            let y = d.l.basis_vec(k);
            let s = p.from_i64(-d.l.basis()[j].parity.koszul(d.l.basis()[k].parity));
            let (ix, iy) = (up.i_l(&x), up.i_l(&y));
            let comm = up.mul(&ix, &iy).add(p, &up.mul(&iy, &ix).scale(p, s));
            if comm != up.i_l(&d.l.table()[j][k]) && ws[3].len() < 5 {
                ws[3].push(json!({ "x": lname(j), "y": lname(k) }));
            }
        }
    }
    let pm = d.pmap.as_ref().unwrap();
    for j in d.l.even_indices() {
        let power = up.normal_form(&PbwElement::word(vec![Gen::L(j); p.get() as usize]));
        if power != up.i_l(pm.image(j).unwrap()) && ws[4].len() < 5 {
            ws[4].push(json!({ "x": lname(j) }));
        }
    }
    let [w0, w1, w2, w3, w4] = ws;
    rep.check("up/unit", "i_A(1) i_L(x) = i_L(x)", w0.is_empty(), || Value::Array(w0));
    rep.check("up/a-action", "i_A(a) i_L(x) = i_L(ax)", w1.is_empty(), || Value::Array(w1));
    rep.check(
        "up/anchor",
        "i_A(rho(x)(a)) = i_L(x) i_A(a) - (-1)^{|a||x|} i_A(a) i_L(x)",
        w2.is_empty(),
        || Value::Array(w2),
    );
    rep.check("up/bracket", "i_L([x,y]) = i_L(x) i_L(y) - (-1)^{|x||y|} i_L(y) i_L(x)", w3.is_empty(), || {
        Value::Array(w3)
    });
    rep.check("up/restricted", "i_L(x)^p = i_L(x^[p]) for even x", w4.is_empty(), || Value::Array(w4));
    Ok(rep)
}
