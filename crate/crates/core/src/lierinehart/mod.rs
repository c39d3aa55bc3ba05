//! Lie-Rinehart superalgebras (A, L, rho), their modules, and the restricted
//! identities tying the p|2p-map of L to the A-module structure.

pub mod builtins;
pub mod schema;
pub mod semidirect;
pub mod worked;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::linalg::{axpy, is_zero_vec, zero_vec, Mat, Vector};
use crate::algebra::superalg::{leibniz_defects, BasisElem, GradedLinearMap};
use crate::algebra::{supercommutator, LModule, LieSuperalgebra, PMap, SuperAlgebra};
use crate::coeffs::lambda_vector;
use crate::error::{Error, Result};
use crate::report::Report;
use crate::scalar::Prime;
use crate::superpoly::Parity;

pub use builtins::{builtin, witt_basis, Builtin, BuiltinParams};
pub use schema::LrJson;
pub use semidirect::{
    build_semidirect, centerless_instance, check_semidirect_lemmas, gl_natural, ground_field_bundle, scalar_representation, SemidirectResult,
};

/// How many failing inputs a claim keeps as witnesses.
const MAX_WITNESSES: usize = 5;

/// The triple (A, L, rho) with the A-module structure on L.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LRData {
    pub name: String,
    pub a: SuperAlgebra,
    pub l: LieSuperalgebra,
    pub pmap: Option<PMap>,
    /// `action[i][j]` = coordinates of e_i . x_j in L.
    pub action: Vec<Vec<Vector>>,
    /// `anchor[j]` = matrix of rho(x_j) on A.
    pub anchor: Vec<Mat>,
}

impl LRData {
    pub fn new(
        name: impl Into<String>,
        a: SuperAlgebra,
        l: LieSuperalgebra,
        pmap: Option<PMap>,
        action: Vec<Vec<Vector>>,
        anchor: Vec<Mat>,
    ) -> Result<Self> {
        if a.prime() != l.prime() {
            return Err(Error::InvalidStructure("A and L live over different fields".into()));
        }
        if a.unit_index().is_none() {
            return Err(Error::InvalidStructure("A must be unital".into()));
        }
        let shape_ok = action.len() == a.dim()
            && action.iter().all(|r| r.len() == l.dim() && r.iter().all(|v| v.len() == l.dim()))
            && anchor.len() == l.dim()
            && anchor.iter().all(|m| m.rows() == a.dim() && m.cols() == a.dim());
        if !shape_ok {
            return Err(Error::InvalidStructure("action or anchor has the wrong shape".into()));
        }
        Ok(LRData { name: name.into(), a, l, pmap, action, anchor })
    }

    pub fn p(&self) -> u64 {
        self.a.prime().get()
    }

    /// a . x
    pub fn act(&self, a: &[u64], x: &[u64]) -> Vector {
        let p = self.a.prime();
        let mut out = self.l.zero();
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &xj) in x.iter().enumerate() {
                if xj != 0 {
                    axpy(p, &mut out, p.mul(ai, xj), &self.action[i][j]);
                }
            }
        }
        out
    }

    pub fn rho(&self, x: &[u64]) -> Mat {
        let p = self.a.prime();
        let mut m = Mat::zeros(p, self.a.dim(), self.a.dim());
        for (j, &c) in x.iter().enumerate() {
            if c != 0 {
                m = m.add(&self.anchor[j].scale(c));
            }
        }
        m
    }

    /// rho(x)^n (a)
    pub fn rho_pow(&self, x: &[u64], n: u64, a: &[u64]) -> Vector {
        self.rho(x).pow(n).apply(a)
    }

    fn pmap(&self) -> Result<&PMap> {
        self.pmap.as_ref().ok_or_else(|| Error::PreconditionViolated(format!("{} has no p-map", self.name)))
    }

    fn l_name(&self, j: usize) -> &str {
        &self.l.basis()[j].name
    }

    fn a_name(&self, i: usize) -> &str {
        &self.a.basis()[i].name
    }
}

/// A module (phi, M): A acts on M and phi sends L to End(M).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub basis: Vec<BasisElem>,
    /// Operator of each basis vector of A on M.
    pub a_action: Vec<Mat>,
    /// phi of each basis vector of L.
    pub phi: Vec<Mat>,
}

impl Representation {
    /// A itself, with phi = rho.
    pub fn tautological(d: &LRData) -> Self {
        Representation {
            basis: d.a.basis().to_vec(),
            a_action: (0..d.a.dim()).map(|i| d.a.left_mult(&d.a.basis_vec(i))).collect(),
            phi: d.anchor.clone(),
        }
    }

    pub fn zero(d: &LRData) -> Self {
        let p = d.a.prime();
        Representation {
            basis: Vec::new(),
            a_action: vec![Mat::zeros(p, 0, 0); d.a.dim()],
            phi: vec![Mat::zeros(p, 0, 0); d.l.dim()],
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn a_op(&self, d: &LRData, a: &[u64]) -> Mat {
        combine(d.a.prime(), self.dim(), &self.a_action, a)
    }

    pub fn phi_op(&self, d: &LRData, x: &[u64]) -> Mat {
        combine(d.a.prime(), self.dim(), &self.phi, x)
    }

    pub fn to_lmodule(&self) -> LModule {
        LModule { basis: self.basis.clone(), action: self.phi.clone() }
    }
}

fn combine(p: Prime, n: usize, ops: &[Mat], coeffs: &[u64]) -> Mat {
    let mut m = Mat::zeros(p, n, n);
    for (i, &c) in coeffs.iter().enumerate() {
        if c != 0 {
            m = m.add(&ops[i].scale(c));
        }
    }
    m
}

fn collect<F: FnMut() -> Option<Value>>(out: &mut Vec<Value>, mut f: F) {
    if out.len() < MAX_WITNESSES {
        if let Some(w) = f() {
            out.push(w);
        }
    }
}

fn verdict(rep: &mut Report, id: &str, anchor: &str, ws: Vec<Value>) {
    let ok = ws.is_empty();
    rep.check(id, anchor, ok, || Value::Array(ws));
}

/// Linear axioms of a Lie-Rinehart superalgebra, exhaustively on bases.
pub fn check_lr(d: &LRData) -> Report {
    let p = d.a.prime();
    let (na, nl) = (d.a.dim(), d.l.dim());
    let apar = |i: usize| d.a.basis()[i].parity;
    let lpar = |j: usize| d.l.basis()[j].parity;
    let mut rep = Report::new(format!("lie-rinehart/{}", d.name));

    let mut ws = Vec::new();
    for i in 0..na {
        for j in 0..nl {
            let ok = d.l.parity_of(&d.action[i][j]).map_or(false, |q| is_zero_vec(&d.action[i][j]) || q == apar(i) + lpar(j));
            collect(&mut ws, || (!ok).then(|| json!({ "a": d.a_name(i), "x": d.l_name(j) })));
        }
    }
    verdict(&mut rep, "action/parity", "|a x| = |a| + |x|", ws);

    let mut ws = Vec::new();
    let unit = d.a.unit().unwrap();
    for j in 0..nl {
        let x = d.l.basis_vec(j);
        collect(&mut ws, || (d.act(&unit, &x) != x).then(|| json!({ "x": d.l_name(j) })));
    }
    verdict(&mut rep, "action/unit", "1 x = x", ws);

    let mut ws = Vec::new();
    for i in 0..na {
        for k in 0..na {
            let ab = d.a.mul(&d.a.basis_vec(i), &d.a.basis_vec(k));
            for j in 0..nl {
                let x = d.l.basis_vec(j);
                let lhs = d.act(&ab, &x);
                let rhs = d.act(&d.a.basis_vec(i), &d.act(&d.a.basis_vec(k), &x));
                collect(&mut ws, || {
                    (lhs != rhs).then(|| json!({ "a": d.a_name(i), "b": d.a_name(k), "x": d.l_name(j) }))
                });
            }
        }
    }
    verdict(&mut rep, "action/associativity", "(ab) x = a (b x)", ws);

    let mut ws = Vec::new();
    for j in 0..nl {
        let g = GradedLinearMap { parity: lpar(j), mat: d.anchor[j].clone() };
        let bad = leibniz_defects(&d.a, &g);
        let graded = g.is_graded(d.a.basis(), d.a.basis());
        collect(&mut ws, || {
            (!graded || !bad.is_empty()).then(|| {
                json!({ "x": d.l_name(j), "graded": graded,
                        "pairs": bad.iter().take(3).map(|&(u, v)| [d.a_name(u), d.a_name(v)]).collect::<Vec<_>>() })
            })
        });
    }
    verdict(&mut rep, "anchor/derivation", "rho(x) is a derivation of A of parity |x|", ws);

    let mut ws = Vec::new();
    for i in 0..na {
        let la = d.a.left_mult(&d.a.basis_vec(i));
        for j in 0..nl {
            let lhs = d.rho(&d.action[i][j]);
            let rhs = la.mul(&d.anchor[j]);
            collect(&mut ws, || (lhs != rhs).then(|| json!({ "a": d.a_name(i), "x": d.l_name(j) })));
        }
    }
    verdict(&mut rep, "anchor/a-linear", "rho(a x) = a rho(x)", ws);

    let mut ws = Vec::new();
    for j in 0..nl {
        for k in 0..nl {
            let lhs = d.rho(&d.l.table()[j][k]);
            let rhs = supercommutator(&d.anchor[j], lpar(j), &d.anchor[k], lpar(k));
            collect(&mut ws, || (lhs != rhs).then(|| json!({ "x": d.l_name(j), "y": d.l_name(k) })));
        }
    }
    verdict(&mut rep, "anchor/bracket", "rho([x,y]) = [rho(x), rho(y)]", ws);

    let mut ws = Vec::new();
    for j in 0..nl {
        let x = d.l.basis_vec(j);
        for i in 0..na {
            let a = d.a.basis_vec(i);
            let rxa = d.anchor[j].apply(&a);
            let s = p.from_i64(lpar(j).koszul(apar(i)));
            for k in 0..nl {
                let y = d.l.basis_vec(k);
                let lhs = d.l.bracket(&x, &d.act(&a, &y));
                let mut rhs = d.act(&rxa, &y);
                axpy(p, &mut rhs, s, &d.act(&a, &d.l.table()[j][k]));
                collect(&mut ws, || {
                    (lhs != rhs).then(|| json!({ "x": d.l_name(j), "a": d.a_name(i), "y": d.l_name(k) }))
                });
            }
        }
    }
    verdict(&mut rep, "leibniz", "[x, a y] = rho(x)(a) y + (-1)^{|x||a|} a [x, y]", ws);
    rep
}

fn case_tag(pa: Parity, px: Parity) -> String {
    format!("{pa}/{px}")
}

/// Left and right sides of the restricted identity for homogeneous a, x, as elements of L.
pub fn restricted_lr_sides(d: &LRData, a: &[u64], pa: Parity, x: &[u64], px: Parity) -> Result<(Vector, Vector)> {
    let pm = d.pmap()?;
    let prime = d.a.prime();
    let p = prime.get();
    let ax = d.act(a, x);
    let out = match (pa, px) {
        (Parity::Even, Parity::Even) => {
            let lhs = pm.eval(&d.l, &ax)?;
            let mut rhs = d.act(&d.a.pow(a, p)?, &pm.eval(&d.l, x)?);
            rhs = add(prime, &rhs, &d.act(&d.rho_pow(&ax, p - 1, a), x));
            (lhs, rhs)
        }
        (Parity::Even, Parity::Odd) => {
            let lhs = pm.eval_2p(&d.l, &ax)?;
            let mut rhs = d.act(&d.a.pow(a, 2 * p)?, &pm.eval_2p(&d.l, x)?);
            rhs = add(prime, &rhs, &d.act(&d.rho_pow(&ax, 2 * p - 1, a), x));
            let coef = lambda_sum(d, &ax, a);
            rhs = add(prime, &rhs, &d.act(&coef, &d.l.square(x)));
            (lhs, rhs)
        }
        (Parity::Odd, Parity::Even) => (pm.eval_2p(&d.l, &ax)?, d.l.zero()),
        (Parity::Odd, Parity::Odd) => {
            let lhs = pm.eval(&d.l, &ax)?;
            let r = d.rho_pow(x, 1, a);
            let c = d.a.mul(a, &d.a.pow(&r, p - 1)?);
            (lhs, d.act(&c, x))
        }
    };
    Ok(out)
}

fn add(p: Prime, a: &[u64], b: &[u64]) -> Vector {
    crate::algebra::linalg::vadd(p, a, b)
}

/// sum_{i=0}^{p-1} lambda_i rho(ax)^i(a) rho(ax)^{2p-2-i}(a), an element of A.
fn lambda_sum(d: &LRData, ax: &[u64], a: &[u64]) -> Vector {
    let prime = d.a.prime();
    let p = prime.get();
    let lam = lambda_vector(prime);
    let r = d.rho(ax);
    let powers: Vec<Vector> = {
        let mut v = vec![a.to_vec()];
        for _ in 0..2 * p - 2 {
            let next = r.apply(v.last().unwrap());
            v.push(next);
        }
        v
    };
    let mut out = zero_vec(d.a.dim());
    for i in 0..p as usize {
        let term = d.a.mul(&powers[i], &powers[2 * p as usize - 2 - i]);
        axpy(prime, &mut out, lam.entries[i].value(), &term);
    }
    out
}

fn homogeneous_pairs(d: &LRData) -> Vec<(usize, usize)> {
    (0..d.a.dim()).flat_map(|i| (0..d.l.dim()).map(move |j| (i, j))).collect()
}

/// The four restricted identities on all basis pairs and `samples` seeded random homogeneous pairs.
pub fn check_restricted_lr(d: &LRData, samples: usize, seed: u64) -> Result<Report> {
    d.pmap()?;
    let mut rep = Report::new(format!("restricted-lie-rinehart/{}", d.name)).with_seed(seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pars = [Parity::Even, Parity::Odd];
    for pa in pars {
        for px in pars {
            let tag = case_tag(pa, px);
            let mut ws = Vec::new();
            for (i, j) in homogeneous_pairs(d) {
                if d.a.basis()[i].parity != pa || d.l.basis()[j].parity != px {
                    continue;
                }
                let (lhs, rhs) = restricted_lr_sides(d, &d.a.basis_vec(i), pa, &d.l.basis_vec(j), px)?;
                collect(&mut ws, || (lhs != rhs).then(|| json!({ "a": d.a_name(i), "x": d.l_name(j) })));
            }
            for t in 0..samples {
                let a = d.a.random_homogeneous(pa, &mut rng);
                let x = d.l.random_homogeneous(px, &mut rng);
                let (lhs, rhs) = restricted_lr_sides(d, &a, pa, &x, px)?;
                collect(&mut ws, || (lhs != rhs).then(|| json!({ "sample": t, "a": a, "x": x })));
            }
            let ok = ws.is_empty();
            rep.check_case(format!("restricted/{tag}"), tag.clone(), restricted_anchor(pa, px), ok, || Value::Array(ws));
        }
    }
    Ok(rep)
}

fn restricted_anchor(pa: Parity, px: Parity) -> &'static str {
    match (pa, px) {
        (Parity::Even, Parity::Even) => "(ax)^[p] = a^p x^[p] + rho(ax)^{p-1}(a) x",
        (Parity::Even, Parity::Odd) => {
            "(ax)^[2p] = a^2p x^[2p] + rho(ax)^{2p-1}(a) x + sum lambda_i rho(ax)^i(a) rho(ax)^{2p-2-i}(a) x^2"
        }
        (Parity::Odd, Parity::Even) => "(ax)^[2p] = 0",
        (Parity::Odd, Parity::Odd) => "(ax)^[p] = a (rho(x)(a))^{p-1} x",
    }
}

/// Module axioms for (phi, M) on bases: A-module, phi a Lie morphism, A-linear, and the anchor rule.
fn module_axioms(d: &LRData, m: &Representation, rep: &mut Report) {
    let p = d.a.prime();
    let (na, nl) = (d.a.dim(), d.l.dim());
    let apar = |i: usize| d.a.basis()[i].parity;
    let lpar = |j: usize| d.l.basis()[j].parity;
    let id = Mat::identity(p, m.dim());

    let mut ws = Vec::new();
    collect(&mut ws, || (m.a_op(d, &d.a.unit().unwrap()) != id).then(|| json!({ "a": "unit" })));
    for i in 0..na {
        for k in 0..na {
            let lhs = m.a_op(d, &d.a.mul(&d.a.basis_vec(i), &d.a.basis_vec(k)));
            let rhs = m.a_action[i].mul(&m.a_action[k]);
            collect(&mut ws, || (lhs != rhs).then(|| json!({ "a": d.a_name(i), "b": d.a_name(k) })));
        }
    }
    verdict(rep, "module/a-module", "M is a unital A-module", ws);

    let lm = m.to_lmodule();
    let mut ws = Vec::new();
    collect(&mut ws, || {
        lm.morphism_defect(&d.l).map(|(j, k)| json!({ "x": d.l_name(j), "y": d.l_name(k) }))
    });
    verdict(rep, "module/bracket", "phi([x,y]) = [phi(x), phi(y)]", ws);

    let mut ws = Vec::new();
    for i in 0..na {
        for j in 0..nl {
            let lhs = m.phi_op(d, &d.action[i][j]);
            let rhs = m.a_action[i].mul(&m.phi[j]);
            collect(&mut ws, || (lhs != rhs).then(|| json!({ "a": d.a_name(i), "x": d.l_name(j) })));
        }
    }
    verdict(rep, "module/a-linear", "phi(a x) = a phi(x)", ws);

    let mut ws = Vec::new();
    for j in 0..nl {
        for i in 0..na {
            let lhs = m.phi[j].mul(&m.a_action[i]);
            let s = p.from_i64(lpar(j).koszul(apar(i)));
            let rhs = m.a_action[i].mul(&m.phi[j]).scale(s).add(&m.a_op(d, &d.anchor[j].apply(&d.a.basis_vec(i))));
            collect(&mut ws, || (lhs != rhs).then(|| json!({ "x": d.l_name(j), "a": d.a_name(i) })));
        }
    }
    verdict(rep, "module/anchor-rule", "phi(x)(a v) = (-1)^{|x||a|} a phi(x)(v) + rho(x)(a) v", ws);
}

/// Operator sides of the four identities of the super Hochschild theorem on M.
pub fn hochschild_sides(d: &LRData, m: &Representation, a: &[u64], pa: Parity, x: &[u64], px: Parity) -> Result<(Mat, Mat)> {
    let p = d.p();
    let ax = d.act(a, x);
    let phi_ax = m.phi_op(d, &ax);
    let phi_x = m.phi_op(d, x);
    let out = match (pa, px) {
        (Parity::Even, Parity::Even) => {
            let lhs = phi_ax.pow(p);
            let rhs = m
                .a_op(d, &d.a.pow(a, p)?)
                .mul(&phi_x.pow(p))
                .add(&m.a_op(d, &d.rho_pow(&ax, p - 1, a)).mul(&phi_x));
            (lhs, rhs)
        }
        (Parity::Even, Parity::Odd) => {
            let lhs = phi_ax.pow(2 * p);
            let rhs = m
                .a_op(d, &d.a.pow(a, 2 * p)?)
                .mul(&phi_x.pow(2 * p))
                .add(&m.a_op(d, &d.rho_pow(&ax, 2 * p - 1, a)).mul(&phi_x))
                .add(&m.a_op(d, &lambda_sum(d, &ax, a)).mul(&phi_x.pow(2)));
            (lhs, rhs)
        }
        (Parity::Odd, Parity::Even) => (phi_ax.pow(2 * p), Mat::zeros(d.a.prime(), m.dim(), m.dim())),
        (Parity::Odd, Parity::Odd) => {
            let r = d.rho_pow(x, 1, a);
            let c = d.a.mul(a, &d.a.pow(&r, p - 1)?);
            (phi_ax.pow(p), m.a_op(d, &c).mul(&phi_x))
        }
    };
    Ok(out)
}

/// The four operator identities phi(ax)^p or phi(ax)^{2p} on M, on basis pairs and seeded samples.
pub fn check_hochschild_theorem(d: &LRData, m: &Representation, samples: usize, seed: u64) -> Result<Report> {
    let mut pre = Report::new("module");
    module_axioms(d, m, &mut pre);
    if !pre.passed() {
        let bad: Vec<String> = pre.failures().map(|c| c.id.clone()).collect();
        return Err(Error::ModuleCompatibilityViolated(bad.join(", ")));
    }
    let mut rep = Report::new(format!("hochschild/{}", d.name)).with_seed(seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pars = [Parity::Even, Parity::Odd];
    for pa in pars {
        for px in pars {
            let tag = case_tag(pa, px);
            let mut ws = Vec::new();
            for (i, j) in homogeneous_pairs(d) {
                if d.a.basis()[i].parity != pa || d.l.basis()[j].parity != px {
                    continue;
                }
                let (lhs, rhs) = hochschild_sides(d, m, &d.a.basis_vec(i), pa, &d.l.basis_vec(j), px)?;
                collect(&mut ws, || (lhs != rhs).then(|| json!({ "a": d.a_name(i), "x": d.l_name(j) })));
            }
            for t in 0..samples {
                let a = d.a.random_homogeneous(pa, &mut rng);
                let x = d.l.random_homogeneous(px, &mut rng);
                let (lhs, rhs) = hochschild_sides(d, m, &a, pa, &x, px)?;
                collect(&mut ws, || (lhs != rhs).then(|| json!({ "sample": t, "a": a, "x": x })));
            }
            let ok = ws.is_empty();
            rep.check_case(format!("hochschild/{tag}"), tag.clone(), hochschild_anchor(pa, px), ok, || Value::Array(ws));
        }
    }
    Ok(rep)
}

fn hochschild_anchor(pa: Parity, px: Parity) -> &'static str {
    match (pa, px) {
        (Parity::Even, Parity::Even) => "phi(ax)^p = a^p phi(x)^p + rho(ax)^{p-1}(a) phi(x)",
        (Parity::Even, Parity::Odd) => {
            "phi(ax)^2p = a^2p phi(x)^2p + rho(ax)^{2p-1}(a) phi(x) + sum lambda_i rho(ax)^i(a) rho(ax)^{2p-2-i}(a) phi(x)^2"
        }
        (Parity::Odd, Parity::Even) => "phi(ax)^2p = 0",
        (Parity::Odd, Parity::Odd) => "phi(ax)^p = a (rho(x)(a))^{p-1} phi(x)",
    }
}

/// Restricted Lie-Rinehart module axioms: the anchor rule exactly on bases, and
/// the two p-power rules with the A-action on seeded samples.
pub fn check_representation(d: &LRData, m: &Representation, samples: usize, seed: u64) -> Result<Report> {
    let pm = d.pmap()?;
    let prime = d.a.prime();
    let p = prime.get();
    let mut rep = Report::new(format!("representation/{}", d.name)).with_seed(seed);
    module_axioms(d, m, &mut rep);

    let mut ws = Vec::new();
    for j in d.l.even_indices() {
        let lhs = m.phi[j].pow(p);
        let rhs = m.phi_op(d, pm.image(j).unwrap());
        collect(&mut ws, || (lhs != rhs).then(|| json!({ "x": d.l_name(j) })));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut eq2 = Vec::new();
    let mut eq3 = Vec::new();
    for t in 0..samples {
        let x = d.l.random_homogeneous(Parity::Even, &mut rng);
        let a = d.a.random_homogeneous(Parity::Even, &mut rng);
        let f = d.l.random_homogeneous(Parity::Odd, &mut rng);
        collect(&mut ws, || (m.phi_op(d, &x).pow(p) != m.phi_op(d, &pm.eval(&d.l, &x).unwrap())).then(|| json!({ "sample": t, "x": x })));

        let ax = d.act(&a, &x);
        let lhs = m.phi_op(d, &ax).pow(p - 1).mul(&m.a_op(d, &a));
        let rhs = m
            .a_op(d, &d.a.pow(&a, p)?)
            .mul(&m.phi_op(d, &x).pow(p - 1))
            .add(&m.a_op(d, &d.rho_pow(&ax, p - 1, &a)));
        collect(&mut eq2, || (lhs != rhs).then(|| json!({ "sample": t, "a": a, "x": x })));

        let af = d.act(&a, &f);
        let phi_f = m.phi_op(d, &f);
        let lhs = m.phi_op(d, &af).pow(2 * p - 1).mul(&m.a_op(d, &a));
        let rhs = m
            .a_op(d, &d.a.pow(&a, 2 * p)?)
            .mul(&phi_f.pow(2 * p - 1))
            .add(&m.a_op(d, &d.rho_pow(&af, 2 * p - 1, &a)))
            .add(&m.a_op(d, &lambda_sum(d, &af, &a)).mul(&phi_f));
        collect(&mut eq3, || (lhs != rhs).then(|| json!({ "sample": t, "a": a, "x": f })));
    }
    verdict(&mut rep, "module/restricted", "phi(x)^p = phi(x^[p]) for even x", ws);
    rep.check_case(
        "module/p-power-even",
        "even/even",
        "phi(ax)^{p-1}(a v) = a^p phi(x)^{p-1}(v) + rho(ax)^{p-1}(a) v",
        eq2.is_empty(),
        || Value::Array(eq2),
    );
    rep.check_case(
        "module/p-power-odd",
        "even/odd",
        "phi(ax)^{2p-1}(a v) = a^2p phi(x)^{2p-1}(v) + rho(ax)^{2p-1}(a) v + sum lambda_i rho(ax)^i(a) rho(ax)^{2p-2-i}(a) phi(x)(v)",
        eq3.is_empty(),
        || Value::Array(eq3),
    );
    Ok(rep)
}

/// Morphism (f, g) from `src` to `dst`: f an algebra map on A, g a Lie map on L.
pub fn check_lr_morphism(src: &LRData, dst: &LRData, f: &Mat, g: &Mat) -> Result<Report> {
    let shapes = f.rows() == dst.a.dim() && f.cols() == src.a.dim() && g.rows() == dst.l.dim() && g.cols() == src.l.dim();
    if !shapes {
        return Err(Error::PreconditionViolated("morphism matrices have the wrong shape".into()));
    }
    let fg = GradedLinearMap { parity: Parity::Even, mat: f.clone() };
    let gg = GradedLinearMap { parity: Parity::Even, mat: g.clone() };
    if !fg.is_graded(src.a.basis(), dst.a.basis()) || !gg.is_graded(src.l.basis(), dst.l.basis()) {
        return Err(Error::PreconditionViolated("morphisms must preserve parity".into()));
    }
    let mut rep = Report::new(format!("lr-morphism/{}->{}", src.name, dst.name));
    let (na, nl) = (src.a.dim(), src.l.dim());

    let mut ws = Vec::new();
    collect(&mut ws, || (f.apply(&src.a.unit().unwrap()) != dst.a.unit().unwrap()).then(|| json!({ "a": "unit" })));
    for i in 0..na {
        for k in 0..na {
            let (ei, ek) = (src.a.basis_vec(i), src.a.basis_vec(k));
            let lhs = f.apply(&src.a.mul(&ei, &ek));
            let rhs = dst.a.mul(&f.apply(&ei), &f.apply(&ek));
            collect(&mut ws, || (lhs != rhs).then(|| json!({ "a": src.a_name(i), "b": src.a_name(k) })));
        }
    }
    verdict(&mut rep, "morphism/algebra", "f is a unital algebra map", ws);

    let mut ws = Vec::new();
    for j in 0..nl {
        for k in 0..nl {
            let lhs = g.apply(&src.l.table()[j][k]);
            let rhs = dst.l.bracket(&g.apply(&src.l.basis_vec(j)), &g.apply(&src.l.basis_vec(k)));
            collect(&mut ws, || (lhs != rhs).then(|| json!({ "x": src.l_name(j), "y": src.l_name(k) })));
        }
    }
    verdict(&mut rep, "morphism/lie", "g([x,y]) = [g(x), g(y)]", ws);

    let mut ws = Vec::new();
    for i in 0..na {
        for j in 0..nl {
            let lhs = g.apply(&src.action[i][j]);
            let rhs = dst.act(&f.apply(&src.a.basis_vec(i)), &g.apply(&src.l.basis_vec(j)));
            collect(&mut ws, || (lhs != rhs).then(|| json!({ "a": src.a_name(i), "x": src.l_name(j) })));
        }
    }
    verdict(&mut rep, "morphism/a-linear", "g(a x) = f(a) g(x)", ws);

    let mut ws = Vec::new();
    for j in 0..nl {
        for i in 0..na {
            let a = src.a.basis_vec(i);
            let lhs = f.apply(&src.anchor[j].apply(&a));
            let rhs = dst.rho(&g.apply(&src.l.basis_vec(j))).apply(&f.apply(&a));
            collect(&mut ws, || (lhs != rhs).then(|| json!({ "x": src.l_name(j), "a": src.a_name(i) })));
        }
    }
    verdict(&mut rep, "morphism/anchor", "f(rho(x)(a)) = rho'(g(x))(f(a))", ws);

    if let (Some(ps), Some(pd)) = (&src.pmap, &dst.pmap) {
        let mut ws = Vec::new();
        for j in src.l.even_indices() {
            let lhs = g.apply(ps.image(j).unwrap());
            let rhs = pd.eval(&dst.l, &g.apply(&src.l.basis_vec(j)))?;
            collect(&mut ws, || (lhs != rhs).then(|| json!({ "x": src.l_name(j) })));
        }
        verdict(&mut rep, "morphism/restricted", "g(x^[p]) = g(x)^[p]", ws);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests;
