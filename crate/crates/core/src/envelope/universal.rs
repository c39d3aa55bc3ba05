//! Associative superalgebras given by structure constants, and the map out of
//! U_p(A, L) induced by a compatible pair (j_A, j_L).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::quotient::UpAL;
use super::{Gen, PbwElement};
use crate::algebra::linalg::{axpy, unit_vec, vsub, zero_vec, Mat, Vector};
use crate::algebra::superalg::{check_parity_additive, vec_parity, Table};
use crate::algebra::BasisElem;
use crate::error::{Error, Result};
use crate::lierinehart::{LRData, Representation};
use crate::report::Report;
use crate::scalar::Prime;
use crate::superpoly::Parity;

/// Associative unital superalgebra; no commutativity is assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssocSuperalgebra {
    p: Prime,
    basis: Vec<BasisElem>,
    table: Table,
    unit: Vector,
}

impl AssocSuperalgebra {
    /// Validates grading, the unit, and associativity on all basis triples.
    pub fn new(p: Prime, basis: Vec<BasisElem>, table: Table, unit: Vector) -> Result<Self> {
        check_parity_additive(&basis, &table, "product")?;
        let a = AssocSuperalgebra { p, basis, table, unit };
        let n = a.dim();
        if a.unit.len() != n || vec_parity(&a.basis, &a.unit) != Some(Parity::Even) {
            return Err(Error::InvalidStructure("the unit must be even".into()));
        }
        for i in 0..n {
            let e = a.basis_vec(i);
            if a.mul(&a.unit, &e) != e || a.mul(&e, &a.unit) != e {
                return Err(Error::InvalidStructure(format!("the unit fails on {}", a.basis[i].name)));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = a.mul(&a.table[i][j], &a.basis_vec(k));
                    let rhs = a.mul(&a.basis_vec(i), &a.table[j][k]);
                    if lhs != rhs {
                        return Err(Error::InvalidStructure(format!(
                            "associativity fails on ({}, {}, {})",
                            a.basis[i].name, a.basis[j].name, a.basis[k].name
                        )));
                    }
                }
            }
        }
        Ok(a)
    }

    /// End(M) with basis E_ij (row-major, so coordinates are matrix entries)
    /// and |E_ij| = |m_i| + |m_j|.
    pub fn endomorphisms(p: Prime, m: &[BasisElem]) -> Result<Self> {
        let n = m.len();
        let d = n * n;
        let mut basis = Vec::with_capacity(d);
        let mut table = vec![vec![zero_vec(d); d]; d];
        for i in 0..n {
            for j in 0..n {
                basis.push(BasisElem::new(format!("E{}{}", i + 1, j + 1), m[i].parity + m[j].parity));
                for l in 0..n {
                    table[i * n + j][j * n + l][i * n + l] = 1;
                }
            }
        }
        let unit = Mat::identity(p, n).entries().to_vec();
        AssocSuperalgebra::new(p, basis, table, unit)
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElem] {
        &self.basis
    }

    pub fn table(&self) -> &Table {
        &self.table
    }

    pub fn unit(&self) -> Vector {
        self.unit.clone()
    }

    pub fn basis_vec(&self, i: usize) -> Vector {
        unit_vec(self.dim(), i)
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vector {
        let p = self.p;
        let mut out = zero_vec(self.dim());
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b != 0 {
                    axpy(p, &mut out, p.mul(a, b), &self.table[i][j]);
                }
            }
        }
        out
    }

    /// x y - (-1)^{|x||y|} y x for homogeneous x, y.
    pub fn supercommutator(&self, x: &[u64], px: Parity, y: &[u64], py: Parity) -> Vector {
        let s = self.p.from_i64(-px.koszul(py));
        let mut out = self.mul(x, y);
        axpy(self.p, &mut out, s, &self.mul(y, x));
        out
    }

    pub fn pow(&self, x: &[u64], e: u64) -> Vector {
        (0..e).fold(self.unit(), |acc, _| self.mul(&acc, x))
    }
}

/// (End(M), j_A, j_L) for a representation: j_A(a) is the action of a, j_L(x) = phi(x).
pub fn endomorphism_maps(d: &LRData, m: &Representation) -> Result<(AssocSuperalgebra, Mat, Mat)> {
    let p = d.a.prime();
    let b = AssocSuperalgebra::endomorphisms(p, &m.basis)?;
    let n = b.dim();
    let ja = Mat::from_columns(p, n, &m.a_action.iter().map(|x| x.entries().to_vec()).collect::<Vec<_>>());
    let jl = Mat::from_columns(p, n, &m.phi.iter().map(|x| x.entries().to_vec()).collect::<Vec<_>>());
    Ok((b, ja, jl))
}

/// psi on the quotient basis, as a matrix (dim B x dim U_p(A, L)), and the checks.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub psi: Mat,
    pub report: Report,
}

/// Builds psi: U_p(A, L) -> B from j_A (dim B x dim A) and j_L (dim B x dim L),
/// sending a PBW monomial to the product of the images of its letters.
pub fn factor_through(
    up: &UpAL,
    target: &AssocSuperalgebra,
    ja: &Mat,
    jl: &Mat,
    samples: usize,
    seed: u64,
) -> Result<Factorization> {
    let sys = up.system();
    let d = sys
        .bundle()
        .ok_or_else(|| Error::PreconditionViolated("factor_through needs U_p(A, L)".into()))?;
    let p = d.a.prime();
    let nb = target.dim();
    if target.prime() != p || ja.rows() != nb || ja.cols() != d.a.dim() || jl.rows() != nb || jl.cols() != d.l.dim() {
        return Err(Error::PreconditionViolated("j_A or j_L has the wrong shape".into()));
    }
    let bb = target.basis();
    let pre = |what: &str| Err(Error::PreconditionViolated(what.to_string()));
    let ja_i = |i: usize| ja.column(i);
    let jl_j = |j: usize| jl.column(j);
    for i in 0..d.a.dim() {
        let v = ja_i(i);
        if v.iter().any(|&c| c != 0) && vec_parity(bb, &v) != Some(d.a.basis()[i].parity) {
            return pre("j_A is not even");
        }
    }
    for j in 0..d.l.dim() {
        let v = jl_j(j);
        if v.iter().any(|&c| c != 0) && vec_parity(bb, &v) != Some(d.l.basis()[j].parity) {
            return pre("j_L is not even");
        }
    }
    if ja.apply(&d.a.unit().unwrap()) != target.unit() {
        return pre("j_A is not unital");
    }
    for i in 0..d.a.dim() {
        for k in 0..d.a.dim() {
            let lhs = ja.apply(&d.a.mul(&d.a.basis_vec(i), &d.a.basis_vec(k)));
            if lhs != target.mul(&ja_i(i), &ja_i(k)) {
                return pre("j_A is not multiplicative");
            }
        }
    }
    let lpar = |j: usize| d.l.basis()[j].parity;
    let apar = |i: usize| d.a.basis()[i].parity;
    for j in 0..d.l.dim() {
        for k in 0..d.l.dim() {
            let lhs = jl.apply(&d.l.table()[j][k]);
            if lhs != target.supercommutator(&jl_j(j), lpar(j), &jl_j(k), lpar(k)) {
                return pre("j_L is not a Lie morphism");
            }
        }
    }
    let pm = d.pmap.as_ref().unwrap();
    for j in d.l.even_indices() {
        if jl.apply(pm.image(j).unwrap()) != target.pow(&jl_j(j), p.get()) {
            return pre("j_L is not restricted");
        }
    }
    for i in 0..d.a.dim() {
        for j in 0..d.l.dim() {
            if jl.apply(&d.action[i][j]) != target.mul(&ja_i(i), &jl_j(j)) {
                return pre("j_L(ax) = j_A(a) j_L(x) fails");
            }
            let lhs = ja.apply(&d.anchor[j].apply(&d.a.basis_vec(i)));
            if lhs != target.supercommutator(&jl_j(j), lpar(j), &ja_i(i), apar(i)) {
                return pre("j_A(rho(x)(a)) = [j_L(x), j_A(a)] fails");
            }
        }
    }

    let image_of_word = |w: &[Gen]| -> Vector {
        w.iter().fold(target.unit(), |acc, &g| {
            let v = match g {
                Gen::A(i) => ja_i(i),
                Gen::L(j) => jl_j(j),
            };
            target.mul(&acc, &v)
        })
    };
    let words = up.basis_words();
    let cols: Vec<Vector> = words.iter().map(|w| image_of_word(w)).collect();
    let psi = Mat::from_columns(p, nb, &cols);
    let apply_psi = |x: &PbwElement| psi.apply(&up.quotient_coords(x));

    let mut rep = Report::new(format!("universal/{}", d.name)).with_seed(seed);
    let mut ws = Vec::new();
    for i in 0..d.a.dim() {
        if apply_psi(&up.i_a(&d.a.basis_vec(i))) != ja_i(i) {
            ws.push(json!({ "a": d.a.basis()[i].name }));
        }
    }
    rep.check("universal/triangle-a", "psi o i_A = j_A", ws.is_empty(), || Value::Array(ws));
    let mut ws = Vec::new();
    for j in 0..d.l.dim() {
        if apply_psi(&up.i_l(&d.l.basis_vec(j))) != jl_j(j) {
            ws.push(json!({ "x": d.l.basis()[j].name }));
        }
    }
    rep.check("universal/triangle-l", "psi o i_L = j_L", ws.is_empty(), || Value::Array(ws));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = up.dim();
    let mut ws = Vec::new();
    for t in 0..samples {
        let u: Vector = (0..q).map(|_| rng.gen_range(0..p.get())).collect();
        let v: Vector = (0..q).map(|_| rng.gen_range(0..p.get())).collect();
        let (eu, ev) = (up.from_quotient_coords(&u), up.from_quotient_coords(&v));
        let lhs = apply_psi(&up.mul(&eu, &ev));
        let rhs = target.mul(&psi.apply(&u), &psi.apply(&v));
        if lhs != rhs && ws.len() < 5 {
            ws.push(json!({ "sample": t, "defect": vsub(p, &lhs, &rhs) }));
        }
    }
    rep.check("universal/multiplicative", "psi(uv) = psi(u) psi(v)", ws.is_empty(), || Value::Array(ws));
    Ok(Factorization { psi, report: rep })
}
