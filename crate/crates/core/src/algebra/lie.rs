//! Lie superalgebras by structure constants, p|2p-maps, Jacobson solving and
//! restrictedness checks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::linalg::{axpy, coordinates, is_zero_vec, nullspace, solve, unit_vec, vadd, vscale, zero_vec, Mat, Vector};
use super::superalg::{check_parity_additive, indices_of, random_homogeneous, vec_parity, BasisElem, Table};
use crate::error::{Error, Result};
use crate::report::Report;
use crate::scalar::Prime;
use crate::superpoly::Parity;

/// Supercommutator XY - (-1)^{ab} YX of homogeneous matrices.
pub fn supercommutator(x: &Mat, a: Parity, y: &Mat, b: Parity) -> Mat {
    let xy = x.mul(y);
    let yx = y.mul(x);
    if a.koszul(b) == 1 {
        xy.sub(&yx)
    } else {
        xy.add(&yx)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieSuperalgebra {
    p: Prime,
    basis: Vec<BasisElem>,
    table: Table,
}

impl LieSuperalgebra {
    /// Validates parity additivity, super skew-symmetry, super Jacobi and [f,[f,f]] = 0 for odd basis f.
    pub fn new(p: Prime, basis: Vec<BasisElem>, table: Table) -> Result<Self> {
        let table: Table = table
            .into_iter()
            .map(|r| r.into_iter().map(|v| v.into_iter().map(|c| c % p.get()).collect()).collect())
            .collect();
        check_parity_additive(&basis, &table, "bracket")?;
        let l = LieSuperalgebra { p, basis, table };
        if let Some(w) = l.axiom_violation() {
            return Err(Error::InvalidStructure(w));
        }
        Ok(l)
    }

    /// Builds the table from explicit brackets [e_i, e_j] for i <= j, filling the rest by skew-symmetry.
    pub fn from_upper(p: Prime, basis: Vec<BasisElem>, entries: &[(usize, usize, Vector)]) -> Result<Self> {
        let n = basis.len();
        let mut table = vec![vec![zero_vec(n); n]; n];
        for (i, j, v) in entries {
            let (i, j) = (*i, *j);
            if i >= n || j >= n || v.len() != n {
                return Err(Error::InvalidStructure(format!("bracket entry ({i}, {j}) out of range")));
            }
            let s = -basis[i].parity.koszul(basis[j].parity);
            table[i][j] = v.iter().map(|&c| c % p.get()).collect();
            table[j][i] = vscale(p, p.from_i64(s), &table[i][j]);
        }
        LieSuperalgebra::new(p, basis, table)
    }

    /// The span of the given homogeneous matrices, which must be closed under the supercommutator.
    pub fn from_matrices(p: Prime, basis: Vec<BasisElem>, mats: &[Mat]) -> Result<Self> {
        let flat: Vec<Vector> = mats.iter().map(|m| m.entries().to_vec()).collect();
        let n = mats.len();
        let mut table = vec![vec![zero_vec(n); n]; n];
        for i in 0..n {
            for j in 0..n {
                let c = supercommutator(&mats[i], basis[i].parity, &mats[j], basis[j].parity);
                table[i][j] = coordinates(p, &flat, c.entries()).ok_or_else(|| {
                    Error::InvalidStructure(format!(
                        "[{}, {}] leaves the span",
                        basis[i].name, basis[j].name
                    ))
                })?;
            }
        }
        LieSuperalgebra::new(p, basis, table)
    }

    fn axiom_violation(&self) -> Option<String> {
        let n = self.dim();
        let p = self.p;
        let name = |i: usize| self.basis[i].name.as_str();
        let par = |i: usize| self.basis[i].parity;
        for i in 0..n {
            for j in 0..n {
                let s = -par(i).koszul(par(j));
                if self.table[i][j] != vscale(p, p.from_i64(s), &self.table[j][i]) {
                    return Some(format!("skew-symmetry fails at ({}, {})", name(i), name(j)));
                }
            }
        }
        let e = |i: usize| unit_vec(n, i);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = self.bracket(&e(i), &self.table[j][k]);
                    let mut rhs = self.bracket(&self.table[i][j], &e(k));
                    let s = p.from_i64(par(i).koszul(par(j)));
                    axpy(p, &mut rhs, s, &self.bracket(&e(j), &self.table[i][k]));
                    if lhs != rhs {
                        return Some(format!("Jacobi fails at ({}, {}, {})", name(i), name(j), name(k)));
                    }
                }
            }
            if par(i).is_odd() && !is_zero_vec(&self.bracket(&e(i), &self.table[i][i])) {
                return Some(format!("[f,[f,f]] != 0 for f = {}", name(i)));
            }
        }
        None
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

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    pub fn basis_vec(&self, i: usize) -> Vector {
        unit_vec(self.dim(), i)
    }

    pub fn zero(&self) -> Vector {
        zero_vec(self.dim())
    }

    pub fn sdim(&self) -> (usize, usize) {
        let e = indices_of(&self.basis, Parity::Even).len();
        (e, self.dim() - e)
    }

    pub fn even_indices(&self) -> Vec<usize> {
        indices_of(&self.basis, Parity::Even)
    }

    pub fn odd_indices(&self) -> Vec<usize> {
        indices_of(&self.basis, Parity::Odd)
    }

    pub fn parity_of(&self, v: &[u64]) -> Option<Parity> {
        vec_parity(&self.basis, v)
    }

    pub fn bracket(&self, x: &[u64], y: &[u64]) -> Vector {
        let n = self.dim();
        let mut out = zero_vec(n);
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                if y[j] != 0 {
                    axpy(self.p, &mut out, self.p.mul(x[i], y[j]), &self.table[i][j]);
                }
            }
        }
        out
    }

    /// Matrix of y -> [x, y].
    pub fn ad(&self, x: &[u64]) -> Mat {
        let cols: Vec<Vector> = (0..self.dim()).map(|j| self.bracket(x, &self.basis_vec(j))).collect();
        Mat::from_columns(self.p, self.dim(), &cols)
    }

    /// x^2 = [x, x] / 2 for odd x.
    pub fn square(&self, x: &[u64]) -> Vector {
        let half = self.p.inv(2).unwrap();
        vscale(self.p, half, &self.bracket(x, x))
    }

    /// Matrix sending v to the flattened ad_v, restricted to columns `idx`.
    fn ad_map(&self, idx: &[usize]) -> Mat {
        let cols: Vec<Vector> = idx.iter().map(|&k| self.ad(&self.basis_vec(k)).entries().to_vec()).collect();
        Mat::from_columns(self.p, self.dim() * self.dim(), &cols)
    }

    fn embed(&self, idx: &[usize], coords: &[u64]) -> Vector {
        let mut v = self.zero();
        for (&k, &c) in idx.iter().zip(coords) {
            v[k] = c;
        }
        v
    }

    pub fn center(&self) -> Vec<Vector> {
        let idx: Vec<usize> = (0..self.dim()).collect();
        nullspace(&self.ad_map(&idx))
    }

    pub fn even_center(&self) -> Vec<Vector> {
        let idx = self.even_indices();
        nullspace(&self.ad_map(&idx)).iter().map(|c| self.embed(&idx, c)).collect()
    }

    pub fn random_homogeneous(&self, parity: Parity, rng: &mut ChaCha8Rng) -> Vector {
        random_homogeneous(self.p, &self.basis, parity, rng)
    }
}

/// Images e_j -> e_j^{[p]} for the even basis vectors. General even elements are
/// evaluated through additivity with the s_i correction terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PMap {
    images: Vec<Option<Vector>>,
}

impl PMap {
    pub fn new(l: &LieSuperalgebra, images: Vec<(usize, Vector)>) -> Result<Self> {
        let mut out = vec![None; l.dim()];
        for (j, v) in images {
            if j >= l.dim() || l.basis()[j].parity != Parity::Even || v.len() != l.dim() {
                return Err(Error::InvalidStructure(format!("p-map image for index {j}")));
            }
            out[j] = Some(v.iter().map(|&c| c % l.prime().get()).collect());
        }
        for j in l.even_indices() {
            if out[j].is_none() {
                return Err(Error::InvalidStructure(format!("no p-map image for {}", l.basis()[j].name)));
            }
        }
        Ok(PMap { images: out })
    }

    pub fn image(&self, j: usize) -> Option<&Vector> {
        self.images[j].as_ref()
    }

    /// (index, image) for every even basis vector.
    pub fn images(&self) -> Vec<(usize, Vector)> {
        self.images.iter().enumerate().filter_map(|(j, v)| v.clone().map(|v| (j, v))).collect()
    }

    /// Adds `shift[j]` to the image of e_j.
    pub fn shifted(&self, l: &LieSuperalgebra, shift: &[(usize, Vector)]) -> PMap {
        let mut out = self.clone();
        for (j, s) in shift {
            if let Some(v) = out.images[*j].as_mut() {
                *v = vadd(l.prime(), v, s);
            }
        }
        out
    }

    /// x^{[p]} for even x.
    pub fn eval(&self, l: &LieSuperalgebra, x: &[u64]) -> Result<Vector> {
        if l.parity_of(x) != Some(Parity::Even) {
            return Err(Error::ParityMismatch("the p-map takes even arguments".into()));
        }
        let p = l.prime();
        let mut acc = l.zero();
        let mut acc_p = l.zero();
        for (j, &c) in x.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let z = vscale(p, c, &l.basis_vec(j));
            let img = self.images[j].as_ref().expect("even basis vector");
            axpy(p, &mut acc_p, p.pow(c, p.get()), img);
            let s = s_sum(l, &acc, &z);
            acc_p = vadd(p, &acc_p, &s);
            acc = vadd(p, &acc, &z);
        }
        Ok(acc_p)
    }

    /// x^{[2p]} = (x^2)^{[p]} for odd x.
    pub fn eval_2p(&self, l: &LieSuperalgebra, x: &[u64]) -> Result<Vector> {
        if l.parity_of(x) != Some(Parity::Odd) && !is_zero_vec(x) {
            return Err(Error::ParityMismatch("the 2p-map takes odd arguments".into()));
        }
        self.eval(l, &l.square(x))
    }
}

/// s_1..s_{p-1}: i s_i(x, y) is the coefficient of t^{i-1} in ad_{tx+y}^{p-1}(x).
pub fn s_coefficients(l: &LieSuperalgebra, x: &[u64], y: &[u64]) -> Vec<Vector> {
    let p = l.prime();
    let pv = p.get() as usize;
    let mut poly: Vec<Vector> = vec![x.to_vec()];
    for _ in 0..pv - 1 {
        let mut next = vec![l.zero(); poly.len() + 1];
        for (d, c) in poly.iter().enumerate() {
            next[d] = vadd(p, &next[d], &l.bracket(y, c));
            next[d + 1] = vadd(p, &next[d + 1], &l.bracket(x, c));
        }
        poly = next;
    }
    (1..pv).map(|i| vscale(p, p.inv(i as u64).unwrap(), &poly[i - 1])).collect()
}

pub fn s_sum(l: &LieSuperalgebra, x: &[u64], y: &[u64]) -> Vector {
    s_coefficients(l, x, y).iter().fold(l.zero(), |acc, s| vadd(l.prime(), &acc, s))
}

/// Sum over words w_1..w_p in {x, y} with w_{p-1} = y and w_p = x of
/// [w_1, [w_2, ..., [w_{p-1}, w_p]...]] divided by the number of x's.
pub fn s_sum_nested(l: &LieSuperalgebra, x: &[u64], y: &[u64]) -> Vector {
    let p = l.prime();
    let pv = p.get() as usize;
    let inner = l.bracket(y, x);
    let mut total = l.zero();
    for mask in 0u32..1 << (pv - 2) {
        // bit k set: w_{k+1} = x
        let mut v = inner.clone();
        for k in (0..pv - 2).rev() {
            v = if mask >> k & 1 == 1 { l.bracket(x, &v) } else { l.bracket(y, &v) };
        }
        let count = mask.count_ones() as u64 + 1;
        axpy(p, &mut total, p.inv(count).unwrap(), &v);
    }
    total
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PMapFamily {
    pub particular: PMap,
    /// Every p-map is the particular one shifted independently on each even basis vector by an even central element.
    pub center: Vec<Vector>,
}

/// Solves ad_f = ad_{e_j}^p for each even basis vector e_j with f even.
pub fn jacobson_solve(l: &LieSuperalgebra) -> Result<PMapFamily> {
    let idx = l.even_indices();
    let map = l.ad_map(&idx);
    let pv = l.prime().get();
    let mut images = Vec::new();
    for &j in &idx {
        let target = l.ad(&l.basis_vec(j)).pow(pv);
        let sol = solve(&map, target.entries())
            .ok_or_else(|| Error::NotRestrictable(format!("no f with ad_f = ad^p of {}", l.basis()[j].name)))?;
        images.push((j, l.embed(&idx, &sol)));
    }
    Ok(PMapFamily { particular: PMap::new(l, images)?, center: l.even_center() })
}

impl PMapFamily {
    /// Even basis vectors on which `pm` differs from the particular solution by a non-central element.
    pub fn outliers(&self, l: &LieSuperalgebra, pm: &PMap) -> Vec<usize> {
        let p = l.prime();
        l.even_indices()
            .into_iter()
            .filter(|&j| {
                let diff: Vector = match (pm.image(j), self.particular.image(j)) {
                    (Some(a), Some(b)) => a.iter().zip(b).map(|(&x, &y)| p.sub(x, y)).collect(),
                    _ => return true,
                };
                !is_zero_vec(&diff) && coordinates(p, &self.center, &diff).is_none()
            })
            .collect()
    }
}

/// The solver finds ad_f = ad_e^p on each even basis vector, and `pm` is one of its solutions.
pub fn check_jacobson_family(l: &LieSuperalgebra, pm: &PMap) -> Report {
    let mut rep = Report::new("jacobson");
    match jacobson_solve(l) {
        Ok(fam) => {
            rep.push("jacobson/solvable", "ad_e^p is inner on every even basis vector", crate::report::Verdict::Pass, None);
            let out = fam.outliers(l, pm);
            rep.check(
                "jacobson/family",
                "x^[p] - particular solution lies in the even center",
                out.is_empty(),
                || json!({ "basis": out.iter().map(|&j| basis_name(l, j)).collect::<Vec<_>>(), "center_dim": fam.center.len() }),
            );
        }
        Err(e) => rep.check("jacobson/solvable", "ad_e^p is inner on every even basis vector", false, || json!(e.to_string())),
    }
    rep
}

fn basis_name(l: &LieSuperalgebra, i: usize) -> String {
    l.basis()[i].name.clone()
}

/// Checks the p|2p-map axioms: exactly on bases where they are linear, on seeded samples otherwise.
pub fn check_restricted(l: &LieSuperalgebra, pm: &PMap, samples: usize, seed: u64) -> Report {
    let p = l.prime();
    let pv = p.get();
    let mut rep = Report::new("restricted-lie").with_seed(seed);
    for (j, img) in pm.images() {
        let x = basis_name(l, j);
        rep.check(format!("image-parity/{x}"), "p-map images are even", l.parity_of(&img) == Some(Parity::Even), || {
            json!({ "x": x, "image": img })
        });
        let lhs = l.ad(&img);
        let rhs = l.ad(&l.basis_vec(j)).pow(pv);
        let bad = (0..l.dim()).find(|&k| lhs.column(k) != rhs.column(k));
        rep.check(format!("ad-pth-power/{x}"), "ad of x^[p] equals (ad x)^p against all of L", bad.is_none(), || {
            let k = bad.unwrap();
            json!({ "x": x, "y": basis_name(l, k), "ad_xp_y": lhs.column(k), "ad_x_pow_p_y": rhs.column(k) })
        });
    }
    for f in l.odd_indices() {
        let x = basis_name(l, f);
        let v = pm.eval_2p(l, &l.basis_vec(f)).unwrap();
        let ok = l.ad(&v) == l.ad(&l.basis_vec(f)).pow(2 * pv);
        rep.check(format!("ad-2p-power/{x}"), "ad of x^[2p] equals (ad x)^2p for odd x", ok, || json!({ "x": x }));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut homog = None;
    let mut additive = None;
    let mut ad_power = None;
    let mut nested = None;
    let mut odd = None;
    for t in 0..samples {
        let x = l.random_homogeneous(Parity::Even, &mut rng);
        let y = l.random_homogeneous(Parity::Even, &mut rng);
        let c = rand::Rng::gen_range(&mut rng, 0..pv);
        let xp = pm.eval(l, &x).unwrap();
        let yp = pm.eval(l, &y).unwrap();
        if homog.is_none() && pm.eval(l, &vscale(p, c, &x)).unwrap() != vscale(p, p.pow(c, pv), &xp) {
            homog = Some(json!({ "sample": t, "x": x, "c": c }));
        }
        let s = s_sum(l, &x, &y);
        let sum = vadd(p, &vadd(p, &xp, &yp), &s);
        if additive.is_none() && pm.eval(l, &vadd(p, &x, &y)).unwrap() != sum {
            additive = Some(json!({ "sample": t, "x": x, "y": y }));
        }
        if ad_power.is_none() && l.ad(&xp) != l.ad(&x).pow(pv) {
            ad_power = Some(json!({ "sample": t, "x": x }));
        }
        if nested.is_none() && s != s_sum_nested(l, &x, &y) {
            nested = Some(json!({ "sample": t, "x": x, "y": y }));
        }
        let f = l.random_homogeneous(Parity::Odd, &mut rng);
        if odd.is_none() && l.ad(&pm.eval_2p(l, &f).unwrap()) != l.ad(&f).pow(2 * pv) {
            odd = Some(json!({ "sample": t, "x": f }));
        }
    }
    let mut sampled = |id: &str, anchor: &str, w: Option<serde_json::Value>| {
        rep.check(id, anchor, w.is_none(), || w.unwrap());
    };
    sampled("sampled/p-homogeneity", "(cx)^[p] = c^p x^[p]", homog);
    sampled("sampled/additivity", "(x+y)^[p] = x^[p] + y^[p] + sum of s_i(x,y)", additive);
    sampled("sampled/ad-pth-power", "ad of x^[p] equals (ad x)^p on sampled even x", ad_power);
    sampled("sampled/s-nested-brackets", "s_i from the t-expansion agree with the nested-bracket sum", nested);
    sampled("sampled/ad-2p-power", "ad of x^[2p] equals (ad x)^2p on sampled odd x", odd);
    rep
}

/// A representation of L on a graded space, one matrix per basis vector of L.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LModule {
    pub basis: Vec<BasisElem>,
    pub action: Vec<Mat>,
}

impl LModule {
    pub fn adjoint(l: &LieSuperalgebra) -> Self {
        LModule { basis: l.basis().to_vec(), action: (0..l.dim()).map(|i| l.ad(&l.basis_vec(i))).collect() }
    }

    pub fn trivial(l: &LieSuperalgebra, basis: Vec<BasisElem>) -> Self {
        let n = basis.len();
        LModule { basis, action: vec![Mat::zeros(l.prime(), n, n); l.dim()] }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// phi(x) for an arbitrary element x.
    pub fn act(&self, l: &LieSuperalgebra, x: &[u64]) -> Mat {
        let p = l.prime();
        let mut m = Mat::zeros(p, self.dim(), self.dim());
        for (i, &c) in x.iter().enumerate() {
            if c != 0 {
                m = m.add(&self.action[i].scale(c));
            }
        }
        m
    }

    /// First basis pair (i, j) with phi([e_i, e_j]) != [phi(e_i), phi(e_j)].
    pub fn morphism_defect(&self, l: &LieSuperalgebra) -> Option<(usize, usize)> {
        let par = |i: usize| l.basis()[i].parity;
        for i in 0..l.dim() {
            for j in 0..l.dim() {
                let lhs = self.act(l, &l.table()[i][j]);
                let rhs = supercommutator(&self.action[i], par(i), &self.action[j], par(j));
                if lhs != rhs {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

pub fn check_restricted_module(l: &LieSuperalgebra, pm: &PMap, m: &LModule, samples: usize, seed: u64) -> Report {
    let pv = l.prime().get();
    let mut rep = Report::new("restricted-module").with_seed(seed);
    let graded = (0..l.dim()).all(|i| {
        super::superalg::GradedLinearMap { parity: l.basis()[i].parity, mat: m.action[i].clone() }
            .is_graded(&m.basis, &m.basis)
    });
    rep.check("module/graded", "phi(x) has the parity of x", graded, || json!({}));
    let defect = m.morphism_defect(l);
    rep.check("module/bracket", "phi([x,y]) = [phi(x), phi(y)] on basis pairs", defect.is_none(), || {
        let (i, j) = defect.unwrap();
        json!({ "x": basis_name(l, i), "y": basis_name(l, j) })
    });
    for (j, img) in pm.images() {
        let x = basis_name(l, j);
        let ok = m.action[j].pow(pv) == m.act(l, &img);
        let bad_m = if ok {
            None
        } else {
            let lhs = m.action[j].pow(pv);
            let rhs = m.act(l, &img);
            (0..m.dim()).find(|&k| lhs.column(k) != rhs.column(k))
        };
        rep.check(format!("restricted/{x}"), "x^p . m = x^[p] . m", ok, || {
            json!({ "x": x, "m": bad_m.map(|k| m.basis[k].name.clone()) })
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = None;
    for t in 0..samples {
        let x = l.random_homogeneous(Parity::Even, &mut rng);
        if m.act(l, &x).pow(pv) != m.act(l, &pm.eval(l, &x).unwrap()) {
            bad = Some(json!({ "sample": t, "x": x }));
            break;
        }
    }
    rep.check("sampled/restricted", "x^p . m = x^[p] . m on sampled even x", bad.is_none(), || bad.unwrap());
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(name: &str, odd: bool) -> BasisElem {
        BasisElem::new(name, if odd { Parity::Odd } else { Parity::Even })
    }

    /// 2|1: [x1,x3] = x3, [x2,x3] = -x3.
    fn two_one(p: Prime) -> LieSuperalgebra {
        let m1 = p.neg(1);
        LieSuperalgebra::from_upper(
            p,
            vec![b("x1", false), b("x2", false), b("x3", true)],
            &[(0, 2, vec![0, 0, 1]), (1, 2, vec![0, 0, m1])],
        )
        .unwrap()
    }

    #[test]
    fn jacobson_on_two_one() {
        for pv in [3, 5, 7] {
            let p = Prime::new(pv).unwrap();
            let l = two_one(p);
            let fam = jacobson_solve(&l).unwrap();
            assert_eq!(fam.particular.image(0).unwrap(), &vec![1, 0, 0]);
            assert_eq!(fam.particular.image(1).unwrap(), &vec![p.neg(1), 0, 0]);
            assert_eq!(fam.center.len(), 1);
            let c = &fam.center[0];
            assert!(c[0] != 0 && c[0] == c[1] && c[2] == 0);
            assert!(check_restricted(&l, &fam.particular, 50, 7).passed());
        }
    }

    #[test]
    fn abelian_has_zero_particular_solution() {
        let p = Prime::new(5).unwrap();
        let l = LieSuperalgebra::from_upper(p, vec![b("a", false), b("f", true)], &[]).unwrap();
        let fam = jacobson_solve(&l).unwrap();
        assert!(is_zero_vec(fam.particular.image(0).unwrap()));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let x = l.random_homogeneous(Parity::Even, &mut rng);
            let y = l.random_homogeneous(Parity::Even, &mut rng);
            assert!(s_coefficients(&l, &x, &y).iter().all(|s| is_zero_vec(s)));
        }
    }

    #[test]
    fn s_with_zero_argument_vanishes() {
        let p = Prime::new(5).unwrap();
        let l = two_one(p);
        let x = vec![2, 3, 0];
        assert!(s_coefficients(&l, &x, &l.zero()).iter().all(|s| is_zero_vec(s)));
    }

    #[test]
    fn s_matches_nested_brackets() {
        // 3|0 with [h,e] = e, [h,f] = -f, [e,f] = h: sl2 in characteristic p.
        for pv in [3u64, 5, 7] {
            let p = Prime::new(pv).unwrap();
            let l = LieSuperalgebra::from_upper(
                p,
                vec![b("h", false), b("e", false), b("f", false)],
                &[(0, 1, vec![0, 1, 0]), (0, 2, vec![0, 0, p.neg(1)]), (1, 2, vec![1, 0, 0])],
            )
            .unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(pv);
            for _ in 0..20 {
                let x = l.random_homogeneous(Parity::Even, &mut rng);
                let y = l.random_homogeneous(Parity::Even, &mut rng);
                assert_eq!(s_sum(&l, &x, &y), s_sum_nested(&l, &x, &y));
            }
            let fam = jacobson_solve(&l).unwrap();
            assert!(fam.center.is_empty());
            assert!(check_restricted(&l, &fam.particular, 40, 1).passed());
        }
    }

    #[test]
    fn corrupted_image_is_named() {
        let p = Prime::new(3).unwrap();
        let l = two_one(p);
        let good = jacobson_solve(&l).unwrap().particular;
        let bad = good.shifted(&l, &[(0, vec![0, 1, 0])]);
        // ad_{x1 + x2} kills x3 while ad_{x1}^p does not.
        let rep = check_restricted(&l, &bad, 10, 1);
        let c = rep.claim("ad-pth-power/x1").unwrap();
        assert_eq!(c.witness.as_ref().unwrap()["y"], "x3");
    }

    #[test]
    fn family_membership() {
        let p = Prime::new(5).unwrap();
        let l = two_one(p);
        let fam = jacobson_solve(&l).unwrap();
        let shifted = fam.particular.shifted(&l, &[(0, vec![3, 3, 0]), (1, vec![1, 1, 0])]);
        assert!(check_jacobson_family(&l, &shifted).passed());
        let off = fam.particular.shifted(&l, &[(1, vec![0, 1, 0])]);
        let r = check_jacobson_family(&l, &off);
        assert_eq!(r.claim("jacobson/family").unwrap().witness.as_ref().unwrap()["basis"], json!(["x2"]));
    }

    #[test]
    fn adjoint_module_is_restricted() {
        let p = Prime::new(5).unwrap();
        let l = two_one(p);
        let pm = jacobson_solve(&l).unwrap().particular;
        assert!(check_restricted_module(&l, &pm, &LModule::adjoint(&l), 30, 2).passed());
        let triv = LModule::trivial(&l, vec![b("m", false)]);
        assert!(check_restricted_module(&l, &pm, &triv, 30, 2).passed());
    }

    #[test]
    fn rejects_broken_jacobi() {
        let p = Prime::new(5).unwrap();
        let r = LieSuperalgebra::from_upper(
            p,
            vec![b("a", false), b("b", false), b("c", false)],
            &[(0, 1, vec![0, 0, 1]), (1, 2, vec![1, 0, 0]), (0, 2, vec![0, 0, 1])],
        );
        assert!(matches!(r, Err(Error::InvalidStructure(_))));
    }
}
