//! Supercommutative associative algebras given by structure constants.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::linalg::{axpy, is_zero_vec, nullspace, unit_vec, zero_vec, Mat, Vector};
use crate::error::{Error, Result};
use crate::scalar::Prime;
use crate::superpoly::Parity;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisElem {
    pub name: String,
    pub parity: Parity,
}

impl BasisElem {
    pub fn new(name: impl Into<String>, parity: Parity) -> Self {
        BasisElem { name: name.into(), parity }
    }
}

/// Structure-constant table: `table[i][j]` holds the coordinates of `e_i * e_j`.
pub type Table = Vec<Vec<Vector>>;

pub(crate) fn check_parity_additive(basis: &[BasisElem], table: &Table, what: &str) -> Result<()> {
    let n = basis.len();
    if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
        return Err(Error::InvalidStructure(format!("{what} table is not {n}x{n}x{n}")));
    }
    for i in 0..n {
        for j in 0..n {
            let want = basis[i].parity + basis[j].parity;
            for (k, &c) in table[i][j].iter().enumerate() {
                if c != 0 && basis[k].parity != want {
                    return Err(Error::InvalidStructure(format!(
                        "{what} of {} and {} has a component along {} of the wrong parity",
                        basis[i].name, basis[j].name, basis[k].name
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Parity of a vector, or `None` if it mixes parities. Zero counts as even.
pub fn vec_parity(basis: &[BasisElem], v: &[u64]) -> Option<Parity> {
    let mut seen: Option<Parity> = None;
    for (k, &c) in v.iter().enumerate() {
        if c == 0 {
            continue;
        }
        match seen {
            None => seen = Some(basis[k].parity),
            Some(q) if q != basis[k].parity => return None,
            _ => {}
        }
    }
    Some(seen.unwrap_or(Parity::Even))
}

pub fn indices_of(basis: &[BasisElem], parity: Parity) -> Vec<usize> {
    (0..basis.len()).filter(|&i| basis[i].parity == parity).collect()
}

/// Uniformly random vector supported on the basis vectors of one parity.
pub fn random_homogeneous<R: Rng>(p: Prime, basis: &[BasisElem], parity: Parity, rng: &mut R) -> Vector {
    let mut v = zero_vec(basis.len());
    for i in indices_of(basis, parity) {
        v[i] = rng.gen_range(0..p.get());
    }
    v
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperAlgebra {
    p: Prime,
    basis: Vec<BasisElem>,
    table: Table,
    unit: Option<usize>,
}

impl SuperAlgebra {
    /// Validates parity additivity, associativity, supercommutativity and the unit on bases.
    pub fn new(p: Prime, basis: Vec<BasisElem>, table: Table, unit: Option<usize>) -> Result<Self> {
        let table: Table = table
            .into_iter()
            .map(|r| r.into_iter().map(|v| v.into_iter().map(|c| c % p.get()).collect()).collect())
            .collect();
        check_parity_additive(&basis, &table, "product")?;
        let a = SuperAlgebra { p, basis, table, unit };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim();
        let name = |i: usize| self.basis[i].name.as_str();
        for i in 0..n {
            for j in 0..n {
                let s = self.basis[i].parity.koszul(self.basis[j].parity);
                let ji = &self.table[j][i];
                let swapped: Vector = ji.iter().map(|&c| self.p.mul(self.p.from_i64(s), c)).collect();
                if self.table[i][j] != swapped {
                    return Err(Error::InvalidStructure(format!(
                        "not supercommutative at ({}, {})",
                        name(i),
                        name(j)
                    )));
                }
                for k in 0..n {
                    let l = self.mul(&self.mul(&unit_vec(n, i), &unit_vec(n, j)), &unit_vec(n, k));
                    let r = self.mul(&unit_vec(n, i), &self.mul(&unit_vec(n, j), &unit_vec(n, k)));
                    if l != r {
                        return Err(Error::InvalidStructure(format!(
                            "not associative at ({}, {}, {})",
                            name(i),
                            name(j),
                            name(k)
                        )));
                    }
                }
            }
        }
        if let Some(u) = self.unit {
            if u >= n || self.basis[u].parity != Parity::Even {
                return Err(Error::InvalidStructure("unit must be an even basis vector".into()));
            }
            for i in 0..n {
                if self.table[u][i] != unit_vec(n, i) {
                    return Err(Error::InvalidStructure(format!("unit does not fix {}", name(i))));
                }
            }
        }
        Ok(())
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

    pub fn unit_index(&self) -> Option<usize> {
        self.unit
    }

    pub fn unit(&self) -> Option<Vector> {
        self.unit.map(|u| unit_vec(self.dim(), u))
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

    /// (dim even, dim odd)
    pub fn sdim(&self) -> (usize, usize) {
        let e = indices_of(&self.basis, Parity::Even).len();
        (e, self.dim() - e)
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vector {
        let n = self.dim();
        let mut out = zero_vec(n);
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                if b[j] == 0 {
                    continue;
                }
                axpy(self.p, &mut out, self.p.mul(a[i], b[j]), &self.table[i][j]);
            }
        }
        out
    }

    pub fn pow(&self, a: &[u64], e: u64) -> Result<Vector> {
        let mut acc = self.unit().ok_or_else(|| Error::PreconditionViolated("algebra has no unit".into()))?;
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        Ok(acc)
    }

    /// Matrix of b -> a b.
    pub fn left_mult(&self, a: &[u64]) -> Mat {
        let cols: Vec<Vector> = (0..self.dim()).map(|j| self.mul(a, &self.basis_vec(j))).collect();
        Mat::from_columns(self.p, self.dim(), &cols)
    }

    pub fn parity_of(&self, v: &[u64]) -> Option<Parity> {
        vec_parity(&self.basis, v)
    }

    pub fn random_homogeneous<R: Rng>(&self, parity: Parity, rng: &mut R) -> Vector {
        random_homogeneous(self.p, &self.basis, parity, rng)
    }
}

/// Grassmann algebra on n generators; basis = subsets ordered by (size, bitmask), unit first.
pub fn build_grassmann(n: usize, p: Prime) -> Result<SuperAlgebra> {
    if !(1..=6).contains(&n) {
        return Err(Error::IndexOutOfRange(format!("grassmann rank {n} (allowed 1..=6)")));
    }
    let masks = grassmann_masks(n);
    let pos = |m: u32| masks.iter().position(|&x| x == m).unwrap();
    let basis: Vec<BasisElem> = masks
        .iter()
        .map(|&m| BasisElem::new(grassmann_name(m), Parity::from_bit(m.count_ones() as u64)))
        .collect();
    let dim = masks.len();
    let mut table = vec![vec![zero_vec(dim); dim]; dim];
    for (i, &s) in masks.iter().enumerate() {
        for (j, &t) in masks.iter().enumerate() {
            if s & t != 0 {
                continue;
            }
            // Each pair (a in s, b in t) with a > b costs one transposition.
            let mut inv = 0;
            for a in 0..n {
                if s >> a & 1 == 1 {
                    inv += (t & ((1u32 << a) - 1)).count_ones();
                }
            }
            table[i][j][pos(s | t)] = if inv % 2 == 0 { 1 } else { p.neg(1) };
        }
    }
    SuperAlgebra::new(p, basis, table, Some(0))
}

pub(crate) fn grassmann_masks(n: usize) -> Vec<u32> {
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|&m| (m.count_ones(), m));
    masks
}

pub(crate) fn grassmann_name(mask: u32) -> String {
    if mask == 0 {
        return "1".into();
    }
    (0..32).filter(|a| mask >> a & 1 == 1).map(|a| format!("xi{}", a + 1)).collect::<Vec<_>>().join("")
}

/// A linear map with a declared parity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedLinearMap {
    pub parity: Parity,
    pub mat: Mat,
}

impl GradedLinearMap {
    /// True when every basis vector of `src` lands in the span of `dst` vectors of shifted parity.
    pub fn is_graded(&self, src: &[BasisElem], dst: &[BasisElem]) -> bool {
        (0..src.len()).all(|j| {
            let want = src[j].parity + self.parity;
            (0..dst.len()).all(|i| self.mat[(i, j)] == 0 || dst[i].parity == want)
        })
    }
}

/// Leibniz defect D(ab) - D(a)b - (-1)^{|D||a|} a D(b) on basis pairs; empty when D is a derivation.
pub fn leibniz_defects(a: &SuperAlgebra, d: &GradedLinearMap) -> Vec<(usize, usize)> {
    let p = a.prime();
    let n = a.dim();
    let mut bad = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let ei = a.basis_vec(i);
            let ej = a.basis_vec(j);
            let lhs = d.mat.apply(&a.mul(&ei, &ej));
            let mut rhs = a.mul(&d.mat.apply(&ei), &ej);
            let s = p.from_i64(d.parity.koszul(a.basis()[i].parity));
            axpy(p, &mut rhs, s, &a.mul(&ei, &d.mat.apply(&ej)));
            if lhs != rhs {
                bad.push((i, j));
            }
        }
    }
    bad
}

/// Basis of Der(A), even derivations first, obtained from the graded Leibniz linear system.
pub fn derivation_space(a: &SuperAlgebra) -> Vec<GradedLinearMap> {
    let mut out = Vec::new();
    for q in [Parity::Even, Parity::Odd] {
        out.extend(derivations_of_parity(a, q));
    }
    out
}

fn derivations_of_parity(a: &SuperAlgebra, q: Parity) -> Vec<GradedLinearMap> {
    let p = a.prime();
    let n = a.dim();
    let par = |i: usize| a.basis()[i].parity;
    // Unknown D[l][m] allowed only when |l| = |m| + q.
    let vars: Vec<(usize, usize)> =
        (0..n).flat_map(|l| (0..n).map(move |m| (l, m))).filter(|&(l, m)| par(l) == par(m) + q).collect();
    let var_of = |l: usize, m: usize| vars.iter().position(|&v| v == (l, m));
    let mut rows: Vec<Vector> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let s = p.from_i64(q.koszul(par(i)));
            for l in 0..n {
                let mut row = zero_vec(vars.len());
                // D(e_i e_j)_l
                for (m, &c) in a.table()[i][j].iter().enumerate() {
                    if let Some(v) = var_of(l, m) {
                        row[v] = p.add(row[v], c);
                    }
                }
                // - (D(e_i) e_j)_l - s (e_i D(e_j))_l
                for k in 0..n {
                    let c1 = a.table()[k][j][l];
                    if let (Some(v), true) = (var_of(k, i), c1 != 0) {
                        row[v] = p.sub(row[v], c1);
                    }
                    let c2 = p.mul(s, a.table()[i][k][l]);
                    if let (Some(v), true) = (var_of(k, j), c2 != 0) {
                        row[v] = p.sub(row[v], c2);
                    }
                }
                if !is_zero_vec(&row) {
                    rows.push(row);
                }
            }
        }
    }
    let sys = Mat::from_rows(p, vars.len(), &rows);
    nullspace(&sys)
        .into_iter()
        .map(|sol| {
            let mut m = Mat::zeros(p, n, n);
            for (v, &(l, col)) in vars.iter().enumerate() {
                m[(l, col)] = sol[v];
            }
            GradedLinearMap { parity: q, mat: m }
        })
        .collect()
}
