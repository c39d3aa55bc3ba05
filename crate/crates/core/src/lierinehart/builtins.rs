//! Built-in bundles: derivations of a Grassmann algebra, the Witt superalgebra
//! W(n), and two small structure-constant examples over Lambda(1).

use super::{LRData, Representation};
use crate::algebra::linalg::{coordinates, zero_vec, Mat, Vector};
use crate::algebra::superalg::{grassmann_masks, grassmann_name, GradedLinearMap};
use crate::algebra::{build_grassmann, derivation_space, BasisElem, LieSuperalgebra, PMap, SuperAlgebra};
use crate::error::{Error, Result};
use crate::scalar::Prime;
use crate::superpoly::Parity;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuiltinParams {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
}

impl Default for BuiltinParams {
    fn default() -> Self {
        BuiltinParams { alpha: 1, beta: 1, gamma: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Derivations(usize),
    Witt(usize),
    Example21,
    Example22,
}

impl Builtin {
    /// Accepts `derivations`, `derivations(n)`, `witt(n)`, `example-2-1`, `example-2-2`.
    pub fn parse(name: &str) -> Result<Self> {
        let arg = |prefix: &str| -> Result<Option<usize>> {
            let rest = &name[prefix.len()..];
            if rest.is_empty() {
                return Ok(None);
            }
            rest.strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|r| r.trim().parse().ok())
                .map(Some)
                .ok_or_else(|| Error::UnknownExample(name.to_string()))
        };
        if name.starts_with("derivations") {
            return Ok(Builtin::Derivations(arg("derivations")?.unwrap_or(2)));
        }
        if name.starts_with("witt") {
            return Ok(Builtin::Witt(arg("witt")?.unwrap_or(2)));
        }
        match name {
            "example-2-1" => Ok(Builtin::Example21),
            "example-2-2" => Ok(Builtin::Example22),
            _ => Err(Error::UnknownExample(name.to_string())),
        }
    }
}

/// Builds a named bundle; the derivation bundles also return their tautological module A.
pub fn builtin(name: &str, p: Prime, params: BuiltinParams) -> Result<(LRData, Option<Representation>)> {
    match Builtin::parse(name)? {
        Builtin::Derivations(n) => {
            let a = build_grassmann(n, p)?;
            let ders = derivation_space(&a);
            let names = (1..=ders.len()).map(|k| format!("D{k}")).collect();
            let d = derivation_bundle(&format!("derivations({n})"), a, ders, names)?;
            let m = Representation::tautological(&d);
            Ok((d, Some(m)))
        }
        Builtin::Witt(n) => {
            let a = build_grassmann(n, p)?;
            let (names, ders) = witt_basis(&a, n);
            if ders.len() != derivation_space(&a).len() {
                return Err(Error::InvalidStructure("Witt basis does not match the derivation count".into()));
            }
            let d = derivation_bundle(&format!("witt({n})"), a, ders, names)?;
            let m = Representation::tautological(&d);
            Ok((d, Some(m)))
        }
        Builtin::Example21 => Ok((example_2_1(p, params)?, None)),
        Builtin::Example22 => Ok((example_2_2(p, params)?, None)),
    }
}

/// xi^S d_i on Lambda(n), even elements first, then by (|S|, S, i).
pub fn witt_basis(a: &SuperAlgebra, n: usize) -> (Vec<String>, Vec<GradedLinearMap>) {
    let p = a.prime();
    let masks = grassmann_masks(n);
    let mut out: Vec<(Parity, String, GradedLinearMap)> = Vec::new();
    for &s in &masks {
        for i in 0..n {
            let mut cols = Vec::with_capacity(masks.len());
            for &t in &masks {
                let mut v = zero_vec(masks.len());
                if t >> i & 1 == 1 {
                    let before = (t & ((1u32 << i) - 1)).count_ones();
                    let k = masks.iter().position(|&m| m == t & !(1 << i)).unwrap();
                    v[k] = if before % 2 == 0 { 1 } else { p.neg(1) };
                }
                let si = masks.iter().position(|&m| m == s).unwrap();
                cols.push(a.mul(&a.basis_vec(si), &v));
            }
            let parity = Parity::from_bit(s.count_ones() as u64 + 1);
            let name = if s == 0 { format!("d{}", i + 1) } else { format!("{}d{}", grassmann_name(s), i + 1) };
            out.push((parity, name, GradedLinearMap { parity, mat: Mat::from_columns(p, masks.len(), &cols) }));
        }
    }
    out.sort_by_key(|(q, _, _)| *q);
    out.into_iter().map(|(_, n, g)| (n, g)).unzip()
}

/// (A, span of the given derivations, id) with D^[p] = D^p.
fn derivation_bundle(name: &str, a: SuperAlgebra, ders: Vec<GradedLinearMap>, names: Vec<String>) -> Result<LRData> {
    let p = a.prime();
    let basis: Vec<BasisElem> = names.into_iter().zip(&ders).map(|(n, d)| BasisElem::new(n, d.parity)).collect();
    let mats: Vec<Mat> = ders.iter().map(|d| d.mat.clone()).collect();
    let flat: Vec<Vector> = mats.iter().map(|m| m.entries().to_vec()).collect();
    let l = LieSuperalgebra::from_matrices(p, basis, &mats)?;
    let coords = |m: &Mat| {
        coordinates(p, &flat, m.entries()).ok_or_else(|| Error::InvalidStructure(format!("{name}: not closed")))
    };
    let mut action = Vec::with_capacity(a.dim());
    for i in 0..a.dim() {
        let la = a.left_mult(&a.basis_vec(i));
        action.push(mats.iter().map(|d| coords(&la.mul(d))).collect::<Result<Vec<_>>>()?);
    }
    let images = l
        .even_indices()
        .into_iter()
        .map(|j| Ok((j, coords(&mats[j].pow(p.get()))?)))
        .collect::<Result<Vec<_>>>()?;
    let pm = PMap::new(&l, images)?;
    LRData::new(name, a, l, Some(pm), action, mats)
}

/// Lambda(1) with basis e1 (unit), e2.
fn lambda_one(p: Prime) -> Result<SuperAlgebra> {
    let g = build_grassmann(1, p)?;
    let basis = vec![BasisElem::new("e1", Parity::Even), BasisElem::new("e2", Parity::Odd)];
    SuperAlgebra::new(p, basis, g.table().clone(), Some(0))
}

fn elem(n: usize, pairs: &[(usize, u64)]) -> Vector {
    let mut v = zero_vec(n);
    for &(k, c) in pairs {
        v[k] = c;
    }
    v
}

/// A = Lambda(1); L = <x1, x2 | x3> with [x1,x3] = x3, [x2,x3] = -x3;
/// e2 x1 = beta x3, e2 x2 = gamma x3, e2 x3 = 0; rho(x1)(e2) = e2, rho(x2)(e2) = -e2;
/// x1^[p] = x1 + alpha (x1 + x2), x2^[p] = -x1 + alpha (x1 + x2).
pub fn example_2_1(p: Prime, params: BuiltinParams) -> Result<LRData> {
    let (al, be, ga) = (p.from_i64(params.alpha), p.from_i64(params.beta), p.from_i64(params.gamma));
    let m1 = p.neg(1);
    let a = lambda_one(p)?;
    let basis = vec![
        BasisElem::new("x1", Parity::Even),
        BasisElem::new("x2", Parity::Even),
        BasisElem::new("x3", Parity::Odd),
    ];
    let l = LieSuperalgebra::from_upper(p, basis, &[(0, 2, elem(3, &[(2, 1)])), (1, 2, elem(3, &[(2, m1)]))])?;
    let pm = PMap::new(
        &l,
        vec![(0, elem(3, &[(0, p.add(1, al)), (1, al)])), (1, elem(3, &[(0, p.sub(al, 1)), (1, al)]))],
    )?;
    let unit_row: Vec<Vector> = (0..3).map(|j| l.basis_vec(j)).collect();
    let e2_row = vec![elem(3, &[(2, be)]), elem(3, &[(2, ga)]), zero_vec(3)];
    let rho = |c: u64| Mat::from_columns(p, 2, &[vec![0, 0], vec![0, c]]);
    let anchor = vec![rho(1), rho(m1), Mat::zeros(p, 2, 2)];
    LRData::new("example-2-1", a, l, Some(pm), vec![unit_row, e2_row], anchor)
}

/// A = Lambda(1); L = <x1, x2 | x3, x4> with [x1,x3] = x3, [x1,x4] = x4, [x2,x4] = x3;
/// e2 x1 = alpha x3, e2 x2 = beta x3; rho(x1)(e2) = e2; x1^[p] = x1, x2^[p] = 0.
pub fn example_2_2(p: Prime, params: BuiltinParams) -> Result<LRData> {
    let (al, be) = (p.from_i64(params.alpha), p.from_i64(params.beta));
    let a = lambda_one(p)?;
    let basis = vec![
        BasisElem::new("x1", Parity::Even),
        BasisElem::new("x2", Parity::Even),
        BasisElem::new("x3", Parity::Odd),
        BasisElem::new("x4", Parity::Odd),
    ];
    let l = LieSuperalgebra::from_upper(
        p,
        basis,
        &[(0, 2, elem(4, &[(2, 1)])), (0, 3, elem(4, &[(3, 1)])), (1, 3, elem(4, &[(2, 1)]))],
    )?;
    let pm = PMap::new(&l, vec![(0, elem(4, &[(0, 1)])), (1, zero_vec(4))])?;
    let unit_row: Vec<Vector> = (0..4).map(|j| l.basis_vec(j)).collect();
    let e2_row = vec![elem(4, &[(2, al)]), elem(4, &[(2, be)]), zero_vec(4), zero_vec(4)];
    let mut anchor = vec![Mat::zeros(p, 2, 2); 4];
    anchor[0] = Mat::from_columns(p, 2, &[vec![0, 0], vec![0, 1]]);
    LRData::new("example-2-2", a, l, Some(pm), vec![unit_row, e2_row], anchor)
}
