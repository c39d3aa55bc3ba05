//! The semidirect product L x| V for a restricted module V, its p-map, and
//! the Lie-Rinehart structure (A, L x| V, rho~).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{check_lr, check_restricted_lr, LRData, Representation};
use crate::algebra::linalg::{axpy, coordinates, is_zero_vec, vsub, zero_vec, Mat, Vector};
use crate::algebra::superalg::random_homogeneous;
use crate::algebra::{
    check_restricted, check_restricted_module, jacobson_solve, BasisElem, LModule, LieSuperalgebra, PMap, PMapFamily,
    SuperAlgebra,
};
use crate::error::{Error, Result};
use crate::report::{Claim, Report, Verdict};
use crate::scalar::{binom, Prime};
use crate::superpoly::Parity;

#[derive(Debug, Clone)]
pub struct SemidirectResult {
    pub lie: LieSuperalgebra,
    pub center: Vec<Vector>,
    /// e_i -> e_i^[p], v_j -> 0.
    pub pmap: PMap,
    pub family: PMapFamily,
    /// (A, L x| V, rho~) with rho~(x + v) = rho(x).
    pub lr: LRData,
    pub report: Report,
}

/// L x| V with [x + v, y + w] = [x, y] + phi(x) w - (-1)^{|y||v|} phi(y) v; L first, then V.
pub fn semidirect_lie(l: &LieSuperalgebra, m: &LModule) -> Result<LieSuperalgebra> {
    let p = l.prime();
    let (nl, nv) = (l.dim(), m.dim());
    let n = nl + nv;
    let mut basis: Vec<BasisElem> = l.basis().to_vec();
    basis.extend(m.basis.iter().cloned());
    let mut table = vec![vec![zero_vec(n); n]; n];
    for i in 0..nl {
        for j in 0..nl {
            table[i][j][..nl].copy_from_slice(&l.table()[i][j]);
        }
        for k in 0..nv {
            let col = m.action[i].column(k);
            table[i][nl + k][nl..].copy_from_slice(&col);
            let s = p.from_i64(-l.basis()[i].parity.koszul(m.basis[k].parity));
            let neg: Vector = col.iter().map(|&c| p.mul(s, c)).collect();
            table[nl + k][i][nl..].copy_from_slice(&neg);
        }
    }
    LieSuperalgebra::new(p, basis, table)
}

fn split(v: &[u64], nl: usize) -> (&[u64], &[u64]) {
    v.split_at(nl)
}

fn join(x: &[u64], v: &[u64]) -> Vector {
    let mut out = x.to_vec();
    out.extend_from_slice(v);
    out
}

/// Assembles L x| V and checks its bracket, its p-map, and, when the center
/// vanishes, the restricted Lie-Rinehart identities for (A, L x| V, rho~).
pub fn build_semidirect(d: &LRData, rep: &Representation, samples: usize, seed: u64) -> Result<SemidirectResult> {
    let pm_l = d.pmap.as_ref().ok_or_else(|| Error::PreconditionViolated("L has no p-map".into()))?;
    let lm = rep.to_lmodule();
    if !check_restricted_module(&d.l, pm_l, &lm, samples.min(50), seed).passed() {
        return Err(Error::PreconditionViolated("the module is not restricted".into()));
    }
    let p = d.a.prime();
    let pv = p.get();
    let (nl, nv) = (d.l.dim(), lm.dim());
    let lie = semidirect_lie(&d.l, &lm)?;
    let mut report = Report::new(format!("semidirect/{}", d.name)).with_seed(seed);

    // Bracket against the defining formula on sampled homogeneous pairs.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = None;
    for t in 0..samples {
        let q1 = if rng.gen() { Parity::Odd } else { Parity::Even };
        let q2 = if rng.gen() { Parity::Odd } else { Parity::Even };
        let u = lie.random_homogeneous(q1, &mut rng);
        let w = lie.random_homogeneous(q2, &mut rng);
        let (x, v) = split(&u, nl);
        let (y, z) = split(&w, nl);
        let mut vpart = lm.act(&d.l, x).apply(z);
        let s = p.from_i64(-q2.koszul(q1));
        axpy(p, &mut vpart, s, &lm.act(&d.l, y).apply(v));
        if lie.bracket(&u, &w) != join(&d.l.bracket(x, y), &vpart) && bad.is_none() {
            bad = Some(json!({ "sample": t, "u": u, "w": w }));
        }
    }
    report.check("bracket/formula", "[x+v, y+w] = [x,y] + phi(x)w - (-1)^{|y||v|} phi(y)v", bad.is_none(), || {
        bad.unwrap()
    });

    let images: Vec<(usize, Vector)> = lie
        .even_indices()
        .into_iter()
        .map(|j| if j < nl { (j, join(pm_l.image(j).unwrap(), &zero_vec(nv))) } else { (j, lie.zero()) })
        .collect();
    let pmap = PMap::new(&lie, images)?;

    let sub = check_restricted(&lie, &pmap, samples.min(50), seed);
    let failed: Vec<String> = sub.failures().map(|c| c.id.clone()).collect();
    report.check("pmap/restricted", "the assembled p-map satisfies the restricted axioms", failed.is_empty(), || {
        json!(failed)
    });

    let mut ws = Vec::new();
    for i in d.l.even_indices() {
        for k in (0..nv).filter(|&k| lm.basis[k].parity == Parity::Even) {
            let mut arg = lie.basis_vec(i);
            arg[nl + k] = 1;
            let lhs = pmap.eval(&lie, &arg)?;
            let vk = lie.basis_vec(nl + k);
            let rhs = join(pm_l.image(i).unwrap(), &lm.action[i].pow(pv - 1).apply(&vk[nl..]));
            if lhs != rhs && ws.len() < 5 {
                ws.push(json!({ "e": d.l.basis()[i].name, "v": lm.basis[k].name }));
            }
        }
    }
    report.check("pmap/basis-display", "(e_i + v_j)^[p] = e_i^[p] + phi(e_i)^{p-1}(v_j)", ws.is_empty(), || {
        Value::Array(ws)
    });

    let family = jacobson_solve(&lie)?;
    let diff_ok = pmap.images().iter().all(|(j, img)| {
        let part = family.particular.image(*j).unwrap();
        let diff: Vector = img.iter().zip(part).map(|(&a, &b)| p.sub(a, b)).collect();
        is_zero_vec(&diff) || coordinates(p, &family.center, &diff).is_some()
    });
    report.check("pmap/jacobson-family", "the assembled p-map lies in the Jacobson family", diff_ok, || json!({}));

    let center = lie.center();
    let lr = extended_bundle(d, rep, lie.clone(), pmap.clone())?;

    let mut ws = Vec::new();
    for j in 0..lie.dim() {
        let want = if j < nl { d.anchor[j].clone() } else { Mat::zeros(p, d.a.dim(), d.a.dim()) };
        if lr.anchor[j] != want {
            ws.push(json!({ "x": lie.basis()[j].name }));
        }
    }
    report.check("anchor/extension", "rho~(x + v) = rho(x)", ws.is_empty(), || Value::Array(ws));

    if center.is_empty() {
        let mut bad = None;
        for t in 0..samples {
            let x = d.l.random_homogeneous(Parity::Even, &mut rng);
            let v = random_homogeneous(p, &lm.basis, Parity::Even, &mut rng);
            let lhs = pmap.eval(&lie, &join(&x, &v))?;
            let rhs = join(&pm_l.eval(&d.l, &x)?, &lm.act(&d.l, &x).pow(pv - 1).apply(&v));
            if lhs != rhs {
                bad = Some(json!({ "sample": t, "x": x, "v": v }));
                break;
            }
        }
        report.check("pmap/centerless-formula", "(x + v)^[p] = x^[p] + phi(x)^{p-1}(v)", bad.is_none(), || {
            bad.unwrap()
        });
        for c in check_lr(&lr).claims {
            report.claims.push(Claim { id: format!("lr/{}", c.id), ..c });
        }
        for c in check_restricted_lr(&lr, samples, seed)?.claims {
            report.claims.push(Claim { id: format!("lr/{}", c.id), ..c });
        }
    } else {
        let names: Vec<Value> = center.iter().map(|c| json!(c)).collect();
        report.push(
            "lr/restricted",
            "restricted Lie-Rinehart identities for (A, L x| V, rho~) require a trivial center",
            Verdict::NotApplicable,
            Some(json!({ "reason": "center nontrivial", "center": names })),
        );
    }
    Ok(SemidirectResult { lie, center, pmap, family, lr, report })
}

/// (A, L x| V, rho~): a(x + v) = ax + av.
fn extended_bundle(d: &LRData, rep: &Representation, lie: LieSuperalgebra, pmap: PMap) -> Result<LRData> {
    let p = d.a.prime();
    let (nl, nv) = (d.l.dim(), rep.dim());
    let mut action = Vec::with_capacity(d.a.dim());
    for i in 0..d.a.dim() {
        let mut row = Vec::with_capacity(nl + nv);
        for j in 0..nl {
            row.push(join(&d.action[i][j], &zero_vec(nv)));
        }
        for k in 0..nv {
            row.push(join(&zero_vec(nl), &rep.a_action[i].column(k)));
        }
        action.push(row);
    }
    let mut anchor = d.anchor.clone();
    anchor.extend(std::iter::repeat(Mat::zeros(p, d.a.dim(), d.a.dim())).take(nv));
    LRData::new(format!("{} x| module", d.name), d.a.clone(), lie, Some(pmap), action, anchor)
}

/// (F_p, L, 0): L over the ground field with the zero anchor.
pub fn ground_field_bundle(name: &str, l: LieSuperalgebra, pmap: Option<PMap>) -> Result<LRData> {
    let p = l.prime();
    let a = SuperAlgebra::new(p, vec![BasisElem::new("1", Parity::Even)], vec![vec![vec![1]]], Some(0))?;
    let action = vec![(0..l.dim()).map(|j| l.basis_vec(j)).collect()];
    let anchor = vec![Mat::zeros(p, 1, 1); l.dim()];
    LRData::new(name, a, l, pmap, action, anchor)
}

/// An L-module viewed as a module over (F_p, L, 0).
pub fn scalar_representation(p: Prime, m: &LModule) -> Representation {
    Representation { basis: m.basis.clone(), a_action: vec![Mat::identity(p, m.dim())], phi: m.action.clone() }
}

/// example-2-2's Lie superalgebra over F_p with its adjoint module. L has no
/// center, so the semidirect product keeps the restricted-LR structure.
pub fn centerless_instance(p: Prime) -> Result<(LRData, Representation)> {
    let d = super::builtins::example_2_2(p, super::BuiltinParams::default())?;
    let m = scalar_representation(p, &LModule::adjoint(&d.l));
    Ok((ground_field_bundle("example-2-2 over F_p", d.l, d.pmap)?, m))
}

/// gl(m|n) with its natural module; even basis first. The p-map is the matrix p-th power.
pub fn gl_natural(p: Prime, m: usize, n: usize) -> Result<(LieSuperalgebra, PMap, LModule)> {
    let size = m + n;
    let par = |i: usize| Parity::from_bit((i >= m) as u64);
    let mut elems: Vec<(Parity, String, Mat)> = Vec::new();
    for i in 0..size {
        for j in 0..size {
            let mut e = Mat::zeros(p, size, size);
            e[(i, j)] = 1;
            elems.push((par(i) + par(j), format!("E{}{}", i + 1, j + 1), e));
        }
    }
    elems.sort_by_key(|(q, _, _)| *q);
    let basis: Vec<BasisElem> = elems.iter().map(|(q, s, _)| BasisElem::new(s.clone(), *q)).collect();
    let mats: Vec<Mat> = elems.into_iter().map(|(_, _, e)| e).collect();
    let l = LieSuperalgebra::from_matrices(p, basis, &mats)?;
    let flat: Vec<Vector> = mats.iter().map(|e| e.entries().to_vec()).collect();
    let images = l
        .even_indices()
        .into_iter()
        .map(|j| (j, coordinates(p, &flat, mats[j].pow(p.get()).entries()).unwrap()))
        .collect();
    let pm = PMap::new(&l, images)?;
    let module = LModule {
        basis: (0..size).map(|i| BasisElem::new(format!("u{}", i + 1), par(i))).collect(),
        action: mats,
    };
    Ok((l, pm, module))
}

fn binom_mod(p: Prime, n: u64, k: u64) -> u64 {
    p.from_big(&binom(n, k as i64))
}

/// The two operator identities behind the semidirect p-map, for 0 <= n <= n_max:
/// phi(ad_x^n y) = sum_k (-1)^k C(n,k) phi(x)^{n-k} phi(y) phi(x)^k, and
/// ad~^n_{x+v}(y+w) = ad_x^n y + phi(x)^n w + sum_{k>=1} (-1)^k C(n,k) phi(x)^{n-k} phi(y) phi(x)^{k-1} v.
pub fn check_semidirect_lemmas(l: &LieSuperalgebra, m: &LModule, n_max: u64, trials: usize, seed: u64) -> Result<Report> {
    let p = l.prime();
    let sd = semidirect_lie(l, m)?;
    let mut rep = Report::new("semidirect-lemmas").with_seed(seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad1 = Vec::new();
    let mut bad2 = Vec::new();
    let mut bad_p = Vec::new();
    let sign = |k: u64| if k % 2 == 0 { 1 } else { p.neg(1) };
    for t in 0..trials {
        let qy = if t % 2 == 0 { Parity::Even } else { Parity::Odd };
        let x = l.random_homogeneous(Parity::Even, &mut rng);
        let y = l.random_homogeneous(qy, &mut rng);
        let v = random_homogeneous(p, &m.basis, Parity::Even, &mut rng);
        let w = random_homogeneous(p, &m.basis, qy, &mut rng);
        let px = m.act(l, &x);
        let py = m.act(l, &y);
        let adx = l.ad(&x);
        let u = join(&x, &v);
        let z = join(&y, &w);
        let ad_u = sd.ad(&u);
        for n in 0..=n_max {
            let lhs = m.act(l, &adx.pow(n).apply(&y));
            let mut rhs = Mat::zeros(p, m.dim(), m.dim());
            for k in 0..=n {
                let c = p.mul(sign(k), binom_mod(p, n, k));
                rhs = rhs.add(&px.pow(n - k).mul(&py).mul(&px.pow(k)).scale(c));
            }
            if lhs != rhs && bad1.len() < 5 {
                bad1.push(json!({ "trial": t, "n": n }));
            }

            let lhs2 = ad_u.pow(n).apply(&z);
            let mut vpart = px.pow(n).apply(&w);
            for k in 1..=n {
                let c = p.mul(sign(k), binom_mod(p, n, k));
                axpy(p, &mut vpart, c, &px.pow(n - k).mul(&py).mul(&px.pow(k - 1)).apply(&v));
            }
            let rhs2 = join(&adx.pow(n).apply(&y), &vpart);
            if lhs2 != rhs2 && bad2.len() < 5 {
                bad2.push(json!({ "trial": t, "n": n }));
            }
        }
        let pv = p.get();
        let lhs = ad_u.pow(pv).apply(&z);
        let mut vpart = px.pow(pv).apply(&w);
        let corr = py.mul(&px.pow(pv - 1)).apply(&v);
        vpart = vsub(p, &vpart, &corr);
        if lhs != join(&adx.pow(pv).apply(&y), &vpart) && bad_p.len() < 5 {
            bad_p.push(json!({ "trial": t }));
        }
    }
    rep.check("lemma/phi-of-ad-power", "phi(ad_x^n y) = sum (-1)^k C(n,k) phi(x)^{n-k} phi(y) phi(x)^k", bad1.is_empty(), || {
        Value::Array(bad1)
    });
    rep.check(
        "lemma/semidirect-ad-power",
        "ad~^n_{x+v}(y+w) = ad_x^n y + phi(x)^n w + sum_{k>=1} (-1)^k C(n,k) phi(x)^{n-k} phi(y) phi(x)^{k-1} v",
        bad2.is_empty(),
        || Value::Array(bad2),
    );
    rep.check(
        "lemma/semidirect-ad-p",
        "ad~^p_{x+v}(y+w) = ad_x^p y + phi(x)^p w - phi(y) phi(x)^{p-1} v",
        bad_p.is_empty(),
        || Value::Array(bad_p),
    );
    Ok(rep)
}
