//! The p = 3 expansions of (aD)^6 and (aD)^3 for a derivation bundle acting on A.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::LRData;
use crate::algebra::linalg::{Mat, Vector};
use crate::coeffs::lambda_vector;
use crate::error::{Error, Result};
use crate::report::Report;
use crate::superpoly::Parity;

struct Ops<'a> {
    d: &'a LRData,
}

impl Ops<'_> {
    fn l(&self, c: &[u64]) -> Mat {
        self.d.a.left_mult(c)
    }

    fn mul(&self, xs: &[&Vector]) -> Vector {
        let mut acc = self.d.a.unit().unwrap();
        for x in xs {
            acc = self.d.a.mul(&acc, x);
        }
        acc
    }

    fn pow(&self, a: &[u64], e: u64) -> Vector {
        self.d.a.pow(a, e).unwrap()
    }
}

/// Named equalities (lhs, rhs) for even a and odd D.
fn even_odd_sides(o: &Ops, a: &Vector, dm: &Mat) -> Vec<(&'static str, Mat, Mat)> {
    let ad = o.l(a).mul(dm);
    let d2 = dm.pow(2);
    let da = |k: u64| dm.pow(k).apply(a);
    let ada = |k: u64| ad.pow(k).apply(a);
    let two = |m: Mat| m.scale(2);
    let lhs6 = ad.pow(6);

    let t_d3d = two(o.l(&o.mul(&[&o.pow(a, 4), &da(3), &da(1)])).mul(&d2));
    let t_d4 = two(o.l(&o.mul(&[&o.pow(a, 5), &da(4)])).mul(&d2));
    let head = o.l(&o.pow(a, 6)).mul(&dm.pow(6)).add(&o.l(&ada(5)).mul(dm));

    let g1 = two(o.l(&o.mul(&[a, &ada(4)])).mul(&d2));
    let g2 = two(o.l(&o.mul(&[&ada(1), &ada(3)])).mul(&d2));
    let sq = ada(2);
    let g3 = two(o.l(&o.mul(&[&sq, &sq])).mul(&d2));
    let d2a = da(2);

    vec![
        ("direct", lhs6.clone(), head.add(&t_d3d).add(&t_d4)),
        (
            "aux-1",
            g1.clone(),
            o.l(&o.mul(&[&o.pow(a, 4), &d2a, &d2a]))
                .mul(&d2)
                .add(&two(o.l(&o.mul(&[&o.pow(a, 4), &da(1), &da(3)])).mul(&d2)))
                .add(&t_d4),
        ),
        ("aux-2", g2.clone(), o.l(&o.mul(&[&o.pow(a, 4), &da(3), &da(1)])).mul(&d2)),
        ("aux-3", g3.clone(), two(o.l(&o.mul(&[&o.pow(a, 4), &d2a, &d2a])).mul(&d2))),
        ("regrouped", t_d3d.add(&t_d4), g1.add(&g2).add(&g3)),
        ("final", lhs6, head.add(&g1).add(&g2).add(&g3)),
    ]
}

/// Checks, for p = 3 on A itself, the chain of equalities expanding (aD)^6 for
/// even a and odd D, and (aD)^3 = a D(a)^2 D for odd a and odd D.
pub fn check_der_p3(d: &LRData, samples: usize, seed: u64) -> Result<Report> {
    if d.p() != 3 {
        return Err(Error::PreconditionViolated("the expansion is stated for p = 3".into()));
    }
    let o = Ops { d };
    let mut rep = Report::new(format!("derivations-p3/{}", d.name)).with_seed(seed);
    let lam = lambda_vector(d.a.prime()).values();
    rep.check("lambda", "lambda = [2, 2, 2] at p = 3", lam == [2, 2, 2], || json!(lam));

    let odd_l = d.l.odd_indices();
    let mut inputs: Vec<(Value, Vector, Parity, Mat)> = Vec::new();
    for i in 0..d.a.dim() {
        for &j in &odd_l {
            let w = json!({ "a": d.a.basis()[i].name, "D": d.l.basis()[j].name });
            inputs.push((w, d.a.basis_vec(i), d.a.basis()[i].parity, d.anchor[j].clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..samples {
        for pa in [Parity::Even, Parity::Odd] {
            let a = d.a.random_homogeneous(pa, &mut rng);
            let x = d.l.random_homogeneous(Parity::Odd, &mut rng);
            inputs.push((json!({ "sample": t, "a": a, "D": x }), a, pa, d.rho(&x)));
        }
    }

    let names = ["direct", "aux-1", "aux-2", "aux-3", "regrouped", "final"];
    let mut bad: Vec<Vec<Value>> = vec![Vec::new(); names.len()];
    let mut bad_odd = Vec::new();
    for (w, a, pa, dm) in &inputs {
        match pa {
            Parity::Even => {
                for (k, (_, lhs, rhs)) in even_odd_sides(&o, a, dm).into_iter().enumerate() {
                    if lhs != rhs && bad[k].len() < 5 {
                        bad[k].push(w.clone());
                    }
                }
            }
            Parity::Odd => {
                let ad = o.l(a).mul(dm);
                let da = dm.apply(a);
                let rhs = o.l(&o.mul(&[a, &da, &da])).mul(dm);
                if ad.pow(3) != rhs && bad_odd.len() < 5 {
                    bad_odd.push(w.clone());
                }
            }
        }
    }
    for (k, ws) in bad.into_iter().enumerate() {
        let ok = ws.is_empty();
        rep.check_case(format!("even-odd/{}", names[k]), "even/odd", even_odd_anchor(names[k]), ok, || Value::Array(ws));
    }
    let ok = bad_odd.is_empty();
    rep.check_case("odd-odd", "odd/odd", "(aD)^3 = a D(a)^2 D", ok, || Value::Array(bad_odd));
    Ok(rep)
}

fn even_odd_anchor(name: &str) -> &'static str {
    match name {
        "direct" => "(aD)^6 = a^6 D^6 + (aD)^5(a) D + 2 a^4 D^3(a) D(a) D^2 + 2 a^5 D^4(a) D^2",
        "aux-1" => "2 a (aD)^4(a) D^2 = a^4 D^2(a)^2 D^2 + 2 a^4 D(a) D^3(a) D^2 + 2 a^5 D^4(a) D^2",
        "aux-2" => "2 (aD)(a) (aD)^3(a) D^2 = a^4 D^3(a) D(a) D^2",
        "aux-3" => "2 (aD)^2(a)^2 D^2 = 2 a^4 D^2(a)^2 D^2",
        "regrouped" => {
            "2 a^4 D^3(a) D(a) D^2 + 2 a^5 D^4(a) D^2 = 2 a (aD)^4(a) D^2 + 2 (aD)(a) (aD)^3(a) D^2 + 2 (aD)^2(a)^2 D^2"
        }
        _ => "(aD)^6 = a^6 D^6 + (aD)^5(a) D + 2 a (aD)^4(a) D^2 + 2 (aD)(a) (aD)^3(a) D^2 + 2 (aD)^2(a)^2 D^2",
    }
}
