use super::*;
use crate::algebra::linalg::coordinates;
use crate::report::Verdict;

fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

fn load(name: &str, p: u64) -> (LRData, Option<Representation>) {
    builtin(name, prime(p), BuiltinParams::default()).unwrap()
}

fn failing(r: &Report) -> Vec<String> {
    r.failures().map(|c| c.id.clone()).collect()
}

#[test]
fn builtins_are_restricted_lr() {
    for (name, p) in [
        ("derivations(1)", 3),
        ("derivations(2)", 3),
        ("witt(2)", 3),
        ("witt(2)", 5),
        ("example-2-1", 3),
        ("example-2-1", 5),
        ("example-2-2", 3),
        ("example-2-2", 5),
    ] {
        let (d, _) = load(name, p);
        assert!(check_lr(&d).passed(), "{name} p={p}: {:?}", failing(&check_lr(&d)));
        let r = check_restricted_lr(&d, 20, 7).unwrap();
        assert!(r.passed(), "{name} p={p}: {:?}", failing(&r));
    }
}

#[test]
fn example_2_1_over_parameters() {
    let p = prime(5);
    for (alpha, beta, gamma) in [(0, 0, 0), (2, 3, 4), (4, 1, 1), (1, 0, 3)] {
        let d = builtins::example_2_1(p, BuiltinParams { alpha, beta, gamma }).unwrap();
        assert!(check_lr(&d).passed());
        assert!(check_restricted_lr(&d, 10, 1).unwrap().passed());
    }
}

#[test]
fn witt_two_dimensions() {
    let (d, m) = load("witt(2)", 3);
    assert_eq!(d.a.sdim(), (2, 2));
    assert_eq!(d.l.sdim(), (4, 4));
    assert_eq!(m.unwrap().dim(), 4);
    assert_eq!(d.l.basis()[0].name, "xi1d1");
    let names: Vec<&str> = d.l.basis().iter().map(|b| b.name.as_str()).collect();
    assert!(names.contains(&"xi1xi2d2"));
}

#[test]
fn parse_names() {
    assert_eq!(Builtin::parse("witt(3)").unwrap(), Builtin::Witt(3));
    assert_eq!(Builtin::parse("derivations").unwrap(), Builtin::Derivations(2));
    assert!(matches!(Builtin::parse("witt(x)"), Err(Error::UnknownExample(_))));
    assert!(matches!(Builtin::parse("heisenberg"), Err(Error::UnknownExample(_))));
}

#[test]
fn corrupted_anchor_is_witnessed() {
    let (mut d, _) = load("example-2-1", 3);
    d.anchor[0] = Mat::zeros(d.a.prime(), 2, 2);
    let r = check_lr(&d);
    let leib = r.claims.iter().find(|c| c.id == "leibniz").unwrap();
    assert_eq!(leib.verdict, Verdict::Fail);
    let ws = leib.witness.as_ref().unwrap().as_array().unwrap();
    assert!(ws.contains(&json!({ "x": "x1", "a": "e2", "y": "x1" })), "{ws:?}");
    // [x1, e2 x3] = 0 for every anchor, so (x1, e2, x3) is not a witness.
    assert!(!ws.contains(&json!({ "x": "x1", "a": "e2", "y": "x3" })));
}

#[test]
fn corrupted_pmap_is_witnessed() {
    // With A_even = F_p the LR identities are homogeneous in a, so a bad x2^[p]
    // only shows up in the restricted axioms of L.
    let (mut d, _) = load("example-2-2", 3);
    let mut images = d.pmap.as_ref().unwrap().images();
    images[1].1 = d.l.basis_vec(0);
    d.pmap = Some(PMap::new(&d.l, images).unwrap());
    assert!(check_restricted_lr(&d, 20, 3).unwrap().passed());
    let r = crate::algebra::check_restricted(&d.l, d.pmap.as_ref().unwrap(), 5, 3);
    assert!(failing(&r).contains(&"ad-pth-power/x2".to_string()), "{:?}", failing(&r));
}

#[test]
fn worked_p3_expansions() {
    let (d, _) = load("witt(2)", 3);
    let r = worked::check_der_p3(&d, 50, 11).unwrap();
    assert!(r.passed(), "{:?}", failing(&r));
    assert_eq!(r.claims.len(), 8);
    let (d5, _) = load("witt(2)", 5);
    assert!(matches!(worked::check_der_p3(&d5, 1, 1), Err(Error::PreconditionViolated(_))));
}

#[test]
fn odd_odd_by_hand() {
    // a = xi1, D = d1: (aD)^3 = xi1 d1 and a D(a)^2 D = xi1 d1.
    let (d, _) = load("witt(2)", 3);
    let a = d.a.basis_vec(d.a.index_of("xi1").unwrap());
    let x = d.l.basis_vec(d.l.index_of("d1").unwrap());
    let ad = d.a.left_mult(&a).mul(&d.rho(&x));
    assert_eq!(ad.pow(3), ad);
    let (lhs, rhs) = restricted_lr_sides(&d, &a, Parity::Odd, &x, Parity::Odd).unwrap();
    assert_eq!(lhs, rhs);
    assert_eq!(lhs, d.l.basis_vec(d.l.index_of("xi1d1").unwrap()));
}

#[test]
fn hochschild_on_tautological_module() {
    let (d, m) = load("witt(2)", 3);
    let r = check_hochschild_theorem(&d, &m.unwrap(), 30, 5).unwrap();
    assert!(r.passed(), "{:?}", failing(&r));
    assert_eq!(r.claims.len(), 4);
}

#[test]
fn representation_checks() {
    let (d, m) = load("witt(2)", 3);
    let m = m.unwrap();
    let r = check_representation(&d, &m, 30, 5).unwrap();
    assert!(r.passed(), "{:?}", failing(&r));

    let z = Representation::zero(&d);
    assert!(check_representation(&d, &z, 5, 5).unwrap().passed());

    let mut bad = m.clone();
    bad.phi[0] = bad.phi[0].add(&Mat::identity(d.a.prime(), 4));
    let r = check_representation(&d, &bad, 5, 5).unwrap();
    let ids = failing(&r);
    assert!(ids.contains(&"module/a-linear".to_string()), "{ids:?}");
    assert!(matches!(check_hochschild_theorem(&d, &bad, 1, 1), Err(Error::ModuleCompatibilityViolated(_))));
}

#[test]
fn morphisms() {
    let (w, _) = load("witt(2)", 3);
    let p = w.a.prime();
    let id_a = Mat::identity(p, w.a.dim());
    let r = check_lr_morphism(&w, &w, &id_a, &Mat::identity(p, w.l.dim())).unwrap();
    assert!(r.passed());

    // rho: W(2) -> Der(Lambda(2)) with the identity on A.
    let (der, _) = load("derivations(2)", 3);
    let flat: Vec<Vector> = der.anchor.iter().map(|m| m.entries().to_vec()).collect();
    let cols: Vec<Vector> = w.anchor.iter().map(|m| coordinates(p, &flat, m.entries()).unwrap()).collect();
    let g = Mat::from_columns(p, der.l.dim(), &cols);
    let r = check_lr_morphism(&w, &der, &id_a, &g).unwrap();
    assert!(r.passed(), "{:?}", failing(&r));

    let mut swap = Mat::zeros(p, w.l.dim(), w.l.dim());
    swap[(0, w.l.dim() - 1)] = 1;
    assert!(matches!(check_lr_morphism(&w, &w, &id_a, &swap), Err(Error::PreconditionViolated(_))));
}

fn example_4_7_over_fp(p: u64) -> (LRData, Representation) {
    centerless_instance(prime(p)).unwrap()
}

#[test]
fn semidirect_centerless() {
    for p in [3, 5] {
        let (d, m) = example_4_7_over_fp(p);
        assert!(d.l.center().is_empty());
        let res = build_semidirect(&d, &m, 20, 9).unwrap();
        assert!(res.center.is_empty());
        assert_eq!(res.lie.sdim(), (4, 4));
        assert!(res.report.passed(), "p={p}: {:?}", failing(&res.report));
        assert!(res.report.claims.iter().any(|c| c.id == "lr/restricted/even/odd"));
    }
}

#[test]
fn semidirect_with_center_is_flagged() {
    let (d, m) = load("witt(2)", 3);
    let res = build_semidirect(&d, &m.unwrap(), 10, 2).unwrap();
    assert!(!res.center.is_empty());
    let c = res.report.claims.iter().find(|c| c.id == "lr/restricted").unwrap();
    assert_eq!(c.verdict, Verdict::NotApplicable);
    assert!(res.report.passed(), "{:?}", failing(&res.report));
}

#[test]
fn semidirect_bracket_on_pairs() {
    let (d, m) = example_4_7_over_fp(3);
    let sd = semidirect::semidirect_lie(&d.l, &m.to_lmodule()).unwrap();
    // [(x1, 0), (0, x3)] = (0, phi(x1) x3) = (0, x3)
    let x1 = sd.basis_vec(0);
    let v3 = sd.basis_vec(d.l.dim() + 2);
    assert_eq!(sd.bracket(&x1, &v3), v3);
    let v1 = sd.basis_vec(d.l.dim());
    assert!(is_zero_vec(&sd.bracket(&v1, &v3)));
}

#[test]
fn semidirect_requires_restricted_module() {
    let (d, mut m) = example_4_7_over_fp(3);
    m.phi[1] = m.phi[1].add(&Mat::identity(d.a.prime(), 4));
    assert!(matches!(build_semidirect(&d, &m, 5, 1), Err(Error::PreconditionViolated(_))));
}

#[test]
fn lemmas_on_gl() {
    for (p, a, b) in [(3, 1, 1), (3, 2, 1), (5, 1, 1)] {
        let (l, pm, m) = gl_natural(prime(p), a, b).unwrap();
        assert!(crate::algebra::check_restricted(&l, &pm, 5, 1).passed());
        let r = check_semidirect_lemmas(&l, &m, p, 20, 4).unwrap();
        assert!(r.passed(), "p={p} gl({a}|{b}): {:?}", failing(&r));
    }
}
