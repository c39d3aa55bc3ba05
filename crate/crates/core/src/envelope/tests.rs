use super::*;
use crate::algebra::linalg::Mat;
use crate::algebra::BasisElem;
use crate::lierinehart::{builtin, BuiltinParams, Representation};
use crate::report::Report;

fn prime(p: u64) -> Prime {
    Prime::new(p).unwrap()
}

fn ex21(p: u64) -> LRData {
    builtin("example-2-1", prime(p), BuiltinParams::default()).unwrap().0
}

fn failing(r: &Report) -> Vec<String> {
    r.failures().map(|c| c.id.clone()).collect()
}

fn abelian(p: u64, even: usize, odd: usize) -> (LieSuperalgebra, PMap) {
    let mut basis: Vec<BasisElem> = (0..even).map(|i| BasisElem::new(format!("e{}", i + 1), Parity::Even)).collect();
    basis.extend((0..odd).map(|i| BasisElem::new(format!("f{}", i + 1), Parity::Odd)));
    let l = LieSuperalgebra::from_upper(prime(p), basis, &[]).unwrap();
    let pm = PMap::new(&l, (0..even).map(|j| (j, l.zero())).collect()).unwrap();
    (l, pm)
}

#[test]
fn even_power_vanishes() {
    let (l, pm) = abelian(3, 1, 0);
    let sys = RewriteSystem::for_lie(&l, &pm);
    let x = PbwElement::word(vec![Gen::L(0); 3]);
    assert!(sys.normal_form(&x).is_zero());
    let x2 = PbwElement::word(vec![Gen::L(0); 2]);
    assert_eq!(sys.normal_form(&x2), x2);
}

#[test]
fn odd_square_is_half_bracket() {
    // gl(1|1)-style: [f, f] = 2 h, so f f = h.
    let p = prime(5);
    let basis = vec![BasisElem::new("h", Parity::Even), BasisElem::new("f", Parity::Odd)];
    let l = LieSuperalgebra::from_upper(p, basis, &[(1, 1, vec![2, 0])]).unwrap();
    let pm = PMap::new(&l, vec![(0, vec![1, 0])]).unwrap();
    let sys = RewriteSystem::for_lie(&l, &pm);
    let nf = sys.normal_form(&PbwElement::word(vec![Gen::L(1), Gen::L(1)]));
    assert_eq!(nf, PbwElement::word(vec![Gen::L(0)]));
}

#[test]
fn swap_in_example_2_1() {
    let d = ex21(3);
    let sys = RewriteSystem::for_lie(&d.l, d.pmap.as_ref().unwrap());
    let w = sys.parse_word("x3 x1").unwrap();
    let nf = sys.normal_form(&PbwElement::word(w));
    assert_eq!(sys.format(&nf), "x1 x3 + 2 x3");
    assert!(sys.parse_word("x9").is_err());
}

#[test]
fn dimensions() {
    let d = ex21(3);
    assert_eq!(dimension(&d.l), BigUint::from(18u32));
    let (l0, _) = abelian(3, 0, 0);
    assert_eq!(dimension(&l0), BigUint::from(1u32));
    let (l11, pm11) = abelian(5, 1, 1);
    assert_eq!(dimension(&l11), BigUint::from(10u32));
    assert_eq!(UpAL::lie(&l11, &pm11).unwrap().dim(), 10);
}

#[test]
fn table_for_example_2_1() {
    for p in [3, 5] {
        let d = ex21(p);
        let up = UpAL::lie(&d.l, d.pmap.as_ref().unwrap()).unwrap();
        assert_eq!(up.dim(), if p == 3 { 18 } else { 50 });
        let r = check_multiplication_table(&up).unwrap();
        assert!(r.passed(), "{:?}", failing(&r));
    }
}

#[test]
fn confluence_and_filtration() {
    let d = ex21(3);
    let sys = RewriteSystem::for_lie(&d.l, d.pmap.as_ref().unwrap());
    assert!(check_confluence(&sys, 200, 6, 1).passed());
    assert!(check_filtration(&sys, 200, 6, 1).passed());
    let sys = RewriteSystem::for_bundle(&d).unwrap();
    assert!(check_confluence(&sys, 200, 6, 2).passed());
    assert!(check_filtration(&sys, 200, 6, 2).passed());
}

#[test]
fn bundle_relations() {
    for name in ["example-2-1", "example-2-2", "derivations(1)"] {
        let (d, _) = builtin(name, prime(3), BuiltinParams::default()).unwrap();
        let r = check_up_relations(&d).unwrap();
        assert!(r.passed(), "{name}: {:?}", failing(&r));
        let up = UpAL::bundle(&d).unwrap();
        assert!(check_associativity(&up, 50, 3).passed(), "{name}");
        let t = check_multiplication_table(&up).unwrap();
        assert!(t.passed(), "{name}: {:?}", failing(&t));
    }
}

#[test]
fn anchor_commutator_in_example_2_1() {
    let d = ex21(3);
    let up = UpAL::bundle(&d).unwrap();
    let p = d.a.prime();
    let x1 = up.i_l(&d.l.basis_vec(0));
    let e2 = up.i_a(&d.a.basis_vec(1));
    let comm = up.mul(&x1, &e2).add(p, &up.mul(&e2, &x1).scale(p, p.neg(1)));
    assert_eq!(comm, e2);
    assert!(!e2.is_zero());
}

#[test]
fn derivations_of_lambda_one_collapse_the_smash_word() {
    // xi (d d) = 0 while the smash monomial (xi d) d survives; the quotient identifies them.
    let (d, _) = builtin("derivations(1)", prime(3), BuiltinParams::default()).unwrap();
    let up = UpAL::bundle(&d).unwrap();
    let sys = up.system();
    let xi = d.a.index_of("xi1").unwrap();
    let odd = d.l.odd_indices()[0];
    let w = PbwElement::word(vec![Gen::A(xi), Gen::L(odd), Gen::L(odd)]);
    assert!(sys.normal_form(&w).is_zero());
    // A-coefficients survive: 1 and xi1 are independent in the quotient.
    assert!(!up.i_a(&d.a.basis_vec(xi)).is_zero());
}

#[test]
fn identity_factorization() {
    let d = ex21(3);
    let up = UpAL::bundle(&d).unwrap();
    let b = up.to_assoc().unwrap();
    let ja = Mat::from_columns(d.a.prime(), up.dim(), &(0..d.a.dim()).map(|i| up.quotient_coords(&up.i_a(&d.a.basis_vec(i)))).collect::<Vec<_>>());
    let jl = Mat::from_columns(d.a.prime(), up.dim(), &(0..d.l.dim()).map(|j| up.quotient_coords(&up.i_l(&d.l.basis_vec(j)))).collect::<Vec<_>>());
    let f = factor_through(&up, &b, &ja, &jl, 50, 4).unwrap();
    assert!(f.report.passed(), "{:?}", failing(&f.report));
    assert_eq!(f.psi, Mat::identity(d.a.prime(), up.dim()));
}

#[test]
fn factor_through_endomorphisms() {
    let d = ex21(3);
    let m = Representation::tautological(&d);
    let up = UpAL::bundle(&d).unwrap();
    let (b, ja, mut jl) = endomorphism_maps(&d, &m).unwrap();
    let f = factor_through(&up, &b, &ja, &jl, 50, 4).unwrap();
    assert!(f.report.passed(), "{:?}", failing(&f.report));

    // Doubling phi(x1) breaks the Lie and restricted conditions.
    let col: Vec<u64> = jl.column(0).iter().map(|&c| d.a.prime().mul(2, c)).collect();
    for (k, c) in col.into_iter().enumerate() {
        jl[(k, 0)] = c;
    }
    assert!(matches!(factor_through(&up, &b, &ja, &jl, 5, 4), Err(Error::PreconditionViolated(_))));
}

mod props {
    use super::*;
    use crate::envelope::suites::random_word;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn words(sys: &RewriteSystem, seed: u64, n: usize) -> Vec<PbwElement> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n).map(|_| PbwElement::word(random_word(sys, 6, &mut rng))).collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn normal_form_is_normal_and_idempotent(seed in any::<u64>(), p in prop::sample::select(vec![3u64, 5])) {
            let sys = RewriteSystem::for_bundle(&ex21(p)).unwrap();
            for x in words(&sys, seed, 4) {
                let n = sys.normal_form(&x);
                prop_assert!(n.terms.keys().all(|w| sys.is_normal(w)));
                prop_assert_eq!(sys.normal_form(&n), n.clone());
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
                prop_assert_eq!(sys.normal_form_random(&x, &mut rng), n);
            }
        }

        #[test]
        fn smash_product_is_associative(seed in any::<u64>()) {
            let sys = RewriteSystem::for_bundle(&ex21(3)).unwrap();
            let w = words(&sys, seed, 3);
            let (a, b, c) = (&w[0], &w[1], &w[2]);
            prop_assert_eq!(sys.mul(&sys.mul(a, b), c), sys.mul(a, &sys.mul(b, c)));
        }
    }
}
