use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rlr_core::coeffs::lambda_vector;
use rlr_core::envelope::{PbwElement, RewriteSystem, UpAL};
use rlr_core::lierinehart::{builtin, BuiltinParams};
use rlr_core::shapes::verify_appendix_bundle;
use rlr_core::smash::gamma_oracle;
use rlr_core::{GammaTable, ParityCase, Prime};

fn gamma(c: &mut Criterion) {
    c.bench_function("gamma table k=14 even/odd", |b| b.iter(|| GammaTable::build(black_box(14), ParityCase::EVEN_ODD)));
    c.bench_function("gamma oracle k=10 even/odd", |b| b.iter(|| gamma_oracle(black_box(10), ParityCase::EVEN_ODD)));
}

fn lambda(c: &mut Criterion) {
    let p = Prime::new(13).unwrap();
    c.bench_function("lambda p=13 both routes", |b| b.iter(|| lambda_vector(black_box(p)).routes_agree()));
}

fn appendix(c: &mut Criterion) {
    let mut g = c.benchmark_group("appendix");
    g.sample_size(10);
    g.bench_function("r<=7 p=3,5", |b| b.iter(|| verify_appendix_bundle(black_box(7), &[3, 5]).unwrap()));
    g.finish();
}

fn envelope(c: &mut Criterion) {
    let (d, _) = builtin("example-2-1", Prime::new(3).unwrap(), BuiltinParams::default()).unwrap();
    let sys = RewriteSystem::for_bundle(&d).unwrap();
    let w = PbwElement::word(sys.parse_word("x3 x2 x1 e2 x3 x2 x1 e2").unwrap());
    c.bench_function("pbw normal form, 8-letter word", |b| b.iter(|| sys.normal_form(black_box(&w))));
    let mut g = c.benchmark_group("up");
    g.sample_size(10);
    g.bench_function("U_p(A,L) example-2-1 p=3", |b| b.iter(|| UpAL::bundle(black_box(&d)).unwrap()));
    g.finish();
}

criterion_group!(benches, gamma, lambda, appendix, envelope);
criterion_main!(benches);
