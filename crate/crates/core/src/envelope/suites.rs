//! Seeded sampling suites for the rewriting: confluence, degree filtration,
//! associativity, and the closed multiplication table.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::quotient::UpAL;
use super::{dimension, l_degree, Gen, PbwElement, RewriteSystem, Word};
use crate::error::Result;
use crate::report::Report;

fn generators(sys: &RewriteSystem) -> Vec<Gen> {
    let mut g: Vec<Gen> = (0..sys.lie().dim()).map(Gen::L).collect();
    if let Some(d) = sys.bundle() {
        let unit = d.a.unit_index();
        g.extend((0..d.a.dim()).filter(|&i| Some(i) != unit).map(Gen::A));
    }
    g
}

/// Random word of length 1..=max_len over the generators.
pub fn random_word<R: Rng>(sys: &RewriteSystem, max_len: usize, rng: &mut R) -> Word {
    let g = generators(sys);
    let n = rng.gen_range(1..=max_len);
    (0..n).map(|_| g[rng.gen_range(0..g.len())]).collect()
}

fn word_name(sys: &RewriteSystem, w: &[Gen]) -> String {
    w.iter().map(|&g| sys.gen_name(g)).collect::<Vec<_>>().join(" ")
}

/// Two independent randomized rewriting orders and the leftmost order agree on `words` random words.
pub fn check_confluence(sys: &RewriteSystem, words: usize, max_len: usize, seed: u64) -> Report {
    let mut rep = Report::new("confluence").with_seed(seed);
    let mut gen_rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r1 = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut r2 = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x2545_f491_4f6c_dd1d));
    let mut bad = Vec::new();
    let mut mismatches = 0usize;
    for _ in 0..words {
        let w = random_word(sys, max_len, &mut gen_rng);
        let x = PbwElement::word(w.clone());
        let a = sys.normal_form_random(&x, &mut r1);
        let b = sys.normal_form_random(&x, &mut r2);
        let c = sys.normal_form(&x);
        if a != b || a != c {
            mismatches += 1;
            if bad.len() < 5 {
                bad.push(json!({ "word": word_name(sys, &w), "first": sys.format(&a), "second": sys.format(&b) }));
            }
        }
    }
    rep.check(
        "pbw/confluence",
        "normal forms do not depend on the order of rule applications",
        mismatches == 0,
        || json!({ "mismatches": mismatches, "words": words, "examples": bad }),
    );
    rep
}

/// No rule increases the number of L-letters.
pub fn check_filtration(sys: &RewriteSystem, words: usize, max_len: usize, seed: u64) -> Report {
    let mut rep = Report::new("filtration").with_seed(seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for _ in 0..words {
        let w = random_word(sys, max_len, &mut rng);
        let nf = sys.normal_form(&PbwElement::word(w.clone()));
        if nf.degree() > l_degree(&w) && bad.len() < 5 {
            bad.push(json!(word_name(sys, &w)));
        }
    }
    rep.check("pbw/filtration", "deg normal_form(w) <= deg w", bad.is_empty(), || Value::Array(bad));
    rep
}

/// normal_form((uv)w) = normal_form(u(vw)) on random quotient elements.
pub fn check_associativity(up: &UpAL, triples: usize, seed: u64) -> Report {
    let p = up.system().prime();
    let mut rep = Report::new("associativity").with_seed(seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = up.dim();
    let mut bad = Vec::new();
    for t in 0..triples {
        let [u, v, w]: [PbwElement; 3] = std::array::from_fn(|_| {
            let c: Vec<u64> = (0..q).map(|_| if rng.gen_bool(0.3) { rng.gen_range(0..p.get()) } else { 0 }).collect();
            up.from_quotient_coords(&c)
        });
        if up.mul(&up.mul(&u, &v), &w) != up.mul(&u, &up.mul(&v, &w)) && bad.len() < 5 {
            bad.push(json!({ "sample": t }));
        }
    }
    rep.check("pbw/associativity", "(uv)w = u(vw)", bad.is_empty(), || Value::Array(bad));
    rep
}

/// The PBW monomials are their own normal forms, the product of any two lies in
/// their span, and the resulting table is an associative superalgebra of
/// dimension p^{dim L_even} 2^{dim L_odd} (U_p(L) only) satisfying the relations.
pub fn check_multiplication_table(up: &UpAL) -> Result<Report> {
    let sys = up.system();
    let p = sys.prime();
    let mut rep = Report::new("multiplication-table");
    let words = up.basis_words();
    if sys.bundle().is_none() {
        let want = dimension(sys.lie());
        let got = words.len();
        rep.check(
            "pbw/dimension",
            "dim U_p(L) = p^{dim L_even} 2^{dim L_odd}",
            want == got.into(),
            || json!({ "expected": want.to_string(), "got": got }),
        );
    }
    let mut bad = Vec::new();
    for w in &words {
        let x = PbwElement::word(w.clone());
        if up.normal_form(&x) != x && bad.len() < 5 {
            bad.push(json!(word_name(sys, w)));
        }
    }
    rep.check("pbw/monomials-normal", "every basis monomial is its own normal form", bad.is_empty(), || {
        Value::Array(bad)
    });

    let table = up.to_assoc();
    let ok = table.is_ok();
    rep.check("pbw/associative-table", "the multiplication table closes and is associative", ok, || {
        json!(table.as_ref().err().map(|e| e.to_string()))
    });
    let Ok(alg) = table else {
        return Ok(rep);
    };

    // Relations of U_p(L) read off the table: swap, p-th powers, odd squares.
    let l = sys.lie();
    let gen = |j: usize| up.quotient_coords(&sys.l_element(&l.basis_vec(j)));
    let mut bad = Vec::new();
    for j in 0..l.dim() {
        for k in 0..l.dim() {
            let (pj, pk) = (l.basis()[j].parity, l.basis()[k].parity);
            let lhs = alg.supercommutator(&gen(j), pj, &gen(k), pk);
            if lhs != up.quotient_coords(&sys.l_element(&l.table()[j][k])) && bad.len() < 5 {
                bad.push(json!({ "x": l.basis()[j].name, "y": l.basis()[k].name }));
            }
        }
    }
    for j in l.even_indices() {
        let lhs = alg.pow(&gen(j), p.get());
        if lhs != up.quotient_coords(&sys.l_element(sys.pmap().image(j).unwrap())) && bad.len() < 5 {
            bad.push(json!({ "x": l.basis()[j].name, "relation": "p-th power" }));
        }
    }
    rep.check("pbw/relations", "the table satisfies [x,y] = xy - (-1)^{|x||y|} yx and x^p = x^[p]", bad.is_empty(), || {
        Value::Array(bad)
    });
    Ok(rep)
}
