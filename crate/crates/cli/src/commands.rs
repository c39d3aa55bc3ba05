use std::fmt;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rlr_core::algebra::{check_jacobson_family, check_restricted};
use rlr_core::coeffs::{gamma2_decompose, lambda_vector, mu_closed, mu_row, simplified_mu};
use rlr_core::envelope::{
    check_associativity, check_confluence, check_filtration, check_multiplication_table, check_up_relations,
    endomorphism_maps, factor_through, PbwElement, RewriteSystem, UpAL,
};
use rlr_core::lierinehart::{
    build_semidirect, builtin, centerless_instance, check_hochschild_theorem, check_lr, check_representation,
    check_restricted_lr, check_semidirect_lemmas, gl_natural, worked::check_der_p3, BuiltinParams, LRData, LrJson,
    Representation,
};
use rlr_core::shapes::verify_appendix_bundle;
use rlr_core::smash::{verify_gamma_suite, GammaTable};
use rlr_core::{ParityCase, Prime, Rat, Report, Verdict};
use serde_json::{json, Value};

use crate::render::{Format, Output, Table};
use crate::{Command, Common, Params, PbwCommand, Source};

const MAX_P: u64 = 7;
const MAX_P_TABLE: u64 = 31;
const MAX_K: u32 = 16;
const MAX_R: u32 = 9;

const LR_BUILTINS: [&str; 5] = ["derivations(2)", "witt(2)", "witt(3)", "example-2-1", "example-2-2"];
const PBW_BUILTINS: [&str; 3] = ["example-2-1", "example-2-2", "derivations(1)"];

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Core(rlr_core::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "usage: {s}"),
            CliError::Input(s) => write!(f, "input: {s}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<rlr_core::Error> for CliError {
    fn from(e: rlr_core::Error) -> Self {
        CliError::Core(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub fn format_of(c: &Command) -> Format {
    common_of(c).format
}

fn common_of(c: &Command) -> &Common {
    match c {
        Command::LambdaTable { common, .. }
        | Command::MuTable { common, .. }
        | Command::Gamma { common, .. }
        | Command::VerifyHochschild { common, .. }
        | Command::VerifyAppendix { common, .. }
        | Command::VerifyLr { common, .. }
        | Command::VerifySemidirect { common, .. } => common,
        Command::Pbw { command: PbwCommand::Nf { common, .. } | PbwCommand::Verify { common, .. } } => common,
    }
}

fn bound<T: PartialOrd + fmt::Display>(flag: &str, v: T, max: T, c: &Common) -> Result<()> {
    if v > max && !c.allow_large {
        return Err(CliError::Usage(format!("{flag} {v} exceeds the safe bound {max}; pass --allow-large to override")));
    }
    Ok(())
}

fn primes(ps: &[u64], max: u64, c: &Common) -> Result<Vec<Prime>> {
    if ps.is_empty() {
        return Err(CliError::Usage("--p needs at least one prime".into()));
    }
    ps.iter()
        .map(|&p| {
            bound("--p", p, max, c)?;
            Prime::new(p).map_err(|e| CliError::Usage(e.to_string()))
        })
        .collect()
}

/// Prefixes every claim id with `prefix/` and appends the claims.
fn absorb(into: &mut Report, prefix: &str, r: Report) {
    into.claims.extend(r.claims.into_iter().map(|mut c| {
        c.id = format!("{prefix}/{}", c.id);
        c
    }));
}

fn load(path: &Path) -> Result<(LRData, Option<Representation>)> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(LrJson::parse(&text)?.to_data()?)
}

fn rats(v: &[Rat]) -> Vec<String> {
    v.iter().map(|r| r.to_string()).collect()
}

pub fn execute(cmd: Command) -> Result<Output> {
    match cmd {
        Command::LambdaTable { p, common } => lambda_table(&p, &common),
        Command::MuTable { kmax, common } => mu_table(kmax, &common),
        Command::Gamma { k, j, kmax, case, common } => gamma(k, j, kmax, &case, &common),
        Command::VerifyHochschild { p, kmax, samples, common } => verify_hochschild(&p, kmax, samples, &common),
        Command::VerifyAppendix { p, rmax, common } => {
            let ps = primes(&p, MAX_P, &common)?;
            bound("--rmax", rmax, MAX_R, &common)?;
            let raw: Vec<u64> = ps.iter().map(|p| p.get()).collect();
            let mut rep = verify_appendix_bundle(rmax, &raw)?;
            rep.suite = "verify-appendix".into();
            rep.seed = Some(common.seed);
            Ok(Output::Report(rep))
        }
        Command::VerifyLr { p, input, builtin, samples, params, common } => {
            verify_lr(&p, input.as_deref(), &builtin, samples, params, &common)
        }
        Command::VerifySemidirect { p, trials, samples, common } => verify_semidirect(&p, trials, samples, &common),
        Command::Pbw { command: PbwCommand::Nf { source, word, common } } => pbw_nf(&source, &word, &common),
        Command::Pbw { command: PbwCommand::Verify { builtin, input, p, words, max_len, triples, common } } => {
            pbw_verify(&builtin, input.as_deref(), &p, words, max_len, triples, &common)
        }
    }
}

fn lambda_table(p: &[u64], c: &Common) -> Result<Output> {
    let ps = primes(p, MAX_P_TABLE, c)?;
    let vecs: Vec<_> = ps.iter().map(|&p| lambda_vector(p)).collect();
    let mut header = vec!["i".to_string()];
    header.extend(ps.iter().map(|p| format!("p={}", p.get())));
    let depth = ps.iter().map(|p| p.get() as usize).max().unwrap_or(0);
    let rows = (0..depth)
        .map(|i| {
            let mut r = vec![format!("lambda_{i}")];
            r.extend(vecs.iter().map(|v| v.values().get(i).map(|x| x.to_string()).unwrap_or_default()));
            r
        })
        .collect();
    let data: Vec<Value> = vecs
        .iter()
        .map(|v| {
            json!({
                "p": v.p,
                "lambda": v.values(),
                "closed_form": v.closed_form.iter().map(|f| f.value()).collect::<Vec<_>>(),
                "routes_agree": v.routes_agree(),
            })
        })
        .collect();
    let ok = vecs.iter().all(|v| v.routes_agree());
    Ok(Output::Table(Table { name: "lambda-table".into(), seed: c.seed, header, rows, data: json!(data), ok }))
}

fn mu_table(kmax: u32, c: &Common) -> Result<Output> {
    bound("--kmax", kmax, MAX_K, c)?;
    if kmax < 3 {
        return Err(CliError::Usage("--kmax must be at least 3".into()));
    }
    let header = ["k", "mu", "simplified", "closed-form", "decomposition"].map(String::from).to_vec();
    let mut rows = Vec::new();
    let mut data = Vec::new();
    let mut ok = true;
    for k in 3..=kmax as usize {
        let row = mu_row(k)?;
        let simple = simplified_mu(k)?;
        let closed = if k >= 4 {
            Some((0..row.len()).map(|i| mu_closed(k, i)).collect::<rlr_core::Result<Vec<_>>>()? == row)
        } else {
            None
        };
        let dec = gamma2_decompose(k)?.verified;
        ok &= dec && closed != Some(false);
        let closed_s = closed.map_or("-".to_string(), |b| b.to_string());
        rows.push(vec![k.to_string(), rats(&row).join(" "), rats(&simple).join(" "), closed_s, dec.to_string()]);
        data.push(json!({ "k": k, "mu": rats(&row), "simplified": rats(&simple), "closed_form_agrees": closed, "decomposition": dec }));
    }
    Ok(Output::Table(Table { name: "mu-table".into(), seed: c.seed, header, rows, data: json!(data), ok }))
}

fn gamma(k: Option<u32>, j: Option<i64>, kmax: u32, case: &str, c: &Common) -> Result<Output> {
    let cases: Vec<ParityCase> =
        if case == "all" { ParityCase::ALL.to_vec() } else { vec![ParityCase::parse(case).map_err(|e| CliError::Usage(e.to_string()))?] };
    let top = k.unwrap_or(kmax);
    bound("--k/--kmax", top, MAX_K, c)?;
    if j.is_some() && k.is_none() {
        return Err(CliError::Usage("--j needs --k".into()));
    }
    let mut records = Vec::new();
    for case in cases {
        let t = GammaTable::build(top, case);
        let cells: Vec<(u32, i64)> = match (k, j) {
            (Some(k), Some(j)) => vec![(k, j)],
            (Some(k), None) => (1..=k as i64).map(|j| (k, j)).collect(),
            (None, _) => (1..=top).flat_map(|k| (1..=k as i64).map(move |j| (k, j))).collect(),
        };
        for (k, j) in cells {
            records.push((k, j, case.tag(), t.get(k, j).to_string()));
        }
    }
    let header = ["k", "j", "case", "polynomial"].map(String::from).to_vec();
    let rows = records.iter().map(|(k, j, c, p)| vec![k.to_string(), j.to_string(), c.clone(), p.clone()]).collect();
    let data: Vec<Value> =
        records.iter().map(|(k, j, c, p)| json!({ "k": k, "j": j, "case": c, "polynomial": p })).collect();
    Ok(Output::Table(Table { name: "gamma".into(), seed: c.seed, header, rows, data: json!(data), ok: true }))
}

fn verify_hochschild(p: &[u64], kmax: u32, samples: usize, c: &Common) -> Result<Output> {
    let ps = primes(p, MAX_P, c)?;
    bound("--kmax", kmax, MAX_K, c)?;
    if kmax < 3 {
        return Err(CliError::Usage("--kmax must be at least 3".into()));
    }
    let mut rep = Report::new("verify-hochschild").with_seed(c.seed);
    let raw: Vec<u64> = ps.iter().map(|p| p.get()).collect();
    rep.extend(verify_gamma_suite(kmax, &raw)?);

    let bad: Vec<usize> = (3..=kmax as usize)
        .map(|k| gamma2_decompose(k).map(|d| (k, d.verified)))
        .collect::<rlr_core::Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(k, _)| k)
        .collect();
    rep.check("gamma2/decomposition", "Gamma_{k,2} = sum_i mu_{k,i} Y_i Y_{k-2-i}", bad.is_empty(), || json!(bad));
    for &p in &ps {
        let v = lambda_vector(p);
        rep.check(
            format!("lambda/routes/p{}", p.get()),
            "lambda via mu combinations equals the closed form",
            v.routes_agree(),
            || json!({ "mu": v.values(), "closed": v.closed_form.iter().map(|f| f.value()).collect::<Vec<_>>() }),
        );
    }

    for &p in &ps {
        for name in ["derivations(2)", "witt(2)"] {
            let (d, m) = builtin(name, p, BuiltinParams::default())?;
            let m = m.expect("derivation bundles carry their tautological module");
            absorb(&mut rep, &format!("p{}/{name}", p.get()), check_hochschild_theorem(&d, &m, samples, c.seed)?);
            if p.get() == 3 && name == "witt(2)" {
                absorb(&mut rep, &format!("p3/{name}/worked"), check_der_p3(&d, samples, c.seed)?);
            }
        }
    }
    Ok(Output::Report(rep))
}

fn lr_claims(rep: &mut Report, prefix: &str, d: &LRData, m: Option<&Representation>, samples: usize, seed: u64) -> Result<()> {
    absorb(rep, prefix, check_lr(d));
    match &d.pmap {
        Some(pm) => {
            absorb(rep, prefix, check_restricted_lr(d, samples, seed)?);
            absorb(rep, prefix, check_restricted(&d.l, pm, samples, seed));
            absorb(rep, prefix, check_jacobson_family(&d.l, pm));
        }
        None => rep.push(format!("{prefix}/restricted"), "the bundle carries a p-map", Verdict::NotApplicable, None),
    }
    let taut;
    let m = match m {
        Some(m) => m,
        None => {
            taut = Representation::tautological(d);
            &taut
        }
    };
    absorb(rep, &format!("{prefix}/module"), check_representation(d, m, samples, seed)?);
    if d.pmap.is_some() {
        absorb(rep, &format!("{prefix}/module"), check_hochschild_theorem(d, m, samples, seed)?);
    }
    Ok(())
}

fn verify_lr(
    p: &[u64],
    input: Option<&Path>,
    names: &[String],
    samples: usize,
    params: Params,
    c: &Common,
) -> Result<Output> {
    let mut rep = Report::new("verify-lr").with_seed(c.seed);
    if let Some(path) = input {
        let (d, m) = load(path)?;
        let prefix = d.name.clone();
        lr_claims(&mut rep, &prefix, &d, m.as_ref(), samples, c.seed)?;
        return Ok(Output::Report(rep));
    }
    let ps = primes(p, MAX_P, c)?;
    let user = BuiltinParams { alpha: params.alpha, beta: params.beta, gamma: params.gamma };
    let defaults = names.is_empty();
    let names: Vec<String> = if defaults { LR_BUILTINS.iter().map(|s| s.to_string()).collect() } else { names.to_vec() };
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    for &p in &ps {
        for name in &names {
            let (d, m) = builtin(name, p, user)?;
            lr_claims(&mut rep, &format!("p{}/{name}", p.get()), &d, m.as_ref(), samples, c.seed)?;
        }
        if defaults {
            for _ in 0..3 {
                let pv = p.get() as i64;
                let bp = BuiltinParams { alpha: rng.gen_range(0..pv), beta: rng.gen_range(0..pv), gamma: rng.gen_range(0..pv) };
                let (d, _) = builtin("example-2-1", p, bp)?;
                let prefix = format!("p{}/example-2-1({},{},{})", p.get(), bp.alpha, bp.beta, bp.gamma);
                lr_claims(&mut rep, &prefix, &d, None, samples, c.seed)?;
            }
        }
    }
    Ok(Output::Report(rep))
}

fn verify_semidirect(p: &[u64], trials: usize, samples: usize, c: &Common) -> Result<Output> {
    let ps = primes(p, MAX_P, c)?;
    let mut rep = Report::new("verify-semidirect").with_seed(c.seed);
    for &p in &ps {
        let pv = p.get();
        for (a, b) in [(1, 1), (2, 1)] {
            let (l, pm, m) = gl_natural(p, a, b)?;
            let prefix = format!("p{pv}/gl({a}|{b})");
            absorb(&mut rep, &prefix, check_restricted(&l, &pm, samples, c.seed));
            absorb(&mut rep, &prefix, check_semidirect_lemmas(&l, &m, pv, trials, c.seed)?);
        }
        let (d, m) = centerless_instance(p)?;
        absorb(&mut rep, &format!("p{pv}/centerless"), build_semidirect(&d, &m, samples, c.seed)?.report);
        let (d, m) = builtin("witt(2)", p, BuiltinParams::default())?;
        let m = m.expect("derivation bundles carry their tautological module");
        absorb(&mut rep, &format!("p{pv}/witt(2)"), build_semidirect(&d, &m, samples, c.seed)?.report);
    }
    Ok(Output::Report(rep))
}

fn source(s: &Source, c: &Common) -> Result<(LRData, Option<Representation>)> {
    match (&s.input, &s.builtin) {
        (Some(path), _) => load(path),
        (None, name) => {
            let p = primes(&[s.p], MAX_P, c)?[0];
            Ok(builtin(name.as_deref().unwrap_or("example-2-1"), p, BuiltinParams::default())?)
        }
    }
}

fn pbw_nf(s: &Source, word: &str, c: &Common) -> Result<Output> {
    let (d, _) = source(s, c)?;
    let pm = d.pmap.as_ref().ok_or_else(|| CliError::Input(format!("{} has no p-map", d.name)))?;
    let (algebra, w, nf) = if s.lie_only {
        let sys = RewriteSystem::for_lie(&d.l, pm);
        let w = sys.parse_word(word)?;
        let nf = sys.normal_form(&PbwElement::word(w));
        ("U_p(L)", word.to_string(), sys.format(&nf))
    } else {
        let up = UpAL::bundle(&d)?;
        let w = up.system().parse_word(word)?;
        let nf = up.normal_form(&PbwElement::word(w));
        ("U_p(A,L)", word.to_string(), up.system().format(&nf))
    };
    let header = ["bundle", "algebra", "word", "normal-form"].map(String::from).to_vec();
    let rows = vec![vec![d.name.clone(), algebra.to_string(), w.clone(), nf.clone()]];
    let data = json!({ "bundle": d.name, "algebra": algebra, "word": w, "normal_form": nf });
    Ok(Output::Table(Table { name: "pbw nf".into(), seed: c.seed, header, rows, data, ok: true }))
}

fn pbw_claims(rep: &mut Report, prefix: &str, d: &LRData, m: Option<&Representation>, words: usize, max_len: usize, triples: usize, seed: u64) -> Result<()> {
    let pm = d.pmap.as_ref().ok_or_else(|| CliError::Input(format!("{} has no p-map", d.name)))?;
    let sys = RewriteSystem::for_lie(&d.l, pm);
    absorb(rep, &format!("{prefix}/lie"), check_confluence(&sys, words, max_len, seed));
    absorb(rep, &format!("{prefix}/lie"), check_filtration(&sys, words, max_len, seed));
    match UpAL::lie(&d.l, pm) {
        Ok(up) => absorb(rep, &format!("{prefix}/lie"), check_multiplication_table(&up)?),
        Err(e) => rep.push(format!("{prefix}/lie/table"), "U_p(L) fits the dense table", Verdict::NotApplicable, Some(json!(e.to_string()))),
    }

    let sys = RewriteSystem::for_bundle(d)?;
    absorb(rep, &format!("{prefix}/smash"), check_confluence(&sys, words, max_len, seed));
    absorb(rep, &format!("{prefix}/smash"), check_filtration(&sys, words, max_len, seed));
    let up = match UpAL::bundle(d) {
        Ok(up) => up,
        Err(e) => {
            rep.push(format!("{prefix}/up"), "U_p(A, L) fits the dense ideal computation", Verdict::NotApplicable, Some(json!(e.to_string())));
            return Ok(());
        }
    };
    absorb(rep, &format!("{prefix}/up"), check_up_relations(d)?);
    absorb(rep, &format!("{prefix}/up"), check_multiplication_table(&up)?);
    absorb(rep, &format!("{prefix}/up"), check_associativity(&up, triples, seed));
    let taut;
    let m = match m {
        Some(m) => m,
        None => {
            taut = Representation::tautological(d);
            &taut
        }
    };
    let (b, ja, jl) = endomorphism_maps(d, m)?;
    absorb(rep, &format!("{prefix}/up"), factor_through(&up, &b, &ja, &jl, triples, seed)?.report);
    Ok(())
}

fn pbw_verify(
    names: &[String],
    input: Option<&Path>,
    p: &[u64],
    words: usize,
    max_len: usize,
    triples: usize,
    c: &Common,
) -> Result<Output> {
    if max_len == 0 {
        return Err(CliError::Usage("--max-len must be positive".into()));
    }
    let mut rep = Report::new("pbw-verify").with_seed(c.seed);
    if let Some(path) = input {
        let (d, m) = load(path)?;
        let prefix = d.name.clone();
        pbw_claims(&mut rep, &prefix, &d, m.as_ref(), words, max_len, triples, c.seed)?;
        return Ok(Output::Report(rep));
    }
    let ps = primes(p, MAX_P, c)?;
    let names: Vec<String> = if names.is_empty() { PBW_BUILTINS.iter().map(|s| s.to_string()).collect() } else { names.to_vec() };
    for &p in &ps {
        for name in &names {
            let (d, m) = builtin(name, p, BuiltinParams::default())?;
            pbw_claims(&mut rep, &format!("p{}/{name}", p.get()), &d, m.as_ref(), words, max_len, triples, c.seed)?;
        }
    }
    Ok(Output::Report(rep))
}
