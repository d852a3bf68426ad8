//! Executes scenarios and turns their computed facts into reports.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use oideal_core::module::{check_gs, generic_combination_ideal, GenericMode};
use oideal_core::rees::module_colon;
use oideal_core::{
    module_reduction_test, parse_ring, rees_of_module, Error, FPModule, FreeElement, Height, Ideal,
    Limits, PolyMatrix, Polynomial, Result, Route,
};

use crate::build;
use crate::chern;
use crate::scenario::{matches, Cmp, Scenario};

pub type Facts = BTreeMap<String, Value>;

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
pub enum Outcome {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "SKIP")]
    Skip,
}

#[derive(Debug, Clone, Serialize)]
pub struct FactReport {
    pub name: String,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Value>,
    pub cmp: Cmp,
    pub provenance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub scenario: String,
    pub params: BTreeMap<String, Value>,
    pub seed: u64,
    pub facts: Vec<FactReport>,
    /// Computed values that are reported without an expectation.
    pub info: Facts,
    pub elapsed_ms: u128,
    pub limits: Value,
}

impl Report {
    pub fn failed(&self) -> bool {
        self.facts.iter().any(|f| f.outcome == Outcome::Fail)
    }

    pub fn fact(&self, name: &str) -> Option<&FactReport> {
        self.facts.iter().find(|f| f.name == name)
    }
}

pub fn height_json(h: Height) -> Value {
    match h {
        Height::Finite(n) => Value::from(n),
        Height::Unit => Value::from("unit"),
    }
}

fn strings(gens: &[Polynomial]) -> Value {
    Value::from(gens.iter().map(|p| p.to_string()).collect::<Vec<_>>())
}

/// Runs one scenario under the limits installed on this thread.
pub fn run_scenario(sc: &Scenario, seed: u64) -> Report {
    let start = Instant::now();
    let mut info = Facts::new();
    let computed = compute(sc, seed, &mut info);
    let limits = Limits::current();
    let mut facts = Vec::new();
    for spec in &sc.facts {
        let provenance = format!("{}: {}", spec.provenance.kind, spec.provenance.note);
        let expected = sc.expected(spec);
        let mut rep = FactReport {
            name: spec.name.clone(),
            outcome: Outcome::Skip,
            value: None,
            expected: None,
            cmp: spec.cmp,
            provenance,
            reason: None,
        };
        if let Some(reason) = &spec.skip {
            rep.reason = Some(reason.clone());
            facts.push(rep);
            continue;
        }
        let expected = match expected {
            Ok(e) => e,
            Err(e) => {
                rep.outcome = Outcome::Fail;
                rep.reason = Some(format!("bad expectation: {e}"));
                facts.push(rep);
                continue;
            }
        };
        rep.expected = expected.clone();
        match &computed {
            Err(Error::Resource(limit)) => {
                rep.reason = Some(format!("resource: {limit}"));
            }
            Err(e) => {
                rep.outcome = Outcome::Fail;
                rep.reason = Some(e.to_string());
            }
            Ok(values) => match (values.get(&spec.name), expected) {
                (Some(v), Some(e)) => {
                    rep.outcome = if matches(v, &e, spec.cmp) {
                        Outcome::Pass
                    } else {
                        Outcome::Fail
                    };
                    rep.value = Some(v.clone());
                }
                _ => {
                    rep.outcome = Outcome::Fail;
                    rep.reason = Some("fact was not computed".into());
                }
            },
        }
        facts.push(rep);
    }
    Report {
        scenario: sc.id.clone(),
        params: sc.params.clone(),
        seed,
        facts,
        info,
        elapsed_ms: start.elapsed().as_millis(),
        limits: json!({
            "max_pairs": limits.max_pairs,
            "max_bits": limits.max_bits,
            "max_degree": limits.max_degree,
            "deadline": limits.deadline.is_some(),
        }),
    }
}

fn compute(sc: &Scenario, seed: u64, info: &mut Facts) -> Result<Facts> {
    match sc.id.as_str() {
        "intro-chern" => intro_chern(sc),
        "ex3.10" => curve(sc, info),
        "ex3.11" => minors(sc, seed, info),
        "prop3.13" => symplectic(sc),
        "prop3.12" => omega_generic(sc, seed, info),
        "post4.1" => quadric_cone(),
        "thm5.5-curve" => trace_sharpness(sc, info),
        "cor3.2-instance" => fitting_integrality(sc, info),
        "prop3.14-spot" => generic_kernel(sc, seed, info),
        other => Err(Error::Invalid(format!("unknown scenario `{other}`"))),
    }
}

fn intro_chern(sc: &Scenario) -> Result<Facts> {
    let lo = sc.uint("n_min")?;
    let hi = sc.uint("n_max")?;
    let mut table = Vec::new();
    let mut agree = true;
    for n in lo..=hi {
        let c = chern::chern_parity(n)?;
        agree &= c == chern::closed_form(n);
        table.push(Value::from(c.to_string().parse::<i64>().unwrap_or(i64::MAX)));
    }
    Ok(Facts::from([
        ("parity_table".into(), Value::from(table)),
        ("closed_form_agrees".into(), Value::from(agree)),
    ]))
}

/// Both order-ideal routes for generator `i`: (row ideal, dual kernel).
fn both_routes(n: &FPModule, i: usize) -> Result<(Ideal, Ideal)> {
    Ok((
        n.generator_order_ideal(i, Route::RowIdeal)?.ideal,
        n.generator_order_ideal(i, Route::DualKernel)?.ideal,
    ))
}

fn curve(sc: &Scenario, info: &mut Facts) -> Result<Facts> {
    let alpha = sc.uint("alpha")? as u32;
    let r = build::curve_ring()?;
    let i = build::curve_ideal(&r, alpha)?;
    let mut f = Facts::new();
    f.insert("ideal_generators".into(), Value::from(i.generators().len()));
    f.insert("ideal_height".into(), height_json(i.height()?));
    let gs = check_gs(&FPModule::from_ideal(&i)?, None)?;
    f.insert("g_infinity".into(), Value::from(gs.holds()));
    let rp = rees_of_module(&r, &build::ideal_vectors(i.generators()))?;
    f.insert("analytic_spread".into(), Value::from(rp.analytic_spread));
    info.insert("fiber_ideal".into(), strings(rp.fiber_ideal.generators()));
    // the displayed maps compose to zero once the first generator is negated
    let a = build::curve_matrix(&r, alpha)?;
    let mut g = i.generators().to_vec();
    g[0] = -&g[0];
    let col = PolyMatrix::from_rows(&r, g.into_iter().map(|p| vec![p]).collect(), 1)?;
    f.insert("displayed_maps_compose".into(), Value::from(a.mul(&col)?.is_zero()));
    let n = build::curve_module(&r, alpha)?;
    let rank = n.rank()?;
    f.insert("module_rank".into(), Value::from(rank));
    let (row, dual) = both_routes(&n, 2)?;
    let m = Ideal::maximal(&r);
    f.insert("routes_agree".into(), Value::from(row.equals(&dual)?));
    f.insert("order_ideal_is_maximal".into(), Value::from(row.equals(&m)? && dual.equals(&m)?));
    let h = row.height()?;
    f.insert("order_ideal_height".into(), height_json(h));
    f.insert("height_exceeds_rank".into(), Value::from(h > Height::Finite(rank)));
    Ok(f)
}

/// Candidate 5-generated subideals: the 5-subsets of the minors, then four
/// minors plus `p + c q` for a pair `(p, q)`, complementary pairs first.
fn reduction_candidates(p: &[Polynomial], coeffs: &[i64], seed: u64) -> Vec<(String, Vec<Polynomial>)> {
    const LABELS: [&str; 6] = ["p12", "p13", "p14", "p23", "p24", "p34"];
    let mut out = Vec::new();
    for skip in 0..6 {
        let j: Vec<Polynomial> = (0..6).filter(|&k| k != skip).map(|k| p[k].clone()).collect();
        out.push((format!("minors without {}", LABELS[skip]), j));
    }
    // complementary index pairs share the quadratic relation
    let complementary = [(0usize, 5usize), (1, 4), (2, 3)];
    let mut pairs: Vec<(usize, usize)> = complementary.to_vec();
    for a in 0..6 {
        for b in a + 1..6 {
            if !complementary.contains(&(a, b)) {
                pairs.push((a, b));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coeffs = coeffs.to_vec();
    coeffs.shuffle(&mut rng);
    let ring = p[0].ring().clone();
    for &(a, b) in &pairs {
        for &c in &coeffs {
            let combo = &p[a] + &(&p[b] * &Polynomial::from_i64(&ring, c));
            let mut j: Vec<Polynomial> = (0..6).filter(|&k| k != a && k != b).map(|k| p[k].clone()).collect();
            j.push(combo);
            out.push((format!("{} + ({c})*{} with the other minors", LABELS[a], LABELS[b]), j));
        }
    }
    out
}

fn minors(sc: &Scenario, seed: u64, info: &mut Facts) -> Result<Facts> {
    let cap = sc.uint("n_max")?;
    let budget = sc.uint("budget")?;
    let coeffs: Vec<i64> = sc
        .params
        .get("coefficients")
        .and_then(Value::as_array)
        .map(|a| a.iter().filter_map(Value::as_i64).collect())
        .unwrap_or_else(|| vec![1, -1, 2, -2]);
    let r = build::minor_ring(true)?;
    let p = build::minors_2x4(&r)?;
    let mut f = Facts::new();
    f.insert("ideal_generators".into(), Value::from(p.len()));
    let degrees: Vec<Option<u32>> = p.iter().map(|g| g.weighted_degree()).collect();
    let equal = p.iter().all(|g| g.is_homogeneous()) && degrees.windows(2).all(|w| w[0] == w[1]);
    f.insert("equal_weighted_degree".into(), Value::from(equal));
    let i = Ideal::new(&r, p.clone())?;
    let perp = FPModule::from_ideal(&i)?.perpendicular(true)?.perp;
    f.insert("perp_rank".into(), Value::from(perp.rank()?));
    let iv = build::ideal_vectors(&p);
    let rp = rees_of_module(&r, &iv)?;
    f.insert("analytic_spread".into(), Value::from(rp.analytic_spread));
    let mut tried = 0;
    let mut pruned = 0;
    let mut found = None;
    for (label, j) in reduction_candidates(&p, &coeffs, seed).into_iter().take(budget) {
        tried += 1;
        let jv = build::ideal_vectors(&j);
        let cert = module_reduction_test(&r, &jv, &iv, cap)?;
        if cert.witness.is_some() {
            pruned += 1;
        }
        if !cert.confirmed {
            continue;
        }
        let colon = module_colon(&r, &jv, &iv)?;
        let h = colon.height()?;
        if h == Height::Finite(6) {
            found = Some((label, j, cert.n, h));
            break;
        }
    }
    info.insert("candidates_tried".into(), Value::from(tried));
    info.insert("candidates_ruled_out_by_fiber".into(), Value::from(pruned));
    f.insert("reduction_found".into(), Value::from(found.is_some()));
    if let Some((label, j, n, h)) = found {
        let homogeneous = j.iter().all(|g| g.is_homogeneous());
        f.insert("reduction_generators".into(), Value::from(j.len()));
        f.insert("reduction_homogeneous".into(), Value::from(homogeneous));
        f.insert("reduction_degree".into(), Value::from(n));
        f.insert("colon_height".into(), height_json(h));
        info.insert("reduction".into(), strings(&j));
        info.insert("reduction_description".into(), Value::from(label));
    }
    Ok(f)
}

fn symplectic(sc: &Scenario) -> Result<Facts> {
    let d = sc.uint("d")?;
    let s = sc.uint("s")?;
    if 2 * s > d || s == 0 {
        return Err(Error::Invalid(format!("need 1 <= s <= d/2, got d = {d}, s = {s}")));
    }
    let r = build::koszul_ring("QQ", d)?;
    let n = build::omega_one(&r, d)?;
    let x = build::symplectic_element(&r, d, s);
    let rank = n.rank()?;
    let row = n.order_ideal(&x, Route::RowIdeal)?.ideal;
    let dual = n.order_ideal(&x, Route::DualKernel)?.ideal;
    let expected = Ideal::new(&r, (0..2 * s).map(|i| Polynomial::var(&r, i)).collect())?;
    let h = dual.height()?;
    Ok(Facts::from([
        ("omega_rank".into(), Value::from(rank)),
        ("routes_agree".into(), Value::from(row.equals(&dual)?)),
        ("order_ideal_is_leading_variables".into(), Value::from(dual.equals(&expected)?)),
        ("order_ideal_height".into(), height_json(h)),
        ("height_exceeds_rank".into(), Value::from(h > Height::Finite(rank))),
    ]))
}

fn omega_generic(sc: &Scenario, seed: u64, info: &mut Facts) -> Result<Facts> {
    let d = sc.uint("d")?;
    let trials = sc.uint("trials")?;
    let field = sc.text("field").unwrap_or("GF(32003)");
    let r = build::koszul_ring(field, d)?;
    let n = build::omega_one(&r, d)?;
    let g = generic_combination_ideal(&n, GenericMode::Random { trials, seed })?;
    let heights: Vec<Value> = g.heights.iter().map(|h| height_json(*h)).collect();
    info.insert("trial_heights".into(), Value::from(heights));
    Ok(Facts::from([
        ("omega_rank".into(), Value::from(n.rank()?)),
        ("trials".into(), Value::from(g.heights.len())),
        ("max_generic_height".into(), height_json(g.height)),
    ]))
}

fn quadric_cone() -> Result<Facts> {
    let r = build::quadric_cone()?;
    let n = build::quadric_cone_perp(&r)?;
    let (row, dual) = both_routes(&n, 1)?;
    let h = dual.height()?;
    let rank = n.rank()?;
    Ok(Facts::from([
        ("perp_generators".into(), Value::from(n.ngens())),
        ("perp_rank".into(), Value::from(rank)),
        ("routes_agree".into(), Value::from(row.equals(&dual)?)),
        ("order_ideal_is_maximal".into(), Value::from(dual.equals(&Ideal::maximal(&r))?)),
        ("order_ideal_height".into(), height_json(h)),
        ("height_exceeds_rank".into(), Value::from(h > Height::Finite(rank))),
    ]))
}

/// Number of minimal generators of the submodule spanned by `gens`.
fn minimal_count(n: &FPModule, gens: &[FreeElement]) -> Result<usize> {
    let m = FPModule::from_submodule(n.ring(), gens)?;
    Ok(m.minimalize(&[])?.module.ngens())
}

fn trace_sharpness(sc: &Scenario, info: &mut Facts) -> Result<Facts> {
    let alpha = sc.uint("alpha")? as u32;
    let r = build::curve_ring()?;
    let n = build::curve_module(&r, alpha)?;
    let rank = n.rank()?;
    let duals = n.dual_generators()?;
    let m = minimal_count(&n, &duals)?;
    let x = 2;
    let ox = n.generator_order_ideal(x, Route::DualKernel)?.ideal;
    let tr = n.trace_ideal()?;
    let mut f = Facts::new();
    f.insert("module_rank".into(), Value::from(rank));
    f.insert("dual_generators".into(), Value::from(m));
    f.insert("order_ideal_height".into(), height_json(ox.height()?));
    f.insert("trace_radical_matches".into(), Value::from(tr.radical_equals(&ox)?));
    // U = R x + (other generators), i = 1, 2, 3
    let others: Vec<usize> = (0..n.ngens()).filter(|&k| k != x).collect();
    let mut heights = Vec::new();
    let mut sharp = Vec::new();
    let (r_, m_) = (rank as i64, m as i64);
    for i in 1..=3usize {
        let mut u = ox.clone();
        for &k in others.iter().take(i - 1) {
            u = u.sum(&n.generator_order_ideal(k, Route::DualKernel)?.ideal)?;
        }
        let bound = (r_ - 2) * (m_ - r_ + 3) + (r_ - 3) * i as i64;
        let h = u.height()?;
        heights.push(json!({"i": i, "height": height_json(h), "bound": bound}));
        sharp.push(h == Height::Finite(bound.max(0) as usize));
    }
    info.insert("submodule_heights".into(), Value::from(heights));
    f.insert("bound_sharp_i1".into(), Value::from(sharp[0]));
    f.insert("bound_sharp_i2".into(), Value::from(sharp[1]));
    f.insert("bound_sharp_i3".into(), Value::from(sharp[2]));
    Ok(f)
}

fn fitting_integrality(sc: &Scenario, info: &mut Facts) -> Result<Facts> {
    let d = sc.uint("d")?;
    let cap = sc.uint("n_max")?;
    let r = build::koszul_ring("QQ", d)?;
    let n = build::omega_one(&r, d)?;
    let x = build::symplectic_element(&r, d, d / 2);
    let h = n.order_ideal(&x, Route::DualKernel)?.ideal.height()?;
    // x appended as the last generator, with the relation x - sum x_i e_i
    let psi = n.append_generator(&x)?.relations().clone();
    let rows: Vec<usize> = (0..psi.nrows() - 1).collect();
    let cols: Vec<usize> = (0..psi.ncols()).collect();
    let psi_prime = psi.submatrix(&rows, &cols);
    let mut all = true;
    let mut detail = Vec::new();
    for k in 1..=psi_prime.nrows().min(psi.ncols()) {
        let big = Ideal::new(&r, psi.minors(k)?)?;
        let small = Ideal::new(&r, psi_prime.minors(k)?)?;
        let out = small.is_reduction_of(&big, cap)?;
        all &= out.confirmed();
        detail.push(json!({"size": k, "reduction": format!("{out:?}")}));
    }
    info.insert("minor_sizes".into(), Value::from(detail));
    Ok(Facts::from([
        ("module_rank".into(), Value::from(n.rank()?)),
        ("order_ideal_height".into(), height_json(h)),
        ("minor_ideals_integral".into(), Value::from(all)),
    ]))
}

fn generic_kernel(sc: &Scenario, seed: u64, info: &mut Facts) -> Result<Facts> {
    let t = sc.uint("t")?;
    let s = sc.uint("s")?;
    let nv = sc.uint("variables")?;
    let trials = sc.uint("trials")?;
    let field = sc.text("field").unwrap_or("GF(32003)");
    let r = parse_ring(&format!("{field}[{}]", build::variables("z", nv)))?;
    let p = r.field().characteristic();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let want = s - t + 1;
    let mut attempt = 0;
    let (chi, h) = loop {
        attempt += 1;
        if attempt > 20 {
            return Err(Error::Invalid("no matrix with the required minor height".into()));
        }
        let mut rows = Vec::new();
        for _ in 0..t {
            let mut row = Vec::new();
            for _ in 0..s {
                let mut l = Polynomial::zero(&r);
                for v in 0..nv {
                    let c: i64 = if p == 0 { rng.gen_range(-9..=9) } else { rng.gen_range(0..p as i64) };
                    l = &l + &(&Polynomial::var(&r, v) * &Polynomial::from_i64(&r, c));
                }
                row.push(l);
            }
            rows.push(row);
        }
        let chi = PolyMatrix::from_rows(&r, rows, s)?;
        let h = Ideal::new(&r, chi.minors(t)?)?.height()?;
        if h == Height::Finite(want) {
            break (chi, h);
        }
    };
    info.insert("attempts".into(), Value::from(attempt));
    let kernel = oideal_core::syzygies(&r, &chi.columns())?.generators;
    let n = FPModule::from_submodule(&r, &kernel)?;
    let g = generic_combination_ideal(&n, GenericMode::Random { trials, seed })?;
    info.insert(
        "trial_heights".into(),
        Value::from(g.heights.iter().map(|h| height_json(*h)).collect::<Vec<_>>()),
    );
    Ok(Facts::from([
        ("maximal_minor_height".into(), height_json(h)),
        ("kernel_rank".into(), Value::from(n.rank()?)),
        ("max_generic_height".into(), height_json(g.height)),
    ]))
}

/// Scenarios matching `id` (`all` for every one), with parameter overrides.
pub fn select(id: &str, overrides: &BTreeMap<String, Value>) -> Result<Vec<Scenario>> {
    let all = Scenario::builtin();
    let mut picked: Vec<Scenario> = if id == "all" {
        let mut all = all;
        all.sort_by(|a, b| a.id.cmp(&b.id));
        all
    } else {
        all.into_iter().filter(|s| s.id == id).collect()
    };
    if picked.is_empty() {
        return Err(Error::Invalid(format!("unknown scenario `{id}`")));
    }
    if !overrides.is_empty() {
        if id == "all" {
            return Err(Error::Invalid("parameter overrides need a single scenario id".into()));
        }
        // an instance with exactly these parameters, else the first one adjusted
        let exact = picked
            .iter()
            .position(|s| overrides.iter().all(|(k, v)| s.params.get(k) == Some(v)));
        let mut sc = picked.swap_remove(exact.unwrap_or(0));
        for (k, v) in overrides {
            sc.params.insert(k.clone(), v.clone());
        }
        picked = vec![sc];
    }
    Ok(picked)
}

/// Runs scenarios on up to `jobs` threads; reports come back in input order.
pub fn run_all(scenarios: &[Scenario], seed: u64, jobs: usize, limits: &Limits) -> Vec<Report> {
    let jobs = jobs.max(1).min(scenarios.len().max(1));
    let mut out: Vec<Option<Report>> = vec![None; scenarios.len()];
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|w| {
                let limits = limits.clone();
                scope.spawn(move || {
                    limits.scope(|| {
                        scenarios
                            .iter()
                            .enumerate()
                            .skip(w)
                            .step_by(jobs)
                            .map(|(k, sc)| (k, run_scenario(sc, seed)))
                            .collect::<Vec<_>>()
                    })
                })
            })
            .collect();
        for h in handles {
            for (k, rep) in h.join().expect("scenario worker panicked") {
                out[k] = Some(rep);
            }
        }
    });
    out.into_iter().map(|r| r.expect("every scenario ran")).collect()
}
