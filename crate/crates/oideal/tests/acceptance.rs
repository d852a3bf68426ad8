//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use oideal::corpus::{route_corpus, bound_instances, Instance};
use oideal::run::{run_scenario, select, Outcome, Report};
use oideal::{build, chern};
use oideal_core::{colon_bound_check, Polynomial, Route, ColonBoundOutcome};

const SEED: u64 = 42;

type Check = Result<String, String>;

fn reports(id: &str, overrides: &[(&str, i64)]) -> Result<Vec<Report>, String> {
    let o: BTreeMap<String, Value> = overrides.iter().map(|(k, v)| (k.to_string(), Value::from(*v))).collect();
    let scenarios = select(id, &o).map_err(|e| e.to_string())?;
    Ok(scenarios.iter().map(|s| run_scenario(s, SEED)).collect())
}

/// Every named fact must pass; any other FAIL also fails the check.
fn require(r: &Report, facts: &[&str]) -> Result<(), String> {
    for name in facts {
        match r.fact(name) {
            Some(f) if f.outcome == Outcome::Pass => {}
            Some(f) => return Err(format!("{} {name}: {:?} (value {:?}, reason {:?})", r.scenario, f.outcome, f.value, f.reason)),
            None => return Err(format!("{} has no fact {name}", r.scenario)),
        }
    }
    if let Some(f) = r.facts.iter().find(|f| f.outcome == Outcome::Fail) {
        return Err(format!("{} {} failed: {:?}", r.scenario, f.name, f.value));
    }
    Ok(())
}

fn chern_parity() -> Check {
    for n in 2..=12usize {
        let c = chern::chern_parity(n).map_err(|e| e.to_string())?;
        let want = (n % 2) as i64;
        if c != want.into() || chern::closed_form(n) != c {
            return Err(format!("n = {n}: {c}"));
        }
    }
    Ok("c_(n-1) = n mod 2 for n = 2..12".into())
}

fn curve_example() -> Check {
    let mut spreads = Vec::new();
    for alpha in [2, 4] {
        let start = Instant::now();
        let rs = reports("ex3.10", &[("alpha", alpha)])?;
        let r = rs.first().ok_or("no ex3.10 instance")?;
        require(
            r,
            &["order_ideal_is_maximal", "order_ideal_height", "height_exceeds_rank", "ideal_height", "g_infinity", "analytic_spread"],
        )?;
        if start.elapsed() > Duration::from_secs(60) {
            return Err(format!("alpha = {alpha} took {:?}", start.elapsed()));
        }
        spreads.push(format!("alpha={alpha}: l={}", r.fact("analytic_spread").unwrap().value.as_ref().unwrap()));
    }
    Ok(format!("order ideal (a,b,c,d), height 4 > 3; {}", spreads.join(", ")))
}

fn symplectic() -> Check {
    for d in [4, 6] {
        let rs = reports("prop3.13", &[("d", d), ("s", d / 2)])?;
        require(&rs[0], &["order_ideal_is_leading_variables", "order_ideal_height", "height_exceeds_rank", "omega_rank"])?;
    }
    Ok("order ideal (z1..zd) for d = 4, 6".into())
}

fn generic_omega() -> Check {
    let rs = reports("prop3.12", &[])?;
    require(&rs[0], &["max_generic_height", "trials"])?;
    Ok(format!("heights {}", rs[0].info.get("trial_heights").cloned().unwrap_or_default()))
}

fn quadric_cone() -> Check {
    let rs = reports("post4.1", &[])?;
    require(&rs[0], &["order_ideal_is_maximal", "order_ideal_height", "perp_rank", "height_exceeds_rank"])?;
    Ok("order ideal (z0..z3), height 3 > rank 2".into())
}

fn minors_reduction() -> Check {
    let rs = reports("ex3.11", &[])?;
    let r = &rs[0];
    require(r, &["reduction_found", "reduction_generators", "reduction_homogeneous", "colon_height"])?;
    let skip = r.fact("no_standard_homogeneous_reduction").ok_or("nonexistence fact missing")?;
    if skip.outcome != Outcome::Skip {
        return Err("nonexistence half is not SKIP".into());
    }
    Ok(format!("J = ({}), ht(J:I) = 6", r.info.get("reduction").and_then(Value::as_array).map_or(String::new(), |v| {
        v.iter().filter_map(Value::as_str).collect::<Vec<_>>().join(", ")
    })))
}

fn routes_agree() -> Check {
    let corpus = route_corpus(SEED).map_err(|e| e.to_string())?;
    if corpus.len() < 20 {
        return Err(format!("corpus has only {} modules", corpus.len()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut checked = 0;
    for (name, m) in &corpus {
        let r = m.ring();
        let mut elements: Vec<Vec<Polynomial>> = (0..m.ngens())
            .map(|i| (0..m.ngens()).map(|j| Polynomial::from_i64(r, (i == j) as i64)).collect())
            .collect();
        elements.push((0..m.ngens()).map(|_| Polynomial::from_i64(r, rng.gen_range(-3..=3))).collect());
        for x in &elements {
            let a = m.order_ideal(x, Route::RowIdeal).map_err(|e| format!("{name}: {e}"))?;
            let b = m.order_ideal(x, Route::DualKernel).map_err(|e| format!("{name}: {e}"))?;
            if !a.ideal.equals(&b.ideal).map_err(|e| e.to_string())? {
                return Err(format!("{name}: routes differ at {x:?}"));
            }
            checked += 1;
        }
    }
    Ok(format!("{} modules, {checked} elements, routes equal", corpus.len()))
}

fn height_bound() -> Check {
    let mut instances = bound_instances(SEED).map_err(|e| e.to_string())?;
    let cr = build::curve_ring().map_err(|e| e.to_string())?;
    let n = build::curve_matrix(&cr, 2).map_err(|e| e.to_string())?.columns();
    instances.push(Instance { label: "curve perp, three columns".into(), ring: cr, u: n[..3].to_vec(), m: n });
    let (mut witnessed, mut violations) = (0, Vec::new());
    for inst in &instances {
        let rep = colon_bound_check(&inst.ring, &inst.m, &inst.u).map_err(|e| format!("{}: {e}", inst.label))?;
        if rep.certificate.witness.is_some() {
            witnessed += 1;
        }
        if rep.outcome == ColonBoundOutcome::Fail {
            violations.push(inst.label.clone());
        }
    }
    if !violations.is_empty() {
        return Err(format!("violations: {}", violations.join("; ")));
    }
    Ok(format!("{} instances, {witnessed} with a fiber witness, 0 violations", instances.len()))
}

fn trace_sharpness() -> Check {
    let rs = reports("thm5.5-curve", &[])?;
    require(&rs[0], &["trace_radical_matches", "bound_sharp_i1", "order_ideal_height"])?;
    Ok("radicals agree, bound attained at i = 1".into())
}

fn properties() -> Check {
    common::gb_confluence(256)?;
    common::membership_oracle(256)?;
    common::monomial_dimension(256)?;
    common::koszul_square_zero()?;
    common::fitting_chain(128)?;
    common::spread_bounds(128)?;
    common::rees_matches_kernel(128)?;
    Ok("confluence, membership, dimension, d^2 = 0, Fitting chain, spread bounds, Rees kernel".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Check); 10] = [
        ("chern parity", 1, chern_parity),
        ("curve example", 120, curve_example),
        ("symplectic element", 30, symplectic),
        ("generic order ideals", 120, generic_omega),
        ("quadric cone", 30, quadric_cone),
        ("minor ideal reduction", 600, minors_reduction),
        ("order ideal routes", 300, routes_agree),
        ("height bound", 600, height_bound),
        ("trace sharpness", 60, trace_sharpness),
        ("property suites", 300, properties),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let took = start.elapsed();
        let line = match result {
            Ok(_) if took > Duration::from_secs(*limit) => {
                failed += 1;
                format!("FAIL criterion {} ({name}): took {took:.1?}, limit {limit} s", i + 1)
            }
            Ok(detail) => format!("PASS criterion {} ({name}) in {took:.1?}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                format!("FAIL criterion {} ({name}) in {took:.1?}: {why}", i + 1)
            }
        };
        println!("{line}");
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
