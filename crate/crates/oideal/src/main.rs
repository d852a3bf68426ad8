use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use oideal::io::{module_json, parse_module, read_arg};
use oideal::run::{height_json, run_all, select};
use oideal::chern;
use oideal_core::module::{check_gs, ext_vanishes, fitting_ideal};
use oideal_core::{
    groebner, ideal_groebner, module_reduction_test, parse_matrix_rows, parse_poly, parse_ring,
    parse_vector, rees_of_module, syzygies, Error, FPModule, FreeElement, Ideal, Limits,
    MonomialOrder, PolyMatrix, Polynomial, RingRef, Route,
};

#[derive(Parser)]
#[command(name = "oideal", version, about = "Order ideals, Rees algebras and the scenarios that exercise them")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Global {
    /// Ring, e.g. "QQ[x,y,z]" or "GF(32003)[a,b] weights=(2,1)".
    #[arg(long, global = true)]
    ring: Option<String>,
    /// lex, grlex, grevlex or elim(k); overrides the order in --ring.
    #[arg(long, global = true)]
    order: Option<String>,
    /// Seed for randomized steps (OIDEAL_SEED takes precedence).
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Also print a readable summary on standard error.
    #[arg(long, global = true)]
    pretty: bool,
    #[arg(long, global = true)]
    max_pairs: Option<usize>,
    #[arg(long, global = true)]
    max_bits: Option<u64>,
    #[arg(long, global = true)]
    max_degree: Option<u32>,
    #[arg(long, global = true)]
    timeout_s: Option<f64>,
}

#[derive(Args, Clone)]
struct Gens {
    /// Comma separated ideal generators.
    #[arg(long)]
    ideal: Option<String>,
    /// Submodule generators as rows, e.g. "[[x, y], [0, x]]".
    #[arg(long)]
    vectors: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reduced Gröbner basis of an ideal or submodule.
    Gb(Gens),
    /// Normal form of a polynomial modulo an ideal.
    Nf {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        poly: String,
    },
    /// Elements free of the first k variables.
    Eliminate {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        k: usize,
    },
    /// Generators of the syzygy module.
    Syzygies(Gens),
    /// Height of an ideal.
    Height {
        #[arg(long)]
        ideal: String,
    },
    /// Krull dimension of R / I.
    Dim {
        #[arg(long)]
        ideal: String,
    },
    /// I : J, or U :_R M for a module and submodule rows.
    Colon {
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long)]
        by: Option<String>,
        #[arg(long)]
        module: Option<String>,
        /// Coefficient rows of U in the generators of the module.
        #[arg(long)]
        submodule: Option<String>,
    },
    /// Whether a polynomial lies in the radical.
    RadicalMember {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        poly: String,
    },
    /// Is the smaller ideal (or submodule) a reduction of the larger one?
    Reduction {
        #[command(flatten)]
        gens: Gens,
        /// Generators of the candidate reduction, same shape as the main input.
        #[arg(long)]
        sub: String,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
    /// Perpendicular module.
    Perp {
        #[arg(long)]
        module: String,
        #[arg(long)]
        no_minimalize: bool,
    },
    /// Order ideal of an element, by one route or both.
    OrderIdeal {
        #[arg(long)]
        module: String,
        /// Coefficients of the element in the generators.
        #[arg(long, conflicts_with = "generator")]
        element: Option<String>,
        /// 0-based generator index.
        #[arg(long)]
        generator: Option<usize>,
        /// row_ideal, dual_kernel or both.
        #[arg(long, default_value = "both")]
        route: String,
    },
    /// The j-th Fitting ideal.
    Fitting {
        #[arg(long)]
        module: Option<String>,
        /// Presentation matrix rows instead of a module file.
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long)]
        j: usize,
    },
    /// Trace ideal of a module.
    Trace {
        #[arg(long)]
        module: String,
    },
    /// Rees ideal, fiber ideal and analytic spread.
    Rees(Gens),
    /// Analytic spread only.
    Spread(Gens),
    /// Checks condition G_s (or G_infinity).
    GsCheck {
        #[arg(long)]
        module: String,
        /// Omit for G_infinity.
        #[arg(long)]
        s: Option<usize>,
    },
    /// Which Ext^i(M, R) vanish.
    Ext {
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 1)]
        from: usize,
        #[arg(long)]
        to: usize,
    },
    /// Top Chern class parity for rank n (or a table up to --max).
    Chern {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        max: Option<usize>,
    },
    /// Runs a scenario by id, or `all`.
    Verify {
        id: String,
        #[arg(long)]
        alpha: Option<i64>,
        #[arg(long)]
        d: Option<i64>,
        #[arg(long)]
        s: Option<i64>,
        #[arg(long)]
        t: Option<i64>,
        #[arg(long)]
        n: Option<i64>,
    },
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Out = Result<(Value, bool), Failure>;

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

struct Ctx {
    ring_text: Option<String>,
    order: Option<String>,
}

impl Ctx {
    fn ring(&self) -> Result<RingRef, Failure> {
        let Some(text) = &self.ring_text else {
            return usage("--ring is required for this command");
        };
        let mut text = read_arg(text)?;
        if let Some(o) = &self.order {
            if let Some(at) = text.find("order=") {
                let end = text[at..].find(' ').map_or(text.len(), |e| at + e);
                text.replace_range(at..end, "");
            }
            text = format!("{} order={o}", text.trim_end());
        }
        Ok(parse_ring(&text)?)
    }

    fn ideal(&self, r: &RingRef, text: &str) -> Result<Ideal, Failure> {
        Ok(Ideal::parse(r, &read_arg(text)?)?)
    }
}

fn strings(ps: &[Polynomial]) -> Value {
    Value::from(ps.iter().map(|p| p.to_string()).collect::<Vec<_>>())
}

fn vectors_json(vs: &[FreeElement]) -> Value {
    Value::from(
        vs.iter()
            .map(|v| v.coords().iter().map(|p| p.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    )
}

fn rows(r: &RingRef, text: &str) -> Result<Vec<FreeElement>, Failure> {
    Ok(parse_matrix_rows(r, &read_arg(text)?)?
        .into_iter()
        .map(FreeElement::new)
        .collect())
}

/// Ideal generators as 1-vectors, or submodule rows.
fn generators(ctx: &Ctx, g: &Gens) -> Result<(RingRef, Vec<FreeElement>, bool), Failure> {
    let r = ctx.ring()?;
    match (&g.ideal, &g.vectors) {
        (Some(i), None) => {
            let i = ctx.ideal(&r, i)?;
            let v = i.generators().iter().map(|p| FreeElement::new(vec![p.clone()])).collect();
            Ok((r, v, true))
        }
        (None, Some(v)) => {
            let v = rows(&r, v)?;
            Ok((r, v, false))
        }
        _ => usage("give exactly one of --ideal and --vectors"),
    }
}

fn module(text: &str) -> Result<FPModule, Failure> {
    Ok(parse_module(&read_arg(text)?)?)
}

fn route_list(route: &str) -> Result<Vec<Route>, Failure> {
    match route {
        "row_ideal" => Ok(vec![Route::RowIdeal]),
        "dual_kernel" => Ok(vec![Route::DualKernel]),
        "both" => Ok(vec![Route::RowIdeal, Route::DualKernel]),
        other => usage(format!("unknown route `{other}`")),
    }
}

fn execute(cmd: Cmd, ctx: &Ctx, seed: u64, jobs: usize, limits: &Limits) -> Out {
    let ok = |v: Value| Ok((v, false));
    match cmd {
        Cmd::Gb(g) => {
            let (r, v, is_ideal) = generators(ctx, &g)?;
            if is_ideal {
                let polys: Vec<Polynomial> = v.iter().map(|e| e.get(0).clone()).collect();
                ok(json!({"ring": r.describe(), "gb": strings(&ideal_groebner(&r, &polys)?.polys())}))
            } else {
                let rank = v.first().map_or(0, FreeElement::rank);
                ok(json!({"ring": r.describe(), "gb": vectors_json(groebner(&r, &v, rank)?.elements())}))
            }
        }
        Cmd::Nf { ideal, poly } => {
            let r = ctx.ring()?;
            let i = ctx.ideal(&r, &ideal)?;
            let f = parse_poly(&r, &poly)?;
            ok(json!({"normal_form": i.reduce(&f)?.to_string()}))
        }
        Cmd::Eliminate { ideal, k } => {
            let mut r = ctx.ring()?;
            if ctx.order.is_none() && !matches!(r.order(), MonomialOrder::Elimination(b) if b == k) {
                r = std::sync::Arc::new(r.with_order(MonomialOrder::Elimination(k))?);
            }
            let i = ctx.ideal(&r, &ideal)?;
            let kept: Vec<Polynomial> = oideal_core::eliminate(i.gb()?, k)?
                .into_iter()
                .map(|e| e.get(0).clone())
                .collect();
            ok(json!({"ring": r.describe(), "eliminated": strings(&kept)}))
        }
        Cmd::Syzygies(g) => {
            let (_, v, _) = generators(ctx, &g)?;
            let r = ctx.ring()?;
            ok(json!({"syzygies": vectors_json(&syzygies(&r, &v)?.generators)}))
        }
        Cmd::Height { ideal } => {
            let r = ctx.ring()?;
            ok(json!({"height": height_json(ctx.ideal(&r, &ideal)?.height()?)}))
        }
        Cmd::Dim { ideal } => {
            let r = ctx.ring()?;
            ok(json!({"dim": ctx.ideal(&r, &ideal)?.dim_quotient()?}))
        }
        Cmd::Colon { ideal, by, module: m, submodule } => match (ideal, by, m, submodule) {
            (Some(i), Some(j), None, None) => {
                let r = ctx.ring()?;
                let q = ctx.ideal(&r, &i)?.quotient(&ctx.ideal(&r, &j)?)?;
                ok(json!({"colon": strings(q.generators())}))
            }
            (None, None, Some(m), Some(u)) => {
                let m = module(&m)?;
                let u: Vec<Vec<Polynomial>> = parse_matrix_rows(m.ring(), &read_arg(&u)?)?;
                ok(json!({"colon": strings(m.colon(&u)?.generators())}))
            }
            _ => usage("give --ideal with --by, or --module with --submodule"),
        },
        Cmd::RadicalMember { ideal, poly } => {
            let r = ctx.ring()?;
            let f = parse_poly(&r, &poly)?;
            ok(json!({"radical_member": ctx.ideal(&r, &ideal)?.radical_member(&f)?}))
        }
        Cmd::Reduction { gens, sub, n_max } => {
            let (r, m, is_ideal) = generators(ctx, &gens)?;
            let u = if is_ideal {
                ctx.ideal(&r, &sub)?
                    .generators()
                    .iter()
                    .map(|p| FreeElement::new(vec![p.clone()]))
                    .collect()
            } else {
                rows(&r, &sub)?
            };
            let c = module_reduction_test(&r, &u, &m, n_max)?;
            ok(json!({"reduction": {
                "confirmed": c.confirmed,
                "n": c.n,
                "fiber_witness": c.witness.map(|w| w.dimension),
            }}))
        }
        Cmd::Perp { module: m, no_minimalize } => {
            let p = module(&m)?.perpendicular(!no_minimalize)?;
            ok(json!({"perp": module_json(&p.perp), "embedding": vectors_json(&p.embedding)}))
        }
        Cmd::OrderIdeal { module: m, element, generator, route } => {
            let m = module(&m)?;
            let mut out = serde_json::Map::new();
            let mut ideals = Vec::new();
            for route in route_list(&route)? {
                let res = match (&element, generator) {
                    (Some(e), None) => {
                        let x = parse_vector(m.ring(), &read_arg(e)?)?;
                        m.order_ideal(x.coords(), route)?
                    }
                    (None, Some(i)) => m.generator_order_ideal(i, route)?,
                    _ => return usage("give --element or --generator"),
                };
                out.insert(route.name().into(), strings(res.ideal.generators()));
                ideals.push(res.ideal);
            }
            let h = ideals[0].height()?;
            out.insert("height".into(), height_json(h));
            if ideals.len() == 2 {
                out.insert("equal".into(), Value::from(ideals[0].equals(&ideals[1])?));
            }
            ok(Value::Object(out))
        }
        Cmd::Fitting { module: m, matrix, j } => {
            let ideal = match (m, matrix) {
                (Some(m), None) => module(&m)?.fitting_ideal(j)?,
                (None, Some(a)) => {
                    let r = ctx.ring()?;
                    let rows = parse_matrix_rows(&r, &read_arg(&a)?)?;
                    let ncols = rows.first().map_or(0, Vec::len);
                    fitting_ideal(&PolyMatrix::from_rows(&r, rows, ncols)?, j)?
                }
                _ => return usage("give --module or --matrix"),
            };
            ok(json!({"fitting": strings(ideal.generators()), "height": height_json(ideal.height()?)}))
        }
        Cmd::Trace { module: m } => {
            let t = module(&m)?.trace_ideal()?;
            ok(json!({"trace": strings(t.generators()), "height": height_json(t.height()?)}))
        }
        Cmd::Rees(g) => {
            let (r, v, _) = generators(ctx, &g)?;
            let rp = rees_of_module(&r, &v)?;
            ok(json!({
                "analytic_spread": rp.analytic_spread,
                "fiber_ideal": strings(rp.fiber_ideal.generators()),
                "rees_ideal": strings(rp.rees_ideal.generators()),
            }))
        }
        Cmd::Spread(g) => {
            let (r, v, _) = generators(ctx, &g)?;
            let rp = rees_of_module(&r, &v)?;
            ok(json!({"analytic_spread": rp.analytic_spread, "generators": rp.ngens()}))
        }
        Cmd::GsCheck { module: m, s } => {
            let rep = check_gs(&module(&m)?, s)?;
            let rows: Vec<Value> = rep
                .rows
                .iter()
                .map(|row| {
                    json!({
                        "j": row.j,
                        "fitting_index": row.fitting_index,
                        "height": height_json(row.height),
                        "required": row.required,
                        "ok": row.ok(),
                    })
                })
                .collect();
            ok(json!({"rank": rep.rank, "s": rep.s, "rows": rows, "holds": rep.holds()}))
        }
        Cmd::Ext { module: m, from, to } => {
            if from == 0 || from > to {
                return usage("need 1 <= --from <= --to");
            }
            let rep = ext_vanishes(&module(&m)?, from..=to)?;
            let list: Vec<Value> = rep
                .vanishing
                .iter()
                .map(|(i, v)| json!({"i": i, "vanishes": v}))
                .collect();
            ok(json!({"ext": list}))
        }
        Cmd::Chern { n, max } => match (n, max) {
            (Some(n), None) => ok(json!({"n": n, "c": chern::chern_parity(n)?.to_string()})),
            (None, Some(max)) => {
                let mut table = Vec::new();
                for n in 2..=max {
                    table.push(json!({"n": n, "c": chern::chern_parity(n)?.to_string()}));
                }
                ok(json!({"table": table}))
            }
            _ => usage("give --n or --max"),
        },
        Cmd::Verify { id, alpha, d, s, t, n } => {
            let mut overrides = BTreeMap::new();
            for (k, v) in [("alpha", alpha), ("d", d), ("s", s), ("t", t), ("n", n)] {
                if let Some(v) = v {
                    overrides.insert(k.to_string(), Value::from(v));
                }
            }
            let scenarios = match select(&id, &overrides) {
                Ok(s) => s,
                Err(e) => return usage(e.to_string()),
            };
            let reports = run_all(&scenarios, seed, jobs, limits);
            let failed = reports.iter().any(|r| r.failed());
            Ok((json!({"reports": reports, "failed": failed}), failed))
        }
    }
}

fn summary(v: &Value) -> String {
    let Some(reports) = v.get("reports").and_then(Value::as_array) else {
        return serde_json::to_string_pretty(v).unwrap_or_default();
    };
    let mut s = String::new();
    for r in reports {
        s.push_str(&format!(
            "{} {} ({} ms)\n",
            r["scenario"].as_str().unwrap_or("?"),
            r["params"],
            r["elapsed_ms"]
        ));
        for f in r["facts"].as_array().into_iter().flatten() {
            let outcome = f["outcome"].as_str().unwrap_or("?");
            let mut line = format!("  {outcome:4} {}", f["name"].as_str().unwrap_or("?"));
            if let Some(v) = f.get("value") {
                line.push_str(&format!(" = {v}"));
            }
            if outcome != "PASS" {
                if let Some(e) = f.get("expected") {
                    line.push_str(&format!(" (expected {} {e})", f["cmp"].as_str().unwrap_or("eq")));
                }
                if let Some(reason) = f.get("reason") {
                    line.push_str(&format!(" [{}]", reason.as_str().unwrap_or("")));
                }
            }
            s.push_str(&line);
            s.push('\n');
        }
    }
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let seed = match std::env::var("OIDEAL_SEED") {
        Ok(v) => match v.trim().parse() {
            Ok(s) => s,
            Err(_) => {
                eprintln!("error: OIDEAL_SEED must be an unsigned integer");
                return ExitCode::from(2);
            }
        },
        Err(_) => g.seed,
    };
    let mut limits = Limits::default();
    if let Some(p) = g.max_pairs {
        limits.max_pairs = p;
    }
    if let Some(b) = g.max_bits {
        limits.max_bits = b;
    }
    if let Some(d) = g.max_degree {
        limits.max_degree = d;
    }
    if let Some(t) = g.timeout_s {
        if !(t.is_finite() && t > 0.0) {
            eprintln!("error: --timeout-s must be positive");
            return ExitCode::from(2);
        }
        limits.deadline = Some(Instant::now() + Duration::from_secs_f64(t));
    }
    let ctx = Ctx {
        ring_text: g.ring.clone(),
        order: g.order.clone(),
    };
    let pretty = g.pretty;
    let jobs = g.jobs;
    let result = limits.clone().scope(|| execute(cli.cmd, &ctx, seed, jobs, &limits));
    match result {
        Ok((v, failed)) => {
            println!("{v}");
            if pretty {
                eprint!("{}", summary(&v));
            }
            if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(Error::Resource(limit))) => {
            println!("{}", json!({"error": "resource", "limit": limit.to_string()}));
            eprintln!("error: resource limit `{limit}` exceeded");
            ExitCode::from(3)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

