mod input;
mod output;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use orientcount::alpha_engine::{
    count_with, enumerate_problem, lattice_with, rigid_problem_edges, CountMethod, CountOptions, EngineError,
    LatticeOptions, Problem, Visit,
};
use orientcount::combinatorics::{alpha_bounds, bipolar_bounds};
use orientcount::generators::{canonical_orientation, generate, FamilySpec};
use orientcount::planar_map::{write_pmap, write_pmap_json, PlanarMap, Vertex};
use orientcount::reductions::matching_chain;
use orientcount::structures::{
    count_bipolar, enumerate_bipolar, enumerate_schnyder_woods, outer_specials, schnyder_count_via_completion,
    sign_encode, signs_to_string,
};
use orientcount::transfer_matrix::{alternating_count, eigen_ratio, lambda};
use orientcount::verify::{run_suite, VerifyOptions, SUITES};
use serde_json::{json, Value};

use input::{check_vertex, inner_active, load_map, parse_family, parse_ints, resolve_alpha};
use output::{document, map_dot};

#[derive(Parser)]
#[command(name = "orientcount", version, about = "Count and enumerate orientations of planar maps")]
struct Cli {
    /// Worker threads for the counting engines.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Add wall-clock milliseconds (`ms`) to JSON output.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MapArgs {
    /// Map in pmap v1 text or JSON; `-` reads stdin.
    #[arg(long)]
    map: String,
}

#[derive(Args)]
struct DemandArgs {
    #[command(flatten)]
    map: MapArgs,
    /// File of out-degrees, one per vertex.
    #[arg(long)]
    alpha: Option<String>,
    /// Out-degrees as a comma-separated list.
    #[arg(long = "alpha-inline")]
    alpha_inline: Option<String>,
    /// Orient only edges off the outer face (3-orientations of triangulations).
    #[arg(long)]
    inner: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapFormat {
    Pmap,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum LatticeFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Frontier,
    Search,
}

#[derive(Clone, Copy, ValueEnum)]
enum Via {
    Matching,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a map from a named family.
    Generate {
        /// grid, torus-grid, augmented-grid, quad-grid, tri-grid, tri-torus,
        /// augmented-tri-grid, hex-grid, augmented-hex-grid, angle-grid,
        /// stacked or strip.
        #[arg(long)]
        family: String,
        /// Rows.
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Columns.
        #[arg(long, default_value_t = 2)]
        l: usize,
        /// Faces to stack into for the stacked family: `a,b,c;d,e,f;...`.
        #[arg(long)]
        stacking: Option<String>,
        #[arg(long, value_enum, default_value_t = MapFormat::Pmap)]
        out: MapFormat,
        /// Draw the canonical orientation in DOT output.
        #[arg(long)]
        canonical: bool,
    },
    /// Count α-orientations and report rigid edges.
    Count {
        #[command(flatten)]
        demand: DemandArgs,
        #[arg(long, value_enum, default_value_t = Method::Frontier)]
        method: Method,
    },
    /// List α-orientations as bit strings (1 = edge points along its first dart).
    Enumerate {
        #[command(flatten)]
        demand: DemandArgs,
        #[arg(long, default_value_t = 1000)]
        limit: usize,
    },
    /// Build the flip lattice of the α-orientations.
    Lattice {
        #[command(flatten)]
        demand: DemandArgs,
        #[arg(long, default_value_t = 100_000)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = LatticeFormat::Json)]
        out: LatticeFormat,
    },
    /// Count or list Schnyder woods.
    Schnyder {
        #[command(flatten)]
        map: MapArgs,
        /// Suspension vertices `a1,a2,a3`; defaults to the outer triangle.
        #[arg(long)]
        specials: Option<String>,
        #[arg(long, conflicts_with = "enumerate")]
        count: bool,
        #[arg(long)]
        enumerate: bool,
        #[arg(long, default_value_t = 1000)]
        limit: usize,
    },
    /// Count, list or sign-encode bipolar orientations.
    Bipolar {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long)]
        source: Vertex,
        #[arg(long)]
        sink: Vertex,
        #[arg(long, conflicts_with_all = ["enumerate", "signs"])]
        count: bool,
        #[arg(long, conflicts_with = "signs")]
        enumerate: bool,
        #[arg(long)]
        signs: bool,
        #[arg(long, default_value_t = 1000)]
        limit: usize,
    },
    /// Count α-orientations through perfect matchings.
    Reduce {
        #[command(flatten)]
        map: MapArgs,
        /// File of out-degrees, one per vertex.
        #[arg(long)]
        alpha: Option<String>,
        /// Out-degrees as a comma-separated list.
        #[arg(long = "alpha-inline")]
        alpha_inline: Option<String>,
        #[arg(long, value_enum, default_value_t = Via::Matching)]
        via: Via,
    },
    /// Dominant eigenvalue of the torus transfer matrix.
    Eigen {
        /// Column height 2k.
        #[arg(long = "two-k")]
        two_k: Option<usize>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Print (Λ_a/Λ_b)^(1/(2(a-b))).
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        ratio: Option<Vec<usize>>,
        /// Also count alternating orientations of the 2k x 2l torus.
        #[arg(long, requires = "two_k")]
        alternating: Option<usize>,
    },
    /// Upper bounds on the number of orientations.
    Bounds {
        #[command(flatten)]
        map: MapArgs,
        /// File of out-degrees, one per vertex.
        #[arg(long)]
        alpha: Option<String>,
        /// Out-degrees as a comma-separated list.
        #[arg(long = "alpha-inline")]
        alpha_inline: Option<String>,
        /// Orient only edges off the outer face.
        #[arg(long)]
        inner: bool,
        /// Bipolar bounds for these poles instead of α-bounds.
        #[arg(long, requires = "sink")]
        source: Option<Vertex>,
        #[arg(long, requires = "source")]
        sink: Option<Vertex>,
        /// Count to compare every bound against.
        #[arg(long)]
        measured: Option<String>,
    },
    /// Run a verification suite, or `all`.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
    },
}

/// Command output: a JSON body, or raw text for pmap and DOT.
enum Out {
    Json(Value),
    Text(String),
}

struct Failure {
    code: u8,
    msg: String,
}

impl From<String> for Failure {
    fn from(msg: String) -> Self {
        Failure { code: 2, msg }
    }
}

impl From<&str> for Failure {
    fn from(msg: &str) -> Self {
        Failure::from(msg.to_string())
    }
}

fn err<E: std::fmt::Display>(e: E) -> Failure {
    Failure::from(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let threads = cli.threads.max(1);
    let result = run(cli.command, threads);
    let ms = cli.timing.then(|| start.elapsed().as_secs_f64() * 1000.0);
    match result {
        Ok((Out::Json(v), code)) => {
            emit(&(document(v, ms) + "\n"));
            ExitCode::from(code)
        }
        Ok((Out::Text(t), code)) => {
            emit(&t);
            if let Some(ms) = ms {
                eprintln!("{ms:.3} ms");
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn problem(demand: &DemandArgs) -> Result<(PlanarMap, Vec<u32>, Problem), Failure> {
    let (map, embedded) = load_map(&demand.map.map)?;
    let alpha = resolve_alpha(&map, embedded, demand.alpha.as_deref(), demand.alpha_inline.as_deref())?;
    let active = demand.inner.then(|| inner_active(&map));
    let p = Problem::with_active(&map, &alpha, active.as_deref()).map_err(err)?;
    Ok((map, alpha, p))
}

fn edge_json(map: &PlanarMap, e: usize, forward: bool) -> Value {
    let (u, v) = map.edge_ends(e);
    let (from, to) = if forward { (u, v) } else { (v, u) };
    json!({"edge": e, "from": from, "to": to})
}

fn run(command: Command, threads: usize) -> Result<(Out, u8), Failure> {
    let opts = CountOptions {
        method: CountMethod::Frontier,
        threads,
    };
    let out = match command {
        Command::Generate {
            family,
            k,
            l,
            stacking,
            out,
            canonical,
        } => {
            let spec = FamilySpec::new(parse_family(&family, stacking.as_deref())?, k, l);
            let g = generate(&spec).map_err(err)?;
            match out {
                MapFormat::Pmap => Out::Text(write_pmap(&g.map, g.alpha.as_deref()).map_err(err)?),
                MapFormat::Dot => {
                    let x = if canonical {
                        Some(canonical_orientation(&spec).map_err(err)?)
                    } else {
                        None
                    };
                    Out::Text(map_dot(&g.map, x.as_ref()))
                }
                MapFormat::Json => Out::Json(json!({
                    "family": family,
                    "k": k,
                    "l": l,
                    "map": write_pmap_json(&g.map, g.alpha.as_deref()).map_err(err)?,
                    "specials": g.specials,
                    "active": g.active,
                })),
            }
        }
        Command::Count { demand, method } => {
            let (map, _, p) = problem(&demand)?;
            let method = match method {
                Method::Frontier => CountMethod::Frontier,
                Method::Search => CountMethod::Search,
            };
            let r = count_with(&p, CountOptions { method, threads }).map_err(err)?;
            let rigid = match rigid_problem_edges(&p) {
                Ok(r) => r.iter().map(|&(i, fwd)| edge_json(&map, p.edge_ids[i], fwd)).collect(),
                Err(EngineError::Infeasible) => Vec::new(),
                Err(e) => return Err(err(e)),
            };
            Out::Json(json!({
                "count": r.count.to_string(),
                "nodes": r.nodes,
                "rigid_edges": rigid,
            }))
        }
        Command::Enumerate { demand, limit } => {
            let (_, _, p) = problem(&demand)?;
            let mut listed = Vec::new();
            let done = enumerate_problem(&p, |dirs| {
                if listed.len() == limit {
                    return Visit::Stop;
                }
                listed.push(p.to_orientation(dirs, None).to_bit_string());
                Visit::Continue
            });
            let complete = match done {
                Ok(_) => true,
                Err(EngineError::VisitorAbort) => false,
                Err(e) => return Err(err(e)),
            };
            Out::Json(json!({"complete": complete, "listed": listed.len(), "orientations": listed}))
        }
        Command::Lattice { demand, cap, out } => {
            let (map, alpha, _) = problem(&demand)?;
            let active = demand.inner.then(|| inner_active(&map));
            let options = LatticeOptions {
                cap,
                ..LatticeOptions::default()
            };
            let lat = lattice_with(&map, &alpha, active.as_deref(), options).map_err(err)?;
            match out {
                LatticeFormat::Dot => Out::Text(lat.to_dot()),
                LatticeFormat::Json => Out::Json(json!({
                    "size": lat.len(),
                    "min": lat.elements[lat.min].to_bit_string(),
                    "max": lat.elements[lat.max].to_bit_string(),
                    "elements": lat.elements.iter().map(|x| x.to_bit_string()).collect::<Vec<_>>(),
                    "covers": lat.covers,
                    "cycles": lat.cycles.len(),
                    "rigid_edges": lat.rigid.iter().map(|&(e, f)| edge_json(&map, e, f)).collect::<Vec<_>>(),
                })),
            }
        }
        Command::Schnyder {
            map,
            specials,
            count,
            enumerate,
            limit,
        } => {
            let (m, _) = load_map(&map.map)?;
            let sp = match specials {
                Some(s) => {
                    let v = parse_ints(&s)?;
                    let [a, b, c] = v[..] else {
                        return Err("--specials needs three vertices".into());
                    };
                    for x in [a, b, c] {
                        check_vertex(&m, x as Vertex, "special")?;
                    }
                    [a as Vertex, b as Vertex, c as Vertex]
                }
                None => outer_specials(&m).ok_or("the outer face is not a triangle; pass --specials")?,
            };
            if enumerate && !count {
                let mut woods = Vec::new();
                let visited = enumerate_schnyder_woods(&m, sp, limit, |w| {
                    let colors: String = w
                        .dart_color
                        .iter()
                        .map(|c| c.map_or('.', |c| char::from(b'1' + c)))
                        .collect();
                    woods.push(colors);
                })
                .map_err(err)?;
                Out::Json(json!({
                    "specials": sp,
                    "complete": visited < limit,
                    "listed": woods.len(),
                    "woods": woods,
                }))
            } else {
                let r = schnyder_count_via_completion(&m, sp, opts).map_err(err)?;
                Out::Json(json!({"specials": sp, "count": r.count.to_string()}))
            }
        }
        Command::Bipolar {
            map,
            source,
            sink,
            count: _,
            enumerate,
            signs,
            limit,
        } => {
            let (m, _) = load_map(&map.map)?;
            let s = check_vertex(&m, source, "source")?;
            let t = check_vertex(&m, sink, "sink")?;
            if s == t {
                return Err("source and sink must differ".into());
            }
            if enumerate || signs {
                let all = enumerate_bipolar(&m, s, t);
                let listed: Vec<String> = if signs {
                    all.iter()
                        .take(limit)
                        .map(|x| sign_encode(&m, x).map(|g| signs_to_string(&g)))
                        .collect::<Result<_, _>>()
                        .map_err(err)?
                } else {
                    all.iter().take(limit).map(|x| x.to_bit_string()).collect()
                };
                let key = if signs { "signs" } else { "orientations" };
                Out::Json(json!({
                    "source": s,
                    "sink": t,
                    "count": all.len().to_string(),
                    "complete": all.len() <= limit,
                    key: listed,
                }))
            } else {
                let c = count_bipolar(&m, s, t, opts).map_err(err)?;
                Out::Json(json!({"source": s, "sink": t, "count": c.to_string()}))
            }
        }
        Command::Reduce {
            map,
            alpha,
            alpha_inline,
            via: Via::Matching,
        } => {
            let (m, embedded) = load_map(&map.map)?;
            let a = resolve_alpha(&m, embedded, alpha.as_deref(), alpha_inline.as_deref())?;
            let chain = matching_chain(&m, &a).map_err(err)?;
            Out::Json(serde_json::to_value(chain).map_err(err)?)
        }
        Command::Eigen {
            two_k,
            tol,
            ratio,
            alternating,
        } => {
            if !(tol > 0.0 && tol < 1.0) {
                return Err(format!("--tol must lie in (0, 1), got {tol}").into());
            }
            let mut body = serde_json::Map::new();
            if let Some(r) = ratio {
                let r = eigen_ratio(r[0], r[1], tol).map_err(err)?;
                body.insert("ratio".into(), serde_json::to_value(r).map_err(err)?);
            }
            if let Some(h) = two_k {
                let e = lambda(h, tol).map_err(err)?;
                body.insert("two_k".into(), h.into());
                for (k, v) in [("lambda", e.lambda), ("lower", e.lower), ("upper", e.upper)] {
                    body.insert(k.into(), v.into());
                }
                body.insert("iterations".into(), e.iterations.into());
                if let Some(l) = alternating {
                    let c = alternating_count(h, l).map_err(err)?;
                    body.insert("alternating_count".into(), c.to_string().into());
                }
            }
            if body.is_empty() {
                return Err("pass --two-k or --ratio".into());
            }
            Out::Json(Value::Object(body))
        }
        Command::Bounds {
            map,
            alpha,
            alpha_inline,
            inner,
            source,
            sink,
            measured,
        } => {
            let (m, embedded) = load_map(&map.map)?;
            let reports = match (source, sink) {
                (Some(s), Some(t)) => {
                    let s = check_vertex(&m, s, "source")?;
                    let t = check_vertex(&m, t, "sink")?;
                    bipolar_bounds(&m, s, t)
                }
                _ => {
                    let a = resolve_alpha(&m, embedded, alpha.as_deref(), alpha_inline.as_deref())?;
                    let active = inner.then(|| inner_active(&m));
                    alpha_bounds(&m, &a, active.as_deref())
                }
            };
            let measured: Option<BigUint> = measured
                .map(|s| s.parse().map_err(|_| format!("--measured: not a count: {s:?}")))
                .transpose()?;
            let reports: Vec<_> = reports
                .into_iter()
                .map(|r| match &measured {
                    Some(c) => r.with_measured(c),
                    None => r,
                })
                .collect();
            let all_dominate = reports.iter().all(|r| r.dominates != Some(false));
            let code = if all_dominate { 0 } else { 1 };
            return Ok((Out::Json(json!({"bounds": reports, "all_dominate": all_dominate})), code));
        }
        Command::Verify { suite } => {
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let mut reports = Vec::new();
            for name in names {
                let started = Instant::now();
                let r = run_suite(name, VerifyOptions { threads }).map_err(err)?;
                let failed = r.checks.iter().filter(|c| !c.passed).count();
                eprintln!(
                    "{:2} {:22} {} ({} checks, {} failed, {:.2}s)",
                    r.criterion,
                    r.suite,
                    if r.passed { "PASS" } else { "FAIL" },
                    r.checks.len(),
                    failed,
                    started.elapsed().as_secs_f64()
                );
                for c in r.checks.iter().filter(|c| !c.passed) {
                    eprintln!("     {}: {}", c.name, c.detail);
                }
                reports.push(r);
            }
            let passed = reports.iter().all(|r| r.passed);
            return Ok((Out::Json(json!({"passed": passed, "suites": reports})), if passed { 0 } else { 1 }));
        }
    };
    Ok((out, 0))
}
