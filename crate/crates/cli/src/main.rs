use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use reebscope::algebra::{evaluate, parse};
use reebscope::approx::{table_header, BoundReport};
use reebscope::complex::io::{read_complex, read_field};
use reebscope::complex::{generate_space, FieldKind, Generator, ScalarField, SimplicialComplex, SpaceSpec};
use reebscope::exec::{init_threads, Exec};
use reebscope::reeb::build_reeb;
use reebscope::suites::{run_suite, Suite, SuiteConfig};
use reebscope::width::{
    reeb_width_global, reeb_width_local, simplified_bounds, urysohn_volume_lower, Geometry, GlobalGeometry,
    LocalGeometry,
};
use serde_json::{json, Value};
use std::fs;
use std::io::{ErrorKind, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "reebscope", version, about = "Reeb graphs, quotient distortion and Reeb width bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the Reeb graph of a field and write it as JSON and DOT.
    Reeb(ReebArgs),
    /// Run a verification suite and print its reports.
    Verify(VerifyArgs),
    /// Evaluate a space expression, e.g. "product(torus(3), surface(g=2))".
    Space {
        expr: String,
    },
    /// Closed-form Reeb width lower bounds.
    Width {
        #[command(subcommand)]
        form: WidthForm,
    },
}

#[derive(Args)]
struct ReebArgs {
    /// Mesh file (.off or JSON).
    #[arg(long, conflicts_with = "fixture")]
    mesh: Option<PathBuf>,
    /// Generated fixture instead of a mesh, e.g. torus, genus:2, wedge:3.
    #[arg(long)]
    fixture: Option<String>,
    /// Fixture resolution.
    #[arg(long, default_value_t = 0.1)]
    h: f64,
    /// Field file (one value per line, or a JSON array).
    #[arg(long, conflicts_with = "kind")]
    field: Option<PathBuf>,
    /// Fixture field: canonical, height, dist:V or random:SEED.
    #[arg(long)]
    kind: Option<String>,
    /// Output prefix; writes PREFIX.json and PREFIX.dot.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Disk,
    Hemisphere,
}

#[derive(Args)]
struct VerifyArgs {
    /// Shorthand for --suite thm62 (disk) or ex66 (hemisphere).
    #[arg(value_enum)]
    target: Option<Target>,
    /// thm31, thm52, thm62, ex66, chain, rules or thickness.
    #[arg(long, conflicts_with = "target")]
    suite: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    h: Option<f64>,
    #[arg(long)]
    tol: Option<f64>,
    /// Print JSON instead of a table.
    #[arg(long)]
    json: bool,
    /// Also write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum WidthForm {
    /// Bound on a convex geodesic ball of radius r.
    #[command(allow_negative_numbers = true)]
    Local {
        #[arg(long)]
        r: f64,
        /// Upper bound on sectional curvature.
        #[arg(long = "K")]
        curvature: f64,
        #[arg(long)]
        n: u32,
    },
    /// Bound from the injectivity radius of a closed manifold.
    #[command(allow_negative_numbers = true)]
    Global {
        #[arg(long)]
        inj: f64,
        #[arg(long = "K")]
        curvature: f64,
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        vol: Option<f64>,
        #[arg(long)]
        diam: Option<f64>,
        /// Constant of the Urysohn-width volume bound; reported only when given.
        #[arg(long)]
        c: Option<f64>,
    },
}

/// Usage and validation errors; everything else is a suite outcome.
struct Usage(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.into())
    }
}

fn main() -> ExitCode {
    if let Ok(t) = std::env::var("REEBSCOPE_THREADS") {
        match t.trim().parse::<usize>() {
            Ok(n) if n > 0 => {
                init_threads(n);
            }
            _ => {
                eprintln!("error: REEBSCOPE_THREADS must be a positive integer, got '{t}'");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Result<bool, Usage> {
    match cmd {
        Command::Reeb(a) => cmd_reeb(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Space { expr } => {
            let e = parse(&expr)?;
            let record = evaluate(&e)?;
            let mut doc = json!({ "schema": 1, "expr": e.to_string() });
            merge(&mut doc, serde_json::to_value(&record)?);
            print_json(&doc)?;
            Ok(true)
        }
        Command::Width { form } => cmd_width(form),
    }
}

fn merge(doc: &mut Value, extra: Value) {
    if let (Value::Object(a), Value::Object(b)) = (doc, extra) {
        a.extend(b);
    }
}

/// Writes to stdout; a closed pipe (for example `| head`) ends output quietly.
fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}").and_then(|_| out.flush()) {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn print_json(v: &Value) -> Result<()> {
    emit(&serde_json::to_string_pretty(v)?)
}

fn field_kind(s: &str) -> Result<FieldKind> {
    let (name, arg) = match s.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (s, None),
    };
    let num = |what: &str| -> Result<u64> {
        let a = arg.ok_or_else(|| anyhow!("field kind '{name}' needs :{what}"))?;
        a.parse().with_context(|| format!("'{a}' is not a valid {what}"))
    };
    Ok(match name {
        "canonical" => FieldKind::Canonical,
        "height" => FieldKind::Height,
        "dist" | "distance" => FieldKind::Distance(num("vertex")? as usize),
        "random" => FieldKind::RandomSmooth(num("seed")?),
        _ => bail!("unknown field kind '{s}' (expected canonical, height, dist:V or random:SEED)"),
    })
}

fn load(a: &ReebArgs) -> Result<(SimplicialComplex, ScalarField)> {
    if let Some(path) = &a.mesh {
        let complex = read_complex(path)?;
        let field = match (&a.field, &a.kind) {
            (Some(p), _) => read_field(p)?,
            (None, Some(_)) => bail!("--kind needs --fixture; pass --field with --mesh"),
            (None, None) => bail!("--mesh needs --field"),
        };
        if field.len() != complex.n_vertices() {
            bail!("field has {} values, mesh has {} vertices", field.len(), complex.n_vertices());
        }
        return Ok((complex, field));
    }
    let name = a.fixture.as_deref().ok_or_else(|| anyhow!("pass --mesh or --fixture"))?;
    let g: Generator = name.parse()?;
    let fx = generate_space(&SpaceSpec::new(g, a.h))?;
    let field = match (&a.field, &a.kind) {
        (Some(p), _) => read_field(p)?,
        (None, Some(k)) => {
            let kind = field_kind(k)?;
            if let FieldKind::Distance(v) = kind {
                if v >= fx.complex.n_vertices() {
                    bail!("vertex {v} out of range (fixture has {} vertices)", fx.complex.n_vertices());
                }
            }
            fx.field_of(kind)
        }
        (None, None) => fx.field_of(FieldKind::Canonical),
    };
    if field.len() != fx.complex.n_vertices() {
        bail!("field has {} values, fixture has {} vertices", field.len(), fx.complex.n_vertices());
    }
    Ok((fx.complex, field))
}

fn cmd_reeb(a: ReebArgs) -> Result<bool, Usage> {
    let (complex, field) = load(&a)?;
    let (g, _) = build_reeb(&complex, &field)?;
    if let Some(prefix) = &a.out {
        let json_path = prefix.with_extension("json");
        let dot_path = prefix.with_extension("dot");
        fs::write(&json_path, serde_json::to_string_pretty(&g.to_json())? + "\n")
            .with_context(|| format!("writing {}", json_path.display()))?;
        fs::write(&dot_path, g.to_dot()).with_context(|| format!("writing {}", dot_path.display()))?;
    }
    print_json(&json!({
        "schema": 1,
        "cycle_rank": g.cycle_rank(),
        "nodes": g.n_nodes(),
        "arcs": g.n_arcs(),
        "components": g.components(),
    }))?;
    Ok(true)
}

fn cmd_verify(a: VerifyArgs) -> Result<bool, Usage> {
    let suite = match (a.target, &a.suite) {
        (Some(Target::Disk), _) => Suite::Thm62,
        (Some(Target::Hemisphere), _) => Suite::Ex66,
        (None, Some(s)) => s.parse()?,
        (None, None) => return Err(Usage(anyhow!("pass --suite NAME, or disk / hemisphere"))),
    };
    if let Some(h) = a.h {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Usage(anyhow!("--h must be positive, got {h}")));
        }
    }
    let cfg = SuiteConfig {
        h: a.h,
        seed: a.seed,
        tol: a.tol,
        exec: Exec::default(),
    };
    let reports = run_suite(suite, &cfg)?;
    let pass = reports.iter().all(|r| r.pass);
    let doc = report_doc(suite, &cfg, &reports, pass);
    if let Some(path) = &a.out {
        fs::write(path, serde_json::to_string_pretty(&doc)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if a.json {
        print_json(&doc)?;
    } else {
        let mut text = table_header();
        for r in &reports {
            text += &format!("\n{r}");
        }
        let failed = reports.iter().filter(|r| !r.pass).count();
        text += &format!("\n{suite}: {} reports, {failed} failed", reports.len());
        emit(&text)?;
    }
    Ok(pass)
}

fn report_doc(suite: Suite, cfg: &SuiteConfig, reports: &[BoundReport], pass: bool) -> Value {
    json!({
        "schema": 1,
        "suite": suite.to_string(),
        "seed": cfg.seed,
        "h": cfg.h.unwrap_or(suite.default_h()),
        "tol": cfg.tol.unwrap_or(suite.default_tol()),
        "pass": pass,
        "reports": reports,
    })
}

fn cmd_width(form: WidthForm) -> Result<bool, Usage> {
    match form {
        WidthForm::Local { r, curvature, n } => {
            let g = LocalGeometry { r, curvature, dim: n };
            let value = reeb_width_local(&g)?;
            let simplified = simplified_bounds(&Geometry::Local(g))?;
            print_json(&json!({
                "schema": 1,
                "form": "local",
                "inputs": g,
                "reeb_width_lower": value,
                "simplified": simplified,
            }))?;
        }
        WidthForm::Global { inj, curvature, dim, vol, diam, c } => {
            let g = GlobalGeometry {
                inj,
                curvature,
                dim,
                volume: vol,
                diameter: diam,
            };
            let w = reeb_width_global(&g)?;
            let simplified = simplified_bounds(&Geometry::Global(g))?;
            let mut doc = json!({
                "schema": 1,
                "form": "global",
                "inputs": g,
                "reeb_width_lower": w.value,
                "simplified": simplified,
            });
            if let Some(msg) = &w.warning {
                doc["warning"] = json!(msg);
            }
            match (vol, diam, c) {
                (Some(v), Some(d), Some(c)) => {
                    doc["urysohn_width_lower"] = json!(urysohn_volume_lower(v, d, dim, c)?);
                }
                (None, None, None) => {}
                _ => return Err(Usage(anyhow!("the Urysohn bound needs all of --vol, --diam and --c"))),
            }
            print_json(&doc)?;
        }
    }
    Ok(true)
}
