use std::error::Error as StdError;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use qcc_core::artifact::{elem_json, parse_elem, ring_element_json, CodeArtifact, ElemRepr};
use qcc_core::codes::parse_delta;
use qcc_core::distance::{MinWeightOptions, DEFAULT_BUDGET};
use qcc_core::selfdual::{self, build_d_set, ComponentSet, SearchConfig, SelfDualWitness};
use qcc_core::semisimple::{
    classify, decompose_with, star_pairing, ComponentShape, IdempotentBasis,
};
use qcc_core::transport::make_transport;
use qcc_core::{CodeKind, Field, QuasiCode, RingContext, RingElement};

type CliResult<T> = Result<T, Box<dyn StdError>>;

#[derive(Parser)]
#[command(
    name = "selfdual",
    version,
    about = "Galois self-dual 2-quasi constacyclic codes"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct Global {
    /// Field characteristic
    #[arg(long, global = true)]
    p: Option<u32>,
    /// Extension degree
    #[arg(long, global = true)]
    ell: Option<u32>,
    /// Irreducible modulus, coefficients low-to-high, comma separated
    #[arg(long, global = true, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
    /// Code length parameter n
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Field element: an index ("2") or coefficients low-to-high ("0,1")
    #[arg(long, global = true)]
    lambda: Option<String>,
    /// Galois exponent: the inner product is sum a_i b_i^(p^h)
    #[arg(long, global = true)]
    h: Option<u32>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Codeword budget for exhaustive minimum-weight computation
    #[arg(long, global = true)]
    budget: Option<u128>,
    /// Output file (stdout when absent)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide Galois self-duality of a two-quasi code and report the witness
    Check {
        #[arg(long)]
        code: PathBuf,
    },
    /// Write the Galois dual of a code
    Dual {
        #[arg(long)]
        code: PathBuf,
    },
    /// Goursat decomposition C = (C_a x C_a') + C_{b,bg}
    Decompose {
        #[arg(long)]
        code: PathBuf,
    },
    /// Dimension and minimum weight as CSV
    Metrics {
        #[arg(long)]
        code: PathBuf,
    },
    /// Build C_{a,a'} from two ring elements given as JSON lists of field elements
    Pair {
        #[arg(long)]
        a: String,
        #[arg(long)]
        a2: Option<String>,
    },
    /// Primitive idempotents of F[X]/(X^n - lambda) and their star pairing
    Idempotents,
    /// The set D = {g : gg* = -1} of the cyclic ring
    Dset {
        #[arg(long)]
        enumerate: bool,
        #[arg(long, default_value_t = 1 << 20)]
        limit: u128,
    },
    /// Random search over self-dual C_{1,g}, g in D
    Search {
        #[arg(long, value_delimiter = ',', required = true)]
        n_list: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Relative distance threshold ("0.1" or "1/10")
        #[arg(long, default_value = "0.1")]
        delta: String,
        /// Directory receiving the best code of each length as JSON
        #[arg(long)]
        best_dir: Option<PathBuf>,
    },
    /// Carry a two-quasi cyclic code to the lambda-constacyclic ring
    Transport {
        #[arg(long)]
        code: PathBuf,
    },
}

fn need<T: Clone>(v: &Option<T>, flag: &str) -> CliResult<T> {
    v.clone()
        .ok_or_else(|| format!("missing required flag --{flag}").into())
}

impl Global {
    fn field(&self) -> CliResult<Field> {
        let p = need(&self.p, "p")?;
        Ok(Field::new(
            p,
            self.ell.unwrap_or(1),
            self.modulus.as_deref(),
        )?)
    }

    fn ring(&self) -> CliResult<RingContext> {
        let f = self.field()?;
        let lambda = match &self.lambda {
            Some(s) => parse_elem(&f, s)?,
            None => f.one(),
        };
        Ok(RingContext::new(&f, need(&self.n, "n")?, lambda)?)
    }

    fn h(&self) -> CliResult<u32> {
        need(&self.h, "h")
    }

    fn min_weight_opts(&self) -> MinWeightOptions {
        MinWeightOptions {
            budget: self.budget.unwrap_or(DEFAULT_BUDGET),
            seed: self.seed,
        }
    }

    fn emit(&self, text: &str) -> CliResult<()> {
        match &self.out {
            Some(path) => fs::write(path, text)
                .map_err(|e| format!("cannot write {}: {e}", path.display()).into()),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }

    fn emit_json(&self, v: &Value) -> CliResult<()> {
        self.emit(&format!("{}\n", serde_json::to_string_pretty(v)?))
    }
}

fn read_code(path: &Path) -> CliResult<QuasiCode> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Ok(CodeArtifact::from_json(&text)?.to_code()?)
}

fn parse_ring_element(ctx: &RingContext, s: &str) -> CliResult<RingElement> {
    let reprs: Vec<ElemRepr> = serde_json::from_str(s)
        .map_err(|e| format!("ring element {s:?} is not a JSON list of field elements: {e}"))?;
    let f = ctx.field();
    let coeffs = reprs
        .iter()
        .map(|r| r.to_elem(f))
        .collect::<Result<_, _>>()?;
    Ok(ctx.element(coeffs)?)
}

/// Numbers above 2^64 become strings.
fn big(v: u128) -> Value {
    u64::try_from(v).map_or_else(|_| json!(v.to_string()), |x| json!(x))
}

fn ring_coeffs_json(a: &RingElement) -> Value {
    let f = a.ctx().field();
    Value::Array(a.coeffs().iter().map(|&c| elem_json(f, c)).collect())
}

fn witness_json(code: &QuasiCode, w: &SelfDualWitness) -> Value {
    match w {
        SelfDualWitness::LambdaNeq { alpha } => json!({"alpha": elem_json(code.field(), *alpha)}),
        SelfDualWitness::LambdaEq { a, a2, b, g } => json!({
            "a": ring_element_json(a),
            "a2": ring_element_json(a2),
            "b": ring_element_json(b),
            "g": ring_element_json(g),
        }),
    }
}

fn cmd_check(g: &Global, path: &Path) -> CliResult<()> {
    let code = read_code(path)?;
    let out = selfdual::check(&code, g.h()?)?;
    g.emit_json(&json!({
        "self_dual": out.self_dual,
        "regime": out.regime.name(),
        "witness": out.witness.as_ref().map(|w| witness_json(&code, w)),
    }))
}

fn cmd_dual(g: &Global, path: &Path) -> CliResult<()> {
    let code = read_code(path)?;
    let dual = code.galois_dual(g.h()?)?;
    g.emit(&format!("{}\n", CodeArtifact::from_code(&dual).to_json()))
}

fn shape_json(s: &ComponentShape) -> Value {
    match s {
        ComponentShape::Zero => json!("zero"),
        ComponentShape::Left => json!("left"),
        ComponentShape::Right => json!("right"),
        ComponentShape::Graph(gi) => json!({"graph": ring_coeffs_json(gi)}),
        ComponentShape::Full => json!("full"),
    }
}

fn cmd_decompose(g: &Global, path: &Path) -> CliResult<()> {
    let code = read_code(path)?;
    let basis = IdempotentBasis::new(code.ctx())?;
    let shapes = classify(&basis, &code)?;
    let d = decompose_with(&basis, &code)?;
    g.emit_json(&json!({
        "a": ring_element_json(&d.a),
        "a2": ring_element_json(&d.a2),
        "b": ring_element_json(&d.b),
        "g": ring_element_json(&d.g),
        "shapes": shapes.iter().map(shape_json).collect::<Vec<_>>(),
    }))
}

fn cmd_metrics(g: &Global, path: &Path) -> CliResult<()> {
    let code = read_code(path)?;
    let m = code.metrics(&g.min_weight_opts());
    let rel = *m.rel_distance().numer() as f64 / *m.rel_distance().denom() as f64;
    let h = g.h.map(|h| h.to_string()).unwrap_or_default();
    g.emit(&format!(
        "n,lambda,h,dim,min_weight,rel_distance,exact\n{},{},{},{},{},{:.6},{}\n",
        code.ctx().n(),
        code.ctx().lambda().index(),
        h,
        m.dim,
        m.min_weight,
        rel,
        m.exact
    ))
}

fn cmd_pair(g: &Global, a: &str, a2: Option<&str>) -> CliResult<()> {
    let ctx = g.ring()?;
    let a = parse_ring_element(&ctx, a)?;
    let code = match a2 {
        Some(s) => QuasiCode::from_pair(&a, &parse_ring_element(&ctx, s)?)?,
        None => QuasiCode::ideal(&a),
    };
    g.emit(&format!("{}\n", CodeArtifact::from_code(&code).to_json()))
}

fn cmd_idempotents(g: &Global) -> CliResult<()> {
    let ctx = g.ring()?;
    let basis = IdempotentBasis::new(&ctx)?;
    let f = ctx.field();
    let h = g.h.unwrap_or(0);
    let pairing = if ctx.star_defined(h)? {
        Some(star_pairing(&basis, h)?)
    } else {
        None
    };
    g.emit_json(&json!({
        "factors": basis
            .factors()
            .iter()
            .map(|p| p.coeffs().iter().map(|&c| elem_json(f, c)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "idempotents": basis.idempotents().iter().map(ring_coeffs_json).collect::<Vec<_>>(),
        "dims": basis.dims(),
        "mu": basis.mu(),
        "star_fixed": pairing.as_ref().map(|s| s.fixed.clone()),
        "star_pairs": pairing.as_ref().map(|s| s.pairs.iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>()),
    }))
}

fn cmd_dset(g: &Global, enumerate: bool, limit: u128) -> CliResult<()> {
    let ctx = g.ring()?;
    let basis = IdempotentBasis::new(&ctx)?;
    let d = build_d_set(&basis, g.h()?)?;
    let components: Vec<Value> = d
        .components()
        .iter()
        .map(|c| {
            let kind = match c {
                ComponentSet::Fixed { .. } => "fixed",
                ComponentSet::Paired { .. } => "paired",
            };
            json!({"kind": kind, "indices": c.indices(), "count": big(c.count())})
        })
        .collect();
    let mut v = json!({
        "n": ctx.n(),
        "h": d.h(),
        "components": components,
        "total_count": big(d.total_count()),
        "mu_hypothesis": d.mu_hypothesis(),
        "sandwich": d.sandwich(),
        "sample": if d.total_count() > 0 {
            ring_coeffs_json(&d.sample(g.seed)?)
        } else {
            Value::Null
        },
    });
    if enumerate {
        let all = d.enumerate(limit)?;
        v["elements"] = Value::Array(all.iter().map(ring_coeffs_json).collect());
    }
    g.emit_json(&v)
}

fn cmd_search(
    g: &Global,
    n_list: &[usize],
    trials: usize,
    delta: &str,
    best_dir: Option<&Path>,
) -> CliResult<()> {
    let f = g.field()?;
    let mut cfg = SearchConfig::new(&f, g.h()?, n_list.to_vec());
    cfg.trials = trials;
    cfg.delta = parse_delta(delta)?;
    cfg.seed = g.seed;
    cfg.budget = g.budget.unwrap_or(DEFAULT_BUDGET);
    let report = selfdual::search(&cfg)?;
    if let Some(dir) = best_dir {
        fs::create_dir_all(dir).map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
        for row in &report.rows {
            let art = CodeArtifact::from_code(&row.best_code).with_metadata(json!({
                "g": ring_element_json(&row.best_g),
                "h": cfg.h,
                "min_weight": row.best_min_weight,
                "exact": row.samples.iter().all(|t| t.exact),
                "self_dual": true,
            }));
            let path = dir.join(format!("best_n{}.json", row.n));
            fs::write(&path, art.to_json() + "\n")
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        }
    }
    g.emit(&report.to_csv())
}

fn cmd_transport(g: &Global, path: &Path) -> CliResult<()> {
    let code = read_code(path)?;
    let h = g.h()?;
    let f = code.field().clone();
    if code.ctx().lambda() != f.one() {
        return Err("transport input must be a cyclic code (lambda = 1)".into());
    }
    let lambda = parse_elem(&f, &need(&g.lambda, "lambda")?)?;
    let target = RingContext::new(&f, code.ctx().n(), lambda)?;
    let map = make_transport(&target, h)?;
    let image = map.transport_code(&code)?;
    let source_self_dual = code.is_galois_self_dual(h)?;
    let self_dual = image.is_galois_self_dual(h)?;
    if code.kind() == CodeKind::TwoQuasi && source_self_dual != self_dual {
        return Err("transport changed the self-duality verdict".into());
    }
    let art = CodeArtifact::from_code(&image).with_metadata(json!({
        "h": h,
        "gamma": elem_json(&f, map.gamma()),
        "s": map.s(),
        "source_self_dual": source_self_dual,
        "self_dual": self_dual,
    }));
    g.emit(&format!("{}\n", art.to_json()))
}

fn run(cli: &Cli) -> CliResult<()> {
    let g = &cli.global;
    match &cli.cmd {
        Command::Check { code } => cmd_check(g, code),
        Command::Dual { code } => cmd_dual(g, code),
        Command::Decompose { code } => cmd_decompose(g, code),
        Command::Metrics { code } => cmd_metrics(g, code),
        Command::Pair { a, a2 } => cmd_pair(g, a, a2.as_deref()),
        Command::Idempotents => cmd_idempotents(g),
        Command::Dset { enumerate, limit } => cmd_dset(g, *enumerate, *limit),
        Command::Search {
            n_list,
            trials,
            delta,
            best_dir,
        } => cmd_search(g, n_list, *trials, delta, best_dir.as_deref()),
        Command::Transport { code } => cmd_transport(g, code),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = e.to_string().replace('\n', " ");
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
