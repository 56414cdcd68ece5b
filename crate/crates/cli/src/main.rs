use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use urep::algkit::decompose_power;
use urep::coeff::{chebyshev_minpoly, Ring};
use urep::delta::{deligne_split_check, trace_x, verify_suite_capped, Family};
use urep::linalg::{determinant, rank};
use urep::pcat::json::{from_doc, parse_doc, render_doc, ring_from_fields, to_doc};
use urep::pcat::{is_negligible, Morphism};
use urep::tl::{self, TlMorphism};
use urep::young::{self, YoungDiagram};
use urep::Error;

/// Exact computations in the partition category, its idempotents and
/// blocks, and the Temperley-Lieb category.
#[derive(Parser, Debug)]
#[command(name = "urep", version)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel sections.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// g ∘ f; without -g the canonical form of f.
    Compose(Pair),
    /// f ⊗ g; without -g the canonical form of f.
    Tensor(Pair),
    /// The dual (upside-down) morphism.
    Dual(Single),
    /// The categorical trace of an endomorphism.
    Trace(Single),
    /// Categorical dimension of Δ_n, or of [pt]^λ with --lambda.
    Dim(DimArgs),
    /// Rank (and small determinants) of the trace pairing on End([A_n]).
    Gram(GramArgs),
    /// Whether a morphism is negligible.
    Negligible(Single),
    /// Check a family of identities; exit 1 if any fails.
    Verify(VerifyArgs),
    /// The infinite blocks at t = d among diagrams up to a size bound.
    Blocks(BlocksArgs),
    /// The block of L(λ) at t = d.
    BlockOf(BlockOfArgs),
    /// The Young symmetrizer of λ.
    Symmetrizer(SymmetrizerArgs),
    /// Split [A_n] at t = d into indecomposables and label them.
    Decompose(DecomposeArgs),
    /// Temperley-Lieb data for n strands.
    Tl(TlArgs),
}

#[derive(Args, Debug)]
struct Pair {
    #[arg(short = 'f', value_name = "PATH")]
    f: PathBuf,
    #[arg(short = 'g', value_name = "PATH")]
    g: Option<PathBuf>,
    #[arg(short = 'o', value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Single {
    #[arg(short = 'f', value_name = "PATH")]
    f: PathBuf,
    #[arg(short = 'o', value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct RingArgs {
    /// Q, Qt, Qratfun or Qdelta.
    #[arg(long, value_name = "RING")]
    ring: Option<String>,
    /// Value of the parameter for the ring Q.
    #[arg(long, value_name = "COEFF", allow_hyphen_values = true)]
    t: Option<String>,
}

#[derive(Args, Debug)]
struct DimArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_name = "a,b,c")]
    lambda: Option<String>,
    #[command(flatten)]
    ring: RingArgs,
}

#[derive(Args, Debug)]
struct GramArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = urep::pcat::DEFAULT_DENSE_CAP)]
    bound: usize,
    #[command(flatten)]
    ring: RingArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// A family name, `deltaj:J`, or `deligne` (with --d).
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    /// Largest n allowed; defaults to the family's own limit.
    #[arg(long)]
    bound: Option<usize>,
}

#[derive(Args, Debug)]
struct BlocksArgs {
    #[arg(long, allow_hyphen_values = true)]
    d: i64,
    #[arg(long)]
    bound: Option<usize>,
}

#[derive(Args, Debug)]
struct BlockOfArgs {
    #[arg(long, value_name = "a,b,c")]
    lambda: String,
    #[arg(long)]
    d: i64,
    #[arg(long)]
    bound: Option<usize>,
}

#[derive(Args, Debug)]
struct SymmetrizerArgs {
    #[arg(long, value_name = "a,b,c")]
    lambda: String,
    /// Write the idempotent on [A_n] here.
    #[arg(short = 'o', value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(flatten)]
    ring: RingArgs,
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: i64,
}

#[derive(Args, Debug)]
struct TlArgs {
    #[arg(long)]
    n: usize,
    /// Work at the root of unity with this l_q.
    #[arg(long)]
    l: Option<usize>,
    /// Write the Jones-Wenzl projector here.
    #[arg(short = 'o', value_name = "PATH")]
    out: Option<PathBuf>,
    #[command(flatten)]
    ring: RingArgs,
}

enum Failure {
    Usage(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_cap() {
            Failure::Cap(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

type Outcome = Result<(String, bool), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn ring_of(args: &RingArgs, l: Option<usize>, default: Ring) -> Result<Ring, Failure> {
    let name = args.ring.as_deref().or(match (l, &args.t) {
        (Some(_), _) => Some("Qdelta"),
        (None, Some(_)) => Some("Q"),
        _ => None,
    });
    let Some(name) = name else {
        return Ok(default);
    };
    if name == "Qdelta" {
        let l = l.ok_or_else(|| usage("--ring Qdelta needs --l"))?;
        if args.t.is_some() {
            return Err(usage("--t does not apply to --ring Qdelta"));
        }
        let m = chebyshev_minpoly(l).map_err(|e| usage(format!("--l: {e}")))?;
        return Ring::number_field(m).map_err(|e| usage(e.to_string()));
    }
    if l.is_some() {
        return Err(usage("--l only applies to --ring Qdelta"));
    }
    ring_from_fields(name, args.t.as_deref(), None).map_err(|e| usage(format!("--ring/--t: {e}")))
}

fn lambda_of(text: &str) -> Result<YoungDiagram, Failure> {
    text.parse().map_err(|e: Error| usage(format!("--lambda: {e}")))
}

/// A morphism read from disk, remembering whether it was Temperley-Lieb.
struct Input {
    m: Morphism,
    tl: bool,
}

fn load(path: &Path) -> Result<Input, Failure> {
    let text = read(path)?;
    let wrap = |e: Error| usage(format!("{}: {e}", path.display()));
    let doc = parse_doc(&text).map_err(wrap)?;
    let tl = match doc.kind.as_deref() {
        None | Some("partition") => false,
        Some("tl") => true,
        Some(other) => return Err(usage(format!("{}: unknown kind '{other}' at /kind", path.display()))),
    };
    let m = from_doc(&doc).map_err(wrap)?;
    if tl {
        TlMorphism::new(m.clone()).map_err(wrap)?;
    }
    Ok(Input { m, tl })
}

fn emit_morphism(m: &Morphism, tl: bool, out: Option<&Path>, as_json: bool) -> Outcome {
    let text = render_doc(&to_doc(m, tl.then_some("tl")));
    match out {
        Some(path) => {
            write(path, &text)?;
            if as_json {
                Ok((text, true))
            } else {
                Ok((format!("wrote {}\n", path.display()), true))
            }
        }
        None => Ok((text, true)),
    }
}

fn compose(args: &Pair, as_json: bool, tensor: bool) -> Outcome {
    let f = load(&args.f)?;
    let (m, tl) = match &args.g {
        None => (f.m, f.tl),
        Some(g) => {
            let g = load(g)?;
            if f.tl != g.tl {
                return Err(usage("cannot combine partition and Temperley-Lieb morphisms"));
            }
            let m = if tensor { f.m.tensor(&g.m) } else { g.m.compose(&f.m) };
            (m?, f.tl)
        }
    };
    emit_morphism(&m, tl, args.out.as_deref(), as_json)
}

fn dual(args: &Single, as_json: bool) -> Outcome {
    let f = load(&args.f)?;
    emit_morphism(&f.m.dual(), f.tl, args.out.as_deref(), as_json)
}

fn trace(args: &Single, as_json: bool) -> Outcome {
    let f = load(&args.f)?;
    let t = f.m.trace()?.render();
    Ok(if as_json {
        (format!("{}\n", json!({ "trace": t })), true)
    } else {
        (format!("{t}\n"), true)
    })
}

fn dim(args: &DimArgs, as_json: bool) -> Outcome {
    let ring = ring_of(&args.ring, None, Ring::poly())?;
    let (what, value) = match (&args.lambda, args.n) {
        (Some(l), None) => {
            let l = lambda_of(l)?;
            let y = young::pt_power_idempotent(&ring, &l)?;
            (json!({ "lambda": l }), y.trace()?)
        }
        (None, Some(n)) => (json!({ "n": n }), trace_x(&ring, n)?),
        _ => return Err(usage("dim needs exactly one of --n and --lambda")),
    };
    let value = value.render();
    Ok(if as_json {
        let mut v = what;
        v["dim"] = Value::String(value);
        (format!("{v}\n"), true)
    } else {
        (format!("{value}\n"), true)
    })
}

fn gram(args: &GramArgs, as_json: bool) -> Outcome {
    let ring = ring_of(&args.ring, None, Ring::poly())?;
    if 2 * args.n > args.bound {
        return Err(Failure::Cap(Error::cap("2n", 2 * args.n, args.bound).to_string()));
    }
    let g = urep::pcat::gram_matrix_capped(&ring, args.n, args.n, args.bound)?;
    let size = g.len();
    let r = rank(&ring, &g)?;
    let det = if size <= 15 { Some(determinant(&ring, &g)?.render()) } else { None };
    Ok(if as_json {
        (format!("{}\n", json!({ "n": args.n, "size": size, "rank": r, "det": det })), true)
    } else {
        let mut s = format!("size {size}\nrank {r}\n");
        if let Some(d) = det {
            s.push_str(&format!("det {d}\n"));
        }
        (s, true)
    })
}

fn negligible(args: &Single, as_json: bool) -> Outcome {
    let f = load(&args.f)?;
    let neg = if f.tl {
        tl::tl_negligible(&TlMorphism::new(f.m).expect("validated on load"))?
    } else {
        is_negligible(&f.m)?
    };
    Ok(if as_json {
        (format!("{}\n", json!({ "negligible": neg })), true)
    } else {
        (format!("{}\n", if neg { "negligible" } else { "not negligible" }), true)
    })
}

fn verify(args: &VerifyArgs, as_json: bool) -> Outcome {
    let report = if args.family == "deligne" {
        let d = args.d.ok_or_else(|| usage("--family deligne needs --d"))?;
        deligne_split_check(d)?
    } else {
        let family: Family = args.family.parse()?;
        let n = args.n.ok_or_else(|| usage("verify needs --n"))?;
        let cap = args.bound.unwrap_or(family.default_cap());
        verify_suite_capped(&Ring::poly(), family, n, cap)?
    };
    let text = if as_json {
        format!("{}\n", report.to_json())
    } else {
        report.to_text()
    };
    Ok((text, report.overall))
}

fn blocks(args: &BlocksArgs, as_json: bool) -> Outcome {
    if args.d < 0 {
        return Err(usage("--d must be nonnegative"));
    }
    let bound = args.bound.unwrap_or(args.d as usize + 4);
    let mut seen = std::collections::BTreeMap::new();
    for l in young::diagrams_up_to(bound) {
        let b = young::block_of(&l, args.d, bound)?;
        if b.is_infinite() {
            seen.entry(b.key.clone()).or_insert(b.members);
        }
    }
    let mut list: Vec<Vec<YoungDiagram>> = seen.into_values().collect();
    list.sort_by(|a, b| (a[0].size(), &a[0]).cmp(&(b[0].size(), &b[0])));
    Ok(if as_json {
        let v = json!({
            "d": args.d,
            "bound": bound,
            "infinite_blocks": list.len(),
            "blocks": list.iter().map(|m| json!({ "type": "infinite", "members": m })).collect::<Vec<_>>(),
        });
        (format!("{v}\n"), true)
    } else {
        let mut s = format!("{} infinite blocks at d = {} (sizes <= {bound})\n", list.len(), args.d);
        for m in &list {
            let names: Vec<String> = m.iter().map(YoungDiagram::to_string).collect();
            s.push_str(&format!("  {}\n", names.join(" < ")));
        }
        (s, true)
    })
}

fn block_of(args: &BlockOfArgs, as_json: bool) -> Outcome {
    let l = lambda_of(&args.lambda)?;
    let bound = args.bound.unwrap_or(l.size() + args.d.max(0) as usize + 4);
    let b = young::block_of(&l, args.d, bound)?;
    Ok(if as_json {
        (format!("{}\n", b.to_json(&l)), true)
    } else {
        let names: Vec<String> = b.members.iter().map(YoungDiagram::to_string).collect();
        let kind = if b.is_infinite() { "infinite" } else { "trivial" };
        (
            format!("{kind} block\nmembers {}\nindex {}\n", names.join(" "), b.index_of_query),
            true,
        )
    })
}

fn symmetrizer(args: &SymmetrizerArgs, as_json: bool) -> Outcome {
    let l = lambda_of(&args.lambda)?;
    let y = young::young_symmetrizer(&l)?;
    if let Some(path) = &args.out {
        let ring = ring_of(&args.ring, None, Ring::poly())?;
        let m = young::pt_power_idempotent(&ring, &l)?;
        write(path, &render_doc(&to_doc(&m, None)))?;
    }
    Ok(if as_json {
        let terms: Vec<Value> = y
            .terms()
            .map(|(p, c)| json!({ "perm": p, "coeff": c.to_string() }))
            .collect();
        (format!("{}\n", json!({ "lambda": l, "terms": terms })), true)
    } else {
        let mut s = String::new();
        for (p, c) in y.terms() {
            let p: Vec<String> = p.iter().map(usize::to_string).collect();
            s.push_str(&format!("{c} [{}]\n", p.join(",")));
        }
        (s, true)
    })
}

fn decompose(args: &DecomposeArgs, as_json: bool) -> Outcome {
    let parts = decompose_power(args.d, args.n)?;
    Ok(if as_json {
        let v: Vec<Value> = parts
            .iter()
            .map(|(_, id)| {
                json!({
                    "lambda": id.lambda,
                    "level": id.level,
                    "dim": id.dim.render(),
                    "negligible": young::negligible_class(&id.lambda, args.d).unwrap_or(false),
                })
            })
            .collect();
        (format!("{}\n", json!({ "n": args.n, "d": args.d, "summands": v })), true)
    } else {
        let mut s = format!("{} indecomposable summands\n", parts.len());
        for (_, id) in &parts {
            s.push_str(&format!("L{} dim {}\n", id.lambda, id.dim.render()));
        }
        (s, true)
    })
}

fn tl_info(args: &TlArgs, as_json: bool) -> Outcome {
    let ring = ring_of(&args.ring, args.l, Ring::ratfun())?;
    if let Some(l) = args.l {
        if tl::l_q(&ring) != Some(l) {
            return Err(usage(format!("the ring does not have l_q = {l}")));
        }
    }
    let n = args.n;
    let basis = tl::tl_basis(n, n)?.len();
    let lq = tl::l_q(&ring);
    let qn1 = tl::quantum_int(&ring, n + 1).render();
    let projector = match tl::jw(&ring, n) {
        Ok(p) => Some(p),
        Err(Error::ProjectorUndefined(_)) => None,
        Err(e) => return Err(e.into()),
    };
    if let (Some(path), Some(p)) = (&args.out, &projector) {
        write(path, &tl::write_tl(p))?;
    } else if args.out.is_some() {
        return Err(usage(format!("jw({n}) is undefined in this ring")));
    }
    let trace = projector.as_ref().map(|p| p.trace()).transpose()?.map(|t| t.render());
    let negligible = tl::jw_negligible(&ring, n);
    let block = tl::tl_block(n, lq.filter(|&l| l >= 2))?;
    let block = match block {
        tl::TlBlock::Simple(i) => format!("simple:{i}"),
        tl::TlBlock::Linked(k) => format!("linked:{k}"),
    };
    Ok(if as_json {
        let v = json!({
            "n": n,
            "hom_dim": basis,
            "l_q": lq,
            "quantum_int_next": qn1,
            "jw_defined": projector.is_some(),
            "jw_trace": trace,
            "jw_negligible": negligible,
            "block": block,
        });
        (format!("{v}\n"), true)
    } else {
        let mut s = format!("dim End = {basis}\n");
        s.push_str(&format!("l_q = {}\n", lq.map_or("none".into(), |l| l.to_string())));
        s.push_str(&format!("[{}] = {qn1}\n", n + 1));
        match trace {
            Some(t) => s.push_str(&format!("trace jw({n}) = {t}\n")),
            None => s.push_str(&format!("jw({n}) undefined\n")),
        }
        s.push_str(&format!("negligible: {negligible}\nblock {block}\n"));
        (s, true)
    })
}

fn run(cli: &Cli) -> Outcome {
    let j = cli.json;
    match &cli.verb {
        Verb::Compose(a) => compose(a, j, false),
        Verb::Tensor(a) => compose(a, j, true),
        Verb::Dual(a) => dual(a, j),
        Verb::Trace(a) => trace(a, j),
        Verb::Dim(a) => dim(a, j),
        Verb::Gram(a) => gram(a, j),
        Verb::Negligible(a) => negligible(a, j),
        Verb::Verify(a) => verify(a, j),
        Verb::Blocks(a) => blocks(a, j),
        Verb::BlockOf(a) => block_of(a, j),
        Verb::Symmetrizer(a) => symmetrizer(a, j),
        Verb::Decompose(a) => decompose(a, j),
        Verb::Tl(a) => tl_info(a, j),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: --threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok((text, ok)) => {
            print!("{text}");
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
