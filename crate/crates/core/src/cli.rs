//! Command-line front end. `run` returns the process exit code:
//! 0 on success, 1 when a verification fails, 2 on usage errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::arc_algebra::ArcAlgebra;
use crate::combinatorics::{cup_diagram, defect, enumerate_partitions, pkl, weight_of, Ctx, Partition};
use crate::dyck::{self, DyckTiling, StepKind};
use crate::presentation::{Presentation, Report};
use crate::rep_theory::{self, CellVariant};
use crate::Error;

#[derive(Parser, Debug)]
#[command(name = "arcalg", version, about = "Exact computations in Khovanov arc algebras")]
pub struct Cli {
    #[arg(long, global = true, default_value_t = 2)]
    pub m: usize,
    #[arg(long, global = true, default_value_t = 2)]
    pub n: usize,
    /// Characteristic of the ground field (0 for the rationals).
    #[arg(long, global = true, default_value_t = 0)]
    pub p: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write results to a file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
    Tikz,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Listing {
    Partitions,
    Regular,
    /// Diagram basis of H.
    Basis,
    /// Diagram basis of K.
    BasisK,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Relations,
    Iso,
    Lemmas,
    All,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List partitions, regular partitions or diagram bases.
    Enumerate {
        #[arg(value_enum, default_value_t = Listing::Partitions)]
        what: Listing,
    },
    /// Weight and cup diagram of a partition.
    Cupdiagram { lambda: String },
    /// The polynomial q^deg(μ̲λ), or 0.
    Pkl { lambda: String, mu: String },
    /// Dyck tiling of μ∖λ with tiling heights.
    Tiling { lambda: String, mu: String },
    /// Regularisation of a partition.
    Reg { alpha: String },
    /// Canonical add/split sequence from α to μ.
    Plan { alpha: String, mu: String },
    /// Surgery product of two diagrams written λ|μ|ν.
    Multiply { x: String, y: String },
    /// Ext-quiver of H over the field of characteristic p.
    Extquiver,
    /// Standard (or Specht) module with its Alperin diagram.
    Cellmod {
        lambda: String,
        #[arg(long)]
        specht: bool,
    },
    /// Verify the presentation.
    Verify {
        #[arg(value_enum)]
        what: Check,
    },
    /// Dimensions of H and K.
    Dims,
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let s = e.render().to_string();
            let _ = if code == 0 { out.write_all(s.as_bytes()) } else { err.write_all(s.as_bytes()) };
            return code;
        }
    };
    init_threads();
    match execute(&cli, err) {
        Ok((text, ok)) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &text),
                None => out.write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
            if ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn init_threads() {
    if let Some(k) = std::env::var("ARCALG_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // fails harmlessly if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build_global();
    }
}

type Output = Result<(String, bool), Error>;

fn unsupported(cmd: &str, f: Format) -> Error {
    Error::Precondition(format!("{cmd} does not support --format {f:?}").to_lowercase())
}

fn json_text(v: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("serialisable");
    s.push('\n');
    s
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Output {
    let ctx = Ctx::new(cli.m, cli.n)?;
    let parse = |s: &str| -> Result<Partition, Error> {
        let p: Partition = s.parse()?;
        p.check(ctx)?;
        Ok(p)
    };
    let f = cli.format;
    match &cli.command {
        Command::Enumerate { what } => enumerate(ctx, *what, f),
        Command::Cupdiagram { lambda } => cupdiagram(ctx, &parse(lambda)?, f),
        Command::Pkl { lambda, mu } => {
            let q = pkl(ctx, &parse(lambda)?, &parse(mu)?);
            match f {
                Format::Text => Ok((format!("{q}\n"), true)),
                Format::Json => Ok((json_text(json!({ "lambda": lambda, "mu": mu, "pkl": q.0 })), true)),
                _ => Err(unsupported("pkl", f)),
            }
        }
        Command::Tiling { lambda, mu } => {
            let (l, m) = (parse(lambda)?, parse(mu)?);
            let t = dyck::dyck_tiling(ctx, &l, &m).ok_or_else(|| Error::NotDyckPair(l.to_string(), m.to_string()))?;
            match f {
                Format::Text => {
                    let mut s = format!("degree {}\n", t.degree());
                    for p in &t.paths {
                        writeln!(s, "{} cup ({},{}) height {}", p.path, p.cup.0, p.cup.1, p.height).unwrap();
                    }
                    Ok((s, true))
                }
                Format::Json => Ok((json_text(serde_json::to_value(&t).expect("serialisable")), true)),
                Format::Tikz => Ok((tiling_tikz(ctx, &t), true)),
                Format::Dot => Err(unsupported("tiling", f)),
            }
        }
        Command::Reg { alpha } => {
            let a = parse(alpha)?;
            let (r, paths) = dyck::regularise(ctx, &a)?;
            match f {
                Format::Text => {
                    let ps: Vec<String> = paths.iter().map(|p| p.to_string()).collect();
                    Ok((format!("reg = {r}\ndefect = {}\npaths = {}\n", defect(ctx, &a), ps.join(" ")), true))
                }
                Format::Json => Ok((
                    json_text(json!({ "alpha": a.to_string(), "reg": r.to_string(), "defect": defect(ctx, &a), "paths": paths })),
                    true,
                )),
                _ => Err(unsupported("reg", f)),
            }
        }
        Command::Plan { alpha, mu } => {
            let (a, m) = (parse(alpha)?, parse(mu)?);
            let plan = dyck::canonical_add_split(ctx, &a, &m)?;
            match f {
                Format::Text => {
                    let mut s = String::new();
                    for st in &plan.steps {
                        let kind = match st.kind {
                            StepKind::Regularise => "add (regularise)",
                            StepKind::Split => "remove (split)",
                            StepKind::Add => "add",
                        };
                        let to = crate::combinatorics::partition_of(ctx, &st.to)?;
                        writeln!(s, "{kind} {} at height {} -> {to}", st.path, st.height).unwrap();
                    }
                    Ok((s, true))
                }
                Format::Json => Ok((json_text(serde_json::to_value(&plan).expect("serialisable")), true)),
                _ => Err(unsupported("plan", f)),
            }
        }
        Command::Multiply { x, y } => {
            let alg = ArcAlgebra::new(ctx);
            let (a, b) = (alg.parse_diagram(x)?, alg.parse_diagram(y)?);
            let z = alg.multiply(&a, &b);
            match f {
                Format::Text => Ok((format!("{}\n", alg.show_element(&z)), true)),
                Format::Json => {
                    let terms: Vec<_> =
                        z.terms().map(|(d, c)| json!({ "diagram": alg.show(d).to_string(), "coefficient": c })).collect();
                    Ok((json_text(json!({ "x": x, "y": y, "terms": terms })), true))
                }
                _ => Err(unsupported("multiply", f)),
            }
        }
        Command::Extquiver => {
            let alg = ArcAlgebra::new(ctx);
            let q = rep_theory::ext_quiver(&alg, cli.p)?;
            let expected = rep_theory::expected_quiver(&alg, cli.p)?;
            let ok = q == expected;
            if !ok {
                let _ = writeln!(err, "warning: Ext-quiver differs from the predicted quiver");
            }
            match f {
                Format::Dot => Ok((q.to_dot(&alg), ok)),
                Format::Json => Ok((json_text(q.to_json(&alg)), ok)),
                Format::Text => {
                    let mut s = format!("vertices {}\n", q.vertices.len());
                    for (&(a, b), &k) in &q.edges {
                        writeln!(s, "{} -> {} x{k}", alg.cat.partitions[a], alg.cat.partitions[b]).unwrap();
                    }
                    Ok((s, ok))
                }
                Format::Tikz => Err(unsupported("extquiver", f)),
            }
        }
        Command::Cellmod { lambda, specht } => {
            let alg = ArcAlgebra::new(ctx);
            let l = alg.index(&parse(lambda)?)?;
            let variant = if *specht { CellVariant::Specht } else { CellVariant::Standard };
            let m = rep_theory::cell_module(&alg, l, variant);
            let edges = rep_theory::alperin_edges(&alg, l, variant);
            let name = |i: usize| alg.cat.partitions[i].to_string();
            match f {
                Format::Text => {
                    let mut s = format!("graded dimension {}\n", m.graded_dim());
                    for (nu, d) in m.basis.iter().zip(&m.degrees) {
                        writeln!(s, "{} degree {d}", name(*nu)).unwrap();
                    }
                    for (a, b) in &edges {
                        writeln!(s, "{} -> {}", name(*a), name(*b)).unwrap();
                    }
                    Ok((s, true))
                }
                Format::Json => {
                    let basis: Vec<_> =
                        m.basis.iter().zip(&m.degrees).map(|(nu, d)| json!({ "nu": name(*nu), "degree": d })).collect();
                    let e: Vec<_> = edges.iter().map(|(a, b)| [name(*a), name(*b)]).collect();
                    Ok((json_text(json!({ "lambda": name(l), "variant": variant, "basis": basis, "edges": e })), true))
                }
                Format::Dot => {
                    let mut s = "digraph alperin {\n  rankdir=TB;\n".to_string();
                    for (nu, d) in m.basis.iter().zip(&m.degrees) {
                        writeln!(s, "  \"{}\" [label=\"{} ({d})\"];", name(*nu), name(*nu)).unwrap();
                    }
                    for (a, b) in &edges {
                        writeln!(s, "  \"{}\" -> \"{}\";", name(*a), name(*b)).unwrap();
                    }
                    s.push_str("}\n");
                    Ok((s, true))
                }
                Format::Tikz => Err(unsupported("cellmod", f)),
            }
        }
        Command::Verify { what } => verify(ctx, *what, f, err),
        Command::Dims => {
            let alg = ArcAlgebra::new(ctx);
            let (h, k) = (alg.dim_h(), alg.dim_k());
            match f {
                Format::Text => Ok((format!("dim H = {h}\ndim K = {k}\n"), true)),
                Format::Json => Ok((json_text(json!({ "ctx": ctx, "dim_H": h, "dim_K": k })), true)),
                _ => Err(unsupported("dims", f)),
            }
        }
    }
}

fn enumerate(ctx: Ctx, what: Listing, f: Format) -> Output {
    let lines: Vec<String> = match what {
        Listing::Partitions => enumerate_partitions(ctx).iter().map(|p| p.to_string()).collect(),
        Listing::Regular => enumerate_partitions(ctx).into_iter().filter(|p| defect(ctx, p) == 0).map(|p| p.to_string()).collect(),
        Listing::Basis | Listing::BasisK => {
            let alg = ArcAlgebra::new(ctx);
            let b = if what == Listing::Basis { alg.basis_h() } else { alg.basis_k() };
            b.iter().map(|d| alg.show(d).to_string()).collect()
        }
    };
    match f {
        Format::Text => Ok((lines.iter().map(|l| format!("{l}\n")).collect(), true)),
        Format::Json => Ok((json_text(json!(lines)), true)),
        _ => Err(unsupported("enumerate", f)),
    }
}

fn cupdiagram(ctx: Ctx, lambda: &Partition, f: Format) -> Output {
    let w = weight_of(ctx, lambda);
    let cd = cup_diagram(&w);
    match f {
        Format::Text => {
            let cups: Vec<String> = cd.cups.iter().map(|(p, q)| format!("({p},{q})")).collect();
            Ok((
                format!(
                    "weight {w}\ncups {}\nsw rays {:?}\nse rays {:?}\ndefect {}\n",
                    cups.join(" "),
                    cd.sw_rays,
                    cd.se_rays,
                    defect(ctx, lambda)
                ),
                true,
            ))
        }
        Format::Json => Ok((
            json_text(json!({ "partition": lambda.to_string(), "weight": w.to_string(), "cup_diagram": cd, "defect": defect(ctx, lambda) })),
            true,
        )),
        Format::Tikz => {
            let mut s = String::from("\\begin{tikzpicture}[scale=0.6]\n");
            for j in 1..=w.len {
                let lab = if w.is_up(j) { "$\\wedge$" } else { "$\\vee$" };
                writeln!(s, "  \\node at ({j},0) {{{lab}}};").unwrap();
            }
            for (p, q) in &cd.cups {
                let r = (q - p) as f64 / 2.0;
                writeln!(s, "  \\draw ({p},-0.3) arc (180:360:{r} and {});", r.min(2.0) * 0.8).unwrap();
            }
            for j in &cd.sw_rays {
                writeln!(s, "  \\draw ({j},-0.3) -- ++(-0.8,-1.5);").unwrap();
            }
            for j in &cd.se_rays {
                writeln!(s, "  \\draw ({j},-0.3) -- ++(0.8,-1.5);").unwrap();
            }
            s.push_str("\\end{tikzpicture}\n");
            Ok((s, true))
        }
        Format::Dot => Err(unsupported("cupdiagram", f)),
    }
}

/// Russian-convention picture: cell `(r,c)` sits at `x = c - r`, `y = r + c`.
fn tiling_tikz(ctx: Ctx, t: &DyckTiling) -> String {
    let mut s = String::from("\\begin{tikzpicture}[scale=0.4]\n");
    let cell = |s: &mut String, (r, c): (usize, usize), style: &str| {
        let (x, y) = (c as i64 - r as i64, (r + c) as i64);
        writeln!(s, "  \\draw[{style}] ({x},{}) -- ({},{y}) -- ({x},{}) -- ({},{y}) -- cycle;", y - 1, x + 1, y + 1, x - 1)
            .unwrap();
    };
    for r in 1..=ctx.n {
        for c in 1..=ctx.m {
            cell(&mut s, (r, c), "gray!30");
        }
    }
    for &(r, c) in &t.base.cells() {
        cell(&mut s, (r, c), "fill=gray!20");
    }
    let colours = ["red", "blue", "green!60!black", "orange", "violet", "cyan", "brown", "magenta"];
    let extra = t.top.skew_cells(&t.base);
    for (i, p) in t.paths.iter().enumerate() {
        let col = colours[i % colours.len()];
        // the tiles of a path are the skew cells with its contents not already used
        for &(r, c) in extra.iter().filter(|&&(r, c)| p.path.contains_content(r as i64 - c as i64)) {
            let h = (r + c) as i64 - 1 - ctx.m as i64;
            if h >= p.height {
                cell(&mut s, (r, c), &format!("fill={col}!40"));
            }
        }
        writeln!(s, "  % {} height {}", p.path, p.height).unwrap();
    }
    s.push_str("\\end{tikzpicture}\n");
    s
}

fn report_json(name: &str, r: &Report) -> serde_json::Value {
    json!({ "check": name, "total": r.total, "skipped": r.skipped, "counts": r.counts, "failures": r.failed })
}

fn verify(ctx: Ctx, what: Check, f: Format, err: &mut dyn Write) -> Output {
    if !matches!(f, Format::Text | Format::Json) {
        return Err(unsupported("verify", f));
    }
    let pres = Presentation::new(ctx);
    let mut ok = true;
    let mut text = String::new();
    let mut js = Vec::new();
    if matches!(what, Check::Relations | Check::All) {
        let _ = writeln!(err, "checking relations in {ctx}");
        let r = pres.verify_relations();
        ok &= r.ok();
        writeln!(text, "relations: {} instances, {} failures", r.total, r.failed.len()).unwrap();
        for x in &r.failed {
            writeln!(text, "  FAIL {x}").unwrap();
        }
        js.push(report_json("relations", &r));
    }
    if matches!(what, Check::Lemmas | Check::All) {
        let _ = writeln!(err, "checking lemma identities in {ctx}");
        let r = pres.verify_lemma_identities();
        ok &= r.ok();
        writeln!(text, "lemmas: {} instances ({} skipped), {} failures", r.total, r.skipped, r.failed.len()).unwrap();
        for x in &r.failed {
            writeln!(text, "  FAIL {x}").unwrap();
        }
        js.push(report_json("lemmas", &r));
    }
    if matches!(what, Check::Iso | Check::All) {
        let _ = writeln!(err, "checking the spanning set in {ctx}");
        let c = pres.verify_isomorphism()?;
        ok &= c.unimodular();
        writeln!(text, "isomorphism: dim H = {}, unimodular = {}", c.dim_h, c.unimodular()).unwrap();
        for x in &c.failures {
            writeln!(text, "  FAIL {x}").unwrap();
        }
        js.push(serde_json::to_value(&c).expect("serialisable"));
    }
    match f {
        Format::Json => Ok((json_text(json!(js)), ok)),
        _ => Ok((text, ok)),
    }
}
