use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use tnm_core::analysis::{
    are_isomorphic, parameter_solutions, theorem_argument_audit, tight_neighborly_check, uniqueness_reconstruction,
    LemmaContext, LemmaId, Witness,
};
use tnm_core::dualgraph::dual_graph;
use tnm_core::homology::betti_z2;
use tnm_core::walkup::{
    bar_construction, handle_addition, is_stacked_ball, is_stacked_sphere, kuehnel_solid, kuehnel_torus,
    random_stacked_ball, HandleMap,
};
use tnm_core::{fct, Error, Face, SimplicialComplex, Vertex};

#[derive(Parser)]
#[command(name = "tnm", version, about = "Stacked-link triangulations, cyclic solids and their invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated complex as FCT.
    Gen {
        kind: GenKind,
        #[arg(long)]
        d: usize,
        /// Number of facets (stacked-ball only).
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run predicates on a complex and report them as JSON.
    Check {
        input: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        checks: Vec<CheckKind>,
        /// Write the dual graph in DOT format to this path.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Betti numbers over GF(2).
    Betti { input: PathBuf },
    /// Integer solutions of the tight-neighborly equation.
    Params {
        #[arg(long)]
        beta1: u64,
        #[arg(long)]
        dmax: u64,
    },
    /// Check structural statements about a neighborly stacked-ball-link complex.
    Verify {
        input: PathBuf,
        /// Defaults to every known statement.
        #[arg(long, value_delimiter = ',')]
        lemmas: Vec<String>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Re-run the dual-graph counting argument on a filling.
    Audit {
        input: PathBuf,
        #[arg(long)]
        beta1: u64,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Search for an isomorphism between two complexes.
    Iso { a: PathBuf, b: PathBuf },
    /// Closure by all vertex sets whose small subsets are faces.
    Bar {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Boundary complex.
    Boundary {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Remove two facets and identify them along a vertex bijection.
    Handle {
        input: PathBuf,
        #[arg(long)]
        sigma1: String,
        #[arg(long)]
        sigma2: String,
        /// Comma-separated `a:b` pairs.
        #[arg(long)]
        psi: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Recover the isomorphism from the cyclic solid onto the input.
    Reconstruct { input: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    KuehnelSolid,
    KuehnelTorus,
    StackedBall,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Pure,
    Pm,
    Neighborly,
    StackedBall,
    StackedSphere,
    ClassK,
    ClassKbar,
    TightNeighborly,
}

impl CheckKind {
    fn id(self) -> &'static str {
        match self {
            CheckKind::Pure => "pure",
            CheckKind::Pm => "pm",
            CheckKind::Neighborly => "neighborly",
            CheckKind::StackedBall => "stacked-ball",
            CheckKind::StackedSphere => "stacked-sphere",
            CheckKind::ClassK => "class-k",
            CheckKind::ClassKbar => "class-kbar",
            CheckKind::TightNeighborly => "tight-neighborly",
        }
    }
}

#[derive(Serialize)]
struct CheckEntry {
    id: String,
    holds: bool,
    witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<Value>,
}

#[derive(Serialize)]
struct Report {
    instance: String,
    checks: Vec<CheckEntry>,
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = std::panic::catch_unwind(|| run(cli)).unwrap_or_else(|_| Err(Failure::Internal("panic".into())));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Gen { kind, d, m, seed, output } => cmd_gen(kind, d, m, seed, output.as_deref()),
        Command::Check { input, checks, dot } => cmd_check(&input, &checks, dot.as_deref()),
        Command::Betti { input } => cmd_betti(&input),
        Command::Params { beta1, dmax } => cmd_params(beta1, dmax),
        Command::Verify { input, lemmas, dot } => cmd_verify(&input, &lemmas, dot.as_deref()),
        Command::Audit { input, beta1, dot } => cmd_audit(&input, beta1, dot.as_deref()),
        Command::Iso { a, b } => cmd_iso(&a, &b),
        Command::Bar { input, output } => {
            let m = fct::read_path(&input)?;
            emit_fct(&bar_construction(&m), output.as_deref())
        }
        Command::Boundary { input, output } => {
            let m = fct::read_path(&input)?;
            emit_fct(&m.boundary_complex()?, output.as_deref())
        }
        Command::Handle { input, sigma1, sigma2, psi, output } => {
            let x = fct::read_path(&input)?;
            let map = HandleMap::new(parse_face(&sigma1)?, parse_face(&sigma2)?, parse_psi(&psi)?)?;
            emit_fct(&handle_addition(&x, &map)?, output.as_deref())
        }
        Command::Reconstruct { input } => {
            let m = fct::read_path(&input)?;
            let phi = uniqueness_reconstruction(&m)?;
            print_json(&json!({ "instance": instance_name(&input), "phi": phi.pairs() }))?;
            Ok(true)
        }
    }
}

fn instance_name(path: &Path) -> String {
    if path.as_os_str() == "-" {
        "stdin".into()
    } else {
        path.display().to_string()
    }
}

fn print_json(value: &impl Serialize) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_stdout(&text)
}

fn write_stdout(text: &str) -> Result<(), Failure> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn emit_fct(m: &SimplicialComplex, output: Option<&Path>) -> Outcome {
    let text = fct::write(m);
    match output {
        Some(path) => fs::write(path, text)?,
        None => write_stdout(&text)?,
    }
    Ok(true)
}

fn write_dot(m: &SimplicialComplex, dot: Option<&Path>) -> Result<(), Failure> {
    if let Some(path) = dot {
        fs::write(path, dual_graph(m)?.to_dot())?;
    }
    Ok(())
}

fn parse_face(text: &str) -> Result<Face, Failure> {
    let vertices = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<Vertex>().map_err(|e| Failure::Input(format!("bad vertex {t:?}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Face::new(vertices)?)
}

fn parse_psi(text: &str) -> Result<Vec<(Vertex, Vertex)>, Failure> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|pair| {
            let (a, b) = pair
                .split_once(':')
                .ok_or_else(|| Failure::Input(format!("psi entry {pair:?} is not of the form a:b")))?;
            let parse =
                |s: &str| s.trim().parse::<Vertex>().map_err(|e| Failure::Input(format!("bad vertex {s:?}: {e}")));
            Ok((parse(a)?, parse(b)?))
        })
        .collect()
}

fn cmd_gen(kind: GenKind, d: usize, m: Option<usize>, seed: u64, output: Option<&Path>) -> Outcome {
    let complex = match kind {
        GenKind::KuehnelSolid => kuehnel_solid(d)?,
        GenKind::KuehnelTorus => kuehnel_torus(d)?,
        GenKind::StackedBall => {
            let m = m.ok_or_else(|| Failure::Input("stacked-ball needs --m".into()))?;
            random_stacked_ball(d, m, seed)?
        }
    };
    emit_fct(&complex, output)?;
    let f = complex.f_vector();
    let summary = format!("f-vector {:?}, euler characteristic {}", f.counts, f.euler);
    if output.is_some() {
        write_stdout(&format!("{summary}\n"))?;
    } else {
        eprintln!("{summary}");
    }
    Ok(true)
}

fn first_bad_link(m: &SimplicialComplex, good: impl Fn(&SimplicialComplex) -> bool) -> Result<Option<Vertex>, Failure> {
    for &v in m.vertices() {
        if !good(&m.vertex_link(v)?) {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

fn run_check(m: &SimplicialComplex, kind: CheckKind) -> Result<CheckEntry, Failure> {
    let entry =
        |holds: bool, witness: Option<Witness>| CheckEntry { id: kind.id().into(), holds, witness, detail: None };
    let message = |detail: String| Some(Witness::Message { detail });
    Ok(match kind {
        CheckKind::Pure => entry(m.is_pure(), None),
        CheckKind::Pm => entry(m.is_pseudomanifold(), None),
        CheckKind::Neighborly => entry(m.is_neighborly(2), None),
        CheckKind::StackedBall => entry(is_stacked_ball(m), None),
        CheckKind::StackedSphere => match is_stacked_sphere(m) {
            Ok(holds) => entry(holds, None),
            Err(e) => entry(false, message(e.to_string())),
        },
        CheckKind::ClassK | CheckKind::ClassKbar => {
            let bad = if m.is_empty() || m.dim() == 0 {
                Err("needs a complex of positive dimension".to_string())
            } else if kind == CheckKind::ClassK {
                Ok(first_bad_link(m, |l| is_stacked_sphere(l).unwrap_or(false))?)
            } else {
                Ok(first_bad_link(m, is_stacked_ball)?)
            };
            match bad {
                Err(msg) => entry(false, message(msg)),
                Ok(None) => entry(true, None),
                Ok(Some(v)) => {
                    entry(false, Some(Witness::Vertex { vertex: v, detail: "vertex link is not stacked".into() }))
                }
            }
        }
        CheckKind::TightNeighborly => match tight_neighborly_check(m, m.dim()) {
            Ok(report) => {
                let holds = report.is_equality && m.is_neighborly(2);
                CheckEntry { detail: Some(serde_json::to_value(&report)?), ..entry(holds, None) }
            }
            Err(e) => entry(false, message(e.to_string())),
        },
    })
}

fn cmd_check(input: &Path, checks: &[CheckKind], dot: Option<&Path>) -> Outcome {
    let m = fct::read_path(input)?;
    write_dot(&m, dot)?;
    let checks = checks.iter().map(|&k| run_check(&m, k)).collect::<Result<Vec<_>, _>>()?;
    let all = checks.iter().all(|c| c.holds);
    print_json(&Report { instance: instance_name(input), checks })?;
    Ok(all)
}

fn cmd_betti(input: &Path) -> Outcome {
    let m = fct::read_path(input)?;
    let betti = betti_z2(&m);
    let f = m.f_vector();
    print_json(&json!({
        "instance": instance_name(input),
        "f_vector": f.counts,
        "betti": betti.betti,
        "euler": betti.euler(),
    }))?;
    if betti.euler() != f.euler {
        return Err(Failure::Internal("Betti numbers disagree with the Euler characteristic".into()));
    }
    Ok(true)
}

fn cmd_params(beta1: u64, dmax: u64) -> Outcome {
    let solutions = parameter_solutions(beta1, dmax)?;
    print_json(&json!({ "beta1": beta1, "d_max": dmax, "solutions": solutions }))?;
    Ok(true)
}

fn cmd_verify(input: &Path, lemmas: &[String], dot: Option<&Path>) -> Outcome {
    let ids = if lemmas.is_empty() {
        LemmaId::ALL.to_vec()
    } else {
        lemmas.iter().map(|s| s.parse::<LemmaId>()).collect::<Result<Vec<_>, _>>()?
    };
    let m = fct::read_path(input)?;
    write_dot(&m, dot)?;
    let ctx = LemmaContext::new(&m)?;
    let mut checks = Vec::with_capacity(ids.len());
    for id in ids {
        checks.push(match ctx.verify(id) {
            Ok(r) => CheckEntry { id: r.id, holds: r.holds, witness: r.witness, detail: None },
            Err(Error::Hypothesis(msg)) => CheckEntry {
                id: id.as_str().into(),
                holds: false,
                witness: Some(Witness::Message { detail: format!("hypothesis not met: {msg}") }),
                detail: None,
            },
            Err(e) => return Err(e.into()),
        });
    }
    let all = checks.iter().all(|c| c.holds);
    print_json(&Report { instance: instance_name(input), checks })?;
    Ok(all)
}

fn cmd_audit(input: &Path, beta1: u64, dot: Option<&Path>) -> Outcome {
    let m = fct::read_path(input)?;
    write_dot(&m, dot)?;
    let report = theorem_argument_audit(&m, beta1)?;
    print_json(&json!({ "instance": instance_name(input), "audit": report }))?;
    Ok(report.all_hold())
}

fn cmd_iso(a: &Path, b: &Path) -> Outcome {
    let x = fct::read_path(a)?;
    let y = fct::read_path(b)?;
    let bij = are_isomorphic(&x, &y);
    if let Some(bij) = &bij {
        if !bij.maps_onto(&x, &y) {
            return Err(Failure::Internal("isomorphism witness does not map facets onto facets".into()));
        }
    }
    print_json(&json!({
        "a": instance_name(a),
        "b": instance_name(b),
        "isomorphic": bij.is_some(),
        "bijection": bij.as_ref().map(|b| b.pairs()),
    }))?;
    Ok(bij.is_some())
}
