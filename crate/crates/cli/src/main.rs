use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use algpi::abcoh::ab_cohomology_profile;
use algpi::abcoh::ab_long_sequence;
use algpi::gammamod::group_cohomology;
use algpi::io::{self, GammaJson, Input, TResolutionJson};
use algpi::lattice::render_sequence;
use algpi::resolutions::{
    check_pi1_exact, fundamental_sequence, pi1_of_resolution, pi1_via_m_resolution, qiso_certificate,
    t_resolution_from_torus, t_resolution_generic, EmbeddingChoice, MResolution, TResolution,
};
use algpi::rootdata::{fundamental_invariants, standard_group_by_name, RootDatum, CATALOG_NAMES};
use algpi::verify;
use algpi::Error;

#[derive(Parser)]
#[command(name = "algpi", version, about = "Algebraic fundamental groups of split reductive groups")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Route {
    Torus,
    Generic,
    M,
}

#[derive(clap::Args)]
struct GroupArgs {
    /// Catalog name such as `PGL 3` or `SO(8)`, or a root datum JSON file.
    #[arg(required = true, num_args = 1..)]
    group: Vec<String>,
    /// Γ-action on the characters, as JSON.
    #[arg(long)]
    gamma: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Fundamental group, directly or through a resolution.
    Pi1 {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum)]
        resolution: Option<Route>,
    },
    /// π₁, μ(-1), (G^tor)_*, center characters and μ^*.
    Invariants {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Builds a t-resolution or an m-resolution.
    Resolve {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value = "torus")]
        resolution: Route,
    },
    /// Checks exactness of π₁ on a short exact sequence file.
    CheckExact { file: PathBuf },
    /// Quasi-isomorphism certificate between the center and torus complexes.
    Qiso {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value = "torus")]
        resolution: Route,
    },
    /// Abelian cohomology of a group, Γ-cohomology of a module, or the long
    /// sequence of a short exact sequence.
    Cohomology {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value = "torus")]
        resolution: Route,
    },
    /// The catalog of named groups.
    Catalog {
        #[command(subcommand)]
        action: CatalogCommand,
    },
    /// Runs the property suites; exit code 0 iff all pass.
    VerifySuite {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=8))]
        criterion: Option<u8>,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Lists the accepted name patterns.
    List,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. }
            | Error::Axiom(_)
            | Error::UnknownGroup(_)
            | Error::Dimension(_)
            | Error::InvalidGroup(_)
            | Error::InvalidModule(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

type Outcome = Result<(String, u8), Failure>;

fn looks_like_file(words: &[String]) -> Option<&Path> {
    match words {
        [w] if w.ends_with(".json") || Path::new(w).is_file() => Some(Path::new(w)),
        _ => None,
    }
}

fn load_input(args: &GroupArgs) -> Result<Input, Failure> {
    let input = match looks_like_file(&args.group) {
        Some(p) => io::parse_input(p)?,
        None => Input::Datum(standard_group_by_name(&args.group.join(" "))?),
    };
    match (&args.gamma, input) {
        (None, x) => Ok(x),
        (Some(g), Input::Datum(d)) => {
            let action = io::read_file::<GammaJson>(g)?.build(d.rank())?;
            Ok(Input::Datum(d.with_gamma(action)?))
        }
        (Some(_), _) => Err(input_error("--gamma applies to root data only")),
    }
}

fn load_datum(args: &GroupArgs) -> Result<RootDatum, Failure> {
    match load_input(args)? {
        Input::Datum(d) => Ok(d),
        _ => Err(input_error("expected a root datum or a catalog name")),
    }
}

fn t_resolution(d: &RootDatum, route: Route) -> Result<TResolution, Failure> {
    match route {
        Route::Torus => Ok(t_resolution_from_torus(d)?),
        Route::Generic => Ok(t_resolution_generic(d, &EmbeddingChoice::Default)?),
        Route::M => Err(input_error("an m-resolution is not a t-resolution; use torus or generic")),
    }
}

fn emit<T: Serialize>(json: bool, value: &T, text: String) -> String {
    if json {
        io::to_json(value)
    } else {
        text
    }
}

fn pi1(json: bool, args: &GroupArgs, route: Option<Route>) -> Outcome {
    let d = load_datum(args)?;
    let g = match route {
        None => (*fundamental_invariants(&d)?.pi1).clone(),
        Some(Route::M) => pi1_via_m_resolution(&d)?,
        Some(r) => (*pi1_of_resolution(&t_resolution(&d, r)?)?).clone(),
    };
    let s = g.to_string();
    Ok((emit(json, &BTreeMap::from([("pi1", &s)]), s.clone()), 0))
}

#[derive(Serialize)]
struct InvariantsOut {
    pi1: String,
    pi1_module: Option<io::GammaModuleJson>,
    mu_minus_one: String,
    cochar_torus_quotient: String,
    center_chars: String,
    mu_star: String,
    mu_sequence: String,
    semisimple: bool,
    simply_connected: bool,
    adjoint: bool,
}

fn invariants(json: bool, args: &GroupArgs) -> Outcome {
    let d = load_datum(args)?;
    let inv = fundamental_invariants(&d)?;
    let out = InvariantsOut {
        pi1: inv.pi1.to_string(),
        pi1_module: inv.pi1_module.as_ref().map(io::GammaModuleJson::from_module).transpose()?,
        mu_minus_one: inv.mu_minus_one.to_string(),
        cochar_torus_quotient: inv.cochar_torus_quotient.to_string(),
        center_chars: inv.center_chars.to_string(),
        mu_star: inv.mu_star.to_string(),
        mu_sequence: render_sequence(&inv.mu_sequence),
        semisimple: inv.is_semisimple,
        simply_connected: inv.is_simply_connected,
        adjoint: inv.is_adjoint,
    };
    let text = format!(
        "pi1: {}\nmu(-1): {}\n(G^tor)_*: {}\nZ(G)^*: {}\nmu^*: {}\nsequence: {}\nsemisimple: {}\nsimply connected: {}\nadjoint: {}",
        out.pi1,
        out.mu_minus_one,
        out.cochar_torus_quotient,
        out.center_chars,
        out.mu_star,
        out.mu_sequence,
        out.semisimple,
        out.simply_connected,
        out.adjoint
    );
    Ok((emit(json, &out, text), 0))
}

#[derive(Serialize)]
struct MResolutionOut {
    total: io::RootDatumJson,
    char_map: io::Rows,
    kernel_chars: String,
    pi1: String,
}

fn resolve(json: bool, args: &GroupArgs, route: Route) -> Outcome {
    let d = load_datum(args)?;
    if let Route::M = route {
        let m = MResolution::new(&d)?;
        let out = MResolutionOut {
            total: io::RootDatumJson::from_datum(m.total())?,
            char_map: io::rows_of(m.char_map())?,
            kernel_chars: m.kernel_chars().to_string(),
            pi1: pi1_via_m_resolution(&d)?.to_string(),
        };
        let text = format!(
            "m-resolution: total rank {}, kernel characters {}\npi1: {}",
            m.total().rank(),
            out.kernel_chars,
            out.pi1
        );
        return Ok((emit(json, &out, text), 0));
    }
    let r = t_resolution(&d, route)?;
    let fs = fundamental_sequence(&r)?;
    let text = format!(
        "t-resolution: total rank {}, kernel torus rank {}\npi1: {}\nmu^*: {}\nfundamental sequence: {}",
        r.total().rank(),
        r.kernel_rank(),
        pi1_of_resolution(&r)?,
        fs.mu_star,
        render_sequence(&fs.maps)
    );
    Ok((emit(json, &TResolutionJson::from_resolution(&r)?, text), 0))
}

#[derive(Serialize)]
struct ExactOut {
    exact: bool,
    sequence: Option<String>,
    reason: Option<String>,
}

fn check_exact(json: bool, file: &Path) -> Outcome {
    let s = match io::parse_input(file)? {
        Input::Ses(s) => s,
        _ => return Err(input_error(format!("{}: expected a short exact sequence", file.display()))),
    };
    match check_pi1_exact(&s) {
        Ok(seq) => {
            let rendered = render_sequence(&seq.maps);
            let out = ExactOut {
                exact: true,
                sequence: Some(rendered.clone()),
                reason: None,
            };
            Ok((emit(json, &out, format!("exact\n{rendered}")), 0))
        }
        Err(e @ Error::NotExact(_)) => {
            let out = ExactOut {
                exact: false,
                sequence: None,
                reason: Some(e.to_string()),
            };
            Ok((emit(json, &out, format!("not exact\n{e}")), 1))
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Serialize)]
struct QisoOut {
    center: [String; 2],
    torus_pair: [String; 2],
    middle: [String; 2],
}

fn qiso(json: bool, args: &GroupArgs, route: Route) -> Outcome {
    let d = load_datum(args)?;
    let c = qiso_certificate(&t_resolution(&d, route)?)?;
    let h = |x: &algpi::complexes::TwoTermComplex| [x.cohomology(0).to_string(), x.cohomology(1).to_string()];
    let out = QisoOut {
        center: h(&c.center),
        torus_pair: h(&c.torus_pair),
        middle: h(&c.middle),
    };
    let text = format!(
        "Z(G)^* -> Z(G~)^*: H^0 = {}, H^1 = {}\nX(R) -> X(T): H^0 = {}, H^1 = {}\nquasi-isomorphic through Z(H)^* -> Z(G~)^* + X(T): H^0 = {}, H^1 = {}",
        out.center[0], out.center[1], out.torus_pair[0], out.torus_pair[1], out.middle[0], out.middle[1]
    );
    Ok((emit(json, &out, text), 0))
}

fn table_text(title: &str, t: &BTreeMap<i64, String>) -> String {
    let mut s = title.to_string();
    for (i, g) in t {
        s.push_str(&format!("\n  {i}: {g}"));
    }
    s
}

fn cohomology(json: bool, args: &GroupArgs, route: Route) -> Outcome {
    match load_input(args)? {
        Input::Datum(d) => {
            let p = ab_cohomology_profile(&d, &t_resolution(&d, route)?)?;
            let sum = p.summary();
            let text = format!(
                "{}\n{}\nRHom(pi1, Z): {}, {}",
                table_text("H^i_ab:", &sum.ab),
                table_text("dual:", &sum.dual),
                sum.rhom[0],
                sum.rhom[1]
            );
            Ok((emit(json, &sum, text), 0))
        }
        Input::Module(m) => {
            let table = (0..=2)
                .map(|i| Ok((i, group_cohomology(&m, i)?.to_string())))
                .collect::<Result<BTreeMap<i64, String>, Error>>()?;
            Ok((emit(json, &table, table_text("H^i(Gamma, M):", &table)), 0))
        }
        Input::Ses(s) => {
            let seq = render_sequence(&ab_long_sequence(&s)?);
            Ok((emit(json, &BTreeMap::from([("sequence", &seq)]), seq.clone()), 0))
        }
        Input::Resolution(r) => {
            let p = ab_cohomology_profile(r.base(), &r)?;
            let sum = p.summary();
            let text = format!("{}\n{}", table_text("H^i_ab:", &sum.ab), table_text("dual:", &sum.dual));
            Ok((emit(json, &sum, text), 0))
        }
    }
}

fn verify_suite(json: bool, seed: u64, criterion: Option<u8>) -> Outcome {
    let results = match criterion {
        Some(k) => verify::run_criterion(k, seed).into_iter().collect(),
        None => verify::run_all(seed),
    };
    let code = if results.iter().all(|r| r.passed()) { 0 } else { 1 };
    let text = results.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n");
    Ok((emit(json, &results, text), code))
}

fn run(cli: Cli) -> Outcome {
    let json = cli.json;
    match &cli.command {
        Command::Pi1 { group, resolution } => pi1(json, group, *resolution),
        Command::Invariants { group } => invariants(json, group),
        Command::Resolve { group, resolution } => resolve(json, group, *resolution),
        Command::CheckExact { file } => check_exact(json, file),
        Command::Qiso { group, resolution } => qiso(json, group, *resolution),
        Command::Cohomology { group, resolution } => cohomology(json, group, *resolution),
        Command::Catalog {
            action: CatalogCommand::List,
        } => Ok((emit(json, &CATALOG_NAMES, CATALOG_NAMES.join("\n")), 0)),
        Command::VerifySuite { seed, criterion } => verify_suite(json, *seed, *criterion),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout().lock(), "{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
