//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 input error, 3 internal
//! consistency failure.

use std::fs;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::enumerate::{census_report, enumerate_cogs, CensusInvariant};
use crate::error::{CogError, Result};
use crate::model::{
    cog_to_gec, gec_to_cog, Cog, Gec, GeneralisedGec, PointedGec, SignedRotationSystem,
};
use crate::poly::{MultiPoly, Var};
use crate::saturation::{saturation_cog, saturation_dx, saturation_recursive, saturation_statesum};
use crate::selfcheck;
use crate::surface::{euler_genus, genus_range, is_orientable, trace_boundaries, GenusKind};
use crate::transition::{
    k_valuation_sum, topological_transition, transition_recursive, transition_statesum,
};
use crate::yamada::{draw, invariant_rm1, invariant_y, yamada_r};

#[derive(Debug, Parser)]
#[command(
    name = "cogpoly",
    version,
    about = "Polynomial invariants of cyclically ordered graphs"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SatMethod {
    Recursive,
    Statesum,
    Cog,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TransMethod {
    Recursive,
    Statesum,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum YamadaValue {
    #[value(name = "Y")]
    Y,
    #[value(name = "Rm1")]
    Rm1,
    #[value(name = "R")]
    R,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Target {
    Gec,
    Cog,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Saturation polynomial of a cog or gec.
    Sat {
        file: String,
        #[arg(long, value_enum, default_value = "recursive")]
        method: SatMethod,
        /// Edges deleted before saturating (comma separated labels).
        #[arg(long = "D", value_delimiter = ',')]
        d: Vec<String>,
        /// Edges extracted before saturating (comma separated labels).
        #[arg(long = "X", value_delimiter = ',')]
        x: Vec<String>,
    },
    /// Transition polynomial of a cog's gec or a gec.
    Trans {
        file: String,
        #[arg(long, value_enum, default_value = "recursive")]
        method: TransMethod,
        /// Evaluate at `t`; with `--kval`, sum over k-valuations for k = t.
        #[arg(long)]
        t: Option<u32>,
        #[arg(long, requires = "t")]
        kval: bool,
    },
    /// Topological transition polynomial of a signed rotation system.
    Toptrans { file: String },
    /// Yamada invariants of a cog.
    Yamada {
        file: String,
        #[arg(long, value_enum, default_value = "Y")]
        value: YamadaValue,
        #[arg(long, default_value_t = 1)]
        drawings: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Genus range of a connected cog.
    Genus {
        file: String,
        #[arg(long)]
        kind: GenusKind,
    },
    /// Boundary walks of a signed rotation system.
    Faces { file: String },
    /// Census of cogs with a given number of edges.
    Enum {
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        connected: bool,
        /// Also allow isolated vertices (connected census only).
        #[arg(long)]
        allow_isolated: bool,
        #[arg(long)]
        invariant: Option<CensusInvariant>,
    },
    /// Whether two cogs are isomorphic.
    Iso { first: String, second: String },
    /// Converts between cog and gec files.
    Convert {
        file: String,
        #[arg(long, value_enum)]
        to: Target,
    },
    /// Runs the built-in property suites.
    Selfcheck,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Input {
    Cog(Cog),
    Gec(Gec),
    Srs(SignedRotationSystem),
}

fn read_input(path: &str) -> Result<Input> {
    let text = fs::read_to_string(path)
        .map_err(|e| CogError::InvalidArgument(format!("cannot read {path}: {e}")))?;
    let ext = Path::new(path)
        .extension()
        .and_then(|e| e.to_str())
        .unwrap_or("");
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    match ext {
        "cog" => Cog::parse(&text).map(Input::Cog),
        "srs" => SignedRotationSystem::parse(&text).map(Input::Srs),
        "gec" => Gec::parse(&text).map(Input::Gec),
        _ if first.starts_with('[') => SignedRotationSystem::parse(&text).map(Input::Srs),
        _ if first.contains(':') => Gec::parse(&text).map(Input::Gec),
        _ => Cog::parse(&text).map(Input::Cog),
    }
}

fn read_cog(path: &str) -> Result<Cog> {
    match read_input(path)? {
        Input::Cog(c) => Ok(c),
        Input::Gec(g) => Ok(gec_to_cog(&g)),
        Input::Srs(s) => Ok(s.underlying_cog()),
    }
}

fn read_gec(path: &str) -> Result<(Gec, Option<Cog>)> {
    match read_input(path)? {
        Input::Cog(c) => Ok((cog_to_gec(&c), Some(c))),
        Input::Gec(g) => Ok((g, None)),
        Input::Srs(s) => {
            let c = s.underlying_cog();
            Ok((cog_to_gec(&c), Some(c)))
        }
    }
}

fn read_srs(path: &str) -> Result<SignedRotationSystem> {
    match read_input(path)? {
        Input::Srs(s) => Ok(s),
        _ => Err(CogError::InvalidArgument(format!(
            "{path} is not a signed rotation system"
        ))),
    }
}

fn poly_out(p: &MultiPoly, json: bool) -> String {
    if json {
        json!({ "polynomial": p.to_string(), "terms": p.to_json() }).to_string()
    } else {
        p.to_string()
    }
}

fn sat(file: &str, method: SatMethod, d: &[String], x: &[String], json: bool) -> Result<String> {
    let (gec, cog) = read_gec(file)?;
    let p = if !d.is_empty() || !x.is_empty() {
        let c =
            cog.ok_or_else(|| CogError::InvalidArgument("--D and --X need a cog file".into()))?;
        saturation_dx(&c, &c.edges_from_labels(d)?, &c.edges_from_labels(x)?)?
    } else {
        let g = GeneralisedGec::from(gec.clone());
        match method {
            SatMethod::Recursive => saturation_recursive(&g, None)?,
            SatMethod::Statesum => saturation_statesum(&g),
            SatMethod::Cog => saturation_cog(&cog.unwrap_or_else(|| gec_to_cog(&gec))),
        }
    };
    Ok(poly_out(&p, json))
}

fn trans(
    file: &str,
    method: TransMethod,
    t: Option<u32>,
    kval: bool,
    json: bool,
) -> Result<String> {
    let (gec, _) = read_gec(file)?;
    let g = PointedGec::from(gec);
    let p = if kval {
        k_valuation_sum(&g, t.expect("clap requires --t") as usize)?
    } else {
        let q = match method {
            TransMethod::Recursive => transition_recursive(&g, None)?,
            TransMethod::Statesum => transition_statesum(&g),
        };
        match t {
            Some(t) => q.substitute(Var::T, &MultiPoly::constant(t)),
            None => q,
        }
    };
    Ok(poly_out(&p, json))
}

fn yamada(file: &str, value: YamadaValue, drawings: u64, seed: u64, json: bool) -> Result<String> {
    let c = read_cog(file)?;
    let (text, data) = match value {
        YamadaValue::Y => {
            let y = invariant_y(&c, drawings, seed)?;
            (y.to_string(), json!(y.to_string()))
        }
        YamadaValue::Rm1 => {
            let r = invariant_rm1(&c, drawings, seed)?;
            (r.to_string(), json!(r.to_string()))
        }
        YamadaValue::R => {
            let r = yamada_r(&draw(&c, seed));
            (
                r.to_string(),
                json!({ "polynomial": r.to_string(), "terms": r.to_json() }),
            )
        }
    };
    Ok(if json { data.to_string() } else { text })
}

fn genus(file: &str, kind: GenusKind, json: bool) -> Result<String> {
    let c = read_cog(file)?;
    let range = genus_range(&c, kind)?;
    Ok(if json {
        json!({ "kind": kind.to_string(), "genera": range }).to_string()
    } else {
        range
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    })
}

fn faces(file: &str, json: bool) -> Result<String> {
    let s = read_srs(file)?;
    let trace = trace_boundaries(&s);
    let walks = trace.render(s.rotation().labels());
    let genus = euler_genus(&s);
    let orientable = is_orientable(&s);
    Ok(if json {
        json!({
            "faces": trace.count(),
            "euler_genus": genus,
            "orientable": orientable,
            "walks": walks,
        })
        .to_string()
    } else {
        let mut out = vec![
            format!("faces: {}", trace.count()),
            format!("euler genus: {genus}"),
            format!("orientable: {orientable}"),
        ];
        out.extend(walks);
        out.join("\n")
    })
}

fn census(
    edges: usize,
    connected: bool,
    allow_isolated: bool,
    invariant: Option<CensusInvariant>,
    json: bool,
) -> Result<String> {
    if let Some(inv) = invariant {
        let report = census_report(edges, inv)?;
        return Ok(if json {
            serde_json::to_string(&report).expect("report serialises")
        } else {
            report.to_string().trim_end().to_string()
        });
    }
    let cogs = enumerate_cogs(edges, connected, !allow_isolated)?;
    let names: Vec<String> = cogs.iter().map(|c| c.to_string()).collect();
    Ok(if json {
        json!({ "edges": edges, "count": names.len(), "cogs": names }).to_string()
    } else {
        let mut out = names;
        out.push(format!("count: {}", cogs.len()));
        out.join("\n")
    })
}

fn iso(a: &str, b: &str, json: bool) -> Result<String> {
    let same = read_cog(a)?.is_isomorphic(&read_cog(b)?);
    Ok(if json {
        json!({ "isomorphic": same }).to_string()
    } else if same {
        "isomorphic".into()
    } else {
        "not isomorphic".into()
    })
}

fn convert(file: &str, to: Target, json: bool) -> Result<String> {
    let text = match to {
        Target::Gec => read_gec(file)?.0.to_string(),
        Target::Cog => read_cog(file)?.to_string(),
    };
    let text = text.trim_end().to_string();
    Ok(if json {
        json!({ "text": text }).to_string()
    } else {
        text
    })
}

fn check(json: bool) -> (i32, String) {
    let results = selfcheck::run_all();
    let ok = results.iter().all(|r| r.passed);
    let out = if json {
        serde_json::to_string(&results).expect("results serialise")
    } else {
        results
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join("\n")
    };
    (if ok { 0 } else { 3 }, out)
}

fn error_code(e: &CogError) -> i32 {
    match e {
        CogError::Inconsistent(_) => 3,
        _ => 2,
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            return Outcome {
                code,
                stdout,
                stderr,
            };
        }
    };
    let json = cli.json;
    let result = match cli.command {
        Command::Sat { file, method, d, x } => sat(&file, method, &d, &x, json),
        Command::Trans {
            file,
            method,
            t,
            kval,
        } => trans(&file, method, t, kval, json),
        Command::Toptrans { file } => {
            read_srs(&file).map(|s| poly_out(&topological_transition(&s), json))
        }
        Command::Yamada {
            file,
            value,
            drawings,
            seed,
        } => yamada(&file, value, drawings, seed, json),
        Command::Genus { file, kind } => genus(&file, kind, json),
        Command::Faces { file } => faces(&file, json),
        Command::Enum {
            edges,
            connected,
            allow_isolated,
            invariant,
        } => census(edges, connected, allow_isolated, invariant, json),
        Command::Iso { first, second } => iso(&first, &second, json),
        Command::Convert { file, to } => convert(&file, to, json),
        Command::Selfcheck => {
            let (code, stdout) = check(json);
            return Outcome {
                code,
                stdout: stdout + "\n",
                stderr: String::new(),
            };
        }
    };
    match result {
        Ok(out) => Outcome {
            code: 0,
            stdout: out + "\n",
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: error_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
