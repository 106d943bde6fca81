//! Command-line front end.
//!
//! Labels are twice-spin integers (`1` is spin ½, `2` the adjoint). Every
//! verb prints `key = value` rows, or `key value` lines with
//! `--format machine`. Exit status is 0 on success, 2 on usage errors and
//! 1 when a computation fails; on failure nothing is written to stdout.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use crate::error::Error;
use crate::perturbation::{
    cy_phase, dilute_config_count, ff_prefactor, insertion_count, intersecting_pairs, partial_sum_asymptotics,
    partition_dilute, z_coefficients,
};
use crate::qalgebra::{
    format_complex, global_constants, quantum_dim, quantum_integer, twist, Level, QComplex, SpinLabel,
};
use crate::recoupling::{
    braid, eval_insertion_graph, fifteen_j, fifteen_j_mirror, six_j, tet, theta, FifteenJLabels, InsertionGraph,
    InsertionKind, Triple,
};
use crate::statesum::{
    check_signature, crane_yetter_with, fixtures, load_triangulation, pachner_move, Options, PachnerMove, Strategy,
    Triangulation4,
};
use crate::tl_oracle::{library, oracle_eval_network, NetworkSpec};

/// Captured result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Parser, Debug)]
#[command(
    name = "spinfoam",
    version,
    about = "Spin networks at a root of unity, Crane-Yetter state sums and dilute-gas perturbation theory",
    after_help = "Labels are twice-spin integers: 0 trivial, 1 spin 1/2, 2 adjoint."
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Output layout.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Decimals printed for every number.
    #[arg(long, default_value_t = 12, global = true)]
    precision: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Machine,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Evaluate a recoupling symbol with the planar reduction engine.
    Symbol {
        #[arg(value_enum)]
        kind: SymbolKind,
        /// Comma-separated twice-spin labels.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        labels: Vec<u32>,
        #[arg(long)]
        level: u32,
    },
    /// Evaluate a network with the Temperley-Lieb oracle.
    Oracle {
        #[arg(value_enum, required_unless_present = "network")]
        kind: Option<OracleKind>,
        #[arg(long, value_delimiter = ',')]
        labels: Vec<u32>,
        /// Network description file (edge/vertex/crossing/loop lines).
        #[arg(long, conflicts_with = "kind")]
        network: Option<PathBuf>,
        #[arg(long)]
        level: u32,
    },
    /// Normalized Crane-Yetter state sum Z0.
    Cy(StateSumArgs),
    /// Compare Z0 with the signature phase kappa^sigma.
    CheckSignature(StateSumArgs),
    /// Apply a Pachner move and write the result to a new file.
    Pachner {
        /// Triangulation file or built-in name (s4, s4-refined, cp2, s2xs2).
        #[arg(long)]
        manifold: String,
        /// 1-5, 2-4 or 3-3.
        #[arg(long = "move")]
        mv: PachnerMove,
        /// Vertices of the simplex, facet or triangle the move acts on.
        #[arg(long, value_delimiter = ',')]
        site: Vec<u32>,
        #[arg(long)]
        output: PathBuf,
    },
    /// Perturbative coefficients and the dilute-gas partition function.
    Perturb {
        #[arg(long)]
        level: u32,
        /// Dilute-gas parameter g = (lambda - lambda0)^2 N.
        #[arg(long, allow_hyphen_values = true)]
        g: Option<f64>,
        /// Unperturbed value Z0 (computed from --manifold when omitted).
        #[arg(long, allow_hyphen_values = true)]
        z0: Option<String>,
        /// Triangulation file or built-in name; adds insertion counts.
        #[arg(long)]
        manifold: Option<String>,
        /// Size of a dilute configuration to count (needs --manifold).
        #[arg(long)]
        n: Option<usize>,
        /// Signature for the phase exp(-i pi sigma R(k)), k = r - 2.
        #[arg(long, allow_hyphen_values = true)]
        sigma: Option<i64>,
        /// Coupling for the prefactor exp(-i c2/lambda - i pi sigma R(4 pi/lambda)).
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        c2: f64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Truncated perturbation series against its resummed form.
    Asymptotics {
        #[arg(long)]
        level: u32,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        lambda0: String,
        /// Number of 4-simplices.
        #[arg(long = "N")]
        simplices: u64,
    },
}

#[derive(Args, Debug)]
struct StateSumArgs {
    /// Triangulation file or built-in name (s4, s4-refined, cp2, s2xs2).
    #[arg(long)]
    manifold: String,
    #[arg(long)]
    level: u32,
    #[arg(long, default_value = "contract")]
    strategy: Strategy,
    /// Worker threads for the contraction.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SymbolKind {
    /// Quantum integer [n].
    Qint,
    /// Signed quantum dimension.
    Dim,
    /// Ribbon twist.
    Twist,
    Theta,
    /// Tet[a b e; c d f], labels a,b,c,d,e,f.
    Tet,
    /// Recoupling coefficient, labels a,b,c,d,i,j.
    SixJ,
    /// Half-twist eigenvalue, labels a,b,c.
    Braid,
    /// Ten face labels then five intertwiners.
    FifteenJ,
    FifteenJMirror,
    Gamma1,
    Gamma2,
    Gamma2Wedge,
    Gamma3,
    Gamma3Chain,
    /// eta and the Gauss sums kappa+ and kappa- (no labels).
    Constants,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OracleKind {
    Theta,
    Tet,
    FifteenJ,
    Gamma1,
    Gamma2,
    Gamma2Wedge,
    Gamma3,
    Gamma3Chain,
    Hopf,
    Curl,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

type Rows = Vec<(String, String)>;

/// Runs one invocation; `args[0]` is the program name.
pub fn run(args: &[String]) -> Output {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Output {
                    stdout: text,
                    stderr: String::new(),
                    code: 0,
                },
                _ => Output {
                    stdout: String::new(),
                    stderr: format!("{}\n", one_line(&text)),
                    code: 2,
                },
            };
        }
    };
    match execute(&cli) {
        Ok(rows) => Output {
            stdout: render(&rows, cli.format),
            stderr: String::new(),
            code: 0,
        },
        Err(Failure::Usage(msg)) => Output {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            code: 2,
        },
        Err(Failure::Compute(msg)) => Output {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            code: 1,
        },
    }
}

/// First paragraph of a clap diagnostic, whitespace collapsed.
fn one_line(text: &str) -> String {
    let para: Vec<&str> = text.split("\n\n").next().unwrap_or("").split_whitespace().collect();
    para.join(" ")
}

fn render(rows: &Rows, format: Format) -> String {
    let mut s = String::new();
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    for (k, v) in rows {
        match format {
            Format::Table => writeln!(s, "{k:<width$} = {v}").unwrap(),
            Format::Machine => writeln!(s, "{k} {v}").unwrap(),
        }
    }
    s
}

fn execute(cli: &Cli) -> Result<Rows, Failure> {
    let p = cli.precision;
    let c = |z: Complex64| format_complex(z, p);
    match &cli.verb {
        Verb::Symbol { kind, labels, level } => {
            let level = level_of(*level)?;
            symbol(*kind, labels, &level, p)
        }
        Verb::Oracle {
            kind,
            labels,
            network,
            level,
        } => {
            let level = level_of(*level)?;
            let (name, net) = match (kind, network) {
                (_, Some(path)) => {
                    let text = read(path, "network")?;
                    ("network".to_string(), NetworkSpec::parse(&text)?)
                }
                (Some(k), None) => (
                    k.to_possible_value().expect("named").get_name().to_string(),
                    oracle_network(*k, labels, &level)?,
                ),
                (None, None) => unreachable!("clap requires a kind or a network"),
            };
            Ok(vec![(name, c(oracle_eval_network(&net, &level)?))])
        }
        Verb::Cy(a) => {
            let (t, level, opts) = state_sum_inputs(a)?;
            let z = crane_yetter_with(&t, &level, &opts)?;
            Ok(vec![("Z0".into(), c(z.value()))])
        }
        Verb::CheckSignature(a) => {
            let (t, level, opts) = state_sum_inputs(a)?;
            let chk = check_signature(&t, &level, &opts)?;
            Ok(vec![
                ("Z0".into(), c(chk.computed.value())),
                ("sigma".into(), t.signature.unwrap_or(0).to_string()),
                ("expected".into(), c(chk.expected.value())),
                ("pass".into(), chk.pass.to_string()),
            ])
        }
        Verb::Pachner {
            manifold,
            mv,
            site,
            output,
        } => {
            if let Ok(input) = Path::new(manifold).canonicalize() {
                let same = output.canonicalize().map(|o| o == input).unwrap_or(false);
                if same {
                    return Err(Failure::Usage(format!(
                        "--output `{}` is the input triangulation; pick a new file",
                        output.display()
                    )));
                }
            }
            let t = manifold_of(manifold)?;
            let moved = pachner_move(&t, *mv, site)?;
            std::fs::write(output, moved.to_text())
                .map_err(|e| Failure::Compute(format!("cannot write `{}`: {e}", output.display())))?;
            let f = moved.f_vector();
            Ok(vec![
                ("written".into(), output.display().to_string()),
                ("f-vector".into(), f.map(|x| x.to_string()).join(",")),
            ])
        }
        Verb::Perturb {
            level,
            g,
            z0,
            manifold,
            n,
            sigma,
            lambda,
            c2,
            threads,
        } => {
            let level = level_of(*level)?;
            let z = z_coefficients(&level)?;
            let mut rows: Rows = vec![
                ("z1".into(), c(z.z1.value())),
                ("z2".into(), c(z.z2.value())),
                ("z3".into(), c(z.z3.value())),
            ];
            let t = manifold.as_deref().map(manifold_of).transpose()?;
            if let Some(t) = &t {
                rows.push(("simplices".into(), t.simplices.len().to_string()));
                rows.push(("insertions".into(), insertion_count(t).to_string()));
                rows.push(("intersecting".into(), intersecting_pairs(t).to_string()));
                if let Some(n) = n {
                    rows.push((format!("configurations({n})"), dilute_config_count(*n, t)?.to_string()));
                }
            } else if n.is_some() {
                return Err(Failure::Usage("--n needs --manifold".into()));
            }
            let k = level.r() - 2;
            let phase = cy_phase(k)?;
            rows.push(("R".into(), phase.r.to_string()));
            let sigma = sigma.or(t.as_ref().and_then(|t| t.signature));
            if let Some(s) = sigma {
                rows.push(("phase".into(), c(phase.phase(s).value())));
            }
            if let Some(l) = lambda {
                let l = complex_arg("--lambda", l)?;
                rows.push(("E".into(), c(ff_prefactor(l, *c2, sigma.unwrap_or(0), &level)?.value())));
            }
            if let Some(g) = g {
                let z0 = match (z0, &t) {
                    (Some(s), _) => QComplex::new(complex_arg("--z0", s)?),
                    (None, Some(t)) => crane_yetter_with(
                        t,
                        &level,
                        &Options {
                            threads: *threads,
                            ..Options::default()
                        },
                    )?,
                    (None, None) => QComplex::real(1.0),
                };
                rows.push(("Z".into(), c(partition_dilute(z0, *g, &level)?.value())));
            }
            Ok(rows)
        }
        Verb::Asymptotics {
            level,
            lambda,
            lambda0,
            simplices,
        } => {
            let level = level_of(*level)?;
            let l = complex_arg("--lambda", lambda)?;
            let l0 = complex_arg("--lambda0", lambda0)?;
            let ps = partial_sum_asymptotics(l, l0, *simplices, &level)?;
            let g = (l - l0) * (l - l0) * *simplices as f64;
            Ok(vec![
                ("g".into(), c(g)),
                ("lhs".into(), c(ps.lhs)),
                ("rhs".into(), c(ps.rhs)),
                ("residual".into(), format!("{:.p$e}", ps.residual)),
            ])
        }
    }
}

fn level_of(r: u32) -> Result<Level, Failure> {
    Ok(Level::new(r)?)
}

fn read(path: &Path, what: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {what} file `{}`: {e}", path.display())))
}

/// A triangulation file, or a built-in fixture name when no such file
/// exists.
fn manifold_of(arg: &str) -> Result<Triangulation4, Failure> {
    let path = Path::new(arg);
    if !path.exists() {
        if let Some((_, t)) = fixtures::all().into_iter().find(|(name, _)| *name == arg) {
            return Ok(t);
        }
    }
    Ok(load_triangulation(&read(path, "manifold")?)?)
}

fn state_sum_inputs(a: &StateSumArgs) -> Result<(Triangulation4, Level, Options), Failure> {
    let t = manifold_of(&a.manifold)?;
    let level = level_of(a.level)?;
    let opts = Options {
        strategy: a.strategy,
        threads: a.threads.max(1),
        ..Options::default()
    };
    Ok((t, level, opts))
}

fn expect_labels(name: &str, labels: &[u32], n: usize, level: &Level) -> Result<(), Failure> {
    if labels.len() != n {
        return Err(Failure::Usage(format!(
            "--labels: {name} takes {n} labels, got {}",
            labels.len()
        )));
    }
    for &l in labels {
        level.check(SpinLabel(l))?;
    }
    Ok(())
}

fn symbol(kind: SymbolKind, labels: &[u32], level: &Level, p: usize) -> Result<Rows, Failure> {
    let name = kind.to_possible_value().expect("named").get_name().to_string();
    let c = |z: Complex64| format_complex(z, p);
    let l = labels;
    let value = match kind {
        SymbolKind::Constants => {
            expect_labels(&name, l, 0, level)?;
            let g = global_constants(level);
            return Ok(vec![
                ("eta".into(), c(g.eta.value())),
                ("kappa+".into(), c(g.kappa_plus.value())),
                ("kappa-".into(), c(g.kappa_minus.value())),
            ]);
        }
        SymbolKind::Qint => {
            if l.len() != 1 {
                return Err(Failure::Usage(format!("--labels: qint takes 1 label, got {}", l.len())));
            }
            quantum_integer(l[0] as i64, level)
        }
        SymbolKind::Dim => {
            expect_labels(&name, l, 1, level)?;
            quantum_dim(SpinLabel(l[0]), level)?
        }
        SymbolKind::Twist => {
            expect_labels(&name, l, 1, level)?;
            twist(SpinLabel(l[0]), level)?
        }
        SymbolKind::Theta => {
            expect_labels(&name, l, 3, level)?;
            theta(Triple::new(l[0], l[1], l[2]), level)
        }
        SymbolKind::Tet => {
            expect_labels(&name, l, 6, level)?;
            let s = |i: usize| SpinLabel(l[i]);
            tet(s(0), s(1), s(2), s(3), s(4), s(5), level)
        }
        SymbolKind::SixJ => {
            expect_labels(&name, l, 6, level)?;
            six_j(l[0], l[1], l[2], l[3], l[4], l[5], level)
        }
        SymbolKind::Braid => {
            expect_labels(&name, l, 3, level)?;
            braid(l[0], l[1], l[2], level)
        }
        SymbolKind::FifteenJ | SymbolKind::FifteenJMirror => {
            expect_labels(&name, l, 15, level)?;
            let labels = fifteen_j_labels(l);
            if kind == SymbolKind::FifteenJ {
                fifteen_j(labels, level)
            } else {
                fifteen_j_mirror(labels, level)
            }
        }
        SymbolKind::Gamma1
        | SymbolKind::Gamma2
        | SymbolKind::Gamma2Wedge
        | SymbolKind::Gamma3
        | SymbolKind::Gamma3Chain => {
            let k = InsertionKind::from_name(&name).expect("same names");
            expect_labels(&name, l, k.arity(), level)?;
            eval_insertion_graph(&InsertionGraph::new(k, l)?, level)?
        }
    };
    Ok(vec![(name, c(value.value()))])
}

fn fifteen_j_labels(l: &[u32]) -> FifteenJLabels {
    let mut faces = [0; 10];
    let mut ints = [0; 5];
    faces.copy_from_slice(&l[..10]);
    ints.copy_from_slice(&l[10..15]);
    FifteenJLabels::new(faces, ints)
}

fn oracle_network(kind: OracleKind, l: &[u32], level: &Level) -> Result<NetworkSpec, Failure> {
    let name = kind.to_possible_value().expect("named").get_name().to_string();
    let arity = match kind {
        OracleKind::Curl => 1,
        OracleKind::Hopf | OracleKind::Gamma1 | OracleKind::Gamma2 | OracleKind::Gamma3 => 2,
        OracleKind::Theta | OracleKind::Gamma2Wedge | OracleKind::Gamma3Chain => 3,
        OracleKind::Tet => 6,
        OracleKind::FifteenJ => 15,
    };
    expect_labels(&name, l, arity, level)?;
    let adjoint = SpinLabel::ADJOINT.0;
    let needs_adjoint = matches!(
        kind,
        OracleKind::Gamma1
            | OracleKind::Gamma2
            | OracleKind::Gamma2Wedge
            | OracleKind::Gamma3
            | OracleKind::Gamma3Chain
    );
    if needs_adjoint && !level.is_admissible(adjoint) {
        return Err(Error::AdjointExcluded(level.r()).into());
    }
    Ok(match kind {
        OracleKind::Theta => library::theta(l[0], l[1], l[2]),
        OracleKind::Tet => library::tet(l[0], l[1], l[2], l[3], l[4], l[5]),
        OracleKind::FifteenJ => {
            let labels = fifteen_j_labels(l);
            library::fifteen_j(labels.faces.map(|s| s.0), labels.intertwiners.map(|s| s.0))
        }
        OracleKind::Gamma1 => library::gamma1(adjoint, l[0], l[1]),
        OracleKind::Gamma2 => library::gamma2(adjoint, l[0], l[1]),
        OracleKind::Gamma2Wedge => library::gamma2_wedge(adjoint, l[0], l[1], l[2]),
        OracleKind::Gamma3 => library::gamma3(adjoint, l[0], l[1]),
        OracleKind::Gamma3Chain => library::gamma3_chain(adjoint, l[0], l[1], l[2]),
        OracleKind::Hopf => library::hopf(l[0], l[1]),
        OracleKind::Curl => library::curl(l[0]),
    })
}

fn complex_arg(flag: &str, s: &str) -> Result<Complex64, Failure> {
    parse_complex(s).ok_or_else(|| Failure::Usage(format!("{flag}: cannot parse `{s}` as a complex number")))
}

/// Parses `a`, `bi`, `a+bi`, `a-bi` (also `j` for the imaginary unit).
pub fn parse_complex(s: &str) -> Option<Complex64> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let Some(body) = s.strip_suffix(['i', 'j']) else {
        return s.parse::<f64>().ok().map(|re| Complex64::new(re, 0.0));
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |t: &str| match t {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        t => t.parse::<f64>().ok(),
    };
    match split {
        Some(k) => Some(Complex64::new(body[..k].parse().ok()?, imag(&body[k..])?)),
        None => Some(Complex64::new(0.0, imag(body)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> Output {
        let mut v = vec!["spinfoam".to_string()];
        v.extend(args.iter().map(|s| s.to_string()));
        run(&v)
    }

    #[test]
    fn complex_numbers() {
        let c = |re, im| Some(Complex64::new(re, im));
        assert_eq!(parse_complex("1"), c(1.0, 0.0));
        assert_eq!(parse_complex("-2.5"), c(-2.5, 0.0));
        assert_eq!(parse_complex("i"), c(0.0, 1.0));
        assert_eq!(parse_complex("-i"), c(0.0, -1.0));
        assert_eq!(parse_complex("0.5i"), c(0.0, 0.5));
        assert_eq!(parse_complex("1+2i"), c(1.0, 2.0));
        assert_eq!(parse_complex("1-i"), c(1.0, -1.0));
        assert_eq!(parse_complex("1e-3-2e+1i"), c(1e-3, -20.0));
        assert_eq!(parse_complex(" 3 + 4j "), c(3.0, 4.0));
        assert_eq!(parse_complex("x"), None);
        assert_eq!(parse_complex(""), None);
    }

    #[test]
    fn sphere_on_the_command_line() {
        let out = call(&["cy", "--manifold", "s4", "--level", "3"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert_eq!(out.stdout, "Z0 = 1.000000000000+0.000000000000i\n");
    }

    #[test]
    fn machine_format_and_precision() {
        let out = call(&[
            "symbol",
            "dim",
            "--labels",
            "1",
            "--level",
            "4",
            "--format",
            "machine",
            "--precision",
            "3",
        ]);
        assert_eq!(out.stdout, "dim -1.414+0.000i\n");
    }

    #[test]
    fn exit_codes() {
        let usage = call(&["symbol", "theta", "--labels", "1,1"]);
        assert_eq!(usage.code, 2);
        assert!(usage.stdout.is_empty());
        assert!(usage.stderr.contains("--level"), "{}", usage.stderr);
        assert_eq!(usage.stderr.lines().count(), 1);

        let compute = call(&["symbol", "theta", "--labels", "5,1,4", "--level", "4"]);
        assert_eq!(compute.code, 1);
        assert!(compute.stdout.is_empty());

        assert_eq!(call(&["frobnicate"]).code, 2);
        assert_eq!(call(&["--help"]).code, 0);
    }
}
