//! `svir`: command-line front end for svir-core.
//!
//! Exit status: 0 on pass or evidence, 1 when a verification fails, 2 on
//! usage, parse or parameter errors.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use svir_core::algebra::{
    bracket, check_sigma_homomorphism, check_super_antisymmetry, check_super_jacobi, check_twist_homomorphism,
};
use svir_core::modules::{check_module_axioms, check_twist_identity};
use svir_core::morphisms::MapRule;
use svir_core::parse::{parse_constant, parse_element, parse_vector};
use svir_core::structure::{
    check_closure, default_seed_points, freeness_check, monomial_seeds, probe_simplicity, probe_simplicity_closure,
    probe_submodule_span, ProbeReport,
};
use svir_core::{
    act_element, intertwiner_search, verify_intertwiner, Component, Error, Family, Lambda, LinearMap, ModuleSpec,
    Scalar, SpecPoint, Status, SubmodulePredicate, Vector, VerificationReport,
};

#[derive(Parser, Debug)]
#[command(name = "svir", version, about = "Exact checks for super-Virasoro algebras and their Omega modules")]
struct Cli {
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Ramond,
    Ns,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Ramond => Family::Ramond,
            FamilyArg::Ns => Family::NeveuSchwarz,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Plain,
    /// Omega(1, alpha) twisted by sigma_lambda.
    Twisted,
    /// A Ramond module viewed as a Neveu-Schwarz module through sigma.
    Restricted,
}

#[derive(Args, Debug, Clone)]
struct ModuleArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    /// `symbolic`, or a point `q0,alpha0` with lambda = q0^2 (e.g. `2,1/2` or `w,1`).
    #[arg(long, default_value = "symbolic")]
    params: String,
    #[arg(long, value_enum, default_value = "plain")]
    variant: VariantArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MapArg {
    /// phi: Xi -> Pi(Omega_R(lambda, 1/2)).
    SmallPhi,
    /// psi: Gamma -> Pi(Omega_NS(lambda, 1/2)).
    Psi,
    /// Phi: Omega_NS(lambda, alpha) -> Omega_R(sqrt(lambda), alpha) restricted.
    Phi,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply an algebra element to a vector.
    Act {
        #[command(flatten)]
        module: ModuleArgs,
        /// Algebra element, e.g. `G(1/2)` or `2*L(1)+q*G(0)`.
        element: String,
        /// Vector, e.g. `[even: t^2+1 | odd: t]`.
        vector: String,
    },
    /// Super-bracket of two algebra elements.
    Bracket {
        #[arg(long, value_enum)]
        family: FamilyArg,
        a: String,
        b: String,
    },
    /// Super-Jacobi, super-antisymmetry, sigma_lambda and sigma checks.
    VerifyAlgebra {
        /// Restrict to one family; both by default.
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        #[arg(long, default_value_t = 4)]
        window: i64,
    },
    /// Module axioms act([a,b],v) = a.(b.v) -+ b.(a.v).
    VerifyModule {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, default_value_t = 4)]
        window: i64,
        #[arg(long, default_value_t = 4)]
        max_deg: usize,
    },
    /// Intertwining and bijectivity of phi, psi and Phi.
    VerifyIso {
        #[arg(long, value_enum, default_value = "all")]
        map: MapArg,
        /// `symbolic` or `q0,alpha0`; alpha0 is ignored by phi and psi.
        #[arg(long, default_value = "symbolic")]
        params: String,
        #[arg(long, default_value_t = 3)]
        window: i64,
        #[arg(long, default_value_t = 4)]
        max_deg: usize,
    },
    /// All intertwiners between two specialized modules, up to a degree.
    SearchIntertwiner {
        /// Domain, `ramond:q0,alpha0`, `ns:q0,alpha0` or `restricted:q0,alpha0`.
        #[arg(long = "A")]
        a: String,
        /// Codomain, same syntax as --A.
        #[arg(long = "B")]
        b: String,
        #[arg(long, default_value_t = 2)]
        window: i64,
        #[arg(long, default_value_t = 4)]
        max_deg: usize,
    },
    /// At alpha = 0: closure of Xi (Ramond) or Gamma (NS), and spans of seeds staying inside.
    ProbeSubmodule {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Point `q0,0` for the span probe; the closure check is symbolic in lambda.
        #[arg(long, default_value = "1,0")]
        params: String,
        /// Seed vector inside the submodule; `t` (resp. `x`) by default.
        #[arg(long)]
        seed: Option<String>,
        #[arg(long, default_value_t = 2)]
        window: i64,
        #[arg(long, default_value_t = 8)]
        max_words: usize,
        #[arg(long, default_value_t = 8)]
        max_deg: usize,
    },
    /// Cyclic spans from every monomial seed must reach the constant vector.
    ProbeSimplicity {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, value_enum, default_value = "plain")]
        variant: VariantArg,
        /// Points `q0,alpha0` separated by `;`. Defaults to
        /// `1,1;2,1/2;1/2,-1;3,-2/3;w,2`.
        #[arg(long)]
        seed_list: Option<String>,
        /// Largest seed degree.
        #[arg(long, default_value_t = 3)]
        seed_deg: usize,
        #[arg(long, default_value_t = 2)]
        window: i64,
        #[arg(long, default_value_t = 6)]
        max_words: usize,
        #[arg(long, default_value_t = 8)]
        max_deg: usize,
        /// Iterate span closure to a fixpoint instead of the word search.
        /// Ignores --max-words; keep --max-deg small.
        #[arg(long)]
        closure: bool,
    },
    /// Freeness over C[L_0] (and G_0 for Ramond) up to a degree.
    CheckFreeness {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value = "symbolic")]
        params: String,
        #[arg(long, default_value_t = 5)]
        max_deg: usize,
    },
}

/// What a command produced: text, JSON and a status.
struct Output {
    text: String,
    json: Value,
    status: Status,
}

impl Output {
    fn from_reports(command: &str, reports: Vec<VerificationReport>) -> Output {
        let status = if reports.iter().all(VerificationReport::passed) { Status::Pass } else { Status::Fail };
        Output {
            text: reports.iter().map(ToString::to_string).collect(),
            json: json!({ "schema": 1, "command": command, "status": status, "reports": reports }),
            status,
        }
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn parse_point(text: &str) -> Result<SpecPoint, Error> {
    let (q0, a0) = text.split_once(',').ok_or_else(|| usage(format!("expected `q0,alpha0`, found {text:?}")))?;
    SpecPoint::new(parse_constant(q0)?, parse_constant(a0)?)
}

fn parse_params(text: &str) -> Result<Option<SpecPoint>, Error> {
    if text == "symbolic" {
        Ok(None)
    } else {
        parse_point(text).map(Some)
    }
}

fn build_module(family: Family, point: Option<&SpecPoint>, variant: VariantArg) -> Result<ModuleSpec, Error> {
    let plain = match point {
        Some(p) => ModuleSpec::specialized(family, p),
        None => ModuleSpec::symbolic(family),
    };
    match variant {
        VariantArg::Plain => Ok(plain),
        VariantArg::Twisted => {
            let lambda = plain.lambda().clone();
            Ok(plain.with_lambda(Lambda::one()).twisted(lambda))
        }
        VariantArg::Restricted => {
            if family != Family::Ramond {
                return Err(usage("--variant restricted needs --family ramond"));
            }
            plain.restricted()
        }
    }
}

fn module_from(args: &ModuleArgs) -> Result<ModuleSpec, Error> {
    build_module(args.family.into(), parse_params(&args.params)?.as_ref(), args.variant)
}

/// `ramond:q0,a0`, `ns:q0,a0` or `restricted:q0,a0`, all with lambda =
/// q0^2; `restricted:w,1` is Omega_R(2, 1) through sigma, the target of Phi
/// from `ns:2,1`.
fn parse_module_arg(text: &str) -> Result<ModuleSpec, Error> {
    let (kind, params) =
        text.split_once(':').ok_or_else(|| usage(format!("expected `family:q0,alpha0`, found {text:?}")))?;
    let point = parse_params(params)?;
    match (kind, point) {
        ("ramond", p) => build_module(Family::Ramond, p.as_ref(), VariantArg::Plain),
        ("ns", p) => build_module(Family::NeveuSchwarz, p.as_ref(), VariantArg::Plain),
        ("restricted", p) => build_module(Family::Ramond, p.as_ref(), VariantArg::Restricted),
        _ => Err(usage(format!("unknown module kind {kind:?}; use ramond, ns or restricted"))),
    }
}

fn check_window(window: i64) -> Result<(), Error> {
    if window < 0 {
        return Err(usage("--window must be nonnegative"));
    }
    Ok(())
}

fn probe_output(command: &str, probes: Vec<ProbeReport>) -> Output {
    let status = if probes.iter().all(ProbeReport::passed) { Status::Evidence } else { Status::Fail };
    Output {
        text: probes.iter().map(ToString::to_string).collect(),
        json: json!({ "schema": 1, "command": command, "status": status, "probes": probes }),
        status,
    }
}

fn run(command: Command) -> Result<Output, Error> {
    match command {
        Command::Act { module, element, vector } => {
            let spec = module_from(&module)?;
            let a = parse_element(&element, Some(spec.generator_family()))?;
            let v = parse_vector(&vector, Some(spec.family()))?;
            let v = if spec.is_parity_shifted() != v.is_parity_shifted() { v.parity_flip() } else { v };
            let out = act_element(&a, &v, &spec)?;
            Ok(Output {
                text: format!("{out}\n"),
                json: json!({
                    "schema": 1, "command": "act", "module": spec.to_string(),
                    "element": a.to_string(), "vector": v.to_string(), "result": out.to_string(),
                }),
                status: Status::Pass,
            })
        }
        Command::Bracket { family, a, b } => {
            let family = family.into();
            let (x, y) = (parse_element(&a, Some(family))?, parse_element(&b, Some(family))?);
            let out = bracket(&x, &y)?;
            Ok(Output {
                text: format!("{out}\n"),
                json: json!({ "schema": 1, "command": "bracket", "a": x.to_string(), "b": y.to_string(), "result": out.to_string() }),
                status: Status::Pass,
            })
        }
        Command::VerifyAlgebra { family, window } => {
            check_window(window)?;
            let families: Vec<Family> = family.map_or(Family::ALL.to_vec(), |f| vec![f.into()]);
            let mut reports = Vec::new();
            for &f in &families {
                reports.push(check_super_jacobi(f, window));
                reports.push(check_super_antisymmetry(f, window));
                reports.push(check_twist_homomorphism(f, window, &Lambda::symbolic()));
            }
            if families.contains(&Family::NeveuSchwarz) {
                reports.push(check_sigma_homomorphism(window));
            }
            Ok(Output::from_reports("verify-algebra", reports))
        }
        Command::VerifyModule { module, window, max_deg } => {
            check_window(window)?;
            let spec = module_from(&module)?;
            let mut reports = vec![check_module_axioms(&spec, window, max_deg)];
            if module.variant == VariantArg::Twisted {
                reports.push(check_twist_identity(spec.family(), window, max_deg));
            }
            Ok(Output::from_reports("verify-module", reports))
        }
        Command::VerifyIso { map, params, window, max_deg } => {
            check_window(window)?;
            let point = parse_params(&params)?;
            let base = |f| build_module(f, point.as_ref(), VariantArg::Plain);
            let mut maps = Vec::new();
            if matches!(map, MapArg::SmallPhi | MapArg::All) {
                maps.push(LinearMap::small_phi(&base(Family::Ramond)?)?);
            }
            if matches!(map, MapArg::Psi | MapArg::All) {
                maps.push(LinearMap::psi(&base(Family::NeveuSchwarz)?)?);
            }
            if matches!(map, MapArg::Phi | MapArg::All) {
                maps.push(LinearMap::phi(&base(Family::NeveuSchwarz)?)?);
            }
            let reports = maps.iter().map(|m| verify_intertwiner(m, window, max_deg)).collect::<Result<Vec<_>, _>>()?;
            Ok(Output::from_reports("verify-iso", reports))
        }
        Command::SearchIntertwiner { a, b, window, max_deg } => {
            check_window(window)?;
            let (sa, sb) = (parse_module_arg(&a)?, parse_module_arg(&b)?);
            let sols = intertwiner_search(&sa, &sb, window, max_deg)?;
            let mut text =
                format!("intertwiners {sa} -> {sb} (window {window}, degree <= {max_deg}): dimension {}\n", sols.len());
            let mut basis = Vec::new();
            for (i, m) in sols.iter().enumerate() {
                let MapRule::Matrix(mat) = m.rule() else { unreachable!("search returns matrices") };
                let parity = if mat.parity().is_odd() { "odd" } else { "even" };
                text.push_str(&format!("  basis map {} ({parity}):\n", i + 1));
                for ((u, _), img) in m.images(max_deg)?.iter().zip(mat.columns()) {
                    if !img.is_zero() {
                        text.push_str(&format!("    {u} -> {img}\n"));
                    }
                }
                basis.push(json!({ "parity": parity, "matrix": mat.entries() }));
            }
            Ok(Output {
                text,
                json: json!({
                    "schema": 1, "command": "search-intertwiner", "A": sa.to_string(), "B": sb.to_string(),
                    "window": window, "max_deg": max_deg, "dimension": sols.len(), "basis": basis,
                }),
                status: Status::Pass,
            })
        }
        Command::ProbeSubmodule { family, params, seed, window, max_words, max_deg } => {
            check_window(window)?;
            let family: Family = family.into();
            let point = parse_point(&params)?;
            if !point.alpha0().is_zero() {
                return Err(usage("probe-submodule needs alpha0 = 0"));
            }
            let pred = SubmodulePredicate::proper_for(family);
            let closure =
                check_closure(&pred, &ModuleSpec::symbolic(family).with_alpha(Scalar::zero()), window, max_deg)?;
            let seed = match seed {
                Some(s) => parse_vector(&s, Some(family))?,
                None => Vector::monomial(family, Component::Even, 1),
            };
            let spec = ModuleSpec::specialized(family, &point);
            let probe = probe_submodule_span(&pred, &spec, &[seed], window, max_words, max_deg)?;
            let status = if closure.passed() && probe.passed() { Status::Evidence } else { Status::Fail };
            Ok(Output {
                text: format!("{closure}{probe}"),
                json: json!({ "schema": 1, "command": "probe-submodule", "status": status, "reports": [closure], "probes": [probe] }),
                status,
            })
        }
        Command::ProbeSimplicity { family, variant, seed_list, seed_deg, window, max_words, max_deg, closure } => {
            check_window(window)?;
            if variant == VariantArg::Twisted {
                return Err(usage("--variant twisted is not supported by probe-simplicity"));
            }
            let points = match seed_list {
                Some(list) => list.split(';').map(|p| parse_point(p.trim())).collect::<Result<Vec<_>, _>>()?,
                None => default_seed_points(),
            };
            let family: Family = family.into();
            let seeds = monomial_seeds(family, seed_deg);
            let probes = points
                .iter()
                .map(|p| {
                    let spec = build_module(family, Some(p), variant)?;
                    if closure {
                        probe_simplicity_closure(&spec, &seeds, window, max_deg)
                    } else {
                        probe_simplicity(&spec, &seeds, window, max_words, max_deg)
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(probe_output("probe-simplicity", probes))
        }
        Command::CheckFreeness { family, params, max_deg } => {
            let spec = build_module(family.into(), parse_params(&params)?.as_ref(), VariantArg::Plain)?;
            Ok(Output::from_reports("check-freeness", vec![freeness_check(&spec, max_deg)?]))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            let body = if cli.json {
                format!("{}\n", serde_json::to_string_pretty(&out.json).expect("serializable"))
            } else {
                out.text
            };
            // A closed pipe (e.g. `| head`) is not an error worth a panic.
            let _ = std::io::stdout().write_all(body.as_bytes());
            if out.status == Status::Fail {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            if cli.json {
                let _ = writeln!(std::io::stdout(), "{}", json!({ "schema": 1, "error": e.to_string() }));
            }
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
