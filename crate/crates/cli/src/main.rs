use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use orbitkit::cech::{chern_class, cohomology, Cochain, Nerve, Ring};
use orbitkit::oracle::{match_roots, numeric_kks_check, numeric_root_decomposition, root_property_audit, special_unitary_basis};
use orbitkit::quantize::LatticeSpec;
use orbitkit::rational::{fmt_q, parse_q_list};
use orbitkit::report::{analyze_orbit, canonical_json};
use orbitkit::weyl::{WeylGroup, DEFAULT_CAP};
use orbitkit::{BasisTag, Error, RootSystem, Weight};
use serde_json::{json, Value};

const EXIT_USAGE: u8 = 2;
const EXIT_PARSE: u8 = 3;
const EXIT_CAP: u8 = 4;
const EXIT_CERTIFICATE: u8 = 5;

#[derive(Parser)]
#[command(name = "orbitkit", version, about = "Coadjoint orbits, Weyl groups and Čech cohomology in exact arithmetic")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,

    /// Upper bound on the number of Weyl group elements to enumerate
    #[arg(long, global = true, env = "ORBITKIT_WEYL_CAP", default_value_t = DEFAULT_CAP)]
    weyl_cap: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Basis {
    Ambient,
    Fundamental,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze the coadjoint orbit through a weight
    Orbit {
        /// Series such as A2, B3 or A1xB2xT1
        #[arg(long)]
        series: String,
        /// Comma-separated rational coordinates
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, value_enum, default_value_t = Basis::Ambient)]
        basis: Basis,
        /// sc, adjoint or custom:FILE
        #[arg(long, default_value = "sc")]
        lattice: String,
    },
    /// Čech cohomology of a finite nerve
    Cech {
        #[command(subcommand)]
        command: CechCommand,
    },
    /// Numeric cross-checks of the exact engine
    Audit {
        #[command(subcommand)]
        command: AuditCommand,
    },
}

#[derive(Subcommand)]
enum CechCommand {
    /// The group H^k
    H {
        #[arg(long)]
        nerve: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = RingArg::Z)]
        ring: RingArg,
    },
    /// Class of an integer 2-cocycle in H^2(nerve, Z)
    Chern {
        #[arg(long)]
        nerve: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RingArg {
    Z,
    Q,
}

impl From<RingArg> for Ring {
    fn from(r: RingArg) -> Self {
        match r {
            RingArg::Z => Ring::Z,
            RingArg::Q => Ring::Q,
        }
    }
}

#[derive(Subcommand)]
enum AuditCommand {
    /// Root closure audit of an exact root system and its Weyl group order
    Roots {
        #[arg(long)]
        series: String,
    },
    /// Numeric su(n) root decomposition against the exact A_{n-1} roots
    Matrix {
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Exact KKS blocks and equivariance against matrix computations in su(n)
    Kks {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
    line: Option<usize>,
}

impl Failure {
    fn new(code: u8, kind: &'static str, message: impl Into<String>) -> Self {
        Failure { code, kind, message: message.into(), line: None }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::Parse { .. } => (EXIT_PARSE, "parse"),
            Error::InvalidSeries(_) => (EXIT_PARSE, "invalid_series"),
            Error::DimensionMismatch { .. } => (EXIT_PARSE, "dimension_mismatch"),
            Error::InvalidLattice(_) => (EXIT_PARSE, "invalid_lattice"),
            Error::InvalidNerve(_) => (EXIT_PARSE, "invalid_nerve"),
            Error::InvalidArgument(_) => (EXIT_USAGE, "invalid_argument"),
            Error::CapExceeded(_) => (EXIT_CAP, "cap_exceeded"),
            Error::SeedOnWall(_) | Error::NotARoot(_) | Error::Certificate(_) | Error::Oracle(_) => {
                (EXIT_CERTIFICATE, "certificate")
            }
        };
        let line = match &e {
            Error::Parse { line, .. } => *line,
            _ => None,
        };
        Failure { code, kind, message: e.to_string(), line }
    }
}

type CmdResult = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::new(EXIT_PARSE, "io", format!("{}: {e}", path.display())))
}

fn render(output: Output, json: Value, text: String) -> String {
    match output {
        Output::Json => canonical_json(&json),
        Output::Text => text,
    }
}

fn lattice(arg: &str, rs: &RootSystem) -> Result<LatticeSpec, Failure> {
    match arg {
        "sc" => Ok(LatticeSpec::simply_connected()),
        "adjoint" => Ok(LatticeSpec::adjoint()),
        other => match other.strip_prefix("custom:") {
            Some(file) => Ok(LatticeSpec::parse_custom(&read(Path::new(file))?, rs)?),
            None => Err(Failure::new(EXIT_USAGE, "usage", format!("unknown lattice {other:?}; expected sc, adjoint or custom:FILE"))),
        },
    }
}

fn cmd_orbit(cli: &Cli, series: &str, lambda: &str, basis: Basis, lattice_arg: &str) -> CmdResult {
    let rs = RootSystem::from_str_spec(series)?;
    let coords = parse_q_list(lambda)?;
    let weight = match basis {
        Basis::Ambient => Weight::ambient(coords),
        Basis::Fundamental => Weight { coords, basis: BasisTag::Fundamental },
    };
    rs.check_dim(&weight)?;
    let lat = lattice(lattice_arg, &rs)?;
    let w = WeylGroup::generate(&rs, cli.weyl_cap)?;
    let report = analyze_orbit(&weight, &rs, &lat, &w)?;
    if !report.admissibility.holds() {
        return Err(Failure::new(EXIT_CERTIFICATE, "certificate", format!("admissibility: {:?}", report.admissibility)));
    }
    if !report.polarization.certificate.holds() {
        return Err(Failure::new(EXIT_CERTIFICATE, "certificate", format!("polarization: {:?}", report.polarization.certificate)));
    }
    Ok(render(cli.output, report.to_json(), report.to_text()))
}

fn cmd_cech_h(cli: &Cli, nerve: &Path, k: usize, ring: RingArg) -> CmdResult {
    let n = Nerve::parse(&read(nerve)?)?;
    let h = cohomology(&n, k, ring.into());
    let ring_name = match ring {
        RingArg::Z => "z",
        RingArg::Q => "q",
    };
    let json = json!({
        "degree": k,
        "ring": ring_name,
        "group": h.to_string(),
        "free_rank": h.free_rank,
        "torsion": h.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
    });
    Ok(render(cli.output, json, format!("{h}\n")))
}

fn cmd_cech_chern(cli: &Cli, nerve: &Path, cocycle: &Path) -> CmdResult {
    let n = Nerve::parse(&read(nerve)?)?;
    let a = Cochain::parse(&read(cocycle)?, &n, Ring::Z)?;
    if a.degree != 2 {
        return Err(Failure::new(EXIT_PARSE, "parse", format!("expected a 2-cochain, got degree {}", a.degree)));
    }
    let c = chern_class(&n, &a)?;
    if !c.valid {
        let w = c.witness.unwrap_or_default();
        return Err(Failure::new(EXIT_PARSE, "not_a_cocycle", format!("coboundary is nonzero on simplex {w:?}")));
    }
    let coords: Vec<Value> = c
        .coordinates
        .iter()
        .map(|x| json!({ "value": x.value.to_string(), "modulus": x.modulus.as_ref().map(|m| m.to_string()) }))
        .collect();
    let text = if c.is_trivial() {
        "class 0\n".to_string()
    } else {
        let parts: Vec<String> = c
            .coordinates
            .iter()
            .map(|x| match &x.modulus {
                Some(m) => format!("{} mod {m}", x.value),
                None => x.value.to_string(),
            })
            .collect();
        format!("class ({})\n", parts.join(", "))
    };
    let json = json!({ "trivial": c.is_trivial(), "coordinates": coords });
    Ok(render(cli.output, json, text))
}

fn cmd_audit_roots(cli: &Cli, series: &str) -> CmdResult {
    let rs = RootSystem::from_str_spec(series)?;
    rs.audit()?;
    let w = WeylGroup::generate(&rs, cli.weyl_cap)?;
    let json = json!({
        "series": rs.spec().to_string(),
        "roots": rs.roots().len(),
        "rank": rs.rank(),
        "dim_group": rs.dim_g(),
        "weyl_order": w.order(),
        "closure": true,
    });
    let text = format!(
        "series {}: {} roots, rank {}, dim {}, Weyl order {}, closure ok\n",
        rs.spec(),
        rs.roots().len(),
        rs.rank(),
        rs.dim_g(),
        w.order()
    );
    Ok(render(cli.output, json, text))
}

fn cmd_audit_matrix(cli: &Cli, n: usize) -> CmdResult {
    let alg = special_unitary_basis(n)?;
    let rs = RootSystem::from_str_spec(&format!("A{}", n - 1))?;
    let numeric = numeric_root_decomposition(&alg)?;
    let m = match_roots(&numeric, &rs);
    let audit = root_property_audit(&alg)?;
    let failures: Vec<String> = audit.failures().iter().map(|e| format!("{} ({:e})", e.check, e.residual)).collect();
    let json = json!({
        "n": n,
        "matching_perfect": m.perfect,
        "matching_residual": format!("{:e}", m.max_residual),
        "checks": audit.entries.len(),
        "max_residual": format!("{:e}", audit.max_residual()),
        "failures": failures,
    });
    let text = format!(
        "su({n}): matching {} (residual {:.1e}); {} bracket checks, max residual {:.1e}, {} failures\n",
        if m.perfect { "perfect" } else { "FAILED" },
        m.max_residual,
        audit.entries.len(),
        audit.max_residual(),
        failures.len()
    );
    if !m.perfect || !audit.passes() {
        return Err(Failure::new(EXIT_CERTIFICATE, "certificate", text.trim_end().to_string()));
    }
    Ok(render(cli.output, json, text))
}

fn cmd_audit_kks(cli: &Cli, n: usize, lambda: &str, samples: usize, seed: u64) -> CmdResult {
    let alg = special_unitary_basis(n)?;
    let rs = RootSystem::from_str_spec(&format!("A{}", n - 1))?;
    let (l, _) = rs.normalize_weight(&Weight::ambient(parse_q_list(lambda)?))?;
    let r = numeric_kks_check(&l, &alg, samples, seed)?;
    let pass = r.passes(1e-9);
    let json = json!({
        "n": n,
        "lambda": l.coords.iter().map(fmt_q).collect::<Vec<_>>(),
        "blocks_checked": r.blocks_checked,
        "kks_max_relative": format!("{:e}", r.kks_max_relative),
        "singular_max_abs": format!("{:e}", r.singular_max_abs),
        "equivariance_max": format!("{:e}", r.equivariance_max),
        "samples": r.samples,
        "pass": pass,
    });
    let text = format!(
        "su({n}) at {l}: {} blocks, KKS relative residual {:.1e}, singular {:.1e}, equivariance {:.1e} over {} samples\n",
        r.blocks_checked, r.kks_max_relative, r.singular_max_abs, r.equivariance_max, r.samples
    );
    if !pass {
        return Err(Failure::new(EXIT_CERTIFICATE, "certificate", text.trim_end().to_string()));
    }
    Ok(render(cli.output, json, text))
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Orbit { series, lambda, basis, lattice } => cmd_orbit(cli, series, lambda, *basis, lattice),
        Command::Cech { command } => match command {
            CechCommand::H { nerve, k, ring } => cmd_cech_h(cli, nerve, *k, *ring),
            CechCommand::Chern { nerve, cocycle } => cmd_cech_chern(cli, nerve, cocycle),
        },
        Command::Audit { command } => match command {
            AuditCommand::Roots { series } => cmd_audit_roots(cli, series),
            AuditCommand::Matrix { n } => cmd_audit_matrix(cli, *n),
            AuditCommand::Kks { n, lambda, samples, seed } => cmd_audit_kks(cli, *n, lambda, *samples, *seed),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            let err = json!({ "error": { "kind": f.kind, "message": f.message, "line": f.line, "exit_code": f.code } });
            eprint!("{}", canonical_json(&err));
            ExitCode::from(f.code)
        }
    }
}
