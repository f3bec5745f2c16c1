//! Command-line front end for the qlskit toolkit.
//!
//! Exit codes are uniform across commands: 0 = pass, 1 = domain failure
//! (a well-formed input fails the checked property), 2 = input or usage
//! error (unreadable, unparseable, wrong kind, bad parameters).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qlskit::codes::{
    build_encoder, check_kl_generic, check_kl_paper, is_ueb, qlis_to_ueb, ueb_to_qlis,
    UnitaryFamily,
};
use qlskit::json::{encoder_to_value, qlis_to_value, qls_to_value, unitary_family_to_value, FileContent};
use qlskit::linalg::{classify_operator, Tolerance};
use qlskit::qlis::{check_orthogonal_qlis, validate_qlis, validate_skew_ppm};
use qlskit::qls::{
    check_mutually_orthogonal, check_orthogonal, classicality_obstruction, generate_cyclic_mols,
    validate_qls, FamilyMode, Method,
};
use qlskit::Error;

const EXIT_PASS: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "qlskit", version, about = "Verification toolkit for quantum Latin squares, isometry squares, and the codes they generate")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Absolute entrywise tolerance; env QLSKIT_TOL overrides the default
    /// 1e-9.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Emit one JSON report on stdout instead of human-readable lines.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized commands. Reserved: every current command is
    /// deterministic; accepted so scripts can pass it uniformly.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a qls, qlis, sppm, unitary_family, or encoder file.
    Validate { path: PathBuf },
    /// Check orthogonality of two squares of the same kind (qls or qlis).
    Orthogonal {
        a: PathBuf,
        b: PathBuf,
        /// Checker formulation; `all` runs every qls method and requires the
        /// verdicts to agree.
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
    },
    /// Check a family of qls files for mutual orthogonality.
    Moqls {
        #[arg(required = true, num_args = 2..)]
        paths: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = ModeArg::Both)]
        mode: ModeArg,
    },
    /// Build the error-detecting encoder from an orthogonal qlis pair and
    /// run both detection checks.
    Code {
        k: PathBuf,
        q: PathBuf,
        /// Write the encoder tensor here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a unitary family for the error-basis property, optionally
    /// converting to or from a diagonal isometry square.
    Ueb {
        path: PathBuf,
        /// Write the diagonal square built from the family.
        #[arg(long, value_name = "OUT", conflicts_with = "from_qlis")]
        to_qlis: Option<PathBuf>,
        /// Treat the input as a diagonal qlis file and recover the family.
        #[arg(long)]
        from_qlis: bool,
        /// With --from-qlis, write the recovered family here.
        #[arg(long, requires = "from_qlis")]
        out: Option<PathBuf>,
    },
    /// Generate the cyclic mutually orthogonal Latin squares of prime order
    /// p (count ≤ p−1) as qls files.
    GenMols {
        p: usize,
        count: usize,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Scan a qls file for an inner-product modulus outside {0,1}, a witness
    /// against equivalence to any classical square.
    Obstruction { path: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    All,
    Basis,
    #[value(name = "projector_sum")]
    ProjectorSum,
    Gram,
    Grmz,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Pairwise,
    Grmz,
    Both,
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::Domain(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

struct Output {
    json: bool,
}

impl Output {
    fn emit(&self, human: &[String], report: Value) {
        if self.json {
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        } else {
            for line in human {
                println!("{line}");
            }
        }
    }
}

fn resolve_tolerance(flag: Option<f64>) -> Result<Tolerance, Error> {
    if let Some(eps) = flag {
        return Tolerance::new(eps).map_err(|_| Error::Usage(format!("invalid --tol {eps}")));
    }
    if let Ok(text) = std::env::var("QLSKIT_TOL") {
        let eps: f64 = text
            .parse()
            .map_err(|_| Error::Usage(format!("invalid QLSKIT_TOL value {text:?}")))?;
        return Tolerance::new(eps).map_err(|_| Error::Usage(format!("invalid QLSKIT_TOL {eps}")));
    }
    Ok(Tolerance::default())
}

fn read(path: &Path) -> Result<FileContent, Error> {
    qlskit::json::read_file(path)
}

fn pass_str(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Output { json: cli.common.json };
    let tol = match resolve_tolerance(cli.common.tol) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("qlskit: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run(cli.command, tol, &out) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("qlskit: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}

fn run(command: Command, tol: Tolerance, out: &Output) -> Result<u8, Error> {
    match command {
        Command::Validate { path } => cmd_validate(&path, tol, out),
        Command::Orthogonal { a, b, method } => cmd_orthogonal(&a, &b, method, tol, out),
        Command::Moqls { paths, mode } => cmd_moqls(&paths, mode, tol, out),
        Command::Code { k, q, out: out_path } => cmd_code(&k, &q, out_path.as_deref(), tol, out),
        Command::Ueb { path, to_qlis, from_qlis, out: out_path } => {
            cmd_ueb(&path, to_qlis.as_deref(), from_qlis, out_path.as_deref(), tol, out)
        }
        Command::GenMols { p, count, out_dir } => cmd_gen_mols(p, count, &out_dir, tol, out),
        Command::Obstruction { path } => cmd_obstruction(&path, tol, out),
    }
}

fn cmd_validate(path: &Path, tol: Tolerance, out: &Output) -> Result<u8, Error> {
    let content = read(path)?;
    let name = path.display();
    let (pass, report, summary) = match &content {
        FileContent::Qls(q) => {
            let r = validate_qls(q, tol);
            let report = json!({
                "command": "validate",
                "type": "qls",
                "n": r.n,
                "pass": r.pass,
                "worst_violation": r.worst,
                "row_violations": r.row_violations,
                "col_violations": r.col_violations,
            });
            (r.pass, report, format!("worst violation {:.3e}", r.worst))
        }
        FileContent::Qlis(s) => {
            let r = validate_qlis(s, tol);
            let report = json!({
                "command": "validate",
                "type": "qlis",
                "n": s.n(),
                "d": s.d(),
                "pass": r.pass,
                "block_isometry": r.block_isometry,
                "row_orthogonality": r.row_orthogonality,
                "col_orthogonality": r.col_orthogonality,
                "completeness": r.completeness,
                "dims_ok": r.dims_ok,
            });
            (
                r.pass,
                report,
                format!("worst violation {:.3e}, dims_ok {}", r.worst, r.dims_ok),
            )
        }
        FileContent::Sppm(t) => {
            let r = validate_skew_ppm(t, tol);
            let report = json!({
                "command": "validate",
                "type": "sppm",
                "n": t.n(),
                "d": t.d(),
                "pass": r.pass,
                "partial_isometry": r.partial_isometry,
                "completeness": r.completeness,
                "cross_orthogonality": r.cross_orthogonality,
            });
            (r.pass, report, format!("worst violation {:.3e}", r.worst))
        }
        FileContent::UnitaryFamily { d, members } => {
            let worst = members
                .iter()
                .map(|u| u.dagger().matmul(u).max_abs_diff_identity())
                .fold(0.0f64, f64::max);
            let pass = members
                .iter()
                .all(|u| classify_operator(u, tol).is_unitary);
            let report = json!({
                "command": "validate",
                "type": "unitary_family",
                "d": d,
                "members": members.len(),
                "pass": pass,
                "worst_violation": worst,
            });
            (pass, report, format!("worst unitarity violation {worst:.3e}"))
        }
        FileContent::Encoder(e) => {
            let worst = e.isometry_violation();
            let pass = worst <= tol.eps();
            let report = json!({
                "command": "validate",
                "type": "encoder",
                "n": e.n(),
                "d": e.d(),
                "pass": pass,
                "isometry_violation": worst,
            });
            (pass, report, format!("isometry violation {worst:.3e}"))
        }
    };
    out.emit(
        &[format!("validate {name} [{}]: {} ({summary})", content.kind(), pass_str(pass))],
        report,
    );
    Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
}

fn cmd_orthogonal(
    a_path: &Path,
    b_path: &Path,
    method: MethodArg,
    tol: Tolerance,
    out: &Output,
) -> Result<u8, Error> {
    let a = read(a_path)?;
    let b = read(b_path)?;
    match (a, b) {
        (FileContent::Qls(a), FileContent::Qls(b)) => {
            let methods: Vec<Method> = match method {
                MethodArg::All => Method::ALL.to_vec(),
                MethodArg::Basis => vec![Method::Basis],
                MethodArg::ProjectorSum => vec![Method::ProjectorSum],
                MethodArg::Gram => vec![Method::Gram],
                MethodArg::Grmz => vec![Method::Grmz],
            };
            let mut lines = Vec::new();
            let mut entries = Vec::new();
            let mut verdicts = Vec::new();
            for m in &methods {
                let r = check_orthogonal(&a, &b, *m, tol)?;
                verdicts.push(r.pass);
                lines.push(format!(
                    "orthogonal [{}]: {} (violation {:.3e})",
                    m.name(),
                    pass_str(r.pass),
                    r.max_violation
                ));
                entries.push(json!({
                    "method": m.name(),
                    "pass": r.pass,
                    "max_violation": r.max_violation,
                    "witness": r.witness.map(|(i, j, p, q)| vec![i, j, p, q]),
                    "grmz_conditions": r.grmz_conditions.map(|c| c.to_vec()),
                }));
            }
            let agree = verdicts.windows(2).all(|w| w[0] == w[1]);
            let pass = agree && verdicts[0];
            if !agree {
                lines.push("checker methods DISAGREE; this indicates an implementation bug".into());
            }
            let report = json!({
                "command": "orthogonal",
                "kind": "qls",
                "n": a.n(),
                "methods": entries,
                "methods_agree": agree,
                "pass": pass,
            });
            lines.push(format!("orthogonal overall: {}", pass_str(pass)));
            out.emit(&lines, report);
            Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
        }
        (FileContent::Qlis(k), FileContent::Qlis(q)) => {
            if !matches!(method, MethodArg::All) {
                return Err(Error::Usage(
                    "--method selects qls formulations; qlis files always use the gram and frame routes".into(),
                ));
            }
            let r = check_orthogonal_qlis(&k, &q, tol)?;
            let report = json!({
                "command": "orthogonal",
                "kind": "qlis",
                "n": k.n(),
                "d": k.d(),
                "pass": r.pass,
                "nonzero_count": r.nonzero_count,
                "common_trace": r.common_trace,
                "gram_violation": r.gram_violation,
                "s_isometry_violation": r.s_isometry_violation,
            });
            out.emit(
                &[format!(
                    "orthogonal [qlis]: {} (nonzero parts {}, a = {:.6}, gram violation {:.3e}, frame violation {:.3e})",
                    pass_str(r.pass),
                    r.nonzero_count,
                    r.common_trace,
                    r.gram_violation,
                    r.s_isometry_violation
                )],
                report,
            );
            Ok(if r.pass { EXIT_PASS } else { EXIT_FAIL })
        }
        (a, b) => Err(Error::Usage(format!(
            "files must both be qls or both qlis, got {} and {}",
            a.kind(),
            b.kind()
        ))),
    }
}

fn cmd_moqls(paths: &[PathBuf], mode: ModeArg, tol: Tolerance, out: &Output) -> Result<u8, Error> {
    let mut family = Vec::new();
    for p in paths {
        match read(p)? {
            FileContent::Qls(q) => family.push(q),
            other => {
                return Err(Error::Usage(format!(
                    "{} is a {} file, expected qls",
                    p.display(),
                    other.kind()
                )))
            }
        }
    }
    let modes: Vec<FamilyMode> = match mode {
        ModeArg::Pairwise => vec![FamilyMode::Pairwise],
        ModeArg::Grmz => vec![FamilyMode::Grmz],
        ModeArg::Both => vec![FamilyMode::Pairwise, FamilyMode::Grmz],
    };
    let mut lines = Vec::new();
    let mut entries = Vec::new();
    let mut verdicts = Vec::new();
    for m in &modes {
        let r = check_mutually_orthogonal(&family, *m, tol)?;
        verdicts.push(r.pass);
        lines.push(format!(
            "moqls [{}]: {} (worst violation {:.3e}{})",
            m.name(),
            pass_str(r.pass),
            r.max_violation,
            r.worst_index
                .map(|(x, y)| format!(" at ({x},{y})"))
                .unwrap_or_default()
        ));
        entries.push(json!({
            "mode": m.name(),
            "pass": r.pass,
            "max_violation": r.max_violation,
            "worst_index": r.worst_index.map(|(x, y)| vec![x, y]),
        }));
    }
    let agree = verdicts.windows(2).all(|w| w[0] == w[1]);
    let pass = agree && verdicts[0];
    if !agree {
        lines.push("family modes DISAGREE; this indicates an implementation bug".into());
    }
    lines.push(format!("moqls overall ({} squares): {}", family.len(), pass_str(pass)));
    let report = json!({
        "command": "moqls",
        "squares": family.len(),
        "modes": entries,
        "modes_agree": agree,
        "pass": pass,
    });
    out.emit(&lines, report);
    Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
}

fn cmd_code(
    k_path: &Path,
    q_path: &Path,
    out_path: Option<&Path>,
    tol: Tolerance,
    out: &Output,
) -> Result<u8, Error> {
    let k = match read(k_path)? {
        FileContent::Qlis(s) => s,
        other => {
            return Err(Error::Usage(format!(
                "{} is a {} file, expected qlis",
                k_path.display(),
                other.kind()
            )))
        }
    };
    let q = match read(q_path)? {
        FileContent::Qlis(s) => s,
        other => {
            return Err(Error::Usage(format!(
                "{} is a {} file, expected qlis",
                q_path.display(),
                other.kind()
            )))
        }
    };
    let encoder = build_encoder(&k, &q, tol)?;
    let paper = check_kl_paper(&encoder, tol);
    let generic = check_kl_generic(&encoder, tol);
    let pass = paper.pass && generic.pass;
    if let Some(p) = out_path {
        qlskit::json::write_file(p, &encoder_to_value(&encoder))?;
    }
    let lines = vec![
        format!(
            "encoder legs ({}, {}, {}), isometry violation {:.3e}",
            encoder.n(),
            encoder.d(),
            encoder.n(),
            encoder.isometry_violation()
        ),
        format!(
            "detection sum conditions: {} (row {:.3e}, middle {:.3e}, column {:.3e})",
            pass_str(paper.pass),
            paper.row_violation,
            paper.middle_violation,
            paper.col_violation
        ),
        format!(
            "detection basis sweep: {} (worst violation {:.3e})",
            pass_str(generic.pass),
            generic.worst_violation
        ),
        format!("code overall: {}", pass_str(pass)),
    ];
    let report = json!({
        "command": "code",
        "n": encoder.n(),
        "d": encoder.d(),
        "isometry_violation": encoder.isometry_violation(),
        "paper_conditions": {
            "pass": paper.pass,
            "row_violation": paper.row_violation,
            "middle_violation": paper.middle_violation,
            "col_violation": paper.col_violation,
        },
        "generic_sweep": {
            "pass": generic.pass,
            "worst_violation": generic.worst_violation,
            "witness": generic.witness.as_ref().map(|w| json!({
                "leg": w.leg, "shift": w.shift, "clock": w.clock, "violation": w.violation,
            })),
        },
        "pass": pass,
    });
    out.emit(&lines, report);
    Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
}

fn cmd_ueb(
    path: &Path,
    to_qlis: Option<&Path>,
    from_qlis: bool,
    out_path: Option<&Path>,
    tol: Tolerance,
    out: &Output,
) -> Result<u8, Error> {
    if from_qlis {
        let square = match read(path)? {
            FileContent::Qlis(s) => s,
            other => {
                return Err(Error::Usage(format!(
                    "{} is a {} file, expected qlis with --from-qlis",
                    path.display(),
                    other.kind()
                )))
            }
        };
        let family = qlis_to_ueb(&square, tol)?;
        let round_trip = ueb_to_qlis(&family, tol)? == square;
        let r = is_ueb(&family, tol);
        if let Some(p) = out_path {
            qlskit::json::write_file(p, &unitary_family_to_value(family.d(), family.members()))?;
        }
        let report = json!({
            "command": "ueb",
            "direction": "from_qlis",
            "d": family.d(),
            "members": family.len(),
            "is_ueb": r.pass,
            "round_trip": round_trip,
            "pass": r.pass && round_trip,
        });
        out.emit(
            &[format!(
                "recovered {} unitaries on dimension {}: UEB {}, round trip {}",
                family.len(),
                family.d(),
                pass_str(r.pass),
                pass_str(round_trip)
            )],
            report,
        );
        return Ok(if r.pass && round_trip { EXIT_PASS } else { EXIT_FAIL });
    }

    let (d, members) = match read(path)? {
        FileContent::UnitaryFamily { d, members } => (d, members),
        other => {
            return Err(Error::Usage(format!(
                "{} is a {} file, expected unitary_family",
                path.display(),
                other.kind()
            )))
        }
    };
    let family = UnitaryFamily::new(d, members, tol)?;
    let r = is_ueb(&family, tol);
    let mut lines = vec![format!(
        "unitary family (d = {}, {} members): UEB {} (offdiag {:.3e}, self {:.3e})",
        d,
        family.len(),
        pass_str(r.pass),
        r.worst_offdiag,
        r.worst_self
    )];
    let mut round_trip = None;
    if let Some(p) = to_qlis {
        let square = ueb_to_qlis(&family, tol)?;
        round_trip = Some(qlis_to_ueb(&square, tol)?.members() == family.members());
        qlskit::json::write_file(p, &qlis_to_value(&square))?;
        lines.push(format!(
            "wrote diagonal square {}; round trip {}",
            p.display(),
            pass_str(round_trip.unwrap())
        ));
    }
    let pass = r.pass && round_trip.unwrap_or(true);
    let report = json!({
        "command": "ueb",
        "direction": "family",
        "d": d,
        "members": family.len(),
        "expected_members": r.expected_count,
        "worst_offdiag": r.worst_offdiag,
        "worst_self": r.worst_self,
        "is_ueb": r.pass,
        "round_trip": round_trip,
        "pass": pass,
    });
    out.emit(&lines, report);
    Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
}

fn cmd_gen_mols(
    p: usize,
    count: usize,
    out_dir: &Path,
    tol: Tolerance,
    out: &Output,
) -> Result<u8, Error> {
    let family = generate_cyclic_mols(p, count)?;
    std::fs::create_dir_all(out_dir)
        .map_err(|e| Error::Usage(format!("cannot create {}: {e}", out_dir.display())))?;
    let mut paths = Vec::new();
    for (idx, square) in family.iter().enumerate() {
        let r = validate_qls(square, tol);
        if !r.pass {
            return Err(Error::Domain(format!(
                "generated square {} failed self-validation (violation {:.3e})",
                idx + 1,
                r.worst
            )));
        }
        let path = out_dir.join(format!("mols_p{p}_k{}.json", idx + 1));
        qlskit::json::write_file(&path, &qls_to_value(square))?;
        paths.push(path.display().to_string());
    }
    let report = json!({
        "command": "gen_mols",
        "p": p,
        "count": count,
        "files": paths,
        "pass": true,
    });
    out.emit(
        &[format!("wrote {count} cyclic squares of order {p} to {}", out_dir.display())],
        report,
    );
    Ok(EXIT_PASS)
}

fn cmd_obstruction(path: &Path, tol: Tolerance, out: &Output) -> Result<u8, Error> {
    let q = match read(path)? {
        FileContent::Qls(q) => q,
        other => {
            return Err(Error::Usage(format!(
                "{} is a {} file, expected qls",
                path.display(),
                other.kind()
            )))
        }
    };
    match classicality_obstruction(&q, tol) {
        Some(w) => {
            let report = json!({
                "command": "obstruction",
                "witness": {
                    "cell_a": [w.row_a, w.col_a],
                    "cell_b": [w.row_b, w.col_b],
                    "value": w.value,
                },
                "conclusive": true,
            });
            out.emit(
                &[format!(
                    "witness: |⟨({},{})|({},{})⟩| = {:.12} is neither 0 nor 1; not equivalent to a classical square",
                    w.row_a, w.col_a, w.row_b, w.col_b, w.value
                )],
                report,
            );
        }
        None => {
            let report = json!({
                "command": "obstruction",
                "witness": Value::Null,
                "conclusive": false,
            });
            out.emit(
                &["inconclusive: all pairwise inner-product moduli lie in {0, 1}".into()],
                report,
            );
        }
    }
    Ok(EXIT_PASS)
}
