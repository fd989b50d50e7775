//! Command-line front end. Every number in the JSON output is a decimal
//! string ("p" or "p/q"), never floating point, so golden-file comparisons
//! are exact. One JSON object per result line on stdout, diagnostics on
//! stderr.
//!
//! Exit codes: 0 ok, 1 precondition failed or usage, 2 an expected-empty
//! search returned results, 3 internal error.

use arithsurf::chatelet::{self, ResidueTarget, Variant};
use arithsurf::exactnum::{format_rational, parse_rational, ExactRational, ProjectivePoint};
use arithsurf::{enriques, fermat, kummer, markoff, par, Error, Limits};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "arithsurf",
    version,
    about = "Exact rational-point computations on quartic, quintic and cubic surfaces"
)]
struct Cli {
    /// Worker threads for grid searches (0 = all cores, 1 = sequential).
    /// Falls back to the ARITHSURF_WORKERS environment variable.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Abort multiplication chains when coordinates exceed this many digits.
    #[arg(long, global = true, default_value_t = 10_000)]
    max_digits: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The quartic x^4+y^4 = z^4+w^4.
    #[command(subcommand)]
    Fermat(FermatCmd),
    /// The quintic x0*x2^4+x1*x3^4 = x0^2*x1^3+x0^3*x1^2.
    #[command(subcommand)]
    Enriques(EnriquesCmd),
    /// The cubic surfaces t(x^2+y^2) = (cz-7t)(z^2-2t^2).
    #[command(subcommand)]
    Chatelet(ChateletCmd),
    /// Nonsquare-value witnesses on products of elliptic cubics.
    #[command(subcommand)]
    Kummer(KummerCmd),
    /// The surface x^2+y^2+z^2 = 3xyz over positive integers.
    #[command(subcommand)]
    Markoff(MarkoffCmd),
}

#[derive(Subcommand)]
enum FermatCmd {
    /// Print the eight rational lines as pairs of linear forms.
    Lines,
    /// Multiples of the section of one fiber, embedded into the quartic.
    Gen(GenArgs),
    /// Walk a point through fiberwise multiplications.
    Compose(ComposeArgs),
    /// Kernel dimension of degree-d forms vanishing on points read as JSON lines.
    Density(DensityArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Fiber parameter, "p" or "p/q".
    #[arg(long)]
    lambda: String,
    #[arg(long)]
    count: usize,
}

#[derive(Args)]
struct ComposeArgs {
    /// Starting point, comma-separated integers "x,y,z,w".
    #[arg(long)]
    seed: String,
    /// Steps like "lambda:2,mu:-1" (empty string for none).
    #[arg(long, default_value = "")]
    pattern: String,
}

#[derive(Args)]
struct DensityArgs {
    #[arg(long)]
    degree: u32,
    /// File of JSON lines {"point":[...]}; stdin when omitted.
    #[arg(long)]
    input: Option<String>,
}

#[derive(Subcommand)]
enum EnriquesCmd {
    /// Surface membership and lift classification of one point.
    Check(PointArgs),
    /// Pushforward of a quartic point.
    Push(PointArgs),
    /// Height-bounded enumeration with lift classification per point.
    Scan(HeightArgs),
}

#[derive(Args)]
struct PointArgs {
    /// Comma-separated integers "a0,a1,a2,a3".
    #[arg(long)]
    point: String,
}

#[derive(Args)]
struct HeightArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    height: u32,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    height: u32,
    /// Drop the component filter (control runs rediscover known points).
    #[arg(long)]
    no_filter: bool,
}

#[derive(Subcommand)]
enum ChateletCmd {
    /// Multiples of the seed (1,1,2) along its fiber on variant A.
    Seed(CountArgs),
    /// Rational point congruent to prescribed residues at several primes.
    Wwap(WwapArgs),
    /// Expected-empty search in the component |z/t| <= sqrt(2) of variant A.
    Wapscan(ScanArgs),
    /// Expected-empty search in a 2-adic neighbourhood on variant B.
    #[command(name = "2adic")]
    TwoAdic(ScanArgs),
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    count: usize,
}

#[derive(Args)]
struct WwapArgs {
    /// JSON file: array of {"ell","xi","mu","lambda"} decimal strings.
    #[arg(long)]
    targets: String,
    /// Smallest admissible prime.
    #[arg(long, default_value_t = chatelet::DEFAULT_L0)]
    l0: u64,
}

#[derive(Subcommand)]
enum KummerCmd {
    Witness(WitnessArgs),
}

#[derive(Args)]
struct WitnessArgs {
    /// Cubic coefficients, highest degree first, e.g. "1,0,0,-2".
    #[arg(long)]
    f1: String,
    /// Marked point "a,b" on y^2 = f1.
    #[arg(long)]
    p1: String,
    #[arg(long)]
    f2: String,
    #[arg(long)]
    p2: String,
    #[arg(long)]
    count: usize,
}

#[derive(Subcommand)]
enum MarkoffCmd {
    /// Breadth-first orbit of (1,1,1) under Vieta moves.
    Orbit(BoundArgs),
    /// Orbit equals exhaustive enumeration at the bound.
    Verify(BoundArgs),
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    bound: u64,
    /// Accepted for compatibility; output is always JSON.
    #[arg(long)]
    #[allow(dead_code)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let workers = cli
        .workers
        .or_else(|| {
            std::env::var("ARITHSURF_WORKERS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(0);
    par::init_pool(workers);
    let limits = Limits {
        max_digits: cli.max_digits,
        ..Limits::default()
    };
    match run(cli.command, limits) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Internal(_) | Error::TheoremViolation(_) => ExitCode::from(3),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(command: Command, limits: Limits) -> Result<ExitCode, Error> {
    match command {
        Command::Fermat(cmd) => fermat_cmd(cmd, limits),
        Command::Enriques(cmd) => enriques_cmd(cmd),
        Command::Chatelet(cmd) => chatelet_cmd(cmd, limits),
        Command::Kummer(cmd) => kummer_cmd(cmd, limits),
        Command::Markoff(cmd) => markoff_cmd(cmd),
    }
}

fn point_json(p: &ProjectivePoint) -> Value {
    Value::Array(
        p.coords()
            .iter()
            .map(|c| Value::String(c.to_string()))
            .collect(),
    )
}

fn parse_point(s: &str) -> Result<ProjectivePoint, Error> {
    let coords: Result<Vec<BigInt>, _> = s.split(',').map(|c| c.trim().parse::<BigInt>()).collect();
    let coords = coords.map_err(|_| Error::InvalidInput(format!("bad point: {s:?}")))?;
    ProjectivePoint::new(coords)
}

fn parse_rational_pair(s: &str) -> Result<(ExactRational, ExactRational), Error> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(Error::InvalidInput(format!("expected \"a,b\": {s:?}")));
    }
    Ok((parse_rational(parts[0])?, parse_rational(parts[1])?))
}

fn emit(v: Value) {
    println!("{v}");
}

fn fermat_cmd(cmd: FermatCmd, limits: Limits) -> Result<ExitCode, Error> {
    match cmd {
        FermatCmd::Lines => {
            for line in fermat::rational_lines() {
                let forms: Vec<Value> = line
                    .forms
                    .iter()
                    .map(|f| {
                        let mut coeffs = vec![BigInt::from(0); 4];
                        for (exp, c) in f.terms() {
                            let idx = exp.iter().position(|&e| e == 1).expect("linear");
                            coeffs[idx] = c.clone();
                        }
                        Value::Array(
                            coeffs
                                .into_iter()
                                .map(|c| Value::String(c.to_string()))
                                .collect(),
                        )
                    })
                    .collect();
                emit(json!({ "line": forms }));
            }
            Ok(ExitCode::SUCCESS)
        }
        FermatCmd::Gen(args) => {
            let lambda = parse_rational(&args.lambda)?;
            let points = fermat::generate_lambda_points(lambda, args.count, limits)?;
            for p in &points {
                emit(json!({ "point": point_json(p) }));
            }
            Ok(ExitCode::SUCCESS)
        }
        FermatCmd::Compose(args) => {
            let seed = parse_point(&args.seed)?;
            let pattern = parse_pattern(&args.pattern)?;
            let out = fermat::compose_generate(&seed, &pattern, limits)?;
            emit(json!({ "point": point_json(&out) }));
            Ok(ExitCode::SUCCESS)
        }
        FermatCmd::Density(args) => {
            let points = read_points(args.input.as_deref())?;
            let dim = fermat::density_certificate(&points, args.degree)?;
            emit(json!({
                "kernel_dimension": dim.to_string(),
                "points": points.len().to_string(),
            }));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_pattern(s: &str) -> Result<Vec<(fermat::FibrationTag, i64)>, Error> {
    let mut out = Vec::new();
    for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (tag, n) = tok
            .split_once(':')
            .ok_or_else(|| Error::InvalidInput(format!("bad pattern step: {tok:?}")))?;
        let tag = match tag.trim() {
            "lambda" | "l" => fermat::FibrationTag::Lambda,
            "mu" | "m" => fermat::FibrationTag::Mu,
            other => return Err(Error::InvalidInput(format!("unknown fibration: {other:?}"))),
        };
        let n: i64 = n
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad multiplier: {tok:?}")))?;
        out.push((tag, n));
    }
    Ok(out)
}

fn read_points(input: Option<&str>) -> Result<Vec<ProjectivePoint>, Error> {
    let text = match input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {path}: {e}")))?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| Error::InvalidInput(format!("cannot read stdin: {e}")))?;
            buf
        }
    };
    let mut points = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        let v: Value = serde_json::from_str(line)
            .map_err(|e| Error::InvalidInput(format!("bad JSON line: {e}")))?;
        let arr = v
            .get("point")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidInput("line without a \"point\" array".into()))?;
        let coords: Result<Vec<BigInt>, Error> = arr
            .iter()
            .map(|c| {
                c.as_str()
                    .ok_or_else(|| Error::InvalidInput("coordinates must be strings".into()))?
                    .parse::<BigInt>()
                    .map_err(|_| Error::InvalidInput("bad integer coordinate".into()))
            })
            .collect();
        points.push(ProjectivePoint::new(coords?)?);
    }
    Ok(points)
}

fn enriques_cmd(cmd: EnriquesCmd) -> Result<ExitCode, Error> {
    match cmd {
        EnriquesCmd::Check(args) => {
            let p = parse_point(&args.point)?;
            if !enriques::on_e(&p) {
                emit(json!({ "on_surface": false }));
                return Ok(ExitCode::SUCCESS);
            }
            let lift = enriques::lift_check(&p)?;
            emit(json!({ "on_surface": true, "lift": lift_json(&lift) }));
            Ok(ExitCode::SUCCESS)
        }
        EnriquesCmd::Push(args) => {
            let p = parse_point(&args.point)?;
            let image = enriques::push_from_f(&p)?;
            let lift = enriques::lift_check(&image)?;
            emit(json!({ "point": point_json(&image), "lift": lift_json(&lift) }));
            Ok(ExitCode::SUCCESS)
        }
        EnriquesCmd::Scan(args) => {
            let report = enriques::height_scan(args.height);
            for (p, lift) in &report.points {
                emit(json!({ "point": point_json(p), "lift": lift_json(lift) }));
            }
            for p in &report.violations {
                emit(json!({ "point": point_json(p), "lift": "VIOLATION" }));
            }
            emit(json!({
                "count": report.points.len().to_string(),
                "violations": report.violations.len().to_string(),
            }));
            if report.violations.is_empty() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(2))
            }
        }
    }
}

fn lift_json(lift: &enriques::LiftResult) -> Value {
    match lift.witness() {
        Some(w) => json!({ "cover": lift.cover_tag(), "witness": w.to_string() }),
        None => json!({ "cover": lift.cover_tag() }),
    }
}

fn chatelet_cmd(cmd: ChateletCmd, limits: Limits) -> Result<ExitCode, Error> {
    match cmd {
        ChateletCmd::Seed(args) => {
            for p in chatelet::generate_seed_points(args.count, limits)? {
                emit(json!({
                    "xi": format_rational(&p.xi),
                    "mu": format_rational(&p.mu),
                    "lambda": format_rational(&p.lambda),
                }));
            }
            Ok(ExitCode::SUCCESS)
        }
        ChateletCmd::Wwap(args) => {
            let targets = read_targets(&args.targets, args.l0)?;
            let point = chatelet::wwap_solve(&targets)?;
            emit(json!({ "point": point_json(&point) }));
            for t in &targets {
                emit(json!({ "ell": t.ell().to_string(), "ok": true }));
            }
            Ok(ExitCode::SUCCESS)
        }
        ChateletCmd::Wapscan(args) => {
            let found = if args.no_filter {
                chatelet::height_scan(Variant::A, args.height, chatelet::ScanFilter::None)
            } else {
                chatelet::wap_failure_search(args.height)
            };
            emit(json!({ "found": found.iter().map(point_json).collect::<Vec<_>>() }));
            if !args.no_filter && !found.is_empty() {
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
        ChateletCmd::TwoAdic(args) => {
            let found = if args.no_filter {
                chatelet::height_scan(Variant::B, args.height, chatelet::ScanFilter::None)
            } else {
                chatelet::two_adic_search(args.height)
            };
            emit(json!({ "found": found.iter().map(point_json).collect::<Vec<_>>() }));
            if !args.no_filter && !found.is_empty() {
                return Ok(ExitCode::from(2));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn read_targets(path: &str, l0: u64) -> Result<Vec<ResidueTarget>, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {path}: {e}")))?;
    let v: Value = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("bad targets JSON: {e}")))?;
    let arr = v
        .as_array()
        .ok_or_else(|| Error::InvalidInput("targets file must hold an array".into()))?;
    let field = |obj: &Value, key: &str| -> Result<BigInt, Error> {
        obj.get(key)
            .and_then(Value::as_str)
            .ok_or_else(|| Error::InvalidInput(format!("target missing string field {key:?}")))?
            .parse::<BigInt>()
            .map_err(|_| Error::InvalidInput(format!("bad integer in field {key:?}")))
    };
    arr.iter()
        .map(|obj| {
            ResidueTarget::new(
                field(obj, "ell")?,
                field(obj, "xi")?,
                field(obj, "mu")?,
                field(obj, "lambda")?,
                l0,
            )
        })
        .collect()
}

fn kummer_cmd(cmd: KummerCmd, limits: Limits) -> Result<ExitCode, Error> {
    let KummerCmd::Witness(args) = cmd;
    let d1 = parse_cubic_data(&args.f1, &args.p1)?;
    let d2 = parse_cubic_data(&args.f2, &args.p2)?;
    let z = kummer::z_curve(&d1, &d2, limits)?;
    let report = kummer::generate_witnesses(&z, &d1, &d2, args.count)?;
    for w in &report.witnesses {
        emit(json!({
            "u1": format_rational(&w.u1),
            "u2": format_rational(&w.u2),
            "w": format_rational(&w.w),
        }));
    }
    emit(json!({
        "tried": report.tried.to_string(),
        "retained": report.witnesses.len().to_string(),
    }));
    Ok(ExitCode::SUCCESS)
}

fn parse_cubic_data(f: &str, p: &str) -> Result<kummer::EllipticCubicData, Error> {
    let coeffs: Result<Vec<BigInt>, _> = f.split(',').map(|c| c.trim().parse::<BigInt>()).collect();
    let coeffs = coeffs.map_err(|_| Error::InvalidInput(format!("bad cubic: {f:?}")))?;
    let coeffs: [BigInt; 4] = coeffs
        .try_into()
        .map_err(|_| Error::InvalidInput("cubic needs exactly four coefficients".into()))?;
    kummer::EllipticCubicData::new(coeffs, parse_rational_pair(p)?)
}

fn markoff_cmd(cmd: MarkoffCmd) -> Result<ExitCode, Error> {
    match cmd {
        MarkoffCmd::Orbit(args) => {
            let triples: Vec<Value> = markoff::orbit(args.bound)
                .iter()
                .map(|t| {
                    let (x, y, z) = t.coords();
                    json!([x.to_string(), y.to_string(), z.to_string()])
                })
                .collect();
            emit(json!({ "orbit": triples }));
            Ok(ExitCode::SUCCESS)
        }
        MarkoffCmd::Verify(args) => {
            let equal = markoff::verify_single_orbit(args.bound);
            emit(json!({ "equal": equal }));
            Ok(ExitCode::SUCCESS)
        }
    }
}
