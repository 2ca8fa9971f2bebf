//! Command-line front end for the coding engine.
//!
//! Subcommands: `field` and `matrix` print arithmetic facts and the
//! structured matrices, `construct` builds and verifies a named family
//! instance, `verify` replays a construct report or checks a raw product
//! spec, `table` sweeps every family over one field, and `distance`
//! certifies a product distance. Exit codes: 0 all checks passed, 1 usage
//! error, 2 mathematical failure (failed hypothesis, mismatched claim,
//! missing dual containment).

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use qlrc_core::{
    build_family, check_dual_containing, euclidean_selforth_matrix, hermitian_ordered_matrix,
    hermitian_selforth_matrix, make_field, mpc_code, mpc_distance, mpc_dual,
    mpc_dual_distance_bound, reproduce_table, vandermonde, CertKind, DistanceCertificate,
    DistanceValue, DualKind, FMatrix, FamilyBuild, FamilyClaims, FamilyRequest, FieldDescriptor,
    GramReportDescriptor, MpcSpec, MpcSpecDescriptor, QlrcReport, RecoveryStructure,
    SelforthVariant, TableRow, VerificationLevel, DEFAULT_BUDGET,
};

#[derive(Parser)]
#[command(
    name = "qlrc",
    version,
    about = "Matrix-product quantum LRC engine",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFmt {
    Json,
    Tsv,
    Pretty,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MatrixKind {
    /// Plain evaluation matrix on the first h field elements
    Vandermonde,
    /// Whole-field matrix with anti-diagonal Euclidean Gram
    Adot,
    /// Whole-field matrix with monomial Hermitian Gram (square order)
    Addot,
    /// Rows of the whole-field matrix reordered by the Hermitian pairing
    Bsigma,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CliDualKind {
    Euclidean,
    Hermitian,
}

impl From<CliDualKind> for DualKind {
    fn from(k: CliDualKind) -> DualKind {
        match k {
            CliDualKind::Euclidean => DualKind::Euclidean,
            CliDualKind::Hermitian => DualKind::Hermitian,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Print arithmetic facts for GF(p^m)
    Field {
        #[arg(long)]
        p: u16,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, value_enum, default_value_t = OutFmt::Pretty)]
        out: OutFmt,
    },
    /// Print a structured matrix together with its Gram matrix
    Matrix {
        #[arg(long, value_enum)]
        kind: MatrixKind,
        #[arg(long)]
        p: u16,
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Row count (defaults to the full square matrix)
        #[arg(long)]
        s: Option<usize>,
        /// Evaluation point count for the vandermonde kind (defaults to q)
        #[arg(long)]
        h: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutFmt::Pretty)]
        out: OutFmt,
    },
    /// Build a named family instance and machine-verify its claims
    Construct {
        /// One of: main_euclidean, main_euclidean2, el36_3, el36_4,
        /// euclidean_optimal, eel41, enlarged, main_hermitian, el46
        #[arg(long)]
        family: String,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        q0: Option<u64>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        h: Option<usize>,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        i: Option<usize>,
        #[arg(long)]
        j: Option<usize>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        /// Comma-separated constituent dimensions, largest first
        #[arg(long)]
        klist: Option<String>,
        /// Run the full machine verification regardless of length
        #[arg(long)]
        deep: bool,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value_t = OutFmt::Json)]
        out: OutFmt,
    },
    /// Re-verify a construct report or a raw product spec (- reads stdin)
    Verify {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        deep: bool,
        #[arg(long)]
        budget: Option<u64>,
        /// Inner product to check for raw spec input
        #[arg(long, value_enum, default_value_t = CliDualKind::Euclidean)]
        kind: CliDualKind,
        #[arg(long, value_enum, default_value_t = OutFmt::Json)]
        out: OutFmt,
    },
    /// Sweep every family over GF(q) and print the optimal-parameter table
    Table {
        #[arg(long)]
        q: u64,
        /// Fully machine-verify rows longer than the default cutoff
        #[arg(long)]
        deep: bool,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value_t = OutFmt::Tsv)]
        out: OutFmt,
    },
    /// Certified minimum distance of a product spec (- reads stdin)
    Distance {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum, default_value_t = OutFmt::Json)]
        out: OutFmt,
    },
}

enum CliError {
    Usage(String),
    Math(qlrc_core::Error),
}

impl From<qlrc_core::Error> for CliError {
    fn from(e: qlrc_core::Error) -> Self {
        CliError::Math(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("cannot read input: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(format!("malformed JSON input: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage_failure = e.use_stderr();
            let _ = e.print();
            return if usage_failure {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Math(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn resolve_budget(flag: Option<u64>) -> u64 {
    flag.or_else(|| {
        std::env::var("QLRC_BUDGET")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(DEFAULT_BUDGET)
}

fn run(cmd: Cmd) -> Result<(), CliError> {
    match cmd {
        Cmd::Field { p, m, out } => cmd_field(p, m, out),
        Cmd::Matrix {
            kind,
            p,
            m,
            s,
            h,
            out,
        } => cmd_matrix(kind, p, m, s, h, out),
        Cmd::Construct {
            family,
            q,
            q0,
            m,
            h,
            t,
            d,
            i,
            j,
            a,
            b,
            klist,
            deep,
            budget,
            out,
        } => {
            let req = parse_family(
                &family,
                FamilyArgs {
                    q,
                    q0,
                    m,
                    h,
                    t,
                    d,
                    i,
                    j,
                    a,
                    b,
                    klist,
                },
            )?;
            let build = build_family(&req, deep, resolve_budget(budget))?;
            emit_construct(&construct_output(&build), out);
            Ok(())
        }
        Cmd::Verify {
            spec,
            deep,
            budget,
            kind,
            out,
        } => cmd_verify(&spec, deep, resolve_budget(budget), kind.into(), out),
        Cmd::Table {
            q,
            deep,
            budget,
            out,
        } => {
            let rows = reproduce_table(q, deep, resolve_budget(budget))?;
            emit_table(&rows, out);
            Ok(())
        }
        Cmd::Distance { spec, budget, out } => {
            let mpc = load_spec(&spec)?;
            let cert = mpc_distance(&mpc, resolve_budget(budget));
            emit_distance(&cert, out);
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// field

#[derive(Serialize)]
struct FieldOutput {
    field: FieldDescriptor,
    q: usize,
    lambda: u16,
    #[serde(skip_serializing_if = "Option::is_none")]
    conjugation_base: Option<usize>,
    elements: Vec<u16>,
}

fn cmd_field(p: u16, m: u32, out: OutFmt) -> Result<(), CliError> {
    let field = make_field(p, m)?;
    let payload = FieldOutput {
        field: field.descriptor(),
        q: field.q(),
        lambda: field.lambda(),
        conjugation_base: field.conjugation_base(),
        elements: field.elements().to_vec(),
    };
    match out {
        OutFmt::Json => println!("{}", serde_json::to_string(&payload).expect("serializable")),
        OutFmt::Tsv => {
            println!("p\tm\tq\tlambda\tconjugation_base");
            println!(
                "{}\t{}\t{}\t{}\t{}",
                p,
                m,
                payload.q,
                payload.lambda,
                payload
                    .conjugation_base
                    .map_or("-".to_string(), |b| b.to_string())
            );
        }
        OutFmt::Pretty => {
            println!("GF({}) = GF({}^{})", payload.q, p, m);
            println!(
                "modulus coefficients (low to high): {:?}",
                payload.field.modulus
            );
            println!("lambda (p - 1)/2 = {}", payload.lambda);
            if let Some(b) = payload.conjugation_base {
                println!("conjugation x -> x^{b}");
            }
            println!("elements in enumeration order: {:?}", payload.elements);
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// matrix

#[derive(Serialize)]
struct MatrixOutput {
    field: FieldDescriptor,
    kind: String,
    /// Plain evaluation matrix on the same points, for the whole-field kind.
    #[serde(skip_serializing_if = "Option::is_none")]
    vandermonde: Option<Vec<Vec<u16>>>,
    matrix: Vec<Vec<u16>>,
    gram_kind: String,
    gram: Vec<Vec<u16>>,
    /// Row pairing sigma with gram[i][sigma[i]] nonzero, for Hermitian kinds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pairing: Option<Vec<usize>>,
}

fn rows_of(m: &FMatrix) -> Vec<Vec<u16>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

fn cmd_matrix(
    kind: MatrixKind,
    p: u16,
    m: u32,
    s: Option<usize>,
    h: Option<usize>,
    out: OutFmt,
) -> Result<(), CliError> {
    let field = make_field(p, m)?;
    let q = field.q();
    let payload = match kind {
        MatrixKind::Vandermonde => {
            let h = h.unwrap_or(q);
            let s = s.unwrap_or(h);
            let a = vandermonde(&field, h, s)?;
            let gram = a.gram_euclidean();
            MatrixOutput {
                field: field.descriptor(),
                kind: "vandermonde".into(),
                vandermonde: None,
                matrix: rows_of(&a),
                gram_kind: "euclidean".into(),
                gram: rows_of(&gram),
                pairing: None,
            }
        }
        MatrixKind::Adot => {
            let (a, _) = euclidean_selforth_matrix(&field, q, SelforthVariant::FullQ)?;
            let plain = vandermonde(&field, q, q)?;
            MatrixOutput {
                field: field.descriptor(),
                kind: "adot".into(),
                vandermonde: Some(rows_of(&plain)),
                matrix: rows_of(&a),
                gram_kind: "euclidean".into(),
                gram: rows_of(&a.gram_euclidean()),
                pairing: None,
            }
        }
        MatrixKind::Addot => {
            let (a, sigma) = hermitian_selforth_matrix(&field)?;
            MatrixOutput {
                field: field.descriptor(),
                kind: "addot".into(),
                vandermonde: None,
                gram: rows_of(&a.gram_hermitian()?),
                matrix: rows_of(&a),
                gram_kind: "hermitian".into(),
                pairing: Some(sigma),
            }
        }
        MatrixKind::Bsigma => {
            let s = s.unwrap_or(q);
            let a = hermitian_ordered_matrix(&field, s)?;
            MatrixOutput {
                field: field.descriptor(),
                kind: "bsigma".into(),
                vandermonde: None,
                gram: rows_of(&a.gram_hermitian()?),
                matrix: rows_of(&a),
                gram_kind: "hermitian".into(),
                pairing: None,
            }
        }
    };
    match out {
        OutFmt::Json => println!("{}", serde_json::to_string(&payload).expect("serializable")),
        OutFmt::Tsv => {
            if let Some(v) = &payload.vandermonde {
                print_tsv_matrix("vandermonde", v);
            }
            print_tsv_matrix("matrix", &payload.matrix);
            print_tsv_matrix(&format!("gram_{}", payload.gram_kind), &payload.gram);
        }
        OutFmt::Pretty => {
            println!("GF({}), kind {}", q, payload.kind);
            if let Some(v) = &payload.vandermonde {
                println!("plain evaluation matrix:");
                print_pretty_matrix(v);
            }
            println!("matrix:");
            print_pretty_matrix(&payload.matrix);
            println!("gram ({}):", payload.gram_kind);
            print_pretty_matrix(&payload.gram);
            if let Some(sigma) = &payload.pairing {
                println!("row pairing: {sigma:?}");
            }
        }
    }
    Ok(())
}

fn print_tsv_matrix(label: &str, rows: &[Vec<u16>]) {
    for row in rows {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        println!("{label}\t{}", cells.join("\t"));
    }
}

fn print_pretty_matrix(rows: &[Vec<u16>]) {
    let width = rows
        .iter()
        .flatten()
        .map(|x| x.to_string().len())
        .max()
        .unwrap_or(1);
    for row in rows {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
        println!("  {}", cells.join(" "));
    }
}

// ---------------------------------------------------------------------------
// construct

struct FamilyArgs {
    q: Option<u64>,
    q0: Option<u64>,
    m: Option<usize>,
    h: Option<usize>,
    t: Option<usize>,
    d: Option<usize>,
    i: Option<usize>,
    j: Option<usize>,
    a: Option<usize>,
    b: Option<usize>,
    klist: Option<String>,
}

fn need<T>(v: Option<T>, name: &str, family: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("--{name} is required for family {family}")))
}

fn parse_klist(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|part| {
            part.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad klist entry {part:?}")))
        })
        .collect()
}

fn parse_family(family: &str, args: FamilyArgs) -> Result<FamilyRequest, CliError> {
    let FamilyArgs {
        q,
        q0,
        m,
        h,
        t,
        d,
        i,
        j,
        a,
        b,
        klist,
    } = args;
    Ok(match family {
        "main_euclidean" => FamilyRequest::MainEuclidean {
            q: need(q, "q", family)?,
            h: need(h, "h", family)?,
            m: need(m, "m", family)?,
            klist: parse_klist(&need(klist, "klist", family)?)?,
        },
        "main_euclidean2" => FamilyRequest::MainEuclidean2 {
            q: need(q, "q", family)?,
            h: need(h, "h", family)?,
            m: need(m, "m", family)?,
            klist: parse_klist(&need(klist, "klist", family)?)?,
        },
        "el36_3" => FamilyRequest::El36_3 {
            q: need(q, "q", family)?,
            i: need(i, "i", family)?,
            j: need(j, "j", family)?,
        },
        "el36_4" => FamilyRequest::El36_4 {
            q: need(q, "q", family)?,
            h: need(h, "h", family)?,
            i: need(i, "i", family)?,
            j: need(j, "j", family)?,
        },
        "euclidean_optimal" => FamilyRequest::EuclideanOptimal {
            q: need(q, "q", family)?,
            t: need(t, "t", family)?,
            d: need(d, "d", family)?,
        },
        "eel41" => FamilyRequest::EEl41 {
            q: need(q, "q", family)?,
            m: need(m, "m", family)?,
            h: need(h, "h", family)?,
            t: need(t, "t", family)?,
            d: need(d, "d", family)?,
        },
        "enlarged" => FamilyRequest::Enlarged {
            q: need(q, "q", family)?,
            m: need(m, "m", family)?,
            h: h.unwrap_or(2),
        },
        "main_hermitian" => FamilyRequest::MainHermitian {
            q0: need(q0, "q0", family)?,
            a: a.unwrap_or(0),
            klist: parse_klist(&need(klist, "klist", family)?)?,
        },
        "el46" => FamilyRequest::El46 {
            q0: need(q0, "q0", family)?,
            a: need(a, "a", family)?,
            b: need(b, "b", family)?,
        },
        other => {
            return Err(CliError::Usage(format!("unknown family {other:?}")));
        }
    })
}

#[derive(Serialize, Deserialize)]
struct ConstructOutput {
    request: FamilyRequest,
    claims: FamilyClaims,
    level: VerificationLevel,
    report: QlrcReport,
    structure: RecoveryStructure,
    #[serde(skip_serializing_if = "Option::is_none")]
    spec: Option<MpcSpecDescriptor>,
}

fn construct_output(build: &FamilyBuild) -> ConstructOutput {
    ConstructOutput {
        request: build.request.clone(),
        claims: build.claims,
        level: build.level,
        report: build.report.clone(),
        structure: build.structure.clone(),
        spec: build.spec.as_ref().map(|s| s.descriptor()),
    }
}

fn level_str(level: VerificationLevel) -> &'static str {
    match level {
        VerificationLevel::Full => "full",
        VerificationLevel::Parameter => "parameter",
    }
}

fn distance_value_str(v: DistanceValue) -> String {
    match v {
        DistanceValue::Finite(d) => d.to_string(),
        DistanceValue::Unbounded => "unbounded".to_string(),
    }
}

fn emit_construct(payload: &ConstructOutput, out: OutFmt) {
    match out {
        OutFmt::Json => println!("{}", serde_json::to_string(payload).expect("serializable")),
        OutFmt::Tsv => {
            println!("n\tk_q\td\tr\tdelta\tdefect\toptimal\tlevel\tfamily");
            println!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                payload.claims.n,
                payload.claims.k_q,
                payload.claims.d,
                payload.claims.r,
                payload.claims.delta,
                payload.report.quantum_defect,
                payload.report.optimal,
                level_str(payload.level),
                payload.request.family_name(),
            );
        }
        OutFmt::Pretty => {
            let c = &payload.claims;
            println!(
                "[[{}, {}, {}]]_{}  locality ({}, {})  quantum defect {}{}",
                c.n,
                c.k_q,
                c.d,
                payload.report.q,
                c.r,
                c.delta,
                payload.report.quantum_defect,
                if payload.report.optimal {
                    "  OPTIMAL"
                } else {
                    ""
                }
            );
            println!(
                "family {}, classical [{}, {}], verification {}",
                payload.request.family_name(),
                c.n,
                c.k_c,
                level_str(payload.level)
            );
            let kind = match &payload.report.dual_containing {
                qlrc_core::DualWitness::Gram(g) => format!("gram criterion ({:?})", g.kind),
                qlrc_core::DualWitness::Direct { kind } => format!("direct ({kind:?})"),
            };
            println!("dual containment: {kind}");
            println!(
                "delta condition: dual distance bound {} >= {}",
                distance_value_str(payload.report.delta_ok.bound),
                c.delta
            );
        }
    }
}

// ---------------------------------------------------------------------------
// verify and distance input handling

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

fn spec_from_value(value: &serde_json::Value) -> Result<MpcSpec, CliError> {
    let desc_value = value.get("spec").unwrap_or(value);
    let desc: MpcSpecDescriptor = serde_json::from_value(desc_value.clone())?;
    Ok(MpcSpec::from_descriptor(&desc)?)
}

fn load_spec(path: &str) -> Result<MpcSpec, CliError> {
    let value: serde_json::Value = serde_json::from_str(&read_input(path)?)?;
    spec_from_value(&value)
}

#[derive(Deserialize)]
struct VerifyRequestInput {
    request: FamilyRequest,
    claims: Option<FamilyClaims>,
}

#[derive(Serialize)]
struct SpecVerifyOutput {
    field: FieldDescriptor,
    m: usize,
    h: usize,
    s: usize,
    nested: bool,
    distance: DistanceCertificate,
    gram: GramReportDescriptor,
    /// Whether the product was materialized and containment checked
    /// directly on generators, in addition to the gram criterion.
    direct_checked: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    dual_distance_bound: Option<DistanceValue>,
}

fn cmd_verify(
    path: &str,
    deep: bool,
    budget: u64,
    kind: DualKind,
    out: OutFmt,
) -> Result<(), CliError> {
    let value: serde_json::Value = serde_json::from_str(&read_input(path)?)?;
    if value.get("request").is_some() {
        let input: VerifyRequestInput = serde_json::from_value(value)?;
        let build = build_family(&input.request, deep, budget)?;
        if let Some(claims) = input.claims {
            if claims != build.claims {
                return Err(CliError::Math(qlrc_core::Error::ClaimMismatch(format!(
                    "rebuilt parameters [[{}, {}, {}]] differ from the input claims",
                    build.claims.n, build.claims.k_q, build.claims.d
                ))));
            }
        }
        emit_construct(&construct_output(&build), out);
        return Ok(());
    }

    let spec = spec_from_value(&value)?;
    let gram = check_dual_containing(&spec, kind)?;
    let dist = mpc_distance(&spec, budget);
    let direct = spec.m() * spec.h() <= qlrc_core::FULL_VERIFY_MAX_LEN || deep;
    if direct {
        let code = mpc_code(&spec);
        let dual = mpc_dual(&spec, kind)?;
        let contained = code.contains(&dual)?;
        if contained != gram.verdict {
            return Err(CliError::Math(qlrc_core::Error::ClaimMismatch(
                "gram criterion disagrees with direct containment".into(),
            )));
        }
    }
    let payload = SpecVerifyOutput {
        field: spec.field().descriptor(),
        m: spec.m(),
        h: spec.h(),
        s: spec.s(),
        nested: spec.is_nested(),
        distance: dist,
        gram: gram.descriptor(),
        direct_checked: direct,
        dual_distance_bound: mpc_dual_distance_bound(&spec, kind, budget).ok(),
    };
    match out {
        OutFmt::Json => println!("{}", serde_json::to_string(&payload).expect("serializable")),
        OutFmt::Tsv => {
            println!("n\tnested\tdual_containing\tdistance\tdirect_checked");
            println!(
                "{}\t{}\t{}\t{}\t{}",
                payload.m * payload.h,
                payload.nested,
                payload.gram.verdict,
                distance_value_str(payload.distance.value),
                payload.direct_checked
            );
        }
        OutFmt::Pretty => {
            println!(
                "product [{} x {}] over GF({}), s = {}",
                payload.h,
                payload.m,
                spec.field().q(),
                payload.s
            );
            println!("nested: {}", payload.nested);
            println!(
                "distance {} ({:?}, {:?})",
                distance_value_str(payload.distance.value),
                payload.distance.kind,
                payload.distance.method
            );
            println!(
                "dual containing ({:?}): {} ({} gram failures{})",
                kind,
                payload.gram.verdict,
                payload.gram.failures.len(),
                if payload.direct_checked {
                    ", direct check agrees"
                } else {
                    ""
                }
            );
            if let Some(bound) = payload.dual_distance_bound {
                println!("dual distance bound: {}", distance_value_str(bound));
            }
        }
    }
    if !gram.verdict {
        return Err(CliError::Math(qlrc_core::Error::NotDualContaining(
            match kind {
                DualKind::Euclidean => "euclidean",
                DualKind::Hermitian => "hermitian",
            },
        )));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// table and distance output

fn emit_table(rows: &[TableRow], out: OutFmt) {
    match out {
        OutFmt::Json => println!("{}", serde_json::to_string(rows).expect("serializable")),
        OutFmt::Tsv => {
            println!("n\tk\td\tr\tdelta\tsources\tverification");
            for row in rows {
                println!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    row.n,
                    row.k_q,
                    row.d,
                    row.r,
                    row.delta,
                    row.sources.join(","),
                    level_str(row.verification)
                );
            }
        }
        OutFmt::Pretty => {
            for row in rows {
                println!(
                    "[[{}, {}, {}]]  ({}, {})  {}  {}",
                    row.n,
                    row.k_q,
                    row.d,
                    row.r,
                    row.delta,
                    level_str(row.verification),
                    row.sources.join(",")
                );
            }
        }
    }
}

fn emit_distance(cert: &DistanceCertificate, out: OutFmt) {
    match out {
        OutFmt::Json => println!("{}", serde_json::to_string(cert).expect("serializable")),
        OutFmt::Tsv => {
            println!("distance\tkind\tmethod");
            println!(
                "{}\t{:?}\t{:?}",
                distance_value_str(cert.value),
                cert.kind,
                cert.method
            );
        }
        OutFmt::Pretty => {
            println!(
                "distance {} ({})",
                distance_value_str(cert.value),
                match cert.kind {
                    CertKind::Exact => "exact",
                    CertKind::LowerBound => "lower bound",
                }
            );
        }
    }
}
