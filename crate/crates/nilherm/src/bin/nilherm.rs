//! Command-line front end: parse Salamon tuples, run the constructions,
//! analyze bundles, check single properties with witnesses, and run the
//! built-in replication suite.
//!
//! Exit codes: 0 success (including `check` verdicts of `false`), 2 parse
//! errors, 3 semantic errors, 4 replication-suite failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use nilherm::complex::{
    abelian_witness, biinvariant_witness, classify, integrability_witness, nilpotent_step,
};
use nilherm::construct::{
    self, build_from_2step_data, build_from_3step_data, example_2step, example_3step,
    free_complex_structure, free_two_step, heisenberg, hermitian_symmetric_j,
    natred_abelian_complex, natred_hypercomplex, su2_su2_diagonal_pair, su2_u1_pair,
    ExampleTwoStepVariant, IsotypicBlock, Representation,
};
use nilherm::error::Error;
use nilherm::hermitian::{
    hkt_witness, pluriclosed_center_sampling_check, pluriclosed_witness, MetricComplexTriple,
};
use nilherm::io::{
    self, algebra_to_bundle, decode_bundle, matrix_from_json, triple_to_bundle, AnalysisDocument,
    Bundle, MetricChecks, Provenance,
};
use nilherm::lie::{parse_salamon, print_salamon};
use nilherm::linalg::RMatrix;
use nilherm::rational::rat;
use nilherm::verify::run_all;

#[derive(Parser)]
#[command(
    name = "nilherm",
    version,
    about = "Exact computations with nilpotent Lie algebras, complex structures and Hermitian metrics"
)]
struct Cli {
    /// Seed for randomized checks (env NILHERM_SEED overrides the default).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Sample count for the probabilistic center criterion.
    #[arg(long, global = true, default_value_t = 200)]
    samples: usize,

    /// Emit JSON instead of human-readable text where both exist.
    #[arg(long, global = true, default_value_t = false)]
    json: bool,

    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Parse a Salamon tuple into the JSON algebra format.
    Parse {
        /// Tuple such as "(0,0,0,0,12,34)".
        text: String,
        #[arg(long)]
        dim: usize,
    },
    /// Print the Salamon tuple of an algebra bundle.
    Print { file: PathBuf },
    /// Run one of the built-in constructions; prints a bundle (or data) JSON.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Full analysis of a bundle: invariants, J classification, metric checks.
    Analyze {
        file: PathBuf,
        /// Override the metric with a Gram matrix from a JSON file.
        #[arg(long)]
        metric: Option<PathBuf>,
    },
    /// Check a single property, with a witness when false.
    Check {
        what: CheckWhat,
        file: PathBuf,
        #[arg(long)]
        metric: Option<PathBuf>,
    },
    /// Run the built-in replication suite (exit 4 on any failure).
    Verify,
}

#[derive(Subcommand)]
enum ConstructKind {
    /// Heisenberg algebra h_{2m+1}.
    Heisenberg {
        #[arg(long)]
        m: usize,
    },
    /// Free 2-step nilpotent algebra f_r.
    Free {
        #[arg(long)]
        rank: usize,
    },
    /// f_r (or R + f_r) with its complex structure.
    FreeWithJ {
        #[arg(long)]
        rank: usize,
    },
    /// Row of the six-dimensional catalog (1..=7).
    Table1 { row: usize },
    /// The worked 2-step family (n >= 2).
    #[command(name = "example-2step")]
    Example2Step {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = VariantArg::Generic)]
        variant: VariantArg,
    },
    /// The worked 3-step family (n >= 3); a/b are rho coefficients.
    #[command(name = "example-3step")]
    Example3Step {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        a: Option<Vec<i64>>,
        #[arg(long, value_delimiter = ',')]
        b: Option<Vec<i64>>,
    },
    /// Build a triple from a complex 2-step data JSON file.
    #[command(name = "from-2step-data")]
    From2StepData { file: PathBuf },
    /// Build a triple from a complex 3-step data JSON file.
    #[command(name = "from-3step-data")]
    From3StepData { file: PathBuf },
    /// Built-in symmetric pairs: the nilalgebra with -B metric.
    SymmetricPair {
        #[arg(long, value_enum)]
        which: PairArg,
    },
    /// Built-in naturally reductive assemblies.
    Natred {
        #[arg(long, value_enum)]
        which: NatredArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Abelian,
    BiInvariant,
    Generic,
}

#[derive(Clone, Copy, ValueEnum)]
enum PairArg {
    Su2U1,
    Su2Su2Diagonal,
}

#[derive(Clone, Copy, ValueEnum)]
enum NatredArg {
    /// N(R, R^2): the Heisenberg algebra with its standard metric.
    U1,
    /// su(2) adjoint block with multiplicity 2, with its abelian structure.
    Su2AdjointX2,
    /// The 8-dimensional quaternionic Heisenberg HKT bundle.
    Su2SpinHkt,
    /// The su(2)/u(1) Hermitian symmetric triple.
    HermitianSymmetric,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckWhat {
    Integrable,
    Step,
    Abelian,
    Biinvariant,
    Pluriclosed,
    Hkt,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli.seed.unwrap_or_else(|| {
        std::env::var("NILHERM_SEED")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(0)
    });
    match run(cli, seed) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Json(_) => 2,
        _ => 3,
    }
}

fn run(cli: Cli, seed: u64) -> nilherm::Result<ExitCode> {
    match cli.command {
        Commands::Parse { text, dim } => {
            let l = parse_salamon(&text, dim)?;
            print_json(&algebra_to_bundle(&l));
            Ok(ExitCode::SUCCESS)
        }
        Commands::Print { file } => {
            let bundle = read_bundle(&file)?;
            let decoded = decode_bundle(&bundle)?;
            println!("{}", print_salamon(&decoded.algebra)?);
            Ok(ExitCode::SUCCESS)
        }
        Commands::Construct { kind } => {
            let bundle = construct_bundle(kind)?;
            print_json(&bundle);
            Ok(ExitCode::SUCCESS)
        }
        Commands::Analyze { file, metric } => {
            let doc = analyze(&file, metric.as_deref(), seed, cli.samples)?;
            print_json(&doc);
            Ok(ExitCode::SUCCESS)
        }
        Commands::Check { what, file, metric } => {
            let code = check(what, &file, metric.as_deref(), cli.json)?;
            Ok(code)
        }
        Commands::Verify => {
            let results = run_all(seed, cli.samples);
            let mut all_ok = true;
            for r in &results {
                println!("{}", r.line());
                all_ok &= r.passed;
            }
            if all_ok {
                println!(
                    "verify: all {} criteria passed (seed {seed})",
                    results.len()
                );
                Ok(ExitCode::SUCCESS)
            } else {
                println!("verify: FAILURES present");
                Ok(ExitCode::from(4))
            }
        }
    }
}

/// Read a bundle from a file, or from stdin when the path is `-`.
fn read_bundle(path: &std::path::Path) -> nilherm::Result<Bundle> {
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        use std::io::Read;
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Json(format!("cannot read stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::Json(format!("cannot read {}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Json(e.to_string()))
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

fn construct_bundle(kind: ConstructKind) -> nilherm::Result<Bundle> {
    Ok(match kind {
        ConstructKind::Heisenberg { m } => algebra_to_bundle(&heisenberg(m)?),
        ConstructKind::Free { rank } => algebra_to_bundle(&free_two_step(rank)?),
        ConstructKind::FreeWithJ { rank } => {
            let (l, j) = free_complex_structure(rank)?;
            let dim = l.dim();
            triple_to_bundle(&MetricComplexTriple::new(l, j, RMatrix::identity(dim))?)
        }
        ConstructKind::Table1 { row } => algebra_to_bundle(&construct::table1(row)?),
        ConstructKind::Example2Step { n, variant } => {
            let v = match variant {
                VariantArg::Abelian => ExampleTwoStepVariant::Abelian,
                VariantArg::BiInvariant => ExampleTwoStepVariant::BiInvariant,
                VariantArg::Generic => ExampleTwoStepVariant::Generic,
            };
            let (_, t) = example_2step(n, v)?;
            triple_to_bundle(&t)
        }
        ConstructKind::Example3Step { n, a, b } => {
            if n < 3 {
                return Err(Error::precondition("example-3step requires n >= 3"));
            }
            let m = n - 2;
            let a = a.unwrap_or_else(|| {
                let mut v = vec![0; m];
                v[0] = 1;
                v
            });
            let b = b.unwrap_or_else(|| vec![0; m]);
            let ar: Vec<_> = a.into_iter().map(rat).collect();
            let br: Vec<_> = b.into_iter().map(rat).collect();
            let d = example_3step(n, &ar, &br)?;
            triple_to_bundle(&build_from_3step_data(&d)?)
        }
        ConstructKind::From2StepData { file } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Error::Json(format!("cannot read {}: {e}", file.display())))?;
            let json: io::TwoStepDataJson =
                serde_json::from_str(&text).map_err(|e| Error::Json(e.to_string()))?;
            let data = io::two_step_data_from_json(&json)?;
            triple_to_bundle(&build_from_2step_data(&data)?)
        }
        ConstructKind::From3StepData { file } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Error::Json(format!("cannot read {}: {e}", file.display())))?;
            let json: io::ThreeStepDataJson =
                serde_json::from_str(&text).map_err(|e| Error::Json(e.to_string()))?;
            let data = io::three_step_data_from_json(&json)?;
            triple_to_bundle(&build_from_3step_data(&data)?)
        }
        ConstructKind::SymmetricPair { which } => {
            let pair = match which {
                PairArg::Su2U1 => su2_u1_pair()?,
                PairArg::Su2Su2Diagonal => su2_su2_diagonal_pair()?,
            };
            io::metric_algebra_to_bundle(&pair.nil)
        }
        ConstructKind::Natred { which } => match which {
            NatredArg::U1 => {
                let n = construct::naturally_reductive(
                    &construct::u1_rotation_rep(),
                    &RMatrix::identity(1),
                    &RMatrix::identity(2),
                )?;
                io::metric_algebra_to_bundle(&n)
            }
            NatredArg::Su2AdjointX2 => {
                let adj = construct::su2_adjoint_rep();
                let rep2 = Representation {
                    algebra: adj.algebra.clone(),
                    mats: adj
                        .mats
                        .iter()
                        .map(|m| RMatrix::block_diag(&[m.clone(), m.clone()]))
                        .collect(),
                };
                let block = IsotypicBlock::new(rep2, 3, 2, RMatrix::identity(6))?;
                let t = natred_abelian_complex(&[block], &RMatrix::identity(3), None)?;
                triple_to_bundle(&t)
            }
            NatredArg::Su2SpinHkt => {
                let spin =
                    IsotypicBlock::new(construct::su2_spin_rep(), 4, 1, RMatrix::identity(4))?;
                let (nil, h) = natred_hypercomplex(&[spin], &RMatrix::identity(3), None)?;
                let mut b = io::metric_algebra_to_bundle(&nil);
                b.hypercomplex = Some([
                    io::matrix_to_json(h.j1.matrix()),
                    io::matrix_to_json(h.j2.matrix()),
                    io::matrix_to_json(h.j3.matrix()),
                ]);
                b
            }
            NatredArg::HermitianSymmetric => {
                let pair = su2_u1_pair()?;
                let j_m = RMatrix::from_i64(vec![vec![0, -1], vec![1, 0]]);
                let j_1 = RMatrix::from_i64(vec![vec![0, -1], vec![1, 0]]);
                let gram_s = RMatrix::identity(1).scale(&rat(2));
                triple_to_bundle(&hermitian_symmetric_j(&pair, &j_m, &j_1, &gram_s)?)
            }
        },
    })
}

fn resolved_metric(
    bundle: &Bundle,
    file_metric: Option<&std::path::Path>,
    dim: usize,
) -> nilherm::Result<RMatrix> {
    if let Some(path) = file_metric {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Json(format!("cannot read {}: {e}", path.display())))?;
        let rows: Vec<Vec<String>> =
            serde_json::from_str(&text).map_err(|e| Error::Json(e.to_string()))?;
        return matrix_from_json(&rows);
    }
    match &bundle.metric {
        Some(m) => matrix_from_json(m),
        None => Ok(RMatrix::identity(dim)),
    }
}

fn analyze(
    file: &std::path::Path,
    metric: Option<&std::path::Path>,
    seed: u64,
    samples: usize,
) -> nilherm::Result<AnalysisDocument> {
    let bundle = read_bundle(file)?;
    let decoded = decode_bundle(&bundle)?;
    let l = &decoded.algebra;
    let report = l.report()?;
    let mut notes = None;

    let j_class = decoded.j.as_ref().map(|j| classify(l, j));
    if let Some(c) = &j_class {
        if c.has_central_complex_abelian_factor == Some(false) {
            notes = Some(
                "no central complex abelian factor; non-central factors are outside the \
                 detector's scope"
                    .into(),
            );
        }
    }

    let metric_checks = match &decoded.j {
        Some(j) => {
            let gram = resolved_metric(&bundle, metric, l.dim())?;
            match MetricComplexTriple::new(l.clone(), j.clone(), gram) {
                Ok(t) => {
                    let pluriclosed = nilherm::hermitian::is_pluriclosed(&t);
                    let center_sampling = (pluriclosed && t.algebra.is_two_step())
                        .then(|| pluriclosed_center_sampling_check(&t, seed, samples));
                    Some(MetricChecks {
                        hermitian: true,
                        pluriclosed: Some(pluriclosed),
                        center_sampling,
                    })
                }
                Err(Error::NotHermitian) => Some(MetricChecks {
                    hermitian: false,
                    pluriclosed: None,
                    center_sampling: None,
                }),
                Err(e) => return Err(e),
            }
        }
        None => None,
    };

    let hkt = match &decoded.hypercomplex {
        Some(h) => {
            let gram = resolved_metric(&bundle, metric, l.dim())?;
            Some(nilherm::hermitian::is_hkt(l, h, &gram)?)
        }
        None => None,
    };

    Ok(AnalysisDocument {
        algebra: report,
        j: j_class,
        metric: metric_checks,
        hkt,
        notes,
        provenance: Provenance {
            input: file.display().to_string(),
            seed,
            samples,
            version: env!("CARGO_PKG_VERSION").to_string(),
        },
    })
}

fn check(
    what: CheckWhat,
    file: &std::path::Path,
    metric: Option<&std::path::Path>,
    json: bool,
) -> nilherm::Result<ExitCode> {
    let bundle = read_bundle(file)?;
    let decoded = decode_bundle(&bundle)?;
    let l = &decoded.algebra;
    let need_j = || {
        decoded
            .j
            .clone()
            .ok_or_else(|| Error::precondition("bundle has no J matrix"))
    };
    let (verdict, witness): (String, Option<String>) = match what {
        CheckWhat::Integrable => {
            let j = need_j()?;
            match integrability_witness(l, &j) {
                None => ("true".into(), None),
                Some((i, k, n)) => (
                    "false".into(),
                    Some(format!(
                        "N(e{}, e{}) = ({})",
                        i + 1,
                        k + 1,
                        n.iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(", ")
                    )),
                ),
            }
        }
        CheckWhat::Step => {
            let j = need_j()?;
            (format!("{:?}", nilpotent_step(l, &j)), None)
        }
        CheckWhat::Abelian => {
            let j = need_j()?;
            match abelian_witness(l, &j) {
                None => ("true".into(), None),
                Some((i, k)) => (
                    "false".into(),
                    Some(format!(
                        "[Je{}, Je{}] != [e{}, e{}]",
                        i + 1,
                        k + 1,
                        i + 1,
                        k + 1
                    )),
                ),
            }
        }
        CheckWhat::Biinvariant => {
            let j = need_j()?;
            match biinvariant_witness(l, &j) {
                None => ("true".into(), None),
                Some((i, k)) => (
                    "false".into(),
                    Some(format!(
                        "J[e{}, e{}] != [e{}, Je{}]",
                        i + 1,
                        k + 1,
                        i + 1,
                        k + 1
                    )),
                ),
            }
        }
        CheckWhat::Pluriclosed => {
            let j = need_j()?;
            let gram = resolved_metric(&bundle, metric, l.dim())?;
            let t = MetricComplexTriple::new(l.clone(), j, gram)?;
            match pluriclosed_witness(&t) {
                None => ("true".into(), None),
                Some(((a, b, c, d), val)) => (
                    "false".into(),
                    Some(format!(
                        "dc(e{}, e{}, e{}, e{}) = {val}",
                        a + 1,
                        b + 1,
                        c + 1,
                        d + 1
                    )),
                ),
            }
        }
        CheckWhat::Hkt => {
            let h = decoded
                .hypercomplex
                .clone()
                .ok_or_else(|| Error::precondition("bundle has no hypercomplex triple"))?;
            let gram = resolved_metric(&bundle, metric, l.dim())?;
            if !nilherm::hermitian::is_hyper_hermitian(l, &h, &gram) {
                return Err(Error::precondition("metric is not hyper-Hermitian"));
            }
            match hkt_witness(l, &h, &gram) {
                None => ("true".into(), None),
                Some((x, y, z)) => (
                    "false".into(),
                    Some(format!(
                        "cyclic sums differ at (e{}, e{}, e{})",
                        x + 1,
                        y + 1,
                        z + 1
                    )),
                ),
            }
        }
    };
    if json {
        let doc = serde_json::json!({
            "check": format!("{what:?}").to_lowercase(),
            "verdict": verdict,
            "witness": witness,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("serializable")
        );
    } else {
        match &witness {
            Some(w) => println!("{verdict} ({w})"),
            None => println!("{verdict}"),
        }
    }
    Ok(ExitCode::SUCCESS)
}
