//! `homcat` — batch analysis of homotopical structures on finite categories.
//!
//! Exit codes: `0` all checks passed, `1` checks ran and some failed,
//! `2` unusable input (missing file, malformed JSON, enumeration budget).
//! Reports are JSON and byte-stable for fixed inputs and flags; a human
//! summary goes to standard output.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use homcat_core::banach::{self, bridge};
use homcat_core::fincat::{validate_category, CategoryData, FinCategory};
use homcat_core::homotopy::{homotopy_classes, verify_congruence};
use homcat_core::hstruct::{check_axioms, AxiomReport, HomotopicalStructure, StructureData};
use homcat_core::instances::{gen_groupoid_cylinder, gen_trivial, FiniteGroupoid, GroupoidData};
use homcat_core::quotient::{homotopy_equivalences, is_contractible, quotient_category};
use homcat_core::report::{to_json_pretty, AxiomReportDoc, PartitionDoc};

#[derive(Parser)]
#[command(name = "homcat", version, about = "Homotopical structures on finite categories")]
struct Cli {
    /// Worker threads for parallel checks (default: all available).
    /// Results are identical for any worker count.
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct ReportPath {
    /// Write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the category laws of a category file.
    Validate {
        cat: PathBuf,
        #[command(flatten)]
        report: ReportPath,
    },
    /// Decide the four axioms of a homotopical structure.
    Axioms {
        cat: PathBuf,
        hs: PathBuf,
        #[command(flatten)]
        report: ReportPath,
    },
    /// Homotopy classes of base-domain hom-sets.
    Classes {
        cat: PathBuf,
        hs: PathBuf,
        /// Restrict to one hom-set, e.g. `--hom X Y`.
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        hom: Option<Vec<String>>,
        #[command(flatten)]
        report: ReportPath,
    },
    /// Verify the congruence and write the quotient category.
    Quotient {
        cat: PathBuf,
        hs: PathBuf,
        /// Output path for the quotient category (same JSON format).
        #[arg(short, long)]
        out: PathBuf,
        /// Optional output path for the class map (original id → representative).
        #[arg(long)]
        class_map: Option<PathBuf>,
    },
    /// Homotopy equivalences between two base objects.
    Equiv {
        cat: PathBuf,
        hs: PathBuf,
        x: String,
        y: String,
        #[command(flatten)]
        report: ReportPath,
    },
    /// Is X contractible onto the designated point object Z?
    Contractible {
        cat: PathBuf,
        hs: PathBuf,
        x: String,
        z: String,
        #[command(flatten)]
        report: ReportPath,
    },
    /// Instance generators.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Finite-dimensional operator model.
    #[command(subcommand)]
    Banach(BanachCommand),
}

#[derive(Subcommand)]
enum GenCommand {
    /// Trivial structure (hat S = S, i = j = id) on a category.
    Trivial {
        cat: PathBuf,
        /// Writes `<prefix>.cat.json` and `<prefix>.hs.json`.
        #[arg(long)]
        out_prefix: PathBuf,
    },
    /// Groupoid-cylinder instance over the given groupoid files.
    GrpdCylinder {
        groupoids: Vec<PathBuf>,
        /// Enumeration budget per hom-set.
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long)]
        out_prefix: PathBuf,
    },
}

#[derive(Subcommand)]
enum BanachCommand {
    /// Numeric axiom check of the standard kits at the given dimensions.
    Axioms {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        report: ReportPath,
    },
    /// Factorization criterion: does U − V factor through Φ (so U ∼ V)?
    Homotopic {
        #[arg(long)]
        u: PathBuf,
        #[arg(long)]
        v: PathBuf,
        /// Matrix of Φ; identity when omitted.
        #[arg(long)]
        phi: Option<PathBuf>,
        #[arg(long, default_value_t = banach::DEFAULT_SOLVE_TOL)]
        tol: f64,
        #[command(flatten)]
        report: ReportPath,
    },
    /// Left inverse of Φ and the projector onto its column space.
    Contractible {
        #[arg(long)]
        phi: PathBuf,
        #[command(flatten)]
        report: ReportPath,
    },
    /// Categorical sample of the model at the given dimensions.
    Bridge {
        #[arg(long, value_delimiter = ',', default_value = "0,2")]
        dims: Vec<usize>,
        /// Writes `<prefix>.cat.json` and `<prefix>.hs.json`.
        #[arg(long)]
        out_prefix: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = || match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("homcat: {err:#}");
            ExitCode::from(2)
        }
    };
    match cli.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map(|pool| pool.install(run))
            .unwrap_or_else(|err| {
                eprintln!("homcat: cannot build worker pool: {err}");
                ExitCode::from(2)
            }),
        None => run(),
    }
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_category_data(path: &Path) -> Result<CategoryData> {
    CategoryData::from_json(&read_text(path)?)
        .with_context(|| format!("parsing category file {}", path.display()))
}

fn load_category(path: &Path) -> Result<FinCategory> {
    FinCategory::from_data(load_category_data(path)?)
        .with_context(|| format!("category file {}", path.display()))
}

fn load_structure(cat: &FinCategory, path: &Path) -> Result<HomotopicalStructure> {
    let data = StructureData::from_json(&read_text(path)?)
        .with_context(|| format!("parsing structure file {}", path.display()))?;
    HomotopicalStructure::from_data(cat, &data)
        .with_context(|| format!("structure file {}", path.display()))
}

fn load_matrix(path: &Path) -> Result<homcat_core::nalgebra::DMatrix<f64>> {
    let rows: Vec<Vec<f64>> = serde_json::from_str(&read_text(path)?)
        .with_context(|| format!("parsing matrix file {}", path.display()))?;
    banach::matrix_from_rows(&rows).with_context(|| format!("matrix file {}", path.display()))
}

fn write_report<T: Serialize>(path: &Option<PathBuf>, doc: &T) -> Result<()> {
    if let Some(path) = path {
        let mut text = to_json_pretty(doc);
        text.push('\n');
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn write_text(path: &Path, mut text: String) -> Result<()> {
    text.push('\n');
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn require_positive(tol: f64) -> Result<()> {
    if tol > 0.0 {
        Ok(())
    } else {
        bail!("--tol must be positive, got {tol}")
    }
}

fn passing_axiom_report(
    cat: &FinCategory,
    hs: &HomotopicalStructure,
) -> Result<std::result::Result<AxiomReport, ExitCode>> {
    let report = check_axioms(cat, hs);
    if report.pass() {
        Ok(Ok(report))
    } else {
        println!("structure fails its axioms; run `homcat axioms` for the counterexamples");
        Ok(Err(ExitCode::from(1)))
    }
}

fn dispatch(cmd: Command) -> Result<ExitCode> {
    match cmd {
        Command::Validate { cat, report } => {
            let mut data = load_category_data(&cat)?;
            data.complete_identities();
            let outcome = validate_category(&data);
            write_report(&report.report, &outcome)?;
            if outcome.ok {
                println!("{}: ok ({} objects, {} morphisms)", cat.display(), data.objects.len(), data.morphisms.len());
                Ok(ExitCode::SUCCESS)
            } else {
                println!("{}: {} violation(s)", cat.display(), outcome.violations.len());
                for v in outcome.violations.iter().take(10) {
                    println!("  {:?} {}", v.rule, v.message);
                }
                Ok(ExitCode::from(1))
            }
        }

        Command::Axioms { cat, hs, report } => {
            let category = load_category(&cat)?;
            let structure = load_structure(&category, &hs)?;
            let outcome = check_axioms(&category, &structure);
            let doc = AxiomReportDoc::build(&category, &structure, &outcome);
            write_report(&report.report, &doc)?;
            for (name, pass, cex) in [
                ("I", doc.axiom_i.pass, doc.axiom_i.counterexamples.len()),
                ("II", doc.axiom_ii.pass, doc.axiom_ii.counterexamples.len()),
                ("III", doc.axiom_iii.pass, doc.axiom_iii.counterexamples.len()),
                ("IV", doc.axiom_iv.pass, doc.axiom_iv.counterexamples.len()),
            ] {
                if pass {
                    println!("axiom {name}: pass");
                } else {
                    println!("axiom {name}: FAIL ({cex} counterexample(s))");
                }
            }
            Ok(if doc.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }

        Command::Classes { cat, hs, hom, report } => {
            let category = load_category(&cat)?;
            let structure = load_structure(&category, &hs)?;
            let mut docs = Vec::new();
            match hom {
                Some(pair) => {
                    let x = category.object(&pair[0])?;
                    let y = category.object(&pair[1])?;
                    docs.push(PartitionDoc::build(
                        &category,
                        &homotopy_classes(&category, &structure, x, y)?,
                    ));
                }
                None => {
                    for &x in structure.base() {
                        for y in category.objects() {
                            docs.push(PartitionDoc::build(
                                &category,
                                &homotopy_classes(&category, &structure, x, y)?,
                            ));
                        }
                    }
                }
            }
            write_report(&report.report, &docs)?;
            for d in &docs {
                println!(
                    "C({}, {}): {} morphism(s) in {} class(es)",
                    d.src,
                    d.dst,
                    d.classes.iter().map(Vec::len).sum::<usize>(),
                    d.classes.len()
                );
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Quotient { cat, hs, out, class_map } => {
            let category = load_category(&cat)?;
            let structure = load_structure(&category, &hs)?;
            let outcome = match passing_axiom_report(&category, &structure)? {
                Ok(report) => report,
                Err(code) => return Ok(code),
            };
            let congruence = verify_congruence(&category, &structure, &outcome)?;
            if !congruence.pass {
                println!("congruence FAILED: {} counterexample(s)", congruence.counterexamples.len());
                return Ok(ExitCode::from(1));
            }
            let quotient = quotient_category(&category, &structure, &outcome)?;
            write_text(&out, quotient.category.to_data().to_json())?;
            if let Some(path) = class_map {
                write_text(&path, to_json_pretty(&quotient.class_map))?;
            }
            println!(
                "quotient: {} object(s), {} morphism(s) → {}",
                quotient.category.object_count(),
                quotient.category.morphism_count(),
                out.display()
            );
            Ok(ExitCode::SUCCESS)
        }

        Command::Equiv { cat, hs, x, y, report } => {
            let category = load_category(&cat)?;
            let structure = load_structure(&category, &hs)?;
            let outcome = match passing_axiom_report(&category, &structure)? {
                Ok(report) => report,
                Err(code) => return Ok(code),
            };
            let xo = category.object(&x)?;
            let yo = category.object(&y)?;
            let pairs = homotopy_equivalences(&category, &structure, &outcome, xo, yo)?;
            write_report(&report.report, &pairs)?;
            println!("{} equivalence pair(s) between {x} and {y}", pairs.len());
            for p in pairs.iter().take(10) {
                println!("  u = {}, v = {}", p.u, p.v);
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Contractible { cat, hs, x, z, report } => {
            let category = load_category(&cat)?;
            let structure = load_structure(&category, &hs)?;
            let outcome = match passing_axiom_report(&category, &structure)? {
                Ok(report) => report,
                Err(code) => return Ok(code),
            };
            let xo = category.object(&x)?;
            let zo = category.object(&z)?;
            let (yes, pair) = is_contractible(&category, &structure, &outcome, xo, zo)?;
            #[derive(Serialize)]
            struct ContractibleDoc<T: Serialize> {
                object: String,
                point: String,
                contractible: bool,
                pair: Option<T>,
            }
            let doc = ContractibleDoc { object: x.clone(), point: z.clone(), contractible: yes, pair };
            write_report(&report.report, &doc)?;
            println!("{x} contractible onto {z}: {yes}");
            Ok(if yes { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }

        Command::Gen(GenCommand::Trivial { cat, out_prefix }) => {
            let category = load_category(&cat)?;
            let bundle = gen_trivial(&category);
            write_bundle(&out_prefix, &bundle.cat, &bundle.hs)?;
            println!("trivial structure over {} object(s)", bundle.cat.object_count());
            Ok(ExitCode::SUCCESS)
        }

        Command::Gen(GenCommand::GrpdCylinder { groupoids, budget, out_prefix }) => {
            if groupoids.is_empty() {
                bail!("at least one groupoid file is required");
            }
            let mut inputs = Vec::new();
            for path in &groupoids {
                let data = GroupoidData::from_json(&read_text(path)?)
                    .with_context(|| format!("parsing groupoid file {}", path.display()))?;
                let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("G").to_string();
                inputs.push(
                    FiniteGroupoid::from_data(&data, &stem)
                        .with_context(|| format!("groupoid file {}", path.display()))?,
                );
            }
            let instance = gen_groupoid_cylinder(&inputs, budget)?;
            write_bundle(&out_prefix, &instance.bundle.cat, &instance.bundle.hs)?;
            println!(
                "cylinder instance: {} object(s), {} morphism(s)",
                instance.bundle.cat.object_count(),
                instance.bundle.cat.morphism_count()
            );
            Ok(ExitCode::SUCCESS)
        }

        Command::Banach(BanachCommand::Axioms { dims, tol, report }) => {
            require_positive(tol)?;
            let outcome = banach::check_axioms_numeric(&dims, tol);
            write_report(&report.report, &outcome)?;
            for kit in &outcome.kits {
                println!(
                    "n = {}: {} (residuals I {:.2e}, II {:.2e}, III {:.2e}, IV {:.2e})",
                    kit.dim,
                    if kit.pass { "pass" } else { "FAIL" },
                    kit.axiom_i.max_residual,
                    kit.axiom_ii.max_residual,
                    kit.axiom_iii.max_residual,
                    kit.axiom_iv.max_residual,
                );
            }
            Ok(if outcome.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }

        Command::Banach(BanachCommand::Homotopic { u, v, phi, tol, report }) => {
            require_positive(tol)?;
            let u_mat = load_matrix(&u)?;
            let v_mat = load_matrix(&v)?;
            let phi_mat = match phi {
                Some(path) => load_matrix(&path)?,
                None => homcat_core::nalgebra::DMatrix::identity(u_mat.ncols(), u_mat.ncols()),
            };
            let factor = banach::factor_through_bidual(&u_mat, &v_mat, &phi_mat, tol)?;
            #[derive(Serialize)]
            struct HomotopicDoc {
                homotopic: bool,
                factor: Option<Vec<Vec<f64>>>,
                /// Residual of the best (least-squares) factorization attempt.
                residual: f64,
            }
            // The minimum-norm attempt doubles as the counterexample: its
            // residual is the distance from solvability.
            let diff = &u_mat - &v_mat;
            let (_, pinv) = banach::pseudo_inverse(&phi_mat);
            let best = &diff * &pinv;
            let residual = (&best * &phi_mat - &diff).norm();
            let doc = HomotopicDoc {
                homotopic: factor.is_some(),
                factor: factor.as_ref().map(banach::matrix_to_rows),
                residual,
            };
            write_report(&report.report, &doc)?;
            println!("homotopic: {} (residual {:.3e})", doc.homotopic, doc.residual);
            Ok(if doc.homotopic { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }

        Command::Banach(BanachCommand::Contractible { phi, report }) => {
            let phi_mat = load_matrix(&phi)?;
            let projector = banach::contractibility_projector(&phi_mat);
            #[derive(Serialize)]
            struct ProjectorDoc {
                contractible: bool,
                rank: usize,
                columns: usize,
                left_inverse: Option<Vec<Vec<f64>>>,
                projector: Option<Vec<Vec<f64>>>,
                idempotency_residual: Option<f64>,
            }
            let doc = match &projector {
                Some((w, p)) => ProjectorDoc {
                    contractible: true,
                    rank: phi_mat.ncols(),
                    columns: phi_mat.ncols(),
                    left_inverse: Some(banach::matrix_to_rows(w)),
                    projector: Some(banach::matrix_to_rows(p)),
                    idempotency_residual: Some((p * p - p).norm()),
                },
                None => ProjectorDoc {
                    contractible: false,
                    rank: banach::rank(&phi_mat),
                    columns: phi_mat.ncols(),
                    left_inverse: None,
                    projector: None,
                    idempotency_residual: None,
                },
            };
            write_report(&report.report, &doc)?;
            println!("contractible: {} (rank {}/{})", doc.contractible, doc.rank, doc.columns);
            Ok(if doc.contractible { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }

        Command::Banach(BanachCommand::Bridge { dims, out_prefix }) => {
            let (category, structure) = bridge::sample_category(&dims)?;
            write_bundle(&out_prefix, &category, &structure)?;
            println!(
                "bridge sample: {} object(s), {} morphism(s)",
                category.object_count(),
                category.morphism_count()
            );
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn write_bundle(prefix: &Path, cat: &FinCategory, hs: &HomotopicalStructure) -> Result<()> {
    let with_suffix = |suffix: &str| -> PathBuf {
        let mut name = prefix.file_name().map(|s| s.to_os_string()).unwrap_or_default();
        name.push(suffix);
        prefix.with_file_name(name)
    };
    let cat_path = with_suffix(".cat.json");
    let hs_path = with_suffix(".hs.json");
    write_text(&cat_path, cat.to_data().to_json())?;
    write_text(&hs_path, hs.to_data(cat).to_json())?;
    println!("wrote {} and {}", cat_path.display(), hs_path.display());
    Ok(())
}
