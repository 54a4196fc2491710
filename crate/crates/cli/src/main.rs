//! `triaco`: command-line front end for the trialgebra computer-algebra
//! library. Loads algebras, modules, cocycles, and deformations from JSON,
//! runs the checkers and solvers, and emits TSV tables (or JSON with
//! `--json`).
//!
//! Exit codes: 0 when the checked property holds or the computation
//! succeeded, 1 when a checked property fails (the report goes to stdout),
//! 2 on input or parse errors (reported on stderr).

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use triaco_core::algebra::Trialgebra;
use triaco_core::bimodule::TriBimodule;
use triaco_core::coho2;
use triaco_core::deformation;
use triaco_core::derivation;
use triaco_core::hochschild;
use triaco_core::json::{self, AlgebraFile, CocycleFile, JsonError, MapFile};
use triaco_core::linalg::{fmt_rat, Matrix, Scalar};
use triaco_core::report::ViolationReport;
use triaco_core::trees::enumerate_trees;

#[derive(Parser)]
#[command(
    name = "triaco",
    about = "Exact computer algebra for twisted trialgebras: axiom checking, second cohomology, tree-indexed Hochschild complexes, deformations, and derivation solving.",
    version
)]
struct Cli {
    /// Emit machine-readable JSON payloads instead of TSV tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the defining axioms and multiplicativity of an algebra file.
    Check { algebra: PathBuf },
    /// Check the module axioms of a module file over an algebra.
    CheckModule {
        algebra: PathBuf,
        #[arg(long)]
        module: PathBuf,
    },
    /// Print a basis of the center.
    Center { algebra: PathBuf },
    /// Print a basis of the 2-cocycle space.
    Cocycles {
        algebra: PathBuf,
        /// Central coefficient module (default: the trivial line).
        #[arg(long)]
        module: Option<PathBuf>,
    },
    /// Print a basis of the 2-coboundary space.
    Coboundaries {
        algebra: PathBuf,
        #[arg(long)]
        module: Option<PathBuf>,
    },
    /// Second cohomology: dimension and coset representatives.
    H2 {
        algebra: PathBuf,
        #[arg(long)]
        module: Option<PathBuf>,
    },
    /// Build the central extension defined by a cocycle file.
    Extend {
        algebra: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
        #[arg(long)]
        module: Option<PathBuf>,
        /// Write the total algebra here instead of stdout.
        #[arg(long, short = 'o')]
        output: Option<PathBuf>,
    },
    /// Decide equivalence of the extensions built from two cocycles.
    EquivExt {
        algebra: PathBuf,
        #[arg(long)]
        cocycle: PathBuf,
        #[arg(long)]
        cocycle2: PathBuf,
        #[arg(long)]
        module: Option<PathBuf>,
    },
    /// Cohomology table: degree, cochain dimension, coboundary rank, and
    /// cohomology dimension for degrees 1..=n.
    Hochschild {
        algebra: PathBuf,
        #[arg(long)]
        degree: usize,
        /// Coefficients: "self", "trivial", or a module file path.
        #[arg(long, default_value = "trivial")]
        coeff: String,
    },
    /// Planar tree combinatorics for one degree.
    Trees {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        count: bool,
        #[arg(long)]
        list: bool,
        /// Print each tree with its position labels.
        #[arg(long)]
        labels: bool,
    },
    /// Verify a truncated deformation order by order.
    DeformVerify { deformation: PathBuf },
    /// Verify a formal automorphism as an equivalence of two deformations.
    DeformEquiv {
        d1: PathBuf,
        d2: PathBuf,
        #[arg(long)]
        phi: PathBuf,
    },
    /// Conjugate an algebra by an invertible map.
    Pushforward {
        algebra: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long, short = 'o')]
        output: Option<PathBuf>,
    },
    /// Inverse transport along an invertible map.
    Pullback {
        algebra: PathBuf,
        #[arg(long)]
        map: PathBuf,
        #[arg(long, short = 'o')]
        output: Option<PathBuf>,
    },
    /// Solve for all generalized derivation triples.
    Derive { algebra: PathBuf },
    /// Solve for the companions (D', D'') of a given D.
    DeriveCompanions {
        algebra: PathBuf,
        #[arg(long = "given-d")]
        given_d: PathBuf,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    };
    std::process::exit(code);
}

#[derive(Debug)]
enum CliError {
    Json(JsonError),
    Input(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Json(e) => write!(f, "{e}"),
            CliError::Input(m) => write!(f, "{m}"),
        }
    }
}

impl From<JsonError> for CliError {
    fn from(e: JsonError) -> Self {
        CliError::Json(e)
    }
}

fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

/// The module named on the command line, or the trivial line with identity
/// maps when omitted.
fn load_coefficients(
    algebra: &Trialgebra,
    module: &Option<PathBuf>,
) -> Result<TriBimodule, CliError> {
    match module {
        Some(path) => Ok(json::load_module(path, algebra)?),
        None => TriBimodule::trivial(
            algebra.clone(),
            1,
            Matrix::identity(1),
            Matrix::identity(1),
        )
        .map_err(input_err),
    }
}

fn require_central(module: &TriBimodule) -> Result<(), CliError> {
    if module.is_central() {
        Ok(())
    } else {
        Err(CliError::Input(
            "this command needs central coefficients (all module actions zero)".into(),
        ))
    }
}

fn require_cocycle_shape(
    t: &Trialgebra,
    module: &TriBimodule,
    f: &coho2::CocycleTriple,
) -> Result<(), CliError> {
    if f.alg_dim() != t.dim() || f.val_dim() != module.dim() {
        return Err(CliError::Input(format!(
            "cocycle has shape {}x{}x{}, expected {}x{}x{}",
            f.alg_dim(),
            f.alg_dim(),
            f.val_dim(),
            t.dim(),
            t.dim(),
            module.dim()
        )));
    }
    Ok(())
}

fn report_outcome(report: &ViolationReport, json_mode: bool) -> i32 {
    if json_mode {
        let rows: Vec<serde_json::Value> = report
            .violations()
            .iter()
            .map(|v| {
                serde_json::json!({
                    "law": v.law,
                    "witness": v.witness,
                    "defect": v.defect.iter().map(fmt_rat).collect::<Vec<_>>(),
                })
            })
            .collect();
        let payload = serde_json::json!({
            "status": if report.is_empty() { "pass" } else { "fail" },
            "violations": rows,
        });
        println!("{}", serde_json::to_string_pretty(&payload).unwrap());
    } else if report.is_empty() {
        println!("ok: no violations");
    } else {
        print!("{report}");
    }
    if report.is_empty() {
        0
    } else {
        1
    }
}

fn print_vector_rows(rows: &[Vec<Scalar>]) {
    for row in rows {
        let cells: Vec<String> = row.iter().map(fmt_rat).collect();
        println!("{}", cells.join("\t"));
    }
}

fn emit_algebra(t: &Trialgebra, output: &Option<PathBuf>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(&AlgebraFile::from_algebra(t)).unwrap();
    match output {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn max_degree_guard(requested: usize) -> Result<(), CliError> {
    let guard = std::env::var("TRIACO_MAX_DEGREE")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(4);
    if requested > guard {
        return Err(CliError::Input(format!(
            "degree {requested} exceeds the guard {guard}; raise TRIACO_MAX_DEGREE to allow it"
        )));
    }
    Ok(())
}

fn emit_cocycle_basis(
    t: &Trialgebra,
    module: &TriBimodule,
    basis: &[Vec<Scalar>],
    json_mode: bool,
) {
    if json_mode {
        let files: Vec<serde_json::Value> = basis
            .iter()
            .map(|v| {
                let f = coho2::CocycleTriple::from_vec(t.dim(), module.dim(), v);
                serde_json::to_value(CocycleFile::from_cocycle(&f)).unwrap()
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&files).unwrap());
    } else {
        println!("dim\t{}", basis.len());
        print_vector_rows(basis);
    }
}

fn run(cli: &Cli) -> Result<i32, CliError> {
    match &cli.command {
        Command::Check { algebra } => {
            let t = json::load_algebra(algebra)?;
            let mut report = t.check_axioms();
            for v in t.check_multiplicative().violations() {
                report.push(v.law.clone(), v.witness.clone(), v.defect.clone());
            }
            Ok(report_outcome(&report, cli.json))
        }
        Command::CheckModule { algebra, module } => {
            let t = json::load_algebra(algebra)?;
            let module = json::load_module(module, &t)?;
            Ok(report_outcome(&module.check_module_axioms(), cli.json))
        }
        Command::Center { algebra } => {
            let t = json::load_algebra(algebra)?;
            let center = t.center();
            if cli.json {
                let payload = serde_json::json!({
                    "dim": center.dim(),
                    "basis": center
                        .basis()
                        .iter()
                        .map(|v| v.iter().map(fmt_rat).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            } else {
                println!("dim\t{}", center.dim());
                print_vector_rows(center.basis());
            }
            Ok(0)
        }
        Command::Cocycles { algebra, module } => {
            let t = json::load_algebra(algebra)?;
            let module = load_coefficients(&t, module)?;
            require_central(&module)?;
            let space = coho2::cocycle_space(&t, &module).map_err(input_err)?;
            emit_cocycle_basis(&t, &module, space.basis(), cli.json);
            Ok(0)
        }
        Command::Coboundaries { algebra, module } => {
            let t = json::load_algebra(algebra)?;
            let module = load_coefficients(&t, module)?;
            require_central(&module)?;
            let space = coho2::coboundary_space(&t, &module).map_err(input_err)?;
            emit_cocycle_basis(&t, &module, space.basis(), cli.json);
            Ok(0)
        }
        Command::H2 { algebra, module } => {
            let t = json::load_algebra(algebra)?;
            let module = load_coefficients(&t, module)?;
            require_central(&module)?;
            let (dim, reps) = coho2::second_cohomology(&t, &module).map_err(input_err)?;
            if cli.json {
                let payload = serde_json::json!({
                    "dim": dim,
                    "representatives": reps
                        .iter()
                        .map(|f| serde_json::to_value(CocycleFile::from_cocycle(f)).unwrap())
                        .collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            } else {
                println!("dim\t{dim}");
                for f in &reps {
                    print_vector_rows(&[f.to_vec()]);
                }
            }
            Ok(0)
        }
        Command::Extend {
            algebra,
            cocycle,
            module,
            output,
        } => {
            let t = json::load_algebra(algebra)?;
            let module = load_coefficients(&t, module)?;
            require_central(&module)?;
            let f = json::load_cocycle(cocycle)?;
            require_cocycle_shape(&t, &module, &f)?;
            let e = coho2::central_extension(&t, &module, &f);
            emit_algebra(e.total(), output)?;
            let report = e.total().check_axioms();
            if !report.is_empty() {
                eprintln!("warning: the triple is not a cocycle; the total algebra fails:");
                eprint!("{report}");
                return Ok(1);
            }
            Ok(0)
        }
        Command::EquivExt {
            algebra,
            cocycle,
            cocycle2,
            module,
        } => {
            let t = json::load_algebra(algebra)?;
            let module = load_coefficients(&t, module)?;
            require_central(&module)?;
            let f = json::load_cocycle(cocycle)?;
            let g = json::load_cocycle(cocycle2)?;
            require_cocycle_shape(&t, &module, &f)?;
            require_cocycle_shape(&t, &module, &g)?;
            let e1 = coho2::central_extension(&t, &module, &f);
            let e2 = coho2::central_extension(&t, &module, &g);
            match coho2::are_equivalent(&e1, &e2).map_err(input_err)? {
                Some(witness) => {
                    if cli.json {
                        let payload = serde_json::json!({
                            "equivalent": true,
                            "mu": MapFile::from_matrix(&witness.mu).matrix,
                            "verified": witness.report.is_empty(),
                        });
                        println!("{}", serde_json::to_string_pretty(&payload).unwrap());
                    } else {
                        println!("equivalent");
                        print_vector_rows(&witness.mu.row_vecs());
                    }
                    Ok(if witness.report.is_empty() { 0 } else { 1 })
                }
                None => {
                    if cli.json {
                        let payload = serde_json::json!({ "equivalent": false });
                        println!("{}", serde_json::to_string_pretty(&payload).unwrap());
                    } else {
                        println!("not equivalent");
                    }
                    Ok(1)
                }
            }
        }
        Command::Hochschild {
            algebra,
            degree,
            coeff,
        } => {
            if *degree < 1 {
                return Err(CliError::Input("degree must be at least 1".into()));
            }
            max_degree_guard(*degree)?;
            let t = json::load_algebra(algebra)?;
            let module = match coeff.as_str() {
                "self" => TriBimodule::adjoint(t.clone()),
                "trivial" => TriBimodule::trivial(
                    t.clone(),
                    1,
                    Matrix::identity(1),
                    Matrix::identity(1),
                )
                .map_err(input_err)?,
                path => json::load_module(Path::new(path), &t)?,
            };
            let table = hochschild::cohomology_table(&t, &module, *degree);
            if cli.json {
                let rows: Vec<serde_json::Value> = table
                    .iter()
                    .map(|row| {
                        serde_json::json!({
                            "degree": row.degree,
                            "cochain_dim": row.cochain_dim,
                            "coboundary_rank": row.coboundary_rank,
                            "cohomology_dim": row.cohomology_dim,
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string_pretty(&rows).unwrap());
            } else {
                println!("degree\tdim_cochains\trank_delta\tdim_cohomology");
                for row in &table {
                    println!(
                        "{}\t{}\t{}\t{}",
                        row.degree, row.cochain_dim, row.coboundary_rank, row.cohomology_dim
                    );
                }
            }
            Ok(0)
        }
        Command::Trees {
            degree,
            count,
            list,
            labels,
        } => {
            let trees = enumerate_trees(*degree);
            if *count || !(*list || *labels) {
                println!("{}", trees.len());
            }
            if *list {
                for tree in &trees {
                    println!("{tree}");
                }
            }
            if *labels {
                for tree in &trees {
                    let mut cells = vec![tree.serialize()];
                    for i in 0..=tree.degree() {
                        cells.push(tree.op_label(i).unwrap().name().to_string());
                    }
                    println!("{}", cells.join("\t"));
                }
            }
            Ok(0)
        }
        Command::DeformVerify { deformation } => {
            let d = json::load_deformation(deformation)?;
            Ok(report_outcome(&d.verify(), cli.json))
        }
        Command::DeformEquiv { d1, d2, phi } => {
            let d1 = json::load_deformation(d1)?;
            let d2 = json::load_deformation(d2)?;
            let phi = json::load_automorphism(phi)?;
            let report = deformation::verify_equivalence(&d1, &d2, &phi).map_err(input_err)?;
            Ok(report_outcome(&report, cli.json))
        }
        Command::Pushforward {
            algebra,
            map,
            output,
        } => {
            let t = json::load_algebra(algebra)?;
            let phi = json::load_map(map)?;
            let pushed = deformation::pushforward(&t, &phi).map_err(input_err)?;
            emit_algebra(&pushed, output)?;
            Ok(0)
        }
        Command::Pullback {
            algebra,
            map,
            output,
        } => {
            let t = json::load_algebra(algebra)?;
            let phi = json::load_map(map)?;
            let pulled = deformation::pullback(&t, &phi).map_err(input_err)?;
            emit_algebra(&pulled, output)?;
            Ok(0)
        }
        Command::Derive { algebra } => {
            let t = json::load_algebra(algebra)?;
            let family = derivation::solve_derivations(&t);
            if cli.json {
                let basis: Vec<serde_json::Value> = family
                    .basis_triples()
                    .iter()
                    .map(|triple| {
                        serde_json::json!({
                            "d": MapFile::from_matrix(&triple.d).matrix,
                            "d_prime": MapFile::from_matrix(&triple.d_prime).matrix,
                            "d_second": MapFile::from_matrix(&triple.d_second).matrix,
                        })
                    })
                    .collect();
                let payload = serde_json::json!({
                    "parameters": family.param_names(),
                    "basis": basis,
                });
                println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            } else {
                println!("parameters\t{}", family.param_names().join(", "));
                print!("{}", family.render());
            }
            Ok(0)
        }
        Command::DeriveCompanions { algebra, given_d } => {
            let t = json::load_algebra(algebra)?;
            let d = json::load_map(given_d)?;
            let solutions = derivation::solve_companions(&t, &d).map_err(input_err)?;
            if cli.json {
                let payload = serde_json::json!({
                    "solvable": solutions.particular.is_some(),
                    "homogeneous_dim": solutions.homogeneous.dim(),
                    "particular": solutions.particular.as_ref().map(|(dp, dpp)| {
                        serde_json::json!({
                            "d_prime": MapFile::from_matrix(dp).matrix,
                            "d_second": MapFile::from_matrix(dpp).matrix,
                        })
                    }),
                });
                println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            } else {
                println!("homogeneous_dim\t{}", solutions.homogeneous.dim());
                match &solutions.particular {
                    Some((dp, dpp)) => {
                        println!("particular\tyes");
                        println!("d_prime:");
                        print_vector_rows(&dp.row_vecs());
                        println!("d_second:");
                        print_vector_rows(&dpp.row_vecs());
                    }
                    None => println!("particular\tno"),
                }
            }
            Ok(if solutions.particular.is_some() { 0 } else { 1 })
        }
    }
}
