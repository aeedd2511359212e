//! Command line front end: computes quotient fans, good models, goodness
//! checks, affine quotients, orbit closures and induced model maps from
//! canonical JSON documents.
//!
//! Exit codes: 0 success, 1 input or validation error, 2 internal
//! invariant or oracle mismatch, 3 negative check result.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use toric_fans::document::{
    from_json, to_canonical_json, AffineQuotientDocument, FanDocument, GoodModelDocument,
    GoodnessDocument, MatrixDocument, OrbitClosureDocument, QuotientDocument, SublatticeDocument,
};
use toric_fans::fan::orbit_closure_fan;
use toric_fans::{
    affine_quotient, check_good_quotient, codim2_quotient_oracle, good_model, induced_model_map,
    quotient_fan, Classification, Cone, ConeSystem, Error, Fan, SublatticeBasis, Violation,
};

#[derive(Parser)]
#[command(
    name = "toric-fans",
    version,
    about = "Toric quotients on fans, exactly"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AcceptClass {
    Fan,
    Quasifan,
    System,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleKind {
    Codim2,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a fan document as Fan, Quasifan or ConeSystem.
    Validate {
        fan: PathBuf,
        /// Weakest classification accepted with exit code 0.
        #[arg(long, value_enum, default_value = "fan")]
        accept: AcceptClass,
    },
    /// Quotient fan of a fan (or cone system) by a primitive sublattice.
    Quotient {
        #[arg(long)]
        fan: PathBuf,
        #[arg(long)]
        sublattice: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Append the loop trace to the output document.
        #[arg(long)]
        trace: bool,
        /// Cross-check against an independent construction.
        #[arg(long, value_enum)]
        oracle: Option<OracleKind>,
        /// Accept inputs that are not valid fans.
        #[arg(long)]
        allow_system: bool,
        /// Saturate a non-primitive sublattice instead of rejecting it.
        #[arg(long)]
        saturate: bool,
    },
    /// Good model of a fan with respect to a primitive sublattice.
    GoodModel {
        #[arg(long)]
        fan: PathBuf,
        #[arg(long)]
        sublattice: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        saturate: bool,
    },
    /// Check whether the toric quotient is a good (or geometric) quotient.
    CheckGood {
        #[arg(long)]
        fan: PathBuf,
        #[arg(long)]
        sublattice: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Exit 0 only for geometric quotients.
        #[arg(long)]
        require_geometric: bool,
        #[arg(long)]
        saturate: bool,
    },
    /// Toric quotient of a single strictly convex cone.
    AffineQuotient {
        /// Fan document with exactly one listed cone.
        #[arg(long)]
        cone: PathBuf,
        #[arg(long)]
        sublattice: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        saturate: bool,
    },
    /// Orbit-closure fan of the cone at the given index of the face-closed
    /// cone list (canonical order).
    OrbitClosure {
        #[arg(long)]
        fan: PathBuf,
        #[arg(long)]
        cone_index: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Map induced between the good models of two fans by an equivariant
    /// map of fans.
    InducedMap {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        src_fan: PathBuf,
        #[arg(long)]
        src_sublattice: PathBuf,
        #[arg(long)]
        dst_fan: PathBuf,
        #[arg(long)]
        dst_sublattice: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        saturate: bool,
    },
}

fn read_text(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path)
        .map_err(|e| Error::Document(format!("cannot read {}: {e}", path.display())))
}

fn load_fan_document(path: &Path) -> Result<FanDocument, Error> {
    from_json(&read_text(path)?)
}

fn load_fan(path: &Path) -> Result<Fan, Error> {
    load_fan_document(path)?.to_fan()
}

fn load_sublattice(path: &Path, saturate: bool) -> Result<SublatticeBasis, Error> {
    let doc: SublatticeDocument = from_json(&read_text(path)?)?;
    let basis = doc.to_basis()?;
    if basis.is_primitive() {
        Ok(basis)
    } else if saturate {
        Ok(basis.saturate())
    } else {
        Err(Error::NonPrimitiveSublattice)
    }
}

fn load_single_cone(path: &Path) -> Result<Cone, Error> {
    let doc = load_fan_document(path)?;
    let mut cones = doc.to_cones()?;
    if cones.len() != 1 {
        return Err(Error::Document(format!(
            "expected exactly one cone, found {}",
            cones.len()
        )));
    }
    Ok(cones.pop().expect("one cone"))
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::Document(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn classification_name(class: Classification) -> &'static str {
    match class {
        Classification::Fan => "Fan",
        Classification::Quasifan => "Quasifan",
        Classification::ConeSystem => "ConeSystem",
    }
}

fn violation_line(v: &Violation) -> String {
    match v {
        Violation::NotStrictlyConvex { cone } => {
            format!("violation: not-strictly-convex cone={cone}")
        }
        Violation::MissingFace { cone, .. } => format!("violation: missing-face cone={cone}"),
        Violation::ImproperIntersection { first, second } => {
            format!("violation: improper-intersection first={first} second={second}")
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Validate { fan, accept } => {
            let system = load_fan_document(&fan)?.to_system()?;
            let (class, violations) = system.validate();
            let mut report = format!("classification: {}\n", classification_name(class));
            for v in &violations {
                report.push_str(&violation_line(v));
                report.push('\n');
            }
            print!("{report}");
            let required = match accept {
                AcceptClass::Fan => Classification::Fan,
                AcceptClass::Quasifan => Classification::Quasifan,
                AcceptClass::System => Classification::ConeSystem,
            };
            Ok(if class >= required { 0 } else { 3 })
        }
        Command::Quotient {
            fan,
            sublattice,
            out,
            trace,
            oracle,
            allow_system,
            saturate,
        } => {
            let doc = load_fan_document(&fan)?;
            let system: ConeSystem = if allow_system {
                doc.to_system()?
            } else {
                doc.to_fan()?.system().clone()
            };
            let l = load_sublattice(&sublattice, saturate)?;
            let result = quotient_fan(&system, &l)?;
            if let Some(OracleKind::Codim2) = oracle {
                let input_fan = doc.to_fan()?;
                let independent = codim2_quotient_oracle(&input_fan, &l)?;
                if !result.same_quotient(&independent) {
                    return Err(Error::InternalInvariant(
                        "independent rank-2 construction disagrees with the quotient".into(),
                    ));
                }
            }
            let text = to_canonical_json(&QuotientDocument::from_result(&result, trace));
            emit(&text, &out)?;
            Ok(0)
        }
        Command::GoodModel {
            fan,
            sublattice,
            out,
            saturate,
        } => {
            let f = load_fan(&fan)?;
            let l = load_sublattice(&sublattice, saturate)?;
            let model = good_model(&f, &l)?;
            let text = to_canonical_json(&GoodModelDocument::from_model(&model));
            emit(&text, &out)?;
            Ok(0)
        }
        Command::CheckGood {
            fan,
            sublattice,
            out,
            require_geometric,
            saturate,
        } => {
            let f = load_fan(&fan)?;
            let l = load_sublattice(&sublattice, saturate)?;
            let result = quotient_fan(f.system(), &l)?;
            let report = check_good_quotient(&f, &result)?;
            let text = to_canonical_json(&GoodnessDocument::from_report(&report));
            emit(&text, &out)?;
            let passed = if require_geometric {
                report.is_geometric
            } else {
                report.is_good
            };
            Ok(if passed { 0 } else { 3 })
        }
        Command::AffineQuotient {
            cone,
            sublattice,
            out,
            saturate,
        } => {
            let sigma = load_single_cone(&cone)?;
            let l = load_sublattice(&sublattice, saturate)?;
            let affine = affine_quotient(&sigma, &l)?;
            let text =
                to_canonical_json(&AffineQuotientDocument::from_affine(sigma.rank(), &affine));
            emit(&text, &out)?;
            Ok(0)
        }
        Command::OrbitClosure {
            fan,
            cone_index,
            out,
        } => {
            let f = load_fan(&fan)?;
            let cones = f.cones();
            let tau = cones.get(cone_index).ok_or_else(|| {
                Error::Document(format!(
                    "cone index {cone_index} out of bounds: fan has {} cones",
                    cones.len()
                ))
            })?;
            let (lattice, projected) = orbit_closure_fan(&f, tau)?;
            let doc = OrbitClosureDocument {
                format_version: toric_fans::document::FORMAT_VERSION,
                ambient_rank: f.rank(),
                sublattice: lattice
                    .basis()
                    .iter()
                    .map(|v| v.iter().map(|x| x.to_str_radix(10)).collect())
                    .collect(),
                projection: MatrixDocument::from_matrix(&lattice.quotient_projection()?),
                fan: FanDocument::from_fan(&projected),
            };
            emit(&to_canonical_json(&doc), &out)?;
            Ok(0)
        }
        Command::InducedMap {
            matrix,
            src_fan,
            src_sublattice,
            dst_fan,
            dst_sublattice,
            out,
            saturate,
        } => {
            let mdoc: MatrixDocument = from_json(&read_text(&matrix)?)?;
            let f = mdoc.to_matrix()?;
            let src = load_fan(&src_fan)?;
            let src_l = load_sublattice(&src_sublattice, saturate)?;
            let dst = load_fan(&dst_fan)?;
            let dst_l = load_sublattice(&dst_sublattice, saturate)?;
            let src_model = good_model(&src, &src_l)?;
            let dst_model = good_model(&dst, &dst_l)?;
            let induced =
                induced_model_map(&f, (&src, &src_l), (&dst, &dst_l), &src_model, &dst_model)?;
            let text = to_canonical_json(&MatrixDocument::from_matrix(&induced));
            emit(&text, &out)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::InternalInvariant(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
