//! Command-line surface: orbit catalogues, polarization and resolution
//! listings, degrees, flop decompositions and graphs, the exact-arithmetic
//! verification suite, finite-field fiber counts, closure strata, and sheet
//! matrix sampling.
//!
//! Output is deterministic for fixed inputs. List outputs in JSON mode are
//! newline-delimited records. Exit codes: 0 success, 1 invalid input,
//! 2 internal invariant violation.

use clap::{Parser, Subcommand};
use orbitflops::deform::{
    characteristic_map, generic_nilpotent_sample, product_coefficients, sample_sheet_matrix,
    EntrySource,
};
use orbitflops::error::Error;
use orbitflops::exactlin::dims::{algebra_basis, centralizer_dimension, stabilizer_dimension};
use orbitflops::exactlin::fiber::count_fiber_points;
use orbitflops::exactlin::flag::verify_flag;
use orbitflops::exactlin::form::Sign;
use orbitflops::exactlin::model::OrbitModel;
use orbitflops::exactlin::moves::{flag_flip_d, flag_swap};
use orbitflops::exactlin::scalar::{Field, Rat};
use orbitflops::flops::{chamber_summary, decompose, flop_graph};
use orbitflops::orbits::{
    classify_orbits, enumerate_polarizations, orbit_dimension, resolution_set, springer_degree,
    AlgebraKind, Family, FlagType, NilpotentOrbit, PolarizationDescriptor, VeryEvenLabel,
};
use orbitflops::partitions::{dominance_leq, partitions_of, Partition};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "orbitflops",
    about = "Nilpotent orbits, Springer resolutions, and elementary flop decompositions",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the nilpotent orbits of an algebra
    Orbits {
        /// Algebra as family:dimension, e.g. so:10
        algebra: String,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// List the polarizations of an orbit
    Polarizations {
        algebra: String,
        /// Jordan type as a comma list, e.g. 4,4,1,1
        partition: String,
        #[arg(long)]
        component: Option<String>,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// List the degree-one polarizations of an orbit
    Resolutions {
        algebra: String,
        partition: String,
        #[arg(long)]
        component: Option<String>,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Print the Springer-map degree of one polarization
    Degree {
        algebra: String,
        partition: String,
        /// Full flag type as a comma list, e.g. 2,1,2
        #[arg(long)]
        flag: String,
        #[arg(long)]
        sign: Option<String>,
        #[arg(long)]
        component: Option<String>,
    },
    /// Decompose the birational map between two resolutions into flop steps
    Decompose {
        algebra: String,
        partition: String,
        /// Flag type with optional sign suffix, e.g. 3,2,2,3:+
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        component: Option<String>,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Emit the flop graph of an orbit's resolutions
    Graph {
        algebra: String,
        partition: String,
        #[arg(long)]
        component: Option<String>,
        #[arg(long, default_value = "dot")]
        format: String,
    },
    /// Run the exact linear algebra suite for one orbit
    Verify {
        algebra: String,
        partition: String,
        #[arg(long)]
        component: Option<String>,
    },
    /// Count fiber points over a prime field and compare with the degree
    Fibers {
        algebra: String,
        partition: String,
        #[arg(long, default_value_t = 3)]
        field: u64,
        #[arg(long)]
        flag: Option<String>,
        #[arg(long)]
        sign: Option<String>,
        #[arg(long)]
        component: Option<String>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// List the orbit partitions in the dominance closure of an orbit
    Strata {
        algebra: String,
        partition: String,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Sample a sheet matrix and print its characteristic map
    Deform {
        /// Diagonal block sizes, e.g. 2,1
        blocks: String,
        /// Diagonal parameters (rationals), zero when omitted
        #[arg(long)]
        diag: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "text")]
        format: String,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap would exit 2 on bad flags; the contract here is exit 1
            if e.use_stderr() {
                eprint!("{}", e);
                std::process::exit(1);
            }
            print!("{}", e);
            std::process::exit(0);
        }
    };
    match run(cli) {
        Ok(()) => {}
        Err(Error::InvalidInput(msg)) => {
            eprintln!("error: {}", msg);
            std::process::exit(1);
        }
        Err(Error::Invariant(msg)) => {
            eprintln!("internal invariant violation: {}", msg);
            std::process::exit(2);
        }
    }
}

fn max_dim() -> usize {
    std::env::var("ORBITFLOPS_MAX_DIM")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(12)
}

fn parse_algebra(s: &str) -> Result<AlgebraKind, Error> {
    let algebra = AlgebraKind::parse(s)?;
    if algebra.ambient > max_dim() {
        return Err(Error::InvalidInput(format!(
            "ambient dimension {} exceeds the cap {} (ORBITFLOPS_MAX_DIM)",
            algebra.ambient,
            max_dim()
        )));
    }
    Ok(algebra)
}

fn parse_usize_list(s: &str) -> Result<Vec<usize>, Error> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidInput(format!("bad integer '{}'", t)))
        })
        .collect()
}

fn parse_partition(s: &str) -> Result<Partition, Error> {
    Partition::new(parse_usize_list(s)?)
}

fn parse_sign(s: &str) -> Result<Sign, Error> {
    match s {
        "+" => Ok(Sign::Plus),
        "-" => Ok(Sign::Minus),
        other => Err(Error::InvalidInput(format!("bad sign '{}'", other))),
    }
}

fn parse_component(s: Option<&str>) -> Result<Option<VeryEvenLabel>, Error> {
    match s {
        None => Ok(None),
        Some("I") => Ok(Some(VeryEvenLabel::I)),
        Some("II") => Ok(Some(VeryEvenLabel::II)),
        Some(other) => Err(Error::InvalidInput(format!("bad component '{}'", other))),
    }
}

fn make_orbit(
    algebra: AlgebraKind,
    partition: &str,
    component: Option<&str>,
) -> Result<NilpotentOrbit, Error> {
    let d = parse_partition(partition)?;
    let very_even =
        algebra.family == Family::So && algebra.ambient.is_multiple_of(2) && d.is_very_even();
    let component = match parse_component(component)? {
        Some(c) => {
            if !very_even {
                return Err(Error::InvalidInput(
                    "component labels apply only to very even orthogonal types".into(),
                ));
            }
            Some(c)
        }
        None => {
            if very_even {
                Some(VeryEvenLabel::I) // default; see --component
            } else {
                None
            }
        }
    };
    NilpotentOrbit::new(algebra, d, component)
}

/// Splits a full block sequence into the flag type of the algebra.
fn parse_flag_type(algebra: AlgebraKind, list: &str) -> Result<FlagType, Error> {
    let blocks = parse_usize_list(list)?;
    if blocks.is_empty() || blocks.contains(&0) {
        return Err(Error::InvalidInput("blocks must be positive".into()));
    }
    match algebra.family {
        Family::Sl => Ok(FlagType::Linear(blocks)),
        _ => {
            let s = blocks.len();
            let palindromic = (0..s).all(|i| blocks[i] == blocks[s - 1 - i]);
            if !palindromic {
                return Err(Error::InvalidInput(format!(
                    "isotropic flag type {:?} must be palindromic",
                    blocks
                )));
            }
            let k = s / 2;
            let (half, middle) = if s % 2 == 0 {
                (blocks[..k].to_vec(), 0)
            } else {
                (blocks[..k].to_vec(), blocks[k])
            };
            Ok(FlagType::Isotropic { half, middle })
        }
    }
}

fn find_descriptor(
    orbit: &NilpotentOrbit,
    flag: &str,
    sign: Option<&str>,
) -> Result<PolarizationDescriptor, Error> {
    let ft = parse_flag_type(orbit.algebra, flag)?;
    let sign = match sign {
        None => None,
        Some(s) => Some(parse_sign(s)?),
    };
    let all = enumerate_polarizations(orbit)?;
    let matches: Vec<PolarizationDescriptor> = all
        .into_iter()
        .filter(|d| d.flag_type == ft && (sign.is_none() || d.sign == sign))
        .collect();
    match matches.len() {
        0 => Err(Error::InvalidInput(format!(
            "({}) is not a polarization of {}",
            flag, orbit
        ))),
        1 => Ok(matches.into_iter().next().unwrap()),
        _ => Err(Error::InvalidInput(format!(
            "({}) is ambiguous for {}; pass --sign +|-",
            flag, orbit
        ))),
    }
}

/// Parses "3,2,2,3" or "3,2,2,3:+".
fn find_endpoint(orbit: &NilpotentOrbit, spec: &str) -> Result<PolarizationDescriptor, Error> {
    match spec.rsplit_once(':') {
        Some((flag, sign)) => find_descriptor(orbit, flag, Some(sign)),
        None => find_descriptor(orbit, spec, None),
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Orbits { algebra, format } => {
            let algebra = parse_algebra(&algebra)?;
            for orbit in classify_orbits(algebra) {
                let dim = orbit_dimension(&orbit);
                if format == "json" {
                    let mut j = orbit.to_json();
                    j["orbit_dim"] = json!(dim);
                    println!("{}", j);
                } else {
                    println!("{}  dim {}", orbit, dim);
                }
            }
            Ok(())
        }
        Command::Polarizations {
            algebra,
            partition,
            component,
            format,
        } => {
            let orbit = make_orbit(parse_algebra(&algebra)?, &partition, component.as_deref())?;
            for d in enumerate_polarizations(&orbit)? {
                print_descriptor(&d, &format)?;
            }
            Ok(())
        }
        Command::Resolutions {
            algebra,
            partition,
            component,
            format,
        } => {
            let orbit = make_orbit(parse_algebra(&algebra)?, &partition, component.as_deref())?;
            for d in resolution_set(&orbit)? {
                print_descriptor(&d, &format)?;
            }
            Ok(())
        }
        Command::Degree {
            algebra,
            partition,
            flag,
            sign,
            component,
        } => {
            let orbit = make_orbit(parse_algebra(&algebra)?, &partition, component.as_deref())?;
            let d = find_descriptor(&orbit, &flag, sign.as_deref())?;
            println!("{}", springer_degree(&d)?);
            Ok(())
        }
        Command::Decompose {
            algebra,
            partition,
            from,
            to,
            component,
            format,
        } => {
            let orbit = make_orbit(parse_algebra(&algebra)?, &partition, component.as_deref())?;
            let from = find_endpoint(&orbit, &from)?;
            let to = find_endpoint(&orbit, &to)?;
            let dec = decompose(&orbit, &from, &to)?;
            if format == "json" {
                for step in &dec.steps {
                    println!("{}", step.to_json());
                }
            } else {
                println!("{} --> {}: {} step(s)", dec.from, dec.to, dec.steps.len());
                for (i, step) in dec.steps.iter().enumerate() {
                    println!(
                        "  {}. {} at {} over {}  base ({})",
                        i + 1,
                        step.kind,
                        step.position,
                        step.local_orbit,
                        step.base_flag_type
                            .iter()
                            .map(|b| b.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    );
                }
            }
            Ok(())
        }
        Command::Graph {
            algebra,
            partition,
            component,
            format,
        } => {
            let orbit = make_orbit(parse_algebra(&algebra)?, &partition, component.as_deref())?;
            let graph = flop_graph(&orbit)?;
            match format.as_str() {
                "dot" => print!("{}", graph.to_dot()),
                "json" => println!("{}", graph.to_json()),
                "text" => {
                    let summary = chamber_summary(&orbit)?;
                    println!(
                        "{}: {} resolutions, {} flop edges, {} chambers, picard rank {} (heuristic)",
                        orbit,
                        summary.vertices,
                        summary.edges,
                        summary.chambers,
                        summary.picard_rank
                    );
                    for (i, v) in graph.vertices.iter().enumerate() {
                        println!("vertex {}: {}", i, v.descriptor);
                        for c in &v.contractions {
                            println!("  {} at {}: {}", c.class.name(), c.site, c.local_model);
                        }
                    }
                    for e in &graph.edges {
                        println!(
                            "edge {} -- {}: {} over {}",
                            graph.vertex_label(e.a),
                            graph.vertex_label(e.b),
                            e.step.kind,
                            e.step.local_orbit
                        );
                    }
                }
                other => return Err(Error::InvalidInput(format!("unknown format '{}'", other))),
            }
            Ok(())
        }
        Command::Verify {
            algebra,
            partition,
            component,
        } => {
            let orbit = make_orbit(parse_algebra(&algebra)?, &partition, component.as_deref())?;
            run_verify(&orbit)
        }
        Command::Fibers {
            algebra,
            partition,
            field,
            flag,
            sign,
            component,
            jobs,
            format,
        } => {
            let orbit = make_orbit(parse_algebra(&algebra)?, &partition, component.as_deref())?;
            let descriptors = match flag {
                Some(flag) => vec![find_descriptor(&orbit, &flag, sign.as_deref())?],
                None => enumerate_polarizations(&orbit)?,
            };
            let mut all_ok = true;
            for d in descriptors {
                let count = count_fiber_points(&orbit, &d, field, jobs)?;
                let degree = springer_degree(&d)? as u64;
                let ok = count == degree;
                all_ok &= ok;
                if format == "json" {
                    let mut j = d.to_json();
                    j["field"] = json!(field);
                    j["count"] = json!(count);
                    j["degree"] = json!(degree);
                    j["match"] = json!(ok);
                    println!("{}", j);
                } else {
                    println!(
                        "{} over F_{}: {} point(s), degree {} [{}]",
                        d,
                        field,
                        count,
                        degree,
                        if ok { "ok" } else { "MISMATCH" }
                    );
                }
            }
            if !all_ok {
                return Err(Error::Invariant(
                    "fiber count disagrees with the degree formula".into(),
                ));
            }
            Ok(())
        }
        Command::Strata {
            algebra,
            partition,
            format,
        } => {
            let algebra = parse_algebra(&algebra)?;
            let orbit = make_orbit(algebra, &partition, None)?;
            let mut strata: Vec<Partition> = partitions_of(algebra.ambient)
                .into_iter()
                .filter(|e| {
                    orbitflops::orbits::is_valid_orbit_partition(e, algebra).unwrap_or(false)
                })
                .filter(|e| dominance_leq(e, &orbit.jordan_type).unwrap_or(false))
                .collect();
            strata.sort_by(|a, b| b.cmp(a));
            for s in strata {
                if format == "json" {
                    println!("{}", json!(s.parts()));
                } else {
                    println!("{}", s);
                }
            }
            Ok(())
        }
        Command::Deform {
            blocks,
            diag,
            seed,
            format,
        } => {
            let blocks = parse_usize_list(&blocks)?;
            let diag: Vec<Rat> = match diag {
                None => vec![Rat::int(0); blocks.len()],
                Some(s) => s
                    .split(',')
                    .map(|t| {
                        Rat::parse(t)
                            .ok_or_else(|| Error::InvalidInput(format!("bad rational '{}'", t)))
                    })
                    .collect::<Result<_, _>>()?,
            };
            let sheet = sample_sheet_matrix(&blocks, &diag, EntrySource::Seeded(seed))?;
            let ch = characteristic_map(&sheet)?;
            let expected = product_coefficients(&blocks, &diag);
            if !expected[0].is_zero() || ch.as_slice() != &expected[1..] {
                return Err(Error::Invariant(
                    "characteristic map disagrees with the product expansion".into(),
                ));
            }
            let zero_diag = diag.iter().all(|a| a.is_zero());
            let jordan_at_zero = if zero_diag {
                Some(generic_nilpotent_sample(&blocks, seed)?.1)
            } else {
                None
            };
            if format == "json" {
                let mut j = sheet.to_json();
                j["char_map"] = json!(ch.iter().map(|c| c.to_string()).collect::<Vec<_>>());
                j["jordan_type_at_zero"] =
                    json!(jordan_at_zero.as_ref().map(|t| t.parts().to_vec()));
                println!("{}", j);
            } else {
                println!(
                    "blocks ({})  diag ({})",
                    blocks
                        .iter()
                        .map(|b| b.to_string())
                        .collect::<Vec<_>>()
                        .join(","),
                    diag.iter()
                        .map(|a| a.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                );
                println!(
                    "characteristic map: ({})",
                    ch.iter()
                        .map(|c| c.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                );
                if let Some(t) = jordan_at_zero {
                    println!("generic nilpotent Jordan type at zero: {}", t);
                }
            }
            Ok(())
        }
    }
}

fn print_descriptor(d: &PolarizationDescriptor, format: &str) -> Result<(), Error> {
    if format == "json" {
        let mut j = d.to_json();
        j["degree"] = json!(springer_degree(d)?);
        println!("{}", j);
    } else {
        println!("{}  degree {}", d, springer_degree(d)?);
    }
    Ok(())
}

/// The per-orbit exact verification suite: constructed flags pass the
/// structural checks, moves are involutive, and the dimension identity
/// dim O = 2 dim G/P holds against the nullspace oracles.
fn run_verify(orbit: &NilpotentOrbit) -> Result<(), Error> {
    let model = OrbitModel::new(orbit)?;
    let basis = algebra_basis(orbit.algebra.ambient, model.form.as_ref(), &Rat::int(1));
    let dim_g = basis.len();
    if dim_g != orbit.algebra.dim_g() {
        return Err(Error::Invariant(format!(
            "algebra dimension {} != expected {}",
            dim_g,
            orbit.algebra.dim_g()
        )));
    }
    println!("ok algebra dimension {}", dim_g);
    let x = model.x()?;
    let centralizer = centralizer_dimension(&basis, &x)?;
    let dim_orbit = orbit_dimension(orbit);
    if dim_g - centralizer != dim_orbit {
        return Err(Error::Invariant(format!(
            "centralizer gives orbit dimension {}, closed form {}",
            dim_g - centralizer,
            dim_orbit
        )));
    }
    println!("ok orbit dimension {} (centralizer oracle)", dim_orbit);

    let pols = enumerate_polarizations(orbit)?;
    if pols.is_empty() {
        println!("ok no polarizations");
        return Ok(());
    }
    // everything below runs in the standard (untwisted) model; a very even
    // second component is its isometric conjugate, with signs flipped
    let work = OrbitModel {
        twist: None,
        ..model.clone()
    };
    for d in &pols {
        let flags = work.flags_for_type(&d.flag_type)?;
        let mut relevant = 0usize;
        for (bits, flag) in &flags {
            if let Some(sign) = d.sign {
                let std_sign = if model.twist.is_some() {
                    sign.flip()
                } else {
                    sign
                };
                if work.middle_sign(flag)? != std_sign {
                    continue;
                }
            }
            relevant += 1;
            let report = verify_flag(&model.jd, model.form.as_ref(), flag);
            if !report.is_ok() {
                return Err(Error::Invariant(format!(
                    "{} flag {:?}: {}",
                    d,
                    bits,
                    report.failures.join("; ")
                )));
            }
            let stab = stabilizer_dimension(&basis, flag)?;
            if 2 * (dim_g - stab) != dim_orbit {
                return Err(Error::Invariant(format!(
                    "{}: 2 dim G/P = {} but orbit dimension is {}",
                    d,
                    2 * (dim_g - stab),
                    dim_orbit
                )));
            }
            // involution spot checks on every admissible move
            let ty = flag.block_type();
            let limit = match &d.flag_type {
                FlagType::Linear(_) => ty.len(),
                FlagType::Isotropic { half, .. } => half.len(),
            };
            for j in 2..=limit {
                if ty[j - 2] == ty[j - 1] {
                    continue;
                }
                let once = flag_swap(&model.jd, model.form.as_ref(), flag, j)?;
                let twice = flag_swap(&model.jd, model.form.as_ref(), &once, j)?;
                if twice != *flag {
                    return Err(Error::Invariant(format!(
                        "{}: swap at {} is not involutive",
                        d, j
                    )));
                }
            }
            if let FlagType::Isotropic { half, middle: 0 } = &d.flag_type {
                // the middle flip is an orthogonal move
                if orbit.algebra.epsilon() == Some(orbitflops::partitions::Parity::Even)
                    && half.last().is_some_and(|&pk| pk % 2 == 1)
                {
                    let form = model.form.as_ref().unwrap();
                    let once = flag_flip_d(&model.jd, form, flag)?;
                    let twice = flag_flip_d(&model.jd, form, &once)?;
                    if twice != *flag {
                        return Err(Error::Invariant(format!(
                            "{}: middle flip is not involutive",
                            d
                        )));
                    }
                }
            }
        }
        println!(
            "ok {}  degree {}  flags {}  dim identity",
            d,
            springer_degree(d)?,
            relevant
        );
    }
    Ok(())
}
