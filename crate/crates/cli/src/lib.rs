//! The `gauss` command line: argument parsing, dispatch, and JSON output.

use clap::{Parser, Subcommand};
use gauss_core::classgroup::{compose, dirichlet_compose};
use gauss_core::clifford::oriented_similar;
use gauss_core::hecke::{hecke_table, OmfSpace};
use gauss_core::json::int_repr;
use gauss_core::universal::verify_all;
use gauss_core::{
    clifford, BinaryForm, ClassGroup, Discriminant, Error, GoodFrameModule, Matrix2, Variant,
};
use num_bigint::BigInt;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(
    name = "gauss",
    version,
    about = "Binary quadratic forms, composition and class groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduce a form and report the reducing map
    #[command(allow_negative_numbers = true)]
    Reduce { a: BigInt, b: BigInt, c: BigInt },
    /// Decide equivalence of two forms
    #[command(allow_negative_numbers = true)]
    Equiv {
        #[arg(num_args = 6, value_names = ["A", "B", "C", "A2", "B2", "C2"])]
        coeffs: Vec<BigInt>,
        /// Proper (SL2) equivalence; the default
        #[arg(long, conflicts_with = "wide")]
        narrow: bool,
        /// Oriented similarity: SL2 equivalence up to the orientation twist
        #[arg(long)]
        wide: bool,
    },
    /// Compose two forms of the same discriminant
    #[command(allow_negative_numbers = true)]
    Compose {
        #[arg(num_args = 6, value_names = ["A", "B", "C", "A2", "B2", "C2"])]
        coeffs: Vec<BigInt>,
        /// Use the classical united-forms algorithm instead of modules
        #[arg(long)]
        oracle: bool,
    },
    /// Class group of a discriminant
    #[command(allow_negative_numbers = true)]
    Classgroup {
        d: BigInt,
        /// Narrow class group (proper equivalence classes)
        #[arg(long)]
        narrow: bool,
    },
    /// Even Clifford ring and odd Clifford module of a form
    #[command(allow_negative_numbers = true)]
    Clifford { a: BigInt, b: BigInt, c: BigInt },
    /// Norm form of the good frame (a, b, c) over the ring (t, n)
    #[command(allow_negative_numbers = true)]
    Norm {
        t: BigInt,
        n: BigInt,
        a: BigInt,
        b: BigInt,
        c: BigInt,
    },
    /// Hecke operators and eigenvalues for split primes up to pmax
    #[command(allow_negative_numbers = true)]
    Hecke { d: BigInt, pmax: u64 },
    /// Re-run the symbolic identity certificates
    VerifyUniversal,
}

/// Exit code and JSON document for one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub output: Value,
}

impl Outcome {
    fn ok(output: Value) -> Self {
        Outcome { code: 0, output }
    }

    fn user_error(kind: &str, detail: String) -> Self {
        Outcome {
            code: 2,
            output: json!({ "error": kind, "detail": detail }),
        }
    }
}

fn int(v: &BigInt) -> Value {
    serde_json::to_value(int_repr(v)).expect("integers serialize")
}

fn form_json(f: &BinaryForm) -> Value {
    json!([int(&f.a), int(&f.b), int(&f.c)])
}

fn matrix_json(m: &Matrix2) -> Value {
    json!([[int(&m.m11), int(&m.m12)], [int(&m.m21), int(&m.m22)]])
}

fn module_json(m: &GoodFrameModule) -> Value {
    json!({
        "ring": [int(&m.ring.t), int(&m.ring.n)],
        "frame": [int(&m.a), int(&m.b), int(&m.c)],
        "shift": int(&m.shift),
        "action": matrix_json(&m.action_matrix()),
    })
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidDiscriminant(..) => "invalid_discriminant",
        Error::DegenerateForm { .. } => "degenerate_form",
        Error::Imprimitive { .. } => "imprimitive_form",
        Error::NegativeDefinite { .. } => "negative_definite",
        Error::NotReduced { .. } => "not_reduced",
        Error::NotUnimodular(_) => "not_unimodular",
        Error::DiscriminantMismatch(..) => "discriminant_mismatch",
        Error::DegenerateRing { .. } => "degenerate_ring",
        Error::NotAModule => "not_a_module",
        Error::NotPseudoregular { .. } => "not_pseudoregular",
        Error::NotGoodFrame(_) => "not_good_frame",
        Error::NotInvertible(_) => "not_invertible",
        Error::RingMismatch(..) => "ring_mismatch",
        Error::NotPrime(_) => "not_prime",
        Error::BadPrime(_) => "bad_prime",
        Error::NotSplit(_) => "not_split",
        Error::Unsupported(_) => "unsupported",
        Error::ContextMismatch => "context_mismatch",
        Error::Invariant(_) => "internal",
    }
}

fn forms_of(coeffs: &[BigInt]) -> (BinaryForm, BinaryForm) {
    let f = BinaryForm::new(coeffs[0].clone(), coeffs[1].clone(), coeffs[2].clone());
    let g = BinaryForm::new(coeffs[3].clone(), coeffs[4].clone(), coeffs[5].clone());
    (f, g)
}

fn require_primitive(f: &BinaryForm) -> Result<(), Error> {
    f.checked_discriminant()?;
    if f.is_primitive() {
        Ok(())
    } else {
        Err(Error::Imprimitive {
            a: f.a.clone(),
            b: f.b.clone(),
            c: f.c.clone(),
        })
    }
}

fn dispatch(command: Command) -> Result<Value, Error> {
    match command {
        Command::Reduce { a, b, c } => {
            let f = BinaryForm::new(a, b, c);
            let (r, m) = f.reduce()?;
            Ok(
                json!({ "form": form_json(&r), "map": [int(&m.p), int(&m.q), int(&m.r), int(&m.s)] }),
            )
        }
        Command::Equiv { coeffs, wide, .. } => {
            let (f, g) = forms_of(&coeffs);
            for h in [&f, &g] {
                require_primitive(h)?;
            }
            let (relation, equivalent) = if wide {
                ("wide", oriented_similar(&f, &g)?)
            } else {
                ("narrow", f.proper_equivalent(&g)?)
            };
            Ok(json!({ "equivalent": equivalent, "relation": relation }))
        }
        Command::Compose { coeffs, oracle } => {
            let (f, g) = forms_of(&coeffs);
            let h = if oracle {
                dirichlet_compose(&f, &g)?
            } else {
                compose(&f, &g)?
            };
            Ok(json!({ "form": form_json(&h) }))
        }
        Command::Classgroup { d, narrow } => {
            let d = Discriminant::new(d)?;
            let variant = if narrow {
                Variant::Narrow
            } else {
                Variant::Wide
            };
            let g = ClassGroup::new(&d, variant)?;
            Ok(json!({
                "disc": int(d.value()),
                "variant": variant.to_string(),
                "h": g.order(),
                "structure": g.structure.iter().map(|c| c.order).collect::<Vec<_>>(),
                "generators": g.structure.iter().map(|c| c.generator).collect::<Vec<_>>(),
                "reps": g.reps.iter().map(form_json).collect::<Vec<_>>(),
                "table": g.table,
            }))
        }
        Command::Clifford { a, b, c } => {
            let f = BinaryForm::new(a, b, c);
            let pair = clifford(&f)?;
            Ok(json!({
                "ring": [int(&pair.ring.t), int(&pair.ring.n)],
                "disc": int(&pair.ring.discriminant()),
                "module": module_json(&pair.module),
                "orientation": pair.orientation.sign(),
            }))
        }
        Command::Norm { t, n, a, b, c } => {
            let m = GoodFrameModule::from_frame(t, n, a, b, c)?;
            let q = m.norm_form();
            Ok(json!({ "form": form_json(&q), "invertible": m.is_invertible() }))
        }
        Command::Hecke { d, pmax } => {
            let d = Discriminant::new(d)?;
            let space = OmfSpace::new(&d)?;
            let (chars, rows) = hecke_table(&space, pmax)?;
            Ok(json!({
                "disc": int(d.value()),
                "h": space.dimension(),
                "reps": space.group.reps.iter().map(form_json).collect::<Vec<_>>(),
                "exponent": space.group.exponent(),
                "characters": chars.iter().map(|c| c.exponents.clone()).collect::<Vec<_>>(),
                "primes": rows.iter().map(|r| json!({
                    "p": r.p,
                    "form": form_json(&r.form),
                    "class": r.class,
                    "permutation": r.permutation,
                    "eigenvalues": r.eigenvalues,
                })).collect::<Vec<_>>(),
            }))
        }
        Command::VerifyUniversal => {
            let reports = verify_all();
            if let Some(bad) = reports.iter().find(|r| !r.holds()) {
                return Err(Error::Invariant(format!(
                    "identity {} does not hold",
                    bad.name
                )));
            }
            Ok(json!({
                "identities": reports.iter().map(|r| json!({
                    "name": r.name,
                    "statement": r.statement,
                    "differences": r.differences.iter().map(ToString::to_string).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            }))
        }
    }
}

/// Parse `args` (including the program name) and run the command.
/// Help and version requests come back as `Err` with the text to print.
pub fn run<I, T>(args: I) -> Result<Outcome, String>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Err(e.to_string()),
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => Ok(Outcome::user_error(
                    "usage",
                    "missing command; see --help".into(),
                )),
                _ => {
                    let text = e.to_string();
                    let first = text.lines().next().unwrap_or_default();
                    Ok(Outcome::user_error(
                        "usage",
                        first.trim_start_matches("error: ").to_string(),
                    ))
                }
            };
        }
    };
    Ok(match dispatch(cli.command) {
        Ok(v) => Outcome::ok(v),
        Err(e) if e.is_internal() => Outcome {
            code: 1,
            output: json!({ "error": error_kind(&e), "detail": e.to_string() }),
        },
        Err(e) => Outcome::user_error(error_kind(&e), e.to_string()),
    })
}
