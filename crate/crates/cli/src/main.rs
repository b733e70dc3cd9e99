mod input;
mod report;

use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use motfilt_core::derham::{self, fp_lomega_closed, fp_lomega_euler, lomega_two_term};
use motfilt_core::motfilt::{
    c_infinity, graded_piece, milne_exponent, thh_of_homotopy, thh_z_homotopy, verify_cinf_fiber_seq,
    verify_cinf_for_ring, Theory,
};
use motfilt_core::numring::{NumberRing, RingSpec};
use motfilt_core::selftest::{self, CRITERIA, DEFAULT_SEED};
use motfilt_core::serde_int::format_rational;
use motfilt_core::zeta::{bloch_conductor_fq, special_value, verify_thm_fe, CurveSpec, CurveZeta};
use motfilt_core::{DiamondContext, HodgeDiamond};

use report::Report;

#[derive(Parser)]
#[command(name = "motfilt", version, about = "Exact calculators and verifiers for THH of number rings, correcting factors and zeta special values")]
struct Cli {
    /// Output format; TSV is a flattened view of the JSON report.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// π_i THH(Z)
    ThhZ {
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
    },
    /// π_i THH(O_F) for a monogenic ring of integers
    ThhOf {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
    },
    /// LΛ^i of the cotangent complex
    Lambda {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long)]
        degree: u32,
    },
    /// Cohomology of LΩ^{<2}; with --n, the summary for LΩ^{<n}
    Lomega2 {
        #[arg(long)]
        ring: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<i64>,
    },
    /// χ× of LΩ^{<n} for F_p against p^n
    FpEuler {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// C∞(X, n)
    Cinf {
        #[command(flatten)]
        source: DiamondSource,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Milne's exponent χ(X/F_q, O_X, n)
    Milne {
        #[arg(long)]
        diamond: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Graded piece gr^j_Z gr^n_F of THH, TP, TCminus or TCplus
    Graded {
        #[arg(long)]
        theory: String,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long)]
        j: u64,
        /// Evaluate the piece over this ring where an exact model exists.
        #[arg(long)]
        ring: Option<PathBuf>,
    },
    /// χ× of the fiber sequence product against C∞^{-1}
    VerifyCinf {
        #[command(flatten)]
        source: DiamondSource,
        #[arg(long)]
        n: i64,
    },
    /// Zeta function of a curve over F_q
    Zeta {
        #[arg(long)]
        curve: PathBuf,
    },
    /// Leading Taylor coefficient ζ*(X, n)
    Special {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Significant digits of the decimal rendering.
        #[arg(long, default_value_t = 50)]
        digits: u32,
    },
    /// Bloch conductor A(X) = q^{-χ}
    Conductor {
        #[arg(long)]
        curve: PathBuf,
    },
    /// q-exponent identity of the functional equation for a curve over F_q
    VerifyFe {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Defaults to the diamond of a curve of the zeta function's genus.
        #[arg(long)]
        diamond: Option<PathBuf>,
    },
    /// Run the acceptance checks
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Run only these checks (repeatable).
        #[arg(long, value_parser = criterion_name)]
        only: Vec<String>,
    },
}

#[derive(clap::Args)]
#[group(required = true, multiple = false)]
struct DiamondSource {
    #[arg(long)]
    ring: Option<PathBuf>,
    #[arg(long)]
    diamond: Option<PathBuf>,
}

fn criterion_name(s: &str) -> Result<String, String> {
    match selftest::find(s) {
        Some(c) => Ok(c.name.to_string()),
        None => {
            let names: Vec<&str> = CRITERIA.iter().map(|c| c.name).collect();
            Err(format!("expected one of {}", names.join(", ")))
        }
    }
}

/// Input problems; reported on stderr with exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Outcome = Result<Report, InputError>;

fn load_ring(path: &Path) -> Result<(RingSpec, NumberRing), InputError> {
    let spec: RingSpec = input::load(path).map_err(InputError)?;
    let ring = NumberRing::from_spec(spec.clone())?;
    Ok((spec, ring))
}

fn load_curve(path: &Path) -> Result<(CurveSpec, CurveZeta), InputError> {
    let spec: CurveSpec = input::load(path).map_err(InputError)?;
    let z = spec.build()?;
    Ok((spec, z))
}

fn load_diamond(path: &Path) -> Result<HodgeDiamond, InputError> {
    input::load(path).map_err(InputError)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("plain data")
}

/// Diamond from `--diamond`, or the `Spec O_F` diamond of `--ring`.
fn diamond_source(src: &DiamondSource) -> Result<(Value, HodgeDiamond, Option<NumberRing>), InputError> {
    match (&src.ring, &src.diamond) {
        (Some(path), _) => {
            let (spec, ring) = load_ring(path)?;
            let h = HodgeDiamond::spec_ring(ring.degree() as u64);
            Ok((json!({ "ring": to_value(&spec) }), h, Some(ring)))
        }
        (None, Some(path)) => {
            let h = load_diamond(path)?;
            Ok((json!({ "diamond": to_value(&h) }), h, None))
        }
        (None, None) => Err(InputError("one of --ring or --diamond is required".into())),
    }
}

fn with_n(mut inputs: Value, n: i64) -> Value {
    inputs["n"] = json!(n);
    inputs
}

fn run(cmd: Command) -> Outcome {
    Ok(match cmd {
        Command::ThhZ { degree } => {
            let g = thh_z_homotopy(degree);
            Report::new(
                "thh-z",
                json!({ "degree": degree }),
                json!({ "group": g.to_string(), "structure": to_value(&g) }),
            )
        }
        Command::ThhOf { ring, degree } => {
            let (spec, r) = load_ring(&ring)?;
            let h = thh_of_homotopy(&r, degree);
            let mut results = to_value(&h);
            results["group"] = json!(h.group.to_string());
            results["structure"] = to_value(&h.group);
            Report::new("thh-of", json!({ "ring": to_value(&spec), "degree": degree }), results)
        }
        Command::Lambda { ring, degree } => {
            let (spec, r) = load_ring(&ring)?;
            let l = derham::lambda_power(&r, degree);
            let mut results = to_value(&l);
            results["group"] = json!(l.group.to_string());
            results["structure"] = to_value(&l.group);
            Report::new("lambda", json!({ "ring": to_value(&spec), "degree": degree }), results)
        }
        Command::Lomega2 { ring, n } => {
            let (spec, r) = load_ring(&ring)?;
            let c = lomega_two_term(&r);
            let (h0, h1) = (c.cohomology(0), c.cohomology(1));
            let mut results = json!({
                "h0": h0.to_string(),
                "h1": h1.to_string(),
                "euler_rank": c.euler_rank(),
                "complex": to_value(&c),
            });
            let mut inputs = json!({ "ring": to_value(&spec) });
            if let Some(n) = n {
                results["summary"] = to_value(&derham::derham_summary(&r, n));
                inputs["n"] = json!(n);
            }
            Report::new("lomega2", inputs, results)
        }
        Command::FpEuler { p, n } => {
            let chi = fp_lomega_euler(p, n)?;
            let closed = fp_lomega_closed(p, n);
            let e = milne_exponent(&HodgeDiamond::point_over_fq(p), n);
            let pass = chi == closed;
            Report::new(
                "fp-euler",
                json!({ "p": p, "n": n }),
                json!({ "euler_mult": chi.to_string(), "closed_form": closed.to_string(), "milne_exponent": e }),
            )
            .verdict(pass)
        }
        Command::Cinf { source, n } => {
            let (inputs, h, _) = diamond_source(&source)?;
            let c = c_infinity(&h, n);
            Report::new("cinf", with_n(inputs, n), json!({ "c_infinity": format_rational(&c) }))
        }
        Command::Milne { diamond, n } => {
            let h = load_diamond(&diamond)?;
            let e = milne_exponent(&h, n);
            let mut results = json!({ "exponent": e });
            if let DiamondContext::OverFq { q } = h.context() {
                results["q"] = json!(q);
            }
            Report::new("milne", json!({ "diamond": to_value(&h), "n": n }), results)
        }
        Command::Graded { theory, n, j, ring } => {
            let t: Theory = theory.parse()?;
            let piece = graded_piece(t, n, j);
            let mut results = to_value(&piece);
            results["display"] = json!(piece.to_string());
            let mut inputs = json!({ "theory": t.to_string(), "n": n, "j": j });
            if let Some(path) = ring {
                let (spec, r) = load_ring(&path)?;
                inputs["ring"] = to_value(&spec);
                results["homotopy"] = match piece.evaluate(&r) {
                    Ok(groups) => Value::Array(
                        groups
                            .iter()
                            .map(|g| json!({ "degree": g.degree, "group": g.group.to_string() }))
                            .collect(),
                    ),
                    Err(e) => json!({ "unavailable": e.to_string() }),
                };
            }
            Report::new("graded", inputs, results)
        }
        Command::VerifyCinf { source, n } => {
            if n < 0 {
                return Err(InputError(format!("--n must be non-negative, got {n}")));
            }
            let (inputs, h, ring) = diamond_source(&source)?;
            let rep = verify_cinf_fiber_seq(&h, n)?;
            let mut pass = rep.equal;
            let mut results = json!({
                "product_side": format_rational(&rep.product_side),
                "closed_form": format_rational(&rep.closed_form),
            });
            if let Some(r) = ring {
                let ring_rep = verify_cinf_for_ring(&r, n)?;
                pass &= ring_rep.equal && ring_rep.product_side == rep.product_side;
                results["koszul_product_side"] = json!(format_rational(&ring_rep.product_side));
            }
            Report::new("verify-cinf", with_n(inputs, n), results).verdict(pass)
        }
        Command::Zeta { curve } => {
            let (spec, z) = load_curve(&curve)?;
            let counts: Vec<String> = (1..=(z.genus().max(1) as u32 + 1))
                .map(|m| z.point_count(m).to_string())
                .collect();
            Report::new(
                "zeta",
                json!({ "curve": to_value(&spec) }),
                json!({
                    "q": z.q(),
                    "genus": z.genus(),
                    "numerator": to_value(&z)["numerator"],
                    "point_counts": counts,
                    "functional_equation": z.functional_equation_holds(),
                    "root_deviation": format!("{:.3e}", z.root_deviation()),
                }),
            )
        }
        Command::Special { curve, n, digits } => {
            let (spec, z) = load_curve(&curve)?;
            let sv = special_value(&z, n);
            let mut results = to_value(&sv);
            results["value"] = json!(sv.value().to_string());
            results["decimal"] = json!(sv.value().render(digits));
            Report::new(
                "special",
                json!({ "curve": to_value(&spec), "n": n, "digits": digits }),
                results,
            )
        }
        Command::Conductor { curve } => {
            let (spec, z) = load_curve(&curve)?;
            Report::new(
                "conductor",
                json!({ "curve": to_value(&spec) }),
                to_value(&bloch_conductor_fq(&z)),
            )
        }
        Command::VerifyFe { curve, n, diamond } => {
            let (spec, z) = load_curve(&curve)?;
            let mut inputs = json!({ "curve": to_value(&spec), "n": n });
            let h = match diamond {
                Some(path) => {
                    let h = load_diamond(&path)?;
                    inputs["diamond"] = to_value(&h);
                    h
                }
                None => HodgeDiamond::curve(z.genus() as u64, DiamondContext::OverFq { q: z.q() }),
            };
            let rep = verify_thm_fe(&z, &h, n)?;
            let mut results = to_value(&rep);
            let pass = rep.pass;
            results.as_object_mut().expect("object").remove("pass");
            Report::new("verify-fe", inputs, results).verdict(pass)
        }
        Command::Selftest { seed, only } => {
            let color = std::env::var_os("MOTFILT_NO_COLOR").is_none() && std::io::stderr().is_terminal();
            let chosen: Vec<_> = CRITERIA
                .iter()
                .filter(|c| only.is_empty() || only.iter().any(|o| o == c.name))
                .collect();
            let mut reports = Vec::new();
            let mut pass = true;
            for c in chosen {
                let t = c.run(seed);
                let ok = t.report.pass;
                let (on, off) = match (color, ok) {
                    (false, _) => ("", ""),
                    (true, true) => ("\x1b[32m", "\x1b[0m"),
                    (true, false) => ("\x1b[31m", "\x1b[0m"),
                };
                eprintln!(
                    "{on}{}{off} {:<10} {:>8.1} ms (budget {} ms)",
                    if ok { "PASS" } else { "FAIL" },
                    c.name,
                    t.elapsed.as_secs_f64() * 1e3,
                    t.report.budget_ms
                );
                pass &= ok;
                reports.push(t.report);
            }
            let mut only_sorted = only.clone();
            only_sorted.sort();
            only_sorted.dedup();
            Report::new(
                "selftest",
                json!({ "seed": seed, "only": only_sorted }),
                json!({ "criteria": to_value(&reports) }),
            )
            .verdict(pass)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            match cli.format {
                Format::Json => println!("{}", report.to_json()),
                Format::Tsv => print!("{}", report.to_tsv()),
            }
            if report.pass == Some(false) {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
