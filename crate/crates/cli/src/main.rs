//! `ahecke`: expand elements of the asymptotic Hecke algebra, act on functions
//! on the punctured plane, and run the verification suites.

use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use affine_hecke::jalg::{
    gamma_table, phi_inverse, tw_in_cprime, tw_in_t, tw_in_t_scaled, verify_expansion_signs, verify_gamma,
    verify_images,
};
use affine_hecke::plane::{act_completed, t_action, verify_general_tw, verify_plane};
use affine_hecke::{Basis, CompletedHecke, Error, HeckeElt, Laurent, PlaneFunction, Report, Specialized, WeylElt, Window};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "ahecke", version, about = "Affine Hecke algebra of type A1~ and its asymptotic algebra J")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand t_WORD in the T, C or C' basis.
    Expand {
        /// Alternating word over 0 and 1, e.g. 0101.
        #[arg(value_parser = parse_word)]
        word: WeylElt,
        #[arg(long, value_enum, default_value = "T")]
        basis: BasisArg,
        #[command(flatten)]
        precision: Precision,
        /// Evaluate the coefficients exactly at this integer value of q.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        q: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Act on a plane function by t_WORD (J) or T_WORD (H).
    Act {
        #[command(flatten)]
        element: ActElement,
        /// Plane function, e.g. "2*phi(0) - psibar(-1)".
        #[arg(long, value_parser = parse_plane, allow_hyphen_values = true)]
        on: PlaneFunction,
        #[command(flatten)]
        precision: Precision,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a verification suite; exits with 1 if any check fails.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        precision: Precision,
        /// Largest l(y) for expansion-signs.
        #[arg(long, default_value_t = 6)]
        max_y: u32,
        /// Largest l(x) for expansion-signs.
        #[arg(long, default_value_t = 14)]
        max_x: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print every nonzero structure constant gamma_{x,y,z} with lengths <= L.
    GammaTable {
        #[arg(long = "L", default_value_t = 8)]
        cutoff: u32,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Args)]
struct Precision {
    /// Length cutoff.
    #[arg(long = "L", default_value_t = 16, value_parser = clap::value_parser!(u32).range(1..))]
    cutoff: u32,
    /// Series order: powers of q^(1/2) are tracked up to N.
    #[arg(long = "N", default_value_t = 32, value_parser = clap::value_parser!(i64).range(1..))]
    order: i64,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ActElement {
    /// Canonical basis element t_WORD of J; "" is the identity t_1.
    #[arg(long = "t", value_parser = parse_any_word)]
    j: Option<WeylElt>,
    /// Standard basis element T_WORD of H.
    #[arg(long = "T", value_parser = parse_any_word)]
    h: Option<WeylElt>,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    #[value(name = "T")]
    T,
    #[value(name = "C")]
    C,
    #[value(name = "Cprime", alias = "C'")]
    Cprime,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Basis {
        match b {
            BasisArg::T => Basis::T,
            BasisArg::C => Basis::C,
            BasisArg::Cprime => Basis::Cprime,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Images,
    ExpansionSigns,
    Plane,
    Gamma,
    All,
}

fn parse_any_word(s: &str) -> Result<WeylElt, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_word(s: &str) -> Result<WeylElt, String> {
    let w = parse_any_word(s)?;
    if w.is_identity() {
        return Err("the word must be nonempty".into());
    }
    Ok(w)
}

fn parse_plane(s: &str) -> Result<PlaneFunction, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failures mapped to exit codes.
enum Failure {
    Verification,
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let status = match cli.command {
        Command::Expand { word, basis, precision, q, format } => {
            expand(&mut out, &word, basis.into(), &precision, q, format)
        }
        Command::Act { element, on, precision, format } => act(&mut out, &element, &on, &precision, format),
        Command::Verify { suite, precision, max_y, max_x, format } => {
            verify(&mut out, suite, &precision, max_y, max_x, format)
        }
        Command::GammaTable { cutoff, format } => {
            out.push_str(&render_gamma(cutoff, format));
            Ok(())
        }
    };
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    match status {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse(_) | Error::InvalidWord(_) | Error::InvalidArgument(_) => 2,
                Error::CutoffTooSmall(_) | Error::BeyondCutoff { .. } => 3,
                Error::NotStabilized { .. } => 4,
                _ => 1,
            })
        }
    }
}

fn expand(out: &mut String, y: &WeylElt, basis: Basis, p: &Precision, q: Option<u64>, format: Format) -> Result<(), Failure> {
    if let Some(q0) = q {
        return expand_at(out, y, basis, p.cutoff, q0, format);
    }
    let element: CompletedHecke = match basis {
        Basis::T => tw_in_t(y, p.cutoff, p.order)?,
        Basis::C => phi_inverse(y, p.cutoff, p.order),
        Basis::Cprime => tw_in_cprime(y, p.cutoff, p.order)?.element,
    };
    let certified = element.terms().any(|(_, c)| c.is_exact() || !c.known().is_zero());
    if !certified {
        return Err(Error::CutoffTooSmall(p.cutoff).into());
    }
    match format {
        Format::Json => {
            let doc = json!({"word": y.word(), "basis": basis.tag(), "element": element.to_json()});
            writeln!(out, "{}", pretty(&doc)).unwrap();
        }
        Format::Text => {
            writeln!(out, "t_{y} in the {basis} basis, lengths <= {}, order {}", element.exact_to(), p.order).unwrap();
            for (w, c) in element.terms() {
                if c.is_exact() && c.known().is_zero() {
                    continue;
                }
                writeln!(out, "{w}\t{c}").unwrap();
            }
        }
    }
    Ok(())
}

/// Exact coefficient of `w` in `t_y`, evaluated at `q = q0`.
fn coefficient_at(y: &WeylElt, w: &WeylElt, basis: Basis, q0: u64, closed: &CompletedHecke) -> Result<Specialized, Error> {
    match basis {
        Basis::T => {
            let den = (&Laurent::<i64>::one() + &Laurent::q_pow(1)).specialize(q0)?;
            tw_in_t_scaled::<i64>(y, w).specialize(q0)?.div(&den)
        }
        _ => {
            let c = closed.coeff(w)?;
            if !c.is_exact() {
                return Err(Error::CutoffTooSmall(closed.cutoff()));
            }
            c.known().specialize(q0)
        }
    }
}

fn expand_at(out: &mut String, y: &WeylElt, basis: Basis, cutoff: u32, q0: u64, format: Format) -> Result<(), Failure> {
    // Exact closed forms; the C' form is j applied to the C form. Their
    // exponents never exceed l(w) + l(y) + 1 in absolute value.
    let order = cutoff as i64 + y.len() as i64 + 2;
    let closed = match basis {
        Basis::Cprime => phi_inverse(y, cutoff, order).j_involution(),
        _ => phi_inverse(y, cutoff, order),
    };
    let mut rows = Vec::new();
    for w in WeylElt::enumerate_by_length(0, cutoff) {
        let value = coefficient_at(y, &w, basis, q0, &closed)?;
        if !value.is_zero() {
            rows.push((w, value));
        }
    }
    match format {
        Format::Json => {
            let values: Vec<Value> = rows
                .iter()
                .map(|(w, v)| json!({"w": w.word(), "exact": v.to_string(), "approx": v.to_f64()}))
                .collect();
            let doc = json!({"word": y.word(), "basis": basis.tag(), "q": q0, "cutoff": cutoff, "values": values});
            writeln!(out, "{}", pretty(&doc)).unwrap();
        }
        Format::Text => {
            writeln!(out, "t_{y} in the {basis} basis at q = {q0}, lengths <= {cutoff}").unwrap();
            for (w, v) in &rows {
                writeln!(out, "{w}\t{v}\t{:.6e}", v.to_f64()).unwrap();
            }
        }
    }
    Ok(())
}

fn act(out: &mut String, element: &ActElement, f: &PlaneFunction, p: &Precision, format: Format) -> Result<(), Failure> {
    let (label, result, stable_from) = match (element.j, element.h) {
        (Some(y), _) => {
            let exact = t_action(&y, f)?;
            let stable_from = cross_check(&y, f, &exact, p)?;
            (format!("t_{y}"), exact, stable_from)
        }
        (None, Some(w)) => (format!("T_{w}"), f.act_hecke(&HeckeElt::t(w)), None),
        (None, None) => unreachable!("clap requires one of --t and --T"),
    };
    match format {
        Format::Json => {
            let doc = json!({
                "element": label,
                "on": f.to_json(),
                "result": result.to_json(),
                "stableFrom": stable_from,
            });
            writeln!(out, "{}", pretty(&doc)).unwrap();
        }
        Format::Text => writeln!(out, "{result}").unwrap(),
    }
    Ok(())
}

/// Compare the exact action of `t_y` with the truncated series action on a
/// window around both supports. Returns the cutoff it stabilized from.
fn cross_check(y: &WeylElt, f: &PlaneFunction, exact: &PlaneFunction, p: &Precision) -> Result<Option<u32>, Failure> {
    let (Some(lo), Some(hi)) = (f.min_position(), f.max_position()) else {
        return Ok(None);
    };
    let lo = exact.min_position().map_or(lo, |e| e.min(lo)) - 2;
    let hi = exact.max_position().map_or(hi, |e| e.max(hi)) + 2;
    let window = Window { lo, hi };
    let series = tw_in_t::<i64>(y, p.cutoff, p.order)?;
    let got = act_completed(&series, f, window, 4)?;
    if !got.window.agrees_with(&exact.to_window(window))? {
        eprintln!("error: series action of t_{y} disagrees with the exact action on [{lo}, {hi}]");
        return Err(Failure::Verification);
    }
    Ok(Some(got.stable_from))
}

fn verify(out: &mut String, suite: Suite, p: &Precision, max_y: u32, max_x: u32, format: Format) -> Result<(), Failure> {
    let suites = match suite {
        Suite::All => vec![Suite::Images, Suite::ExpansionSigns, Suite::Plane, Suite::Gamma],
        s => vec![s],
    };
    let mut passed = true;
    let mut docs = Vec::new();
    for s in suites {
        let (name, report) = match s {
            Suite::Images => ("images", verify_images::<i64>(p.cutoff, p.order)?),
            Suite::ExpansionSigns => ("expansion-signs", verify_expansion_signs::<i64>(max_y, max_x, p.cutoff, p.order)?),
            Suite::Plane => {
                let mut r = verify_plane(p.cutoff, p.order)?;
                r.extend(verify_general_tw(5, -3..=3));
                ("plane", r)
            }
            Suite::Gamma => ("gamma", verify_gamma(p.cutoff)),
            Suite::All => unreachable!(),
        };
        passed &= report.all_passed();
        match format {
            Format::Text => {
                writeln!(out, "== {name}").unwrap();
                write!(out, "{report}").unwrap();
                if s == Suite::Gamma {
                    write!(out, "{}", render_gamma(p.cutoff, format)).unwrap();
                }
            }
            Format::Json => {
                let mut doc = suite_json(name, &report);
                if s == Suite::Gamma {
                    doc["table"] = gamma_json(p.cutoff);
                }
                docs.push(doc);
            }
        }
    }
    if format == Format::Json {
        writeln!(out, "{}", pretty(&json!({"passed": passed, "suites": docs}))).unwrap();
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn suite_json(name: &str, report: &Report) -> Value {
    let mut doc = report.to_json();
    doc["suite"] = Value::from(name);
    doc
}

fn gamma_json(cutoff: u32) -> Value {
    let rows: Vec<Value> = gamma_table(cutoff)
        .into_iter()
        .map(|(x, y, z, g)| json!({"x": x.word(), "y": y.word(), "z": z.word(), "gamma": g}))
        .collect();
    Value::Array(rows)
}

fn render_gamma(cutoff: u32, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", pretty(&json!({"cutoff": cutoff, "gamma": gamma_json(cutoff)}))),
        Format::Text => {
            let mut out = String::from("x\ty\tz\tgamma\n");
            for (x, y, z, g) in gamma_table(cutoff) {
                out.push_str(&format!("{x}\t{y}\t{z}\t{g}\n"));
            }
            out
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize")
}
