//! Command-line front end for the exact stability engine.
//!
//! Subcommands: `pairing` (Euler pairing of two classes), `bn` (evaluate a
//! Brill-Noether bound), `scan` (chamber scan along a vertical line,
//! emitted as JSON), `verify` (the full verification suite; exit 1 on any
//! failure), and `plot` (exact CSV/JSON samples of the refined bound, with
//! an optional parabola overlay).
//!
//! Every command is deterministic: identical invocations produce
//! byte-identical output.  Exit codes: 0 success, 1 verification failure,
//! 2 usage error.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cohstab::brill_noether::Quadratic;
use cohstab::charge::{
    central_charge, compare_slopes, heart_slope, ChargeParams, SlopeOrdering,
};
use cohstab::degeneration::{degenerate_point, descended_charge, s_equivalent};
use cohstab::klattice::{
    euler_matrix, euler_pairing, project_mod_kernel, ClassVector, Genus, QuotientClass,
};
use cohstab::rat::Rat;
use cohstab::support::{
    dominance_certificate, find_params, genus4_qform, kernel_negative, phase1_support_check,
    Phase1Verdict, QuadFormParams,
};
use cohstab::walls::{chamber_report, SearchBounds};
use cohstab::{
    emit_plot_data, general_bound, genus4_bound, quadratic_dominates, verify_moduli_arithmetic,
    Dominance, PiecewiseBound,
};

#[derive(Parser)]
#[command(
    name = "cohstab",
    version,
    about = "Exact stability arithmetic for coherent systems on a genus-4 curve"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Euler pairing of two classes given as comma-separated triples "r,d,n".
    Pairing {
        #[arg(allow_hyphen_values = true)]
        v1: String,
        #[arg(allow_hyphen_values = true)]
        v2: String,
        #[arg(long, default_value_t = 4)]
        genus: i64,
    },
    /// Evaluate a Brill-Noether bound at a rational point.
    Bn {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = 4)]
        genus: i64,
        /// Use the refined genus-4 bound instead of the general one.
        #[arg(long)]
        refined: bool,
    },
    /// Scan for walls along the vertical line b = const; prints a JSON report.
    Scan {
        /// Class to scan, as "r,d,n".
        #[arg(allow_hyphen_values = true)]
        class: String,
        #[arg(long, default_value = "3", allow_hyphen_values = true)]
        b: String,
        /// Rank cap for destabilizer candidates.
        #[arg(long, default_value_t = 3)]
        r_max: i64,
        /// Extra slack beyond the derived section-count windows.
        #[arg(long, default_value_t = 3)]
        n_window: i64,
        /// Closed wall range "w_min,w_max".
        #[arg(long, default_value = "2,10", allow_hyphen_values = true)]
        w_range: String,
        /// Write the report to a file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suite; exits 1 if any check fails.
    Verify {
        #[arg(long, default_value_t = 4)]
        genus: i64,
        /// Depth of the moduli boundary arithmetic check.
        #[arg(long, default_value_t = 1000)]
        r_max: i64,
    },
    /// Emit exact plot samples of the refined bound.
    Plot {
        /// Rational range "x_min,x_max".
        #[arg(long, default_value = "-1,7", allow_hyphen_values = true)]
        range: String,
        #[arg(long, default_value = "1/4", allow_hyphen_values = true)]
        step: String,
        /// Overlay the canonical dominating parabola (x - 3)^2 + 19/10.
        #[arg(long)]
        overlay: bool,
        /// Append lossy decimal companion columns after the exact ones.
        #[arg(long)]
        float: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        /// Write the data to a file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Command failure: a usage/data error (exit 2) or failed checks (exit 1).
enum CmdError {
    Usage(String),
    ChecksFailed(usize),
}

fn usage<T>(message: impl Into<String>) -> Result<T, CmdError> {
    Err(CmdError::Usage(message.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CmdError::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CmdError::ChecksFailed(count)) => {
            eprintln!("error: {count} check(s) failed");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<(), CmdError> {
    match command {
        Command::Pairing { v1, v2, genus } => cmd_pairing(&v1, &v2, genus),
        Command::Bn { x, genus, refined } => cmd_bn(&x, genus, refined),
        Command::Scan {
            class,
            b,
            r_max,
            n_window,
            w_range,
            out,
        } => cmd_scan(&class, &b, r_max, n_window, &w_range, out.as_deref()),
        Command::Verify { genus, r_max } => cmd_verify(genus, r_max),
        Command::Plot {
            range,
            step,
            overlay,
            float,
            format,
            out,
        } => cmd_plot(&range, &step, overlay, float, format, out.as_deref()),
    }
}

fn parse_class(text: &str) -> Result<ClassVector, CmdError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return usage(format!("class must be three integers 'r,d,n', got '{text}'"));
    }
    let mut entries = [0i64; 3];
    for (slot, part) in entries.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| CmdError::Usage(format!("bad integer '{}' in class '{text}'", part.trim())))?;
    }
    Ok(ClassVector::new(entries[0], entries[1], entries[2]))
}

fn parse_rat(text: &str) -> Result<Rat, CmdError> {
    Rat::from_str(text.trim()).map_err(|e| CmdError::Usage(format!("bad rational '{text}': {e}")))
}

fn parse_rat_pair(text: &str) -> Result<(Rat, Rat), CmdError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return usage(format!("expected two rationals 'a,b', got '{text}'"));
    }
    Ok((parse_rat(parts[0])?, parse_rat(parts[1])?))
}

fn parse_genus(genus: i64) -> Result<Genus, CmdError> {
    Genus::new(genus).map_err(|e| CmdError::Usage(e.to_string()))
}

fn emit(text: &str, out: Option<&std::path::Path>) -> Result<(), CmdError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CmdError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_pairing(v1: &str, v2: &str, genus: i64) -> Result<(), CmdError> {
    let g = parse_genus(genus)?;
    let value = euler_pairing(parse_class(v1)?, parse_class(v2)?, g);
    println!("{value}");
    Ok(())
}

fn cmd_bn(x: &str, genus: i64, refined: bool) -> Result<(), CmdError> {
    let x = parse_rat(x)?;
    let bound = if refined {
        if genus != 4 {
            return usage("the refined bound is genus-4 only; drop --refined or use --genus 4");
        }
        genus4_bound()
    } else {
        general_bound(parse_genus(genus)?)
    };
    println!("{}", bound.evaluate(x));
    Ok(())
}

fn cmd_scan(
    class: &str,
    b: &str,
    r_max: i64,
    n_window: i64,
    w_range: &str,
    out: Option<&std::path::Path>,
) -> Result<(), CmdError> {
    let v = parse_class(class)?;
    let b = parse_rat(b)?;
    let (w_min, w_max) = parse_rat_pair(w_range)?;
    let bounds =
        SearchBounds::new(r_max, n_window, w_min, w_max).map_err(|e| CmdError::Usage(e.to_string()))?;
    let report = chamber_report(v, b, &QuadFormParams::genus4(), &bounds)
        .map_err(|e| CmdError::Usage(e.to_string()))?;
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    emit(&format!("{json}\n"), out)
}

fn cmd_plot(
    range: &str,
    step: &str,
    overlay: bool,
    float: bool,
    format: OutputFormat,
    out: Option<&std::path::Path>,
) -> Result<(), CmdError> {
    let (x_min, x_max) = parse_rat_pair(range)?;
    let step = parse_rat(step)?;
    let parabola = Quadratic::new(Rat::one(), Rat::int(3), Rat::new(19, 10))
        .expect("canonical parabola is valid");
    let table = emit_plot_data(
        &genus4_bound(),
        x_min,
        x_max,
        step,
        overlay.then_some(&parabola),
    )
    .map_err(|e| CmdError::Usage(e.to_string()))?;
    let text = match format {
        OutputFormat::Csv => table.to_csv(float),
        OutputFormat::Json => {
            let json = serde_json::to_string_pretty(&table.to_json(float))
                .expect("plot table serializes");
            format!("{json}\n")
        }
    };
    emit(&text, out)
}

// ---------------------------------------------------------------------------
// Verification suite
// ---------------------------------------------------------------------------

struct Check {
    name: &'static str,
    outcome: Result<String, String>,
}

fn cmd_verify(genus: i64, r_max: i64) -> Result<(), CmdError> {
    if genus != 4 {
        return usage("the verification suite is genus-4 only (--genus 4)");
    }
    if r_max < 1 {
        return usage("--r-max must be at least 1");
    }
    let checks = vec![
        Check {
            name: "euler matrix and exceptional class",
            outcome: check_euler(),
        },
        Check {
            name: "refined bound table",
            outcome: check_bound_table(),
        },
        Check {
            name: "quadratic dominance split at the center",
            outcome: check_dominance(),
        },
        Check {
            name: "degenerate charge and kernel deficit",
            outcome: check_degenerate_charge(),
        },
        Check {
            name: "phase-one support",
            outcome: check_phase1(),
        },
        Check {
            name: "main chamber scan",
            outcome: check_chamber_scan(),
        },
        Check {
            name: "moduli boundary arithmetic",
            outcome: check_moduli(r_max),
        },
        Check {
            name: "degeneration round trip",
            outcome: check_degeneration(),
        },
        Check {
            name: "randomized invariants",
            outcome: check_randomized(),
        },
        Check {
            name: "certificate search split",
            outcome: check_certificate_search(),
        },
    ];
    let mut failures = 0;
    for (index, check) in checks.iter().enumerate() {
        match &check.outcome {
            Ok(detail) => println!("check {:02} {}: pass ({detail})", index + 1, check.name),
            Err(detail) => {
                failures += 1;
                println!("check {:02} {}: FAIL ({detail})", index + 1, check.name);
            }
        }
    }
    if failures > 0 {
        Err(CmdError::ChecksFailed(failures))
    } else {
        Ok(())
    }
}

fn ensure(condition: bool, detail: &str) -> Result<(), String> {
    if condition {
        Ok(())
    } else {
        Err(detail.to_string())
    }
}

fn check_euler() -> Result<String, String> {
    let g4 = Genus::new(4).map_err(|e| e.to_string())?;
    ensure(
        euler_matrix(g4) == [[-3, 1, 0], [-1, 0, 0], [3, -1, 1]],
        "euler matrix mismatch",
    )?;
    let v = ClassVector::new(1, 3, 2);
    let chi = euler_pairing(v, v, g4);
    ensure(chi == 1, "self-pairing of (1,3,2) is not 1")?;
    Ok(format!("matrix ok, chi((1,3,2),(1,3,2)) = {chi}"))
}

fn check_bound_table() -> Result<String, String> {
    let bound = genus4_bound();
    let table = [
        (Rat::zero(), Rat::one()),
        (Rat::one(), Rat::one()),
        (Rat::int(2), Rat::new(4, 3)),
        (Rat::new(9, 4), Rat::new(17, 12)),
        (Rat::new(5, 2), Rat::new(3, 2)),
        (Rat::new(11, 4), Rat::new(13, 8)),
        (Rat::int(3), Rat::int(2)),
    ];
    let mut shown = Vec::new();
    for (x, expected) in table {
        let got = bound.evaluate(x);
        if got != expected {
            return Err(format!("bound({x}) = {got}, expected {expected}"));
        }
        shown.push(format!("bound({x}) = {got}"));
    }
    Ok(shown.join(", "))
}

fn check_dominance() -> Result<String, String> {
    let bound = genus4_bound();
    let center: BTreeSet<Rat> = [Rat::int(3)].into();
    let excluded = quadratic_dominates(&bound, Rat::one(), Rat::int(3), Rat::new(19, 10), &center)
        .map_err(|e| e.to_string())?;
    ensure(excluded.holds(), "dominance with center excluded must hold")?;
    let everywhere =
        quadratic_dominates(&bound, Rat::one(), Rat::int(3), Rat::new(19, 10), &BTreeSet::new())
            .map_err(|e| e.to_string())?;
    match everywhere {
        Dominance::Fails { witness } if witness == Rat::int(3) => Ok(format!(
            "holds off x = 3; fails at witness x = {witness} where 19/10 < {}",
            genus4_bound().evaluate(witness)
        )),
        other => Err(format!("expected failure with witness 3, got {other:?}")),
    }
}

fn check_degenerate_charge() -> Result<String, String> {
    let kernel = ClassVector::new(1, 3, 2);
    let z = central_charge(kernel, degenerate_point());
    ensure(z.is_zero(), "charge of (1,3,2) at (3,2) must vanish")?;
    let q_value = genus4_qform(kernel);
    ensure(q_value == Rat::new(-1, 10), "form value of (1,3,2) must be -1/10")?;
    let form = QuadFormParams::genus4();
    for w in [Rat::int(2), Rat::int(3), Rat::int(10)] {
        let negative = kernel_negative(&form, ChargeParams::new(Rat::int(3), w))
            .map_err(|e| e.to_string())?;
        ensure(negative, "kernel direction must be form-negative on the ray")?;
    }
    Ok(format!(
        "Z(1,3,2)(3,2) = {z}, Q(1,3,2) = {q_value}, negative at w in {{2, 3, 10}}"
    ))
}

fn check_phase1() -> Result<String, String> {
    match phase1_support_check(1, 1).map_err(|e| e.to_string())? {
        Phase1Verdict::Supported { q, certified } if q == Rat::new(9, 10) && certified => {}
        other => return Err(format!("(1,1) gave {other:?}, expected supported 9/10")),
    }
    match phase1_support_check(1, 2).map_err(|e| e.to_string())? {
        Phase1Verdict::KernelClass => {}
        other => return Err(format!("(1,2) gave {other:?}, expected kernel class")),
    }
    let mut checked = 0usize;
    for r in 1..=50i64 {
        for n in 0..=(3 * r) / 2 {
            match phase1_support_check(r, n).map_err(|e| e.to_string())? {
                Phase1Verdict::Supported { q, .. } if !q.is_negative() => checked += 1,
                other => return Err(format!("({r}, {n}) gave {other:?}")),
            }
        }
    }
    Ok(format!(
        "(1,1) supported with Q = 9/10, (1,2) kernel class, {checked} classes supported up to rank 50"
    ))
}

fn check_chamber_scan() -> Result<String, String> {
    let report = chamber_report(
        ClassVector::new(-1, -2, -1),
        Rat::int(3),
        &QuadFormParams::genus4(),
        &SearchBounds::canonical_genus4(),
    )
    .map_err(|e| e.to_string())?;
    let finite = report.finite_walls();
    ensure(!finite.is_empty(), "boundary wall missing")?;
    for (w, dest) in &finite {
        if *w != Rat::int(2) {
            return Err(format!("stray finite wall at w = {w} against {dest}"));
        }
    }
    ensure(
        finite.contains(&(Rat::int(2), ClassVector::new(0, 1, 1))),
        "boundary wall against (0,1,1) missing",
    )?;
    ensure(
        report.kernel_boundaries() == vec![ClassVector::new(1, 3, 2)],
        "kernel boundary must be exactly (1,3,2)",
    )?;
    let pairs = report.phase1_pairs();
    for (_, complement) in &pairs {
        if complement.d != 3 * complement.r + 1 {
            return Err(format!("phase-1 complement {complement} off the boundary family"));
        }
    }
    Ok(format!(
        "{} boundary wall(s) at w = 2 only, kernel boundary (1,3,2), {} phase-1 families",
        finite.len(),
        pairs.len()
    ))
}

fn check_moduli(r_max: i64) -> Result<String, String> {
    let report = verify_moduli_arithmetic(r_max).map_err(|e| e.to_string())?;
    ensure(report.all_match(), "moduli degree sets deviate from {3r+1}")?;
    ensure(
        report.counterexamples.is_empty(),
        "counterexamples recorded",
    )?;
    Ok(format!(
        "degree set {{3r+1}} with exact boundary slope 3 for 1 <= r <= {r_max}"
    ))
}

fn check_degeneration() -> Result<String, String> {
    for r in -12..=12i64 {
        for d in -12..=12i64 {
            for n in -12..=12i64 {
                let v = ClassVector::new(r, d, n);
                if descended_charge(project_mod_kernel(v)) != central_charge(v, degenerate_point())
                {
                    return Err(format!("descent square fails at {v}"));
                }
            }
        }
    }
    let a = ClassVector::new(-1, -2, -1);
    let b = ClassVector::new(0, 1, 1);
    ensure(s_equivalent(a, b), "(-1,-2,-1) and (0,1,1) must be equivalent")?;
    ensure(
        project_mod_kernel(a) == QuotientClass::new(1, 1)
            && project_mod_kernel(b) == QuotientClass::new(1, 1),
        "common projection must be (1,1)",
    )?;
    Ok("descent commutes over |entries| <= 12; (-1,-2,-1) ~ (0,1,1) over (1,1)".to_string())
}

const RANDOM_CASES: usize = 10_000;

fn check_randomized() -> Result<String, String> {
    check_pairing_bilinearity()?;
    check_scaling_invariance()?;
    check_slope_transitivity()?;
    check_form_scaling()?;
    check_bound_regularity()?;
    Ok(format!("5 suites x {RANDOM_CASES} cases, seeded"))
}

fn rng_for(tag: u8) -> ChaCha8Rng {
    ChaCha8Rng::from_seed([tag; 32])
}

fn random_class(rng: &mut ChaCha8Rng) -> ClassVector {
    ClassVector::new(
        rng.gen_range(-10_000..10_000),
        rng.gen_range(-10_000..10_000),
        rng.gen_range(-10_000..10_000),
    )
}

fn random_rat(rng: &mut ChaCha8Rng) -> Rat {
    Rat::new(rng.gen_range(-10_000..10_000), rng.gen_range(1..100))
}

/// Class with positive imaginary part at `b`.
fn random_upper_class(rng: &mut ChaCha8Rng, b: Rat) -> ClassVector {
    let r = rng.gen_range(-50..50);
    let d = (b * Rat::from(r)).floor_int() as i64 + 1 + rng.gen_range(0..20);
    ClassVector::new(r, d, rng.gen_range(-10_000..10_000))
}

fn check_pairing_bilinearity() -> Result<(), String> {
    let mut rng = rng_for(11);
    for _ in 0..RANDOM_CASES {
        let g = Genus::new(rng.gen_range(1..20)).expect("positive genus");
        let (u, v, w) = (random_class(&mut rng), random_class(&mut rng), random_class(&mut rng));
        if euler_pairing(u + v, w, g) != euler_pairing(u, w, g) + euler_pairing(v, w, g)
            || euler_pairing(u, v + w, g) != euler_pairing(u, v, g) + euler_pairing(u, w, g)
        {
            return Err(format!("pairing bilinearity fails at {u}, {v}, {w}"));
        }
    }
    Ok(())
}

fn check_scaling_invariance() -> Result<(), String> {
    let mut rng = rng_for(13);
    for _ in 0..RANDOM_CASES {
        let v = random_class(&mut rng);
        let k = rng.gen_range(1..50);
        let p = ChargeParams::new(random_rat(&mut rng), random_rat(&mut rng));
        if heart_slope(v.scaled(k), p) != heart_slope(v, p) {
            return Err(format!("slope of {v} changed under scaling by {k}"));
        }
    }
    Ok(())
}

fn check_slope_transitivity() -> Result<(), String> {
    let mut rng = rng_for(17);
    for _ in 0..RANDOM_CASES {
        let b = Rat::new(rng.gen_range(-8..=16), rng.gen_range(1..=4));
        let p = ChargeParams::new(b, random_rat(&mut rng));
        let a = random_upper_class(&mut rng, b);
        let c = random_upper_class(&mut rng, b);
        let e = random_upper_class(&mut rng, b);
        let rank = |o: SlopeOrdering| match o {
            SlopeOrdering::Less => -1i8,
            SlopeOrdering::Equal => 0,
            SlopeOrdering::Greater => 1,
            SlopeOrdering::Incomparable => 2,
        };
        let ac = rank(compare_slopes(a, c, p));
        let ce = rank(compare_slopes(c, e, p));
        let ae = rank(compare_slopes(a, e, p));
        if ac == 2 || ce == 2 || ae == 2 {
            return Err("upper-half-plane classes must be comparable".to_string());
        }
        let broken = (ac <= 0 && ce <= 0 && ae > 0)
            || (ac < 0 && ce <= 0 && ae >= 0)
            || (ac <= 0 && ce < 0 && ae >= 0)
            || (ac == 0 && ce == 0 && ae != 0);
        if broken {
            return Err(format!("transitivity broken at {a}, {c}, {e} with b = {b}"));
        }
    }
    Ok(())
}

fn check_form_scaling() -> Result<(), String> {
    let mut rng = rng_for(19);
    let q = QuadFormParams::genus4();
    for _ in 0..RANDOM_CASES {
        let v = random_class(&mut rng);
        let k = rng.gen_range(-20..20);
        if cohstab::qform(-v, &q) != cohstab::qform(v, &q) {
            return Err(format!("form not even at {v}"));
        }
        if cohstab::qform(v.scaled(k), &q) != Rat::from(k * k) * cohstab::qform(v, &q) {
            return Err(format!("form not quadratic at {v} scaled by {k}"));
        }
    }
    Ok(())
}

fn check_bound_regularity() -> Result<(), String> {
    let mut rng = rng_for(23);
    let bound = genus4_bound();
    let points = bound.breakpoints();
    for _ in 0..RANDOM_CASES {
        // Semicontinuity: one-sided limits via affine extrapolation from
        // inside the adjacent piece must not exceed the stored value.
        let x = points[rng.gen_range(0..points.len())];
        let eps = Rat::new(1, rng.gen_range(8..1_000_000));
        let above = Rat::int(2) * bound.evaluate(x + eps) - bound.evaluate(x + eps + eps);
        let below = Rat::int(2) * bound.evaluate(x - eps) - bound.evaluate(x - eps - eps);
        if above > bound.evaluate(x) || below > bound.evaluate(x) {
            return Err(format!("semicontinuity fails at breakpoint {x}"));
        }
        // Duality reflection on [0, 3].
        let den = rng.gen_range(1..1000);
        let num = rng.gen_range(0..=3 * den);
        let y = Rat::new(num, den);
        if bound.evaluate(Rat::int(6) - y) - bound.evaluate(y) != Rat::int(3) - y {
            return Err(format!("reflection identity fails at {y}"));
        }
    }
    Ok(())
}

fn check_certificate_search() -> Result<String, String> {
    let bound: PiecewiseBound = genus4_bound();
    ensure(
        find_params(Rat::int(3), Rat::int(2), &bound, true).is_none(),
        "a strong certificate must not exist at the degenerate point",
    )?;
    let q = find_params(Rat::int(3), Rat::int(2), &bound, false)
        .ok_or("a weak certificate must exist at the degenerate point")?;
    let center: BTreeSet<Rat> = [q.b0()].into();
    let verdict = quadratic_dominates(&bound, q.s(), q.b0(), q.vertex_level(), &center)
        .map_err(|e| e.to_string())?;
    ensure(verdict.holds(), "returned parameters fail their own certificate")?;
    let certificate = dominance_certificate(&q, &bound);
    for row in &certificate.rows {
        if row.excluded {
            ensure(row.min_gap.is_negative(), "center row must record a deficit")?;
        } else {
            ensure(
                !row.min_gap.is_negative(),
                "an off-center certificate row dips below the bound",
            )?;
        }
    }
    Ok(format!(
        "strong: none; weak: (s, t) = ({}, {}) with a passing certificate",
        q.s(),
        q.t()
    ))
}
