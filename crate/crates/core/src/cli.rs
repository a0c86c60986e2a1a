//! Command-line front end. [`run`] parses arguments, dispatches to the
//! library and returns the process exit code: 0 on success, 1 when a
//! verification fails, 2 on a usage error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use crate::error::{Error, Result};
use crate::eulerprod::{
    fixed, plan_truncation_with, rho_global_with, scientific, truncated_product,
    zeta_tail_upper, Rounding, TailBoundParams, DEFAULT_A_MAX, REFERENCE_DEFICITS,
    REFERENCE_TRUNCATIONS,
};
use crate::exactalg::{Rat, RatFunc, ZPoly};
use crate::fforacle::{count_types, padic_binary_cubic_sample};
use crate::localdensity::{
    asymptotic_params_computed, golden_check_value, rho_local_cached, xi_table, CacheRecord,
    DensityCache, REFERENCE_ASYMPTOTICS,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Debug, Parser)]
#[command(name = "cubicdens", version, about = "Densities of soluble cubic hypersurfaces")]
pub struct RunConfig {
    /// Output format; latex is cosmetic and falls back to text where absent.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Directory for cached local densities (overrides CUBIC_DENSITY_CACHE).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct TailArgs {
    #[arg(long = "M", default_value_t = 1000)]
    pub m: u32,
    #[arg(long = "I", default_value_t = 4)]
    pub i: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print g_n and h_n with 1 - rho_n = g_n / h_n.
    Solve {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Compare solved densities with the reference fractions.
    VerifyGolden {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=8), conflicts_with = "all", required_unless_present = "all")]
        n: Option<u64>,
        #[arg(long)]
        all: bool,
    },
    /// Enumerate factorization types over F_q and compare with the closed forms.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        cond: Option<usize>,
    },
    /// Certified global density.
    Rho {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        digits: u32,
        #[arg(long = "max-A", default_value_t = DEFAULT_A_MAX)]
        max_a: u64,
        #[command(flatten)]
        tail: TailArgs,
    },
    /// Upper bound for the Euler product tail of zeta.
    ZetaTail {
        #[arg(long = "A", value_parser = clap::value_parser!(u64).range(1..))]
        a: u64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        s: u32,
        #[command(flatten)]
        tail: TailArgs,
    },
    /// Monte Carlo estimate of the binary cubic density at p.
    SamplePadic {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 40)]
        precision: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Asymptotics, global densities and truncation accuracy in one report.
    Tables,
}

/// Runs with the process's standard streams.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// Runs with explicit output and diagnostic streams.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(&cfg, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::InvalidArgument(_) | Error::NotPrime(_) | Error::Infeasible { .. } => 2,
                _ => 1,
            }
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Defect(format!("write failed: {e}"))
}

fn emit_json(out: &mut dyn Write, v: &impl serde::Serialize) -> Result<()> {
    let s = serde_json::to_string(v).map_err(|e| Error::Defect(e.to_string()))?;
    writeln!(out, "{s}").map_err(io)
}

fn tail_params(t: &TailArgs) -> Result<TailBoundParams> {
    TailBoundParams::new(t.m, t.i)
}

fn cache(cfg: &RunConfig) -> Option<DensityCache> {
    cfg.cache_dir.clone().map(DensityCache::new).or_else(DensityCache::from_env)
}

fn dispatch(cfg: &RunConfig, out: &mut dyn Write) -> Result<bool> {
    let cache = cache(cfg);
    let cache = cache.as_ref();
    match &cfg.command {
        Command::Solve { n } => solve(cfg.format, *n as usize, cache, out),
        Command::VerifyGolden { n, all } => {
            let ns: Vec<usize> = if *all { (1..=8).collect() } else { vec![n.unwrap() as usize] };
            verify_golden(cfg.format, &ns, cache, out)
        }
        Command::Oracle { n, q, cond } => oracle(cfg.format, *n, *q, *cond, out),
        Command::Rho { n, digits, max_a, tail } => {
            rho(cfg.format, *n as usize, *digits, *max_a, tail_params(tail)?, cache, out)
        }
        Command::ZetaTail { a, s, tail } => zeta_tail(cfg.format, *a, *s, tail_params(tail)?, out),
        Command::SamplePadic { p, samples, precision, seed } => {
            sample(cfg.format, *p, *samples, *precision, *seed, cache, out)
        }
        Command::Tables => tables(cfg.format, cache, out),
    }
}

fn poly_latex(p: &ZPoly) -> String {
    p.to_string().replace('*', " ").replace("t^", "p^").replace('t', "p")
}

fn sci_latex(s: &str) -> String {
    match s.split_once('e') {
        Some((m, e)) => format!("{m} \\cdot 10^{{{e}}}"),
        None => s.to_string(),
    }
}

fn poly_text(p: &ZPoly) -> String {
    p.to_string().replace('t', "p")
}

fn solve(fmt: Format, n: usize, cache: Option<&DensityCache>, out: &mut dyn Write) -> Result<bool> {
    let rho = rho_local_cached(n, cache)?;
    if rho.is_one() && fmt != Format::Json {
        writeln!(out, "1").map_err(io)?;
        return Ok(true);
    }
    let deficit = &RatFunc::one() - &rho;
    match fmt {
        Format::Json => emit_json(out, &CacheRecord::from_rho(n, &rho))?,
        Format::Text => {
            writeln!(out, "g_{n}(p) = {}", poly_text(deficit.numer())).map_err(io)?;
            writeln!(out, "h_{n}(p) = {}", poly_text(deficit.denom())).map_err(io)?;
        }
        Format::Latex => {
            writeln!(out, "g_{{{n}}}(p) = {}", poly_latex(deficit.numer())).map_err(io)?;
            writeln!(out, "h_{{{n}}}(p) = {}", poly_latex(deficit.denom())).map_err(io)?;
        }
    }
    Ok(true)
}

fn verify_golden(
    fmt: Format,
    ns: &[usize],
    cache: Option<&DensityCache>,
    out: &mut dyn Write,
) -> Result<bool> {
    let mut results = Vec::new();
    for &n in ns {
        let ok = golden_check_value(n, &rho_local_cached(n, cache)?)?;
        results.push((n, ok));
    }
    if fmt == Format::Json {
        let v: Vec<_> = results.iter().map(|&(n, ok)| json!({"n": n, "ok": ok})).collect();
        emit_json(out, &v)?;
    } else {
        for &(n, ok) in &results {
            writeln!(out, "n = {n}: {}", if ok { "OK" } else { "MISMATCH" }).map_err(io)?;
        }
    }
    Ok(results.iter().all(|r| r.1))
}

fn oracle(fmt: Format, n: usize, q: u32, cond: Option<usize>, out: &mut dyn Write) -> Result<bool> {
    let counts = count_types(n, q, cond)?;
    let xi = xi_table(n, cond)?;
    let x = Rat::from_integer(q.into());
    let total = Rat::from_integer(BigInt::from(counts.total));
    let mut rows = Vec::new();
    for i in 0..4 {
        let predicted = xi.values[i].eval(&x)? * &total;
        let got = Rat::from_integer(BigInt::from(counts.get(i)));
        rows.push((i, counts.get(i), predicted.to_string(), got == predicted));
    }
    let agree = rows.iter().all(|r| r.3);
    if fmt == Format::Json {
        let formula: serde_json::Map<_, _> =
            rows.iter().map(|r| (r.0.to_string(), json!(r.2))).collect();
        emit_json(out, &json!({"enumerated": counts, "formula": formula, "agree": agree}))?;
    } else {
        let c = cond.map_or("none".to_string(), |j| j.to_string());
        writeln!(out, "n = {n}, q = {q}, condition = {c}, total = {}", counts.total).map_err(io)?;
        for (i, got, want, ok) in &rows {
            writeln!(out, "N[{i}] = {got}  formula {want}  {}", if *ok { "OK" } else { "MISMATCH" })
                .map_err(io)?;
        }
    }
    Ok(agree)
}

fn rho(
    fmt: Format,
    n: usize,
    digits: u32,
    max_a: u64,
    params: TailBoundParams,
    cache: Option<&DensityCache>,
    out: &mut dyn Write,
) -> Result<bool> {
    if (2..=8).contains(&n) {
        rho_local_cached(n, cache)?;
    }
    let v = rho_global_with(n, digits, max_a, params)?;
    match (fmt, &v.certificate) {
        (Format::Json, _) => emit_json(out, &v)?,
        (_, None) => writeln!(out, "{}", v.value).map_err(io)?,
        (_, Some(c)) => {
            writeln!(out, "{}", v.value).map_err(io)?;
            writeln!(
                out,
                "A = {}, M = {}, I = {}, error <= {}, 1 - value ~ {}",
                c.a,
                c.params.m,
                c.params.i,
                c.error_bound(),
                v.deficit_scientific(4)
            )
            .map_err(io)?;
        }
    }
    Ok(true)
}

fn zeta_tail(fmt: Format, a: u64, s: u32, params: TailBoundParams, out: &mut dyn Write) -> Result<bool> {
    let b = zeta_tail_upper(a, s, params)?;
    let dec = fixed(&b, 40, Rounding::Up);
    if fmt == Format::Json {
        emit_json(
            out,
            &json!({"A": a, "s": s, "M": params.m, "I": params.i,
                    "bound": format!("{}/{}", b.numer(), b.denom()), "decimal": dec}),
        )?;
    } else {
        writeln!(out, "{dec}").map_err(io)?;
    }
    Ok(true)
}

fn sample(
    fmt: Format,
    p: u32,
    samples: u64,
    precision: u32,
    seed: u64,
    cache: Option<&DensityCache>,
    out: &mut dyn Write,
) -> Result<bool> {
    let est = padic_binary_cubic_sample(p, samples, precision, seed)?;
    let exact = rho_local_cached(1, cache)?.eval(&Rat::from_integer(p.into()))?;
    let (en, ed): (f64, f64) = (
        num_traits::ToPrimitive::to_f64(exact.numer()).unwrap_or(f64::NAN),
        num_traits::ToPrimitive::to_f64(exact.denom()).unwrap_or(f64::NAN),
    );
    let mean = en / ed;
    let sd = (mean * (1.0 - mean) / samples as f64).sqrt();
    let z = (est.soluble_fraction() - mean) / sd;
    if fmt == Format::Json {
        emit_json(
            out,
            &json!({"estimate": est, "exact": exact.to_string(), "z_score": format!("{z:.3}")}),
        )?;
    } else {
        writeln!(
            out,
            "p = {p}: soluble {}/{} = {:.5}, exact rho_1 = {exact} = {mean:.5}, z = {z:.3}, undecided {}",
            est.soluble,
            est.samples,
            est.soluble_fraction(),
            est.undecided
        )
        .map_err(io)?;
    }
    Ok(true)
}

fn tables(fmt: Format, cache: Option<&DensityCache>, out: &mut dyn Write) -> Result<bool> {
    let mut ok = true;
    let mut asym = Vec::new();
    for &(n, g, d) in &REFERENCE_ASYMPTOTICS {
        rho_local_cached(n, cache)?;
        let got = asymptotic_params_computed(n)?;
        ok &= got == (g, d);
        asym.push((n, got.0, got.1, got == (g, d)));
    }
    let mut density = Vec::new();
    for &(n, _, _) in REFERENCE_DEFICITS.iter().filter(|r| r.0 >= 3) {
        let d = REFERENCE_TRUNCATIONS.iter().find(|r| r.0 == n).unwrap().2;
        let v = rho_global_with(n, d, DEFAULT_A_MAX, TailBoundParams::default())?;
        let shown = if n == 3 {
            fixed(&v.product, 6, Rounding::Nearest)
        } else {
            format!("1 - {}", v.deficit_scientific(4))
        };
        density.push((n, shown));
    }
    let mut accuracy = Vec::new();
    for &(n, a, d) in &REFERENCE_TRUNCATIONS {
        let cert = plan_truncation_with(n, d, a, TailBoundParams::default())?;
        let sig = if n == 2 { 3 } else { 4 };
        let deficit = Rat::from_integer(1.into()) - truncated_product(n, a)?;
        accuracy.push((n, a, d, cert.a, cert.error_bound(), scientific(&deficit, sig, Rounding::Nearest)));
    }
    match fmt {
        Format::Json => {
            let t5: Vec<_> = asym.iter().map(|r| json!({"n": r.0, "gamma": r.1, "delta": r.2, "matches": r.3})).collect();
            let t1: Vec<_> = density.iter().map(|r| json!({"n": r.0, "rho": r.1})).collect();
            let t6: Vec<_> = accuracy
                .iter()
                .map(|r| json!({"n": r.0, "A": r.1, "D": r.2, "min_A": r.3, "error_bound": r.4, "deficit": r.5}))
                .collect();
            emit_json(out, &json!({"asymptotics": t5, "densities": t1, "accuracy": t6}))?;
        }
        Format::Text => {
            writeln!(out, "Asymptotics: 1 - rho_n(p) ~ 1/(gamma p^delta)").map_err(io)?;
            writeln!(out, "{:>3} {:>6} {:>6}", "n", "gamma", "delta").map_err(io)?;
            for r in &asym {
                writeln!(out, "{:>3} {:>6} {:>6}", r.0, r.1, r.2).map_err(io)?;
            }
            writeln!(out, "\nGlobal densities").map_err(io)?;
            writeln!(out, "{:>3} {:>12} {:>20}", "n", "asymptotic", "rho").map_err(io)?;
            for (r, a) in density.iter().zip(asym.iter().skip(1)) {
                writeln!(out, "{:>3} {:>12} {:>20}", r.0, format!("1/{}t^{}", a.1, a.2), r.1).map_err(io)?;
            }
            writeln!(out, "\nAccuracy of truncations").map_err(io)?;
            writeln!(out, "{:>3} {:>6} {:>4} {:>6} {:>12} {:>12}", "n", "A", "D", "min A", "error", "1 - prod").map_err(io)?;
            for r in &accuracy {
                writeln!(out, "{:>3} {:>6} {:>4} {:>6} {:>12} {:>12}", r.0, r.1, r.2, r.3, r.4, r.5).map_err(io)?;
            }
        }
        Format::Latex => {
            writeln!(out, "\\begin{{tabular}}{{r c c}}\n\\hline $n$ & $\\gamma_n$ & $\\delta_n$ \\\\ \\hline").map_err(io)?;
            for r in &asym {
                writeln!(out, "{} & {} & {} \\\\", r.0, r.1, r.2).map_err(io)?;
            }
            writeln!(out, "\\hline\n\\end{{tabular}}\n").map_err(io)?;
            writeln!(out, "\\begin{{tabular}}{{r l}}\n\\hline $n$ & $\\rho_{{3,n}} \\approx$ \\\\ \\hline").map_err(io)?;
            for r in &density {
                writeln!(out, "{} & ${}$ \\\\", r.0, sci_latex(&r.1)).map_err(io)?;
            }
            writeln!(out, "\\hline\n\\end{{tabular}}\n").map_err(io)?;
            writeln!(out, "\\begin{{tabular}}{{| c | c | c | c |}}\n\\hline $n$ & $A$ & $1 - \\prod_{{p \\leq A}} \\rho_n(p) \\approx$ & $D$ \\\\ \\hline").map_err(io)?;
            for r in &accuracy {
                writeln!(out, "{} & {} & ${}$ & {} \\\\", r.0, r.1, sci_latex(&r.5), r.2).map_err(io)?;
            }
            writeln!(out, "\\hline\n\\end{{tabular}}").map_err(io)?;
        }
    }
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("cubicdens").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_capture(&[]).0, 2);
        assert_eq!(run_capture(&["solve"]).0, 2);
        assert_eq!(run_capture(&["verify-golden", "--n", "9"]).0, 2);
        assert_eq!(run_capture(&["zeta-tail", "--A", "1", "--s", "1"]).0, 2);
        assert_eq!(run_capture(&["zeta-tail", "--A", "1", "--s", "2", "--I", "3"]).0, 2);
        assert_eq!(run_capture(&["oracle", "--n", "1", "--q", "4"]).0, 2);
        let (code, _, err) = run_capture(&["rho", "--n", "1", "--digits", "3"]);
        assert_eq!(code, 2);
        assert!(err.starts_with("error:"));
    }

    #[test]
    fn help_goes_to_stdout() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("sample-padic"));
    }

    #[test]
    fn oracle_report() {
        let (code, out, _) = run_capture(&["oracle", "--n", "2", "--q", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("N[3] = 8  formula 8  OK"), "{out}");
    }

    #[test]
    fn zeta_tail_text() {
        let (code, out, _) = run_capture(&["zeta-tail", "--A", "1", "--s", "2"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("1.64493406"), "{out}");
    }

    #[test]
    fn binary_solve() {
        let (code, out, _) = run_capture(&["solve", "--n", "1"]);
        assert_eq!(code, 0);
        assert_eq!(out, "g_1(p) = p^4 + 2*p^2 + 1\nh_1(p) = 3*p^4 + 3*p^3 + 3*p^2 + 3*p + 3\n");
        let (_, out, _) = run_capture(&["--format", "json", "solve", "--n", "1"]);
        assert_eq!(out.trim(), r#"{"n":1,"g":[1,0,2,0,1],"h":[3,3,3,3,3],"gamma":3,"delta":0}"#);
    }
}
