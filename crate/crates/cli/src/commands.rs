use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use planar_series::checks::{run_suite, Suite, SuiteOptions};
use planar_series::expfam::{exp_coeff, exp_series, translation_check};
use planar_series::radius::estimate_radius;
use planar_series::rebase::{rebase_between, Germ};
use planar_series::scalar::{format_rational, parse_complex, ComplexDisplay};
use planar_series::series::json::{series_to_value, AnySeries};
use planar_series::special::{gamma_germ, zeta_germ, GammaGermSpec, ZetaGermSpec};
use planar_series::trees::{binom, contract, enumerate_bounded, LeafSubset, PlanarMonomial};
use planar_series::{Rational, Scalar, TruncatedPlanarSeries};
use serde_json::{json, Map, Value};

use crate::args::*;

/// Result of a command that ran to completion.
pub enum Status {
    Ok,
    CheckFailed,
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<Status> {
    match cli.command {
        Command::Trees(cmd) => trees(cmd, out).map(|_| Status::Ok),
        Command::Series(cmd) => series(cmd, out).map(|_| Status::Ok),
        Command::Rebase(args) => rebase(args, out).map(|_| Status::Ok),
        Command::Exp(cmd) => exp(cmd, out),
        Command::Zeta(args) => special(args, out, zeta),
        Command::Gamma(args) => special(args, out, gamma),
        Command::Radius(args) => radius(args, out).map(|_| Status::Ok),
        Command::Check(args) => check(args, out),
    }
}

fn tree(text: &str) -> Result<PlanarMonomial> {
    PlanarMonomial::parse(text).with_context(|| format!("invalid tree {text:?}"))
}

fn arity_bound(k: Option<usize>) -> Result<usize> {
    match k {
        Some(k) if k < 2 => bail!("--k must be at least 2"),
        Some(k) => Ok(k),
        None => Ok(usize::MAX),
    }
}

fn trees(cmd: TreesCommand, out: &mut dyn Write) -> Result<()> {
    match cmd {
        TreesCommand::Count { degree, k } => {
            writeln!(out, "{}", enumerate_bounded(degree, arity_bound(k)?).len())?;
        }
        TreesCommand::List { degree, k, format } => {
            let list = enumerate_bounded(degree, arity_bound(k)?);
            match format {
                Format::Plain => {
                    for t in &list {
                        writeln!(out, "{t}")?;
                    }
                }
                Format::Csv => {
                    writeln!(out, "tree,degree,arity")?;
                    for t in &list {
                        writeln!(out, "\"{t}\",{},{}", t.degree(), t.max_arity())?;
                    }
                }
                Format::Json => {
                    let names: Vec<String> = list.iter().map(|t| t.to_string()).collect();
                    writeln!(out, "{}", Value::from(names))?;
                }
            }
        }
        TreesCommand::Binom { tree: trees } => {
            let [upper, lower] = trees.as_slice() else {
                bail!("binom needs exactly two --tree arguments, upper then lower");
            };
            writeln!(out, "{}", binom(&tree(upper)?, &tree(lower)?))?;
        }
        TreesCommand::Contract { tree: text, leaves } => {
            let t = tree(&text)?;
            let subset = LeafSubset::new(&t, leaves)?;
            writeln!(out, "{}", contract(&subset))?;
        }
    }
    Ok(())
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    } else {
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
    }
}

fn load(path: &Path, mode: Mode) -> Result<AnySeries> {
    let doc = AnySeries::parse(&read_input(path)?).with_context(|| format!("in {}", path.display()))?;
    Ok(convert(doc, mode))
}

fn convert(doc: AnySeries, mode: Mode) -> AnySeries {
    match (doc, mode) {
        (AnySeries::Rational(s, b), Mode::Complex) => AnySeries::Complex(s.to_complex(), b.map(|b| b.to_complex())),
        (doc, _) => doc,
    }
}

fn load_all(io: &SeriesInput) -> Result<AnySeries> {
    let docs = io.input.iter().map(|p| load(p, io.mode)).collect::<Result<Vec<_>>>()?;
    let any_complex = docs.iter().any(|d| matches!(d, AnySeries::Complex(..)));
    if io.mode == Mode::Exact && any_complex {
        bail!("--mode exact needs rational inputs");
    }
    let mut rationals = Vec::new();
    let mut complexes = Vec::new();
    for d in docs {
        match d {
            AnySeries::Rational(s, _) if !any_complex => rationals.push(s),
            AnySeries::Rational(s, _) => complexes.push(s.to_complex()),
            AnySeries::Complex(s, _) => complexes.push(s),
        }
    }
    Ok(if any_complex {
        AnySeries::Complex(product(complexes)?, None)
    } else {
        AnySeries::Rational(product(rationals)?, None)
    })
}

fn product<S: Scalar>(factors: Vec<TruncatedPlanarSeries<S>>) -> Result<TruncatedPlanarSeries<S>> {
    let refs: Vec<&TruncatedPlanarSeries<S>> = factors.iter().collect();
    Ok(match refs.as_slice() {
        [one] => (*one).clone(),
        [a, b] => a.mul2(b),
        many => TruncatedPlanarSeries::mulk(many)?,
    })
}

fn single(io: &SeriesInput) -> Result<AnySeries> {
    match io.input.as_slice() {
        [path] => load(path, io.mode),
        _ => bail!("this command takes exactly one --in"),
    }
}

fn scalar_text<S: Scalar>(c: &S) -> String {
    let mut fields = Map::new();
    c.encode(&mut fields);
    match fields.get("value").and_then(Value::as_str) {
        Some(text) => text.to_string(),
        None => ComplexDisplay(c.to_complex()).to_string(),
    }
}

fn write_series<S: Scalar>(out: &mut dyn Write, s: &TruncatedPlanarSeries<S>, base: Option<&S>, format: Format) -> Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", series_to_value(s, base))?,
        Format::Plain => {
            for (t, c) in s.terms() {
                writeln!(out, "{t} {}", scalar_text(c))?;
            }
        }
        Format::Csv => {
            let complex = S::KIND.as_str() == "complex";
            writeln!(out, "{}", if complex { "tree,degree,re,im" } else { "tree,degree,value" })?;
            for (t, c) in s.terms() {
                writeln!(out, "\"{t}\",{},{}", t.degree(), scalar_text(c))?;
            }
        }
    }
    Ok(())
}

fn write_any(out: &mut dyn Write, doc: &AnySeries, format: Format) -> Result<()> {
    match doc {
        AnySeries::Rational(s, b) => write_series(out, s, b.as_ref(), format),
        AnySeries::Complex(s, b) => write_series(out, s, b.as_ref(), format),
    }
}

fn series(cmd: SeriesCommand, out: &mut dyn Write) -> Result<()> {
    match cmd {
        SeriesCommand::Mul(io) => {
            let product = load_all(&io)?;
            write_any(out, &product, io.format)
        }
        SeriesCommand::Inv { io, side } => {
            let result = match single(&io)? {
                AnySeries::Rational(s, _) => AnySeries::Rational(invert(&s, side)?, None),
                AnySeries::Complex(s, _) => AnySeries::Complex(invert(&s, side)?, None),
            };
            write_any(out, &result, io.format)
        }
        SeriesCommand::Sqrt { io, root } => {
            let result = match single(&io)? {
                AnySeries::Rational(s, _) => {
                    let r = match &root {
                        Some(text) => Rational::parse_literal(text)?,
                        None => s.constant_term().sqrt().context(
                            "the constant term has no rational square root; use --mode complex or give --root",
                        )?,
                    };
                    AnySeries::Rational(s.sqrt_solve(&r)?, None)
                }
                AnySeries::Complex(s, _) => {
                    let r = match &root {
                        Some(text) => parse_complex(text)?,
                        None => Complex64::sqrt(s.constant_term()),
                    };
                    AnySeries::Complex(s.sqrt_solve(&r)?, None)
                }
            };
            write_any(out, &result, io.format)
        }
        SeriesCommand::Eval { io, a } => {
            let value = match single(&io)? {
                AnySeries::Rational(s, _) => match Rational::parse_literal(&a) {
                    Ok(a) => scalar_text(&s.eval(&a)),
                    Err(_) => scalar_text(&s.to_complex().eval(&parse_complex(&a)?)),
                },
                AnySeries::Complex(s, _) => scalar_text(&s.eval(&parse_complex(&a)?)),
            };
            writeln!(out, "{value}")?;
            Ok(())
        }
    }
}

fn invert<S: Scalar>(s: &TruncatedPlanarSeries<S>, side: Side) -> planar_series::Result<TruncatedPlanarSeries<S>> {
    match side {
        Side::Left => s.left_inverse(),
        Side::Right => s.right_inverse(),
    }
}

fn rebase_generic<S: Scalar>(
    s: TruncatedPlanarSeries<S>,
    base: Option<S>,
    a: Option<&str>,
    b: &str,
    trunc: Option<usize>,
) -> Result<Germ<S>> {
    let base = match a {
        Some(text) => S::parse_literal(text)?,
        None => base.unwrap_or_else(S::zero),
    };
    let n = trunc.unwrap_or(s.trunc());
    Ok(rebase_between(&Germ::new(base, s), &S::parse_literal(b)?, n)?)
}

fn rebase(args: RebaseArgs, out: &mut dyn Write) -> Result<()> {
    let doc = single(&args.io)?;
    let exact_points = [args.a.as_deref(), Some(args.b.as_str())]
        .into_iter()
        .flatten()
        .all(|p| Rational::parse_literal(p).is_ok());
    let doc = match doc {
        AnySeries::Rational(..) if !exact_points && args.io.mode != Mode::Exact => convert(doc, Mode::Complex),
        doc => doc,
    };
    match doc {
        AnySeries::Rational(s, base) => {
            let g = rebase_generic(s, base, args.a.as_deref(), &args.b, args.trunc)?;
            write_series(out, &g.series, Some(&g.base), args.io.format)
        }
        AnySeries::Complex(s, base) => {
            let g = rebase_generic(s, base, args.a.as_deref(), &args.b, args.trunc)?;
            write_series(out, &g.series, Some(&g.base), args.io.format)
        }
    }
}

fn exp(cmd: ExpCommand, out: &mut dyn Write) -> Result<Status> {
    match cmd {
        ExpCommand::Coeff { k, tree: text } => {
            writeln!(out, "{}", format_rational(&exp_coeff(&tree(&text)?, k)?))?;
        }
        ExpCommand::Table { k, degree, format } => {
            let s = exp_series::<Rational>(k, degree)?;
            write_series(out, &s, None, format)?;
        }
        ExpCommand::Translate { k, a, trunc, degree, tol } => {
            let lambda = parse_complex(&a)?;
            let report = translation_check(k, lambda, trunc, degree, tol)?;
            writeln!(
                out,
                "{} max discrepancy {:.3e} (tolerance {:.1e}, source degree {}, trunc {})",
                if report.passed { "PASS" } else { "FAIL" },
                report.max_discrepancy,
                tol,
                report.rebase.source_trunc,
                trunc
            )?;
            if let Some(tail) = report.rebase.tail_bound {
                writeln!(out, "tail bound {tail:.3e}")?;
            }
            return Ok(if report.passed { Status::Ok } else { Status::CheckFailed });
        }
    }
    Ok(Status::Ok)
}

fn zeta(r: Complex64, trunc: usize, k: usize) -> planar_series::Result<Germ<Complex64>> {
    zeta_germ(&ZetaGermSpec::new(r, trunc).with_arity(k))
}

fn gamma(r: Complex64, trunc: usize, k: usize) -> planar_series::Result<Germ<Complex64>> {
    gamma_germ(&GammaGermSpec::new(r, trunc).with_arity(k))
}

fn special(
    args: SpecialArgs,
    out: &mut dyn Write,
    germ: fn(Complex64, usize, usize) -> planar_series::Result<Germ<Complex64>>,
) -> Result<Status> {
    let r = parse_complex(&args.r)?;
    let g = germ(r, args.trunc, args.k)?;
    write_series(out, &g.series, Some(&g.base), args.format)?;
    Ok(Status::Ok)
}

fn radius(args: RadiusArgs, out: &mut dyn Write) -> Result<()> {
    let majorants = match &args.input {
        Some(path) => match load(path, Mode::Auto)? {
            AnySeries::Rational(s, _) => s.majorants(),
            AnySeries::Complex(s, _) => s.majorants(),
        },
        None if args.values.is_empty() => bail!("give --in or --values"),
        None => args.values.clone(),
    };
    let e = estimate_radius(&majorants)?;
    match args.format {
        Format::Json => {
            let radius = if e.is_infinite() { Value::from("inf") } else { Value::from(e.radius) };
            let doc = json!({
                "radius": radius,
                "method": e.method.to_string(),
                "window": [e.window.0, e.window.1],
                "residual": e.residual,
                "factorial_exponent": e.factorial_exponent,
            });
            writeln!(out, "{doc}")?;
        }
        Format::Csv => {
            writeln!(out, "radius,method,window_start,window_end,residual")?;
            writeln!(out, "{},{},{},{},{}", e.radius, e.method, e.window.0, e.window.1, e.residual)?;
        }
        Format::Plain => {
            writeln!(out, "estimate {}", e.radius)?;
            writeln!(out, "method {}", e.method)?;
            writeln!(out, "window {}..={}", e.window.0, e.window.1)?;
            writeln!(out, "residual {:.3e}", e.residual)?;
        }
    }
    Ok(())
}

fn check(args: CheckArgs, out: &mut dyn Write) -> Result<Status> {
    let suites = if args.suite == "all" { Suite::ALL.to_vec() } else { vec![Suite::from_name(&args.suite)?] };
    let options = SuiteOptions { seed: args.seed, max_degree: args.max_degree };
    let mut all_passed = true;
    for suite in suites {
        let report = run_suite(suite, &options)?;
        all_passed &= report.passed();
        writeln!(out, "{}", report.summary())?;
        if args.verbose {
            for c in &report.checks {
                writeln!(out, "    {} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail)?;
            }
        }
    }
    Ok(if all_passed { Status::Ok } else { Status::CheckFailed })
}
