mod report;
mod verify;

use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use parkpoly::arith::{affine_rank, factorial, lagrange_interpolate, Rational};
use parkpoly::counting::*;
use parkpoly::families::*;
use parkpoly::series::{f_ab_series, g_b_series, verify_functional_equation, DEFAULT_ORDER};
use parkpoly::volume::*;
use parkpoly::{ConstraintSystem, XpfParams};

use report::{Check, Report};

#[derive(Parser)]
#[command(
    name = "parkpoly",
    version,
    about = "Exact computations on parking function polytopes"
)]
struct Cli {
    /// Emit tables as CSV instead of JSON.
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Volume of X_n(a, b).
    Volume {
        n: usize,
        a: i64,
        b: i64,
        #[arg(long, value_enum, default_value = "closed")]
        formula: FormulaArg,
    },
    /// f-vector of X_n(a, b) from the closed formulas.
    Fvector { n: usize, a: i64, b: i64 },
    /// Vertices of X_n(a, b), sorted lexicographically.
    Vertices { n: usize, a: i64, b: i64 },
    /// Counting formulas for one family.
    Count {
        #[arg(value_enum)]
        family: CountFamily,
        #[arg(allow_negative_numbers = true)]
        params: Vec<i64>,
    },
    /// Lattice-point counts of dilates and the interpolated Ehrhart polynomial.
    Ehrhart {
        #[arg(value_enum)]
        family: EhrhartFamily,
        #[arg(allow_negative_numbers = true)]
        params: Vec<String>,
        #[arg(long, default_value_t = 3)]
        tmax: i64,
    },
    /// Coefficients of the volume generating functions.
    Series {
        #[arg(long, default_value_t = 1)]
        a: i64,
        #[arg(long, default_value_t = 1)]
        b: i64,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Run invariant suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: verify::Suite,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormulaArg {
    Closed,
    Recursive,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum CountFamily {
    Parking,
    Vertices,
    Facets,
    Edges,
    RationalVertices,
    RationalFacets,
    RationalParking,
    Permanent,
    WipfFaces,
}

#[derive(Clone, Copy, ValueEnum)]
enum EhrhartFamily {
    Xpf,
    Wipf,
    Ps,
    Pp,
    Rational,
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow!(msg.into())
}

fn big(v: impl ToString) -> Value {
    Value::String(v.to_string())
}

fn xp(n: usize, a: i64, b: i64) -> anyhow::Result<XpfParams> {
    Ok(XpfParams::new(n, a, b)?)
}

fn arity<T: Copy>(params: &[T], names: &[&str]) -> anyhow::Result<Vec<T>> {
    if params.len() != names.len() {
        return Err(usage(format!(
            "expected {} parameter(s) ({}), got {}",
            names.len(),
            names.join(" "),
            params.len()
        )));
    }
    Ok(params.to_vec())
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(raw) = std::env::var("PARKPOLY_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().map_err(|_| {
        usage(format!(
            "PARKPOLY_THREADS must be a positive integer, got {raw:?}"
        ))
    })?;
    if threads == 0 {
        return Err(usage("PARKPOLY_THREADS must be at least 1"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("configuring the thread pool")?;
    Ok(())
}

fn cmd_volume(n: usize, a: i64, b: i64, formula: FormulaArg) -> anyhow::Result<Report> {
    let p = xp(n, a, b)?;
    let mut r = Report::new("volume")
        .param("n", n)
        .param("a", a)
        .param("b", b)
        .param(
            "formula",
            match formula {
                FormulaArg::Closed => "closed",
                FormulaArg::Recursive => "recursive",
                FormulaArg::All => "all",
            },
        );
    let mut results = Vec::new();
    if formula != FormulaArg::Recursive {
        results.push(nvol_closed_form(&p)?);
    }
    if formula != FormulaArg::Closed {
        results.push(vol_recursive_generalized(&p)?);
    }
    if formula == FormulaArg::All && n <= 4 {
        let sys = ConstraintSystem::from(xpf_constraints(&p));
        results.push(ehrhart_volume_oracle(&sys, n)?);
    }
    for v in &results {
        r.row(&[
            ("dim", json!(v.dim)),
            ("euclidean", big(&v.euclidean)),
            ("formula", json!(v.source.name())),
            ("normalized", big(&v.normalized)),
        ]);
    }
    if formula == FormulaArg::All {
        let first = &results[0].normalized;
        for v in &results[1..] {
            r.check(Check::equal(
                format!("{} = {}", v.source, results[0].source),
                &v.normalized,
                first,
            ));
        }
    }
    Ok(r)
}

fn cmd_fvector(n: usize, a: i64, b: i64) -> anyhow::Result<Report> {
    let p = xp(n, a, b)?;
    let mut r = Report::new("fvector")
        .param("n", n)
        .param("a", a)
        .param("b", b);
    let f = f_vector_formula(&p);
    for (k, v) in f.entries().iter().enumerate() {
        r.row(&[("dim", json!(k)), ("faces", big(v))]);
    }
    r.check(Check::equal("euler characteristic", f.euler_sum(), 1));
    Ok(r)
}

fn cmd_vertices(n: usize, a: i64, b: i64) -> anyhow::Result<Report> {
    let p = xp(n, a, b)?;
    let mut r = Report::new("vertices")
        .param("n", n)
        .param("a", a)
        .param("b", b);
    let verts = xpf_vertices(&p);
    for v in &verts {
        r.row(&[
            ("layer", json!(layer_of(&p, v)?.0)),
            ("vertex", json!(v.coords())),
        ]);
    }
    r.check(Check::equal(
        "vertex count formula",
        verts.len(),
        vertex_count_formula(&p),
    ));
    Ok(r)
}

fn cmd_count(family: CountFamily, params: &[i64]) -> anyhow::Result<Report> {
    use CountFamily::*;
    let nab = ["n", "a", "b"];
    let ab = ["a", "b"];
    let (name, names): (&str, &[&str]) = match family {
        Parking => ("parking", &nab),
        Vertices => ("vertices", &nab),
        Facets => ("facets", &nab),
        Edges => ("edges", &nab),
        RationalVertices => ("rational-vertices", &ab),
        RationalFacets => ("rational-facets", &ab),
        RationalParking => ("rational-parking", &ab),
        Permanent => ("permanent", &["n"]),
        WipfFaces => ("wipf-faces", &["n"]),
    };
    let vals = arity(params, names)?;
    let mut r = Report::new("count").param("family", name);
    for (k, v) in names.iter().zip(&vals) {
        r = r.param(k, *v);
    }
    let size = |i: usize| -> anyhow::Result<usize> {
        usize::try_from(vals[i]).map_err(|_| usage(format!("{} must be >= 0", names[i])))
    };
    let emit =
        |r: &mut Report, key: &str, v: Value| r.row(&[("count", v), ("quantity", json!(key))]);
    match family {
        Parking | Vertices | Facets | Edges => {
            let p = xp(size(0)?, vals[1], vals[2])?;
            match family {
                Parking => {
                    emit(
                        &mut r,
                        "parking functions",
                        big(count_x_parking_functions(&p)),
                    );
                }
                Vertices => {
                    let v = vertex_count_formula(&p);
                    emit(&mut r, "vertices", big(&v));
                    r.check(Check::equal(
                        "vertex enumeration",
                        xpf_vertices(&p).len(),
                        v,
                    ));
                }
                Facets => emit(&mut r, "facets", big(facet_count_formula(&p))),
                _ => emit(&mut r, "edges", big(edge_count_formula(&p)?)),
            }
        }
        RationalVertices => {
            let v = rational_vertex_count(vals[0], vals[1])?;
            emit(&mut r, "vertices", big(&v));
            let seen = rational_pf_vertices(vals[0], vals[1])?.len();
            r.check(Check::equal("vertex enumeration", seen, v));
        }
        RationalFacets => {
            emit(
                &mut r,
                "facets",
                big(rational_facet_count_formula(vals[0], vals[1])?),
            );
        }
        RationalParking => {
            let c = count_rational_parking_functions(vals[0], vals[1])?;
            emit(&mut r, "parking functions", big(&c));
            let vectors = enumerate_rational_parking_vectors(vals[0], vals[1])?.len();
            r.check(Check::equal("preference vector enumeration", vectors, c));
        }
        Permanent => {
            let n = size(0)?;
            let c = count_permanent_positive(n)?;
            emit(&mut r, "positive permanents", big(c));
            if n >= 1 {
                r.check(Check::equal("normalized volume", c, nvol_aw_recursion(n)));
            }
        }
        WipfFaces => {
            let (facets, vertices, edges) = wipf_face_counts(size(0)?)?;
            emit(&mut r, "edges", big(edges));
            emit(&mut r, "facets", big(facets));
            emit(&mut r, "vertices", big(vertices));
        }
    }
    Ok(r)
}

fn parse_ints(params: &[String], names: &[&str]) -> anyhow::Result<Vec<i64>> {
    if params.len() != names.len() {
        return Err(usage(format!(
            "expected {} parameter(s) ({}), got {}",
            names.len(),
            names.join(" "),
            params.len()
        )));
    }
    params
        .iter()
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| usage(format!("not an integer: {s:?}")))
        })
        .collect()
}

fn to_size(v: i64, name: &str) -> anyhow::Result<usize> {
    usize::try_from(v).map_err(|_| usage(format!("{name} must be >= 0, got {v}")))
}

fn cmd_ehrhart(family: EhrhartFamily, params: &[String], tmax: i64) -> anyhow::Result<Report> {
    if tmax < 0 {
        return Err(usage(format!("--tmax must be >= 0, got {tmax}")));
    }
    let mut r = Report::new("ehrhart").param("tmax", tmax);
    let mut expected: Option<Box<dyn Fn(i64) -> anyhow::Result<String>>> = None;
    let mut expected_volume = None;
    let (family_name, sys, dim) = match family {
        EhrhartFamily::Xpf => {
            let v = parse_ints(params, &["n", "a", "b"])?;
            let p = xp(to_size(v[0], "n")?, v[1], v[2])?;
            r = r.param("n", v[0]).param("a", v[1]).param("b", v[2]);
            let verts: Vec<_> = xpf_vertices(&p).into_iter().collect();
            let dim = affine_rank(&verts)?;
            if dim == p.n() {
                expected_volume = Some(nvol_closed_form(&p)?.normalized);
            }
            ("xpf", ConstraintSystem::from(xpf_constraints(&p)), dim)
        }
        EhrhartFamily::Wipf => {
            let v = parse_ints(params, &["n", "a", "b"])?;
            let p = xp(to_size(v[0], "n")?, v[1], v[2])?;
            r = r.param("n", v[0]).param("a", v[1]).param("b", v[2]);
            let verts: Vec<_> = wipf_vertices(&p).into_iter().collect();
            let dim = affine_rank(&verts)?;
            let sys = ConstraintSystem::from(ps_constraints(&wipf_ps_vector(&p))?);
            expected = Some(Box::new(move |t| {
                Ok(wipf_ehrhart_formula(&p, t)?.to_string())
            }));
            ("wipf", sys, dim)
        }
        EhrhartFamily::Ps => {
            let [raw] = params else {
                return Err(usage("expected one comma-separated vector, e.g. 0,1,1"));
            };
            let x: Vec<i64> = raw
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse()
                        .map_err(|_| usage(format!("not an integer: {s:?}")))
                })
                .collect::<anyhow::Result<_>>()?;
            r = r.param("x", json!(x));
            let sys = ps_constraints(&x)?;
            let dim = x.len() - x.iter().take_while(|&&v| v == 0).count();
            let b = x.get(1).copied().unwrap_or(1);
            if x.len() >= 2 && b >= 1 && x[1..].iter().all(|&v| v == b) {
                let p = xp(x.len(), x[0] + 1, b)?;
                expected = Some(Box::new(move |t| {
                    Ok(wipf_ehrhart_formula(&p, t)?.to_string())
                }));
            }
            ("ps", ConstraintSystem::from(sys), dim)
        }
        EhrhartFamily::Pp => {
            let v = parse_ints(params, &["n", "p"])?;
            let n = to_size(v[0], "n")?;
            r = r.param("n", v[0]).param("p", v[1]);
            let p = xpf_pp_equivalence(n, v[1])?;
            let verts: Vec<_> = pp_vertices(n, v[1])?.into_iter().collect();
            let dim = affine_rank(&verts)?;
            if dim == n {
                expected_volume = Some(nvol_bcc_recursion(n, v[1])?);
            }
            ("pp", ConstraintSystem::from(xpf_constraints(&p)), dim)
        }
        EhrhartFamily::Rational => {
            let v = parse_ints(params, &["a", "b"])?;
            r = r.param("a", v[0]).param("b", v[1]);
            let verts: Vec<_> = rational_pf_vertices(v[0], v[1])?.into_iter().collect();
            let dim = affine_rank(&verts)?;
            (
                "rational",
                ConstraintSystem::from(rational_pf_constraints(v[0], v[1])?),
                dim,
            )
        }
    };
    r = r.param("family", family_name);
    let counts = (0..=tmax)
        .map(|t| Ok((t, lattice_points_in_dilate(&sys, t)?)))
        .collect::<anyhow::Result<Vec<_>>>()?;
    for &(t, c) in &counts {
        r.row(&[("count", big(c)), ("t", json!(t))]);
        if let Some(f) = &expected {
            r.check(Check::equal(format!("formula t={t}"), c, f(t)?));
        }
    }
    if tmax as usize >= dim {
        let points: Vec<(Rational, Rational)> = counts[..=dim]
            .iter()
            .map(|&(t, c)| {
                (
                    Rational::from_integer(t.into()),
                    Rational::from_integer(c.into()),
                )
            })
            .collect();
        let poly = lagrange_interpolate(&points)?;
        let leading = poly.coeff(dim);
        let normalized = &leading * Rational::from_integer(factorial(dim as u64));
        r = r
            .param("dim", dim)
            .param("polynomial", poly.to_string())
            .param("leading", leading.to_string())
            .param("normalized", normalized.to_string());
        for &(t, c) in &counts[dim + 1..] {
            let value = poly.eval(&Rational::from_integer(t.into()));
            r.check(Check::equal(format!("polynomial t={t}"), value, c));
        }
        if let Some(v) = expected_volume {
            r.check(Check::equal("normalized volume", normalized, v));
        }
    } else {
        r = r.param("dim", dim);
        eprintln!("note: --tmax {tmax} is below the dimension {dim}; no polynomial interpolated");
    }
    Ok(r)
}

fn cmd_series(a: i64, b: i64, order: usize) -> anyhow::Result<Report> {
    let mut r = Report::new("series")
        .param("a", a)
        .param("b", b)
        .param("order", order);
    let f = f_ab_series(a, b, order)?;
    let g = g_b_series(b, order);
    let vols = generalized_volume_sequence(a, b, order);
    for (n, vol) in vols.iter().enumerate() {
        let (Some(fc), Some(gc)) = (f.coeff(n), g.coeff(n)) else {
            break;
        };
        let fact = Rational::from_integer(factorial(n as u64));
        r.row(&[
            ("f", big(fc)),
            ("g", big(gc)),
            ("n", json!(n)),
            ("normalized", big(fc * &fact * &fact)),
        ]);
        r.check(Check::equal(format!("f x^{n}"), fc, vol / &fact));
    }
    r.check(Check::holds(
        "functional equation",
        verify_functional_equation(b, order),
        format!("b={b}, order {order}"),
    ));
    Ok(r)
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    match &cli.command {
        Command::Volume { n, a, b, formula } => cmd_volume(*n, *a, *b, *formula),
        Command::Fvector { n, a, b } => cmd_fvector(*n, *a, *b),
        Command::Vertices { n, a, b } => cmd_vertices(*n, *a, *b),
        Command::Count { family, params } => cmd_count(*family, params),
        Command::Ehrhart {
            family,
            params,
            tmax,
        } => cmd_ehrhart(*family, params, *tmax),
        Command::Series { a, b, order } => cmd_series(*a, *b, *order),
        Command::Verify { suite } => {
            let name = suite.to_possible_value().map(|v| v.get_name().to_string());
            let mut r = Report::new("verify").param("suite", name.unwrap_or_default());
            for c in verify::run(*suite)? {
                r.check(c);
            }
            Ok(r)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_threads().and_then(|()| run(&cli));
    let report = match outcome {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let mut stdout = io::stdout().lock();
    let written = if cli.csv {
        report.write_csv(&mut stdout)
    } else {
        report.write_json(&mut stdout)
    };
    if let Err(e) = written.and_then(|()| Ok(stdout.flush()?)) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    let failed: Vec<_> = report.checks.iter().filter(|c| !c.pass).collect();
    for c in &failed {
        eprintln!("FAIL {}: {}", c.name, c.details);
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
