use parkpoly::arith::{factorial, odd_double_factorial, Rational};
use parkpoly::counting::*;
use parkpoly::families::*;
use parkpoly::series::{ck_egf_check, f_ab_series, verify_functional_equation};
use parkpoly::volume::*;
use parkpoly::{ConstraintSystem, Result, XpfParams};

use crate::report::Check;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Volume,
    Faces,
    Series,
    Rational,
    Weakly,
}

pub fn run(suite: Suite) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let all = suite == Suite::All;
    if all || suite == Suite::Volume {
        volume_suite(&mut checks)?;
    }
    if all || suite == Suite::Faces {
        faces_suite(&mut checks)?;
    }
    if all || suite == Suite::Series {
        series_suite(&mut checks)?;
    }
    if all || suite == Suite::Rational {
        rational_suite(&mut checks)?;
    }
    if all || suite == Suite::Weakly {
        weakly_suite(&mut checks)?;
    }
    Ok(checks)
}

fn xp(n: usize, a: i64, b: i64) -> Result<XpfParams> {
    XpfParams::new(n, a, b)
}

fn volume_suite(out: &mut Vec<Check>) -> Result<()> {
    let pf2 = closed_form_sum(&xp(2, 1, 1)?, odd_double_factorial)?;
    out.push(Check::equal("volume/closed PF_2", pf2, 1));
    for n in 2..=8 {
        let reference = nvol_aw_recursion(n);
        let closed = nvol_closed_form(&xp(n, 1, 1)?)?.normalized;
        let others = [
            ("bcc", nvol_bcc_recursion(n, n as i64 - 1)?),
            ("closed", closed),
            ("iv", nvol_shephard_iv(n)?),
            ("v", nvol_shephard_v(n)?),
        ];
        for (name, v) in others {
            out.push(Check::equal(format!("volume/{name} n={n}"), v, &reference));
        }
        if n <= 5 {
            let census = count_permanent_positive(n)?;
            out.push(Check::equal(
                format!("volume/permanent n={n}"),
                census,
                &reference,
            ));
        }
    }
    for n in 1..=4 {
        for a in 1..=3 {
            for b in 1..=2 {
                let p = xp(n, a, b)?;
                let sys = ConstraintSystem::from(xpf_constraints(&p));
                let oracle = ehrhart_volume_oracle(&sys, n)?.normalized;
                let closed = nvol_closed_form(&p)?.normalized;
                out.push(Check::equal(format!("volume/ehrhart {p}"), oracle, closed));
            }
        }
    }
    for n in 1..=7 {
        for a in 1..=4 {
            for b in 1..=3 {
                let p = xp(n, a, b)?;
                let closed = nvol_closed_form(&p)?.normalized;
                let rec = vol_recursive_generalized(&p)?.normalized;
                out.push(Check::equal(format!("volume/recursion {p}"), rec, closed));
            }
        }
    }
    for n in 2..=20 {
        let d = wz_difference(n)?;
        out.push(Check::equal(format!("volume/wz sum n={n}"), d, 0));
        out.push(Check::holds(
            format!("volume/wz certificate n={n}"),
            wz_certificate_holds(n)?,
            "",
        ));
    }
    for n in 0..=6usize {
        for p in (n as i64 - 1).max(0)..=n as i64 + 3 {
            let rec = nvol_bcc_recursion(n, p)?;
            out.push(Check::equal(
                format!("volume/ck P({n},{p})"),
                nvol_pp_ck(n, p)?,
                &rec,
            ));
            out.push(Check::equal(
                format!("volume/explicit P({n},{p})"),
                nvol_pp_explicit(n, p)?,
                &rec,
            ));
        }
    }
    Ok(())
}

fn faces_suite(out: &mut Vec<Check>) -> Result<()> {
    for n in 1..=7 {
        for a in 1..=3 {
            for b in 1..=3 {
                let p = xp(n, a, b)?;
                out.push(Check::equal(
                    format!("faces/vertices {p}"),
                    xpf_vertices(&p).len(),
                    vertex_count_formula(&p),
                ));
            }
        }
    }
    for n in 1..=4 {
        for a in 1..=2 {
            for b in 1..=2 {
                let p = xp(n, a, b)?;
                out.push(Check::equal(
                    format!("faces/f-vector {p}"),
                    brute_force_faces(&p)?,
                    f_vector_formula(&p),
                ));
            }
        }
    }
    for n in 1..=10 {
        for a in 1..=2 {
            let f = f_vector_formula(&xp(n, a, 1)?);
            out.push(Check::equal(
                format!("faces/euler n={n} a={a}"),
                f.euler_sum(),
                1,
            ));
        }
    }
    for n in 3..=4 {
        let (pf, perm) = permutahedron_facet_census(n)?;
        out.push(Check::equal(
            format!("faces/census n={n}"),
            format!("{pf},{perm}"),
            format!("{n},1"),
        ));
    }
    Ok(())
}

fn series_suite(out: &mut Vec<Check>) -> Result<()> {
    for b in 1..=5 {
        out.push(Check::holds(
            format!("series/functional equation b={b}"),
            verify_functional_equation(b, 10),
            "order 10",
        ));
    }
    for a in 1..=3 {
        for b in 1..=3 {
            let f = f_ab_series(a, b, 8)?;
            let v = generalized_volume_sequence(a, b, 8);
            for (n, vol) in v.iter().enumerate() {
                let want = vol / Rational::from_integer(factorial(n as u64));
                let got = f.coeff(n).expect("within order");
                out.push(Check::equal(format!("series/f({a},{b}) x^{n}"), got, want));
            }
        }
    }
    out.push(Check::holds(
        "series/c_k egf",
        ck_egf_check(10)?,
        "order 10",
    ));
    Ok(())
}

fn rational_suite(out: &mut Vec<Check>) -> Result<()> {
    for a in 1..=6i64 {
        for b in 1..=9i64 {
            if num_integer::gcd(a, b) != 1 {
                continue;
            }
            out.push(Check::equal(
                format!("rational/vertices ({a},{b})"),
                rational_vertex_count(a, b)?,
                rational_pf_vertices(a, b)?.len(),
            ));
            if a <= 5 && b <= 7 {
                let want = num_bigint::BigInt::from(b).pow(a as u32 - 1);
                out.push(Check::equal(
                    format!("rational/parking ({a},{b})"),
                    count_rational_parking_functions(a, b)?,
                    want,
                ));
            }
            if (3..=5).contains(&a) && (b > a || b == a - 1) {
                let f = rational_faces_brute(a, b)?;
                out.push(Check::equal(
                    format!("rational/facets ({a},{b})"),
                    &f.entries()[a as usize - 1],
                    rational_facet_count_formula(a, b)?,
                ));
            }
        }
    }
    Ok(())
}

fn weakly_suite(out: &mut Vec<Check>) -> Result<()> {
    for n in 1..=4 {
        for a in 1..=3 {
            for b in 1..=2 {
                let p = xp(n, a, b)?;
                for t in 0..=4 {
                    out.push(Check::equal(
                        format!("weakly/ehrhart {p} t={t}"),
                        wipf_dilate_count_brute(&p, t)?,
                        wipf_ehrhart_formula(&p, t)?,
                    ));
                }
            }
        }
    }
    for n in 1..=6 {
        out.push(Check::equal(
            format!("weakly/catalan n={n}"),
            wipf_ehrhart_formula(&xp(n, 1, 1)?, 1)?,
            catalan(n as u64),
        ));
    }
    for n in 2..=5 {
        let p = xp(n, 1, 1)?;
        let sys = ConstraintSystem::from(ps_constraints(&wipf_ps_vector(&p))?);
        out.push(Check::equal(
            format!("weakly/volume n={n}"),
            ehrhart_volume_oracle(&sys, n - 1)?.normalized,
            nvol_wipf(n)?,
        ));
        let (facets, vertices, edges) = wipf_face_counts(n)?;
        let f = wipf_faces_brute(n)?;
        out.push(Check::equal(
            format!("weakly/faces n={n}"),
            format!(
                "{},{},{}",
                f.entries()[n - 2],
                f.entries()[0],
                f.entries()[1]
            ),
            format!("{facets},{vertices},{edges}"),
        ));
    }
    Ok(())
}
