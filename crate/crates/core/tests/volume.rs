use num_bigint::BigInt;
use parkpoly::arith::{factorial, Rational};
use parkpoly::families::{xpf_constraints, xpf_pp_equivalence};
use parkpoly::series::f_ab_series;
use parkpoly::volume::*;
use parkpoly::{ConstraintSystem, XpfParams};

fn xp(n: usize, a: i64, b: i64) -> XpfParams {
    XpfParams::new(n, a, b).unwrap()
}

fn closed(n: usize, a: i64, b: i64) -> BigInt {
    nvol_closed_form(&xp(n, a, b)).unwrap().normalized
}

/// Normalized volumes from convex-hull triangulations computed outside this
/// crate, keyed by `(n, a, b)`.
const HULL_VOLUMES: &[(usize, i64, i64, i64)] = &[
    (2, 1, 1, 1),
    (2, 1, 2, 4),
    (2, 2, 1, 7),
    (2, 2, 2, 14),
    (2, 3, 1, 17),
    (2, 3, 2, 28),
    (3, 1, 1, 24),
    (3, 1, 2, 192),
    (3, 2, 1, 129),
    (3, 2, 2, 522),
    (3, 3, 1, 342),
    (3, 3, 2, 1032),
    (4, 1, 1, 954),
    (4, 1, 2, 15264),
    (4, 2, 1, 4554),
    (4, 2, 2, 37272),
    (4, 3, 1, 12666),
    (4, 3, 2, 72864),
];

#[test]
fn closed_form_matches_hull_volumes() {
    for &(n, a, b, v) in HULL_VOLUMES {
        assert_eq!(closed(n, a, b), BigInt::from(v), "({n},{a},{b})");
    }
}

#[test]
fn closed_form_equals_recursion() {
    for n in 1..=7 {
        for a in 1..=4 {
            for b in 1..=3 {
                let p = xp(n, a, b);
                let c = nvol_closed_form(&p).unwrap();
                let r = vol_recursive_generalized(&p).unwrap();
                assert_eq!(c.normalized, r.normalized, "{p}");
                assert_eq!(c.euclidean, r.euclidean, "{p}");
            }
        }
    }
}

#[test]
fn dilation_scaling() {
    for n in 1..=6 {
        for a in 1..=3 {
            for b in 1..=3i64 {
                let scale = BigInt::from(b).pow(n as u32);
                assert_eq!(closed(n, 1, b), &scale * closed(n, 1, 1));
                assert_eq!(
                    closed(n, a + (b - 1) * (a - 1), b),
                    &scale * closed(n, a, 1)
                );
            }
        }
    }
}

#[test]
fn partial_permutahedra_through_equivalence() {
    for n in 1..=6 {
        for p in n as i64 - 1..=n as i64 + 3 {
            let params = xpf_pp_equivalence(n, p).unwrap();
            assert_eq!(
                nvol_bcc_recursion(n, p).unwrap(),
                nvol_closed_form(&params).unwrap().normalized,
                "P({n},{p})"
            );
        }
    }
}

#[test]
fn ehrhart_oracle_on_segments() {
    for a in 2..=5 {
        let sys = ConstraintSystem::from(xpf_constraints(&xp(1, a, 3)));
        assert_eq!(
            ehrhart_volume_oracle(&sys, 1).unwrap().normalized,
            BigInt::from(a - 1)
        );
    }
}

#[test]
fn generating_function_matches_recursion() {
    for a in 1..=3 {
        for b in 1..=3 {
            let f = f_ab_series(a, b, 8).unwrap();
            let v = generalized_volume_sequence(a, b, 8);
            for (n, vol) in v.iter().enumerate() {
                let expected = vol / Rational::from_integer(factorial(n as u64));
                assert_eq!(f.coeff(n).unwrap(), &expected, "({a},{b}) n={n}");
            }
        }
    }
}

#[test]
fn volumes_are_nonnegative_integers() {
    for n in 1..=9 {
        for a in 1..=5 {
            for b in 1..=4 {
                let v = nvol_closed_form(&xp(n, a, b)).unwrap();
                assert!(v.normalized >= BigInt::from(0));
                assert_eq!(v.dim, n);
            }
        }
    }
}
