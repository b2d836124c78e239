use std::collections::BTreeSet;

use parkpoly::arith::RationalMatrix;
use parkpoly::families::*;
use parkpoly::XpfParams;

fn xp(n: usize, a: i64, b: i64) -> XpfParams {
    XpfParams::new(n, a, b).unwrap()
}

fn box_points(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![lo; n];
    loop {
        out.push(cur.clone());
        let Some(i) = cur.iter().rposition(|&c| c < hi) else {
            return out;
        };
        cur[i] += 1;
        cur[i + 1..].iter_mut().for_each(|c| *c = lo);
    }
}

fn tight_normals(ineqs: &[Inequality], v: &[i64]) -> Vec<Vec<i64>> {
    ineqs
        .iter()
        .filter(|q| q.is_tight(v))
        .map(|q| q.normal.clone())
        .collect()
}

#[test]
fn vertices_are_certified_simple_vertices() {
    for n in 1..=5 {
        for a in 1..=3 {
            for b in 1..=3 {
                let p = xp(n, a, b);
                let sys = xpf_constraints(&p).without_redundant();
                let ineqs = sys.explicit();
                for v in xpf_vertices(&p) {
                    assert!(is_x_parking_function(&p, &v), "{p} {v}");
                    assert!(xpf_membership(&p, 1, &v).unwrap(), "{p} {v}");
                    let normals = tight_normals(&ineqs, &v);
                    let rank = RationalMatrix::from_integer_rows(&normals).unwrap().rank();
                    assert_eq!(rank, n, "{p} {v}");
                    if a > 1 {
                        assert_eq!(normals.len(), n, "{p} {v} is not simple");
                    }
                }
            }
        }
    }
}

#[test]
fn membership_contains_every_parking_function() {
    for n in 1..=4 {
        for a in 1..=3 {
            for b in 1..=2 {
                let p = xp(n, a, b);
                for pt in box_points(n, 1, p.max_coordinate()) {
                    if is_x_parking_function(&p, &pt) {
                        assert!(xpf_membership(&p, 1, &pt).unwrap(), "{p} {pt:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn flagged_bound_is_redundant() {
    for n in 2..=5 {
        for b in 1..=3 {
            let p = xp(n, 1, b);
            let full = xpf_constraints(&p);
            let trimmed = full.without_redundant();
            assert_eq!(full.redundant().len(), 1);
            for pt in box_points(n, 1, p.max_coordinate()) {
                assert_eq!(
                    full.contains(1, &pt),
                    trimmed.contains(1, &pt),
                    "{p} {pt:?}"
                );
            }
        }
    }
}

fn wipf_lattice_points(p: &XpfParams) -> BTreeSet<Vec<i64>> {
    box_points(p.n(), 1, p.max_coordinate())
        .into_iter()
        .filter(|x| wipf_membership(p, 1, x))
        .collect()
}

fn ps_lattice_points(sys: &PrefixSystem) -> BTreeSet<Vec<i64>> {
    let top = *sys.bounds().last().unwrap();
    box_points(sys.n(), 0, top)
        .into_iter()
        .filter(|y| sys.contains(1, y))
        .collect()
}

#[test]
fn pitman_stanley_maps_are_lattice_bijections() {
    for n in 1..=5 {
        for a in 1..=3 {
            for b in 1..=2 {
                let p = xp(n, a, b);
                let ps = ps_constraints(&wipf_ps_vector(&p)).unwrap();
                let left = wipf_lattice_points(&p);
                let right = ps_lattice_points(&ps);
                let mapped: BTreeSet<Vec<i64>> = left.iter().map(|x| wipf_to_ps(x).0).collect();
                assert_eq!(mapped, right, "{p}");
                for y in &right {
                    assert!(left.contains(&ps_to_wipf(y).0));
                }
            }
        }
    }
}

#[test]
fn weakly_increasing_vertices_are_certified_on_the_image() {
    for n in 1..=5 {
        for a in 1..=3 {
            for b in 1..=2 {
                let p = xp(n, a, b);
                let ps = ps_constraints(&wipf_ps_vector(&p)).unwrap();
                let ineqs = ps.explicit();
                let vertices = wipf_vertices(&p);
                if a > 1 {
                    assert_eq!(vertices.len(), 1 << n, "{p}");
                }
                for v in vertices {
                    assert!(wipf_membership(&p, 1, &v));
                    let y = wipf_to_ps(&v);
                    let rank = RationalMatrix::from_integer_rows(&tight_normals(&ineqs, &y))
                        .unwrap()
                        .rank();
                    assert_eq!(rank, n, "{p} {v}");
                }
            }
        }
    }
}

#[test]
fn partial_permutahedron_translates_to_classical() {
    for n in 1..=6 {
        assert!(pp_translation_matches(n, n as i64 - 1).unwrap(), "n = {n}");
        for extra in 0..3 {
            assert!(pp_translation_matches(n, n as i64 + extra).unwrap());
        }
    }
}

#[test]
fn dilation_maps_vertices() {
    for n in 1..=5 {
        for a in 1..=3 {
            for b in 1..=3 {
                let base: BTreeSet<LatticePoint> = xpf_vertices(&xp(n, a, 1))
                    .iter()
                    .map(|v| one_fixed_dilate(b, v))
                    .collect();
                let target = xp(n, a + (b - 1) * (a - 1), b);
                assert_eq!(base, xpf_vertices(&target), "{n} {a} {b}");
            }
        }
    }
}

#[test]
fn rational_vertices_satisfy_their_description() {
    for a in 1..=6i64 {
        for b in 1..=9i64 {
            if num_integer::gcd(a, b) != 1 {
                continue;
            }
            let verts = rational_pf_vertices(a, b).unwrap();
            let caps = rational_pf_bounds(a, b).unwrap();
            for v in &verts {
                assert!(is_rational_parking_vector(&caps, v), "({a},{b}) {v}");
            }
            match rational_pf_constraints(a, b) {
                Ok(sys) => {
                    for v in &verts {
                        assert!(sys.contains(1, v), "({a},{b}) {v}");
                    }
                }
                Err(parkpoly::Error::Unsupported(_)) => assert!(b < a - 1),
                Err(e) => panic!("{e}"),
            }
        }
    }
}
