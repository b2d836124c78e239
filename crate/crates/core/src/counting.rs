//! Counting formulas for vertices, edges, facets, faces and lattice points,
//! each with a brute-force counterpart.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{affine_rank, binomial, exact_div, factorial, stirling2};
use crate::error::{Error, Result};
use crate::families::{
    distinct_permutations, is_rational_parking_vector, is_x_parking_function, ps_constraints,
    rational_pf_bounds, rational_pf_constraints, rational_pf_vertices, wipf_membership, wipf_to_ps,
    wipf_vertices, xpf_constraints, xpf_vertices, ConstraintSystem, Inequality, LatticePoint,
    PrefixSystem, SymmetricSystem, XpfParams,
};

const ENUMERATION_LIMIT: u64 = 20_000_000;

/// Face counts `f_0, ..., f_d` of a `d`-dimensional polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVector {
    entries: Vec<BigInt>,
}

impl FVector {
    pub fn new(entries: Vec<BigInt>) -> Result<Self> {
        match entries.last() {
            Some(top) if top.is_one() => Ok(Self { entries }),
            Some(_) => Err(Error::Invariant(format!(
                "top entry of an f-vector must be 1: {entries:?}"
            ))),
            None => Err(Error::Empty("f-vector")),
        }
    }

    pub fn from_counts(counts: &[usize]) -> Result<Self> {
        Self::new(counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn get(&self, k: usize) -> Option<&BigInt> {
        self.entries.get(k)
    }

    /// `sum (-1)^k f_k`, which is 1 for every nonempty polytope.
    pub fn euler_sum(&self) -> BigInt {
        self.entries
            .iter()
            .enumerate()
            .map(|(k, f)| if k % 2 == 0 { f.clone() } else { -f })
            .sum()
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `a (a + n b)^(n - 1)`.
pub fn count_x_parking_functions(p: &XpfParams) -> BigInt {
    let base = BigInt::from(p.a() + p.n() as i64 * p.b());
    BigInt::from(p.a()) * base.pow(p.n() as u32 - 1)
}

fn guard(what: &'static str, value: u64, limit: u64) -> Result<()> {
    if value > limit {
        return Err(Error::SizeGuard { what, value, limit });
    }
    Ok(())
}

fn box_size(side: i64, n: usize) -> u64 {
    (side.max(1) as u64).saturating_pow(n as u32)
}

/// Every x-parking function for `x = (a, b, ..., b)`, found by scanning the
/// box `[1, a + (n-1) b]^n`.
pub fn enumerate_x_parking_functions(p: &XpfParams) -> Result<Vec<LatticePoint>> {
    let side = p.max_coordinate();
    guard("enumeration box", box_size(side, p.n()), ENUMERATION_LIMIT)?;
    let mut out = Vec::new();
    let mut cur = vec![1; p.n()];
    loop {
        if is_x_parking_function(p, &cur) {
            out.push(LatticePoint(cur.clone()));
        }
        let Some(i) = cur.iter().rposition(|&c| c < side) else {
            break;
        };
        cur[i] += 1;
        cur[i + 1..].iter_mut().for_each(|c| *c = 1);
    }
    Ok(out)
}

/// `sum_{k=lo}^{n} n!/k!`.
fn partial_e_sum(n: u64, lo: u64) -> BigInt {
    (lo..=n)
        .map(|k| exact_quotient(&factorial(n), &factorial(k)))
        .sum()
}

fn exact_quotient(num: &BigInt, den: &BigInt) -> BigInt {
    exact_div(num, den, "factorial quotient").expect("k <= n")
}

/// `n! sum_{k=1}^n 1/k!` when `a = 1`, otherwise `n! sum_{k=0}^n 1/k!`.
pub fn vertex_count_formula(p: &XpfParams) -> BigInt {
    partial_e_sum(p.n() as u64, u64::from(p.a() == 1))
}

/// `2^n - 1` when `a = 1`, `2^n - 1 + n` otherwise. For `n = 1` the polytope
/// is a point (`a = 1`, no facets) or a segment (two facets).
pub fn facet_count_formula(p: &XpfParams) -> BigInt {
    let n = p.n();
    if n == 1 {
        return BigInt::from(if p.a() == 1 { 0 } else { 2 });
    }
    let base = (BigInt::one() << n) - 1;
    if p.a() == 1 {
        base
    } else {
        base + n
    }
}

/// `n V / 2`, where `V` is the vertex count; the graph is `n`-regular.
pub fn edge_count_formula(p: &XpfParams) -> Result<BigInt> {
    if p.n() == 1 && p.a() == 1 {
        return Ok(BigInt::zero());
    }
    let twice = vertex_count_formula(p) * p.n();
    if (&twice % 2u32).is_zero() {
        Ok(twice / 2u32)
    } else {
        Err(Error::Invariant(format!(
            "odd edge double-count {twice} for {p}"
        )))
    }
}

/// Face numbers from the Stirling-number formula.
pub fn f_vector_formula(p: &XpfParams) -> FVector {
    let n = p.n() as i64;
    if n == 1 && p.a() == 1 {
        return FVector::new(vec![BigInt::one()]).expect("top entry is 1");
    }
    let mut entries: Vec<BigInt> = (0..n)
        .map(|k| {
            (0..=n - k)
                .filter(|&m| m != 1 || p.a() > 1)
                .map(|m| {
                    binomial(n, m).expect("0 <= m <= n")
                        * factorial((n - k - m) as u64)
                        * stirling2((n - m + 1) as u32, n - k - m + 1)
                })
                .sum()
        })
        .collect();
    entries.push(BigInt::one());
    FVector::new(entries).expect("top entry is 1")
}

/// A face of a V-polytope, as sorted indices into its vertex list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub dim: usize,
}

fn bitset_of(members: impl Iterator<Item = usize>, words: usize) -> Vec<u64> {
    let mut bits = vec![0u64; words];
    for i in members {
        bits[i / 64] |= 1 << (i % 64);
    }
    bits
}

fn members_of(bits: &[u64]) -> Vec<usize> {
    let mut out = Vec::new();
    for (w, &word) in bits.iter().enumerate() {
        let mut rest = word;
        while rest != 0 {
            out.push(w * 64 + rest.trailing_zeros() as usize);
            rest &= rest - 1;
        }
    }
    out
}

/// All nonempty faces of `conv(vertices)` given a complete list of valid
/// inequalities. Faces are the intersections of tight vertex sets, closed
/// under intersection and deduplicated by vertex set.
pub fn enumerate_faces(vertices: &[LatticePoint], ineqs: &[Inequality]) -> Result<Vec<Face>> {
    if vertices.is_empty() {
        return Err(Error::Empty("vertex list"));
    }
    let words = vertices.len().div_ceil(64);
    let mut tight_sets = Vec::new();
    for ineq in ineqs {
        let mut tight = Vec::new();
        for (i, v) in vertices.iter().enumerate() {
            let slack = ineq.slack(v);
            if slack < 0 {
                return Err(Error::Invariant(format!(
                    "vertex {v} violates {:?} <= {}",
                    ineq.normal, ineq.rhs
                )));
            }
            if slack == 0 {
                tight.push(i);
            }
        }
        if !tight.is_empty() {
            tight_sets.push(bitset_of(tight.into_iter(), words));
        }
    }
    let full = bitset_of(0..vertices.len(), words);
    let mut seen: HashSet<Vec<u64>> = HashSet::from([full.clone()]);
    let mut queue = vec![full];
    while let Some(face) = queue.pop() {
        for tight in &tight_sets {
            let meet: Vec<u64> = face.iter().zip(tight).map(|(x, y)| x & y).collect();
            if meet.iter().any(|&w| w != 0) && seen.insert(meet.clone()) {
                queue.push(meet);
            }
        }
    }
    let mut faces = seen
        .into_iter()
        .map(|bits| {
            let members = members_of(&bits);
            let pts: Vec<&LatticePoint> = members.iter().map(|&i| &vertices[i]).collect();
            Ok(Face {
                dim: affine_rank(&pts)?,
                vertices: members,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    faces.sort_by(|x, y| (x.dim, &x.vertices).cmp(&(y.dim, &y.vertices)));
    Ok(faces)
}

/// Tallies faces by dimension.
pub fn f_vector_of(faces: &[Face]) -> Result<FVector> {
    let dim = faces
        .iter()
        .map(|f| f.dim)
        .max()
        .ok_or(Error::Empty("face list"))?;
    let mut counts = vec![0usize; dim + 1];
    for f in faces {
        counts[f.dim] += 1;
    }
    FVector::from_counts(&counts)
}

fn xpf_faces(p: &XpfParams) -> Result<(Vec<LatticePoint>, Vec<Face>)> {
    guard("faces oracle dimension", p.n() as u64, 4)?;
    let vertices: Vec<LatticePoint> = xpf_vertices(p).into_iter().collect();
    let faces = enumerate_faces(&vertices, &xpf_constraints(p).explicit())?;
    Ok((vertices, faces))
}

/// Face numbers of `X_n(a, b)` by direct face enumeration, for `n <= 4`.
pub fn brute_force_faces(p: &XpfParams) -> Result<FVector> {
    f_vector_of(&xpf_faces(p)?.1)
}

/// Among the facets of the classical parking function polytope `PF_n`,
/// counts those that are copies of `PF_{n-1}` (one coordinate pinned at `n`)
/// and those that are regular permutahedra. Returns `(pf, permutahedra)`.
pub fn permutahedron_facet_census(n: usize) -> Result<(usize, usize)> {
    if !(2..=4).contains(&n) {
        return Err(Error::InvalidParams(format!(
            "facet census is available for 2 <= n <= 4, got {n}"
        )));
    }
    let p = XpfParams::new(n, 1, 1)?;
    let (vertices, faces) = xpf_faces(&p)?;
    let smaller: Vec<LatticePoint> = xpf_vertices(&XpfParams::new(n - 1, 1, 1)?)
        .into_iter()
        .collect();
    let top = n as i64;
    let mut pf = 0;
    let mut perm = 0;
    for face in faces.iter().filter(|f| f.dim + 1 == n) {
        let mut pts: Vec<&LatticePoint> = face.vertices.iter().map(|&i| &vertices[i]).collect();
        pts.sort();
        if is_pinned_copy(&pts, top, &smaller) {
            pf += 1;
        }
        if is_permutahedron(&pts) {
            perm += 1;
        }
    }
    Ok((pf, perm))
}

fn is_pinned_copy(pts: &[&LatticePoint], value: i64, target: &[LatticePoint]) -> bool {
    let n = pts[0].len();
    (0..n).any(|c| {
        if pts.iter().any(|v| v[c] != value) {
            return false;
        }
        let mut dropped: Vec<LatticePoint> = pts
            .iter()
            .map(|v| {
                let mut w = v.to_vec();
                w.remove(c);
                LatticePoint(w)
            })
            .collect();
        dropped.sort();
        dropped == target
    })
}

/// Whether the points are exactly the permutations of one vector with
/// distinct entries.
fn is_permutahedron(pts: &[&LatticePoint]) -> bool {
    let mut gen = pts[0].to_vec();
    gen.sort_unstable();
    if gen.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    let all = distinct_permutations(&gen);
    all.len() == pts.len() && all.iter().zip(pts).all(|(x, y)| x.as_slice() == y.coords())
}

/// Number of integer points in the `t`-dilate of the polytope.
pub fn lattice_points_in_dilate(sys: &ConstraintSystem, t: i64) -> Result<u128> {
    if t < 0 {
        return Err(Error::InvalidParams(format!(
            "dilation factor must be >= 0, got {t}"
        )));
    }
    Ok(match sys {
        ConstraintSystem::Symmetric(s) => count_symmetric(s, t),
        ConstraintSystem::Prefix(p) => count_prefix(p, t),
    })
}

struct SymCounter {
    n: usize,
    lower: i64,
    caps: Vec<Option<i64>>,
    fact: Vec<u128>,
}

impl SymCounter {
    /// Counts weakly decreasing completions of `x_0 >= ... >= x_{pos-1}`,
    /// each weighted by its number of distinct rearrangements.
    fn walk(&self, pos: usize, prev: i64, prefix: i64, run: usize, denom: u128) -> u128 {
        if pos == self.n {
            return self.fact[self.n] / (denom * self.fact[run]);
        }
        let mut total = 0;
        for v in (self.lower..=prev).rev() {
            if !self.feasible(pos, prefix + v) {
                continue;
            }
            total += if v == prev {
                self.walk(pos + 1, v, prefix + v, run + 1, denom)
            } else {
                self.walk(pos + 1, v, prefix + v, 1, denom * self.fact[run])
            };
        }
        total
    }

    /// The prefix through `pos` plus the smallest possible tail must respect
    /// every later bound.
    fn feasible(&self, pos: usize, prefix: i64) -> bool {
        (pos..self.n).all(|j| match self.caps[j] {
            Some(cap) => prefix + (j - pos) as i64 * self.lower <= cap,
            None => true,
        })
    }
}

fn count_symmetric(s: &SymmetricSystem, t: i64) -> u128 {
    let n = s.n();
    let lower = t * s.lower();
    let caps = (1..=n).map(|k| s.rhs(k).map(|r| t * r)).collect();
    let mut fact = vec![1u128; n + 1];
    for i in 1..=n {
        fact[i] = fact[i - 1] * i as u128;
    }
    let counter = SymCounter {
        n,
        lower,
        caps,
        fact,
    };
    let top = s.coordinate_cap(t);
    if top < lower {
        return 0;
    }
    (lower..=top)
        .into_par_iter()
        .filter(|&v| counter.feasible(0, v))
        .map(|v| counter.walk(1, v, v, 1, 1))
        .sum()
}

fn count_prefix(p: &PrefixSystem, t: i64) -> u128 {
    let caps: Vec<usize> = p.bounds().iter().map(|&c| (t * c) as usize).collect();
    let mut ways = vec![1u128];
    for &cap in &caps {
        let mut next = vec![0u128; cap + 1];
        let mut running = 0;
        for (s, slot) in next.iter_mut().enumerate() {
            running += ways.get(s).copied().unwrap_or(0);
            *slot = running;
        }
        ways = next;
    }
    ways.iter().sum()
}

/// Lattice points of `t X^w_n(a, b)` by walking weakly increasing sequences
/// and testing membership.
pub fn wipf_dilate_count_brute(p: &XpfParams, t: i64) -> Result<u64> {
    guard(
        "weakly increasing enumeration box",
        box_size(t * p.max_coordinate(), p.n()),
        ENUMERATION_LIMIT,
    )?;
    fn walk(p: &XpfParams, t: i64, cur: &mut Vec<i64>) -> u64 {
        if cur.len() == p.n() {
            return u64::from(wipf_membership(p, t, cur));
        }
        let lo = cur.last().copied().unwrap_or(t);
        let hi = t * p.prefix_cap(cur.len() + 1);
        let mut total = 0;
        for v in lo..=hi {
            cur.push(v);
            total += walk(p, t, cur);
            cur.pop();
        }
        total
    }
    Ok(walk(p, t, &mut Vec::with_capacity(p.n())))
}

/// `(1/n!) (t(a-1) + 1) prod_{j=2}^n (t(a - 1 + n b) + j)`.
pub fn wipf_ehrhart_formula(p: &XpfParams, t: i64) -> Result<BigInt> {
    if t < 0 {
        return Err(Error::InvalidParams(format!(
            "dilation factor must be >= 0, got {t}"
        )));
    }
    let n = p.n() as i64;
    let step = t * (p.a() - 1 + n * p.b());
    let num = (2..=n).fold(BigInt::from(t * (p.a() - 1) + 1), |acc, j| acc * (step + j));
    exact_div(
        &num,
        &factorial(n as u64),
        "weakly increasing Ehrhart count",
    )
}

/// `C(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigInt {
    binomial(2 * n as i64, n as i64).expect("nonnegative") / (n + 1)
}

/// The face numbers `(facets, vertices, edges)` of `X^w_n(1, 1)`:
/// `2(n-1)`, `2^(n-1)` and `2^(n-2)(n-1)`.
pub fn wipf_face_counts(n: usize) -> Result<(BigInt, BigInt, BigInt)> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("need n >= 2, got {n}")));
    }
    let facets = BigInt::from(2 * (n - 1));
    let vertices = BigInt::one() << (n - 1);
    let edges = (BigInt::one() << (n - 2)) * (n - 1);
    Ok((facets, vertices, edges))
}

/// Face numbers of `X^w_n(1, 1)`, computed on its Pitman-Stanley image.
pub fn wipf_faces_brute(n: usize) -> Result<FVector> {
    guard("weakly increasing faces oracle dimension", n as u64, 8)?;
    let p = XpfParams::new(n, 1, 1)?;
    let image: Vec<LatticePoint> = wipf_vertices(&p).iter().map(|v| wipf_to_ps(v)).collect();
    let sys = ps_constraints(&crate::families::wipf_ps_vector(&p))?;
    f_vector_of(&enumerate_faces(&image, &sys.explicit())?)
}

fn column_multiplicities(caps: &[i64], b: i64) -> Vec<usize> {
    (1..=b)
        .map(|i| caps.iter().filter(|&&c| c == i).count())
        .collect()
}

/// Vertex count of the `(a, b)`-parking function polytope from the closed
/// expressions: `a! sum_{k=1}^a 1/k!` for `b > a`, and the multiplicity
/// formula for `b < a`.
pub fn rational_vertex_count(a: i64, b: i64) -> Result<BigInt> {
    let caps = rational_pf_bounds(a, b)?;
    let au = a as u64;
    if b > a || a == 1 {
        return Ok(partial_e_sum(au, 1));
    }
    let m = column_multiplicities(&caps, b);
    let fa = factorial(au);
    let over = |den: BigInt| exact_quotient(&fa, &den);
    let prod_fact = |ms: &[usize]| -> BigInt { ms.iter().map(|&x| factorial(x as u64)).product() };
    let mut total = over(prod_fact(&m));
    for k in 2..=b as usize {
        let tail = prod_fact(&m[k..]);
        let before: usize = m[..k - 1].iter().sum();
        for i in 1..=m[k - 1] {
            let den = &tail * factorial((before + i) as u64) * factorial((m[k - 1] - i) as u64);
            total += over(den);
        }
    }
    Ok(total)
}

/// `2^a - 1` for `b > a` and `2^a - 1 - C(a, 2)` for `b = a - 1`.
pub fn rational_facet_count_formula(a: i64, b: i64) -> Result<BigInt> {
    rational_pf_bounds(a, b)?;
    let base = (BigInt::one() << a as usize) - 1;
    if b > a {
        Ok(base)
    } else if b == a - 1 {
        Ok(base - binomial(a, 2)?)
    } else {
        Err(Error::Unsupported(format!(
            "no facet count for ({a}, {b}) with b < a - 1"
        )))
    }
}

/// Face numbers of the `(a, b)`-parking function polytope by face
/// enumeration over its inequality description.
pub fn rational_faces_brute(a: i64, b: i64) -> Result<FVector> {
    guard("rational faces oracle dimension", a.max(0) as u64, 5)?;
    let vertices: Vec<LatticePoint> = rational_pf_vertices(a, b)?.into_iter().collect();
    let sys = rational_pf_constraints(a, b)?;
    f_vector_of(&enumerate_faces(&vertices, &sys.explicit())?)
}

/// Number of `(a, b)`-Dyck paths, each weighted by its labelings: sums
/// `a! / prod c_j!` over the column heights `c_j` of paths staying weakly
/// above the line from `(0, 0)` to `(b, a)`.
pub fn count_rational_parking_functions(a: i64, b: i64) -> Result<BigInt> {
    Ok(rational_dyck_columns(a, b)?
        .iter()
        .map(|cols| {
            let den: BigInt = cols.iter().map(|&c| factorial(c)).product();
            exact_quotient(&factorial(a as u64), &den)
        })
        .sum())
}

/// Column heights of every `(a, b)`-Dyck path: `cols[x]` north steps at
/// abscissa `x`, with the running height after column `x` at least
/// `a (x + 1) / b`.
pub fn rational_dyck_columns(a: i64, b: i64) -> Result<Vec<Vec<u64>>> {
    rational_pf_bounds(a, b)?;
    fn walk(a: i64, b: i64, height: i64, cols: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let x = cols.len() as i64;
        if x == b {
            if height == a {
                out.push(cols.clone());
            }
            return;
        }
        for c in 0..=a - height {
            let h = height + c;
            if h * b >= a * (x + 1) {
                cols.push(c as u64);
                walk(a, b, h, cols, out);
                cols.pop();
            }
        }
    }
    let mut out = Vec::new();
    walk(a, b, 0, &mut Vec::new(), &mut out);
    Ok(out)
}

/// All preference vectors of `(a, b)`-parking functions, by scanning the box
/// `[1, b_a]^a`.
pub fn enumerate_rational_parking_vectors(a: i64, b: i64) -> Result<Vec<LatticePoint>> {
    let caps = rational_pf_bounds(a, b)?;
    let side = *caps.last().expect("a >= 1");
    guard(
        "enumeration box",
        box_size(side, caps.len()),
        ENUMERATION_LIMIT,
    )?;
    let mut out = Vec::new();
    let mut cur = vec![1; caps.len()];
    loop {
        if is_rational_parking_vector(&caps, &cur) {
            out.push(LatticePoint(cur.clone()));
        }
        let Some(i) = cur.iter().rposition(|&c| c < side) else {
            break;
        };
        cur[i] += 1;
        cur[i + 1..].iter_mut().for_each(|c| *c = 1);
    }
    Ok(out)
}

/// How many vertices are tight on exactly `k` of the inequalities, keyed by `k`.
pub fn tight_counts(vertices: &[LatticePoint], ineqs: &[Inequality]) -> BTreeMap<usize, usize> {
    let mut tally = BTreeMap::new();
    for v in vertices {
        let tight = ineqs.iter().filter(|q| q.is_tight(v)).count();
        *tally.entry(tight).or_insert(0) += 1;
    }
    tally
}
