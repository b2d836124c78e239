//! The polytope families: x-parking function polytopes `X_n(a, b)`, partial
//! permutahedra `P(n, p)`, regular permutahedra, weakly increasing
//! x-parking function polytopes, Pitman-Stanley polytopes and rational
//! `(a, b)`-parking function polytopes.
//!
//! Each family comes with a vertex generator and, where one is known, an
//! H-description as a [`ConstraintSystem`]. Symmetric systems store one
//! right-hand side per cardinality `k` ("the sum of any `k` coordinates is at
//! most `RHS_k`") instead of one row per subset, so membership is a sort plus
//! a prefix-sum scan.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Deref;

use num_integer::Integer;

use crate::error::{Error, Result};

/// The parameters `(n, a, b)` of `X_n(a, b)`, the convex hull of the
/// x-parking functions for `x = (a, b, ..., b)` of length `n`.
///
/// When `n = 1` the value of `b` is carried along but never used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XpfParams {
    n: usize,
    a: i64,
    b: i64,
}

impl XpfParams {
    pub fn new(n: usize, a: i64, b: i64) -> Result<Self> {
        if n == 0 || a < 1 || b < 1 {
            return Err(Error::InvalidParams(format!(
                "X_n(a, b) needs n >= 1, a >= 1, b >= 1; got n = {n}, a = {a}, b = {b}"
            )));
        }
        Ok(Self { n, a, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// `x_1 + ... + x_i = a + (i - 1) b` for 1-based `i`.
    pub fn prefix_cap(&self, i: usize) -> i64 {
        self.a + (i as i64 - 1) * self.b
    }

    /// Largest coordinate value of any vertex, `a + (n - 1) b`.
    pub fn max_coordinate(&self) -> i64 {
        self.prefix_cap(self.n)
    }
}

impl fmt::Display for XpfParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X_{}({}, {})", self.n, self.a, self.b)
    }
}

/// An integer point of `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl Deref for LatticePoint {
    type Target = [i64];

    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl AsRef<[i64]> for LatticePoint {
    fn as_ref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A single explicit inequality `normal . x <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Inequality {
    pub normal: Vec<i64>,
    pub rhs: i64,
}

impl Inequality {
    pub fn slack(&self, x: &[i64]) -> i64 {
        self.rhs - dot(&self.normal, x)
    }

    pub fn is_tight(&self, x: &[i64]) -> bool {
        self.slack(x) == 0
    }
}

fn dot(u: &[i64], v: &[i64]) -> i64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Permutation-symmetric H-description: every coordinate is at least
/// `lower`, and for each stored `k` the sum of any `k` coordinates is at most
/// `bounds[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricSystem {
    n: usize,
    lower: i64,
    bounds: BTreeMap<usize, i64>,
    redundant: BTreeSet<usize>,
}

impl SymmetricSystem {
    pub fn new(
        n: usize,
        lower: i64,
        bounds: BTreeMap<usize, i64>,
        redundant: BTreeSet<usize>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("symmetric system needs n >= 1".into()));
        }
        if bounds.is_empty() || bounds.keys().any(|&k| k == 0 || k > n) {
            return Err(Error::InvalidParams(format!(
                "cardinalities must lie in 1..={n}, got {:?}",
                bounds.keys().collect::<Vec<_>>()
            )));
        }
        let rhs: Vec<i64> = bounds.values().copied().collect();
        if rhs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParams(format!(
                "right-hand sides must increase strictly with k: {rhs:?}"
            )));
        }
        if let Some(k) = redundant.iter().find(|k| !bounds.contains_key(k)) {
            return Err(Error::InvalidParams(format!(
                "redundant flag on missing cardinality {k}"
            )));
        }
        Ok(Self {
            n,
            lower,
            bounds,
            redundant,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lower(&self) -> i64 {
        self.lower
    }

    pub fn lower_bounds(&self) -> Vec<i64> {
        vec![self.lower; self.n]
    }

    /// Cardinality `k` to right-hand side, including redundant ones.
    pub fn bounds(&self) -> &BTreeMap<usize, i64> {
        &self.bounds
    }

    /// Cardinalities stored but known not to cut the polytope further.
    pub fn redundant(&self) -> &BTreeSet<usize> {
        &self.redundant
    }

    pub fn rhs(&self, k: usize) -> Option<i64> {
        self.bounds.get(&k).copied()
    }

    /// Same system with the redundant cardinalities removed.
    pub fn without_redundant(&self) -> Self {
        let mut out = self.clone();
        for k in &self.redundant {
            out.bounds.remove(k);
        }
        out.redundant.clear();
        out
    }

    /// Membership in the `t`-dilate.
    pub fn contains(&self, t: i64, x: &[i64]) -> bool {
        if x.len() != self.n || x.iter().any(|&v| v < t * self.lower) {
            return false;
        }
        let mut sorted = x.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let mut prefix = 0;
        for (i, v) in sorted.iter().enumerate() {
            prefix += v;
            if let Some(&rhs) = self.bounds.get(&(i + 1)) {
                if prefix > t * rhs {
                    return false;
                }
            }
        }
        true
    }

    /// Upper bound on any single coordinate of the `t`-dilate.
    pub fn coordinate_cap(&self, t: i64) -> i64 {
        self.bounds
            .iter()
            .map(|(&k, &rhs)| t * rhs - (k as i64 - 1) * t * self.lower)
            .min()
            .expect("nonempty bounds")
    }

    /// Expands the cardinality bounds into one inequality per subset, plus
    /// the lower bounds. Redundant cardinalities are included.
    pub fn explicit(&self) -> Vec<Inequality> {
        let n = self.n;
        let mut out: Vec<Inequality> = (0..n)
            .map(|i| {
                let mut normal = vec![0; n];
                normal[i] = -1;
                Inequality {
                    normal,
                    rhs: -self.lower,
                }
            })
            .collect();
        for mask in 1u64..(1u64 << n) {
            let k = mask.count_ones() as usize;
            if let Some(&rhs) = self.bounds.get(&k) {
                let normal = (0..n).map(|i| i64::from((mask >> i) & 1 == 1)).collect();
                out.push(Inequality { normal, rhs });
            }
        }
        out
    }
}

/// Prefix-sum system `y_i >= 0`, `y_1 + ... + y_i <= bounds[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixSystem {
    bounds: Vec<i64>,
}

impl PrefixSystem {
    pub fn new(bounds: Vec<i64>) -> Result<Self> {
        if bounds.is_empty() {
            return Err(Error::Empty("prefix bounds"));
        }
        if bounds[0] < 0 || bounds.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidParams(format!(
                "prefix bounds must be nonnegative and nondecreasing: {bounds:?}"
            )));
        }
        Ok(Self { bounds })
    }

    pub fn n(&self) -> usize {
        self.bounds.len()
    }

    pub fn bounds(&self) -> &[i64] {
        &self.bounds
    }

    pub fn contains(&self, t: i64, y: &[i64]) -> bool {
        if y.len() != self.bounds.len() {
            return false;
        }
        let mut prefix = 0;
        for (v, cap) in y.iter().zip(&self.bounds) {
            prefix += v;
            if *v < 0 || prefix > t * cap {
                return false;
            }
        }
        true
    }

    pub fn explicit(&self) -> Vec<Inequality> {
        let n = self.n();
        let mut out = Vec::with_capacity(2 * n);
        for i in 0..n {
            let mut normal = vec![0; n];
            normal[i] = -1;
            out.push(Inequality { normal, rhs: 0 });
        }
        for (i, &cap) in self.bounds.iter().enumerate() {
            let normal = (0..n).map(|j| i64::from(j <= i)).collect();
            out.push(Inequality { normal, rhs: cap });
        }
        out
    }
}

/// An H-description in one of the two shapes the families need.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstraintSystem {
    Symmetric(SymmetricSystem),
    Prefix(PrefixSystem),
}

impl ConstraintSystem {
    pub fn n(&self) -> usize {
        match self {
            Self::Symmetric(s) => s.n(),
            Self::Prefix(p) => p.n(),
        }
    }

    pub fn contains(&self, t: i64, x: &[i64]) -> bool {
        match self {
            Self::Symmetric(s) => s.contains(t, x),
            Self::Prefix(p) => p.contains(t, x),
        }
    }

    pub fn explicit(&self) -> Vec<Inequality> {
        match self {
            Self::Symmetric(s) => s.explicit(),
            Self::Prefix(p) => p.explicit(),
        }
    }
}

impl From<SymmetricSystem> for ConstraintSystem {
    fn from(s: SymmetricSystem) -> Self {
        Self::Symmetric(s)
    }
}

impl From<PrefixSystem> for ConstraintSystem {
    fn from(p: PrefixSystem) -> Self {
        Self::Prefix(p)
    }
}

/// Layer of a vertex of `X_n(a, b)`: `n` minus the number of coordinates
/// equal to 1. The all-ones vertex is on layer 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Layer(pub usize);

/// All distinct permutations of `values`, in lexicographic order.
pub fn distinct_permutations(values: &[i64]) -> Vec<Vec<i64>> {
    let mut cur = values.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

fn next_permutation(v: &mut [i64]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v
        .iter()
        .rposition(|&x| x > v[i])
        .expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

fn collect_orbits(bases: impl IntoIterator<Item = Vec<i64>>) -> BTreeSet<LatticePoint> {
    let mut seen = BTreeSet::new();
    let mut out = BTreeSet::new();
    for mut base in bases {
        base.sort_unstable();
        if seen.insert(base.clone()) {
            out.extend(distinct_permutations(&base).into_iter().map(LatticePoint));
        }
    }
    out
}

/// The layer vector `(1, ..., 1, a + kb, ..., a + (n-1)b)` with `k` ones.
pub fn xpf_layer_vector(p: &XpfParams, k: usize) -> Vec<i64> {
    (0..p.n)
        .map(|i| if i < k { 1 } else { p.a + i as i64 * p.b })
        .collect()
}

/// Vertices of `X_n(a, b)`: every permutation of every layer vector.
pub fn xpf_vertices(p: &XpfParams) -> BTreeSet<LatticePoint> {
    collect_orbits((0..=p.n).map(|k| xpf_layer_vector(p, k)))
}

/// H-description of `X_n(a, b)`.
///
/// `RHS_k = k a + b k (2n - k - 1) / 2`, the sum of the `k` largest layer
/// entries. All `k` in `1..=n` are stored; for `a = 1` and `n >= 2` the
/// `k = n - 1` bound is flagged redundant.
pub fn xpf_constraints(p: &XpfParams) -> SymmetricSystem {
    let n = p.n as i64;
    let bounds = (1..=p.n)
        .map(|k| {
            let k = k as i64;
            (k as usize, k * p.a + p.b * k * (2 * n - k - 1) / 2)
        })
        .collect();
    let mut redundant = BTreeSet::new();
    if p.a == 1 && p.n >= 2 {
        redundant.insert(p.n - 1);
    }
    SymmetricSystem::new(p.n, 1, bounds, redundant).expect("well-formed by construction")
}

/// Whether `pt` lies in `t X_n(a, b)`.
pub fn xpf_membership(p: &XpfParams, t: i64, pt: &[i64]) -> Result<bool> {
    if t <= 0 {
        return Err(Error::InvalidParams(format!(
            "dilation factor must be positive, got {t}"
        )));
    }
    if pt.len() != p.n {
        return Err(Error::DimensionMismatch {
            expected: p.n,
            got: pt.len(),
        });
    }
    Ok(xpf_constraints(p).contains(t, pt))
}

/// Whether `pt` is an x-parking function for `x = (a, b, ..., b)`.
pub fn is_x_parking_function(p: &XpfParams, pt: &[i64]) -> bool {
    if pt.len() != p.n || pt.iter().any(|&v| v < 1) {
        return false;
    }
    let mut sorted = pt.to_vec();
    sorted.sort_unstable();
    sorted
        .iter()
        .enumerate()
        .all(|(i, &v)| v <= p.prefix_cap(i + 1))
}

/// Layer of a vertex of `X_n(a, b)`. For `a = 1` the `k = 0` and `k = 1`
/// layer vectors coincide and the vertex is assigned to layer `n - 1`.
pub fn layer_of(p: &XpfParams, v: &[i64]) -> Result<Layer> {
    if v.len() != p.n {
        return Err(Error::DimensionMismatch {
            expected: p.n,
            got: v.len(),
        });
    }
    let mut sorted = v.to_vec();
    sorted.sort_unstable();
    let ones = sorted.iter().take_while(|&&x| x == 1).count();
    let is_vertex = sorted
        .iter()
        .enumerate()
        .skip(ones)
        .all(|(i, &x)| x == p.a + i as i64 * p.b);
    if !is_vertex {
        return Err(Error::NotAVertex(v.to_vec()));
    }
    Ok(Layer(p.n - ones))
}

/// The affine map fixing the all-ones point and scaling by `d` around it,
/// `x -> d (x - 1) + 1`.
pub fn one_fixed_dilate(d: i64, pt: &[i64]) -> LatticePoint {
    LatticePoint(pt.iter().map(|&x| d * (x - 1) + 1).collect())
}

/// Vertices of the partial permutahedron `P(n, p)`.
pub fn pp_vertices(n: usize, p: i64) -> Result<BTreeSet<LatticePoint>> {
    if n == 0 || p < 0 {
        return Err(Error::InvalidParams(format!(
            "P(n, p) needs n >= 1 and p >= 0, got n = {n}, p = {p}"
        )));
    }
    let kmax = n.min(p as usize);
    Ok(collect_orbits((0..=kmax).map(|k| {
        let mut v = vec![0; n - k];
        v.extend((0..k as i64).map(|j| p - j));
        v
    })))
}

/// The member of the x-parking family integrally equivalent to `P(n, p)`
/// (via the translation by the all-ones vector), defined for `p >= n - 1`.
pub fn xpf_pp_equivalence(n: usize, p: i64) -> Result<XpfParams> {
    if n == 0 || p < n as i64 - 1 {
        return Err(Error::InvalidParams(format!(
            "P({n}, {p}) is matched to an x-parking polytope only when p >= n - 1"
        )));
    }
    if n == 1 {
        XpfParams::new(1, p + 1, 1)
    } else {
        XpfParams::new(n, p - n as i64 + 2, 1)
    }
}

/// Checks the equivalence concretely: `pp_vertices(n, p) + 1` equals the
/// vertex set of the matched `X_n(a, 1)`.
pub fn pp_translation_matches(n: usize, p: i64) -> Result<bool> {
    let params = xpf_pp_equivalence(n, p)?;
    let shifted: BTreeSet<LatticePoint> = pp_vertices(n, p)?
        .into_iter()
        .map(|v| LatticePoint(v.iter().map(|x| x + 1).collect()))
        .collect();
    Ok(shifted == xpf_vertices(&params))
}

/// Vertices of the permutahedron generated by `r`.
pub fn permutahedron_vertices(r: &[i64]) -> Result<BTreeSet<LatticePoint>> {
    if r.is_empty() {
        return Err(Error::Empty("permutahedron generator"));
    }
    Ok(distinct_permutations(r)
        .into_iter()
        .map(LatticePoint)
        .collect())
}

/// Vertices of the weakly increasing x-parking polytope `X^w_n(a, b)`.
///
/// Built from binary choices: `v_1` is `1` or `a`, and each later `v_{i+1}`
/// either repeats `v_i` or jumps to the cap `a + i b`.
pub fn wipf_vertices(p: &XpfParams) -> BTreeSet<LatticePoint> {
    let mut partial: BTreeSet<Vec<i64>> = [vec![1], vec![p.a]].into_iter().collect();
    for i in 1..p.n {
        let cap = p.prefix_cap(i + 1);
        partial = partial
            .into_iter()
            .flat_map(|v| {
                let last = *v.last().expect("nonempty");
                [last, cap].into_iter().map(move |next| {
                    let mut w = v.clone();
                    w.push(next);
                    w
                })
            })
            .collect();
    }
    partial.into_iter().map(LatticePoint).collect()
}

/// Whether `pt` lies in `t X^w_n(a, b)`:
/// `t <= x_1 <= x_2 <= ... <= x_n` and `x_i <= t (a + (i - 1) b)`.
pub fn wipf_membership(p: &XpfParams, t: i64, pt: &[i64]) -> bool {
    pt.len() == p.n
        && pt.first().is_some_and(|&x| x >= t)
        && pt.windows(2).all(|w| w[0] <= w[1])
        && pt
            .iter()
            .enumerate()
            .all(|(i, &x)| x <= t * p.prefix_cap(i + 1))
}

/// Pitman-Stanley system for `x`: `y >= 0`, prefix sums of `y` bounded by
/// prefix sums of `x`.
pub fn ps_constraints(x: &[i64]) -> Result<PrefixSystem> {
    if x.is_empty() {
        return Err(Error::Empty("Pitman-Stanley vector"));
    }
    if x.iter().any(|&v| v < 0) {
        return Err(Error::InvalidParams(format!(
            "Pitman-Stanley vector must be nonnegative: {x:?}"
        )));
    }
    PrefixSystem::new(
        x.iter()
            .scan(0, |acc, &v| {
                *acc += v;
                Some(*acc)
            })
            .collect(),
    )
}

/// The Pitman-Stanley vector `(a - 1, b, ..., b)` matched to `X^w_n(a, b)`.
pub fn wipf_ps_vector(p: &XpfParams) -> Vec<i64> {
    let mut x = vec![p.b; p.n];
    x[0] = p.a - 1;
    x
}

/// `T(x) = (x_1 - 1, x_2 - x_1, ..., x_n - x_{n-1})`.
pub fn wipf_to_ps(pt: &[i64]) -> LatticePoint {
    let mut prev = 1;
    LatticePoint(
        pt.iter()
            .map(|&x| {
                let d = x - prev;
                prev = x;
                d
            })
            .collect(),
    )
}

/// `S(y) = (1 + y_1, 1 + y_1 + y_2, ..., 1 + y_1 + ... + y_n)`.
pub fn ps_to_wipf(pt: &[i64]) -> LatticePoint {
    LatticePoint(
        pt.iter()
            .scan(1, |acc, &y| {
                *acc += y;
                Some(*acc)
            })
            .collect(),
    )
}

fn check_coprime(a: i64, b: i64) -> Result<()> {
    if a < 1 || b < 1 {
        return Err(Error::InvalidParams(format!(
            "(a, b)-parking needs a, b >= 1, got ({a}, {b})"
        )));
    }
    if a.gcd(&b) != 1 {
        return Err(Error::NotCoprime { a, b });
    }
    Ok(())
}

/// `b_1 = 1` and `b_i = ceil(b (i - 1) / a)` for `1 < i <= a`.
pub fn rational_pf_bounds(a: i64, b: i64) -> Result<Vec<i64>> {
    check_coprime(a, b)?;
    Ok((1..=a)
        .map(|i| if i == 1 { 1 } else { (b * (i - 1) + a - 1) / a })
        .collect())
}

/// Vertices of the `(a, b)`-parking function polytope in `R^a`.
pub fn rational_pf_vertices(a: i64, b: i64) -> Result<BTreeSet<LatticePoint>> {
    let caps = rational_pf_bounds(a, b)?;
    let a = a as usize;
    Ok(collect_orbits((1..=a).map(|k| {
        let mut v = vec![1; k];
        v.extend_from_slice(&caps[k..]);
        v
    })))
}

/// Whether `pt` is the preference vector of an `(a, b)`-parking function:
/// positive entries whose increasing rearrangement stays below the caps
/// `b_i`.
pub fn is_rational_parking_vector(caps: &[i64], pt: &[i64]) -> bool {
    if pt.len() != caps.len() || pt.iter().any(|&v| v < 1) {
        return false;
    }
    let mut sorted = pt.to_vec();
    sorted.sort_unstable();
    sorted.iter().zip(caps).all(|(v, c)| v <= c)
}

/// H-description of the `(a, b)`-parking function polytope, available for
/// `b > a` and `b = a - 1`. The single-coordinate box bound `x_i <= b_a` is
/// always stored.
pub fn rational_pf_constraints(a: i64, b: i64) -> Result<SymmetricSystem> {
    let caps = rational_pf_bounds(a, b)?;
    let au = a as usize;
    let top: Vec<usize> = if a == 1 {
        vec![1]
    } else if b > a {
        (1..=au.saturating_sub(2)).chain([au]).collect()
    } else if b == a - 1 {
        (1..=au.saturating_sub(3)).chain([au]).collect()
    } else {
        return Err(Error::Unsupported(format!(
            "no inequality description is available for ({a}, {b})-parking polytopes with b < a - 1"
        )));
    };
    let mut bounds = BTreeMap::new();
    for k in top.into_iter().chain([1]) {
        bounds.insert(k, caps[au - k..].iter().sum());
    }
    SymmetricSystem::new(au, 1, bounds, BTreeSet::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i64]]) -> BTreeSet<LatticePoint> {
        v.iter().map(|p| LatticePoint(p.to_vec())).collect()
    }

    fn xp(n: usize, a: i64, b: i64) -> XpfParams {
        XpfParams::new(n, a, b).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(XpfParams::new(0, 1, 1).is_err());
        assert!(XpfParams::new(2, 0, 1).is_err());
        assert!(XpfParams::new(2, 1, 0).is_err());
    }

    #[test]
    fn pf3_vertices() {
        let v = xpf_vertices(&xp(3, 1, 1));
        assert_eq!(v.len(), 10);
        for p in [[3, 2, 1], [1, 1, 1], [1, 2, 3], [1, 1, 3], [3, 1, 1]] {
            assert!(v.contains(&LatticePoint(p.to_vec())), "{p:?}");
        }
    }

    #[test]
    fn segment_and_pentagon_vertices() {
        assert_eq!(xpf_vertices(&xp(1, 4, 7)), pts(&[&[1], &[4]]));
        assert_eq!(
            xpf_vertices(&xp(2, 2, 1)),
            pts(&[&[1, 1], &[1, 3], &[3, 1], &[2, 3], &[3, 2]])
        );
    }

    #[test]
    fn xpf_constraint_rhs() {
        let s = xpf_constraints(&xp(3, 1, 1));
        assert_eq!(
            s.bounds().values().copied().collect::<Vec<_>>(),
            vec![3, 5, 6]
        );
        assert_eq!(s.redundant(), &BTreeSet::from([2]));
        let s = xpf_constraints(&xp(3, 2, 1));
        assert_eq!(
            s.bounds().values().copied().collect::<Vec<_>>(),
            vec![4, 7, 9]
        );
        assert!(s.redundant().is_empty());
        let s = xpf_constraints(&xp(1, 5, 3));
        assert_eq!(s.bounds(), &BTreeMap::from([(1, 5)]));
        assert_eq!(s.lower(), 1);
    }

    #[test]
    fn membership_examples() {
        let p = xp(3, 1, 1);
        assert!(xpf_membership(&p, 1, &[2, 2, 2]).unwrap());
        assert!(!xpf_membership(&p, 1, &[3, 3, 1]).unwrap());
        assert!(xpf_membership(&xp(2, 1, 1), 2, &[2, 2]).unwrap());
        assert!(xpf_membership(&p, 0, &[1, 1, 1]).is_err());
        assert!(xpf_membership(&p, 1, &[1, 1]).is_err());
    }

    #[test]
    fn x_parking_predicate() {
        assert!(is_x_parking_function(&xp(3, 1, 1), &[3, 1, 2]));
        assert!(!is_x_parking_function(&xp(3, 1, 1), &[2, 2, 2]));
        assert!(is_x_parking_function(&xp(2, 2, 3), &[2, 5]));
        assert!(!is_x_parking_function(&xp(2, 2, 3), &[3, 3]));
        assert!(!is_x_parking_function(&xp(2, 2, 3), &[0, 1]));
    }

    #[test]
    fn layers() {
        assert_eq!(layer_of(&xp(3, 1, 1), &[1, 1, 1]).unwrap(), Layer(0));
        assert_eq!(layer_of(&xp(3, 2, 1), &[2, 3, 4]).unwrap(), Layer(3));
        assert_eq!(layer_of(&xp(3, 1, 1), &[1, 2, 3]).unwrap(), Layer(2));
        assert_eq!(layer_of(&xp(3, 2, 1), &[4, 1, 3]).unwrap(), Layer(2));
        assert!(matches!(
            layer_of(&xp(3, 1, 1), &[2, 2, 2]),
            Err(Error::NotAVertex(_))
        ));
    }

    #[test]
    fn partial_permutahedra() {
        let shifted: BTreeSet<LatticePoint> = pp_vertices(3, 2)
            .unwrap()
            .into_iter()
            .map(|v| LatticePoint(v.iter().map(|x| x + 1).collect()))
            .collect();
        assert_eq!(shifted, xpf_vertices(&xp(3, 1, 1)));
        assert_eq!(pp_vertices(1, 5).unwrap(), pts(&[&[0], &[5]]));
        assert_eq!(
            pp_vertices(2, 1).unwrap(),
            pts(&[&[0, 0], &[1, 0], &[0, 1]])
        );
        assert!(pp_vertices(0, 1).is_err());
    }

    #[test]
    fn pp_equivalence_parameters() {
        assert_eq!(xpf_pp_equivalence(3, 2).unwrap(), xp(3, 1, 1));
        assert_eq!(xpf_pp_equivalence(1, 5).unwrap().a(), 6);
        assert_eq!(xpf_pp_equivalence(4, 6).unwrap(), xp(4, 4, 1));
        assert!(pp_translation_matches(4, 6).unwrap());
        assert!(xpf_pp_equivalence(4, 2).is_err());
    }

    #[test]
    fn permutahedra() {
        assert_eq!(permutahedron_vertices(&[1, 2, 3]).unwrap().len(), 6);
        assert_eq!(permutahedron_vertices(&[1, 1]).unwrap().len(), 1);
        assert_eq!(permutahedron_vertices(&[1, 2, 2]).unwrap().len(), 3);
        assert!(permutahedron_vertices(&[]).is_err());
    }

    #[test]
    fn weakly_increasing_vertices() {
        assert_eq!(
            wipf_vertices(&xp(3, 1, 1)),
            pts(&[&[1, 1, 1], &[1, 1, 3], &[1, 2, 2], &[1, 2, 3]])
        );
        let v = wipf_vertices(&xp(3, 2, 1));
        assert_eq!(v.len(), 8);
        assert!(v.contains(&LatticePoint(vec![1, 1, 1])));
        assert!(v.contains(&LatticePoint(vec![2, 3, 4])));
        assert_eq!(wipf_vertices(&xp(2, 1, 2)), pts(&[&[1, 1], &[1, 3]]));
    }

    #[test]
    fn pitman_stanley_bounds() {
        assert_eq!(ps_constraints(&[1, 1, 1]).unwrap().bounds(), &[1, 2, 3]);
        assert_eq!(ps_constraints(&[0, 1, 1]).unwrap().bounds(), &[0, 1, 2]);
        assert_eq!(ps_constraints(&[2, 3]).unwrap().bounds(), &[2, 5]);
        assert!(ps_constraints(&[]).is_err());
        assert!(ps_constraints(&[1, -1]).is_err());
    }

    #[test]
    fn ps_maps() {
        assert_eq!(wipf_to_ps(&[1, 2, 2]), LatticePoint(vec![0, 1, 0]));
        assert_eq!(ps_to_wipf(&[0, 1, 0]), LatticePoint(vec![1, 2, 2]));
    }

    #[test]
    fn ps_map_on_catalan_points() {
        // The five weakly increasing parking functions of length 3.
        let wipf = pts(&[&[1, 1, 1], &[1, 1, 2], &[1, 1, 3], &[1, 2, 2], &[1, 2, 3]]);
        let ps = ps_constraints(&[0, 1, 1]).unwrap();
        let mut ps_side = BTreeSet::new();
        for y0 in 0..=0 {
            for y1 in 0..=1 {
                for y2 in 0..=2 {
                    if ps.contains(1, &[y0, y1, y2]) {
                        ps_side.insert(LatticePoint(vec![y0, y1, y2]));
                    }
                }
            }
        }
        let mapped: BTreeSet<LatticePoint> = wipf.iter().map(|x| wipf_to_ps(x)).collect();
        assert_eq!(mapped, ps_side);
    }

    #[test]
    fn rational_vertices() {
        assert_eq!(rational_pf_bounds(3, 4).unwrap(), vec![1, 2, 3]);
        assert_eq!(
            rational_pf_vertices(3, 4).unwrap(),
            xpf_vertices(&xp(3, 1, 1))
        );
        assert_eq!(
            rational_pf_vertices(2, 3).unwrap(),
            pts(&[&[1, 1], &[1, 2], &[2, 1]])
        );
        assert_eq!(rational_pf_vertices(1, 7).unwrap(), pts(&[&[1]]));
        assert!(matches!(
            rational_pf_vertices(2, 4),
            Err(Error::NotCoprime { a: 2, b: 4 })
        ));
    }

    #[test]
    fn rational_constraints() {
        let s = rational_pf_constraints(3, 5).unwrap();
        assert_eq!(s.bounds(), &BTreeMap::from([(1, 4), (3, 7)]));
        let s = rational_pf_constraints(4, 3).unwrap();
        // caps (1, 1, 2, 3)
        assert_eq!(s.bounds(), &BTreeMap::from([(1, 3), (4, 7)]));
        let s = rational_pf_constraints(2, 3).unwrap();
        assert_eq!(s.bounds(), &BTreeMap::from([(1, 2), (2, 3)]));
        assert!(matches!(
            rational_pf_constraints(5, 2),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn dilate_map() {
        assert_eq!(
            one_fixed_dilate(3, &[1, 2, 4]),
            LatticePoint(vec![1, 4, 10])
        );
    }

    #[test]
    fn explicit_expansion_counts() {
        let s = xpf_constraints(&xp(3, 2, 1));
        // 3 lower bounds + 3 + 3 + 1 upper bounds.
        assert_eq!(s.explicit().len(), 10);
        let pf = ps_constraints(&[1, 1]).unwrap();
        assert_eq!(pf.explicit().len(), 4);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn params() -> impl Strategy<Value = XpfParams> {
            (1usize..6, 1i64..5, 1i64..4).prop_map(|(n, a, b)| xp(n, a, b))
        }

        fn weakly_increasing() -> impl Strategy<Value = Vec<i64>> {
            proptest::collection::vec(0i64..4, 1..7).prop_map(|steps| {
                steps
                    .iter()
                    .scan(1, |acc, s| {
                        *acc += s;
                        Some(*acc - s)
                    })
                    .collect()
            })
        }

        proptest! {
            #[test]
            fn ps_maps_are_inverse(x in weakly_increasing()) {
                let y = wipf_to_ps(&x);
                prop_assert!(y.iter().all(|&v| v >= 0));
                prop_assert_eq!(ps_to_wipf(&y).0, x);
            }

            #[test]
            fn parking_functions_lie_in_polytope(p in params(), raw in proptest::collection::vec(0i64..64, 6)) {
                let side = p.max_coordinate();
                let pt: Vec<i64> = raw[..p.n()].iter().map(|r| 1 + r % side).collect();
                if is_x_parking_function(&p, &pt) {
                    prop_assert!(xpf_membership(&p, 1, &pt).unwrap());
                }
            }

            #[test]
            fn layer_matches_construction(p in params(), k in 0usize..6, seed in any::<u64>()) {
                let k = k.min(p.n());
                let mut v = xpf_layer_vector(&p, k);
                let len = v.len();
                v.rotate_left(seed as usize % len);
                let layer = layer_of(&p, &v).unwrap();
                let expected = if p.a() == 1 && k == 0 { p.n() - 1 } else { p.n() - k };
                prop_assert_eq!(layer, Layer(expected));
            }

            #[test]
            fn membership_scales_with_dilation(p in params(), t in 1i64..4) {
                for v in xpf_vertices(&p) {
                    let scaled: Vec<i64> = v.iter().map(|x| t * x).collect();
                    prop_assert!(xpf_membership(&p, t, &scaled).unwrap());
                }
            }
        }
    }
}
