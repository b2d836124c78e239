//! Volume formulas for parking function polytopes and their relatives, plus
//! two independent oracles: Ehrhart interpolation and a census of 0/1
//! matrices with positive permanent.
//!
//! Every routine states whether it natively produces a Euclidean volume or a
//! normalized one (`dim!` times Euclidean); [`VolumeResult`] carries both.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::arith::{
    binomial, expect_integer, factorial, int, lagrange_interpolate, odd_double_factorial,
    pow_signed, ratio, Polynomial, Rational,
};
use crate::counting::lattice_points_in_dilate;
use crate::error::{Error, Result};
use crate::families::{ConstraintSystem, XpfParams};

/// Which computation produced a volume.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    ClosedForm,
    GeneralizedRecursion,
    EhrhartOracle,
}

impl Formula {
    pub fn name(self) -> &'static str {
        match self {
            Self::ClosedForm => "closed",
            Self::GeneralizedRecursion => "recursive",
            Self::EhrhartOracle => "ehrhart",
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A volume in both normalizations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeResult {
    pub dim: usize,
    pub euclidean: Rational,
    pub normalized: BigInt,
    pub source: Formula,
}

impl VolumeResult {
    pub fn from_normalized(dim: usize, normalized: &Rational, source: Formula) -> Result<Self> {
        let normalized = expect_integer(normalized, "normalized volume")?;
        if normalized.is_negative() {
            return Err(Error::Invariant(format!(
                "negative normalized volume {normalized} from {source}"
            )));
        }
        let euclidean = Rational::new(normalized.clone(), factorial(dim as u64));
        Ok(Self {
            dim,
            euclidean,
            normalized,
            source,
        })
    }

    pub fn from_euclidean(dim: usize, euclidean: &Rational, source: Formula) -> Result<Self> {
        Self::from_normalized(dim, &(euclidean * int_big(factorial(dim as u64))), source)
    }
}

fn int_big(v: BigInt) -> Rational {
    Rational::from_integer(v)
}

fn binom(n: i64, k: i64) -> Rational {
    int_big(binomial(n, k).expect("nonnegative upper index"))
}

fn fact(n: i64) -> Rational {
    int_big(factorial(n as u64))
}

/// The closed-form sum with a caller-supplied odd double factorial, returned
/// without any integrality check.
pub fn closed_form_sum(
    p: &XpfParams,
    double_factorial: impl Fn(i64) -> Result<BigInt>,
) -> Result<Rational> {
    let n = p.n() as i64;
    let inner = int(2 * n - 1) + ratio(2 * p.a() - 2, p.b());
    let mut sum = Rational::zero();
    for i in 0..=n {
        sum += binom(n, i) * int_big(double_factorial(2 * i - 3)?) * pow_signed(&inner, n - i);
    }
    Ok(-fact(n) * pow_signed(&ratio(p.b(), 2), n) * sum)
}

/// `-n! (b/2)^n sum_i C(n, i) (2i-3)!! (2n - 1 + (2a-2)/b)^(n-i)`, normalized.
pub fn nvol_closed_form(p: &XpfParams) -> Result<VolumeResult> {
    let nvol = closed_form_sum(p, odd_double_factorial)?;
    VolumeResult::from_normalized(p.n(), &nvol, Formula::ClosedForm)
}

/// Euclidean volumes `V_0, ..., V_{n_max}` of `X_n(a, b)` from the recursion
/// `V_0 = 1`, `V_n = (1/n) sum_{k<n} C(n,k) (b(n-k))^(n-k-1) (nb + kb - b + 2a - 2)/2 V_k`.
pub fn generalized_volume_sequence(a: i64, b: i64, n_max: usize) -> Vec<Rational> {
    let mut v = vec![Rational::one()];
    for n in 1..=n_max as i64 {
        let mut sum = Rational::zero();
        for k in 0..n {
            let tree = pow_signed(&int(b * (n - k)), n - k - 1);
            let weight = ratio(n * b + k * b - b + 2 * a - 2, 2);
            sum += binom(n, k) * tree * weight * &v[k as usize];
        }
        v.push(sum / int(n));
    }
    v
}

pub fn vol_recursive_generalized(p: &XpfParams) -> Result<VolumeResult> {
    let v = generalized_volume_sequence(p.a(), p.b(), p.n());
    VolumeResult::from_euclidean(p.n(), &v[p.n()], Formula::GeneralizedRecursion)
}

/// Normalized volume of `PF_n` from the recursion with `nVol(PF_0) = 1`,
/// `nVol(PF_1) = 0`:
/// `nVol(PF_n) = (n-1)! sum_{k<n} C(n,k) (n-k)^(n-k-1) (n+k-1)/2 nVol(PF_k)/k!`.
pub fn nvol_aw_recursion(n: usize) -> BigInt {
    let mut nv: Vec<Rational> = vec![Rational::one(), Rational::zero()];
    for m in 2..=n as i64 {
        let mut sum = Rational::zero();
        for k in 0..m {
            sum += binom(m, k)
                * pow_signed(&int(m - k), m - k - 1)
                * ratio(m + k - 1, 2)
                * &nv[k as usize]
                / fact(k);
        }
        nv.push(fact(m - 1) * sum);
    }
    expect_integer(&nv[n], "normalized volume").expect("recursion yields integers")
}

/// Normalized volume of the partial permutahedron `P(n, p)`, `p >= n - 1`:
/// `(n-1)! sum_{k=1}^n k^(k-2) nVol(P(n-k, p-k))/(n-k)! (kp - C(k,2)) C(n,k)`
/// with `nVol(P(0, p)) = 1`.
pub fn nvol_bcc_recursion(n: usize, p: i64) -> Result<BigInt> {
    check_pp(n, p)?;
    let mut memo = HashMap::new();
    expect_integer(&bcc(n as i64, p, &mut memo), "normalized volume")
}

fn bcc(n: i64, p: i64, memo: &mut HashMap<(i64, i64), Rational>) -> Rational {
    if n == 0 {
        return Rational::one();
    }
    if let Some(v) = memo.get(&(n, p)) {
        return v.clone();
    }
    let mut sum = Rational::zero();
    for k in 1..=n {
        let sub = bcc(n - k, p - k, memo);
        sum += pow_signed(&int(k), k - 2) * sub / fact(n - k)
            * int(k * p - k * (k - 1) / 2)
            * binom(n, k);
    }
    let v = fact(n - 1) * sum;
    memo.insert((n, p), v.clone());
    v
}

fn check_pp(n: usize, p: i64) -> Result<()> {
    if p < n as i64 - 1 {
        return Err(Error::InvalidParams(format!(
            "P({n}, {p}) is outside the range p >= n - 1"
        )));
    }
    Ok(())
}

fn check_n_at_least_2(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("need n >= 2, got {n}")));
    }
    Ok(())
}

/// `n!/2^n sum_{i=0}^n (2i-1) (2i-1)!! C(n,i) (2n-1)^(n-i-1)`.
///
/// The `i = n` term has a negative exponent, so the sum is taken over the
/// rationals.
pub fn nvol_shephard_iv(n: usize) -> Result<BigInt> {
    check_n_at_least_2(n)?;
    let n = n as i64;
    let base = int(2 * n - 1);
    let mut sum = Rational::zero();
    for i in 0..=n {
        sum += int(2 * i - 1)
            * int_big(odd_double_factorial(2 * i - 1)?)
            * binom(n, i)
            * pow_signed(&base, n - i - 1);
    }
    expect_integer(
        &(fact(n) / pow_signed(&int(2), n) * sum),
        "normalized volume",
    )
}

/// `n! (n-1)/2^(n-1) sum_{i=0}^{n-2} (2i+1)!! C(n-2,i) (2n-1)^(n-i-2)`.
pub fn nvol_shephard_v(n: usize) -> Result<BigInt> {
    check_n_at_least_2(n)?;
    let n = n as i64;
    let base = int(2 * n - 1);
    let mut sum = Rational::zero();
    for i in 0..=n - 2 {
        sum += int_big(odd_double_factorial(2 * i + 1)?)
            * binom(n - 2, i)
            * pow_signed(&base, n - i - 2);
    }
    let nvol = fact(n) * int(n - 1) / pow_signed(&int(2), n - 1) * sum;
    expect_integer(&nvol, "normalized volume")
}

/// Number of `n x n` 0/1 matrices with exactly two ones per row whose
/// permanent is positive, i.e. whose row-column graph has a perfect matching.
pub fn count_permanent_positive(n: usize) -> Result<u64> {
    if !(1..=6).contains(&n) {
        return Err(Error::SizeGuard {
            what: "permanent census size",
            value: n as u64,
            limit: 6,
        });
    }
    let pairs: Vec<[usize; 2]> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| [i, j]))
        .collect();
    if pairs.is_empty() {
        return Ok(0);
    }
    let total = (pairs.len() as u64).pow(n as u32 - 1);
    Ok(pairs
        .par_iter()
        .map(|&first| {
            let mut rows = vec![first; n];
            let mut digits = vec![0usize; n - 1];
            let mut count = 0u64;
            for _ in 0..total {
                for (r, &d) in digits.iter().enumerate() {
                    rows[r + 1] = pairs[d];
                }
                if has_perfect_matching(&rows) {
                    count += 1;
                }
                for d in digits.iter_mut() {
                    *d += 1;
                    if *d < pairs.len() {
                        break;
                    }
                    *d = 0;
                }
            }
            count
        })
        .sum())
}

/// Augmenting-path matching of rows into columns.
fn has_perfect_matching(rows: &[[usize; 2]]) -> bool {
    let n = rows.len();
    let mut owner = vec![usize::MAX; n];
    for r in 0..n {
        let mut seen = vec![false; n];
        if !augment(r, rows, &mut owner, &mut seen) {
            return false;
        }
    }
    true
}

fn augment(r: usize, rows: &[[usize; 2]], owner: &mut [usize], seen: &mut [bool]) -> bool {
    for &c in &rows[r] {
        if seen[c] {
            continue;
        }
        seen[c] = true;
        if owner[c] == usize::MAX || augment(owner[c], rows, owner, seen) {
            owner[c] = r;
            return true;
        }
    }
    false
}

/// `F(n, i) = C(n,i) (2i)! / (2^i i! (2i-1)) (2n-1)^(n-i-1) ((2i-1)^2 + 2n - 1)`.
pub fn wz_term(n: i64, i: i64) -> Rational {
    if i < 0 || i > n {
        return Rational::zero();
    }
    binom(n, i) * fact(2 * i) / (pow_signed(&int(2), i) * fact(i) * int(2 * i - 1))
        * pow_signed(&int(2 * n - 1), n - i - 1)
        * int((2 * i - 1) * (2 * i - 1) + 2 * n - 1)
}

/// `sum_i F(n, i)`, which vanishes for every `n >= 2`.
pub fn wz_difference(n: usize) -> Result<Rational> {
    check_n_at_least_2(n)?;
    let n = n as i64;
    Ok((0..=n).map(|i| wz_term(n, i)).sum())
}

/// `R(n, i) = (1 - 2n) i / (2i^2 - 2i + n)`.
pub fn wz_certificate(n: i64, i: i64) -> Rational {
    ratio((1 - 2 * n) * i, 2 * i * i - 2 * i + n)
}

/// `(G(n, i+1) - G(n, i)) / F(n, i)` with `G = R F`; `None` where `F` vanishes.
pub fn wz_certificate_ratio(n: i64, i: i64) -> Option<Rational> {
    let f = wz_term(n, i);
    if f.is_zero() {
        return None;
    }
    let g = |j| wz_certificate(n, j) * wz_term(n, j);
    Some((g(i + 1) - g(i)) / f)
}

/// Whether the telescoping identity holds at every `i` with `F(n, i) != 0`.
pub fn wz_certificate_holds(n: usize) -> Result<bool> {
    check_n_at_least_2(n)?;
    let n = n as i64;
    Ok((0..=n + 1)
        .filter_map(|i| wz_certificate_ratio(n, i))
        .all(|r| r.is_one()))
}

/// `c_0, ..., c_N` with `c_0 = 1`, `c_1 = 0`, `c_k = 2(k-1)(c_{k-1} - c_{k-2})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CkSequence {
    values: Vec<BigInt>,
}

impl CkSequence {
    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn get(&self, k: usize) -> Option<&BigInt> {
        self.values.get(k)
    }
}

pub fn ck_sequence(n_max: usize) -> CkSequence {
    let mut values = vec![BigInt::one(), BigInt::zero()];
    for k in 2..=n_max {
        let next = BigInt::from(2 * (k - 1)) * (&values[k - 1] - &values[k - 2]);
        values.push(next);
    }
    values.truncate(n_max + 1);
    CkSequence { values }
}

/// `n! sum_k C(n,k) c_k / 2^k p^(n-k)`.
pub fn nvol_pp_ck(n: usize, p: i64) -> Result<BigInt> {
    check_pp(n, p)?;
    let c = ck_sequence(n);
    let ni = n as i64;
    let sum: Rational = (0..=ni)
        .map(|k| {
            binom(ni, k) * int_big(c.values[k as usize].clone()) / pow_signed(&int(2), k)
                * pow_signed(&int(p), ni - k)
        })
        .sum();
    expect_integer(&(fact(ni) * sum), "normalized volume")
}

/// `-n!/2^n sum_i C(n,i) (2i-3)!! (2p+1)^(n-i)`.
pub fn nvol_pp_explicit(n: usize, p: i64) -> Result<BigInt> {
    check_pp(n, p)?;
    let ni = n as i64;
    let mut sum = Rational::zero();
    for i in 0..=ni {
        sum += binom(ni, i)
            * int_big(odd_double_factorial(2 * i - 3)?)
            * pow_signed(&int(2 * p + 1), ni - i);
    }
    expect_integer(
        &(-fact(ni) / pow_signed(&int(2), ni) * sum),
        "normalized volume",
    )
}

/// Ehrhart polynomial of a `dim`-dimensional lattice polytope, interpolated
/// from the counts at `t = 0, ..., dim`.
pub fn ehrhart_polynomial(sys: &ConstraintSystem, dim: usize) -> Result<Polynomial> {
    let counts = (0..=dim as i64)
        .into_par_iter()
        .map(|t| lattice_points_in_dilate(sys, t).map(|c| (int(t), int_big(BigInt::from(c)))))
        .collect::<Result<Vec<_>>>()?;
    let poly = lagrange_interpolate(&counts)?;
    if poly.degree().is_some_and(|d| d > dim) {
        return Err(Error::Invariant(format!(
            "Ehrhart polynomial of degree {:?} exceeds dimension {dim}",
            poly.degree()
        )));
    }
    Ok(poly)
}

/// Volume from the leading Ehrhart coefficient, which is the Euclidean
/// volume relative to the lattice of the affine hull.
pub fn ehrhart_volume_oracle(sys: &ConstraintSystem, dim: usize) -> Result<VolumeResult> {
    let poly = ehrhart_polynomial(sys, dim)?;
    VolumeResult::from_euclidean(dim, &poly.coeff(dim), Formula::EhrhartOracle)
}

/// `n^(n-2)`, the normalized volume of `X^w_n(1, 1)` in the lattice of its
/// `(n-1)`-dimensional affine hull.
pub fn nvol_wipf(n: usize) -> Result<BigInt> {
    check_n_at_least_2(n)?;
    Ok(BigInt::from(n).pow(n as u32 - 2))
}
