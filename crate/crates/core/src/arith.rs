//! Exact integer and rational arithmetic.
//!
//! Every quantity in the crate is exact: big integers for counts and
//! normalized volumes, [`Rational`] (always in lowest terms) for Euclidean
//! volumes, interpolation and series coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use num_rational::BigRational as Rational;

/// Rational from a pair of machine integers.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `base^exp` for any integer exponent. Zero to a negative power is a
/// caller bug and panics.
pub fn pow_signed(base: &Rational, exp: i64) -> Rational {
    let mag = num_traits::pow(base.clone(), exp.unsigned_abs() as usize);
    if exp >= 0 {
        mag
    } else {
        assert!(!mag.is_zero(), "zero raised to a negative power");
        mag.recip()
    }
}

/// Returns the integer value of `r`, or an invariant error naming `what`.
pub fn expect_integer(r: &Rational, what: &str) -> Result<BigInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::Invariant(format!("{what} = {r} is not an integer")))
    }
}

/// Exact quotient `num / den`; a nonzero remainder is an invariant breach.
pub fn exact_div(num: &BigInt, den: &BigInt, what: &str) -> Result<BigInt> {
    let (q, r) = num.div_rem(den);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::Invariant(format!(
            "{what}: {num} / {den} leaves remainder {r}"
        )))
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Binomial coefficient C(n, k) for `n >= 0`; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::NegativeBinomial { n, k });
    }
    if k < 0 || k > n {
        return Ok(BigInt::zero());
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    Ok(acc)
}

/// Odd double factorial `m!!`.
///
/// Positive odd `m` gives `m (m-2) ... 1`. Negative values follow
/// `m!! = (m+2)!! / (m+2)`, so `(-1)!! = 1` and `(-3)!! = -1`; nothing below
/// `-3` is accepted.
pub fn odd_double_factorial(m: i64) -> Result<BigInt> {
    if m.rem_euclid(2) == 0 || m < -3 {
        return Err(Error::DoubleFactorial(m));
    }
    match m {
        -3 => Ok(-BigInt::one()),
        -1 => Ok(BigInt::one()),
        _ => Ok((1..=m).step_by(2).fold(BigInt::one(), |acc, j| acc * j)),
    }
}

/// Stirling number of the second kind S(n, k).
pub fn stirling2(n: u32, k: i64) -> BigInt {
    if k < 0 || k > i64::from(n) {
        return BigInt::zero();
    }
    let k = k as usize;
    let n = n as usize;
    // row[j] holds S(i, j) while sweeping i = 0..=n.
    let mut row = vec![BigInt::zero(); n + 1];
    row[0] = BigInt::one();
    for _ in 1..=n {
        for j in (1..=n).rev() {
            let carried = &row[j] * j + &row[j - 1];
            row[j] = carried;
        }
        row[0] = BigInt::zero();
    }
    row[k].clone()
}

/// Dense polynomial with rational coefficients, `coeffs[i]` multiplying `x^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    fn mul_linear(&self, root: &Rational) -> Self {
        // (x - root) * self
        let mut out = vec![Rational::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] += c;
            out[i] -= c * root;
        }
        Self::new(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let coeff = if i == 0 || mag.is_one() {
                String::new()
            } else if mag.is_integer() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            match i {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{coeff}t")?,
                _ => write!(f, "{coeff}t^{i}")?,
            }
        }
        Ok(())
    }
}

/// The unique polynomial of degree `< points.len()` through every point.
pub fn lagrange_interpolate(points: &[(Rational, Rational)]) -> Result<Polynomial> {
    if points.is_empty() {
        return Err(Error::Empty("interpolation points"));
    }
    for (i, (xi, _)) in points.iter().enumerate() {
        if points[..i].iter().any(|(xj, _)| xj == xi) {
            return Err(Error::DuplicateNode(xi.to_string()));
        }
    }
    let mut acc = vec![Rational::zero(); points.len()];
    for (j, (xj, yj)) in points.iter().enumerate() {
        if yj.is_zero() {
            continue;
        }
        let mut basis = Polynomial::new(vec![Rational::one()]);
        let mut denom = Rational::one();
        for (m, (xm, _)) in points.iter().enumerate() {
            if m != j {
                basis = basis.mul_linear(xm);
                denom *= xj - xm;
            }
        }
        let scale = yj / denom;
        for (slot, c) in acc.iter_mut().zip(basis.coeffs()) {
            *slot += c * &scale;
        }
    }
    Ok(Polynomial::new(acc))
}

/// Rectangular matrix of rationals, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                got: bad.len(),
            });
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().cloned().collect(),
        })
    }

    pub fn from_integer_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| int(v)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    /// Rank by Gaussian elimination over the rationals.
    pub fn rank(&self) -> usize {
        let mut m = self.entries.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            let Some(pivot) = (rank..rows).find(|&r| !m[r * cols + col].is_zero()) else {
                continue;
            };
            for c in 0..cols {
                m.swap(pivot * cols + c, rank * cols + c);
            }
            let p = m[rank * cols + col].clone();
            for r in 0..rows {
                if r == rank || m[r * cols + col].is_zero() {
                    continue;
                }
                let factor = &m[r * cols + col] / &p;
                for c in col..cols {
                    let delta = &factor * &m[rank * cols + c];
                    m[r * cols + c] -= delta;
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }
}

/// Dimension of the affine span of a set of integer points.
pub fn affine_rank<P: AsRef<[i64]>>(points: &[P]) -> Result<usize> {
    let first = points
        .first()
        .ok_or(Error::Empty("affine_rank points"))?
        .as_ref();
    let dim = first.len();
    if let Some(bad) = points.iter().find(|p| p.as_ref().len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: bad.as_ref().len(),
        });
    }
    let diffs = points[1..].iter().map(|p| {
        p.as_ref()
            .iter()
            .zip(first)
            .map(|(&x, &y)| i128::from(x) - i128::from(y))
            .collect::<Vec<_>>()
    });
    match integer_rank(diffs.clone(), dim) {
        Some(r) => Ok(r),
        None => {
            // i128 overflow: redo over the rationals.
            let rows: Vec<Vec<Rational>> = diffs
                .map(|d| {
                    d.into_iter()
                        .map(|v| Rational::from_integer(v.into()))
                        .collect()
                })
                .collect();
            if rows.is_empty() {
                return Ok(0);
            }
            Ok(RationalMatrix::from_rows(&rows)?.rank())
        }
    }
}

/// Fraction-free incremental row reduction; `None` on overflow.
fn integer_rank(vectors: impl Iterator<Item = Vec<i128>>, dim: usize) -> Option<usize> {
    // basis rows in echelon form, each with its pivot column.
    let mut basis: Vec<(usize, Vec<i128>)> = Vec::with_capacity(dim);
    for mut v in vectors {
        for (pc, row) in &basis {
            if v[*pc] == 0 {
                continue;
            }
            let (p, q) = (row[*pc], v[*pc]);
            for c in 0..dim {
                v[c] = v[c].checked_mul(p)?.checked_sub(row[c].checked_mul(q)?)?;
            }
            normalize(&mut v);
        }
        if let Some(pc) = v.iter().position(|&x| x != 0) {
            basis.push((pc, v));
            if basis.len() == dim {
                break;
            }
        }
    }
    Some(basis.len())
}

fn normalize(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g > 1 {
        v.iter_mut().for_each(|x| *x /= g);
    }
}
