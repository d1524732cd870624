//! Exact checks of the two binomial sums used to collapse the overlap double
//! sum:
//!
//! * the moment sum `sum_k (-1)^k C(l,k) k^j`, which is `0` for `j < l` and
//!   `(-1)^l l!` for `j = l`;
//! * the sum rule
//!   `sum_k (-1)^k C(n,k) C(a-m-k, n-m) C(b+m+k, m) = (-1)^m C(n,m)`,
//!   whose right-hand side does not depend on `a` or `b`.
//!
//! The sum rule is proven per `(n, m)` by expanding the left side as a
//! polynomial in `(a, b)` over the rationals and checking that it equals the
//! constant on the right.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

pub type Rational = BigRational;

pub const DEFAULT_MAX_N: usize = 12;

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Binomial coefficient with non-negative integer arguments.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, j| acc * BigInt::from(n - j) / BigInt::from(j + 1))
}

/// `x (x-1) ... (x-k+1) / k!` for a rational upper index.
pub fn rational_binomial(x: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    for j in 0..k {
        acc = acc * (x - int(j as i64)) / int(j as i64 + 1);
    }
    acc
}

/// `sum_{k=0}^{l} (-1)^k C(l,k) k^j`, exactly.
pub fn binomial_moment_sum(l: u32, j: u32) -> Rational {
    let sum = (0..=l).fold(BigInt::zero(), |acc, k| {
        let term = binomial(l as u64, k as u64) * BigInt::from(k).pow(j);
        if k % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    });
    Rational::from_integer(sum)
}

/// Polynomial in two variables `(a, b)` with rational coefficients, keyed by
/// `(degree in a, degree in b)`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BivariatePolynomial {
    coefficients: BTreeMap<(u32, u32), Rational>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(deg_a: u32, deg_b: u32, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term((deg_a, deg_b), c);
        p
    }

    /// The polynomial `a + shift`.
    pub fn var_a(shift: Rational) -> Self {
        Self::monomial(1, 0, Rational::one()) + Self::constant(shift)
    }

    /// The polynomial `b + shift`.
    pub fn var_b(shift: Rational) -> Self {
        Self::monomial(0, 1, Rational::one()) + Self::constant(shift)
    }

    fn add_term(&mut self, key: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coefficients.entry(key).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coefficients.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn coefficient(&self, deg_a: u32, deg_b: u32) -> Rational {
        self.coefficients
            .get(&(deg_a, deg_b))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.coefficients.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.coefficients.keys().map(|(i, j)| i + j).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.coefficients {
            out.add_term(*k, v * c);
        }
        out
    }

    pub fn eval(&self, a: &Rational, b: &Rational) -> Rational {
        self.coefficients.iter().fold(Rational::zero(), |acc, ((i, j), c)| {
            acc + c * num_traits::pow(a.clone(), *i as usize) * num_traits::pow(b.clone(), *j as usize)
        })
    }

    /// `C(p, k)` as a polynomial, for a polynomial upper index `p`.
    pub fn binomial_of(p: &Self, k: usize) -> Self {
        let mut acc = Self::constant(Rational::one());
        for j in 0..k {
            let factor = p.clone() - Self::constant(int(j as i64));
            acc = acc * factor;
        }
        acc.scale(&(Rational::one() / Rational::from_integer(factorial(k as u64))))
    }
}

fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

impl Add for BivariatePolynomial {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (k, v) in rhs.coefficients {
            self.add_term(k, v);
        }
        self
    }
}

impl Neg for BivariatePolynomial {
    type Output = Self;

    fn neg(self) -> Self {
        self.scale(&-Rational::one())
    }
}

impl Sub for BivariatePolynomial {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for BivariatePolynomial {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for ((i1, j1), c1) in &self.coefficients {
            for ((i2, j2), c2) in &rhs.coefficients {
                out.add_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }
}

fn sum_rule_rhs(n: usize, m: usize) -> Rational {
    let c = Rational::from_integer(binomial(n as u64, m as u64));
    if m % 2 == 0 {
        c
    } else {
        -c
    }
}

/// Both sides of the sum rule at rational `(a, b)`.
pub fn new_sum_rule_eval(n: usize, m: usize, a: &Rational, b: &Rational) -> (Rational, Rational) {
    assert!(m <= n, "m = {m} must not exceed n = {n}");
    let mut lhs = Rational::zero();
    for k in 0..=n {
        let term = Rational::from_integer(binomial(n as u64, k as u64))
            * rational_binomial(&(a - int((m + k) as i64)), n - m)
            * rational_binomial(&(b + int((m + k) as i64)), m);
        if k % 2 == 0 {
            lhs += term;
        } else {
            lhs -= term;
        }
    }
    (lhs, sum_rule_rhs(n, m))
}

/// The left side of the sum rule as a polynomial in `(a, b)`, along with the
/// largest total degree of any summand before cancellation.
pub fn new_sum_rule_lhs(n: usize, m: usize) -> (BivariatePolynomial, u32) {
    assert!(m <= n, "m = {m} must not exceed n = {n}");
    let mut lhs = BivariatePolynomial::zero();
    let mut max_degree = 0;
    for k in 0..=n {
        let shift = int((m + k) as i64);
        let term = BivariatePolynomial::binomial_of(&BivariatePolynomial::var_a(-shift.clone()), n - m)
            * BivariatePolynomial::binomial_of(&BivariatePolynomial::var_b(shift), m);
        max_degree = max_degree.max(term.total_degree().unwrap_or(0));
        let c = Rational::from_integer(binomial(n as u64, k as u64));
        lhs = lhs + term.scale(&if k % 2 == 0 { c } else { -c });
    }
    (lhs, max_degree)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SumRuleProof {
    pub n: usize,
    pub m: usize,
    pub holds: bool,
    /// First non-vanishing coefficient of `lhs - rhs`, as `(deg_a, deg_b, value)`.
    pub offending: Option<(u32, u32, String)>,
    pub max_term_degree: u32,
}

fn prove(n: usize, m: usize, rhs: Rational) -> SumRuleProof {
    let (lhs, max_term_degree) = new_sum_rule_lhs(n, m);
    let diff = lhs - BivariatePolynomial::constant(rhs);
    let offending = diff.terms().next().map(|((i, j), c)| (*i, *j, c.to_string()));
    SumRuleProof {
        n,
        m,
        holds: diff.is_zero(),
        offending,
        max_term_degree,
    }
}

/// Proves the sum rule for one `(n, m)`: `lhs - rhs` is the zero polynomial.
pub fn new_sum_rule_prove(n: usize, m: usize) -> SumRuleProof {
    prove(n, m, sum_rule_rhs(n, m))
}

/// Negative control: the same expansion against `-rhs`, which must fail.
pub fn new_sum_rule_prove_flipped(n: usize, m: usize) -> SumRuleProof {
    prove(n, m, -sum_rule_rhs(n, m))
}

/// All `(n, m)` with `n <= max_n`.
pub fn prove_all(max_n: usize) -> Vec<SumRuleProof> {
    (0..=max_n)
        .flat_map(|n| (0..=n).map(move |m| new_sum_rule_prove(n, m)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentCheck {
    pub l: u32,
    pub j: u32,
    pub value: String,
    pub holds: bool,
}

/// Checks `sum_k (-1)^k C(l,k) k^j` for `0 <= j <= l <= max_l`.
pub fn check_moment_sums(max_l: u32) -> Vec<MomentCheck> {
    let mut out = Vec::new();
    for l in 0..=max_l {
        for j in 0..=l {
            let value = binomial_moment_sum(l, j);
            let expected = if j < l {
                Rational::zero()
            } else {
                let f = Rational::from_integer(factorial(l as u64));
                if l % 2 == 0 {
                    f
                } else {
                    -f
                }
            };
            out.push(MomentCheck {
                l,
                j,
                holds: value == expected,
                value: value.to_string(),
            });
        }
    }
    out
}
