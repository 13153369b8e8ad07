//! Exact polynomial arithmetic.
//!
//! [`MultiPoly`] is a polynomial with integer coefficients over the fixed
//! variable universe `x, y, alpha, beta, gamma, t`. [`LaurentPoly`] is a
//! polynomial in one variable `A` that admits negative exponents.
//!
//! Both print in a canonical form: terms in ascending co-lexicographic order
//! of the exponent vector (the last variable is the most significant), so
//! `x^2 + 2*x^2*y + x^3*y + 3*x^2*y^2 + y^3` and `A^-1 + 1 + A`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{CogError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Var {
    X,
    Y,
    Alpha,
    Beta,
    Gamma,
    T,
}

const NVARS: usize = 6;

impl Var {
    pub const ALL: [Var; NVARS] = [Var::X, Var::Y, Var::Alpha, Var::Beta, Var::Gamma, Var::T];

    fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Alpha => "alpha",
            Var::Beta => "beta",
            Var::Gamma => "gamma",
            Var::T => "t",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == name)
    }
}

type Exponents = [u32; NVARS];

fn colex(a: &Exponents, b: &Exponents) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

/// Multivariate polynomial with arbitrary-precision integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Exponents, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term([0; NVARS], c.into());
        p
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(&[(v, 1)], 1)
    }

    /// `coeff * prod(v^e)`; repeated variables multiply.
    pub fn monomial(powers: &[(Var, u32)], coeff: impl Into<BigInt>) -> Self {
        let mut exps = [0; NVARS];
        for &(v, e) in powers {
            exps[v.index()] += e;
        }
        let mut p = Self::zero();
        p.add_term(exps, coeff.into());
        p
    }

    /// `v^e`.
    pub fn power_of(v: Var, e: u32) -> Self {
        Self::monomial(&[(v, e)], 1)
    }

    fn add_term(&mut self, exps: Exponents, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of the monomial `prod(v^e)`.
    pub fn coefficient(&self, powers: &[(Var, u32)]) -> BigInt {
        let mut exps = [0; NVARS];
        for &(v, e) in powers {
            exps[v.index()] += e;
        }
        self.terms.get(&exps).cloned().unwrap_or_default()
    }

    /// Terms as `(exponent per variable, coefficient)` in canonical print order.
    pub fn terms(&self) -> Vec<(Vec<(Var, u32)>, BigInt)> {
        self.sorted_terms()
            .into_iter()
            .map(|(e, c)| {
                let powers = Var::ALL
                    .iter()
                    .filter(|v| e[v.index()] > 0)
                    .map(|&v| (v, e[v.index()]))
                    .collect();
                (powers, c.clone())
            })
            .collect()
    }

    fn sorted_terms(&self) -> Vec<(Exponents, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().map(|(e, c)| (*e, c)).collect();
        v.sort_by(|a, b| colex(&a.0, &b.0));
        v
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|e| e[v.index()]).max().unwrap_or(0)
    }

    pub fn variables(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|v| self.terms.keys().any(|e| e[v.index()] > 0))
            .collect()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        for (e, k) in &self.terms {
            out.add_term(*e, k * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Replaces every occurrence of `v` by `value`.
    pub fn substitute(&self, v: Var, value: &MultiPoly) -> Self {
        let mut out = Self::zero();
        let mut powers: Vec<MultiPoly> = vec![Self::one()];
        for (e, c) in &self.terms {
            let k = e[v.index()] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut rest = *e;
            rest[v.index()] = 0;
            let mut mono = Self::zero();
            mono.add_term(rest, c.clone());
            out += &mono * &powers[k];
        }
        out
    }

    /// Exact evaluation; every variable occurring in `self` must be assigned.
    pub fn evaluate(&self, assignment: &BTreeMap<Var, BigRational>) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for v in Var::ALL {
                let k = e[v.index()];
                if k == 0 {
                    continue;
                }
                let value = assignment.get(&v).ok_or_else(|| {
                    CogError::InvalidArgument(format!("no value for variable {}", v.name()))
                })?;
                term *= num_traits::pow(value.clone(), k as usize);
            }
            total += term;
        }
        Ok(total)
    }

    /// Machine-readable form: a list of `{exponents, coefficient}` records.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.sorted_terms()
                .into_iter()
                .map(|(e, c)| {
                    let exps: serde_json::Map<String, Value> = Var::ALL
                        .iter()
                        .filter(|v| e[v.index()] > 0)
                        .map(|v| (v.name().to_string(), json!(e[v.index()])))
                        .collect();
                    json!({ "exponents": exps, "coefficient": c.to_string() })
                })
                .collect(),
        )
    }
}

fn write_coefficient(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &BigInt,
    has_monomial: bool,
) -> fmt::Result {
    let negative = c.is_negative();
    match (first, negative) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    let magnitude = c.abs();
    if !has_monomial {
        write!(f, "{magnitude}")
    } else if !magnitude.is_one() {
        write!(f, "{magnitude}*")
    } else {
        Ok(())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let factors: Vec<String> = Var::ALL
                .iter()
                .filter(|v| e[v.index()] > 0)
                .map(|v| match e[v.index()] {
                    1 => v.name().to_string(),
                    k => format!("{}^{}", v.name(), k),
                })
                .collect();
            write_coefficient(f, i == 0, c, !factors.is_empty())?;
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

/// Laurent polynomial in `A` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exponent: i32, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exponent, coeff.into());
        p
    }

    /// `A`.
    pub fn a() -> Self {
        Self::monomial(1, 1)
    }

    /// `sigma = A + 1 + A^-1`.
    pub fn sigma() -> Self {
        Self::monomial(1, 1) + Self::one() + Self::monomial(-1, 1)
    }

    fn add_term(&mut self, exponent: i32, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponent).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponent: i32) -> BigInt {
        self.terms.get(&exponent).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn lowest_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero();
        for (e, k) in &self.terms {
            out.add_term(*e, k * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Multiplies by `A^shift`.
    pub fn shift(&self, shift: i32) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e + shift, c.clone()))
                .collect(),
        }
    }

    /// `(-A)^(-m) * self` where `m` is the lowest exponent present.
    pub fn normalised(&self) -> Self {
        match self.lowest_degree() {
            None => Self::zero(),
            Some(m) => {
                let shifted = self.shift(-m);
                if m.rem_euclid(2) == 1 {
                    -shifted
                } else {
                    shifted
                }
            }
        }
    }

    pub fn evaluate(&self, a: &BigRational) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let coeff = BigRational::from_integer(c.clone());
            let value = if *e >= 0 {
                num_traits::pow(a.clone(), *e as usize)
            } else {
                if a.is_zero() {
                    return Err(CogError::ZeroDivision);
                }
                num_traits::pow(a.recip(), e.unsigned_abs() as usize)
            };
            total += coeff * value;
        }
        Ok(total)
    }

    /// Evaluation at an integer value of `A`; exact, returned as a rational.
    pub fn evaluate_at(&self, a: i64) -> Result<BigRational> {
        self.evaluate(&BigRational::from_integer(BigInt::from(a)))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| json!({ "exponent": e, "coefficient": c.to_string() }))
                .collect(),
        )
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            write_coefficient(f, i == 0, c, *e != 0)?;
            match *e {
                0 => {}
                1 => write!(f, "A")?,
                k => write!(f, "A^{k}")?,
            }
        }
        Ok(())
    }
}

macro_rules! ring_ops {
    ($ty:ident, $key:ty) => {
        impl Add<&$ty> for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                let mut out = self.clone();
                for (e, c) in &rhs.terms {
                    out.add_term(*e, c.clone());
                }
                out
            }
        }

        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }

        impl Add<&$ty> for $ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                &self + rhs
            }
        }

        impl AddAssign<&$ty> for $ty {
            fn add_assign(&mut self, rhs: &$ty) {
                for (e, c) in &rhs.terms {
                    self.add_term(*e, c.clone());
                }
            }
        }

        impl AddAssign for $ty {
            fn add_assign(&mut self, rhs: $ty) {
                *self += &rhs;
            }
        }

        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty {
                    terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
                }
            }
        }

        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -self.clone()
            }
        }

        impl Sub<&$ty> for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                self + &(-rhs)
            }
        }

        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }

        impl Mul<&$ty> for &$ty {
            type Output = $ty;
            fn mul(self, rhs: &$ty) -> $ty {
                let mut out = $ty::zero();
                for (ea, ca) in &self.terms {
                    for (eb, cb) in &rhs.terms {
                        out.add_term(combine::<$key>(ea, eb), ca * cb);
                    }
                }
                out
            }
        }

        impl Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                &self * &rhs
            }
        }

        impl Mul<&$ty> for $ty {
            type Output = $ty;
            fn mul(self, rhs: &$ty) -> $ty {
                &self * rhs
            }
        }

        impl std::iter::Sum for $ty {
            fn sum<I: Iterator<Item = $ty>>(iter: I) -> $ty {
                let mut out = $ty::zero();
                for p in iter {
                    out += p;
                }
                out
            }
        }
    };
}

trait ExponentKey: Sized {
    fn combine(a: &Self, b: &Self) -> Self;
}

impl ExponentKey for Exponents {
    fn combine(a: &Self, b: &Self) -> Self {
        let mut out = *a;
        for (o, x) in out.iter_mut().zip(b) {
            *o += x;
        }
        out
    }
}

impl ExponentKey for i32 {
    fn combine(a: &Self, b: &Self) -> Self {
        a + b
    }
}

fn combine<K: ExponentKey>(a: &K, b: &K) -> K {
    K::combine(a, b)
}

ring_ops!(MultiPoly, Exponents);
ring_ops!(LaurentPoly, i32);
