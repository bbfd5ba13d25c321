//! Sparse multivariate polynomials over the rationals.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose `Ord` is the
//! graded lexicographic order with `x1 < x2 < ... < xn`. Iterating a
//! polynomial therefore visits terms from smallest to largest; the last
//! entry is the leading term.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{same_dim, Error, Result};

/// Exponent vector of a monomial `x1^e1 * ... * xn^en`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// The monomial `x_var^power`.
    pub fn var_power(nvars: usize, var: usize, power: u32) -> Self {
        let mut e = vec![0; nvars];
        e[var] = power;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when every exponent of `other` is dominated.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(Monomial)
    }

    /// All monomials in `nvars` variables of total degree at most `max_degree`,
    /// in ascending term order.
    pub fn all_up_to(nvars: usize, max_degree: u32) -> Vec<Monomial> {
        fn fill(prefix: &mut Vec<u32>, left: usize, budget: u32, out: &mut Vec<Monomial>) {
            if left == 0 {
                out.push(Monomial(prefix.clone()));
                return;
            }
            for e in 0..=budget {
                prefix.push(e);
                fill(prefix, left - 1, budget - e, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        fill(&mut Vec::with_capacity(nvars), nvars, max_degree, &mut out);
        out.sort();
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, BigRational::from_integer(c.into()))
    }

    /// The coordinate function `x_i` (0-based index).
    pub fn variable(nvars: usize, i: usize) -> Result<Self> {
        if i >= nvars {
            return Err(Error::IndexOutOfRange { index: i, dim: nvars });
        }
        Ok(Self::monomial(Monomial::var_power(nvars, i, 1), BigRational::one()))
    }

    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        let mut p = Self::zero(m.nvars());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// True for the zero polynomial and non-zero constants.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_zero() {
            Some(BigRational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        same_dim(self.nvars, other.nvars)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        same_dim(self.nvars, other.nvars)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        same_dim(self.nvars, other.nvars)?;
        Ok(self * other)
    }

    /// Exact partial derivative with respect to `x_i` (0-based).
    pub fn partial_derivative(&self, i: usize) -> Result<Polynomial> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange { index: i, dim: self.nvars });
        }
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[i] -= 1;
            out.add_term(dm, c * BigRational::from_integer(e.into()));
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational> {
        same_dim(self.nvars, point.len())?;
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Groups terms by the exponent of `var`; the keys are powers of `var`
    /// and the values are free of it.
    pub fn coefficients_in(&self, var: usize) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let e = std::mem::take(&mut rest.0[var]);
            out.entry(e).or_insert_with(|| Self::zero(self.nvars)).add_term(rest, c.clone());
        }
        out
    }

    pub fn leading_coefficient_in(&self, var: usize) -> Polynomial {
        self.coefficients_in(var).into_iter().next_back().map(|(_, c)| c).unwrap_or_else(|| Self::zero(self.nvars))
    }

    /// Quotient when `divisor` divides `self` exactly, `None` otherwise.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (lm_d, lc_d) = divisor.leading_term()?;
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((lm_r, lc_r)) = rem.leading_term() {
            let m = lm_r.checked_div(lm_d)?;
            let c = lc_r / lc_d;
            rem = &rem - &divisor.mul_term(&m, &c);
            quot.add_term(m, c);
        }
        Some(quot)
    }

    /// Rational factor `s` such that `self * s` has coprime integer
    /// coefficients and a positive leading coefficient. Zero maps to one.
    pub fn normalizing_factor(&self) -> BigRational {
        let Some((_, lead)) = self.leading_term() else {
            return BigRational::one();
        };
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let s = BigRational::new(den_lcm, num_gcd);
        if lead.is_negative() {
            -s
        } else {
            s
        }
    }

    /// Integer-primitive associate with positive leading coefficient.
    pub fn primitive(&self) -> Polynomial {
        self.scale(&self.normalizing_factor())
    }

    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        crate::gcd::gcd(self, other)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "polynomial dimension mismatch");
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "polynomial dimension mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "polynomial dimension mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

macro_rules! forward_owned_binop {
    ($ty:ty, $tr:ident, $f:ident) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $f(self, rhs: $ty) -> $ty {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $f(self, rhs: &$ty) -> $ty {
                (&self).$f(rhs)
            }
        }
        impl $tr<$ty> for &$ty {
            type Output = $ty;
            fn $f(self, rhs: $ty) -> $ty {
                self.$f(&rhs)
            }
        }
    };
}
pub(crate) use forward_owned_binop;

forward_owned_binop!(Polynomial, Add, add);
forward_owned_binop!(Polynomial, Sub, sub);
forward_owned_binop!(Polynomial, Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
