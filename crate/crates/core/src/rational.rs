//! Rational functions `num / den` in lowest terms.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{same_dim, Error, Result};
use crate::poly::{forward_owned_binop, Polynomial};

/// Element of `Frac(Q[x1..xn])`.
///
/// Canonical form: numerator and denominator are coprime, and the
/// denominator has coprime integer coefficients with a positive leading
/// coefficient. Equal functions therefore have identical representations,
/// so structural equality is mathematical equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFunc {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunc {
    /// Builds `num / den` in canonical form.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        same_dim(num.nvars(), den.nvars())?;
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Polynomial, den: Polynomial) -> Self {
        debug_assert!(!den.is_zero());
        let n = num.nvars();
        if num.is_zero() {
            return RationalFunc { num, den: Polynomial::one(n) };
        }
        let (num, den) = if den.is_constant() || num.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.exact_div(&g).expect("gcd divides numerator"), den.exact_div(&g).expect("gcd divides denominator"))
            }
        };
        let s = den.normalizing_factor();
        RationalFunc { num: num.scale(&s), den: den.scale(&s) }
    }

    pub fn from_poly(p: Polynomial) -> Self {
        let n = p.nvars();
        RationalFunc { num: p, den: Polynomial::one(n) }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(Polynomial::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Polynomial::one(nvars))
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::from_poly(Polynomial::constant(nvars, c))
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::from_poly(Polynomial::from_int(nvars, c))
    }

    pub fn variable(nvars: usize, i: usize) -> Result<Self> {
        Polynomial::variable(nvars, i).map(Self::from_poly)
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The polynomial this function equals, if its denominator is constant.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        self.den.constant_value().map(|c| self.num.scale(&c.recip()))
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        Some(self.num.constant_value()? / self.den.constant_value()?)
    }

    pub fn scale(&self, c: &BigRational) -> RationalFunc {
        if c.is_zero() {
            return Self::zero(self.nvars());
        }
        RationalFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn recip(&self) -> Result<RationalFunc> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i32) -> Result<RationalFunc> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RationalFunc { num: base.num.pow(k), den: base.den.pow(k) }.renormalized())
    }

    // powers of a canonical fraction are coprime; only the scale may drift
    fn renormalized(self) -> RationalFunc {
        let s = self.den.normalizing_factor();
        RationalFunc { num: self.num.scale(&s), den: self.den.scale(&s) }
    }

    pub fn try_add(&self, other: &RationalFunc) -> Result<RationalFunc> {
        same_dim(self.nvars(), other.nvars())?;
        Ok(self + other)
    }

    pub fn try_mul(&self, other: &RationalFunc) -> Result<RationalFunc> {
        same_dim(self.nvars(), other.nvars())?;
        Ok(self * other)
    }

    pub fn try_div(&self, other: &RationalFunc) -> Result<RationalFunc> {
        same_dim(self.nvars(), other.nvars())?;
        Ok(self * &other.recip()?)
    }

    /// Exact partial derivative by the quotient rule, result normalized.
    pub fn partial_derivative(&self, i: usize) -> Result<RationalFunc> {
        let dn = self.num.partial_derivative(i)?;
        if self.den.is_constant() {
            return Ok(RationalFunc { num: dn, den: self.den.clone() });
        }
        let dd = self.den.partial_derivative(i)?;
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        Ok(Self::normalize(num, &self.den * &self.den))
    }

    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational> {
        let d = self.den.evaluate(point)?;
        if d.is_zero() {
            return Err(Error::Pole);
        }
        Ok(self.num.evaluate(point)? / d)
    }

    /// Total degree of numerator, used for ansatz truncation bounds.
    pub fn numerator_degree(&self) -> u32 {
        self.num.total_degree()
    }
}

impl From<Polynomial> for RationalFunc {
    fn from(p: Polynomial) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &RationalFunc {
    type Output = RationalFunc;
    fn add(self, rhs: &RationalFunc) -> RationalFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return RationalFunc::from_poly(&self.num + &rhs.num);
            }
            return RationalFunc::normalize(&self.num + &rhs.num, self.den.clone());
        }
        if let (Some(a), Some(b)) = (self.den.constant_value(), rhs.den.constant_value()) {
            let p = &self.num.scale(&a.recip()) + &rhs.num.scale(&b.recip());
            return RationalFunc::from_poly(p);
        }
        let g = self.den.gcd(&rhs.den);
        let lhs_cof = rhs.den.exact_div(&g).expect("gcd divides");
        let rhs_cof = self.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &lhs_cof) + &(&rhs.num * &rhs_cof);
        RationalFunc::normalize(num, &self.den * &lhs_cof)
    }
}

impl Sub for &RationalFunc {
    type Output = RationalFunc;
    fn sub(self, rhs: &RationalFunc) -> RationalFunc {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunc {
    type Output = RationalFunc;
    fn mul(self, rhs: &RationalFunc) -> RationalFunc {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunc::zero(self.nvars());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunc::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel before multiplying to keep the final gcd small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let a = self.num.exact_div(&g1).expect("gcd divides");
        let d = rhs.den.exact_div(&g1).expect("gcd divides");
        let c = rhs.num.exact_div(&g2).expect("gcd divides");
        let b = self.den.exact_div(&g2).expect("gcd divides");
        RationalFunc { num: &a * &c, den: &b * &d }.renormalized()
    }
}

impl Div for &RationalFunc {
    type Output = RationalFunc;
    /// Panics on division by zero; see [`RationalFunc::try_div`].
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &RationalFunc) -> RationalFunc {
        self * &rhs.recip().expect("division by zero rational function")
    }
}

impl Neg for &RationalFunc {
    type Output = RationalFunc;
    fn neg(self) -> RationalFunc {
        RationalFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for RationalFunc {
    type Output = RationalFunc;
    fn neg(self) -> RationalFunc {
        -&self
    }
}

forward_owned_binop!(RationalFunc, Add, add);
forward_owned_binop!(RationalFunc, Sub, sub);
forward_owned_binop!(RationalFunc, Mul, mul);
forward_owned_binop!(RationalFunc, Div, div);
