//! The curl operator `D_V = V♮ ∘ d ∘ V♭`, the Schouten bracket, and
//! last-multiplier predicates built on them.

use num_rational::BigRational;
use num_traits::One;

use crate::error::{same_dim, Error, Result};
use crate::exterior::{
    exterior_derivative, flat, interior_product_vector, marsden_derivative, sharp, witten_derivative, DifferentialForm,
    IndexSet, Multivector, VolumeForm,
};
use crate::rational::RationalFunc;

/// Curl of a multivector; lowers grade by one. Functions have zero curl.
pub fn curl(v: &VolumeForm, a: &Multivector) -> Result<Multivector> {
    same_dim(v.dim(), a.dim())?;
    if a.grade() == 0 || a.is_zero() {
        return Ok(Multivector::zero(a.dim(), a.grade().saturating_sub(1)));
    }
    sharp(v, &exterior_derivative(&flat(v, a)?)?)
}

/// `div_V X` for a vector field.
pub fn divergence(v: &VolumeForm, x: &Multivector) -> Result<RationalFunc> {
    require_grade(x, 1)?;
    Ok(curl(v, x)?.as_scalar().expect("curl of a vector field is a function"))
}

/// Schouten–Nijenhuis bracket, computed from coordinates.
///
/// With `ι_i` the contraction by `dx^i` and `∂_i` acting on coefficients,
///
/// `[P, Q] = Σ_i (-1)^(p-1) ι_i P ∧ ∂_i Q − (-1)^(p(q-1)) ι_i Q ∧ ∂_i P`.
///
/// This restricts to the Lie bracket on vector fields and to `[X, f] = X(f)`,
/// and satisfies `[A,B] = (-1)^b D(A∧B) − DA∧B − (-1)^b A∧DB` for every
/// volume form.
pub fn schouten(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    same_dim(a.dim(), b.dim())?;
    let n = a.dim();
    let (p, q) = (a.grade(), b.grade());
    let mut out = Multivector::zero(n, (p + q).saturating_sub(1));
    if p + q == 0 || (a.is_zero() && b.is_zero()) {
        return Ok(out);
    }
    let first_sign = parity_sign(p + 1);
    let second_sign = -parity_sign(p * (q + 1));
    for i in 0..n {
        let dxi = dx(n, i);
        if p > 0 {
            let t = interior_product_vector(&dxi, a)?.wedge(&b.partial_derivative(i)?)?;
            out = out.try_add(&signed(t, first_sign))?;
        }
        if q > 0 {
            let t = interior_product_vector(&dxi, b)?.wedge(&a.partial_derivative(i)?)?;
            out = out.try_add(&signed(t, second_sign))?;
        }
    }
    Ok(out)
}

/// `D_V(m A)`; vanishes exactly when `m` is a last multiplier of `A`.
pub fn last_multiplier_residual(v: &VolumeForm, m: &RationalFunc, a: &Multivector) -> Result<Multivector> {
    curl(v, &a.scale(m)?)
}

/// Verdicts of the three equivalent last-multiplier characterizations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LastMultiplierCheck {
    /// `D_V(mA) = 0`.
    pub curl_route: bool,
    /// `V♭(A)` lies in the kernel of `d_m + (m − 1) d`.
    pub witten_route: bool,
    /// `V♭(A)` is `d^m`-closed.
    pub marsden_route: bool,
}

impl LastMultiplierCheck {
    pub fn routes(&self) -> [bool; 3] {
        [self.curl_route, self.witten_route, self.marsden_route]
    }

    pub fn is_unanimous(&self) -> bool {
        let r = self.routes();
        r.iter().all(|&x| x == r[0])
    }

    /// Majority verdict; equals every route when unanimous.
    pub fn holds(&self) -> bool {
        self.routes().iter().filter(|&&x| x).count() >= 2
    }

    /// Number of routes agreeing with [`LastMultiplierCheck::holds`].
    pub fn agreeing(&self) -> usize {
        let h = self.holds();
        self.routes().iter().filter(|&&x| x == h).count()
    }
}

pub fn is_last_multiplier(v: &VolumeForm, m: &RationalFunc, a: &Multivector) -> Result<LastMultiplierCheck> {
    same_dim(v.dim(), m.nvars())?;
    if m.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let curl_route = last_multiplier_residual(v, m, a)?.is_zero();

    let omega = flat(v, a)?;
    let d_omega = exterior_derivative(&omega)?;
    let witten = witten_derivative(&BigRational::one(), m, &omega)?
        .try_add(&d_omega.scale(&(m - &RationalFunc::one(m.nvars())))?)?;
    let marsden = marsden_derivative(m, &omega)?;

    Ok(LastMultiplierCheck { curl_route, witten_route: witten.is_zero(), marsden_route: marsden.is_zero() })
}

/// Curl with respect to the scaled volume `m V`.
pub fn curl_scaled(v: &VolumeForm, m: &RationalFunc, a: &Multivector) -> Result<Multivector> {
    curl(&v.scaled(m)?, a)
}

/// `[A, ln|m|]`, realized as `D_{mV} A − D_V A` so no logarithm is formed.
pub fn log_bracket(v: &VolumeForm, a: &Multivector, m: &RationalFunc) -> Result<Multivector> {
    curl_scaled(v, m, a)?.try_sub(&curl(v, a)?)
}

pub fn is_exact(v: &VolumeForm, a: &Multivector) -> Result<bool> {
    Ok(curl(v, a)?.is_zero())
}

/// Whether `h` is an inverse multiplier: `X(h) = (div_V X) h`.
pub fn inverse_multiplier_check(v: &VolumeForm, h: &RationalFunc, x: &Multivector) -> Result<bool> {
    same_dim(v.dim(), h.nvars())?;
    if h.is_zero() {
        return Err(Error::ZeroFunction);
    }
    require_grade(x, 1)?;
    Ok(x.apply_to(h)? == &divergence(v, x)? * h)
}

/// Whether `f` is a first integral of `X`, i.e. `X(f) = 0`.
pub fn first_integral_check(x: &Multivector, f: &RationalFunc) -> Result<bool> {
    require_grade(x, 1)?;
    Ok(x.apply_to(f)?.is_zero())
}

pub(crate) fn require_grade(a: &Multivector, grade: usize) -> Result<()> {
    if a.grade() == grade || (a.is_zero() && grade > 0) {
        Ok(())
    } else {
        Err(Error::GradeMismatch { expected: grade, found: a.grade() })
    }
}

fn dx(n: usize, i: usize) -> DifferentialForm {
    DifferentialForm::blade(n, IndexSet::singleton(i), RationalFunc::one(n)).expect("valid blade")
}

fn parity_sign(e: usize) -> i32 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn signed(a: Multivector, s: i32) -> Multivector {
    if s < 0 {
        a.neg()
    } else {
        a
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;

    fn var(n: usize, i: usize) -> RationalFunc {
        RationalFunc::variable(n, i).unwrap()
    }

    fn int(n: usize, c: i64) -> RationalFunc {
        RationalFunc::from_int(n, c)
    }

    fn e(n: usize, idx: &[usize]) -> Multivector {
        Multivector::basis(n, idx).unwrap()
    }

    fn scalar(f: RationalFunc) -> Multivector {
        Multivector::scalar(f)
    }

    #[test]
    fn curl_of_planar_bivector() {
        // D(h ∂x∧∂y) = h_y ∂x − h_x ∂y with h = x^2 y + y^3
        let n = 2;
        let (x, y) = (var(n, 0), var(n, 1));
        let h = &(&(&x * &x) * &y) + &(&(&y * &y) * &y);
        let a = e(n, &[0, 1]).scale(&h).unwrap();
        let hx = h.partial_derivative(0).unwrap();
        let hy = h.partial_derivative(1).unwrap();
        let expected = Multivector::vector_field(&[hy, -hx]).unwrap();
        assert_eq!(curl(&VolumeForm::unit(n), &a).unwrap(), expected);
    }

    #[test]
    fn constant_top_multivector_is_exact() {
        for n in 1..=4 {
            let all: Vec<usize> = (0..n).collect();
            assert!(is_exact(&VolumeForm::unit(n), &e(n, &all)).unwrap());
        }
    }

    #[test]
    fn nambu_multivector_is_exact() {
        let n = 2;
        let f = &int(n, 1) + &(&var(n, 0) * &var(n, 0));
        let v = VolumeForm::new(f.clone()).unwrap();
        let a = e(n, &[0, 1]).scale(&f.recip().unwrap()).unwrap();
        assert!(curl(&v, &a).unwrap().is_zero());
    }

    #[test]
    fn curl_of_function_is_typed_zero() {
        let c = curl(&VolumeForm::unit(2), &scalar(var(2, 0))).unwrap();
        assert!(c.is_zero());
        assert_eq!(c.grade(), 0);
    }

    #[test]
    fn divergence_examples() {
        let n = 2;
        let v = VolumeForm::unit(n);
        assert!(divergence(&v, &e(n, &[0])).unwrap().is_zero());
        // X = x ∂x + y^2 ∂y  ->  1 + 2y
        let (x, y) = (var(n, 0), var(n, 1));
        let xf = Multivector::vector_field(&[x.clone(), &y * &y]).unwrap();
        let expected = &int(n, 1) + &y.scale(&BigRational::from_integer(2.into()));
        assert_eq!(divergence(&v, &xf).unwrap(), expected);
        assert!(divergence(&v, &e(n, &[0, 1])).is_err());
    }

    #[test]
    fn schouten_restricts_to_lie_bracket_and_derivation() {
        let n = 2;
        let x = var(n, 0);
        // [∂x, x ∂y] = ∂y
        let ybar = e(n, &[1]).scale(&x).unwrap();
        assert_eq!(schouten(&e(n, &[0]), &ybar).unwrap(), e(n, &[1]));
        // [x ∂x, x] = x
        let xdx = e(n, &[0]).scale(&x).unwrap();
        assert_eq!(schouten(&xdx, &scalar(x.clone())).unwrap(), scalar(x.clone()));
        // graded antisymmetry for grade (1, 0)
        assert_eq!(schouten(&scalar(x.clone()), &xdx).unwrap(), scalar(-x));
    }

    #[test]
    fn schouten_of_functions_vanishes() {
        let b = schouten(&scalar(var(2, 0)), &scalar(var(2, 1))).unwrap();
        assert!(b.is_zero());
    }

    #[test]
    fn residual_and_multiplier_examples() {
        // A = x ∂x on the line, V = dx: 1/x is a multiplier, 1 leaves residual 1
        let n = 1;
        let v = VolumeForm::unit(n);
        let x = var(n, 0);
        let a = e(n, &[0]).scale(&x).unwrap();
        assert!(last_multiplier_residual(&v, &x.recip().unwrap(), &a).unwrap().is_zero());
        let r = last_multiplier_residual(&v, &int(n, 1), &a).unwrap();
        assert_eq!(r.as_scalar().unwrap(), int(n, 1));

        let check = is_last_multiplier(&v, &x.recip().unwrap(), &a).unwrap();
        assert!(check.holds() && check.is_unanimous());
        // m = x for ∂x: residual 1, not a multiplier
        let check = is_last_multiplier(&v, &x, &e(n, &[0])).unwrap();
        assert!(!check.holds() && check.is_unanimous());
        assert_eq!(check.agreeing(), 3);
    }

    #[test]
    fn planar_reciprocal_multiplier() {
        let n = 2;
        let (x, y) = (var(n, 0), var(n, 1));
        let h = &(&(&x * &x) + &(&y * &y)) + &int(n, 1);
        let pi = e(n, &[0, 1]).scale(&h).unwrap();
        let v = VolumeForm::unit(n);
        let m = h.recip().unwrap();
        assert!(last_multiplier_residual(&v, &m, &pi).unwrap().is_zero());
        assert!(curl_scaled(&v, &m, &pi).unwrap().is_zero());
        // D_V π = −[π, ln|m|]
        assert_eq!(curl(&v, &pi).unwrap(), log_bracket(&v, &pi, &m).unwrap().neg());
    }

    #[test]
    fn log_bracket_examples() {
        let n = 2;
        let v = VolumeForm::unit(n);
        let a = e(n, &[0, 1]).scale(&var(n, 0)).unwrap();
        assert!(log_bracket(&v, &a, &int(n, 5)).unwrap().is_zero());
        // grade 1: [X, ln|m|] = X(m)/m
        let x = Multivector::vector_field(&[var(n, 1), var(n, 0)]).unwrap();
        let m = &(&var(n, 0) * &var(n, 0)) + &int(n, 2);
        let got = log_bracket(&v, &x, &m).unwrap().as_scalar().unwrap();
        assert_eq!(got, &x.apply_to(&m).unwrap() / &m);
        assert_eq!(log_bracket(&v, &a, &RationalFunc::zero(n)), Err(Error::ZeroFunction));
    }

    #[test]
    fn exactness_examples() {
        let n = 2;
        let v = VolumeForm::unit(n);
        assert!(is_exact(&v, &e(n, &[0, 1]).scale(&int(n, 7)).unwrap()).unwrap());
        let pi = e(n, &[0, 1]).scale(&var(n, 0)).unwrap();
        assert!(!is_exact(&v, &pi).unwrap());
        assert_eq!(curl(&v, &pi).unwrap(), e(n, &[1]).neg());
    }

    #[test]
    fn inverse_multiplier_examples() {
        let v1 = VolumeForm::unit(1);
        let x = var(1, 0);
        let xdx = e(1, &[0]).scale(&x).unwrap();
        assert!(inverse_multiplier_check(&v1, &int(1, 1), &e(1, &[0])).unwrap());
        assert!(inverse_multiplier_check(&v1, &x, &xdx).unwrap());
        assert!(is_last_multiplier(&v1, &x.recip().unwrap(), &xdx).unwrap().holds());
        assert!(!inverse_multiplier_check(&v1, &x, &e(1, &[0])).unwrap());
        assert!(inverse_multiplier_check(&v1, &RationalFunc::zero(1), &xdx).is_err());
    }

    #[test]
    fn first_integral_examples() {
        let n = 2;
        let x = Multivector::vector_field(&[var(n, 1), -var(n, 0)]).unwrap();
        assert!(first_integral_check(&x, &int(n, 3)).unwrap());
        let r2 = RationalFunc::from_poly(
            &Polynomial::variable(n, 0).unwrap().pow(2) + &Polynomial::variable(n, 1).unwrap().pow(2),
        );
        assert!(first_integral_check(&x, &r2).unwrap());
        assert!(!first_integral_check(&x, &var(n, 0)).unwrap());
    }
}
