//! Instances with prescribed multipliers, first integrals and Casimirs.
//!
//! Each builder returns data whose defining property holds by construction,
//! so the closure results can be tested without solving for anything.

use crate::curl::curl;
use crate::error::Result;
use crate::exterior::{differential, sharp, DifferentialForm, IndexSet, Multivector, VolumeForm};
use crate::poly::Polynomial;
use crate::random::Sampler;
use crate::rational::RationalFunc;

/// `V♮(dC_1 ∧ … ∧ dC_r)`, a grade `n − r` multivector with zero curl.
pub fn jacobian_multivector(v: &VolumeForm, funcs: &[RationalFunc]) -> Result<Multivector> {
    let mut omega = DifferentialForm::one(v.dim());
    for c in funcs {
        omega = omega.wedge(&differential(c)?)?;
    }
    sharp(v, &omega)
}

/// `D_V(F) / m`; admits `m` as last multiplier since `D_V ∘ D_V = 0`.
pub fn multiplier_multivector(v: &VolumeForm, m: &RationalFunc, f: &Multivector) -> Result<Multivector> {
    curl(v, f)?.scale(&m.recip()?)
}

/// Keeps the terms of `p` free of the variables `x_1, x_2`.
pub fn drop_first_two(p: &Polynomial) -> Polynomial {
    Polynomial::from_terms(
        p.nvars(),
        p.terms().filter(|(m, _)| m.exponents()[0] == 0 && m.exponents()[1] == 0).map(|(m, c)| (m.clone(), c.clone())),
    )
}

/// Last-multiplier data `(V, m, A, B)` where `m` is a multiplier of both.
#[derive(Debug, Clone)]
pub struct MultiplierPair {
    pub volume: VolumeForm,
    pub multiplier: RationalFunc,
    pub a: Multivector,
    pub b: Multivector,
}

fn nonzero_low(s: &mut Sampler, n: usize) -> RationalFunc {
    loop {
        let p = s.polynomial_with(n, 1, 0.7);
        if !p.is_zero() {
            return RationalFunc::from_poly(p);
        }
    }
}

/// Generic pair `A = D_V(F)/m`, `B = D_V(G)/m` of grades `a, b ≥ 1`.
pub fn generic_multiplier_pair(s: &mut Sampler, n: usize, a: usize, b: usize) -> Result<MultiplierPair> {
    let volume = VolumeForm::new(nonzero_low(s, n))?;
    let multiplier = nonzero_low(s, n);
    let f = s.multivector(n, a + 1);
    let g = s.multivector(n, b + 1);
    Ok(MultiplierPair {
        a: multiplier_multivector(&volume, &multiplier, &f)?,
        b: multiplier_multivector(&volume, &multiplier, &g)?,
        volume,
        multiplier,
    })
}

/// Schouten-commuting pair on `ℝⁿ`, `n ≥ 3`: both multivectors live on the
/// blades of `{∂_1, ∂_2}` with coefficients, density and multiplier free of
/// `x_1, x_2`.
pub fn commuting_multiplier_pair(s: &mut Sampler, n: usize) -> Result<MultiplierPair> {
    assert!(n >= 3, "commuting pairs need a third coordinate");
    let free = |s: &mut Sampler, nonzero: bool| loop {
        let p = drop_first_two(&s.polynomial_with(n, 2, 0.6));
        if !(nonzero && p.is_zero()) {
            return RationalFunc::from_poly(p);
        }
    };
    let volume = VolumeForm::new(free(s, true))?;
    let multiplier = free(s, true);
    let blades = [IndexSet::singleton(0), IndexSet::singleton(1), IndexSet::singleton(0).union(IndexSet::singleton(1))];
    let pick = |s: &mut Sampler| -> Result<Multivector> {
        let grade = 1 + s.index(2);
        let terms: Vec<_> = blades.iter().filter(|b| b.grade() == grade).map(|b| (*b, free(s, false))).collect();
        Multivector::from_terms(n, grade, terms)
    };
    let a = pick(s)?;
    let b = pick(s)?;
    Ok(MultiplierPair { volume, multiplier, a, b })
}

/// Commuting divergence-free fields `X, Y` on the `{∂_1, ∂_2}` plane with
/// coefficients and density free of `x_1, x_2`, `n ≥ 3`.
pub fn commuting_fields(s: &mut Sampler, n: usize) -> Result<(VolumeForm, Multivector, Multivector)> {
    let p = commuting_multiplier_pair(s, n)?;
    let field = |s: &mut Sampler| loop {
        let p = drop_first_two(&s.polynomial_with(n, 2, 0.6));
        let q = drop_first_two(&s.polynomial_with(n, 2, 0.6));
        if !p.is_zero() || !q.is_zero() {
            let mut comps = vec![RationalFunc::zero(n); n];
            comps[0] = RationalFunc::from_poly(p);
            comps[1] = RationalFunc::from_poly(q);
            return Multivector::vector_field(&comps);
        }
    };
    let x = field(s)?;
    let y = field(s)?;
    Ok((p.volume, x, y))
}

/// Vector field `X = V♮(dg ∧ dC_2 ∧ … ∧ dC_{n−1}) / m` with last multiplier
/// `m` and first integrals `g, C_2, …`.
#[derive(Debug, Clone)]
pub struct IntegrableField {
    pub volume: VolumeForm,
    pub multiplier: RationalFunc,
    pub field: Multivector,
    pub integrals: Vec<RationalFunc>,
}

pub fn integrable_field(s: &mut Sampler, n: usize) -> Result<IntegrableField> {
    let volume = VolumeForm::new(nonzero_low(s, n))?;
    let multiplier = nonzero_low(s, n);
    let integrals: Vec<RationalFunc> = (1..n).map(|_| RationalFunc::from_poly(s.nonconstant_polynomial(n))).collect();
    let field = jacobian_multivector(&volume, &integrals)?.scale(&multiplier.recip()?)?;
    Ok(IntegrableField { volume, multiplier, field, integrals })
}

/// Random polynomial expression in the given functions, with at least one
/// non-constant term.
pub fn polynomial_in(s: &mut Sampler, funcs: &[RationalFunc]) -> RationalFunc {
    let n = funcs[0].nvars();
    let mut acc = RationalFunc::constant(n, s.rational());
    let lead = s.index(funcs.len());
    acc = &acc + &funcs[lead].scale(&s.rational());
    for f in funcs {
        if s.coin(0.5) {
            acc = &acc + &(f * f).scale(&s.rational());
        }
    }
    if funcs.len() > 1 && s.coin(0.5) {
        acc = &acc + &(&funcs[0] * &funcs[1]).scale(&s.rational());
    }
    acc
}

/// Exact multivector with a family of Casimirs: `V♮(dC_1 ∧ … ∧ dC_r)` has
/// every function of the `C_i` as Casimir.
#[derive(Debug, Clone)]
pub struct ExactWithCasimirs {
    pub volume: VolumeForm,
    pub multivector: Multivector,
    pub casimirs: Vec<RationalFunc>,
}

pub fn exact_with_casimirs(s: &mut Sampler, n: usize, r: usize) -> Result<ExactWithCasimirs> {
    assert!((1..n).contains(&r), "need 1 ≤ r < n");
    let volume = VolumeForm::new(nonzero_low(s, n))?;
    let casimirs: Vec<RationalFunc> = (0..r).map(|_| RationalFunc::from_poly(s.nonconstant_polynomial(n))).collect();
    let multivector = jacobian_multivector(&volume, &casimirs)?;
    Ok(ExactWithCasimirs { volume, multivector, casimirs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curl::{last_multiplier_residual, schouten};

    #[test]
    fn constructions_have_their_properties() {
        for case in 0..6 {
            let mut s = Sampler::new(11, 0, case);
            let n = 2 + (case as usize % 2);
            let p = generic_multiplier_pair(&mut s, n, 1, 1).unwrap();
            assert!(last_multiplier_residual(&p.volume, &p.multiplier, &p.a).unwrap().is_zero());
            let c = commuting_multiplier_pair(&mut s, 3).unwrap();
            assert!(last_multiplier_residual(&c.volume, &c.multiplier, &c.b).unwrap().is_zero());
            assert!(schouten(&c.a, &c.b).unwrap().is_zero());
            let x = integrable_field(&mut s, n).unwrap();
            for g in &x.integrals {
                assert!(x.field.apply_to(g).unwrap().is_zero());
            }
            let e = exact_with_casimirs(&mut s, n, 1).unwrap();
            assert!(curl(&e.volume, &e.multivector).unwrap().is_zero());
            let f = polynomial_in(&mut s, &e.casimirs);
            assert!(schouten(&e.multivector, &Multivector::scalar(f)).unwrap().is_zero());
        }
    }
}
