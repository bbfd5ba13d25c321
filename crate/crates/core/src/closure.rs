//! Closure properties of last multipliers, Casimirs and exact multivectors,
//! checked on constructed instances.
//!
//! Instances come from [`crate::constructions`], so the hypotheses hold by
//! construction. The "if and only if" statements are checked on a mix of
//! instances where the hypothesis holds and generic ones where it usually
//! does not; [`ClosureOutcome::positives`] counts the former.

use std::fmt;

use crate::constructions::{
    commuting_fields, commuting_multiplier_pair, exact_with_casimirs, generic_multiplier_pair, integrable_field,
    jacobian_multivector, polynomial_in,
};
use crate::curl::{curl, divergence, first_integral_check, is_last_multiplier, last_multiplier_residual, schouten};
use crate::error::Result;
use crate::exec::Execution;
use crate::exterior::{differential, sharp, Multivector, VolumeForm};
use crate::poisson::jacobi_residual;
use crate::random::Sampler;
use crate::rational::RationalFunc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Closure {
    /// Multivectors admitting a fixed `m` are closed under the Schouten
    /// bracket; vector fields in even cases.
    MultiplierSubalgebra,
    /// With `m` a multiplier of `A` and `B`: `m` is a multiplier of `A∧B`
    /// iff `[A,B] = 0`.
    WedgeCriterion,
    /// With `A` exact: `fA` is exact iff `[A,f] = 0`.
    CasimirScaling,
    /// Ratios of multipliers are first integrals, and first integrals times
    /// a multiplier are multipliers.
    MultiplierModule,
    /// Commuting divergence-free `X, Y` with `X∧Y` Poisson give an exact
    /// `X∧Y`.
    CommutingWedge,
    /// `[π, X]` is exact for exact `π` and divergence-free `X`.
    PoissonVectorBracket,
    /// `[π, A]` is exact for exact Poisson `π` and exact `A`.
    PoissonExactBracket,
}

impl Closure {
    pub const ALL: [Closure; 7] = [
        Closure::MultiplierSubalgebra,
        Closure::WedgeCriterion,
        Closure::CasimirScaling,
        Closure::MultiplierModule,
        Closure::CommutingWedge,
        Closure::PoissonVectorBracket,
        Closure::PoissonExactBracket,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Closure::MultiplierSubalgebra => "multiplier-subalgebra",
            Closure::WedgeCriterion => "wedge-criterion",
            Closure::CasimirScaling => "casimir-scaling",
            Closure::MultiplierModule => "multiplier-module",
            Closure::CommutingWedge => "commuting-wedge",
            Closure::PoissonVectorBracket => "poisson-vector-bracket",
            Closure::PoissonExactBracket => "poisson-exact-bracket",
        }
    }

    fn stream(self) -> u64 {
        100 + Self::ALL.iter().position(|&c| c == self).expect("listed") as u64
    }

    /// Checks one constructed instance.
    pub fn check_case(self, seed: u64, case: u64) -> Result<Verdict> {
        let mut s = Sampler::new(seed, self.stream(), case);
        let even = case.is_multiple_of(2);
        match self {
            Closure::MultiplierSubalgebra => {
                let n = 2 + s.index(2);
                let (a, b) = if even { (1, 1) } else { (1 + s.index(n - 1), 1 + s.index(n - 1)) };
                let p = generic_multiplier_pair(&mut s, n, a, b)?;
                let bracket = schouten(&p.a, &p.b)?;
                Ok(Verdict::plain(last_multiplier_residual(&p.volume, &p.multiplier, &bracket)?.is_zero()))
            }
            Closure::WedgeCriterion => {
                let p = if even {
                    let n = 3 + s.index(2);
                    commuting_multiplier_pair(&mut s, n)?
                } else {
                    let n = 2 + s.index(2);
                    let a = 1 + s.index(n - 1);
                    generic_multiplier_pair(&mut s, n, a, 1)?
                };
                let commute = schouten(&p.a, &p.b)?.is_zero();
                let wedge = p.a.wedge(&p.b)?;
                let multiplier = last_multiplier_residual(&p.volume, &p.multiplier, &wedge)?.is_zero();
                Ok(Verdict { holds: commute == multiplier, positive: commute })
            }
            Closure::CasimirScaling => {
                let n = 2 + s.index(3);
                let r = 1 + s.index(n - 1);
                let e = exact_with_casimirs(&mut s, n, r)?;
                let f = if even { polynomial_in(&mut s, &e.casimirs) } else { s.nonzero_function(n) };
                let exact = curl(&e.volume, &e.multivector)?.is_zero();
                let casimir = schouten(&e.multivector, &Multivector::scalar(f.clone()))?.is_zero();
                let scaled_exact = curl(&e.volume, &e.multivector.scale(&f)?)?.is_zero();
                Ok(Verdict { holds: exact && casimir == scaled_exact, positive: casimir })
            }
            Closure::MultiplierModule => {
                let n = 2 + s.index(3);
                let x = integrable_field(&mut s, n)?;
                let phi = polynomial_in(&mut s, &x.integrals);
                if phi.is_zero() {
                    return Ok(Verdict::plain(true));
                }
                let m2 = &x.multiplier * &phi;
                let both = is_last_multiplier(&x.volume, &x.multiplier, &x.field)?;
                let second = is_last_multiplier(&x.volume, &m2, &x.field)?;
                let ratio = first_integral_check(&x.field, &(&m2 / &x.multiplier))?;
                let q = if even { phi } else { s.nonzero_function(n) };
                let integral = first_integral_check(&x.field, &q)?;
                let product = is_last_multiplier(&x.volume, &(&x.multiplier * &q), &x.field)?;
                let unanimous = both.is_unanimous() && second.is_unanimous() && product.is_unanimous();
                Ok(Verdict {
                    holds: unanimous && both.holds() && second.holds() && ratio && integral == product.holds(),
                    positive: integral,
                })
            }
            Closure::CommutingWedge => {
                let n = 3 + s.index(2);
                let (v, x, y) = commuting_fields(&mut s, n)?;
                let v = &v;
                let pi = x.wedge(&y)?;
                let hypotheses = jacobi_residual(&pi)?.is_zero()
                    && schouten(&x, &y)?.is_zero()
                    && divergence(v, &x)?.is_zero()
                    && divergence(v, &y)?.is_zero();
                Ok(Verdict { holds: !hypotheses || curl(v, &pi)?.is_zero(), positive: hypotheses })
            }
            Closure::PoissonVectorBracket => {
                let n = 2 + s.index(2);
                let v = VolumeForm::new(s.nonzero_function(n))?;
                let cs: Vec<RationalFunc> =
                    (2..n).map(|_| RationalFunc::from_poly(s.nonconstant_polynomial(n))).collect();
                let pi = jacobian_multivector(&v, &cs)?;
                let gs: Vec<RationalFunc> =
                    (1..n).map(|_| RationalFunc::from_poly(s.nonconstant_polynomial(n))).collect();
                let x = jacobian_multivector(&v, &gs)?;
                let bracket = schouten(&pi, &x)?;
                let hypotheses = curl(&v, &pi)?.is_zero()
                    && divergence(&v, &x)?.is_zero()
                    && jacobi_residual(&pi)?.is_zero()
                    && (bracket.is_zero() || jacobi_residual(&bracket)?.is_zero());
                Ok(Verdict { holds: !hypotheses || curl(&v, &bracket)?.is_zero(), positive: hypotheses })
            }
            Closure::PoissonExactBracket => {
                let n = 2 + s.index(3);
                let v = VolumeForm::new(s.nonzero_function(n))?;
                let mut omega = crate::exterior::DifferentialForm::one(n);
                for _ in 2..n {
                    omega = omega.wedge(&differential(&RationalFunc::from_poly(s.nonconstant_polynomial(n)))?)?;
                }
                let pi = sharp(&v, &omega)?;
                let k = 1 + s.index(n);
                let a = curl(&v, &s.multivector(n, k))?;
                let hypotheses = curl(&v, &pi)?.is_zero() && jacobi_residual(&pi)?.is_zero() && curl(&v, &a)?.is_zero();
                Ok(Verdict { holds: hypotheses && curl(&v, &schouten(&pi, &a)?)?.is_zero(), positive: hypotheses })
            }
        }
    }
}

impl fmt::Display for Closure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Result of one instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    /// Whether the instance satisfies the hypothesis side of the statement.
    pub positive: bool,
}

impl Verdict {
    fn plain(holds: bool) -> Self {
        Verdict { holds, positive: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureOutcome {
    pub closure: Closure,
    pub cases: u64,
    pub positives: u64,
    pub failures: Vec<u64>,
    pub errors: Vec<(u64, String)>,
}

impl ClosureOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.errors.is_empty()
    }
}

pub fn run_closure(closure: Closure, seed: u64, cases: u64, exec: Execution) -> ClosureOutcome {
    let results = exec.map_range(0..cases as usize, |c| (c as u64, closure.check_case(seed, c as u64)));
    let mut outcome = ClosureOutcome { closure, cases, positives: 0, failures: Vec::new(), errors: Vec::new() };
    for (case, r) in results {
        match r {
            Ok(v) => {
                if v.positive {
                    outcome.positives += 1;
                }
                if !v.holds {
                    outcome.failures.push(case);
                }
            }
            Err(e) => outcome.errors.push((case, e.to_string())),
        }
    }
    outcome
}

pub fn run_closures(seed: u64, cases: u64, exec: Execution) -> Vec<ClosureOutcome> {
    Closure::ALL.iter().map(|&c| run_closure(c, seed, cases, exec)).collect()
}
