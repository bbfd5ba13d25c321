//! Randomized exact identity suite.
//!
//! Each identity is checked on independently seeded random instances drawn
//! with [`IDENTITY_PARAMS`](crate::random::IDENTITY_PARAMS): dimension in
//! `{2, 3, 4}`, grades at most 3, coefficient degree at most 2, integer
//! coefficients in `[-3, 3]`. Comparisons are exact equality.

use std::fmt;

use crate::curl::{curl, curl_scaled, schouten};
use crate::error::Result;
use crate::exec::Execution;
use crate::exterior::{exterior_derivative, interior_product_form, pairing, Multivector, VolumeForm};
use crate::random::Sampler;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    /// `m D_{mV} A = D_V(m A)`.
    ScaledCurl,
    /// `[A,B] = (-1)^b D(A∧B) − DA∧B − (-1)^b A∧DB` for two densities.
    SchoutenCurlWedge,
    /// `D[A,B] = [A,DB] + (-1)^(b-1) [DA,B]`.
    CurlDerivation,
    /// `D ∘ D = 0`.
    CurlSquared,
    /// `d ∘ d = 0`.
    ExteriorSquared,
    /// `⟨i_A ω, B⟩ = ⟨ω, A∧B⟩`.
    InteriorDuality,
}

impl Identity {
    pub const ALL: [Identity; 6] = [
        Identity::ScaledCurl,
        Identity::SchoutenCurlWedge,
        Identity::CurlDerivation,
        Identity::CurlSquared,
        Identity::ExteriorSquared,
        Identity::InteriorDuality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::ScaledCurl => "scaled-curl",
            Identity::SchoutenCurlWedge => "schouten-curl-wedge",
            Identity::CurlDerivation => "curl-derivation",
            Identity::CurlSquared => "curl-squared",
            Identity::ExteriorSquared => "exterior-squared",
            Identity::InteriorDuality => "interior-duality",
        }
    }

    fn stream(self) -> u64 {
        Self::ALL.iter().position(|&i| i == self).expect("listed") as u64 + 1
    }

    /// Checks one random instance; `Ok(false)` is a counterexample.
    pub fn check_case(self, seed: u64, case: u64) -> Result<bool> {
        let mut s = Sampler::new(seed, self.stream(), case);
        let n = s.dim();
        match self {
            Identity::ScaledCurl => {
                let v = s.volume(n);
                let m = s.nonzero_function(n);
                let grade = s.grade(n, 1);
                let a = s.multivector(n, grade);
                let lhs = curl_scaled(&v, &m, &a)?.scale(&m)?;
                Ok(lhs == curl(&v, &a.scale(&m)?)?)
            }
            Identity::SchoutenCurlWedge => {
                let (ga, gb) = (s.grade(n, 0), s.grade(n, 0));
                let a = s.multivector(n, ga);
                let b = s.multivector(n, gb);
                let bracket = schouten(&a, &b)?;
                for v in [s.volume(n), s.volume(n)] {
                    if curl_wedge_combination(&v, &a, &b)? != bracket {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Identity::CurlDerivation => {
                let v = s.volume(n);
                let (ga, gb) = (s.grade(n, 0), s.grade(n, 0));
                let a = s.multivector(n, ga);
                let b = s.multivector(n, gb);
                let lhs = curl(&v, &schouten(&a, &b)?)?;
                let first = schouten(&a, &curl(&v, &b)?)?;
                let second = schouten(&curl(&v, &a)?, &b)?;
                let second = if gb % 2 == 1 { second } else { second.neg() };
                Ok(lhs == first.try_add(&second)?)
            }
            Identity::CurlSquared => {
                let v = s.volume(n);
                let grade = s.grade(n, 1);
                let a = s.multivector(n, grade);
                Ok(curl(&v, &curl(&v, &a)?)?.is_zero())
            }
            Identity::ExteriorSquared => {
                let degree = s.index(n.min(3) + 1);
                let w = s.form(n, degree);
                Ok(exterior_derivative(&exterior_derivative(&w)?)?.is_zero())
            }
            Identity::InteriorDuality => {
                let p = s.index(n.min(3) + 1);
                let k = s.index(p + 1);
                let a = s.multivector(n, k);
                let w = s.form(n, p);
                let b = s.multivector(n, p - k);
                let lhs = pairing(&interior_product_form(&a, &w)?, &b)?;
                Ok(lhs == pairing(&w, &a.wedge(&b)?)?)
            }
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Right-hand side `(-1)^b D(A∧B) − DA∧B − (-1)^b A∧DB`.
pub fn curl_wedge_combination(v: &VolumeForm, a: &Multivector, b: &Multivector) -> Result<Multivector> {
    let sign_b = |x: Multivector| if b.grade().is_multiple_of(2) { x } else { x.neg() };
    let t1 = sign_b(curl(v, &a.wedge(b)?)?);
    let t2 = curl(v, a)?.wedge(b)?;
    let t3 = sign_b(a.wedge(&curl(v, b)?)?);
    let mut out = t1.try_sub(&t2)?.try_sub(&t3)?;
    if out.is_zero() {
        out = Multivector::zero(a.dim(), (a.grade() + b.grade()).saturating_sub(1));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityOutcome {
    pub identity: Identity,
    pub cases: u64,
    /// Case indices where the identity failed.
    pub failures: Vec<u64>,
    /// Case indices where evaluation raised an error.
    pub errors: Vec<(u64, String)>,
}

impl IdentityOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.errors.is_empty()
    }
}

pub fn run_identity(identity: Identity, seed: u64, cases: u64, exec: Execution) -> IdentityOutcome {
    let results = exec.map_range(0..cases as usize, |c| (c as u64, identity.check_case(seed, c as u64)));
    let mut outcome = IdentityOutcome { identity, cases, failures: Vec::new(), errors: Vec::new() };
    for (case, r) in results {
        match r {
            Ok(true) => {}
            Ok(false) => outcome.failures.push(case),
            Err(e) => outcome.errors.push((case, e.to_string())),
        }
    }
    outcome
}

pub fn run_suite(seed: u64, cases: u64, exec: Execution) -> Vec<IdentityOutcome> {
    Identity::ALL.iter().map(|&i| run_identity(i, seed, cases, exec)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        for outcome in run_suite(11, 8, Execution::default()) {
            assert!(outcome.passed(), "{outcome:?}");
        }
    }
}
