//! Lichnerowicz differential and degree-truncated exact Poisson cohomology.
//!
//! Cochains of grade `k` are polynomial multivectors of coefficient degree
//! at most `d` with vanishing curl. The differential `δ_π = [π, ·]` raises
//! coefficient degree by at most `deg π − 1`, so images of grade `k − 1`
//! cochains of degree `d + 1 − deg π` land back among the degree-`d`
//! cochains. All reported dimensions describe these finite sections only.

use crate::ansatz::{in_span, multivector_basis, solve_homogeneous, span_dimension, AnsatzSpace};
use crate::curl::{curl, schouten};
use crate::error::{same_dim, Error, Result};
use crate::exec::Execution;
use crate::exterior::{Multivector, VolumeForm};
use crate::poisson::PoissonBivector;

/// `δ_π(A) = [π, A]`.
pub fn lichnerowicz_delta(pi: &PoissonBivector, a: &Multivector) -> Result<Multivector> {
    let r = schouten(pi, a)?;
    Ok(if r.is_zero() { Multivector::zero(a.dim(), a.grade() + 1) } else { r })
}

/// Basis of grade-`k` exact multivectors with polynomial coefficients of
/// degree at most `d`. For `k = 0` every function is exact.
pub fn exact_basis(v: &VolumeForm, k: usize, d: u32) -> Result<Vec<Multivector>> {
    exact_basis_with(v, k, d, Execution::default())
}

pub fn exact_basis_with(v: &VolumeForm, k: usize, d: u32, exec: Execution) -> Result<Vec<Multivector>> {
    let n = v.dim();
    if k > n {
        return Ok(Vec::new());
    }
    if k == 0 {
        return Ok(AnsatzSpace::polynomial(n, d).basis().iter().map(|f| Multivector::scalar(f.clone())).collect());
    }
    solve_homogeneous(&multivector_basis(n, k, d), |a| curl(v, a), exec)
}

/// Dimensions of one truncated piece of the exact Lichnerowicz complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedComplexReport {
    pub k: usize,
    /// Coefficient degree bound on grade-`k` cochains.
    pub degree_bound: u32,
    /// Coefficient degree of `π`.
    pub pi_degree: u32,
    pub dim_exact: usize,
    pub dim_kernel: usize,
    /// Rank of `δ_π` on grade-`k − 1` exact cochains of degree at most
    /// `degree_bound + 1 − pi_degree`.
    pub dim_image: usize,
    pub truncated_h_dim: usize,
    /// Kernel of `δ_π` on all grade-`k` polynomial cochains of degree at
    /// most `degree_bound`, exact or not.
    pub dim_full_kernel: usize,
    pub exact_kernel_in_full_kernel: bool,
    /// Always set: these are finite sections, not the full groups.
    pub truncated: bool,
}

impl TruncatedComplexReport {
    /// `0 ≤ image ≤ kernel ≤ exact`, and the quotient matches.
    pub fn dimensions_consistent(&self) -> bool {
        self.dim_image <= self.dim_kernel
            && self.dim_kernel <= self.dim_exact
            && self.truncated_h_dim == self.dim_kernel - self.dim_image
            && self.dim_kernel <= self.dim_full_kernel
    }
}

/// Truncated `H_e^k` for an exact Poisson bivector.
pub fn truncated_exact_cohomology(
    v: &VolumeForm,
    pi: &PoissonBivector,
    k: usize,
    d: u32,
) -> Result<TruncatedComplexReport> {
    truncated_exact_cohomology_with(v, pi, k, d, Execution::default())
}

pub fn truncated_exact_cohomology_with(
    v: &VolumeForm,
    pi: &PoissonBivector,
    k: usize,
    d: u32,
    exec: Execution,
) -> Result<TruncatedComplexReport> {
    same_dim(v.dim(), pi.dim())?;
    if !curl(v, pi)?.is_zero() {
        return Err(Error::NotExact);
    }
    let n = v.dim();
    let pi_degree = if pi.is_zero() {
        0
    } else if pi.is_polynomial() {
        pi.coefficient_degree()?
    } else {
        return Err(Error::NotPolynomial("cohomology needs a polynomial bivector"));
    };
    let delta = |a: &Multivector| lichnerowicz_delta(pi, a);

    let exact = exact_basis_with(v, k, d, exec)?;
    let kernel = if exact.is_empty() { Vec::new() } else { solve_homogeneous(&exact, delta, exec)? };

    let dim_image = match (k.checked_sub(1), (d + 1).checked_sub(pi_degree)) {
        (Some(km1), Some(bound)) => {
            let below = exact_basis_with(v, km1, bound, exec)?;
            let images = exec.try_map(&below, delta)?;
            span_dimension(&images)?
        }
        _ => 0,
    };

    let full = if k > n { Vec::new() } else { solve_homogeneous(&multivector_basis(n, k, d), delta, exec)? };
    let mut contained = true;
    for a in &kernel {
        if !in_span(&full, a)? {
            contained = false;
            break;
        }
    }

    Ok(TruncatedComplexReport {
        k,
        degree_bound: d,
        pi_degree,
        dim_exact: exact.len(),
        dim_kernel: kernel.len(),
        dim_image,
        truncated_h_dim: kernel.len().saturating_sub(dim_image),
        dim_full_kernel: full.len(),
        exact_kernel_in_full_kernel: contained,
        truncated: true,
    })
}

/// Reports for several grades, computed independently.
pub fn truncated_exact_cohomology_grades(
    v: &VolumeForm,
    pi: &PoissonBivector,
    grades: &[usize],
    d: u32,
    exec: Execution,
) -> Result<Vec<TruncatedComplexReport>> {
    exec.try_map(grades, |&k| truncated_exact_cohomology_with(v, pi, k, d, Execution::Sequential))
}
