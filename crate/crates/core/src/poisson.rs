//! Poisson bivectors: Jacobi check, Hamiltonian and modular vector fields,
//! last-multiplier systems and Lie-Poisson structures.

use std::ops::Deref;

use num_rational::BigRational;
use num_traits::Zero;

use crate::ansatz::{solve_affine, AnsatzSpace, ExactMatrix};
use crate::curl::{curl, require_grade, schouten};
use crate::error::{same_dim, Error, Result};
use crate::exec::Execution;
use crate::exterior::{differential, interior_product_vector, IndexSet, Multivector, VolumeForm};
use crate::poly::{Monomial, Polynomial};
use crate::rational::RationalFunc;

/// Lie algebra structure constants `[e_i, e_j] = Σ_k c_ij^k e_k`, stored
/// for `i < j` only. Indices are zero-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    dim: usize,
    /// `upper[pair(i, j)][k] = c_ij^k` for `i < j`.
    upper: Vec<Vec<BigRational>>,
}

fn pair_index(dim: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < dim);
    i * dim - i * (i + 1) / 2 + (j - i - 1)
}

impl StructureConstants {
    /// Builds from entries `((i, j, k), c_ij^k)`. Entries with `i > j` are
    /// read through antisymmetry; unlisted constants are zero.
    pub fn new(dim: usize, entries: impl IntoIterator<Item = ((usize, usize, usize), BigRational)>) -> Result<Self> {
        if dim == 0 || dim > 16 {
            return Err(Error::InvalidStructureConstants(format!("dimension {dim} outside 1..=16")));
        }
        let pairs = dim * (dim - 1) / 2;
        let mut upper = vec![vec![BigRational::zero(); dim]; pairs];
        let mut set = vec![vec![false; dim]; pairs];
        for ((i, j, k), c) in entries {
            for index in [i, j, k] {
                if index >= dim {
                    return Err(Error::IndexOutOfRange { index, dim });
                }
            }
            if i == j {
                if c.is_zero() {
                    continue;
                }
                return Err(Error::InvalidStructureConstants(format!("c_{{{i}{i}}}^{k} must vanish by antisymmetry")));
            }
            let (a, b, value) = if i < j { (i, j, c) } else { (j, i, -c) };
            let p = pair_index(dim, a, b);
            if set[p][k] && upper[p][k] != value {
                return Err(Error::InvalidStructureConstants(format!("conflicting values for c_{{{a}{b}}}^{k}")));
            }
            set[p][k] = true;
            upper[p][k] = value;
        }
        let out = StructureConstants { dim, upper };
        if let Some((i, j, l)) = out.jacobi_violation() {
            return Err(Error::InvalidStructureConstants(format!("Jacobi identity fails for ({i}, {j}, {l})")));
        }
        Ok(out)
    }

    /// The abelian algebra.
    pub fn abelian(dim: usize) -> Result<Self> {
        Self::new(dim, [])
    }

    /// `so(3)`: `c_12^3 = c_23^1 = c_31^2 = 1`.
    pub fn so3() -> Self {
        let one = BigRational::from_integer(1.into());
        Self::new(3, [((0, 1, 2), one.clone()), ((1, 2, 0), one.clone()), ((2, 0, 1), one)])
            .expect("so(3) satisfies Jacobi")
    }

    /// Two-dimensional algebra with `c_12^1 = a`, `c_12^2 = b`.
    pub fn planar(a: BigRational, b: BigRational) -> Self {
        Self::new(2, [((0, 1, 0), a), ((0, 1, 1), b)]).expect("every 2-dimensional bracket is Lie")
    }

    /// Reads constants off a bivector whose coefficients are linear forms.
    pub fn from_linear_bivector(pi: &Multivector) -> Result<Self> {
        require_grade(pi, 2)?;
        let n = pi.dim();
        let mut entries = Vec::new();
        for (b, c) in pi.terms() {
            let p = c
                .as_polynomial()
                .ok_or_else(|| Error::InvalidStructureConstants("coefficients must be linear forms".into()))?;
            let mut idx = b.indices();
            let (i, j) = (idx.next().expect("grade 2"), idx.next().expect("grade 2"));
            for (m, v) in p.terms() {
                if m.degree() != 1 {
                    return Err(Error::InvalidStructureConstants("coefficients must be linear forms".into()));
                }
                let k = m.exponents().iter().position(|&e| e == 1).expect("degree one");
                entries.push(((i, j, k), v.clone()));
            }
        }
        Self::new(n, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `c_ij^k`, antisymmetric in `i, j`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> BigRational {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.upper[pair_index(self.dim, i, j)][k].clone(),
            std::cmp::Ordering::Greater => -self.upper[pair_index(self.dim, j, i)][k].clone(),
            std::cmp::Ordering::Equal => BigRational::zero(),
        }
    }

    /// Some distinct triple violating Jacobi, if any.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for l in j + 1..n {
                    for s in 0..n {
                        let mut acc = BigRational::zero();
                        for m in 0..n {
                            acc += self.get(i, j, m) * self.get(m, l, s);
                            acc += self.get(j, l, m) * self.get(m, i, s);
                            acc += self.get(l, i, m) * self.get(m, j, s);
                        }
                        if !acc.is_zero() {
                            return Some((i, j, l));
                        }
                    }
                }
            }
        }
        None
    }

    /// Constants in the basis `f_i = Σ_a p[i][a] e_a`. Fails when `p` is
    /// singular.
    pub fn change_basis(&self, p: &ExactMatrix) -> Result<Self> {
        let n = self.dim;
        if p.rows() != n || p.cols() != n {
            return Err(Error::InvalidStructureConstants("basis change has wrong shape".into()));
        }
        let q = p.inverse().ok_or_else(|| Error::InvalidStructureConstants("singular basis change".into()))?;
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut bracket = vec![BigRational::zero(); n];
                for a in 0..n {
                    for b in 0..n {
                        let w = p.get(i, a) * p.get(j, b);
                        if w.is_zero() {
                            continue;
                        }
                        for (k, slot) in bracket.iter_mut().enumerate() {
                            let c = self.get(a, b, k);
                            if !c.is_zero() {
                                *slot += &w * c;
                            }
                        }
                    }
                }
                for l in 0..n {
                    let mut v = BigRational::zero();
                    for (k, b) in bracket.iter().enumerate() {
                        if !b.is_zero() {
                            v += b * q.get(k, l);
                        }
                    }
                    entries.push(((i, j, l), v));
                }
            }
        }
        Self::new(n, entries)
    }

    /// Components `Σ_j c_ij^j` of the Lie-Poisson modular field.
    pub fn modular_constants(&self) -> Vec<BigRational> {
        (0..self.dim).map(|i| (0..self.dim).fold(BigRational::zero(), |acc, j| acc + self.get(i, j, j))).collect()
    }
}

/// A grade-2 multivector with vanishing Schouten square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoissonBivector(Multivector);

impl PoissonBivector {
    pub fn new(pi: Multivector) -> Result<Self> {
        require_grade(&pi, 2)?;
        if !jacobi_residual(&pi)?.is_zero() {
            return Err(Error::NotPoisson);
        }
        if pi.is_zero() {
            return Ok(PoissonBivector(Multivector::zero(pi.dim(), 2)));
        }
        Ok(PoissonBivector(pi))
    }

    /// `h ∂x∧∂y` on the plane; every such bivector is Poisson.
    pub fn planar(h: RationalFunc) -> Result<Self> {
        same_dim(2, h.nvars())?;
        let pi = Multivector::blade(2, IndexSet::full(2), h)?;
        Ok(PoissonBivector(if pi.is_zero() { Multivector::zero(2, 2) } else { pi }))
    }

    pub fn as_multivector(&self) -> &Multivector {
        &self.0
    }

    pub fn into_inner(self) -> Multivector {
        self.0
    }

    /// `π^{ij}`, antisymmetric.
    pub fn component(&self, i: usize, j: usize) -> RationalFunc {
        bivector_component(&self.0, i, j)
    }
}

impl Deref for PoissonBivector {
    type Target = Multivector;
    fn deref(&self) -> &Multivector {
        &self.0
    }
}

fn bivector_component(pi: &Multivector, i: usize, j: usize) -> RationalFunc {
    let n = pi.dim();
    match i.cmp(&j) {
        std::cmp::Ordering::Equal => RationalFunc::zero(n),
        std::cmp::Ordering::Less => pi.coefficient(IndexSet::singleton(i).union(IndexSet::singleton(j))),
        std::cmp::Ordering::Greater => -pi.coefficient(IndexSet::singleton(i).union(IndexSet::singleton(j))),
    }
}

/// `[π, π]`; zero exactly when `π` is Poisson.
pub fn jacobi_residual(pi: &Multivector) -> Result<Multivector> {
    require_grade(pi, 2)?;
    let r = schouten(pi, pi)?;
    Ok(if r.is_zero() { Multivector::zero(pi.dim(), 3) } else { r })
}

/// `A_f = i_{df} π`; on `(ℝ², ∂x∧∂y)` this gives `A_x = ∂y`.
pub fn hamiltonian_field(pi: &PoissonBivector, f: &RationalFunc) -> Result<Multivector> {
    same_dim(pi.dim(), f.nvars())?;
    let a = interior_product_vector(&differential(f)?, pi)?;
    Ok(if a.is_zero() { Multivector::zero(pi.dim(), 1) } else { a })
}

/// `X_{π,V} = D_V(π)`.
pub fn modular_field(v: &VolumeForm, pi: &Multivector) -> Result<Multivector> {
    require_grade(pi, 2)?;
    curl(v, pi)
}

/// Modular field for the coordinate volume: `π^i = Σ_j ∂π^{ij}/∂x^j`.
pub fn modular_field_coordinate(pi: &Multivector) -> Result<Multivector> {
    require_grade(pi, 2)?;
    let n = pi.dim();
    let comps = Execution::default().map_range(0..n, |i| -> Result<RationalFunc> {
        let mut acc = RationalFunc::zero(n);
        for j in 0..n {
            acc = &acc + &bivector_component(pi, i, j).partial_derivative(j)?;
        }
        Ok(acc)
    });
    Multivector::vector_field(&comps.into_iter().collect::<Result<Vec<_>>>()?)
}

/// `π_m^i = Σ_j ∂(m π^{ij})/∂x^j`, the coordinate last-multiplier system.
/// Requires the coordinate volume form.
pub fn lm_system_residuals(v: &VolumeForm, m: &RationalFunc, pi: &Multivector) -> Result<Vec<RationalFunc>> {
    require_grade(pi, 2)?;
    same_dim(v.dim(), pi.dim())?;
    same_dim(v.dim(), m.nvars())?;
    if !v.has_unit_density() {
        return Err(Error::NonUnitDensity);
    }
    let scaled = pi.scale(m)?;
    let field = modular_field_coordinate(&if scaled.is_zero() { Multivector::zero(pi.dim(), 2) } else { scaled })?;
    Ok((0..pi.dim()).map(|i| field.coefficient(IndexSet::singleton(i))).collect())
}

/// Lie-Poisson bivector `π^{ij} = Σ_k c_ij^k x_k`.
pub fn lie_poisson(c: &StructureConstants) -> PoissonBivector {
    let n = c.dim();
    let mut terms = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let coeff = Polynomial::from_terms(n, (0..n).map(|k| (Monomial::var_power(n, k, 1), c.get(i, j, k))));
            terms.push((IndexSet::singleton(i).union(IndexSet::singleton(j)), RationalFunc::from_poly(coeff)));
        }
    }
    let pi = Multivector::from_terms(n, 2, terms).expect("valid blades");
    debug_assert!(jacobi_residual(&pi).map(|r| r.is_zero()).unwrap_or(false));
    PoissonBivector(if pi.is_zero() { Multivector::zero(n, 2) } else { pi })
}

/// Outcome of the bounded unimodularity search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Unimodularity {
    /// `ρ` with `A_ρ` equal to the modular field.
    Witness(RationalFunc),
    /// No polynomial `ρ` of degree at most `max_degree` works. This does
    /// not decide unimodularity.
    NoneInAnsatz { max_degree: u32 },
}

impl Unimodularity {
    pub fn witness(&self) -> Option<&RationalFunc> {
        match self {
            Unimodularity::Witness(r) => Some(r),
            Unimodularity::NoneInAnsatz { .. } => None,
        }
    }
}

/// Searches polynomial `ρ` of degree at most `max_degree` whose Hamiltonian
/// field is the modular field.
pub fn unimodularity_check(v: &VolumeForm, pi: &PoissonBivector, max_degree: u32) -> Result<Unimodularity> {
    same_dim(v.dim(), pi.dim())?;
    let n = pi.dim();
    let target = modular_field(v, pi)?;
    if target.is_zero() {
        return Ok(Unimodularity::Witness(RationalFunc::zero(n)));
    }
    let space = AnsatzSpace::polynomial(n, max_degree);
    let found = solve_affine(space.basis(), |rho| hamiltonian_field(pi, rho), &target, Execution::default())?;
    Ok(match found {
        Some(rho) => Unimodularity::Witness(rho),
        None => Unimodularity::NoneInAnsatz { max_degree },
    })
}

/// `1/h`, the last multiplier of `h ∂x∧∂y` for the coordinate volume.
pub fn two_dim_multiplier(h: &RationalFunc) -> Result<RationalFunc> {
    if h.is_zero() {
        return Err(Error::ZeroFunction);
    }
    h.recip()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    fn var(n: usize, i: usize) -> RationalFunc {
        RationalFunc::variable(n, i).unwrap()
    }

    fn e(n: usize, idx: &[usize]) -> Multivector {
        Multivector::basis(n, idx).unwrap()
    }

    fn so3_bivector() -> Multivector {
        // x3 ∂1∧∂2 + x1 ∂2∧∂3 + x2 ∂3∧∂1
        let n = 3;
        let a = e(n, &[0, 1]).scale(&var(n, 2)).unwrap();
        let b = e(n, &[1, 2]).scale(&var(n, 0)).unwrap();
        let c = e(n, &[0, 2]).scale(&-var(n, 1)).unwrap();
        a.try_add(&b).unwrap().try_add(&c).unwrap()
    }

    fn h_example() -> RationalFunc {
        let (x, y) = (var(2, 0), var(2, 1));
        &(&(&x * &x) + &(&y * &y)) + &RationalFunc::one(2)
    }

    #[test]
    fn jacobi_examples() {
        let planar = e(2, &[0, 1]).scale(&h_example()).unwrap();
        assert!(jacobi_residual(&planar).unwrap().is_zero());
        assert!(jacobi_residual(&so3_bivector()).unwrap().is_zero());
        let n = 3;
        // x3 ∂1∧∂2 + x2 ∂1∧∂3 = ∂1 ∧ (x3 ∂2 + x2 ∂3) with commuting factors.
        let split =
            e(n, &[0, 1]).scale(&var(n, 2)).unwrap().try_add(&e(n, &[0, 2]).scale(&var(n, 1)).unwrap()).unwrap();
        assert!(jacobi_residual(&split).unwrap().is_zero());
        let bad = e(n, &[0, 1]).scale(&var(n, 2)).unwrap().try_add(&e(n, &[0, 2]).scale(&var(n, 0)).unwrap()).unwrap();
        let r = jacobi_residual(&bad).unwrap();
        assert!(!r.is_zero());
        assert_eq!(r.grade(), 3);
        assert_eq!(PoissonBivector::new(bad), Err(Error::NotPoisson));
        assert!(jacobi_residual(&e(2, &[0])).is_err());
    }

    #[test]
    fn hamiltonian_examples() {
        let pi = PoissonBivector::planar(RationalFunc::one(2)).unwrap();
        assert_eq!(hamiltonian_field(&pi, &var(2, 0)).unwrap(), e(2, &[1]));
        let pi = PoissonBivector::planar(h_example()).unwrap();
        let a = hamiltonian_field(&pi, &RationalFunc::from_int(2, 5)).unwrap();
        assert!(a.is_zero());
        assert_eq!(a.grade(), 1);
    }

    #[test]
    fn modular_field_examples() {
        let v = VolumeForm::unit(2);
        let pi = PoissonBivector::planar(h_example()).unwrap();
        let expected = Multivector::vector_field(&[var(2, 1).scale(&q(2)), var(2, 0).scale(&q(-2))]).unwrap();
        assert_eq!(modular_field(&v, &pi).unwrap(), expected);
        assert_eq!(modular_field_coordinate(&pi).unwrap(), expected);

        let so3 = lie_poisson(&StructureConstants::so3());
        assert!(modular_field(&VolumeForm::unit(3), &so3).unwrap().is_zero());

        let case2 = lie_poisson(&StructureConstants::planar(q(1), q(0)));
        assert_eq!(modular_field(&v, &case2).unwrap(), e(2, &[1]).neg());
    }

    #[test]
    fn lie_poisson_examples() {
        assert_eq!(lie_poisson(&StructureConstants::so3()).into_inner(), so3_bivector());
        assert!(lie_poisson(&StructureConstants::abelian(3).unwrap()).is_zero());
        let case2 = lie_poisson(&StructureConstants::planar(q(1), q(0)));
        assert_eq!(case2.into_inner(), e(2, &[0, 1]).scale(&var(2, 0)).unwrap());
        assert_eq!(StructureConstants::from_linear_bivector(&so3_bivector()).unwrap(), StructureConstants::so3());
    }

    #[test]
    fn structure_constants_validation() {
        // [e1,e2] = e3, [e1,e3] = e1 violates Jacobi.
        let r = StructureConstants::new(3, [((0, 1, 2), q(1)), ((0, 2, 0), q(1))]);
        assert!(matches!(r, Err(Error::InvalidStructureConstants(_))));
        let r = StructureConstants::new(2, [((0, 0, 1), q(1))]);
        assert!(matches!(r, Err(Error::InvalidStructureConstants(_))));
        let c = StructureConstants::new(2, [((1, 0, 0), q(3))]).unwrap();
        assert_eq!(c.get(0, 1, 0), q(-3));
        assert_eq!(StructureConstants::so3().modular_constants(), vec![q(0); 3]);
        assert_eq!(StructureConstants::planar(q(1), q(0)).modular_constants(), vec![q(0), q(-1)]);
    }

    #[test]
    fn basis_change_keeps_jacobi() {
        let p = ExactMatrix::from_int_rows(&[&[1, 1, 0], &[0, 1, 2], &[1, 0, 1]]);
        let c = StructureConstants::so3().change_basis(&p).unwrap();
        assert!(c.jacobi_violation().is_none());
        assert_eq!(c.change_basis(&p.inverse().unwrap()).unwrap(), StructureConstants::so3());
        let singular = ExactMatrix::from_int_rows(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 1]]);
        assert!(StructureConstants::so3().change_basis(&singular).is_err());
    }

    #[test]
    fn lm_system_examples() {
        let v = VolumeForm::unit(2);
        let h = h_example();
        let pi = PoissonBivector::planar(h.clone()).unwrap();
        let m = two_dim_multiplier(&h).unwrap();
        assert!(lm_system_residuals(&v, &m, &pi).unwrap().iter().all(RationalFunc::is_zero));
        let so3 = lie_poisson(&StructureConstants::so3());
        let r = lm_system_residuals(&VolumeForm::unit(3), &RationalFunc::one(3), &so3).unwrap();
        assert!(r.iter().all(RationalFunc::is_zero));
        let v2 = VolumeForm::new(h.clone()).unwrap();
        assert_eq!(lm_system_residuals(&v2, &m, &pi), Err(Error::NonUnitDensity));
    }

    #[test]
    fn unimodularity_examples() {
        let so3 = lie_poisson(&StructureConstants::so3());
        assert_eq!(
            unimodularity_check(&VolumeForm::unit(3), &so3, 2).unwrap(),
            Unimodularity::Witness(RationalFunc::zero(3))
        );
        let case2 = lie_poisson(&StructureConstants::planar(q(1), q(0)));
        for d in 0..4 {
            assert_eq!(
                unimodularity_check(&VolumeForm::unit(2), &case2, d).unwrap(),
                Unimodularity::NoneInAnsatz { max_degree: d }
            );
        }
        // x ∂x∧∂y + ∂y∧∂z has modular field −∂y = A_z.
        let n = 3;
        let pi = e(n, &[0, 1]).scale(&var(n, 0)).unwrap().try_add(&e(n, &[1, 2])).unwrap();
        let pi = PoissonBivector::new(pi).unwrap();
        let v = VolumeForm::unit(n);
        let w = unimodularity_check(&v, &pi, 2).unwrap();
        let rho = w.witness().expect("witness");
        assert!(!rho.is_zero());
        assert_eq!(hamiltonian_field(&pi, rho).unwrap(), modular_field(&v, &pi).unwrap());
    }

    #[test]
    fn two_dim_multiplier_examples() {
        assert_eq!(two_dim_multiplier(&RationalFunc::one(2)).unwrap(), RationalFunc::one(2));
        assert_eq!(two_dim_multiplier(&var(2, 0)).unwrap(), var(2, 0).recip().unwrap());
        assert_eq!(two_dim_multiplier(&RationalFunc::zero(2)), Err(Error::ZeroFunction));
    }
}
