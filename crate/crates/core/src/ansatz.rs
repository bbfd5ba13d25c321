//! Exact linear algebra over finite ansatz spaces.
//!
//! A map that is linear in the unknown function or multivector is evaluated
//! on every basis element; the images are expanded over (blade, monomial)
//! pairs after clearing denominators blade by blade, giving an
//! [`ExactMatrix`] whose nullspace is the solution space.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::curl::{curl, schouten};
use crate::error::{same_dim, Error, Result};
use crate::exec::Execution;
use crate::exterior::{IndexSet, Multivector, VolumeForm};
use crate::poisson::PoissonBivector;
use crate::poly::{Monomial, Polynomial};
use crate::rational::RationalFunc;

/// Finite-dimensional space of candidate functions: monomials of degree at
/// most `max_degree`, optionally divided by a fixed denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnsatzSpace {
    dim: usize,
    max_degree: u32,
    denominator: Option<RationalFunc>,
    monomials: Vec<Monomial>,
    basis: Vec<RationalFunc>,
}

impl AnsatzSpace {
    pub fn polynomial(dim: usize, max_degree: u32) -> Self {
        let monomials = Monomial::all_up_to(dim, max_degree);
        let basis = monomials
            .iter()
            .map(|m| RationalFunc::from_poly(Polynomial::monomial(m.clone(), BigRational::one())))
            .collect();
        AnsatzSpace { dim, max_degree, denominator: None, monomials, basis }
    }

    /// Numerators of degree at most `max_degree` over the fixed `q`.
    pub fn with_denominator(dim: usize, max_degree: u32, q: &RationalFunc) -> Result<Self> {
        same_dim(dim, q.nvars())?;
        let inv = q.recip()?;
        let mut space = Self::polynomial(dim, max_degree);
        space.basis = space.basis.iter().map(|b| b * &inv).collect();
        space.denominator = Some(q.clone());
        Ok(space)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn denominator(&self) -> Option<&RationalFunc> {
        self.denominator.as_ref()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn basis(&self) -> &[RationalFunc] {
        &self.basis
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Same span, basis in the opposite order.
    pub fn reversed(&self) -> Self {
        let mut out = self.clone();
        out.monomials.reverse();
        out.basis.reverse();
        out
    }

    pub fn combine(&self, coeffs: &[BigRational]) -> RationalFunc {
        combine(&self.basis, coeffs)
    }
}

/// Elements that can be added and scaled, so a linear map over a basis of
/// them can be spot-checked and solutions reassembled.
pub trait LinearElement: Clone + Send + Sync {
    fn zero_like(&self) -> Self;
    fn add(&self, other: &Self) -> Result<Self>;
    fn scale_by(&self, c: &BigRational) -> Self;
    fn to_multivector(&self) -> Multivector;
}

impl LinearElement for RationalFunc {
    fn zero_like(&self) -> Self {
        RationalFunc::zero(self.nvars())
    }

    fn add(&self, other: &Self) -> Result<Self> {
        self.try_add(other)
    }

    fn scale_by(&self, c: &BigRational) -> Self {
        self.scale(c)
    }

    fn to_multivector(&self) -> Multivector {
        Multivector::scalar(self.clone())
    }
}

impl LinearElement for Multivector {
    fn zero_like(&self) -> Self {
        Multivector::zero(self.dim(), self.grade())
    }

    fn add(&self, other: &Self) -> Result<Self> {
        self.try_add(other)
    }

    fn scale_by(&self, c: &BigRational) -> Self {
        self.scale_rational(c)
    }

    fn to_multivector(&self) -> Multivector {
        self.clone()
    }
}

fn combine<T: LinearElement>(basis: &[T], coeffs: &[BigRational]) -> T {
    let mut acc = basis[0].zero_like();
    for (b, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = acc.add(&b.scale_by(c)).expect("basis elements share a shape");
        }
    }
    acc
}

/// Dense matrix of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        ExactMatrix { rows: rows.len(), cols, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|r| {
                let mut acc = BigRational::zero();
                for (c, x) in v.iter().enumerate() {
                    let a = self.get(r, c);
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m: Vec<Vec<BigRational>> =
            (0..self.rows).map(|r| self.entries[r * self.cols..(r + 1) * self.cols].to_vec()).collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == m.len() {
                break;
            }
            let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, p);
            let inv = m[row][col].recip();
            for x in m[row].iter_mut().skip(col) {
                *x *= &inv;
            }
            let pivot_row = m[row].clone();
            for (r, other) in m.iter_mut().enumerate() {
                if r == row || other[col].is_zero() {
                    continue;
                }
                let f = other[col].clone();
                for (x, p) in other.iter_mut().zip(&pivot_row).skip(col) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let rows = self.rows;
        let out = ExactMatrix { rows, cols: self.cols, entries: m.into_iter().flatten().collect() };
        (out, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : M v = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f).clone();
                }
                v
            })
            .collect()
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<ExactMatrix> {
        assert_eq!(self.rows, self.cols, "square matrix");
        let n = self.rows;
        let mut aug = ExactMatrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, BigRational::one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut out = ExactMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, red.get(r, n + c).clone());
            }
        }
        Some(out)
    }

    /// Some `v` with `M v = target`, free unknowns set to zero.
    pub fn solve(&self, target: &[BigRational]) -> Option<Vec<BigRational>> {
        assert_eq!(target.len(), self.rows, "target length");
        let mut aug = ExactMatrix::zeros(self.rows, self.cols + 1);
        for (r, t) in target.iter().enumerate() {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, t.clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut v = vec![BigRational::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = red.get(i, self.cols).clone();
        }
        Some(v)
    }
}

fn lcm(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_constant() {
        return b.clone();
    }
    if b.is_constant() {
        return a.clone();
    }
    let g = a.gcd(b);
    (&a.exact_div(&g).expect("gcd divides") * b).primitive()
}

/// Expands each multivector over (blade, monomial) pairs, one column per
/// input. Denominators are cleared per blade with the lcm across columns.
pub fn matrix_from_columns(columns: &[Multivector]) -> Result<ExactMatrix> {
    let Some(first) = columns.first() else {
        return Ok(ExactMatrix::zeros(0, 0));
    };
    let n = first.dim();
    let mut grade = None;
    let mut lcms: BTreeMap<IndexSet, Polynomial> = BTreeMap::new();
    for col in columns {
        same_dim(n, col.dim())?;
        if col.is_zero() {
            continue;
        }
        match grade {
            None => grade = Some(col.grade()),
            Some(g) if g != col.grade() => return Err(Error::GradeMismatch { expected: g, found: col.grade() }),
            _ => {}
        }
        for (b, c) in col.terms() {
            let entry = lcms.entry(*b).or_insert_with(|| Polynomial::one(n));
            *entry = lcm(entry, c.denominator());
        }
    }
    let mut rows: BTreeMap<(IndexSet, Monomial), usize> = BTreeMap::new();
    let mut expanded: Vec<Vec<(IndexSet, Polynomial)>> = Vec::with_capacity(columns.len());
    for col in columns {
        let mut parts = Vec::new();
        for (b, c) in col.terms() {
            let l = &lcms[b];
            let factor = l.exact_div(c.denominator()).expect("lcm is a multiple");
            let p = &factor * c.numerator();
            for (m, _) in p.terms() {
                let next = rows.len();
                rows.entry((*b, m.clone())).or_insert(next);
            }
            parts.push((*b, p));
        }
        expanded.push(parts);
    }
    // Renumber rows in (blade, monomial) order.
    for (i, slot) in rows.values_mut().enumerate() {
        *slot = i;
    }
    let mut m = ExactMatrix::zeros(rows.len(), columns.len());
    for (j, parts) in expanded.into_iter().enumerate() {
        for (b, p) in parts {
            for (mono, c) in p.terms() {
                m.set(rows[&(b, mono.clone())], j, c.clone());
            }
        }
    }
    Ok(m)
}

/// Evaluates `map` on every basis element and assembles the coefficient
/// matrix. The map is spot-checked for additivity and homogeneity first.
pub fn collect_linear_system<T, F>(basis: &[T], map: F, exec: Execution) -> Result<ExactMatrix>
where
    T: LinearElement,
    F: Fn(&T) -> Result<Multivector> + Sync + Send,
{
    check_linear(basis, &map)?;
    let images = exec.try_map(basis, &map)?;
    matrix_from_columns(&images)
}

fn check_linear<T, F>(basis: &[T], map: &F) -> Result<()>
where
    T: LinearElement,
    F: Fn(&T) -> Result<Multivector>,
{
    if basis.is_empty() {
        return Ok(());
    }
    let two = BigRational::from_integer(2.into());
    let a = &basis[0];
    let b = &basis[basis.len() / 2];
    let c = &basis[basis.len() - 1];
    let fa = map(a)?;
    let scaled_ok = map(&a.scale_by(&two))? == fa.scale_rational(&two);
    let sum = a.add(b)?.add(c)?;
    let additive_ok = map(&sum)? == fa.try_add(&map(b)?)?.try_add(&map(c)?)?;
    if scaled_ok && additive_ok {
        Ok(())
    } else {
        Err(Error::NonLinearMap)
    }
}

/// Basis of the kernel of `map` within `span(basis)`.
pub fn solve_homogeneous<T, F>(basis: &[T], map: F, exec: Execution) -> Result<Vec<T>>
where
    T: LinearElement,
    F: Fn(&T) -> Result<Multivector> + Sync + Send,
{
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let m = collect_linear_system(basis, map, exec)?;
    Ok(m.nullspace().iter().map(|v| combine(basis, v)).collect())
}

/// Some element of `span(basis)` mapped onto `target`, if one exists.
pub fn solve_affine<T, F>(basis: &[T], map: F, target: &Multivector, exec: Execution) -> Result<Option<T>>
where
    T: LinearElement,
    F: Fn(&T) -> Result<Multivector> + Sync + Send,
{
    if basis.is_empty() {
        return Ok(None);
    }
    check_linear(basis, &map)?;
    let mut columns = exec.try_map(basis, &map)?;
    columns.push(target.clone());
    let full = matrix_from_columns(&columns)?;
    let k = basis.len();
    let mut m = ExactMatrix::zeros(full.rows(), k);
    let mut t = Vec::with_capacity(full.rows());
    for r in 0..full.rows() {
        for c in 0..k {
            m.set(r, c, full.get(r, c).clone());
        }
        t.push(full.get(r, k).clone());
    }
    Ok(m.solve(&t).map(|v| combine(basis, &v)))
}

/// Dimension of the span of `items`.
pub fn span_dimension<T: LinearElement>(items: &[T]) -> Result<usize> {
    if items.is_empty() {
        return Ok(0);
    }
    let cols: Vec<Multivector> = items.iter().map(LinearElement::to_multivector).collect();
    Ok(matrix_from_columns(&cols)?.rank())
}

/// Whether two families span the same space.
pub fn same_span<T: LinearElement>(a: &[T], b: &[T]) -> Result<bool> {
    let joint: Vec<T> = a.iter().chain(b).cloned().collect();
    let (ra, rb, rj) = (span_dimension(a)?, span_dimension(b)?, span_dimension(&joint)?);
    Ok(ra == rj && rb == rj)
}

/// Whether `x` lies in the span of `family`.
pub fn in_span<T: LinearElement>(family: &[T], x: &T) -> Result<bool> {
    let mut joint = family.to_vec();
    joint.push(x.clone());
    Ok(span_dimension(family)? == span_dimension(&joint)?)
}

/// Last multipliers of `a` within the ansatz: `{m : D_V(m A) = 0}`.
pub fn lm_solve(v: &VolumeForm, a: &Multivector, space: &AnsatzSpace) -> Result<Vec<RationalFunc>> {
    same_dim(v.dim(), a.dim())?;
    same_dim(v.dim(), space.dim())?;
    if a.grade() == 0 {
        return Err(Error::GradeMismatch { expected: 1, found: 0 });
    }
    solve_homogeneous(space.basis(), |m| curl(v, &a.scale(m)?), Execution::default())
}

/// Casimir functions within the ansatz: `{f : [π, f] = 0}`.
pub fn casimir_solve(pi: &PoissonBivector, space: &AnsatzSpace) -> Result<Vec<RationalFunc>> {
    same_dim(pi.dim(), space.dim())?;
    solve_homogeneous(space.basis(), |f| schouten(pi, &Multivector::scalar(f.clone())), Execution::default())
}

/// Grade-`k` multivectors with polynomial coefficients of degree at most
/// `d`, ordered by blade and then by monomial.
pub fn multivector_basis(dim: usize, k: usize, d: u32) -> Vec<Multivector> {
    let monomials = Monomial::all_up_to(dim, d);
    let mut out = Vec::new();
    for bits in 0u32..(1 << dim) {
        let b = IndexSet::from_bits(bits as u16);
        if b.grade() != k {
            continue;
        }
        for m in &monomials {
            let c = RationalFunc::from_poly(Polynomial::monomial(m.clone(), BigRational::one()));
            out.push(Multivector::blade(dim, b, c).expect("blade in range"));
        }
    }
    out.sort_by(|x, y| {
        let (bx, by) = (first_blade(x), first_blade(y));
        bx.cmp(&by)
    });
    out
}

fn first_blade(a: &Multivector) -> IndexSet {
    *a.terms().next().expect("basis element is non-zero").0
}
