//! Multivector fields and differential forms on a coordinate chart.
//!
//! Basis blades `∂_{i1}∧…∧∂_{ik}` and `dx^{i1}∧…∧dx^{ik}` are indexed by an
//! [`IndexSet`] bitmask. The duality pairing is the determinant convention:
//! `⟨dx^I, ∂_J⟩ = 1` when `I = J` as sorted sets and `0` otherwise. Every
//! contraction sign below is derived from that single convention.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{same_dim, Error, Result};
use crate::rational::RationalFunc;

pub const MAX_DIM: usize = 16;

/// Coordinate chart `(x1, …, xn)` with named coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Chart {
    names: Vec<String>,
}

impl Chart {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() || names.len() > MAX_DIM {
            return Err(Error::InvalidChart(format!("dimension {} outside 1..={MAX_DIM}", names.len())));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::InvalidChart(format!("duplicate coordinate `{a}`")));
            }
        }
        Ok(Chart { names })
    }

    /// Chart with coordinates `x1, …, xn`.
    pub fn standard(dim: usize) -> Result<Self> {
        Self::new((1..=dim).map(|i| format!("x{i}")))
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Strictly increasing index tuple `i1 < … < ik`, stored as a bitmask
/// (bit `i` is coordinate `i`, 0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct IndexSet(u16);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    pub fn from_bits(bits: u16) -> Self {
        IndexSet(bits)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn singleton(i: usize) -> Self {
        IndexSet(1 << i)
    }

    /// Set built from 0-based indices; duplicates are rejected.
    pub fn from_indices(indices: &[usize], dim: usize) -> Result<Self> {
        let mut bits = 0u16;
        for &i in indices {
            if i >= dim {
                return Err(Error::IndexOutOfRange { index: i, dim });
            }
            if bits & (1 << i) != 0 {
                return Err(Error::InvalidChart(format!("repeated index {i}")));
            }
            bits |= 1 << i;
        }
        Ok(IndexSet(bits))
    }

    pub fn full(dim: usize) -> Self {
        IndexSet(((1u32 << dim) - 1) as u16)
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn is_subset(self, other: IndexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: IndexSet) -> IndexSet {
        IndexSet(self.0 | other.0)
    }

    pub fn difference(self, other: IndexSet) -> IndexSet {
        IndexSet(self.0 & !other.0)
    }

    pub fn complement(self, dim: usize) -> IndexSet {
        IndexSet::full(dim).difference(self)
    }

    /// Indices in ascending order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..MAX_DIM).filter(move |&i| self.contains(i))
    }

    /// Sign `s` with `e_self ∧ e_other = s · e_{self ∪ other}`, or `None`
    /// when the sets overlap (the wedge vanishes).
    pub fn wedge_sign(self, other: IndexSet) -> Option<i32> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // count inversions: pairs (i in self, j in other) with i > j
        let mut inversions = 0u32;
        for j in other.indices() {
            let above = self.0 & !((1u32 << (j + 1)) - 1) as u16;
            inversions += above.count_ones();
        }
        Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
    }
}

impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grade().cmp(&other.grade()).then_with(|| self.indices().cmp(other.indices()))
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Marker distinguishing multivectors from differential forms.
pub trait BladeKind: fmt::Debug + Clone + Copy + PartialEq + Eq + Hash + Send + Sync + 'static {
    const NAME: &'static str;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Vectors;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Forms;

impl BladeKind for Vectors {
    const NAME: &'static str = "multivector";
}

impl BladeKind for Forms {
    const NAME: &'static str = "form";
}

/// Homogeneous sparse sum of basis blades with rational-function
/// coefficients. No stored coefficient is zero.
///
/// A zero object keeps its grade so that degenerate results stay typed;
/// that grade may exceed the dimension (e.g. a wedge whose grades sum past
/// `n`). Zero objects compare equal regardless of grade.
#[derive(Debug, Clone)]
pub struct Graded<K: BladeKind> {
    dim: usize,
    grade: usize,
    terms: BTreeMap<IndexSet, RationalFunc>,
    kind: PhantomData<K>,
}

pub type Multivector = Graded<Vectors>;
pub type DifferentialForm = Graded<Forms>;

impl<K: BladeKind> PartialEq for Graded<K> {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.terms == other.terms && (self.grade == other.grade || self.terms.is_empty())
    }
}

impl<K: BladeKind> Eq for Graded<K> {}

impl<K: BladeKind> Graded<K> {
    pub fn zero(dim: usize, grade: usize) -> Self {
        Graded { dim, grade, terms: BTreeMap::new(), kind: PhantomData }
    }

    /// Grade-0 object holding a function.
    pub fn scalar(f: RationalFunc) -> Self {
        let mut g = Self::zero(f.nvars(), 0);
        g.insert(IndexSet::EMPTY, f);
        g
    }

    pub fn blade(dim: usize, blade: IndexSet, coeff: RationalFunc) -> Result<Self> {
        Self::from_terms(dim, blade.grade(), [(blade, coeff)])
    }

    /// Unit-coefficient blade on 0-based indices, e.g. `[0, 1]` is `∂1∧∂2`.
    pub fn basis(dim: usize, indices: &[usize]) -> Result<Self> {
        let b = IndexSet::from_indices(indices, dim)?;
        Self::blade(dim, b, RationalFunc::one(dim))
    }

    pub fn from_terms(
        dim: usize,
        grade: usize,
        terms: impl IntoIterator<Item = (IndexSet, RationalFunc)>,
    ) -> Result<Self> {
        let mut g = Self::zero(dim, grade);
        for (b, c) in terms {
            same_dim(dim, c.nvars())?;
            if b.grade() != grade {
                return Err(Error::GradeMismatch { expected: grade, found: b.grade() });
            }
            if (b.bits() as u32) >> dim != 0 {
                return Err(Error::IndexOutOfRange { index: 15 - b.bits().leading_zeros() as usize, dim });
            }
            g.accumulate(b, c);
        }
        Ok(g)
    }

    fn insert(&mut self, b: IndexSet, c: RationalFunc) {
        if !c.is_zero() {
            self.terms.insert(b, c);
        }
    }

    fn accumulate(&mut self, b: IndexSet, c: RationalFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&b) {
            Some(old) => {
                let s = &old + &c;
                self.insert(b, s);
            }
            None => {
                self.terms.insert(b, c);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending blade order.
    pub fn terms(&self) -> impl Iterator<Item = (&IndexSet, &RationalFunc)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, b: IndexSet) -> RationalFunc {
        self.terms.get(&b).cloned().unwrap_or_else(|| RationalFunc::zero(self.dim))
    }

    /// The function held by a grade-0 object (zero for any zero object).
    pub fn as_scalar(&self) -> Option<RationalFunc> {
        if self.is_zero() {
            return Some(RationalFunc::zero(self.dim));
        }
        (self.grade == 0).then(|| self.coefficient(IndexSet::EMPTY))
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.values().all(RationalFunc::is_polynomial)
    }

    /// Highest total degree among polynomial coefficients.
    pub fn coefficient_degree(&self) -> Result<u32> {
        self.terms
            .values()
            .map(|c| {
                c.as_polynomial()
                    .map(|p| p.total_degree())
                    .ok_or(Error::NotPolynomial("coefficient has a non-constant denominator"))
            })
            .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        same_dim(self.dim, other.dim)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if self.grade != other.grade {
            return Err(Error::GradeMismatch { expected: self.grade, found: other.grade });
        }
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.accumulate(*b, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coefficients(|c| Ok(-c)).expect("negation is total")
    }

    /// Multiplication by a function (module structure over `C^∞`).
    pub fn scale(&self, f: &RationalFunc) -> Result<Self> {
        same_dim(self.dim, f.nvars())?;
        self.map_coefficients(|c| Ok(c * f))
    }

    pub fn scale_rational(&self, c: &BigRational) -> Self {
        self.map_coefficients(|x| Ok(x.scale(c))).expect("scaling is total")
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coefficients(&self, f: impl Fn(&RationalFunc) -> Result<RationalFunc>) -> Result<Self> {
        let mut out = Self::zero(self.dim, self.grade);
        for (b, c) in &self.terms {
            out.insert(*b, f(c)?);
        }
        Ok(out)
    }

    /// Coefficient-wise partial derivative `∂/∂x_i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Self> {
        self.map_coefficients(|c| c.partial_derivative(i))
    }

    /// Grassmann wedge product.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        same_dim(self.dim, other.dim)?;
        let mut out = Self::zero(self.dim, self.grade + other.grade);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some(s) = a.wedge_sign(*b) {
                    let c = ca * cb;
                    out.accumulate(a.union(*b), if s < 0 { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// Sum over a collection of same-grade objects.
    pub fn sum<'a>(dim: usize, grade: usize, items: impl IntoIterator<Item = &'a Self>) -> Result<Self> {
        items.into_iter().try_fold(Self::zero(dim, grade), |acc, x| acc.try_add(x))
    }
}

/// Top-degree form `f · dx1∧…∧dxn` with `f ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumeForm {
    density: RationalFunc,
}

impl VolumeForm {
    pub fn new(density: RationalFunc) -> Result<Self> {
        if density.is_zero() {
            return Err(Error::ZeroFunction);
        }
        Ok(VolumeForm { density })
    }

    pub fn unit(dim: usize) -> Self {
        VolumeForm { density: RationalFunc::one(dim) }
    }

    pub fn density(&self) -> &RationalFunc {
        &self.density
    }

    pub fn dim(&self) -> usize {
        self.density.nvars()
    }

    pub fn has_unit_density(&self) -> bool {
        self.density.is_one()
    }

    /// The volume `m · V`.
    pub fn scaled(&self, m: &RationalFunc) -> Result<Self> {
        same_dim(self.dim(), m.nvars())?;
        Self::new(&self.density * m)
    }

    pub fn as_form(&self) -> DifferentialForm {
        let n = self.dim();
        DifferentialForm::blade(n, IndexSet::full(n), self.density.clone()).expect("full blade is valid")
    }
}

/// `⟨ω, A⟩`; zero when the degrees differ.
pub fn pairing(omega: &DifferentialForm, a: &Multivector) -> Result<RationalFunc> {
    same_dim(omega.dim(), a.dim())?;
    let mut acc = RationalFunc::zero(a.dim());
    if omega.grade() != a.grade() {
        return Ok(acc);
    }
    for (b, c) in omega.terms() {
        if let Some(ca) = a.terms.get(b) {
            acc = &acc + &(c * ca);
        }
    }
    Ok(acc)
}

/// `i_A ω`, characterized by `⟨i_A ω, B⟩ = ⟨ω, A ∧ B⟩`. Vanishes when
/// `deg ω < grade A`.
pub fn interior_product_form(a: &Multivector, omega: &DifferentialForm) -> Result<DifferentialForm> {
    same_dim(omega.dim(), a.dim())?;
    if omega.grade() < a.grade() {
        return Ok(DifferentialForm::zero(a.dim(), 0));
    }
    let mut out = DifferentialForm::zero(a.dim(), omega.grade() - a.grade());
    for (j, ca) in a.terms() {
        for (i, cw) in omega.terms() {
            if !j.is_subset(*i) {
                continue;
            }
            let rest = i.difference(*j);
            let s = j.wedge_sign(rest).expect("disjoint");
            let c = ca * cw;
            out.accumulate(rest, if s < 0 { -c } else { c });
        }
    }
    Ok(out)
}

/// `i_ω A`, characterized by `⟨η, i_ω A⟩ = ⟨ω ∧ η, A⟩`. Vanishes when
/// `grade A < deg ω`.
pub fn interior_product_vector(omega: &DifferentialForm, a: &Multivector) -> Result<Multivector> {
    same_dim(omega.dim(), a.dim())?;
    if a.grade() < omega.grade() {
        return Ok(Multivector::zero(a.dim(), 0));
    }
    let mut out = Multivector::zero(a.dim(), a.grade() - omega.grade());
    for (j, cw) in omega.terms() {
        for (i, ca) in a.terms() {
            if !j.is_subset(*i) {
                continue;
            }
            let rest = i.difference(*j);
            let s = j.wedge_sign(rest).expect("disjoint");
            let c = cw * ca;
            out.accumulate(rest, if s < 0 { -c } else { c });
        }
    }
    Ok(out)
}

/// `V♭(A) = i_A V`.
pub fn flat(v: &VolumeForm, a: &Multivector) -> Result<DifferentialForm> {
    same_dim(v.dim(), a.dim())?;
    interior_product_form(a, &v.as_form())
}

/// `V♮`, the inverse of [`flat`].
pub fn sharp(v: &VolumeForm, omega: &DifferentialForm) -> Result<Multivector> {
    let n = v.dim();
    same_dim(n, omega.dim())?;
    if omega.grade() > n {
        return Ok(Multivector::zero(n, 0));
    }
    let inv = v.density().recip()?;
    let mut out = Multivector::zero(n, n - omega.grade());
    for (k, c) in omega.terms() {
        let j = k.complement(n);
        // i_{∂_J}(f dx^{1..n}) = s f dx^K, so the coefficient is s c / f
        let s = j.wedge_sign(*k).expect("complement is disjoint");
        let coeff = c * &inv;
        out.insert(j, if s < 0 { -coeff } else { coeff });
    }
    Ok(out)
}

/// `d f` for a function.
pub fn differential(f: &RationalFunc) -> Result<DifferentialForm> {
    exterior_derivative(&DifferentialForm::scalar(f.clone()))
}

pub fn exterior_derivative(omega: &DifferentialForm) -> Result<DifferentialForm> {
    let n = omega.dim();
    let mut out = DifferentialForm::zero(n, omega.grade() + 1);
    for (k, c) in omega.terms() {
        for i in 0..n {
            let Some(s) = IndexSet::singleton(i).wedge_sign(*k) else {
                continue;
            };
            let dc = c.partial_derivative(i)?;
            out.accumulate(IndexSet::singleton(i).union(*k), if s < 0 { -dc } else { dc });
        }
    }
    Ok(out)
}

/// Witten deformation `d_{tf} ω = t df ∧ ω + dω`.
pub fn witten_derivative(t: &BigRational, f: &RationalFunc, omega: &DifferentialForm) -> Result<DifferentialForm> {
    same_dim(f.nvars(), omega.dim())?;
    let d_omega = exterior_derivative(omega)?;
    if t.is_zero() {
        return Ok(d_omega);
    }
    let df = differential(&f.scale(t))?;
    df.wedge(omega)?.try_add(&d_omega)
}

/// Marsden differential `d^f ω = (1/f) d(f ω)`.
pub fn marsden_derivative(f: &RationalFunc, omega: &DifferentialForm) -> Result<DifferentialForm> {
    same_dim(f.nvars(), omega.dim())?;
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    exterior_derivative(&omega.scale(f)?)?.scale(&f.recip()?)
}

impl Multivector {
    /// `X(f) = Σ X^i ∂f/∂x^i` for a vector field `X`.
    pub fn apply_to(&self, f: &RationalFunc) -> Result<RationalFunc> {
        same_dim(self.dim(), f.nvars())?;
        if self.is_zero() {
            return Ok(RationalFunc::zero(self.dim()));
        }
        if self.grade() != 1 {
            return Err(Error::GradeMismatch { expected: 1, found: self.grade() });
        }
        let mut acc = RationalFunc::zero(self.dim());
        for (b, c) in self.terms() {
            let i = b.indices().next().expect("grade-1 blade");
            acc = &acc + &(c * &f.partial_derivative(i)?);
        }
        Ok(acc)
    }

    /// Vector field `Σ components[i] ∂_i`.
    pub fn vector_field(components: &[RationalFunc]) -> Result<Self> {
        let n = components.len();
        Self::from_terms(n, 1, components.iter().enumerate().map(|(i, c)| (IndexSet::singleton(i), c.clone())))
    }
}

impl<K: BladeKind> Graded<K> {
    /// Unit scalar `1` as a grade-0 object.
    pub fn one(dim: usize) -> Self {
        Self::scalar(RationalFunc::one(dim))
    }

    pub fn is_one(&self) -> bool {
        self.grade == 0 && self.coefficient(IndexSet::EMPTY).is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;

    fn var(n: usize, i: usize) -> RationalFunc {
        RationalFunc::variable(n, i).unwrap()
    }

    fn e(n: usize, idx: &[usize]) -> Multivector {
        Multivector::basis(n, idx).unwrap()
    }

    fn d(n: usize, idx: &[usize]) -> DifferentialForm {
        DifferentialForm::basis(n, idx).unwrap()
    }

    #[test]
    fn chart_validation() {
        assert!(Chart::new(["x", "y"]).is_ok());
        assert!(Chart::new(["x", "x"]).is_err());
        assert!(Chart::new(Vec::<String>::new()).is_err());
        assert!(Chart::standard(17).is_err());
        assert_eq!(Chart::standard(3).unwrap().index_of("x2"), Some(1));
    }

    #[test]
    fn wedge_signs_and_annihilation() {
        let xy = e(2, &[0]).wedge(&e(2, &[1])).unwrap();
        assert_eq!(xy, e(2, &[0, 1]));
        let yx = e(2, &[1]).wedge(&e(2, &[0])).unwrap();
        assert_eq!(yx, e(2, &[0, 1]).neg());
        let a = e(2, &[0]).scale(&var(2, 0)).unwrap();
        let b = e(2, &[0]).scale(&var(2, 1)).unwrap();
        assert!(a.wedge(&b).unwrap().is_zero());
        assert_eq!(a.wedge(&b).unwrap().grade(), 2);
    }

    #[test]
    fn wedge_sign_inversions() {
        let s = |a: &[usize], b: &[usize]| {
            IndexSet::from_indices(a, 4).unwrap().wedge_sign(IndexSet::from_indices(b, 4).unwrap())
        };
        assert_eq!(s(&[1, 3], &[0, 2]), Some(-1)); // 3 inversions
        assert_eq!(s(&[2, 3], &[0, 1]), Some(1)); // 4 inversions
        assert_eq!(s(&[0], &[0]), None);
    }

    #[test]
    fn pairing_examples() {
        assert!(pairing(&d(2, &[0, 1]), &e(2, &[0, 1])).unwrap().is_one());
        let yx = e(2, &[1]).wedge(&e(2, &[0])).unwrap();
        assert_eq!(pairing(&d(2, &[0, 1]), &yx).unwrap(), RationalFunc::from_int(2, -1));
        let x2 = &var(2, 0) * &var(2, 0);
        let a = e(2, &[0]).scale(&x2).unwrap().try_add(&e(2, &[1])).unwrap();
        assert_eq!(pairing(&d(2, &[0]), &a).unwrap(), x2);
        // mismatched degrees pair to zero
        assert!(pairing(&d(2, &[0]), &e(2, &[0, 1])).unwrap().is_zero());
    }

    #[test]
    fn interior_products_on_blades() {
        let area = d(2, &[0, 1]);
        assert_eq!(interior_product_form(&e(2, &[0]), &area).unwrap(), d(2, &[1]));
        assert_eq!(interior_product_form(&e(2, &[1]), &area).unwrap(), d(2, &[0]).neg());
        assert!(interior_product_form(&e(2, &[0, 1]), &area).unwrap().is_one());
        // p < k gives zero
        assert!(interior_product_form(&e(2, &[0, 1]), &d(2, &[0])).unwrap().is_zero());

        let biv = e(2, &[0, 1]);
        assert_eq!(interior_product_vector(&d(2, &[0]), &biv).unwrap(), e(2, &[1]));
        assert_eq!(interior_product_vector(&d(2, &[1]), &biv).unwrap(), e(2, &[0]).neg());
        assert!(interior_product_vector(&d(2, &[0]), &e(2, &[1])).unwrap().is_zero());
    }

    #[test]
    fn flat_and_sharp_on_the_plane() {
        let v = VolumeForm::unit(2);
        assert_eq!(flat(&v, &e(2, &[0])).unwrap(), d(2, &[1]));
        assert!(flat(&v, &e(2, &[0, 1])).unwrap().is_one());
        let h = &(&var(2, 0) * &var(2, 0)) + &RationalFunc::one(2);
        let fl = flat(&v, &e(2, &[0, 1]).scale(&h).unwrap()).unwrap();
        assert_eq!(fl.as_scalar().unwrap(), h);

        assert_eq!(sharp(&v, &d(2, &[1])).unwrap(), e(2, &[0]));
        // sharp(hx dx + hy dy) = hy ∂x − hx ∂y
        let (hx, hy) = (var(2, 0), &var(2, 1) * &var(2, 1));
        let w = d(2, &[0]).scale(&hx).unwrap().try_add(&d(2, &[1]).scale(&hy).unwrap()).unwrap();
        let expected = e(2, &[0]).scale(&hy).unwrap().try_sub(&e(2, &[1]).scale(&hx).unwrap()).unwrap();
        assert_eq!(sharp(&v, &w).unwrap(), expected);
    }

    #[test]
    fn sharp_inverts_flat_for_nonunit_density() {
        let n = 3;
        let f = &RationalFunc::one(n) + &(&var(n, 0) * &var(n, 0));
        let v = VolumeForm::new(f).unwrap();
        for a in [e(n, &[0]), e(n, &[1, 2]).scale(&var(n, 1)).unwrap(), e(n, &[0, 1, 2])] {
            assert_eq!(sharp(&v, &flat(&v, &a).unwrap()).unwrap(), a);
        }
    }

    #[test]
    fn exterior_derivative_examples() {
        let w = d(2, &[1]).scale(&var(2, 0)).unwrap();
        assert_eq!(exterior_derivative(&w).unwrap(), d(2, &[0, 1]));
        assert!(exterior_derivative(&d(2, &[0])).unwrap().is_zero());
        let f = &(&var(3, 0) * &var(3, 1)) * &var(3, 2);
        let ddf = exterior_derivative(&differential(&f).unwrap()).unwrap();
        assert!(ddf.is_zero());
    }

    #[test]
    fn witten_and_marsden_examples() {
        let n = 2;
        let w = d(n, &[1]);
        let zero = BigRational::zero();
        assert_eq!(witten_derivative(&zero, &var(n, 0), &w).unwrap(), exterior_derivative(&w).unwrap());
        let one = BigRational::from_integer(1.into());
        assert_eq!(witten_derivative(&one, &var(n, 0), &w).unwrap(), d(n, &[0, 1]));

        assert_eq!(marsden_derivative(&RationalFunc::one(n), &w).unwrap(), exterior_derivative(&w).unwrap());
        // (1/x) d(x dy) = (1/x) dx∧dy
        let got = marsden_derivative(&var(n, 0), &w).unwrap();
        let expected = d(n, &[0, 1]).scale(&var(n, 0).recip().unwrap()).unwrap();
        assert_eq!(got, expected);
        assert_eq!(marsden_derivative(&RationalFunc::zero(n), &w), Err(Error::ZeroFunction));
    }

    #[test]
    fn zero_objects_compare_equal_across_grades() {
        assert_eq!(Multivector::zero(3, 1), Multivector::zero(3, 2));
        assert_ne!(Multivector::zero(3, 1), Multivector::zero(2, 1));
    }

    #[test]
    fn chart_mismatch_errors() {
        assert!(e(2, &[0]).wedge(&e(3, &[1])).is_err());
        assert!(pairing(&d(2, &[0]), &e(3, &[0])).is_err());
        let p = Polynomial::one(3);
        assert!(e(2, &[0]).scale(&RationalFunc::from_poly(p)).is_err());
    }
}
