//! Seeded random instances for identity testing.
//!
//! Every case draws from its own ChaCha stream keyed by
//! `(seed, stream, case)`, so a case is reproducible on its own and results
//! do not depend on execution order.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ansatz::ExactMatrix;
use crate::exterior::{differential, sharp, BladeKind, DifferentialForm, Graded, IndexSet, Multivector, VolumeForm};
use crate::poisson::{PoissonBivector, StructureConstants};
use crate::poly::{Monomial, Polynomial};
use crate::rational::RationalFunc;

/// Frozen sampling parameters for the identity suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplingParams {
    pub dims: &'static [usize],
    pub max_grade: usize,
    pub max_degree: u32,
    pub coeff_bound: i64,
}

pub const IDENTITY_PARAMS: SamplingParams =
    SamplingParams { dims: &[2, 3, 4], max_grade: 3, max_degree: 2, coeff_bound: 3 };

pub struct Sampler {
    rng: ChaCha8Rng,
    params: SamplingParams,
}

fn mix(seed: u64, stream: u64, case: u64) -> u64 {
    // splitmix64 finalizer over the combined key
    let mut z = seed
        .wrapping_add(stream.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(case.wrapping_mul(0xBF58_476D_1CE4_E5B9));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl Sampler {
    pub fn new(seed: u64, stream: u64, case: u64) -> Self {
        Self::with_params(seed, stream, case, IDENTITY_PARAMS)
    }

    pub fn with_params(seed: u64, stream: u64, case: u64, params: SamplingParams) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(mix(seed, stream, case)), params }
    }

    pub fn params(&self) -> SamplingParams {
        self.params
    }

    pub fn dim(&mut self) -> usize {
        let dims = self.params.dims;
        dims[self.rng.random_range(0..dims.len())]
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.random_range(0..bound)
    }

    pub fn coin(&mut self, p: f64) -> bool {
        self.rng.random_bool(p)
    }

    /// Grade in `lo..=min(max_grade, n)`.
    pub fn grade(&mut self, n: usize, lo: usize) -> usize {
        let hi = self.params.max_grade.min(n);
        self.rng.random_range(lo..=hi.max(lo))
    }

    pub fn nonzero_int(&mut self) -> i64 {
        let b = self.params.coeff_bound;
        loop {
            let c = self.rng.random_range(-b..=b);
            if c != 0 {
                return c;
            }
        }
    }

    /// Sparse polynomial of degree at most `max_degree`; each monomial is
    /// present with probability `density`.
    pub fn polynomial_with(&mut self, n: usize, max_degree: u32, density: f64) -> Polynomial {
        let mut terms = Vec::new();
        for m in Monomial::all_up_to(n, max_degree) {
            if self.rng.random_bool(density) {
                terms.push((m, BigRational::from_integer(self.nonzero_int().into())));
            }
        }
        Polynomial::from_terms(n, terms)
    }

    pub fn polynomial(&mut self, n: usize) -> Polynomial {
        self.polynomial_with(n, self.params.max_degree, 0.3)
    }

    pub fn nonzero_polynomial(&mut self, n: usize) -> Polynomial {
        loop {
            let p = self.polynomial(n);
            if !p.is_zero() {
                return p;
            }
        }
    }

    /// Non-constant polynomial, used where a genuinely varying function
    /// is wanted (multipliers, densities).
    pub fn nonconstant_polynomial(&mut self, n: usize) -> Polynomial {
        loop {
            let p = self.polynomial(n);
            if !p.is_constant() {
                return p;
            }
        }
    }

    pub fn function(&mut self, n: usize) -> RationalFunc {
        RationalFunc::from_poly(self.polynomial(n))
    }

    pub fn nonzero_function(&mut self, n: usize) -> RationalFunc {
        RationalFunc::from_poly(self.nonzero_polynomial(n))
    }

    fn graded<K: BladeKind>(&mut self, n: usize, grade: usize) -> Graded<K> {
        let blades: Vec<IndexSet> =
            (0u32..(1 << n)).map(|b| IndexSet::from_bits(b as u16)).filter(|b| b.grade() == grade).collect();
        let p_blade = if blades.len() <= 2 { 0.9 } else { 0.5 };
        let mut terms = Vec::new();
        for b in blades {
            if self.rng.random_bool(p_blade) {
                terms.push((b, self.function(n)));
            }
        }
        Graded::from_terms(n, grade, terms).expect("sampled blades are valid")
    }

    pub fn multivector(&mut self, n: usize, grade: usize) -> Multivector {
        self.graded(n, grade)
    }

    pub fn form(&mut self, n: usize, degree: usize) -> DifferentialForm {
        self.graded(n, degree)
    }

    /// Volume with a random non-zero polynomial density.
    pub fn volume(&mut self, n: usize) -> VolumeForm {
        VolumeForm::new(self.nonzero_function(n)).expect("non-zero density")
    }

    pub fn rational(&mut self) -> BigRational {
        BigRational::from_integer(self.nonzero_int().into())
    }

    /// Random Lie algebra of dimension 2, 3 or 4: a catalogue algebra
    /// written in a random integer basis.
    pub fn structure_constants(&mut self, n: usize) -> StructureConstants {
        let q = |x: i64| BigRational::from_integer(x.into());
        let table: Vec<(usize, usize, usize, i64)> = match n {
            2 => {
                let a = self.rng.random_range(-3..=3);
                let b = self.rng.random_range(-3..=3);
                vec![(0, 1, 0, a), (0, 1, 1, b)]
            }
            3 => match self.index(5) {
                0 => vec![(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1)],
                1 => vec![(0, 1, 2, 1)],
                2 => vec![(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)],
                3 => vec![(0, 1, 1, 1), (0, 2, 2, self.nonzero_int())],
                _ => vec![(2, 0, 1, 1), (2, 1, 0, -1)],
            },
            4 => match self.index(5) {
                0 => vec![(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1)],
                1 => vec![(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)],
                2 => vec![(0, 1, 1, 1), (2, 3, 3, 1)],
                3 => vec![(0, 1, 2, 1)],
                _ => vec![(0, 1, 2, 1), (0, 2, 3, 1)],
            },
            _ => panic!("catalogue covers dimensions 2..=4"),
        };
        let base = StructureConstants::new(n, table.into_iter().map(|(i, j, k, c)| ((i, j, k), q(c))))
            .expect("catalogue algebras satisfy Jacobi");
        loop {
            let rows: Vec<Vec<BigRational>> =
                (0..n).map(|_| (0..n).map(|_| q(self.rng.random_range(-2..=2))).collect()).collect();
            let p = ExactMatrix::from_rows(rows);
            if p.inverse().is_some() {
                return base.change_basis(&p).expect("invertible basis change");
            }
        }
    }

    /// Random Poisson bivector `φ V♮(dC_1 ∧ … ∧ dC_{n-2})` for the
    /// coordinate volume; on the plane this is `φ ∂x∧∂y`.
    pub fn poisson(&mut self, n: usize) -> PoissonBivector {
        let phi = RationalFunc::from_poly(self.polynomial_with(n, 1, 0.6));
        let phi = if phi.is_zero() { RationalFunc::one(n) } else { phi };
        let mut omega = DifferentialForm::one(n);
        for _ in 2..n {
            let c = RationalFunc::from_poly(self.nonconstant_polynomial(n));
            omega = omega.wedge(&differential(&c).expect("same dimension")).expect("same dimension");
        }
        let pi = sharp(&VolumeForm::unit(n), &omega).expect("same dimension").scale(&phi).expect("same dimension");
        let pi = if pi.is_zero() { Multivector::zero(n, 2) } else { pi };
        PoissonBivector::new(pi).expect("Jacobian structures are Poisson")
    }
}
