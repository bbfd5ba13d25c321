//! Multivariate polynomial GCD over the rationals.
//!
//! Monomial factors are split off first. Inputs are then tested for coprimality through univariate images. The
//! main route is the heuristic integer-evaluation GCD: evaluate the main
//! variable at a large integer, recurse, rebuild the candidate by balanced
//! radix expansion and confirm it by trial division. The evaluation point
//! always exceeds twice the smaller coefficient norm, so a confirmed
//! candidate is the gcd. If every attempt fails, a recursive content /
//! primitive pseudo-remainder scheme takes over.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::poly::{Monomial, Polynomial};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Greatest common divisor, normalized to an integer-primitive polynomial
/// with positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    assert_eq!(a.nvars(), b.nvars(), "gcd dimension mismatch");
    if a.is_zero() || b.is_zero() || a.is_constant() || b.is_constant() || a == b {
        return gcd_rec(a, b);
    }
    let (ma, ra) = split_monomial(a);
    let (mb, rb) = split_monomial(b);
    if !ma.iter().all(|&e| e == 0) || !mb.iter().all(|&e| e == 0) {
        let common: Vec<u32> = ma.iter().zip(&mb).map(|(x, y)| *x.min(y)).collect();
        let m = Polynomial::monomial(Monomial::new(common), BigRational::one());
        return (&m * &gcd(&ra, &rb)).primitive();
    }
    if coprime_by_images(a, b) {
        return Polynomial::one(a.nvars());
    }
    let (za, zb) = (ZPoly::from_poly(&a.primitive()), ZPoly::from_poly(&b.primitive()));
    match heuristic_gcd(&za, &zb) {
        Some(h) => h.to_poly().primitive(),
        None => gcd_rec(a, b),
    }
}

/// Largest monomial dividing `p`, as exponents, and the quotient.
fn split_monomial(p: &Polynomial) -> (Vec<u32>, Polynomial) {
    let n = p.nvars();
    let mut low = vec![u32::MAX; n];
    for (m, _) in p.terms() {
        for (l, &e) in low.iter_mut().zip(m.exponents()) {
            *l = (*l).min(e);
        }
    }
    if low.iter().all(|&e| e == 0) {
        return (low, p.clone());
    }
    let rest = Polynomial::from_terms(
        n,
        p.terms().map(|(m, c)| {
            let e = m.exponents().iter().zip(&low).map(|(e, l)| e - l).collect();
            (Monomial::new(e), c.clone())
        }),
    );
    (low, rest)
}

/// Sparse polynomial with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
struct ZPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl ZPoly {
    fn zero(nvars: usize) -> Self {
        ZPoly { nvars, terms: BTreeMap::new() }
    }

    fn from_poly(p: &Polynomial) -> Self {
        ZPoly {
            nvars: p.nvars(),
            terms: p
                .terms()
                .map(|(m, c)| {
                    debug_assert!(c.is_integer());
                    (m.clone(), c.numer().clone())
                })
                .collect(),
        }
    }

    fn to_poly(&self) -> Polynomial {
        Polynomial::from_terms(
            self.nvars,
            self.terms.iter().map(|(m, c)| (m.clone(), BigRational::from_integer(c.clone()))),
        )
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponents()[var]).max().unwrap_or(0)
    }

    fn norm(&self) -> BigInt {
        self.terms.values().map(BigInt::abs).max().unwrap_or_else(BigInt::zero)
    }

    fn leading_coefficient(&self) -> &BigInt {
        self.terms.values().next_back().expect("non-zero")
    }

    fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    fn div_integer(&self, c: &BigInt) -> ZPoly {
        ZPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, v)| (m.clone(), v / c)).collect() }
    }

    fn scale(&self, c: &BigInt) -> ZPoly {
        ZPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// Integer-primitive associate with positive leading coefficient.
    fn primitive(&self) -> ZPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading_coefficient().is_negative() {
            c = -c;
        }
        self.div_integer(&c)
    }

    /// Substitutes the integer `xi` for `var`.
    fn evaluate(&self, var: usize, xi: &BigInt) -> ZPoly {
        let mut out = ZPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = m.exponents().to_vec();
            let k = std::mem::take(&mut e[var]);
            out.add_term(Monomial::new(e), c * num_traits::pow(xi.clone(), k as usize));
        }
        out
    }

    /// Inverse of [`ZPoly::evaluate`] by balanced base-`xi` expansion of
    /// every coefficient.
    fn interpolate(image: &ZPoly, var: usize, xi: &BigInt) -> ZPoly {
        let half = xi / 2;
        let mut out = ZPoly::zero(image.nvars);
        let mut rest = image.clone();
        let mut power = 0u32;
        while !rest.is_zero() {
            let mut next = ZPoly::zero(image.nvars);
            for (m, c) in &rest.terms {
                let mut digit = c.mod_floor(xi);
                if digit > half {
                    digit -= xi;
                }
                let carry = (c - &digit) / xi;
                if !digit.is_zero() {
                    let mut e = m.exponents().to_vec();
                    e[var] += power;
                    out.add_term(Monomial::new(e), digit);
                }
                next.add_term(m.clone(), carry);
            }
            rest = next;
            power += 1;
        }
        out
    }

    /// Quotient over the integers when `divisor` divides `self`.
    fn exact_div(&self, divisor: &ZPoly) -> Option<ZPoly> {
        let (lm_d, lc_d) = divisor.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = ZPoly::zero(self.nvars);
        while let Some((lm_r, lc_r)) = rem.terms.iter().next_back() {
            let m = lm_r.checked_div(lm_d)?;
            let (q, r) = lc_r.div_rem(lc_d);
            if !r.is_zero() {
                return None;
            }
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&m), -(dc * &q));
            }
            quot.add_term(m, q);
        }
        Some(quot)
    }
}

const HEURISTIC_ATTEMPTS: usize = 6;

/// Heuristic gcd of two non-zero integer polynomials, `None` on failure.
fn heuristic_gcd(f: &ZPoly, g: &ZPoly) -> Option<ZPoly> {
    let n = f.nvars;
    let Some(var) = (0..n).rev().find(|&v| f.degree_in(v) > 0 || g.degree_in(v) > 0) else {
        let c = f.leading_coefficient().gcd(g.leading_coefficient());
        let mut out = ZPoly::zero(n);
        out.add_term(Monomial::one(n), c);
        return Some(out);
    };
    let common = f.content().gcd(&g.content());
    let (f, g) = (f.primitive(), g.primitive());
    let (fnorm, gnorm) = (f.norm(), g.norm());
    let min_norm = fnorm.clone().min(gnorm.clone());
    let bound: BigInt = &min_norm * 2 + 29;
    let sqrt_bound = bound.sqrt() * 99;
    let by_lead = (&fnorm / f.leading_coefficient().abs()).min(&gnorm / g.leading_coefficient().abs()) * 2 + 4;
    let mut xi = bound.clone().min(sqrt_bound).max(by_lead).max(&min_norm * 2 + 2);
    for _ in 0..HEURISTIC_ATTEMPTS {
        let (fe, ge) = (f.evaluate(var, &xi), g.evaluate(var, &xi));
        if !fe.is_zero() && !ge.is_zero() {
            if let Some(he) = heuristic_gcd(&fe, &ge) {
                let h = ZPoly::interpolate(&he, var, &xi).primitive();
                if !h.is_zero() && f.exact_div(&h).is_some() && g.exact_div(&h).is_some() {
                    return Some(h.scale(&common));
                }
                for (a, b) in [(&f, &g), (&g, &f)] {
                    if let Some(ae) = a.evaluate(var, &xi).exact_div(&he) {
                        let cofactor = ZPoly::interpolate(&ae, var, &xi);
                        if cofactor.is_zero() {
                            continue;
                        }
                        if let Some(h) = a.exact_div(&cofactor) {
                            let h = h.primitive();
                            if b.exact_div(&h).is_some() && a.exact_div(&h).is_some() {
                                return Some(h.scale(&common));
                            }
                        }
                    }
                }
            }
        }
        let grown: BigInt = &xi * 73794 * xi.sqrt().sqrt() / 27011;
        xi = grown;
    }
    None
}

fn gcd_rec(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    let n = a.nvars();
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(n);
    }
    if a == b {
        return a.primitive();
    }
    if coprime_by_images(a, b) {
        return Polynomial::one(n);
    }
    for (big, small) in [(a, b), (b, a)] {
        if big.exact_div(small).is_some() {
            return small.primitive();
        }
    }
    let var = (0..n)
        .rev()
        .find(|&v| a.degree_in(v) > 0 || b.degree_in(v) > 0)
        .expect("non-constant polynomial has a variable");
    if a.degree_in(var) == 0 {
        return gcd_rec(a, &content_in(b, var));
    }
    if b.degree_in(var) == 0 {
        return gcd_rec(&content_in(a, var), b);
    }
    let ca = content_in(a, var);
    let cb = content_in(b, var);
    let pa = a.exact_div(&ca).expect("content divides");
    let pb = b.exact_div(&cb).expect("content divides");
    let c = gcd_rec(&ca, &cb);
    let g = primitive_prs(pa, pb, var);
    (&c * &g).primitive()
}

/// Sound coprimality test. If `g = gcd(a, b)` has positive degree in `v`,
/// its image under any substitution of the other variables that keeps the
/// leading coefficients in `v` non-zero still has that degree and divides
/// both images. So constant image gcds in every variable prove `g` constant.
/// `false` means "not proven".
fn coprime_by_images(a: &Polynomial, b: &Polynomial) -> bool {
    let n = a.nvars();
    (0..n).filter(|&v| a.degree_in(v) > 0 && b.degree_in(v) > 0).all(|v| {
        (0..EVALUATION_ATTEMPTS).any(|attempt| {
            let point = evaluation_point(n, attempt);
            match (univariate_image(a, v, &point), univariate_image(b, v, &point)) {
                (Some(ia), Some(ib)) => univariate_gcd_degree(ia, ib) == 0,
                _ => false,
            }
        })
    })
}

const EVALUATION_ATTEMPTS: usize = 3;

fn evaluation_point(n: usize, attempt: usize) -> Vec<BigRational> {
    const PRIMES: [i64; 20] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71];
    (0..n)
        .map(|i| {
            let p = PRIMES[(i + 5 * attempt) % PRIMES.len()];
            let sign = if (i + attempt).is_multiple_of(2) { 1 } else { -1 };
            BigRational::from_integer((sign * p * (attempt as i64 + 1)).into())
        })
        .collect()
}

/// Dense coefficients in `var` after substituting `point` for the other
/// variables, or `None` if the leading coefficient vanishes.
fn univariate_image(p: &Polynomial, var: usize, point: &[BigRational]) -> Option<Vec<BigRational>> {
    let deg = p.degree_in(var) as usize;
    let mut out = vec![BigRational::zero(); deg + 1];
    for (m, c) in p.terms() {
        let mut value = c.clone();
        for (i, &e) in m.exponents().iter().enumerate() {
            if i != var && e > 0 {
                value *= num_traits::pow(point[i].clone(), e as usize);
            }
        }
        out[m.exponents()[var] as usize] += value;
    }
    if out[deg].is_zero() {
        None
    } else {
        Some(out)
    }
}

fn trim(p: &mut Vec<BigRational>) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

/// Degree of the gcd of two non-zero dense univariate polynomials over Q.
fn univariate_gcd_degree(mut a: Vec<BigRational>, mut b: Vec<BigRational>) -> usize {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.len() == 1 {
            return if b[0].is_zero() { a.len() - 1 } else { 0 };
        }
        let lead = b.last().expect("non-empty").clone();
        while a.len() >= b.len() && !(a.len() == 1 && a[0].is_zero()) {
            let q = a.last().expect("non-empty") / &lead;
            let shift = a.len() - b.len();
            for (i, c) in b.iter().enumerate() {
                let t = &q * c;
                a[i + shift] -= t;
            }
            a.pop();
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
}

/// GCD of the coefficients of `p` viewed as a polynomial in `var`.
fn content_in(p: &Polynomial, var: usize) -> Polynomial {
    let mut acc = Polynomial::zero(p.nvars());
    for c in p.coefficients_in(var).into_values() {
        acc = gcd_rec(&acc, &c);
        if acc.is_constant() {
            return Polynomial::one(p.nvars());
        }
    }
    acc
}

fn primitive_part_in(p: &Polynomial, var: usize) -> Polynomial {
    let c = content_in(p, var);
    p.exact_div(&c).expect("content divides").primitive()
}

fn primitive_prs(a: Polynomial, b: Polynomial, var: usize) -> Polynomial {
    let (mut a, mut b) = if a.degree_in(var) >= b.degree_in(var) { (a, b) } else { (b, a) };
    loop {
        let r = pseudo_remainder(&a, &b, var);
        if r.is_zero() {
            return primitive_part_in(&b, var);
        }
        if r.degree_in(var) == 0 {
            return Polynomial::one(a.nvars());
        }
        a = b;
        b = primitive_part_in(&r, var);
    }
}

/// Remainder of `a` by `b` in `var`, up to a unit of the coefficient ring.
fn pseudo_remainder(a: &Polynomial, b: &Polynomial, var: usize) -> Polynomial {
    let n = a.nvars();
    let db = b.degree_in(var);
    let lcb = b.leading_coefficient_in(var);
    let one = BigRational::one();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lcr = r.leading_coefficient_in(var);
        let shifted = (&lcr * b).mul_term(&Monomial::var_power(n, var, dr - db), &one);
        r = (&(&r * &lcb) - &shifted).primitive();
    }
    r
}
