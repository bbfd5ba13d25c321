//! Canonical text form.
//!
//! Polynomial terms appear in descending graded-lex order, blades in
//! ascending index order, basis symbols as `e1^^e2` and `d1^^d3`. The output
//! parses back to an equal object.

use std::fmt::Write;

use mvcurl_core::exterior::{BladeKind, DifferentialForm, Graded, IndexSet};
use mvcurl_core::poisson::lie_poisson;
use mvcurl_core::{Chart, Monomial, Multivector, Polynomial, RationalFunc};
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::document::{Document, Value};

pub fn rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn monomial(chart: &Chart, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(chart.names()[i].clone()),
            _ => parts.push(format!("{}^{e}", chart.names()[i])),
        }
    }
    parts.join("*")
}

/// Unsigned term body and its sign.
fn term(chart: &Chart, m: &Monomial, c: &BigRational) -> (bool, String) {
    let negative = c.is_negative();
    let a = c.abs();
    let body = if m.is_one() {
        rational(&a)
    } else if a.is_one() {
        monomial(chart, m)
    } else {
        format!("{}*{}", rational(&a), monomial(chart, m))
    };
    (negative, body)
}

pub fn polynomial(chart: &Chart, p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|(a, _), (b, _)| b.degree().cmp(&a.degree()).then_with(|| b.exponents().cmp(a.exponents())));
    let mut out = String::new();
    for (k, (m, c)) in terms.into_iter().enumerate() {
        let (neg, body) = term(chart, m, c);
        match (k, neg) {
            (0, true) => write!(out, "-{body}"),
            (0, false) => write!(out, "{body}"),
            (_, true) => write!(out, " - {body}"),
            (_, false) => write!(out, " + {body}"),
        }
        .expect("writing to a string");
    }
    out
}

fn is_single_variable_power(p: &Polynomial) -> bool {
    p.len() == 1 && p.terms().all(|(m, c)| c.is_one() && m.exponents().iter().filter(|&&e| e > 0).count() == 1)
}

pub fn function(chart: &Chart, f: &RationalFunc) -> String {
    let num = polynomial(chart, f.numerator());
    if f.denominator().is_one() {
        return num;
    }
    let num = if f.numerator().len() == 1 { num } else { format!("({num})") };
    let den = polynomial(chart, f.denominator());
    if is_single_variable_power(f.denominator()) {
        format!("{num}/{den}")
    } else {
        format!("{num}/({den})")
    }
}

fn blade(symbol: char, b: IndexSet) -> String {
    b.indices().map(|i| format!("{symbol}{}", i + 1)).collect::<Vec<_>>().join("^^")
}

fn graded<K: BladeKind>(chart: &Chart, a: &Graded<K>, symbol: char) -> String {
    if a.is_zero() {
        return "0".into();
    }
    if a.grade() == 0 {
        return function(chart, &a.coefficient(IndexSet::EMPTY));
    }
    let mut out = String::new();
    for (k, (b, c)) in a.terms().enumerate() {
        let basis = blade(symbol, *b);
        let simple = c.denominator().is_one() && c.numerator().len() == 1;
        let (neg, body) = if simple {
            let (m, q) = c.numerator().terms().next().expect("one term");
            let (neg, coeff) = term(chart, m, q);
            if m.is_one() && q.abs().is_one() {
                (neg, basis)
            } else {
                (neg, format!("{coeff} {basis}"))
            }
        } else {
            (false, format!("({}) {basis}", function(chart, c)))
        };
        match (k, neg) {
            (0, true) => write!(out, "-{body}"),
            (0, false) => write!(out, "{body}"),
            (_, true) => write!(out, " - {body}"),
            (_, false) => write!(out, " + {body}"),
        }
        .expect("writing to a string");
    }
    out
}

pub fn multivector(chart: &Chart, a: &Multivector) -> String {
    graded(chart, a, 'e')
}

pub fn form(chart: &Chart, w: &DifferentialForm) -> String {
    graded(chart, w, 'd')
}

pub fn value(chart: &Chart, v: &Value) -> String {
    match v {
        Value::Func(f) => function(chart, f),
        Value::Mv(a) => graded(chart, a, 'e'),
        Value::Form(w) => graded(chart, w, 'd'),
        Value::Volume(v) => function(chart, v.density()),
        Value::Lie(c) => graded(chart, &lie_poisson(c).into_inner(), 'e'),
    }
}

pub fn document(doc: &Document) -> String {
    let mut out = format!("chart {}\n", doc.chart.names().join(" "));
    for b in &doc.bindings {
        writeln!(out, "{} {} = {}", b.value.kind().keyword(), b.name, value(&doc.chart, &b.value))
            .expect("writing to a string");
    }
    out
}
