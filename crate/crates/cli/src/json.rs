//! JSON mirror of documents and values. Exact rationals travel as
//! numerator/denominator strings.

use mvcurl_core::exterior::{BladeKind, DifferentialForm, Graded, IndexSet};
use mvcurl_core::{Chart, Monomial, Multivector, Polynomial, RationalFunc, StructureConstants, VolumeForm};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::document::{Binding, Document, Value};
use crate::error::{DslError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalDto {
    pub numerator: String,
    pub denominator: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDto {
    pub exponents: Vec<u32>,
    pub coefficient: RationalDto,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionDto {
    pub numerator: Vec<TermDto>,
    pub denominator: Vec<TermDto>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BladeTermDto {
    /// 1-based coordinate indices, ascending.
    pub blade: Vec<usize>,
    pub coefficient: FunctionDto,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDto {
    pub grade: usize,
    pub terms: Vec<BladeTermDto>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureEntryDto {
    /// `[e_i, e_j] = Σ_k c e_k`, 1-based, `i < j`.
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: RationalDto,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BindingDto {
    Func { name: String, value: FunctionDto },
    Mv { name: String, value: GradedDto },
    Form { name: String, value: GradedDto },
    Volume { name: String, density: FunctionDto },
    Lie { name: String, structure_constants: Vec<StructureEntryDto> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentDto {
    pub chart: Vec<String>,
    pub bindings: Vec<BindingDto>,
}

fn bad(msg: impl Into<String>) -> DslError {
    DslError::Json(msg.into())
}

pub fn rational_to(q: &BigRational) -> RationalDto {
    RationalDto { numerator: q.numer().to_string(), denominator: q.denom().to_string() }
}

pub fn rational_from(d: &RationalDto) -> Result<BigRational> {
    let n: BigInt = d.numerator.parse().map_err(|_| bad(format!("bad integer `{}`", d.numerator)))?;
    let m: BigInt = d.denominator.parse().map_err(|_| bad(format!("bad integer `{}`", d.denominator)))?;
    if m.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(BigRational::new(n, m))
}

fn poly_to(p: &Polynomial) -> Vec<TermDto> {
    p.terms().rev().map(|(m, c)| TermDto { exponents: m.exponents().to_vec(), coefficient: rational_to(c) }).collect()
}

fn poly_from(n: usize, terms: &[TermDto]) -> Result<Polynomial> {
    let mut out = Vec::new();
    for t in terms {
        if t.exponents.len() != n {
            return Err(bad(format!("monomial has {} exponents, chart has {n}", t.exponents.len())));
        }
        out.push((Monomial::new(t.exponents.clone()), rational_from(&t.coefficient)?));
    }
    Ok(Polynomial::from_terms(n, out))
}

pub fn function_to(f: &RationalFunc) -> FunctionDto {
    FunctionDto { numerator: poly_to(f.numerator()), denominator: poly_to(f.denominator()) }
}

pub fn function_from(n: usize, d: &FunctionDto) -> Result<RationalFunc> {
    RationalFunc::new(poly_from(n, &d.numerator)?, poly_from(n, &d.denominator)?).map_err(DslError::Math)
}

pub fn graded_to<K: BladeKind>(a: &Graded<K>) -> GradedDto {
    GradedDto {
        grade: a.grade(),
        terms: a
            .terms()
            .map(|(b, c)| BladeTermDto { blade: b.indices().map(|i| i + 1).collect(), coefficient: function_to(c) })
            .collect(),
    }
}

pub fn graded_from<K: BladeKind>(n: usize, d: &GradedDto) -> Result<Graded<K>> {
    let mut terms = Vec::new();
    for t in &d.terms {
        if t.blade.len() != d.grade || t.blade.contains(&0) {
            return Err(bad("blade does not match the grade"));
        }
        let idx: Vec<usize> = t.blade.iter().map(|i| i - 1).collect();
        let b = IndexSet::from_indices(&idx, n).map_err(DslError::Math)?;
        terms.push((b, function_from(n, &t.coefficient)?));
    }
    Graded::from_terms(n, d.grade, terms).map_err(DslError::Math)
}

pub fn multivector_to(a: &Multivector) -> GradedDto {
    graded_to(a)
}

pub fn form_to(w: &DifferentialForm) -> GradedDto {
    graded_to(w)
}

fn structure_to(c: &StructureConstants) -> Vec<StructureEntryDto> {
    let n = c.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                let v = c.get(i, j, k);
                if !v.is_zero() {
                    out.push(StructureEntryDto { i: i + 1, j: j + 1, k: k + 1, value: rational_to(&v) });
                }
            }
        }
    }
    out
}

fn structure_from(n: usize, entries: &[StructureEntryDto]) -> Result<StructureConstants> {
    let mut out = Vec::new();
    for e in entries {
        if [e.i, e.j, e.k].iter().any(|&x| x == 0 || x > n) {
            return Err(bad("structure constant index out of range"));
        }
        out.push(((e.i - 1, e.j - 1, e.k - 1), rational_from(&e.value)?));
    }
    StructureConstants::new(n, out).map_err(DslError::Math)
}

pub fn document_to(doc: &Document) -> DocumentDto {
    DocumentDto {
        chart: doc.chart.names().to_vec(),
        bindings: doc
            .bindings
            .iter()
            .map(|b| {
                let name = b.name.clone();
                match &b.value {
                    Value::Func(f) => BindingDto::Func { name, value: function_to(f) },
                    Value::Mv(a) => BindingDto::Mv { name, value: graded_to(a) },
                    Value::Form(w) => BindingDto::Form { name, value: graded_to(w) },
                    Value::Volume(v) => BindingDto::Volume { name, density: function_to(v.density()) },
                    Value::Lie(c) => BindingDto::Lie { name, structure_constants: structure_to(c) },
                }
            })
            .collect(),
    }
}

pub fn document_from(dto: &DocumentDto) -> Result<Document> {
    let chart = Chart::new(dto.chart.iter().cloned()).map_err(DslError::Math)?;
    let n = chart.dim();
    let mut bindings: Vec<Binding> = Vec::new();
    for b in &dto.bindings {
        let (name, value) = match b {
            BindingDto::Func { name, value } => (name, Value::Func(function_from(n, value)?)),
            BindingDto::Mv { name, value } => (name, Value::Mv(graded_from(n, value)?)),
            BindingDto::Form { name, value } => (name, Value::Form(graded_from(n, value)?)),
            BindingDto::Volume { name, density } => {
                (name, Value::Volume(VolumeForm::new(function_from(n, density)?).map_err(DslError::Math)?))
            }
            BindingDto::Lie { name, structure_constants } => {
                (name, Value::Lie(structure_from(n, structure_constants)?))
            }
        };
        if bindings.iter().any(|x| &x.name == name) {
            return Err(bad(format!("`{name}` is bound twice")));
        }
        bindings.push(Binding { name: name.clone(), value });
    }
    Ok(Document { chart, bindings })
}

pub fn to_string(doc: &Document) -> String {
    serde_json::to_string_pretty(&document_to(doc)).expect("documents serialize")
}

pub fn from_str(src: &str) -> Result<Document> {
    let dto: DocumentDto = serde_json::from_str(src).map_err(|e| bad(e.to_string()))?;
    document_from(&dto)
}
