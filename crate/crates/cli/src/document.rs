//! Typed documents: a chart plus named, evaluated bindings.

use mvcurl_core::exterior::{DifferentialForm, IndexSet};
use mvcurl_core::poisson::lie_poisson;
use mvcurl_core::{Chart, Multivector, RationalFunc, StructureConstants, VolumeForm};

use crate::error::{DslError, Result, Span};
use crate::syntax::{self, Expr, ExprKind, Kind, SyntaxTree};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Func(RationalFunc),
    Mv(Multivector),
    Form(DifferentialForm),
    Volume(VolumeForm),
    Lie(StructureConstants),
}

impl Value {
    pub fn kind(&self) -> Kind {
        match self {
            Value::Func(_) => Kind::Func,
            Value::Mv(_) => Kind::Mv,
            Value::Form(_) => Kind::Form,
            Value::Volume(_) => Kind::Volume,
            Value::Lie(_) => Kind::Lie,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binding {
    pub name: String,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub chart: Chart,
    pub bindings: Vec<Binding>,
}

/// Intermediate value during expression evaluation.
#[derive(Debug, Clone)]
enum Term {
    Scalar(RationalFunc),
    Mv(Multivector),
    Form(DifferentialForm),
}

impl Term {
    fn describe(&self) -> String {
        match self {
            Term::Scalar(_) => "a function".into(),
            Term::Mv(a) => format!("a grade-{} multivector", a.grade()),
            Term::Form(w) => format!("a {}-form", w.grade()),
        }
    }
}

fn reserved(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some('e') | Some('d')) && name.len() > 1 && chars.all(|c| c.is_ascii_digit())
}

impl Document {
    pub fn parse(src: &str) -> Result<Document> {
        Self::from_syntax(&syntax::parse(src)?)
    }

    pub fn from_syntax(tree: &SyntaxTree) -> Result<Document> {
        for (name, span) in &tree.chart {
            if reserved(name) || Kind::from_keyword(name).is_some() || name == "chart" {
                return Err(DslError::invalid(*span, format!("`{name}` is reserved and cannot name a coordinate")));
            }
        }
        let chart = Chart::new(tree.chart.iter().map(|(n, _)| n.clone()))
            .map_err(|e| DslError::MathAt { span: tree.chart[0].1, source: e })?;
        let mut doc = Document { chart, bindings: Vec::new() };
        for st in &tree.statements {
            if reserved(&st.name) || doc.chart.index_of(&st.name).is_some() {
                return Err(DslError::invalid(
                    st.name_span,
                    format!("`{}` clashes with a coordinate or basis symbol", st.name),
                ));
            }
            if doc.get(&st.name).is_some() {
                return Err(DslError::invalid(st.name_span, format!("`{}` is already bound", st.name)));
            }
            let term = doc.eval(&st.expr)?;
            let value = doc.coerce(st.kind, term, st.expr.span)?;
            doc.bindings.push(Binding { name: st.name.clone(), value });
        }
        Ok(doc)
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.bindings.iter().find(|b| b.name == name).map(|b| &b.value)
    }

    pub fn of_kind(&self, kind: Kind) -> impl Iterator<Item = &Binding> {
        self.bindings.iter().filter(move |b| b.value.kind() == kind)
    }

    /// Evaluates a standalone expression against this document.
    pub fn eval_function(&self, src: &str) -> Result<RationalFunc> {
        let e = syntax::parse_expr(src)?;
        match self.eval(&e)? {
            Term::Scalar(f) => Ok(f),
            other => Err(DslError::invalid(e.span, format!("expected a function, found {}", other.describe()))),
        }
    }

    fn coerce(&self, kind: Kind, term: Term, span: Span) -> Result<Value> {
        let n = self.dim();
        let mismatch =
            |t: &Term| DslError::invalid(span, format!("`{}` binding cannot hold {}", kind.keyword(), t.describe()));
        let math = |e| DslError::MathAt { span, source: e };
        Ok(match (kind, term) {
            (Kind::Func, Term::Scalar(f)) => Value::Func(f),
            (Kind::Mv, Term::Scalar(f)) => Value::Mv(Multivector::scalar(f)),
            (Kind::Mv, Term::Mv(a)) => Value::Mv(a),
            (Kind::Form, Term::Scalar(f)) => Value::Form(DifferentialForm::scalar(f)),
            (Kind::Form, Term::Form(w)) => Value::Form(w),
            (Kind::Volume, Term::Scalar(f)) => Value::Volume(VolumeForm::new(f).map_err(math)?),
            (Kind::Volume, Term::Form(w)) if w.grade() == n || w.is_zero() => {
                Value::Volume(VolumeForm::new(w.coefficient(IndexSet::full(n))).map_err(math)?)
            }
            (Kind::Lie, Term::Mv(a)) if a.grade() == 2 => {
                if a.terms().any(|(_, c)| !c.is_polynomial() || c.numerator().terms().any(|(m, _)| m.degree() != 1)) {
                    return Err(DslError::invalid(span, "`lie` needs a bivector with linear coefficients"));
                }
                Value::Lie(StructureConstants::from_linear_bivector(&a).map_err(math)?)
            }
            (_, t) => return Err(mismatch(&t)),
        })
    }

    fn lookup(&self, name: &str, span: Span) -> Result<Term> {
        let n = self.dim();
        if let Some(i) = self.chart.index_of(name) {
            return Ok(Term::Scalar(RationalFunc::variable(n, i).expect("coordinate in range")));
        }
        if reserved(name) {
            let i: usize = name[1..].parse().unwrap_or(0);
            if i == 0 || i > n {
                return Err(DslError::invalid(span, format!("`{name}` is out of range for a {n}-dimensional chart")));
            }
            return Ok(if name.starts_with('e') {
                Term::Mv(Multivector::basis(n, &[i - 1]).expect("index in range"))
            } else {
                Term::Form(DifferentialForm::basis(n, &[i - 1]).expect("index in range"))
            });
        }
        match self.get(name) {
            Some(Value::Func(f)) => Ok(Term::Scalar(f.clone())),
            Some(Value::Mv(a)) => Ok(match a.as_scalar() {
                Some(f) if a.grade() == 0 => Term::Scalar(f),
                _ => Term::Mv(a.clone()),
            }),
            Some(Value::Form(w)) => Ok(match w.as_scalar() {
                Some(f) if w.grade() == 0 => Term::Scalar(f),
                _ => Term::Form(w.clone()),
            }),
            Some(Value::Volume(v)) => Ok(Term::Form(v.as_form())),
            Some(Value::Lie(c)) => Ok(Term::Mv(lie_poisson(c).into_inner())),
            None => Err(DslError::invalid(span, format!("unknown identifier `{name}`"))),
        }
    }

    fn eval(&self, e: &Expr) -> Result<Term> {
        let n = self.dim();
        let span = e.span;
        let math = |err| DslError::MathAt { span, source: err };
        Ok(match &e.kind {
            ExprKind::Number(q) => Term::Scalar(RationalFunc::constant(n, q.clone())),
            ExprKind::Name(s) => self.lookup(s, span)?,
            ExprKind::Neg(a) => match self.eval(a)? {
                Term::Scalar(f) => Term::Scalar(-&f),
                Term::Mv(a) => Term::Mv(a.neg()),
                Term::Form(w) => Term::Form(w.neg()),
            },
            ExprKind::Add(a, b) | ExprKind::Sub(a, b) => {
                let (x, y) = (self.eval(a)?, self.eval(b)?);
                let sub = matches!(e.kind, ExprKind::Sub(..));
                let clash = |x: &Term, y: &Term| {
                    DslError::invalid(span, format!("cannot add {} and {}", x.describe(), y.describe()))
                };
                match (x, y) {
                    (Term::Scalar(f), Term::Scalar(g)) => Term::Scalar(if sub { &f - &g } else { &f + &g }),
                    (Term::Mv(a), Term::Mv(b)) => {
                        if a.grade() != b.grade() && !a.is_zero() && !b.is_zero() {
                            return Err(clash(&Term::Mv(a), &Term::Mv(b)));
                        }
                        Term::Mv(if sub { a.try_sub(&b) } else { a.try_add(&b) }.map_err(math)?)
                    }
                    (Term::Form(a), Term::Form(b)) => {
                        if a.grade() != b.grade() && !a.is_zero() && !b.is_zero() {
                            return Err(clash(&Term::Form(a), &Term::Form(b)));
                        }
                        Term::Form(if sub { a.try_sub(&b) } else { a.try_add(&b) }.map_err(math)?)
                    }
                    (x, y) => return Err(clash(&x, &y)),
                }
            }
            ExprKind::Mul(a, b) => match (self.eval(a)?, self.eval(b)?) {
                (Term::Scalar(f), Term::Scalar(g)) => Term::Scalar(&f * &g),
                (Term::Scalar(f), Term::Mv(x)) | (Term::Mv(x), Term::Scalar(f)) => Term::Mv(x.scale(&f).map_err(math)?),
                (Term::Scalar(f), Term::Form(x)) | (Term::Form(x), Term::Scalar(f)) => {
                    Term::Form(x.scale(&f).map_err(math)?)
                }
                (x, y) => {
                    return Err(DslError::invalid(
                        span,
                        format!("cannot multiply {} by {}; use `^^` for the wedge", x.describe(), y.describe()),
                    ))
                }
            },
            ExprKind::Div(a, b) => {
                let x = self.eval(a)?;
                let g = match self.eval(b)? {
                    Term::Scalar(g) => g,
                    other => return Err(DslError::invalid(b.span, format!("cannot divide by {}", other.describe()))),
                };
                let inv = g.recip().map_err(|err| DslError::MathAt { span: b.span, source: err })?;
                match x {
                    Term::Scalar(f) => Term::Scalar(&f * &inv),
                    Term::Mv(x) => Term::Mv(x.scale(&inv).map_err(math)?),
                    Term::Form(x) => Term::Form(x.scale(&inv).map_err(math)?),
                }
            }
            ExprKind::Pow(a, k) => match self.eval(a)? {
                Term::Scalar(f) => Term::Scalar(f.pow(*k).map_err(math)?),
                other => return Err(DslError::invalid(span, format!("cannot raise {} to a power", other.describe()))),
            },
            ExprKind::Wedge(a, b) => match (self.eval(a)?, self.eval(b)?) {
                (Term::Scalar(f), Term::Scalar(g)) => Term::Scalar(&f * &g),
                (Term::Scalar(f), Term::Mv(x)) | (Term::Mv(x), Term::Scalar(f)) => Term::Mv(x.scale(&f).map_err(math)?),
                (Term::Scalar(f), Term::Form(x)) | (Term::Form(x), Term::Scalar(f)) => {
                    Term::Form(x.scale(&f).map_err(math)?)
                }
                (Term::Mv(x), Term::Mv(y)) => Term::Mv(x.wedge(&y).map_err(math)?),
                (Term::Form(x), Term::Form(y)) => Term::Form(x.wedge(&y).map_err(math)?),
                (x, y) => {
                    return Err(DslError::invalid(
                        span,
                        format!("wedge of mixed kinds: {} and {}", x.describe(), y.describe()),
                    ))
                }
            },
        })
    }
}
