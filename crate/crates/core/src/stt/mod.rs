//! Simple Type Theory: simple types, Church-style lambda terms, typing,
//! capture-avoiding substitution and a beta-normalizer.

mod parse;
pub mod random;

pub use parse::{parse_context, parse_term, parse_type, ParseError};

use std::fmt;
use thiserror::Error;

/// Simple types over the base types `i` (individuals) and `o` (propositions).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SimpleType {
    I,
    O,
    Arrow(Box<SimpleType>, Box<SimpleType>),
}

impl SimpleType {
    pub fn arrow(dom: SimpleType, cod: SimpleType) -> SimpleType {
        SimpleType::Arrow(Box::new(dom), Box::new(cod))
    }

    pub fn is_base(&self) -> bool {
        matches!(self, SimpleType::I | SimpleType::O)
    }

    /// Splits `T -> U` into `(T, U)`.
    pub fn as_arrow(&self) -> Option<(&SimpleType, &SimpleType)> {
        match self {
            SimpleType::Arrow(d, c) => Some((d, c)),
            _ => None,
        }
    }
}

impl fmt::Display for SimpleType {
    /// Arrow is right-associative: `(((i->i)->i)->i->i)->i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleType::I => write!(f, "i"),
            SimpleType::O => write!(f, "o"),
            SimpleType::Arrow(d, c) => {
                if d.as_arrow().is_some() {
                    write!(f, "({})->{}", d, c)
                } else {
                    write!(f, "{}->{}", d, c)
                }
            }
        }
    }
}

/// Church-style terms with dedicated logical constructors at type `o`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SttTerm {
    Var(String),
    Const(String, SimpleType),
    App(Box<SttTerm>, Box<SttTerm>),
    Abs(String, SimpleType, Box<SttTerm>),
    Forall(String, SimpleType, Box<SttTerm>),
    Exists(String, SimpleType, Box<SttTerm>),
    And(Box<SttTerm>, Box<SttTerm>),
    Or(Box<SttTerm>, Box<SttTerm>),
    Implies(Box<SttTerm>, Box<SttTerm>),
    Not(Box<SttTerm>),
    Eq(Box<SttTerm>, Box<SttTerm>),
    Top,
    Bot,
}

impl SttTerm {
    pub fn var(name: impl Into<String>) -> SttTerm {
        SttTerm::Var(name.into())
    }

    pub fn app(f: SttTerm, a: SttTerm) -> SttTerm {
        SttTerm::App(Box::new(f), Box::new(a))
    }

    pub fn abs(x: impl Into<String>, ty: SimpleType, body: SttTerm) -> SttTerm {
        SttTerm::Abs(x.into(), ty, Box::new(body))
    }

    pub fn forall(x: impl Into<String>, ty: SimpleType, body: SttTerm) -> SttTerm {
        SttTerm::Forall(x.into(), ty, Box::new(body))
    }

    pub fn exists(x: impl Into<String>, ty: SimpleType, body: SttTerm) -> SttTerm {
        SttTerm::Exists(x.into(), ty, Box::new(body))
    }

    pub fn implies(p: SttTerm, q: SttTerm) -> SttTerm {
        SttTerm::Implies(Box::new(p), Box::new(q))
    }

    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        match self {
            SttTerm::Var(x) => {
                if !bound.iter().any(|b| b == x) && !out.iter().any(|o| o == x) {
                    out.push(x.clone());
                }
            }
            SttTerm::Const(..) | SttTerm::Top | SttTerm::Bot => {}
            SttTerm::App(f, a) | SttTerm::And(f, a) | SttTerm::Or(f, a)
            | SttTerm::Implies(f, a) | SttTerm::Eq(f, a) => {
                f.collect_free(bound, out);
                a.collect_free(bound, out);
            }
            SttTerm::Not(t) => t.collect_free(bound, out),
            SttTerm::Abs(x, _, b) | SttTerm::Forall(x, _, b) | SttTerm::Exists(x, _, b) => {
                bound.push(x.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_free_in(&self, x: &str) -> bool {
        self.free_vars().iter().any(|v| v == x)
    }
}

/// Ordered typing context; later bindings shadow earlier ones.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SttContext {
    entries: Vec<(String, SimpleType)>,
}

impl SttContext {
    pub fn new() -> SttContext {
        SttContext::default()
    }

    pub fn of(entries: &[(&str, SimpleType)]) -> SttContext {
        SttContext {
            entries: entries.iter().map(|(n, t)| (n.to_string(), t.clone())).collect(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, ty: SimpleType) {
        self.entries.push((name.into(), ty));
    }

    pub fn pop(&mut self) {
        self.entries.pop();
    }

    pub fn lookup(&self, name: &str) -> Option<&SimpleType> {
        self.entries.iter().rev().find(|(n, _)| n == name).map(|(_, t)| t)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(String, SimpleType)> {
        self.entries.iter()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TypeError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("type mismatch: expected `{expected}`, found `{found}`")]
    TypeMismatch { expected: String, found: String },
    #[error("quantifier or connective over a non-proposition of type `{0}`")]
    NonPropositionBody(String),
}

fn expect_type(expected: &SimpleType, found: &SimpleType) -> Result<(), TypeError> {
    if expected == found {
        Ok(())
    } else {
        Err(TypeError::TypeMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        })
    }
}

/// Returns the unique type of `t` in `ctx`.
pub fn typecheck(ctx: &SttContext, t: &SttTerm) -> Result<SimpleType, TypeError> {
    let mut ctx = ctx.clone();
    typecheck_mut(&mut ctx, t)
}

fn typecheck_mut(ctx: &mut SttContext, t: &SttTerm) -> Result<SimpleType, TypeError> {
    match t {
        SttTerm::Var(x) => ctx
            .lookup(x)
            .cloned()
            .ok_or_else(|| TypeError::UnboundVariable(x.clone())),
        SttTerm::Const(_, ty) => Ok(ty.clone()),
        SttTerm::App(f, a) => {
            let tf = typecheck_mut(ctx, f)?;
            let ta = typecheck_mut(ctx, a)?;
            match tf.as_arrow() {
                Some((dom, cod)) => {
                    expect_type(dom, &ta)?;
                    Ok(cod.clone())
                }
                None => Err(TypeError::TypeMismatch {
                    expected: format!("{}->_", ta),
                    found: tf.to_string(),
                }),
            }
        }
        SttTerm::Abs(x, ty, b) => {
            ctx.push(x.clone(), ty.clone());
            let tb = typecheck_mut(ctx, b);
            ctx.pop();
            Ok(SimpleType::arrow(ty.clone(), tb?))
        }
        SttTerm::Forall(x, ty, b) | SttTerm::Exists(x, ty, b) => {
            ctx.push(x.clone(), ty.clone());
            let tb = typecheck_mut(ctx, b);
            ctx.pop();
            let tb = tb?;
            if tb != SimpleType::O {
                return Err(TypeError::NonPropositionBody(tb.to_string()));
            }
            Ok(SimpleType::O)
        }
        SttTerm::And(p, q) | SttTerm::Or(p, q) | SttTerm::Implies(p, q) => {
            for side in [p, q] {
                let ts = typecheck_mut(ctx, side)?;
                if ts != SimpleType::O {
                    return Err(TypeError::NonPropositionBody(ts.to_string()));
                }
            }
            Ok(SimpleType::O)
        }
        SttTerm::Not(p) => {
            let tp = typecheck_mut(ctx, p)?;
            if tp != SimpleType::O {
                return Err(TypeError::NonPropositionBody(tp.to_string()));
            }
            Ok(SimpleType::O)
        }
        SttTerm::Eq(a, b) => {
            let ta = typecheck_mut(ctx, a)?;
            let tb = typecheck_mut(ctx, b)?;
            expect_type(&ta, &tb)?;
            Ok(SimpleType::O)
        }
        SttTerm::Top | SttTerm::Bot => Ok(SimpleType::O),
    }
}

/// Deterministic fresh-name scheme: strip an existing `'N` suffix from the
/// base, then try `base'1`, `base'2`, ...
pub fn fresh_name(base: &str, avoid: &[String]) -> String {
    let stem = match base.rfind('\'') {
        Some(pos) if base[pos + 1..].chars().all(|c| c.is_ascii_digit()) && pos + 1 < base.len() => {
            &base[..pos]
        }
        _ => base,
    };
    let mut n: u64 = 1;
    loop {
        let cand = format!("{}'{}", stem, n);
        if !avoid.iter().any(|a| *a == cand) {
            return cand;
        }
        n += 1;
    }
}

/// Capture-avoiding substitution of `u` for the free variable `x` in `t`.
pub fn substitute(t: &SttTerm, x: &str, u: &SttTerm) -> SttTerm {
    match t {
        SttTerm::Var(y) => {
            if y == x {
                u.clone()
            } else {
                t.clone()
            }
        }
        SttTerm::Const(..) | SttTerm::Top | SttTerm::Bot => t.clone(),
        SttTerm::App(f, a) => SttTerm::app(substitute(f, x, u), substitute(a, x, u)),
        SttTerm::And(p, q) => SttTerm::And(
            Box::new(substitute(p, x, u)),
            Box::new(substitute(q, x, u)),
        ),
        SttTerm::Or(p, q) => SttTerm::Or(
            Box::new(substitute(p, x, u)),
            Box::new(substitute(q, x, u)),
        ),
        SttTerm::Implies(p, q) => SttTerm::implies(substitute(p, x, u), substitute(q, x, u)),
        SttTerm::Eq(a, b) => SttTerm::Eq(
            Box::new(substitute(a, x, u)),
            Box::new(substitute(b, x, u)),
        ),
        SttTerm::Not(p) => SttTerm::Not(Box::new(substitute(p, x, u))),
        SttTerm::Abs(y, ty, b) => {
            let (y, b) = subst_under_binder(y, ty, b, x, u);
            SttTerm::Abs(y, ty.clone(), Box::new(b))
        }
        SttTerm::Forall(y, ty, b) => {
            let (y, b) = subst_under_binder(y, ty, b, x, u);
            SttTerm::Forall(y, ty.clone(), Box::new(b))
        }
        SttTerm::Exists(y, ty, b) => {
            let (y, b) = subst_under_binder(y, ty, b, x, u);
            SttTerm::Exists(y, ty.clone(), Box::new(b))
        }
    }
}

fn subst_under_binder(
    y: &str,
    _ty: &SimpleType,
    body: &SttTerm,
    x: &str,
    u: &SttTerm,
) -> (String, SttTerm) {
    if y == x || !body.is_free_in(x) {
        return (y.to_string(), body.clone());
    }
    if u.is_free_in(y) {
        // capture: rename the binder first
        let mut avoid = u.free_vars();
        avoid.extend(body.free_vars());
        avoid.push(x.to_string());
        let y2 = fresh_name(y, &avoid);
        let renamed = substitute(body, y, &SttTerm::var(y2.clone()));
        (y2.clone(), substitute(&renamed, x, u))
    } else {
        (y.to_string(), substitute(body, x, u))
    }
}

fn whnf(t: SttTerm) -> SttTerm {
    match t {
        SttTerm::App(f, a) => {
            let f = whnf(*f);
            if let SttTerm::Abs(x, _, b) = f {
                whnf(substitute(&b, &x, &a))
            } else {
                SttTerm::App(Box::new(f), a)
            }
        }
        other => other,
    }
}

/// Full beta-normal form (normal order); terminates on well-typed input.
pub fn beta_normalize(t: &SttTerm) -> SttTerm {
    match whnf(t.clone()) {
        SttTerm::App(f, a) => SttTerm::app(beta_normalize(&f), beta_normalize(&a)),
        SttTerm::Abs(x, ty, b) => SttTerm::Abs(x, ty, Box::new(beta_normalize(&b))),
        SttTerm::Forall(x, ty, b) => SttTerm::Forall(x, ty, Box::new(beta_normalize(&b))),
        SttTerm::Exists(x, ty, b) => SttTerm::Exists(x, ty, Box::new(beta_normalize(&b))),
        SttTerm::And(p, q) => {
            SttTerm::And(Box::new(beta_normalize(&p)), Box::new(beta_normalize(&q)))
        }
        SttTerm::Or(p, q) => {
            SttTerm::Or(Box::new(beta_normalize(&p)), Box::new(beta_normalize(&q)))
        }
        SttTerm::Implies(p, q) => SttTerm::implies(beta_normalize(&p), beta_normalize(&q)),
        SttTerm::Eq(a, b) => {
            SttTerm::Eq(Box::new(beta_normalize(&a)), Box::new(beta_normalize(&b)))
        }
        SttTerm::Not(p) => SttTerm::Not(Box::new(beta_normalize(&p))),
        leaf => leaf,
    }
}

/// Canonical renaming of all binders to `#0`, `#1`, ... in traversal order.
/// Two terms are alpha-equivalent iff their canonical forms are equal.
pub fn canonicalize(t: &SttTerm) -> SttTerm {
    fn go(t: &SttTerm, counter: &mut u64) -> SttTerm {
        match t {
            SttTerm::Abs(x, ty, b) | SttTerm::Forall(x, ty, b) | SttTerm::Exists(x, ty, b) => {
                let fresh = format!("#{}", *counter);
                *counter += 1;
                let body = substitute(b, x, &SttTerm::var(fresh.clone()));
                let body = go(&body, counter);
                match t {
                    SttTerm::Abs(..) => SttTerm::Abs(fresh, ty.clone(), Box::new(body)),
                    SttTerm::Forall(..) => SttTerm::Forall(fresh, ty.clone(), Box::new(body)),
                    _ => SttTerm::Exists(fresh, ty.clone(), Box::new(body)),
                }
            }
            SttTerm::App(f, a) => SttTerm::app(go(f, counter), go(a, counter)),
            SttTerm::And(p, q) => SttTerm::And(Box::new(go(p, counter)), Box::new(go(q, counter))),
            SttTerm::Or(p, q) => SttTerm::Or(Box::new(go(p, counter)), Box::new(go(q, counter))),
            SttTerm::Implies(p, q) => SttTerm::implies(go(p, counter), go(q, counter)),
            SttTerm::Eq(a, b) => SttTerm::Eq(Box::new(go(a, counter)), Box::new(go(b, counter))),
            SttTerm::Not(p) => SttTerm::Not(Box::new(go(p, counter))),
            leaf => leaf.clone(),
        }
    }
    go(t, &mut 0)
}

pub fn alpha_eq(a: &SttTerm, b: &SttTerm) -> bool {
    canonicalize(a) == canonicalize(b)
}

impl fmt::Display for SttTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        print_term(self, f, 0)
    }
}

// precedence levels: 0 binders/=> ... 5 application, 6 atoms
fn print_term(t: &SttTerm, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
    let paren = |f: &mut fmt::Formatter<'_>, need: bool, inner: &dyn Fn(&mut fmt::Formatter<'_>) -> fmt::Result| {
        if need {
            write!(f, "(")?;
            inner(f)?;
            write!(f, ")")
        } else {
            inner(f)
        }
    };
    match t {
        SttTerm::Var(x) => write!(f, "{}", x),
        SttTerm::Const(c, _) => write!(f, "{}", c),
        SttTerm::Top => write!(f, "true"),
        SttTerm::Bot => write!(f, "false"),
        SttTerm::Abs(x, ty, b) => paren(f, prec > 0, &|f| {
            write!(f, "fun {} : {} -> ", x, ty)?;
            print_term(b, f, 0)
        }),
        SttTerm::Forall(x, ty, b) => paren(f, prec > 0, &|f| {
            write!(f, "forall {} : {}, ", x, ty)?;
            print_term(b, f, 0)
        }),
        SttTerm::Exists(x, ty, b) => paren(f, prec > 0, &|f| {
            write!(f, "exists {} : {}, ", x, ty)?;
            print_term(b, f, 0)
        }),
        SttTerm::Implies(p, q) => paren(f, prec > 1, &|f| {
            print_term(p, f, 2)?;
            write!(f, " => ")?;
            print_term(q, f, 1)
        }),
        SttTerm::Or(p, q) => paren(f, prec > 2, &|f| {
            print_term(p, f, 3)?;
            write!(f, " \\/ ")?;
            print_term(q, f, 2)
        }),
        SttTerm::And(p, q) => paren(f, prec > 3, &|f| {
            print_term(p, f, 4)?;
            write!(f, " /\\ ")?;
            print_term(q, f, 3)
        }),
        SttTerm::Not(p) => paren(f, prec > 4, &|f| {
            write!(f, "~")?;
            print_term(p, f, 5)
        }),
        SttTerm::Eq(a, b) => paren(f, prec > 4, &|f| {
            print_term(a, f, 5)?;
            write!(f, " = ")?;
            print_term(b, f, 5)
        }),
        SttTerm::App(g, a) => paren(f, prec > 5, &|f| {
            print_term(g, f, 5)?;
            write!(f, " ")?;
            print_term(a, f, 6)
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use SimpleType as T;

    fn ii() -> T {
        T::arrow(T::I, T::I)
    }

    #[test]
    fn variable_lookup() {
        let ctx = SttContext::of(&[("x", T::I)]);
        assert_eq!(typecheck(&ctx, &SttTerm::var("x")), Ok(T::I));
    }

    // x : (i->i)->i |- fun y : ((i->i)->i)->i->i -> x (fun z : i -> y x z)
    fn sample_term() -> SttTerm {
        let y_ty = T::arrow(T::arrow(ii(), T::I), T::arrow(T::I, T::I));
        SttTerm::abs(
            "y",
            y_ty,
            SttTerm::app(
                SttTerm::var("x"),
                SttTerm::abs(
                    "z",
                    T::I,
                    SttTerm::app(
                        SttTerm::app(SttTerm::var("y"), SttTerm::var("x")),
                        SttTerm::var("z"),
                    ),
                ),
            ),
        )
    }

    #[test]
    fn sample_term_well_typed() {
        let ctx = SttContext::of(&[("x", T::arrow(ii(), T::I))]);
        let expected = T::arrow(
            T::arrow(T::arrow(ii(), T::I), T::arrow(T::I, T::I)),
            T::I,
        );
        assert_eq!(typecheck(&ctx, &sample_term()), Ok(expected));
    }

    #[test]
    fn sample_term_ill_typed_with_base_context() {
        let ctx = SttContext::of(&[("x", T::I)]);
        assert!(matches!(
            typecheck(&ctx, &sample_term()),
            Err(TypeError::TypeMismatch { .. })
        ));
    }

    #[test]
    fn substitute_base_case() {
        let t = substitute(&SttTerm::var("x"), "x", &SttTerm::var("y"));
        assert_eq!(t, SttTerm::var("y"));
    }

    #[test]
    fn substitute_capture_avoidance() {
        // (y/x)(fun y:i -> x) renames the binder
        let t = SttTerm::abs("y", T::I, SttTerm::var("x"));
        let r = substitute(&t, "x", &SttTerm::var("y"));
        match &r {
            SttTerm::Abs(b, _, body) => {
                assert_ne!(b, "y");
                assert_eq!(**body, SttTerm::var("y"));
            }
            other => panic!("unexpected result {:?}", other),
        }
        assert!(alpha_eq(&r, &SttTerm::abs("w", T::I, SttTerm::var("y"))));
    }

    #[test]
    fn substitute_under_binder() {
        // ((f x)/y) (P x y) = P x (f x)
        let p_x_y = SttTerm::app(
            SttTerm::app(SttTerm::var("P"), SttTerm::var("x")),
            SttTerm::var("y"),
        );
        let f_x = SttTerm::app(SttTerm::var("f"), SttTerm::var("x"));
        let expected = SttTerm::app(
            SttTerm::app(SttTerm::var("P"), SttTerm::var("x")),
            f_x.clone(),
        );
        assert_eq!(substitute(&p_x_y, "y", &f_x), expected);
    }

    #[test]
    fn beta_identity_redex() {
        let c = SttTerm::Const("c".into(), T::I);
        let t = SttTerm::app(SttTerm::abs("x", T::I, SttTerm::var("x")), c.clone());
        assert_eq!(beta_normalize(&t), c);
    }

    #[test]
    fn beta_inner_redex() {
        // P x ((fun z:i -> f z) x) normalizes to P x (f x)
        let fz = SttTerm::abs(
            "z",
            T::I,
            SttTerm::app(SttTerm::var("f"), SttTerm::var("z")),
        );
        let t = SttTerm::app(
            SttTerm::app(SttTerm::var("P"), SttTerm::var("x")),
            SttTerm::app(fz, SttTerm::var("x")),
        );
        let expected = SttTerm::app(
            SttTerm::app(SttTerm::var("P"), SttTerm::var("x")),
            SttTerm::app(SttTerm::var("f"), SttTerm::var("x")),
        );
        assert_eq!(beta_normalize(&t), expected);
    }

    #[test]
    fn beta_normal_term_unchanged() {
        let t = sample_term();
        assert_eq!(beta_normalize(&t), t);
    }

    #[test]
    fn fresh_names_are_deterministic() {
        let avoid = vec!["y'1".to_string()];
        assert_eq!(fresh_name("y", &avoid), "y'2");
        assert_eq!(fresh_name("y'9", &avoid), "y'2");
    }
}
