//! Many-sorted first-order logic with equality: sorts, ranked symbols,
//! terms, formulas and well-formedness. Skolem symbols live here as ranked
//! function symbols, so partial application of them is unrepresentable.

pub mod sexpr;

use crate::debruijn::DbSort;
use crate::stt::SimpleType;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

/// Opaque sort identifier. HOL-SK instantiates sorts with simple types,
/// the de Bruijn layer with context-type pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Simple(SimpleType),
    Db(DbSort),
}

impl Sort {
    pub fn simple(&self) -> Option<&SimpleType> {
        match self {
            Sort::Simple(t) => Some(t),
            Sort::Db(_) => None,
        }
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sort::Simple(t) => write!(f, "{}", t),
            Sort::Db(d) => write!(f, "{}", d),
        }
    }
}

impl From<SimpleType> for Sort {
    fn from(t: SimpleType) -> Sort {
        Sort::Simple(t)
    }
}

/// Argument sorts plus a result sort for functions, none for predicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rank {
    pub args: Vec<Sort>,
    pub result: Option<Sort>,
}

impl Rank {
    pub fn function(args: Vec<Sort>, result: Sort) -> Rank {
        Rank { args, result: Some(result) }
    }

    pub fn predicate(args: Vec<Sort>) -> Rank {
        Rank { args, result: None }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, s) in self.args.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", s)?;
        }
        if let Some(r) = &self.result {
            if !self.args.is_empty() {
                write!(f, ", ")?;
            }
            write!(f, "{}", r)?;
        }
        write!(f, ">")
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    functions: BTreeMap<String, Rank>,
    predicates: BTreeMap<String, Rank>,
    skolem: BTreeSet<String>,
    sorts: BTreeSet<Sort>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SigError {
    #[error("symbol `{0}` already declared")]
    Duplicate(String),
    #[error("`{0}` is not a function symbol")]
    NotAFunction(String),
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    pub fn add_function(&mut self, name: &str, args: Vec<Sort>, result: Sort) -> Result<(), SigError> {
        if self.functions.contains_key(name) || self.predicates.contains_key(name) {
            return Err(SigError::Duplicate(name.to_string()));
        }
        for s in args.iter().chain([&result]) {
            self.sorts.insert(s.clone());
        }
        self.functions.insert(name.to_string(), Rank::function(args, result));
        Ok(())
    }

    pub fn add_predicate(&mut self, name: &str, args: Vec<Sort>) -> Result<(), SigError> {
        if self.functions.contains_key(name) || self.predicates.contains_key(name) {
            return Err(SigError::Duplicate(name.to_string()));
        }
        for s in &args {
            self.sorts.insert(s.clone());
        }
        self.predicates.insert(name.to_string(), Rank::predicate(args));
        Ok(())
    }

    /// Declares a function symbol unless an identical declaration exists.
    pub fn ensure_function(&mut self, name: &str, args: Vec<Sort>, result: Sort) {
        if let Some(existing) = self.functions.get(name) {
            debug_assert_eq!(existing.args, args);
            debug_assert_eq!(existing.result.as_ref(), Some(&result));
            return;
        }
        self.add_function(name, args, result).expect("name clash with a predicate");
    }

    pub fn mark_skolem(&mut self, name: &str) -> Result<(), SigError> {
        if !self.functions.contains_key(name) {
            return Err(SigError::NotAFunction(name.to_string()));
        }
        self.skolem.insert(name.to_string());
        Ok(())
    }

    /// Forgets every Skolem marking; used by the naive mode, which treats
    /// witnesses as ordinary function symbols.
    pub fn unmark_skolem_all(&mut self) {
        self.skolem.clear();
    }

    pub fn is_skolem(&self, name: &str) -> bool {
        self.skolem.contains(name)
    }

    pub fn function(&self, name: &str) -> Option<&Rank> {
        self.functions.get(name)
    }

    pub fn predicate(&self, name: &str) -> Option<&Rank> {
        self.predicates.get(name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.functions.contains_key(name) || self.predicates.contains_key(name)
    }

    pub fn functions(&self) -> impl Iterator<Item = (&String, &Rank)> {
        self.functions.iter()
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&String, &Rank)> {
        self.predicates.iter()
    }

    pub fn skolem_symbols(&self) -> impl Iterator<Item = &String> {
        self.skolem.iter()
    }

    pub fn sorts(&self) -> impl Iterator<Item = &Sort> {
        self.sorts.iter()
    }

    pub fn add_sort(&mut self, sort: Sort) {
        self.sorts.insert(sort);
    }
}

/// First-order terms. A `FnApp` must carry exactly the symbol's declared
/// number of arguments; in particular a Skolem symbol only ever occurs fully
/// applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FolTerm {
    Var(String, Sort),
    FnApp(String, Vec<FolTerm>),
}

impl FolTerm {
    pub fn var(name: impl Into<String>, sort: impl Into<Sort>) -> FolTerm {
        FolTerm::Var(name.into(), sort.into())
    }

    pub fn constant(name: impl Into<String>) -> FolTerm {
        FolTerm::FnApp(name.into(), vec![])
    }

    pub fn free_vars(&self) -> Vec<(String, Sort)> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<(String, Sort)>) {
        match self {
            FolTerm::Var(x, s) => {
                if !out.iter().any(|(n, _)| n == x) {
                    out.push((x.clone(), s.clone()));
                }
            }
            FolTerm::FnApp(_, args) => {
                for a in args {
                    a.collect_vars(out);
                }
            }
        }
    }

    pub fn has_free_var(&self, x: &str) -> bool {
        match self {
            FolTerm::Var(y, _) => y == x,
            FolTerm::FnApp(_, args) => args.iter().any(|a| a.has_free_var(x)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FolFormula {
    PredApp(String, Vec<FolTerm>),
    Eq(FolTerm, FolTerm),
    Top,
    Bot,
    Not(Box<FolFormula>),
    And(Box<FolFormula>, Box<FolFormula>),
    Or(Box<FolFormula>, Box<FolFormula>),
    Implies(Box<FolFormula>, Box<FolFormula>),
    Iff(Box<FolFormula>, Box<FolFormula>),
    Forall(String, Sort, Box<FolFormula>),
    Exists(String, Sort, Box<FolFormula>),
}

impl FolFormula {
    pub fn not(p: FolFormula) -> FolFormula {
        FolFormula::Not(Box::new(p))
    }

    pub fn and(p: FolFormula, q: FolFormula) -> FolFormula {
        FolFormula::And(Box::new(p), Box::new(q))
    }

    pub fn or(p: FolFormula, q: FolFormula) -> FolFormula {
        FolFormula::Or(Box::new(p), Box::new(q))
    }

    pub fn implies(p: FolFormula, q: FolFormula) -> FolFormula {
        FolFormula::Implies(Box::new(p), Box::new(q))
    }

    pub fn iff(p: FolFormula, q: FolFormula) -> FolFormula {
        FolFormula::Iff(Box::new(p), Box::new(q))
    }

    pub fn forall(x: impl Into<String>, sort: impl Into<Sort>, body: FolFormula) -> FolFormula {
        FolFormula::Forall(x.into(), sort.into(), Box::new(body))
    }

    pub fn exists(x: impl Into<String>, sort: impl Into<Sort>, body: FolFormula) -> FolFormula {
        FolFormula::Exists(x.into(), sort.into(), Box::new(body))
    }

    pub fn free_vars(&self) -> Vec<(String, Sort)> {
        let mut out = Vec::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut Vec<(String, Sort)>) {
        match self {
            FolFormula::PredApp(_, args) => {
                for a in args {
                    for (n, s) in a.free_vars() {
                        if !bound.iter().any(|b| *b == n) && !out.iter().any(|(m, _)| *m == n) {
                            out.push((n, s));
                        }
                    }
                }
            }
            FolFormula::Eq(a, b) => {
                for t in [a, b] {
                    for (n, s) in t.free_vars() {
                        if !bound.iter().any(|x| *x == n) && !out.iter().any(|(m, _)| *m == n) {
                            out.push((n, s));
                        }
                    }
                }
            }
            FolFormula::Top | FolFormula::Bot => {}
            FolFormula::Not(p) => p.collect_free(bound, out),
            FolFormula::And(p, q)
            | FolFormula::Or(p, q)
            | FolFormula::Implies(p, q)
            | FolFormula::Iff(p, q) => {
                p.collect_free(bound, out);
                q.collect_free(bound, out);
            }
            FolFormula::Forall(x, _, p) | FolFormula::Exists(x, _, p) => {
                bound.push(x.clone());
                p.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn has_free_var(&self, x: &str) -> bool {
        self.free_vars().iter().any(|(n, _)| n == x)
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }
}

/// Sort context for named variables.
pub type SortContext = Vec<(String, Sort)>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WfError {
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("arity mismatch for `{symbol}`: expected {expected} arguments, found {found}")]
    ArityMismatch { symbol: String, expected: usize, found: usize },
    #[error("sort mismatch at `{at}`: expected `{expected}`, found `{found}`")]
    SortMismatch { at: String, expected: String, found: String },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("axiom `{0}` is not closed")]
    NonClosedAxiom(String),
}

/// Returns the sort of `t`; every `FnApp` is checked against the symbol's
/// rank. Variables must be listed in `ctx` with a matching sort.
pub fn wf_term(sig: &Signature, ctx: &SortContext, t: &FolTerm) -> Result<Sort, WfError> {
    match t {
        FolTerm::Var(x, s) => {
            let declared = ctx
                .iter()
                .rev()
                .find(|(n, _)| n == x)
                .map(|(_, s)| s)
                .ok_or_else(|| WfError::UnboundVariable(x.clone()))?;
            if declared != s {
                return Err(WfError::SortMismatch {
                    at: x.clone(),
                    expected: declared.to_string(),
                    found: s.to_string(),
                });
            }
            Ok(s.clone())
        }
        FolTerm::FnApp(f, args) => {
            let rank = sig
                .function(f)
                .ok_or_else(|| WfError::UnknownSymbol(f.clone()))?
                .clone();
            if rank.args.len() != args.len() {
                return Err(WfError::ArityMismatch {
                    symbol: f.clone(),
                    expected: rank.args.len(),
                    found: args.len(),
                });
            }
            for (expected, arg) in rank.args.iter().zip(args) {
                let found = wf_term(sig, ctx, arg)?;
                if found != *expected {
                    return Err(WfError::SortMismatch {
                        at: f.clone(),
                        expected: expected.to_string(),
                        found: found.to_string(),
                    });
                }
            }
            Ok(rank.result.clone().expect("function symbols carry a result sort"))
        }
    }
}

/// Like [`wf_term`] but trusts the sorts carried by variables; used where
/// the variable context is implicit in the term itself.
pub fn sort_of(sig: &Signature, t: &FolTerm) -> Result<Sort, WfError> {
    let ctx: SortContext = t.free_vars();
    wf_term(sig, &ctx, t)
}

/// Accepts iff every atom is rank-correct and every quantifier well-scoped.
pub fn wf_formula(sig: &Signature, ctx: &SortContext, p: &FolFormula) -> Result<(), WfError> {
    match p {
        FolFormula::PredApp(name, args) => {
            let rank = sig
                .predicate(name)
                .ok_or_else(|| WfError::UnknownSymbol(name.clone()))?
                .clone();
            if rank.args.len() != args.len() {
                return Err(WfError::ArityMismatch {
                    symbol: name.clone(),
                    expected: rank.args.len(),
                    found: args.len(),
                });
            }
            for (expected, arg) in rank.args.iter().zip(args) {
                let found = wf_term(sig, ctx, arg)?;
                if found != *expected {
                    return Err(WfError::SortMismatch {
                        at: name.clone(),
                        expected: expected.to_string(),
                        found: found.to_string(),
                    });
                }
            }
            Ok(())
        }
        FolFormula::Eq(a, b) => {
            let sa = wf_term(sig, ctx, a)?;
            let sb = wf_term(sig, ctx, b)?;
            if sa != sb {
                return Err(WfError::SortMismatch {
                    at: "=".into(),
                    expected: sa.to_string(),
                    found: sb.to_string(),
                });
            }
            Ok(())
        }
        FolFormula::Top | FolFormula::Bot => Ok(()),
        FolFormula::Not(q) => wf_formula(sig, ctx, q),
        FolFormula::And(a, b)
        | FolFormula::Or(a, b)
        | FolFormula::Implies(a, b)
        | FolFormula::Iff(a, b) => {
            wf_formula(sig, ctx, a)?;
            wf_formula(sig, ctx, b)
        }
        FolFormula::Forall(x, s, body) | FolFormula::Exists(x, s, body) => {
            let mut inner = ctx.clone();
            inner.push((x.clone(), s.clone()));
            wf_formula(sig, &inner, body)
        }
    }
}

/// Substitutes `t` for the free variable `x` in a term.
pub fn subst_term(u: &FolTerm, x: &str, t: &FolTerm) -> FolTerm {
    match u {
        FolTerm::Var(y, _) if y == x => t.clone(),
        FolTerm::Var(..) => u.clone(),
        FolTerm::FnApp(f, args) => {
            FolTerm::FnApp(f.clone(), args.iter().map(|a| subst_term(a, x, t)).collect())
        }
    }
}

/// Capture-avoiding, sort-preserving substitution of `t` for `x` in `p`.
/// The sort of `t` must match the sort carried by the occurrences of `x`.
pub fn subst_fol(
    sig: &Signature,
    p: &FolFormula,
    x: &str,
    t: &FolTerm,
) -> Result<FolFormula, WfError> {
    let t_sort = sort_of(sig, t)?;
    for (n, s) in p.free_vars() {
        if n == x && s != t_sort {
            return Err(WfError::SortMismatch {
                at: x.to_string(),
                expected: s.to_string(),
                found: t_sort.to_string(),
            });
        }
    }
    Ok(subst_unchecked(p, x, t))
}

pub fn subst_unchecked(p: &FolFormula, x: &str, t: &FolTerm) -> FolFormula {
    match p {
        FolFormula::PredApp(name, args) => FolFormula::PredApp(
            name.clone(),
            args.iter().map(|a| subst_term(a, x, t)).collect(),
        ),
        FolFormula::Eq(a, b) => FolFormula::Eq(subst_term(a, x, t), subst_term(b, x, t)),
        FolFormula::Top => FolFormula::Top,
        FolFormula::Bot => FolFormula::Bot,
        FolFormula::Not(q) => FolFormula::not(subst_unchecked(q, x, t)),
        FolFormula::And(a, b) => {
            FolFormula::and(subst_unchecked(a, x, t), subst_unchecked(b, x, t))
        }
        FolFormula::Or(a, b) => FolFormula::or(subst_unchecked(a, x, t), subst_unchecked(b, x, t)),
        FolFormula::Implies(a, b) => {
            FolFormula::implies(subst_unchecked(a, x, t), subst_unchecked(b, x, t))
        }
        FolFormula::Iff(a, b) => {
            FolFormula::iff(subst_unchecked(a, x, t), subst_unchecked(b, x, t))
        }
        FolFormula::Forall(y, s, body) | FolFormula::Exists(y, s, body) => {
            let forall = matches!(p, FolFormula::Forall(..));
            let rebuild = |y: String, body: FolFormula| {
                if forall {
                    FolFormula::forall(y, s.clone(), body)
                } else {
                    FolFormula::exists(y, s.clone(), body)
                }
            };
            if y == x || !body.has_free_var(x) {
                return rebuild(y.clone(), (**body).clone());
            }
            if t.has_free_var(y) {
                // rename the binder away from t's free variables
                let mut avoid: Vec<String> = t.free_vars().into_iter().map(|(n, _)| n).collect();
                avoid.extend(body.free_vars().into_iter().map(|(n, _)| n));
                avoid.push(x.to_string());
                let y2 = crate::stt::fresh_name(y, &avoid);
                let renamed = subst_unchecked(body, y, &FolTerm::Var(y2.clone(), s.clone()));
                rebuild(y2, subst_unchecked(&renamed, x, t))
            } else {
                rebuild(y.clone(), subst_unchecked(body, x, t))
            }
        }
    }
}

/// Alpha-equality of formulas: binders compared positionally.
pub fn formula_alpha_eq(a: &FolFormula, b: &FolFormula) -> bool {
    fn go(a: &FolFormula, b: &FolFormula, env: &mut Vec<(String, String)>) -> bool {
        match (a, b) {
            (FolFormula::PredApp(n1, a1), FolFormula::PredApp(n2, a2)) => {
                n1 == n2
                    && a1.len() == a2.len()
                    && a1.iter().zip(a2).all(|(x, y)| term_eq(x, y, env))
            }
            (FolFormula::Eq(x1, y1), FolFormula::Eq(x2, y2)) => {
                term_eq(x1, x2, env) && term_eq(y1, y2, env)
            }
            (FolFormula::Top, FolFormula::Top) | (FolFormula::Bot, FolFormula::Bot) => true,
            (FolFormula::Not(p), FolFormula::Not(q)) => go(p, q, env),
            (FolFormula::And(p1, q1), FolFormula::And(p2, q2))
            | (FolFormula::Or(p1, q1), FolFormula::Or(p2, q2))
            | (FolFormula::Implies(p1, q1), FolFormula::Implies(p2, q2))
            | (FolFormula::Iff(p1, q1), FolFormula::Iff(p2, q2)) => {
                go(p1, p2, env) && go(q1, q2, env)
            }
            (FolFormula::Forall(x1, s1, p1), FolFormula::Forall(x2, s2, p2))
            | (FolFormula::Exists(x1, s1, p1), FolFormula::Exists(x2, s2, p2)) => {
                if s1 != s2 {
                    return false;
                }
                env.push((x1.clone(), x2.clone()));
                let r = go(p1, p2, env);
                env.pop();
                r
            }
            _ => false,
        }
    }
    fn term_eq(a: &FolTerm, b: &FolTerm, env: &[(String, String)]) -> bool {
        match (a, b) {
            (FolTerm::Var(x, s1), FolTerm::Var(y, s2)) => {
                if s1 != s2 {
                    return false;
                }
                for (l, r) in env.iter().rev() {
                    if l == x || r == y {
                        return l == x && r == y;
                    }
                }
                x == y
            }
            (FolTerm::FnApp(f, a1), FolTerm::FnApp(g, a2)) => {
                f == g && a1.len() == a2.len() && a1.iter().zip(a2).all(|(x, y)| term_eq(x, y, env))
            }
            _ => false,
        }
    }
    go(a, b, &mut Vec::new())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedAxiom {
    pub name: String,
    pub formula: FolFormula,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Theory {
    pub signature: Signature,
    pub axioms: Vec<NamedAxiom>,
    pub provenance: Vec<String>,
}

impl Theory {
    pub fn new(signature: Signature) -> Theory {
        Theory { signature, axioms: Vec::new(), provenance: Vec::new() }
    }

    pub fn add_axiom(&mut self, name: impl Into<String>, formula: FolFormula) {
        self.axioms.push(NamedAxiom { name: name.into(), formula });
    }

    pub fn axiom(&self, name: &str) -> Option<&NamedAxiom> {
        self.axioms.iter().find(|a| a.name == name)
    }

    /// Every axiom must be closed and well-formed over the signature.
    pub fn check(&self) -> Result<(), WfError> {
        for ax in &self.axioms {
            if !ax.formula.is_closed() {
                return Err(WfError::NonClosedAxiom(ax.name.clone()));
            }
            wf_formula(&self.signature, &Vec::new(), &ax.formula)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stt::SimpleType as T;

    fn iota() -> Sort {
        Sort::Simple(T::I)
    }

    fn sig_with_g_c() -> Signature {
        let mut sig = Signature::new();
        // g : <i, i> (unary function on individuals), c : <i> (constant)
        sig.add_function("g", vec![iota()], iota()).unwrap();
        sig.add_function("c", vec![], iota()).unwrap();
        sig
    }

    #[test]
    fn fnapp_sort() {
        let sig = sig_with_g_c();
        let t = FolTerm::FnApp("g".into(), vec![FolTerm::constant("c")]);
        assert_eq!(wf_term(&sig, &Vec::new(), &t), Ok(iota()));
    }

    #[test]
    fn nullary_constant() {
        let sig = sig_with_g_c();
        assert_eq!(wf_term(&sig, &Vec::new(), &FolTerm::constant("c")), Ok(iota()));
    }

    #[test]
    fn skolem_symbol_alone_is_not_a_term() {
        let mut sig = Signature::new();
        sig.add_function("f", vec![iota()], iota()).unwrap();
        sig.mark_skolem("f").unwrap();
        // f given zero arguments is an arity error
        let t = FolTerm::FnApp("f".into(), vec![]);
        assert_eq!(
            wf_term(&sig, &Vec::new(), &t),
            Err(WfError::ArityMismatch { symbol: "f".into(), expected: 1, found: 0 })
        );
    }

    #[test]
    fn eps_demands_sort_o() {
        let mut sig = sig_with_g_c();
        sig.add_predicate("eps", vec![Sort::Simple(T::O)]).unwrap();
        let p = FolFormula::PredApp("eps".into(), vec![FolTerm::constant("c")]);
        assert!(matches!(
            wf_formula(&sig, &Vec::new(), &p),
            Err(WfError::SortMismatch { .. })
        ));
    }

    #[test]
    fn heterogeneous_equality_rejected() {
        let mut sig = sig_with_g_c();
        sig.add_function("d", vec![], Sort::Simple(T::O)).unwrap();
        let p = FolFormula::Eq(FolTerm::constant("c"), FolTerm::constant("d"));
        assert!(matches!(
            wf_formula(&sig, &Vec::new(), &p),
            Err(WfError::SortMismatch { .. })
        ));
    }

    #[test]
    fn forall_p_eps_p_accepted() {
        let mut sig = Signature::new();
        sig.add_predicate("eps", vec![Sort::Simple(T::O)]).unwrap();
        let p = FolFormula::forall(
            "p",
            Sort::Simple(T::O),
            FolFormula::implies(
                FolFormula::PredApp("eps".into(), vec![FolTerm::var("p", T::O)]),
                FolFormula::PredApp("eps".into(), vec![FolTerm::var("p", T::O)]),
            ),
        );
        assert_eq!(wf_formula(&sig, &Vec::new(), &p), Ok(()));
    }

    #[test]
    fn subst_simple() {
        let sig = sig_with_g_c();
        let mut sig = sig;
        sig.add_predicate("P", vec![iota()]).unwrap();
        let p = FolFormula::PredApp("P".into(), vec![FolTerm::var("y", T::I)]);
        let r = subst_fol(&sig, &p, "y", &FolTerm::constant("c")).unwrap();
        assert_eq!(r, FolFormula::PredApp("P".into(), vec![FolTerm::constant("c")]));
    }

    #[test]
    fn subst_capture_avoidance() {
        // (g(x)/y) forall x. Q(x, y)  renames the bound x
        let mut sig = sig_with_g_c();
        sig.add_predicate("Q", vec![iota(), iota()]).unwrap();
        let p = FolFormula::forall(
            "x",
            iota(),
            FolFormula::PredApp(
                "Q".into(),
                vec![FolTerm::var("x", T::I), FolTerm::var("y", T::I)],
            ),
        );
        let gx = FolTerm::FnApp("g".into(), vec![FolTerm::var("x", T::I)]);
        let r = subst_fol(&sig, &p, "y", &gx).unwrap();
        match &r {
            FolFormula::Forall(b, _, body) => {
                assert_ne!(b, "x");
                assert!(body.has_free_var("x"));
            }
            other => panic!("unexpected {:?}", other),
        }
        // and the result is well-formed given x free
        let ctx: SortContext = vec![("x".into(), iota())];
        assert_eq!(wf_formula(&sig, &ctx, &r), Ok(()));
    }

    #[test]
    fn alpha_eq_on_renamed_binders() {
        let p = FolFormula::forall("x", iota(), FolFormula::Eq(
            FolTerm::var("x", T::I),
            FolTerm::var("x", T::I),
        ));
        let q = FolFormula::forall("z", iota(), FolFormula::Eq(
            FolTerm::var("z", T::I),
            FolTerm::var("z", T::I),
        ));
        assert!(formula_alpha_eq(&p, &q));
    }
}
