//! Lambda calculus with de Bruijn indices as a first-order language, and
//! sorts pairing a context with a type. Once names are dropped the lambda
//! symbol is an ordinary unary function symbol; indices exceeding the number
//! of lambdas above them are "free indices" and take their types from a
//! context, which is what makes Miller's second condition a sort discipline.

use crate::msfol::{Signature, Sort};
use crate::stt::{SimpleType, SttContext, SttTerm, TypeError};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// De Bruijn terms with 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DbTerm {
    Index(u32),
    App(Box<DbTerm>, Box<DbTerm>),
    Lam(SimpleType, Box<DbTerm>),
    Const(String, SimpleType),
}

impl DbTerm {
    pub fn app(f: DbTerm, a: DbTerm) -> DbTerm {
        DbTerm::App(Box::new(f), Box::new(a))
    }

    pub fn lam(ty: SimpleType, body: DbTerm) -> DbTerm {
        DbTerm::Lam(ty, Box::new(body))
    }

    /// Free indices as seen from outside the term (1-based).
    pub fn free_indices(&self) -> BTreeSet<u32> {
        fn go(t: &DbTerm, depth: u32, out: &mut BTreeSet<u32>) {
            match t {
                DbTerm::Index(n) => {
                    if *n > depth {
                        out.insert(n - depth);
                    }
                }
                DbTerm::App(f, a) => {
                    go(f, depth, out);
                    go(a, depth, out);
                }
                DbTerm::Lam(_, b) => go(b, depth + 1, out),
                DbTerm::Const(..) => {}
            }
        }
        let mut out = BTreeSet::new();
        go(self, 0, &mut out);
        out
    }
}

/// Position k (0-based) gives the type of free indices exceeding the binder
/// depth by k+1.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DbContext(pub Vec<SimpleType>);

impl DbContext {
    pub fn empty() -> DbContext {
        DbContext(Vec::new())
    }

    pub fn get(&self, k: usize) -> Option<&SimpleType> {
        self.0.get(k)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for DbContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, t) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", t)?;
        }
        write!(f, "]")
    }
}

/// The pair Gamma |- T. Sorts with an empty context are de Bruijn-closed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DbSort {
    pub context: DbContext,
    pub ty: SimpleType,
}

impl DbSort {
    pub fn closed(ty: SimpleType) -> DbSort {
        DbSort { context: DbContext::empty(), ty }
    }

    pub fn open(context: Vec<SimpleType>, ty: SimpleType) -> DbSort {
        DbSort { context: DbContext(context), ty }
    }
}

impl fmt::Display for DbSort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.context.is_empty() {
            write!(f, "|-{}", self.ty)
        } else {
            write!(f, "{}|-{}", self.context, self.ty)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DbError {
    #[error("free index {0} is not covered by the context")]
    DanglingIndex(u32),
    #[error("type mismatch: expected `{expected}`, found `{found}`")]
    TypeMismatch { expected: String, found: String },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("term uses `{0}`, which has no de Bruijn counterpart")]
    UnsupportedConstruct(String),
    #[error("skolem symbol `{symbol}` has a non-empty context sort at {position}")]
    NonEmptyContextSort { symbol: String, position: String },
    #[error("skolem symbol `{symbol}` has a non de Bruijn sort at {position}")]
    NotDbSort { symbol: String, position: String },
}

impl From<TypeError> for DbError {
    fn from(e: TypeError) -> DbError {
        match e {
            TypeError::UnboundVariable(x) => DbError::UnboundVariable(x),
            TypeError::TypeMismatch { expected, found } => DbError::TypeMismatch { expected, found },
            TypeError::NonPropositionBody(t) => DbError::UnsupportedConstruct(format!(
                "proposition former over `{}`",
                t
            )),
        }
    }
}

/// Drops binder names from a pure lambda term. Free variables are
/// enumerated in order of first occurrence; their types are read from
/// `ctx`. Returns the nameless term, the de Bruijn context and the
/// enumeration order.
pub fn to_debruijn(
    ctx: &SttContext,
    t: &SttTerm,
) -> Result<(DbTerm, DbContext, Vec<String>), DbError> {
    let mut order = Vec::new();
    collect_free_order(t, &mut Vec::new(), &mut order);
    let term = to_debruijn_in(&order, t)?;
    let mut types = Vec::new();
    for name in &order {
        let ty = ctx
            .lookup(name)
            .ok_or_else(|| DbError::UnboundVariable(name.clone()))?;
        types.push(ty.clone());
    }
    Ok((term, DbContext(types), order))
}

fn collect_free_order(t: &SttTerm, bound: &mut Vec<String>, out: &mut Vec<String>) {
    match t {
        SttTerm::Var(x) => {
            if !bound.iter().any(|b| b == x) && !out.iter().any(|o| o == x) {
                out.push(x.clone());
            }
        }
        SttTerm::Const(..) => {}
        SttTerm::App(f, a) => {
            collect_free_order(f, bound, out);
            collect_free_order(a, bound, out);
        }
        SttTerm::Abs(x, _, b) => {
            bound.push(x.clone());
            collect_free_order(b, bound, out);
            bound.pop();
        }
        _ => {}
    }
}

/// Conversion against an explicit free-variable order.
pub fn to_debruijn_in(order: &[String], t: &SttTerm) -> Result<DbTerm, DbError> {
    fn go(t: &SttTerm, bound: &mut Vec<String>, order: &[String]) -> Result<DbTerm, DbError> {
        match t {
            SttTerm::Var(x) => {
                if let Some(pos) = bound.iter().rev().position(|b| b == x) {
                    Ok(DbTerm::Index(pos as u32 + 1))
                } else if let Some(k) = order.iter().position(|o| o == x) {
                    Ok(DbTerm::Index(bound.len() as u32 + k as u32 + 1))
                } else {
                    Err(DbError::UnboundVariable(x.clone()))
                }
            }
            SttTerm::Const(c, ty) => Ok(DbTerm::Const(c.clone(), ty.clone())),
            SttTerm::App(f, a) => Ok(DbTerm::app(go(f, bound, order)?, go(a, bound, order)?)),
            SttTerm::Abs(x, ty, b) => {
                bound.push(x.clone());
                let body = go(b, bound, order);
                bound.pop();
                Ok(DbTerm::lam(ty.clone(), body?))
            }
            other => Err(DbError::UnsupportedConstruct(format!("{}", other))),
        }
    }
    go(t, &mut Vec::new(), order)
}

/// Restores names; the inverse of [`to_debruijn`] up to alpha-equivalence.
/// `names` supplies the free-variable names in context order; missing
/// entries are synthesized.
pub fn from_debruijn(t: &DbTerm, ctx: &DbContext, names: &[String]) -> Result<SttTerm, DbError> {
    fn go(
        t: &DbTerm,
        bound: &mut Vec<String>,
        ctx: &DbContext,
        names: &[String],
        counter: &mut u64,
    ) -> Result<SttTerm, DbError> {
        match t {
            DbTerm::Index(n) => {
                let n = *n as usize;
                if n <= bound.len() {
                    Ok(SttTerm::var(&bound[bound.len() - n]))
                } else {
                    let k = n - bound.len() - 1;
                    if ctx.get(k).is_none() {
                        return Err(DbError::DanglingIndex(n as u32));
                    }
                    let name = names
                        .get(k)
                        .cloned()
                        .unwrap_or_else(|| format!("f{}", k + 1));
                    Ok(SttTerm::var(name))
                }
            }
            DbTerm::Const(c, ty) => Ok(SttTerm::Const(c.clone(), ty.clone())),
            DbTerm::App(f, a) => Ok(SttTerm::app(
                go(f, bound, ctx, names, counter)?,
                go(a, bound, ctx, names, counter)?,
            )),
            DbTerm::Lam(ty, b) => {
                *counter += 1;
                let x = format!("v{}", counter);
                bound.push(x.clone());
                let body = go(b, bound, ctx, names, counter);
                bound.pop();
                Ok(SttTerm::abs(x, ty.clone(), body?))
            }
        }
    }
    go(t, &mut Vec::new(), ctx, names, &mut 0)
}

/// The unique type of `t` relative to `ctx`: a lambda pushes its annotation,
/// an index reads either an enclosing annotation or the context.
pub fn typecheck_db(t: &DbTerm, ctx: &DbContext) -> Result<SimpleType, DbError> {
    fn go(t: &DbTerm, depth: &mut Vec<SimpleType>, ctx: &DbContext) -> Result<SimpleType, DbError> {
        match t {
            DbTerm::Index(n) => {
                let n = *n as usize;
                if n <= depth.len() {
                    Ok(depth[depth.len() - n].clone())
                } else {
                    ctx.get(n - depth.len() - 1)
                        .cloned()
                        .ok_or(DbError::DanglingIndex(*t_index(t)))
                }
            }
            DbTerm::Const(_, ty) => Ok(ty.clone()),
            DbTerm::App(f, a) => {
                let tf = go(f, depth, ctx)?;
                let ta = go(a, depth, ctx)?;
                match tf.as_arrow() {
                    Some((dom, cod)) if *dom == ta => Ok(cod.clone()),
                    Some((dom, _)) => Err(DbError::TypeMismatch {
                        expected: dom.to_string(),
                        found: ta.to_string(),
                    }),
                    None => Err(DbError::TypeMismatch {
                        expected: format!("{}->_", ta),
                        found: tf.to_string(),
                    }),
                }
            }
            DbTerm::Lam(ty, b) => {
                depth.push(ty.clone());
                let tb = go(b, depth, ctx);
                depth.pop();
                Ok(SimpleType::arrow(ty.clone(), tb?))
            }
        }
    }
    fn t_index(t: &DbTerm) -> &u32 {
        match t {
            DbTerm::Index(n) => n,
            _ => unreachable!(),
        }
    }
    go(t, &mut Vec::new(), ctx)
}

/// Adds `amount` to every index free above `cutoff`.
pub fn shift(t: &DbTerm, amount: i64, cutoff: u32) -> DbTerm {
    match t {
        DbTerm::Index(n) => {
            if *n > cutoff {
                DbTerm::Index((*n as i64 + amount) as u32)
            } else {
                DbTerm::Index(*n)
            }
        }
        DbTerm::App(f, a) => DbTerm::app(shift(f, amount, cutoff), shift(a, amount, cutoff)),
        DbTerm::Lam(ty, b) => DbTerm::lam(ty.clone(), shift(b, amount, cutoff + 1)),
        DbTerm::Const(..) => t.clone(),
    }
}

/// Replaces index `n` by `u` (lifting `u` under binders) and decrements the
/// indices above `n`, as when a binder is consumed.
pub fn db_substitute(t: &DbTerm, n: u32, u: &DbTerm) -> DbTerm {
    match t {
        DbTerm::Index(k) => {
            if *k == n {
                shift(u, (n - 1) as i64, 0)
            } else if *k > n {
                DbTerm::Index(k - 1)
            } else {
                DbTerm::Index(*k)
            }
        }
        DbTerm::App(f, a) => DbTerm::app(db_substitute(f, n, u), db_substitute(a, n, u)),
        DbTerm::Lam(ty, b) => DbTerm::lam(ty.clone(), db_substitute(b, n + 1, u)),
        DbTerm::Const(..) => t.clone(),
    }
}

/// Single beta step on a top-level redex.
pub fn db_beta(t: &DbTerm) -> Option<DbTerm> {
    match t {
        DbTerm::App(f, a) => match &**f {
            DbTerm::Lam(_, b) => Some(db_substitute(b, 1, a)),
            _ => None,
        },
        _ => None,
    }
}

/// Miller's second condition as a sort discipline: the rank of a Skolem
/// symbol over de Bruijn sorts may only mention empty-context sorts.
pub fn skolem_sort_check(sig: &Signature, f: &str) -> Result<(), DbError> {
    let rank = sig.function(f).ok_or_else(|| DbError::UnboundVariable(f.to_string()))?;
    let positions = rank
        .args
        .iter()
        .enumerate()
        .map(|(i, s)| (format!("argument {}", i + 1), s))
        .chain(rank.result.iter().map(|s| ("result".to_string(), s)));
    for (position, sort) in positions {
        match sort {
            Sort::Db(db) if db.context.is_empty() => {}
            Sort::Db(_) => {
                return Err(DbError::NonEmptyContextSort {
                    symbol: f.to_string(),
                    position,
                })
            }
            Sort::Simple(_) => {
                return Err(DbError::NotDbSort { symbol: f.to_string(), position })
            }
        }
    }
    Ok(())
}

impl fmt::Display for DbTerm {
    /// Elided form: `\.\.(2 \.(2 3 1))`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DbTerm::Index(n) => write!(f, "{}", n),
            DbTerm::Const(c, _) => write!(f, "{}", c),
            DbTerm::Lam(_, b) => {
                write!(f, "\\.")?;
                match &**b {
                    DbTerm::App(..) => write!(f, "{}", b),
                    other => write!(f, "{}", other),
                }
            }
            DbTerm::App(..) => {
                // flatten the application spine
                let mut spine = Vec::new();
                let mut cur = self;
                while let DbTerm::App(g, a) = cur {
                    spine.push(&**a);
                    cur = g;
                }
                spine.push(cur);
                spine.reverse();
                write!(f, "(")?;
                for (i, s) in spine.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{}", s)?;
                }
                write!(f, ")")
            }
        }
    }
}

impl DbTerm {
    /// Annotated form used by `.dbt` files: `\[T].body`.
    pub fn print_annotated(&self) -> String {
        match self {
            DbTerm::Index(n) => n.to_string(),
            DbTerm::Const(c, _) => c.clone(),
            DbTerm::Lam(ty, b) => format!("\\[{}].{}", ty, b.print_annotated()),
            DbTerm::App(..) => {
                let mut spine = Vec::new();
                let mut cur = self;
                while let DbTerm::App(g, a) = cur {
                    spine.push(&**a);
                    cur = g;
                }
                spine.push(cur);
                spine.reverse();
                let parts: Vec<String> = spine.iter().map(|s| s.print_annotated()).collect();
                format!("({})", parts.join(" "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stt::{alpha_eq, SimpleType as T};

    fn ii() -> T {
        T::arrow(T::I, T::I)
    }

    fn x_ty() -> T {
        T::arrow(ii(), T::I)
    }

    fn y_ty() -> T {
        T::arrow(x_ty(), T::arrow(T::I, T::I))
    }

    // fun x fun y (x (fun z (y x z)))
    fn two_binder_closed() -> SttTerm {
        SttTerm::abs("x", x_ty(), two_binder_open())
    }

    // fun y (x (fun z (y x z))) with x free
    fn two_binder_open() -> SttTerm {
        SttTerm::abs(
            "y",
            y_ty(),
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
    fn closed_term_prints_expected() {
        let (db, ctx, _) = to_debruijn(&SttContext::new(), &two_binder_closed()).unwrap();
        assert_eq!(db.to_string(), "\\.\\.(2 \\.(2 3 1))");
        assert!(ctx.is_empty());
    }

    #[test]
    fn open_term_has_free_indices() {
        let ctx = SttContext::of(&[("x", x_ty())]);
        let (db, dbctx, order) = to_debruijn(&ctx, &two_binder_open()).unwrap();
        assert_eq!(db.to_string(), "\\.(2 \\.(2 3 1))");
        assert_eq!(dbctx, DbContext(vec![x_ty()]));
        assert_eq!(order, vec!["x".to_string()]);
        assert_eq!(db.free_indices(), [1u32].into_iter().collect());
    }

    #[test]
    fn single_binder() {
        let t = SttTerm::abs("x", T::I, SttTerm::var("x"));
        let (db, _, _) = to_debruijn(&SttContext::new(), &t).unwrap();
        assert_eq!(db, DbTerm::lam(T::I, DbTerm::Index(1)));
        assert_eq!(db.to_string(), "\\.1");
    }

    #[test]
    fn round_trip_restores_alpha_equivalent_term() {
        let (db, dbctx, names) = to_debruijn(&SttContext::new(), &two_binder_closed()).unwrap();
        let back = from_debruijn(&db, &dbctx, &names).unwrap();
        assert!(alpha_eq(&back, &two_binder_closed()));
    }

    #[test]
    fn from_debruijn_dangling_index() {
        assert_eq!(
            from_debruijn(&DbTerm::Index(1), &DbContext::empty(), &[]),
            Err(DbError::DanglingIndex(1))
        );
    }

    #[test]
    fn typecheck_open_term() {
        let ctx = SttContext::of(&[("x", x_ty())]);
        let (db, dbctx, _) = to_debruijn(&ctx, &two_binder_open()).unwrap();
        let ty = typecheck_db(&db, &dbctx).unwrap();
        assert_eq!(ty.to_string(), "(((i->i)->i)->i->i)->i");
    }

    #[test]
    fn typecheck_identity_and_dangling() {
        let id = DbTerm::lam(T::I, DbTerm::Index(1));
        assert_eq!(typecheck_db(&id, &DbContext::empty()), Ok(ii()));
        let dangle = DbTerm::lam(T::I, DbTerm::Index(2));
        assert_eq!(
            typecheck_db(&dangle, &DbContext::empty()),
            Err(DbError::DanglingIndex(2))
        );
    }

    #[test]
    fn beta_identity() {
        let c = DbTerm::Const("c".into(), T::I);
        let t = DbTerm::app(DbTerm::lam(T::I, DbTerm::Index(1)), c.clone());
        assert_eq!(db_beta(&t), Some(c));
    }

    #[test]
    fn substitute_index_one() {
        let c = DbTerm::Const("c".into(), T::I);
        assert_eq!(db_substitute(&DbTerm::Index(1), 1, &c), c);
    }

    #[test]
    fn skolem_sort_check_cases() {
        let mut sig = Signature::new();
        let closed_i = Sort::Db(DbSort::closed(T::I));
        let open_i = Sort::Db(DbSort::open(vec![T::I], T::I));
        sig.add_function("f", vec![closed_i.clone()], closed_i.clone()).unwrap();
        sig.mark_skolem("f").unwrap();
        assert_eq!(skolem_sort_check(&sig, "f"), Ok(()));

        sig.add_function("g", vec![open_i], closed_i.clone()).unwrap();
        sig.mark_skolem("g").unwrap();
        assert_eq!(
            skolem_sort_check(&sig, "g"),
            Err(DbError::NonEmptyContextSort {
                symbol: "g".into(),
                position: "argument 1".into()
            })
        );

        sig.add_function("c", vec![], closed_i).unwrap();
        sig.mark_skolem("c").unwrap();
        assert_eq!(skolem_sort_check(&sig, "c"), Ok(()));
    }
}
