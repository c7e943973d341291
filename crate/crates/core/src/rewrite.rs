//! The rewrite system presentation of the combinator axioms: S and K on
//! terms, the epsilon rules turning dotted connectives into real ones on
//! formulas. Confluent and terminating, so normal forms are canonical and
//! equality modulo the system is decidable by normalize-and-compare.

use crate::families::Family;
use crate::msfol::{formula_alpha_eq, FolFormula, FolTerm};
use crate::stt::fresh_name;
use std::fmt;
use thiserror::Error;

pub const DEFAULT_FUEL: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Leftmost-outermost, the default everywhere.
    LeftmostOutermost,
    /// Innermost; used by the strategy-agreement suites.
    Innermost,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    S,
    K,
    EpsEq,
    EpsTop,
    EpsBot,
    EpsNot,
    EpsAnd,
    EpsOr,
    EpsImp,
    EpsAll,
    EpsEx,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::S => "S",
            Rule::K => "K",
            Rule::EpsEq => "eps-eq",
            Rule::EpsTop => "eps-top",
            Rule::EpsBot => "eps-bot",
            Rule::EpsNot => "eps-not",
            Rule::EpsAnd => "eps-and",
            Rule::EpsOr => "eps-or",
            Rule::EpsImp => "eps-imp",
            Rule::EpsAll => "eps-all",
            Rule::EpsEx => "eps-ex",
        };
        write!(f, "{}", s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("fuel exhausted after {0} rewrite steps")]
    FuelExhausted(u64),
}

/// Mutable step budget shared across one normalization.
struct Fuel {
    left: u64,
    initial: u64,
}

impl Fuel {
    fn new(fuel: u64) -> Fuel {
        Fuel { left: fuel, initial: fuel }
    }

    fn burn(&mut self) -> Result<(), RewriteError> {
        if self.left == 0 {
            return Err(RewriteError::FuelExhausted(self.initial));
        }
        self.left -= 1;
        Ok(())
    }
}

fn alpha_split(t: &FolTerm) -> Option<(&FolTerm, &FolTerm)> {
    if let FolTerm::FnApp(name, args) = t {
        if matches!(Family::of_name(name), Some(Family::Alpha(..))) {
            return Some((&args[0], &args[1]));
        }
    }
    None
}

fn constant_family(t: &FolTerm) -> Option<Family> {
    match t {
        FolTerm::FnApp(name, args) if args.is_empty() => Family::of_name(name),
        _ => None,
    }
}

fn mk_alpha(dom: &crate::stt::SimpleType, cod: &crate::stt::SimpleType, f: FolTerm, a: FolTerm) -> FolTerm {
    FolTerm::FnApp(Family::Alpha(dom.clone(), cod.clone()).name(), vec![f, a])
}

/// One root rewrite step on a term, if a rule applies there.
pub fn step_root(t: &FolTerm) -> Option<(Rule, FolTerm)> {
    use crate::stt::SimpleType as Ty;
    let (fun, z) = alpha_split(t)?;
    // K x y -> x
    if let Some((k, x)) = alpha_split(fun) {
        if matches!(constant_family(k), Some(Family::K(..))) {
            return Some((Rule::K, x.clone()));
        }
    }
    // S x y z -> (x z) (y z)
    if let Some((sx, y)) = alpha_split(fun) {
        if let Some((s, x)) = alpha_split(sx) {
            if let Some(Family::S(st, su, sv)) = constant_family(s) {
                let xz = mk_alpha(&st, &Ty::arrow(su.clone(), sv.clone()), x.clone(), z.clone());
                let yz = mk_alpha(&st, &su, y.clone(), z.clone());
                return Some((Rule::S, mk_alpha(&su, &sv, xz, yz)));
            }
        }
    }
    None
}

/// One leftmost-outermost step anywhere in the term.
fn step_lo(t: &FolTerm) -> Option<(Rule, FolTerm)> {
    if let Some(r) = step_root(t) {
        return Some(r);
    }
    if let FolTerm::FnApp(name, args) = t {
        for (i, a) in args.iter().enumerate() {
            if let Some((rule, a2)) = step_lo(a) {
                let mut args = args.clone();
                args[i] = a2;
                return Some((rule, FolTerm::FnApp(name.clone(), args)));
            }
        }
    }
    None
}

/// One innermost step: children first, root last.
fn step_inner(t: &FolTerm) -> Option<(Rule, FolTerm)> {
    if let FolTerm::FnApp(name, args) = t {
        for (i, a) in args.iter().enumerate() {
            if let Some((rule, a2)) = step_inner(a) {
                let mut args = args.clone();
                args[i] = a2;
                return Some((rule, FolTerm::FnApp(name.clone(), args)));
            }
        }
    }
    step_root(t)
}

pub fn step_term(t: &FolTerm, strategy: Strategy) -> Option<(Rule, FolTerm)> {
    match strategy {
        Strategy::LeftmostOutermost => step_lo(t),
        Strategy::Innermost => step_inner(t),
    }
}

pub fn normalize_term(t: &FolTerm, strategy: Strategy, fuel: u64) -> Result<FolTerm, RewriteError> {
    let mut fuel = Fuel::new(fuel);
    normalize_term_fueled(t, strategy, &mut fuel)
}

fn normalize_term_fueled(
    t: &FolTerm,
    strategy: Strategy,
    fuel: &mut Fuel,
) -> Result<FolTerm, RewriteError> {
    let mut cur = t.clone();
    while let Some((_, next)) = step_term(&cur, strategy) {
        fuel.burn()?;
        cur = next;
    }
    Ok(cur)
}

/// Every intermediate term from `t` to its normal form, inclusive.
pub fn trace_term(
    t: &FolTerm,
    strategy: Strategy,
    fuel: u64,
) -> Result<Vec<(Option<Rule>, FolTerm)>, RewriteError> {
    let mut fuel = Fuel::new(fuel);
    let mut out = vec![(None, t.clone())];
    let mut cur = t.clone();
    while let Some((rule, next)) = step_term(&cur, strategy) {
        fuel.burn()?;
        out.push((Some(rule), next.clone()));
        cur = next;
    }
    Ok(out)
}

/// The epsilon rule applicable to `eps(t)`, given `t` already a normal form
/// whose head is a dotted constant.
fn eps_expand(t: &FolTerm) -> Option<(Rule, FolFormula)> {
    use crate::stt::SimpleType as Ty;
    let eps = |u: &FolTerm| FolFormula::PredApp(crate::holsk::EPS.into(), vec![u.clone()]);
    if let Some(fam) = constant_family(t) {
        return match fam {
            Family::TopDot => Some((Rule::EpsTop, FolFormula::Top)),
            Family::BotDot => Some((Rule::EpsBot, FolFormula::Bot)),
            _ => None,
        };
    }
    let (fun, arg) = alpha_split(t)?;
    if let Some(fam) = constant_family(fun) {
        return match fam {
            Family::NotDot => Some((Rule::EpsNot, FolFormula::not(eps(arg)))),
            Family::AllDot(ref ty) | Family::ExDot(ref ty) => {
                let ty = ty.clone();
                let avoid: Vec<String> = arg.free_vars().into_iter().map(|(n, _)| n).collect();
                let y = if avoid.iter().any(|a| a == "y") {
                    fresh_name("y", &avoid)
                } else {
                    "y".to_string()
                };
                let yvar = FolTerm::var(y.clone(), ty.clone());
                let body = eps(&mk_alpha(&ty, &Ty::O, arg.clone(), yvar));
                Some(if matches!(fam, Family::AllDot(_)) {
                    (Rule::EpsAll, FolFormula::forall(y, ty, body))
                } else {
                    (Rule::EpsEx, FolFormula::exists(y, ty, body))
                })
            }
            _ => None,
        };
    }
    // binary dotted heads: eps(alpha(alpha(c, a), b))
    let (c, a) = alpha_split(fun)?;
    let fam = constant_family(c)?;
    match fam {
        Family::EqDot(_) => Some((Rule::EpsEq, FolFormula::Eq(a.clone(), arg.clone()))),
        Family::AndDot => Some((Rule::EpsAnd, FolFormula::and(eps(a), eps(arg)))),
        Family::OrDot => Some((Rule::EpsOr, FolFormula::or(eps(a), eps(arg)))),
        Family::ImpDot => Some((Rule::EpsImp, FolFormula::implies(eps(a), eps(arg)))),
        _ => None,
    }
}

pub fn normalize_formula(
    p: &FolFormula,
    strategy: Strategy,
    fuel: u64,
) -> Result<FolFormula, RewriteError> {
    let mut fuel = Fuel::new(fuel);
    normalize_formula_fueled(p, strategy, &mut fuel)
}

fn normalize_formula_fueled(
    p: &FolFormula,
    strategy: Strategy,
    fuel: &mut Fuel,
) -> Result<FolFormula, RewriteError> {
    match p {
        FolFormula::PredApp(name, args) if name == crate::holsk::EPS => {
            let t = normalize_term_fueled(&args[0], strategy, fuel)?;
            match eps_expand(&t) {
                Some((_, q)) => {
                    fuel.burn()?;
                    normalize_formula_fueled(&q, strategy, fuel)
                }
                None => Ok(FolFormula::PredApp(name.clone(), vec![t])),
            }
        }
        FolFormula::PredApp(name, args) => Ok(FolFormula::PredApp(
            name.clone(),
            args.iter()
                .map(|a| normalize_term_fueled(a, strategy, fuel))
                .collect::<Result<_, _>>()?,
        )),
        FolFormula::Eq(a, b) => Ok(FolFormula::Eq(
            normalize_term_fueled(a, strategy, fuel)?,
            normalize_term_fueled(b, strategy, fuel)?,
        )),
        FolFormula::Top => Ok(FolFormula::Top),
        FolFormula::Bot => Ok(FolFormula::Bot),
        FolFormula::Not(q) => Ok(FolFormula::not(normalize_formula_fueled(q, strategy, fuel)?)),
        FolFormula::And(a, b) => Ok(FolFormula::and(
            normalize_formula_fueled(a, strategy, fuel)?,
            normalize_formula_fueled(b, strategy, fuel)?,
        )),
        FolFormula::Or(a, b) => Ok(FolFormula::or(
            normalize_formula_fueled(a, strategy, fuel)?,
            normalize_formula_fueled(b, strategy, fuel)?,
        )),
        FolFormula::Implies(a, b) => Ok(FolFormula::implies(
            normalize_formula_fueled(a, strategy, fuel)?,
            normalize_formula_fueled(b, strategy, fuel)?,
        )),
        FolFormula::Iff(a, b) => Ok(FolFormula::iff(
            normalize_formula_fueled(a, strategy, fuel)?,
            normalize_formula_fueled(b, strategy, fuel)?,
        )),
        FolFormula::Forall(x, s, body) => Ok(FolFormula::forall(
            x.clone(),
            s.clone(),
            normalize_formula_fueled(body, strategy, fuel)?,
        )),
        FolFormula::Exists(x, s, body) => Ok(FolFormula::exists(
            x.clone(),
            s.clone(),
            normalize_formula_fueled(body, strategy, fuel)?,
        )),
    }
}

/// Equality modulo the rewrite system: alpha-equality of normal forms.
pub fn equal_modulo(a: &FolFormula, b: &FolFormula, fuel: u64) -> Result<bool, RewriteError> {
    let na = normalize_formula(a, Strategy::LeftmostOutermost, fuel)?;
    let nb = normalize_formula(b, Strategy::LeftmostOutermost, fuel)?;
    Ok(formula_alpha_eq(&na, &nb))
}

pub fn equal_modulo_terms(a: &FolTerm, b: &FolTerm, fuel: u64) -> Result<bool, RewriteError> {
    let na = normalize_term(a, Strategy::LeftmostOutermost, fuel)?;
    let nb = normalize_term(b, Strategy::LeftmostOutermost, fuel)?;
    Ok(na == nb)
}

/// Normalizes a batch of terms, in parallel when the `parallel` feature is
/// enabled.
#[cfg(feature = "parallel")]
pub fn normalize_batch(
    terms: &[FolTerm],
    strategy: Strategy,
    fuel: u64,
) -> Result<Vec<FolTerm>, RewriteError> {
    use rayon::prelude::*;
    terms
        .par_iter()
        .map(|t| normalize_term(t, strategy, fuel))
        .collect()
}

#[cfg(not(feature = "parallel"))]
pub fn normalize_batch(
    terms: &[FolTerm],
    strategy: Strategy,
    fuel: u64,
) -> Result<Vec<FolTerm>, RewriteError> {
    normalize_batch_sequential(terms, strategy, fuel)
}

/// Sequential batch normalization, kept unconditionally for benchmarking
/// against the parallel path.
pub fn normalize_batch_sequential(
    terms: &[FolTerm],
    strategy: Strategy,
    fuel: u64,
) -> Result<Vec<FolTerm>, RewriteError> {
    terms.iter().map(|t| normalize_term(t, strategy, fuel)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holsk::{eps, HolSkSignature};
    use crate::msfol::Sort;
    use crate::stt::SimpleType as T;

    fn var_i(n: &str) -> FolTerm {
        FolTerm::var(n, T::I)
    }

    fn k_redex() -> FolTerm {
        let mut sig = HolSkSignature::new();
        let k = sig.constant(&Family::K(T::I, T::I));
        let kx = sig.apply(k, &Family::K(T::I, T::I).rank().1, var_i("a"));
        sig.apply(kx, &T::arrow(T::I, T::I), var_i("b"))
    }

    #[test]
    fn k_rule_fires() {
        let t = k_redex();
        let (rule, r) = step_root(&t).expect("K redex reduces");
        assert_eq!(rule, Rule::K);
        assert_eq!(r, var_i("a"));
    }

    #[test]
    fn s_rule_fires() {
        // S x y z -> (x z) (y z), all at iota
        let mut sig = HolSkSignature::new();
        let fam = Family::S(T::I, T::I, T::I);
        let s = sig.constant(&fam);
        let x = FolTerm::var("x", T::arrow(T::I, T::arrow(T::I, T::I)));
        let y = FolTerm::var("y", T::arrow(T::I, T::I));
        let sx = sig.apply(s, &fam.rank().1, x.clone());
        let sxy = sig.apply(
            sx,
            &T::arrow(T::arrow(T::I, T::I), T::arrow(T::I, T::I)),
            y.clone(),
        );
        let sxyz = sig.apply(sxy, &T::arrow(T::I, T::I), var_i("z"));
        let (rule, r) = step_root(&sxyz).expect("S redex reduces");
        assert_eq!(rule, Rule::S);
        let xz = sig.apply(x, &T::arrow(T::I, T::arrow(T::I, T::I)), var_i("z"));
        let yz = sig.apply(y, &T::arrow(T::I, T::I), var_i("z"));
        let expected = sig.apply(xz, &T::arrow(T::I, T::I), yz);
        assert_eq!(r, expected);
    }

    #[test]
    fn normalize_is_idempotent_on_k() {
        let t = k_redex();
        let n = normalize_term(&t, Strategy::LeftmostOutermost, DEFAULT_FUEL).unwrap();
        assert_eq!(n, var_i("a"));
        assert_eq!(
            normalize_term(&n, Strategy::LeftmostOutermost, DEFAULT_FUEL).unwrap(),
            n
        );
    }

    #[test]
    fn trace_records_each_step() {
        let t = k_redex();
        let steps = trace_term(&t, Strategy::LeftmostOutermost, DEFAULT_FUEL).unwrap();
        assert_eq!(steps.len(), 2);
        assert_eq!(steps[1], (Some(Rule::K), var_i("a")));
    }

    #[test]
    fn fuel_exhaustion_reported() {
        let t = k_redex();
        assert_eq!(
            normalize_term(&t, Strategy::LeftmostOutermost, 0),
            Err(RewriteError::FuelExhausted(0))
        );
    }

    #[test]
    fn eps_of_top_dot() {
        let p = eps(FolTerm::constant("top."));
        assert_eq!(
            normalize_formula(&p, Strategy::LeftmostOutermost, DEFAULT_FUEL).unwrap(),
            FolFormula::Top
        );
    }

    #[test]
    fn eps_of_dotted_implication() {
        let mut sig = HolSkSignature::new();
        let c = sig.constant(&Family::ImpDot);
        let ca = sig.apply(c, &Family::ImpDot.rank().1, FolTerm::var("p", T::O));
        let cab = sig.apply(ca, &T::arrow(T::O, T::O), FolTerm::var("q", T::O));
        let n = normalize_formula(&eps(cab), Strategy::LeftmostOutermost, DEFAULT_FUEL).unwrap();
        assert_eq!(
            n,
            FolFormula::implies(eps(FolTerm::var("p", T::O)), eps(FolTerm::var("q", T::O)))
        );
    }

    #[test]
    fn eps_of_dotted_forall_binds_fresh_var() {
        let mut sig = HolSkSignature::new();
        let all = sig.constant(&Family::AllDot(T::I));
        let f = FolTerm::var("y", T::arrow(T::I, T::O));
        let t = sig.apply(all, &Family::AllDot(T::I).rank().1, f.clone());
        let n = normalize_formula(&eps(t), Strategy::LeftmostOutermost, DEFAULT_FUEL).unwrap();
        match &n {
            FolFormula::Forall(b, s, _) => {
                // the argument is itself named y, so the binder must dodge it
                assert_ne!(b, "y");
                assert_eq!(s, &Sort::Simple(T::I));
            }
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn strategies_agree_on_k_inside_s() {
        // S x (K a b) z has an inner K redex; both orders reach one NF
        let mut sig = HolSkSignature::new();
        let fam = Family::S(T::I, T::I, T::I);
        let s = sig.constant(&fam);
        let x = FolTerm::var("x", T::arrow(T::I, T::arrow(T::I, T::I)));
        let inner = {
            let k = sig.constant(&Family::K(T::arrow(T::I, T::I), T::I));
            let karg = FolTerm::var("w", T::arrow(T::I, T::I));
            let kx = sig.apply(k, &Family::K(T::arrow(T::I, T::I), T::I).rank().1, karg);
            sig.apply(kx, &T::arrow(T::I, T::arrow(T::I, T::I)), var_i("a"))
        };
        let sx = sig.apply(s, &fam.rank().1, x);
        let sxy = sig.apply(
            sx,
            &T::arrow(T::arrow(T::I, T::I), T::arrow(T::I, T::I)),
            inner,
        );
        let t = sig.apply(sxy, &T::arrow(T::I, T::I), var_i("z"));
        let lo = normalize_term(&t, Strategy::LeftmostOutermost, DEFAULT_FUEL).unwrap();
        let inn = normalize_term(&t, Strategy::Innermost, DEFAULT_FUEL).unwrap();
        assert_eq!(lo, inn);
    }

    #[test]
    fn batch_matches_pointwise() {
        let terms: Vec<FolTerm> = (0..64).map(|_| k_redex()).collect();
        let batch = normalize_batch(&terms, Strategy::LeftmostOutermost, DEFAULT_FUEL).unwrap();
        let seq =
            normalize_batch_sequential(&terms, Strategy::LeftmostOutermost, DEFAULT_FUEL).unwrap();
        assert_eq!(batch, seq);
        assert!(batch.iter().all(|t| *t == var_i("a")));
    }
}
