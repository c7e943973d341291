//! Skolemization of closed formulas, in two flavours: the naive rule that
//! adds the witness as an ordinary function symbol, and the sound variant
//! that marks it as a Skolem symbol, subjecting later abstraction to the
//! occurs-check on its arguments.

use crate::families::Family;
use crate::msfol::{subst_unchecked, FolFormula, FolTerm, Rank, Signature, Sort};
use crate::stt::{fresh_name, SimpleType};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SkolemizationMode {
    /// Plain first-order skolemization; the new symbol behaves like any
    /// other function symbol and may be abstracted over.
    Naive,
    /// Ranked Skolem symbols with the two side conditions: always fully
    /// applied, and no binding into their arguments.
    #[default]
    Miller,
}

impl fmt::Display for SkolemizationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkolemizationMode::Naive => write!(f, "naive"),
            SkolemizationMode::Miller => write!(f, "miller"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkolemError {
    #[error("formula has no prenex form: quantifier under `<=>`")]
    NotPrenex,
    #[error("formula has no existential quantifier to eliminate")]
    NoExistential,
    #[error("skolem symbol name `{0}` is already declared")]
    NameCollision(String),
    #[error("axiom must be closed, found free `{0}`")]
    NotClosed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quant {
    Forall,
    Exists,
}

/// Prenex form: a quantifier prefix over a quantifier-free matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prenex {
    pub prefix: Vec<(Quant, String, Sort)>,
    pub matrix: FolFormula,
}

impl Prenex {
    pub fn to_formula(&self) -> FolFormula {
        let mut f = self.matrix.clone();
        for (q, x, s) in self.prefix.iter().rev() {
            f = match q {
                Quant::Forall => FolFormula::forall(x.clone(), s.clone(), f),
                Quant::Exists => FolFormula::exists(x.clone(), s.clone(), f),
            };
        }
        f
    }
}

fn has_quantifier(p: &FolFormula) -> bool {
    match p {
        FolFormula::Forall(..) | FolFormula::Exists(..) => true,
        FolFormula::Not(q) => has_quantifier(q),
        FolFormula::And(a, b)
        | FolFormula::Or(a, b)
        | FolFormula::Implies(a, b)
        | FolFormula::Iff(a, b) => has_quantifier(a) || has_quantifier(b),
        _ => false,
    }
}

/// Pulls every quantifier to the front, renaming binders apart. Polarity
/// flips under negation and in antecedents; a quantifier under `<=>` has no
/// polarity and is rejected.
pub fn prenexify(p: &FolFormula) -> Result<Prenex, SkolemError> {
    fn go(
        p: &FolFormula,
        positive: bool,
        used: &mut Vec<String>,
        prefix: &mut Vec<(Quant, String, Sort)>,
    ) -> Result<FolFormula, SkolemError> {
        match p {
            FolFormula::Forall(x, s, body) | FolFormula::Exists(x, s, body) => {
                let is_forall = matches!(p, FolFormula::Forall(..));
                let q = match (is_forall, positive) {
                    (true, true) | (false, false) => Quant::Forall,
                    _ => Quant::Exists,
                };
                let (x2, body2) = if used.iter().any(|u| u == x) {
                    let x2 = fresh_name(x, used);
                    let renamed =
                        subst_unchecked(body, x, &FolTerm::Var(x2.clone(), s.clone()));
                    (x2, renamed)
                } else {
                    (x.clone(), (**body).clone())
                };
                used.push(x2.clone());
                prefix.push((q, x2, s.clone()));
                go(&body2, positive, used, prefix)
            }
            FolFormula::Not(q) => Ok(FolFormula::not(go(q, !positive, used, prefix)?)),
            FolFormula::And(a, b) => Ok(FolFormula::and(
                go(a, positive, used, prefix)?,
                go(b, positive, used, prefix)?,
            )),
            FolFormula::Or(a, b) => Ok(FolFormula::or(
                go(a, positive, used, prefix)?,
                go(b, positive, used, prefix)?,
            )),
            FolFormula::Implies(a, b) => {
                let a2 = go(a, !positive, used, prefix)?;
                let b2 = go(b, positive, used, prefix)?;
                Ok(FolFormula::implies(a2, b2))
            }
            FolFormula::Iff(a, b) => {
                if has_quantifier(a) || has_quantifier(b) {
                    return Err(SkolemError::NotPrenex);
                }
                Ok(p.clone())
            }
            _ => Ok(p.clone()),
        }
    }
    let mut used: Vec<String> = p.free_vars().into_iter().map(|(n, _)| n).collect();
    let mut prefix = Vec::new();
    let matrix = go(p, true, &mut used, &mut prefix)?;
    Ok(Prenex { prefix, matrix })
}

/// Sequential witness names `sk0`, `sk1`, ... with optional preferred names
/// consumed first (the CLI's `--name`).
#[derive(Debug, Clone, Default)]
pub struct SkolemNamer {
    counter: usize,
    preferred: Vec<String>,
}

impl SkolemNamer {
    pub fn new() -> SkolemNamer {
        SkolemNamer::default()
    }

    pub fn with_preferred(names: Vec<String>) -> SkolemNamer {
        SkolemNamer { counter: 0, preferred: names }
    }

    fn next(&mut self) -> String {
        if !self.preferred.is_empty() {
            return self.preferred.remove(0);
        }
        let n = format!("sk{}", self.counter);
        self.counter += 1;
        n
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkolemizationResult {
    pub formula: FolFormula,
    /// Freshly declared witnesses, in elimination order.
    pub symbols: Vec<(String, Rank)>,
    pub mode: SkolemizationMode,
}

/// Eliminates every (positive) existential of a closed formula, declaring
/// one witness per quantifier with rank over the universals in scope.
pub fn skolemize(
    sig: &mut Signature,
    p: &FolFormula,
    mode: SkolemizationMode,
    namer: &mut SkolemNamer,
) -> Result<SkolemizationResult, SkolemError> {
    if let Some((x, _)) = p.free_vars().first() {
        return Err(SkolemError::NotClosed(x.clone()));
    }
    let prenex = prenexify(p)?;
    if !prenex.prefix.iter().any(|(q, _, _)| *q == Quant::Exists) {
        return Err(SkolemError::NoExistential);
    }
    let mut universals: Vec<(String, Sort)> = Vec::new();
    let mut matrix = prenex.matrix.clone();
    let mut symbols = Vec::new();
    for (q, x, s) in &prenex.prefix {
        match q {
            Quant::Forall => universals.push((x.clone(), s.clone())),
            Quant::Exists => {
                let name = namer.next();
                if sig.contains(&name) {
                    return Err(SkolemError::NameCollision(name));
                }
                let all_simple = s.simple().is_some()
                    && universals.iter().all(|(_, us)| us.simple().is_some());
                let (witness, rank) = if mode == SkolemizationMode::Naive && all_simple {
                    // the naive rule introduces a higher-order constant and
                    // applies it through alpha, so nothing stops a later
                    // abstraction from reaching under it
                    let full_ty = universals.iter().rev().fold(
                        s.simple().unwrap().clone(),
                        |acc, (_, us)| SimpleType::arrow(us.simple().unwrap().clone(), acc),
                    );
                    sig.add_function(&name, vec![], Sort::Simple(full_ty.clone()))
                        .expect("collision checked above");
                    let mut cur = FolTerm::constant(name.clone());
                    let mut cur_ty = full_ty.clone();
                    for (n, us) in &universals {
                        let (d, c) = cur_ty.as_arrow().expect("arity matches the fold");
                        let (d, c) = (d.clone(), c.clone());
                        let alpha = Family::Alpha(d, c.clone());
                        let (aargs, ares) = alpha.rank();
                        sig.ensure_function(
                            &alpha.name(),
                            aargs.into_iter().map(Sort::Simple).collect(),
                            Sort::Simple(ares),
                        );
                        cur = FolTerm::FnApp(
                            alpha.name(),
                            vec![cur, FolTerm::Var(n.clone(), us.clone())],
                        );
                        cur_ty = c;
                    }
                    (cur, Rank::function(vec![], Sort::Simple(full_ty)))
                } else {
                    let args: Vec<Sort> = universals.iter().map(|(_, s)| s.clone()).collect();
                    sig.add_function(&name, args.clone(), s.clone())
                        .expect("collision checked above");
                    if mode == SkolemizationMode::Miller {
                        sig.mark_skolem(&name).expect("just declared");
                    }
                    let witness = FolTerm::FnApp(
                        name.clone(),
                        universals
                            .iter()
                            .map(|(n, s)| FolTerm::Var(n.clone(), s.clone()))
                            .collect(),
                    );
                    (witness, Rank::function(args, s.clone()))
                };
                matrix = subst_unchecked(&matrix, x, &witness);
                symbols.push((name, rank));
            }
        }
    }
    let mut formula = matrix;
    for (x, s) in universals.iter().rev() {
        formula = FolFormula::forall(x.clone(), s.clone(), formula);
    }
    Ok(SkolemizationResult { formula, symbols, mode })
}

/// The structural side conditions on Skolem symbols: full application is
/// forced by ranks, so what remains is the empty-context requirement on
/// de Bruijn sorts.
pub fn check_miller_conditions(sig: &Signature) -> Result<(), crate::debruijn::DbError> {
    let symbols: Vec<String> = sig.skolem_symbols().cloned().collect();
    for f in symbols {
        let rank = sig.function(&f).expect("skolem symbols are functions");
        let all_simple = rank
            .args
            .iter()
            .chain(rank.result.iter())
            .all(|s| matches!(s, Sort::Simple(_)));
        if all_simple {
            // simple-type sorts always qualify; binding into arguments is
            // caught at abstraction time instead
            continue;
        }
        crate::debruijn::skolem_sort_check(sig, &f)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::msfol::wf_formula;
    use crate::stt::SimpleType as T;

    fn iota() -> Sort {
        Sort::Simple(T::I)
    }

    fn psig() -> Signature {
        let mut sig = Signature::new();
        sig.add_predicate("P", vec![iota(), iota()]).unwrap();
        sig
    }

    // forall x exists y. P(x, y)
    fn fx_ey() -> FolFormula {
        FolFormula::forall(
            "x",
            iota(),
            FolFormula::exists(
                "y",
                iota(),
                FolFormula::PredApp(
                    "P".into(),
                    vec![FolTerm::var("x", T::I), FolTerm::var("y", T::I)],
                ),
            ),
        )
    }

    #[test]
    fn basic_unary_witness() {
        let mut sig = psig();
        let r = skolemize(&mut sig, &fx_ey(), SkolemizationMode::Miller, &mut SkolemNamer::new())
            .unwrap();
        assert_eq!(r.symbols.len(), 1);
        let (name, rank) = &r.symbols[0];
        assert_eq!(name, "sk0");
        assert_eq!(rank.to_string(), "<i, i>");
        assert!(sig.is_skolem("sk0"));
        // forall x. P(x, sk0(x))
        let expected = FolFormula::forall(
            "x",
            iota(),
            FolFormula::PredApp(
                "P".into(),
                vec![
                    FolTerm::var("x", T::I),
                    FolTerm::FnApp("sk0".into(), vec![FolTerm::var("x", T::I)]),
                ],
            ),
        );
        assert_eq!(r.formula, expected);
        assert_eq!(wf_formula(&sig, &Vec::new(), &r.formula), Ok(()));
    }

    #[test]
    fn naive_mode_introduces_an_applied_constant() {
        let mut sig = psig();
        let r = skolemize(&mut sig, &fx_ey(), SkolemizationMode::Naive, &mut SkolemNamer::new())
            .unwrap();
        assert_eq!(r.symbols[0].0, "sk0");
        assert!(!sig.is_skolem("sk0"));
        // sk0 : <i->i>, used as alpha(sk0, x)
        assert_eq!(r.symbols[0].1.to_string(), "<i->i>");
        let expected = FolFormula::forall(
            "x",
            iota(),
            FolFormula::PredApp(
                "P".into(),
                vec![
                    FolTerm::var("x", T::I),
                    FolTerm::FnApp(
                        Family::Alpha(T::I, T::I).name(),
                        vec![FolTerm::constant("sk0"), FolTerm::var("x", T::I)],
                    ),
                ],
            ),
        );
        assert_eq!(r.formula, expected);
        assert_eq!(wf_formula(&sig, &Vec::new(), &r.formula), Ok(()));
    }

    #[test]
    fn leading_existential_becomes_constant() {
        let mut sig = psig();
        let p = FolFormula::exists(
            "y",
            iota(),
            FolFormula::forall(
                "x",
                iota(),
                FolFormula::PredApp(
                    "P".into(),
                    vec![FolTerm::var("x", T::I), FolTerm::var("y", T::I)],
                ),
            ),
        );
        let r =
            skolemize(&mut sig, &p, SkolemizationMode::Miller, &mut SkolemNamer::new()).unwrap();
        assert_eq!(r.symbols[0].1.to_string(), "<i>");
    }

    #[test]
    fn negative_forall_is_existential() {
        // ~(forall y. P(y, y)) hides an existential
        let mut sig = psig();
        let p = FolFormula::not(FolFormula::forall(
            "y",
            iota(),
            FolFormula::PredApp(
                "P".into(),
                vec![FolTerm::var("y", T::I), FolTerm::var("y", T::I)],
            ),
        ));
        let r =
            skolemize(&mut sig, &p, SkolemizationMode::Miller, &mut SkolemNamer::new()).unwrap();
        assert_eq!(r.symbols.len(), 1);
        assert!(matches!(r.formula, FolFormula::Not(_)));
    }

    #[test]
    fn no_existential_reported() {
        let mut sig = psig();
        let p = FolFormula::forall(
            "x",
            iota(),
            FolFormula::PredApp(
                "P".into(),
                vec![FolTerm::var("x", T::I), FolTerm::var("x", T::I)],
            ),
        );
        assert_eq!(
            skolemize(&mut sig, &p, SkolemizationMode::Miller, &mut SkolemNamer::new()),
            Err(SkolemError::NoExistential)
        );
    }

    #[test]
    fn name_collisions_rejected() {
        let mut sig = psig();
        sig.add_function("sk0", vec![], iota()).unwrap();
        assert_eq!(
            skolemize(&mut sig, &fx_ey(), SkolemizationMode::Miller, &mut SkolemNamer::new()),
            Err(SkolemError::NameCollision("sk0".into()))
        );
    }

    #[test]
    fn quantifier_under_iff_rejected() {
        let q = FolFormula::forall(
            "x",
            iota(),
            FolFormula::PredApp(
                "P".into(),
                vec![FolTerm::var("x", T::I), FolTerm::var("x", T::I)],
            ),
        );
        let p = FolFormula::iff(q.clone(), q);
        assert_eq!(prenexify(&p), Err(SkolemError::NotPrenex));
    }

    #[test]
    fn prenex_renames_clashing_binders() {
        // (forall x. P(x,x)) /\ (exists x. P(x,x))
        let px = FolFormula::PredApp(
            "P".into(),
            vec![FolTerm::var("x", T::I), FolTerm::var("x", T::I)],
        );
        let p = FolFormula::and(
            FolFormula::forall("x", iota(), px.clone()),
            FolFormula::exists("x", iota(), px),
        );
        let pr = prenexify(&p).unwrap();
        assert_eq!(pr.prefix.len(), 2);
        assert_ne!(pr.prefix[0].1, pr.prefix[1].1);
        let sig = psig();
        wf_formula(&sig, &Vec::new(), &pr.to_formula()).unwrap();
    }

    #[test]
    fn deeper_prefix_collects_both_universals() {
        // forall x forall z exists y. P(x, y) gets a binary witness
        let mut sig = psig();
        let p = FolFormula::forall(
            "x",
            iota(),
            FolFormula::forall(
                "z",
                iota(),
                FolFormula::exists(
                    "y",
                    iota(),
                    FolFormula::PredApp(
                        "P".into(),
                        vec![FolTerm::var("x", T::I), FolTerm::var("y", T::I)],
                    ),
                ),
            ),
        );
        let r =
            skolemize(&mut sig, &p, SkolemizationMode::Miller, &mut SkolemNamer::new()).unwrap();
        assert_eq!(r.symbols[0].1.to_string(), "<i, i, i>");
    }

    #[test]
    fn miller_conditions_on_simple_sorts() {
        let mut sig = psig();
        skolemize(&mut sig, &fx_ey(), SkolemizationMode::Miller, &mut SkolemNamer::new()).unwrap();
        assert!(check_miller_conditions(&sig).is_ok());
    }
}
