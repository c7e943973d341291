//! Natural deduction modulo the combinator rewrite system. Every stated
//! formula is compared through normalization, so a proof may freely move
//! between a dotted combinator proposition and its first-order reading.

use crate::holsk::HolSkError;
use crate::msfol::{
    formula_alpha_eq, subst_unchecked, wf_formula, FolFormula, FolTerm, SortContext, Theory,
    WfError,
};
use crate::rewrite::{normalize_formula, RewriteError, Strategy};
use crate::sexpr::{read_all, SExpr, Span};
use crate::msfol::sexpr::{parse_formula, parse_term, ReadError};
use crate::holsk::HolSkSignature;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleApp {
    Axiom(String),
    Assume,
    AndIntro(usize, usize),
    AndElimL(usize),
    AndElimR(usize),
    /// `OrIntroL(p)` proves `a \/ b` from `a`, `OrIntroR` from `b`.
    OrIntroL(usize),
    OrIntroR(usize),
    OrElim(usize, usize, usize),
    ImpIntro(usize),
    ImpElim(usize, usize),
    NotIntro(usize),
    NotElim(usize, usize),
    TopIntro,
    BotElim(usize),
    ForallIntro(usize),
    ForallElim(usize, FolTerm),
    ExistsIntro(usize, FolTerm),
    ExistsElim(usize, usize, Option<String>),
    EqRefl,
    /// From `a = b` and `P[x := a]`, conclude `P[x := b]`.
    EqSubst { eq: usize, premise: usize, var: String, template: FolFormula },
    IffIntro(usize, usize),
    IffElimL(usize),
    IffElimR(usize),
    ConvModulo(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofStep {
    pub formula: FolFormula,
    pub rule: RuleApp,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Proof {
    pub steps: Vec<ProofStep>,
    /// Expected conclusion; checked against the last step when present.
    pub conclusion: Option<FolFormula>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("step {step}: {reason}")]
    BadStep { step: usize, reason: String },
    #[error("step {step}: stated formula is not rewrite-equal to the rule's result")]
    NotModuloEqual { step: usize },
    #[error("step {step}: eigenvariable `{var}` occurs in an open assumption or the conclusion")]
    EigenvariableViolation { step: usize, var: String },
    #[error("proof ends with open assumptions")]
    OpenAssumptions,
    #[error("conclusion does not match the last step")]
    WrongConclusion,
    #[error(transparent)]
    Wf(#[from] WfError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Elab(#[from] HolSkError),
}

fn bad(step: usize, reason: impl Into<String>) -> ProofError {
    ProofError::BadStep { step, reason: reason.into() }
}

struct Checker<'a> {
    theory: &'a Theory,
    fuel: u64,
    /// Normal form of each checked step.
    normal: Vec<FolFormula>,
    /// Indices of the `Assume` steps still open at each step.
    open: Vec<BTreeSet<usize>>,
}

impl<'a> Checker<'a> {
    fn nf(&self, p: &FolFormula) -> Result<FolFormula, ProofError> {
        Ok(normalize_formula(p, Strategy::LeftmostOutermost, self.fuel)?)
    }

    fn eq_mod(&self, a: &FolFormula, b: &FolFormula) -> Result<bool, ProofError> {
        Ok(formula_alpha_eq(&self.nf(a)?, &self.nf(b)?))
    }

    fn premise(&self, step: usize, i: usize) -> Result<&FolFormula, ProofError> {
        if i >= step {
            return Err(bad(step, format!("premise {} is not an earlier step", i + 1)));
        }
        Ok(&self.normal[i])
    }

    /// Union of the premises' open assumptions.
    fn union(&self, parts: &[usize]) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &p in parts {
            out.extend(self.open[p].iter().copied());
        }
        out
    }

    /// Removes every open assumption whose formula matches `target` modulo
    /// rewriting.
    fn discharge(
        &self,
        mut open: BTreeSet<usize>,
        target: &FolFormula,
    ) -> Result<BTreeSet<usize>, ProofError> {
        let t = self.nf(target)?;
        open.retain(|&i| !formula_alpha_eq(&self.normal[i], &t));
        Ok(open)
    }

    fn assumption_has_free(&self, open: &BTreeSet<usize>, var: &str) -> bool {
        open.iter().any(|&i| self.normal[i].has_free_var(var))
    }
}

/// Checks a proof against a theory; returns the proved formula.
pub fn check_proof(theory: &Theory, proof: &Proof, fuel: u64) -> Result<FolFormula, ProofError> {
    let mut ck = Checker { theory, fuel, normal: Vec::new(), open: Vec::new() };
    for (idx, step) in proof.steps.iter().enumerate() {
        let ctx: SortContext = step.formula.free_vars();
        wf_formula(&theory.signature, &ctx, &step.formula)?;
        let stated = ck.nf(&step.formula)?;
        let open = check_step(&mut ck, idx, &stated, &step.rule)?;
        ck.normal.push(stated);
        ck.open.push(open);
    }
    let last = proof.steps.len().checked_sub(1).ok_or(ProofError::OpenAssumptions)?;
    if !ck.open[last].is_empty() {
        return Err(ProofError::OpenAssumptions);
    }
    if let Some(conclusion) = &proof.conclusion {
        if !ck.eq_mod(conclusion, &proof.steps[last].formula)? {
            return Err(ProofError::WrongConclusion);
        }
    }
    Ok(proof.steps[last].formula.clone())
}

fn check_step(
    ck: &mut Checker<'_>,
    idx: usize,
    stated: &FolFormula,
    rule: &RuleApp,
) -> Result<BTreeSet<usize>, ProofError> {
    let not_modulo = || ProofError::NotModuloEqual { step: idx };
    match rule {
        RuleApp::Axiom(name) => {
            let ax = ck
                .theory
                .axiom(name)
                .ok_or_else(|| bad(idx, format!("unknown axiom `{}`", name)))?;
            if !formula_alpha_eq(stated, &ck.nf(&ax.formula)?) {
                return Err(not_modulo());
            }
            Ok(BTreeSet::new())
        }
        RuleApp::Assume => Ok(BTreeSet::from([idx])),
        RuleApp::TopIntro => {
            if *stated != FolFormula::Top {
                return Err(not_modulo());
            }
            Ok(BTreeSet::new())
        }
        RuleApp::EqRefl => match stated {
            FolFormula::Eq(a, b) if a == b => Ok(BTreeSet::new()),
            _ => Err(bad(idx, "eq-refl proves `t = t`")),
        },
        RuleApp::AndIntro(p, q) => {
            let (fp, fq) = (ck.premise(idx, *p)?.clone(), ck.premise(idx, *q)?.clone());
            match stated {
                FolFormula::And(a, b) if formula_alpha_eq(a, &fp) && formula_alpha_eq(b, &fq) => {
                    Ok(ck.union(&[*p, *q]))
                }
                _ => Err(not_modulo()),
            }
        }
        RuleApp::AndElimL(p) | RuleApp::AndElimR(p) => {
            let fp = ck.premise(idx, *p)?.clone();
            let side = match &fp {
                FolFormula::And(a, b) => {
                    if matches!(rule, RuleApp::AndElimL(_)) { (**a).clone() } else { (**b).clone() }
                }
                _ => return Err(bad(idx, "premise is not a conjunction")),
            };
            if !formula_alpha_eq(stated, &side) {
                return Err(not_modulo());
            }
            Ok(ck.union(&[*p]))
        }
        RuleApp::OrIntroL(p) | RuleApp::OrIntroR(p) => {
            let fp = ck.premise(idx, *p)?.clone();
            match stated {
                FolFormula::Or(a, b) => {
                    let side = if matches!(rule, RuleApp::OrIntroL(_)) { a } else { b };
                    if !formula_alpha_eq(side, &fp) {
                        return Err(not_modulo());
                    }
                    Ok(ck.union(&[*p]))
                }
                _ => Err(not_modulo()),
            }
        }
        RuleApp::OrElim(d, r1, r2) => {
            let fd = ck.premise(idx, *d)?.clone();
            let (fa, fb) = match &fd {
                FolFormula::Or(a, b) => ((**a).clone(), (**b).clone()),
                _ => return Err(bad(idx, "premise is not a disjunction")),
            };
            let f1 = ck.premise(idx, *r1)?.clone();
            let f2 = ck.premise(idx, *r2)?.clone();
            if !formula_alpha_eq(&f1, stated) || !formula_alpha_eq(&f2, stated) {
                return Err(not_modulo());
            }
            let o1 = ck.discharge(ck.open[*r1].clone(), &fa)?;
            let o2 = ck.discharge(ck.open[*r2].clone(), &fb)?;
            let mut open = ck.union(&[*d]);
            open.extend(o1);
            open.extend(o2);
            Ok(open)
        }
        RuleApp::ImpIntro(p) => {
            let fp = ck.premise(idx, *p)?.clone();
            match stated {
                FolFormula::Implies(a, b) if formula_alpha_eq(b, &fp) => {
                    ck.discharge(ck.open[*p].clone(), a)
                }
                _ => Err(not_modulo()),
            }
        }
        RuleApp::ImpElim(p, q) => {
            let fp = ck.premise(idx, *p)?.clone();
            let fq = ck.premise(idx, *q)?.clone();
            match &fp {
                FolFormula::Implies(a, b)
                    if formula_alpha_eq(a, &fq) && formula_alpha_eq(b, stated) =>
                {
                    Ok(ck.union(&[*p, *q]))
                }
                _ => Err(not_modulo()),
            }
        }
        RuleApp::NotIntro(p) => {
            let fp = ck.premise(idx, *p)?.clone();
            if fp != FolFormula::Bot {
                return Err(bad(idx, "not-intro requires a proof of false"));
            }
            match stated {
                FolFormula::Not(a) => ck.discharge(ck.open[*p].clone(), a),
                _ => Err(not_modulo()),
            }
        }
        RuleApp::NotElim(p, q) => {
            let fp = ck.premise(idx, *p)?.clone();
            let fq = ck.premise(idx, *q)?.clone();
            match &fp {
                FolFormula::Not(a) if formula_alpha_eq(a, &fq) => {
                    if *stated != FolFormula::Bot {
                        return Err(not_modulo());
                    }
                    Ok(ck.union(&[*p, *q]))
                }
                _ => Err(bad(idx, "not-elim requires `~p` and `p`")),
            }
        }
        RuleApp::BotElim(p) => {
            let fp = ck.premise(idx, *p)?.clone();
            if fp != FolFormula::Bot {
                return Err(bad(idx, "premise is not false"));
            }
            Ok(ck.union(&[*p]))
        }
        RuleApp::ForallIntro(p) => {
            let fp = ck.premise(idx, *p)?.clone();
            match stated {
                FolFormula::Forall(x, _, body) => {
                    if !formula_alpha_eq(body, &fp) {
                        return Err(not_modulo());
                    }
                    let open = ck.union(&[*p]);
                    if ck.assumption_has_free(&open, x) {
                        return Err(ProofError::EigenvariableViolation {
                            step: idx,
                            var: x.clone(),
                        });
                    }
                    Ok(open)
                }
                _ => Err(not_modulo()),
            }
        }
        RuleApp::ForallElim(p, t) => {
            let fp = ck.premise(idx, *p)?.clone();
            match &fp {
                FolFormula::Forall(x, s, body) => {
                    let t_sort = crate::msfol::sort_of(&ck.theory.signature, t)?;
                    if t_sort != *s {
                        return Err(bad(
                            idx,
                            format!("instantiation sort `{}` does not match `{}`", t_sort, s),
                        ));
                    }
                    let inst = subst_unchecked(body, x, t);
                    if !ck.eq_mod(stated, &inst)? {
                        return Err(not_modulo());
                    }
                    Ok(ck.union(&[*p]))
                }
                _ => Err(bad(idx, "premise is not universally quantified")),
            }
        }
        RuleApp::ExistsIntro(p, t) => {
            let fp = ck.premise(idx, *p)?.clone();
            match stated {
                FolFormula::Exists(x, s, body) => {
                    let t_sort = crate::msfol::sort_of(&ck.theory.signature, t)?;
                    if t_sort != *s {
                        return Err(bad(
                            idx,
                            format!("witness sort `{}` does not match `{}`", t_sort, s),
                        ));
                    }
                    let inst = subst_unchecked(body, x, t);
                    if !ck.eq_mod(&fp, &inst)? {
                        return Err(not_modulo());
                    }
                    Ok(ck.union(&[*p]))
                }
                _ => Err(not_modulo()),
            }
        }
        RuleApp::ExistsElim(e, r, eigen) => {
            let fe = ck.premise(idx, *e)?.clone();
            let fr = ck.premise(idx, *r)?.clone();
            let (x, s, body) = match &fe {
                FolFormula::Exists(x, s, body) => (x.clone(), s.clone(), (**body).clone()),
                _ => return Err(bad(idx, "premise is not existentially quantified")),
            };
            if !formula_alpha_eq(&fr, stated) {
                return Err(not_modulo());
            }
            let y = eigen.clone().unwrap_or_else(|| x.clone());
            let inst = subst_unchecked(&body, &x, &FolTerm::Var(y.clone(), s));
            let open_r = ck.discharge(ck.open[*r].clone(), &inst)?;
            if stated.has_free_var(&y)
                || fe.has_free_var(&y)
                || ck.assumption_has_free(&open_r, &y)
            {
                return Err(ProofError::EigenvariableViolation { step: idx, var: y });
            }
            let mut open = ck.union(&[*e]);
            open.extend(open_r);
            Ok(open)
        }
        RuleApp::EqSubst { eq, premise, var, template } => {
            let feq = ck.premise(idx, *eq)?.clone();
            let fp = ck.premise(idx, *premise)?.clone();
            let (a, b) = match &feq {
                FolFormula::Eq(a, b) => (a.clone(), b.clone()),
                _ => return Err(bad(idx, "first premise is not an equation")),
            };
            let with_a = subst_unchecked(template, var, &a);
            let with_b = subst_unchecked(template, var, &b);
            if !ck.eq_mod(&fp, &with_a)? || !ck.eq_mod(stated, &with_b)? {
                return Err(not_modulo());
            }
            Ok(ck.union(&[*eq, *premise]))
        }
        RuleApp::IffIntro(p, q) => {
            let fp = ck.premise(idx, *p)?.clone();
            let fq = ck.premise(idx, *q)?.clone();
            match stated {
                FolFormula::Iff(a, b) => {
                    let fwd = FolFormula::implies((**a).clone(), (**b).clone());
                    let bwd = FolFormula::implies((**b).clone(), (**a).clone());
                    if !formula_alpha_eq(&fp, &fwd) || !formula_alpha_eq(&fq, &bwd) {
                        return Err(not_modulo());
                    }
                    Ok(ck.union(&[*p, *q]))
                }
                _ => Err(not_modulo()),
            }
        }
        RuleApp::IffElimL(p) | RuleApp::IffElimR(p) => {
            let fp = ck.premise(idx, *p)?.clone();
            match &fp {
                FolFormula::Iff(a, b) => {
                    let dir = if matches!(rule, RuleApp::IffElimL(_)) {
                        FolFormula::implies((**a).clone(), (**b).clone())
                    } else {
                        FolFormula::implies((**b).clone(), (**a).clone())
                    };
                    if !formula_alpha_eq(stated, &dir) {
                        return Err(not_modulo());
                    }
                    Ok(ck.union(&[*p]))
                }
                _ => Err(bad(idx, "premise is not an equivalence")),
            }
        }
        RuleApp::ConvModulo(p) => {
            let fp = ck.premise(idx, *p)?.clone();
            if !formula_alpha_eq(stated, &fp) {
                return Err(not_modulo());
            }
            Ok(ck.union(&[*p]))
        }
    }
}

// --- proof file syntax ---
//
// (proof
//   (conclusion <formula>)            ; optional
//   (step (assume) <formula>)
//   (step (imp-intro 1) <formula>)    ; premises are 1-based step numbers
//   ...)

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofReadError {
    #[error(transparent)]
    Read(#[from] ReadError),
    #[error("at {span}: {message}")]
    Syntax { span: Span, message: String },
}

fn perr<T>(span: Span, message: impl Into<String>) -> Result<T, ProofReadError> {
    Err(ProofReadError::Syntax { span, message: message.into() })
}

fn step_index(e: &SExpr, current: usize) -> Result<usize, ProofReadError> {
    let span = e.span();
    let n: usize = e
        .atom()
        .and_then(|a| a.parse().ok())
        .ok_or(ProofReadError::Syntax { span, message: "expected a step number".into() })?;
    if n == 0 || n > current {
        return perr(span, format!("step number {} is out of range", n));
    }
    Ok(n - 1)
}

fn parse_rule(
    sig: &mut HolSkSignature,
    e: &SExpr,
    current: usize,
) -> Result<RuleApp, ProofReadError> {
    let span = e.span();
    let items = match e.list() {
        Some(items) if !items.is_empty() => items,
        _ => return perr(span, "expected a rule application"),
    };
    let head = items[0]
        .atom()
        .ok_or(ProofReadError::Syntax { span, message: "expected a rule name".into() })?;
    let rest = &items[1..];
    let arity = |n: usize| -> Result<(), ProofReadError> {
        if rest.len() != n {
            return perr(span, format!("`{}` takes {} arguments", head, n));
        }
        Ok(())
    };
    let idx = |k: usize| step_index(&rest[k], current);
    Ok(match head {
        "axiom" => {
            arity(1)?;
            let name = rest[0]
                .atom()
                .ok_or(ProofReadError::Syntax { span, message: "expected an axiom name".into() })?;
            RuleApp::Axiom(name.to_string())
        }
        "assume" => {
            arity(0)?;
            RuleApp::Assume
        }
        "and-intro" => {
            arity(2)?;
            RuleApp::AndIntro(idx(0)?, idx(1)?)
        }
        "and-elim-l" => {
            arity(1)?;
            RuleApp::AndElimL(idx(0)?)
        }
        "and-elim-r" => {
            arity(1)?;
            RuleApp::AndElimR(idx(0)?)
        }
        "or-intro-l" => {
            arity(1)?;
            RuleApp::OrIntroL(idx(0)?)
        }
        "or-intro-r" => {
            arity(1)?;
            RuleApp::OrIntroR(idx(0)?)
        }
        "or-elim" => {
            arity(3)?;
            RuleApp::OrElim(idx(0)?, idx(1)?, idx(2)?)
        }
        "imp-intro" => {
            arity(1)?;
            RuleApp::ImpIntro(idx(0)?)
        }
        "imp-elim" => {
            arity(2)?;
            RuleApp::ImpElim(idx(0)?, idx(1)?)
        }
        "not-intro" => {
            arity(1)?;
            RuleApp::NotIntro(idx(0)?)
        }
        "not-elim" => {
            arity(2)?;
            RuleApp::NotElim(idx(0)?, idx(1)?)
        }
        "top-intro" => {
            arity(0)?;
            RuleApp::TopIntro
        }
        "bot-elim" => {
            arity(1)?;
            RuleApp::BotElim(idx(0)?)
        }
        "forall-intro" => {
            arity(1)?;
            RuleApp::ForallIntro(idx(0)?)
        }
        "forall-elim" => {
            arity(2)?;
            RuleApp::ForallElim(idx(0)?, parse_term(sig, &Vec::new(), &rest[1])?)
        }
        "exists-intro" => {
            arity(2)?;
            RuleApp::ExistsIntro(idx(0)?, parse_term(sig, &Vec::new(), &rest[1])?)
        }
        "exists-elim" => {
            if rest.len() == 2 {
                RuleApp::ExistsElim(idx(0)?, idx(1)?, None)
            } else if rest.len() == 3 {
                let eigen = match rest[2].list() {
                    Some([h, v]) if h.atom() == Some("eigen") => v
                        .atom()
                        .map(str::to_string)
                        .ok_or(ProofReadError::Syntax {
                            span: rest[2].span(),
                            message: "expected `(eigen x)`".into(),
                        })?,
                    _ => return perr(rest[2].span(), "expected `(eigen x)`"),
                };
                RuleApp::ExistsElim(idx(0)?, idx(1)?, Some(eigen))
            } else {
                return perr(span, "`exists-elim` takes two steps and an optional eigen name");
            }
        }
        "eq-refl" => {
            arity(0)?;
            RuleApp::EqRefl
        }
        "eq-subst" => {
            arity(4)?;
            // the hole is declared with its sort: (eq-subst i j (x <sort>) <template>)
            let (var, sort) = match rest[2].list() {
                Some([v, s]) if v.atom().is_some() => (
                    v.atom().unwrap().to_string(),
                    crate::msfol::sexpr::parse_sort(s)?,
                ),
                _ => return perr(rest[2].span(), "expected `(x <sort>)` for the template hole"),
            };
            let scope = vec![(var.clone(), sort)];
            let template = parse_formula(sig, &scope, &rest[3])?;
            RuleApp::EqSubst { eq: idx(0)?, premise: idx(1)?, var, template }
        }
        "iff-intro" => {
            arity(2)?;
            RuleApp::IffIntro(idx(0)?, idx(1)?)
        }
        "iff-elim-l" => {
            arity(1)?;
            RuleApp::IffElimL(idx(0)?)
        }
        "iff-elim-r" => {
            arity(1)?;
            RuleApp::IffElimR(idx(0)?)
        }
        "conv" => {
            arity(1)?;
            RuleApp::ConvModulo(idx(0)?)
        }
        other => return perr(span, format!("unknown rule `{}`", other)),
    })
}

/// Reads a proof file against a theory's signature.
pub fn read_proof(sig: &mut HolSkSignature, input: &str) -> Result<Proof, ProofReadError> {
    let entries = read_all(input).map_err(ReadError::from)?;
    let top = match entries.as_slice() {
        [e] if e.head() == Some("proof") => e.list().unwrap(),
        _ => {
            let span = entries.first().map(|e| e.span()).unwrap_or(Span::new(0, 0));
            return perr(span, "expected a single `(proof ...)` form");
        }
    };
    let mut proof = Proof::default();
    for e in &top[1..] {
        let span = e.span();
        let items = match e.list() {
            Some(items) if !items.is_empty() => items,
            _ => return perr(span, "expected `(conclusion ...)` or `(step ...)`"),
        };
        match items[0].atom() {
            Some("conclusion") => {
                if items.len() != 2 {
                    return perr(span, "`conclusion` takes one formula");
                }
                proof.conclusion = Some(parse_formula(sig, &Vec::new(), &items[1])?);
            }
            Some("step") => {
                if items.len() != 3 {
                    return perr(span, "`step` takes a rule and a formula");
                }
                let rule = parse_rule(sig, &items[1], proof.steps.len())?;
                let formula = parse_formula(sig, &Vec::new(), &items[2])?;
                proof.steps.push(ProofStep { formula, rule });
            }
            _ => return perr(span, "expected `conclusion` or `step`"),
        }
    }
    Ok(proof)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::Family;
    use crate::holsk::{eps, generate_axioms, HolSkSignature};
    use crate::msfol::Sort;
    use crate::rewrite::DEFAULT_FUEL;
    use crate::stt::SimpleType as T;

    fn base_theory() -> Theory {
        let mut sig = HolSkSignature::new();
        sig.add_constant("c", T::I);
        let axioms = generate_axioms(&mut sig);
        Theory {
            signature: sig.into_signature(),
            axioms,
            provenance: Vec::new(),
        }
    }

    fn pvar(n: &str) -> FolFormula {
        eps(FolTerm::var(n, T::O))
    }

    #[test]
    fn identity_implication() {
        let th = base_theory();
        let p = pvar("p");
        let proof = Proof {
            steps: vec![
                ProofStep { formula: p.clone(), rule: RuleApp::Assume },
                ProofStep {
                    formula: FolFormula::implies(p.clone(), p.clone()),
                    rule: RuleApp::ImpIntro(0),
                },
            ],
            conclusion: Some(FolFormula::implies(p.clone(), p)),
        };
        check_proof(&th, &proof, DEFAULT_FUEL).unwrap();
    }

    #[test]
    fn open_assumption_rejected() {
        let th = base_theory();
        let proof = Proof {
            steps: vec![ProofStep { formula: pvar("p"), rule: RuleApp::Assume }],
            conclusion: None,
        };
        assert_eq!(check_proof(&th, &proof, DEFAULT_FUEL), Err(ProofError::OpenAssumptions));
    }

    #[test]
    fn conv_modulo_moves_through_dotted_connectives() {
        // assume eps(imp. x x) stated as the first-order implication
        let mut sig = HolSkSignature::new();
        sig.add_constant("d", T::O);
        let c = sig.constant(&Family::ImpDot);
        let ca = sig.apply(c, &Family::ImpDot.rank().1, FolTerm::constant("d"));
        let cab = sig.apply(ca, &T::arrow(T::O, T::O), FolTerm::constant("d"));
        let dotted = eps(cab);
        let th = Theory {
            signature: sig.into_signature(),
            axioms: vec![crate::msfol::NamedAxiom { name: "dd".into(), formula: dotted.clone() }],
            provenance: Vec::new(),
        };
        let plain = FolFormula::implies(
            eps(FolTerm::constant("d")),
            eps(FolTerm::constant("d")),
        );
        let proof = Proof {
            steps: vec![
                ProofStep { formula: dotted, rule: RuleApp::Axiom("dd".into()) },
                ProofStep { formula: plain, rule: RuleApp::ConvModulo(0) },
            ],
            conclusion: None,
        };
        check_proof(&th, &proof, DEFAULT_FUEL).unwrap();
    }

    #[test]
    fn forall_intro_and_elim() {
        let th = base_theory();
        // x = x |- forall x:i. x = x, then instantiate at c
        let xeqx = FolFormula::Eq(FolTerm::var("x", T::I), FolTerm::var("x", T::I));
        let all = FolFormula::forall("x", T::I, xeqx.clone());
        let ceqc = FolFormula::Eq(FolTerm::constant("c"), FolTerm::constant("c"));
        let proof = Proof {
            steps: vec![
                ProofStep { formula: xeqx, rule: RuleApp::EqRefl },
                ProofStep { formula: all, rule: RuleApp::ForallIntro(0) },
                ProofStep {
                    formula: ceqc,
                    rule: RuleApp::ForallElim(1, FolTerm::constant("c")),
                },
            ],
            conclusion: None,
        };
        check_proof(&th, &proof, DEFAULT_FUEL).unwrap();
    }

    #[test]
    fn eigenvariable_violation_detected() {
        let th = base_theory();
        // assume x = c, then illegally generalize over x
        let assumption = FolFormula::Eq(FolTerm::var("x", T::I), FolTerm::constant("c"));
        let all = FolFormula::forall("x", T::I, assumption.clone());
        let proof = Proof {
            steps: vec![
                ProofStep { formula: assumption, rule: RuleApp::Assume },
                ProofStep { formula: all, rule: RuleApp::ForallIntro(0) },
            ],
            conclusion: None,
        };
        assert!(matches!(
            check_proof(&th, &proof, DEFAULT_FUEL),
            Err(ProofError::EigenvariableViolation { var, .. }) if var == "x"
        ));
    }

    #[test]
    fn exists_intro_and_elim() {
        let th = base_theory();
        let ceqc = FolFormula::Eq(FolTerm::constant("c"), FolTerm::constant("c"));
        let ex = FolFormula::exists(
            "z",
            T::I,
            FolFormula::Eq(FolTerm::var("z", T::I), FolTerm::var("z", T::I)),
        );
        let top = FolFormula::Top;
        let proof = Proof {
            steps: vec![
                ProofStep { formula: ceqc, rule: RuleApp::EqRefl },
                ProofStep { formula: ex, rule: RuleApp::ExistsIntro(0, FolTerm::constant("c")) },
                ProofStep { formula: top.clone(), rule: RuleApp::TopIntro },
                ProofStep {
                    formula: top,
                    rule: RuleApp::ExistsElim(1, 2, Some("w".into())),
                },
            ],
            conclusion: None,
        };
        check_proof(&th, &proof, DEFAULT_FUEL).unwrap();
    }

    #[test]
    fn eq_subst_rewrites_under_template() {
        let mut th = base_theory();
        th.signature
            .add_function("d", vec![], Sort::Simple(T::I))
            .unwrap();
        let c = FolTerm::constant("c");
        let d = FolTerm::constant("d");
        let c_eq_d = FolFormula::Eq(c.clone(), d.clone());
        let template = FolFormula::Eq(FolTerm::var("h", T::I), c.clone());
        let proof = Proof {
            steps: vec![
                ProofStep { formula: c_eq_d.clone(), rule: RuleApp::Assume },
                ProofStep { formula: FolFormula::Eq(c.clone(), c.clone()), rule: RuleApp::EqRefl },
                ProofStep {
                    formula: FolFormula::Eq(d.clone(), c.clone()),
                    rule: RuleApp::EqSubst {
                        eq: 0,
                        premise: 1,
                        var: "h".into(),
                        template,
                    },
                },
                ProofStep {
                    formula: FolFormula::implies(c_eq_d, FolFormula::Eq(d, c)),
                    rule: RuleApp::ImpIntro(2),
                },
            ],
            conclusion: None,
        };
        check_proof(&th, &proof, DEFAULT_FUEL).unwrap();
    }

    #[test]
    fn mutated_premise_index_rejected() {
        let th = base_theory();
        let p = pvar("p");
        let proof = Proof {
            steps: vec![ProofStep {
                formula: FolFormula::implies(p.clone(), p),
                rule: RuleApp::ImpIntro(0),
            }],
            conclusion: None,
        };
        assert!(matches!(
            check_proof(&th, &proof, DEFAULT_FUEL),
            Err(ProofError::BadStep { .. })
        ));
    }

    #[test]
    fn proof_file_round_trip_check() {
        let mut sig = HolSkSignature::new();
        sig.add_constant("d", T::O);
        let th = Theory {
            signature: sig.signature().clone(),
            axioms: Vec::new(),
            provenance: Vec::new(),
        };
        let src = "\
(proof
  (conclusion (imp (eps d) (eps d)))
  (step (assume) (eps d))
  (step (imp-intro 1) (imp (eps d) (eps d))))
";
        let mut sig = HolSkSignature::from_signature(th.signature.clone());
        let proof = read_proof(&mut sig, src).unwrap();
        let th = Theory { signature: sig.into_signature(), ..th };
        check_proof(&th, &proof, DEFAULT_FUEL).unwrap();
    }
}
