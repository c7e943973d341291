//! Concrete syntax for sorts, terms, formulas and theory files, as
//! s-expressions. Combinator indices may be given explicitly (`(K i i)`)
//! or left to be computed from operand sorts by the application forms.

use super::{
    FolFormula, FolTerm, NamedAxiom, Rank, Signature, Sort, Theory,
};
use crate::debruijn::DbSort;
use crate::families::Family;
use crate::holsk::{bracket_abstract, HolSkError, HolSkSignature};
use crate::sexpr::{read_all, SExpr, SexprError, Span};
use crate::stt::SimpleType;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReadError {
    #[error("{0}")]
    Lex(#[from] SexprError),
    #[error("at {span}: {message}")]
    Syntax { span: Span, message: String },
    #[error(transparent)]
    Elab(#[from] HolSkError),
    #[error("at {span}: {source}")]
    Sig { span: Span, source: super::SigError },
}

fn err<T>(span: Span, message: impl Into<String>) -> Result<T, ReadError> {
    Err(ReadError::Syntax { span, message: message.into() })
}

pub fn parse_simple_type(e: &SExpr) -> Result<SimpleType, ReadError> {
    match e {
        SExpr::Atom(a, span) => match a.as_str() {
            "i" => Ok(SimpleType::I),
            "o" => Ok(SimpleType::O),
            other => err(*span, format!("unknown base type `{}`", other)),
        },
        SExpr::List(items, span) => {
            if items.len() == 3 && items[0].atom() == Some("->") {
                Ok(SimpleType::arrow(
                    parse_simple_type(&items[1])?,
                    parse_simple_type(&items[2])?,
                ))
            } else {
                err(*span, "expected `(-> T U)`")
            }
        }
    }
}

pub fn parse_sort(e: &SExpr) -> Result<Sort, ReadError> {
    if let SExpr::List(items, _) = e {
        // de Bruijn sorts: (|- (T1 T2 ...) T)
        if items.len() == 3 && items[0].atom() == Some("|-") {
            let ctx = items[1]
                .list()
                .ok_or(ReadError::Syntax {
                    span: items[1].span(),
                    message: "expected a context list".into(),
                })?
                .iter()
                .map(parse_simple_type)
                .collect::<Result<Vec<_>, _>>()?;
            let ty = parse_simple_type(&items[2])?;
            return Ok(Sort::Db(DbSort::open(ctx, ty)));
        }
    }
    Ok(Sort::Simple(parse_simple_type(e)?))
}

/// Variable scope for terms under quantifiers.
pub type VarScope = Vec<(String, Sort)>;

fn indexed_family(head: &str, indices: &[SExpr], span: Span) -> Result<Option<Family>, ReadError> {
    let tys = |n: usize| -> Result<Vec<SimpleType>, ReadError> {
        if indices.len() != n {
            return err(span, format!("`{}` takes {} sort indices", head, n));
        }
        indices.iter().map(parse_simple_type).collect()
    };
    Ok(match head {
        "S" => {
            let t = tys(3)?;
            Some(Family::S(t[0].clone(), t[1].clone(), t[2].clone()))
        }
        "K" => {
            let t = tys(2)?;
            Some(Family::K(t[0].clone(), t[1].clone()))
        }
        "eq." => {
            let t = tys(1)?;
            Some(Family::EqDot(t[0].clone()))
        }
        "all." => {
            let t = tys(1)?;
            Some(Family::AllDot(t[0].clone()))
        }
        "ex." => {
            let t = tys(1)?;
            Some(Family::ExDot(t[0].clone()))
        }
        _ => None,
    })
}

fn atom_term(
    sig: &mut HolSkSignature,
    scope: &VarScope,
    name: &str,
    span: Span,
) -> Result<FolTerm, ReadError> {
    if let Some((_, s)) = scope.iter().rev().find(|(n, _)| n == name) {
        return Ok(FolTerm::Var(name.to_string(), s.clone()));
    }
    // nullary dotted constants and mangled family names come through here
    if let Some(fam) = Family::of_name(name) {
        return Ok(sig.constant(&fam));
    }
    match sig.signature().function(name) {
        Some(rank) if rank.args.is_empty() => Ok(FolTerm::constant(name)),
        Some(rank) => err(
            span,
            format!("`{}` expects {} arguments", name, rank.args.len()),
        ),
        None => err(span, format!("unknown symbol or variable `{}`", name)),
    }
}

/// Elaborates a term. Ranked symbols must be fully applied; a nullary
/// symbol of arrow sort applied to arguments is folded through `alpha`.
pub fn parse_term(
    sig: &mut HolSkSignature,
    scope: &VarScope,
    e: &SExpr,
) -> Result<FolTerm, ReadError> {
    match e {
        SExpr::Atom(a, span) => atom_term(sig, scope, a, *span),
        SExpr::List(items, span) => {
            let head = match items.first() {
                Some(SExpr::Atom(h, _)) => h.clone(),
                _ => return err(*span, "expected a symbol head"),
            };
            let rest = &items[1..];
            if let Some(fam) = indexed_family(&head, rest, *span)? {
                return Ok(sig.constant(&fam));
            }
            match head.as_str() {
                "alpha" => {
                    if rest.len() != 2 {
                        return err(*span, "`alpha` takes a function and an argument");
                    }
                    let f = parse_term(sig, scope, &rest[0])?;
                    let a = parse_term(sig, scope, &rest[1])?;
                    apply_folded(sig, f, vec![a], *span)
                }
                "lambda" => {
                    if rest.len() != 3 {
                        return err(*span, "`lambda` takes a variable, a sort and a body");
                    }
                    let x = rest[0]
                        .atom()
                        .ok_or(ReadError::Syntax {
                            span: rest[0].span(),
                            message: "expected a variable name".into(),
                        })?
                        .to_string();
                    let ty = parse_simple_type(&rest[1])?;
                    let mut inner = scope.clone();
                    inner.push((x.clone(), Sort::Simple(ty.clone())));
                    let body = parse_term(sig, &inner, &rest[2])?;
                    Ok(bracket_abstract(sig, &x, &ty, &body)?)
                }
                _ => {
                    // ranked application if the head has a matching rank,
                    // otherwise alpha-fold a nullary arrow-sorted head
                    let is_ranked = sig
                        .signature()
                        .function(&head)
                        .map(|r| !r.args.is_empty())
                        .unwrap_or(false);
                    let args = rest
                        .iter()
                        .map(|a| parse_term(sig, scope, a))
                        .collect::<Result<Vec<_>, _>>()?;
                    if is_ranked {
                        let expected = sig.signature().function(&head).unwrap().args.len();
                        if args.len() != expected {
                            return err(
                                *span,
                                format!("`{}` expects {} arguments", head, expected),
                            );
                        }
                        Ok(FolTerm::FnApp(head, args))
                    } else {
                        let f = atom_term(sig, scope, &head, *span)?;
                        apply_folded(sig, f, args, *span)
                    }
                }
            }
        }
    }
}

fn apply_folded(
    sig: &mut HolSkSignature,
    f: FolTerm,
    args: Vec<FolTerm>,
    span: Span,
) -> Result<FolTerm, ReadError> {
    let mut cur = f;
    for a in args {
        let ty = sig
            .simple_sort_of(&cur)
            .map_err(ReadError::Elab)?;
        if ty.as_arrow().is_none() {
            return err(span, format!("cannot apply a term of sort `{}`", ty));
        }
        cur = sig.apply(cur, &ty, a);
    }
    Ok(cur)
}

pub fn parse_formula(
    sig: &mut HolSkSignature,
    scope: &VarScope,
    e: &SExpr,
) -> Result<FolFormula, ReadError> {
    match e {
        SExpr::Atom(a, span) => match a.as_str() {
            "true" => Ok(FolFormula::Top),
            "false" => Ok(FolFormula::Bot),
            other => err(*span, format!("expected a formula, found `{}`", other)),
        },
        SExpr::List(items, span) => {
            let head = match items.first() {
                Some(SExpr::Atom(h, _)) => h.as_str(),
                _ => return err(*span, "expected a connective or predicate head"),
            };
            let rest = &items[1..];
            let two = |sig: &mut HolSkSignature| -> Result<(FolFormula, FolFormula), ReadError> {
                if rest.len() != 2 {
                    return err(*span, format!("`{}` takes two formulas", head));
                }
                Ok((
                    parse_formula(sig, scope, &rest[0])?,
                    parse_formula(sig, scope, &rest[1])?,
                ))
            };
            match head {
                "and" => two(sig).map(|(a, b)| FolFormula::and(a, b)),
                "or" => two(sig).map(|(a, b)| FolFormula::or(a, b)),
                "imp" => two(sig).map(|(a, b)| FolFormula::implies(a, b)),
                "iff" => two(sig).map(|(a, b)| FolFormula::iff(a, b)),
                "not" => {
                    if rest.len() != 1 {
                        return err(*span, "`not` takes one formula");
                    }
                    Ok(FolFormula::not(parse_formula(sig, scope, &rest[0])?))
                }
                "=" => {
                    if rest.len() != 2 {
                        return err(*span, "`=` takes two terms");
                    }
                    Ok(FolFormula::Eq(
                        parse_term(sig, scope, &rest[0])?,
                        parse_term(sig, scope, &rest[1])?,
                    ))
                }
                "forall" | "exists" => {
                    if rest.len() != 3 {
                        return err(*span, format!("`{}` takes a variable, a sort and a body", head));
                    }
                    let x = rest[0]
                        .atom()
                        .ok_or(ReadError::Syntax {
                            span: rest[0].span(),
                            message: "expected a variable name".into(),
                        })?
                        .to_string();
                    let s = parse_sort(&rest[1])?;
                    let mut inner = scope.clone();
                    inner.push((x.clone(), s.clone()));
                    let body = parse_formula(sig, &inner, &rest[2])?;
                    Ok(if head == "forall" {
                        FolFormula::forall(x, s, body)
                    } else {
                        FolFormula::exists(x, s, body)
                    })
                }
                pred => {
                    if sig.signature().predicate(pred).is_none() {
                        return err(*span, format!("unknown predicate `{}`", pred));
                    }
                    let args = rest
                        .iter()
                        .map(|a| parse_term(sig, scope, a))
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(FolFormula::PredApp(pred.to_string(), args))
                }
            }
        }
    }
}

/// Reads a theory file: `(sort ...)`, `(fn name (args) result)`,
/// `(pred name (args))`, `(skolem name)`, `(axiom name formula)` and an
/// optional `(provenance ...)` trailer.
pub fn read_theory(input: &str) -> Result<Theory, ReadError> {
    let entries = read_all(input)?;
    let mut sig = Signature::new();
    let mut axiom_entries: Vec<(String, SExpr)> = Vec::new();
    let mut provenance = Vec::new();
    for e in &entries {
        let span = e.span();
        let items = match e.list() {
            Some(items) if !items.is_empty() => items,
            _ => return err(span, "expected a declaration list"),
        };
        let head = items[0]
            .atom()
            .ok_or(ReadError::Syntax { span, message: "expected a declaration head".into() })?;
        match head {
            "sort" => {
                if items.len() != 2 {
                    return err(span, "`sort` takes one sort");
                }
                sig.add_sort(parse_sort(&items[1])?);
            }
            "fn" => {
                if items.len() != 4 {
                    return err(span, "`fn` takes a name, argument sorts and a result sort");
                }
                let name = items[1]
                    .atom()
                    .ok_or(ReadError::Syntax { span, message: "expected a symbol name".into() })?;
                let args = items[2]
                    .list()
                    .ok_or(ReadError::Syntax {
                        span: items[2].span(),
                        message: "expected an argument sort list".into(),
                    })?
                    .iter()
                    .map(parse_sort)
                    .collect::<Result<Vec<_>, _>>()?;
                let result = parse_sort(&items[3])?;
                sig.add_function(name, args, result)
                    .map_err(|source| ReadError::Sig { span, source })?;
            }
            "pred" => {
                if items.len() != 3 {
                    return err(span, "`pred` takes a name and argument sorts");
                }
                let name = items[1]
                    .atom()
                    .ok_or(ReadError::Syntax { span, message: "expected a symbol name".into() })?;
                let args = items[2]
                    .list()
                    .ok_or(ReadError::Syntax {
                        span: items[2].span(),
                        message: "expected an argument sort list".into(),
                    })?
                    .iter()
                    .map(parse_sort)
                    .collect::<Result<Vec<_>, _>>()?;
                sig.add_predicate(name, args)
                    .map_err(|source| ReadError::Sig { span, source })?;
            }
            "skolem" => {
                if items.len() != 2 {
                    return err(span, "`skolem` takes a declared function name");
                }
                let name = items[1]
                    .atom()
                    .ok_or(ReadError::Syntax { span, message: "expected a symbol name".into() })?;
                sig.mark_skolem(name).map_err(|source| ReadError::Sig { span, source })?;
            }
            "axiom" => {
                if items.len() != 3 {
                    return err(span, "`axiom` takes a name and a formula");
                }
                let name = items[1]
                    .atom()
                    .ok_or(ReadError::Syntax { span, message: "expected an axiom name".into() })?;
                axiom_entries.push((name.to_string(), items[2].clone()));
            }
            "provenance" => {
                for p in &items[1..] {
                    provenance.push(p.to_string());
                }
            }
            other => return err(span, format!("unknown declaration `{}`", other)),
        }
    }
    // axioms elaborate against the full signature, families added on demand
    let mut hsig = HolSkSignature::from_signature(sig);
    let mut axioms = Vec::new();
    for (name, e) in axiom_entries {
        let formula = parse_formula(&mut hsig, &Vec::new(), &e)?;
        axioms.push(NamedAxiom { name, formula });
    }
    Ok(Theory { signature: hsig.into_signature(), axioms, provenance })
}

/// Reads a `.trm` input: leading declarations, then exactly one term or
/// formula. Returns the signature and either side.
pub enum TermOrFormula {
    Term(FolTerm),
    Formula(FolFormula),
}

pub fn read_term_file(input: &str) -> Result<(HolSkSignature, TermOrFormula), ReadError> {
    let entries = read_all(input)?;
    if entries.is_empty() {
        return err(Span::new(0, 0), "empty input");
    }
    let (last, decls) = entries.split_last().unwrap();
    let mut decl_src = String::new();
    for d in decls {
        let _ = writeln!(decl_src, "{}", d);
    }
    let theory = read_theory(&decl_src)?;
    let mut sig = HolSkSignature::from_signature(theory.signature);
    // a formula head means a formula; anything else elaborates as a term
    let is_formula = match last {
        SExpr::Atom(a, _) => matches!(a.as_str(), "true" | "false"),
        SExpr::List(items, _) => match items.first().and_then(|h| h.atom()) {
            Some("and" | "or" | "imp" | "iff" | "not" | "=" | "forall" | "exists") => true,
            Some(head) => sig.signature().predicate(head).is_some(),
            None => false,
        },
    };
    let out = if is_formula {
        TermOrFormula::Formula(parse_formula(&mut sig, &Vec::new(), last)?)
    } else {
        TermOrFormula::Term(parse_term(&mut sig, &Vec::new(), last)?)
    };
    Ok((sig, out))
}

// --- printing ---

fn family_display(name: &str) -> String {
    match Family::of_name(name) {
        Some(f) => f.base_name().to_string(),
        None => name.to_string(),
    }
}

/// Human-facing term syntax: `α(α(K,a),b)`, indices elided.
pub fn pretty_term(t: &FolTerm) -> String {
    match t {
        FolTerm::Var(x, _) => x.clone(),
        FolTerm::FnApp(name, args) => {
            let shown = match Family::of_name(name) {
                Some(Family::Alpha(..)) => "α".to_string(),
                _ => family_display(name),
            };
            if args.is_empty() {
                shown
            } else {
                let inner: Vec<String> = args.iter().map(pretty_term).collect();
                format!("{}({})", shown, inner.join(","))
            }
        }
    }
}

pub fn pretty_formula(p: &FolFormula) -> String {
    match p {
        FolFormula::PredApp(name, args) => {
            if args.is_empty() {
                name.clone()
            } else {
                let inner: Vec<String> = args.iter().map(pretty_term).collect();
                format!("{}({})", name, inner.join(","))
            }
        }
        FolFormula::Eq(a, b) => format!("{} = {}", pretty_term(a), pretty_term(b)),
        FolFormula::Top => "true".into(),
        FolFormula::Bot => "false".into(),
        FolFormula::Not(q) => format!("~{}", pretty_atomish(q)),
        FolFormula::And(a, b) => format!("{} /\\ {}", pretty_atomish(a), pretty_atomish(b)),
        FolFormula::Or(a, b) => format!("{} \\/ {}", pretty_atomish(a), pretty_atomish(b)),
        FolFormula::Implies(a, b) => format!("{} => {}", pretty_atomish(a), pretty_atomish(b)),
        FolFormula::Iff(a, b) => format!("{} <=> {}", pretty_atomish(a), pretty_atomish(b)),
        FolFormula::Forall(x, s, body) => {
            format!("forall {} : {}, {}", x, s, pretty_formula(body))
        }
        FolFormula::Exists(x, s, body) => {
            format!("exists {} : {}, {}", x, s, pretty_formula(body))
        }
    }
}

fn pretty_atomish(p: &FolFormula) -> String {
    match p {
        FolFormula::PredApp(..) | FolFormula::Top | FolFormula::Bot | FolFormula::Not(_) => {
            pretty_formula(p)
        }
        _ => format!("({})", pretty_formula(p)),
    }
}

fn sort_sexpr(s: &Sort) -> String {
    match s {
        Sort::Simple(t) => simple_type_sexpr(t),
        Sort::Db(d) => {
            let ctx: Vec<String> = (0..)
                .map_while(|k| d.context.get(k))
                .map(simple_type_sexpr)
                .collect();
            format!("(|- ({}) {})", ctx.join(" "), simple_type_sexpr(&d.ty))
        }
    }
}

fn simple_type_sexpr(t: &SimpleType) -> String {
    match t {
        SimpleType::I => "i".into(),
        SimpleType::O => "o".into(),
        SimpleType::Arrow(d, c) => {
            format!("(-> {} {})", simple_type_sexpr(d), simple_type_sexpr(c))
        }
    }
}

pub fn term_sexpr(t: &FolTerm) -> String {
    match t {
        FolTerm::Var(x, _) => x.clone(),
        FolTerm::FnApp(name, args) => {
            if args.is_empty() {
                name.clone()
            } else {
                let inner: Vec<String> = args.iter().map(term_sexpr).collect();
                format!("({} {})", name, inner.join(" "))
            }
        }
    }
}

pub fn formula_sexpr(p: &FolFormula) -> String {
    match p {
        FolFormula::PredApp(name, args) => {
            if args.is_empty() {
                format!("({})", name)
            } else {
                let inner: Vec<String> = args.iter().map(term_sexpr).collect();
                format!("({} {})", name, inner.join(" "))
            }
        }
        FolFormula::Eq(a, b) => format!("(= {} {})", term_sexpr(a), term_sexpr(b)),
        FolFormula::Top => "true".into(),
        FolFormula::Bot => "false".into(),
        FolFormula::Not(q) => format!("(not {})", formula_sexpr(q)),
        FolFormula::And(a, b) => format!("(and {} {})", formula_sexpr(a), formula_sexpr(b)),
        FolFormula::Or(a, b) => format!("(or {} {})", formula_sexpr(a), formula_sexpr(b)),
        FolFormula::Implies(a, b) => format!("(imp {} {})", formula_sexpr(a), formula_sexpr(b)),
        FolFormula::Iff(a, b) => format!("(iff {} {})", formula_sexpr(a), formula_sexpr(b)),
        FolFormula::Forall(x, s, body) => {
            format!("(forall {} {} {})", x, sort_sexpr(s), formula_sexpr(body))
        }
        FolFormula::Exists(x, s, body) => {
            format!("(exists {} {} {})", x, sort_sexpr(s), formula_sexpr(body))
        }
    }
}

/// Serializes a theory in the same format [`read_theory`] accepts.
pub fn write_theory(th: &Theory) -> String {
    let mut out = String::new();
    for s in th.signature.sorts() {
        let _ = writeln!(out, "(sort {})", sort_sexpr(s));
    }
    for (name, rank) in th.signature.functions() {
        let args: Vec<String> = rank.args.iter().map(sort_sexpr).collect();
        let result = rank.result.as_ref().expect("function rank");
        let _ = writeln!(out, "(fn {} ({}) {})", name, args.join(" "), sort_sexpr(result));
    }
    for (name, rank) in th.signature.predicates() {
        let args: Vec<String> = rank.args.iter().map(sort_sexpr).collect();
        let _ = writeln!(out, "(pred {} ({}))", name, args.join(" "));
    }
    for name in th.signature.skolem_symbols() {
        let _ = writeln!(out, "(skolem {})", name);
    }
    for ax in &th.axioms {
        let _ = writeln!(out, "(axiom {} {})", ax.name, formula_sexpr(&ax.formula));
    }
    if !th.provenance.is_empty() {
        let _ = writeln!(out, "(provenance {})", th.provenance.join(" "));
    }
    out
}

pub fn rank_display(rank: &Rank) -> String {
    rank.to_string()
}
