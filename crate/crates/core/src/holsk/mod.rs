//! The combinator presentation of Simple Type Theory as a many-sorted
//! first-order theory: signature generation over simple-type sorts, the
//! defining axioms, bracket abstraction, epsilon-lifting of propositions
//! and the translation from lambda terms.

pub mod random;

use crate::families::Family;
use crate::msfol::{
    sort_of, FolFormula, FolTerm, NamedAxiom, Signature, Sort, Theory, WfError,
};
use crate::stt::{typecheck, SimpleType, SttContext, SttTerm, TypeError};
use thiserror::Error;

pub const EPS: &str = "eps";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HolSkError {
    #[error("variable `{var}` occurs in an argument of the skolem symbol `{symbol}`")]
    SkolemCapture { symbol: String, var: String },
    #[error("predicate `{0}` has no lifting to a term of sort o")]
    UnsupportedAtom(String),
    #[error("iff has no dotted combinator; rewrite it before lifting")]
    UnsupportedConnective,
    #[error("cannot abstract over an argument of the applied symbol `{0}`")]
    UnsupportedTerm(String),
    #[error("sort `{0}` is not a simple type")]
    NonSimpleSort(String),
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Wf(#[from] WfError),
}

/// Signature with the epsilon predicate and on-demand generation of the
/// indexed combinator families. Each family member is created at most once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HolSkSignature {
    sig: Signature,
}

impl Default for HolSkSignature {
    fn default() -> Self {
        Self::new()
    }
}

impl HolSkSignature {
    pub fn new() -> HolSkSignature {
        let mut sig = Signature::new();
        sig.add_predicate(EPS, vec![Sort::Simple(SimpleType::O)]).unwrap();
        let mut this = HolSkSignature { sig };
        for f in [Family::TopDot, Family::BotDot, Family::NotDot, Family::AndDot, Family::OrDot, Family::ImpDot] {
            this.ensure(&f);
        }
        this
    }

    /// Wraps an existing signature (e.g. one read back from a theory file).
    pub fn from_signature(sig: Signature) -> HolSkSignature {
        let mut this = HolSkSignature { sig };
        if this.sig.predicate(EPS).is_none() {
            this.sig.add_predicate(EPS, vec![Sort::Simple(SimpleType::O)]).unwrap();
        }
        for f in [Family::TopDot, Family::BotDot, Family::NotDot, Family::AndDot, Family::OrDot, Family::ImpDot] {
            this.ensure(&f);
        }
        this
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn into_signature(self) -> Signature {
        self.sig
    }

    /// Get-or-create the symbol for a family instance; returns its name.
    pub fn ensure(&mut self, fam: &Family) -> String {
        let name = fam.name();
        if self.sig.function(&name).is_none() {
            let (args, result) = fam.rank();
            self.sig.ensure_function(
                &name,
                args.into_iter().map(Sort::Simple).collect(),
                Sort::Simple(result),
            );
        }
        name
    }

    pub fn add_constant(&mut self, name: &str, ty: SimpleType) {
        self.sig.ensure_function(name, vec![], Sort::Simple(ty));
    }

    /// Application via the alpha symbol at the indices dictated by the
    /// operand sorts.
    pub fn apply(&mut self, fun: FolTerm, fun_ty: &SimpleType, arg: FolTerm) -> FolTerm {
        let (dom, cod) = fun_ty
            .as_arrow()
            .expect("apply requires an arrow-sorted operand");
        let alpha = self.ensure(&Family::Alpha(dom.clone(), cod.clone()));
        FolTerm::FnApp(alpha, vec![fun, arg])
    }

    pub fn constant(&mut self, fam: &Family) -> FolTerm {
        FolTerm::FnApp(self.ensure(fam), vec![])
    }

    /// Simple-type sort of a term over this signature.
    pub fn simple_sort_of(&self, t: &FolTerm) -> Result<SimpleType, HolSkError> {
        match sort_of(&self.sig, t)? {
            Sort::Simple(ty) => Ok(ty),
            s => Err(HolSkError::NonSimpleSort(s.to_string())),
        }
    }
}

pub fn eps(t: FolTerm) -> FolFormula {
    FolFormula::PredApp(EPS.into(), vec![t])
}

fn tvar(name: &str, ty: &SimpleType) -> FolTerm {
    FolTerm::Var(name.into(), Sort::Simple(ty.clone()))
}

/// One axiom instance per generated combinator, shaped exactly as in the
/// defining axiom list; alpha instances and S/K have the equational axioms,
/// the dotted symbols the epsilon equivalences.
pub fn generate_axioms(sig: &mut HolSkSignature) -> Vec<NamedAxiom> {
    use SimpleType as Ty;
    let fams: Vec<Family> = sig
        .sig
        .functions()
        .filter_map(|(name, _)| Family::of_name(name))
        .collect();
    let mut out = Vec::new();
    for fam in fams {
        let name = fam.name();
        let formula = match &fam {
            Family::Alpha(..) => continue,
            Family::S(t, u, v) => {
                let xt = Ty::arrow(t.clone(), Ty::arrow(u.clone(), v.clone()));
                let yt = Ty::arrow(t.clone(), u.clone());
                let s = sig.constant(&fam);
                let sx = sig.apply(s, &{
                    let (_, r) = fam.rank();
                    r
                }, tvar("x", &xt));
                let sxy_ty = Ty::arrow(yt.clone(), Ty::arrow(t.clone(), v.clone()));
                let sxy = sig.apply(sx, &sxy_ty, tvar("y", &yt));
                let sxyz = sig.apply(sxy, &Ty::arrow(t.clone(), v.clone()), tvar("z", t));
                let xz = sig.apply(tvar("x", &xt), &xt, tvar("z", t));
                let yz = sig.apply(tvar("y", &yt), &yt, tvar("z", t));
                let rhs = sig.apply(xz, &Ty::arrow(u.clone(), v.clone()), yz);
                FolFormula::forall(
                    "x",
                    xt.clone(),
                    FolFormula::forall(
                        "y",
                        yt.clone(),
                        FolFormula::forall("z", t.clone(), FolFormula::Eq(sxyz, rhs)),
                    ),
                )
            }
            Family::K(t, u) => {
                let k = sig.constant(&fam);
                let (_, kty) = fam.rank();
                let kx = sig.apply(k, &kty, tvar("x", t));
                let kxy = sig.apply(kx, &Ty::arrow(u.clone(), t.clone()), tvar("y", u));
                FolFormula::forall(
                    "x",
                    t.clone(),
                    FolFormula::forall("y", u.clone(), FolFormula::Eq(kxy, tvar("x", t))),
                )
            }
            Family::EqDot(t) => {
                let e = sig.constant(&fam);
                let (_, ety) = fam.rank();
                let ex = sig.apply(e, &ety, tvar("x", t));
                let exy = sig.apply(ex, &Ty::arrow(t.clone(), Ty::O), tvar("y", t));
                FolFormula::forall(
                    "x",
                    t.clone(),
                    FolFormula::forall(
                        "y",
                        t.clone(),
                        FolFormula::iff(
                            eps(exy),
                            FolFormula::Eq(tvar("x", t), tvar("y", t)),
                        ),
                    ),
                )
            }
            Family::TopDot => FolFormula::iff(eps(sig.constant(&fam)), FolFormula::Top),
            Family::BotDot => FolFormula::iff(eps(sig.constant(&fam)), FolFormula::Bot),
            Family::NotDot => {
                let n = sig.constant(&fam);
                let nx = sig.apply(n, &Ty::arrow(Ty::O, Ty::O), tvar("x", &Ty::O));
                FolFormula::forall(
                    "x",
                    Ty::O,
                    FolFormula::iff(eps(nx), FolFormula::not(eps(tvar("x", &Ty::O)))),
                )
            }
            Family::AndDot | Family::OrDot | Family::ImpDot => {
                let c = sig.constant(&fam);
                let (_, cty) = fam.rank();
                let cx = sig.apply(c, &cty, tvar("x", &Ty::O));
                let cxy = sig.apply(cx, &Ty::arrow(Ty::O, Ty::O), tvar("y", &Ty::O));
                let ex = eps(tvar("x", &Ty::O));
                let ey = eps(tvar("y", &Ty::O));
                let rhs = match fam {
                    Family::AndDot => FolFormula::and(ex, ey),
                    Family::OrDot => FolFormula::or(ex, ey),
                    _ => FolFormula::implies(ex, ey),
                };
                FolFormula::forall(
                    "x",
                    Ty::O,
                    FolFormula::forall("y", Ty::O, FolFormula::iff(eps(cxy), rhs)),
                )
            }
            Family::AllDot(t) | Family::ExDot(t) => {
                let xt = Ty::arrow(t.clone(), Ty::O);
                let q = sig.constant(&fam);
                let (_, qty) = fam.rank();
                let qx = sig.apply(q, &qty, tvar("x", &xt));
                let body = eps(sig.apply(tvar("x", &xt), &xt, tvar("y", t)));
                let rhs = match &fam {
                    Family::AllDot(_) => FolFormula::forall("y", t.clone(), body),
                    _ => FolFormula::exists("y", t.clone(), body),
                };
                FolFormula::forall("x", xt.clone(), FolFormula::iff(eps(qx), rhs))
            }
        };
        out.push(NamedAxiom { name, formula });
    }
    out
}

/// Functional extensionality per arrow sort in the signature plus
/// propositional extensionality. Off by default; the combinators simulate
/// the lambda calculus only up to these axioms.
pub fn extensionality_axioms(sig: &mut HolSkSignature) -> Vec<NamedAxiom> {
    use SimpleType as Ty;
    let arrows: Vec<(SimpleType, SimpleType)> = sig
        .sig
        .sorts()
        .filter_map(|s| s.simple())
        .filter_map(|t| t.as_arrow().map(|(d, c)| (d.clone(), c.clone())))
        .collect();
    let mut out = Vec::new();
    for (d, c) in arrows {
        let fty = Ty::arrow(d.clone(), c.clone());
        let fx = sig.apply(tvar("f", &fty), &fty, tvar("x", &d));
        let gx = sig.apply(tvar("g", &fty), &fty, tvar("x", &d));
        let ax = FolFormula::forall(
            "f",
            fty.clone(),
            FolFormula::forall(
                "g",
                fty.clone(),
                FolFormula::implies(
                    FolFormula::forall("x", d.clone(), FolFormula::Eq(fx, gx)),
                    FolFormula::Eq(tvar("f", &fty), tvar("g", &fty)),
                ),
            ),
        );
        out.push(NamedAxiom { name: format!("ext_{}", crate::families::encode_type(&fty)), formula: ax });
    }
    let prop = FolFormula::forall(
        "p",
        Ty::O,
        FolFormula::forall(
            "q",
            Ty::O,
            FolFormula::implies(
                FolFormula::iff(eps(tvar("p", &Ty::O)), eps(tvar("q", &Ty::O))),
                FolFormula::Eq(tvar("p", &Ty::O), tvar("q", &Ty::O)),
            ),
        ),
    );
    out.push(NamedAxiom { name: "ext_o".into(), formula: prop });
    out
}

/// The classical three-case S/K bracket abstraction, without the eta
/// optimization. Fails if `x` occurs inside an argument of a Skolem symbol:
/// the abstraction cannot be formed there.
pub fn bracket_abstract(
    sig: &mut HolSkSignature,
    x: &str,
    x_ty: &SimpleType,
    t: &FolTerm,
) -> Result<FolTerm, HolSkError> {
    use SimpleType as Ty;
    if let FolTerm::Var(y, _) = t {
        if y == x {
            // identity: S K K at the appropriate indices
            let s = sig.constant(&Family::S(x_ty.clone(), Ty::arrow(x_ty.clone(), x_ty.clone()), x_ty.clone()));
            let k1 = sig.constant(&Family::K(x_ty.clone(), Ty::arrow(x_ty.clone(), x_ty.clone())));
            let k2 = sig.constant(&Family::K(x_ty.clone(), x_ty.clone()));
            let s_ty = Family::S(
                x_ty.clone(),
                Ty::arrow(x_ty.clone(), x_ty.clone()),
                x_ty.clone(),
            )
            .rank()
            .1;
            let sk = sig.apply(s, &s_ty, k1);
            let sk_ty = match s_ty.as_arrow() {
                Some((_, r)) => r.clone(),
                None => unreachable!(),
            };
            return Ok(sig.apply(sk, &sk_ty, k2));
        }
    }
    if !t.has_free_var(x) {
        let u_ty = sig.simple_sort_of(t)?;
        let k = sig.constant(&Family::K(u_ty.clone(), x_ty.clone()));
        let k_ty = Family::K(u_ty.clone(), x_ty.clone()).rank().1;
        return Ok(sig.apply(k, &k_ty, t.clone()));
    }
    match t {
        FolTerm::FnApp(name, args) => {
            if let Some(Family::Alpha(a_ty, b_ty)) = Family::of_name(name) {
                let fun = &args[0];
                let arg = &args[1];
                let s = sig.constant(&Family::S(x_ty.clone(), a_ty.clone(), b_ty.clone()));
                let s_ty = Family::S(x_ty.clone(), a_ty.clone(), b_ty.clone()).rank().1;
                let labs_f = bracket_abstract(sig, x, x_ty, fun)?;
                let labs_a = bracket_abstract(sig, x, x_ty, arg)?;
                let sf = sig.apply(s, &s_ty, labs_f);
                let sf_ty = match s_ty.as_arrow() {
                    Some((_, r)) => r.clone(),
                    None => unreachable!(),
                };
                Ok(sig.apply(sf, &sf_ty, labs_a))
            } else if sig.sig.is_skolem(name) {
                Err(HolSkError::SkolemCapture { symbol: name.clone(), var: x.to_string() })
            } else {
                Err(HolSkError::UnsupportedTerm(name.clone()))
            }
        }
        // Var(x) handled above; any other variable has x not free
        FolTerm::Var(..) => unreachable!("covered by the x-not-free case"),
    }
}

/// Lifts a formula of the epsilon fragment to a term `u` of sort `o` with
/// `eps(u)` rewrite-equal to the input.
pub fn lift_prop(sig: &mut HolSkSignature, p: &FolFormula) -> Result<FolTerm, HolSkError> {
    use SimpleType as Ty;
    let binop = |sig: &mut HolSkSignature, fam: Family, a: FolTerm, b: FolTerm| {
        let c = sig.constant(&fam);
        let (_, cty) = fam.rank();
        let ca = sig.apply(c, &cty, a);
        let ca_ty = match cty.as_arrow() {
            Some((_, r)) => r.clone(),
            None => unreachable!(),
        };
        sig.apply(ca, &ca_ty, b)
    };
    match p {
        FolFormula::Top => Ok(sig.constant(&Family::TopDot)),
        FolFormula::Bot => Ok(sig.constant(&Family::BotDot)),
        FolFormula::PredApp(name, args) if name == EPS => Ok(args[0].clone()),
        FolFormula::PredApp(name, _) => Err(HolSkError::UnsupportedAtom(name.clone())),
        FolFormula::Not(q) => {
            let u = lift_prop(sig, q)?;
            let n = sig.constant(&Family::NotDot);
            Ok(sig.apply(n, &Ty::arrow(Ty::O, Ty::O), u))
        }
        FolFormula::And(a, b) => {
            let (ua, ub) = (lift_prop(sig, a)?, lift_prop(sig, b)?);
            Ok(binop(sig, Family::AndDot, ua, ub))
        }
        FolFormula::Or(a, b) => {
            let (ua, ub) = (lift_prop(sig, a)?, lift_prop(sig, b)?);
            Ok(binop(sig, Family::OrDot, ua, ub))
        }
        FolFormula::Implies(a, b) => {
            let (ua, ub) = (lift_prop(sig, a)?, lift_prop(sig, b)?);
            Ok(binop(sig, Family::ImpDot, ua, ub))
        }
        FolFormula::Iff(..) => Err(HolSkError::UnsupportedConnective),
        FolFormula::Eq(a, b) => {
            let t = sig.simple_sort_of(a)?;
            Ok(binop(sig, Family::EqDot(t), a.clone(), b.clone()))
        }
        FolFormula::Forall(x, sort, body) | FolFormula::Exists(x, sort, body) => {
            let t = sort
                .simple()
                .cloned()
                .ok_or_else(|| HolSkError::NonSimpleSort(sort.to_string()))?;
            let u = lift_prop(sig, body)?;
            let abs = bracket_abstract(sig, x, &t, &u)?;
            let q = if matches!(p, FolFormula::Forall(..)) {
                Family::AllDot(t.clone())
            } else {
                Family::ExDot(t.clone())
            };
            let qc = sig.constant(&q);
            let (_, qty) = q.rank();
            Ok(sig.apply(qc, &qty, abs))
        }
    }
}

/// Structural translation of lambda terms to combinator terms: variables
/// and constants map to themselves, application to alpha, abstraction to
/// bracket abstraction, logical constants to the dotted combinators.
pub fn translate_term(
    sig: &mut HolSkSignature,
    ctx: &SttContext,
    t: &SttTerm,
) -> Result<FolTerm, HolSkError> {
    use SimpleType as Ty;
    let binop = |sig: &mut HolSkSignature, ctx: &SttContext, fam: Family, a: &SttTerm, b: &SttTerm| -> Result<FolTerm, HolSkError> {
        let ta = translate_term(sig, ctx, a)?;
        let tb = translate_term(sig, ctx, b)?;
        let c = sig.constant(&fam);
        let (_, cty) = fam.rank();
        let ca = sig.apply(c, &cty, ta);
        let ca_ty = match cty.as_arrow() {
            Some((_, r)) => r.clone(),
            None => unreachable!(),
        };
        Ok(sig.apply(ca, &ca_ty, tb))
    };
    match t {
        SttTerm::Var(x) => {
            let ty = ctx
                .lookup(x)
                .cloned()
                .ok_or_else(|| HolSkError::Type(TypeError::UnboundVariable(x.clone())))?;
            Ok(tvar(x, &ty))
        }
        SttTerm::Const(c, ty) => {
            sig.add_constant(c, ty.clone());
            Ok(FolTerm::constant(c.clone()))
        }
        SttTerm::App(f, a) => {
            let fty = typecheck(ctx, f)?;
            let tf = translate_term(sig, ctx, f)?;
            let ta = translate_term(sig, ctx, a)?;
            Ok(sig.apply(tf, &fty, ta))
        }
        SttTerm::Abs(x, ty, b) => {
            let mut inner = ctx.clone();
            inner.push(x.clone(), ty.clone());
            let tb = translate_term(sig, &inner, b)?;
            bracket_abstract(sig, x, ty, &tb)
        }
        SttTerm::Forall(x, ty, b) | SttTerm::Exists(x, ty, b) => {
            let mut inner = ctx.clone();
            inner.push(x.clone(), ty.clone());
            let tb = translate_term(sig, &inner, b)?;
            let abs = bracket_abstract(sig, x, ty, &tb)?;
            let fam = if matches!(t, SttTerm::Forall(..)) {
                Family::AllDot(ty.clone())
            } else {
                Family::ExDot(ty.clone())
            };
            let q = sig.constant(&fam);
            let (_, qty) = fam.rank();
            Ok(sig.apply(q, &qty, abs))
        }
        SttTerm::And(a, b) => binop(sig, ctx, Family::AndDot, a, b),
        SttTerm::Or(a, b) => binop(sig, ctx, Family::OrDot, a, b),
        SttTerm::Implies(a, b) => binop(sig, ctx, Family::ImpDot, a, b),
        SttTerm::Eq(a, b) => {
            let ty = typecheck(ctx, a)?;
            binop(sig, ctx, Family::EqDot(ty), a, b)
        }
        SttTerm::Not(a) => {
            let ta = translate_term(sig, ctx, a)?;
            let n = sig.constant(&Family::NotDot);
            Ok(sig.apply(n, &Ty::arrow(Ty::O, Ty::O), ta))
        }
        SttTerm::Top => Ok(sig.constant(&Family::TopDot)),
        SttTerm::Bot => Ok(sig.constant(&Family::BotDot)),
    }
}

/// Translation of a proposition: logical structure above any lambda stays
/// at the formula level, everything else becomes an epsilon atom.
pub fn translate_prop(
    sig: &mut HolSkSignature,
    ctx: &SttContext,
    t: &SttTerm,
) -> Result<FolFormula, HolSkError> {
    match t {
        SttTerm::Forall(x, ty, b) | SttTerm::Exists(x, ty, b) => {
            let mut inner = ctx.clone();
            inner.push(x.clone(), ty.clone());
            let body = translate_prop(sig, &inner, b)?;
            Ok(if matches!(t, SttTerm::Forall(..)) {
                FolFormula::forall(x.clone(), ty.clone(), body)
            } else {
                FolFormula::exists(x.clone(), ty.clone(), body)
            })
        }
        SttTerm::And(a, b) => Ok(FolFormula::and(
            translate_prop(sig, ctx, a)?,
            translate_prop(sig, ctx, b)?,
        )),
        SttTerm::Or(a, b) => Ok(FolFormula::or(
            translate_prop(sig, ctx, a)?,
            translate_prop(sig, ctx, b)?,
        )),
        SttTerm::Implies(a, b) => Ok(FolFormula::implies(
            translate_prop(sig, ctx, a)?,
            translate_prop(sig, ctx, b)?,
        )),
        SttTerm::Not(a) => Ok(FolFormula::not(translate_prop(sig, ctx, a)?)),
        SttTerm::Eq(a, b) => Ok(FolFormula::Eq(
            translate_term(sig, ctx, a)?,
            translate_term(sig, ctx, b)?,
        )),
        SttTerm::Top => Ok(FolFormula::Top),
        SttTerm::Bot => Ok(FolFormula::Bot),
        other => Ok(eps(translate_term(sig, ctx, other)?)),
    }
}

/// HOL-SK as a theory value: generated axioms plus user axioms, with
/// extensionality behind a flag (default off).
#[derive(Debug, Clone, Default)]
pub struct HolSkTheory {
    pub signature: HolSkSignature,
    pub user_axioms: Vec<NamedAxiom>,
    pub extensionality: bool,
}

impl HolSkTheory {
    pub fn new() -> HolSkTheory {
        HolSkTheory::default()
    }

    pub fn to_theory(&mut self) -> Theory {
        let mut axioms = generate_axioms(&mut self.signature);
        if self.extensionality {
            axioms.extend(extensionality_axioms(&mut self.signature));
        }
        axioms.extend(self.user_axioms.iter().cloned());
        Theory {
            signature: self.signature.signature().clone(),
            axioms,
            provenance: Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::msfol::wf_formula;
    use SimpleType as T;

    #[test]
    fn k_axiom_shape_at_iota() {
        let mut sig = HolSkSignature::new();
        sig.ensure(&Family::K(T::I, T::I));
        let axioms = generate_axioms(&mut sig);
        let k = axioms.iter().find(|a| a.name == "K_ii").expect("K axiom generated");
        // forall x forall y (alpha(alpha(K,x),y) = x)
        match &k.formula {
            FolFormula::Forall(x, _, inner) => match &**inner {
                FolFormula::Forall(_, _, eq) => match &**eq {
                    FolFormula::Eq(lhs, rhs) => {
                        assert_eq!(rhs, &tvar(x, &T::I));
                        match lhs {
                            FolTerm::FnApp(alpha, _) => {
                                assert!(alpha.starts_with("alpha_"));
                            }
                            other => panic!("unexpected lhs {:?}", other),
                        }
                    }
                    other => panic!("expected Eq, got {:?}", other),
                },
                other => panic!("expected inner Forall, got {:?}", other),
            },
            other => panic!("expected Forall, got {:?}", other),
        }
    }

    #[test]
    fn top_axiom_shape() {
        let mut sig = HolSkSignature::new();
        let axioms = generate_axioms(&mut sig);
        let top = axioms.iter().find(|a| a.name == "top.").unwrap();
        assert_eq!(
            top.formula,
            FolFormula::iff(eps(FolTerm::constant("top.")), FolFormula::Top)
        );
    }

    #[test]
    fn and_axiom_shape() {
        let mut sig = HolSkSignature::new();
        let axioms = generate_axioms(&mut sig);
        let and = axioms.iter().find(|a| a.name == "and.").unwrap();
        // forall x forall y (eps(and. x y) <=> eps(x) /\ eps(y))
        match &and.formula {
            FolFormula::Forall(_, _, inner) => match &**inner {
                FolFormula::Forall(_, _, iff) => {
                    assert!(matches!(&**iff, FolFormula::Iff(..)));
                }
                other => panic!("unexpected {:?}", other),
            },
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn generated_axioms_are_well_formed_and_closed() {
        let mut sig = HolSkSignature::new();
        sig.ensure(&Family::K(T::I, T::I));
        sig.ensure(&Family::S(T::I, T::I, T::I));
        sig.ensure(&Family::EqDot(T::arrow(T::I, T::I)));
        sig.ensure(&Family::AllDot(T::I));
        sig.ensure(&Family::ExDot(T::O));
        let axioms = generate_axioms(&mut sig);
        for ax in &axioms {
            assert!(ax.formula.is_closed(), "axiom {} not closed", ax.name);
            wf_formula(sig.signature(), &Vec::new(), &ax.formula)
                .unwrap_or_else(|e| panic!("axiom {} ill-formed: {}", ax.name, e));
        }
    }

    #[test]
    fn bracket_k_case() {
        let mut sig = HolSkSignature::new();
        sig.add_constant("c", T::I);
        let r = bracket_abstract(&mut sig, "x", &T::I, &FolTerm::constant("c")).unwrap();
        // alpha(K, c)
        match &r {
            FolTerm::FnApp(alpha, args) => {
                assert!(alpha.starts_with("alpha_"));
                assert_eq!(args[0], FolTerm::constant("K_ii"));
                assert_eq!(args[1], FolTerm::constant("c"));
            }
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn bracket_skolem_capture() {
        let sig = HolSkSignature::new();
        sig.signature();
        let mut inner = sig.clone();
        inner
            .sig
            .add_function("f", vec![Sort::Simple(T::I)], Sort::Simple(T::I))
            .unwrap();
        inner.sig.mark_skolem("f").unwrap();
        let fx = FolTerm::FnApp("f".into(), vec![tvar("x", &T::I)]);
        assert_eq!(
            bracket_abstract(&mut inner, "x", &T::I, &fx),
            Err(HolSkError::SkolemCapture { symbol: "f".into(), var: "x".into() })
        );
    }

    #[test]
    fn bracket_result_drops_x() {
        let mut sig = HolSkSignature::new();
        sig.add_constant("c", T::I);
        let t = {
            let g = tvar("g", &T::arrow(T::I, T::I));
            let gx = sig.apply(g, &T::arrow(T::I, T::I), tvar("x", &T::I));
            gx
        };
        let r = bracket_abstract(&mut sig, "x", &T::I, &t).unwrap();
        assert!(!r.has_free_var("x"));
        assert!(r.has_free_var("g"));
    }

    #[test]
    fn lift_top_and_conjunction() {
        let mut sig = HolSkSignature::new();
        assert_eq!(lift_prop(&mut sig, &FolFormula::Top).unwrap(), FolTerm::constant("top."));

        sig.add_constant("a", T::O);
        sig.add_constant("b", T::O);
        let p = FolFormula::and(eps(FolTerm::constant("a")), eps(FolTerm::constant("b")));
        let u = lift_prop(&mut sig, &p).unwrap();
        // alpha(alpha(and., a), b)
        match &u {
            FolTerm::FnApp(alpha, args) => {
                assert!(alpha.starts_with("alpha_"));
                match &args[0] {
                    FolTerm::FnApp(alpha2, inner) => {
                        assert!(alpha2.starts_with("alpha_"));
                        assert_eq!(inner[0], FolTerm::constant("and."));
                        assert_eq!(inner[1], FolTerm::constant("a"));
                    }
                    other => panic!("unexpected {:?}", other),
                }
                assert_eq!(args[1], FolTerm::constant("b"));
            }
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn lift_forall_applied_var() {
        // forall y:i. eps(alpha(x, y))  ~>  alpha(all., x)
        let mut sig = HolSkSignature::new();
        let x = tvar("x", &T::arrow(T::I, T::O));
        let atom = {
            let xy = sig.apply(x.clone(), &T::arrow(T::I, T::O), tvar("y", &T::I));
            eps(xy)
        };
        let p = FolFormula::forall("y", T::I, atom);
        let u = lift_prop(&mut sig, &p).unwrap();
        // the quantifier body is exactly x applied, so bracket abstraction
        // yields S (K x) I; the head must be all. at iota
        match &u {
            FolTerm::FnApp(alpha, args) => {
                assert!(alpha.starts_with("alpha_"));
                assert_eq!(args[0], FolTerm::constant("all._i"));
            }
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn translate_constant_is_itself() {
        let mut sig = HolSkSignature::new();
        let t = SttTerm::Const("c".into(), T::I);
        assert_eq!(
            translate_term(&mut sig, &SttContext::new(), &t).unwrap(),
            FolTerm::constant("c")
        );
    }

    #[test]
    fn translate_forall_p_imp_p() {
        let mut sig = HolSkSignature::new();
        let t = SttTerm::forall(
            "P",
            T::O,
            SttTerm::implies(SttTerm::var("P"), SttTerm::var("P")),
        );
        let f = translate_prop(&mut sig, &SttContext::new(), &t).unwrap();
        let expected = FolFormula::forall(
            "P",
            T::O,
            FolFormula::implies(eps(tvar("P", &T::O)), eps(tvar("P", &T::O))),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn translation_preserves_sorts() {
        let mut sig = HolSkSignature::new();
        let ctx = SttContext::of(&[("g", T::arrow(T::I, T::I)), ("a", T::I)]);
        let t = SttTerm::app(SttTerm::var("g"), SttTerm::var("a"));
        let tr = translate_term(&mut sig, &ctx, &t).unwrap();
        assert_eq!(sig.simple_sort_of(&tr).unwrap(), T::I);
    }
}
