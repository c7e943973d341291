//! Type-directed random term generation for property suites.

use super::{beta_normalize, SimpleType, SttContext, SttTerm};
use rand::Rng;

/// Standard context used by the random suites: a couple of individuals,
/// propositions and function-typed variables.
pub fn base_context() -> SttContext {
    use SimpleType as T;
    SttContext::of(&[
        ("a", T::I),
        ("b", T::I),
        ("p", T::O),
        ("q", T::O),
        ("g", T::arrow(T::I, T::I)),
        ("r", T::arrow(T::I, T::O)),
    ])
}

pub fn random_type<R: Rng>(rng: &mut R, depth: u32) -> SimpleType {
    if depth == 0 || rng.gen_bool(0.55) {
        if rng.gen_bool(0.5) {
            SimpleType::I
        } else {
            SimpleType::O
        }
    } else {
        SimpleType::arrow(random_type(rng, depth - 1), random_type(rng, depth - 1))
    }
}

fn ctx_vars_of(ctx: &SttContext, ty: &SimpleType) -> Vec<String> {
    ctx.iter()
        .filter(|(_, t)| t == ty)
        .map(|(n, _)| n.clone())
        .collect()
}

/// Cheapest well-typed inhabitant of `ty`: used when the size budget runs out.
fn fallback(ctx: &SttContext, ty: &SimpleType, allow_consts: bool, depth: u32) -> SttTerm {
    let vars = ctx_vars_of(ctx, ty);
    if !vars.is_empty() {
        return SttTerm::var(&vars[0]);
    }
    match ty {
        SimpleType::O => SttTerm::Top,
        SimpleType::Arrow(d, c) => {
            let x = format!("v{}", depth);
            let mut inner = ctx.clone();
            inner.push(x.clone(), (**d).clone());
            SttTerm::abs(x, (**d).clone(), fallback(&inner, c, allow_consts, depth + 1))
        }
        SimpleType::I => {
            if allow_consts {
                SttTerm::Const("c0_i".into(), SimpleType::I)
            } else {
                // callers without constants must seed the context with an
                // individual variable
                panic!("no individual available in context")
            }
        }
    }
}

/// Random well-typed term of type `ty` in `ctx`, bounded by `size`.
pub fn random_term<R: Rng>(
    rng: &mut R,
    ctx: &SttContext,
    ty: &SimpleType,
    size: u32,
    allow_consts: bool,
) -> SttTerm {
    let mut fresh = 0u64;
    gen(rng, &mut ctx.clone(), ty, size, allow_consts, &mut fresh)
}

fn gen<R: Rng>(
    rng: &mut R,
    ctx: &mut SttContext,
    ty: &SimpleType,
    size: u32,
    allow_consts: bool,
    fresh: &mut u64,
) -> SttTerm {
    if size == 0 {
        return fallback(ctx, ty, allow_consts, 0);
    }
    let vars = ctx_vars_of(ctx, ty);
    // weighted choice of productions available at this type
    let mut choices: Vec<u8> = Vec::new();
    if !vars.is_empty() {
        choices.extend([0, 0]);
    }
    choices.push(1); // application
    if ty.as_arrow().is_some() {
        choices.extend([2, 2]);
    }
    if *ty == SimpleType::O {
        choices.extend([3, 3, 4]);
    }
    if allow_consts {
        choices.push(5);
    }
    match choices[rng.gen_range(0..choices.len())] {
        0 => SttTerm::var(&vars[rng.gen_range(0..vars.len())]),
        1 => {
            let dom = random_type(rng, 1);
            let fun_ty = SimpleType::arrow(dom.clone(), ty.clone());
            let f = gen(rng, ctx, &fun_ty, size / 2, allow_consts, fresh);
            let a = gen(rng, ctx, &dom, size / 2, allow_consts, fresh);
            SttTerm::app(f, a)
        }
        2 => {
            let (d, c) = ty.as_arrow().unwrap();
            let (d, c) = (d.clone(), c.clone());
            let x = format!("x{}", *fresh);
            *fresh += 1;
            ctx.push(x.clone(), d.clone());
            let body = gen(rng, ctx, &c, size - 1, allow_consts, fresh);
            ctx.pop();
            SttTerm::abs(x, d, body)
        }
        3 => random_connective(rng, ctx, size, allow_consts, fresh),
        4 => {
            let qty = random_type(rng, 1);
            let x = format!("x{}", *fresh);
            *fresh += 1;
            ctx.push(x.clone(), qty.clone());
            let body = gen(rng, ctx, &SimpleType::O, size - 1, allow_consts, fresh);
            ctx.pop();
            if rng.gen_bool(0.5) {
                SttTerm::forall(x, qty, body)
            } else {
                SttTerm::exists(x, qty, body)
            }
        }
        // constant names carry the type so reuse across types cannot clash
        _ => SttTerm::Const(
            format!("c{}_{}", rng.gen_range(0..3), crate::families::encode_type(ty)),
            ty.clone(),
        ),
    }
}

fn random_connective<R: Rng>(
    rng: &mut R,
    ctx: &mut SttContext,
    size: u32,
    allow_consts: bool,
    fresh: &mut u64,
) -> SttTerm {
    match rng.gen_range(0..6) {
        0 => SttTerm::And(
            Box::new(gen(rng, ctx, &SimpleType::O, size / 2, allow_consts, fresh)),
            Box::new(gen(rng, ctx, &SimpleType::O, size / 2, allow_consts, fresh)),
        ),
        1 => SttTerm::Or(
            Box::new(gen(rng, ctx, &SimpleType::O, size / 2, allow_consts, fresh)),
            Box::new(gen(rng, ctx, &SimpleType::O, size / 2, allow_consts, fresh)),
        ),
        2 => SttTerm::implies(
            gen(rng, ctx, &SimpleType::O, size / 2, allow_consts, fresh),
            gen(rng, ctx, &SimpleType::O, size / 2, allow_consts, fresh),
        ),
        3 => SttTerm::Not(Box::new(gen(
            rng,
            ctx,
            &SimpleType::O,
            size - 1,
            allow_consts,
            fresh,
        ))),
        4 => {
            let ety = random_type(rng, 1);
            SttTerm::Eq(
                Box::new(gen(rng, ctx, &ety, size / 2, allow_consts, fresh)),
                Box::new(gen(rng, ctx, &ety, size / 2, allow_consts, fresh)),
            )
        }
        _ => {
            if rng.gen_bool(0.5) {
                SttTerm::Top
            } else {
                SttTerm::Bot
            }
        }
    }
}

/// A well-typed beta-redex `(fun x : T -> body) arg` with both sides
/// beta-normal, built so that substituting `arg` for `x` creates no redex
/// under a binder: either `T` is a base type, or `arg` is not an
/// abstraction. Combinator translation simulates exactly such reductions.
pub fn random_redex<R: Rng>(rng: &mut R, size: u32) -> (SttTerm, SttTerm) {
    let ctx = base_context();
    let (binder_ty, arg) = if rng.gen_bool(0.5) {
        let ty = if rng.gen_bool(0.5) { SimpleType::I } else { SimpleType::O };
        let arg = beta_normalize(&random_term(rng, &ctx, &ty, size / 3, true));
        (ty, arg)
    } else {
        let ty = SimpleType::arrow(random_type(rng, 1), random_type(rng, 1));
        let arg = match ctx_vars_of(&ctx, &ty).first() {
            Some(v) if rng.gen_bool(0.5) => SttTerm::var(v),
            _ => SttTerm::Const(format!("u0_{}", crate::families::encode_type(&ty)), ty.clone()),
        };
        (ty, arg)
    };
    let result_ty = random_type(rng, 2);
    let mut inner = ctx.clone();
    inner.push("x", binder_ty.clone());
    let body = beta_normalize(&random_term(rng, &inner, &result_ty, size, true));
    (SttTerm::abs("x", binder_ty, body), arg)
}
