//! Random combinator terms and lifted-fragment formulas, produced by
//! translating random lambda terms. Everything is well-sorted by
//! construction and tends to be rich in S/K redexes.

use super::{eps, translate_term, HolSkSignature};
use crate::msfol::{FolFormula, FolTerm};
use crate::stt::random::{base_context, random_term, random_type};
use crate::stt::{SimpleType, SttContext};
use rand::Rng;

/// Random well-sorted combinator term of the given sort. Free lambda
/// variables of the source term become free first-order variables.
pub fn random_combinator_term<R: Rng>(
    sig: &mut HolSkSignature,
    rng: &mut R,
    ty: &SimpleType,
    size: u32,
) -> FolTerm {
    let ctx = base_context();
    loop {
        let t = random_term(rng, &ctx, ty, size, true);
        // skolem capture cannot happen here (no skolem symbols in sight),
        // but lambda-free retries keep the loop total regardless
        match translate_term(sig, &ctx, &t) {
            Ok(out) => return out,
            Err(_) => continue,
        }
    }
}

/// Random formula of the lifted fragment: quantifiers and connectives over
/// epsilon atoms and equations between combinator terms.
pub fn random_lifted_formula<R: Rng>(
    sig: &mut HolSkSignature,
    rng: &mut R,
    size: u32,
) -> FolFormula {
    let ctx = base_context();
    gen(sig, rng, &mut ctx.clone(), size, &mut 0)
}

fn gen<R: Rng>(
    sig: &mut HolSkSignature,
    rng: &mut R,
    ctx: &mut SttContext,
    size: u32,
    fresh: &mut u64,
) -> FolFormula {
    if size == 0 {
        return if rng.gen_bool(0.5) { FolFormula::Top } else { atom(sig, rng, ctx, 1) };
    }
    match rng.gen_range(0..10) {
        0 | 1 => atom(sig, rng, ctx, size),
        2 => FolFormula::and(
            gen(sig, rng, ctx, size / 2, fresh),
            gen(sig, rng, ctx, size / 2, fresh),
        ),
        3 => FolFormula::or(
            gen(sig, rng, ctx, size / 2, fresh),
            gen(sig, rng, ctx, size / 2, fresh),
        ),
        4 => FolFormula::implies(
            gen(sig, rng, ctx, size / 2, fresh),
            gen(sig, rng, ctx, size / 2, fresh),
        ),
        5 => FolFormula::not(gen(sig, rng, ctx, size - 1, fresh)),
        6 | 7 => {
            let ty = random_type(rng, 1);
            let x = format!("q{}", *fresh);
            *fresh += 1;
            ctx.push(x.clone(), ty.clone());
            let body = gen(sig, rng, ctx, size - 1, fresh);
            ctx.pop();
            if rng.gen_bool(0.5) {
                FolFormula::forall(x, ty, body)
            } else {
                FolFormula::exists(x, ty, body)
            }
        }
        8 => {
            let ty = random_type(rng, 1);
            let a = term_in(sig, rng, ctx, &ty, size / 2);
            let b = term_in(sig, rng, ctx, &ty, size / 2);
            FolFormula::Eq(a, b)
        }
        _ => {
            if rng.gen_bool(0.5) {
                FolFormula::Top
            } else {
                FolFormula::Bot
            }
        }
    }
}

fn atom<R: Rng>(
    sig: &mut HolSkSignature,
    rng: &mut R,
    ctx: &SttContext,
    size: u32,
) -> FolFormula {
    eps(term_in(sig, rng, ctx, &SimpleType::O, size))
}

fn term_in<R: Rng>(
    sig: &mut HolSkSignature,
    rng: &mut R,
    ctx: &SttContext,
    ty: &SimpleType,
    size: u32,
) -> FolTerm {
    loop {
        let t = random_term(rng, ctx, ty, size, true);
        if let Ok(out) = translate_term(sig, ctx, &t) {
            return out;
        }
    }
}
