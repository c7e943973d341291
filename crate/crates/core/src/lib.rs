//! Simple type theory as a many-sorted first-order theory of combinators:
//! translation, rewriting, skolemization and proof checking modulo.
//!
//! The crate is organized in layers:
//!
//! * [`stt`] — the simply typed lambda calculus with logical constants;
//! * [`msfol`] — many-sorted first-order logic with ranked symbols;
//! * [`families`] — the indexed combinator symbol families (`S`, `K`,
//!   application, the dotted connectives);
//! * [`holsk`] — the combinator encoding: signature, axioms, bracket
//!   abstraction and the two translations;
//! * [`rewrite`] — the rewrite-system reading of the axioms, with
//!   normalization and decidable equality modulo;
//! * [`skolem`] — naive versus sound skolemization of closed formulas;
//! * [`debruijn`] — the de Bruijn presentation where Skolem sorts carry
//!   typing contexts;
//! * [`proofcheck`] — natural deduction modulo the rewrite system;
//! * [`sexpr`] — the shared s-expression reader for the file formats.

pub mod debruijn;
pub mod families;
pub mod holsk;
pub mod msfol;
pub mod proofcheck;
pub mod rewrite;
pub mod sexpr;
pub mod skolem;
pub mod stt;
