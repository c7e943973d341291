//! Command-line frontend: theory checking, translation, normalization,
//! skolemization, the de Bruijn views and proof checking.
//!
//! Exit codes: 0 on success, 1 when the input is well-formed but wrong
//! (ill-typed, invalid proof, fuel exhausted, ...), 2 on unreadable input.

mod dbt;

use clap::{Parser, Subcommand, ValueEnum};
use holsk_core::debruijn::{to_debruijn, typecheck_db, DbSort};
use holsk_core::holsk::{generate_axioms, translate_prop, translate_term, HolSkSignature};
use holsk_core::msfol::sexpr::{
    pretty_formula, pretty_term, read_term_file, read_theory, write_theory, ReadError,
    TermOrFormula,
};
use holsk_core::msfol::Theory;
use holsk_core::proofcheck::{check_proof, read_proof, ProofReadError};
use holsk_core::rewrite::{
    normalize_formula, normalize_term, trace_term, Strategy, DEFAULT_FUEL,
};
use holsk_core::skolem::{skolemize, SkolemNamer, SkolemizationMode};
use holsk_core::stt::{parse_context, typecheck, SimpleType};
use std::fmt::Write as _;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "holsk", version, about = "simple type theory as a first-order theory of combinators")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Naive,
    Miller,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strat {
    Lo,
    Innermost,
}

impl From<Strat> for Strategy {
    fn from(s: Strat) -> Strategy {
        match s {
            Strat::Lo => Strategy::LeftmostOutermost,
            Strat::Innermost => Strategy::Innermost,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Check that a theory file is well-formed and closed
    Check {
        /// theory file (.thy)
        file: String,
    },
    /// Translate a lambda term or proposition to combinators
    Translate {
        /// term file (.stt), optionally with a `[x : T, ...]` context
        file: String,
    },
    /// Normalize a combinator term or formula
    Normalize {
        /// input file (.trm): declarations then one term or formula
        file: String,
        #[arg(long, value_enum, default_value = "lo")]
        strategy: Strat,
        /// print every intermediate step with the rule applied
        #[arg(long)]
        trace: bool,
    },
    /// Skolemize one axiom of a theory
    Skolemize {
        /// theory file (.thy)
        file: String,
        /// name of the axiom to skolemize
        #[arg(long)]
        axiom: String,
        #[arg(long, value_enum, default_value = "miller")]
        mode: Mode,
        /// witness names to use instead of sk0, sk1, ... (repeatable)
        #[arg(long)]
        name: Vec<String>,
        /// print the updated theory file instead of a report
        #[arg(long)]
        emit_theory: bool,
    },
    /// Print the de Bruijn form of a lambda term
    Debruijn {
        /// term file (.stt)
        file: String,
        /// annotate each binder with its type
        #[arg(long)]
        annotated: bool,
    },
    /// Type a de Bruijn term and print its context-type sort
    TypecheckDb {
        /// de Bruijn term file (.dbt)
        file: String,
    },
    /// Check a natural-deduction proof against a theory
    ProveCheck {
        /// theory file (.thy)
        theory: String,
        /// proof file (.prf)
        proof: String,
        #[arg(long, value_enum, default_value = "miller")]
        mode: Mode,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn input_err(e: impl std::fmt::Display) -> Failure {
    Failure { code: 2, message: e.to_string() }
}

fn check_err(e: impl std::fmt::Display) -> Failure {
    Failure { code: 1, message: e.to_string() }
}

fn fuel() -> u64 {
    match std::env::var("HOLSK_FUEL") {
        Ok(v) => v.parse().unwrap_or(DEFAULT_FUEL),
        Err(_) => DEFAULT_FUEL,
    }
}

fn read(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| input_err(format!("{}: {}", path, e)))
}

fn warn_naive(mode: Mode) {
    if mode == Mode::Naive {
        eprintln!(
            "warning: naive mode treats witnesses as ordinary symbols; \
             abstraction over their arguments goes unchecked"
        );
    }
}

fn run() -> Result<String, Failure> {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Check { file } => {
            let th = read_theory(&read(&file)?).map_err(input_err)?;
            th.check().map_err(check_err)?;
            Ok(format!("ok: {} axioms", th.axioms.len()))
        }
        Cmd::Translate { file } => {
            let (ctx, term) = parse_context(&read(&file)?).map_err(input_err)?;
            let ty = typecheck(&ctx, &term).map_err(check_err)?;
            let mut sig = HolSkSignature::new();
            if ty == SimpleType::O {
                let f = translate_prop(&mut sig, &ctx, &term).map_err(check_err)?;
                Ok(pretty_formula(&f))
            } else {
                let t = translate_term(&mut sig, &ctx, &term).map_err(check_err)?;
                Ok(pretty_term(&t))
            }
        }
        Cmd::Normalize { file, strategy, trace } => {
            let (_sig, input) = read_term_file(&read(&file)?).map_err(input_err)?;
            let strategy = Strategy::from(strategy);
            match input {
                TermOrFormula::Term(t) => {
                    if trace {
                        let steps = trace_term(&t, strategy, fuel()).map_err(check_err)?;
                        let mut out = String::new();
                        for (rule, term) in &steps {
                            match rule {
                                None => {
                                    let _ = writeln!(out, "{}", pretty_term(term));
                                }
                                Some(r) => {
                                    let _ = writeln!(out, "→ {}   [{}]", pretty_term(term), r);
                                }
                            }
                        }
                        Ok(out.trim_end().to_string())
                    } else {
                        let n = normalize_term(&t, strategy, fuel()).map_err(check_err)?;
                        if n == t {
                            Ok(pretty_term(&n))
                        } else {
                            Ok(format!("{} → {}", pretty_term(&t), pretty_term(&n)))
                        }
                    }
                }
                TermOrFormula::Formula(p) => {
                    let n = normalize_formula(&p, strategy, fuel()).map_err(check_err)?;
                    if n == p {
                        Ok(pretty_formula(&n))
                    } else {
                        Ok(format!("{} → {}", pretty_formula(&p), pretty_formula(&n)))
                    }
                }
            }
        }
        Cmd::Skolemize { file, axiom, mode, name, emit_theory } => {
            warn_naive(mode);
            let mut th = read_theory(&read(&file)?).map_err(input_err)?;
            let ax = th
                .axiom(&axiom)
                .ok_or_else(|| check_err(format!("no axiom named `{}`", axiom)))?
                .clone();
            let skmode = match mode {
                Mode::Naive => SkolemizationMode::Naive,
                Mode::Miller => SkolemizationMode::Miller,
            };
            let mut namer = SkolemNamer::with_preferred(name);
            let result =
                skolemize(&mut th.signature, &ax.formula, skmode, &mut namer).map_err(check_err)?;
            if emit_theory {
                th.axioms.retain(|a| a.name != axiom);
                th.add_axiom(format!("{}_sk", axiom), result.formula);
                Ok(write_theory(&th).trim_end().to_string())
            } else {
                let mut out = String::new();
                for (name, rank) in &result.symbols {
                    let _ = writeln!(out, "{}: {}", name, rank);
                }
                let _ = writeln!(out, "{}", pretty_formula(&result.formula));
                Ok(out.trim_end().to_string())
            }
        }
        Cmd::Debruijn { file, annotated } => {
            let (ctx, term) = parse_context(&read(&file)?).map_err(input_err)?;
            typecheck(&ctx, &term).map_err(check_err)?;
            let (db, _dbctx, _order) = to_debruijn(&ctx, &term).map_err(check_err)?;
            if annotated {
                Ok(db.print_annotated())
            } else {
                Ok(db.to_string())
            }
        }
        Cmd::TypecheckDb { file } => {
            let (term, ctx) = dbt::parse_dbt(&read(&file)?).map_err(input_err)?;
            let ty = typecheck_db(&term, &ctx).map_err(check_err)?;
            let sort = DbSort { context: ctx, ty };
            Ok(sort.to_string())
        }
        Cmd::ProveCheck { theory, proof, mode } => {
            warn_naive(mode);
            let th = read_theory(&read(&theory)?).map_err(input_err)?;
            let mut signature = th.signature.clone();
            if mode == Mode::Naive {
                signature.unmark_skolem_all();
            }
            let mut sig = HolSkSignature::from_signature(signature);
            // elaboration failures (e.g. abstraction over a skolem argument)
            // are semantic; only malformed files exit with 2
            let prf = read_proof(&mut sig, &read(&proof)?).map_err(|e| match &e {
                ProofReadError::Read(ReadError::Elab(_)) => check_err(e),
                _ => input_err(e),
            })?;
            // make the combinator axioms for every family in scope citable
            let mut axioms = th.axioms.clone();
            for ax in generate_axioms(&mut sig) {
                if !axioms.iter().any(|a| a.name == ax.name) {
                    axioms.push(ax);
                }
            }
            let th = Theory { signature: sig.into_signature(), axioms, provenance: th.provenance };
            let proved = check_proof(&th, &prf, fuel()).map_err(check_err)?;
            Ok(format!("proof ok: {}", pretty_formula(&proved)))
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(out) => {
            println!("{}", out);
            ExitCode::SUCCESS
        }
        Err(Failure { code, message }) => {
            eprintln!("error: {}", message);
            ExitCode::from(code)
        }
    }
}
