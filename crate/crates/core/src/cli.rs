//! Command-line interface. Every command prints one JSON object (keys
//! sorted), or `key: value` lines with `--format text`.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::enumeration::{
    genus_counts, verify_hw_corpus, CorpusCheck, CorpusFilter, CorpusMode, CorpusSpec, DEFAULT_MULTIPLIER_CAP,
    DEFAULT_SYMMETRIC_BOUND,
};
use crate::error::{Error, Result};
use crate::gluing::{detect_complete_intersection, detect_free, glue, glued_step_witness};
use crate::hw::{apery_divisibility_witness, check_all_ideals, check_all_two_generated, check_two_generated, is_huneke_wiegand};
use crate::ideal::{enumerate_ideals_up_to_shift, RelativeIdeal};
use crate::semigroup::{parse_integer_list, NumericalSemigroup};
use crate::sequences::{
    factorizations_two_step, find_irreducible_two_step, in_sequence_semigroup, is_irreducible, shift_apery_witness,
    ArithmeticSequence,
};

#[derive(Parser, Debug)]
#[command(name = "hwsg", version, about = "Numerical semigroups, relative ideals and the Huneke-Wiegand test")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Frobenius number, genus, symmetry and gaps.
    Info(SemigroupArg),
    /// Apéry set with respect to an element.
    Apery {
        #[command(flatten)]
        semigroup: SemigroupArg,
        #[arg(long, allow_hyphen_values = true)]
        modulus: i64,
    },
    /// Delta set of one Apéry set, or the intersection over all of them.
    Delta {
        #[command(flatten)]
        semigroup: SemigroupArg,
        #[arg(long, allow_hyphen_values = true)]
        modulus: Option<i64>,
    },
    /// Relative ideal arithmetic.
    #[command(subcommand)]
    Ideal(IdealCommand),
    /// Huneke-Wiegand checks.
    #[command(subcommand)]
    Hw(HwCommand),
    /// Arithmetic sequences in the sequence semigroup.
    #[command(subcommand)]
    Seq(SeqCommand),
    /// Glue two semigroups, optionally producing a witness for a step.
    Glue {
        #[arg(long)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        a1: i64,
        #[arg(long)]
        right: String,
        #[arg(long, allow_hyphen_values = true)]
        a2: i64,
        #[arg(long, allow_hyphen_values = true)]
        step: Option<i64>,
    },
    /// Free and complete-intersection decompositions.
    Classify(SemigroupArg),
    /// Corpus enumeration and verification.
    #[command(subcommand)]
    Corpus(CorpusCommand),
}

#[derive(Args, Debug)]
pub struct SemigroupArg {
    /// Generators: `3,5`, `<3,5>`, a JSON list, or a JSON object with `generators`.
    #[arg(long, short = 's')]
    pub semigroup: String,
}

#[derive(Args, Debug)]
pub struct IdealArg {
    #[command(flatten)]
    pub semigroup: SemigroupArg,
    /// Ideal generators, in any form accepted for semigroups.
    #[arg(long, allow_hyphen_values = true)]
    pub ideal: String,
}

#[derive(Args, Debug)]
pub struct PairArg {
    #[command(flatten)]
    pub first: IdealArg,
    #[arg(long, allow_hyphen_values = true)]
    pub other: String,
}

#[derive(Subcommand, Debug)]
pub enum IdealCommand {
    Show(IdealArg),
    Add(PairArg),
    Union(PairArg),
    Intersect(PairArg),
    /// `{z : z + other in ideal}`.
    Subtract(PairArg),
    Dual(IdealArg),
    Shift {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long, allow_hyphen_values = true)]
        by: i64,
    },
    Apery {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long, allow_hyphen_values = true)]
        modulus: i64,
    },
    /// Representatives of all ideals up to translation.
    Enumerate {
        #[command(flatten)]
        semigroup: SemigroupArg,
        #[arg(long)]
        max_extra_gens: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum HwCommand {
    Check(IdealArg),
    /// The ideal `(0, s)` for a gap `s`.
    TwoGenerated {
        #[command(flatten)]
        semigroup: SemigroupArg,
        #[arg(long, allow_hyphen_values = true)]
        gap: i64,
    },
    /// All two-generated ideals, or all ideals up to shift.
    Scan {
        #[command(flatten)]
        semigroup: SemigroupArg,
        #[arg(long)]
        all_ideals: bool,
        #[arg(long)]
        max_extra_gens: Option<usize>,
    },
    /// Witness `F + g` for the split into multiples and non-multiples of `a`.
    Divisibility {
        #[command(flatten)]
        ideal: IdealArg,
        #[arg(long, allow_hyphen_values = true)]
        element: i64,
        #[arg(long, allow_hyphen_values = true)]
        divisor: i64,
    },
}

#[derive(Subcommand, Debug)]
pub enum SeqCommand {
    /// Smallest irreducible `(x;s;2)`.
    Irreducible {
        #[command(flatten)]
        semigroup: SemigroupArg,
        #[arg(long, allow_hyphen_values = true)]
        step: i64,
        #[arg(long, allow_hyphen_values = true)]
        bound: Option<i64>,
    },
    /// Membership, factorizations and irreducibility of `(x;s;n)`.
    Check {
        #[command(flatten)]
        semigroup: SemigroupArg,
        #[arg(long, allow_hyphen_values = true)]
        start: i64,
        #[arg(long, allow_hyphen_values = true)]
        step: i64,
        #[arg(long, default_value_t = 2)]
        steps: u32,
    },
    /// `(F + a - s; s; 2)` when `s` is not a difference in `Ap(S, a)`.
    ShiftApery {
        #[command(flatten)]
        semigroup: SemigroupArg,
        #[arg(long, allow_hyphen_values = true)]
        modulus: i64,
        #[arg(long, allow_hyphen_values = true)]
        step: i64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Symmetric,
    Genus,
    Closure,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FilterArg {
    All,
    Symmetric,
    Free,
    Ci,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CheckArg {
    TwoGenerated,
    AllIdeals,
}

#[derive(Subcommand, Debug)]
pub enum CorpusCommand {
    Verify {
        #[arg(long, value_enum, default_value_t = ModeArg::Symmetric)]
        mode: ModeArg,
        /// Frobenius bound for `symmetric`, seed bound for `closure`.
        #[arg(long, default_value_t = DEFAULT_SYMMETRIC_BOUND)]
        bound: i64,
        #[arg(long, default_value_t = 8)]
        max_genus: u64,
        #[arg(long, default_value_t = 1)]
        depth: usize,
        #[arg(long, default_value_t = DEFAULT_MULTIPLIER_CAP)]
        cap: i64,
        #[arg(long, value_enum, default_value_t = FilterArg::All)]
        filter: FilterArg,
        #[arg(long, value_enum, default_value_t = CheckArg::TwoGenerated)]
        check: CheckArg,
        #[arg(long)]
        max_extra_gens: Option<usize>,
        #[arg(long)]
        cross_check: bool,
        #[arg(long, env = "HW_JOBS")]
        jobs: Option<usize>,
        /// JSON lines report, one record per semigroup.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Number of semigroups of each genus.
    Count {
        #[arg(long)]
        max_genus: u64,
    },
}

fn semigroup(arg: &SemigroupArg) -> Result<Arc<NumericalSemigroup>> {
    Ok(Arc::new(NumericalSemigroup::from_generators(&parse_integer_list(&arg.semigroup)?)?))
}

fn ideal(arg: &IdealArg) -> Result<RelativeIdeal> {
    let s = semigroup(&arg.semigroup)?;
    RelativeIdeal::from_generators(&s, &parse_integer_list(&arg.ideal)?)
}

fn pair(arg: &PairArg) -> Result<(RelativeIdeal, RelativeIdeal)> {
    let a = ideal(&arg.first)?;
    let b = RelativeIdeal::from_generators(a.ambient(), &parse_integer_list(&arg.other)?)?;
    Ok((a, b))
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("serializable output")
}

fn info(s: &NumericalSemigroup) -> Result<Value> {
    Ok(json!({
        "generators": s.generators(),
        "frobenius": s.frobenius(),
        "genus": s.genus(),
        "symmetric": s.is_symmetric()?,
        "multiplicity": s.multiplicity(),
        "embedding_dimension": s.embedding_dimension(),
        "gaps": s.gaps(),
    }))
}

fn ideal_value(a: &RelativeIdeal) -> Value {
    json!({
        "ambient": a.ambient().generators(),
        "generators": a.generators(),
        "principal": a.is_principal(),
    })
}

/// Runs one parsed command and returns its JSON result.
pub fn execute(command: &Command) -> Result<Value> {
    match command {
        Command::Info(arg) => info(&*semigroup(arg)?),
        Command::Apery { semigroup: arg, modulus } => {
            let s = semigroup(arg)?;
            let ap = s.apery(*modulus)?;
            Ok(json!({ "generators": s.generators(), "modulus": modulus, "apery": ap.elements() }))
        }
        Command::Delta { semigroup: arg, modulus } => {
            let s = semigroup(arg)?;
            match modulus {
                Some(z) => {
                    let ap = s.apery(*z)?;
                    Ok(json!({ "generators": s.generators(), "modulus": z, "apery": ap.elements(), "delta": ap.delta() }))
                }
                None => {
                    let d = s.delta_intersection()?;
                    Ok(json!({
                        "generators": s.generators(),
                        "intersection": d.values,
                        "moduli_checked": d.moduli_checked,
                        "scanned_up_to": d.scanned_up_to,
                    }))
                }
            }
        }
        Command::Ideal(cmd) => ideal_command(cmd),
        Command::Hw(cmd) => hw_command(cmd),
        Command::Seq(cmd) => seq_command(cmd),
        Command::Glue { left, a1, right, a2, step } => {
            let l = Arc::new(NumericalSemigroup::from_generators(&parse_integer_list(left)?)?);
            let r = Arc::new(NumericalSemigroup::from_generators(&parse_integer_list(right)?)?);
            let g = glue(&l, *a1, &r, *a2)?;
            let mut value = to_value(g.to_json());
            value["apery_product"] = to_value(g.apery_product()?.elements());
            if let Some(s) = step {
                value["witness"] = to_value(glued_step_witness(&g, *s)?);
            }
            Ok(value)
        }
        Command::Classify(arg) => {
            let s = semigroup(arg)?;
            let free = detect_free(&s);
            let ci = detect_complete_intersection(&s);
            Ok(json!({
                "generators": s.generators(),
                "symmetric": s.is_symmetric()?,
                "free": free.is_some(),
                "complete_intersection": ci.is_some(),
                "free_tree": free,
                "complete_intersection_tree": ci,
            }))
        }
        Command::Corpus(cmd) => corpus_command(cmd),
    }
}

fn ideal_command(cmd: &IdealCommand) -> Result<Value> {
    let result = match cmd {
        IdealCommand::Show(arg) => {
            let a = ideal(arg)?;
            let mut v = ideal_value(&a);
            v["min"] = json!(a.min());
            v["conductor"] = json!(a.conductor());
            return Ok(v);
        }
        IdealCommand::Add(p) => pair(p).and_then(|(a, b)| a.add(&b))?,
        IdealCommand::Union(p) => pair(p).and_then(|(a, b)| a.union(&b))?,
        IdealCommand::Intersect(p) => pair(p).and_then(|(a, b)| a.intersect(&b))?,
        IdealCommand::Subtract(p) => pair(p).and_then(|(a, b)| a.subtract(&b))?,
        IdealCommand::Dual(arg) => ideal(arg)?.dual(),
        IdealCommand::Shift { ideal: arg, by } => ideal(arg)?.shift(*by),
        IdealCommand::Apery { ideal: arg, modulus } => {
            let a = ideal(arg)?;
            let ap = a.apery(*modulus)?;
            let mut v = ideal_value(&a);
            v["modulus"] = json!(modulus);
            v["apery"] = json!(ap.elements());
            return Ok(v);
        }
        IdealCommand::Enumerate { semigroup: arg, max_extra_gens } => {
            let s = semigroup(arg)?;
            let all: Vec<RelativeIdeal> = enumerate_ideals_up_to_shift(&s, *max_extra_gens).collect();
            let gens: Vec<&[i64]> = all.iter().map(|a| a.generators()).collect();
            return Ok(json!({ "ambient": s.generators(), "count": gens.len(), "ideals": gens }));
        }
    };
    Ok(ideal_value(&result))
}

fn hw_command(cmd: &HwCommand) -> Result<Value> {
    match cmd {
        HwCommand::Check(arg) => Ok(to_value(is_huneke_wiegand(&ideal(arg)?))),
        HwCommand::TwoGenerated { semigroup: arg, gap } => Ok(to_value(check_two_generated(&semigroup(arg)?, *gap)?)),
        HwCommand::Scan { semigroup: arg, all_ideals, max_extra_gens } => {
            let s = semigroup(arg)?;
            if *all_ideals {
                Ok(to_value(check_all_ideals(&s, *max_extra_gens)))
            } else {
                Ok(to_value(check_all_two_generated(&s)))
            }
        }
        HwCommand::Divisibility { ideal: arg, element, divisor } => {
            let a = ideal(arg)?;
            let w = apery_divisibility_witness(a.ambient(), *element, *divisor, &a)?;
            Ok(json!({ "ideal": a, "all_divisible": w.is_none(), "witness": w }))
        }
    }
}

fn seq_command(cmd: &SeqCommand) -> Result<Value> {
    match cmd {
        SeqCommand::Irreducible { semigroup: arg, step, bound } => {
            let s = semigroup(arg)?;
            let mut v = to_value(find_irreducible_two_step(&s, *step, *bound)?);
            v["step"] = json!(step);
            Ok(v)
        }
        SeqCommand::Check { semigroup: arg, start, step, steps } => {
            let s = semigroup(arg)?;
            let seq = ArithmeticSequence::new(*start, *step, *steps)?;
            let member = in_sequence_semigroup(&s, &seq)?;
            let mut v = json!({ "sequence": seq, "terms": seq.terms(), "in_semigroup": member });
            if member {
                v["irreducible"] = json!(is_irreducible(&s, &seq)?);
                if *steps == 2 {
                    v["factorizations"] = json!(factorizations_two_step(&s, &seq)?);
                }
            }
            Ok(v)
        }
        SeqCommand::ShiftApery { semigroup: arg, modulus, step } => {
            let s = semigroup(arg)?;
            let w = shift_apery_witness(&s, *modulus, *step)?;
            Ok(json!({
                "generators": s.generators(),
                "modulus": modulus,
                "step": step,
                "witness": w,
                "terms": w.map(|q| q.terms()),
            }))
        }
    }
}

fn corpus_command(cmd: &CorpusCommand) -> Result<Value> {
    match cmd {
        CorpusCommand::Count { max_genus } => Ok(json!({ "max_genus": max_genus, "counts": genus_counts(*max_genus) })),
        CorpusCommand::Verify {
            mode,
            bound,
            max_genus,
            depth,
            cap,
            filter,
            check,
            max_extra_gens,
            cross_check,
            jobs,
            out,
        } => {
            let mode = match mode {
                ModeArg::Symmetric => CorpusMode::SymmetricBelow { bound: *bound },
                ModeArg::Genus => CorpusMode::GenusTree { max_genus: *max_genus },
                ModeArg::Closure => CorpusMode::GluingClosure { seed_bound: *bound, depth: *depth, cap: *cap },
            };
            let spec = CorpusSpec {
                mode,
                filter: match filter {
                    FilterArg::All => CorpusFilter::All,
                    FilterArg::Symmetric => CorpusFilter::Symmetric,
                    FilterArg::Free => CorpusFilter::Free,
                    FilterArg::Ci => CorpusFilter::CompleteIntersection,
                },
                check: match check {
                    CheckArg::TwoGenerated => CorpusCheck::TwoGenerated,
                    CheckArg::AllIdeals => CorpusCheck::AllIdeals { max_extra_gens: *max_extra_gens },
                },
                cross_check: *cross_check,
                jobs: jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get())),
            };
            let report = verify_hw_corpus(&spec)?;
            if let Some(path) = out {
                let mut w = BufWriter::new(File::create(path)?);
                report.write_jsonl(&mut w)?;
                w.flush()?;
            }
            let mut v = to_value(&report);
            v.as_object_mut().expect("report is an object").remove("records");
            Ok(v)
        }
    }
}

fn render_text(value: &Value) -> String {
    match value {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}\n"),
                other => format!("{k}: {other}\n"),
            })
            .collect(),
        other => format!("{other}\n"),
    }
}

fn error_value(e: &Error) -> Value {
    json!({ "error": e.kind(), "message": e.to_string() })
}

/// Parses `args`, runs the command and writes its output. Returns the exit
/// code: 0 on success, 1 on a domain error, 2 on a usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let (value, code) = match execute(&cli.command) {
        Ok(v) => (v, 0),
        Err(e) => (error_value(&e), 1),
    };
    let text = match cli.format {
        Format::Json => format!("{value}\n"),
        Format::Text => render_text(&value),
    };
    let sink: &mut dyn Write = if code == 0 { out } else { err };
    let _ = sink.write_all(text.as_bytes());
    code
}

pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
