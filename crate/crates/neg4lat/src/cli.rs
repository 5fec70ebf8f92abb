//! The `neg4lat` command line: JSON lines on stdout, human diagnostics on
//! stderr. Exit codes: 0 on success, 1 when verify-table finds failing rows,
//! 2 on usage or domain errors.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num::{BigInt, BigRational, ToPrimitive};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::lattice::{parse_rational, LatticeClass, RationalClass};
use crate::spheres::{self, RepFlag, SignConvention, TableEntry};
use crate::surgery::{
    self, BlowdownScenario, ClassifyOutcome, InvariantState, Kappa, Pipeline, PipelineEntry,
    PipelineStep, Ruled, UnitCount,
};
use crate::weyl::{self, Move, OrbitStatus};

#[derive(Parser)]
#[command(
    name = "neg4lat",
    version,
    about = "Exact lattice arithmetic and -4-sphere screening for blown-up rational 4-manifolds"
)]
struct Cli {
    /// Pretty-print JSON with this indent width instead of one object per line
    #[arg(long, global = true, value_name = "N")]
    json_indent: Option<usize>,

    /// Bound on the leading coefficient of enumerated classes
    #[arg(long = "max-a", global = true, value_name = "A")]
    max_a: Option<i64>,

    /// |a| cap for bounded orbit searches
    #[arg(long, global = true, value_name = "N")]
    cap: Option<i64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Intersection pairing of two classes (integer or exact rational)
    Pair {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Greedy Cremona descent to the reduced form, with the group word
    Reduce {
        #[arg(allow_hyphen_values = true)]
        class: String,
    },
    /// Bounded orbit-equivalence test between two classes
    #[command(name = "orbit-eq")]
    OrbitEq {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        /// Also accept -y (the global sign is not a group generator)
        #[arg(long = "global-sign")]
        global_sign: bool,
    },
    /// All reduced trivial-normal classes with a given square
    #[command(name = "enum-reduced")]
    EnumReduced {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_negative_numbers = true)]
        square: i64,
    },
    /// All exceptional classes (square -1, canonical pairing -1) up to the bound
    Exceptional {
        #[arg(long)]
        k: usize,
    },
    /// Attainable canonical pairings of the sign assignments of a -4-class
    #[command(name = "value-set")]
    ValueSet {
        #[arg(allow_hyphen_values = true)]
        class: String,
    },
    /// Representability screen for a -4-class
    Screen {
        #[arg(allow_hyphen_values = true)]
        class: String,
        /// Keep unit entries at +1 instead of the forced -1
        #[arg(long = "ones-positive")]
        ones_positive: bool,
    },
    /// Screen every row of the shipped catalog and report orbit relations
    #[command(name = "verify-table")]
    VerifyTable {
        /// Override the built-in catalog with a TSV file
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Exact (K², K·ω) surgery bookkeeping
    Surgery {
        #[command(subcommand)]
        action: SurgeryCmd,
    },
    /// Classify a -4-blow-down scenario
    Classify {
        /// Kodaira dimension of X: -inf, 0, 1 or 2
        #[arg(long, allow_hyphen_values = true)]
        kappa: String,
        /// Unit-intersection exceptional count: a number or `unbounded`
        #[arg(long)]
        nsm: String,
        /// Blow-ups over the minimal model, X = X_m # k
        #[arg(long)]
        k: u64,
        /// The sphere is a triple-point blow-up of an exceptional sphere
        #[arg(long)]
        artificial: bool,
        /// not-ruled (default), rational, or irrational-ruled
        #[arg(long)]
        ruled: Option<String>,
    },
}

#[derive(Subcommand)]
enum SurgeryCmd {
    /// Run a pipeline file and emit the state trace and final Kodaira dimension
    Run { pipeline: PathBuf },
}

struct Emitter {
    indent: Option<usize>,
}

impl Emitter {
    fn emit(&self, v: &Value) {
        match self.indent {
            None => println!("{}", serde_json::to_string(v).expect("serializable")),
            Some(n) => {
                let pad = " ".repeat(n);
                let mut buf = Vec::new();
                let fmt = serde_json::ser::PrettyFormatter::with_indent(pad.as_bytes());
                let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
                serde::Serialize::serialize(v, &mut ser).expect("serializable");
                println!("{}", String::from_utf8(buf).expect("utf8"));
            }
        }
    }
}

fn bigint_json(v: &BigInt) -> Value {
    v.to_i64()
        .map(Value::from)
        .unwrap_or_else(|| Value::String(v.to_string()))
}

fn class_json(x: &LatticeClass) -> Value {
    json!({
        "k": x.k(),
        "a": bigint_json(x.a()),
        "b": x.b().iter().map(bigint_json).collect::<Vec<_>>(),
    })
}

fn json_to_bigint(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::Parse(format!("non-integer number {n}"))),
        Value::String(s) => BigInt::from_str(s).map_err(|e| Error::Parse(format!("{e}"))),
        other => Err(Error::Parse(format!("expected integer, got {other}"))),
    }
}

fn json_to_rational(v: &Value) -> Result<BigRational> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(|i| BigRational::from_integer(BigInt::from(i)))
            .ok_or_else(|| Error::Parse(format!("non-integer number {n}"))),
        Value::String(s) => parse_rational(s),
        other => Err(Error::Parse(format!("expected rational, got {other}"))),
    }
}

/// Accepts the compact text form `a;b1,...,bk` or the JSON object form
/// `{"k": int, "a": int, "b": [int, ...]}`.
pub fn parse_class_arg(s: &str) -> Result<LatticeClass> {
    let t = s.trim();
    if t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
        let k = v
            .get("k")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("class object needs integer `k`".into()))?
            as usize;
        let a = json_to_bigint(
            v.get("a")
                .ok_or_else(|| Error::Parse("class object needs `a`".into()))?,
        )?;
        let b_val = v
            .get("b")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("class object needs array `b`".into()))?;
        let b = b_val.iter().map(json_to_bigint).collect::<Result<Vec<_>>>()?;
        if b.len() != k {
            return Err(Error::Parse(format!(
                "class object has k={k} but {} b-entries",
                b.len()
            )));
        }
        Ok(LatticeClass::new(a, b))
    } else {
        t.parse()
    }
}

fn parse_rational_class_arg(s: &str) -> Result<RationalClass> {
    let t = s.trim();
    if t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
        let k = v
            .get("k")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("class object needs integer `k`".into()))?
            as usize;
        let a = json_to_rational(
            v.get("a")
                .ok_or_else(|| Error::Parse("class object needs `a`".into()))?,
        )?;
        let b_val = v
            .get("b")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("class object needs array `b`".into()))?;
        let b = b_val
            .iter()
            .map(json_to_rational)
            .collect::<Result<Vec<_>>>()?;
        if b.len() != k {
            return Err(Error::Parse(format!(
                "class object has k={k} but {} b-entries",
                b.len()
            )));
        }
        Ok(RationalClass::new(a, b))
    } else {
        t.parse()
    }
}

fn moves_json(word: &[Move]) -> Value {
    Value::Array(word.iter().map(|m| Value::String(m.to_string())).collect())
}

fn rep_str(f: RepFlag) -> &'static str {
    match f {
        RepFlag::NotRepresentable => "N",
        RepFlag::Unknown => "-",
    }
}

/// Entry point used by `main`; returns the process exit code.
pub fn run() -> i32 {
    let args: Vec<std::ffi::OsString> = std::env::args_os().collect();
    run_from(args)
}

pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let emitter = Emitter {
        indent: cli.json_indent,
    };
    match dispatch(&cli, &emitter) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("neg4lat: {e}");
            2
        }
    }
}

fn dispatch(cli: &Cli, out: &Emitter) -> Result<i32> {
    let max_a = cli.max_a.unwrap_or(6);
    match &cli.command {
        Command::Pair { x, y } => {
            match (parse_class_arg(x), parse_class_arg(y)) {
                (Ok(cx), Ok(cy)) => {
                    let p = cx.pair(&cy)?;
                    out.emit(&json!({
                        "op": "pair",
                        "x": class_json(&cx),
                        "y": class_json(&cy),
                        "pair": bigint_json(&p),
                    }));
                }
                _ => {
                    let cx = parse_rational_class_arg(x)?;
                    let cy = parse_rational_class_arg(y)?;
                    let p = cx.pair(&cy)?;
                    out.emit(&json!({
                        "op": "pair",
                        "x": cx.to_compact(),
                        "y": cy.to_compact(),
                        "pair": p.to_string(),
                    }));
                }
            }
            Ok(0)
        }
        Command::Reduce { class } => {
            let x = parse_class_arg(class)?;
            let (reduced, word) = weyl::reduce_with_moves(&x);
            out.emit(&json!({
                "op": "reduce",
                "input": class_json(&x),
                "reduced": class_json(&reduced),
                "word": moves_json(&word),
            }));
            Ok(0)
        }
        Command::OrbitEq { x, y, global_sign } => {
            let cx = parse_class_arg(x)?;
            let cy = parse_class_arg(y)?;
            let default_cap = cx
                .a()
                .to_i64()
                .unwrap_or(i64::MAX / 2)
                .abs()
                .max(cy.a().to_i64().unwrap_or(i64::MAX / 2).abs())
                + 8;
            let cap = cli.cap.unwrap_or(default_cap);
            let verdict = weyl::orbit_equivalent(&cx, &cy, cap, *global_sign)?;
            out.emit(&json!({
                "op": "orbit-eq",
                "x": class_json(&cx),
                "y": class_json(&cy),
                "cap": verdict.bound,
                "global_sign": global_sign,
                "status": match verdict.status {
                    OrbitStatus::Equivalent => "equivalent",
                    OrbitStatus::DistinctWithinBound => "distinct-within-bound",
                },
                "witness": verdict.witness.as_deref().map(moves_json).unwrap_or(Value::Null),
                "explored": verdict.explored,
            }));
            Ok(0)
        }
        Command::EnumReduced { k, square } => {
            for c in weyl::enumerate_reduced(*k, *square, max_a) {
                out.emit(&class_json(&c));
            }
            Ok(0)
        }
        Command::Exceptional { k } => {
            for c in weyl::enumerate_exceptional(*k, max_a) {
                out.emit(&class_json(&c));
            }
            Ok(0)
        }
        Command::ValueSet { class } => {
            let xi = parse_class_arg(class)?;
            let vs = spheres::value_set(&xi)?;
            let witnesses: Vec<Value> = vs
                .witnesses
                .iter()
                .map(|(v, assignment)| {
                    let cls = spheres::witness_class(&xi, assignment).expect("own witness");
                    json!({ "value": bigint_json(v), "class": class_json(&cls) })
                })
                .collect();
            out.emit(&json!({
                "op": "value-set",
                "class": class_json(&xi),
                "values": vs.values.iter().map(bigint_json).collect::<Vec<_>>(),
                "contains_two": vs.contains_two(),
                "witnesses": witnesses,
            }));
            Ok(0)
        }
        Command::Screen {
            class,
            ones_positive,
        } => {
            let xi = parse_class_arg(class)?;
            let convention = if *ones_positive {
                SignConvention::OnesPositive
            } else {
                SignConvention::OnesNegative
            };
            let v = spheres::screen_with(&xi, max_a, convention)?;
            let multiples: Vec<Value> = v
                .multiples
                .iter()
                .map(|(m, e, w)| {
                    json!({
                        "m": bigint_json(m),
                        "e": class_json(e),
                        "witness": class_json(w),
                    })
                })
                .collect();
            out.emit(&json!({
                "op": "screen",
                "class": class_json(&xi),
                "convention": if *ones_positive { "ones-positive" } else { "ones-negative" },
                "max_a": max_a,
                "outcome": v.outcome.as_str(),
                "values": v.values.iter().map(bigint_json).collect::<Vec<_>>(),
                "witnesses_of_two": v.witnesses_of_two.iter().map(class_json).collect::<Vec<_>>(),
                "multiples": multiples,
                "survivors": v.survivors.iter().map(class_json).collect::<Vec<_>>(),
                "nsm_witness": v.nsm_witness.as_ref().map(|(xi_t, e)| json!({
                    "xi_tilde": class_json(xi_t),
                    "e": class_json(e),
                })).unwrap_or(Value::Null),
            }));
            Ok(0)
        }
        Command::VerifyTable { table } => {
            let entries: Vec<TableEntry> = match table {
                Some(path) => spheres::parse_table(&std::fs::read_to_string(path)?)?,
                None => spheres::builtin_table(),
            };
            let report = spheres::verify_table(&entries, max_a);
            for r in &report.rows {
                let mut obj = Map::new();
                obj.insert("row".into(), Value::from(r.index));
                obj.insert("rel_min_k".into(), Value::from(r.entry.rel_min_k));
                obj.insert("class".into(), class_json(&r.entry.xi));
                obj.insert("rep".into(), Value::from(rep_str(r.entry.sympl_rep)));
                obj.insert(
                    "nsm".into(),
                    Value::from(if r.entry.nsm_positive { ">0" } else { "-" }),
                );
                obj.insert("star".into(), Value::from(r.entry.starred));
                obj.insert(
                    "outcome".into(),
                    r.outcome
                        .map(|o| Value::from(o.as_str()))
                        .unwrap_or(Value::Null),
                );
                obj.insert("status".into(), Value::from(r.status.as_str()));
                if !r.detail.is_empty() {
                    obj.insert("detail".into(), Value::from(r.detail.clone()));
                }
                out.emit(&Value::Object(obj));
            }
            for f in &report.findings {
                out.emit(&json!({
                    "finding": "orbit-relation",
                    "rows": [f.rows.0, f.rows.1],
                    "classes": [
                        class_json(&entries[f.rows.0].xi),
                        class_json(&entries[f.rows.1].xi),
                    ],
                    "common_k": f.common_k,
                    "uses_global_sign": f.uses_global_sign,
                    "witness": moves_json(&f.witness),
                }));
            }
            out.emit(&json!({
                "rows": report.rows.len(),
                "passed": report.passed,
                "reviewed": report.reviewed,
                "failed": report.failed,
            }));
            Ok(if report.has_failures() { 1 } else { 0 })
        }
        Command::Surgery { action } => match action {
            SurgeryCmd::Run { pipeline } => {
                let text = std::fs::read_to_string(pipeline)?;
                let p = parse_pipeline(&text)?;
                let trace = surgery::run_pipeline(&p)?;
                for (i, s) in trace.states.iter().enumerate() {
                    out.emit(&json!({
                        "step": i,
                        "label": s.label,
                        "k_sq": bigint_json(&s.k_sq),
                        "k_omega": s.k_omega.to_string(),
                        "minimal": s.minimal,
                    }));
                }
                match &trace.final_kappa {
                    Ok(k) => out.emit(&json!({ "final": true, "kappa": k.to_string() })),
                    Err(note) => {
                        out.emit(&json!({ "final": true, "kappa": Value::Null, "note": note }))
                    }
                }
                Ok(0)
            }
        },
        Command::Classify {
            kappa,
            nsm,
            k,
            artificial,
            ruled,
        } => {
            let scenario = BlowdownScenario {
                kappa_x: Kappa::from_str(kappa)?,
                n_sm: UnitCount::from_str(nsm)?,
                k: *k,
                artificial: *artificial,
                ruled: ruled
                    .as_deref()
                    .map(Ruled::from_str)
                    .transpose()?
                    .unwrap_or(Ruled::NotRuled),
            };
            let outcome = surgery::classify_minus4(&scenario)?;
            match outcome {
                ClassifyOutcome::Classified {
                    kappa_m,
                    structure,
                    rule,
                } => out.emit(&json!({
                    "op": "classify",
                    "kappa_x": kappa,
                    "kappa_m": kappa_m.to_string(),
                    "structure": structure,
                    "rule": rule,
                })),
                ClassifyOutcome::NotCovered { reason, rule } => out.emit(&json!({
                    "op": "classify",
                    "kappa_x": kappa,
                    "kappa_m": Value::Null,
                    "not_covered": reason,
                    "rule": rule,
                })),
            }
            Ok(0)
        }
    }
}

/// Pipeline files are a JSON list whose first entry is the start state
/// `{"op": "start", "k_sq": ..., "k_omega": "...", "minimal": ...}` followed
/// by steps; the object form `{"start": {...}, "steps": [...]}` is also
/// accepted. Rational parameters are strings like `"1/2"`.
pub fn parse_pipeline(text: &str) -> Result<Pipeline> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let (start_val, step_vals): (Value, Vec<Value>) = match v {
        Value::Array(items) => {
            let mut it = items.into_iter();
            let first = it
                .next()
                .ok_or_else(|| Error::Parse("empty pipeline".into()))?;
            if first.get("op").and_then(Value::as_str) != Some("start") {
                return Err(Error::Parse(
                    "pipeline list must begin with an {\"op\": \"start\", ...} entry".into(),
                ));
            }
            (first, it.collect())
        }
        Value::Object(mut obj) => {
            let start = obj
                .remove("start")
                .ok_or_else(|| Error::Parse("pipeline object needs `start`".into()))?;
            let steps = match obj.remove("steps") {
                Some(Value::Array(a)) => a,
                _ => return Err(Error::Parse("pipeline object needs array `steps`".into())),
            };
            (start, steps)
        }
        _ => return Err(Error::Parse("pipeline must be a JSON list or object".into())),
    };

    let start = InvariantState::new(
        json_to_bigint(
            start_val
                .get("k_sq")
                .ok_or_else(|| Error::Parse("start needs `k_sq`".into()))?,
        )?,
        json_to_rational(
            start_val
                .get("k_omega")
                .ok_or_else(|| Error::Parse("start needs `k_omega`".into()))?,
        )?,
        start_val
            .get("minimal")
            .and_then(Value::as_bool)
            .unwrap_or(false),
        start_val
            .get("label")
            .and_then(Value::as_str)
            .unwrap_or("start"),
    );

    let mut steps = Vec::new();
    for (i, sv) in step_vals.iter().enumerate() {
        let op = sv
            .get("op")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse(format!("step {i} lacks `op`")))?;
        let rational_field = |name: &str| -> Result<BigRational> {
            json_to_rational(
                sv.get(name)
                    .ok_or_else(|| Error::Parse(format!("step {i} ({op}) needs `{name}`")))?,
            )
        };
        let int_field = |name: &str| -> Result<BigInt> {
            json_to_bigint(
                sv.get(name)
                    .ok_or_else(|| Error::Parse(format!("step {i} ({op}) needs `{name}`")))?,
            )
        };
        let step = match op {
            "blow_up" => PipelineStep::BlowUp {
                area: rational_field("area")?,
            },
            "blow_down" => PipelineStep::BlowDown {
                area: rational_field("area")?,
            },
            "minus4" => PipelineStep::Minus4 {
                area: rational_field("area")?,
            },
            "fiber_sum" => PipelineStep::FiberSum {
                kw_y: rational_field("kw_y")?,
                area_x: rational_field("area_x")?,
                area_y: rational_field("area_y")?,
                ksq_y: int_field("ksq_y")?,
                kv_x: int_field("kv_x")?,
                vsq_x: int_field("vsq_x")?,
                kv_y: int_field("kv_y")?,
                vsq_y: int_field("vsq_y")?,
            },
            other => return Err(Error::Parse(format!("step {i}: unknown op `{other}`"))),
        };
        steps.push(PipelineEntry {
            step,
            minimal: sv.get("minimal").and_then(Value::as_bool),
            label: sv
                .get("label")
                .and_then(Value::as_str)
                .map(|s| s.to_string()),
        });
    }
    Ok(Pipeline { start, steps })
}
