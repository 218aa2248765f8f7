use std::fmt::Write;
use std::path::Path;

use hullforge::codefile::{format_code, parse_code};
use hullforge::hulltune::{
    char2_break_pure, eaqecc_params, hull_chain, make_one_dim_hull, reduce_hull_once, Char2Case,
};
use hullforge::purelcd::{conjecture_scan, is_pure_lcd, pure_family};
use hullforge::witness::{format_witness, parse_witness};
use hullforge::{
    ChainOptions, Error, Field, LinearCode, Matrix, MonomialTransform, ScanMode, Witness,
};
use serde_json::{json, Value};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum Failure {
    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Lib(#[from] Error),
}

impl Failure {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        Failure::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(Error::BudgetExceeded { .. }) => 3,
            Failure::Lib(Error::NoWitness(_) | Error::SearchExhausted { .. }) => 1,
            _ => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// The command ran but produced no certificate, or a witness failed to verify.
    NoWitness,
}

pub struct Output {
    pub human: String,
    pub structured: Value,
    /// `(file name, contents)` written under `--out`.
    pub files: Vec<(String, String)>,
    pub status: Status,
}

pub struct Budgets {
    pub distance: u128,
    pub scan: u128,
    pub trials: usize,
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

fn with_path(path: &Path, e: Error) -> Failure {
    match e {
        Error::Parse {
            line,
            column,
            message,
        } => Failure::Parse {
            path: path.display().to_string(),
            line,
            column,
            message,
        },
        other => Failure::Lib(other),
    }
}

fn load_code(path: &Path) -> Result<LinearCode, Failure> {
    parse_code(&read(path)?).map_err(|e| with_path(path, e))
}

fn field_json(f: &Field) -> Value {
    json!({ "q": f.q(), "p": f.p(), "m": f.m(), "modulus": f.modulus() })
}

fn rows_json(m: &Matrix) -> Value {
    json!(m.row_vecs())
}

fn transform_json(t: &MonomialTransform) -> Value {
    let sigma: Vec<usize> = t.sigma().iter().map(|s| s + 1).collect();
    json!({ "sigma": sigma, "a": t.scale() })
}

fn envelope(command: &str, body: Value) -> Value {
    let mut out = json!({ "schema_version": SCHEMA_VERSION, "command": command });
    if let (Value::Object(o), Value::Object(b)) = (&mut out, body) {
        o.extend(b);
    }
    out
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(|| "?".into(), |v| v.to_string())
}

/// Witness text for a transform, with `h=` and `d=` claims.
fn witness_text(t: &MonomialTransform, h: usize, d: Option<usize>) -> String {
    format_witness(&Witness::new(t.clone()).with_claims(Some(h), d))
}

fn header(code: &LinearCode) -> String {
    format!("[{}, {}] code over {}", code.n(), code.k(), code.field())
}

pub fn hull(path: &Path, budgets: &Budgets) -> Result<Output, Failure> {
    let code = load_code(path)?;
    let report = code.hull();
    let oracle = code.hull_oracle(budgets.distance).ok();
    let (lcd, so, sd) = (
        report.h == 0,
        code.is_self_orthogonal(),
        code.is_self_dual(),
    );

    let mut human = String::new();
    writeln!(human, "{}", header(&code)).unwrap();
    writeln!(human, "h = {}", report.h).unwrap();
    if let Some(o) = oracle {
        writeln!(human, "h (enumeration) = {o}").unwrap();
    }
    writeln!(human, "rank(G G^T) = {}", report.rank_gram).unwrap();
    writeln!(human, "rank(H H^T) = {}", report.rank_dual_gram).unwrap();
    writeln!(
        human,
        "LCD: {}  self-orthogonal: {}  self-dual: {}",
        yes_no(lcd),
        yes_no(so),
        yes_no(sd)
    )
    .unwrap();
    if report.h > 0 {
        writeln!(human, "hull basis:\n{}", report.hull_basis).unwrap();
    }

    let structured = envelope(
        "hull",
        json!({
            "field": field_json(code.field()),
            "n": code.n(),
            "k": code.k(),
            "h": report.h,
            "h_oracle": oracle,
            "rank_gram": report.rank_gram,
            "rank_dual_gram": report.rank_dual_gram,
            "lcd": lcd,
            "self_orthogonal": so,
            "self_dual": sd,
            "hull_basis": rows_json(&report.hull_basis),
        }),
    );
    Ok(Output {
        human,
        structured,
        files: Vec::new(),
        status: Status::Ok,
    })
}

pub fn reduce(path: &Path, seed: u64, budgets: &Budgets) -> Result<Output, Failure> {
    let code = load_code(path)?;
    let h = code.hull_dimension();
    let (out, t) = reduce_hull_once(&code, seed, budgets.trials)?;
    let h_out = out.hull_dimension();
    let d = out.min_distance(budgets.distance).ok();
    let witness = witness_text(&t, h_out, d);
    let code_text = format_code(&out);

    let human = format!(
        "{}\nhull dimension {h} -> {h_out}, d = {}\nwitness:\n{witness}code:\n{code_text}",
        header(&code),
        opt(d)
    );
    let structured = envelope(
        "reduce",
        json!({
            "seed": seed,
            "field": field_json(code.field()),
            "n": code.n(),
            "k": code.k(),
            "h_in": h,
            "h_out": h_out,
            "d": d,
            "transform": transform_json(&t),
            "generator": rows_json(out.generator()),
        }),
    );
    Ok(Output {
        human,
        structured,
        files: vec![
            ("reduced.code".into(), code_text),
            ("reduced.witness".into(), witness),
        ],
        status: Status::Ok,
    })
}

pub fn chain(path: &Path, seed: u64, budgets: &Budgets) -> Result<Output, Failure> {
    let code = load_code(path)?;
    let opts = ChainOptions {
        max_trials: budgets.trials,
        distance_budget: budgets.distance,
    };
    let report = hull_chain(&code, seed, opts)?;

    let mut human = format!("{}\n", header(&code));
    writeln!(
        human,
        "{:>3} {:>3} {:>3} {:>3}  sigma | a",
        "h", "n", "k", "d"
    )
    .unwrap();
    let mut files = Vec::new();
    let mut steps = Vec::new();
    for e in &report.entries {
        let t = &e.transform;
        let sigma: Vec<usize> = t.sigma().iter().map(|s| s + 1).collect();
        writeln!(
            human,
            "{:>3} {:>3} {:>3} {:>3}  {} | {}",
            e.hull_dim,
            e.n,
            e.k,
            opt(e.d),
            join(&sigma),
            join(t.scale())
        )
        .unwrap();
        files.push((format!("chain_h{}.code", e.hull_dim), format_code(&e.code)));
        files.push((
            format!("chain_h{}.witness", e.hull_dim),
            witness_text(t, e.hull_dim, e.d),
        ));
        steps.push(json!({
            "h": e.hull_dim,
            "n": e.n,
            "k": e.k,
            "d": e.d,
            "transform": transform_json(t),
            "generator": rows_json(e.code.generator()),
        }));
    }
    if !report.distances_verified() {
        writeln!(
            human,
            "distance not verified: enumeration exceeds --budget-distance"
        )
        .unwrap();
    }
    let structured = envelope(
        "chain",
        json!({
            "seed": seed,
            "field": field_json(code.field()),
            "dims": report.dims(),
            "distance_verified": report.distances_verified(),
            "steps": steps,
        }),
    );
    Ok(Output {
        human,
        structured,
        files,
        status: Status::Ok,
    })
}

pub fn onedim(path: &Path, seed: u64, budgets: &Budgets) -> Result<Output, Failure> {
    let code = load_code(path)?;
    let (out, t, route) = if code.field().is_char2() {
        let r = char2_break_pure(&code, seed, budgets.trials)?;
        let route = serde_json::to_value(&r.case).expect("case serializes");
        let text = match &r.case {
            Char2Case::NotLcd { initial_hull } => {
                format!("reduced from hull dimension {initial_hull}")
            }
            Char2Case::SingleIndex { index } => format!("single index {}", index + 1),
            Char2Case::Support {
                support,
                closed_form,
                ..
            } => {
                let s: Vec<usize> = support.iter().map(|i| i + 1).collect();
                let how = if *closed_form {
                    "closed form"
                } else {
                    "search"
                };
                format!("support {{{}}} ({how})", join(&s))
            }
        };
        (r.code, r.transform, (route, text))
    } else {
        let r = make_one_dim_hull(&code)?;
        let route =
            json!({ "case": "single_index", "index": r.index + 1, "coordinate": r.coordinate + 1 });
        let text = format!("index {} (coordinate {})", r.index + 1, r.coordinate + 1);
        (r.code, r.transform, (route, text))
    };
    let h = out.hull_dimension();
    let d = out.min_distance(budgets.distance).ok();
    let witness = witness_text(&t, h, d);
    let code_text = format_code(&out);

    let human = format!(
        "{}\nhull dimension {} -> {h} via {}, d = {}\nwitness:\n{witness}code:\n{code_text}",
        header(&code),
        code.hull_dimension(),
        route.1,
        opt(d)
    );
    let structured = envelope(
        "onedim",
        json!({
            "seed": seed,
            "field": field_json(code.field()),
            "n": code.n(),
            "k": code.k(),
            "h_in": code.hull_dimension(),
            "h_out": h,
            "d": d,
            "route": route.0,
            "transform": transform_json(&t),
            "generator": rows_json(out.generator()),
        }),
    );
    Ok(Output {
        human,
        structured,
        files: vec![
            ("onedim.code".into(), code_text),
            ("onedim.witness".into(), witness),
        ],
        status: Status::Ok,
    })
}

pub fn purelcd(path: &Path, budgets: &Budgets) -> Result<Output, Failure> {
    let code = load_code(path)?;
    let report = is_pure_lcd(&code, budgets.scan)?;
    let lcd = code.is_lcd();
    let mut human = format!("{}\nLCD: {}\n", header(&code), yes_no(lcd));
    let mut files = Vec::new();
    match &report.witness {
        None => writeln!(
            human,
            "pure LCD: yes ({} square classes checked)",
            report.checked
        )
        .unwrap(),
        Some(w) => {
            let t = MonomialTransform::scaling(w.a.clone())?;
            let witness = witness_text(&t, w.hull_dim, None);
            writeln!(
                human,
                "pure LCD: no (class {} of the scan)\nu = {}\nwitness:\n{witness}",
                report.checked,
                join(&w.u)
            )
            .unwrap();
            files.push(("not_pure.witness".into(), witness));
        }
    }
    let structured = envelope(
        "purelcd",
        json!({
            "field": field_json(code.field()),
            "n": code.n(),
            "k": code.k(),
            "lcd": lcd,
            "verdict": report.verdict,
            "checked": report.checked,
            "witness": report.witness,
        }),
    );
    Ok(Output {
        human,
        structured,
        files,
        status: Status::Ok,
    })
}

pub fn family(q: u32, k: usize, budgets: &Budgets) -> Result<Output, Failure> {
    let field = Field::from_order(q)?;
    let code = pure_family(&field, k)?;
    let report = is_pure_lcd(&code, budgets.scan)?;
    let code_text = format_code(&code);
    let human = format!(
        "{}\nLCD: {}\npure LCD: {} ({} square classes checked)\ncode:\n{code_text}",
        header(&code),
        yes_no(code.is_lcd()),
        yes_no(report.is_pure()),
        report.checked
    );
    let structured = envelope(
        "family",
        json!({
            "field": field_json(&field),
            "n": code.n(),
            "k": code.k(),
            "lcd": code.is_lcd(),
            "verdict": report.verdict,
            "checked": report.checked,
            "generator": rows_json(code.generator()),
        }),
    );
    let status = if report.is_pure() {
        Status::Ok
    } else {
        Status::NoWitness
    };
    Ok(Output {
        human,
        structured,
        files: vec![("family.code".into(), code_text)],
        status,
    })
}

pub fn scan2t(
    q: u32,
    n: usize,
    k: usize,
    mode: ScanMode,
    budgets: &Budgets,
) -> Result<Output, Failure> {
    let field = Field::from_order(q)?;
    let report = conjecture_scan(&field, n, k, mode, budgets.scan)?;
    let mut human = String::new();
    writeln!(
        human,
        "standard-form [{n}, {k}] codes over {field}, {} mode",
        report.mode
    )
    .unwrap();
    writeln!(human, "codes scanned:       {}", report.codes_scanned).unwrap();
    writeln!(human, "classes per code:    {}", report.classes_per_code).unwrap();
    writeln!(human, "pure LCD:            {}", report.pure_count).unwrap();
    writeln!(human, "not pure:            {}", report.not_pure_count).unwrap();
    writeln!(human, "  of which non-LCD:  {}", report.non_lcd_count).unwrap();
    writeln!(human, "witnesses verified:  {}", report.witnesses_verified).unwrap();
    writeln!(
        human,
        "LCD outside both char-2 conditions: {}",
        report.escape_count
    )
    .unwrap();

    let mut files = Vec::new();
    for s in &report.specimens {
        let stem = format!("specimen_{}_{}", s.index, s.tag);
        files.push((format!("{stem}.code"), s.code.clone()));
        if let Some(w) = &s.witness {
            files.push((format!("{stem}.witness"), w.clone()));
        }
    }
    let mut structured = serde_json::to_value(&report).expect("report serializes");
    structured["field"] = field_json(&field);
    Ok(Output {
        human,
        structured: envelope("scan2t", structured),
        files,
        status: Status::Ok,
    })
}

pub fn eaqecc(path: &Path, l: usize, budgets: &Budgets) -> Result<Output, Failure> {
    let code = load_code(path)?;
    let p = eaqecc_params(&code, l, None, budgets.distance)?;
    let human = format!(
        "{}, hull dimension {}\n{p}\nMDS: {}\n",
        header(&code),
        code.hull_dimension(),
        yes_no(p.mds)
    );
    let structured = envelope(
        "eaqecc",
        json!({
            "field": field_json(code.field()),
            "h": code.hull_dimension(),
            "params": p,
            "display": p.to_string(),
        }),
    );
    Ok(Output {
        human,
        structured,
        files: Vec::new(),
        status: Status::Ok,
    })
}

pub fn verify(code_path: &Path, witness_path: &Path, budgets: &Budgets) -> Result<Output, Failure> {
    let code = load_code(code_path)?;
    let witness = parse_witness(&read(witness_path)?).map_err(|e| with_path(witness_path, e))?;
    let v = hullforge::witness::verify(&code, &witness, budgets.distance)?;

    let mut human = format!("{}\n", header(&code));
    let claim = |c: Option<usize>| c.map_or_else(|| "unclaimed".into(), |c| format!("claimed {c}"));
    writeln!(human, "h = {} ({})", v.h, claim(v.claimed_h)).unwrap();
    if let Some(o) = v.h_oracle {
        writeln!(human, "h (enumeration) = {o}").unwrap();
    }
    if let Some(d) = v.d {
        writeln!(human, "d = {d} ({})", claim(v.claimed_d)).unwrap();
    }
    writeln!(human, "{}", if v.ok { "verified" } else { "MISMATCH" }).unwrap();

    let structured = envelope(
        "verify",
        serde_json::to_value(&v).expect("verification serializes"),
    );
    Ok(Output {
        human,
        structured,
        files: Vec::new(),
        status: if v.ok { Status::Ok } else { Status::NoWitness },
    })
}
