//! Replayable equivalence witnesses.
//!
//! ```text
//! sigma=1 2 3 4 5 6 7
//! a=2 2 1 1 1 1 1
//! h=1
//! ```
//!
//! `sigma` is 1-based and lists `σ(1), ..., σ(n)`; `a` lists the scalings by
//! input coordinate. `h=` and `d=` are optional claims checked by [`verify`].

use std::fmt::Write;

use serde::Serialize;

use crate::code::{LinearCode, MonomialTransform};
use crate::codefile::{content_lines, parse_list};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub transform: MonomialTransform,
    pub claimed_h: Option<usize>,
    pub claimed_d: Option<usize>,
}

impl Witness {
    pub fn new(transform: MonomialTransform) -> Self {
        Self {
            transform,
            claimed_h: None,
            claimed_d: None,
        }
    }

    pub fn with_claims(mut self, h: Option<usize>, d: Option<usize>) -> Self {
        self.claimed_h = h;
        self.claimed_d = d;
        self
    }
}

/// The `sigma=` and `a=` lines for a transform.
pub fn format_transform(t: &MonomialTransform) -> String {
    let sigma: Vec<String> = t.sigma().iter().map(|s| (s + 1).to_string()).collect();
    let a: Vec<String> = t.scale().iter().map(|v| v.to_string()).collect();
    format!("sigma={}\na={}\n", sigma.join(" "), a.join(" "))
}

pub fn format_witness(w: &Witness) -> String {
    let mut out = format_transform(&w.transform);
    if let Some(h) = w.claimed_h {
        writeln!(out, "h={h}").unwrap();
    }
    if let Some(d) = w.claimed_d {
        writeln!(out, "d={d}").unwrap();
    }
    out
}

pub fn parse_witness(text: &str) -> Result<Witness> {
    let lines = content_lines(text);
    let mut sigma = None;
    let mut scale = None;
    let mut claimed_h = None;
    let mut claimed_d = None;
    for line in &lines {
        let key = line.text.trim_start().split('=').next().unwrap_or("");
        match key {
            "sigma" => {
                let values = parse_list(line, "sigma")?;
                let mut zero_based = Vec::with_capacity(values.len());
                for v in values {
                    if v == 0 {
                        return Err(Error::parse(line.number, 1, "sigma entries are 1-based"));
                    }
                    zero_based.push(v as usize - 1);
                }
                sigma = Some((line.number, zero_based));
            }
            "a" => {
                let values = parse_list(line, "a")?;
                scale = Some(values.into_iter().map(|v| v as u32).collect::<Vec<_>>());
            }
            "h" | "d" => {
                let values = parse_list(line, key)?;
                let [v] = values[..] else {
                    return Err(Error::parse(
                        line.number,
                        1,
                        format!("{key}= takes one value"),
                    ));
                };
                if key == "h" {
                    claimed_h = Some(v as usize);
                } else {
                    claimed_d = Some(v as usize);
                }
            }
            other => {
                return Err(Error::parse(
                    line.number,
                    1,
                    format!("unknown witness key {other:?}"),
                ));
            }
        }
    }
    let last = text.lines().count().max(1);
    let (line, sigma) = sigma.ok_or_else(|| Error::parse(last, 1, "missing sigma= line"))?;
    let scale = scale.ok_or_else(|| Error::parse(last, 1, "missing a= line"))?;
    let transform =
        MonomialTransform::new(sigma, scale).map_err(|e| Error::parse(line, 1, e.to_string()))?;
    Ok(Witness {
        transform,
        claimed_h,
        claimed_d,
    })
}

/// Outcome of replaying a witness against a code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub n: usize,
    pub k: usize,
    pub h: usize,
    /// Brute-force hull dimension when within budget.
    pub h_oracle: Option<usize>,
    pub d: Option<usize>,
    pub claimed_h: Option<usize>,
    pub claimed_d: Option<usize>,
    pub ok: bool,
}

/// Applies the witness to `code` and re-checks every claimed quantity.
pub fn verify(code: &LinearCode, witness: &Witness, budget: u128) -> Result<Verification> {
    if witness.transform.len() != code.n() {
        return Err(Error::DimensionMismatch(format!(
            "witness of length {} for a code of length {}",
            witness.transform.len(),
            code.n()
        )));
    }
    if let Some(&bad) = witness
        .transform
        .scale()
        .iter()
        .find(|&&a| !code.field().contains(a))
    {
        return Err(Error::ElementOutOfRange {
            value: bad,
            q: code.field().q(),
        });
    }
    let out = code.apply(&witness.transform)?;
    let h = out.hull_dimension();
    let h_oracle = out.hull_oracle(budget).ok();
    let d = match witness.claimed_d {
        Some(_) => Some(out.min_distance(budget)?),
        None => None,
    };
    let ok = h_oracle.is_none_or(|o| o == h)
        && witness.claimed_h.is_none_or(|c| c == h)
        && witness.claimed_d.is_none_or(|c| Some(c) == d);
    Ok(Verification {
        n: out.n(),
        k: out.k(),
        h,
        h_oracle,
        d,
        claimed_h: witness.claimed_h,
        claimed_d: witness.claimed_d,
        ok,
    })
}
