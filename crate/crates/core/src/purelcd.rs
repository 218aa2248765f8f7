//! Pure-LCD decisions, the `[I_k : I_k]` family, and the GF(2^t) scan.
//!
//! The Gram matrix of `σ(C_a)` is `G · diag(a ∘ a) · Gᵀ` (permutations do not
//! change it), so a code is pure LCD exactly when that matrix is nonsingular
//! for every vector `u` of nonzero squares. The scan enumerates those `u`
//! only.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::code::{LinearCode, MonomialTransform};
use crate::codefile::format_code;
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::hulltune::{classify_char2, Char2Hypothesis};
use crate::matgf::Matrix;
use crate::witness::format_transform;

pub const DEFAULT_SCAN_BUDGET: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pure,
    NotPure,
}

/// A square-class vector whose scaled code has a nontrivial hull.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PurityWitness {
    pub u: Vec<Elem>,
    /// Scalings with `a ∘ a = u`.
    pub a: Vec<Elem>,
    pub hull_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PurityReport {
    pub verdict: Verdict,
    /// Square-class vectors examined, including the failing one.
    pub checked: u64,
    pub witness: Option<PurityWitness>,
}

impl PurityReport {
    pub fn is_pure(&self) -> bool {
        self.verdict == Verdict::Pure
    }
}

/// `(#nonzero squares)^n`, the number of classes a full scan visits.
pub fn class_count(field: &Field, n: usize) -> u128 {
    (field.nonzero_squares().len() as u128).saturating_pow(n as u32)
}

/// Scans every `u ∈ (nonzero squares)^n` in lexicographic order and stops at
/// the first singular Gram matrix.
pub fn is_pure_lcd(code: &LinearCode, budget: u128) -> Result<PurityReport> {
    let f = code.field();
    let required = class_count(f, code.n());
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let squares = f.nonzero_squares();
    let (k, n) = (code.k(), code.n());
    let g = code.generator();

    // outer[t] = g_t g_tᵀ for column t of G
    let outer: Vec<Vec<Elem>> = (0..n)
        .map(|t| {
            let col = g.column(t);
            let mut o = Vec::with_capacity(k * k);
            for &x in &col {
                for &y in &col {
                    o.push(f.mul(x, y));
                }
            }
            o
        })
        .collect();
    // step[t][j] = (s_{j+1} - s_j) · outer[t], wrapping to s_0
    let s = squares.len();
    let steps: Vec<Vec<Vec<Elem>>> = (0..n)
        .map(|t| {
            (0..s)
                .map(|j| {
                    let delta = f.sub(squares[(j + 1) % s], squares[j]);
                    outer[t].iter().map(|&o| f.mul(delta, o)).collect()
                })
                .collect()
        })
        .collect();

    let mut digits = vec![0usize; n];
    let mut gram = vec![0; k * k];
    for o in &outer {
        for (g, &x) in gram.iter_mut().zip(o) {
            *g = f.add(*g, f.mul(squares[0], x));
        }
    }
    let mut checked = 0u64;
    loop {
        checked += 1;
        let m = Matrix::new(f, k, k, gram.clone())?;
        if m.det()? == 0 {
            let u: Vec<Elem> = digits.iter().map(|&d| squares[d]).collect();
            let a = u.iter().map(|&x| f.sqrt(x)).collect::<Result<Vec<_>>>()?;
            return Ok(PurityReport {
                verdict: Verdict::NotPure,
                checked,
                witness: Some(PurityWitness {
                    hull_dim: k - m.rank(),
                    u,
                    a,
                }),
            });
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(PurityReport {
                    verdict: Verdict::Pure,
                    checked,
                    witness: None,
                });
            }
            pos -= 1;
            for (g, &x) in gram.iter_mut().zip(&steps[pos][digits[pos]]) {
                *g = f.add(*g, x);
            }
            digits[pos] = (digits[pos] + 1) % s;
            if digits[pos] != 0 {
                break;
            }
        }
    }
}

/// The `[2k, k]` code generated by `[I_k : I_k]`, pure LCD whenever −1 is not
/// a square in the field.
pub fn pure_family(field: &Field, k: usize) -> Result<LinearCode> {
    if k == 0 {
        return Err(Error::ZeroCode);
    }
    if field.is_square(field.neg(1)) {
        return Err(Error::MinusOneIsSquare { q: field.q() });
    }
    let rows: Vec<Vec<Elem>> = (0..k)
        .map(|i| {
            let mut r = vec![0; 2 * k];
            r[i] = 1;
            r[k + i] = 1;
            r
        })
        .collect();
    let code = LinearCode::from_rows(field, &rows)?;
    debug_assert!(code.is_lcd());
    Ok(code)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    /// Every standard-form generator `[I_k : P]`.
    Exhaustive,
    /// `samples` random standard-form generators drawn from `seed`.
    Sampled { samples: usize, seed: u64 },
}

/// A code worth archiving from a scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanSpecimen {
    /// `pure_lcd` or `escapes_char2_conditions`.
    pub tag: String,
    pub index: u64,
    /// Full code file.
    pub code: String,
    /// Witness lines (`sigma=`, `a=`, `h=`) when the code is not pure.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub mode: String,
    pub seed: Option<u64>,
    pub codes_scanned: u64,
    pub classes_per_code: u128,
    pub pure_count: u64,
    pub not_pure_count: u64,
    pub non_lcd_count: u64,
    /// Not-pure witnesses whose scaled Gram matrix re-checked as singular.
    pub witnesses_verified: u64,
    pub escape_count: u64,
    pub specimens: Vec<ScanSpecimen>,
}

fn require_char2_extension(field: &Field) -> Result<()> {
    if !field.is_char2() || field.m() < 2 {
        return Err(Error::WrongCharacteristic(format!(
            "scan needs GF(2^t) with t > 1, got {field}"
        )));
    }
    Ok(())
}

fn standard_form_code(field: &Field, k: usize, n: usize, p: &[Elem]) -> Result<LinearCode> {
    let r = n - k;
    let rows: Vec<Vec<Elem>> = (0..k)
        .map(|i| {
            let mut row = vec![0; n];
            row[i] = 1;
            row[k..].copy_from_slice(&p[i * r..(i + 1) * r]);
            row
        })
        .collect();
    LinearCode::from_rows(field, &rows)
}

/// Runs [`is_pure_lcd`] on each code and tallies the results.
pub fn scan_codes<I>(
    field: &Field,
    n: usize,
    k: usize,
    codes: I,
    budget_per_code: u128,
) -> Result<ScanReport>
where
    I: IntoIterator<Item = LinearCode>,
{
    let mut report = ScanReport {
        q: field.q(),
        n,
        k,
        mode: "list".into(),
        seed: None,
        codes_scanned: 0,
        classes_per_code: class_count(field, n),
        pure_count: 0,
        not_pure_count: 0,
        non_lcd_count: 0,
        witnesses_verified: 0,
        escape_count: 0,
        specimens: Vec::new(),
    };
    for (index, code) in codes.into_iter().enumerate() {
        let index = index as u64;
        report.codes_scanned += 1;
        let lcd = code.is_lcd();
        if !lcd {
            report.non_lcd_count += 1;
        }
        let purity = is_pure_lcd(&code, budget_per_code)?;
        let witness_text = match &purity.witness {
            Some(w) => {
                let singular = code.generator().gram_scaled(&w.u)?.det()? == 0;
                let replayed = code.apply(&MonomialTransform::scaling(w.a.clone())?)?;
                if singular && replayed.hull_dimension() == w.hull_dim && w.hull_dim >= 1 {
                    report.witnesses_verified += 1;
                }
                let t = MonomialTransform::scaling(w.a.clone())?;
                Some(format!("{}h={}\n", format_transform(&t), w.hull_dim))
            }
            None => None,
        };
        if purity.is_pure() {
            report.pure_count += 1;
            report.specimens.push(ScanSpecimen {
                tag: "pure_lcd".into(),
                index,
                code: format_code(&code),
                witness: None,
            });
        } else {
            report.not_pure_count += 1;
        }
        if lcd {
            let (std, _) = code.standard_form();
            if classify_char2(&std.gram()) == Char2Hypothesis::Escapes {
                report.escape_count += 1;
                report.specimens.push(ScanSpecimen {
                    tag: "escapes_char2_conditions".into(),
                    index,
                    code: format_code(&code),
                    witness: witness_text,
                });
            }
        }
    }
    Ok(report)
}

/// Searches GF(2^t) standard-form `[n, k]` codes for pure LCD codes.
///
/// A pure find is archived as a specimen, never treated as an error.
pub fn conjecture_scan(
    field: &Field,
    n: usize,
    k: usize,
    mode: ScanMode,
    budget: u128,
) -> Result<ScanReport> {
    require_char2_extension(field)?;
    if k == 0 || k >= n {
        return Err(Error::DimensionMismatch(format!(
            "need 1 <= k < n, got n={n} k={k}"
        )));
    }
    let q = field.q();
    let entries = k * (n - k);
    let classes = class_count(field, n);
    let codes = match mode {
        ScanMode::Exhaustive => (q as u128).saturating_pow(entries as u32),
        ScanMode::Sampled { samples, .. } => samples as u128,
    };
    let required = codes.saturating_mul(classes);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }

    let mut report = match mode {
        ScanMode::Exhaustive => {
            let iter = (0..codes as u64).map(|idx| {
                // first entry is the most significant digit
                let mut p = vec![0; entries];
                let mut v = idx;
                for slot in p.iter_mut().rev() {
                    *slot = (v % q as u64) as Elem;
                    v /= q as u64;
                }
                standard_form_code(field, k, n, &p).expect("standard form has full rank")
            });
            scan_codes(field, n, k, iter, classes)?
        }
        ScanMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let iter = (0..samples).map(move |_| {
                let p: Vec<Elem> = (0..entries).map(|_| rng.random_range(0..q)).collect();
                standard_form_code(field, k, n, &p).expect("standard form has full rank")
            });
            scan_codes(field, n, k, iter, classes)?
        }
    };
    match mode {
        ScanMode::Exhaustive => report.mode = "exhaustive".into(),
        ScanMode::Sampled { seed, .. } => {
            report.mode = "sampled".into();
            report.seed = Some(seed);
        }
    }
    Ok(report)
}
