//! Hull-dimension engineering by monomial equivalence.
//!
//! Every construction here returns the transformed code together with a
//! [`MonomialTransform`] witness relative to the input code, so results can
//! be replayed with [`LinearCode::apply`] and re-checked independently.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::code::{LinearCode, MonomialTransform};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::matgf::Matrix;

/// Random scalings tried by [`find_lcd_scaling`] before the deterministic sweep.
pub const DEFAULT_MAX_TRIALS: usize = 64;

/// Cap on the exhaustive fallback of the characteristic-2 support search.
const SUPPORT_SEARCH_CAP: u64 = 1_000_000;

fn require_large_field(field: &Field) -> Result<()> {
    if field.q() <= 3 {
        return Err(Error::SmallFieldUnsupported { q: field.q() });
    }
    Ok(())
}

fn squares(field: &Field, a: &[Elem]) -> Vec<Elem> {
    a.iter().map(|&x| field.mul(x, x)).collect()
}

/// Finds nonzero scalings `a` such that `C_a` is LCD (requires q > 3).
///
/// Seeded random draws come first; if none succeeds, a sweep over the
/// information set fixes one diagonal entry of the Gram matrix at a time so
/// that every leading principal minor is nonzero.
pub fn find_lcd_scaling(
    code: &LinearCode,
    seed: u64,
    max_trials: usize,
) -> Result<MonomialTransform> {
    let f = code.field();
    require_large_field(f)?;
    let n = code.n();
    if code.is_lcd() {
        return Ok(MonomialTransform::identity(n));
    }
    let g = code.generator();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..max_trials {
        let a: Vec<Elem> = (0..n).map(|_| rng.random_range(1..f.q())).collect();
        if g.gram_scaled(&squares(f, &a))?.det()? != 0 {
            return MonomialTransform::scaling(a);
        }
    }

    // The stored generator is in RREF, so scaling pivot column i only moves
    // the (i, i) entry of the Gram matrix.
    let pivots = code.information_set();
    let k = code.k();
    let mut a = vec![1; n];
    for (i, &col) in pivots.iter().enumerate() {
        let trailing: Vec<usize> = (i + 1..k).collect();
        let chosen = f.nonzero().find(|&s| {
            a[col] = s;
            let gram = g.gram_scaled(&squares(f, &a)).expect("length n");
            gram.det_minor_complement(&trailing)
                .expect("indices in range")
                != 0
        });
        if chosen.is_none() {
            return Err(Error::SearchExhausted { trials: max_trials });
        }
    }
    if g.gram_scaled(&squares(f, &a))?.det()? == 0 {
        return Err(Error::SearchExhausted { trials: max_trials });
    }
    MonomialTransform::scaling(a)
}

/// Lowers the hull dimension by exactly one.
///
/// Walks from the all-ones scaling toward an LCD scaling one coordinate at a
/// time; each step is a rank-one update of the Gram matrix, so the hull
/// dimension moves by at most one and must pass through `h − 1`.
pub fn reduce_hull_once(
    code: &LinearCode,
    seed: u64,
    max_trials: usize,
) -> Result<(LinearCode, MonomialTransform)> {
    let f = code.field();
    require_large_field(f)?;
    let h = code.hull_dimension();
    if h == 0 {
        return Err(Error::AlreadyLcd);
    }
    let target = find_lcd_scaling(code, seed, max_trials)?;
    let mut a = vec![1; code.n()];
    let mut prev = h;
    for (i, &s) in target.scale().iter().enumerate() {
        if s == 1 {
            continue;
        }
        a[i] = s;
        let cur = code.hull_dimension_for_squares(&squares(f, &a))?;
        assert!(
            cur.abs_diff(prev) <= 1,
            "single-coordinate scaling moved the hull dimension from {prev} to {cur}"
        );
        if cur + 1 == h {
            let witness = MonomialTransform::scaling(a)?;
            let out = code.apply(&witness)?;
            return Ok((out, witness));
        }
        prev = cur;
    }
    unreachable!("walk ended at an LCD scaling without visiting h - 1")
}

/// One step of a [`ChainReport`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainEntry {
    pub hull_dim: usize,
    /// Witness relative to the chain's input code.
    pub transform: MonomialTransform,
    pub code: LinearCode,
    pub n: usize,
    pub k: usize,
    /// `None` when the distance budget was too small to verify.
    pub d: Option<usize>,
}

/// Equivalent codes of every hull dimension from `h` down to 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub input_distance: Option<usize>,
    pub entries: Vec<ChainEntry>,
}

impl ChainReport {
    pub fn dims(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.hull_dim).collect()
    }

    pub fn distances_verified(&self) -> bool {
        self.input_distance.is_some()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ChainOptions {
    pub max_trials: usize,
    pub distance_budget: u128,
}

impl Default for ChainOptions {
    fn default() -> Self {
        Self {
            max_trials: DEFAULT_MAX_TRIALS,
            distance_budget: crate::code::DEFAULT_DISTANCE_BUDGET,
        }
    }
}

/// Iterates [`reduce_hull_once`] from the input's hull dimension down to 0.
pub fn hull_chain(code: &LinearCode, seed: u64, opts: ChainOptions) -> Result<ChainReport> {
    let f = code.field().clone();
    require_large_field(&f)?;
    let input_distance = code.min_distance(opts.distance_budget).ok();
    let h = code.hull_dimension();

    let mut entries = vec![ChainEntry {
        hull_dim: h,
        transform: MonomialTransform::identity(code.n()),
        code: code.clone(),
        n: code.n(),
        k: code.k(),
        d: input_distance,
    }];
    for step in 0..h {
        let prev = entries.last().expect("chain starts non-empty");
        let (next, witness) =
            reduce_hull_once(&prev.code, seed.wrapping_add(step as u64), opts.max_trials)?;
        let transform = prev.transform.then(&witness, &f)?;
        let replayed = code.apply(&transform)?;
        assert_eq!(replayed, next, "cumulative witness does not replay");
        let hull_dim = next.hull_dimension();
        assert_eq!(hull_dim, h - step - 1);
        let d = input_distance.map(|_| {
            next.min_distance(opts.distance_budget)
                .expect("equivalent code enumerates within the same budget")
        });
        assert_eq!(d, input_distance, "monomial transform changed the distance");
        entries.push(ChainEntry {
            hull_dim,
            transform,
            n: next.n(),
            k: next.k(),
            code: next,
            d,
        });
    }
    Ok(ChainReport {
        input_distance,
        entries,
    })
}

/// Output of [`make_one_dim_hull`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneDimHull {
    pub code: LinearCode,
    pub transform: MonomialTransform,
    /// Row index `i` (0-based) of the standard-form Gram matrix that qualified.
    pub index: usize,
    /// Coordinate of the input code that was scaled.
    pub coordinate: usize,
}

/// Turns an LCD code into an equivalent code with a one-dimensional hull by
/// scaling a single information coordinate, when some `i` makes
/// `1 − det(M)/det(M_{i})` a nonzero square.
pub fn make_one_dim_hull(code: &LinearCode) -> Result<OneDimHull> {
    let f = code.field();
    if !code.is_lcd() {
        return Err(Error::NotLcd);
    }
    let (std, perm) = code.standard_form();
    let m = std.gram();
    let det_m = m.det()?;
    for i in 0..code.k() {
        let det_mi = m.det_minor_complement(&[i])?;
        if det_mi == 0 {
            continue;
        }
        let t = f.add(f.neg(f.div(det_m, det_mi)?), 1);
        if t == 0 || !f.is_square(t) {
            continue;
        }
        let coordinate = perm.sigma()[i];
        let mut a = vec![1; code.n()];
        a[coordinate] = f.sqrt(t)?;
        let transform = MonomialTransform::scaling(a)?;
        let out = code.apply(&transform)?;
        let gram = out.gram();
        assert_eq!(gram.det()?, 0, "scaled Gram matrix should be singular");
        assert_eq!(out.hull_dimension(), 1, "rank should drop by exactly one");
        return Ok(OneDimHull {
            code: out,
            transform,
            index: i,
            coordinate,
        });
    }
    Err(Error::NoWitness(
        "no index gives 1 - det(M)/det(M_i) as a nonzero square".into(),
    ))
}

/// Which characteristic-2 singularisation route applies to an LCD code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Char2Hypothesis {
    /// `det(M_{j}) ∉ {0, det(M)}`.
    SingleIndex { index: usize },
    /// `|J| ≥ 2`, `det(M_J) ≠ 0` and `det(M_I) = 0` for every nonempty proper `I ⊂ J`.
    Support { support: Vec<usize> },
    /// Neither condition holds (e.g. `G Gᵀ = I`).
    Escapes,
}

fn subsets_by_size(k: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            rec(i + 1, k, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, size, &mut Vec::new(), &mut out);
    out
}

fn proper_subsets_vanish(m: &Matrix, support: &[usize]) -> bool {
    (1..support.len()).all(|size| {
        subsets_by_size(support.len(), size).into_iter().all(|idx| {
            let sub: Vec<usize> = idx.iter().map(|&i| support[i]).collect();
            m.det_minor_complement(&sub).expect("indices in range") == 0
        })
    })
}

fn single_index_candidates(m: &Matrix) -> Vec<usize> {
    let det_m = m.det().expect("square");
    (0..m.rows())
        .filter(|&j| {
            let d = m.det_minor_complement(&[j]).expect("in range");
            d != 0 && d != det_m
        })
        .collect()
}

fn support_candidates(m: &Matrix) -> Vec<Vec<usize>> {
    (2..=m.rows())
        .flat_map(|size| subsets_by_size(m.rows(), size))
        .filter(|j| {
            m.det_minor_complement(j).expect("in range") != 0 && proper_subsets_vanish(m, j)
        })
        .collect()
}

/// Classifies the Gram matrix `M` of a standard-form LCD generator.
pub fn classify_char2(m: &Matrix) -> Char2Hypothesis {
    if let Some(&index) = single_index_candidates(m).first() {
        return Char2Hypothesis::SingleIndex { index };
    }
    match support_candidates(m).into_iter().next() {
        Some(support) => Char2Hypothesis::Support { support },
        None => Char2Hypothesis::Escapes,
    }
}

/// How [`char2_break_pure`] reached a one-dimensional hull.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum Char2Case {
    /// Input was not LCD; only hull reduction was needed.
    NotLcd {
        initial_hull: usize,
    },
    SingleIndex {
        index: usize,
    },
    Support {
        support: Vec<usize>,
        shift: Vec<Elem>,
        /// The closed-form candidate worked without the exhaustive fallback.
        closed_form: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Char2Outcome {
    pub code: LinearCode,
    pub transform: MonomialTransform,
    pub case: Char2Case,
}

/// Closed-form shift for a support `J = (j1, j2, rest...)`: the rest get the
/// smallest element outside `{0, 1}` and `u_{j1} u_{j2}` is solved from the
/// product condition.
fn closed_form_shift(
    f: &Field,
    det_m: Elem,
    det_mj: Elem,
    support: &[usize],
    k: usize,
) -> Option<Vec<Elem>> {
    let base = 2;
    let mut u = vec![0; k];
    let mut prod_rest = 1;
    for &i in &support[2..] {
        u[i] = base;
        prod_rest = f.mul(prod_rest, base);
    }
    let c = f.mul(prod_rest, f.div(det_mj, det_m).ok()?);
    let (u1, u2) = if c == 1 {
        (f.inv(base).ok()?, base)
    } else {
        let u1 = f.mul(c, c);
        (u1, f.inv(f.mul(c, u1)).ok()?)
    };
    u[support[0]] = u1;
    u[support[1]] = u2;
    Some(u)
}

fn exhaustive_shift(f: &Field, m: &Matrix, support: &[usize]) -> Option<Vec<Elem>> {
    let values: Vec<Elem> = f.elements().filter(|&x| x > 1).collect();
    if values.is_empty() {
        return None;
    }
    let mut digits = vec![0usize; support.len()];
    let mut u = vec![0; m.rows()];
    for _ in 0..SUPPORT_SEARCH_CAP {
        for (d, &i) in digits.iter().zip(support) {
            u[i] = values[*d];
        }
        if m.det_diag_shift(&u).expect("length k") == 0 {
            return Some(u);
        }
        let mut pos = support.len();
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < values.len() {
                break;
            }
            digits[pos] = 0;
        }
    }
    None
}

fn reduce_to_one(
    code: &LinearCode,
    mut current: LinearCode,
    mut transform: MonomialTransform,
    seed: u64,
    max_trials: usize,
) -> Result<(LinearCode, MonomialTransform)> {
    let f = code.field().clone();
    let mut step = 0u64;
    while current.hull_dimension() > 1 {
        let (next, w) = reduce_hull_once(&current, seed.wrapping_add(step), max_trials)?;
        transform = transform.then(&w, &f)?;
        current = next;
        step += 1;
    }
    debug_assert_eq!(code.apply(&transform)?, current);
    Ok((current, transform))
}

/// Over GF(2^t), t > 1, produces an equivalent code with one-dimensional hull.
pub fn char2_break_pure(code: &LinearCode, seed: u64, max_trials: usize) -> Result<Char2Outcome> {
    let f = code.field().clone();
    if !f.is_char2() || f.m() < 2 {
        return Err(Error::WrongCharacteristic(format!(
            "needs GF(2^t) with t > 1, got {f}"
        )));
    }
    let h = code.hull_dimension();
    if h > 0 {
        let (out, transform) = reduce_to_one(
            code,
            code.clone(),
            MonomialTransform::identity(code.n()),
            seed,
            max_trials,
        )?;
        return Ok(Char2Outcome {
            code: out,
            transform,
            case: Char2Case::NotLcd { initial_hull: h },
        });
    }

    let (std, perm) = code.standard_form();
    let m = std.gram();
    let det_m = m.det()?;
    let k = code.k();

    let mut found: Option<(Vec<Elem>, Char2Case)> = None;
    if let Some(&j) = single_index_candidates(&m).first() {
        let mut u = vec![0; k];
        u[j] = f.div(det_m, m.det_minor_complement(&[j])?)?;
        found = Some((u, Char2Case::SingleIndex { index: j }));
    } else {
        for support in support_candidates(&m) {
            let det_mj = m.det_minor_complement(&support)?;
            let candidate = closed_form_shift(&f, det_m, det_mj, &support, k)
                .filter(|u| support.iter().all(|&i| u[i] > 1))
                .filter(|u| m.det_diag_shift(u).map(|d| d == 0).unwrap_or(false));
            let (u, closed_form) = match candidate {
                Some(u) => (u, true),
                None => match exhaustive_shift(&f, &m, &support) {
                    Some(u) => (u, false),
                    None => continue,
                },
            };
            let shift = support.iter().map(|&i| u[i]).collect();
            found = Some((
                u,
                Char2Case::Support {
                    support,
                    shift,
                    closed_form,
                },
            ));
            break;
        }
    }
    let Some((u, case)) = found else {
        return Err(Error::NoWitness(
            "neither the single-index nor the support condition yields a singular shift".into(),
        ));
    };
    assert_eq!(
        m.det_diag_shift(&u)?,
        0,
        "shifted Gram matrix should be singular"
    );

    // a_i² = u_i + 1 on standard-form coordinate i, i.e. input coordinate σ(i).
    let mut a = vec![1; code.n()];
    for (i, &ui) in u.iter().enumerate() {
        if ui != 0 {
            a[perm.sigma()[i]] = f.sqrt(f.add(ui, 1))?;
        }
    }
    let transform = MonomialTransform::scaling(a)?;
    let scaled = code.apply(&transform)?;
    assert!(scaled.hull_dimension() >= 1);
    let (out, transform) = reduce_to_one(code, scaled, transform, seed, max_trials)?;
    Ok(Char2Outcome {
        code: out,
        transform,
        case,
    })
}

/// Basis with pairwise-orthogonal rows; zero-norm rows span the hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalBasis {
    pub basis: Matrix,
    pub norms: Vec<Elem>,
    /// Indices of rows with `c · c = 0`; always a trailing block.
    pub zero_norm: Vec<usize>,
}

/// Orthogonal basis of the code in odd characteristic.
///
/// Repeatedly picks an anisotropic vector (a row with nonzero norm, or the
/// sum of two isotropic rows with nonzero inner product), projects it out of
/// the remaining rows, and stops when what is left is totally isotropic.
pub fn orthogonal_basis(code: &LinearCode) -> Result<OrthogonalBasis> {
    let f = code.field();
    if f.is_char2() {
        return Err(Error::WrongCharacteristic(
            "orthogonal bases need odd characteristic".into(),
        ));
    }
    let mut rest = code.generator().row_vecs();
    let mut chosen: Vec<Vec<Elem>> = Vec::new();
    loop {
        if rest.is_empty() {
            break;
        }
        let x = if let Some(i) = rest.iter().position(|v| f.dot(v, v) != 0) {
            rest.remove(i)
        } else {
            let pair = (0..rest.len())
                .flat_map(|i| (i + 1..rest.len()).map(move |j| (i, j)))
                .find(|&(i, j)| f.dot(&rest[i], &rest[j]) != 0);
            let Some((i, j)) = pair else { break };
            let sum: Vec<Elem> = rest[i]
                .iter()
                .zip(&rest[j])
                .map(|(&a, &b)| f.add(a, b))
                .collect();
            rest.remove(i);
            sum
        };
        let norm_inv = f.inv(f.dot(&x, &x))?;
        for v in rest.iter_mut() {
            let coef = f.mul(f.dot(v, &x), norm_inv);
            if coef != 0 {
                for (vi, &xi) in v.iter_mut().zip(&x) {
                    *vi = f.sub(*vi, f.mul(coef, xi));
                }
            }
        }
        chosen.push(x);
    }
    let first_zero = chosen.len();
    chosen.extend(rest);
    let norms: Vec<Elem> = chosen.iter().map(|v| f.dot(v, v)).collect();
    let zero_norm = (first_zero..chosen.len()).collect();
    Ok(OrthogonalBasis {
        basis: Matrix::from_rows(f, &chosen)?,
        norms,
        zero_norm,
    })
}

/// Parameters `[[n, k − l, d; n − k − l]]` of an entanglement-assisted code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EaqeccParams {
    pub n: usize,
    pub logical: usize,
    pub d: usize,
    pub entangled: usize,
    pub l: usize,
    /// The classical code is MDS (`d = n − k + 1`).
    pub mds: bool,
}

impl std::fmt::Display for EaqeccParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[[{}, {}, {}; {}]]",
            self.n, self.logical, self.d, self.entangled
        )
    }
}

/// EAQECC parameters from a code whose hull dimension is at least `l`.
pub fn eaqecc_params(
    code: &LinearCode,
    l: usize,
    d: Option<usize>,
    budget: u128,
) -> Result<EaqeccParams> {
    let h = code.hull_dimension();
    if l > h {
        return Err(Error::HullTooSmall { l, h });
    }
    let d = match d {
        Some(d) => d,
        None => code.min_distance(budget)?,
    };
    let (n, k) = (code.n(), code.k());
    Ok(EaqeccParams {
        n,
        logical: k - l,
        d,
        entangled: n - k - l,
        l,
        mds: d == n - k + 1,
    })
}
