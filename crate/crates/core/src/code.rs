//! Linear codes, their duals and hulls, and monomial equivalence.
//!
//! A [`LinearCode`] stores its generator in reduced row echelon form, so two
//! codes compare equal exactly when they are the same subspace.

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::matgf::Matrix;

/// Default number of codeword enumerations allowed for exhaustive routines.
pub const DEFAULT_DISTANCE_BUDGET: u128 = 10_000_000;

/// An `[n, k]` linear code over GF(q), given by a full-row-rank generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    generator: Matrix,
}

/// Permutation `σ` plus nonzero scalings `a`; acts on codes as `σ(C_a)`.
///
/// `sigma[j]` is the (0-based) source coordinate of output coordinate `j`, so
/// the transformed generator has column `j` equal to `a[σ(j)] · G[:, σ(j)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialTransform {
    sigma: Vec<usize>,
    scale: Vec<Elem>,
}

/// Hull dimension together with the objects that certify it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullReport {
    pub h: usize,
    /// `h × n`, rows span `C ∩ C⊥`.
    pub hull_basis: Matrix,
    pub rank_gram: usize,
    pub rank_dual_gram: usize,
}

impl MonomialTransform {
    pub fn new(sigma: Vec<usize>, scale: Vec<Elem>) -> Result<Self> {
        let n = sigma.len();
        if scale.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "permutation of length {n} with {} scalars",
                scale.len()
            )));
        }
        let mut seen = vec![false; n];
        for &s in &sigma {
            if s >= n || seen[s] {
                return Err(Error::InvalidPermutation(format!(
                    "{sigma:?} is not a bijection on 0..{n}"
                )));
            }
            seen[s] = true;
        }
        if let Some(pos) = scale.iter().position(|&a| a == 0) {
            return Err(Error::ZeroScale { position: pos });
        }
        Ok(Self { sigma, scale })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            sigma: (0..n).collect(),
            scale: vec![1; n],
        }
    }

    /// Pure scaling `C_a`.
    pub fn scaling(scale: Vec<Elem>) -> Result<Self> {
        Self::new((0..scale.len()).collect(), scale)
    }

    /// Pure permutation `σ(C)`.
    pub fn permutation(sigma: Vec<usize>) -> Result<Self> {
        let n = sigma.len();
        Self::new(sigma, vec![1; n])
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn scale(&self) -> &[Elem] {
        &self.scale
    }

    pub fn is_identity_permutation(&self) -> bool {
        self.sigma.iter().enumerate().all(|(i, &s)| i == s)
    }

    /// Coordinatewise squares `a ∘ a`.
    pub fn squared_scale(&self, field: &Field) -> Vec<Elem> {
        self.scale.iter().map(|&a| field.mul(a, a)).collect()
    }

    /// The transform equivalent to applying `self` first, then `next`.
    pub fn then(&self, next: &MonomialTransform, field: &Field) -> Result<Self> {
        if next.len() != self.len() {
            return Err(Error::DimensionMismatch(format!(
                "composing transforms of lengths {} and {}",
                self.len(),
                next.len()
            )));
        }
        let n = self.len();
        let sigma: Vec<usize> = (0..n).map(|j| self.sigma[next.sigma[j]]).collect();
        // next.a is indexed by intermediate coordinates; intermediate i holds
        // source coordinate self.sigma[i].
        let mut scale = self.scale.clone();
        for i in 0..n {
            let src = self.sigma[i];
            scale[src] = field.mul(scale[src], next.scale[i]);
        }
        Ok(Self { sigma, scale })
    }

    /// Applies the transform to a single word.
    pub fn apply_word(&self, word: &[Elem], field: &Field) -> Vec<Elem> {
        self.sigma
            .iter()
            .map(|&s| field.mul(self.scale[s], word[s]))
            .collect()
    }
}

impl LinearCode {
    /// Builds a code from generator rows, reducing them to a full-row-rank
    /// generator in reduced row echelon form.
    pub fn from_matrix(rows: &Matrix) -> Result<Self> {
        let r = rows.rref();
        if r.rank == 0 {
            return Err(Error::ZeroCode);
        }
        let data = r.matrix.data()[..r.rank * rows.cols()].to_vec();
        Ok(Self {
            generator: Matrix::new(rows.field(), r.rank, rows.cols(), data)?,
        })
    }

    pub fn from_rows(field: &Field, rows: &[Vec<Elem>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::ZeroCode);
        }
        Self::from_matrix(&Matrix::from_rows(field, rows)?)
    }

    pub fn field(&self) -> &Field {
        self.generator.field()
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    /// `G Gᵀ` for the stored generator.
    pub fn gram(&self) -> Matrix {
        self.generator.gram()
    }

    /// Columns holding the leading ones of the stored generator.
    pub fn information_set(&self) -> Vec<usize> {
        self.generator.rref().pivots
    }

    pub fn contains(&self, word: &[Elem]) -> bool {
        self.generator.row_space_contains(word)
    }

    /// Equivalent code with generator `[I_k : P]` and the permutation used.
    pub fn standard_form(&self) -> (LinearCode, MonomialTransform) {
        let pivots = self.information_set();
        let mut sigma = pivots.clone();
        sigma.extend((0..self.n()).filter(|c| !pivots.contains(c)));
        let t = MonomialTransform::permutation(sigma).expect("pivots and rest form a permutation");
        let code = self.apply(&t).expect("transform has the code's length");
        (code, t)
    }

    pub fn dual(&self) -> Result<LinearCode> {
        if self.k() == self.n() {
            return Err(Error::ZeroCode);
        }
        let f = self.field();
        let pivots = self.information_set();
        let g = &self.generator;
        let mut rows = Vec::with_capacity(self.n() - self.k());
        for c in (0..self.n()).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0; self.n()];
            v[c] = 1;
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(g.get(i, c));
            }
            rows.push(v);
        }
        Self::from_rows(f, &rows)
    }

    /// `k − rank(G Gᵀ)`.
    pub fn hull_dimension(&self) -> usize {
        self.k() - self.gram().rank()
    }

    /// Hull dimension of `C_a` where `u = a ∘ a`.
    pub fn hull_dimension_for_squares(&self, u: &[Elem]) -> Result<usize> {
        Ok(self.k() - self.generator.gram_scaled(u)?.rank())
    }

    pub fn hull(&self) -> HullReport {
        let gram = self.gram();
        let rank_gram = gram.rank();
        let h = self.k() - rank_gram;
        let hull_basis = gram
            .kernel_basis()
            .mul(&self.generator)
            .expect("kernel rows have length k");
        let rank_dual_gram = match self.dual() {
            Ok(d) => d.gram().rank(),
            Err(_) => 0,
        };
        assert_eq!(
            h,
            self.n() - self.k() - rank_dual_gram,
            "hull dimension disagrees between code and dual"
        );
        HullReport {
            h,
            hull_basis,
            rank_gram,
            rank_dual_gram,
        }
    }

    pub fn is_lcd(&self) -> bool {
        self.gram().det().expect("gram is square") != 0
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.gram().is_zero()
    }

    pub fn is_self_dual(&self) -> bool {
        2 * self.k() == self.n() && self.is_self_orthogonal()
    }

    fn enumeration_size(&self) -> u128 {
        (self.field().q() as u128).saturating_pow(self.k() as u32)
    }

    /// Visits every codeword `yG` (including zero) in message odometer order.
    fn for_each_codeword(&self, mut visit: impl FnMut(&[Elem])) {
        let f = self.field();
        let q = f.q() as usize;
        let (k, n) = (self.k(), self.n());
        // deltas[i][j] = (e_{j+1} - e_j) · row_i, with e_q = e_0 = 0
        let deltas: Vec<Vec<Vec<Elem>>> = (0..k)
            .map(|i| {
                let row = self.generator.row(i);
                (0..q)
                    .map(|j| {
                        let next = ((j + 1) % q) as Elem;
                        let step = f.sub(next, j as Elem);
                        row.iter().map(|&g| f.mul(step, g)).collect()
                    })
                    .collect()
            })
            .collect();
        let mut digits = vec![0usize; k];
        let mut word = vec![0; n];
        loop {
            visit(&word);
            let mut i = k;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                let d = &deltas[i][digits[i]];
                for (w, &x) in word.iter_mut().zip(d) {
                    *w = f.add(*w, x);
                }
                digits[i] = (digits[i] + 1) % q;
                if digits[i] != 0 {
                    break;
                }
            }
        }
    }

    /// Minimum Hamming weight over all nonzero codewords, exhaustively.
    pub fn min_distance(&self, budget: u128) -> Result<usize> {
        let required = self.enumeration_size() - 1;
        if required > budget {
            return Err(Error::BudgetExceeded { required, budget });
        }
        let mut best = self.n();
        let mut first = true;
        self.for_each_codeword(|w| {
            if first {
                first = false;
                return;
            }
            let wt = w.iter().filter(|&&x| x != 0).count();
            best = best.min(wt);
        });
        Ok(best)
    }

    /// Brute-force hull dimension: counts codewords orthogonal to every
    /// generator row and takes `log_q` of the count.
    pub fn hull_oracle(&self, budget: u128) -> Result<usize> {
        let required = self.enumeration_size();
        if required > budget {
            return Err(Error::BudgetExceeded { required, budget });
        }
        let f = self.field();
        let rows = self.generator.row_vecs();
        let mut count: u128 = 0;
        self.for_each_codeword(|w| {
            if rows.iter().all(|r| f.dot(w, r) == 0) {
                count += 1;
            }
        });
        let q = f.q() as u128;
        let mut h = 0;
        let mut power = 1u128;
        while power < count {
            power *= q;
            h += 1;
        }
        if power != count {
            return Err(Error::NonPowerCount(count));
        }
        Ok(h)
    }

    /// `σ(C_a)`.
    pub fn apply(&self, t: &MonomialTransform) -> Result<LinearCode> {
        if t.len() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "transform of length {} on a code of length {}",
                t.len(),
                self.n()
            )));
        }
        let f = self.field();
        let rows: Vec<Vec<Elem>> = (0..self.k())
            .map(|r| t.apply_word(self.generator.row(r), f))
            .collect();
        Self::from_rows(f, &rows)
    }
}
