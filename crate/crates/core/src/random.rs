//! Seeded random codes for tests, benches and sampled scans.

use rand::Rng;

use crate::code::LinearCode;
use crate::gf::{Elem, Field};
use crate::matgf::Matrix;

fn random_vec<R: Rng + ?Sized>(field: &Field, len: usize, rng: &mut R) -> Vec<Elem> {
    (0..len).map(|_| rng.random_range(0..field.q())).collect()
}

/// Uniform `rows × cols` matrix.
pub fn random_matrix<R: Rng + ?Sized>(
    field: &Field,
    rows: usize,
    cols: usize,
    rng: &mut R,
) -> Matrix {
    Matrix::new(field, rows, cols, random_vec(field, rows * cols, rng)).expect("entries in range")
}

/// Random `[n, k]` code (rejection-samples a full-rank generator).
pub fn random_code<R: Rng + ?Sized>(field: &Field, n: usize, k: usize, rng: &mut R) -> LinearCode {
    assert!(k >= 1 && k <= n);
    loop {
        let code = LinearCode::from_matrix(&random_matrix(field, k, n, rng));
        if let Ok(c) = code {
            if c.k() == k {
                return c;
            }
        }
    }
}

/// Random code with generator `[I_k : P]`.
pub fn random_standard_form_code<R: Rng + ?Sized>(
    field: &Field,
    n: usize,
    k: usize,
    rng: &mut R,
) -> LinearCode {
    assert!(k >= 1 && k <= n);
    let rows: Vec<Vec<Elem>> = (0..k)
        .map(|i| {
            let mut row = vec![0; n];
            row[i] = 1;
            for x in row[k..].iter_mut() {
                *x = rng.random_range(0..field.q());
            }
            row
        })
        .collect();
    LinearCode::from_rows(field, &rows).expect("standard form has full rank")
}

/// Random self-orthogonal `[n, k]` code, grown one isotropic vector at a time
/// inside the dual of what has been chosen so far. Returns `None` if
/// `attempts` draws do not suffice.
pub fn random_self_orthogonal_code<R: Rng + ?Sized>(
    field: &Field,
    n: usize,
    k: usize,
    attempts: usize,
    rng: &mut R,
) -> Option<LinearCode> {
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    let mut budget = attempts;
    while rows.len() < k {
        let dual_basis = if rows.is_empty() {
            Matrix::identity(field, n)
        } else {
            let current = LinearCode::from_rows(field, &rows).ok()?;
            match current.dual() {
                Ok(d) => d.generator().clone(),
                Err(_) => return None,
            }
        };
        loop {
            if budget == 0 {
                return None;
            }
            budget -= 1;
            let y = random_vec(field, dual_basis.rows(), rng);
            let v = dual_basis.left_mul_vec(&y).ok()?;
            if v.iter().all(|&x| x == 0) || field.dot(&v, &v) != 0 {
                continue;
            }
            let mut candidate = rows.clone();
            candidate.push(v);
            if Matrix::from_rows(field, &candidate).ok()?.rank() == candidate.len() {
                rows = candidate;
                break;
            }
        }
    }
    LinearCode::from_rows(field, &rows).ok()
}
