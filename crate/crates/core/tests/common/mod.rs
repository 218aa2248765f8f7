#![allow(dead_code)]

use hullforge::random::random_matrix;
use hullforge::{Elem, Field, LinearCode, Matrix};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn gf(q: u32) -> Field {
    Field::from_order(q).unwrap()
}

/// Leibniz expansion, independent of elimination.
pub fn det_leibniz(m: &Matrix) -> Elem {
    let f = m.field();
    let n = m.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = 0;
    permute(&mut perm, 0, &mut |p| {
        let mut term = 1;
        for (r, &c) in p.iter().enumerate() {
            term = f.mul(term, m.get(r, c));
        }
        if parity(p) {
            total = f.sub(total, term);
        } else {
            total = f.add(total, term);
        }
    });
    total
}

fn permute(p: &mut Vec<usize>, i: usize, visit: &mut dyn FnMut(&[usize])) {
    if i == p.len() {
        visit(p);
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permute(p, i + 1, visit);
        p.swap(i, j);
    }
}

/// True for odd permutations.
fn parity(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

pub fn subsets(k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << k)
        .map(|mask| (0..k).filter(|&i| mask >> i & 1 == 1).collect())
        .collect()
}

pub fn support(u: &[Elem]) -> Vec<usize> {
    (0..u.len()).filter(|&i| u[i] != 0).collect()
}

pub fn random_nonzero<R: Rng>(f: &Field, rng: &mut R) -> Elem {
    rng.random_range(1..f.q())
}

pub fn random_support<R: Rng>(k: usize, size: usize, rng: &mut R) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..k).collect();
    for i in 0..size {
        let j = rng.random_range(i..k);
        idx.swap(i, j);
    }
    let mut s = idx[..size].to_vec();
    s.sort_unstable();
    s
}

pub fn vector_on<R: Rng>(f: &Field, k: usize, supp: &[usize], rng: &mut R) -> Vec<Elem> {
    let mut u = vec![0; k];
    for &i in supp {
        u[i] = random_nonzero(f, rng);
    }
    u
}

/// Hypothesis of the vanishing-minor expansion: `det(M_I) = 0` for all `|I| <= t`.
pub fn minors_vanish_up_to(m: &Matrix, t: usize) -> bool {
    subsets(m.rows())
        .into_iter()
        .filter(|i| i.len() <= t)
        .all(|i| m.det_minor_complement(&i).unwrap() == 0)
}

/// Hypothesis of the nonsingular expansion: `det(M) != 0` and
/// `det(M_I) = 0` for all nonempty proper `I ⊂ J`.
pub fn proper_minors_vanish(m: &Matrix, j: &[usize]) -> bool {
    m.det().unwrap() != 0
        && subsets(j.len())
            .into_iter()
            .filter(|s| !s.is_empty() && s.len() < j.len())
            .all(|s| {
                let idx: Vec<usize> = s.iter().map(|&x| j[x]).collect();
                m.det_minor_complement(&idx).unwrap() == 0
            })
}

/// `M` of rank `k − t − 1`, so every principal minor of order `>= k − t`
/// vanishes; `u` of weight `1..=t+1`.
pub fn vanishing_minor_instance<R: Rng>(
    f: &Field,
    k: usize,
    t: usize,
    rng: &mut R,
) -> (Matrix, Vec<Elem>) {
    let r = k - t - 1;
    loop {
        let m = if r == 0 {
            Matrix::zeros(f, k, k)
        } else {
            random_matrix(f, k, r, rng)
                .mul(&random_matrix(f, r, k, rng))
                .unwrap()
        };
        if !minors_vanish_up_to(&m, t) {
            continue;
        }
        let weight = rng.random_range(1..=t + 1);
        let supp = random_support(k, weight, rng);
        return (m, vector_on(f, k, &supp, rng));
    }
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let f = m.field();
    let k = m.rows();
    let mut rows = Vec::with_capacity(k);
    for r in 0..k {
        let mut row = m.row(r).to_vec();
        row.extend((0..k).map(|c| (r == c) as Elem));
        rows.push(row);
    }
    let aug = Matrix::from_rows(f, &rows).unwrap().rref();
    if aug.pivots.len() < k || aug.pivots[..k].iter().copied().ne(0..k) {
        return None;
    }
    let cols: Vec<usize> = (k..2 * k).collect();
    Some(aug.matrix.select_columns(&cols).unwrap())
}

/// Nonsingular `M` with `det(M_I) = 0` for every nonempty proper `I ⊂ J`.
///
/// Uses `det(M_I) = det(M) · det(M⁻¹[I, I])`: the `J × J` block of `M⁻¹` is a
/// weighted cycle, whose proper principal minors all vanish.
pub fn nonsingular_instance<R: Rng>(
    f: &Field,
    k: usize,
    weight: usize,
    rng: &mut R,
) -> (Matrix, Vec<Elem>) {
    loop {
        let supp = random_support(k, weight, rng);
        let mut n = random_matrix(f, k, k, rng).row_vecs();
        if weight >= 2 {
            for &a in &supp {
                for &b in &supp {
                    n[a][b] = 0;
                }
            }
            for w in 0..weight {
                let (a, b) = (supp[w], supp[(w + 1) % weight]);
                n[a][b] = random_nonzero(f, rng);
            }
        }
        let n = Matrix::from_rows(f, &n).unwrap();
        let Some(m) = inverse(&n) else { continue };
        if !proper_minors_vanish(&m, &supp) {
            continue;
        }
        return (m, vector_on(f, k, &supp, rng));
    }
}

/// Random self-orthogonal code; `n >= 2k + 1` guarantees one exists in odd
/// characteristic.
pub fn self_orthogonal<R: Rng>(f: &Field, n: usize, k: usize, rng: &mut R) -> LinearCode {
    for _ in 0..50 {
        if let Some(c) = hullforge::random::random_self_orthogonal_code(f, n, k, 20_000, rng) {
            return c;
        }
    }
    panic!("no self-orthogonal [{n},{k}] code found over {f}");
}

pub fn random_permutation<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    idx
}

pub fn random_scaling<R: Rng>(f: &Field, n: usize, rng: &mut R) -> Vec<Elem> {
    (0..n).map(|_| random_nonzero(f, rng)).collect()
}
