//! Small reference codes used by tests, benches and the CLI demo data.

use crate::code::LinearCode;
use crate::gf::{Elem, Field};

/// `[7, 3, 2]` self-orthogonal code over GF(5).
pub fn self_orthogonal_7_3_f5() -> LinearCode {
    let f = Field::new(5, 1).expect("GF(5)");
    LinearCode::from_rows(
        &f,
        &[
            vec![1, 0, 0, 0, 0, 2, 0],
            vec![0, 1, 0, 2, 2, 0, 4],
            vec![0, 0, 1, 1, 3, 0, 3],
        ],
    )
    .expect("full-rank generator")
}

/// Scalings of [`self_orthogonal_7_3_f5`] whose hulls have dimension 0, 1, 2, 3.
pub fn self_orthogonal_7_3_f5_scalings() -> [Vec<Elem>; 4] {
    [
        vec![2, 2, 2, 1, 1, 1, 1],
        vec![2, 2, 1, 1, 1, 1, 1],
        vec![2, 1, 1, 1, 1, 1, 1],
        vec![1, 1, 1, 1, 1, 1, 1],
    ]
}

/// `[6, 3]` pure LCD code over GF(5).
pub fn pure_lcd_6_3_f5() -> LinearCode {
    let f = Field::new(5, 1).expect("GF(5)");
    LinearCode::from_rows(
        &f,
        &[
            vec![1, 0, 0, 0, 0, 4],
            vec![0, 1, 0, 2, 4, 0],
            vec![0, 0, 1, 0, 0, 3],
        ],
    )
    .expect("full-rank generator")
}
