//! Small named systems and maps used by tests, the acceptance suite and the CLI docs.
//!
//! Basis indices are 0-based: `e1, e2, …` in the usual notation are `0, 1, …` here.

use crate::constructions::ReferenceEntry;
use crate::linear::LinearMap;
use crate::scalar::Scalar;
use crate::system::{LieAlgebra, TripleSystem};

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

/// Two-dimensional system with `[e1,e2,e2] = e1` (and `[e2,e1,e2] = −e1`).
pub fn two_dim_system() -> TripleSystem {
    TripleSystem::from_entries(2, [([0, 1, 1], vec![(0, s(1))]), ([1, 0, 1], vec![(0, s(-1))])]).expect("static data")
}

/// Four-dimensional system with `[e1,e2,e1] = e4` (and `[e2,e1,e1] = −e4`).
pub fn four_dim_system() -> TripleSystem {
    TripleSystem::from_entries(4, [([0, 1, 0], vec![(3, s(1))]), ([1, 0, 0], vec![(3, s(-1))])]).expect("static data")
}

/// `sl2` with basis `h, e, f`: `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
pub fn sl2() -> LieAlgebra {
    LieAlgebra::from_antisymmetric_entries(
        3,
        [([0, 1], vec![(1, s(2))]), ([0, 2], vec![(2, s(-2))]), ([1, 2], vec![(0, s(1))])],
    )
    .expect("static data")
}

/// The two-dimensional non-abelian Lie algebra `[e1,e2] = e1`.
pub fn two_dim_lie() -> LieAlgebra {
    LieAlgebra::from_antisymmetric_entries(2, [([0, 1], vec![(0, s(1))])]).expect("static data")
}

/// `T = [[0, a], [0, b]]` on the two-dimensional system:
/// `T(e1) = 0`, `T(e2) = a e1 + b e2`.
pub fn two_dim_rota_baxter(a: i64, b: i64) -> LinearMap {
    LinearMap::from_int_rows(&[&[0, a], &[0, b]]).expect("static data")
}

/// The 4×4 Rota-Baxter operator on [`four_dim_system`]:
/// `T(e1) = 0`, `T(e2) = e1`, `T(e3) = e3`, `T(e4) = e4`.
pub fn four_dim_rota_baxter() -> LinearMap {
    LinearMap::from_int_rows(&[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]).expect("static data")
}

fn entry(args: [usize; 3], value: &[(usize, i64)]) -> ReferenceEntry {
    ReferenceEntry { args, value: value.iter().map(|&(i, c)| (i, Scalar::from_int(c))).collect() }
}

/// Reference values of the twist of the 2-dim semidirect product by
/// [`two_dim_rota_baxter`]`(a, b)`, as a comparison target.
pub fn two_dim_twist_table(b: i64) -> Vec<ReferenceEntry> {
    vec![
        entry([0, 2, 1], &[(2, -1)]),
        entry([1, 2, 3], &[(2, b)]),
        entry([1, 3, 2], &[(2, b)]),
        entry([0, 1, 3], &[(0, b), (2, 1)]),
        entry([0, 3, 1], &[(0, b), (2, 1)]),
    ]
}

/// Reference values of the twist of the 4-dim semidirect product by
/// [`four_dim_rota_baxter`], as a comparison target.
pub fn four_dim_twist_table() -> Vec<ReferenceEntry> {
    vec![
        entry([0, 1, 0], &[(3, 1)]),
        entry([0, 1, 5], &[(3, 1)]),
        entry([1, 5, 0], &[(3, 1)]),
        entry([0, 1, 4], &[(5, 1)]),
        entry([1, 4, 0], &[(5, -1)]),
        entry([1, 5, 4], &[(5, 1)]),
        entry([4, 5, 1], &[(5, 1)]),
        entry([0, 5, 0], &[(3, 1), (5, 1)]),
    ]
}
