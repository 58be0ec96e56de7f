use proptest::prelude::*;

use crate::coxsys::{CoxeterMatrix, Label};

pub fn fin(m: u32) -> Label {
    Label::Finite(m)
}

pub const INF: Label = Label::Infinity;

/// Path diagram with the given consecutive labels; all other labels 2.
pub fn linear(labels: &[u32]) -> CoxeterMatrix {
    CoxeterMatrix::from_fn(
        labels.len() + 1,
        |i, j| if j == i + 1 { fin(labels[i]) } else { fin(2) },
    )
    .unwrap()
}

/// System from a list of non-2 edges.
pub fn from_edges(n: usize, edges: &[(usize, usize, Label)]) -> CoxeterMatrix {
    CoxeterMatrix::from_fn(n, |i, j| {
        edges
            .iter()
            .find(|&&(a, b, _)| (a, b) == (i, j) || (b, a) == (i, j))
            .map_or(fin(2), |e| e.2)
    })
    .unwrap()
}

/// Hub `s0` joined to spoke `s_i` by `4k_i+2`, spokes pairwise ∞.
pub fn star(ks: &[u32]) -> CoxeterMatrix {
    CoxeterMatrix::from_fn(ks.len() + 1, |i, j| if i == 0 { fin(4 * ks[j - 1] + 2) } else { INF }).unwrap()
}

/// The blow-up of the three-vertex starlet at its `4k+2` edge, on `x, c, b, w`.
pub fn twist_example(k: u32, l: u32) -> CoxeterMatrix {
    let m = from_edges(
        4,
        &[(0, 1, fin(2 * k + 1)), (1, 2, fin(4 * l + 2)), (0, 2, INF), (2, 3, INF)],
    );
    m.with_names(vec!["x".into(), "c".into(), "b".into(), "w".into()])
        .unwrap()
}

/// `J = {a, b}` of type `I2(5)` with `c` and `d` attached by 3 on opposite sides.
pub fn i2_5_config() -> CoxeterMatrix {
    from_edges(4, &[(0, 1, fin(5)), (2, 0, fin(3)), (3, 1, fin(3)), (2, 3, INF)])
}

fn label_strategy() -> impl Strategy<Value = Label> {
    prop_oneof![
        3 => Just(fin(2)),
        2 => Just(fin(3)),
        1 => Just(fin(4)),
        1 => Just(fin(5)),
        1 => Just(fin(6)),
        1 => Just(fin(10)),
        2 => Just(INF),
    ]
}

pub fn system_strategy(max_rank: usize) -> impl Strategy<Value = CoxeterMatrix> {
    (1..=max_rank).prop_flat_map(|n| {
        proptest::collection::vec(label_strategy(), n * (n - 1) / 2).prop_map(move |labels| {
            let mut it = labels.into_iter();
            let mut grid = vec![vec![Label::One; n]; n];
            for i in 0..n {
                for j in i + 1..n {
                    let l = it.next().unwrap();
                    grid[i][j] = l;
                    grid[j][i] = l;
                }
            }
            CoxeterMatrix::from_fn(n, |i, j| grid[i][j]).unwrap()
        })
    })
}
