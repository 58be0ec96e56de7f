//! Canonical labeling of complete edge-labeled graphs.
//!
//! Individualization/refinement: the vertex set is kept as an ordered
//! partition, refined by label counts towards each cell until stable; the
//! first smallest non-singleton cell is then split on each of its members
//! (one representative per class of twins) and the lexicographically least
//! adjacency code over all discrete leaves is the canonical form.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::CoxeterMatrix;

/// A vertex of the galaxy: a complete Coxeter graph up to labeled isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GalaxyVertex {
    canon: Vec<u8>,
    rank: usize,
}

impl GalaxyVertex {
    pub fn canon(&self) -> &[u8] {
        &self.canon
    }

    /// Layer index.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn hex(&self) -> String {
        self.canon.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Short display tag for diagnostics and DOT node ids.
    pub fn short(&self) -> String {
        let h = crate::util::fnv1a(&self.canon);
        format!("L{}-{:08x}", self.rank, h as u32)
    }
}

impl GalaxyVertex {
    /// Inverse of [`GalaxyVertex::hex`].
    pub fn from_hex(hex: &str) -> Option<GalaxyVertex> {
        if !hex.len().is_multiple_of(2) || hex.len() < 6 {
            return None;
        }
        let canon = (0..hex.len() / 2)
            .map(|i| u8::from_str_radix(hex.get(2 * i..2 * i + 2)?, 16).ok())
            .collect::<Option<Vec<u8>>>()?;
        let rank = u16::from_be_bytes([canon[0], canon[1]]) as usize;
        let width = match canon[2] {
            1 => 1,
            4 => 4,
            _ => return None,
        };
        if canon.len() != 3 + width * rank * rank.saturating_sub(1) / 2 {
            return None;
        }
        Some(GalaxyVertex { canon, rank })
    }
}

impl Serialize for GalaxyVertex {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.hex())
    }
}

impl<'de> Deserialize<'de> for GalaxyVertex {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        GalaxyVertex::from_hex(&s).ok_or_else(|| serde::de::Error::custom("bad canonical form"))
    }
}

impl fmt::Display for GalaxyVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.short())
    }
}

fn code_for(m: &CoxeterMatrix, order: &[usize]) -> Vec<u32> {
    let n = order.len();
    let mut code = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            code.push(m.get(order[i], order[j]).sort_key());
        }
    }
    code
}

fn refine(m: &CoxeterMatrix, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let n = m.rank();
    loop {
        let mut cell_of = vec![0usize; n];
        for (c, cell) in cells.iter().enumerate() {
            for &v in cell {
                cell_of[v] = c;
            }
        }
        let mut next = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<(usize, u32)>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut sig: Vec<(usize, u32)> = (0..n)
                        .filter(|&u| u != v)
                        .map(|u| (cell_of[u], m.get(v, u).sort_key()))
                        .collect();
                    sig.sort_unstable();
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            for k in 1..=keyed.len() {
                if k == keyed.len() || keyed[k].0 != keyed[start].0 {
                    next.push(keyed[start..k].iter().map(|(_, v)| *v).collect());
                    start = k;
                }
            }
        }
        let changed = next.len() != cells.len();
        cells = next;
        if !changed {
            return cells;
        }
    }
}

fn are_twins(m: &CoxeterMatrix, u: usize, v: usize) -> bool {
    (0..m.rank()).all(|x| x == u || x == v || m.get(u, x) == m.get(v, x))
}

struct Best {
    code: Vec<u32>,
    order: Vec<usize>,
}

fn search(m: &CoxeterMatrix, cells: Vec<Vec<usize>>, best: &mut Option<Best>) {
    let cells = refine(m, cells);
    let target = cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|(i, c)| (c.len(), *i))
        .map(|(i, _)| i);
    let Some(target) = target else {
        let order: Vec<usize> = cells.into_iter().flatten().collect();
        let code = code_for(m, &order);
        if best.as_ref().is_none_or(|b| code < b.code) {
            *best = Some(Best { code, order });
        }
        return;
    };
    let mut reps: Vec<usize> = Vec::new();
    for &v in &cells[target] {
        if !reps.iter().any(|&r| are_twins(m, r, v)) {
            reps.push(v);
        }
    }
    for v in reps {
        let mut next = Vec::with_capacity(cells.len() + 1);
        for (i, cell) in cells.iter().enumerate() {
            if i == target {
                next.push(vec![v]);
                next.push(cell.iter().copied().filter(|&u| u != v).collect());
            } else {
                next.push(cell.clone());
            }
        }
        search(m, next, best);
    }
}

/// Canonical vertex ordering and its adjacency code.
pub fn canonical_labeling(m: &CoxeterMatrix) -> (Vec<usize>, Vec<u32>) {
    let n = m.rank();
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    let mut best = None;
    search(m, vec![(0..n).collect()], &mut best);
    let best = best.expect("search visits at least one leaf");
    (best.order, best.code)
}

fn encode(rank: usize, code: &[u32]) -> Vec<u8> {
    let narrow = code.iter().all(|&c| c == u32::MAX || c < 255);
    let mut out = Vec::with_capacity(2 + code.len() * if narrow { 1 } else { 4 });
    out.extend_from_slice(&(rank as u16).to_be_bytes());
    out.push(if narrow { 1 } else { 4 });
    for &c in code {
        if narrow {
            out.push(if c == u32::MAX { 0 } else { c as u8 });
        } else {
            out.extend_from_slice(&(if c == u32::MAX { 0 } else { c }).to_be_bytes());
        }
    }
    out
}

/// The galaxy vertex of `m`: invariant under any relabeling of generators.
pub fn canonical_form(m: &CoxeterMatrix) -> GalaxyVertex {
    let (_, code) = canonical_labeling(m);
    GalaxyVertex {
        canon: encode(m.rank(), &code),
        rank: m.rank(),
    }
}

/// A label-preserving bijection `f` (generator `i` of `m1` ↦ generator `f[i]`
/// of `m2`), when one exists.
pub fn are_graph_isomorphic(m1: &CoxeterMatrix, m2: &CoxeterMatrix) -> Option<Vec<usize>> {
    if m1.rank() != m2.rank() {
        return None;
    }
    let (o1, c1) = canonical_labeling(m1);
    let (o2, c2) = canonical_labeling(m2);
    if c1 != c2 {
        return None;
    }
    let mut f = vec![0; m1.rank()];
    for (a, b) in o1.into_iter().zip(o2) {
        f[a] = b;
    }
    Some(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxsys::{triangle, Label};

    fn fin(m: u32) -> Label {
        Label::Finite(m)
    }

    #[test]
    fn relabeled_starlet_has_same_canon() {
        let a = triangle(fin(6), fin(10), Label::Infinity);
        let b = a.permute(&[1, 0, 2]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn triangles_by_multiset() {
        let t = |p, q, r| canonical_form(&triangle(p, q, r));
        assert_ne!(t(fin(2), fin(4), fin(4)), t(fin(2), fin(2), Label::Infinity));
        assert_eq!(t(fin(3), fin(5), fin(7)), t(fin(7), fin(3), fin(5)));
    }

    #[test]
    fn identity_bijection_on_self() {
        let m = triangle(fin(3), fin(5), fin(7));
        let f = are_graph_isomorphic(&m, &m).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(m.get(i, j), m.get(f[i], f[j]));
            }
        }
        assert_eq!(f, vec![0, 1, 2]);
    }

    #[test]
    fn rank_mismatch_is_not_isomorphic() {
        let a = crate::coxsys::dihedral(fin(6));
        let b = triangle(fin(6), fin(2), fin(2));
        assert!(are_graph_isomorphic(&a, &b).is_none());
    }

    #[test]
    fn wide_labels_encode() {
        let a = triangle(fin(300), fin(3), Label::Infinity);
        let b = triangle(fin(3), fin(300), Label::Infinity);
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert_eq!(canonical_form(&a).canon()[2], 4);
    }
}
