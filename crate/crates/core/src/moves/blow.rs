//! Pseudo-transpositions, blow-ups and blow-downs.

use serde::{Deserialize, Serialize};

use crate::classify::{irreducible_spherical_subsets, recognize, SphericalType};
use crate::coxsys::{CoxeterMatrix, GeneratorSubset, Label};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PtKind {
    /// `J` of type `B_k`, `k >= 3` odd.
    BOdd,
    /// `J = {t, v}` of type `I2(2k)`, `k >= 3` odd.
    I2EvenTwiceOdd,
}

/// A generator `t` together with the witnessing subset `J` and the unique
/// `v ∈ J` not commuting with `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PseudoTransposition {
    pub t: usize,
    pub v: usize,
    pub j: GeneratorSubset,
    pub kind: PtKind,
}

fn outer_condition(m: &CoxeterMatrix, t: usize, j: GeneratorSubset) -> bool {
    m.all()
        .difference(j)
        .iter()
        .all(|s| m.get(s, t).is_infinite() || j.iter().all(|u| m.get(s, u) == Label::Finite(2)))
}

fn is_twice_odd(label: Label) -> bool {
    matches!(label, Label::Finite(k) if k >= 6 && k % 4 == 2)
}

/// Checks the definition directly for a given `t` and `J`, returning the
/// completed record when it holds.
pub fn check_pseudo_transposition(m: &CoxeterMatrix, t: usize, j: GeneratorSubset) -> Option<PseudoTransposition> {
    if t >= m.rank() || !j.contains(t) || !j.is_subset(m.all()) || !outer_condition(m, t, j) {
        return None;
    }
    let r = recognize(m, j).ok()??;
    let others: Vec<usize> = j
        .without(t)
        .iter()
        .filter(|&u| m.get(t, u) != Label::Finite(2))
        .collect();
    let &[v] = others.as_slice() else {
        return None;
    };
    match r.ty {
        SphericalType::I2(_) if is_twice_odd(m.get(t, v)) => Some(PseudoTransposition {
            t,
            v,
            j,
            kind: PtKind::I2EvenTwiceOdd,
        }),
        ty if ty.odd_b_rank().is_some() && m.get(t, v) == Label::Finite(4) => Some(PseudoTransposition {
            t,
            v,
            j,
            kind: PtKind::BOdd,
        }),
        _ => None,
    }
}

/// All pseudo-transpositions, one per witnessing subset `J`. When both
/// generators of a dihedral `J` qualify, the blow-ups agree up to
/// relabeling and only the smaller index is reported.
pub fn find_pseudo_transpositions(m: &CoxeterMatrix) -> Vec<PseudoTransposition> {
    let mut out = Vec::new();
    for (j, r) in irreducible_spherical_subsets(m) {
        let candidates: Vec<usize> = match r.ty {
            SphericalType::I2(k) if k >= 6 && k % 4 == 2 => j.iter().collect(),
            ty if ty.odd_b_rank().is_some() => vec![*r.layout.last().expect("nonempty layout")],
            _ => continue,
        };
        if let Some(pt) = candidates.into_iter().find_map(|t| check_pseudo_transposition(m, t, j)) {
            out.push(pt);
        }
    }
    out
}

fn fresh_name(m_names: &[String], wanted: String) -> String {
    let mut name = wanted;
    while m_names.contains(&name) {
        name.push('\'');
    }
    name
}

/// Blow-up along `pt`: `t` is replaced in place by `tvt` and the longest
/// element `w_J` is appended as the last generator.
pub fn blow_up(m: &CoxeterMatrix, pt: &PseudoTransposition) -> Result<CoxeterMatrix> {
    let valid = check_pseudo_transposition(m, pt.t, pt.j);
    if valid.as_ref() != Some(pt) {
        return Err(Error::InvalidMove(format!(
            "generator {} with J = {:?} is not a pseudo-transposition",
            pt.t,
            pt.j.iter().collect::<Vec<_>>()
        )));
    }
    let (t, v, j) = (pt.t, pt.v, pt.j);
    let n = m.rank();
    let w = n;
    let two = Label::Finite(2);
    let label = |a: usize, b: usize| -> Label {
        if a == b {
            return Label::One;
        }
        let (a, b) = if a == t || a == w { (a, b) } else { (b, a) };
        if a != t && a != w {
            return m.get(a, b);
        }
        if b == t || b == w {
            return two;
        }
        if !j.contains(b) {
            return if m.get(t, b).is_infinite() {
                Label::Infinity
            } else {
                two
            };
        }
        if a == w {
            return two;
        }
        if b == v {
            match m.get(t, v) {
                Label::Finite(k) => Label::Finite(k / 2),
                other => other,
            }
        } else {
            m.get(v, b)
        }
    };
    let mut grid = vec![vec![Label::One; n + 1]; n + 1];
    for (a, row) in grid.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            *cell = label(a, b);
        }
    }
    let mut names: Vec<String> = m.generators().to_vec();
    let tvt = format!("{}{}{}", m.name(t), m.name(v), m.name(t));
    names[t] = String::new();
    names[t] = fresh_name(&names, tvt);
    let j_names: Vec<&str> = j.iter().map(|u| m.name(u)).collect();
    let wj = fresh_name(&names, format!("w[{}]", j_names.join(",")));
    names.push(wj);
    CoxeterMatrix::new(names, grid)
}

/// Data of a blow-down: `x` plays `tvt`, `r` plays `w_J`, and `basis` is the
/// odd-type subset (`D_odd`, `A3` or `I2(odd)`) with fork leaves `x`, `v`.
/// Indices refer to the system being blown down.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlowDown {
    pub x: usize,
    pub v: usize,
    pub r: usize,
    pub basis: GeneratorSubset,
}

impl BlowDown {
    /// The blow-up that undoes this blow-down, in the indices of the result.
    pub fn inverse(&self) -> PseudoTransposition {
        let shift = |i: usize| if i > self.r { i - 1 } else { i };
        let t = shift(self.x);
        let j: GeneratorSubset = self.basis.iter().map(shift).collect();
        let kind = if self.basis.len() == 2 {
            PtKind::I2EvenTwiceOdd
        } else {
            PtKind::BOdd
        };
        PseudoTransposition {
            t,
            v: shift(self.v),
            j,
            kind,
        }
    }
}

impl PseudoTransposition {
    /// The blow-down undoing this blow-up, in the indices of the blown-up system.
    pub fn inverse(&self, rank: usize) -> BlowDown {
        BlowDown {
            x: self.t,
            v: self.v,
            r: rank,
            basis: self.j,
        }
    }
}

/// Merges `x` and `r` into a single generator `t` placed at `x`.
pub fn blow_down(m: &CoxeterMatrix, bd: &BlowDown) -> Result<CoxeterMatrix> {
    let n = m.rank();
    let BlowDown { x, v, r, basis } = *bd;
    let bad = |why: &str| Error::InvalidMove(format!("blow-down: {why}"));
    if x >= n || v >= n || r >= n || !basis.contains(x) || !basis.contains(v) || basis.contains(r) || x == v {
        return Err(bad("indices out of place"));
    }
    let fork = recognize(m, basis)
        .ok()
        .flatten()
        .and_then(|rec| {
            let odd = rec.ty.odd_d_rank().is_some() || rec.ty.dihedral_param().is_some_and(|k| k % 2 == 1);
            if odd {
                rec.fork()
            } else {
                None
            }
        })
        .ok_or_else(|| bad("basis is not of type D_odd or I2(odd)"))?;
    if fork != (x, v) && fork != (v, x) {
        return Err(bad("x and v are not the fork leaves"));
    }
    for y in 0..n {
        if y == r {
            continue;
        }
        let ry = m.get(r, y);
        if basis.contains(y) {
            if ry != Label::Finite(2) {
                return Err(bad("r does not commute with the basis"));
            }
        } else if !(ry == Label::Finite(2) || ry.is_infinite()) || m.get(x, y) != ry {
            return Err(bad("x and r differ outside the basis"));
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&i| i != r).collect();
    let label = |a: usize, b: usize| -> Label {
        if a == b {
            return Label::One;
        }
        let (a, b) = if a == x { (a, b) } else { (b, a) };
        if a != x {
            return m.get(a, b);
        }
        if b == v {
            match m.get(x, v) {
                Label::Finite(k) => Label::Finite(2 * k),
                other => other,
            }
        } else if basis.contains(b) {
            Label::Finite(2)
        } else {
            m.get(x, b)
        }
    };
    let grid: Vec<Vec<Label>> = keep
        .iter()
        .map(|&a| keep.iter().map(|&b| label(a, b)).collect())
        .collect();
    let mut names: Vec<String> = keep.iter().map(|&i| m.name(i).to_string()).collect();
    let xi = keep.iter().position(|&i| i == x).expect("x kept");
    let xname = m.name(x);
    let vname = m.name(v);
    let wanted = match xname.find(vname) {
        Some(p) if p > 0 && xname[..p] == xname[p + vname.len()..] => xname[..p].to_string(),
        _ => format!("{xname}'"),
    };
    names[xi] = String::new();
    names[xi] = fresh_name(&names, wanted);
    CoxeterMatrix::new(names, grid)
}

/// Candidate blow-downs matching the shape left behind by a blow-up;
/// unverified and not deduplicated.
pub fn blow_down_candidates(m: &CoxeterMatrix) -> Vec<BlowDown> {
    let n = m.rank();
    let all = m.all();
    let rs: Vec<usize> = (0..n)
        .filter(|&r| (0..n).all(|y| y == r || matches!(m.get(r, y), Label::Finite(2) | Label::Infinity)))
        .collect();
    if rs.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (basis, rec) in irreducible_spherical_subsets(m) {
        let odd = rec.ty.odd_d_rank().is_some() || rec.ty.dihedral_param().is_some_and(|k| k % 2 == 1);
        if !odd {
            continue;
        }
        let Some((a, b)) = rec.fork() else { continue };
        let perp = m.perp(basis);
        for (x, v) in [(a, b), (b, a)] {
            for &r in &rs {
                if !perp.contains(r) {
                    continue;
                }
                let outside = all.difference(basis).without(r);
                if outside.iter().all(|y| m.get(x, y) == m.get(r, y)) {
                    out.push(BlowDown { x, v, r, basis });
                }
            }
        }
    }
    out
}

/// Necessary conditions for the existence of a Coxeter generating set of
/// smaller rank: a basic subset of type `D_{2n+1}` or `I2(2n+1)` with a
/// suitable `r`, the finiteness condition at the split end, and chords for
/// every long finite cycle through the split end.
pub fn blow_down_prefilter(m: &CoxeterMatrix) -> bool {
    let n = m.rank();
    let all = m.all();
    crate::classify::basic_subsets(m).into_iter().any(|b| {
        let odd = b.ty.odd_d_rank().is_some() || b.ty.dihedral_param().is_some_and(|k| k % 2 == 1);
        if !odd {
            return false;
        }
        let Some(rec) = recognize(m, b.members).ok().flatten() else {
            return false;
        };
        let Some((x, y)) = rec.fork() else { return false };
        let perp = m.perp(b.members);
        let near = b.members.union(perp);
        let has_r = perp.iter().any(|r| {
            (0..n)
                .filter(|&s| s != r && m.get(s, r).is_finite())
                .all(|s| near.contains(s) && m.get(s, r) == Label::Finite(2))
        });
        if !has_r {
            return false;
        }
        let both_finite: GeneratorSubset = all
            .iter()
            .filter(|&s| m.get(s, x).is_finite() && m.get(s, y).is_finite())
            .collect();
        if both_finite != near {
            return false;
        }
        !has_chordless_cycle_through(m, x, y)
    })
}

/// Whether the finite-label graph has an induced cycle of length at least
/// four through the edge `x`–`y`.
fn has_chordless_cycle_through(m: &CoxeterMatrix, x: usize, y: usize) -> bool {
    let n = m.rank();
    let adj = |a: usize, b: usize| a != b && m.get(a, b).is_finite();
    // induced paths y = p0, p1, ..., pk; a closing vertex adjacent to x
    // finishes a chordless cycle when the path has at least three vertices
    fn extend(path: &mut Vec<usize>, x: usize, n: usize, adj: &dyn Fn(usize, usize) -> bool, budget: &mut u32) -> bool {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        let last = *path.last().expect("path starts at y");
        for c in 0..n {
            if c == x || path.contains(&c) || !adj(last, c) {
                continue;
            }
            let k = path.len();
            if path[..k - 1].iter().any(|&p| adj(p, c)) {
                continue;
            }
            if adj(x, c) {
                if k >= 2 {
                    return true;
                }
                continue;
            }
            path.push(c);
            if extend(path, x, n, adj, budget) {
                return true;
            }
            path.pop();
        }
        false
    }
    let mut path = vec![y];
    let mut budget = 200_000;
    extend(&mut path, x, n, &adj, &mut budget)
}
