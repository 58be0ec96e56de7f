//! Elementary twists.

use serde::{Deserialize, Serialize};

use crate::classify::{irreducible_spherical_subsets, recognize, Recognized};
use crate::coxsys::{canonical_form, CoxeterMatrix, GeneratorSubset, Label};
use crate::error::{Error, Result};

/// Twist of `b` along `j`: every generator of `b` is conjugated by `w_J`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistDescriptor {
    pub j: GeneratorSubset,
    pub a: GeneratorSubset,
    pub b: GeneratorSubset,
}

impl TwistDescriptor {
    pub fn mirrored(&self) -> TwistDescriptor {
        TwistDescriptor {
            j: self.j,
            a: self.b,
            b: self.a,
        }
    }
}

fn twists_along(m: &CoxeterMatrix, j: GeneratorSubset, out: &mut Vec<TwistDescriptor>) {
    let rest = m.all().difference(j).difference(m.perp(j));
    let comps = m.components_by(rest, Label::is_finite);
    if comps.len() > 20 {
        return;
    }
    for mask in 0u64..(1u64 << comps.len()) {
        let mut a = GeneratorSubset::EMPTY;
        for (k, c) in comps.iter().enumerate() {
            if mask & (1 << k) != 0 {
                a = a.union(*c);
            }
        }
        out.push(TwistDescriptor {
            j,
            a,
            b: rest.difference(a),
        });
    }
}

/// Every descriptor satisfying the definition, trivial ones included.
pub fn enumerate_all_twists(m: &CoxeterMatrix) -> Vec<TwistDescriptor> {
    let mut out = Vec::new();
    for j in 0..m.rank() {
        twists_along(m, GeneratorSubset::singleton(j), &mut out);
    }
    for (j, _) in irreducible_spherical_subsets(m) {
        twists_along(m, j, &mut out);
    }
    out
}

/// Descriptors that are not trivial for one of the structural reasons:
/// `|J| = 1`, `w_J` central, `A = ∅` or `B = ∅`.
pub fn enumerate_twists(m: &CoxeterMatrix) -> Vec<TwistDescriptor> {
    let mut out = Vec::new();
    for (j, r) in irreducible_spherical_subsets(m) {
        if r.ty.longest_is_central() {
            continue;
        }
        let mut here = Vec::new();
        twists_along(m, j, &mut here);
        out.extend(here.into_iter().filter(|tw| !tw.a.is_empty() && !tw.b.is_empty()));
    }
    out
}

pub(crate) fn validate_twist(m: &CoxeterMatrix, tw: &TwistDescriptor) -> Result<Recognized> {
    let bad = |why: &str| Error::InvalidMove(format!("twist: {why}"));
    let all = m.all();
    if !tw.j.is_subset(all) || !tw.a.is_subset(all) || !tw.b.is_subset(all) {
        return Err(bad("index out of range"));
    }
    let rec = recognize(m, tw.j)
        .map_err(|_| bad("J is not irreducible"))?
        .ok_or_else(|| bad("J is not spherical"))?;
    let rest = all.difference(tw.j).difference(m.perp(tw.j));
    if !tw.a.intersection(tw.b).is_empty() || tw.a.union(tw.b) != rest {
        return Err(bad("A and B must partition S \\ (J ∪ J⊥)"));
    }
    for x in tw.a.iter() {
        for y in tw.b.iter() {
            if m.get(x, y).is_finite() {
                return Err(bad("a finite label joins A and B"));
            }
        }
    }
    Ok(rec)
}

/// The fast structural triviality test.
pub fn twist_is_structurally_trivial(m: &CoxeterMatrix, tw: &TwistDescriptor) -> bool {
    if tw.j.len() == 1 || tw.a.is_empty() || tw.b.is_empty() {
        return true;
    }
    recognize(m, tw.j)
        .ok()
        .flatten()
        .is_some_and(|r| r.ty.longest_is_central())
}

/// The twisted system: labels between `B` and `J` are rerouted through the
/// opposition involution of `J`; everything else is kept.
pub fn apply_twist(m: &CoxeterMatrix, tw: &TwistDescriptor) -> Result<CoxeterMatrix> {
    let rec = validate_twist(m, tw)?;
    let n = m.rank();
    let mut pi = vec![0usize; n];
    for (a, b) in rec.opposition() {
        pi[a] = b;
    }
    let grid: Vec<Vec<Label>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    if tw.b.contains(x) && tw.j.contains(y) {
                        m.get(x, pi[y])
                    } else if tw.j.contains(x) && tw.b.contains(y) {
                        m.get(pi[x], y)
                    } else {
                        m.get(x, y)
                    }
                })
                .collect()
        })
        .collect();
    CoxeterMatrix::new(m.generators().to_vec(), grid)
}

/// Whether the twisted graph is isomorphic to the original one.
pub fn is_twist_trivial(m: &CoxeterMatrix, tw: &TwistDescriptor) -> Result<bool> {
    let twisted = apply_twist(m, tw)?;
    if twist_is_structurally_trivial(m, tw) {
        return Ok(true);
    }
    Ok(canonical_form(&twisted) == canonical_form(m))
}
