//! Vertical moves (blow-ups along pseudo-transpositions and blow-downs) and
//! horizontal moves (elementary twists).

mod blow;
mod twist;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::classify::irreducible_spherical_subsets;
use crate::classify::SphericalType;
use crate::coxsys::{canonical_form, CoxeterMatrix, GalaxyVertex, GeneratorSubset};
use crate::error::{Error, Result};

pub use blow::{
    blow_down, blow_down_candidates, blow_down_prefilter, blow_up, check_pseudo_transposition,
    find_pseudo_transpositions, BlowDown, PseudoTransposition, PtKind,
};
pub use twist::{
    apply_twist, enumerate_all_twists, enumerate_twists, is_twist_trivial, twist_is_structurally_trivial,
    TwistDescriptor,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    BlowUp,
    BlowDown,
    Twist,
}

/// A move together with the data needed to apply it to its source system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    BlowUp(PseudoTransposition),
    BlowDown(BlowDown),
    Twist(TwistDescriptor),
}

impl Move {
    pub fn kind(&self) -> MoveKind {
        match self {
            Move::BlowUp(_) => MoveKind::BlowUp,
            Move::BlowDown(_) => MoveKind::BlowDown,
            Move::Twist(_) => MoveKind::Twist,
        }
    }

    pub fn apply(&self, m: &CoxeterMatrix) -> Result<CoxeterMatrix> {
        match self {
            Move::BlowUp(pt) => blow_up(m, pt),
            Move::BlowDown(bd) => blow_down(m, bd),
            Move::Twist(tw) => apply_twist(m, tw),
        }
    }

    /// The move undoing this one, in the indices of `self.apply(m)`.
    /// `rank` is the rank of the source.
    pub fn inverse(&self, rank: usize) -> Move {
        match self {
            Move::BlowUp(pt) => Move::BlowDown(pt.inverse(rank)),
            Move::BlowDown(bd) => Move::BlowUp(bd.inverse()),
            Move::Twist(tw) => Move::Twist(*tw),
        }
    }

    /// The same move on a relabeled source: generator `i` becomes `f[i]`.
    pub fn relabel(&self, f: &[usize]) -> Move {
        let map = |s: GeneratorSubset| s.iter().map(|i| f[i]).collect::<GeneratorSubset>();
        match *self {
            Move::BlowUp(pt) => Move::BlowUp(PseudoTransposition {
                t: f[pt.t],
                v: f[pt.v],
                j: map(pt.j),
                kind: pt.kind,
            }),
            Move::BlowDown(bd) => Move::BlowDown(BlowDown {
                x: f[bd.x],
                v: f[bd.v],
                r: f[bd.r],
                basis: map(bd.basis),
            }),
            Move::Twist(tw) => Move::Twist(TwistDescriptor {
                j: map(tw.j),
                a: map(tw.a),
                b: map(tw.b),
            }),
        }
    }

    pub fn payload_json(&self) -> serde_json::Value {
        match self {
            Move::BlowUp(pt) => serde_json::to_value(pt),
            Move::BlowDown(bd) => serde_json::to_value(bd),
            Move::Twist(tw) => serde_json::to_value(tw),
        }
        .expect("payload serializes")
    }

    pub fn from_parts(kind: MoveKind, payload: &serde_json::Value) -> Result<Move> {
        let err = |e: serde_json::Error| Error::MalformedInput(e.to_string());
        Ok(match kind {
            MoveKind::BlowUp => Move::BlowUp(serde_json::from_value(payload.clone()).map_err(err)?),
            MoveKind::BlowDown => Move::BlowDown(serde_json::from_value(payload.clone()).map_err(err)?),
            MoveKind::Twist => Move::Twist(serde_json::from_value(payload.clone()).map_err(err)?),
        })
    }
}

/// A move applied to a concrete system: re-applying `mv` to the source
/// reproduces the target up to canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MoveRecord {
    pub mv: Move,
    pub source: GalaxyVertex,
    pub target: GalaxyVertex,
}

#[derive(Serialize, Deserialize)]
struct RecordRepr {
    kind: MoveKind,
    payload: serde_json::Value,
    source: GalaxyVertex,
    target: GalaxyVertex,
}

impl Serialize for MoveRecord {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        RecordRepr {
            kind: self.mv.kind(),
            payload: self.mv.payload_json(),
            source: self.source.clone(),
            target: self.target.clone(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for MoveRecord {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let r = RecordRepr::deserialize(de)?;
        let mv = Move::from_parts(r.kind, &r.payload).map_err(serde::de::Error::custom)?;
        Ok(MoveRecord {
            mv,
            source: r.source,
            target: r.target,
        })
    }
}

impl MoveRecord {
    pub fn kind(&self) -> MoveKind {
        self.mv.kind()
    }
}

/// A move from `m` together with its result.
#[derive(Clone, Debug)]
pub struct AppliedMove {
    pub record: MoveRecord,
    pub result: CoxeterMatrix,
}

fn applied(m: &CoxeterMatrix, source: &GalaxyVertex, mv: Move) -> Result<AppliedMove> {
    let result = mv.apply(m)?;
    let target = canonical_form(&result);
    Ok(AppliedMove {
        record: MoveRecord {
            mv,
            source: source.clone(),
            target,
        },
        result,
    })
}

/// All blow-ups of `m`.
pub fn blow_ups(m: &CoxeterMatrix) -> Vec<AppliedMove> {
    let source = canonical_form(m);
    find_pseudo_transpositions(m)
        .into_iter()
        .map(|pt| applied(m, &source, Move::BlowUp(pt)).expect("detected pseudo-transposition applies"))
        .collect()
}

/// Verified blow-downs of `m`, one per target vertex.
pub fn blow_downs(m: &CoxeterMatrix) -> Vec<AppliedMove> {
    let source = canonical_form(m);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for bd in blow_down_candidates(m) {
        let Ok(mv) = applied(m, &source, Move::BlowDown(bd)) else {
            continue;
        };
        if seen.contains(&mv.record.target) {
            continue;
        }
        let Ok(back) = blow_up(&mv.result, &bd.inverse()) else {
            continue;
        };
        if canonical_form(&back) != source {
            continue;
        }
        seen.insert(mv.record.target.clone());
        out.push(mv);
    }
    out
}

/// Rank-lowering moves: every system of rank one less having a blow-up
/// isomorphic to `m`, up to canonical form.
pub fn find_blow_downs(m: &CoxeterMatrix) -> Vec<MoveRecord> {
    blow_downs(m).into_iter().map(|a| a.record).collect()
}

/// Nontrivial elementary twists of `m` (outputs not isomorphic to `m`).
pub fn nontrivial_twists(m: &CoxeterMatrix) -> Vec<AppliedMove> {
    let source = canonical_form(m);
    enumerate_twists(m)
        .into_iter()
        .filter_map(|tw| applied(m, &source, Move::Twist(tw)).ok())
        .filter(|a| a.record.target != source)
        .collect()
}

/// Every implemented move starting at `m`.
pub fn all_moves(m: &CoxeterMatrix) -> Vec<AppliedMove> {
    let mut out = blow_ups(m);
    out.extend(blow_downs(m));
    out.extend(nontrivial_twists(m));
    out
}

/// The per-vertex statistics `(u, d, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Statistics {
    pub u: usize,
    pub d: usize,
    pub p: usize,
}

/// Whether a type is one of `B_{2n+1}`, `D_{2n+1}`, `I2(4n+2)`, `I2(2n+1)`.
pub fn counts_towards_p(ty: SphericalType) -> bool {
    ty.odd_b_rank().is_some()
        || ty.odd_d_rank().is_some()
        || ty
            .dihedral_param()
            .is_some_and(|k| k % 2 == 1 || (k >= 6 && k % 4 == 2))
}

pub fn statistics(m: &CoxeterMatrix) -> Statistics {
    let p = irreducible_spherical_subsets(m)
        .into_iter()
        .filter(|(_, r)| counts_towards_p(r.ty))
        .count();
    Statistics {
        u: find_pseudo_transpositions(m).len(),
        d: find_blow_downs(m).len(),
        p,
    }
}

#[cfg(test)]
mod tests;
