use serde::Serialize;

use super::{concretize, explore, Budget, Step};
use crate::classify::{group_order, is_spherical, matching_filter, MatchResult, SphericalType};
use crate::coxsys::{abelianization_rank, canonical_form, CoxeterMatrix, Label};
use crate::error::{Error, Result};
use crate::moves::{find_pseudo_transpositions, MoveRecord};
use crate::oracle::{finite_isomorphism, GroupWord};

/// Why two systems are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum IsoWitness {
    /// Moves turning the first system into one graph-isomorphic to the
    /// second; each move applies to the result of the previous one.
    Path(Vec<MoveRecord>),
    /// The rank ≤ 3 classification.
    Classification,
    /// Images of the first system's generators, as words in the second's,
    /// that satisfy its relations and generate.
    GeneratorImages(Vec<GroupWord>),
}

/// Why two systems are not isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Certificate {
    RankLe3Classification,
    Abelianization {
        first: usize,
        second: usize,
    },
    Sphericity {
        first: bool,
        second: bool,
    },
    GroupOrder {
        first: u128,
        second: u128,
    },
    BasicMatching {
        witness: SphericalType,
        in_first: bool,
    },
    /// Components of a rank-`lower` system stay below layer `2·lower`.
    LayerBound {
        lower: usize,
        higher: usize,
    },
    /// An expanded system has maximal rank, yet the other system has at
    /// least its rank and admits a blow-up or is larger.
    ExpandedRank {
        expanded_first: bool,
    },
    /// Both expanded of equal rank, with different label multisets.
    ExpandedLabels,
    /// Exhaustive search for generator images in a finite group.
    FiniteSearch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Decision {
    Isomorphic(IsoWitness),
    NonIsomorphic(Certificate),
    Unknown(String),
}

impl Decision {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, Decision::Isomorphic(_))
    }

    pub fn is_non_isomorphic(&self) -> bool {
        matches!(self, Decision::NonIsomorphic(_))
    }
}

/// Isomorphism of Coxeter groups of rank at most three.
pub fn iso_rank_le3(m1: &CoxeterMatrix, m2: &CoxeterMatrix) -> Result<bool> {
    for m in [m1, m2] {
        if m.rank() > 3 {
            return Err(Error::RankTooLarge(m.rank()));
        }
    }
    if m1.rank() == m2.rank() {
        return Ok(m1.label_multiset() == m2.label_multiset());
    }
    let (small, big) = if m1.rank() < m2.rank() { (m1, m2) } else { (m2, m1) };
    if small.rank() != 2 || big.rank() != 3 {
        return Ok(false);
    }
    let Label::Finite(p) = small.get(0, 1) else {
        return Ok(false);
    };
    if p % 4 != 2 || p < 6 {
        return Ok(false);
    }
    let want = vec![Label::Finite(2), Label::Finite(2), Label::Finite(p / 2)];
    Ok(big.label_multiset() == want)
}

fn expanded(m: &CoxeterMatrix) -> bool {
    find_pseudo_transpositions(m).is_empty()
}

fn cheap_certificate(m1: &CoxeterMatrix, m2: &CoxeterMatrix) -> Option<Certificate> {
    let (a1, a2) = (abelianization_rank(m1), abelianization_rank(m2));
    if a1 != a2 {
        return Some(Certificate::Abelianization { first: a1, second: a2 });
    }
    let (s1, s2) = (is_spherical(m1), is_spherical(m2));
    if s1 != s2 {
        return Some(Certificate::Sphericity { first: s1, second: s2 });
    }
    if let (Some(o1), Some(o2)) = (group_order(m1), group_order(m2)) {
        if o1 != o2 {
            return Some(Certificate::GroupOrder { first: o1, second: o2 });
        }
    }
    let (r1, r2) = (m1.rank(), m2.rank());
    let (lo, hi) = (r1.min(r2), r1.max(r2));
    if lo > 0 && hi > 2 * lo - 1 {
        return Some(Certificate::LayerBound { lower: lo, higher: hi });
    }
    let (e1, e2) = (expanded(m1), expanded(m2));
    if e1 && (r2 > r1 || (r2 == r1 && !e2)) {
        return Some(Certificate::ExpandedRank { expanded_first: true });
    }
    if e2 && (r1 > r2 || (r1 == r2 && !e1)) {
        return Some(Certificate::ExpandedRank { expanded_first: false });
    }
    if e1 && e2 && m1.label_multiset() != m2.label_multiset() {
        return Some(Certificate::ExpandedLabels);
    }
    if let MatchResult::Incompatible { witness, first } = matching_filter(m1, m2) {
        return Some(Certificate::BasicMatching {
            witness,
            in_first: first,
        });
    }
    None
}

/// Searches both fragments for a shared vertex and returns the move path
/// through it.
fn path_by_exploration(
    m1: &CoxeterMatrix,
    m2: &CoxeterMatrix,
    budget: &Budget,
) -> Result<(Option<Vec<MoveRecord>>, bool)> {
    let target = canonical_form(m2);
    let f1 = explore(m1, budget);
    if let Some(t) = f1.vertex_index(&target) {
        let path = f1.path(0, t)?.expect("fragment is connected");
        debug_assert!(path.last().is_none_or(|r| r.target == target));
        return Ok((Some(path), false));
    }
    let f2 = explore(m2, budget);
    let shared = f2
        .vertices
        .iter()
        .enumerate()
        .find_map(|(j, v)| f1.vertex_index(&v.vertex).map(|i| (i, j)));
    let Some((i, j)) = shared else {
        return Ok((None, f1.truncated.is_some() || f2.truncated.is_some()));
    };
    let up = f1.abstract_path(0, i).expect("fragment is connected");
    let down = f2.abstract_path(0, j).expect("fragment is connected");
    let mut steps: Vec<Step<'_>> = up
        .into_iter()
        .map(|(k, forward)| {
            let r = &f1.moves[k];
            Step {
                record: r,
                base: &f1.vertices[f1.index[&r.source]].representative,
                forward,
            }
        })
        .collect();
    for (k, forward) in down.into_iter().rev() {
        let r = &f2.moves[k];
        steps.push(Step {
            record: r,
            base: &f2.vertices[f2.index[&r.source]].representative,
            forward: !forward,
        });
    }
    let path = concretize(m1, &steps)?;
    debug_assert!(path.last().is_none_or(|r| r.target == target));
    Ok((Some(path), false))
}

/// The isomorphism pipeline: canonical equality, the rank ≤ 3
/// classification, cheap invariants, a shared vertex of the explored
/// fragments, and an exhaustive search when both groups are finite.
pub fn decide_isomorphic(m1: &CoxeterMatrix, m2: &CoxeterMatrix, budget: &Budget) -> Decision {
    if canonical_form(m1) == canonical_form(m2) {
        return Decision::Isomorphic(IsoWitness::Path(Vec::new()));
    }
    if m1.rank() <= 3 && m2.rank() <= 3 {
        let iso = iso_rank_le3(m1, m2).expect("ranks checked");
        if !iso {
            return Decision::NonIsomorphic(Certificate::RankLe3Classification);
        }
        return match path_by_exploration(m1, m2, budget) {
            Ok((Some(path), _)) => Decision::Isomorphic(IsoWitness::Path(path)),
            _ => Decision::Isomorphic(IsoWitness::Classification),
        };
    }
    if let Some(c) = cheap_certificate(m1, m2) {
        return Decision::NonIsomorphic(c);
    }
    let mut notes = Vec::new();
    match path_by_exploration(m1, m2, budget) {
        Ok((Some(path), _)) => return Decision::Isomorphic(IsoWitness::Path(path)),
        Ok((None, truncated)) => notes.push(
            if truncated {
                "no shared vertex within budget"
            } else {
                "explored fragments are disjoint"
            }
            .to_string(),
        ),
        Err(e) => notes.push(format!("exploration failed: {e}")),
    }
    if group_order(m1).is_some() && group_order(m2).is_some() {
        match finite_isomorphism(m1, m2, budget.oracle_cap, 10_000_000) {
            Ok(Some(images)) => return Decision::Isomorphic(IsoWitness::GeneratorImages(images)),
            Ok(None) => return Decision::NonIsomorphic(Certificate::FiniteSearch),
            Err(e) => notes.push(format!("finite search: {e}")),
        }
    }
    Decision::Unknown(notes.join("; "))
}
