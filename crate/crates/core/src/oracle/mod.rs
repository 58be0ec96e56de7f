//! Exact word problem for Coxeter groups.
//!
//! Elements are handled through the reflection representation with entries
//! in `Z[ζ_N]`, which is faithful, so equality of words is decided exactly.
//! Finite groups additionally act on their (finite) root systems, giving a
//! permutation representation used for enumeration and isomorphism search.
//! [`braid_normal_form`] is the classical rewriting procedure on words and
//! serves as an independent cross-check on short words.

mod braid;
mod cyclotomic;
mod finite;
mod rep;

use std::collections::{HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coxsys::{CoxeterMatrix, GeneratorSubset};
use crate::error::{Error, Result};
use crate::moves::{PseudoTransposition, TwistDescriptor};

pub use braid::braid_normal_form;

use finite::{Perm, RootAction};
use rep::{Mat, Rep};

/// Default limit on normal-form length.
pub const DEFAULT_MAX_LEN: usize = 64;

/// Default limit on element orders and group sizes.
pub const DEFAULT_ORDER_CAP: u64 = 50;
pub const DEFAULT_GROUP_CAP: usize = 100_000;

/// A word over the generators of a fixed system.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupWord(pub Vec<usize>);

impl GroupWord {
    pub fn identity() -> GroupWord {
        GroupWord(Vec::new())
    }

    pub fn letter(s: usize) -> GroupWord {
        GroupWord(vec![s])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        GroupWord(v)
    }

    /// Inverse of a product of involutions.
    pub fn inverse(&self) -> GroupWord {
        GroupWord(self.0.iter().rev().copied().collect())
    }

    pub fn pow(&self, k: usize) -> GroupWord {
        GroupWord(self.0.repeat(k))
    }

    /// `self · g · self⁻¹`.
    pub fn conjugate(&self, g: &GroupWord) -> GroupWord {
        self.concat(g).concat(&self.inverse())
    }

    pub fn display<'a>(&'a self, m: &'a CoxeterMatrix) -> impl fmt::Display + 'a {
        struct D<'a>(&'a GroupWord, &'a CoxeterMatrix);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.0.is_empty() {
                    return f.write_str("e");
                }
                let names: Vec<&str> = self.0 .0.iter().map(|&s| self.1.name(s)).collect();
                f.write_str(&names.join("·"))
            }
        }
        D(self, m)
    }
}

/// Normal form of an element: its lexicographically least reduced word.
pub type ElementId = GroupWord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ElementOrder {
    Finite(u64),
    /// No power up to the cap is trivial. Evidence of infinite order only.
    ExceedsCap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupOrder {
    Order(u128),
    ExceedsCap,
}

/// Word problem solver bound to one system.
pub struct Oracle {
    m: CoxeterMatrix,
    rep: Rep,
}

impl Oracle {
    pub fn new(m: &CoxeterMatrix) -> Result<Oracle> {
        Ok(Oracle {
            m: m.clone(),
            rep: Rep::new(m)?,
        })
    }

    pub fn system(&self) -> &CoxeterMatrix {
        &self.m
    }

    fn check(&self, w: &GroupWord) -> Result<()> {
        match w.0.iter().find(|&&s| s >= self.m.rank()) {
            Some(s) => Err(Error::MalformedInput(format!("letter {s} out of range"))),
            None => Ok(()),
        }
    }

    fn matrix(&self, w: &GroupWord) -> Result<Mat> {
        self.check(w)?;
        self.rep.word(&w.0)
    }

    pub fn equal(&self, a: &GroupWord, b: &GroupWord) -> Result<bool> {
        Ok(self.matrix(a)? == self.matrix(b)?)
    }

    pub fn is_identity(&self, w: &GroupWord) -> Result<bool> {
        Ok(self.matrix(w)? == self.rep.identity())
    }

    /// Lexicographically least reduced word, peeling off the smallest left
    /// descent at each step.
    pub fn normal_form(&self, w: &GroupWord, max_len: usize) -> Result<ElementId> {
        self.check(w)?;
        // h = g⁻¹; s is a left descent of g iff h(α_s) < 0
        let mut h = self.rep.word(&w.inverse().0)?;
        let mut out = Vec::new();
        loop {
            let Some(s) = (0..self.m.rank()).find(|&s| self.rep.is_negative(&h[s])) else {
                return Ok(GroupWord(out));
            };
            if out.len() >= max_len {
                return Err(Error::CapExceeded(format!("normal form longer than {max_len}")));
            }
            out.push(s);
            self.rep.right_mul(&mut h, s)?;
        }
    }

    pub fn length(&self, w: &GroupWord) -> Result<usize> {
        Ok(self.normal_form(w, usize::MAX)?.len())
    }

    /// Least `k <= cap` with `w^k = 1`.
    pub fn element_order(&self, w: &GroupWord, cap: u64) -> Result<ElementOrder> {
        let g = self.matrix(w)?;
        let id = self.rep.identity();
        let mut p = g;
        for k in 1..=cap {
            if p == id {
                return Ok(ElementOrder::Finite(k));
            }
            if k == cap {
                break;
            }
            for &s in &w.0 {
                if self.rep.right_mul(&mut p, s).is_err() {
                    return Ok(ElementOrder::ExceedsCap);
                }
            }
        }
        Ok(ElementOrder::ExceedsCap)
    }

    /// A reduced word for the longest element of the spherical parabolic on `j`,
    /// in normal form.
    pub fn longest_element(&self, j: GeneratorSubset) -> Result<ElementId> {
        if !crate::classify::is_spherical_subset(&self.m, j) || !j.is_subset(self.m.all()) {
            return Err(Error::InvalidMove("longest element of a nonspherical parabolic".into()));
        }
        let mut g = self.rep.identity();
        let mut word = Vec::new();
        // g·s is longer than g iff g(α_s) > 0
        while let Some(s) = j.iter().find(|&s| !self.rep.is_negative(&g[s])) {
            word.push(s);
            self.rep.right_mul(&mut g, s)?;
        }
        self.normal_form(&GroupWord(word), usize::MAX)
    }

    /// Order of the group when at most `cap`.
    pub fn enumerate(&self, cap: usize) -> Result<GroupOrder> {
        if let Some(act) = RootAction::new(&self.m)? {
            return Ok(match finite::subgroup_order(&act.gens, &act.identity(), cap) {
                Some(k) => GroupOrder::Order(k as u128),
                None => GroupOrder::ExceedsCap,
            });
        }
        let id = self.rep.identity();
        let mut seen: HashSet<Mat> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for s in 0..self.m.rank() {
                let mut h = g.clone();
                if self.rep.right_mul(&mut h, s).is_err() {
                    return Ok(GroupOrder::ExceedsCap);
                }
                if seen.insert(h.clone()) {
                    if seen.len() > cap {
                        return Ok(GroupOrder::ExceedsCap);
                    }
                    queue.push_back(h);
                }
            }
        }
        Ok(GroupOrder::Order(seen.len() as u128))
    }
}

pub fn normal_form(m: &CoxeterMatrix, w: &GroupWord, max_len: usize) -> Result<ElementId> {
    Oracle::new(m)?.normal_form(w, max_len)
}

pub fn element_order(m: &CoxeterMatrix, w: &GroupWord, cap: u64) -> Result<ElementOrder> {
    Oracle::new(m)?.element_order(w, cap)
}

pub fn enumerate_group(m: &CoxeterMatrix, cap: usize) -> Result<GroupOrder> {
    Oracle::new(m)?.enumerate(cap)
}

pub fn longest_element_word(m: &CoxeterMatrix, j: GeneratorSubset) -> Result<GroupWord> {
    Oracle::new(m)?.longest_element(j)
}

/// `r` with the enumerated abelianization `W/[W,W]` of order `2^r`, for
/// finite groups of order at most `cap`.
pub fn abelian_quotient_rank(m: &CoxeterMatrix, cap: usize) -> Result<Option<usize>> {
    let Some(act) = RootAction::new(m)? else {
        return Ok(None);
    };
    let id = act.identity();
    let Some(order) = finite::subgroup_order(&act.gens, &id, cap) else {
        return Ok(None);
    };
    let n = m.rank();
    let mut commutators: Vec<Perm> = Vec::new();
    for s in 0..n {
        for t in s + 1..n {
            commutators.push(act.word(&[s, t, s, t]));
        }
    }
    let derived = finite::normal_closure_order(&act.gens, &commutators, &id, cap)
        .ok_or_else(|| Error::CapExceeded("derived subgroup".into()))?;
    let quotient = order / derived;
    if !quotient.is_power_of_two() || order % derived != 0 {
        return Err(Error::CapExceeded(
            "abelian quotient is not an elementary 2-group".into(),
        ));
    }
    Ok(Some(quotient.trailing_zeros() as usize))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EntryVerdict {
    /// The observed order equals the claimed finite label.
    Verified,
    /// Claimed `∞` and no power up to the cap is trivial.
    Consistent,
    Mismatch {
        observed: ElementOrder,
    },
    Error(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryCheck {
    pub i: usize,
    pub j: usize,
    pub claimed: u32,
    pub verdict: EntryVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    /// Diagonal entries check that each word is an involution.
    pub entries: Vec<EntryCheck>,
    pub group_order: Option<u128>,
    pub subgroup_order: Option<u128>,
    /// `Some(true)` when the words provably generate the (finite) group.
    pub generates: Option<bool>,
}

impl VerificationReport {
    /// No entry contradicts the claim and generation did not fail.
    pub fn passed(&self) -> bool {
        self.entries
            .iter()
            .all(|e| matches!(e.verdict, EntryVerdict::Verified | EntryVerdict::Consistent))
            && self.generates != Some(false)
    }

    /// Every entry verified exactly and generation confirmed.
    pub fn exact(&self) -> bool {
        self.entries.iter().all(|e| e.verdict == EntryVerdict::Verified) && self.generates == Some(true)
    }

    pub fn finite_entries_verified(&self) -> bool {
        self.entries
            .iter()
            .filter(|e| e.claimed != 0)
            .all(|e| e.verdict == EntryVerdict::Verified)
    }
}

/// Checks that `words` in `m` form a Coxeter generating set of type `claimed`.
pub fn verify_generating_set(
    m: &CoxeterMatrix,
    words: &[GroupWord],
    claimed: &CoxeterMatrix,
    cap: u64,
) -> Result<VerificationReport> {
    if words.len() != claimed.rank() {
        return Err(Error::MalformedInput(format!(
            "{} words for a rank-{} claim",
            words.len(),
            claimed.rank()
        )));
    }
    let oracle = Oracle::new(m)?;
    for w in words {
        oracle.check(w)?;
    }
    let action = RootAction::new(m)?;
    let order_of = |w: &GroupWord| -> Result<ElementOrder> {
        match &action {
            Some(act) => {
                let k = finite::perm_order(&act.word(&w.0));
                Ok(if k <= cap {
                    ElementOrder::Finite(k)
                } else {
                    ElementOrder::ExceedsCap
                })
            }
            None => oracle.element_order(w, cap),
        }
    };
    let mut entries = Vec::new();
    let k = words.len();
    for i in 0..k {
        for j in i..k {
            let claimed_label = claimed.get(i, j);
            let (word, want) = if i == j {
                (words[i].clone(), Some(2))
            } else {
                (words[i].concat(&words[j]), claimed_label.order())
            };
            let verdict = match order_of(&word) {
                Err(e) => EntryVerdict::Error(e.to_string()),
                Ok(obs) => match (want, obs) {
                    (Some(w), ElementOrder::Finite(o)) if u64::from(w) == o => EntryVerdict::Verified,
                    (None, ElementOrder::ExceedsCap) => EntryVerdict::Consistent,
                    (_, observed) => EntryVerdict::Mismatch { observed },
                },
            };
            entries.push(EntryCheck {
                i,
                j,
                claimed: claimed_label.to_code(),
                verdict,
            });
        }
    }
    let (mut group_order, mut subgroup_order, mut generates) = (None, None, None);
    if let Some(act) = &action {
        let id = act.identity();
        let cap = DEFAULT_GROUP_CAP * 10;
        if let Some(total) = finite::subgroup_order(&act.gens, &id, cap) {
            let imgs: Vec<Perm> = words.iter().map(|w| act.word(&w.0)).collect();
            let sub = finite::subgroup_order(&imgs, &id, cap);
            group_order = Some(total as u128);
            subgroup_order = sub.map(|s| s as u128);
            generates = sub.map(|s| s == total);
        }
    }
    Ok(VerificationReport {
        entries,
        group_order,
        subgroup_order,
        generates,
    })
}

/// Words for the blown-up generating set, in the order of [`crate::moves::blow_up`].
pub fn blow_up_words(m: &CoxeterMatrix, pt: &PseudoTransposition) -> Result<Vec<GroupWord>> {
    let wj = longest_element_word(m, pt.j)?;
    let mut words: Vec<GroupWord> = (0..m.rank()).map(GroupWord::letter).collect();
    words[pt.t] = GroupWord(vec![pt.t, pt.v, pt.t]);
    words.push(wj);
    Ok(words)
}

/// Words for the twisted generating set: `w_J b w_J` for `b ∈ B`.
pub fn twist_words(m: &CoxeterMatrix, tw: &TwistDescriptor) -> Result<Vec<GroupWord>> {
    let wj = longest_element_word(m, tw.j)?;
    Ok((0..m.rank())
        .map(|s| {
            if tw.b.contains(s) {
                wj.conjugate(&GroupWord::letter(s))
            } else {
                GroupWord::letter(s)
            }
        })
        .collect())
}

/// For finite systems: words in `m2` forming a Coxeter generating set of
/// type `m1`, which exist exactly when the groups are isomorphic. `Ok(None)`
/// proves non-isomorphism; infinite or oversized groups are an error.
pub fn finite_isomorphism(
    m1: &CoxeterMatrix,
    m2: &CoxeterMatrix,
    group_cap: usize,
    node_cap: u64,
) -> Result<Option<Vec<GroupWord>>> {
    let too_big = || Error::CapExceeded("group not finite within the cap".into());
    let a1 = RootAction::new(m1)?.ok_or_else(too_big)?;
    let a2 = RootAction::new(m2)?.ok_or_else(too_big)?;
    let o1 = finite::subgroup_order(&a1.gens, &a1.identity(), group_cap).ok_or_else(too_big)?;
    let g2 = finite::enumerate(&a2.gens, a2.identity(), group_cap).ok_or_else(too_big)?;
    if o1 != g2.elements.len() {
        return Ok(None);
    }
    if m1.edge_labels().iter().any(|l| l.is_infinite()) {
        return Ok(None);
    }
    let found = finite::find_coxeter_images(m1, &g2, &a2.gens, node_cap)?;
    Ok(found.map(|ks| ks.into_iter().map(|k| g2.words[k].clone()).collect()))
}

/// Whether the root system of `m` is finite (and of manageable size).
pub fn is_finite(m: &CoxeterMatrix) -> Result<bool> {
    Ok(RootAction::new(m)?.is_some())
}
