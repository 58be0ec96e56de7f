//! Finite Coxeter groups as permutation groups on their roots.

use std::collections::{HashMap, HashSet, VecDeque};

use super::rep::Rep;
use super::GroupWord;
use crate::coxsys::CoxeterMatrix;
use crate::error::{Error, Result};

pub(crate) type Perm = Vec<u16>;

pub(crate) fn compose(a: &Perm, b: &Perm) -> Perm {
    // apply b first, then a
    b.iter().map(|&i| a[i as usize]).collect()
}

pub(crate) fn perm_order(p: &Perm) -> u64 {
    let mut seen = vec![false; p.len()];
    let mut order = 1u64;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i] as usize;
            len += 1;
        }
        order = order / gcd(order, len) * len;
    }
    order
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// An upper bound on the number of roots of any finite Coxeter group with
/// the rank and labels of `m`, summed over the possible components
/// (`B_k` has `2k²`, exceptional types at most `30k`, `I2(p)` has `2p`).
fn root_bound(m: &CoxeterMatrix) -> usize {
    let n = m.rank();
    let max_label = m.edge_labels().iter().filter_map(|l| l.order()).max().unwrap_or(2) as usize;
    (2 * n * n + 30 * n + 2 * n * max_label).min(u16::MAX as usize)
}

/// Generators of a finite Coxeter group as permutations of its roots.
pub(crate) struct RootAction {
    pub gens: Vec<Perm>,
}

impl RootAction {
    /// `Ok(None)` when the root orbit is infinite or too large.
    pub fn new(m: &CoxeterMatrix) -> Result<Option<RootAction>> {
        let rep = Rep::new(m)?;
        let Some(roots) = rep.root_orbit(root_bound(m))? else {
            return Ok(None);
        };
        let index: HashMap<&Vec<_>, usize> = roots.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let mut gens = Vec::with_capacity(m.rank());
        for s in 0..m.rank() {
            let mut p = Vec::with_capacity(roots.len());
            for r in &roots {
                let mut img = r.clone();
                rep.reflect(&mut img, s)?;
                p.push(index[&img] as u16);
            }
            gens.push(p);
        }
        Ok(Some(RootAction { gens }))
    }

    pub fn degree(&self) -> usize {
        self.gens.first().map_or(0, Vec::len)
    }

    pub fn identity(&self) -> Perm {
        (0..self.degree() as u16).collect()
    }

    pub fn word(&self, w: &[usize]) -> Perm {
        let mut p = self.identity();
        for &s in w {
            p = compose(&p, &self.gens[s]);
        }
        p
    }
}

/// The elements of the group generated by some permutations, each with a
/// word in those generators (breadth first, so shortest, and least in
/// generator order among equally short ones found first).
pub(crate) struct Enumerated {
    pub elements: Vec<Perm>,
    pub words: Vec<GroupWord>,
    pub index: HashMap<Perm, usize>,
}

pub(crate) fn enumerate(gens: &[Perm], identity: Perm, cap: usize) -> Option<Enumerated> {
    let mut elements = vec![identity.clone()];
    let mut words = vec![GroupWord::identity()];
    let mut index = HashMap::new();
    index.insert(identity, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for (s, g) in gens.iter().enumerate() {
            let next = compose(&elements[k], g);
            if index.contains_key(&next) {
                continue;
            }
            if elements.len() >= cap {
                return None;
            }
            index.insert(next.clone(), elements.len());
            let mut w = words[k].clone();
            w.0.push(s);
            words.push(w);
            elements.push(next);
            queue.push_back(elements.len() - 1);
        }
    }
    Some(Enumerated { elements, words, index })
}

/// Size of the subgroup generated by `gens`, or `None` past `cap`.
pub(crate) fn subgroup_order(gens: &[Perm], identity: &Perm, cap: usize) -> Option<usize> {
    let mut seen: HashSet<Perm> = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity.clone()]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let next = compose(&p, g);
            if seen.insert(next.clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(next);
            }
        }
    }
    Some(seen.len())
}

/// Order of the normal closure of `xs` in the group generated by `gens`.
pub(crate) fn normal_closure_order(gens: &[Perm], xs: &[Perm], identity: &Perm, cap: usize) -> Option<usize> {
    let mut seen: HashSet<Perm> = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity.clone()]);
    let inverses: Vec<Perm> = gens.iter().map(invert).collect();
    while let Some(p) = queue.pop_front() {
        let mut next = Vec::with_capacity(xs.len() + gens.len());
        for x in xs {
            next.push(compose(&p, x));
        }
        for (g, gi) in gens.iter().zip(&inverses) {
            next.push(compose(&compose(g, &p), gi));
        }
        for q in next {
            if seen.insert(q.clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(q);
            }
        }
    }
    Some(seen.len())
}

pub(crate) fn invert(p: &Perm) -> Perm {
    let mut inv = vec![0u16; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j as usize] = i as u16;
    }
    inv
}

/// Searches for involutions of the enumerated group `g2` satisfying the
/// Coxeter relations of `m1` exactly and generating all of `g2`.
pub(crate) fn find_coxeter_images(
    m1: &CoxeterMatrix,
    g2: &Enumerated,
    gens2: &[Perm],
    node_cap: u64,
) -> Result<Option<Vec<usize>>> {
    let n = m1.rank();
    let identity = g2.elements[0].clone();
    if n == 0 {
        return Ok((g2.elements.len() == 1).then(Vec::new));
    }
    let invols: Vec<usize> = (1..g2.elements.len())
        .filter(|&k| compose(&g2.elements[k], &g2.elements[k]) == identity)
        .collect();
    // conjugacy class representatives among involutions for the first image
    let mut class_rep: HashSet<usize> = HashSet::new();
    let mut covered: HashSet<usize> = HashSet::new();
    for &k in &invols {
        if covered.contains(&k) {
            continue;
        }
        class_rep.insert(k);
        let mut stack = vec![k];
        covered.insert(k);
        while let Some(c) = stack.pop() {
            for g in gens2 {
                let conj = compose(&compose(g, &g2.elements[c]), g);
                let ci = g2.index[&conj];
                if covered.insert(ci) {
                    stack.push(ci);
                }
            }
        }
    }
    let mut order_cache: HashMap<(usize, usize), u64> = HashMap::new();
    let mut pair_order = |a: usize, b: usize| -> u64 {
        *order_cache
            .entry((a, b))
            .or_insert_with(|| perm_order(&compose(&g2.elements[a], &g2.elements[b])))
    };
    let mut nodes = 0u64;
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    fn rec(
        m1: &CoxeterMatrix,
        g2: &Enumerated,
        invols: &[usize],
        class_rep: &HashSet<usize>,
        pair_order: &mut dyn FnMut(usize, usize) -> u64,
        chosen: &mut Vec<usize>,
        nodes: &mut u64,
        node_cap: u64,
        identity: &Perm,
    ) -> Result<bool> {
        let n = m1.rank();
        let i = chosen.len();
        if i == n {
            let imgs: Vec<Perm> = chosen.iter().map(|&k| g2.elements[k].clone()).collect();
            return Ok(subgroup_order(&imgs, identity, g2.elements.len()) == Some(g2.elements.len()));
        }
        for &k in invols {
            if i == 0 && !class_rep.contains(&k) {
                continue;
            }
            *nodes += 1;
            if *nodes > node_cap {
                return Err(Error::CapExceeded("isomorphism search nodes".into()));
            }
            let fits = (0..i).all(|j| {
                let want = m1.get(i, j).order().map_or(0, u64::from);
                chosen[j] != k && pair_order(chosen[j], k) == want
            });
            if !fits {
                continue;
            }
            chosen.push(k);
            if rec(m1, g2, invols, class_rep, pair_order, chosen, nodes, node_cap, identity)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
    let found = rec(
        m1,
        g2,
        &invols,
        &class_rep,
        &mut pair_order,
        &mut chosen,
        &mut nodes,
        node_cap,
        &identity,
    )?;
    Ok(found.then_some(chosen))
}
