//! Word rewriting by braid moves and cancellation of equal adjacent letters.

use std::collections::{BTreeSet, VecDeque};

use super::GroupWord;
use crate::coxsys::CoxeterMatrix;
use crate::error::{Error, Result};

fn braid_neighbours(m: &CoxeterMatrix, w: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..w.len().saturating_sub(1) {
        let (s, t) = (w[i], w[i + 1]);
        if s == t {
            continue;
        }
        let Some(k) = m.get(s, t).order() else { continue };
        let k = k as usize;
        if i + k > w.len() {
            continue;
        }
        let alternating = (0..k).all(|p| w[i + p] == if p % 2 == 0 { s } else { t });
        if alternating {
            let mut v = w.to_vec();
            for p in 0..k {
                v[i + p] = if p % 2 == 0 { t } else { s };
            }
            out.push(v);
        }
    }
    out
}

/// Least reduced word equal to `w`, by exploring the braid-move class and
/// cancelling `ss` whenever it appears. `cap` bounds the size of the class.
pub fn braid_normal_form(m: &CoxeterMatrix, w: &GroupWord, cap: usize) -> Result<GroupWord> {
    if let Some(s) = w.0.iter().find(|&&s| s >= m.rank()) {
        return Err(Error::MalformedInput(format!("letter {s} out of range")));
    }
    let mut current = w.0.clone();
    'restart: loop {
        let mut class: BTreeSet<Vec<usize>> = BTreeSet::from([current.clone()]);
        let mut queue = VecDeque::from([current.clone()]);
        while let Some(v) = queue.pop_front() {
            if let Some(i) = (0..v.len().saturating_sub(1)).find(|&i| v[i] == v[i + 1]) {
                let mut shorter = v.clone();
                shorter.drain(i..i + 2);
                current = shorter;
                continue 'restart;
            }
            for nb in braid_neighbours(m, &v) {
                if class.insert(nb.clone()) {
                    if class.len() > cap {
                        return Err(Error::CapExceeded(format!("braid class larger than {cap}")));
                    }
                    queue.push_back(nb);
                }
            }
        }
        let least = class.into_iter().next().expect("class contains current");
        return Ok(GroupWord(least));
    }
}
