//! The reflection representation over `Z[ζ_N]`.

use std::collections::{HashMap, VecDeque};

use super::cyclotomic::{Cyc, Field};
use crate::coxsys::{CoxeterMatrix, Label};
use crate::error::{Error, Result};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A group element as the images of the simple roots (matrix columns).
pub(crate) type Mat = Vec<Vec<Cyc>>;

/// Simple root `α_s` acts by `σ_s(v) = v + (Σ_j c_sj v_j - 2 v_s) α_s` with
/// `c_sj = 2cos(π/m_sj)` (and `2` for `∞`), so only coordinate `s` moves.
pub(crate) struct Rep {
    pub n: usize,
    pub field: Field,
    c: Vec<Vec<Cyc>>,
}

impl Rep {
    pub fn new(m: &CoxeterMatrix) -> Result<Rep> {
        let n = m.rank();
        let mut l = 1usize;
        for lab in m.edge_labels() {
            if let Label::Finite(k) = lab {
                if k >= 3 {
                    let k = k as usize;
                    l = l / gcd(l, k) * k;
                    if l > 4096 {
                        return Err(Error::CapExceeded("labels need too large a cyclotomic field".into()));
                    }
                }
            }
        }
        let field = Field::new(2 * l)?;
        let cond = field.conductor();
        let c = (0..n)
            .map(|s| {
                (0..n)
                    .map(|j| match m.get(s, j) {
                        Label::One => field.int(2),
                        Label::Finite(2) => field.zero(),
                        Label::Finite(k) => field.two_cos(cond / (2 * k as usize)),
                        Label::Infinity => field.int(2),
                    })
                    .collect()
            })
            .collect();
        Ok(Rep { n, field, c })
    }

    pub fn identity(&self) -> Mat {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| self.field.int((i == j) as i128)).collect())
            .collect()
    }

    pub fn simple_root(&self, s: usize) -> Vec<Cyc> {
        (0..self.n).map(|i| self.field.int((i == s) as i128)).collect()
    }

    pub fn reflect(&self, v: &mut [Cyc], s: usize) -> Result<()> {
        let f = &self.field;
        let mut acc = f.neg(&v[s]);
        for j in 0..self.n {
            if j != s {
                acc = f.add_mul(&acc, &self.c[s][j], &v[j])?;
            }
        }
        v[s] = acc;
        Ok(())
    }

    /// `g · σ_s`.
    pub fn right_mul(&self, g: &mut Mat, s: usize) -> Result<()> {
        let f = &self.field;
        let col_s = g[s].clone();
        for j in 0..self.n {
            if j == s || f.is_zero(&self.c[s][j]) {
                continue;
            }
            for i in 0..self.n {
                g[j][i] = f.add_mul(&g[j][i], &self.c[s][j], &col_s[i])?;
            }
        }
        for x in g[s].iter_mut() {
            *x = f.neg(x);
        }
        Ok(())
    }

    /// Matrix of `s_1 s_2 … s_k`.
    pub fn word(&self, w: &[usize]) -> Result<Mat> {
        let mut g = self.identity();
        for &s in w {
            self.right_mul(&mut g, s)?;
        }
        Ok(g)
    }

    /// Sign of a root; roots have all coordinates of one sign, and the
    /// largest one in absolute value is far from zero.
    pub fn is_negative(&self, v: &[Cyc]) -> bool {
        let mut best = 0.0f64;
        for x in v {
            let val = self.field.to_f64(x);
            if val.abs() > best.abs() {
                best = val;
            }
        }
        best < 0.0
    }

    /// The orbit of the simple roots, or `None` past `cap` roots.
    pub fn root_orbit(&self, cap: usize) -> Result<Option<Vec<Vec<Cyc>>>> {
        let mut index: HashMap<Vec<Cyc>, usize> = HashMap::new();
        let mut roots = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            let r = self.simple_root(s);
            if index.insert(r.clone(), roots.len()).is_none() {
                roots.push(r.clone());
                queue.push_back(r);
            }
        }
        while let Some(r) = queue.pop_front() {
            for s in 0..self.n {
                let mut img = r.clone();
                self.reflect(&mut img, s)?;
                if !index.contains_key(&img) {
                    if roots.len() >= cap {
                        return Ok(None);
                    }
                    index.insert(img.clone(), roots.len());
                    roots.push(img.clone());
                    queue.push_back(img);
                }
            }
        }
        Ok(Some(roots))
    }
}
