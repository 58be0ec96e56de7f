//! Exact arithmetic in `Z[ζ_N]` with checked `i128` coefficients.

use crate::error::{Error, Result};

const MAX_CONDUCTOR: usize = 4096;

fn overflow() -> Error {
    Error::CapExceeded("cyclotomic coefficient overflow".into())
}

/// Integer polynomial, lowest degree first.
type Poly = Vec<i128>;

fn poly_div_exact(num: &Poly, den: &Poly) -> Poly {
    let mut rem = num.clone();
    let dd = den.len() - 1;
    let lead = *den.last().expect("nonzero divisor");
    let mut q = vec![0i128; rem.len().saturating_sub(dd)];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd] / lead;
        q[k] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k + i] -= c * d;
        }
    }
    q
}

fn cyclotomic_poly(n: usize) -> Poly {
    // Φ_n = (x^n - 1) / Π_{d | n, d < n} Φ_d, built bottom-up over the divisors
    let divisors: Vec<usize> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut known: Vec<Poly> = Vec::with_capacity(divisors.len());
    for (i, &m) in divisors.iter().enumerate() {
        let mut p = vec![0i128; m + 1];
        p[0] = -1;
        p[m] = 1;
        for (j, &d) in divisors[..i].iter().enumerate() {
            if m % d == 0 {
                p = poly_div_exact(&p, &known[j]);
            }
        }
        known.push(p);
    }
    known.pop().expect("n has itself as a divisor")
}

/// The ring `Z[ζ_N]`, elements stored in the power basis `1, ζ, …, ζ^{d-1}`.
#[derive(Clone, Debug)]
pub(crate) struct Field {
    n: usize,
    d: usize,
    /// `ζ^k` reduced, for `0 <= k < max(n, 2d)`.
    powers: Vec<Vec<i128>>,
    cos: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Cyc(Box<[i128]>);

impl Field {
    pub fn new(n: usize) -> Result<Field> {
        if n == 0 || n > MAX_CONDUCTOR {
            return Err(Error::CapExceeded(format!("cyclotomic conductor {n} too large")));
        }
        let phi = cyclotomic_poly(n);
        let d = phi.len() - 1;
        let count = n.max(2 * d);
        let mut powers = Vec::with_capacity(count);
        let mut cur = vec![0i128; d];
        cur[0] = 1;
        for _ in 0..count {
            powers.push(cur.clone());
            // multiply by x and reduce by the monic Φ
            let top = cur[d - 1];
            for i in (1..d).rev() {
                cur[i] = cur[i - 1] - top * phi[i];
            }
            cur[0] = -top * phi[0];
        }
        let cos = (0..d)
            .map(|k| (2.0 * std::f64::consts::PI * k as f64 / n as f64).cos())
            .collect();
        Ok(Field { n, d, powers, cos })
    }

    pub fn conductor(&self) -> usize {
        self.n
    }

    pub fn zero(&self) -> Cyc {
        Cyc(vec![0; self.d].into_boxed_slice())
    }

    pub fn int(&self, k: i128) -> Cyc {
        let mut v = vec![0; self.d];
        v[0] = k;
        Cyc(v.into_boxed_slice())
    }

    /// `ζ^a + ζ^{-a}`.
    pub fn two_cos(&self, a: usize) -> Cyc {
        let a = a % self.n;
        let b = (self.n - a) % self.n;
        let v: Vec<i128> = (0..self.d).map(|i| self.powers[a][i] + self.powers[b][i]).collect();
        Cyc(v.into_boxed_slice())
    }

    pub fn is_zero(&self, a: &Cyc) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &Cyc, b: &Cyc) -> Result<Cyc> {
        let v =
            a.0.iter()
                .zip(b.0.iter())
                .map(|(x, y)| x.checked_add(*y).ok_or_else(overflow));
        Ok(Cyc(v.collect::<Result<Vec<_>>>()?.into_boxed_slice()))
    }

    pub fn neg(&self, a: &Cyc) -> Cyc {
        Cyc(a.0.iter().map(|x| -x).collect())
    }

    pub fn mul(&self, a: &Cyc, b: &Cyc) -> Result<Cyc> {
        let d = self.d;
        let nz_a: Vec<(usize, i128)> = a.0.iter().copied().enumerate().filter(|p| p.1 != 0).collect();
        if nz_a.is_empty() {
            return Ok(self.zero());
        }
        let mut conv = vec![0i128; 2 * d];
        for &(i, x) in &nz_a {
            for (j, &y) in b.0.iter().enumerate() {
                if y != 0 {
                    let p = x.checked_mul(y).ok_or_else(overflow)?;
                    conv[i + j] = conv[i + j].checked_add(p).ok_or_else(overflow)?;
                }
            }
        }
        let mut out = conv[..d].to_vec();
        for (k, &c) in conv.iter().enumerate().skip(d) {
            if c == 0 {
                continue;
            }
            for (o, &p) in out.iter_mut().zip(self.powers[k].iter()) {
                if p != 0 {
                    let t = c.checked_mul(p).ok_or_else(overflow)?;
                    *o = o.checked_add(t).ok_or_else(overflow)?;
                }
            }
        }
        Ok(Cyc(out.into_boxed_slice()))
    }

    /// `a + c * b`.
    pub fn add_mul(&self, a: &Cyc, c: &Cyc, b: &Cyc) -> Result<Cyc> {
        if self.is_zero(c) || self.is_zero(b) {
            return Ok(a.clone());
        }
        self.add(a, &self.mul(c, b)?)
    }

    /// Real part of the complex value.
    pub fn to_f64(&self, a: &Cyc) -> f64 {
        a.0.iter().zip(&self.cos).map(|(&c, &k)| c as f64 * k).sum()
    }
}
