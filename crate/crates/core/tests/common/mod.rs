//! Independent dense mod-p reference implementation used to cross-check the
//! library. It shares no code with the crate beyond reading coefficients.

#![allow(dead_code)]

use ulrich::{NumericalSemigroup, TruncatedSeries};

pub struct Oracle {
    pub p: u64,
    pub n: usize,
    member: Vec<bool>,
}

fn inv(x: u64, p: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, x % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

impl Oracle {
    pub fn new(h: &NumericalSemigroup, p: u64, n: usize) -> Self {
        Oracle {
            p,
            n,
            member: (0..n).map(|i| h.contains_usize(i)).collect(),
        }
    }

    pub fn dense(&self, s: &TruncatedSeries) -> Vec<u64> {
        let mut v = vec![0; self.n];
        for (e, c) in s.terms() {
            if e < self.n {
                v[e] = c.residue().expect("prime field");
            }
        }
        v
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0; self.n];
        for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (j, &y) in b[..self.n - i].iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        out
    }

    fn order(v: &[u64]) -> Option<usize> {
        v.iter().position(|&x| x != 0)
    }

    /// Pivot columns of the span of `t^h x` over members `h`, `x` in `gens`.
    pub fn ideal_pivots(&self, gens: &[Vec<u64>]) -> Vec<usize> {
        let p = self.p;
        let mut rows: Vec<Option<Vec<u64>>> = vec![None; self.n];
        for g in gens {
            let Some(o) = Self::order(g) else { continue };
            for h in (0..self.n - o).filter(|&h| self.member[h]) {
                let mut v = vec![0; self.n];
                v[h..].copy_from_slice(&g[..self.n - h]);
                for i in 0..self.n {
                    if v[i] == 0 {
                        continue;
                    }
                    match &rows[i] {
                        Some(r) => {
                            let c = p - v[i];
                            for j in i..self.n {
                                v[j] = (v[j] + c * r[j]) % p;
                            }
                        }
                        None => {
                            let c = inv(v[i], p);
                            for x in v[i..].iter_mut() {
                                *x = *x * c % p;
                            }
                            rows[i] = Some(v);
                            break;
                        }
                    }
                }
            }
        }
        (0..self.n).filter(|&i| rows[i].is_some()).collect()
    }

    /// Members of `H` below `n` missing from the values of the ideal.
    pub fn colength(&self, gens: &[Vec<u64>]) -> usize {
        let piv = self.ideal_pivots(gens);
        (0..self.n).filter(|&i| self.member[i] && !piv.contains(&i)).count()
    }

    /// `I^2 = f I` for `I = (f, g)`, exact when `n >= 2 o(f) + c`.
    pub fn square_equals_fi(&self, f: &[u64], g: &[u64]) -> bool {
        let ff = self.mul(f, f);
        let fg = self.mul(f, g);
        let gg = self.mul(g, g);
        self.ideal_pivots(&[ff.clone(), fg.clone(), gg]) == self.ideal_pivots(&[ff, fg])
    }

    /// Ulrich via the length criterion: `l(A/I) < a`, `I^2 = f I`,
    /// `a = 2 l(A/I)`, with `f` of least order.
    pub fn is_ulrich(&self, f: &[u64], g: &[u64]) -> bool {
        let (f, g) = if Self::order(f) <= Self::order(g) { (f, g) } else { (g, f) };
        let a = Self::order(f).expect("nonzero");
        let l = self.colength(&[f.to_vec(), g.to_vec()]);
        l < a && a == 2 * l && self.square_equals_fi(f, g)
    }
}
