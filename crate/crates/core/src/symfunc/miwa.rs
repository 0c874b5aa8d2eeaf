//! Truncated polynomials in weighted variables with rational coefficients.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::partitions::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MiwaError {
    #[error("variable cutoff {k} is smaller than |μ| = {size}")]
    CutoffTooSmall { k: usize, size: u32 },
}

/// Sparse polynomial over ℚ. Variable `i` has weight `weights[i]`; every
/// product is truncated to weighted degree at most `bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MiwaPoly {
    weights: Vec<u32>,
    bound: u32,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MiwaPoly {
    pub fn zero(weights: Vec<u32>, bound: u32) -> Self {
        MiwaPoly {
            weights,
            bound,
            terms: BTreeMap::new(),
        }
    }

    /// The standard Miwa ring: `t_1 … t_K` with weight of `t_k` equal to `k`.
    pub fn miwa_zero(k: usize, bound: u32) -> Self {
        Self::zero((1..=k as u32).collect(), bound)
    }

    pub fn constant_like(&self, c: BigRational) -> Self {
        let mut p = Self::zero(self.weights.clone(), self.bound);
        if !c.is_zero() {
            p.terms.insert(vec![0; self.weights.len()], c);
        }
        p
    }

    pub fn one_like(&self) -> Self {
        self.constant_like(BigRational::one())
    }

    pub fn zero_like(&self) -> Self {
        Self::zero(self.weights.clone(), self.bound)
    }

    /// The variable with index `i`, or zero if its weight exceeds the bound.
    pub fn var_like(&self, i: usize) -> Self {
        self.monomial_like(
            {
                let mut e = vec![0; self.weights.len()];
                e[i] = 1;
                e
            },
            BigRational::one(),
        )
    }

    pub fn monomial_like(&self, expo: Vec<u32>, c: BigRational) -> Self {
        let mut p = self.zero_like();
        if !c.is_zero() && self.weight_of(&expo) <= self.bound {
            p.terms.insert(expo, c);
        }
        p
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, expo: &[u32]) -> BigRational {
        self.terms.get(expo).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn weight_of(&self, expo: &[u32]) -> u32 {
        expo.iter().zip(&self.weights).map(|(e, w)| e * w).sum()
    }

    /// Adds `c · x^expo` in place.
    pub fn add_term(&mut self, expo: Vec<u32>, c: BigRational) {
        if c.is_zero() || self.weight_of(&expo) > self.bound {
            return;
        }
        match self.terms.entry(expo) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = self.zero_like();
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect();
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.weights, other.weights);
        let mut out = self.zero_like();
        for (ea, ca) in &self.terms {
            let wa = self.weight_of(ea);
            for (eb, cb) in &other.terms {
                if wa + other.weight_of(eb) > self.bound {
                    continue;
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(self.one_like(), |acc, _| acc.mul(self))
    }

    /// Keeps only the part of weighted degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            if self.weight_of(e) == d {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    /// Same polynomial with a different truncation bound.
    pub fn with_bound(&self, bound: u32) -> Self {
        let mut out = Self::zero(self.weights.clone(), bound);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    /// `∂/∂x_i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, c * BigRational::from_integer(e[i].into()));
        }
        out
    }

    /// Every exponent vector of weighted degree at most `d`.
    pub fn monomials_upto(weights: &[u32], d: u32) -> Vec<Vec<u32>> {
        fn go(w: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i == w.len() {
                out.push(cur.clone());
                return;
            }
            let max = if w[i] == 0 { 0 } else { left / w[i] };
            for e in 0..=max {
                cur.push(e);
                go(w, i + 1, left - e * w[i], cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(weights, 0, d, &mut Vec::new(), &mut out);
        out
    }
}

impl Serialize for MiwaPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            expo: &'a [u32],
            coeff: String,
        }
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            seq.serialize_element(&Term {
                expo: e,
                coeff: c.to_string(),
            })?;
        }
        seq.end()
    }
}

/// `h_0 … h_n` in `t_1 … t_K`, from `Σ h_k z^k = exp(Σ t_k z^k)`.
fn h_miwa(k: usize, n: u32, bound: u32) -> Vec<MiwaPoly> {
    let base = MiwaPoly::miwa_zero(k, bound);
    let mut h = vec![base.one_like()];
    // j h_j = Σ_{i=1}^{j} i t_i h_{j-i}
    for j in 1..=n as usize {
        let mut acc = base.zero_like();
        for i in 1..=j.min(k) {
            let term = base.var_like(i - 1).mul(&h[j - i]);
            acc = acc.add(&term.scale(&BigRational::from_integer((i as i64).into())));
        }
        h.push(acc.scale(&BigRational::new(1.into(), (j as i64).into())));
    }
    h
}

fn det_poly(m: &[Vec<MiwaPoly>], like: &MiwaPoly) -> MiwaPoly {
    let n = m.len();
    if n == 0 {
        return like.one_like();
    }
    let mut total = like.zero_like();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MiwaPoly>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let t = m[0][j].mul(&det_poly(&minor, like));
        total = if j % 2 == 0 { total.add(&t) } else { total.sub(&t) };
    }
    total
}

/// `s_μ(t_1, …, t_K)` truncated at weighted degree `d`, by Jacobi–Trudi in
/// `h` or, for tall diagrams, the dual determinant in `e_k(t) = (-1)^k h_k(-t)`.
pub fn schur_miwa(mu: &Partition, k: usize, d: u32) -> Result<MiwaPoly, MiwaError> {
    if k < mu.size() as usize {
        return Err(MiwaError::CutoffTooSmall { k, size: mu.size() });
    }
    let dual = mu.len() > mu.part(1) as usize;
    let shape = if dual { mu.conjugate() } else { mu.clone() };
    let l = shape.len();
    let mut h = h_miwa(k, shape.part(1) + l as u32, d);
    if dual {
        for (j, hj) in h.iter_mut().enumerate() {
            *hj = negate_vars(hj);
            if j % 2 == 1 {
                *hj = hj.scale(&-BigRational::one());
            }
        }
    }
    let like = MiwaPoly::miwa_zero(k, d);
    let m: Vec<Vec<MiwaPoly>> = (1..=l)
        .map(|i| {
            (1..=l)
                .map(|j| {
                    let idx = shape.part(i) as i64 - i as i64 + j as i64;
                    if idx < 0 {
                        like.zero_like()
                    } else {
                        h[idx as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    Ok(det_poly(&m, &like))
}

/// `p(t) ↦ p(-t)`.
fn negate_vars(p: &MiwaPoly) -> MiwaPoly {
    let mut out = p.zero_like();
    for (e, c) in p.terms() {
        let odd = e.iter().sum::<u32>() % 2 == 1;
        out.add_term(e.clone(), if odd { -c.clone() } else { c.clone() });
    }
    out
}
