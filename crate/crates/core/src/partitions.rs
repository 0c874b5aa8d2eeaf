//! Integer partitions and Young-diagram combinatorics.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts must be positive and weakly decreasing: {0:?}")]
    NotCanonical(Vec<i64>),
    #[error("Frobenius coordinates must be strictly decreasing, nonnegative and of equal length")]
    InvalidFrobenius,
}

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Partition(parts))
        } else {
            Err(PartitionError::NotCanonical(
                parts.into_iter().map(i64::from).collect(),
            ))
        }
    }

    /// Validates signed input such as parsed JSON.
    pub fn from_signed(parts: &[i64]) -> Result<Self, PartitionError> {
        let err = || PartitionError::NotCanonical(parts.to_vec());
        let v = parts
            .iter()
            .map(|&p| u32::try_from(p).map_err(|_| err()))
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(v).map_err(|_| err())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `λ_i` with 1-based `i`; zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.part(1);
        Partition(
            (1..=w)
                .map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32)
                .collect(),
        )
    }

    /// Number of diagonal boxes.
    pub fn rank(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .take_while(|(i, &p)| p as usize > *i)
            .count()
    }

    pub fn frobenius(&self) -> Frobenius {
        let t = self.conjugate();
        let k = self.rank();
        Frobenius {
            m: (1..=k).map(|i| self.part(i) - i as u32).collect(),
            n: (1..=k).map(|i| t.part(i) - i as u32).collect(),
        }
    }

    pub fn from_frobenius(f: &Frobenius) -> Partition {
        // rows i ≤ k have length m_i + i; rows below come from the legs
        let k = f.m.len();
        let mut rows: Vec<u32> = (0..k).map(|i| f.m[i] + i as u32 + 1).collect();
        let depth = f.n.first().map(|&n| n as usize + 1).unwrap_or(0);
        for r in k + 1..=depth {
            // row r has one box in each column j with n_j + j ≥ r
            rows.push(
                f.n.iter()
                    .enumerate()
                    .filter(|(j, &n)| n as usize + j + 1 >= r)
                    .count() as u32,
            );
        }
        Partition(rows)
    }

    /// `κ = Σ λ_i (λ_i − 2i + 1)`.
    pub fn kappa(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let (p, i) = (p as i64, i as i64 + 1);
                p * (p - 2 * i + 1)
            })
            .sum()
    }

    /// `κ` from Frobenius coordinates: `Σ (m_i+½)² − (n_i+½)²`.
    pub fn kappa_frobenius(&self) -> i64 {
        let f = self.frobenius();
        // (m+½)² − (n+½)² = (m−n)(m+n+1)
        f.m.iter()
            .zip(&f.n)
            .map(|(&m, &n)| (m as i64 - n as i64) * (m as i64 + n as i64 + 1))
            .sum()
    }

    /// Hook lengths, row by row.
    pub fn hooks(&self) -> Vec<u32> {
        let t = self.conjugate();
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row as usize {
                out.push((row - j as u32 - 1) + (t.0[j] - i as u32 - 1) + 1);
            }
        }
        out
    }

    /// `η ⊆ λ` as Young diagrams.
    pub fn contains(&self, eta: &Partition) -> bool {
        eta.len() <= self.len() && eta.0.iter().zip(&self.0).all(|(e, l)| e <= l)
    }

    /// All partitions of exactly `n`, reverse-lexicographic.
    pub fn of_size(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fill(n, n, &mut cur, &mut out);
        out
    }

    /// All sub-diagrams `η ⊆ self`.
    pub fn subpartitions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        sub_fill(&self.0, u32::MAX, &mut cur, &mut out);
        out.sort_by(|a, b| a.size().cmp(&b.size()).then(b.cmp(a)));
        out
    }
}

fn fill(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for p in (1..=rest.min(max)).rev() {
        cur.push(p);
        fill(rest - p, p, cur, out);
        cur.pop();
    }
}

fn sub_fill(bound: &[u32], max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    out.push(Partition(cur.clone()));
    let i = cur.len();
    if i >= bound.len() {
        return;
    }
    for p in 1..=bound[i].min(max) {
        cur.push(p);
        sub_fill(bound, p, cur, out);
        cur.pop();
    }
}

/// Every partition of size `0..=n`, ordered by size then reverse-lexicographically.
pub fn enumerate_upto(n: u32) -> Vec<Partition> {
    (0..=n).flat_map(Partition::of_size).collect()
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(d)?;
        Partition::from_signed(&v).map_err(serde::de::Error::custom)
    }
}

/// Frobenius coordinates `(m_1 … m_k | n_1 … n_k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Frobenius {
    m: Vec<u32>,
    n: Vec<u32>,
}

impl Frobenius {
    pub fn new(m: Vec<u32>, n: Vec<u32>) -> Result<Self, PartitionError> {
        let strict = |v: &[u32]| v.windows(2).all(|w| w[0] > w[1]);
        if m.len() != n.len() || !strict(&m) || !strict(&n) {
            return Err(PartitionError::InvalidFrobenius);
        }
        Ok(Frobenius { m, n })
    }

    pub fn m(&self) -> &[u32] {
        &self.m
    }

    pub fn n(&self) -> &[u32] {
        &self.n
    }

    pub fn rank(&self) -> usize {
        self.m.len()
    }
}

impl<'de> Deserialize<'de> for Frobenius {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            m: Vec<u32>,
            n: Vec<u32>,
        }
        let r = Raw::deserialize(d)?;
        Frobenius::new(r.m, r.n).map_err(serde::de::Error::custom)
    }
}
