//! The framed topological vertex by three routes: the skew-Schur sum, the
//! determinant of `F` entries, and the Bogoliubov determinant of `A`
//! coefficients.

mod cache;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partitions::Partition;
use crate::qnum::matrix::det;
use crate::qnum::{half_lattice_check, qfact, bracket, QRat};
use crate::symfunc::{skew_schur_spec, SpecPoint};

pub use cache::{CacheError, ResultCache};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VertexError {
    #[error("framing must be three comma-separated integers, got {0:?}")]
    BadFraming(String),
    #[error("unknown pipeline {0:?} (expected skew, detf or bog)")]
    BadPipeline(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(from = "[i64; 3]", into = "[i64; 3]")]
pub struct Framing {
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
}

impl Framing {
    pub const ZERO: Framing = Framing { a1: 0, a2: 0, a3: 0 };

    pub fn new(a1: i64, a2: i64, a3: i64) -> Self {
        Framing { a1, a2, a3 }
    }

    /// `a_i` for `i ∈ {1, 2, 3}`.
    pub fn get(&self, i: usize) -> i64 {
        match i {
            1 => self.a1,
            2 => self.a2,
            3 => self.a3,
            _ => panic!("leg index {i} out of range"),
        }
    }

    /// All framings with entries in `lo..=hi`, lexicographic.
    pub fn cube(lo: i64, hi: i64) -> Vec<Framing> {
        let r = lo..=hi;
        r.clone()
            .flat_map(|a| {
                let r = r.clone();
                r.clone()
                    .flat_map(move |b| r.clone().map(move |c| Framing::new(a, b, c)))
            })
            .collect()
    }
}

impl From<[i64; 3]> for Framing {
    fn from(a: [i64; 3]) -> Self {
        Framing::new(a[0], a[1], a[2])
    }
}

impl From<Framing> for [i64; 3] {
    fn from(f: Framing) -> Self {
        [f.a1, f.a2, f.a3]
    }
}

impl fmt::Display for Framing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a1, self.a2, self.a3)
    }
}

impl FromStr for Framing {
    type Err = VertexError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let v: Vec<i64> = s
            .split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| VertexError::BadFraming(s.to_string()))?;
        match v.as_slice() {
            [a, b, c] => Ok(Framing::new(*a, *b, *c)),
            _ => Err(VertexError::BadFraming(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexKey {
    pub mu1: Partition,
    pub mu2: Partition,
    pub mu3: Partition,
    pub framing: Framing,
}

impl VertexKey {
    pub fn new(mu1: Partition, mu2: Partition, mu3: Partition, framing: Framing) -> Self {
        VertexKey {
            mu1,
            mu2,
            mu3,
            framing,
        }
    }

    pub fn leg(&self, i: usize) -> &Partition {
        match i {
            1 => &self.mu1,
            2 => &self.mu2,
            3 => &self.mu3,
            _ => panic!("leg index {i} out of range"),
        }
    }

    /// Canonical JSON used for cache names and CLI records.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("keys serialize")
    }

    /// `q^{Σ a_i κ_i / 2}`.
    pub fn framing_factor(&self) -> QRat {
        let f = &self.framing;
        QRat::q48(24 * (f.a1 * self.mu1.kappa() + f.a2 * self.mu2.kappa() + f.a3 * self.mu3.kappa()))
    }
}

type CoreCache = RwLock<HashMap<(Partition, Partition, Partition), QRat>>;

fn core_cache() -> &'static CoreCache {
    static CACHE: OnceLock<CoreCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Framing-independent part of the skew-Schur formula:
/// `(-1)^{|μ²|} q^{κ₃/2} s_{(μ²)^t}(q^{-ρ}) Σ_η s_{μ¹/η}(q^{(μ²)^t+ρ}) s_{(μ³)^t/η}(q^{μ²+ρ})`.
fn w_skew_core(mu1: &Partition, mu2: &Partition, mu3: &Partition) -> QRat {
    let k = (mu1.clone(), mu2.clone(), mu3.clone());
    if let Some(v) = core_cache().read().unwrap().get(&k) {
        return v.clone();
    }
    let mu2t = mu2.conjugate();
    let mu3t = mu3.conjugate();
    let s1 = SpecPoint::shifted(mu2t.clone());
    let s3 = SpecPoint::shifted(mu2.clone());
    let sum: QRat = mu1
        .subpartitions()
        .into_iter()
        .filter(|eta| mu3t.contains(eta))
        .map(|eta| &skew_schur_spec(mu1, &eta, &s1) * &skew_schur_spec(&mu3t, &eta, &s3))
        .sum();
    let pre = skew_schur_spec(&mu2t, &Partition::empty(), &SpecPoint::NegRho)
        * QRat::q48(24 * mu3.kappa());
    let v = &pre * &sum;
    let v = if mu2.size() % 2 == 1 { -v } else { v };
    core_cache().write().unwrap().insert(k, v.clone());
    v
}

/// `W^{(a)}_{μ¹μ²μ³}` by the skew-Schur sum.
pub fn w_skew(key: &VertexKey) -> QRat {
    &w_skew_core(&key.mu1, &key.mu2, &key.mu3) * &key.framing_factor()
}

fn cyc_next(i: usize) -> usize {
    i % 3 + 1
}

fn sum_over_k<F: Fn(i64) -> i64>(m: u32, n: u32, e48: F) -> QRat {
    (0..=m.min(n))
        .map(|k| QRat::q48(e48(k as i64)) / (qfact(m - k) * qfact(n - k)))
        .sum()
}

/// Unframed coefficient `A^{ij}_{mn}(q)`; indices are cyclic mod 3.
pub fn a_coeff(i: usize, j: usize, m: u32, n: u32) -> QRat {
    let (mi, ni) = (m as i64, n as i64);
    let base = 12 * mi * (mi + 1) - 12 * ni * (ni + 1);
    let sign_n = if n % 2 == 1 { -1 } else { 1 };
    let v = if i == j {
        QRat::q48(base) / (bracket(m + n + 1) * qfact(m) * qfact(n))
    } else if j == cyc_next(i) {
        QRat::q48(base + 8) * sum_over_k(m, n, |l| 24 * (l + 1) * (mi + ni - l))
    } else {
        -(QRat::q48(base - 8) * sum_over_k(m, n, |l| -24 * (l + 1) * (mi + ni - l)))
    };
    if sign_n < 0 {
        -v
    } else {
        v
    }
}

/// `A^{ij}_{mn}(q; a) = q^{(a_i m(m+1) - a_j n(n+1))/2} A^{ij}_{mn}(q)`.
pub fn a_coeff_framed(i: usize, j: usize, m: u32, n: u32, f: &Framing) -> QRat {
    let (mi, ni) = (m as i64, n as i64);
    let e = 24 * (f.get(i) * mi * (mi + 1) - f.get(j) * ni * (ni + 1));
    QRat::q48(e) * a_coeff(i, j, m, n)
}

/// `F^{ij}_{mn}(q; a)` in closed form.
pub fn f_entry(i: usize, j: usize, m: u32, n: u32, f: &Framing) -> QRat {
    let (mi, ni) = (m as i64, n as i64);
    let (ai, aj) = (f.get(i), f.get(j));
    if i == j {
        let e = 12 * (2 * ai + 1) * (mi * mi + mi - ni * ni - ni);
        return QRat::q48(e) / (bracket(m + n + 1) * qfact(m) * qfact(n));
    }
    // (2a_i+1)(m+½)²/4 − (2a_j+1)(n+½)²/4
    let pre = QRat::q48(3 * (2 * ai + 1) * (2 * mi + 1).pow(2) - 3 * (2 * aj + 1) * (2 * ni + 1).pow(2));
    // 3/16 = 9/48 and 1/8 = 6/48
    let shift = if (i, j) == (3, 1) || (i, j) == (1, 3) { 6 } else { 9 };
    if j == cyc_next(i) {
        pre * sum_over_k(m, n, |k| 24 * (k + 1) * (mi + ni - k) + shift)
    } else {
        -(pre * sum_over_k(m, n, |k| -24 * (k + 1) * (mi + ni - k) - shift))
    }
}

/// The monomial `f_ij` with `F^{ij}_{mn} = (-1)^n f_ij A^{ij}_{mn}(q; a)`.
pub fn entry_ratio(i: usize, j: usize, f: &Framing) -> QRat {
    if i == j {
        return QRat::one();
    }
    let d = 6 * (f.get(i) - f.get(j));
    let e = match (i, j) {
        (1, 2) | (2, 3) => d + 1,
        (3, 1) => d - 2,
        (2, 1) | (3, 2) => d - 1,
        (1, 3) => d + 2,
        _ => panic!("leg indices out of range"),
    };
    QRat::q48(e)
}

/// `Π f_{c_s c_{s+1}}` around a cycle, wrapping from the last index to the first.
pub fn cycle_product_check(cycle: &[usize], f: &Framing) -> QRat {
    assert!(!cycle.is_empty(), "cycle must be nonempty");
    (0..cycle.len())
        .map(|s| entry_ratio(cycle[s], cycle[(s + 1) % cycle.len()], f))
        .product()
}

/// Block bookkeeping: row/column `k` belongs to leg `i` and carries the
/// Frobenius coordinates `m^i_{k̄}` and `n^i_{k̄}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FIndex {
    pub legs: Vec<usize>,
    pub ms: Vec<u32>,
    pub ns: Vec<u32>,
}

impl FIndex {
    pub fn new(key: &VertexKey) -> Self {
        let mut ix = FIndex {
            legs: vec![],
            ms: vec![],
            ns: vec![],
        };
        for i in 1..=3 {
            let f = key.leg(i).frobenius();
            for (m, n) in f.m().iter().zip(f.n()) {
                ix.legs.push(i);
                ix.ms.push(*m);
                ix.ns.push(*n);
            }
        }
        ix
    }

    pub fn len(&self) -> usize {
        self.legs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.legs.is_empty()
    }

    /// Indices of block `I_i`, 1-based as in the block sets.
    pub fn block(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.legs[k] == i).map(|k| k + 1).collect()
    }
}

/// Signature of an entry formula `(i, j, m, n, a) ↦ value`.
pub type EntryFn = dyn Fn(usize, usize, u32, u32, &Framing) -> QRat + Sync;

fn build_matrix(key: &VertexKey, entry: &EntryFn) -> Vec<Vec<QRat>> {
    let ix = FIndex::new(key);
    (0..ix.len())
        .map(|k| {
            (0..ix.len())
                .map(|l| entry(ix.legs[k], ix.legs[l], ix.ms[k], ix.ns[l], &key.framing))
                .collect()
        })
        .collect()
}

/// `F̃_{kl} = F^{ij}_{m^i_{k̄} n^j_{l̄}}`.
pub fn build_f_matrix(key: &VertexKey) -> Vec<Vec<QRat>> {
    build_matrix(key, &f_entry)
}

fn b_entry(i: usize, j: usize, m: u32, n: u32, f: &Framing) -> QRat {
    let a = a_coeff_framed(i, j, m, n, f);
    if n % 2 == 1 {
        -a
    } else {
        a
    }
}

/// `B_{kl} = (-1)^{n^j_{l̄}} A^{ij}_{m^i_{k̄} n^j_{l̄}}(q; a)`.
pub fn build_b_matrix(key: &VertexKey) -> Vec<Vec<QRat>> {
    build_matrix(key, &b_entry)
}

pub fn w_det_f(key: &VertexKey) -> QRat {
    det(&build_f_matrix(key))
}

/// `det F̃` with a caller-supplied entry formula.
pub fn w_det_f_with(key: &VertexKey, entry: &EntryFn) -> QRat {
    det(&build_matrix(key, entry))
}

pub fn w_bogoliubov(key: &VertexKey) -> QRat {
    det(&build_b_matrix(key))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pipeline {
    Skew,
    Detf,
    Bog,
}

impl Pipeline {
    pub const ALL: [Pipeline; 3] = [Pipeline::Skew, Pipeline::Detf, Pipeline::Bog];

    pub fn name(&self) -> &'static str {
        match self {
            Pipeline::Skew => "skew",
            Pipeline::Detf => "detf",
            Pipeline::Bog => "bog",
        }
    }

    pub fn run(&self, key: &VertexKey, entry: Option<&EntryFn>) -> QRat {
        match (self, entry) {
            (Pipeline::Skew, _) => w_skew(key),
            (Pipeline::Detf, Some(e)) => w_det_f_with(key, e),
            (Pipeline::Detf, None) => w_det_f(key),
            (Pipeline::Bog, _) => w_bogoliubov(key),
        }
    }
}

impl FromStr for Pipeline {
    type Err = VertexError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "skew" => Ok(Pipeline::Skew),
            "detf" => Ok(Pipeline::Detf),
            "bog" => Ok(Pipeline::Bog),
            other => Err(VertexError::BadPipeline(other.to_string())),
        }
    }
}

/// One computed key: the value of the first selected pipeline and whether
/// every selected pipeline produced the same value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub key: VertexKey,
    pub w: QRat,
    pub pipelines_agree: bool,
    pub half_lattice: bool,
}

/// Runs each pipeline on `key`; also returns every individual value.
pub fn evaluate(
    key: &VertexKey,
    pipelines: &[Pipeline],
    entry: Option<&EntryFn>,
) -> (VertexRecord, Vec<(Pipeline, QRat)>) {
    assert!(!pipelines.is_empty(), "at least one pipeline");
    let values: Vec<(Pipeline, QRat)> = pipelines.iter().map(|p| (*p, p.run(key, entry))).collect();
    let w = values[0].1.clone();
    let agree = values.iter().all(|(_, v)| *v == w);
    let half = values.iter().all(|(_, v)| half_lattice_check(v));
    (
        VertexRecord {
            key: key.clone(),
            w,
            pipelines_agree: agree,
            half_lattice: half,
        },
        values,
    )
}

/// Non-gating diagnostic: `W(μ¹,μ²,μ³) = W(μ²,μ³,μ¹)` at zero framing.
pub fn cyclic_symmetry_holds(mu1: &Partition, mu2: &Partition, mu3: &Partition) -> bool {
    let a = w_skew(&VertexKey::new(mu1.clone(), mu2.clone(), mu3.clone(), Framing::ZERO));
    let b = w_skew(&VertexKey::new(mu2.clone(), mu3.clone(), mu1.clone(), Framing::ZERO));
    a == b
}
