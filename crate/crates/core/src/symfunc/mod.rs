//! Schur and skew-Schur functions at the principal specializations
//! `q^{±ρ}` and `q^{μ+ρ}`, plus Schur polynomials in Miwa variables.

mod miwa;

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use crate::partitions::Partition;
use crate::qnum::matrix::det;
use crate::qnum::{bracket, qfact, QRat, HALF};

pub use miwa::{schur_miwa, MiwaError, MiwaPoly};

/// An infinite alphabet: `q^ρ = (q^{-1/2}, q^{-3/2}, …)`, its inverse
/// `q^{-ρ}`, or the shift `q^{μ+ρ}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpecPoint {
    Rho,
    NegRho,
    Shifted(Partition),
}

impl SpecPoint {
    /// `q^{μ+ρ}`, normalised so that `q^{∅+ρ}` is `Rho`.
    pub fn shifted(mu: Partition) -> Self {
        if mu.is_empty() {
            SpecPoint::Rho
        } else {
            SpecPoint::Shifted(mu)
        }
    }
}

/// `q^{k/2}` in the `t = q^{1/48}` lattice.
fn qhalf(k: i64) -> QRat {
    QRat::q48(HALF * k)
}

/// `p_n` at the given alphabet.
pub fn power_sum_spec(n: u32, s: &SpecPoint) -> QRat {
    assert!(n >= 1, "power sums start at p_1");
    let base = bracket(n).recip().expect("[n] != 0 for n >= 1");
    match s {
        SpecPoint::Rho => base,
        SpecPoint::NegRho => -base,
        SpecPoint::Shifted(mu) => {
            let n = n as i64;
            let mut acc = base;
            for (i, &m) in mu.parts().iter().enumerate() {
                let i = i as i64 + 1;
                acc = &acc + &(qhalf(n * (2 * m as i64 - 2 * i + 1)) - qhalf(n * (1 - 2 * i)));
            }
            acc
        }
    }
}

/// Closed forms `h_k(q^ρ) = q^{k(k-1)/4}/[k]!` and
/// `h_k(q^{-ρ}) = (-1)^k q^{-k(k-1)/4}/[k]!`.
fn h_closed(k: u32, negative: bool) -> QRat {
    let k64 = k as i64;
    let e = 12 * k64 * (k64 - 1);
    let v = QRat::q48(if negative { -e } else { e }) / qfact(k);
    if negative && k % 2 == 1 {
        -v
    } else {
        v
    }
}

type SeriesCache = RwLock<HashMap<SpecPoint, Vec<QRat>>>;

fn h_cache() -> &'static SeriesCache {
    static CACHE: OnceLock<SeriesCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `h_0, …, h_k` at `s`. Shifted alphabets are the base series `H_ρ(z)`
/// times `Π_i (1 - q^{-i+1/2} z)/(1 - q^{μ_i-i+1/2} z)`, truncated at `z^k`.
pub fn h_series(k: u32, s: &SpecPoint) -> Vec<QRat> {
    let want = k as usize + 1;
    if let Some(v) = h_cache().read().unwrap().get(s) {
        if v.len() >= want {
            return v[..want].to_vec();
        }
    }
    let series = compute_h_series(k, s);
    let mut w = h_cache().write().unwrap();
    let slot = w.entry(s.clone()).or_default();
    if slot.len() < series.len() {
        *slot = series.clone();
    }
    series
}

fn compute_h_series(k: u32, s: &SpecPoint) -> Vec<QRat> {
    match s {
        SpecPoint::Rho => (0..=k).map(|j| h_closed(j, false)).collect(),
        SpecPoint::NegRho => (0..=k).map(|j| h_closed(j, true)).collect(),
        SpecPoint::Shifted(mu) => {
            let mut c: Vec<QRat> = (0..=k).map(|j| h_closed(j, false)).collect();
            for (i, &m) in mu.parts().iter().enumerate() {
                let i = i as i64 + 1;
                let a = qhalf(1 - 2 * i);
                let b = qhalf(2 * m as i64 - 2 * i + 1);
                // multiply by (1 - a z), then divide by (1 - b z)
                for j in (1..c.len()).rev() {
                    let t = &a * &c[j - 1];
                    c[j] = &c[j] - &t;
                }
                for j in 1..c.len() {
                    let t = &b * &c[j - 1];
                    c[j] = &c[j] + &t;
                }
            }
            c
        }
    }
}

/// Complete homogeneous `h_k` at `s`.
pub fn h_spec(k: u32, s: &SpecPoint) -> QRat {
    h_series(k, s).pop().expect("series is nonempty")
}

/// `h_k` from power sums by Newton's identities `k h_k = Σ_{i=1}^k p_i h_{k-i}`.
pub fn h_newton(k: u32, s: &SpecPoint) -> QRat {
    let p: Vec<QRat> = (1..=k).map(|n| power_sum_spec(n, s)).collect();
    let mut h = vec![QRat::one()];
    for j in 1..=k as usize {
        let sum: QRat = (1..=j).map(|i| &p[i - 1] * &h[j - i]).sum();
        h.push(sum.scale(&num_rational::BigRational::new(1.into(), (j as i64).into())));
    }
    h.pop().unwrap()
}

/// `e_0, …, e_k` at `s`, from `E(z) H(-z) = 1`.
pub fn e_series(k: u32, s: &SpecPoint) -> Vec<QRat> {
    let h = h_series(k, s);
    let mut e = vec![QRat::one()];
    for j in 1..=k as usize {
        let mut acc = QRat::zero();
        for i in 1..=j {
            let t = &h[i] * &e[j - i];
            acc = if i % 2 == 1 { &acc + &t } else { &acc - &t };
        }
        e.push(acc);
    }
    e
}

pub fn e_spec(k: u32, s: &SpecPoint) -> QRat {
    e_series(k, s).pop().unwrap()
}

/// `det(c_{λ_i - η_j - i + j})` of size `ℓ(λ)`, with `c_0 = 1` and `c_{<0} = 0`.
pub fn jacobi_trudi<F: Fn(usize) -> QRat>(lam: &Partition, eta: &Partition, c: F) -> QRat {
    if !lam.contains(eta) {
        return QRat::zero();
    }
    let l = lam.len();
    let m: Vec<Vec<QRat>> = (1..=l)
        .map(|i| {
            (1..=l)
                .map(|j| {
                    let d = lam.part(i) as i64 - eta.part(j) as i64 - i as i64 + j as i64;
                    match d {
                        d if d < 0 => QRat::zero(),
                        0 => QRat::one(),
                        d => c(d as usize),
                    }
                })
                .collect()
        })
        .collect();
    det(&m)
}

/// `s_{λ/η}` at `s` via the `h` Jacobi–Trudi determinant; zero unless `η ⊆ λ`.
pub fn skew_schur_spec(lam: &Partition, eta: &Partition, s: &SpecPoint) -> QRat {
    if !lam.contains(eta) {
        return QRat::zero();
    }
    if lam == eta {
        return QRat::one();
    }
    let top = lam.part(1) + lam.len() as u32;
    let h = h_series(top, s);
    jacobi_trudi(lam, eta, |k| h[k].clone())
}

/// `s_{λ/η}` via the dual determinant `det(e_{λ^t_i - η^t_j - i + j})`.
pub fn skew_schur_spec_dual(lam: &Partition, eta: &Partition, s: &SpecPoint) -> QRat {
    let (lt, et) = (lam.conjugate(), eta.conjugate());
    let top = lt.part(1) + lt.len() as u32;
    let e = e_series(top, s);
    jacobi_trudi(&lt, &et, |k| e[k].clone())
}

/// Hook-length formula `s_μ(q^ρ) = q^{κ_μ/4}/Π[h]`; with `negative`,
/// `s_μ(q^{-ρ}) = (-1)^{|μ|} q^{-κ_μ/4}/Π[h]`.
pub fn schur_rho_hook(mu: &Partition, negative: bool) -> QRat {
    let kappa = mu.kappa();
    let hooks: QRat = mu.hooks().into_iter().map(bracket).product();
    let v = QRat::q48(if negative { -12 * kappa } else { 12 * kappa }) / hooks;
    if negative && mu.size() % 2 == 1 {
        -v
    } else {
        v
    }
}

/// `s_ν(q^{μ+ρ})` by the identity
/// `(-1)^{|ν|} q^{κ_ν/2} Σ_η s_{μ/η}(q^{-ρ}) s_{ν/η}(q^{-ρ}) / s_μ(q^{-ρ})`.
pub fn schur_lower_spec(nu: &Partition, mu: &Partition) -> QRat {
    let neg = SpecPoint::NegRho;
    let sum: QRat = mu
        .subpartitions()
        .iter()
        .filter(|eta| nu.contains(eta))
        .map(|eta| &skew_schur_spec(mu, eta, &neg) * &skew_schur_spec(nu, eta, &neg))
        .sum();
    let v = QRat::q48(24 * nu.kappa()) * sum / schur_rho_hook(mu, true);
    if nu.size() % 2 == 1 {
        -v
    } else {
        v
    }
}

/// `s_{(m)}(q^{(n)+ρ})` as the closed sum over `k ≤ min(m, n)`.
pub fn hook_sum_row(m: u32, n: u32) -> QRat {
    let (mi, ni) = (m as i64, n as i64);
    (0..=m.min(n))
        .map(|k| {
            let ki = k as i64;
            // exponent −k²/2 − k/2 + km/2 + kn/2 + m²/4 − m/4, in units of 1/48
            let e = -24 * ki * ki - 24 * ki + 24 * ki * mi + 24 * ki * ni + 12 * mi * mi - 12 * mi;
            QRat::q48(e) * qfact(n) / (qfact(n - k) * qfact(m - k))
        })
        .sum()
}

/// `s_{(1^n)}(q^{(1^m)+ρ})` as the closed sum over `k ≤ min(m, n)`.
pub fn hook_sum_col(m: u32, n: u32) -> QRat {
    let (mi, ni) = (m as i64, n as i64);
    (0..=m.min(n))
        .map(|k| {
            let ki = k as i64;
            let e = 24 * ki * ki + 24 * ki - 24 * ki * mi - 24 * ki * ni - 12 * ni * ni + 12 * ni;
            QRat::q48(e) * qfact(m) / (qfact(n - k) * qfact(m - k))
        })
        .sum()
}
