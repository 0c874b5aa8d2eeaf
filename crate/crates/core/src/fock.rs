//! Charged free-fermion Fock space truncated to finitely many basis wedges.
//!
//! A basis wedge `z^{a_1} ∧ z^{a_2} ∧ …` with charge `c` and shape `μ` has
//! levels `a_i = i - 1/2 - μ_i - c`. Levels are stored doubled, as odd
//! integers.

use std::collections::BTreeMap;

use num_rational::BigRational;
use thiserror::Error;

use crate::partitions::{enumerate_upto, Partition};
use crate::qnum::matrix::det;
use crate::qnum::QRat;
use crate::symfunc::{h_series, jacobi_trudi, SpecPoint};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FockError {
    #[error("Γ₋ needs an explicit size cutoff")]
    MissingCutoff,
    #[error("determinant form needs an alternating φ φ* … sequence")]
    ShapeMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisState {
    pub charge: i64,
    pub shape: Partition,
}

impl BasisState {
    pub fn new(charge: i64, shape: Partition) -> Self {
        BasisState { charge, shape }
    }

    pub fn vacuum() -> Self {
        Self::new(0, Partition::empty())
    }

    pub fn shape(shape: Partition) -> Self {
        Self::new(0, shape)
    }

    /// Doubled level `2a_i` for 1-based `i`.
    fn level(&self, i: usize) -> i64 {
        2 * i as i64 - 1 - 2 * self.shape.part(i) as i64 - 2 * self.charge
    }

    /// The first `m` doubled levels; the rest continue as `2i - 1 - 2c`.
    pub fn levels(&self, m: usize) -> Vec<i64> {
        (1..=m).map(|i| self.level(i)).collect()
    }

    /// Smallest window whose implicit tail starts above doubled level `x`.
    fn window_above(&self, x: i64) -> usize {
        let mut m = self.shape.len();
        while 2 * m as i64 + 1 - 2 * self.charge <= x {
            m += 1;
        }
        m
    }

    fn from_levels(levels: &[i64], charge: i64) -> BasisState {
        let mut parts: Vec<u32> = levels
            .iter()
            .enumerate()
            .map(|(i, &l)| {
                let twice = 2 * (i as i64 + 1) - 1 - 2 * charge - l;
                debug_assert!(twice >= 0 && twice % 2 == 0);
                (twice / 2) as u32
            })
            .collect();
        while parts.last() == Some(&0) {
            parts.pop();
        }
        BasisState::new(charge, Partition::new(parts).expect("levels increase strictly"))
    }

    /// Eigenvalue of the charge operator: occupied negative levels minus
    /// empty positive levels.
    pub fn charge_direct(&self) -> i64 {
        let m = self.window_above(0);
        let lv = self.levels(m);
        let occ_neg = lv.iter().filter(|&&l| l < 0).count() as i64;
        let pos_below_tail = (1..2 * m as i64 + 1 - 2 * self.charge)
            .filter(|x| x % 2 != 0 && *x > 0)
            .count() as i64;
        let occ_pos = lv.iter().filter(|&&l| l > 0).count() as i64;
        occ_neg - (pos_below_tail - occ_pos)
    }

    /// `K = Σ s² :ψ_s ψ*_{-s}:` evaluated on the Maya view:
    /// `Σ_{occupied s<0} s² − Σ_{empty s>0} s²`.
    pub fn k_direct(&self) -> BigRational {
        let m = self.window_above(0);
        let lv = self.levels(m);
        let tail = 2 * m as i64 + 1 - 2 * self.charge;
        let mut four_k: i64 = lv.iter().filter(|&&l| l < 0).map(|l| l * l).sum();
        for x in (1..tail).filter(|x| x % 2 != 0) {
            if !lv.contains(&x) {
                four_k -= x * x;
            }
        }
        BigRational::new(four_k.into(), 4.into())
    }
}

/// Finite linear combination of basis wedges.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FockVector {
    terms: BTreeMap<BasisState, QRat>,
    cutoff: Option<u32>,
}

impl FockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(s: BasisState) -> Self {
        let mut v = Self::zero();
        v.terms.insert(s, QRat::one());
        v
    }

    pub fn vacuum() -> Self {
        Self::basis(BasisState::vacuum())
    }

    /// Drops every component with `|shape|` above `n` and remembers the bound.
    pub fn with_cutoff(mut self, n: u32) -> Self {
        self.terms.retain(|s, _| s.shape.size() <= n);
        self.cutoff = Some(self.cutoff.map_or(n, |c| c.min(n)));
        self
    }

    pub fn cutoff(&self) -> Option<u32> {
        self.cutoff
    }

    pub fn terms(&self) -> &BTreeMap<BasisState, QRat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, s: &BasisState) -> QRat {
        self.terms.get(s).cloned().unwrap_or_else(QRat::zero)
    }

    pub fn add_term(&mut self, s: BasisState, c: QRat) {
        if c.is_zero() || self.cutoff.is_some_and(|n| s.shape.size() > n) {
            return;
        }
        match self.terms.entry(s) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.cutoff = match (self.cutoff, other.cutoff) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&QRat::from_integer(-1)))
    }

    pub fn scale(&self, c: &QRat) -> Self {
        let mut out = FockVector {
            terms: BTreeMap::new(),
            cutoff: self.cutoff,
        };
        if c.is_zero() {
            return out;
        }
        for (s, x) in &self.terms {
            out.terms.insert(s.clone(), x * c);
        }
        out
    }

    /// Extends a map on basis states linearly.
    pub fn map_basis<F: Fn(&BasisState) -> FockVector>(&self, f: F) -> FockVector {
        let mut out = FockVector {
            terms: BTreeMap::new(),
            cutoff: self.cutoff,
        };
        for (s, c) in &self.terms {
            for (t, d) in f(s).terms {
                out.add_term(t, c * &d);
            }
        }
        out
    }

    /// `(self, other)` in the orthonormal wedge basis (bilinear).
    pub fn pair(&self, other: &Self) -> QRat {
        self.terms
            .iter()
            .filter_map(|(s, c)| other.terms.get(s).map(|d| c * d))
            .sum()
    }
}

fn signed(s: BasisState, negative: bool) -> FockVector {
    let v = FockVector::basis(s);
    if negative {
        v.scale(&QRat::from_integer(-1))
    } else {
        v
    }
}

/// `ψ_r` on a basis wedge; `r2 = 2r` is odd.
pub fn psi_basis(r2: i64, s: &BasisState) -> FockVector {
    debug_assert!(r2 % 2 != 0);
    let m = s.window_above(r2);
    let mut lv = s.levels(m);
    match lv.binary_search(&r2) {
        Ok(_) => FockVector::zero(),
        Err(k) => {
            lv.insert(k, r2);
            signed(BasisState::from_levels(&lv, s.charge + 1), k % 2 == 1)
        }
    }
}

/// `ψ*_r` on a basis wedge: removes level `-r`.
pub fn psi_star_basis(r2: i64, s: &BasisState) -> FockVector {
    debug_assert!(r2 % 2 != 0);
    let m = s.window_above(-r2);
    let mut lv = s.levels(m);
    match lv.binary_search(&-r2) {
        Err(_) => FockVector::zero(),
        Ok(k) => {
            lv.remove(k);
            // 1-based position k+1, sign (-1)^{k+2}
            signed(BasisState::from_levels(&lv, s.charge - 1), k % 2 == 1)
        }
    }
}

pub fn apply_psi(r2: i64, v: &FockVector) -> FockVector {
    v.map_basis(|s| psi_basis(r2, s))
}

pub fn apply_psi_star(r2: i64, v: &FockVector) -> FockVector {
    v.map_basis(|s| psi_star_basis(r2, s))
}

/// `α_n = Σ_s :ψ_{-s} ψ*_{s+n}:` moves one occupied level `a` to `a + n`.
pub fn alpha_basis(n: i64, s: &BasisState) -> FockVector {
    assert!(n != 0, "α_0 is the charge operator");
    let m = s.shape.len() + n.unsigned_abs() as usize;
    let mut out = FockVector::zero();
    for l in s.levels(m) {
        let moved = psi_star_basis(-l, s);
        for (t, c) in apply_psi(l + 2 * n, &moved).terms {
            out.add_term(t, c);
        }
    }
    out
}

pub fn apply_alpha(n: i64, v: &FockVector) -> FockVector {
    v.map_basis(|s| alpha_basis(n, s))
}

/// `K` by its eigenvalue `κ` on charge-zero wedges and the Maya-view sum otherwise.
pub fn apply_k(v: &FockVector) -> FockVector {
    v.map_basis(|s| {
        let k = if s.charge == 0 {
            QRat::from_integer(s.shape.kappa())
        } else {
            QRat::from_rational(s.k_direct())
        };
        FockVector::basis(s.clone()).scale(&k)
    })
}

/// `q^{aK/2}`.
pub fn apply_q_k(a: i64, v: &FockVector) -> FockVector {
    v.map_basis(|s| {
        // q^{a K / 2} with K = j/4 is t^{6 a j}
        let four_k = s.k_direct() * BigRational::from_integer(4.into());
        let j = four_k.to_integer();
        let e = 6 * a * i64::try_from(j).expect("small eigenvalue");
        FockVector::basis(s.clone()).scale(&QRat::q48(e))
    })
}

pub fn apply_charge(v: &FockVector) -> FockVector {
    v.map_basis(|s| FockVector::basis(s.clone()).scale(&QRat::from_integer(s.charge)))
}

/// Shift operator `R^k`: every level moves down by `k`, raising the charge by `k`.
pub fn apply_shift(k: i64, v: &FockVector) -> FockVector {
    v.map_basis(|s| FockVector::basis(BasisState::new(s.charge + k, s.shape.clone())))
}

/// Times for the vertex operators `Γ±(t) = exp(Σ t_n α_{±n})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GammaTimes {
    /// `t_n = p_n / n` with `p_n` evaluated at an alphabet.
    Spec(SpecPoint),
    /// Explicit finitely many Miwa times `t_1, t_2, …`.
    Miwa(Vec<QRat>),
}

impl GammaTimes {
    /// `h_0 … h_k` for these times.
    pub fn h_upto(&self, k: u32) -> Vec<QRat> {
        match self {
            GammaTimes::Spec(s) => h_series(k, s),
            GammaTimes::Miwa(t) => {
                let mut h = vec![QRat::one()];
                for j in 1..=k as usize {
                    let mut acc = QRat::zero();
                    for i in 1..=j.min(t.len()) {
                        let term = &t[i - 1] * &h[j - i];
                        acc = &acc + &term.scale(&BigRational::from_integer((i as i64).into()));
                    }
                    h.push(acc.scale(&BigRational::new(1.into(), (j as i64).into())));
                }
                h
            }
        }
    }
}

fn skew_with(h: &[QRat], lam: &Partition, eta: &Partition) -> QRat {
    jacobi_trudi(lam, eta, |k| h[k].clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaSign {
    Plus,
    Minus,
}

/// `Γ₋(t)|μ⟩ = Σ_λ s_{λ/μ}(t)|λ⟩` (needs a cutoff on `|λ|`) and
/// `Γ₊(t)|μ⟩ = Σ_λ s_{μ/λ}(t)|λ⟩`.
pub fn apply_gamma(
    sign: GammaSign,
    times: &GammaTimes,
    v: &FockVector,
    cutoff: Option<u32>,
) -> Result<FockVector, FockError> {
    match sign {
        GammaSign::Minus => {
            let n = cutoff.ok_or(FockError::MissingCutoff)?;
            let h = times.h_upto(2 * n + 1);
            let shapes = enumerate_upto(n);
            Ok(v
                .map_basis(|s| {
                    let mut out = FockVector::zero();
                    for lam in shapes.iter().filter(|l| l.contains(&s.shape)) {
                        out.add_term(
                            BasisState::new(s.charge, lam.clone()),
                            skew_with(&h, lam, &s.shape),
                        );
                    }
                    out
                })
                .with_cutoff(n))
        }
        GammaSign::Plus => {
            let top = v.terms.keys().map(|s| s.shape.part(1) + s.shape.len() as u32).max();
            let h = times.h_upto(top.unwrap_or(0));
            Ok(v.map_basis(|s| {
                let mut out = FockVector::zero();
                for lam in s.shape.subpartitions() {
                    let c = skew_with(&h, &s.shape, &lam);
                    out.add_term(BasisState::new(s.charge, lam), c);
                }
                out
            }))
        }
    }
}

/// `exp(Σ t_n α_{±n})` summed term by term; `Γ₋` results are truncated at `cutoff`.
pub fn apply_gamma_bosonic(
    sign: GammaSign,
    t: &[QRat],
    v: &FockVector,
    cutoff: Option<u32>,
) -> Result<FockVector, FockError> {
    let (dir, v) = match sign {
        GammaSign::Minus => (-1, v.clone().with_cutoff(cutoff.ok_or(FockError::MissingCutoff)?)),
        GammaSign::Plus => (1, v.clone()),
    };
    let x = |w: &FockVector| {
        let mut out = FockVector::zero();
        out.cutoff = w.cutoff;
        for (n, tn) in t.iter().enumerate() {
            if tn.is_zero() {
                continue;
            }
            out = out.add(&apply_alpha(dir * (n as i64 + 1), w).scale(tn));
        }
        out
    };
    let mut total = v.clone();
    let mut term = v;
    let mut k = 1i64;
    loop {
        term = x(&term).scale(&QRat::from_rational(BigRational::new(1.into(), k.into())));
        if term.is_zero() {
            break;
        }
        total = total.add(&term);
        k += 1;
    }
    Ok(total)
}

/// Graded piece `Γ₋^{(k)}`: adds horizontal strips of size `k` (vertical
/// strips if `vertical`), each with coefficient 1.
pub fn gamma_minus_graded(k: u32, vertical: bool, v: &FockVector) -> FockVector {
    v.map_basis(|s| {
        let mut out = FockVector::zero();
        for lam in Partition::of_size(s.shape.size() + k) {
            if is_strip(&lam, &s.shape, vertical) {
                out.add_term(BasisState::new(s.charge, lam), QRat::one());
            }
        }
        out
    })
}

/// Graded piece `Γ₊^{(k)}`: removes horizontal (or vertical) strips of size `k`.
pub fn gamma_plus_graded(k: u32, vertical: bool, v: &FockVector) -> FockVector {
    v.map_basis(|s| {
        let mut out = FockVector::zero();
        if s.shape.size() < k {
            return out;
        }
        for lam in Partition::of_size(s.shape.size() - k) {
            if is_strip(&s.shape, &lam, vertical) {
                out.add_term(BasisState::new(s.charge, lam), QRat::one());
            }
        }
        out
    })
}

/// `λ/η` is a horizontal strip (`vertical = false`) or vertical strip.
pub fn is_strip(lam: &Partition, eta: &Partition, vertical: bool) -> bool {
    if vertical {
        return is_strip(&lam.conjugate(), &eta.conjugate(), false);
    }
    // interlacing λ_1 ≥ η_1 ≥ λ_2 ≥ η_2 ≥ …
    lam.contains(eta) && (1..=lam.len()).all(|i| eta.part(i) >= lam.part(i + 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    Psi,
    PsiStar,
}

/// Finite combination `Σ c ψ_r` / `Σ c ψ*_r`; modes are stored doubled.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinearFermion {
    terms: BTreeMap<(Flavor, i64), QRat>,
}

impl LinearFermion {
    pub fn mode(flavor: Flavor, r2: i64, c: QRat) -> Self {
        let mut f = Self::default();
        f.add_mode(flavor, r2, c);
        f
    }

    pub fn psi(r2: i64) -> Self {
        Self::mode(Flavor::Psi, r2, QRat::one())
    }

    pub fn psi_star(r2: i64) -> Self {
        Self::mode(Flavor::PsiStar, r2, QRat::one())
    }

    pub fn add_mode(&mut self, flavor: Flavor, r2: i64, c: QRat) {
        assert!(r2 % 2 != 0, "modes are half-integers");
        let e = self.terms.entry((flavor, r2)).or_insert_with(QRat::zero);
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&(flavor, r2));
        }
    }

    pub fn terms(&self) -> &BTreeMap<(Flavor, i64), QRat> {
        &self.terms
    }

    fn only(&self, flavor: Flavor) -> bool {
        self.terms.keys().all(|(f, _)| *f == flavor)
    }

    pub fn apply(&self, v: &FockVector) -> FockVector {
        let mut out = FockVector::zero();
        for ((f, r2), c) in &self.terms {
            let w = match f {
                Flavor::Psi => apply_psi(*r2, v),
                Flavor::PsiStar => apply_psi_star(*r2, v),
            };
            out = out.add(&w.scale(c));
        }
        out
    }
}

/// `⟨w₁ w₂⟩` from `⟨ψ_r ψ*_s⟩ = ⟨ψ*_r ψ_s⟩ = [r = -s > 0]`.
pub fn two_point(a: &LinearFermion, b: &LinearFermion) -> QRat {
    let mut acc = QRat::zero();
    for ((fa, ra), ca) in &a.terms {
        for ((fb, rb), cb) in &b.terms {
            if fa != fb && *ra == -rb && *ra > 0 {
                acc = &acc + &(ca * cb);
            }
        }
    }
    acc
}

/// Wick's theorem as a signed sum over all pairings.
pub fn wick_vev_bruteforce(ws: &[LinearFermion]) -> QRat {
    if ws.is_empty() {
        return QRat::one();
    }
    if ws.len() % 2 == 1 {
        return QRat::zero();
    }
    let mut acc = QRat::zero();
    for j in 1..ws.len() {
        let c = two_point(&ws[0], &ws[j]);
        if c.is_zero() {
            continue;
        }
        let rest: Vec<LinearFermion> = ws[1..]
            .iter()
            .enumerate()
            .filter(|(i, _)| *i + 1 != j)
            .map(|(_, w)| w.clone())
            .collect();
        let t = &c * &wick_vev_bruteforce(&rest);
        acc = if j % 2 == 1 { &acc + &t } else { &acc - &t };
    }
    acc
}

/// `⟨φ₁φ₁* … φ_nφ_n*⟩ = det M` with `M_ij = ⟨φ_i φ_j*⟩` for `j ≥ i` and
/// `-⟨φ_j* φ_i⟩` for `j < i`.
pub fn wick_vev_det(ws: &[LinearFermion]) -> Result<QRat, FockError> {
    if ws.len() % 2 == 1 {
        return Err(FockError::ShapeMismatch);
    }
    let phi: Vec<&LinearFermion> = ws.iter().step_by(2).collect();
    let phis: Vec<&LinearFermion> = ws.iter().skip(1).step_by(2).collect();
    if !phi.iter().all(|f| f.only(Flavor::Psi)) || !phis.iter().all(|f| f.only(Flavor::PsiStar)) {
        return Err(FockError::ShapeMismatch);
    }
    let n = phi.len();
    let m: Vec<Vec<QRat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if j >= i {
                        two_point(phi[i], phis[j])
                    } else {
                        -two_point(phis[j], phi[i])
                    }
                })
                .collect()
        })
        .collect();
    Ok(det(&m))
}

/// One operator in a [`vev_direct`] sequence.
#[derive(Debug, Clone)]
pub enum FockOp {
    Fermion(LinearFermion),
    Alpha(i64),
    /// `q^{aK/2}`.
    QK(i64),
    Shift(i64),
    Gamma {
        sign: GammaSign,
        times: GammaTimes,
        cutoff: Option<u32>,
    },
}

impl FockOp {
    pub fn apply(&self, v: &FockVector) -> Result<FockVector, FockError> {
        Ok(match self {
            FockOp::Fermion(f) => f.apply(v),
            FockOp::Alpha(n) => apply_alpha(*n, v),
            FockOp::QK(a) => apply_q_k(*a, v),
            FockOp::Shift(k) => apply_shift(*k, v),
            FockOp::Gamma { sign, times, cutoff } => apply_gamma(*sign, times, v, *cutoff)?,
        })
    }
}

/// `⟨bra| op_1 op_2 … op_k |ket⟩`, applying the operators right to left.
pub fn vev_direct(bra: &BasisState, ops: &[FockOp], ket: &BasisState) -> Result<QRat, FockError> {
    if ops.iter().any(|o| {
        matches!(
            o,
            FockOp::Gamma {
                sign: GammaSign::Minus,
                cutoff: None,
                ..
            }
        )
    }) {
        return Err(FockError::MissingCutoff);
    }
    let mut v = FockVector::basis(ket.clone());
    for op in ops.iter().rev() {
        v = op.apply(&v)?;
    }
    Ok(v.coeff(bra))
}

/// `K` eigenvalue as an exact rational (integral on charge zero).
pub fn k_eigen(s: &BasisState) -> BigRational {
    if s.charge == 0 {
        BigRational::from_integer(s.shape.kappa().into())
    } else {
        s.k_direct()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn st(v: &[u32]) -> BasisState {
        BasisState::shape(p(v))
    }

    #[test]
    fn psi_examples() {
        let vac = FockVector::vacuum();
        assert!(apply_psi(1, &vac).is_zero());
        assert!(apply_psi_star(1, &vac).is_zero());
        let v = apply_psi(-1, &apply_psi_star(-1, &vac));
        assert_eq!(v, FockVector::basis(st(&[1])));
    }

    #[test]
    fn frobenius_creation() {
        // |μ⟩ = (-1)^{Σn} ψ_{-m₁-½} ψ*_{-n₁-½} … |0⟩
        for mu in enumerate_upto(6) {
            let f = mu.frobenius();
            let mut v = FockVector::vacuum();
            for (m, n) in f.m().iter().zip(f.n()).rev() {
                v = apply_psi_star(-2 * *n as i64 - 1, &v);
                v = apply_psi(-2 * *m as i64 - 1, &v);
            }
            let sign: u32 = f.n().iter().sum();
            let expect = FockVector::basis(BasisState::shape(mu.clone()));
            let expect = if sign % 2 == 1 {
                expect.scale(&QRat::from_integer(-1))
            } else {
                expect
            };
            assert_eq!(v, expect, "{mu:?}");
        }
    }

    #[test]
    fn alpha_examples() {
        let vac = FockVector::vacuum();
        assert!(apply_alpha(1, &vac).is_zero());
        assert_eq!(apply_alpha(-1, &vac), FockVector::basis(st(&[1])));
        // α₋₂|0⟩ = |(2)⟩ − |(1,1)⟩
        let v = apply_alpha(-2, &vac);
        assert_eq!(v.coeff(&st(&[2])), QRat::one());
        assert_eq!(v.coeff(&st(&[1, 1])), QRat::from_integer(-1));
    }

    #[test]
    fn k_examples() {
        assert!(apply_k(&FockVector::vacuum()).is_zero());
        assert_eq!(
            apply_k(&FockVector::basis(st(&[2]))),
            FockVector::basis(st(&[2])).scale(&QRat::from_integer(2))
        );
        assert_eq!(
            apply_k(&FockVector::basis(st(&[1, 1]))),
            FockVector::basis(st(&[1, 1])).scale(&QRat::from_integer(-2))
        );
    }

    #[test]
    fn charge_and_shift() {
        let s = BasisState::new(2, p(&[3, 1]));
        assert_eq!(s.charge_direct(), 2);
        let r = apply_shift(1, &FockVector::basis(s.clone()));
        assert_eq!(r, FockVector::basis(BasisState::new(3, p(&[3, 1]))));
        let lv = s.levels(3);
        let lr = BasisState::new(3, p(&[3, 1])).levels(3);
        assert!(lv.iter().zip(&lr).all(|(a, b)| b - a == -2));
    }

    #[test]
    fn gamma_examples() {
        let vac = FockVector::vacuum();
        let g = apply_gamma(GammaSign::Plus, &GammaTimes::Spec(SpecPoint::Rho), &vac, None).unwrap();
        assert_eq!(g, vac);
        assert_eq!(
            apply_gamma(GammaSign::Minus, &GammaTimes::Spec(SpecPoint::Rho), &vac, None),
            Err(FockError::MissingCutoff)
        );
        let g = apply_gamma(GammaSign::Minus, &GammaTimes::Spec(SpecPoint::Rho), &vac, Some(3)).unwrap();
        for mu in enumerate_upto(3) {
            assert_eq!(
                g.coeff(&BasisState::shape(mu.clone())),
                crate::symfunc::schur_rho_hook(&mu, false)
            );
        }
        // single variable {z} with z = 2: only rows survive
        let z = QRat::from_integer(2);
        let times = GammaTimes::Miwa(vec![
            z.clone(),
            z.pow(2).scale(&BigRational::new(1.into(), 2.into())),
            z.pow(3).scale(&BigRational::new(1.into(), 3.into())),
        ]);
        let g = apply_gamma(GammaSign::Minus, &times, &vac, Some(3)).unwrap();
        for mu in enumerate_upto(3) {
            let expect = if mu.len() <= 1 { z.pow(mu.size()) } else { QRat::zero() };
            assert_eq!(g.coeff(&BasisState::shape(mu)), expect);
        }
    }

    #[test]
    fn wick_examples() {
        let a = LinearFermion::psi(1);
        let b = LinearFermion::psi_star(-1);
        assert_eq!(wick_vev_bruteforce(&[a.clone(), b.clone()]), QRat::one());
        assert!(wick_vev_bruteforce(&[a.clone(), b.clone(), a.clone()]).is_zero());
        let four = [a, b, LinearFermion::psi(3), LinearFermion::psi_star(-3)];
        assert_eq!(wick_vev_bruteforce(&four), wick_vev_det(&four).unwrap());
        assert_eq!(wick_vev_bruteforce(&four), QRat::one());
        assert_eq!(
            wick_vev_det(&[LinearFermion::psi_star(1), LinearFermion::psi(-1)]),
            Err(FockError::ShapeMismatch)
        );
    }

    #[test]
    fn vev_direct_examples() {
        let vac = BasisState::vacuum();
        assert_eq!(vev_direct(&vac, &[], &vac).unwrap(), QRat::one());
        let ops = [
            FockOp::Fermion(LinearFermion::psi(1)),
            FockOp::Fermion(LinearFermion::psi_star(-1)),
        ];
        assert_eq!(vev_direct(&vac, &ops, &vac).unwrap(), QRat::one());
    }

    #[test]
    fn strips() {
        assert!(is_strip(&p(&[3, 1]), &p(&[1]), false));
        assert!(!is_strip(&p(&[2, 2]), &p(&[1]), false));
        assert!(is_strip(&p(&[2, 2]), &p(&[1, 1]), true));
    }
}
