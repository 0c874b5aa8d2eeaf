//! Truncated tau series built from vertex values, and exact checks of the
//! KP and 3-component KP Hirota bilinear relations at `q^{1/2} = u0`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::partitions::{enumerate_upto, Partition};
use crate::qnum::{eval_numeric, QError, ScalarMode};
use crate::symfunc::{schur_miwa, MiwaPoly};
use crate::vertex::{w_skew, Framing, VertexKey};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KpError {
    #[error("components must be 1 or 3, got {0}")]
    BadComponents(usize),
    #[error(transparent)]
    Scalar(#[from] QError),
    #[error("{0}")]
    Shape(String),
}

/// `Σ c_{μ¹μ²μ³} Π_j s_{μ^j}(t^j)` truncated at `Σ |μ^j| ≤ N`.
///
/// Component `j` (0-based) owns variables `j·N … j·N + N - 1`, where slot
/// `k - 1` holds `t^j_k` of weight `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauSeries {
    pub components: usize,
    pub cutoff: u32,
    pub poly: MiwaPoly,
}

fn ring(components: usize, n: u32) -> MiwaPoly {
    let w: Vec<u32> = (0..components).flat_map(|_| 1..=n).collect();
    MiwaPoly::zero(w, n)
}

/// Embeds a single-component polynomial into component `j` of `like`.
fn embed(p: &MiwaPoly, j: usize, like: &MiwaPoly) -> MiwaPoly {
    let k = p.nvars();
    let mut out = like.zero_like();
    for (e, c) in p.terms() {
        let mut big = vec![0; like.nvars()];
        big[j * k..(j + 1) * k].copy_from_slice(e);
        out.add_term(big, c.clone());
    }
    out
}

/// Partition triples with total size at most `n`, in enumeration order.
pub fn triples_upto(components: usize, n: u32) -> Vec<[Partition; 3]> {
    let ps = enumerate_upto(n);
    let e = Partition::empty();
    let mut out = Vec::new();
    if components == 1 {
        for a in &ps {
            out.push([a.clone(), e.clone(), e.clone()]);
        }
        return out;
    }
    for a in &ps {
        for b in ps.iter().filter(|b| a.size() + b.size() <= n) {
            for c in ps.iter().filter(|c| a.size() + b.size() + c.size() <= n) {
                out.push([a.clone(), b.clone(), c.clone()]);
            }
        }
    }
    out
}

impl TauSeries {
    /// Builds the series from arbitrary coefficients.
    pub fn from_coefficients<F>(components: usize, n: u32, coeff: F) -> Result<Self, KpError>
    where
        F: Fn(&[Partition; 3]) -> Result<BigRational, KpError>,
    {
        if components != 1 && components != 3 {
            return Err(KpError::BadComponents(components));
        }
        let like = ring(components, n);
        let mut schur: BTreeMap<Partition, MiwaPoly> = BTreeMap::new();
        for mu in enumerate_upto(n) {
            let s = schur_miwa(&mu, n as usize, n).expect("cutoff covers |μ|");
            schur.insert(mu, s);
        }
        let mut poly = like.zero_like();
        for t in triples_upto(components, n) {
            let c = coeff(&t)?;
            if c.is_zero() {
                continue;
            }
            let mut term = like.constant_like(c);
            for (j, mu) in t.iter().enumerate().take(components) {
                if !mu.is_empty() {
                    term = term.mul(&embed(&schur[mu], j, &like));
                }
            }
            poly = poly.add(&term);
        }
        Ok(TauSeries {
            components,
            cutoff: n,
            poly,
        })
    }

    /// Adds `delta · Π s_{μ^j}(t^j)`; used to check that the residue test
    /// notices a wrong coefficient.
    pub fn perturb(&mut self, triple: &[Partition; 3], delta: BigRational) {
        let like = self.poly.zero_like();
        let n = self.cutoff;
        let mut term = like.constant_like(delta);
        for (j, mu) in triple.iter().enumerate().take(self.components) {
            if !mu.is_empty() {
                let s = schur_miwa(mu, n as usize, n).expect("cutoff covers |μ|");
                term = term.mul(&embed(&s, j, &like));
            }
        }
        self.poly = self.poly.add(&term);
    }

    /// Coefficient of the monomial `Π (t^j_k)^{e}` given per component.
    pub fn coeff(&self, expo: &[u32]) -> BigRational {
        self.poly.coeff(expo)
    }
}

/// The vertex tau function `Σ W^{(a)}(u0) Π s_{μ^j}(t^j)`; the 1-component
/// version keeps only `μ² = μ³ = ∅`.
pub fn build_tau(
    components: usize,
    framing: Framing,
    n: u32,
    u0: &BigRational,
) -> Result<TauSeries, KpError> {
    ScalarMode::numeric_half(u0.clone())?;
    TauSeries::from_coefficients(components, n, |t| {
        let key = VertexKey::new(t[0].clone(), t[1].clone(), t[2].clone(), framing);
        Ok(eval_numeric(&w_skew(&key), u0)?)
    })
}

/// Coordinates of the residue ring: `t^j_k`, `s^j_k` for `k ≤ D`, and `w = z^{-1}`.
struct ResidueRing {
    c: usize,
    d_vars: usize,
    like: MiwaPoly,
}

impl ResidueRing {
    fn new(c: usize, d: u32) -> Self {
        let dv = d as usize + 1;
        let mut w: Vec<u32> = Vec::new();
        for _ in 0..2 * c {
            w.extend(1..=dv as u32);
        }
        w.push(1);
        ResidueRing {
            c,
            d_vars: dv,
            like: MiwaPoly::zero(w, d + 1),
        }
    }

    fn t(&self, j: usize, k: usize) -> usize {
        j * self.d_vars + k - 1
    }

    fn s(&self, j: usize, k: usize) -> usize {
        (self.c + j) * self.d_vars + k - 1
    }

    fn w(&self) -> usize {
        2 * self.c * self.d_vars
    }

    /// `τ` written in the `t` (or `s`) slots, with component `shift_j`
    /// shifted by `∓[w]`: `t^j_k ↦ t^j_k + sign · w^k / k`.
    fn place(&self, tau: &TauSeries, use_s: bool, shift_j: usize, sign: i64) -> MiwaPoly {
        let n = tau.cutoff as usize;
        let mut out = self.like.zero_like();
        let mut pow_cache: BTreeMap<(usize, usize, u32), MiwaPoly> = BTreeMap::new();
        for (e, c) in tau.poly.terms() {
            let mut term = self.like.constant_like(c.clone());
            let mut weight = 0u32;
            let mut skip = false;
            for (idx, &ex) in e.iter().enumerate() {
                if ex == 0 {
                    continue;
                }
                let (j, k) = (idx / n, idx % n + 1);
                weight += ex * k as u32;
                if k > self.d_vars || weight > self.like.bound() {
                    skip = true;
                    break;
                }
                let slot = if use_s { self.s(j, k) } else { self.t(j, k) };
                let factor = pow_cache
                    .entry((j, k, ex))
                    .or_insert_with(|| {
                        let mut base = self.like.var_like(slot);
                        if j == shift_j {
                            let mut we = vec![0; self.like.nvars()];
                            we[self.w()] = k as u32;
                            let coef = BigRational::new(sign.into(), (k as i64).into());
                            base = base.add(&self.like.monomial_like(we, coef));
                        }
                        base.pow(ex)
                    })
                    .clone();
                term = term.mul(&factor);
            }
            if !skip {
                out = out.add(&term);
            }
        }
        out
    }

    /// `E_0 … E_d` with `Σ E_k z^k = exp(Σ_k (t^j_k - s^j_k) z^k)`.
    fn exp_series(&self, j: usize, d: u32) -> Vec<MiwaPoly> {
        let diff = |k: usize| {
            if k > self.d_vars {
                self.like.zero_like()
            } else {
                self.like.var_like(self.t(j, k)).sub(&self.like.var_like(self.s(j, k)))
            }
        };
        let mut e = vec![self.like.one_like()];
        for k in 1..=d as usize {
            let mut acc = self.like.zero_like();
            for i in 1..=k {
                let t = diff(i).mul(&e[k - i]).scale(&BigRational::from_integer((i as i64).into()));
                acc = acc.add(&t);
            }
            e.push(acc.scale(&BigRational::new(1.into(), (k as i64).into())));
        }
        e
    }

    /// Coefficient of `w^m`, as a polynomial without `w`.
    fn w_coeff(&self, p: &MiwaPoly, m: u32) -> MiwaPoly {
        let mut out = self.like.zero_like();
        let wi = self.w();
        for (e, c) in p.terms() {
            if e[wi] == m {
                let mut e2 = e.clone();
                e2[wi] = 0;
                out.add_term(e2, c.clone());
            }
        }
        out
    }
}

/// One coefficient of a bilinear residue or PDE residual.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueEntry {
    /// Exponents of `t^1_1 … t^c_d` followed by `s^1_1 … s^c_d`.
    pub monomial: Vec<u32>,
    #[serde(serialize_with = "ser_rational")]
    pub value: BigRational,
    pub cutoff_stable: bool,
}

fn ser_rational<S: serde::Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BilinearReport {
    pub entries: Vec<ResidueEntry>,
}

impl BilinearReport {
    pub fn checked(&self) -> usize {
        self.entries.len()
    }

    pub fn stable(&self) -> usize {
        self.entries.iter().filter(|e| e.cutoff_stable).count()
    }

    pub fn nonzero_stable(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.cutoff_stable && !e.value.is_zero())
            .count()
    }

    pub fn passes(&self) -> bool {
        self.nonzero_stable() == 0
    }

    /// Largest absolute coefficient, for diagnostics.
    pub fn max_abs(&self) -> BigRational {
        self.entries
            .iter()
            .map(|e| e.value.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

/// Coefficients of `Σ_j Res_z e^{ξ(t^j - s^j, z)} τ(t^j - [z^{-1}]) τ(s^j + [z^{-1}])`
/// for every monomial in `(t, s)` of weighted degree at most `d`.
pub fn hirota_residue(tau: &TauSeries, d: u32) -> BTreeMap<Vec<u32>, BigRational> {
    let c = tau.components;
    let r = ResidueRing::new(c, d);
    let mut total = r.like.zero_like();
    for j in 0..c {
        let a = r.place(tau, false, j, -1);
        let b = r.place(tau, true, j, 1);
        let ab = a.mul(&b);
        let e = r.exp_series(j, d);
        for (k, ek) in e.iter().enumerate() {
            let piece = r.w_coeff(&ab, k as u32 + 1);
            total = total.add(&ek.mul(&piece));
        }
    }
    let mut out = BTreeMap::new();
    let dv = r.d_vars;
    for (e, v) in total.terms() {
        let mut key = Vec::with_capacity(2 * c * d as usize);
        let mut overflow = false;
        for blk in 0..2 * c {
            key.extend_from_slice(&e[blk * dv..blk * dv + d as usize]);
            overflow |= e[blk * dv + d as usize] != 0;
        }
        debug_assert!(!overflow, "weight bound excludes t_{{d+1}}");
        if r.like.weight_of(e) <= d {
            out.insert(key, v.clone());
        }
    }
    out
}

fn report(
    d: u32,
    nvars_blocks: usize,
    now: &BTreeMap<Vec<u32>, BigRational>,
    next: &BTreeMap<Vec<u32>, BigRational>,
) -> BilinearReport {
    let weights: Vec<u32> = (0..nvars_blocks).flat_map(|_| 1..=d).collect();
    let entries = MiwaPoly::monomials_upto(&weights, d)
        .into_iter()
        .map(|m| {
            let v = now.get(&m).cloned().unwrap_or_else(BigRational::zero);
            let w = next.get(&m).cloned().unwrap_or_else(BigRational::zero);
            ResidueEntry {
                monomial: m,
                cutoff_stable: v == w,
                value: v,
            }
        })
        .collect();
    BilinearReport { entries }
}

fn check_components(tau: &TauSeries, want: usize) -> Result<(), KpError> {
    if tau.components != want {
        return Err(KpError::Shape(format!(
            "expected a {want}-component tau, got {}",
            tau.components
        )));
    }
    Ok(())
}

/// KP bilinear residue for `tau`, with stability judged against `tau_next`
/// (the same series built with cutoff `N + 1`).
pub fn hirota_residue_1kp(
    tau: &TauSeries,
    tau_next: &TauSeries,
    d: u32,
) -> Result<BilinearReport, KpError> {
    check_components(tau, 1)?;
    check_components(tau_next, 1)?;
    Ok(report(d, 2, &hirota_residue(tau, d), &hirota_residue(tau_next, d)))
}

/// 3-component bilinear residue, summed over the three components.
pub fn hirota_residue_3kp(
    tau: &TauSeries,
    tau_next: &TauSeries,
    d: u32,
) -> Result<BilinearReport, KpError> {
    check_components(tau, 3)?;
    check_components(tau_next, 3)?;
    Ok(report(d, 6, &hirota_residue(tau, d), &hirota_residue(tau_next, d)))
}

/// `τ(t ∓ [z^{-1}])` as a polynomial in `t` and `w = z^{-1}` (last variable),
/// truncated at total weight `Z`; the other components are untouched.
pub fn shift_miwa(tau: &TauSeries, j: usize, sign: i64, z: u32) -> MiwaPoly {
    let n = tau.cutoff as usize;
    let mut w: Vec<u32> = tau.poly.weights().to_vec();
    w.push(1);
    let like = MiwaPoly::zero(w, z.max(tau.cutoff));
    let wi = like.nvars() - 1;
    let mut out = like.zero_like();
    for (e, c) in tau.poly.terms() {
        let mut term = like.constant_like(c.clone());
        for (idx, &ex) in e.iter().enumerate() {
            if ex == 0 {
                continue;
            }
            let mut base = like.var_like(idx);
            if idx / n == j {
                let k = idx % n + 1;
                let mut we = vec![0; like.nvars()];
                we[wi] = k as u32;
                base = base.add(&like.monomial_like(we, BigRational::new(sign.into(), (k as i64).into())));
            }
            term = term.mul(&base.pow(ex));
        }
        out = out.add(&term);
    }
    let mut trimmed = like.zero_like();
    for (e, c) in out.terms() {
        if e[wi] <= z {
            trimmed.add_term(e.clone(), c.clone());
        }
    }
    trimmed
}

/// Residual of `¾ u_{t₂t₂} = ∂_{t₁}(u_{t₃} - (3/2) u u_{t₁} - ¼ u_{t₁t₁t₁})`
/// with `u = 2 ∂²_{t₁} log τ`, coefficients up to weighted degree `d`.
pub fn kp_equation_residual(tau: &TauSeries, d: u32) -> BTreeMap<Vec<u32>, BigRational> {
    let p = &tau.poly;
    let n = tau.cutoff;
    let mut out = BTreeMap::new();
    if n < 3 {
        // t₃ does not exist; the residual is computed with t₂, t₃ absent.
        return out;
    }
    let x = p.sub(&p.one_like());
    let mut log = p.zero_like();
    let mut xk = p.one_like();
    for k in 1..=n {
        xk = xk.mul(&x);
        if xk.is_zero() {
            break;
        }
        let c = BigRational::new(if k % 2 == 1 { 1 } else { -1 }.into(), (k as i64).into());
        log = log.add(&xk.scale(&c));
    }
    let two = BigRational::from_integer(2.into());
    let u = log.derivative(0).derivative(0).scale(&two);
    let u1 = u.derivative(0);
    let u22 = u.derivative(1).derivative(1);
    let u3 = u.derivative(2);
    let u111 = u1.derivative(0).derivative(0);
    let inner = u3
        .sub(&u.mul(&u1).scale(&BigRational::new(3.into(), 2.into())))
        .sub(&u111.scale(&BigRational::new(1.into(), 4.into())));
    let r = u22
        .scale(&BigRational::new(3.into(), 4.into()))
        .sub(&inner.derivative(0));
    for (e, c) in r.terms() {
        if r.weight_of(e) <= d {
            out.insert(e.clone(), c.clone());
        }
    }
    out
}

/// KP-equation residual report; stability is judged against `tau_next`.
pub fn kp_equation_check(
    tau: &TauSeries,
    tau_next: &TauSeries,
    d: u32,
) -> Result<BilinearReport, KpError> {
    check_components(tau, 1)?;
    let now = kp_equation_residual(tau, d);
    let next = kp_equation_residual(tau_next, d);
    let weights: Vec<u32> = (1..=tau.cutoff).collect();
    let entries = MiwaPoly::monomials_upto(&weights, d)
        .into_iter()
        .map(|m| {
            let pad = |map: &BTreeMap<Vec<u32>, BigRational>, len: usize| {
                let mut k = m.clone();
                k.resize(len, 0);
                map.get(&k).cloned().unwrap_or_else(BigRational::zero)
            };
            let v = pad(&now, tau.cutoff as usize);
            let w = pad(&next, tau_next.cutoff as usize);
            // a weight-k coefficient reads log τ up to weight k + 6
            let deep_enough = weight_of(&m) + 6 <= tau.cutoff;
            ResidueEntry {
                monomial: m,
                cutoff_stable: deep_enough && v == w,
                value: v,
            }
        })
        .collect();
    Ok(BilinearReport { entries })
}

fn weight_of(m: &[u32]) -> u32 {
    m.iter().enumerate().map(|(i, &e)| (i as u32 + 1) * e).sum()
}

/// Coefficients of a 1-component series in the Schur basis, by solving the
/// change of basis from monomials degree by degree.
pub fn schur_coefficients(tau: &TauSeries) -> Result<BTreeMap<Partition, BigRational>, KpError> {
    check_components(tau, 1)?;
    let n = tau.cutoff;
    let mut out = BTreeMap::new();
    for deg in 0..=n {
        let shapes = Partition::of_size(deg);
        // monomial for λ: t^{m} with m_k = multiplicity of k in λ
        let monos: Vec<Vec<u32>> = shapes
            .iter()
            .map(|l| {
                let mut e = vec![0u32; n as usize];
                for &p in l.parts() {
                    e[p as usize - 1] += 1;
                }
                e
            })
            .collect();
        let schur: Vec<MiwaPoly> = shapes
            .iter()
            .map(|mu| schur_miwa(mu, n as usize, n).expect("cutoff covers |μ|"))
            .collect();
        let k = shapes.len();
        // rows: monomials, columns: Schur functions, augmented with τ's coefficients
        let mut a: Vec<Vec<BigRational>> = monos
            .iter()
            .map(|m| {
                let mut row: Vec<BigRational> = schur.iter().map(|s| s.coeff(m)).collect();
                row.push(tau.poly.coeff(m));
                row
            })
            .collect();
        let x = solve(&mut a, k).ok_or_else(|| KpError::Shape("singular Schur change of basis".into()))?;
        for (mu, c) in shapes.into_iter().zip(x) {
            if !c.is_zero() {
                out.insert(mu, c);
            }
        }
    }
    Ok(out)
}

/// Gauss–Jordan on an augmented `k × (k+1)` system over ℚ.
fn solve(a: &mut [Vec<BigRational>], k: usize) -> Option<Vec<BigRational>> {
    for c in 0..k {
        let p = (c..k).find(|&r| !a[r][c].is_zero())?;
        a.swap(p, c);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..k {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    Some(a.iter().map(|row| row[k].clone()).collect())
}

/// Summary printed by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KpSummary {
    pub params: KpParams,
    pub checked: usize,
    pub stable: usize,
    pub nonzero_stable: usize,
    pub max_degree: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KpParams {
    pub components: usize,
    pub cutoff: u32,
    pub degree: u32,
    pub u0: String,
    pub framing: Framing,
}

/// Builds the tau series at `N` and `N + 1` and runs the matching bilinear check.
pub fn run_kp_check(
    components: usize,
    framing: Framing,
    n: u32,
    d: u32,
    u0: &BigRational,
) -> Result<(KpSummary, BilinearReport), KpError> {
    let tau = build_tau(components, framing, n, u0)?;
    let next = build_tau(components, framing, n + 1, u0)?;
    let rep = match components {
        1 => hirota_residue_1kp(&tau, &next, d)?,
        3 => hirota_residue_3kp(&tau, &next, d)?,
        c => return Err(KpError::BadComponents(c)),
    };
    let summary = KpSummary {
        params: KpParams {
            components,
            cutoff: n,
            degree: d,
            u0: u0.to_string(),
            framing,
        },
        checked: rep.checked(),
        stable: rep.stable(),
        nonzero_stable: rep.nonzero_stable(),
        max_degree: d,
    };
    Ok((summary, rep))
}

/// Default specialization `q^{1/2} = 2/3`.
pub fn default_u0() -> BigRational {
    BigRational::new(2.into(), 3.into())
}

/// True when every coefficient is zero.
pub fn all_zero(m: &BTreeMap<Vec<u32>, BigRational>) -> bool {
    m.values().all(|v| v.is_zero())
}
