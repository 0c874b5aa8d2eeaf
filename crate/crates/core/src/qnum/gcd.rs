//! Univariate polynomial gcd over ℚ by the modular method.
//!
//! Polynomials are dense, lowest degree first. Inputs are first made
//! primitive in ℤ[x]; the gcd is reconstructed from images modulo 31-bit
//! primes by Chinese remaindering and accepted only once it divides both
//! inputs exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Splits a rational polynomial into `content * primitive`, where the
/// primitive part has coprime integer coefficients and a positive leading
/// coefficient.
pub(crate) fn primitive_part(p: &[BigRational]) -> (BigRational, Vec<BigInt>) {
    let lcm_den = p
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .iter()
        .map(|c| c.numer() * (&lcm_den / c.denom()))
        .collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return (BigRational::zero(), ints);
    }
    if ints.last().map(|c| c.is_negative()).unwrap_or(false) {
        g = -g;
    }
    let prim = ints.iter().map(|c| c / &g).collect();
    (BigRational::new(g, lcm_den), prim)
}

fn trim(v: &mut Vec<BigInt>) {
    while v.len() > 1 && v.last().map(Zero::is_zero).unwrap_or(false) {
        v.pop();
    }
}

/// Exact quotient `a / b` in ℤ[x], or `None` if `b` does not divide `a`.
pub(crate) fn exact_div_int(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return if a.iter().all(Zero::is_zero) {
            Some(vec![BigInt::zero()])
        } else {
            None
        };
    }
    let lb = &b[db];
    let mut rem = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let top = &rem[k + db];
        if top.is_zero() {
            continue;
        }
        let (qq, r) = top.div_rem(lb);
        if !r.is_zero() {
            return None;
        }
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] -= &qq * bi;
        }
        q[k] = qq;
    }
    if rem.iter().all(Zero::is_zero) {
        trim(&mut q);
        Some(q)
    } else {
        None
    }
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = x * x % n;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below 2^31 in descending order, so products fit in `u64`.
struct Primes {
    next: u64,
}

impl Iterator for Primes {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        while self.next > 3 {
            let c = self.next;
            self.next -= 2;
            if is_prime(c) {
                return Some(c);
            }
        }
        None
    }
}

fn reduce(a: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    a.iter()
        .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits"))
        .collect()
}

fn trim_u(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

/// Remainder of `a` modulo monic-normalised `b` in 𝔽_p[x].
fn rem_mod(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let inv_lb = inv_mod(b[db], p);
    while a.len() > db && !(a.len() == 1 && a[0] == 0) {
        let top = *a.last().unwrap();
        if top == 0 {
            a.pop();
            continue;
        }
        let f = top * inv_lb % p;
        let off = a.len() - 1 - db;
        for (i, bi) in b.iter().enumerate() {
            a[off + i] = (a[off + i] + p - f * bi % p) % p;
        }
        a.pop();
    }
    if a.is_empty() {
        a.push(0);
    }
    trim_u(&mut a);
    a
}

fn gcd_mod(a: Vec<u64>, b: Vec<u64>, p: u64) -> Vec<u64> {
    let (mut x, mut y) = (a, b);
    trim_u(&mut x);
    trim_u(&mut y);
    while !(y.len() == 1 && y[0] == 0) {
        let r = rem_mod(x, &y, p);
        x = y;
        y = r;
    }
    let inv = inv_mod(*x.last().unwrap(), p);
    x.iter().map(|c| c * inv % p).collect()
}

/// Monic-up-to-content gcd of two nonzero primitive integer polynomials.
/// The result is primitive with positive leading coefficient.
pub(crate) fn gcd_primitive(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let one = vec![BigInt::one()];
    if a.len() == 1 || b.len() == 1 {
        return one;
    }
    let lc_gamma = a.last().unwrap().gcd(b.last().unwrap());
    let mut best_deg = usize::MAX;
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = Vec::new();
    let mut prev_lift: Option<Vec<BigInt>> = None;
    for p in (Primes { next: (1u64 << 31) - 1 }) {
        let ap = reduce(a, p);
        let bp = reduce(b, p);
        if *ap.last().unwrap() == 0 || *bp.last().unwrap() == 0 {
            continue;
        }
        let g = gcd_mod(ap, bp, p);
        let deg = g.len() - 1;
        if deg == 0 {
            return one;
        }
        if deg > best_deg {
            continue;
        }
        let gam = reduce(std::slice::from_ref(&lc_gamma), p)[0];
        let g: Vec<u64> = g.iter().map(|c| c * gam % p).collect();
        if deg < best_deg {
            best_deg = deg;
            modulus = BigInt::from(p);
            acc = g.iter().map(|&c| BigInt::from(c)).collect();
            prev_lift = None;
            continue;
        }
        // CRT: x ≡ acc (mod M), x ≡ g (mod p)
        let m_mod_p = reduce(std::slice::from_ref(&modulus), p)[0];
        let m_inv = inv_mod(m_mod_p, p);
        let pb = BigInt::from(p);
        for (ai, &gi) in acc.iter_mut().zip(g.iter()) {
            let ai_p = ai.mod_floor(&pb).to_u64().unwrap();
            let delta = (gi + p - ai_p) % p * m_inv % p;
            *ai += &modulus * BigInt::from(delta);
        }
        modulus *= &pb;
        let half: BigInt = &modulus >> 1usize;
        let lifted: Vec<BigInt> = acc
            .iter()
            .map(|c| if c > &half { c - &modulus } else { c.clone() })
            .collect();
        if prev_lift.as_ref() == Some(&lifted) {
            let (_, cand) = primitive_part(
                &lifted
                    .iter()
                    .map(|c| BigRational::from_integer(c.clone()))
                    .collect::<Vec<_>>(),
            );
            if exact_div_int(a, &cand).is_some() && exact_div_int(b, &cand).is_some() {
                return cand;
            }
        }
        prev_lift = Some(lifted);
    }
    unreachable!("ran out of 31-bit primes")
}

/// Shorthand used by tests: gcd of rational polynomials, primitive integer form.
#[cfg(test)]
pub(crate) fn gcd_rational(a: &[BigRational], b: &[BigRational]) -> Vec<BigInt> {
    let (_, pa) = primitive_part(a);
    let (_, pb) = primitive_part(b);
    gcd_primitive(&pa, &pb)
}
