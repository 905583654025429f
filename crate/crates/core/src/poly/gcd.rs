//! Multivariate GCD and content by recursion on the smallest variable,
//! with Collins–Brown subresultant remainder sequences at each level.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{MPoly, VarUniverse};
#[cfg(test)]
use super::{Monomial, Rational};

fn deg(p: &[MPoly]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn trim(mut p: Vec<MPoly>) -> Vec<MPoly> {
    while matches!(p.last(), Some(c) if c.is_zero()) {
        p.pop();
    }
    p
}

/// Pseudo-remainder of `a` by `b` in their shared main variable, with the
/// exponent `k` such that `lc(b)^k * a = q * b + r`.
pub fn pseudo_remainder_coeffs(a: &[MPoly], b: &[MPoly]) -> (Vec<MPoly>, u32) {
    let db = deg(b).expect("pseudo-division by zero");
    let lcb = &b[db];
    let mut r: Vec<MPoly> = trim(a.to_vec());
    let mut k = 0u32;
    while let Some(dr) = deg(&r) {
        if dr < db {
            break;
        }
        let lcr = r[dr].clone();
        let shift = dr - db;
        let mut next: Vec<MPoly> = r.iter().map(|c| c * lcb).collect();
        for (i, bc) in b.iter().enumerate() {
            if bc.is_zero() {
                continue;
            }
            next[i + shift] = &next[i + shift] - &(bc * &lcr);
        }
        next.truncate(dr);
        r = trim(next);
        k += 1;
    }
    (r, k)
}

/// `lc(g)^k * f = q * g + r` with `deg_var(r) < deg_var(g)` and
/// `k = max(deg f - deg g + 1, 0)` (the classical pseudo-remainder).
pub fn pseudo_remainder(f: &MPoly, g: &MPoly, var: usize) -> (MPoly, u32) {
    let u = f.universe().clone();
    let a = f.as_univariate(var);
    let b = g.as_univariate(var);
    let (r, k) = pseudo_remainder_coeffs(&a, &b);
    (MPoly::from_univariate(&u, var, &r), k)
}

fn classical_prem(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let da = deg(a).unwrap_or(0);
    let db = deg(b).unwrap();
    let (mut r, k) = pseudo_remainder_coeffs(a, b);
    let want = (da + 1 - db) as u32;
    if k < want && !r.is_empty() {
        let f = b[db].pow(want - k);
        r = r.iter().map(|c| c * &f).collect();
    }
    r
}

/// Normalised multivariate greatest common divisor (content 1, positive
/// leading coefficient). `gcd(0, 0) = 0`.
pub fn gcd(f: &MPoly, g: &MPoly) -> MPoly {
    f.check_universe(g).expect("gcd across universes");
    if f.is_zero() {
        return g.normalized();
    }
    if g.is_zero() {
        return f.normalized();
    }
    if f.is_constant() || g.is_constant() {
        return MPoly::one(f.universe());
    }
    if coprime_by_images(f, g) {
        return MPoly::one(f.universe());
    }
    if f.associated(g) {
        return f.normalized();
    }
    if f.divide_exact(g).is_ok() {
        return g.normalized();
    }
    if g.divide_exact(f).is_ok() {
        return f.normalized();
    }
    if let Some(c) = super::modgcd::modular_gcd(f, g) {
        return c.normalized();
    }
    let u = f.universe().clone();
    let var = match f.variables().union(&g.variables()).next() {
        Some(&v) => v,
        None => return MPoly::one(&u),
    };
    let a = f.as_univariate(var);
    let b = g.as_univariate(var);
    let ca = content_of(&a);
    let cb = content_of(&b);
    let c = gcd(&ca, &cb);
    let pa: Vec<MPoly> = a.iter().map(|x| x.divide_exact(&ca).unwrap()).collect();
    let pb: Vec<MPoly> = b.iter().map(|x| x.divide_exact(&cb).unwrap()).collect();
    if deg(&pa) == Some(0) || deg(&pb) == Some(0) {
        return c.normalized();
    }
    let (x, y) = if deg(&pa) >= deg(&pb) { (pa, pb) } else { (pb, pa) };
    let last = subresultant_last(x, y);
    if deg(&last) == Some(0) {
        return c.normalized();
    }
    let cl = content_of(&last);
    let pl: Vec<MPoly> = last.iter().map(|x| x.divide_exact(&cl).unwrap()).collect();
    (&c * &MPoly::from_univariate(&u, var, &pl)).normalized()
}

/// Last nonzero element of the subresultant PRS of `a`, `b` (deg a >= deg b,
/// both nonzero).
fn subresultant_last(mut a: Vec<MPoly>, mut b: Vec<MPoly>) -> Vec<MPoly> {
    let u: Arc<VarUniverse> = a[0].universe().clone();
    let mut g = MPoly::one(&u);
    let mut h = MPoly::one(&u);
    loop {
        let da = deg(&a).unwrap();
        let db = deg(&b).unwrap();
        let delta = (da - db) as u32;
        let r = classical_prem(&a, &b);
        if deg(&r).is_none() {
            return b;
        }
        if deg(&r) == Some(0) {
            return r;
        }
        let divisor = &g * &h.pow(delta);
        let next: Vec<MPoly> = r
            .iter()
            .map(|c| c.divide_exact(&divisor).expect("subresultant division is exact"))
            .collect();
        a = b;
        b = next;
        g = a[deg(&a).unwrap()].clone();
        h = if delta == 0 {
            h
        } else {
            let num = g.pow(delta);
            let den = h.pow(delta - 1);
            num.divide_exact(&den).expect("subresultant division is exact")
        };
    }
}

const PRIME: u64 = 2_147_483_647;

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    b %= PRIME;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % PRIME;
        }
        b = b * b % PRIME;
        e >>= 1;
    }
    r
}

fn rat_mod(c: &super::Rational) -> Option<u64> {
    let p = BigInt::from(PRIME);
    let n = (c.numer() % &p + &p) % &p;
    let d = (c.denom() % &p + &p) % &p;
    let n = n.to_u64()?;
    let d = d.to_u64()?;
    (d != 0).then(|| n * pow_mod(d, PRIME - 2) % PRIME)
}

/// Coefficients in `var` of `f` with every other variable set to `point`,
/// modulo PRIME.
fn image(f: &MPoly, var: usize, point: &[u64]) -> Option<Vec<u64>> {
    let mut out = vec![0u64; f.degree_in(var) as usize + 1];
    for (m, c) in f.terms() {
        let mut v = rat_mod(c)?;
        for (i, &e) in m.0.iter().enumerate() {
            if i != var && e > 0 {
                v = v * pow_mod(point[i], e as u64) % PRIME;
            }
        }
        let k = m.0[var] as usize;
        out[k] = (out[k] + v) % PRIME;
    }
    Some(out)
}

fn upoly_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    let strip = |p: &mut Vec<u64>| {
        while matches!(p.last(), Some(0)) {
            p.pop();
        }
    };
    strip(&mut a);
    strip(&mut b);
    while !b.is_empty() {
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let factor = a[a.len() - 1] * pow_mod(b[b.len() - 1], PRIME - 2) % PRIME;
            for (i, &bc) in b.iter().enumerate() {
                a[i + shift] = (a[i + shift] + PRIME - factor * bc % PRIME) % PRIME;
            }
            strip(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Sufficient test for a constant gcd: for every shared variable, some
/// degree-preserving image modulo a prime has a constant gcd. Such images
/// can only overestimate the degree of the true gcd.
pub(crate) fn coprime_by_images(f: &MPoly, g: &MPoly) -> bool {
    let fv = f.variables();
    let gv = g.variables();
    let n = f.universe().len();
    let mut state = 0x9E37_79B9_7F4A_7C15u64;
    let mut next = || {
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        (z ^ (z >> 31)) % PRIME
    };
    'vars: for &var in fv.intersection(&gv) {
        for _ in 0..3 {
            let point: Vec<u64> = (0..n).map(|_| next()).collect();
            let (Some(a), Some(b)) = (image(f, var, &point), image(g, var, &point)) else {
                return false;
            };
            if a.last() == Some(&0) || b.last() == Some(&0) {
                continue;
            }
            if upoly_gcd_degree(a, b) == 0 {
                continue 'vars;
            }
            return false;
        }
        return false;
    }
    true
}

/// GCD of a list of polynomials (normalised).
pub fn content_of(coeffs: &[MPoly]) -> MPoly {
    let mut nonzero = coeffs.iter().filter(|c| !c.is_zero());
    let mut acc = match nonzero.next() {
        Some(c) => c.normalized(),
        None => return MPoly::zero(coeffs[0].universe()),
    };
    // Cheapest coefficients first keeps the running gcd small.
    let mut rest: Vec<&MPoly> = nonzero.collect();
    rest.sort_by_key(|c| c.len());
    for c in rest {
        if acc.is_constant() {
            return MPoly::one(acc.universe());
        }
        if c.divide_exact(&acc).is_ok() {
            continue;
        }
        acc = gcd(&acc, c);
    }
    if acc.is_constant() {
        MPoly::one(acc.universe())
    } else {
        acc
    }
}

/// Content of `f` viewed as a polynomial in `main_vars` with coefficients
/// in the remaining variables.
pub fn content(f: &MPoly, main_vars: &[usize]) -> MPoly {
    if f.is_zero() {
        return f.clone();
    }
    let coeffs: Vec<MPoly> = f.coefficients_in(main_vars).into_values().collect();
    content_of(&coeffs)
}
