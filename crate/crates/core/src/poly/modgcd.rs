//! Modular multivariate gcd: recursive dense interpolation modulo word-size
//! primes, Chinese remaindering and rational reconstruction. Results are
//! confirmed by exact division over ℚ by the caller.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{MPoly, Monomial, Rational};

const PRIMES: [u64; 8] = [
    2_147_483_647,
    2_147_483_629,
    2_147_483_587,
    2_147_483_579,
    2_147_483_563,
    2_147_483_549,
    2_147_483_543,
    2_147_483_497,
];

/// Sparse polynomial mod p; keys are exponent vectors, the largest key
/// is the lex-leading monomial.
type Terms = BTreeMap<Vec<u16>, u64>;

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
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

fn inv(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

// Dense univariate helpers, lowest degree first.

fn utrim(a: &mut Vec<u64>) {
    while matches!(a.last(), Some(0)) {
        a.pop();
    }
}

fn ueval(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
}

fn umonic(mut a: Vec<u64>, p: u64) -> Vec<u64> {
    if let Some(&lc) = a.last() {
        let i = inv(lc, p);
        for c in a.iter_mut() {
            *c = *c * i % p;
        }
    }
    a
}

fn urem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let ib = inv(*b.last().unwrap(), p);
    utrim(&mut a);
    while a.len() >= b.len() {
        let shift = a.len() - b.len();
        let f = a[a.len() - 1] * ib % p;
        for (i, &bc) in b.iter().enumerate() {
            a[i + shift] = (a[i + shift] + p - f * bc % p) % p;
        }
        utrim(&mut a);
    }
    a
}

fn ugcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    utrim(&mut a);
    utrim(&mut b);
    while !b.is_empty() {
        let r = urem(a, &b, p);
        a = b;
        b = r;
    }
    umonic(a, p)
}

/// Exact quotient a / b.
fn udiv(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    utrim(&mut a);
    if a.len() < b.len() {
        return Vec::new();
    }
    let ib = inv(*b.last().unwrap(), p);
    let mut q = vec![0u64; a.len() - b.len() + 1];
    while a.len() >= b.len() {
        let shift = a.len() - b.len();
        let f = a[a.len() - 1] * ib % p;
        q[shift] = f;
        for (i, &bc) in b.iter().enumerate() {
            a[i + shift] = (a[i + shift] + p - f * bc % p) % p;
        }
        utrim(&mut a);
    }
    q
}

fn umul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

// Sparse multivariate helpers.

/// Coefficients in the last variable, keyed by the remaining exponents.
fn split_last(a: &Terms) -> BTreeMap<Vec<u16>, Vec<u64>> {
    let mut out: BTreeMap<Vec<u16>, Vec<u64>> = BTreeMap::new();
    for (e, &c) in a {
        let (head, last) = e.split_at(e.len() - 1);
        let v = out.entry(head.to_vec()).or_default();
        let d = last[0] as usize;
        if v.len() <= d {
            v.resize(d + 1, 0);
        }
        v[d] = c;
    }
    out
}

fn join_last(a: &BTreeMap<Vec<u16>, Vec<u64>>) -> Terms {
    let mut out = Terms::new();
    for (head, v) in a {
        for (d, &c) in v.iter().enumerate() {
            if c != 0 {
                let mut e = head.clone();
                e.push(d as u16);
                out.insert(e, c);
            }
        }
    }
    out
}

fn make_monic(mut a: Terms, p: u64) -> Terms {
    if let Some((_, &lc)) = a.last_key_value() {
        let i = inv(lc, p);
        for c in a.values_mut() {
            *c = *c * i % p;
        }
    }
    a
}

fn divides(a: &Terms, b: &Terms, p: u64) -> bool {
    let (lmb, &lcb) = match b.last_key_value() {
        Some(x) => x,
        None => return false,
    };
    let ib = inv(lcb, p);
    let mut rem = a.clone();
    while let Some((m, c)) = rem.pop_last() {
        if m.iter().zip(lmb).any(|(x, y)| x < y) {
            return false;
        }
        let f = c * ib % p;
        for (bm, &bc) in b.iter().rev().skip(1) {
            let key: Vec<u16> = bm.iter().zip(m.iter().zip(lmb)).map(|(b, (m, l))| b + m - l).collect();
            let delta = f * bc % p;
            let entry = rem.entry(key.clone()).or_insert(0);
            *entry = (*entry + p - delta) % p;
            if *entry == 0 {
                rem.remove(&key);
            }
        }
    }
    true
}

const MAX_POINTS: u64 = 4096;

/// Monic gcd of `a` and `b` modulo `p` (exponent vectors of length k).
fn pgcd(a: &Terms, b: &Terms, k: usize, p: u64) -> Option<Terms> {
    if k == 1 {
        let dense = |t: &Terms| {
            let mut v = vec![0u64; t.keys().map(|e| e[0] as usize + 1).max().unwrap_or(0)];
            for (e, &c) in t {
                v[e[0] as usize] = c;
            }
            v
        };
        let g = ugcd(&dense(a), &dense(b), p);
        return Some(g.iter().enumerate().filter(|(_, &c)| c != 0).map(|(d, &c)| (vec![d as u16], c)).collect());
    }
    let mut sa = split_last(a);
    let mut sb = split_last(b);
    let content = |s: &BTreeMap<Vec<u16>, Vec<u64>>| {
        s.values().fold(Vec::new(), |acc: Vec<u64>, v| if acc.len() == 1 { acc } else { ugcd(&acc, v, p) })
    };
    let ca = content(&sa);
    let cb = content(&sb);
    let c = ugcd(&ca, &cb, p);
    for v in sa.values_mut() {
        *v = udiv(v, &ca, p);
    }
    for v in sb.values_mut() {
        *v = udiv(v, &cb, p);
    }
    let lca = sa.last_key_value()?.1.clone();
    let lcb = sb.last_key_value()?.1.clone();
    let g = ugcd(&lca, &lcb, p);
    let pa = join_last(&sa);
    let pb = join_last(&sb);
    let eval = |s: &BTreeMap<Vec<u16>, Vec<u64>>, x: u64| -> Terms {
        s.iter()
            .map(|(e, v)| (e.clone(), ueval(v, x, p)))
            .filter(|(_, c)| *c != 0)
            .collect()
    };
    let finish = |h: BTreeMap<Vec<u16>, Vec<u64>>| -> Terms {
        let out: BTreeMap<Vec<u16>, Vec<u64>> = h.into_iter().map(|(e, v)| (e, umul(&v, &c, p))).collect();
        make_monic(join_last(&out), p)
    };
    let mut h: Option<(Vec<u16>, BTreeMap<Vec<u16>, Vec<u64>>, Vec<u64>)> = None;
    for alpha in 1..MAX_POINTS {
        if ueval(&lca, alpha, p) == 0 || ueval(&lcb, alpha, p) == 0 {
            continue;
        }
        let img = pgcd(&eval(&sa, alpha), &eval(&sb, alpha), k - 1, p)?;
        let lm = img.last_key_value()?.0.clone();
        if lm.iter().all(|&e| e == 0) {
            let mut one = BTreeMap::new();
            one.insert(vec![0u16; k - 1], vec![1u64]);
            return Some(finish(one));
        }
        let ga = ueval(&g, alpha, p);
        let img: Terms = img.into_iter().map(|(e, c)| (e, c * ga % p)).collect();
        match &mut h {
            Some((hlm, _, _)) if lm > *hlm => continue,
            Some((hlm, hc, m)) if lm == *hlm => {
                let ma = ueval(m, alpha, p);
                let im = inv(ma, p);
                let mut changed = false;
                let keys: Vec<Vec<u16>> = hc.keys().chain(img.keys()).cloned().collect();
                for key in keys {
                    let cur = hc.get(&key).map(|v| ueval(v, alpha, p)).unwrap_or(0);
                    let want = img.get(&key).copied().unwrap_or(0);
                    if cur == want {
                        continue;
                    }
                    changed = true;
                    let f = (want + p - cur) % p * im % p;
                    let add: Vec<u64> = m.iter().map(|&x| x * f % p).collect();
                    let v = hc.entry(key).or_default();
                    if v.len() < add.len() {
                        v.resize(add.len(), 0);
                    }
                    for (i, x) in add.into_iter().enumerate() {
                        v[i] = (v[i] + x) % p;
                    }
                    utrim(v);
                }
                hc.retain(|_, v| !v.is_empty());
                *m = umul(m, &[(p - alpha) % p, 1], p);
                if !changed {
                    let cont = hc.values().fold(Vec::new(), |acc: Vec<u64>, v| ugcd(&acc, v, p));
                    let prim: BTreeMap<Vec<u16>, Vec<u64>> =
                        hc.iter().map(|(e, v)| (e.clone(), udiv(v, &cont, p))).collect();
                    let cand = join_last(&prim);
                    if divides(&pa, &cand, p) && divides(&pb, &cand, p) {
                        return Some(finish(prim));
                    }
                }
            }
            _ => {
                let hc: BTreeMap<Vec<u16>, Vec<u64>> = img.into_iter().map(|(e, c)| (e, vec![c])).collect();
                h = Some((lm, hc, vec![(p - alpha) % p, 1]));
            }
        }
    }
    None
}

fn to_terms(f: &MPoly, vars: &[usize], p: u64) -> Option<Terms> {
    let pb = BigInt::from(p);
    let mut out = Terms::new();
    for (m, c) in f.terms() {
        let n = c.numer().mod_floor(&pb).to_u64()?;
        let d = c.denom().mod_floor(&pb).to_u64()?;
        if d == 0 {
            return None;
        }
        let v = n * inv(d, p) % p;
        if v != 0 {
            out.insert(vars.iter().map(|&x| m.0[x]).collect(), v);
        }
    }
    Some(out)
}

/// n/d with |n|, |d| <= sqrt(m/2) and n ≡ a·d (mod m).
fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(Rational::new(r1, t1))
}

/// Candidate gcd of `f` and `g` over ℚ, monic in the lex order of the
/// variables involved. `None` when the images do not settle.
pub(crate) fn modular_gcd(f: &MPoly, g: &MPoly) -> Option<MPoly> {
    let u = f.universe().clone();
    let vars: Vec<usize> = f.variables().union(&g.variables()).copied().collect();
    if vars.is_empty() {
        return None;
    }
    let k = vars.len();
    let mut modulus = BigInt::one();
    let mut acc: Option<(Vec<u16>, BTreeMap<Vec<u16>, BigInt>)> = None;
    for &p in &PRIMES {
        let (Some(a), Some(b)) = (to_terms(f, &vars, p), to_terms(g, &vars, p)) else {
            continue;
        };
        // A prime dividing a leading coefficient can change the degree.
        if a.last_key_value().map(|(e, _)| e.clone()) != lead_exps(f, &vars)
            || b.last_key_value().map(|(e, _)| e.clone()) != lead_exps(g, &vars)
        {
            continue;
        }
        let img = pgcd(&a, &b, k, p)?;
        let lm = img.last_key_value()?.0.clone();
        let pb = BigInt::from(p);
        match &mut acc {
            Some((alm, _)) if lm > *alm => continue,
            Some((alm, coeffs)) if lm == *alm && coeffs.len() == img.len() && coeffs.keys().eq(img.keys()) => {
                for (e, c) in coeffs.iter_mut() {
                    let r = BigInt::from(img[e]);
                    // c + modulus * ((r - c) * modulus^-1 mod p)
                    let mi = BigInt::from(inv((&modulus % &pb).to_u64().unwrap(), p));
                    let t = ((&r - &*c) * mi).mod_floor(&pb);
                    *c = &*c + &modulus * t;
                }
                modulus *= &pb;
            }
            _ => {
                acc = Some((lm, img.into_iter().map(|(e, c)| (e, BigInt::from(c))).collect()));
                modulus = pb;
            }
        }
        let (_, coeffs) = acc.as_ref().unwrap();
        let rec: Option<Vec<(Monomial, Rational)>> = coeffs
            .iter()
            .map(|(e, c)| {
                let r = rational_reconstruction(c, &modulus)?;
                let mut m = Monomial::one(u.len());
                for (i, &v) in vars.iter().enumerate() {
                    m.0[v] = e[i];
                }
                Some((m, r))
            })
            .collect();
        if let Some(terms) = rec {
            let cand = MPoly::from_terms(&u, terms);
            if f.divide_exact(&cand).is_ok() && g.divide_exact(&cand).is_ok() {
                return Some(cand);
            }
        }
    }
    None
}

fn lead_exps(f: &MPoly, vars: &[usize]) -> Option<Vec<u16>> {
    f.terms().iter().map(|(m, _)| vars.iter().map(|&v| m.0[v]).collect::<Vec<u16>>()).max()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, VarUniverse};

    #[test]
    fn recovers_common_factor() {
        let u = VarUniverse::new(&["x", "y", "z"]).unwrap();
        let p = |s: &str| parse_poly(s, &u).unwrap();
        let h = p("3*x^2*y - z + 1/2");
        let f = &h * &p("x + y^2*z - 7");
        let g = &h * &p("x*z - y + 2");
        let c = modular_gcd(&f, &g).unwrap();
        assert!(c.associated(&h));
        let c = modular_gcd(&p("x + 1"), &p("y + 1")).unwrap();
        assert!(c.is_constant());
    }

    #[test]
    fn rational_reconstruction_roundtrip() {
        let m = BigInt::from(PRIMES[0]);
        let a = BigInt::from(3) * BigInt::from(inv(7, PRIMES[0]));
        assert_eq!(rational_reconstruction(&a, &m), Some(Rational::new(3.into(), 7.into())));
    }
}
