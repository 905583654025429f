//! Integer polynomials with exponents permuted into order priority, so the
//! monomial order is plain lexicographic comparison of exponent slices.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{Exponents, MPoly, MonomialOrder, Rational};

pub(crate) type Term = (Exponents, BigInt);

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IPoly {
    /// Strictly descending, no zero coefficients.
    pub terms: Vec<Term>,
}

pub(crate) fn mask_of(e: &[u16]) -> u64 {
    let mut m = 0u64;
    for (i, &x) in e.iter().enumerate() {
        if x > 0 {
            m |= 1 << (i % 64);
        }
    }
    m
}

pub(crate) fn divides(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn lcm(a: &[u16], b: &[u16]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub(crate) fn coprime(a: &[u16], b: &[u16]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

pub(crate) fn degree(e: &[u16]) -> u32 {
    e.iter().map(|&x| x as u32).sum()
}

fn sub_exps(a: &[u16], b: &[u16]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add_exps(a: &[u16], b: &[u16]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `a * p - b * (m * g)`, all inputs descending.
fn combine(a: &BigInt, p: &[Term], b: &BigInt, m: &[u16], g: &[Term]) -> Vec<Term> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    let a_one = a.is_one();
    let mut gj: Option<Exponents> = g.first().map(|t| add_exps(m, &t.0));
    while i < p.len() || j < g.len() {
        let take_p = match (&gj, p.get(i)) {
            (None, _) => 1,
            (Some(_), None) => -1,
            (Some(ge), Some(pt)) => match pt.0.cmp(ge) {
                std::cmp::Ordering::Greater => 1,
                std::cmp::Ordering::Less => -1,
                std::cmp::Ordering::Equal => 0,
            },
        };
        match take_p {
            1 => {
                let c = if a_one { p[i].1.clone() } else { a * &p[i].1 };
                out.push((p[i].0.clone(), c));
                i += 1;
            }
            -1 => {
                out.push((gj.take().unwrap(), -(b * &g[j].1)));
                j += 1;
                gj = g.get(j).map(|t| add_exps(m, &t.0));
            }
            _ => {
                let c = if a_one { p[i].1.clone() } else { a * &p[i].1 } - b * &g[j].1;
                if !c.is_zero() {
                    out.push((p[i].0.clone(), c));
                }
                i += 1;
                j += 1;
                gj = g.get(j).map(|t| add_exps(m, &t.0));
            }
        }
    }
    out
}

/// Marker for a reduction aborted by the wall-clock deadline.
#[derive(Debug)]
pub(crate) struct Timeout;

/// A reducer candidate as seen by the reduction loop.
pub(crate) struct Reducer<'a> {
    pub lm: &'a [u16],
    pub poly: &'a IPoly,
}

impl IPoly {
    pub fn zero() -> IPoly {
        IPoly { terms: Vec::new() }
    }

    /// Integral multiple `scale * f` in permuted coordinates.
    pub fn from_mpoly(f: &MPoly, ord: &MonomialOrder) -> (IPoly, BigInt) {
        let den = f.denominator_lcm();
        let mut terms: Vec<Term> = f
            .terms()
            .iter()
            .map(|(m, c)| {
                let v = c * Rational::from_integer(den.clone());
                (ord.permute(m), v.to_integer())
            })
            .collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        (IPoly { terms }, den)
    }

    pub fn to_mpoly(&self, ord: &MonomialOrder) -> MPoly {
        MPoly::from_terms(
            ord.universe(),
            self.terms
                .iter()
                .map(|(e, c)| (ord.unpermute(e), Rational::from_integer(c.clone()))),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.iter().all(|&x| x == 0)
    }

    pub fn lm(&self) -> &Exponents {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| degree(&t.0)).max().unwrap_or(0)
    }

    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the integer content and makes the leading coefficient
    /// positive. Returns the signed factor removed.
    pub fn make_primitive(&mut self) -> BigInt {
        if self.terms.is_empty() {
            return BigInt::one();
        }
        let mut g = self.content();
        if self.lc().is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for t in &mut self.terms {
                t.1 = &t.1 / &g;
            }
        }
        g
    }

    /// S-polynomial with integer cofactors.
    pub fn spoly(f: &IPoly, g: &IPoly) -> IPoly {
        let l = lcm(f.lm(), g.lm());
        let mf = sub_exps(&l, f.lm());
        let mg = sub_exps(&l, g.lm());
        let c = f.lc().gcd(g.lc());
        let a = g.lc() / &c;
        let b = f.lc() / &c;
        let fm: Vec<Term> = f.terms[1..]
            .iter()
            .map(|(e, k)| (add_exps(e, &mf), k.clone()))
            .collect();
        IPoly {
            terms: combine(&a, &fm, &b, &mg, &g.terms[1..]),
        }
    }

    /// Fraction-free reduction. Returns the reduced polynomial `r` and the
    /// rational multiplier `mu` with `mu * self - r` in the ideal. With
    /// `full = false` only the leading term is reduced.
    pub fn reduce<'a, F>(
        mut self,
        find: F,
        full: bool,
        deadline: Option<std::time::Instant>,
    ) -> Result<(IPoly, Rational), Timeout>
    where
        F: Fn(&[u16], u64) -> Option<Reducer<'a>>,
    {
        let mut mult = Rational::one();
        let mut i = 0;
        let mut steps = 0u64;
        while i < self.terms.len() {
            let tmask = mask_of(&self.terms[i].0);
            let Some(r) = find(&self.terms[i].0, tmask) else {
                if !full {
                    break;
                }
                i += 1;
                continue;
            };
            let c = self.terms[i].1.clone();
            let lcg = r.poly.lc();
            let gg = c.gcd(lcg);
            let mut a = lcg / &gg;
            let mut b = &c / &gg;
            if a.is_negative() {
                a = -a;
                b = -b;
            }
            let m = sub_exps(&self.terms[i].0, r.lm);
            let tail = combine(&a, &self.terms[i + 1..], &b, &m, &r.poly.terms[1..]);
            self.terms.truncate(i);
            if !a.is_one() {
                for t in &mut self.terms {
                    t.1 *= &a;
                }
                mult *= Rational::from_integer(a);
            }
            self.terms.extend(tail);
            steps += 1;
            if steps % 16 == 0 {
                let g = self.content();
                if !g.is_one() && !g.is_zero() {
                    for t in &mut self.terms {
                        t.1 = &t.1 / &g;
                    }
                    mult /= Rational::from_integer(g);
                }
                if let Some(d) = deadline {
                    if std::time::Instant::now() > d {
                        return Err(Timeout);
                    }
                }
            }
        }
        Ok((self, mult))
    }

    /// Quotient by `x_i - x_j` (permuted positions) when it divides exactly.
    pub fn divide_by_difference(&self, pi: usize, pj: usize) -> Option<IPoly> {
        if self.terms.is_empty() {
            return None;
        }
        let maxk = self.terms.iter().map(|t| t.0[pi]).max().unwrap() as usize;
        if maxk == 0 {
            return None;
        }
        let mut groups: Vec<HashMap<Exponents, BigInt>> = vec![HashMap::new(); maxk + 1];
        for (e, c) in &self.terms {
            let k = e[pi] as usize;
            let mut e2 = e.clone();
            e2[pi] = 0;
            groups[k].insert(e2, c.clone());
        }
        // Synthetic division by the root x_i = x_j.
        let mut quotient: Vec<Term> = Vec::new();
        let mut prev: HashMap<Exponents, BigInt> = HashMap::new();
        for k in (1..=maxk).rev() {
            let mut cur = std::mem::take(&mut groups[k]);
            for (e, c) in &prev {
                let mut e2 = e.clone();
                e2[pj] += 1;
                *cur.entry(e2).or_insert_with(BigInt::zero) += c;
            }
            cur.retain(|_, c| !c.is_zero());
            for (e, c) in &cur {
                let mut e2 = e.clone();
                e2[pi] = (k - 1) as u16;
                quotient.push((e2, c.clone()));
            }
            prev = cur;
        }
        let mut rem = std::mem::take(&mut groups[0]);
        for (e, c) in &prev {
            let mut e2 = e.clone();
            e2[pj] += 1;
            *rem.entry(e2).or_insert_with(BigInt::zero) += c;
        }
        if rem.values().any(|c| !c.is_zero()) {
            return None;
        }
        quotient.sort_by(|a, b| b.0.cmp(&a.0));
        Some(IPoly { terms: quotient })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, VarUniverse};

    #[test]
    fn difference_division() {
        let u = VarUniverse::new(&["x2", "x1", "a"]).unwrap();
        let ord = MonomialOrder::lex(&u);
        let p = |s: &str| IPoly::from_mpoly(&parse_poly(s, &u).unwrap(), &ord).0;
        let f = p("x1^2*x2 - x1*x2^2");
        let q = f.divide_by_difference(0, 1).unwrap();
        assert_eq!(q, IPoly::from_mpoly(&parse_poly("-x1*x2", &u).unwrap(), &ord).0);
        assert!(p("x2 + x1").divide_by_difference(0, 1).is_none());
        assert!(p("a").divide_by_difference(0, 1).is_none());
        assert_eq!(p("a*x2 - a*x1").divide_by_difference(0, 1), Some(p("a")));
    }

    #[test]
    fn spoly_and_reduce() {
        let u = VarUniverse::new(&["x", "y"]).unwrap();
        let ord = MonomialOrder::lex(&u);
        let p = |s: &str| IPoly::from_mpoly(&parse_poly(s, &u).unwrap(), &ord).0;
        let s = IPoly::spoly(&p("x^2*y - 1"), &p("x*y^2 - 1"));
        assert_eq!(s, p("x - y"));
        let g = p("x - y");
        let mask = mask_of(g.lm());
        let find = |t: &[u16], tm: u64| {
            (mask & !tm == 0 && divides(g.lm(), t)).then(|| Reducer {
                lm: g.lm(),
                poly: &g,
            })
        };
        let (r, mu) = p("x^2").reduce(find, true, None).unwrap();
        assert_eq!(r, p("y^2"));
        assert!(mu.is_one());
    }
}
