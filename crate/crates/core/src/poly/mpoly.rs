use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Monomial, MonomialOrder, PolyError, Rational, VarUniverse};

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept strictly descending in the universe's natural lex order
/// and never carry a zero coefficient.
#[derive(Clone)]
pub struct MPoly {
    universe: Arc<VarUniverse>,
    terms: Vec<(Monomial, Rational)>,
}

impl PartialEq for MPoly {
    fn eq(&self, other: &Self) -> bool {
        same_universe(&self.universe, &other.universe) && self.terms == other.terms
    }
}

impl Eq for MPoly {}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({})", self)
    }
}

pub(crate) fn same_universe(a: &Arc<VarUniverse>, b: &Arc<VarUniverse>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl MPoly {
    pub fn zero(universe: &Arc<VarUniverse>) -> MPoly {
        MPoly {
            universe: universe.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(universe: &Arc<VarUniverse>, c: Rational) -> MPoly {
        let mut p = MPoly::zero(universe);
        if !c.is_zero() {
            p.terms.push((Monomial::one(universe.len()), c));
        }
        p
    }

    pub fn one(universe: &Arc<VarUniverse>) -> MPoly {
        MPoly::constant(universe, Rational::one())
    }

    pub fn from_int(universe: &Arc<VarUniverse>, c: i64) -> MPoly {
        MPoly::constant(universe, rat(c))
    }

    pub fn var(universe: &Arc<VarUniverse>, i: usize) -> MPoly {
        MPoly {
            universe: universe.clone(),
            terms: vec![(Monomial::var(universe.len(), i, 1), Rational::one())],
        }
    }

    pub fn var_named(universe: &Arc<VarUniverse>, name: &str) -> Result<MPoly, PolyError> {
        Ok(MPoly::var(universe, universe.require(name)?))
    }

    pub fn monomial(universe: &Arc<VarUniverse>, m: Monomial, c: Rational) -> MPoly {
        MPoly::from_terms(universe, vec![(m, c)])
    }

    /// Builds a polynomial from arbitrary terms; like terms are combined.
    pub fn from_terms<I>(universe: &Arc<VarUniverse>, terms: I) -> MPoly
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.len(), universe.len(), "monomial length mismatch");
            if c.is_zero() {
                continue;
            }
            match acc.entry(m) {
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
            }
        }
        MPoly {
            universe: universe.clone(),
            terms: acc.into_iter().rev().collect(),
        }
    }

    fn from_hash(universe: &Arc<VarUniverse>, acc: HashMap<Monomial, Rational>) -> MPoly {
        let mut terms: Vec<(Monomial, Rational)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        MPoly {
            universe: universe.clone(),
            terms,
        }
    }

    /// Trusts the caller: terms must be strictly descending and nonzero.
    pub(crate) fn from_sorted_terms(
        universe: &Arc<VarUniverse>,
        terms: Vec<(Monomial, Rational)>,
    ) -> MPoly {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        MPoly {
            universe: universe.clone(),
            terms,
        }
    }

    pub fn universe(&self) -> &Arc<VarUniverse> {
        &self.universe
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> Rational {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::zero(),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn check_universe(&self, other: &MPoly) -> Result<(), PolyError> {
        if same_universe(&self.universe, &other.universe) {
            Ok(())
        } else {
            Err(PolyError::UniverseMismatch)
        }
    }

    /// Leading term under the natural order of the universe.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_by(&self, ord: &MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(&a.0, &b.0))
            .map(|(m, c)| (m, c))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.0[var]).max().unwrap_or(0)
    }

    /// Total degree restricted to the variables in `vars`.
    pub fn degree_in_set(&self, vars: &[usize]) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| vars.iter().map(|&v| m.0[v] as u32).sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for (m, _) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    out.insert(i);
                }
            }
        }
        out
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[var] > 0)
    }

    pub fn only_involves(&self, allowed: &[usize]) -> bool {
        self.variables().iter().all(|v| allowed.contains(v))
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.universe);
        }
        MPoly {
            universe: self.universe.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.universe);
        }
        MPoly {
            universe: self.universe.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.mul(mono), a * c))
                .collect(),
        }
    }

    fn merge(&self, other: &MPoly, negate_other: bool) -> MPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate_other { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        MPoly {
            universe: self.universe.clone(),
            terms: out,
        }
    }

    pub fn checked_add(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.check_universe(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.check_universe(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        self.check_universe(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(MPoly::zero(&self.universe));
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return Ok(other.mul_monomial(m, c));
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return Ok(self.mul_monomial(m, c));
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = ca * cb;
                acc.entry(ma.mul(mb))
                    .and_modify(|c| *c += &prod)
                    .or_insert(prod);
            }
        }
        Ok(MPoly::from_hash(&self.universe, acc))
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut result = MPoly::one(&self.universe);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact quotient `self / g`.
    pub fn divide_exact(&self, g: &MPoly) -> Result<MPoly, PolyError> {
        self.check_universe(g)?;
        let (lm_g, lc_g) = g.leading().ok_or(PolyError::DivisionByZero)?;
        if self.is_zero() {
            return Ok(MPoly::zero(&self.universe));
        }
        if let Some(c) = g.constant_value() {
            return Ok(self.scale(&c.recip()));
        }
        let mut rem: BTreeMap<Monomial, Rational> = self.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        let inv = lc_g.recip();
        while let Some((m, c)) = rem.pop_last() {
            if !lm_g.divides(&m) {
                return Err(PolyError::NotDivisible);
            }
            let qm = m.div(lm_g);
            let qc = &c * &inv;
            for (gm, gc) in g.terms.iter().skip(1) {
                let key = gm.mul(&qm);
                let delta = gc * &qc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                }
            }
            quotient.push((qm, qc));
        }
        Ok(MPoly::from_sorted_terms(&self.universe, quotient))
    }

    /// Simultaneous substitution of variables by polynomials.
    pub fn substitute(&self, bindings: &[(usize, MPoly)]) -> MPoly {
        if bindings.is_empty() || self.is_zero() {
            return self.clone();
        }
        let mut bound: Vec<Option<&MPoly>> = vec![None; self.universe.len()];
        for (v, p) in bindings {
            assert!(
                same_universe(&self.universe, p.universe()),
                "substitution across universes"
            );
            bound[*v] = Some(p);
        }
        let mut powers: HashMap<(usize, u16), MPoly> = HashMap::new();
        let mut acc = MPoly::zero(&self.universe);
        // Group terms by their bound part so each distinct product is built once.
        let mut groups: BTreeMap<Vec<u16>, Vec<(Monomial, Rational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut free = m.clone();
            let mut key = vec![0u16; m.len()];
            for (v, b) in bound.iter().enumerate() {
                if b.is_some() {
                    key[v] = m.0[v];
                    free.0[v] = 0;
                }
            }
            groups.entry(key).or_default().push((free, c.clone()));
        }
        for (key, rest) in groups {
            let mut factor = MPoly::one(&self.universe);
            for (v, &e) in key.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = powers
                    .entry((v, e))
                    .or_insert_with(|| bound[v].unwrap().pow(e as u32))
                    .clone();
                factor = &factor * &p;
            }
            let rest = MPoly::from_terms(&self.universe, rest);
            acc = &acc + &(&factor * &rest);
        }
        acc
    }

    /// Simultaneous renaming of variables (`from -> to`). Variables not
    /// listed stay in place; collisions multiply.
    pub fn rename(&self, map: &[(usize, usize)]) -> MPoly {
        let n = self.universe.len();
        let mut target: Vec<usize> = (0..n).collect();
        for &(a, b) in map {
            target[a] = b;
        }
        MPoly::from_terms(
            &self.universe,
            self.terms.iter().map(|(m, c)| {
                let mut out = Monomial::one(n);
                for (v, &e) in m.0.iter().enumerate() {
                    out.0[target[v]] += e;
                }
                (out, c.clone())
            }),
        )
    }

    /// Exchanges two variables.
    pub fn swap_vars(&self, a: usize, b: usize) -> MPoly {
        self.rename(&[(a, b), (b, a)])
    }

    /// Sets `var` to a rational value.
    pub fn specialize(&self, var: usize, value: &Rational) -> MPoly {
        let mut pows: Vec<Rational> = vec![Rational::one()];
        MPoly::from_terms(
            &self.universe,
            self.terms.iter().map(|(m, c)| {
                let e = m.0[var] as usize;
                while pows.len() <= e {
                    let next = pows.last().unwrap() * value;
                    pows.push(next);
                }
                let mut mm = m.clone();
                mm.0[var] = 0;
                (mm, c * &pows[e])
            }),
        )
    }

    /// Full evaluation; `values` is indexed by universe position.
    pub fn eval(&self, values: &[Rational]) -> Rational {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(values[v].clone(), e as usize);
                }
            }
            total += t;
        }
        total
    }

    pub fn derivative(&self, var: usize) -> MPoly {
        MPoly::from_terms(
            &self.universe,
            self.terms.iter().filter(|(m, _)| m.0[var] > 0).map(|(m, c)| {
                let mut mm = m.clone();
                let e = mm.0[var];
                mm.0[var] -= 1;
                (mm, c * rat(e as i64))
            }),
        )
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `var`,
    /// index = power of `var`.
    pub fn as_univariate(&self, var: usize) -> Vec<MPoly> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            let mut mm = m.clone();
            mm.0[var] = 0;
            buckets[e].push((mm, c.clone()));
        }
        buckets
            .into_iter()
            .map(|t| MPoly::from_terms(&self.universe, t))
            .collect()
    }

    pub fn from_univariate(universe: &Arc<VarUniverse>, var: usize, coeffs: &[MPoly]) -> MPoly {
        let mut acc = MPoly::zero(universe);
        for (e, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = &acc + &c.mul_monomial(&Monomial::var(universe.len(), var, e as u16), &Rational::one());
        }
        acc
    }

    /// Coefficients with respect to a set of main variables: maps each
    /// monomial in `main` to its coefficient polynomial in the other
    /// variables.
    pub fn coefficients_in(&self, main: &[usize]) -> BTreeMap<Monomial, MPoly> {
        let mut groups: BTreeMap<Monomial, Vec<(Monomial, Rational)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut key = Monomial::one(m.len());
            let mut rest = m.clone();
            for &v in main {
                key.0[v] = m.0[v];
                rest.0[v] = 0;
            }
            groups.entry(key).or_default().push((rest, c.clone()));
        }
        groups
            .into_iter()
            .map(|(k, t)| (k, MPoly::from_terms(&self.universe, t)))
            .collect()
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()))
    }

    /// Scales to integer coefficients with content 1 and a positive leading
    /// coefficient under `ord`.
    pub fn normalized_by(&self, ord: &MonomialOrder) -> MPoly {
        let lc = match self.leading_by(ord) {
            Some((_, c)) => c.clone(),
            None => return self.clone(),
        };
        let monic = self.scale(&lc.recip());
        let l = monic.denominator_lcm();
        monic.scale(&Rational::from_integer(l))
    }

    /// `normalized_by` under the natural order.
    pub fn normalized(&self) -> MPoly {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => {
                let monic = self.scale(&lc.recip());
                let l = monic.denominator_lcm();
                monic.scale(&Rational::from_integer(l))
            }
        }
    }

    /// Rational content (positive) such that `self = content * primitive`
    /// with `primitive` integral of content 1 (sign of `self` kept).
    pub fn rational_content(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let l = self.denominator_lcm();
        let g = self.terms.iter().fold(BigInt::zero(), |acc, (_, c)| {
            acc.gcd(&(c.numer() * (&l / c.denom())))
        });
        Rational::new(g, l)
    }

    pub fn primitive_integral(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.rational_content().recip())
    }

    /// Same polynomial up to a nonzero rational factor.
    pub fn associated(&self, other: &MPoly) -> bool {
        self.normalized() == other.normalized()
    }

    pub fn is_positive_lc(&self) -> bool {
        self.leading().map(|(_, c)| c.is_positive()).unwrap_or(false)
    }

    /// Moves the polynomial into `target`, matching variables by name.
    pub fn transfer(&self, target: &Arc<VarUniverse>) -> Result<MPoly, PolyError> {
        if same_universe(&self.universe, target) {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = (0..self.universe.len())
            .map(|i| target.index(self.universe.name(i)))
            .collect();
        let used = self.variables();
        for v in used {
            if map[v].is_none() {
                return Err(PolyError::UnknownVariable(self.universe.name(v).to_string()));
            }
        }
        Ok(MPoly::from_terms(
            target,
            self.terms.iter().map(|(m, c)| {
                let mut out = Monomial::one(target.len());
                for (v, &e) in m.0.iter().enumerate() {
                    if e > 0 {
                        out.0[map[v].unwrap()] = e;
                    }
                }
                (out, c.clone())
            }),
        ))
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.checked_add(rhs).expect("polynomials from different universes")
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.checked_sub(rhs).expect("polynomials from different universes")
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.checked_mul(rhs).expect("polynomials from different universes")
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            universe: self.universe.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        &self + &rhs
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        &self - &rhs
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

/// `(f - f[old -> new]) / (old - new)`, always an exact division.
pub fn divided_difference(f: &MPoly, old: usize, new: usize) -> MPoly {
    assert_ne!(old, new, "divided difference needs two distinct variables");
    let u = f.universe();
    let shifted = f.rename(&[(old, new)]);
    let num = f - &shifted;
    let den = &MPoly::var(u, old) - &MPoly::var(u, new);
    num.divide_exact(&den)
        .expect("divided difference is always exact")
}

/// `(f - f[a <-> b]) / (a - b)`, exact for any `f`.
pub fn swap_difference(f: &MPoly, a: usize, b: usize) -> MPoly {
    let u = f.universe();
    let num = f - &f.swap_vars(a, b);
    let den = &MPoly::var(u, a) - &MPoly::var(u, b);
    num.divide_exact(&den)
        .expect("swap difference is always exact")
}
