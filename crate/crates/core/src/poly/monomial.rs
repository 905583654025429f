use std::cmp::Ordering;
use std::sync::Arc;

use smallvec::SmallVec;

use super::{PolyError, VarUniverse};

pub type Exponents = SmallVec<[u16; 16]>;

/// Dense exponent vector indexed by universe position.
///
/// The derived `Ord` is lexicographic with index 0 most significant, which
/// is the default order of every universe.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(pub Exponents);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize, e: u16) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.0[i] = e;
        m
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Lexicographic order given by an explicit priority list of variables,
/// greatest first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialOrder {
    universe: Arc<VarUniverse>,
    priority: Vec<usize>,
    rank: Vec<usize>,
}

impl MonomialOrder {
    /// Lex order following the universe's own variable order.
    pub fn lex(universe: &Arc<VarUniverse>) -> MonomialOrder {
        let priority: Vec<usize> = (0..universe.len()).collect();
        MonomialOrder {
            universe: universe.clone(),
            rank: priority.clone(),
            priority,
        }
    }

    /// Lex order with `names` (greatest first). Must list every variable of
    /// the universe exactly once.
    pub fn lex_by_names<S: AsRef<str>>(
        universe: &Arc<VarUniverse>,
        names: &[S],
    ) -> Result<MonomialOrder, PolyError> {
        let mut priority = Vec::with_capacity(names.len());
        for n in names {
            priority.push(universe.require(n.as_ref())?);
        }
        MonomialOrder::from_priority(universe, priority)
    }

    pub fn from_priority(
        universe: &Arc<VarUniverse>,
        priority: Vec<usize>,
    ) -> Result<MonomialOrder, PolyError> {
        let n = universe.len();
        let mut rank = vec![usize::MAX; n];
        for (r, &v) in priority.iter().enumerate() {
            if v >= n || rank[v] != usize::MAX {
                return Err(PolyError::BadOrder);
            }
            rank[v] = r;
        }
        if priority.len() != n {
            return Err(PolyError::BadOrder);
        }
        Ok(MonomialOrder {
            universe: universe.clone(),
            priority,
            rank,
        })
    }

    pub fn universe(&self) -> &Arc<VarUniverse> {
        &self.universe
    }

    /// Variable indices, greatest first.
    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    /// Position of variable `v` in the priority list (0 = greatest).
    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn is_natural(&self) -> bool {
        self.priority.iter().enumerate().all(|(r, &v)| r == v)
    }

    pub fn names(&self) -> Vec<String> {
        self.priority
            .iter()
            .map(|&v| self.universe.name(v).to_string())
            .collect()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        for &v in &self.priority {
            match a.0[v].cmp(&b.0[v]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Exponents rearranged so that plain slice comparison realises this
    /// order.
    pub fn permute(&self, m: &Monomial) -> Exponents {
        self.priority.iter().map(|&v| m.0[v]).collect()
    }

    pub fn unpermute(&self, e: &[u16]) -> Monomial {
        let mut out = Monomial::one(e.len());
        for (r, &v) in self.priority.iter().enumerate() {
            out.0[v] = e[r];
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(v: Vec<u16>) -> Monomial {
        Monomial(v.into_iter().collect())
    }

    #[test]
    fn lcm_and_division() {
        let a = mono(vec![2, 0, 1]);
        let b = mono(vec![1, 3, 0]);
        assert_eq!(a.lcm(&b), mono(vec![2, 3, 1]));
        assert!(a.divides(&a.lcm(&b)));
        assert_eq!(a.lcm(&b).div(&a), mono(vec![0, 3, 0]));
        assert!(!a.coprime(&b));
        assert!(mono(vec![1, 0, 0]).coprime(&mono(vec![0, 2, 0])));
    }

    proptest! {
        #[test]
        fn lex_is_total_and_multiplicative(
            a in proptest::collection::vec(0u16..5, 4),
            b in proptest::collection::vec(0u16..5, 4),
            c in proptest::collection::vec(0u16..5, 4),
            perm in Just(vec![2usize, 0, 3, 1]).prop_shuffle(),
        ) {
            let u = VarUniverse::new(&["p", "q", "r", "w"]).unwrap();
            let ord = MonomialOrder::from_priority(&u, perm).unwrap();
            let (a, b, c) = (mono(a), mono(b), mono(c));
            let ab = ord.cmp(&a, &b);
            prop_assert_eq!(ab, ord.cmp(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            prop_assert_eq!(ord.cmp(&a.mul(&c), &b.mul(&c)), ab);
            prop_assert_ne!(ord.cmp(&a.mul(&c), &a), Ordering::Less);
            prop_assert_eq!(ord.permute(&a).cmp(&ord.permute(&b)), ab);
            prop_assert_eq!(ord.unpermute(&ord.permute(&a)), a);
        }
    }
}
