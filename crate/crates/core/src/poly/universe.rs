use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::PolyError;

/// What a variable stands for, derived from its name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarRole {
    /// `x<k>`: the value carried by vertex k.
    Vertex(usize),
    /// `x` / `y`: the two slots of a bivariate polynomial.
    Slot(usize),
    /// `a<i><j>` with i >= j.
    Coefficient(usize, usize),
    /// `s<k>`: k-th elementary symmetric polynomial.
    Symmetric(usize),
    /// `v0`, `v1`, `t` and anything else.
    Auxiliary,
}

impl VarRole {
    pub fn of(name: &str) -> VarRole {
        let (head, digits) = split_name(name);
        match (head, digits) {
            ("x", "") => VarRole::Slot(0),
            ("y", "") => VarRole::Slot(1),
            ("x", d) if !d.is_empty() => VarRole::Vertex(d.parse().unwrap_or(0)),
            ("s", d) if !d.is_empty() => VarRole::Symmetric(d.parse().unwrap_or(0)),
            ("a", d) if d.len() == 2 => {
                let b = d.as_bytes();
                VarRole::Coefficient((b[0] - b'0') as usize, (b[1] - b'0') as usize)
            }
            _ => VarRole::Auxiliary,
        }
    }
}

fn split_name(name: &str) -> (&str, &str) {
    let pos = name.find(|c: char| c.is_ascii_digit()).unwrap_or(name.len());
    (&name[..pos], &name[pos..])
}

/// Name of the folded coefficient variable for x^i y^j (and x^j y^i).
pub fn coeff_name(i: usize, j: usize) -> String {
    let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
    format!("a{hi}{lo}")
}

/// Coefficient variable names for partial degree `d` in the order
/// a00, a10, a11, a20, a21, a22, ...
pub fn coeff_names(d: usize) -> Vec<String> {
    let mut out = Vec::with_capacity((d + 1) * (d + 2) / 2);
    for i in 0..=d {
        for j in 0..=i {
            out.push(coeff_name(i, j));
        }
    }
    out
}

/// An ordered list of variable names. Index 0 is the most significant
/// variable of the default lexicographic order.
#[derive(Clone, PartialEq, Eq)]
pub struct VarUniverse {
    names: Vec<String>,
    lookup: HashMap<String, usize>,
}

impl fmt::Debug for VarUniverse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VarUniverse{:?}", self.names)
    }
}

impl VarUniverse {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Arc<VarUniverse>, PolyError> {
        let mut lookup = HashMap::with_capacity(names.len());
        let mut owned = Vec::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            let n = n.as_ref();
            if !valid_name(n) {
                return Err(PolyError::BadVariableName(n.to_string()));
            }
            if let VarRole::Coefficient(i, j) = VarRole::of(n) {
                if i < j {
                    return Err(PolyError::BadVariableName(n.to_string()));
                }
            }
            if lookup.insert(n.to_string(), i).is_some() {
                return Err(PolyError::DuplicateVariable(n.to_string()));
            }
            owned.push(n.to_string());
        }
        Ok(Arc::new(VarUniverse { names: owned, lookup }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.lookup.get(name).copied()
    }

    pub fn role(&self, i: usize) -> VarRole {
        VarRole::of(&self.names[i])
    }

    /// Index of a name, with the `x`/`y` to `x1`/`x2` alias and the
    /// `a<i><j>` (i < j) fold applied.
    pub fn resolve(&self, name: &str) -> Option<usize> {
        if let Some(i) = self.index(name) {
            return Some(i);
        }
        match name {
            "x" => return self.index("x1"),
            "y" => return self.index("x2"),
            _ => {}
        }
        if let VarRole::Coefficient(i, j) = VarRole::of(name) {
            return self.index(&coeff_name(i, j));
        }
        None
    }

    pub fn require(&self, name: &str) -> Result<usize, PolyError> {
        self.resolve(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    /// Indices of all coefficient variables `a<i><j>`.
    pub fn coefficient_vars(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| matches!(self.role(i), VarRole::Coefficient(..)))
            .collect()
    }
}

fn valid_name(n: &str) -> bool {
    let mut chars = n.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    let (head, digits) = split_name(n);
    head.chars().all(|c| c.is_ascii_alphabetic()) && digits.chars().all(|c| c.is_ascii_digit())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_count_matches_partial_degree() {
        for d in 1..=5 {
            assert_eq!(coeff_names(d).len(), (d + 1) * (d + 2) / 2);
        }
        assert_eq!(
            coeff_names(2),
            vec!["a00", "a10", "a11", "a20", "a21", "a22"]
        );
    }

    #[test]
    fn rejects_duplicates_and_unfolded_coefficients() {
        assert!(VarUniverse::new(&["x", "x"]).is_err());
        assert!(VarUniverse::new(&["a12"]).is_err());
        assert!(VarUniverse::new(&["1x"]).is_err());
    }

    #[test]
    fn aliases() {
        let u = VarUniverse::new(&["x1", "x2", "a21"]).unwrap();
        assert_eq!(u.resolve("x"), Some(0));
        assert_eq!(u.resolve("y"), Some(1));
        assert_eq!(u.resolve("a12"), Some(2));
        assert_eq!(u.resolve("z"), None);
        assert_eq!(u.role(2), VarRole::Coefficient(2, 1));
    }
}
