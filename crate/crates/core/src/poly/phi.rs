use std::sync::Arc;

use num_traits::One;

use super::{coeff_name, MPoly, Monomial, PolyError, Rational, VarUniverse};

/// Generic symmetric polynomial of partial degree `d` in the variables
/// `x`, `y`: sum over 0 <= i, j <= d of a_{max(i,j) min(i,j)} x^i y^j.
///
/// The universe must contain every a_{ij}, i >= j.
pub fn build_generic_phi(
    d: usize,
    universe: &Arc<VarUniverse>,
    x: usize,
    y: usize,
) -> Result<MPoly, PolyError> {
    if d < 1 {
        return Err(PolyError::BadDegree(d));
    }
    let n = universe.len();
    let mut terms = Vec::with_capacity((d + 1) * (d + 1));
    for i in 0..=d {
        for j in 0..=d {
            let a = universe.require(&coeff_name(i, j))?;
            let mut m = Monomial::one(n);
            m.0[x] += i as u16;
            m.0[y] += j as u16;
            m.0[a] += 1;
            terms.push((m, Rational::one()));
        }
    }
    Ok(MPoly::from_terms(universe, terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{coeff_names, parse_poly};

    fn universe(d: usize) -> Arc<VarUniverse> {
        let mut names = vec!["x".to_string(), "y".to_string()];
        names.extend(coeff_names(d));
        VarUniverse::new(&names).unwrap()
    }

    #[test]
    fn degree_one() {
        let u = universe(1);
        let phi = build_generic_phi(1, &u, 0, 1).unwrap();
        assert_eq!(phi, parse_poly("a11*x*y + a10*x + a10*y + a00", &u).unwrap());
    }

    #[test]
    fn degree_two_matches_worked_form() {
        let u = universe(2);
        let phi = build_generic_phi(2, &u, 0, 1).unwrap();
        let expected = parse_poly(
            "a00 + a10*x + a10*y + a11*x*y + a20*x^2 + a20*y^2 + a21*x^2*y + a21*x*y^2 + a22*x^2*y^2",
            &u,
        )
        .unwrap();
        assert_eq!(phi, expected);
        assert_eq!(u.coefficient_vars().len(), 6);
        assert_eq!(phi.swap_vars(0, 1), phi);
    }

    #[test]
    fn degree_zero_rejected() {
        let u = universe(1);
        assert_eq!(build_generic_phi(0, &u, 0, 1), Err(PolyError::BadDegree(0)));
    }
}
