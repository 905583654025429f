use std::collections::BTreeMap;

use num_traits::Zero;

use super::{MPoly, Monomial, Rational};

/// Returned when the input is not invariant under permutations of the
/// chosen variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NotSymmetric;

/// Elementary symmetric polynomials e_1..e_k of `vars`.
pub fn elementary_symmetric(universe: &std::sync::Arc<super::VarUniverse>, vars: &[usize]) -> Vec<MPoly> {
    // prod (1 + x_i T), coefficient of T^k.
    let mut es = vec![MPoly::one(universe)];
    for &v in vars {
        let x = MPoly::var(universe, v);
        let mut next = es.clone();
        next.push(MPoly::zero(universe));
        for k in 1..next.len() {
            next[k] = &next[k] + &(&es[k - 1] * &x);
        }
        es = next;
    }
    es.remove(0);
    es
}

/// Rewrites a polynomial symmetric in `vars` as a polynomial in the
/// elementary symmetric variables `s_vars` (`s_vars[k]` stands for
/// e_{k+1}). Other variables are treated as coefficients.
///
/// Classical leading-term elimination: the lex-leading x-monomial
/// x^e with e_1 >= e_2 >= ... is cancelled by s_1^(e_1-e_2) ... s_k^(e_k).
pub fn symmetrize_to_elementary(
    f: &MPoly,
    vars: &[usize],
    s_vars: &[usize],
) -> Result<MPoly, NotSymmetric> {
    assert_eq!(vars.len(), s_vars.len(), "one s-variable per x-variable");
    let u = f.universe().clone();
    let es = elementary_symmetric(&u, vars);
    let mut powers: BTreeMap<(usize, u16), MPoly> = BTreeMap::new();
    let mut rest = f.clone();
    let mut out: Vec<(Monomial, Rational)> = Vec::new();
    let k = vars.len();
    while !rest.is_zero() {
        // Leading x-exponent in lex over `vars` (in the given order).
        let groups = rest.coefficients_in(vars);
        let (lead, coeff) = groups
            .iter()
            .max_by(|a, b| {
                let ea: Vec<u16> = vars.iter().map(|&v| a.0 .0[v]).collect();
                let eb: Vec<u16> = vars.iter().map(|&v| b.0 .0[v]).collect();
                ea.cmp(&eb)
            })
            .map(|(m, c)| (m.clone(), c.clone()))
            .unwrap();
        let e: Vec<u16> = vars.iter().map(|&v| lead.0[v]).collect();
        if e.windows(2).any(|w| w[0] < w[1]) {
            return Err(NotSymmetric);
        }
        if e.iter().all(|&x| x == 0) {
            // Remaining part is free of `vars`.
            for (m, c) in coeff.terms() {
                out.push((m.clone(), c.clone()));
            }
            rest = &rest - &coeff;
            continue;
        }
        let mut s_mono = Monomial::one(u.len());
        let mut expanded = MPoly::one(&u);
        for i in 0..k {
            let next = if i + 1 < k { e[i + 1] } else { 0 };
            let p = e[i] - next;
            if p == 0 {
                continue;
            }
            s_mono.0[s_vars[i]] += p;
            let ep = powers
                .entry((i, p))
                .or_insert_with(|| es[i].pow(p as u32))
                .clone();
            expanded = &expanded * &ep;
        }
        for (m, c) in coeff.terms() {
            out.push((m.mul(&s_mono), c.clone()));
        }
        rest = &rest - &(&expanded * &coeff);
    }
    let result = MPoly::from_terms(&u, out.into_iter().filter(|(_, c)| !c.is_zero()));
    Ok(result)
}
