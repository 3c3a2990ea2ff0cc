//! Slices whose content can be written down without splitting.

use crate::error::{Error, Result};
use crate::monomial::{Exponent, Monomial};
use crate::slice::{is_maximal_standard, lower_bound_with, MaximalInfo, Slice};

/// Upper limit on the number of generators that are not maximal in any
/// variable for the enumeration base case.
const MAX_NON_MAXIMAL: usize = 2;

/// Whether the content of `slice` can be computed directly.
pub fn is_base_case(slice: &Slice) -> bool {
    solve_directly(slice, true).is_some()
}

/// The content of a base case slice, in canonical order.
pub fn base_content(slice: &Slice) -> Result<Vec<Monomial>> {
    solve_directly(slice, true).ok_or(Error::NotBaseCase)
}

/// Returns the content when the slice is a base case: the content is
/// provably empty, `I` is square free, there are two variables, or (when
/// `enumerate` is set) at most two generators are not maximal in any
/// variable.
pub(crate) fn solve_directly(slice: &Slice, enumerate: bool) -> Option<Vec<Monomial>> {
    if slice.is_trivially_empty() {
        return Some(Vec::new());
    }
    let ideal = slice.ideal();
    let info = MaximalInfo::new(ideal);
    if lower_bound_with(ideal, &info).1 {
        return Some(Vec::new());
    }
    let q = slice.multiplier();
    let n = slice.n();
    if ideal.is_square_free() {
        let is_maximal = ideal.len() == n;
        let one = vec![0; n];
        return Some(if is_maximal && !slice.subtract().contains(&one) {
            vec![q.clone()]
        } else {
            Vec::new()
        });
    }
    if n == 2 {
        return Some(two_variables(slice));
    }
    if enumerate {
        return enumerate_labels(slice, &info);
    }
    None
}

/// In two variables the maximal standard monomials are the inner corners
/// of the staircase: `x^(v_1 - 1) y^(u_2 - 1)` for consecutive generators
/// `u, v` in canonical order.
fn two_variables(slice: &Slice) -> Vec<Monomial> {
    let gens: Vec<&[Exponent]> = slice.ideal().generators().collect();
    gens.windows(2)
        .map(|w| [w[1][0] - 1, w[0][1] - 1])
        .filter(|d| !slice.subtract().contains(d))
        .map(|d| slice.multiplier().mul(&Monomial::new(d.to_vec())))
        .collect()
}

/// Every `x_i`-label is either `x_i`-maximal, fixing `d_i = lcm_i - 1`, or
/// one of the few non-maximal generators `m`, fixing `d_i = m_i - 1`. A
/// generator labels at most one variable, so trying each assignment of the
/// non-maximal generators to distinct variables in their support and
/// checking the candidates recovers the content.
fn enumerate_labels(slice: &Slice, info: &MaximalInfo) -> Option<Vec<Monomial>> {
    let non_maximal: Vec<&[Exponent]> = slice
        .ideal()
        .generators()
        .zip(&info.maximal)
        .filter(|(_, &(count, _))| count == 0)
        .map(|(g, _)| g)
        .collect();
    if non_maximal.len() > MAX_NON_MAXIMAL {
        return None;
    }
    let mut candidate: Vec<Exponent> = info.lcm.iter().map(|&e| e - 1).collect();
    let mut used = vec![false; slice.n()];
    let mut found = Vec::new();
    assign(slice, &non_maximal, &info.lcm, &mut candidate, &mut used, &mut found);
    found.sort();
    found.dedup();
    Some(found.into_iter().map(|d| slice.multiplier().mul(&d)).collect())
}

fn assign(
    slice: &Slice,
    rest: &[&[Exponent]],
    lcm: &[Exponent],
    candidate: &mut Vec<Exponent>,
    used: &mut Vec<bool>,
    found: &mut Vec<Monomial>,
) {
    let Some((m, rest)) = rest.split_first() else {
        if is_maximal_standard(slice.ideal(), candidate) && !slice.subtract().contains(candidate) {
            found.push(Monomial::new(candidate.clone()));
        }
        return;
    };
    assign(slice, rest, lcm, candidate, used, found);
    for i in 0..m.len() {
        if m[i] == 0 || used[i] {
            continue;
        }
        used[i] = true;
        candidate[i] = m[i] - 1;
        assign(slice, rest, lcm, candidate, used, found);
        candidate[i] = lcm[i] - 1;
        used[i] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialIdeal;

    fn ideal(n: usize, gens: &[&[Exponent]]) -> MonomialIdeal {
        MonomialIdeal::from_generators(n, gens.iter().copied())
    }

    fn monomials(list: &[&[Exponent]]) -> Vec<Monomial> {
        let mut v: Vec<Monomial> = list.iter().map(|m| Monomial::new(m.to_vec())).collect();
        v.sort();
        v
    }

    fn sorted(mut v: Vec<Monomial>) -> Vec<Monomial> {
        v.sort();
        v
    }

    #[test]
    fn missing_variable_gives_empty_content() {
        let s = Slice::root(ideal(2, &[&[5, 2]]));
        assert!(is_base_case(&s));
        assert_eq!(base_content(&s).unwrap(), vec![]);
        // The whole ring has no standard monomials at all.
        assert_eq!(base_content(&Slice::root(MonomialIdeal::unit(3))).unwrap(), vec![]);
    }

    #[test]
    fn maximal_ideal_gives_the_multiplier() {
        let s = Slice::new(MonomialIdeal::maximal(3), MonomialIdeal::zero(3), Monomial::from([1, 1, 0]));
        assert_eq!(base_content(&s).unwrap(), vec![Monomial::from([1, 1, 0])]);
        let blocked = Slice::new(MonomialIdeal::maximal(3), MonomialIdeal::unit(3), Monomial::one(3));
        assert_eq!(base_content(&blocked).unwrap(), vec![]);
        let other = Slice::root(ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]));
        assert_eq!(base_content(&other).unwrap(), vec![]);
    }

    #[test]
    fn two_variable_staircase() {
        let s = Slice::root(ideal(2, &[&[6, 0], &[5, 2], &[2, 4], &[0, 6]]));
        assert_eq!(
            sorted(base_content(&s).unwrap()),
            monomials(&[&[5, 1], &[4, 3], &[1, 5]])
        );
        let s = Slice::new(
            ideal(2, &[&[6, 0], &[5, 2], &[2, 4], &[0, 6]]),
            ideal(2, &[&[4, 0]]),
            Monomial::from([0, 2]),
        );
        assert_eq!(sorted(base_content(&s).unwrap()), monomials(&[&[1, 7]]));
        let s = Slice::root(ideal(2, &[&[5, 2], &[2, 4]]));
        assert_eq!(base_content(&s).unwrap(), monomials(&[&[4, 3]]));
    }

    #[test]
    fn enumeration_handles_few_non_maximal_generators() {
        // xy, xz and yz are each maximal in no variable.
        let i = ideal(3, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2], &[1, 1, 0], &[0, 1, 1]]);
        let s = Slice::root(i);
        assert_eq!(sorted(base_content(&s).unwrap()), monomials(&[&[1, 0, 1], &[0, 1, 0]]));
        let s = Slice::root(ideal(3, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2], &[1, 1, 1]]));
        assert_eq!(
            sorted(base_content(&s).unwrap()),
            monomials(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]])
        );
    }

    #[test]
    fn large_slices_are_not_base_cases() {
        let i = ideal(
            3,
            &[&[3, 0, 0], &[0, 3, 0], &[0, 0, 3], &[1, 1, 0], &[0, 1, 1], &[1, 0, 1]],
        );
        assert!(solve_directly(&Slice::root(i.clone()), false).is_none());
        assert!(matches!(base_content(&Slice::root(i)), Err(Error::NotBaseCase)));
    }
}
