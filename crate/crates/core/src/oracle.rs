//! Brute-force reference implementations, written straight from the
//! definitions and sharing nothing with the engine beyond plain monomial
//! arithmetic.

use crate::decomposition::IrreducibleComponent;
use crate::error::{Error, Result};
use crate::monomial::{Exponent, Monomial, MonomialIdeal};
use crate::slice::Slice;

/// Largest number of lattice points a scan will visit.
pub const POINT_LIMIT: u64 = 10_000_000;

fn in_ideal(gens: &[Vec<Exponent>], m: &[Exponent]) -> bool {
    gens.iter().any(|g| g.iter().zip(m).all(|(a, b)| a <= b))
}

/// Every `d` in the box `0 <= d_i <= bound_i` with `d ∉ I` and `d x_i ∈ I`
/// for all `i`, in lex order. The box must cover `lcm` of the generators.
///
/// Membership is tabulated over the whole box first: a point lies in `I`
/// exactly when it is a generator or some `d - e_i` lies in `I`. Past the
/// box edge nothing new enters `I`, because every generator fits inside.
pub fn brute_force_msm(n: usize, gens: &[Vec<Exponent>], bound: &[Exponent]) -> Result<Vec<Monomial>> {
    if bound.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: bound.len() });
    }
    for g in gens {
        if g.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: g.len() });
        }
        if g.iter().zip(bound).any(|(e, b)| e > b) {
            return Err(Error::OracleBoxTooSmall);
        }
    }
    let points = bound.iter().map(|&b| b as u128 + 1).product::<u128>();
    if points > POINT_LIMIT as u128 {
        return Err(Error::OracleBoxTooLarge { points, limit: POINT_LIMIT });
    }
    let mut out = Vec::new();
    if gens.is_empty() {
        return Ok(out);
    }
    // Row-major strides, last variable fastest, so the scan below is lex.
    let mut stride = vec![1usize; n];
    for i in (0..n.saturating_sub(1)).rev() {
        stride[i] = stride[i + 1] * (bound[i + 1] as usize + 1);
    }
    let index = |d: &[Exponent]| d.iter().zip(&stride).map(|(&e, &s)| e as usize * s).sum::<usize>();
    let mut member = vec![false; points as usize];
    for g in gens {
        member[index(g)] = true;
    }
    let mut d = vec![0; n];
    for at in 0..member.len() {
        if !member[at] {
            member[at] = (0..n).any(|i| d[i] > 0 && member[at - stride[i]]);
        }
        step(&mut d, bound);
    }
    d.fill(0);
    for at in 0..member.len() {
        if !member[at] && (0..n).all(|i| d[i] < bound[i] && member[at + stride[i]]) {
            out.push(Monomial::new(d.clone()));
        }
        step(&mut d, bound);
    }
    Ok(out)
}

fn step(d: &mut [Exponent], bound: &[Exponent]) {
    for i in (0..d.len()).rev() {
        if d[i] < bound[i] {
            d[i] += 1;
            return;
        }
        d[i] = 0;
    }
}

/// `msm(I)` by scanning the box under `lcm(min I)`.
pub fn brute_force_msm_of(ideal: &MonomialIdeal) -> Result<Vec<Monomial>> {
    let gens: Vec<Vec<Exponent>> = ideal.generators().map(<[Exponent]>::to_vec).collect();
    brute_force_msm(ideal.n(), &gens, ideal.lcm().exponents())
}

/// `(msm(I) \ S) * q`, sorted.
pub fn brute_force_content(slice: &Slice) -> Result<Vec<Monomial>> {
    let subtract: Vec<Vec<Exponent>> = slice.subtract().generators().map(<[Exponent]>::to_vec).collect();
    let mut out: Vec<Monomial> = brute_force_msm_of(slice.ideal())?
        .into_iter()
        .filter(|d| !in_ideal(&subtract, d.exponents()))
        .map(|d| d.mul(slice.multiplier()))
        .collect();
    out.sort();
    Ok(out)
}

/// The irreducible decomposition of `I`: add `x_i^{t_i}` with
/// `t_i = lcm_i + 1`, scan for maximal standard monomials and turn each `d`
/// into `<x_i^{d_i + 1} : d_i + 1 < t_i>`. Sorted.
pub fn brute_force_decomposition(ideal: &MonomialIdeal) -> Result<Vec<IrreducibleComponent>> {
    let n = ideal.n();
    if ideal.is_zero() {
        return Ok(vec![IrreducibleComponent::new(vec![0; n])]);
    }
    let t: Vec<Exponent> = ideal.lcm().exponents().iter().map(|&e| e + 1).collect();
    let mut gens: Vec<Vec<Exponent>> = ideal.generators().map(<[Exponent]>::to_vec).collect();
    for i in 0..n {
        let mut p = vec![0; n];
        p[i] = t[i];
        gens.push(p);
    }
    let mut out: Vec<IrreducibleComponent> = brute_force_msm(n, &gens, &t)?
        .into_iter()
        .map(|d| {
            let exps = d
                .exponents()
                .iter()
                .zip(&t)
                .map(|(&e, &bound)| if e + 1 < bound { e + 1 } else { 0 })
                .collect();
            IrreducibleComponent::new(exps)
        })
        .collect();
    out.sort();
    Ok(out)
}
