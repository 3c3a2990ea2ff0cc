//! Maximal standard monomials, irreducible decomposition and Alexander
//! duality on top of the slice engine.

use std::fmt;

use crate::engine::{Engine, EngineOptions, EngineStats};
use crate::error::{Error, Result};
use crate::monomial::{Exponent, Monomial, MonomialIdeal};
use crate::slice::Slice;

/// An irreducible ideal `<x_i^{e_i} : e_i > 0>`, stored densely with `0`
/// marking an absent variable. All exponents zero stands for `<0>`, which
/// only appears as the decomposition of the zero ideal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IrreducibleComponent<T = Exponent>(Vec<T>);

impl<T> IrreducibleComponent<T> {
    pub fn new(exponents: Vec<T>) -> Self {
        IrreducibleComponent(exponents)
    }

    pub fn exponents(&self) -> &[T] {
        &self.0
    }

    pub fn into_exponents(self) -> Vec<T> {
        self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }
}

impl<T: num_traits::Zero> IrreducibleComponent<T> {
    /// Number of minimal generators.
    pub fn generator_count(&self) -> usize {
        self.0.iter().filter(|e| !e.is_zero()).count()
    }
}

impl IrreducibleComponent {
    pub fn to_ideal(&self) -> MonomialIdeal {
        let n = self.n();
        MonomialIdeal::from_generators(
            n,
            self.0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| Monomial::pure_power(n, i, e)),
        )
    }
}

impl<T: fmt::Display + num_traits::Zero + num_traits::One + PartialEq> fmt::Display for IrreducibleComponent<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(i, e)| if e.is_one() { format!("x{}", i + 1) } else { format!("x{}^{e}", i + 1) })
            .collect();
        if gens.is_empty() {
            write!(f, "<0>")
        } else {
            write!(f, "<{}>", gens.join(", "))
        }
    }
}

/// `msm(I)` in canonical order.
pub fn msm(ideal: &MonomialIdeal, options: &EngineOptions) -> Vec<Monomial> {
    msm_with_stats(ideal, options).0
}

pub fn msm_with_stats(ideal: &MonomialIdeal, options: &EngineOptions) -> (Vec<Monomial>, EngineStats) {
    Engine::new(options.clone()).collect(Slice::root(ideal.clone()))
}

/// `I + <x_i^{t_i}>` with `t_i = deg_i lcm(min I) + 1`, together with `t`.
pub fn artinianize(ideal: &MonomialIdeal) -> Result<(MonomialIdeal, Vec<Exponent>)> {
    let n = ideal.n();
    let t = ideal
        .lcm()
        .exponents()
        .iter()
        .map(|&e| e.checked_add(1).ok_or_else(|| Error::ExponentOverflow(format!("{e} + 1"))))
        .collect::<Result<Vec<_>>>()?;
    let powers = t.iter().enumerate().map(|(i, &e)| Monomial::pure_power(n, i, e));
    let gens = ideal.to_monomials().into_iter().chain(powers);
    Ok((MonomialIdeal::from_generators(n, gens), t))
}

/// The component `<x_i^{d_i + 1} : d_i + 1 < t_i>` belonging to a maximal
/// standard monomial `d` of the ideal artinianized with bounds `t`.
pub fn phi(d: &Monomial, t: &[Exponent]) -> Result<IrreducibleComponent> {
    if d.n() != t.len() {
        return Err(Error::DimensionMismatch { expected: t.len(), found: d.n() });
    }
    let mut exps = Vec::with_capacity(t.len());
    for (&e, &bound) in d.exponents().iter().zip(t) {
        let next = e + 1;
        if next > bound {
            return Err(Error::Usage(format!("{d:?} is not below the artinian bounds {t:?}")));
        }
        exps.push(if next < bound { next } else { 0 });
    }
    if exps.iter().all(|&e| e == 0) {
        return Err(Error::Usage(format!("{d:?} maps to the irrelevant component")));
    }
    Ok(IrreducibleComponent(exps))
}

/// Streams the irreducible components of `I` to `sink`. The zero ideal
/// yields the single component `<0>` and the unit ideal yields nothing.
pub fn for_each_component<F>(ideal: &MonomialIdeal, options: &EngineOptions, mut sink: F) -> Result<EngineStats>
where
    F: FnMut(IrreducibleComponent) + Send,
{
    if ideal.is_zero() {
        sink(IrreducibleComponent(vec![0; ideal.n()]));
        return Ok(EngineStats::default());
    }
    let (artinian, t) = artinianize(ideal)?;
    let stats = Engine::new(options.clone()).run(Slice::root(artinian), &mut |d: Monomial| {
        sink(phi(&d, &t).expect("maximal standard monomials of an artinianized ideal lie below its bounds"))
    });
    Ok(stats)
}

/// The irredundant irreducible decomposition of `I`, sorted.
pub fn irreducible_decomposition(ideal: &MonomialIdeal, options: &EngineOptions) -> Result<Vec<IrreducibleComponent>> {
    let mut out = Vec::new();
    for_each_component(ideal, options, |c| out.push(c))?;
    out.sort();
    Ok(out)
}

/// The intersection of the components as a monomial ideal.
pub fn intersect_components(n: usize, components: &[IrreducibleComponent]) -> MonomialIdeal {
    let mut acc = MonomialIdeal::unit(n);
    for c in components {
        let mut next = Vec::new();
        for g in acc.generators() {
            for (i, &e) in c.exponents().iter().enumerate() {
                if e > 0 {
                    let mut m = g.to_vec();
                    m[i] = m[i].max(e);
                    next.push(m);
                }
            }
        }
        acc = MonomialIdeal::from_generators(n, next);
    }
    acc
}

/// The Alexander dual of `I` with respect to `point` (default
/// `lcm(min I)`): generated by `prod_{e_i > 0} x_i^{a_i + 1 - e_i}` over the
/// irreducible components `<x_i^{e_i}>` of `I`.
pub fn alexander_dual(ideal: &MonomialIdeal, point: Option<&Monomial>, options: &EngineOptions) -> Result<MonomialIdeal> {
    let n = ideal.n();
    let lcm = ideal.lcm();
    let a = match point {
        Some(a) if a.n() != n => return Err(Error::DimensionMismatch { expected: n, found: a.n() }),
        Some(a) if !lcm.divides(a) => {
            return Err(Error::Usage(format!("{lcm:?} does not divide the point {a:?}")))
        }
        Some(a) => a.clone(),
        None => lcm,
    };
    let mut gens = Vec::new();
    for_each_component(ideal, options, |c| {
        let g: Vec<Exponent> = c
            .exponents()
            .iter()
            .zip(a.exponents())
            .map(|(&e, &ai)| if e > 0 { ai + 1 - e } else { 0 })
            .collect();
        gens.push(g);
    })?;
    Ok(MonomialIdeal::from_generators(n, gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, gens: &[&[Exponent]]) -> MonomialIdeal {
        MonomialIdeal::from_generators(n, gens.iter().copied())
    }

    fn comps(list: &[&[Exponent]]) -> Vec<IrreducibleComponent> {
        let mut v: Vec<_> = list.iter().map(|c| IrreducibleComponent(c.to_vec())).collect();
        v.sort();
        v
    }

    fn opts() -> EngineOptions {
        EngineOptions::default()
    }

    #[test]
    fn msm_examples() {
        let got = msm(&ideal(2, &[&[5, 2], &[2, 4]]), &opts());
        assert_eq!(got, vec![Monomial::from([4, 3])]);
        let got = msm(&ideal(3, &[&[2, 0, 0], &[1, 0, 1], &[0, 2, 0], &[0, 1, 1], &[0, 0, 2], &[1, 1, 0]]), &opts());
        assert_eq!(got, vec![Monomial::from([0, 0, 1]), Monomial::from([0, 1, 0]), Monomial::from([1, 0, 0])]);
    }

    #[test]
    fn artinianize_uses_per_variable_bounds() {
        let (i, t) = artinianize(&ideal(2, &[&[2, 0], &[1, 1]])).unwrap();
        assert_eq!(t, vec![3, 2]);
        assert_eq!(i, ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(&Monomial::from([1, 0]), &[3, 3]).unwrap(), IrreducibleComponent(vec![2, 1]));
        assert_eq!(phi(&Monomial::from([0, 2]), &[3, 3]).unwrap(), IrreducibleComponent(vec![1, 0]));
        assert!(phi(&Monomial::from([2, 2]), &[3, 3]).is_err());
        assert!(phi(&Monomial::from([3, 0]), &[3, 3]).is_err());
        // msm(<x^2, xy, y^3>) = {x, y^2}
        assert_eq!(phi(&Monomial::from([0, 2]), &[3, 4]).unwrap(), IrreducibleComponent(vec![1, 3]));
    }

    #[test]
    fn decomposition_examples() {
        let got = irreducible_decomposition(&ideal(2, &[&[2, 0], &[1, 1], &[0, 3]]), &opts()).unwrap();
        assert_eq!(got, comps(&[&[2, 1], &[1, 3]]));
        let got = irreducible_decomposition(&ideal(2, &[&[2, 0], &[1, 1]]), &opts()).unwrap();
        assert_eq!(got, comps(&[&[2, 1], &[1, 0]]));
        let got = irreducible_decomposition(&ideal(2, &[&[3, 0]]), &opts()).unwrap();
        assert_eq!(got, comps(&[&[3, 0]]));
    }

    #[test]
    fn decomposition_edge_cases() {
        assert_eq!(irreducible_decomposition(&MonomialIdeal::zero(2), &opts()).unwrap(), comps(&[&[0, 0]]));
        assert!(irreducible_decomposition(&MonomialIdeal::unit(2), &opts()).unwrap().is_empty());
    }

    #[test]
    fn components_intersect_back_to_the_ideal() {
        let i = ideal(3, &[&[2, 1, 0], &[1, 2, 0], &[0, 1, 1], &[0, 0, 2], &[3, 0, 1]]);
        let c = irreducible_decomposition(&i, &opts()).unwrap();
        assert_eq!(intersect_components(3, &c), i);
    }

    #[test]
    fn alexander_dual_example() {
        let i = ideal(2, &[&[2, 0], &[1, 1], &[0, 3]]);
        let a = Monomial::from([2, 3]);
        let dual = alexander_dual(&i, Some(&a), &opts()).unwrap();
        assert_eq!(dual, ideal(2, &[&[1, 3], &[2, 1]]));
        assert_eq!(alexander_dual(&dual, Some(&a), &opts()).unwrap(), i);
        assert_eq!(alexander_dual(&i, None, &opts()).unwrap(), dual);
    }

    #[test]
    fn alexander_dual_rejects_small_points() {
        let i = ideal(2, &[&[2, 0], &[1, 1], &[0, 3]]);
        assert!(matches!(alexander_dual(&i, Some(&Monomial::from([1, 3])), &opts()), Err(Error::Usage(_))));
        assert!(matches!(
            alexander_dual(&i, Some(&Monomial::from([1, 3, 3])), &opts()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn alexander_dual_of_trivial_ideals() {
        let zero = MonomialIdeal::zero(2);
        assert_eq!(alexander_dual(&zero, None, &opts()).unwrap(), MonomialIdeal::unit(2));
        assert_eq!(alexander_dual(&MonomialIdeal::unit(2), None, &opts()).unwrap(), zero);
    }

    #[test]
    fn component_display() {
        assert_eq!(IrreducibleComponent(vec![2, 1, 0]).to_string(), "<x1^2, x2>");
        assert_eq!(IrreducibleComponent(vec![0, 0]).to_string(), "<0>");
    }
}
