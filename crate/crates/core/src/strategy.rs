//! Split selection strategies.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use rand::seq::index::sample;
use rand::Rng;

use crate::error::Error;
use crate::monomial::{Exponent, Monomial};
use crate::slice::{lower_bound, Slice};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum StrategyId {
    MinGen,
    Minimum,
    #[default]
    Median,
    Maximum,
    Gcd,
    Indep,
    MaxLabel,
    MinLabel,
    VarLabel,
    Frob,
}

impl StrategyId {
    pub const ALL: [StrategyId; 10] = [
        StrategyId::MinGen,
        StrategyId::Minimum,
        StrategyId::Median,
        StrategyId::Maximum,
        StrategyId::Gcd,
        StrategyId::Indep,
        StrategyId::MaxLabel,
        StrategyId::MinLabel,
        StrategyId::VarLabel,
        StrategyId::Frob,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StrategyId::MinGen => "MinGen",
            StrategyId::Minimum => "Minimum",
            StrategyId::Median => "Median",
            StrategyId::Maximum => "Maximum",
            StrategyId::Gcd => "GCD",
            StrategyId::Indep => "Indep",
            StrategyId::MaxLabel => "MaxLabel",
            StrategyId::MinLabel => "MinLabel",
            StrategyId::VarLabel => "VarLabel",
            StrategyId::Frob => "Frob",
        }
    }

    /// Whether the strategy draws from the random generator.
    pub fn is_randomized(self) -> bool {
        matches!(self, StrategyId::Gcd | StrategyId::Indep)
    }
}

impl fmt::Display for StrategyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StrategyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        StrategyId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let names: Vec<_> = StrategyId::ALL.iter().map(|id| id.name()).collect();
                Error::Usage(format!("unknown split strategy `{s}` (expected one of {})", names.join(", ")))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitDecision {
    Pivot(Monomial),
    Label(usize),
}

/// An objective on monomials, used by the Frob strategy to rank variables.
pub trait MonomialValue: Sync {
    fn value(&self, m: &Monomial) -> BigRational;
}

#[derive(Clone, Copy)]
enum PurePower {
    Minimum,
    Median,
    Maximum,
}

/// Chooses how to split a fully simplified slice that is not a base case.
///
/// `valuation` is only consulted by Frob, which behaves like Median when it
/// is absent.
pub fn select_split<R: Rng + ?Sized>(
    slice: &Slice,
    id: StrategyId,
    rng: &mut R,
    valuation: Option<&dyn MonomialValue>,
) -> SplitDecision {
    let pivot = match id {
        StrategyId::MinGen => min_gen(slice),
        StrategyId::Minimum => pure_power(slice, PurePower::Minimum),
        StrategyId::Median => pure_power(slice, PurePower::Median),
        StrategyId::Maximum => pure_power(slice, PurePower::Maximum),
        StrategyId::Gcd => random_gcd(slice, rng),
        StrategyId::Indep => independence_pivot(slice, rng),
        StrategyId::MaxLabel | StrategyId::MinLabel | StrategyId::VarLabel => {
            return SplitDecision::Label(label_variable(slice, id));
        }
        StrategyId::Frob => match valuation {
            Some(v) => frob(slice, v),
            None => None,
        },
    };
    SplitDecision::Pivot(pivot.unwrap_or_else(|| {
        pure_power(slice, PurePower::Median).expect("a non-base slice has a non-square-free generator")
    }))
}

fn min_gen(slice: &Slice) -> Option<Monomial> {
    slice
        .ideal()
        .generators()
        .find(|g| g.iter().any(|&e| e >= 2))
        .map(|g| Monomial::new(g.to_vec()).projection())
}

fn generator_count(slice: &Slice, i: usize) -> usize {
    slice.ideal().generators().filter(|g| g[i] > 0).count()
}

/// Variables `x_i` with `x_i^2 | lcm(min I)`, most popular first, ties by
/// index.
fn popular_square_variables(slice: &Slice) -> Vec<usize> {
    let lcm = slice.ideal().lcm();
    let mut vars: Vec<usize> = (0..slice.n()).filter(|&i| lcm.degree(i) >= 2).collect();
    vars.sort_by_key(|&i| std::cmp::Reverse(generator_count(slice, i)));
    vars
}

fn pure_power_exponent(slice: &Slice, i: usize, kind: PurePower) -> Exponent {
    let ideal = slice.ideal();
    let lcm = ideal.lcm().degree(i);
    let e = match kind {
        PurePower::Minimum => 1,
        PurePower::Maximum => lcm - 1,
        PurePower::Median => {
            let mut exps: Vec<Exponent> = ideal.generators().map(|g| g[i]).filter(|&e| e > 0).collect();
            exps.sort_unstable();
            exps[exps.len().div_ceil(2) - 1]
        }
    };
    // Stay below any pure power x_i^f in I so the pivot is not in I.
    let power_cap = ideal
        .generators()
        .filter(|g| g[i] > 0 && g.iter().enumerate().all(|(j, &x)| j == i || x == 0))
        .map(|g| g[i] - 1)
        .min()
        .unwrap_or(Exponent::MAX);
    e.min(lcm - 1).min(power_cap).max(1)
}

fn pure_power(slice: &Slice, kind: PurePower) -> Option<Monomial> {
    let i = *popular_square_variables(slice).first()?;
    Some(Monomial::pure_power(slice.n(), i, pure_power_exponent(slice, i, kind)))
}

fn non_unit(p: Monomial) -> Option<Monomial> {
    (!p.is_one()).then_some(p)
}

fn gcd_projection<'a>(n: usize, mut gens: impl Iterator<Item = &'a [Exponent]>) -> Option<Monomial> {
    let first = gens.next()?.to_vec();
    let gcd = gens.fold(first, |mut acc, g| {
        for (a, &b) in acc.iter_mut().zip(g) {
            *a = (*a).min(b);
        }
        acc
    });
    debug_assert_eq!(gcd.len(), n);
    non_unit(Monomial::new(gcd).projection())
}

fn random_gcd<R: Rng + ?Sized>(slice: &Slice, rng: &mut R) -> Option<Monomial> {
    let n = slice.n();
    let i = (0..n).max_by_key(|&i| (generator_count(slice, i), std::cmp::Reverse(i)))?;
    let pool: Vec<&[Exponent]> = slice.ideal().generators().filter(|g| g[i] > 0).collect();
    if pool.is_empty() {
        return None;
    }
    let picks = sample(rng, pool.len(), pool.len().min(3));
    gcd_projection(n, picks.into_iter().map(|k| pool[k]))
}

fn independence_pivot<R: Rng + ?Sized>(slice: &Slice, rng: &mut R) -> Option<Monomial> {
    let n = slice.n();
    if n < 2 {
        return None;
    }
    let pair = sample(rng, n, 2);
    let (i, j) = (pair.index(0), pair.index(1));
    gcd_projection(n, slice.ideal().generators().filter(|g| g[i] > 0 && g[j] > 0))
}

fn label_variable(slice: &Slice, id: StrategyId) -> usize {
    let n = slice.n();
    let ideal = slice.ideal();
    let candidates = (0..n).filter(|&i| !ideal.contains(Monomial::var(n, i).exponents()));
    let chosen = match id {
        StrategyId::VarLabel => candidates.min(),
        StrategyId::MaxLabel => {
            candidates.max_by_key(|&i| (generator_count(slice, i), std::cmp::Reverse(i)))
        }
        _ => candidates.max_by_key(|&i| {
            let ones = ideal.generators().filter(|g| g[i] == 1).count();
            (std::cmp::Reverse(ones), generator_count(slice, i), std::cmp::Reverse(i))
        }),
    };
    chosen.expect("a non-base slice is not generated by variables alone")
}

/// Median exponent, with the variable chosen to maximize how much the lower
/// bound of the inner slice raises the objective.
fn frob(slice: &Slice, valuation: &dyn MonomialValue) -> Option<Monomial> {
    let n = slice.n();
    let q = slice.multiplier();
    let base = valuation.value(q);
    let mut best: Option<(BigRational, Monomial)> = None;
    for i in popular_square_variables_by_index(slice) {
        let p = Monomial::pure_power(n, i, pure_power_exponent(slice, i, PurePower::Median));
        let inner = slice.ideal().colon(p.exponents());
        let gain = valuation.value(&q.mul(&p).mul(&lower_bound(&inner))) - &base;
        if best.as_ref().is_none_or(|(g, _)| gain > *g) {
            best = Some((gain, p));
        }
    }
    best.map(|(_, p)| p)
}

fn popular_square_variables_by_index(slice: &Slice) -> Vec<usize> {
    let mut vars = popular_square_variables(slice);
    vars.sort_unstable();
    vars
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialIdeal;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn slice(n: usize, gens: &[&[Exponent]]) -> Slice {
        let mut s = Slice::root(MonomialIdeal::from_generators(n, gens.iter().copied()));
        s.simplify();
        s
    }

    fn pick(s: &Slice, id: StrategyId) -> SplitDecision {
        select_split(s, id, &mut ChaCha8Rng::seed_from_u64(7), None)
    }

    #[test]
    fn names_round_trip_case_insensitively() {
        for id in StrategyId::ALL {
            assert_eq!(id.name().to_lowercase().parse::<StrategyId>().unwrap(), id);
            assert_eq!(id.name().to_uppercase().parse::<StrategyId>().unwrap(), id);
        }
        assert!("bogus".parse::<StrategyId>().is_err());
        assert_eq!(StrategyId::default(), StrategyId::Median);
    }

    #[test]
    fn median_takes_lower_middle_exponent() {
        let s = slice(2, &[&[2, 0], &[1, 1], &[0, 2]]);
        assert_eq!(pick(&s, StrategyId::Median), SplitDecision::Pivot(Monomial::from([1, 0])));
    }

    #[test]
    fn pure_power_exponents() {
        let s = slice(2, &[&[6, 0], &[5, 2], &[2, 4], &[0, 6]]);
        // Simplification leaves <x^5, x^4y, xy^3, y^5> with multiplier xy.
        assert_eq!(s.ideal().len(), 4);
        assert_eq!(s.multiplier(), &Monomial::from([1, 1]));
        // x and y both appear in three generators; x wins the tie.
        assert_eq!(pick(&s, StrategyId::Minimum), SplitDecision::Pivot(Monomial::from([1, 0])));
        assert_eq!(pick(&s, StrategyId::Median), SplitDecision::Pivot(Monomial::from([4, 0])));
        assert_eq!(pick(&s, StrategyId::Maximum), SplitDecision::Pivot(Monomial::from([4, 0])));
        assert_eq!(pick(&s, StrategyId::MinGen), SplitDecision::Pivot(Monomial::from([0, 4])));
    }

    #[test]
    fn every_pivot_is_valid() {
        let s = slice(3, &[&[4, 0, 0], &[0, 3, 0], &[0, 0, 5], &[2, 2, 1], &[1, 1, 3], &[3, 0, 2]]);
        struct Degree;
        impl MonomialValue for Degree {
            fn value(&self, m: &Monomial) -> BigRational {
                BigRational::from_integer(m.total_degree().into())
            }
        }
        for id in StrategyId::ALL {
            for seed in 0..20 {
                let d = select_split(&s, id, &mut ChaCha8Rng::seed_from_u64(seed), Some(&Degree));
                match d {
                    SplitDecision::Pivot(p) => assert!(s.is_valid_pivot(p.exponents()), "{id}: {p:?}"),
                    SplitDecision::Label(i) => assert!(s.label_split(i).is_ok()),
                }
            }
        }
    }

    #[test]
    fn label_variable_choices() {
        let s = slice(3, &[&[1, 0, 0], &[0, 3, 0], &[0, 0, 3], &[0, 1, 2], &[0, 2, 1]]);
        assert_eq!(pick(&s, StrategyId::VarLabel), SplitDecision::Label(1));
        assert_eq!(pick(&s, StrategyId::MaxLabel), SplitDecision::Label(1));
        assert_eq!(pick(&s, StrategyId::MinLabel), SplitDecision::Label(1));
    }

    #[test]
    fn frob_without_objective_matches_median() {
        let s = slice(2, &[&[6, 0], &[5, 2], &[2, 4], &[0, 6]]);
        assert_eq!(pick(&s, StrategyId::Frob), pick(&s, StrategyId::Median));
    }
}
