//! Branch and bound over maximal standard monomials: maximize an objective
//! over `msm(I)` while discarding slices whose content cannot beat the best
//! value found so far.

use std::sync::Mutex;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::compress::{BigIdeal, CompressionMode, ExponentCompression, Narrowed};
use crate::engine::{Engine, EngineOptions, EngineStats, SliceGuard};
use crate::error::{Error, Result};
use crate::monomial::{Exponent, Monomial, MonomialIdeal};
use crate::slice::Slice;
use crate::strategy::MonomialValue;

/// An objective with an upper bound on the values of a slice's content.
pub trait SliceObjective: Sync {
    fn value(&self, d: &Monomial) -> BigRational;

    /// An upper bound on `value(d)` over the content of a slice that is not
    /// trivially empty.
    fn bound(&self, slice: &Slice) -> BigRational;

    /// A slice with the same improving content as `slice`, if one half of
    /// some split can be shown not to beat `best`.
    fn eliminate(&self, _slice: &Slice, _best: &BigRational) -> Option<Slice> {
        None
    }
}

/// `v(x^d) = sum_i r_i w_i(d_i)` where `w_i` is the identity or, for a
/// compressed ideal, the map back to the original exponents of a maximal
/// standard monomial. Each `w_i` is increasing.
#[derive(Clone, Debug)]
pub struct LinearObjective {
    weights: Vec<BigRational>,
    tables: Option<Vec<Vec<BigUint>>>,
}

impl LinearObjective {
    pub fn new(weights: Vec<BigRational>) -> Self {
        LinearObjective { weights, tables: None }
    }

    pub fn from_integers(weights: &[i64]) -> Self {
        Self::new(weights.iter().map(|&r| BigRational::from_integer(r.into())).collect())
    }

    /// Values monomials of the compressed ideal by their decompressed
    /// exponents.
    pub fn with_compression(weights: Vec<BigRational>, compression: &ExponentCompression) -> Self {
        LinearObjective { weights, tables: Some(compression.tables().to_vec()) }
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    fn weight_of(&self, i: usize, e: Exponent) -> BigRational {
        let raw = match &self.tables {
            None => BigInt::from(e),
            Some(tables) => {
                let table = &tables[i];
                match table.get(e as usize).or(table.last()) {
                    Some(x) => BigInt::from(x.clone()) - 1,
                    None => BigInt::zero(),
                }
            }
        };
        BigRational::from_integer(raw)
    }

    fn term(&self, i: usize, e: Exponent) -> BigRational {
        if self.weights[i].is_zero() {
            BigRational::zero()
        } else {
            &self.weights[i] * self.weight_of(i, e)
        }
    }
}

impl MonomialValue for LinearObjective {
    fn value(&self, m: &Monomial) -> BigRational {
        m.exponents().iter().enumerate().map(|(i, &e)| self.term(i, e)).sum()
    }
}

impl SliceObjective for LinearObjective {
    fn value(&self, d: &Monomial) -> BigRational {
        MonomialValue::value(self, d)
    }

    /// Positive weights take the largest exponent any content element can
    /// have, `q_i + lcm_i - 1`; negative weights take the smallest, `q_i`.
    fn bound(&self, slice: &Slice) -> BigRational {
        let q = slice.multiplier().exponents();
        let lcm = slice.ideal().lcm();
        (0..slice.n())
            .map(|i| {
                if self.weights[i].is_positive() {
                    self.term(i, q[i] + lcm.degree(i).saturating_sub(1))
                } else {
                    self.term(i, q[i])
                }
            })
            .sum()
    }

    fn eliminate(&self, slice: &Slice, best: &BigRational) -> Option<Slice> {
        let n = slice.n();
        let bound = SliceObjective::bound(self, slice);
        let q = slice.multiplier().exponents();
        let lcm = slice.ideal().lcm();
        for (i, &qi) in q.iter().enumerate() {
            let u = lcm.degree(i);
            if u < 2 || self.weights[i].is_zero() {
                continue;
            }
            // Content elements either keep d_i = q_i (outer slice of x_i) or
            // reach d_i = q_i + u - 1 (inner slice of x_i^{u-1}).
            let spread = self.weight_of(i, qi + u - 1) - self.weight_of(i, qi);
            let shift = &self.weights[i] * &spread;
            if self.weights[i].is_positive() {
                let pivot = Monomial::var(n, i);
                if &bound - &shift <= *best && slice.is_valid_pivot(pivot.exponents()) {
                    return Some(slice.pivot_split_unchecked(&pivot).0);
                }
            } else {
                let pivot = Monomial::pure_power(n, i, u - 1);
                if &bound + &shift <= *best && slice.is_valid_pivot(pivot.exponents()) {
                    return Some(slice.pivot_split_unchecked(&pivot).1);
                }
            }
        }
        None
    }
}

/// An objective that only needs `v(a) <= v(b)` whenever `x^a | x^b`. The
/// bound is the value at `q * proj(lcm(min I))`.
pub struct MonotoneObjective<F> {
    value: F,
}

impl<F: Fn(&Monomial) -> BigRational + Sync> MonotoneObjective<F> {
    pub fn new(value: F) -> Self {
        MonotoneObjective { value }
    }
}

impl<F: Fn(&Monomial) -> BigRational + Sync> SliceObjective for MonotoneObjective<F> {
    fn value(&self, d: &Monomial) -> BigRational {
        (self.value)(d)
    }

    fn bound(&self, slice: &Slice) -> BigRational {
        (self.value)(&slice.content_upper_bound())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdpResult<W = Monomial> {
    Optimal { value: BigRational, witness: W },
    Infeasible,
}

impl<W> IdpResult<W> {
    pub fn value(&self) -> Option<&BigRational> {
        match self {
            IdpResult::Optimal { value, .. } => Some(value),
            IdpResult::Infeasible => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct IdpOptions {
    pub engine: EngineOptions,
    /// Discard slices by their bound and eliminate non-improving halves.
    pub use_bound: bool,
}

impl Default for IdpOptions {
    fn default() -> Self {
        IdpOptions { engine: EngineOptions::default(), use_bound: true }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IdpStats {
    pub engine: EngineStats,
    /// Slices replaced by one half of a split because the other half could
    /// not improve on the best value.
    pub eliminations: u64,
}

/// Best value seen so far. It only ever increases.
struct BestRecord {
    best: Mutex<Option<(BigRational, Monomial)>>,
}

impl BestRecord {
    fn offer(&self, value: BigRational, witness: Monomial) {
        let mut best = self.best.lock().unwrap();
        if best.as_ref().is_none_or(|(v, _)| value > *v) {
            *best = Some((value, witness));
        }
    }

    fn value(&self) -> Option<BigRational> {
        self.best.lock().unwrap().as_ref().map(|(v, _)| v.clone())
    }
}

struct BoundGuard<'a, O: ?Sized> {
    objective: &'a O,
    record: &'a BestRecord,
    weights: Option<&'a LinearObjective>,
    eliminations: Mutex<u64>,
}

impl<O: SliceObjective + ?Sized> SliceGuard for BoundGuard<'_, O> {
    fn inspect(&self, mut slice: Slice) -> Option<Slice> {
        loop {
            if slice.is_trivially_empty() {
                return Some(slice);
            }
            let Some(best) = self.record.value() else {
                return Some(slice);
            };
            if self.objective.bound(&slice) <= best {
                return None;
            }
            match self.objective.eliminate(&slice, &best) {
                Some(next) => {
                    *self.eliminations.lock().unwrap() += 1;
                    slice = next;
                    slice.simplify();
                }
                None => return Some(slice),
            }
        }
    }

    fn inner_first(&self, pivot: &Monomial) -> bool {
        match self.weights {
            Some(obj) => pivot
                .exponents()
                .iter()
                .zip(obj.weights())
                .map(|(&e, r)| r * BigRational::from_integer(e.into()))
                .sum::<BigRational>()
                .is_positive(),
            None => true,
        }
    }

    fn valuation(&self) -> Option<&dyn MonomialValue> {
        self.weights.map(|w| w as &dyn MonomialValue)
    }
}

/// Maximizes `objective` over `msm(I)`.
pub fn solve_idp<O: SliceObjective + ?Sized>(
    ideal: &MonomialIdeal,
    objective: &O,
    options: &IdpOptions,
) -> (IdpResult, IdpStats) {
    solve_with(ideal, objective, None, options)
}

/// Maximizes the linear objective over `msm(I)`.
pub fn solve_linear_idp(ideal: &MonomialIdeal, objective: &LinearObjective, options: &IdpOptions) -> (IdpResult, IdpStats) {
    solve_with(ideal, objective, Some(objective), options)
}

fn solve_with<O: SliceObjective + ?Sized>(
    ideal: &MonomialIdeal,
    objective: &O,
    linear: Option<&LinearObjective>,
    options: &IdpOptions,
) -> (IdpResult, IdpStats) {
    let record = BestRecord { best: Mutex::new(None) };
    let guard = BoundGuard { objective, record: &record, weights: linear, eliminations: Mutex::new(0) };
    let mut engine_options = options.engine.clone();
    // Each block of an independence split is solved without the guard, so
    // the bound would not reach inside it.
    engine_options.independence_splits = false;
    let engine = if options.use_bound {
        Engine::new(engine_options).with_guard(&guard)
    } else {
        Engine::new(engine_options)
    };
    let stats = engine.run(Slice::root(ideal.clone()), &mut |d: Monomial| {
        record.offer(objective.value(&d), d);
    });
    let eliminations = guard.eliminations.into_inner().unwrap();
    let result = match record.best.into_inner().unwrap() {
        Some((value, witness)) => IdpResult::Optimal { value, witness },
        None => IdpResult::Infeasible,
    };
    (result, IdpStats { engine: stats, eliminations })
}

/// Linear IDP on an ideal with arbitrary exponents. The witness is reported
/// in original exponents.
pub fn solve_linear_idp_big(
    ideal: &BigIdeal,
    weights: &[BigRational],
    mode: CompressionMode,
    options: &IdpOptions,
) -> Result<(IdpResult<Vec<BigUint>>, IdpStats)> {
    if weights.len() != ideal.n() {
        return Err(Error::DimensionMismatch { expected: ideal.n(), found: weights.len() });
    }
    let narrowed = Narrowed::new(ideal, mode)?;
    let objective = match narrowed.compression() {
        Some(f) => LinearObjective::with_compression(weights.to_vec(), f),
        None => LinearObjective::new(weights.to_vec()),
    };
    let (result, stats) = solve_linear_idp(narrowed.ideal(), &objective, options);
    let result = match result {
        IdpResult::Optimal { value, witness } => {
            IdpResult::Optimal { value, witness: narrowed.standard_to_big(&witness) }
        }
        IdpResult::Infeasible => IdpResult::Infeasible,
    };
    Ok((result, stats))
}

/// The least number of generators of an irreducible component of `I`:
/// `n` minus the largest support of a maximal standard monomial of
/// `sqrt(I) + <x_1^2, ..., x_n^2>`. The zero ideal has codimension 0.
pub fn codimension(ideal: &MonomialIdeal, options: &IdpOptions) -> Result<usize> {
    let n = ideal.n();
    if ideal.is_zero() {
        return Ok(0);
    }
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let squares = (0..n).map(|i| Monomial::pure_power(n, i, 2));
    let j = MonomialIdeal::from_generators(n, ideal.radical().to_monomials().into_iter().chain(squares));
    let objective = LinearObjective::new(vec![BigRational::one(); n]);
    match solve_linear_idp(&j, &objective, options).0 {
        IdpResult::Optimal { value, .. } => {
            let opt: usize = value.to_integer().try_into().expect("support size fits");
            Ok(n - opt)
        }
        IdpResult::Infeasible => unreachable!("an artinian ideal other than <1> has maximal standard monomials"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn staircase() -> MonomialIdeal {
        MonomialIdeal::from_generators(2, [[6u32, 0], [5, 2], [2, 4], [0, 6]])
    }

    fn rat(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn bound_examples() {
        let obj = LinearObjective::from_integers(&[1, 1]);
        assert_eq!(SliceObjective::bound(&obj, &Slice::root(staircase())), rat(10));
        let neg = LinearObjective::from_integers(&[-1, -2]);
        let s = Slice::new(staircase(), MonomialIdeal::zero(2), Monomial::from([1, 2]));
        assert_eq!(SliceObjective::bound(&neg, &s), rat(-5));
    }

    #[test]
    fn linear_examples() {
        for use_bound in [true, false] {
            let options = IdpOptions { use_bound, ..Default::default() };
            let (r, _) = solve_linear_idp(&staircase(), &LinearObjective::from_integers(&[1, 1]), &options);
            assert_eq!(r, IdpResult::Optimal { value: rat(7), witness: Monomial::from([4, 3]) });
            let (r, _) = solve_linear_idp(&staircase(), &LinearObjective::from_integers(&[1, -1]), &options);
            assert_eq!(r, IdpResult::Optimal { value: rat(4), witness: Monomial::from([5, 1]) });
            let (r, _) = solve_linear_idp(&staircase(), &LinearObjective::from_integers(&[0, 0]), &options);
            assert_eq!(r.value(), Some(&rat(0)));
        }
    }

    #[test]
    fn infeasible_when_msm_is_empty() {
        let i = MonomialIdeal::from_generators(2, [[5u32, 2]]);
        let (r, _) = solve_linear_idp(&i, &LinearObjective::from_integers(&[1, 1]), &IdpOptions::default());
        assert_eq!(r, IdpResult::Infeasible);
    }

    #[test]
    fn monotone_objective_matches_linear_one() {
        let obj = MonotoneObjective::new(|m: &Monomial| rat(m.total_degree() as i64));
        let (r, _) = solve_idp(&staircase(), &obj, &IdpOptions::default());
        assert_eq!(r.value(), Some(&rat(7)));
    }

    #[test]
    fn codimension_examples() {
        let o = IdpOptions::default();
        // Components <x^2, y> and <x, y^3>.
        assert_eq!(codimension(&MonomialIdeal::from_generators(2, [[2u32, 0], [1, 1], [0, 3]]), &o).unwrap(), 2);
        // Components <x^2, y> and <x>.
        assert_eq!(codimension(&MonomialIdeal::from_generators(2, [[2u32, 0], [1, 1]]), &o).unwrap(), 1);
        assert_eq!(codimension(&MonomialIdeal::maximal(2), &o).unwrap(), 2);
        assert_eq!(codimension(&MonomialIdeal::zero(3), &o).unwrap(), 0);
        assert!(matches!(codimension(&MonomialIdeal::unit(3), &o), Err(Error::UnitIdeal)));
    }

    #[test]
    fn compressed_objective_uses_original_exponents() {
        let rows = vec![
            vec![BigUint::from(100u32), BigUint::from(0u32)],
            vec![BigUint::from(40u32), BigUint::from(20u32)],
            vec![BigUint::from(0u32), BigUint::from(90u32)],
        ];
        let i = BigIdeal::from_generators(2, rows).unwrap();
        let w = vec![rat(1), rat(1)];
        let o = IdpOptions::default();
        let (direct, _) = solve_linear_idp_big(&i, &w, CompressionMode::Never, &o).unwrap();
        let (packed, _) = solve_linear_idp_big(&i, &w, CompressionMode::Always, &o).unwrap();
        assert_eq!(direct, packed);
        // msm = {x^99 y^19, x^39 y^89}
        assert_eq!(direct.value(), Some(&rat(128)));
    }
}
