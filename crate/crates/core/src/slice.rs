//! Slices and the transformations that leave their content unchanged.
//!
//! A slice `(I, S, q)` stands for the set `(msm(I) \ S) * q`. The content is
//! never materialized here; every operation in this module either keeps it
//! unchanged or partitions it.

use std::fmt;

use crate::error::{Error, Result};
use crate::monomial::{divides_projection, Exponent, Monomial, MonomialIdeal};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Slice {
    ideal: MonomialIdeal,
    subtract: MonomialIdeal,
    multiplier: Monomial,
}

/// How each minimal generator relates to `lcm(min I)`.
pub(crate) struct MaximalInfo {
    pub lcm: Vec<Exponent>,
    /// Per generator: number of variables it is maximal in (capped at 2) and
    /// the last such variable.
    pub maximal: Vec<(u8, usize)>,
}

impl MaximalInfo {
    pub fn new(ideal: &MonomialIdeal) -> Self {
        let lcm = ideal.lcm().into_exponents();
        let maximal = ideal
            .generators()
            .map(|g| {
                let mut count = 0u8;
                let mut var = 0;
                for (i, (&e, &u)) in g.iter().zip(&lcm).enumerate() {
                    if e > 0 && e == u {
                        count = (count + 1).min(2);
                        var = i;
                    }
                }
                (count, var)
            })
            .collect();
        MaximalInfo { lcm, maximal }
    }
}

/// The basic lower bound `lcm_i (1/x_i) gcd(min I ∩ <x_i>)`: every content
/// element of `(I, S, q)` is divisible by `q` times it.
pub fn simple_lower_bound(ideal: &MonomialIdeal) -> Monomial {
    let n = ideal.n();
    let mut bound = vec![0; n];
    for i in 0..n {
        let gcd = ideal.generators().filter(|g| g[i] > 0).fold(None::<Vec<Exponent>>, |acc, g| {
            Some(match acc {
                None => g.to_vec(),
                Some(a) => a.iter().zip(g).map(|(&x, &y)| x.min(y)).collect(),
            })
        });
        if let Some(mut gcd) = gcd {
            gcd[i] -= 1;
            for (b, e) in bound.iter_mut().zip(gcd) {
                *b = (*b).max(e);
            }
        }
    }
    Monomial::new(bound)
}

/// The sharper lower bound `l(I) = lcm_i (1/x_i) gcd(M_i)` where `M_i` holds
/// the generators divisible by `x_i` that are not `x_j`-maximal for any
/// `j != i`. An empty `M_i` contributes `1`.
pub fn lower_bound(ideal: &MonomialIdeal) -> Monomial {
    lower_bound_with(ideal, &MaximalInfo::new(ideal)).0
}

/// Returns the bound and whether some `M_i` is empty. No generator outside
/// `M_i` can be an `x_i`-label, so an empty `M_i` means empty content.
pub(crate) fn lower_bound_with(ideal: &MonomialIdeal, info: &MaximalInfo) -> (Monomial, bool) {
    let n = ideal.n();
    let mut gcds: Vec<Exponent> = vec![0; n * n];
    let mut seen = vec![false; n];
    let mut fold = |i: usize, g: &[Exponent]| {
        let row = &mut gcds[i * n..(i + 1) * n];
        if seen[i] {
            for (a, &b) in row.iter_mut().zip(g) {
                *a = (*a).min(b);
            }
        } else {
            row.copy_from_slice(g);
            seen[i] = true;
        }
    };
    for (g, &(count, var)) in ideal.generators().zip(&info.maximal) {
        match count {
            0 => {
                for (i, &e) in g.iter().enumerate() {
                    if e > 0 {
                        fold(i, g);
                    }
                }
            }
            1 => fold(var, g),
            _ => {}
        }
    }
    let mut bound = vec![0; n];
    for i in 0..n {
        if !seen[i] {
            continue;
        }
        let row = &gcds[i * n..(i + 1) * n];
        for (j, (b, &e)) in bound.iter_mut().zip(row).enumerate() {
            let e = if j == i { e - 1 } else { e };
            *b = (*b).max(e);
        }
    }
    (Monomial::new(bound), seen.iter().any(|&s| !s))
}

impl Slice {
    /// # Panics
    /// If the three parts do not share the same variable count.
    pub fn new(ideal: MonomialIdeal, subtract: MonomialIdeal, multiplier: Monomial) -> Self {
        assert_eq!(ideal.n(), subtract.n(), "slice parts in different rings");
        assert_eq!(ideal.n(), multiplier.n(), "slice parts in different rings");
        Slice { ideal, subtract, multiplier }
    }

    /// `(I, <0>, 1)`, whose content is `msm(I)`.
    pub fn root(ideal: MonomialIdeal) -> Self {
        let n = ideal.n();
        Slice::new(ideal, MonomialIdeal::zero(n), Monomial::one(n))
    }

    pub fn n(&self) -> usize {
        self.ideal.n()
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn subtract(&self) -> &MonomialIdeal {
        &self.subtract
    }

    pub fn multiplier(&self) -> &Monomial {
        &self.multiplier
    }

    pub fn into_parts(self) -> (MonomialIdeal, MonomialIdeal, Monomial) {
        (self.ideal, self.subtract, self.multiplier)
    }

    /// Content is empty because `x_1 ... x_n` does not divide `lcm(min I)`.
    pub fn is_trivially_empty(&self) -> bool {
        if self.ideal.is_zero() {
            return true;
        }
        let n = self.n();
        let mut covered = vec![false; n];
        for g in self.ideal.generators() {
            for (c, &e) in covered.iter_mut().zip(g) {
                *c |= e > 0;
            }
        }
        covered.iter().any(|&c| !c)
    }

    /// Drops the generators `m` with `proj(m) ∈ S`.
    pub fn normalize(&mut self) -> bool {
        if self.subtract.is_zero() {
            return false;
        }
        let subtract = &self.subtract;
        self.ideal
            .retain(|m| !subtract.generators().any(|s| divides_projection(s, m)))
    }

    /// Drops the elements of `min S` that lie in `I` or do not divide
    /// `proj(lcm(min I))`.
    pub fn prune_subtract(&mut self) -> bool {
        if self.subtract.is_zero() {
            return false;
        }
        let lcm = self.ideal.lcm();
        let ideal = &self.ideal;
        self.subtract
            .retain(|s| divides_projection(s, lcm.exponents()) && !ideal.contains(s))
    }

    /// Drops the generators that are `x_i`-maximal for two or more variables.
    /// Such a generator can never be a label.
    pub fn prune_double_maximal(&mut self) -> bool {
        let info = MaximalInfo::new(&self.ideal);
        if info.maximal.iter().all(|&(c, _)| c < 2) {
            return false;
        }
        let mut idx = 0;
        self.ideal.retain(|_| {
            let keep = info.maximal[idx].0 < 2;
            idx += 1;
            keep
        })
    }

    pub fn lower_bound(&self) -> Monomial {
        lower_bound(&self.ideal)
    }

    /// Replaces `(I, S, q)` by `(I:l, S:l, q*l)` for the lower bound `l`.
    /// Returns `false` (and leaves the slice alone) when `l = 1`.
    pub fn apply_lower_bound(&mut self) -> bool {
        let l = self.lower_bound();
        if l.is_one() {
            return false;
        }
        self.apply_colon(&l);
        true
    }

    fn apply_colon(&mut self, l: &Monomial) {
        self.ideal = self.ideal.colon(l.exponents());
        self.subtract = self.subtract.colon(l.exponents());
        self.multiplier = self.multiplier.mul(l);
    }

    /// Runs normalization, pruning of `S`, pruning of double-maximal
    /// generators and lower-bound application until nothing changes.
    /// Returns whether anything changed.
    pub fn simplify(&mut self) -> bool {
        let mut changed_any = false;
        loop {
            if self.is_trivially_empty() {
                return changed_any;
            }
            let mut changed = self.normalize();
            changed |= self.prune_subtract();
            changed |= self.prune_double_maximal();
            changed |= self.apply_lower_bound();
            if !changed {
                return changed_any;
            }
            changed_any = true;
        }
    }

    /// `q * proj(lcm(min I))`, which every content element divides.
    pub fn content_upper_bound(&self) -> Monomial {
        self.multiplier.mul(&self.ideal.lcm().projection())
    }

    /// Reason the pivot is invalid, if it is.
    pub fn pivot_defect(&self, p: &[Exponent]) -> Option<&'static str> {
        if p.len() != self.n() {
            return Some("wrong number of variables");
        }
        if p.iter().all(|&e| e == 0) {
            return Some("pivot is 1");
        }
        if self.ideal.contains(p) {
            return Some("pivot lies in I");
        }
        if self.subtract.contains(p) {
            return Some("pivot lies in S");
        }
        if !divides_projection(p, self.ideal.lcm().exponents()) {
            return Some("pivot does not divide proj(lcm(min I))");
        }
        None
    }

    pub fn is_valid_pivot(&self, p: &[Exponent]) -> bool {
        self.pivot_defect(p).is_none()
    }

    /// Splits on a valid pivot `p` into the inner slice `(I:p, S:p, q*p)`
    /// and the outer slice `(I, S + <p>, q)`. Their contents partition the
    /// content of `self`.
    pub fn pivot_split(&self, p: &Monomial) -> Result<(Slice, Slice)> {
        if let Some(reason) = self.pivot_defect(p.exponents()) {
            return Err(Error::InvalidPivot { pivot: format!("{p:?}"), reason });
        }
        Ok(self.pivot_split_unchecked(p))
    }

    pub(crate) fn pivot_split_unchecked(&self, p: &Monomial) -> (Slice, Slice) {
        (self.inner_slice(p), self.outer_slice(p))
    }

    pub(crate) fn inner_slice(&self, p: &Monomial) -> Slice {
        Slice {
            ideal: self.ideal.colon(p.exponents()),
            subtract: self.subtract.colon(p.exponents()),
            multiplier: self.multiplier.mul(p),
        }
    }

    pub(crate) fn outer_slice(&self, p: &Monomial) -> Slice {
        Slice {
            ideal: self.ideal.clone(),
            subtract: self.subtract.add_generator(p.exponents()),
            multiplier: self.multiplier.clone(),
        }
    }

    /// Label split on `x_i`: the slice `(I:x_i, S:x_i, q*x_i)` followed by one
    /// slice per generator `l_j` with `deg_i l_j = 1`, in canonical order,
    /// collecting the content elements whose first `x_i`-label is `l_j`.
    pub fn label_split(&self, i: usize) -> Result<Vec<Slice>> {
        let n = self.n();
        if i >= n {
            return Err(Error::InvalidLabelSplit { variable: i, reason: "no such variable" });
        }
        let xi = Monomial::var(n, i);
        if self.ideal.contains(xi.exponents()) {
            return Err(Error::InvalidLabelSplit { variable: i, reason: "x_i is a minimal generator" });
        }
        let mut children = vec![self.inner_slice(&xi)];
        let mut subtract = self.subtract.clone();
        for l in self.ideal.generators().filter(|g| g[i] == 1) {
            let mut lv = l.to_vec();
            lv[i] = 0;
            children.push(Slice {
                ideal: self.ideal.colon(&lv),
                subtract: subtract.colon(&lv),
                multiplier: self.multiplier.mul(&Monomial::new(lv.clone())),
            });
            subtract = subtract.add_generator(&lv);
        }
        Ok(children)
    }

    /// `d` is in the content: `q | d`, `d/q ∈ msm(I)` and `d/q ∉ S`.
    pub fn content_contains(&self, d: &Monomial) -> bool {
        let Some(base) = d.checked_div(&self.multiplier) else {
            return false;
        };
        let b = base.exponents();
        if self.ideal.contains(b) || self.subtract.contains(b) {
            return false;
        }
        let mut v = b.to_vec();
        (0..self.n()).all(|i| {
            v[i] += 1;
            let inside = self.ideal.contains(&v);
            v[i] -= 1;
            inside
        })
    }

    /// Progress measure `(S, <lcm(min I)>)`. A pivot split never shrinks
    /// either ideal and strictly enlarges one of them in each child.
    pub(crate) fn termination_measure(&self) -> (MonomialIdeal, MonomialIdeal) {
        let n = self.n();
        let g = if self.ideal.is_zero() {
            MonomialIdeal::zero(n)
        } else {
            MonomialIdeal::from_generators(n, [self.ideal.lcm()])
        };
        (self.subtract.clone(), g)
    }
}

/// `d ∈ msm(I)` checked directly from the definition.
pub fn is_maximal_standard(ideal: &MonomialIdeal, d: &[Exponent]) -> bool {
    if ideal.contains(d) {
        return false;
    }
    let mut v = d.to_vec();
    (0..d.len()).all(|i| {
        v[i] += 1;
        let inside = ideal.contains(&v);
        v[i] -= 1;
        inside
    })
}

impl fmt::Debug for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.ideal, self.subtract, self.multiplier)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, gens: &[&[Exponent]]) -> MonomialIdeal {
        MonomialIdeal::from_generators(n, gens.iter().copied())
    }

    fn staircase() -> MonomialIdeal {
        ideal(2, &[&[6, 0], &[5, 2], &[2, 4], &[0, 6]])
    }

    #[test]
    fn normalize_drops_generators_with_projection_in_s() {
        let mut s = Slice::new(staircase(), ideal(2, &[&[1, 3]]), Monomial::one(2));
        assert!(s.normalize());
        assert_eq!(s.ideal(), &ideal(2, &[&[6, 0], &[5, 2], &[0, 6]]));

        let mut untouched = Slice::root(staircase());
        assert!(!untouched.normalize());
        assert_eq!(untouched.ideal(), &staircase());

        // proj(xy) = 1 is not in <x>, so nothing is dropped.
        let mut s = Slice::new(ideal(2, &[&[1, 1], &[0, 2]]), ideal(2, &[&[1, 0]]), Monomial::one(2));
        assert!(!s.normalize());
        assert_eq!(s.ideal(), &ideal(2, &[&[1, 1], &[0, 2]]));
    }

    #[test]
    fn prune_subtract_examples() {
        let i = ideal(3, &[&[1, 0, 0], &[0, 2, 0], &[0, 0, 2], &[0, 1, 1]]);
        let mut s = Slice::new(i.clone(), ideal(3, &[&[0, 1, 1]]), Monomial::from([1, 0, 0]));
        assert!(s.prune_subtract());
        assert!(s.subtract().is_zero());
        assert_eq!(s.ideal(), &i);

        let mut s = Slice::new(ideal(2, &[&[1, 1], &[0, 2]]), ideal(2, &[&[1, 0]]), Monomial::one(2));
        assert!(s.prune_subtract());
        assert!(s.subtract().is_zero());

        let mut s = Slice::root(staircase());
        assert!(!s.prune_subtract());
    }

    #[test]
    fn lower_bound_examples() {
        let i = ideal(3, &[&[2, 1, 0], &[1, 2, 0], &[0, 1, 1], &[0, 0, 2]]);
        assert_eq!(simple_lower_bound(&i), Monomial::from([0, 1, 0]));
        let iy = i.colon(&[0, 1, 0]);
        assert_eq!(iy, ideal(3, &[&[2, 0, 0], &[1, 1, 0], &[0, 0, 1]]));
        assert_eq!(simple_lower_bound(&iy), Monomial::from([1, 0, 0]));
        assert_eq!(iy.colon(&[1, 0, 0]), MonomialIdeal::maximal(3));
        // xy^2 is y-maximal, so only x^2y constrains the x-labels.
        assert_eq!(lower_bound(&i), Monomial::from([1, 1, 0]));
        assert_eq!(lower_bound(&iy), Monomial::from([1, 0, 0]));
        assert_eq!(lower_bound(&ideal(2, &[&[1, 0], &[0, 1]])), Monomial::one(2));
        // msm(<x^3y, xy^3>) = {x^2y^2}; both bounds divide it.
        let j = ideal(2, &[&[3, 1], &[1, 3]]);
        assert_eq!(simple_lower_bound(&j), Monomial::from([1, 1]));
        assert_eq!(lower_bound(&j), Monomial::from([2, 2]));
    }

    #[test]
    fn iterated_lower_bounds_reach_the_content() {
        let i = ideal(3, &[&[2, 1, 0], &[1, 2, 0], &[0, 1, 1], &[0, 0, 2]]);
        let mut s = Slice::root(i);
        assert!(s.apply_lower_bound());
        assert_eq!(s.ideal(), &MonomialIdeal::maximal(3));
        assert_eq!(s.multiplier(), &Monomial::from([1, 1, 0]));
        assert!(!s.apply_lower_bound());
    }

    #[test]
    fn simplify_reaches_fixed_point() {
        let i = ideal(3, &[&[2, 1, 0], &[1, 2, 0], &[0, 1, 1], &[0, 0, 2]]);
        let mut s = Slice::root(i);
        assert!(s.simplify());
        assert_eq!(s, Slice::new(MonomialIdeal::maximal(3), MonomialIdeal::zero(3), Monomial::from([1, 1, 0])));
        let before = s.clone();
        assert!(!s.simplify());
        assert_eq!(s, before);
    }

    #[test]
    fn double_maximal_generators_are_pruned() {
        let mut s = Slice::root(ideal(3, &[&[2, 2, 0], &[2, 0, 1], &[0, 1, 2]]));
        assert!(s.prune_double_maximal());
        assert_eq!(s.ideal(), &ideal(3, &[&[2, 0, 1], &[0, 1, 2]]));

        let mut sq = Slice::root(ideal(3, &[&[1, 1, 0], &[0, 0, 1], &[1, 0, 0]]));
        sq.prune_double_maximal();
        assert!(sq.ideal().generators().all(|g| g.iter().filter(|&&e| e > 0).count() < 2));

        let mut s = Slice::root(ideal(2, &[&[2, 0], &[0, 2]]));
        assert!(!s.prune_double_maximal());
    }

    #[test]
    fn pivot_split_example() {
        let root = Slice::root(staircase());
        let (inner, mut outer) = root.pivot_split(&Monomial::from([1, 3])).unwrap();
        assert_eq!(inner.ideal(), &ideal(2, &[&[0, 3], &[1, 1], &[4, 0]]));
        assert!(inner.subtract().is_zero());
        assert_eq!(inner.multiplier(), &Monomial::from([1, 3]));
        outer.normalize();
        assert_eq!(
            outer,
            Slice::new(ideal(2, &[&[6, 0], &[5, 2], &[0, 6]]), ideal(2, &[&[1, 3]]), Monomial::one(2))
        );
    }

    #[test]
    fn pivot_split_with_subtract() {
        let s = Slice::new(
            ideal(3, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2], &[0, 1, 1]]),
            ideal(3, &[&[1, 1, 1]]),
            Monomial::one(3),
        );
        let (inner, _) = s.pivot_split(&Monomial::from([1, 0, 0])).unwrap();
        assert_eq!(
            inner,
            Slice::new(
                ideal(3, &[&[1, 0, 0], &[0, 2, 0], &[0, 0, 2], &[0, 1, 1]]),
                ideal(3, &[&[0, 1, 1]]),
                Monomial::from([1, 0, 0])
            )
        );
    }

    #[test]
    fn invalid_pivots_are_rejected() {
        let s = Slice::new(staircase(), ideal(2, &[&[1, 3]]), Monomial::one(2));
        for (p, why) in [
            ([0, 0], "pivot is 1"),
            ([5, 2], "pivot lies in I"),
            ([2, 3], "pivot lies in S"),
            ([6, 0], "pivot lies in I"),
        ] {
            match s.pivot_split(&Monomial::from(p)) {
                Err(Error::InvalidPivot { reason, .. }) => assert_eq!(reason, why),
                other => panic!("expected invalid pivot, got {other:?}"),
            }
        }
        let t = Slice::root(ideal(2, &[&[6, 0], &[0, 6]]));
        assert!(matches!(t.pivot_split(&Monomial::from([6, 1])), Err(Error::InvalidPivot { .. })));
    }

    #[test]
    fn label_split_children() {
        let i = ideal(3, &[&[4, 0, 0], &[0, 4, 0], &[0, 0, 4], &[1, 1, 0], &[1, 0, 1]]);
        let children = Slice::root(i).label_split(0).unwrap();
        assert_eq!(children.len(), 3);
        assert_eq!(children[0].ideal(), &ideal(3, &[&[3, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert_eq!(children[0].multiplier(), &Monomial::from([1, 0, 0]));
        // Canonical order lists xz before xy.
        assert_eq!(children[1].multiplier(), &Monomial::from([0, 0, 1]));
        assert_eq!(children[2].multiplier(), &Monomial::from([0, 1, 0]));
        assert_eq!(children[2].subtract(), &ideal(3, &[&[0, 0, 1]]));
    }

    #[test]
    fn label_split_precondition() {
        let i = ideal(2, &[&[1, 0], &[0, 3]]);
        assert!(matches!(Slice::root(i.clone()).label_split(0), Err(Error::InvalidLabelSplit { .. })));
        assert!(matches!(Slice::root(i).label_split(5), Err(Error::InvalidLabelSplit { .. })));
    }

    #[test]
    fn content_membership() {
        let s = Slice::root(staircase());
        assert!(s.content_contains(&Monomial::from([4, 3])));
        assert!(!s.content_contains(&Monomial::from([4, 2])));
        assert!(is_maximal_standard(&staircase(), &[1, 5]));
    }

    #[test]
    fn pivot_split_progresses_when_a_variable_drops_out() {
        let i = MonomialIdeal::from_generators(
            4,
            [
                [0u32, 0, 0, 3],
                [0, 0, 5, 0],
                [0, 1, 1, 0],
                [0, 5, 0, 2],
                [0, 6, 0, 0],
                [1, 0, 1, 1],
                [1, 0, 4, 0],
                [4, 3, 0, 2],
            ],
        );
        let s = Slice::root(i);
        let (inner, outer) = s.pivot_split(&Monomial::from([0, 5, 0, 0])).unwrap();
        for child in [inner, outer] {
            let (f0, g0) = s.termination_measure();
            let (f1, g1) = child.termination_measure();
            assert!(f0.is_subset_of(&f1) && g0.is_subset_of(&g1));
            assert!(f0 != f1 || g0 != g1);
        }
    }
}
