//! Monomials and monomial ideals.
//!
//! A monomial `x^v` is stored as its exponent vector `v`. A [`MonomialIdeal`]
//! always holds its unique minimal generating set, sorted ascending in the
//! lexicographic order with `x_1 > x_2 > ... > x_n`. Generators are kept in a
//! single flat buffer so that colon ideals and sub-slices cost one allocation.

use std::cmp::Ordering;
use std::fmt;

/// Exponent type used by the engine. Inputs with larger exponents go through
/// [`crate::compress`] first.
pub type Exponent = u32;

/// `a | b` for raw exponent vectors of equal length.
#[inline]
pub fn divides(a: &[Exponent], b: &[Exponent]) -> bool {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// `a | proj(b)`, i.e. `a_i <= b_i - 1` wherever `b_i > 0` and `a_i = 0` elsewhere.
#[inline]
pub(crate) fn divides_projection(a: &[Exponent], b: &[Exponent]) -> bool {
    a.iter()
        .zip(b)
        .all(|(&x, &y)| x == 0 || x < y)
}

#[inline]
fn check_dims(a: usize, b: usize) {
    assert_eq!(a, b, "monomials live in rings with different variable counts");
}

/// A monomial `x^v` with non-negative exponents.
///
/// The derived ordering is lexicographic with `x_1` most significant, which
/// is the canonical generator order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<Exponent>);

impl Monomial {
    pub fn new(exponents: Vec<Exponent>) -> Self {
        Monomial(exponents)
    }

    /// The monomial `1` in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    /// The variable `x_i` (0-based index).
    pub fn var(n: usize, i: usize) -> Self {
        Self::pure_power(n, i, 1)
    }

    pub fn pure_power(n: usize, i: usize, e: Exponent) -> Self {
        let mut v = vec![0; n];
        v[i] = e;
        Monomial(v)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[Exponent] {
        &self.0
    }

    pub fn into_exponents(self) -> Vec<Exponent> {
        self.0
    }

    pub fn degree(&self, i: usize) -> Exponent {
        self.0[i]
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_square_free(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    /// Indices of the variables dividing this monomial.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    /// `self | other`.
    ///
    /// # Panics
    /// If the monomials have different variable counts.
    pub fn divides(&self, other: &Monomial) -> bool {
        check_dims(self.n(), other.n());
        divides(&self.0, &other.0)
    }

    fn zip_with(&self, other: &Monomial, f: impl Fn(Exponent, Exponent) -> Exponent) -> Monomial {
        check_dims(self.n(), other.n());
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| f(a, b)).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, Exponent::max)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, Exponent::min)
    }

    /// `m : p = m / gcd(m, p)`.
    pub fn colon(&self, p: &Monomial) -> Monomial {
        self.zip_with(p, Exponent::saturating_sub)
    }

    /// Product of two monomials.
    ///
    /// # Panics
    /// On exponent overflow.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, |a, b| a.checked_add(b).expect("exponent overflow"))
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        check_dims(self.n(), other.n());
        let mut v = Vec::with_capacity(self.n());
        for (&a, &b) in self.0.iter().zip(&other.0) {
            v.push(a.checked_sub(b)?);
        }
        Some(Monomial(v))
    }

    /// `sqrt(x^v) = x^supp(v)`.
    pub fn radical(&self) -> Monomial {
        Monomial(self.0.iter().map(|&e| e.min(1)).collect())
    }

    /// `m / sqrt(m)`: every nonzero exponent lowered by one.
    pub fn projection(&self) -> Monomial {
        Monomial(self.0.iter().map(|&e| e.saturating_sub(1)).collect())
    }
}

impl From<Vec<Exponent>> for Monomial {
    fn from(v: Vec<Exponent>) -> Self {
        Monomial(v)
    }
}

impl<const N: usize> From<[Exponent; N]> for Monomial {
    fn from(v: [Exponent; N]) -> Self {
        Monomial(v.to_vec())
    }
}

impl AsRef<[Exponent]> for Monomial {
    fn as_ref(&self) -> &[Exponent] {
        &self.0
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x^{:?}", self.0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match e {
                1 => write!(f, "x{}", i + 1)?,
                _ => write!(f, "x{}^{}", i + 1, e)?,
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A monomial ideal, represented by its minimal generators in canonical order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    data: Vec<Exponent>,
}

impl MonomialIdeal {
    /// The zero ideal `<0>` (no generators).
    pub fn zero(n: usize) -> Self {
        MonomialIdeal { n, data: Vec::new() }
    }

    /// The whole ring `<1>`.
    pub fn unit(n: usize) -> Self {
        MonomialIdeal { n, data: vec![0; n] }
    }

    /// `<x_1, ..., x_n>`.
    pub fn maximal(n: usize) -> Self {
        let mut data = vec![0; n * n];
        // Ascending lex order lists x_n first.
        for j in 0..n {
            data[j * n + (n - 1 - j)] = 1;
        }
        MonomialIdeal { n, data }
    }

    /// The ideal generated by `gens`, minimized. Duplicates and non-minimal
    /// generators are dropped.
    ///
    /// # Panics
    /// If a generator has the wrong length.
    pub fn from_generators<I, M>(n: usize, gens: I) -> Self
    where
        I: IntoIterator<Item = M>,
        M: AsRef<[Exponent]>,
    {
        let mut data = Vec::new();
        for g in gens {
            let g = g.as_ref();
            check_dims(n, g.len());
            data.extend_from_slice(g);
        }
        minimize_flat(n, data)
    }

    /// Builds an ideal from data that is already minimal and sorted.
    pub(crate) fn from_canonical(n: usize, data: Vec<Exponent>) -> Self {
        let ideal = MonomialIdeal { n, data };
        debug_assert!(ideal.is_canonical(), "non-canonical generator data");
        ideal
    }

    fn is_canonical(&self) -> bool {
        let gens: Vec<&[Exponent]> = self.generators().collect();
        let sorted = gens.windows(2).all(|w| w[0] < w[1]);
        // The quadratic minimality check is only affordable on small ideals.
        sorted
            && (gens.len() > 32
                || gens.iter().enumerate().all(|(i, a)| {
                    gens.iter().enumerate().all(|(j, b)| i == j || !divides(a, b))
                }))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of minimal generators. The zero ideal is tested with `is_zero`.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        if self.n == 0 {
            return 0;
        }
        self.data.len() / self.n
    }

    pub fn is_zero(&self) -> bool {
        self.data.is_empty()
    }

    /// `true` for the whole ring `<1>`.
    pub fn is_unit(&self) -> bool {
        self.len() == 1 && self.data.iter().all(|&e| e == 0)
    }

    pub fn generator(&self, i: usize) -> &[Exponent] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn generators(&self) -> impl ExactSizeIterator<Item = &[Exponent]> + Clone + '_ {
        // chunks_exact panics on a zero chunk size.
        self.data.chunks_exact(self.n.max(1)).take(self.len())
    }

    pub fn to_monomials(&self) -> Vec<Monomial> {
        self.generators().map(|g| Monomial(g.to_vec())).collect()
    }

    /// `m ∈ I` for a raw exponent vector.
    #[inline]
    pub fn contains(&self, m: &[Exponent]) -> bool {
        check_dims(self.n, m.len());
        self.generators().any(|g| divides(g, m))
    }

    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        self.contains(m.exponents())
    }

    /// `lcm(min I)`; `1` for the zero ideal.
    pub fn lcm(&self) -> Monomial {
        let mut l = vec![0; self.n];
        for g in self.generators() {
            for (a, &b) in l.iter_mut().zip(g) {
                *a = (*a).max(b);
            }
        }
        Monomial(l)
    }

    /// `gcd(min I)`, or `None` for the zero ideal.
    pub fn gcd(&self) -> Option<Monomial> {
        let mut gens = self.generators();
        let mut g = gens.next()?.to_vec();
        for m in gens {
            for (a, &b) in g.iter_mut().zip(m) {
                *a = (*a).min(b);
            }
        }
        Some(Monomial(g))
    }

    pub fn is_square_free(&self) -> bool {
        self.data.iter().all(|&e| e <= 1)
    }

    /// `sqrt(I) = <sqrt(m) : m ∈ min I>`.
    pub fn radical(&self) -> MonomialIdeal {
        let data = self.data.iter().map(|&e| e.min(1)).collect();
        minimize_flat(self.n, data)
    }

    /// `I ⊆ J`.
    pub fn is_subset_of(&self, other: &MonomialIdeal) -> bool {
        check_dims(self.n, other.n);
        self.generators().all(|g| other.contains(g))
    }

    /// `I + J`.
    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        check_dims(self.n, other.n);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        minimize_flat(self.n, data)
    }

    /// `I + <p>`.
    pub fn add_generator(&self, p: &[Exponent]) -> MonomialIdeal {
        check_dims(self.n, p.len());
        if self.contains(p) {
            return self.clone();
        }
        let mut data = Vec::with_capacity(self.data.len() + self.n);
        let mut inserted = false;
        for g in self.generators() {
            if divides(p, g) {
                continue;
            }
            if !inserted && p < g {
                data.extend_from_slice(p);
                inserted = true;
            }
            data.extend_from_slice(g);
        }
        if !inserted {
            data.extend_from_slice(p);
        }
        MonomialIdeal::from_canonical(self.n, data)
    }

    /// Keeps the generators for which `keep` returns `true`. Any subset of a
    /// minimal generating set is minimal, so no re-minimization is needed.
    pub fn retain(&mut self, mut keep: impl FnMut(&[Exponent]) -> bool) -> bool {
        let n = self.n;
        let k = self.len();
        let mut write = 0;
        for read in 0..k {
            let keep_it = keep(&self.data[read * n..(read + 1) * n]);
            if keep_it {
                if write != read {
                    self.data.copy_within(read * n..(read + 1) * n, write * n);
                }
                write += 1;
            }
        }
        self.data.truncate(write * n);
        write != k
    }

    /// `min(I : p)`.
    ///
    /// Only pairs that can possibly divide each other after the colon are
    /// tested. Generators are grouped by the fingerprint
    /// `f(u)_i = min(u_i, p_i + 1)` (zero where `p_i = 0`), and `a:p | b:p`
    /// is only checked when some `i` has `p_i >= f(a)_i > f(b)_i`.
    /// Generators `a` with `p | proj(a)` are never tested at all.
    pub fn colon(&self, p: &[Exponent]) -> MonomialIdeal {
        check_dims(self.n, p.len());
        let n = self.n;
        if p.iter().all(|&e| e == 0) || self.is_zero() {
            return self.clone();
        }
        let k = self.len();
        let mut quotients = Vec::with_capacity(k * n);
        for g in self.generators() {
            quotients.extend(g.iter().zip(p).map(|(&a, &b)| a.saturating_sub(b)));
        }
        let q = |j: usize| &quotients[j * n..(j + 1) * n];

        let support: Vec<usize> = (0..n).filter(|&i| p[i] > 0).collect();
        let width = support.len();
        let mut fingerprints = Vec::with_capacity(k * width);
        let mut tested = Vec::with_capacity(k);
        for (j, g) in self.generators().enumerate() {
            let mut above_everywhere = true;
            for &i in &support {
                let f = g[i].min(p[i].saturating_add(1));
                if f <= p[i] {
                    above_everywhere = false;
                }
                fingerprints.push(f);
            }
            if !above_everywhere {
                tested.push(j);
            }
        }
        let fp = |j: usize| &fingerprints[j * width..(j + 1) * width];

        let mut removed = vec![false; k];
        if tested.len() > 1 {
            tested.sort_unstable_by(|&a, &b| fp(a).cmp(fp(b)));
            let mut classes: Vec<&[usize]> = Vec::new();
            let mut start = 0;
            for end in 1..=tested.len() {
                if end == tested.len() || fp(tested[end]) != fp(tested[start]) {
                    classes.push(&tested[start..end]);
                    start = end;
                }
            }
            let precedes = |u: &[Exponent], v: &[Exponent]| {
                support
                    .iter()
                    .enumerate()
                    .any(|(t, &i)| p[i] >= u[t] && u[t] > v[t])
            };
            for a in &classes {
                let fa = fp(a[0]);
                for b in &classes {
                    if !precedes(fa, fp(b[0])) {
                        continue;
                    }
                    for &y in b.iter() {
                        if removed[y] {
                            continue;
                        }
                        let qy = q(y);
                        for &x in a.iter() {
                            let qx = q(x);
                            // Equal quotients can only arise across classes that
                            // precede each other; keep the lower index.
                            if divides(qx, qy) && (x < y || qx != qy) {
                                removed[y] = true;
                                break;
                            }
                        }
                    }
                }
            }
        }

        let mut survivors: Vec<usize> = (0..k).filter(|&j| !removed[j]).collect();
        survivors.sort_unstable_by(|&a, &b| q(a).cmp(q(b)));
        let mut data = Vec::with_capacity(survivors.len() * n);
        for j in survivors {
            data.extend_from_slice(q(j));
        }
        MonomialIdeal::from_canonical(n, data)
    }

    pub fn colon_monomial(&self, p: &Monomial) -> MonomialIdeal {
        self.colon(p.exponents())
    }

    /// `min(I ∩ <p>) = { lcm(m, p) : m ∈ min(I:p) }`.
    pub fn intersect_principal(&self, p: &[Exponent]) -> MonomialIdeal {
        let colon = self.colon(p);
        let data = colon
            .data
            .iter()
            .zip(p.iter().cycle())
            .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
            .collect::<Vec<_>>();
        // m:p and p have disjoint "excess", so (m:p)*p = lcm(m, p). Multiplying
        // every generator by p preserves order and minimality.
        MonomialIdeal::from_canonical(self.n, data)
    }

    /// Restriction to the variables in `vars`: the generators supported
    /// inside `vars`, re-expressed in `vars.len()` variables.
    pub fn restrict(&self, vars: &[usize]) -> MonomialIdeal {
        let mut data = Vec::new();
        let inside = |g: &[Exponent]| {
            g.iter()
                .enumerate()
                .all(|(i, &e)| e == 0 || vars.contains(&i))
        };
        for g in self.generators().filter(|g| inside(g)) {
            data.extend(vars.iter().map(|&i| g[i]));
        }
        sort_flat(vars.len(), data)
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.generators()).finish()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (j, g) in self.generators().enumerate() {
            if j > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", Monomial(g.to_vec()))?;
        }
        if self.is_zero() {
            write!(f, "0")?;
        }
        write!(f, ">")
    }
}

/// The unique minimal generating set of `<gens>`, canonically sorted.
pub fn minimize<I, M>(n: usize, gens: I) -> MonomialIdeal
where
    I: IntoIterator<Item = M>,
    M: AsRef<[Exponent]>,
{
    MonomialIdeal::from_generators(n, gens)
}

fn sorted_order(n: usize, data: &[Exponent]) -> Vec<usize> {
    let k = data.len().checked_div(n).unwrap_or(0);
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_unstable_by(|&a, &b| data[a * n..(a + 1) * n].cmp(&data[b * n..(b + 1) * n]));
    order
}

/// Sorts generator data that is known to be minimal already.
fn sort_flat(n: usize, data: Vec<Exponent>) -> MonomialIdeal {
    let order = sorted_order(n, &data);
    let mut out = Vec::with_capacity(data.len());
    for j in order {
        out.extend_from_slice(&data[j * n..(j + 1) * n]);
    }
    MonomialIdeal::from_canonical(n, out)
}

fn minimize_flat(n: usize, data: Vec<Exponent>) -> MonomialIdeal {
    if n == 0 {
        // The only monomial in zero variables is 1.
        return MonomialIdeal { n, data: Vec::new() };
    }
    let order = sorted_order(n, &data);
    let mut out: Vec<Exponent> = Vec::with_capacity(data.len());
    let mut kept = 0usize;
    for j in order {
        let g = &data[j * n..(j + 1) * n];
        // In ascending lex order any divisor of g comes before g.
        let dominated = (0..kept).any(|i| divides(&out[i * n..(i + 1) * n], g));
        if !dominated {
            out.extend_from_slice(g);
            kept += 1;
        }
    }
    MonomialIdeal { n, data: out }
}

/// Lexicographic comparison with `x_1` most significant.
pub fn lex_cmp(a: &[Exponent], b: &[Exponent]) -> Ordering {
    a.cmp(b)
}
