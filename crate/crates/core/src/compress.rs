//! Ideals with arbitrary-precision exponents and the rank compression that
//! lets the engine work on them with small exponents.
//!
//! Only the relative order of the exponents of each variable matters, so
//! replacing every exponent by its rank among the distinct exponents of its
//! variable gives an ideal whose maximal standard monomials map back
//! one-to-one.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::decomposition::{for_each_component, msm, IrreducibleComponent};
use crate::engine::{EngineOptions, EngineStats};
use crate::error::{Error, Result};
use crate::monomial::{Exponent, Monomial, MonomialIdeal};

/// A monomial ideal with arbitrary-precision exponents, kept as its minimal
/// generators in ascending lex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigIdeal {
    n: usize,
    gens: Vec<Vec<BigUint>>,
}

fn big_divides(a: &[BigUint], b: &[BigUint]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl BigIdeal {
    /// Minimizes `gens`. Returns an error if a generator has the wrong length.
    pub fn from_generators(n: usize, mut gens: Vec<Vec<BigUint>>) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.len() != n) {
            return Err(Error::DimensionMismatch { expected: n, found: g.len() });
        }
        // Sorting by total degree first means a divisor is always seen before
        // its multiples.
        gens.sort_by(|a, b| {
            let da: BigUint = a.iter().sum();
            let db: BigUint = b.iter().sum();
            da.cmp(&db).then_with(|| a.cmp(b))
        });
        gens.dedup();
        let mut kept: Vec<Vec<BigUint>> = Vec::with_capacity(gens.len());
        for g in gens {
            if !kept.iter().any(|k| big_divides(k, &g)) {
                kept.push(g);
            }
        }
        kept.sort();
        Ok(BigIdeal { n, gens: kept })
    }

    pub fn from_small(ideal: &MonomialIdeal) -> Self {
        let gens = ideal
            .generators()
            .map(|g| g.iter().map(|&e| BigUint::from(e)).collect())
            .collect();
        BigIdeal { n: ideal.n(), gens }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Vec<BigUint>] {
        &self.gens
    }

    pub fn lcm(&self) -> Vec<BigUint> {
        let mut lcm = vec![BigUint::zero(); self.n];
        for g in &self.gens {
            for (a, b) in lcm.iter_mut().zip(g) {
                if b > a {
                    *a = b.clone();
                }
            }
        }
        lcm
    }

    pub fn max_exponent(&self) -> BigUint {
        self.gens.iter().flatten().max().cloned().unwrap_or_default()
    }

    pub fn contains(&self, m: &[BigUint]) -> bool {
        self.gens.iter().any(|g| big_divides(g, m))
    }

    /// The same ideal with machine exponents. Exponents must stay below
    /// `u32::MAX` so that the artinian bounds `lcm + 1` still fit.
    pub fn to_small(&self) -> Result<MonomialIdeal> {
        let mut gens = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            let row = g
                .iter()
                .map(|e| {
                    e.to_u32()
                        .filter(|&e| e < Exponent::MAX)
                        .ok_or_else(|| Error::ExponentOverflow(format!("exponent {e} needs compression")))
                })
                .collect::<Result<Vec<Exponent>>>()?;
            gens.push(row);
        }
        Ok(MonomialIdeal::from_generators(self.n, gens))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CompressionMode {
    /// Compress when some exponent exceeds [`AUTO_COMPRESS_ABOVE`].
    #[default]
    Auto,
    Always,
    Never,
}

pub const AUTO_COMPRESS_ABOVE: u32 = (1 << 15) - 1;

/// Per variable, the sorted distinct positive exponents of `min I`. The
/// exponent `table[i][r - 1]` has rank `r`; zero keeps rank zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExponentCompression {
    tables: Vec<Vec<BigUint>>,
}

impl ExponentCompression {
    pub fn new(ideal: &BigIdeal) -> Self {
        let tables = (0..ideal.n())
            .map(|i| {
                let mut col: Vec<BigUint> =
                    ideal.gens.iter().map(|g| g[i].clone()).filter(|e| !e.is_zero()).collect();
                col.sort();
                col.dedup();
                col
            })
            .collect();
        ExponentCompression { tables }
    }

    pub fn tables(&self) -> &[Vec<BigUint>] {
        &self.tables
    }

    /// The rank of an exponent that occurs in the ideal (or zero).
    pub fn rank(&self, i: usize, e: &BigUint) -> Exponent {
        if e.is_zero() {
            return 0;
        }
        let r = self.tables[i].binary_search(e).expect("exponent not present in the compressed ideal");
        (r + 1) as Exponent
    }

    /// `<f(min I)>`, the ideal with every exponent replaced by its rank.
    pub fn compress(&self, ideal: &BigIdeal) -> MonomialIdeal {
        let gens: Vec<Vec<Exponent>> = ideal
            .gens
            .iter()
            .map(|g| g.iter().enumerate().map(|(i, e)| self.rank(i, e)).collect())
            .collect();
        MonomialIdeal::from_generators(ideal.n(), gens)
    }

    /// The exponent of rank `r` in variable `i`.
    pub fn original(&self, i: usize, r: Exponent) -> BigUint {
        if r == 0 {
            BigUint::zero()
        } else {
            self.tables[i][r as usize - 1].clone()
        }
    }

    /// Maps a maximal standard monomial of the compressed ideal back:
    /// `D = f^{-1}(d * x_1 ... x_n) / (x_1 ... x_n)`.
    pub fn decompress_standard(&self, d: &Monomial) -> Vec<BigUint> {
        d.exponents()
            .iter()
            .enumerate()
            .map(|(i, &e)| self.original(i, e + 1) - BigUint::one())
            .collect()
    }

    pub fn decompress_component(&self, c: &IrreducibleComponent) -> IrreducibleComponent<BigUint> {
        IrreducibleComponent::new(c.exponents().iter().enumerate().map(|(i, &e)| self.original(i, e)).collect())
    }
}

/// An ideal prepared for the engine: either taken over as is or compressed.
#[derive(Clone, Debug)]
pub enum Narrowed {
    Direct(MonomialIdeal),
    Compressed(MonomialIdeal, ExponentCompression),
}

impl Narrowed {
    pub fn new(ideal: &BigIdeal, mode: CompressionMode) -> Result<Self> {
        let compress = match mode {
            CompressionMode::Always => true,
            CompressionMode::Never => false,
            CompressionMode::Auto => ideal.max_exponent() > BigUint::from(AUTO_COMPRESS_ABOVE),
        };
        Ok(if compress {
            let f = ExponentCompression::new(ideal);
            Narrowed::Compressed(f.compress(ideal), f)
        } else {
            Narrowed::Direct(ideal.to_small()?)
        })
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        match self {
            Narrowed::Direct(i) | Narrowed::Compressed(i, _) => i,
        }
    }

    pub fn compression(&self) -> Option<&ExponentCompression> {
        match self {
            Narrowed::Direct(_) => None,
            Narrowed::Compressed(_, f) => Some(f),
        }
    }

    pub fn standard_to_big(&self, d: &Monomial) -> Vec<BigUint> {
        match self {
            Narrowed::Direct(_) => d.exponents().iter().map(|&e| BigUint::from(e)).collect(),
            Narrowed::Compressed(_, f) => f.decompress_standard(d),
        }
    }

    pub fn component_to_big(&self, c: &IrreducibleComponent) -> IrreducibleComponent<BigUint> {
        match self {
            Narrowed::Direct(_) => IrreducibleComponent::new(c.exponents().iter().map(|&e| BigUint::from(e)).collect()),
            Narrowed::Compressed(_, f) => f.decompress_component(c),
        }
    }
}

/// `msm(I)` for an ideal with arbitrary exponents, sorted.
pub fn msm_big(ideal: &BigIdeal, mode: CompressionMode, options: &EngineOptions) -> Result<Vec<Vec<BigUint>>> {
    let narrowed = Narrowed::new(ideal, mode)?;
    let mut out: Vec<Vec<BigUint>> = msm(narrowed.ideal(), options).iter().map(|d| narrowed.standard_to_big(d)).collect();
    out.sort();
    Ok(out)
}

/// Streams the irreducible components of an ideal with arbitrary exponents.
pub fn for_each_component_big<F>(
    ideal: &BigIdeal,
    mode: CompressionMode,
    options: &EngineOptions,
    mut sink: F,
) -> Result<EngineStats>
where
    F: FnMut(IrreducibleComponent<BigUint>) + Send,
{
    let narrowed = Narrowed::new(ideal, mode)?;
    for_each_component(narrowed.ideal(), options, |c| sink(narrowed.component_to_big(&c)))
}

pub fn decomposition_big(
    ideal: &BigIdeal,
    mode: CompressionMode,
    options: &EngineOptions,
) -> Result<Vec<IrreducibleComponent<BigUint>>> {
    let mut out = Vec::new();
    for_each_component_big(ideal, mode, options, |c| out.push(c))?;
    out.sort();
    Ok(out)
}

/// The Alexander dual with respect to `point` (default `lcm(min I)`).
pub fn alexander_dual_big(
    ideal: &BigIdeal,
    point: Option<&[BigUint]>,
    mode: CompressionMode,
    options: &EngineOptions,
) -> Result<BigIdeal> {
    let n = ideal.n();
    let lcm = ideal.lcm();
    let a: Vec<BigUint> = match point {
        Some(a) if a.len() != n => return Err(Error::DimensionMismatch { expected: n, found: a.len() }),
        Some(a) if !big_divides(&lcm, a) => {
            return Err(Error::Usage("the point must be divisible by the lcm of the generators".into()))
        }
        Some(a) => a.to_vec(),
        None => lcm,
    };
    let mut gens = Vec::new();
    for_each_component_big(ideal, mode, options, |c| {
        let g = c
            .exponents()
            .iter()
            .zip(&a)
            .map(|(e, ai)| if e.is_zero() { BigUint::zero() } else { ai + 1u32 - e })
            .collect();
        gens.push(g);
    })?;
    BigIdeal::from_generators(n, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[u64]]) -> Vec<Vec<BigUint>> {
        rows.iter().map(|r| r.iter().map(|&e| BigUint::from(e)).collect()).collect()
    }

    #[test]
    fn compression_example() {
        let i = BigIdeal::from_generators(2, big(&[&[100, 0], &[40, 20], &[0, 90]])).unwrap();
        let f = ExponentCompression::new(&i);
        assert_eq!(
            f.compress(&i),
            MonomialIdeal::from_generators(2, [[2u32, 0], [1, 1], [0, 2]])
        );
        assert_eq!(f.decompress_standard(&Monomial::from([1, 0])), big(&[&[99, 19]])[0]);
    }

    #[test]
    fn small_ideals_map_to_themselves_up_to_rank() {
        let i = BigIdeal::from_generators(2, big(&[&[2, 0], &[1, 1], &[0, 2]])).unwrap();
        let f = ExponentCompression::new(&i);
        assert_eq!(f.compress(&i), i.to_small().unwrap());
    }

    #[test]
    fn minimization_of_big_generators() {
        let i = BigIdeal::from_generators(2, big(&[&[3, 3], &[1, 1], &[2, 0], &[2, 0]])).unwrap();
        assert_eq!(i.generators(), &big(&[&[1, 1], &[2, 0]])[..]);
        assert!(BigIdeal::from_generators(2, big(&[&[1, 2, 3]])).is_err());
    }

    #[test]
    fn huge_exponents_need_compression() {
        let e = 10u64.pow(12);
        let i = BigIdeal::from_generators(2, big(&[&[e, 0], &[0, e]])).unwrap();
        assert!(matches!(Narrowed::new(&i, CompressionMode::Never), Err(Error::ExponentOverflow(_))));
        let got = msm_big(&i, CompressionMode::Auto, &EngineOptions::default()).unwrap();
        assert_eq!(got, big(&[&[e - 1, e - 1]]));
    }

    #[test]
    fn modes_agree_on_moderate_exponents() {
        let i = BigIdeal::from_generators(3, big(&[&[9, 0, 0], &[0, 7, 0], &[0, 0, 8], &[4, 3, 0], &[0, 2, 5], &[6, 0, 2]]))
            .unwrap();
        let o = EngineOptions::default();
        let direct = msm_big(&i, CompressionMode::Never, &o).unwrap();
        assert_eq!(direct, msm_big(&i, CompressionMode::Always, &o).unwrap());
        assert_eq!(
            decomposition_big(&i, CompressionMode::Never, &o).unwrap(),
            decomposition_big(&i, CompressionMode::Always, &o).unwrap()
        );
        let dual = alexander_dual_big(&i, None, CompressionMode::Always, &o).unwrap();
        assert_eq!(alexander_dual_big(&dual, Some(&i.lcm()), CompressionMode::Always, &o).unwrap(), i);
    }
}
