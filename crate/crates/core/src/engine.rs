//! The divide-and-conquer loop that enumerates the content of a slice.

use std::fmt;
use std::sync::Mutex;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::base::solve_directly;
use crate::monomial::{divides, Exponent, Monomial, MonomialIdeal};
use crate::strategy::{select_split, MonomialValue, SplitDecision, StrategyId};
use crate::slice::Slice;

/// Receives content elements as they are produced.
pub trait ContentConsumer {
    fn consume(&mut self, d: Monomial);
}

impl<F: FnMut(Monomial)> ContentConsumer for F {
    fn consume(&mut self, d: Monomial) {
        self(d)
    }
}

/// Looks at every simplified slice before it is solved or split.
pub trait SliceGuard: Sync {
    /// `None` discards the slice. Otherwise the returned slice, which must be
    /// simplified, is processed in its place.
    fn inspect(&self, slice: Slice) -> Option<Slice>;

    /// Whether the inner slice of a split on `pivot` is explored first.
    fn inner_first(&self, _pivot: &Monomial) -> bool {
        true
    }

    /// Objective offered to strategies that rank splits by value.
    fn valuation(&self) -> Option<&dyn MonomialValue> {
        None
    }
}

/// Notified of every pivot and label split.
pub trait SplitObserver: Sync {
    fn on_split(&self, parent: &Slice, children: &[Slice]);
}

#[derive(Clone, Debug)]
pub struct EngineOptions {
    pub strategy: StrategyId,
    pub seed: u64,
    /// Worker threads; 1 runs everything on the calling thread.
    pub threads: usize,
    /// Solve slices with at most two non-maximal generators directly.
    pub extended_base_case: bool,
    pub independence_splits: bool,
    /// Verify every emitted element and the progress of every pivot split.
    pub check_invariants: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            strategy: StrategyId::default(),
            seed: 0,
            threads: 1,
            extended_base_case: true,
            independence_splits: true,
            check_invariants: cfg!(debug_assertions),
        }
    }
}

impl EngineOptions {
    pub fn with_strategy(strategy: StrategyId) -> Self {
        EngineOptions { strategy, ..Default::default() }
    }
}

/// Counters for one run. Every processed slice ends up in exactly one of
/// `pruned`, `base_cases`, `independence_splits`, `pivot_splits` or
/// `label_splits`, and every processed slice except the root was created as
/// a child, so `processed == 1 + children`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EngineStats {
    pub processed: u64,
    pub pruned: u64,
    pub base_cases: u64,
    pub independence_splits: u64,
    pub pivot_splits: u64,
    pub label_splits: u64,
    pub children: u64,
    pub emitted: u64,
}

impl EngineStats {
    pub fn merge(&mut self, other: &EngineStats) {
        self.processed += other.processed;
        self.pruned += other.pruned;
        self.base_cases += other.base_cases;
        self.independence_splits += other.independence_splits;
        self.pivot_splits += other.pivot_splits;
        self.label_splits += other.label_splits;
        self.children += other.children;
        self.emitted += other.emitted;
    }

    pub fn splits(&self) -> u64 {
        self.independence_splits + self.pivot_splits + self.label_splits
    }
}

impl fmt::Display for EngineStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "slices processed: {}\npruned: {}\nbase cases: {}\nindependence splits: {}\n\
             pivot splits: {}\nlabel splits: {}\nemitted: {}",
            self.processed,
            self.pruned,
            self.base_cases,
            self.independence_splits,
            self.pivot_splits,
            self.label_splits,
            self.emitted
        )
    }
}

/// Depth of the split tree below which children are handed to separate
/// rayon tasks.
const PARALLEL_DEPTH: usize = 14;
const FLUSH_EVERY: usize = 4096;

pub struct Engine<'a> {
    options: EngineOptions,
    guard: Option<&'a dyn SliceGuard>,
    observer: Option<&'a dyn SplitObserver>,
}

impl<'a> Engine<'a> {
    pub fn new(options: EngineOptions) -> Self {
        Engine { options, guard: None, observer: None }
    }

    pub fn with_guard(mut self, guard: &'a dyn SliceGuard) -> Self {
        self.guard = Some(guard);
        self
    }

    pub fn with_observer(mut self, observer: &'a dyn SplitObserver) -> Self {
        self.observer = Some(observer);
        self
    }

    pub fn options(&self) -> &EngineOptions {
        &self.options
    }

    /// Feeds every element of the content of `slice` to `consumer` exactly
    /// once, in no particular order.
    pub fn run<C: ContentConsumer + Send>(&self, slice: Slice, consumer: &mut C) -> EngineStats {
        let mut stats = EngineStats::default();
        if self.options.threads <= 1 {
            let mut rng = ChaCha8Rng::seed_from_u64(self.options.seed);
            self.run_sequential(slice, &mut rng, &mut stats, &mut |d| consumer.consume(d));
            return stats;
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.options.threads)
            .build()
            .expect("failed to start worker threads");
        let sink = Mutex::new(consumer);
        let total = Mutex::new(EngineStats::default());
        pool.install(|| self.run_parallel(slice, 0, self.options.seed, &sink, &total));
        stats.merge(&total.into_inner().unwrap());
        stats
    }

    /// The content of `slice` in canonical order.
    pub fn collect(&self, slice: Slice) -> (Vec<Monomial>, EngineStats) {
        let mut out = Vec::new();
        let stats = self.run(slice, &mut |d| out.push(d));
        out.sort();
        (out, stats)
    }

    fn run_sequential(
        &self,
        slice: Slice,
        rng: &mut ChaCha8Rng,
        stats: &mut EngineStats,
        emit: &mut dyn FnMut(Monomial),
    ) {
        let mut stack = vec![slice];
        while let Some(s) = stack.pop() {
            let children = self.step(s, rng, stats, emit);
            stack.extend(children.into_iter().rev());
        }
    }

    fn run_parallel<C: ContentConsumer + Send>(
        &self,
        slice: Slice,
        depth: usize,
        seed: u64,
        sink: &Mutex<&mut C>,
        total: &Mutex<EngineStats>,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut stats = EngineStats::default();
        let mut buffer = Vec::new();
        let flush = |buffer: &mut Vec<Monomial>| {
            let mut consumer = sink.lock().unwrap();
            for d in buffer.drain(..) {
                consumer.consume(d);
            }
        };
        if depth >= PARALLEL_DEPTH {
            self.run_sequential(slice, &mut rng, &mut stats, &mut |d| {
                buffer.push(d);
                if buffer.len() >= FLUSH_EVERY {
                    flush(&mut buffer);
                }
            });
            flush(&mut buffer);
        } else {
            let children = self.step(slice, &mut rng, &mut stats, &mut |d| buffer.push(d));
            flush(&mut buffer);
            children.into_par_iter().enumerate().for_each(|(k, child)| {
                self.run_parallel(child, depth + 1, split_seed(seed, k), sink, total)
            });
        }
        total.lock().unwrap().merge(&stats);
    }

    /// Processes one slice: emits its content if it is a base case and
    /// otherwise returns its children in the order they should be explored.
    fn step(
        &self,
        mut slice: Slice,
        rng: &mut ChaCha8Rng,
        stats: &mut EngineStats,
        emit: &mut dyn FnMut(Monomial),
    ) -> Vec<Slice> {
        stats.processed += 1;
        slice.simplify();
        if let Some(guard) = self.guard {
            match guard.inspect(slice) {
                Some(s) => slice = s,
                None => {
                    stats.pruned += 1;
                    return Vec::new();
                }
            }
        }
        if let Some(content) = solve_directly(&slice, self.options.extended_base_case) {
            stats.base_cases += 1;
            for d in content {
                if self.options.check_invariants {
                    check_emitted(&slice, &d);
                }
                stats.emitted += 1;
                emit(d);
            }
            return Vec::new();
        }
        if self.options.independence_splits {
            let blocks = independence_partition(slice.ideal());
            if blocks.len() > 1 {
                self.independence_split(slice, &blocks, rng, stats, emit);
                return Vec::new();
            }
        }
        let valuation = self.guard.and_then(|g| g.valuation());
        let children = match select_split(&slice, self.options.strategy, rng, valuation) {
            SplitDecision::Pivot(p) => {
                if let Some(reason) = slice.pivot_defect(p.exponents()) {
                    panic!("{} chose invalid pivot {p:?} for {slice:?}: {reason}", self.options.strategy);
                }
                stats.pivot_splits += 1;
                let (inner, outer) = slice.pivot_split_unchecked(&p);
                if self.options.check_invariants {
                    check_progress(&slice, &inner);
                    check_progress(&slice, &outer);
                }
                if self.guard.is_none_or(|g| g.inner_first(&p)) {
                    vec![inner, outer]
                } else {
                    vec![outer, inner]
                }
            }
            SplitDecision::Label(i) => {
                stats.label_splits += 1;
                slice.label_split(i).unwrap_or_else(|e| {
                    panic!("{} chose invalid label split for {slice:?}: {e}", self.options.strategy)
                })
            }
        };
        if let Some(observer) = self.observer {
            observer.on_split(&slice, &children);
        }
        stats.children += children.len() as u64;
        children
    }

    /// Solves each block of variables on its own and emits the product of
    /// the block contents. Elements of `S` that mix blocks cannot be split
    /// up, so they filter the product instead.
    fn independence_split(
        &self,
        slice: Slice,
        blocks: &[Vec<usize>],
        rng: &mut ChaCha8Rng,
        stats: &mut EngineStats,
        emit: &mut dyn FnMut(Monomial),
    ) {
        stats.independence_splits += 1;
        let (ideal, subtract, q) = slice.into_parts();
        let n = ideal.n();
        let mut block_of = vec![0; n];
        for (b, block) in blocks.iter().enumerate() {
            for &v in block {
                block_of[v] = b;
            }
        }
        let mut block_subtract: Vec<Vec<Vec<Exponent>>> = vec![Vec::new(); blocks.len()];
        let mut mixed = Vec::new();
        for s in subtract.generators() {
            let mut support = s.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| block_of[i]);
            let first = support.next().unwrap_or(0);
            if support.all(|b| b == first) {
                block_subtract[first].push(blocks[first].iter().map(|&i| s[i]).collect());
            } else {
                mixed.push(s.to_vec());
            }
        }
        let mixed = MonomialIdeal::from_generators(n, mixed);

        let mut contents: Vec<Vec<Monomial>> = Vec::with_capacity(blocks.len());
        for (block, sub_s) in blocks.iter().zip(block_subtract) {
            let m = block.len();
            let sub = Slice::new(
                ideal.restrict(block),
                MonomialIdeal::from_generators(m, sub_s),
                Monomial::one(m),
            );
            let mut part = Vec::new();
            let mut nested = EngineStats::default();
            let inner = Engine { options: self.options.clone(), guard: None, observer: self.observer };
            inner.run_sequential(sub, rng, &mut nested, &mut |d| part.push(d));
            nested.emitted = 0;
            stats.merge(&nested);
            stats.children += 1;
            if part.is_empty() {
                return;
            }
            contents.push(part);
        }

        let mut index = vec![0usize; blocks.len()];
        let mut d = vec![0; n];
        loop {
            for ((block, part), &k) in blocks.iter().zip(&contents).zip(&index) {
                for (&v, &e) in block.iter().zip(part[k].exponents()) {
                    d[v] = e;
                }
            }
            if !mixed.contains(&d) {
                stats.emitted += 1;
                emit(q.mul(&Monomial::new(d.clone())));
            }
            // Advance the odometer.
            let mut b = 0;
            loop {
                if b == blocks.len() {
                    return;
                }
                index[b] += 1;
                if index[b] < contents[b].len() {
                    break;
                }
                index[b] = 0;
                b += 1;
            }
        }
    }
}

fn split_seed(seed: u64, k: usize) -> u64 {
    // splitmix64 finalizer
    let mut z = seed.wrapping_add((k as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn check_emitted(slice: &Slice, d: &Monomial) {
    assert!(slice.content_contains(d), "emitted {d:?} outside the content of {slice:?}");
    let bound = slice.content_upper_bound();
    assert!(divides(d.exponents(), bound.exponents()), "emitted {d:?} above {bound:?}");
}

fn check_progress(parent: &Slice, child: &Slice) {
    let (f0, g0) = parent.termination_measure();
    let (f1, g1) = child.termination_measure();
    assert!(
        f0.is_subset_of(&f1) && g0.is_subset_of(&g1) && (f0 != f1 || g0 != g1),
        "split of {parent:?} into {child:?} makes no progress"
    );
}

/// The finest partition of the variables such that every generator is
/// supported inside one block. Blocks are listed by their least variable.
pub fn independence_partition(ideal: &MonomialIdeal) -> Vec<Vec<usize>> {
    let n = ideal.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for g in ideal.generators() {
        let mut support = g.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i);
        let Some(first) = support.next() else { continue };
        for v in support {
            let (a, b) = (find(&mut parent, first), find(&mut parent, v));
            // Linking to the smaller root keeps every root the least
            // variable of its block.
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        if slot[r] == usize::MAX {
            slot[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[slot[r]].push(v);
    }
    blocks
}

/// The content of `slice` computed with default options and `strategy`.
pub fn compute_content(slice: Slice, strategy: StrategyId) -> Vec<Monomial> {
    Engine::new(EngineOptions::with_strategy(strategy)).collect(slice).0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, gens: &[&[Exponent]]) -> MonomialIdeal {
        MonomialIdeal::from_generators(n, gens.iter().copied())
    }

    fn monomials(list: &[&[Exponent]]) -> Vec<Monomial> {
        let mut v: Vec<Monomial> = list.iter().map(|m| Monomial::new(m.to_vec())).collect();
        v.sort();
        v
    }

    fn independence_example() -> MonomialIdeal {
        ideal(4, &[&[4, 0, 0, 0], &[2, 2, 0, 0], &[0, 3, 0, 0], &[0, 0, 2, 0], &[0, 0, 1, 1], &[0, 0, 0, 2]])
    }

    #[test]
    fn partition_examples() {
        assert_eq!(independence_partition(&independence_example()), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(
            independence_partition(&ideal(4, &[&[1, 1, 1, 0]])),
            vec![vec![0, 1, 2], vec![3]]
        );
        assert_eq!(independence_partition(&MonomialIdeal::maximal(2)), vec![vec![0], vec![1]]);
        assert_eq!(
            independence_partition(&ideal(4, &[&[0, 0, 1, 1], &[1, 0, 0, 1], &[0, 1, 0, 0]])),
            vec![vec![0, 2, 3], vec![1]]
        );
    }

    #[test]
    fn independence_split_example() {
        let expected = monomials(&[&[3, 1, 1, 0], &[3, 1, 0, 1], &[1, 2, 1, 0], &[1, 2, 0, 1]]);
        for strategy in StrategyId::ALL {
            assert_eq!(compute_content(Slice::root(independence_example()), strategy), expected);
        }
        let options = EngineOptions { extended_base_case: false, ..Default::default() };
        let (got, stats) = Engine::new(options).collect(Slice::root(independence_example()));
        assert_eq!(got, expected);
        assert!(stats.independence_splits >= 1);
        assert_eq!(stats.processed, 1 + stats.children);
    }

    #[test]
    fn independence_split_with_mixed_subtract() {
        let s = Slice::new(
            independence_example(),
            ideal(4, &[&[3, 1, 0, 0], &[0, 2, 1, 0]]),
            Monomial::one(4),
        );
        assert_eq!(compute_content(s, StrategyId::Median), monomials(&[&[1, 2, 0, 1]]));
    }

    #[test]
    fn worked_examples_for_every_strategy() {
        let cases: [(MonomialIdeal, Vec<Monomial>); 3] = [
            (ideal(2, &[&[6, 0], &[5, 2], &[2, 4], &[0, 6]]), monomials(&[&[5, 1], &[4, 3], &[1, 5]])),
            (
                ideal(3, &[&[2, 0, 0], &[1, 0, 1], &[0, 2, 0], &[0, 1, 1], &[0, 0, 2]]),
                monomials(&[&[1, 1, 0], &[0, 0, 1]]),
            ),
            (
                ideal(3, &[&[4, 0, 0], &[0, 4, 0], &[0, 0, 4], &[1, 1, 0], &[1, 0, 1]]),
                monomials(&[&[3, 0, 0], &[0, 3, 3]]),
            ),
        ];
        for (i, expected) in cases {
            for strategy in StrategyId::ALL {
                for extended in [false, true] {
                    let options = EngineOptions {
                        strategy,
                        extended_base_case: extended,
                        check_invariants: true,
                        ..Default::default()
                    };
                    let (got, stats) = Engine::new(options).collect(Slice::root(i.clone()));
                    assert_eq!(got, expected, "{strategy} on {i}");
                    assert_eq!(stats.processed, 1 + stats.children);
                    assert_eq!(
                        stats.processed,
                        stats.pruned + stats.base_cases + stats.splits()
                    );
                    assert_eq!(stats.emitted, expected.len() as u64);
                }
            }
        }
    }

    #[test]
    fn parallel_run_matches_sequential() {
        let i = ideal(
            4,
            &[&[5, 0, 0, 0], &[0, 5, 0, 0], &[0, 0, 5, 0], &[0, 0, 0, 5], &[2, 2, 1, 0], &[1, 0, 2, 3], &[0, 3, 1, 2], &[3, 1, 0, 1]],
        );
        let seq = compute_content(Slice::root(i.clone()), StrategyId::Median);
        let options = EngineOptions { threads: 4, ..Default::default() };
        let (par, stats) = Engine::new(options).collect(Slice::root(i));
        assert_eq!(seq, par);
        assert_eq!(stats.processed, 1 + stats.children);
    }

    #[test]
    fn single_base_case_processes_one_slice() {
        let (out, stats) = Engine::new(EngineOptions::default()).collect(Slice::root(MonomialIdeal::maximal(3)));
        assert_eq!(out, vec![Monomial::one(3)]);
        assert_eq!(stats.processed, 1);
    }

    #[test]
    fn zero_and_unit_ideals_have_no_content() {
        assert!(compute_content(Slice::root(MonomialIdeal::zero(3)), StrategyId::Median).is_empty());
        assert!(compute_content(Slice::root(MonomialIdeal::unit(3)), StrategyId::Median).is_empty());
    }
}
