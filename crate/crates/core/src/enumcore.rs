//! Enumeration contract, delay measurement and the kernel-expansion combinator.
//!
//! An enumerator is any iterator over `Result<S>`. It is pulled one solution at
//! a time, so the work done inside a single `next()` call is exactly the delay
//! before that solution.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::{EnumError, Result};

/// A problem instance together with its parameter and size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamInstance<P> {
    payload: P,
    parameter: usize,
    size: usize,
}

impl<P> ParamInstance<P> {
    pub fn new(payload: P, parameter: usize, size: usize) -> Self {
        Self {
            payload,
            parameter,
            size,
        }
    }

    pub fn payload(&self) -> &P {
        &self.payload
    }

    pub fn parameter(&self) -> usize {
        self.parameter
    }

    pub fn size(&self) -> usize {
        self.size
    }
}

/// Measured delays of one enumeration run, in nanoseconds.
///
/// For `count = n > 0` solutions there are `n + 1` delays: the precalculation
/// (start to first solution), `n - 1` gaps between consecutive solutions and
/// the postcalculation (last solution to termination). With no solutions the
/// first and last delay are the same interval, so only one duration exists and
/// `precalc_ns == postcalc_ns`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DelayProfile {
    pub precalc_ns: u64,
    pub gaps_ns: Vec<u64>,
    pub postcalc_ns: u64,
    pub count: usize,
}

impl DelayProfile {
    /// Builds a profile from the raw `0..=n` delays of a run.
    pub fn from_delays(delays: &[u64]) -> Result<Self> {
        match delays {
            [] => Err(EnumError::Precondition(
                "a delay profile needs at least one duration".into(),
            )),
            [only] => Ok(Self {
                precalc_ns: *only,
                gaps_ns: Vec::new(),
                postcalc_ns: *only,
                count: 0,
            }),
            [first, middle @ .., last] => Ok(Self {
                precalc_ns: *first,
                gaps_ns: middle.to_vec(),
                postcalc_ns: *last,
                count: delays.len() - 1,
            }),
        }
    }

    /// All recorded delays, index 0 being the precalculation and index
    /// `count` the postcalculation. Always `count + 1` entries.
    pub fn durations(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.count + 1);
        out.push(self.precalc_ns);
        if self.count > 0 {
            out.extend_from_slice(&self.gaps_ns);
            out.push(self.postcalc_ns);
        }
        out
    }

    /// Largest delay between two consecutive solutions, ignoring pre- and
    /// postcalculation.
    pub fn max_gap_ns(&self) -> Option<u64> {
        self.gaps_ns.iter().copied().max()
    }

    /// Largest delay including pre- and postcalculation.
    pub fn max_delay_ns(&self) -> u64 {
        self.durations().into_iter().max().unwrap_or(0)
    }

    pub fn total_ns(&self) -> u64 {
        let d = self.durations();
        d.iter().sum()
    }

    /// Index-wise minimum over repeated runs of the same deterministic
    /// enumeration. Transient scheduler noise rarely hits the same index in
    /// every repetition, so this recovers the per-solution cost of the
    /// algorithm itself.
    pub fn elementwise_min(runs: &[DelayProfile]) -> Result<Self> {
        let Some(first) = runs.first() else {
            return Err(EnumError::Precondition("no runs to combine".into()));
        };
        if runs.iter().any(|r| r.count != first.count) {
            return Err(EnumError::Precondition(
                "repeated runs emitted different solution counts".into(),
            ));
        }
        let mut acc = first.durations();
        for run in &runs[1..] {
            for (a, b) in acc.iter_mut().zip(run.durations()) {
                *a = (*a).min(b);
            }
        }
        Self::from_delays(&acc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("profile serializes")
    }

    /// CSV with header `index,delay_ns`; index 0 is the precalculation and
    /// index `count` the postcalculation.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,delay_ns\n");
        for (i, d) in self.durations().into_iter().enumerate() {
            writeln!(out, "{i},{d}").unwrap();
        }
        out
    }
}

fn nanos(d: Duration) -> u64 {
    u64::try_from(d.as_nanos()).unwrap_or(u64::MAX)
}

/// Runs an enumerator to completion, timing every delay, and hands each
/// solution to `sink`. Time spent inside `sink` is not charged to any delay.
pub fn run_with_profile_each<P, S, I, F, C>(
    enumerator: F,
    instance: &ParamInstance<P>,
    mut sink: C,
) -> Result<DelayProfile>
where
    F: FnOnce(&ParamInstance<P>) -> Result<I>,
    I: Iterator<Item = Result<S>>,
    C: FnMut(S),
{
    let start = Instant::now();
    let mut stream = enumerator(instance)?;
    let mut mark = start;
    let mut delays = Vec::new();
    loop {
        let item = stream.next();
        let now = Instant::now();
        delays.push(nanos(now - mark));
        match item {
            Some(Ok(solution)) => {
                sink(solution);
                mark = Instant::now();
            }
            Some(Err(e)) => return Err(e),
            None => break,
        }
    }
    DelayProfile::from_delays(&delays)
}

/// Runs an enumerator to completion and returns its solutions in emission
/// order together with the delay profile.
pub fn run_with_profile<P, S, I, F>(
    enumerator: F,
    instance: &ParamInstance<P>,
) -> Result<(Vec<S>, DelayProfile)>
where
    F: FnOnce(&ParamInstance<P>) -> Result<I>,
    I: Iterator<Item = Result<S>>,
{
    let mut solutions = Vec::new();
    let profile = run_with_profile_each(enumerator, instance, |s| solutions.push(s))?;
    Ok((solutions, profile))
}

/// Search-tree counters of the self-reducing enumerators.
///
/// A branch is entered when the enumerator descends into it after a
/// positive guard; it is dead if its subtree emits nothing.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub branches_entered: usize,
    pub dead_branches: usize,
    pub oracle_calls: usize,
    pub emitted: usize,
}

/// An enum-kernelization: a size-bounded kernel, an exhaustive kernel solver
/// and an expander mapping each kernel solution to a block of original
/// solutions.
///
/// Implementors promise that expansions of distinct kernel solutions are
/// disjoint and that together they cover every solution of the instance.
pub trait EnumKernelizer {
    type Payload;
    type Kernel;
    /// Ordered by its canonical encoding; kernel solutions are expanded in
    /// ascending order.
    type KernelSolution: Ord;
    type Solution;
    type Expansion: Iterator<Item = Self::Solution>;

    fn kernelize(&self, instance: &ParamInstance<Self::Payload>) -> Self::Kernel;

    fn kernel_size(&self, kernel: &Self::Kernel) -> usize;

    /// Upper bound on the kernel size as a function of the parameter alone.
    fn size_bound(&self, parameter: usize) -> usize;

    fn solve_kernel(&self, kernel: &Self::Kernel) -> Vec<Self::KernelSolution>;

    fn expand(
        &self,
        instance: &ParamInstance<Self::Payload>,
        kernel: &Self::Kernel,
        solution: &Self::KernelSolution,
    ) -> Result<Self::Expansion>;
}

/// Stream produced by [`kernel_enumerate`].
pub struct KernelStream<K: EnumKernelizer> {
    kernelizer: K,
    instance: ParamInstance<K::Payload>,
    kernel: K::Kernel,
    kernel_solutions: Vec<K::KernelSolution>,
    next_kernel: usize,
    current: Option<(usize, K::Expansion)>,
}

impl<K: EnumKernelizer> KernelStream<K> {
    pub fn kernel(&self) -> &K::Kernel {
        &self.kernel
    }

    pub fn kernel_solutions(&self) -> &[K::KernelSolution] {
        &self.kernel_solutions
    }

    /// Index of the kernel solution whose expansion produced the most recent
    /// output.
    pub fn current_kernel_index(&self) -> Option<usize> {
        self.current.as_ref().map(|(i, _)| *i)
    }

    /// Pairs every solution with the index of the kernel solution it was
    /// expanded from.
    pub fn tagged(self) -> Tagged<K> {
        Tagged(self)
    }

    fn advance(&mut self) -> Option<Result<(usize, K::Solution)>> {
        loop {
            if let Some((idx, expansion)) = self.current.as_mut() {
                if let Some(s) = expansion.next() {
                    return Some(Ok((*idx, s)));
                }
                self.current = None;
            }
            let idx = self.next_kernel;
            let w = self.kernel_solutions.get(idx)?;
            self.next_kernel += 1;
            match self.kernelizer.expand(&self.instance, &self.kernel, w) {
                Ok(expansion) => self.current = Some((idx, expansion)),
                Err(e) => {
                    self.next_kernel = self.kernel_solutions.len();
                    return Some(Err(e));
                }
            }
        }
    }
}

impl<K: EnumKernelizer> Iterator for KernelStream<K> {
    type Item = Result<K::Solution>;

    fn next(&mut self) -> Option<Self::Item> {
        self.advance().map(|r| r.map(|(_, s)| s))
    }
}

pub struct Tagged<K: EnumKernelizer>(KernelStream<K>);

impl<K: EnumKernelizer> Iterator for Tagged<K> {
    type Item = Result<(usize, K::Solution)>;

    fn next(&mut self) -> Option<Self::Item> {
        self.0.advance()
    }
}

/// Enumerates all solutions of `instance` from an enum-kernelization:
/// kernelize, solve the kernel exhaustively, then run the expander for each
/// kernel solution in ascending order.
pub fn kernel_enumerate<K: EnumKernelizer>(
    kernelizer: K,
    instance: ParamInstance<K::Payload>,
) -> Result<KernelStream<K>> {
    let kernel = kernelizer.kernelize(&instance);
    let size = kernelizer.kernel_size(&kernel);
    let bound = kernelizer.size_bound(instance.parameter());
    if size > bound {
        return Err(EnumError::KernelBoundExceeded { size, bound });
    }
    let mut kernel_solutions = kernelizer.solve_kernel(&kernel);
    kernel_solutions.sort();
    kernel_solutions.dedup();
    Ok(KernelStream {
        kernelizer,
        instance,
        kernel,
        kernel_solutions,
        next_kernel: 0,
        current: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counting(n: usize) -> impl Iterator<Item = Result<usize>> {
        (0..n).map(Ok)
    }

    #[test]
    fn empty_stream_has_one_duration() {
        let inst = ParamInstance::new((), 0, 0);
        let (sols, profile) = run_with_profile(|_| Ok(counting(0)), &inst).unwrap();
        assert!(sols.is_empty());
        assert_eq!(profile.count, 0);
        assert_eq!(profile.durations().len(), 1);
        assert_eq!(profile.precalc_ns, profile.postcalc_ns);
        assert!(profile.gaps_ns.is_empty());
    }

    #[test]
    fn three_solutions_four_durations() {
        let inst = ParamInstance::new((), 0, 0);
        let (sols, profile) = run_with_profile(|_| Ok(counting(3)), &inst).unwrap();
        assert_eq!(sols, vec![0, 1, 2]);
        assert_eq!(profile.count, 3);
        assert_eq!(profile.gaps_ns.len(), 2);
        assert_eq!(profile.durations().len(), 4);
    }

    #[test]
    fn failure_discards_profile() {
        let inst = ParamInstance::new((), 0, 0);
        let stream = |_: &ParamInstance<()>| {
            Ok(vec![Ok(1), Err(EnumError::Precondition("boom".into()))].into_iter())
        };
        assert!(run_with_profile(stream, &inst).is_err());
        let failing = |_: &ParamInstance<()>| -> Result<std::vec::IntoIter<Result<u8>>> {
            Err(EnumError::Precondition("setup".into()))
        };
        assert!(run_with_profile(failing, &inst).is_err());
    }

    #[test]
    fn sink_time_is_not_charged() {
        let inst = ParamInstance::new((), 0, 0);
        let profile = run_with_profile_each(
            |_| Ok(counting(3)),
            &inst,
            |_| std::thread::sleep(Duration::from_millis(20)),
        )
        .unwrap();
        assert!(profile.max_delay_ns() < 10_000_000, "{profile:?}");
    }

    #[test]
    fn json_and_csv_layout() {
        let p = DelayProfile::from_delays(&[5, 1, 2, 7]).unwrap();
        assert_eq!(
            p.to_json(),
            r#"{"precalc_ns":5,"gaps_ns":[1,2],"postcalc_ns":7,"count":3}"#
        );
        assert_eq!(p.to_csv(), "index,delay_ns\n0,5\n1,1\n2,2\n3,7\n");
        let back: DelayProfile = serde_json::from_str(&p.to_json()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn elementwise_min_takes_per_index_minimum() {
        let a = DelayProfile::from_delays(&[5, 9, 2]).unwrap();
        let b = DelayProfile::from_delays(&[7, 1, 3]).unwrap();
        let m = DelayProfile::elementwise_min(&[a.clone(), b]).unwrap();
        assert_eq!(m.durations(), vec![5, 1, 2]);
        let c = DelayProfile::from_delays(&[1]).unwrap();
        assert!(DelayProfile::elementwise_min(&[a, c]).is_err());
    }

    /// Kernel = the residue of the payload mod 3, solutions are the numbers
    /// below the payload grouped by residue.
    struct ModKernel {
        bound: usize,
    }

    impl EnumKernelizer for ModKernel {
        type Payload = usize;
        type Kernel = Vec<usize>;
        type KernelSolution = usize;
        type Solution = usize;
        type Expansion = std::vec::IntoIter<usize>;

        fn kernelize(&self, _: &ParamInstance<usize>) -> Vec<usize> {
            vec![2, 0, 1]
        }
        fn kernel_size(&self, kernel: &Vec<usize>) -> usize {
            kernel.len()
        }
        fn size_bound(&self, _: usize) -> usize {
            self.bound
        }
        fn solve_kernel(&self, kernel: &Vec<usize>) -> Vec<usize> {
            kernel.clone()
        }
        fn expand(&self, x: &ParamInstance<usize>, _: &Vec<usize>, w: &usize) -> Result<Self::Expansion> {
            Ok((0..*x.payload())
                .filter(|v| v % 3 == *w)
                .collect::<Vec<_>>()
                .into_iter())
        }
    }

    #[test]
    fn kernel_enumerate_expands_in_kernel_order() {
        let stream = kernel_enumerate(ModKernel { bound: 3 }, ParamInstance::new(7, 0, 7)).unwrap();
        let tagged: Vec<_> = stream.tagged().map(|r| r.unwrap()).collect();
        assert_eq!(
            tagged,
            vec![(0, 0), (0, 3), (0, 6), (1, 1), (1, 4), (2, 2), (2, 5)]
        );
    }

    #[test]
    fn kernel_bound_violation_is_reported() {
        let err = kernel_enumerate(ModKernel { bound: 2 }, ParamInstance::new(7, 0, 7))
            .err()
            .unwrap();
        assert_eq!(err, EnumError::KernelBoundExceeded { size: 3, bound: 2 });
    }

    struct EmptyKernel;

    impl EnumKernelizer for EmptyKernel {
        type Payload = ();
        type Kernel = ();
        type KernelSolution = u8;
        type Solution = u8;
        type Expansion = std::iter::Empty<u8>;

        fn kernelize(&self, _: &ParamInstance<()>) {}
        fn kernel_size(&self, _: &()) -> usize {
            0
        }
        fn size_bound(&self, _: usize) -> usize {
            0
        }
        fn solve_kernel(&self, _: &()) -> Vec<u8> {
            Vec::new()
        }
        fn expand(&self, _: &ParamInstance<()>, _: &(), _: &u8) -> Result<Self::Expansion> {
            unreachable!("no kernel solutions")
        }
    }

    #[test]
    fn empty_kernel_solution_set_gives_empty_stream() {
        let mut s = kernel_enumerate(EmptyKernel, ParamInstance::new((), 0, 0)).unwrap();
        assert!(s.next().is_none());
    }

    struct Singleton;

    impl EnumKernelizer for Singleton {
        type Payload = Vec<u32>;
        type Kernel = ();
        type KernelSolution = ();
        type Solution = u32;
        type Expansion = std::vec::IntoIter<u32>;

        fn kernelize(&self, _: &ParamInstance<Vec<u32>>) {}
        fn kernel_size(&self, _: &()) -> usize {
            1
        }
        fn size_bound(&self, _: usize) -> usize {
            1
        }
        fn solve_kernel(&self, _: &()) -> Vec<()> {
            vec![()]
        }
        fn expand(&self, x: &ParamInstance<Vec<u32>>, _: &(), _: &()) -> Result<Self::Expansion> {
            Ok(x.payload().clone().into_iter())
        }
    }

    #[test]
    fn singleton_kernel_passes_expander_through() {
        let s = kernel_enumerate(Singleton, ParamInstance::new(vec![4, 1, 9], 0, 3)).unwrap();
        let out: Vec<u32> = s.map(|r| r.unwrap()).collect();
        assert_eq!(out, vec![4, 1, 9]);
    }
}
