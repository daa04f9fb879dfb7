//! All vertex covers of size at most `k`, via the Buss kernel.
//!
//! Buss' rules remove every vertex of degree above the budget (it must be in
//! every small cover) and every isolated vertex (it is never needed). The
//! covers of the original graph are then exactly the kernel covers `W`
//! extended by the forced vertices `V_D` and any subset of the isolated
//! vertices `V_I` that fits the remaining budget.

use std::borrow::Borrow;
use std::collections::BTreeSet;
use std::marker::PhantomData;

use itertools::{Combinations, Itertools};
use thiserror::Error;

use crate::enumcore::{kernel_enumerate, EnumKernelizer, KernelStream, ParamInstance};
use crate::{EnumError, Result};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if self.adj[u].contains(&v) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        self.edges.push((u.min(v), u.max(v)));
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(min, max)` pairs in insertion order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn is_cover(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.n];
        for &v in set {
            if v < self.n {
                member[v] = true;
            }
        }
        self.edges.iter().all(|&(u, v)| member[u] || member[v])
    }
}

/// Result of applying Buss' rules to a fixed point.
///
/// Vertices are original labels. When the instance is recognised as having no
/// cover of size `k` the reduction is `infeasible` and normalised: all
/// vertices and edges stay in the kernel, nothing is recorded as removed and
/// the residual budget is `k`. This stands in for the `K_{k+1}` no-instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BussReduction {
    kernel_vertices: Vec<usize>,
    kernel_edges: Vec<(usize, usize)>,
    high_degree_removed: Vec<usize>,
    isolated_removed: Vec<usize>,
    residual_budget: usize,
    infeasible: bool,
}

impl BussReduction {
    fn infeasible(g: &Graph, k: usize) -> Self {
        let mut kernel_edges = g.edges().to_vec();
        kernel_edges.sort_unstable();
        Self {
            kernel_vertices: (0..g.vertex_count()).collect(),
            kernel_edges,
            high_degree_removed: Vec::new(),
            isolated_removed: Vec::new(),
            residual_budget: k,
            infeasible: true,
        }
    }

    /// Kernel vertices `V_K`, ascending.
    pub fn kernel_vertices(&self) -> &[usize] {
        &self.kernel_vertices
    }

    /// Kernel edges `E_K` as sorted `(min, max)` pairs.
    pub fn kernel_edges(&self) -> &[(usize, usize)] {
        &self.kernel_edges
    }

    /// `V_D`, ascending.
    pub fn high_degree_removed(&self) -> &[usize] {
        &self.high_degree_removed
    }

    /// `V_I`, ascending.
    pub fn isolated_removed(&self) -> &[usize] {
        &self.isolated_removed
    }

    /// `k' = k - |V_D|`.
    pub fn residual_budget(&self) -> usize {
        self.residual_budget
    }

    pub fn is_infeasible(&self) -> bool {
        self.infeasible
    }

    /// `|V_K| + |E_K|`, or 0 for the infeasible token.
    pub fn kernel_size(&self) -> usize {
        if self.infeasible {
            0
        } else {
            self.kernel_vertices.len() + self.kernel_edges.len()
        }
    }
}

/// One applicable reduction step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleStep {
    /// Rule 1: degree exceeds the current budget.
    HighDegree(usize),
    /// Rule 2: isolated vertex.
    Isolated(usize),
}

struct Reducer<'g> {
    g: &'g Graph,
    alive: Vec<bool>,
    degree: Vec<usize>,
    budget: usize,
    high: Vec<usize>,
    isolated: Vec<usize>,
}

impl<'g> Reducer<'g> {
    fn new(g: &'g Graph, k: usize) -> Self {
        Self {
            g,
            alive: vec![true; g.vertex_count()],
            degree: (0..g.vertex_count()).map(|v| g.degree(v)).collect(),
            budget: k,
            high: Vec::new(),
            isolated: Vec::new(),
        }
    }

    /// Returns false when the budget would go negative.
    fn remove_high(&mut self, v: usize) -> bool {
        if self.budget == 0 {
            return false;
        }
        self.alive[v] = false;
        for &u in self.g.neighbors(v) {
            if self.alive[u] {
                self.degree[u] -= 1;
            }
        }
        self.budget -= 1;
        self.high.push(v);
        true
    }

    fn remove_isolated(&mut self, v: usize) {
        self.alive[v] = false;
        self.isolated.push(v);
    }

    fn applicable(&self) -> Vec<RuleStep> {
        (0..self.g.vertex_count())
            .filter(|&v| self.alive[v])
            .filter_map(|v| {
                if self.degree[v] > self.budget {
                    Some(RuleStep::HighDegree(v))
                } else if self.degree[v] == 0 {
                    Some(RuleStep::Isolated(v))
                } else {
                    None
                }
            })
            .collect()
    }

    fn finish(mut self, k: usize) -> BussReduction {
        let kernel_vertices: Vec<usize> = (0..self.g.vertex_count())
            .filter(|&v| self.alive[v])
            .collect();
        let mut kernel_edges: Vec<(usize, usize)> = self
            .g
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| self.alive[u] && self.alive[v])
            .collect();
        if kernel_edges.len() > self.budget * self.budget {
            return BussReduction::infeasible(self.g, k);
        }
        kernel_edges.sort_unstable();
        self.high.sort_unstable();
        self.isolated.sort_unstable();
        BussReduction {
            kernel_vertices,
            kernel_edges,
            high_degree_removed: self.high,
            isolated_removed: self.isolated,
            residual_budget: self.budget,
            infeasible: false,
        }
    }
}

/// Applies Buss' rules to a fixed point: rule 1 greedily by ascending vertex
/// index until no vertex has degree above the budget, then rule 2.
pub fn buss_kernelize(g: &Graph, k: usize) -> BussReduction {
    let mut r = Reducer::new(g, k);
    loop {
        let mut changed = false;
        for v in 0..g.vertex_count() {
            if r.alive[v] && r.degree[v] > r.budget {
                if !r.remove_high(v) {
                    return BussReduction::infeasible(g, k);
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    for v in 0..g.vertex_count() {
        if r.alive[v] && r.degree[v] == 0 {
            r.remove_isolated(v);
        }
    }
    r.finish(k)
}

/// Applies Buss' rules in an order picked by `choose`, which receives every
/// currently applicable step and returns the index of the one to apply.
pub fn buss_kernelize_with<F>(g: &Graph, k: usize, mut choose: F) -> BussReduction
where
    F: FnMut(&[RuleStep]) -> usize,
{
    let mut r = Reducer::new(g, k);
    loop {
        let steps = r.applicable();
        if steps.is_empty() {
            break;
        }
        match steps[choose(&steps)] {
            RuleStep::HighDegree(v) => {
                if !r.remove_high(v) {
                    return BussReduction::infeasible(g, k);
                }
            }
            RuleStep::Isolated(v) => r.remove_isolated(v),
        }
    }
    r.finish(k)
}

/// Every vertex cover of the kernel of size at most the residual budget,
/// each as an ascending list of original labels, in lexicographic order.
pub fn kernel_covers(red: &BussReduction) -> Vec<Vec<usize>> {
    if red.infeasible {
        return Vec::new();
    }
    let verts = &red.kernel_vertices;
    let local = |v: usize| verts.binary_search(&v).expect("kernel edge endpoint");
    let mut adj = vec![Vec::new(); verts.len()];
    for &(u, v) in &red.kernel_edges {
        let (a, b) = (local(u), local(v));
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut search = CoverSearch {
        adj,
        budget: red.residual_budget,
        state: vec![Decision::Open; verts.len()],
        forced: vec![0; verts.len()],
        pending_forced: 0,
        chosen: Vec::new(),
        out: Vec::new(),
    };
    search.run(0);
    search
        .out
        .into_iter()
        .map(|c| c.into_iter().map(|i| verts[i]).collect())
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Decision {
    Open,
    In,
    Out,
}

/// Include/exclude search over kernel vertices in ascending order. Excluding
/// a vertex forces all of its neighbours into the cover.
struct CoverSearch {
    adj: Vec<Vec<usize>>,
    budget: usize,
    state: Vec<Decision>,
    /// Number of excluded neighbours forcing each open vertex in.
    forced: Vec<usize>,
    /// Open vertices with `forced > 0`.
    pending_forced: usize,
    chosen: Vec<usize>,
    out: Vec<Vec<usize>>,
}

impl CoverSearch {
    fn run(&mut self, i: usize) {
        if self.chosen.len() + self.pending_forced > self.budget {
            return;
        }
        if i == self.adj.len() {
            self.out.push(self.chosen.clone());
            return;
        }
        // include
        if self.chosen.len() < self.budget {
            let was_forced = self.forced[i] > 0;
            if was_forced {
                self.pending_forced -= 1;
            }
            self.state[i] = Decision::In;
            self.chosen.push(i);
            self.run(i + 1);
            self.chosen.pop();
            self.state[i] = Decision::Open;
            if was_forced {
                self.pending_forced += 1;
            }
        }
        // exclude
        let earlier_ok = self.adj[i]
            .iter()
            .all(|&j| j > i || self.state[j] == Decision::In);
        if self.forced[i] == 0 && earlier_ok {
            self.state[i] = Decision::Out;
            let later: Vec<usize> = self.adj[i].iter().copied().filter(|&j| j > i).collect();
            for &j in &later {
                if self.forced[j] == 0 {
                    self.pending_forced += 1;
                }
                self.forced[j] += 1;
            }
            self.run(i + 1);
            for &j in &later {
                self.forced[j] -= 1;
                if self.forced[j] == 0 {
                    self.pending_forced -= 1;
                }
            }
            self.state[i] = Decision::Open;
        }
    }
}

/// Stream of `W ∪ V_D ∪ V'` for all `V' ⊆ V_I` with `|V'| <= slack`,
/// by increasing `|V'|` and lexicographically within one size.
pub struct CoverExpansion {
    base: Vec<usize>,
    pool: Vec<usize>,
    max_extra: usize,
    size: usize,
    combos: Combinations<std::vec::IntoIter<usize>>,
}

impl Iterator for CoverExpansion {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        loop {
            if let Some(extra) = self.combos.next() {
                return Some(merge_sorted(&self.base, &extra));
            }
            if self.size >= self.max_extra {
                return None;
            }
            self.size += 1;
            self.combos = self.pool.clone().into_iter().combinations(self.size);
        }
    }
}

fn merge_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] < b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Expands one kernel cover `w` into all covers of the original graph that
/// meet the kernel exactly in `w`.
pub fn expand_cover(red: &BussReduction, k: usize, w: &[usize]) -> Result<CoverExpansion> {
    if red.infeasible {
        return Err(EnumError::InvalidKernelSolution(
            "the reduction is infeasible".into(),
        ));
    }
    let w: BTreeSet<usize> = w.iter().copied().collect();
    if let Some(&v) = w.iter().find(|v| red.kernel_vertices.binary_search(v).is_err()) {
        return Err(EnumError::InvalidKernelSolution(format!(
            "vertex {v} is not in the kernel"
        )));
    }
    if let Some(&(u, v)) = red
        .kernel_edges
        .iter()
        .find(|(u, v)| !w.contains(u) && !w.contains(v))
    {
        return Err(EnumError::InvalidKernelSolution(format!(
            "kernel edge {u} {v} is uncovered"
        )));
    }
    let used = w.len() + red.high_degree_removed.len();
    if w.len() > red.residual_budget || used > k {
        return Err(EnumError::InvalidKernelSolution(format!(
            "cover of size {} exceeds the budget",
            w.len()
        )));
    }
    let base = merge_sorted(&w.into_iter().collect::<Vec<_>>(), &red.high_degree_removed);
    let pool = red.isolated_removed.clone();
    let max_extra = (k - used).min(pool.len());
    let combos = pool.clone().into_iter().combinations(0);
    Ok(CoverExpansion {
        base,
        pool,
        max_extra,
        size: 0,
        combos,
    })
}

/// The Buss enum-kernelization, for any payload that borrows a [`Graph`].
pub struct BussKernelizer<G>(PhantomData<G>);

impl<G> BussKernelizer<G> {
    pub fn new() -> Self {
        Self(PhantomData)
    }
}

impl<G> Default for BussKernelizer<G> {
    fn default() -> Self {
        Self::new()
    }
}

impl<G: Borrow<Graph>> EnumKernelizer for BussKernelizer<G> {
    type Payload = G;
    type Kernel = BussReduction;
    type KernelSolution = Vec<usize>;
    type Solution = Vec<usize>;
    type Expansion = CoverExpansion;

    fn kernelize(&self, instance: &ParamInstance<G>) -> BussReduction {
        buss_kernelize(instance.payload().borrow(), instance.parameter())
    }

    fn kernel_size(&self, kernel: &BussReduction) -> usize {
        kernel.kernel_size()
    }

    /// At most `k^2` edges and, with no isolated vertices, `2k^2` vertices.
    fn size_bound(&self, parameter: usize) -> usize {
        3 * parameter * parameter
    }

    fn solve_kernel(&self, kernel: &BussReduction) -> Vec<Vec<usize>> {
        kernel_covers(kernel)
    }

    fn expand(
        &self,
        instance: &ParamInstance<G>,
        kernel: &BussReduction,
        w: &Vec<usize>,
    ) -> Result<CoverExpansion> {
        expand_cover(kernel, instance.parameter(), w)
    }
}

pub type VertexCoverStream<'g> = KernelStream<BussKernelizer<&'g Graph>>;

/// Every vertex cover of `g` with at most `k` vertices, each exactly once,
/// as ascending vertex lists.
pub fn enumerate_all_vcs(g: &Graph, k: usize) -> VertexCoverStream<'_> {
    let size = g.vertex_count() + g.edge_count();
    kernel_enumerate(BussKernelizer::new(), ParamInstance::new(g, k, size))
        .expect("the Buss kernel respects its size bound")
}
