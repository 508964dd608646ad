//! Compatibility graphs over bounded universes and maximal clique search.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::intersection::intersect;
use crate::pillowcase::{arc_shell, arc_universe, ArcClass, ComplexityBound};
use crate::system::{is_saturated, ArcSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("clique search exceeded its budget of {0} nodes")]
    ResourceLimit(u64),
    #[error("invalid bounds: {0}")]
    Bounds(String),
}

/// Fixed-width bitset over graph vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bits(Vec<u64>);

impl Bits {
    pub fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    pub fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    pub fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    pub fn and_count(&self, other: &Bits) -> u32 {
        self.0.iter().zip(&other.0).map(|(a, b)| (a & b).count_ones()).sum()
    }

    pub fn and_not(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & !b).collect())
    }

    pub fn or(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a | b).collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

/// Vertices are arcs; `x ~ y` iff they are distinct and meet at most `k` times.
#[derive(Debug, Clone)]
pub struct CompatibilityGraph {
    pub vertices: Vec<ArcClass>,
    pub k: u8,
    adjacency: Vec<Bits>,
}

impl CompatibilityGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].get(j)
    }

    pub fn neighbours(&self, i: usize) -> &Bits {
        &self.adjacency[i]
    }

    /// Graph from an explicit adjacency predicate.
    pub fn from_predicate(vertices: Vec<ArcClass>, k: u8, adj: impl Fn(usize, usize) -> bool + Sync) -> Self {
        let n = vertices.len();
        let adjacency = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut row = Bits::new(n);
                for j in 0..n {
                    if i != j && adj(i, j) {
                        row.set(j);
                    }
                }
                row
            })
            .collect();
        CompatibilityGraph {
            vertices,
            k,
            adjacency,
        }
    }
}

/// Compatibility graph over `universe` (kept in the given order).
pub fn build_graph(universe: &[ArcClass], k: u8) -> CompatibilityGraph {
    let verts = universe.to_vec();
    CompatibilityGraph::from_predicate(verts.clone(), k, |i, j| intersect(&verts[i], &verts[j]) <= k as u32)
}

/// Generic maximal-clique enumeration over bitset rows.
pub fn maximal_cliques_of(
    adjacency: &[Bits],
    size_filter: Option<usize>,
    node_budget: Option<u64>,
) -> Result<Vec<Vec<usize>>, EnumerationError> {
    let n = adjacency.len();
    let nodes = AtomicU64::new(0);
    let budget = node_budget.unwrap_or(u64::MAX);
    let mut out: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|v| {
            let mut later = Bits::new(n);
            let mut earlier = Bits::new(n);
            for j in adjacency[v].iter() {
                if j > v {
                    later.set(j);
                } else {
                    earlier.set(j);
                }
            }
            let mut found = Vec::new();
            let mut r = vec![v];
            expand(adjacency, &mut r, later, earlier, &nodes, budget, size_filter, &mut found)?;
            Ok(found)
        })
        .collect::<Result<Vec<_>, EnumerationError>>()?
        .into_iter()
        .flatten()
        .collect();
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn expand(
    adj: &[Bits],
    r: &mut Vec<usize>,
    p: Bits,
    mut x: Bits,
    nodes: &AtomicU64,
    budget: u64,
    size_filter: Option<usize>,
    out: &mut Vec<Vec<usize>>,
) -> Result<(), EnumerationError> {
    if nodes.fetch_add(1, Ordering::Relaxed) >= budget {
        return Err(EnumerationError::ResourceLimit(budget));
    }
    if p.is_empty() {
        if x.is_empty() && size_filter.is_none_or(|s| s == r.len()) {
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
        }
        return Ok(());
    }
    if let Some(s) = size_filter {
        if r.len() + p.count() as usize <= s.saturating_sub(1) {
            return Ok(());
        }
    }
    let pivot = p
        .or(&x)
        .iter()
        .max_by_key(|&u| (p.and_count(&adj[u]), std::cmp::Reverse(u)))
        .expect("p is nonempty");
    let mut p = p;
    let candidates: Vec<usize> = p.and_not(&adj[pivot]).iter().collect();
    for v in candidates {
        r.push(v);
        expand(adj, r, p.and(&adj[v]), x.and(&adj[v]), nodes, budget, size_filter, out)?;
        r.pop();
        p.clear(v);
        x.set(v);
    }
    Ok(())
}

/// All inclusion-maximal cliques, each sorted, in lexicographic order.
pub fn maximal_cliques(
    graph: &CompatibilityGraph,
    size_filter: Option<usize>,
    node_budget: Option<u64>,
) -> Result<Vec<Vec<usize>>, EnumerationError> {
    maximal_cliques_of(&graph.adjacency, size_filter, node_budget)
}

/// Largest size of a `k`-system on the four-punctured sphere.
pub const fn maximum_size(k: u8) -> usize {
    match k {
        0 => 6,
        _ => 12,
    }
}

/// Default clique-search budget.
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

pub fn universe(n: u32) -> Result<Vec<ArcClass>, EnumerationError> {
    ComplexityBound::new(n)
        .map(arc_universe)
        .ok_or_else(|| EnumerationError::Bounds(format!("bound must be positive, got {n}")))
}

/// Maximal cliques at bound `n` that stay saturated at `n_check`.
/// For `k = 1` only systems of the maximum size are kept.
pub fn find_systems(k: u8, n: u32, n_check: u32) -> Result<Vec<ArcSystem>, EnumerationError> {
    find_systems_with_budget(k, n, n_check, DEFAULT_NODE_BUDGET)
}

pub fn find_systems_with_budget(k: u8, n: u32, n_check: u32, budget: u64) -> Result<Vec<ArcSystem>, EnumerationError> {
    if k > 1 {
        return Err(EnumerationError::Bounds(format!("k must be 0 or 1, got {k}")));
    }
    if n_check < n {
        return Err(EnumerationError::Bounds(format!("check bound {n_check} is below bound {n}")));
    }
    let u = universe(n)?;
    let check = universe(n_check)?;
    let graph = build_graph(&u, k);
    let filter = (k == 1).then_some(maximum_size(1));
    let cliques = maximal_cliques(&graph, filter, Some(budget))?;
    let systems: Vec<ArcSystem> = cliques
        .into_par_iter()
        .map(|c| ArcSystem::from_sorted_unchecked(c.into_iter().map(|i| u[i]).collect(), k))
        .filter(|s| is_saturated(s, &check))
        .collect();
    Ok(systems)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellMargin {
    pub shell: u32,
    /// Minimum over new shell arcs of the largest excess `i(a, s) - k`.
    pub margin: i64,
}

/// Finite evidence that a system cannot be extended by more complex arcs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationEvidence {
    pub shells: Vec<ShellMargin>,
    /// Shells containing an arc that extends the system.
    pub flagged: Vec<u32>,
    pub monotone: bool,
}

impl SaturationEvidence {
    pub fn holds(&self) -> bool {
        self.flagged.is_empty()
    }
}

/// Shell-by-shell margins for `m` in `(n, n_prime]`, plus any shell at or
/// below `n` holding an extending arc.
pub fn saturation_margin(system: &ArcSystem, n: u32, n_prime: u32) -> SaturationEvidence {
    let k = system.k() as i64;
    let excess = |a: &ArcClass| system.arcs().iter().map(|s| intersect(a, s) as i64 - k).max().unwrap_or(-k);
    let mut shells = Vec::new();
    let mut flagged = Vec::new();
    for m in 1..=n_prime {
        let margin = arc_shell(m)
            .par_iter()
            .filter(|a| !system.contains(a))
            .map(excess)
            .min()
            .unwrap_or(i64::MAX);
        if margin <= 0 {
            flagged.push(m);
        }
        if m > n {
            shells.push(ShellMargin { shell: m, margin });
        }
    }
    let monotone = shells.windows(2).all(|w| w[0].margin <= w[1].margin);
    SaturationEvidence {
        shells,
        flagged,
        monotone,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pillowcase::{Puncture::*, Slope};

    #[test]
    fn bits_roundtrip() {
        let mut b = Bits::new(130);
        for i in [0, 63, 64, 129] {
            b.set(i);
        }
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 63, 64, 129]);
        assert_eq!(b.count(), 4);
        b.clear(64);
        assert!(!b.get(64));
    }

    #[test]
    fn triangle_has_one_clique() {
        let mut rows = vec![Bits::new(3), Bits::new(3), Bits::new(3)];
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            rows[i].set(j);
            rows[j].set(i);
        }
        assert_eq!(maximal_cliques_of(&rows, None, None).unwrap(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn path_has_two_cliques() {
        let mut rows = vec![Bits::new(3), Bits::new(3), Bits::new(3)];
        for (i, j) in [(0, 1), (1, 2)] {
            rows[i].set(j);
            rows[j].set(i);
        }
        assert_eq!(maximal_cliques_of(&rows, None, None).unwrap(), vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(maximal_cliques_of(&rows, Some(3), None).unwrap(), Vec::<Vec<usize>>::new());
    }

    #[test]
    fn budget_is_enforced() {
        let u = universe(3).unwrap();
        let g = build_graph(&u, 1);
        assert_eq!(maximal_cliques(&g, None, Some(10)), Err(EnumerationError::ResourceLimit(10)));
    }

    #[test]
    fn axis_segments_form_a_clique() {
        let u = universe(1).unwrap();
        let g = build_graph(&u, 0);
        let axis: Vec<usize> = u
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_loop() && [Slope::new(1, 0), Slope::new(0, 1)].contains(&a.vector()))
            .map(|(i, _)| i)
            .collect();
        assert_eq!(axis.len(), 4);
        for &i in &axis {
            for &j in &axis {
                assert_eq!(g.adjacent(i, j), i != j);
            }
        }
    }

    #[test]
    fn adjacency_grows_with_k() {
        let u = universe(2).unwrap();
        let (g0, g1) = (build_graph(&u, 0), build_graph(&u, 1));
        for i in 0..u.len() {
            assert_eq!(g0.neighbours(i).and_not(g1.neighbours(i)).count(), 0);
            assert!(!g1.adjacent(i, i));
        }
    }

    #[test]
    fn tiny_universe_has_no_full_one_system() {
        assert!(find_systems(1, 1, 1).unwrap().is_empty());
    }

    #[test]
    fn removed_arc_is_flagged() {
        let arcs = [
            ArcClass::segment(A, B, 1, 0).unwrap(),
            ArcClass::segment(C, D, 1, 0).unwrap(),
            ArcClass::segment(A, C, 0, 1).unwrap(),
            ArcClass::segment(B, D, 0, 1).unwrap(),
            ArcClass::segment(A, D, 1, 1).unwrap(),
        ];
        let s = ArcSystem::new(arcs, 0).unwrap();
        let e = saturation_margin(&s, 1, 3);
        assert_eq!(e.flagged.first(), Some(&1));
        assert!(!e.holds());
    }
}
