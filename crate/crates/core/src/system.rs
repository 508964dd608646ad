//! Arc systems and the data derived from them.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::intersection::intersect;
use crate::pillowcase::{ArcClass, Puncture};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("arcs {0} and {1} intersect {2} times, more than k = {3}")]
    Budget(ArcClass, ArcClass, u32, u8),
    #[error("arc {0} listed twice")]
    Duplicate(ArcClass),
    #[error("k must be 0 or 1, got {0}")]
    BadK(u8),
}

/// A set of pairwise distinct arc classes meeting pairwise at most `k` times.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcSystem {
    arcs: Vec<ArcClass>,
    k: u8,
}

impl ArcSystem {
    pub fn new(arcs: impl IntoIterator<Item = ArcClass>, k: u8) -> Result<Self, SystemError> {
        if k > 1 {
            return Err(SystemError::BadK(k));
        }
        let mut arcs: Vec<ArcClass> = arcs.into_iter().collect();
        arcs.sort();
        if let Some(w) = arcs.windows(2).find(|w| w[0] == w[1]) {
            return Err(SystemError::Duplicate(w[0]));
        }
        for (i, x) in arcs.iter().enumerate() {
            for y in &arcs[i + 1..] {
                let n = intersect(x, y);
                if n > k as u32 {
                    return Err(SystemError::Budget(*x, *y, n, k));
                }
            }
        }
        Ok(ArcSystem { arcs, k })
    }

    pub(crate) fn from_sorted_unchecked(arcs: Vec<ArcClass>, k: u8) -> Self {
        debug_assert!(arcs.windows(2).all(|w| w[0] < w[1]));
        ArcSystem { arcs, k }
    }

    pub fn arcs(&self) -> &[ArcClass] {
        &self.arcs
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn contains(&self, arc: &ArcClass) -> bool {
        self.arcs.binary_search(arc).is_ok()
    }

    pub fn loop_count(&self) -> usize {
        self.arcs.iter().filter(|a| a.is_loop()).count()
    }

    /// Same arcs with a budget of `k` (which must still be respected).
    pub fn with_k(&self, k: u8) -> Result<Self, SystemError> {
        ArcSystem::new(self.arcs.iter().copied(), k)
    }

    pub fn degree_vector(&self) -> DegreeVector {
        degree_vector(&self.arcs)
    }

    pub fn disjoint_subset(&self) -> Vec<ArcClass> {
        disjoint_subset(&self.arcs)
    }

    pub fn graph(&self) -> PunctureGraph {
        PunctureGraph::from_arcs(&self.arcs)
    }
}

impl fmt::Display for ArcSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.arcs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}

/// True iff every pair of distinct arcs meets at most `k` times.
pub fn is_k_system(arcs: &[ArcClass], k: u8) -> bool {
    arcs.iter()
        .enumerate()
        .all(|(i, x)| arcs[i + 1..].iter().all(|y| intersect(x, y) <= k as u32))
}

/// Arcs disjoint from every other member.
pub fn disjoint_subset(arcs: &[ArcClass]) -> Vec<ArcClass> {
    arcs.iter()
        .filter(|x| arcs.iter().all(|y| x == &y || intersect(x, y) == 0))
        .copied()
        .collect()
}

/// Per-puncture endpoint incidences, sorted descending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DegreeVector(pub [u32; 4]);

impl DegreeVector {
    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for DegreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.0;
        write!(f, "({},{},{},{})", d[0], d[1], d[2], d[3])
    }
}

/// Unsorted per-puncture degrees indexed by [`Puncture::index`].
pub fn puncture_degrees(arcs: &[ArcClass]) -> [u32; 4] {
    let mut d = [0u32; 4];
    for a in arcs {
        for p in a.endpoints() {
            d[p.index()] += 1;
        }
    }
    d
}

pub fn degree_vector(arcs: &[ArcClass]) -> DegreeVector {
    let mut d = puncture_degrees(arcs);
    d.sort_unstable_by(|a, b| b.cmp(a));
    DegreeVector(d)
}

/// Multigraph on the punctures with one edge per arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PunctureGraph {
    pub edges: Vec<(Puncture, Puncture)>,
}

impl PunctureGraph {
    pub fn from_arcs(arcs: &[ArcClass]) -> Self {
        PunctureGraph {
            edges: arcs.iter().map(|a| {
                let [p, q] = a.endpoints();
                (p, q)
            }).collect(),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// True iff some edge closes a cycle (loops and parallel edges included).
    pub fn has_cycle(&self) -> bool {
        let mut parent = [0usize, 1, 2, 3];
        fn find(parent: &mut [usize; 4], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(p, q) in &self.edges {
            let (rp, rq) = (find(&mut parent, p.index()), find(&mut parent, q.index()));
            if rp == rq {
                return true;
            }
            parent[rp] = rq;
        }
        false
    }

    /// Connected components among vertices that carry at least one edge.
    pub fn touched_components(&self) -> usize {
        let mut comps: Vec<BTreeSet<Puncture>> = Vec::new();
        for &(p, q) in &self.edges {
            let hit: Vec<usize> = (0..comps.len())
                .filter(|&i| comps[i].contains(&p) || comps[i].contains(&q))
                .collect();
            let mut merged: BTreeSet<Puncture> = [p, q].into_iter().collect();
            for &i in hit.iter().rev() {
                merged.extend(comps.remove(i));
            }
            comps.push(merged);
        }
        comps.len()
    }

    pub fn degree_vector(&self) -> DegreeVector {
        let mut d = [0u32; 4];
        for &(p, q) in &self.edges {
            d[p.index()] += 1;
            d[q.index()] += 1;
        }
        d.sort_unstable_by(|a, b| b.cmp(a));
        DegreeVector(d)
    }
}

/// Whether cutting along pairwise disjoint arcs disconnects the surface.
pub fn is_separating(j: &[ArcClass]) -> bool {
    PunctureGraph::from_arcs(j).has_cycle()
}

/// A partition of the punctures into two pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DualPair {
    pub q: [Puncture; 2],
    pub q_star: [Puncture; 2],
}

impl DualPair {
    pub fn from_pair(p: Puncture, q: Puncture) -> Self {
        assert_ne!(p, q);
        let q_pair = if p < q { [p, q] } else { [q, p] };
        let rest: Vec<Puncture> = Puncture::ALL.into_iter().filter(|x| !q_pair.contains(x)).collect();
        DualPair {
            q: q_pair,
            q_star: [rest[0], rest[1]],
        }
    }

    /// The three dual pairs, each listed with `a ∈ Q`.
    pub fn all() -> [DualPair; 3] {
        use Puncture::*;
        [DualPair::from_pair(A, B), DualPair::from_pair(A, C), DualPair::from_pair(A, D)]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub pair: DualPair,
    pub between_q: usize,
    pub between_q_star: usize,
}

/// Non-loop arcs within each side of each dual pair.
pub fn dual_pair_census(arcs: &[ArcClass]) -> [CensusEntry; 3] {
    DualPair::all().map(|pair| {
        let count = |side: [Puncture; 2]| {
            arcs.iter()
                .filter(|a| !a.is_loop() && a.endpoints() == side)
                .count()
        };
        CensusEntry {
            pair,
            between_q: count(pair.q),
            between_q_star: count(pair.q_star),
        }
    })
}

/// For a dual pair, whether the intersection matrix between the Q-arcs and
/// the Q*-arcs is a permutation matrix.
pub fn is_perfect_matching(arcs: &[ArcClass], pair: DualPair) -> bool {
    let side = |s: [Puncture; 2]| -> Vec<&ArcClass> {
        arcs.iter().filter(|a| !a.is_loop() && a.endpoints() == s).collect()
    };
    let (qs, rs) = (side(pair.q), side(pair.q_star));
    if qs.len() != rs.len() {
        return false;
    }
    let m: Vec<Vec<u32>> = qs.iter().map(|x| rs.iter().map(|y| intersect(x, y)).collect()).collect();
    let rows_ok = m.iter().all(|r| r.iter().filter(|&&v| v == 1).count() == 1 && r.iter().all(|&v| v <= 1));
    let cols_ok = (0..rs.len()).all(|j| m.iter().filter(|r| r[j] == 1).count() == 1);
    rows_ok && cols_ok
}

/// Arcs of `universe` outside `arcs` that could be added keeping the budget.
pub fn extending_arcs(arcs: &[ArcClass], k: u8, universe: &[ArcClass]) -> Vec<ArcClass> {
    universe
        .par_iter()
        .filter(|c| !arcs.contains(c) && arcs.iter().all(|a| intersect(a, c) <= k as u32))
        .copied()
        .collect()
}

/// No arc of `universe` extends the system.
pub fn is_saturated(system: &ArcSystem, universe: &[ArcClass]) -> bool {
    universe
        .par_iter()
        .all(|c| system.contains(c) || system.arcs().iter().any(|a| intersect(a, c) > system.k() as u32))
}
