//! Arc systems on a once-punctured n-gon and on the annulus, computed without
//! the pillowcase engine.
//!
//! The punctured n-gon is modelled by its infinite cyclic cover: boundary
//! vertices sit at the integers, vertex `x` covering `x mod n`, and the
//! puncture is at infinity. A chord `[x, x+s]` joins two vertices; a ray
//! joins a vertex to the puncture. Crossings are counted by interleaving of
//! translates by multiples of `n`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::enumeration::{maximal_cliques_of, Bits};
use crate::pillowcase::Puncture;
use crate::twist::{tau_intersect, OmegaArcClass, OmegaFamily};

/// Arc class in a once-punctured n-gon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PolygonArcClass {
    /// Lift `[start, start + span]`, `0 ≤ start < n`. `span = n` is a loop.
    Chord { n: u32, start: i64, span: i64 },
    /// From vertex `vertex` to the puncture.
    Ray { n: u32, vertex: i64 },
}

impl PolygonArcClass {
    pub fn n(&self) -> u32 {
        match *self {
            PolygonArcClass::Chord { n, .. } | PolygonArcClass::Ray { n, .. } => n,
        }
    }

    pub fn is_loop(&self) -> bool {
        matches!(*self, PolygonArcClass::Chord { n, span, .. } if span == n as i64)
    }

    /// Chord joining two vertices adjacent on the boundary, around the puncture.
    pub fn is_adjacent_arc(&self) -> bool {
        matches!(*self, PolygonArcClass::Chord { n, span, .. } if span == n as i64 - 1 && n >= 3)
    }

    /// Boundary vertices the arc ends at (the puncture is not listed).
    pub fn vertices(&self) -> BTreeSet<i64> {
        match *self {
            PolygonArcClass::Chord { n, start, span } => {
                [start.rem_euclid(n as i64), (start + span).rem_euclid(n as i64)].into_iter().collect()
            }
            PolygonArcClass::Ray { vertex, .. } => [vertex].into_iter().collect(),
        }
    }
}

fn interleaves(a: i64, b: i64, c: i64, d: i64) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// Minimal crossing number by interleaving of lifts.
pub fn dn_intersect(x: &PolygonArcClass, y: &PolygonArcClass) -> u32 {
    use PolygonArcClass::*;
    if x == y {
        return 0;
    }
    assert_eq!(x.n(), y.n(), "arcs on different polygons");
    let n = x.n() as i64;
    match (*x, *y) {
        (Ray { .. }, Ray { .. }) => 0,
        (Chord { start, span, .. }, Ray { vertex, .. }) | (Ray { vertex, .. }, Chord { start, span, .. }) => {
            let (a, b) = (start, start + span);
            (((a - vertex).div_euclid(n) - 1)..=((b - vertex).div_euclid(n) + 1))
                .filter(|k| a < vertex + k * n && vertex + k * n < b)
                .count() as u32
        }
        (Chord { start: a, span: s, .. }, Chord { start: c, span: t, .. }) => self_or_pair(a, a + s, c, c + t, n),
    }
}

fn self_or_pair(a: i64, b: i64, c: i64, d: i64, n: i64) -> u32 {
    let lo = (a - d).div_euclid(n) - 1;
    let hi = (b - c).div_euclid(n) + 1;
    (lo..=hi).filter(|k| interleaves(a, b, c + k * n, d + k * n)).count() as u32
}

/// Chords `[x, x+s]` with `2 ≤ s ≤ n(w_max + 1)` that are simple, plus one ray
/// per vertex. Spans above `n` wrap around the puncture and cross themselves.
pub fn dn_universe(n: u32, w_max: u32) -> Vec<PolygonArcClass> {
    let ni = n as i64;
    let mut out = Vec::new();
    for start in 0..ni {
        for span in 2..=ni * (w_max as i64 + 1) {
            if self_or_pair(start, start + span, start, start + span, ni) == 0 {
                out.push(PolygonArcClass::Chord { n, start, span });
            }
        }
        out.push(PolygonArcClass::Ray { n, vertex: start });
    }
    out.sort();
    out
}

fn compat_rows<T>(items: &[T], ok: impl Fn(&T, &T) -> bool) -> Vec<Bits> {
    items
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let mut b = Bits::new(items.len());
            for (j, y) in items.iter().enumerate() {
                if i != j && ok(x, y) {
                    b.set(j);
                }
            }
            b
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonMaximum {
    pub n: u32,
    pub maximum: usize,
    pub witnesses: Vec<Vec<PolygonArcClass>>,
    /// Largest family without loops.
    pub loop_free_maximum: usize,
    /// Window at which the maximum stopped growing.
    pub stable_window: u32,
}

fn max_families(universe: &[PolygonArcClass]) -> (usize, Vec<Vec<PolygonArcClass>>) {
    let rows = compat_rows(universe, |x, y| dn_intersect(x, y) <= 1);
    let cliques = maximal_cliques_of(&rows, None, None).expect("no budget");
    let max = cliques.iter().map(|c| c.len()).max().unwrap_or(0);
    let witnesses = cliques
        .into_iter()
        .filter(|c| c.len() == max)
        .map(|c| c.into_iter().map(|i| universe[i]).collect())
        .collect();
    (max, witnesses)
}

/// Largest pairwise-≤1 family, growing the window until one extra step
/// changes nothing.
pub fn dn_max_1_system(n: u32) -> PolygonMaximum {
    let mut w = 0;
    let (mut max, mut witnesses) = max_families(&dn_universe(n, w));
    loop {
        let (next, next_w) = max_families(&dn_universe(n, w + 1));
        if next == max {
            break;
        }
        max = next;
        witnesses = next_w;
        w += 1;
    }
    let free: Vec<PolygonArcClass> = dn_universe(n, w).into_iter().filter(|a| !a.is_loop()).collect();
    PolygonMaximum {
        n,
        maximum: max,
        witnesses,
        loop_free_maximum: max_families(&free).0,
        stable_window: w,
    }
}

/// Annulus system given as its crossing arcs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AnnulusSystem {
    pub arcs: Vec<OmegaArcClass>,
}

impl AnnulusSystem {
    /// Degrees counting the two cut arcs once at each of their ends.
    pub fn degree_vector(&self) -> [u32; 4] {
        let mut d = [1u32; 4];
        for s in &self.arcs {
            d[s.family.bottom().index()] += 1;
            d[s.family.top().index()] += 1;
        }
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Arc count including the two cut arcs.
    pub fn size_with_cut(&self) -> usize {
        self.arcs.len() + 2
    }
}

/// `(bottom, position)` in half units: a is at 0, d at 1, and the top end is
/// at `bottom + 2τ` (b at even positions, c at odd).
fn strip(s: &OmegaArcClass) -> (i64, i64) {
    let b = (s.family.bottom() == Puncture::D) as i64;
    (b, b + s.tau2)
}

fn from_strip(b: i64, t: i64) -> OmegaArcClass {
    // normalize the bottom end to 0 or 1, moving the top end with it
    let shift = b.div_euclid(2) * 2;
    let (b, t) = (b - shift, t - shift);
    let bottom = if b == 0 { Puncture::A } else { Puncture::D };
    let top = if t.rem_euclid(2) == 0 { Puncture::B } else { Puncture::C };
    let family = OmegaFamily::from_ends(bottom, top).expect("valid ends");
    OmegaArcClass::new(family, t - b).expect("parity follows from the ends")
}

/// Canonical form under half rotations of either boundary, twists and the
/// reflection.
pub fn canonical_annulus(sys: &AnnulusSystem) -> AnnulusSystem {
    let mut best: Option<Vec<OmegaArcClass>> = None;
    for reflect in [false, true] {
        for bottom_shift in [0, 1] {
            let moved: Vec<(i64, i64)> = sys
                .arcs
                .iter()
                .map(|s| {
                    let (b, t) = strip(s);
                    let (b, t) = if reflect { (-b, -t) } else { (b, t) };
                    let b2 = b + bottom_shift;
                    let shift = b2.div_euclid(2) * 2;
                    (b2 - shift, t - shift)
                })
                .collect();
            let min_top = moved.iter().map(|p| p.1).min().unwrap_or(0);
            let mut arcs: Vec<OmegaArcClass> = moved.iter().map(|&(b, t)| from_strip(b, t - min_top)).collect();
            arcs.sort();
            if best.as_ref().is_none_or(|x| arcs < *x) {
                best = Some(arcs);
            }
        }
    }
    AnnulusSystem {
        arcs: best.unwrap_or_default(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnulusClass {
    pub representative: AnnulusSystem,
    pub degrees: [u32; 4],
    pub members: usize,
}

/// Loop-free maximal 1-systems on the annulus, up to symmetry.
///
/// Families are maximal cliques in the `|τ| ≤ 4` window that no arc with
/// `|τ| ≤ 8` extends; families touching the window edge are discarded since
/// the window cut them off.
pub fn omega_loopfree_max_systems() -> Vec<AnnulusClass> {
    let window = OmegaArcClass::window(4);
    let wide = OmegaArcClass::window(8);
    let ok = |x: &OmegaArcClass, y: &OmegaArcClass| tau_intersect(x, y).is_ok_and(|n| n <= 1);
    let rows = compat_rows(&window, ok);
    let cliques = maximal_cliques_of(&rows, None, None).expect("no budget");
    let mut classes: std::collections::BTreeMap<AnnulusSystem, usize> = Default::default();
    for c in cliques {
        let arcs: Vec<OmegaArcClass> = c.into_iter().map(|i| window[i]).collect();
        let saturated = wide
            .iter()
            .all(|w| arcs.contains(w) || arcs.iter().any(|a| !ok(a, w)));
        if !saturated {
            continue;
        }
        let canon = canonical_annulus(&AnnulusSystem { arcs });
        *classes.entry(canon).or_insert(0) += 1;
    }
    let max = classes.keys().map(|s| s.arcs.len()).max().unwrap_or(0);
    classes
        .into_iter()
        .filter(|(s, _)| s.arcs.len() == max)
        .map(|(representative, members)| AnnulusClass {
            degrees: representative.degree_vector(),
            representative,
            members,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn universe_sizes() {
        assert_eq!(dn_universe(1, 0).len(), 1);
        assert_eq!(dn_universe(2, 0).len(), 4);
        let d3 = dn_universe(3, 0);
        assert_eq!(d3.iter().filter(|a| a.is_loop()).count(), 3);
        assert_eq!(d3.iter().filter(|a| !a.is_loop()).count(), 6);
        assert_eq!(dn_universe(4, 0).len(), 16);
        assert_eq!(dn_universe(4, 2), dn_universe(4, 0));
    }

    #[test]
    fn loops_meet_twice() {
        let l0 = PolygonArcClass::Chord { n: 3, start: 0, span: 3 };
        let l1 = PolygonArcClass::Chord { n: 3, start: 1, span: 3 };
        assert_eq!(dn_intersect(&l0, &l1), 2);
        assert_eq!(dn_intersect(&l0, &l0), 0);
    }

    #[test]
    fn loop_excludes_a_chord_in_the_triangle() {
        let l0 = PolygonArcClass::Chord { n: 3, start: 0, span: 3 };
        let excluded: Vec<_> = dn_universe(3, 0)
            .into_iter()
            .filter(|a| !a.is_loop() && dn_intersect(&l0, a) >= 2)
            .collect();
        assert_eq!(excluded, vec![PolygonArcClass::Chord { n: 3, start: 2, span: 2 }]);
    }

    #[test]
    fn maxima() {
        let got: Vec<usize> = (1..=4).map(|n| dn_max_1_system(n).maximum).collect();
        assert_eq!(got, vec![1, 3, 6, 10]);
    }

    #[test]
    fn loop_excludes_three_in_square() {
        let l0 = PolygonArcClass::Chord { n: 4, start: 0, span: 4 };
        let n = dn_universe(4, 0)
            .iter()
            .filter(|a| !a.is_loop() && dn_intersect(&l0, a) >= 2)
            .count();
        assert_eq!(n, 3);
    }

    #[test]
    fn adjacent_arcs_in_square() {
        let adj: Vec<_> = dn_universe(4, 0).into_iter().filter(|a| a.is_adjacent_arc()).collect();
        assert_eq!(adj.len(), 4);
        for x in &adj {
            for y in &adj {
                if x != y {
                    let share = !x.vertices().is_disjoint(&y.vertices());
                    assert_eq!(dn_intersect(x, y) <= 1, share);
                }
            }
        }
    }

    #[test]
    fn annulus_canonical_form_is_invariant() {
        let s = AnnulusSystem {
            arcs: vec![
                OmegaArcClass::new(OmegaFamily::AB, 0).unwrap(),
                OmegaArcClass::new(OmegaFamily::AC, 1).unwrap(),
                OmegaArcClass::new(OmegaFamily::DC, 2).unwrap(),
            ],
        };
        let shifted = AnnulusSystem {
            arcs: s.arcs.iter().map(|a| OmegaArcClass::new(a.family, a.tau2 + 6).unwrap()).collect(),
        };
        assert_eq!(canonical_annulus(&s), canonical_annulus(&shifted));
        assert_eq!(canonical_annulus(&canonical_annulus(&s)), canonical_annulus(&s));
    }

    #[test]
    fn two_annulus_classes() {
        let classes = omega_loopfree_max_systems();
        let mut degs: Vec<[u32; 4]> = classes.iter().map(|c| c.degrees).collect();
        degs.sort();
        assert_eq!(degs, vec![[5, 5, 5, 5], [6, 6, 4, 4]]);
        assert!(classes.iter().all(|c| c.representative.size_with_cut() == 10));
    }
}
