//! Canonical forms of systems under the symmetry action, orbit classes and
//! label matching.
//!
//! The canonical form is the minimum of `(total complexity, sorted arcs)`
//! over a finite candidate set of group elements that depends only on the
//! orbit. Let `m` be the smallest nonzero `|det|` between two vectors of the
//! system. The candidates are the elements sending some ordered vector pair
//! `(v₁, v₂)` with `|det| = m` to `(e₁, ±(r, m))` with `0 ≤ r < m`, times
//! the four translations. For `hS` the candidate set is the candidate set of
//! `S` composed with `h⁻¹`, so the images coincide and equal forms mean
//! equal orbits.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::pillowcase::{ArcClass, Slope};
use crate::symmetry::{decompose, mat_mul, Letter, Mat, SymmetryElement};
use crate::system::{puncture_degrees, ArcSystem, DegreeVector, PunctureGraph};

/// `Σ max(|u|,|v|)` over the arcs.
pub fn total_complexity(arcs: &[ArcClass]) -> i64 {
    arcs.iter().map(|a| a.complexity()).sum()
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a.signum() * a, a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

fn distinct_slopes(arcs: &[ArcClass]) -> Vec<Slope> {
    let mut v: Vec<Slope> = arcs.iter().map(|a| a.vector()).collect();
    v.sort();
    v.dedup();
    v
}

/// Linear parts of the candidate elements.
fn candidate_frames(arcs: &[ArcClass]) -> Vec<Mat> {
    let slopes = distinct_slopes(arcs);
    let m = slopes
        .iter()
        .flat_map(|a| slopes.iter().map(move |b| a.det(*b).abs()))
        .filter(|&d| d != 0)
        .min();
    let Some(m) = m else {
        let Some(v) = slopes.first() else {
            return vec![[[1, 0], [0, 1]]];
        };
        let (_, a, b) = ext_gcd(v.u, v.v);
        let g0: Mat = [[a, b], [-v.v, v.u]];
        let mut out = Vec::new();
        for k in [0, 1] {
            for e2 in [1, -1] {
                out.push(mat_mul(&[[1, k], [0, e2]], &g0));
            }
        }
        return out;
    };
    let mut out = Vec::new();
    for v1 in &slopes {
        for v2 in &slopes {
            if v1.det(*v2).abs() != m {
                continue;
            }
            for s in [1, -1] {
                let w = (s * v2.u, s * v2.v);
                let det = v1.u * w.1 - w.0 * v1.v;
                // adjugate of M = [v1 w] (columns)
                let adj: Mat = [[w.1, -w.0], [-v1.v, v1.u]];
                for r in 0..m {
                    let top = [adj[0][0] + r * adj[1][0], adj[0][1] + r * adj[1][1]];
                    if top[0] % det != 0 || top[1] % det != 0 {
                        continue;
                    }
                    let g: Mat = [[top[0] / det, top[1] / det], [m * adj[1][0] / det, m * adj[1][1] / det]];
                    out.push(g);
                }
            }
        }
    }
    out
}

/// Canonical representative of an orbit with the element producing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub system: ArcSystem,
    /// `witness.apply(original) = system`.
    pub witness: SymmetryElement,
}

fn image(g: &SymmetryElement, arcs: &[ArcClass]) -> Vec<ArcClass> {
    let mut v: Vec<ArcClass> = arcs.iter().map(|a| g.apply(a)).collect();
    v.sort();
    v
}

pub fn canonical_form(system: &ArcSystem) -> CanonicalForm {
    let arcs = system.arcs();
    let mut best: Option<((i64, Vec<ArcClass>), SymmetryElement)> = None;
    for a in candidate_frames(arcs) {
        for t in [[0, 0], [1, 0], [0, 1], [1, 1]] {
            let g = SymmetryElement::new(a, t);
            let img = image(&g, arcs);
            let key = (total_complexity(&img), img);
            if best.as_ref().is_none_or(|(b, _)| key < *b) {
                best = Some((key, g));
            }
        }
    }
    let ((_, arcs), witness) = best.expect("candidate set is nonempty");
    CanonicalForm {
        system: ArcSystem::from_sorted_unchecked(arcs, system.k()),
        witness,
    }
}

pub fn canonicalize(system: &ArcSystem) -> ArcSystem {
    canonical_form(system).system
}

/// Image of a whole system.
pub fn apply_to_system(g: &SymmetryElement, system: &ArcSystem) -> ArcSystem {
    ArcSystem::from_sorted_unchecked(image(g, system.arcs()), system.k())
}

/// A generator word carrying `from` onto `to`, if they share an orbit.
pub fn connecting_word(from: &ArcSystem, to: &ArcSystem) -> Option<Vec<Letter>> {
    let (a, b) = (canonical_form(from), canonical_form(to));
    if a.system != b.system {
        return None;
    }
    let g = b.witness.inverse().compose(&a.witness);
    Some(decompose(&g))
}

/// Symmetry-invariant summary of a system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fingerprint {
    pub j_size: usize,
    pub system_degrees: DegreeVector,
    pub j_degrees: DegreeVector,
    pub loop_count: usize,
}

pub fn fingerprint(system: &ArcSystem) -> Fingerprint {
    let j = system.disjoint_subset();
    Fingerprint {
        j_size: j.len(),
        system_degrees: system.degree_vector(),
        j_degrees: PunctureGraph::from_arcs(&j).degree_vector(),
        loop_count: system.loop_count(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitClass {
    pub representative: ArcSystem,
    pub fingerprint: Fingerprint,
    pub members: usize,
    pub label: Option<String>,
}

/// Partitions systems by canonical form. Classes come out sorted by
/// descending fingerprint, then representative.
pub fn classify(systems: &[ArcSystem]) -> Vec<OrbitClass> {
    let forms: Vec<ArcSystem> = systems.par_iter().map(canonicalize).collect();
    let mut groups: BTreeMap<ArcSystem, usize> = BTreeMap::new();
    for f in forms {
        *groups.entry(f).or_insert(0) += 1;
    }
    let mut classes: Vec<OrbitClass> = groups
        .into_iter()
        .map(|(representative, members)| OrbitClass {
            fingerprint: fingerprint(&representative),
            representative,
            members,
            label: None,
        })
        .collect();
    classes.sort_by(|a, b| {
        b.fingerprint
            .cmp(&a.fingerprint)
            .then_with(|| a.representative.cmp(&b.representative))
    });
    classes
}

/// Labels of the six disjoint systems by degree multiset.
pub const ZERO_SYSTEM_LABELS: [(&str, [u32; 4]); 6] = [
    ("(i)", [4, 4, 2, 2]),
    ("(ii)", [3, 3, 3, 3]),
    ("(iii)", [9, 1, 1, 1]),
    ("(iv)", [8, 2, 1, 1]),
    ("(v)", [5, 5, 1, 1]),
    ("(vi)", [6, 3, 2, 1]),
];

/// Degrees of the non-loop arcs. When J is two disjoint arcs these are the
/// cut arcs plus the arcs crossing the annulus they leave.
pub fn loop_free_degrees(system: &ArcSystem) -> DegreeVector {
    let rest: Vec<ArcClass> = system.arcs().iter().filter(|a| !a.is_loop()).copied().collect();
    let mut d = puncture_degrees(&rest);
    d.sort_unstable_by(|a, b| b.cmp(a));
    DegreeVector(d)
}

/// Label for a single class, if its fingerprint determines one.
pub fn label_for(system: &ArcSystem) -> Option<String> {
    let fp = fingerprint(system);
    if system.k() == 0 {
        return ZERO_SYSTEM_LABELS
            .iter()
            .find(|(_, d)| DegreeVector(*d) == fp.system_degrees)
            .map(|(l, _)| l.to_string());
    }
    let label = match fp.j_size {
        3 if fp.j_degrees == DegreeVector([2, 2, 1, 1]) => "J_3a",
        3 if fp.j_degrees == DegreeVector([3, 1, 1, 1]) => "J_3b",
        2 => {
            let j = system.disjoint_subset();
            if PunctureGraph::from_arcs(&j).touched_components() == 1 {
                match fp.system_degrees.0 {
                    [10, 6, 4, 4] => "J_2a",
                    [10, 5, 5, 4] => "J_2b",
                    _ => return None,
                }
            } else {
                match loop_free_degrees(system).0 {
                    [6, 6, 4, 4] => "J_2c|J_2d",
                    [5, 5, 5, 5] => "J_2e",
                    _ => return None,
                }
            }
        }
        1 => "J_1",
        0 => "J_0",
        _ => return None,
    };
    Some(label.to_string())
}

/// Attaches labels in place; classes sharing a label are a reported tie.
pub fn match_paper_labels(classes: &mut [OrbitClass]) {
    for c in classes.iter_mut() {
        c.label = label_for(&c.representative);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pillowcase::Puncture::*;
    use crate::symmetry::Generator;

    fn seg(p: crate::pillowcase::Puncture, q: crate::pillowcase::Puncture, u: i64, v: i64) -> ArcClass {
        ArcClass::segment(p, q, u, v).unwrap()
    }

    fn sample() -> ArcSystem {
        ArcSystem::new([seg(A, B, 1, 0), seg(A, C, 0, 1), seg(A, D, 1, 1), seg(B, C, 1, -1)], 1).unwrap()
    }

    #[test]
    fn canonical_form_is_idempotent_and_invariant() {
        let s = sample();
        let c = canonicalize(&s);
        assert_eq!(canonicalize(&c), c);
        for gen in Generator::ALL {
            let t = apply_to_system(&gen.element(), &s);
            assert_eq!(canonicalize(&t), c, "{gen:?}");
        }
    }

    #[test]
    fn witness_maps_onto_form() {
        let s = apply_to_system(&SymmetryElement::new([[3, 2], [1, 1]], [1, 0]), &sample());
        let f = canonical_form(&s);
        assert_eq!(apply_to_system(&f.witness, &s), f.system);
    }

    #[test]
    fn connecting_word_links_orbit_members() {
        let s = sample();
        let t = apply_to_system(&SymmetryElement::new([[2, 1], [1, 1]], [0, 1]), &s);
        let w = connecting_word(&s, &t).unwrap();
        assert_eq!(apply_to_system(&crate::symmetry::evaluate_word(&w), &s), t);
    }

    #[test]
    fn parallel_systems_canonicalize() {
        let s = ArcSystem::new([seg(A, D, 3, 5), seg(B, C, 3, 5)], 0).unwrap();
        let c = canonicalize(&s);
        assert_eq!(total_complexity(c.arcs()), 2);
        let single = ArcSystem::new([ArcClass::loop_around(C, A, 2, 5).unwrap()], 0).unwrap();
        assert_eq!(canonicalize(&single).arcs()[0].complexity(), 1);
        let empty = ArcSystem::new([], 0).unwrap();
        assert!(canonicalize(&empty).is_empty());
    }

    #[test]
    fn different_orbits_differ() {
        let s = ArcSystem::new([seg(A, B, 1, 0), seg(C, D, 1, 0)], 0).unwrap();
        let t = ArcSystem::new([seg(A, B, 1, 0), seg(A, C, 0, 1)], 0).unwrap();
        assert_ne!(canonicalize(&s), canonicalize(&t));
        assert!(connecting_word(&s, &t).is_none());
    }
}
