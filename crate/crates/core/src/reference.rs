//! Recipes for the labelled systems drawn in the reference figures.
//!
//! Each system is built from a construction rather than typed in, except
//! `J_0`. The output is frozen to `fixtures/reference_systems.json`; a test
//! keeps the recipes and the frozen file in step.

use std::collections::BTreeMap;

use crate::classification::{canonicalize, label_for};
use crate::enumeration::{maximal_cliques_of, universe, Bits};
use crate::intersection::intersect;
use crate::pillowcase::{ArcClass, Puncture, Puncture::*};
use crate::records::{RecordError, ReferenceEntry, ReferenceFile, SystemRecord, SCHEMA_VERSION};
use crate::subsurface::omega_loopfree_max_systems;
use crate::system::ArcSystem;
use crate::twist::{embed_omega, OmegaContext};

pub const FROZEN: &str = include_str!("../fixtures/reference_systems.json");

fn seg(p: Puncture, q: Puncture, u: i64, v: i64) -> ArcClass {
    ArcClass::segment(p, q, u, v).expect("recipe arcs are valid")
}

fn arcs_of(n: u32) -> Vec<ArcClass> {
    universe(n).expect("positive bound")
}

/// Arcs of `pool` outside `base` missing every arc of `base`.
fn complement(base: &[ArcClass], pool: &[ArcClass]) -> Vec<ArcClass> {
    pool.iter()
        .filter(|x| !base.contains(x) && base.iter().all(|b| intersect(x, b) == 0))
        .copied()
        .collect()
}

/// Trees with three edges on the punctures, up to symmetry: the path and
/// the star.
pub fn tree_a() -> [ArcClass; 3] {
    [seg(A, B, 1, 0), seg(B, D, 0, 1), seg(C, D, 1, 0)]
}

pub fn tree_b() -> [ArcClass; 3] {
    [seg(A, B, 1, 0), seg(B, C, 1, 1), seg(B, D, 0, 1)]
}

/// Shape of a triangulation of the hexagon left by a tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Triangulation {
    /// Three short diagonals.
    Delta,
    /// One long diagonal, the shorts on a common crossing long diagonal.
    N,
    /// One long diagonal, otherwise.
    Epsilon,
}

impl Triangulation {
    pub fn name(self) -> &'static str {
        match self {
            Triangulation::Delta => "delta",
            Triangulation::N => "N",
            Triangulation::Epsilon => "epsilon",
        }
    }
}

/// All triangulations of the complement of a tree with their shapes.
pub fn hexagon_triangulations(tree: &[ArcClass]) -> Vec<(Triangulation, [ArcClass; 3])> {
    let comp = complement(tree, &arcs_of(6));
    let crossings = |x: &ArcClass| comp.iter().filter(|y| intersect(x, y) == 1).count();
    let mut out = Vec::new();
    for i in 0..comp.len() {
        for j in i + 1..comp.len() {
            for k in j + 1..comp.len() {
                let tri = [comp[i], comp[j], comp[k]];
                if intersect(&tri[0], &tri[1]) + intersect(&tri[0], &tri[2]) + intersect(&tri[1], &tri[2]) != 0 {
                    continue;
                }
                let shorts: Vec<ArcClass> = tri.iter().filter(|x| crossings(x) == 3).copied().collect();
                let shape = if shorts.len() == 3 {
                    Triangulation::Delta
                } else {
                    let both: Vec<&ArcClass> = comp
                        .iter()
                        .filter(|y| intersect(y, &shorts[0]) == 1 && intersect(y, &shorts[1]) == 1)
                        .collect();
                    if both.len() == 1 && crossings(both[0]) == 4 {
                        Triangulation::N
                    } else {
                        Triangulation::Epsilon
                    }
                };
                out.push((shape, tri));
            }
        }
    }
    out
}

/// Labels the figures list for each tree and triangulation shape.
pub fn caption_labels(tree: char, shape: Triangulation) -> &'static [&'static str] {
    use Triangulation::*;
    match (tree, shape) {
        ('a', Delta) => &["(vi)"],
        ('a', Epsilon) => &["(i)", "(vi)"],
        ('a', N) => &["(i)", "(ii)", "(v)"],
        ('b', Delta) => &["(ii)", "(iii)"],
        ('b', Epsilon) => &["(iv)", "(i)"],
        ('b', N) => &["(vi)"],
        _ => &[],
    }
}

fn entry(label: String, recipe: String, system: &ArcSystem) -> ReferenceEntry {
    ReferenceEntry {
        label,
        recipe,
        system: SystemRecord::from_system(system),
    }
}

fn zero_systems() -> Vec<ReferenceEntry> {
    let mut seen: BTreeMap<String, ReferenceEntry> = BTreeMap::new();
    for (name, tree) in [('a', tree_a()), ('b', tree_b())] {
        for (shape, tri) in hexagon_triangulations(&tree) {
            let s = ArcSystem::new(tree.iter().chain(tri.iter()).copied(), 0).expect("disjoint");
            let label = label_for(&s).expect("six arcs always get a label");
            seen.entry(label.clone()).or_insert_with(|| {
                entry(label, format!("tree {name} with a {} triangulation of the hexagon", shape.name()), &s)
            });
        }
    }
    seen.into_values().collect()
}

fn tree_systems() -> Vec<ReferenceEntry> {
    [('a', tree_a()), ('b', tree_b())]
        .into_iter()
        .map(|(name, tree)| {
            let comp = complement(&tree, &arcs_of(6));
            let s = ArcSystem::new(tree.iter().chain(comp.iter()).copied(), 1).expect("compatible");
            let label = label_for(&s).expect("labelled");
            entry(label, format!("tree {name} with all nine hexagon diagonals"), &s)
        })
        .collect()
}

/// `J` a path `a–b–d`; the complement is a copy of the four-gon model.
fn path_systems() -> Vec<ReferenceEntry> {
    let j = [seg(A, B, 1, 0), seg(B, D, 0, 1)];
    let comp = complement(&j, &arcs_of(8));
    let (x, y, z, w) = (seg(A, B, 1, -2), seg(A, B, 1, 2), seg(B, D, 2, -1), seg(B, D, 2, 1));
    let fixed: Vec<ArcClass> = comp
        .iter()
        .filter(|c| ![x, y, z, w].contains(c) && !matches!(c, ArcClass::Loop { enclosed: C, .. }))
        .copied()
        .collect();
    let mut out: BTreeMap<String, ReferenceEntry> = BTreeMap::new();
    for keep in [[x, y], [z, w], [x, z], [y, w]] {
        let s = ArcSystem::new(j.iter().chain(&fixed).chain(&keep).copied(), 1).expect("compatible");
        let Some(label) = label_for(&s) else { continue };
        out.entry(label.clone())
            .or_insert_with(|| entry(label, format!("path a-b-d, rays and diagonals, adjacent arcs {} {}", keep[0], keep[1]), &s));
    }
    out.into_values().collect()
}

/// Maximal extensions of `base` by arcs of `pool` compatible with it.
fn extensions(base: &[ArcClass], pool: &[ArcClass]) -> Vec<ArcSystem> {
    let cand: Vec<ArcClass> = pool
        .iter()
        .filter(|x| !base.contains(x) && base.iter().all(|b| intersect(x, b) <= 1))
        .copied()
        .collect();
    let rows: Vec<Bits> = (0..cand.len())
        .map(|i| {
            let mut b = Bits::new(cand.len());
            for j in 0..cand.len() {
                if i != j && intersect(&cand[i], &cand[j]) <= 1 {
                    b.set(j);
                }
            }
            b
        })
        .collect();
    let cliques = maximal_cliques_of(&rows, None, None).expect("no budget");
    cliques
        .into_iter()
        .map(|c| ArcSystem::new(base.iter().copied().chain(c.into_iter().map(|i| cand[i])), 1).expect("compatible"))
        .collect()
}

/// Distinct orbits among `systems` of maximum size, first member of each.
fn orbit_representatives(systems: Vec<ArcSystem>) -> Vec<ArcSystem> {
    let mut by_form: BTreeMap<ArcSystem, ArcSystem> = BTreeMap::new();
    for s in systems.into_iter().filter(|s| s.len() == 12) {
        by_form.entry(canonicalize(&s)).or_insert(s);
    }
    by_form.into_values().collect()
}

/// `J` two disjoint arcs: a loop-free annulus system plus loops.
fn annulus_systems() -> Vec<ReferenceEntry> {
    let ctx = OmegaContext::standard();
    let loops: Vec<ArcClass> = arcs_of(8).into_iter().filter(|a| a.is_loop()).collect();
    let mut out = Vec::new();
    for (i, class) in omega_loopfree_max_systems().iter().enumerate() {
        let mut base: Vec<ArcClass> = ctx.cut().to_vec();
        base.extend(class.representative.arcs.iter().map(|s| embed_omega(s, None).expect("unbounded")));
        let d = class.degrees;
        let cut = ctx.cut();
        let extended = extensions(&base, &loops)
            .into_iter()
            .filter(|s| s.disjoint_subset().iter().all(|a| cut.contains(a)) && s.disjoint_subset().len() == 2);
        for s in orbit_representatives(extended.collect()) {
            let label = label_for(&s).unwrap_or_else(|| "unlabelled".into());
            let recipe = format!(
                "annulus system {} with degrees ({},{},{},{}) plus {} loops",
                i + 1,
                d[0],
                d[1],
                d[2],
                d[3],
                s.loop_count()
            );
            out.push(entry(label, recipe, &s));
        }
    }
    out
}

/// `J` a single a–d arc with the neighbouring a–d arc and the b–c arc.
fn single_systems() -> Vec<ReferenceEntry> {
    let ctx = OmegaContext::standard();
    let base = [ctx.j0, seg(A, D, 1, -1), ctx.phi];
    let extended = extensions(&base, &arcs_of(6))
        .into_iter()
        .filter(|s| s.disjoint_subset() == vec![ctx.j0])
        .collect();
    orbit_representatives(extended)
        .into_iter()
        .map(|s| entry("J_1".into(), "single a-d arc, its neighbour in the a-d family and the b-c arc".into(), &s))
        .collect()
}

/// The system with no disjoint arc, encoded by hand.
pub fn j0_system() -> ArcSystem {
    ArcSystem::new(
        [
            seg(A, B, 1, 0),
            seg(C, D, 1, 0),
            seg(A, C, 0, 1),
            seg(B, D, 0, 1),
            seg(A, D, 1, 1),
            seg(B, C, 1, 1),
            seg(A, D, 1, -1),
            seg(B, C, 1, -1),
            seg(A, B, 1, 2),
            seg(C, D, 1, 2),
            seg(A, C, 2, 1),
            seg(B, D, 2, 1),
        ],
        1,
    )
    .expect("hand-encoded system is valid")
}

/// Every reference system, rebuilt from its recipe.
pub fn reference_systems() -> Vec<ReferenceEntry> {
    let mut out = zero_systems();
    out.extend(tree_systems());
    out.extend(path_systems());
    out.extend(annulus_systems());
    out.extend(single_systems());
    out.push(entry("J_0".into(), "encoded by hand".into(), &j0_system()));
    out
}

pub fn reference_file() -> ReferenceFile {
    ReferenceFile {
        schema_version: SCHEMA_VERSION,
        systems: reference_systems(),
    }
}

pub fn reference_json() -> String {
    let mut s = serde_json::to_string_pretty(&reference_file()).expect("serializes");
    s.push('\n');
    s
}

/// The frozen fixture, validated on load.
pub fn frozen_reference() -> Result<Vec<(String, ArcSystem)>, RecordError> {
    ReferenceFile::parse(FROZEN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::PunctureGraph;

    #[test]
    fn trees_are_trees() {
        for t in [tree_a(), tree_b()] {
            let g = PunctureGraph::from_arcs(&t);
            assert!(!g.has_cycle());
            assert_eq!(complement(&t, &arcs_of(6)).len(), 9);
        }
        assert_eq!(PunctureGraph::from_arcs(&tree_b()).degree_vector().0, [3, 1, 1, 1]);
    }

    #[test]
    fn triangulations_match_captions() {
        for (name, tree) in [('a', tree_a()), ('b', tree_b())] {
            let tris = hexagon_triangulations(&tree);
            assert_eq!(tris.len(), 14, "a hexagon has 14 triangulations");
            for (shape, tri) in tris {
                let s = ArcSystem::new(tree.iter().chain(tri.iter()).copied(), 0).unwrap();
                let label = label_for(&s).unwrap();
                assert!(caption_labels(name, shape).contains(&label.as_str()), "{name} {shape:?} {label}");
            }
        }
    }

    #[test]
    fn j0_has_no_disjoint_arc() {
        let s = j0_system();
        assert!(s.disjoint_subset().is_empty());
        assert_eq!(s.degree_vector().0, [6, 6, 6, 6]);
    }

    #[test]
    fn frozen_fixture_matches_recipes() {
        assert_eq!(serde_json::from_str::<ReferenceFile>(FROZEN).unwrap(), reference_file());
        assert!(frozen_reference().is_ok());
    }

    #[test]
    fn labels_cover_both_tables() {
        let labels: std::collections::BTreeSet<String> = reference_systems().into_iter().map(|e| e.label).collect();
        for l in ["(i)", "(ii)", "(iii)", "(iv)", "(v)", "(vi)", "J_3a", "J_3b", "J_2a", "J_2b", "J_2c|J_2d", "J_2e", "J_1", "J_0"] {
            assert!(labels.contains(l), "{l}");
        }
    }
}
