//! Worked examples that cut across modules, with the polyline oracle as the
//! independent reference wherever a count is derived.

use arcsys::enumeration::find_systems;
use arcsys::reference::{frozen_reference, j0_system};
use arcsys::system::{dual_pair_census, is_saturated};
use arcsys::twist::{embed_omega, half_twist, reconcile_tau_star_formulas, tau_star, OmegaArcClass, OmegaContext, OmegaFamily};
use arcsys::{intersect, oracle_intersect, render_svg, universe, ArcClass, ArcSystem, Puncture::*, View};

fn seg(p: arcsys::Puncture, q: arcsys::Puncture, u: i64, v: i64) -> ArcClass {
    ArcClass::segment(p, q, u, v).unwrap()
}

fn fixture(label: &str) -> ArcSystem {
    frozen_reference()
        .unwrap()
        .into_iter()
        .find(|(l, _)| l == label)
        .map(|(_, s)| s)
        .unwrap()
}

#[test]
fn horizontal_ab_family_law() {
    let base = seg(A, B, 1, 0);
    for k in 1..=5i64 {
        let other = seg(A, B, 1, 2 * k);
        assert_eq!(intersect(&base, &other), k as u32 - 1);
        assert_eq!(oracle_intersect(&base, &other), k as u32 - 1);
    }
}

#[test]
fn loop_examples_against_oracle() {
    let l = ArcClass::loop_around(A, B, 1, 0).unwrap();
    for (x, want) in [(seg(A, B, 1, 0), 0), (seg(C, D, 1, 0), 0)] {
        assert_eq!(intersect(&l, &x), want);
        assert_eq!(oracle_intersect(&l, &x), want);
    }
}

#[test]
fn tau_star_values_and_half_twist() {
    let ctx = OmegaContext::standard();
    let sigma = seg(A, D, 1, -1);
    assert_eq!(tau_star(&sigma, &ctx).unwrap().to_string(), "1/4");
    let moved = half_twist().apply(&sigma);
    assert_eq!(tau_star(&moved, &ctx).unwrap().to_string(), "3/4");
}

#[test]
fn quarter_arc_against_annulus_arcs() {
    let sigma = seg(A, D, 1, -1);
    let at = |tau2| embed_omega(&OmegaArcClass::new(OmegaFamily::AB, tau2).unwrap(), None).unwrap();
    for (tau2, want) in [(0, 0), (2, 1)] {
        let g = at(tau2);
        assert_eq!(intersect(&sigma, &g), want);
        assert_eq!(oracle_intersect(&sigma, &g), want);
    }
}

#[test]
fn neighbouring_ad_arcs_meet_once() {
    let (x, y) = (seg(A, D, 1, -1), seg(A, D, 1, 3));
    assert_eq!(oracle_intersect(&x, &y), 1);
    assert_eq!(intersect(&x, &y), 1);
    let report = reconcile_tau_star_formulas(2).unwrap();
    let row = report.checks[0]
        .rows
        .iter()
        .find(|r| r.delta == "1/2" && r.left.starts_with("ad(1,-1)") || r.delta == "1/2" && r.right.starts_with("ad(1,-1)"))
        .unwrap();
    assert_eq!((row.engine, row.formula.as_str(), row.agrees), (1, "2", false));
}

#[test]
fn j0_dual_pairs_split_evenly() {
    let s = j0_system();
    assert!(s.disjoint_subset().is_empty());
    for e in dual_pair_census(s.arcs()) {
        assert_eq!((e.between_q, e.between_q_star), (2, 2));
    }
}

#[test]
fn census_counts_every_non_loop_arc_once() {
    let s = fixture("J_2a");
    let total: usize = dual_pair_census(s.arcs()).iter().map(|e| e.between_q + e.between_q_star).sum();
    assert_eq!(total, s.len() - s.loop_count());
}

#[test]
fn path_fixture_has_three_disjoint_arcs() {
    assert_eq!(fixture("J_3a").disjoint_subset().len(), 3);
}

#[test]
fn maximal_systems_stay_saturated_and_subsets_do_not() {
    let systems = find_systems(1, 6, 12).unwrap();
    let (u6, u12) = (universe(6).unwrap(), universe(12).unwrap());
    let s = &systems[0];
    assert!(is_saturated(s, &u6) && is_saturated(s, &u12));
    let smaller = ArcSystem::new(s.arcs()[1..].iter().copied(), 1).unwrap();
    assert!(!is_saturated(&smaller, &u6));
    for s in find_systems(0, 6, 12).unwrap().iter().take(50) {
        assert_eq!(s.len(), 6);
        assert!(is_saturated(s, &u12));
    }
}

#[test]
fn renders_style_disjoint_arcs_black() {
    let black = r##"stroke="#000000""##;
    let svg = render_svg(&j0_system(), View::Pillowcase);
    assert_eq!(svg.matches("class=\"arc\"").count(), 12);
    assert_eq!(svg.matches(black).count(), 0);
    let path = fixture("J_3a");
    let svg = render_svg(&path, View::Disk);
    let black_segments = svg.lines().filter(|l| l.contains(black) && l.contains("class=\"arc\"")).count();
    assert_eq!(black_segments, 3);
}

#[test]
fn generators_preserve_counts_on_small_universe() {
    let u = universe(4).unwrap();
    for g in arcsys::Generator::ALL {
        let e = g.element();
        let moved: Vec<ArcClass> = u.iter().map(|x| e.apply(x)).collect();
        for i in 0..u.len() {
            for j in i + 1..u.len() {
                assert_eq!(intersect(&moved[i], &moved[j]), intersect(&u[i], &u[j]), "{g:?} {} {}", u[i], u[j]);
            }
        }
    }
}
