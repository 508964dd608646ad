//! SVG drawings of systems.
//!
//! The pillowcase view draws the fundamental rectangle `[0,2] × [0,1]`
//! (doubled coordinates) with its two faces side by side. Each straight
//! arc is cut where it crosses a fold line and every piece is folded back
//! into the rectangle with exact arithmetic. Loops are drawn as a doubled
//! outline around their core segment. The disk view bends the same pieces
//! into an annulus and is only a picture.

use std::fmt::Write as _;

use num_rational::Rational64;

use crate::pillowcase::{ArcClass, Puncture};
use crate::system::ArcSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum View {
    #[default]
    Pillowcase,
    Disk,
}

const SCALE: i64 = 200;
const MARGIN: i64 = 40;
const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];

type Point = (Rational64, Rational64);

fn r(n: i64) -> Rational64 {
    Rational64::from_integer(n)
}

/// Pieces of the arc's straight segment folded into the rectangle.
pub fn folded_pieces(arc: &ArcClass) -> Vec<[Point; 2]> {
    let core = arc.core_segment();
    let [p, _] = core.endpoints();
    let (px, py) = p.lattice_point();
    let v = core.vector();
    let mut ts: Vec<Rational64> = vec![r(0), r(1)];
    if v.u != 0 {
        let (lo, hi) = (px.min(px + v.u), px.max(px + v.u));
        for k in lo..=hi {
            if k % 2 == 0 {
                ts.push(Rational64::new(k - px, v.u));
            }
        }
    }
    if v.v != 0 {
        let (lo, hi) = (py.min(py + v.v), py.max(py + v.v));
        for k in lo..=hi {
            ts.push(Rational64::new(k - py, v.v));
        }
    }
    ts.retain(|t| *t >= r(0) && *t <= r(1));
    ts.sort();
    ts.dedup();
    let at = |t: Rational64| (r(px) + t * v.u, r(py) + t * v.v);
    ts.windows(2)
        .map(|w| {
            let mid = at((w[0] + w[1]) / 2);
            let fold = fold_for(mid);
            [fold(at(w[0])), fold(at(w[1]))]
        })
        .collect()
}

/// The group element taking a neighbourhood of `m` into the rectangle.
fn fold_for(m: Point) -> impl Fn(Point) -> Point {
    let lx = (m.0 / 2).floor();
    let ly = (m.1 / 2).floor();
    let local_y = m.1 - ly * 2;
    let flip = local_y > r(1);
    move |q: Point| {
        let (x, y) = (q.0 - lx * 2, q.1 - ly * 2);
        if flip {
            (r(2) - x, r(2) - y)
        } else {
            (x, y)
        }
    }
}

fn fmt_px(v: Rational64) -> String {
    let hundredths = (v * 100).round().to_integer();
    let sign = if hundredths < 0 { "-" } else { "" };
    let a = hundredths.abs();
    format!("{sign}{}.{:02}", a / 100, a % 100)
}

fn to_px(p: Point) -> (String, String) {
    (fmt_px(p.0 * SCALE + MARGIN), fmt_px((r(1) - p.1) * SCALE + MARGIN))
}

fn disk_px(p: Point) -> (f64, f64) {
    let (x, y) = (*p.0.numer() as f64 / *p.0.denom() as f64, *p.1.numer() as f64 / *p.1.denom() as f64);
    let centre = (SCALE + MARGIN) as f64;
    let radius = SCALE as f64 * (1.0 - 0.75 * y);
    let theta = std::f64::consts::PI * x;
    (centre + radius * theta.cos(), centre - radius * theta.sin())
}

fn puncture_sites(p: Puncture) -> Vec<Point> {
    let (x, y) = p.lattice_point();
    let mut v = vec![(r(x), r(y))];
    if x == 0 {
        v.push((r(2), r(y)));
    }
    v
}

fn path_data(pieces: &[[Point; 2]], view: View) -> String {
    let mut d = String::new();
    for [a, b] in pieces {
        match view {
            View::Pillowcase => {
                let (a, b) = (to_px(*a), to_px(*b));
                let _ = write!(d, "M{} {} L{} {} ", a.0, a.1, b.0, b.1);
            }
            View::Disk => {
                const STEPS: i64 = 24;
                for i in 0..=STEPS {
                    let t = Rational64::new(i, STEPS);
                    let q = (a.0 + (b.0 - a.0) * t, a.1 + (b.1 - a.1) * t);
                    let (x, y) = disk_px(q);
                    let _ = write!(d, "{}{x:.2} {y:.2} ", if i == 0 { "M" } else { "L" });
                }
            }
        }
    }
    d.trim_end().to_string()
}

/// SVG text for a system. Arcs disjoint from all others are drawn black.
pub fn render_svg(system: &ArcSystem, view: View) -> String {
    let j = system.disjoint_subset();
    let (w, h) = match view {
        View::Pillowcase => (2 * SCALE + 2 * MARGIN, SCALE + 2 * MARGIN),
        View::Disk => (2 * SCALE + 2 * MARGIN, 2 * SCALE + 2 * MARGIN),
    };
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    match view {
        View::Pillowcase => {
            let _ = writeln!(
                s,
                r##"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{SCALE}" fill="none" stroke="#bbb"/>"##,
                2 * SCALE
            );
            let mid = MARGIN + SCALE;
            let _ = writeln!(
                s,
                r##"<line x1="{mid}" y1="{MARGIN}" x2="{mid}" y2="{}" stroke="#ddd" stroke-dasharray="4 4"/>"##,
                MARGIN + SCALE
            );
        }
        View::Disk => {
            let c = SCALE + MARGIN;
            let _ = writeln!(s, r##"<circle cx="{c}" cy="{c}" r="{SCALE}" fill="none" stroke="#bbb"/>"##);
        }
    }
    for (i, arc) in system.arcs().iter().enumerate() {
        let colour = if j.contains(arc) { "#000000" } else { PALETTE[i % PALETTE.len()] };
        let d = path_data(&folded_pieces(arc), view);
        if arc.is_loop() {
            let _ = writeln!(
                s,
                r#"<path class="loop" d="{d}" fill="none" stroke="{colour}" stroke-width="9" stroke-linecap="round"/>"#
            );
            let _ = writeln!(s, r#"<path d="{d}" fill="none" stroke="white" stroke-width="5" stroke-linecap="round"/>"#);
        } else {
            let _ = writeln!(s, r#"<path class="arc" d="{d}" fill="none" stroke="{colour}" stroke-width="2"/>"#);
        }
    }
    for p in Puncture::ALL {
        for site in puncture_sites(p) {
            let (x, y) = match view {
                View::Pillowcase => {
                    let (x, y) = to_px(site);
                    (x, y)
                }
                View::Disk => {
                    let (x, y) = disk_px(site);
                    (format!("{x:.2}"), format!("{y:.2}"))
                }
            };
            let _ = writeln!(s, r#"<circle class="puncture" cx="{x}" cy="{y}" r="5" fill="black"/>"#);
            let _ = writeln!(s, r#"<text x="{x}" y="{y}" dx="8" dy="-8" font-size="16">{}</text>"#, p.label());
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pillowcase::Puncture::*;

    #[test]
    fn pieces_stay_in_the_rectangle_and_chain() {
        let arc = ArcClass::segment(A, D, 3, 5).unwrap();
        let pieces = folded_pieces(&arc);
        assert!(pieces.len() > 1);
        for [a, b] in &pieces {
            for q in [a, b] {
                assert!(q.0 >= r(0) && q.0 <= r(2) && q.1 >= r(0) && q.1 <= r(1), "{q:?}");
            }
        }
        assert_eq!(pieces[0][0], (r(0), r(0)));
        assert_eq!(pieces.last().unwrap()[1], (r(1), r(1)));
    }

    #[test]
    fn simple_arcs_are_one_piece() {
        assert_eq!(folded_pieces(&ArcClass::segment(A, B, 1, 0).unwrap()), vec![[(r(0), r(0)), (r(1), r(0))]]);
        assert_eq!(folded_pieces(&ArcClass::segment(A, D, 1, 1).unwrap()).len(), 1);
    }

    #[test]
    fn empty_system_shows_punctures_only() {
        let s = ArcSystem::new([], 0).unwrap();
        for view in [View::Pillowcase, View::Disk] {
            let svg = render_svg(&s, view);
            assert_eq!(svg.matches("class=\"puncture\"").count(), 6);
            assert!(!svg.contains("<path"));
        }
    }

    #[test]
    fn disjoint_arcs_are_black() {
        let s = ArcSystem::new(
            [ArcClass::segment(A, B, 1, 0).unwrap(), ArcClass::segment(C, D, 1, 0).unwrap()],
            0,
        )
        .unwrap();
        let svg = render_svg(&s, View::Pillowcase);
        assert_eq!(svg.matches(r##"stroke="#000000""##).count(), 2);
    }

    #[test]
    fn pixel_format() {
        assert_eq!(fmt_px(Rational64::new(-7, 3)), "-2.33");
        assert_eq!(fmt_px(r(240)), "240.00");
    }
}
