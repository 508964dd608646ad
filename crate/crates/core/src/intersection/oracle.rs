//! Crossing count of explicit piecewise-linear representatives.
//!
//! The pillowcase is the plane modulo `G = { x ↦ ±x + 2λ }`. After scaling
//! by an odd factor `K`, punctures are the points of `(KZ)²` and `G` acts by
//! `x ↦ ±x + 2Kλ`. A segment is lifted to the straight polyline
//! `KP → K(P+v)`. A loop based at `P` around `Q = P+v` is lifted to
//! `KP → KQ + w → K(P+2v)` with `w` a short offset mostly along `v⊥`: it runs beside `Q` and its image folds back
//! over itself under the half-turn about `Q`, giving the boundary of a thin
//! neighbourhood of the segment.
//!
//! Every crossing in the quotient lifts to exactly one pair `(A, gB)` with
//! `A` the fixed lift of the first arc, so the count is
//! `Σ_g #(A ∩ gB)` over the finitely many `g` whose bounding boxes meet.
//! Contact at a puncture is an endpoint meeting and is ignored. Any other
//! contact is a degenerate position and the computation is retried with a
//! different scale.

use crate::pillowcase::ArcClass;

type Pt = (i128, i128);

/// Scale and side of the loop detour.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleParams {
    pub scale: i128,
    pub side: i128,
}

impl OracleParams {
    pub const PRIMARY: OracleParams = OracleParams {
        scale: 1_000_003,
        side: 1,
    };
    pub const ALTERNATE: OracleParams = OracleParams {
        scale: 1_500_007,
        side: -1,
    };
}

const FALLBACK_SCALES: [i128; 3] = [2_000_003, 3_000_017, 4_000_037];

/// Steepness of the detour offset. Its direction has complexity far above
/// any universe in use, so no other arc runs through the detour vertex.
const DETOUR_TILT: i128 = 997;

fn polyline(arc: &ArcClass, k: i128, side: i128) -> Vec<Pt> {
    match *arc {
        ArcClass::Segment { ends, vector } => {
            let (px, py) = ends[0].lattice_point();
            let (px, py) = (px as i128, py as i128);
            let (u, v) = (vector.u as i128, vector.v as i128);
            vec![(k * px, k * py), (k * (px + u), k * (py + v))]
        }
        ArcClass::Loop {
            base,
            enclosed,
            vector,
        } => {
            let (px, py) = base.lattice_point();
            debug_assert_ne!(base, enclosed);
            let (px, py) = (px as i128, py as i128);
            let (u, v) = (vector.u as i128, vector.v as i128);
            let w = (side * (-DETOUR_TILT * v + u), side * (DETOUR_TILT * u + v));
            vec![
                (k * px, k * py),
                (k * (px + u) + w.0, k * (py + v) + w.1),
                (k * (px + 2 * u), k * (py + 2 * v)),
            ]
        }
    }
}

fn orient(a: Pt, b: Pt, c: Pt) -> i128 {
    ((b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)).signum()
}

fn on_segment(a: Pt, b: Pt, p: Pt) -> bool {
    p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1)
}

enum Contact {
    None,
    Cross,
    Degenerate,
}

fn is_puncture(p: Pt, k: i128) -> bool {
    p.0.rem_euclid(k) == 0 && p.1.rem_euclid(k) == 0
}

fn contact(p1: Pt, p2: Pt, p3: Pt, p4: Pt, k: i128) -> Contact {
    let o1 = orient(p1, p2, p3);
    let o2 = orient(p1, p2, p4);
    let o3 = orient(p3, p4, p1);
    let o4 = orient(p3, p4, p2);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return Contact::Cross;
    }
    if o1 == 0 && o2 == 0 {
        // collinear: the overlap must be empty or a single shared puncture
        let mut touching: Vec<Pt> = Vec::new();
        for (a, b, p) in [(p1, p2, p3), (p1, p2, p4), (p3, p4, p1), (p3, p4, p2)] {
            if on_segment(a, b, p) && !touching.contains(&p) {
                touching.push(p);
            }
        }
        return match touching.as_slice() {
            [] => Contact::None,
            [p] if is_puncture(*p, k) => Contact::None,
            _ => Contact::Degenerate,
        };
    }
    for (o, a, b, p) in [(o1, p1, p2, p3), (o2, p1, p2, p4), (o3, p3, p4, p1), (o4, p3, p4, p2)] {
        if o == 0 && on_segment(a, b, p) && !is_puncture(p, k) {
            return Contact::Degenerate;
        }
    }
    Contact::None
}

fn bbox(pts: &[Pt]) -> (Pt, Pt) {
    let lo = pts.iter().fold((i128::MAX, i128::MAX), |m, p| (m.0.min(p.0), m.1.min(p.1)));
    let hi = pts.iter().fold((i128::MIN, i128::MIN), |m, p| (m.0.max(p.0), m.1.max(p.1)));
    (lo, hi)
}

fn count(x: &ArcClass, y: &ArcClass, params: OracleParams) -> Option<u32> {
    let k = params.scale;
    let a = polyline(x, k, params.side);
    let b = polyline(y, k, params.side);
    let (alo, ahi) = bbox(&a);
    let period = 2 * k;
    let mut total = 0;
    for sign in [1i128, -1] {
        let bs: Vec<Pt> = b.iter().map(|p| (sign * p.0, sign * p.1)).collect();
        let (blo, bhi) = bbox(&bs);
        let lx = (alo.0 - bhi.0).div_euclid(period)..=(ahi.0 - blo.0).div_euclid(period) + 1;
        for i in lx {
            let ly = (alo.1 - bhi.1).div_euclid(period)..=(ahi.1 - blo.1).div_euclid(period) + 1;
            for j in ly {
                let shifted: Vec<Pt> = bs.iter().map(|p| (p.0 + period * i, p.1 + period * j)).collect();
                for s in a.windows(2) {
                    for t in shifted.windows(2) {
                        match contact(s[0], s[1], t[0], t[1], k) {
                            Contact::Cross => total += 1,
                            Contact::None => {}
                            Contact::Degenerate => return None,
                        }
                    }
                }
            }
        }
    }
    Some(total)
}

/// Oracle count with the given representative parameters, falling back to
/// other scales on degenerate positions.
pub fn oracle_intersect_with(x: &ArcClass, y: &ArcClass, params: OracleParams) -> u32 {
    if x == y {
        return 0;
    }
    std::iter::once(params.scale)
        .chain(FALLBACK_SCALES)
        .find_map(|scale| {
            count(
                x,
                y,
                OracleParams {
                    scale,
                    side: params.side,
                },
            )
        })
        .expect("no generic scale found for polyline representatives")
}

/// Oracle count with the default representatives.
pub fn oracle_intersect(x: &ArcClass, y: &ArcClass) -> u32 {
    oracle_intersect_with(x, y, OracleParams::PRIMARY)
}
