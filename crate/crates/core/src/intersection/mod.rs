//! Geometric intersection numbers of arc classes.
//!
//! [`intersect`] evaluates closed forms on the lattice data; [`oracle_intersect`]
//! counts crossings of explicit polylines and shares no code with it.

mod oracle;

pub use oracle::{oracle_intersect, oracle_intersect_with, OracleParams};

use crate::pillowcase::{ArcClass, Puncture};

/// Number of common endpoint punctures. A loop contributes its base twice.
pub fn shared_endpoints(x: &ArcClass, y: &ArcClass) -> u8 {
    let ex = x.endpoints();
    let mut ey: Vec<Option<Puncture>> = y.endpoints().iter().copied().map(Some).collect();
    let mut eta = 0;
    for p in ex {
        if let Some(slot) = ey.iter_mut().find(|s| **s == Some(p)) {
            *slot = None;
            eta += 1;
        }
    }
    eta
}

/// Minimal-position crossing count between two segment classes.
fn segment_pair(x: &ArcClass, y: &ArcClass) -> u32 {
    let d = x.vector().det(y.vector()).unsigned_abs() as u32;
    let eta = shared_endpoints(x, y) as u32;
    (d - eta) / 2
}

fn loop_parts(x: &ArcClass) -> Option<(Puncture, Puncture, ArcClass)> {
    match *x {
        ArcClass::Loop { base, enclosed, .. } => Some((base, enclosed, x.core_segment())),
        ArcClass::Segment { .. } => None,
    }
}

/// Fault switch for the verification harness. `Exact` is the only mode used
/// by the library itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EngineMode {
    #[default]
    Exact,
    /// Adds one to every segment pair sharing both endpoints.
    Corrupted,
}

/// The closed-form engine.
#[derive(Debug, Clone, Copy, Default)]
pub struct Engine {
    pub mode: EngineMode,
}

impl Engine {
    pub const EXACT: Engine = Engine {
        mode: EngineMode::Exact,
    };

    pub fn intersect(&self, x: &ArcClass, y: &ArcClass) -> u32 {
        let n = intersect(x, y);
        match self.mode {
            EngineMode::Exact => n,
            EngineMode::Corrupted => {
                if x != y && !x.is_loop() && !y.is_loop() && shared_endpoints(x, y) == 2 {
                    n + 1
                } else {
                    n
                }
            }
        }
    }
}

/// Geometric intersection number, with `intersect(x, x) = 0`.
pub fn intersect(x: &ArcClass, y: &ArcClass) -> u32 {
    if x == y {
        return 0;
    }
    match (loop_parts(x), loop_parts(y)) {
        (None, None) => segment_pair(x, y),
        (Some((_, q, s)), None) => loop_segment(q, &s, y),
        (None, Some((_, q, s))) => loop_segment(q, &s, x),
        (Some((p1, q1, s1)), Some((p2, q2, s2))) => {
            if s1 == s2 {
                // the two loops around one segment, based at opposite ends
                return 2;
            }
            let same = |a: Puncture, b: Puncture| (a == b) as u32;
            4 * segment_pair(&s1, &s2) + 2 * (same(q1, q2) + same(q1, p2) + same(p1, q2))
        }
    }
}

fn loop_segment(enclosed: Puncture, core: &ArcClass, t: &ArcClass) -> u32 {
    if core == t {
        return 0;
    }
    2 * segment_pair(core, t) + t.endpoints().contains(&enclosed) as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pillowcase::{arc_universe, ComplexityBound, Puncture::*};

    fn seg(p: Puncture, q: Puncture, u: i64, v: i64) -> ArcClass {
        ArcClass::segment(p, q, u, v).unwrap()
    }
    fn lp(p: Puncture, q: Puncture, u: i64, v: i64) -> ArcClass {
        ArcClass::loop_around(p, q, u, v).unwrap()
    }

    #[test]
    fn shared_endpoint_examples() {
        assert_eq!(shared_endpoints(&seg(A, B, 1, 0), &seg(A, C, 0, 1)), 1);
        assert_eq!(shared_endpoints(&seg(A, B, 1, 0), &seg(A, B, 1, 2)), 2);
        assert_eq!(shared_endpoints(&seg(A, B, 1, 0), &seg(C, D, 1, 0)), 0);
        assert_eq!(shared_endpoints(&lp(A, B, 1, 0), &seg(A, C, 0, 1)), 1);
        assert_eq!(shared_endpoints(&lp(A, B, 1, 0), &lp(A, C, 0, 1)), 2);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(intersect(&seg(A, D, 1, 1), &seg(A, D, 1, -1)), 0);
        assert_eq!(intersect(&seg(A, D, 1, -1), &seg(A, D, 1, 3)), 1);
        for k in 1..6i64 {
            assert_eq!(intersect(&seg(A, B, 1, 0), &seg(A, B, 1, 2 * k)), (k - 1) as u32);
        }
        assert_eq!(intersect(&lp(A, B, 1, 0), &seg(A, B, 1, 0)), 0);
        assert_eq!(intersect(&lp(A, B, 1, 0), &seg(C, D, 1, 0)), 0);
        let x = lp(C, A, 0, 1);
        assert_eq!(intersect(&x, &x), 0);
    }

    #[test]
    fn engine_matches_oracle_on_small_universe() {
        let u = arc_universe(ComplexityBound::new(3).unwrap());
        for (i, x) in u.iter().enumerate() {
            for y in &u[i..] {
                assert_eq!(intersect(x, y), oracle_intersect(x, y), "{x} vs {y}");
            }
        }
    }

    #[test]
    fn parity_coherence_for_segments() {
        let u = arc_universe(ComplexityBound::new(6).unwrap());
        let segs: Vec<_> = u.iter().filter(|a| !a.is_loop()).collect();
        for x in &segs {
            for y in &segs {
                if x == y {
                    continue;
                }
                let d = x.vector().det(y.vector()).abs();
                let eta = shared_endpoints(x, y) as i64;
                assert!(d >= eta && (d - eta) % 2 == 0, "{x} {y}");
            }
        }
    }

    #[test]
    fn corrupted_engine_differs() {
        let e = Engine {
            mode: EngineMode::Corrupted,
        };
        let x = seg(A, B, 1, 0);
        let y = seg(A, B, 1, 2);
        assert_eq!(e.intersect(&x, &y), 1);
        assert_eq!(Engine::EXACT.intersect(&x, &y), 0);
    }
}
