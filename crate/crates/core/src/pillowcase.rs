//! Encoding of punctures and simple essential arc classes on the four-punctured
//! sphere, modeled as the pillowcase: the plane modulo `x ↦ ±x + λ` for
//! `λ ∈ Z²`, punctured at the images of the half-lattice points.
//!
//! Coordinates are stored *doubled* throughout the crate, so the punctures sit
//! at integer points `{0,1}²` and the torus lattice is `2Z²`. A segment class
//! between `p` and `q` is the straight segment from a lift `P` of `p` to
//! `P + v`, where `v` is a primitive integer vector with `v ≡ q - p (mod 2)`.
//! A loop based at `p` enclosing `q` is the boundary of a regular
//! neighbourhood of the segment class `σ_pq` with vector `v`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One of the four punctures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Puncture {
    A,
    B,
    C,
    D,
}

impl Puncture {
    pub const ALL: [Puncture; 4] = [Puncture::A, Puncture::B, Puncture::C, Puncture::D];

    /// Doubled lattice point: a=(0,0), b=(1,0), c=(0,1), d=(1,1).
    pub const fn lattice_point(self) -> (i64, i64) {
        match self {
            Puncture::A => (0, 0),
            Puncture::B => (1, 0),
            Puncture::C => (0, 1),
            Puncture::D => (1, 1),
        }
    }

    /// Inverse of [`Puncture::lattice_point`], reducing modulo 2.
    pub fn from_lattice_point(x: i64, y: i64) -> Puncture {
        match (x.rem_euclid(2), y.rem_euclid(2)) {
            (0, 0) => Puncture::A,
            (1, 0) => Puncture::B,
            (0, 1) => Puncture::C,
            _ => Puncture::D,
        }
    }

    pub const fn index(self) -> usize {
        self as usize
    }

    pub const fn label(self) -> char {
        match self {
            Puncture::A => 'a',
            Puncture::B => 'b',
            Puncture::C => 'c',
            Puncture::D => 'd',
        }
    }

    pub fn from_label(c: char) -> Option<Puncture> {
        match c {
            'a' => Some(Puncture::A),
            'b' => Some(Puncture::B),
            'c' => Some(Puncture::C),
            'd' => Some(Puncture::D),
            _ => None,
        }
    }
}

impl fmt::Display for Puncture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// An integer direction vector `(u, v)`, stored in sign-normalized form for
/// valid arc classes (`u > 0`, or `u = 0` and `v > 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Slope {
    pub u: i64,
    pub v: i64,
}

impl Slope {
    pub const fn new(u: i64, v: i64) -> Self {
        Slope { u, v }
    }

    /// The representative of `{(u,v), (-u,-v)}` with `u > 0`, or `u = 0, v > 0`.
    pub fn normalized(self) -> Self {
        if self.u > 0 || (self.u == 0 && self.v > 0) {
            self
        } else {
            Slope::new(-self.u, -self.v)
        }
    }

    pub fn is_normalized(self) -> bool {
        self.u > 0 || (self.u == 0 && self.v > 0)
    }

    pub fn is_primitive(self) -> bool {
        gcd(self.u, self.v) == 1
    }

    pub fn det(self, other: Slope) -> i64 {
        self.u * other.v - self.v * other.u
    }

    /// `max(|u|, |v|)`.
    pub fn complexity(self) -> i64 {
        self.u.abs().max(self.v.abs())
    }

    pub fn parity(self) -> (i64, i64) {
        (self.u.rem_euclid(2), self.v.rem_euclid(2))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// The parity a vector between `p` and `q` must have: `2(q - p) mod 2` in
/// real coordinates, i.e. the doubled difference reduced mod 2.
pub fn required_parity(p: Puncture, q: Puncture) -> (i64, i64) {
    let (px, py) = p.lattice_point();
    let (qx, qy) = q.lattice_point();
    ((qx - px).rem_euclid(2), (qy - py).rem_euclid(2))
}

/// Homotopy class of a simple essential arc.
///
/// Field order matters: the derived `Ord` is the crate's deterministic arc
/// order (kind, endpoint labels, then `u`, `v`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArcClass {
    /// Straight segment between two distinct punctures, `ends[0] < ends[1]`.
    Segment { ends: [Puncture; 2], vector: Slope },
    /// Loop based at `base` bounding a once-punctured disk around `enclosed`;
    /// `vector` is the slope of the enclosed segment class `σ(base, enclosed)`.
    Loop {
        base: Puncture,
        enclosed: Puncture,
        vector: Slope,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArcViolation {
    #[error("endpoints must be distinct punctures")]
    DegenerateEndpoints,
    #[error("vector {0} is not primitive")]
    NotPrimitive(Slope),
    #[error("vector {vector} has parity {got:?} but {p}-{q} requires {want:?}")]
    Parity {
        vector: Slope,
        p: Puncture,
        q: Puncture,
        got: (i64, i64),
        want: (i64, i64),
    },
    #[error("vector {0} is not sign-normalized")]
    SignNormalization(Slope),
    #[error("segment endpoints are not in label order")]
    EndpointOrder,
}

impl ArcClass {
    /// Builds a segment class, normalizing endpoint order and vector sign.
    pub fn segment(p: Puncture, q: Puncture, u: i64, v: i64) -> Result<Self, ArcViolation> {
        let ends = if p <= q { [p, q] } else { [q, p] };
        let arc = ArcClass::Segment {
            ends,
            vector: Slope::new(u, v).normalized(),
        };
        arc.validate()?;
        Ok(arc)
    }

    /// Builds a loop class based at `base` around `enclosed`.
    pub fn loop_around(base: Puncture, enclosed: Puncture, u: i64, v: i64) -> Result<Self, ArcViolation> {
        let arc = ArcClass::Loop {
            base,
            enclosed,
            vector: Slope::new(u, v).normalized(),
        };
        arc.validate()?;
        Ok(arc)
    }

    pub fn is_loop(&self) -> bool {
        matches!(self, ArcClass::Loop { .. })
    }

    pub fn vector(&self) -> Slope {
        match *self {
            ArcClass::Segment { vector, .. } | ArcClass::Loop { vector, .. } => vector,
        }
    }

    pub fn complexity(&self) -> i64 {
        self.vector().complexity()
    }

    /// Endpoint pair; a loop starts and ends at its base.
    pub fn endpoints(&self) -> [Puncture; 2] {
        match *self {
            ArcClass::Segment { ends, .. } => ends,
            ArcClass::Loop { base, .. } => [base, base],
        }
    }

    /// The segment class a loop surrounds, or the segment itself.
    pub fn core_segment(&self) -> ArcClass {
        match *self {
            ArcClass::Segment { .. } => *self,
            ArcClass::Loop {
                base,
                enclosed,
                vector,
            } => {
                let ends = if base <= enclosed { [base, enclosed] } else { [enclosed, base] };
                ArcClass::Segment { ends, vector }
            }
        }
    }

    /// Checks primitivity, then parity, then sign normalization.
    pub fn validate(&self) -> Result<(), ArcViolation> {
        let (p, q, vector) = match *self {
            ArcClass::Segment { ends, vector } => (ends[0], ends[1], vector),
            ArcClass::Loop {
                base,
                enclosed,
                vector,
            } => (base, enclosed, vector),
        };
        if p == q {
            return Err(ArcViolation::DegenerateEndpoints);
        }
        if !vector.is_primitive() {
            return Err(ArcViolation::NotPrimitive(vector));
        }
        let want = required_parity(p, q);
        if vector.parity() != want {
            return Err(ArcViolation::Parity {
                vector,
                p,
                q,
                got: vector.parity(),
                want,
            });
        }
        if !vector.is_normalized() {
            return Err(ArcViolation::SignNormalization(vector));
        }
        if let ArcClass::Segment { ends, .. } = self {
            if ends[0] > ends[1] {
                return Err(ArcViolation::EndpointOrder);
            }
        }
        Ok(())
    }
}

impl fmt::Display for ArcClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArcClass::Segment { ends, vector } => write!(f, "{}{}{}", ends[0], ends[1], vector),
            ArcClass::Loop {
                base,
                enclosed,
                vector,
            } => write!(f, "loop[{}~{}]{}", base, enclosed, vector),
        }
    }
}

/// Maximum `max(|u|,|v|)` admitted into a universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ComplexityBound(u32);

impl ComplexityBound {
    pub fn new(n: u32) -> Option<Self> {
        (n >= 1).then_some(ComplexityBound(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

/// Sign-normalized primitive vectors with `max(|u|,|v|) <= n`, sorted.
pub fn primitive_slopes(n: u32) -> Vec<Slope> {
    let n = n as i64;
    let mut out: Vec<Slope> = (0..=n)
        .flat_map(|u| (-n..=n).map(move |v| Slope::new(u, v)))
        .filter(|s| s.is_normalized() && s.is_primitive())
        .collect();
    out.sort();
    out
}

/// The two unordered puncture pairs `{p,q}` (with `p < q`) whose parity
/// matches `slope`. They are always complementary.
pub fn pairs_for_slope(slope: Slope) -> [[Puncture; 2]; 2] {
    use Puncture::*;
    match slope.parity() {
        (1, 0) => [[A, B], [C, D]],
        (0, 1) => [[A, C], [B, D]],
        (1, 1) => [[A, D], [B, C]],
        _ => unreachable!("primitive vectors are never (0,0) mod 2"),
    }
}

/// Every segment and loop class whose vector satisfies the bound, in the
/// crate's deterministic order.
pub fn arc_universe(bound: ComplexityBound) -> Vec<ArcClass> {
    let mut out = Vec::new();
    for slope in primitive_slopes(bound.get()) {
        for [p, q] in pairs_for_slope(slope) {
            out.push(ArcClass::Segment {
                ends: [p, q],
                vector: slope,
            });
            out.push(ArcClass::Loop {
                base: p,
                enclosed: q,
                vector: slope,
            });
            out.push(ArcClass::Loop {
                base: q,
                enclosed: p,
                vector: slope,
            });
        }
    }
    out.sort();
    out
}

/// Arcs of complexity exactly `m`.
pub fn arc_shell(m: u32) -> Vec<ArcClass> {
    let bound = ComplexityBound::new(m).expect("shell index is positive");
    arc_universe(bound)
        .into_iter()
        .filter(|a| a.complexity() == m as i64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use Puncture::*;

    fn bound(n: u32) -> ComplexityBound {
        ComplexityBound::new(n).unwrap()
    }

    #[test]
    fn unit_universe_has_eight_segments_and_sixteen_loops() {
        let u = arc_universe(bound(1));
        let segs: Vec<_> = u.iter().filter(|a| !a.is_loop()).collect();
        assert_eq!(segs.len(), 8);
        assert_eq!(u.len() - segs.len(), 16);
        let expect = [
            (A, B, 1, 0),
            (C, D, 1, 0),
            (A, C, 0, 1),
            (B, D, 0, 1),
            (A, D, 1, 1),
            (B, C, 1, 1),
            (A, D, 1, -1),
            (B, C, 1, -1),
        ];
        for (p, q, x, y) in expect {
            assert!(u.contains(&ArcClass::segment(p, q, x, y).unwrap()), "{p}{q} ({x},{y})");
        }
    }

    #[test]
    fn universes_are_nested_and_strictly_growing() {
        let mut prev = arc_universe(bound(1));
        for n in 2..=6 {
            let cur = arc_universe(bound(n));
            assert!(cur.len() > prev.len());
            assert!(prev.iter().all(|a| cur.binary_search(a).is_ok()));
            prev = cur;
        }
    }

    #[test]
    fn endpoints_projection() {
        let s = ArcClass::segment(A, B, 1, 0).unwrap();
        assert_eq!(s.endpoints(), [A, B]);
        let l = ArcClass::loop_around(A, B, 1, 0).unwrap();
        assert_eq!(l.endpoints(), [A, A]);
        let t = ArcClass::segment(D, A, 1, 3).unwrap();
        assert_eq!(t.endpoints(), [A, D]);
    }

    #[test]
    fn validate_reports_first_violation() {
        assert!(ArcClass::segment(A, B, 1, 0).is_ok());
        assert!(matches!(
            ArcClass::segment(A, B, 0, 1),
            Err(ArcViolation::Parity { want: (1, 0), .. })
        ));
        assert!(matches!(ArcClass::segment(A, D, 2, 2), Err(ArcViolation::NotPrimitive(_))));
        let raw = ArcClass::Segment {
            ends: [A, B],
            vector: Slope::new(-1, 0),
        };
        assert_eq!(raw.validate(), Err(ArcViolation::SignNormalization(Slope::new(-1, 0))));
        let raw = ArcClass::Segment {
            ends: [B, A],
            vector: Slope::new(1, 0),
        };
        assert_eq!(raw.validate(), Err(ArcViolation::EndpointOrder));
        assert_eq!(
            ArcClass::loop_around(C, C, 1, 0),
            Err(ArcViolation::DegenerateEndpoints)
        );
    }

    #[test]
    fn exactly_two_complementary_pairs_per_slope() {
        let pairs: Vec<[Puncture; 2]> = [(A, B), (A, C), (A, D), (B, C), (B, D), (C, D)]
            .into_iter()
            .map(|(p, q)| [p, q])
            .collect();
        for s in primitive_slopes(7) {
            let ok: Vec<_> = pairs
                .iter()
                .filter(|[p, q]| required_parity(*p, *q) == s.parity())
                .collect();
            assert_eq!(ok.len(), 2, "{s}");
            let mut all: Vec<Puncture> = ok.iter().flat_map(|pq| pq.iter().copied()).collect();
            all.sort();
            assert_eq!(all, Puncture::ALL.to_vec());
            assert_eq!(pairs_for_slope(s).to_vec(), ok.into_iter().copied().collect::<Vec<_>>());
        }
    }

    #[test]
    fn universe_members_are_valid_and_normal() {
        for a in arc_universe(bound(5)) {
            assert_eq!(a.validate(), Ok(()));
            assert_eq!(a.vector().normalized(), a.vector());
        }
    }

    #[test]
    fn lattice_labels_round_trip() {
        for p in Puncture::ALL {
            let (x, y) = p.lattice_point();
            assert_eq!(Puncture::from_lattice_point(x + 4, y - 2), p);
            assert_eq!(Puncture::from_label(p.label()), Some(p));
        }
    }
}
