//! Affine symmetries `x ↦ Ax + t` of the pillowcase, with `A ∈ GL(2,Z)` and
//! `t` a doubled half-lattice translation in `{0,1}²`.
//!
//! `(A, t)` and `(-A, t)` act identically on arcs, so elements are stored
//! with a normalized linear part.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::pillowcase::{ArcClass, Puncture, Slope};

pub type Mat = [[i64; 2]; 2];

pub const IDENTITY: Mat = [[1, 0], [0, 1]];

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let mut out = [[0; 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

pub fn mat_det(a: &Mat) -> i64 {
    a[0][0] * a[1][1] - a[0][1] * a[1][0]
}

pub fn mat_apply(a: &Mat, x: i64, y: i64) -> (i64, i64) {
    (a[0][0] * x + a[0][1] * y, a[1][0] * x + a[1][1] * y)
}

/// Inverse of a unimodular matrix.
pub fn mat_inv(a: &Mat) -> Mat {
    let d = mat_det(a);
    assert!(d == 1 || d == -1, "matrix is not unimodular");
    [[d * a[1][1], -d * a[0][1]], [-d * a[1][0], d * a[0][0]]]
}

fn neg(a: &Mat) -> Mat {
    [[-a[0][0], -a[0][1]], [-a[1][0], -a[1][1]]]
}

/// Picks the representative of `{A, -A}` whose first nonzero entry is positive.
fn normalize_sign(a: Mat) -> Mat {
    let first = a.iter().flatten().copied().find(|&v| v != 0).unwrap_or(1);
    if first < 0 {
        neg(&a)
    } else {
        a
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymmetryElement {
    pub linear: Mat,
    /// Doubled translation, entries in `{0, 1}`.
    pub translation: [i64; 2],
}

impl SymmetryElement {
    pub fn new(linear: Mat, translation: [i64; 2]) -> Self {
        assert!(mat_det(&linear).abs() == 1, "linear part must have determinant ±1");
        SymmetryElement {
            linear: normalize_sign(linear),
            translation: [translation[0].rem_euclid(2), translation[1].rem_euclid(2)],
        }
    }

    pub fn identity() -> Self {
        SymmetryElement::new(IDENTITY, [0, 0])
    }

    pub fn linear(a: Mat) -> Self {
        SymmetryElement::new(a, [0, 0])
    }

    pub fn shift(tx: i64, ty: i64) -> Self {
        SymmetryElement::new(IDENTITY, [tx, ty])
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SymmetryElement) -> SymmetryElement {
        let (tx, ty) = mat_apply(&self.linear, other.translation[0], other.translation[1]);
        SymmetryElement::new(
            mat_mul(&self.linear, &other.linear),
            [tx + self.translation[0], ty + self.translation[1]],
        )
    }

    pub fn inverse(&self) -> SymmetryElement {
        let inv = mat_inv(&self.linear);
        let (tx, ty) = mat_apply(&inv, self.translation[0], self.translation[1]);
        SymmetryElement::new(inv, [-tx, -ty])
    }

    pub fn apply_puncture(&self, p: Puncture) -> Puncture {
        let (x, y) = p.lattice_point();
        let (x, y) = mat_apply(&self.linear, x, y);
        Puncture::from_lattice_point(x + self.translation[0], y + self.translation[1])
    }

    pub fn apply_slope(&self, s: Slope) -> Slope {
        let (u, v) = mat_apply(&self.linear, s.u, s.v);
        Slope::new(u, v).normalized()
    }

    pub fn apply(&self, arc: &ArcClass) -> ArcClass {
        match *arc {
            ArcClass::Segment { ends, vector } => {
                let (p, q) = (self.apply_puncture(ends[0]), self.apply_puncture(ends[1]));
                ArcClass::Segment {
                    ends: if p < q { [p, q] } else { [q, p] },
                    vector: self.apply_slope(vector),
                }
            }
            ArcClass::Loop {
                base,
                enclosed,
                vector,
            } => ArcClass::Loop {
                base: self.apply_puncture(base),
                enclosed: self.apply_puncture(enclosed),
                vector: self.apply_slope(vector),
            },
        }
    }

    /// Images of a, b, c, d.
    pub fn puncture_action(&self) -> [Puncture; 4] {
        Puncture::ALL.map(|p| self.apply_puncture(p))
    }
}

impl fmt::Display for SymmetryElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.linear;
        write!(
            f,
            "[[{},{}],[{},{}]]+({}/2,{}/2)",
            a[0][0], a[0][1], a[1][0], a[1][1], self.translation[0], self.translation[1]
        )
    }
}

/// Named generators of the symmetry action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    /// `[[1,2],[0,1]]`
    TwistX,
    /// `[[1,0],[2,1]]`
    TwistY,
    /// `[[0,1],[1,0]]`
    Swap,
    /// `[[1,0],[0,-1]]`
    Flip,
    /// `[[1,1],[0,1]]`, the half twist exchanging c and d
    HalfTwist,
    /// translation by half a period in x
    ShiftX,
    /// translation by half a period in y
    ShiftY,
}

impl Generator {
    pub const ALL: [Generator; 7] = [
        Generator::TwistX,
        Generator::TwistY,
        Generator::Swap,
        Generator::Flip,
        Generator::HalfTwist,
        Generator::ShiftX,
        Generator::ShiftY,
    ];

    pub fn element(self) -> SymmetryElement {
        match self {
            Generator::TwistX => SymmetryElement::linear([[1, 2], [0, 1]]),
            Generator::TwistY => SymmetryElement::linear([[1, 0], [2, 1]]),
            Generator::Swap => SymmetryElement::linear([[0, 1], [1, 0]]),
            Generator::Flip => SymmetryElement::linear([[1, 0], [0, -1]]),
            Generator::HalfTwist => SymmetryElement::linear([[1, 1], [0, 1]]),
            Generator::ShiftX => SymmetryElement::shift(1, 0),
            Generator::ShiftY => SymmetryElement::shift(0, 1),
        }
    }
}

/// A generator raised to a (possibly negative) power.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Letter {
    pub generator: Generator,
    pub power: i64,
}

/// Evaluates a word; the last letter acts first.
pub fn evaluate_word(word: &[Letter]) -> SymmetryElement {
    word.iter().fold(SymmetryElement::identity(), |acc, l| {
        let g = l.generator.element();
        let g = if l.power < 0 { g.inverse() } else { g };
        (0..l.power.abs()).fold(acc, |acc, _| acc.compose(&g))
    })
}

/// Writes `g` as a word in the generators.
///
/// The linear part is reduced by row operations with the half twist, the
/// swap and the flip; the translation is appended as shifts.
pub fn decompose(g: &SymmetryElement) -> Vec<Letter> {
    // Find a word w with w·A = ±I; then A = w⁻¹ up to sign.
    let mut a = g.linear;
    let mut ops: Vec<Letter> = Vec::new();
    let push = |ops: &mut Vec<Letter>, generator, power| {
        if power != 0 {
            ops.push(Letter { generator, power });
        }
    };
    let swap = Generator::Swap.element().linear;
    let flip = Generator::Flip.element().linear;
    loop {
        if a[1][0] == 0 {
            break;
        }
        if a[0][0].abs() < a[1][0].abs() {
            a = mat_mul(&swap, &a);
            push(&mut ops, Generator::Swap, 1);
            continue;
        }
        // row0 -= q·row1 using U^{-q}; U = [[1,1],[0,1]] adds row1 to row0
        let q = a[0][0].div_euclid(a[1][0]);
        a = [[a[0][0] - q * a[1][0], a[0][1] - q * a[1][1]], a[1]];
        push(&mut ops, Generator::HalfTwist, -q);
        a = mat_mul(&swap, &a);
        push(&mut ops, Generator::Swap, 1);
    }
    // now a = [[±1, x], [0, ±1]]
    if a[0][0] * a[1][1] < 0 {
        a = mat_mul(&flip, &a);
        push(&mut ops, Generator::Flip, 1);
    }
    if a[0][0] < 0 {
        a = neg(&a);
    }
    let x = a[0][1];
    push(&mut ops, Generator::HalfTwist, -x);
    // ops applied in order turn A into ±I, so A = (ops_k ⋯ ops_1)⁻¹ = ops_1⁻¹ ⋯ ops_k⁻¹
    let mut word: Vec<Letter> = Vec::new();
    if g.translation != [0, 0] {
        push(&mut word, Generator::ShiftX, g.translation[0]);
        push(&mut word, Generator::ShiftY, g.translation[1]);
    }
    word.extend(ops.iter().map(|l| Letter {
        generator: l.generator,
        power: -l.power,
    }));
    word
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intersection::intersect;
    use crate::pillowcase::{arc_universe, ComplexityBound, Puncture::*};
    use std::collections::BTreeSet;

    #[test]
    fn puncture_action_examples() {
        assert_eq!(SymmetryElement::identity().puncture_action(), [A, B, C, D]);
        assert_eq!(Generator::Swap.element().puncture_action(), [A, C, B, D]);
        assert_eq!(SymmetryElement::shift(1, 1).puncture_action(), [D, C, B, A]);
        assert_eq!(Generator::ShiftX.element().puncture_action(), [B, A, D, C]);
    }

    #[test]
    fn generators_reach_all_permutations() {
        let mut seen: BTreeSet<[Puncture; 4]> = BTreeSet::new();
        let mut frontier = vec![SymmetryElement::identity()];
        seen.insert(SymmetryElement::identity().puncture_action());
        while let Some(g) = frontier.pop() {
            for gen in Generator::ALL {
                let h = gen.element().compose(&g);
                if seen.insert(h.puncture_action()) {
                    frontier.push(h);
                }
            }
        }
        assert_eq!(seen.len(), 24);
    }

    #[test]
    fn shift_fixes_vectors() {
        let x = ArcClass::segment(A, C, 2, 1).unwrap();
        let y = Generator::ShiftX.element().apply(&x);
        assert_eq!(y, ArcClass::segment(B, D, 2, 1).unwrap());
    }

    #[test]
    fn action_preserves_validity_and_intersections() {
        let u = arc_universe(ComplexityBound::new(3).unwrap());
        for gen in Generator::ALL {
            let g = gen.element();
            for x in &u {
                assert_eq!(g.apply(x).validate(), Ok(()));
                for y in &u {
                    assert_eq!(intersect(&g.apply(x), &g.apply(y)), intersect(x, y));
                }
            }
        }
    }

    #[test]
    fn inverse_and_compose() {
        let g = SymmetryElement::new([[2, 1], [1, 1]], [1, 0]);
        assert_eq!(g.compose(&g.inverse()), SymmetryElement::identity());
        assert_eq!(g.inverse().compose(&g), SymmetryElement::identity());
    }

    #[test]
    fn decomposition_recomposes() {
        let mats: [Mat; 5] = [[[2, 1], [1, 1]], [[5, -3], [-3, 2]], [[0, 1], [1, 0]], [[-7, 2], [4, -1]], [[3, 8], [1, 3]]];
        for m in mats {
            for t in [[0, 0], [1, 0], [0, 1], [1, 1]] {
                let g = SymmetryElement::new(m, t);
                assert_eq!(evaluate_word(&decompose(&g)), g, "{g}");
            }
        }
    }
}
