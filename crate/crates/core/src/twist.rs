//! Twisting coordinates on the annulus left after cutting along two disjoint
//! arcs, and the averaged coordinate τ* of arcs joining the two bottom
//! punctures.
//!
//! The cut is `{ad(1,1), bc(1,1)}`: a and d lie on the bottom boundary, b and
//! c on the top. An arc crossing the annulus is `(family, τ)` with `τ` an
//! integer for the a–b and d–c families and a half-integer for a–c and d–b.
//! The Dehn twist about the core has linear part `T = [[-1,2],[-2,3]]`,
//! fixing `(1,1)`, and `T = H²` for the half twist `H = [[0,1],[-1,2]]`,
//! which exchanges b and c.

use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::enumeration::{maximal_cliques_of, Bits};
use crate::intersection::intersect;
use crate::pillowcase::{arc_universe, ArcClass, ComplexityBound, Puncture, Slope};
use crate::symmetry::{mat_apply, Mat, SymmetryElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistError {
    #[error("twist value {tau2}/2 has the wrong parity for family {family}")]
    Parity { family: OmegaFamily, tau2: i64 },
    #[error("formula gives {0}/2, not a non-negative integer")]
    BadPairing(i64),
    #[error("arc {0} has complexity above the window bound {1}")]
    OutsideWindow(ArcClass, u32),
    #[error("arc {0} is not a segment between a and d")]
    NotAd(ArcClass),
    #[error("found {0} co-arcs instead of 4; raise the scan bound")]
    CoArcCount(usize),
    #[error("co-arc {0} does not lie in the annulus")]
    NotInAnnulus(ArcClass),
}

/// Which bottom and top punctures an annulus arc joins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OmegaFamily {
    AB,
    AC,
    DB,
    DC,
}

impl OmegaFamily {
    pub const ALL: [OmegaFamily; 4] = [OmegaFamily::AB, OmegaFamily::AC, OmegaFamily::DB, OmegaFamily::DC];

    pub fn bottom(self) -> Puncture {
        match self {
            OmegaFamily::AB | OmegaFamily::AC => Puncture::A,
            _ => Puncture::D,
        }
    }

    pub fn top(self) -> Puncture {
        match self {
            OmegaFamily::AB | OmegaFamily::DB => Puncture::B,
            _ => Puncture::C,
        }
    }

    /// Whether τ is a half-integer in this family.
    pub fn is_half(self) -> bool {
        matches!(self, OmegaFamily::AC | OmegaFamily::DB)
    }

    pub fn from_ends(bottom: Puncture, top: Puncture) -> Option<Self> {
        OmegaFamily::ALL
            .into_iter()
            .find(|f| f.bottom() == bottom && f.top() == top)
    }

    /// The arc with τ = 0 (integer families) or τ = ½.
    fn base(self) -> ArcClass {
        let (p, q, u, v) = match self {
            OmegaFamily::AB => (Puncture::A, Puncture::B, 1, 0),
            OmegaFamily::DC => (Puncture::C, Puncture::D, 1, 0),
            OmegaFamily::AC => (Puncture::A, Puncture::C, 0, 1),
            OmegaFamily::DB => (Puncture::B, Puncture::D, 0, 1),
        };
        ArcClass::segment(p, q, u, v).expect("base arcs are valid")
    }
}

impl fmt::Display for OmegaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X_{}^{}", self.bottom(), self.top())
    }
}

/// An arc crossing the annulus; `tau2` is twice the twisting number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OmegaArcClass {
    pub family: OmegaFamily,
    pub tau2: i64,
}

impl OmegaArcClass {
    pub fn new(family: OmegaFamily, tau2: i64) -> Result<Self, TwistError> {
        if (tau2.rem_euclid(2) == 1) != family.is_half() {
            return Err(TwistError::Parity { family, tau2 });
        }
        Ok(OmegaArcClass { family, tau2 })
    }

    pub fn tau(&self) -> Rational64 {
        Rational64::new(self.tau2, 2)
    }

    pub fn shared_endpoints(&self, other: &OmegaArcClass) -> i64 {
        (self.family.bottom() == other.family.bottom()) as i64 + (self.family.top() == other.family.top()) as i64
    }

    /// All classes with `|τ| ≤ w`.
    pub fn window(w: i64) -> Vec<OmegaArcClass> {
        let mut out = Vec::new();
        for family in OmegaFamily::ALL {
            for tau2 in -2 * w..=2 * w {
                if let Ok(s) = OmegaArcClass::new(family, tau2) {
                    out.push(s);
                }
            }
        }
        out
    }
}

impl fmt::Display for OmegaArcClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[τ={}]", self.family, self.tau())
    }
}

/// `|τ₁ - τ₂| - η/2`, checked to be a non-negative integer.
pub fn tau_intersect(s1: &OmegaArcClass, s2: &OmegaArcClass) -> Result<u32, TwistError> {
    let twice = (s1.tau2 - s2.tau2).abs() - s1.shared_endpoints(s2);
    if twice < 0 || twice % 2 != 0 {
        return Err(TwistError::BadPairing(twice));
    }
    Ok((twice / 2) as u32)
}

/// Linear part of the Dehn twist about the annulus core.
pub const TWIST: Mat = [[-1, 2], [-2, 3]];
/// Linear part of the half twist exchanging b and c.
pub const HALF_TWIST: Mat = [[0, 1], [-1, 2]];

fn twist_power(m: i64) -> Mat {
    // T = I + N with N² = 0
    [[1 - 2 * m, 2 * m], [-2 * m, 1 + 2 * m]]
}

/// The two arcs cut along, plus the |J| = 1 data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OmegaContext {
    /// The bottom cut arc, also the single disjoint arc in the |J| = 1 setting.
    pub j0: ArcClass,
    /// The top cut arc, the b–c class of the |J| = 1 setting.
    pub phi: ArcClass,
}

impl OmegaContext {
    pub fn standard() -> Self {
        OmegaContext {
            j0: ArcClass::segment(Puncture::A, Puncture::D, 1, 1).expect("valid"),
            phi: ArcClass::segment(Puncture::B, Puncture::C, 1, 1).expect("valid"),
        }
    }

    pub fn cut(&self) -> [ArcClass; 2] {
        [self.j0, self.phi]
    }
}

impl Default for OmegaContext {
    fn default() -> Self {
        OmegaContext::standard()
    }
}

/// Pillowcase arc of an annulus class in the standard context.
pub fn embed_omega(s: &OmegaArcClass, bound: Option<ComplexityBound>) -> Result<ArcClass, TwistError> {
    let base = s.family.base();
    let t = twist_power(s.tau2.div_euclid(2));
    let v = base.vector();
    let (u, w) = mat_apply(&t, v.u, v.v);
    let [p, q] = base.endpoints();
    let arc = ArcClass::segment(p, q, u, w).expect("twists preserve validity");
    if let Some(b) = bound {
        if arc.complexity() > b.get() as i64 {
            return Err(TwistError::OutsideWindow(arc, b.get()));
        }
    }
    Ok(arc)
}

/// Inverse of [`embed_omega`]; `None` for arcs not crossing the annulus.
pub fn omega_of(arc: &ArcClass) -> Option<OmegaArcClass> {
    let ArcClass::Segment { ends, vector } = *arc else {
        return None;
    };
    let is_bottom = |p: Puncture| matches!(p, Puncture::A | Puncture::D);
    let (bottom, top) = match (is_bottom(ends[0]), is_bottom(ends[1])) {
        (true, false) => (ends[0], ends[1]),
        (false, true) => (ends[1], ends[0]),
        _ => return None,
    };
    let family = OmegaFamily::from_ends(bottom, top)?;
    let b = family.base().vector();
    let c = 2 * (b.v - b.u);
    for y in [vector, Slope::new(-vector.u, -vector.v)] {
        let (du, dv) = (y.u - b.u, y.v - b.v);
        if du == dv && du % c == 0 {
            let m = du / c;
            let tau2 = 2 * m + family.is_half() as i64;
            return OmegaArcClass::new(family, tau2).ok();
        }
    }
    None
}

/// τ* in quarters: `4τ*`, always odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TauStarValue {
    pub quarters: i64,
}

impl TauStarValue {
    pub fn value(&self) -> Rational64 {
        Rational64::new(self.quarters, 4)
    }
}

impl fmt::Display for TauStarValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// The four arcs crossing the annulus that miss both `j0` and `sigma`.
pub fn co_arcs(sigma: &ArcClass, ctx: &OmegaContext, scan_bound: u32) -> Result<Vec<OmegaArcClass>, TwistError> {
    let bound = ComplexityBound::new(scan_bound.max(1)).expect("positive");
    let found: Vec<ArcClass> = arc_universe(bound)
        .into_iter()
        .filter(|a| {
            let [p, q] = a.endpoints();
            let bottom = |x: Puncture| matches!(x, Puncture::A | Puncture::D);
            !a.is_loop() && bottom(p) != bottom(q) && intersect(a, &ctx.j0) == 0 && intersect(a, sigma) == 0
        })
        .collect();
    if found.len() != 4 {
        return Err(TwistError::CoArcCount(found.len()));
    }
    found
        .iter()
        .map(|a| omega_of(a).ok_or(TwistError::NotInAnnulus(*a)))
        .collect()
}

/// Average twisting number of the four co-arcs of an a–d arc.
pub fn tau_star(sigma: &ArcClass, ctx: &OmegaContext) -> Result<TauStarValue, TwistError> {
    if sigma.is_loop() || sigma.endpoints() != [Puncture::A, Puncture::D] {
        return Err(TwistError::NotAd(*sigma));
    }
    let scan = 2 * sigma.complexity() as u32 + 3;
    let taus = co_arcs(sigma, ctx, scan)?;
    let sum2: i64 = taus.iter().map(|s| s.tau2).sum();
    // τ* = Σ τ / 4 = Σ tau2 / 8, so 4τ* = Σ tau2 / 2
    assert!(sum2 % 2 == 0, "co-arc twist sum is not an integer");
    Ok(TauStarValue { quarters: sum2 / 2 })
}

/// The half twist as a symmetry; it fixes a, d, `j0` and `phi`.
pub fn half_twist() -> SymmetryElement {
    SymmetryElement::linear(HALF_TWIST)
}

/// a–d arcs disjoint from `j0`, obtained from `ad(1,-1)` by half twists,
/// ordered along the orbit from `H^{-w}` to `H^{w}`.
pub fn ad_family(w: i64) -> Vec<ArcClass> {
    let start = ArcClass::segment(Puncture::A, Puncture::D, 1, -1).expect("valid");
    let h = half_twist();
    let hinv = h.inverse();
    (-w..=w)
        .map(|j| {
            let g = if j >= 0 { h } else { hinv };
            (0..j.abs()).fold(start, |a, _| g.apply(&a))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormulaStatus {
    Confirmed,
    Reconciled,
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconciliationRow {
    pub left: String,
    pub right: String,
    /// `|Δ|` between the two coordinates.
    pub delta: String,
    pub engine: u32,
    pub formula: String,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaCheck {
    pub name: String,
    pub expression: String,
    pub status: FormulaStatus,
    /// Engine count as `slope·|Δ| + offset`, when the rows fit such a law.
    pub fitted_slope: Option<String>,
    pub fitted_offset: Option<String>,
    pub rows: Vec<ReconciliationRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconciliationReport {
    pub window: i64,
    pub tau_star_values: Vec<(String, String)>,
    pub checks: Vec<FormulaCheck>,
    /// τ values of annulus arcs meeting the τ* = ¼ arc at most once.
    pub permissible_tau_at_quarter: Vec<String>,
    pub half_twist_disk: [Puncture; 2],
}

fn abs(x: Rational64) -> Rational64 {
    if x < Rational64::from(0) {
        -x
    } else {
        x
    }
}

fn fit_affine(points: &[(Rational64, u32)]) -> Option<(Rational64, Rational64)> {
    let mut xs: Vec<Rational64> = points.iter().map(|p| p.0).collect();
    xs.sort();
    xs.dedup();
    if xs.len() < 2 {
        return None;
    }
    let y_at = |x: Rational64| points.iter().find(|p| p.0 == x).map(|p| Rational64::from(p.1 as i64));
    let (x0, x1) = (xs[0], xs[1]);
    let (y0, y1) = (y_at(x0)?, y_at(x1)?);
    let slope = (y1 - y0) / (x1 - x0);
    let offset = y0 - slope * x0;
    points
        .iter()
        .all(|&(x, y)| slope * x + offset == Rational64::from(y as i64))
        .then_some((slope, offset))
}

fn check(name: &str, expression: &str, rows: Vec<ReconciliationRow>, points: Vec<(Rational64, u32)>) -> FormulaCheck {
    let all = rows.iter().all(|r| r.agrees);
    let fit = fit_affine(&points);
    let status = match (all, &fit) {
        (true, _) => FormulaStatus::Confirmed,
        (false, Some(_)) => FormulaStatus::Reconciled,
        (false, None) => FormulaStatus::Unresolved,
    };
    FormulaCheck {
        name: name.to_string(),
        expression: expression.to_string(),
        status,
        fitted_slope: fit.map(|f| f.0.to_string()),
        fitted_offset: fit.map(|f| f.1.to_string()),
        rows,
    }
}

/// Compares both τ* formulas with engine counts over `2w+1` a–d arcs and
/// all annulus arcs with `|τ| ≤ w + 1`.
pub fn reconcile_tau_star_formulas(w: i64) -> Result<ReconciliationReport, TwistError> {
    let ctx = OmegaContext::standard();
    let sigmas = ad_family(w);
    let stars: Vec<TauStarValue> = sigmas.iter().map(|s| tau_star(s, &ctx)).collect::<Result<_, _>>()?;

    let mut rows = Vec::new();
    let mut points = Vec::new();
    for i in 0..sigmas.len() {
        for j in i + 1..sigmas.len() {
            let delta = abs(stars[i].value() - stars[j].value());
            let engine = intersect(&sigmas[i], &sigmas[j]);
            let formula = Rational64::from(2) * delta + 1;
            rows.push(ReconciliationRow {
                left: format!("{} (τ*={})", sigmas[i], stars[i]),
                right: format!("{} (τ*={})", sigmas[j], stars[j]),
                delta: delta.to_string(),
                engine,
                formula: formula.to_string(),
                agrees: formula == Rational64::from(engine as i64),
            });
            points.push((delta, engine));
        }
    }
    let adad = check("ad-ad", "2|τ*(σ₁)-τ*(σ₂)|+1", rows, points);

    let mut rows = Vec::new();
    let mut points = Vec::new();
    let mut permissible: Vec<Rational64> = Vec::new();
    let quarter = Rational64::new(1, 4);
    for (sigma, star) in sigmas.iter().zip(&stars) {
        for gamma in OmegaArcClass::window(w + 1) {
            let arc = embed_omega(&gamma, None)?;
            let engine = intersect(sigma, &arc);
            let delta = abs(star.value() - gamma.tau());
            let formula = Rational64::from(2) * delta - Rational64::new(1, 2);
            if star.value() == quarter && engine <= 1 && !permissible.contains(&gamma.tau()) {
                permissible.push(gamma.tau());
            }
            rows.push(ReconciliationRow {
                left: format!("{} (τ*={})", sigma, star),
                right: format!("{} = {}", gamma, arc),
                delta: delta.to_string(),
                engine,
                formula: formula.to_string(),
                agrees: formula == Rational64::from(engine as i64),
            });
            points.push((delta, engine));
        }
    }
    let adbc = check("ad-annulus", "2|τ*(σ)-τ(γ)|-1/2", rows, points);
    permissible.sort();

    let mut values: Vec<(String, String)> = sigmas.iter().zip(&stars).map(|(s, t)| (s.to_string(), t.to_string())).collect();
    values.sort_by_key(|(_, t)| t.parse::<Rational64>().ok());
    Ok(ReconciliationReport {
        window: w,
        tau_star_values: values,
        checks: vec![adad, adbc],
        permissible_tau_at_quarter: permissible.iter().map(|r| r.to_string()).collect(),
        half_twist_disk: [Puncture::B, Puncture::C],
    })
}

/// Outcome of the pairwise-bound checks on the annulus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnulusBounds {
    /// Largest pairwise-≤1 family among arcs with bottom endpoint a.
    pub max_family_at_a: usize,
    /// Largest `2|Δτ|` between compatible arcs at a.
    pub max_delta2_at_a: i64,
    /// Largest `2|Δτ|` between compatible arcs from different families.
    pub max_cross_delta2: i64,
}

pub fn annulus_bounds(w: i64) -> AnnulusBounds {
    let all = OmegaArcClass::window(w);
    let compatible = |x: &OmegaArcClass, y: &OmegaArcClass| x != y && tau_intersect(x, y).is_ok_and(|n| n <= 1);
    let at_a: Vec<OmegaArcClass> = all.iter().filter(|s| s.family.bottom() == Puncture::A).copied().collect();
    let rows: Vec<Bits> = at_a
        .iter()
        .map(|x| {
            let mut b = Bits::new(at_a.len());
            for (j, y) in at_a.iter().enumerate() {
                if compatible(x, y) {
                    b.set(j);
                }
            }
            b
        })
        .collect();
    let max_family_at_a = maximal_cliques_of(&rows, None, None)
        .expect("no budget")
        .iter()
        .map(|c| c.len())
        .max()
        .unwrap_or(0);
    let mut max_delta2_at_a = 0;
    let mut max_cross_delta2 = 0;
    for x in &all {
        for y in &all {
            if !compatible(x, y) {
                continue;
            }
            let d = (x.tau2 - y.tau2).abs();
            if x.family.bottom() == Puncture::A && y.family.bottom() == Puncture::A {
                max_delta2_at_a = max_delta2_at_a.max(d);
            }
            if x.family != y.family {
                max_cross_delta2 = max_cross_delta2.max(d);
            }
        }
    }
    AnnulusBounds {
        max_family_at_a,
        max_delta2_at_a,
        max_cross_delta2,
    }
}

/// Largest pairwise-≤1 family of a–d segments disjoint from `j0` at bound `n`.
pub fn max_ad_family_beside_j0(n: u32) -> usize {
    let ctx = OmegaContext::standard();
    let ads: Vec<ArcClass> = arc_universe(ComplexityBound::new(n).expect("positive"))
        .into_iter()
        .filter(|a| !a.is_loop() && a.endpoints() == [Puncture::A, Puncture::D] && *a != ctx.j0 && intersect(a, &ctx.j0) == 0)
        .collect();
    let rows: Vec<Bits> = ads
        .iter()
        .map(|x| {
            let mut b = Bits::new(ads.len());
            for (j, y) in ads.iter().enumerate() {
                if x != y && intersect(x, y) <= 1 {
                    b.set(j);
                }
            }
            b
        })
        .collect();
    maximal_cliques_of(&rows, None, None)
        .expect("no budget")
        .iter()
        .map(|c| c.len())
        .max()
        .unwrap_or(0)
}
