//! Straight-line homotopies between coordinate functions on the spinor-plane.
//!
//! A point of the plane written as `(x, y(x))` is identified with the
//! multiplier `w = y/x`.

use serde::Serialize;

use crate::bilinear::Bilinears;
use crate::clifford::{C64, I, ONE};
use crate::error::{Error, Result};
use crate::lounesto::{classify_by_coefficients, Classification, ClassifyOptions, LounestoClass};
use crate::plane::{decompose, BasisTag, MOperator, PlaneBasis, PlaneCoords};
use crate::rim::current_norm;
use crate::spinor::Spinor;

/// `y(x) = w·x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoordFunction {
    pub w: C64,
}

impl CoordFunction {
    pub fn new(w: C64) -> Self {
        CoordFunction { w }
    }

    pub fn identity() -> Self {
        CoordFunction::new(ONE)
    }

    /// The Dirac spinor seen from the base: `y_D(x) = ((A − iB)/J)x`.
    pub fn dirac(bil: &Bilinears, tol: f64) -> Result<Self> {
        let j = current_norm(bil, tol)?;
        Ok(CoordFunction::new((bil.a - I * bil.b) / j))
    }

    /// Multiplier `r₂/r₁` of a coordinate pair.
    pub fn of_coords(c: &PlaneCoords) -> Result<Self> {
        if c.r1 == C64::from(0.0) {
            return Err(Error::ZeroCoefficient("r1"));
        }
        Ok(CoordFunction::new(c.multiplier()))
    }

    pub fn eval(&self, x: C64) -> C64 {
        self.w * x
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PathKind {
    BasisHomotopy,
    SpinorHomotopy,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HomotopyPath {
    pub f: CoordFunction,
    pub g: CoordFunction,
    pub kind: PathKind,
    pub basis: BasisTag,
    /// Parameter in `(0, 1)` at which the interpolated multiplier vanishes.
    pub degenerate_t: Option<f64>,
}

/// `t* = w_f/(w_f − w_g)` when it is real and strictly inside `(0, 1)`.
fn vanishing_parameter(wf: C64, wg: C64) -> Option<f64> {
    let d = wf - wg;
    if d == C64::from(0.0) {
        return None;
    }
    let t = wf / d;
    let real = t.im.abs() <= 1e-12 * t.norm().max(1.0);
    (real && t.re > 0.0 && t.re < 1.0).then_some(t.re)
}

fn path(f: CoordFunction, g: CoordFunction, kind: PathKind, basis: BasisTag) -> HomotopyPath {
    HomotopyPath { f, g, kind, basis, degenerate_t: vanishing_parameter(f.w, g.w) }
}

/// `H(x, t) = (1 − t)f(x) + t·g(x)`.
pub fn basis_homotopy(f: CoordFunction, g: CoordFunction) -> HomotopyPath {
    path(f, g, PathKind::BasisHomotopy, BasisTag::B)
}

/// `G(x, t) = (x, (1 − t)y_ψ + t·y_φ)` between two points given in one basis.
pub fn spinor_homotopy(psi: &PlaneCoords, phi: &PlaneCoords) -> Result<HomotopyPath> {
    if psi.basis != phi.basis {
        return Err(Error::BasisMismatch);
    }
    let f = CoordFunction::of_coords(psi)?;
    let g = CoordFunction::of_coords(phi)?;
    Ok(path(f, g, PathKind::SpinorHomotopy, psi.basis))
}

impl HomotopyPath {
    /// `(1 − t)w_f + t·w_g`.
    pub fn multiplier(&self, t: f64) -> C64 {
        self.f.w * (1.0 - t) + self.g.w * t
    }

    /// `H(x, t)`, evaluated literally as `(1 − t)f(x) + t·g(x)`.
    pub fn value(&self, x: C64, t: f64) -> C64 {
        self.f.eval(x) * (1.0 - t) + self.g.eval(x) * t
    }

    /// The point `(x, H(x, t))`.
    pub fn eval(&self, x: C64, t: f64) -> PlaneCoords {
        PlaneCoords::new(x, self.value(x, t), self.basis)
    }

    /// The same path traversed backwards.
    pub fn reversed(&self) -> HomotopyPath {
        path(self.g, self.f, self.kind, self.basis)
    }

    /// Whether `w(t)` vanishes relative to the endpoint multipliers.
    pub fn is_degenerate_at(&self, t: f64, tol: f64) -> bool {
        let size = self.f.w.norm().max(self.g.w.norm());
        !(self.multiplier(t).norm() > tol * size)
    }
}

/// One intermediate basis `𝒜_t = {block₁(base), w(t)·block₂(base)}` together
/// with the family spinor `x·block₁ + H(x, t)·block₂` it represents as `(x, x)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasisSample {
    pub t: f64,
    pub basis: PlaneBasis,
    pub spinor: Spinor,
    pub coords: PlaneCoords,
}

impl BasisSample {
    /// `|r₂/r₁ − 1|`.
    pub fn ratio_error(&self) -> f64 {
        (self.coords.multiplier() - ONE).norm()
    }

    /// The block operator taking the base to `𝒜_t`.
    pub fn induced_operator(&self) -> MOperator {
        self.basis.op
    }
}

pub fn sample_basis(path: &HomotopyPath, base: &Spinor, x: C64, t: f64, tol: f64) -> Result<BasisSample> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::DegenerateParameter(t));
    }
    if path.is_degenerate_at(t, tol) {
        return Err(Error::DegenerateParameter(t));
    }
    let op = MOperator::new(ONE, path.multiplier(t));
    let basis = PlaneBasis::with_operator(*base, op, BasisTag::Custom(0));
    let spinor = MOperator::new(x, path.value(x, t)).apply(base);
    let coords = decompose(&spinor, &basis)?;
    Ok(BasisSample { t, basis, spinor, coords })
}

/// One sample of a classified sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub t: f64,
    pub coords: PlaneCoords,
    pub classification: Option<Classification>,
    pub degenerate: bool,
}

/// Samples `t = k/steps` for `k = 0..=steps`.
pub fn sweep_grid(steps: usize) -> Vec<f64> {
    let n = steps.max(1);
    (0..=n).map(|k| k as f64 / n as f64).collect()
}

/// Classify every point of a path through the coefficient rules, with
/// `(A, B)` the scalars of the base the coordinates refer to.
pub fn sweep(path: &HomotopyPath, x: C64, ab: (f64, f64), grid: &[f64], opt: &ClassifyOptions) -> Vec<SweepPoint> {
    grid.iter()
        .map(|&t| {
            let coords = path.eval(x, t);
            SweepPoint {
                t,
                coords,
                classification: classify_by_coefficients(coords.r1, coords.r2, ab.0, ab.1, opt).ok(),
                degenerate: path.is_degenerate_at(t, opt.tol),
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Transition {
    /// Last parameter with the starting class.
    pub before: f64,
    /// First parameter with the new class.
    pub after: f64,
    pub from: LounestoClass,
    pub to: LounestoClass,
}

/// Bisect `[t0, t1]` for the point where the coefficient-rule class changes.
pub fn find_transition(
    path: &HomotopyPath,
    x: C64,
    ab: (f64, f64),
    (t0, t1): (f64, f64),
    opt: &ClassifyOptions,
    iterations: usize,
) -> Result<Option<Transition>> {
    let class_at = |t: f64| -> Result<LounestoClass> {
        let c = path.eval(x, t);
        Ok(classify_by_coefficients(c.r1, c.r2, ab.0, ab.1, opt)?.class)
    };
    let from = class_at(t0)?;
    let to = class_at(t1)?;
    if from == to {
        return Ok(None);
    }
    let (mut lo, mut hi) = (t0, t1);
    for _ in 0..iterations {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if class_at(mid)? == from {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(Transition { before: lo, after: hi, from, to: class_at(hi)? }))
}
