//! Lounesto classification, both from bilinears and from decomposition
//! coefficients.

use serde::Serialize;

use crate::bilinear::Bilinears;
use crate::clifford::C64;
use crate::error::{Error, Result};
use crate::rim::BaseViolation;

/// A nonzero value within this factor of the zero threshold is reported as
/// near-degenerate.
pub const NEAR_DEGENERATE_FACTOR: f64 = 1e3;

/// Spinors with `‖ψ‖²` below this are not classified.
pub const SCALE_FLOOR: f64 = 1e-150;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LounestoClass {
    Type1,
    Type2,
    Type3,
    Type4,
    Type5,
    Type6,
}

impl LounestoClass {
    pub fn number(self) -> u8 {
        match self {
            LounestoClass::Type1 => 1,
            LounestoClass::Type2 => 2,
            LounestoClass::Type3 => 3,
            LounestoClass::Type4 => 4,
            LounestoClass::Type5 => 5,
            LounestoClass::Type6 => 6,
        }
    }

    pub fn is_regular(self) -> bool {
        self.number() <= 3
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassifyOptions {
    pub tol: f64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { tol: 1e-9 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Classification {
    pub class: LounestoClass,
    /// Some quantity was declared nonzero while lying within
    /// [`NEAR_DEGENERATE_FACTOR`] of the threshold.
    pub near_degenerate: bool,
}

struct ZeroTest {
    threshold: f64,
    near: bool,
}

impl ZeroTest {
    fn new(tol: f64, scale: f64) -> Self {
        ZeroTest { threshold: tol * scale, near: false }
    }

    fn is_zero(&mut self, magnitude: f64) -> bool {
        if magnitude <= self.threshold {
            true
        } else {
            if magnitude <= self.threshold * NEAR_DEGENERATE_FACTOR {
                self.near = true;
            }
            false
        }
    }
}

fn max_norm<'a>(it: impl IntoIterator<Item = &'a C64>) -> f64 {
    it.into_iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Classify from Dirac-dual bilinears. Every zero test is relative to `‖ψ‖²`.
pub fn classify(b: &Bilinears, opt: &ClassifyOptions) -> Result<Classification> {
    if !b.dirac_dual {
        return Err(Error::NonDiracDual);
    }
    if !(b.scale > SCALE_FLOOR) {
        return Err(Error::AmbiguousScale);
    }
    let mut z = ZeroTest::new(opt.tol, b.scale);
    if z.is_zero(max_norm(&b.j)) {
        return Err(Error::NullCurrent);
    }
    let a0 = z.is_zero(b.a.norm());
    let b0 = z.is_zero(b.b.norm());
    let k0 = z.is_zero(max_norm(&b.k));
    let s0 = z.is_zero(max_norm(b.s.iter().flatten()));
    use LounestoClass::*;
    let class = match (a0, b0, k0, s0) {
        (false, false, _, _) => Type1,
        (false, true, _, _) => Type2,
        (true, false, _, _) => Type3,
        (true, true, false, false) => Type4,
        (true, true, true, false) => Type5,
        (true, true, false, true) => Type6,
        // K = S = 0 together with A = B = 0 forces J = 0 through the FPK
        // identities, so this arm is only reachable through rounding.
        (true, true, true, true) => return Err(Error::NullCurrent),
    };
    Ok(Classification { class, near_degenerate: z.near })
}

/// Validate that `(A, B)` can belong to a RIM base: both nonzero relative to
/// `J = √(A² + B²)`. `A₁ = (A+iB)/2` and `A₂ = (A−iB)/2` then cannot vanish.
pub fn check_base_scalars(a: f64, b: f64, tol: f64) -> Result<()> {
    let j = a.hypot(b);
    let mut violations = Vec::new();
    if !(a.abs() > tol * j) {
        violations.push(BaseViolation::ZeroScalar);
    }
    if !(b.abs() > tol * j) {
        violations.push(BaseViolation::ZeroPseudoscalar);
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidBase(violations))
    }
}

/// Classify `r₁Ψ_L + r₂Ψ_R` from the coefficients and the base scalars alone.
///
/// Writing `w± = r₁r₂* ± r₁*r₂`, the decomposed spinor has
/// `B_ψ = −(i/2)(A w₋ + iB w₊)` and `A_ψ = ½(A w₊ + iB w₋)`. The two
/// conditions are tested in that multiplied-out form, relative to
/// `2|r₁r₂|·max(|A|,|B|)`, so no ratio with a vanishing denominator is formed.
pub fn classify_by_coefficients(r1: C64, r2: C64, a: f64, b: f64, opt: &ClassifyOptions) -> Result<Classification> {
    let rmax = r1.norm().max(r2.norm());
    if !(rmax > 0.0) {
        return Err(Error::ZeroDecomposition);
    }
    check_base_scalars(a, b, opt.tol)?;

    let mut z = ZeroTest::new(opt.tol, rmax);
    let r1_zero = z.is_zero(r1.norm());
    let r2_zero = z.is_zero(r2.norm());
    if r1_zero || r2_zero {
        return Ok(Classification { class: LounestoClass::Type6, near_degenerate: z.near });
    }

    let cross = r1.conj() * r2;
    let rr = r1.norm() * r2.norm();
    // (r₁r₂*)² − (r₁*r₂)² = −4i·Re(r₁*r₂)·Im(r₁*r₂)
    let mut guard = ZeroTest::new(opt.tol, rr * rr);
    let guarded = !guard.is_zero((cross.re * cross.im).abs());

    let u = r1 * r2.conj();
    let w_plus = u + cross;
    let w_minus = u - cross;
    let (ac, bc) = (C64::from(a), C64::from(b));
    let scale = 2.0 * rr * a.abs().max(b.abs());
    let mut cond = ZeroTest::new(opt.tol, scale);
    let b_vanishes = cond.is_zero((ac * w_minus + C64::i() * bc * w_plus).norm());
    let a_vanishes = cond.is_zero((ac * w_plus + C64::i() * bc * w_minus).norm());

    let class = match (guarded, b_vanishes, a_vanishes) {
        (true, true, false) => LounestoClass::Type2,
        (true, false, true) => LounestoClass::Type3,
        _ => LounestoClass::Type1,
    };
    Ok(Classification { class, near_degenerate: z.near || guard.near || cond.near })
}

/// Coefficients `(1, e^{iφ})` with `φ = atan2(B, A)`, which satisfy the
/// `B_ψ = 0` condition for a base with scalars `(A, B)`.
pub fn type2_coefficients(a: f64, b: f64) -> (C64, C64) {
    (C64::from(1.0), C64::from_polar(1.0, b.atan2(a)))
}

/// Coefficients `(1, e^{iφ})` with `φ = atan2(−A, B)`, which satisfy the
/// `A_ψ = 0` condition for a base with scalars `(A, B)`.
pub fn type3_coefficients(a: f64, b: f64) -> (C64, C64) {
    (C64::from(1.0), C64::from_polar(1.0, (-a).atan2(b)))
}
