//! RIM couplings, the s-space domains, the potentials `S` and `R`, and the
//! pointwise algebraic content of the RIM derivative condition.
//!
//! The condition is `∂_μψ = (aJ_μ + bK̃_μγ₅)ψ` with lowered indices, where
//! `K̃^μ = ψ̄γ^μγ₅ψ` is the axial current. With this orientation,
//! `iγ^μ∂_μψ = 2s(A + iBγ₅)ψ` holds identically for `2s = i(a − b)`.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::Serialize;

use crate::bilinear::{compute_dirac, Bilinears};
use crate::clifford::{gammas, lower_index, minkowski_dot, Mat4, C64, I};
use crate::error::{Error, Result};
use crate::spinor::{dirac_dual, Spinor};

/// Reason a spinor cannot serve as a RIM base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BaseViolation {
    ZeroSpinor,
    /// `A = 0`, equivalently `A₁ = −A₂`.
    ZeroScalar,
    /// `B = 0`, equivalently `A₁ = A₂`.
    ZeroPseudoscalar,
    ZeroA1,
    ZeroA2,
}

/// One of the six open s-space domains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SDomain {
    Omega1,
    Omega2,
    Omega3,
    Omega4,
    Omega5,
    Omega6,
    OutsideDomain,
}

/// Index 1..=4 of the open quadrant containing `phi`, after reduction to
/// `[0, 2π)`. Quadrant boundaries return `None`.
fn quadrant(phi: f64) -> Option<u8> {
    let x = phi.rem_euclid(TAU);
    let q = (x / FRAC_PI_2).floor();
    if x == q * FRAC_PI_2 {
        return None;
    }
    Some(q as u8 + 1)
}

impl SDomain {
    /// Domain of the phase pair `(φ₁, φ₂) = (arg a, arg b)`.
    pub fn of_angles(phi1: f64, phi2: f64) -> SDomain {
        match (quadrant(phi1), quadrant(phi2)) {
            (Some(1), Some(1)) => SDomain::Omega1,
            (Some(4), Some(1)) => SDomain::Omega2,
            (Some(4), Some(4)) => SDomain::Omega3,
            (Some(2), Some(2)) => SDomain::Omega4,
            (Some(3), Some(2)) => SDomain::Omega5,
            (Some(3), Some(3)) => SDomain::Omega6,
            _ => SDomain::OutsideDomain,
        }
    }

    pub fn all() -> [SDomain; 6] {
        use SDomain::*;
        [Omega1, Omega2, Omega3, Omega4, Omega5, Omega6]
    }

    /// Open quadrant indices `(W, Z)` defining the domain.
    pub fn quadrants(self) -> Option<(u8, u8)> {
        match self {
            SDomain::Omega1 => Some((1, 1)),
            SDomain::Omega2 => Some((4, 1)),
            SDomain::Omega3 => Some((4, 4)),
            SDomain::Omega4 => Some((2, 2)),
            SDomain::Omega5 => Some((3, 2)),
            SDomain::Omega6 => Some((3, 3)),
            SDomain::OutsideDomain => None,
        }
    }
}

/// Polar data `a = a₀e^{iφ₁}`, `b = b₀e^{iφ₂}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SSpacePoint {
    pub phi1: f64,
    pub phi2: f64,
    pub a0: f64,
    pub b0: f64,
}

impl SSpacePoint {
    pub fn of(a: C64, b: C64) -> Self {
        SSpacePoint { phi1: a.arg().rem_euclid(TAU), phi2: b.arg().rem_euclid(TAU), a0: a.norm(), b0: b.norm() }
    }

    pub fn couplings(&self) -> (C64, C64) {
        (C64::from_polar(self.a0, self.phi1), C64::from_polar(self.b0, self.phi2))
    }

    pub fn domain(&self) -> SDomain {
        SDomain::of_angles(self.phi1, self.phi2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RimParams {
    pub a: C64,
    pub b: C64,
    /// `s = i(a − b)/2`, real once `Re a = Re b`.
    pub s: f64,
    /// `(Im a − Im b)/Im b`.
    pub rho: f64,
    pub domain: SDomain,
}

impl RimParams {
    /// Checks integrability and `Im b ≠ 0`, both relative to `max(|a|, |b|)`.
    pub fn validate(a: C64, b: C64, tol: f64) -> Result<Self> {
        let size = a.norm().max(b.norm());
        if !((a.re - b.re).abs() <= tol * size) {
            return Err(Error::IntegrabilityViolation { re_a: a.re, re_b: b.re });
        }
        if !(b.im.abs() > tol * size) {
            return Err(Error::DegenerateB);
        }
        Ok(RimParams {
            a,
            b,
            s: (b.im - a.im) / 2.0,
            rho: (a.im - b.im) / b.im,
            domain: SSpacePoint::of(a, b).domain(),
        })
    }

    /// `i(a − b)/2` without discarding the imaginary part.
    pub fn s_complex(&self) -> C64 {
        I * (self.a - self.b) * 0.5
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Potentials {
    /// `S = ln J / (2 Re a)`.
    pub s: f64,
    /// `R = ln((A − iB)/J) / (b − b̄)`, principal branch.
    pub r: C64,
    /// `ϑ = e^{2isR}`.
    pub theta: C64,
    /// `J = √(J_μJ^μ)`.
    pub j: f64,
}

/// `√(J_μJ^μ)` for Dirac-dual bilinears, rejecting non-timelike currents.
pub fn current_norm(bil: &Bilinears, tol: f64) -> Result<f64> {
    let j2 = bil.j_sq().re;
    if !(j2 > tol * bil.scale * bil.scale) {
        return Err(Error::NullCurrent);
    }
    Ok(j2.sqrt())
}

pub fn potentials(bil: &Bilinears, p: &RimParams, tol: f64) -> Result<Potentials> {
    if p.a.re == 0.0 {
        return Err(Error::DegenerateRealPart);
    }
    let j = current_norm(bil, tol)?;
    let s = j.ln() / (2.0 * p.a.re);
    let r = ((bil.a - I * bil.b) / j).ln() / (p.b - p.b.conj());
    Ok(Potentials { s, r, theta: (I * 2.0 * p.s * r).exp(), j })
}

/// The coupling operator `aJ_μ𝟙 + bK̃_μγ₅` for each `μ`.
pub fn rim_operators(bil: &Bilinears, p: &RimParams) -> [Mat4; 4] {
    let g = gammas();
    let jl = lower_index(&bil.j);
    let kl = lower_index(&bil.axial_current());
    std::array::from_fn(|mu| Mat4::identity() * (p.a * jl[mu]) + g.gamma5 * (p.b * kl[mu]))
}

/// `D_μψ = (aJ_μ + bK̃_μγ₅)ψ` for `μ = 0..3`.
pub fn rim_derivative(psi: &Spinor, p: &RimParams) -> [Spinor; 4] {
    let ops = rim_operators(&compute_dirac(psi), p);
    ops.map(|op| psi.apply(&op))
}

/// `‖iγ^μD_μψ − 2s(A + iBγ₅)ψ‖` with `s` taken from the parameters.
pub fn heisenberg_residual(psi: &Spinor, p: &RimParams) -> f64 {
    heisenberg_residual_with(psi, p, C64::from(p.s))
}

/// Same as [`heisenberg_residual`] with an explicit self-coupling `s`.
pub fn heisenberg_residual_with(psi: &Spinor, p: &RimParams, s: C64) -> f64 {
    let g = gammas();
    let bil = compute_dirac(psi);
    let d = rim_derivative(psi, p);
    let kinetic = (0..4).fold(nalgebra::Vector4::zeros(), |acc, mu| acc + g.gamma[mu] * d[mu].0 * I);
    let potential = (Mat4::identity() * bil.a + g.gamma5 * (I * bil.b)) * psi.0 * (s * 2.0);
    Spinor(kinetic - potential).norm()
}

/// Largest deviation of the derivatives of `A` and `B` induced by the RIM
/// condition from
///
/// `∂_μA = (a+ā)AJ_μ − i(b−b̄)BK̃_μ` and `∂_μB = (a+ā)BJ_μ + i(b−b̄)AK̃_μ`.
pub fn del_ab_residuals(psi: &Spinor, p: &RimParams) -> (f64, f64) {
    let g = gammas();
    let bil = compute_dirac(psi);
    let bar = dirac_dual(psi);
    let jl = lower_index(&bil.j);
    let kl = lower_index(&bil.axial_current());
    let re2 = p.a + p.a.conj();
    let im2 = p.b - p.b.conj();
    let (mut ra, mut rb) = (0.0f64, 0.0f64);
    for (mu, d) in rim_derivative(psi, p).iter().enumerate() {
        let dbar = dirac_dual(d);
        let da = dbar.contract(psi) + bar.contract(d);
        let db = I * (dbar.sandwich(&g.gamma5, psi) + bar.sandwich(&g.gamma5, d));
        let rhs_a = re2 * bil.a * jl[mu] - I * im2 * bil.b * kl[mu];
        let rhs_b = re2 * bil.b * jl[mu] + I * im2 * bil.a * kl[mu];
        ra = ra.max((da - rhs_a).norm());
        rb = rb.max((db - rhs_b).norm());
    }
    (ra, rb)
}

/// Constraints a RIM base must satisfy, tested relative to `‖ψ‖²`.
pub fn base_violations(bil: &Bilinears, tol: f64) -> Vec<BaseViolation> {
    if !(bil.scale > 0.0) {
        return vec![BaseViolation::ZeroSpinor];
    }
    let thr = tol * bil.scale;
    let checks = [
        (bil.a, BaseViolation::ZeroScalar),
        (bil.b, BaseViolation::ZeroPseudoscalar),
        (bil.a1, BaseViolation::ZeroA1),
        (bil.a2, BaseViolation::ZeroA2),
    ];
    checks.into_iter().filter(|(z, _)| z.norm() <= thr).map(|(_, v)| v).collect()
}

pub fn validate_rim_base(psi: &Spinor, tol: f64) -> std::result::Result<Bilinears, Vec<BaseViolation>> {
    let bil = compute_dirac(psi);
    let out = base_violations(&bil, tol);
    if out.is_empty() {
        Ok(bil)
    } else {
        Err(out)
    }
}

/// Same as [`validate_rim_base`] but as a crate error.
pub fn require_rim_base(psi: &Spinor, tol: f64) -> Result<Bilinears> {
    validate_rim_base(psi, tol).map_err(Error::InvalidBase)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RestrictionOperator {
    /// `(1/2J²)J^μK^α[γ_α, γ_μ]γ₅`.
    pub g: Mat4,
    /// `(1/J²)J^μK^αγ_αγ_μγ₅`.
    pub unsimplified: Mat4,
}

impl RestrictionOperator {
    pub fn form_gap(&self) -> f64 {
        crate::clifford::max_abs(&(self.g - self.unsimplified))
    }
}

/// The operator relating the unrestricted derivative condition to the RIM
/// one, built from the axial current.
pub fn restriction_operator(bil: &Bilinears, tol: f64) -> Result<RestrictionOperator> {
    let g = gammas();
    let j2 = bil.j_sq();
    if !(j2.norm() > tol * bil.scale * bil.scale) {
        return Err(Error::NullCurrent);
    }
    let k = bil.axial_current();
    let mut comm = Mat4::zeros();
    let mut prod = Mat4::zeros();
    for mu in 0..4 {
        for al in 0..4 {
            let c = bil.j[mu] * k[al];
            let (ga, gm) = (g.lower(al), g.lower(mu));
            comm += (ga * gm - gm * ga) * c;
            prod += ga * gm * c;
        }
    }
    Ok(RestrictionOperator { g: comm * g.gamma5 / (j2 * 2.0), unsimplified: prod * g.gamma5 / j2 })
}

/// `J·K̃`, which the simplification of the restriction operator drops.
pub fn current_orthogonality(bil: &Bilinears) -> C64 {
    minkowski_dot(&bil.j, &bil.axial_current())
}

/// The boundary angles of the s-space quadrants.
pub const QUADRANT_BOUNDARIES: [f64; 4] = [0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{max_abs, ONE, ZERO};
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_4;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    prop_compose! {
        fn any_spinor()(v in proptest::array::uniform8(-1.0f64..1.0)) -> Spinor {
            Spinor::from_parts([v[0], v[1], v[2], v[3]], [v[4], v[5], v[6], v[7]])
        }
    }

    prop_compose! {
        fn any_params()(re in -2.0f64..2.0, ia in -2.0f64..2.0, ib in 0.1f64..2.0, flip in any::<bool>()) -> RimParams {
            let ib = if flip { -ib } else { ib };
            RimParams::validate(c(re, ia), c(re, ib), 1e-12).unwrap()
        }
    }

    #[test]
    fn domain_examples() {
        assert_eq!(SDomain::of_angles(FRAC_PI_4, FRAC_PI_4), SDomain::Omega1);
        assert_eq!(SDomain::of_angles(FRAC_PI_4, 7.0 * FRAC_PI_4), SDomain::OutsideDomain);
        assert_eq!(SDomain::of_angles(7.0 * FRAC_PI_4, FRAC_PI_4), SDomain::Omega2);
        assert_eq!(SDomain::of_angles(-FRAC_PI_4, -FRAC_PI_4), SDomain::Omega3);
        assert_eq!(SDomain::of_angles(FRAC_PI_2, FRAC_PI_4), SDomain::OutsideDomain);
        for d in SDomain::all() {
            let (w, z) = d.quadrants().unwrap();
            let mid = |q: u8| (q as f64 - 0.5) * FRAC_PI_2;
            assert_eq!(SDomain::of_angles(mid(w), mid(z)), d);
        }
    }

    #[test]
    fn equal_real_parts_from_the_example() {
        let a = C64::from_polar(1.0, FRAC_PI_4);
        let phi2 = 7.0 * FRAC_PI_4;
        let b = C64::from_polar(a.re / phi2.cos(), phi2);
        let p = RimParams::validate(a, b, 1e-12).unwrap();
        assert_eq!(p.domain, SDomain::OutsideDomain);
        assert!((p.s_complex() - C64::from(p.s)).norm() < 1e-12);
    }

    #[test]
    fn rejects_bad_couplings() {
        assert!(matches!(
            RimParams::validate(c(0.3, 1.0), c(0.4, 1.0), 1e-9),
            Err(Error::IntegrabilityViolation { .. })
        ));
        assert_eq!(RimParams::validate(c(0.3, 1.0), c(0.3, 0.0), 1e-9), Err(Error::DegenerateB));
    }

    #[test]
    fn potentials_examples() {
        let p = RimParams::validate(c(1.0, 0.5), c(1.0, -0.7), 1e-12).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bil = compute_dirac(&Spinor::new([c(h, 0.0), ZERO, c(h, 0.0), ZERO]));
        let pot = potentials(&bil, &p, 1e-9).unwrap();
        assert!((pot.j - 1.0).abs() < 1e-15 && pot.s.abs() < 1e-15);

        let mut bil = bil;
        bil.a = c(0.6, 0.0);
        bil.b = c(0.8, 0.0);
        bil.j = [ONE, ZERO, ZERO, ZERO];
        let pot = potentials(&bil, &p, 1e-9).unwrap();
        assert!(pot.s.abs() < 1e-15);
        let expected = (-0.8f64).atan2(0.6) / (2.0 * p.b.im);
        assert!((pot.r - C64::from(expected)).norm() < 1e-14);
        assert!((pot.theta.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn derivative_of_balanced_spinor() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let psi = Spinor::new([c(h, 0.0), ZERO, c(h, 0.0), ZERO]);
        let p = RimParams::validate(c(0.4, 0.2), c(0.4, 1.1), 1e-12).unwrap();
        let d = rim_derivative(&psi, &p);
        assert!(d[0].max_diff(&psi.scale(p.a)) < 1e-15);
    }

    #[test]
    fn printed_sign_of_the_scalar_derivative_fails() {
        let psi = Spinor::new([c(0.3, 0.2), c(-0.5, 0.1), c(0.4, -0.6), c(0.2, 0.7)]);
        let p = RimParams::validate(c(0.4, 0.2), c(0.4, 1.1), 1e-12).unwrap();
        let bil = compute_dirac(&psi);
        let d = rim_derivative(&psi, &p);
        let bar = dirac_dual(&psi);
        let kl = lower_index(&bil.axial_current());
        let jl = lower_index(&bil.j);
        let worst = (0..4)
            .map(|mu| {
                let da = dirac_dual(&d[mu]).contract(&psi) + bar.contract(&d[mu]);
                let printed = (p.a + p.a.conj()) * bil.a * jl[mu] + I * (p.b - p.b.conj()) * bil.b * kl[mu];
                (da - printed).norm()
            })
            .fold(0.0, f64::max);
        assert!(worst > 1e-3);
    }

    #[test]
    fn base_validation_examples() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let r = validate_rim_base(&Spinor::new([c(h, 0.0), ZERO, c(h, 0.0), ZERO]), 1e-9).unwrap_err();
        assert_eq!(r, vec![BaseViolation::ZeroPseudoscalar]);
        let r = validate_rim_base(&Spinor::new([c(h, 0.0), ZERO, c(0.0, h), ZERO]), 1e-9).unwrap_err();
        assert_eq!(r, vec![BaseViolation::ZeroScalar]);
        let psi = Spinor::new([c(h, 0.0), ZERO, C64::from_polar(h, FRAC_PI_4), ZERO]);
        let bil = validate_rim_base(&psi, 1e-9).unwrap();
        assert!((bil.a.re - FRAC_PI_4.cos()).abs() < 1e-15);
        assert!((bil.b.re.abs() - FRAC_PI_4.sin()).abs() < 1e-15);
        assert_eq!(validate_rim_base(&Spinor::zero(), 1e-9).unwrap_err(), vec![BaseViolation::ZeroSpinor]);
    }

    #[test]
    fn restriction_operator_without_axial_current_vanishes() {
        let mut bil = compute_dirac(&Spinor::new([c(0.3, 0.2), c(-0.5, 0.1), c(0.4, -0.6), c(0.2, 0.7)]));
        bil.k = [ZERO; 4];
        let g = restriction_operator(&bil, 1e-9).unwrap();
        assert_eq!(max_abs(&g.g), 0.0);
    }

    proptest! {
        #[test]
        fn heisenberg_closes(psi in any_spinor(), p in any_params()) {
            let scale = (1.0 + p.a.norm() + p.b.norm()) * psi.norm_sq() * psi.norm();
            prop_assert!(heisenberg_residual(&psi, &p) < 1e-12 * scale);
            let (ra, rb) = del_ab_residuals(&psi, &p);
            prop_assert!(ra < 1e-12 * scale * psi.norm() && rb < 1e-12 * scale * psi.norm());
        }

        #[test]
        fn params_are_consistent(p in any_params()) {
            prop_assert!((p.s_complex() - C64::from(p.s)).norm() < 1e-12);
            prop_assert!((p.rho + 2.0 * p.s / p.b.im).abs() < 1e-12 * (1.0 + p.rho.abs()));
        }

        #[test]
        fn restriction_forms_agree(psi in any_spinor()) {
            let bil = compute_dirac(&psi);
            let g = restriction_operator(&bil, 1e-9).unwrap();
            let j2 = bil.j_sq().norm();
            prop_assert!(g.form_gap() * j2 < 1e-12 * bil.scale * bil.scale);
            prop_assert!(g.g.trace().norm() < 1e-12);
        }

        #[test]
        fn at_most_one_domain(phi1 in 0.0f64..TAU, phi2 in 0.0f64..TAU) {
            let hits = SDomain::all()
                .iter()
                .filter(|d| {
                    let (w, z) = d.quadrants().unwrap();
                    quadrant(phi1) == Some(w) && quadrant(phi2) == Some(z)
                })
                .count();
            prop_assert!(hits <= 1);
        }
    }
}
