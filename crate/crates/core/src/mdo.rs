//! Elko spinors, the Ξ involution and the mass-dimension-one identities.
//!
//! Ξ is written in the companion representation of the spatial gammas:
//! it commutes with `p̸_Ξ = Eγ⁰ + p n̂·γ⃗ = γ⁰p̸γ⁰` and not with the
//! `p̸ = Eγ⁰ − p n̂·γ⃗` of [`crate::clifford`]. [`momentum_slash`] returns
//! `p̸_Ξ`, and the Dirac-like equation is checked with it.

use nalgebra::{Matrix2, Vector2};
use serde::{Deserialize, Serialize};

use crate::bilinear::{compute, Bilinears};
use crate::clifford::{gammas, pauli, Block, FourVector, Mat2, Mat4, C64, I, ONE, ZERO};
use crate::error::{Error, Result};
use crate::plane::MOperator;
use crate::rim::RimParams;
use crate::spinor::{chiral_part, DualKind, Sign, Spinor};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Momentum {
    pub m: f64,
    pub p: f64,
    pub theta: f64,
    pub phi: f64,
}

impl Momentum {
    pub fn new(m: f64, p: f64, theta: f64, phi: f64) -> Result<Self> {
        let mom = Momentum { m, p, theta, phi };
        mom.validate()?;
        Ok(mom)
    }

    pub fn validate(&self) -> Result<()> {
        if ![self.m, self.p, self.theta, self.phi].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidMomentum("non-finite field".into()));
        }
        if !(self.m > 0.0) {
            return Err(Error::InvalidMomentum(format!("mass must be positive, got {}", self.m)));
        }
        if self.p < 0.0 {
            return Err(Error::InvalidMomentum(format!("|p| must be non-negative, got {}", self.p)));
        }
        Ok(())
    }

    /// `E = √(p² + m²)`.
    pub fn energy(&self) -> f64 {
        self.p.hypot(self.m)
    }

    pub fn direction(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// `(E, p n̂)` with upper index.
    pub fn four_vector(&self) -> FourVector {
        let n = self.direction();
        [C64::from(self.energy()), C64::from(self.p * n[0]), C64::from(self.p * n[1]), C64::from(self.p * n[2])]
    }

    /// `σ·n̂`.
    pub fn helicity_operator(&self) -> Mat2 {
        let n = self.direction();
        let s = pauli();
        s[0] * C64::from(n[0]) + s[1] * C64::from(n[1]) + s[2] * C64::from(n[2])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Helicity {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Helicity {
    pub fn value(self) -> f64 {
        match self {
            Helicity::Plus => 1.0,
            Helicity::Minus => -1.0,
        }
    }
}

/// Self-conjugate (S) or anti-self-conjugate (A) under charge conjugation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Conjugation {
    S,
    A,
}

impl Conjugation {
    /// Sign of the `±i` in the upper block, and the charge-conjugation
    /// eigenvalue.
    pub fn sign(self) -> Sign {
        match self {
            Conjugation::S => Sign::Plus,
            Conjugation::A => Sign::Minus,
        }
    }

    /// `η` in `(p̸_Ξ Ξ − ηm)λ = 0`.
    pub fn diraclike_sign(self) -> f64 {
        self.sign().value()
    }
}

/// The Wigner time-reversal matrix.
pub fn wigner_theta() -> Matrix2<f64> {
    Matrix2::new(0.0, -1.0, 1.0, 0.0)
}

fn theta_c() -> Mat2 {
    wigner_theta().map(C64::from)
}

/// Unit eigenvector of `σ·n̂` with eigenvalue `±1`.
pub fn helicity_spinor(theta: f64, phi: f64, h: Helicity) -> Vector2<C64> {
    let (s, c) = (theta / 2.0).sin_cos();
    let down = C64::from_polar(1.0, -phi / 2.0);
    let up = C64::from_polar(1.0, phi / 2.0);
    match h {
        Helicity::Plus => Vector2::new(down * c, up * s),
        Helicity::Minus => Vector2::new(-down * s, up * c),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ElkoSpinor {
    pub spinor: Spinor,
    pub conj: Conjugation,
    pub helicity: Helicity,
    pub sign: Sign,
}

/// `φ_L(p) = √((E+m)/2m)(𝟙 − pσ·n̂/(E+m))·√m·φ^h`.
pub fn boosted_left(mom: &Momentum, h: Helicity) -> Vector2<C64> {
    let e = mom.energy();
    let boost = (Mat2::identity() - mom.helicity_operator() * C64::from(mom.p / (e + mom.m)))
        * C64::from(((e + mom.m) / (2.0 * mom.m)).sqrt());
    boost * helicity_spinor(mom.theta, mom.phi, h) * C64::from(mom.m.sqrt())
}

/// `(±iΘφ_L*, φ_L)` with an explicit sign.
pub fn elko_signed(mom: &Momentum, h: Helicity, sign: Sign) -> Spinor {
    let left = boosted_left(mom, h);
    let top = theta_c() * left.map(|z| z.conj()) * (I * sign.value());
    Spinor::from_blocks(top, left)
}

/// The Elko spinor whose upper-block sign matches its conjugation label.
pub fn elko(mom: &Momentum, h: Helicity, conj: Conjugation) -> ElkoSpinor {
    ElkoSpinor { spinor: elko_signed(mom, h, conj.sign()), conj, helicity: h, sign: conj.sign() }
}

/// `|top − (±iΘ·bottom*)|`, zero by construction.
pub fn structure_defect(l: &ElkoSpinor) -> f64 {
    let top = l.spinor.block(Block::First);
    let bottom = l.spinor.block(Block::Second);
    (top - theta_c() * bottom.map(|z| z.conj()) * (I * l.sign.value())).norm()
}

/// `𝒞ψ = γ²ψ*`.
pub fn charge_conjugate(psi: &Spinor) -> Spinor {
    Spinor(gammas().gamma[2] * psi.0.map(|z| z.conj()))
}

/// The printed Ξ operator.
pub fn xi(mom: &Momentum) -> Mat4 {
    let e = mom.energy();
    let (m, p) = (mom.m, mom.p);
    let (st, ct) = mom.theta.sin_cos();
    let em = C64::from_polar(1.0, -mom.phi);
    let ep = C64::from_polar(1.0, mom.phi);
    let d = I * (p * st / m);
    let mut x = Mat4::zeros();
    x[(0, 0)] = d;
    x[(0, 1)] = -I * ((e + p * ct) / m) * em;
    x[(1, 0)] = I * ((e - p * ct) / m) * ep;
    x[(1, 1)] = -d;
    x[(2, 2)] = -d;
    x[(2, 3)] = -I * ((e - p * ct) / m) * em;
    x[(3, 2)] = I * ((e + p * ct) / m) * ep;
    x[(3, 3)] = d;
    x
}

/// `p̸_Ξ = Eγ⁰ + p n̂·γ⃗`, the slash Ξ commutes with.
pub fn momentum_slash(mom: &Momentum) -> Mat4 {
    let g = gammas();
    let v = mom.four_vector();
    g.gamma[0] * v[0] + g.gamma[1] * v[1] + g.gamma[2] * v[2] + g.gamma[3] * v[3]
}

/// `p̸ = p^μγ_μ` in the representation of [`crate::clifford`].
pub fn standard_slash(mom: &Momentum) -> Mat4 {
    gammas().slash(&mom.four_vector())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiracLike {
    /// `min_η ‖(p̸_Ξ Ξ − ηm)λ‖`.
    pub residual: f64,
    /// Realised `η`.
    pub eta: f64,
    /// Residual with the opposite `η`.
    pub other: f64,
}

pub fn diraclike_residual(l: &ElkoSpinor, mom: &Momentum) -> DiracLike {
    let op = momentum_slash(mom) * xi(mom);
    let r = |eta: f64| Spinor(op * l.spinor.0 - l.spinor.0 * C64::from(eta * mom.m)).norm();
    let (plus, minus) = (r(1.0), r(-1.0));
    if plus <= minus {
        DiracLike { residual: plus, eta: 1.0, other: minus }
    } else {
        DiracLike { residual: minus, eta: -1.0, other: plus }
    }
}

/// Bilinears of `λ` under the dual `(Ξλ)†γ⁰`.
pub fn mdo_bilinears(l: &Spinor, mom: &Momentum) -> Result<Bilinears> {
    compute(l, &DualKind::Mdo { xi: xi(mom) })
}

/// Residuals of `J̸λ_L = (A−iB)λ_R`, `J̸λ_R = (A+iB)λ_L`,
/// `K̸λ_L = −(A−iB)λ_R`, `K̸λ_R = (A+iB)λ_L` with `λ_L` taken from `left`.
pub fn chiral_relation_residuals_with(l: &Spinor, mom: &Momentum, left: Block) -> Result<[f64; 4]> {
    let b = mdo_bilinears(l, mom)?;
    let g = gammas();
    let right = match left {
        Block::First => Block::Second,
        Block::Second => Block::First,
    };
    let (ll, lr) = (chiral_part(l, left).0, chiral_part(l, right).0);
    let (jj, kk) = (g.slash(&b.j), g.slash(&b.k));
    let minus = b.a - I * b.b;
    let plus = b.a + I * b.b;
    Ok([
        (jj * ll - lr * minus).norm(),
        (jj * lr - ll * plus).norm(),
        (kk * ll + lr * minus).norm(),
        (kk * lr - ll * plus).norm(),
    ])
}

/// [`chiral_relation_residuals_with`] for `λ_L` = block 1.
pub fn chiral_relation_residuals(l: &Spinor, mom: &Momentum) -> Result<[f64; 4]> {
    chiral_relation_residuals_with(l, mom, Block::First)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FgValues {
    pub f: C64,
    pub g: C64,
    /// `ϑ⁻¹exp[±p sinθ/(2(a+ā)(A−iB))]`.
    pub exp_f_simplified: C64,
    /// `ϑ·exp[±p sinθ/(2(a+ā)(A+iB))]`.
    pub exp_g_simplified: C64,
}

impl FgValues {
    /// Largest disagreement between `e^F̄`, `e^Ḡ` and their simplified forms.
    pub fn simplification_gap(&self) -> f64 {
        (self.f.exp() - self.exp_f_simplified).norm().max((self.g.exp() - self.exp_g_simplified).norm())
    }
}

/// `F̄± = −2isR ± p sinθ(A+iB)e^{−2(a+ā)S}/(2(a+ā))` and
/// `Ḡ± = 2isR ± p sinθ(A−iB)e^{−2(a+ā)S}/(2(a+ā))`.
pub fn fg_functions(s: f64, r: C64, p: &RimParams, bil: &Bilinears, mom: &Momentum, sign: Sign) -> FgValues {
    let re2 = p.a + p.a.conj();
    let kick = sign.value() * mom.p * mom.theta.sin();
    let damp = (-re2 * 2.0 * s).exp();
    let plus = bil.a + I * bil.b;
    let minus = bil.a - I * bil.b;
    let phase = I * 2.0 * p.s * r;
    let vartheta = phase.exp();
    FgValues {
        f: -phase + plus * damp * kick / (re2 * 2.0),
        g: phase + minus * damp * kick / (re2 * 2.0),
        exp_f_simplified: (kick / (re2 * 2.0 * minus)).exp() / vartheta,
        exp_g_simplified: vartheta * (kick / (re2 * 2.0 * plus)).exp(),
    }
}

/// `exp[−p sinθ·A/((a+ā)J²)]`, the phase-free product `e^F̄₋·e^Ḡ₋`.
pub fn fg_minus_product(p: &RimParams, bil: &Bilinears, mom: &Momentum) -> C64 {
    let re2 = p.a + p.a.conj();
    (-(bil.a * mom.p * mom.theta.sin()) / (re2 * bil.j_sq())).exp()
}

/// The block operator relating `λ^S_h` and `λ^A_h`: `λ^A = γ₅λ^S`.
pub fn sa_relation() -> MOperator {
    MOperator::new(-ONE, ONE)
}

/// `|⟨u, v⟩| / (‖u‖‖v‖)`, equal to one iff `u` and `v` differ by a phase.
pub fn phase_alignment(u: &Spinor, v: &Spinor) -> f64 {
    let inner: C64 = u.0.iter().zip(v.0.iter()).map(|(a, b)| a.conj() * b).fold(ZERO, |acc, z| acc + z);
    inner.norm() / (u.norm() * v.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bilinear::{compute_dirac, fpk_residuals};
    use crate::clifford::max_abs;
    use crate::spinor::{dirac_dual, mdo_dual};
    use proptest::prelude::*;
    use std::f64::consts::{PI, TAU};

    prop_compose! {
        fn any_momentum()(m in 0.1f64..3.0, p in 0.0f64..5.0, theta in 0.0..PI, phi in 0.0..TAU) -> Momentum {
            Momentum::new(m, p, theta, phi).unwrap()
        }
    }

    fn helicities() -> [Helicity; 2] {
        [Helicity::Plus, Helicity::Minus]
    }

    fn conjugations() -> [Conjugation; 2] {
        [Conjugation::S, Conjugation::A]
    }

    #[test]
    fn wigner_matrix() {
        let t = wigner_theta();
        assert_eq!(t * t, -Matrix2::identity());
        assert_eq!(t.determinant(), 1.0);
        let tc = theta_c();
        let inv = tc.try_inverse().unwrap();
        for s in pauli() {
            let lhs = tc * s * inv;
            let rhs = -s.map(|z| z.conj());
            assert!((lhs - rhs).norm() < 1e-15);
        }
    }

    #[test]
    fn helicity_spinor_along_z() {
        let v = helicity_spinor(0.0, 0.0, Helicity::Plus);
        assert_eq!(v, Vector2::new(ONE, ZERO));
    }

    #[test]
    fn rest_frame_reduces_to_scaled_helicity_spinor() {
        let mom = Momentum::new(2.0, 0.0, 0.7, 1.1).unwrap();
        let left = boosted_left(&mom, Helicity::Minus);
        let expect = helicity_spinor(0.7, 1.1, Helicity::Minus) * C64::from(2.0f64.sqrt());
        assert!((left - expect).norm() < 1e-15);
    }

    #[test]
    fn invalid_momentum() {
        assert!(Momentum::new(0.0, 1.0, 0.0, 0.0).is_err());
        assert!(Momentum::new(1.0, -1.0, 0.0, 0.0).is_err());
        assert!(Momentum::new(1.0, f64::NAN, 0.0, 0.0).is_err());
    }

    #[test]
    fn fixed_point_fixture() {
        let mom = Momentum::new(1.0, 0.3, 1.0, 0.4).unwrap();
        for h in helicities() {
            for c in conjugations() {
                let l = elko(&mom, h, c);
                let dl = diraclike_residual(&l, &mom);
                assert!(dl.residual < 1e-12, "{h:?} {c:?}");
                assert_eq!(dl.eta, c.diraclike_sign());
                assert!(dl.other > mom.m);
                let r = chiral_relation_residuals(&l.spinor, &mom).unwrap();
                assert!(r.iter().all(|&x| x < 1e-12), "{r:?}");
                let swapped = chiral_relation_residuals_with(&l.spinor, &mom, Block::Second).unwrap();
                assert!(swapped.iter().fold(0.0f64, |a, &b| a.max(b)) > 1e-2);
                let b = mdo_bilinears(&l.spinor, &mom).unwrap();
                assert!(fpk_residuals(&b).norm < 1e-12);
            }
        }
    }

    #[test]
    fn mdo_dual_differs_from_dirac_dual() {
        let mom = Momentum::new(1.0, 0.5, std::f64::consts::FRAC_PI_3, std::f64::consts::PI / 5.0).unwrap();
        let l = elko(&mom, Helicity::Plus, Conjugation::S).spinor;
        let x = xi(&mom);
        let mdo = mdo_dual(&l, &x).unwrap().contract(&l);
        let dirac = dirac_dual(&l).contract(&l);
        assert!((mdo - dirac).norm() > 1e-3);
        let twice = mdo_dual(&l, &x).unwrap().contract(&l.apply(&(x * x)));
        assert!((twice - mdo).norm() < 1e-12);
    }

    #[test]
    fn xi_does_not_commute_with_the_standard_slash() {
        let mom = Momentum::new(1.0, 0.8, 1.0, 0.4).unwrap();
        let (x, s) = (xi(&mom), standard_slash(&mom));
        assert!(max_abs(&(x * s - s * x)) > 1e-2);
    }

    #[test]
    fn helicity_partners_are_not_phase_related() {
        let mom = Momentum::new(1.0, 0.6, 0.9, 0.2).unwrap();
        let s_plus = elko(&mom, Helicity::Plus, Conjugation::S).spinor;
        let s_minus = elko(&mom, Helicity::Minus, Conjugation::S).spinor;
        assert!(phase_alignment(&s_plus, &s_minus) < 0.5);
    }

    #[test]
    fn flat_angle_fg() {
        let p = RimParams::validate(C64::new(0.5, 0.2), C64::new(0.5, -0.9), 1e-12).unwrap();
        let mom = Momentum::new(1.0, 0.7, 0.0, 0.3).unwrap();
        let bil = compute_dirac(&Spinor::new([
            C64::new(0.8, 0.1),
            C64::new(0.1, -0.3),
            C64::new(0.4, 0.6),
            C64::new(-0.2, 0.4),
        ]));
        let r = C64::new(0.37, 0.0);
        let v = fg_functions(0.2, r, &p, &bil, &mom, Sign::Minus);
        let phase = I * 2.0 * p.s * r;
        assert!((v.f + phase).norm() < 1e-15);
        assert!((v.g - phase).norm() < 1e-15);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn xi_is_a_traceless_involution(mom in any_momentum()) {
            let x = xi(&mom);
            let size = 1.0 + (mom.energy() + mom.p) / mom.m;
            prop_assert!(max_abs(&(x * x - Mat4::identity())) < 1e-12 * size * size);
            prop_assert!(x.trace().norm() < 1e-12 * size);
            let s = momentum_slash(&mom);
            prop_assert!(max_abs(&(x * s - s * x)) < 1e-12 * size * size * mom.m);
        }

        #[test]
        fn helicity_eigenvectors(theta in 0.0..PI, phi in 0.0..TAU, p in 0.0f64..2.0) {
            let mom = Momentum::new(1.0, p, theta, phi).unwrap();
            let op = mom.helicity_operator();
            for h in helicities() {
                let v = helicity_spinor(theta, phi, h);
                prop_assert!((v.norm() - 1.0).abs() < 1e-14);
                prop_assert!((op * v - v * C64::from(h.value())).norm() < 1e-14);
                let flipped = theta_c() * v.map(|z| z.conj());
                prop_assert!((op * flipped + flipped * C64::from(h.value())).norm() < 1e-14);
            }
        }

        #[test]
        fn elko_structure(mom in any_momentum()) {
            for h in helicities() {
                let s = elko(&mom, h, Conjugation::S);
                let a = elko(&mom, h, Conjugation::A);
                prop_assert_eq!(structure_defect(&s), 0.0);
                prop_assert_eq!(structure_defect(&a), 0.0);
                let scale = s.spinor.norm();
                prop_assert!(charge_conjugate(&s.spinor).max_diff(&s.spinor) < 1e-13 * scale);
                prop_assert!(charge_conjugate(&a.spinor).max_diff(&a.spinor.scale(-ONE)) < 1e-13 * scale);
                prop_assert!(sa_relation().apply(&s.spinor).max_diff(&a.spinor) == 0.0);
                let d = compute_dirac(&s.spinor);
                prop_assert!(d.a.norm() < 1e-13 * d.scale && d.b.norm() < 1e-13 * d.scale);
            }
        }

        #[test]
        fn diraclike_and_chiral_relations(mom in any_momentum()) {
            for h in helicities() {
                for c in conjugations() {
                    let l = elko(&mom, h, c);
                    let scale = l.spinor.norm() * (1.0 + (mom.energy() + mom.p) / mom.m) * mom.m;
                    let dl = diraclike_residual(&l, &mom);
                    prop_assert!(dl.residual < 1e-12 * scale);
                    prop_assert_eq!(dl.eta, c.diraclike_sign());
                    let b = mdo_bilinears(&l.spinor, &mom).unwrap();
                    let size = b.scale * (1.0 + (mom.energy() + mom.p) / mom.m);
                    let r = chiral_relation_residuals(&l.spinor, &mom).unwrap();
                    prop_assert!(r.iter().all(|&x| x < 1e-12 * size * l.spinor.norm()));
                }
            }
        }
    }
}
