//! Spinor-plane coordinates and the block-scalar operators acting on them.
//!
//! An element of 𝔐 is `c₁P₁ + c₂P₂`: it scales block 1 (the top pair,
//! the `r₁` slot) by `c₁` and block 2 by `c₂`.

use nalgebra::Vector2;
use serde::Serialize;

use crate::bilinear::Bilinears;
use crate::clifford::{gammas, Block, Mat4, C64, I, ONE};
use crate::error::{Error, Result};
use crate::rim::{base_violations, current_norm, RimParams};
use crate::spinor::{Sign, Spinor};

/// Relative block residual tolerated by [`decompose`].
pub const DECOMPOSE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MOperator {
    pub c1: C64,
    pub c2: C64,
}

impl MOperator {
    pub fn new(c1: C64, c2: C64) -> Self {
        MOperator { c1, c2 }
    }

    pub fn identity() -> Self {
        MOperator::new(ONE, ONE)
    }

    pub fn apply(&self, psi: &Spinor) -> Spinor {
        let [p11, p12, p21, p22] = psi.components();
        Spinor::new([self.c1 * p11, self.c1 * p12, self.c2 * p21, self.c2 * p22])
    }

    pub fn is_invertible(&self) -> bool {
        self.c1 != C64::from(0.0) && self.c2 != C64::from(0.0)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_invertible() {
            return Err(Error::NonInvertible);
        }
        Ok(MOperator::new(self.c1.inv(), self.c2.inv()))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MOperator) -> Self {
        MOperator::new(self.c1 * other.c1, self.c2 * other.c2)
    }

    /// `c₁P₁ + c₂P₂` as a dense matrix.
    pub fn matrix(&self) -> Mat4 {
        let g = gammas();
        g.projector(Block::First) * self.c1 + g.projector(Block::Second) * self.c2
    }

    pub fn max_diff(&self, other: &MOperator) -> f64 {
        (self.c1 - other.c1).norm().max((self.c2 - other.c2).norm())
    }
}

/// Inputs of the coefficient set that are not carried by the base.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MassInputs {
    /// Dirac mass `M`.
    pub dirac_mass: f64,
    /// MDO mass `m`.
    pub mdo_mass: f64,
    pub theta: f64,
    pub sign: Sign,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoefficientSet {
    pub alpha: C64,
    pub beta: C64,
    pub delta: C64,
    pub epsilon: C64,
    pub omega: C64,
    pub zeta: C64,
    pub inputs: MassInputs,
}

impl CoefficientSet {
    pub fn unit(inputs: MassInputs) -> Self {
        CoefficientSet { alpha: ONE, beta: ONE, delta: ONE, epsilon: ONE, omega: ONE, zeta: ONE, inputs }
    }

    fn named(&self) -> [(&'static str, C64); 6] {
        [
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("delta", self.delta),
            ("epsilon", self.epsilon),
            ("omega", self.omega),
            ("zeta", self.zeta),
        ]
    }

    /// Maps the base to the Dirac spinor.
    pub fn l_operator(&self) -> MOperator {
        let ab = self.alpha * self.beta;
        MOperator::new(ab * self.delta, ab / self.delta)
    }

    /// Maps the base to the MDO spinor.
    pub fn q_operator(&self) -> MOperator {
        MOperator::new(self.epsilon * self.omega, self.zeta / self.epsilon)
    }
}

/// The coefficient set built on a RIM base with bilinears `bil`.
pub fn coefficient_set(p: &RimParams, bil: &Bilinears, inputs: MassInputs, tol: f64) -> Result<CoefficientSet> {
    let violations = base_violations(bil, tol);
    if !violations.is_empty() {
        return Err(Error::InvalidBase(violations));
    }
    let re_a = p.a.re;
    if re_a == 0.0 {
        return Err(Error::DegenerateRealPart);
    }
    let j = current_norm(bil, tol)?;
    let a_minus = bil.a - I * bil.b;
    let a_plus = bil.a + I * bil.b;
    let delta = (C64::from(j) / a_minus).sqrt();
    let kick = inputs.sign.value() * inputs.mdo_mass * inputs.theta.sin() / (4.0 * re_a);
    Ok(CoefficientSet {
        alpha: (I * inputs.dirac_mass / (2.0 * re_a * j)).exp(),
        beta: (-I * p.a.im * j.ln() / (2.0 * re_a)).exp(),
        delta,
        epsilon: (delta.ln() * p.rho).exp(),
        omega: (kick / a_minus).exp(),
        zeta: (kick / a_plus).exp(),
        inputs,
    })
}

/// `J^{2σ}` written through the potential `S`: `exp{[2is − ½(b − b̄)]S}`.
pub fn beta_from_potential(p: &RimParams, s_potential: f64) -> C64 {
    ((I * 2.0 * p.s - (p.b - p.b.conj()) * 0.5) * s_potential).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChiFactors {
    pub chi1: C64,
    pub chi2: C64,
    pub chi1_inv: C64,
    pub chi2_inv: C64,
}

impl ChiFactors {
    /// The Dirac to MDO change of basis.
    pub fn m_operator(&self) -> MOperator {
        MOperator::new(self.chi1, self.chi2)
    }

    /// The MDO to Dirac change of basis.
    pub fn n_operator(&self) -> MOperator {
        MOperator::new(self.chi1_inv, self.chi2_inv)
    }

    pub fn max_diff(&self, other: &ChiFactors) -> f64 {
        [self.chi1 - other.chi1, self.chi2 - other.chi2, self.chi1_inv - other.chi1_inv, self.chi2_inv - other.chi2_inv]
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// `χ₁ = εωδ⁻¹β⁻¹α⁻¹`, `χ₂ = ε⁻¹ζδβ⁻¹α⁻¹` and their inverses.
pub fn chi_factors(c: &CoefficientSet) -> Result<ChiFactors> {
    for (name, z) in c.named() {
        if !(z.norm() > 0.0) || !z.is_finite() {
            return Err(Error::ZeroCoefficient(name));
        }
    }
    let common = (c.beta * c.alpha).inv();
    let chi1 = c.epsilon * c.omega / c.delta * common;
    let chi2 = c.zeta * c.delta / c.epsilon * common;
    Ok(ChiFactors { chi1, chi2, chi1_inv: chi1.inv(), chi2_inv: chi2.inv() })
}

/// The χ factors from their expanded closed form,
///
/// `χ₁ = δ^{ρ−1} exp{(1/2Re a)[±m sinθ/(2(A−iB)) + i Im(a) ln J − iM/J]}`,
/// `χ₂ = δ^{1−ρ} exp{(1/2Re a)[±m sinθ/(2(A+iB)) + i Im(a) ln J − iM/J]}`,
///
/// with `δ = √(J/(A−iB))` on the principal branch.
pub fn chi_expanded(p: &RimParams, bil: &Bilinears, inputs: MassInputs, tol: f64) -> Result<ChiFactors> {
    let re_a = p.a.re;
    if re_a == 0.0 {
        return Err(Error::DegenerateRealPart);
    }
    let j = current_norm(bil, tol)?;
    let a_minus = bil.a - I * bil.b;
    let a_plus = bil.a + I * bil.b;
    let ln_delta = (C64::from(j) / a_minus).sqrt().ln();
    let ln_delta_inv = (a_minus / j).sqrt().ln();
    let kick = inputs.sign.value() * inputs.mdo_mass * inputs.theta.sin() / 2.0;
    let phase = I * (p.a.im * j.ln() - inputs.dirac_mass / j);
    let e1 = (kick / a_minus + phase) / (2.0 * re_a);
    let e2 = (kick / a_plus + phase) / (2.0 * re_a);
    let chi1 = (ln_delta * (p.rho - 1.0) + e1).exp();
    let chi1_inv = (ln_delta_inv * (p.rho - 1.0) - e1).exp();
    let chi2 = (ln_delta_inv * (p.rho - 1.0) + e2).exp();
    let chi2_inv = (ln_delta * (p.rho - 1.0) - e2).exp();
    Ok(ChiFactors { chi1, chi2, chi1_inv, chi2_inv })
}

/// `Ψ^D = αβ(δ·block₁ + δ⁻¹·block₂)`.
pub fn dirac_from_base(base: &Spinor, c: &CoefficientSet) -> Spinor {
    c.l_operator().apply(base)
}

/// `λ = εω·block₁ + ε⁻¹ζ·block₂`.
pub fn mdo_from_base(base: &Spinor, c: &CoefficientSet) -> Spinor {
    c.q_operator().apply(base)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    DiracToMdo,
    MdoToDirac,
}

pub fn map_dirac_mdo(psi: &Spinor, chi: &ChiFactors, direction: Direction) -> Result<Spinor> {
    let op = match direction {
        Direction::DiracToMdo => chi.m_operator(),
        Direction::MdoToDirac => chi.n_operator(),
    };
    if !op.is_invertible() {
        return Err(Error::NonInvertible);
    }
    Ok(op.apply(psi))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BasisTag {
    /// Blocks of the RIM base.
    B,
    /// Blocks of the Dirac spinor built on the base.
    D,
    /// Blocks of the MDO spinor built on the base.
    M,
    Custom(u32),
}

/// A basis `{c₁·block₁(base), c₂·block₂(base)}` of the spinor-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlaneBasis {
    pub base: Spinor,
    pub op: MOperator,
    pub tag: BasisTag,
}

impl PlaneBasis {
    pub fn of_base(base: Spinor) -> Self {
        PlaneBasis { base, op: MOperator::identity(), tag: BasisTag::B }
    }

    pub fn with_operator(base: Spinor, op: MOperator, tag: BasisTag) -> Self {
        PlaneBasis { base, op, tag }
    }

    /// The two basis vectors as four-spinors.
    pub fn elements(&self) -> (Spinor, Spinor) {
        let spinor = self.op.apply(&self.base);
        let [p11, p12, p21, p22] = spinor.components();
        let zero = C64::from(0.0);
        (Spinor::new([p11, p12, zero, zero]), Spinor::new([zero, zero, p21, p22]))
    }

    /// The spinor with coordinates `coords` in this basis.
    pub fn compose(&self, coords: &PlaneCoords) -> Spinor {
        MOperator::new(coords.r1, coords.r2).apply(&self.op.apply(&self.base))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PlaneCoords {
    pub r1: C64,
    pub r2: C64,
    pub basis: BasisTag,
}

impl PlaneCoords {
    pub fn new(r1: C64, r2: C64, basis: BasisTag) -> Self {
        PlaneCoords { r1, r2, basis }
    }

    /// `y/x` for a point written as `(x, y(x))`.
    pub fn multiplier(&self) -> C64 {
        self.r2 / self.r1
    }

    pub fn max_diff(&self, other: &PlaneCoords) -> f64 {
        (self.r1 - other.r1).norm().max((self.r2 - other.r2).norm())
    }
}

fn project_block(psi: &Vector2<C64>, basis: &Vector2<C64>) -> (C64, f64) {
    let r = basis.dotc(psi) / basis.norm_squared();
    let residual = (psi - basis * r).norm();
    (r, residual)
}

/// Coordinates of `psi` in `basis`, block by block in the least-squares sense.
pub fn decompose(psi: &Spinor, basis: &PlaneBasis) -> Result<PlaneCoords> {
    let (e1, e2) = basis.elements();
    let scale = psi.norm();
    let blocks = [(Block::First, e1.block(Block::First)), (Block::Second, e2.block(Block::Second))];
    if let Some(idx) = blocks.iter().position(|(_, b)| !(b.norm() > 0.0)) {
        return Err(Error::DegenerateBasis(idx as u8 + 1));
    }
    let mut coords = [C64::from(0.0); 2];
    for (idx, (block, b)) in blocks.into_iter().enumerate() {
        let (r, residual) = project_block(&psi.block(block), &b);
        if residual > DECOMPOSE_TOL * scale {
            return Err(Error::NotInPlane(residual / scale));
        }
        coords[idx] = r;
    }
    Ok(PlaneCoords::new(coords[0], coords[1], basis.tag))
}

/// Re-express coordinates given in `from` in the basis `to`. Both bases must
/// share the same base spinor.
pub fn change_basis(coords: &PlaneCoords, from: &PlaneBasis, to: &PlaneBasis) -> Result<PlaneCoords> {
    if coords.basis != from.tag || from.base != to.base {
        return Err(Error::BasisMismatch);
    }
    let inv = to.op.inverse()?;
    Ok(PlaneCoords::new(coords.r1 * from.op.c1 * inv.c1, coords.r2 * from.op.c2 * inv.c2, to.tag))
}

/// The three standard bases built on one RIM base.
pub fn standard_bases(base: &Spinor, c: &CoefficientSet) -> [PlaneBasis; 3] {
    [
        PlaneBasis::of_base(*base),
        PlaneBasis::with_operator(*base, c.l_operator(), BasisTag::D),
        PlaneBasis::with_operator(*base, c.q_operator(), BasisTag::M),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bilinear::compute_dirac;
    use crate::lounesto::{classify, ClassifyOptions, LounestoClass};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn inputs(dirac_mass: f64, mdo_mass: f64, theta: f64, sign: Sign) -> MassInputs {
        MassInputs { dirac_mass, mdo_mass, theta, sign }
    }

    fn base() -> Spinor {
        Spinor::new([c(0.8, 0.1), c(0.1, -0.3), C64::from_polar(0.7, 0.9), c(-0.2, 0.4)])
    }

    fn params() -> RimParams {
        RimParams::validate(c(0.7, 0.3), c(0.7, -1.2), 1e-12).unwrap()
    }

    prop_compose! {
        fn any_base()(v in proptest::array::uniform8(-1.0f64..1.0)) -> Spinor {
            Spinor::from_parts([v[0], v[1], v[2], v[3]], [v[4], v[5], v[6], v[7]])
        }
    }

    prop_compose! {
        fn any_params()(re in 0.2f64..2.0, neg in any::<bool>(), ia in -2.0f64..2.0, ib in 0.2f64..2.0, flip in any::<bool>()) -> RimParams {
            let re = if neg { -re } else { re };
            let ib = if flip { -ib } else { ib };
            RimParams::validate(c(re, ia), c(re, ib), 1e-12).unwrap()
        }
    }

    prop_compose! {
        fn any_inputs()(m_d in -2.0f64..2.0, m in 0.1f64..2.0, th in 0.0f64..3.1, plus in any::<bool>()) -> MassInputs {
            inputs(m_d, m, th, if plus { Sign::Plus } else { Sign::Minus })
        }
    }

    #[test]
    fn operator_examples() {
        let ones = Spinor::new([ONE; 4]);
        assert_eq!(MOperator::identity().apply(&ones), ones);
        assert_eq!(MOperator::identity().matrix(), Mat4::identity());
        let two_three = MOperator::new(c(2.0, 0.0), c(3.0, 0.0)).apply(&ones);
        assert_eq!(two_three.components(), [c(2.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(3.0, 0.0)]);
        let op = MOperator::new(c(2.0, 0.0), c(4.0, 0.0));
        let psi = base();
        assert!(op.inverse().unwrap().apply(&op.apply(&psi)).max_diff(&psi) < 1e-15);
        assert_eq!(MOperator::new(ONE, C64::from(0.0)).inverse(), Err(Error::NonInvertible));
    }

    #[test]
    fn operator_matrix_matches_projector_form() {
        let op = MOperator::new(c(0.3, -1.0), c(2.0, 0.5));
        let g = gammas();
        let half = C64::from(0.5);
        let projector_form =
            (Mat4::identity() - g.gamma5) * half * op.c1 + (Mat4::identity() + g.gamma5) * half * op.c2;
        assert!(crate::clifford::max_abs(&(op.matrix() - projector_form)) < 1e-15);
    }

    #[test]
    fn trivial_coefficients() {
        let bil = compute_dirac(&base());
        let cs = coefficient_set(&params(), &bil, inputs(0.0, 1.0, 0.0, Sign::Plus), 1e-9).unwrap();
        assert!((cs.alpha - ONE).norm() < 1e-15);
        assert!((cs.omega - ONE).norm() < 1e-15 && (cs.zeta - ONE).norm() < 1e-15);
        assert!((cs.delta.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn unit_current_gives_unit_beta() {
        let p = params();
        let mut bil = compute_dirac(&base());
        bil.a = c(0.6, 0.0);
        bil.b = c(0.8, 0.0);
        bil.j = [ONE, C64::from(0.0), C64::from(0.0), C64::from(0.0)];
        let cs = coefficient_set(&p, &bil, inputs(0.5, 1.0, 0.4, Sign::Minus), 1e-9).unwrap();
        assert!((cs.beta - ONE).norm() < 1e-15);
    }

    #[test]
    fn unit_coefficients_are_inert() {
        let cs = CoefficientSet::unit(inputs(0.0, 0.0, 0.0, Sign::Plus));
        let chi = chi_factors(&cs).unwrap();
        assert_eq!((chi.chi1, chi.chi2), (ONE, ONE));
        assert_eq!(dirac_from_base(&base(), &cs), base());
        assert_eq!(mdo_from_base(&base(), &cs), base());
        assert_eq!(map_dirac_mdo(&base(), &chi, Direction::DiracToMdo).unwrap(), base());
        let mut zero = cs;
        zero.omega = C64::from(0.0);
        assert_eq!(chi_factors(&zero), Err(Error::ZeroCoefficient("omega")));
    }

    #[test]
    fn decomposition_examples() {
        let b = base();
        let basis = PlaneBasis::of_base(b);
        let coords = decompose(&b, &basis).unwrap();
        assert!(coords.max_diff(&PlaneCoords::new(ONE, ONE, BasisTag::B)) < 1e-15);
        let psi = MOperator::new(c(2.0, 0.0), c(0.0, 3.0)).apply(&b);
        let coords = decompose(&psi, &basis).unwrap();
        assert!(coords.max_diff(&PlaneCoords::new(c(2.0, 0.0), c(0.0, 3.0), BasisTag::B)) < 1e-14);
        let [_, _, p21, p22] = b.components();
        let orth = Spinor::new([ONE, ONE, -p22.conj(), p21.conj()]);
        assert!(matches!(decompose(&orth, &basis), Err(Error::NotInPlane(_))));
        let flat = Spinor::new([ONE, ONE, C64::from(0.0), C64::from(0.0)]);
        assert_eq!(decompose(&b, &PlaneBasis::of_base(flat)), Err(Error::DegenerateBasis(2)));
    }

    #[test]
    fn dirac_spinor_on_balanced_base_is_type3() {
        // A² = B² makes A_ψ = |αβ|²(A² − B²)/J vanish.
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let base =
            Spinor::new([c(h, 0.0), C64::from(0.0), C64::from_polar(h, std::f64::consts::FRAC_PI_4), C64::from(0.0)]);
        let bil = compute_dirac(&base);
        let cs = coefficient_set(&params(), &bil, inputs(0.3, 1.0, 0.5, Sign::Plus), 1e-9).unwrap();
        let d = compute_dirac(&dirac_from_base(&base, &cs));
        assert_eq!(classify(&d, &ClassifyOptions::default()).unwrap().class, LounestoClass::Type3);
    }

    proptest! {
        #[test]
        fn coefficient_invariants(b in any_base(), p in any_params(), inp in any_inputs()) {
            let bil = compute_dirac(&b);
            let cs = coefficient_set(&p, &bil, inp, 1e-9).unwrap();
            let j = bil.j_sq().re.sqrt();
            let pot = crate::rim::potentials(&bil, &p, 1e-9).unwrap();
            prop_assert!((cs.beta - beta_from_potential(&p, pot.s)).norm() < 1e-12);
            prop_assert!((cs.delta * cs.delta - C64::from(j) / (bil.a - I * bil.b)).norm() < 1e-12);
            prop_assert!((cs.delta.norm() - 1.0).abs() < 1e-12);
            let expect = (inp.sign.value() * inp.mdo_mass * inp.theta.sin() * bil.a / (2.0 * p.a.re * j * j)).exp();
            prop_assert!((cs.omega * cs.zeta - expect).norm() < 1e-10 * expect.norm());
        }

        #[test]
        fn chi_product_and_expanded_form(b in any_base(), p in any_params(), inp in any_inputs()) {
            let bil = compute_dirac(&b);
            let cs = coefficient_set(&p, &bil, inp, 1e-9).unwrap();
            let chi = chi_factors(&cs).unwrap();
            prop_assert!((chi.chi1 * chi.chi1_inv - ONE).norm() < 1e-12);
            prop_assert!((chi.chi2 * chi.chi2_inv - ONE).norm() < 1e-12);
            let expanded = chi_expanded(&p, &bil, inp, 1e-9).unwrap();
            let size = [chi.chi1, chi.chi2, chi.chi1_inv, chi.chi2_inv].iter().map(|z| z.norm()).fold(1.0, f64::max);
            prop_assert!(chi.max_diff(&expanded) < 1e-10 * size);
        }

        #[test]
        fn maps_meet(b in any_base(), p in any_params(), inp in any_inputs()) {
            let bil = compute_dirac(&b);
            let cs = coefficient_set(&p, &bil, inp, 1e-9).unwrap();
            let chi = chi_factors(&cs).unwrap();
            let d = dirac_from_base(&b, &cs);
            let l = mdo_from_base(&b, &cs);
            let mapped = map_dirac_mdo(&d, &chi, Direction::DiracToMdo).unwrap();
            prop_assert!(mapped.max_diff(&l) < 1e-10 * l.norm());
            let back = map_dirac_mdo(&mapped, &chi, Direction::MdoToDirac).unwrap();
            prop_assert!(back.max_diff(&d) < 1e-12 * d.norm());
        }

        #[test]
        fn basis_chain_roundtrip(b in any_base(), p in any_params(), inp in any_inputs(), r1 in -2.0f64..2.0, r2 in -2.0f64..2.0) {
            let bil = compute_dirac(&b);
            let cs = coefficient_set(&p, &bil, inp, 1e-9).unwrap();
            let [bb, dd, mm] = standard_bases(&b, &cs);
            let start = PlaneCoords::new(c(r1, 0.3), c(r2, -0.1), BasisTag::B);
            let in_d = change_basis(&start, &bb, &dd).unwrap();
            let in_m = change_basis(&in_d, &dd, &mm).unwrap();
            let back = change_basis(&in_m, &mm, &bb).unwrap();
            prop_assert!(back.max_diff(&start) < 1e-10 * (1.0 + r1.abs() + r2.abs()));
            let psi = bb.compose(&start);
            prop_assert!(mm.compose(&in_m).max_diff(&psi) < 1e-10 * psi.norm());
        }

        #[test]
        fn m_is_closed(a1 in -2.0f64..2.0, a2 in -2.0f64..2.0, b1 in -2.0f64..2.0, b2 in -2.0f64..2.0) {
            let x = MOperator::new(c(a1, b1), c(a2, b2));
            let y = MOperator::new(c(b2, a1), c(b1, a2));
            let prod = x.compose(&y);
            prop_assert!(crate::clifford::max_abs(&(prod.matrix() - x.matrix() * y.matrix())) < 1e-14);
        }
    }
}
