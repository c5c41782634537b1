//! Bilinear covariants of a spinor.
//!
//! [`compute`] sandwiches the sixteen Clifford elements between the dual and
//! the spinor. [`compute_fast`] evaluates closed component formulas for a
//! spinor of the form `diag(r₁, r₁, r₂, r₂)·base` and never touches a gamma
//! matrix, so the two paths check each other.
//!
//! Stored conventions: `J^μ = ψ̄γ^μψ`, `K^μ = ψ̄γ₅γ^μψ`,
//! `S^{μν} = (i/2)ψ̄[γ^μ, γ^ν]ψ`, all with upper indices.

use serde::Serialize;

use crate::clifford::{gammas, levi_civita_lower, lower_index, minkowski_dot, Block, FourVector, C64, I, METRIC, ZERO};
use crate::error::Result;
use crate::spinor::{DualKind, Spinor};

pub type Tensor2 = [[C64; 4]; 4];

/// Index pairs of the six independent components of `S`.
pub const S_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bilinears {
    pub a: C64,
    pub b: C64,
    pub j: FourVector,
    pub k: FourVector,
    pub s: Tensor2,
    /// `ψ̄P₁ψ`.
    pub a1: C64,
    /// `ψ̄P₂ψ`.
    pub a2: C64,
    /// `‖ψ‖²`, the natural size of every quadratic covariant.
    pub scale: f64,
    pub dirac_dual: bool,
}

impl Bilinears {
    /// `J_μJ^μ`.
    pub fn j_sq(&self) -> C64 {
        minkowski_dot(&self.j, &self.j)
    }

    pub fn k_sq(&self) -> C64 {
        minkowski_dot(&self.k, &self.k)
    }

    /// `S_{μν}` with both indices lowered.
    pub fn s_lower(&self) -> Tensor2 {
        std::array::from_fn(|mu| std::array::from_fn(|nu| self.s[mu][nu] * METRIC[mu] * METRIC[nu]))
    }

    /// `ψ̄γ^μγ₅ψ = −K^μ`, the axial current that enters the RIM condition.
    pub fn axial_current(&self) -> FourVector {
        self.k.map(|z| -z)
    }
}

/// All covariants of `psi` under the given dual.
pub fn compute(psi: &Spinor, dual: &DualKind) -> Result<Bilinears> {
    let g = gammas();
    let bar = dual.dual(psi)?;
    let j: FourVector = std::array::from_fn(|mu| bar.sandwich(&g.gamma[mu], psi));
    let k: FourVector = std::array::from_fn(|mu| bar.sandwich(&(g.gamma5 * g.gamma[mu]), psi));
    let mut s = [[ZERO; 4]; 4];
    for mu in 0..4 {
        for nu in (mu + 1)..4 {
            let v = bar.sandwich(&g.commutator(mu, nu), psi) * I * 0.5;
            s[mu][nu] = v;
            s[nu][mu] = -v;
        }
    }
    Ok(Bilinears {
        a: bar.contract(psi),
        b: I * bar.sandwich(&g.gamma5, psi),
        j,
        k,
        s,
        a1: bar.sandwich(&g.projector(Block::First), psi),
        a2: bar.sandwich(&g.projector(Block::Second), psi),
        scale: psi.norm_sq(),
        dirac_dual: dual.is_dirac(),
    })
}

/// Dirac-dual covariants.
pub fn compute_dirac(psi: &Spinor) -> Bilinears {
    compute(psi, &DualKind::Dirac).expect("the Dirac dual cannot fail")
}

/// Covariants of `diag(r₁, r₁, r₂, r₂)·base` from component formulas.
///
/// `K¹`, `K²`, `K³` have no closed form here and are left as `None`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PartialBilinears {
    pub a: C64,
    pub b: C64,
    pub j: FourVector,
    pub k: [Option<C64>; 4],
    /// Components in the order of [`S_PAIRS`].
    pub s: [C64; 6],
}

pub fn compute_fast(base: &Spinor, r1: C64, r2: C64) -> PartialBilinears {
    let [p11, p12, p21, p22] = base.components();
    let n1 = r1.norm_sqr();
    let n2 = r2.norm_sqr();
    let top = p11.norm_sqr() + p12.norm_sqr();
    let bottom = p21.norm_sqr() + p22.norm_sqr();

    let j = [
        C64::from(top * n1 + bottom * n2),
        -(p12.conj() * p11 + p11.conj() * p12) * n1 + (p22.conj() * p21 + p21.conj() * p22) * n2,
        I * (-(p12.conj() * p11 - p11.conj() * p12) * n1 + (p22.conj() * p21 - p21.conj() * p22) * n2),
        C64::from(-n1 * (p11.norm_sqr() - p12.norm_sqr()) + n2 * (p21.norm_sqr() - p22.norm_sqr())),
    ];
    let k0 = C64::from(top * n1 - bottom * n2);

    let u = r1 * r2.conj();
    let v = r1.conj() * r2;
    let a1 = p21.conj() * p11 + p22.conj() * p12;
    let a2 = p11.conj() * p21 + p12.conj() * p22;

    let s = [
        -I * (u * (p22.conj() * p11 + p21.conj() * p12) - v * (p12.conj() * p21 + p11.conj() * p22)),
        u * (p22.conj() * p11 - p21.conj() * p12) - v * (p12.conj() * p21 - p11.conj() * p22),
        -I * (u * (p21.conj() * p11 - p22.conj() * p12) - v * (p11.conj() * p21 - p12.conj() * p22)),
        u * (p21.conj() * p11 - p22.conj() * p12) + v * (p11.conj() * p21 - p12.conj() * p22),
        -I * (u * (p22.conj() * p11 - p21.conj() * p12) + v * (p12.conj() * p21 - p11.conj() * p22)),
        u * (p22.conj() * p11 + p21.conj() * p12) + v * (p12.conj() * p21 + p11.conj() * p22),
    ];

    PartialBilinears { a: u * a1 + v * a2, b: I * (-u * a1 + v * a2), j, k: [Some(k0), None, None, None], s }
}

/// Raw (unnormalised) residuals of the four Fierz-Pauli-Kofink identities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FpkResiduals {
    /// `|J² − A² − B²|`
    pub norm: f64,
    /// `max |J_μK_ν − K_μJ_ν + BS_{μν} + (A/2)ε_{μναβ}S^{αβ}|`
    pub cross: f64,
    /// `|J·K|`
    pub orthogonal: f64,
    /// `|J² + K²|`
    pub opposite: f64,
}

impl FpkResiduals {
    pub fn as_array(&self) -> [f64; 4] {
        [self.norm, self.cross, self.orthogonal, self.opposite]
    }

    /// Largest residual divided by `‖ψ‖⁴`, the size of a quartic covariant.
    pub fn max_relative(&self, scale: f64) -> f64 {
        let denom = if scale > 0.0 { scale * scale } else { 1.0 };
        self.as_array().into_iter().fold(0.0, f64::max) / denom
    }
}

pub fn fpk_residuals(b: &Bilinears) -> FpkResiduals {
    let jl = lower_index(&b.j);
    let kl = lower_index(&b.k);
    let sl = b.s_lower();
    let mut cross: f64 = 0.0;
    for mu in 0..4 {
        for nu in 0..4 {
            let mut dual = ZERO;
            for al in 0..4 {
                for be in 0..4 {
                    let e = levi_civita_lower([mu, nu, al, be]);
                    if e != 0.0 {
                        dual += b.s[al][be] * e;
                    }
                }
            }
            let r = jl[mu] * kl[nu] - kl[mu] * jl[nu] + b.b * sl[mu][nu] + b.a * 0.5 * dual;
            cross = cross.max(r.norm());
        }
    }
    let j2 = b.j_sq();
    FpkResiduals {
        norm: (j2 - b.a * b.a - b.b * b.b).norm(),
        cross,
        orthogonal: minkowski_dot(&b.j, &b.k).norm(),
        opposite: (j2 + b.k_sq()).norm(),
    }
}

/// Largest disagreement between the component formulas and the oracle over
/// every field the component formulas provide.
pub fn fast_oracle_gap(fast: &PartialBilinears, full: &Bilinears) -> f64 {
    let mut gap = (fast.a - full.a).norm().max((fast.b - full.b).norm());
    for mu in 0..4 {
        gap = gap.max((fast.j[mu] - full.j[mu]).norm());
        if let Some(k) = fast.k[mu] {
            gap = gap.max((k - full.k[mu]).norm());
        }
    }
    for (idx, &(mu, nu)) in S_PAIRS.iter().enumerate() {
        gap = gap.max((fast.s[idx] - full.s[mu][nu]).norm());
    }
    gap
}
