//! Four-component spinors, their Dirac and mass-dimension-one duals, and
//! chirality splitting.

use nalgebra::{RowVector4, Vector2, Vector4};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::clifford::{gammas, max_abs, Block, Mat4, C64, ZERO};
use crate::error::{Error, Result};

/// Tolerance on `‖Ξ² − 𝟙‖` accepted by [`mdo_dual`].
pub const XI_INVOLUTION_TOL: f64 = 1e-9;

/// Column spinor `(Ψ₁₁, Ψ₁₂, Ψ₂₁, Ψ₂₂)ᵀ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor(pub Vector4<C64>);

impl Spinor {
    pub fn new(c: [C64; 4]) -> Self {
        Spinor(Vector4::from(c))
    }

    pub fn from_parts(re: [f64; 4], im: [f64; 4]) -> Self {
        Spinor::new(std::array::from_fn(|k| C64::new(re[k], im[k])))
    }

    pub fn zero() -> Self {
        Spinor(Vector4::zeros())
    }

    /// Spinor whose two blocks are `first` and `second`.
    pub fn from_blocks(first: Vector2<C64>, second: Vector2<C64>) -> Self {
        Spinor::new([first[0], first[1], second[0], second[1]])
    }

    pub fn components(&self) -> [C64; 4] {
        [self.0[0], self.0[1], self.0[2], self.0[3]]
    }

    pub fn block(&self, block: Block) -> Vector2<C64> {
        let r = block.range();
        Vector2::new(self.0[r.start], self.0[r.start + 1])
    }

    /// `Σ |cᵢ|²`.
    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn ensure_finite(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn scale(&self, c: C64) -> Spinor {
        Spinor(self.0 * c)
    }

    pub fn apply(&self, m: &Mat4) -> Spinor {
        Spinor(m * self.0)
    }

    /// Largest component modulus of `self − other`.
    pub fn max_diff(&self, other: &Spinor) -> f64 {
        (self.0 - other.0).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn distance(&self, other: &Spinor) -> f64 {
        (self.0 - other.0).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

impl std::ops::Add for Spinor {
    type Output = Spinor;
    fn add(self, rhs: Spinor) -> Spinor {
        Spinor(self.0 + rhs.0)
    }
}

impl std::ops::Sub for Spinor {
    type Output = Spinor;
    fn sub(self, rhs: Spinor) -> Spinor {
        Spinor(self.0 - rhs.0)
    }
}

/// A `±` choice in a formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Row spinor produced by a dual map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualSpinor(pub RowVector4<C64>);

impl DualSpinor {
    /// `ψ̄ ψ`.
    pub fn contract(&self, psi: &Spinor) -> C64 {
        (self.0 * psi.0)[0]
    }

    /// `ψ̄ Γ ψ`.
    pub fn sandwich(&self, gamma: &Mat4, psi: &Spinor) -> C64 {
        (self.0 * gamma * psi.0)[0]
    }

    pub fn components(&self) -> [C64; 4] {
        [self.0[0], self.0[1], self.0[2], self.0[3]]
    }
}

/// Which adjoint is used to form bilinears.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DualKind {
    /// `ψ̄ = ψ†γ⁰`.
    Dirac,
    /// `⌐λ = (Ξλ)†γ⁰`.
    Mdo { xi: Mat4 },
}

impl DualKind {
    pub fn is_dirac(&self) -> bool {
        matches!(self, DualKind::Dirac)
    }

    pub fn dual(&self, psi: &Spinor) -> Result<DualSpinor> {
        match self {
            DualKind::Dirac => Ok(dirac_dual(psi)),
            DualKind::Mdo { xi } => mdo_dual(psi, xi),
        }
    }
}

/// `ψ†γ⁰`.
pub fn dirac_dual(psi: &Spinor) -> DualSpinor {
    DualSpinor(psi.0.adjoint() * gammas().gamma[0])
}

/// `(Ξλ)†γ⁰`, the dual used for mass-dimension-one spinors.
pub fn mdo_dual(lambda: &Spinor, xi: &Mat4) -> Result<DualSpinor> {
    let defect = max_abs(&(xi * xi - Mat4::identity()));
    if !(defect <= XI_INVOLUTION_TOL) {
        return Err(Error::DegenerateXi(defect));
    }
    Ok(DualSpinor((xi * lambda.0).adjoint() * gammas().gamma[0]))
}

/// Split into `(P₁ψ, P₂ψ)`.
pub fn chiral_parts(psi: &Spinor) -> (Spinor, Spinor) {
    let c = psi.components();
    (Spinor::new([c[0], c[1], ZERO, ZERO]), Spinor::new([ZERO, ZERO, c[2], c[3]]))
}

pub fn chiral_part(psi: &Spinor, block: Block) -> Spinor {
    let (first, second) = chiral_parts(psi);
    match block {
        Block::First => first,
        Block::Second => second,
    }
}

#[derive(Serialize, Deserialize)]
struct SpinorRepr {
    re: [f64; 4],
    im: [f64; 4],
}

impl Serialize for Spinor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let c = self.components();
        SpinorRepr { re: c.map(|z| z.re), im: c.map(|z| z.im) }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Spinor {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let r = SpinorRepr::deserialize(deserializer)?;
        let s = Spinor::from_parts(r.re, r.im);
        if !s.is_finite() {
            return Err(serde::de::Error::custom("non-finite spinor component"));
        }
        Ok(s)
    }
}
