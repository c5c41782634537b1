//! Gamma matrices in the chiral (Weyl) basis, chirality projectors and
//! Minkowski contractions.
//!
//! Conventions used throughout the crate:
//!
//! * metric `η = diag(+1, −1, −1, −1)`;
//! * `γ⁰` has identity blocks on the anti-diagonal, `γᵏ` carries `σᵏ` in the
//!   upper-right block and `−σᵏ` in the lower-left block;
//! * `γ₅ = i γ⁰γ¹γ²γ³ = diag(−1, −1, +1, +1)`;
//! * block 1 is the top pair of components, block 2 the bottom pair. Block 1
//!   is the part multiplied by `r₁` in a spinor-plane decomposition.
//! * four-vectors are stored with upper (contravariant) indices unless a
//!   function name says otherwise.

use std::sync::LazyLock;

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type Mat4 = Matrix4<C64>;
pub type Mat2 = Matrix2<C64>;

/// A four-vector with complex components, upper indices.
pub type FourVector = [C64; 4];

/// Diagonal of the Minkowski metric.
pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// One of the two chirality blocks of a four-component spinor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Block {
    /// Components 0 and 1.
    First,
    /// Components 2 and 3.
    Second,
}

impl Block {
    pub fn range(self) -> std::ops::Range<usize> {
        match self {
            Block::First => 0..2,
            Block::Second => 2..4,
        }
    }
}

/// The fixed Clifford-algebra representation.
#[derive(Debug, Clone)]
pub struct GammaSet {
    /// `γ^μ` with upper index.
    pub gamma: [Mat4; 4],
    pub gamma5: Mat4,
    pub metric: Matrix4<f64>,
}

static GAMMAS: LazyLock<GammaSet> = LazyLock::new(GammaSet::build);

/// Shared instance of the representation.
pub fn gammas() -> &'static GammaSet {
    &GAMMAS
}

pub fn pauli() -> [Mat2; 3] {
    [Mat2::new(ZERO, ONE, ONE, ZERO), Mat2::new(ZERO, -I, I, ZERO), Mat2::new(ONE, ZERO, ZERO, -ONE)]
}

fn from_blocks(tl: &Mat2, tr: &Mat2, bl: &Mat2, br: &Mat2) -> Mat4 {
    let mut m = Mat4::zeros();
    m.fixed_view_mut::<2, 2>(0, 0).copy_from(tl);
    m.fixed_view_mut::<2, 2>(0, 2).copy_from(tr);
    m.fixed_view_mut::<2, 2>(2, 0).copy_from(bl);
    m.fixed_view_mut::<2, 2>(2, 2).copy_from(br);
    m
}

impl GammaSet {
    pub fn build() -> Self {
        let id = Mat2::identity();
        let zero = Mat2::zeros();
        let [s1, s2, s3] = pauli();
        let g0 = from_blocks(&zero, &id, &id, &zero);
        let spatial = |s: &Mat2| from_blocks(&zero, s, &(-s), &zero);
        let gamma5 = Mat4::from_diagonal(&nalgebra::Vector4::new(-ONE, -ONE, ONE, ONE));
        GammaSet {
            gamma: [g0, spatial(&s1), spatial(&s2), spatial(&s3)],
            gamma5,
            metric: Matrix4::from_diagonal(&nalgebra::Vector4::from(METRIC)),
        }
    }

    /// `γ_μ = η_{μν} γ^ν`.
    pub fn lower(&self, mu: usize) -> Mat4 {
        self.gamma[mu] * C64::from(METRIC[mu])
    }

    /// Chirality projector onto one block: `P₁ = diag(1,1,0,0)`,
    /// `P₂ = diag(0,0,1,1) = ½(𝟙 + γ₅)`.
    pub fn projector(&self, block: Block) -> Mat4 {
        let mut m = Mat4::zeros();
        for k in block.range() {
            m[(k, k)] = ONE;
        }
        m
    }

    /// `v^μ γ_μ = v⁰γ⁰ − v¹γ¹ − v²γ² − v³γ³` for contravariant `v`.
    pub fn slash(&self, v: &FourVector) -> Mat4 {
        (0..4).fold(Mat4::zeros(), |acc, mu| acc + self.lower(mu) * v[mu])
    }

    /// `γ^μ γ^ν − γ^ν γ^μ`.
    pub fn commutator(&self, mu: usize, nu: usize) -> Mat4 {
        self.gamma[mu] * self.gamma[nu] - self.gamma[nu] * self.gamma[mu]
    }
}

/// Lower the index of a contravariant four-vector.
pub fn lower_index(v: &FourVector) -> FourVector {
    std::array::from_fn(|mu| v[mu] * METRIC[mu])
}

/// Bilinear (non-conjugating) Minkowski product `u^μ v_μ`.
pub fn minkowski_dot(u: &FourVector, v: &FourVector) -> C64 {
    (0..4).map(|mu| u[mu] * v[mu] * METRIC[mu]).sum()
}

/// Totally antisymmetric symbol with `ε^{0123} = +1`.
///
/// With the metric signature above the lowered symbol has `ε_{0123} = −1`.
pub fn levi_civita_upper(idx: [usize; 4]) -> f64 {
    let mut p = idx;
    if p.iter().any(|&i| i > 3) {
        return 0.0;
    }
    let mut sign = 1.0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if p[i] == p[j] {
                return 0.0;
            }
        }
    }
    // selection sort counting transpositions
    for i in 0..4 {
        let min = (i..4).min_by_key(|&k| p[k]).unwrap();
        if min != i {
            p.swap(i, min);
            sign = -sign;
        }
    }
    sign
}

pub fn levi_civita_lower(idx: [usize; 4]) -> f64 {
    -levi_civita_upper(idx)
}

/// Largest entry modulus of a matrix.
pub fn max_abs(m: &Mat4) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs2(m: &Mat2) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anticommutators_match_metric() {
        let g = gammas();
        for mu in 0..4 {
            for nu in 0..4 {
                let ac = g.gamma[mu] * g.gamma[nu] + g.gamma[nu] * g.gamma[mu];
                let expected = Mat4::identity() * C64::from(if mu == nu { 2.0 * METRIC[mu] } else { 0.0 });
                assert!(max_abs(&(ac - expected)) < 1e-12, "mu={mu} nu={nu}");
            }
        }
    }

    #[test]
    fn gamma5_is_the_product_of_the_four_gammas() {
        let g = gammas();
        let product = g.gamma[0] * g.gamma[1] * g.gamma[2] * g.gamma[3] * I;
        assert!(max_abs(&(product - g.gamma5)) < 1e-12);
        let diag: Vec<f64> = (0..4).map(|k| g.gamma5[(k, k)].re).collect();
        assert_eq!(diag, vec![-1.0, -1.0, 1.0, 1.0]);
        assert!(max_abs(&(g.gamma5 * g.gamma5 - Mat4::identity())) < 1e-12);
        for mu in 0..4 {
            let ac = g.gamma5 * g.gamma[mu] + g.gamma[mu] * g.gamma5;
            assert!(max_abs(&ac) < 1e-12);
        }
    }

    #[test]
    fn hermiticity() {
        let g = gammas();
        assert!(max_abs(&(g.gamma[0].adjoint() - g.gamma[0])) < 1e-15);
        for k in 1..4 {
            assert!(max_abs(&(g.gamma[k].adjoint() + g.gamma[k])) < 1e-15);
        }
    }

    #[test]
    fn gamma0_squares_to_identity_and_anticommutes_with_gamma1() {
        let g = gammas();
        assert!(max_abs(&(g.gamma[0] * g.gamma[0] - Mat4::identity())) == 0.0);
        assert!(max_abs(&(g.gamma[0] * g.gamma[1] + g.gamma[1] * g.gamma[0])) == 0.0);
    }

    #[test]
    fn projectors() {
        let g = gammas();
        let p1 = g.projector(Block::First);
        let p2 = g.projector(Block::Second);
        assert_eq!(p1 + p2, Mat4::identity());
        assert_eq!(p1 * p2, Mat4::zeros());
        assert_eq!(p1 * p1, p1);
        assert_eq!(p2 * p2, p2);
        let half = (Mat4::identity() + g.gamma5) * C64::from(0.5);
        assert!(max_abs(&(half - p2)) < 1e-15);
    }

    #[test]
    fn slash_conventions() {
        let g = gammas();
        assert_eq!(g.slash(&[ONE, ZERO, ZERO, ZERO]), g.gamma[0]);
        assert_eq!(g.slash(&[ZERO, ZERO, ZERO, ONE]), -g.gamma[3]);
        let v = [C64::new(0.3, -1.2), C64::new(2.0, 0.1), C64::new(-0.7, 0.4), C64::new(0.05, 0.9)];
        let s = g.slash(&v);
        let vv = minkowski_dot(&v, &v);
        assert!(max_abs(&(s * s - Mat4::identity() * vv)) < 1e-12);
    }

    #[test]
    fn levi_civita_signs() {
        assert_eq!(levi_civita_upper([0, 1, 2, 3]), 1.0);
        assert_eq!(levi_civita_upper([1, 0, 2, 3]), -1.0);
        assert_eq!(levi_civita_upper([3, 2, 1, 0]), 1.0);
        assert_eq!(levi_civita_upper([0, 0, 2, 3]), 0.0);
        assert_eq!(levi_civita_lower([0, 1, 2, 3]), -1.0);
    }
}
