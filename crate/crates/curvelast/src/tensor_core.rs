//! Dense second- and fourth-order tensors in the fixed orthonormal basis
//! `(e_θ, e_z, e_r)`.
//!
//! Index `0, 1, 2` in code corresponds to `θ, z, r`. Surface tensors live in the
//! span of `e_θ, e_z` (indices `0, 1`); the normal of the cylinder surface is
//! `e_r` (index `2`).

use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

/// Index of the outward normal `e_r`.
pub const NORMAL: usize = 2;

/// A second-order tensor stored as a 3×3 component matrix.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Tensor2 {
    pub c: [[f64; 3]; 3],
}

impl Tensor2 {
    pub const fn zero() -> Self {
        Self { c: [[0.0; 3]; 3] }
    }

    pub const fn identity() -> Self {
        Self::diag(1.0, 1.0, 1.0)
    }

    pub const fn diag(d0: f64, d1: f64, d2: f64) -> Self {
        Self {
            c: [[d0, 0.0, 0.0], [0.0, d1, 0.0], [0.0, 0.0, d2]],
        }
    }

    pub const fn from_rows(c: [[f64; 3]; 3]) -> Self {
        Self { c }
    }

    /// The basis dyad `e_i ⊗ e_j`.
    pub fn dyad(i: usize, j: usize) -> Self {
        let mut t = Self::zero();
        t.c[i][j] = 1.0;
        t
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                t.c[i][j] = self.c[j][i];
            }
        }
        t
    }

    /// Single contraction `self · rhs`.
    pub fn dot(&self, rhs: &Self) -> Self {
        let mut t = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                t.c[i][j] = (0..3).map(|k| self.c[i][k] * rhs.c[k][j]).sum();
            }
        }
        t
    }

    pub fn dot_vec(&self, v: &[f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..3).map(|k| self.c[i][k] * v[k]).sum();
        }
        out
    }

    pub fn trace(&self) -> f64 {
        self.c[0][0] + self.c[1][1] + self.c[2][2]
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().flatten().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().flatten().all(|v| v.is_finite())
    }

    /// True when row and column `e_r` vanish to within `tol`.
    pub fn is_superficial(&self, tol: f64) -> bool {
        (0..3).all(|k| self.c[NORMAL][k].abs() <= tol && self.c[k][NORMAL].abs() <= tol)
    }

    /// Outer product `u ⊗ v`.
    pub fn outer(u: &[f64; 3], v: &[f64; 3]) -> Self {
        let mut t = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                t.c[i][j] = u[i] * v[j];
            }
        }
        t
    }
}

impl Index<(usize, usize)> for Tensor2 {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.c[i][j]
    }
}

impl IndexMut<(usize, usize)> for Tensor2 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.c[i][j]
    }
}

impl Add for Tensor2 {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl AddAssign for Tensor2 {
    fn add_assign(&mut self, rhs: Self) {
        for i in 0..3 {
            for j in 0..3 {
                self.c[i][j] += rhs.c[i][j];
            }
        }
    }
}

impl Sub for Tensor2 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Tensor2 {
    type Output = Self;
    fn neg(self) -> Self {
        self * -1.0
    }
}

impl Mul<f64> for Tensor2 {
    type Output = Self;
    fn mul(mut self, s: f64) -> Self {
        self.c.iter_mut().flatten().for_each(|v| *v *= s);
        self
    }
}

/// Which components of a [`Tensor4Block`] may be nonzero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sparsity {
    /// Every `(i, j, k, l)` may be populated (bulk moduli).
    Full,
    /// Only in-plane indices `i, j, k, l ∈ {θ, z}`.
    InPlane,
    /// In-plane entries plus the transverse entries `(r, α, r, β)`.
    InPlaneWithTransverse,
}

impl Sparsity {
    pub fn allows(self, i: usize, j: usize, k: usize, l: usize) -> bool {
        let in_plane = |x: usize| x < NORMAL;
        match self {
            Sparsity::Full => true,
            Sparsity::InPlane => in_plane(i) && in_plane(j) && in_plane(k) && in_plane(l),
            Sparsity::InPlaneWithTransverse => {
                let all_in = in_plane(i) && in_plane(j) && in_plane(k) && in_plane(l);
                let transverse = i == NORMAL && k == NORMAL && in_plane(j) && in_plane(l);
                all_in || transverse
            }
        }
    }
}

/// A fourth-order tensor with a declared sparsity pattern.
///
/// Entries outside the pattern are kept exactly zero: [`Tensor4Block::set`]
/// panics when asked to store a nonzero value there, which turns index slips in
/// the moduli formulas into immediate failures.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor4Block {
    c: [[[[f64; 3]; 3]; 3]; 3],
    sparsity: Sparsity,
}

impl Tensor4Block {
    pub fn zeros(sparsity: Sparsity) -> Self {
        Self {
            c: [[[[0.0; 3]; 3]; 3]; 3],
            sparsity,
        }
    }

    /// The identity map `T_ijkl = δ_ik δ_jl`.
    pub fn identity() -> Self {
        let mut t = Self::zeros(Sparsity::Full);
        for i in 0..3 {
            for j in 0..3 {
                t.c[i][j][i][j] = 1.0;
            }
        }
        t
    }

    pub fn sparsity(&self) -> Sparsity {
        self.sparsity
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.c[i][j][k][l]
    }

    /// Store a component.
    ///
    /// # Panics
    /// When `v != 0` and `(i, j, k, l)` lies outside the sparsity pattern.
    pub fn set(&mut self, i: usize, j: usize, k: usize, l: usize, v: f64) {
        assert!(
            v == 0.0 || self.sparsity.allows(i, j, k, l),
            "component ({i},{j},{k},{l}) outside {:?} pattern",
            self.sparsity
        );
        self.c[i][j][k][l] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, k: usize, l: usize, v: f64) {
        let cur = self.get(i, j, k, l);
        self.set(i, j, k, l, cur + v);
    }

    pub fn scaled(&self, s: f64) -> Self {
        let mut out = self.clone();
        out.c.iter_mut().flatten().flatten().flatten().for_each(|v| *v *= s);
        out
    }

    /// Componentwise linear combination `a·self + b·other`; the result takes
    /// the wider of the two sparsity patterns.
    pub fn lin_comb(&self, a: f64, other: &Self, b: f64) -> Self {
        let sparsity = if self.sparsity == other.sparsity {
            self.sparsity
        } else {
            Sparsity::Full
        };
        let mut out = Self::zeros(sparsity);
        for (i, j, k, l) in all_indices() {
            out.c[i][j][k][l] = a * self.c[i][j][k][l] + b * other.c[i][j][k][l];
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.c
            .iter()
            .flatten()
            .flatten()
            .flatten()
            .fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// True when every component outside the sparsity pattern is exactly zero.
    pub fn respects_sparsity(&self) -> bool {
        all_indices().all(|(i, j, k, l)| self.sparsity.allows(i, j, k, l) || self.c[i][j][k][l] == 0.0)
    }
}

/// Iterator over all 81 index quadruples.
pub fn all_indices() -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..81).map(|n| (n / 27, (n / 9) % 3, (n / 3) % 3, n % 3))
}

/// Double contraction `(T4 : T2)_ij = Σ_kl T4_ijkl T2_kl`.
pub fn double_contract(t4: &Tensor4Block, t2: &Tensor2) -> Tensor2 {
    let mut out = Tensor2::zero();
    for (i, j, k, l) in all_indices() {
        out.c[i][j] += t4.c[i][j][k][l] * t2.c[k][l];
    }
    out
}

/// Tangential projection: zeroes the `e_r` row and column, i.e. applies
/// `ī_s = I − e_r ⊗ e_r` on both sides.
pub fn surface_project(t2: &Tensor2) -> Tensor2 {
    let mut out = *t2;
    for k in 0..3 {
        out.c[NORMAL][k] = 0.0;
        out.c[k][NORMAL] = 0.0;
    }
    out
}
