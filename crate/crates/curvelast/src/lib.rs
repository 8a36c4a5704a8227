//! Curvature-dependent surface elasticity for a coated hyperelastic cylinder.
//!
//! The crate covers the full small-on-large pipeline for axisymmetric beading
//! of a compressible neo-Hookean cylinder whose lateral surface carries its own
//! stretch- and curvature-dependent energy:
//!
//! * [`tensor_core`]: fixed-size second- and fourth-order tensors in the
//!   orthonormal cylinder basis `(e_θ, e_z, e_r)`.
//! * [`special_fn`]: modified Bessel functions `I₀`, `I₁` and their ratio.
//! * [`bulk_material`]: the bulk energy, base stress and incremental moduli.
//! * [`surface_material`]: surface energies (tension, stretching, Helfrich),
//!   the four surface stiffness blocks and the incremental surface stress.
//! * [`base_state`]: the homogeneous finite deformation `(λ, a)` and the axial
//!   force.
//! * [`dispersion`]: characteristic roots, Bessel modes, the boundary
//!   determinant `Ω(k, λ)`, its incompressible closed form and curve tracing.
//!
//! Index convention: code index `0, 1, 2` stands for the physical directions
//! `θ, z, r`. Internally all cylinder computations are carried out in units
//! where the shear modulus and the reference radius equal one.
//!
//! ```
//! use curvelast::{base_state, bulk_material::BulkMaterial, surface_material::SurfaceModel};
//!
//! let mat = BulkMaterial::new(1.0, 0.0).unwrap();
//! let surf = SurfaceModel::tension(1.0).unwrap();
//! let a = base_state::solve_azimuthal_stretch(1.0, &mat, &surf, 1.0, None).unwrap();
//! assert!((a - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-12);
//! ```

pub mod base_state;
pub mod bulk_material;
pub mod dispersion;
pub mod error;
mod rootfind;
pub mod special_fn;
pub mod surface_material;
pub mod tensor_core;

pub use error::{CurvelastError, Result};
