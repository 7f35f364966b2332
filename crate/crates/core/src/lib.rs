//! Loewner-order algorithms on real symmetric matrices: the effect
//! algebra `[0, I]`, its order automorphisms, and order isomorphisms
//! between matrix intervals.
//!
//! ```
//! use loewner_core::automorphisms::EffectAutomorphism;
//! use loewner_core::effects::Effect;
//! use loewner_core::{Matrix, SymMat, Tolerances};
//!
//! let tol = Tolerances::default();
//! let t = Matrix::from_row_major(2, 2, vec![2.0, 0.0, 0.0, 1.0])?;
//! let phi = EffectAutomorphism::new(t, &tol)?;
//! let half = Effect::new(SymMat::identity(2).scale(0.5), &tol)?;
//! let image = phi.apply(&half, &tol)?;
//! assert!((image.mat().get(0, 0) - 0.8).abs() < 1e-15);
//! # Ok::<(), loewner_core::Error>(())
//! ```

pub mod automorphisms;
pub mod effects;
pub mod error;
pub mod intervals;
pub mod linalg;
pub mod oracle;

pub use error::{Error, Result};
pub use linalg::{Matrix, SymMat, Tolerances};
