//! Exact symbolic toolkit for monoidal and submonoidal surfaces in projective
//! 3-space: conic-bundle discriminants, fiber classification, Picard-lattice
//! bookkeeping, satellite curves, and the associated Cremona involutions, with
//! a generalization to submonoidal hypersurfaces in higher dimension.
//!
//! All computation is exact over Q or a quadratic extension Q(w), w^2 = D.

pub mod exactalg;
pub mod monoidal;
pub mod submonoidal;
pub mod lattice;
pub mod cremona;
pub mod hypersurface;
