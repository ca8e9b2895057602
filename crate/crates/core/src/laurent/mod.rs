//! Exact integer Laurent-polynomial arithmetic, matrices over it, and
//! real-root isolation for ordinary integer polynomials.

mod intpoly;
mod matrix;
mod poly;
pub(crate) mod ratpoly;
mod roots;

pub use intpoly::{normalize_to_intpoly, IntPoly};
pub use matrix::LaurentMatrix;
pub use poly::LaurentPoly;
pub use roots::{isolate_real_roots, real_root_count, squarefree_part, RootInterval};
