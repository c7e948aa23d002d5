//! Exact integration of polynomials over reference finite elements cut by a
//! hyperplane.
//!
//! Every kernel evaluates the limit
//!
//! ```text
//! -lim_{t->inf} t^{-s} ∫_D P(x) Li_s(-exp((n·x + d) t)) dx
//! ```
//!
//! in closed form. For `s = 0` this is the integral of `P` over the part of
//! `D` where `n·x + d > 0` (Heaviside weight). For `s = -1` and `|n| = 1` it
//! is the integral of `P` over the interface `n·x + d = 0` (Dirac weight).
//! Higher orders only show up inside the recursions.
//!
//! Reference elements and their basis conventions:
//!
//! | element      | domain                                  | basis                                   |
//! |--------------|-----------------------------------------|-----------------------------------------|
//! | segment      | `[0,1]`                                 | `x^m`                                   |
//! | hypercube    | `[0,1]^dim`                             | `Π x_i^{m_i}`                           |
//! | triangle     | `x,y ≥ 0, x + y ≤ 1`                    | `(1-x)^m y^n`                           |
//! | tetrahedron  | `x,y,z ≥ 0, x + y + z ≤ 1`              | one of three variants, see [`tetrahedron`] |
//! | prism        | triangle × `[-1,1]`, measure `dV/2`     | `(1-x)^m y^n ((1+z)/2)^o`               |

pub mod cli;
pub mod element;
pub mod equiv_poly;
mod error;
pub mod hypercube;
pub mod line_segment;
pub mod oracle;
pub mod polylog;
pub mod prism;
pub mod tetrahedron;
pub mod trace;
pub mod triangle;

pub use element::{integrate, ElementKind, HalfSpaceCut, Integral};
pub use error::{Error, Result};
pub use line_segment::{BoundaryMode, PolyOrder};
pub use tetrahedron::TetVariant;
