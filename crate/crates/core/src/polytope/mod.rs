//! Polytope instantiation over exact rationals.
//!
//! Valuations are convex polytopes inside the unit hypercube. The lower
//! basics are half-spaces, deleted by pairwise resolution of linear
//! restrictions; the upper basics are vertices, combined by minimal-pair
//! search and projected coordinatewise. Conversions in both directions act
//! as cross-checking oracles. All arithmetic is exact; floating point never
//! enters.

mod enumerate;
mod halfspace;
mod linalg;
mod mc;
mod simplex;
mod value;
mod vertex;

pub use enumerate::{facet_recovery, vertex_enumerate, DEFAULT_DIM_LIMIT};
pub use halfspace::{fm_delete, halfspace_leq, prune_parallel, HalfSpace, LinearForm};
pub use mc::{mc_combine, MC_DIM_LIMIT};
pub use value::PolytopeSystem;
pub use vertex::{extreme_points, hull_disjoin, in_hull, VPolytope, Vertex};

pub use num::BigRational as Rat;
