//! Independent oracles: the representation polytope, an exact simplex,
//! vertex enumeration, the extremality check for the comonotone
//! representation and seeded instance generators.

mod generate;
mod linalg;
mod polytope;
mod prop1;
mod simplex;
mod vertices;

pub use generate::{gen_random, sample_types, GenMode, Generated, InstanceShape};
pub use polytope::{
    build_polytope, extremal_mass, feasible_on_support, Certificate, Equality, ExtremalResult, PolytopeSolver,
    PolytopeSpec, Sense, Target,
};
pub use prop1::{verify_prop1, Prop1Failure, Prop1Report};
pub use vertices::{enumerate_representations, VERTEX_TYPE_CAP};
