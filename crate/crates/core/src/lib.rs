//! Exact-arithmetic antisymmetric colorings of rational point sets.
//!
//! A coloring `f` of a set `A ⊆ ℚ` is *uniformly antisymmetric at desk scale*
//! when every `x ∈ A` owns a positive gap `d(x)` such that `f(x−h) ≠ f(x+h)`
//! whenever `0 < h < d(x)` and both mirror points lie in `A`. This crate builds
//! such colorings four different ways, each paired with a brute-force oracle
//! that checks the claimed properties exhaustively at small sizes:
//!
//! * [`reflection`] — nested reflection-closed interval systems over a finite
//!   enumerated point set, two-colored through an orbit graph.
//! * [`pair_coding`] — a greedy dyadic-interval coloring of index pairs whose
//!   order-isomorphism fingerprint determines a set union uniquely.
//! * [`hamel`] — injective codes for sparse rational vectors that let `x + y`
//!   be split back into `{x, y}` when the codes of `x` and `y` agree.
//! * [`factorial`] — the factorial-denominator level hierarchy on ℚ⁺ whose
//!   slice graphs are bipartite, giving a 4-coloring of ℚ with finite
//!   mirror-collision sets.
//! * [`bounds`] — combinatorial patterns bounding how large those collision
//!   sets must get: many-decomposition index patterns and monochromatic-chain
//!   searches over small difference colorings.
//!
//! Everything is exact: points are arbitrary-precision rationals
//! ([`Rational`]), codes are arbitrary-precision naturals ([`NatCode`]), and
//! no floating point appears anywhere in a proof-bearing path.

pub mod bounds;
pub mod codes;
pub mod dyadic;
pub mod error;
pub mod factorial;
pub mod hamel;
pub mod pair_coding;
pub mod rational;
pub mod reflection;

pub use bounds::{
    decomposition_pattern, exhaustive_ramsey, max_decompositions, DecompositionMax,
    DecompositionPattern, DifferenceColoring, RamseyScan, VectorPattern,
};
pub use codes::NatCode;
pub use dyadic::DyadicInterval;
pub use error::{Error, Result};
pub use factorial::{LevelColoring, MidpointGraph, SxCertificate, SxViolation, WitnessSide};
pub use hamel::{
    coefficient_window, f_code, recover_pair, verify_thm3, SumCollisionReport, SumWitness,
    VectorCode, VectorQ,
};
pub use pair_coding::{scan_all_unions, CodingContext, TypeCode, UnionScanReport};
pub use rational::Rational;
pub use reflection::{
    verify_antisymmetric, AntisymmetricColoring, AntisymmetryViolation, CenteredInterval,
    IntervalSystem,
};
