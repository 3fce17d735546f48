//! Combinatorics of intermediate compactly generated t-structures over a
//! commutative noetherian ring, computed on finite posets standing in for
//! the prime spectrum.
//!
//! * [`poset`]: finite posets, upper (specialisation-closed) sets, heights.
//! * [`filtration`]: bounded sp-filtrations, bounded poset homomorphisms,
//!   the bijection between them and t-function recognition.
//! * [`mutation`]: right mutation at upper sets and decomposition into
//!   iterated mutations of a constant function.
//! * [`graph`]: the mutation graph of all functions valued in a window.
//! * [`spec_z`]: the same calculus carried out symbolically on Spec(ℤ).
//! * [`cli`]: the `spmut` command-line front end.

pub mod cli;
pub mod error;
pub mod filtration;
pub mod format;
pub mod graph;
pub mod mutation;
pub mod poset;
pub mod spec_z;

pub use error::{Error, Result};
pub use filtration::{
    filtration_to_function, function_to_filtration, is_t_function, make_filtration, PosetHom,
    SpFiltration, TFunction,
};
pub use graph::{build_mutation_graph, graph_to_dot, reachable_t_functions, MutationGraph};
pub use mutation::{
    apply_mutation_sequence, check_mutability, decompose_to_mutations, invert_mutation,
    mutate_filtration, mutate_function, mutate_function_at, MutationSequence,
};
pub use poset::{
    build_poset, enumerate_upper_sets, generate_poset, height_function, is_upper_set,
    upper_closure, Family, PosetRef, PrimePoset, Subset, UpperSet,
};
pub use spec_z::{
    is_z_tfunction, mutate_z, truncate_z, truncate_zupper, zset_algebra, ZPosetHom, ZPrimeSet,
    ZSetOp, ZTFunction, ZUpperSet,
};
