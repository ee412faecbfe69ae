//! Instance generators: hardness constructions with known answers and random fragments.

mod graphs;
mod random;

pub use graphs::{
    gen_gap, gen_hgap, gen_one_in_three, one_in_three_satisfiable, random_3cnf, Clause, Digraph,
    HyperEdge, Hypergraph, Literal,
};
pub use random::{gen_random, random_instance, standard_operators, Profile, SizeParams};
