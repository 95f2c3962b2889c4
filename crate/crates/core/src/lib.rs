//! Exact integral homology of simplicial complexes, linear Tits buildings,
//! universal modular symbols and the tuple resolution of the Steinberg
//! module.

pub mod building;
pub mod chain;
pub mod error;
pub mod fq;
pub mod harness;
pub mod homology;
pub mod io;
pub mod label;
pub mod matrix;
pub mod oracle;
pub mod report;
pub mod scalar;
pub mod simplicial;
pub mod snf;
pub mod steinberg;
pub mod zlattice;

pub use num_bigint::BigInt;

pub use chain::{ChainComplex, ChainMap, ShortExactSequence, TupleMode};
pub use error::{Error, Result};
pub use homology::{homology, DegreeHomology, HomologyResult};
pub use label::Label;
pub use matrix::SparseMatrix;
pub use scalar::Scalar;
pub use simplicial::{Poset, PosetMap, SimplicialComplex, SimplicialMap};
pub use snf::{smith_normal_form, SnfResult};

pub type IntegerMatrix = SparseMatrix<BigInt>;
pub type IntegerChainComplex = ChainComplex<BigInt>;
pub type IntegerChainMap = ChainMap<BigInt>;
pub type IntegerHomology = HomologyResult<BigInt>;
pub type IntegerSnf = SnfResult<BigInt>;
