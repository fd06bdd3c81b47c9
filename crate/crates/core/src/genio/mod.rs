//! Instance sources and sinks: the text format, synthetic chains with known
//! ground truth, and protein backbones read from PDB files.

mod format;
mod pdb;
mod synthetic;

use thiserror::Error;

use crate::instance::{Edge, InstanceError};

pub use format::{read_instance, read_realization, write_instance, write_realization};
pub use pdb::{
    build_instance, parse_pdb, AtomRecord, BackboneInstance, DegeneracyWarning, RawStructure,
};
pub use synthetic::{
    generate_synthetic, generate_with, PruningPattern, SyntheticConfig, SyntheticInstance,
};

#[derive(Debug, Error)]
pub enum GenioError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown directive `{directive}`")]
    UnknownDirective { line: usize, directive: String },
    #[error("no edges")]
    NoEdges,
    #[error("line {line}: duplicate edge {edge}")]
    DuplicateEdge { line: usize, edge: Edge },
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error("no backbone atoms (N, CA, C) found")]
    EmptyStructure,
    #[error("PDB line {line}: {message}")]
    Pdb { line: usize, message: String },
    #[error("could not place vertex {vertex} after {attempts} attempts; try another seed")]
    Generation { vertex: usize, attempts: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
}
