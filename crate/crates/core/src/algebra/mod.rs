//! Quivers with relations, structure-constant algebras, radicals and embeddings.

mod embedding;
mod quiver;
mod radical;
mod sc;

pub use embedding::{Embedding, IdealWitness, IdealizedVerdict};
pub use quiver::{Arrow, Path, Quiver, QuiverAlgebra, Relation, DEFAULT_DEGREE_CAP};
pub use radical::{radical_by_enumeration, radical_sc, ENUMERATION_LIMIT};
pub use sc::{Idempotents, ProjectiveData, SCAlgebra};
