//! Coxeter groups from Coxeter graphs, the Coxeter quandle of reflections,
//! the root-system rack, and the adjoint group realized as an explicit
//! central extension of W by Z^{c(W)} with computable 2-cocycles.
//!
//! Everything is exact: group elements are ShortLex canonical words, the
//! central coordinates are integers, and the only floating point lives in
//! root coordinates behind a checked snap tolerance.

pub mod adjoint;
pub mod checks;
pub mod engine;
pub mod graph;
mod linalg;
pub mod quandle;
pub mod rootsys;

pub use engine::{Engine, EngineConfig, EngineError, GroupElement, GroupTable};
pub use graph::{catalog, odd_components, parse_graph, Bond, CoxeterMatrix, GraphError, OddComponents, Word};
pub use rootsys::{build_root_system, BilinearForm, RootError, RootSystem};

use adjoint::AdjointModel;
use std::sync::Arc;

/// One Coxeter system wired up: matrix, odd components, the best available
/// engine, and the root system when it is finite.
pub struct CoxeterSystem {
    odd: OddComponents,
    engine: Engine,
    roots: Option<Arc<RootSystem>>,
}

impl CoxeterSystem {
    /// Build with automatic engine selection: permutation-backed when the
    /// root system closes under the configured cap, word-backed otherwise.
    pub fn new(matrix: CoxeterMatrix, config: EngineConfig) -> Result<Self, RootError> {
        let odd = odd_components(&matrix);
        let (engine, roots) = Engine::auto(matrix, config)?;
        Ok(CoxeterSystem { odd, engine, roots })
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        self.engine.matrix()
    }

    pub fn odd(&self) -> &OddComponents {
        &self.odd
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    /// The root system, when finite under the configured cap. `None` means
    /// W is infinite (or far beyond desk scale).
    pub fn roots(&self) -> Option<&Arc<RootSystem>> {
        self.roots.as_ref()
    }

    pub fn adjoint(&self) -> AdjointModel<'_> {
        AdjointModel::new(&self.engine, &self.odd)
    }

    /// Parse and canonicalize a word given as space-separated labels.
    pub fn element_from_text(&self, text: &str) -> Result<GroupElement, ElementParseError> {
        let word = self.matrix().parse_word(text)?;
        Ok(self.engine.canonicalize(&word)?)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ElementParseError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}
