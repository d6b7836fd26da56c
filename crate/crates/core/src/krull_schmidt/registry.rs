use std::sync::Arc;

use serde::Serialize;

use crate::algebra::SCAlgebra;
use crate::error::{Error, Result};
use crate::module::{hom_basis, same_algebra, ActionModule};

use super::{fingerprint, indecomposables_isomorphic, Fingerprint};

#[derive(Clone, Debug)]
pub struct RegistryEntry {
    pub id: usize,
    pub module: ActionModule,
    pub fingerprint: Fingerprint,
    pub end_dim: usize,
    pub top_dim: Option<usize>,
    pub socle_dim: Option<usize>,
}

/// Pairwise non-isomorphic indecomposables with stable ids.
#[derive(Clone, Debug)]
pub struct Registry {
    alg: Arc<SCAlgebra>,
    entries: Vec<RegistryEntry>,
    pub complete: bool,
}

#[derive(Serialize)]
struct EntryJson<'a> {
    id: usize,
    dim_vector: &'a [usize],
    fingerprint: &'a Fingerprint,
    end_dim: usize,
    top_dim: Option<usize>,
    socle_dim: Option<usize>,
    actions: Vec<Vec<Vec<u32>>>,
}

impl Registry {
    pub fn new(alg: Arc<SCAlgebra>) -> Self {
        Registry {
            alg,
            entries: Vec::new(),
            complete: false,
        }
    }

    pub fn alg(&self) -> &Arc<SCAlgebra> {
        &self.alg
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[RegistryEntry] {
        &self.entries
    }

    pub fn modules(&self) -> Vec<ActionModule> {
        self.entries.iter().map(|e| e.module.clone()).collect()
    }

    /// Id of the entry isomorphic to the indecomposable `x`.
    pub fn find(&self, x: &ActionModule) -> Result<Option<usize>> {
        if !same_algebra(&self.alg, x.alg()) {
            return Err(Error::AlgebraMismatch);
        }
        let fp = fingerprint(x);
        for e in &self.entries {
            if e.fingerprint == fp && indecomposables_isomorphic(&e.module, x)?.is_some() {
                return Ok(Some(e.id));
            }
        }
        Ok(None)
    }

    /// Inserts an indecomposable unless an isomorphic entry exists; returns its id and whether it was new.
    pub fn insert(&mut self, x: ActionModule) -> Result<(usize, bool)> {
        if let Some(id) = self.find(&x)? {
            return Ok((id, false));
        }
        let x = x.rebase(&self.alg)?;
        let id = self.entries.len();
        let end_dim = hom_basis(&x, &x)?.len();
        let (top_dim, socle_dim) = if self.alg.radical().is_some() {
            (
                Some(x.dim() - x.radical_submodule()?.cols()),
                Some(x.socle_submodule()?.cols()),
            )
        } else {
            (None, None)
        };
        self.entries.push(RegistryEntry {
            id,
            fingerprint: fingerprint(&x),
            module: x,
            end_dim,
            top_dim,
            socle_dim,
        });
        Ok((id, true))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<EntryJson> = self
            .entries
            .iter()
            .map(|e| EntryJson {
                id: e.id,
                dim_vector: &e.fingerprint.dim_vector,
                fingerprint: &e.fingerprint,
                end_dim: e.end_dim,
                top_dim: e.top_dim,
                socle_dim: e.socle_dim,
                actions: e.module.actions().iter().map(|m| m.to_rows()).collect(),
            })
            .collect();
        serde_json::json!({
            "field": self.alg.p(),
            "algebra": self.alg.fingerprint(),
            "complete": self.complete,
            "classes": entries,
        })
    }
}
