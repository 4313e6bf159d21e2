//! Instance transformers between tape reconfiguration, its synchronized and
//! multi-tape variants, and dominating-set reconfiguration.
//!
//! Every constructor returns an [`Artifact`]: the produced instance together
//! with a record of how it was built, which [`derive_decomposition`] uses to
//! rebuild the explicit tree decomposition that accompanies the construction.

mod compose;
mod decompose;
mod desync;
mod dsr;
mod select;
mod stars;
mod w2;

pub use compose::{and_compose, formula_to_multi, or_compose, Formula, NormalizedFormula};
pub use decompose::{base_decomposition, derive_decomposition, derive_dsr_decomposition};
pub use desync::{desynchronize_path, desynchronize_path_multi, desynchronize_triangle};
pub use dsr::{check_min_ds_structure, tape_to_tj_cdsr, tape_to_ts_dsr, VertexRole};
pub use select::select_from_tuples;
pub use stars::partitioned_dsr_to_sync_stars;
pub use w2::{ds_to_sync_multi, w2_template};

use serde::{Deserialize, Serialize};

/// Which construction produced an artifact, with the parameters the explicit
/// decompositions need.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "construction", rename_all = "camelCase")]
pub enum Provenance {
    Input,
    #[serde(rename_all = "camelCase")]
    DsToSyncMulti {
        n: usize,
        k: usize,
        r: u32,
    },
    #[serde(rename_all = "camelCase")]
    PartitionedStars {
        n: usize,
        k: usize,
        m: usize,
    },
    #[serde(rename_all = "camelCase")]
    TriangleDesync {
        parent: Box<Provenance>,
        parent_sigma: usize,
        parent_tapes: usize,
    },
    #[serde(rename_all = "camelCase")]
    PathDesync {
        parent: Box<Provenance>,
        parent_sigma: usize,
        parent_tapes: usize,
    },
    #[serde(rename_all = "camelCase")]
    Selector {
        k: usize,
        parent_sigma: usize,
    },
    #[serde(rename_all = "camelCase")]
    AndCompose {
        parts: usize,
        k: usize,
    },
    #[serde(rename_all = "camelCase")]
    OrCompose {
        parts: usize,
        k: usize,
    },
    #[serde(rename_all = "camelCase")]
    Formula {
        depth: usize,
        k: usize,
        variables: usize,
    },
    #[serde(rename_all = "camelCase")]
    TapeToTsDsr {
        parent: Box<Provenance>,
        tapes: usize,
    },
    #[serde(rename_all = "camelCase")]
    TapeToTjCdsr {
        parent: Box<Provenance>,
        tapes: usize,
        padding: Vec<usize>,
    },
}

impl Provenance {
    pub fn name(&self) -> &'static str {
        match self {
            Provenance::Input => "input",
            Provenance::DsToSyncMulti { .. } => "dsToSyncMulti",
            Provenance::PartitionedStars { .. } => "partitionedStars",
            Provenance::TriangleDesync { .. } => "triangleDesync",
            Provenance::PathDesync { .. } => "pathDesync",
            Provenance::Selector { .. } => "selector",
            Provenance::AndCompose { .. } => "andCompose",
            Provenance::OrCompose { .. } => "orCompose",
            Provenance::Formula { .. } => "formula",
            Provenance::TapeToTsDsr { .. } => "tapeToTsDsr",
            Provenance::TapeToTjCdsr { .. } => "tapeToTjCdsr",
        }
    }

    /// Replaces the innermost `Input` parent by `parent`, chaining two
    /// constructions.
    pub fn rebased(&self, parent: &Provenance) -> Provenance {
        let re = |p: &Provenance| Box::new(p.rebased(parent));
        match self {
            Provenance::Input => parent.clone(),
            Provenance::TriangleDesync {
                parent: p,
                parent_sigma,
                parent_tapes,
            } => Provenance::TriangleDesync {
                parent: re(p),
                parent_sigma: *parent_sigma,
                parent_tapes: *parent_tapes,
            },
            Provenance::PathDesync {
                parent: p,
                parent_sigma,
                parent_tapes,
            } => Provenance::PathDesync {
                parent: re(p),
                parent_sigma: *parent_sigma,
                parent_tapes: *parent_tapes,
            },
            Provenance::TapeToTsDsr { parent: p, tapes } => Provenance::TapeToTsDsr {
                parent: re(p),
                tapes: *tapes,
            },
            Provenance::TapeToTjCdsr {
                parent: p,
                tapes,
                padding,
            } => Provenance::TapeToTjCdsr {
                parent: re(p),
                tapes: *tapes,
                padding: padding.clone(),
            },
            other => other.clone(),
        }
    }
}

/// A letter introduced by a construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreshLetter {
    pub id: usize,
    pub role: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Artifact<T> {
    pub instance: T,
    pub provenance: Provenance,
    pub fresh_letters: Vec<FreshLetter>,
}

impl<T> Artifact<T> {
    pub fn input(instance: T) -> Self {
        Artifact {
            instance,
            provenance: Provenance::Input,
            fresh_letters: Vec::new(),
        }
    }

    /// Records that this artifact was built from one produced by `parent`.
    pub fn after(mut self, parent: &Provenance) -> Self {
        self.provenance = self.provenance.rebased(parent);
        self
    }
}

/// Monotone letter allocator; every fresh letter gets a recorded role.
pub(crate) struct Letters {
    next: usize,
    table: Vec<FreshLetter>,
}

impl Letters {
    pub fn starting_at(next: usize) -> Self {
        Letters {
            next,
            table: Vec::new(),
        }
    }

    pub fn fresh(&mut self, role: impl Into<String>) -> usize {
        let id = self.next;
        self.next += 1;
        self.table.push(FreshLetter { id, role: role.into() });
        id
    }

    pub fn count(&self) -> usize {
        self.next
    }

    pub fn into_table(self) -> Vec<FreshLetter> {
        self.table
    }
}
