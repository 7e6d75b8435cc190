use std::collections::BTreeSet;

use serde::Serialize;

use crate::category::{ArrIx, Grading, LoopFreeCategory, ObjIx};

use super::field::{FieldError, VectorField};
use super::flow::build_flow_graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BasicSetKind {
    Critical,
    Recurrent,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicSet {
    pub objects: BTreeSet<ObjIx>,
    pub kind: BasicSetKind,
    pub index: usize,
}

impl BasicSet {
    /// Objects of the lowest degree in the set.
    pub fn bottom(&self, grading: &Grading) -> BTreeSet<ObjIx> {
        self.objects
            .iter()
            .copied()
            .filter(|&o| grading.degree(o) == self.index)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorseDecomposition {
    pub basic_sets: Vec<BasicSet>,
    pub chain_recurrent: BTreeSet<ObjIx>,
    pub gradient_part: BTreeSet<ArrIx>,
    pub critical: BTreeSet<ObjIx>,
}

impl MorseDecomposition {
    /// The basic set containing `o`, if any.
    pub fn basic_set_of(&self, o: ObjIx) -> Option<usize> {
        self.basic_sets.iter().position(|b| b.objects.contains(&o))
    }
}

/// Splits the chain recurrent set into basic sets using the strongly
/// connected components of the flow graph.
pub fn basic_sets(
    cat: &LoopFreeCategory,
    grading: &Grading,
    field: &VectorField,
) -> Result<MorseDecomposition, FieldError> {
    let flow = build_flow_graph(cat, field);
    let critical = field.critical_objects(cat);
    let mut sets = Vec::new();
    for comp in flow.strongly_connected_components() {
        if comp.len() == 1 {
            let o = comp[0];
            if !flow.has_self_loop(o) {
                continue;
            }
            debug_assert!(critical.contains(&o));
            sets.push(BasicSet {
                objects: BTreeSet::from([o]),
                kind: BasicSetKind::Critical,
                index: grading.degree(o),
            });
            continue;
        }
        let degrees: BTreeSet<usize> = comp.iter().map(|&o| grading.degree(o)).collect();
        let lo = *degrees.first().unwrap();
        if degrees.len() != 2 || !degrees.contains(&(lo + 1)) {
            return Err(FieldError::MixedIndexComponent {
                objects: comp.iter().map(|&o| cat.object_id(o).to_owned()).collect(),
                degrees: degrees.into_iter().collect(),
            });
        }
        sets.push(BasicSet {
            objects: comp.into_iter().collect(),
            kind: BasicSetKind::Recurrent,
            index: lo,
        });
    }
    sets.sort_by_key(|b| b.objects.first().copied());

    let chain_recurrent: BTreeSet<ObjIx> =
        sets.iter().flat_map(|b| b.objects.iter().copied()).collect();
    let mut gradient_part = BTreeSet::new();
    for &f in field.vectors() {
        let a = cat.arrow(f);
        let (s_in, t_in) = (chain_recurrent.contains(&a.src), chain_recurrent.contains(&a.tgt));
        if !s_in && !t_in && cat.parallel_count(f) == 1 {
            gradient_part.insert(f);
            continue;
        }
        let same_set = sets
            .iter()
            .any(|b| b.objects.contains(&a.src) && b.objects.contains(&a.tgt));
        if !same_set {
            return Err(FieldError::VectorOutsideStructure(a.id.clone()));
        }
    }

    Ok(MorseDecomposition {
        basic_sets: sets,
        chain_recurrent,
        gradient_part,
        critical,
    })
}
