use std::collections::BTreeSet;

use serde::Serialize;

use crate::category::{ArrIx, Grading, LoopFreeCategory, ObjIx};
use crate::homology::{reduced_homology, HomologyProfile, OrderComplex};

use super::decomposition::MorseDecomposition;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CellStatus {
    /// Minimal object: nothing to check.
    Vacuous,
    /// Reduced homology of a wedge of `spheres` spheres of the right dimension.
    Wedge { spheres: usize },
    Failed { reduced: HomologyProfile },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellCheck {
    pub object: String,
    pub degree: usize,
    #[serde(flatten)]
    pub status: CellStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellularityVerdict {
    pub ok: bool,
    pub objects: Vec<CellCheck>,
}

impl CellularityVerdict {
    pub fn failures(&self) -> impl Iterator<Item = &CellCheck> {
        self.objects
            .iter()
            .filter(|c| matches!(c.status, CellStatus::Failed { .. }))
    }
}

/// Requires the reduced homology of every `Û_c` with `c` non-minimal to be
/// free of rank at least one and concentrated in degree `r(c) − 1`.
pub fn check_cellular(cat: &LoopFreeCategory, grading: &Grading) -> CellularityVerdict {
    let objects: Vec<CellCheck> = (0..cat.num_objects())
        .map(|c| CellCheck {
            object: cat.object_id(c).to_owned(),
            degree: grading.degree(c),
            status: cell_status(cat, grading.degree(c), &cat.punctured_under_objects(c)),
        })
        .collect();
    CellularityVerdict {
        ok: !objects
            .iter()
            .any(|c| matches!(c.status, CellStatus::Failed { .. })),
        objects,
    }
}

fn cell_status(cat: &LoopFreeCategory, degree: usize, link: &BTreeSet<ObjIx>) -> CellStatus {
    if link.is_empty() {
        return CellStatus::Vacuous;
    }
    let reduced = reduced_homology(&OrderComplex::of_full_subcategory(cat, link))
        .expect("a non-empty link has a non-empty order complex");
    let top = degree - 1;
    let spheres = reduced.betti(top);
    let concentrated = reduced.is_free()
        && reduced
            .betti
            .iter()
            .enumerate()
            .all(|(k, &b)| k == top || b == 0);
    if concentrated && spheres >= 1 {
        CellStatus::Wedge { spheres }
    } else {
        CellStatus::Failed { reduced }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibilityCheck {
    pub arrow: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibilityVerdict {
    pub ok: bool,
    pub arrows: Vec<AdmissibilityCheck>,
}

impl AdmissibilityVerdict {
    pub fn failures(&self) -> impl Iterator<Item = &AdmissibilityCheck> {
        self.arrows.iter().filter(|c| !c.ok)
    }
}

/// Objects of `Û_{t(f)} − {s(f)}`.
pub fn admissibility_link(cat: &LoopFreeCategory, f: ArrIx) -> BTreeSet<ObjIx> {
    let a = cat.arrow(f);
    let mut link = cat.punctured_under_objects(a.tgt);
    link.remove(&a.src);
    link
}

/// Every gradient arrow `f` needs `Û_{t(f)} − {s(f)}` to be non-empty and
/// acyclic.
pub fn check_admissibility(
    cat: &LoopFreeCategory,
    decomposition: &MorseDecomposition,
) -> AdmissibilityVerdict {
    let arrows: Vec<AdmissibilityCheck> = decomposition
        .gradient_part
        .iter()
        .map(|&f| AdmissibilityCheck {
            arrow: cat.arrow(f).id.clone(),
            ok: crate::homology::is_homologically_trivial_on(cat, &admissibility_link(cat, f)),
        })
        .collect();
    AdmissibilityVerdict {
        ok: arrows.iter().all(|c| c.ok),
        arrows,
    }
}
