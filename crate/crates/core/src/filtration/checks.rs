use std::collections::BTreeSet;

use serde::Serialize;

use crate::category::{LoopFreeCategory, ObjIx};
use crate::homology::{alternating_sum, relative_homology_of, subcategory_homology, HomologyProfile};
use crate::morse::{BasicSet, MorseDecomposition};

use super::build::{Filtration, StepKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollapseCheck {
    pub step: usize,
    pub arrow: String,
    pub before: HomologyProfile,
    pub after: HomologyProfile,
    pub ok: bool,
}

/// Compares the homology of `C_i` and `C_{i+1}` across every gradient pair
/// step. Equal profiles do not certify that the inclusion induces the
/// isomorphism, only that the groups agree.
pub fn verify_collapsing(cat: &LoopFreeCategory, filtration: &Filtration) -> Vec<CollapseCheck> {
    let levels = filtration.levels();
    filtration
        .steps()
        .iter()
        .enumerate()
        .filter_map(|(i, step)| match step.kind {
            StepKind::GradientPair(f) => {
                let before = subcategory_homology(cat, &levels[i]);
                let after = subcategory_homology(cat, &levels[i + 1]);
                Some(CollapseCheck {
                    step: i,
                    arrow: cat.arrow(f).id.clone(),
                    ok: before.agrees_with(&after),
                    before,
                    after,
                })
            }
            _ => None,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExcisionCheck {
    pub step: usize,
    pub objects: Vec<String>,
    pub filtration_pair: HomologyProfile,
    pub basic_set_pair: HomologyProfile,
    pub ok: bool,
}

/// Closure `Λ̄ = ∪_{d∈Λ} U_d` and boundary `Λ̇ = Λ̄ − Λ`.
pub fn closure_and_boundary(
    cat: &LoopFreeCategory,
    set: &BTreeSet<ObjIx>,
) -> (BTreeSet<ObjIx>, BTreeSet<ObjIx>) {
    let closure: BTreeSet<ObjIx> = set.iter().flat_map(|&d| cat.under_objects(d)).collect();
    let boundary = closure.difference(set).copied().collect();
    (closure, boundary)
}

/// `H(Λ̄, Λ̇)` for one basic set.
pub fn basic_set_homology(cat: &LoopFreeCategory, set: &BasicSet) -> HomologyProfile {
    let (closure, boundary) = closure_and_boundary(cat, &set.objects);
    relative_homology_of(cat, &closure, &boundary).expect("closure contains its boundary")
}

/// For every basic set step, compares `H(C_{i+1}, C_i)` with `H(Λ̄, Λ̇)`.
pub fn verify_excision(
    cat: &LoopFreeCategory,
    filtration: &Filtration,
    decomposition: &MorseDecomposition,
) -> Vec<ExcisionCheck> {
    let levels = filtration.levels();
    filtration
        .steps()
        .iter()
        .enumerate()
        .filter_map(|(i, step)| {
            let set = match step.kind {
                StepKind::BasicSet(b) => &decomposition.basic_sets[b],
                StepKind::Critical(c) => {
                    &decomposition.basic_sets[decomposition.basic_set_of(c)?]
                }
                StepKind::GradientPair(_) => return None,
            };
            let filtration_pair = relative_homology_of(cat, &levels[i + 1], &levels[i])
                .expect("levels are nested");
            let basic_set_pair = basic_set_homology(cat, set);
            Some(ExcisionCheck {
                step: i,
                objects: set.objects.iter().map(|&o| cat.object_id(o).to_owned()).collect(),
                ok: filtration_pair.agrees_with(&basic_set_pair),
                filtration_pair,
                basic_set_pair,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorseNumbers {
    pub m: Vec<usize>,
    /// `H(Λ̄, Λ̇)` per basic set, in decomposition order.
    pub contributions: Vec<HomologyProfile>,
}

/// `m_k = Σ_Λ rank H_k(Λ̄, Λ̇)`.
pub fn morse_numbers(cat: &LoopFreeCategory, decomposition: &MorseDecomposition) -> MorseNumbers {
    let contributions: Vec<HomologyProfile> = decomposition
        .basic_sets
        .iter()
        .map(|b| basic_set_homology(cat, b))
        .collect();
    let len = contributions.iter().map(|h| h.betti.len()).max().unwrap_or(0);
    let mut m = vec![0; len];
    for h in &contributions {
        for (k, &b) in h.betti.iter().enumerate() {
            m[k] += b;
        }
    }
    trim_trailing_zeros(&mut m);
    MorseNumbers { m, contributions }
}

fn trim_trailing_zeros(v: &mut Vec<usize>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Inequalities {
    pub m: Vec<usize>,
    pub b: Vec<usize>,
    pub strong_ok: Vec<bool>,
    pub weak_ok: Vec<bool>,
    pub euler_m: i64,
    pub euler_b: i64,
    pub euler_ok: bool,
}

impl Inequalities {
    pub fn all_ok(&self) -> bool {
        self.euler_ok && self.strong_ok.iter().all(|&x| x) && self.weak_ok.iter().all(|&x| x)
    }
}

/// Strong inequalities `Σ_{j≤k} (−1)^{k−j} m_j ≥ Σ_{j≤k} (−1)^{k−j} b_j`,
/// weak inequalities `m_k ≥ b_k`, and equality of Euler characteristics.
/// Both vectors are zero-padded to `min_len` and to each other's length.
pub fn morse_inequalities(m: &[usize], b: &[usize], min_len: usize) -> Inequalities {
    let len = m.len().max(b.len()).max(min_len);
    let pad = |v: &[usize]| {
        let mut out = v.to_vec();
        out.resize(len, 0);
        out
    };
    let (m, b) = (pad(m), pad(b));
    let mut strong_ok = Vec::with_capacity(len);
    let (mut sm, mut sb) = (0i64, 0i64);
    for k in 0..len {
        sm = m[k] as i64 - sm;
        sb = b[k] as i64 - sb;
        strong_ok.push(sm >= sb);
    }
    let weak_ok = (0..len).map(|k| m[k] >= b[k]).collect();
    let (euler_m, euler_b) = (alternating_sum(&m), alternating_sum(&b));
    Inequalities {
        m,
        b,
        strong_ok,
        weak_ok,
        euler_m,
        euler_b,
        euler_ok: euler_m == euler_b,
    }
}
