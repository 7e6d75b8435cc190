use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::category::{ArrIx, Grading, LoopFreeCategory, ObjIx};
use crate::morse::{admissibility_link, BasicSetKind, MorseDecomposition};

/// Which candidate wins when several steps apply.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TieBreak {
    #[default]
    Lowest,
    Highest,
}

impl TieBreak {
    fn pick<T: Copy>(self, candidates: impl DoubleEndedIterator<Item = T>) -> Option<T> {
        let mut it = candidates;
        match self {
            TieBreak::Lowest => it.next(),
            TieBreak::Highest => it.next_back(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepKind {
    Critical(ObjIx),
    /// Index into the decomposition's basic sets.
    BasicSet(usize),
    GradientPair(ArrIx),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationStep {
    pub kind: StepKind,
    pub added: BTreeSet<ObjIx>,
}

impl FiltrationStep {
    pub fn describe(&self, cat: &LoopFreeCategory) -> String {
        match self.kind {
            StepKind::Critical(c) => format!("Critical({})", cat.object_id(c)),
            StepKind::BasicSet(_) => format!("BasicSet({})", cat.format_objects(&self.added)),
            StepKind::GradientPair(f) => format!("GradientPair({})", cat.arrow(f).id),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiltrationError {
    #[error("filtration stuck after {placed} objects; minimal remaining objects: {frontier:?}")]
    Stuck {
        placed: usize,
        frontier: Vec<String>,
        partial: Vec<String>,
    },
}

/// `C_0 = ∅ ⊂ C_1 ⊂ … ⊂ C_n`, recorded as the objects added at each step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    steps: Vec<FiltrationStep>,
}

impl Filtration {
    pub fn steps(&self) -> &[FiltrationStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Objects of `C_i`; `level(0)` is empty.
    pub fn level(&self, i: usize) -> BTreeSet<ObjIx> {
        self.steps[..i]
            .iter()
            .flat_map(|s| s.added.iter().copied())
            .collect()
    }

    /// All levels `C_0, …, C_n`.
    pub fn levels(&self) -> Vec<BTreeSet<ObjIx>> {
        let mut acc = BTreeSet::new();
        let mut out = vec![acc.clone()];
        for s in &self.steps {
            acc.extend(s.added.iter().copied());
            out.push(acc.clone());
        }
        out
    }

    pub fn describe(&self, cat: &LoopFreeCategory) -> Vec<String> {
        self.steps.iter().map(|s| s.describe(cat)).collect()
    }

    /// Builds a filtration from explicit steps without any checks, for
    /// regression tests of the verifiers.
    pub fn from_steps_unchecked(steps: Vec<FiltrationStep>) -> Self {
        Self { steps }
    }
}

/// Adds, at each stage, a critical object minimal among the remaining ones;
/// failing that, a whole recurrent basic set whose lower link is already
/// placed; failing that, a gradient pair whose target's link is placed.
pub fn build_filtration(
    cat: &LoopFreeCategory,
    grading: &Grading,
    decomposition: &MorseDecomposition,
    tie: TieBreak,
) -> Result<Filtration, FiltrationError> {
    let n = cat.num_objects();
    let mut placed = vec![false; n];
    let mut count = 0;
    let mut steps = Vec::new();

    let lower_links: Vec<BTreeSet<ObjIx>> = decomposition
        .basic_sets
        .iter()
        .map(|b| {
            b.objects
                .iter()
                .flat_map(|&c| cat.punctured_under_objects(c))
                .filter(|o| !b.objects.contains(o))
                .collect()
        })
        .collect();

    while count < n {
        let minimal: BTreeSet<ObjIx> = (0..n)
            .filter(|&o| !placed[o] && cat.in_arrows(o).iter().all(|&a| placed[cat.arrow(a).src]))
            .collect();

        let critical = tie.pick(
            minimal
                .iter()
                .copied()
                .filter(|o| decomposition.critical.contains(o)),
        );
        let step = if let Some(c) = critical {
            Some(FiltrationStep {
                kind: StepKind::Critical(c),
                added: BTreeSet::from([c]),
            })
        } else {
            let ready: Vec<usize> = decomposition
                .basic_sets
                .iter()
                .enumerate()
                .filter(|(i, b)| {
                    b.kind == BasicSetKind::Recurrent
                        && !placed[*b.objects.first().unwrap()]
                        && lower_links[*i].iter().all(|&o| placed[o])
                        && b.bottom(grading).iter().any(|o| minimal.contains(o))
                })
                .map(|(i, _)| i)
                .collect();
            if let Some(i) = tie.pick(ready.into_iter()) {
                Some(FiltrationStep {
                    kind: StepKind::BasicSet(i),
                    added: decomposition.basic_sets[i].objects.clone(),
                })
            } else {
                let gradient = tie.pick(decomposition.gradient_part.iter().copied().filter(|&f| {
                    let a = cat.arrow(f);
                    minimal.contains(&a.src)
                        && !placed[a.tgt]
                        && admissibility_link(cat, f).iter().all(|&o| placed[o])
                }));
                gradient.map(|f| FiltrationStep {
                    kind: StepKind::GradientPair(f),
                    added: BTreeSet::from([cat.arrow(f).src, cat.arrow(f).tgt]),
                })
            }
        };

        let Some(step) = step else {
            return Err(FiltrationError::Stuck {
                placed: count,
                frontier: minimal.iter().map(|&o| cat.object_id(o).to_owned()).collect(),
                partial: steps.iter().map(|s: &FiltrationStep| s.describe(cat)).collect(),
            });
        };
        for &o in &step.added {
            debug_assert!(!placed[o]);
            placed[o] = true;
            count += 1;
        }
        debug_assert!(step
            .added
            .iter()
            .all(|&o| cat.in_arrows(o).iter().all(|&a| placed[cat.arrow(a).src])));
        steps.push(step);
    }
    Ok(Filtration { steps })
}
