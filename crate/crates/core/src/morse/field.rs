use std::collections::BTreeSet;

use thiserror::Error;

use crate::category::{ArrIx, Grading, LoopFreeCategory, ObjIx};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("unknown arrow `{0}` in vector field")]
    UnknownArrow(String),
    #[error("`{0}` is not an indecomposable arrow")]
    NotIndecomposable(String),
    #[error("condition 1 violated: `{object}` is the target of vector `{incoming}` and the source of vector `{outgoing}`")]
    SourceTargetClash {
        object: String,
        incoming: String,
        outgoing: String,
    },
    #[error("condition 2 violated: `{vector}` is the only arrow of its type but shares its {end} `{object}` with vector `{other}`")]
    UniquenessViolation {
        vector: String,
        other: String,
        object: String,
        end: &'static str,
    },
    #[error("condition 3 violated: all {count} arrows {src} -> {tgt} are vectors")]
    FullParallelClass {
        src: String,
        tgt: String,
        count: usize,
    },
    #[error("basic set {objects:?} spans degrees {degrees:?}, not two consecutive ones")]
    MixedIndexComponent {
        objects: Vec<String>,
        degrees: Vec<usize>,
    },
    #[error("vector `{0}` lies in no basic set and is not in the gradient-like part")]
    VectorOutsideStructure(String),
}

/// A validated set of vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorField {
    vectors: BTreeSet<ArrIx>,
}

impl VectorField {
    pub fn vectors(&self) -> &BTreeSet<ArrIx> {
        &self.vectors
    }

    pub fn contains(&self, a: ArrIx) -> bool {
        self.vectors.contains(&a)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Objects touched by no vector.
    pub fn critical_objects(&self, cat: &LoopFreeCategory) -> BTreeSet<ObjIx> {
        let touched: BTreeSet<ObjIx> = self
            .vectors
            .iter()
            .flat_map(|&a| [cat.arrow(a).src, cat.arrow(a).tgt])
            .collect();
        (0..cat.num_objects()).filter(|o| !touched.contains(o)).collect()
    }

    pub fn ids(&self, cat: &LoopFreeCategory) -> Vec<String> {
        self.vectors.iter().map(|&a| cat.arrow(a).id.clone()).collect()
    }
}

/// Resolves arrow ids and validates them as a vector field.
pub fn vector_field_from_ids<S: AsRef<str>>(
    cat: &LoopFreeCategory,
    grading: &Grading,
    ids: &[S],
) -> Result<VectorField, FieldError> {
    let candidate = ids
        .iter()
        .map(|id| {
            cat.arrow_index(id.as_ref())
                .ok_or_else(|| FieldError::UnknownArrow(id.as_ref().to_owned()))
        })
        .collect::<Result<BTreeSet<_>, _>>()?;
    validate_vector_field(cat, grading, &candidate)
}

/// Checks, in order: every element is indecomposable; no object is both a
/// source and a target of vectors; an arrow alone in its hom-set is the only
/// vector at its source and at its target; and a hom-set with several arrows
/// is never entirely made of vectors.
///
/// The grading is required as evidence that the category is graded.
pub fn validate_vector_field(
    cat: &LoopFreeCategory,
    grading: &Grading,
    candidate: &BTreeSet<ArrIx>,
) -> Result<VectorField, FieldError> {
    for &f in candidate {
        if f >= cat.num_arrows() {
            return Err(FieldError::UnknownArrow(format!("#{f}")));
        }
        if !cat.is_indecomposable(f) {
            return Err(FieldError::NotIndecomposable(cat.arrow(f).id.clone()));
        }
        let a = cat.arrow(f);
        debug_assert_eq!(grading.degree(a.tgt), grading.degree(a.src) + 1);
    }

    for &g in candidate {
        let object = cat.arrow(g).tgt;
        if let Some(&f) = candidate.iter().find(|&&f| cat.arrow(f).src == object) {
            return Err(FieldError::SourceTargetClash {
                object: cat.object_id(object).to_owned(),
                incoming: cat.arrow(g).id.clone(),
                outgoing: cat.arrow(f).id.clone(),
            });
        }
    }

    for &f in candidate {
        if cat.parallel_count(f) != 1 {
            continue;
        }
        let a = cat.arrow(f);
        for &g in candidate {
            if g == f {
                continue;
            }
            let b = cat.arrow(g);
            let clash = if b.src == a.src {
                Some(("source", a.src))
            } else if b.tgt == a.tgt {
                Some(("target", a.tgt))
            } else {
                None
            };
            if let Some((end, object)) = clash {
                return Err(FieldError::UniquenessViolation {
                    vector: a.id.clone(),
                    other: b.id.clone(),
                    object: cat.object_id(object).to_owned(),
                    end,
                });
            }
        }
    }

    for &f in candidate {
        let a = cat.arrow(f);
        let count = cat.parallel_count(f);
        if count > 1 && cat.hom(a.src, a.tgt).all(|g| candidate.contains(&g)) {
            return Err(FieldError::FullParallelClass {
                src: cat.object_id(a.src).to_owned(),
                tgt: cat.object_id(a.tgt).to_owned(),
                count,
            });
        }
    }

    Ok(VectorField {
        vectors: candidate.clone(),
    })
}
