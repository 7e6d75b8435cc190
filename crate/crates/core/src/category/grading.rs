use super::{CategoryError, LoopFreeCategory, ObjIx};

/// Degree function on the objects of a graded loop-free category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grading {
    degrees: Vec<usize>,
}

impl Grading {
    pub fn degree(&self, o: ObjIx) -> usize {
        self.degrees[o]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.degrees.iter().copied().max()
    }
}

/// Assigns each object the length of a longest chain of indecomposable
/// arrows ending at it, then checks that every indecomposable arrow raises
/// the degree by exactly one.
pub fn compute_grading(cat: &LoopFreeCategory) -> Result<Grading, CategoryError> {
    let mut degrees = vec![0usize; cat.num_objects()];
    for o in cat.topological_order() {
        for &a in cat.out_arrows(o) {
            if cat.is_indecomposable(a) {
                let t = cat.arrow(a).tgt;
                degrees[t] = degrees[t].max(degrees[o] + 1);
            }
        }
    }
    for a in cat.indecomposable_arrows() {
        let arrow = cat.arrow(a);
        if degrees[arrow.tgt] != degrees[arrow.src] + 1 {
            return Err(CategoryError::NotGraded {
                arrow: arrow.id.clone(),
                src_degree: degrees[arrow.src],
                tgt_degree: degrees[arrow.tgt],
            });
        }
    }
    Ok(Grading { degrees })
}
