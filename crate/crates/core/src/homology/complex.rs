use std::collections::{BTreeSet, HashMap};

use crate::category::{ArrIx, LoopFreeCategory, ObjIx};

use super::matrix::IntMatrix;

/// A simplex of the order complex: a composable chain of non-identity arrows
/// starting at `base`. Zero-dimensional simplices have no arrows.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub base: ObjIx,
    pub arrows: Vec<ArrIx>,
}

impl Simplex {
    pub fn dim(&self) -> usize {
        self.arrows.len()
    }

    /// The objects visited by the chain, in order.
    pub fn vertices<'a>(&'a self, cat: &'a LoopFreeCategory) -> impl Iterator<Item = ObjIx> + 'a {
        std::iter::once(self.base).chain(self.arrows.iter().map(|&a| cat.arrow(a).tgt))
    }

    fn key(&self) -> (&[ArrIx], ObjIx) {
        (&self.arrows, self.base)
    }
}

/// The order complex of a loop-free category (or of a full subcategory of
/// it): all composable chains of non-identity arrows, by dimension.
#[derive(Debug, Clone)]
pub struct OrderComplex<'c> {
    cat: &'c LoopFreeCategory,
    cells: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

impl<'c> OrderComplex<'c> {
    pub fn new(cat: &'c LoopFreeCategory, max_dim: Option<usize>) -> Self {
        Self::build(cat, None, max_dim)
    }

    /// The order complex of the full subcategory on `keep`, with simplices
    /// expressed in the arrows of `cat`.
    pub fn of_full_subcategory(cat: &'c LoopFreeCategory, keep: &BTreeSet<ObjIx>) -> Self {
        let mut mask = vec![false; cat.num_objects()];
        for &o in keep {
            mask[o] = true;
        }
        Self::build(cat, Some(&mask), None)
    }

    fn build(cat: &'c LoopFreeCategory, mask: Option<&[bool]>, max_dim: Option<usize>) -> Self {
        let inside = |o: ObjIx| mask.is_none_or(|m| m[o]);
        let mut cells: Vec<Vec<Simplex>> = Vec::new();
        let points: Vec<Simplex> = (0..cat.num_objects())
            .filter(|&o| inside(o))
            .map(|o| Simplex {
                base: o,
                arrows: Vec::new(),
            })
            .collect();
        if !points.is_empty() {
            cells.push(points);
        }
        while let Some(last) = cells.last() {
            if max_dim.is_some_and(|d| cells.len() > d) {
                break;
            }
            let mut next = Vec::new();
            for s in last {
                let end = s.vertices(cat).last().unwrap();
                for &a in cat.out_arrows(end) {
                    if inside(cat.arrow(a).tgt) {
                        let mut arrows = s.arrows.clone();
                        arrows.push(a);
                        next.push(Simplex { base: s.base, arrows });
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_by(|x, y| x.key().cmp(&y.key()));
            cells.push(next);
        }
        let index = cells
            .iter()
            .map(|level| level.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
            .collect();
        Self { cat, cells, index }
    }

    pub fn category(&self) -> &'c LoopFreeCategory {
        self.cat
    }

    /// Top dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.cells.len().checked_sub(1)
    }

    pub fn cells(&self, dim: usize) -> &[Simplex] {
        self.cells.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn num_cells(&self, dim: usize) -> usize {
        self.cells(dim).len()
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn position(&self, s: &Simplex) -> Option<usize> {
        self.index.get(s.dim())?.get(s).copied()
    }

    /// Faces of a simplex with their signs.
    ///
    /// `∂(α₁,…,α_m) = (α₂,…,α_m) + Σ_{i=1}^{m−1} (−1)^i (α₁,…,α_{i+1}∘α_i,…,α_m)
    /// + (−1)^m (α₁,…,α_{m−1})`, and `∂(α) = tgt(α) − src(α)`.
    pub fn faces(&self, s: &Simplex) -> Vec<(Simplex, i64)> {
        let m = s.dim();
        match m {
            0 => Vec::new(),
            1 => {
                let a = self.cat.arrow(s.arrows[0]);
                vec![
                    (Simplex { base: a.tgt, arrows: Vec::new() }, 1),
                    (Simplex { base: a.src, arrows: Vec::new() }, -1),
                ]
            }
            _ => {
                let mut out = Vec::with_capacity(m + 1);
                out.push((
                    Simplex {
                        base: self.cat.arrow(s.arrows[0]).tgt,
                        arrows: s.arrows[1..].to_vec(),
                    },
                    1,
                ));
                for i in 1..m {
                    let composite = self
                        .cat
                        .compose(s.arrows[i], s.arrows[i - 1])
                        .expect("validated categories have complete composition tables");
                    let mut arrows = Vec::with_capacity(m - 1);
                    arrows.extend_from_slice(&s.arrows[..i - 1]);
                    arrows.push(composite);
                    arrows.extend_from_slice(&s.arrows[i + 1..]);
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    out.push((Simplex { base: s.base, arrows }, sign));
                }
                let sign = if m.is_multiple_of(2) { 1 } else { -1 };
                out.push((
                    Simplex {
                        base: s.base,
                        arrows: s.arrows[..m - 1].to_vec(),
                    },
                    sign,
                ));
                out
            }
        }
    }

    /// `∂_dim`, rows indexed by `(dim−1)`-cells, columns by `dim`-cells.
    pub fn boundary(&self, dim: usize) -> IntMatrix {
        assert!(dim >= 1, "boundary matrices start at dimension 1");
        let columns = self
            .cells(dim)
            .iter()
            .map(|s| {
                self.faces(s)
                    .into_iter()
                    .map(|(face, sign)| {
                        let row = self.position(&face).expect("faces stay in the complex");
                        (row, sign)
                    })
                    .collect()
            })
            .collect();
        IntMatrix::from_columns(self.num_cells(dim - 1), columns)
    }

    /// `[∂_1, ∂_2, …, ∂_top]`.
    pub fn boundary_matrices(&self) -> Vec<IntMatrix> {
        (1..self.cells.len()).map(|d| self.boundary(d)).collect()
    }

    /// Alternating sum of cell counts.
    pub fn euler_from_counts(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(d, level)| if d % 2 == 0 { level.len() as i64 } else { -(level.len() as i64) })
            .sum()
    }

    /// True when every vertex of `s` lies in `mask`.
    pub fn lies_in(&self, s: &Simplex, mask: &[bool]) -> bool {
        s.vertices(self.cat).all(|o| mask[o])
    }
}
