//! Finite loop-free categories with an explicit composition table.
//!
//! Identities are implicit: only non-identity arrows are stored, and the
//! composite of two stored arrows is always another stored arrow. Objects and
//! arrows are kept sorted by id, so index order coincides with lexicographic id
//! order everywhere in the crate.

mod functor;
mod grading;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

pub use functor::{homotopy_fiber, FiberCategory, FiberSide, FunctorMap, Morphism};
pub use grading::{compute_grading, Grading};

/// Index of an object inside one particular [`LoopFreeCategory`].
pub type ObjIx = usize;
/// Index of a non-identity arrow inside one particular [`LoopFreeCategory`].
pub type ArrIx = usize;

/// Errors raised while validating categories and their derived structures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("empty identifier")]
    EmptyId,
    #[error("duplicate object id `{0}`")]
    DuplicateObject(String),
    #[error("duplicate arrow id `{0}`")]
    DuplicateArrow(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("bad endpoints: {0}")]
    BadEndpoints(String),
    #[error("category is not loop-free: directed cycle {}", .cycle.join(" -> "))]
    CyclicCategory { cycle: Vec<String> },
    #[error("missing composition for the composable pair ({g}) o ({f})")]
    MissingComposition { g: String, f: String },
    #[error("composition is not associative on ({h}, {g}, {f})")]
    NonAssociative { h: String, g: String, f: String },
    #[error("category is not graded: indecomposable arrow `{arrow}` goes from degree {src_degree} to degree {tgt_degree}")]
    NotGraded {
        arrow: String,
        src_degree: usize,
        tgt_degree: usize,
    },
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
}

/// A non-identity arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub src: ObjIx,
    pub tgt: ObjIx,
}

/// Unvalidated input for [`LoopFreeCategory::validate`].
///
/// Arrows are `(id, src, tgt)` and compositions are `(g, f, g∘f)` triples,
/// all referring to ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub arrows: Vec<(String, String, String)>,
    pub compositions: Vec<(String, String, String)>,
}

impl RawCategory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(mut self, id: impl Into<String>) -> Self {
        self.objects.push(id.into());
        self
    }

    pub fn objects<I, S>(mut self, ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.objects.extend(ids.into_iter().map(Into::into));
        self
    }

    pub fn arrow(
        mut self,
        id: impl Into<String>,
        src: impl Into<String>,
        tgt: impl Into<String>,
    ) -> Self {
        self.arrows.push((id.into(), src.into(), tgt.into()));
        self
    }

    /// Records `g ∘ f = gf`.
    pub fn compose(
        mut self,
        g: impl Into<String>,
        f: impl Into<String>,
        gf: impl Into<String>,
    ) -> Self {
        self.compositions.push((g.into(), f.into(), gf.into()));
        self
    }

    pub fn validate(self) -> Result<LoopFreeCategory, CategoryError> {
        LoopFreeCategory::validate(self)
    }
}

/// A validated finite loop-free category.
#[derive(Debug, Clone)]
pub struct LoopFreeCategory {
    objects: Vec<String>,
    object_index: HashMap<String, ObjIx>,
    arrows: Vec<Arrow>,
    arrow_index: HashMap<String, ArrIx>,
    /// `(g, f) -> g ∘ f`
    composition: HashMap<(ArrIx, ArrIx), ArrIx>,
    out_arrows: Vec<Vec<ArrIx>>,
    in_arrows: Vec<Vec<ArrIx>>,
    decomposable: Vec<bool>,
}

impl PartialEq for LoopFreeCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.arrows.iter().map(|a| (&a.id, a.src, a.tgt)).eq(other
                .arrows
                .iter()
                .map(|a| (&a.id, a.src, a.tgt)))
            && self.composition == other.composition
    }
}

impl Eq for LoopFreeCategory {}

impl LoopFreeCategory {
    /// The empty category.
    pub fn empty() -> Self {
        Self {
            objects: Vec::new(),
            object_index: HashMap::new(),
            arrows: Vec::new(),
            arrow_index: HashMap::new(),
            composition: HashMap::new(),
            out_arrows: Vec::new(),
            in_arrows: Vec::new(),
            decomposable: Vec::new(),
        }
    }

    /// Checks every category axiom and returns the validated category.
    ///
    /// Checks run in a fixed order (ids, endpoints, acyclicity, composition
    /// table, associativity) so the reported error is deterministic.
    pub fn validate(raw: RawCategory) -> Result<Self, CategoryError> {
        let mut objects = raw.objects;
        objects.sort();
        for pair in objects.windows(2) {
            if pair[0] == pair[1] {
                return Err(CategoryError::DuplicateObject(pair[0].clone()));
            }
        }
        if objects.iter().any(String::is_empty) {
            return Err(CategoryError::EmptyId);
        }
        let object_index: HashMap<String, ObjIx> = objects
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), i))
            .collect();

        let mut raw_arrows = raw.arrows;
        raw_arrows.sort();
        let mut arrows = Vec::with_capacity(raw_arrows.len());
        for (i, (id, src, tgt)) in raw_arrows.iter().enumerate() {
            if id.is_empty() {
                return Err(CategoryError::EmptyId);
            }
            if i > 0 && raw_arrows[i - 1].0 == *id {
                return Err(CategoryError::DuplicateArrow(id.clone()));
            }
            let s = *object_index
                .get(src)
                .ok_or_else(|| CategoryError::UnknownObject(src.clone()))?;
            let t = *object_index
                .get(tgt)
                .ok_or_else(|| CategoryError::UnknownObject(tgt.clone()))?;
            if s == t {
                return Err(CategoryError::BadEndpoints(format!(
                    "arrow `{id}` is a non-identity endomorphism of `{src}`"
                )));
            }
            arrows.push(Arrow {
                id: id.clone(),
                src: s,
                tgt: t,
            });
        }
        let arrow_index: HashMap<String, ArrIx> = arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (a.id.clone(), i))
            .collect();

        let mut out_arrows = vec![Vec::new(); objects.len()];
        let mut in_arrows = vec![Vec::new(); objects.len()];
        for (i, a) in arrows.iter().enumerate() {
            out_arrows[a.src].push(i);
            in_arrows[a.tgt].push(i);
        }

        let mut cat = Self {
            objects,
            object_index,
            arrows,
            arrow_index,
            composition: HashMap::new(),
            out_arrows,
            in_arrows,
            decomposable: Vec::new(),
        };

        if let Some(cycle) = cat.find_cycle() {
            return Err(CategoryError::CyclicCategory {
                cycle: cycle.into_iter().map(|o| cat.objects[o].clone()).collect(),
            });
        }

        for (g, f, gf) in &raw.compositions {
            let g_ix = cat.lookup_arrow(g)?;
            let f_ix = cat.lookup_arrow(f)?;
            let gf_ix = cat.lookup_arrow(gf)?;
            let (ga, fa, ha) = (&cat.arrows[g_ix], &cat.arrows[f_ix], &cat.arrows[gf_ix]);
            if fa.tgt != ga.src {
                return Err(CategoryError::BadEndpoints(format!(
                    "composition entry ({g}) o ({f}): `{f}` does not end where `{g}` starts"
                )));
            }
            if ha.src != fa.src || ha.tgt != ga.tgt {
                return Err(CategoryError::BadEndpoints(format!(
                    "composition entry ({g}) o ({f}) = {gf}: `{gf}` has the wrong endpoints"
                )));
            }
            if let Some(prev) = cat.composition.insert((g_ix, f_ix), gf_ix) {
                if prev != gf_ix {
                    return Err(CategoryError::BadEndpoints(format!(
                        "composition ({g}) o ({f}) is given two different values"
                    )));
                }
            }
        }

        for f in 0..cat.arrows.len() {
            for &g in &cat.out_arrows[cat.arrows[f].tgt] {
                if !cat.composition.contains_key(&(g, f)) {
                    return Err(CategoryError::MissingComposition {
                        g: cat.arrows[g].id.clone(),
                        f: cat.arrows[f].id.clone(),
                    });
                }
            }
        }

        for f in 0..cat.arrows.len() {
            for &g in &cat.out_arrows[cat.arrows[f].tgt] {
                for &h in &cat.out_arrows[cat.arrows[g].tgt] {
                    let left = cat.composition[&(cat.composition[&(h, g)], f)];
                    let right = cat.composition[&(h, cat.composition[&(g, f)])];
                    if left != right {
                        return Err(CategoryError::NonAssociative {
                            h: cat.arrows[h].id.clone(),
                            g: cat.arrows[g].id.clone(),
                            f: cat.arrows[f].id.clone(),
                        });
                    }
                }
            }
        }

        let mut decomposable = vec![false; cat.arrows.len()];
        for &h in cat.composition.values() {
            decomposable[h] = true;
        }
        cat.decomposable = decomposable;
        Ok(cat)
    }

    fn lookup_arrow(&self, id: &str) -> Result<ArrIx, CategoryError> {
        self.arrow_index
            .get(id)
            .copied()
            .ok_or_else(|| CategoryError::UnknownArrow(id.to_owned()))
    }

    /// Returns a directed cycle `o_0 -> ... -> o_k = o_0` if one exists.
    fn find_cycle(&self) -> Option<Vec<ObjIx>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Active,
            Done,
        }
        let n = self.objects.len();
        let mut mark = vec![Mark::New; n];
        for root in 0..n {
            if mark[root] != Mark::New {
                continue;
            }
            // (object, next out-arrow position)
            let mut stack: Vec<(ObjIx, usize)> = vec![(root, 0)];
            mark[root] = Mark::Active;
            while let Some(&mut (v, ref mut pos)) = stack.last_mut() {
                if let Some(&a) = self.out_arrows[v].get(*pos) {
                    *pos += 1;
                    let w = self.arrows[a].tgt;
                    match mark[w] {
                        Mark::New => {
                            mark[w] = Mark::Active;
                            stack.push((w, 0));
                        }
                        Mark::Active => {
                            let start = stack.iter().position(|&(o, _)| o == w).unwrap();
                            let mut cycle: Vec<ObjIx> =
                                stack[start..].iter().map(|&(o, _)| o).collect();
                            cycle.push(w);
                            return Some(cycle);
                        }
                        Mark::Done => {}
                    }
                } else {
                    mark[v] = Mark::Done;
                    stack.pop();
                }
            }
        }
        None
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn object_ids(&self) -> &[String] {
        &self.objects
    }

    pub fn object_id(&self, o: ObjIx) -> &str {
        &self.objects[o]
    }

    pub fn object_index(&self, id: &str) -> Option<ObjIx> {
        self.object_index.get(id).copied()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: ArrIx) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrow_index(&self, id: &str) -> Option<ArrIx> {
        self.arrow_index.get(id).copied()
    }

    pub fn out_arrows(&self, o: ObjIx) -> &[ArrIx] {
        &self.out_arrows[o]
    }

    pub fn in_arrows(&self, o: ObjIx) -> &[ArrIx] {
        &self.in_arrows[o]
    }

    /// `g ∘ f`, defined when `tgt(f) = src(g)`.
    pub fn compose(&self, g: ArrIx, f: ArrIx) -> Option<ArrIx> {
        self.composition.get(&(g, f)).copied()
    }

    /// The composition table as `(g, f, g∘f)` triples, sorted.
    pub fn composition_table(&self) -> Vec<(ArrIx, ArrIx, ArrIx)> {
        let mut table: Vec<_> = self
            .composition
            .iter()
            .map(|(&(g, f), &h)| (g, f, h))
            .collect();
        table.sort_unstable();
        table
    }

    /// All arrows `src -> tgt`, i.e. the hom-set `C(src, tgt)` without identities.
    pub fn hom(&self, src: ObjIx, tgt: ObjIx) -> impl Iterator<Item = ArrIx> + '_ {
        self.out_arrows[src]
            .iter()
            .copied()
            .filter(move |&a| self.arrows[a].tgt == tgt)
    }

    /// `#Arr(f)`: the number of arrows sharing the source and target of `f`.
    pub fn parallel_count(&self, f: ArrIx) -> usize {
        let a = &self.arrows[f];
        self.hom(a.src, a.tgt).count()
    }

    pub fn is_indecomposable(&self, a: ArrIx) -> bool {
        !self.decomposable[a]
    }

    /// Arrows that are not composites of two non-identity arrows.
    pub fn indecomposable_arrows(&self) -> Vec<ArrIx> {
        (0..self.arrows.len())
            .filter(|&a| !self.decomposable[a])
            .collect()
    }

    /// Minimal objects (no incoming arrow) and maximal objects (no outgoing arrow).
    pub fn extremal_objects(&self) -> (BTreeSet<ObjIx>, BTreeSet<ObjIx>) {
        let minimal = (0..self.objects.len())
            .filter(|&o| self.in_arrows[o].is_empty())
            .collect();
        let maximal = (0..self.objects.len())
            .filter(|&o| self.out_arrows[o].is_empty())
            .collect();
        (minimal, maximal)
    }

    /// Objects in a topological order (every arrow goes forward).
    pub fn topological_order(&self) -> Vec<ObjIx> {
        let mut indegree: Vec<usize> = self.in_arrows.iter().map(Vec::len).collect();
        let mut ready: Vec<ObjIx> = (0..self.objects.len())
            .rev()
            .filter(|&o| indegree[o] == 0)
            .collect();
        let mut order = Vec::with_capacity(self.objects.len());
        while let Some(o) = ready.pop() {
            order.push(o);
            for &a in &self.out_arrows[o] {
                let t = self.arrows[a].tgt;
                indegree[t] -= 1;
                if indegree[t] == 0 {
                    ready.push(t);
                }
            }
        }
        order
    }

    /// Resolves object ids to indices.
    pub fn object_set<I, S>(&self, ids: I) -> Result<BTreeSet<ObjIx>, CategoryError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        ids.into_iter()
            .map(|id| {
                self.object_index(id.as_ref())
                    .ok_or_else(|| CategoryError::UnknownObject(id.as_ref().to_owned()))
            })
            .collect()
    }

    /// Resolves arrow ids to indices.
    pub fn arrow_set<I, S>(&self, ids: I) -> Result<BTreeSet<ArrIx>, CategoryError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        ids.into_iter().map(|id| self.lookup_arrow(id.as_ref())).collect()
    }

    /// The full subcategory on `keep`.
    pub fn full_subcategory(&self, keep: &BTreeSet<ObjIx>) -> Result<Self, CategoryError> {
        if let Some(&bad) = keep.iter().find(|&&o| o >= self.objects.len()) {
            return Err(CategoryError::UnknownObject(format!("#{bad}")));
        }
        let inside = |a: &Arrow| keep.contains(&a.src) && keep.contains(&a.tgt);
        let raw = RawCategory {
            objects: keep.iter().map(|&o| self.objects[o].clone()).collect(),
            arrows: self
                .arrows
                .iter()
                .filter(|a| inside(a))
                .map(|a| {
                    (
                        a.id.clone(),
                        self.objects[a.src].clone(),
                        self.objects[a.tgt].clone(),
                    )
                })
                .collect(),
            compositions: self
                .composition_table()
                .into_iter()
                .filter(|&(g, f, _)| inside(&self.arrows[g]) && inside(&self.arrows[f]))
                .map(|(g, f, h)| {
                    (
                        self.arrows[g].id.clone(),
                        self.arrows[f].id.clone(),
                        self.arrows[h].id.clone(),
                    )
                })
                .collect(),
        };
        Self::validate(raw)
    }

    /// Objects of `U_c`: sources of arrows into `c`, plus `c` itself.
    pub fn under_objects(&self, c: ObjIx) -> BTreeSet<ObjIx> {
        let mut set: BTreeSet<ObjIx> = self.in_arrows[c]
            .iter()
            .map(|&a| self.arrows[a].src)
            .collect();
        set.insert(c);
        set
    }

    /// Objects of `Û_c = U_c − {c}`.
    pub fn punctured_under_objects(&self, c: ObjIx) -> BTreeSet<ObjIx> {
        let mut set = self.under_objects(c);
        set.remove(&c);
        set
    }

    /// `U_c`, or `Û_c` when `punctured`.
    pub fn under_category(&self, c: ObjIx, punctured: bool) -> Result<Self, CategoryError> {
        if c >= self.objects.len() {
            return Err(CategoryError::UnknownObject(format!("#{c}")));
        }
        let keep = if punctured {
            self.punctured_under_objects(c)
        } else {
            self.under_objects(c)
        };
        self.full_subcategory(&keep)
    }

    /// Objects with exactly one arrow to every other object.
    pub fn initial_objects(&self) -> Vec<ObjIx> {
        let n = self.objects.len();
        (0..n)
            .filter(|&o| self.out_arrows[o].len() == n - 1 && (0..n).all(|t| t == o || self.hom(o, t).count() == 1))
            .collect()
    }

    /// Objects with exactly one arrow from every other object.
    pub fn terminal_objects(&self) -> Vec<ObjIx> {
        let n = self.objects.len();
        (0..n)
            .filter(|&o| self.in_arrows[o].len() == n - 1 && (0..n).all(|s| s == o || self.hom(s, o).count() == 1))
            .collect()
    }

    /// True when there is at most one arrow between any two objects.
    pub fn is_poset(&self) -> bool {
        self.out_arrows.iter().all(|outs| {
            let targets: BTreeSet<ObjIx> = outs.iter().map(|&a| self.arrows[a].tgt).collect();
            targets.len() == outs.len()
        })
    }

    /// Back to raw form, e.g. for serialization.
    pub fn to_raw(&self) -> RawCategory {
        RawCategory {
            objects: self.objects.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| {
                    (
                        a.id.clone(),
                        self.objects[a.src].clone(),
                        self.objects[a.tgt].clone(),
                    )
                })
                .collect(),
            compositions: self
                .composition_table()
                .into_iter()
                .map(|(g, f, h)| {
                    (
                        self.arrows[g].id.clone(),
                        self.arrows[f].id.clone(),
                        self.arrows[h].id.clone(),
                    )
                })
                .collect(),
        }
    }

    /// Formats a set of objects as `{a, b, c}`.
    pub fn format_objects<'a>(&self, objs: impl IntoIterator<Item = &'a ObjIx>) -> String {
        let names: Vec<&str> = objs.into_iter().map(|&o| self.object_id(o)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

impl fmt::Display for LoopFreeCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "loop-free category with {} objects and {} arrows",
            self.objects.len(),
            self.arrows.len()
        )
    }
}
