use std::collections::HashMap;
use std::fmt;

use super::{ArrIx, CategoryError, LoopFreeCategory, ObjIx, RawCategory};

/// An arrow of a category, identities included.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Morphism {
    Identity(ObjIx),
    Arrow(ArrIx),
}

impl Morphism {
    pub fn src(self, cat: &LoopFreeCategory) -> ObjIx {
        match self {
            Morphism::Identity(o) => o,
            Morphism::Arrow(a) => cat.arrow(a).src,
        }
    }

    pub fn tgt(self, cat: &LoopFreeCategory) -> ObjIx {
        match self {
            Morphism::Identity(o) => o,
            Morphism::Arrow(a) => cat.arrow(a).tgt,
        }
    }

    /// `g ∘ f` in `cat`, if composable.
    pub fn then(cat: &LoopFreeCategory, g: Morphism, f: Morphism) -> Option<Morphism> {
        if f.tgt(cat) != g.src(cat) {
            return None;
        }
        match (g, f) {
            (Morphism::Identity(_), f) => Some(f),
            (g, Morphism::Identity(_)) => Some(g),
            (Morphism::Arrow(g), Morphism::Arrow(f)) => cat.compose(g, f).map(Morphism::Arrow),
        }
    }

    /// All morphisms `src -> tgt`, the identity included when `src == tgt`.
    pub fn all_between(cat: &LoopFreeCategory, src: ObjIx, tgt: ObjIx) -> Vec<Morphism> {
        if src == tgt {
            vec![Morphism::Identity(src)]
        } else {
            cat.hom(src, tgt).map(Morphism::Arrow).collect()
        }
    }

    pub fn label(self, cat: &LoopFreeCategory) -> String {
        match self {
            Morphism::Identity(o) => format!("id_{}", cat.object_id(o)),
            Morphism::Arrow(a) => cat.arrow(a).id.clone(),
        }
    }
}

/// A functor between two loop-free categories. Identities map to identities
/// implicitly; a non-identity arrow may map to an identity.
#[derive(Debug, Clone)]
pub struct FunctorMap<'a> {
    domain: &'a LoopFreeCategory,
    codomain: &'a LoopFreeCategory,
    object_map: Vec<ObjIx>,
    arrow_map: Vec<Morphism>,
}

impl<'a> FunctorMap<'a> {
    /// Builds a functor from explicit maps and checks that it preserves
    /// sources, targets and composition.
    pub fn new(
        domain: &'a LoopFreeCategory,
        codomain: &'a LoopFreeCategory,
        object_map: Vec<ObjIx>,
        arrow_map: Vec<Morphism>,
    ) -> Result<Self, CategoryError> {
        if object_map.len() != domain.num_objects() || arrow_map.len() != domain.num_arrows() {
            return Err(CategoryError::InvalidFunctor(
                "object or arrow map does not cover the domain".into(),
            ));
        }
        if object_map.iter().any(|&o| o >= codomain.num_objects()) {
            return Err(CategoryError::InvalidFunctor(
                "object map leaves the codomain".into(),
            ));
        }
        let functor = Self {
            domain,
            codomain,
            object_map,
            arrow_map,
        };
        for (a, arrow) in domain.arrows().iter().enumerate() {
            let image = functor.arrow_map[a];
            if let Morphism::Arrow(b) = image {
                if b >= codomain.num_arrows() {
                    return Err(CategoryError::InvalidFunctor(format!(
                        "image of `{}` is not an arrow of the codomain",
                        arrow.id
                    )));
                }
            }
            if image.src(codomain) != functor.object_map[arrow.src]
                || image.tgt(codomain) != functor.object_map[arrow.tgt]
            {
                return Err(CategoryError::InvalidFunctor(format!(
                    "image of `{}` has the wrong endpoints",
                    arrow.id
                )));
            }
        }
        for (g, f, gf) in domain.composition_table() {
            let composed = Morphism::then(codomain, functor.arrow_map[g], functor.arrow_map[f]);
            if composed != Some(functor.arrow_map[gf]) {
                return Err(CategoryError::InvalidFunctor(format!(
                    "composition ({}) o ({}) is not preserved",
                    domain.arrow(g).id,
                    domain.arrow(f).id
                )));
            }
        }
        Ok(functor)
    }

    pub fn identity(cat: &'a LoopFreeCategory) -> Self {
        Self {
            domain: cat,
            codomain: cat,
            object_map: (0..cat.num_objects()).collect(),
            arrow_map: (0..cat.num_arrows()).map(Morphism::Arrow).collect(),
        }
    }

    /// The inclusion of `sub` into `cat`, matching objects and arrows by id.
    pub fn inclusion(
        sub: &'a LoopFreeCategory,
        cat: &'a LoopFreeCategory,
    ) -> Result<Self, CategoryError> {
        let object_map = sub
            .object_ids()
            .iter()
            .map(|id| {
                cat.object_index(id)
                    .ok_or_else(|| CategoryError::InvalidFunctor(format!("object `{id}` missing")))
            })
            .collect::<Result<_, _>>()?;
        let arrow_map = sub
            .arrows()
            .iter()
            .map(|a| {
                cat.arrow_index(&a.id).map(Morphism::Arrow).ok_or_else(|| {
                    CategoryError::InvalidFunctor(format!("arrow `{}` missing", a.id))
                })
            })
            .collect::<Result<_, _>>()?;
        Self::new(sub, cat, object_map, arrow_map)
    }

    pub fn domain(&self) -> &'a LoopFreeCategory {
        self.domain
    }

    pub fn codomain(&self) -> &'a LoopFreeCategory {
        self.codomain
    }

    pub fn map_object(&self, o: ObjIx) -> ObjIx {
        self.object_map[o]
    }

    pub fn map_arrow(&self, a: ArrIx) -> Morphism {
        self.arrow_map[a]
    }
}

/// Which homotopy fiber: left `F/d` or right `d/F`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiberSide {
    Left,
    Right,
}

impl fmt::Display for FiberSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FiberSide::Left => "left",
            FiberSide::Right => "right",
        })
    }
}

/// A homotopy fiber as a category in its own right, together with the pair
/// `(c, g)` behind each of its objects.
#[derive(Debug, Clone)]
pub struct FiberCategory {
    pub side: FiberSide,
    /// `pairs[i]` is the `(c, g)` pair of fiber object `i`; `c` indexes the
    /// functor's domain and `g` is a morphism of its codomain.
    pub pairs: Vec<(ObjIx, Morphism)>,
    pub category: LoopFreeCategory,
}

/// Left fiber `F/d`: pairs `(c, g: F(c) -> d)`, with an arrow
/// `f: (c, g) -> (c', g')` for each `f: c -> c'` such that `g' ∘ F(f) = g`.
///
/// Right fiber `d/F`: pairs `(c, g: d -> F(c))`, with an arrow
/// `f: (c, g) -> (c', g')` for each `f: c -> c'` such that `F(f) ∘ g = g'`.
pub fn homotopy_fiber(
    functor: &FunctorMap<'_>,
    d: ObjIx,
    side: FiberSide,
) -> Result<FiberCategory, CategoryError> {
    let dom = functor.domain();
    let cod = functor.codomain();
    if d >= cod.num_objects() {
        return Err(CategoryError::UnknownObject(format!("#{d}")));
    }

    let mut pairs: Vec<(ObjIx, Morphism)> = Vec::new();
    for c in 0..dom.num_objects() {
        let fc = functor.map_object(c);
        let homs = match side {
            FiberSide::Left => Morphism::all_between(cod, fc, d),
            FiberSide::Right => Morphism::all_between(cod, d, fc),
        };
        pairs.extend(homs.into_iter().map(|g| (c, g)));
    }
    let pair_label = |&(c, g): &(ObjIx, Morphism)| format!("({},{})", dom.object_id(c), g.label(cod));
    let by_pair: HashMap<(ObjIx, Morphism), usize> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();

    // fiber arrows as (domain arrow, source pair, target pair)
    let mut arrows: Vec<(ArrIx, usize, usize)> = Vec::new();
    for (p, &(c, g)) in pairs.iter().enumerate() {
        for &f in dom.out_arrows(c) {
            let c2 = dom.arrow(f).tgt;
            let ff = functor.map_arrow(f);
            match side {
                FiberSide::Right => {
                    if let Some(g2) = Morphism::then(cod, ff, g) {
                        arrows.push((f, p, by_pair[&(c2, g2)]));
                    }
                }
                FiberSide::Left => {
                    for g2 in Morphism::all_between(cod, functor.map_object(c2), d) {
                        if Morphism::then(cod, g2, ff) == Some(g) {
                            arrows.push((f, p, by_pair[&(c2, g2)]));
                        }
                    }
                }
            }
        }
    }
    let arrow_label = |&(f, p, q): &(ArrIx, usize, usize)| {
        format!(
            "{}:{}->{}",
            dom.arrow(f).id,
            pair_label(&pairs[p]),
            pair_label(&pairs[q])
        )
    };
    let by_arrow: HashMap<(ArrIx, usize), Vec<usize>> =
        arrows
            .iter()
            .enumerate()
            .fold(HashMap::new(), |mut acc, (i, &(f, p, _))| {
                acc.entry((f, p)).or_default().push(i);
                acc
            });

    let mut raw = RawCategory::new();
    raw.objects = pairs.iter().map(pair_label).collect();
    raw.arrows = arrows
        .iter()
        .map(|arr| (arrow_label(arr), pair_label(&pairs[arr.1]), pair_label(&pairs[arr.2])))
        .collect();
    for first in &arrows {
        let (f, p, q) = *first;
        for second in &arrows {
            let (g, q2, r) = *second;
            if q2 != q {
                continue;
            }
            let gf = dom.compose(g, f).ok_or_else(|| {
                CategoryError::InvalidFunctor("domain composition table incomplete".into())
            })?;
            let composite = by_arrow
                .get(&(gf, p))
                .and_then(|cands| cands.iter().find(|&&i| arrows[i].2 == r))
                .ok_or_else(|| {
                    CategoryError::InvalidFunctor("fiber is not closed under composition".into())
                })?;
            raw.compositions.push((
                arrow_label(second),
                arrow_label(first),
                arrow_label(&arrows[*composite]),
            ));
        }
    }
    let category = raw.validate()?;

    let by_label: HashMap<String, (ObjIx, Morphism)> =
        pairs.iter().map(|p| (pair_label(p), *p)).collect();
    let ordered_pairs = category
        .object_ids()
        .iter()
        .map(|id| by_label[id])
        .collect();
    Ok(FiberCategory {
        side,
        pairs: ordered_pairs,
        category,
    })
}
