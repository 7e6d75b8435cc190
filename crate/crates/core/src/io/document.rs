use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::category::{compute_grading, CategoryError, LoopFreeCategory, RawCategory};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("duplicate {kind} id `{id}`")]
    DuplicateId { kind: &'static str, id: String },
    #[error("{context} refers to undeclared {kind} `{id}`")]
    DanglingReference {
        context: String,
        kind: &'static str,
        id: String,
    },
    #[error("poset relations contain a cycle through {0:?}")]
    CyclicRelation(Vec<String>),
    #[error("a document uses either `arrows`/`compositions` or `poset`, not both")]
    MixedForms,
    #[error("object `{object}` declares degree {declared} but its grading gives {computed}")]
    DegreeMismatch {
        object: String,
        declared: usize,
        computed: usize,
    },
    #[error(transparent)]
    Category(#[from] CategoryError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ObjectEntry {
    Bare(String),
    Full {
        id: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree: Option<usize>,
    },
}

impl ObjectEntry {
    pub fn id(&self) -> &str {
        match self {
            ObjectEntry::Bare(id) | ObjectEntry::Full { id, .. } => id,
        }
    }

    pub fn degree(&self) -> Option<usize> {
        match self {
            ObjectEntry::Bare(_) => None,
            ObjectEntry::Full { degree, .. } => *degree,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowEntry {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetEntry {
    /// Pairs `[lower, upper]`.
    pub relations: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDocument {
    pub objects: Vec<ObjectEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub arrows: Vec<ArrowEntry>,
    /// Triples `[g, f, g∘f]`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub compositions: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vector_field: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poset: Option<PosetEntry>,
}

/// Parses a document and checks that ids are unique and resolve.
pub fn parse_category_document(text: &str) -> Result<CategoryDocument, DocumentError> {
    let doc: CategoryDocument = serde_json::from_str(text).map_err(|e| DocumentError::Parse {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })?;
    check_references(&doc)?;
    Ok(doc)
}

fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(pos) => message[..pos].to_owned(),
        None => message.to_owned(),
    }
}

fn check_references(doc: &CategoryDocument) -> Result<(), DocumentError> {
    let mut objects = HashSet::new();
    for o in &doc.objects {
        if !objects.insert(o.id()) {
            return Err(DocumentError::DuplicateId {
                kind: "object",
                id: o.id().to_owned(),
            });
        }
    }
    let object_ref = |context: String, id: &str| {
        if objects.contains(id) {
            Ok(())
        } else {
            Err(DocumentError::DanglingReference {
                context,
                kind: "object",
                id: id.to_owned(),
            })
        }
    };

    if doc.poset.is_some() && !(doc.arrows.is_empty() && doc.compositions.is_empty()) {
        return Err(DocumentError::MixedForms);
    }

    let mut arrows = HashSet::new();
    for a in &doc.arrows {
        if !arrows.insert(a.id.as_str()) {
            return Err(DocumentError::DuplicateId {
                kind: "arrow",
                id: a.id.clone(),
            });
        }
        object_ref(format!("arrow `{}`", a.id), &a.src)?;
        object_ref(format!("arrow `{}`", a.id), &a.tgt)?;
    }
    for triple in &doc.compositions {
        for id in triple {
            if !arrows.contains(id.as_str()) {
                return Err(DocumentError::DanglingReference {
                    context: format!("composition {triple:?}"),
                    kind: "arrow",
                    id: id.clone(),
                });
            }
        }
    }
    if let Some(poset) = &doc.poset {
        for [lo, hi] in &poset.relations {
            object_ref(format!("relation [{lo}, {hi}]"), lo)?;
            object_ref(format!("relation [{lo}, {hi}]"), hi)?;
        }
    }
    if doc.poset.is_none() {
        for id in doc.vector_field.iter().flatten() {
            if !arrows.contains(id.as_str()) {
                return Err(DocumentError::DanglingReference {
                    context: "vector_field".into(),
                    kind: "arrow",
                    id: id.clone(),
                });
            }
        }
    }
    Ok(())
}

/// Pretty JSON with a trailing newline.
pub fn serialize_document(doc: &CategoryDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

/// Arrow id of the relation `lo < hi` in an expanded poset.
pub fn poset_arrow_id(lo: &str, hi: &str) -> String {
    format!("{lo}:{hi}")
}

/// Turns poset relations into a category with one arrow per comparable pair.
pub fn expand_poset(doc: &CategoryDocument) -> Result<LoopFreeCategory, DocumentError> {
    let ids: Vec<&str> = doc.objects.iter().map(ObjectEntry::id).collect();
    let index: BTreeMap<&str, usize> = ids.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let n = ids.len();
    let mut succ = vec![BTreeSet::new(); n];
    if let Some(poset) = &doc.poset {
        for [lo, hi] in &poset.relations {
            let (Some(&l), Some(&h)) = (index.get(lo.as_str()), index.get(hi.as_str())) else {
                let id = if index.contains_key(lo.as_str()) { hi } else { lo };
                return Err(DocumentError::DanglingReference {
                    context: format!("relation [{lo}, {hi}]"),
                    kind: "object",
                    id: id.clone(),
                });
            };
            if l == h {
                return Err(DocumentError::CyclicRelation(vec![lo.clone()]));
            }
            succ[l].insert(h);
        }
    }
    if let Some(cycle) = find_cycle(&succ) {
        return Err(DocumentError::CyclicRelation(
            cycle.into_iter().map(|i| ids[i].to_owned()).collect(),
        ));
    }

    // strict upper sets, by DFS from every object
    let mut above: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for start in 0..n {
        let mut stack: Vec<usize> = succ[start].iter().copied().collect();
        while let Some(v) = stack.pop() {
            if above[start].insert(v) {
                stack.extend(succ[v].iter().copied());
            }
        }
    }

    let mut raw = RawCategory::new().objects(ids.iter().copied());
    for x in 0..n {
        for &y in &above[x] {
            raw = raw.arrow(poset_arrow_id(ids[x], ids[y]), ids[x], ids[y]);
        }
    }
    for x in 0..n {
        for &y in &above[x] {
            for &z in &above[y] {
                raw = raw.compose(
                    poset_arrow_id(ids[y], ids[z]),
                    poset_arrow_id(ids[x], ids[y]),
                    poset_arrow_id(ids[x], ids[z]),
                );
            }
        }
    }
    Ok(raw.validate()?)
}

fn find_cycle(succ: &[BTreeSet<usize>]) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let n = succ.len();
    let mut mark = vec![Mark::New; n];
    for root in 0..n {
        if mark[root] != Mark::New {
            continue;
        }
        let mut path = vec![root];
        let mut iters = vec![succ[root].iter()];
        mark[root] = Mark::Active;
        while let Some(it) = iters.last_mut() {
            match it.next() {
                Some(&w) if mark[w] == Mark::Active => {
                    let start = path.iter().position(|&p| p == w).unwrap();
                    return Some(path[start..].to_vec());
                }
                Some(&w) if mark[w] == Mark::New => {
                    mark[w] = Mark::Active;
                    path.push(w);
                    iters.push(succ[w].iter());
                }
                Some(_) => {}
                None => {
                    mark[path.pop().unwrap()] = Mark::Done;
                    iters.pop();
                }
            }
        }
    }
    None
}

/// Builds the category described by a document and checks any declared
/// degrees against the computed grading.
pub fn to_category(doc: &CategoryDocument) -> Result<LoopFreeCategory, DocumentError> {
    check_references(doc)?;
    let cat = if doc.poset.is_some() {
        expand_poset(doc)?
    } else {
        let mut raw = RawCategory::new().objects(doc.objects.iter().map(ObjectEntry::id));
        for a in &doc.arrows {
            raw = raw.arrow(a.id.clone(), a.src.clone(), a.tgt.clone());
        }
        for [g, f, gf] in &doc.compositions {
            raw = raw.compose(g.clone(), f.clone(), gf.clone());
        }
        raw.validate()?
    };
    if doc.objects.iter().any(|o| o.degree().is_some()) {
        let grading = compute_grading(&cat)?;
        for o in &doc.objects {
            if let Some(declared) = o.degree() {
                let computed = grading.degree(cat.object_index(o.id()).expect("declared object"));
                if computed != declared {
                    return Err(DocumentError::DegreeMismatch {
                        object: o.id().to_owned(),
                        declared,
                        computed,
                    });
                }
            }
        }
    }
    Ok(cat)
}

/// A document listing every object, arrow and composition of `cat`.
pub fn from_category(cat: &LoopFreeCategory, vector_field: Option<Vec<String>>) -> CategoryDocument {
    CategoryDocument {
        objects: cat
            .object_ids()
            .iter()
            .map(|id| ObjectEntry::Bare(id.clone()))
            .collect(),
        arrows: cat
            .arrows()
            .iter()
            .map(|a| ArrowEntry {
                id: a.id.clone(),
                src: cat.object_id(a.src).to_owned(),
                tgt: cat.object_id(a.tgt).to_owned(),
            })
            .collect(),
        compositions: cat
            .composition_table()
            .into_iter()
            .map(|(g, f, gf)| {
                [
                    cat.arrow(g).id.clone(),
                    cat.arrow(f).id.clone(),
                    cat.arrow(gf).id.clone(),
                ]
            })
            .collect(),
        vector_field,
        poset: None,
    }
}
