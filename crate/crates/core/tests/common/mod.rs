//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use loopfree_morse::category::{compute_grading, ArrIx, LoopFreeCategory, ObjIx, RawCategory};
use loopfree_morse::homology::{reduced_homology, OrderComplex};
use loopfree_morse::io::{expand_poset, CategoryDocument, ObjectEntry, PosetEntry};
use loopfree_morse::morse::{validate_vector_field, VectorField};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn name(i: usize) -> String {
    format!("o{i:02}")
}

/// A poset from explicit cover relations on `n` objects named `o00`, `o01`, …
pub fn poset(n: usize, relations: &[(usize, usize)]) -> LoopFreeCategory {
    let doc = CategoryDocument {
        objects: (0..n).map(|i| ObjectEntry::Bare(name(i))).collect(),
        arrows: Vec::new(),
        compositions: Vec::new(),
        vector_field: None,
        poset: Some(PosetEntry {
            relations: relations.iter().map(|&(a, b)| [name(a), name(b)]).collect(),
        }),
    };
    expand_poset(&doc).expect("generated relations are acyclic")
}

/// Splits `n` objects into consecutive layers.
fn layer_sizes(rng: &mut TestRng, n: usize) -> Vec<usize> {
    let mut sizes = Vec::new();
    let mut left = n;
    while left > 0 {
        let s = rng.gen_range(1..=left.min(4));
        sizes.push(s);
        left -= s;
    }
    sizes
}

/// A random poset on at most `max_n` objects in which every object above the
/// bottom layer covers at least one object of the layer just below, so that
/// layers are degrees.
pub fn random_graded_poset(rng: &mut TestRng, max_n: usize) -> LoopFreeCategory {
    let n = rng.gen_range(1..=max_n);
    let sizes = layer_sizes(rng, n);
    let mut layers: Vec<Vec<usize>> = Vec::new();
    let mut next = 0;
    for &s in &sizes {
        layers.push((next..next + s).collect());
        next += s;
    }
    let mut relations = Vec::new();
    for k in 1..layers.len() {
        for &c in &layers[k] {
            let below = &layers[k - 1];
            let count = rng.gen_range(1..=below.len());
            for &b in below.choose_multiple(rng, count) {
                relations.push((b, c));
            }
        }
    }
    poset(n, &relations)
}

/// Objects of the down-set generated by `tops` (the tops included).
fn down_closure(tops: &[usize], covers_below: &[Vec<usize>]) -> BTreeSet<usize> {
    let mut seen = BTreeSet::new();
    let mut stack = tops.to_vec();
    while let Some(v) = stack.pop() {
        if seen.insert(v) {
            stack.extend(covers_below[v].iter().copied());
        }
    }
    seen
}

/// A random cellular poset on at most `max_n` objects. Objects are added
/// layer by layer; a new object of degree `k` picks covers in layer `k − 1`
/// and is kept only when its lower link has the reduced homology of a
/// non-empty wedge of `(k−1)`-spheres.
pub fn random_cellular_poset(rng: &mut TestRng, max_n: usize) -> LoopFreeCategory {
    let n_target = rng.gen_range(2..=max_n.max(2));
    let bottom = rng.gen_range(2..=n_target.min(4));
    let mut covers_below: Vec<Vec<usize>> = vec![Vec::new(); bottom];
    let mut layers: Vec<Vec<usize>> = vec![(0..bottom).collect()];
    let mut relations: Vec<(usize, usize)> = Vec::new();
    let mut attempts = 0;
    while covers_below.len() < n_target && attempts < 200 {
        attempts += 1;
        let k = rng.gen_range(1..=layers.len().min(3));
        let below = &layers[k - 1];
        if below.len() < 2 {
            continue;
        }
        let count = rng.gen_range(2..=below.len());
        let mut chosen: Vec<usize> = below.choose_multiple(rng, count).copied().collect();
        chosen.sort_unstable();
        let link = down_closure(&chosen, &covers_below);
        let link_rel: Vec<(usize, usize)> = relations
            .iter()
            .copied()
            .filter(|(a, b)| link.contains(a) && link.contains(b))
            .collect();
        let order: Vec<usize> = link.iter().copied().collect();
        let pos: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        let sub = poset(
            order.len(),
            &link_rel.iter().map(|(a, b)| (pos[a], pos[b])).collect::<Vec<_>>(),
        );
        let reduced = reduced_homology(&OrderComplex::new(&sub, None)).unwrap();
        let top = k - 1;
        let wedge = reduced.is_free()
            && reduced.betti(top) >= 1
            && reduced.betti.iter().enumerate().all(|(i, &b)| i == top || b == 0);
        if !wedge {
            continue;
        }
        let id = covers_below.len();
        for &c in &chosen {
            relations.push((c, id));
        }
        covers_below.push(chosen);
        if layers.len() == k {
            layers.push(Vec::new());
        }
        layers[k].push(id);
    }
    poset(covers_below.len(), &relations)
}

/// The free category on a directed acyclic multigraph: arrows are non-empty
/// paths, named by their edge names joined with `.`.
pub fn free_category(n: usize, edges: &[(usize, usize)]) -> LoopFreeCategory {
    let mut paths: Vec<(usize, usize, Vec<usize>)> = edges
        .iter()
        .enumerate()
        .map(|(i, &(s, t))| (s, t, vec![i]))
        .collect();
    let mut frontier = paths.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for (s, t, p) in &frontier {
            for (i, &(s2, t2)) in edges.iter().enumerate() {
                if s2 == *t {
                    let mut q = p.clone();
                    q.push(i);
                    next.push((*s, t2, q));
                }
            }
        }
        paths.extend(next.iter().cloned());
        frontier = next;
    }
    let label = |p: &[usize]| -> String {
        p.iter().map(|i| format!("e{i}")).collect::<Vec<_>>().join(".")
    };
    let mut raw = RawCategory::new().objects((0..n).map(name));
    for (s, t, p) in &paths {
        raw = raw.arrow(label(p), name(*s), name(*t));
    }
    for (_, t, f) in &paths {
        for (s2, _, g) in &paths {
            if s2 == t {
                let mut gf = f.clone();
                gf.extend_from_slice(g);
                raw = raw.compose(label(g), label(f), label(&gf));
            }
        }
    }
    raw.validate().expect("free categories on DAGs are loop-free")
}

/// A free category on a random layered multigraph, so it is graded and may
/// have parallel arrows.
pub fn random_free_category(rng: &mut TestRng, max_n: usize) -> LoopFreeCategory {
    let n = rng.gen_range(1..=max_n);
    let sizes = layer_sizes(rng, n);
    let mut layers: Vec<Vec<usize>> = Vec::new();
    let mut next = 0;
    for &s in &sizes {
        layers.push((next..next + s).collect());
        next += s;
    }
    let mut edges = Vec::new();
    for k in 1..layers.len() {
        for &c in &layers[k] {
            let below = &layers[k - 1];
            let count = rng.gen_range(1..=below.len().min(2));
            for &b in below.choose_multiple(rng, count) {
                let mult = if rng.gen_bool(0.3) { 2 } else { 1 };
                for _ in 0..mult {
                    edges.push((b, c));
                }
            }
        }
    }
    free_category(n, &edges)
}

/// Every valid vector field, by backtracking over indecomposable arrows.
/// Valid fields are closed under removal of vectors, so an invalid partial
/// choice prunes its whole branch.
pub fn all_valid_fields(cat: &LoopFreeCategory) -> Vec<VectorField> {
    let grading = compute_grading(cat).expect("graded input");
    let arrows = cat.indecomposable_arrows();
    let mut out = Vec::new();
    let mut chosen = BTreeSet::new();
    fn go(
        i: usize,
        arrows: &[ArrIx],
        chosen: &mut BTreeSet<ArrIx>,
        cat: &LoopFreeCategory,
        grading: &loopfree_morse::category::Grading,
        out: &mut Vec<VectorField>,
    ) {
        if i == arrows.len() {
            out.push(validate_vector_field(cat, grading, chosen).unwrap());
            return;
        }
        go(i + 1, arrows, chosen, cat, grading, out);
        chosen.insert(arrows[i]);
        if validate_vector_field(cat, grading, chosen).is_ok() {
            go(i + 1, arrows, chosen, cat, grading, out);
        }
        chosen.remove(&arrows[i]);
    }
    go(0, &arrows, &mut chosen, cat, &grading, &mut out);
    out
}

/// Chain recurrent objects found by enumerating closed V-paths of bounded
/// length, plus critical objects.
pub fn v_path_recurrent(cat: &LoopFreeCategory, field: &VectorField) -> BTreeSet<ObjIx> {
    let vectors = field.vectors();
    let n = cat.num_objects();
    // from the source x of a vector f: x -> y, the next sources are the x'
    // with an indecomposable non-vector g: x' -> y that is itself a source
    let step = |x: ObjIx| -> Vec<(ObjIx, ObjIx)> {
        let mut out = Vec::new();
        for &f in vectors {
            let a = cat.arrow(f);
            if a.src != x {
                continue;
            }
            for &g in cat.in_arrows(a.tgt) {
                let b = cat.arrow(g);
                if g != f && !vectors.contains(&g) && cat.is_indecomposable(g) {
                    out.push((a.tgt, b.src));
                }
            }
        }
        out
    };
    let max_len = 2 * n;
    let mut recurrent = field.critical_objects(cat);
    let sources: BTreeSet<ObjIx> = vectors.iter().map(|&f| cat.arrow(f).src).collect();
    for &start in &sources {
        // depth-first search for paths returning to `start`
        let mut stack: Vec<(ObjIx, Vec<ObjIx>)> = vec![(start, vec![start])];
        while let Some((x, visited)) = stack.pop() {
            if visited.len() > max_len {
                continue;
            }
            for (y, x2) in step(x) {
                let mut path = visited.clone();
                path.push(y);
                if x2 == start {
                    recurrent.extend(path.iter().copied());
                } else if !visited.contains(&x2) {
                    path.push(x2);
                    stack.push((x2, path));
                }
            }
        }
    }
    recurrent
}

/// Simplices of the order complex as `(base, arrows)`, by dimension,
/// enumerated directly from the arrow list.
pub fn oracle_simplices(cat: &LoopFreeCategory) -> Vec<Vec<(ObjIx, Vec<ArrIx>)>> {
    let mut levels: Vec<Vec<(ObjIx, Vec<ArrIx>)>> =
        vec![(0..cat.num_objects()).map(|o| (o, Vec::new())).collect()];
    if cat.num_objects() == 0 {
        return Vec::new();
    }
    loop {
        let mut next = Vec::new();
        for (base, arrows) in levels.last().unwrap() {
            let end = arrows.last().map_or(*base, |&a| cat.arrow(a).tgt);
            for a in 0..cat.num_arrows() {
                if cat.arrow(a).src == end {
                    let mut v = arrows.clone();
                    v.push(a);
                    next.push((*base, v));
                }
            }
        }
        if next.is_empty() {
            return levels;
        }
        levels.push(next);
    }
}

pub fn oracle_num_simplices(cat: &LoopFreeCategory) -> usize {
    oracle_simplices(cat).iter().map(Vec::len).sum()
}

/// Betti numbers from ranks over the rationals, using the vertex-deletion
/// face maps of the nerve.
pub fn oracle_betti(cat: &LoopFreeCategory) -> Vec<usize> {
    let levels = oracle_simplices(cat);
    let compose: HashMap<(ArrIx, ArrIx), ArrIx> = cat
        .composition_table()
        .into_iter()
        .map(|(g, f, gf)| ((g, f), gf))
        .collect();
    let index: Vec<HashMap<(ObjIx, Vec<ArrIx>), usize>> = levels
        .iter()
        .map(|l| l.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
        .collect();
    let mut ranks = vec![0usize; levels.len() + 1];
    for m in 1..levels.len() {
        let rows = levels[m - 1].len();
        let mut matrix = vec![vec![BigRational::zero(); levels[m].len()]; rows];
        for (j, (base, arrows)) in levels[m].iter().enumerate() {
            for i in 0..=m {
                let face: (ObjIx, Vec<ArrIx>) = if m == 1 {
                    let a = cat.arrow(arrows[0]);
                    (if i == 0 { a.tgt } else { a.src }, Vec::new())
                } else if i == 0 {
                    (cat.arrow(arrows[0]).tgt, arrows[1..].to_vec())
                } else if i == m {
                    (*base, arrows[..m - 1].to_vec())
                } else {
                    let mut v = arrows[..i - 1].to_vec();
                    v.push(compose[&(arrows[i], arrows[i - 1])]);
                    v.extend_from_slice(&arrows[i + 1..]);
                    (*base, v)
                };
                let row = index[m - 1][&face];
                let sign = if i % 2 == 0 { BigRational::one() } else { -BigRational::one() };
                matrix[row][j] += sign;
            }
        }
        ranks[m] = rational_rank(matrix);
    }
    (0..levels.len())
        .map(|k| levels[k].len() - ranks[k] - ranks[k + 1])
        .collect()
}

pub fn rational_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let factor = &m[r][c] / &pivot;
                #[allow(clippy::needless_range_loop)]
                for k in c..cols {
                    let delta = &factor * &m[rank][k];
                    m[r][k] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}
