//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::OnceLock;

use common::{
    all_valid_fields, oracle_betti, oracle_num_simplices, random_cellular_poset,
    random_free_category, random_graded_poset, rng,
};
use loopfree_morse::category::{
    compute_grading, homotopy_fiber, FiberSide, FunctorMap, LoopFreeCategory,
};
use loopfree_morse::filtration::{
    basic_set_homology, build_filtration, morse_inequalities, morse_numbers, verify_collapsing,
    TieBreak,
};
use loopfree_morse::fixtures;
use loopfree_morse::homology::{category_homology, subcategory_homology, OrderComplex};
use loopfree_morse::io::{from_category, serialize_document};
use loopfree_morse::morse::{
    basic_sets, check_admissibility, check_cellular, vector_field_from_ids, BasicSetKind,
    FieldError, VectorField,
};
use loopfree_morse::report::generate_report;
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

struct Instance {
    cat: LoopFreeCategory,
    fields: Vec<VectorField>,
}

fn cellular_instances() -> &'static [Instance] {
    static CELL: OnceLock<Vec<Instance>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut r = rng(5);
        (0..100)
            .map(|_| {
                let cat = random_cellular_poset(&mut r, 10);
                let fields = all_valid_fields(&cat);
                Instance { cat, fields }
            })
            .collect()
    })
}

fn criterion_1() -> Outcome {
    let mut r = rng(1);
    let mut cats = fixtures::all();
    cats.extend((0..200).map(|_| random_graded_poset(&mut r, 12)));
    let mut products = 0;
    for (i, cat) in cats.iter().enumerate() {
        let ds = OrderComplex::new(cat, None).boundary_matrices();
        for (m, pair) in ds.windows(2).enumerate() {
            products += 1;
            if !pair[0].mul(&pair[1]).is_zero() {
                return Err(format!("category #{i}: d_{} d_{} != 0", m + 1, m + 2));
            }
        }
    }
    Ok(format!("{} complexes, {products} products d_m d_(m+1) all zero", cats.len()))
}

fn criterion_2() -> Outcome {
    let expected: [(&str, LoopFreeCategory, Vec<usize>); 3] = [
        ("F4", fixtures::f4(), vec![1, 1]),
        ("I2", fixtures::i2(), vec![1, 0, 0]),
        ("PA", fixtures::pa(), vec![1, 1]),
    ];
    for (name, cat, betti) in &expected {
        let got = category_homology(cat).betti;
        if &got != betti {
            return Err(format!("{name}: expected {betti:?}, got {got:?}"));
        }
    }
    let mut r = rng(2);
    let mut cats = fixtures::all();
    cats.extend((0..200).map(|_| random_graded_poset(&mut r, 12)));
    cats.extend((0..100).map(|_| random_free_category(&mut r, 7)));
    let mut compared = 0;
    for (i, cat) in cats.iter().enumerate() {
        if oracle_num_simplices(cat) > 200 {
            continue;
        }
        compared += 1;
        let snf = category_homology(cat).betti;
        let oracle = oracle_betti(cat);
        if snf != oracle {
            return Err(format!("complex #{i}: SNF {snf:?} vs rational oracle {oracle:?}"));
        }
    }
    Ok(format!(
        "F4 (1,1), I2 (1,0,0), PA (1,1); {compared} complexes agree with the rational oracle"
    ))
}

fn criterion_3() -> Outcome {
    let mut r = rng(3);
    let mut checked = 0;
    let mut attempts = 0;
    while checked < 50 {
        attempts += 1;
        if attempts > 500 {
            return Err(format!("only {checked} inclusions constructed"));
        }
        let base = random_graded_poset(&mut r, 10);
        let n = base.num_objects();
        let t = r.gen_range(0..n);
        // relations of `base` plus a new minimal object s = n below t only
        let mut relations: Vec<(usize, usize)> = base
            .arrows()
            .iter()
            .filter(|a| base.is_indecomposable(base.arrow_index(&a.id).unwrap()))
            .map(|a| (a.src, a.tgt))
            .collect();
        relations.push((n, t));
        let whole = common::poset(n + 1, &relations);
        let keep: BTreeSet<usize> = (0..n).collect();
        let sub = whole.full_subcategory(&keep).map_err(|e| e.to_string())?;
        let inclusion = FunctorMap::inclusion(&sub, &whole).map_err(|e| e.to_string())?;
        let all_initial = (0..whole.num_objects()).all(|d| {
            let fiber = homotopy_fiber(&inclusion, d, FiberSide::Right).unwrap();
            !fiber.category.initial_objects().is_empty()
        });
        if !all_initial {
            continue;
        }
        let h_sub = category_homology(&sub);
        let h_whole = category_homology(&whole);
        if !h_sub.agrees_with(&h_whole) {
            return Err(format!(
                "inclusion #{checked}: {h_sub} vs {h_whole} on {} objects",
                n + 1
            ));
        }
        // the same comparison through the subcategory of the larger complex
        if !subcategory_homology(&whole, &keep).agrees_with(&h_whole) {
            return Err(format!("inclusion #{checked}: subcomplex profile differs"));
        }
        checked += 1;
    }
    Ok(format!("{checked} inclusions with initial right fibers preserve homology"))
}

fn criterion_4() -> Outcome {
    let i2 = fixtures::i2();
    let f4 = fixtures::f4();
    let pa = fixtures::pa();
    let field = |cat: &LoopFreeCategory, ids: &[&str]| {
        vector_field_from_ids(cat, &compute_grading(cat).unwrap(), ids)
    };
    match field(&i2, &["xy", "yz"]) {
        Err(FieldError::SourceTargetClash { ref object, .. }) if object == "y" => {}
        other => return Err(format!("I2 {{xy, yz}}: {other:?}")),
    }
    match field(&f4, &["ac", "ad"]) {
        Err(FieldError::UniquenessViolation { ref object, .. }) if object == "a" => {}
        other => return Err(format!("F4 {{ac, ad}}: {other:?}")),
    }
    match field(&pa, &["u", "v"]) {
        Err(FieldError::FullParallelClass { count: 2, .. }) => {}
        other => return Err(format!("PA {{u, v}}: {other:?}")),
    }
    for (name, cat, ids) in [
        ("F4 {ac, bd}", &f4, &["ac", "bd"][..]),
        ("F4 {ac}", &f4, &["ac"][..]),
        ("PA {u}", &pa, &["u"][..]),
    ] {
        if let Err(e) = field(cat, ids) {
            return Err(format!("{name} rejected: {e}"));
        }
    }
    Ok("three violations rejected with matching errors; F4 and PA fields accepted".into())
}

fn criterion_5() -> Outcome {
    let mut fields = 0;
    let mut sets = 0;
    for (i, inst) in cellular_instances().iter().enumerate() {
        let grading = compute_grading(&inst.cat).unwrap();
        if !check_cellular(&inst.cat, &grading).ok {
            return Err(format!("instance #{i} is not cellular"));
        }
        for field in &inst.fields {
            fields += 1;
            let d = basic_sets(&inst.cat, &grading, field).map_err(|e| e.to_string())?;
            for set in &d.basic_sets {
                sets += 1;
                let h = basic_set_homology(&inst.cat, set);
                let k = set.index;
                let allowed = |deg: usize| match set.kind {
                    BasicSetKind::Critical => deg == k,
                    BasicSetKind::Recurrent => deg == k || deg == k + 1,
                };
                let len = h.betti.len();
                if let Some(bad) = (0..len).find(|&deg| {
                    !allowed(deg) && (h.betti(deg) != 0 || !h.torsion(deg).is_empty())
                }) {
                    return Err(format!(
                        "instance #{i}, field {:?}, set {} of index {k}: H_{bad} nonzero ({h})",
                        field.ids(&inst.cat),
                        inst.cat.format_objects(&set.objects)
                    ));
                }
            }
        }
    }
    let insts = cellular_instances();
    let sizes = insts.iter().map(|i| i.cat.num_objects());
    let (lo, hi) = (sizes.clone().min().unwrap(), sizes.max().unwrap());
    let top = insts
        .iter()
        .filter_map(|i| compute_grading(&i.cat).unwrap().max_degree())
        .max()
        .unwrap();
    Ok(format!(
        "100 cellular posets ({lo}..={hi} objects, degrees up to {top}), {fields} valid fields, {sets} basic sets; relative homology confined to the allowed degrees"
    ))
}

fn criterion_6() -> Outcome {
    let mut admissible = 0;
    let mut steps = 0;
    let mut stuck = 0;
    for (i, inst) in cellular_instances().iter().enumerate() {
        let grading = compute_grading(&inst.cat).unwrap();
        for field in &inst.fields {
            let d = basic_sets(&inst.cat, &grading, field).map_err(|e| e.to_string())?;
            if !check_admissibility(&inst.cat, &d).ok {
                continue;
            }
            admissible += 1;
            for tie in [TieBreak::Lowest, TieBreak::Highest] {
                let Ok(filt) = build_filtration(&inst.cat, &grading, &d, tie) else {
                    stuck += 1;
                    continue;
                };
                for c in verify_collapsing(&inst.cat, &filt) {
                    steps += 1;
                    if !c.ok {
                        return Err(format!(
                            "instance #{i}, field {:?}, step {} ({}): {} vs {}",
                            field.ids(&inst.cat),
                            c.step,
                            c.arrow,
                            c.before,
                            c.after
                        ));
                    }
                }
            }
        }
    }
    if stuck > 0 {
        return Err(format!(
            "{stuck} filtrations stuck on admissible cellular inputs ({steps} gradient steps preserved)"
        ));
    }
    Ok(format!(
        "{admissible} admissible fields, both tie orders; {steps} gradient pair steps preserve betti and torsion"
    ))
}

fn criterion_7() -> Outcome {
    let f4 = fixtures::f4();
    let grading = compute_grading(&f4).unwrap();
    let field = vector_field_from_ids(&f4, &grading, &["ac"]).unwrap();
    let d = basic_sets(&f4, &grading, &field).unwrap();
    let m = morse_numbers(&f4, &d).m;
    let b = category_homology(&f4).betti;
    if m != [1, 1] || b != [1, 1] {
        return Err(format!("F4 {{ac}}: m = {m:?}, b = {b:?}"));
    }

    let mut checked = 0;
    for (i, inst) in cellular_instances().iter().enumerate() {
        let grading = compute_grading(&inst.cat).unwrap();
        let b = category_homology(&inst.cat).betti;
        for field in &inst.fields {
            let d = basic_sets(&inst.cat, &grading, field).map_err(|e| e.to_string())?;
            if !check_admissibility(&inst.cat, &d).ok {
                continue;
            }
            checked += 1;
            let m = morse_numbers(&inst.cat, &d).m;
            let ineq = morse_inequalities(&m, &b, b.len());
            if !ineq.all_ok() {
                return Err(format!(
                    "instance #{i}, field {:?}: m = {:?}, b = {:?}, strong {:?}, weak {:?}, euler {} vs {}",
                    field.ids(&inst.cat),
                    ineq.m,
                    ineq.b,
                    ineq.strong_ok,
                    ineq.weak_ok,
                    ineq.euler_m,
                    ineq.euler_b
                ));
            }
        }
    }
    Ok(format!(
        "F4 {{ac}}: m = (1,1), b = (1,1); {checked} admissible cellular instances satisfy strong, weak and Euler"
    ))
}

fn run_report(file: &Path, extra: &[&str]) -> Result<(Vec<u8>, i32), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_lfmorse"))
        .arg("report")
        .arg(file)
        .args(["--format", "structured"])
        .args(extra)
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.stdout, out.status.code().unwrap_or(-1)))
}

fn verdict_fields(json: &[u8]) -> Result<serde_json::Value, String> {
    let v: serde_json::Value = serde_json::from_slice(json).map_err(|e| e.to_string())?;
    Ok(serde_json::json!({
        "m": v["m"], "b": v["b"], "strong_ok": v["strong_ok"], "weak_ok": v["weak_ok"],
        "euler_ok": v["euler_ok"], "guaranteed": v["guaranteed"], "verdict": v["verdict"],
        "cellular": v["hypothesis_flags"]["cellular"]["ok"],
        "admissible": v["hypothesis_flags"]["admissible"]["ok"],
    }))
}

fn criterion_8() -> Outcome {
    let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    let mut files: Vec<PathBuf> = ["f4.json", "pa.json", "sphere_poset.json"]
        .iter()
        .map(|f| data.join(f))
        .collect();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for (i, inst) in cellular_instances().iter().take(10).enumerate() {
        let field = inst.fields.last().map(|f| f.ids(&inst.cat));
        let path = dir.path().join(format!("cellular{i}.json"));
        std::fs::write(&path, serialize_document(&from_category(&inst.cat, field)))
            .map_err(|e| e.to_string())?;
        files.push(path);
    }
    for file in &files {
        let (a, code_a) = run_report(file, &[])?;
        let (b, code_b) = run_report(file, &[])?;
        if a.is_empty() || a != b || code_a != code_b {
            return Err(format!("{}: repeated runs differ", file.display()));
        }
        let (rev, code_rev) = run_report(file, &["--reverse-ties"])?;
        if verdict_fields(&a)? != verdict_fields(&rev)? || code_a != code_rev {
            return Err(format!("{}: reversed tie-breaking changes the numbers", file.display()));
        }
    }

    let mut compared = 0;
    for inst in cellular_instances() {
        for field in &inst.fields {
            let ids = field.ids(&inst.cat);
            let lo = generate_report(&inst.cat, &ids, TieBreak::Lowest).map_err(|e| e.to_string())?;
            let hi = generate_report(&inst.cat, &ids, TieBreak::Highest).map_err(|e| e.to_string())?;
            compared += 1;
            if (&lo.m, &lo.b, lo.verdict, &lo.strong_ok, &lo.weak_ok, lo.euler_ok)
                != (&hi.m, &hi.b, hi.verdict, &hi.strong_ok, &hi.weak_ok, hi.euler_ok)
            {
                return Err(format!("field {ids:?}: tie order changes the report"));
            }
        }
    }
    Ok(format!(
        "{} documents byte-identical across runs and stable under reversed ties; {compared} library reports tie-order invariant",
        files.len()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("chain-complex soundness", criterion_1),
        ("homology oracle equivalence", criterion_2),
        ("fiber inclusion preserves homology", criterion_3),
        ("vector field conditions", criterion_4),
        ("basic set relative homology degrees", criterion_5),
        ("gradient steps preserve homology", criterion_6),
        ("Morse inequalities", criterion_7),
        ("determinism", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Err("panicked".to_owned()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} ({name}): PASS [{secs:.1}s] {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{secs:.1}s] {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
