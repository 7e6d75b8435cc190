//! End-to-end Morse report for a category and a vector field.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::category::{compute_grading, CategoryError, LoopFreeCategory};
use crate::filtration::{
    build_filtration, morse_inequalities, morse_numbers, verify_collapsing, verify_excision,
    CollapseCheck, ExcisionCheck, FiltrationError, Inequalities, TieBreak,
};
use crate::homology::{category_homology, HomologyProfile};
use crate::morse::{
    basic_sets, check_admissibility, check_cellular, vector_field_from_ids, AdmissibilityVerdict,
    BasicSetKind, CellStatus, CellularityVerdict, FieldError,
};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Ok,
    /// Cellularity or admissibility fails; numbers are still reported.
    HypothesisViolated,
    /// Hypotheses hold but the filtration got stuck or a check failed.
    InvariantBreach,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObjectDegree {
    pub id: String,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasicSetReport {
    pub objects: Vec<String>,
    pub kind: BasicSetKind,
    pub index: usize,
    pub relative_homology: HomologyProfile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisFlags {
    pub cellular: CellularityVerdict,
    pub admissible: AdmissibilityVerdict,
    pub hold: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StuckReport {
    pub placed: usize,
    pub frontier: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationReport {
    pub tie_break: TieBreak,
    pub steps: Vec<String>,
    pub stuck: Option<StuckReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorseReport {
    pub objects: Vec<ObjectDegree>,
    pub vector_field: Vec<String>,
    pub critical: Vec<String>,
    pub basic_sets: Vec<BasicSetReport>,
    pub gradient_part: Vec<String>,
    pub hypothesis_flags: HypothesisFlags,
    pub filtration: FiltrationReport,
    pub collapsing: Vec<CollapseCheck>,
    pub collapsing_note: &'static str,
    pub excision: Vec<ExcisionCheck>,
    pub m: Vec<usize>,
    pub b: Vec<usize>,
    pub strong_ok: Vec<bool>,
    pub weak_ok: Vec<bool>,
    pub euler_m: i64,
    pub euler_b: i64,
    pub euler_ok: bool,
    /// The inequalities are backed by the theorem only when the hypotheses hold.
    pub guaranteed: bool,
    pub verdict: Verdict,
}

const COLLAPSING_NOTE: &str =
    "profile equality across a gradient step; the induced map itself is not checked";

/// Runs grading, field validation, decomposition, hypothesis checks, the
/// filtration and its checks, and the inequalities.
pub fn generate_report<S: AsRef<str>>(
    cat: &LoopFreeCategory,
    vector_field: &[S],
    tie: TieBreak,
) -> Result<MorseReport, ReportError> {
    let grading = compute_grading(cat)?;
    let field = vector_field_from_ids(cat, &grading, vector_field)?;
    let decomposition = basic_sets(cat, &grading, &field)?;
    let cellular = check_cellular(cat, &grading);
    let admissible = check_admissibility(cat, &decomposition);
    let hold = cellular.ok && admissible.ok;

    let (filtration, collapsing, excision) =
        match build_filtration(cat, &grading, &decomposition, tie) {
            Ok(f) => (
                FiltrationReport {
                    tie_break: tie,
                    steps: f.describe(cat),
                    stuck: None,
                },
                verify_collapsing(cat, &f),
                verify_excision(cat, &f, &decomposition),
            ),
            Err(FiltrationError::Stuck {
                placed,
                frontier,
                partial,
            }) => (
                FiltrationReport {
                    tie_break: tie,
                    steps: partial,
                    stuck: Some(StuckReport { placed, frontier }),
                },
                Vec::new(),
                Vec::new(),
            ),
        };

    let numbers = morse_numbers(cat, &decomposition);
    let homology = category_homology(cat);
    let Inequalities {
        m,
        b,
        strong_ok,
        weak_ok,
        euler_m,
        euler_b,
        euler_ok,
    } = morse_inequalities(&numbers.m, &homology.betti, homology.betti.len());

    let breach = filtration.stuck.is_some()
        || collapsing.iter().any(|c| !c.ok)
        || excision.iter().any(|c| !c.ok)
        || !euler_ok
        || strong_ok.contains(&false)
        || weak_ok.contains(&false);
    let verdict = if !hold {
        Verdict::HypothesisViolated
    } else if breach {
        Verdict::InvariantBreach
    } else {
        Verdict::Ok
    };

    let name = |o: usize| cat.object_id(o).to_owned();
    Ok(MorseReport {
        objects: (0..cat.num_objects())
            .map(|o| ObjectDegree {
                id: name(o),
                degree: grading.degree(o),
            })
            .collect(),
        vector_field: field.ids(cat),
        critical: decomposition.critical.iter().map(|&o| name(o)).collect(),
        basic_sets: decomposition
            .basic_sets
            .iter()
            .zip(numbers.contributions)
            .map(|(set, h)| BasicSetReport {
                objects: set.objects.iter().map(|&o| name(o)).collect(),
                kind: set.kind,
                index: set.index,
                relative_homology: h,
            })
            .collect(),
        gradient_part: decomposition
            .gradient_part
            .iter()
            .map(|&f| cat.arrow(f).id.clone())
            .collect(),
        hypothesis_flags: HypothesisFlags {
            cellular,
            admissible,
            hold,
        },
        filtration,
        collapsing,
        collapsing_note: COLLAPSING_NOTE,
        excision,
        m,
        b,
        strong_ok,
        weak_ok,
        euler_m,
        euler_b,
        euler_ok,
        guaranteed: hold,
        verdict,
    })
}

fn tuple(values: &[usize]) -> String {
    let parts: Vec<String> = values.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

impl MorseReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let list = |v: &[String]| {
            if v.is_empty() {
                "(none)".to_owned()
            } else {
                v.join(", ")
            }
        };
        let _ = writeln!(out, "objects: {}", self.objects.len());
        let _ = writeln!(out, "vector field: {}", list(&self.vector_field));
        let _ = writeln!(out, "critical: {}", list(&self.critical));
        let _ = writeln!(out, "basic sets:");
        for set in &self.basic_sets {
            let kind = match set.kind {
                BasicSetKind::Critical => "critical",
                BasicSetKind::Recurrent => "recurrent",
            };
            let _ = writeln!(
                out,
                "  {{{}}} {kind} index {}: {}",
                set.objects.join(", "),
                set.index,
                set.relative_homology
            );
        }
        let _ = writeln!(out, "gradient part: {}", list(&self.gradient_part));

        let cellular = &self.hypothesis_flags.cellular;
        if cellular.ok {
            let _ = writeln!(out, "cellularity: ok");
        } else {
            let failed: Vec<String> = cellular.failures().map(|c| c.object.clone()).collect();
            let _ = writeln!(out, "cellularity: FAILED at {}", failed.join(", "));
        }
        for c in &cellular.objects {
            if let CellStatus::Wedge { spheres } = c.status {
                let _ = writeln!(out, "  n_{} = {spheres}", c.object);
            }
        }
        let admissible = &self.hypothesis_flags.admissible;
        if admissible.ok {
            let _ = writeln!(out, "admissibility: ok");
        } else {
            let failed: Vec<String> = admissible.failures().map(|c| c.arrow.clone()).collect();
            let _ = writeln!(out, "admissibility: FAILED at {}", failed.join(", "));
        }

        let _ = writeln!(out, "filtration: {}", list(&self.filtration.steps));
        if let Some(stuck) = &self.filtration.stuck {
            let _ = writeln!(
                out,
                "filtration: STUCK after {} objects at {{{}}}",
                stuck.placed,
                stuck.frontier.join(", ")
            );
        }
        let collapse_ok = self.collapsing.iter().all(|c| c.ok);
        let _ = writeln!(
            out,
            "collapsing: {} (gradient steps: {}; {})",
            mark(collapse_ok),
            self.collapsing.len(),
            self.collapsing_note
        );
        for c in self.collapsing.iter().filter(|c| !c.ok) {
            let _ = writeln!(out, "  step {} ({}): {} vs {}", c.step, c.arrow, c.before, c.after);
        }
        let excision_ok = self.excision.iter().all(|c| c.ok);
        let _ = writeln!(
            out,
            "excision: {} (basic set steps: {})",
            mark(excision_ok),
            self.excision.len()
        );

        let _ = writeln!(out, "m = {}", tuple(&self.m));
        let _ = writeln!(out, "b = {}", tuple(&self.b));
        for k in 0..self.m.len() {
            let _ = writeln!(
                out,
                "k={k}: strong {} weak {}",
                mark(self.strong_ok[k]),
                mark(self.weak_ok[k])
            );
        }
        let _ = writeln!(
            out,
            "euler: {} vs {} {}",
            self.euler_m,
            self.euler_b,
            mark(self.euler_ok)
        );
        let verdict = match self.verdict {
            Verdict::Ok => "ok",
            Verdict::HypothesisViolated => "hypotheses not met; inequalities not guaranteed",
            Verdict::InvariantBreach => "INVARIANT BREACH",
        };
        let _ = writeln!(out, "verdict: {verdict}");
        out
    }
}
