//! Machine-readable summaries of the analysis pass, serialized with a
//! fixed field order so identical inputs produce byte-identical output.

use serde::Serialize;

use crate::analysis::{
    enumerate_loops, is_atomic_tight, is_bounded, is_semi_safe, is_tight, Verdict,
};
use crate::syntax::{is_normal_form, is_rectified, Formula, Program, SyntaxError};

/// Classification summary for one target. `normal_form` is present only
/// when the target came in as a program; `semi_safe_relative` only when
/// an intensional predicate list was supplied.
#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub rectified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal_form: Option<bool>,
    pub semi_safe: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub semi_safe_relative: Option<bool>,
    pub bounded: String,
    pub atomic_tight: String,
    pub tight: bool,
    pub loop_status: String,
    pub loops: Vec<String>,
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::Yes => "yes".to_string(),
        Verdict::No => "no".to_string(),
        Verdict::Unknown(reason) => format!("unknown: {reason}"),
    }
}

/// Runs every classifier over the formula and collects the verdicts.
/// `program` supplies the rule-level checks when the target came in as a
/// program; `intensional` adds the relative semi-safety verdict.
pub fn analyze(
    f: &Formula,
    program: Option<&Program>,
    intensional: Option<&[String]>,
) -> Result<AnalysisReport, SyntaxError> {
    let loops = enumerate_loops(f, None);
    Ok(AnalysisReport {
        rectified: is_rectified(f),
        normal_form: program.map(is_normal_form),
        semi_safe: is_semi_safe(f, None)?,
        semi_safe_relative: match intensional {
            Some(p) => Some(is_semi_safe(f, Some(p))?),
            None => None,
        },
        bounded: verdict_text(&is_bounded(f)),
        atomic_tight: verdict_text(&is_atomic_tight(f)),
        tight: is_tight(f),
        loop_status: loops.status.to_string(),
        loops: loops.display_loops(),
    })
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("rectified:    {}\n", self.rectified));
        if let Some(nf) = self.normal_form {
            out.push_str(&format!("normal form:  {nf}\n"));
        }
        out.push_str(&format!("semi-safe:    {}\n", self.semi_safe));
        if let Some(rel) = self.semi_safe_relative {
            out.push_str(&format!("semi-safe(p): {rel}\n"));
        }
        out.push_str(&format!("bounded:      {}\n", self.bounded));
        out.push_str(&format!("atomic-tight: {}\n", self.atomic_tight));
        out.push_str(&format!("tight:        {}\n", self.tight));
        out.push_str(&format!("loop status:  {}\n", self.loop_status));
        for l in &self.loops {
            out.push_str(&format!("loop:         {l}\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_program;

    #[test]
    fn report_is_deterministic() {
        let prog = parse_program("p(X) :- q(X). q(Y) :- p(Y). p(Z) :- not r(Z).").unwrap();
        let f = prog.fol_representation().unwrap();
        let a = analyze(&f, Some(&prog), None).unwrap();
        let b = analyze(&f, Some(&prog), None).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.to_json().contains("\"tight\": false"));
    }

    #[test]
    fn relative_verdict_appears_only_on_request() {
        let prog = parse_program("p(X) :- q(X).").unwrap();
        let f = prog.fol_representation().unwrap();
        let plain = analyze(&f, Some(&prog), None).unwrap();
        assert!(!plain.to_json().contains("semi_safe_relative"));
        let p = vec!["p".to_string()];
        let rel = analyze(&f, Some(&prog), Some(&p)).unwrap();
        assert!(rel.to_json().contains("semi_safe_relative"));
        assert!(rel.to_text().contains("semi-safe(p)"));
    }
}
