//! First-order problems in TPTP FOF form and a harness for external
//! SZS-compliant provers. The emitter is self-checking: everything it
//! produces re-parses under the bundled minimal grammar checker. The
//! prover harness never panics on tool failure; every mishap comes back
//! as a `ToolError` verdict.

use std::collections::BTreeSet;
use std::io::{Read, Write};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::generate::LoopFormulaSet;
use crate::syntax::{Formula, Program, SyntaxError};

mod fof;

pub use fof::check_fof;

use fof::{claim_name, formula_tokens, render, SymbolTable};

/// A batch of named closed sentences plus an optional goal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TptpProblem {
    pub axioms: Vec<(String, Formula)>,
    pub conjecture: Option<(String, Formula)>,
}

/// Outcome of one external prover run, read off the SZS status line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProverVerdict {
    Theorem,
    CounterSatisfiable,
    Unknown,
    Timeout,
    ToolError(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TptpError {
    #[error("formula `{name}` has free variable `{var}`; problems carry closed sentences only")]
    NotClosed { name: String, var: String },
    #[error("malformed FOF text: {0}")]
    Malformed(String),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

/// Renders the problem as FOF declarations, one per line. Declaration
/// names are sanitized to unique lower words; symbols are renamed
/// injectively into the FOF lexicon.
pub fn to_tptp(problem: &TptpProblem) -> Result<String, TptpError> {
    let mut decls: Vec<(&String, &'static str, &Formula)> = problem
        .axioms
        .iter()
        .map(|(n, f)| (n, "axiom", f))
        .collect();
    if let Some((n, f)) = &problem.conjecture {
        decls.push((n, "conjecture", f));
    }
    for (name, _, f) in &decls {
        if let Some(var) = f.free_vars().first() {
            return Err(TptpError::NotClosed {
                name: (*name).clone(),
                var: var.clone(),
            });
        }
    }
    let formulas: Vec<&Formula> = decls.iter().map(|(_, _, f)| *f).collect();
    let table = SymbolTable::build(&formulas)?;
    let mut names = BTreeSet::new();
    let mut lines = Vec::new();
    for (name, role, f) in &decls {
        let mut tokens = vec!["fof".to_string(), "(".to_string()];
        tokens.push(claim_name(&mut names, name));
        tokens.push(",".to_string());
        tokens.push(role.to_string());
        tokens.push(",".to_string());
        formula_tokens(f, &table, &mut tokens);
        tokens.push(")".to_string());
        tokens.push(".".to_string());
        lines.push(render(&tokens));
    }
    let mut text = lines.join("\n");
    text.push('\n');
    Ok(text)
}

/// Assembles the classical entailment problem for a program: its
/// first-order representation conjunct by conjunct, the produced loop
/// formulas, the small-predicate axioms when the reduction carried them,
/// and the query as the conjecture.
pub fn build_entailment_job(
    gamma: &Program,
    delta: &LoopFormulaSet,
    spp: Option<&Formula>,
    query: &Formula,
) -> Result<TptpProblem, TptpError> {
    let rep = gamma.fol_representation()?;
    let mut axioms: Vec<(String, Formula)> = rep
        .conjuncts()
        .iter()
        .enumerate()
        .map(|(i, f)| (format!("ax{}", i + 1), (*f).clone()))
        .collect();
    for (i, f) in delta.formulas.iter().enumerate() {
        axioms.push((format!("lf{}", i + 1), f.clone()));
    }
    if let Some(f) = spp {
        axioms.push(("spp".to_string(), f.clone()));
    }
    Ok(TptpProblem {
        axioms,
        conjecture: Some(("goal".to_string(), query.clone())),
    })
}

/// Writes the problem to a temp file, substitutes `{file}` and
/// `{timeout}` into the command template, runs it through the shell, and
/// reads the SZS status from its output. Tool failures of any kind come
/// back as `ToolError`; exceeding the wall-clock budget kills the process
/// and reports `Timeout`.
pub fn invoke_prover(
    command_template: &str,
    problem: &TptpProblem,
    timeout_s: u64,
) -> ProverVerdict {
    if !command_template.contains("{file}") {
        return ProverVerdict::ToolError(
            "command template must contain the `{file}` placeholder".to_string(),
        );
    }
    let text = match to_tptp(problem) {
        Ok(t) => t,
        Err(e) => return ProverVerdict::ToolError(e.to_string()),
    };
    let mut file = match tempfile::Builder::new()
        .prefix("folloop")
        .suffix(".p")
        .tempfile()
    {
        Ok(f) => f,
        Err(e) => return ProverVerdict::ToolError(format!("cannot create temp file: {e}")),
    };
    if let Err(e) = file.write_all(text.as_bytes()) {
        return ProverVerdict::ToolError(format!("cannot write temp file: {e}"));
    }
    let path = file.path().to_string_lossy().to_string();
    let cmd = command_template
        .replace("{file}", &path)
        .replace("{timeout}", &timeout_s.to_string());
    run_shell(&cmd, Duration::from_secs(timeout_s))
}

fn run_shell(cmd: &str, budget: Duration) -> ProverVerdict {
    let mut child = match std::process::Command::new("sh")
        .arg("-c")
        .arg(cmd)
        .stdin(std::process::Stdio::null())
        .stdout(std::process::Stdio::piped())
        .stderr(std::process::Stdio::piped())
        .spawn()
    {
        Ok(c) => c,
        Err(e) => return ProverVerdict::ToolError(format!("cannot spawn shell: {e}")),
    };
    let stdout = child.stdout.take();
    let stderr = child.stderr.take();
    let out_reader = std::thread::spawn(move || drain(stdout));
    let err_reader = std::thread::spawn(move || drain(stderr));
    let deadline = Instant::now() + budget;
    let timed_out = loop {
        match child.try_wait() {
            Ok(Some(_)) => break false,
            Ok(None) => {
                if Instant::now() >= deadline {
                    let _ = child.kill();
                    let _ = child.wait();
                    break true;
                }
                std::thread::sleep(Duration::from_millis(25));
            }
            Err(e) => {
                let _ = child.kill();
                return ProverVerdict::ToolError(format!("cannot wait on tool: {e}"));
            }
        }
    };
    if timed_out {
        // The drain threads are left to finish on their own: a killed
        // tool's grandchildren can keep the pipe open past the deadline.
        return ProverVerdict::Timeout;
    }
    let mut output = out_reader.join().unwrap_or_default();
    output.push_str(&err_reader.join().unwrap_or_default());
    parse_szs(&output)
}

fn drain(stream: Option<impl Read>) -> String {
    let mut text = String::new();
    if let Some(mut s) = stream {
        let _ = s.read_to_string(&mut text);
    }
    text
}

fn parse_szs(output: &str) -> ProverVerdict {
    for line in output.lines() {
        if let Some(pos) = line.find("SZS status") {
            let rest = line[pos + "SZS status".len()..].trim_start();
            let word = rest.split_whitespace().next().unwrap_or("");
            return match word {
                "Theorem" | "Unsatisfiable" => ProverVerdict::Theorem,
                "CounterSatisfiable" | "Satisfiable" => ProverVerdict::CounterSatisfiable,
                "Timeout" | "ResourceOut" => ProverVerdict::Timeout,
                "GaveUp" | "Unknown" => ProverVerdict::Unknown,
                other => {
                    ProverVerdict::ToolError(format!("unrecognized SZS status `{other}`"))
                }
            };
        }
    }
    let mut shown: String = output.chars().take(200).collect();
    if shown.len() < output.len() {
        shown.push_str("...");
    }
    ProverVerdict::ToolError(format!("no SZS status line in tool output: {shown:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_formula;
    use crate::syntax::Term;

    fn axiom(name: &str, text: &str) -> (String, Formula) {
        (name.to_string(), parse_formula(text).unwrap())
    }

    fn problem(axioms: Vec<(String, Formula)>) -> TptpProblem {
        TptpProblem {
            axioms,
            conjecture: None,
        }
    }

    #[test]
    fn denial_keeps_its_implication_shape() {
        let p = problem(vec![axiom("lf_r", "forall U (r(U) -> #false)")]);
        let text = to_tptp(&p).unwrap();
        assert_eq!(text, "fof(lf_r, axiom, ![U]: (r(U) => $false)).\n");
    }

    #[test]
    fn conjunction_of_ground_atoms() {
        let p = problem(vec![axiom("ax1", "p(a) & q(b)")]);
        let text = to_tptp(&p).unwrap();
        assert_eq!(text, "fof(ax1, axiom, (p(a) & q(b))).\n");
    }

    #[test]
    fn existential_conjecture() {
        let p = TptpProblem {
            axioms: vec![],
            conjecture: Some(axiom("goal", "exists X (married(X))")),
        };
        let text = to_tptp(&p).unwrap();
        assert_eq!(text, "fof(goal, conjecture, ?[X]: married(X)).\n");
    }

    #[test]
    fn inequality_and_nested_quantifiers() {
        let p = problem(vec![axiom(
            "lf",
            "forall X1 X2 (p(X1) & p(X2) -> exists Y (p(Y) & Y != X1 & Y != X2))",
        )]);
        let text = to_tptp(&p).unwrap();
        assert_eq!(
            text,
            "fof(lf, axiom, ![X1, X2]: ((p(X1) & p(X2)) => \
             ?[Y]: (p(Y) & Y != X1 & Y != X2))).\n"
        );
        check_fof(&text).unwrap();
    }

    #[test]
    fn open_formulas_are_rejected() {
        let p = problem(vec![axiom("bad", "p(X)")]);
        assert!(matches!(
            to_tptp(&p).unwrap_err(),
            TptpError::NotClosed { name, var } if name == "bad" && var == "X"
        ));
    }

    #[test]
    fn emitted_batches_pass_the_grammar_checker() {
        let p = TptpProblem {
            axioms: vec![
                axiom("a1", "forall X (p(X) <-> X = a & q(a))"),
                axiom("a2", "p(f(a)) | not q(b)"),
                axiom("a3", "#true & #false"),
            ],
            conjecture: Some(axiom("goal", "exists X Y (p(X) & q(Y))")),
        };
        check_fof(&to_tptp(&p).unwrap()).unwrap();
    }

    #[test]
    fn mangling_separates_case_clash_and_kind_clash() {
        let clash = Formula::forall(
            "x1",
            Formula::forall(
                "X1",
                Formula::and(
                    Formula::atom("p", vec![Term::var("x1")]),
                    Formula::atom("p", vec![Term::app("p", vec![Term::var("X1")])]),
                ),
            ),
        );
        let p = problem(vec![("ax".to_string(), clash)]);
        let text = to_tptp(&p).unwrap();
        assert!(text.contains("X1") && text.contains("X1_2"));
        assert!(text.contains("p_2"));
        check_fof(&text).unwrap();
    }

    #[test]
    fn duplicate_declaration_names_are_suffixed() {
        let p = problem(vec![axiom("ax", "p(a)"), axiom("ax", "q(a)")]);
        let text = to_tptp(&p).unwrap();
        assert!(text.contains("fof(ax,") && text.contains("fof(ax_2,"));
    }

    #[test]
    fn entailment_job_shape() {
        let prog = crate::parse::parse_program("p(X) :- q(X). q(a).").unwrap();
        let delta = LoopFormulaSet {
            base: prog.fol_representation().unwrap(),
            formulas: vec![parse_formula("forall U (r(U) -> #false)").unwrap()],
            provenance: "test".to_string(),
        };
        let query = parse_formula("exists X (p(X))").unwrap();
        let job = build_entailment_job(&prog, &delta, None, &query).unwrap();
        assert_eq!(job.axioms.len(), 3);
        assert_eq!(job.axioms[0].0, "ax1");
        assert_eq!(job.axioms[2].0, "lf1");
        assert_eq!(job.conjecture.as_ref().unwrap().0, "goal");
        check_fof(&to_tptp(&job).unwrap()).unwrap();
    }

    fn trivial_problem() -> TptpProblem {
        problem(vec![axiom("ax", "p(a)")])
    }

    #[test]
    fn status_words_map_to_verdicts() {
        let p = trivial_problem();
        let run = |tpl: &str| invoke_prover(tpl, &p, 10);
        assert_eq!(
            run("echo '% SZS status Theorem for {file}'"),
            ProverVerdict::Theorem
        );
        assert_eq!(
            run("echo 'SZS status Unsatisfiable # {file}'"),
            ProverVerdict::Theorem
        );
        assert_eq!(
            run("echo 'SZS status CounterSatisfiable # {file}'"),
            ProverVerdict::CounterSatisfiable
        );
        assert_eq!(
            run("echo 'SZS status Satisfiable # {file}'"),
            ProverVerdict::CounterSatisfiable
        );
        assert_eq!(
            run("echo 'SZS status GaveUp # {file}'"),
            ProverVerdict::Unknown
        );
    }

    #[test]
    fn problem_file_reaches_the_tool() {
        let verdict = invoke_prover(
            "grep -q 'fof(ax, axiom, p(a))' {file} && echo 'SZS status Theorem'",
            &trivial_problem(),
            10,
        );
        assert_eq!(verdict, ProverVerdict::Theorem);
    }

    #[test]
    fn missing_binary_is_a_tool_error() {
        let verdict = invoke_prover(
            "definitely_not_an_installed_prover_b1nary {file}",
            &trivial_problem(),
            10,
        );
        assert!(matches!(verdict, ProverVerdict::ToolError(_)));
    }

    #[test]
    fn template_without_file_placeholder_is_a_tool_error() {
        let verdict = invoke_prover("echo 'SZS status Theorem'", &trivial_problem(), 10);
        assert!(matches!(verdict, ProverVerdict::ToolError(_)));
    }

    #[test]
    fn budget_exhaustion_kills_the_tool() {
        let verdict = invoke_prover("sleep 30 # {file}", &trivial_problem(), 0);
        assert_eq!(verdict, ProverVerdict::Timeout);
    }

    #[test]
    fn timeout_placeholder_is_substituted() {
        let verdict = invoke_prover(
            "test {timeout} = 7 && echo 'SZS status Theorem' # {file}",
            &trivial_problem(),
            7,
        );
        assert_eq!(verdict, ProverVerdict::Theorem);
    }
}
