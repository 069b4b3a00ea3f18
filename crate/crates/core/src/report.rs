//! Report values and their human / machine renderings.
//!
//! Machine output is compact JSON with lexicographically sorted keys and a
//! trailing newline; it parses back to the same [`Report`].

use serde::{Deserialize, Serialize};

use crate::classify::{ClassificationReport, Witness};
use crate::ring::ElementId;
use crate::sets::SetKind;
use crate::theorems::{ClaimVerdict, SeparationReport, SuiteReport, TheoremId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RenderMode {
    Human,
    Machine,
}

kebab_names!(RenderMode {
    Human => "human",
    Machine => "machine",
});

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetsReport {
    pub ring: String,
    pub kind: SetKind,
    pub elements: Vec<ElementId>,
    pub rendered: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub ring: String,
    pub element: ElementId,
    pub witness: Witness,
    /// The element followed by the witness parts, in readable form.
    pub rendered: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub ring: String,
    pub claim: TheoremId,
    pub verdict: ClaimVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "report", rename_all = "kebab-case")]
pub enum Report {
    Classification(ClassificationReport),
    Sets(SetsReport),
    Witness(WitnessReport),
    Claim(ClaimReport),
    Suite(SuiteReport),
    Search(SeparationReport),
}

pub fn render_report(report: &Report, mode: RenderMode) -> String {
    match mode {
        RenderMode::Machine => {
            let value = serde_json::to_value(report).expect("reports serialize");
            let mut out = value.to_string();
            out.push('\n');
            out
        }
        RenderMode::Human => render_human(report),
    }
}

pub fn parse_machine_report(text: &str) -> Result<Report, serde_json::Error> {
    serde_json::from_str(text)
}

fn ids(v: &[ElementId]) -> String {
    if v.is_empty() {
        "-".to_string()
    } else {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    out += &line(rule.iter().map(String::as_str).collect());
    for row in rows {
        out += &line(row.iter().map(String::as_str).collect());
    }
    out
}

fn claim_cells(v: &ClaimVerdict) -> (String, String) {
    match v {
        ClaimVerdict::Verified { vacuous, detail } => (
            if *vacuous {
                "verified (vacuous)"
            } else {
                "verified"
            }
            .to_string(),
            detail.clone(),
        ),
        ClaimVerdict::Violated { witness, detail } => (
            "VIOLATED".to_string(),
            format!("{detail} [witness: {}]", ids(witness)),
        ),
        ClaimVerdict::Skipped { reason } => ("skipped".to_string(), reason.clone()),
    }
}

fn render_human(report: &Report) -> String {
    match report {
        Report::Classification(c) => {
            let mut out = format!(
                "ring: {}\norder: {}   |Id| = {}   |P| = {}   |U| = {}\n\n",
                c.ring, c.order, c.idempotents, c.projections, c.units
            );
            let rows: Vec<Vec<String>> = c
                .predicates
                .iter()
                .map(|(name, v)| {
                    vec![
                        name.to_string(),
                        yes_no(v.holds).to_string(),
                        ids(&v.counterexample),
                    ]
                })
                .collect();
            out += &table(&["predicate", "holds", "counterexample"], &rows);
            out
        }
        Report::Sets(s) => {
            let rows: Vec<Vec<String>> = s
                .elements
                .iter()
                .zip(&s.rendered)
                .map(|(id, text)| vec![id.to_string(), text.clone()])
                .collect();
            format!("ring: {}\n{} ({}):\n", s.ring, s.kind, s.elements.len())
                + &table(&["id", "element"], &rows)
        }
        Report::Witness(w) => {
            let mut out = format!(
                "ring: {}\nelement: {} = {}\nmode: {}\n",
                w.ring, w.element, w.rendered[0], w.witness.mode
            );
            match w.witness.parts {
                Some((e, u)) => {
                    out += &format!(
                        "witness: first = {} ({}), unit = {} ({})\n",
                        e, w.rendered[1], u, w.rendered[2]
                    );
                }
                None => out += "witness: none (search exhausted)\n",
            }
            out
        }
        Report::Claim(c) => {
            let (status, detail) = claim_cells(&c.verdict);
            format!(
                "ring: {}\nclaim: {}\nstatus: {status}\n{detail}\n",
                c.ring, c.claim
            )
        }
        Report::Suite(s) => {
            let rows: Vec<Vec<String>> = s
                .cells
                .iter()
                .map(|cell| {
                    let (status, detail) = claim_cells(&cell.verdict);
                    vec![cell.theorem.to_string(), cell.ring.clone(), status, detail]
                })
                .collect();
            table(&["claim", "ring", "status", "detail"], &rows)
                + &format!(
                    "\n{} verified, {} violated, {} skipped\n",
                    s.verified, s.violated, s.skipped
                )
        }
        Report::Search(r) => {
            let head = format!(
                "searching for {} and not {} over {} rings\n",
                r.weaker, r.stronger, r.searched
            );
            match &r.found {
                Some(ring) => {
                    head + &format!(
                        "found: {ring}\n{} fails at {}\n",
                        r.stronger,
                        ids(&r.counterexample)
                    )
                }
                None => head + "none found\n",
            }
        }
    }
}
