use super::equivalence::EquivalenceReport;
use super::verify::{CheckKind, ComponentReport, Status, VerifyConfig};
use super::FixlocusError;
use serde::Serialize;
use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Markdown,
    Csv,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "md" | "markdown" => Ok(ReportFormat::Markdown),
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            _ => Err(format!("unknown format `{s}` (expected md, csv or json)")),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub not_verified: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(reports: &[ComponentReport]) -> Self {
        let count = |s| reports.iter().filter(|r| r.verdict == s).count();
        Self {
            total: reports.len(),
            pass: count(Status::Pass),
            fail: count(Status::Fail),
            not_verified: count(Status::NotVerified),
            skipped: count(Status::Skipped),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Budget {
    pub max_pairs: usize,
    pub max_degree: u32,
    pub max_terms: usize,
    pub timeout_secs: u64,
}

/// A complete run: configuration echo, per-component results and equivalence bookkeeping.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub u0_t1: String,
    pub u0_tdef: String,
    pub seed: u64,
    pub tol: f64,
    pub budget: Budget,
    pub summary: Summary,
    pub components: Vec<ComponentReport>,
    pub equivalences: Vec<EquivalenceReport>,
}

impl RunReport {
    pub fn new(cfg: &VerifyConfig, components: Vec<ComponentReport>, equivalences: Vec<EquivalenceReport>) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            u0_t1: "1".to_string(),
            u0_tdef: cfg.u0_tdef.to_string(),
            seed: cfg.seed,
            tol: cfg.tol,
            budget: Budget {
                max_pairs: cfg.limits.max_pairs,
                max_degree: cfg.limits.max_degree,
                max_terms: cfg.limits.max_terms,
                timeout_secs: cfg.limits.timeout.as_secs(),
            },
            summary: Summary::of(&components),
            components,
            equivalences,
        }
    }
}

const CHECKS: [CheckKind; 4] = [
    CheckKind::Vanishing,
    CheckKind::Dimension,
    CheckKind::Invariance,
    CheckKind::Containment,
];

fn cell(r: &ComponentReport, k: CheckKind) -> String {
    r.status_of(k).map_or_else(|| "-".to_string(), |s| s.to_string())
}

fn dims(r: &ComponentReport) -> String {
    let f = |d: Option<usize>| d.map_or_else(|| "-".to_string(), |d| d.to_string());
    format!("{}/{}", f(r.claimed_dim), f(r.computed_dim))
}

fn notes(r: &ComponentReport) -> String {
    let mut parts: Vec<String> = r
        .checks
        .iter()
        .filter(|c| c.status != Status::Pass)
        .map(|c| format!("{}: {}", c.check, c.detail))
        .collect();
    if !r.completed.is_empty() {
        parts.push(format!("completed {}", r.completed.join(" ")));
    }
    parts.join("; ")
}

fn markdown(rep: &RunReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# Fixed-locus verification report\n");
    let _ = writeln!(s, "- tool: {} {}", rep.tool, rep.version);
    let _ = writeln!(s, "- u0: {} (t = 1), {} (t-deformed)", rep.u0_t1, rep.u0_tdef);
    let _ = writeln!(s, "- seed: {}, tolerance: {:e}", rep.seed, rep.tol);
    let b = &rep.budget;
    let _ = writeln!(
        s,
        "- basis budget: {} pairs, degree {}, {} terms, {} s",
        b.max_pairs, b.max_degree, b.max_terms, b.timeout_secs
    );
    let m = &rep.summary;
    let _ = writeln!(
        s,
        "- components: {} total, {} PASS, {} FAIL, {} NOT-VERIFIED, {} SKIPPED\n",
        m.total, m.pass, m.fail, m.not_verified, m.skipped
    );
    let _ = writeln!(
        s,
        "| Subgroup | Fiber | Component | Kind | u0 | Dim (claimed/computed) | VANISHING | DIMENSION | INVARIANCE | CONTAINMENT | Verdict | Pairs | Notes |"
    );
    let _ = writeln!(s, "|---|---|---|---|---|---|---|---|---|---|---|---|---|");
    for r in &rep.components {
        let pairs = r.gb.map_or_else(|| "-".to_string(), |g| g.pairs.to_string());
        let _ = write!(
            s,
            "| {} | {} | {} | {} | {} | {} ",
            r.subgroup,
            r.fiber,
            r.name,
            r.kind,
            r.u0,
            dims(r)
        );
        for k in CHECKS {
            let _ = write!(s, "| {} ", cell(r, k));
        }
        let _ = writeln!(
            s,
            "| **{}** | {} | {} |",
            r.verdict,
            pairs,
            notes(r).replace('|', "\\|")
        );
    }
    if !rep.equivalences.is_empty() {
        let _ = writeln!(s, "\n## Equivalent pairs\n");
        let _ = writeln!(s, "| Subgroup | Partner | Status | Shared components |");
        let _ = writeln!(s, "|---|---|---|---|");
        for e in &rep.equivalences {
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} |",
                e.label,
                e.partner,
                e.status,
                e.shared_components.join(", ")
            );
        }
    }
    s
}

fn csv(rep: &RunReport) -> Result<String, FixlocusError> {
    let err = |e: csv::Error| FixlocusError::Output(e.to_string());
    let mut w = csv::WriterBuilder::new()
        .quote_style(csv::QuoteStyle::NonNumeric)
        .from_writer(Vec::new());
    w.write_record([
        "subgroup",
        "fiber",
        "component",
        "kind",
        "u0",
        "claimed_dim",
        "computed_dim",
        "vanishing",
        "dimension",
        "invariance",
        "containment",
        "verdict",
        "gb_pairs",
        "seed",
        "version",
        "notes",
        "expressions",
    ])
    .map_err(err)?;
    for r in &rep.components {
        let opt = |d: Option<usize>| d.map(|d| d.to_string()).unwrap_or_default();
        let mut row = vec![
            r.subgroup.clone(),
            r.fiber.to_string(),
            r.name.clone(),
            r.kind.to_string(),
            r.u0.clone(),
            opt(r.claimed_dim),
            opt(r.computed_dim),
        ];
        row.extend(CHECKS.iter().map(|k| cell(r, *k)));
        row.push(r.verdict.to_string());
        row.push(r.gb.map(|g| g.pairs.to_string()).unwrap_or_default());
        row.push(rep.seed.to_string());
        row.push(rep.version.clone());
        row.push(notes(r));
        row.push(r.expressions.join("; "));
        w.write_record(&row).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| FixlocusError::Output(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| FixlocusError::Output(e.to_string()))
}

/// Renders a report; output depends only on its content.
pub fn emit_report(rep: &RunReport, format: ReportFormat) -> Result<String, FixlocusError> {
    match format {
        ReportFormat::Markdown => Ok(markdown(rep)),
        ReportFormat::Csv => csv(rep),
        ReportFormat::Json => serde_json::to_string_pretty(rep)
            .map(|s| s + "\n")
            .map_err(|e| FixlocusError::Output(e.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixlocus::{verify_component, Registry};

    fn empty() -> RunReport {
        RunReport::new(&VerifyConfig::default(), Vec::new(), Vec::new())
    }

    #[test]
    fn empty_reports_have_headers() {
        let md = emit_report(&empty(), ReportFormat::Markdown).unwrap();
        assert!(md.contains("| Subgroup |"));
        let csv = emit_report(&empty(), ReportFormat::Csv).unwrap();
        assert_eq!(csv.lines().count(), 1);
        assert!(csv.starts_with("\"subgroup\",\"fiber\",\"component\""));
        let json: serde_json::Value =
            serde_json::from_str(&emit_report(&empty(), ReportFormat::Json).unwrap()).unwrap();
        assert_eq!(json["components"].as_array().unwrap().len(), 0);
    }

    #[test]
    fn csv_quotes_expression_fields() {
        let reg = Registry::shipped();
        let c = reg
            .components
            .iter()
            .find(|c| c.subgroup == "G_c" && c.name == "I_1")
            .unwrap();
        let r = verify_component(c, &reg, &VerifyConfig::default());
        let rep = RunReport::new(&VerifyConfig::default(), vec![r], Vec::new());
        let text = emit_report(&rep, ReportFormat::Csv).unwrap();
        let mut rd = csv::Reader::from_reader(text.as_bytes());
        let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
        assert_eq!(rows.len(), 1);
        assert!(rows[0][16].contains("; "));
        assert!(text.contains('"'));
    }

    #[test]
    fn format_names() {
        assert_eq!("md".parse::<ReportFormat>().unwrap(), ReportFormat::Markdown);
        assert!("xml".parse::<ReportFormat>().is_err());
    }
}
