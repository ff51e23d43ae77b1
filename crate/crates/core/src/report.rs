//! Rendering of classification records: newline-delimited JSON (one record
//! per line, schema fixed by `ClassificationRecord`) and a markdown table
//! with one row per pair.

use crate::classify::{ClassificationRecord, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Markdown,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            other => Err(format!("unknown format {other:?} (expected json or markdown)")),
        }
    }
}

pub fn render(records: &[ClassificationRecord], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => render_json(records),
        ReportFormat::Markdown => render_markdown(records),
    }
}

/// One JSON object per line; parse with `parse_json`.
pub fn render_json(records: &[ClassificationRecord]) -> String {
    let mut out = String::new();
    for rec in records {
        out.push_str(&serde_json::to_string(rec).expect("records serialize"));
        out.push('\n');
    }
    out
}

pub fn parse_json(s: &str) -> Result<Vec<ClassificationRecord>, serde_json::Error> {
    s.lines()
        .filter(|l| !l.trim().is_empty())
        .map(serde_json::from_str)
        .collect()
}

pub fn render_markdown(records: &[ClassificationRecord]) -> String {
    let mut out = String::new();
    out.push_str("| n | d | verdict | confirmed | time (ms) | evidence |\n");
    out.push_str("|---|---|---------|-----------|-----------|----------|\n");
    for rec in records {
        let verdict = match rec.verdict {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Undetermined => "undetermined",
        };
        let evidence = rec
            .evidence
            .iter()
            .map(|e| e.detail.replace('|', "/"))
            .collect::<Vec<_>>()
            .join("; ");
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} |\n",
            rec.n, rec.d, verdict, rec.confirmed, rec.elapsed_ms, evidence
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::Evidence;
    use crate::delta::EvidenceKind;

    fn sample() -> ClassificationRecord {
        ClassificationRecord {
            n: 9,
            d: 3,
            verdict: Verdict::Fails,
            evidence: vec![Evidence {
                kind: EvidenceKind::SporadicCertificate,
                base_pair: Some((8, 3)),
                detail: "socle value 171 differs from expected 135".into(),
            }],
            caveat: None,
            confirmed: true,
            elapsed_ms: 12,
        }
    }

    #[test]
    fn empty_table() {
        assert_eq!(render_json(&[]), "");
        let md = render_markdown(&[]);
        assert_eq!(md.lines().count(), 2); // header only
    }

    #[test]
    fn json_roundtrip() {
        let recs = vec![sample()];
        let text = render_json(&recs);
        let back = parse_json(&text).unwrap();
        assert_eq!(back, recs);
    }

    #[test]
    fn markdown_one_row_per_pair() {
        let recs = vec![sample(), sample()];
        let md = render_markdown(&recs);
        assert_eq!(md.lines().count(), 4);
        assert!(md.contains("| 9 | 3 | fails |"));
    }
}
