//! Text, JSON-lines and CSV rendering of sweep results.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use serde::Serialize;

use crate::congruences::{BpjTerm, CongruenceResult, Verdict};
use crate::sweep::{PrimeReport, Summary};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "text" => Ok(Format::Text),
            "json" | "jsonl" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format `{other}` (expected text, json or csv)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

pub const CSV_HEADER: &str = "id,d,delta,p,modulus,lhs,rhs,verdict";

/// One output row. Skipped results have `lhs`/`rhs` of `null` (empty in CSV).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub id: String,
    pub d: Option<u8>,
    pub delta: Option<u8>,
    pub p: u64,
    pub modulus: u64,
    pub lhs: Option<u64>,
    pub rhs: Option<u64>,
    pub verdict: Verdict,
}

impl From<&CongruenceResult> for Record {
    fn from(r: &CongruenceResult) -> Self {
        let (d, delta) = r.id.params().unzip();
        Self {
            id: r.id.tag().to_string(),
            d,
            delta,
            p: r.p,
            modulus: r.modulus,
            lhs: r.lhs.map(|x| x.value()),
            rhs: r.rhs.map(|x| x.value()),
            verdict: r.verdict,
        }
    }
}

impl Record {
    /// Per-`j` row of the `C(p, j) mod p^2` check, id `BPJ:j=<j>`.
    pub fn bpj_term(p: u64, t: &BpjTerm) -> Self {
        Self {
            id: format!("BPJ:j={}", t.j),
            d: None,
            delta: None,
            p,
            modulus: p * p,
            lhs: Some(t.lhs),
            rhs: Some(t.rhs),
            verdict: if t.lhs == t.rhs {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
        }
    }

    fn label(&self) -> String {
        match (self.d, self.delta) {
            (Some(d), Some(delta)) => format!("{}:{d},{delta}", self.id),
            _ => self.id.clone(),
        }
    }
}

fn opt(x: Option<impl ToString>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

pub struct ReportWriter<W: Write> {
    format: Format,
    out: W,
}

impl<W: Write> ReportWriter<W> {
    pub fn new(format: Format, out: W) -> Self {
        Self { format, out }
    }

    pub fn format(&self) -> Format {
        self.format
    }

    pub fn header(&mut self) -> io::Result<()> {
        if self.format == Format::Csv {
            writeln!(self.out, "{CSV_HEADER}")?;
        }
        Ok(())
    }

    pub fn record(&mut self, r: &Record) -> io::Result<()> {
        match self.format {
            Format::Text => match (r.lhs, r.rhs) {
                (Some(l), Some(rr)) => writeln!(
                    self.out,
                    "p={} {} {} lhs={l} rhs={rr} (mod {})",
                    r.p,
                    r.label(),
                    r.verdict,
                    r.modulus
                ),
                _ => writeln!(self.out, "p={} {} {}", r.p, r.label(), r.verdict),
            },
            Format::Json => {
                serde_json::to_writer(&mut self.out, r)?;
                writeln!(self.out)
            }
            Format::Csv => writeln!(
                self.out,
                "{},{},{},{},{},{},{},{}",
                r.id,
                opt(r.d),
                opt(r.delta),
                r.p,
                r.modulus,
                opt(r.lhs),
                opt(r.rhs),
                r.verdict
            ),
        }
    }

    /// Writes every result of one prime, with per-`j` BPJ rows right after
    /// the aggregate BPJ row when present.
    pub fn prime(&mut self, report: &PrimeReport) -> io::Result<()> {
        for r in &report.results {
            self.record(&Record::from(r))?;
            if r.id == crate::congruences::CongruenceId::BPJ {
                for t in report.bpj_terms.iter().flatten() {
                    self.record(&Record::bpj_term(report.p, t))?;
                }
            }
        }
        Ok(())
    }

    /// Writes a free-form line, e.g. the text-mode summary.
    pub fn line(&mut self, line: &str) -> io::Result<()> {
        writeln!(self.out, "{line}")
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.out.flush()
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

pub fn summary_line(s: &Summary) -> String {
    format!(
        "primes: {}, checked: {}, passed: {}, skipped: {}, failed: {}",
        s.primes, s.checked, s.passed, s.skipped, s.failed
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruences::{check, CongruenceId};

    fn render(format: Format, results: &[CongruenceResult]) -> String {
        let mut w = ReportWriter::new(format, Vec::new());
        w.header().unwrap();
        for r in results {
            w.record(&Record::from(r)).unwrap();
        }
        String::from_utf8(w.into_inner()).unwrap()
    }

    #[test]
    fn json_schema() {
        let r = check(CongruenceId::t31(0, 0).unwrap(), 7).unwrap();
        assert_eq!(
            render(Format::Json, &[r]),
            "{\"id\":\"T31\",\"d\":0,\"delta\":0,\"p\":7,\"modulus\":7,\"lhs\":4,\"rhs\":4,\"verdict\":\"pass\"}\n"
        );
        let s = check(CongruenceId::T12A, 5).unwrap();
        assert_eq!(
            render(Format::Json, &[s]),
            "{\"id\":\"T12A\",\"d\":null,\"delta\":null,\"p\":5,\"modulus\":5,\"lhs\":null,\"rhs\":null,\"verdict\":\"skip\"}\n"
        );
    }

    #[test]
    fn csv_rows() {
        let rows = [
            check(CongruenceId::t31(1, 0).unwrap(), 7).unwrap(),
            check(CongruenceId::W3, 7).unwrap(),
        ];
        let out = render(Format::Csv, &rows);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert!(lines[1].starts_with("T31,1,0,7,7,"));
        assert_eq!(lines[2], "W3,,,7,343,1,1,pass");
    }

    #[test]
    fn text_rows() {
        let r = check(CongruenceId::T11A, 3).unwrap();
        assert_eq!(render(Format::Text, &[r]), "p=3 T11A pass lhs=2 rhs=2 (mod 3)\n");
        let s = check(CongruenceId::T11A, 2).unwrap();
        assert_eq!(render(Format::Text, &[s]), "p=2 T11A skip\n");
    }

    #[test]
    fn format_parsing() {
        assert_eq!("JSON".parse::<Format>().unwrap(), Format::Json);
        assert!("xml".parse::<Format>().is_err());
    }
}
