use std::io::Write;

use qlab::C64;
use serde::Serialize;

use crate::config::{pair, ConfigEcho, Emit};
use crate::error::{CliError, ErrorInfo};

/// One line of output: a value, optionally compared with an expectation or
/// judged by a residual against a tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub check: String,
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
}

impl Row {
    pub fn new(check: &str, label: impl Into<String>) -> Self {
        Row { check: check.into(), label: label.into(), value: None, expected: None, residual: None, tol: None, pass: None }
    }

    pub fn value(mut self, v: C64) -> Self {
        self.value = Some(pair(v));
        self
    }

    /// Residual judged against `tol`.
    pub fn residual(mut self, r: f64, tol: f64) -> Self {
        self.residual = Some(r);
        self.tol = Some(tol);
        self.pass = Some(r <= tol);
        self
    }

    /// Value compared with a closed form, relative to `max(1, |expected|)`.
    pub fn golden(self, got: C64, want: C64, tol: f64) -> Self {
        let r = (got - want).norm() / want.norm().max(1.0);
        let mut row = self.value(got).residual(r, tol);
        row.expected = Some(pair(want));
        row
    }

    /// A boolean outcome with no numeric residual.
    pub fn flag(mut self, ok: bool) -> Self {
        self.pass = Some(ok);
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub status: String,
    pub config: Option<ConfigEcho>,
    pub rows: Vec<Row>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

impl Report {
    pub fn new(command: &str, config: Option<ConfigEcho>) -> Self {
        Report { command: command.into(), status: String::new(), config, rows: Vec::new(), error: None }
    }

    pub fn failed_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.pass == Some(false)).count()
    }

    /// Sets the status and returns the process exit code.
    pub fn finish(&mut self, err: Option<CliError>) -> i32 {
        let code = match &err {
            Some(e) => e.exit_code(),
            None if self.failed_rows() > 0 => 1,
            None => 0,
        };
        self.error = err.map(|e| e.info());
        self.status = match code {
            0 => "pass",
            1 => "fail",
            _ => "error",
        }
        .into();
        code
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Io(e.to_string());
        w.write_record(["check", "label", "value_re", "value_im", "expected_re", "expected_im", "residual", "tol", "pass"]).map_err(io)?;
        let num = |x: Option<f64>| x.map(|v| format!("{v:e}")).unwrap_or_default();
        for r in &self.rows {
            w.write_record([
                r.check.clone(),
                r.label.clone(),
                num(r.value.map(|v| v[0])),
                num(r.value.map(|v| v[1])),
                num(r.expected.map(|v| v[0])),
                num(r.expected.map(|v| v[1])),
                num(r.residual),
                num(r.tol),
                r.pass.map(|p| p.to_string()).unwrap_or_default(),
            ])
            .map_err(io)?;
        }
        if let Some(e) = &self.error {
            w.write_record(["error", &e.kind, "", "", "", "", "", "", "false"]).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
    }

    pub fn render(&self, emit: Emit) -> Result<String, CliError> {
        match emit {
            Emit::Json => Ok(self.to_json()),
            Emit::Csv => self.to_csv(),
        }
    }

    pub fn write(&self, emit: Emit, out: Option<&std::path::Path>) -> Result<(), CliError> {
        let text = self.render(emit)?;
        match out {
            Some(p) => std::fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
            None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_rows() {
        let mut r = Report::new("verify", None);
        r.rows.push(Row::new("tq", "z0").residual(1e-12, 1e-8));
        assert_eq!(r.finish(None), 0);
        r.rows.push(Row::new("tq", "z1").residual(1e-3, 1e-8));
        assert_eq!(r.finish(None), 1);
        assert_eq!(r.status, "fail");
        assert_eq!(r.finish(Some(CliError::Config("bad".into()))), 2);
    }

    #[test]
    fn csv_layout() {
        let mut r = Report::new("verify", None);
        r.rows.push(Row::new("x", "a").golden(C64::new(1.0, 2.0), C64::new(1.0, 2.0), 1e-9));
        let text = r.to_csv().unwrap();
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with("check,label,value_re"));
        assert!(lines.next().unwrap().starts_with("x,a,1e0,2e0,1e0,2e0,0e0"));
    }

    #[test]
    fn complex_as_pairs() {
        let mut r = Report::new("spectrum", None);
        r.rows.push(Row::new("T", "v").value(C64::new(0.5, -1.0)));
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["rows"][0]["value"], serde_json::json!([0.5, -1.0]));
    }
}
