use std::fmt::Display;
use std::io::Write;

use serde_json::{json, Map, Value};

#[derive(Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub details: String,
}

impl Check {
    /// Passes when both sides print the same; on failure the details carry
    /// both values.
    pub fn equal(name: impl Into<String>, got: impl Display, want: impl Display) -> Self {
        let (got, want) = (got.to_string(), want.to_string());
        let pass = got == want;
        let details = if pass {
            got.clone()
        } else {
            format!("got {got}, expected {want}")
        };
        Self {
            name: name.into(),
            pass,
            details,
        }
    }

    pub fn holds(name: impl Into<String>, pass: bool, details: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            pass,
            details: details.into(),
        }
    }
}

/// Output of one command. Keys are sorted on serialization, so equal reports
/// print byte-identically.
#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub params: Map<String, Value>,
    pub results: Vec<Map<String, Value>>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            params: Map::new(),
            results: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn row(&mut self, fields: &[(&str, Value)]) {
        self.results.push(
            fields
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
        );
    }

    pub fn check(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "pass": c.pass, "details": c.details}))
            .collect();
        json!({
            "command": self.command,
            "params": self.params,
            "results": self.results,
            "checks": checks,
            "status": if self.passed() { "PASS" } else { "FAIL" },
        })
    }

    pub fn write_json(&self, out: &mut impl Write) -> anyhow::Result<()> {
        serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
        writeln!(out)?;
        Ok(())
    }

    /// Params as a key/value table, then results, then checks, separated by
    /// blank lines.
    pub fn write_csv(&self, out: &mut impl Write) -> anyhow::Result<()> {
        let params: Vec<Map<String, Value>> = self
            .params
            .iter()
            .map(|(k, v)| {
                let mut m = Map::new();
                m.insert("param".into(), k.clone().into());
                m.insert("value".into(), v.clone());
                m
            })
            .collect();
        write_table(out, &params)?;
        if !params.is_empty() && !self.results.is_empty() {
            writeln!(out)?;
        }
        write_table(out, &self.results)?;
        if !self.checks.is_empty() {
            writeln!(out)?;
            let rows: Vec<Map<String, Value>> = self
                .checks
                .iter()
                .map(|c| {
                    let mut m = Map::new();
                    m.insert("name".into(), c.name.clone().into());
                    m.insert("pass".into(), c.pass.into());
                    m.insert("details".into(), c.details.clone().into());
                    m
                })
                .collect();
            write_table(out, &rows)?;
        }
        Ok(())
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn write_table(out: &mut impl Write, rows: &[Map<String, Value>]) -> anyhow::Result<()> {
    let Some(first) = rows.first() else {
        return Ok(());
    };
    let header: Vec<&String> = first.keys().collect();
    let mut w = csv::Writer::from_writer(&mut *out);
    w.write_record(&header)?;
    for row in rows {
        w.write_record(
            header
                .iter()
                .map(|k| row.get(*k).map(cell).unwrap_or_default()),
        )?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failed_checks_carry_both_sides() {
        let c = Check::equal("x", 1, -8);
        assert!(!c.pass);
        assert_eq!(c.details, "got 1, expected -8");
        assert!(Check::equal("y", "3/2", "3/2").pass);
    }

    #[test]
    fn json_keys_are_sorted() {
        let mut r = Report::new("demo").param("n", 3).param("a", 1);
        r.row(&[("z", json!(1)), ("b", json!("1/2"))]);
        let text = serde_json::to_string(&r.to_json()).unwrap();
        assert!(text.find("\"a\"").unwrap() < text.find("\"n\"").unwrap());
        assert!(text.find("\"b\"").unwrap() < text.find("\"z\"").unwrap());
    }

    #[test]
    fn csv_quotes_when_needed() {
        let mut r = Report::new("demo");
        r.row(&[("v", json!("(1,2)")), ("k", json!(0))]);
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "k,v\n0,\"(1,2)\"\n");
        let mut buf = Vec::new();
        Report::new("demo")
            .param("x", "1,2")
            .write_csv(&mut buf)
            .unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "param,value\nx,\"1,2\"\n");
    }
}
