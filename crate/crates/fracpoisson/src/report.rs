//! Output plumbing: CSV trailers and pass/fail reports.
//!
//! Every CSV written by the tools ends with a `# config_hash=` line, the
//! SHA-256 of the JSON form of the run configuration, so a table can be
//! traced back to the settings that produced it.

use crate::error::Result;
use serde::Serialize;
use sha2::{Digest, Sha256};
use std::io::Write;

/// Hex SHA-256 of the JSON serialisation of `config`.
pub fn config_hash<C: Serialize>(config: &C) -> Result<String> {
    let bytes = serde_json::to_vec(config)?;
    let digest = Sha256::digest(&bytes);
    Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
}

pub fn write_config_hash<W: Write>(mut w: W, hash: &str) -> Result<()> {
    writeln!(w, "# config_hash={hash}")?;
    Ok(())
}

/// Round-trip formatting for table cells; the shortest string that parses
/// back to the same value.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{x:e}")
    }
}

/// `max` that lets a NaN through: an error that could not be measured
/// must not disappear into a maximum.
pub fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

/// One gate of a verification suite.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub measured: f64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    /// Passes when `measured <= tolerance`.
    pub fn at_most(name: impl Into<String>, measured: f64, tolerance: f64) -> Check {
        Check { name: name.into(), pass: measured <= tolerance, measured, tolerance, detail: None }
    }

    /// Passes when `measured >= tolerance`.
    pub fn at_least(name: impl Into<String>, measured: f64, tolerance: f64) -> Check {
        Check { name: name.into(), pass: measured >= tolerance, measured, tolerance, detail: None }
    }

    pub fn failed(name: impl Into<String>, tolerance: f64, why: impl Into<String>) -> Check {
        Check { name: name.into(), pass: false, measured: f64::NAN, tolerance, detail: Some(why.into()) }
    }

    /// A check computed by `f`; an error becomes a failed check.
    pub fn from_result(name: impl Into<String>, tolerance: f64, f: impl FnOnce() -> Result<Check>) -> Check {
        let name = name.into();
        match f() {
            Ok(c) => c,
            Err(e) => Check::failed(name, tolerance, e.to_string()),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Check {
        self.detail = Some(detail.into());
        self
    }

    pub fn line(&self) -> String {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        let mut s = format!("{verdict} {} measured={:e} tolerance={:e}", self.name, self.measured, self.tolerance);
        if let Some(d) = &self.detail {
            s.push_str(" (");
            s.push_str(d);
            s.push(')');
        }
        s
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Report {
        Report { suite: suite.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.checks.extend(checks);
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Cfg {
        beta: f64,
        seed: u64,
    }

    #[test]
    fn hash_is_stable_and_sensitive() {
        let a = config_hash(&Cfg { beta: 0.5, seed: 1 }).unwrap();
        assert_eq!(a, config_hash(&Cfg { beta: 0.5, seed: 1 }).unwrap());
        assert_ne!(a, config_hash(&Cfg { beta: 0.5, seed: 2 }).unwrap());
        assert_eq!(a.len(), 64);
        let mut buf = Vec::new();
        write_config_hash(&mut buf, &a).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("# config_hash={a}\n"));
    }

    #[test]
    fn formatting_round_trips() {
        for &x in &[0.1, 1.0 / 3.0, 6.02e23, -2.5e-300, 0.0] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_f64(f64::NAN), "nan");
        assert!(nan_max(1.0, f64::NAN).is_nan());
        assert!(nan_max(f64::NAN, 1.0).is_nan());
        assert_eq!(nan_max(1.0, 2.0), 2.0);
    }

    #[test]
    fn report_json_shape() {
        let mut r = Report::new("demo");
        r.push(Check::at_most("small", 1e-9, 1e-8));
        r.push(Check::from_result("broken", 1.0, || Err(crate::Error::Domain("x".into()))));
        assert!(!r.pass());
        assert_eq!(r.failures().count(), 1);
        let v: serde_json::Value = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        assert_eq!(v["suite"], "demo");
        assert_eq!(v["checks"][0]["name"], "small");
        assert_eq!(v["checks"][0]["pass"], true);
        assert_eq!(v["checks"][1]["measured"], serde_json::Value::Null);
        assert!(r.checks[1].line().starts_with("FAIL broken"));
    }
}
