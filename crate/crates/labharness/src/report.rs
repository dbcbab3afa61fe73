//! pass/fail records for invariant checks

use serde::{Deserialize, Serialize};

/// one invariant: the measured quantity, the limit it is held to and the margin left
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub module: String,
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub threshold: f64,
    /// distance to the threshold, negative on failure
    pub slack: f64,
    pub instances: usize,
    pub detail: String,
}

impl Check {
    /// passes when measured <= limit
    pub fn at_most(module: &str, name: &str, measured: f64, limit: f64) -> Self {
        let slack = limit - measured;
        Check::raw(module, name, measured <= limit, measured, limit, slack)
    }

    /// passes when measured >= floor
    pub fn at_least(module: &str, name: &str, measured: f64, floor: f64) -> Self {
        let slack = measured - floor;
        Check::raw(module, name, measured >= floor, measured, floor, slack)
    }

    /// passes when |measured - target| <= tol; measured holds the deviation
    pub fn close(module: &str, name: &str, value: f64, target: f64, tol: f64) -> Self {
        let dev = (value - target).abs();
        Check::at_most(module, name, dev, tol).detail(format!("value {value:.12e}, target {target:.12e}"))
    }

    pub fn flag(module: &str, name: &str, ok: bool, detail: impl Into<String>) -> Self {
        Check::raw(module, name, ok, f64::from(u8::from(ok)), 1.0, if ok { 0.0 } else { -1.0 }).detail(detail)
    }

    fn raw(module: &str, name: &str, passed: bool, measured: f64, threshold: f64, slack: f64) -> Self {
        Check {
            module: module.into(),
            name: name.into(),
            passed: passed && measured.is_finite(),
            measured,
            threshold,
            slack,
            instances: 1,
            detail: String::new(),
        }
    }

    pub fn with_instances(mut self, n: usize) -> Self {
        self.instances = n;
        self
    }

    /// replace the recorded measurement, used by flags that carry a number
    pub fn with_measured(mut self, v: f64) -> Self {
        self.measured = v;
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = d.into();
        self
    }

    pub fn line(&self) -> String {
        format!(
            "[{}] {}::{} measured={:.3e} threshold={:.3e} slack={:.3e} n={}{}",
            if self.passed { "PASS" } else { "FAIL" },
            self.module,
            self.name,
            self.measured,
            self.threshold,
            self.slack,
            self.instances,
            if self.detail.is_empty() { String::new() } else { format!(" ({})", self.detail) }
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn new(suite: &str, checks: Vec<Check>) -> Self {
        VerifyReport { suite: suite.into(), passed: checks.iter().all(|c| c.passed), checks }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors() {
        assert!(Check::at_most("m", "a", 1e-10, 1e-9).passed);
        assert!(!Check::at_least("m", "b", 0.05, 0.1).passed);
        assert!(!Check::at_most("m", "nan", f64::NAN, 1.0).passed);
        let c = Check::close("m", "c", 0.30000000001, 0.3, 1e-9);
        assert!(c.passed && c.slack > 0.0);
        let r = VerifyReport::new("x", vec![c, Check::flag("m", "d", false, "no")]);
        assert!(!r.passed);
        assert_eq!(r.failures().count(), 1);
        assert!(r.find("d").unwrap().line().starts_with("[FAIL]"));
    }
}
