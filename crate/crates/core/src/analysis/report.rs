use serde::Serialize;
use serde_json::Value;

/// A pass/fail check against a declared threshold.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Uniform JSON envelope for every experiment.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentReport {
    pub name: String,
    pub parameters: Value,
    pub records: Vec<Value>,
    pub aggregates: Value,
    pub verdicts: Vec<Verdict>,
}

impl ExperimentReport {
    pub fn new(name: impl Into<String>, parameters: impl Serialize) -> Self {
        Self {
            name: name.into(),
            parameters: serde_json::to_value(parameters).unwrap_or(Value::Null),
            records: Vec::new(),
            aggregates: Value::Null,
            verdicts: Vec::new(),
        }
    }

    pub fn with_aggregates(mut self, aggregates: impl Serialize) -> Self {
        self.aggregates = serde_json::to_value(aggregates).unwrap_or(Value::Null);
        self
    }

    pub fn with_records<T: Serialize>(mut self, records: &[T]) -> Self {
        self.records = records
            .iter()
            .map(|r| serde_json::to_value(r).unwrap_or(Value::Null))
            .collect();
        self
    }

    pub fn with_verdicts(mut self, verdicts: Vec<Verdict>) -> Self {
        self.verdicts = verdicts;
        self
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.passed)
    }
}
