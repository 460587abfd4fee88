use std::time::Duration;

use noether_core::check::CheckOutcome;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::CampaignConfig;

pub const SCHEMA: u32 = 1;

/// What a suite hands back before timing and config echo are attached.
#[derive(Clone, Debug, Default)]
pub struct SuiteOutput {
    pub checks: Vec<CheckOutcome>,
    pub notes: Vec<String>,
    pub details: Value,
}

impl SuiteOutput {
    pub fn push(&mut self, check: CheckOutcome) {
        self.checks.push(check);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn detail(&mut self, key: &str, value: impl Serialize) {
        if !self.details.is_object() {
            self.details = Value::Object(Default::default());
        }
        self.details[key] = serde_json::to_value(value).expect("serializable detail");
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub schema: u32,
    pub version: String,
    pub command: String,
    pub config: CampaignConfig,
    pub checks: Vec<CheckOutcome>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Value::is_null", default)]
    pub details: Value,
    pub passed: bool,
    /// Wall-clock time; the only field that varies between identical runs.
    pub duration_ms: u64,
}

impl CampaignReport {
    pub fn new(config: &CampaignConfig, out: SuiteOutput, elapsed: Duration) -> Self {
        let command = serde_json::to_value(config.command)
            .expect("command")
            .as_str()
            .unwrap_or_default()
            .to_string();
        CampaignReport {
            schema: SCHEMA,
            version: env!("CARGO_PKG_VERSION").to_string(),
            command,
            config: config.clone(),
            passed: out.checks.iter().all(|c| c.passed),
            checks: out.checks,
            notes: out.notes,
            details: out.details,
            duration_ms: elapsed.as_millis() as u64,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report with its timing field cleared, for run-to-run comparison.
    pub fn without_timing(&self) -> Self {
        CampaignReport {
            duration_ms: 0,
            ..self.clone()
        }
    }
}
