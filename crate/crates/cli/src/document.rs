//! The serialized result of one command and its JSON/CSV/text renderings.

use std::collections::BTreeMap;
use std::io::{self, Write};

use serde::{Deserialize, Serialize};
use threebox::harness::fraction_annotation;
use threebox::stats::Estimate;
use threebox::{Probability, RunStatistics};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub scenario: String,
    pub parameters: BTreeMap<String, String>,
    pub exact: BTreeMap<String, ExactValue>,
    pub monte_carlo: Option<MonteCarloSection>,
}

/// `"p/q"` strings for exact rationals, plain numbers for floating values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExactValue {
    Rational(String),
    Decimal(f64),
}

impl ExactValue {
    pub fn as_f64(&self) -> Option<f64> {
        match self {
            ExactValue::Decimal(x) => Some(*x),
            ExactValue::Rational(s) => {
                let (n, d) = s.split_once('/').unwrap_or((s, "1"));
                Some(n.parse::<f64>().ok()? / d.parse::<f64>().ok()?)
            }
        }
    }

    /// Text form; decimals get a fraction annotation when one fits.
    pub fn render(&self) -> String {
        match self {
            ExactValue::Rational(s) => s.clone(),
            ExactValue::Decimal(x) => match fraction_annotation(Probability::Approx(*x)) {
                Some(f) => format!("{x:.6} (≈{f})"),
                None => format!("{x:.6}"),
            },
        }
    }
}

impl From<Probability> for ExactValue {
    fn from(p: Probability) -> Self {
        match p {
            Probability::Exact(r) => ExactValue::Rational(r.to_string()),
            Probability::Approx(x) => ExactValue::Decimal(x),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloSection {
    pub runs: u64,
    pub seed: u64,
    pub counts: BTreeMap<String, u64>,
    pub frequencies: BTreeMap<String, f64>,
    pub ci95: BTreeMap<String, [f64; 2]>,
}

impl MonteCarloSection {
    pub fn new(runs: u64, seed: u64) -> Self {
        Self {
            runs,
            seed,
            counts: BTreeMap::new(),
            frequencies: BTreeMap::new(),
            ci95: BTreeMap::new(),
        }
    }

    pub fn push_estimate(&mut self, event: &str, estimate: &Estimate) {
        self.counts.insert(event.to_owned(), estimate.successes);
        self.frequencies.insert(event.to_owned(), estimate.frequency);
        self.ci95.insert(event.to_owned(), [estimate.ci95.low, estimate.ci95.high]);
    }

    /// Outcome counts plus the `p_post` and `found_given_post` estimates.
    pub fn from_stats(stats: &RunStatistics) -> Self {
        let mut section = Self::new(stats.runs, stats.seed);
        for (record, &count) in &stats.counts {
            let name = record.event_name();
            section.counts.insert(name.to_owned(), count);
            section.frequencies.insert(name.to_owned(), stats.frequencies[record]);
            let ci = stats.ci95[record];
            section.ci95.insert(name.to_owned(), [ci.low, ci.high]);
        }
        section.push_estimate("p_post", &stats.post);
        if let Some(est) = &stats.found_given_post {
            section.push_estimate("found_given_post", est);
        }
        section
    }
}

impl OutputDocument {
    pub fn new(scenario: impl Into<String>) -> Self {
        Self {
            scenario: scenario.into(),
            parameters: BTreeMap::new(),
            exact: BTreeMap::new(),
            monte_carlo: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_owned(), value.to_string());
        self
    }

    pub fn write_json(&self, out: &mut dyn Write) -> io::Result<()> {
        serde_json::to_writer_pretty(&mut *out, self)?;
        writeln!(out)
    }

    /// One row per event: `event,exact,frequency,ci_low,ci_high`.
    pub fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(["event", "exact", "frequency", "ci_low", "ci_high"])?;
        let mc = self.monte_carlo.as_ref();
        for event in self.events() {
            let exact = match self.exact.get(&event) {
                Some(ExactValue::Rational(s)) => s.clone(),
                Some(ExactValue::Decimal(x)) => x.to_string(),
                None => String::new(),
            };
            let frequency = mc
                .and_then(|m| m.frequencies.get(&event))
                .map(f64::to_string)
                .unwrap_or_default();
            let (low, high) = mc
                .and_then(|m| m.ci95.get(&event))
                .map(|[l, h]| (l.to_string(), h.to_string()))
                .unwrap_or_default();
            writer.write_record([event, exact, frequency, low, high])?;
        }
        writer.flush()
    }

    pub fn write_text(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "scenario: {}", self.scenario)?;
        for (k, v) in &self.parameters {
            writeln!(out, "  {k} = {v}")?;
        }
        let events = self.events();
        let width = events.iter().map(String::len).max().unwrap_or(0).max(5);
        let mc = self.monte_carlo.as_ref();
        writeln!(out, "{:<width$}  {:<22}  {}", "event", "exact", if mc.is_some() { "monte carlo (95% CI)" } else { "" })?;
        for event in &events {
            let exact = self.exact.get(event).map(ExactValue::render).unwrap_or_default();
            let sampled = mc
                .and_then(|m| Some((m.frequencies.get(event)?, m.ci95.get(event)?)))
                .map(|(f, [l, h])| format!("{f:.6} [{l:.6}, {h:.6}]"))
                .unwrap_or_default();
            writeln!(out, "{event:<width$}  {exact:<22}  {sampled}")?;
        }
        if let Some(m) = mc {
            writeln!(out, "runs = {}, seed = {}", m.runs, m.seed)?;
        }
        Ok(())
    }

    /// Exact events first, then any sampled-only events, each in key order.
    fn events(&self) -> Vec<String> {
        let mut events: Vec<String> = self.exact.keys().cloned().collect();
        if let Some(m) = &self.monte_carlo {
            for k in m.frequencies.keys() {
                if !self.exact.contains_key(k) {
                    events.push(k.clone());
                }
            }
        }
        events
    }
}
