//! The two pre- and post-selected systems and Alice's post-selection game.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::hilbert::{self, Basis, CoStateVector, Projector, StateVector};
use crate::random::Randomness;
use crate::twostate::TwoStateVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ScenarioId {
    /// Particle in three boxes, `(|A⟩+|B⟩+|C⟩)/√3` to `(⟨A|+⟨B|−⟨C|)/√3`.
    ThreeBox,
    /// Spin-½ particle in two boxes; basis `A↑, A↓, B↑, B↓`.
    SpinBox,
}

impl ScenarioId {
    pub fn name(self) -> &'static str {
        match self {
            ScenarioId::ThreeBox => "three-box",
            ScenarioId::SpinBox => "spin-box",
        }
    }
}

impl fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "three-box" => Ok(ScenarioId::ThreeBox),
            "spin-box" => Ok(ScenarioId::SpinBox),
            other => Err(format!("unknown scenario {other:?}")),
        }
    }
}

pub const SPIN_UP_IN_A: &str = "A↑";
pub const SPIN_DOWN_IN_A: &str = "A↓";

/// A two-state vector together with the observations that make sense for it.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub id: ScenarioId,
    pub tsv: TwoStateVector,
    pub projectors: BTreeMap<String, Projector>,
}

impl Scenario {
    pub fn projector(&self, name: &str) -> Option<&Projector> {
        self.projectors.get(name)
    }
}

pub fn build(id: ScenarioId) -> Scenario {
    let (labels, pre, post, observed): (&[&str], [f64; 4], [f64; 4], &[&str]) = match id {
        ScenarioId::ThreeBox => (
            &["A", "B", "C"],
            [1.0, 1.0, 1.0, 0.0],
            [1.0, 1.0, -1.0, 0.0],
            &["A", "B", "C"],
        ),
        ScenarioId::SpinBox => (
            &[SPIN_UP_IN_A, SPIN_DOWN_IN_A, "B↑", "B↓"],
            [1.0, 1.0, 1.0, 0.0],
            [1.0, 1.0, -1.0, 0.0],
            &[SPIN_UP_IN_A, SPIN_DOWN_IN_A],
        ),
    };
    let basis = Basis::new(labels.iter().copied()).expect("fixed labels are unique");
    let dim = basis.len();
    let pre = StateVector::from_real(basis.clone(), &pre[..dim]).expect("fixed state is normalizable");
    let post = CoStateVector::from_real(basis.clone(), &post[..dim]).expect("fixed state is normalizable");
    let tsv = TwoStateVector::new(pre, post).expect("shared basis");
    let projectors = observed
        .iter()
        .map(|&l| {
            let p = Projector::new(basis.clone(), [l]).expect("label in basis");
            (l.to_owned(), p)
        })
        .collect();
    Scenario { id, tsv, projectors }
}

/// Which box Bob opens, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BobStrategy {
    OpenA,
    OpenB,
    Skip,
}

impl BobStrategy {
    pub fn box_label(self) -> Option<&'static str> {
        match self {
            BobStrategy::OpenA => Some("A"),
            BobStrategy::OpenB => Some("B"),
            BobStrategy::Skip => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RoundOutcome {
    /// `None` when Bob did not look.
    pub bob_found: Option<bool>,
    /// Whether Alice's final measurement accepted the round.
    pub post_selected: bool,
}

/// Runs one three-box round against a given scenario and observation.
///
/// The only trace Bob's look leaves is the collapsed state; Alice accepts
/// with probability `|⟨φ|state⟩|²`.
pub fn play_round(scenario: &Scenario, observe: Option<&str>, rng: &mut dyn Randomness) -> RoundOutcome {
    let mut state = scenario.tsv.pre().clone();
    let mut bob_found = None;
    if let Some(name) = observe {
        let p = scenario
            .projector(name)
            .unwrap_or_else(|| panic!("{} has no observation {name:?}", scenario.id));
        let m = hilbert::measure(&state, p, rng.uniform()).expect("projector shares the scenario basis");
        bob_found = Some(m.found);
        state = m.collapsed;
    }
    let accept = hilbert::inner(scenario.tsv.post(), &state)
        .expect("shared basis")
        .norm_sqr();
    RoundOutcome {
        bob_found,
        post_selected: rng.uniform() < accept,
    }
}

pub fn alice_bob_round(strategy: BobStrategy, rng: &mut dyn Randomness) -> RoundOutcome {
    play_round(&build(ScenarioId::ThreeBox), strategy.box_label(), rng)
}
