//! Exact enumeration and seeded Monte Carlo over any game.
//!
//! Every run `i` of a Monte Carlo batch draws from its own
//! [`SeededStream`] keyed by `(seed, i)`, and counts are merged by
//! addition, so serial and parallel execution produce identical statistics.

use std::collections::BTreeMap;

use num_rational::Rational64;
use rayon::prelude::*;

use crate::classical::{ClassicalGame, GameRecord, ObservedBox, Side, SimplifiedVariant, SuitSearch, UNIFORM_BOXES};
use crate::error::{Error, Result};
use crate::probability::Probability;
use crate::random::{enumerate_choices, Randomness, Sampler, SeededStream};
use crate::scenarios::{self, Scenario, ScenarioId};
use crate::stats::{wilson_interval, Estimate, Interval, Z95};
use crate::twostate;

/// A finite stochastic game that can be both enumerated and sampled.
pub trait GameModel: Sync {
    fn label(&self) -> String;

    /// Every outcome with its probability; records may repeat.
    fn enumerate(&self) -> Vec<(GameRecord, Probability)>;

    fn sample(&self, rng: &mut dyn Randomness) -> GameRecord;
}

impl GameModel for ClassicalGame {
    fn label(&self) -> String {
        self.name().to_owned()
    }

    fn enumerate(&self) -> Vec<(GameRecord, Probability)> {
        enumerate_choices(|c| self.play(c))
            .into_iter()
            .map(|p| (p.outcome, Probability::Exact(p.probability)))
            .collect()
    }

    fn sample(&self, rng: &mut dyn Randomness) -> GameRecord {
        self.play(&mut Sampler(rng))
    }
}

/// A pre- and post-selected scenario with at most one intermediate
/// observation.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumGame {
    scenario: Scenario,
    observe: Option<String>,
}

impl QuantumGame {
    pub fn new(id: ScenarioId, observe: Option<&str>) -> Result<Self> {
        let scenario = scenarios::build(id);
        if let Some(name) = observe {
            if scenario.projector(name).is_none() {
                return Err(Error::UnknownLabel(name.to_owned()));
            }
        }
        Ok(Self {
            scenario,
            observe: observe.map(str::to_owned),
        })
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }
}

impl GameModel for QuantumGame {
    fn label(&self) -> String {
        self.scenario.id.name().to_owned()
    }

    fn enumerate(&self) -> Vec<(GameRecord, Probability)> {
        let measurements: Vec<_> = self
            .observe
            .iter()
            .map(|name| self.scenario.projectors[name].clone())
            .collect();
        let dist = twostate::enumerate_sequence(&self.scenario.tsv, &measurements).expect("scenario projectors share its basis");
        dist.entries
            .iter()
            .flat_map(|b| {
                let intermediate = b.outcomes.first().copied();
                [
                    (GameRecord { intermediate, post_success: true }, Probability::Approx(b.joint * b.post)),
                    (
                        GameRecord { intermediate, post_success: false },
                        Probability::Approx(b.joint * (1.0 - b.post)),
                    ),
                ]
            })
            .collect()
    }

    fn sample(&self, rng: &mut dyn Randomness) -> GameRecord {
        let round = scenarios::play_round(&self.scenario, self.observe.as_deref(), rng);
        GameRecord {
            intermediate: round.bob_found,
            post_success: round.post_selected,
        }
    }
}

/// Outcome probabilities of a game plus the derived post-selection figures.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactDistribution {
    pub outcomes: BTreeMap<GameRecord, Probability>,
}

impl ExactDistribution {
    pub fn probability(&self, record: &GameRecord) -> Probability {
        self.outcomes.get(record).copied().unwrap_or(Probability::ZERO)
    }

    pub fn total(&self) -> Probability {
        self.outcomes.values().copied().sum()
    }

    pub fn p_post(&self) -> Probability {
        self.sum_where(|r| r.post_success)
    }

    pub fn p_found(&self) -> Option<Probability> {
        self.observed().then(|| self.sum_where(|r| r.intermediate == Some(true)))
    }

    /// `P(found | post)`; `None` without an observation or when
    /// post-selection never succeeds.
    pub fn p_found_given_post(&self) -> Option<Probability> {
        if !self.observed() {
            return None;
        }
        let hit = self.sum_where(|r| r.post_success && r.intermediate == Some(true));
        hit.checked_div(self.p_post())
    }

    fn observed(&self) -> bool {
        self.outcomes.keys().any(|r| r.intermediate.is_some())
    }

    fn sum_where(&self, keep: impl Fn(&GameRecord) -> bool) -> Probability {
        self.outcomes
            .iter()
            .filter(|(r, _)| keep(r))
            .map(|(_, p)| *p)
            .sum()
    }
}

pub fn enumerate_exact(game: &dyn GameModel) -> ExactDistribution {
    let mut outcomes = BTreeMap::new();
    for (record, p) in game.enumerate() {
        let slot = outcomes.entry(record).or_insert(Probability::ZERO);
        *slot = *slot + p;
    }
    ExactDistribution { outcomes }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Serial,
    Parallel,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunStatistics {
    pub runs: u64,
    pub seed: u64,
    pub counts: BTreeMap<GameRecord, u64>,
    pub frequencies: BTreeMap<GameRecord, f64>,
    pub ci95: BTreeMap<GameRecord, Interval>,
    /// Post-selection rate over all runs.
    pub post: Estimate,
    /// Found rate over the post-selected runs only.
    pub found_given_post: Option<Estimate>,
    pub exact: Option<ExactDistribution>,
}

impl RunStatistics {
    fn from_counts(runs: u64, seed: u64, counts: BTreeMap<GameRecord, u64>, exact: Option<ExactDistribution>) -> Self {
        let frequencies = counts.iter().map(|(r, &c)| (*r, c as f64 / runs as f64)).collect();
        let ci95 = counts
            .iter()
            .map(|(r, &c)| (*r, wilson_interval(c, runs, Z95)))
            .collect();
        let count_where = |keep: &dyn Fn(&GameRecord) -> bool| -> u64 {
            counts.iter().filter(|(r, _)| keep(r)).map(|(_, &c)| c).sum()
        };
        let kept = count_where(&|r| r.post_success);
        let kept_found = count_where(&|r| r.post_success && r.intermediate == Some(true));
        let observed = counts.keys().any(|r| r.intermediate.is_some());
        Self {
            runs,
            seed,
            post: Estimate::new(kept, runs).expect("runs >= 1"),
            found_given_post: if observed { Estimate::new(kept_found, kept) } else { None },
            counts,
            frequencies,
            ci95,
            exact,
        }
    }

    pub fn count(&self, record: &GameRecord) -> u64 {
        self.counts.get(record).copied().unwrap_or(0)
    }
}

pub fn monte_carlo(game: &dyn GameModel, runs: u64, seed: u64) -> Result<RunStatistics> {
    monte_carlo_with(game, runs, seed, Execution::Parallel)
}

pub fn monte_carlo_with(game: &dyn GameModel, runs: u64, seed: u64, execution: Execution) -> Result<RunStatistics> {
    if runs == 0 {
        return Err(Error::NoRuns);
    }
    let run_one = |index: u64| game.sample(&mut SeededStream::new(seed, index));
    let counts = match execution {
        Execution::Serial => {
            let mut counts = BTreeMap::new();
            for i in 0..runs {
                *counts.entry(run_one(i)).or_insert(0) += 1;
            }
            counts
        }
        Execution::Parallel => (0..runs)
            .into_par_iter()
            .fold(BTreeMap::new, |mut counts, i| {
                *counts.entry(run_one(i)).or_insert(0u64) += 1;
                counts
            })
            .reduce(BTreeMap::new, |mut a, b| {
                for (r, c) in b {
                    *a.entry(r).or_insert(0) += c;
                }
                a
            }),
    };
    Ok(RunStatistics::from_counts(runs, seed, counts, Some(enumerate_exact(game))))
}

/// The five systems compared by the discriminator table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum System {
    QuantumThreeBox,
    Kirkpatrick,
    Simplified,
    LeiferSpekkens,
    MoveGame,
}

impl System {
    pub const ALL: [System; 5] = [
        System::QuantumThreeBox,
        System::Kirkpatrick,
        System::Simplified,
        System::LeiferSpekkens,
        System::MoveGame,
    ];

    pub fn name(self) -> &'static str {
        match self {
            System::QuantumThreeBox => "three-box",
            System::Kirkpatrick => "kirkpatrick",
            System::Simplified => "simplified",
            System::LeiferSpekkens => "leifer-spekkens",
            System::MoveGame => "move-game",
        }
    }

    /// The game with its default intermediate observation (box A, spades,
    /// left, box 1) or, with `observed = false`, with none.
    pub fn model(self, observed: bool) -> Box<dyn GameModel> {
        match self {
            System::QuantumThreeBox => Box::new(
                QuantumGame::new(ScenarioId::ThreeBox, observed.then_some("A")).expect("box A exists"),
            ),
            System::Kirkpatrick => Box::new(ClassicalGame::Kirkpatrick {
                search: observed.then_some(SuitSearch::Spades),
            }),
            System::Simplified => Box::new(ClassicalGame::Simplified {
                search: observed.then_some(SuitSearch::Spades),
                variant: SimplifiedVariant::Faithful,
            }),
            System::LeiferSpekkens => Box::new(ClassicalGame::LeiferSpekkens {
                search: observed.then_some(Side::Left),
            }),
            System::MoveGame => Box::new(ClassicalGame::MoveGame {
                observe: observed.then_some(ObservedBox::Box1),
                initial: UNIFORM_BOXES,
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscriminatorRow {
    pub system: System,
    pub post_without_observation: Probability,
    pub post_with_observation: Probability,
    pub found_given_post: Option<Probability>,
}

pub fn discriminator_table() -> Vec<DiscriminatorRow> {
    System::ALL
        .into_iter()
        .map(|system| {
            let without = enumerate_exact(system.model(false).as_ref());
            let with = enumerate_exact(system.model(true).as_ref());
            DiscriminatorRow {
                system,
                post_without_observation: without.p_post(),
                post_with_observation: with.p_post(),
                found_given_post: with.p_found_given_post(),
            }
        })
        .collect()
}

/// Exact value as a fraction when it is one, else its nearest small fraction.
pub fn fraction_annotation(p: Probability) -> Option<Rational64> {
    p.fraction(1000, 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Probability {
        Probability::Exact(Rational64::new(n, d))
    }

    struct Certain;

    impl GameModel for Certain {
        fn label(&self) -> String {
            "certain".into()
        }

        fn enumerate(&self) -> Vec<(GameRecord, Probability)> {
            vec![(GameRecord { intermediate: None, post_success: true }, Probability::ONE)]
        }

        fn sample(&self, _: &mut dyn Randomness) -> GameRecord {
            GameRecord { intermediate: None, post_success: true }
        }
    }

    #[test]
    fn degenerate_tree() {
        let d = enumerate_exact(&Certain);
        assert_eq!(d.outcomes.len(), 1);
        assert_eq!(d.p_post(), Probability::ONE);
        assert_eq!(d.p_found_given_post(), None);
    }

    #[test]
    fn kirkpatrick_exact() {
        let d = enumerate_exact(&ClassicalGame::Kirkpatrick { search: Some(SuitSearch::Spades) });
        assert_eq!(d.total(), Probability::ONE);
        assert_eq!(d.p_post(), r(1, 8));
        assert_eq!(d.p_found_given_post(), Some(Probability::ONE));
        assert_eq!(d.p_found(), Some(r(1, 4)));
    }

    #[test]
    fn quantum_exact() {
        let d = enumerate_exact(&QuantumGame::new(ScenarioId::ThreeBox, Some("A")).unwrap());
        assert!((d.total().to_f64() - 1.0).abs() < 1e-12);
        assert!((d.p_post().to_f64() - 1.0 / 9.0).abs() < 1e-12);
        assert!((d.p_found_given_post().unwrap().to_f64() - 1.0).abs() < 1e-12);
        assert_eq!(fraction_annotation(d.p_post()), Some(Rational64::new(1, 9)));
        assert!(QuantumGame::new(ScenarioId::ThreeBox, Some("D")).is_err());
        assert!(QuantumGame::new(ScenarioId::SpinBox, Some("C")).is_err());
    }

    #[test]
    fn single_run() {
        let stats = monte_carlo(&ClassicalGame::MoveGame { observe: None, initial: UNIFORM_BOXES }, 1, 5).unwrap();
        assert_eq!(stats.counts.values().sum::<u64>(), 1);
        assert_eq!(stats.found_given_post, None);
        assert_eq!(monte_carlo(&Certain, 0, 5), Err(Error::NoRuns));
    }

    #[test]
    fn serial_and_parallel_agree() {
        let game = ClassicalGame::LeiferSpekkens { search: Some(Side::Right) };
        let a = monte_carlo_with(&game, 5_000, 99, Execution::Serial).unwrap();
        let b = monte_carlo_with(&game, 5_000, 99, Execution::Parallel).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.counts, monte_carlo_with(&game, 5_000, 100, Execution::Serial).unwrap().counts);
    }

    #[test]
    fn discriminator_rows() {
        let table = discriminator_table();
        let row = |s: System| table.iter().find(|r| r.system == s).unwrap();

        let q = row(System::QuantumThreeBox);
        assert!((q.post_without_observation.to_f64() - 1.0 / 9.0).abs() < 1e-12);
        assert!((q.post_with_observation.to_f64() - 1.0 / 9.0).abs() < 1e-12);
        assert!((q.found_given_post.unwrap().to_f64() - 1.0).abs() < 1e-12);

        let expect = [
            (System::Kirkpatrick, r(0, 1), r(1, 8)),
            (System::Simplified, r(1, 3), r(1, 6)),
            (System::LeiferSpekkens, r(0, 1), r(1, 4)),
            (System::MoveGame, r(2, 3), r(1, 3)),
        ];
        for (system, without, with) in expect {
            let got = row(system);
            assert_eq!(got.post_without_observation, without, "{system:?}");
            assert_eq!(got.post_with_observation, with, "{system:?}");
            assert_eq!(got.found_given_post, Some(Probability::ONE), "{system:?}");
        }
    }
}
