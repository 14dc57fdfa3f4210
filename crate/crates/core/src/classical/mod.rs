//! Classical games that mimic the three-box certainty by disturbing the
//! system when it is observed.

pub mod deck;
pub mod games;

use std::fmt;

pub use deck::{k_observe, k_partial_observe, k_prepare, k_prepare_not, Card, DeckState, Face, Suit, Value, Variable, DECK};
pub use games::{
    kirkpatrick_trajectory, run_kirkpatrick, run_leifer_spekkens, run_move_game, run_simplified, BallBoxState,
    BoxId, Depth, ObservedBox, Side, SimplifiedVariant, SuitSearch, UNIFORM_BOXES,
};

use crate::random::Chooser;

/// Outcome of one run of any game, quantum or classical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GameRecord {
    /// Found / not found, or `None` if nothing was observed.
    pub intermediate: Option<bool>,
    pub post_success: bool,
}

impl GameRecord {
    /// Stable event key, e.g. `found_post` or `none_rejected`.
    pub fn event_name(&self) -> &'static str {
        match (self.intermediate, self.post_success) {
            (Some(true), true) => "found_post",
            (Some(true), false) => "found_rejected",
            (Some(false), true) => "missed_post",
            (Some(false), false) => "missed_rejected",
            (None, true) => "none_post",
            (None, false) => "none_rejected",
        }
    }
}

impl fmt::Display for GameRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.event_name())
    }
}

/// A configured classical game.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassicalGame {
    Kirkpatrick {
        search: Option<SuitSearch>,
    },
    Simplified {
        search: Option<SuitSearch>,
        variant: SimplifiedVariant,
    },
    LeiferSpekkens {
        search: Option<Side>,
    },
    MoveGame {
        observe: Option<ObservedBox>,
        initial: [u64; 3],
    },
}

impl ClassicalGame {
    pub fn play(&self, chooser: &mut dyn Chooser) -> GameRecord {
        match *self {
            ClassicalGame::Kirkpatrick { search } => run_kirkpatrick(search, chooser),
            ClassicalGame::Simplified { search, variant } => run_simplified(search, variant, chooser),
            ClassicalGame::LeiferSpekkens { search } => run_leifer_spekkens(search, chooser),
            ClassicalGame::MoveGame { observe, initial } => run_move_game(observe, initial, chooser),
        }
    }

    /// The same game with the intermediate observation skipped.
    pub fn without_observation(&self) -> Self {
        match *self {
            ClassicalGame::Kirkpatrick { .. } => ClassicalGame::Kirkpatrick { search: None },
            ClassicalGame::Simplified { variant, .. } => ClassicalGame::Simplified { search: None, variant },
            ClassicalGame::LeiferSpekkens { .. } => ClassicalGame::LeiferSpekkens { search: None },
            ClassicalGame::MoveGame { initial, .. } => ClassicalGame::MoveGame { observe: None, initial },
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ClassicalGame::Kirkpatrick { .. } => "kirkpatrick",
            ClassicalGame::Simplified { .. } => "simplified",
            ClassicalGame::LeiferSpekkens { .. } => "leifer-spekkens",
            ClassicalGame::MoveGame { .. } => "move-game",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{enumerate_choices, replay_variates, Sampler, ScriptedVariates};
    use num_rational::Rational64;
    use std::collections::BTreeMap;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    fn exact(game: ClassicalGame) -> BTreeMap<GameRecord, Rational64> {
        let mut out = BTreeMap::new();
        for path in enumerate_choices(|c| game.play(c)) {
            *out.entry(path.outcome).or_insert(r(0, 1)) += path.probability;
        }
        out
    }

    fn p_post(d: &BTreeMap<GameRecord, Rational64>) -> Rational64 {
        d.iter().filter(|(g, _)| g.post_success).map(|(_, p)| *p).sum()
    }

    fn found_given_post(d: &BTreeMap<GameRecord, Rational64>) -> Rational64 {
        let hit: Rational64 = d
            .iter()
            .filter(|(g, _)| g.post_success && g.intermediate == Some(true))
            .map(|(_, p)| *p)
            .sum();
        hit / p_post(d)
    }

    const FOUND_POST: GameRecord = GameRecord { intermediate: Some(true), post_success: true };
    const MISSED_POST: GameRecord = GameRecord { intermediate: Some(false), post_success: true };

    #[test]
    fn kirkpatrick_both_searches() {
        for search in [SuitSearch::Spades, SuitSearch::Diamonds] {
            let d = exact(ClassicalGame::Kirkpatrick { search: Some(search) });
            assert_eq!(d[&FOUND_POST], r(1, 8));
            assert!(!d.contains_key(&MISSED_POST));
            assert_eq!(p_post(&d), r(1, 8));
            assert_eq!(found_given_post(&d), r(1, 1));
        }
        assert_eq!(p_post(&exact(ClassicalGame::Kirkpatrick { search: None })), r(0, 1));
    }

    /// Re-observing a state the way it was prepared gives the same report and
    /// leaves it alone. A `P = p` state is stable under observing `P`; a
    /// `P ≠ p` state only under the partial observation of `p`, since its
    /// `These` pile mixes the remaining values.
    fn assert_repeat_stable(state: &DeckState) {
        let memory = state.memory();
        let values: Vec<Value> = state.these().iter().map(|c| c.value(memory)).collect();
        if values.iter().all(|&v| v == values[0]) {
            for first in enumerate_choices(|c| k_observe(state, memory, c).unwrap()) {
                assert_eq!(first.outcome, (values[0], state.clone()));
                let again = enumerate_choices(|c| k_observe(&first.outcome.1, memory, c).unwrap());
                assert!(again.iter().all(|p| p.outcome == first.outcome));
            }
        } else {
            let absent = DECK
                .iter()
                .map(|c| c.value(memory))
                .find(|v| !values.contains(v))
                .expect("a P != p state lacks p in These");
            for first in enumerate_choices(|c| k_partial_observe(state, absent, c).unwrap()) {
                assert_eq!(first.outcome, (false, state.clone()));
                let again = enumerate_choices(|c| k_partial_observe(&first.outcome.1, absent, c).unwrap());
                assert!(again.iter().all(|p| p.outcome == first.outcome));
            }
        }
    }

    #[test]
    fn kirkpatrick_conserves_the_deck_and_repeats_observations() {
        let mut visited = 0;
        for search in [None, Some(SuitSearch::Spades), Some(SuitSearch::Diamonds)] {
            for path in enumerate_choices(|c| kirkpatrick_trajectory(search, c).1) {
                for state in &path.outcome {
                    assert!(state.is_conserved());
                    assert_repeat_stable(state);
                    visited += 1;
                }
            }
        }
        assert!(visited > 0);
    }

    #[test]
    fn simplified_variants() {
        for search in [SuitSearch::Spades, SuitSearch::Diamonds] {
            let faithful = exact(ClassicalGame::Simplified { search: Some(search), variant: SimplifiedVariant::Faithful });
            assert_eq!(p_post(&faithful), r(1, 6));
            assert_eq!(found_given_post(&faithful), r(1, 1));

            let literal = exact(ClassicalGame::Simplified { search: Some(search), variant: SimplifiedVariant::LiteralText });
            assert_eq!(p_post(&literal), r(1, 2));
            assert_eq!(found_given_post(&literal), r(1, 3));
        }
        let skipped = exact(ClassicalGame::Simplified { search: None, variant: SimplifiedVariant::Faithful });
        assert_eq!(p_post(&skipped), r(1, 3));
    }

    #[test]
    fn leifer_spekkens() {
        let left = exact(ClassicalGame::LeiferSpekkens { search: Some(Side::Left) });
        let right = exact(ClassicalGame::LeiferSpekkens { search: Some(Side::Right) });
        assert_eq!(left, right);
        assert_eq!(p_post(&left), r(1, 4));
        assert_eq!(found_given_post(&left), r(1, 1));
        assert_eq!(p_post(&exact(ClassicalGame::LeiferSpekkens { search: None })), r(0, 1));
    }

    #[test]
    fn move_game() {
        for observe in [ObservedBox::Box1, ObservedBox::Box2] {
            let d = exact(ClassicalGame::MoveGame { observe: Some(observe), initial: UNIFORM_BOXES });
            assert_eq!(d[&FOUND_POST], r(1, 3));
            assert_eq!(p_post(&d), r(1, 3));
            assert_eq!(found_given_post(&d), r(1, 1));
        }
        assert_eq!(p_post(&exact(ClassicalGame::MoveGame { observe: None, initial: UNIFORM_BOXES })), r(2, 3));
        let skewed = exact(ClassicalGame::MoveGame { observe: Some(ObservedBox::Box1), initial: [3, 1, 0] });
        assert_eq!(p_post(&skewed), r(3, 4));
        assert_eq!(found_given_post(&skewed), r(1, 1));
    }

    #[test]
    fn replaying_enumerated_variates_retraces_each_branch() {
        let games = [
            ClassicalGame::Kirkpatrick { search: Some(SuitSearch::Diamonds) },
            ClassicalGame::Simplified { search: Some(SuitSearch::Spades), variant: SimplifiedVariant::LiteralText },
            ClassicalGame::LeiferSpekkens { search: Some(Side::Right) },
            ClassicalGame::MoveGame { observe: Some(ObservedBox::Box2), initial: [2, 1, 1] },
        ];
        for game in games {
            for path in enumerate_choices(|c| game.play(c)) {
                let mut script = ScriptedVariates::new(replay_variates(&path.choices));
                assert_eq!(game.play(&mut Sampler(&mut script)), path.outcome, "{game:?}");
                assert_eq!(script.consumed(), path.choices.len());
            }
        }
    }

    #[test]
    fn event_names_are_distinct() {
        let mut names: Vec<&str> = [None, Some(true), Some(false)]
            .into_iter()
            .flat_map(|i| [true, false].map(|p| GameRecord { intermediate: i, post_success: p }.event_name()))
            .collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 6);
    }
}
