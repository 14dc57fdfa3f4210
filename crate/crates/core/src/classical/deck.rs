//! Six-card deck with a `These`/`Others` split and a memory register.
//!
//! Preparing `P = p` puts every card with that value in `These` and records
//! `P` in memory. Observing the remembered variable draws from `These` and
//! leaves the state alone; observing the other variable draws from `Others`
//! and re-prepares on the reported value.

use std::fmt;

use crate::error::{Error, Result};
use crate::random::Chooser;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Face {
    J,
    Q,
    K,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suit {
    S,
    D,
    H,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variable {
    Face,
    Suit,
}

/// A value of one of the two card variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Value {
    Face(Face),
    Suit(Suit),
}

impl Value {
    pub fn variable(self) -> Variable {
        match self {
            Value::Face(_) => Variable::Face,
            Value::Suit(_) => Variable::Suit,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Card {
    /// Distinguishes the two Kings of Hearts.
    pub id: u8,
    pub face: Face,
    pub suit: Suit,
}

impl Card {
    pub const fn new(id: u8, face: Face, suit: Suit) -> Self {
        Self { id, face, suit }
    }

    pub fn value(&self, variable: Variable) -> Value {
        match variable {
            Variable::Face => Value::Face(self.face),
            Variable::Suit => Value::Suit(self.suit),
        }
    }
}

impl fmt::Display for Card {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{:?}", self.face, self.suit)
    }
}

/// JS, JD, QS, QD and two KH; every face and every suit appears twice.
pub const DECK: [Card; 6] = [
    Card::new(0, Face::J, Suit::S),
    Card::new(1, Face::J, Suit::D),
    Card::new(2, Face::Q, Suit::S),
    Card::new(3, Face::Q, Suit::D),
    Card::new(4, Face::K, Suit::H),
    Card::new(5, Face::K, Suit::H),
];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DeckState {
    these: Vec<Card>,
    others: Vec<Card>,
    memory: Variable,
}

impl DeckState {
    /// Builds a state from explicit piles, checking they partition [`DECK`].
    pub fn from_piles(mut these: Vec<Card>, mut others: Vec<Card>, memory: Variable) -> Result<Self> {
        these.sort();
        others.sort();
        let mut all: Vec<Card> = these.iter().chain(&others).copied().collect();
        all.sort();
        if all != DECK {
            return Err(Error::Protocol("piles do not partition the six-card deck".into()));
        }
        Ok(Self { these, others, memory })
    }

    fn split(memory: Variable, in_these: impl Fn(&Card) -> bool) -> Self {
        let (these, others) = DECK.iter().partition(|c| in_these(c));
        Self { these, others, memory }
    }

    pub fn these(&self) -> &[Card] {
        &self.these
    }

    pub fn others(&self) -> &[Card] {
        &self.others
    }

    pub fn memory(&self) -> Variable {
        self.memory
    }

    /// Both piles together are exactly the six-card deck.
    pub fn is_conserved(&self) -> bool {
        let mut all: Vec<Card> = self.these.iter().chain(&self.others).copied().collect();
        all.sort();
        all == DECK
    }

    fn pool_for(&self, variable: Variable) -> Result<&[Card]> {
        let pool = if self.memory == variable {
            &self.these
        } else {
            &self.others
        };
        if pool.is_empty() {
            return Err(Error::Protocol(format!(
                "cannot draw: the {} pile is empty",
                if self.memory == variable { "These" } else { "Others" }
            )));
        }
        Ok(pool)
    }
}

/// Prepares `P = p`: cards with that value to `These`, the rest to `Others`.
pub fn k_prepare(value: Value) -> DeckState {
    let variable = value.variable();
    DeckState::split(variable, |c| c.value(variable) == value)
}

/// Prepares `P ≠ p`: cards without that value to `These`.
pub fn k_prepare_not(value: Value) -> DeckState {
    let variable = value.variable();
    DeckState::split(variable, |c| c.value(variable) != value)
}

/// Complete observation of `variable`.
pub fn k_observe(state: &DeckState, variable: Variable, chooser: &mut dyn Chooser) -> Result<(Value, DeckState)> {
    let pool = state.pool_for(variable)?;
    let card = pool[chooser.pick(pool.len())];
    let reported = card.value(variable);
    let next = if state.memory == variable {
        state.clone()
    } else {
        k_prepare(reported)
    };
    Ok((reported, next))
}

/// Observes only whether `P = p`.
pub fn k_partial_observe(state: &DeckState, value: Value, chooser: &mut dyn Chooser) -> Result<(bool, DeckState)> {
    let variable = value.variable();
    let pool = state.pool_for(variable)?;
    let card = pool[chooser.pick(pool.len())];
    let found = card.value(variable) == value;
    let next = if state.memory == variable {
        state.clone()
    } else if found {
        k_prepare(value)
    } else {
        k_prepare_not(value)
    };
    Ok((found, next))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{enumerate_choices, ScriptedVariates, Sampler};
    use num_rational::Rational64;
    use std::collections::HashMap;

    fn cards(names: &[&str]) -> Vec<Card> {
        let mut kings = DECK.iter().filter(|c| c.face == Face::K);
        let mut out: Vec<Card> = names
            .iter()
            .map(|&n| match n {
                "KH" => *kings.next().unwrap(),
                _ => *DECK.iter().find(|c| c.to_string() == n).unwrap(),
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn prepare_queens() {
        let s = k_prepare(Value::Face(Face::Q));
        assert_eq!(s.these(), cards(&["QS", "QD"]));
        assert_eq!(s.others(), cards(&["JS", "JD", "KH", "KH"]));
        assert_eq!(s.memory(), Variable::Face);
        assert_eq!(s, k_prepare(Value::Face(Face::Q)));
    }

    #[test]
    fn prepare_hearts() {
        let s = k_prepare(Value::Suit(Suit::H));
        assert_eq!(s.these(), cards(&["KH", "KH"]));
        assert_eq!(s.others(), cards(&["JS", "JD", "QS", "QD"]));
        assert_eq!(s.memory(), Variable::Suit);
    }

    fn distribution<T: Eq + std::hash::Hash>(
        program: impl FnMut(&mut dyn Chooser) -> T,
    ) -> HashMap<T, Rational64> {
        let mut out = HashMap::new();
        for path in enumerate_choices(program) {
            *out.entry(path.outcome).or_insert(Rational64::from_integer(0)) += path.probability;
        }
        out
    }

    #[test]
    fn repeated_observation_is_certain() {
        let start = k_prepare(Value::Face(Face::Q));
        let d = distribution(|c| k_observe(&start, Variable::Face, c).unwrap());
        assert_eq!(d.len(), 1);
        assert_eq!(d[&(Value::Face(Face::Q), start.clone())], Rational64::from_integer(1));
    }

    #[test]
    fn new_observation_of_suit() {
        let start = k_prepare(Value::Face(Face::Q));
        let d = distribution(|c| k_observe(&start, Variable::Suit, c).unwrap().0);
        assert_eq!(d[&Value::Suit(Suit::S)], Rational64::new(1, 4));
        assert_eq!(d[&Value::Suit(Suit::D)], Rational64::new(1, 4));
        assert_eq!(d[&Value::Suit(Suit::H)], Rational64::new(1, 2));
    }

    #[test]
    fn no_king_without_an_intermediate_step() {
        let start = k_prepare(Value::Face(Face::Q));
        let d = distribution(|c| k_observe(&start, Variable::Face, c).unwrap().0);
        assert!(!d.contains_key(&Value::Face(Face::K)));
    }

    #[test]
    fn partial_observation_of_spades() {
        let start = k_prepare(Value::Face(Face::Q));
        let d = distribution(|c| k_partial_observe(&start, Value::Suit(Suit::S), c).unwrap());
        assert_eq!(d.len(), 2);
        let (found_state, found_p) = d.iter().find(|((f, _), _)| *f).map(|((_, s), p)| (s, *p)).unwrap();
        assert_eq!(found_p, Rational64::new(1, 4));
        assert_eq!(found_state.these(), cards(&["JS", "QS"]));
        assert_eq!(found_state.others(), cards(&["JD", "QD", "KH", "KH"]));

        let (missed_state, missed_p) = d.iter().find(|((f, _), _)| !*f).map(|((_, s), p)| (s, *p)).unwrap();
        assert_eq!(missed_p, Rational64::new(3, 4));
        assert_eq!(missed_state.these(), cards(&["JD", "QD", "KH", "KH"]));
        assert_eq!(missed_state.others(), cards(&["JS", "QS"]));

        let faces = distribution(|c| k_observe(missed_state, Variable::Face, c).unwrap().0);
        assert!(!faces.contains_key(&Value::Face(Face::K)));
    }

    #[test]
    fn empty_pool_is_a_protocol_error() {
        let s = DeckState::from_piles(Vec::new(), DECK.to_vec(), Variable::Face).unwrap();
        let mut script = ScriptedVariates::new(vec![0.5]);
        assert!(matches!(
            k_observe(&s, Variable::Face, &mut Sampler(&mut script)),
            Err(Error::Protocol(_))
        ));
        assert!(matches!(
            k_partial_observe(&s, Value::Face(Face::K), &mut Sampler(&mut script)),
            Err(Error::Protocol(_))
        ));
        assert_eq!(script.consumed(), 0);
    }

    #[test]
    fn from_piles_rejects_non_partitions() {
        assert!(DeckState::from_piles(DECK[..5].to_vec(), Vec::new(), Variable::Suit).is_err());
        assert!(DeckState::from_piles(DECK.to_vec(), DECK[..1].to_vec(), Variable::Suit).is_err());
        let ok = DeckState::from_piles(DECK[3..].to_vec(), DECK[..3].to_vec(), Variable::Suit).unwrap();
        assert!(ok.is_conserved());
    }
}
