//! Terminal demo: a human plays Bob, opening box A or B each round, and only
//! learns at the end which rounds Alice kept.

use std::io::{self, BufRead, Write};

use threebox::random::SeededStream;
use threebox::scenarios::{alice_bob_round, BobStrategy, RoundOutcome, ScenarioId};
use threebox::stats::Estimate;
use threebox::{enumerate_exact, QuantumGame};

use crate::document::{ExactValue, MonteCarloSection, OutputDocument};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Round {
    pub strategy: BobStrategy,
    pub outcome: RoundOutcome,
    /// Chosen by the fallback script rather than typed in.
    pub scripted: bool,
}

impl Round {
    /// Bob wins a round when he opened a box, found it empty, and Alice
    /// still kept the round.
    pub fn bob_wins(&self) -> bool {
        self.outcome.post_selected && self.outcome.bob_found == Some(false)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BobSession {
    pub seed: u64,
    pub rounds: Vec<Round>,
}

/// Alternates A, B, A, ... when nobody is at the keyboard.
fn scripted(round: u64) -> BobStrategy {
    if round.is_multiple_of(2) {
        BobStrategy::OpenA
    } else {
        BobStrategy::OpenB
    }
}

fn label(strategy: BobStrategy) -> &'static str {
    strategy.box_label().unwrap_or("-")
}

/// Reads `A` or `B`; `None` on end of input.
fn ask(input: &mut dyn BufRead, prompt: &mut dyn Write, round: u64) -> io::Result<Option<BobStrategy>> {
    loop {
        write!(prompt, "round {}: open box A or B? ", round + 1)?;
        prompt.flush()?;
        let mut line = String::new();
        if input.read_line(&mut line)? == 0 {
            writeln!(prompt)?;
            return Ok(None);
        }
        match line.trim().to_ascii_uppercase().as_str() {
            "A" => return Ok(Some(BobStrategy::OpenA)),
            "B" => return Ok(Some(BobStrategy::OpenB)),
            _ => writeln!(prompt, "please type A or B")?,
        }
    }
}

/// Plays `rounds` rounds. With `input` the player is prompted on `prompt`;
/// without it, or once input ends, the alternating script takes over.
pub fn play_session(
    seed: u64,
    rounds: u64,
    mut input: Option<&mut dyn BufRead>,
    prompt: &mut dyn Write,
) -> io::Result<BobSession> {
    let mut played = Vec::with_capacity(rounds as usize);
    for i in 0..rounds {
        let typed = match input.as_deref_mut() {
            Some(reader) => ask(reader, prompt, i)?,
            None => None,
        };
        if typed.is_none() && input.is_some() {
            writeln!(prompt, "input closed, continuing with the alternating script")?;
            input = None;
        }
        let strategy = typed.unwrap_or_else(|| scripted(i));
        let outcome = alice_bob_round(strategy, &mut SeededStream::new(seed, i));
        let round = Round { strategy, outcome, scripted: typed.is_none() };
        if input.is_some() {
            let seen = if outcome.bob_found == Some(true) { "found" } else { "empty" };
            writeln!(prompt, "  box {}: {seen}", label(strategy))?;
        }
        played.push(round);
    }
    Ok(BobSession { seed, rounds: played })
}

impl BobSession {
    pub fn kept(&self) -> impl Iterator<Item = &Round> {
        self.rounds.iter().filter(|r| r.outcome.post_selected)
    }

    pub fn kept_count(&self) -> u64 {
        self.kept().count() as u64
    }

    pub fn wins(&self) -> u64 {
        self.kept().filter(|r| r.bob_wins()).count() as u64
    }

    /// Fraction of kept rounds Bob lost; `None` when none were kept.
    pub fn loss_rate(&self) -> Option<f64> {
        let kept = self.kept_count();
        (kept > 0).then(|| (kept - self.wins()) as f64 / kept as f64)
    }

    pub fn write_summary(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "seed = {}", self.seed)?;
        if self.rounds.is_empty() {
            writeln!(out, "no rounds played")?;
            return Ok(());
        }
        writeln!(out, "round  box  bob saw  alice")?;
        for (i, r) in self.rounds.iter().enumerate() {
            let seen = match r.outcome.bob_found {
                Some(true) => "found",
                Some(false) => "empty",
                None => "-",
            };
            let kept = if r.outcome.post_selected { "kept" } else { "discarded" };
            writeln!(out, "{:>5}  {:<3}  {seen:<7}  {kept}", i + 1, label(r.strategy))?;
        }
        let loss = self
            .loss_rate()
            .map_or_else(|| "n/a".to_owned(), |l| format!("{:.0}%", 100.0 * l));
        writeln!(
            out,
            "kept {} of {} rounds (expected about 1/9), bob won {}, lost {loss} of kept rounds",
            self.kept_count(),
            self.rounds.len(),
            self.wins()
        )
    }

    /// Exact expectations next to the session's tallies, which go in the
    /// sampled section with `runs` = rounds played.
    pub fn document(&self) -> OutputDocument {
        let mut doc = OutputDocument::new("three-box")
            .param("game", "bob")
            .param("rounds", self.rounds.len())
            .param("seed", self.seed)
            .param(
                "choices",
                self.rounds.iter().map(|r| label(r.strategy)).collect::<String>(),
            );
        let game = QuantumGame::new(ScenarioId::ThreeBox, Some("A")).expect("box A exists");
        let exact = enumerate_exact(&game);
        doc.exact.insert("kept".into(), exact.p_post().into());
        doc.exact.insert("bob_wins_given_kept".into(), ExactValue::Rational("0".into()));
        let mut section = MonteCarloSection::new(self.rounds.len() as u64, self.seed);
        if let Some(kept) = Estimate::new(self.kept_count(), self.rounds.len() as u64) {
            section.push_estimate("kept", &kept);
        }
        if let Some(wins) = Estimate::new(self.wins(), self.kept_count()) {
            section.push_estimate("bob_wins_given_kept", &wins);
        }
        doc.monte_carlo = Some(section);
        doc
    }
}
