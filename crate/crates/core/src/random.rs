//! Randomness sources and exhaustive choice enumeration.
//!
//! Games are written once against [`Chooser`]. Driving them with a
//! [`Sampler`] gives Monte Carlo runs; driving them through
//! [`enumerate_choices`] visits every path of the choice tree with its exact
//! probability. [`replay_variates`] turns an enumerated path back into the
//! uniform variates that make a [`Sampler`] retrace it.

use num_rational::Rational64;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A stream of uniform variates in `[0, 1)`.
pub trait Randomness {
    fn uniform(&mut self) -> f64;
}

/// Counter-based stream: run `index` under `seed` always sees the same
/// variates, independent of which other runs exist or where they execute.
#[derive(Debug, Clone)]
pub struct SeededStream(ChaCha8Rng);

impl SeededStream {
    pub fn new(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        Self(rng)
    }
}

impl Randomness for SeededStream {
    fn uniform(&mut self) -> f64 {
        self.0.random()
    }
}

/// Replays a fixed list of variates; panics when exhausted.
#[derive(Debug, Clone)]
pub struct ScriptedVariates {
    variates: Vec<f64>,
    next: usize,
}

impl ScriptedVariates {
    pub fn new(variates: Vec<f64>) -> Self {
        Self { variates, next: 0 }
    }

    pub fn consumed(&self) -> usize {
        self.next
    }
}

impl Randomness for ScriptedVariates {
    fn uniform(&mut self) -> f64 {
        let v = *self
            .variates
            .get(self.next)
            .expect("scripted variates exhausted");
        self.next += 1;
        v
    }
}

/// Source of discrete random choices.
pub trait Chooser {
    /// Picks index `i` with probability `weights[i] / Σ weights`.
    fn pick_weighted(&mut self, weights: &[u64]) -> usize;

    /// Uniform pick from `0..n`.
    fn pick(&mut self, n: usize) -> usize {
        self.pick_weighted(&vec![1; n])
    }
}

/// Adapts a variate stream to discrete choices: index `i` is chosen when the
/// variate lies in `[cum_i, cum_i + w_i) / total`.
pub struct Sampler<'a>(pub &'a mut dyn Randomness);

impl Chooser for Sampler<'_> {
    fn pick_weighted(&mut self, weights: &[u64]) -> usize {
        let total: u64 = weights.iter().sum();
        assert!(total > 0, "choice with no positive weight");
        let target = self.0.uniform() * total as f64;
        let mut cumulative = 0u64;
        let mut last_positive = 0;
        for (i, &w) in weights.iter().enumerate() {
            if w == 0 {
                continue;
            }
            cumulative += w;
            last_positive = i;
            if target < cumulative as f64 {
                return i;
            }
        }
        last_positive
    }
}

/// One decision along an enumerated path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Choice {
    pub index: usize,
    pub weights: Vec<u64>,
}

impl Choice {
    pub fn probability(&self) -> Rational64 {
        let total: u64 = self.weights.iter().sum();
        Rational64::new(self.weights[self.index] as i64, total as i64)
    }
}

/// A complete path through a choice tree.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoicePath<T> {
    pub choices: Vec<Choice>,
    pub outcome: T,
    pub probability: Rational64,
}

struct Tracer {
    prefix: Vec<usize>,
    trace: Vec<Choice>,
}

impl Chooser for Tracer {
    fn pick_weighted(&mut self, weights: &[u64]) -> usize {
        let depth = self.trace.len();
        let index = match self.prefix.get(depth) {
            Some(&i) => i,
            None => weights
                .iter()
                .position(|&w| w > 0)
                .expect("choice with no positive weight"),
        };
        self.trace.push(Choice {
            index,
            weights: weights.to_vec(),
        });
        index
    }
}

/// Runs `program` once per path of its choice tree.
///
/// `program` must be deterministic given its choices. Zero-weight branches
/// are skipped, so every returned path has positive probability and the
/// probabilities sum to exactly one.
pub fn enumerate_choices<T, F>(mut program: F) -> Vec<ChoicePath<T>>
where
    F: FnMut(&mut dyn Chooser) -> T,
{
    let mut paths = Vec::new();
    let mut prefix = Vec::new();
    loop {
        let mut tracer = Tracer {
            prefix,
            trace: Vec::new(),
        };
        let outcome = program(&mut tracer);
        let choices = tracer.trace;
        let probability = choices
            .iter()
            .map(Choice::probability)
            .fold(Rational64::from_integer(1), |acc, p| acc * p);

        // Advance to the next sibling at the deepest level that has one.
        let next = choices.iter().enumerate().rev().find_map(|(depth, c)| {
            c.weights
                .iter()
                .enumerate()
                .skip(c.index + 1)
                .find(|(_, &w)| w > 0)
                .map(|(i, _)| (depth, i))
        });
        prefix = match next {
            Some((depth, i)) => {
                let mut p: Vec<usize> = choices[..depth].iter().map(|c| c.index).collect();
                p.push(i);
                p
            }
            None => Vec::new(),
        };
        paths.push(ChoicePath {
            choices,
            outcome,
            probability,
        });
        if next.is_none() {
            return paths;
        }
    }
}

/// Variates that make a [`Sampler`] take exactly `choices`: the midpoint of
/// each chosen index's interval.
pub fn replay_variates(choices: &[Choice]) -> Vec<f64> {
    choices
        .iter()
        .map(|c| {
            let total: u64 = c.weights.iter().sum();
            let before: u64 = c.weights[..c.index].iter().sum();
            (before as f64 + c.weights[c.index] as f64 / 2.0) / total as f64
        })
        .collect()
}
