//! Pre- and post-selected systems.
//!
//! [`enumerate_sequence`] walks the full found/not-found tree of a sequence
//! of projective observations with sequential Born weights. The closed-form
//! conditional probability in [`abl_found_probability`] and the weak value in
//! [`weak_value`] are computed directly from the two states and are checked
//! against the tree walk in tests.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::{self, CoStateVector, Projector, StateVector, ALGEBRAIC_TOLERANCE, NULL_NORM_SQR};

/// A pre-selected ket paired with a post-selected bra over the same basis.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoStateVector {
    pre: StateVector,
    post: CoStateVector,
}

impl TwoStateVector {
    pub fn new(pre: StateVector, post: CoStateVector) -> Result<Self> {
        if pre.basis() != post.basis() {
            return Err(Error::BasisMismatch);
        }
        Ok(Self { pre, post })
    }

    pub fn pre(&self) -> &StateVector {
        &self.pre
    }

    pub fn post(&self) -> &CoStateVector {
        &self.post
    }

    /// `⟨φ|ψ⟩`.
    pub fn overlap(&self) -> Complex64 {
        self.post.pair_raw(self.pre.amplitudes())
    }

    /// `⟨φ|P|ψ⟩`.
    pub fn sandwich(&self, p: &Projector) -> Result<Complex64> {
        if p.basis() != self.pre.basis() {
            return Err(Error::BasisMismatch);
        }
        Ok(self.post.pair_raw(&p.apply_raw(self.pre.amplitudes())))
    }
}

/// One leaf of the observation tree.
#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    /// `true` = found, one entry per observation.
    pub outcomes: Vec<bool>,
    /// Probability of this outcome sequence.
    pub joint: f64,
    /// Probability that post-selection then succeeds.
    pub post: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BranchDistribution {
    pub entries: Vec<Branch>,
}

impl BranchDistribution {
    pub fn total_joint(&self) -> f64 {
        self.entries.iter().map(|b| b.joint).sum()
    }

    /// Probability that post-selection succeeds.
    pub fn p_post(&self) -> f64 {
        self.entries.iter().map(|b| b.joint * b.post).sum()
    }

    /// `P(outcomes | post)`, or `None` when post-selection never succeeds.
    pub fn conditional(&self, outcomes: &[bool]) -> Option<f64> {
        let p_post = self.p_post();
        if p_post <= NULL_NORM_SQR {
            return None;
        }
        let hit: f64 = self
            .entries
            .iter()
            .filter(|b| b.outcomes == outcomes)
            .map(|b| b.joint * b.post)
            .sum();
        Some((hit / p_post).clamp(0.0, 1.0))
    }

    pub fn conditional_table(&self) -> Option<BTreeMap<Vec<bool>, f64>> {
        let p_post = self.p_post();
        if p_post <= NULL_NORM_SQR {
            return None;
        }
        let mut table = BTreeMap::new();
        for b in &self.entries {
            *table.entry(b.outcomes.clone()).or_insert(0.0) += b.joint * b.post / p_post;
        }
        Some(table)
    }
}

/// Walks every found/not-found branch of `measurements` between pre- and
/// post-selection.
pub fn enumerate_sequence(tsv: &TwoStateVector, measurements: &[Projector]) -> Result<BranchDistribution> {
    if measurements.iter().any(|p| p.basis() != tsv.pre.basis()) {
        return Err(Error::BasisMismatch);
    }
    let mut entries = Vec::with_capacity(1 << measurements.len());
    walk(tsv, measurements, Some(tsv.pre.clone()), 1.0, &mut Vec::new(), &mut entries)?;
    Ok(BranchDistribution { entries })
}

fn walk(
    tsv: &TwoStateVector,
    remaining: &[Projector],
    state: Option<StateVector>,
    weight: f64,
    outcomes: &mut Vec<bool>,
    out: &mut Vec<Branch>,
) -> Result<()> {
    let Some((p, rest)) = remaining.split_first() else {
        let post = match &state {
            Some(s) => hilbert::inner(&tsv.post, s)?.norm_sqr(),
            None => 0.0,
        };
        out.push(Branch {
            outcomes: outcomes.clone(),
            joint: weight,
            post,
        });
        return Ok(());
    };
    for found in [true, false] {
        let (w, next) = match &state {
            Some(s) => {
                let proj = if found { p.clone() } else { p.complement() };
                let branch = hilbert::project(s, &proj)?;
                (weight * branch.probability, branch.collapsed)
            }
            None => (0.0, None),
        };
        outcomes.push(found);
        walk(tsv, rest, next, w, outcomes, out)?;
        outcomes.pop();
    }
    Ok(())
}

/// `|⟨φ|P|ψ⟩|² / (|⟨φ|P|ψ⟩|² + |⟨φ|(1−P)|ψ⟩|²)`.
pub fn abl_found_probability(tsv: &TwoStateVector, p: &Projector) -> Result<f64> {
    let inside = tsv.sandwich(p)?.norm_sqr();
    let outside = tsv.sandwich(&p.complement())?.norm_sqr();
    let denominator = inside + outside;
    if denominator <= NULL_NORM_SQR {
        return Err(Error::PostSelectionImpossible);
    }
    Ok(inside / denominator)
}

/// `⟨φ|P|ψ⟩ / ⟨φ|ψ⟩`.
pub fn weak_value(tsv: &TwoStateVector, p: &Projector) -> Result<Complex64> {
    let overlap = tsv.overlap();
    if overlap.norm() < ALGEBRAIC_TOLERANCE {
        return Err(Error::UndefinedWeakValue);
    }
    Ok(tsv.sandwich(p)? / overlap)
}

/// Mean pointer position of a post-selected Gaussian meter.
///
/// The meter starts in a Gaussian with position variance `sigma²` and is
/// shifted by `coupling` on the range of `p`. After post-selection its
/// (unnormalized) wavefunction is `a·G(x) + b·G(x − g)` with
/// `a = ⟨φ|(1−P)|ψ⟩`, `b = ⟨φ|P|ψ⟩`; the two Gaussians overlap by
/// `exp(−g²/(8σ²))`.
pub fn meter_mean(tsv: &TwoStateVector, p: &Projector, coupling: f64, sigma: f64) -> Result<f64> {
    for (name, value) in [("coupling", coupling), ("sigma", sigma)] {
        if !(value.is_finite() && value > 0.0) {
            return Err(Error::InvalidMeterParameter { name, value });
        }
    }
    let b = tsv.sandwich(p)?;
    let a = tsv.sandwich(&p.complement())?;
    let overlap = (-coupling * coupling / (8.0 * sigma * sigma)).exp();
    let cross = (a.conj() * b).re;
    let norm = a.norm_sqr() + b.norm_sqr() + 2.0 * cross * overlap;
    if norm <= NULL_NORM_SQR {
        return Err(Error::MeterPostSelectionImpossible);
    }
    Ok((b.norm_sqr() * coupling + cross * coupling * overlap) / norm)
}
