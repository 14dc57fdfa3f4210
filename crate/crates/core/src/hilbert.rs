//! Finite-dimensional state space over a labeled basis.
//!
//! Kets ([`StateVector`]) and bras ([`CoStateVector`]) carry their basis so
//! that every binary operation can reject operands from different spaces.
//! Projectors are subsets of basis labels, which is all the three-box family
//! of experiments needs: every observation asks "is the system in this set
//! of basis states or not".

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance for algebraic identities (normalization, sum rules, overlaps).
pub const ALGEBRAIC_TOLERANCE: f64 = 1e-12;

/// Tolerance for "certain" outcomes.
pub const CERTAINTY_TOLERANCE: f64 = 1e-9;

/// Squared norms at or below this are treated as an exactly vanishing branch.
pub(crate) const NULL_NORM_SQR: f64 = 1e-24;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisLabel(String);

impl BasisLabel {
    pub fn new(name: impl Into<String>) -> Self {
        Self(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for BasisLabel {
    fn from(s: &str) -> Self {
        Self::new(s)
    }
}

/// Ordered list of unique labels. Cheap to clone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Basis(Arc<[BasisLabel]>);

impl Basis {
    pub fn new<I, L>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = L>,
        L: Into<BasisLabel>,
    {
        let labels: Vec<BasisLabel> = labels.into_iter().map(Into::into).collect();
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(Error::DuplicateLabel(label.0.clone()));
            }
        }
        Ok(Self(labels.into()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.0
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.iter().position(|l| l.as_str() == label)
    }

    fn ensure_same(&self, other: &Basis) -> Result<()> {
        if Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0 {
            Ok(())
        } else {
            Err(Error::BasisMismatch)
        }
    }
}

fn norm_sqr(amplitudes: &[Complex64]) -> f64 {
    amplitudes.iter().map(Complex64::norm_sqr).sum()
}

/// A normalized ket.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    basis: Basis,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Builds the normalized state proportional to `amplitudes`.
    pub fn new(basis: Basis, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != basis.len() {
            return Err(Error::LengthMismatch {
                basis: basis.len(),
                amplitudes: amplitudes.len(),
            });
        }
        let norm = norm_sqr(&amplitudes).sqrt();
        if !norm.is_finite() || norm * norm <= NULL_NORM_SQR {
            return Err(Error::NullState);
        }
        let amplitudes = amplitudes.into_iter().map(|a| a / norm).collect();
        Ok(Self { basis, amplitudes })
    }

    /// Convenience constructor for real amplitudes.
    pub fn from_real(basis: Basis, amplitudes: &[f64]) -> Result<Self> {
        Self::new(basis, amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// The basis state `|label⟩`.
    pub fn basis_state(basis: Basis, label: &str) -> Result<Self> {
        let index = basis
            .index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_owned()))?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); basis.len()];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { basis, amplitudes })
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, label: &str) -> Option<Complex64> {
        self.basis.index_of(label).map(|i| self.amplitudes[i])
    }

    pub fn norm_sqr(&self) -> f64 {
        norm_sqr(&self.amplitudes)
    }

    /// The bra dual to this ket.
    pub fn dual(&self) -> CoStateVector {
        CoStateVector { ket: self.clone() }
    }

    /// Largest componentwise distance to `other`, or `None` across bases.
    pub fn max_distance(&self, other: &StateVector) -> Option<f64> {
        if self.basis != other.basis {
            return None;
        }
        Some(
            self.amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max),
        )
    }
}

/// A normalized bra `⟨φ|`.
///
/// Stored as the ket `|φ⟩` it is dual to; pairing with a ket conjugates
/// these amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct CoStateVector {
    ket: StateVector,
}

impl CoStateVector {
    /// Builds `⟨φ|` from the ket amplitudes of `|φ⟩`, normalizing them.
    pub fn new(basis: Basis, amplitudes: Vec<Complex64>) -> Result<Self> {
        StateVector::new(basis, amplitudes).map(|ket| Self { ket })
    }

    pub fn from_real(basis: Basis, amplitudes: &[f64]) -> Result<Self> {
        StateVector::from_real(basis, amplitudes).map(|ket| Self { ket })
    }

    pub fn basis(&self) -> &Basis {
        &self.ket.basis
    }

    pub fn ket(&self) -> &StateVector {
        &self.ket
    }

    /// `⟨φ|v⟩` for an arbitrary (not necessarily normalized) amplitude list.
    pub(crate) fn pair_raw(&self, amplitudes: &[Complex64]) -> Complex64 {
        self.ket
            .amplitudes
            .iter()
            .zip(amplitudes)
            .map(|(b, k)| b.conj() * k)
            .sum()
    }
}

/// Projector onto the span of a subset of basis labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projector {
    basis: Basis,
    members: Vec<bool>,
}

impl Projector {
    pub fn new<'a, I>(basis: Basis, labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut members = vec![false; basis.len()];
        for label in labels {
            let i = basis
                .index_of(label)
                .ok_or_else(|| Error::UnknownLabel(label.to_owned()))?;
            members[i] = true;
        }
        Ok(Self { basis, members })
    }

    pub fn identity(basis: Basis) -> Self {
        let members = vec![true; basis.len()];
        Self { basis, members }
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    pub fn contains(&self, label: &str) -> bool {
        self.basis.index_of(label).is_some_and(|i| self.members[i])
    }

    pub fn labels(&self) -> Vec<&BasisLabel> {
        self.basis
            .labels()
            .iter()
            .zip(&self.members)
            .filter_map(|(l, &m)| m.then_some(l))
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.members.iter().filter(|&&m| m).count()
    }

    /// `1 − P`.
    pub fn complement(&self) -> Self {
        Self {
            basis: self.basis.clone(),
            members: self.members.iter().map(|m| !m).collect(),
        }
    }

    /// `P|v⟩` without renormalization.
    pub fn apply(&self, state: &StateVector) -> Result<Vec<Complex64>> {
        self.basis.ensure_same(&state.basis)?;
        Ok(self.apply_raw(&state.amplitudes))
    }

    pub(crate) fn apply_raw(&self, amplitudes: &[Complex64]) -> Vec<Complex64> {
        amplitudes
            .iter()
            .zip(&self.members)
            .map(|(&a, &m)| if m { a } else { Complex64::new(0.0, 0.0) })
            .collect()
    }
}

/// Outcome weight and post-measurement state of one projector branch.
#[derive(Debug, Clone, PartialEq)]
pub struct Projection {
    pub probability: f64,
    /// `None` when the branch has zero weight.
    pub collapsed: Option<StateVector>,
}

/// Result of a single sampled projective measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct Measurement {
    pub found: bool,
    pub collapsed: StateVector,
}

pub fn make_state(basis: Basis, amplitudes: Vec<Complex64>) -> Result<StateVector> {
    StateVector::new(basis, amplitudes)
}

/// `⟨bra|ket⟩`.
pub fn inner(bra: &CoStateVector, ket: &StateVector) -> Result<Complex64> {
    bra.basis().ensure_same(&ket.basis)?;
    Ok(bra.pair_raw(&ket.amplitudes))
}

/// Born weight of `p` on `state` and the renormalized restriction.
pub fn project(state: &StateVector, p: &Projector) -> Result<Projection> {
    let restricted = p.apply(state)?;
    if restricted == state.amplitudes {
        return Ok(Projection {
            probability: 1.0,
            collapsed: Some(state.clone()),
        });
    }
    let weight = norm_sqr(&restricted);
    let collapsed = if weight <= NULL_NORM_SQR {
        None
    } else {
        let norm = weight.sqrt();
        Some(StateVector {
            basis: state.basis.clone(),
            amplitudes: restricted.into_iter().map(|a| a / norm).collect(),
        })
    };
    Ok(Projection {
        probability: weight.clamp(0.0, 1.0),
        collapsed,
    })
}

/// Samples the yes/no observation `p`: found iff `variate < probability`.
pub fn measure(state: &StateVector, p: &Projector, variate: f64) -> Result<Measurement> {
    if !(0.0..1.0).contains(&variate) {
        return Err(Error::InvalidVariate(variate));
    }
    let inside = project(state, p)?;
    let outside = project(state, &p.complement())?;
    let found = variate < inside.probability;
    // A rounding-level probability can select a branch whose restriction
    // vanished; fall back to the surviving one.
    let measurement = match (found, inside.collapsed, outside.collapsed) {
        (true, Some(s), _) | (false, Some(s), None) => Measurement { found: true, collapsed: s },
        (false, _, Some(s)) | (true, None, Some(s)) => Measurement { found: false, collapsed: s },
        (_, None, None) => unreachable!("a normalized state has weight on P or 1 - P"),
    };
    Ok(measurement)
}
