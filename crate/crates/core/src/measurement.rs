// Copyright 2026 The mzsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Detection patterns, number-operator expectations and density matrices.
//!
//! Every observable here is diagonal in the Fock basis, so probabilities are
//! sums of squared amplitudes over matching kets; no operator algebra is built.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::fock::{inner_product, FockState, OccupationVector};

/// Required click counts per named detector.
///
/// `exclusive` (the default) also demands zero photons on every other
/// detector of the circuit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetectionPattern {
    pub counts: BTreeMap<String, usize>,
    pub exclusive: bool,
}

impl DetectionPattern {
    pub fn new<I, S>(counts: I) -> Self
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        DetectionPattern {
            counts: counts.into_iter().map(|(k, v)| (k.into(), v)).collect(),
            exclusive: true,
        }
    }

    /// Parses `D10:1,D11:1`. Repeated detectors are rejected.
    pub fn parse(text: &str) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (name, count) = item
                .split_once(':')
                .ok_or_else(|| Error::InvalidPattern(format!("`{item}` is not name:count")))?;
            let count: usize = count
                .trim()
                .parse()
                .map_err(|_| Error::InvalidPattern(format!("bad count in `{item}`")))?;
            if counts.insert(name.trim().to_string(), count).is_some() {
                return Err(Error::InvalidPattern(format!(
                    "detector `{name}` listed twice"
                )));
            }
        }
        if counts.is_empty() {
            return Err(Error::InvalidPattern("empty pattern".into()));
        }
        Ok(DetectionPattern {
            counts,
            exclusive: true,
        })
    }

    pub fn non_exclusive(mut self) -> Self {
        self.exclusive = false;
        self
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    /// Maps detector names to the circuit's modes.
    pub fn resolve(&self, circuit: &Circuit) -> Result<ModePattern> {
        let required = self
            .counts
            .iter()
            .map(|(name, &count)| {
                circuit
                    .detector_mode(name)
                    .map(|mode| (mode, count))
                    .ok_or_else(|| Error::UnknownDetector(name.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ModePattern {
            required,
            exclusive: self.exclusive,
            detector_modes: circuit.detector_modes(),
        })
    }
}

impl fmt::Display for DetectionPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .counts
            .iter()
            .map(|(k, v)| format!("{k}:{v}"))
            .collect();
        write!(f, "{}", items.join(","))?;
        if !self.exclusive {
            write!(f, " (non-exclusive)")?;
        }
        Ok(())
    }
}

/// A [`DetectionPattern`] resolved to mode indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModePattern {
    /// `(mode, count)` sorted by detector name.
    pub required: Vec<(usize, usize)>,
    pub exclusive: bool,
    /// All detector modes of the circuit; zero-constrained when exclusive.
    pub detector_modes: Vec<usize>,
}

impl ModePattern {
    pub fn total(&self) -> usize {
        self.required.iter().map(|&(_, c)| c).sum()
    }

    pub fn matches(&self, occ: &OccupationVector) -> bool {
        if !self.required.iter().all(|&(m, c)| occ.get(m) == c) {
            return false;
        }
        !self.exclusive
            || self
                .detector_modes
                .iter()
                .filter(|m| !self.required.iter().any(|(r, _)| r == *m))
                .all(|&m| occ.get(m) == 0)
    }

    /// The only ket an exclusive pattern can match when it accounts for all
    /// `n` photons.
    fn unique_ket(&self, mode_count: usize, n: usize) -> Option<OccupationVector> {
        if self.total() != n {
            return None;
        }
        OccupationVector::from_sparse(mode_count, &self.required).ok()
    }
}

/// Probability of observing `pattern` on `state` (normalized). Patterns asking
/// for more photons than the state holds have probability zero.
pub fn pattern_probability(state: &FockState, pattern: &ModePattern) -> f64 {
    let n = state.photon_number().unwrap_or(0);
    if pattern.total() > n {
        return 0.0;
    }
    if let Some(ket) = pattern.unique_ket(state.mode_count(), n) {
        return state.amplitude(&ket).norm_sqr();
    }
    state
        .iter()
        .filter(|(occ, _)| pattern.matches(occ))
        .map(|(_, a)| a.norm_sqr())
        .sum()
}

/// `n (n-1) ... (n-c+1)`.
fn falling(n: usize, c: usize) -> f64 {
    if c > n {
        0.0
    } else {
        ((n - c + 1)..=n).map(|k| k as f64).product()
    }
}

/// Normally ordered correlation `⟨Π a_m†^c a_m^c⟩` over the required modes;
/// for unit counts this is the product of number operators. Exclusivity is
/// ignored.
pub fn correlation(state: &FockState, pattern: &ModePattern) -> f64 {
    state
        .iter()
        .map(|(occ, a)| {
            a.norm_sqr()
                * pattern
                    .required
                    .iter()
                    .map(|&(m, c)| falling(occ.get(m), c))
                    .product::<f64>()
        })
        .sum()
}

/// `|⟨superposition|state⟩|²`.
pub fn projected_probability(state: &FockState, superposition: &FockState) -> Result<f64> {
    Ok(inner_product(superposition, state)?.norm_sqr())
}

/// Post-selects `state` on `pattern` and renormalizes.
pub fn condition(state: &FockState, pattern: &ModePattern) -> Result<FockState> {
    let kept = state
        .iter()
        .filter(|(occ, _)| pattern.matches(occ))
        .map(|(o, a)| (o.clone(), *a));
    FockState::from_amplitudes(state.mode_count(), kept)?.normalize()
}

/// Sparse density matrix over a subset of modes. Kets are occupation vectors
/// over `modes` (in that order), not over the full circuit.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    modes: Vec<usize>,
    entries: BTreeMap<(OccupationVector, OccupationVector), Complex64>,
}

const ENTRY_THRESHOLD: f64 = 1e-15;

impl DensityMatrix {
    pub fn from_entries<I>(modes: Vec<usize>, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((OccupationVector, OccupationVector), Complex64)>,
    {
        let mut map = BTreeMap::new();
        for ((a, b), v) in entries {
            for occ in [&a, &b] {
                if occ.mode_count() != modes.len() {
                    return Err(Error::Dimension {
                        expected: modes.len(),
                        found: occ.mode_count(),
                    });
                }
            }
            *map.entry((a, b)).or_insert(Complex64::new(0.0, 0.0)) += v;
        }
        map.retain(|_, v: &mut Complex64| v.norm() >= ENTRY_THRESHOLD);
        Ok(DensityMatrix {
            modes,
            entries: map,
        })
    }

    /// Global mode indices covered, in ket order.
    pub fn modes(&self) -> &[usize] {
        &self.modes
    }

    pub fn entry(&self, a: &OccupationVector, b: &OccupationVector) -> Complex64 {
        self.entries
            .get(&(a.clone(), b.clone()))
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn iter(
        &self,
    ) -> impl Iterator<Item = (&(OccupationVector, OccupationVector), &Complex64)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn trace(&self) -> Complex64 {
        self.entries
            .iter()
            .filter(|((a, b), _)| a == b)
            .map(|(_, v)| *v)
            .sum()
    }

    /// Diagonal `(ket, probability)` pairs.
    pub fn diagonal(&self) -> impl Iterator<Item = (&OccupationVector, f64)> {
        self.entries
            .iter()
            .filter(|((a, b), _)| a == b)
            .map(|((a, _), v)| (a, v.re))
    }

    /// Largest `|ρ_ab − conj(ρ_ba)|`.
    pub fn hermiticity_error(&self) -> f64 {
        self.entries
            .iter()
            .map(|((a, b), v)| (v - self.entry(b, a).conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Largest entrywise difference to `other` (same mode list required).
    pub fn max_difference(&self, other: &DensityMatrix) -> Result<f64> {
        if self.modes != other.modes {
            return Err(Error::Dimension {
                expected: self.modes.len(),
                found: other.modes.len(),
            });
        }
        let diff = self
            .entries
            .iter()
            .map(|((a, b), v)| (v - other.entry(a, b)).norm())
            .chain(
                other
                    .entries
                    .iter()
                    .map(|((a, b), v)| (v - self.entry(a, b)).norm()),
            )
            .fold(0.0, f64::max);
        Ok(diff)
    }

    /// Kronecker product; mode lists are concatenated and must be disjoint.
    pub fn tensor(&self, other: &DensityMatrix) -> Result<DensityMatrix> {
        if let Some(&m) = other.modes.iter().find(|m| self.modes.contains(m)) {
            return Err(Error::InvalidCircuit(format!(
                "mode {m} appears on both factors"
            )));
        }
        let join = |x: &OccupationVector, y: &OccupationVector| {
            let mut counts = x.counts().to_vec();
            counts.extend_from_slice(y.counts());
            OccupationVector::from_raw(counts)
        };
        let mut modes = self.modes.clone();
        modes.extend_from_slice(&other.modes);
        let entries = self.entries.iter().flat_map(|((a, b), v)| {
            other
                .entries
                .iter()
                .map(move |((c, d), w)| ((join(a, c), join(b, d)), v * w))
        });
        DensityMatrix::from_entries(modes, entries)
    }

    /// Dense form over the kets that appear, in lexicographic order.
    pub fn to_dense(&self) -> (Vec<OccupationVector>, DMatrix<Complex64>) {
        let mut basis: Vec<OccupationVector> = self
            .entries
            .keys()
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .collect();
        basis.sort();
        basis.dedup();
        let index: BTreeMap<&OccupationVector, usize> =
            basis.iter().enumerate().map(|(i, o)| (o, i)).collect();
        let mut m = DMatrix::zeros(basis.len(), basis.len());
        for ((a, b), v) in &self.entries {
            m[(index[a], index[b])] = *v;
        }
        (basis, m)
    }

    fn position(&self, mode: usize) -> Result<usize> {
        self.modes
            .iter()
            .position(|&m| m == mode)
            .ok_or(Error::MissingMode(mode))
    }
}

/// `|ψ⟩⟨ψ|` over all modes of the state.
pub fn density_from_pure(state: &FockState) -> DensityMatrix {
    let entries = state.iter().flat_map(|(a, x)| {
        state
            .iter()
            .map(move |(b, y)| ((a.clone(), b.clone()), x * y.conj()))
    });
    DensityMatrix::from_entries((0..state.mode_count()).collect(), entries)
        .expect("kets match the state's mode count")
}

/// Traces out the global modes in `traced`.
pub fn partial_trace(rho: &DensityMatrix, traced: &[usize]) -> Result<DensityMatrix> {
    let traced_pos = traced
        .iter()
        .map(|&m| rho.position(m))
        .collect::<Result<Vec<_>>>()?;
    let kept_pos: Vec<usize> = (0..rho.modes.len())
        .filter(|p| !traced_pos.contains(p))
        .collect();
    if kept_pos.is_empty() {
        return Err(Error::TraceAll);
    }
    let modes = kept_pos.iter().map(|&p| rho.modes[p]).collect();
    let entries = rho
        .entries
        .iter()
        .filter(|((a, b), _)| a.select(&traced_pos) == b.select(&traced_pos))
        .map(|((a, b), v)| ((a.select(&kept_pos), b.select(&kept_pos)), *v));
    DensityMatrix::from_entries(modes, entries)
}

/// `Tr{a_m† a_m ρ}`.
pub fn mean_photon_number(rho: &DensityMatrix, mode: usize) -> Result<f64> {
    let p = rho.position(mode)?;
    Ok(rho.diagonal().map(|(occ, w)| occ.get(p) as f64 * w).sum())
}

/// `Tr{Π_m a_m†^c a_m^c ρ}` over the pattern's required modes: the product of
/// number operators for unit counts.
pub fn coincidence_from_density(rho: &DensityMatrix, pattern: &ModePattern) -> Result<f64> {
    let required = pattern
        .required
        .iter()
        .map(|&(m, c)| Ok((rho.position(m)?, c)))
        .collect::<Result<Vec<_>>>()?;
    Ok(rho
        .diagonal()
        .map(|(occ, w)| {
            w * required
                .iter()
                .map(|&(p, c)| falling(occ.get(p), c))
                .product::<f64>()
        })
        .sum())
}
