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

//! Occupation-number bookkeeping and sparse pure states.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Amplitudes below this magnitude are dropped after every evolution step.
pub const PRUNE_THRESHOLD: f64 = 1e-14;

/// Photon counts per mode, labelling one Fock basis ket.
///
/// Ordering is lexicographic over the counts, which fixes the iteration order
/// of every state and density matrix in the crate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OccupationVector(Vec<u8>);

impl OccupationVector {
    pub fn zeros(mode_count: usize) -> Self {
        OccupationVector(vec![0; mode_count])
    }

    pub fn from_counts(counts: &[usize]) -> Result<Self> {
        counts
            .iter()
            .map(|&n| {
                u8::try_from(n).map_err(|_| Error::Sector(format!("{n} photons in one mode")))
            })
            .collect::<Result<Vec<_>>>()
            .map(OccupationVector)
    }

    /// Sparse constructor: `(mode, count)` pairs, every other mode empty.
    pub fn from_sparse(mode_count: usize, entries: &[(usize, usize)]) -> Result<Self> {
        let mut counts = vec![0usize; mode_count];
        for &(mode, n) in entries {
            if mode >= mode_count {
                return Err(Error::ModeOutOfRange { mode, mode_count });
            }
            counts[mode] += n;
        }
        Self::from_counts(&counts)
    }

    pub fn mode_count(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, mode: usize) -> usize {
        self.0.get(mode).copied().unwrap_or(0) as usize
    }

    pub fn counts(&self) -> &[u8] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&n| n as usize).sum()
    }

    /// Product of the factorials of the counts.
    pub fn factorial_product(&self) -> f64 {
        self.0.iter().map(|&n| factorial(n as usize)).product()
    }

    /// Keep only the listed modes, in the listed order.
    pub fn select(&self, modes: &[usize]) -> OccupationVector {
        OccupationVector(modes.iter().map(|&m| self.0[m]).collect())
    }

    pub(crate) fn from_raw(counts: Vec<u8>) -> Self {
        OccupationVector(counts)
    }
}

impl fmt::Debug for OccupationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for OccupationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        for (i, n) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, "⟩")
    }
}

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// A pure state: a sparse superposition of Fock kets sharing one photon number.
#[derive(Clone, Debug, PartialEq)]
pub struct FockState {
    mode_count: usize,
    amplitudes: BTreeMap<OccupationVector, Complex64>,
}

impl FockState {
    /// Builds a state from `(ket, amplitude)` pairs. Repeated kets are summed
    /// and amplitudes under [`PRUNE_THRESHOLD`] are dropped.
    pub fn from_amplitudes<I>(mode_count: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (OccupationVector, Complex64)>,
    {
        let mut amplitudes = BTreeMap::new();
        let mut sector = None;
        for (occ, amp) in terms {
            if occ.mode_count() != mode_count {
                return Err(Error::Dimension {
                    expected: mode_count,
                    found: occ.mode_count(),
                });
            }
            let total = occ.total();
            match sector {
                None => sector = Some(total),
                Some(n) if n != total => {
                    return Err(Error::Sector(format!(
                        "kets with {n} and {total} photons in one state"
                    )))
                }
                _ => {}
            }
            *amplitudes.entry(occ).or_insert(Complex64::new(0.0, 0.0)) += amp;
        }
        let mut state = FockState {
            mode_count,
            amplitudes,
        };
        state.prune();
        Ok(state)
    }

    /// A single basis ket with amplitude one.
    pub fn basis(mode_count: usize, entries: &[(usize, usize)]) -> Result<Self> {
        let occ = OccupationVector::from_sparse(mode_count, entries)?;
        Self::from_amplitudes(mode_count, [(occ, Complex64::new(1.0, 0.0))])
    }

    /// Superposition of sparse kets, e.g. `[(&[(0, 2)], a), (&[(1, 2)], b)]`.
    pub fn from_sparse_terms(
        mode_count: usize,
        terms: &[(&[(usize, usize)], Complex64)],
    ) -> Result<Self> {
        let kets = terms
            .iter()
            .map(|(entries, amp)| Ok((OccupationVector::from_sparse(mode_count, entries)?, *amp)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_amplitudes(mode_count, kets)
    }

    pub(crate) fn from_map_unchecked(
        mode_count: usize,
        amplitudes: BTreeMap<OccupationVector, Complex64>,
    ) -> Self {
        let mut state = FockState {
            mode_count,
            amplitudes,
        };
        state.prune();
        state
    }

    fn prune(&mut self) {
        self.amplitudes.retain(|_, a| a.norm() >= PRUNE_THRESHOLD);
    }

    pub fn mode_count(&self) -> usize {
        self.mode_count
    }

    /// Photon number of the sector, `None` for the empty state.
    pub fn photon_number(&self) -> Option<usize> {
        self.amplitudes.keys().next().map(OccupationVector::total)
    }

    pub fn len(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amplitudes.is_empty()
    }

    pub fn amplitude(&self, occ: &OccupationVector) -> Complex64 {
        self.amplitudes
            .get(occ)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Amplitude of a sparse ket; out-of-range modes give zero.
    pub fn amplitude_of(&self, entries: &[(usize, usize)]) -> Complex64 {
        match OccupationVector::from_sparse(self.mode_count, entries) {
            Ok(occ) => self.amplitude(&occ),
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    /// Kets in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (&OccupationVector, &Complex64)> {
        self.amplitudes.iter()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.values().map(|a| a.norm_sqr()).sum()
    }

    pub fn scale(&self, factor: Complex64) -> FockState {
        FockState::from_map_unchecked(
            self.mode_count,
            self.amplitudes
                .iter()
                .map(|(k, a)| (k.clone(), a * factor))
                .collect(),
        )
    }

    /// Rescale by a positive real factor to unit norm.
    pub fn normalize(&self) -> Result<FockState> {
        let norm = self.norm_sqr().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::DegenerateState);
        }
        Ok(self.scale(Complex64::new(1.0 / norm, 0.0)))
    }

    pub fn to_json(&self) -> String {
        let entries: Vec<JsonEntry> = self
            .iter()
            .map(|(occ, a)| JsonEntry {
                occupation: occ.counts().iter().map(|&n| n as u32).collect(),
                re: a.re,
                im: a.im,
            })
            .collect();
        serde_json::to_string_pretty(&entries).expect("plain data serializes")
    }

    /// Parses the JSON array form written by [`FockState::to_json`]. The mode
    /// count is taken from the occupation vectors.
    pub fn from_json(text: &str) -> Result<FockState> {
        let entries: Vec<JsonEntry> =
            serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
        let mode_count = entries
            .first()
            .map(|e| e.occupation.len())
            .ok_or(Error::DegenerateState)?;
        let terms = entries
            .into_iter()
            .map(|e| {
                let counts: Vec<usize> = e.occupation.iter().map(|&n| n as usize).collect();
                Ok((
                    OccupationVector::from_counts(&counts)?,
                    Complex64::new(e.re, e.im),
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        FockState::from_amplitudes(mode_count, terms)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonEntry {
    occupation: Vec<u32>,
    re: f64,
    im: f64,
}

/// `⟨a|b⟩ = Σ conj(a_k) b_k`.
pub fn inner_product(a: &FockState, b: &FockState) -> Result<Complex64> {
    if a.mode_count != b.mode_count {
        return Err(Error::Dimension {
            expected: a.mode_count,
            found: b.mode_count,
        });
    }
    // walk the smaller map
    let (small, large, conj_small) = if a.len() <= b.len() {
        (a, b, true)
    } else {
        (b, a, false)
    };
    let mut acc = Complex64::new(0.0, 0.0);
    for (occ, amp) in small.iter() {
        if let Some(other) = large.amplitudes.get(occ) {
            acc += if conj_small {
                amp.conj() * other
            } else {
                other.conj() * amp
            };
        }
    }
    Ok(acc)
}
