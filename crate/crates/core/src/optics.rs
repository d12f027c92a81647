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

//! Mode unitaries, Fock-state evolution, and the permanent amplitude oracle.
//!
//! A [`ModeUnitary`] is stored as `U[(out, in)]`: a photon entering mode `in`
//! leaves as `Σ_out U[(out, in)] â†_out`. Composition therefore reads right to
//! left, `U_total = U_n ⋯ U_2 U_1`.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::FRAC_1_SQRT_2;
use std::hash::{BuildHasherDefault, Hasher};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{factorial, FockState, OccupationVector};

/// Tolerance for the two beam-splitter constraints.
pub const COEFF_TOLERANCE: f64 = 1e-12;
/// Elementwise tolerance on `U U† = I`.
pub const UNITARY_TOLERANCE: f64 = 1e-10;

/// Transmission and reflection amplitudes of a lossless two-port splitter.
///
/// Both `|T|² + |R|² = 1` and `R T* + T R* = 0` are enforced on construction.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BeamSplitterCoeffs {
    t: Complex64,
    r: Complex64,
}

impl BeamSplitterCoeffs {
    pub fn new(t: Complex64, r: Complex64) -> Result<Self> {
        let energy = t.norm_sqr() + r.norm_sqr();
        if (energy - 1.0).abs() > COEFF_TOLERANCE {
            return Err(Error::InvalidCoefficients(format!(
                "|T|² + |R|² = {energy}, expected 1"
            )));
        }
        let cross = r * t.conj() + t * r.conj();
        if cross.norm() > COEFF_TOLERANCE {
            return Err(Error::InvalidCoefficients(format!(
                "R T* + T R* = {cross}, expected 0"
            )));
        }
        Ok(BeamSplitterCoeffs { t, r })
    }

    /// 50/50 splitter with the symmetric convention `T = 1/√2`, `R = i/√2`.
    pub fn balanced() -> Self {
        BeamSplitterCoeffs {
            t: Complex64::new(FRAC_1_SQRT_2, 0.0),
            r: Complex64::new(0.0, FRAC_1_SQRT_2),
        }
    }

    /// Real transmission amplitude `cos θ` with reflection `i sin θ`.
    pub fn from_angle(theta: f64) -> Self {
        BeamSplitterCoeffs {
            t: Complex64::new(theta.cos(), 0.0),
            r: Complex64::new(0.0, theta.sin()),
        }
    }

    pub fn transmission(&self) -> Complex64 {
        self.t
    }

    pub fn reflection(&self) -> Complex64 {
        self.r
    }
}

impl Default for BeamSplitterCoeffs {
    fn default() -> Self {
        Self::balanced()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModeUnitary {
    matrix: DMatrix<Complex64>,
}

impl ModeUnitary {
    /// Wraps a square matrix after checking `U U† = I` within
    /// [`UNITARY_TOLERANCE`].
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::Dimension {
                expected: matrix.nrows(),
                found: matrix.ncols(),
            });
        }
        let u = ModeUnitary { matrix };
        let dev = u.unitarity_error();
        if dev > UNITARY_TOLERANCE || !dev.is_finite() {
            return Err(Error::NotUnitary(dev));
        }
        Ok(u)
    }

    pub fn identity(mode_count: usize) -> Self {
        ModeUnitary {
            matrix: DMatrix::identity(mode_count, mode_count),
        }
    }

    pub fn mode_count(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// Amplitude for a single photon entering `input` to leave at `output`.
    pub fn entry(&self, output: usize, input: usize) -> Complex64 {
        self.matrix[(output, input)]
    }

    pub fn unitarity_error(&self) -> f64 {
        let n = self.matrix.nrows();
        let prod = &self.matrix * self.matrix.adjoint();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((prod[(i, j)] - Complex64::new(target, 0.0)).norm());
            }
        }
        worst
    }

    pub fn adjoint(&self) -> ModeUnitary {
        ModeUnitary {
            matrix: self.matrix.adjoint(),
        }
    }

    /// `next · self`: apply `self` first, then `next`.
    pub fn then(&self, next: &ModeUnitary) -> Result<ModeUnitary> {
        if next.mode_count() != self.mode_count() {
            return Err(Error::Dimension {
                expected: self.mode_count(),
                found: next.mode_count(),
            });
        }
        Ok(ModeUnitary {
            matrix: &next.matrix * &self.matrix,
        })
    }

    /// Left-multiplies by a 2×2 block acting on modes `a`, `b`, without
    /// building the full element matrix.
    pub(crate) fn apply_two_mode(&mut self, a: usize, b: usize, block: [[Complex64; 2]; 2]) {
        for col in 0..self.matrix.ncols() {
            let xa = self.matrix[(a, col)];
            let xb = self.matrix[(b, col)];
            self.matrix[(a, col)] = block[0][0] * xa + block[0][1] * xb;
            self.matrix[(b, col)] = block[1][0] * xa + block[1][1] * xb;
        }
    }

    pub(crate) fn apply_phase(&mut self, mode: usize, phi: f64) {
        let f = Complex64::from_polar(1.0, phi);
        for col in 0..self.matrix.ncols() {
            self.matrix[(mode, col)] *= f;
        }
    }

    /// Row-major `[[re, im], ...]` rows.
    pub fn to_row_major(&self) -> Vec<Vec<[f64; 2]>> {
        (0..self.matrix.nrows())
            .map(|i| {
                (0..self.matrix.ncols())
                    .map(|j| [self.matrix[(i, j)].re, self.matrix[(i, j)].im])
                    .collect()
            })
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_row_major()).expect("plain data serializes")
    }
}

fn check_mode(mode: usize, mode_count: usize) -> Result<()> {
    if mode >= mode_count {
        Err(Error::ModeOutOfRange { mode, mode_count })
    } else {
        Ok(())
    }
}

/// Identity except for the block `[[T, R], [R, T]]` on `(mode_a, mode_b)`.
pub fn bs_unitary(
    coeffs: BeamSplitterCoeffs,
    mode_a: usize,
    mode_b: usize,
    mode_count: usize,
) -> Result<ModeUnitary> {
    check_mode(mode_a, mode_count)?;
    check_mode(mode_b, mode_count)?;
    if mode_a == mode_b {
        return Err(Error::InvalidCoefficients(format!(
            "beam splitter needs two distinct modes, got {mode_a} twice"
        )));
    }
    let mut u = ModeUnitary::identity(mode_count);
    u.apply_two_mode(mode_a, mode_b, bs_block(coeffs));
    Ok(u)
}

pub(crate) fn bs_block(c: BeamSplitterCoeffs) -> [[Complex64; 2]; 2] {
    [[c.t, c.r], [c.r, c.t]]
}

pub(crate) fn swap_block() -> [[Complex64; 2]; 2] {
    let o = Complex64::new(0.0, 0.0);
    let l = Complex64::new(1.0, 0.0);
    [[o, l], [l, o]]
}

/// Diagonal unitary with `e^{iφ}` on `mode`.
pub fn phase_unitary(mode: usize, phi: f64, mode_count: usize) -> Result<ModeUnitary> {
    check_mode(mode, mode_count)?;
    let mut u = ModeUnitary::identity(mode_count);
    u.apply_phase(mode, phi);
    Ok(u)
}

/// Permutation exchanging two modes (a mirror relabelling).
pub fn swap_unitary(mode_a: usize, mode_b: usize, mode_count: usize) -> Result<ModeUnitary> {
    check_mode(mode_a, mode_count)?;
    check_mode(mode_b, mode_count)?;
    let mut u = ModeUnitary::identity(mode_count);
    if mode_a != mode_b {
        u.apply_two_mode(mode_a, mode_b, swap_block());
    }
    Ok(u)
}

// Expansion keys pack one mode per nibble.
const PACK_BITS: usize = 4;
const PACK_MAX_MODES: usize = 128 / PACK_BITS;
const PACK_MAX_COUNT: usize = (1 << PACK_BITS) - 1;

#[derive(Default)]
struct PackedHasher(u64);

impl Hasher for PackedHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0.rotate_left(5) ^ b as u64).wrapping_mul(0x51_7c_c1_b7_27_22_0a_95);
        }
    }

    fn write_u128(&mut self, v: u128) {
        let folded = (v as u64) ^ ((v >> 64) as u64).rotate_left(29);
        self.0 = (folded ^ (folded >> 31)).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    }
}

type PackedMap = HashMap<u128, Complex64, BuildHasherDefault<PackedHasher>>;

fn unpack(key: u128, mode_count: usize) -> Vec<u8> {
    (0..mode_count)
        .map(|m| ((key >> (m * PACK_BITS)) & PACK_MAX_COUNT as u128) as u8)
        .collect()
}

/// Evolves a state through `u` by substituting `â†_k → Σ_j U[(j, k)] â†_j`
/// in every ket and expanding the resulting operator polynomial.
///
/// Supports up to 32 modes and 15 photons.
pub fn evolve(state: &FockState, u: &ModeUnitary) -> Result<FockState> {
    let m = u.mode_count();
    if state.mode_count() != m {
        return Err(Error::Dimension {
            expected: m,
            found: state.mode_count(),
        });
    }
    let n = state.photon_number().unwrap_or(0);
    if m > PACK_MAX_MODES || n > PACK_MAX_COUNT {
        return Err(Error::Sector(format!(
            "{n} photons over {m} modes exceeds the supported 15 photons / 32 modes"
        )));
    }

    let columns: Vec<Vec<(usize, Complex64)>> = (0..m)
        .map(|k| {
            (0..m)
                .filter_map(|j| {
                    let v = u.entry(j, k);
                    (v.norm() > 0.0).then_some((j, v))
                })
                .collect()
        })
        .collect();

    let mut out = PackedMap::default();
    for (occ, amp) in state.iter() {
        let mut poly = PackedMap::default();
        poly.insert(0, amp / occ.factorial_product().sqrt());
        for (k, &count) in occ.counts().iter().enumerate() {
            for _ in 0..count {
                let mut next = PackedMap::with_capacity_and_hasher(
                    poly.len() * columns[k].len(),
                    Default::default(),
                );
                for (&key, &coeff) in &poly {
                    for &(j, v) in &columns[k] {
                        *next.entry(key + (1u128 << (j * PACK_BITS))).or_default() += coeff * v;
                    }
                }
                poly = next;
            }
        }
        for (key, coeff) in poly {
            *out.entry(key).or_default() += coeff;
        }
    }

    let amplitudes: BTreeMap<OccupationVector, Complex64> = out
        .into_iter()
        .map(|(key, coeff)| {
            let occ = OccupationVector::from_raw(unpack(key, m));
            let norm = occ.factorial_product().sqrt();
            (occ, coeff * norm)
        })
        .collect();
    Ok(FockState::from_map_unchecked(m, amplitudes))
}

/// Matrix permanent by Ryser's inclusion-exclusion formula with Gray-code
/// subset enumeration, `O(2ⁿ n)`.
pub fn permanent(a: &DMatrix<Complex64>) -> Complex64 {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "permanent of a non-square matrix");
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let mut row_sums = vec![Complex64::new(0.0, 0.0); n];
    let mut total = Complex64::new(0.0, 0.0);
    let mut gray: u64 = 0;
    for step in 1u64..(1u64 << n) {
        let next = step ^ (step >> 1);
        let flipped = (gray ^ next).trailing_zeros() as usize;
        let added = next & (1 << flipped) != 0;
        for (i, s) in row_sums.iter_mut().enumerate() {
            if added {
                *s += a[(i, flipped)];
            } else {
                *s -= a[(i, flipped)];
            }
        }
        gray = next;
        let prod: Complex64 = row_sums.iter().product();
        if next.count_ones() % 2 == 0 {
            total += prod;
        } else {
            total -= prod;
        }
    }
    if n % 2 == 1 {
        -total
    } else {
        total
    }
}

/// Largest photon number the permanent oracle accepts.
pub const ORACLE_MAX_PHOTONS: usize = 16;

/// `⟨n_out|Û|n_in⟩ = per(U_sub) / √(∏ n_out! ∏ n_in!)`, where `U_sub` repeats
/// row `j` of `U` `n_out[j]` times and column `k` `n_in[k]` times.
pub fn amplitude_oracle(
    n_out: &OccupationVector,
    u: &ModeUnitary,
    n_in: &OccupationVector,
) -> Result<Complex64> {
    let m = u.mode_count();
    for occ in [n_out, n_in] {
        if occ.mode_count() != m {
            return Err(Error::Dimension {
                expected: m,
                found: occ.mode_count(),
            });
        }
    }
    let n = n_in.total();
    if n_out.total() != n {
        return Err(Error::Sector(format!(
            "{} photons out, {} photons in",
            n_out.total(),
            n
        )));
    }
    if n > ORACLE_MAX_PHOTONS {
        return Err(Error::Sector(format!(
            "{n} photons exceeds the oracle limit"
        )));
    }
    let expand = |occ: &OccupationVector| -> Vec<usize> {
        (0..m)
            .flat_map(|mode| std::iter::repeat_n(mode, occ.get(mode)))
            .collect()
    };
    let rows = expand(n_out);
    let cols = expand(n_in);
    let sub = DMatrix::from_fn(n, n, |i, j| u.entry(rows[i], cols[j]));
    let norm = (n_out.factorial_product() * n_in.factorial_product()).sqrt();
    Ok(permanent(&sub) / norm)
}

/// `n!` as a float; exposed for closed-form checks.
pub fn photon_factorial(n: usize) -> f64 {
    factorial(n)
}
