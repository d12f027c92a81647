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

//! Least-squares sinusoid fits for fringe scans.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Spatial frequencies tried by [`fit_fringe`], in cycles per 2π of the swept
/// phase. N photons sharing one delay oscillate at frequency N, so the set
/// reaches 5 for the largest braced circuits.
pub const FREQUENCY_CANDIDATES: [f64; 6] = [0.5, 1.0, 2.0, 3.0, 4.0, 5.0];

/// Scans whose largest sample is below this are treated as identically zero.
pub const ZERO_SCAN: f64 = 1e-12;

/// Largest accepted RMS residual relative to the peak sample.
pub const MAX_RELATIVE_RESIDUAL: f64 = 1e-6;

/// `y ≈ mean + amplitude·cos(f·φ + phase_offset)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FringeFit {
    pub mean: f64,
    pub amplitude: f64,
    pub spatial_frequency: f64,
    pub phase_offset: f64,
    pub visibility: f64,
    /// RMS residual relative to the peak sample.
    pub residual: f64,
}

impl FringeFit {
    fn zero() -> Self {
        FringeFit {
            mean: 0.0,
            amplitude: 0.0,
            spatial_frequency: 0.0,
            phase_offset: 0.0,
            visibility: 0.0,
            residual: 0.0,
        }
    }

    pub fn eval(&self, phi: f64) -> f64 {
        self.mean + self.amplitude * (self.spatial_frequency * phi + self.phase_offset).cos()
    }
}

fn fit_at(samples: &[(f64, f64)], f: f64) -> (FringeFit, f64) {
    let n = samples.len();
    let design = DMatrix::from_fn(n, 3, |i, j| {
        let phi = samples[i].0;
        match j {
            0 => 1.0,
            1 => (f * phi).cos(),
            _ => (f * phi).sin(),
        }
    });
    let y = DVector::from_iterator(n, samples.iter().map(|s| s.1));
    let coef = design
        .clone()
        .svd(true, true)
        .solve(&y, 1e-14)
        .expect("SVD with both factors computed");
    let rms = ((&design * &coef - &y).norm_squared() / n as f64).sqrt();
    let (a, p, q) = (coef[0], coef[1], coef[2]);
    let amplitude = p.hypot(q);
    let fit = FringeFit {
        mean: a,
        amplitude,
        spatial_frequency: f,
        phase_offset: (-q).atan2(p),
        visibility: if a > 0.0 { amplitude / a } else { 0.0 },
        residual: 0.0,
    };
    (fit, rms)
}

/// Fits every candidate frequency and keeps the best. Fails with
/// [`Error::UnclassifiableScan`] when even the best fit leaves a residual,
/// which for noiseless data means the signal is not a single sinusoid.
pub fn fit_fringe(samples: &[(f64, f64)]) -> Result<FringeFit> {
    if samples.len() < 3 {
        return Err(Error::InvalidSweep("need at least 3 samples to fit".into()));
    }
    let peak = samples.iter().map(|s| s.1.abs()).fold(0.0, f64::max);
    if peak < ZERO_SCAN {
        return Ok(FringeFit::zero());
    }
    let (mut best, rms) = FREQUENCY_CANDIDATES
        .iter()
        .map(|&f| fit_at(samples, f))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("candidate list is non-empty");
    best.residual = rms / peak;
    if best.residual > MAX_RELATIVE_RESIDUAL {
        return Err(Error::UnclassifiableScan(format!(
            "best sinusoid (f = {}) leaves relative residual {:.3e}",
            best.spatial_frequency, best.residual
        )));
    }
    if best.amplitude < MAX_RELATIVE_RESIDUAL * peak {
        // flat: the frequency carries no information
        best.spatial_frequency = 0.0;
        best.amplitude = 0.0;
        best.phase_offset = 0.0;
        best.visibility = 0.0;
    }
    Ok(best)
}
