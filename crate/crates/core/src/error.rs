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

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} modes, got {found}")]
    Dimension { expected: usize, found: usize },

    #[error("state has zero norm")]
    DegenerateState,

    #[error("invalid beam splitter coefficients: {0}")]
    InvalidCoefficients(String),

    #[error("matrix is not unitary (max deviation {0:.3e})")]
    NotUnitary(f64),

    #[error("photon-number sector mismatch: {0}")]
    Sector(String),

    #[error("mode index {mode} out of range for {mode_count} modes")]
    ModeOutOfRange { mode: usize, mode_count: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("unknown toggle `{0}`")]
    UnknownToggle(String),

    #[error("missing value for phase parameter `{0}`")]
    MissingPhase(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("unsupported stage count {0} (supported: 3..=5)")]
    UnsupportedStages(usize),

    #[error("unknown detector `{0}`")]
    UnknownDetector(String),

    #[error("invalid detection pattern: {0}")]
    InvalidPattern(String),

    #[error("mode {0} is not part of the density matrix")]
    MissingMode(usize),

    #[error("cannot trace out every mode")]
    TraceAll,

    #[error("target state has photons outside modes {0} and {1}")]
    WrongModes(usize, usize),

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("scan cannot be classified: {0}")]
    UnclassifiableScan(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
