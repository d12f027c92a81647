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

//! Fixtures shared by the criterion benches.

use std::collections::BTreeSet;

use mzsim_core::circuit::{preset, Circuit, PhaseAssignment};
use mzsim_core::scenarios::engineered_noon;
use mzsim_core::{FockState, ModeUnitary};

/// A circuit with every phase at `phi` and all toggles in.
pub struct Workload {
    pub circuit: Circuit,
    pub phases: PhaseAssignment,
    pub toggles: BTreeSet<String>,
    pub input: FockState,
}

impl Workload {
    /// The braced preset with `n` stages driven by its engineered NOON input.
    pub fn braced(n: usize, phi: f64) -> Workload {
        let circuit = preset(&format!("braced_n({n})")).expect("supported stage count");
        let phases = circuit
            .parameters()
            .iter()
            .fold(PhaseAssignment::new(), |p, name| p.with(name, phi));
        let input = engineered_noon(&circuit, n).expect("engineered input");
        Workload {
            toggles: circuit.toggles().clone(),
            circuit,
            phases,
            input,
        }
    }

    pub fn unitary(&self) -> ModeUnitary {
        self.circuit.compile(&self.phases, &self.toggles).unwrap()
    }
}
