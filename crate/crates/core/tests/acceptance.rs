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

//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so every line is printed whether or not
//! the criterion holds; the process exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use common::*;
use mzsim_core::circuit::{fig1, fig2, fig3, preset, Circuit, CircuitElement, Couplers};
use mzsim_core::fock::inner_product;
use mzsim_core::measurement::{
    coincidence_from_density, density_from_pure, mean_photon_number, partial_trace,
    pattern_probability, DensityMatrix,
};
use mzsim_core::optics::{amplitude_oracle, bs_unitary, evolve};
use mzsim_core::scenarios::{
    classify_table1, engineered_fock, engineered_noon, noon_target, one_one, run_scan, run_triple,
    scan_many, triple_closed_form, Observable, Sweep, FLAT_VISIBILITY,
};
use mzsim_core::{
    BeamSplitterCoeffs, Complex64, DetectionPattern, FockState, ModePattern, OccupationVector,
};
use rand::Rng;

struct Outcome {
    pass: bool,
    detail: String,
    notes: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, detail: String) -> Self {
        Outcome {
            pass,
            detail,
            notes: Vec::new(),
        }
    }

    fn note(mut self, line: String) -> Self {
        self.notes.push(line);
        self
    }
}

fn pattern(circuit: &Circuit, text: &str) -> ModePattern {
    DetectionPattern::parse(text)
        .unwrap()
        .resolve(circuit)
        .unwrap()
}

fn hom() -> Outcome {
    let u = bs_unitary(BeamSplitterCoeffs::balanced(), 0, 1, 2).unwrap();
    let out = evolve(&FockState::basis(2, &[(0, 1), (1, 1)]).unwrap(), &u).unwrap();
    let want = c(0.0, FRAC_1_SQRT_2);
    let err = [
        (out.amplitude_of(&[(0, 2)]) - want).norm(),
        (out.amplitude_of(&[(1, 2)]) - want).norm(),
        out.amplitude_of(&[(0, 1), (1, 1)]).norm(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    Outcome::new(err < 1e-12, format!("max amplitude error {err:.1e}"))
}

fn which_path_fringes() -> Outcome {
    let mut rng = rng(2);
    let mut err = 0.0f64;
    for _ in 0..50 {
        let tap = random_tap(&mut rng);
        let (pb, pc) = (random_phase(&mut rng), random_phase(&mut rng));
        let circ = fig1(&couplers(&[tap]));
        let out = run(
            &circ,
            &one_one(12).unwrap(),
            &phases(&[("phi_B", pb), ("phi_C", pc)]),
            &toggles(&[]),
        );
        let want = tap.transmission().norm_sqr().powi(2) * (pb - pc).cos().powi(2);
        err = err.max((pattern_probability(&out, &pattern(&circ, "D10:1,D11:1")) - want).abs());
    }
    let mut flat_dev = 0.0f64;
    for _ in 0..3 {
        let tap = random_tap(&mut rng);
        let circ = fig1(&couplers(&[tap]));
        let level = (tap.transmission() * tap.reflection()).norm_sqr() / 2.0;
        for swept in ["phi_B", "phi_C"] {
            let scan = run_scan(
                &circ,
                &toggles(&[]),
                &one_one(12).unwrap(),
                &DetectionPattern::parse("D6:1,D10:1").unwrap(),
                &Sweep::standard(swept).with_samples(256),
                &phases(&[
                    ("phi_B", random_phase(&mut rng)),
                    ("phi_C", random_phase(&mut rng)),
                ]),
            )
            .unwrap();
            flat_dev = flat_dev.max(scan.max_deviation_from(level));
        }
    }
    Outcome::new(
        err < 1e-10 && flat_dev < 1e-10,
        format!("P10-11 max error {err:.1e}; P6-10 max deviation from |T1R1|^2/2 {flat_dev:.1e}"),
    )
}

/// Fitted frequency of the fig1 `D10-D11` coincidence over `φ_B`.
fn coincidence_frequency() -> f64 {
    let circ = preset("fig1").unwrap();
    run_scan(
        &circ,
        &toggles(&[]),
        &one_one(12).unwrap(),
        &DetectionPattern::parse("D10:1,D11:1").unwrap(),
        &Sweep::standard("phi_B"),
        &phases(&[("phi_B", 0.0), ("phi_C", 0.0)]),
    )
    .unwrap()
    .fit
    .spatial_frequency
}

fn eraser_revival() -> Outcome {
    let circ = preset("fig1").unwrap();
    let eraser = FockState::from_sparse_terms(
        12,
        &[
            (&[(6, 1), (10, 1)], c(FRAC_1_SQRT_2, 0.0)),
            (&[(7, 1), (10, 1)], c(0.0, -FRAC_1_SQRT_2)),
        ],
    )
    .unwrap();
    // The revived fringe is cos²((φ_B − 2φ_C)/2); the common delay is held at 0.
    let scan = scan_many(
        &circ,
        &toggles(&[]),
        &one_one(12).unwrap(),
        &[Observable::Projection(eraser)],
        &Sweep::standard("phi_B"),
        &phases(&[("phi_B", 0.0), ("phi_C", 0.0)]),
    )
    .unwrap()
    .remove(0);
    let f_pair = coincidence_frequency();
    let closed = scan
        .samples
        .iter()
        .map(|(pb, p)| (p - 0.25 * (pb / 2.0).cos().powi(2)).abs())
        .fold(0.0, f64::max);
    let pass = scan.fit.visibility > 0.999 && scan.fit.spatial_frequency * 2.0 == f_pair;
    Outcome::new(
        pass,
        format!(
            "visibility {:.6}, frequency {} vs {} for P10-11",
            scan.fit.visibility, scan.fit.spatial_frequency, f_pair
        ),
    )
    .note(format!(
        "prefactor |T1R1|^2 = 0.25 (balanced): max deviation from 0.25 cos^2(phi_B/2) {closed:.1e}"
    ))
}

fn braced_fringes() -> Outcome {
    let mut rng = rng(4);
    let (mut e67, mut e610) = (0.0f64, 0.0f64);
    for _ in 0..50 {
        let tap = random_tap(&mut rng);
        let circ = fig2(&couplers(&[tap]));
        let (pb, pc, ps) = (
            random_phase(&mut rng),
            random_phase(&mut rng),
            random_phase(&mut rng),
        );
        let out = run(
            &circ,
            &one_one(12).unwrap(),
            &phases(&[("phi_B", pb), ("phi_C", pc), ("phi_S", ps)]),
            &toggles(&["BS2"]),
        );
        let (t, r) = (tap.transmission(), tap.reflection());
        let (db, ds) = (pb - pc, ps - pc);
        let want67 = r.norm_sqr().powi(2) * ds.cos().powi(2);
        let want610 = (t * r).norm_sqr() * ((db + ds) / 2.0).cos().powi(2);
        e67 = e67.max((pattern_probability(&out, &pattern(&circ, "D6:1,D7:1")) - want67).abs());
        e610 = e610.max((pattern_probability(&out, &pattern(&circ, "D6:1,D10:1")) - want610).abs());
    }
    let circ = preset("fig2").unwrap();
    let (pb, ps) = (random_phase(&mut rng), random_phase(&mut rng));
    let scan = run_scan(
        &circ,
        &toggles(&["BS2"]),
        &one_one(12).unwrap(),
        &DetectionPattern::parse("D6:1,D10:1").unwrap(),
        &Sweep::standard("phi_C"),
        &phases(&[("phi_B", pb), ("phi_S", ps), ("phi_C", 0.0)]),
    )
    .unwrap();
    let sweep_err = scan
        .samples
        .iter()
        .map(|(pc, p)| (p - 0.125 * (1.0 + (2.0 * pc - pb - ps).cos())).abs())
        .fold(0.0, f64::max);
    let pass = e67 < 1e-10
        && e610 < 1e-10
        && sweep_err < 1e-10
        && scan.fit.spatial_frequency == 2.0
        && scan.fit.visibility > 0.999;
    Outcome::new(
        pass,
        format!(
            "P6-7 err {e67:.1e}, P6-10 err {e610:.1e}; phi_C sweep f = {}, err vs 1+cos(2phi_C-phi_B-phi_S) {sweep_err:.1e}",
            scan.fit.spatial_frequency
        ),
    )
}

fn output_goldens() -> Outcome {
    let mut rng = rng(5);
    let mut printed: Vec<(String, f64)> = Vec::new();
    let mut consistent = 0.0f64;
    let mut uncovered = 0.0f64;
    let bump = |list: &mut Vec<(String, f64)>, name: String, err: f64| match list
        .iter_mut()
        .find(|(n, _)| *n == name)
    {
        Some(e) => e.1 = e.1.max(err),
        None => list.push((name, err)),
    };
    for _ in 0..20 {
        let tap = random_tap(&mut rng);
        let (t, r) = (tap.transmission(), tap.reflection());
        let (pb, pc, ps) = (
            random_phase(&mut rng),
            random_phase(&mut rng),
            random_phase(&mut rng),
        );
        let ph = phases(&[("phi_B", pb), ("phi_C", pc), ("phi_S", ps)]);

        let out = run(
            &fig1(&couplers(&[tap])),
            &one_one(12).unwrap(),
            &ph,
            &toggles(&[]),
        );
        for (fam, err) in family_errors(&out, &which_path_printed(t, r, pc, pb)) {
            bump(&mut printed, format!("which-path {fam}"), err);
        }
        let fixed = which_path_consistent(t, r, pc, pb);
        for (_, err) in family_errors(&out, &fixed) {
            consistent = consistent.max(err);
        }
        uncovered = uncovered.max(uncovered_weight(&out, &fixed));

        let out = run(
            &fig2(&couplers(&[tap])),
            &one_one(12).unwrap(),
            &ph,
            &toggles(&["BS2"]),
        );
        for (fam, err) in family_errors(&out, &braced_printed(t, r, pc, pb, ps)) {
            bump(&mut printed, format!("braced {fam}"), err);
        }
        let fixed = braced_consistent(t, r, pc, pb, ps);
        for (_, err) in family_errors(&out, &fixed) {
            consistent = consistent.max(err);
        }
        uncovered = uncovered.max(uncovered_weight(&out, &fixed));
    }
    let failing: Vec<&str> = printed
        .iter()
        .filter(|(_, e)| *e >= 1e-10)
        .map(|(n, _)| n.as_str())
        .collect();
    let mut outcome = Outcome::new(
        failing.is_empty(),
        format!(
            "{}/{} printed coefficient families match; mismatched: {}",
            printed.len() - failing.len(),
            printed.len(),
            if failing.is_empty() {
                "none".to_string()
            } else {
                failing.join(", ")
            }
        ),
    );
    for (name, err) in &printed {
        outcome = outcome.note(format!("{name}: max error {err:.1e}"));
    }
    outcome.note(format!(
        "families re-derived from the single-photon maps (D7 terms e^(2i phi_C), cross terms -e^(i phi_C)): max error {consistent:.1e}, weight outside families {uncovered:.1e}"
    ))
}

fn global_phase_distance(a: &FockState, b: &FockState) -> f64 {
    1.0 - inner_product(a, b).unwrap().norm()
}

fn engineered_states() -> Outcome {
    let circ2 = preset("fig2").unwrap();
    let circ3 = preset("fig3").unwrap();
    let bs1_12 = bs_unitary(BeamSplitterCoeffs::balanced(), 0, 1, 12).unwrap();
    let bs1_16 = bs_unitary(BeamSplitterCoeffs::balanced(), 0, 1, 16).unwrap();
    let h = 0.5;
    let two_up_printed = FockState::from_sparse_terms(
        12,
        &[
            (&[(0, 2)], c(h, 0.0)),
            (&[(1, 2)], c(-h, 0.0)),
            (&[(0, 1), (1, 1)], c(0.0, -SQRT_2 * h)),
        ],
    )
    .unwrap();
    let k = c(0.25, 0.25);
    let s3 = 3f64.sqrt();
    let noon_printed = FockState::from_sparse_terms(
        16,
        &[
            (&[(0, 3)], k),
            (&[(1, 3)], k),
            (&[(0, 2), (1, 1)], -k * s3),
            (&[(0, 1), (1, 2)], -k * s3),
        ],
    )
    .unwrap();
    let two_up = engineered_fock(&circ2, 2, 0).unwrap();
    let noon = engineered_noon(&circ3, 3).unwrap();
    let round = [
        global_phase_distance(&two_up, &two_up_printed),
        global_phase_distance(
            &evolve(&two_up, &bs1_12).unwrap(),
            &FockState::basis(12, &[(0, 2)]).unwrap(),
        ),
        global_phase_distance(&noon, &noon_printed),
        global_phase_distance(
            &evolve(&noon, &bs1_16).unwrap(),
            &noon_target(16, 3, 0, 1).unwrap(),
        ),
    ]
    .into_iter()
    .fold(0.0, f64::max);

    // every two-photon pattern, every delay, random taps
    let mut rng = rng(6);
    let mut vis = 0.0f64;
    for _ in 0..3 {
        let circ = fig2(&couplers(&[random_tap(&mut rng)]));
        let input = engineered_fock(&circ, 2, 0).unwrap();
        let det = circ.detector_modes();
        let observables: Vec<Observable> = distributions(&det, 2)
            .into_iter()
            .map(|required| {
                Observable::Pattern(ModePattern {
                    required,
                    exclusive: true,
                    detector_modes: det.clone(),
                })
            })
            .collect();
        let fixed = phases(&[
            ("phi_B", random_phase(&mut rng)),
            ("phi_C", random_phase(&mut rng)),
            ("phi_S", random_phase(&mut rng)),
        ]);
        for swept in ["phi_B", "phi_C", "phi_S"] {
            for scan in scan_many(
                &circ,
                &toggles(&["BS2"]),
                &input,
                &observables,
                &Sweep::standard(swept),
                &fixed,
            )
            .unwrap()
            {
                vis = vis.max(sample_visibility(&scan.samples));
            }
        }
    }
    Outcome::new(
        round < 1e-12 && vis < 1e-6,
        format!("round trips within {round:.1e} of unit overlap; max visibility over all scans {vis:.1e}"),
    )
}

fn triple_coincidence() -> Outcome {
    let mut rng = rng(7);
    let mut err = 0.0f64;
    for _ in 0..50 {
        let (inner, outer) = (random_tap(&mut rng), random_tap(&mut rng));
        let circ = fig3(&couplers(&[inner, outer]));
        let ph = phases(&[
            ("phi_C", random_phase(&mut rng)),
            ("phi_B", random_phase(&mut rng)),
            ("phi_S", random_phase(&mut rng)),
            ("phi_Sp", random_phase(&mut rng)),
        ]);
        let p = run_triple(&circ, &toggles(&["BS2", "BS2p"]), &ph).unwrap();
        err = err.max((p - triple_closed_form(inner, outer, &ph).unwrap()).abs());
    }
    // outer eraser removed: every pattern with an outer tap click, every delay
    let circ = fig3(&couplers(&[random_tap(&mut rng), random_tap(&mut rng)]));
    let input = engineered_noon(&circ, 3).unwrap();
    let det = circ.detector_modes();
    let outer: Vec<usize> = ["D6p", "D7p"]
        .iter()
        .map(|d| circ.detector_mode(d).unwrap())
        .collect();
    let observables: Vec<Observable> = distributions(&det, 3)
        .into_iter()
        .filter(|d| d.iter().any(|(m, _)| outer.contains(m)))
        .map(|required| {
            Observable::Pattern(ModePattern {
                required,
                exclusive: true,
                detector_modes: det.clone(),
            })
        })
        .collect();
    let fixed = phases(&[
        ("phi_C", 0.4),
        ("phi_B", 1.3),
        ("phi_S", 2.2),
        ("phi_Sp", 0.9),
    ]);
    let mut vis = 0.0f64;
    for swept in ["phi_C", "phi_B", "phi_S", "phi_Sp"] {
        for scan in scan_many(
            &circ,
            &toggles(&["BS2"]),
            &input,
            &observables,
            &Sweep::standard(swept),
            &fixed,
        )
        .unwrap()
        {
            vis = vis.max(sample_visibility(&scan.samples));
        }
    }
    Outcome::new(
        err < 1e-10 && vis < FLAT_VISIBILITY,
        format!(
            "P6'-6-10 max error {err:.1e}; without BS2': max visibility {vis:.1e} over {} patterns x 4 delays",
            observables.len()
        ),
    )
}

fn occ(counts: &[usize]) -> OccupationVector {
    OccupationVector::from_counts(counts).unwrap()
}

/// The printed five-term diagonal mixture over modes 10, 11.
fn printed_reduced(t: Complex64, r: Complex64, db: f64) -> DensityMatrix {
    let t4 = t.norm_sqr().powi(2);
    let diag = [
        ([2, 0], t4 * db.sin().powi(2) / 2.0),
        ([0, 2], t4 * db.sin().powi(2) / 2.0),
        ([1, 1], t4 * db.cos().powi(2)),
        ([0, 0], r.norm_sqr().powi(2)),
        ([1, 0], (t * r).norm_sqr()),
        ([0, 1], (t * r).norm_sqr()),
    ];
    DensityMatrix::from_entries(
        vec![10, 11],
        diag.iter().map(|(k, w)| ((occ(k), occ(k)), c(*w, 0.0))),
    )
    .unwrap()
}

fn density_matrices() -> Outcome {
    let mut rng = rng(8);
    let traced: Vec<usize> = (0..10).collect();
    let (mut entrywise, mut diagonal, mut setup, mut coincidence, mut single_rate) =
        (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..20 {
        let tap = random_tap(&mut rng);
        let (t, r) = (tap.transmission(), tap.reflection());
        let (pb, pc, ps) = (
            random_phase(&mut rng),
            random_phase(&mut rng),
            random_phase(&mut rng),
        );
        let ph = phases(&[("phi_B", pb), ("phi_C", pc), ("phi_S", ps)]);
        let c1 = fig1(&couplers(&[tap]));
        let rho1 = partial_trace(
            &density_from_pure(&run(&c1, &one_one(12).unwrap(), &ph, &toggles(&[]))),
            &traced,
        )
        .unwrap();
        let c2 = fig2(&couplers(&[tap]));
        let rho2 = partial_trace(
            &density_from_pure(&run(&c2, &one_one(12).unwrap(), &ph, &toggles(&["BS2"]))),
            &traced,
        )
        .unwrap();

        let printed = printed_reduced(t, r, pb - pc);
        entrywise = entrywise.max(rho1.max_difference(&printed).unwrap());
        for ((a, b), v) in printed.iter() {
            diagonal = diagonal.max((rho1.entry(a, b) - v).norm());
        }
        setup = setup.max(rho1.max_difference(&rho2).unwrap());
        let p1011 = coincidence_from_density(&rho1, &pattern(&c1, "D10:1,D11:1")).unwrap();
        coincidence =
            coincidence.max((p1011 - t.norm_sqr().powi(2) * (pb - pc).cos().powi(2)).abs());
        let p10 = mean_photon_number(&rho1, 10).unwrap();
        single_rate = single_rate.max((p10 - t.norm_sqr().powi(2) - (t * r).norm_sqr()).abs());
    }
    let pass = entrywise < 1e-10 && setup < 1e-10 && coincidence < 1e-10 && single_rate < 1e-10;
    Outcome::new(
        pass,
        format!(
            "entrywise vs printed mixture {entrywise:.1e}; fig2 vs fig1 {setup:.1e}; coincidence {coincidence:.1e}; single rate {single_rate:.1e}"
        ),
    )
    .note(format!(
        "diagonal of the reduced matrix matches the printed weights within {diagonal:.1e}; the residual is the coherence between |2,0>, |0,2>, |1,1> (photons that both reached D10/D11 stay in a pure superposition)"
    ))
}

fn random_circuit(rng: &mut impl Rng, m: usize) -> Circuit {
    let mut elements = Vec::new();
    for i in 0..12 {
        let a = rng.gen_range(0..m);
        let b = (a + rng.gen_range(1..m)) % m;
        elements.push(CircuitElement::beam_splitter(
            &format!("bs{i}"),
            a,
            b,
            random_tap(rng),
        ));
        elements.push(CircuitElement::phase(
            &format!("ph{i}"),
            rng.gen_range(0..m),
            &format!("p{i}"),
        ));
    }
    Circuit::new(m, elements, vec![], BTreeSet::new()).unwrap()
}

fn oracle_equivalence() -> Outcome {
    let mut rng = rng(9);
    let (mut err, mut checked) = (0.0f64, 0usize);
    for _ in 0..100 {
        let m = rng.gen_range(2..=6);
        let n = rng.gen_range(1..=4);
        let circ = random_circuit(&mut rng, m);
        let ph = (0..12).fold(mzsim_core::PhaseAssignment::new(), |p, i| {
            p.with(&format!("p{i}"), rng.gen_range(0.0..2.0 * PI))
        });
        let u = circ.compile(&ph, &BTreeSet::new()).unwrap();
        let mut counts = vec![0usize; m];
        for _ in 0..n {
            counts[rng.gen_range(0..m)] += 1;
        }
        let n_in = occ(&counts);
        let out = evolve(
            &FockState::from_amplitudes(m, [(n_in.clone(), c(1.0, 0.0))]).unwrap(),
            &u,
        )
        .unwrap();
        let modes: Vec<usize> = (0..m).collect();
        for d in distributions(&modes, n) {
            let n_out = OccupationVector::from_sparse(m, &d).unwrap();
            let oracle = amplitude_oracle(&n_out, &u, &n_in).unwrap();
            err = err.max((oracle - out.amplitude(&n_out)).norm());
            checked += 1;
        }
    }
    Outcome::new(
        err < 1e-9,
        format!("{checked} transitions, max difference {err:.1e}"),
    )
}

fn table1() -> Outcome {
    let mut total = 0;
    let mut wrong = Vec::new();
    for n in 3..=5 {
        for row in classify_table1(n).unwrap() {
            total += 1;
            if !row.agrees() {
                wrong.push(format!("N={n} {} {}", row.configuration, row.pattern));
            }
        }
    }
    Outcome::new(
        wrong.is_empty(),
        format!(
            "{} misclassifications over {total} rows (N = 3, 4, 5){}",
            wrong.len(),
            if wrong.is_empty() {
                String::new()
            } else {
                format!(": {}", wrong.join("; "))
            }
        ),
    )
}

fn conservation() -> Outcome {
    let mut rng = rng(11);
    let mut scenarios: Vec<(String, Circuit, FockState)> = Vec::new();
    let c1 = fig1(&couplers(&[random_tap(&mut rng)]));
    scenarios.push(("fig1 one-one".into(), c1.clone(), one_one(12).unwrap()));
    let c2 = fig2(&couplers(&[random_tap(&mut rng)]));
    scenarios.push(("fig2 one-one".into(), c2.clone(), one_one(12).unwrap()));
    scenarios.push((
        "fig2 engineered |2,0>".into(),
        c2.clone(),
        engineered_fock(&c2, 2, 0).unwrap(),
    ));
    let c3 = fig3(&couplers(&[random_tap(&mut rng), random_tap(&mut rng)]));
    scenarios.push((
        "fig3 NOON-3".into(),
        c3.clone(),
        engineered_noon(&c3, 3).unwrap(),
    ));
    for n in 4..=5 {
        let taps: Vec<BeamSplitterCoeffs> = (0..n - 1).map(|_| random_tap(&mut rng)).collect();
        let circ = mzsim_core::circuit::braced_n(n, &Couplers::with_taps(taps)).unwrap();
        let input = engineered_noon(&circ, n).unwrap();
        scenarios.push((format!("braced_n({n}) NOON-{n}"), circ, input));
    }
    let mut err = 0.0f64;
    let mut runs = 0;
    for (_, circ, input) in &scenarios {
        let n = input.photon_number().unwrap();
        let det = circ.detector_modes();
        let patterns: Vec<ModePattern> = distributions(&det, n)
            .into_iter()
            .map(|required| ModePattern {
                required,
                exclusive: true,
                detector_modes: det.clone(),
            })
            .collect();
        for on in toggle_subsets(circ) {
            for _ in 0..20 {
                let ph = circ
                    .parameters()
                    .iter()
                    .fold(mzsim_core::PhaseAssignment::new(), |p, name| {
                        p.with(name, random_phase(&mut rng))
                    });
                let out = run(circ, input, &ph, &on);
                let total: f64 = patterns.iter().map(|p| pattern_probability(&out, p)).sum();
                err = err.max((total - 1.0).abs());
                runs += 1;
            }
        }
    }
    Outcome::new(
        err < 1e-10,
        format!(
            "{} scenarios, {runs} runs over all toggle subsets, max |sum - 1| {err:.1e}",
            scenarios.len()
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("HOM antibunching", hom),
        ("which-path fringes", which_path_fringes),
        ("eraser revival", eraser_revival),
        ("braced interferometer", braced_fringes),
        ("output-state goldens", output_goldens),
        ("engineered states", engineered_states),
        ("triple coincidence", triple_coincidence),
        ("reduced density matrices", density_matrices),
        ("oracle equivalence", oracle_equivalence),
        ("classification table", table1),
        ("probability conservation", conservation),
    ];
    let start = Instant::now();
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let id = i + 1;
        let t = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|_| Outcome::new(false, "panicked".into()));
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {id:>2} {verdict} {name}: {} [{:.2}s]",
            outcome.detail,
            t.elapsed().as_secs_f64()
        );
        for note in &outcome.notes {
            println!("             - {note}");
        }
        if !outcome.pass {
            failed.push(id);
        }
    }
    println!(
        "acceptance: {}/{} criteria passed in {:.1}s{}",
        criteria.len() - failed.len(),
        criteria.len(),
        start.elapsed().as_secs_f64(),
        if failed.is_empty() {
            String::new()
        } else {
            format!(" (failed: {failed:?})")
        }
    );
    if !failed.is_empty() {
        std::process::exit(1);
    }
}
