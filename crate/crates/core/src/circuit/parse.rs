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

//! The `.mzc` line format.
//!
//! ```text
//! # comment
//! modes <M>
//! bs <name> <mode_a> <mode_b> T=<complex> R=<complex> [toggle]
//! phase <name> <mode> <param_name>
//! swap <name> <mode_a> <mode_b>
//! detect <name> <mode>
//! ```
//!
//! Complex literals look like `0.5`, `0.5i`, `-i`, `0.6+0.8i` or `1e-3-2i`.

use std::collections::{BTreeSet, HashMap};

use num_complex::Complex64;

use super::{Circuit, CircuitElement};
use crate::error::{Error, Result};
use crate::optics::{BeamSplitterCoeffs, COEFF_TOLERANCE};

/// Literal coefficients are accepted this far from the splitter constraints
/// and then projected back onto them.
const LITERAL_TOLERANCE: f64 = 1e-6;

pub fn parse_complex(text: &str) -> Option<Complex64> {
    let s = text.trim();
    if s.is_empty() {
        return None;
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse().ok().map(|re| Complex64::new(re, 0.0));
    };
    // split at the last sign that is not an exponent sign or the leading sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (body[..k].parse::<f64>().ok()?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().ok()?,
    };
    Some(Complex64::new(re, im))
}

/// Shortest round-trip rendering, e.g. `0.7071067811865476+0i`.
pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}i", z.re, sign, z.im.abs())
}

fn snap_coefficients(t: Complex64, r: Complex64) -> Option<BeamSplitterCoeffs> {
    if let Ok(c) = BeamSplitterCoeffs::new(t, r) {
        return Some(c);
    }
    let energy = t.norm_sqr() + r.norm_sqr();
    let cross = r * t.conj() + t * r.conj();
    if (energy - 1.0).abs() > LITERAL_TOLERANCE || cross.norm() > LITERAL_TOLERANCE {
        return None;
    }
    let scale = energy.sqrt();
    let (t, r) = (t / scale, r / scale);
    // rotate R onto the nearer of arg T ± π/2
    let snapped = if t.norm() < COEFF_TOLERANCE || r.norm() < COEFF_TOLERANCE {
        r
    } else {
        let quarter = Complex64::new(0.0, 1.0) * t / t.norm();
        let dir = if (r * quarter.conj()).re >= 0.0 {
            quarter
        } else {
            -quarter
        };
        dir * r.norm()
    };
    BeamSplitterCoeffs::new(t, snapped).ok()
}

fn parse_index(field: &str, line: usize, what: &str) -> Result<usize> {
    field
        .parse()
        .map_err(|_| Error::parse(line, format!("bad {what} `{field}`")))
}

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut mode_count: Option<usize> = None;
    let mut elements = Vec::new();
    let mut detectors = Vec::new();
    let mut toggles = BTreeSet::new();
    let mut names: HashMap<String, usize> = HashMap::new();
    let mut det_names: HashMap<String, usize> = HashMap::new();
    let mut det_modes: HashMap<usize, usize> = HashMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let directive = fields[0];

        if directive == "modes" {
            if mode_count.is_some() {
                return Err(Error::parse(line, "repeated `modes` directive"));
            }
            if fields.len() != 2 {
                return Err(Error::parse(line, "expected `modes <M>`"));
            }
            let m = parse_index(fields[1], line, "mode count")?;
            if m == 0 {
                return Err(Error::parse(line, "mode count must be positive"));
            }
            mode_count = Some(m);
            continue;
        }

        let m =
            mode_count.ok_or_else(|| Error::parse(line, "`modes` must come before any element"))?;
        let mode = |field: &str| -> Result<usize> {
            let k = parse_index(field, line, "mode index")?;
            if k >= m {
                return Err(Error::parse(
                    line,
                    format!("mode {k} out of range for {m} modes"),
                ));
            }
            Ok(k)
        };
        let mut claim_name = |name: &str| -> Result<()> {
            if let Some(prev) = names.insert(name.to_string(), line) {
                return Err(Error::parse(
                    line,
                    format!("element `{name}` already defined on line {prev}"),
                ));
            }
            Ok(())
        };

        match directive {
            "bs" => {
                if !(6..=7).contains(&fields.len()) {
                    return Err(Error::parse(
                        line,
                        "expected `bs <name> <a> <b> T=<c> R=<c> [toggle]`",
                    ));
                }
                let name = fields[1];
                let (a, b) = (mode(fields[2])?, mode(fields[3])?);
                if a == b {
                    return Err(Error::parse(line, "beam splitter needs two distinct modes"));
                }
                let coeff = |field: &str, key: &str| -> Result<Complex64> {
                    let value = field.strip_prefix(key).ok_or_else(|| {
                        Error::parse(line, format!("expected `{key}<complex>`, got `{field}`"))
                    })?;
                    parse_complex(value)
                        .ok_or_else(|| Error::parse(line, format!("bad complex literal `{value}`")))
                };
                let t = coeff(fields[4], "T=")?;
                let r = coeff(fields[5], "R=")?;
                let coeffs = snap_coefficients(t, r).ok_or_else(|| {
                    Error::parse(line, "coefficients violate |T|²+|R|²=1 or RT*+TR*=0")
                })?;
                if fields.len() == 7 {
                    if fields[6] != "toggle" {
                        return Err(Error::parse(
                            line,
                            format!("unexpected field `{}`", fields[6]),
                        ));
                    }
                    toggles.insert(name.to_string());
                }
                claim_name(name)?;
                elements.push(CircuitElement::beam_splitter(name, a, b, coeffs));
            }
            "phase" => {
                if fields.len() != 4 {
                    return Err(Error::parse(line, "expected `phase <name> <mode> <param>`"));
                }
                let k = mode(fields[2])?;
                claim_name(fields[1])?;
                elements.push(CircuitElement::phase(fields[1], k, fields[3]));
            }
            "swap" => {
                if fields.len() != 4 {
                    return Err(Error::parse(line, "expected `swap <name> <a> <b>`"));
                }
                let (a, b) = (mode(fields[2])?, mode(fields[3])?);
                if a == b {
                    return Err(Error::parse(line, "swap needs two distinct modes"));
                }
                claim_name(fields[1])?;
                elements.push(CircuitElement::swap(fields[1], a, b));
            }
            "detect" => {
                if fields.len() != 3 {
                    return Err(Error::parse(line, "expected `detect <name> <mode>`"));
                }
                let name = fields[1];
                let k = mode(fields[2])?;
                if let Some(prev) = det_names.insert(name.to_string(), line) {
                    return Err(Error::parse(
                        line,
                        format!("detector `{name}` already defined on line {prev}"),
                    ));
                }
                if let Some(prev) = det_modes.insert(k, line) {
                    return Err(Error::parse(
                        line,
                        format!("mode {k} already has a detector (line {prev})"),
                    ));
                }
                detectors.push((name.to_string(), k));
            }
            other => return Err(Error::parse(line, format!("unknown directive `{other}`"))),
        }
    }

    let m = mode_count.ok_or_else(|| Error::parse(1, "missing `modes` directive"))?;
    Circuit::new(m, elements, detectors, toggles)
}
