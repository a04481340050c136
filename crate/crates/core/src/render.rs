//! Text form of a circuit, e.g. `R1y(θ=1.570796)J12(θ=4.712389)`.
//!
//! Gates appear in application order. Angles are printed with six decimals.
//! Pair labels are written `J{i}{j}` while both wires are single digits and
//! `J{i}_{j}` otherwise so the text stays unambiguous.

use std::fmt::Write;

use crate::circuit::Gate;
use crate::error::{Result, SynthError};
use crate::gates::{Axis, WirePair};

pub fn render_gate(gate: &Gate) -> String {
    match gate {
        Gate::Rotation { wire, axis, theta } => {
            format!("R{wire}{}(θ={theta:.6})", axis.letter().to_ascii_lowercase())
        }
        Gate::Interaction { pair, theta } => {
            let (i, j) = (pair.first(), pair.second());
            if i < 10 && j < 10 {
                format!("J{i}{j}(θ={theta:.6})")
            } else {
                format!("J{i}_{j}(θ={theta:.6})")
            }
        }
    }
}

pub fn render_circuit(gates: &[Gate]) -> String {
    let mut out = String::new();
    for g in gates {
        let _ = write!(out, "{}", render_gate(g));
    }
    out
}

/// Parse the output of [`render_circuit`] for a register of `wires` wires.
pub fn parse_circuit(text: &str, wires: usize) -> Result<Vec<Gate>> {
    let mut gates = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let open = rest
            .find("(θ=")
            .ok_or_else(|| SynthError::config(format!("expected `(θ=` in `{rest}`")))?;
        let close = rest[open..]
            .find(')')
            .map(|c| open + c)
            .ok_or_else(|| SynthError::config(format!("unterminated angle in `{rest}`")))?;
        let label = &rest[..open];
        let angle = &rest[open + "(θ=".len()..close];
        let theta: f64 = angle
            .parse()
            .map_err(|_| SynthError::config(format!("bad angle `{angle}`")))?;
        let gate = parse_label(label, theta, wires)?;
        gate.validate(wires)?;
        gates.push(gate);
        rest = rest[close + 1..].trim_start();
    }
    Ok(gates)
}

fn parse_label(label: &str, theta: f64, wires: usize) -> Result<Gate> {
    let bad = || SynthError::config(format!("unrecognised gate label `{label}`"));
    if let Some(body) = label.strip_prefix('R') {
        let axis_char = body.chars().last().ok_or_else(bad)?;
        let wire: usize = body[..body.len() - axis_char.len_utf8()].parse().map_err(|_| bad())?;
        let axis: Axis = axis_char.to_string().parse().map_err(|_| bad())?;
        Ok(Gate::Rotation { wire, axis, theta })
    } else if let Some(body) = label.strip_prefix('J') {
        let (i, j) = match body.split_once('_') {
            Some((a, b)) => (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?),
            None if body.len() == 2 && body.is_ascii() => (
                body[..1].parse().map_err(|_| bad())?,
                body[1..].parse().map_err(|_| bad())?,
            ),
            None => return Err(bad()),
        };
        Ok(Gate::Interaction { pair: WirePair::new(i, j, wires)?, theta })
    } else {
        Err(bad())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn pair(i: usize, j: usize, n: usize) -> WirePair {
        WirePair::new(i, j, n).unwrap()
    }

    #[test]
    fn renders_known_circuit() {
        let gates = vec![
            Gate::Rotation { wire: 1, axis: Axis::Y, theta: FRAC_PI_2 },
            Gate::Interaction { pair: pair(1, 2, 2), theta: 3.0 * FRAC_PI_2 },
            Gate::Rotation { wire: 1, axis: Axis::X, theta: 3.0 * FRAC_PI_2 },
        ];
        assert_eq!(render_circuit(&gates), "R1y(θ=1.570796)J12(θ=4.712389)R1x(θ=4.712389)");
    }

    #[test]
    fn empty_and_single() {
        assert_eq!(render_circuit(&[]), "");
        assert!(parse_circuit("", 3).unwrap().is_empty());
        let g = [Gate::Rotation { wire: 2, axis: Axis::Z, theta: PI }];
        assert_eq!(render_circuit(&g), "R2z(θ=3.141593)");
    }

    #[test]
    fn wide_registers_use_separator() {
        let g = [Gate::Interaction { pair: pair(3, 11, 12), theta: 0.5 }];
        let text = render_circuit(&g);
        assert_eq!(text, "J3_11(θ=0.500000)");
        assert_eq!(parse_circuit(&text, 12).unwrap(), g);
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["R1q(θ=1.0)", "X1(θ=0)", "R1x(θ=abc)", "R1x(θ=1.0", "R9x(θ=1.0)", "J21(θ=1.0)"] {
            assert!(parse_circuit(bad, 3).is_err(), "{bad}");
        }
    }

    fn gate_strategy(wires: usize) -> impl Strategy<Value = Gate> {
        let rot = (1..=wires, 0..3usize, 0u64..6_283_185).prop_map(|(w, a, k)| Gate::Rotation {
            wire: w,
            axis: Axis::ALL[a],
            theta: k as f64 / 1e6,
        });
        let int = (1..wires, 0u64..6_283_185, 0..wires).prop_map(move |(i, k, d)| {
            let j = (i + 1 + d % (wires - i)).min(wires);
            Gate::Interaction { pair: WirePair::new(i, j, wires).unwrap(), theta: k as f64 / 1e6 }
        });
        prop_oneof![rot, int]
    }

    proptest! {
        #[test]
        fn round_trip(gates in proptest::collection::vec(gate_strategy(4), 0..8)) {
            let parsed = parse_circuit(&render_circuit(&gates), 4).unwrap();
            prop_assert_eq!(parsed, gates);
        }
    }
}
