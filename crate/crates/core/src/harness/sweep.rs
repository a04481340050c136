//! Evaluate a fixed circuit against CNOT under every matrix convention.
//!
//! Three choices change what a gate list means as a matrix: the product
//! order, which wire is the most significant bit, and the sign in the
//! interaction exponent. Together with the choice of control wire this gives
//! 16 readings of one circuit. The sweep reports all of them and names the
//! best, without changing the library defaults.

use std::f64::consts::FRAC_PI_2;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::circuit::{Gate, GateSet, ProductOrder};
use crate::error::Result;
use crate::fitness::{cnot_between, fitness_value};
use crate::gates::{Axis, WireOrder, WirePair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConventionChoice {
    pub product_order: ProductOrder,
    pub wire_order: WireOrder,
    /// +1 for `exp(-iθ/2·ZZ)`, -1 for `exp(+iθ/2·ZZ)`.
    pub j_sign: i8,
}

impl ConventionChoice {
    pub fn all() -> Vec<ConventionChoice> {
        let mut out = Vec::with_capacity(8);
        for product_order in [ProductOrder::FirstAppliedRightmost, ProductOrder::FirstAppliedLeftmost] {
            for wire_order in [WireOrder::Wire1MostSignificant, WireOrder::Wire1LeastSignificant] {
                for j_sign in [1, -1] {
                    out.push(ConventionChoice { product_order, wire_order, j_sign });
                }
            }
        }
        out
    }

    pub fn is_default(&self) -> bool {
        *self == ConventionChoice::default()
    }

    pub fn gate_set(&self, wires: usize) -> Result<GateSet> {
        GateSet::with_conventions(wires, self.wire_order, f64::from(self.j_sign), self.product_order)
    }
}

impl Default for ConventionChoice {
    fn default() -> Self {
        ConventionChoice {
            product_order: ProductOrder::default(),
            wire_order: WireOrder::default(),
            j_sign: 1,
        }
    }
}

impl fmt::Display for ConventionChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let product = match self.product_order {
            ProductOrder::FirstAppliedRightmost => "first-rightmost",
            ProductOrder::FirstAppliedLeftmost => "first-leftmost",
        };
        let wires = match self.wire_order {
            WireOrder::Wire1MostSignificant => "wire1-msb",
            WireOrder::Wire1LeastSignificant => "wire1-lsb",
        };
        let sign = if self.j_sign > 0 { "exp(-i)" } else { "exp(+i)" };
        write!(f, "{product:<16} {wires:<10} {sign}")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepRow {
    pub convention: ConventionChoice,
    pub control: usize,
    pub target: usize,
    pub fitness: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepTable {
    pub circuit: String,
    pub rows: Vec<SweepRow>,
    /// Index of the best row (first one on ties).
    pub best: usize,
    /// Fitness under the library defaults with control on wire 1.
    pub default_fitness: f64,
}

impl SweepTable {
    pub fn best_row(&self) -> &SweepRow {
        &self.rows[self.best]
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("circuit: {}\n", self.circuit);
        out.push_str("product          wires      J sign   control->target  fitness\n");
        for (k, r) in self.rows.iter().enumerate() {
            let mark = if k == self.best { "  <- best" } else { "" };
            out.push_str(&format!(
                "{}  {} -> {}           {:.6}{mark}\n",
                r.convention, r.control, r.target, r.fitness
            ));
        }
        let b = self.best_row();
        out.push_str(&format!(
            "best: {:.6} with {} control {}; default convention gives {:.6}\n",
            b.fitness, b.convention, b.control, self.default_fitness
        ));
        out
    }
}

/// A reference three-gate CNOT circuit with fixed angles.
pub fn reference_cnot_circuit() -> Vec<Gate> {
    let pair = WirePair::new(1, 2, 2).expect("valid pair");
    vec![
        Gate::Rotation { wire: 1, axis: Axis::Y, theta: FRAC_PI_2 },
        Gate::Interaction { pair, theta: 3.0 * FRAC_PI_2 },
        Gate::Rotation { wire: 1, axis: Axis::X, theta: 3.0 * FRAC_PI_2 },
    ]
}

/// Score a two-wire gate list against CNOT for all 16 combinations.
pub fn convention_sweep(gates: &[Gate]) -> Result<SweepTable> {
    let mut rows = Vec::with_capacity(16);
    for convention in ConventionChoice::all() {
        let set = convention.gate_set(2)?;
        let s = set.circuit_unitary(gates)?;
        for (control, target) in [(1, 2), (2, 1)] {
            let t = cnot_between(control, target, 2, convention.wire_order);
            rows.push(SweepRow {
                convention,
                control,
                target,
                fitness: fitness_value(&s, &t)?,
            });
        }
    }
    let mut best = 0;
    for (k, r) in rows.iter().enumerate() {
        if r.fitness > rows[best].fitness {
            best = k;
        }
    }
    let default_fitness = rows
        .iter()
        .find(|r| r.convention.is_default() && r.control == 1)
        .map(|r| r.fitness)
        .expect("defaults are part of the sweep");
    Ok(SweepTable {
        circuit: crate::render::render_circuit(gates),
        rows,
        best,
        default_fitness,
    })
}
