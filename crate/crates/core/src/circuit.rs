//! Decoded gates and circuit composition shared by both engines.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SynthError};
use crate::gates::{
    enumerate_templates_ordered, expand_rotation_ordered, interaction_gate_signed, Axis,
    InteractionTemplate, WireOrder, WirePair,
};
use crate::linalg::ComplexMatrix;

/// One segment: a single Ising gate on the full register.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Gate {
    Rotation { wire: usize, axis: Axis, theta: f64 },
    Interaction { pair: WirePair, theta: f64 },
}

impl Gate {
    pub fn theta(&self) -> f64 {
        match *self {
            Gate::Rotation { theta, .. } | Gate::Interaction { theta, .. } => theta,
        }
    }

    pub fn with_theta(self, theta: f64) -> Gate {
        match self {
            Gate::Rotation { wire, axis, .. } => Gate::Rotation { wire, axis, theta },
            Gate::Interaction { pair, .. } => Gate::Interaction { pair, theta },
        }
    }

    pub fn validate(&self, wires: usize) -> Result<()> {
        match *self {
            Gate::Rotation { wire, .. } if wire == 0 || wire > wires => Err(SynthError::config(
                format!("rotation wire {wire} out of range 1..={wires}"),
            )),
            Gate::Interaction { pair, .. } if pair.second() > wires => Err(SynthError::config(
                format!("interaction pair ({},{}) exceeds {wires} wires", pair.first(), pair.second()),
            )),
            _ => Ok(()),
        }
    }
}

/// Order in which segment matrices are multiplied.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProductOrder {
    /// `S = M_last · … · M_first`: the first segment acts on the state first.
    #[default]
    FirstAppliedRightmost,
    /// `S = M_first · … · M_last`.
    FirstAppliedLeftmost,
}

/// Gate-to-matrix context for a fixed register width.
///
/// Holds the interaction templates, expanded once, plus the conventions used
/// to build matrices. The defaults are wire 1 most significant,
/// `J = exp(-iθ/2·ZZ)`, and first segment rightmost.
#[derive(Clone, Debug)]
pub struct GateSet {
    wires: usize,
    templates: Vec<InteractionTemplate>,
    order: WireOrder,
    j_sign: f64,
    product: ProductOrder,
}

impl GateSet {
    pub fn new(wires: usize) -> Result<Self> {
        Self::with_conventions(wires, WireOrder::default(), 1.0, ProductOrder::default())
    }

    pub fn with_conventions(
        wires: usize,
        order: WireOrder,
        j_sign: f64,
        product: ProductOrder,
    ) -> Result<Self> {
        Ok(GateSet {
            wires,
            templates: enumerate_templates_ordered(wires, order)?,
            order,
            j_sign: if j_sign < 0.0 { -1.0 } else { 1.0 },
            product,
        })
    }

    pub fn wires(&self) -> usize {
        self.wires
    }

    pub fn dim(&self) -> usize {
        1 << self.wires
    }

    pub fn templates(&self) -> &[InteractionTemplate] {
        &self.templates
    }

    pub fn unitary(&self, gate: &Gate) -> Result<ComplexMatrix> {
        gate.validate(self.wires)?;
        match *gate {
            Gate::Rotation { wire, axis, theta } => {
                expand_rotation_ordered(axis, theta, wire, self.wires, self.order)
            }
            Gate::Interaction { pair, theta } => {
                let t = &self.templates[pair.template_index(self.wires)];
                Ok(interaction_gate_signed(t, theta, self.j_sign))
            }
        }
    }

    /// Compose segment matrices given in application order.
    pub fn compose<'a, I>(&self, segments: I) -> ComplexMatrix
    where
        I: IntoIterator<Item = &'a ComplexMatrix>,
    {
        let mut acc = ComplexMatrix::identity(self.dim());
        for m in segments {
            acc = match self.product {
                ProductOrder::FirstAppliedRightmost => m.matmul_unchecked(&acc),
                ProductOrder::FirstAppliedLeftmost => acc.matmul_unchecked(m),
            };
        }
        acc
    }

    pub fn circuit_unitary(&self, gates: &[Gate]) -> Result<ComplexMatrix> {
        let mats = gates
            .iter()
            .map(|g| self.unitary(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.compose(&mats))
    }
}
