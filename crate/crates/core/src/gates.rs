//! Ising-model primitive gates.
//!
//! Single-qubit rotations `R_x`, `R_y`, `R_z` and the diagonal two-qubit
//! interaction `J_ij(θ) = exp(-iθ/2 · Z_i Z_j)`. Interactions are never built
//! from dense products: each wire pair owns a precomputed ±1 template (the
//! spectrum of `Z_i Z_j` on the full register) and the gate is the termwise
//! exponential of `-iθ/2 · template`.
//!
//! Wire 1 is the most significant Kronecker factor unless a [`WireOrder`] says
//! otherwise.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SynthError};
use crate::linalg::{Complex, ComplexMatrix, ONE, ZERO};

/// Rotation axis selected by a qutrit measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    /// Qutrit basis index: |0⟩ → x, |1⟩ → y, |2⟩ → z.
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn from_index(idx: usize) -> Option<Axis> {
        Axis::ALL.get(idx).copied()
    }

    pub fn letter(self) -> char {
        match self {
            Axis::X => 'x',
            Axis::Y => 'y',
            Axis::Z => 'z',
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Axis {
    type Err = SynthError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" | "X" => Ok(Axis::X),
            "y" | "Y" => Ok(Axis::Y),
            "z" | "Z" => Ok(Axis::Z),
            other => Err(SynthError::config(format!("unknown axis `{other}`"))),
        }
    }
}

/// Ordered pair of 1-based wire indices, `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WirePair {
    i: usize,
    j: usize,
}

impl WirePair {
    pub fn new(i: usize, j: usize, wires: usize) -> Result<Self> {
        if i == 0 || i >= j || j > wires {
            return Err(SynthError::config(format!(
                "wire pair ({i},{j}) invalid for {wires} wires"
            )));
        }
        Ok(WirePair { i, j })
    }

    pub fn first(&self) -> usize {
        self.i
    }

    pub fn second(&self) -> usize {
        self.j
    }

    /// Position of this pair in lexicographic order (1,2),(1,3),…,(2,3),…
    pub fn template_index(&self, wires: usize) -> usize {
        // pairs starting with a < i contribute (wires - a) each
        let before: usize = (1..self.i).map(|a| wires - a).sum();
        before + (self.j - self.i - 1)
    }
}

/// How wire numbers map onto bits of a basis-state index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WireOrder {
    /// Wire 1 is the leftmost Kronecker factor (highest bit).
    #[default]
    Wire1MostSignificant,
    /// Wire 1 is the rightmost Kronecker factor (lowest bit).
    Wire1LeastSignificant,
}

impl WireOrder {
    /// Bit of `wire` (1-based) in basis index `k`.
    #[inline]
    pub fn bit(self, k: usize, wire: usize, wires: usize) -> usize {
        match self {
            WireOrder::Wire1MostSignificant => (k >> (wires - wire)) & 1,
            WireOrder::Wire1LeastSignificant => (k >> (wire - 1)) & 1,
        }
    }
}

/// ±1 diagonal of `Z_i Z_j` over the full register.
#[derive(Clone, Debug, PartialEq)]
pub struct InteractionTemplate {
    pair: WirePair,
    signs: Vec<i8>,
}

impl InteractionTemplate {
    pub fn new(pair: WirePair, wires: usize) -> Self {
        Self::with_order(pair, wires, WireOrder::default())
    }

    pub fn with_order(pair: WirePair, wires: usize, order: WireOrder) -> Self {
        let signs = (0..1usize << wires)
            .map(|k| {
                if order.bit(k, pair.i, wires) == order.bit(k, pair.j, wires) {
                    1
                } else {
                    -1
                }
            })
            .collect();
        InteractionTemplate { pair, signs }
    }

    pub fn pair(&self) -> WirePair {
        self.pair
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }
}

/// `Rx`, `Ry` or `Rz` at angle `theta`.
pub fn rotation_gate(axis: Axis, theta: f64) -> ComplexMatrix {
    let (s, c) = (theta / 2.0).sin_cos();
    let rows = match axis {
        Axis::X => [
            [Complex::new(c, 0.0), Complex::new(0.0, -s)],
            [Complex::new(0.0, -s), Complex::new(c, 0.0)],
        ],
        Axis::Y => [
            [Complex::new(c, 0.0), Complex::new(-s, 0.0)],
            [Complex::new(s, 0.0), Complex::new(c, 0.0)],
        ],
        Axis::Z => [
            [Complex::new(c, -s), ZERO],
            [ZERO, Complex::new(c, s)],
        ],
    };
    ComplexMatrix::from_row_major(rows.iter().flatten().copied().collect())
        .expect("2x2 is square")
}

/// All `C(wires, 2)` templates in lexicographic pair order.
pub fn enumerate_templates(wires: usize) -> Result<Vec<InteractionTemplate>> {
    enumerate_templates_ordered(wires, WireOrder::default())
}

pub fn enumerate_templates_ordered(
    wires: usize,
    order: WireOrder,
) -> Result<Vec<InteractionTemplate>> {
    if wires < 2 {
        return Err(SynthError::config(format!(
            "interaction templates need at least 2 wires, got {wires}"
        )));
    }
    let mut out = Vec::with_capacity(wires * (wires - 1) / 2);
    for i in 1..wires {
        for j in i + 1..=wires {
            out.push(InteractionTemplate::with_order(WirePair { i, j }, wires, order));
        }
    }
    Ok(out)
}

pub fn template_count(wires: usize) -> usize {
    wires * wires.saturating_sub(1) / 2
}

/// `J_ij(θ)`: diagonal entry `k` is `exp(-iθ·signs[k]/2)`.
pub fn interaction_gate(template: &InteractionTemplate, theta: f64) -> ComplexMatrix {
    interaction_gate_signed(template, theta, 1.0)
}

/// Same as [`interaction_gate`] with the exponent sign flipped when `sign < 0`.
pub fn interaction_gate_signed(template: &InteractionTemplate, theta: f64, sign: f64) -> ComplexMatrix {
    let plus = Complex::from_polar(1.0, -sign * theta / 2.0);
    let minus = plus.conj();
    let diag: Vec<Complex> = template
        .signs
        .iter()
        .map(|&s| if s > 0 { plus } else { minus })
        .collect();
    ComplexMatrix::diagonal(&diag)
}

/// Rotation on `wire` (1-based) padded with identities to the full register.
pub fn expand_rotation(axis: Axis, theta: f64, wire: usize, wires: usize) -> Result<ComplexMatrix> {
    expand_rotation_ordered(axis, theta, wire, wires, WireOrder::default())
}

pub fn expand_rotation_ordered(
    axis: Axis,
    theta: f64,
    wire: usize,
    wires: usize,
    order: WireOrder,
) -> Result<ComplexMatrix> {
    if wire == 0 || wire > wires {
        return Err(SynthError::config(format!(
            "wire {wire} out of range 1..={wires}"
        )));
    }
    let (left, right) = match order {
        WireOrder::Wire1MostSignificant => (wire - 1, wires - wire),
        WireOrder::Wire1LeastSignificant => (wires - wire, wire - 1),
    };
    let gate = rotation_gate(axis, theta);
    Ok(embed(&gate, 1 << left, 1 << right))
}

// I_left ⊗ gate ⊗ I_right, written directly rather than as two krons.
fn embed(gate: &ComplexMatrix, left: usize, right: usize) -> ComplexMatrix {
    let g = gate.dim();
    let dim = left * g * right;
    let mut out = ComplexMatrix::zeros(dim);
    for l in 0..left {
        for a in 0..g {
            for b in 0..g {
                let v = gate[(a, b)];
                if v == ZERO {
                    continue;
                }
                for r in 0..right {
                    let row = (l * g + a) * right + r;
                    let col = (l * g + b) * right + r;
                    out[(row, col)] = v;
                }
            }
        }
    }
    out
}

/// Pauli-Z as a dense matrix.
pub fn pauli_z() -> ComplexMatrix {
    ComplexMatrix::diagonal(&[ONE, -ONE])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::I;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    // Reference: exp(-iθ/2 · Z_i Z_j) via Kronecker products of Pauli-Z,
    // independent of the template code path.
    fn brute_force_interaction(i: usize, j: usize, wires: usize, theta: f64) -> ComplexMatrix {
        let mut zz = ComplexMatrix::identity(1);
        for w in 1..=wires {
            let factor = if w == i || w == j {
                pauli_z()
            } else {
                ComplexMatrix::identity(2)
            };
            zz = zz.kron(&factor);
        }
        let diag: Vec<Complex> = (0..zz.dim())
            .map(|k| (-I * theta / 2.0 * zz[(k, k)]).exp())
            .collect();
        ComplexMatrix::diagonal(&diag)
    }

    #[test]
    fn rotation_examples() {
        assert!(rotation_gate(Axis::X, 0.0).max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);

        let theta = 1.234;
        let rz = rotation_gate(Axis::Z, theta);
        let expected = ComplexMatrix::diagonal(&[
            Complex::from_polar(1.0, -theta / 2.0),
            Complex::from_polar(1.0, theta / 2.0),
        ]);
        assert!(rz.max_abs_diff(&expected) < 1e-15);

        let h = std::f64::consts::FRAC_1_SQRT_2;
        let ry = rotation_gate(Axis::Y, PI / 2.0);
        let expected = ComplexMatrix::from_rows(&[
            vec![Complex::new(h, 0.0), Complex::new(-h, 0.0)],
            vec![Complex::new(h, 0.0), Complex::new(h, 0.0)],
        ])
        .unwrap();
        assert!(ry.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn rotations_match_exponential_form() {
        // cos(θ/2) I - i sin(θ/2) P
        let paulis = [
            ComplexMatrix::permutation(&[1, 0]),
            ComplexMatrix::from_rows(&[vec![ZERO, -I], vec![I, ZERO]]).unwrap(),
            pauli_z(),
        ];
        for (axis, p) in Axis::ALL.iter().zip(&paulis) {
            for &theta in &[0.3, 1.9, 4.0, 6.1] {
                let (s, c) = (theta / 2.0f64).sin_cos();
                let mut expected = ComplexMatrix::identity(2).scale(Complex::new(c, 0.0));
                let sp = p.scale(Complex::new(0.0, -s));
                for r in 0..2 {
                    for col in 0..2 {
                        expected[(r, col)] += sp[(r, col)];
                    }
                }
                assert!(rotation_gate(*axis, theta).max_abs_diff(&expected) < 1e-15);
            }
        }
    }

    #[test]
    fn full_turn_is_minus_identity() {
        let minus_i = ComplexMatrix::identity(2).scale(-ONE);
        for axis in Axis::ALL {
            assert!(rotation_gate(axis, 2.0 * PI).max_abs_diff(&minus_i) < 1e-12);
        }
    }

    #[test]
    fn template_counts_and_signs() {
        let two = enumerate_templates(2).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!(two[0].signs(), &[1, -1, -1, 1]);
        assert_eq!(enumerate_templates(3).unwrap().len(), 3);
        assert_eq!(enumerate_templates(4).unwrap().len(), 6);
        assert!(enumerate_templates(1).is_err());
        assert!(enumerate_templates(0).is_err());

        for n in 2..=6 {
            for t in enumerate_templates(n).unwrap() {
                let plus = t.signs().iter().filter(|&&s| s > 0).count();
                assert_eq!(plus * 2, t.signs().len());
            }
        }
    }

    #[test]
    fn template_order_is_lexicographic() {
        let pairs: Vec<(usize, usize)> = enumerate_templates(4)
            .unwrap()
            .iter()
            .map(|t| (t.pair().first(), t.pair().second()))
            .collect();
        assert_eq!(pairs, vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        for (idx, t) in enumerate_templates(5).unwrap().iter().enumerate() {
            assert_eq!(t.pair().template_index(5), idx);
        }
    }

    #[test]
    fn interaction_examples() {
        let t = &enumerate_templates(2).unwrap()[0];
        assert!(interaction_gate(t, 0.0).max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);

        let theta = 0.77;
        let e = Complex::from_polar(1.0, theta);
        let expected = ComplexMatrix::diagonal(&[ONE, e, e, ONE])
            .scale(Complex::from_polar(1.0, -theta / 2.0));
        assert!(interaction_gate(t, theta).max_abs_diff(&expected) < 1e-14);

        let t13 = InteractionTemplate::new(WirePair::new(1, 3, 3).unwrap(), 3);
        for &theta in &[0.1, 2.5, 5.9] {
            let diff = interaction_gate(&t13, theta)
                .max_abs_diff(&brute_force_interaction(1, 3, 3, theta));
            assert!(diff < 1e-10);
        }
    }

    #[test]
    fn template_path_matches_kronecker_path() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=4 {
            for t in enumerate_templates(n).unwrap() {
                for _ in 0..20 {
                    let theta = rng.random_range(0.0..2.0 * PI);
                    let fast = interaction_gate(&t, theta);
                    let slow = brute_force_interaction(t.pair().first(), t.pair().second(), n, theta);
                    assert!(fast.max_abs_diff(&slow) < 1e-10);
                }
            }
        }
    }

    #[test]
    fn interaction_composes_up_to_phase() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for t in enumerate_templates(3).unwrap() {
            let (a, b) = (rng.random_range(0.0..2.0 * PI), rng.random_range(0.0..2.0 * PI));
            let prod = interaction_gate(&t, a).matmul(&interaction_gate(&t, b)).unwrap();
            let direct = interaction_gate(&t, (a + b) % (2.0 * PI));
            let p0 = prod[(0, 0)];
            let d0 = direct[(0, 0)];
            for k in 0..8 {
                assert!((prod[(k, k)] / p0 - direct[(k, k)] / d0).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn expand_rotation_examples() {
        for wire in 1..=3 {
            let m = expand_rotation(Axis::X, 0.0, wire, 3).unwrap();
            assert!(m.max_abs_diff(&ComplexMatrix::identity(8)) < 1e-15);
        }
        let m = expand_rotation(Axis::Y, PI / 2.0, 1, 2).unwrap();
        let expected = rotation_gate(Axis::Y, PI / 2.0).kron(&ComplexMatrix::identity(2));
        assert!(m.max_abs_diff(&expected) < 1e-15);

        let m = expand_rotation(Axis::Z, 1.0, 2, 3).unwrap();
        let i2 = ComplexMatrix::identity(2);
        let expected = i2.kron(&rotation_gate(Axis::Z, 1.0)).kron(&i2);
        assert!(m.max_abs_diff(&expected) < 1e-15);

        let m = expand_rotation_ordered(Axis::X, 1.0, 1, 2, WireOrder::Wire1LeastSignificant).unwrap();
        let expected = i2.kron(&rotation_gate(Axis::X, 1.0));
        assert!(m.max_abs_diff(&expected) < 1e-15);

        assert!(expand_rotation(Axis::X, 0.0, 0, 3).is_err());
        assert!(expand_rotation(Axis::X, 0.0, 4, 3).is_err());
    }

    #[test]
    fn expanded_gates_are_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rng.random_range(1..=4);
            let wire = rng.random_range(1..=n);
            let axis = Axis::ALL[rng.random_range(0..3)];
            let theta = rng.random_range(0.0..2.0 * PI);
            assert!(expand_rotation(axis, theta, wire, n).unwrap().is_unitary(1e-9));
        }
        for n in 2..=4 {
            for t in enumerate_templates(n).unwrap() {
                assert!(interaction_gate(&t, rng.random_range(0.0..2.0 * PI)).is_unitary(1e-9));
            }
        }
    }

    #[test]
    fn wire_order_relabels_templates() {
        let msb = InteractionTemplate::with_order(WirePair::new(1, 2, 3).unwrap(), 3, WireOrder::Wire1MostSignificant);
        let lsb = InteractionTemplate::with_order(WirePair::new(2, 3, 3).unwrap(), 3, WireOrder::Wire1LeastSignificant);
        assert_eq!(msb.signs(), lsb.signs());
    }
}
