//! Trace fidelity and target unitaries.
//!
//! `fitness(S, T) = 1 - sqrt((size - |tr(S† T)|) / size)` with
//! `size = 2^wires`. The modulus makes the score blind to global phase.
//!
//! For unitary `S` and `T`, `size - |tr(S† T)|` equals half the squared
//! Frobenius norm of `S - e^{-iφ} T` with `φ = arg tr(S† T)`. The residual
//! form is what gets evaluated: it agrees with the trace form to rounding
//! error everywhere but stays exact near fitness 1, where the subtraction
//! would otherwise leave a residue of order 1e-16 that the square root
//! inflates to 1e-8.

use std::fs;
use std::path::Path;

use crate::error::{Result, SynthError};
use crate::gates::WireOrder;
use crate::linalg::{Complex, ComplexMatrix, ONE};

/// Tolerance used when validating target matrices.
pub const TARGET_UNITARY_TOL: f64 = 1e-9;

pub fn fitness_value(s: &ComplexMatrix, t: &ComplexMatrix) -> Result<f64> {
    let overlap = s.inner_trace(t)?;
    let size = s.dim() as f64;
    let modulus = overlap.norm();
    let phase = if modulus > 0.0 { (overlap / modulus).conj() } else { ONE };
    let residual: f64 = s
        .as_slice()
        .iter()
        .zip(t.as_slice())
        .map(|(a, b)| (a - phase * b).norm_sqr())
        .sum();
    let radicand = (residual / (2.0 * size)).max(0.0);
    Ok((1.0 - radicand.sqrt()).clamp(0.0, 1.0))
}

/// A named unitary the engines try to reproduce.
#[derive(Clone, Debug)]
pub struct TargetSpec {
    pub name: String,
    pub wires: usize,
    pub matrix: ComplexMatrix,
}

impl TargetSpec {
    pub fn new(name: impl Into<String>, matrix: ComplexMatrix) -> Result<Self> {
        let dim = matrix.dim();
        if !dim.is_power_of_two() || dim < 2 {
            return Err(SynthError::config(format!(
                "target dimension {dim} is not a power of two"
            )));
        }
        let deviation = matrix.unitarity_deviation();
        if deviation >= TARGET_UNITARY_TOL {
            return Err(SynthError::NonUnitary {
                max_deviation: deviation,
            });
        }
        Ok(TargetSpec {
            name: name.into(),
            wires: dim.trailing_zeros() as usize,
            matrix,
        })
    }
}

/// Built-in reversible targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedTarget {
    Identity,
    Cnot,
    Toffoli,
    Peres,
    Cccnot,
}

impl NamedTarget {
    pub fn parse(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "i" | "identity" => Some(NamedTarget::Identity),
            "cnot" => Some(NamedTarget::Cnot),
            "toffoli" | "ccnot" => Some(NamedTarget::Toffoli),
            "peres" => Some(NamedTarget::Peres),
            "cccnot" => Some(NamedTarget::Cccnot),
            _ => None,
        }
    }

    pub fn canonical_name(self) -> &'static str {
        match self {
            NamedTarget::Identity => "identity",
            NamedTarget::Cnot => "CNOT",
            NamedTarget::Toffoli => "Toffoli",
            NamedTarget::Peres => "Peres",
            NamedTarget::Cccnot => "CCCNOT",
        }
    }

    /// Fixed register width, or `None` when any width works.
    pub fn natural_wires(self) -> Option<usize> {
        match self {
            NamedTarget::Identity => None,
            NamedTarget::Cnot => Some(2),
            NamedTarget::Toffoli | NamedTarget::Peres => Some(3),
            NamedTarget::Cccnot => Some(4),
        }
    }

    fn apply(self, bits: &mut [u8]) {
        match self {
            NamedTarget::Identity => {}
            NamedTarget::Cnot => bits[1] ^= bits[0],
            NamedTarget::Toffoli => bits[2] ^= bits[0] & bits[1],
            NamedTarget::Peres => {
                bits[2] ^= bits[0] & bits[1];
                bits[1] ^= bits[0];
            }
            NamedTarget::Cccnot => bits[3] ^= bits[0] & bits[1] & bits[2],
        }
    }
}

/// Target matrix for a built-in name under the default wire order.
pub fn target_matrix(name: &str, wires: usize) -> Result<TargetSpec> {
    target_matrix_ordered(name, wires, WireOrder::default())
}

pub fn target_matrix_ordered(name: &str, wires: usize, order: WireOrder) -> Result<TargetSpec> {
    let target = NamedTarget::parse(name)
        .ok_or_else(|| SynthError::config(format!("unknown target `{name}`")))?;
    if let Some(natural) = target.natural_wires() {
        if natural != wires {
            return Err(SynthError::config(format!(
                "{} acts on {natural} wires, but {wires} were configured",
                target.canonical_name()
            )));
        }
    }
    if wires == 0 {
        return Err(SynthError::config("target needs at least one wire"));
    }
    let matrix = reversible_permutation(wires, order, |bits| target.apply(bits));
    TargetSpec::new(target.canonical_name(), matrix)
}

/// CNOT with explicit control and target wires (1-based).
pub fn cnot_between(control: usize, target: usize, wires: usize, order: WireOrder) -> ComplexMatrix {
    reversible_permutation(wires, order, |bits| bits[target - 1] ^= bits[control - 1])
}

/// Permutation matrix of a classical reversible map on wire bits.
/// `bits[w - 1]` is the value of wire `w`.
pub fn reversible_permutation<F>(wires: usize, order: WireOrder, f: F) -> ComplexMatrix
where
    F: Fn(&mut [u8]),
{
    let dim = 1usize << wires;
    let encode = |bits: &[u8]| -> usize {
        (1..=wires).fold(0, |acc, w| {
            let shift = match order {
                WireOrder::Wire1MostSignificant => wires - w,
                WireOrder::Wire1LeastSignificant => w - 1,
            };
            acc | ((bits[w - 1] as usize) << shift)
        })
    };
    let perm: Vec<usize> = (0..dim)
        .map(|k| {
            let mut bits: Vec<u8> = (1..=wires).map(|w| order.bit(k, w, wires) as u8).collect();
            f(&mut bits);
            encode(&bits)
        })
        .collect();
    ComplexMatrix::permutation(&perm)
}

/// Entrywise magnitude comparison of a synthesized matrix against a target.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MatrixErrorReport {
    pub max_abs_error: f64,
    pub mean_abs_error: f64,
    pub fitness: f64,
}

pub fn matrix_error_report(s: &ComplexMatrix, t: &ComplexMatrix) -> Result<MatrixErrorReport> {
    let fitness = fitness_value(s, t)?;
    let diffs: Vec<f64> = s
        .as_slice()
        .iter()
        .zip(t.as_slice())
        .map(|(a, b)| (a.norm() - b.norm()).abs())
        .collect();
    let max = diffs.iter().copied().fold(0.0, f64::max);
    let mean = diffs.iter().sum::<f64>() / diffs.len() as f64;
    Ok(MatrixErrorReport {
        max_abs_error: max,
        mean_abs_error: mean,
        fitness,
    })
}

/// Plain-text target: first line is the wire count, then `2^n` rows of
/// `2^n` whitespace-separated entries written `re+imj`.
pub fn parse_target_text(name: &str, text: &str) -> Result<TargetSpec> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line_no, header) = lines.next().ok_or(SynthError::Parse {
        line: 1,
        message: "empty target file".into(),
    })?;
    let wires: usize = header.parse().map_err(|_| SynthError::Parse {
        line: line_no,
        message: format!("expected wire count, found `{header}`"),
    })?;
    if wires == 0 || wires > 16 {
        return Err(SynthError::Parse {
            line: line_no,
            message: format!("wire count {wires} out of range 1..=16"),
        });
    }
    let dim = 1usize << wires;

    let mut entries = Vec::with_capacity(dim * dim);
    let mut rows = 0;
    for (line_no, line) in lines {
        if rows == dim {
            return Err(SynthError::Parse {
                line: line_no,
                message: format!("more than {dim} matrix rows"),
            });
        }
        let row: Vec<Complex> = line
            .split_whitespace()
            .map(|tok| {
                parse_complex(tok).ok_or_else(|| SynthError::Parse {
                    line: line_no,
                    message: format!("bad complex entry `{tok}` (expected re+imj)"),
                })
            })
            .collect::<Result<_>>()?;
        if row.len() != dim {
            return Err(SynthError::Parse {
                line: line_no,
                message: format!("expected {dim} entries, found {}", row.len()),
            });
        }
        entries.extend(row);
        rows += 1;
    }
    if rows != dim {
        return Err(SynthError::Parse {
            line: text.lines().count(),
            message: format!("expected {dim} matrix rows, found {rows}"),
        });
    }
    TargetSpec::new(name, ComplexMatrix::from_row_major(entries)?)
}

pub fn load_target_file(path: &Path) -> Result<TargetSpec> {
    let text = fs::read_to_string(path).map_err(|e| SynthError::io(path, e))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "custom".into());
    parse_target_text(&name, &text)
}

pub fn write_target_text(matrix: &ComplexMatrix) -> String {
    let wires = matrix.dim().trailing_zeros();
    let mut out = format!("{wires}\n");
    for r in 0..matrix.dim() {
        let cells: Vec<String> = matrix.row(r).iter().map(|c| format_complex(*c)).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn format_complex(c: Complex) -> String {
    let sign = if c.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{}{}j", c.re, sign, c.im.abs())
}

pub fn parse_complex(token: &str) -> Option<Complex> {
    let body = token.strip_suffix('j')?;
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'))?;
    let re: f64 = body[..split].parse().ok()?;
    let im: f64 = body[split..].parse().ok()?;
    if !re.is_finite() || !im.is_finite() {
        return None;
    }
    Some(Complex::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ONE;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    const NAMED: [(&str, usize); 4] = [("CNOT", 2), ("Toffoli", 3), ("Peres", 3), ("CCCNOT", 4)];

    #[test]
    fn fitness_examples() {
        let i4 = ComplexMatrix::identity(4);
        assert_eq!(fitness_value(&i4, &i4).unwrap(), 1.0);
        let x = ComplexMatrix::permutation(&[1, 0]);
        assert_eq!(fitness_value(&x, &ComplexMatrix::identity(2)).unwrap(), 0.0);
        assert!(fitness_value(&i4, &ComplexMatrix::identity(2)).is_err());
    }

    #[test]
    fn named_targets_are_permutations() {
        for (name, wires) in NAMED {
            let t = target_matrix(name, wires).unwrap();
            let m = &t.matrix;
            for r in 0..m.dim() {
                let ones = m.row(r).iter().filter(|&&c| c == ONE).count();
                let zeros = m.row(r).iter().filter(|&&c| c == Complex::new(0.0, 0.0)).count();
                assert_eq!((ones, zeros), (1, m.dim() - 1), "{name} row {r}");
            }
            assert!((fitness_value(m, m).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn toffoli_swaps_last_two_states() {
        let t = target_matrix("Toffoli", 3).unwrap().matrix;
        for k in 0..6 {
            assert_eq!(t[(k, k)], ONE);
        }
        assert_eq!(t[(6, 7)], ONE);
        assert_eq!(t[(7, 6)], ONE);
        let i8 = ComplexMatrix::identity(8);
        let report = matrix_error_report(&i8, &t).unwrap();
        assert_eq!(report.max_abs_error, 1.0);
    }

    #[test]
    fn cnot_is_expected_permutation() {
        let c = target_matrix("cnot", 2).unwrap().matrix;
        assert_eq!(c, ComplexMatrix::permutation(&[0, 1, 3, 2]));
        let reversed = cnot_between(2, 1, 2, WireOrder::default());
        assert_eq!(reversed, ComplexMatrix::permutation(&[0, 3, 2, 1]));
    }

    #[test]
    fn peres_is_toffoli_then_cnot() {
        let tof = target_matrix("Toffoli", 3).unwrap().matrix;
        let cnot12 = cnot_between(1, 2, 3, WireOrder::default());
        let peres = target_matrix("Peres", 3).unwrap().matrix;
        assert_eq!(cnot12.matmul(&tof).unwrap(), peres);
    }

    #[test]
    fn target_errors() {
        assert!(target_matrix("fredkin", 3).is_err());
        assert!(target_matrix("CNOT", 3).is_err());
        assert!(target_matrix("identity", 3).is_ok());
    }

    #[test]
    fn table_two_error_is_about_two_percent() {
        let rows: [[f64; 8]; 8] = [
            [0.894, 0.000, 0.004, 0.000, 0.101, 0.000, 0.000, 0.000],
            [0.000, 0.916, 0.000, 0.001, 0.000, 0.080, 0.000, 0.004],
            [0.004, 0.000, 0.967, 0.000, 0.000, 0.000, 0.029, 0.000],
            [0.000, 0.004, 0.000, 0.121, 0.000, 0.000, 0.000, 0.875],
            [0.101, 0.000, 0.000, 0.000, 0.894, 0.000, 0.004, 0.000],
            [0.000, 0.080, 0.000, 0.004, 0.000, 0.916, 0.000, 0.001],
            [0.000, 0.000, 0.029, 0.000, 0.004, 0.000, 0.967, 0.000],
            [0.000, 0.000, 0.000, 0.875, 0.000, 0.004, 0.000, 0.121],
        ];
        let s = ComplexMatrix::from_row_major(
            rows.iter().flatten().map(|&v| Complex::new(v, 0.0)).collect(),
        )
        .unwrap();
        // The printed matrix exchanges basis states 3 and 7: Toffoli with wire 1
        // as the least significant bit.
        let t = target_matrix_ordered("Toffoli", 3, WireOrder::Wire1LeastSignificant).unwrap();
        let report = matrix_error_report(&s, &t.matrix).unwrap();
        assert!((report.mean_abs_error - 0.02175).abs() < 1e-9);
        assert!((report.mean_abs_error - 0.02).abs() < 0.005);
    }

    #[test]
    fn self_report_is_zero() {
        let t = target_matrix("Peres", 3).unwrap().matrix;
        let r = matrix_error_report(&t, &t).unwrap();
        assert_eq!((r.max_abs_error, r.mean_abs_error), (0.0, 0.0));
    }

    fn random_unitary(rng: &mut ChaCha8Rng) -> ComplexMatrix {
        use crate::gates::{expand_rotation, Axis};
        let set = crate::circuit::GateSet::new(2).unwrap();
        let mut mats = Vec::new();
        for _ in 0..8 {
            let axis = Axis::ALL[rng.random_range(0..3)];
            let wire = rng.random_range(1..=2);
            mats.push(expand_rotation(axis, rng.random_range(0.0..2.0 * PI), wire, 2).unwrap());
            let t = &set.templates()[0];
            mats.push(crate::gates::interaction_gate(t, rng.random_range(0.0..2.0 * PI)));
        }
        set.compose(&mats)
    }

    #[test]
    fn global_phase_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..100 {
            let t = random_unitary(&mut rng);
            let phi = rng.random_range(0.0..2.0 * PI);
            let phased = t.scale(Complex::from_polar(1.0, phi));
            assert!((fitness_value(&phased, &t).unwrap() - 1.0).abs() < 1e-12);

            let s = random_unitary(&mut rng);
            let base = fitness_value(&s, &t).unwrap();
            let shifted = fitness_value(&s.scale(Complex::from_polar(1.0, phi)), &t).unwrap();
            assert!((base - shifted).abs() < 1e-12);
            assert!((base - fitness_value(&t, &s).unwrap()).abs() < 1e-12);
            assert!((0.0..=1.0).contains(&base));
        }
    }

    #[test]
    fn residual_form_matches_trace_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..200 {
            let s = random_unitary(&mut rng);
            let t = random_unitary(&mut rng);
            let overlap = s.inner_trace(&t).unwrap().norm();
            let literal = 1.0 - ((4.0 - overlap) / 4.0).max(0.0).sqrt();
            assert!((fitness_value(&s, &t).unwrap() - literal).abs() < 1e-12);
        }
    }

    #[test]
    fn parse_complex_forms() {
        assert_eq!(parse_complex("1+0j"), Some(Complex::new(1.0, 0.0)));
        assert_eq!(parse_complex("-0.5-0.25j"), Some(Complex::new(-0.5, -0.25)));
        assert_eq!(parse_complex("1e-3+2e+1j"), Some(Complex::new(1e-3, 20.0)));
        assert_eq!(parse_complex("-1.5E-2-3j"), Some(Complex::new(-1.5e-2, -3.0)));
        assert_eq!(parse_complex("1+0"), None);
        assert_eq!(parse_complex("j"), None);
        assert_eq!(parse_complex("abc+1j"), None);
    }

    #[test]
    fn target_file_parsing() {
        let text = "2\n1+0j 0+0j 0+0j 0+0j\n0+0j 1+0j 0+0j 0+0j\n0+0j 0+0j 0+0j 1+0j\n0+0j 0+0j 1+0j 0+0j\n";
        let t = parse_target_text("mine", text).unwrap();
        assert_eq!(t.wires, 2);
        assert_eq!(t.matrix, target_matrix("CNOT", 2).unwrap().matrix);

        let bad = "1\n1+0j 0+0j\n0+0j 2+0j\n";
        match parse_target_text("bad", bad) {
            Err(SynthError::NonUnitary { max_deviation }) => assert!((max_deviation - 3.0).abs() < 1e-12),
            other => panic!("expected NonUnitary, got {other:?}"),
        }

        let short = "1\n1+0j 0+0j\n";
        assert!(matches!(parse_target_text("s", short), Err(SynthError::Parse { .. })));
        let ragged = "1\n1+0j\n0+0j 1+0j\n";
        assert!(matches!(parse_target_text("r", ragged), Err(SynthError::Parse { line: 2, .. })));
    }

    proptest! {
        #[test]
        fn target_text_round_trips(theta in 0.0f64..(2.0 * PI), wire in 1usize..=2) {
            let m = crate::gates::expand_rotation(crate::gates::Axis::Y, theta, wire, 2).unwrap()
                .scale(Complex::from_polar(1.0, theta));
            let parsed = parse_target_text("rt", &write_target_text(&m)).unwrap();
            prop_assert_eq!(parsed.matrix, m);
        }
    }
}
