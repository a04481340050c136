//! Quantum genome units.
//!
//! A rotation angle lives in a [`QubitParam`]; the rotation axis is chosen by
//! measuring a [`QutritState`] in the {|0⟩,|1⟩,|2⟩} basis, which maps to
//! {x, y, z}.
//!
//! The angle is stored exactly and read back deterministically. A physical
//! qubit could only yield it through amplitude estimation; this crate
//! simulates the idealized copy. Measurement likewise samples the Born
//! distribution without collapsing the stored state.

use std::f64::consts::{FRAC_PI_2, PI};

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::gates::Axis;
use crate::linalg::{Complex, ComplexMatrix};

pub const TWO_PI: f64 = 2.0 * PI;

/// Reduce an angle into `[0, 2π)`.
pub fn wrap_angle(theta: f64) -> f64 {
    let r = theta.rem_euclid(TWO_PI);
    // rem_euclid can round up to exactly 2π for tiny negative inputs
    if r >= TWO_PI {
        0.0
    } else {
        r
    }
}

/// Rotation-angle carrier. Invariant: `theta ∈ [0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QubitParam {
    theta: f64,
}

impl QubitParam {
    pub fn new(theta: f64) -> Self {
        QubitParam {
            theta: wrap_angle(theta),
        }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self::new(rng.random_range(0.0..TWO_PI))
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }
}

pub fn read_angle(q: &QubitParam) -> f64 {
    q.theta
}

/// Shift by `±(1 - segment_fitness)·mutation_range` with a fair-coin sign.
pub fn mutate_angle<R: Rng + ?Sized>(
    q: &QubitParam,
    segment_fitness: f64,
    mutation_range: f64,
    rng: &mut R,
) -> QubitParam {
    let positive = rng.random_bool(0.5);
    mutate_angle_signed(q, segment_fitness, mutation_range, positive)
}

pub fn mutate_angle_signed(
    q: &QubitParam,
    segment_fitness: f64,
    mutation_range: f64,
    positive: bool,
) -> QubitParam {
    let magnitude = (1.0 - segment_fitness.clamp(0.0, 1.0)) * mutation_range;
    let delta = if positive { magnitude } else { -magnitude };
    QubitParam::new(q.theta + delta)
}

/// Normalized three-level state; `|a0|² + |a1|² + |a2|² = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QutritState {
    amps: [Complex; 3],
}

impl QutritState {
    /// Normalizes the given amplitudes. Panics if all three are zero.
    pub fn new(a0: Complex, a1: Complex, a2: Complex) -> Self {
        let mut s = QutritState { amps: [a0, a1, a2] };
        s.normalize();
        s
    }

    pub fn basis(axis: Axis) -> Self {
        let mut amps = [Complex::new(0.0, 0.0); 3];
        amps[axis.index()] = Complex::new(1.0, 0.0);
        QutritState { amps }
    }

    /// Uniform on the unit sphere of C³ (normalized complex Gaussians).
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut draw = || Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
        let amps = [draw(), draw(), draw()];
        Self::new(amps[0], amps[1], amps[2])
    }

    pub fn amplitudes(&self) -> &[Complex; 3] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Born probabilities for x, y, z.
    pub fn probabilities(&self) -> [f64; 3] {
        let n = self.norm_sqr();
        [
            self.amps[0].norm_sqr() / n,
            self.amps[1].norm_sqr() / n,
            self.amps[2].norm_sqr() / n,
        ]
    }

    fn normalize(&mut self) {
        let n = self.norm_sqr().sqrt();
        assert!(n > 0.0 && n.is_finite(), "qutrit state has zero or non-finite norm");
        for a in &mut self.amps {
            *a /= n;
        }
    }
}

/// One Born-rule sample. The stored state is not collapsed.
pub fn measure_qutrit<R: Rng + ?Sized>(s: &QutritState, rng: &mut R) -> Axis {
    let norm = s.norm_sqr();
    assert!(
        (norm - 1.0).abs() <= 1e-6,
        "qutrit invariant violated: norm^2 = {norm}"
    );
    let p = s.probabilities();
    let u: f64 = rng.random();
    if u < p[0] {
        Axis::X
    } else if u < p[0] + p[1] {
        Axis::Y
    } else {
        Axis::Z
    }
}

/// Plurality vote over `n_meas` samples; ties go to the lower axis (x < y < z).
pub fn estimate_axis<R: Rng + ?Sized>(s: &QutritState, n_meas: usize, rng: &mut R) -> Axis {
    if n_meas <= 1 {
        return measure_qutrit(s, rng);
    }
    let mut counts = [0usize; 3];
    for _ in 0..n_meas {
        counts[measure_qutrit(s, rng).index()] += 1;
    }
    let mut best = 0;
    for k in 1..3 {
        if counts[k] > counts[best] {
            best = k;
        }
    }
    Axis::ALL[best]
}

/// Three mixing angles in (0, π/2) and five phases in (0, 2π).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Su3Params {
    pub theta: [f64; 3],
    pub phi: [f64; 5],
}

impl Su3Params {
    pub const COUNT: usize = 8;

    /// Upper end of the domain of parameter `idx` (angles first, then phases).
    pub fn upper_bound(idx: usize) -> f64 {
        if idx < 3 {
            FRAC_PI_2
        } else {
            TWO_PI
        }
    }

    /// All zero except parameter `idx`, which is set to `value`.
    pub fn single(idx: usize, value: f64) -> Self {
        assert!(idx < Self::COUNT, "SU(3) parameter index {idx} out of range");
        let mut p = Su3Params::default();
        if idx < 3 {
            p.theta[idx] = value;
        } else {
            p.phi[idx - 3] = value;
        }
        p
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut p = Su3Params::default();
        for t in &mut p.theta {
            *t = rng.random_range(0.0..FRAC_PI_2);
        }
        for f in &mut p.phi {
            *f = rng.random_range(0.0..TWO_PI);
        }
        p
    }
}

pub fn su3_operator(p: &Su3Params) -> ComplexMatrix {
    let [t1, t2, t3] = p.theta;
    let [p1, p2, p3, p4, p5] = p.phi;
    let (s1, c1) = t1.sin_cos();
    let (s2, c2) = t2.sin_cos();
    let (s3, c3) = t3.sin_cos();
    let e = |phase: f64| Complex::from_polar(1.0, phase);

    let rows = vec![
        vec![e(p1) * c1 * c2, e(p3) * s1, e(p4) * c1 * s2],
        vec![
            e(-p4 - p5) * s2 * s3 - e(p1 + p2 - p3) * s1 * c2 * c3,
            e(p2) * c1 * c3,
            -e(-p1 - p5) * c2 * s3 - e(p2 - p3 + p4) * s1 * s2 * c3,
        ],
        vec![
            -e(-p2 - p4) * s2 * c3 - e(p1 - p3 + p5) * s1 * c2 * s3,
            e(p5) * c1 * s3,
            e(-p1 - p2) * c2 * c3 - e(-p3 + p4 + p5) * s1 * s2 * s3,
        ],
    ];
    ComplexMatrix::from_rows(&rows).expect("3x3 is square")
}

/// Apply an SU(3) rotation with one randomly chosen parameter drawn from its
/// domain scaled by `1 - segment_fitness`; all other parameters are zero.
pub fn mutate_qutrit<R: Rng + ?Sized>(
    s: &QutritState,
    segment_fitness: f64,
    rng: &mut R,
) -> QutritState {
    let idx = rng.random_range(0..Su3Params::COUNT);
    let u: f64 = rng.random();
    let value = u * Su3Params::upper_bound(idx) * (1.0 - segment_fitness.clamp(0.0, 1.0));
    rotate_qutrit(s, &Su3Params::single(idx, value))
}

pub fn rotate_qutrit(s: &QutritState, p: &Su3Params) -> QutritState {
    let out = su3_operator(p).apply(s.amplitudes());
    QutritState::new(out[0], out[1], out[2])
}
