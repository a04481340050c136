//! Qutrit genes: Born-rule axis selection and SU(3) mutation.

use ising_synth::encoding::{estimate_axis, mutate_qutrit, su3_operator, QutritState, Su3Params};
use ising_synth::gates::Axis;
use ising_synth::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn histogram(s: &QutritState, n_meas: usize, draws: usize, rng: &mut ChaCha8Rng) -> [f64; 3] {
    let mut counts = [0usize; 3];
    for _ in 0..draws {
        counts[estimate_axis(s, n_meas, rng).index()] += 1;
    }
    counts.map(|c| c as f64 / draws as f64)
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let s = QutritState::new(
        Complex::new(-0.43, -0.16),
        Complex::new(0.85, 0.08),
        Complex::new(0.03, -0.24),
    );
    println!("probabilities  x {:.4}  y {:.4}  z {:.4}", s.probabilities()[0], s.probabilities()[1], s.probabilities()[2]);
    for n_meas in [1, 3, 9] {
        let h = histogram(&s, n_meas, 100_000, &mut rng);
        println!("n_meas={n_meas:<2} frequencies  x {:.4}  y {:.4}  z {:.4}", h[0], h[1], h[2]);
    }

    // One parameter at its upper bound, the rest zero.
    let p = Su3Params::single(3, Su3Params::upper_bound(3));
    let u = su3_operator(&p);
    println!("\nsingle-parameter SU(3) operator, U†U deviation {:.1e}", u.unitarity_deviation());

    let mut q = QutritState::basis(Axis::X);
    for fitness in [0.0, 0.5, 0.9, 1.0] {
        let next = mutate_qutrit(&q, fitness, &mut rng);
        let moved: f64 = (0..3).map(|k| (next.amplitudes()[k] - q.amplitudes()[k]).norm()).sum();
        println!("segment fitness {fitness:.1}: amplitude change {moved:.4}, norm {:.12}", next.norm_sqr());
        q = next;
    }
}
