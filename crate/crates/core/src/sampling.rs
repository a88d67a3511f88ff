//! Deterministic low-discrepancy sampling.
//!
//! Additive-recurrence (Weyl) sequences with the generalized golden-ratio
//! increments. Used for multistart root searches and for sampling interior
//! states; the sequences are fixed, so every consumer is reproducible without
//! carrying an RNG.

use crate::game::PopulationState;

/// Additive recurrence `u_{k+1} = frac(u_k + alpha)` with irrational
/// component-wise increments.
#[derive(Debug, Clone)]
pub struct WeylSequence {
    state: Vec<f64>,
    alpha: Vec<f64>,
}

impl WeylSequence {
    pub fn new(dims: usize) -> Self {
        // phi_d is the unique root > 1 of x^(d+1) = x + 1; the increments
        // phi_d^-(j+1) give well-spread points in the unit cube.
        let d = dims.max(1) as f64;
        let mut phi = 1.5f64;
        for _ in 0..64 {
            phi = (1.0 + phi).powf(1.0 / (d + 1.0));
        }
        let alpha = (0..dims.max(1))
            .map(|j| (1.0 / phi).powi(j as i32 + 1))
            .collect();
        WeylSequence {
            state: vec![0.5; dims.max(1)],
            alpha,
        }
    }

    pub fn next_point(&mut self) -> Vec<f64> {
        for (s, a) in self.state.iter_mut().zip(&self.alpha) {
            *s = (*s + *a).fract();
        }
        self.state.clone()
    }
}

/// Maps a point of the unit cube `[0,1)^(m-1)` to the interior of the
/// `(m-1)`-simplex via sorted gaps.
pub fn unit_cube_to_simplex(u: &[f64]) -> Vec<f64> {
    let mut cuts = u.to_vec();
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut out = Vec::with_capacity(cuts.len() + 1);
    let mut prev = 0.0;
    for c in cuts {
        out.push(c - prev);
        prev = c;
    }
    out.push(1.0 - prev);
    out
}

/// `count` quasi-random interior states of the `(n-1)`-simplex.
pub fn interior_states(n: usize, count: usize) -> Vec<PopulationState> {
    let mut seq = WeylSequence::new(n - 1);
    (0..count)
        .map(|_| {
            let gaps = unit_cube_to_simplex(&seq.next_point());
            PopulationState::from_normalized(normalize(gaps))
        })
        .collect()
}

/// `count` quasi-random states supported on the given face, embedded in the
/// full simplex (zero shares off the face).
pub fn face_interior_points(n: usize, support: &[usize], count: usize) -> Vec<Vec<f64>> {
    let s = support.len();
    assert!(s >= 2, "face sampling needs support of at least 2");
    let mut seq = WeylSequence::new(s - 1);
    (0..count)
        .map(|_| {
            let gaps = normalize(unit_cube_to_simplex(&seq.next_point()));
            let mut full = vec![0.0; n];
            for (slot, &strategy) in support.iter().enumerate() {
                full[strategy] = gaps[slot];
            }
            full
        })
        .collect()
}

/// Interior states with the share of `strategy` confined to `(lo, hi)` and
/// the remaining mass spread quasi-randomly over the other strategies.
pub fn states_with_share_in(
    n: usize,
    strategy: usize,
    lo: f64,
    hi: f64,
    count: usize,
) -> Vec<PopulationState> {
    let mut seq = WeylSequence::new(n - 1);
    (0..count)
        .map(|_| {
            let u = seq.next_point();
            let pinned = lo + u[0] * (hi - lo);
            let rest: Vec<f64> = if n == 2 {
                vec![1.0 - pinned]
            } else {
                unit_cube_to_simplex(&u[1..])
                    .into_iter()
                    .map(|g| g * (1.0 - pinned))
                    .collect()
            };
            let mut full = Vec::with_capacity(n);
            let mut iter = rest.into_iter();
            for i in 0..n {
                if i == strategy {
                    full.push(pinned);
                } else {
                    full.push(iter.next().unwrap());
                }
            }
            PopulationState::from_normalized(normalize(full))
        })
        .collect()
}

fn normalize(mut v: Vec<f64>) -> Vec<f64> {
    let sum: f64 = v.iter().sum();
    for x in &mut v {
        *x /= sum;
    }
    v
}
