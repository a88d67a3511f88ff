//! Rest-point search and local stability.
//!
//! The simplex is searched face by face: the boundary behavior of an
//! imitative dynamics is exactly the dynamics of the restricted game (extinct
//! strategies are never reintroduced), so every face can be treated as its
//! own lower-dimensional system. On each face the last supported coordinate
//! is eliminated and the reduced system is solved by damped multistart
//! Newton. Stability comes from the eigenvalues of the reduced Jacobian,
//! which only sees the face's tangent directions.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use super::AnalysisError;
use crate::dynamics::{field, field_raw, FieldKind};
use crate::game::{PayoffMatrix, PopulationState};
use crate::sampling;

/// Eigenvalue real parts within this threshold of zero are treated as
/// borderline; centers are never decided by eigenvalues alone.
pub const HYPERBOLICITY_TOL: f64 = 1e-6;

/// Finite-difference step for the reduced Jacobian.
const FD_STEP: f64 = 1e-6;
/// Newton accepts a candidate when the reduced residual drops below this.
const NEWTON_TOL: f64 = 1e-12;
const NEWTON_MAX_ITERS: usize = 100;
const NEWTON_MAX_HALVINGS: usize = 20;
/// Number of quasi-random starts per face, in addition to the barycenter.
const NEWTON_STARTS: usize = 50;
/// Converged points closer than this are considered the same rest point.
const MERGE_TOL: f64 = 1e-7;
/// Minimum share for a candidate to count as interior to its face; anything
/// closer to a sub-face is found again there.
const FACE_INTERIOR_MIN: f64 = 1e-7;
/// Three or more converged points this far apart flag a rest set.
const REST_SET_SEPARATION: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilityClass {
    Attractor,
    Repeller,
    Saddle,
    CenterCandidate,
    Nonhyperbolic,
    RestSetSample,
}

impl StabilityClass {
    pub fn as_str(self) -> &'static str {
        match self {
            StabilityClass::Attractor => "attractor",
            StabilityClass::Repeller => "repeller",
            StabilityClass::Saddle => "saddle",
            StabilityClass::CenterCandidate => "center_candidate",
            StabilityClass::Nonhyperbolic => "nonhyperbolic",
            StabilityClass::RestSetSample => "rest_set_sample",
        }
    }
}

impl std::fmt::Display for StabilityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One located rest point.
#[derive(Debug, Clone)]
pub struct RestPointReport {
    pub location: PopulationState,
    /// Strategies with positive share, ascending.
    pub support: Vec<usize>,
    /// Eigenvalues of the reduced Jacobian on the supporting face, sorted by
    /// real part then imaginary part. Empty for vertices.
    pub eigenvalues: Vec<Complex<f64>>,
    pub class: StabilityClass,
    /// Max-norm of the full mean field at the location.
    pub residual: f64,
    /// Set when the finite-difference Jacobian failed its step-halving check.
    pub jacobian_unstable: bool,
}

/// Result of a face-by-face scan.
#[derive(Debug, Clone)]
pub struct RestPointScan {
    pub reports: Vec<RestPointReport>,
    /// Faces (dimension >= 1) where no interior rest point was found. The
    /// search is multistart Newton, so absence is heuristic, not a proof.
    pub faces_without_interior: Vec<Vec<usize>>,
}

impl RestPointScan {
    /// Reports whose support is the full strategy set.
    pub fn interior(&self) -> Vec<&RestPointReport> {
        let n = self
            .reports
            .first()
            .map(|r| r.location.n())
            .unwrap_or(0);
        self.reports
            .iter()
            .filter(|r| r.support.len() == n)
            .collect()
    }
}

/// Reduced Jacobian of the dynamics on the face supporting `x`, with the last
/// supported coordinate eliminated. `richardson_stable` records whether the
/// entries agree between steps `h` and `h/2` to 1e-4 relative.
#[derive(Debug, Clone)]
pub struct ReducedJacobian {
    pub matrix: DMatrix<f64>,
    pub richardson_stable: bool,
}

impl ReducedJacobian {
    /// Eigenvalues sorted by real part, then imaginary part.
    pub fn eigenvalues(&self) -> Vec<Complex<f64>> {
        let d = self.matrix.nrows();
        let mut eigs: Vec<Complex<f64>> = match d {
            0 => Vec::new(),
            1 => vec![Complex::new(self.matrix[(0, 0)], 0.0)],
            2 => {
                let (a, b) = (self.matrix[(0, 0)], self.matrix[(0, 1)]);
                let (c, dd) = (self.matrix[(1, 0)], self.matrix[(1, 1)]);
                let half_tr = (a + dd) / 2.0;
                let disc = (a - dd) * (a - dd) / 4.0 + b * c;
                if disc >= 0.0 {
                    let root = disc.sqrt();
                    vec![
                        Complex::new(half_tr - root, 0.0),
                        Complex::new(half_tr + root, 0.0),
                    ]
                } else {
                    let root = (-disc).sqrt();
                    vec![
                        Complex::new(half_tr, -root),
                        Complex::new(half_tr, root),
                    ]
                }
            }
            _ => self.matrix.complex_eigenvalues().iter().copied().collect(),
        };
        eigs.sort_by(|p, q| {
            p.re.partial_cmp(&q.re)
                .unwrap()
                .then(p.im.partial_cmp(&q.im).unwrap())
        });
        eigs
    }
}

/// Embeds reduced face coordinates into the full simplex: the first `s - 1`
/// supported strategies carry `u`, the last carries the remaining mass.
fn embed(n: usize, support: &[usize], u: &[f64]) -> Vec<f64> {
    let mut full = vec![0.0; n];
    let mut sum = 0.0;
    for (slot, &strategy) in support[..support.len() - 1].iter().enumerate() {
        full[strategy] = u[slot];
        sum += u[slot];
    }
    full[support[support.len() - 1]] = 1.0 - sum;
    full
}

/// The reduced field on a face: components of the full field at the embedded
/// state, for all supported strategies except the eliminated one.
fn reduced_field(
    game: &PayoffMatrix,
    kind: FieldKind,
    support: &[usize],
    u: &[f64],
) -> Vec<f64> {
    let full = embed(game.n(), support, u);
    let v = field_raw(kind, &full, game);
    support[..support.len() - 1]
        .iter()
        .map(|&i| v[i])
        .collect()
}

fn fd_jacobian(
    game: &PayoffMatrix,
    kind: FieldKind,
    support: &[usize],
    u: &[f64],
    h: f64,
) -> DMatrix<f64> {
    let d = u.len();
    let mut jac = DMatrix::zeros(d, d);
    let mut probe = u.to_vec();
    for col in 0..d {
        probe[col] = u[col] + h;
        let plus = reduced_field(game, kind, support, &probe);
        probe[col] = u[col] - h;
        let minus = reduced_field(game, kind, support, &probe);
        probe[col] = u[col];
        for row in 0..d {
            jac[(row, col)] = (plus[row] - minus[row]) / (2.0 * h);
        }
    }
    jac
}

/// Reduced Jacobian at a state, by central differences with a step-halving
/// stability check. The state must lie in the relative interior of its face;
/// a vertex yields the empty matrix.
pub fn reduced_jacobian(
    game: &PayoffMatrix,
    kind: FieldKind,
    x: &PopulationState,
) -> Result<ReducedJacobian, AnalysisError> {
    let support = x.support();
    if support.len() <= 1 {
        return Ok(ReducedJacobian {
            matrix: DMatrix::zeros(0, 0),
            richardson_stable: true,
        });
    }
    let u: Vec<f64> = support[..support.len() - 1]
        .iter()
        .map(|&i| x.share(i))
        .collect();
    let coarse = fd_jacobian(game, kind, &support, &u, FD_STEP);
    let fine = fd_jacobian(game, kind, &support, &u, FD_STEP / 2.0);
    let mut stable = true;
    for (a, b) in coarse.iter().zip(fine.iter()) {
        let scale = a.abs().max(b.abs());
        let diff = (a - b).abs();
        if diff > 1e-4 * scale && diff > 1e-9 {
            stable = false;
        }
    }
    Ok(ReducedJacobian {
        matrix: fine,
        richardson_stable: stable,
    })
}

/// Classifies a rest point from its reduced eigenvalues. Borderline real
/// parts (within [`HYPERBOLICITY_TOL`]) with rotation give `CenterCandidate`,
/// which only a flow-level return check can confirm or refute. An empty
/// spectrum (a vertex within its own face) is reported as nonhyperbolic.
pub fn classify_rest_point(eigenvalues: &[Complex<f64>]) -> StabilityClass {
    if eigenvalues.is_empty() {
        return StabilityClass::Nonhyperbolic;
    }
    let tau = HYPERBOLICITY_TOL;
    if eigenvalues.iter().all(|e| e.re < -tau) {
        return StabilityClass::Attractor;
    }
    if eigenvalues.iter().all(|e| e.re > tau) {
        return StabilityClass::Repeller;
    }
    let has_pos = eigenvalues.iter().any(|e| e.re > tau);
    let has_neg = eigenvalues.iter().any(|e| e.re < -tau);
    if has_pos && has_neg {
        return StabilityClass::Saddle;
    }
    if eigenvalues.iter().all(|e| e.re.abs() <= tau)
        && eigenvalues.iter().any(|e| e.im.abs() > tau)
    {
        return StabilityClass::CenterCandidate;
    }
    StabilityClass::Nonhyperbolic
}

/// Damped Newton on the reduced system, constrained to the open face.
fn newton_on_face(
    game: &PayoffMatrix,
    kind: FieldKind,
    support: &[usize],
    start: &[f64],
) -> Option<Vec<f64>> {
    let d = support.len() - 1;
    let mut u: Vec<f64> = start.to_vec();
    for _ in 0..NEWTON_MAX_ITERS {
        let r = reduced_field(game, kind, support, &u);
        let res = r.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if res < NEWTON_TOL {
            return Some(u);
        }
        let jac = fd_jacobian(game, kind, support, &u, FD_STEP);
        let rhs = DVector::from_iterator(d, r.iter().map(|v| -v));
        let step = jac.lu().solve(&rhs)?;
        // halve the step until the iterate stays strictly inside the face
        let mut lambda = 1.0;
        let mut moved = None;
        for _ in 0..=NEWTON_MAX_HALVINGS {
            let candidate: Vec<f64> = (0..d).map(|l| u[l] + lambda * step[l]).collect();
            let sum: f64 = candidate.iter().sum();
            if candidate.iter().all(|&v| v > 0.0) && sum < 1.0 {
                moved = Some(candidate);
                break;
            }
            lambda /= 2.0;
        }
        u = moved?;
    }
    let r = reduced_field(game, kind, support, &u);
    if r.iter().fold(0.0f64, |m, v| m.max(v.abs())) < NEWTON_TOL {
        Some(u)
    } else {
        None
    }
}

fn max_norm_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .fold(0.0f64, |m, (p, q)| m.max((p - q).abs()))
}

/// Searches one face; returns deduplicated full-coordinate rest points.
fn search_face(game: &PayoffMatrix, kind: FieldKind, support: &[usize]) -> Vec<Vec<f64>> {
    let n = game.n();
    let s = support.len();
    let mut starts: Vec<Vec<f64>> = Vec::with_capacity(NEWTON_STARTS + 1);
    let mut barycenter = vec![0.0; n];
    for &i in support {
        barycenter[i] = 1.0 / s as f64;
    }
    starts.push(barycenter);
    starts.extend(sampling::face_interior_points(n, support, NEWTON_STARTS));

    let mut converged: Vec<Vec<f64>> = Vec::new();
    for full_start in &starts {
        let u0: Vec<f64> = support[..s - 1].iter().map(|&i| full_start[i]).collect();
        if let Some(u) = newton_on_face(game, kind, support, &u0) {
            let full = embed(n, support, &u);
            if support.iter().all(|&i| full[i] > FACE_INTERIOR_MIN) {
                converged.push(full);
            }
        }
    }
    converged.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut unique: Vec<Vec<f64>> = Vec::new();
    for point in converged {
        if unique
            .iter()
            .all(|seen| max_norm_dist(seen, &point) > MERGE_TOL)
        {
            unique.push(point);
        }
    }
    unique
}

/// True when at least three mutually distant points converged on one face,
/// the signature of a rest set rather than isolated rest points.
fn looks_like_rest_set(points: &[Vec<f64>]) -> bool {
    let mut selected: Vec<&Vec<f64>> = Vec::new();
    for p in points {
        if selected
            .iter()
            .all(|q| max_norm_dist(p, q) >= REST_SET_SEPARATION)
        {
            selected.push(p);
        }
    }
    selected.len() >= 3
}

fn all_supports(n: usize) -> Vec<Vec<usize>> {
    let mut supports: Vec<Vec<usize>> = (1u32..(1 << n))
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect();
    supports.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    supports
}

/// Locates and classifies the rest points of the chosen dynamics, face by
/// face. Every vertex is reported; faces of dimension one and higher are
/// searched by multistart Newton.
pub fn find_rest_points(
    game: &PayoffMatrix,
    kind: FieldKind,
) -> Result<RestPointScan, AnalysisError> {
    let n = game.n();
    if n > 6 {
        return Err(AnalysisError::TooManyStrategies(n));
    }
    let mut reports = Vec::new();
    let mut faces_without_interior = Vec::new();

    for support in all_supports(n) {
        if support.len() == 1 {
            let location = PopulationState::vertex(n, support[0]);
            let residual = field(kind, &location, game).max_norm();
            reports.push(RestPointReport {
                location,
                support,
                eigenvalues: Vec::new(),
                class: StabilityClass::Nonhyperbolic,
                residual,
                jacobian_unstable: false,
            });
            continue;
        }
        let points = search_face(game, kind, &support);
        if points.is_empty() {
            faces_without_interior.push(support);
            continue;
        }
        let rest_set = looks_like_rest_set(&points);
        for point in points {
            let location = PopulationState::from_normalized(point);
            let jac = reduced_jacobian(game, kind, &location)?;
            let eigenvalues = jac.eigenvalues();
            let class = if rest_set {
                StabilityClass::RestSetSample
            } else {
                classify_rest_point(&eigenvalues)
            };
            let residual = field(kind, &location, game).max_norm();
            reports.push(RestPointReport {
                location,
                support: support.clone(),
                eigenvalues,
                class,
                residual,
                jacobian_unstable: !jac.richardson_stable,
            });
        }
    }
    Ok(RestPointScan {
        reports,
        faces_without_interior,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn coordination_edge_has_three_rest_points() {
        let g = presets::preset("table1-C1").unwrap();
        let scan = find_rest_points(&g, FieldKind::Ibr).unwrap();
        assert_eq!(scan.reports.len(), 3);
        let interior: Vec<_> = scan
            .reports
            .iter()
            .filter(|r| r.support.len() == 2)
            .collect();
        assert_eq!(interior.len(), 1);
        let x = interior[0].location.share(0);
        assert!((x - (1.0 - 2.0f64.sqrt() / 2.0)).abs() < 1e-9);
        assert_eq!(interior[0].class, StabilityClass::Repeller);
        assert!(interior[0].residual <= 1e-9);
    }

    #[test]
    fn cyclic_center_game_rest_point_location() {
        let g = presets::preset("table5-C2").unwrap();
        let scan = find_rest_points(&g, FieldKind::Ibr).unwrap();
        let interior = scan.interior();
        assert_eq!(interior.len(), 1);
        let loc = interior[0].location.as_slice();
        assert!((loc[0] - 0.252).abs() < 1e-3);
        assert!((loc[1] - 0.374).abs() < 1e-3);
        assert!((loc[2] - 0.374).abs() < 1e-3);
        assert_eq!(interior[0].class, StabilityClass::CenterCandidate);
    }

    #[test]
    fn zeeman_game_has_two_interior_rest_points() {
        let g = presets::zeeman_z();
        let scan = find_rest_points(&g, FieldKind::Ibr).unwrap();
        let interior = scan.interior();
        assert_eq!(interior.len(), 2);
        let barycenter = &interior[0];
        assert!(max_norm_dist(barycenter.location.as_slice(), &[1.0 / 3.0; 3]) < 1e-9);
        assert_eq!(barycenter.class, StabilityClass::Attractor);
        let second = &interior[1];
        assert!((second.location.share(0) - 0.575).abs() < 5e-3);
        assert!((second.location.share(1) - 0.088).abs() < 5e-3);
        assert!((second.location.share(2) - 0.338).abs() < 5e-3);
        assert_eq!(second.class, StabilityClass::Saddle);
    }

    #[test]
    fn reduced_jacobian_matches_hand_computed_matrix() {
        let g = presets::preset("table5-A1").unwrap();
        let x = PopulationState::uniform(3);
        let jac = reduced_jacobian(&g, FieldKind::Ibr, &x).unwrap();
        assert!(jac.richardson_stable);
        let want = [
            [-7.0 / 27.0, -14.0 / 27.0],
            [12.0 / 27.0, 9.0 / 27.0],
        ];
        for r in 0..2 {
            for c in 0..2 {
                assert!(
                    (jac.matrix[(r, c)] - want[r][c]).abs() < 1e-5,
                    "entry ({r},{c}) = {} expected {}",
                    jac.matrix[(r, c)],
                    want[r][c]
                );
            }
        }
        let eigs = jac.eigenvalues();
        let im = 2.0 * 26.0f64.sqrt() / 27.0;
        assert!((eigs[0].re - 1.0 / 27.0).abs() < 1e-6);
        assert!((eigs[0].im + im).abs() < 1e-6);
        assert!((eigs[1].im - im).abs() < 1e-6);
        assert_eq!(classify_rest_point(&eigs), StabilityClass::Repeller);
    }

    #[test]
    fn vertex_jacobian_is_empty() {
        let g = presets::preset("table5-A1").unwrap();
        let jac = reduced_jacobian(&g, FieldKind::Ibr, &PopulationState::vertex(3, 0)).unwrap();
        assert_eq!(jac.matrix.nrows(), 0);
        assert_eq!(classify_rest_point(&jac.eigenvalues()), StabilityClass::Nonhyperbolic);
    }

    #[test]
    fn zeeman_barycenter_eigenvalues() {
        let g = presets::zeeman_z();
        let jac = reduced_jacobian(&g, FieldKind::Ibr, &PopulationState::uniform(3)).unwrap();
        let eigs = jac.eigenvalues();
        let im = 2.0 * 5.0f64.sqrt() / 27.0;
        for e in &eigs {
            assert!((e.re + 1.0 / 27.0).abs() < 1e-6);
        }
        assert!((eigs[0].im.abs() - im).abs() < 1e-6);
    }

    #[test]
    fn classification_thresholds() {
        let saddle = [Complex::new(0.41, 0.0), Complex::new(-0.041, 0.0)];
        assert_eq!(classify_rest_point(&saddle), StabilityClass::Saddle);
        let center = [Complex::new(0.0, 0.3), Complex::new(0.0, -0.3)];
        assert_eq!(classify_rest_point(&center), StabilityClass::CenterCandidate);
        let repeller = [
            Complex::new(1.0 / 27.0, 2.0 * 26.0f64.sqrt() / 27.0),
            Complex::new(1.0 / 27.0, -2.0 * 26.0f64.sqrt() / 27.0),
        ];
        assert_eq!(classify_rest_point(&repeller), StabilityClass::Repeller);
        let flat = [Complex::new(0.0, 0.0)];
        assert_eq!(classify_rest_point(&flat), StabilityClass::Nonhyperbolic);
    }

    #[test]
    fn all_ties_game_reports_rest_sets() {
        let g = PayoffMatrix::new(2, vec![1.0; 4]).unwrap();
        let scan = find_rest_points(&g, FieldKind::Ibr).unwrap();
        let samples: Vec<_> = scan
            .reports
            .iter()
            .filter(|r| r.class == StabilityClass::RestSetSample)
            .collect();
        assert!(samples.len() >= 3, "expected rest-set samples on the edge");
    }

    #[test]
    fn replicator_rest_points_differ_from_imitation() {
        // the two dynamics place the interior rest point differently here
        let g = presets::preset("example2").unwrap();
        let ibr = find_rest_points(&g, FieldKind::Ibr).unwrap();
        let interior = ibr.interior();
        assert_eq!(interior.len(), 1);
        assert!((interior[0].location.share(0) - 0.5).abs() < 1e-9);
        let rd = find_rest_points(&g, FieldKind::Replicator).unwrap();
        let interior = rd.interior();
        assert_eq!(interior.len(), 1);
        assert!((interior[0].location.share(0) - 0.3).abs() < 1e-9);
    }

    #[test]
    fn too_many_strategies_is_an_error() {
        let g = PayoffMatrix::new(7, vec![0.0; 49]).unwrap();
        assert!(matches!(
            find_rest_points(&g, FieldKind::Ibr),
            Err(AnalysisError::TooManyStrategies(7))
        ));
    }
}
