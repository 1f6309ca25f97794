//! Covariant derivatives along horizontal curves and the ε-Riemannian
//! approximations of the Heisenberg group.
//!
//! For `ε > 0` the metric `g_ε` makes `(X1, X2, ε X3)` orthonormal. Its
//! Levi-Civita connection restricted to the horizontal frame is
//! ε-independent: `∇X1 X1 = ∇X2 X2 = 0`, `∇X1 X2 = X3/2 = −∇X2 X1`. The
//! Tanaka–Webster connection makes the horizontal frame parallel. Along a
//! unit-speed horizontal curve both give `∇_{ζ'} ζ' = h (−sin θ X1 + cos θ X2)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Zero};
use serde::{Deserialize, Serialize};

use crate::analysis::fit::{fit_taylor, FitReport, Polynomial};
use crate::curves::{integrate_curve, ThetaProfile};
use crate::distance::{distance_from_origin, invert_psi, DEFAULT_PSI_TOL};
use crate::error::{Error, Result};
use crate::geodesics::{geodesic_point, GeodesicParams};
use crate::group::{Point, TangentVec};

/// The ε-Riemannian metric with orthonormal frame `(X1, X2, ε X3)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpsMetric {
    epsilon: f64,
}

impl EpsMetric {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0) || !epsilon.is_finite() {
            return Err(Error::Invalid(format!(
                "epsilon must be positive, got {epsilon}"
            )));
        }
        Ok(Self { epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// `g_ε(v, w)` for frame coefficients.
    pub fn inner(&self, v: &TangentVec, w: &TangentVec) -> f64 {
        v.a * w.a + v.b * w.b + v.c * w.c / (self.epsilon * self.epsilon)
    }

    pub fn norm(&self, v: &TangentVec) -> f64 {
        self.inner(v, v).sqrt()
    }

    /// Dual norm of a covector given by its pairings `(h1, h2, h3)` with the
    /// frame `(X1, X2, X3)`.
    pub fn covector_norm(&self, h: &[f64; 3]) -> f64 {
        (h[0] * h[0] + h[1] * h[1] + self.epsilon * self.epsilon * h[2] * h[2]).sqrt()
    }
}

/// `∇_{Xi} Xj` as frame coefficients over `(X1, X2, X3)`, indexed `[i][j][k]`
/// (zero-based).
pub type ConnectionTable<T> = [[[T; 3]; 3]; 3];

/// Levi-Civita connection of `g_ε` recomputed from the Koszul formula.
///
/// With the orthonormal frame `E = (X1, X2, ε X3)` and brackets
/// `[Ei, Ej] = Σ c_ij^k Ek` (only `[E1, E2] = ε⁻¹ E3` is nonzero),
/// `∇_{Ei} Ej = ½ Σ_k (c_ij^k − c_jk^i + c_ki^j) Ek`. The result is converted
/// back to the frame `(X1, X2, X3)`.
pub fn koszul_levi_civita<T: Num + Clone>(epsilon: &T) -> ConnectionTable<T> {
    let zero = T::zero;
    let mut c: [[[T; 3]; 3]; 3] =
        std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| zero())));
    let inv_eps = T::one() / epsilon.clone();
    c[0][1][2] = inv_eps.clone();
    c[1][0][2] = zero() - inv_eps;
    let half = T::one() / (T::one() + T::one());
    // scale[i]: Ei = scale[i] · Xi
    let scale = [T::one(), T::one(), epsilon.clone()];
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            std::array::from_fn(|k| {
                let gamma =
                    half.clone() * (c[i][j][k].clone() - c[j][k][i].clone() + c[k][i][j].clone());
                // ∇_{Xi} Xj = (1 / (s_i s_j)) ∇_{Ei} Ej, and Ek = s_k Xk
                gamma * scale[k].clone() / (scale[i].clone() * scale[j].clone())
            })
        })
    })
}

/// `∇^ε_{Xi} Xj` for `i, j ∈ {1, 2}`, as `table[i][j]`.
pub fn christoffel_table(eps: &EpsMetric) -> [[TangentVec; 2]; 2] {
    let _ = eps.epsilon();
    [
        [
            TangentVec::new(0.0, 0.0, 0.0),
            TangentVec::new(0.0, 0.0, 0.5),
        ],
        [
            TangentVec::new(0.0, 0.0, -0.5),
            TangentVec::new(0.0, 0.0, 0.0),
        ],
    ]
}

/// Solve for `g(∇̄_{Xi} Xj, Xk)`, `i, j, k ∈ {1, 2}`, from the Tanaka–Webster
/// axioms: vanishing horizontal torsion part (`∇̄X1 X2 = ∇̄X2 X1`) and metric
/// compatibility (`g(∇̄_{Xi} Xj, Xk) + g(Xj, ∇̄_{Xi} Xk) = 0`).
///
/// Returns the unique solution indexed `[i][j][k]`, or an error if the system
/// is not of full rank.
pub fn tanaka_webster_horizontal() -> Result<[[[BigRational; 2]; 2]; 2]> {
    let idx = |i: usize, j: usize, k: usize| 4 * i + 2 * j + k;
    let mut rows: Vec<[BigRational; 8]> = Vec::new();
    let unit = |entries: &[(usize, i64)]| {
        let mut r: [BigRational; 8] = std::array::from_fn(|_| BigRational::zero());
        for &(col, v) in entries {
            r[col] += BigRational::from_integer(BigInt::from(v));
        }
        r
    };
    for k in 0..2 {
        rows.push(unit(&[(idx(0, 1, k), 1), (idx(1, 0, k), -1)]));
    }
    for i in 0..2 {
        for j in 0..2 {
            for k in j..2 {
                rows.push(unit(&[(idx(i, j, k), 1), (idx(i, k, j), 1)]));
            }
        }
    }
    let rhs = vec![BigRational::zero(); rows.len()];
    let sol = solve_exact(rows, rhs)?;
    Ok(std::array::from_fn(|i| {
        std::array::from_fn(|j| std::array::from_fn(|k| sol[idx(i, j, k)].clone()))
    }))
}

/// Exact least-rank-checked solve of an overdetermined-or-square system with
/// eight unknowns.
fn solve_exact(
    mut rows: Vec<[BigRational; 8]>,
    mut rhs: Vec<BigRational>,
) -> Result<[BigRational; 8]> {
    let n = 8;
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        let Some(p) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, p);
        rhs.swap(pivot_row, p);
        let inv = rows[pivot_row][col].recip();
        for c in 0..n {
            rows[pivot_row][c] = &rows[pivot_row][c] * &inv;
        }
        rhs[pivot_row] = &rhs[pivot_row] * &inv;
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in 0..n {
                    let v = &rows[pivot_row][c] * &f;
                    rows[r][c] -= v;
                }
                let v = &rhs[pivot_row] * &f;
                rhs[r] -= v;
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if pivots.len() < n {
        return Err(Error::RankDeficient);
    }
    if rhs[pivot_row..].iter().any(|v| !v.is_zero()) {
        return Err(Error::Invalid("inconsistent connection axioms".into()));
    }
    let mut out: [BigRational; 8] = std::array::from_fn(|_| BigRational::zero());
    for (r, &col) in pivots.iter().enumerate() {
        out[col] = rhs[r].clone();
    }
    Ok(out)
}

/// `∇̄_{Xi} Xj` for `i, j ∈ {1, 2}`.
pub fn tw_table() -> [[TangentVec; 2]; 2] {
    [[TangentVec::default(); 2]; 2]
}

/// Covariant derivative of the velocity along a curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CovariantDerivative {
    pub components: TangentVec,
    pub base: Point,
}

fn velocity_derivative(
    profile: &ThetaProfile,
    t: f64,
    at: Point,
    table: &[[TangentVec; 2]; 2],
) -> Result<CovariantDerivative> {
    let theta = profile.theta(&t)?;
    let h = profile.h(&t)?;
    let (s, c) = theta.sin_cos();
    let a = [c, s];
    // d/dt of the frame coefficients, plus Σ aᵢ aⱼ ∇_{Xi} Xj
    let mut v = TangentVec::new(-h * s, h * c, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            let w = a[i] * a[j];
            v.a += w * table[i][j].a;
            v.b += w * table[i][j].b;
            v.c += w * table[i][j].c;
        }
    }
    Ok(CovariantDerivative {
        components: v,
        base: at,
    })
}

/// `∇^ε_{ζ'} ζ'` at time `t`.
pub fn lc_cov_deriv(
    profile: &ThetaProfile,
    t: f64,
    eps: &EpsMetric,
    at: Point,
) -> Result<CovariantDerivative> {
    velocity_derivative(profile, t, at, &christoffel_table(eps))
}

/// `∇̄_{ζ'} ζ'` at time `t`.
pub fn tw_cov_deriv(profile: &ThetaProfile, t: f64, at: Point) -> Result<CovariantDerivative> {
    velocity_derivative(profile, t, at, &tw_table())
}

/// Phase-space state of the ε-geodesic flow: position and the covector's
/// ambient components `(px, py, pz)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlowState {
    pub point: Point,
    pub momentum: [f64; 3],
}

impl FlowState {
    /// Start at `point` with covector pairings `(h1, h2, h3)` on `(X1, X2, X3)`.
    pub fn from_frame(point: Point, h: [f64; 3]) -> Self {
        let pz = h[2];
        Self {
            point,
            momentum: [h[0] + 0.5 * point.y * pz, h[1] - 0.5 * point.x * pz, pz],
        }
    }

    /// Pairings of the covector with `(X1, X2, X3)`.
    pub fn frame_covector(&self) -> [f64; 3] {
        let [px, py, pz] = self.momentum;
        [
            px - 0.5 * self.point.y * pz,
            py + 0.5 * self.point.x * pz,
            pz,
        ]
    }

    /// `H = ½ (h1² + h2² + ε² h3²)`.
    pub fn energy(&self, eps: &EpsMetric) -> f64 {
        let h = self.frame_covector();
        0.5 * eps.covector_norm(&h).powi(2)
    }
}

fn flow_rhs(e2: f64, s: &FlowState) -> FlowState {
    let [h1, h2, pz] = s.frame_covector();
    let p = &s.point;
    FlowState {
        point: Point::new(h1, h2, -0.5 * p.y * h1 + 0.5 * p.x * h2 + e2 * pz),
        momentum: [-0.5 * pz * h2, 0.5 * pz * h1, 0.0],
    }
}

fn flow_axpy(s: &FlowState, k: &FlowState, a: f64) -> FlowState {
    FlowState {
        point: Point::new(
            s.point.x + a * k.point.x,
            s.point.y + a * k.point.y,
            s.point.z + a * k.point.z,
        ),
        momentum: [
            s.momentum[0] + a * k.momentum[0],
            s.momentum[1] + a * k.momentum[1],
            s.momentum[2] + a * k.momentum[2],
        ],
    }
}

/// Integrate Hamilton's equations for `H = ½ (h1² + h2² + ε² h3²)` with the
/// classical Runge–Kutta scheme; the last step is shortened to land on `t`.
pub fn eps_flow_state(eps: &EpsMetric, start: FlowState, t: f64, step: f64) -> Result<FlowState> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::NonPositiveStep(step));
    }
    let e2 = eps.epsilon() * eps.epsilon();
    let n = (t.abs() / step * (1.0 - 1e-12)).ceil() as usize;
    let mut s = start;
    if n == 0 {
        return Ok(s);
    }
    let dt = t / n as f64;
    for _ in 0..n {
        let k1 = flow_rhs(e2, &s);
        let k2 = flow_rhs(e2, &flow_axpy(&s, &k1, 0.5 * dt));
        let k3 = flow_rhs(e2, &flow_axpy(&s, &k2, 0.5 * dt));
        let k4 = flow_rhs(e2, &flow_axpy(&s, &k3, dt));
        s = FlowState {
            point: Point::new(
                s.point.x
                    + dt / 6.0 * (k1.point.x + 2.0 * k2.point.x + 2.0 * k3.point.x + k4.point.x),
                s.point.y
                    + dt / 6.0 * (k1.point.y + 2.0 * k2.point.y + 2.0 * k3.point.y + k4.point.y),
                s.point.z
                    + dt / 6.0 * (k1.point.z + 2.0 * k2.point.z + 2.0 * k3.point.z + k4.point.z),
            ),
            momentum: std::array::from_fn(|i| {
                s.momentum[i]
                    + dt / 6.0
                        * (k1.momentum[i]
                            + 2.0 * k2.momentum[i]
                            + 2.0 * k3.momentum[i]
                            + k4.momentum[i])
            }),
        };
    }
    Ok(s)
}

/// Endpoint of the ε-geodesic leaving `start` with frame covector `covector`
/// after time `t`.
pub fn eps_geodesic_flow(
    eps: &EpsMetric,
    start: Point,
    covector: [f64; 3],
    t: f64,
    step: f64,
) -> Result<Point> {
    Ok(eps_flow_state(eps, FlowState::from_frame(start, covector), t, step)?.point)
}

/// Iteration cap for the shooting Newton solver.
pub const SHOOTING_MAX_ITER: usize = 50;

/// Result of a converged shooting solve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShootingSolution {
    /// Frame covector at the start for a unit-time geodesic.
    pub covector: [f64; 3],
    pub length: f64,
    pub residual: f64,
    pub iterations: usize,
}

fn unit_time_steps(h: &[f64; 3]) -> f64 {
    // enough RK4 steps that the turning per step stays small
    let n = 400.0 + 200.0 * h[2].abs();
    1.0 / n.min(20_000.0)
}

fn shoot_residual(eps: &EpsMetric, h: &[f64; 3], target: &Point) -> Result<[f64; 3]> {
    let end = eps_geodesic_flow(eps, Point::origin(), *h, 1.0, unit_time_steps(h))?;
    Ok([end.x - target.x, end.y - target.y, end.z - target.z])
}

fn max_abs(v: &[f64; 3]) -> f64 {
    v.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

fn solve3(m: [[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let a = nalgebra::Matrix3::from_row_slice(&m.concat());
    let rhs = nalgebra::Vector3::from_row_slice(&b);
    a.lu().solve(&rhs).map(|x| [x[0], x[1], x[2]])
}

/// Newton iteration on the initial covector, from one initial guess.
pub fn shoot(
    eps: &EpsMetric,
    target: &Point,
    guess: [f64; 3],
    tol: f64,
) -> Result<ShootingSolution> {
    let scale = target
        .x
        .abs()
        .max(target.y.abs())
        .max(target.z.abs())
        .max(f64::MIN_POSITIVE);
    let threshold = tol * scale.max(1e-300);
    let mut h = guess;
    let mut f = shoot_residual(eps, &h, target)?;
    let mut res = max_abs(&f);
    for iter in 0..SHOOTING_MAX_ITER {
        if res <= threshold {
            return Ok(ShootingSolution {
                covector: h,
                length: eps.covector_norm(&h),
                residual: res,
                iterations: iter,
            });
        }
        let mut jac = [[0.0; 3]; 3];
        for j in 0..3 {
            let d = 1e-7 * h[j].abs().max(scale).max(1e-12);
            let mut hp = h;
            let mut hm = h;
            hp[j] += d;
            hm[j] -= d;
            let fp = shoot_residual(eps, &hp, target)?;
            let fm = shoot_residual(eps, &hm, target)?;
            for i in 0..3 {
                jac[i][j] = (fp[i] - fm[i]) / (2.0 * d);
            }
        }
        let Some(delta) = solve3(jac, f) else {
            break;
        };
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let trial = [
                h[0] - lambda * delta[0],
                h[1] - lambda * delta[1],
                h[2] - lambda * delta[2],
            ];
            let ft = shoot_residual(eps, &trial, target)?;
            let rt = max_abs(&ft);
            if rt < res || rt <= threshold {
                h = trial;
                f = ft;
                res = rt;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    if res <= threshold {
        return Ok(ShootingSolution {
            covector: h,
            length: eps.covector_norm(&h),
            residual: res,
            iterations: SHOOTING_MAX_ITER,
        });
    }
    Err(Error::NoConvergence {
        what: "geodesic shooting",
        iterations: SHOOTING_MAX_ITER,
        residual: res,
    })
}

/// Initial covectors tried by [`eps_distance`]: the straight segment and the
/// sub-Riemannian normal geodesic to the target.
pub fn shooting_guesses(target: &Point) -> Vec<[f64; 3]> {
    let mut guesses = vec![[target.x, target.y, 0.0]];
    let r2 = target.x * target.x + target.y * target.y;
    if r2 > 0.0 {
        if let Ok(u) = invert_psi(target.z / r2, DEFAULT_PSI_TOL) {
            let len = distance_from_origin(target);
            let theta0 = target.y.atan2(target.x) - u;
            let sr = [len * theta0.cos(), len * theta0.sin(), 2.0 * u];
            if sr.iter().all(|v| v.is_finite()) && sr != guesses[0] {
                guesses.push(sr);
            }
        }
    } else if target.z != 0.0 {
        // vertical target: a full loop of the sub-Riemannian circle
        let len = distance_from_origin(target);
        guesses.push([len, 0.0, 2.0 * std::f64::consts::PI * target.z.signum()]);
    }
    guesses
}

/// ε-Riemannian distance between nearby points by geodesic shooting.
///
/// Every guess from [`shooting_guesses`] is refined by Newton's method; the
/// shortest converged geodesic is returned.
pub fn eps_distance_solution(
    eps: &EpsMetric,
    p: &Point,
    q: &Point,
    tol: f64,
) -> Result<ShootingSolution> {
    if !(tol > 0.0) {
        return Err(Error::Invalid(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let target = p.inverse().mul(q);
    if target == Point::origin() {
        return Ok(ShootingSolution {
            covector: [0.0; 3],
            length: 0.0,
            residual: 0.0,
            iterations: 0,
        });
    }
    let mut best: Option<ShootingSolution> = None;
    let mut last_err = None;
    for guess in shooting_guesses(&target) {
        match shoot(eps, &target, guess, tol) {
            Ok(sol) => {
                if best.is_none_or(|b| sol.length < b.length) {
                    best = Some(sol);
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    best.ok_or_else(|| last_err.unwrap_or(Error::Invalid("no shooting guess".into())))
}

pub fn eps_distance(eps: &EpsMetric, p: &Point, q: &Point, tol: f64) -> Result<f64> {
    Ok(eps_distance_solution(eps, p, q, tol)?.length)
}

/// Default shooting tolerance, relative to the size of the target.
pub const DEFAULT_SHOOTING_TOL: f64 = 1e-13;

/// Closed-form ε-geodesic from the origin, used to cross-check the flow:
/// the projection follows a circle at speed `|(h1, h2)|` turning at rate
/// `h3`, and `z` gains the extra drift `ε² h3 t`.
pub fn eps_geodesic_closed_form(eps: &EpsMetric, covector: [f64; 3], t: f64) -> Point {
    let speed = covector[0].hypot(covector[1]);
    let e2 = eps.epsilon() * eps.epsilon();
    if speed == 0.0 {
        return Point::new(0.0, 0.0, e2 * covector[2] * t);
    }
    let g = GeodesicParams::new(covector[2] / speed, covector[1].atan2(covector[0]));
    let p = geodesic_point(&g, speed * t);
    Point::new(p.x, p.y, p.z + e2 * covector[2] * t)
}

/// Fit window and powers used for the quartic coefficient of `d_ε²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RiemannianFitConfig {
    pub t_samples: Vec<f64>,
    pub powers: Vec<u32>,
    pub step: f64,
    pub tol: f64,
}

impl RiemannianFitConfig {
    /// Default window `[ε/10, ε]` with 12 samples. The `t⁴` regime of
    /// `d_ε² − t²` only extends to `t` well below `√12 ε`, so the window has
    /// to shrink with `ε`.
    pub fn for_epsilon(eps: &EpsMetric) -> Self {
        Self::geometric(0.1 * eps.epsilon(), eps.epsilon(), 12)
    }

    /// `n` geometric samples on `[t_min, t_max]`.
    pub fn geometric(t_min: f64, t_max: f64, n: usize) -> Self {
        let ratio = (t_max / t_min).powf(1.0 / (n.max(2) - 1) as f64);
        Self {
            t_samples: (0..n).map(|i| t_min * ratio.powi(i as i32)).collect(),
            powers: vec![4, 5, 6],
            step: 1e-3,
            tol: DEFAULT_SHOOTING_TOL,
        }
    }
}

/// `|H(1) − H(0)|` along the unit-time ε-geodesic with the given initial
/// covector, at the step used by the shooting solver.
pub fn energy_drift(eps: &EpsMetric, covector: [f64; 3]) -> Result<f64> {
    let start = FlowState::from_frame(Point::origin(), covector);
    let end = eps_flow_state(eps, start, 1.0, unit_time_steps(&covector))?;
    Ok((end.energy(eps) - start.energy(eps)).abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RiemannianSample {
    pub t: f64,
    pub distance_sq: f64,
    pub shooting_residual: f64,
    pub energy_drift: f64,
}

/// `d_ε²(ζ(0), ζ(t))` along the curve leaving the origin, one shooting solve
/// per sample time.
pub fn eps_distance_sq_samples(
    profile: &ThetaProfile,
    eps: &EpsMetric,
    config: &RiemannianFitConfig,
) -> Result<Vec<RiemannianSample>> {
    config
        .t_samples
        .iter()
        .map(|&t| {
            let step = config.step.min(t / 50.0);
            let traj = integrate_curve(profile, t, step, Point::origin())?;
            let sol = eps_distance_solution(eps, &Point::origin(), &traj.end().point, config.tol)?;
            Ok(RiemannianSample {
                t,
                distance_sq: sol.length * sol.length,
                shooting_residual: sol.residual,
                energy_drift: energy_drift(eps, sol.covector)?,
            })
        })
        .collect()
}

/// Fit `t² + Σ c_p tᵖ` to `d_ε²` samples; the `t⁴` coefficient estimates
/// `−h(0)² / 12`.
pub fn fit_eps_samples(samples: &[RiemannianSample], powers: &[u32]) -> Result<FitReport> {
    let data: Vec<(f64, f64)> = samples.iter().map(|s| (s.t, s.distance_sq)).collect();
    fit_taylor(&data, &Polynomial::monomial(2, 1.0), powers)
}

/// Sample `d_ε²(ζ(0), ζ(t))` along the curve leaving the origin and fit
/// `t² + Σ c_p tᵖ`.
pub fn eps_expansion_check(
    profile: &ThetaProfile,
    eps: &EpsMetric,
    config: &RiemannianFitConfig,
) -> Result<FitReport> {
    fit_eps_samples(
        &eps_distance_sq_samples(profile, eps, config)?,
        &config.powers,
    )
}

/// Rational ε for exact table checks.
pub fn rational_epsilon(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `true` when every entry of the Koszul table for `i, j ∈ {1, 2}` equals the
/// closed-form table exactly.
pub fn koszul_matches_table(epsilon: &BigRational) -> bool {
    let k = koszul_levi_civita(epsilon);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let expected = |i: usize, j: usize| -> [BigRational; 3] {
        let z = BigRational::zero();
        match (i, j) {
            (0, 1) => [z.clone(), z, half.clone()],
            (1, 0) => [z.clone(), z, -half.clone()],
            _ => [z.clone(), z.clone(), z],
        }
    };
    (0..2).all(|i| (0..2).all(|j| k[i][j] == expected(i, j)))
}
