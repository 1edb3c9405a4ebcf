//! First-order consensus `ẋ = −L x` on an undirected graph.
//!
//! Every agent applies `uᵢ = Σⱼ aᵢⱼ (xⱼ − xᵢ)`. Because `1ᵀL = 0` the state
//! sum is conserved, and on a connected graph every agent converges to the
//! mean of the initial states. The disagreement `‖x − x̄·1‖₂` then decays like
//! `e^{−λ₂ t}`, so the time constant of the slowest mode is `1/λ₂`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::number::format_sig;
use crate::spectral::{self, eig_sym, ZERO_TOLERANCE};

/// Largest `dt·λ_max` accepted for forward Euler.
pub const EULER_STABILITY_FACTOR: f64 = 1.99;
/// Largest `dt·λ_max` accepted for RK4 (its stability interval on the
/// negative real axis ends near −2.785).
pub const RK4_STABILITY_FACTOR: f64 = 2.78;
/// Default step: `dt = DEFAULT_STEP_FACTOR / λ_max`.
pub const DEFAULT_STEP_FACTOR: f64 = 0.1;
/// Default horizon: `DEFAULT_HORIZON_FACTOR / λ₂`.
pub const DEFAULT_HORIZON_FACTOR: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Method {
    ForwardEuler,
    #[default]
    Rk4,
}

impl Method {
    pub fn stability_factor(self) -> f64 {
        match self {
            Method::ForwardEuler => EULER_STABILITY_FACTOR,
            Method::Rk4 => RK4_STABILITY_FACTOR,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Method::ForwardEuler => "euler",
            Method::Rk4 => "rk4",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "euler" | "forward-euler" => Ok(Method::ForwardEuler),
            "rk4" => Ok(Method::Rk4),
            other => Err(format!("unknown method `{other}` (expected euler or rk4)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub dt: f64,
    pub horizon: f64,
    pub method: Method,
}

impl SimConfig {
    /// RK4 with `dt = 0.1/λ_max` and horizon `20/λ₂` (or `20·dt` steps when
    /// the graph is disconnected or edgeless).
    pub fn recommended(g: &Graph) -> Result<Self> {
        let lambda_max = spectral::laplacian_spectral_radius(g)?;
        let dt = if lambda_max > 0.0 {
            DEFAULT_STEP_FACTOR / lambda_max
        } else {
            DEFAULT_STEP_FACTOR
        };
        let lambda2 = if g.vertex_count() >= 2 {
            spectral::algebraic_connectivity(g)?
        } else {
            0.0
        };
        let horizon = if lambda2 > ZERO_TOLERANCE {
            DEFAULT_HORIZON_FACTOR / lambda2
        } else {
            DEFAULT_HORIZON_FACTOR * dt
        };
        Ok(SimConfig {
            dt,
            horizon,
            method: Method::Rk4,
        })
    }

    fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::InvalidConfig(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.horizon >= self.dt && self.horizon.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "horizon {} must be finite and at least dt = {}",
                self.horizon, self.dt
            )));
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        ((self.horizon / self.dt) - 1e-9).ceil().max(1.0) as usize
    }
}

/// Largest stable step for `method` given `λ_max`; infinite for edgeless graphs.
pub fn stability_bound(method: Method, lambda_max: f64) -> f64 {
    if lambda_max > 0.0 {
        method.stability_factor() / lambda_max
    } else {
        f64::INFINITY
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    /// `states[step][agent]`.
    pub states: Vec<Vec<f64>>,
    /// Mean of the initial states.
    pub consensus_value: f64,
    /// `‖x(t) − consensus_value·1‖₂` per step.
    pub disagreement: Vec<f64>,
}

impl Trajectory {
    pub fn final_state(&self) -> &[f64] {
        self.states.last().expect("trajectory has at least one state")
    }

    /// CSV with header `t,x0,...,x{N-1},disagreement`, 9 significant digits.
    pub fn to_csv(&self) -> String {
        let n = self.states.first().map_or(0, Vec::len);
        let mut out = String::from("t");
        for i in 0..n {
            let _ = write!(out, ",x{i}");
        }
        out.push_str(",disagreement\n");
        for ((t, x), d) in self.times.iter().zip(&self.states).zip(&self.disagreement) {
            out.push_str(&format_sig(*t, 9));
            for v in x {
                out.push(',');
                out.push_str(&format_sig(*v, 9));
            }
            out.push(',');
            out.push_str(&format_sig(*d, 9));
            out.push('\n');
        }
        out
    }
}

fn disagreement(x: &[f64], mean: f64) -> f64 {
    x.iter().map(|v| (v - mean).powi(2)).sum::<f64>().sqrt()
}

/// Integrates `ẋ = −L x` from `x0` over `cfg.horizon`.
pub fn simulate(g: &Graph, x0: &[f64], cfg: &SimConfig) -> Result<Trajectory> {
    let n = g.vertex_count();
    if x0.len() != n {
        return Err(Error::StateLengthMismatch {
            expected: n,
            actual: x0.len(),
        });
    }
    cfg.validate()?;
    let lambda_max = spectral::laplacian_spectral_radius(g)?;
    let bound = stability_bound(cfg.method, lambda_max);
    if cfg.dt > bound {
        return Err(Error::Unstable {
            dt: cfg.dt,
            bound,
            suggested: DEFAULT_STEP_FACTOR / lambda_max,
        });
    }

    let l = g.laplacian();
    let dt = cfg.dt;
    let steps = cfg.steps();
    let consensus_value = if n == 0 {
        0.0
    } else {
        x0.iter().sum::<f64>() / n as f64
    };

    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut disagreements = Vec::with_capacity(steps + 1);
    let mut x = x0.to_vec();
    times.push(0.0);
    disagreements.push(disagreement(&x, consensus_value));
    states.push(x.clone());

    let mut k1 = vec![0.0; n];
    let mut k2 = vec![0.0; n];
    let mut k3 = vec![0.0; n];
    let mut k4 = vec![0.0; n];
    let mut tmp = vec![0.0; n];
    // f(x) = −L x
    let rhs = |x: &[f64], out: &mut [f64]| {
        l.mul_vec_into(x, out);
        out.iter_mut().for_each(|v| *v = -*v);
    };

    for step in 1..=steps {
        match cfg.method {
            Method::ForwardEuler => {
                rhs(&x, &mut k1);
                x.iter_mut().zip(&k1).for_each(|(xi, ki)| *xi += dt * ki);
            }
            Method::Rk4 => {
                rhs(&x, &mut k1);
                for i in 0..n {
                    tmp[i] = x[i] + 0.5 * dt * k1[i];
                }
                rhs(&tmp, &mut k2);
                for i in 0..n {
                    tmp[i] = x[i] + 0.5 * dt * k2[i];
                }
                rhs(&tmp, &mut k3);
                for i in 0..n {
                    tmp[i] = x[i] + dt * k3[i];
                }
                rhs(&tmp, &mut k4);
                for i in 0..n {
                    x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
                }
            }
        }
        times.push(step as f64 * dt);
        disagreements.push(disagreement(&x, consensus_value));
        states.push(x.clone());
    }

    Ok(Trajectory {
        times,
        states,
        consensus_value,
        disagreement: disagreements,
    })
}

/// Exact solution `x(t) = Σᵢ e^{−λᵢ t} (vᵢᵀ x0) vᵢ` at each time in `times`.
pub fn closed_form(g: &Graph, x0: &[f64], times: &[f64]) -> Result<Vec<Vec<f64>>> {
    if x0.len() != g.vertex_count() {
        return Err(Error::StateLengthMismatch {
            expected: g.vertex_count(),
            actual: x0.len(),
        });
    }
    let eig = eig_sym(&g.laplacian())?;
    let coeffs: Vec<f64> = eig
        .vectors
        .iter()
        .map(|v| v.iter().zip(x0).map(|(a, b)| a * b).sum())
        .collect();
    Ok(times
        .iter()
        .map(|&t| {
            let mut x = vec![0.0; x0.len()];
            for ((lambda, v), c) in eig.values.iter().zip(&eig.vectors).zip(&coeffs) {
                let w = c * (-lambda * t).exp();
                x.iter_mut().zip(v).for_each(|(xi, vi)| *xi += w * vi);
            }
            x
        })
        .collect())
}

/// Portion of the disagreement series used for the log-linear fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitWindow {
    /// The fit starts once disagreement is below this fraction of its initial value.
    pub start_fraction: f64,
    /// The fit stops once disagreement is below this fraction of its initial value.
    pub stop_fraction: f64,
    /// Minimum total decay (as a fraction of the initial value) required to fit at all.
    pub required_decay: f64,
}

impl Default for FitWindow {
    fn default() -> Self {
        FitWindow {
            start_fraction: 0.1,
            stop_fraction: 1e-8,
            required_decay: 1e-2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimeConstantEstimate {
    pub tau_measured: f64,
    /// `1/λ₂`.
    pub tau_predicted: f64,
    /// `|tau_measured − tau_predicted| / tau_predicted`.
    pub relative_error: f64,
    pub fiedler_value: f64,
    /// `(t_start, t_end)` of the fitted samples.
    pub fit_window: (f64, f64),
    pub fit_points: usize,
}

pub fn estimate_time_constant(traj: &Trajectory, g: &Graph) -> Result<TimeConstantEstimate> {
    estimate_time_constant_with(traj, g, &FitWindow::default())
}

/// Least-squares slope of `ln(disagreement)` against time over the tail window;
/// `tau_measured = −1/slope`.
pub fn estimate_time_constant_with(
    traj: &Trajectory,
    g: &Graph,
    window: &FitWindow,
) -> Result<TimeConstantEstimate> {
    let report = spectral::fiedler(g)?;
    if !report.is_connected() {
        return Err(Error::Disconnected(
            "disagreement does not decay to zero on a disconnected graph",
        ));
    }
    let d = &traj.disagreement;
    let d0 = d[0];
    if d0 <= 0.0 {
        return Err(Error::NoDisagreement);
    }
    let smallest = d.iter().copied().fold(f64::INFINITY, f64::min);
    if smallest > window.required_decay * d0 {
        return Err(Error::InsufficientDecay {
            achieved: smallest / d0,
        });
    }
    let start = d
        .iter()
        .position(|&x| x < window.start_fraction * d0)
        .ok_or(Error::InsufficientDecay {
            achieved: smallest / d0,
        })?;
    let end = d[start..]
        .iter()
        .position(|&x| x < window.stop_fraction * d0)
        .map_or(d.len(), |p| start + p);
    if end - start < 3 {
        return Err(Error::InsufficientDecay {
            achieved: smallest / d0,
        });
    }

    let ts = &traj.times[start..end];
    let ys: Vec<f64> = d[start..end].iter().map(|x| x.ln()).collect();
    let m = ts.len() as f64;
    let t_mean = ts.iter().sum::<f64>() / m;
    let y_mean = ys.iter().sum::<f64>() / m;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (t, y) in ts.iter().zip(&ys) {
        sxy += (t - t_mean) * (y - y_mean);
        sxx += (t - t_mean).powi(2);
    }
    let slope = sxy / sxx;
    if slope.is_nan() || slope >= 0.0 {
        return Err(Error::InsufficientDecay {
            achieved: smallest / d0,
        });
    }
    let tau_measured = -1.0 / slope;
    let tau_predicted = 1.0 / report.fiedler_value;
    Ok(TimeConstantEstimate {
        tau_measured,
        tau_predicted,
        relative_error: (tau_measured - tau_predicted).abs() / tau_predicted,
        fiedler_value: report.fiedler_value,
        fit_window: (ts[0], ts[ts.len() - 1]),
        fit_points: ts.len(),
    })
}

/// One input row of [`compare_scenarios`].
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub label: String,
    pub graph: Graph,
    pub x0: Vec<f64>,
    /// Analytical upper bound on `λ₂`, when the graph's gluing provenance is known.
    pub bound: Option<f64>,
    /// Integration settings; `None` uses [`SimConfig::recommended`].
    pub config: Option<SimConfig>,
}

impl Scenario {
    pub fn new(label: impl Into<String>, graph: Graph, x0: Vec<f64>) -> Self {
        Scenario {
            label: label.into(),
            graph,
            x0,
            bound: None,
            config: None,
        }
    }

    pub fn with_bound(mut self, bound: f64) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn with_config(mut self, config: SimConfig) -> Self {
        self.config = Some(config);
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioRow {
    pub label: String,
    pub fiedler_value: f64,
    pub bound: Option<f64>,
    pub tau_predicted: f64,
    pub tau_measured: f64,
    pub consensus_value: f64,
    pub trajectory: Trajectory,
}

fn run_scenario(s: &Scenario) -> Result<ScenarioRow> {
    let cfg = match s.config {
        Some(c) => c,
        None => SimConfig::recommended(&s.graph)?,
    };
    let trajectory = simulate(&s.graph, &s.x0, &cfg)?;
    let estimate = estimate_time_constant(&trajectory, &s.graph)?;
    Ok(ScenarioRow {
        label: s.label.clone(),
        fiedler_value: estimate.fiedler_value,
        bound: s.bound,
        tau_predicted: estimate.tau_predicted,
        tau_measured: estimate.tau_measured,
        consensus_value: trajectory.consensus_value,
        trajectory,
    })
}

/// Runs every scenario (concurrently) and returns one row per scenario in input order.
/// A failing scenario yields an `Err` row without affecting the others.
pub fn compare_scenarios(scenarios: &[Scenario]) -> Vec<Result<ScenarioRow>> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = scenarios
            .iter()
            .map(|s| scope.spawn(move || run_scenario(s)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scenario worker panicked"))
            .collect()
    })
}

/// Plain-text table of comparison rows; `scenarios` supplies labels for failed rows.
pub fn format_comparison(scenarios: &[Scenario], rows: &[Result<ScenarioRow>]) -> String {
    let mut out = format!(
        "{:<20} {:>10} {:>10} {:>10} {:>10} {:>12}\n",
        "scenario", "lambda2", "bound", "tau_pred", "tau_meas", "consensus"
    );
    for (s, row) in scenarios.iter().zip(rows) {
        match row {
            Ok(r) => {
                let bound = r.bound.map_or_else(|| "-".to_string(), |b| format!("{b:.4}"));
                let _ = writeln!(
                    out,
                    "{:<20} {:>10.4} {:>10} {:>10.4} {:>10.4} {:>12.6}",
                    r.label, r.fiedler_value, bound, r.tau_predicted, r.tau_measured, r.consensus_value
                );
            }
            Err(e) => {
                let _ = writeln!(out, "{:<20} error: {e}", s.label);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn constant_state_stays_constant() {
        let g = Graph::cycle(5);
        let cfg = SimConfig::recommended(&g).unwrap();
        let traj = simulate(&g, &[2.5; 5], &cfg).unwrap();
        for x in &traj.states {
            assert!(x.iter().all(|&v| (v - 2.5).abs() < 1e-14));
        }
        assert!(matches!(
            estimate_time_constant(&traj, &g),
            Err(Error::NoDisagreement)
        ));
    }

    #[test]
    fn p3_converges_to_mean() {
        let g = Graph::path(3);
        let cfg = SimConfig::recommended(&g).unwrap();
        let traj = simulate(&g, &[5.0, -3.0, 4.0], &cfg).unwrap();
        assert_eq!(traj.consensus_value, 2.0);
        assert_eq!(traj.states[0], vec![5.0, -3.0, 4.0]);
        for v in traj.final_state() {
            assert_abs_diff_eq!(*v, 2.0, epsilon = 1e-6);
        }
    }

    #[test]
    fn k2_time_constant_is_half() {
        let g = Graph::path(2);
        let cfg = SimConfig {
            dt: 0.001,
            horizon: 12.0,
            method: Method::Rk4,
        };
        let traj = simulate(&g, &[1.0, -1.0], &cfg).unwrap();
        let est = estimate_time_constant(&traj, &g).unwrap();
        assert_abs_diff_eq!(est.tau_predicted, 0.5, epsilon = 1e-12);
        assert!((est.tau_measured - 0.5).abs() / 0.5 < 0.01);
    }

    #[test]
    fn unstable_euler_step_rejected() {
        let g = Graph::path(2); // λ_max = 2
        let cfg = SimConfig {
            dt: 1.0,
            horizon: 10.0,
            method: Method::ForwardEuler,
        };
        match simulate(&g, &[1.0, 0.0], &cfg) {
            Err(Error::Unstable { bound, suggested, .. }) => {
                assert_abs_diff_eq!(bound, 0.995, epsilon = 1e-12);
                assert_abs_diff_eq!(suggested, 0.05, epsilon = 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_inputs_rejected() {
        let g = Graph::path(3);
        let cfg = SimConfig::recommended(&g).unwrap();
        assert!(matches!(
            simulate(&g, &[1.0], &cfg),
            Err(Error::StateLengthMismatch { expected: 3, actual: 1 })
        ));
        let bad = SimConfig { dt: -1.0, ..cfg };
        assert!(matches!(simulate(&g, &[1.0; 3], &bad), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn short_horizon_is_insufficient() {
        let g = Graph::path(3);
        let cfg = SimConfig {
            dt: 0.01,
            horizon: 0.5,
            method: Method::Rk4,
        };
        let traj = simulate(&g, &[5.0, -3.0, 4.0], &cfg).unwrap();
        assert!(matches!(
            estimate_time_constant(&traj, &g),
            Err(Error::InsufficientDecay { .. })
        ));
    }

    #[test]
    fn disconnected_graph_rejected_for_fit() {
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        let cfg = SimConfig {
            dt: 0.01,
            horizon: 5.0,
            method: Method::Rk4,
        };
        let traj = simulate(&g, &[1.0, 0.0, 3.0, 0.0], &cfg).unwrap();
        assert!(matches!(
            estimate_time_constant(&traj, &g),
            Err(Error::Disconnected(_))
        ));
    }

    #[test]
    fn csv_layout() {
        let g = Graph::path(2);
        let cfg = SimConfig {
            dt: 0.5,
            horizon: 0.5,
            method: Method::ForwardEuler,
        };
        let csv = simulate(&g, &[1.0, -1.0], &cfg).unwrap().to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "t,x0,x1,disagreement");
        assert_eq!(lines[1], "0,1,-1,1.41421356");
        // one Euler step of size 0.5 collapses K2 to consensus
        assert_eq!(lines[2], "0.5,0,0,0");
    }

    #[test]
    fn comparison_keeps_order_and_isolates_errors() {
        let ok = Scenario::new("p3", Graph::path(3), vec![5.0, -3.0, 4.0]);
        let bad = Scenario::new("bad", Graph::path(3), vec![1.0]);
        let k2 = Scenario::new("k2", Graph::path(2), vec![1.0, 0.0]).with_bound(2.0);
        let scenarios = [ok, bad, k2];
        let rows = compare_scenarios(&scenarios);
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].as_ref().unwrap().label, "p3");
        assert!(rows[1].is_err());
        assert_eq!(rows[2].as_ref().unwrap().bound, Some(2.0));
        let table = format_comparison(&scenarios, &rows);
        assert_eq!(table.lines().count(), 4);
        assert!(table.lines().nth(2).unwrap().starts_with("bad "));
    }
}
