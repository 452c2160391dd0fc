//! Floating-point integration of the Hamiltonian flow on the orbit
//! `X.X = 1`, `X.M = 0`, with conservation monitoring for `H_n`, `I_n`,
//! `C1` and `C2`.
//!
//! The vector field is derived exactly (see [`crate::e3::hamiltonian_vector_field`])
//! and then compiled to flat `f64` term lists. Time stepping is the
//! Dormand–Prince 5(4) pair with a PI step-size controller.

use std::io::Write;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::e3::{hamiltonian_vector_field, random_rational, rng_for, ConstrainedPoint};
use crate::error::VerifyError;
use crate::par::{self, Execution};
use crate::poly::{Polynomial, Rational, Var};
use crate::potentials::{build_system, Params};

/// Relative drift is measured against `max(|value at t = 0|, DRIFT_FLOOR)`.
pub const DRIFT_FLOOR: f64 = 1e-12;

/// Tolerance on `|X.X - 1|` and `|X.M|` for an initial condition.
pub const ORBIT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, thiserror::Error)]
pub enum DynamicsError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("initial point is off the orbit: |C1 - 1| = {c1_defect:e}, |C2| = {c2_defect:e}")]
    OffOrbit { c1_defect: f64, c2_defect: f64 },
    #[error("cannot project a point with X = 0")]
    DegenerateProjection,
    #[error("step size {h:e} underflowed at t = {t}")]
    StepUnderflow { t: f64, h: f64 },
    #[error("state became non-finite at t = {t}")]
    NonFinite { t: f64 },
    #[error("polynomial involves {0}, which cannot be compiled numerically")]
    NotNumeric(&'static str),
    #[error(transparent)]
    Symbolic(Box<VerifyError>),
}

impl From<VerifyError> for DynamicsError {
    fn from(e: VerifyError) -> Self {
        DynamicsError::Symbolic(Box::new(e))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    #[serde(rename = "X")]
    pub x: [f64; 3],
    #[serde(rename = "M")]
    pub m: [f64; 3],
}

impl PhasePoint {
    pub fn new(x: [f64; 3], m: [f64; 3]) -> Self {
        PhasePoint { x, m }
    }

    pub fn to_array(&self) -> [f64; 6] {
        [self.x[0], self.x[1], self.x[2], self.m[0], self.m[1], self.m[2]]
    }

    pub fn from_array(s: &[f64; 6]) -> Self {
        PhasePoint {
            x: [s[0], s[1], s[2]],
            m: [s[3], s[4], s[5]],
        }
    }

    pub fn c1(&self) -> f64 {
        dot(&self.x, &self.x)
    }

    pub fn c2(&self) -> f64 {
        dot(&self.x, &self.m)
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }

    /// Euclidean distance in `R^6`.
    pub fn distance(&self, other: &PhasePoint) -> f64 {
        let (a, b) = (self.to_array(), other.to_array());
        a.iter().zip(&b).map(|(u, v)| (u - v) * (u - v)).sum::<f64>().sqrt()
    }

    fn check_orbit(&self) -> Result<(), DynamicsError> {
        let c1_defect = (self.c1() - 1.0).abs();
        let c2_defect = self.c2().abs();
        if c1_defect <= ORBIT_TOLERANCE && c2_defect <= ORBIT_TOLERANCE {
            Ok(())
        } else {
            Err(DynamicsError::OffOrbit { c1_defect, c2_defect })
        }
    }
}

impl From<&ConstrainedPoint> for PhasePoint {
    fn from(p: &ConstrainedPoint) -> Self {
        let (x, m) = p.to_f64();
        PhasePoint { x, m }
    }
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Normalizes `X` and removes the component of `M` along the new `X`.
pub fn project(p: &PhasePoint) -> Result<PhasePoint, DynamicsError> {
    let norm = p.c1().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return Err(DynamicsError::DegenerateProjection);
    }
    let x = p.x.map(|v| v / norm);
    let xm = dot(&x, &p.m);
    let m = [p.m[0] - xm * x[0], p.m[1] - xm * x[1], p.m[2] - xm * x[2]];
    Ok(PhasePoint { x, m })
}

/// A polynomial in `X` and `M` with `f64` coefficients.
#[derive(Clone, Debug, Default)]
pub struct CompiledPoly {
    terms: Vec<(f64, [u16; 6])>,
    max_exp: usize,
}

type PowerTable = [Vec<f64>; 6];

impl CompiledPoly {
    /// Fails if `p` still mentions a symbolic parameter.
    pub fn compile(p: &Polynomial) -> Result<Self, DynamicsError> {
        if !p.only_uses(|v| !v.is_param()) {
            return Err(DynamicsError::NotNumeric("symbolic parameters"));
        }
        let order = [Var::X1, Var::X2, Var::X3, Var::M1, Var::M2, Var::M3];
        let mut max_exp = 0;
        let terms = p
            .terms()
            .map(|(m, c)| {
                let e = order.map(|v| m.exponent(v));
                max_exp = max_exp.max(*e.iter().max().unwrap_or(&0) as usize);
                (c.to_f64().unwrap_or(f64::NAN), e)
            })
            .collect();
        Ok(CompiledPoly { terms, max_exp })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn eval_with(&self, table: &PowerTable) -> f64 {
        self.terms.iter().fold(0.0, |acc, (c, e)| {
            let mut t = *c;
            for (k, &ek) in e.iter().enumerate() {
                if ek > 0 {
                    t *= table[k][ek as usize];
                }
            }
            acc + t
        })
    }

    pub fn eval(&self, p: &PhasePoint) -> f64 {
        self.eval_with(&power_table(p, self.max_exp))
    }
}

fn power_table(p: &PhasePoint, max_exp: usize) -> PowerTable {
    p.to_array().map(|v| {
        let mut row = Vec::with_capacity(max_exp + 1);
        let mut acc = 1.0;
        row.push(acc);
        for _ in 0..max_exp {
            acc *= v;
            row.push(acc);
        }
        row
    })
}

/// `(Xdot, Mdot)` compiled for numeric evaluation.
#[derive(Clone, Debug)]
pub struct CompiledRhs {
    components: [CompiledPoly; 6],
    max_exp: usize,
}

impl CompiledRhs {
    pub fn from_hamiltonian(h: &Polynomial) -> Result<Self, DynamicsError> {
        let field = hamiltonian_vector_field(h);
        let mut comps = Vec::with_capacity(6);
        for c in field.components() {
            comps.push(CompiledPoly::compile(c)?);
        }
        let components: [CompiledPoly; 6] = comps.try_into().expect("six components");
        let max_exp = components.iter().map(|c| c.max_exp).max().unwrap_or(0);
        Ok(CompiledRhs { components, max_exp })
    }

    pub fn eval(&self, p: &PhasePoint) -> [f64; 6] {
        let table = power_table(p, self.max_exp);
        std::array::from_fn(|k| self.components[k].eval_with(&table))
    }
}

/// Vector field of `H_n` with numeric `a`.
pub fn compile_rhs(n: u32, a: [f64; 3]) -> Result<CompiledRhs, DynamicsError> {
    Ok(CompiledSystem::new(n, a)?.rhs)
}

/// Field plus the monitored quantities for one `(n, a)`.
#[derive(Clone, Debug)]
pub struct CompiledSystem {
    pub rhs: CompiledRhs,
    pub h: CompiledPoly,
    pub i: CompiledPoly,
}

impl CompiledSystem {
    pub fn new(n: u32, a: [f64; 3]) -> Result<Self, DynamicsError> {
        if n == 0 {
            return Err(DynamicsError::InvalidConfig("n must be at least 1".into()));
        }
        let params = Params::from_f64(a).ok_or_else(|| DynamicsError::InvalidConfig("a must be finite".into()))?;
        let sys = build_system(n, &params)?;
        Ok(CompiledSystem {
            rhs: CompiledRhs::from_hamiltonian(&sys.h)?,
            h: CompiledPoly::compile(&sys.h)?,
            i: CompiledPoly::compile(&sys.i)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub n: u32,
    pub a: [f64; 3],
    pub t_end: f64,
    pub rtol: f64,
    pub atol: f64,
    pub project_every_step: bool,
    pub sample_interval: f64,
    pub seed: u64,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            n: 1,
            a: [1.0, 2.0, 3.0],
            t_end: 10.0,
            rtol: 1e-10,
            atol: 1e-10,
            project_every_step: true,
            sample_interval: 0.1,
            seed: 0,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), DynamicsError> {
        let bad = |msg: &str| Err(DynamicsError::InvalidConfig(msg.into()));
        if self.n == 0 {
            return bad("n must be at least 1");
        }
        if !self.a.iter().all(|v| v.is_finite()) {
            return bad("a must be finite");
        }
        if !(self.t_end.is_finite() && self.t_end >= 0.0) {
            return bad("t_end must be finite and non-negative");
        }
        for (name, tol) in [("rtol", self.rtol), ("atol", self.atol)] {
            if !(tol > 0.0 && tol < 1.0) {
                return Err(DynamicsError::InvalidConfig(format!("{name} must lie in (0, 1)")));
            }
        }
        if !(self.sample_interval.is_finite() && self.sample_interval > 0.0) {
            return bad("sample_interval must be positive");
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub t: f64,
    pub point: PhasePoint,
    #[serde(rename = "H")]
    pub h: f64,
    #[serde(rename = "I")]
    pub i: f64,
    #[serde(rename = "C1")]
    pub c1: f64,
    #[serde(rename = "C2")]
    pub c2: f64,
}

impl Sample {
    fn rel_dh(&self, first: &Sample) -> f64 {
        rel_diff(self.h, first.h)
    }

    fn rel_di(&self, first: &Sample) -> f64 {
        rel_diff(self.i, first.i)
    }
}

fn rel_diff(value: f64, reference: f64) -> f64 {
    (value - reference).abs() / reference.abs().max(DRIFT_FLOOR)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Drift {
    pub max_rel_dh: f64,
    pub max_rel_di: f64,
    pub max_abs_dc1: f64,
    pub max_abs_dc2: f64,
}

impl Drift {
    /// Ledger over `samples`, relative to the first one.
    pub fn from_samples(samples: &[Sample]) -> Drift {
        let Some(first) = samples.first() else {
            return Drift::default();
        };
        samples.iter().fold(Drift::default(), |d, s| Drift {
            max_rel_dh: d.max_rel_dh.max(s.rel_dh(first)),
            max_rel_di: d.max_rel_di.max(s.rel_di(first)),
            max_abs_dc1: d.max_abs_dc1.max((s.c1 - first.c1).abs()),
            max_abs_dc2: d.max_abs_dc2.max((s.c2 - first.c2).abs()),
        })
    }

    /// Larger of the two relative energy-type drifts.
    pub fn max_rel(&self) -> f64 {
        self.max_rel_dh.max(self.max_rel_di)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub config: SimConfig,
    pub samples: Vec<Sample>,
    pub drift: Drift,
    pub steps_accepted: usize,
    pub steps_rejected: usize,
}

impl Trajectory {
    pub fn initial(&self) -> &PhasePoint {
        &self.samples[0].point
    }

    pub fn final_point(&self) -> &PhasePoint {
        &self.samples.last().expect("trajectory has at least one sample").point
    }

    /// Largest `|C1 - 1|` and `|C2|` over the samples.
    pub fn max_orbit_defect(&self) -> (f64, f64) {
        self.samples.iter().fold((0.0f64, 0.0f64), |(a, b), s| {
            (a.max((s.c1 - 1.0).abs()), b.max(s.c2.abs()))
        })
    }

    /// One CSV row per sample with columns
    /// `t,X1,X2,X3,M1,M2,M3,H,I,C1,C2,dH_rel,dI_rel`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "t,X1,X2,X3,M1,M2,M3,H,I,C1,C2,dH_rel,dI_rel")?;
        let Some(first) = self.samples.first() else {
            return Ok(());
        };
        for s in &self.samples {
            let p = &s.point;
            let row = [
                s.t,
                p.x[0],
                p.x[1],
                p.x[2],
                p.m[0],
                p.m[1],
                p.m[2],
                s.h,
                s.i,
                s.c1,
                s.c2,
                s.rel_dh(first),
                s.rel_di(first),
            ];
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("CSV is ASCII")
    }
}

// Dormand–Prince 5(4) tableau.
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// Fifth-order weights minus embedded fourth-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 10.0;
const PI_BETA: f64 = 0.04;
const PI_ALPHA: f64 = 0.2 - 0.75 * PI_BETA;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Direction {
    Forward,
    Backward,
}

struct Stepper<'a> {
    rhs: &'a CompiledRhs,
    sign: f64,
    rtol: f64,
    atol: f64,
}

impl Stepper<'_> {
    fn f(&self, y: &[f64; 6]) -> [f64; 6] {
        let d = self.rhs.eval(&PhasePoint::from_array(y));
        d.map(|v| self.sign * v)
    }

    /// One trial step from `y` (with derivative `k1`) of size `h`;
    /// returns the new state, its derivative and the scaled error norm.
    fn trial(&self, y: &[f64; 6], k1: &[f64; 6], h: f64) -> ([f64; 6], [f64; 6], f64) {
        let mut k = [[0.0; 6]; 7];
        k[0] = *k1;
        let mut y_new = *y;
        for s in 1..7 {
            let mut ys = *y;
            for (j, kj) in k.iter().enumerate().take(s) {
                let a = A[s][j];
                if a != 0.0 {
                    for c in 0..6 {
                        ys[c] += h * a * kj[c];
                    }
                }
            }
            k[s] = self.f(&ys);
            if s == 6 {
                y_new = ys;
            }
        }
        let mut acc = 0.0;
        for c in 0..6 {
            let err: f64 = h * (0..7).map(|s| E[s] * k[s][c]).sum::<f64>();
            let scale = self.atol + self.rtol * y[c].abs().max(y_new[c].abs());
            acc += (err / scale).powi(2);
        }
        (y_new, k[6], (acc / 6.0).sqrt())
    }

    fn initial_step(&self, y: &[f64; 6], f0: &[f64; 6], span: f64) -> f64 {
        let norm = |v: &[f64; 6]| {
            let s: f64 = (0..6)
                .map(|c| (v[c] / (self.atol + self.rtol * y[c].abs())).powi(2))
                .sum();
            (s / 6.0).sqrt()
        };
        let (d0, d1) = (norm(y), norm(f0));
        let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
        h0.min(span)
    }
}

fn sample_of(sys: &CompiledSystem, t: f64, p: PhasePoint) -> Sample {
    Sample {
        t,
        point: p,
        h: sys.h.eval(&p),
        i: sys.i.eval(&p),
        c1: p.c1(),
        c2: p.c2(),
    }
}

fn run(sys: &CompiledSystem, cfg: &SimConfig, p0: PhasePoint, dir: Direction) -> Result<Trajectory, DynamicsError> {
    cfg.validate()?;
    if !p0.is_finite() {
        return Err(DynamicsError::NonFinite { t: 0.0 });
    }
    p0.check_orbit()?;
    let stepper = Stepper {
        rhs: &sys.rhs,
        sign: if dir == Direction::Forward { 1.0 } else { -1.0 },
        rtol: cfg.rtol,
        atol: cfg.atol,
    };
    let t_end = cfg.t_end;
    let mut samples = vec![sample_of(sys, 0.0, p0)];
    let mut accepted = 0;
    let mut rejected = 0;
    if t_end > 0.0 {
        let h_min = 1e-14 * t_end;
        let mut y = p0.to_array();
        let mut k1 = stepper.f(&y);
        let mut t = 0.0;
        let mut h = stepper.initial_step(&y, &k1, t_end);
        let mut err_prev: f64 = 1e-4;
        let mut just_rejected = false;
        let mut next_index: u64 = 1;
        let sample_time = |k: u64| (k as f64 * cfg.sample_interval).min(t_end);
        while t < t_end {
            let target = sample_time(next_index);
            let mut h_try = h.min(target - t);
            if target - t - h_try <= 1e-12 * target.abs().max(1.0) {
                h_try = target - t;
            }
            let last_to_target = h_try >= target - t;
            let (y_new, k_new, err) = stepper.trial(&y, &k1, h_try);
            if !err.is_finite() || !y_new.iter().all(|v| v.is_finite()) {
                if h_try <= h_min {
                    return Err(DynamicsError::NonFinite { t });
                }
                h = h_try * MIN_FACTOR;
                rejected += 1;
                just_rejected = true;
                continue;
            }
            if err <= 1.0 {
                accepted += 1;
                t = if last_to_target { target } else { t + h_try };
                y = y_new;
                k1 = k_new;
                if cfg.project_every_step {
                    y = project(&PhasePoint::from_array(&y))?.to_array();
                    k1 = stepper.f(&y);
                }
                let mut factor = SAFETY * err.max(1e-10).powf(-PI_ALPHA) * err_prev.powf(PI_BETA);
                factor = factor.clamp(MIN_FACTOR, MAX_FACTOR);
                if just_rejected {
                    factor = factor.min(1.0);
                }
                // Do not let a short hop to a sample time shrink the step.
                h = if last_to_target {
                    h.max(h_try * factor)
                } else {
                    h_try * factor
                };
                err_prev = err.max(1e-4);
                just_rejected = false;
                if last_to_target {
                    samples.push(sample_of(sys, t, PhasePoint::from_array(&y)));
                    next_index += 1;
                }
            } else {
                rejected += 1;
                h = h_try * (SAFETY * err.powf(-PI_ALPHA)).max(MIN_FACTOR);
                just_rejected = true;
                if h < h_min {
                    return Err(DynamicsError::StepUnderflow { t, h });
                }
            }
        }
    }
    let drift = Drift::from_samples(&samples);
    Ok(Trajectory {
        config: cfg.clone(),
        samples,
        drift,
        steps_accepted: accepted,
        steps_rejected: rejected,
    })
}

/// Integrates `cfg.n`'s flow from `p0` over `[0, cfg.t_end]`.
pub fn integrate(cfg: &SimConfig, p0: &PhasePoint) -> Result<Trajectory, DynamicsError> {
    let sys = CompiledSystem::new(cfg.n, cfg.a)?;
    integrate_compiled(&sys, cfg, p0)
}

pub fn integrate_compiled(sys: &CompiledSystem, cfg: &SimConfig, p0: &PhasePoint) -> Result<Trajectory, DynamicsError> {
    run(sys, cfg, *p0, Direction::Forward)
}

/// Integrates the reversed field `-X_H` from `p0`; sample times still run
/// from `0` to `t_end`.
pub fn integrate_backward(sys: &CompiledSystem, cfg: &SimConfig, p0: &PhasePoint) -> Result<Trajectory, DynamicsError> {
    run(sys, cfg, *p0, Direction::Backward)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TimeReversal {
    /// `|p(t_end)|` distance between the run and a reference run at
    /// one hundredth of the tolerances.
    pub forward_error: f64,
    /// Largest relative drift of `H_n`, `I_n` on the forward run.
    pub invariant_drift: f64,
    /// Distance from `p0` after integrating forward and back again.
    pub return_error: f64,
    pub returned: PhasePoint,
}

impl TimeReversal {
    /// Whether the round trip lands within `factor` times the forward error.
    pub fn within(&self, factor: f64) -> bool {
        self.return_error <= factor * self.forward_error
    }
}

/// Runs forward to `t_end` and back, measuring how far from `p0` the round
/// trip lands, and estimates the forward error from a reference run with
/// tolerances divided by 100 (floored at `1e-14`).
pub fn time_reversal(sys: &CompiledSystem, cfg: &SimConfig, p0: &PhasePoint) -> Result<TimeReversal, DynamicsError> {
    let fwd = integrate_compiled(sys, cfg, p0)?;
    let reference_cfg = SimConfig {
        rtol: (cfg.rtol / 100.0).max(1e-14),
        atol: (cfg.atol / 100.0).max(1e-14),
        ..cfg.clone()
    };
    let reference = integrate_compiled(sys, &reference_cfg, p0)?;
    let back = integrate_backward(sys, cfg, fwd.final_point())?;
    let returned = *back.final_point();
    Ok(TimeReversal {
        forward_error: fwd.final_point().distance(reference.final_point()),
        invariant_drift: fwd.drift.max_rel(),
        return_error: returned.distance(p0),
        returned,
    })
}

/// Initial condition for `seed`: a rational orbit point from the
/// stereographic construction, with `W` scaled into `[-1, 1]^3` so that
/// `|M|` is of order one.
pub fn initial_condition(seed: u64) -> PhasePoint {
    let mut rng = rng_for(seed, 0);
    let p = random_rational(&mut rng);
    let q = random_rational(&mut rng);
    let hundred = Rational::from_integer(100.into());
    let w: [Rational; 3] = std::array::from_fn(|_| {
        Rational::new(rand::Rng::gen_range(&mut rng, -100i64..=100).into(), 1.into()) / &hundred
    });
    let point = ConstrainedPoint::from_stereographic(&p, &q, &w);
    let pp = PhasePoint::from(&point);
    // Rounding can leave a defect of a few ulps; snap back onto the orbit.
    project(&pp).unwrap_or(pp)
}

/// One trajectory per seed, each from [`initial_condition`], in seed order.
pub fn integrate_batch(cfg: &SimConfig, seeds: &[u64], exec: Execution) -> Result<Vec<Trajectory>, DynamicsError> {
    let sys = CompiledSystem::new(cfg.n, cfg.a)?;
    par::map_slice(seeds, exec, |&seed| {
        let cfg = SimConfig { seed, ..cfg.clone() };
        integrate_compiled(&sys, &cfg, &initial_condition(seed))
    })
    .into_iter()
    .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DriftThresholds {
    pub rel_h: f64,
    pub rel_i: f64,
    pub abs_c1: f64,
    pub abs_c2: f64,
}

impl Default for DriftThresholds {
    fn default() -> Self {
        DriftThresholds {
            rel_h: 1e-8,
            rel_i: 1e-8,
            abs_c1: 1e-10,
            abs_c2: 1e-10,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DriftReport {
    pub status: String,
    pub samples: usize,
    pub drift: Drift,
    pub max_abs_c1_defect: f64,
    pub max_abs_c2: f64,
    pub thresholds: DriftThresholds,
    pub steps_accepted: usize,
    pub steps_rejected: usize,
}

impl DriftReport {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

/// Recomputes the drift ledger from the samples and checks it against
/// `thresholds`; `|C1 - 1|` and `|C2|` are checked at every sample.
pub fn drift_report(tr: &Trajectory, thresholds: &DriftThresholds) -> DriftReport {
    let drift = Drift::from_samples(&tr.samples);
    let (c1_defect, c2_abs) = tr.max_orbit_defect();
    let ok = drift.max_rel_dh <= thresholds.rel_h
        && drift.max_rel_di <= thresholds.rel_i
        && c1_defect <= thresholds.abs_c1
        && c2_abs <= thresholds.abs_c2;
    DriftReport {
        status: if ok { "pass" } else { "fail" }.into(),
        samples: tr.samples.len(),
        drift,
        max_abs_c1_defect: c1_defect,
        max_abs_c2: c2_abs,
        thresholds: *thresholds,
        steps_accepted: tr.steps_accepted,
        steps_rejected: tr.steps_rejected,
    }
}
