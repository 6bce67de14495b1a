//! Monte Carlo check of the integral representation
//! `f(ζ) = (1/C) ∫_{Γ(ρ)} f(z) ω(z - ζ)`.
//!
//! The cycle `Γ(ρ) = {W_m(z) = ρ_m}` is parametrized in moment-angle
//! coordinates `z_j = √r_j e^{iθ_j}`: `r` runs over the polytope
//! `P(ρ) = {r ≥ 0, M r = ρ}`, described by its `n` free coordinates, and `θ`
//! over the torus `[0, 2π)^d`. The pullback of `ω` to these `n + d`
//! parameters is a sum of Jacobian determinants, one per term of `h`.

use std::f64::consts::PI;
use std::fmt::Debug;

use num_complex::Complex;
use num_traits::{Float, FromPrimitive, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernel::KernelReport;
use crate::linalg::{det, rref, solve_in_basis};
use crate::scalar::Field;
use crate::Rational;

/// Samples with some `r_j` below this are dropped.
pub const BOUNDARY_EPS: f64 = 1e-12;
/// Samples with `|g(w)|` below this fraction of the scale of `g` on the
/// cycle are dropped.
pub const G_VANISH_REL: f64 = 1e-14;
/// Above this rejected fraction the g-vanishing policy raises a warning.
pub const G_REJECTION_WARN_FRACTION: f64 = 1e-3;
/// Floor of the denominator of the relative error.
pub const RELATIVE_ERROR_FLOOR: f64 = 1e-12;
pub const DEFAULT_WORKERS: usize = 8;

const FEASIBILITY_TOL: f64 = 1e-9;

/// Floating-point scalar of the verifier.
pub trait Real: Field + Float + FromPrimitive + Debug + Send + Sync + 'static {
    /// Uniform sample in `[0, 1)`.
    fn sample_unit<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

impl Real for f32 {
    fn sample_unit<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.gen::<f32>()
    }
}

impl Real for f64 {
    fn sample_unit<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.gen::<f64>()
    }
}

fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("representable constant")
}

fn rat<T: Real>(x: &Rational) -> T {
    lit(x.to_f64().unwrap_or(f64::NAN))
}

/// Parametrization of `Γ(ρ)` by free polytope coordinates and angles.
#[derive(Debug, Clone, PartialEq)]
pub struct CycleSpec<T> {
    pub rho: Vec<T>,
    /// Pivot columns `B` of the RREF of `M`, one per relation.
    pub pivots: Vec<usize>,
    /// Free columns `F`, `n` of them.
    pub free: Vec<usize>,
    /// `r_{B_k} = offset[k] - Σ_f slope[k][f] r_{F_f}`.
    pub offset: Vec<T>,
    pub slope: Vec<Vec<T>>,
    /// Bounding box of the free coordinates.
    pub lower: Vec<T>,
    pub upper: Vec<T>,
    /// Vertices of `P(ρ)` in full `r` coordinates.
    pub vertices: Vec<Vec<T>>,
}

impl<T: Real> CycleSpec<T> {
    pub fn d(&self) -> usize {
        self.pivots.len() + self.free.len()
    }

    /// Number of integration parameters, `n + d`.
    pub fn parameter_dim(&self) -> usize {
        self.free.len() + self.d()
    }

    /// Full `r` from the free coordinates.
    pub fn radii(&self, free_coords: &[T]) -> Vec<T> {
        let mut r = vec![T::zero(); self.d()];
        for (&j, &x) in self.free.iter().zip(free_coords) {
            r[j] = x;
        }
        for (k, &b) in self.pivots.iter().enumerate() {
            let mut v = self.offset[k];
            for (s, &x) in self.slope[k].iter().zip(free_coords) {
                v = v - *s * x;
            }
            r[b] = v;
        }
        r
    }

    /// `∂r_j / ∂r_{F_f}` as a `d x n` matrix.
    pub fn radius_jacobian(&self) -> Vec<Vec<T>> {
        let n = self.free.len();
        let mut jac = vec![vec![T::zero(); n]; self.d()];
        for (f, &j) in self.free.iter().enumerate() {
            jac[j][f] = T::one();
        }
        for (k, &b) in self.pivots.iter().enumerate() {
            for f in 0..n {
                jac[b][f] = -self.slope[k][f];
            }
        }
        jac
    }

    pub fn box_volume(&self) -> T {
        self.lower
            .iter()
            .zip(&self.upper)
            .fold(T::one(), |acc, (&lo, &hi)| acc * (hi - lo))
    }
}

/// Constraints `a·x <= b` on the free coordinates: `x_f >= 0` and `r_B >= 0`.
fn constraints<T: Real>(slope: &[Vec<T>], offset: &[T], n: usize) -> Vec<(Vec<T>, T)> {
    let mut out = Vec::with_capacity(n + slope.len());
    for f in 0..n {
        let mut a = vec![T::zero(); n];
        a[f] = -T::one();
        out.push((a, T::zero()));
    }
    for (s, &o) in slope.iter().zip(offset) {
        out.push((s.clone(), o));
    }
    out
}

/// Vertices of `{x : a·x <= b for all constraints, e·x = c for all equalities}`
/// by solving every square subsystem of active constraints.
fn vertices<T: Real>(ineq: &[(Vec<T>, T)], eq: &[(Vec<T>, T)], n: usize) -> Vec<Vec<T>> {
    use itertools::Itertools;
    let need = n.saturating_sub(eq.len());
    let tol = lit::<T>(FEASIBILITY_TOL);
    let mut out: Vec<Vec<T>> = Vec::new();
    for active in (0..ineq.len()).combinations(need) {
        let rows: Vec<&(Vec<T>, T)> = eq.iter().chain(active.iter().map(|&i| &ineq[i])).collect();
        // columns of the system as basis vectors
        let basis: Vec<Vec<T>> = (0..n).map(|c| rows.iter().map(|(a, _)| a[c]).collect()).collect();
        let rhs: Vec<T> = rows.iter().map(|(_, b)| *b).collect();
        let Ok(Some(x)) = solve_in_basis(&basis, &rhs) else {
            continue;
        };
        let feasible = ineq.iter().all(|(a, b)| {
            let lhs = a.iter().zip(&x).fold(T::zero(), |s, (&ai, &xi)| s + ai * xi);
            lhs <= *b + tol * (T::one() + b.abs())
        });
        if feasible && !out.iter().any(|v| v.iter().zip(&x).all(|(&p, &q)| (p - q).abs() <= tol)) {
            out.push(x);
        }
    }
    out
}

/// Parametrize `Γ(ρ)` for the relation matrix of `report`.
pub fn cycle_parametrization<T: Real>(report: &KernelReport, rho: &[T]) -> Result<CycleSpec<T>> {
    let rb = &report.relations;
    let (k, d) = (rb.len(), rb.columns());
    if k == 0 {
        return Err(Error::Degenerate(d));
    }
    if rho.len() != k {
        return Err(Error::Argument(format!("expected {k} values of rho, got {}", rho.len())));
    }
    if rho.iter().any(|&r| !r.is_finite() || r <= T::zero()) {
        return Err(Error::Cycle("empty cycle: every rho must be positive".into()));
    }
    let n = d - k;

    // RREF of [M | I] yields R = T·M together with T.
    let mut aug: Vec<Vec<Rational>> = rb
        .rational_rows()
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..k).map(|j| Rational::from_integer(((i == j) as i64).into())));
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() != k || pivots.iter().any(|&p| p >= d) {
        return Err(Error::Internal("relation matrix does not have full row rank".into()));
    }
    let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
    let offset: Vec<T> = (0..k)
        .map(|r| (0..k).fold(T::zero(), |s, j| s + rat::<T>(&aug[r][d + j]) * rho[j]))
        .collect();
    let slope: Vec<Vec<T>> = (0..k)
        .map(|r| free.iter().map(|&f| rat::<T>(&aug[r][f])).collect())
        .collect();

    let cons = constraints(&slope, &offset, n);
    let recession: Vec<(Vec<T>, T)> = cons.iter().map(|(a, _)| (a.clone(), T::zero())).collect();
    let simplex = vec![(vec![T::one(); n], T::one())];
    if !vertices(&recession, &simplex, n).is_empty() {
        return Err(Error::Cycle("unbounded cycle: the polytope {r >= 0, M r = rho} is not bounded".into()));
    }
    let verts = vertices(&cons, &[], n);
    if verts.is_empty() {
        return Err(Error::Cycle("empty cycle: rho lies outside the Kähler cone closure".into()));
    }
    let mut lower = vec![T::infinity(); n];
    let mut upper = vec![T::neg_infinity(); n];
    for v in &verts {
        for f in 0..n {
            lower[f] = lower[f].min(v[f]);
            upper[f] = upper[f].max(v[f]);
        }
    }
    if lower.iter().zip(&upper).any(|(&lo, &hi)| hi - lo <= lit(FEASIBILITY_TOL)) {
        return Err(Error::Cycle("degenerate cycle: the polytope has no interior".into()));
    }
    let mut spec = CycleSpec {
        rho: rho.to_vec(),
        pivots,
        free,
        offset,
        slope,
        lower,
        upper,
        vertices: Vec::new(),
    };
    spec.vertices = verts.iter().map(|x| spec.radii(x)).collect();
    Ok(spec)
}

/// A point of the parameter space: free radii followed by all angles.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamPoint<T> {
    pub free: Vec<T>,
    pub theta: Vec<T>,
}

/// Why a sample did not contribute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rejection {
    /// Outside the polytope (from the bounding-box proposal).
    Outside,
    /// Some `r_j` within [`BOUNDARY_EPS`] of zero.
    Boundary,
    /// `g(w)` numerically zero.
    GVanishes,
}

#[derive(Debug, Clone)]
enum Power<T> {
    Int(i32),
    Real(T),
}

/// Coordinates `z` and the Jacobian determinant of each h term at a point.
pub type Pullback<T> = (Vec<Complex<T>>, Vec<Complex<T>>);

/// `ω` prepared for repeated evaluation.
#[derive(Debug, Clone)]
pub struct KernelEvaluator<T> {
    spec: CycleSpec<T>,
    radius_jacobian: Vec<Vec<T>>,
    /// (indices, sign * coefficient, monomial indices)
    h_terms: Vec<(Vec<usize>, T, Vec<usize>)>,
    /// per cone: (l, power of |w_l|^2)
    g_terms: Vec<Vec<(usize, Power<T>)>>,
    g_scale: T,
}

impl<T: Real> KernelEvaluator<T> {
    pub fn new(report: &KernelReport, spec: CycleSpec<T>) -> Self {
        let h_terms = report
            .h
            .nonzero_terms()
            .map(|t| {
                let c: T = lit(t.coefficient.to_f64().unwrap_or(f64::NAN) * f64::from(t.sign));
                let mono = (0..t.monomial.len()).filter(|&j| t.monomial[j] == 1).collect();
                (t.indices.clone(), c, mono)
            })
            .collect();
        let two = Rational::from_integer(2.into());
        let g_terms = report
            .g
            .terms
            .iter()
            .map(|gt| {
                gt.factors
                    .iter()
                    .map(|(l, e)| {
                        let half = e / &two;
                        let p = match half.to_integer().to_i32() {
                            Some(i) if half.is_integer() => Power::Int(i),
                            _ => Power::Real(rat(&half)),
                        };
                        (*l, p)
                    })
                    .collect()
            })
            .collect();
        let radius_jacobian = spec.radius_jacobian();
        let mut ev = KernelEvaluator {
            spec,
            radius_jacobian,
            h_terms,
            g_terms,
            g_scale: T::one(),
        };
        let scale = ev
            .spec
            .vertices
            .iter()
            .map(|r| ev.g_of_squares(r))
            .fold(T::zero(), T::max);
        ev.g_scale = if scale > T::zero() { scale } else { T::one() };
        ev
    }

    pub fn spec(&self) -> &CycleSpec<T> {
        &self.spec
    }

    /// `g` as a function of the squared moduli `|w_j|^2`.
    fn g_of_squares(&self, sq: &[T]) -> T {
        self.g_terms.iter().fold(T::zero(), |acc, term| {
            acc + term.iter().fold(T::one(), |p, (l, e)| {
                p * match e {
                    Power::Int(i) => sq[*l].powi(*i),
                    Power::Real(x) => sq[*l].powf(*x),
                }
            })
        })
    }

    /// Sample coordinates and the pulled-back `dz̄_I ∧ dz` determinant of
    /// every `h` term.
    pub fn pullback(&self, point: &ParamPoint<T>) -> std::result::Result<Pullback<T>, Rejection> {
        let r = self.spec.radii(&point.free);
        if r.iter().any(|&x| x < T::zero()) {
            return Err(Rejection::Outside);
        }
        if r.iter().any(|&x| x < lit(BOUNDARY_EPS)) {
            return Err(Rejection::Boundary);
        }
        let d = r.len();
        let n = point.free.len();
        let dim = n + d;
        let i = Complex::new(T::zero(), T::one());
        let half = lit::<T>(0.5);

        let mut z = Vec::with_capacity(d);
        let mut grad: Vec<Vec<Complex<T>>> = Vec::with_capacity(d);
        for j in 0..d {
            let sqrt_r = r[j].sqrt();
            let phase = Complex::from_polar(T::one(), point.theta[j]);
            let zj = phase * sqrt_r;
            let mut row = vec![Complex::zero(); dim];
            let radial = phase * (half / sqrt_r);
            for f in 0..n {
                row[f] = radial * self.radius_jacobian[j][f];
            }
            row[n + j] = i * zj;
            z.push(zj);
            grad.push(row);
        }

        let mut dets = Vec::with_capacity(self.h_terms.len());
        let mut m: Vec<Vec<Complex<T>>> = vec![Vec::new(); dim];
        for (indices, _, _) in &self.h_terms {
            for (row, &idx) in m.iter_mut().zip(indices) {
                *row = grad[idx].iter().map(|c| c.conj()).collect();
            }
            for j in 0..d {
                m[indices.len() + j] = grad[j].clone();
            }
            dets.push(det(&m).expect("square"));
        }
        Ok((z, dets))
    }

    /// Coefficient sum `Σ_t sign A conj(w)^{J_t} det_t / g(w)` at `w = z - ζ`.
    pub fn combine(&self, z: &[Complex<T>], dets: &[Complex<T>], zeta: &[Complex<T>]) -> std::result::Result<Complex<T>, Rejection> {
        let w: Vec<Complex<T>> = z.iter().zip(zeta).map(|(a, b)| a - b).collect();
        let sq: Vec<T> = w.iter().map(|x| x.norm_sqr()).collect();
        let g = self.g_of_squares(&sq);
        if !(g.abs() >= lit::<T>(G_VANISH_REL) * self.g_scale) {
            return Err(Rejection::GVanishes);
        }
        let mut acc = Complex::zero();
        for ((_, coef, mono), dt) in self.h_terms.iter().zip(dets) {
            let conj_mono = mono.iter().fold(Complex::new(*coef, T::zero()), |p, &j| p * w[j].conj());
            acc = acc + conj_mono * dt;
        }
        Ok(acc / g)
    }
}

/// Pullback of `ω(z - ζ)` to the parameters at one point.
pub fn integrand_omega<T: Real>(
    report: &KernelReport,
    spec: &CycleSpec<T>,
    point: &ParamPoint<T>,
    zeta: &[Complex<T>],
) -> std::result::Result<Complex<T>, Rejection> {
    let ev = KernelEvaluator::new(report, spec.clone());
    let (z, dets) = ev.pullback(point)?;
    ev.combine(&z, &dets, zeta)
}

/// Sample count, seed and number of independent sample streams.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonteCarloConfig {
    pub samples: usize,
    pub seed: u64,
    pub workers: usize,
}

impl MonteCarloConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        MonteCarloConfig {
            samples,
            seed,
            workers: DEFAULT_WORKERS,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleStats<T> {
    pub estimate: Complex<T>,
    pub std_error: T,
    /// Samples drawn, including rejected ones.
    pub count: usize,
    pub accepted: usize,
    pub rejected_outside: usize,
    pub rejected_boundary: usize,
    pub rejected_g: usize,
    pub seed: u64,
    pub workers: usize,
    /// Bounding-box volume over polytope volume, estimated from acceptance.
    pub oversampling: T,
}

#[derive(Debug, Clone, Copy)]
struct Moments<T> {
    sum_a: Complex<T>,
    sum_b: Complex<T>,
    sum_aa: T,
    sum_bb: T,
    /// Σ a conj(b)
    sum_ab: Complex<T>,
    count: usize,
    accepted: usize,
    outside: usize,
    boundary: usize,
    g_vanish: usize,
}

impl<T: Real> Moments<T> {
    fn zero() -> Self {
        Moments {
            sum_a: Complex::zero(),
            sum_b: Complex::zero(),
            sum_aa: T::zero(),
            sum_bb: T::zero(),
            sum_ab: Complex::zero(),
            count: 0,
            accepted: 0,
            outside: 0,
            boundary: 0,
            g_vanish: 0,
        }
    }

    fn merge(mut self, o: &Self) -> Self {
        self.sum_a = self.sum_a + o.sum_a;
        self.sum_b = self.sum_b + o.sum_b;
        self.sum_aa = self.sum_aa + o.sum_aa;
        self.sum_bb = self.sum_bb + o.sum_bb;
        self.sum_ab = self.sum_ab + o.sum_ab;
        self.count += o.count;
        self.accepted += o.accepted;
        self.outside += o.outside;
        self.boundary += o.boundary;
        self.g_vanish += o.g_vanish;
        self
    }

    fn reject(&mut self, r: Rejection) {
        match r {
            Rejection::Outside => self.outside += 1,
            Rejection::Boundary => self.boundary += 1,
            Rejection::GVanishes => self.g_vanish += 1,
        }
    }
}

fn draw<T: Real, R: Rng>(spec: &CycleSpec<T>, rng: &mut R) -> ParamPoint<T> {
    let free = spec
        .lower
        .iter()
        .zip(&spec.upper)
        .map(|(&lo, &hi)| lo + (hi - lo) * T::sample_unit(rng))
        .collect();
    let two_pi: T = lit(2.0 * PI);
    let theta = (0..spec.d()).map(|_| two_pi * T::sample_unit(rng)).collect();
    ParamPoint { free, theta }
}

/// Accumulate `a = f(z) ω(z - ζ)` and `b = ω(z)` over one deterministic
/// stream per worker, then reduce in worker order.
fn run_moments<T: Real>(ev: &KernelEvaluator<T>, alpha: &[u32], zeta: &[Complex<T>], cfg: &MonteCarloConfig) -> Moments<T> {
    let workers = cfg.workers.max(1);
    let shifted = zeta.iter().any(|z| !z.is_zero());
    let zero = vec![Complex::zero(); zeta.len()];
    let parts: Vec<Moments<T>> = (0..workers)
        .into_par_iter()
        .map(|w| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(w as u64);
            let quota = cfg.samples / workers + usize::from(w < cfg.samples % workers);
            let mut m = Moments::zero();
            for _ in 0..quota {
                m.count += 1;
                let p = draw(ev.spec(), &mut rng);
                let (z, dets) = match ev.pullback(&p) {
                    Ok(v) => v,
                    Err(r) => {
                        m.reject(r);
                        continue;
                    }
                };
                let b = match ev.combine(&z, &dets, &zero) {
                    Ok(v) => v,
                    Err(r) => {
                        m.reject(r);
                        continue;
                    }
                };
                let a = if shifted || alpha.iter().any(|&e| e != 0) {
                    match ev.combine(&z, &dets, zeta) {
                        Ok(v) => v * monomial(&z, alpha),
                        Err(r) => {
                            m.reject(r);
                            continue;
                        }
                    }
                } else {
                    b
                };
                m.accepted += 1;
                m.sum_a = m.sum_a + a;
                m.sum_b = m.sum_b + b;
                m.sum_aa = m.sum_aa + a.norm_sqr();
                m.sum_bb = m.sum_bb + b.norm_sqr();
                m.sum_ab = m.sum_ab + a * b.conj();
            }
            m
        })
        .collect();
    parts.iter().fold(Moments::zero(), |acc, p| acc.merge(p))
}

/// `z^α`.
pub fn monomial<T: Real>(z: &[Complex<T>], alpha: &[u32]) -> Complex<T> {
    z.iter()
        .zip(alpha)
        .fold(Complex::new(T::one(), T::zero()), |p, (zj, &e)| p * zj.powu(e))
}

fn stats<T: Real>(sum: Complex<T>, sum_sq: T, m: &Moments<T>, volume: T, cfg: &MonteCarloConfig) -> SampleStats<T> {
    let n = T::from_usize(m.count).unwrap();
    let mean = sum / n;
    let var = (sum_sq / n - mean.norm_sqr()).max(T::zero());
    let var = if m.count > 1 { var * n / (n - T::one()) } else { var };
    SampleStats {
        estimate: mean * volume,
        std_error: (var / n).sqrt() * volume,
        count: m.count,
        accepted: m.accepted,
        rejected_outside: m.outside,
        rejected_boundary: m.boundary,
        rejected_g: m.g_vanish,
        seed: cfg.seed,
        workers: cfg.workers.max(1),
        oversampling: if m.count > m.outside {
            n / T::from_usize(m.count - m.outside).unwrap()
        } else {
            T::infinity()
        },
    }
}

fn parameter_volume<T: Real>(spec: &CycleSpec<T>) -> T {
    spec.box_volume() * lit::<T>(2.0 * PI).powi(spec.d() as i32)
}

/// Monte Carlo estimate of `C = ∫_Γ ω`.
pub fn estimate_c<T: Real>(report: &KernelReport, rho: &[T], cfg: &MonteCarloConfig) -> Result<SampleStats<T>> {
    if cfg.samples == 0 {
        return Err(Error::Sampling("need at least one sample".into()));
    }
    let spec = cycle_parametrization(report, rho)?;
    let volume = parameter_volume(&spec);
    let ev = KernelEvaluator::new(report, spec);
    let zeta = vec![Complex::zero(); report.d()];
    let m = run_moments(&ev, &[], &zeta, cfg);
    if m.accepted == 0 {
        return Err(Error::Sampling("all samples were rejected".into()));
    }
    Ok(stats(m.sum_b, m.sum_bb, &m, volume, cfg))
}

/// Outcome of one representation check.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation<T> {
    /// `∫ f(z) ω(z - ζ)`.
    pub integral: SampleStats<T>,
    /// `C = ∫ ω(z)`, from the same samples.
    pub normalizer: SampleStats<T>,
    /// `(1/C) ∫ f(z) ω(z - ζ)`.
    pub value: Complex<T>,
    /// Delta-method standard error of `value`.
    pub value_std_error: T,
    /// `f(ζ)`.
    pub expected: Complex<T>,
    pub relative_error: T,
    pub warnings: Vec<String>,
}

/// Check that `ζ` lies in `W ∩ D` for the given `ρ`.
pub fn check_domain<T: Real>(report: &KernelReport, rho: &[T], zeta: &[Complex<T>]) -> Result<()> {
    if zeta.len() != report.d() {
        return Err(Error::Argument(format!("expected {} coordinates of zeta, got {}", report.d(), zeta.len())));
    }
    let sq: Vec<f64> = zeta.iter().map(|z| z.norm_sqr().to_f64().unwrap()).collect();
    let rho64: Vec<f64> = rho.iter().map(|r| r.to_f64().unwrap()).collect();
    for (m, w) in report.w_forms.iter().enumerate() {
        let lhs: f64 = w.coeffs.iter().zip(&sq).map(|(c, s)| c.to_f64().unwrap() * s).sum();
        if !(lhs < rho64[m]) {
            return Err(Error::Domain(format!("W{}(zeta) = {lhs} is not < rho[{}] = {}", m + 1, m + 1, rho64[m])));
        }
    }
    for (k, ineq) in report.domain.iter().enumerate() {
        let lhs: f64 = ineq.collection.iter().map(|&j| sq[j]).sum();
        let rhs = ineq.bound.eval(&rho64);
        if !(lhs < rhs) {
            let names: Vec<String> = ineq.collection.iter().map(|j| format!("|zeta{}|^2", j + 1)).collect();
            return Err(Error::Domain(format!("D{}: {} = {lhs} is not < {rhs}", k + 1, names.join(" + "))));
        }
    }
    Ok(())
}

/// Estimate `(1/C) ∫_{Γ(ρ)} z^α ω(z - ζ)` and compare it with `ζ^α`.
pub fn verify_representation<T: Real>(
    report: &KernelReport,
    rho: &[T],
    alpha: &[u32],
    zeta: &[Complex<T>],
    cfg: &MonteCarloConfig,
) -> Result<Representation<T>> {
    if alpha.len() != report.d() {
        return Err(Error::Argument(format!("expected {} monomial exponents, got {}", report.d(), alpha.len())));
    }
    if cfg.samples == 0 {
        return Err(Error::Sampling("need at least one sample".into()));
    }
    let spec = cycle_parametrization(report, rho)?;
    check_domain(report, rho, zeta)?;
    let volume = parameter_volume(&spec);
    let ev = KernelEvaluator::new(report, spec);
    let m = run_moments(&ev, alpha, zeta, cfg);
    if m.accepted == 0 {
        return Err(Error::Sampling("all samples were rejected".into()));
    }
    let integral = stats(m.sum_a, m.sum_aa, &m, volume, cfg);
    let normalizer = stats(m.sum_b, m.sum_bb, &m, volume, cfg);
    let value = if m.sum_a == m.sum_b { Complex::new(T::one(), T::zero()) } else { m.sum_a / m.sum_b };

    // residuals e = a - value * b, their variance gives the ratio's error
    let n = T::from_usize(m.count).unwrap();
    let cross = (value.conj() * m.sum_ab).re;
    let sum_ee = (m.sum_aa - lit::<T>(2.0) * cross + value.norm_sqr() * m.sum_bb).max(T::zero());
    let mean_e = (m.sum_a - value * m.sum_b) / n;
    let var_e = (sum_ee / n - mean_e.norm_sqr()).max(T::zero());
    let mean_b = (m.sum_b / n).norm();
    let value_std_error = (var_e / n).sqrt() / mean_b;

    let expected = monomial(zeta, alpha);
    let relative_error = (value - expected).norm() / expected.norm().max(lit(RELATIVE_ERROR_FLOOR));

    let mut warnings = Vec::new();
    if T::from_usize(m.g_vanish).unwrap() > lit::<T>(G_REJECTION_WARN_FRACTION) * n {
        warnings.push(format!(
            "{} of {} samples rejected because g vanished; zeta may be too close to the cycle",
            m.g_vanish, m.count
        ));
    }
    Ok(Representation {
        integral,
        normalizer,
        value,
        value_std_error,
        expected,
        relative_error,
        warnings,
    })
}
