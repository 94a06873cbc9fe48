//! Fuglede–Kadison determinants of right multiplication `R_A: v ↦ v·A` on ℓ²(G)^n.
//!
//! Three estimators share one sparse engine over interned group elements:
//! a log-series of `B = A·A*` (the matrix of `R_A R_A*` in the row-vector convention),
//! compression to a ball of the Cayley graph, and Gauss quadrature of the spectral
//! measure at the identity via Lanczos.

mod band;
mod engine;


use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupalg::{GroupRingMatrix, OracleKind};
use crate::words::Word;
use engine::{axpy, dot, norm, scaled, Engine, Map, SVec};

pub const DEFAULT_ORDER: usize = 64;
pub const DEFAULT_RADIUS: usize = 1024;
pub const DEFAULT_CUTOFF: f64 = 1e-8;
pub const DEFAULT_DEPTH: usize = 48;
/// Series scaling margin above the Schur bound.
pub const MARGIN: f64 = 0.05;
/// Lanczos stops once the engine has interned this many group elements.
pub const SUPPORT_BUDGET: usize = 200_000;
/// Successive Gauss estimates of ∫ ln λ agreeing this closely end the iteration.
pub const QUADRATURE_TOL: f64 = 1e-10;
/// Singular values below this count towards kernel mass in the probe.
pub const KERNEL_THRESHOLD: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FkMethod {
    Series,
    Ball,
    /// Gauss quadrature of the spectral measure (Lanczos).
    Quadrature,
}

impl std::str::FromStr for FkMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "series" => Ok(FkMethod::Series),
            "ball" => Ok(FkMethod::Ball),
            "quadrature" => Ok(FkMethod::Quadrature),
            _ => Err(Error::Parse(format!("unknown method `{s}` (series, ball, quadrature)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FkParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scale: Option<f64>,
    pub cutoff: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FkEstimate {
    pub log_value: f64,
    pub value: f64,
    pub method: FkMethod,
    pub params: FkParams,
    pub tail_proxy: f64,
    pub sigma_min: Option<f64>,
    pub partial_oracle: bool,
    pub kernel_suspected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub caveat: Option<String>,
}

impl FkEstimate {
    fn new(log_value: f64, method: FkMethod, params: FkParams, tail_proxy: f64, a: &GroupRingMatrix) -> FkEstimate {
        FkEstimate {
            log_value,
            value: log_value.exp(),
            method,
            params,
            tail_proxy: tail_proxy.abs(),
            sigma_min: None,
            partial_oracle: a.oracle().is_partial(),
            kernel_suspected: false,
            caveat: None,
        }
    }

    /// Relative uncertainty of `value` implied by the tail proxy.
    pub fn relative_tolerance(&self) -> f64 {
        self.tail_proxy.exp_m1()
    }
}

/// Estimator choice with its parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FkOptions {
    pub method: FkMethod,
    pub order: usize,
    pub radius: usize,
    pub cutoff: f64,
}

impl Default for FkOptions {
    fn default() -> Self {
        FkOptions { method: FkMethod::Quadrature, order: DEFAULT_DEPTH, radius: DEFAULT_RADIUS, cutoff: DEFAULT_CUTOFF }
    }
}

pub fn fk_det(a: &GroupRingMatrix, opts: &FkOptions) -> Result<FkEstimate> {
    match opts.method {
        FkMethod::Series => fk_det_series(a, opts.order),
        FkMethod::Ball => fk_det_ball(a, opts.radius, opts.cutoff),
        FkMethod::Quadrature => fk_det_quadrature(a, opts.order, opts.cutoff),
    }
}

fn require_square(a: &GroupRingMatrix) -> Result<()> {
    if !a.is_square() || a.rows == 0 {
        return Err(Error::Invalid(format!("determinant needs a nonempty square matrix, got {}×{}", a.rows, a.cols)));
    }
    Ok(())
}

/// Schur-type bound on ‖R_A‖: the larger of the maximal row and column sums of
/// coefficient 1-norms.
pub fn op_norm_bound(a: &GroupRingMatrix) -> f64 {
    let norms: Vec<Vec<f64>> = (0..a.rows).map(|i| (0..a.cols).map(|j| a.get(i, j).norm1()).collect()).collect();
    let row = norms.iter().map(|r| r.iter().sum::<f64>()).fold(0.0, f64::max);
    let col = (0..a.cols).map(|j| norms.iter().map(|r| r[j]).sum::<f64>()).fold(0.0, f64::max);
    row.max(col)
}

/// `Some(λ)` when the matrix is λ·Id with constant entries.
fn scalar_value(b: &GroupRingMatrix) -> Option<Complex64> {
    let e = Word::identity();
    let lambda = b.get(0, 0).coeff(&e);
    for i in 0..b.rows {
        for j in 0..b.cols {
            let x = b.get(i, j);
            let want = if i == j { lambda } else { Complex64::new(0.0, 0.0) };
            if x.len() > usize::from(i == j) || x.coeff(&e) != want {
                return None;
            }
        }
    }
    Some(lambda)
}

fn is_zero_matrix(a: &GroupRingMatrix) -> bool {
    (0..a.rows).all(|i| (0..a.cols).all(|j| a.get(i, j).is_zero()))
}

fn zero_operator(a: &GroupRingMatrix, method: FkMethod, params: FkParams) -> FkEstimate {
    let mut est = FkEstimate::new(0.0, method, params, 0.0, a);
    est.sigma_min = Some(0.0);
    est.kernel_suspected = true;
    est
}

/// `log det = ½[n log s − Σ_{m≤N} tr((I − B/s)^m)/m]` with `B = A·A*`.
///
/// Powers are applied to the basis vectors δ_e⊗e_i; `tr(C^m)` is read off as
/// `Σ_i ⟨δ_i C^⌈m/2⌉, δ_i C^⌊m/2⌋⟩`, so only half the powers are formed.
pub fn fk_det_series(a: &GroupRingMatrix, order: usize) -> Result<FkEstimate> {
    require_square(a)?;
    if order == 0 {
        return Err(Error::Invalid("series order must be at least 1".into()));
    }
    let n = a.rows;
    let b = a.mul(&a.star())?;
    let bound = op_norm_bound(&b);
    let mut params = FkParams { order: Some(order), radius: None, scale: None, cutoff: 0.0 };
    if bound == 0.0 {
        return Ok(zero_operator(a, FkMethod::Series, params));
    }
    // a scalar B has its spectrum at the bound itself; scaling there makes every summand vanish
    let s = match scalar_value(&b) {
        Some(l) => l.re,
        None => bound * (1.0 + MARGIN),
    };
    params.scale = Some(s);
    let half = order.div_ceil(2);
    let mut traces = vec![0.0; order + 1];
    for i in 0..n {
        let mut eng = Engine::new(a);
        let mut powers: Vec<SVec> = vec![eng.delta(i)];
        for k in 1..=half {
            if eng.elements() > SUPPORT_BUDGET {
                return Err(Error::Resource(format!(
                    "series support passed {SUPPORT_BUDGET} group elements at power {k}; lower the order or use quadrature"
                )));
            }
            let prev = &powers[k - 1];
            let mut next = prev.clone();
            let hv = eng.apply_h(prev);
            axpy(&mut next, Complex64::new(-1.0 / s, 0.0), &hv);
            powers.push(next);
        }
        for (m, t) in traces.iter_mut().enumerate().skip(1) {
            *t += dot(&powers[m.div_ceil(2)], &powers[m / 2]).re;
        }
    }
    let sum: f64 = (1..=order).map(|m| traces[m] / m as f64).sum();
    let log_value = 0.5 * (n as f64 * s.ln() - sum);
    // remainder Σ_{m>N} τ_m/m with the last decay ratio ρ: ≈ τ_N/N · ρ/(1−ρ); for power-law
    // decay τ_m ~ m^(−a) this also gives the right τ_N/a
    let last = traces[order].max(0.0);
    let rho = if order > 1 && traces[order - 1] > 0.0 {
        (last / traces[order - 1]).clamp(0.0, 1.0 - 1.0 / (order * order) as f64)
    } else {
        0.0
    };
    let tail = 0.5 * last / order as f64 * (1.0 + rho / (1.0 - rho));
    Ok(FkEstimate::new(log_value, FkMethod::Series, params, tail, a))
}

/// Memory cap for dense allocations, from `L2ALEX_MAX_MEM_MB` (default 4096).
pub fn memory_budget_bytes() -> usize {
    let mb = std::env::var("L2ALEX_MAX_MEM_MB").ok().and_then(|v| v.trim().parse::<usize>().ok()).unwrap_or(4096);
    mb.saturating_mul(1 << 20)
}

fn amenable_hint(a: &GroupRingMatrix) -> bool {
    match &a.oracle().kind {
        OracleKind::FreeAbelian => true,
        OracleKind::Free => a.oracle().rank() <= 1,
        _ => false,
    }
}

/// Singular values of `R_A` compressed to `span(ball)^n`, the ball size, and the
/// smallest singular value the solver can resolve. The band path works with `M·Mᵀ`,
/// so values under about `√(ε_mach)·‖M‖` come out as noise.
fn compressed_singular_values(a: &GroupRingMatrix, radius: usize) -> Result<(Vec<f64>, usize, f64)> {
    let oracle = a.oracle().clone();
    let ball = oracle.ball(radius);
    let n = a.rows;
    let size = ball.len() * n;
    let index: Map<&Word, usize> = ball.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let mut rows: Vec<Map<usize, Complex64>> = vec![Map::default(); size];
    let mut real = true;
    for (gi, g) in ball.iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                for (h, c) in a.get(i, j).terms() {
                    real &= c.im == 0.0;
                    let gh = oracle.normal_form(&g.mul(h));
                    if let Some(&k) = index.get(&gh) {
                        *rows[gi * n + i].entry(k * n + j).or_default() += c;
                    }
                }
            }
        }
    }
    let budget = memory_budget_bytes();
    if real {
        // H = M·Mᵀ, sparse and symmetric
        let mut cols: Vec<Vec<(usize, f64)>> = vec![Vec::new(); size];
        for (r, row) in rows.iter().enumerate() {
            for (&c, v) in row {
                cols[c].push((r, v.re));
            }
        }
        let mut h: band::SymSparse = vec![Vec::new(); size];
        for (r, row) in rows.iter().enumerate() {
            let mut acc: Map<usize, f64> = Map::default();
            for (&c, v) in row {
                for &(s, w) in &cols[c] {
                    *acc.entry(s).or_default() += v.re * w;
                }
            }
            h[r] = acc.into_iter().collect();
            h[r].sort_by_key(|&(s, _)| s);
        }
        let perm = band::rcm(&h);
        let bw = band::bandwidth(&h, &perm);
        if size > 200 && 4 * bw < size {
            let need = size * (bw + 3) * 8;
            if need > budget {
                return Err(Error::Resource(format!("band storage of {need} bytes exceeds L2ALEX_MAX_MEM_MB")));
            }
            let lambda = band::band_eigenvalues(&h, &perm, bw);
            let top = lambda.iter().copied().fold(0.0, f64::max);
            let resolution = (64.0 * f64::EPSILON * top).sqrt();
            return Ok((lambda.into_iter().map(|l| l.max(0.0).sqrt()).collect(), ball.len(), resolution));
        }
        let need = size * size * 8 * 3;
        if need > budget {
            return Err(Error::Resource(format!("ball of {} elements needs {need} bytes; raise L2ALEX_MAX_MEM_MB or lower the radius", ball.len())));
        }
        let mut m = DMatrix::<f64>::zeros(size, size);
        for (r, row) in rows.iter().enumerate() {
            for (&c, v) in row {
                m[(r, c)] = v.re;
            }
        }
        return Ok((m.singular_values().iter().copied().collect(), ball.len(), 0.0));
    }
    let need = size * size * 16 * 3;
    if need > budget {
        return Err(Error::Resource(format!("ball of {} elements needs {need} bytes; raise L2ALEX_MAX_MEM_MB or lower the radius", ball.len())));
    }
    let mut m = DMatrix::<Complex64>::zeros(size, size);
    for (r, row) in rows.iter().enumerate() {
        for (&c, v) in row {
            m[(r, c)] = *v;
        }
    }
    Ok((m.singular_values().iter().copied().collect(), ball.len(), 0.0))
}

/// Per-site log-determinant of the ball compression: `Σ_{σ>ε} ln σ / |ball|`, with ε
/// raised to the solver's resolution when that is larger.
/// Excluded singular values add `|ln ε|/|ball|` each to the tail proxy.
pub fn fk_det_ball(a: &GroupRingMatrix, radius: usize, cutoff: f64) -> Result<FkEstimate> {
    require_square(a)?;
    if cutoff <= 0.0 {
        return Err(Error::Invalid("cutoff must be positive".into()));
    }
    let params = FkParams { order: None, radius: Some(radius), scale: None, cutoff };
    if is_zero_matrix(a) {
        return Ok(zero_operator(a, FkMethod::Ball, params));
    }
    let (sv, sites, resolution) = compressed_singular_values(a, radius)?;
    let floor = cutoff.max(resolution);
    let kept: Vec<f64> = sv.iter().copied().filter(|&s| s > floor).collect();
    let excluded = sv.len() - kept.len();
    let log_value = kept.iter().map(|s| s.ln()).sum::<f64>() / sites as f64;
    let tail = excluded as f64 / sites as f64 * floor.ln().abs();
    let mut est = FkEstimate::new(log_value, FkMethod::Ball, params, tail, a);
    est.sigma_min = sv.iter().copied().reduce(f64::min);
    est.kernel_suspected = excluded as f64 > 0.25 * sites as f64;
    if !amenable_hint(a) {
        est.caveat = Some("per-site ball normalization is heuristic for non-amenable groups".into());
    }
    Ok(est)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Stop {
    Depth,
    Converged,
    /// The Krylov space is invariant: the rule is exact.
    Exhausted,
    Budget,
}

struct Jacobi {
    alpha: Vec<f64>,
    beta: Vec<f64>,
    stop: Stop,
}

/// Lanczos tridiagonalization of `B = A·A*` from δ_e⊗e_i, up to `depth` steps. With
/// `tol`, stops once the Gauss estimate of ∫ ln λ agrees with the one at half the depth.
/// Always stops before the engine holds more than `SUPPORT_BUDGET` elements.
fn lanczos(eng: &mut Engine, i: usize, depth: usize, tol: Option<(f64, f64)>) -> Jacobi {
    let mut alpha: Vec<f64> = Vec::new();
    let mut beta: Vec<f64> = Vec::new();
    let mut q = eng.delta(i);
    let mut prev: Option<SVec> = None;
    let mut rules: Vec<f64> = Vec::new();
    let mut stop = Stop::Depth;
    for _ in 0..depth {
        if !alpha.is_empty() && eng.elements() > SUPPORT_BUDGET {
            stop = Stop::Budget;
            break;
        }
        let mut w = eng.apply_h(&q);
        if let (Some(p), Some(&b)) = (&prev, beta.last()) {
            axpy(&mut w, Complex64::new(-b, 0.0), p);
        }
        let a = dot(&w, &q).re;
        axpy(&mut w, Complex64::new(-a, 0.0), &q);
        alpha.push(a);
        let b = norm(&w);
        let scale = alpha.iter().map(|x| x.abs()).fold(1e-300, f64::max);
        if b <= 1e-13 * scale {
            stop = Stop::Exhausted;
            break;
        }
        beta.push(b);
        if let Some((tol, floor)) = tol {
            let k = alpha.len();
            rules.push(summarize(&gauss_rule(&alpha, &beta[..k - 1]), floor).log_integral);
            // agreement with the rule of half the depth; neighbouring rules can stall together
            if k >= 8 && (rules[k - 1] - rules[k / 2 - 1]).abs() <= tol {
                stop = Stop::Converged;
                break;
            }
        }
        prev = Some(std::mem::replace(&mut q, scaled(&w, 1.0 / b)));
        for c in q.iter_mut() {
            c.retain(|_, x| x.norm_sqr() > 0.0);
        }
    }
    beta.truncate(alpha.len().saturating_sub(1));
    Jacobi { alpha, beta, stop }
}

/// Gauss nodes and weights of the Jacobi matrix `(alpha, beta)`. nalgebra's symmetric
/// eigensolver returned wrong eigenvector weights on some 48×48 Jacobi matrices, so this
/// uses the QL iteration from the band solver.
fn gauss_rule(alpha: &[f64], beta: &[f64]) -> Vec<(f64, f64)> {
    band::gauss_nodes_weights(alpha.to_vec(), beta.to_vec())
}

struct RuleSummary {
    log_integral: f64,
    excluded_mass: f64,
    min_node: f64,
}

fn summarize(rule: &[(f64, f64)], floor: f64) -> RuleSummary {
    let mut s = RuleSummary { log_integral: 0.0, excluded_mass: 0.0, min_node: f64::INFINITY };
    for &(x, w) in rule {
        s.min_node = s.min_node.min(x.max(0.0));
        if x > floor {
            s.log_integral += w * x.ln();
        } else {
            s.excluded_mass += w;
        }
    }
    s
}

/// `log det = ½ Σ_i ∫ ln λ dμ_i(λ)`, where μ_i is the spectral measure of `B = A·A*` at
/// δ_e⊗e_i, integrated by the Gauss rule of `depth` Lanczos steps. Nodes below ε² are
/// excluded; the tail proxy extrapolates from the rules at depths k/4, k/2 and k and adds
/// the excluded mass times |ln ε|.
/// Iteration ends early once the estimate is stable or the support budget is reached.
pub fn fk_det_quadrature(a: &GroupRingMatrix, depth: usize, cutoff: f64) -> Result<FkEstimate> {
    require_square(a)?;
    if depth == 0 || cutoff <= 0.0 {
        return Err(Error::Invalid("quadrature needs depth ≥ 1 and a positive cutoff".into()));
    }
    let params = FkParams { order: Some(depth), radius: None, scale: None, cutoff };
    if is_zero_matrix(a) {
        return Ok(zero_operator(a, FkMethod::Quadrature, params));
    }
    let floor = cutoff * cutoff;
    let (mut total, mut excluded, mut min_node) = (0.0, 0.0, f64::INFINITY);
    // rule values at depths k/2 and k/4, summed over rows
    let (mut half, mut quarter) = (0.0, 0.0);
    let mut budget_hit = None;
    for i in 0..a.rows {
        // a fresh engine per row keeps the support budget per spectral measure
        let jac = lanczos(&mut Engine::new(a), i, depth, Some((QUADRATURE_TOL, floor)));
        if jac.stop == Stop::Budget {
            budget_hit = Some(jac.alpha.len());
        }
        let (al, be) = (&jac.alpha, &jac.beta);
        let k = al.len();
        let rule = |m: usize| {
            let m = m.max(1);
            summarize(&gauss_rule(&al[..m], &be[..m - 1]), floor)
        };
        let full = rule(k);
        total += full.log_integral;
        half += rule(k / 2).log_integral;
        quarter += rule(k / 4).log_integral;
        excluded += full.excluded_mass;
        min_node = min_node.min(full.min_node);
    }
    // Gauss rules for ln converge like k^(−a) when the spectrum reaches 0 and faster
    // otherwise; with r = 2^a read off depths k/4, k/2, k the remainder is d/(r − 1).
    // Single steps oscillate too much to extrapolate from.
    let d = (total - half).abs();
    let r = if d > 0.0 { ((half - quarter).abs() / d).max(1.25) } else { f64::INFINITY };
    let tail = 0.5 * d / (r - 1.0) + excluded * cutoff.ln().abs();
    let mut est = FkEstimate::new(0.5 * total, FkMethod::Quadrature, params, tail, a);
    est.sigma_min = Some(min_node.sqrt());
    est.kernel_suspected = excluded > 1e-3;
    if let Some(k) = budget_hit {
        est.caveat = Some(format!("Lanczos stopped at depth {k} by the support budget of {SUPPORT_BUDGET} elements"));
    }
    Ok(est)
}

/// Estimate of `λ ↦ F(f)(λ)` on a uniform grid over `[0, op_norm_bound]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralHistogram {
    pub edges: Vec<f64>,
    /// Dimension per site with singular value ≤ edge (the first edge also counts values
    /// below the cutoff).
    pub cumulative: Vec<f64>,
    pub radius: usize,
    pub sites: usize,
}

pub fn spectral_density(a: &GroupRingMatrix, radius: usize, bins: usize) -> Result<SpectralHistogram> {
    require_square(a)?;
    if bins == 0 {
        return Err(Error::Invalid("need at least one bin".into()));
    }
    let bound = op_norm_bound(a);
    let top = if bound > 0.0 { bound } else { 1.0 };
    let (sv, sites, _) = if is_zero_matrix(a) {
        (vec![0.0; a.rows], 1, 0.0)
    } else {
        compressed_singular_values(a, radius)?
    };
    let edges: Vec<f64> = (0..=bins).map(|k| top * k as f64 / bins as f64).collect();
    let cumulative = edges
        .iter()
        .enumerate()
        .map(|(k, &e)| {
            let e = if k == 0 { DEFAULT_CUTOFF } else { e * (1.0 + 1e-12) };
            sv.iter().filter(|&&s| s <= e).count() as f64 / sites as f64
        })
        .collect();
    Ok(SpectralHistogram { edges, cumulative, radius, sites })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProbeVerdict {
    NoEvidenceOfKernel,
    KernelSuspected,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeRow {
    pub depth: usize,
    /// Depth actually explored; smaller than `depth` when the support budget ran out.
    pub reached: usize,
    pub sigma_min: f64,
    pub kernel_mass: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub rows: Vec<ProbeRow>,
    pub verdict: ProbeVerdict,
}

/// Evidence about injectivity of `R_A`. For each depth r, the Gauss rule of r Lanczos
/// steps (support within radius r·2·max entry length) gives the smallest node, read as
/// σ_min², and the weight on nodes below `KERNEL_THRESHOLD²`, an estimate of
/// `dim ker R_A` that converges from above to the spectral atom at 0.
pub fn property_i_probe(a: &GroupRingMatrix, depths: &[usize]) -> Result<ProbeReport> {
    require_square(a)?;
    let mut depths: Vec<usize> = depths.iter().copied().filter(|&d| d > 0).collect();
    depths.sort_unstable();
    depths.dedup();
    if depths.is_empty() {
        return Err(Error::Invalid("probe needs at least one positive depth".into()));
    }
    let deepest = *depths.last().unwrap();
    let jacobi: Vec<Jacobi> = (0..a.rows).map(|i| lanczos(&mut Engine::new(a), i, deepest, None)).collect();
    let floor = KERNEL_THRESHOLD * KERNEL_THRESHOLD;
    let rows: Vec<ProbeRow> = depths
        .iter()
        .map(|&d| {
            let (mut mass, mut min_node, mut reached) = (0.0, f64::INFINITY, d);
            for j in &jacobi {
                let k = d.min(j.alpha.len());
                if j.stop == Stop::Budget && k < d {
                    reached = reached.min(k);
                }
                let s = summarize(&gauss_rule(&j.alpha[..k], &j.beta[..k.saturating_sub(1)]), floor);
                mass += s.excluded_mass;
                min_node = min_node.min(s.min_node);
            }
            ProbeRow { depth: d, reached, sigma_min: min_node.sqrt(), kernel_mass: mass }
        })
        .collect();
    let first = rows.first().unwrap().kernel_mass;
    let last = rows.last().unwrap().kernel_mass;
    let verdict = if last > 1e-3 && last >= 0.5 * first {
        ProbeVerdict::KernelSuspected
    } else if rows.iter().all(|r| r.kernel_mass == 0.0) {
        ProbeVerdict::NoEvidenceOfKernel
    } else {
        ProbeVerdict::Inconclusive
    };
    Ok(ProbeReport { rows, verdict })
}
