//! The product counterexample family, its closed-form quadratic partial
//! sums, the weighted strong-convergence sums, asymptotic-ratio sweeps, and
//! the divergence experiment for unbounded weights.
//!
//! Norms are exact dyadic rationals throughout; floats enter only where an
//! exact norm is multiplied by a logarithmic weight. Summation order is
//! fixed (ascending k) so identical runs emit identical bytes.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::bitops::variation;
use crate::dyadic::{DyadicRational, Grid1D, Grid2D};
use crate::error::{Error, Result};
use crate::kernels::{dirichlet_power_of_two, dirichlet_recursive, lebesgue_constant};
use crate::walsh::{analyze, analyze2d, partial_sum_2d, synthesize2d, walsh_function};

/// Materialization cap for the full 2D grid of the counterexample family
/// (resolution n+1, so 4^(n+1) cells).
pub const COUNTEREXAMPLE_CAP: u32 = 12;

/// Logarithm convention for the weight denominators. The divergence and
/// boundedness conclusions do not depend on the base; reported constants do.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogBase {
    Natural,
    Two,
}

impl LogBase {
    pub fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Natural => x.ln(),
            LogBase::Two => x.log2(),
        }
    }
}

/// The nondecreasing weight of the divergence experiment: a map from
/// positive integers into [1, oo). Presets are clamped from below at 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightFunction {
    One,
    Log,
    LogLog,
    Power { alpha: f64 },
}

impl WeightFunction {
    /// Power weight (1+t)^alpha; alpha must be positive so the weight is
    /// genuinely unbounded.
    pub fn power(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::NonpositivePowerExponent { alpha });
        }
        Ok(WeightFunction::Power { alpha })
    }

    pub fn eval(&self, t: u64) -> f64 {
        let t = t as f64;
        match self {
            WeightFunction::One => 1.0,
            WeightFunction::Log => t.ln().max(1.0),
            WeightFunction::LogLog => (t + 16.0).ln().ln().max(1.0),
            WeightFunction::Power { alpha } => (1.0 + t).powf(*alpha),
        }
    }

    /// Sampled monotonicity check over 1..=t_max.
    pub fn is_nondecreasing_up_to(&self, t_max: u64) -> bool {
        (1..t_max).all(|t| self.eval(t) <= self.eval(t + 1))
    }

    pub fn name(&self) -> &'static str {
        match self {
            WeightFunction::One => "one",
            WeightFunction::Log => "log",
            WeightFunction::LogLog => "loglog",
            WeightFunction::Power { .. } => "power",
        }
    }
}

/// The 1D factor of the counterexample: D_{2^(n+1)} - D_{2^n} at
/// resolution n+1. Value 2^n on I_{n+1}, -2^n on I_n minus I_{n+1}, zero
/// elsewhere; unit L1 norm.
pub fn difference_kernel(n: u32) -> Grid1D {
    let resolution = n + 1;
    let fine = dirichlet_power_of_two(n + 1, resolution).expect("resolution is sufficient");
    let coarse = dirichlet_power_of_two(n, resolution).expect("resolution is sufficient");
    fine.sub(&coarse).expect("equal resolutions")
}

/// The product function whose quadratic partial sums saturate the weighted
/// norm inequality: the tensor square of the difference kernel. A cylinder
/// function of resolution n+1, so the grid is exact.
pub fn counterexample(n: u32) -> Result<Grid2D> {
    if n > COUNTEREXAMPLE_CAP {
        return Err(Error::CounterexampleCapExceeded {
            n,
            cap: COUNTEREXAMPLE_CAP,
        });
    }
    let factor = difference_kernel(n);
    Grid2D::tensor(&factor, &factor)
}

fn check_block_index(n: u32, k: u64) -> Result<()> {
    let low = 1u64 << n;
    if k <= low || k > 2 * low {
        return Err(Error::BlockIndexOutOfRange { n, k });
    }
    Ok(())
}

/// The closed form of the quadratic partial sum S_{k,k} of the
/// counterexample for 2^n < k <= 2^(n+1): the tensor square of
/// w_{2^n} D_{k-2^n}. Exactly equal to the transform-path partial sum.
pub fn closed_form_partial_sum(n: u32, k: u64) -> Result<Grid2D> {
    check_block_index(n, k)?;
    let resolution = n + 1;
    let w = walsh_function(1u64 << n, resolution).expect("resolution is sufficient");
    let d = dirichlet_recursive(k - (1u64 << n), resolution).expect("block order fits");
    let factor = w.mul(&d).expect("equal resolutions");
    Grid2D::tensor(&factor, &factor)
}

/// Exact L1 norm of S_{k,k} applied to the counterexample, via the 1D
/// shortcut: |w_{2^n}| = 1 and the integrand factorizes over the product
/// measure, so the norm is the square of the (k-2^n)-th Lebesgue constant.
pub fn partial_sum_norm(n: u32, k: u64) -> Result<DyadicRational> {
    check_block_index(n, k)?;
    let l = lebesgue_constant(k - (1u64 << n));
    Ok(&l * &l)
}

/// The same norm via the full 2D route (materialized grid, transform-path
/// partial sum, exact L1). Independent oracle for `partial_sum_norm`.
pub fn partial_sum_norm_oracle(n: u32, k: u64) -> Result<DyadicRational> {
    check_block_index(n, k)?;
    let f = counterexample(n)?;
    Ok(partial_sum_2d(&f, k, k)?.l1_norm())
}

/// Which evaluation route a divergence sweep used for the partial-sum norms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormPath {
    /// Lebesgue-constant shortcut; exact, cheap, the production route.
    Shortcut1D,
    /// Full 2D grids and transforms; exact, for small block indices.
    Oracle2D,
}

impl NormPath {
    pub fn name(&self) -> &'static str {
        match self {
            NormPath::Shortcut1D => "1d",
            NormPath::Oracle2D => "2d-oracle",
        }
    }
}

/// One block row of the divergence experiment: the weighted sum over
/// k in (2^n, 2^(n+1)] and its ratio against the weight at the block start.
#[derive(Debug, Clone, PartialEq)]
pub struct DivergenceRecord {
    pub n: u32,
    pub block_sum: f64,
    pub phi_at_block: f64,
    pub ratio: f64,
    pub exact_norms_used: bool,
    pub path: NormPath,
}

fn weight_denominator(k: u64, log_base: LogBase) -> f64 {
    let log = log_base.log((k + 1) as f64);
    (k as f64) * log * log
}

fn block_record(
    n: u32,
    phi: &WeightFunction,
    log_base: LogBase,
    norm_at: &dyn Fn(u64) -> DyadicRational,
    path: NormPath,
) -> DivergenceRecord {
    let low = 1u64 << n;
    let mut block_sum = 0.0;
    for k in (low + 1)..=(2 * low) {
        let norm = norm_at(k).to_f64();
        block_sum += norm * phi.eval(k) / weight_denominator(k, log_base);
    }
    let phi_at_block = phi.eval(low);
    DivergenceRecord {
        n,
        block_sum,
        phi_at_block,
        ratio: block_sum / phi_at_block,
        exact_norms_used: true,
        path,
    }
}

/// The weighted block sums of the divergence experiment for every block
/// index n in [n_min, n_max]. For the counterexample at block n the full
/// weighted series collapses to the (2^n, 2^(n+1)] block because all
/// earlier quadratic partial sums vanish, so each record is an exact
/// finite sum. Blocks are computed in parallel and emitted in order.
pub fn divergence_sweep(
    n_min: u32,
    n_max: u32,
    phi: &WeightFunction,
    log_base: LogBase,
    path: NormPath,
) -> Result<Vec<DivergenceRecord>> {
    if n_min > n_max {
        return Err(Error::InvalidBlockRange { n_min, n_max });
    }
    assert!(
        phi.is_nondecreasing_up_to(2u64 << n_max.min(20)),
        "weight function must be nondecreasing"
    );
    match path {
        NormPath::Shortcut1D => Ok((n_min..=n_max)
            .into_par_iter()
            .map(|n| {
                let norm = |k: u64| partial_sum_norm(n, k).expect("k inside block");
                block_record(n, phi, log_base, &norm, path)
            })
            .collect()),
        NormPath::Oracle2D => (n_min..=n_max)
            .map(|n| {
                // One spectrum per block; each k truncates a copy.
                let f = counterexample(n)?;
                let spectrum = analyze2d(&f);
                let norm = |k: u64| {
                    let mut clipped = spectrum.clone();
                    crate::walsh::truncate_spectrum_2d(&mut clipped, k, k);
                    synthesize2d(&clipped).l1_norm()
                };
                Ok(block_record(n, phi, log_base, &norm, path))
            })
            .collect(),
    }
}

/// The unweighted strong-convergence sum: the partial series of exact
/// quadratic partial-sum norms against 1/(k log^2(k+1)).
pub fn strong_sum_2d(f: &Grid2D, k_max: u64, log_base: LogBase) -> Result<f64> {
    let capacity = 1u64 << f.resolution();
    if k_max > capacity {
        return Err(Error::PartialSumOutOfRange {
            order: k_max,
            resolution: f.resolution(),
        });
    }
    let spectrum = analyze2d(f);
    let mut total = 0.0;
    for k in 1..=k_max {
        let mut clipped = spectrum.clone();
        crate::walsh::truncate_spectrum_2d(&mut clipped, k, k);
        let norm = synthesize2d(&clipped).l1_norm();
        total += norm.to_f64() / weight_denominator(k, log_base);
    }
    Ok(total)
}

/// The logarithmically averaged 1D partial-sum norms:
/// (1/log n) sum_{k=1}^{n} ||S_k f||_1 / k, with exact norms.
pub fn log_average_1d(f: &Grid1D, n: u64, log_base: LogBase) -> Result<f64> {
    if n < 2 {
        return Err(Error::AverageTooShort { n });
    }
    let capacity = 1u64 << f.resolution();
    if n > capacity {
        return Err(Error::PartialSumOutOfRange {
            order: n,
            resolution: f.resolution(),
        });
    }
    let spectrum = analyze(f);
    // Running synthesis: S_k = S_{k-1} + coefficient(k-1) * w_{k-1},
    // tracked on mantissas over the spectrum's scale.
    let len = f.len();
    let mut running = vec![0i64; len];
    let mut total = 0.0;
    let scale_exp = spectrum.value_scale() + f.resolution();
    for k in 1..=n {
        let coeff = spectrum.mantissa(k - 1);
        if coeff != 0 {
            for (j, cell) in running.iter_mut().enumerate() {
                let sign = 1 - 2 * i64::from(((k - 1) & j as u64).count_ones() & 1);
                *cell = cell
                    .checked_add(sign * coeff)
                    .expect("grid cell overflow: value exceeds i64");
            }
        }
        let sum: i128 = running.iter().map(|&c| (c as i128).abs()).sum();
        let norm = DyadicRational::new(BigInt::from(sum), scale_exp);
        total += norm.to_f64() / (k as f64);
    }
    Ok(total / log_base.log(n as f64))
}

/// Which running prefix the asymptotic ratio tracks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FineVariant {
    /// Prefix sums of the variation V(k).
    Variation,
    /// Prefix sums of the Lebesgue constants.
    Lebesgue,
}

impl FineVariant {
    pub fn name(&self) -> &'static str {
        match self {
            FineVariant::Variation => "variation",
            FineVariant::Lebesgue => "lebesgue",
        }
    }
}

/// Ratios (sum_{k<=n} X(k)) / (n ln n) at power-of-two checkpoints (plus the
/// endpoint), with X the variation or the Lebesgue constant. The measured
/// limits are reported, never asserted.
pub fn fine_ratios(n_max: u64, variant: FineVariant) -> Vec<(u64, f64)> {
    assert!(n_max >= 2, "ratios need n_max >= 2");
    let mut checkpoints = Vec::new();
    let mut ratio_at = |n: u64, prefix: f64| {
        let ratio = prefix / (n as f64 * (n as f64).ln());
        checkpoints.push((n, ratio));
    };
    match variant {
        FineVariant::Variation => {
            let mut prefix: u128 = 0;
            for n in 1..=n_max {
                prefix += u128::from(variation(n));
                if n >= 2 && (n.is_power_of_two() || n == n_max) {
                    ratio_at(n, prefix as f64);
                }
            }
        }
        FineVariant::Lebesgue => {
            let mut prefix = DyadicRational::zero();
            for n in 1..=n_max {
                prefix = &prefix + &lebesgue_constant(n);
                if n >= 2 && (n.is_power_of_two() || n == n_max) {
                    ratio_at(n, prefix.to_f64());
                }
            }
        }
    }
    checkpoints
}

/// Both sides of the discrete Cauchy-Schwarz step over the first 2^n
/// variations: ( sum V(k) )^2 and 2^n * sum V(k)^2, as exact integers.
pub fn cauchy_schwarz_sides(n: u32) -> (BigInt, BigInt) {
    let count = 1u64 << n;
    let mut sum: u128 = 0;
    let mut sum_sq: u128 = 0;
    for k in 1..=count {
        let v = u128::from(variation(k));
        sum += v;
        sum_sq += v * v;
    }
    let lhs = BigInt::from(sum) * BigInt::from(sum);
    let rhs = BigInt::from(count) * BigInt::from(sum_sq);
    (lhs, rhs)
}

/// The Cauchy-Schwarz sanity anchor: always true.
pub fn cauchy_schwarz_check(n: u32) -> bool {
    let (lhs, rhs) = cauchy_schwarz_sides(n);
    lhs <= rhs
}
