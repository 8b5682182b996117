//! Deterministic self-check suites behind the `verify` subcommand.
//!
//! Every check is reproducible: randomized inputs come from a fixed-seed
//! generator, iteration orders are fixed, and details report exact values,
//! so two runs (at any thread count) print identical bytes.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::bitops::{order, variation, variation_prefix_sums, BinaryDigits};
use crate::dyadic::{DyadicRational, Grid1D, Grid2D};
use crate::hardy::{h1_norm_1d, h1_norm_2d, maximal_function_2d};
use crate::kernels::{
    dirichlet_direct, dirichlet_power_of_two, dirichlet_recursive, lebesgue_constant,
    lebesgue_sweep, minimal_resolution,
};
use crate::strong::{
    cauchy_schwarz_check, cauchy_schwarz_sides, closed_form_partial_sum, counterexample,
    divergence_sweep, fine_ratios, log_average_1d, partial_sum_norm, FineVariant, LogBase,
    NormPath, WeightFunction,
};
use crate::walsh::{
    analyze, analyze2d, dyadic_averages_2d, partial_sum_2d, synthesize, synthesize2d,
    walsh_function,
};

/// One verification outcome. `detail` is deterministic text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        Check {
            name,
            passed,
            detail,
        }
    }
}

/// Fixed-seed splitmix generator: the deterministic randomness source for
/// the verification suites and the acceptance tests.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform integer in [lo, hi].
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo) as u64 + 1;
        lo + (self.next_u64() % span) as i64
    }

    pub fn grid_1d(&mut self, resolution: u32, bound: i64) -> Grid1D {
        let cells = (0..(1u64 << resolution))
            .map(|_| self.int_in(-bound, bound))
            .collect();
        Grid1D::from_cells(resolution, cells)
    }

    pub fn grid_2d(&mut self, resolution: u32, bound: i64) -> Grid2D {
        let cells = (0..(1u64 << (2 * resolution)))
            .map(|_| self.int_in(-bound, bound))
            .collect();
        Grid2D::from_cells(resolution, cells)
    }
}

/// A named suite of deterministic checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Bitops,
    Dyadic,
    Walsh,
    Kernels,
    Hardy,
    Strong,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Bitops,
        Suite::Dyadic,
        Suite::Walsh,
        Suite::Kernels,
        Suite::Hardy,
        Suite::Strong,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Bitops => "bitops",
            Suite::Dyadic => "dyadic",
            Suite::Walsh => "walsh",
            Suite::Kernels => "kernels",
            Suite::Hardy => "hardy",
            Suite::Strong => "strong",
        }
    }

    pub fn run(&self) -> Vec<Check> {
        match self {
            Suite::Bitops => suite_bitops(),
            Suite::Dyadic => suite_dyadic(),
            Suite::Walsh => suite_walsh(),
            Suite::Kernels => suite_kernels(),
            Suite::Hardy => suite_hardy(),
            Suite::Strong => suite_strong(),
        }
    }
}

fn suite_bitops() -> Vec<Check> {
    let mut checks = Vec::new();
    let limit = 1u64 << 16;

    let ok = (1..=limit).all(|n| {
        let j = order(n).unwrap();
        (1u64 << j) <= n && n < (1u64 << (j + 1))
    });
    checks.push(Check::new(
        "bitops/order-brackets",
        ok,
        format!("2^|n| <= n < 2^(|n|+1) for n <= {limit}"),
    ));

    let ok = (1..=limit).all(|n| {
        let v = variation(n);
        2 <= v && v <= u64::from(order(n).unwrap()) + 2
    });
    checks.push(Check::new(
        "bitops/variation-bounds",
        ok,
        format!("2 <= V(n) <= |n| + 2 for n <= {limit}"),
    ));

    let ok = (0..=limit).all(|n| variation(n) == BinaryDigits::new(n).variation_by_definition());
    checks.push(Check::new(
        "bitops/variation-definition",
        ok,
        format!("popcount route equals the defining digit sum for n <= {limit}"),
    ));

    let sums = variation_prefix_sums(1 << 12);
    let monotone = sums.windows(2).all(|w| w[0] <= w[1]);
    let mut direct = BigInt::from(0);
    let recomputed = sums.iter().enumerate().all(|(i, s)| {
        direct += variation(i as u64 + 1);
        &direct == s
    });
    checks.push(Check::new(
        "bitops/prefix-sums",
        monotone && recomputed,
        "monotone and equal to direct resummation for n <= 2^12".to_string(),
    ));

    checks
}

fn suite_dyadic() -> Vec<Check> {
    let mut checks = Vec::new();
    let mut rng = SplitMix64::new(0xD1AD1C);

    let mut ok = true;
    for _ in 0..20 {
        let g = rng.grid_1d(4, 50);
        for delta in 0..=4 {
            ok &= g.refine(4 + delta).unwrap().integrate() == g.integrate();
            ok &= g.refine(4 + delta).unwrap().l1_norm() == g.l1_norm();
        }
        let t = rng.grid_2d(3, 20);
        for delta in 0..=2 {
            ok &= t.refine(3 + delta).unwrap().integrate() == t.integrate();
        }
    }
    checks.push(Check::new(
        "dyadic/refine-invariance",
        ok,
        "integral and L1 unchanged under refinement (20 random grids)".to_string(),
    ));

    let mut ok = Grid1D::zeros(5).l1_norm().is_zero();
    for _ in 0..40 {
        let g = rng.grid_1d(5, 9);
        ok &= g.l1_norm().is_zero() == g.is_zero();
    }
    checks.push(Check::new(
        "dyadic/l1-zero-iff-zero",
        ok,
        "L1 vanishes exactly on the zero grid (40 random grids)".to_string(),
    ));

    let mut ok = true;
    for _ in 0..40 {
        let a = rng.grid_1d(8, 100);
        let b = rng.grid_1d(8, 100);
        let sum = a.add(&b).unwrap();
        ok &= sum.l1_norm() <= &a.l1_norm() + &b.l1_norm();
    }
    checks.push(Check::new(
        "dyadic/triangle-inequality",
        ok,
        "exact comparison on 40 random pairs at resolution 8".to_string(),
    ));

    let mut ok = true;
    for _ in 0..20 {
        let a = rng.grid_1d(6, 30);
        let b = rng.grid_1d(6, 30);
        let t = Grid2D::tensor(&a, &b).unwrap();
        ok &= t.l1_norm() == &a.l1_norm() * &b.l1_norm();
    }
    checks.push(Check::new(
        "dyadic/tensor-multiplicativity",
        ok,
        "L1 of a tensor product factorizes exactly (20 random pairs)".to_string(),
    ));

    checks
}

// Direct O(4^N) inner products against every Walsh function: the
// transform-independent reference for `analyze`.
fn naive_spectrum(grid: &Grid1D) -> Vec<DyadicRational> {
    let capacity = 1u64 << grid.resolution();
    (0..capacity)
        .map(|i| {
            let w = walsh_function(i, grid.resolution()).unwrap();
            grid.mul(&w).unwrap().integrate()
        })
        .collect()
}

fn suite_walsh() -> Vec<Check> {
    let mut checks = Vec::new();
    let mut rng = SplitMix64::new(0x3A15);

    let mut ok = true;
    for _ in 0..40 {
        let g = rng.grid_1d(8, 40);
        let spectrum = analyze(&g);
        ok &= synthesize(&spectrum) == g;
        let energy = g.mul(&g).unwrap().integrate();
        let coeff_energy = spectrum
            .values()
            .fold(DyadicRational::zero(), |acc, c| &acc + &(&c * &c));
        ok &= energy == coeff_energy;
    }
    for _ in 0..10 {
        let t = rng.grid_2d(5, 15);
        let spectrum = analyze2d(&t);
        ok &= synthesize2d(&spectrum) == t;
        let energy = t.mul(&t).unwrap().integrate();
        let coeff_energy = spectrum
            .values()
            .fold(DyadicRational::zero(), |acc, c| &acc + &(&c * &c));
        ok &= energy == coeff_energy;
    }
    checks.push(Check::new(
        "walsh/roundtrip-parseval",
        ok,
        "exact round-trip and Parseval (40 random 1D, 10 random 2D)".to_string(),
    ));

    let resolution = 6;
    let mut ok = true;
    for m in 0..64u64 {
        let wm = walsh_function(m, resolution).unwrap();
        for n in 0..64u64 {
            let wn = walsh_function(n, resolution).unwrap();
            let product = wm.mul(&wn).unwrap();
            let expected = if m == n {
                DyadicRational::one()
            } else {
                DyadicRational::zero()
            };
            ok &= product.integrate() == expected;
            ok &= product == walsh_function(m ^ n, resolution).unwrap();
        }
    }
    checks.push(Check::new(
        "walsh/orthonormal-multiplicative",
        ok,
        "int w_m w_n = [m=n] and w_m w_n = w_(m xor n) for m,n < 64".to_string(),
    ));

    let mut ok = true;
    for _ in 0..6 {
        let g = rng.grid_1d(6, 25);
        let fast: Vec<DyadicRational> = analyze(&g).values().collect();
        ok &= fast == naive_spectrum(&g);
    }
    checks.push(Check::new(
        "walsh/butterfly-vs-naive",
        ok,
        "fast transform equals direct inner products (6 random grids, N = 6)".to_string(),
    ));

    let mut ok = true;
    for _ in 0..6 {
        let t = rng.grid_2d(5, 12);
        let averages = dyadic_averages_2d(&t);
        for (k, avg) in averages.iter().enumerate() {
            ok &= *avg == partial_sum_2d(&t, 1 << k, 1 << k).unwrap();
        }
    }
    checks.push(Check::new(
        "walsh/averages-vs-partial-sums",
        ok,
        "block means equal dyadic-order partial sums (6 random grids, N = 5)".to_string(),
    ));

    checks
}

fn suite_kernels() -> Vec<Check> {
    let mut checks = Vec::new();

    let violations: u64 = (1..=1024u64)
        .into_par_iter()
        .map(|n| {
            let resolution = minimal_resolution(n);
            let same = dirichlet_direct(n, resolution).unwrap()
                == dirichlet_recursive(n, resolution).unwrap();
            u64::from(!same)
        })
        .sum();
    checks.push(Check::new(
        "kernels/direct-vs-recursive",
        violations == 0,
        format!("exact grid equality for n <= 1024 ({violations} violations)"),
    ));

    let mut ok = true;
    for m in 0..=10 {
        ok &= dirichlet_power_of_two(m, m).unwrap() == dirichlet_direct(1 << m, m).unwrap();
    }
    for m in 0..=20u32 {
        // reproducing property: the closed-form kernel has all-ones spectrum
        let spectrum = analyze(&dirichlet_power_of_two(m, m).unwrap());
        ok &= spectrum.values().all(|c| c == DyadicRational::one());
    }
    checks.push(Check::new(
        "kernels/power-of-two-closed-form",
        ok,
        "direct equality (m <= 10) and all-ones spectrum (m <= 20)".to_string(),
    ));

    let sweep = lebesgue_sweep(4096);
    let bound_violations = sweep
        .records
        .iter()
        .filter(|r| !(r.lower_ok && r.upper_ok))
        .count();
    let mismatches = sweep
        .records
        .iter()
        .filter(|r| r.constant != lebesgue_constant(r.n))
        .count();
    checks.push(Check::new(
        "kernels/variation-bounds",
        bound_violations == 0,
        format!("V(n)/8 <= L(n) <= V(n) exactly for n <= 4096 ({bound_violations} violations)"),
    ));
    checks.push(Check::new(
        "kernels/norm-recursion-vs-grid",
        mismatches == 0,
        format!(
            "closed-recursion constants equal grid norms for n <= 4096 ({mismatches} mismatches)"
        ),
    ));

    let mut ok = true;
    for n in 0..=256u64 {
        let resolution = 8;
        let spectrum = analyze(&dirichlet_recursive(n, resolution).unwrap());
        for i in 0..(1u64 << resolution) {
            let expected = if i < n {
                DyadicRational::one()
            } else {
                DyadicRational::zero()
            };
            ok &= spectrum.value(i) == expected;
        }
    }
    checks.push(Check::new(
        "kernels/spectrum-zero-one",
        ok,
        "coefficient i of D_n is [i < n] for n <= 256".to_string(),
    ));

    checks
}

fn suite_hardy() -> Vec<Check> {
    let mut checks = Vec::new();
    let mut rng = SplitMix64::new(0xAD17);

    let mut ok = true;
    for _ in 0..20 {
        let f = rng.grid_2d(5, 25);
        let report = h1_norm_2d(&f);
        ok &= report.h1 >= report.l1;
    }
    checks.push(Check::new(
        "hardy/h1-dominates-l1",
        ok,
        "exact comparison on 20 random grids at resolution 5".to_string(),
    ));

    let mut ok = true;
    for n in 0..=8u32 {
        let f = counterexample(n).unwrap();
        let report = h1_norm_2d(&f);
        ok &= report.h1 == DyadicRational::one() && report.l1 == DyadicRational::one();
    }
    checks.push(Check::new(
        "hardy/counterexample-unit-norm",
        ok,
        "H1 = L1 = 1 exactly for block indices n <= 8".to_string(),
    ));

    let mut ok = true;
    for _ in 0..10 {
        let f = rng.grid_2d(4, 12);
        let c = DyadicRational::from_ratio(rng.int_in(-9, 9) | 1, rng.int_in(0, 3) as u32);
        ok &= h1_norm_2d(&f.scale_by(&c)).h1 == &c.abs() * &h1_norm_2d(&f).h1;
    }
    checks.push(Check::new(
        "hardy/exact-homogeneity",
        ok,
        "H1(c f) = |c| H1(f) for dyadic-rational c (10 random grids)".to_string(),
    ));

    let mut ok = true;
    for _ in 0..6 {
        let f = rng.grid_2d(4, 15);
        // independent maximal route: fold the transform-path partial sums
        let mut alt = Grid2D::zeros(4);
        for k in 0..=4u32 {
            let s = partial_sum_2d(&f, 1 << k, 1 << k).unwrap().abs();
            let stacked = alt.add(&s).unwrap();
            let diff = alt.sub(&s).unwrap().abs();
            // max(a,b) = (a + b + |a - b|) / 2, all exact
            alt = stacked
                .add(&diff)
                .unwrap()
                .scale_by(&DyadicRational::from_ratio(1, 1));
        }
        ok &= alt == maximal_function_2d(&f);
    }
    checks.push(Check::new(
        "hardy/maximal-oracle-agreement",
        ok,
        "averaging route equals transform-path fold (6 random grids)".to_string(),
    ));

    checks
}

fn suite_strong() -> Vec<Check> {
    let mut checks = Vec::new();

    let mut ok = true;
    for n in 0..=6u32 {
        let f = counterexample(n).unwrap();
        let low = 1u64 << n;
        for k in 0..=low {
            ok &= partial_sum_2d(&f, k, k).unwrap().is_zero();
        }
        for k in (low + 1)..=(2 * low) {
            let transform_path = partial_sum_2d(&f, k, k).unwrap();
            let closed = closed_form_partial_sum(n, k).unwrap();
            ok &= transform_path == closed;
            let norm = partial_sum_norm(n, k).unwrap();
            ok &= closed.l1_norm() == norm;
            let l = lebesgue_constant(k - low);
            ok &= norm == &l * &l;
        }
    }
    checks.push(Check::new(
        "strong/partial-sum-identity-chain",
        ok,
        "S_{k,k} closed form, norms, and vanishing below the block (n <= 6)".to_string(),
    ));

    let mut ok = true;
    for n in 0..=12u32 {
        let low = 1u64 << n;
        for k in (low + 1)..=(2 * low) {
            let norm = partial_sum_norm(n, k).unwrap();
            let v = variation(k - low);
            ok &= &DyadicRational::from_int(64) * &norm >= DyadicRational::from_int((v * v) as i64);
        }
    }
    checks.push(Check::new(
        "strong/squared-variation-bound",
        ok,
        "64 ||S_{k,k}f|| >= V^2(k - 2^n) exactly, full blocks n <= 12".to_string(),
    ));

    let bounded = divergence_sweep(
        4,
        12,
        &WeightFunction::One,
        LogBase::Natural,
        NormPath::Shortcut1D,
    )
    .unwrap();
    let max = bounded.iter().map(|r| r.block_sum).fold(0.0, f64::max);
    let min = bounded
        .iter()
        .map(|r| r.block_sum)
        .fold(f64::INFINITY, f64::min);
    checks.push(Check::new(
        "strong/unit-weight-bounded",
        max / min < 3.0,
        format!(
            "block sums stay in a fixed band for n = 4..12 (max/min = {:.4})",
            max / min
        ),
    ));

    let diverging = divergence_sweep(
        6,
        13,
        &WeightFunction::Log,
        LogBase::Natural,
        NormPath::Shortcut1D,
    )
    .unwrap();
    let ratio_floor = diverging
        .iter()
        .map(|r| r.ratio)
        .fold(f64::INFINITY, f64::min);
    let nondecreasing = diverging
        .windows(2)
        .all(|w| w[0].block_sum <= w[1].block_sum);
    checks.push(Check::new(
        "strong/log-weight-divergence",
        ratio_floor >= 0.02 && nondecreasing,
        format!(
            "block sums nondecreasing for n = 6..13, ratio floor = {:.4}",
            ratio_floor
        ),
    ));

    let mut ok = true;
    for n in 1..=20u32 {
        ok &= cauchy_schwarz_check(n);
        let (lhs, rhs) = cauchy_schwarz_sides(n);
        ok &= (lhs == rhs) == (n <= 2);
    }
    checks.push(Check::new(
        "strong/cauchy-schwarz-step",
        ok,
        "exact inequality for n <= 20, equality exactly at n in {1,2}".to_string(),
    ));

    let var = fine_ratios(1 << 20, FineVariant::Variation);
    let leb = fine_ratios(1 << 16, FineVariant::Lebesgue);
    let at = |ratios: &[(u64, f64)], n: u64| ratios.iter().find(|(m, _)| *m == n).unwrap().1;
    let var_lo = at(&var, 1 << 18);
    let var_hi = at(&var, 1 << 20);
    let leb_lo = at(&leb, 1 << 14);
    let leb_hi = at(&leb, 1 << 16);
    let var_delta = (var_lo - var_hi).abs() / var_hi;
    let leb_delta = (leb_lo - leb_hi).abs() / leb_hi;
    let in_band = |x: f64| (0.2..1.0).contains(&x);
    checks.push(Check::new(
        "strong/fine-ratio-convergence",
        var_delta < 0.05 && leb_delta < 0.08 && in_band(var_hi) && in_band(leb_hi),
        format!(
            "variation ratio {:.4} (delta {:.2}%), lebesgue ratio {:.4} (delta {:.2}%)",
            var_hi,
            100.0 * var_delta,
            leb_hi,
            100.0 * leb_delta
        ),
    ));

    let mut rng = SplitMix64::new(0x51401);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let f = rng.grid_1d(8, 60);
        if f.is_zero() {
            continue;
        }
        let s = log_average_1d(&f, 256, LogBase::Natural).unwrap();
        let h1 = h1_norm_1d(&f).h1.to_f64();
        worst = worst.max(s / h1);
    }
    checks.push(Check::new(
        "strong/log-average-band",
        worst <= 8.0,
        format!(
            "weighted 1D average over H1 stays <= 8 (worst = {:.4})",
            worst
        ),
    ));

    let record = &divergence_sweep(
        1,
        1,
        &WeightFunction::One,
        LogBase::Natural,
        NormPath::Shortcut1D,
    )
    .unwrap()[0];
    let expected = 1.0 / (3.0 * 4f64.ln().powi(2)) + 1.0 / (4.0 * 5f64.ln().powi(2));
    checks.push(Check::new(
        "strong/two-term-block-value",
        (record.block_sum - expected).abs() < 1e-15,
        format!("block n = 1 equals the hand value {:.12}", expected),
    ));

    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass() {
        for suite in Suite::ALL {
            for check in suite.run() {
                assert!(check.passed, "{}: {}", check.name, check.detail);
            }
        }
    }

    #[test]
    fn splitmix_is_deterministic() {
        let mut a = SplitMix64::new(7);
        let mut b = SplitMix64::new(7);
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        let mut r = SplitMix64::new(9);
        for _ in 0..1000 {
            let v = r.int_in(-5, 5);
            assert!((-5..=5).contains(&v));
        }
    }
}
