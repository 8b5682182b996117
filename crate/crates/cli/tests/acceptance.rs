//! Acceptance suite: one test per headline claim, each printing a pass line.
//! Exact claims are asserted as exact equalities of dyadic rationals or
//! integer grids; measured bands carry the pinned thresholds.

use std::process::Command;
use std::time::Instant;

use rayon::prelude::*;

use walshkit::bitops::variation;
use walshkit::dyadic::{DyadicRational, Grid1D, Grid2D};
use walshkit::hardy::h1_norm_1d;
use walshkit::hardy::h1_norm_2d;
use walshkit::kernels::{
    dirichlet_direct, dirichlet_recursive, lebesgue_constant, lebesgue_sweep, minimal_resolution,
};
use walshkit::strong::{
    cauchy_schwarz_sides, closed_form_partial_sum, counterexample, divergence_sweep, fine_ratios,
    log_average_1d, partial_sum_norm, FineVariant, LogBase, NormPath, WeightFunction,
};
use walshkit::verify::SplitMix64;
use walshkit::walsh::{
    analyze, analyze2d, partial_sum_2d, synthesize, synthesize2d, walsh_function,
};

#[test]
fn acceptance_01_kernel_construction_equivalence() {
    let start = Instant::now();
    let mismatches: u64 = (1..=4096u64)
        .into_par_iter()
        .map(|n| {
            let resolution = minimal_resolution(n);
            let direct = dirichlet_direct(n, resolution).unwrap();
            let recursive = dirichlet_recursive(n, resolution).unwrap();
            u64::from(direct != recursive)
        })
        .sum();
    let elapsed = start.elapsed();
    assert_eq!(mismatches, 0);
    assert!(elapsed.as_secs() < 60, "took {elapsed:?}");
    println!("[PASS] criterion 1: direct = recursive for n <= 4096 ({elapsed:?})");
}

#[test]
fn acceptance_02_power_of_two_closed_form() {
    for m in 0..=12u32 {
        // closed form written out literally: 2^m on cells of I_m, 0 elsewhere
        let cells: Vec<i64> = (0..(1u64 << m))
            .map(|j| if j % (1u64 << m) == 0 { 1i64 << m } else { 0 })
            .collect();
        let expected = Grid1D::from_cells(m, cells);
        assert_eq!(dirichlet_recursive(1 << m, m).unwrap(), expected, "m = {m}");
        assert_eq!(dirichlet_direct(1 << m, m).unwrap(), expected, "m = {m}");
    }
    println!("[PASS] criterion 2: D_(2^m) closed form exact for m <= 12");
}

#[test]
fn acceptance_03_variation_bounds() {
    let sweep = lebesgue_sweep(4096);
    assert_eq!(sweep.records.len(), 4096);
    let mut violations = 0usize;
    for record in &sweep.records {
        let v = DyadicRational::from_int(variation(record.n) as i64);
        let lower = &DyadicRational::from_int(8) * &record.constant >= v.clone();
        let upper = record.constant <= v;
        if !(lower && upper && record.lower_ok && record.upper_ok) {
            violations += 1;
        }
        // the closed norm recursion agrees with the grid-based sweep value
        assert_eq!(
            record.constant,
            lebesgue_constant(record.n),
            "n = {}",
            record.n
        );
    }
    assert_eq!(violations, 0);
    println!("[PASS] criterion 3: V(n)/8 <= L(n) <= V(n) exactly for n <= 4096, 0 violations");
}

#[test]
fn acceptance_04_coefficient_pattern() {
    for n in 0..=8u32 {
        let spectrum = analyze2d(&counterexample(n).unwrap());
        let low = 1u64 << n;
        let high = 2 * low;
        for i in 0..high {
            for j in 0..high {
                let expected = if (low..high).contains(&i) && (low..high).contains(&j) {
                    DyadicRational::one()
                } else {
                    DyadicRational::zero()
                };
                assert_eq!(spectrum.value(i, j), expected, "n = {n}, ({i},{j})");
            }
        }
    }
    println!("[PASS] criterion 4: coefficient pattern is the exact 0/1 block for n <= 8");
}

#[test]
fn acceptance_05_unit_hardy_norm() {
    for n in 0..=8u32 {
        let f = counterexample(n).unwrap();
        assert_eq!(f.l1_norm(), DyadicRational::one(), "n = {n}");
        let report = h1_norm_2d(&f);
        assert_eq!(report.h1, DyadicRational::one(), "n = {n}");
        assert_eq!(report.l1, DyadicRational::one(), "n = {n}");
    }
    println!("[PASS] criterion 5: L1 = H1 = 1 exactly for n <= 8");
}

#[test]
fn acceptance_06_closed_form_identity() {
    for n in 0..=6u32 {
        let f = counterexample(n).unwrap();
        let low = 1u64 << n;
        let resolution = n + 1;
        for k in (low + 1)..=(2 * low) {
            let transform_path = partial_sum_2d(&f, k, k).unwrap();
            // right-hand side composed literally from first principles
            let w = walsh_function(low, resolution).unwrap();
            let d = dirichlet_direct(k - low, resolution).unwrap();
            let factor = w.mul(&d).unwrap();
            let literal = Grid2D::tensor(&factor, &factor).unwrap();
            assert_eq!(transform_path, literal, "n = {n}, k = {k}");
            assert_eq!(
                transform_path,
                closed_form_partial_sum(n, k).unwrap(),
                "n = {n}, k = {k}"
            );
            // 2D oracle norm vs 1D shortcut
            let l = lebesgue_constant(k - low);
            assert_eq!(transform_path.l1_norm(), &l * &l, "n = {n}, k = {k}");
            assert_eq!(partial_sum_norm(n, k).unwrap(), &l * &l, "n = {n}, k = {k}");
        }
    }
    println!("[PASS] criterion 6: partial-sum closed form and norm identity exact for n <= 6");
}

#[test]
fn acceptance_07_squared_variation_bound() {
    for n in 0..=12u32 {
        let low = 1u64 << n;
        for k in (low + 1)..=(2 * low) {
            let norm = partial_sum_norm(n, k).unwrap();
            let v = variation(k - low);
            let lhs = &DyadicRational::from_int(64) * &norm;
            let rhs = DyadicRational::from_int((v * v) as i64);
            assert!(lhs >= rhs, "n = {n}, k = {k}");
        }
    }
    println!("[PASS] criterion 7: 64 ||S_kk f_nn|| >= V^2(k - 2^n) exactly, full sweep n <= 12");
}

#[test]
fn acceptance_08_log_weight_divergence() {
    let start = Instant::now();
    let records = divergence_sweep(
        6,
        13,
        &WeightFunction::Log,
        LogBase::Natural,
        NormPath::Shortcut1D,
    )
    .unwrap();
    let elapsed = start.elapsed();
    for record in &records {
        assert!(
            record.ratio >= 0.02,
            "n = {}: ratio {} below floor",
            record.n,
            record.ratio
        );
    }
    for pair in records.windows(2) {
        assert!(
            pair[0].block_sum <= pair[1].block_sum,
            "block sums must be nondecreasing: n = {} -> {}",
            pair[0].n,
            pair[1].n
        );
    }
    assert!(elapsed.as_secs() < 120, "took {elapsed:?}");
    println!(
        "[PASS] criterion 8: log-weight block sums nondecreasing with ratio >= 0.02 for n = 6..13"
    );
}

#[test]
fn acceptance_09_unit_weight_bounded() {
    let records = divergence_sweep(
        4,
        12,
        &WeightFunction::One,
        LogBase::Natural,
        NormPath::Shortcut1D,
    )
    .unwrap();
    let max = records.iter().map(|r| r.block_sum).fold(0.0f64, f64::max);
    let min = records
        .iter()
        .map(|r| r.block_sum)
        .fold(f64::INFINITY, f64::min);
    assert!(
        max / min < 3.0,
        "unit-weight block sums spread too far: max/min = {}",
        max / min
    );
    println!(
        "[PASS] criterion 9: unit-weight block sums within a fixed band for n = 4..12 (max/min = {:.4})",
        max / min
    );
}

#[test]
fn acceptance_10_fine_ratio_convergence() {
    let start = Instant::now();
    let variation_ratios = fine_ratios(1 << 20, FineVariant::Variation);
    let lebesgue_ratios = fine_ratios(1 << 16, FineVariant::Lebesgue);
    let elapsed = start.elapsed();
    let at = |table: &[(u64, f64)], n: u64| table.iter().find(|(m, _)| *m == n).unwrap().1;

    let var_early = at(&variation_ratios, 1 << 18);
    let var_late = at(&variation_ratios, 1 << 20);
    let var_delta = (var_early - var_late).abs() / var_late;
    assert!(var_delta < 0.05, "variation delta {var_delta}");
    assert!((0.2..1.0).contains(&var_late), "variation limit {var_late}");

    let leb_early = at(&lebesgue_ratios, 1 << 14);
    let leb_late = at(&lebesgue_ratios, 1 << 16);
    let leb_delta = (leb_early - leb_late).abs() / leb_late;
    assert!(leb_delta < 0.08, "lebesgue delta {leb_delta}");
    assert!((0.2..1.0).contains(&leb_late), "lebesgue limit {leb_late}");

    assert!(elapsed.as_secs() < 300, "took {elapsed:?}");
    println!(
        "[PASS] criterion 10: ratios converge (variation {:.4} delta {:.2}%, lebesgue {:.4} delta {:.2}%)",
        var_late,
        100.0 * var_delta,
        leb_late,
        100.0 * leb_delta
    );
}

#[test]
fn acceptance_11_cauchy_schwarz_step() {
    for n in 1..=20u32 {
        let (lhs, rhs) = cauchy_schwarz_sides(n);
        assert!(lhs <= rhs, "n = {n}");
        if n <= 2 {
            assert_eq!(lhs, rhs, "equality expected at n = {n}");
        } else {
            assert!(lhs < rhs, "strict inequality expected at n = {n}");
        }
    }
    println!(
        "[PASS] criterion 11: Cauchy-Schwarz step exact for n <= 20, equality only at n = 1, 2"
    );
}

#[test]
fn acceptance_12_transform_suite() {
    let mut rng = SplitMix64::new(0xACCE97);

    // direct inner products, written here as the transform-free reference
    let naive = |g: &Grid1D| -> Vec<DyadicRational> {
        (0..g.len() as u64)
            .map(|i| {
                let w = walsh_function(i, g.resolution()).unwrap();
                g.mul(&w).unwrap().integrate()
            })
            .collect()
    };

    for round in 0..150 {
        let resolution = 1 + (round % 8) as u32;
        let g = rng.grid_1d(resolution, 75);
        let spectrum = analyze(&g);
        assert_eq!(synthesize(&spectrum), g);
        let energy = g.mul(&g).unwrap().integrate();
        let coeff_energy = spectrum
            .values()
            .fold(DyadicRational::zero(), |acc, c| &acc + &(&c * &c));
        assert_eq!(energy, coeff_energy);
    }
    for round in 0..50 {
        let resolution = 1 + (round % 5) as u32;
        let g = rng.grid_2d(resolution, 40);
        let spectrum = analyze2d(&g);
        assert_eq!(synthesize2d(&spectrum), g);
        let energy = g.mul(&g).unwrap().integrate();
        let coeff_energy = spectrum
            .values()
            .fold(DyadicRational::zero(), |acc, c| &acc + &(&c * &c));
        assert_eq!(energy, coeff_energy);
    }

    for _ in 0..5 {
        let g = rng.grid_1d(6, 90);
        let fast: Vec<DyadicRational> = analyze(&g).values().collect();
        assert_eq!(fast, naive(&g));
    }

    let resolution = 6;
    for m in 0..64u64 {
        for n in 0..64u64 {
            let wm = walsh_function(m, resolution).unwrap();
            let wn = walsh_function(n, resolution).unwrap();
            assert_eq!(
                wm.mul(&wn).unwrap(),
                walsh_function(m ^ n, resolution).unwrap(),
                "m = {m}, n = {n}"
            );
        }
    }
    println!("[PASS] criterion 12: 200 round-trips with exact Parseval, butterfly = naive, character identity");
}

#[test]
fn acceptance_13_log_average_band() {
    let mut rng = SplitMix64::new(0x513);
    let mut worst: f64 = 0.0;
    let mut tested = 0;
    while tested < 100 {
        let f = rng.grid_1d(8, 60);
        if f.is_zero() {
            continue;
        }
        tested += 1;
        let s = log_average_1d(&f, 256, LogBase::Natural).unwrap();
        let h1 = h1_norm_1d(&f).h1.to_f64();
        worst = worst.max(s / h1);
    }
    assert!(worst <= 8.0, "worst ratio {worst}");
    println!("[PASS] criterion 13: weighted-average/H1 ratio <= 8.0 over 100 random grids (worst = {worst:.4})");
}

#[test]
fn acceptance_14_verify_determinism() {
    let run = |threads: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_walshkit"));
        cmd.args(["verify", "--suite", "all"]);
        if let Some(t) = threads {
            cmd.args(["--threads", t]);
        }
        let output = cmd.output().expect("binary runs");
        assert!(output.status.success(), "verify must pass");
        output.stdout
    };
    let first = run(None);
    let second = run(None);
    let single = run(Some("1"));
    assert_eq!(first, second, "same invocation must be byte-identical");
    assert_eq!(first, single, "thread count must not change the report");
    assert!(!first.is_empty());
    println!(
        "[PASS] criterion 14: verify reports are byte-identical across runs and thread counts"
    );
}
