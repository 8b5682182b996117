//! Walsh-Dirichlet kernels by two independent constructions, exact Lebesgue
//! constants, and the variation-bound sweep.
//!
//! The two kernel routes are deliberately redundant: `dirichlet_direct` is
//! the literal definition (sum of the first n Walsh functions) and
//! `dirichlet_recursive` peels binary digits through the kernel recursion.
//! Exact grid equality of the two is one of the standing self-checks.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::bitops::variation;
use crate::dyadic::{DyadicRational, Grid1D};
use crate::error::{Error, Result};

fn check_order(n: u64, resolution: u32) -> Result<()> {
    if resolution >= 64 || n > (1u64 << resolution) {
        return Err(Error::PartialSumOutOfRange {
            order: n,
            resolution,
        });
    }
    Ok(())
}

/// Smallest resolution whose Walsh span contains D_n: ceil(log2 n).
pub fn minimal_resolution(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

/// The closed form of D_{2^m}: value 2^m on the base interval I_m, zero
/// elsewhere. Cells inside I_m are exactly the indices divisible by 2^m.
pub fn dirichlet_power_of_two(m: u32, resolution: u32) -> Result<Grid1D> {
    check_order(1u64 << m, resolution)?;
    let step = 1usize << m;
    let mut cells = vec![0i64; 1usize << resolution];
    for slot in cells.iter_mut().step_by(step) {
        *slot = 1i64 << m;
    }
    Ok(Grid1D::from_cells(resolution, cells))
}

/// D_n by the defining sum of w_0..w_{n-1}, cell by cell. Quadratic in n;
/// kept as the reference construction. The Walsh signs come from a
/// bit-parity table over the resolution-sized index range.
pub fn dirichlet_direct(n: u64, resolution: u32) -> Result<Grid1D> {
    check_order(n, resolution)?;
    let len = 1usize << resolution;
    let mut sign = vec![1i64; len];
    for x in 1..len {
        // popcount parity by one-bit extension, mapped to +1/-1
        sign[x] = sign[x >> 1] * (1 - 2 * (x as i64 & 1));
    }
    let cells = (0..len)
        .map(|j| (0..n as usize).map(|k| sign[k & j]).sum())
        .collect();
    Ok(Grid1D::from_cells(resolution, cells))
}

/// D_n by peeling binary digits: with n = 2^l + m, m < 2^l, the kernel
/// satisfies D_{2^l + m} = D_{2^l} + w_{2^l} D_m, so walking the set bits of
/// n from the lowest up builds D_n in O(popcount(n) * 2^N).
pub fn dirichlet_recursive(n: u64, resolution: u32) -> Result<Grid1D> {
    check_order(n, resolution)?;
    let len = 1usize << resolution;
    let mut cells = vec![0i64; len];
    for l in 0..64 {
        if n & (1u64 << l) == 0 {
            continue;
        }
        let step = 1u64 << l;
        for (j, cell) in cells.iter_mut().enumerate() {
            let closed = if (j as u64).is_multiple_of(step) {
                1i64 << l
            } else {
                0
            };
            let sign = 1 - 2 * ((j as u64 >> l) & 1) as i64;
            *cell = closed + sign * *cell;
        }
    }
    Ok(Grid1D::from_cells(resolution, cells))
}

/// The exact n-th Lebesgue constant, the L1 norm of D_n.
///
/// Computed without a grid: restricting the digit-peeling recursion to I_l
/// and its complement gives the exact norm recursion
/// L(2^l + m) = 1 - m/2^l + L(m), so L(n) is a popcount-length sum of
/// dyadic rationals. Equality with the L1 norm of both grid constructions
/// is enforced by the test suites.
pub fn lebesgue_constant(n: u64) -> DyadicRational {
    debug_assert!(n >= 1);
    let mut total = DyadicRational::zero();
    for l in 0..64u32 {
        if n & (1u64 << l) == 0 {
            continue;
        }
        let remainder = n & ((1u64 << l) - 1);
        // 1 - remainder / 2^l, exactly (2^l - remainder) / 2^l.
        total =
            &total + &DyadicRational::new(BigInt::from((1i128 << l) - i128::from(remainder)), l);
    }
    total
}

/// One row of the Lebesgue-constant table: n, V(n), the exact constant, its
/// float shadow, and the two-sided variation bound checks
/// V(n)/8 <= L(n) <= V(n).
#[derive(Debug, Clone, PartialEq)]
pub struct LebesgueRecord {
    pub n: u64,
    pub variation: u64,
    pub constant: DyadicRational,
    pub constant_float: f64,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

/// The full sweep output: per-n records plus running prefix sums of the
/// constants for the asymptotic-ratio comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct LebesgueSweep {
    pub records: Vec<LebesgueRecord>,
    pub prefix_norms: Vec<DyadicRational>,
}

fn record_from_norm(n: u64, constant: DyadicRational) -> LebesgueRecord {
    let v = variation(n);
    let lower_ok = &DyadicRational::from_int(8) * &constant >= DyadicRational::from_int(v as i64);
    let upper_ok = constant <= DyadicRational::from_int(v as i64);
    let constant_float = constant.to_f64();
    LebesgueRecord {
        n,
        variation: v,
        constant,
        constant_float,
        lower_ok,
        upper_ok,
    }
}

// One contiguous chunk of the sweep: seed D_{a} by digit peeling, then walk
// n upward adding w_{n-1}, refining whenever n crosses a power of two.
fn sweep_chunk(a: u64, b: u64) -> Vec<LebesgueRecord> {
    let mut resolution = minimal_resolution(a);
    let mut cells = {
        let seed = dirichlet_recursive(a, resolution).expect("seed kernel in range");
        seed.cells().to_vec()
    };
    let mut records = Vec::with_capacity((b - a + 1) as usize);
    let mut push_record = |n: u64, cells: &[i64], resolution: u32| {
        let sum: i128 = cells.iter().map(|&c| (c as i128).abs()).sum();
        records.push(record_from_norm(
            n,
            DyadicRational::new(BigInt::from(sum), resolution),
        ));
    };
    push_record(a, &cells, resolution);
    for n in (a + 1)..=b {
        let needed = minimal_resolution(n);
        if needed > resolution {
            // replicate D_{n-1} onto the finer cells: sub-cells of j are
            // j and j + 2^old under LSB-first indexing, so refinement is
            // concatenation of copies
            cells = cells.repeat(1usize << (needed - resolution));
            resolution = needed;
        }
        let w = n - 1;
        for (j, cell) in cells.iter_mut().enumerate() {
            *cell += 1 - 2 * i64::from((w & j as u64).count_ones() & 1);
        }
        push_record(n, &cells, resolution);
    }
    records
}

/// Lebesgue constants for every 1 <= n <= n_max, with bound flags and prefix
/// sums. Kernels are built incrementally (each D_n from its predecessor), so
/// the sweep costs O(n_max * 2^N) cell operations; chunks run in parallel
/// and records are emitted in order of n regardless of scheduling.
pub fn lebesgue_sweep(n_max: u64) -> LebesgueSweep {
    assert!(n_max >= 1, "sweep needs n_max >= 1");
    let chunk_size = 2048u64.max(n_max / 64);
    let bounds: Vec<(u64, u64)> = (1..=n_max)
        .step_by(chunk_size as usize)
        .map(|a| (a, (a + chunk_size - 1).min(n_max)))
        .collect();
    let records: Vec<LebesgueRecord> = bounds
        .into_par_iter()
        .flat_map(|(a, b)| sweep_chunk(a, b))
        .collect();
    let mut prefix_norms = Vec::with_capacity(records.len());
    let mut running = DyadicRational::zero();
    for record in &records {
        running = &running + &record.constant;
        prefix_norms.push(running.clone());
    }
    LebesgueSweep {
        records,
        prefix_norms,
    }
}

/// Convenience: exact L1 norm of D_n computed from an actual grid at the
/// minimal sufficient resolution. Reference route for `lebesgue_constant`.
pub fn lebesgue_constant_by_grid(n: u64) -> DyadicRational {
    dirichlet_recursive(n, minimal_resolution(n))
        .expect("minimal resolution is sufficient")
        .l1_norm()
}
