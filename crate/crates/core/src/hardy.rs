//! The dyadic maximal function and exact H_1 norms.
//!
//! For a resolution-N cylinder function the dyadic averages stabilize at
//! depth N (the depth-N average is the function itself), so the supremum
//! over all depths is attained within k <= N and the maximal function is
//! computed exactly by a finite fold. That makes the H_1 norm an exact
//! dyadic rational, not an approximation.

use crate::dyadic::{shift_up, DyadicRational, Grid1D, Grid2D};
use crate::walsh::{dyadic_averages_1d, dyadic_averages_2d};

/// Exact L1 and H_1 norms of a function together with its maximal function.
#[derive(Debug, Clone, PartialEq)]
pub struct HardyReport1D {
    pub l1: DyadicRational,
    pub h1: DyadicRational,
    pub maximal: Grid1D,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HardyReport2D {
    pub l1: DyadicRational,
    pub h1: DyadicRational,
    pub maximal: Grid2D,
}

fn fold_max(cell_count: usize, layers: impl Iterator<Item = (u32, Vec<i64>)>) -> (u32, Vec<i64>) {
    let mut result = vec![0i64; cell_count];
    let mut common = 0u32;
    for (scale, cells) in layers {
        if scale > common {
            let d = scale - common;
            for slot in result.iter_mut() {
                *slot = shift_up(*slot, d);
            }
            common = scale;
        }
        let d = common - scale;
        for (slot, &c) in result.iter_mut().zip(&cells) {
            let v = shift_up(c, d)
                .checked_abs()
                .expect("grid cell overflow: value exceeds i64");
            if v > *slot {
                *slot = v;
            }
        }
    }
    (common, result)
}

/// Cellwise supremum of the absolute dyadic interval averages of f over all
/// depths k = 0..=N.
pub fn maximal_function_1d(f: &Grid1D) -> Grid1D {
    let layers = dyadic_averages_1d(f)
        .into_iter()
        .map(|g| (g.scale(), g.cells().to_vec()));
    let (scale, cells) = fold_max(f.len(), layers);
    Grid1D::from_scaled(f.resolution(), scale, cells)
}

/// Cellwise supremum of the absolute dyadic square averages of f over all
/// depths k = 0..=N.
pub fn maximal_function_2d(f: &Grid2D) -> Grid2D {
    let layers = dyadic_averages_2d(f)
        .into_iter()
        .map(|g| (g.scale(), g.cells().to_vec()));
    let (scale, cells) = fold_max(f.len(), layers);
    Grid2D::from_scaled(f.resolution(), scale, cells)
}

/// Exact H_1 norm: the L1 norm of the maximal function.
pub fn h1_norm_1d(f: &Grid1D) -> HardyReport1D {
    let maximal = maximal_function_1d(f);
    HardyReport1D {
        l1: f.l1_norm(),
        h1: maximal.l1_norm(),
        maximal,
    }
}

pub fn h1_norm_2d(f: &Grid2D) -> HardyReport2D {
    let maximal = maximal_function_2d(f);
    HardyReport2D {
        l1: f.l1_norm(),
        h1: maximal.l1_norm(),
        maximal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::dirichlet_power_of_two;
    use crate::walsh::walsh_function;

    #[test]
    fn constant_is_its_own_maximal() {
        let c = Grid2D::constant(3, 5);
        assert_eq!(maximal_function_2d(&c), c);
        let report = h1_norm_2d(&Grid2D::constant(2, 1));
        assert_eq!(report.h1, DyadicRational::one());
        assert_eq!(report.l1, DyadicRational::one());
    }

    #[test]
    fn walsh_pair_has_unit_h1() {
        // w_1 (x) w_1: the depth-0 average vanishes, the depth-1 average is
        // the function itself with |values| = 1.
        let w1 = walsh_function(1, 1).unwrap();
        let f = Grid2D::tensor(&w1, &w1).unwrap();
        let maximal = maximal_function_2d(&f);
        assert_eq!(maximal, Grid2D::constant(1, 1));
        let report = h1_norm_2d(&f);
        assert_eq!(report.h1, DyadicRational::one());
        assert_eq!(report.l1, DyadicRational::one());
    }

    #[test]
    fn product_difference_kernel_maximal_is_abs() {
        // f_{0,0} at resolution 1: averages vanish below the top depth.
        let f = Grid2D::from_cells(1, vec![1, -1, -1, 1]);
        assert_eq!(maximal_function_2d(&f), f.abs());
        assert_eq!(h1_norm_2d(&f).h1, DyadicRational::one());
    }

    #[test]
    fn one_dimensional_examples() {
        assert_eq!(
            h1_norm_1d(&Grid1D::constant(3, 1)).h1,
            DyadicRational::one()
        );

        for m in 0..6u64 {
            let f = walsh_function(m, 4).unwrap();
            assert_eq!(h1_norm_1d(&f).h1, DyadicRational::one(), "w_{m}");
        }

        // D_{2^(n+1)} - D_{2^n}: value 2^n on I_{n+1}, -2^n on I_n minus
        // I_{n+1}; every average below depth n+1 vanishes.
        for n in 0..5u32 {
            let fine = dirichlet_power_of_two(n + 1, n + 1).unwrap();
            let coarse = dirichlet_power_of_two(n, n + 1).unwrap();
            let diff = fine.sub(&coarse).unwrap();
            let report = h1_norm_1d(&diff);
            assert_eq!(report.l1, DyadicRational::one(), "n = {n}");
            assert_eq!(report.h1, DyadicRational::one(), "n = {n}");
            assert_eq!(report.maximal, diff.abs(), "n = {n}");
        }
    }

    #[test]
    fn h1_dominates_l1() {
        let f = Grid2D::from_cells(2, vec![3, -7, 2, 0, 5, 1, -1, 4, 9, -2, 6, 8, -3, 0, 1, 2]);
        let report = h1_norm_2d(&f);
        assert!(report.h1 >= report.l1);
    }

    #[test]
    fn exact_homogeneity() {
        let f = Grid2D::from_cells(1, vec![4, -1, 3, 2]);
        let c = DyadicRational::from_ratio(-3, 2);
        let scaled = f.scale_by(&c);
        assert_eq!(h1_norm_2d(&scaled).h1, &c.abs() * &h1_norm_2d(&f).h1);
    }
}
