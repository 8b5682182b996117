//! The Walsh-Paley system in natural (Hadamard) ordering, the fast
//! Walsh-Hadamard transform in one and two dimensions, rectangular partial
//! sums, and dyadic block averages.
//!
//! Normalization: `analyze` carries the 1/2^N measure factor, so spectra are
//! true Fourier coefficients; `synthesize` is the unnormalized dual sum.
//! Both directions are exact.

use crate::dyadic::{cell_add, cell_sub, normalize_cells, DyadicRational, Grid1D, Grid2D};
use crate::error::{Error, Result};

/// In-place unnormalized Walsh-Hadamard butterfly. Applying it twice
/// multiplies every entry by the length.
pub(crate) fn fwht(data: &mut [i64]) {
    let n = data.len();
    debug_assert!(n.is_power_of_two());
    let mut half = 1;
    while half < n {
        let mut start = 0;
        while start < n {
            for j in start..start + half {
                let a = data[j];
                let b = data[j + half];
                data[j] = cell_add(a, b);
                data[j + half] = cell_sub(a, b);
            }
            start += 2 * half;
        }
        half <<= 1;
    }
}

/// Separable 2D transform: butterfly every row, then every column.
fn fwht_2d(data: &mut [i64], side: usize) {
    for row in data.chunks_mut(side) {
        fwht(row);
    }
    let mut column = vec![0i64; side];
    for c in 0..side {
        for r in 0..side {
            column[r] = data[r * side + c];
        }
        fwht(&mut column);
        for r in 0..side {
            data[r * side + c] = column[r];
        }
    }
}

/// Walsh-Fourier coefficients of a 1D grid, same canonical mantissa/scale
/// representation as grids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum1D {
    resolution: u32,
    scale: u32,
    coeffs: Vec<i64>,
}

impl Spectrum1D {
    pub fn from_integer_coeffs(resolution: u32, coeffs: Vec<i64>) -> Self {
        assert_eq!(
            coeffs.len(),
            1usize << resolution,
            "coefficient count mismatch"
        );
        Spectrum1D {
            resolution,
            scale: 0,
            coeffs,
        }
    }

    fn from_scaled(resolution: u32, mut scale: u32, mut coeffs: Vec<i64>) -> Self {
        normalize_cells(&mut coeffs, &mut scale);
        Spectrum1D {
            resolution,
            scale,
            coeffs,
        }
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Exact coefficient at frequency i.
    pub fn value(&self, i: u64) -> DyadicRational {
        DyadicRational::from_ratio(self.coeffs[i as usize], self.scale)
    }

    pub fn values(&self) -> impl Iterator<Item = DyadicRational> + '_ {
        self.coeffs
            .iter()
            .map(|&c| DyadicRational::from_ratio(c, self.scale))
    }

    pub(crate) fn value_scale(&self) -> u32 {
        self.scale
    }

    pub(crate) fn mantissa(&self, i: u64) -> i64 {
        self.coeffs[i as usize]
    }
}

/// Walsh-Fourier coefficients of a 2D grid, row-major by first frequency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum2D {
    resolution: u32,
    scale: u32,
    coeffs: Vec<i64>,
}

impl Spectrum2D {
    pub fn from_integer_coeffs(resolution: u32, coeffs: Vec<i64>) -> Self {
        assert_eq!(
            coeffs.len(),
            1usize << (2 * resolution),
            "coefficient count mismatch"
        );
        Spectrum2D {
            resolution,
            scale: 0,
            coeffs,
        }
    }

    fn from_scaled(resolution: u32, mut scale: u32, mut coeffs: Vec<i64>) -> Self {
        normalize_cells(&mut coeffs, &mut scale);
        Spectrum2D {
            resolution,
            scale,
            coeffs,
        }
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    pub fn side(&self) -> usize {
        1usize << self.resolution
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn value(&self, i: u64, j: u64) -> DyadicRational {
        let idx = (i as usize) * self.side() + j as usize;
        DyadicRational::from_ratio(self.coeffs[idx], self.scale)
    }

    /// Row-major (first frequency major) traversal of exact coefficients.
    pub fn values(&self) -> impl Iterator<Item = DyadicRational> + '_ {
        self.coeffs
            .iter()
            .map(|&c| DyadicRational::from_ratio(c, self.scale))
    }
}

/// The k-th Rademacher function on a resolution-N grid: the sign of
/// coordinate x_k. Requires k < N for measurability.
pub fn rademacher(k: u32, resolution: u32) -> Result<Grid1D> {
    if k >= resolution {
        return Err(Error::RademacherOutOfRange {
            index: k,
            resolution,
        });
    }
    let cells = (0..(1u64 << resolution))
        .map(|j| 1 - 2 * ((j >> k) & 1) as i64)
        .collect();
    Ok(Grid1D::from_cells(resolution, cells))
}

/// The n-th Walsh-Paley function: the product of the Rademacher factors
/// selected by the binary digits of n, i.e. cell j maps to
/// (-1)^popcount(n AND j).
pub fn walsh_function(n: u64, resolution: u32) -> Result<Grid1D> {
    if resolution >= 64 || n >= (1u64 << resolution) {
        return Err(Error::FrequencyOutOfRange {
            index: n,
            resolution,
        });
    }
    let cells = (0..(1u64 << resolution))
        .map(|j| 1 - 2 * ((n & j).count_ones() & 1) as i64)
        .collect();
    Ok(Grid1D::from_cells(resolution, cells))
}

/// Walsh-Fourier analysis by the fast butterfly; coefficient i equals the
/// exact inner product of the grid with w_i.
pub fn analyze(grid: &Grid1D) -> Spectrum1D {
    let mut coeffs = grid.cells().to_vec();
    fwht(&mut coeffs);
    Spectrum1D::from_scaled(grid.resolution(), grid.scale() + grid.resolution(), coeffs)
}

/// Unnormalized dual sum; exact inverse of `analyze`.
pub fn synthesize(spectrum: &Spectrum1D) -> Grid1D {
    let mut cells = spectrum.coeffs.clone();
    fwht(&mut cells);
    Grid1D::from_scaled(spectrum.resolution, spectrum.scale, cells)
}

pub fn analyze2d(grid: &Grid2D) -> Spectrum2D {
    let mut coeffs = grid.cells().to_vec();
    fwht_2d(&mut coeffs, grid.side());
    Spectrum2D::from_scaled(
        grid.resolution(),
        grid.scale() + 2 * grid.resolution(),
        coeffs,
    )
}

pub fn synthesize2d(spectrum: &Spectrum2D) -> Grid2D {
    let mut cells = spectrum.coeffs.clone();
    let side = spectrum.side();
    fwht_2d(&mut cells, side);
    Grid2D::from_scaled(spectrum.resolution, spectrum.scale, cells)
}

/// The k-th partial sum of the Walsh-Fourier series: frequencies below k
/// kept, the rest zeroed. S_{2^N} is the identity at resolution N.
pub fn partial_sum_1d(grid: &Grid1D, k: u64) -> Result<Grid1D> {
    let capacity = 1u64 << grid.resolution();
    if k > capacity {
        return Err(Error::PartialSumOutOfRange {
            order: k,
            resolution: grid.resolution(),
        });
    }
    let mut spectrum = analyze(grid);
    for i in k..capacity {
        spectrum.coeffs[i as usize] = 0;
    }
    Ok(synthesize(&spectrum))
}

/// Zero every coefficient with first frequency >= m or second >= n.
pub(crate) fn truncate_spectrum_2d(spectrum: &mut Spectrum2D, m: u64, n: u64) {
    let side = spectrum.side();
    for i in 0..side as u64 {
        for j in 0..side as u64 {
            if i >= m || j >= n {
                spectrum.coeffs[(i as usize) * side + j as usize] = 0;
            }
        }
    }
}

/// Rectangular partial sum S_{M,N}: frequencies with i >= m or j >= n zeroed.
pub fn partial_sum_2d(grid: &Grid2D, m: u64, n: u64) -> Result<Grid2D> {
    let capacity = 1u64 << grid.resolution();
    if m > capacity {
        return Err(Error::PartialSumOutOfRange {
            order: m,
            resolution: grid.resolution(),
        });
    }
    if n > capacity {
        return Err(Error::PartialSumOutOfRange {
            order: n,
            resolution: grid.resolution(),
        });
    }
    let mut spectrum = analyze2d(grid);
    truncate_spectrum_2d(&mut spectrum, m, n);
    Ok(synthesize2d(&spectrum))
}

/// Blockwise means of a 1D grid over the dyadic intervals of every depth
/// k = 0..=N, each replicated back to resolution N. Computed by direct
/// block summation, independently of the transform path; entry k equals
/// the 2^k-th partial sum exactly.
pub fn dyadic_averages_1d(grid: &Grid1D) -> Vec<Grid1D> {
    let n = grid.resolution();
    let len = 1usize << n;
    (0..=n)
        .map(|k| {
            let classes = 1usize << k;
            let mut sums = vec![0i64; classes];
            for (j, &c) in grid.cells().iter().enumerate() {
                sums[j & (classes - 1)] = cell_add(sums[j & (classes - 1)], c);
            }
            let cells = (0..len).map(|j| sums[j & (classes - 1)]).collect();
            Grid1D::from_scaled(n, grid.scale() + (n - k), cells)
        })
        .collect()
}

/// Blockwise means of a 2D grid over the dyadic squares of every depth
/// k = 0..=N, each replicated back to resolution N. Entry k equals the
/// quadratic partial sum S_{2^k,2^k} exactly (conditional expectation).
pub fn dyadic_averages_2d(grid: &Grid2D) -> Vec<Grid2D> {
    let n = grid.resolution();
    let side = grid.side();
    (0..=n)
        .map(|k| {
            let classes = 1usize << k;
            let mask = classes - 1;
            // Sum along the first coordinate into 2^k residue rows, then
            // along the second coordinate into a 2^k x 2^k table.
            let mut row_sums = vec![0i64; classes * side];
            for r in 0..side {
                let src = &grid.cells()[r * side..(r + 1) * side];
                let dst_row = (r & mask) * side;
                for (c, &v) in src.iter().enumerate() {
                    row_sums[dst_row + c] = cell_add(row_sums[dst_row + c], v);
                }
            }
            let mut block_sums = vec![0i64; classes * classes];
            for r in 0..classes {
                for c in 0..side {
                    let idx = r * classes + (c & mask);
                    block_sums[idx] = cell_add(block_sums[idx], row_sums[r * side + c]);
                }
            }
            let cells = (0..side * side)
                .map(|flat| {
                    let (i, j) = (flat / side, flat % side);
                    block_sums[(i & mask) * classes + (j & mask)]
                })
                .collect();
            Grid2D::from_scaled(n, grid.scale() + 2 * (n - k), cells)
        })
        .collect()
}
