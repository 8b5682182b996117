use num_bigint::BigInt;

use crate::dyadic::DyadicRational;
use crate::error::{Error, Result};

// Cell values are i64 mantissas over a shared power-of-two denominator.
// Exactness is the contract, so arithmetic is checked: exceeding i64 aborts
// loudly instead of wrapping. The kernel-family objects stay far below the
// limit at every supported resolution.

#[inline]
pub(crate) fn cell_add(a: i64, b: i64) -> i64 {
    a.checked_add(b)
        .expect("grid cell overflow: value exceeds i64")
}

#[inline]
pub(crate) fn cell_sub(a: i64, b: i64) -> i64 {
    a.checked_sub(b)
        .expect("grid cell overflow: value exceeds i64")
}

#[inline]
pub(crate) fn cell_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b)
        .expect("grid cell overflow: value exceeds i64")
}

#[inline]
pub(crate) fn shift_up(a: i64, d: u32) -> i64 {
    if a == 0 || d == 0 {
        return a;
    }
    assert!(d < 127, "grid cell overflow: scale shift too large");
    i64::try_from((a as i128) << d).expect("grid cell overflow: value exceeds i64")
}

pub(crate) fn normalize_cells(cells: &mut [i64], scale: &mut u32) {
    if *scale == 0 {
        return;
    }
    let mut min_tz = u32::MAX;
    for &c in cells.iter() {
        if c != 0 {
            min_tz = min_tz.min(c.trailing_zeros());
            if min_tz == 0 {
                return;
            }
        }
    }
    if min_tz == u32::MAX {
        // all cells zero: canonical zero grid
        *scale = 0;
        return;
    }
    let shift = min_tz.min(*scale);
    if shift > 0 {
        for c in cells.iter_mut() {
            *c >>= shift;
        }
        *scale -= shift;
    }
}

fn combine<F>(a: &[i64], sa: u32, b: &[i64], sb: u32, f: F) -> (u32, Vec<i64>)
where
    F: Fn(i64, i64) -> i64,
{
    let scale = sa.max(sb);
    let da = scale - sa;
    let db = scale - sb;
    let cells = a
        .iter()
        .zip(b)
        .map(|(&x, &y)| f(shift_up(x, da), shift_up(y, db)))
        .collect();
    (scale, cells)
}

fn scaled_cells(cells: &[i64], factor: &DyadicRational) -> Vec<i64> {
    use num_traits::ToPrimitive;
    let m = factor
        .numerator()
        .to_i64()
        .expect("grid cell overflow: scale factor exceeds i64");
    cells.iter().map(|&c| cell_mul(c, m)).collect()
}

fn lp_mean(cells: &[i64], scale: u32, cell_count_log2: u32, p: f64) -> Result<f64> {
    if !p.is_finite() || p <= 0.0 {
        return Err(Error::NonpositiveExponent { p });
    }
    let unit = 2.0f64.powi(-(scale as i32));
    let sum: f64 = cells
        .iter()
        .map(|&c| ((c as f64).abs() * unit).powf(p))
        .sum();
    Ok((sum * 2.0f64.powi(-(cell_count_log2 as i32))).powf(1.0 / p))
}

/// A dyadic cell at a given resolution. Bit k of the index is coordinate x_k
/// of every point in the cell (LSB-first), so membership in the base interval
/// I_m(0) is a divisibility test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CellIndex {
    resolution: u32,
    index: u64,
}

impl CellIndex {
    pub fn new(resolution: u32, index: u64) -> Result<Self> {
        if resolution >= 64 || index >= (1u64 << resolution) {
            return Err(Error::FrequencyOutOfRange { index, resolution });
        }
        Ok(CellIndex { resolution, index })
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    /// Coordinate x_k shared by all points of the cell.
    pub fn coordinate(&self, k: u32) -> u8 {
        debug_assert!(k < self.resolution);
        ((self.index >> k) & 1) as u8
    }

    /// Whether the cell lies inside I_m(0), i.e. the first m coordinates are
    /// all zero. Requires m <= resolution.
    pub fn in_base_interval(&self, m: u32) -> bool {
        debug_assert!(m <= self.resolution);
        self.index.is_multiple_of(1u64 << m)
    }
}

/// Exact values of a resolution-N cylinder function on the 2^N dyadic cells.
///
/// Stored as integer mantissas over one shared power-of-two denominator and
/// kept in canonical form (denominator minimal), so grid equality is function
/// equality. Grids are immutable; every operation returns a new grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid1D {
    resolution: u32,
    scale: u32,
    cells: Vec<i64>,
}

/// Maximum 1D resolution the representation accepts (2^30 cells, 8 GiB).
/// The CLI enforces much lower configurable caps; this is the hard stop.
pub const MAX_RESOLUTION_1D: u32 = 30;

/// Maximum 2D resolution the representation accepts (4^15 cells).
pub const MAX_RESOLUTION_2D: u32 = 15;

impl Grid1D {
    pub fn from_cells(resolution: u32, cells: Vec<i64>) -> Self {
        assert!(
            resolution <= MAX_RESOLUTION_1D,
            "1D resolution above hard cap"
        );
        assert_eq!(cells.len(), 1usize << resolution, "cell count mismatch");
        Grid1D {
            resolution,
            scale: 0,
            cells,
        }
    }

    pub(crate) fn from_scaled(resolution: u32, mut scale: u32, mut cells: Vec<i64>) -> Self {
        assert!(
            resolution <= MAX_RESOLUTION_1D,
            "1D resolution above hard cap"
        );
        assert_eq!(cells.len(), 1usize << resolution, "cell count mismatch");
        normalize_cells(&mut cells, &mut scale);
        Grid1D {
            resolution,
            scale,
            cells,
        }
    }

    pub fn zeros(resolution: u32) -> Self {
        Self::from_cells(resolution, vec![0; 1usize << resolution])
    }

    pub fn constant(resolution: u32, value: i64) -> Self {
        Self::from_cells(resolution, vec![value; 1usize << resolution])
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.cells.iter().all(|&c| c == 0)
    }

    pub(crate) fn cells(&self) -> &[i64] {
        &self.cells
    }

    pub(crate) fn scale(&self) -> u32 {
        self.scale
    }

    /// Exact value on cell j.
    pub fn value(&self, j: u64) -> DyadicRational {
        DyadicRational::from_ratio(self.cells[j as usize], self.scale)
    }

    pub fn values(&self) -> impl Iterator<Item = DyadicRational> + '_ {
        self.cells
            .iter()
            .map(|&c| DyadicRational::from_ratio(c, self.scale))
    }

    fn check_resolution(&self, other: &Self) -> Result<()> {
        if self.resolution != other.resolution {
            return Err(Error::ResolutionMismatch {
                left: self.resolution,
                right: other.resolution,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_resolution(other)?;
        let (scale, cells) = combine(&self.cells, self.scale, &other.cells, other.scale, cell_add);
        Ok(Self::from_scaled(self.resolution, scale, cells))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_resolution(other)?;
        let (scale, cells) = combine(
            &self.cells,
            self.scale,
            &other.cells,
            other.scale,
            |x, y| {
                cell_add(
                    x,
                    y.checked_neg()
                        .expect("grid cell overflow: value exceeds i64"),
                )
            },
        );
        Ok(Self::from_scaled(self.resolution, scale, cells))
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_resolution(other)?;
        let cells = self
            .cells
            .iter()
            .zip(&other.cells)
            .map(|(&x, &y)| cell_mul(x, y))
            .collect();
        Ok(Self::from_scaled(
            self.resolution,
            self.scale + other.scale,
            cells,
        ))
    }

    pub fn abs(&self) -> Self {
        let cells = self.cells.iter().map(|&c| c.abs()).collect();
        Grid1D {
            resolution: self.resolution,
            scale: self.scale,
            cells,
        }
    }

    /// Pointwise multiplication by an exact constant.
    pub fn scale_by(&self, factor: &DyadicRational) -> Self {
        let cells = scaled_cells(&self.cells, factor);
        Self::from_scaled(self.resolution, self.scale + factor.exponent(), cells)
    }

    /// Replicate each cell value onto its sub-cells at a finer resolution.
    /// Integrals and norms are invariant. Sub-cells of cell j at resolution N
    /// are j + t*2^N under LSB-first indexing.
    pub fn refine(&self, target: u32) -> Result<Self> {
        if target < self.resolution {
            return Err(Error::CannotCoarsen {
                current: self.resolution,
                requested: target,
            });
        }
        if target == self.resolution {
            return Ok(self.clone());
        }
        assert!(target <= MAX_RESOLUTION_1D, "1D resolution above hard cap");
        let mask = (1u64 << self.resolution) - 1;
        let cells = (0..(1u64 << target))
            .map(|j| self.cells[(j & mask) as usize])
            .collect();
        Ok(Grid1D {
            resolution: target,
            scale: self.scale,
            cells,
        })
    }

    /// Exact integral with respect to the Haar probability measure:
    /// the cell average (sum of values) / 2^N.
    pub fn integrate(&self) -> DyadicRational {
        let sum: i128 = self.cells.iter().map(|&c| c as i128).sum();
        DyadicRational::new(BigInt::from(sum), self.scale + self.resolution)
    }

    /// Exact L1 norm: the integral of the pointwise absolute value.
    pub fn l1_norm(&self) -> DyadicRational {
        let sum: i128 = self.cells.iter().map(|&c| (c as i128).abs()).sum();
        DyadicRational::new(BigInt::from(sum), self.scale + self.resolution)
    }

    /// Floating-point L_p norm, p > 0. Agrees with `l1_norm` at p = 1 up to
    /// float rounding; carries no exactness contract.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        lp_mean(&self.cells, self.scale, self.resolution, p)
    }
}

/// Exact values of a resolution-N cylinder function on G x G, stored
/// row-major by the first coordinate: entry (i, j) is the value on
/// cell i x cell j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid2D {
    resolution: u32,
    scale: u32,
    cells: Vec<i64>,
}

impl Grid2D {
    pub fn from_cells(resolution: u32, cells: Vec<i64>) -> Self {
        assert!(
            resolution <= MAX_RESOLUTION_2D,
            "2D resolution above hard cap"
        );
        assert_eq!(
            cells.len(),
            1usize << (2 * resolution),
            "cell count mismatch"
        );
        Grid2D {
            resolution,
            scale: 0,
            cells,
        }
    }

    pub(crate) fn from_scaled(resolution: u32, mut scale: u32, mut cells: Vec<i64>) -> Self {
        assert!(
            resolution <= MAX_RESOLUTION_2D,
            "2D resolution above hard cap"
        );
        assert_eq!(
            cells.len(),
            1usize << (2 * resolution),
            "cell count mismatch"
        );
        normalize_cells(&mut cells, &mut scale);
        Grid2D {
            resolution,
            scale,
            cells,
        }
    }

    pub fn zeros(resolution: u32) -> Self {
        Self::from_cells(resolution, vec![0; 1usize << (2 * resolution)])
    }

    pub fn constant(resolution: u32, value: i64) -> Self {
        Self::from_cells(resolution, vec![value; 1usize << (2 * resolution)])
    }

    /// Tensor product: entry (i, j) = a[i] * b[j].
    pub fn tensor(a: &Grid1D, b: &Grid1D) -> Result<Self> {
        if a.resolution() != b.resolution() {
            return Err(Error::ResolutionMismatch {
                left: a.resolution(),
                right: b.resolution(),
            });
        }
        let side = 1usize << a.resolution();
        let mut cells = Vec::with_capacity(side * side);
        for &x in a.cells() {
            for &y in b.cells() {
                cells.push(cell_mul(x, y));
            }
        }
        Ok(Self::from_scaled(
            a.resolution(),
            a.scale() + b.scale(),
            cells,
        ))
    }

    pub fn resolution(&self) -> u32 {
        self.resolution
    }

    /// Cells per axis.
    pub fn side(&self) -> usize {
        1usize << self.resolution
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_zero(&self) -> bool {
        self.cells.iter().all(|&c| c == 0)
    }

    pub(crate) fn cells(&self) -> &[i64] {
        &self.cells
    }

    pub(crate) fn scale(&self) -> u32 {
        self.scale
    }

    /// Exact value on cell i x cell j.
    pub fn at(&self, i: u64, j: u64) -> DyadicRational {
        let idx = (i as usize) * self.side() + j as usize;
        DyadicRational::from_ratio(self.cells[idx], self.scale)
    }

    /// Row-major (first coordinate major) traversal of exact values.
    pub fn values(&self) -> impl Iterator<Item = DyadicRational> + '_ {
        self.cells
            .iter()
            .map(|&c| DyadicRational::from_ratio(c, self.scale))
    }

    fn check_resolution(&self, other: &Self) -> Result<()> {
        if self.resolution != other.resolution {
            return Err(Error::ResolutionMismatch {
                left: self.resolution,
                right: other.resolution,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_resolution(other)?;
        let (scale, cells) = combine(&self.cells, self.scale, &other.cells, other.scale, cell_add);
        Ok(Self::from_scaled(self.resolution, scale, cells))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_resolution(other)?;
        let (scale, cells) = combine(
            &self.cells,
            self.scale,
            &other.cells,
            other.scale,
            |x, y| {
                cell_add(
                    x,
                    y.checked_neg()
                        .expect("grid cell overflow: value exceeds i64"),
                )
            },
        );
        Ok(Self::from_scaled(self.resolution, scale, cells))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_resolution(other)?;
        let cells = self
            .cells
            .iter()
            .zip(&other.cells)
            .map(|(&x, &y)| cell_mul(x, y))
            .collect();
        Ok(Self::from_scaled(
            self.resolution,
            self.scale + other.scale,
            cells,
        ))
    }

    pub fn abs(&self) -> Self {
        let cells = self.cells.iter().map(|&c| c.abs()).collect();
        Grid2D {
            resolution: self.resolution,
            scale: self.scale,
            cells,
        }
    }

    pub fn scale_by(&self, factor: &DyadicRational) -> Self {
        let cells = scaled_cells(&self.cells, factor);
        Self::from_scaled(self.resolution, self.scale + factor.exponent(), cells)
    }

    pub fn refine(&self, target: u32) -> Result<Self> {
        if target < self.resolution {
            return Err(Error::CannotCoarsen {
                current: self.resolution,
                requested: target,
            });
        }
        if target == self.resolution {
            return Ok(self.clone());
        }
        assert!(target <= MAX_RESOLUTION_2D, "2D resolution above hard cap");
        let mask = (1u64 << self.resolution) - 1;
        let old_side = self.side();
        let new_side = 1usize << target;
        let mut cells = Vec::with_capacity(new_side * new_side);
        for i in 0..new_side as u64 {
            let row = ((i & mask) as usize) * old_side;
            for j in 0..new_side as u64 {
                cells.push(self.cells[row + (j & mask) as usize]);
            }
        }
        Ok(Grid2D {
            resolution: target,
            scale: self.scale,
            cells,
        })
    }

    /// Exact integral over the product Haar measure: (sum of values) / 4^N.
    pub fn integrate(&self) -> DyadicRational {
        let sum: i128 = self.cells.iter().map(|&c| c as i128).sum();
        DyadicRational::new(BigInt::from(sum), self.scale + 2 * self.resolution)
    }

    pub fn l1_norm(&self) -> DyadicRational {
        let sum: i128 = self.cells.iter().map(|&c| (c as i128).abs()).sum();
        DyadicRational::new(BigInt::from(sum), self.scale + 2 * self.resolution)
    }

    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        lp_mean(&self.cells, self.scale, 2 * self.resolution, p)
    }
}
