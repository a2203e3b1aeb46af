//! Scattered 2-D points, the equidistant pixel mesh, and the 0/1 density raster.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default margin (in pixels) added around the point bounding box.
///
/// The DFT path implements a circular convolution, so density mass near one
/// grid edge would otherwise leak smoothed weight to the opposite edge.
pub const DEFAULT_MARGIN_PX: usize = 4;

/// Minimum pixel count per axis.
pub const MIN_GRID_SIZE: usize = 8;

/// A single 2-D observation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

/// Raw scattered 2-D observations in data units.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    /// Builds a point set, rejecting non-finite coordinates and empty input.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::TooFewPoints { got: 0, min: 1 });
        }
        for (index, p) in points.iter().enumerate() {
            if !p.x.is_finite() || !p.y.is_finite() {
                return Err(Error::NonFiniteCoordinate { index });
            }
        }
        Ok(Self { points })
    }

    pub fn from_xy(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Axis-aligned bounding box as ((min_x, min_y), (max_x, max_y)).
    pub fn bounding_box(&self) -> ((f64, f64), (f64, f64)) {
        let mut min = (f64::INFINITY, f64::INFINITY);
        let mut max = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &self.points {
            min.0 = min.0.min(p.x);
            min.1 = min.1.min(p.y);
            max.0 = max.0.max(p.x);
            max.1 = max.1.max(p.y);
        }
        (min, max)
    }
}

/// Geometry of the equidistant mesh. Pixels are square (`dy = dx`) and
/// `(origin_x, origin_y)` is the physical coordinate of the center of pixel
/// `(0, 0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub dx: f64,
    pub origin_x: f64,
    pub origin_y: f64,
    pub n_x: usize,
    pub n_y: usize,
}

impl GridSpec {
    pub fn new(dx: f64, origin_x: f64, origin_y: f64, n_x: usize, n_y: usize) -> Result<Self> {
        if dx <= 0.0 || !dx.is_finite() {
            return Err(Error::InvalidSpacing(dx));
        }
        Ok(Self {
            dx,
            origin_x,
            origin_y,
            n_x: n_x.max(MIN_GRID_SIZE),
            n_y: n_y.max(MIN_GRID_SIZE),
        })
    }

    /// Extent along x: `L_x = n_x * dx`.
    pub fn extent_x(&self) -> f64 {
        self.n_x as f64 * self.dx
    }

    /// Extent along y: `L_y = n_y * dx`.
    pub fn extent_y(&self) -> f64 {
        self.n_y as f64 * self.dx
    }

    /// The single domain width used for the bandwidth schedule: `max(L_x, L_y)`.
    pub fn extent_max(&self) -> f64 {
        self.extent_x().max(self.extent_y())
    }

    /// Physical center of pixel `(ix, iy)`.
    pub fn pixel_center(&self, ix: usize, iy: usize) -> (f64, f64) {
        (
            self.origin_x + ix as f64 * self.dx,
            self.origin_y + iy as f64 * self.dx,
        )
    }

    /// Nearest pixel index for a physical coordinate, rounding half up.
    ///
    /// Half-up rounding is fixed so rasters are bit-reproducible.
    pub fn nearest_pixel(&self, x: f64, y: f64) -> (isize, isize) {
        let ix = ((x - self.origin_x) / self.dx + 0.5).floor() as isize;
        let iy = ((y - self.origin_y) / self.dx + 0.5).floor() as isize;
        (ix, iy)
    }

    pub fn contains_index(&self, ix: isize, iy: isize) -> bool {
        ix >= 0 && iy >= 0 && (ix as usize) < self.n_x && (iy as usize) < self.n_y
    }
}

/// The binary Kronecker raster of a point set: 1 where at least one point
/// maps to the pixel, 0 elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityField {
    pub grid: GridSpec,
    values: Vec<f64>,
    occupied_count: usize,
}

impl DensityField {
    /// An all-zero raster (no occupied pixels).
    pub fn empty(grid: GridSpec) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.n_x * grid.n_y],
            occupied_count: 0,
        }
    }

    /// Row-major values, index `iy * n_x + ix`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.grid.n_x + ix]
    }

    /// Number of occupied pixels (= number of distinct mapped mesh points).
    pub fn occupied_count(&self) -> usize {
        self.occupied_count
    }

    /// Pixel centers of all occupied pixels.
    pub fn occupied_centers(&self) -> Vec<(f64, f64)> {
        let mut centers = Vec::with_capacity(self.occupied_count);
        for iy in 0..self.grid.n_y {
            for ix in 0..self.grid.n_x {
                if self.values[iy * self.grid.n_x + ix] != 0.0 {
                    centers.push(self.grid.pixel_center(ix, iy));
                }
            }
        }
        centers
    }
}

/// Estimates the mesh spacing from sorted coordinate gaps.
///
/// Each axis is sorted ascending and successive gaps are computed; zero gaps
/// (duplicate coordinate values) are excluded. The `M = max(1, floor(f * N))`
/// smallest positive gaps are averaged per axis and the smaller of the two
/// axis means is returned.
pub fn estimate_spacing(points: &PointSet, gap_fraction: f64) -> Result<f64> {
    if !(gap_fraction > 0.0 && gap_fraction < 1.0) {
        return Err(Error::InvalidGapFraction(gap_fraction));
    }
    let n = points.len();
    if n < 2 {
        return Err(Error::TooFewPoints { got: n, min: 2 });
    }
    let m = ((gap_fraction * n as f64).floor() as usize).max(1);
    let dx = axis_spacing(points.points().iter().map(|p| p.x), n, m, "x")?;
    let dy = axis_spacing(points.points().iter().map(|p| p.y), n, m, "y")?;
    Ok(dx.min(dy))
}

fn axis_spacing(
    coords: impl Iterator<Item = f64>,
    n: usize,
    m: usize,
    axis: &'static str,
) -> Result<f64> {
    let mut sorted: Vec<f64> = coords.collect();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
    let mut gaps: Vec<f64> = sorted.windows(2).map(|w| w[1] - w[0]).collect();
    gaps.retain(|&g| g > 0.0);
    if gaps.is_empty() {
        return Err(Error::DegenerateAxis { axis });
    }
    gaps.sort_by(|a, b| a.partial_cmp(b).expect("finite gaps"));
    debug_assert!(m < n);
    let take = m.min(gaps.len());
    Ok(gaps[..take].iter().sum::<f64>() / take as f64)
}

/// Builds a grid covering all points with the default wrap-around margin.
///
/// If either axis would exceed `cap` pixels, `dx` is increased to the
/// smallest spacing that fits; the effective spacing is in the result.
pub fn build_grid(points: &PointSet, dx: f64, cap: usize) -> Result<GridSpec> {
    build_grid_with_margin(points, dx, cap, DEFAULT_MARGIN_PX)
}

/// [`build_grid`] with an explicit pixel margin (0 disables the guard band).
pub fn build_grid_with_margin(
    points: &PointSet,
    dx: f64,
    cap: usize,
    margin_px: usize,
) -> Result<GridSpec> {
    if dx <= 0.0 || !dx.is_finite() {
        return Err(Error::InvalidSpacing(dx));
    }
    let ((min_x, min_y), (max_x, max_y)) = points.bounding_box();
    let ext_x = max_x - min_x;
    let ext_y = max_y - min_y;
    let cap = cap.max(MIN_GRID_SIZE);
    // the margin may never eat the whole cap
    let margin_px = margin_px.min((cap - MIN_GRID_SIZE) / 2);

    let count = |extent: f64, d: f64| -> usize {
        ((extent / d).ceil() as usize) + 2 * margin_px + 2
    };

    let mut dx_eff = dx;
    if count(ext_x, dx_eff).max(count(ext_y, dx_eff)) > cap {
        let spacing_for = |extent: f64| extent / (cap - 2 * margin_px - 2) as f64;
        dx_eff = dx.max(spacing_for(ext_x)).max(spacing_for(ext_y));
        // float round-off can still leave one pixel over the cap
        while count(ext_x, dx_eff).max(count(ext_y, dx_eff)) > cap {
            dx_eff *= 1.0 + 1e-12;
        }
    }

    let n_x = count(ext_x, dx_eff).max(MIN_GRID_SIZE);
    let n_y = count(ext_y, dx_eff).max(MIN_GRID_SIZE);
    let origin_x = min_x - margin_px as f64 * dx_eff;
    let origin_y = min_y - margin_px as f64 * dx_eff;
    GridSpec::new(dx_eff, origin_x, origin_y, n_x, n_y)
}

/// Maps every point to its nearest mesh pixel and returns the 0/1 raster.
///
/// Points sharing a pixel collapse to a single occupied pixel; the collapsed
/// count is `points.len() - field.occupied_count()`.
pub fn rasterize(points: &PointSet, grid: &GridSpec) -> Result<DensityField> {
    let mut values = vec![0.0; grid.n_x * grid.n_y];
    let mut occupied_count = 0;
    for (index, p) in points.points().iter().enumerate() {
        let (ix, iy) = grid.nearest_pixel(p.x, p.y);
        if !grid.contains_index(ix, iy) {
            return Err(Error::PointOutsideGrid {
                index,
                x: p.x,
                y: p.y,
            });
        }
        let slot = &mut values[iy as usize * grid.n_x + ix as usize];
        if *slot == 0.0 {
            *slot = 1.0;
            occupied_count += 1;
        }
    }
    Ok(DensityField {
        grid: *grid,
        values,
        occupied_count,
    })
}
