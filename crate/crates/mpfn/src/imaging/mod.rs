//! Image and feature containers plus the numerical primitives shared by the
//! rest of the crate: bicubic resampling, Sobel gradient magnitude, and
//! windowed SSIM.
//!
//! All containers are row-major, immutable after construction in normal use,
//! and safe to share across threads. Depth values are kept normalized to
//! [0, 1]; the raw unit per 1.0 is recorded in [`DepthMap::unit_scale`].

mod bicubic;
mod sobel;
mod ssim;

pub use bicubic::bicubic_resample;
pub use sobel::{sobel_magnitude, SOBEL_DEFAULT_K};
pub use ssim::{ssim_mean, ssim_mean_with_grad, SSIM_C1, SSIM_C2, SSIM_DEFAULT_K};

pub(crate) use sobel::{conv1d_clamp_cols, conv1d_clamp_cols_adjoint, conv1d_clamp_rows,
                       conv1d_clamp_rows_adjoint, sobel_kernels};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A 2-D array of `f64` values, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid2 {
    h: usize,
    w: usize,
    data: Vec<f64>,
}

impl Grid2 {
    pub fn new(h: usize, w: usize, data: Vec<f64>) -> Result<Self> {
        if h == 0 || w == 0 {
            return Err(Error::invalid("grid dimensions must be positive"));
        }
        if data.len() != h * w {
            return Err(Error::invalid(format!(
                "grid data length {} does not match {}x{}",
                data.len(),
                h,
                w
            )));
        }
        Ok(Grid2 { h, w, data })
    }

    pub fn zeros(h: usize, w: usize) -> Self {
        Grid2 { h, w, data: vec![0.0; h * w] }
    }

    pub fn constant(h: usize, w: usize, v: f64) -> Self {
        Grid2 { h, w, data: vec![v; h * w] }
    }

    pub fn from_fn(h: usize, w: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(h * w);
        for y in 0..h {
            for x in 0..w {
                data.push(f(y, x));
            }
        }
        Grid2 { h, w, data }
    }

    pub fn height(&self) -> usize {
        self.h
    }

    pub fn width(&self) -> usize {
        self.w
    }

    #[inline]
    pub fn at(&self, y: usize, x: usize) -> f64 {
        self.data[y * self.w + x]
    }

    #[inline]
    pub fn at_mut(&mut self, y: usize, x: usize) -> &mut f64 {
        &mut self.data[y * self.w + x]
    }

    #[inline]
    pub fn row(&self, y: usize) -> &[f64] {
        &self.data[y * self.w..(y + 1) * self.w]
    }

    pub fn values(&self) -> &[f64] {
        &self.data
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Grid2 {
        Grid2 { h: self.h, w: self.w, data: self.data.iter().map(|&v| f(v)).collect() }
    }

    pub fn clipped01(&self) -> Grid2 {
        self.map(|v| v.clamp(0.0, 1.0))
    }

    pub fn same_shape(&self, other: &Grid2) -> bool {
        self.h == other.h && self.w == other.w
    }
}

/// Single-channel depth grid with a per-pixel validity mask.
///
/// Values are normalized to [0, 1]; `unit_scale` records how many raw units
/// (e.g. millimeters, or 16-bit PNG counts) correspond to 1.0.
#[derive(Debug, Clone)]
pub struct DepthMap {
    values: Grid2,
    valid: Vec<bool>,
    unit_scale: f64,
}

impl DepthMap {
    pub fn new(values: Grid2, valid: Vec<bool>, unit_scale: f64) -> Result<Self> {
        if valid.len() != values.height() * values.width() {
            return Err(Error::invalid("valid mask dimensions differ from values"));
        }
        if !unit_scale.is_finite() || unit_scale <= 0.0 {
            return Err(Error::invalid("unit_scale must be positive and finite"));
        }
        if !values.is_finite() {
            return Err(Error::invalid("depth values must be finite"));
        }
        for (i, &v) in values.values().iter().enumerate() {
            if valid[i] && !(0.0..=1.0).contains(&v) {
                return Err(Error::invalid(format!(
                    "valid depth value {v} at index {i} outside [0,1]"
                )));
            }
        }
        Ok(DepthMap { values, valid, unit_scale })
    }

    /// Fully-valid map with unit scale 1.0.
    pub fn from_values(values: Grid2) -> Result<Self> {
        let n = values.height() * values.width();
        DepthMap::new(values, vec![true; n], 1.0)
    }

    pub fn height(&self) -> usize {
        self.values.height()
    }

    pub fn width(&self) -> usize {
        self.values.width()
    }

    pub fn values(&self) -> &Grid2 {
        &self.values
    }

    pub fn valid_mask(&self) -> &[bool] {
        &self.valid
    }

    pub fn unit_scale(&self) -> f64 {
        self.unit_scale
    }

    pub fn is_valid(&self, y: usize, x: usize) -> bool {
        self.valid[y * self.width() + x]
    }

    pub fn fully_valid(&self) -> bool {
        self.valid.iter().all(|&v| v)
    }

    pub fn with_values(&self, values: Grid2) -> Result<DepthMap> {
        DepthMap::new(values, self.valid.clone(), self.unit_scale)
    }
}

/// 3-channel guidance image, planar channel-major layout, values in [0, 1].
#[derive(Debug, Clone)]
pub struct ColorImage {
    h: usize,
    w: usize,
    /// Planar layout: `data[c * h * w + y * w + x]`.
    data: Vec<f64>,
}

impl ColorImage {
    pub const CHANNELS: usize = 3;

    pub fn new(h: usize, w: usize, data: Vec<f64>) -> Result<Self> {
        if h == 0 || w == 0 {
            return Err(Error::invalid("color image dimensions must be positive"));
        }
        if data.len() != Self::CHANNELS * h * w {
            return Err(Error::invalid(format!(
                "color data length {} does not match 3x{}x{}",
                data.len(),
                h,
                w
            )));
        }
        if !data.iter().all(|v| v.is_finite() && (0.0..=1.0).contains(v)) {
            return Err(Error::invalid("color values must be finite and in [0,1]"));
        }
        Ok(ColorImage { h, w, data })
    }

    pub fn constant(h: usize, w: usize, rgb: [f64; 3]) -> Result<Self> {
        let mut data = Vec::with_capacity(3 * h * w);
        for c in rgb {
            data.extend(std::iter::repeat(c).take(h * w));
        }
        ColorImage::new(h, w, data)
    }

    pub fn height(&self) -> usize {
        self.h
    }

    pub fn width(&self) -> usize {
        self.w
    }

    #[inline]
    pub fn at(&self, c: usize, y: usize, x: usize) -> f64 {
        self.data[c * self.h * self.w + y * self.w + x]
    }

    pub fn channel(&self, c: usize) -> &[f64] {
        &self.data[c * self.h * self.w..(c + 1) * self.h * self.w]
    }

    pub fn values(&self) -> &[f64] {
        &self.data
    }
}

/// A stack of feature planes, channel-major.
#[derive(Debug, Clone)]
pub struct FeatureMap<F: Scalar = f64> {
    c: usize,
    h: usize,
    w: usize,
    data: Vec<F>,
}

impl<F: Scalar> FeatureMap<F> {
    pub fn new(c: usize, h: usize, w: usize, data: Vec<F>) -> Result<Self> {
        if c == 0 || h == 0 || w == 0 {
            return Err(Error::invalid("feature map dimensions must be positive"));
        }
        if data.len() != c * h * w {
            return Err(Error::invalid("feature data length does not match dimensions"));
        }
        Ok(FeatureMap { c, h, w, data })
    }

    pub fn zeros(c: usize, h: usize, w: usize) -> Self {
        FeatureMap { c, h, w, data: vec![F::zero(); c * h * w] }
    }

    pub fn from_grid(grid: &Grid2) -> Self {
        FeatureMap {
            c: 1,
            h: grid.height(),
            w: grid.width(),
            data: grid.values().iter().map(|&v| F::from_f64(v)).collect(),
        }
    }

    pub fn from_color(img: &ColorImage) -> Self {
        FeatureMap {
            c: ColorImage::CHANNELS,
            h: img.height(),
            w: img.width(),
            data: img.values().iter().map(|&v| F::from_f64(v)).collect(),
        }
    }

    /// Single-channel maps convert back to a `Grid2`.
    pub fn to_grid(&self) -> Grid2 {
        assert_eq!(self.c, 1, "to_grid requires a single-channel map");
        Grid2 {
            h: self.h,
            w: self.w,
            data: self.data.iter().map(|v| v.to_f64()).collect(),
        }
    }

    pub fn channels(&self) -> usize {
        self.c
    }

    pub fn height(&self) -> usize {
        self.h
    }

    pub fn width(&self) -> usize {
        self.w
    }

    pub fn plane_len(&self) -> usize {
        self.h * self.w
    }

    #[inline]
    pub fn plane(&self, c: usize) -> &[F] {
        &self.data[c * self.h * self.w..(c + 1) * self.h * self.w]
    }

    #[inline]
    pub fn plane_mut(&mut self, c: usize) -> &mut [F] {
        &mut self.data[c * self.h * self.w..(c + 1) * self.h * self.w]
    }

    #[inline]
    pub fn at(&self, c: usize, y: usize, x: usize) -> F {
        self.data[(c * self.h + y) * self.w + x]
    }

    pub fn values(&self) -> &[F] {
        &self.data
    }

    pub fn values_mut(&mut self) -> &mut [F] {
        &mut self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_rejects_bad_dims() {
        assert!(Grid2::new(0, 4, vec![]).is_err());
        assert!(Grid2::new(2, 2, vec![0.0; 3]).is_err());
        assert!(Grid2::new(2, 2, vec![0.0; 4]).is_ok());
    }

    #[test]
    fn depth_map_validates_range_on_valid_pixels_only() {
        let g = Grid2::new(1, 2, vec![0.5, 7.0]).unwrap();
        assert!(DepthMap::new(g.clone(), vec![true, true], 1.0).is_err());
        // Out-of-range value is tolerated when masked invalid.
        assert!(DepthMap::new(g, vec![true, false], 1.0).is_ok());
    }

    #[test]
    fn depth_map_rejects_non_finite() {
        let g = Grid2::new(1, 2, vec![0.5, f64::NAN]).unwrap();
        assert!(DepthMap::new(g, vec![true, false], 1.0).is_err());
    }

    #[test]
    fn color_image_rejects_out_of_range() {
        let data = vec![0.5; 3 * 4];
        assert!(ColorImage::new(2, 2, data).is_ok());
        let mut bad = vec![0.5; 3 * 4];
        bad[5] = 1.5;
        assert!(ColorImage::new(2, 2, bad).is_err());
    }

    #[test]
    fn feature_map_round_trips_grid() {
        let g = Grid2::from_fn(3, 4, |y, x| (y * 4 + x) as f64 * 0.1);
        let f: FeatureMap<f64> = FeatureMap::from_grid(&g);
        assert_eq!(f.to_grid(), g);
    }
}
