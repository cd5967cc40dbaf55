//! Sobel gradient magnitude with edge-clamp padding.
//!
//! The size-k derivative kernels are the separable product of a smoothing
//! vector and a derivative vector; k = 5 uses [1,4,6,4,1] x [-1,-2,0,2,1].
//! Magnitude is the L1 combination |gx| + |gy|.

use super::Grid2;
use crate::error::{Error, Result};

pub const SOBEL_DEFAULT_K: usize = 5;

/// (smoothing, derivative) vectors for a supported kernel size.
pub(crate) fn sobel_kernels(k: usize) -> Result<(&'static [f64], &'static [f64])> {
    match k {
        3 => Ok((&[1.0, 2.0, 1.0], &[-1.0, 0.0, 1.0])),
        5 => Ok((&[1.0, 4.0, 6.0, 4.0, 1.0], &[-1.0, -2.0, 0.0, 2.0, 1.0])),
        _ => Err(Error::invalid(format!("sobel kernel size must be 3 or 5, got {k}"))),
    }
}

/// 1-D correlation along rows (the x axis) with edge-clamped indices.
pub(crate) fn conv1d_clamp_rows(img: &Grid2, kernel: &[f64]) -> Grid2 {
    let (h, w) = (img.height(), img.width());
    let r = kernel.len() / 2;
    let mut out = Grid2::zeros(h, w);
    for y in 0..h {
        let row = img.row(y);
        for x in 0..w {
            let mut acc = 0.0;
            for (i, &k) in kernel.iter().enumerate() {
                let sx = (x + i).saturating_sub(r).min(w - 1);
                acc += k * row[sx];
            }
            *out.at_mut(y, x) = acc;
        }
    }
    out
}

/// 1-D correlation along columns (the y axis) with edge-clamped indices.
pub(crate) fn conv1d_clamp_cols(img: &Grid2, kernel: &[f64]) -> Grid2 {
    let (h, w) = (img.height(), img.width());
    let r = kernel.len() / 2;
    let mut out = Grid2::zeros(h, w);
    for y in 0..h {
        for (i, &k) in kernel.iter().enumerate() {
            let sy = (y + i).saturating_sub(r).min(h - 1);
            let src = img.row(sy);
            let dst = &mut out.values_mut()[y * w..(y + 1) * w];
            for (d, s) in dst.iter_mut().zip(src) {
                *d += k * s;
            }
        }
    }
    out
}

/// Exact adjoint of [`conv1d_clamp_rows`]: scatters each output tap back to
/// its clamped source index.
pub(crate) fn conv1d_clamp_rows_adjoint(g: &Grid2, kernel: &[f64]) -> Grid2 {
    let (h, w) = (g.height(), g.width());
    let r = kernel.len() / 2;
    let mut out = Grid2::zeros(h, w);
    for y in 0..h {
        let grow = g.row(y).to_vec();
        let orow = &mut out.values_mut()[y * w..(y + 1) * w];
        for x in 0..w {
            for (i, &k) in kernel.iter().enumerate() {
                let sx = (x + i).saturating_sub(r).min(w - 1);
                orow[sx] += k * grow[x];
            }
        }
    }
    out
}

/// Exact adjoint of [`conv1d_clamp_cols`].
pub(crate) fn conv1d_clamp_cols_adjoint(g: &Grid2, kernel: &[f64]) -> Grid2 {
    let (h, w) = (g.height(), g.width());
    let r = kernel.len() / 2;
    let mut out = Grid2::zeros(h, w);
    for y in 0..h {
        for (i, &k) in kernel.iter().enumerate() {
            let sy = (y + i).saturating_sub(r).min(h - 1);
            for x in 0..w {
                *out.at_mut(sy, x) += k * g.at(y, x);
            }
        }
    }
    out
}

/// Per-pixel |gx| + |gy| using size-k Sobel kernels; the output has the same
/// shape as the input.
pub fn sobel_magnitude(img: &Grid2, k: usize) -> Result<Grid2> {
    let (smooth, deriv) = sobel_kernels(k)?;
    if img.height() < k || img.width() < k {
        return Err(Error::invalid(format!(
            "image {}x{} smaller than sobel kernel {k}",
            img.height(),
            img.width()
        )));
    }
    let gx = conv1d_clamp_cols(&conv1d_clamp_rows(img, deriv), smooth);
    let gy = conv1d_clamp_cols(&conv1d_clamp_rows(img, smooth), deriv);
    let mut out = Grid2::zeros(img.height(), img.width());
    for ((o, x), y) in out.values_mut().iter_mut().zip(gx.values()).zip(gy.values()) {
        *o = x.abs() + y.abs();
    }
    Ok(out)
}

/// Directional gradients (gx, gy) with the same conventions as
/// [`sobel_magnitude`]; the loss gradients need the signs separately.
pub(crate) fn sobel_gradients(img: &Grid2, k: usize) -> Result<(Grid2, Grid2)> {
    let (smooth, deriv) = sobel_kernels(k)?;
    let gx = conv1d_clamp_cols(&conv1d_clamp_rows(img, deriv), smooth);
    let gy = conv1d_clamp_cols(&conv1d_clamp_rows(img, smooth), deriv);
    Ok((gx, gy))
}

/// Adjoint of the gx/gy operator pair: maps cotangents on (gx, gy) back to a
/// cotangent on the image.
pub(crate) fn sobel_gradients_adjoint(gx_bar: &Grid2, gy_bar: &Grid2, k: usize) -> Result<Grid2> {
    let (smooth, deriv) = sobel_kernels(k)?;
    let ax = conv1d_clamp_rows_adjoint(&conv1d_clamp_cols_adjoint(gx_bar, smooth), deriv);
    let ay = conv1d_clamp_rows_adjoint(&conv1d_clamp_cols_adjoint(gy_bar, deriv), smooth);
    let mut out = ax;
    for (o, v) in out.values_mut().iter_mut().zip(ay.values()) {
        *o += v;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    /// Brute-force dense 2-D convolution oracle with edge clamping.
    fn oracle_magnitude(img: &Grid2, k: usize) -> Grid2 {
        let (smooth, deriv) = sobel_kernels(k).unwrap();
        let r = k / 2;
        let tap = |y: isize, x: isize| {
            let cy = y.clamp(0, img.height() as isize - 1) as usize;
            let cx = x.clamp(0, img.width() as isize - 1) as usize;
            img.at(cy, cx)
        };
        Grid2::from_fn(img.height(), img.width(), |y, x| {
            let mut gx = 0.0;
            let mut gy = 0.0;
            for j in 0..k {
                for i in 0..k {
                    let v = tap(
                        y as isize + j as isize - r as isize,
                        x as isize + i as isize - r as isize,
                    );
                    gx += smooth[j] * deriv[i] * v;
                    gy += deriv[j] * smooth[i] * v;
                }
            }
            gx.abs() + gy.abs()
        })
    }

    #[test]
    fn constant_image_has_zero_magnitude() {
        for k in [3, 5] {
            let img = Grid2::constant(9, 9, 0.42);
            let mag = sobel_magnitude(&img, k).unwrap();
            assert!(mag.values().iter().all(|&v| v.abs() < 1e-12));
        }
    }

    #[test]
    fn step_edge_response_matches_dense_oracle() {
        let k = 5;
        let img = Grid2::from_fn(12, 16, |_, x| if x < 8 { 0.0 } else { 1.0 });
        let mag = sobel_magnitude(&img, k).unwrap();
        let expect = oracle_magnitude(&img, k);
        for (a, b) in mag.values().iter().zip(expect.values()) {
            assert!((a - b).abs() < 1e-12);
        }
        // Response confined to (k-1)/2 + 1 columns either side of the edge.
        let reach = (k - 1) / 2 + 1;
        for y in 0..12 {
            for x in 0..16 {
                let near = (x as isize - 8).abs() <= reach as isize
                    || (x as isize - 7).abs() <= reach as isize;
                if !near {
                    assert!(mag.at(y, x).abs() < 1e-12, "unexpected response at {y},{x}");
                }
            }
        }
    }

    #[test]
    fn random_images_match_dense_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for k in [3, 5] {
            for _ in 0..5 {
                let img = Grid2::from_fn(10, 11, |_, _| rng.gen_range(0.0..1.0));
                let mag = sobel_magnitude(&img, k).unwrap();
                let expect = oracle_magnitude(&img, k);
                for (a, b) in mag.values().iter().zip(expect.values()) {
                    assert!((a - b).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn invariant_to_constant_offset() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        let img = Grid2::from_fn(8, 8, |_, _| rng.gen_range(0.0..0.5));
        let shifted = img.map(|v| v + 0.3);
        let a = sobel_magnitude(&img, 5).unwrap();
        let b = sobel_magnitude(&shifted, 5).unwrap();
        for (x, y) in a.values().iter().zip(b.values()) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn scales_linearly_for_nonnegative_alpha() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let img = Grid2::from_fn(8, 8, |_, _| rng.gen_range(-1.0..1.0));
        let alpha = 2.5;
        let a = sobel_magnitude(&img.map(|v| alpha * v), 5).unwrap();
        let b = sobel_magnitude(&img, 5).unwrap();
        for (x, y) in a.values().iter().zip(b.values()) {
            assert!((x - alpha * y).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_even_k_and_small_images() {
        let img = Grid2::constant(8, 8, 0.0);
        assert!(sobel_magnitude(&img, 4).is_err());
        assert!(sobel_magnitude(&img, 7).is_err());
        let tiny = Grid2::constant(4, 4, 0.0);
        assert!(sobel_magnitude(&tiny, 5).is_err());
    }

    #[test]
    fn adjoint_is_exact_for_clamped_conv() {
        // <A x, y> == <x, A^T y> verifies the adjoint against the forward op.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        let x = Grid2::from_fn(7, 9, |_, _| rng.gen_range(-1.0..1.0));
        let y = Grid2::from_fn(7, 9, |_, _| rng.gen_range(-1.0..1.0));
        let (smooth, deriv) = sobel_kernels(5).unwrap();
        for kernel in [smooth, deriv] {
            let ax = conv1d_clamp_rows(&x, kernel);
            let aty = conv1d_clamp_rows_adjoint(&y, kernel);
            let lhs: f64 = ax.values().iter().zip(y.values()).map(|(a, b)| a * b).sum();
            let rhs: f64 = x.values().iter().zip(aty.values()).map(|(a, b)| a * b).sum();
            assert!((lhs - rhs).abs() < 1e-10);

            let ax = conv1d_clamp_cols(&x, kernel);
            let aty = conv1d_clamp_cols_adjoint(&y, kernel);
            let lhs: f64 = ax.values().iter().zip(y.values()).map(|(a, b)| a * b).sum();
            let rhs: f64 = x.values().iter().zip(aty.values()).map(|(a, b)| a * b).sum();
            assert!((lhs - rhs).abs() < 1e-10);
        }
    }
}
