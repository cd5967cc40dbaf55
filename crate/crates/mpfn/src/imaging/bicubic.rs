//! Separable bicubic resampling (Catmull-Rom, kernel parameter a = -0.5).
//!
//! Source coordinates follow the half-pixel center convention
//! `x_src = (x_dst + 0.5) * scale - 0.5`; taps outside the image clamp to the
//! border. Output values are not clipped.

use super::Grid2;
use crate::error::{Error, Result};

/// One row/column tap set: four clamped source indices plus the phase.
struct Tap {
    i0: usize,
    i1: usize,
    i2: usize,
    i3: usize,
    t: f64,
}

fn taps(src_len: usize, dst_len: usize) -> Vec<Tap> {
    let scale = src_len as f64 / dst_len as f64;
    let max = src_len as isize - 1;
    let clamp = |i: isize| i.clamp(0, max) as usize;
    (0..dst_len)
        .map(|d| {
            let x = (d as f64 + 0.5) * scale - 0.5;
            let base = x.floor();
            let b = base as isize;
            Tap {
                i0: clamp(b - 1),
                i1: clamp(b),
                i2: clamp(b + 1),
                i3: clamp(b + 2),
                t: x - base,
            }
        })
        .collect()
}

/// Catmull-Rom interpolation of the four taps at phase `t`, written over
/// differences from `v1` so constant inputs reproduce exactly.
#[inline]
fn cubic(v0: f64, v1: f64, v2: f64, v3: f64, t: f64) -> f64 {
    let d0 = v0 - v1;
    let d2 = v2 - v1;
    let d3 = v3 - v1;
    v1 + 0.5 * t * ((d2 - d0) + t * ((2.0 * d0 + 4.0 * d2 - d3) + t * (-d0 - 3.0 * d2 + d3)))
}

/// Resample `src` to `out_h` x `out_w`.
pub fn bicubic_resample(src: &Grid2, out_h: usize, out_w: usize) -> Result<Grid2> {
    if out_h == 0 || out_w == 0 {
        return Err(Error::invalid("bicubic target dimensions must be positive"));
    }
    if src.height() < 2 || src.width() < 2 {
        return Err(Error::invalid("bicubic source must be at least 2x2"));
    }
    if !src.is_finite() {
        return Err(Error::invalid("bicubic source contains non-finite values"));
    }

    // Horizontal pass.
    let xt = taps(src.width(), out_w);
    let mut mid = Grid2::zeros(src.height(), out_w);
    for y in 0..src.height() {
        let row = src.row(y);
        let out = &mut mid.values_mut()[y * out_w..(y + 1) * out_w];
        for (o, tap) in out.iter_mut().zip(&xt) {
            *o = cubic(row[tap.i0], row[tap.i1], row[tap.i2], row[tap.i3], tap.t);
        }
    }

    // Vertical pass.
    let yt = taps(src.height(), out_h);
    let mut dst = Grid2::zeros(out_h, out_w);
    for (y, tap) in yt.iter().enumerate() {
        for x in 0..out_w {
            let v = cubic(
                mid.at(tap.i0, x),
                mid.at(tap.i1, x),
                mid.at(tap.i2, x),
                mid.at(tap.i3, x),
                tap.t,
            );
            *dst.at_mut(y, x) = v;
        }
    }
    Ok(dst)
}
