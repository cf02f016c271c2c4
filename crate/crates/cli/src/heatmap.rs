//! Binary PPM (P6) heat maps of distance matrices. The rendering is fully
//! specified so regenerating from the same matrix is byte-identical: value
//! position t in [0, 1] between the matrix minimum and maximum maps linearly
//! from blue (0,0,255) through green at t = 1/2 to red (255,0,0); a constant
//! matrix renders uniformly blue.

use std::fs;
use std::path::Path;

use manifoldnet_core::matrix::Matrix;

use crate::error::{AppError, Result};

/// Target edge length in pixels; each matrix entry becomes a square cell of
/// `max(1, TARGET_EDGE / n)` pixels so small matrices stay visible.
pub const TARGET_EDGE: usize = 512;

fn color(t: f64) -> [u8; 3] {
    let t = t.clamp(0.0, 1.0);
    if t <= 0.5 {
        let s = 2.0 * t;
        [
            0,
            (255.0 * s).round() as u8,
            (255.0 * (1.0 - s)).round() as u8,
        ]
    } else {
        let s = 2.0 * (t - 0.5);
        [
            (255.0 * s).round() as u8,
            (255.0 * (1.0 - s)).round() as u8,
            0,
        ]
    }
}

/// Renders `m` to `path`. Any rectangular matrix is accepted; distance
/// matrices are the intended input.
pub fn write_heatmap(m: &Matrix, path: &Path) -> Result<()> {
    fs::write(path, render_ppm(m)).map_err(|e| AppError::io(path, e))
}

pub fn render_ppm(m: &Matrix) -> Vec<u8> {
    assert!(m.rows() > 0 && m.cols() > 0, "empty matrix");
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &v in m.data() {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let range = hi - lo;
    let cell = (TARGET_EDGE / m.rows().max(m.cols())).max(1);
    let (w, h) = (m.cols() * cell, m.rows() * cell);
    let mut out = format!("P6\n{w} {h}\n255\n").into_bytes();
    out.reserve(w * h * 3);
    for i in 0..m.rows() {
        let mut row_px: Vec<u8> = Vec::with_capacity(w * 3);
        for j in 0..m.cols() {
            let t = if range > 0.0 {
                (m[(i, j)] - lo) / range
            } else {
                0.0
            };
            let rgb = color(t);
            for _ in 0..cell {
                row_px.extend_from_slice(&rgb);
            }
        }
        for _ in 0..cell {
            out.extend_from_slice(&row_px);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pixel_at(ppm: &[u8], w: usize, x: usize, y: usize) -> [u8; 3] {
        // Header is three lines: magic, dims, maxval.
        let mut pos = 0;
        let mut newlines = 0;
        while newlines < 3 {
            if ppm[pos] == b'\n' {
                newlines += 1;
            }
            pos += 1;
        }
        let off = pos + 3 * (y * w + x);
        [ppm[off], ppm[off + 1], ppm[off + 2]]
    }

    #[test]
    fn extremes_map_to_blue_and_red() {
        let m = Matrix::from_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let ppm = render_ppm(&m);
        let cell = TARGET_EDGE / 2;
        let w = 2 * cell;
        assert_eq!(pixel_at(&ppm, w, 0, 0), [0, 0, 255], "diagonal is blue");
        assert_eq!(
            pixel_at(&ppm, w, cell, 0),
            [255, 0, 0],
            "off-diagonal is red"
        );
        assert_eq!(pixel_at(&ppm, w, 0, cell), [255, 0, 0]);
    }

    #[test]
    fn constant_matrix_is_uniform() {
        let m = Matrix::from_rows(&[&[3.0, 3.0], &[3.0, 3.0]]);
        let ppm = render_ppm(&m);
        let cell = TARGET_EDGE / 2;
        let w = 2 * cell;
        let first = pixel_at(&ppm, w, 0, 0);
        assert_eq!(first, [0, 0, 255]);
        for (x, y) in [(1, 1), (cell, cell), (w - 1, w - 1)] {
            assert_eq!(pixel_at(&ppm, w, x, y), first);
        }
    }

    #[test]
    fn midpoint_is_green() {
        let m = Matrix::from_rows(&[&[0.0, 0.5], &[0.5, 1.0]]);
        let ppm = render_ppm(&m);
        let cell = TARGET_EDGE / 2;
        let w = 2 * cell;
        assert_eq!(pixel_at(&ppm, w, cell, 0), [0, 255, 0]);
    }

    #[test]
    fn rendering_is_deterministic() {
        let m = Matrix::from_rows(&[&[0.0, 0.2, 0.9], &[0.2, 0.0, 0.4], &[0.9, 0.4, 0.0]]);
        assert_eq!(render_ppm(&m), render_ppm(&m));
    }
}
