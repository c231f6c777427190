//! Uniform cell-centred grids on [−L, L)^dim.

use crate::error::{Error, Result};
use std::io::{Read, Write};
use std::path::Path;

/// Samples of a field on the grid x_i = −L + i·h, h = 2L/N, in row-major order.
///
/// The origin is the sample with every index equal to N/2.
#[derive(Debug, Clone, PartialEq)]
pub struct GridField {
    dim: usize,
    half_width: f64,
    size: usize,
    values: Vec<f64>,
}

impl GridField {
    /// Validates dim ∈ {1, 2}, L > 0, N a power of two ≥ 8 and finite values.
    pub fn new(dim: usize, half_width: f64, size: usize, values: Vec<f64>) -> Result<Self> {
        check_geometry(dim, half_width, size)?;
        if values.len() != size.pow(dim as u32) {
            return Err(Error::Domain(format!("expected {} samples, got {}", size.pow(dim as u32), values.len())));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::Domain(format!("field values must be finite, found {v}")));
        }
        Ok(Self { dim, half_width, size, values })
    }

    /// Samples `f` at every grid point; `f` receives the coordinates.
    pub fn from_fn(dim: usize, half_width: f64, size: usize, f: impl Fn(&[f64]) -> f64) -> Result<Self> {
        check_geometry(dim, half_width, size)?;
        let h = 2.0 * half_width / size as f64;
        let coord = |i: usize| -half_width + h * i as f64;
        let values = match dim {
            1 => (0..size).map(|i| f(&[coord(i)])).collect(),
            _ => (0..size * size).map(|k| f(&[coord(k / size), coord(k % size)])).collect(),
        };
        Self::new(dim, half_width, size, values)
    }

    /// Same geometry, new values.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        Self::new(self.dim, self.half_width, self.size, values)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    /// Samples per dimension.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.size as f64
    }

    /// h^dim.
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    pub fn coordinate(&self, i: usize) -> f64 {
        -self.half_width + self.spacing() * i as f64
    }

    /// Coordinates of the flat sample `k`.
    pub fn point(&self, k: usize) -> [f64; 2] {
        match self.dim {
            1 => [self.coordinate(k), 0.0],
            _ => [self.coordinate(k / self.size), self.coordinate(k % self.size)],
        }
    }

    /// Squared distance to the origin of the flat sample `k`.
    pub fn radius_sq(&self, k: usize) -> f64 {
        let [x, y] = self.point(k);
        x * x + y * y
    }

    /// Flat index of the origin.
    pub fn origin_index(&self) -> usize {
        let c = self.size / 2;
        match self.dim {
            1 => c,
            _ => c * self.size + c,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at the origin.
    pub fn at_origin(&self) -> f64 {
        self.values[self.origin_index()]
    }

    /// Riemann sum h^dim Σ f.
    pub fn integral(&self) -> f64 {
        self.cell_volume() * self.values.iter().sum::<f64>()
    }

    /// h^dim Σ f g.
    pub fn dot(&self, other: &[f64]) -> f64 {
        self.cell_volume() * self.values.iter().zip(other).map(|(a, b)| a * b).sum::<f64>()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Flat indices of the samples with some |x_i| ≥ L − width·h.
    pub fn boundary_ring(&self, width: usize) -> Vec<usize> {
        let lo = width;
        let hi = self.size - width;
        let outer = |i: usize| i < lo || i >= hi;
        (0..self.len())
            .filter(|&k| match self.dim {
                1 => outer(k),
                _ => outer(k / self.size) || outer(k % self.size),
            })
            .collect()
    }

    /// max |f| on the outermost two samples per side relative to max |f|.
    pub fn boundary_tail(&self) -> f64 {
        let peak = self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if peak == 0.0 {
            return 0.0;
        }
        self.boundary_ring(2).iter().fold(0.0f64, |m, &k| m.max(self.values[k].abs())) / peak
    }

    /// Binary layout: dim (u64 LE), L (f64 LE), N (u64 LE), then the
    /// row-major samples as f64 LE.
    pub fn write_to(&self, mut w: impl Write) -> Result<()> {
        w.write_all(&(self.dim as u64).to_le_bytes())?;
        w.write_all(&self.half_width.to_le_bytes())?;
        w.write_all(&(self.size as u64).to_le_bytes())?;
        let mut buf = Vec::with_capacity(8 * self.values.len());
        for v in &self.values {
            buf.extend_from_slice(&v.to_le_bytes());
        }
        w.write_all(&buf)?;
        Ok(())
    }

    pub fn read_from(mut r: impl Read) -> Result<Self> {
        let mut word = [0u8; 8];
        let mut next = |r: &mut dyn Read| -> Result<[u8; 8]> {
            r.read_exact(&mut word).map_err(|e| Error::Parse(format!("truncated grid header: {e}")))?;
            Ok(word)
        };
        let dim = u64::from_le_bytes(next(&mut r)?) as usize;
        let half_width = f64::from_le_bytes(next(&mut r)?);
        let size = u64::from_le_bytes(next(&mut r)?) as usize;
        check_geometry(dim, half_width, size).map_err(|e| Error::Parse(format!("bad grid header: {e}")))?;
        let count = size.pow(dim as u32);
        let mut bytes = vec![0u8; 8 * count];
        r.read_exact(&mut bytes).map_err(|e| Error::Parse(format!("truncated grid data: {e}")))?;
        let values = bytes.chunks_exact(8).map(|c| f64::from_le_bytes(c.try_into().expect("8-byte chunk"))).collect();
        Self::new(dim, half_width, size, values)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let file = std::fs::File::create(path)?;
        let mut w = std::io::BufWriter::new(file);
        self.write_to(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::read_from(std::io::BufReader::new(std::fs::File::open(path)?))
    }
}

fn check_geometry(dim: usize, half_width: f64, size: usize) -> Result<()> {
    if !(dim == 1 || dim == 2) {
        return Err(Error::Domain(format!("grid dimension must be 1 or 2, got {dim}")));
    }
    if !(half_width.is_finite() && half_width > 0.0) {
        return Err(Error::Domain(format!("box half-width must be positive, got {half_width}")));
    }
    if size < 8 || !size.is_power_of_two() {
        return Err(Error::Domain(format!("samples per dimension must be a power of two ≥ 8, got {size}")));
    }
    Ok(())
}
