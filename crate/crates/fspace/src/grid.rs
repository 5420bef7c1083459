//! Periodic sampled functions on [-L/2, L/2)^n with spectral transforms.
//!
//! The Fourier convention is F f(xi) = integral of f(x) e^{-2 pi i x.xi} dx,
//! so integer frequencies land exactly on frequency-grid points whenever the
//! box extent L is an integer. Discrete transforms carry the quadrature
//! weights (L/M)^n and (1/L)^n so that sampled values approximate the
//! continuous objects directly.

use std::collections::HashMap;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_complex::Complex64;
use once_cell::sync::Lazy;
use rustfft::{Fft, FftDirection, FftPlanner};

use crate::error::{Error, Result};
use crate::params::{rational_to_f64, Exponent, LpParams};
use crate::profile;

/// Which variable the stored samples are a function of.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    Space,
    Frequency,
}

/// A periodic box [-L/2, L/2)^n sampled at M points per axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Grid {
    n_dim: usize,
    extent: u32,
    points_per_axis: usize,
}

impl Grid {
    pub fn new(n_dim: usize, extent: u32, points_per_axis: usize) -> Result<Self> {
        if !(1..=2).contains(&n_dim) {
            return Err(Error::UnsupportedDimension(n_dim));
        }
        if extent == 0 {
            return Err(Error::NonPositiveExtent(extent));
        }
        if !points_per_axis.is_power_of_two() {
            return Err(Error::PointsNotPowerOfTwo(points_per_axis));
        }
        if points_per_axis < 2 * extent as usize {
            return Err(Error::Alignment(format!(
                "points_per_axis = {points_per_axis} cannot resolve integer frequencies on a box of extent {extent}"
            )));
        }
        Ok(Grid {
            n_dim,
            extent,
            points_per_axis,
        })
    }

    pub fn n_dim(&self) -> usize {
        self.n_dim
    }

    pub fn extent(&self) -> u32 {
        self.extent
    }

    pub fn axis_len(&self) -> usize {
        self.points_per_axis
    }

    pub fn total_points(&self) -> usize {
        self.points_per_axis.pow(self.n_dim as u32)
    }

    /// Spatial sample spacing L/M.
    pub fn spacing(&self) -> f64 {
        self.extent as f64 / self.points_per_axis as f64
    }

    /// Frequency sample spacing 1/L.
    pub fn freq_spacing(&self) -> f64 {
        1.0 / self.extent as f64
    }

    /// Largest representable frequency magnitude per axis, M/(2L).
    pub fn max_freq(&self) -> f64 {
        self.points_per_axis as f64 / (2.0 * self.extent as f64)
    }

    /// Quadrature cell volume for the given domain.
    pub fn cell_volume(&self, domain: Domain) -> f64 {
        match domain {
            Domain::Space => self.spacing().powi(self.n_dim as i32),
            Domain::Frequency => self.freq_spacing().powi(self.n_dim as i32),
        }
    }

    #[inline]
    pub fn decompose(&self, flat: usize) -> [usize; 2] {
        let m = self.points_per_axis;
        [flat % m, flat / m]
    }

    #[inline]
    pub(crate) fn recompose(&self, idx: [usize; 2]) -> usize {
        idx[1] * self.points_per_axis + idx[0]
    }

    /// Spatial coordinate of a flat index: x_i = -L/2 + m_i * (L/M).
    #[inline]
    pub fn space_point(&self, flat: usize) -> [f64; 2] {
        let idx = self.decompose(flat);
        let h = self.spacing();
        let half = self.extent as f64 / 2.0;
        let mut out = [0.0; 2];
        for a in 0..self.n_dim {
            out[a] = idx[a] as f64 * h - half;
        }
        out
    }

    /// Signed integer bin representative along each axis, in [-M/2, M/2).
    #[inline]
    pub fn freq_rep(&self, flat: usize) -> [i64; 2] {
        let idx = self.decompose(flat);
        let m = self.points_per_axis as i64;
        let mut out = [0i64; 2];
        for a in 0..self.n_dim {
            let u = idx[a] as i64;
            out[a] = if u < m / 2 { u } else { u - m };
        }
        out
    }

    /// Frequency coordinate of a flat index: xi_i = rep_i / L.
    #[inline]
    pub fn freq_point(&self, flat: usize) -> [f64; 2] {
        let rep = self.freq_rep(flat);
        let d = self.freq_spacing();
        [rep[0] as f64 * d, rep[1] as f64 * d]
    }

    /// Parity of the bin index sum; drives the +-1 phase in the transforms.
    #[inline]
    fn parity(&self, flat: usize) -> bool {
        let idx = self.decompose(flat);
        match self.n_dim {
            1 => idx[0] & 1 == 1,
            _ => (idx[0] + idx[1]) & 1 == 1,
        }
    }

    pub(crate) fn coord_norm_sq(point: &[f64; 2], n_dim: usize) -> f64 {
        if n_dim == 1 {
            point[0] * point[0]
        } else {
            point[0] * point[0] + point[1] * point[1]
        }
    }
}

static PLANS: Lazy<Mutex<HashMap<(usize, bool), Arc<dyn Fft<f64>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn plan(len: usize, forward: bool) -> Arc<dyn Fft<f64>> {
    let mut cache = PLANS.lock().unwrap();
    cache
        .entry((len, forward))
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            planner.plan_fft(
                len,
                if forward {
                    FftDirection::Forward
                } else {
                    FftDirection::Inverse
                },
            )
        })
        .clone()
}

/// In-place unnormalized DFT along every axis of the (row-major) array.
pub(crate) fn fft_in_place(grid: &Grid, values: &mut [Complex64], forward: bool) {
    let m = grid.axis_len();
    let fft = plan(m, forward);
    // axis 0: contiguous rows
    fft.process(values);
    if grid.n_dim() == 2 {
        let mut column = vec![Complex64::default(); m];
        for x in 0..m {
            for y in 0..m {
                column[y] = values[y * m + x];
            }
            fft.process(&mut column);
            for y in 0..m {
                values[y * m + x] = column[y];
            }
        }
    }
}

/// Applies the forward quadrature weight and alternating phase to raw DFT
/// output, turning it into samples of the continuous-convention transform.
pub(crate) fn forward_postprocess(grid: &Grid, values: &mut [Complex64]) {
    let w = grid.cell_volume(Domain::Space);
    for (flat, v) in values.iter_mut().enumerate() {
        let sign = if grid.parity(flat) { -w } else { w };
        *v *= sign;
    }
}

/// Inverse of [`forward_postprocess`] combined with the inverse DFT weight:
/// multiply by the alternating phase before the inverse transform, then scale
/// by (1/L)^n after it.
pub(crate) fn inverse_preprocess(grid: &Grid, values: &mut [Complex64]) {
    for (flat, v) in values.iter_mut().enumerate() {
        if grid.parity(flat) {
            *v = -*v;
        }
    }
}

pub(crate) fn inverse_transform_raw(grid: &Grid, values: &mut [Complex64]) {
    inverse_preprocess(grid, values);
    fft_in_place(grid, values, false);
    let w = grid.cell_volume(Domain::Frequency);
    for v in values.iter_mut() {
        *v *= w;
    }
}

/// Pointwise descriptions of test functions that can be sampled onto a grid.
#[derive(Clone, Debug, PartialEq)]
pub enum FunctionDescriptor {
    Zero,
    /// e^{-pi |x|^2}; self-dual under the transform convention.
    Gaussian,
    /// exp(-1/(1-(|x|/radius)^2)) on |x| < radius, zero outside.
    Bump { radius: f64 },
    /// Polynomial in the first coordinate times a bump of the given radius.
    PolyBump { radius: f64, coeffs: Vec<f64> },
    /// Mass one on the grid point closest to the origin.
    Spike,
}

impl FunctionDescriptor {
    fn eval(&self, point: &[f64; 2], n_dim: usize) -> f64 {
        let r2 = Grid::coord_norm_sq(point, n_dim);
        match self {
            FunctionDescriptor::Zero => 0.0,
            FunctionDescriptor::Gaussian => (-std::f64::consts::PI * r2).exp(),
            FunctionDescriptor::Bump { radius } => profile::spatial_bump(r2.sqrt() / radius),
            FunctionDescriptor::PolyBump { radius, coeffs } => {
                let t = point[0] / radius;
                let mut poly = 0.0;
                for &c in coeffs.iter().rev() {
                    poly = poly * t + c;
                }
                poly * profile::spatial_bump(r2.sqrt() / radius)
            }
            FunctionDescriptor::Spike => 0.0, // handled in sample()
        }
    }
}

impl FromStr for FunctionDescriptor {
    type Err = Error;

    /// "zero" | "gaussian" | "spike" | "bump:R" | "polybump:R:c0,c1,..."
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let bad = || Error::Parse {
            what: "function descriptor",
            input: s.to_string(),
        };
        match parts[0].to_ascii_lowercase().as_str() {
            "zero" => Ok(FunctionDescriptor::Zero),
            "gaussian" => Ok(FunctionDescriptor::Gaussian),
            "spike" => Ok(FunctionDescriptor::Spike),
            "bump" => {
                let radius: f64 = parts.get(1).ok_or_else(bad)?.parse().map_err(|_| bad())?;
                if radius <= 0.0 {
                    return Err(bad());
                }
                Ok(FunctionDescriptor::Bump { radius })
            }
            "polybump" => {
                let radius: f64 = parts.get(1).ok_or_else(bad)?.parse().map_err(|_| bad())?;
                let coeffs = parts
                    .get(2)
                    .ok_or_else(bad)?
                    .split(',')
                    .map(|c| c.trim().parse::<f64>().map_err(|_| bad()))
                    .collect::<Result<Vec<f64>>>()?;
                if radius <= 0.0 || coeffs.is_empty() {
                    return Err(bad());
                }
                Ok(FunctionDescriptor::PolyBump { radius, coeffs })
            }
            _ => Err(bad()),
        }
    }
}

/// A complex-valued function sampled on a [`Grid`], tagged with the domain
/// its samples live in. Values are immutable after construction; every
/// operation returns a new function, so instances can be shared across
/// threads freely.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledFunction {
    grid: Grid,
    domain: Domain,
    values: Vec<Complex64>,
}

impl SampledFunction {
    pub fn zeros(grid: Grid, domain: Domain) -> Self {
        SampledFunction {
            grid,
            domain,
            values: vec![Complex64::default(); grid.total_points()],
        }
    }

    /// Wraps raw values, rejecting NaN/Inf entries.
    pub fn from_values(grid: Grid, domain: Domain, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.total_points() {
            return Err(Error::GridMismatch);
        }
        for (i, v) in values.iter().enumerate() {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NonFiniteSample(i));
            }
        }
        Ok(SampledFunction {
            grid,
            domain,
            values,
        })
    }

    /// Pointwise evaluation of an analytic descriptor on the grid.
    pub fn sample(
        descriptor: &FunctionDescriptor,
        grid: Grid,
        domain: Domain,
    ) -> Result<SampledFunction> {
        let mut values = vec![Complex64::default(); grid.total_points()];
        if matches!(descriptor, FunctionDescriptor::Spike) {
            // closest point to the origin is the index M/2 on each axis
            let mid = grid.axis_len() / 2;
            let flat = if grid.n_dim() == 1 {
                mid
            } else {
                grid.recompose([mid, mid])
            };
            values[flat] = Complex64::new(1.0, 0.0);
            return SampledFunction::from_values(grid, domain, values);
        }
        for (flat, v) in values.iter_mut().enumerate() {
            let point = match domain {
                Domain::Space => grid.space_point(flat),
                Domain::Frequency => grid.freq_point(flat),
            };
            let y = descriptor.eval(&point, grid.n_dim());
            if !y.is_finite() {
                return Err(Error::NonFiniteSample(flat));
            }
            *v = Complex64::new(y, 0.0);
        }
        SampledFunction::from_values(grid, domain, values)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    fn expect_domain(&self, expected: Domain) -> Result<()> {
        if self.domain != expected {
            return Err(Error::DomainMismatch { expected });
        }
        Ok(())
    }

    /// Discrete approximation of the continuous forward transform.
    pub fn forward_spectrum(&self) -> Result<SampledFunction> {
        self.expect_domain(Domain::Space)?;
        let mut values = self.values.clone();
        fft_in_place(&self.grid, &mut values, true);
        forward_postprocess(&self.grid, &mut values);
        Ok(SampledFunction {
            grid: self.grid,
            domain: Domain::Frequency,
            values,
        })
    }

    /// Discrete approximation of the continuous inverse transform.
    pub fn inverse_spectrum(&self) -> Result<SampledFunction> {
        self.expect_domain(Domain::Frequency)?;
        let mut values = self.values.clone();
        inverse_transform_raw(&self.grid, &mut values);
        Ok(SampledFunction {
            grid: self.grid,
            domain: Domain::Space,
            values,
        })
    }

    /// Shift in the function's own variable: f(. - offset). On-grid offsets
    /// become exact cyclic permutations of the samples; everything else goes
    /// through a spectral phase ramp.
    pub fn translated(&self, offset: [f64; 2]) -> Result<SampledFunction> {
        let spacing = match self.domain {
            Domain::Space => self.grid.spacing(),
            Domain::Frequency => self.grid.freq_spacing(),
        };
        let m = self.grid.axis_len() as i64;
        let mut shifts = [0i64; 2];
        let mut on_grid = true;
        for a in 0..self.grid.n_dim() {
            let cells = offset[a] / spacing;
            let rounded = cells.round();
            if (cells - rounded).abs() <= 1e-9 * (1.0 + cells.abs()) {
                shifts[a] = (rounded as i64).rem_euclid(m);
            } else {
                on_grid = false;
                break;
            }
        }
        if on_grid {
            return Ok(self.rotated(shifts));
        }
        match self.domain {
            Domain::Space => {
                // F[T_a f](xi) = e^{-2 pi i a.xi} F f(xi)
                let spec = self.forward_spectrum()?;
                let ramped = spec.apply_freq_phase(offset, -1.0);
                ramped.inverse_spectrum()
            }
            Domain::Frequency => {
                // g(xi - a) = F[e^{2 pi i a.x} F^{-1} g](xi)
                let f = self.inverse_spectrum()?;
                let modulated = f.modulated(offset)?;
                modulated.forward_spectrum()
            }
        }
    }

    fn rotated(&self, shifts: [i64; 2]) -> SampledFunction {
        let m = self.grid.axis_len();
        let mask = m - 1; // M is a power of two
        let mut values = vec![Complex64::default(); self.values.len()];
        match self.grid.n_dim() {
            1 => {
                let s = shifts[0] as usize % m;
                for (i, v) in values.iter_mut().enumerate() {
                    *v = self.values[(i.wrapping_sub(s)) & mask];
                }
            }
            _ => {
                let sx = shifts[0] as usize % m;
                let sy = shifts[1] as usize % m;
                for y in 0..m {
                    let src_y = (y.wrapping_sub(sy)) & mask;
                    for x in 0..m {
                        let src_x = (x.wrapping_sub(sx)) & mask;
                        values[y * m + x] = self.values[src_y * m + src_x];
                    }
                }
            }
        }
        SampledFunction {
            grid: self.grid,
            domain: self.domain,
            values,
        }
    }

    fn apply_freq_phase(&self, offset: [f64; 2], sign: f64) -> SampledFunction {
        let mut values = self.values.clone();
        let tau = sign * 2.0 * std::f64::consts::PI;
        for (flat, v) in values.iter_mut().enumerate() {
            let xi = self.grid.freq_point(flat);
            let mut dot = offset[0] * xi[0];
            if self.grid.n_dim() == 2 {
                dot += offset[1] * xi[1];
            }
            *v *= Complex64::from_polar(1.0, tau * dot);
        }
        SampledFunction {
            grid: self.grid,
            domain: self.domain,
            values,
        }
    }

    /// Multiplication by e^{2 pi i freq.x}; space domain only.
    pub fn modulated(&self, freq: [f64; 2]) -> Result<SampledFunction> {
        self.expect_domain(Domain::Space)?;
        let mut values = self.values.clone();
        let tau = 2.0 * std::f64::consts::PI;
        for (flat, v) in values.iter_mut().enumerate() {
            let x = self.grid.space_point(flat);
            let mut dot = freq[0] * x[0];
            if self.grid.n_dim() == 2 {
                dot += freq[1] * x[1];
            }
            *v *= Complex64::from_polar(1.0, tau * dot);
        }
        Ok(SampledFunction {
            grid: self.grid,
            domain: self.domain,
            values,
        })
    }

    pub fn scaled(&self, c: Complex64) -> SampledFunction {
        let values = self.values.iter().map(|v| v * c).collect();
        SampledFunction {
            grid: self.grid,
            domain: self.domain,
            values,
        }
    }

    pub fn checked_add(&self, other: &SampledFunction) -> Result<SampledFunction> {
        if self.grid != other.grid || self.domain != other.domain {
            return Err(Error::GridMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(SampledFunction {
            grid: self.grid,
            domain: self.domain,
            values,
        })
    }

    /// Pointwise modulus as a new (real-valued) function.
    pub fn modulus(&self) -> SampledFunction {
        let values = self
            .values
            .iter()
            .map(|v| Complex64::new(v.norm(), 0.0))
            .collect();
        SampledFunction {
            grid: self.grid,
            domain: self.domain,
            values,
        }
    }

    /// Weighted Lebesgue quasi-norm. Riemann sum with weight <x>^{ps} and the
    /// domain's quadrature cell; exact sup over samples when p = infinity.
    pub fn lp_norm(&self, params: &LpParams) -> f64 {
        let s = rational_to_f64(params.s);
        let n_dim = self.grid.n_dim();
        let coord = |flat: usize| match self.domain {
            Domain::Space => self.grid.space_point(flat),
            Domain::Frequency => self.grid.freq_point(flat),
        };
        match params.p {
            Exponent::Infinity => {
                let mut sup: f64 = 0.0;
                for (flat, v) in self.values.iter().enumerate() {
                    let mut t = v.norm();
                    if s != 0.0 {
                        let w = 1.0 + Grid::coord_norm_sq(&coord(flat), n_dim);
                        t *= w.powf(0.5 * s);
                    }
                    sup = sup.max(t);
                }
                sup
            }
            Exponent::Finite(pr) => {
                let p = rational_to_f64(pr);
                let cell = self.grid.cell_volume(self.domain);
                let half_p = 0.5 * p;
                let sum = compensated_sum(self.values.iter().enumerate().map(|(flat, v)| {
                    let mut t = v.norm_sqr().powf(half_p);
                    if s != 0.0 && t != 0.0 {
                        let w = 1.0 + Grid::coord_norm_sq(&coord(flat), n_dim);
                        t *= w.powf(half_p * s);
                    }
                    t * cell
                }));
                sum.max(0.0).powf(1.0 / p)
            }
        }
    }

    /// Relative l2 distance between two functions on the same grid.
    pub fn rel_l2_distance(&self, other: &SampledFunction) -> f64 {
        let mut num = 0.0;
        let mut den = 0.0;
        for (a, b) in self.values.iter().zip(&other.values) {
            num += (a - b).norm_sqr();
            den += a.norm_sqr();
        }
        if den == 0.0 {
            if num == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (num / den).sqrt()
        }
    }

    pub(crate) fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub(crate) fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub(crate) fn from_raw(grid: Grid, domain: Domain, values: Vec<Complex64>) -> SampledFunction {
        SampledFunction {
            grid,
            domain,
            values,
        }
    }
}

/// Periodic convolution with the continuous quadrature weight, computed by
/// spectral multiplication: F(f*g) = Ff . Fg.
pub fn convolve(f: &SampledFunction, g: &SampledFunction) -> Result<SampledFunction> {
    if f.grid != g.grid {
        return Err(Error::GridMismatch);
    }
    f.expect_domain(Domain::Space)?;
    g.expect_domain(Domain::Space)?;
    let mut spec_f = f.forward_spectrum()?.into_values();
    let spec_g = g.forward_spectrum()?.into_values();
    for (a, b) in spec_f.iter_mut().zip(&spec_g) {
        *a *= b;
    }
    SampledFunction::from_raw(f.grid, Domain::Frequency, spec_f).inverse_spectrum()
}

/// Neumaier-compensated summation; the reduction order is fixed by the
/// iterator so results are reproducible.
pub(crate) fn compensated_sum<I: IntoIterator<Item = f64>>(items: I) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for x in items {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
