//! Function-space and sequence-space quasi-norms.
//!
//! Discrete modulation norm: l_q aggregation of <k>^s-weighted L_p norms of
//! the uniform window pieces. Besov: weighted l_q over dyadic shell pieces.
//! Triebel-Lizorkin: pointwise l_r across shells first, then L_p (the `r`
//! field of [`SpaceParams`] plays the inner-exponent role). The short-time
//! transform norm is the mixed L_{x,p} / L^s_{xi,q} norm of V_phi f on the
//! grid product. Empty sums and sups evaluate to zero; p, q or r = infinity
//! switch every aggregation to its sup form.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::decomposition::{spectrum_values, DyadicFamily, UniformFamily};
use crate::error::{Error, Result};
use crate::grid::{compensated_sum, fft_in_place, forward_postprocess, inverse_transform_raw};
use crate::grid::{Domain, FunctionDescriptor, Grid, SampledFunction};
use crate::params::{rational_to_f64, Exponent, LpParams, Rational, SpaceParams};

const LEAK_TOLERANCE: f64 = 1e-10;

/// Spectral values this far below the peak are forward-transform round-trip
/// residue, not content. They are clamped to zero before any window or shell
/// aggregation: inner exponents below one would otherwise amplify the noise
/// floor (eps^r is much larger than eps for r < 1) into the leading digits
/// of a quasi-norm.
const SPECTRAL_NOISE_GATE: f64 = 1e-15;

pub(crate) fn noise_gate(spec: &mut [Complex64]) {
    let peak = spec.iter().map(|v| v.norm_sqr()).fold(0.0, f64::max);
    if peak == 0.0 {
        return;
    }
    let cutoff = peak * SPECTRAL_NOISE_GATE * SPECTRAL_NOISE_GATE;
    for v in spec.iter_mut() {
        if v.norm_sqr() <= cutoff {
            *v = Complex64::default();
        }
    }
}

fn weight_bracket_sq(k: &[i64; 2], n_dim: usize) -> f64 {
    let mut t = 1.0 + (k[0] * k[0]) as f64;
    if n_dim == 2 {
        t += (k[1] * k[1]) as f64;
    }
    t
}

/// l_q aggregation of weighted terms, sup form at q = infinity.
/// Terms arrive as (weight, value) with weight = <k>^s or 2^{js}.
fn aggregate(terms: &[(f64, f64)], q: &Exponent) -> f64 {
    match q {
        Exponent::Infinity => terms.iter().fold(0.0f64, |m, (w, v)| m.max(w * v)),
        Exponent::Finite(qr) => {
            let q = rational_to_f64(*qr);
            let sum = compensated_sum(terms.iter().map(|(w, v)| (w * v).powf(q)));
            sum.max(0.0).powf(1.0 / q)
        }
    }
}

fn spectral_energy(spec: &[Complex64]) -> f64 {
    compensated_sum(spec.iter().map(|v| v.norm_sqr()))
}

/// Discrete modulation quasi-norm of f.
///
/// Preconditions: the family's active range must cover the spectrum of f up
/// to a relative energy tail below 1e-10, otherwise the evaluation would
/// silently drop content and a [`Error::SpectralLeak`] is returned instead.
pub fn modulation_norm(
    f: &SampledFunction,
    params: &SpaceParams,
    family: &UniformFamily,
) -> Result<f64> {
    let grid = *family.grid();
    if f.grid() != &grid {
        return Err(Error::GridMismatch);
    }
    if params.n as usize != grid.n_dim() {
        return Err(Error::config("n", "parameter dimension differs from grid"));
    }
    let mut spec = spectrum_values(f)?;
    noise_gate(&mut spec);
    let total = spectral_energy(&spec);
    if total == 0.0 {
        return Ok(0.0);
    }
    let k_max = family.k_max();
    let edge = k_max as f64 + 0.25;
    let outside = compensated_sum(spec.iter().enumerate().filter_map(|(flat, v)| {
        let xi = grid.freq_point(flat);
        let mut inf = xi[0].abs();
        if grid.n_dim() == 2 {
            inf = inf.max(xi[1].abs());
        }
        (inf > edge).then(|| v.norm_sqr())
    }));
    if outside > LEAK_TOLERANCE * total {
        return Err(Error::SpectralLeak(outside / total));
    }

    let s = params.s_f64();
    let inner = LpParams::plain(params.p);
    let mut terms: Vec<(f64, f64)> = Vec::new();
    let mut buf = vec![Complex64::default(); spec.len()];
    let ks = lattice_range(k_max, grid.n_dim());
    for k in ks {
        if family.window_content_max(k, &spec) == 0.0 {
            continue;
        }
        family.windowed_into(k, &spec, &mut buf);
        inverse_transform_raw(&grid, &mut buf);
        let piece = SampledFunction::from_raw(grid, Domain::Space, std::mem::take(&mut buf));
        let t = piece.lp_norm(&inner);
        buf = piece.into_values();
        let w = weight_bracket_sq(&k, grid.n_dim()).powf(0.5 * s);
        terms.push((w, t));
    }
    Ok(aggregate(&terms, &params.q))
}

fn lattice_range(k_max: i64, n_dim: usize) -> Vec<[i64; 2]> {
    let mut out = Vec::new();
    for a in -k_max..=k_max {
        if n_dim == 2 {
            for b in -k_max..=k_max {
                out.push([a, b]);
            }
        } else {
            out.push([a, 0]);
        }
    }
    out
}

fn dyadic_leak_check(grid: &Grid, spec: &[Complex64], family: &DyadicFamily) -> Result<f64> {
    let total = spectral_energy(spec);
    if total == 0.0 {
        return Ok(0.0);
    }
    let covered = family.covered_radius();
    let outside = compensated_sum(spec.iter().enumerate().filter_map(|(flat, v)| {
        let xi = grid.freq_point(flat);
        let norm = Grid::coord_norm_sq(&xi, grid.n_dim()).sqrt();
        (norm > covered).then(|| v.norm_sqr())
    }));
    if outside > LEAK_TOLERANCE * total {
        return Err(Error::SpectralLeak(outside / total));
    }
    Ok(total)
}

/// Besov quasi-norm: (sum_j 2^{jsq} ||Delta_j f||_p^q)^{1/q}.
pub fn besov_norm(
    f: &SampledFunction,
    params: &SpaceParams,
    family: &DyadicFamily,
) -> Result<f64> {
    let grid = *family.grid();
    if f.grid() != &grid {
        return Err(Error::GridMismatch);
    }
    let mut spec = spectrum_values(f)?;
    noise_gate(&mut spec);
    if dyadic_leak_check(&grid, &spec, family)? == 0.0 {
        return Ok(0.0);
    }
    let s = params.s_f64();
    let inner = LpParams::plain(params.p);
    let mut terms = Vec::with_capacity(family.j_max() as usize + 1);
    let mut buf = vec![Complex64::default(); spec.len()];
    for j in 0..=family.j_max() {
        if family.shell_content_max(j, &spec) == 0.0 {
            continue;
        }
        buf.copy_from_slice(&spec);
        for (flat, v) in buf.iter_mut().enumerate() {
            *v *= family.psi(j, flat);
        }
        inverse_transform_raw(&grid, &mut buf);
        let piece = SampledFunction::from_raw(grid, Domain::Space, std::mem::take(&mut buf));
        let t = piece.lp_norm(&inner);
        buf = piece.into_values();
        terms.push(((2.0f64).powf(j as f64 * s), t));
    }
    Ok(aggregate(&terms, &params.q))
}

/// Triebel-Lizorkin quasi-norm: || (sum_j 2^{jsr} |Delta_j f|^r)^{1/r} ||_p.
/// Requires p < infinity; r = infinity takes the pointwise sup over shells.
pub fn triebel_lizorkin_norm(
    f: &SampledFunction,
    params: &SpaceParams,
    family: &DyadicFamily,
) -> Result<f64> {
    if !params.p.is_finite() {
        return Err(Error::InfinitePNotSupported);
    }
    let grid = *family.grid();
    if f.grid() != &grid {
        return Err(Error::GridMismatch);
    }
    let mut spec = spectrum_values(f)?;
    noise_gate(&mut spec);
    if dyadic_leak_check(&grid, &spec, family)? == 0.0 {
        return Ok(0.0);
    }
    let s = params.s_f64();
    let p = params.p.to_f64();
    let mut acc = vec![0.0f64; spec.len()];
    let mut buf = vec![Complex64::default(); spec.len()];
    let r_finite = params.r.as_rational().map(rational_to_f64);
    for j in 0..=family.j_max() {
        if family.shell_content_max(j, &spec) == 0.0 {
            continue;
        }
        buf.copy_from_slice(&spec);
        for (flat, v) in buf.iter_mut().enumerate() {
            *v *= family.psi(j, flat);
        }
        inverse_transform_raw(&grid, &mut buf);
        let w = (2.0f64).powf(j as f64 * s);
        match r_finite {
            Some(r) => {
                for (a, v) in acc.iter_mut().zip(&buf) {
                    *a += (w * w * v.norm_sqr()).powf(0.5 * r);
                }
            }
            None => {
                for (a, v) in acc.iter_mut().zip(&buf) {
                    *a = a.max(w * v.norm());
                }
            }
        }
    }
    let cell = grid.cell_volume(Domain::Space);
    let sum = match r_finite {
        Some(r) => compensated_sum(acc.iter().map(|a| a.powf(p / r) * cell)),
        None => compensated_sum(acc.iter().map(|a| a.powf(p) * cell)),
    };
    Ok(sum.max(0.0).powf(1.0 / p))
}

/// Short-time transform norm with the given window: mixed norm of
/// V_phi f(x, xi) = F[f . conj(phi(. - x))](xi), L_p in x then weighted
/// L_q in xi.
pub fn stft_modulation_norm(
    f: &SampledFunction,
    params: &SpaceParams,
    window: &FunctionDescriptor,
) -> Result<f64> {
    if f.domain() != Domain::Space {
        return Err(Error::DomainMismatch {
            expected: Domain::Space,
        });
    }
    let grid = *f.grid();
    let phi = SampledFunction::sample(window, grid, Domain::Space)?;
    if phi.values().iter().all(|v| v.norm() == 0.0) {
        return Err(Error::ZeroWindow);
    }
    let m = grid.axis_len();
    let mask = m - 1;
    let total = grid.total_points();
    let s = params.s_f64();
    let space_cell = grid.cell_volume(Domain::Space);
    let p_finite = params.p.as_rational().map(rational_to_f64);

    // accumulate the inner L_{x,p} aggregate per frequency bin
    let mut acc = vec![0.0f64; total];
    let mut row = vec![Complex64::default(); total];
    let fv = f.values();
    let pv = phi.values();
    let positions: Vec<[usize; 2]> = (0..total).map(|flat| grid.decompose(flat)).collect();
    for x_flat in 0..total {
        let xi_idx = positions[x_flat];
        for y_flat in 0..total {
            let yi = positions[y_flat];
            let dx = (yi[0].wrapping_sub(xi_idx[0]) & mask) as usize;
            let shifted = if grid.n_dim() == 1 {
                dx
            } else {
                ((yi[1].wrapping_sub(xi_idx[1])) & mask) * m + dx
            };
            row[y_flat] = fv[y_flat] * pv[shifted].conj();
        }
        fft_in_place(&grid, &mut row, true);
        forward_postprocess(&grid, &mut row);
        match p_finite {
            Some(p) => {
                let hp = 0.5 * p;
                for (a, v) in acc.iter_mut().zip(&row) {
                    *a += v.norm_sqr().powf(hp) * space_cell;
                }
            }
            None => {
                for (a, v) in acc.iter_mut().zip(&row) {
                    *a = a.max(v.norm());
                }
            }
        }
    }
    // finish the inner norm, then the weighted outer aggregation over xi
    let inner: Vec<f64> = match p_finite {
        Some(p) => acc.iter().map(|a| a.max(0.0).powf(1.0 / p)).collect(),
        None => acc,
    };
    let freq_cell = grid.cell_volume(Domain::Frequency);
    match params.q {
        Exponent::Infinity => Ok(inner
            .iter()
            .enumerate()
            .fold(0.0f64, |mx, (flat, a)| {
                let xi = grid.freq_point(flat);
                let w = (1.0 + Grid::coord_norm_sq(&xi, grid.n_dim())).powf(0.5 * s);
                mx.max(w * a)
            })),
        Exponent::Finite(qr) => {
            let q = rational_to_f64(qr);
            let sum = compensated_sum(inner.iter().enumerate().map(|(flat, a)| {
                let xi = grid.freq_point(flat);
                let w = (1.0 + Grid::coord_norm_sq(&xi, grid.n_dim())).powf(0.5 * s * q);
                a.powf(q) * w * freq_cell
            }));
            Ok(sum.max(0.0).powf(1.0 / q))
        }
    }
}

/// Finitely supported coefficients on the integer lattice Z^n.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct UniformCoeffs {
    n_dim: usize,
    entries: BTreeMap<[i64; 2], Complex64>,
}

impl UniformCoeffs {
    pub fn new(n_dim: usize) -> Self {
        UniformCoeffs {
            n_dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn n_dim(&self) -> usize {
        self.n_dim
    }

    pub fn set(&mut self, k: [i64; 2], value: Complex64) {
        if value.norm() == 0.0 {
            self.entries.remove(&k);
        } else {
            self.entries.insert(k, value);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[i64; 2], &Complex64)> {
        self.entries.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_abs_index(&self) -> i64 {
        self.entries
            .keys()
            .map(|k| k[0].abs().max(k[1].abs()))
            .max()
            .unwrap_or(0)
    }

    /// a_k = 1 for |k|_inf <= cap (one-dimensional helper).
    pub fn indicator_block(cap: i64) -> Self {
        let mut c = UniformCoeffs::new(1);
        for k in -cap..=cap {
            c.set([k, 0], Complex64::new(1.0, 0.0));
        }
        c
    }

    /// Single unit coefficient at lattice point k.
    pub fn spike(k: [i64; 2], n_dim: usize) -> Self {
        let mut c = UniformCoeffs::new(n_dim);
        c.set(k, Complex64::new(1.0, 0.0));
        c
    }

    /// a_k = <k>^{-t} for |k| <= cap (one-dimensional helper).
    pub fn power_weights(t: f64, cap: i64) -> Self {
        let mut c = UniformCoeffs::new(1);
        for k in -cap..=cap {
            let w = (1.0 + (k * k) as f64).powf(-0.5 * t);
            c.set([k, 0], Complex64::new(w, 0.0));
        }
        c
    }
}

/// Finitely supported coefficients on the shell indices N = {0, 1, ...}.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DyadicCoeffs {
    entries: BTreeMap<u32, Complex64>,
}

impl DyadicCoeffs {
    pub fn new() -> Self {
        DyadicCoeffs::default()
    }

    pub fn set(&mut self, j: u32, value: Complex64) {
        if value.norm() == 0.0 {
            self.entries.remove(&j);
        } else {
            self.entries.insert(j, value);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&u32, &Complex64)> {
        self.entries.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_index(&self) -> u32 {
        self.entries.keys().max().copied().unwrap_or(0)
    }

    pub fn min_index(&self) -> u32 {
        self.entries.keys().min().copied().unwrap_or(0)
    }

    pub fn indicator_range(lo: u32, hi: u32) -> Self {
        let mut c = DyadicCoeffs::new();
        for j in lo..=hi {
            c.set(j, Complex64::new(1.0, 0.0));
        }
        c
    }

    pub fn spike(j: u32) -> Self {
        let mut c = DyadicCoeffs::new();
        c.set(j, Complex64::new(1.0, 0.0));
        c
    }
}

/// Weighted sequence norm on Z^n: (sum_k |a_k|^q <k>^{sq})^{1/q}.
pub fn uniform_seq_norm(a: &UniformCoeffs, q: &Exponent, s: Rational) -> f64 {
    let s = rational_to_f64(s);
    let terms: Vec<(f64, f64)> = a
        .iter()
        .map(|(k, v)| {
            (
                weight_bracket_sq(k, a.n_dim()).powf(0.5 * s),
                v.norm(),
            )
        })
        .collect();
    aggregate(&terms, q)
}

/// Weighted sequence norm on N: (sum_j 2^{jsq} |b_j|^q)^{1/q}.
pub fn dyadic_seq_norm(b: &DyadicCoeffs, q: &Exponent, s: Rational) -> f64 {
    let s = rational_to_f64(s);
    let terms: Vec<(f64, f64)> = b
        .iter()
        .map(|(j, v)| ((2.0f64).powf(*j as f64 * s), v.norm()))
        .collect();
    aggregate(&terms, q)
}
