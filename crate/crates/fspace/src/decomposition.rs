//! Frequency-uniform and dyadic window families and the operators that
//! restrict a function to one window.
//!
//! The uniform family is the quotient construction sigma_k = rho_k / sum_l
//! rho_l for a bump rho with plateau |xi|_inf <= 1/2 and support |xi| < 3/4.
//! Because the quotient denominator is lattice-periodic, the family sums to
//! one identically; on the discrete frequency torus the translates wrap
//! around, so the partition identity holds at literally every represented
//! frequency. The dyadic family telescopes phi(2^{-j} xi) differences on
//! annuli |xi| ~ 2^j.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{fft_in_place, forward_postprocess, inverse_transform_raw};
use crate::grid::{Domain, Grid, SampledFunction};
use crate::params::LpParams;
use crate::profile;

/// Shape of the cutoff transition used to build the base window. All
/// variants share the exact plateau/support intervals, so each yields an
/// admissible family; norms computed with different profiles agree up to
/// fixed constants.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum RhoProfile {
    /// Normalized integral of exp(-1/(1-t^2)); C-infinity.
    #[default]
    Mollifier,
    /// Quintic polynomial smoothstep; C^2.
    Quintic,
    /// Mollifier transition compressed into the middle of the band.
    Narrow,
}

impl RhoProfile {
    /// Decreasing transition: 1 for t <= a, 0 for t >= b.
    fn fall(&self, t: f64, a: f64, b: f64) -> f64 {
        match self {
            RhoProfile::Mollifier => profile::fall(t, a, b),
            RhoProfile::Quintic => 1.0 - profile::quintic01((t - a) / (b - a)),
            RhoProfile::Narrow => {
                let w = b - a;
                profile::fall(t, a + 0.25 * w, b - 0.25 * w)
            }
        }
    }
}

/// rho(xi): 1 on the cube |xi|_inf <= 1/2, 0 for |xi| >= 3/4 (Euclidean).
fn rho(profile: RhoProfile, xi: &[f64; 2], n_dim: usize) -> f64 {
    let mut tensor = profile.fall(xi[0].abs(), 0.5, 0.75);
    if n_dim == 2 {
        tensor *= profile.fall(xi[1].abs(), 0.5, 0.75);
    }
    if tensor == 0.0 {
        return 0.0;
    }
    // radial factor forces the Euclidean support condition; its plateau
    // reaches the cube corners at radius sqrt(n)/2 < 3/4 for n <= 2.
    let norm = Grid::coord_norm_sq(xi, n_dim).sqrt();
    let radial = profile.fall(norm, 0.5 * (n_dim as f64).sqrt(), 0.75);
    tensor.min(radial)
}

/// sum_l rho(xi - l) over the integer lattice; only the <= 2^n nearest
/// translates can be nonzero. The sum is 1-periodic per axis and >= 1.
fn rho_lattice_sum(profile: RhoProfile, xi: &[f64; 2], n_dim: usize) -> f64 {
    let mut total = 0.0;
    let l0 = neighbor_range(xi[0]);
    let l1 = if n_dim == 2 {
        neighbor_range(xi[1])
    } else {
        (0, 0)
    };
    for a in l0.0..=l0.1 {
        for b in l1.0..=l1.1 {
            let shifted = [xi[0] - a as f64, xi[1] - b as f64];
            total += rho(profile, &shifted, n_dim);
        }
    }
    total
}

#[inline]
fn neighbor_range(x: f64) -> (i64, i64) {
    ((x - 0.75).ceil() as i64, (x + 0.75).floor() as i64)
}

/// The frequency-uniform window bank {sigma_k}. Only the base window is
/// stored; sigma_k is the exact cyclic shift of the base by k lattice steps,
/// which is what makes sigma_k(xi) = sigma_0(xi - k) hold bit for bit on the
/// frequency grid.
#[derive(Clone, Debug)]
pub struct UniformFamily {
    grid: Grid,
    profile: RhoProfile,
    base: Vec<f64>,
    /// Flat indices of the base window's support, for support-local scans.
    support: Vec<usize>,
    k_max: i64,
    truncation: Option<i64>,
}

const TRANSITION_SAMPLES_NEEDED: usize = 8;

impl UniformFamily {
    pub fn build(grid: Grid) -> Result<Self> {
        Self::build_with_profile(grid, RhoProfile::default())
    }

    pub fn build_with_profile(grid: Grid, profile: RhoProfile) -> Result<Self> {
        Self::build_inner(grid, profile, None)
    }

    /// Family whose partition sum is deliberately truncated to |k|_inf <= cap;
    /// useful to demonstrate the boundary deficit of an incomplete bank.
    pub fn build_truncated(grid: Grid, cap: i64) -> Result<Self> {
        Self::build_inner(grid, RhoProfile::default(), Some(cap))
    }

    fn build_inner(grid: Grid, profile: RhoProfile, truncation: Option<i64>) -> Result<Self> {
        let l = grid.extent() as usize;
        if grid.axis_len() % l != 0 {
            return Err(Error::Alignment(format!(
                "points_per_axis = {} must be a multiple of the extent {} so integer \
                 frequency shifts are exact bin rotations",
                grid.axis_len(),
                l
            )));
        }
        // samples of the frequency grid falling in the closed band [1/2, 3/4]
        let got = (0.75 * l as f64).floor() as usize - (0.5 * l as f64).ceil() as usize + 1;
        if got < TRANSITION_SAMPLES_NEEDED {
            return Err(Error::Resolution {
                got,
                need: TRANSITION_SAMPLES_NEEDED,
            });
        }
        let k_max = grid.max_freq() as i64 - 2;
        if k_max < 0 {
            return Err(Error::Alignment(
                "frequency range cannot hold a single unit window with margin".into(),
            ));
        }
        let mut base = vec![0.0; grid.total_points()];
        let mut support = Vec::new();
        for (flat, v) in base.iter_mut().enumerate() {
            let xi = grid.freq_point(flat);
            let num = rho(profile, &xi, grid.n_dim());
            if num > 0.0 {
                *v = num / rho_lattice_sum(profile, &xi, grid.n_dim());
                support.push(flat);
            }
        }
        Ok(UniformFamily {
            grid,
            profile,
            base,
            support,
            k_max,
            truncation,
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Largest |k|_inf admitted by window application and norm aggregation.
    pub fn k_max(&self) -> i64 {
        self.truncation.unwrap_or(self.k_max)
    }

    pub fn profile(&self) -> RhoProfile {
        self.profile
    }

    /// Value of sigma_k at a flat frequency-bin index.
    #[inline]
    pub fn sigma(&self, k: [i64; 2], flat: usize) -> f64 {
        self.base[self.shifted_flat(k, flat)]
    }

    #[inline]
    fn shifted_flat(&self, k: [i64; 2], flat: usize) -> usize {
        let m = self.grid.axis_len();
        let mask = m - 1;
        let l = self.grid.extent() as i64;
        let idx = self.grid.decompose(flat);
        let x = (idx[0].wrapping_sub((k[0] * l) as usize)) & mask;
        if self.grid.n_dim() == 1 {
            x
        } else {
            let y = (idx[1].wrapping_sub((k[1] * l) as usize)) & mask;
            y * m + x
        }
    }

    /// Flat index of a base-support bin after translation by k lattice steps.
    #[inline]
    fn forward_flat(&self, k: [i64; 2], base_flat: usize) -> usize {
        let m = self.grid.axis_len();
        let mask = m - 1;
        let l = self.grid.extent() as i64;
        let idx = self.grid.decompose(base_flat);
        let x = (idx[0].wrapping_add((k[0] * l) as usize)) & mask;
        if self.grid.n_dim() == 1 {
            x
        } else {
            let y = (idx[1].wrapping_add((k[1] * l) as usize)) & mask;
            y * m + x
        }
    }

    fn check_k(&self, k: [i64; 2]) -> Result<()> {
        let limit = self.k_max();
        let mut worst = k[0].abs();
        if self.grid.n_dim() == 2 {
            worst = worst.max(k[1].abs());
        }
        if worst > limit {
            return Err(Error::WindowOutOfRange {
                index: k,
                k_max: limit,
            });
        }
        Ok(())
    }

    /// Frequency restriction to window k: inverse transform of sigma_k times
    /// the spectrum of f.
    pub fn apply(&self, f: &SampledFunction, k: [i64; 2]) -> Result<SampledFunction> {
        self.check_k(k)?;
        if f.grid() != &self.grid {
            return Err(Error::GridMismatch);
        }
        let mut spec = match f.domain() {
            Domain::Space => f.forward_spectrum()?.into_values(),
            Domain::Frequency => f.values().to_vec(),
        };
        self.multiply_window(k, &mut spec);
        inverse_transform_raw(&self.grid, &mut spec);
        Ok(SampledFunction::from_raw(self.grid, Domain::Space, spec))
    }

    pub(crate) fn multiply_window(&self, k: [i64; 2], spec: &mut [Complex64]) {
        for (flat, v) in spec.iter_mut().enumerate() {
            let w = self.base[self.shifted_flat(k, flat)];
            *v *= w;
        }
    }

    /// Writes sigma_k times `spec` into `out` (zeroed first); touches only
    /// the window's support bins.
    pub(crate) fn windowed_into(&self, k: [i64; 2], spec: &[Complex64], out: &mut [Complex64]) {
        out.fill(Complex64::default());
        for &u in &self.support {
            let bin = self.forward_flat(k, u);
            out[bin] = spec[bin] * self.base[u];
        }
    }

    /// Largest modulus of the spectrum over the (open) support of window k.
    /// Zero means the window term vanishes identically. Support-local scan.
    pub(crate) fn window_content_max(&self, k: [i64; 2], spec: &[Complex64]) -> f64 {
        let mut max = 0.0f64;
        for &u in &self.support {
            let bin = self.forward_flat(k, u);
            max = max.max(spec[bin].norm_sqr());
        }
        max.sqrt()
    }

    /// Max deviation of the window sum from 1 over every represented
    /// frequency (truncated families sum only their admitted windows).
    pub fn partition_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for flat in 0..self.grid.total_points() {
            let xi = self.grid.freq_point(flat);
            let r0 = neighbor_range(xi[0]);
            let r1 = if self.grid.n_dim() == 2 {
                neighbor_range(xi[1])
            } else {
                (0, 0)
            };
            let mut sum = 0.0;
            for a in r0.0..=r0.1 {
                for b in r1.0..=r1.1 {
                    if let Some(cap) = self.truncation {
                        let inf = if self.grid.n_dim() == 2 {
                            a.abs().max(b.abs())
                        } else {
                            a.abs()
                        };
                        if inf > cap {
                            continue;
                        }
                    }
                    sum += self.base[self.shifted_flat([a, b], flat)];
                }
            }
            worst = worst.max((sum - 1.0).abs());
        }
        worst
    }

    /// ||F^{-1} sigma_0||_{L_p}; the natural normalizer in several of the
    /// norm-equivalence ratios.
    pub fn base_inverse_lp(&self, p: &crate::params::Exponent) -> f64 {
        let mut spec: Vec<Complex64> = self
            .base
            .iter()
            .map(|&w| Complex64::new(w, 0.0))
            .collect();
        inverse_transform_raw(&self.grid, &mut spec);
        SampledFunction::from_raw(self.grid, Domain::Space, spec)
            .lp_norm(&LpParams::plain(*p))
    }

    /// Sum of all window restrictions of f over the active range.
    pub fn reconstruct(&self, f: &SampledFunction) -> Result<SampledFunction> {
        if f.grid() != &self.grid {
            return Err(Error::GridMismatch);
        }
        let spec = match f.domain() {
            Domain::Space => f.forward_spectrum()?.into_values(),
            Domain::Frequency => f.values().to_vec(),
        };
        let mut acc = vec![Complex64::default(); spec.len()];
        let limit = self.k_max();
        let n2 = self.grid.n_dim() == 2;
        for a in -limit..=limit {
            let bs: Vec<i64> = if n2 {
                (-limit..=limit).collect()
            } else {
                vec![0]
            };
            for b in bs {
                let k = [a, b];
                if self.window_content_max(k, &spec) == 0.0 {
                    continue;
                }
                for &u in &self.support {
                    let bin = self.forward_flat(k, u);
                    acc[bin] += spec[bin] * self.base[u];
                }
            }
        }
        inverse_transform_raw(&self.grid, &mut acc);
        Ok(SampledFunction::from_raw(self.grid, Domain::Space, acc))
    }
}

/// The dyadic Littlewood-Paley bank {psi_j}: psi_0 = phi, and for j >= 1
/// psi_j(xi) = phi(2^{-j} xi) - phi(2^{1-j} xi), supported on the annulus
/// (2/3) 2^j <= |xi| <= (3/2) 2^j with plateau [3/4, 4/3] 2^j.
#[derive(Clone, Debug)]
pub struct DyadicFamily {
    grid: Grid,
    psi: Vec<Vec<f64>>,
    j_max: u32,
}

/// phi: 1 on |xi| <= 4/3, 0 for |xi| >= 3/2.
fn phi(norm: f64) -> f64 {
    profile::fall(norm, 4.0 / 3.0, 1.5)
}

impl DyadicFamily {
    pub fn build(grid: Grid) -> Result<Self> {
        let max_freq = grid.max_freq();
        if max_freq < 1.5 {
            return Err(Error::Resolution { got: 0, need: 1 });
        }
        let j_max = (max_freq / 1.5).log2().floor() as u32;
        let mut psi = Vec::with_capacity(j_max as usize + 1);
        for j in 0..=j_max {
            let mut values = vec![0.0; grid.total_points()];
            for (flat, v) in values.iter_mut().enumerate() {
                let xi = grid.freq_point(flat);
                let norm = Grid::coord_norm_sq(&xi, grid.n_dim()).sqrt();
                *v = if j == 0 {
                    phi(norm)
                } else {
                    let scale = (2.0f64).powi(-(j as i32));
                    phi(norm * scale) - phi(norm * scale * 2.0)
                };
            }
            psi.push(values);
        }
        Ok(DyadicFamily { grid, psi, j_max })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn j_max(&self) -> u32 {
        self.j_max
    }

    pub fn psi(&self, j: u32, flat: usize) -> f64 {
        self.psi[j as usize][flat]
    }

    fn check_j(&self, j: u32) -> Result<()> {
        if j > self.j_max {
            return Err(Error::ShellOutOfRange {
                index: j,
                j_max: self.j_max,
            });
        }
        Ok(())
    }

    /// Shell restriction: inverse transform of psi_j times the spectrum.
    pub fn apply(&self, f: &SampledFunction, j: u32) -> Result<SampledFunction> {
        self.check_j(j)?;
        if f.grid() != &self.grid {
            return Err(Error::GridMismatch);
        }
        let mut spec = match f.domain() {
            Domain::Space => f.forward_spectrum()?.into_values(),
            Domain::Frequency => f.values().to_vec(),
        };
        for (flat, v) in spec.iter_mut().enumerate() {
            *v *= self.psi[j as usize][flat];
        }
        inverse_transform_raw(&self.grid, &mut spec);
        Ok(SampledFunction::from_raw(self.grid, Domain::Space, spec))
    }

    pub(crate) fn shell_content_max(&self, j: u32, spec: &[Complex64]) -> f64 {
        let mut max = 0.0f64;
        for (flat, v) in spec.iter().enumerate() {
            if self.psi[j as usize][flat] > 0.0 {
                max = max.max(v.norm_sqr());
            }
        }
        max.sqrt()
    }

    /// Radius of the ball on which the telescoped partition equals one.
    pub fn covered_radius(&self) -> f64 {
        (4.0 / 3.0) * (2.0f64).powi(self.j_max as i32)
    }

    /// Max deviation of sum_j psi_j from 1 over frequencies |xi| <= 2^{j_max}.
    pub fn partition_deviation(&self) -> f64 {
        let bound = (2.0f64).powi(self.j_max as i32);
        let mut worst = 0.0f64;
        for flat in 0..self.grid.total_points() {
            let xi = self.grid.freq_point(flat);
            let norm = Grid::coord_norm_sq(&xi, self.grid.n_dim()).sqrt();
            if norm > bound {
                continue;
            }
            let mut sum = 0.0;
            for j in 0..=self.j_max {
                sum += self.psi[j as usize][flat];
            }
            worst = worst.max((sum - 1.0).abs());
        }
        worst
    }

    /// Sum of all shell restrictions.
    pub fn reconstruct(&self, f: &SampledFunction) -> Result<SampledFunction> {
        if f.grid() != &self.grid {
            return Err(Error::GridMismatch);
        }
        let spec = match f.domain() {
            Domain::Space => f.forward_spectrum()?.into_values(),
            Domain::Frequency => f.values().to_vec(),
        };
        let mut acc = vec![Complex64::default(); spec.len()];
        for j in 0..=self.j_max {
            for (flat, v) in spec.iter().enumerate() {
                acc[flat] += v * self.psi[j as usize][flat];
            }
        }
        inverse_transform_raw(&self.grid, &mut acc);
        Ok(SampledFunction::from_raw(self.grid, Domain::Space, acc))
    }
}

/// Convenience: forward spectrum values of f regardless of stored domain.
pub(crate) fn spectrum_values(f: &SampledFunction) -> Result<Vec<Complex64>> {
    match f.domain() {
        Domain::Frequency => Ok(f.values().to_vec()),
        Domain::Space => {
            let mut v = f.values().to_vec();
            fft_in_place(f.grid(), &mut v, true);
            forward_postprocess(f.grid(), &mut v);
            Ok(v)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Exponent;
    use rand::{Rng, SeedableRng};

    fn grid_1d() -> Grid {
        Grid::new(1, 64, 1 << 12).unwrap()
    }

    fn core_supported(grid: Grid) -> SampledFunction {
        // spectrum inside |xi| <= 1/4: exact single-window content
        let mut spec = SampledFunction::zeros(grid, Domain::Frequency);
        for flat in 0..grid.total_points() {
            let xi = grid.freq_point(flat);
            let norm = Grid::coord_norm_sq(&xi, grid.n_dim()).sqrt();
            if norm <= 0.2 {
                spec.values_mut()[flat] = Complex64::new(profile::fall(norm, 0.1, 0.2), 0.0);
            }
        }
        spec.inverse_spectrum().unwrap()
    }

    #[test]
    fn sigma_is_one_at_origin_and_vanishes_outside_support() {
        let fam = UniformFamily::build(grid_1d()).unwrap();
        let g = fam.grid();
        for flat in 0..g.total_points() {
            let xi = g.freq_point(flat)[0];
            let v = fam.sigma([0, 0], flat);
            if xi.abs() <= 0.25 {
                assert!((v - 1.0).abs() < 1e-12, "sigma_0({xi}) = {v}");
            }
            if xi.abs() >= 0.75 {
                assert_eq!(v, 0.0, "sigma_0 must vanish at |xi| = {xi}");
            }
        }
    }

    #[test]
    fn partition_sums_to_one_at_random_frequencies() {
        let fam = UniformFamily::build(grid_1d()).unwrap();
        let g = *fam.grid();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let flat = rng.gen_range(0..g.total_points());
            let r = neighbor_range(g.freq_point(flat)[0]);
            let sum: f64 = (r.0..=r.1).map(|a| fam.sigma([a, 0], flat)).sum();
            assert!((sum - 1.0).abs() < 1e-10);
        }
        assert!(fam.partition_deviation() < 1e-10);
    }

    #[test]
    fn sigma_shift_identity_is_exact() {
        let fam = UniformFamily::build(grid_1d()).unwrap();
        let g = fam.grid();
        let l = g.extent() as usize;
        for &k in &[1i64, -3, 17] {
            for flat in (0..g.total_points()).step_by(97) {
                let shifted = (flat + k.rem_euclid(g.axis_len() as i64) as usize * l)
                    % g.axis_len();
                assert_eq!(fam.sigma([k, 0], shifted), fam.sigma([0, 0], flat));
            }
        }
    }

    #[test]
    fn truncated_family_loses_mass_near_the_boundary() {
        let fam = UniformFamily::build_truncated(grid_1d(), 2).unwrap();
        let dev = fam.partition_deviation();
        assert!(dev > 0.99, "expected near-total deficit, got {dev}");
    }

    #[test]
    fn window_application_collapses_core_supported_functions() {
        let g = grid_1d();
        let fam = UniformFamily::build(g).unwrap();
        let f = core_supported(g);
        let piece = fam.apply(&f, [0, 0]).unwrap();
        assert!(piece.rel_l2_distance(&f) < 1e-10);
        for k in [1i64, -1, 5] {
            let other = fam.apply(&f, [k, 0]).unwrap();
            let p2 = LpParams::plain(Exponent::int(2).unwrap());
            assert!(other.lp_norm(&p2) < 1e-12 * f.lp_norm(&p2));
        }
        assert!(fam.apply(&f, [fam.k_max() + 1, 0]).is_err());
    }

    #[test]
    fn reconstruction_and_translation_commutation() {
        let g = grid_1d();
        let fam = UniformFamily::build(g).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let f = crate::corpus::random_band_limited(g, 20.0, &mut rng);
        let sum = fam.reconstruct(&f).unwrap();
        assert!(sum.rel_l2_distance(&f) < 1e-8);

        let shift = [4.0 * g.spacing() * 7.0, 0.0];
        let a = fam
            .apply(&f.translated(shift).unwrap(), [3, 0])
            .unwrap();
        let b = fam
            .apply(&f, [3, 0])
            .unwrap()
            .translated(shift)
            .unwrap();
        assert!(a.rel_l2_distance(&b) < 1e-10);
    }

    #[test]
    fn dyadic_values_match_their_definition() {
        let g = grid_1d();
        let fam = DyadicFamily::build(g).unwrap();
        assert_eq!(fam.j_max(), 4, "shell 4 needs frequencies up to 24 <= 32 = M/(2L)");
        // psi_0(0) = 1
        let origin = 0usize;
        assert_eq!(g.freq_point(origin)[0], 0.0);
        assert_eq!(fam.psi(0, origin), 1.0);
        // psi_j = 1 exactly at |xi| = 2^j
        for j in 1..=fam.j_max() {
            let target = (2.0f64).powi(j as i32);
            let flat = (target * g.extent() as f64).round() as usize;
            assert!((fam.psi(j, flat) - 1.0).abs() < 1e-12);
            // support annulus: vanishes off (2/3) 2^j <= |xi| <= (3/2) 2^j
            for probe in 0..g.total_points() {
                let norm = g.freq_point(probe)[0].abs();
                if norm < (2.0 / 3.0) * target - 1e-9 || norm > 1.5 * target + 1e-9 {
                    assert_eq!(fam.psi(j, probe), 0.0);
                }
            }
        }
        assert!(fam.partition_deviation() < 1e-10);
    }

    #[test]
    fn shell_restriction_fixes_annulus_plateau_functions() {
        let g = grid_1d();
        let fam = DyadicFamily::build(g).unwrap();
        let j = 3u32;
        let h = crate::witnesses::shell_annulus_function(g, j).unwrap();
        let fixed = fam.apply(&h, j).unwrap();
        assert!(fixed.rel_l2_distance(&h) < 1e-10);
        let p2 = LpParams::plain(Exponent::int(2).unwrap());
        let scale = h.lp_norm(&p2);
        for i in 0..=fam.j_max() {
            if i == j {
                continue;
            }
            let off = fam.apply(&h, i).unwrap();
            assert!(
                off.lp_norm(&p2) < 1e-12 * scale,
                "shell {i} must not see annulus {j}"
            );
        }
        assert!(fam.apply(&h, fam.j_max() + 1).is_err());
    }

    #[test]
    fn dyadic_reconstruction_of_band_limited_functions() {
        let g = grid_1d();
        let fam = DyadicFamily::build(g).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let f = crate::corpus::random_band_limited(g, 18.0, &mut rng);
            let sum = fam.reconstruct(&f).unwrap();
            assert!(sum.rel_l2_distance(&f) < 1e-8);
        }
    }

    #[test]
    fn coarse_grids_are_rejected() {
        let tiny = Grid::new(1, 16, 256).unwrap();
        assert!(matches!(
            UniformFamily::build(tiny),
            Err(Error::Resolution { .. })
        ));
    }

    #[test]
    fn two_dimensional_families_partition() {
        let g = Grid::new(2, 32, 256).unwrap();
        let uf = UniformFamily::build(g).unwrap();
        assert_eq!(uf.k_max(), 2);
        assert!(uf.partition_deviation() < 1e-10);
        let df = DyadicFamily::build(g).unwrap();
        assert!(df.partition_deviation() < 1e-10);
    }

    #[test]
    fn profiles_all_satisfy_window_constraints() {
        for prof in [RhoProfile::Mollifier, RhoProfile::Quintic, RhoProfile::Narrow] {
            let fam = UniformFamily::build_with_profile(grid_1d(), prof).unwrap();
            assert!(fam.partition_deviation() < 1e-10, "{prof:?}");
            let g = fam.grid();
            for flat in 0..g.total_points() {
                let xi = g.freq_point(flat)[0];
                if xi.abs() <= 0.25 {
                    assert!((fam.sigma([0, 0], flat) - 1.0).abs() < 1e-12);
                }
                if xi.abs() >= 0.75 {
                    assert_eq!(fam.sigma([0, 0], flat), 0.0);
                }
            }
        }
    }
}
