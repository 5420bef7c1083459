//! Atom generators and validators.
//!
//! An atom at scale nu lives on the cube of side 2^{-nu} centered at
//! 2^{-nu} k, is supported in the 5-times dilate of that cube, and obeys
//! derivative sup bounds up to order K. The cancelling kind additionally has
//! vanishing moments against monomials up to degree L. Generators construct
//! candidates with a factor-2 margin in every derivative bound; validators
//! re-check all three conditions from the sampled data alone (derivatives
//! through the spectrum).

use num_complex::Complex64;

use crate::embedding::AtomOrders;
use crate::error::{Error, Result};
use crate::grid::{compensated_sum, Domain, Grid, SampledFunction};
use crate::norms::modulation_norm;
use crate::params::{rational_to_f64, Exponent, Rational, SpaceParams};
use crate::profile;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AtomKind {
    /// Derivative bounds |D^a| <= 1 only (scale is fixed to nu = 0).
    SAtom,
    /// Cube-normalized bounds |D^a| <= |Q|^{-1/q + s/n - |a|/n} plus
    /// vanishing moments up to order L.
    QAtom,
}

#[derive(Clone, Debug)]
pub struct AtomSpec {
    pub kind: AtomKind,
    /// Dyadic scale nu; the cube side is 2^{-nu}.
    pub scale: u32,
    pub orders: AtomOrders,
    pub s: Rational,
    pub p: Exponent,
    pub q: Exponent,
}

impl AtomSpec {
    pub fn cube_side(&self) -> f64 {
        (2.0f64).powi(-(self.scale as i32))
    }

    /// Support radius in the sup metric: half the side of 5Q.
    pub fn support_half_width(&self) -> f64 {
        2.5 * self.cube_side()
    }

    /// Derivative sup bound for a multi-index of total order `order`.
    pub fn derivative_bound(&self, order: u32, n_dim: usize) -> f64 {
        match self.kind {
            AtomKind::SAtom => 1.0,
            AtomKind::QAtom => {
                let n = n_dim as f64;
                let cube_measure = self.cube_side().powi(n_dim as i32);
                let exponent = -self.q.reciprocal_f64() + rational_to_f64(self.s) / n
                    - order as f64 / n;
                cube_measure.powf(exponent)
            }
        }
    }
}

trait RecipF64 {
    fn reciprocal_f64(&self) -> f64;
}

impl RecipF64 for Exponent {
    fn reciprocal_f64(&self) -> f64 {
        rational_to_f64(self.reciprocal())
    }
}

/// Validation report; all three sub-checks must pass for a valid atom.
#[derive(Clone, Debug)]
pub struct AtomReport {
    pub support_ok: bool,
    pub derivative_ok: bool,
    pub moments_ok: bool,
    /// Largest |a(x)| outside 5Q relative to the peak.
    pub worst_support_leak: f64,
    /// Largest ratio of a measured derivative sup to its bound.
    pub worst_derivative_ratio: f64,
    /// Largest scaled moment magnitude (cancelling atoms only).
    pub worst_moment: f64,
}

impl AtomReport {
    pub fn passed(&self) -> bool {
        self.support_ok && self.derivative_ok && self.moments_ok
    }
}

const DERIVATIVE_SLACK: f64 = 1.01;
const MOMENT_TOLERANCE: f64 = 1e-8;

fn multi_indices(n_dim: usize, max_total: u32) -> Vec<[u32; 2]> {
    let mut out = Vec::new();
    if n_dim == 1 {
        for a in 0..=max_total {
            out.push([a, 0]);
        }
    } else {
        for a in 0..=max_total {
            for b in 0..=(max_total - a) {
                out.push([a, b]);
            }
        }
    }
    out
}

/// Spectral derivative D^alpha a = F^{-1}[(2 pi i xi)^alpha F a].
fn spectral_derivative(a: &SampledFunction, order: [u32; 2]) -> Result<SampledFunction> {
    let grid = *a.grid();
    let mut spec = a.forward_spectrum()?.into_values();
    let tau = 2.0 * std::f64::consts::PI;
    for (flat, v) in spec.iter_mut().enumerate() {
        let xi = grid.freq_point(flat);
        let mut factor = Complex64::new(1.0, 0.0);
        let base0 = Complex64::new(0.0, tau * xi[0]);
        for _ in 0..order[0] {
            factor *= base0;
        }
        if grid.n_dim() == 2 {
            let base1 = Complex64::new(0.0, tau * xi[1]);
            for _ in 0..order[1] {
                factor *= base1;
            }
        }
        *v *= factor;
    }
    SampledFunction::from_raw(grid, Domain::Frequency, spec).inverse_spectrum()
}

fn grid_moment(a: &SampledFunction, beta: [u32; 2]) -> f64 {
    let grid = *a.grid();
    let cell = grid.cell_volume(Domain::Space);
    compensated_sum(a.values().iter().enumerate().map(|(flat, v)| {
        let x = grid.space_point(flat);
        let mut m = v.re;
        for _ in 0..beta[0] {
            m *= x[0];
        }
        if grid.n_dim() == 2 {
            for _ in 0..beta[1] {
                m *= x[1];
            }
        }
        m * cell
    }))
}

/// Checks support, derivative bounds (with 1% discretization slack) and, for
/// cancelling atoms, the vanishing moments.
pub fn validate_atom(a: &SampledFunction, spec: &AtomSpec) -> Result<AtomReport> {
    if a.domain() != Domain::Space {
        return Err(Error::DomainMismatch {
            expected: Domain::Space,
        });
    }
    let grid = *a.grid();
    let half_width = spec.support_half_width();
    let peak = a.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
    if peak == 0.0 {
        return Err(Error::DegenerateExperiment("zero atom".into()));
    }
    let mut worst_leak = 0.0f64;
    for (flat, v) in a.values().iter().enumerate() {
        let x = grid.space_point(flat);
        let mut inf = x[0].abs();
        if grid.n_dim() == 2 {
            inf = inf.max(x[1].abs());
        }
        if inf > half_width {
            worst_leak = worst_leak.max(v.norm() / peak);
        }
    }
    let support_ok = worst_leak < 1e-12;

    let mut worst_ratio = 0.0f64;
    for order in multi_indices(grid.n_dim(), spec.orders.k_min) {
        let d = spectral_derivative(a, order)?;
        let sup = d.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
        let bound = spec.derivative_bound(order[0] + order[1], grid.n_dim());
        worst_ratio = worst_ratio.max(sup / bound);
    }
    let derivative_ok = worst_ratio <= DERIVATIVE_SLACK;

    let mut worst_moment = 0.0f64;
    let moments_ok = match spec.kind {
        AtomKind::SAtom => true,
        AtomKind::QAtom => {
            let l1 = a.modulus().lp_norm(&crate::params::LpParams::plain(Exponent::int(1)?));
            let mut ok = true;
            for beta in multi_indices(grid.n_dim(), spec.orders.l_min) {
                let m = grid_moment(a, beta);
                let scale = l1 * half_width.powi((beta[0] + beta[1]) as i32).max(1.0);
                let rel = m.abs() / scale;
                worst_moment = worst_moment.max(rel);
                if rel >= MOMENT_TOLERANCE {
                    ok = false;
                }
            }
            ok
        }
    };

    Ok(AtomReport {
        support_ok,
        derivative_ok,
        moments_ok,
        worst_support_leak: worst_leak,
        worst_derivative_ratio: worst_ratio,
        worst_moment,
    })
}

/// Shape variations for atom corpora; variant 0 is the plain bump.
fn shape_factor(variant: u32, t: f64) -> f64 {
    match variant % 4 {
        0 => 1.0,
        1 => 1.0 + 0.3 * (std::f64::consts::PI * t).cos().powi(2),
        2 => 1.0 + 0.25 * t * t,
        _ => 1.0 + 0.2 * (1.0 - t * t),
    }
}

fn base_profile(spec: &AtomSpec, variant: u32, x: &[f64; 2], n_dim: usize) -> f64 {
    let hw = spec.support_half_width();
    let mut v = profile::spatial_bump(x[0] / hw) * shape_factor(variant, x[0] / hw);
    if n_dim == 2 {
        v *= profile::spatial_bump(x[1] / hw);
    }
    v
}

/// Solves the (L+1)x(L+1) Hankel system that orthogonalizes the monic
/// polynomial t^{L+1} against 1, t, ..., t^L under the weight of the atom
/// profile restricted to the first axis. Moments come from the same grid
/// quadrature the validator uses, so the sampled moments vanish to roundoff.
fn cancelling_polynomial(
    spec: &AtomSpec,
    variant: u32,
    grid: &Grid,
) -> Result<Vec<f64>> {
    let l_ord = spec.orders.l_min as usize;
    let dim = l_ord + 1;
    // 1-D axis moments of the weight
    let m = grid.axis_len();
    let h = grid.spacing();
    let half = grid.extent() as f64 / 2.0;
    let max_power = 2 * l_ord + 1;
    let mut axis_moments = vec![0.0f64; max_power + 1];
    for i in 0..m {
        let t = i as f64 * h - half;
        let w = base_profile(spec, variant, &[t, 0.0], 1);
        if w == 0.0 {
            continue;
        }
        let mut tp = 1.0;
        for moment in axis_moments.iter_mut() {
            *moment += w * tp * h;
            tp *= t;
        }
    }
    // A c = -rhs with A[i][j] = m_{i+j}, rhs[i] = m_{i + L + 1}
    let mut a = vec![vec![0.0f64; dim]; dim];
    let mut rhs = vec![0.0f64; dim];
    for i in 0..dim {
        for (j, row) in a[i].iter_mut().enumerate().take(dim) {
            *row = axis_moments[i + j];
        }
        rhs[i] = -axis_moments[i + l_ord + 1];
    }
    solve_dense(&mut a, &mut rhs).ok_or_else(|| {
        Error::DegenerateExperiment("singular moment system in atom generation".into())
    })?;
    // coefficients of c_0 + c_1 t + ... + c_L t^L + t^{L+1}
    rhs.push(1.0);
    Ok(rhs)
}

fn solve_dense(a: &mut [Vec<f64>], b: &mut [f64]) -> Option<()> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in (col + 1)..n {
            let factor = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    for col in (0..n).rev() {
        let mut acc = b[col];
        for k in (col + 1)..n {
            acc -= a[col][k] * b[k];
        }
        b[col] = acc / a[col][col];
    }
    Some(())
}

/// Builds an atom that satisfies its own validator with a factor-2 margin in
/// the derivative bounds. Cancelling atoms get their moments removed by a
/// monic polynomial factor in the first coordinate before rescaling.
pub fn make_test_atom(spec: &AtomSpec, grid: Grid, variant: u32) -> Result<SampledFunction> {
    if matches!(spec.kind, AtomKind::SAtom) && spec.scale != 0 {
        return Err(Error::config("scale", "plain atoms are defined at scale 0"));
    }
    let mut values = vec![Complex64::default(); grid.total_points()];
    let poly = match spec.kind {
        AtomKind::SAtom => None,
        AtomKind::QAtom => Some(cancelling_polynomial(spec, variant, &grid)?),
    };
    for (flat, v) in values.iter_mut().enumerate() {
        let x = grid.space_point(flat);
        let mut y = base_profile(spec, variant, &x, grid.n_dim());
        if let Some(coeffs) = &poly {
            let mut p = 0.0;
            for &c in coeffs.iter().rev() {
                p = p * x[0] + c;
            }
            y *= p;
        }
        *v = Complex64::new(y, 0.0);
    }
    let raw = SampledFunction::from_values(grid, Domain::Space, values)?;
    // rescale so the tightest derivative bound is met with margin 1/2
    let mut worst = 0.0f64;
    for order in multi_indices(grid.n_dim(), spec.orders.k_min) {
        let d = spectral_derivative(&raw, order)?;
        let sup = d.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
        let bound = spec.derivative_bound(order[0] + order[1], grid.n_dim());
        worst = worst.max(sup / bound);
    }
    if worst == 0.0 {
        return Err(Error::DegenerateExperiment("flat atom profile".into()));
    }
    Ok(raw.scaled(Complex64::new(0.5 / worst, 0.0)))
}

/// Scaling study of the modulation norm across atom scales. The scaled value
/// divides out the cube-measure normalization |Q_nu|^{-1/p} carried by the
/// coefficients in the atomic decomposition, which the norm estimate bounds
/// uniformly in the scale.
#[derive(Clone, Debug)]
pub struct AtomScalingReport {
    pub p: Exponent,
    pub per_scale: Vec<AtomScaleSample>,
    pub spread: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct AtomScaleSample {
    pub scale: u32,
    pub norm: f64,
    pub scaled: f64,
}

/// Modulation norms of cancelling atoms at s = n(2/p - 1) across scales.
pub fn atom_scaling_experiment(
    p: &Exponent,
    scales: &[u32],
    grid: Grid,
    family: &crate::decomposition::UniformFamily,
) -> Result<AtomScalingReport> {
    let p_rat = p.as_rational().ok_or_else(|| {
        Error::OutOfTheoremDomain("atom scaling experiment needs finite p <= 1".into())
    })?;
    if p_rat > Rational::from_integer(1) {
        return Err(Error::OutOfTheoremDomain(format!(
            "atom scaling experiment needs p <= 1, got {p}"
        )));
    }
    let n = grid.n_dim() as i64;
    let s = Rational::from_integer(n) * (Rational::from_integer(2) / p_rat - Rational::from_integer(1));
    let orders = crate::embedding::atom_orders(s, p, n as u32);
    let params = SpaceParams::new(
        grid.n_dim() as u32,
        *p,
        *p,
        Exponent::int(2)?,
        Rational::new(0, 1),
    )?;
    let mut per_scale = Vec::with_capacity(scales.len());
    for &scale in scales {
        let spec = AtomSpec {
            kind: AtomKind::QAtom,
            scale,
            orders,
            s,
            p: *p,
            q: Exponent::infinity(),
        };
        let atom = make_test_atom(&spec, grid, 0)?;
        let norm = modulation_norm(&atom, &params, family)?;
        let cube_measure = (2.0f64).powi(-(scale as i32) * n as i32);
        let scaled = norm * cube_measure.powf(-1.0 / rational_to_f64(p_rat));
        per_scale.push(AtomScaleSample {
            scale,
            norm,
            scaled,
        });
    }
    let max = per_scale.iter().map(|s| s.scaled).fold(0.0, f64::max);
    let min = per_scale
        .iter()
        .map(|s| s.scaled)
        .fold(f64::INFINITY, f64::min);
    Ok(AtomScalingReport {
        p: *p,
        per_scale,
        spread: if min > 0.0 { max / min } else { f64::INFINITY },
    })
}
