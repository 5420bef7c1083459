//! Independent direct-summation oracles: no fast transforms, plain loops,
//! literal quadrature definitions. Window values are read from the certified
//! family banks; everything downstream of them (transforms, quadrature,
//! mixed-norm aggregation) is re-derived here from scratch.

use num_complex::Complex64;

use fspace::decomposition::{DyadicFamily, UniformFamily};
use fspace::norms::{DyadicCoeffs, UniformCoeffs};
use fspace::params::{rational_to_f64, Exponent, Rational, SpaceParams};
use fspace::{Domain, Grid, SampledFunction};

const TAU: f64 = 2.0 * std::f64::consts::PI;

/// Literal forward quadrature: F f(xi_u) = sum_m f(x_m) e^{-tau i x_m xi_u} h^n.
pub fn naive_forward(f: &SampledFunction) -> Vec<Complex64> {
    let grid = *f.grid();
    assert_eq!(grid.n_dim(), 1, "oracle transforms are one-dimensional");
    let m = grid.axis_len();
    let h = grid.spacing();
    let mut out = vec![Complex64::default(); m];
    for (u, slot) in out.iter_mut().enumerate() {
        let xi = grid.freq_point(u)[0];
        let mut acc = Complex64::default();
        for (j, v) in f.values().iter().enumerate() {
            let x = grid.space_point(j)[0];
            acc += v * Complex64::from_polar(1.0, -TAU * x * xi);
        }
        *slot = acc * h;
    }
    out
}

/// Literal inverse quadrature with weight 1/L per frequency cell.
pub fn naive_inverse(grid: &Grid, spec: &[Complex64]) -> Vec<Complex64> {
    let m = grid.axis_len();
    let w = grid.freq_spacing();
    let mut out = vec![Complex64::default(); m];
    for (j, slot) in out.iter_mut().enumerate() {
        let x = grid.space_point(j)[0];
        let mut acc = Complex64::default();
        for (u, v) in spec.iter().enumerate() {
            let xi = grid.freq_point(u)[0];
            acc += v * Complex64::from_polar(1.0, TAU * x * xi);
        }
        *slot = acc * w;
    }
    out
}

/// Plain-loop weighted Lebesgue norm over space samples.
pub fn naive_lp(grid: &Grid, values: &[Complex64], p: &Exponent, s: f64) -> f64 {
    match p {
        Exponent::Infinity => values
            .iter()
            .enumerate()
            .map(|(j, v)| {
                let x = grid.space_point(j)[0];
                v.norm() * (1.0 + x * x).powf(0.5 * s)
            })
            .fold(0.0, f64::max),
        Exponent::Finite(pr) => {
            let p = rational_to_f64(*pr);
            let h = grid.spacing();
            let mut acc = 0.0;
            for (j, v) in values.iter().enumerate() {
                let x = grid.space_point(j)[0];
                acc += v.norm().powf(p) * (1.0 + x * x).powf(0.5 * p * s) * h;
            }
            acc.powf(1.0 / p)
        }
    }
}

fn naive_lq_freq(grid: &Grid, values: &[Complex64], q: &Exponent, s: f64) -> f64 {
    match q {
        Exponent::Infinity => values
            .iter()
            .enumerate()
            .map(|(u, v)| {
                let xi = grid.freq_point(u)[0];
                v.norm() * (1.0 + xi * xi).powf(0.5 * s)
            })
            .fold(0.0, f64::max),
        Exponent::Finite(qr) => {
            let q = rational_to_f64(*qr);
            let w = grid.freq_spacing();
            let mut acc = 0.0;
            for (u, v) in values.iter().enumerate() {
                let xi = grid.freq_point(u)[0];
                acc += v.norm().powf(q) * (1.0 + xi * xi).powf(0.5 * q * s) * w;
            }
            acc.powf(1.0 / q)
        }
    }
}

/// The same relative spectral noise gate the library norms document: values
/// below 1e-15 of the peak are transform residue and are treated as zero.
pub fn gate(spec: &mut [Complex64]) {
    let peak = spec.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let cut = peak * 1e-15;
    for v in spec.iter_mut() {
        if v.norm() <= cut {
            *v = Complex64::default();
        }
    }
}

fn aggregate_weighted(terms: &[(f64, f64)], q: &Exponent) -> f64 {
    match q {
        Exponent::Infinity => terms.iter().fold(0.0f64, |m, (w, v)| m.max(w * v)),
        Exponent::Finite(qr) => {
            let q = rational_to_f64(*qr);
            let mut acc = 0.0;
            for (w, v) in terms {
                acc += (w * v).powf(q);
            }
            acc.powf(1.0 / q)
        }
    }
}

/// Direct-summation modulation norm: per-window naive inverse transform of
/// the windowed spectrum, plain L_p, weighted l_q aggregation.
pub fn naive_modulation_norm(
    f: &SampledFunction,
    params: &SpaceParams,
    family: &UniformFamily,
) -> f64 {
    let grid = *f.grid();
    let mut spec = naive_forward(f);
    gate(&mut spec);
    let s = rational_to_f64(params.s);
    let mut terms = Vec::new();
    let k_max = family.k_max();
    for k in -k_max..=k_max {
        let mut windowed = vec![Complex64::default(); spec.len()];
        let mut any = false;
        for (u, v) in spec.iter().enumerate() {
            let w = family.sigma([k, 0], u);
            if w > 0.0 && v.norm() > 0.0 {
                any = true;
            }
            windowed[u] = v * w;
        }
        if !any {
            continue;
        }
        let piece = naive_inverse(&grid, &windowed);
        let t = naive_lp(&grid, &piece, &params.p, 0.0);
        terms.push(((1.0 + (k * k) as f64).powf(0.5 * s), t));
    }
    aggregate_weighted(&terms, &params.q)
}

/// Direct-summation Besov norm over dyadic shells.
pub fn naive_besov_norm(f: &SampledFunction, params: &SpaceParams, family: &DyadicFamily) -> f64 {
    let grid = *f.grid();
    let mut spec = naive_forward(f);
    gate(&mut spec);
    let s = rational_to_f64(params.s);
    let mut terms = Vec::new();
    for j in 0..=family.j_max() {
        let mut windowed = vec![Complex64::default(); spec.len()];
        let mut any = false;
        for (u, v) in spec.iter().enumerate() {
            let w = family.psi(j, u);
            if w > 0.0 && v.norm() > 0.0 {
                any = true;
            }
            windowed[u] = v * w;
        }
        if !any {
            continue;
        }
        let piece = naive_inverse(&grid, &windowed);
        let t = naive_lp(&grid, &piece, &params.p, 0.0);
        terms.push(((2.0f64).powf(j as f64 * s), t));
    }
    aggregate_weighted(&terms, &params.q)
}

/// Direct-summation Triebel-Lizorkin norm: pointwise l_r across shells, then
/// plain L_p.
pub fn naive_triebel_norm(f: &SampledFunction, params: &SpaceParams, family: &DyadicFamily) -> f64 {
    let grid = *f.grid();
    let mut spec = naive_forward(f);
    gate(&mut spec);
    let s = rational_to_f64(params.s);
    let p = match &params.p {
        Exponent::Finite(v) => rational_to_f64(*v),
        Exponent::Infinity => panic!("oracle needs finite p"),
    };
    let m = grid.axis_len();
    let mut pieces: Vec<Vec<Complex64>> = Vec::new();
    let mut weights = Vec::new();
    for j in 0..=family.j_max() {
        let mut windowed = vec![Complex64::default(); spec.len()];
        let mut any = false;
        for (u, v) in spec.iter().enumerate() {
            let w = family.psi(j, u);
            if w > 0.0 && v.norm() > 0.0 {
                any = true;
            }
            windowed[u] = v * w;
        }
        if !any {
            continue;
        }
        pieces.push(naive_inverse(&grid, &windowed));
        weights.push((2.0f64).powf(j as f64 * s));
    }
    let h = grid.spacing();
    let mut acc = 0.0;
    for x in 0..m {
        let inner = match &params.r {
            Exponent::Infinity => pieces
                .iter()
                .zip(&weights)
                .map(|(piece, w)| w * piece[x].norm())
                .fold(0.0, f64::max),
            Exponent::Finite(rr) => {
                let r = rational_to_f64(*rr);
                let mut sum = 0.0;
                for (piece, w) in pieces.iter().zip(&weights) {
                    sum += (w * piece[x].norm()).powf(r);
                }
                sum.powf(1.0 / r)
            }
        };
        acc += inner.powf(p) * h;
    }
    acc.powf(1.0 / p)
}

/// Literal short-time transform norm: V(x, xi) by a direct double loop over
/// samples, then the mixed L_{x,p} / weighted L_{xi,q} norm.
pub fn naive_stft_norm(f: &SampledFunction, params: &SpaceParams, window: &SampledFunction) -> f64 {
    let grid = *f.grid();
    let m = grid.axis_len();
    let h = grid.spacing();
    let s = rational_to_f64(params.s);
    // inner aggregate per frequency
    let mut inner = vec![0.0f64; m];
    let p_finite = match &params.p {
        Exponent::Finite(v) => Some(rational_to_f64(*v)),
        Exponent::Infinity => None,
    };
    for xm in 0..m {
        let x = grid.space_point(xm)[0];
        // one row of the transform: all xi for this window position
        for u in 0..m {
            let xi = grid.freq_point(u)[0];
            let mut acc = Complex64::default();
            for ym in 0..m {
                let y = grid.space_point(ym)[0];
                // periodic window displacement folded into [-L/2, L/2)
                let l = grid.extent() as f64;
                let mut d = y - x;
                while d < -l / 2.0 {
                    d += l;
                }
                while d >= l / 2.0 {
                    d -= l;
                }
                let widx = ((d + l / 2.0) / h).round() as usize % m;
                acc += f.values()[ym]
                    * window.values()[widx].conj()
                    * Complex64::from_polar(1.0, -TAU * y * xi);
            }
            let v = (acc * h).norm();
            match p_finite {
                Some(p) => inner[u] += v.powf(p) * h,
                None => inner[u] = inner[u].max(v),
            }
        }
    }
    if let Some(p) = p_finite {
        for v in inner.iter_mut() {
            *v = v.powf(1.0 / p);
        }
    }
    let as_complex: Vec<Complex64> = inner.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    naive_lq_freq(&grid, &as_complex, &params.q, s)
}

/// Plain-loop weighted sequence norms.
pub fn naive_uniform_seq_norm(a: &UniformCoeffs, q: &Exponent, s: Rational) -> f64 {
    let s = rational_to_f64(s);
    let terms: Vec<(f64, f64)> = a
        .iter()
        .map(|(k, v)| {
            let k2 = (k[0] * k[0] + if a.n_dim() == 2 { k[1] * k[1] } else { 0 }) as f64;
            ((1.0 + k2).powf(0.5 * s), v.norm())
        })
        .collect();
    aggregate_weighted(&terms, q)
}

pub fn naive_dyadic_seq_norm(b: &DyadicCoeffs, q: &Exponent, s: Rational) -> f64 {
    let s = rational_to_f64(s);
    let terms: Vec<(f64, f64)> = b
        .iter()
        .map(|(j, v)| ((2.0f64).powf(*j as f64 * s), v.norm()))
        .collect();
    aggregate_weighted(&terms, q)
}

/// Brute-force embedding predicates over integer pairs (num, den), written
/// against i128 cross-multiplication so no shared rational type is involved.
pub mod brute {
    /// A rational as (numerator, denominator > 0); infinity is (1, 0).
    #[derive(Clone, Copy, Debug)]
    pub struct Q(pub i128, pub i128);

    impl Q {
        pub fn inv_of_exponent(num: i128, den: i128) -> Q {
            // reciprocal of a positive exponent num/den; (1, 0) means inf -> 0
            if den == 0 {
                Q(0, 1)
            } else {
                Q(den, num)
            }
        }

        pub fn sub(self, other: Q) -> Q {
            Q(self.0 * other.1 - other.0 * self.1, self.1 * other.1)
        }

        pub fn add(self, other: Q) -> Q {
            Q(self.0 * other.1 + other.0 * self.1, self.1 * other.1)
        }

        pub fn mul_int(self, k: i128) -> Q {
            Q(self.0 * k, self.1)
        }

        pub fn cmp(self, other: Q) -> std::cmp::Ordering {
            // denominators kept positive by construction
            debug_assert!(self.1 > 0 && other.1 > 0);
            (self.0 * other.1).cmp(&(other.0 * self.1))
        }
    }

    pub struct Verdict {
        pub holds: bool,
        pub cond1: bool,
        pub boundary: bool,
    }

    /// Forward inclusion condition of the modulation scale into the
    /// inner-exponent scale.
    pub fn m_into_f(n: i128, ip: Q, iq: Q, ir: Q, s: Q) -> Verdict {
        use std::cmp::Ordering::*;
        let zero = Q(0, 1);
        let thr = ip.sub(iq).mul_int(n);
        let o_pq = ip.cmp(iq);
        let o_s0 = s.cmp(zero);
        let o_rq = ir.cmp(iq);
        let o_st = s.cmp(thr);
        let cond1 = o_pq != Greater && o_s0 != Less && o_rq != Greater;
        let cond2 = o_pq == Greater && o_st == Greater;
        Verdict {
            holds: cond1 || cond2,
            cond1,
            boundary: [o_pq, o_s0, o_rq, o_st].contains(&Equal),
        }
    }

    /// Reverse inclusion; r plays no role.
    pub fn f_into_m(n: i128, ip: Q, iq: Q, s: Q) -> Verdict {
        use std::cmp::Ordering::*;
        let one = Q(1, 1);
        let thr = one.sub(ip).sub(iq).mul_int(n);
        let o_qp = iq.cmp(ip);
        let o_st = s.cmp(thr);
        let cond1 = o_qp != Greater && o_st != Greater;
        let cond2 = o_qp == Greater && o_st == Less;
        Verdict {
            holds: cond1 || cond2,
            cond1,
            boundary: [o_qp, o_st].contains(&Equal),
        }
    }

    /// Local-Hardy comparison in the forward direction.
    pub fn m_into_h(n: i128, ip: Q, iq: Q, s: Q) -> Verdict {
        use std::cmp::Ordering::*;
        let zero = Q(0, 1);
        let thr = ip.sub(iq).mul_int(n);
        let o_pq = ip.cmp(iq);
        let o_s0 = s.cmp(zero);
        let o_st = s.cmp(thr);
        let cond1 = o_pq != Greater && o_s0 != Less;
        let cond2 = o_pq == Greater && o_st == Greater;
        Verdict {
            holds: cond1 || cond2,
            cond1,
            boundary: [o_pq, o_s0, o_st].contains(&Equal),
        }
    }

    /// Besov comparison: s against max/min of the three pivots.
    pub fn besov(n: i128, ip: Q, iq: Q, s: Q, forward: bool) -> (bool, bool) {
        use std::cmp::Ordering::*;
        let zero = Q(0, 1);
        let one = Q(1, 1);
        let a = zero;
        let b = ip.sub(iq).mul_int(n);
        let c = one.sub(ip).sub(iq).mul_int(n);
        let pick = |x: Q, y: Q, larger: bool| -> Q {
            match x.cmp(y) {
                Greater => {
                    if larger {
                        x
                    } else {
                        y
                    }
                }
                _ => {
                    if larger {
                        y
                    } else {
                        x
                    }
                }
            }
        };
        let thr = pick(pick(a, b, forward), c, forward);
        let o = s.cmp(thr);
        let holds = if forward { o != Less } else { o != Greater };
        (holds, o == Equal)
    }
}
