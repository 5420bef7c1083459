//! Smooth cutoff profiles built from the compactly supported mollifier
//! exp(-1/(1-t^2)).
//!
//! The partition-of-unity constructions only need the plateau and support
//! intervals to be exact; the transition shape is free. The default shape is
//! the normalized integral of the mollifier, tabulated once.

use once_cell::sync::Lazy;

const STEP_PANELS: usize = 1 << 14;

fn mollifier(t: f64) -> f64 {
    let t2 = t * t;
    if t2 >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - t2)).exp()
    }
}

/// Cumulative Simpson table of the mollifier over [-1, 1], normalized to 1.
static STEP_TABLE: Lazy<Vec<f64>> = Lazy::new(|| {
    let h = 2.0 / STEP_PANELS as f64;
    let mut cum = Vec::with_capacity(STEP_PANELS + 1);
    cum.push(0.0);
    let mut acc = 0.0;
    for i in 0..STEP_PANELS {
        let a = -1.0 + i as f64 * h;
        let b = a + h;
        acc += h / 6.0 * (mollifier(a) + 4.0 * mollifier(0.5 * (a + b)) + mollifier(b));
        cum.push(acc);
    }
    let total = acc;
    for v in &mut cum {
        *v /= total;
    }
    cum
});

/// Monotone C-infinity step: 0 for u <= 0, 1 for u >= 1.
pub(crate) fn smooth01(u: f64) -> f64 {
    if u <= 0.0 {
        return 0.0;
    }
    if u >= 1.0 {
        return 1.0;
    }
    let x = u * STEP_PANELS as f64;
    let i = x.floor() as usize;
    let frac = x - i as f64;
    let table = &STEP_TABLE;
    if i + 1 >= table.len() {
        return 1.0;
    }
    table[i] + frac * (table[i + 1] - table[i])
}

/// Quintic polynomial step, C^2 at the ends. Used as an alternative window
/// shape to test that norms do not depend on the cutoff profile choice.
pub(crate) fn quintic01(u: f64) -> f64 {
    if u <= 0.0 {
        return 0.0;
    }
    if u >= 1.0 {
        return 1.0;
    }
    u * u * u * (10.0 + u * (-15.0 + 6.0 * u))
}

/// Decreasing cutoff: 1 for t <= a, 0 for t >= b.
pub(crate) fn fall(t: f64, a: f64, b: f64) -> f64 {
    debug_assert!(b > a);
    1.0 - smooth01((t - a) / (b - a))
}

/// Increasing cutoff: 0 for t <= a, 1 for t >= b.
pub(crate) fn rise(t: f64, a: f64, b: f64) -> f64 {
    debug_assert!(b > a);
    smooth01((t - a) / (b - a))
}

/// Spatial bump exp(-1/(1-|t|^2)) on |t| < 1, zero outside (unnormalized).
pub(crate) fn spatial_bump(t: f64) -> f64 {
    mollifier(t)
}
