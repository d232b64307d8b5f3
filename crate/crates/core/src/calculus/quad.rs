//! Quadrature and root bracketing used by the smooth functional paths.

use std::sync::OnceLock;

/// Nodes and weights of the 32-point Gauss-Legendre rule on [-1, 1],
/// computed once via Newton iteration on the Legendre recurrence.
fn gauss_legendre_32() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = 32usize;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Chebyshev initial guess for the i-th positive root.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // Legendre P_n(x) and P_n'(x) by three-term recurrence.
                let mut p0 = 1.0;
                let mut p1 = x;
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        (nodes, weights)
    })
}

/// Composite 32-point Gauss-Legendre integral of `f` over `[a, b]`.
///
/// `panels` subdivisions; for analytic integrands even a single panel is
/// accurate to ~1e-15 relative, the panels guard long intervals.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    if a == b {
        return 0.0;
    }
    let (nodes, weights) = gauss_legendre_32();
    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let mid = lo + 0.5 * h;
        let half = 0.5 * h;
        let mut acc = 0.0;
        for (x, w) in nodes.iter().zip(weights) {
            acc += w * f(mid + half * x);
        }
        total += acc * half;
    }
    total
}

/// Bisect a bracketed sign change of `f` on `[a, b]` down to floating-point
/// resolution. Requires `f(a)` and `f(b)` to have opposite signs (a zero
/// endpoint is returned as-is).
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return a;
    }
    if fb == 0.0 {
        return b;
    }
    debug_assert!(fa * fb < 0.0, "bisect needs a sign change");
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (fa > 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// Bisect to a requested interval width rather than machine resolution.
pub fn bisect_to<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut fa = f(a);
    if fa == 0.0 {
        return a;
    }
    if f(b) == 0.0 {
        return b;
    }
    while b - a > tol {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (fa > 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// All sign-change roots of `f` on `[a, b]`, located by scanning `cells`
/// uniform cells and bisecting each bracket. Tangencies without a sign
/// change are invisible by design: the callers only need crossings that
/// separate regions of opposite sign.
pub fn sign_change_roots<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, cells: usize) -> Vec<f64> {
    let mut roots = Vec::new();
    let cells = cells.max(1);
    let h = (b - a) / cells as f64;
    let mut x0 = a;
    let mut f0 = f(x0);
    for k in 1..=cells {
        let x1 = if k == cells { b } else { a + k as f64 * h };
        let f1 = f(x1);
        if f0 == 0.0 {
            if roots.last().is_none_or(|r: &f64| (r - x0).abs() > h * 0.5) {
                roots.push(x0);
            }
        } else if f0 * f1 < 0.0 {
            roots.push(bisect(&f, x0, x1));
        }
        x0 = x1;
        f0 = f1;
    }
    if f0 == 0.0 && roots.last().is_none_or(|r| (r - b).abs() > h * 0.5) {
        roots.push(b);
    }
    roots
}
