//! Small one-dimensional numerical routines shared by the envelope methods.

/// `n` evenly spaced values over `[a, b]`, both ends included. `n == 1`
/// yields the midpoint.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.5 * (a + b)],
        _ => {
            let step = (b - a) / (n - 1) as f64;
            (0..n)
                .map(|i| if i == n - 1 { b } else { a + step * i as f64 })
                .collect()
        }
    }
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
pub(crate) fn golden_max<F>(mut f: F, mut a: f64, mut b: f64, iterations: usize) -> (f64, f64)
where
    F: FnMut(f64) -> f64,
{
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..iterations {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Bisection down to adjacent floats. `f(lo)` and `f(hi)` must not share a
/// strict sign.
pub(crate) fn bisect<F>(mut f: F, mut lo: f64, mut hi: f64) -> f64
where
    F: FnMut(f64) -> f64,
{
    let mut f_lo = f(lo);
    if f_lo == 0.0 {
        return lo;
    }
    for _ in 0..2100 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Root of `f` on a sign-changing bracket: a few bisection steps shrink the
/// bracket, then safeguarded Newton (central-difference slope) finishes.
/// Newton steps that leave the bracket fall back to bisection.
///
/// Returns the number of Newton iterations spent on failure.
pub(crate) fn bisect_newton<F>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    max_iter: usize,
) -> Result<f64, usize>
where
    F: FnMut(f64) -> f64,
{
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    debug_assert!((f_lo < 0.0) != (f_hi < 0.0));

    let width = hi - lo;
    while hi - lo > 1e-3 * width {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }

    let h = 1e-3 * (hi - lo);
    let mut x = 0.5 * (lo + hi);
    for _ in 0..max_iter {
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if (fx < 0.0) == (f_lo < 0.0) {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
        }
        let slope = (f(x + h) - f(x - h)) / (2.0 * h);
        let mut next = x - fx / slope;
        if !next.is_finite() || next <= lo || next >= hi {
            next = 0.5 * (lo + hi);
        }
        let converged = (next - x).abs() <= tol * x.abs().max(1.0) || hi - lo <= tol;
        x = next;
        if converged {
            return Ok(x);
        }
    }
    Err(max_iter)
}

/// Least-squares polynomial fit in a scaled abscissa.
#[derive(Debug, Clone)]
pub(crate) struct PolyFit {
    coeffs: Vec<f64>,
    scale: f64,
    pub max_residual: f64,
}

impl PolyFit {
    /// Fits a polynomial of `degree` to `(u, v)` pairs. Needs more than
    /// `degree` points with distinct, not-all-zero abscissae.
    pub fn fit(u: &[f64], v: &[f64], degree: usize) -> Option<PolyFit> {
        let m = degree + 1;
        if u.len() != v.len() || u.len() < m {
            return None;
        }
        let scale = u.iter().fold(0.0_f64, |s, x| s.max(x.abs()));
        if scale == 0.0 {
            return None;
        }

        // normal equations in t = u / scale, solved by Gaussian elimination
        let mut a = vec![vec![0.0; m + 1]; m];
        for (&ui, &vi) in u.iter().zip(v) {
            let t = ui / scale;
            let powers: Vec<f64> = (0..m).map(|k| t.powi(k as i32)).collect();
            for r in 0..m {
                for c in 0..m {
                    a[r][c] += powers[r] * powers[c];
                }
                a[r][m] += powers[r] * vi;
            }
        }
        for col in 0..m {
            let pivot = (col..m).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
            if a[pivot][col] == 0.0 {
                return None;
            }
            a.swap(col, pivot);
            for r in col + 1..m {
                let factor = a[r][col] / a[col][col];
                for c in col..=m {
                    a[r][c] -= factor * a[col][c];
                }
            }
        }
        let mut coeffs = vec![0.0; m];
        for r in (0..m).rev() {
            let tail: f64 = (r + 1..m).map(|c| a[r][c] * coeffs[c]).sum();
            coeffs[r] = (a[r][m] - tail) / a[r][r];
        }

        let mut fit = PolyFit {
            coeffs,
            scale,
            max_residual: 0.0,
        };
        fit.max_residual = u
            .iter()
            .zip(v)
            .map(|(&ui, &vi)| (fit.eval(ui) - vi).abs())
            .fold(0.0, f64::max);
        Some(fit)
    }

    pub fn eval(&self, u: f64) -> f64 {
        let t = u / self.scale;
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    pub fn intercept(&self) -> f64 {
        self.coeffs[0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_hits_both_ends() {
        let v = linspace(-1.0, 1.0, 5);
        assert_eq!(v, vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert_eq!(linspace(0.0, 2.0, 1), vec![1.0]);
        assert!(linspace(0.0, 1.0, 0).is_empty());
    }

    #[test]
    fn golden_finds_parabola_peak() {
        let (x, fx) = golden_max(|x| -(x - 0.3) * (x - 0.3) + 2.0, -1.0, 1.0, 80);
        assert!((x - 0.3).abs() < 1e-7);
        assert!((fx - 2.0).abs() < 1e-14);
    }

    #[test]
    fn bisect_reaches_adjacent_floats() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0);
        assert!((r - 2f64.sqrt()).abs() <= 4.0 * f64::EPSILON);
        // reversed bracket orientation
        let r = bisect(|x| 2.0 - x * x, 2.0, 0.0);
        assert!((r - 2f64.sqrt()).abs() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn bisect_newton_linear_and_cubic() {
        let r = bisect_newton(|x| -2.0 * x + 1.0, -3.0, 3.0, 1e-14, 50).unwrap();
        assert!((r - 0.5).abs() < 1e-14);
        let r = bisect_newton(|x| x * x * x - x - 2.0, 1.0, 2.0, 1e-14, 50).unwrap();
        assert!((r * r * r - r - 2.0).abs() < 1e-12);
    }

    #[test]
    fn bisect_newton_reports_budget_exhaustion() {
        // tolerance zero can never be met on a nonzero-slope root
        let err = bisect_newton(|x| (x - 0.1).powi(3), -1.0, 1.0, 0.0, 3).unwrap_err();
        assert_eq!(err, 3);
    }

    #[test]
    fn quadratic_fit_is_exact_on_quadratic_data() {
        let u: Vec<f64> = (0..7).map(|k| 0.1 / 2f64.powi(k)).collect();
        let v: Vec<f64> = u.iter().map(|d| 0.5 - 1.4 * d - d * d).collect();
        let fit = PolyFit::fit(&u, &v, 2).unwrap();
        assert!((fit.intercept() - 0.5).abs() < 1e-14);
        assert!(fit.max_residual < 1e-14);
        let lin = PolyFit::fit(&u, &v, 1).unwrap();
        assert!(lin.max_residual > 1e-4);
    }

    #[test]
    fn fit_rejects_underdetermined_input() {
        assert!(PolyFit::fit(&[1.0, 2.0], &[1.0, 2.0], 2).is_none());
        assert!(PolyFit::fit(&[0.0, 0.0, 0.0], &[1.0, 2.0, 3.0], 1).is_none());
    }
}
