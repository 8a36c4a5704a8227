//! Thin wrapper around the Brent solver of the `roots` crate for fallible
//! objective functions.

use crate::error::{CurvelastError, Result};

/// Stops on an exact zero or once the bracket is narrower than `xtol`.
struct IntervalConvergency {
    xtol: f64,
    max_iter: usize,
}

impl roots::Convergency<f64> for IntervalConvergency {
    fn is_root_found(&mut self, y: f64) -> bool {
        y == 0.0
    }

    fn is_converged(&mut self, x1: f64, x2: f64) -> bool {
        (x1 - x2).abs() <= self.xtol
    }

    fn is_iteration_limit_reached(&mut self, iter: usize) -> bool {
        iter >= self.max_iter
    }
}

/// Brent root of `f` on `[lo, hi]`, which must bracket a sign change.
/// The first error raised by `f` aborts the search and is returned.
pub(crate) fn brent<F>(what: &'static str, lo: f64, hi: f64, xtol: f64, mut f: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut err = None;
    let mut g = |x: f64| match f(x) {
        Ok(v) => v,
        Err(e) => {
            if err.is_none() {
                err = Some(e);
            }
            f64::NAN
        }
    };
    let mut conv = IntervalConvergency { xtol, max_iter: 300 };
    let root = roots::find_root_brent(lo, hi, &mut g, &mut conv);
    if let Some(e) = err {
        return Err(e);
    }
    root.map_err(|e| CurvelastError::NoConvergence {
        what,
        detail: format!("{e:?} on [{lo}, {hi}]"),
    })
}
