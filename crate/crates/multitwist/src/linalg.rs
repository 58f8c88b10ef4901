use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Least-squares solution of `A x ≈ b` by SVD after scaling columns to unit
/// norm. Also returns the RMS residual.
pub(crate) fn lstsq(rows: &[Vec<Complex64>], rhs: &[Complex64]) -> Result<(Vec<Complex64>, f64)> {
    let m = rows.len();
    let n = rows.first().map_or(0, |r| r.len());
    if m < n || n == 0 {
        return Err(Error::InvalidInput(format!(
            "least squares needs at least as many samples ({m}) as unknowns ({n})"
        )));
    }
    let mut a = DMatrix::<Complex64>::from_fn(m, n, |i, j| rows[i][j]);
    let mut scale = vec![1.0; n];
    for j in 0..n {
        let norm = a.column(j).norm();
        if norm > 0.0 {
            scale[j] = norm;
            a.column_mut(j).scale_mut(1.0 / norm);
        }
    }
    let b = DVector::<Complex64>::from_column_slice(rhs);
    let svd = a.clone().svd(true, true);
    let x = svd
        .solve(&b, 1e-15)
        .map_err(|e| Error::InvalidInput(format!("least squares failed: {e}")))?;
    let resid = (&a * &x - &b).norm() / (m as f64).sqrt();
    let sol = x.iter().zip(&scale).map(|(v, s)| v / *s).collect();
    Ok((sol, resid))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_polynomial() {
        let xs: Vec<f64> = (0..10).map(|i| i as f64 * 0.3).collect();
        let rows: Vec<Vec<Complex64>> = xs
            .iter()
            .map(|&x| vec![Complex64::new(1.0, 0.0), Complex64::new(x, 0.0), Complex64::new(x * x, 0.0)])
            .collect();
        let rhs: Vec<Complex64> = xs.iter().map(|&x| Complex64::new(1.0 - 2.0 * x, x * x)).collect();
        let (sol, resid) = lstsq(&rows, &rhs).unwrap();
        assert!((sol[0] - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!((sol[1] - Complex64::new(-2.0, 0.0)).norm() < 1e-12);
        assert!((sol[2] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        assert!(resid < 1e-12);
    }
}
