//! Dense linear-algebra helpers. Problem dimensions are small (d <= 50), so
//! everything is stored densely.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

pub type Vector = DVector<f64>;
pub type Matrix = DMatrix<f64>;

/// Spectral norm of a symmetric matrix, `max |lambda_i|`.
pub fn sym_norm(h: &Matrix) -> f64 {
    if h.nrows() == 0 {
        return 0.0;
    }
    SymmetricEigen::new(h.clone())
        .eigenvalues
        .iter()
        .fold(0.0_f64, |acc, l| acc.max(l.abs()))
}

/// Smallest eigenvalue of a symmetric matrix.
pub fn sym_min_eigenvalue(h: &Matrix) -> f64 {
    SymmetricEigen::new(h.clone())
        .eigenvalues
        .iter()
        .fold(f64::INFINITY, |acc, &l| acc.min(l))
}

/// Ascending eigenvalues of a symmetric matrix.
pub fn sym_eigenvalues(h: &Matrix) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(h.clone()).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub(crate) fn check_dim(expected: usize, got: usize, what: &str) -> crate::Result<()> {
    if expected != got {
        return Err(crate::Error::invalid(format!(
            "{what}: expected dimension {expected}, got {got}"
        )));
    }
    Ok(())
}
