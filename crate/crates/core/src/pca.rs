//! First principal component of a small dense matrix.
//!
//! The sample covariance matrix is diagonalised with cyclic Jacobi
//! rotations, which stays accurate to machine precision for the handful of
//! attribute columns a decision matrix carries.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PcaError {
    #[error("need at least 2 rows, found {0}")]
    TooFewRows(usize),
    #[error("matrix has no columns")]
    NoColumns,
    #[error("row {row} has {found} columns, expected {expected}")]
    RaggedRows { row: usize, expected: usize, found: usize },
    #[error("covariance matrix is all zero")]
    DegenerateData,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrincipalComponent {
    /// Unit length; the largest-magnitude loading is positive.
    pub direction: Vec<f64>,
    pub eigenvalue: f64,
}

fn check_shape(rows: &[Vec<f64>]) -> Result<usize, PcaError> {
    if rows.len() < 2 {
        return Err(PcaError::TooFewRows(rows.len()));
    }
    let cols = rows[0].len();
    if cols == 0 {
        return Err(PcaError::NoColumns);
    }
    for (i, r) in rows.iter().enumerate() {
        if r.len() != cols {
            return Err(PcaError::RaggedRows { row: i, expected: cols, found: r.len() });
        }
    }
    Ok(cols)
}

pub fn column_means(rows: &[Vec<f64>]) -> Vec<f64> {
    let n = rows.len() as f64;
    let cols = rows.first().map_or(0, Vec::len);
    (0..cols).map(|j| rows.iter().map(|r| r[j]).sum::<f64>() / n).collect()
}

/// Sample covariance (divisor `n - 1`) of the columns.
pub fn covariance(rows: &[Vec<f64>]) -> Result<Vec<Vec<f64>>, PcaError> {
    let cols = check_shape(rows)?;
    let means = column_means(rows);
    let denom = (rows.len() - 1) as f64;
    let mut cov = vec![vec![0.0; cols]; cols];
    for i in 0..cols {
        for j in i..cols {
            let s: f64 = rows.iter().map(|r| (r[i] - means[i]) * (r[j] - means[j])).sum::<f64>() / denom;
            cov[i][j] = s;
            cov[j][i] = s;
        }
    }
    Ok(cov)
}

/// Eigen-decomposition of a symmetric matrix: `(eigenvalues, eigenvectors)`
/// with eigenvector `k` stored in column `k`.
pub fn symmetric_eigen(matrix: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = matrix.len();
    let mut a: Vec<Vec<f64>> = matrix.to_vec();
    let mut v: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();

    let scale: f64 = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    for _sweep in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).map(|(i, j)| a[i][j] * a[i][j]).sum::<f64>().sqrt();
        if off <= f64::EPSILON * scale || off == 0.0 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = (1.0 / (t * t + 1.0)).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                a[p][p] -= t * apq;
                a[q][q] += t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for k in (0..n).filter(|&k| k != p && k != q) {
                    let (g, h) = (a[k][p], a[k][q]);
                    a[k][p] = g - s * (h + g * tau);
                    a[k][q] = h + s * (g - h * tau);
                    a[p][k] = a[k][p];
                    a[q][k] = a[k][q];
                }
                for row in v.iter_mut() {
                    let (g, h) = (row[p], row[q]);
                    row[p] = c * g - s * h;
                    row[q] = s * g + c * h;
                }
            }
        }
    }
    ((0..n).map(|i| a[i][i]).collect(), v)
}

/// Flip `v` so its largest-magnitude entry is positive. Entries within
/// 1e-12 of the maximum count as tied and the first of them decides.
pub fn fix_sign(v: &mut [f64]) {
    let max = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if let Some(lead) = v.iter().find(|x| x.abs() >= max - 1e-12) {
        if *lead < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

/// Leading eigenvector and eigenvalue of the sample covariance of `rows`.
pub fn first_principal_component(rows: &[Vec<f64>]) -> Result<PrincipalComponent, PcaError> {
    let cov = covariance(rows)?;
    if cov.iter().flatten().all(|x| *x == 0.0) {
        return Err(PcaError::DegenerateData);
    }
    let (values, vectors) = symmetric_eigen(&cov);
    let lead = (0..values.len())
        .max_by(|&i, &j| values[i].total_cmp(&values[j]).then(j.cmp(&i)))
        .expect("at least one column");
    let mut direction: Vec<f64> = vectors.iter().map(|row| row[lead]).collect();
    let norm = direction.iter().map(|x| x * x).sum::<f64>().sqrt();
    direction.iter_mut().for_each(|x| *x /= norm);
    fix_sign(&mut direction);
    Ok(PrincipalComponent { direction, eigenvalue: values[lead].max(0.0) })
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
