//! Small dense-vector helpers shared across the crate.

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

/// `a + s * b`
pub fn axpy(a: &[f64], s: f64, b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub fn norm2(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn norm_inf(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn is_zero(a: &[f64]) -> bool {
    a.iter().all(|&x| x == 0.0)
}

pub fn unit(n: usize, i: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[i] = 1.0;
    e
}

/// Linear combination `Σ coeffs[i] * vectors[i]`.
pub fn combine(coeffs: &[f64], vectors: &[Vec<f64>]) -> Vec<f64> {
    let n = vectors.first().map_or(0, Vec::len);
    let mut out = vec![0.0; n];
    for (c, v) in coeffs.iter().zip(vectors) {
        for (o, x) in out.iter_mut().zip(v) {
            *o += c * x;
        }
    }
    out
}

/// Determinant of a square matrix given as rows.
pub fn det(rows: &[Vec<f64>]) -> f64 {
    let n = rows.len();
    if n == 0 {
        return 1.0;
    }
    nalgebra::DMatrix::from_fn(n, n, |i, j| rows[i][j]).determinant()
}

/// Numerical rank of the matrix whose columns are `vectors`.
pub fn rank(vectors: &[Vec<f64>], tol: f64) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let n = vectors[0].len();
    let m = nalgebra::DMatrix::from_fn(n, vectors.len(), |i, j| vectors[j][i]);
    m.rank(tol)
}

/// Least-squares residual of expressing `target` in the span of `vectors`.
pub fn span_residual(vectors: &[Vec<f64>], target: &[f64]) -> f64 {
    if vectors.is_empty() {
        return norm2(target);
    }
    let n = target.len();
    let a = nalgebra::DMatrix::from_fn(n, vectors.len(), |i, j| vectors[j][i]);
    let b = nalgebra::DVector::from_column_slice(target);
    let svd = a.clone().svd(true, true);
    match svd.solve(&b, 1e-12) {
        Ok(x) => (a * x - b).norm(),
        Err(_) => f64::INFINITY,
    }
}
