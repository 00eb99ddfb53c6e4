//! Dense symmetric eigensolvers.
//!
//! Two independent routes are provided:
//!
//! * [`jacobi_eigen`]: cyclic Jacobi rotations with a fixed sweep order. Full
//!   spectrum and eigenvectors; `O(n³)` per sweep, practical up to a few
//!   hundred rows.
//! * [`tridiagonal_eigen`]: Householder reduction to tridiagonal form,
//!   implicit QL for the whole spectrum, inverse iteration for the requested
//!   leading eigenvectors. Roughly `4n³/3` flops in total, used for the large
//!   Nyström systems.
//!
//! Both are deterministic for a fixed input.

use crate::error::{Error, Result};

/// Largest order for which [`EigenMethod::Auto`] picks the Jacobi route.
pub const JACOBI_MAX_ORDER: usize = 256;

/// Sweep cap for [`jacobi_eigen`].
pub const JACOBI_MAX_SWEEPS: usize = 30;

/// Jacobi stops once the off-diagonal Frobenius norm is below this fraction
/// of the full Frobenius norm.
pub const JACOBI_RELATIVE_THRESHOLD: f64 = 1e-12;

const QL_MAX_ITERATIONS: usize = 60;
const INVERSE_ITERATION_STEPS: usize = 4;
const CLUSTER_RELATIVE_GAP: f64 = 1e-3;

/// Dense square symmetric matrix in row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    /// Builds the matrix from its lower triangle; the upper triangle is
    /// mirrored so symmetry is exact.
    pub fn from_fn<F: FnMut(usize, usize) -> f64>(n: usize, mut f: F) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let v = f(i, j);
                data[i * n + j] = v;
                data[j * n + i] = v;
            }
        }
        Self { n, data }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j).to_bits() == self.get(j, i).to_bits()))
    }
}

/// Eigenvalues in descending order, with eigenvectors for the leading ones.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    /// `vectors[k]` is the unit eigenvector for `values[k]`.
    pub vectors: Vec<Vec<f64>>,
    /// Jacobi sweeps, or total QL iterations for the tridiagonal route.
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EigenMethod {
    Jacobi,
    Tridiagonal,
    /// Jacobi up to [`JACOBI_MAX_ORDER`], tridiagonal beyond.
    #[default]
    Auto,
}

/// Eigen-decomposition with eigenvectors for the `n_vectors` largest
/// eigenvalues.
pub fn symmetric_eigen(a: &SymmetricMatrix, n_vectors: usize, method: EigenMethod) -> Result<SymmetricEigen> {
    if n_vectors > a.order() {
        return Err(Error::InvalidArgument(format!(
            "requested {n_vectors} eigenvectors of a {0}x{0} matrix",
            a.order()
        )));
    }
    let use_jacobi = match method {
        EigenMethod::Jacobi => true,
        EigenMethod::Tridiagonal => false,
        EigenMethod::Auto => a.order() <= JACOBI_MAX_ORDER,
    };
    if use_jacobi {
        let mut eig = jacobi_eigen(a)?;
        eig.vectors.truncate(n_vectors);
        Ok(eig)
    } else {
        tridiagonal_eigen(a, n_vectors)
    }
}

/// Cyclic Jacobi: row-by-row sweeps over `p < q`, stopping when the
/// off-diagonal norm drops below [`JACOBI_RELATIVE_THRESHOLD`] times the
/// matrix norm. Fails with [`Error::NotConverged`] after
/// [`JACOBI_MAX_SWEEPS`] sweeps.
pub fn jacobi_eigen(a: &SymmetricMatrix) -> Result<SymmetricEigen> {
    let n = a.n;
    let mut m = a.data.clone();
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let threshold = JACOBI_RELATIVE_THRESHOLD * a.frobenius_norm();
    let off_norm = |m: &[f64]| {
        let mut s = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                s += m[p * n + q] * m[p * n + q];
            }
        }
        (2.0 * s).sqrt()
    };

    let mut sweeps = 0;
    loop {
        let off = off_norm(&m);
        if off <= threshold {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NotConverged { sweeps, off_norm: off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta.is_infinite() { 0.0 } else { t };
                if t == 0.0 {
                    // apq is negligible next to the diagonal gap
                    m[p * n + q] = 0.0;
                    m[q * n + p] = 0.0;
                    continue;
                }
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = m[k * n + p];
                    let akq = m[k * n + q];
                    let new_p = c * akp - s * akq;
                    let new_q = s * akp + c * akq;
                    m[k * n + p] = new_p;
                    m[p * n + k] = new_p;
                    m[k * n + q] = new_q;
                    m[q * n + k] = new_q;
                }
                m[p * n + p] = app - t * apq;
                m[q * n + q] = aqq + t * apq;
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[j * n + j].total_cmp(&m[i * n + i]).then(i.cmp(&j)));
    let values = order.iter().map(|&i| m[i * n + i]).collect();
    let vectors = order
        .iter()
        .map(|&col| (0..n).map(|row| v[row * n + col]).collect())
        .collect();
    Ok(SymmetricEigen {
        values,
        vectors,
        iterations: sweeps,
    })
}

/// Householder reflector `I − β v vᵀ` acting on indices `offset..n`.
struct Reflector {
    offset: usize,
    beta: f64,
    v: Vec<f64>,
}

impl Reflector {
    fn apply(&self, x: &mut [f64]) {
        if self.beta == 0.0 {
            return;
        }
        let tail = &mut x[self.offset..];
        let dot: f64 = tail.iter().zip(&self.v).map(|(a, b)| a * b).sum();
        let scale = self.beta * dot;
        for (xi, vi) in tail.iter_mut().zip(&self.v) {
            *xi -= scale * vi;
        }
    }
}

/// Reduces `a` to tridiagonal `(diag, off)` with `off[i]` coupling rows `i`
/// and `i+1`. Only the upper triangle of the working copy is touched.
fn householder_tridiagonalize(a: &SymmetricMatrix) -> (Vec<f64>, Vec<f64>, Vec<Reflector>) {
    let n = a.n;
    let mut m = a.data.clone();
    let mut off = vec![0.0; n];
    let mut reflectors = Vec::with_capacity(n.saturating_sub(2));
    let mut p = vec![0.0; n];

    for k in 0..n.saturating_sub(2) {
        let start = k + 1;
        let len = n - start;
        let x = &m[k * n + start..k * n + n];
        let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let x0 = x[0];
        if norm == 0.0 {
            off[k] = 0.0;
            reflectors.push(Reflector {
                offset: start,
                beta: 0.0,
                v: Vec::new(),
            });
            continue;
        }
        let alpha = if x0 >= 0.0 { -norm } else { norm };
        let mut v = x.to_vec();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|t| t * t).sum();
        let beta = 2.0 / vnorm2;
        off[k] = alpha;

        // p = β B v using only the upper triangle of the trailing block B.
        let p = &mut p[..len];
        p.iter_mut().for_each(|t| *t = 0.0);
        for i in 0..len {
            let row = &m[(start + i) * n + start + i..(start + i) * n + n];
            let vi = v[i];
            let mut acc = row[0] * vi;
            for (jj, &bij) in row.iter().enumerate().skip(1) {
                let j = i + jj;
                acc += bij * v[j];
                p[j] += bij * vi;
            }
            p[i] += acc;
        }
        p.iter_mut().for_each(|t| *t *= beta);
        let kdot: f64 = 0.5 * beta * p.iter().zip(&v).map(|(a, b)| a * b).sum::<f64>();
        // w = p − K v, then B ← B − v wᵀ − w vᵀ on the upper triangle.
        for (pi, vi) in p.iter_mut().zip(&v) {
            *pi -= kdot * vi;
        }
        for i in 0..len {
            let (vi, wi) = (v[i], p[i]);
            let row = &mut m[(start + i) * n + start + i..(start + i) * n + n];
            for (jj, bij) in row.iter_mut().enumerate() {
                let j = i + jj;
                *bij -= vi * p[j] + wi * v[j];
            }
        }
        reflectors.push(Reflector { offset: start, beta, v });
    }
    if n >= 2 {
        off[n - 2] = m[(n - 2) * n + n - 1];
    }
    let diag = (0..n).map(|i| m[i * n + i]).collect();
    (diag, off, reflectors)
}

/// Implicit QL with Wilkinson-style shifts on a symmetric tridiagonal
/// matrix; eigenvalues only. Returns the unsorted eigenvalues and the
/// number of QL iterations.
fn tridiagonal_ql(diag: &[f64], off: &[f64]) -> Result<(Vec<f64>, usize)> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    if n > 0 {
        e[n - 1] = 0.0;
    }
    let mut total = 0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() + dd == dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            total += 1;
            if iter > QL_MAX_ITERATIONS {
                return Err(Error::NotConverged {
                    sweeps: iter,
                    off_norm: e[l].abs(),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                let r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                let r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok((d, total))
}

/// Pivoted LU of a tridiagonal matrix `T − shift·I`, as in LAPACK `dgttrf`.
struct TridiagonalLu {
    lower: Vec<f64>,
    diag: Vec<f64>,
    upper: Vec<f64>,
    upper2: Vec<f64>,
    swapped: Vec<bool>,
}

impl TridiagonalLu {
    fn new(diag: &[f64], off: &[f64], shift: f64, tiny: f64) -> Self {
        let n = diag.len();
        let mut d: Vec<f64> = diag.iter().map(|x| x - shift).collect();
        let mut dl: Vec<f64> = off[..n.saturating_sub(1)].to_vec();
        let mut du = dl.clone();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] != 0.0 {
                    let fact = dl[i] / d[i];
                    dl[i] = fact;
                    d[i + 1] -= fact * du[i];
                }
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
                swapped[i] = true;
            }
        }
        for x in d.iter_mut() {
            if x.abs() < tiny {
                *x = if *x < 0.0 { -tiny } else { tiny };
            }
        }
        Self {
            lower: dl,
            diag: d,
            upper: du,
            upper2: du2,
            swapped,
        }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = self.diag.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - self.lower[i] * b[i];
            } else {
                b[i + 1] -= self.lower[i] * b[i];
            }
        }
        b[n - 1] /= self.diag[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.upper[n - 2] * b[n - 1]) / self.diag[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.upper[i] * b[i + 1] - self.upper2[i] * b[i + 2]) / self.diag[i];
        }
    }
}

fn normalize(x: &mut [f64]) -> f64 {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
    norm
}

/// Householder tridiagonalization, implicit QL and inverse iteration.
/// All eigenvalues are returned; eigenvectors only for the `n_vectors`
/// largest.
pub fn tridiagonal_eigen(a: &SymmetricMatrix, n_vectors: usize) -> Result<SymmetricEigen> {
    let n = a.n;
    if n == 0 {
        return Ok(SymmetricEigen {
            values: Vec::new(),
            vectors: Vec::new(),
            iterations: 0,
        });
    }
    let (diag, off, reflectors) = householder_tridiagonalize(a);
    let (mut values, iterations) = tridiagonal_ql(&diag, &off)?;
    values.sort_by(|x, y| y.total_cmp(x));

    let t_norm = diag
        .iter()
        .zip(&off)
        .map(|(d, e)| d.abs() + 2.0 * e.abs())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let tiny = f64::EPSILON * t_norm;

    let mut tri_vectors: Vec<Vec<f64>> = Vec::with_capacity(n_vectors);
    for k in 0..n_vectors.min(n) {
        let mu = values[k];
        let lu = TridiagonalLu::new(&diag, &off, mu, tiny);
        let cluster: Vec<usize> = (0..k)
            .filter(|&i| (values[i] - mu).abs() <= CLUSTER_RELATIVE_GAP * t_norm)
            .collect();
        // Deterministic, non-degenerate start vector.
        let mut x: Vec<f64> = (0..n).map(|i| 1.0 + 0.5 * ((i as f64) * 0.754_877_666).sin()).collect();
        normalize(&mut x);
        for _ in 0..INVERSE_ITERATION_STEPS {
            lu.solve(&mut x);
            for &i in &cluster {
                let prev = &tri_vectors[i];
                let dot: f64 = x.iter().zip(prev).map(|(a, b)| a * b).sum();
                x.iter_mut().zip(prev).for_each(|(a, b)| *a -= dot * b);
            }
            normalize(&mut x);
        }
        tri_vectors.push(x);
    }

    let vectors = tri_vectors
        .into_iter()
        .map(|mut x| {
            for r in reflectors.iter().rev() {
                r.apply(&mut x);
            }
            x
        })
        .collect();
    Ok(SymmetricEigen {
        values,
        vectors,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(a: &SymmetricMatrix, value: f64, v: &[f64]) -> f64 {
        (0..a.order())
            .map(|i| {
                let av: f64 = a.row(i).iter().zip(v).map(|(x, y)| x * y).sum();
                (av - value * v[i]).abs()
            })
            .fold(0.0, f64::max)
    }

    fn test_matrix(n: usize) -> SymmetricMatrix {
        // Non-trivial dense matrix with a known trace.
        SymmetricMatrix::from_fn(n, |i, j| {
            let (i, j) = (i as f64, j as f64);
            1.0 / (1.0 + (i - j).abs()) + if i == j { i * 0.1 } else { 0.0 }
        })
    }

    #[test]
    fn jacobi_on_two_by_two() {
        let a = SymmetricMatrix::from_fn(2, |i, j| if i == j { 2.0 } else { 1.0 });
        let eig = jacobi_eigen(&a).unwrap();
        assert!((eig.values[0] - 3.0).abs() < 1e-15);
        assert!((eig.values[1] - 1.0).abs() < 1e-15);
        assert!(residual(&a, eig.values[0], &eig.vectors[0]) < 1e-15);
    }

    #[test]
    fn jacobi_handles_diagonal_and_zero_matrices() {
        let a = SymmetricMatrix::from_fn(3, |i, j| if i == j { i as f64 } else { 0.0 });
        let eig = jacobi_eigen(&a).unwrap();
        assert_eq!(eig.values, vec![2.0, 1.0, 0.0]);
        assert_eq!(eig.iterations, 0);
        let z = SymmetricMatrix::from_fn(4, |_, _| 0.0);
        assert_eq!(jacobi_eigen(&z).unwrap().values, vec![0.0; 4]);
    }

    #[test]
    fn both_routes_agree() {
        for n in [1usize, 2, 3, 10, 57] {
            let a = test_matrix(n);
            let j = jacobi_eigen(&a).unwrap();
            let t = tridiagonal_eigen(&a, n).unwrap();
            for (x, y) in j.values.iter().zip(&t.values) {
                assert!((x - y).abs() < 1e-12, "n={n}: {x} vs {y}");
            }
            let sum: f64 = t.values.iter().sum();
            assert!((sum - a.trace()).abs() < 1e-11);
            for k in 0..n {
                assert!(residual(&a, t.values[k], &t.vectors[k]) < 1e-11, "n={n} k={k}");
                assert!(residual(&a, j.values[k], &j.vectors[k]) < 1e-11, "n={n} k={k}");
                for l in 0..n {
                    let dot: f64 = t.vectors[k].iter().zip(&t.vectors[l]).map(|(a, b)| a * b).sum();
                    let expect = if k == l { 1.0 } else { 0.0 };
                    assert!((dot - expect).abs() < 1e-10, "n={n} k={k} l={l}: {dot}");
                }
            }
        }
    }

    #[test]
    fn tridiagonal_handles_repeated_eigenvalues() {
        // identity plus a rank-one update: eigenvalue 1 with multiplicity n-1
        let n = 12;
        let a = SymmetricMatrix::from_fn(n, |i, j| if i == j { 2.0 } else { 1.0 });
        let t = tridiagonal_eigen(&a, n).unwrap();
        assert!((t.values[0] - (n as f64 + 1.0)).abs() < 1e-12);
        for v in &t.values[1..] {
            assert!((v - 1.0).abs() < 1e-12);
        }
        for k in 0..n {
            assert!(residual(&a, t.values[k], &t.vectors[k]) < 1e-12);
            for l in 0..k {
                let dot: f64 = t.vectors[k].iter().zip(&t.vectors[l]).map(|(a, b)| a * b).sum();
                assert!(dot.abs() < 1e-10);
            }
        }
    }

    #[test]
    fn auto_dispatch_and_vector_count() {
        let a = test_matrix(8);
        let eig = symmetric_eigen(&a, 3, EigenMethod::Auto).unwrap();
        assert_eq!(eig.values.len(), 8);
        assert_eq!(eig.vectors.len(), 3);
        assert!(symmetric_eigen(&a, 9, EigenMethod::Auto).is_err());
    }

    #[test]
    fn from_fn_mirrors_exactly() {
        let a = SymmetricMatrix::from_fn(5, |i, j| (i * 7 + j) as f64 * 0.1);
        assert!(a.is_symmetric());
    }
}
