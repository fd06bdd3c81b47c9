//! Euclidean kernel shared by both solvers.
//!
//! Everything here works on plain coordinate slices so the solvers can keep a
//! realization as one flat buffer. Dimensions are capped at [`MAX_DIM`]; all
//! scratch space lives on the stack.

use std::ops::Deref;

use thiserror::Error;

/// Largest embedding dimension supported by the kernel.
pub const MAX_DIM: usize = 8;

/// Minimum scaled Cayley–Menger value for a set of points to count as
/// affinely independent. See [`scaled_cayley_menger`].
pub const DEGENERACY_THRESHOLD: f64 = 1e-10;

/// Two lateration roots closer than this are collapsed into one.
pub const TANGENCY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("expected {expected} points, got {found}")]
    PointCount { expected: usize, found: usize },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    Dimension { expected: usize, found: usize },
    #[error("dimension {0} is outside the supported range 1..={MAX_DIM}")]
    UnsupportedDimension(usize),
    #[error("points are affinely degenerate (scaled Cayley-Menger value {scaled:e})")]
    Degenerate { scaled: f64 },
    #[error("spheres have no common point (residual {residual:e})")]
    Infeasible { residual: f64 },
    #[error("radius must be positive and finite, got {0}")]
    Radius(f64),
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("reflector normal must be non-zero")]
    ZeroNormal,
}

pub type Result<T> = std::result::Result<T, GeometryError>;

/// A position in K-dimensional space.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Self {
        Point(coords)
    }

    /// Like [`Point::new`] but rejects NaN and infinite coordinates.
    pub fn try_new(coords: Vec<f64>) -> Result<Self> {
        if coords.iter().all(|c| c.is_finite()) {
            Ok(Point(coords))
        } else {
            Err(GeometryError::NonFinite)
        }
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![0.0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn distance(&self, other: &Point) -> f64 {
        distance(&self.0, &other.0)
    }
}

impl Deref for Point {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl AsRef<[f64]> for Point {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for Point {
    fn from(v: Vec<f64>) -> Self {
        Point(v)
    }
}

impl<const N: usize> From<[f64; N]> for Point {
    fn from(v: [f64; N]) -> Self {
        Point(v.to_vec())
    }
}

/// An assignment of positions to vertices `1..=n`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    dim: usize,
    coords: Vec<f64>,
}

impl Realization {
    /// `n` points at the origin.
    pub fn zeros(dim: usize, n: usize) -> Self {
        Realization {
            dim,
            coords: vec![0.0; dim * n],
        }
    }

    pub fn with_capacity(dim: usize, n: usize) -> Self {
        Realization {
            dim,
            coords: Vec::with_capacity(dim * n),
        }
    }

    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 || !coords.len().is_multiple_of(dim) {
            return Err(GeometryError::Dimension {
                expected: dim,
                found: coords.len(),
            });
        }
        Ok(Realization { dim, coords })
    }

    pub fn from_points<P: AsRef<[f64]>>(dim: usize, points: &[P]) -> Result<Self> {
        let mut coords = Vec::with_capacity(dim * points.len());
        for p in points {
            let p = p.as_ref();
            if p.len() != dim {
                return Err(GeometryError::Dimension {
                    expected: dim,
                    found: p.len(),
                });
            }
            coords.extend_from_slice(p);
        }
        Ok(Realization { dim, coords })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of placed vertices.
    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Position of vertex `v` (1-based).
    pub fn point(&self, v: usize) -> &[f64] {
        &self.coords[(v - 1) * self.dim..v * self.dim]
    }

    pub fn point_mut(&mut self, v: usize) -> &mut [f64] {
        &mut self.coords[(v - 1) * self.dim..v * self.dim]
    }

    pub fn get(&self, v: usize) -> Option<&[f64]> {
        if v == 0 || v > self.len() {
            None
        } else {
            Some(self.point(v))
        }
    }

    pub fn push(&mut self, p: &[f64]) {
        debug_assert_eq!(p.len(), self.dim);
        self.coords.extend_from_slice(p);
    }

    pub fn truncate(&mut self, n: usize) {
        self.coords.truncate(n * self.dim);
    }

    /// Contiguous coordinates of vertices `first..=last`.
    pub fn span(&self, first: usize, last: usize) -> &[f64] {
        &self.coords[(first - 1) * self.dim..last * self.dim]
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.coords
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.dim)
    }

    pub fn to_points(&self) -> Vec<Point> {
        self.points().map(|p| Point(p.to_vec())).collect()
    }

    pub fn distance(&self, u: usize, v: usize) -> f64 {
        distance(self.point(u), self.point(v))
    }

    /// Largest coordinate-wise Euclidean gap between matching vertices.
    pub fn max_deviation(&self, other: &Realization) -> f64 {
        assert_eq!(self.dim, other.dim);
        assert_eq!(self.len(), other.len());
        self.points()
            .zip(other.points())
            .map(|(a, b)| distance(a, b))
            .fold(0.0, f64::max)
    }
}

#[inline]
pub fn distance_sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

#[inline]
pub fn distance(a: &[f64], b: &[f64]) -> f64 {
    distance_sq(a, b).sqrt()
}

/// `|actual - target| / max(1, target)`, the feasibility measure used by
/// both solvers.
#[inline]
pub fn relative_residual(actual: f64, target: f64) -> f64 {
    (actual - target).abs() / target.max(1.0)
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        Err(GeometryError::UnsupportedDimension(dim))
    } else {
        Ok(())
    }
}

/// Determinant of a row-major `n x n` matrix by Gaussian elimination with
/// partial pivoting. The matrix is overwritten.
pub(crate) fn determinant(m: &mut [f64], n: usize) -> f64 {
    let mut det = 1.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a * n + col].abs().total_cmp(&m[b * n + col].abs()))
            .unwrap();
        if m[pivot * n + col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for c in 0..n {
                m.swap(pivot * n + c, col * n + c);
            }
            det = -det;
        }
        let p = m[col * n + col];
        det *= p;
        for r in col + 1..n {
            let f = m[r * n + col] / p;
            if f != 0.0 {
                for c in col..n {
                    m[r * n + c] -= f * m[col * n + c];
                }
            }
        }
    }
    det
}

/// Cayley–Menger determinant of `points.len()` points given their squared
/// pairwise distances `sq(a, b)`.
fn cayley_menger_with(count: usize, sq: impl Fn(usize, usize) -> f64) -> f64 {
    let n = count + 1;
    let mut m = [0.0; (MAX_DIM + 2) * (MAX_DIM + 2)];
    for a in 0..n {
        for b in 0..n {
            m[a * n + b] = match (a, b) {
                (0, 0) => 0.0,
                (0, _) | (_, 0) => 1.0,
                _ if a == b => 0.0,
                _ => sq(a - 1, b - 1),
            };
        }
    }
    determinant(&mut m[..n * n], n)
}

fn validate_simplex<P: AsRef<[f64]>>(points: &[P]) -> Result<usize> {
    let k = points.len();
    check_dim(k)?;
    for p in points {
        let d = p.as_ref().len();
        if d != k {
            return Err(GeometryError::Dimension {
                expected: k,
                found: d,
            });
        }
    }
    Ok(k)
}

/// Cayley–Menger determinant of K points in K-dimensional space.
pub fn cayley_menger<P: AsRef<[f64]>>(points: &[P]) -> Result<f64> {
    let k = validate_simplex(points)?;
    Ok(cayley_menger_with(k, |a, b| {
        distance_sq(points[a].as_ref(), points[b].as_ref())
    }))
}

/// `|CM|` divided by the geometric mean of the squared edge lengths raised to
/// the power `count - 1`. The ratio is invariant under uniform scaling.
pub(crate) fn scaled_cm_flat(dim: usize, count: usize, flat: &[f64]) -> f64 {
    let pt = |a: usize| &flat[a * dim..(a + 1) * dim];
    let cm = cayley_menger_with(count, |a, b| distance_sq(pt(a), pt(b)));
    let pairs = count * (count - 1) / 2;
    if pairs == 0 {
        return cm.abs();
    }
    let mut log_sum = 0.0;
    for a in 0..count {
        for b in a + 1..count {
            let d2 = distance_sq(pt(a), pt(b));
            if d2 == 0.0 {
                return 0.0;
            }
            log_sum += d2.ln();
        }
    }
    let mean_sq = (log_sum / pairs as f64).exp();
    cm.abs() / mean_sq.powi(count as i32 - 1)
}

/// Scale-free degeneracy measure of K points in K dimensions; zero exactly
/// when the points fail to span a (K-1)-dimensional affine subspace.
pub fn scaled_cayley_menger<P: AsRef<[f64]>>(points: &[P]) -> Result<f64> {
    let k = validate_simplex(points)?;
    let mut flat = [0.0; MAX_DIM * MAX_DIM];
    for (a, p) in points.iter().enumerate() {
        flat[a * k..(a + 1) * k].copy_from_slice(p.as_ref());
    }
    Ok(scaled_cm_flat(k, k, &flat[..k * k]))
}

pub(crate) fn check_nondegenerate_flat(dim: usize, flat: &[f64]) -> Result<()> {
    let scaled = scaled_cm_flat(dim, dim, flat);
    if scaled > DEGENERACY_THRESHOLD {
        Ok(())
    } else {
        Err(GeometryError::Degenerate { scaled })
    }
}

/// Orthonormal basis of the directions spanned by `points[1..] - points[0]`
/// plus a unit normal completing it, all over `dim` coordinates. `r` receives
/// the triangular factor of the difference rows.
struct SimplexFrame {
    q: [[f64; MAX_DIM]; MAX_DIM],
    r: [[f64; MAX_DIM]; MAX_DIM],
    normal: [f64; MAX_DIM],
}

fn simplex_frame(dim: usize, flat: &[f64]) -> Result<SimplexFrame> {
    let mut frame = SimplexFrame {
        q: [[0.0; MAX_DIM]; MAX_DIM],
        r: [[0.0; MAX_DIM]; MAX_DIM],
        normal: [0.0; MAX_DIM],
    };
    let base = &flat[..dim];
    for m in 0..dim - 1 {
        let row = &flat[(m + 1) * dim..(m + 2) * dim];
        let mut v = [0.0; MAX_DIM];
        for c in 0..dim {
            v[c] = row[c] - base[c];
        }
        let scale = dot(&v[..dim], &v[..dim]).sqrt();
        // Two passes of modified Gram-Schmidt.
        for _ in 0..2 {
            for p in 0..m {
                let proj = dot(&v[..dim], &frame.q[p][..dim]);
                frame.r[m][p] += proj;
                for c in 0..dim {
                    v[c] -= proj * frame.q[p][c];
                }
            }
        }
        let norm = dot(&v[..dim], &v[..dim]).sqrt();
        if !(norm > 1e-12 * scale.max(f64::MIN_POSITIVE)) {
            return Err(GeometryError::Degenerate { scaled: 0.0 });
        }
        frame.r[m][m] = norm;
        for c in 0..dim {
            frame.q[m][c] = v[c] / norm;
        }
    }
    let mut best = [0.0; MAX_DIM];
    let mut best_norm = -1.0;
    for axis in 0..dim {
        let mut v = [0.0; MAX_DIM];
        v[axis] = 1.0;
        for _ in 0..2 {
            for p in 0..dim - 1 {
                let proj = dot(&v[..dim], &frame.q[p][..dim]);
                for c in 0..dim {
                    v[c] -= proj * frame.q[p][c];
                }
            }
        }
        let norm = dot(&v[..dim], &v[..dim]).sqrt();
        if norm > best_norm {
            best_norm = norm;
            best = v;
        }
    }
    for c in 0..dim {
        frame.normal[c] = best[c] / best_norm;
    }
    Ok(frame)
}

/// Result of intersecting K spheres in K dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct Lateration {
    pub plus: Point,
    pub minus: Point,
    /// The two roots coincided and were collapsed.
    pub tangent: bool,
}

/// Intersect K spheres with centers `centers` and radii `radii`.
///
/// `minus` is the root whose signed volume
/// `det[c2 - c1, ..., cK - c1, x - c1]` is non-positive; `plus` is its mirror
/// image through the hyperplane of the centers.
pub fn k_laterate<P: AsRef<[f64]>>(
    centers: &[P],
    radii: &[f64],
    tolerance: f64,
) -> Result<Lateration> {
    let k = validate_simplex(centers)?;
    if radii.len() != k {
        return Err(GeometryError::PointCount {
            expected: k,
            found: radii.len(),
        });
    }
    let mut flat = [0.0; MAX_DIM * MAX_DIM];
    for (a, p) in centers.iter().enumerate() {
        flat[a * k..(a + 1) * k].copy_from_slice(p.as_ref());
    }
    let mut plus = vec![0.0; k];
    let mut minus = vec![0.0; k];
    let tangent = laterate_flat(k, &flat[..k * k], radii, tolerance, &mut plus, &mut minus)?;
    Ok(Lateration {
        plus: Point(plus),
        minus: Point(minus),
        tangent,
    })
}

/// Allocation-free lateration over `dim` consecutive points stored in
/// `centers`. Returns whether the roots were collapsed.
pub(crate) fn laterate_flat(
    dim: usize,
    centers: &[f64],
    radii: &[f64],
    tolerance: f64,
    plus: &mut [f64],
    minus: &mut [f64],
) -> Result<bool> {
    for &r in radii {
        if !(r > 0.0 && r.is_finite()) {
            return Err(GeometryError::Radius(r));
        }
    }
    check_nondegenerate_flat(dim, centers)?;
    let frame = simplex_frame(dim, centers)?;
    let c1 = &centers[..dim];
    let r1 = radii[0];

    // Minimum-norm solution of the linearised difference equations,
    // expressed in the orthonormal frame.
    let mut alpha = [0.0; MAX_DIM];
    for m in 0..dim - 1 {
        let cm = &centers[(m + 1) * dim..(m + 2) * dim];
        let a_sq = distance_sq(cm, c1);
        let mut b = 0.5 * (r1 * r1 - radii[m + 1] * radii[m + 1] + a_sq);
        for p in 0..m {
            b -= frame.r[m][p] * alpha[p];
        }
        alpha[m] = b / frame.r[m][m];
    }
    let mut foot = [0.0; MAX_DIM];
    for m in 0..dim - 1 {
        for c in 0..dim {
            foot[c] += alpha[m] * frame.q[m][c];
        }
    }
    let h_sq = r1 * r1 - dot(&foot[..dim], &foot[..dim]);

    let mut tangent = false;
    let h = if h_sq <= 0.0 {
        tangent = true;
        0.0
    } else {
        h_sq.sqrt()
    };
    if 2.0 * h < TANGENCY_TOLERANCE {
        tangent = true;
    }

    if tangent {
        for c in 0..dim {
            plus[c] = c1[c] + foot[c];
        }
        let residual = (0..dim)
            .map(|l| {
                let cl = &centers[l * dim..(l + 1) * dim];
                (distance(&plus[..dim], cl) - radii[l]).abs() / radii[l].max(1.0)
            })
            .fold(0.0, f64::max);
        if residual > tolerance {
            return Err(GeometryError::Infeasible { residual });
        }
        minus[..dim].copy_from_slice(&plus[..dim]);
        return Ok(true);
    }

    // Orientation of the normal relative to the center-difference basis.
    let mut m = [0.0; MAX_DIM * MAX_DIM];
    for row in 0..dim - 1 {
        let cr = &centers[(row + 1) * dim..(row + 2) * dim];
        for c in 0..dim {
            m[row * dim + c] = cr[c] - c1[c];
        }
    }
    m[(dim - 1) * dim..dim * dim].copy_from_slice(&frame.normal[..dim]);
    let orientation = determinant(&mut m[..dim * dim], dim);
    let sign = if orientation > 0.0 { 1.0 } else { -1.0 };
    for c in 0..dim {
        let offset = sign * h * frame.normal[c];
        plus[c] = c1[c] + foot[c] + offset;
        minus[c] = c1[c] + foot[c] - offset;
    }
    Ok(false)
}

/// Affine reflection through a hyperplane given by a unit normal and a point
/// on the hyperplane.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperplaneReflector {
    dim: usize,
    normal: [f64; MAX_DIM],
    anchor: [f64; MAX_DIM],
}

impl HyperplaneReflector {
    /// Builds a reflector from any non-zero normal; the normal is rescaled to
    /// unit length.
    pub fn new(normal: &[f64], anchor: &[f64]) -> Result<Self> {
        let dim = normal.len();
        check_dim(dim)?;
        if anchor.len() != dim {
            return Err(GeometryError::Dimension {
                expected: dim,
                found: anchor.len(),
            });
        }
        let norm = dot(normal, normal).sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(GeometryError::ZeroNormal);
        }
        let mut r = HyperplaneReflector {
            dim,
            normal: [0.0; MAX_DIM],
            anchor: [0.0; MAX_DIM],
        };
        for c in 0..dim {
            r.normal[c] = normal[c] / norm;
        }
        r.anchor[..dim].copy_from_slice(anchor);
        Ok(r)
    }

    pub(crate) fn from_flat(dim: usize, points: &[f64]) -> Result<Self> {
        check_nondegenerate_flat(dim, points)?;
        let frame = simplex_frame(dim, points)?;
        let mut r = HyperplaneReflector {
            dim,
            normal: frame.normal,
            anchor: [0.0; MAX_DIM],
        };
        r.anchor[..dim].copy_from_slice(&points[(dim - 1) * dim..dim * dim]);
        Ok(r)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn normal(&self) -> &[f64] {
        &self.normal[..self.dim]
    }

    pub fn anchor(&self) -> &[f64] {
        &self.anchor[..self.dim]
    }

    /// `(I - 2 n n^T)(y - a) + a`.
    pub fn reflect(&self, y: &[f64]) -> Result<Point> {
        if y.len() != self.dim {
            return Err(GeometryError::Dimension {
                expected: self.dim,
                found: y.len(),
            });
        }
        let mut out = y.to_vec();
        self.reflect_in_place(&mut out);
        Ok(Point(out))
    }

    #[inline]
    pub fn reflect_in_place(&self, y: &mut [f64]) {
        let d = self.dim;
        let mut proj = 0.0;
        for c in 0..d {
            proj += self.normal[c] * (y[c] - self.anchor[c]);
        }
        let f = 2.0 * proj;
        for c in 0..d {
            y[c] -= f * self.normal[c];
        }
    }

    /// Signed distance of `y` from the hyperplane.
    pub fn signed_distance(&self, y: &[f64]) -> f64 {
        (0..self.dim)
            .map(|c| self.normal[c] * (y[c] - self.anchor[c]))
            .sum()
    }
}

/// Reflector through the hyperplane spanned by K affinely independent points;
/// the anchor is the last point.
pub fn build_reflector<P: AsRef<[f64]>>(points: &[P]) -> Result<HyperplaneReflector> {
    let k = validate_simplex(points)?;
    let mut flat = [0.0; MAX_DIM * MAX_DIM];
    for (a, p) in points.iter().enumerate() {
        flat[a * k..(a + 1) * k].copy_from_slice(p.as_ref());
    }
    HyperplaneReflector::from_flat(k, &flat[..k * k])
}

/// Convenience wrapper over [`HyperplaneReflector::reflect`].
pub fn reflect(r: &HyperplaneReflector, y: &[f64]) -> Result<Point> {
    r.reflect(y)
}

/// Places the first `dim` vertices of a clique from their pairwise distances
/// `dist(a, b)` (0-based): the first at the origin, the m-th inside the span
/// of the first m-1 axes with a positive last coordinate.
pub fn place_root_clique(
    dim: usize,
    dist: impl Fn(usize, usize) -> f64,
    tolerance: f64,
) -> Result<Realization> {
    check_dim(dim)?;
    let mut x = Realization::zeros(dim, dim);
    for m in 1..dim {
        let d0m = dist(0, m);
        if !(d0m > 0.0 && d0m.is_finite()) {
            return Err(GeometryError::Radius(d0m));
        }
        let mut row = [0.0; MAX_DIM];
        for l in 1..m {
            let xl = x.point(l + 1);
            let dlm = dist(l, m);
            let rhs = 0.5 * (d0m * d0m + dot(xl, xl) - dlm * dlm);
            let mut acc = rhs;
            for p in 0..l - 1 {
                acc -= xl[p] * row[p];
            }
            row[l - 1] = acc / xl[l - 1];
        }
        let rest: f64 = row[..m - 1].iter().map(|v| v * v).sum();
        let h_sq = d0m * d0m - rest;
        let scale = d0m * d0m;
        if h_sq <= DEGENERACY_THRESHOLD * scale {
            if h_sq < -tolerance * scale.max(1.0) {
                return Err(GeometryError::Infeasible {
                    residual: -h_sq / scale,
                });
            }
            return Err(GeometryError::Degenerate {
                scaled: h_sq / scale,
            });
        }
        row[m - 1] = h_sq.sqrt();
        x.point_mut(m + 1).copy_from_slice(&row[..dim]);
    }
    Ok(x)
}

/// Rigidly moves `x` into the root frame used by [`place_root_clique`]:
/// vertex 1 at the origin, vertex m+1 in the span of the first m axes with a
/// positive m-th coordinate, and a proper rotation on the remaining axis.
pub fn align_to_root_frame(x: &Realization) -> Result<Realization> {
    let dim = x.dim();
    check_dim(dim)?;
    if x.len() < dim {
        return Err(GeometryError::PointCount {
            expected: dim,
            found: x.len(),
        });
    }
    let frame = simplex_frame(dim, x.span(1, dim))?;
    // Rows: q_0..q_{dim-2}, then the normal oriented for det = +1.
    let mut basis = [[0.0; MAX_DIM]; MAX_DIM];
    basis[..dim - 1].copy_from_slice(&frame.q[..dim - 1]);
    basis[dim - 1] = frame.normal;
    let mut m = [0.0; MAX_DIM * MAX_DIM];
    for r in 0..dim {
        m[r * dim..(r + 1) * dim].copy_from_slice(&basis[r][..dim]);
    }
    if determinant(&mut m[..dim * dim], dim) < 0.0 {
        for c in 0..dim {
            basis[dim - 1][c] = -basis[dim - 1][c];
        }
    }
    let origin = x.point(1).to_vec();
    let mut out = Realization::with_capacity(dim, x.len());
    let mut buf = [0.0; MAX_DIM];
    for p in x.points() {
        for r in 0..dim {
            buf[r] = (0..dim).map(|c| basis[r][c] * (p[c] - origin[c])).sum();
        }
        out.push(&buf[..dim]);
    }
    Ok(out)
}

/// The mirror image of `x` through the coordinate hyperplane orthogonal to the
/// last axis. In the root frame this is the total reflection through the
/// hyperplane of the first K vertices.
pub fn mirror_last_axis(x: &Realization) -> Realization {
    let dim = x.dim();
    let mut out = x.clone();
    for v in 1..=out.len() {
        out.point_mut(v)[dim - 1] *= -1.0;
    }
    out
}
