//! The SL(2,ℝ) model of S³ minus the circle `{y = 0}`.
//!
//! `ψ(μ) = μ·(0, 1)` identifies SL(2,ℝ) with the open orbit; right-invariant
//! fields map to the holomorphic generators `T, U, V` and the left-invariant
//! contact fields `μU`, `μV` to `y²∂x - y²·conj(x/y)∂y` and `i` times it.
//! Projecting along `T` onto `z = x/y²` and deforming the CR structure by
//! `qJ` gives a base metric whose curvature is unbounded unless `qJ = 1`.

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{CrError, Result};

pub const DET_TOL: f64 = 1e-12;
pub const SPHERE_TOL: f64 = 1e-12;
pub const CURVATURE_FD_STEP: f64 = 1e-3;
pub const PUSHFORWARD_FD_STEP: f64 = 1e-5;
pub const BRACKET_FD_STEP: f64 = 1e-4;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// A real 2×2 matrix of determinant one, rows `(a b; c d)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SL2Matrix {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl SL2Matrix {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let (ad, bc) = (a * d, b * c);
        let err = (ad - bc - 1.0).abs();
        if err.is_nan() || err > DET_TOL * (1.0 + ad.abs() + bc.abs()) {
            return Err(CrError::InvalidInput(format!("determinant {} is not 1", ad - bc)));
        }
        Ok(SL2Matrix { a, b, c, d })
    }

    pub fn identity() -> Self {
        SL2Matrix { a: 1.0, b: 0.0, c: 0.0, d: 1.0 }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &SL2Matrix) -> SL2Matrix {
        SL2Matrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    /// Random matrix with entries of order one.
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        let a = rng.gen_range(0.3..2.5) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let b = rng.gen_range(-2.0..2.0);
        let c = rng.gen_range(-2.0..2.0);
        SL2Matrix { a, b, c, d: (1.0 + b * c) / a }
    }
}

/// Basis `T, U, V` of sl(2,ℝ).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Generator {
    T,
    U,
    V,
}

pub type IntMatrix = [[i64; 2]; 2];

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::T, Generator::U, Generator::V];

    pub fn matrix(self) -> IntMatrix {
        match self {
            Generator::T => [[0, 1], [-1, 0]],
            Generator::U => [[1, 0], [0, -1]],
            Generator::V => [[0, 1], [1, 0]],
        }
    }

    /// One-parameter subgroup `exp(t·X)`.
    pub fn exp(self, t: f64) -> SL2Matrix {
        match self {
            Generator::T => SL2Matrix { a: t.cos(), b: t.sin(), c: -t.sin(), d: t.cos() },
            Generator::U => SL2Matrix { a: t.exp(), b: 0.0, c: 0.0, d: (-t).exp() },
            Generator::V => SL2Matrix { a: t.cosh(), b: t.sinh(), c: t.sinh(), d: t.cosh() },
        }
    }
}

/// A point of S³ ⊂ ℂ².
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpherePoint {
    pub x: Complex64,
    pub y: Complex64,
}

impl SpherePoint {
    pub fn new(x: Complex64, y: Complex64) -> Result<Self> {
        let n = x.norm_sqr() + y.norm_sqr();
        if (n - 1.0).abs() > SPHERE_TOL {
            return Err(CrError::InvalidInput(format!("|x|^2 + |y|^2 = {n}, not 1")));
        }
        Ok(SpherePoint { x, y })
    }

    pub fn norm_sqr(&self) -> f64 {
        self.x.norm_sqr() + self.y.norm_sqr()
    }

    /// Uniform random point (rejection sampling in the unit ball of ℝ⁴).
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        loop {
            let v: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
            let n2: f64 = v.iter().map(|x| x * x).sum();
            if n2 > 1e-4 && n2 <= 1.0 {
                let n = n2.sqrt();
                return SpherePoint { x: Complex64::new(v[0] / n, v[1] / n), y: Complex64::new(v[2] / n, v[3] / n) };
            }
        }
    }
}

/// `ψ(μ) = (i·x₁/x₂, 2i/x₂)` with `x₁ = a - d + i(b + c)`, `x₂ = c - b + i(a + d)`.
///
/// `|x₂|² = a² + b² + c² + d² + 2 ≥ 2`, so the denominator never vanishes.
pub fn psi(m: &SL2Matrix) -> SpherePoint {
    let x1 = Complex64::new(m.a - m.d, m.b + m.c);
    let x2 = Complex64::new(m.c - m.b, m.a + m.d);
    SpherePoint { x: I * x1 / x2, y: 2.0 * I / x2 }
}

pub type FieldValue = (Complex64, Complex64);

fn generator_field_at(which: Generator, x: Complex64, y: Complex64) -> FieldValue {
    match which {
        Generator::T => (-2.0 * I * x, -I * y),
        Generator::U => (1.0 - x * x, -x * y),
        Generator::V => (I * (1.0 + x * x), I * x * y),
    }
}

/// Holomorphic generators of the action on ℂ².
pub fn generator_field(which: Generator, p: &SpherePoint) -> FieldValue {
    generator_field_at(which, p.x, p.y)
}

/// `Re(x̄·dx + ȳ·dy)`; zero iff the vector is tangent to S³ at `p`.
pub fn tangency_residual(p: &SpherePoint, v: FieldValue) -> f64 {
    (p.x.conj() * v.0 + p.y.conj() * v.1).re
}

fn int_commutator(a: IntMatrix, b: IntMatrix) -> IntMatrix {
    let mul = |x: IntMatrix, y: IntMatrix| -> IntMatrix {
        std::array::from_fn(|i| std::array::from_fn(|j| x[i][0] * y[0][j] + x[i][1] * y[1][j]))
    };
    let (ab, ba) = (mul(a, b), mul(b, a));
    std::array::from_fn(|i| std::array::from_fn(|j| ab[i][j] - ba[i][j]))
}

/// `[X, Y] = coeff·Z` in sl(2,ℝ).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BracketRelation {
    pub left: Generator,
    pub right: Generator,
    pub coeff: i64,
    pub result: Generator,
    /// Holds exactly for the integer matrices.
    pub matrix_exact: bool,
    /// Largest deviation of the finite-difference field bracket from
    /// `-coeff·field(result)` over the sample points.
    pub field_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BracketReport {
    pub relations: Vec<BracketRelation>,
    pub samples: usize,
    pub step: f64,
}

impl BracketReport {
    pub fn matrix_exact(&self) -> bool {
        self.relations.iter().all(|r| r.matrix_exact)
    }

    pub fn field_max_residual(&self) -> f64 {
        self.relations.iter().map(|r| r.field_residual).fold(0.0, f64::max)
    }
}

/// Lie bracket `[X, Y] = DY·X - DX·Y` of two generator fields at `p`, with
/// the complex-linear Jacobians taken by central differences of step `h`.
pub fn field_bracket_fd(left: Generator, right: Generator, p: &SpherePoint, h: f64) -> FieldValue {
    let dir = |f: Generator, w: FieldValue| {
        let plus = generator_field_at(f, p.x + h * w.0, p.y + h * w.1);
        let minus = generator_field_at(f, p.x - h * w.0, p.y - h * w.1);
        ((plus.0 - minus.0) / (2.0 * h), (plus.1 - minus.1) / (2.0 * h))
    };
    let xv = generator_field(left, p);
    let yv = generator_field(right, p);
    let dy_x = dir(right, xv);
    let dx_y = dir(left, yv);
    (dy_x.0 - dx_y.0, dy_x.1 - dx_y.1)
}

/// Checks `[T,U] = -2V`, `[T,V] = 2U`, `[U,V] = 2T` on the integer matrices
/// and, at `samples` random sphere points, on the vector fields.
///
/// The fields are images of right-invariant fields, so the field bracket
/// is the negative of the matrix bracket.
pub fn bracket_check_with<R: Rng>(rng: &mut R, samples: usize, h: f64) -> BracketReport {
    use Generator::*;
    let table = [(T, U, -2, V), (T, V, 2, U), (U, V, 2, T)];
    let points: Vec<SpherePoint> = (0..samples).map(|_| SpherePoint::random(rng)).collect();
    let relations = table
        .iter()
        .map(|&(left, right, coeff, result)| {
            let lhs = int_commutator(left.matrix(), right.matrix());
            let rm = result.matrix();
            let matrix_exact = (0..2).all(|i| (0..2).all(|j| lhs[i][j] == coeff * rm[i][j]));
            let field_residual = points
                .iter()
                .map(|p| {
                    let got = field_bracket_fd(left, right, p, h);
                    let want = generator_field(result, p);
                    let c = -(coeff as f64);
                    (got.0 - c * want.0).norm().max((got.1 - c * want.1).norm())
                })
                .fold(0.0, f64::max);
            BracketRelation { left, right, coeff, result, matrix_exact, field_residual }
        })
        .collect();
    BracketReport { relations, samples, step: h }
}

pub fn bracket_check() -> BracketReport {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    bracket_check_with(&mut rng, 64, BRACKET_FD_STEP)
}

/// Left-invariant contact fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LeftField {
    MuU,
    MuV,
}

impl LeftField {
    pub fn generator(self) -> Generator {
        match self {
            LeftField::MuU => Generator::U,
            LeftField::MuV => Generator::V,
        }
    }
}

pub fn left_invariant_field(which: LeftField, p: &SpherePoint) -> Result<FieldValue> {
    if p.y == Complex64::new(0.0, 0.0) {
        return Err(CrError::PoleOfChart);
    }
    let y2 = p.y * p.y;
    let mu_u = (y2, -y2 * (p.x / p.y).conj());
    Ok(match which {
        LeftField::MuU => mu_u,
        LeftField::MuV => (I * mu_u.0, I * mu_u.1),
    })
}

fn central<F: Fn(f64) -> SpherePoint>(curve: F, h: f64) -> FieldValue {
    let (p, m) = (curve(h), curve(-h));
    ((p.x - m.x) / (2.0 * h), (p.y - m.y) / (2.0 * h))
}

/// `d/dt ψ(μ·exp(tX))` at `t = 0` by central differences.
pub fn left_pushforward(m: &SL2Matrix, which: Generator, h: f64) -> FieldValue {
    central(|t| psi(&m.mul(&which.exp(t))), h)
}

/// `d/dt ψ(exp(tX)·μ)` at `t = 0` by central differences.
pub fn right_pushforward(m: &SL2Matrix, which: Generator, h: f64) -> FieldValue {
    central(|t| psi(&which.exp(t).mul(m)), h)
}

/// `α² = (2 - |y|²)/|y|²`.
pub fn alpha_sq(p: &SpherePoint) -> Result<f64> {
    let y2 = p.y.norm_sqr();
    if y2 == 0.0 {
        return Err(CrError::PoleOfChart);
    }
    Ok((2.0 - y2) / y2)
}

/// A point `z = u + iv` of the orbit space ℂ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BasePoint {
    pub u: f64,
    pub v: f64,
}

impl BasePoint {
    pub fn new(u: f64, v: f64) -> Self {
        BasePoint { u, v }
    }

    /// `A = 1 + 4|z|²`.
    pub fn a(&self) -> f64 {
        1.0 + 4.0 * (self.u * self.u + self.v * self.v)
    }
}

/// Orbit-space projection `(x, y) ↦ x/y²`.
pub fn project(p: &SpherePoint) -> Result<BasePoint> {
    if p.y == Complex64::new(0.0, 0.0) {
        return Err(CrError::PoleOfChart);
    }
    let z = p.x / (p.y * p.y);
    Ok(BasePoint::new(z.re, z.im))
}

/// Deformation parameter `qJ > 0` of the left-invariant CR structure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeformParam(f64);

impl DeformParam {
    pub fn new(q: f64) -> Result<Self> {
        if !(q.is_finite() && q > 0.0) {
            return Err(CrError::InvalidInput(format!("qJ must be positive, got {q}")));
        }
        Ok(DeformParam(q))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `K = qJ²·12A^{-1/2} + (1/qJ² - qJ²)(6A^{1/2} - 48v²A^{-1/2})`.
pub fn base_curvature(d: DeformParam, z: BasePoint) -> f64 {
    let q2 = d.0 * d.0;
    let a = z.a();
    let ra = a.sqrt();
    q2 * 12.0 / ra + (1.0 / q2 - q2) * (6.0 * ra - 48.0 * z.v * z.v / ra)
}

/// Gaussian curvature of `E du² + G dv²` with `E = 1/(qJ·f)²`, `G = qJ²/f²`,
/// `f = A^{3/4}` (the metric making `qJ·f∂u`, `f∂v/qJ` orthonormal), from
///
/// `K = -1/(2√(EG)) [∂u(G_u/√(EG)) + ∂v(E_v/√(EG))]`
///
/// with compact central differences of step `h`: the inner derivatives
/// are taken at the half-steps `u ± h/2`, so each second derivative is a
/// three-point stencil of spacing `h`. Intended for `h ∈ (1e-6, 1e-2)`.
pub fn curvature_fd_oracle(d: DeformParam, z: BasePoint, h: f64) -> f64 {
    let q = d.0;
    let f = |u: f64, v: f64| (1.0 + 4.0 * (u * u + v * v)).powf(0.75);
    let e = |u: f64, v: f64| 1.0 / (q * f(u, v)).powi(2);
    let g = |u: f64, v: f64| q * q / f(u, v).powi(2);
    let w = |u: f64, v: f64| (e(u, v) * g(u, v)).sqrt();
    let half = 0.5 * h;
    // G_u / √(EG) at (u, v), from samples at u ± h/2
    let gu_over_w = |u: f64, v: f64| (g(u + half, v) - g(u - half, v)) / h / w(u, v);
    let ev_over_w = |u: f64, v: f64| (e(u, v + half) - e(u, v - half)) / h / w(u, v);
    let (u, v) = (z.u, z.v);
    let d_u = (gu_over_w(u + half, v) - gu_over_w(u - half, v)) / h;
    let d_v = (ev_over_w(u, v + half) - ev_over_w(u, v - half)) / h;
    -(d_u + d_v) / (2.0 * w(u, v))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbeResult {
    pub sup_abs: f64,
    pub argmax: BasePoint,
}

/// Uniform `n × n` grid on `[-R, R]²`; odd `n` includes the origin.
pub fn scan_grid(radius: f64, n: usize) -> Vec<BasePoint> {
    let n = n.max(1);
    let coord = |i: usize| if n == 1 { 0.0 } else { -radius + 2.0 * radius * i as f64 / (n - 1) as f64 };
    (0..n).flat_map(|i| (0..n).map(move |j| BasePoint::new(coord(i), coord(j)))).collect()
}

/// `(u, v, K)` over [`scan_grid`].
pub fn curvature_scan(d: DeformParam, radius: f64, n: usize) -> Vec<(BasePoint, f64)> {
    scan_grid(radius, n).into_iter().map(|z| (z, base_curvature(d, z))).collect()
}

/// Largest `|K|` over the scan grid, first maximiser in row-major order.
pub fn boundedness_probe(d: DeformParam, radius: f64, n: usize) -> ProbeResult {
    let mut best = ProbeResult { sup_abs: f64::NEG_INFINITY, argmax: BasePoint::new(0.0, 0.0) };
    for (z, k) in curvature_scan(d, radius, n) {
        if k.abs() > best.sup_abs {
            best = ProbeResult { sup_abs: k.abs(), argmax: z };
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: FieldValue, b: FieldValue, tol: f64) -> bool {
        (a.0 - b.0).norm() <= tol && (a.1 - b.1).norm() <= tol
    }

    #[test]
    fn psi_examples() {
        let p = psi(&SL2Matrix::identity());
        assert_eq!((p.x, p.y), (c(0.0, 0.0), c(1.0, 0.0)));
        let p = psi(&SL2Matrix::new(2.0, 0.0, 0.0, 0.5).unwrap());
        assert!((p.x - c(0.6, 0.0)).norm() < 1e-15 && (p.y - c(0.8, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn det_validation() {
        assert!(SL2Matrix::new(1.0, 1.0, 1.0, 1.0).is_err());
        assert!(SL2Matrix::new(2.0, 3.0, 1.0, 2.0).is_ok());
    }

    #[test]
    fn generator_values_at_base_point() {
        let p = SpherePoint::new(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        assert_eq!(generator_field(Generator::T, &p), (c(0.0, 0.0), c(0.0, -1.0)));
        assert_eq!(generator_field(Generator::U, &p), (c(1.0, 0.0), c(0.0, 0.0)));
        assert_eq!(generator_field(Generator::V, &p), (c(0.0, 1.0), c(0.0, 0.0)));
    }

    #[test]
    fn left_field_at_base_point() {
        let p = SpherePoint::new(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        assert_eq!(left_invariant_field(LeftField::MuU, &p).unwrap(), (c(1.0, 0.0), c(0.0, 0.0)));
        let pole = SpherePoint::new(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_eq!(left_invariant_field(LeftField::MuU, &pole), Err(CrError::PoleOfChart));
        assert_eq!(alpha_sq(&pole), Err(CrError::PoleOfChart));
    }

    #[test]
    fn alpha_sq_examples() {
        let p = SpherePoint::new(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        assert_eq!(alpha_sq(&p).unwrap(), 1.0);
        let p = SpherePoint::new(c(0.6, 0.0), c(0.8, 0.0)).unwrap();
        assert!((alpha_sq(&p).unwrap() - 2.125).abs() < 1e-14);
        let z = project(&p).unwrap();
        assert!((z.u - 15.0 / 16.0).abs() < 1e-15 && z.v == 0.0);
        assert!((z.a().sqrt() - 2.125).abs() < 1e-14);
    }

    #[test]
    fn base_curvature_examples() {
        let one = DeformParam::new(1.0).unwrap();
        let two = DeformParam::new(2.0).unwrap();
        assert_eq!(base_curvature(one, BasePoint::new(0.0, 0.0)), 12.0);
        assert!((base_curvature(two, BasePoint::new(0.0, 0.0)) - 25.5).abs() < 1e-13);
        for (u, v) in [(3.0, -1.0), (0.0, 40.0), (1e3, 1e3)] {
            let k = base_curvature(one, BasePoint::new(u, v));
            assert!(k > 0.0 && k <= 12.0);
        }
        assert!(DeformParam::new(0.0).is_err());
    }

    #[test]
    fn oracle_examples() {
        let one = DeformParam::new(1.0).unwrap();
        let two = DeformParam::new(2.0).unwrap();
        assert!((curvature_fd_oracle(one, BasePoint::new(0.0, 0.0), 1e-3) - 12.0).abs() < 1e-4);
        let z = BasePoint::new(1.0, 0.0);
        let k = base_curvature(two, z);
        assert!(((curvature_fd_oracle(two, z, 1e-3) - k) / k).abs() < 1e-3);
        let z = BasePoint::new(0.7, 0.4);
        let base = curvature_fd_oracle(two, z, 1e-3);
        for m in [BasePoint::new(-0.7, 0.4), BasePoint::new(0.7, -0.4)] {
            assert!((curvature_fd_oracle(two, m, 1e-3) - base).abs() <= 1e-10 * base.abs().max(1.0));
        }
    }

    #[test]
    fn muv_is_i_times_muu() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let p = SpherePoint::random(&mut rng);
            let u = left_invariant_field(LeftField::MuU, &p).unwrap();
            let v = left_invariant_field(LeftField::MuV, &p).unwrap();
            assert_eq!(v, (I * u.0, I * u.1));
        }
    }

    #[test]
    fn right_pushforward_matches_generators() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let m = SL2Matrix::random(&mut rng);
            let p = psi(&m);
            for g in Generator::ALL {
                let fd = right_pushforward(&m, g, PUSHFORWARD_FD_STEP);
                assert!(close(fd, generator_field(g, &p), 1e-6), "{g:?}");
            }
        }
    }

    #[test]
    fn probe_bounded_for_standard_structure() {
        let one = DeformParam::new(1.0).unwrap();
        let r = boundedness_probe(one, 100.0, 101);
        assert_eq!(r.sup_abs, 12.0);
        assert_eq!(r.argmax, BasePoint::new(0.0, 0.0));
    }
}
