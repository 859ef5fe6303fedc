//! Homogeneous polynomials of independent GAFs, determinants of Gaussian pencils and
//! zeros of Gaussian matrix power series.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::gaf::{
    polynomial_zeros_in_disk, GafSampler, GafSpec, TruncatedSeries, ZeroOptions, DEFAULT_DEGREE_CAP,
};
use crate::linalg::{det_in_place, generalized_eigenvalues, horner, CMat};
use crate::points::{DomainTag, Point, PointSet};
use crate::rng::{complex_gaussian, RngStream};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Homogeneous polynomial in `k` variables: a list of monomials with coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomPoly {
    pub k: usize,
    pub terms: Vec<(Vec<u32>, Complex64)>,
    /// Set when the polynomial is the `n x n` determinant in row-major variables.
    #[serde(default)]
    pub det_order: Option<usize>,
}

impl HomPoly {
    pub fn new(k: usize, terms: Vec<(Vec<u32>, Complex64)>) -> Result<Self> {
        let p = HomPoly {
            k,
            terms,
            det_order: None,
        };
        p.degree()?;
        Ok(p)
    }

    /// `Q(z) = z`.
    pub fn identity() -> Self {
        HomPoly {
            k: 1,
            terms: vec![(vec![1], Complex64::new(1.0, 0.0))],
            det_order: None,
        }
    }

    /// `Q = z_1 z_2 ... z_k`.
    pub fn product(k: usize) -> Self {
        HomPoly {
            k,
            terms: vec![(vec![1; k], Complex64::new(1.0, 0.0))],
            det_order: None,
        }
    }

    /// `Q(z) = z^d`.
    pub fn power(d: u32) -> Self {
        HomPoly {
            k: 1,
            terms: vec![(vec![d], Complex64::new(1.0, 0.0))],
            det_order: None,
        }
    }

    /// Determinant of an `n x n` matrix of variables, row-major.
    pub fn det(n: usize) -> Self {
        let mut terms = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        permutations(&mut perm, 0, &mut |p| {
            let mut m = vec![0u32; n * n];
            for (i, &j) in p.iter().enumerate() {
                m[i * n + j] = 1;
            }
            let sign = if parity(p) { -1.0 } else { 1.0 };
            terms.push((m, Complex64::new(sign, 0.0)));
        });
        HomPoly {
            k: n * n,
            terms,
            det_order: Some(n),
        }
    }

    /// Common degree of all monomials.
    pub fn degree(&self) -> Result<u32> {
        let mut d = None;
        for (m, c) in &self.terms {
            if m.len() != self.k {
                return Err(Error::InvalidParameter(
                    "monomial arity differs from k".into(),
                ));
            }
            if c.norm_sqr() == 0.0 {
                continue;
            }
            let s: u32 = m.iter().sum();
            match d {
                None => d = Some(s),
                Some(x) if x != s => {
                    return Err(Error::InvalidParameter(
                        "polynomial is not homogeneous".into(),
                    ))
                }
                _ => {}
            }
        }
        d.ok_or(Error::ZeroPolynomial)
    }

    pub fn eval(&self, v: &[Complex64]) -> Complex64 {
        if let Some(n) = self.det_order {
            let mut a = v.to_vec();
            return det_in_place(&mut a, n);
        }
        self.eval_terms(v)
    }

    /// Evaluation by the monomial list, never the determinant shortcut.
    pub fn eval_terms(&self, v: &[Complex64]) -> Complex64 {
        let mut s = ZERO;
        for (m, c) in &self.terms {
            let mut t = *c;
            for (x, &e) in v.iter().zip(m) {
                if e > 0 {
                    t *= x.powu(e);
                }
            }
            s += t;
        }
        s
    }
}

fn permutations(p: &mut Vec<usize>, i: usize, f: &mut dyn FnMut(&[usize])) {
    if i == p.len() {
        f(p);
        return;
    }
    for j in i..p.len() {
        p.swap(i, j);
        permutations(p, i + 1, f);
        p.swap(i, j);
    }
}

fn parity(p: &[usize]) -> bool {
    let mut odd = false;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                odd = !odd;
            }
        }
    }
    odd
}

/// `Q` applied to independent copies of a base GAF.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygafSpec {
    pub q: HomPoly,
    pub base: GafSpec,
}

impl PolygafSpec {
    pub fn new(q: HomPoly, base: GafSpec) -> Result<Self> {
        q.degree()?;
        base.validate()?;
        Ok(PolygafSpec { q, base })
    }

    /// First intensity: degree times the base intensity.
    pub fn intensity(&self, z: Complex64) -> Result<f64> {
        Ok(self.q.degree()? as f64 * crate::gaf::edelman_kostlan_intensity(&self.base, z)?)
    }
}

/// `Q(f_1(z), ..., f_k(z))`.
pub fn eval_polygaf(q: &HomPoly, series: &[TruncatedSeries], z: Complex64) -> Result<Complex64> {
    if series.len() != q.k {
        return Err(Error::InvalidParameter(format!(
            "Q needs {} series, got {}",
            q.k,
            series.len()
        )));
    }
    let mut v = Vec::with_capacity(q.k);
    for s in series {
        v.push(crate::gaf::evaluate(s, z)?);
    }
    Ok(q.eval(&v))
}

/// Sample the `k` independent base series from one generator, in order.
pub fn sample_components<R: Rng + ?Sized>(
    spec: &PolygafSpec,
    rng: &mut R,
    r: f64,
    eps: f64,
) -> Result<Vec<TruncatedSeries>> {
    let sampler = GafSampler::new(&spec.base, r, eps, DEFAULT_DEGREE_CAP)?;
    (0..spec.q.k).map(|_| sampler.sample(rng)).collect()
}

fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.norm_sqr() == 0.0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Largest tail bound accepted before a composed series is rejected.
pub const DEFAULT_TAIL_CAP: f64 = 1e-6;

/// Coefficients of `Q(f_1, ..., f_k)` with a propagated tail bound.
pub fn polygaf_series(q: &HomPoly, series: &[TruncatedSeries]) -> Result<TruncatedSeries> {
    polygaf_series_with_cap(q, series, DEFAULT_TAIL_CAP)
}

pub fn polygaf_series_with_cap(
    q: &HomPoly,
    series: &[TruncatedSeries],
    cap: f64,
) -> Result<TruncatedSeries> {
    let d = q.degree()?;
    if series.len() != q.k {
        return Err(Error::InvalidParameter(format!(
            "Q needs {} series, got {}",
            q.k,
            series.len()
        )));
    }
    let radius = series
        .iter()
        .map(|s| s.radius)
        .fold(f64::INFINITY, f64::min);
    let base = series[0].spec;
    if series.iter().any(|s| s.spec.domain != base.domain) {
        return Err(Error::InvalidParameter(
            "series on different domains".into(),
        ));
    }
    let sups: Vec<f64> = series
        .iter()
        .map(|s| {
            if radius.is_infinite() {
                0.0
            } else {
                s.coeffs
                    .iter()
                    .enumerate()
                    .map(|(n, c)| c.norm() * radius.powi(n as i32))
                    .sum()
            }
        })
        .collect();
    let mut tail = 0.0;
    for (m, c) in &q.terms {
        let mut with = 1.0;
        let mut without = 1.0;
        for (j, &e) in m.iter().enumerate() {
            with *= (sups[j] + series[j].tail_bound).powi(e as i32);
            without *= sups[j].powi(e as i32);
        }
        tail += c.norm() * (with - without);
    }
    if tail > cap {
        return Err(Error::TailBoundOverflow { bound: tail, cap });
    }
    let coeffs = if let (Some(n), true) = (q.det_order, q.k > 1) {
        det_series_interpolated(n, series, radius)
    } else {
        let len = d as usize * series.iter().map(|s| s.coeffs.len() - 1).max().unwrap() + 1;
        let mut out = vec![ZERO; len];
        for (m, c) in &q.terms {
            if c.norm_sqr() == 0.0 {
                continue;
            }
            let mut prod = vec![*c];
            for (j, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    prod = poly_mul(&prod, &series[j].coeffs);
                }
            }
            for (k, v) in prod.into_iter().enumerate() {
                out[k] += v;
            }
        }
        out
    };
    let miss: f64 = series.iter().map(|s| 1.0 - s.confidence).sum();
    Ok(TruncatedSeries {
        spec: GafSpec {
            domain: base.domain,
            l: base.l * d as f64,
        },
        coeffs,
        radius,
        tail_bound: tail,
        confidence: (1.0 - miss).max(0.0),
    })
}

/// Determinant series by evaluation at roots of unity on a circle and discrete Fourier inversion.
fn det_series_interpolated(n: usize, series: &[TruncatedSeries], radius: f64) -> Vec<Complex64> {
    let rho = if radius.is_finite() { radius } else { 1.0 };
    let maxdeg = series.iter().map(|s| s.coeffs.len() - 1).max().unwrap();
    let len = n * maxdeg + 1;
    let mut vals = Vec::with_capacity(len);
    let mut buf = vec![ZERO; n * n];
    for j in 0..len {
        let z = Complex64::from_polar(rho, 2.0 * PI * j as f64 / len as f64);
        for (b, s) in buf.iter_mut().zip(series) {
            *b = horner(&s.coeffs, z).0;
        }
        vals.push(det_in_place(&mut buf, n));
    }
    let mut out = Vec::with_capacity(len);
    let mut scale = 1.0;
    for k in 0..len {
        let mut acc = ZERO;
        for (j, v) in vals.iter().enumerate() {
            let t = -2.0 * PI * ((j * k) % len) as f64 / len as f64;
            acc += v * Complex64::from_polar(1.0, t);
        }
        out.push(acc / (len as f64 * scale));
        scale *= rho;
    }
    out
}

/// Sample a polygaf and return its zeros in `|z| < r`.
pub fn sample_polygaf_zeros(
    spec: &PolygafSpec,
    stream: &RngStream,
    r: f64,
    eps: f64,
    opts: &ZeroOptions,
) -> Result<PointSet> {
    let mut rng = stream.rng();
    let comps = sample_components(spec, &mut rng, r, eps)?;
    let s = polygaf_series(&spec.q, &comps)?;
    let nominal = if spec.base.domain == DomainTag::Sphere {
        s.spec.l as usize
    } else {
        s.degree()
    };
    polynomial_zeros_in_disk(&s.coeffs, spec.base.domain, r, nominal, opts)
}

/// Zeros of `det(z A - B)` for independent complex Gaussian `A, B`, on the sphere.
pub fn det_pencil_zeros(n: usize, stream: &RngStream) -> Result<PointSet> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let mut rng = stream.rng();
    let a = CMat::from_rows(n, (0..n * n).map(|_| complex_gaussian(&mut rng)).collect());
    let b = CMat::from_rows(n, (0..n * n).map(|_| complex_gaussian(&mut rng)).collect());
    pencil_zeros(&a, &b)
}

/// Zeros of `det(z A - B)` as a sphere point set.
pub fn pencil_zeros(a: &CMat, b: &CMat) -> Result<PointSet> {
    let eig = generalized_eigenvalues(b, a)?;
    let mut ps = PointSet::new(DomainTag::Sphere, None);
    for g in eig {
        match g.value() {
            Some(z) => ps.points.push(Point { z, multiplicity: 1 }),
            None => ps.at_infinity += 1,
        }
    }
    Ok(ps)
}

/// Solver used for matrix power series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum MatrixSeriesMethod {
    /// Block companion linearization and QZ.
    Linearization,
    /// Scalar determinant series and polynomial roots.
    #[default]
    DeterminantSeries,
}

/// Largest series length handled by the linearization.
pub const MATRIX_DEGREE_CAP: usize = 256;

/// Gaussian matrix power series `sum_k G_k w_k z^k`, `G_k` with i.i.d. standard complex entries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MatrixSeriesSpec {
    pub n: usize,
    pub base: GafSpec,
}

impl MatrixSeriesSpec {
    pub fn hyperbolic(n: usize) -> Self {
        MatrixSeriesSpec {
            n,
            base: GafSpec::disk(1.0),
        }
    }

    pub fn as_polygaf(&self) -> PolygafSpec {
        PolygafSpec {
            q: HomPoly::det(self.n),
            base: self.base,
        }
    }

    /// Entry series in row-major order, drawn from one generator.
    pub fn sample_entries<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        r: f64,
        eps: f64,
    ) -> Result<Vec<TruncatedSeries>> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        sample_components(&self.as_polygaf(), rng, r, eps)
    }
}

/// Matrix coefficients `A_0, ..., A_N` from entry series.
pub fn coefficient_matrices(n: usize, entries: &[TruncatedSeries]) -> Vec<CMat> {
    let len = entries.iter().map(|s| s.coeffs.len()).max().unwrap_or(0);
    (0..len)
        .map(|k| {
            CMat::from_rows(
                n,
                entries
                    .iter()
                    .map(|s| s.coeffs.get(k).copied().unwrap_or(ZERO))
                    .collect(),
            )
        })
        .collect()
}

/// Zeros of `det(sum_k A_k z^k)` in `|z| < r` via the first companion linearization.
pub fn linearized_zeros(mats: &[CMat], domain: DomainTag, r: f64, margin: f64) -> Result<PointSet> {
    let big_n = mats.len() - 1;
    if big_n == 0 {
        return Err(Error::InvalidParameter("constant matrix series".into()));
    }
    if big_n > MATRIX_DEGREE_CAP {
        return Err(Error::TruncationCap {
            needed: big_n,
            cap: MATRIX_DEGREE_CAP,
        });
    }
    let n = mats[0].n;
    let size = n * big_n;
    // pencil z X + Y; zeros solve (-Y) v = z X v
    let mut x = CMat::identity(size);
    let mut my = CMat::zeros(size);
    for i in 0..n {
        for j in 0..n {
            x[(i, j)] = mats[big_n][(i, j)];
        }
    }
    for blk in 0..big_n {
        let a = &mats[big_n - 1 - blk];
        for i in 0..n {
            for j in 0..n {
                my[(i, blk * n + j)] = -a[(i, j)];
            }
        }
    }
    for blk in 1..big_n {
        for i in 0..n {
            my[(blk * n + i, (blk - 1) * n + i)] = Complex64::new(1.0, 0.0);
        }
    }
    let eig = generalized_eigenvalues(&my, &x)?;
    let mut ps = PointSet::new(domain, Some(r));
    for g in eig {
        if let Some(z) = g.value() {
            let m = z.norm();
            if (m - r).abs() < margin * r {
                return Err(Error::BoundaryProximity {
                    radius: r,
                    margin: margin * r,
                });
            }
            if m < r {
                ps.push(z, 1)?;
            }
        }
    }
    Ok(ps)
}

/// Zeros in `|z| < r` of a sampled Gaussian matrix power series.
pub fn matrix_series_zeros(
    spec: &MatrixSeriesSpec,
    stream: &RngStream,
    r: f64,
    eps: f64,
    method: MatrixSeriesMethod,
    opts: &ZeroOptions,
) -> Result<PointSet> {
    let mut rng = stream.rng();
    let entries = spec.sample_entries(&mut rng, r, eps)?;
    let deg = entries.iter().map(|s| s.degree()).max().unwrap();
    if deg > MATRIX_DEGREE_CAP {
        return Err(Error::TruncationCap {
            needed: deg,
            cap: MATRIX_DEGREE_CAP,
        });
    }
    match method {
        MatrixSeriesMethod::Linearization => linearized_zeros(
            &coefficient_matrices(spec.n, &entries),
            spec.base.domain,
            r,
            opts.boundary_margin,
        ),
        MatrixSeriesMethod::DeterminantSeries => {
            let s = polygaf_series(&HomPoly::det(spec.n), &entries)?;
            polynomial_zeros_in_disk(&s.coeffs, spec.base.domain, r, s.degree(), opts)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaf::{evaluate, sample_gaf};

    fn c(r: f64, i: f64) -> Complex64 {
        Complex64::new(r, i)
    }

    #[test]
    fn det_poly_matches_lu() {
        let mut rng = RngStream::new(4).rng();
        for n in 1..=4 {
            let q = HomPoly::det(n);
            assert_eq!(q.degree().unwrap(), n as u32);
            let v: Vec<Complex64> = (0..n * n).map(|_| complex_gaussian(&mut rng)).collect();
            assert!((q.eval_terms(&v) - q.eval(&v)).norm() < 1e-12);
        }
    }

    #[test]
    fn non_homogeneous_rejected() {
        let t = vec![(vec![1, 0], c(1.0, 0.0)), (vec![1, 1], c(1.0, 0.0))];
        assert!(HomPoly::new(2, t).is_err());
    }

    #[test]
    fn series_matches_pointwise() {
        for q in [
            HomPoly::identity(),
            HomPoly::product(2),
            HomPoly::power(3),
            HomPoly::det(2),
            HomPoly::det(3),
        ] {
            let spec = PolygafSpec::new(q.clone(), GafSpec::plane(1.0)).unwrap();
            let comps = sample_components(&spec, &mut RngStream::new(8).rng(), 1.5, 1e-12).unwrap();
            let s = polygaf_series(&q, &comps).unwrap();
            for z in [c(0.3, 0.2), c(-1.0, 0.9), c(0.0, -1.4)] {
                let a = eval_polygaf(&q, &comps, z).unwrap();
                let b = evaluate(&s, z).unwrap();
                assert!((a - b).norm() < 1e-9 * a.norm().max(1.0), "{q:?}");
            }
        }
    }

    #[test]
    fn det_interpolation_matches_expansion() {
        let q = HomPoly::det(2);
        let mut plain = q.clone();
        plain.det_order = None;
        let spec = PolygafSpec::new(q.clone(), GafSpec::disk(1.0)).unwrap();
        let comps = sample_components(&spec, &mut RngStream::new(9).rng(), 0.7, 1e-12).unwrap();
        let a = polygaf_series(&q, &comps).unwrap();
        let b = polygaf_series(&plain, &comps).unwrap();
        for (k, (x, y)) in a.coeffs.iter().zip(&b.coeffs).enumerate() {
            assert!((x - y).norm() * 0.7f64.powi(k as i32) < 1e-10, "k={k}");
        }
    }

    #[test]
    fn identity_polygaf_is_base() {
        let spec = PolygafSpec::new(HomPoly::identity(), GafSpec::plane(1.0)).unwrap();
        let st = RngStream::new(10);
        let comps = sample_components(&spec, &mut st.rng(), 1.0, 1e-10).unwrap();
        let direct = sample_gaf(&GafSpec::plane(1.0), &st, 1.0, 1e-10).unwrap();
        assert_eq!(comps[0].coeffs, direct.coeffs);
    }

    #[test]
    fn pencil_zero_count() {
        for n in [1, 3, 8] {
            let ps = det_pencil_zeros(n, &RngStream::new(5).split(n as u64)).unwrap();
            assert_eq!(ps.total(), n);
        }
    }

    #[test]
    fn pencil_with_singular_a() {
        let a = CMat::from_rows(2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let b = CMat::from_rows(2, vec![c(2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(3.0, 0.0)]);
        let ps = pencil_zeros(&a, &b).unwrap();
        assert_eq!(ps.at_infinity, 1);
        // det(zA - B) = (z - 2)(-3) - 1 = 0 at z = 5/3
        assert!((ps.points[0].z - c(5.0 / 3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn matrix_series_linear_example() {
        let mats = vec![
            CMat::identity(2),
            CMat::from_rows(
                2,
                vec![c(-2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-2.0, 0.0)],
            ),
        ];
        let ps = linearized_zeros(&mats, DomainTag::Disk, 0.9, 1e-6).unwrap();
        assert_eq!(ps.total(), 2);
        for p in &ps.points {
            assert!((p.z - c(0.5, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn matrix_series_methods_agree() {
        let spec = MatrixSeriesSpec::hyperbolic(2);
        let opts = ZeroOptions::default();
        for i in 0..5 {
            let st = RngStream::new(77).split(i);
            let a = matrix_series_zeros(
                &spec,
                &st,
                0.6,
                1e-10,
                MatrixSeriesMethod::Linearization,
                &opts,
            )
            .unwrap();
            let b = matrix_series_zeros(
                &spec,
                &st,
                0.6,
                1e-10,
                MatrixSeriesMethod::DeterminantSeries,
                &opts,
            )
            .unwrap();
            assert_eq!(a.total(), b.total());
            for p in &a.points {
                assert!(b.points.iter().any(|q| (q.z - p.z).norm() < 1e-7));
            }
        }
    }

    #[test]
    fn tail_overflow_rejected() {
        let spec = PolygafSpec::new(HomPoly::product(2), GafSpec::plane(1.0)).unwrap();
        let comps = sample_components(&spec, &mut RngStream::new(3).rng(), 1.0, 1e-4).unwrap();
        assert!(matches!(
            polygaf_series_with_cap(&spec.q, &comps, 1e-12),
            Err(Error::TailBoundOverflow { .. })
        ));
    }
}
