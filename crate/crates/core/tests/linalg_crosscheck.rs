//! Eigenvalue and QZ solvers against nalgebra's complex Schur decomposition.

use gafzeros::linalg::{eigenvalues, generalized_eigenvalues, poly_roots, CMat, RootMethod};
use gafzeros::rng::{sample_complex_gaussian, RngStream};
use gafzeros::Complex64;
use nalgebra::{DMatrix, Schur};

fn to_na(m: &CMat) -> DMatrix<Complex64> {
    DMatrix::from_row_slice(m.n, m.n, &m.a)
}

// greedy matching distance between two multisets of points
fn match_error(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

#[test]
fn eigenvalues_match_nalgebra() {
    let root = RngStream::new(100);
    for (i, n) in [1usize, 2, 3, 5, 8, 16, 30].into_iter().enumerate() {
        let m = CMat::from_rows(n, sample_complex_gaussian(&root.split(i as u64), n * n));
        let ours = eigenvalues(&m).unwrap();
        let theirs: Vec<Complex64> = Schur::new(to_na(&m)).eigenvalues().unwrap().iter().copied().collect();
        let err = match_error(&ours, &theirs);
        assert!(err < 1e-9 * (n as f64).sqrt() * 10.0, "n = {n}: {err}");
    }
}

#[test]
fn generalized_eigenvalues_match_nalgebra() {
    let root = RngStream::new(101);
    for (i, n) in [1usize, 2, 4, 8, 12].into_iter().enumerate() {
        let s = root.split(i as u64);
        let a = CMat::from_rows(n, sample_complex_gaussian(&s.split(0), n * n));
        let b = CMat::from_rows(n, sample_complex_gaussian(&s.split(1), n * n));
        let ours: Vec<Complex64> = generalized_eigenvalues(&a, &b).unwrap().iter().map(|e| e.value().unwrap()).collect();
        // A - lambda B: eigenvalues of B^{-1} A
        let binv = to_na(&b).try_inverse().unwrap();
        let theirs: Vec<Complex64> = Schur::new(binv * to_na(&a)).eigenvalues().unwrap().iter().copied().collect();
        let scale = theirs.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let err = match_error(&ours, &theirs);
        assert!(err < 1e-7 * scale, "n = {n}: {err}");
    }
}

#[test]
fn polynomial_roots_match_companion_eigenvalues() {
    let root = RngStream::new(102);
    for (i, deg) in [3usize, 10, 25, 40].into_iter().enumerate() {
        let c = sample_complex_gaussian(&root.split(i as u64), deg + 1);
        // companion matrix of the monic polynomial
        let lead = c[deg];
        let mut comp = DMatrix::<Complex64>::zeros(deg, deg);
        for j in 0..deg {
            comp[(0, j)] = -c[deg - 1 - j] / lead;
        }
        for j in 1..deg {
            comp[(j, j - 1)] = Complex64::new(1.0, 0.0);
        }
        let theirs: Vec<Complex64> = Schur::new(comp).eigenvalues().unwrap().iter().copied().collect();
        for method in [RootMethod::Aberth, RootMethod::Companion] {
            let ours = poly_roots(&c, method).unwrap();
            let err = match_error(&ours, &theirs);
            assert!(err < 1e-8, "degree {deg} {method:?}: {err}");
        }
    }
}
