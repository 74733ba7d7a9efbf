#![allow(clippy::needless_range_loop)]

use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use quadpencil::pencilalg::{self, Pencil, RootLocation};
use quadpencil::rational::{self, frac, int};
use quadpencil::{Matrix, QuadraticForm, Rational, Signature};

const TOL: f64 = 1e-6;

fn random_rational(rng: &mut StdRng) -> Rational {
    frac(rng.gen_range(-9..=9), rng.gen_range(1..=4))
}

fn random_symmetric(rng: &mut StdRng, dim: usize) -> Vec<Vec<Rational>> {
    let mut rows = vec![vec![int(0); dim]; dim];
    for i in 0..dim {
        for j in i..dim {
            let v = random_rational(rng);
            rows[i][j] = v.clone();
            rows[j][i] = v;
        }
    }
    rows
}

fn to_dmatrix(rows: &[Vec<Rational>]) -> DMatrix<f64> {
    let d = rows.len();
    DMatrix::from_fn(d, d, |i, j| rational::to_f64(&rows[i][j]))
}

fn float_signature(m: &DMatrix<f64>, zero: f64) -> Signature {
    let eig = SymmetricEigen::new(m.clone()).eigenvalues;
    let pos = eig.iter().filter(|&&x| x > zero).count();
    let neg = eig.iter().filter(|&&x| x < -zero).count();
    Signature::new(pos, neg, eig.len() - pos - neg)
}

#[test]
fn signatures_agree_with_float_eigenvalues() {
    let mut rng = StdRng::seed_from_u64(11);
    for dim in [7usize, 9] {
        let mut accepted = 0;
        while accepted < 100 {
            let rows = random_symmetric(&mut rng, dim);
            let fm = to_dmatrix(&rows);
            let eig = SymmetricEigen::new(fm.clone()).eigenvalues;
            if eig.iter().any(|x| x.abs() < 1e-3) {
                continue;
            }
            accepted += 1;
            let q = QuadraticForm::from_rows(rows).unwrap();
            assert_eq!(q.signature(), float_signature(&fm, 0.0));
        }
    }
}

#[test]
fn degenerate_signatures_agree_with_float_eigenvalues() {
    // B^T D B with zeros on D has an exact kernel.
    let mut rng = StdRng::seed_from_u64(12);
    for _ in 0..100 {
        let dim = 7;
        let b: Vec<Vec<i64>> = (0..dim).map(|_| (0..dim).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let bm = Matrix::from_i64(&b).unwrap();
        if bm.det().is_zero() {
            continue;
        }
        let d: Vec<Rational> = (0..dim).map(|_| int(rng.gen_range(-2..=2))).collect();
        let q = QuadraticForm::diagonal(d.clone());
        let c = quadpencil::congruence(&q, &bm).unwrap();
        let fm = to_dmatrix(c.rows());
        let scale = fm.iter().fold(1.0f64, |a, &x| a.max(x.abs()));
        assert_eq!(c.signature(), float_signature(&fm, 1e-9 * scale * dim as f64));
        let expect = Signature::new(
            d.iter().filter(|x| x.is_positive()).count(),
            d.iter().filter(|x| x.is_negative()).count(),
            d.iter().filter(|x| x.is_zero()).count(),
        );
        assert_eq!(c.signature(), expect);
    }
}

fn random_pencil(rng: &mut StdRng, n: usize) -> Pencil {
    let m = 2 * n + 3;
    Pencil::new(
        n,
        QuadraticForm::from_rows(random_symmetric(rng, m)).unwrap(),
        QuadraticForm::from_rows(random_symmetric(rng, m)).unwrap(),
    )
    .unwrap()
}

/// Determinant by plain Gaussian elimination over Q.
fn gauss_det(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let v = &f * &a[c][k];
                a[r][k] -= v;
            }
        }
    }
    det
}

#[test]
fn determinant_form_matches_interpolation_points() {
    let mut rng = StdRng::seed_from_u64(13);
    for n in 1..=2 {
        for _ in 0..20 {
            let p = random_pencil(&mut rng, n);
            let d = pencilalg::det_binary_form(&p);
            assert_eq!(d.degree(), p.m());
            for (s, t) in [(1, 0), (0, 1), (1, 1), (2, -1), (3, 5), (-4, 7), (1, -3), (5, 2)] {
                let (s, t) = (int(s), int(t));
                let member = p.member(&s, &t);
                assert_eq!(d.eval(&s, &t), gauss_det(member.rows().to_vec()));
            }
        }
    }
}

/// Resultant of p and p' via the Sylvester matrix; zero exactly when p has a repeated root.
fn discriminant_resultant(c: &[Rational]) -> Rational {
    let deg = c.len() - 1;
    let dc: Vec<Rational> = (1..=deg).map(|k| &c[k] * int(k as i64)).collect();
    let size = 2 * deg - 1;
    let mut rows = vec![vec![int(0); size]; size];
    let hi = |v: &[Rational]| v.iter().rev().cloned().collect::<Vec<_>>();
    let (ph, dh) = (hi(c), hi(&dc));
    for i in 0..deg - 1 {
        for (j, v) in ph.iter().enumerate() {
            rows[i][i + j] = v.clone();
        }
    }
    for i in 0..deg {
        for (j, v) in dh.iter().enumerate() {
            rows[deg - 1 + i][i + j] = v.clone();
        }
    }
    gauss_det(rows)
}

#[test]
fn smoothness_matches_resultant() {
    let mut rng = StdRng::seed_from_u64(14);
    let mut singular_seen = 0;
    for i in 0..120 {
        // Every third pencil gets a forced double root: diagonal with a repeated value.
        let p = if i % 3 == 0 {
            let m = 5;
            let mut roots: Vec<i64> = (0..m).map(|_| rng.gen_range(-3..=3)).collect();
            roots[1] = roots[0];
            let f1 = QuadraticForm::diagonal(roots.iter().map(|&u| int(-u)).collect());
            Pencil::new(1, f1, QuadraticForm::identity(m)).unwrap()
        } else {
            random_pencil(&mut rng, 1)
        };
        let d = pencilalg::det_binary_form(&p);
        let c = d.coeffs();
        // Affine polynomial in u = t/s, low to high, then the top coefficient governs infinity.
        let affine: Vec<Rational> = c.to_vec();
        let smooth_by_resultant = if c[c.len() - 1].is_zero() {
            // Root at infinity: simple iff the next coefficient is nonzero and the finite part is squarefree.
            let trimmed = &affine[..affine.len() - 1];
            !trimmed[trimmed.len() - 1].is_zero() && !discriminant_resultant(trimmed).is_zero()
        } else {
            !discriminant_resultant(&affine).is_zero()
        };
        let ok = pencilalg::check_smooth(&d).is_ok();
        assert_eq!(ok, smooth_by_resultant, "pencil {i}");
        if !ok {
            singular_seen += 1;
        }
    }
    assert!(singular_seen >= 40);
}

fn float_pencil_roots(p: &Pencil) -> Option<Vec<f64>> {
    // det(F1 + u F2) = 0 iff u is an eigenvalue of -F2^{-1} F1.
    let f1 = to_dmatrix(p.f1().rows());
    let f2 = to_dmatrix(p.f2().rows());
    let inv = f2.clone().try_inverse()?;
    if SymmetricEigen::new(f2).eigenvalues.iter().any(|x| x.abs() < 1e-2) {
        return None;
    }
    let a = -(inv * f1);
    let eig = a.complex_eigenvalues();
    let mut real = Vec::new();
    for z in eig.iter() {
        if z.im.abs() < 1e-9 {
            real.push(z.re);
        } else if z.im.abs() < 1e-3 {
            return None;
        }
    }
    real.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if real.windows(2).any(|w| w[1] - w[0] < 1e-3) {
        return None;
    }
    Some(real)
}

#[test]
fn root_isolation_and_walk_agree_with_float_oracle() {
    let mut rng = StdRng::seed_from_u64(15);
    let mut accepted = 0;
    while accepted < 100 {
        let n = 1 + accepted % 2;
        let p = random_pencil(&mut rng, n);
        let Some(float_roots) = float_pencil_roots(&p) else { continue };
        let Ok(analysis) = pencilalg::analyze(&p) else { continue };
        accepted += 1;
        let width = frac(1, 1 << 30);
        let exact: Vec<f64> = analysis
            .points
            .iter()
            .map(|pt| match &pt.root {
                RootLocation::Exact { u } => rational::to_f64(u),
                RootLocation::Interval { lo, hi } => {
                    let poly = analysis.det_form.affine();
                    quadpencil::poly::RealRoot::Interval { lo: lo.clone(), hi: hi.clone() }
                        .refine(&poly, &width)
                        .approx()
                }
                RootLocation::Infinity => f64::INFINITY,
            })
            .collect();
        assert_eq!(exact.len(), float_roots.len(), "root count");
        for (a, b) in exact.iter().zip(&float_roots) {
            assert!((a - b).abs() <= TOL * (1.0 + b.abs()), "{a} vs {b}");
        }
        // Float signatures on the arcs between the roots.
        let f1 = to_dmatrix(p.f1().rows());
        let f2 = to_dmatrix(p.f2().rows());
        let at = |u: f64| float_signature(&(&f1 + &f2 * u), 0.0);
        let mut samples = vec![float_roots[0] - 1.0];
        samples.extend(float_roots.windows(2).map(|w| (w[0] + w[1]) / 2.0));
        let prof = &analysis.profile;
        for (k, u) in samples.iter().enumerate() {
            assert_eq!(prof.arc(k), at(*u), "arc {k}");
        }
        assert_eq!(at(float_roots[float_roots.len() - 1] + 1.0), prof.arc(0).flip());
        assert!(prof.is_antipodally_consistent());
    }
}

#[test]
fn definite_fixture_class_is_the_full_chain() {
    for n in 1..=4 {
        let m = 2 * n + 3;
        let f1 = QuadraticForm::diagonal((0..m).map(|i| int(i as i64 * 3 - 7)).collect());
        let base = QuadraticForm::identity(m);
        let mut rng = StdRng::seed_from_u64(16 + n as u64);
        let a: Vec<Vec<i64>> =
            (0..m).map(|i| (0..m).map(|j| if i == j { 1 } else if j > i { rng.gen_range(-2..=2) } else { 0 }).collect()).collect();
        let a = Matrix::from_i64(&a).unwrap();
        let p = Pencil::new(n, quadpencil::congruence(&f1, &a).unwrap(), quadpencil::congruence(&base, &a).unwrap())
            .unwrap();
        let rep = quadpencil::classify_pencil(&p, "definite").unwrap();
        assert_eq!(rep.krasnov.canonical(), &[m]);
    }
}
