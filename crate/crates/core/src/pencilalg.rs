//! Pencils of quadratic forms: the determinant binary form, smoothness,
//! degeneracy points and the signature walk around the real pencil circle.
//!
//! The circle of forms `s F1 + t F2` is traversed counterclockwise starting just
//! after `(s, t) = (0, -1)`. On the half `s > 0` the affine coordinate
//! `u = t / s` increases from `-inf` to `inf`; the point `(0, 1)` closes that half,
//! and the second half repeats the first with every form negated.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{isolate_real_roots, separating_point, snap_rational, Poly, RealRoot};
use crate::qform::{QuadraticForm, Signature};
use crate::rational::{self, Rational};

/// Two forms of size `2n+3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pencil {
    n: usize,
    f1: QuadraticForm,
    f2: QuadraticForm,
}

impl Pencil {
    pub fn new(n: usize, f1: QuadraticForm, f2: QuadraticForm) -> Result<Self> {
        if n < 1 {
            return Err(Error::UnsupportedDimension(n as i64));
        }
        let m = 2 * n + 3;
        for f in [&f1, &f2] {
            if f.dim() != m {
                return Err(Error::DimensionMismatch { expected: m, found: f.dim() });
            }
        }
        Ok(Pencil { n, f1, f2 })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        2 * self.n + 3
    }

    pub fn f1(&self) -> &QuadraticForm {
        &self.f1
    }

    pub fn f2(&self) -> &QuadraticForm {
        &self.f2
    }

    /// The member `s F1 + t F2`.
    pub fn member(&self, s: &Rational, t: &Rational) -> QuadraticForm {
        self.f1.combine(s, &self.f2, t).expect("forms share a dimension")
    }

    /// Applies the same congruence to both forms.
    pub fn congruence(&self, a: &Matrix) -> Result<Pencil> {
        Ok(Pencil {
            n: self.n,
            f1: crate::qform::congruence(&self.f1, a)?,
            f2: crate::qform::congruence(&self.f2, a)?,
        })
    }

    /// The pencil spanned by `a F1 + b F2` and `c F1 + d F2`.
    pub fn reparametrize(&self, a: &Rational, b: &Rational, c: &Rational, d: &Rational) -> Result<Pencil> {
        if (a * d - b * c).is_zero() {
            return Err(Error::SingularTransform);
        }
        Ok(Pencil { n: self.n, f1: self.member(a, b), f2: self.member(c, d) })
    }
}

/// `det(s F1 + t F2) = sum_k coeffs[k] s^(m-k) t^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetBinaryForm {
    m: usize,
    coeffs: Vec<Rational>,
}

impl DetBinaryForm {
    pub fn new(m: usize, mut coeffs: Vec<Rational>) -> Self {
        coeffs.resize(m + 1, Rational::zero());
        DetBinaryForm { m, coeffs }
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Dehomogenisation at `s = 1`, as a polynomial in `u = t/s`.
    pub fn affine(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }

    pub fn eval(&self, s: &Rational, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            acc += c * pow(s, self.m - k) * pow(t, k);
        }
        acc
    }

    /// True when `(0 : 1)` is a root, i.e. `det F2 = 0`.
    pub fn vanishes_at_infinity(&self) -> bool {
        self.coeffs[self.m].is_zero()
    }
}

fn pow(x: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * x)
}

/// Fraction-free elimination over `Q[u]` on the matrix `F1 + u F2`.
pub fn det_binary_form(p: &Pencil) -> DetBinaryForm {
    let m = p.m();
    let mut a: Vec<Vec<Poly>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| Poly::new(vec![p.f1.matrix().get(i, j).clone(), p.f2.matrix().get(i, j).clone()]))
                .collect()
        })
        .collect();
    let mut prev = Poly::constant(Rational::one());
    let mut negate = false;
    for k in 0..m {
        let Some(piv) = (k..m).find(|&i| !a[i][k].is_zero()) else {
            return DetBinaryForm::new(m, Vec::new());
        };
        if piv != k {
            a.swap(piv, k);
            negate = !negate;
        }
        for i in k + 1..m {
            for j in k + 1..m {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero(), "inexact division in fraction-free elimination");
                a[i][j] = q;
            }
            a[i][k] = Poly::zero();
        }
        prev = a[k][k].clone();
    }
    let det = if negate { -&prev } else { prev };
    DetBinaryForm::new(m, det.coeffs().to_vec())
}

/// Accepts exactly the squarefree binary forms. A root at infinity shows up as
/// a drop in the affine degree and must be simple.
pub fn check_smooth(d: &DetBinaryForm) -> Result<()> {
    let p = d.affine();
    let Some(deg) = p.degree() else {
        return Err(Error::SingularIntersection);
    };
    if d.m - deg > 1 || !p.is_squarefree() {
        return Err(Error::SingularIntersection);
    }
    Ok(())
}

/// A real root of the determinant form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RootLocation {
    /// `u = t/s` is exactly this rational.
    Exact {
        #[serde(with = "rational::serde_str")]
        u: Rational,
    },
    /// `u = t/s` lies strictly between the endpoints.
    Interval {
        #[serde(with = "rational::serde_str")]
        lo: Rational,
        #[serde(with = "rational::serde_str")]
        hi: Rational,
    },
    /// The point `(s : t) = (0 : 1)`.
    Infinity,
}

impl RootLocation {
    /// Floating approximation of `u`, infinite for the point at infinity.
    pub fn approx(&self) -> f64 {
        match self {
            RootLocation::Exact { u } => rational::to_f64(u),
            RootLocation::Interval { lo, hi } => rational::to_f64(&((lo + hi) / rational::int(2))),
            RootLocation::Infinity => f64::INFINITY,
        }
    }

    pub fn contains_approx(&self, x: f64) -> bool {
        match self {
            RootLocation::Exact { u } => rational::to_f64(u) == x,
            RootLocation::Interval { lo, hi } => rational::to_f64(lo) <= x && x <= rational::to_f64(hi),
            RootLocation::Infinity => x.is_infinite(),
        }
    }
}

impl From<RealRoot> for RootLocation {
    fn from(r: RealRoot) -> Self {
        match r {
            RealRoot::Exact(u) => RootLocation::Exact { u },
            RealRoot::Interval { lo, hi } => RootLocation::Interval { lo, hi },
        }
    }
}

impl fmt::Display for RootLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootLocation::Exact { u } => write!(f, "u = {u}"),
            RootLocation::Interval { lo, hi } => write!(f, "u in ({lo}, {hi})"),
            RootLocation::Infinity => write!(f, "(s:t) = (0:1)"),
        }
    }
}

/// Real roots in counterclockwise order: finite roots by increasing `u`, then
/// the root at infinity if there is one.
pub fn isolate_real_points(d: &DetBinaryForm) -> Vec<RootLocation> {
    let p = d.affine();
    let width = rational::frac(1, 1024);
    let mut out: Vec<RootLocation> =
        isolate_real_roots(&p).into_iter().map(|r| snap_rational(&p, r.refine(&p, &width)).into()).collect();
    if d.vanishes_at_infinity() {
        out.push(RootLocation::Infinity);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegeneracyPoint {
    pub root: RootLocation,
    pub singular_signature: Signature,
}

/// One crossing of the discriminant on the first half circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    pub singular: Signature,
    /// +1 when `pos` increases through the point, -1 when it decreases.
    pub direction: i8,
}

/// Arc signatures around the circle of forms.
///
/// Only the first half circle is stored: `arcs[k]` is the arc just before the
/// k-th degeneracy point, and the arc after the last point is the flip of
/// `arcs[0]`. The second half is obtained by flipping every signature.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignatureProfile {
    n: usize,
    arcs: Vec<Signature>,
}

impl SignatureProfile {
    pub fn new(n: usize, arcs: Vec<Signature>) -> Result<Self> {
        let prof = SignatureProfile { n, arcs };
        prof.validate()?;
        Ok(prof)
    }

    /// Builds a profile from the `(pos, neg)` pairs of the first-half arcs.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        SignatureProfile::new(n, arcs.iter().map(|&(p, q)| Signature::new(p, q, 0)).collect())
    }

    /// Builds a profile from the `(pos, neg)` pairs of the singular members met
    /// on the first half circle. Each point fixes its two neighbouring arcs up
    /// to order; the first consistent choice with the smaller initial `pos` wins.
    pub fn from_point_signatures(n: usize, points: &[(usize, usize)]) -> Result<Self> {
        let m = 2 * n + 3;
        let Some(&(p0, q0)) = points.first() else {
            return Err(Error::InvalidProfile("no degeneracy points".into()));
        };
        if let Some(&(p, q)) = points.iter().find(|&&(p, q)| p + q + 1 != m) {
            return Err(Error::InvalidProfile(format!("point signature ({p},{q}) does not have rank {}", m - 1)));
        }
        let mut last_err = None;
        for start in [(p0, q0 + 1), (p0 + 1, q0)] {
            let mut arcs = vec![start];
            let mut ok = true;
            for &(p, q) in &points[..points.len() - 1] {
                let cur = *arcs.last().unwrap();
                let next = match cur {
                    c if c == (p, q + 1) => (p + 1, q),
                    c if c == (p + 1, q) => (p, q + 1),
                    _ => {
                        ok = false;
                        break;
                    }
                };
                arcs.push(next);
            }
            if !ok {
                continue;
            }
            match SignatureProfile::from_arcs(n, &arcs) {
                Ok(prof) if prof.point_signatures() == points => return Ok(prof),
                Ok(_) => last_err = Some(Error::InvalidProfile("point signatures are inconsistent".into())),
                Err(e) => last_err = Some(e),
            }
        }
        Err(last_err.unwrap_or_else(|| Error::InvalidProfile("point signatures are inconsistent".into())))
    }

    fn validate(&self) -> Result<()> {
        let m = self.m();
        let r = self.arcs.len();
        if r == 0 {
            return Err(Error::InvalidProfile("no arcs".into()));
        }
        if r.is_multiple_of(2) || r > m {
            return Err(Error::InvalidProfile(format!("{r} degeneracy points for m = {m}")));
        }
        for s in &self.arcs {
            if s.null != 0 || s.pos + s.neg != m {
                return Err(Error::InvalidProfile(format!("arc signature {s} is not nondegenerate of size {m}")));
            }
        }
        for k in 0..r {
            let (a, b) = (self.arc(k), self.arc(k + 1));
            if a.pos.abs_diff(b.pos) != 1 {
                return Err(Error::InvalidProfile(format!("arcs {a} and {b} are not adjacent")));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        2 * self.n + 3
    }

    /// Number of real degeneracy points.
    pub fn r(&self) -> usize {
        self.arcs.len()
    }

    pub fn half_arcs(&self) -> &[Signature] {
        &self.arcs
    }

    /// Arc `k` on the full circle, any integer index taken modulo `2r`.
    pub fn arc(&self, k: usize) -> Signature {
        let r = self.r();
        let k = k % (2 * r);
        if k < r {
            self.arcs[k]
        } else {
            self.arcs[k - r].flip()
        }
    }

    pub fn full_arcs(&self) -> Vec<Signature> {
        (0..2 * self.r()).map(|k| self.arc(k)).collect()
    }

    /// Singular signature at point `k` of the full circle: the componentwise
    /// minimum of its two neighbouring arcs.
    pub fn point(&self, k: usize) -> PointRecord {
        let (a, b) = (self.arc(k), self.arc(k + 1));
        PointRecord {
            singular: Signature::new(a.pos.min(b.pos), a.neg.min(b.neg), 1),
            direction: if b.pos > a.pos { 1 } else { -1 },
        }
    }

    pub fn points(&self) -> Vec<PointRecord> {
        (0..self.r()).map(|k| self.point(k)).collect()
    }

    /// `(pos, neg)` of each singular member on the first half circle.
    pub fn point_signatures(&self) -> Vec<(usize, usize)> {
        self.points().iter().map(|p| (p.singular.pos, p.singular.neg)).collect()
    }

    /// Crossing directions at all `2r` points of the full circle.
    pub fn labels(&self) -> Vec<i8> {
        (0..2 * self.r()).map(|k| self.point(k).direction).collect()
    }

    /// The same circle with point `k` moved to the front.
    pub fn rotate(&self, k: usize) -> SignatureProfile {
        let arcs = (0..self.r()).map(|j| self.arc(j + k)).collect();
        SignatureProfile { n: self.n, arcs }
    }

    /// The circle traversed clockwise.
    pub fn reverse(&self) -> SignatureProfile {
        let r2 = 2 * self.r();
        let arcs = (0..self.r()).map(|j| self.arc(r2 - 1 - j)).collect();
        SignatureProfile { n: self.n, arcs }
    }

    /// True when every antipodal pair of arcs has flipped signatures and the
    /// crossing directions sum to zero around the circle.
    pub fn is_antipodally_consistent(&self) -> bool {
        let r = self.r();
        (0..2 * r).all(|k| self.arc(k + r) == self.arc(k).flip())
            && self.labels().iter().map(|&d| d as i64).sum::<i64>() == 0
    }
}

impl fmt::Display for SignatureProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.full_arcs().iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Everything computed from a pencil before any combinatorics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilAnalysis {
    pub det_form: DetBinaryForm,
    pub points: Vec<DegeneracyPoint>,
    pub profile: SignatureProfile,
}

impl PencilAnalysis {
    /// Number of complex conjugate pairs of degeneracy points.
    pub fn complex_pairs(&self) -> usize {
        (self.det_form.degree() - self.points.len()) / 2
    }
}

pub fn signature_walk(p: &Pencil) -> Result<SignatureProfile> {
    analyze(p).map(|a| a.profile)
}

pub fn analyze(p: &Pencil) -> Result<PencilAnalysis> {
    let det_form = det_binary_form(p);
    check_smooth(&det_form)?;
    let roots = isolate_real_points(&det_form);
    let finite: Vec<RealRoot> = isolate_real_roots(&det_form.affine());
    let bound = det_form.affine().cauchy_bound() + Rational::one();

    let mut samples = vec![-bound.clone()];
    samples.extend(finite.windows(2).map(|w| separating_point(&w[0], &w[1])));
    samples.push(bound);
    let one = Rational::one();
    let mut arcs: Vec<Signature> = samples.iter().map(|u| p.member(&one, u).signature()).collect();
    if !det_form.vanishes_at_infinity() {
        // The arc after the last finite root wraps through (0:1) into the
        // second half, where it must be the flip of the first arc.
        let last = arcs.pop().unwrap();
        if last != arcs[0].flip() {
            return Err(Error::InvalidProfile("outer arcs are not antipodal".into()));
        }
    }
    let profile = SignatureProfile::new(p.n(), arcs)?;

    let mut points = Vec::with_capacity(roots.len());
    for (k, root) in roots.into_iter().enumerate() {
        let singular = profile.point(k).singular;
        let exact = match &root {
            RootLocation::Exact { u } => Some(p.member(&one, u).signature()),
            RootLocation::Infinity => Some(p.f2().signature()),
            RootLocation::Interval { .. } => None,
        };
        if let Some(sig) = exact {
            if sig != singular {
                return Err(Error::InvalidProfile(format!(
                    "singular member at {root} has signature {sig}, expected {singular}"
                )));
            }
        }
        points.push(DegeneracyPoint { root, singular_signature: singular });
    }
    Ok(PencilAnalysis { det_form, points, profile })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn diag_pencil(a: &[i64]) -> Pencil {
        let n = (a.len() - 3) / 2;
        Pencil::new(
            n,
            QuadraticForm::diagonal(a.iter().map(|&v| int(v)).collect()),
            QuadraticForm::identity(a.len()),
        )
        .unwrap()
    }

    #[test]
    fn diagonal_determinant_is_product_of_linear_factors() {
        let p = diag_pencil(&[1, 2, 3, 4, 5]);
        let d = det_binary_form(&p);
        let expected = [1, 2, 3, 4, 5]
            .iter()
            .fold(Poly::constant(int(1)), |acc, &a| &acc * &Poly::from_i64(&[a, 1]));
        assert_eq!(d.affine(), expected);
        assert!(check_smooth(&d).is_ok());
        let roots = isolate_real_points(&d);
        assert_eq!(roots.len(), 5);
        for (root, v) in roots.iter().zip((1..=5).rev()) {
            let x = int(-v);
            let inside = match root {
                RootLocation::Exact { u } => *u == x,
                RootLocation::Interval { lo, hi } => *lo < x && x < *hi,
                RootLocation::Infinity => false,
            };
            assert!(inside, "{root} does not isolate {x}");
        }
    }

    #[test]
    fn zero_form_is_singular() {
        let p = Pencil::new(1, QuadraticForm::diagonal(vec![int(0); 5]), QuadraticForm::identity(5)).unwrap();
        let d = det_binary_form(&p);
        assert_eq!(d.coeffs()[5], int(1));
        assert!(d.coeffs()[..5].iter().all(Zero::is_zero));
        assert_eq!(check_smooth(&d), Err(Error::SingularIntersection));
    }

    #[test]
    fn repeated_root_is_singular() {
        let p = diag_pencil(&[1, 1, 3, 4, 5]);
        assert_eq!(check_smooth(&det_binary_form(&p)), Err(Error::SingularIntersection));
    }

    #[test]
    fn definite_member_gives_definite_arc() {
        let prof = signature_walk(&diag_pencil(&[1, 2, 3, 4, 5, 6, 7])).unwrap();
        assert_eq!(prof.r(), 7);
        assert!(prof.full_arcs().iter().any(|s| s.pos == 7));
        assert!(prof.is_antipodally_consistent());
    }

    #[test]
    fn root_at_infinity_closes_the_first_half() {
        // F2 singular: det F2 = 0.
        let f1 = QuadraticForm::diagonal(vec![int(1), int(1), int(1), int(1), int(1)]);
        let f2 = QuadraticForm::diagonal(vec![int(0), int(1), int(2), int(-1), int(-2)]);
        let p = Pencil::new(1, f1, f2).unwrap();
        let a = analyze(&p).unwrap();
        assert_eq!(a.points.len(), 5);
        assert_eq!(a.points.last().unwrap().root, RootLocation::Infinity);
        assert_eq!(a.points.last().unwrap().singular_signature, p.f2().signature());
    }

    #[test]
    fn del_pezzo_point_signatures() {
        let prof = SignatureProfile::from_point_signatures(1, &[(0, 4), (1, 3), (2, 2), (3, 1), (4, 0)]).unwrap();
        assert_eq!(prof.half_arcs()[0], Signature::new(0, 5, 0));
        assert_eq!(prof.labels(), vec![1, 1, 1, 1, 1, -1, -1, -1, -1, -1]);
        let prof = SignatureProfile::from_point_signatures(1, &[(1, 3), (2, 2), (2, 2), (2, 2), (3, 1)]).unwrap();
        assert_eq!(prof.labels(), vec![1, 1, -1, 1, 1, -1, -1, 1, -1, -1]);
    }

    #[test]
    fn rejects_inconsistent_arcs() {
        assert!(SignatureProfile::from_arcs(1, &[(0, 5), (2, 3), (3, 2)]).is_err());
        assert!(SignatureProfile::from_arcs(1, &[(0, 5), (1, 4)]).is_err());
        assert!(SignatureProfile::from_point_signatures(1, &[(0, 4), (3, 1), (2, 2)]).is_err());
    }

    #[test]
    fn rotation_and_reversal_preserve_consistency() {
        let prof = SignatureProfile::from_point_signatures(1, &[(1, 3), (2, 2), (2, 2), (2, 2), (3, 1)]).unwrap();
        for k in 0..10 {
            assert!(prof.rotate(k).is_antipodally_consistent());
        }
        assert!(prof.reverse().is_antipodally_consistent());
        assert_eq!(prof.reverse().reverse(), prof);
        assert_eq!(prof.rotate(5), SignatureProfile::new(1, prof.half_arcs().iter().map(Signature::flip).collect()).unwrap());
    }
}
