//! Dense univariate polynomials over the rationals, Sturm sequences and exact
//! real-root isolation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::{self, Rational};

/// Coefficients stored lowest degree first; no trailing zeros, so the zero
/// polynomial has an empty coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rational::int(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divides by the leading coefficient. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => Poly::zero(),
        }
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&d| d >= dd) else {
            return (Poly::zero(), self.clone());
        };
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Strict upper bound on the absolute value of every complex root
    /// (`1 + max |a_i / a_n|`). Constant polynomials get bound 1.
    pub fn cauchy_bound(&self) -> Rational {
        let Some(lc) = self.leading() else {
            return Rational::one();
        };
        let max = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| (c / lc).abs())
            .max()
            .unwrap_or_else(Rational::zero);
        max + Rational::one()
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(rational::to_f64).collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if k == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

/// Sturm sequence `p, p', -rem(p, p'), ...`. Each remainder is rescaled by a
/// positive constant, which leaves every sign pattern unchanged.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    polys: Vec<Poly>,
}

impl SturmSequence {
    pub fn new(p: &Poly) -> Self {
        let mut polys = vec![p.clone()];
        let d = p.derivative();
        if !d.is_zero() {
            polys.push(d);
        }
        while polys.len() >= 2 {
            let k = polys.len();
            let (_, r) = polys[k - 2].div_rem(&polys[k - 1]);
            if r.is_zero() {
                break;
            }
            let scale = r.leading().unwrap().abs().recip();
            polys.push(-&r.scale(&scale));
        }
        SturmSequence { polys }
    }

    pub fn polys(&self) -> &[Poly] {
        &self.polys
    }

    fn count_changes(signs: impl Iterator<Item = i32>) -> usize {
        let mut last = 0;
        let mut changes = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    /// Sign variations at a finite point, zeros skipped.
    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::count_changes(self.polys.iter().map(|p| rational::sign(&p.eval(x))))
    }

    pub fn variations_at_pos_infinity(&self) -> usize {
        Self::count_changes(
            self.polys
                .iter()
                .map(|p| p.leading().map_or(0, rational::sign)),
        )
    }

    pub fn variations_at_neg_infinity(&self) -> usize {
        Self::count_changes(self.polys.iter().map(|p| {
            let s = p.leading().map_or(0, rational::sign);
            if p.degree().unwrap_or(0) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_in(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    pub fn count_real_roots(&self) -> usize {
        self.variations_at_neg_infinity()
            .saturating_sub(self.variations_at_pos_infinity())
    }
}

/// Location of one real root of a squarefree polynomial.
///
/// `Interval` always satisfies `p(lo) * p(hi) < 0` with exactly one root in
/// the open interval `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealRoot {
    Exact(Rational),
    Interval { lo: Rational, hi: Rational },
}

impl RealRoot {
    pub fn lower(&self) -> &Rational {
        match self {
            RealRoot::Exact(x) => x,
            RealRoot::Interval { lo, .. } => lo,
        }
    }

    pub fn upper(&self) -> &Rational {
        match self {
            RealRoot::Exact(x) => x,
            RealRoot::Interval { hi, .. } => hi,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            RealRoot::Exact(x) => Some(x),
            RealRoot::Interval { .. } => None,
        }
    }

    pub fn width(&self) -> Rational {
        self.upper() - self.lower()
    }

    /// Bisects until the interval is narrower than `width` or the root is hit exactly.
    pub fn refine(&self, p: &Poly, width: &Rational) -> RealRoot {
        let mut cur = self.clone();
        while let RealRoot::Interval { lo, hi } = &cur {
            if &(hi - lo) < width {
                break;
            }
            let mid = (lo + hi) / rational::int(2);
            let s_mid = rational::sign(&p.eval(&mid));
            if s_mid == 0 {
                cur = RealRoot::Exact(mid);
            } else if s_mid == rational::sign(&p.eval(lo)) {
                cur = RealRoot::Interval { lo: mid, hi: hi.clone() };
            } else {
                cur = RealRoot::Interval { lo: lo.clone(), hi: mid };
            }
        }
        cur
    }

    /// Midpoint approximation.
    pub fn approx(&self) -> f64 {
        rational::to_f64(&((self.lower() + self.upper()) / rational::int(2)))
    }
}

impl fmt::Display for RealRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealRoot::Exact(x) => write!(f, "{x}"),
            RealRoot::Interval { lo, hi } => write!(f, "({lo}, {hi})"),
        }
    }
}

/// Isolates every real root of a squarefree polynomial, in increasing order.
///
/// Closures of consecutive isolating intervals never overlap: the upper end of
/// one root is at most the lower end of the next, and equality only happens at
/// a non-root, so the midpoint of that gap is strictly between the two roots.
pub fn isolate_real_roots(p: &Poly) -> Vec<RealRoot> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sturm = SturmSequence::new(p);
    let bound = p.cauchy_bound();
    let lo = -bound.clone();
    let total = sturm.count_in(&lo, &bound);
    let mut out = Vec::with_capacity(total);
    // Explicit stack of (lo, hi, count), processed left to right.
    let mut stack = vec![(lo, bound, total)];
    while let Some((a, b, count)) = stack.pop() {
        if count == 0 {
            continue;
        }
        let pa = p.eval(&a);
        if count == 1 && !pa.is_zero() {
            let pb = p.eval(&b);
            if pb.is_zero() {
                out.push(RealRoot::Exact(b));
            } else {
                out.push(RealRoot::Interval { lo: a, hi: b });
            }
            continue;
        }
        let mid = (&a + &b) / rational::int(2);
        let left = sturm.count_in(&a, &mid);
        stack.push((mid.clone(), b, count - left));
        stack.push((a, mid, left));
    }
    out
}

/// The rational with the smallest denominator in `[a, b]`, for `a <= b`.
pub fn simplest_between(a: &Rational, b: &Rational) -> Rational {
    debug_assert!(a <= b);
    let fl = a.floor();
    if &fl == a {
        return fl;
    }
    let c = a.ceil();
    if &c <= b {
        return c;
    }
    let inner = simplest_between(&(b - &fl).recip(), &(a - &fl).recip());
    fl + inner.recip()
}

/// Replaces an isolating interval by its root when the simplest rational in
/// it is a root.
pub fn snap_rational(p: &Poly, root: RealRoot) -> RealRoot {
    match &root {
        RealRoot::Interval { lo, hi } => {
            let q = simplest_between(lo, hi);
            if p.eval(&q).is_zero() {
                RealRoot::Exact(q)
            } else {
                root
            }
        }
        RealRoot::Exact(_) => root,
    }
}

/// A rational strictly between two consecutive isolated roots.
pub fn separating_point(left: &RealRoot, right: &RealRoot) -> Rational {
    (left.upper() + right.lower()) / rational::int(2)
}
