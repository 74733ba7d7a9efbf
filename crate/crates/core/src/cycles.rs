//! Middle cohomology classes in the span of `h^n` and `L_1, ..., L_m`, with
//! the intersection pairing `h^n . h^n = 4`, `h^n . L_i = 0` and
//! `L_i . L_j = (-1)^n delta_ij`.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::dlattice::WeightClass;
use crate::error::{Error, Result};
use crate::krasnov::WeylInvolution;
use crate::rational::{self, Rational};

/// `(h_quarters / 4) h^n + sum_i (l_halves[i] / 2) L_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycleClass {
    pub n: usize,
    pub h_quarters: i64,
    pub l_halves: Vec<i64>,
}

fn sign_n(n: usize) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl CycleClass {
    pub fn new(n: usize, h_quarters: i64, l_halves: Vec<i64>) -> Result<Self> {
        let m = 2 * n + 3;
        if l_halves.len() != m {
            return Err(Error::DimensionMismatch { expected: m, found: l_halves.len() });
        }
        Ok(CycleClass { n, h_quarters, l_halves })
    }

    pub fn m(&self) -> usize {
        self.l_halves.len()
    }

    pub fn zero(n: usize) -> Self {
        CycleClass { n, h_quarters: 0, l_halves: vec![0; 2 * n + 3] }
    }

    pub fn add(&self, other: &CycleClass) -> Result<CycleClass> {
        self.check(other)?;
        Ok(CycleClass {
            n: self.n,
            h_quarters: self.h_quarters + other.h_quarters,
            l_halves: self.l_halves.iter().zip(&other.l_halves).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, k: i64) -> CycleClass {
        CycleClass {
            n: self.n,
            h_quarters: self.h_quarters * k,
            l_halves: self.l_halves.iter().map(|v| v * k).collect(),
        }
    }

    pub fn sub(&self, other: &CycleClass) -> Result<CycleClass> {
        self.add(&other.scale(-1))
    }

    fn check(&self, other: &CycleClass) -> Result<()> {
        if self.n != other.n || self.m() != other.m() {
            return Err(Error::DimensionMismatch { expected: self.m(), found: other.m() });
        }
        Ok(())
    }

    /// `x . h^n`, which equals `h_quarters`.
    pub fn degree(&self) -> i64 {
        self.h_quarters
    }

    /// Whether the class lies in the lattice generated by `h^n`, the quadric
    /// classes and the plane classes of the given weight parity.
    pub fn is_integral(&self, plane_parity: u32) -> bool {
        let k = self.h_quarters;
        if self.l_halves.iter().any(|l| (l - k).rem_euclid(2) != 0) {
            return false;
        }
        let sum: i64 = self.l_halves.iter().sum();
        let shift = k * (2 * plane_parity as i64 - self.m() as i64);
        (sum - shift).rem_euclid(4) == 0
    }
}

impl fmt::Display for CycleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        let mut term = |c: Rational, name: String| {
            if c.is_zero() {
                return;
            }
            let neg = c < Rational::zero();
            let a = c.abs();
            if out.is_empty() {
                out.push_str(if neg { "-" } else { "" });
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !a.is_one() {
                out.push_str(&format!("{a} "));
            }
            out.push_str(&name);
        };
        term(rational::frac(self.h_quarters, 4), format!("h^{}", self.n));
        for (i, &l) in self.l_halves.iter().enumerate() {
            term(rational::frac(l, 2), format!("L{}", i + 1));
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

pub fn intersect(x: &CycleClass, y: &CycleClass) -> Result<Rational> {
    x.check(y)?;
    let l: i64 = x.l_halves.iter().zip(&y.l_halves).map(|(a, b)| a * b).sum();
    Ok(rational::frac(x.h_quarters * y.h_quarters + sign_n(x.n) * l, 4))
}

pub fn hyperplane_power(n: usize) -> CycleClass {
    CycleClass { n, h_quarters: 4, l_halves: vec![0; 2 * n + 3] }
}

/// `h/2 + sign * L_i` for a 1-based index `i`.
pub fn quadric_class(i: usize, sign: i8, n: usize) -> Result<CycleClass> {
    let m = 2 * n + 3;
    if i == 0 || i > m {
        return Err(Error::IndexOutOfRange { index: i, m });
    }
    let mut l = vec![0; m];
    l[i - 1] = if sign < 0 { -2 } else { 2 };
    Ok(CycleClass { n, h_quarters: 2, l_halves: l })
}

/// The residual class `h^n - x`.
pub fn residual(x: &CycleClass) -> CycleClass {
    hyperplane_power(x.n).sub(x).expect("same dimension")
}

/// `h/4 + w_I`.
pub fn plane_class(w: &WeightClass, n: usize) -> Result<CycleClass> {
    let m = 2 * n + 3;
    if w.m() != m {
        return Err(Error::DimensionMismatch { expected: m, found: w.m() });
    }
    Ok(CycleClass { n, h_quarters: 1, l_halves: w.signs() })
}

/// Self-intersection of the primitive part `x - (deg x / 4) h^n`.
pub fn primitive_square(x: &CycleClass) -> Rational {
    intersect(x, x).unwrap() - rational::frac(x.degree() * x.degree(), 4)
}

/// Plane self-intersection `(-1)^n (floor(n/2) + 1)`.
pub fn plane_self_intersection(n: usize) -> i64 {
    sign_n(n) * (n as i64 / 2 + 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub label: String,
    pub class: CycleClass,
    pub real_quadric: bool,
    /// 1-based index of the involution block, absent for `h^n`.
    pub block: Option<usize>,
}

/// `h^n` followed by `Q_i = h/2 + L_i` for every `+1` fixed index, bold
/// indices first, each group in index order.
pub fn invariant_basis(w: &WeylInvolution, n: usize) -> Result<Vec<BasisElement>> {
    let m = 2 * n + 3;
    if w.m() != m {
        return Err(Error::DimensionMismatch { expected: m, found: w.m() });
    }
    let mut out = vec![BasisElement {
        label: format!("h^{n}"),
        class: hyperplane_power(n),
        real_quadric: false,
        block: None,
    }];
    let fixed = w.plus_fixed();
    let ordered = fixed.iter().filter(|&&i| w.is_bold(i)).chain(fixed.iter().filter(|&&i| !w.is_bold(i)));
    for (k, &i) in ordered.enumerate() {
        out.push(BasisElement {
            label: format!("Q{}", k + 1),
            class: quadric_class(i + 1, 1, n)?,
            real_quadric: w.is_bold(i),
            block: Some(i + 1),
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramTable {
    pub labels: Vec<String>,
    #[serde(with = "rational::serde_matrix")]
    pub entries: Vec<Vec<Rational>>,
}

pub fn gram_table(basis: &[BasisElement]) -> Result<GramTable> {
    let labels = basis.iter().map(|b| b.label.clone()).collect();
    let entries = basis
        .iter()
        .map(|x| basis.iter().map(|y| intersect(&x.class, &y.class)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(GramTable { labels, entries })
}

impl GramTable {
    pub fn is_symmetric(&self) -> bool {
        let k = self.entries.len();
        (0..k).all(|i| (0..k).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("gram tables serialize")
    }
}

impl fmt::Display for GramTable {
    /// Right-aligned columns, a header row of labels, and a rule under it.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self.entries.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
        let lw = self.labels.iter().map(String::len).max().unwrap_or(0);
        let cw = self
            .labels
            .iter()
            .map(String::len)
            .chain(cells.iter().flatten().map(String::len))
            .max()
            .unwrap_or(1);
        let header: Vec<String> = self.labels.iter().map(|l| format!("{l:>cw$}")).collect();
        writeln!(f, "{:lw$} | {}", "", header.join(" "))?;
        writeln!(f, "{}-+-{}", "-".repeat(lw), "-".repeat(header.join(" ").len()))?;
        for (label, row) in self.labels.iter().zip(&cells) {
            let row: Vec<String> = row.iter().map(|c| format!("{c:>cw$}")).collect();
            writeln!(f, "{label:lw$} | {}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Bounds for [`decompose`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest admissible `|degree|`, i.e. four times the `h^n` coefficient.
    pub max_degree: i64,
    /// Largest number of nonzero `L` coefficients.
    pub max_support: usize,
    /// Largest `|2 b_i|` for an `L` coefficient `b_i`.
    pub max_coeff_halves: i64,
}

impl Budget {
    pub fn default_for(n: usize) -> Self {
        Budget { max_degree: 8, max_support: 2 * n + 3, max_coeff_halves: 4 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    /// Representative with signs chosen to make it integral.
    pub class: CycleClass,
    /// Weyl-canonical form: `|2 b_i|` sorted in decreasing order.
    pub canonical: Vec<i64>,
    /// The class written with `h^n`, quadric classes `Q_i = h/2 + L_i` and
    /// at most one plane class `P{I}`.
    pub expression: String,
}

/// Every class `(deg/4) h^n + sum b_i L_i` of the given degree and
/// self-intersection, within the budget, up to signed permutations of the
/// `L_i` and integral for the given plane parity.
pub fn decompose(degree: i64, self_int: i64, n: usize, budget: &Budget, plane_parity: u32) -> Result<Vec<Decomposition>> {
    let m = 2 * n + 3;
    if degree.abs() > budget.max_degree {
        return Err(Error::BudgetExceeded(format!("|degree| {} > {}", degree.abs(), budget.max_degree)));
    }
    // Sum of (2 b_i)^2.
    let target = sign_n(n) * (4 * self_int - degree * degree);
    if target < 0 {
        return Ok(Vec::new());
    }
    let support = budget.max_support.min(m);
    let cap = budget.max_coeff_halves;
    if target > support as i64 * cap * cap {
        return Err(Error::BudgetExceeded(format!(
            "sum of squares {target} exceeds {support} coefficients of size {cap}/2"
        )));
    }
    let parity = degree.rem_euclid(2);
    let mut patterns = Vec::new();
    let mut cur = Vec::new();
    search(target, cap, parity, m, support, &mut cur, &mut patterns);
    let mut out = Vec::new();
    for pattern in patterns {
        if let Some(d) = annotate(degree, n, &pattern, plane_parity) {
            out.push(d);
        }
    }
    Ok(out)
}

/// Non-increasing sequences of length `m` with entries of the given parity
/// in `0..=cap`, at most `support` nonzero, and the given sum of squares.
fn search(rest: i64, cap: i64, parity: i64, m: usize, support: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if cur.len() == m {
        if rest == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let hi = cur.last().copied().unwrap_or(cap).min(cap);
    let nonzero = cur.iter().filter(|&&v| v != 0).count();
    let mut v = hi;
    while v >= 0 {
        if v % 2 == parity && v * v <= rest && (v == 0 || nonzero < support) {
            cur.push(v);
            search(rest - v * v, cap, parity, m, support, cur, out);
            cur.pop();
        }
        v -= 1;
    }
}

fn annotate(degree: i64, n: usize, pattern: &[i64], plane_parity: u32) -> Option<Decomposition> {
    let m = pattern.len();
    if degree.rem_euclid(2) == 1 {
        // A plane P_I absorbs one half from every coordinate; the rest is even.
        let mut best: Option<Decomposition> = None;
        for neg_first in 0..=m {
            let signs: Vec<i64> = (0..m).map(|i| if i < neg_first { -1 } else { 1 }).collect();
            let l: Vec<i64> = pattern.iter().zip(&signs).map(|(v, s)| v * s).collect();
            let class = CycleClass { n, h_quarters: degree, l_halves: l.clone() };
            if !class.is_integral(plane_parity) {
                continue;
            }
            let plane: Vec<i64> = signs.clone();
            let rest: Vec<i64> = l.iter().zip(&plane).map(|(a, b)| (a - b) / 2).collect();
            let plus: Vec<String> = (0..m).filter(|&i| plane[i] > 0).map(|i| (i + 1).to_string()).collect();
            let mut expr = quadric_expression(degree - 1, &rest, true, n);
            expr.insert(0, format!("P{{{}}}", plus.join(",")));
            let d = Decomposition { class, canonical: pattern.to_vec(), expression: join_terms(&expr) };
            best = Some(d);
            break;
        }
        return best;
    }
    let b: Vec<i64> = pattern.iter().map(|v| v / 2).collect();
    // Choose which nonzero b_i enter with a minus sign so that the h
    // coefficient c = deg/4 - sum(s_i |b_i|)/2 is as small as possible.
    let nz: Vec<usize> = (0..m).filter(|&i| b[i] != 0).collect();
    let mut best: Option<(Rational, Vec<i64>)> = None;
    for neg in 0..=nz.len() {
        let mut signed = b.clone();
        for &i in &nz[..neg] {
            signed[i] = -signed[i];
        }
        let class = CycleClass { n, h_quarters: degree, l_halves: signed.iter().map(|v| 2 * v).collect() };
        if !class.is_integral(plane_parity) {
            continue;
        }
        let c = rational::frac(degree, 4) - rational::frac(signed.iter().sum::<i64>(), 2);
        let key = (c.clone() * c.clone(), -rational::sign(&c));
        let better = match &best {
            None => true,
            Some((bc, _)) => key < (bc.clone() * bc.clone(), -rational::sign(bc)),
        };
        if better {
            best = Some((c, signed));
        }
    }
    let (_, signed) = best?;
    let class = CycleClass { n, h_quarters: degree, l_halves: signed.iter().map(|v| 2 * v).collect() };
    let expr = quadric_expression(degree, &signed, false, n);
    Some(Decomposition { class, canonical: pattern.to_vec(), expression: join_terms(&expr) })
}

/// Terms `c h^n + sum b_i Q_i` for a class of the given degree with integer L
/// coefficients `b`. With `after_plane`, the `h` term is dropped when zero.
fn quadric_expression(degree: i64, b: &[i64], after_plane: bool, n: usize) -> Vec<String> {
    let c = rational::frac(degree, 4) - rational::frac(b.iter().sum::<i64>(), 2);
    let mut terms = Vec::new();
    if !num_traits::Zero::is_zero(&c) {
        terms.push(coefficient_term(&c, &format!("h^{n}")));
    }
    for (i, &v) in b.iter().enumerate() {
        if v != 0 {
            terms.push(coefficient_term(&rational::int(v), &format!("Q{}", i + 1)));
        }
    }
    if terms.is_empty() && !after_plane {
        terms.push("0".into());
    }
    terms
}

fn coefficient_term(c: &Rational, name: &str) -> String {
    if *c == rational::int(1) {
        name.to_string()
    } else if *c == rational::int(-1) {
        format!("-{name}")
    } else {
        format!("{c}{name}")
    }
}

fn join_terms(terms: &[String]) -> String {
    let mut s = String::new();
    for (i, t) in terms.iter().enumerate() {
        if i == 0 {
            s.push_str(t);
        } else if let Some(rest) = t.strip_prefix('-') {
            s.push_str(" - ");
            s.push_str(rest);
        } else {
            s.push_str(" + ");
            s.push_str(t);
        }
    }
    s
}
