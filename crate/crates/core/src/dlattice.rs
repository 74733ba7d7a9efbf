//! The lattice `<L_1, ..., L_m>` for odd `m = 2n+3`, its root sublattice
//! `D_m`, half-spin weights and the signed-permutation Weyl action.
//!
//! Vectors are stored in doubled coordinates so that half-spin weights are
//! integral: `L_i` has coordinate 2, a weight has coordinates +1 or -1.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeVector {
    coords: Vec<i64>,
}

impl LatticeVector {
    /// From doubled coordinates.
    pub fn from_doubled(coords: Vec<i64>) -> Self {
        LatticeVector { coords }
    }

    /// From ordinary integer coordinates in the `L` basis.
    pub fn from_l(coords: &[i64]) -> Self {
        LatticeVector { coords: coords.iter().map(|c| 2 * c).collect() }
    }

    /// `L_i`, with `i` counted from 1.
    pub fn basis(m: usize, i: usize) -> Self {
        let mut coords = vec![0; m];
        coords[i - 1] = 2;
        LatticeVector { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn doubled(&self) -> &[i64] {
        &self.coords
    }

    /// Coordinates in the `L` basis.
    pub fn coords(&self) -> Vec<Rational> {
        self.coords.iter().map(|&c| rational::frac(c, 2)).collect()
    }

    pub fn add(&self, other: &LatticeVector) -> Result<LatticeVector> {
        check_dims(self.dim(), other.dim())?;
        Ok(LatticeVector { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() })
    }

    pub fn scale(&self, k: i64) -> LatticeVector {
        LatticeVector { coords: self.coords.iter().map(|c| c * k).collect() }
    }

    pub fn neg(&self) -> LatticeVector {
        self.scale(-1)
    }

    /// In `<L_i>`: every `L` coordinate is an integer.
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c % 2 == 0)
    }

    /// In `D_m`: integral with even coordinate sum.
    pub fn in_root_lattice(&self) -> bool {
        self.is_integral() && (self.coords.iter().sum::<i64>() / 2) % 2 == 0
    }

    /// A half-spin weight: every `L` coordinate is `1/2` or `-1/2`.
    pub fn is_weight(&self) -> bool {
        self.coords.iter().all(|c| c.abs() == 1)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords().iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch { expected: a, found: b });
    }
    Ok(())
}

/// Euclidean pairing with `L_i . L_j = delta_ij`.
pub fn pairing(u: &LatticeVector, v: &LatticeVector) -> Result<Rational> {
    check_dims(u.dim(), v.dim())?;
    let dot: i64 = u.coords.iter().zip(&v.coords).map(|(a, b)| a * b).sum();
    Ok(rational::frac(dot, 4))
}

/// `R_i = L_i - L_{i+1}` for `i < m`, and `R_m = L_{m-1} + L_m`.
pub fn simple_roots(m: usize) -> Vec<LatticeVector> {
    let mut out: Vec<LatticeVector> = (1..m)
        .map(|i| LatticeVector::basis(m, i).add(&LatticeVector::basis(m, i + 1).neg()).unwrap())
        .collect();
    out.push(LatticeVector::basis(m, m - 1).add(&LatticeVector::basis(m, m)).unwrap());
    out
}

/// Generator of the discriminant group `D_m^* / D_m`, cyclic of order four for
/// odd `m`: the spinor weight `(L_1 + ... + L_m) / 2`.
pub fn discriminant_generator(m: usize) -> LatticeVector {
    LatticeVector { coords: vec![1; m] }
}

/// Weight `w_I = (sum_{i in I} L_i - sum_{j not in I} L_j) / 2`, with `I` a bitmask
/// over indices `0..m` (bit `i` stands for `L_{i+1}`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightClass {
    m: usize,
    mask: u32,
}

impl WeightClass {
    pub fn new(m: usize, mask: u32) -> Result<Self> {
        if m == 0 || m > 31 || (mask >> m) != 0 {
            return Err(Error::IndexOutOfRange { index: mask as usize, m });
        }
        Ok(WeightClass { m, mask })
    }

    /// From 1-based indices of the `+1/2` coordinates.
    pub fn from_indices(m: usize, indices: &[usize]) -> Result<Self> {
        let mut mask = 0;
        for &i in indices {
            if i == 0 || i > m {
                return Err(Error::IndexOutOfRange { index: i, m });
            }
            mask |= 1 << (i - 1);
        }
        WeightClass::new(m, mask)
    }

    /// From a sign vector of `+1/-1` entries.
    pub fn from_signs(signs: &[i64]) -> Result<Self> {
        let mut mask = 0;
        for (i, &s) in signs.iter().enumerate() {
            match s {
                1 => mask |= 1 << i,
                -1 => {}
                _ => return Err(Error::Parse(format!("weight sign {s} is not +1 or -1"))),
            }
        }
        WeightClass::new(signs.len(), mask)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    /// `|I| mod 2`.
    pub fn parity(&self) -> u32 {
        self.mask.count_ones() % 2
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.m).filter(|i| self.mask >> i & 1 == 1).map(|i| i + 1).collect()
    }

    pub fn signs(&self) -> Vec<i64> {
        (0..self.m).map(|i| if self.mask >> i & 1 == 1 { 1 } else { -1 }).collect()
    }

    pub fn vector(&self) -> LatticeVector {
        LatticeVector { coords: self.signs() }
    }

    pub fn hamming(&self, other: &WeightClass) -> u32 {
        (self.mask ^ other.mask).count_ones()
    }
}

impl fmt::Display for WeightClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for (i, sign) in self.signs().iter().enumerate() {
            if i > 0 || *sign < 0 {
                s.push(if *sign > 0 { '+' } else { '-' });
            }
            s.push_str(&format!("L{}", i + 1));
        }
        write!(f, "({s})/2")
    }
}

pub fn all_weights(m: usize) -> impl Iterator<Item = WeightClass> {
    (0..1u32 << m).map(move |mask| WeightClass { m, mask })
}

pub fn weights_of_parity(m: usize, parity: u32) -> impl Iterator<Item = WeightClass> {
    all_weights(m).filter(move |w| w.parity() == parity)
}

/// A signed permutation acting by `L_i -> signs[i] L_{perm[i]}` (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let m = perm.len();
        if signs.len() != m {
            return Err(Error::DimensionMismatch { expected: m, found: signs.len() });
        }
        let mut seen = vec![false; m];
        for &p in &perm {
            if p >= m || seen[p] {
                return Err(Error::InvalidPermutation(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidPermutation(format!("signs {signs:?} must be +1 or -1")));
        }
        Ok(SignedPermutation { perm, signs })
    }

    pub fn identity(m: usize) -> Self {
        SignedPermutation { perm: (0..m).collect(), signs: vec![1; m] }
    }

    pub fn diagonal(signs: Vec<i8>) -> Result<Self> {
        SignedPermutation::new((0..signs.len()).collect(), signs)
    }

    pub fn m(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn negative_count(&self) -> usize {
        self.signs.iter().filter(|&&s| s < 0).count()
    }

    /// Membership in `W(D_m)`: an even number of sign changes.
    pub fn is_weyl(&self) -> bool {
        self.negative_count().is_multiple_of(2)
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &SignedPermutation) -> Result<SignedPermutation> {
        check_dims(self.m(), other.m())?;
        let perm = other.perm.iter().map(|&j| self.perm[j]).collect();
        let signs = (0..self.m()).map(|i| other.signs[i] * self.signs[other.perm[i]]).collect();
        Ok(SignedPermutation { perm, signs })
    }

    pub fn inverse(&self) -> SignedPermutation {
        let m = self.m();
        let mut perm = vec![0; m];
        let mut signs = vec![1; m];
        for i in 0..m {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        SignedPermutation { perm, signs }
    }

    pub fn is_involution(&self) -> bool {
        self.compose(self).is_ok_and(|sq| sq == SignedPermutation::identity(self.m()))
    }

    pub fn apply(&self, v: &LatticeVector) -> Result<LatticeVector> {
        check_dims(self.m(), v.dim())?;
        let mut coords = vec![0; self.m()];
        for i in 0..self.m() {
            coords[self.perm[i]] = self.signs[i] as i64 * v.coords[i];
        }
        Ok(LatticeVector { coords })
    }

    pub fn apply_weight(&self, w: &WeightClass) -> Result<WeightClass> {
        let v = self.apply(&w.vector())?;
        WeightClass::from_signs(&v.coords)
    }
}

/// Relative position of two `n`-planes, read off the pairing of their weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PlaneRelation {
    /// The same weight.
    Same,
    Disjoint,
    /// Meeting along an `r`-plane, `0 <= r <= n-1`.
    MeetRPlane(usize),
    Other(#[serde(with = "rational::serde_str")] Rational),
}

impl PlaneRelation {
    /// Meeting in a single point is meeting along a 0-plane.
    pub const MEET_POINT: PlaneRelation = PlaneRelation::MeetRPlane(0);
}

impl fmt::Display for PlaneRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaneRelation::Same => write!(f, "same"),
            PlaneRelation::Disjoint => write!(f, "disjoint"),
            PlaneRelation::MeetRPlane(0) => write!(f, "meet in a point"),
            PlaneRelation::MeetRPlane(r) => write!(f, "meet along a {r}-plane"),
            PlaneRelation::Other(v) => write!(f, "other (pairing {v})"),
        }
    }
}

fn neg_one_pow(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Pairing value of two planes meeting along an `r`-plane.
pub fn meet_pairing(r: usize, n: usize) -> Rational {
    rational::int(neg_one_pow(r + n) * (r as i64 / 2 + 1)) - rational::frac(neg_one_pow(n), 4)
}

pub fn disjoint_pairing(n: usize) -> Rational {
    rational::frac(neg_one_pow(n + 1), 4)
}

/// Classifies a pairing value between plane weights.
pub fn relation_from_pairing(value: &Rational, n: usize) -> PlaneRelation {
    if *value == rational::frac(2 * n as i64 + 3, 4) {
        return PlaneRelation::Same;
    }
    if *value == disjoint_pairing(n) {
        return PlaneRelation::Disjoint;
    }
    match (0..n).find(|&r| meet_pairing(r, n) == *value) {
        Some(r) => PlaneRelation::MeetRPlane(r),
        None => PlaneRelation::Other(value.clone()),
    }
}

pub fn plane_relation(wi: &WeightClass, wj: &WeightClass, n: usize) -> Result<PlaneRelation> {
    let m = 2 * n + 3;
    check_dims(m, wi.m())?;
    check_dims(m, wj.m())?;
    if wi.parity() != wj.parity() {
        return Err(Error::ParityMismatch);
    }
    let v = pairing(&wi.vector(), &wj.vector())?;
    Ok(relation_from_pairing(&v, n))
}

fn relation_count(n: usize, parity: u32, pred: impl Fn(&PlaneRelation) -> bool) -> usize {
    let m = 2 * n + 3;
    let base = weights_of_parity(m, parity).next().expect("m >= 1");
    weights_of_parity(m, parity)
        .filter(|w| pred(&plane_relation(&base, w, n).expect("same parity")))
        .count()
}

/// Weights disjoint from a fixed weight, by exhaustive scan of its parity class.
pub fn disjoint_count(n: usize) -> usize {
    disjoint_count_in(n, 0)
}

pub fn disjoint_count_in(n: usize, parity: u32) -> usize {
    relation_count(n, parity, |r| *r == PlaneRelation::Disjoint)
}

/// Weights meeting a fixed weight along an `(n-1)`-plane, by exhaustive scan.
pub fn meet_hyperplane_count(n: usize) -> usize {
    meet_hyperplane_count_in(n, 0)
}

pub fn meet_hyperplane_count_in(n: usize, parity: u32) -> usize {
    relation_count(n, parity, |r| *r == PlaneRelation::MeetRPlane(n.saturating_sub(1)))
}

/// Unordered pairs `{I, J}` of one parity with `w_I + w_J = +-L_k`: reducible
/// quadrics that split into two planes. Counted for one parity class.
pub fn reducible_quadric_pairs(n: usize, parity: u32) -> Vec<(WeightClass, WeightClass, i64, usize)> {
    let m = 2 * n + 3;
    let ws: Vec<WeightClass> = weights_of_parity(m, parity).collect();
    let mut out = Vec::new();
    for (a, wi) in ws.iter().enumerate() {
        for wj in &ws[a + 1..] {
            let sum = wi.vector().add(&wj.vector()).unwrap();
            let nonzero: Vec<(usize, i64)> = sum.coords.iter().copied().enumerate().filter(|(_, c)| *c != 0).collect();
            if let [(k, c)] = nonzero[..] {
                if c.abs() == 2 {
                    out.push((*wi, *wj, c.signum(), k + 1));
                }
            }
        }
    }
    out
}

pub fn reducible_quadric_count(n: usize) -> usize {
    reducible_quadric_count_in(n, 0)
}

pub fn reducible_quadric_count_in(n: usize, parity: u32) -> usize {
    reducible_quadric_pairs(n, parity).len()
}
