//! Krasnov invariants, discriminant sign words and Weyl involutions of
//! signature profiles, and the correspondences between them.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dlattice::SignedPermutation;
use crate::error::{Error, Result};
use crate::pencilalg::SignatureProfile;
use crate::qform::Signature;

/// Lexicographically smallest rotation of `parts` or of its reversal.
pub fn canonical_dihedral(parts: &[usize]) -> Result<Vec<usize>> {
    if parts.is_empty() {
        return Err(Error::EmptySequence);
    }
    if parts.contains(&0) {
        return Err(Error::NonPositivePart);
    }
    let k = parts.len();
    let mut rev = parts.to_vec();
    rev.reverse();
    let mut best: Option<Vec<usize>> = None;
    for seq in [parts, &rev[..]] {
        for shift in 0..k {
            let cand: Vec<usize> = (0..k).map(|i| seq[(i + shift) % k]).collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    Ok(best.unwrap())
}

/// Chain lengths `(r_1, ..., r_{2s+1})`, compared by dihedral-canonical form.
///
/// The order in which the chains were found is kept for display.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KrasnovInvariant {
    canonical: Vec<usize>,
    as_computed: Vec<usize>,
}

impl KrasnovInvariant {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let canonical = canonical_dihedral(&parts)?;
        let inv = KrasnovInvariant { canonical, as_computed: parts };
        if inv.canonical.len().is_multiple_of(2) {
            return Err(inv.invalid("the number of chains is even"));
        }
        if inv.r().is_multiple_of(2) {
            return Err(inv.invalid("the chain lengths have even sum"));
        }
        Ok(inv)
    }

    fn invalid(&self, reason: &str) -> Error {
        Error::InvalidInvariant { inv: format_parts(&self.as_computed), n: 0, reason: reason.into() }
    }

    pub fn canonical(&self) -> &[usize] {
        &self.canonical
    }

    pub fn as_computed(&self) -> &[usize] {
        &self.as_computed
    }

    /// Number of real degeneracy points.
    pub fn r(&self) -> usize {
        self.canonical.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.canonical.len()
    }

    pub fn is_empty(&self) -> bool {
        self.canonical.is_empty()
    }

    /// Same invariant, recorded in the given order.
    pub fn with_order(&self, parts: Vec<usize>) -> Result<Self> {
        let other = KrasnovInvariant::new(parts)?;
        if other != *self {
            return Err(Error::InconsistentInvariant(format!(
                "{} is not a rotation or reversal of {}",
                format_parts(&other.as_computed),
                self
            )));
        }
        Ok(other)
    }

    /// `(1,3,5)` style text of the as-computed order.
    pub fn computed_string(&self) -> String {
        format_parts(&self.as_computed)
    }
}

impl PartialEq for KrasnovInvariant {
    fn eq(&self, other: &Self) -> bool {
        self.canonical == other.canonical
    }
}

impl Eq for KrasnovInvariant {}

impl std::hash::Hash for KrasnovInvariant {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.canonical.hash(state);
    }
}

impl PartialOrd for KrasnovInvariant {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for KrasnovInvariant {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.r(), self.len(), &self.canonical).cmp(&(other.r(), other.len(), &other.canonical))
    }
}

pub fn format_parts(parts: &[usize]) -> String {
    let inner: Vec<String> = parts.iter().map(ToString::to_string).collect();
    format!("({})", inner.join(","))
}

impl fmt::Display for KrasnovInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_parts(&self.canonical))
    }
}

impl FromStr for KrasnovInvariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t);
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad invariant {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        KrasnovInvariant::new(parts)
    }
}

/// Maximal cyclic runs of `+1` in a label word, listed from the first run that
/// starts at or after position 0.
pub fn plus_chains(labels: &[i8]) -> Vec<usize> {
    let len = labels.len();
    if len == 0 {
        return Vec::new();
    }
    if labels.iter().all(|&l| l > 0) {
        return vec![len];
    }
    let mut chains = Vec::new();
    for start in 0..len {
        if labels[start] > 0 && labels[(start + len - 1) % len] < 0 {
            let run = (0..len).take_while(|&j| labels[(start + j) % len] > 0).count();
            chains.push(run);
        }
    }
    chains
}

pub fn invariant_from_labels(labels: &[i8]) -> Result<KrasnovInvariant> {
    KrasnovInvariant::new(plus_chains(labels))
}

pub fn krasnov_invariant(prof: &SignatureProfile) -> KrasnovInvariant {
    invariant_from_labels(&prof.labels()).expect("antipodal label words have an odd number of chains")
}

/// Cyclic word of discriminant signs with an even number of `-1` entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignWord(Vec<i8>);

impl SignWord {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.is_empty() {
            return Err(Error::EmptySequence);
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Parse(format!("sign word {signs:?} has entries other than +1 and -1")));
        }
        if signs.iter().filter(|&&s| s < 0).count() % 2 == 1 {
            return Err(Error::OddNegativeCount);
        }
        Ok(SignWord(signs))
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for SignWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| if *s > 0 { "+1".into() } else { "-1".to_string() }).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `+1` when `(pos - neg) / 2` is even.
pub fn discriminant_sign(singular: &Signature) -> i8 {
    let half = (singular.pos as i64 - singular.neg as i64) / 2;
    if half % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn discriminant_signs(prof: &SignatureProfile) -> SignWord {
    SignWord::new(prof.points().iter().map(|p| discriminant_sign(&p.singular)).collect())
        .expect("a profile has an even number of negative discriminants")
}

/// Reconstructs the chains from a sign word. Bars go between cyclically
/// adjacent equal signs; the runs between bars, read from the first bar,
/// alternate between the two halves of the circle.
pub fn shuffle_to_invariant(word: &SignWord) -> Result<KrasnovInvariant> {
    let w = word.signs();
    let r = w.len();
    if r.is_multiple_of(2) {
        return Err(Error::EvenWordLength(r));
    }
    // bars[j] is true when there is a bar between positions j and j+1.
    let bars: Vec<bool> = (0..r).map(|j| w[j] == w[(j + 1) % r]).collect();
    let first = bars.iter().position(|&b| b).expect("odd length forces a bar");
    let mut runs = Vec::new();
    let mut len = 0;
    for step in 1..=r {
        let j = (first + step) % r;
        len += 1;
        if bars[j] {
            runs.push(len);
            len = 0;
        }
    }
    let mut chains: Vec<usize> = runs.iter().step_by(2).copied().collect();
    chains.extend(runs.iter().skip(1).step_by(2));
    KrasnovInvariant::new(chains)
}

/// Block counts of a Weyl involution: `a` fixed `+1` blocks, `2b` fixed `-1`
/// blocks and `c` swap blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InvolutionClass {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl InvolutionClass {
    pub fn m(&self) -> usize {
        self.a + 2 * self.b + 2 * self.c
    }

    pub fn r(&self) -> usize {
        self.a + 2 * self.b
    }
}

impl fmt::Display for InvolutionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a,b,c) = ({},{},{})", self.a, self.b, self.c)
    }
}

/// A signed permutation of order at most two in `W(D_m)`, with bold markers
/// on `+1` fixed points whose singular fiber has signature `(n+1, n+1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylInvolution {
    sigma: SignedPermutation,
    bold: Vec<bool>,
}

impl WeylInvolution {
    pub fn new(sigma: SignedPermutation, bold: Vec<bool>) -> Result<Self> {
        let m = sigma.m();
        if bold.len() != m {
            return Err(Error::DimensionMismatch { expected: m, found: bold.len() });
        }
        if !sigma.is_involution() {
            return Err(Error::InvalidPermutation("not an involution".into()));
        }
        if !sigma.is_weyl() {
            return Err(Error::InvalidPermutation("odd number of sign changes".into()));
        }
        for (i, &b) in bold.iter().enumerate() {
            if b && (sigma.perm()[i] != i || sigma.signs()[i] != 1) {
                return Err(Error::InvalidPermutation(format!("bold index {} is not a +1 fixed point", i + 1)));
            }
        }
        Ok(WeylInvolution { sigma, bold })
    }

    /// Diagonal entries for the first indices followed by positive swaps of
    /// consecutive pairs.
    pub fn from_blocks(diag: &[i8], bold: &[bool], swaps: usize) -> Result<Self> {
        let r = diag.len();
        let m = r + 2 * swaps;
        let mut perm: Vec<usize> = (0..m).collect();
        let mut signs = diag.to_vec();
        signs.resize(m, 1);
        for j in 0..swaps {
            perm.swap(r + 2 * j, r + 2 * j + 1);
        }
        let mut b = bold.to_vec();
        b.resize(m, false);
        WeylInvolution::new(SignedPermutation::new(perm, signs)?, b)
    }

    pub fn sigma(&self) -> &SignedPermutation {
        &self.sigma
    }

    pub fn m(&self) -> usize {
        self.sigma.m()
    }

    pub fn is_bold(&self, i: usize) -> bool {
        self.bold[i]
    }

    pub fn bold(&self) -> &[bool] {
        &self.bold
    }

    pub fn is_fixed(&self, i: usize) -> bool {
        self.sigma.perm()[i] == i
    }

    /// 0-based indices of the `+1` fixed points.
    pub fn plus_fixed(&self) -> Vec<usize> {
        (0..self.m()).filter(|&i| self.is_fixed(i) && self.sigma.signs()[i] == 1).collect()
    }

    /// 0-based index pairs `(i, j)`, `i < j`, exchanged by the involution.
    pub fn swaps(&self) -> Vec<(usize, usize)> {
        (0..self.m()).filter(|&i| self.sigma.perm()[i] > i).map(|i| (i, self.sigma.perm()[i])).collect()
    }

    pub fn class(&self) -> InvolutionClass {
        let fixed: Vec<usize> = (0..self.m()).filter(|&i| self.is_fixed(i)).collect();
        let a = fixed.iter().filter(|&&i| self.sigma.signs()[i] == 1).count();
        let minus = fixed.len() - a;
        InvolutionClass { a, b: minus / 2, c: (self.m() - fixed.len()) / 2 }
    }

    pub fn bold_count(&self) -> usize {
        self.bold.iter().filter(|&&b| b).count()
    }
}

impl fmt::Display for WeylInvolution {
    /// `diag(-1,1*,1)` over the fixed indices in order, then each swap as
    /// `(i j)`, or `-(i j)` when both signs are negative. `*` marks bold.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = (0..self.m())
            .filter(|&i| self.is_fixed(i))
            .map(|i| {
                let s = if self.sigma.signs()[i] > 0 { "1" } else { "-1" };
                if self.bold[i] {
                    format!("{s}*")
                } else {
                    s.to_string()
                }
            })
            .collect();
        write!(f, "diag({})", entries.join(","))?;
        for (i, j) in self.swaps() {
            let neg = if self.sigma.signs()[i] < 0 { "-" } else { "" };
            write!(f, " {neg}({} {})", i + 1, j + 1)?;
        }
        Ok(())
    }
}

impl FromStr for WeylInvolution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad involution {s:?}"));
        let t = s.trim();
        let rest = t.strip_prefix("diag(").ok_or_else(bad)?;
        let close = rest.find(')').ok_or_else(bad)?;
        let mut diag = Vec::new();
        let mut bold = Vec::new();
        for e in rest[..close].split(',').map(str::trim).filter(|e| !e.is_empty()) {
            let (v, b) = match e.strip_suffix('*') {
                Some(v) => (v.trim(), true),
                None => (e, false),
            };
            diag.push(match v {
                "1" | "+1" => 1i8,
                "-1" => -1,
                _ => return Err(bad()),
            });
            bold.push(b);
        }
        let mut swaps: Vec<(usize, usize, i8)> = Vec::new();
        let mut tail = rest[close + 1..].trim();
        while !tail.is_empty() {
            let (sign, body) = match tail.strip_prefix('-') {
                Some(b) => (-1, b.trim_start()),
                None => (1, tail),
            };
            let body = body.strip_prefix('(').ok_or_else(bad)?;
            let end = body.find(')').ok_or_else(bad)?;
            let idx: Vec<usize> = body[..end]
                .split_whitespace()
                .map(|x| x.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_>>()?;
            let [i, j] = idx[..] else { return Err(bad()) };
            if i == 0 || j == 0 || i == j {
                return Err(bad());
            }
            swaps.push((i - 1, j - 1, sign));
            tail = body[end + 1..].trim();
        }
        let m = diag.len() + 2 * swaps.len();
        let mut perm: Vec<Option<usize>> = vec![None; m];
        let mut signs = vec![1i8; m];
        for &(i, j, sg) in &swaps {
            if i >= m || j >= m || perm[i].is_some() || perm[j].is_some() {
                return Err(bad());
            }
            perm[i] = Some(j);
            perm[j] = Some(i);
            signs[i] = sg;
            signs[j] = sg;
        }
        let mut bold_full = vec![false; m];
        let mut entries = diag.iter().zip(&bold);
        for i in 0..m {
            if perm[i].is_none() {
                let (&d, &b) = entries.next().ok_or_else(bad)?;
                perm[i] = Some(i);
                signs[i] = d;
                bold_full[i] = b;
            }
        }
        let perm = perm.into_iter().map(Option::unwrap).collect();
        WeylInvolution::new(SignedPermutation::new(perm, signs)?, bold_full)
    }
}

/// One diagonal block per real degeneracy point in circle order, then one
/// swap block per pair of complex conjugate points.
pub fn involution(prof: &SignatureProfile) -> WeylInvolution {
    let n = prof.n();
    let points = prof.points();
    let diag: Vec<i8> = points.iter().map(|p| discriminant_sign(&p.singular)).collect();
    let bold: Vec<bool> = points.iter().map(|p| p.singular.pos == n + 1 && p.singular.neg == n + 1).collect();
    WeylInvolution::from_blocks(&diag, &bold, (prof.m() - prof.r()) / 2)
        .expect("profile involutions are Weyl involutions")
}

pub fn involution_class(w: &WeylInvolution) -> InvolutionClass {
    w.class()
}

fn words_with(a: usize, minus: usize) -> Vec<Vec<i8>> {
    let len = a + minus;
    let mut out = Vec::new();
    for mask in 0u32..(1 << len) {
        if mask.count_ones() as usize == minus {
            out.push((0..len).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect());
        }
    }
    out
}

/// Every invariant whose sign word has `a` entries `+1` and `2b` entries `-1`.
pub fn invariants_for_class(cls: &InvolutionClass) -> BTreeSet<KrasnovInvariant> {
    words_with(cls.a, 2 * cls.b)
        .into_iter()
        .filter_map(|w| SignWord::new(w).ok())
        .filter_map(|w| shuffle_to_invariant(&w).ok())
        .collect()
}

/// The label word of an invariant: each `+` chain followed by the `-` chain
/// antipodal to the chain `s + 1` places further on.
pub fn label_word(inv: &KrasnovInvariant) -> Vec<i8> {
    let a = inv.canonical();
    let k = a.len();
    let s = k / 2;
    let mut labels = Vec::with_capacity(2 * inv.r());
    for i in 0..k {
        labels.extend(std::iter::repeat_n(1i8, a[i]));
        labels.extend(std::iter::repeat_n(-1i8, a[(i + s + 1) % k]));
    }
    labels
}

/// A profile realising `inv` in dimension `n`, rotated to start on an arc of
/// minimal `pos` and oriented so that its `pos` sequence is as large as
/// possible from there.
pub fn reconstruct_profile(inv: &KrasnovInvariant, n: usize) -> Result<SignatureProfile> {
    let m = 2 * n + 3;
    let r = inv.r();
    if r > m || r.is_multiple_of(2) || inv.len().is_multiple_of(2) {
        return Err(Error::InconsistentInvariant(format!("{inv} for n = {n}")));
    }
    let labels = label_word(inv);
    if (0..r).any(|j| labels[j] != -labels[j + r]) {
        return Err(Error::InconsistentInvariant(format!("{inv} has no antipodal label word")));
    }
    let rise: i64 = labels[..r].iter().map(|&l| l as i64).sum();
    let p0 = (m as i64 - rise) / 2;
    let mut arcs = Vec::with_capacity(r);
    let mut pos = p0;
    for &l in &labels[..r] {
        if pos < 0 || pos > m as i64 {
            return Err(Error::InconsistentInvariant(format!("{inv} for n = {n}")));
        }
        arcs.push(Signature::new(pos as usize, m - pos as usize, 0));
        pos += l as i64;
    }
    let base = SignatureProfile::new(n, arcs).map_err(|_| Error::InconsistentInvariant(format!("{inv} for n = {n}")))?;
    let min = base.full_arcs().iter().map(|a| a.pos).min().unwrap();
    let mut best: Option<(Vec<usize>, SignatureProfile)> = None;
    for oriented in [base.clone(), base.reverse()] {
        for k in 0..2 * r {
            let cand = oriented.rotate(k);
            let seq: Vec<usize> = cand.full_arcs().iter().map(|a| a.pos).collect();
            if seq[0] != min {
                continue;
            }
            if best.as_ref().is_none_or(|(b, _)| seq > *b) {
                best = Some((seq, cand));
            }
        }
    }
    Ok(best.unwrap().1)
}

/// All compositions of `r` into an odd number of parts, canonicalised.
fn odd_compositions(r: usize) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    // Bit j of mask set means a cut after position j+1.
    for mask in 0u64..(1 << (r - 1)) {
        if mask.count_ones() % 2 == 1 {
            continue;
        }
        let mut parts = Vec::new();
        let mut len = 1;
        for j in 0..r - 1 {
            if mask >> j & 1 == 1 {
                parts.push(len);
                len = 1;
            } else {
                len += 1;
            }
        }
        parts.push(len);
        out.insert(canonical_dihedral(&parts).unwrap());
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotopyClass {
    pub invariant: KrasnovInvariant,
    pub involution: WeylInvolution,
    pub class: InvolutionClass,
    pub profile: SignatureProfile,
}

/// Every isotopy class in dimension `n`, ordered by number of real
/// degeneracy points, then number of chains, then canonical form.
pub fn enumerate_isotopy_classes(n: usize) -> Vec<IsotopyClass> {
    let m = 2 * n + 3;
    let mut out = Vec::new();
    for r in (1..=m).step_by(2) {
        for parts in odd_compositions(r) {
            let inv = KrasnovInvariant::new(parts).expect("odd compositions of odd sums");
            let profile = reconstruct_profile(&inv, n).expect("every odd composition is realisable");
            let invariant = krasnov_invariant(&profile);
            let involution = involution(&profile);
            let class = involution.class();
            out.push(IsotopyClass { invariant, involution, class, profile });
        }
    }
    out.sort_by(|a, b| a.invariant.cmp(&b.invariant));
    out
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Dihedral orbits of compositions of `r` into `k` parts, by Burnside's lemma.
pub fn dihedral_orbit_count(r: usize, k: usize) -> u64 {
    if k == 0 || k > r {
        return 0;
    }
    let mut fixed: u64 = 0;
    for j in 0..k {
        let d = gcd(j, k);
        // A rotation with d cycles fixes sequences made of k/d copies of a block of d parts.
        if r.is_multiple_of(k / d) {
            fixed += binomial((r * d / k - 1) as u64, (d - 1) as u64);
        }
    }
    let mut refl: u64 = 0;
    if k % 2 == 1 {
        // Each reflection fixes one part and pairs the other k-1: x + 2 * (y_1 + ... + y_h) = r.
        let h = (k - 1) / 2;
        let mut per = 0;
        let mut x = r % 2;
        if x == 0 {
            x = 2;
        }
        while x <= r {
            let rest = (r - x) / 2;
            per += if h == 0 {
                u64::from(rest == 0)
            } else if rest >= h {
                binomial((rest - 1) as u64, (h - 1) as u64)
            } else {
                0
            };
            x += 2;
        }
        refl = per * k as u64;
    } else {
        for j in 0..k {
            // Reflections through two parts (j even) or between parts (j odd).
            let h = k / 2;
            let cnt = if j % 2 == 0 {
                // two fixed parts x, y and h-1 pairs
                let mut c = 0;
                for x in 1..r {
                    for y in 1..r {
                        if x + y > r || (r - x - y) % 2 == 1 {
                            continue;
                        }
                        let rest = (r - x - y) / 2;
                        c += if h == 1 {
                            u64::from(rest == 0)
                        } else if rest >= h - 1 {
                            binomial((rest - 1) as u64, (h - 2) as u64)
                        } else {
                            0
                        };
                    }
                }
                c
            } else if r.is_multiple_of(2) && r / 2 >= h {
                binomial((r / 2 - 1) as u64, (h - 1) as u64)
            } else {
                0
            };
            refl += cnt;
        }
    }
    (fixed + refl) / (2 * k as u64)
}

/// Number of isotopy classes in dimension `n` by orbit counting.
pub fn isotopy_class_count(n: usize) -> u64 {
    let m = 2 * n + 3;
    (1..=m).step_by(2).flat_map(|r| (1..=r).step_by(2).map(move |k| dihedral_orbit_count(r, k))).sum()
}
