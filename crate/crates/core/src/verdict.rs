//! Rationality over the reals of an even-dimensional complete intersection
//! of two quadrics, decided from its Krasnov invariant.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::krasnov::KrasnovInvariant;
use crate::pencilalg::SignatureProfile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RealLocusStatus {
    Empty,
    Disconnected,
    Connected,
}

impl fmt::Display for RealLocusStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RealLocusStatus::Empty => "empty",
            RealLocusStatus::Disconnected => "disconnected",
            RealLocusStatus::Connected => "connected",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Rational,
    NotRational,
    Open,
    OutOfScope,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Reason {
    LineProjection,
    ConstructionI,
    ConstructionII,
    ConstructionIII,
    EmptyRealLocus,
    DisconnectedRealLocus,
    NoKnownConstruction,
    DimensionUnsupported,
}

impl Reason {
    /// Where the decision comes from.
    pub fn provenance(&self) -> &'static str {
        match self {
            Reason::LineProjection => "a real line exists; projection from it is birational",
            Reason::ConstructionI => "a pair of conjugate disjoint n-planes exists",
            Reason::ConstructionII => "a pair of conjugate quadric n-folds meets in one real point",
            Reason::ConstructionIII => "three real quadric n-folds give a quadric bundle with an odd multisection",
            Reason::EmptyRealLocus => "a definite member of the pencil leaves no real points",
            Reason::DisconnectedRealLocus => "the real locus has two components",
            Reason::NoKnownConstruction => "no known construction covers this class",
            Reason::DimensionUnsupported => "rationality criterion is stated for n >= 2 only",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub reason: Reason,
    pub notes: String,
}

impl Verdict {
    fn new(status: Status, reason: Reason) -> Self {
        Verdict { status, reason, notes: reason.provenance().to_string() }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.status, self.reason)
    }
}

fn canon(parts: &[usize]) -> Vec<usize> {
    crate::krasnov::canonical_dihedral(parts).expect("nonempty positive parts")
}

/// `e` when the invariant is `(2n+2-e, e, 1)` with `1 <= e <= n+1`.
pub fn e_form(inv: &KrasnovInvariant, n: usize) -> Option<usize> {
    let d = 2 * n;
    (1..=n + 1).find(|&e| inv.canonical() == canon(&[d + 2 - e, e, 1]))
}

pub fn validate(inv: &KrasnovInvariant, n: usize) -> Result<()> {
    let m = 2 * n + 3;
    let bad = |reason: &str| Error::InvalidInvariant { inv: inv.to_string(), n, reason: reason.into() };
    if inv.is_empty() || inv.len().is_multiple_of(2) {
        return Err(bad("the number of chains must be odd"));
    }
    if inv.r().is_multiple_of(2) {
        return Err(bad("the number of real degeneracy points must be odd"));
    }
    if inv.r() > m {
        return Err(bad("more real degeneracy points than 2n+3"));
    }
    Ok(())
}

/// False exactly for `(2n+3)`, `(2n+1)` and `(2n+2-e, e, 1)` with `1 <= e <= n+1`.
pub fn line_exists(inv: &KrasnovInvariant, n: usize) -> bool {
    let c = inv.canonical();
    !(c == [2 * n + 3] || c == [2 * n + 1] || e_form(inv, n).is_some())
}

/// Returns `(has_point, has_line)`: no smooth member is definite, and no
/// smooth member has `pos` or `neg` at least `2n+2`.
pub fn witt_predicates(prof: &SignatureProfile) -> (bool, bool) {
    let m = prof.m();
    let arcs = prof.full_arcs();
    let has_point = !arcs.iter().any(|a| a.is_definite());
    let has_line = !arcs.iter().any(|a| a.pos + 1 >= m || a.neg + 1 >= m);
    (has_point, has_line)
}

pub fn real_locus_status(inv: &KrasnovInvariant, n: usize) -> RealLocusStatus {
    if inv.canonical() == [2 * n + 3] {
        RealLocusStatus::Empty
    } else if inv.canonical() == canon(&[2 * n + 1, 1, 1]) {
        RealLocusStatus::Disconnected
    } else {
        RealLocusStatus::Connected
    }
}

pub fn rationality_verdict(inv: &KrasnovInvariant, n: usize) -> Result<Verdict> {
    validate(inv, n)?;
    if n < 2 {
        return Ok(Verdict::new(Status::OutOfScope, Reason::DimensionUnsupported));
    }
    match real_locus_status(inv, n) {
        RealLocusStatus::Empty => return Ok(Verdict::new(Status::NotRational, Reason::EmptyRealLocus)),
        RealLocusStatus::Disconnected => {
            return Ok(Verdict::new(Status::NotRational, Reason::DisconnectedRealLocus))
        }
        RealLocusStatus::Connected => {}
    }
    if line_exists(inv, n) {
        return Ok(Verdict::new(Status::Rational, Reason::LineProjection));
    }
    if inv.canonical() == [2 * n + 1] {
        return Ok(Verdict::new(Status::Rational, Reason::ConstructionII));
    }
    let e = e_form(inv, n).expect("lineless connected classes are (2n+1) or e-forms");
    Ok(if e == n + 1 {
        Verdict::new(Status::Rational, Reason::ConstructionIII)
    } else if e.is_multiple_of(2) {
        Verdict::new(Status::Rational, Reason::ConstructionI)
    } else {
        Verdict::new(Status::Open, Reason::NoKnownConstruction)
    })
}
