//! Input documents, classification reports, the per-dimension atlas and
//! lattice queries.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::cycles::{self, BasisElement, Budget, Decomposition, GramTable};
use crate::dlattice::{self, PlaneRelation, WeightClass};
use crate::error::{Error, Result};
use crate::krasnov::{self, InvolutionClass, KrasnovInvariant, SignWord, WeylInvolution};
use crate::pencilalg::{self, DegeneracyPoint, Pencil};
use crate::qform::{QuadraticForm, Signature};
use crate::rational::{self, Rational};
use crate::verdict::{self, RealLocusStatus, Verdict};

/// Largest `n` accepted by `classify`.
pub const MAX_N: usize = 13;
/// Largest `n` covered by the atlas.
pub const MAX_ATLAS_N: usize = 4;

/// A pencil as stored on disk: `n` and two symmetric matrices of `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PencilDocument {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(rename = "F1", with = "rational::serde_matrix")]
    pub f1: Vec<Vec<Rational>>,
    #[serde(rename = "F2", with = "rational::serde_matrix")]
    pub f2: Vec<Vec<Rational>>,
}

impl PencilDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn from_pencil(p: &Pencil, label: Option<String>) -> Self {
        PencilDocument {
            n: p.n(),
            label,
            f1: p.f1().rows().to_vec(),
            f2: p.f2().rows().to_vec(),
        }
    }

    /// Validates sizes and symmetry. An `n` outside `1..=MAX_N` is reported
    /// as `UnsupportedDimension`.
    pub fn to_pencil(&self) -> Result<Pencil> {
        if self.n < 1 || self.n > MAX_N {
            return Err(Error::UnsupportedDimension(self.n as i64));
        }
        let f1 = QuadraticForm::from_rows(self.f1.clone())?;
        let f2 = QuadraticForm::from_rows(self.f2.clone())?;
        Pencil::new(self.n, f1, f2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub label: String,
    pub n: usize,
    pub m: usize,
    /// Coefficients of `s^(m-k) t^k` in `det(s F1 + t F2)`.
    pub determinant: Vec<String>,
    pub r: usize,
    pub complex_pairs: usize,
    pub points: Vec<DegeneracyPoint>,
    /// Arc signatures on the first half circle.
    pub arcs: Vec<Signature>,
    /// Crossing directions around the full circle.
    pub labels: String,
    pub krasnov: KrasnovInvariant,
    pub discriminant_signs: SignWord,
    pub involution: WeylInvolution,
    pub involution_class: InvolutionClass,
    pub real_quadric_classes: usize,
    pub invariant_basis: Vec<BasisElement>,
    pub gram: GramTable,
    pub line_exists: bool,
    pub has_point: bool,
    pub has_line: bool,
    pub real_locus: RealLocusStatus,
    pub verdict: Verdict,
}

pub fn classify_pencil(p: &Pencil, label: &str) -> Result<ClassificationReport> {
    let analysis = pencilalg::analyze(p)?;
    let prof = &analysis.profile;
    let n = p.n();
    let krasnov = krasnov::krasnov_invariant(prof);
    let involution = krasnov::involution(prof);
    let basis = cycles::invariant_basis(&involution, n)?;
    let gram = cycles::gram_table(&basis)?;
    let (has_point, has_line) = verdict::witt_predicates(prof);
    let report = ClassificationReport {
        label: label.to_string(),
        n,
        m: p.m(),
        determinant: analysis.det_form.coeffs().iter().map(ToString::to_string).collect(),
        r: prof.r(),
        complex_pairs: analysis.complex_pairs(),
        points: analysis.points.clone(),
        arcs: prof.half_arcs().to_vec(),
        labels: prof.labels().iter().map(|&l| if l > 0 { '+' } else { '-' }).collect(),
        discriminant_signs: krasnov::discriminant_signs(prof),
        involution_class: involution.class(),
        real_quadric_classes: involution.bold_count(),
        invariant_basis: basis,
        gram,
        line_exists: verdict::line_exists(&krasnov, n),
        has_point,
        has_line,
        real_locus: verdict::real_locus_status(&krasnov, n),
        verdict: verdict::rationality_verdict(&krasnov, n)?,
        krasnov,
        involution,
    };
    debug_assert_eq!(report.r, report.involution_class.r());
    debug_assert_eq!(report.krasnov.r(), report.r);
    Ok(report)
}

pub fn classify_document(doc: &PencilDocument) -> Result<ClassificationReport> {
    let p = doc.to_pencil()?;
    classify_pencil(&p, doc.label.as_deref().unwrap_or(""))
}

pub fn classify_json(text: &str) -> Result<ClassificationReport> {
    classify_document(&PencilDocument::from_json(text)?)
}

impl ClassificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for ClassificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "label: {}", self.label)?;
        writeln!(f, "n: {} (m = {})", self.n, self.m)?;
        writeln!(f, "determinant: [{}]", self.determinant.join(", "))?;
        writeln!(f, "real degeneracy points: {} (complex pairs: {})", self.r, self.complex_pairs)?;
        for (k, p) in self.points.iter().enumerate() {
            writeln!(f, "  {:>2}. {}  singular {}", k + 1, p.root, p.singular_signature)?;
        }
        let arcs: Vec<String> = self.arcs.iter().map(ToString::to_string).collect();
        writeln!(f, "arcs: {}", arcs.join(" "))?;
        writeln!(f, "labels: {}", self.labels)?;
        writeln!(f, "krasnov invariant: {} (as computed {})", self.krasnov, self.krasnov.computed_string())?;
        writeln!(f, "discriminant signs: {}", self.discriminant_signs)?;
        writeln!(f, "involution: {}", self.involution)?;
        writeln!(f, "involution class: {}", self.involution_class)?;
        writeln!(f, "real quadric classes: {}", self.real_quadric_classes)?;
        writeln!(f, "invariant basis:")?;
        for b in &self.invariant_basis {
            match b.block {
                None => writeln!(f, "  {} = {}", b.label, b.class)?,
                Some(i) => writeln!(
                    f,
                    "  {} = {} (block {}{})",
                    b.label,
                    b.class,
                    i,
                    if b.real_quadric { ", real" } else { "" }
                )?,
            }
        }
        writeln!(f, "gram table:")?;
        write!(f, "{}", self.gram)?;
        writeln!(f, "line exists: {}", self.line_exists)?;
        writeln!(f, "witt: has_point={} has_line={}", self.has_point, self.has_line)?;
        writeln!(f, "real locus: {}", self.real_locus)?;
        writeln!(f, "verdict: {} ({})", self.verdict, self.verdict.notes)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasRow {
    pub invariant: String,
    pub as_computed: String,
    pub r: usize,
    pub involution: String,
    pub class: InvolutionClass,
    pub line_exists: bool,
    pub has_point: bool,
    pub has_line: bool,
    pub real_locus: RealLocusStatus,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Atlas {
    pub n: usize,
    pub rows: Vec<AtlasRow>,
    /// Independent count of dihedral orbits of odd compositions.
    pub orbit_count: u64,
}

pub fn atlas(n: usize) -> Result<Atlas> {
    if !(1..=MAX_ATLAS_N).contains(&n) {
        return Err(Error::UnsupportedDimension(n as i64));
    }
    let rows = krasnov::enumerate_isotopy_classes(n)
        .into_iter()
        .map(|c| {
            let (has_point, has_line) = verdict::witt_predicates(&c.profile);
            Ok(AtlasRow {
                invariant: c.invariant.to_string(),
                as_computed: c.invariant.computed_string(),
                r: c.invariant.r(),
                involution: c.involution.to_string(),
                class: c.class,
                line_exists: verdict::line_exists(&c.invariant, n),
                has_point,
                has_line,
                real_locus: verdict::real_locus_status(&c.invariant, n),
                verdict: verdict::rationality_verdict(&c.invariant, n)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Atlas { n, rows, orbit_count: krasnov::isotopy_class_count(n) })
}

impl Atlas {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("atlas serializes")
    }
}

impl fmt::Display for Atlas {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "isotopy classes for n = {}: {} (orbit count {})", self.n, self.rows.len(), self.orbit_count)?;
        let header = ["invariant", "as computed", "r", "(a,b,c)", "line", "locus", "verdict"];
        let cells: Vec<[String; 7]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.invariant.clone(),
                    r.as_computed.clone(),
                    r.r.to_string(),
                    format!("({},{},{})", r.class.a, r.class.b, r.class.c),
                    if r.line_exists { "yes" } else { "no" }.to_string(),
                    r.real_locus.to_string(),
                    r.verdict.to_string(),
                ]
            })
            .collect();
        let widths: Vec<usize> = (0..7)
            .map(|j| cells.iter().map(|c| c[j].len()).chain([header[j].len()]).max().unwrap())
            .collect();
        let line = |row: &[&str]| -> String {
            let parts: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            parts.join("  ").trim_end().to_string()
        };
        writeln!(f, "{}", line(&header))?;
        for c in &cells {
            let row: Vec<&str> = c.iter().map(String::as_str).collect();
            writeln!(f, "{}", line(&row))?;
        }
        Ok(())
    }
}

/// Reported pairing and relation between two weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationQuery {
    pub n: usize,
    pub first: String,
    pub second: String,
    #[serde(with = "rational::serde_str")]
    pub pairing: Rational,
    pub relation: PlaneRelation,
}

pub fn relation_query(n: usize, first: &WeightClass, second: &WeightClass) -> Result<RelationQuery> {
    let relation = dlattice::plane_relation(first, second, n)?;
    Ok(RelationQuery {
        n,
        first: first.to_string(),
        second: second.to_string(),
        pairing: dlattice::pairing(&first.vector(), &second.vector())?,
        relation,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeCounts {
    pub n: usize,
    pub parity: u32,
    pub weights: usize,
    pub disjoint: usize,
    pub meet_in_n_minus_1_plane: usize,
    pub reducible_quadrics: usize,
}

pub fn lattice_counts(n: usize, parity: u32) -> Result<LatticeCounts> {
    check_lattice_n(n)?;
    Ok(LatticeCounts {
        n,
        parity,
        weights: dlattice::weights_of_parity(2 * n + 3, parity).count(),
        disjoint: dlattice::disjoint_count_in(n, parity),
        meet_in_n_minus_1_plane: dlattice::meet_hyperplane_count_in(n, parity),
        reducible_quadrics: dlattice::reducible_quadric_count_in(n, parity),
    })
}

/// Exhaustive lattice scans are capped at `m = 2n+3 <= 13`.
pub fn check_lattice_n(n: usize) -> Result<()> {
    if !(1..=5).contains(&n) {
        return Err(Error::UnsupportedDimension(n as i64));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeQuery {
    pub degree: i64,
    pub self_intersection: i64,
    pub n: usize,
    pub parity: u32,
    pub budget: Budget,
    pub classes: Vec<Decomposition>,
}

pub fn decompose_query(degree: i64, self_int: i64, n: usize, parity: u32) -> Result<DecomposeQuery> {
    check_lattice_n(n)?;
    let budget = Budget::default_for(n);
    let classes = cycles::decompose(degree, self_int, n, &budget, parity)?;
    Ok(DecomposeQuery { degree, self_intersection: self_int, n, parity, budget, classes })
}

impl fmt::Display for DecomposeQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "degree {} self-intersection {} n {}: {} class(es) up to signed permutations",
            self.degree,
            self.self_intersection,
            self.n,
            self.classes.len()
        )?;
        for d in &self.classes {
            let canon: Vec<String> = d.canonical.iter().map(|&v| rational::frac(v, 2).to_string()).collect();
            writeln!(f, "  {}  |L coefficients| = [{}]", d.expression, canon.join(", "))?;
        }
        if self.classes.len() == 1 {
            writeln!(f, "unique up to Weyl")?;
        }
        Ok(())
    }
}

pub fn weights_listing(n: usize, parity: u32) -> Result<String> {
    check_lattice_n(n)?;
    let mut s = String::new();
    for w in dlattice::weights_of_parity(2 * n + 3, parity) {
        writeln!(s, "{w}").unwrap();
    }
    Ok(s)
}
