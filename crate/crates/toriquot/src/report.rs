//! Serializable report types. Field order is fixed, so output is stable.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};
use toriquot_core::invariants::GeneratorSet;
use toriquot_core::morphisms::{Certificate, InequalityVerdict, RelationReport};
use toriquot_core::series::SeriesTruncation;
use toriquot_core::weights::{ClassKey, TypeInfo, TypeKind};
use toriquot_core::IntMatrix;

/// An integer written as a JSON number when it fits in `i64`, else as a string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

pub fn ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().cloned().map(Int).collect()
}

pub fn matrix_rows(a: &IntMatrix) -> Vec<Vec<Int>> {
    a.to_rows().iter().map(|r| ints(r)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TypeSummary {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub a: Vec<Int>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub n: Vec<Int>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub c: Vec<Int>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Int>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub m: Vec<Int>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<Int>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<Int>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column_order: Option<Vec<usize>>,
    /// Number of ways to write the block columns as multiples of one column.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub factorizations: Option<usize>,
}

impl From<&TypeInfo> for TypeSummary {
    fn from(info: &TypeInfo) -> Self {
        let (kind, k) = match info.kind {
            TypeKind::TypeI(k) => ("type-i", Some(k)),
            TypeKind::TypeII(k) => ("type-ii", Some(k)),
            TypeKind::General => ("general", None),
        };
        let typed = k.is_some();
        let opt = |x: &BigInt| typed.then(|| Int(x.clone()));
        TypeSummary {
            kind,
            k,
            a: ints(&info.a),
            n: ints(&info.n),
            c: ints(&info.c),
            alpha: opt(&info.alpha),
            m: ints(&info.m),
            beta: opt(&info.beta),
            eta: opt(&info.eta),
            column_order: info.column_order.clone(),
            factorizations: typed.then_some(info.alternatives.len()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassSummary {
    Eta(Int),
    Triple { k: usize, alpha: Int, beta: Int },
}

impl From<&ClassKey> for ClassSummary {
    fn from(key: &ClassKey) -> Self {
        match key {
            ClassKey::Eta(e) => ClassSummary::Eta(Int(e.clone())),
            ClassKey::Triple(k, a, b) => ClassSummary::Triple { k: *k, alpha: Int(a.clone()), beta: Int(b.clone()) },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorRow {
    pub name: String,
    pub degree: u32,
    /// Exponents of `z`.
    pub z: Vec<u32>,
    /// Exponents of `w`, the conjugate coordinates.
    pub w: Vec<u32>,
    pub nonnegative: bool,
}

pub fn generator_rows(gens: &GeneratorSet) -> Vec<GeneratorRow> {
    gens.generators()
        .iter()
        .zip(gens.nonneg())
        .map(|(g, &nonnegative)| GeneratorRow {
            name: g.name.clone(),
            degree: g.degree(),
            z: g.u.clone(),
            w: g.v.clone(),
            nonnegative,
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationList {
    pub shell: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified_degree: Option<u32>,
    pub relations: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BracketRow {
    pub left: String,
    pub right: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesReport {
    pub order: usize,
    pub offshell: Vec<Int>,
    pub onshell: Vec<Int>,
}

pub fn coefficients(s: &SeriesTruncation) -> Vec<Int> {
    ints(&s.coefficients)
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub check: String,
    pub holds: bool,
}

/// Everything `analyze` derives from one weight matrix.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub matrix: Vec<Vec<Int>>,
    pub type_info: TypeSummary,
    pub faithful: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced: Option<Vec<Vec<Int>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<ClassSummary>,
    /// Why the enumeration stages did not run.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<GeneratorRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relations: Option<RelationList>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brackets: Option<Vec<BracketRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesReport>,
    pub verdicts: Vec<Verdict>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateRow {
    pub element: String,
    pub image: String,
    pub holds: bool,
    /// Nonzero normal forms by radicand.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub residues: Vec<Residue>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Residue {
    pub radicand: Int,
    pub normal_form: String,
}

impl From<&Certificate> for CertificateRow {
    fn from(c: &Certificate) -> Self {
        CertificateRow {
            element: c.label.clone(),
            image: c.image.to_string(),
            holds: c.holds(),
            residues: c
                .residues
                .iter()
                .map(|(r, nf)| Residue { radicand: Int(r.clone()), normal_form: nf.to_string() })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MembershipReport {
    pub holds: bool,
    pub certificates: Vec<CertificateRow>,
}

impl From<&RelationReport> for MembershipReport {
    fn from(r: &RelationReport) -> Self {
        MembershipReport { holds: r.holds, certificates: r.certificates.iter().map(CertificateRow::from).collect() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub generator: String,
    /// Target coordinates as `[re, im]` pairs.
    pub point: Vec<[f64; 2]>,
    pub value: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub squared_moduli: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_value: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InequalityReport {
    pub violated: bool,
    pub samples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessReport>,
}

impl InequalityReport {
    pub fn new(v: &InequalityVerdict, samples: usize) -> Self {
        match v {
            InequalityVerdict::Violated(w) => InequalityReport {
                violated: true,
                samples,
                witness: Some(WitnessReport {
                    generator: w.generator.clone(),
                    point: w.point.iter().map(|&(re, im)| [re, im]).collect(),
                    value: [w.value.0, w.value.1],
                    squared_moduli: w.squared_moduli.clone(),
                    exact_value: w.exact.as_ref().map(|c| c.to_string()),
                }),
            },
            InequalityVerdict::NoViolationFound { samples } => {
                InequalityReport { violated: false, samples: *samples, witness: None }
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MapReport {
    pub source: Vec<Vec<Int>>,
    pub target: Vec<Vec<Int>>,
    pub shell: &'static str,
    pub images: Vec<(String, String)>,
    pub graded: bool,
    pub relations: MembershipReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inverse: Option<InverseReport>,
    pub poisson: MembershipReport,
    pub inequalities: InequalityReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct InverseReport {
    /// Set when no graded inverse exists modulo the target relations.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub images: Vec<(String, String)>,
    pub graded: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relations: Option<MembershipReport>,
}

/// One expected-versus-actual comparison of a reproduction item.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
    /// Set on comparisons known to disagree with the printed value; they are
    /// shown but do not decide the item.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub known_discrepancy: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Check { name: name.into(), pass: expected == actual, expected, actual, known_discrepancy: None }
    }

    pub fn flag(name: impl Into<String>, holds: bool) -> Self {
        Check::new(name, true, holds)
    }

    pub fn known(mut self, reason: impl Into<String>) -> Self {
        self.known_discrepancy = Some(reason.into());
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReproductionReport {
    pub item: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl ReproductionReport {
    pub fn new(item: &str, checks: Vec<Check>) -> Self {
        let pass = checks.iter().filter(|c| c.known_discrepancy.is_none()).all(|c| c.pass);
        ReproductionReport { item: item.to_string(), pass, checks }
    }
}
