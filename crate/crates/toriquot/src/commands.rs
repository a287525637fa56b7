//! One function per subcommand. Each returns a serializable report.

use num_bigint::BigInt;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toriquot_core::invariants::{
    bracket_table, invariant_generators_named, onshell, toric_relations, type1_generators, type1_relations,
    GeneratorSet, PresentationIdeal, Shell,
};
use toriquot_core::morphisms::{
    verify_graded, verify_inequalities, verify_poisson, verify_relations, Codomain, GradedMonomialMap,
};
use toriquot_core::series::{offshell_dims, onshell_dims};
use toriquot_core::weights::{classify, detect_type, is_faithful, reduce_to_circle, TypeInfo, TypeKind};
use toriquot_core::{Error as CoreError, IntMatrix};

use crate::error::{CliError, Result};
use crate::io::MapFile;
use crate::report::*;

pub const DEFAULT_DEGREE_BOUND: usize = 12;
pub const MAX_ALPHA: u32 = 8;
pub const MAX_COLUMNS: usize = 8;

/// Enumeration guard: at most eight columns and, for typed matrices, `α ≤ 8`.
pub fn guard(a: &IntMatrix, info: &TypeInfo) -> std::result::Result<(), String> {
    if a.cols() > MAX_COLUMNS {
        return Err(format!("{} columns (limit {})", a.cols(), MAX_COLUMNS));
    }
    if info.kind != TypeKind::General && info.alpha > BigInt::from(MAX_ALPHA) {
        return Err(format!("alpha = {} (limit {})", info.alpha, MAX_ALPHA));
    }
    Ok(())
}

fn enforce(a: &IntMatrix, allow_large: bool) -> Result<TypeInfo> {
    let info = detect_type(a)?;
    if !allow_large {
        guard(a, &info).map_err(CliError::Guard)?;
    }
    Ok(info)
}

fn shell_name(s: Shell) -> &'static str {
    match s {
        Shell::Off => "off",
        Shell::On => "on",
    }
}

pub fn relation_list(p: &PresentationIdeal) -> RelationList {
    RelationList {
        shell: shell_name(p.shell),
        certified_degree: p.certified_degree,
        relations: p.relations().iter().map(|f| f.to_string()).collect(),
    }
}

pub fn bracket_rows(gens: &GeneratorSet) -> Result<Vec<BracketRow>> {
    Ok(bracket_table(gens)?
        .into_iter()
        .filter(|(i, j, _)| i < j)
        .map(|(i, j, b)| BracketRow {
            left: gens.get(i).name.clone(),
            right: gens.get(j).name.clone(),
            value: b.to_string(),
        })
        .collect())
}

pub fn analyze(a: &IntMatrix, degree_bound: usize, on: bool, allow_large: bool) -> Result<AnalysisReport> {
    let info = detect_type(a)?;
    let faithful = is_faithful(a)?;
    let typed = info.kind != TypeKind::General;
    let reduced = if typed && faithful { Some(reduce_to_circle(&info)?) } else { None };
    let class = match info.kind {
        TypeKind::TypeI(_) if faithful => Some(ClassSummary::from(&classify(&info)?)),
        _ => None,
    };
    let mut report = AnalysisReport {
        matrix: matrix_rows(a),
        type_info: TypeSummary::from(&info),
        faithful,
        reduced: reduced.as_ref().map(matrix_rows),
        class,
        skipped: None,
        generators: None,
        relations: None,
        brackets: None,
        series: None,
        verdicts: Vec::new(),
    };
    if let (Err(reason), false) = (guard(a, &info), allow_large) {
        report.skipped = Some(format!("enumeration skipped: {}", reason));
        return Ok(report);
    }

    let gens = invariant_generators_named(a, "g")?;
    report.verdicts.push(Verdict { check: "generators are invariant".into(), holds: gens.check_invariance(a).is_ok() });
    let off = toric_relations(&gens)?;
    let vanish = off.relations().iter().all(|f| gens.to_ambient(f).map(|g| g.is_zero()).unwrap_or(false));
    report.verdicts.push(Verdict { check: "relations vanish on the generators".into(), holds: vanish });
    if let (TypeKind::TypeI(_), true) = (info.kind, faithful) {
        let closed = type1_generators(&info)?;
        let mut x: Vec<_> = closed.generators().iter().map(|g| (g.u.clone(), g.v.clone())).collect();
        let mut y: Vec<_> = gens.generators().iter().map(|g| (g.u.clone(), g.v.clone())).collect();
        x.sort();
        y.sort();
        report.verdicts.push(Verdict { check: "closed-form generators equal the Hilbert basis".into(), holds: x == y });
    }
    let pres = if on { onshell(&off, a)? } else { off };
    report.relations = Some(relation_list(&pres));
    report.brackets = Some(bracket_rows(&gens)?);
    report.generators = Some(generator_rows(&gens));

    let offs = offshell_dims(a, degree_bound)?;
    let ons = onshell_dims(a, degree_bound)?;
    if let Some(b) = &reduced {
        let same = onshell_dims(b, degree_bound)? == ons;
        report.verdicts.push(Verdict { check: "reduced matrix has the same on-shell series".into(), holds: same });
    }
    report.series =
        Some(SeriesReport { order: degree_bound, offshell: coefficients(&offs), onshell: coefficients(&ons) });
    Ok(report)
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct ReduceReport {
    pub matrix: Vec<Vec<Int>>,
    pub type_info: TypeSummary,
    pub reduced: Vec<Vec<Int>>,
}

pub fn reduce(a: &IntMatrix) -> Result<ReduceReport> {
    let info = detect_type(a)?;
    let b = reduce_to_circle(&info)?;
    Ok(ReduceReport { matrix: matrix_rows(a), type_info: TypeSummary::from(&info), reduced: matrix_rows(&b) })
}

/// Hilbert-basis generators, or the closed-form Type I_k generators.
pub fn generators(a: &IntMatrix, prefix: &str, closed_form: bool, allow_large: bool) -> Result<GeneratorSet> {
    let info = enforce(a, allow_large)?;
    if closed_form {
        Ok(type1_generators(&info)?)
    } else {
        Ok(invariant_generators_named(a, prefix)?)
    }
}

pub fn invariants(a: &IntMatrix, prefix: &str, closed_form: bool, allow_large: bool) -> Result<Vec<GeneratorRow>> {
    Ok(generator_rows(&generators(a, prefix, closed_form, allow_large)?))
}

pub fn relations(a: &IntMatrix, prefix: &str, closed_form: bool, on: bool, allow_large: bool) -> Result<RelationList> {
    let info = enforce(a, allow_large)?;
    let shell = if on { Shell::On } else { Shell::Off };
    let pres = if closed_form {
        type1_relations(&info, shell)?
    } else {
        let off = toric_relations(&invariant_generators_named(a, prefix)?)?;
        if on {
            onshell(&off, a)?
        } else {
            off
        }
    };
    Ok(relation_list(&pres))
}

pub fn brackets(a: &IntMatrix, prefix: &str, closed_form: bool, allow_large: bool) -> Result<Vec<BracketRow>> {
    bracket_rows(&generators(a, prefix, closed_form, allow_large)?)
}

pub fn series(a: &IntMatrix, degree_bound: usize, allow_large: bool) -> Result<SeriesReport> {
    enforce(a, allow_large)?;
    Ok(SeriesReport {
        order: degree_bound,
        offshell: coefficients(&offshell_dims(a, degree_bound)?),
        onshell: coefficients(&onshell_dims(a, degree_bound)?),
    })
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct ClassifyReport {
    pub type_info: TypeSummary,
    pub faithful: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<ClassSummary>,
}

pub fn classify_matrix(a: &IntMatrix) -> Result<ClassifyReport> {
    let info = detect_type(a)?;
    let faithful = is_faithful(a)?;
    let class = match info.kind {
        TypeKind::TypeI(_) if faithful => Some(ClassSummary::from(&classify(&info)?)),
        _ => None,
    };
    Ok(ClassifyReport { type_info: TypeSummary::from(&info), faithful, class })
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub onshell: bool,
    pub inverse: bool,
    pub samples: usize,
    pub seed: u64,
    pub allow_large: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { onshell: true, inverse: true, samples: 50, seed: 0, allow_large: false }
    }
}

fn presentation(a: &IntMatrix, gens: &GeneratorSet, on: bool) -> Result<PresentationIdeal> {
    let off = toric_relations(gens)?;
    let p = if on { onshell(&off, a)? } else { off };
    Ok(p.prepared()?)
}

fn image_rows(map: &GradedMonomialMap) -> Vec<(String, String)> {
    map.source().generators().iter().zip(map.images()).map(|(g, im)| (g.name.clone(), im.to_string())).collect()
}

/// Builds the map described by `file` between the Hilbert-basis
/// presentations of `source` and `target`.
pub fn load_map(file: &MapFile, source: &IntMatrix, target: &IntMatrix) -> Result<GradedMonomialMap> {
    let src = invariant_generators_named(source, &file.source_prefix)?;
    let dst = invariant_generators_named(target, &file.target_prefix)?;
    let pairs: Vec<(&String, &String)> = file.images.iter().collect();
    Ok(GradedMonomialMap::from_assignments(src, Codomain::Generators(dst), &pairs, Some(source))?)
}

pub fn verify_map(file: &MapFile, source: &IntMatrix, target: &IntMatrix, opts: &VerifyOptions) -> Result<MapReport> {
    enforce(source, opts.allow_large)?;
    enforce(target, opts.allow_large)?;
    let map = load_map(file, source, target)?;
    let Codomain::Generators(dst_gens) = map.codomain() else { unreachable!("generator codomain") };
    let src = presentation(source, map.source(), opts.onshell)?;
    let dst = presentation(target, dst_gens, opts.onshell)?;

    let forward = verify_relations(&map, &src.ideal, &dst.ideal)?;
    let inverse = if opts.inverse {
        Some(match map.inverse(&dst.ideal) {
            Ok(inv) => {
                let back = verify_relations(&inv, &dst.ideal, &src.ideal)?;
                InverseReport {
                    error: None,
                    images: image_rows(&inv),
                    graded: verify_graded(&inv),
                    relations: Some((&back).into()),
                }
            }
            Err(e @ (CoreError::Argument(_) | CoreError::Precondition(_))) => {
                InverseReport { error: Some(e.to_string()), images: Vec::new(), graded: false, relations: None }
            }
            Err(e) => return Err(e.into()),
        })
    } else {
        None
    };
    let poisson = verify_poisson(&map, &dst.ideal)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let verdict = verify_inequalities(&map, target, opts.samples, &mut rng)?;
    Ok(MapReport {
        source: matrix_rows(source),
        target: matrix_rows(target),
        shell: if opts.onshell { "on" } else { "off" },
        images: image_rows(&map),
        graded: verify_graded(&map),
        relations: (&forward).into(),
        inverse,
        poisson: (&poisson).into(),
        inequalities: InequalityReport::new(&verdict, 2 * opts.samples),
    })
}
