//! Command implementations behind the `deloop` binary.
//!
//! Every command produces a structured JSON report first; the human
//! rendering is derived from the same data. Identical configurations give
//! byte-identical structured output. Exit conventions: 0 when every
//! verdict passes, 1 on verdict failures, 2 on input or validation errors.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use deloop_core::bar::{bar, hspace_structure, is_grouplike, BarConstruction};
use deloop_core::cat::{
    compose_functors, endpoint_inclusion, functor_to_nat, nat_to_functor, nerve_bounded,
    nerve_map, product_category, two_category, CatError, FiniteCategory, FiniteMonoid, Functor,
    NaturalTransformation,
};
use deloop_core::delta::{
    arrow_count_suite, cosimplicial_identity_suite, evaluate_word,
    multiplication_identity_suite, IdentityCheck, OpArrow,
};
use deloop_core::homology::{homology, normalized_chains, HomologyGroups};
use deloop_core::sset::{
    check_segal, check_segal_multi, diag, slice_ones, MultiSimplicialSet, SimplicialSet,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown built-in and unreadable path {name:?}: {source_error}")]
    UnknownInput { name: String, source_error: String },
    #[error("{0}")]
    Validation(String),
    #[error(
        "configuration refused: largest level set would hold {estimate} simplices, \
         above the limit {limit} (raise --size-limit to override)"
    )]
    TooLarge { estimate: String, limit: u128 },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Structured,
}

#[derive(Parser, Debug)]
#[command(
    name = "deloop",
    about = "exact checks and homology for nerves and reduced bar constructions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format: human-readable lines or canonical JSON.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    pub format: Format,

    /// Refuse configurations whose largest level set exceeds this many
    /// simplices.
    #[arg(long, global = true, default_value_t = 1 << 22)]
    pub size_limit: u128,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the arrow-calculus identity and counting suites.
    DeltaSuite {
        /// Largest rank for the coface/codegeneracy relations.
        #[arg(long, default_value_t = 10)]
        max_rank: usize,
        /// Largest rank for the arrow-count comparison.
        #[arg(long, default_value_t = 6)]
        max_count_rank: usize,
        /// Corrupt one identity to exercise failure reporting.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Check the Segal conditions of a nerve or a bar construction.
    Segal {
        /// Built-in monoid name or path to a monoid file.
        #[arg(long, conflicts_with = "category")]
        monoid: Option<String>,
        /// Built-in category name or path to a category file.
        #[arg(long)]
        category: Option<String>,
        /// Number of bar directions (with --monoid).
        #[arg(long, default_value_t = 1)]
        fold: usize,
        /// Truncation ceiling per direction; defaults to what the check
        /// needs.
        #[arg(long)]
        trunc: Option<usize>,
        /// Largest Segal level to check.
        #[arg(long, default_value_t = 3)]
        max_m: usize,
        /// Largest pinned level for multisimplicial slices.
        #[arg(long, default_value_t = 3)]
        max_k: usize,
    },
    /// Integral homology of a nerve or of the diagonal of a bar
    /// construction.
    Homology {
        #[arg(long, conflicts_with = "category")]
        monoid: Option<String>,
        #[arg(long)]
        category: Option<String>,
        #[arg(long, default_value_t = 1)]
        fold: usize,
        /// Truncation ceiling; must be at least max_degree + 1.
        #[arg(long)]
        trunc: Option<usize>,
        /// Largest homology degree to compute exactly.
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// Delooping check: the homology of the bar diagonal must vanish below
    /// the fold and carry the group in the fold degree.
    Deloop {
        /// Built-in monoid name or path to a monoid file.
        #[arg(long)]
        monoid: String,
        #[arg(long, default_value_t = 1)]
        fold: usize,
        /// Truncation ceiling; must be at least max_degree + 1.
        #[arg(long)]
        trunc: Option<usize>,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// Round-trip a natural transformation through its cylinder functor
    /// and compare the nerve-level endpoint restrictions.
    NatCheck {
        /// Path to a JSON description of the categories, functors and
        /// transformation.
        #[arg(long)]
        spec: PathBuf,
        /// Nerve truncation for the endpoint comparison.
        #[arg(long, default_value_t = 3)]
        trunc: usize,
    },
}

/// A finished run: overall verdict plus the structured report and its
/// human rendering.
pub struct Outcome {
    pub passed: bool,
    pub structured: Value,
    pub human: String,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn rendered(&self, format: Format) -> String {
        match format {
            Format::Human => self.human.clone(),
            Format::Structured => {
                serde_json::to_string_pretty(&self.structured).expect("report serializes")
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::DeltaSuite {
            max_rank,
            max_count_rank,
            inject_fault,
        } => cmd_delta_suite(*max_rank, *max_count_rank, *inject_fault),
        Command::Segal {
            monoid,
            category,
            fold,
            trunc,
            max_m,
            max_k,
        } => cmd_segal(
            monoid.as_deref(),
            category.as_deref(),
            *fold,
            *trunc,
            *max_m,
            *max_k,
            cli.size_limit,
        ),
        Command::Homology {
            monoid,
            category,
            fold,
            trunc,
            max_degree,
        } => cmd_homology(
            monoid.as_deref(),
            category.as_deref(),
            *fold,
            *trunc,
            *max_degree,
            cli.size_limit,
        ),
        Command::Deloop {
            monoid,
            fold,
            trunc,
            max_degree,
        } => cmd_deloop(monoid, *fold, *trunc, *max_degree, cli.size_limit),
        Command::NatCheck { spec, trunc } => cmd_nat_check(spec, *trunc),
    }
}

fn resolve_monoid(name: &str) -> Result<FiniteMonoid, CliError> {
    if let Some(m) = FiniteMonoid::by_name(name) {
        return Ok(m);
    }
    let text = fs::read_to_string(name).map_err(|e| CliError::UnknownInput {
        name: name.to_string(),
        source_error: e.to_string(),
    })?;
    FiniteMonoid::from_json_str(&text).map_err(|e| CliError::Validation(e.to_string()))
}

fn resolve_category(name: &str) -> Result<FiniteCategory, CliError> {
    if let Some(c) = FiniteCategory::by_name(name) {
        return Ok(c);
    }
    let text = fs::read_to_string(name).map_err(|e| CliError::UnknownInput {
        name: name.to_string(),
        source_error: e.to_string(),
    })?;
    FiniteCategory::from_json_str(&text).map_err(|e| CliError::Validation(e.to_string()))
}

fn guard_bar_size(
    construction: &BarConstruction,
    truncations: &[usize],
    limit: u128,
) -> Result<(), CliError> {
    match construction.level_size_checked(truncations) {
        Some(size) if size <= limit => Ok(()),
        Some(size) => Err(CliError::TooLarge {
            estimate: size.to_string(),
            limit,
        }),
        None => Err(CliError::TooLarge {
            estimate: "more than 2^128".to_string(),
            limit,
        }),
    }
}

#[derive(Serialize)]
struct SuiteSection {
    suite: String,
    checks: usize,
    failures: Vec<IdentityCheck>,
}

fn cmd_delta_suite(
    max_rank: usize,
    max_count_rank: usize,
    inject_fault: bool,
) -> Result<Outcome, CliError> {
    let mut sections = Vec::new();
    let mut record = |suite: &str, checks: Vec<IdentityCheck>| {
        let failures: Vec<IdentityCheck> =
            checks.iter().filter(|c| !c.passed).cloned().collect();
        sections.push(SuiteSection {
            suite: suite.to_string(),
            checks: checks.len(),
            failures,
        });
    };
    record("cosimplicial identities", cosimplicial_identity_suite(max_rank));
    record("multiplication identities", multiplication_identity_suite());
    record("arrow counts", arrow_count_suite(max_count_rank));
    if inject_fault {
        let lhs = evaluate_word(&[
            OpArrow::face(2, 1).expect("face"),
            OpArrow::face(3, 3).expect("face"),
        ])
        .expect("composable");
        let rhs = evaluate_word(&[
            OpArrow::face(2, 1).expect("face"),
            OpArrow::face(3, 0).expect("face"),
        ])
        .expect("composable");
        record(
            "injected fault",
            vec![IdentityCheck {
                label: "d2_1 d3_3 = d2_1 d3_0".to_string(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
                passed: lhs == rhs,
            }],
        );
    }

    let passed = sections.iter().all(|s| s.failures.is_empty());
    let structured = json!({
        "command": "delta-suite",
        "max_rank": max_rank,
        "sections": sections,
        "passed": passed,
    });
    let mut human = String::new();
    for section in &sections {
        let status = if section.failures.is_empty() { "pass" } else { "FAIL" };
        let _ = writeln!(human, "{status}  {} ({} checks)", section.suite, section.checks);
        for failure in &section.failures {
            let _ = writeln!(
                human,
                "      {}: lhs {} vs rhs {}",
                failure.label, failure.lhs, failure.rhs
            );
        }
    }
    let _ = writeln!(human, "delta-suite: {}", if passed { "pass" } else { "FAIL" });
    Ok(Outcome {
        passed,
        structured,
        human,
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_segal(
    monoid: Option<&str>,
    category: Option<&str>,
    fold: usize,
    trunc: Option<usize>,
    max_m: usize,
    max_k: usize,
    size_limit: u128,
) -> Result<Outcome, CliError> {
    match (monoid, category) {
        (Some(name), None) => {
            let m = resolve_monoid(name)?;
            let ceiling = trunc.unwrap_or_else(|| max_m.max(max_k).max(1));
            let truncations = vec![ceiling; fold];
            let w = bar(&m, fold, &truncations)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            // the check only visits pinned slices, whose largest level is
            // the free direction at max_m with every other pinned at max_k
            let mut widest = vec![max_k; fold];
            widest[0] = max_m;
            guard_bar_size(&w, &widest, size_limit)?;
            let report = check_segal_multi(Arc::new(w), max_m, max_k)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            let passed = report.all_bijective();
            let mut human = String::new();
            for slice in &report.slices {
                for level in &slice.report.levels {
                    let ok = level.verdict.is_bijective();
                    let _ = writeln!(
                        human,
                        "{}  ones={} pinned={} m={}{}",
                        if ok { "pass" } else { "FAIL" },
                        slice.ones,
                        slice.pinned,
                        level.m,
                        if ok {
                            String::new()
                        } else {
                            format!("  {:?}", level.verdict)
                        }
                    );
                }
            }
            let _ = writeln!(human, "segal: {}", if passed { "pass" } else { "FAIL" });
            Ok(Outcome {
                passed,
                structured: json!({
                    "command": "segal",
                    "monoid": name,
                    "fold": fold,
                    "max_m": max_m,
                    "max_k": max_k,
                    "report": report,
                    "passed": passed,
                }),
                human,
            })
        }
        (None, Some(name)) => {
            let c = resolve_category(name)?;
            let ceiling = trunc.unwrap_or(max_m);
            if ceiling < max_m {
                return Err(CliError::Validation(format!(
                    "truncation {ceiling} cannot host Segal levels up to {max_m}"
                )));
            }
            let n = nerve_bounded(&c, ceiling, usize::try_from(size_limit).unwrap_or(usize::MAX))
                .map_err(|e| match e {
                    CatError::NerveTooLarge { level, limit } => CliError::TooLarge {
                        estimate: format!("level {level} overflow"),
                        limit: limit as u128,
                    },
                    other => CliError::Validation(other.to_string()),
                })?;
            let report =
                check_segal(&n, max_m).map_err(|e| CliError::Validation(e.to_string()))?;
            let passed = report.all_bijective();
            let mut human = String::new();
            for level in &report.levels {
                let ok = level.verdict.is_bijective();
                let _ = writeln!(
                    human,
                    "{}  m={}{}",
                    if ok { "pass" } else { "FAIL" },
                    level.m,
                    if ok {
                        String::new()
                    } else {
                        format!("  {:?}", level.verdict)
                    }
                );
            }
            let _ = writeln!(human, "segal: {}", if passed { "pass" } else { "FAIL" });
            Ok(Outcome {
                passed,
                structured: json!({
                    "command": "segal",
                    "category": name,
                    "max_m": max_m,
                    "report": report,
                    "passed": passed,
                }),
                human,
            })
        }
        _ => Err(CliError::Validation(
            "exactly one of --monoid or --category is required".to_string(),
        )),
    }
}

/// Builds the target simplicial set of `homology`/`deloop`: the nerve of a
/// category or the diagonal of a bar construction, sized for `max_degree`.
fn homology_target(
    monoid: Option<&str>,
    category: Option<&str>,
    fold: usize,
    trunc: Option<usize>,
    max_degree: usize,
    size_limit: u128,
) -> Result<(String, Arc<dyn SimplicialSet>), CliError> {
    let chain_depth = max_degree + 1;
    if let Some(ceiling) = trunc {
        if ceiling < chain_depth {
            return Err(CliError::Validation(format!(
                "truncation {ceiling} cannot compute degree {max_degree}: chains need level {chain_depth}"
            )));
        }
    }
    let ceiling = trunc.unwrap_or(chain_depth);
    match (monoid, category) {
        (Some(name), None) => {
            let m = resolve_monoid(name)?;
            let truncations = vec![ceiling; fold];
            let w = bar(&m, fold, &truncations)
                .map_err(|e| CliError::Validation(e.to_string()))?;
            guard_bar_size(&w, &truncations, size_limit)?;
            let target: Arc<dyn SimplicialSet> =
                Arc::new(diag(Arc::new(w) as Arc<dyn MultiSimplicialSet>));
            Ok((format!("diagonal of the {fold}-fold bar of {name}"), target))
        }
        (None, Some(name)) => {
            let c = resolve_category(name)?;
            let n = nerve_bounded(&c, ceiling, usize::try_from(size_limit).unwrap_or(usize::MAX))
                .map_err(|e| match e {
                    CatError::NerveTooLarge { level, limit } => CliError::TooLarge {
                        estimate: format!("level {level} overflow"),
                        limit: limit as u128,
                    },
                    other => CliError::Validation(other.to_string()),
                })?;
            Ok((format!("nerve of {name}"), Arc::new(n)))
        }
        _ => Err(CliError::Validation(
            "exactly one of --monoid or --category is required".to_string(),
        )),
    }
}

fn homology_table(
    target: &Arc<dyn SimplicialSet>,
    max_degree: usize,
) -> Result<HomologyGroups, CliError> {
    let chains = normalized_chains(target.as_ref(), max_degree + 1)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    Ok(homology(&chains))
}

fn render_homology(h: &HomologyGroups, max_degree: usize) -> String {
    let mut out = String::new();
    for degree in h.degrees.iter().filter(|d| d.degree <= max_degree) {
        let _ = writeln!(out, "{degree}");
    }
    out
}

fn cmd_homology(
    monoid: Option<&str>,
    category: Option<&str>,
    fold: usize,
    trunc: Option<usize>,
    max_degree: usize,
    size_limit: u128,
) -> Result<Outcome, CliError> {
    let (label, target) =
        homology_target(monoid, category, fold, trunc, max_degree, size_limit)?;
    let h = homology_table(&target, max_degree)?;
    let structured = json!({
        "command": "homology",
        "target": label,
        "max_degree": max_degree,
        "degrees": h.to_json_value(),
        "passed": true,
    });
    let mut human = format!("{label}\n");
    human.push_str(&render_homology(&h, max_degree));
    Ok(Outcome {
        passed: true,
        structured,
        human,
    })
}

#[derive(Serialize)]
struct Verdict {
    check: String,
    passed: bool,
    detail: String,
}

fn cmd_deloop(
    monoid: &str,
    fold: usize,
    trunc: Option<usize>,
    max_degree: usize,
    size_limit: u128,
) -> Result<Outcome, CliError> {
    if fold == 0 {
        return Err(CliError::Validation("fold must be at least one".into()));
    }
    let m = resolve_monoid(monoid)?;
    let floor = (max_degree + 1).max(2);
    let ceiling = trunc.unwrap_or(floor);
    if ceiling < floor {
        return Err(CliError::Validation(format!(
            "truncation {ceiling} cannot compute degree {max_degree}: chains need level {floor}"
        )));
    }
    let truncations = vec![ceiling; fold];
    let w = bar(&m, fold, &truncations).map_err(|e| CliError::Validation(e.to_string()))?;
    guard_bar_size(&w, &truncations, size_limit)?;
    let shared: Arc<dyn MultiSimplicialSet> = Arc::new(w);
    let target: Arc<dyn SimplicialSet> = Arc::new(diag(shared.clone()));

    // the hypothesis: the multiplication carried by level one — read off
    // the slice pinned at one in every other direction — is grouplike
    let hypothesis_slice = slice_ones(shared, fold - 1, 1)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let h_space = hspace_structure(&hypothesis_slice)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    if !is_grouplike(&h_space) {
        let detail = format!(
            "hypothesis violation: the multiplication on level one of {monoid} \
             is not grouplike, so no delooping is claimed"
        );
        let structured = json!({
            "command": "deloop",
            "monoid": monoid,
            "fold": fold,
            "verdicts": [Verdict {
                check: "grouplike hypothesis".to_string(),
                passed: false,
                detail: detail.clone(),
            }],
            "passed": false,
        });
        return Ok(Outcome {
            passed: false,
            structured,
            human: format!("FAIL  {detail}\ndeloop: FAIL\n"),
        });
    }
    let factors = m.abelian_invariant_factors().ok_or_else(|| {
        CliError::Validation(format!(
            "{monoid} is a noncommutative group; no expected homology shape is defined"
        ))
    })?;

    let h = homology_table(&target, max_degree)?;
    let mut verdicts = vec![Verdict {
        check: "grouplike hypothesis".to_string(),
        passed: true,
        detail: "level-one multiplication has two-sided inverses".to_string(),
    }];
    for k in 1..fold.min(max_degree + 1) {
        let trivial = h.is_trivial(k).unwrap_or(false);
        verdicts.push(Verdict {
            check: format!("H_{k} = 0"),
            passed: trivial,
            detail: h
                .degrees
                .iter()
                .find(|d| d.degree == k)
                .map(|d| d.to_string())
                .unwrap_or_default(),
        });
    }
    if fold <= max_degree {
        let expected: Vec<u64> = factors;
        let got = h.computed(fold);
        let passed = got == Some((0, expected.as_slice()));
        verdicts.push(Verdict {
            check: format!("H_{fold} carries the group"),
            passed,
            detail: format!(
                "expected torsion {expected:?}, computed {}",
                h.degrees
                    .iter()
                    .find(|d| d.degree == fold)
                    .map(|d| d.to_string())
                    .unwrap_or_default()
            ),
        });
    }

    let passed = verdicts.iter().all(|v| v.passed);
    let mut human = String::new();
    human.push_str(&render_homology(&h, max_degree));
    for v in &verdicts {
        let _ = writeln!(
            human,
            "{}  {}: {}",
            if v.passed { "pass" } else { "FAIL" },
            v.check,
            v.detail
        );
    }
    let _ = writeln!(human, "deloop: {}", if passed { "pass" } else { "FAIL" });
    let structured = json!({
        "command": "deloop",
        "monoid": monoid,
        "fold": fold,
        "max_degree": max_degree,
        "degrees": h.to_json_value(),
        "verdicts": verdicts,
        "passed": passed,
    });
    Ok(Outcome {
        passed,
        structured,
        human,
    })
}

#[derive(serde::Deserialize)]
struct NatCheckDoc {
    source: serde_json::Value,
    target: serde_json::Value,
    f: FunctorDoc,
    g: FunctorDoc,
    alpha: std::collections::BTreeMap<String, String>,
}

#[derive(serde::Deserialize)]
struct FunctorDoc {
    objects: std::collections::BTreeMap<String, String>,
    arrows: std::collections::BTreeMap<String, String>,
}

fn functor_from_doc(
    doc: &FunctorDoc,
    src: &FiniteCategory,
    dst: &FiniteCategory,
) -> Result<Functor, CliError> {
    let mut object_map = vec![usize::MAX; src.object_count()];
    for (from, to) in &doc.objects {
        let x = src
            .object_index(from)
            .ok_or_else(|| CliError::Validation(format!("unknown source object {from:?}")))?;
        object_map[x] = dst
            .object_index(to)
            .ok_or_else(|| CliError::Validation(format!("unknown target object {to:?}")))?;
    }
    let mut arrow_map = vec![usize::MAX; src.arrow_count()];
    for (from, to) in &doc.arrows {
        let a = src
            .arrow_index(from)
            .ok_or_else(|| CliError::Validation(format!("unknown source arrow {from:?}")))?;
        arrow_map[a] = dst
            .arrow_index(to)
            .ok_or_else(|| CliError::Validation(format!("unknown target arrow {to:?}")))?;
    }
    if object_map.iter().chain(arrow_map.iter()).any(|&v| v == usize::MAX) {
        return Err(CliError::Validation(
            "functor description leaves objects or arrows unmapped".to_string(),
        ));
    }
    Functor::new(src, dst, object_map, arrow_map)
        .map_err(|e| CliError::Validation(e.to_string()))
}

fn cmd_nat_check(spec: &PathBuf, trunc: usize) -> Result<Outcome, CliError> {
    let text = fs::read_to_string(spec).map_err(|e| CliError::UnknownInput {
        name: spec.display().to_string(),
        source_error: e.to_string(),
    })?;
    let doc: NatCheckDoc =
        serde_json::from_str(&text).map_err(|e| CliError::Validation(e.to_string()))?;
    let source = FiniteCategory::from_json_str(&doc.source.to_string())
        .map_err(|e| CliError::Validation(format!("source category: {e}")))?;
    let target = FiniteCategory::from_json_str(&doc.target.to_string())
        .map_err(|e| CliError::Validation(format!("target category: {e}")))?;
    let f = functor_from_doc(&doc.f, &source, &target)?;
    let g = functor_from_doc(&doc.g, &source, &target)?;
    let components = (0..source.object_count())
        .map(|x| {
            let name = doc.alpha.get(source.object_name(x)).ok_or_else(|| {
                CliError::Validation(format!(
                    "missing component at object {:?}",
                    source.object_name(x)
                ))
            })?;
            target
                .arrow_index(name)
                .ok_or_else(|| CliError::Validation(format!("unknown component arrow {name:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let alpha = NaturalTransformation::new(&source, &target, &f, &g, components)
        .map_err(|e| CliError::Validation(e.to_string()))?;

    let a = nat_to_functor(&source, &target, &f, &g, &alpha);
    let (f2, g2, alpha2) =
        functor_to_nat(&source, &target, &a).map_err(|e| CliError::Validation(e.to_string()))?;

    let mut verdicts = vec![
        Verdict {
            check: "round trip recovers the end functors".to_string(),
            passed: f2 == f && g2 == g,
            detail: "functor_to_nat after nat_to_functor".to_string(),
        },
        Verdict {
            check: "round trip recovers the transformation".to_string(),
            passed: alpha2 == alpha,
            detail: "component arrows compared".to_string(),
        },
    ];

    // nerve-level endpoint restrictions
    let cylinder = product_category(&source, &two_category());
    let nc = nerve_bounded(&source, trunc, usize::MAX)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let ncyl = nerve_bounded(&cylinder, trunc, usize::MAX)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let nd = nerve_bounded(&target, trunc, usize::MAX)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    for (end, expected) in [(0usize, &f), (1usize, &g)] {
        let inclusion = endpoint_inclusion(&source, &cylinder, end);
        let composite = compose_functors(&a, &inclusion);
        let mut agrees = composite == *expected;
        for k in 0..=trunc {
            for x in 0..nc.level_size(k) {
                let lifted = nerve_map(&inclusion, &nc, &ncyl, k, x);
                if nerve_map(&a, &ncyl, &nd, k, lifted)
                    != nerve_map(expected, &nc, &nd, k, x)
                {
                    agrees = false;
                }
            }
        }
        verdicts.push(Verdict {
            check: format!("nerve restriction at end {end}"),
            passed: agrees,
            detail: format!("levels up to {trunc} compared"),
        });
    }

    let passed = verdicts.iter().all(|v| v.passed);
    let mut human = String::new();
    for v in &verdicts {
        let _ = writeln!(
            human,
            "{}  {}: {}",
            if v.passed { "pass" } else { "FAIL" },
            v.check,
            v.detail
        );
    }
    let _ = writeln!(human, "nat-check: {}", if passed { "pass" } else { "FAIL" });
    let structured = json!({
        "command": "nat-check",
        "spec": spec.display().to_string(),
        "trunc": trunc,
        "verdicts": verdicts,
        "passed": passed,
    });
    Ok(Outcome {
        passed,
        structured,
        human,
    })
}
