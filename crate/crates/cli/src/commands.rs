//! One function per subcommand. Each reads and digests its input files,
//! runs the corresponding library pipeline, and fills a [`Report`]
//! envelope; errors bubble up to `main` where they become exit codes.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde_json::{json, Value};

use fusionkit::{
    canonical_form, classify, complete_fusion_rings, double_modular_data, fp_dimensions,
    gauss_sums, graded_twist, invertibles, is_nilpotent, twist_equation_check, universal_grading,
    validate_cochain, verify_modular, verlinde_fusion, CertificateOutcome, DimensionProfile,
    Error, FiniteGroup, FusionRing, ModularAnalysis, ModularData, PointedCochain, Result, Rule,
    SearchSpec, Shape, Verdict, LATTICE_RANK_CAP,
};

use crate::report::{CheckLine, InputRecord, Report};

/// Global flags shared by every subcommand. `tolerance` is `Some` only
/// when `--tol` was given explicitly, so file-supplied tolerances win by
/// default.
pub struct Options {
    pub tolerance: Option<f64>,
    pub out: Option<PathBuf>,
}

fn read_input(path: &Path) -> Result<(String, InputRecord)> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    let record = InputRecord::new(&path.display().to_string(), &text);
    Ok((text, record))
}

fn out_dir(options: &Options) -> Result<Option<&Path>> {
    match &options.out {
        Some(dir) => {
            fs::create_dir_all(dir)
                .map_err(|e| Error::Input(format!("cannot create {}: {e}", dir.display())))?;
            Ok(Some(dir.as_path()))
        }
        None => Ok(None),
    }
}

fn write_out(dir: &Path, name: &str, contents: &str) -> Result<String> {
    let path = dir.join(name);
    let mut text = contents.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    fs::write(&path, text)
        .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))?;
    Ok(path.display().to_string())
}

fn complex_value(z: fusionkit::Complex) -> Value {
    json!({ "re": z.re, "im": z.im })
}

/// Canonical-key fingerprint of a ring, or the reason none is available
/// (e.g. the rank exceeds the canonicalization cap).
fn canonical_digest(ring: &FusionRing) -> std::result::Result<String, String> {
    canonical_form(ring)
        .map(|form| form.key.digest())
        .map_err(|e| e.to_string())
}

fn digest_value(ring: &FusionRing) -> Value {
    match canonical_digest(ring) {
        Ok(digest) => json!(digest),
        Err(reason) => json!({ "unavailable": reason }),
    }
}

// ---------------------------------------------------------------------------
// check: fusion-ring file → axioms, dimensions, grading, nilpotency.

pub fn check(path: &Path, options: &Options, started: Instant) -> Result<Report> {
    let (text, record) = read_input(path)?;
    let ring = FusionRing::from_json(&text)?;
    let validation = ring.validate();
    let mut checks = Vec::new();
    for axiom in &validation.checks {
        let mut line = CheckLine::new(format!("axiom-{}", axiom.axiom), axiom.passed);
        if let Some(v) = &axiom.violation {
            line = line.detail(format!("at {:?}: {}", v.indices, v.detail));
        }
        checks.push(line);
    }
    let mut result = json!({ "rank": ring.rank(), "labels": ring.labels() });
    let mut human = vec![format!("rank {}: {}", ring.rank(), ring.labels().join(", "))];
    if validation.is_valid() {
        let dims = fp_dimensions(&ring)?;
        result["dimensions"] = json!({
            "values": dims.dims,
            "global": dims.global,
            "integral": dims.integral,
        });
        human.push(match &dims.integral {
            Some(exact) => format!(
                "dimensions {:?}, global dimension {}",
                exact.dims, exact.global
            ),
            None => format!(
                "dimensions {:?}, global dimension {:.6} (not integral)",
                dims.dims, dims.global
            ),
        });
        let pointed = invertibles(&ring)?;
        result["pointed"] = json!({
            "count": pointed.basis.len(),
            "invariant_factors": pointed.group.invariant_factors().ok(),
        });
        match universal_grading(&ring) {
            Ok(grading) => {
                human.push(format!(
                    "universal grading by a group of order {}; {} invertibles",
                    grading.group.order(),
                    pointed.basis.len()
                ));
                result["grading"] = json!({
                    "group_order": grading.group.order(),
                    "invariant_factors": grading.group.invariant_factors().ok(),
                    "assignment": grading.assignment,
                    "components": grading.components,
                    "matches_pointed_count": grading.matches_pointed_count,
                });
            }
            Err(e) => result["grading"] = json!({ "unavailable": e.to_string() }),
        }
        match is_nilpotent(&ring) {
            Ok(report) => {
                human.push(format!(
                    "{} (adjoint chain of length {})",
                    if report.nilpotent { "nilpotent" } else { "not nilpotent" },
                    report.chain.len()
                ));
                result["nilpotency"] = json!({
                    "nilpotent": report.nilpotent,
                    "chain": report
                        .chain
                        .iter()
                        .map(|s| s.indices().to_vec())
                        .collect::<Vec<_>>(),
                });
            }
            Err(e) => result["nilpotency"] = json!({ "unavailable": e.to_string() }),
        }
        result["canonical_digest"] = digest_value(&ring);
    }
    Ok(Report::finish(
        format!("check {}", path.display()),
        vec![record],
        options.tolerance.unwrap_or(fusionkit::DEFAULT_TOLERANCE),
        checks,
        result,
        human,
        started,
    ))
}

// ---------------------------------------------------------------------------
// modular: data file → full verification, Verlinde ring, twist equation,
// Gauss sums, group-theoreticity certificate.

pub fn modular(path: &Path, options: &Options, started: Instant) -> Result<Report> {
    let (text, record) = read_input(path)?;
    let mut data = ModularData::from_json(&text)?;
    if let Some(tol) = options.tolerance {
        data = ModularData::new(data.s().to_vec(), data.t().to_vec(), tol)?;
    }
    let tolerance = data.tolerance();
    let report = verify_modular(&data);
    let mut checks: Vec<CheckLine> = report
        .checks
        .iter()
        .map(|c| {
            let mut line = CheckLine::new(c.kind.to_string(), c.passed).residual(c.residual);
            if let Some(detail) = &c.detail {
                line = line.detail(detail.clone());
            }
            line
        })
        .collect();
    let sums = gauss_sums(&data);
    let mut result = json!({
        "rank": data.rank(),
        "global_dimension": report.d_global,
        "t_order": report.t_order,
        "gauss_sums": {
            "p_plus": complex_value(sums.p_plus),
            "p_minus": complex_value(sums.p_minus),
            "product": complex_value(sums.p_plus * sums.p_minus),
        },
    });
    let mut human = vec![
        format!("rank {}, D = {:.6}", data.rank(), report.d_global),
        match report.t_order {
            Some(m) => format!("T has order {m}"),
            None => "T has no finite order below the cap".to_string(),
        },
        format!(
            "p₊ = {:.6} + {:.6}i, p₋ = {:.6} + {:.6}i",
            sums.p_plus.re, sums.p_plus.im, sums.p_minus.re, sums.p_minus.im
        ),
    ];
    match verlinde_fusion(&data) {
        Ok(ring) => {
            let residual = twist_equation_check(&data, &ring)?;
            checks.push(
                CheckLine::new("twist-equation", residual <= tolerance).residual(residual),
            );
            let dims = fp_dimensions(&ring)?;
            result["verlinde"] = json!({
                "rank": ring.rank(),
                "integral_dimensions": dims.integral,
                "canonical_digest": digest_value(&ring),
            });
            if let Some(exact) = &dims.integral {
                human.push(format!("Verlinde ring dimensions {:?}", exact.dims));
            }
            if report.is_valid() && dims.integral.is_some() {
                let analysis = ModularAnalysis::new(data.clone())?;
                let outcome =
                    analysis.certificate_with_cap(data.rank().max(LATTICE_RANK_CAP))?;
                result["certificate"] = certificate_value(&outcome);
                human.push(certificate_line(&outcome));
            } else {
                let reason = if report.is_valid() {
                    "dimensions are not integral"
                } else {
                    "data does not verify"
                };
                result["certificate"] = json!({ "skipped": reason });
            }
        }
        Err(e @ Error::NonIntegralFusion { .. }) => {
            result["verlinde"] = json!({ "error": e.to_string() });
            result["certificate"] = json!({ "skipped": "no Verlinde ring" });
        }
        Err(e) => return Err(e),
    }
    Ok(Report::finish(
        format!("modular {}", path.display()),
        vec![record],
        tolerance,
        checks,
        result,
        human,
        started,
    ))
}

fn certificate_value(outcome: &CertificateOutcome) -> Value {
    match outcome {
        CertificateOutcome::Found(c) => json!({
            "found": {
                "sub_basis": c.l.indices(),
                "centralizer": c.centralizer.indices(),
                "fp_dim": c.l_fpdim,
                "tannakian": c.tannakian,
            }
        }),
        CertificateOutcome::NoneFound {
            lattice_size,
            symmetric_count,
            tannakian_candidates,
        } => json!({
            "none_found": {
                "lattice_size": lattice_size,
                "symmetric_count": symmetric_count,
                "tannakian_candidates": tannakian_candidates
                    .iter()
                    .map(|s| s.indices().to_vec())
                    .collect::<Vec<_>>(),
            }
        }),
    }
}

fn certificate_line(outcome: &CertificateOutcome) -> String {
    match outcome {
        CertificateOutcome::Found(c) => format!(
            "group-theoretical: witness sub-basis {:?} of dimension {}{}",
            c.l.indices(),
            c.l_fpdim,
            if c.tannakian { " (Tannakian)" } else { "" }
        ),
        CertificateOutcome::NoneFound {
            lattice_size,
            symmetric_count,
            ..
        } => format!(
            "no certificate: exhausted all {lattice_size} sub-bases ({symmetric_count} symmetric)"
        ),
    }
}

// ---------------------------------------------------------------------------
// classify: case analysis for N = p·q⁴ or p²·q².

pub fn classify_profile(
    p: u64,
    q: u64,
    shape: Shape,
    shape_name: &str,
    options: &Options,
    started: Instant,
) -> Result<Report> {
    let profile = DimensionProfile::new(p, q, shape)?;
    let classification = classify(&profile);
    let checks = vec![CheckLine::new("case-analysis", true).detail(format!(
        "{} candidate pointed dimensions for N = {}",
        classification.report.cases.len(),
        profile.n()
    ))];
    let mut human = vec![format!("N = {} with (p, q) = ({}, {})", profile.n(), profile.p(), profile.q())];
    for case in &classification.report.cases {
        human.push(match &case.verdict {
            Verdict::Eliminated { rule, witness } => format!(
                "C_pt = {}: eliminated by {} — {witness}",
                case.pt_dim,
                rule_name(*rule)
            ),
            Verdict::GroupTheoretical { rule, cited, witness } => format!(
                "C_pt = {}: group-theoretical by {}{} — {witness}",
                case.pt_dim,
                rule_name(*rule),
                if *cited { " (cited)" } else { "" }
            ),
            Verdict::Survives { label, witness } => {
                format!("C_pt = {}: survives as {label} — {witness}", case.pt_dim)
            }
        });
    }
    human.push(match &classification.overall {
        fusionkit::Overall::GroupTheoretical => {
            "overall: every case is group-theoretical".to_string()
        }
        fusionkit::Overall::Survivors { families } => format!(
            "overall: surviving families {}",
            families
                .iter()
                .map(|f| format!("{} (C_pt = {})", f.label, f.pt_dim))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    });
    let result = serde_json::to_value(&classification)
        .map_err(|e| Error::Internal(format!("classification serializes: {e}")))?;
    Ok(Report::finish(
        format!("classify --p {p} --q {q} --shape {shape_name}"),
        Vec::new(),
        options.tolerance.unwrap_or(fusionkit::DEFAULT_TOLERANCE),
        checks,
        result,
        human,
        started,
    ))
}

fn rule_name(rule: Rule) -> String {
    match serde_json::to_value(rule) {
        Ok(Value::String(name)) => name,
        _ => format!("{rule:?}"),
    }
}

// ---------------------------------------------------------------------------
// search: complete a partial fusion ring.

pub fn search(spec_path: &Path, options: &Options, started: Instant) -> Result<Report> {
    let (text, record) = read_input(spec_path)?;
    let spec = SearchSpec::from_json(&text)?;
    let found = complete_fusion_rings(&spec)?;
    let checks = vec![CheckLine::new("search-complete", true).detail(format!(
        "{} nodes, {} raw completions, {} classes",
        found.nodes,
        found.raw_count,
        found.rings.len()
    ))];
    let mut completions = Vec::new();
    for ring in &found.rings {
        completions.push(json!({
            "labels": ring.labels(),
            "canonical_digest": digest_value(ring),
        }));
    }
    let mut result = json!({
        "raw_count": found.raw_count,
        "classes": found.rings.len(),
        "nodes": found.nodes,
        "forced_entries": found.forced,
        "free_cells": found.free_cells,
        "completions": completions,
    });
    let mut human = vec![format!(
        "{} raw completions in {} canonical classes ({} nodes explored, {} forced entries, {} free cells)",
        found.raw_count,
        found.rings.len(),
        found.nodes,
        found.forced,
        found.free_cells
    )];
    if let Some(dir) = out_dir(options)? {
        let mut written = Vec::new();
        for (i, ring) in found.rings.iter().enumerate() {
            written.push(write_out(dir, &format!("completion_{i}.json"), &ring.to_json())?);
        }
        human.push(format!("wrote {} ring files to {}", written.len(), dir.display()));
        result["written"] = json!(written);
    }
    Ok(Report::finish(
        format!("search --spec {}", spec_path.display()),
        vec![record],
        options.tolerance.unwrap_or(fusionkit::DEFAULT_TOLERANCE),
        checks,
        result,
        human,
        started,
    ))
}

// ---------------------------------------------------------------------------
// double: modular data of the Drinfeld double of a finite group.

pub fn double(
    group_path: &Path,
    twist: bool,
    options: &Options,
    started: Instant,
) -> Result<Report> {
    if twist {
        return Err(Error::Input(
            "twisted doubles are not supported; only the untwisted double is implemented".into(),
        ));
    }
    let (text, record) = read_input(group_path)?;
    let group = FiniteGroup::from_json(&text)?;
    let double = double_modular_data(&group)?;
    let mut data = double.data;
    if let Some(tol) = options.tolerance {
        data = ModularData::new(data.s().to_vec(), data.t().to_vec(), tol)?;
    }
    let tolerance = data.tolerance();
    let report = verify_modular(&data);
    let mut checks: Vec<CheckLine> = report
        .checks
        .iter()
        .map(|c| CheckLine::new(c.kind.to_string(), c.passed).residual(c.residual))
        .collect();
    let residual = twist_equation_check(&data, &double.ring)?;
    checks.push(CheckLine::new("twist-equation", residual <= tolerance).residual(residual));
    let dims = fp_dimensions(&double.ring)?;
    let labels: Vec<String> = double
        .labels
        .iter()
        .map(|l| format!("({}|{})", l.representative, l.character))
        .collect();
    let mut result = json!({
        "group_order": group.order(),
        "rank": data.rank(),
        "global_dimension": report.d_global,
        "labels": labels,
        "dimensions": dims.integral,
        "canonical_digest": digest_value(&double.ring),
    });
    let mut human = vec![format!(
        "double of a group of order {}: rank {}, D = {:.1}",
        group.order(),
        data.rank(),
        report.d_global
    )];
    if let Some(exact) = &dims.integral {
        human.push(format!("dimensions {:?}", exact.dims));
    }
    if let Some(dir) = out_dir(options)? {
        let data_path = write_out(dir, "double_data.json", &data.to_json())?;
        let ring_path = write_out(dir, "double_ring.json", &double.ring.to_json())?;
        human.push(format!("wrote {data_path} and {ring_path}"));
        result["written"] = json!([data_path, ring_path]);
    }
    Ok(Report::finish(
        format!("double --group {}", group_path.display()),
        vec![record],
        tolerance,
        checks,
        result,
        human,
        started,
    ))
}

// ---------------------------------------------------------------------------
// twist: apply a pointed-valued symmetric cochain to a graded ring.

pub fn twist(
    ring_path: &Path,
    cochain_path: &Path,
    options: &Options,
    started: Instant,
) -> Result<Report> {
    let (ring_text, ring_record) = read_input(ring_path)?;
    let (chi_text, chi_record) = read_input(cochain_path)?;
    let ring = FusionRing::from_json(&ring_text)?;
    let chi = PointedCochain::from_json(&chi_text)?;
    let cochain_report = validate_cochain(&ring, &chi)?;
    let mut checks = Vec::new();
    for (name, outcome) in [
        ("cochain-normalized", &cochain_report.normalized),
        ("cochain-cocycle", &cochain_report.cocycle),
    ] {
        let mut line = CheckLine::new(name, outcome.passed);
        if let Some(detail) = &outcome.detail {
            line = line.detail(detail.clone());
        }
        checks.push(line);
    }
    if !cochain_report.is_valid() {
        let result = json!({ "cochain": serde_json::to_value(&cochain_report).unwrap_or(Value::Null) });
        return Ok(Report::finish(
            format!("twist --ring {} --cochain {}", ring_path.display(), cochain_path.display()),
            vec![ring_record, chi_record],
            options.tolerance.unwrap_or(fusionkit::DEFAULT_TOLERANCE),
            checks,
            result,
            vec!["cochain rejected; no twist performed".to_string()],
            started,
        ));
    }
    let twisted = graded_twist(&ring, &chi)?;
    let validation = twisted.validate();
    checks.push(match validation.first_failure() {
        None => CheckLine::new("twisted-ring-axioms", true),
        Some(fail) => CheckLine::new("twisted-ring-axioms", false).detail(format!(
            "{}: {:?}",
            fail.axiom,
            fail.violation.as_ref().map(|v| v.indices.clone())
        )),
    });
    let mut dual_changes = Vec::new();
    for i in 0..ring.rank() {
        let (old, new) = (ring.dual_of(i), twisted.dual_of(i));
        if old != new {
            dual_changes.push(json!({
                "object": ring.label(i),
                "old_dual": ring.label(old),
                "new_dual": twisted.label(new),
            }));
        }
    }
    let same_class = match (canonical_digest(&ring), canonical_digest(&twisted)) {
        (Ok(a), Ok(b)) => Some(a == b),
        _ => None,
    };
    let mut result = json!({
        "cochain": {
            "symmetric": cochain_report.symmetric,
        },
        "twisted": {
            "labels": twisted.labels(),
            "canonical_digest": digest_value(&twisted),
            "dual_changes": dual_changes,
            "same_canonical_class_as_input": same_class,
        },
    });
    let mut human = vec![match same_class {
        Some(true) => "twisted ring is canonically equal to the input".to_string(),
        Some(false) => "twisted ring lies in a different canonical class".to_string(),
        None => "canonical comparison unavailable".to_string(),
    }];
    for i in 0..ring.rank() {
        let (old, new) = (ring.dual_of(i), twisted.dual_of(i));
        if old != new {
            human.push(format!(
                "dual({}) : {} → {}",
                ring.label(i),
                ring.label(old),
                twisted.label(new)
            ));
        }
    }
    if let Some(dir) = out_dir(options)? {
        let path = write_out(dir, "twisted_ring.json", &twisted.to_json())?;
        human.push(format!("wrote {path}"));
        result["written"] = json!([path]);
    }
    Ok(Report::finish(
        format!("twist --ring {} --cochain {}", ring_path.display(), cochain_path.display()),
        vec![ring_record, chi_record],
        options.tolerance.unwrap_or(fusionkit::DEFAULT_TOLERANCE),
        checks,
        result,
        human,
        started,
    ))
}
