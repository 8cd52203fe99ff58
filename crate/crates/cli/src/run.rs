//! Dispatch of jobs to the engine.

use std::sync::Arc;

use rayon::prelude::*;
use tdual_core::abelian::{FgGroup, GroupElement};
use tdual_core::catalog::{cohomology_of, CatalogSpace, GradedCohomology, MAX_DEGREE};
use tdual_core::classifying::{
    self, fixtures, homotopy_tables, mapping_torus_cohomology, t32_cohomology_action,
    GeneratorTable,
};
use tdual_core::duality::{coset_partition, dualize, CosetPartition, Flag, IsoRoute, Triple};
use tdual_core::gysin::{total_space_cohomology, CircleBundle, Route, TotalSpaceCohomology};

use crate::error::{CliError, Result};
use crate::job::{ClassSpec, JobSpec, Mode};
use crate::report::{ReportDocument, Section};

/// Largest coset quotient whose representatives are listed in a report.
const LISTED_COSETS: usize = 64;

/// Section list naming degrees reported as split guesses.
const AMBIGUOUS: &str = "ambiguous extensions";

pub fn run_job(spec: &JobSpec) -> Result<ReportDocument> {
    let mut doc = ReportDocument::new(spec.clone());
    match spec.mode {
        Mode::Dualize => dualize_job(spec, &mut doc)?,
        Mode::Cohomology => cohomology_job(spec, &mut doc)?,
        Mode::ClassifyingTables => tables_job(spec, &mut doc)?,
        Mode::CosetPartition => coset_job(spec, &mut doc)?,
    }
    if doc.sections.iter().any(|s| s.lists.contains_key(AMBIGUOUS)) {
        doc.flag(Flag::AmbiguousExtension);
    }
    Ok(doc)
}

/// Runs every job, in parallel, keeping input order. Failed jobs become
/// documents carrying the error.
pub fn run_batch(specs: &[JobSpec]) -> Vec<ReportDocument> {
    specs
        .par_iter()
        .map(|spec| {
            run_job(spec).unwrap_or_else(|e| {
                let mut doc = ReportDocument::new(spec.clone());
                if matches!(e, CliError::Core(tdual_core::Error::BNotLiftable)) {
                    doc.flag(Flag::BNotLiftable);
                }
                doc.error = Some(e.to_string());
                doc
            })
        })
        .collect()
}

fn catalog_space(spec: &JobSpec) -> Result<CatalogSpace> {
    let name = spec.base.as_deref().ok_or_else(|| {
        CliError::Validation(format!("{} job needs a `base`", spec.mode.as_str()))
    })?;
    Ok(name.parse::<CatalogSpace>()?)
}

/// Degrees emitted for the total space; the base is computed one higher.
fn total_degree(spec: &JobSpec, space: CatalogSpace) -> Result<usize> {
    let max = match spec.max_degree {
        Some(m) => m,
        None => (space.dimension().unwrap_or(MAX_DEGREE) + 1).clamp(3, MAX_DEGREE - 1),
    };
    if max + 1 > MAX_DEGREE {
        return Err(CliError::Validation(format!(
            "max_degree {max} needs base degree {} above the limit {MAX_DEGREE}",
            max + 1
        )));
    }
    Ok(max)
}

fn resolve(
    field: &str,
    class: Option<&ClassSpec>,
    labels: &[String],
    group: &FgGroup,
) -> Result<GroupElement> {
    let coords = match class {
        Some(c) => c.resolve(field, labels)?,
        None => vec![0; group.ngens()],
    };
    if coords.len() != group.ngens() {
        return Err(CliError::Validation(format!(
            "{field}: expected {} coordinates for {group} <{}>, got {}",
            group.ngens(),
            labels.join(", "),
            coords.len()
        )));
    }
    Ok(group.element_i64(&coords)?)
}

fn base_and_bundle(spec: &JobSpec) -> Result<(usize, CircleBundle)> {
    let space = catalog_space(spec)?;
    let max = total_degree(spec, space)?;
    let w = Arc::new(cohomology_of(space, max + 1)?);
    let euler = resolve("euler", spec.euler.as_ref(), w.labels(2), &w.group(2)?)?;
    Ok((max, CircleBundle::new(w, euler)?))
}

fn graded_section(title: &str, g: &GradedCohomology, top: usize) -> Result<Section> {
    let mut s = Section::new(title);
    s.value("space", g.name());
    for k in 0..=top.min(g.max_degree()) {
        s.group(format!("H{k}"), &g.group(k as isize)?)?;
        s.generators.insert(format!("H{k}"), g.labels(k).to_vec());
    }
    if g.ambiguous().iter().take(top + 1).any(|&a| a) {
        let degrees: Vec<String> = (0..=top)
            .filter(|&k| g.ambiguous().get(k).copied().unwrap_or(false))
            .map(|k| format!("H{k}"))
            .collect();
        s.lists.insert(AMBIGUOUS.into(), degrees);
    }
    Ok(s)
}

fn total_section(title: &str, t: &TotalSpaceCohomology) -> Result<Section> {
    let mut s = Section::new(title);
    let base = t.base();
    s.value("base", base.name());
    s.value("euler class", base.describe(2, t.bundle().euler()));
    s.value(
        "route",
        match t.route() {
            Route::CochainCone => "cochain cone",
            Route::ShortExact => "split Gysin sequence",
        },
    );
    for k in 0..=t.max_degree() {
        s.group(format!("H{k}"), t.group(k)?)?;
        s.generators.insert(format!("H{k}"), t.labels(k).to_vec());
    }
    for k in 0..=t.max_degree() {
        s.map(format!("p*{k}"), t.pullback(k)?)?;
    }
    for k in 1..=t.max_degree() {
        s.map(format!("p!{k}"), t.pushforward(k)?)?;
    }
    if t.any_ambiguous() {
        let degrees = (0..=t.max_degree())
            .filter(|&k| t.ambiguous()[k])
            .map(|k| format!("H{k}"))
            .collect();
        s.lists.insert(AMBIGUOUS.into(), degrees);
    }
    Ok(s)
}

fn coset_section(title: &str, t: &TotalSpaceCohomology, part: &CosetPartition) -> Result<Section> {
    let mut s = Section::new(title);
    s.value("subgroup generator", t.describe(2, part.generator()));
    s.group("H2", part.ambient())?;
    s.group("quotient", part.quotient())?;
    s.map("projection", part.projection())?;
    if let Some(reps) = part.representatives().filter(|r| r.len() <= LISTED_COSETS) {
        let reps = reps.iter().map(|r| t.describe(2, r)).collect();
        s.lists.insert("coset representatives".into(), reps);
    }
    Ok(s)
}

fn dualize_job(spec: &JobSpec, doc: &mut ReportDocument) -> Result<()> {
    let (max, bundle) = base_and_bundle(spec)?;
    let w = Arc::clone(bundle.base());
    let total = total_space_cohomology(&bundle, max)?;
    let flux = resolve("flux", spec.flux.as_ref(), total.labels(3), total.group(3)?)?;
    let b = resolve("b", spec.b.as_ref(), total.labels(2), total.group(2)?)?;
    let triple = Triple::new(Arc::new(total), b, flux)?;

    doc.sections.push(graded_section("base", &w, max)?);
    let mut src = total_section("source", triple.total())?;
    src.value("b", triple.total().describe(2, triple.b()));
    src.value("flux", triple.total().describe(3, triple.flux()));
    doc.sections.push(src);

    let r = dualize(&triple)?;
    let dual_total = r.dual.total();
    let mut dual = total_section("dual", dual_total)?;
    dual.value("dual base bundle class", w.describe(2, &r.dual_euler));
    dual.value("dual flux", dual_total.describe(3, r.dual.flux()));
    dual.value("dual b-class", dual_total.describe(2, r.dual.b()));
    let (amb, _) = r.flux_ambiguity.as_group();
    dual.group("flux ambiguity", &amb)?;
    let gens = r
        .flux_ambiguity
        .generators()
        .iter()
        .map(|g| dual_total.describe(3, g))
        .collect();
    dual.lists.insert("flux ambiguity generators".into(), gens);
    doc.sections.push(dual);

    let mut cs = coset_section("source cosets", triple.total(), &r.source_cosets)?;
    cs.value(
        "b coset representative",
        triple.total().describe(2, &r.b_representative),
    );
    doc.sections.push(cs);
    doc.sections.push(coset_section(
        "target cosets",
        dual_total,
        &r.target_cosets,
    )?);

    let mut iso = Section::new("coset isomorphism");
    iso.value(
        "route",
        match r.iso_route {
            Some(IsoRoute::ThroughBase) => "through base",
            Some(IsoRoute::Abstract) => "abstract",
            None => "none",
        },
    );
    if let Some(h) = &r.coset_iso {
        iso.map("iso", h)?;
    }
    iso.value(
        "verified",
        tdual_core::duality::verify_coset_isomorphism(&triple, &r),
    );
    doc.sections.push(iso);
    for f in &r.flags {
        doc.flag(f);
    }
    Ok(())
}

fn cohomology_job(spec: &JobSpec, doc: &mut ReportDocument) -> Result<()> {
    let (max, bundle) = base_and_bundle(spec)?;
    doc.sections
        .push(graded_section("base", bundle.base(), max)?);
    let total = total_space_cohomology(&bundle, max)?;
    let audit = total.audit_exactness()?;
    let mut s = total_section("total space", &total)?;
    s.value("exactness audit", audit.iter().all(|(_, ok)| *ok));
    doc.sections.push(s);
    Ok(())
}

fn coset_job(spec: &JobSpec, doc: &mut ReportDocument) -> Result<()> {
    let (max, bundle) = base_and_bundle(spec)?;
    let total = total_space_cohomology(&bundle, max)?;
    let gen = match (&spec.generator, &spec.flux) {
        (Some(g), _) => resolve("generator", Some(g), total.labels(2), total.group(2)?)?,
        (None, Some(_)) => {
            let flux = resolve("flux", spec.flux.as_ref(), total.labels(3), total.group(3)?)?;
            let q = total.pushforward_of(3, &flux)?;
            total.pullback_of(2, &q)?
        }
        (None, None) => {
            return Err(CliError::Validation(
                "coset-partition job needs a `generator` or a `flux`".into(),
            ))
        }
    };
    doc.sections.push(total_section("total space", &total)?);
    let part = coset_partition(&total, &gen)?;
    let mut s = coset_section("cosets", &total, &part)?;
    if spec.b.is_some() {
        let b = resolve("b", spec.b.as_ref(), total.labels(2), total.group(2)?)?;
        s.value(
            "b coset representative",
            total.describe(2, &part.representative(&b)),
        );
    }
    doc.sections.push(s);
    if bundle.base().simply_connected() != Some(true) {
        doc.flag(Flag::Conjecture);
    }
    Ok(())
}

fn published_section(title: &str, ranks: &[usize], labels: &[&[&str]]) -> Result<Section> {
    let mut s = Section::new(title);
    for (k, (&r, l)) in ranks.iter().zip(labels).enumerate() {
        s.group(format!("H{k}"), &FgGroup::free(r))?;
        s.generators
            .insert(format!("H{k}"), l.iter().map(|x| x.to_string()).collect());
    }
    Ok(s)
}

fn matches_published(g: &GradedCohomology, ranks: &[usize], labels: &[&[&str]]) -> bool {
    ranks.iter().zip(labels).enumerate().all(|(k, (&r, l))| {
        g.group(k as isize).ok().as_ref() == Some(&FgGroup::free(r)) && g.labels(k) == *l
    })
}

fn homotopy_section(space: &str) -> Result<Option<Section>> {
    let Some(h) = homotopy_tables().into_iter().find(|h| h.space == space) else {
        return Ok(None);
    };
    let mut s = Section::new("homotopy");
    for i in 1..=h.groups.len() + 1 {
        s.group(format!("pi{i}"), &h.pi(i))?;
    }
    let n = h.pi1_on_pi2.rows();
    let g = FgGroup::free(n);
    s.map(
        "pi1 on pi2",
        &tdual_core::abelian::Hom::new(g.clone(), g, h.pi1_on_pi2.clone())?,
    )?;
    Ok(Some(s))
}

fn relations_list(g: &GradedCohomology) -> Vec<String> {
    GeneratorTable::of(g)
        .relations()
        .map(|p| format!("{}*{} = 0", p.left, p.right))
        .collect()
}

fn tables_job(spec: &JobSpec, doc: &mut ReportDocument) -> Result<()> {
    let space = spec
        .space
        .as_deref()
        .ok_or_else(|| CliError::Validation("classifying-tables job needs a `space`".into()))?;
    match space {
        "R2" => {
            let g = mapping_torus_cohomology(&classifying::r2_data()?)?;
            let mut s = graded_section("computed", &g, 3)?;
            s.value(
                "matches published",
                matches_published(&g, &fixtures::R2_RANKS, &fixtures::R2_LABELS),
            );
            s.lists.insert("relations".into(), relations_list(&g));
            doc.sections.push(s);
            doc.sections.push(published_section(
                "published",
                &fixtures::R2_RANKS,
                &fixtures::R2_LABELS,
            )?);
            doc.sections.extend(homotopy_section("R2")?);
        }
        "R32" => {
            let g = mapping_torus_cohomology(&classifying::r32_data()?)?;
            let mut s = graded_section("computed", &g, 4)?;
            s.value(
                "matches published",
                matches_published(&g, &fixtures::R32_RANKS, &fixtures::R32_LABELS),
            );
            s.lists.insert("relations".into(), relations_list(&g));
            doc.sections.push(s);
            let mut p =
                published_section("published", &fixtures::R32_RANKS, &fixtures::R32_LABELS)?;
            p.lists
                .insert("relations".into(), relations_list(&fixtures::r32_ring()?));
            doc.sections.push(p);
            doc.sections.extend(homotopy_section("R32")?);
        }
        "E32" => {
            let u = classifying::universal_bundle_tables()?;
            doc.sections.push(total_section("E32", &u.e32)?);
            doc.sections.push(total_section("E32^", &u.e32_hat)?);
            let t = t32_cohomology_action()?;
            let mut s = Section::new("T32 action");
            for (k, h) in t.on_base.iter().enumerate() {
                s.map(format!("on H{k}(R32)"), h)?;
            }
            for (k, h) in t.on_bundles(0)?.iter().enumerate() {
                s.map(format!("on H{k}(E32)"), h)?;
            }
            s.value(
                "image of b",
                "k*p^*(a1), k not determined; shown with k = 0",
            );
            doc.sections.push(s);
        }
        "E2" => {
            let t = classifying::universal_pair_bundle()?;
            doc.sections.push(total_section("E2", &t)?);
        }
        other => {
            return Err(CliError::Validation(format!(
                "unknown classifying space `{other}`; expected R2, R32, E32 or E2"
            )))
        }
    }
    Ok(())
}
