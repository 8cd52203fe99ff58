//! T-duality of triples: a circle bundle with a B-class and an H-flux.

use std::fmt;
use std::sync::Arc;

use crate::abelian::{FgGroup, GroupElement, Hom, IntMatrix, Subgroup};
use crate::catalog::GradedCohomology;
use crate::error::{Error, Result};
use crate::gysin::{total_space_cohomology, CircleBundle, TotalSpaceCohomology};

/// Largest finite quotient whose coset representatives are listed.
pub const REPRESENTATIVE_LIMIT: u64 = 4096;

/// Warnings attached to a duality report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flag {
    /// Some total-space group was reported as a split guess.
    AmbiguousExtension,
    /// The base is not simply connected, so coset transport is conjectural.
    Conjecture,
    /// The B-class does not come from the base.
    BNotLiftable,
    /// The coset isomorphism is an abstract identification of equal groups,
    /// not the map induced through the base.
    AbstractIsomorphism,
}

impl Flag {
    pub fn as_str(self) -> &'static str {
        match self {
            Flag::AmbiguousExtension => "AMBIGUOUS-EXTENSION",
            Flag::Conjecture => "CONJECTURE",
            Flag::BNotLiftable => "B-NOT-LIFTABLE",
            Flag::AbstractIsomorphism => "ABSTRACT-ISOMORPHISM",
        }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A circle bundle with classes `b` in H² and `H` in H³ of the total space.
#[derive(Clone, Debug)]
pub struct Triple {
    total: Arc<TotalSpaceCohomology>,
    b: GroupElement,
    flux: GroupElement,
}

impl Triple {
    pub fn new(
        total: Arc<TotalSpaceCohomology>,
        b: GroupElement,
        flux: GroupElement,
    ) -> Result<Self> {
        if total.max_degree() < 3 {
            return Err(Error::DegreeOutOfRange(3));
        }
        for (k, x) in [(2, &b), (3, &flux)] {
            let g = total.group(k)?;
            if x.group() != g {
                return Err(Error::GroupMismatch {
                    left: g.to_string(),
                    right: x.group().to_string(),
                });
            }
        }
        Ok(Triple { total, b, flux })
    }

    /// Builds the bundle and its total space, then the triple, from canonical
    /// coordinates.
    pub fn from_coords(
        base: Arc<GradedCohomology>,
        euler: &[i64],
        b: &[i64],
        flux: &[i64],
        max_degree: usize,
    ) -> Result<Self> {
        let bundle = CircleBundle::with_coords(base, euler)?;
        let total = total_space_cohomology(&bundle, max_degree.max(3))?;
        let b = total.element(2, b)?;
        let flux = total.element(3, flux)?;
        Triple::new(Arc::new(total), b, flux)
    }

    pub fn total(&self) -> &Arc<TotalSpaceCohomology> {
        &self.total
    }

    pub fn bundle(&self) -> &CircleBundle {
        self.total.bundle()
    }

    pub fn base(&self) -> &Arc<GradedCohomology> {
        self.total.bundle().base()
    }

    pub fn euler(&self) -> &GroupElement {
        self.total.bundle().euler()
    }

    pub fn b(&self) -> &GroupElement {
        &self.b
    }

    pub fn flux(&self) -> &GroupElement {
        &self.flux
    }
}

/// `H²(E) / <gen>` with canonical coset representatives.
#[derive(Clone, Debug)]
pub struct CosetPartition {
    generator: GroupElement,
    subgroup: Subgroup,
    quotient: FgGroup,
    projection: Hom,
}

impl CosetPartition {
    pub fn new(generator: &GroupElement) -> Result<Self> {
        let subgroup = Subgroup::generated_by(generator.group(), std::slice::from_ref(generator))?;
        let (quotient, projection) = subgroup.quotient();
        Ok(CosetPartition {
            generator: generator.clone(),
            subgroup,
            quotient,
            projection,
        })
    }

    pub fn ambient(&self) -> &FgGroup {
        self.generator.group()
    }

    pub fn generator(&self) -> &GroupElement {
        &self.generator
    }

    pub fn quotient(&self) -> &FgGroup {
        &self.quotient
    }

    pub fn projection(&self) -> &Hom {
        &self.projection
    }

    /// Canonical member of the coset `x + <gen>`.
    pub fn representative(&self, x: &GroupElement) -> GroupElement {
        self.subgroup.reduce(x)
    }

    pub fn same_coset(&self, x: &GroupElement, y: &GroupElement) -> Result<bool> {
        Ok(self.subgroup.contains(&x.add(&y.neg())?))
    }

    /// Section of the projection: the canonical member over a quotient element.
    pub fn lift(&self, q: &GroupElement) -> Result<GroupElement> {
        let x = self
            .projection
            .preimage(q)?
            .ok_or_else(|| Error::Exactness("quotient projection is not onto".into()))?;
        Ok(self.representative(&x))
    }

    /// One canonical representative per coset, when the quotient is finite
    /// and small enough to list.
    pub fn representatives(&self) -> Option<Vec<GroupElement>> {
        let elems = self.quotient.elements(REPRESENTATIVE_LIMIT)?;
        elems.iter().map(|q| self.lift(q).ok()).collect()
    }
}

/// Partition of H²(E) into cosets of the subgroup generated by `gen`.
pub fn coset_partition(tsc: &TotalSpaceCohomology, gen: &GroupElement) -> Result<CosetPartition> {
    let h2 = tsc.group(2)?;
    if gen.group() != h2 {
        return Err(Error::GroupMismatch {
            left: h2.to_string(),
            right: gen.group().to_string(),
        });
    }
    CosetPartition::new(gen)
}

/// How the coset isomorphism was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoRoute {
    /// Lift through `p*`, push through `q*`.
    ThroughBase,
    /// Identity between equal canonical groups.
    Abstract,
}

#[derive(Clone, Debug)]
pub struct DualityReport {
    pub source_euler: GroupElement,
    pub dual_euler: GroupElement,
    pub dual: Triple,
    /// `im(q*)` in H³ of the dual total space.
    pub flux_ambiguity: Subgroup,
    /// H²(E) modulo `p*p!(H)`.
    pub source_cosets: CosetPartition,
    /// H²(E#) modulo `q*q!(H#)`.
    pub target_cosets: CosetPartition,
    /// Canonical representative of the source B-class coset.
    pub b_representative: GroupElement,
    pub coset_iso: Option<Hom>,
    pub iso_route: Option<IsoRoute>,
    pub flags: Vec<Flag>,
}

impl DualityReport {
    pub fn has_flag(&self, flag: Flag) -> bool {
        self.flags.contains(&flag)
    }
}

/// `p!(H)`, the Euler class of the dual bundle.
pub fn dual_euler(t: &Triple) -> Result<GroupElement> {
    t.total().pushforward_of(3, t.flux())
}

/// A class `H#` on the dual total space with `q!(H#) = [p]`, and the subgroup
/// `im(q*)` it is determined modulo.
///
/// The choice is canonical: the part of `H` pulled back from the base is
/// carried across by `q*`, and the remainder is the reduced preimage of the
/// source Euler class.
pub fn dual_flux(
    t: &Triple,
    dual_total: &TotalSpaceCohomology,
) -> Result<(GroupElement, Subgroup)> {
    let src = t.total();
    let up = src.pullback(3)?;
    let pulled = Subgroup::image_of(up);
    let rest = pulled.reduce(t.flux());
    let base_part = t.flux().add(&rest.neg())?;
    let h = up
        .preimage(&base_part)?
        .ok_or_else(|| Error::Exactness("pulled-back part has no preimage".into()))?;
    let h = Subgroup::kernel_of(up).reduce(&h);

    let dual_up = dual_total.pullback(3)?;
    let dual_down = dual_total.pushforward(3)?;
    let ambiguity = Subgroup::image_of(dual_up);
    let x0 = dual_down
        .preimage(t.euler())?
        .ok_or_else(|| Error::Exactness("source Euler class is not in the image of q!".into()))?;
    let flux = ambiguity.reduce(&x0).add(&dual_up.apply(&h)?)?;
    Ok((flux, ambiguity))
}

/// Transports `b` to the dual side through the base: `b = p*(beta)`, and
/// `b#` is the canonical member of the coset of `q*(beta)`.
fn dual_b(
    t: &Triple,
    dual_total: &TotalSpaceCohomology,
    target: &CosetPartition,
) -> Result<GroupElement> {
    let beta = t
        .total()
        .pullback(2)?
        .preimage(t.b())?
        .ok_or(Error::BNotLiftable)?;
    let beta = CosetPartition::new(t.euler())?.representative(&beta);
    Ok(target.representative(&dual_total.pullback(2)?.apply(&beta)?))
}

/// The map `H²(E)/<p*[q]> -> H²(E#)/<q*[p]>` induced through H²(W), when
/// every source class lifts through `p*`.
fn iso_through_base(
    src: &TotalSpaceCohomology,
    dual: &TotalSpaceCohomology,
    source: &CosetPartition,
    target: &CosetPartition,
) -> Result<Option<Hom>> {
    let up = src.pullback(2)?;
    let dual_up = dual.pullback(2)?;
    let mut cols = Vec::new();
    for i in 0..source.quotient().ngens() {
        let x = source.lift(&source.quotient().generator(i))?;
        let Some(beta) = up.preimage(&x)? else {
            return Ok(None);
        };
        let y = target.projection().apply(&dual_up.apply(&beta)?)?;
        cols.push(y.coords().to_vec());
    }
    let m = IntMatrix::from_columns(target.quotient().ngens(), &cols);
    Ok(Hom::new(source.quotient().clone(), target.quotient().clone(), m).ok())
}

/// Dualizes a triple.
///
/// Fails with [`Error::BNotLiftable`] when `b` is not pulled back from the
/// base.
pub fn dualize(t: &Triple) -> Result<DualityReport> {
    let src = t.total();
    let base = t.base();
    let e_dual = dual_euler(t)?;
    let dual_bundle = CircleBundle::new(Arc::clone(base), e_dual.clone())?;
    let dual_total = total_space_cohomology(&dual_bundle, src.max_degree())?;

    let (flux, flux_ambiguity) = dual_flux(t, &dual_total)?;
    let source_cosets = CosetPartition::new(&src.pullback(2)?.apply(&e_dual)?)?;
    let target_cosets = CosetPartition::new(&dual_total.pullback(2)?.apply(t.euler())?)?;
    let b_dual = dual_b(t, &dual_total, &target_cosets)?;

    let mut flags = Vec::new();
    if src.any_ambiguous() || dual_total.any_ambiguous() {
        flags.push(Flag::AmbiguousExtension);
    }
    if base.simply_connected() != Some(true) {
        flags.push(Flag::Conjecture);
    }
    let (coset_iso, iso_route) =
        match iso_through_base(src, &dual_total, &source_cosets, &target_cosets)? {
            Some(h) if h.is_isomorphism() => (Some(h), Some(IsoRoute::ThroughBase)),
            _ if source_cosets.quotient() == target_cosets.quotient() => {
                flags.push(Flag::AbstractIsomorphism);
                (
                    Some(Hom::identity(source_cosets.quotient())),
                    Some(IsoRoute::Abstract),
                )
            }
            _ => (None, None),
        };

    let b_representative = source_cosets.representative(t.b());
    let dual = Triple::new(Arc::new(dual_total), b_dual, flux)?;
    Ok(DualityReport {
        source_euler: t.euler().clone(),
        dual_euler: e_dual,
        dual,
        flux_ambiguity,
        source_cosets,
        target_cosets,
        b_representative,
        coset_iso,
        iso_route,
        flags,
    })
}

/// True iff both coset quotients agree in canonical form and the stored
/// isomorphism between them is a genuine isomorphism.
pub fn verify_coset_isomorphism(source: &Triple, report: &DualityReport) -> bool {
    let Ok(h2) = source.total().group(2) else {
        return false;
    };
    if report.source_cosets.ambient() != h2 {
        return false;
    }
    let (qs, qt) = (
        report.source_cosets.quotient(),
        report.target_cosets.quotient(),
    );
    match &report.coset_iso {
        Some(h) => qs == qt && h.domain() == qs && h.codomain() == qt && h.is_isomorphism(),
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cohomology_of, CatalogSpace};

    fn base(space: CatalogSpace) -> Arc<GradedCohomology> {
        let d = space.dimension().unwrap();
        Arc::new(cohomology_of(space, d + 2).unwrap())
    }

    #[test]
    fn nilmanifold_dual() {
        let w = base(CatalogSpace::Torus);
        let t = Triple::from_coords(w, &[0], &[0, 0, 0], &[3], 3).unwrap();
        let r = dualize(&t).unwrap();
        assert_eq!(
            r.dual_euler.coords(),
            t.euler().group().element_i64(&[3]).unwrap().coords()
        );
        let groups: Vec<String> = r
            .dual
            .total()
            .groups()
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(groups, ["Z", "Z^2", "Z^2 + Z/3", "Z"]);
        assert!(r.dual.flux().is_zero());
        assert_eq!(r.source_cosets.quotient().to_string(), "Z^2 + Z/3");
        assert!(verify_coset_isomorphism(&t, &r));
        assert!(r.has_flag(Flag::Conjecture));
    }

    #[test]
    fn double_dual_restores_bundle() {
        let w = base(CatalogSpace::Torus);
        let t = Triple::from_coords(w, &[2], &[0, 0, 0], &[1], 3).unwrap();
        let r = dualize(&t).unwrap();
        assert_eq!(
            r.dual.total().pushforward_of(3, r.dual.flux()).unwrap(),
            *t.euler()
        );
        let rr = dualize(&r.dual).unwrap();
        assert_eq!(rr.dual_euler, *t.euler());
    }

    #[test]
    fn sphere_round_trip_collapses() {
        let w = base(CatalogSpace::Sphere(2));
        for b in -3..=3 {
            let t = Triple::from_coords(Arc::clone(&w), &[0], &[b], &[1], 3).unwrap();
            let r = dualize(&t).unwrap();
            assert!(r.dual.total().group(2).unwrap().is_zero());
            assert!(r.dual.flux().is_zero());
            let rr = dualize(&r.dual).unwrap();
            assert!(rr.dual.b().is_zero());
            assert!(verify_coset_isomorphism(&t, &r));
            assert_eq!(rr.iso_route, Some(IsoRoute::ThroughBase));
        }
    }

    #[test]
    fn b_must_lift() {
        let w = base(CatalogSpace::Torus);
        // b = a x z is not pulled back from the torus
        let t = Triple::from_coords(w, &[0], &[0, 1, 0], &[0], 3).unwrap();
        assert!(matches!(dualize(&t), Err(Error::BNotLiftable)));
    }

    #[test]
    fn coset_representatives() {
        let g = FgGroup::from_factors(1, &[2.into()]);
        let part = CosetPartition::new(&g.element_i64(&[2, 0]).unwrap()).unwrap();
        assert_eq!(part.quotient().to_string(), "Z/2 + Z/2");
        let reps = part.representatives().unwrap();
        assert_eq!(reps.len(), 4);
        let x = g.element_i64(&[5, 1]).unwrap();
        assert!(part.same_coset(&x, &part.representative(&x)).unwrap());
    }
}
