//! Cohomology of the total space of a principal circle bundle.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::abelian::{
    direct_sum, ext_vanishes, is_exact_at, FgGroup, GroupElement, Hom, IntMatrix,
};
use crate::catalog::{CochainModel, GradedCohomology};
use crate::cochain::{ChainMap, CupModel};
use crate::error::{Error, Result};
use crate::labels::{combination, suffixed};

/// A principal circle bundle given by its base and Euler class.
#[derive(Clone, Debug)]
pub struct CircleBundle {
    base: Arc<GradedCohomology>,
    euler: GroupElement,
}

impl CircleBundle {
    pub fn new(base: Arc<GradedCohomology>, euler: GroupElement) -> Result<Self> {
        let h2 = base.group(2)?;
        if euler.group() != &h2 {
            return Err(Error::GroupMismatch {
                left: h2.to_string(),
                right: euler.group().to_string(),
            });
        }
        Ok(CircleBundle { base, euler })
    }

    /// Bundle with Euler class given in canonical H² coordinates.
    pub fn with_coords(base: Arc<GradedCohomology>, euler: &[i64]) -> Result<Self> {
        let e = base.group(2)?.element_i64(euler)?;
        Self::new(base, e)
    }

    pub fn base(&self) -> &Arc<GradedCohomology> {
        &self.base
    }

    pub fn euler(&self) -> &GroupElement {
        &self.euler
    }

    pub fn is_trivial(&self) -> bool {
        self.euler.is_zero()
    }
}

/// How the total space groups were obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    /// Exact cohomology of the mapping cone of the Euler cocycle.
    CochainCone,
    /// Split form of the Gysin short exact sequence.
    ShortExact,
}

// Pieces of the Gysin short exact sequence in one degree.
#[derive(Clone, Debug)]
struct SesDegree {
    coker_proj: Hom,
    ker_incl: Hom,
    inj_coker: Hom,
    proj_coker: Hom,
    proj_ker: Hom,
    inj_ker: Hom,
}

/// Cohomology of the total space with the Gysin maps `p*` and `p!`.
#[derive(Clone, Debug)]
pub struct TotalSpaceCohomology {
    bundle: CircleBundle,
    groups: Vec<FgGroup>,
    labels: Vec<Vec<String>>,
    pullback: Vec<Hom>,
    pushforward: Vec<Hom>,
    ambiguous: Vec<bool>,
    route: Route,
    cone: Option<Arc<CochainModel>>,
    ses: Vec<SesDegree>,
}

impl TotalSpaceCohomology {
    pub fn bundle(&self) -> &CircleBundle {
        &self.bundle
    }

    pub fn base(&self) -> &GradedCohomology {
        &self.bundle.base
    }

    pub fn max_degree(&self) -> usize {
        self.groups.len() - 1
    }

    pub fn route(&self) -> Route {
        self.route
    }

    pub fn groups(&self) -> &[FgGroup] {
        &self.groups
    }

    pub fn group(&self, k: usize) -> Result<&FgGroup> {
        self.groups.get(k).ok_or(Error::DegreeOutOfRange(k))
    }

    pub fn labels(&self, k: usize) -> &[String] {
        self.labels.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn ambiguous(&self) -> &[bool] {
        &self.ambiguous
    }

    pub fn any_ambiguous(&self) -> bool {
        self.ambiguous.iter().any(|&a| a)
    }

    /// `p*: H^k(W) -> H^k(E)`.
    pub fn pullback(&self, k: usize) -> Result<&Hom> {
        self.pullback.get(k).ok_or(Error::DegreeOutOfRange(k))
    }

    /// `p!: H^k(E) -> H^(k-1)(W)`.
    pub fn pushforward(&self, k: usize) -> Result<&Hom> {
        self.pushforward.get(k).ok_or(Error::DegreeOutOfRange(k))
    }

    pub fn element(&self, k: usize, coords: &[i64]) -> Result<GroupElement> {
        self.group(k)?.element_i64(coords)
    }

    pub fn describe(&self, k: usize, x: &GroupElement) -> String {
        combination(x.coords(), self.labels(k))
    }

    pub fn generator_named(&self, k: usize, label: &str) -> Option<GroupElement> {
        let i = self.labels(k).iter().position(|l| l == label)?;
        Some(self.groups[k].generator(i))
    }

    pub fn pullback_of(&self, k: usize, y: &GroupElement) -> Result<GroupElement> {
        self.pullback(k)?.apply(y)
    }

    pub fn pushforward_of(&self, k: usize, x: &GroupElement) -> Result<GroupElement> {
        pushforward_of(self, k, x)
    }

    /// Checks both interior positions of every five-term Gysin segment.
    pub fn audit_exactness(&self) -> Result<Vec<(usize, bool)>> {
        let base = &self.bundle.base;
        let e = &self.bundle.euler;
        let mut out = Vec::new();
        for k in 0..=self.max_degree() {
            let ki = k as isize;
            let lo = base.cup_by(e, ki - 2)?;
            let hi = base.cup_by(e, ki - 1)?;
            let up = self.pullback(k)?;
            let down = self.pushforward(k)?;
            let ok = is_exact_at(&lo, up)? && is_exact_at(up, down)? && is_exact_at(down, &hi)?;
            out.push((k, ok));
        }
        Ok(out)
    }

    /// The total space as a graded table in its own right, with cup data for
    /// classes pulled back from the base where available.
    pub fn as_graded(&self) -> Result<GradedCohomology> {
        let base = &self.bundle.base;
        let name = format!(
            "E({}, {})",
            base.name(),
            base.describe(2, &self.bundle.euler)
        );
        let dimension = base.dimension().map(|d| d + 1);
        let mut g = match &self.cone {
            Some(model) => GradedCohomology::from_model(
                name,
                (**model).clone(),
                self.max_degree(),
                dimension,
                None,
            )?,
            None => {
                let cup2 = if self.bundle.is_trivial() {
                    self.split_cup2()?
                } else {
                    Vec::new()
                };
                let mut g = GradedCohomology::from_tables(
                    name,
                    self.groups.clone(),
                    self.labels.clone(),
                    cup2,
                    None,
                )?;
                g.set_dimension(dimension);
                g
            }
        };
        g.set_ambiguous(self.ambiguous.clone());
        Ok(g)
    }

    // Blockwise cup with pulled-back classes on a product with the circle.
    fn split_cup2(&self) -> Result<Vec<Vec<Option<Hom>>>> {
        let base = &self.bundle.base;
        let top = self.max_degree();
        if top < 2 {
            return Ok(Vec::new());
        }
        let h2 = &self.groups[2];
        let mut rows = Vec::new();
        for k in 0..=top - 2 {
            let mut row = Vec::new();
            for i in 0..h2.ngens() {
                let g = h2.generator(i);
                let s2 = &self.ses[2];
                let entry = if s2.proj_ker.apply(&g)?.is_zero() {
                    let c = s2.proj_coker.apply(&g)?;
                    let e = s2.coker_proj.preimage(&c)?.expect("projection is onto");
                    self.blockwise(k, &e, base).ok()
                } else {
                    None
                };
                row.push(entry);
            }
            rows.push(row);
        }
        Ok(rows)
    }

    fn blockwise(&self, k: usize, e: &GroupElement, base: &GradedCohomology) -> Result<Hom> {
        let (src, dst) = (&self.ses[k], &self.ses[k + 2]);
        let cup_x = base.cup_by(e, k as isize)?;
        let cup_y = base.cup_by(e, k as isize - 1)?;
        let mut cols = Vec::new();
        for i in 0..self.groups[k].ngens() {
            let g = self.groups[k].generator(i);
            let c = src.proj_coker.apply(&g)?;
            let x = src.coker_proj.preimage(&c)?.expect("projection is onto");
            let x2 = dst.coker_proj.apply(&cup_x.apply(&x)?)?;
            let y = src.ker_incl.apply(&src.proj_ker.apply(&g)?)?;
            let y2 = cup_y.apply(&y)?;
            let y2 = dst
                .ker_incl
                .preimage(&y2)?
                .ok_or_else(|| Error::MissingCupData("product class leaves the kernel".into()))?;
            let v = dst.inj_coker.apply(&x2)?.add(&dst.inj_ker.apply(&y2)?)?;
            cols.push(v.coords().to_vec());
        }
        Hom::new(
            self.groups[k].clone(),
            self.groups[k + 2].clone(),
            IntMatrix::from_columns(self.groups[k + 2].ngens(), &cols),
        )
    }
}

/// Applies the stored pushforward in degree `k`.
pub fn pushforward_of(
    tsc: &TotalSpaceCohomology,
    k: usize,
    x: &GroupElement,
) -> Result<GroupElement> {
    tsc.pushforward(k)?.apply(x)
}

/// Total-space cohomology in degrees `0..=max_degree`.
///
/// Bases with a cochain model go through the mapping cone of the Euler
/// cocycle, which settles extension problems. Other bases use the split
/// Gysin sequence and flag degrees where the extension is not determined.
pub fn total_space_cohomology(
    bundle: &CircleBundle,
    max_degree: usize,
) -> Result<TotalSpaceCohomology> {
    let base = &bundle.base;
    let needed = if bundle.is_trivial() {
        max_degree
    } else {
        max_degree + 1
    };
    if !base.knows_degree(needed as isize) {
        return Err(Error::DegreeOverflow {
            requested: needed,
            max: base.max_degree(),
        });
    }
    if let Some(model) = base.model() {
        if let Some(t) = via_cone(bundle, model, max_degree)? {
            return Ok(t);
        }
    }
    via_short_exact(bundle, max_degree)
}

fn via_cone(
    bundle: &CircleBundle,
    model: &CochainModel,
    top: usize,
) -> Result<Option<TotalSpaceCohomology>> {
    let base = &bundle.base;
    let c = &model.complex;
    let base_coh: Vec<_> = (0..=top + 1).map(|k| c.cohomology(k)).collect();
    if base_coh
        .iter()
        .take(top + 1)
        .zip(base.groups())
        .any(|(h, g)| h.group() != g)
    {
        return Ok(None);
    }
    let euler_cocycle = base_coh[2].representative(bundle.euler.coords());
    let euler_map = if bundle.is_trivial() {
        ChainMap::zero()
    } else {
        match model.cup.cup_with(&euler_cocycle, c) {
            Some(m) => m,
            None => return Ok(None),
        }
    };
    let cone = c.circle_bundle_cone(&euler_map);
    let mut cup = CupModel::new();
    for (z, f) in model.cup.entries() {
        if f.commutes_with(&euler_map, c) {
            let mut zz = z.clone();
            zz.push(BigInt::from(0));
            zz.resize(cone.dim(2), BigInt::from(0));
            cup = cup.with(zz, f.on_cone(c, &cone));
        }
    }
    let cone_model = CochainModel::new(cone, cup, top);
    let mut groups = Vec::new();
    let mut labels = Vec::new();
    let mut pullback = Vec::new();
    let mut pushforward = Vec::new();
    for k in 0..=top {
        let hk = &cone_model.cohomology[k];
        groups.push(hk.group().clone());
        labels.push(hk.labels().to_vec());
        let nk = c.dim(k as isize);
        let wk = &base_coh[k];
        let up: Vec<Vec<BigInt>> = (0..wk.group().ngens())
            .map(|i| {
                let mut v = wk.representative(wk.group().generator(i).coords());
                v.resize(cone_model.complex.dim(k as isize), BigInt::from(0));
                hk.class_of(&v).expect("pulled back cocycle")
            })
            .collect();
        pullback.push(Hom::new(
            wk.group().clone(),
            hk.group().clone(),
            IntMatrix::from_columns(hk.group().ngens(), &up),
        )?);
        let down_target = if k == 0 {
            FgGroup::zero()
        } else {
            base_coh[k - 1].group().clone()
        };
        let down: Vec<Vec<BigInt>> = (0..hk.group().ngens())
            .map(|i| {
                if k == 0 {
                    return Vec::new();
                }
                let v = hk.representative(hk.group().generator(i).coords());
                base_coh[k - 1]
                    .class_of(&v[nk..])
                    .expect("fiber part is a cocycle")
            })
            .collect();
        pushforward.push(Hom::new(
            hk.group().clone(),
            down_target.clone(),
            IntMatrix::from_columns(down_target.ngens(), &down),
        )?);
    }
    Ok(Some(TotalSpaceCohomology {
        bundle: bundle.clone(),
        ambiguous: vec![false; groups.len()],
        groups,
        labels,
        pullback,
        pushforward,
        route: Route::CochainCone,
        cone: Some(Arc::new(cone_model)),
        ses: Vec::new(),
    }))
}

fn via_short_exact(bundle: &CircleBundle, top: usize) -> Result<TotalSpaceCohomology> {
    let base = &bundle.base;
    let e = &bundle.euler;
    let mut out = TotalSpaceCohomology {
        bundle: bundle.clone(),
        groups: Vec::new(),
        labels: Vec::new(),
        pullback: Vec::new(),
        pushforward: Vec::new(),
        ambiguous: Vec::new(),
        route: Route::ShortExact,
        cone: None,
        ses: Vec::new(),
    };
    for k in 0..=top as isize {
        let lo = base.cup_by(e, k - 2)?;
        let (coker, coker_proj) = lo.cokernel();
        let (ker, ker_incl) = if bundle.is_trivial() {
            let g = base.group(k - 1)?;
            (g.clone(), Hom::identity(&g))
        } else {
            base.cup_by(e, k - 1)?.kernel()
        };
        let sum = direct_sum(&[coker.clone(), ker.clone()]);
        let pull = coker_proj.then(&sum.injections[0])?;
        let push = sum.projections[1].then(&ker_incl)?;

        // name generators through representatives in H^k(W) and H^(k-1)(W)
        let hk = base.group(k)?;
        let xs: Vec<Vec<BigInt>> = (0..coker.ngens())
            .map(|i| {
                coker_proj
                    .preimage(&coker.generator(i))
                    .map(|p| p.expect("projection is onto").coords().to_vec())
            })
            .collect::<Result<_>>()?;
        let mut names: Vec<String> = base
            .labels(k as usize)
            .iter()
            .map(|l| suffixed(l, "x1"))
            .collect();
        if k >= 1 {
            names.extend(
                base.labels(k as usize - 1)
                    .iter()
                    .map(|l| suffixed(l, "xz")),
            );
        }
        let labels = (0..sum.group.ngens())
            .map(|g| {
                let col = sum.section.column(g);
                let mut v = vec![BigInt::from(0); hk.ngens()];
                for (i, x) in xs.iter().enumerate() {
                    for (j, xj) in x.iter().enumerate() {
                        v[j] += &col[i] * xj;
                    }
                }
                let y = ker_incl.matrix().mul_vec(&col[coker.ngens()..]);
                v.extend(y);
                combination(&v, &names)
            })
            .collect();

        out.ambiguous
            .push(!bundle.is_trivial() && !ext_vanishes(&ker, &coker));
        out.groups.push(sum.group.clone());
        out.labels.push(labels);
        out.pullback.push(pull);
        out.pushforward.push(push);
        out.ses.push(SesDegree {
            coker_proj,
            ker_incl,
            inj_coker: sum.injections[0].clone(),
            proj_coker: sum.projections[0].clone(),
            proj_ker: sum.projections[1].clone(),
            inj_ker: sum.injections[1].clone(),
        });
    }
    Ok(out)
}
