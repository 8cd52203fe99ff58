//! Classifying spaces of pairs and triples, computed as mapping tori of their
//! universal covers.

pub mod fixtures;

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::abelian::{direct_sum, ext_vanishes, FgGroup, GroupElement, Hom, IntMatrix};
use crate::catalog::GradedCohomology;
use crate::error::{Error, Result};
use crate::gysin::{total_space_cohomology, CircleBundle, TotalSpaceCohomology};
use crate::labels::combination;

/// An automorphism of a finitely generated abelian group, generating a Z-action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZAction {
    automorphism: Hom,
}

impl ZAction {
    pub fn new(automorphism: Hom) -> Result<Self> {
        if automorphism.domain() != automorphism.codomain() || !automorphism.is_isomorphism() {
            return Err(Error::NotInvertible);
        }
        Ok(ZAction { automorphism })
    }

    /// Action on `Z^n` by an integer matrix acting on coordinate columns.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let flat: Vec<i64> = rows
            .iter()
            .flat_map(|r| r.as_ref().iter().copied())
            .collect();
        if flat.len() != n * n {
            return Err(Error::MatrixShape {
                expected: (n, n),
                got: (n, flat.len() / n.max(1)),
            });
        }
        let g = FgGroup::free(n);
        Self::new(Hom::new(g.clone(), g, IntMatrix::from_i64(n, n, &flat))?)
    }

    pub fn trivial(group: &FgGroup) -> Self {
        ZAction {
            automorphism: Hom::identity(group),
        }
    }

    pub fn group(&self) -> &FgGroup {
        self.automorphism.domain()
    }

    pub fn automorphism(&self) -> &Hom {
        &self.automorphism
    }

    /// `theta - 1`.
    pub fn minus_identity(&self) -> Hom {
        self.automorphism
            .add(&Hom::identity(self.group()).scale(&BigInt::from(-1)))
            .expect("same group")
    }

    /// `theta^n` for any integer `n`.
    pub fn power(&self, n: i64) -> Hom {
        let base = if n < 0 {
            self.automorphism
                .inverse()
                .expect("automorphism is invertible")
        } else {
            self.automorphism.clone()
        };
        let mut out = Hom::identity(self.group());
        for _ in 0..n.unsigned_abs() {
            out = out.then(&base).expect("same group");
        }
        out
    }
}

/// Invariants `ker(theta - 1)` and coinvariants `coker(theta - 1)`.
#[derive(Clone, Debug)]
pub struct ZGroupCohomology {
    pub invariants: FgGroup,
    pub inclusion: Hom,
    pub coinvariants: FgGroup,
    pub projection: Hom,
}

pub fn z_group_cohomology(action: &ZAction) -> ZGroupCohomology {
    let d = action.minus_identity();
    let (invariants, inclusion) = d.kernel();
    let (coinvariants, projection) = d.cokernel();
    ZGroupCohomology {
        invariants,
        inclusion,
        coinvariants,
        projection,
    }
}

/// Action of `theta` on the degree-two part of a symmetric algebra, on
/// monomials `x_i x_j` (`i <= j`) in lexicographic order.
pub fn symmetric_square(theta: &IntMatrix) -> IntMatrix {
    let n = theta.rows();
    let monomials: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let index = |a: usize, b: usize| {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        monomials
            .iter()
            .position(|&m| m == (a, b))
            .expect("monomial exists")
    };
    let mut out = IntMatrix::zeros(monomials.len(), monomials.len());
    let mut cols = vec![vec![BigInt::zero(); monomials.len()]; monomials.len()];
    for (col, &(i, j)) in monomials.iter().enumerate() {
        for a in 0..n {
            for b in 0..n {
                cols[col][index(a, b)] += &theta[(a, i)] * &theta[(b, j)];
            }
        }
    }
    if !monomials.is_empty() {
        out = IntMatrix::from_columns(monomials.len(), &cols);
    }
    out
}

/// A cover with deck actions in each degree; its quotient is a mapping torus.
#[derive(Clone, Debug)]
pub struct MappingTorusData {
    pub name: String,
    pub cover: GradedCohomology,
    pub actions: Vec<Option<ZAction>>,
    /// Name of the degree-one class dual to the circle.
    pub circle_label: String,
    pub relabel: Vec<(String, String)>,
}

impl MappingTorusData {
    pub fn new(
        name: impl Into<String>,
        cover: GradedCohomology,
        circle_label: impl Into<String>,
    ) -> Self {
        MappingTorusData {
            name: name.into(),
            actions: vec![None; cover.max_degree() + 1],
            cover,
            circle_label: circle_label.into(),
            relabel: Vec::new(),
        }
    }

    pub fn with_action(mut self, k: usize, action: ZAction) -> Result<Self> {
        let g = self.cover.group(k as isize)?;
        if action.group() != &g {
            return Err(Error::GroupMismatch {
                left: g.to_string(),
                right: action.group().to_string(),
            });
        }
        self.actions[k] = Some(action);
        Ok(self)
    }

    /// Fills every degree without an action with the identity.
    pub fn with_trivial_actions(mut self) -> Self {
        for (k, a) in self.actions.iter_mut().enumerate() {
            if a.is_none() {
                let g = self.cover.group(k as isize).expect("degree within range");
                *a = Some(ZAction::trivial(&g));
            }
        }
        self
    }

    pub fn with_relabel(mut self, from: &str, to: &str) -> Self {
        self.relabel.push((from.to_string(), to.to_string()));
        self
    }

    /// The action in degree `k`; trivial groups need none, and degree zero
    /// defaults to the identity.
    pub fn action(&self, k: usize) -> Result<ZAction> {
        let g = self.cover.group(k as isize)?;
        match self.actions.get(k).cloned().flatten() {
            Some(a) => Ok(a),
            None if g.is_zero() || k == 0 => Ok(ZAction::trivial(&g)),
            None => Err(Error::MissingAction(k)),
        }
    }
}

fn times_circle(label: &str, circle: &str) -> String {
    match label {
        "1" => circle.to_string(),
        l if l.contains(['+', '-', '*']) => format!("({l}){circle}"),
        l => format!("{l}{circle}"),
    }
}

/// Cohomology of the mapping torus, from the two-row collapse
/// `0 -> coinv H^(n-1) -> H^n -> inv H^n -> 0`.
///
/// The sequence is reported split; degrees where the extension is not forced
/// are flagged ambiguous. Cup products with degree-two classes coming from
/// invariant cover classes act blockwise and are recorded when they descend.
pub fn mapping_torus_cohomology(data: &MappingTorusData) -> Result<GradedCohomology> {
    let cover = &data.cover;
    let top = cover.max_degree();
    let actions: Vec<ZAction> = (0..=top).map(|k| data.action(k)).collect::<Result<_>>()?;
    let zs: Vec<ZGroupCohomology> = actions.iter().map(z_group_cohomology).collect();

    let mut groups = Vec::new();
    let mut labels = Vec::new();
    let mut ambiguous = Vec::new();
    let mut sums = Vec::new();
    for n in 0..=top {
        let coinv = if n == 0 {
            FgGroup::zero()
        } else {
            zs[n - 1].coinvariants.clone()
        };
        let inv = zs[n].invariants.clone();
        let sum = direct_sum(&[coinv.clone(), inv.clone()]);
        let mut names: Vec<String> = Vec::new();
        if n > 0 {
            names.extend(
                cover
                    .labels(n - 1)
                    .iter()
                    .map(|l| times_circle(l, &data.circle_label)),
            );
        }
        names.extend(cover.labels(n).iter().cloned());
        let mut gen_labels = Vec::new();
        for g in 0..sum.group.ngens() {
            let col = sum.section.column(g);
            let mut v = Vec::new();
            if n > 0 {
                let q = coinv.element(col[..coinv.ngens()].to_vec())?;
                let lifted = zs[n - 1]
                    .projection
                    .preimage(&q)?
                    .ok_or_else(|| Error::Exactness("coinvariant projection is not onto".into()))?;
                v.extend(lifted.coords().iter().cloned());
            }
            v.extend(zs[n].inclusion.matrix().mul_vec(&col[coinv.ngens()..]));
            gen_labels.push(combination(&v, &names));
        }
        ambiguous.push(!ext_vanishes(&inv, &coinv));
        groups.push(sum.group.clone());
        labels.push(gen_labels);
        sums.push(sum);
    }

    let mut cup2 = Vec::new();
    if top >= 2 {
        for k in 0..=top - 2 {
            let row = (0..groups[2].ngens())
                .map(|i| descended_cup(cover, &zs, &actions, &sums, &groups, i, k))
                .collect::<Result<Vec<_>>>()?;
            cup2.push(row);
        }
    }
    let mut out =
        GradedCohomology::from_tables(data.name.clone(), groups, labels, cup2, Some(false))?;
    out.set_ambiguous(ambiguous);
    let relabel: Vec<(&str, &str)> = data
        .relabel
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    Ok(out.with_labels(&relabel))
}

// Cup with the i-th degree-two generator from degree k, if that generator is
// an invariant cover class and the product descends.
#[allow(clippy::too_many_arguments)]
fn descended_cup(
    cover: &GradedCohomology,
    zs: &[ZGroupCohomology],
    actions: &[ZAction],
    sums: &[crate::abelian::DirectSum],
    groups: &[FgGroup],
    i: usize,
    k: usize,
) -> Result<Option<Hom>> {
    let col = sums[2].section.column(i);
    let split = zs[1].coinvariants.ngens();
    if col[..split].iter().any(|c| !c.is_zero()) {
        return Ok(None);
    }
    let u = cover
        .group(2)?
        .element(zs[2].inclusion.matrix().mul_vec(&col[split..]))?;
    let (Ok(on_inv), Ok(on_coinv)) = (
        cover.cup_by(&u, k as isize),
        cover.cup_by(&u, k as isize - 1),
    ) else {
        return Ok(None);
    };
    if !zs[k]
        .inclusion
        .then(&on_inv)?
        .then(&actions[k + 2].minus_identity())?
        .is_zero()
    {
        return Ok(None);
    }
    if k > 0
        && !actions[k - 1]
            .minus_identity()
            .then(&on_coinv)?
            .then(&zs[k + 1].projection)?
            .is_zero()
    {
        return Ok(None);
    }
    let (src, dst) = (&sums[k], &sums[k + 2]);
    let mut cols = Vec::new();
    for g in 0..groups[k].ngens() {
        let x = groups[k].generator(g);
        let mut y = dst.group.zero_element();
        if k > 0 {
            let c = src.projections[0].apply(&x)?;
            let lifted = zs[k - 1]
                .projection
                .preimage(&c)?
                .expect("projection is onto");
            let image = zs[k + 1].projection.apply(&on_coinv.apply(&lifted)?)?;
            y = y.add(&dst.injections[0].apply(&image)?)?;
        }
        let inv = zs[k].inclusion.apply(&src.projections[1].apply(&x)?)?;
        let image = zs[k + 2]
            .inclusion
            .preimage(&on_inv.apply(&inv)?)?
            .ok_or_else(|| Error::Exactness("product leaves the invariants".into()))?;
        y = y.add(&dst.injections[1].apply(&image)?)?;
        cols.push(y.coords().to_vec());
    }
    Ok(Some(Hom::new(
        groups[k].clone(),
        groups[k + 2].clone(),
        IntMatrix::from_columns(groups[k + 2].ngens(), &cols),
    )?))
}

fn free_cover(
    name: &str,
    ranks: &[usize],
    labels: &[&[&str]],
    cup2: &[&[&[&[i64]]]],
) -> Result<GradedCohomology> {
    let groups: Vec<FgGroup> = ranks.iter().map(|&r| FgGroup::free(r)).collect();
    let names = labels
        .iter()
        .map(|row| row.iter().map(|s| s.to_string()).collect())
        .collect();
    let mut rows = Vec::new();
    for (k, row) in cup2.iter().enumerate() {
        let maps = row
            .iter()
            .map(|m| {
                let m: Vec<Vec<i64>> = m.iter().map(|r| r.to_vec()).collect();
                if groups[k].is_zero() {
                    Ok(Some(Hom::zero(&groups[k], &groups[k + 2])))
                } else {
                    Hom::from_i64(&groups[k], &groups[k + 2], &m).map(Some)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(maps);
    }
    GradedCohomology::from_tables(name, groups, names, rows, Some(true))
}

/// Universal cover of R2 and its deck action: K(Z^2, 2) through degree 4,
/// with the induced action on the symmetric square in degree 4.
pub fn r2_data() -> Result<MappingTorusData> {
    let cover = free_cover(
        "K(Z^2,2)",
        &[1, 0, 2, 0, 3],
        &[&["1"], &[], &["b", "v"], &[], &["b^2", "bv", "v^2"]],
        &[
            &[&[&[1], &[0]], &[&[0], &[1]]],
            &[&[], &[]],
            &[&[&[1, 0], &[0, 1], &[0, 0]], &[&[0, 0], &[1, 0], &[0, 1]]],
        ],
    )?;
    let theta = ZAction::from_rows(&fixtures::THETA_R2)?;
    let theta4 = ZAction::new(Hom::new(
        FgGroup::free(3),
        FgGroup::free(3),
        symmetric_square(theta.automorphism().matrix()),
    )?)?;
    Ok(MappingTorusData::new("R2", cover, "a")
        .with_action(2, theta)?
        .with_action(4, theta4)?
        .with_relabel("va", "c"))
}

/// Cover `R3 x K(Z,2)` of R32 through degree 4 with the published actions.
pub fn r32_data() -> Result<MappingTorusData> {
    let cover = free_cover(
        "R3xK(Z,2)",
        &[1, 0, 3, 0, 5],
        &[
            &["1"],
            &[],
            &["a1", "a2", "c"],
            &[],
            &["a1^2", "a2^2", "a1c", "a2c", "c^2"],
        ],
        &[
            &[
                &[&[1], &[0], &[0]],
                &[&[0], &[1], &[0]],
                &[&[0], &[0], &[1]],
            ],
            &[&[], &[], &[]],
            &[
                &[&[1, 0, 0], &[0, 0, 0], &[0, 0, 1], &[0, 0, 0], &[0, 0, 0]],
                &[&[0, 0, 0], &[0, 1, 0], &[0, 0, 0], &[0, 0, 1], &[0, 0, 0]],
                &[&[0, 0, 0], &[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
            ],
        ],
    )?;
    let pi2 = ZAction::from_rows(&fixtures::PI2_ON_R32)?;
    let phi = ZAction::from_rows(&fixtures::PHI_R32)?;
    Ok(MappingTorusData::new("R32", cover, "l")
        .with_action(2, pi2)?
        .with_action(4, phi)?
        .with_relabel("a2c", "x"))
}

/// The two universal bundles over R32: Euler class `a1` gives E32 and `a2`
/// gives its dual.
#[derive(Clone, Debug)]
pub struct UniversalBundles {
    pub e32: TotalSpaceCohomology,
    pub e32_hat: TotalSpaceCohomology,
}

fn euler_named(base: &Arc<GradedCohomology>, label: &str) -> Result<CircleBundle> {
    let e = base.generator_named(2, label).ok_or_else(|| {
        Error::MissingCupData(format!("{}: no class {label} in degree 2", base.name()))
    })?;
    CircleBundle::new(Arc::clone(base), e)
}

/// Total spaces of the universal bundles over any table of R32 through
/// degree 4, without checking against published values.
pub fn universal_bundle_tables_over(base: Arc<GradedCohomology>) -> Result<UniversalBundles> {
    Ok(UniversalBundles {
        e32: total_space_cohomology(&euler_named(&base, "a1")?, 3)?,
        e32_hat: total_space_cohomology(&euler_named(&base, "a2")?, 3)?,
    })
}

/// True when the ranks match and every listed base class is the pushforward
/// of some generator in the stated degree.
fn matches_table(
    t: &TotalSpaceCohomology,
    ranks: &[usize],
    pushforwards: &[(usize, &str)],
) -> Result<bool> {
    let groups_ok = t.groups().len() == ranks.len()
        && t.groups()
            .iter()
            .zip(ranks)
            .all(|(g, &r)| g == &FgGroup::free(r));
    if !groups_ok {
        return Ok(false);
    }
    for &(k, label) in pushforwards {
        let Some(target) = t.base().generator_named(k - 1, label) else {
            return Ok(false);
        };
        if generator_pushing_to(t, k, &target)?.is_none() {
            return Ok(false);
        }
    }
    Ok(t.audit_exactness()?.iter().all(|(_, ok)| *ok))
}

/// A basis generator of H^k(E) whose pushforward is `target`.
pub fn generator_pushing_to(
    t: &TotalSpaceCohomology,
    k: usize,
    target: &GroupElement,
) -> Result<Option<usize>> {
    let g = t.group(k)?;
    for i in 0..g.ngens() {
        if t.pushforward_of(k, &g.generator(i))? == *target {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

fn checked_universal_bundles() -> Result<UniversalBundles> {
    let base = Arc::new(fixtures::r32_ring()?);
    let u = universal_bundle_tables_over(base)?;
    if !matches_table(&u.e32, &fixtures::E32_RANKS, &fixtures::E32_PUSHFORWARDS)? {
        return Err(Error::SelfTest(format!(
            "E32 computed as {:?}",
            u.e32.groups()
        )));
    }
    if !matches_table(
        &u.e32_hat,
        &fixtures::E32_HAT_RANKS,
        &fixtures::E32_HAT_PUSHFORWARDS,
    )? {
        return Err(Error::SelfTest(format!(
            "dual E32 computed as {:?}",
            u.e32_hat.groups()
        )));
    }
    Ok(u)
}

/// Universal bundles over the published R32 ring, checked against the
/// published tables once and cached.
pub fn universal_bundle_tables() -> Result<&'static UniversalBundles> {
    static CELL: OnceLock<Result<UniversalBundles>> = OnceLock::new();
    CELL.get_or_init(checked_universal_bundles)
        .as_ref()
        .map_err(Clone::clone)
}

/// The universal pair bundle over the computed R2 (Euler class `b`),
/// degrees 0..3, checked against its published table.
pub fn universal_pair_bundle() -> Result<TotalSpaceCohomology> {
    let base = Arc::new(mapping_torus_cohomology(&r2_data()?)?);
    let t = total_space_cohomology(&euler_named(&base, "b")?, 3)?;
    if !matches_table(&t, &fixtures::E2_RANKS, &fixtures::E2_PUSHFORWARDS)? {
        return Err(Error::SelfTest(format!("E2 computed as {:?}", t.groups())));
    }
    Ok(t)
}

/// The action of T32 on cohomology, on the published bases.
#[derive(Clone, Debug)]
pub struct T32Action {
    /// Degrees 0..3 of R32.
    pub on_base: Vec<Hom>,
}

impl T32Action {
    /// The induced map H*(E32) -> H*(E32^) in degrees 0..3, where the image
    /// of `b` is `k` times the pulled-back `a1`.
    pub fn on_bundles(&self, k: i64) -> Result<Vec<Hom>> {
        let (src, dst) = (fixtures::e32_groups(), fixtures::e32_hat_groups());
        fixtures::t32_on_bundles(k)
            .iter()
            .enumerate()
            .map(|(d, rows)| Hom::from_i64(&src[d], &dst[d], rows))
            .collect()
    }

    /// `T32* o T32*` on R32.
    pub fn squared(&self) -> Result<Vec<Hom>> {
        self.on_base.iter().map(|h| h.then(h)).collect()
    }
}

pub fn t32_cohomology_action() -> Result<T32Action> {
    let g = fixtures::r32_groups();
    let on_base = fixtures::T32_ON_R32
        .iter()
        .enumerate()
        .map(|(d, rows)| {
            let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
            Hom::from_i64(&g[d], &g[d], &rows)
        })
        .collect::<Result<_>>()?;
    Ok(T32Action { on_base })
}

/// Homotopy groups with the action of π1 on π2.
#[derive(Clone, Debug)]
pub struct HomotopyTable {
    pub space: &'static str,
    /// π1, π2, ...; all higher groups vanish.
    pub groups: Vec<FgGroup>,
    pub pi1_on_pi2: IntMatrix,
}

impl HomotopyTable {
    /// `π_i` for `i >= 1`.
    pub fn pi(&self, i: usize) -> FgGroup {
        i.checked_sub(1)
            .and_then(|j| self.groups.get(j).cloned())
            .unwrap_or_else(FgGroup::zero)
    }
}

pub fn homotopy_tables() -> [HomotopyTable; 2] {
    fn flat<const N: usize>(rows: &[[i64; N]; N]) -> Vec<i64> {
        rows.iter().flatten().copied().collect()
    }
    [
        HomotopyTable {
            space: "R2",
            groups: fixtures::PI_R2.iter().map(|&r| FgGroup::free(r)).collect(),
            pi1_on_pi2: IntMatrix::from_i64(2, 2, &flat(&fixtures::THETA_R2)),
        },
        HomotopyTable {
            space: "R32",
            groups: fixtures::PI_R32.iter().map(|&r| FgGroup::free(r)).collect(),
            pi1_on_pi2: IntMatrix::from_i64(3, 3, &flat(&fixtures::PI2_ON_R32)),
        },
    ]
}

/// Canonical representative of the orbit of `x` under a unipotent action
/// with `(theta - 1)^2 = 0` on a free group.
///
/// The orbit is `x + n w` with `w = (theta - 1) x`; the first nonzero
/// coordinate of `w` selects which coordinate is reduced into `[0, |w_i|)`.
pub fn unbased_classes_over_sphere(action: &ZAction, x: &GroupElement) -> Result<GroupElement> {
    if x.group() != action.group() {
        return Err(Error::GroupMismatch {
            left: action.group().to_string(),
            right: x.group().to_string(),
        });
    }
    let d = action.minus_identity();
    if !action.group().is_free() || !d.then(&d)?.is_zero() {
        return Err(Error::UnsupportedAction(
            "orbit canonicalization needs a unipotent action of step two on a free group".into(),
        ));
    }
    let w = d.apply(x)?;
    let Some(i) = w.coords().iter().position(|c| !c.is_zero()) else {
        return Ok(x.clone());
    };
    let wi = &w.coords()[i];
    let r = num_integer::Integer::mod_floor(&x.coords()[i], &wi.abs());
    let n = (&r - &x.coords()[i]) / wi;
    x.add(&w.scale(&n))
}

/// Named generators per degree with the products by degree-two classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorTable {
    pub name: String,
    pub generators: Vec<Vec<String>>,
    pub products: Vec<Product>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Product {
    pub left: String,
    pub right: String,
    pub value: String,
}

impl GeneratorTable {
    pub fn of(g: &GradedCohomology) -> Self {
        let generators: Vec<Vec<String>> =
            (0..=g.max_degree()).map(|k| g.labels(k).to_vec()).collect();
        let mut products = Vec::new();
        let h2 = generators.get(2).cloned().unwrap_or_default();
        for k in 1..=g.max_degree().saturating_sub(2) {
            for (i, u) in h2.iter().enumerate() {
                let Some(h) = g.cup2_generator(k, i) else {
                    continue;
                };
                for (j, v) in generators[k].iter().enumerate() {
                    if k == 2 && j < i {
                        continue;
                    }
                    let value = combination(&h.matrix().column(j), &generators[k + 2]);
                    products.push(Product {
                        left: u.clone(),
                        right: v.clone(),
                        value,
                    });
                }
            }
        }
        GeneratorTable {
            name: g.name().to_string(),
            generators,
            products,
        }
    }

    /// Products that vanish.
    pub fn relations(&self) -> impl Iterator<Item = &Product> {
        self.products.iter().filter(|p| p.value == "0")
    }

    pub fn validate(&self) -> Result<()> {
        let known = |s: &str| self.generators.iter().flatten().any(|g| g == s);
        for p in &self.products {
            if !known(&p.left) || !known(&p.right) {
                return Err(Error::InvalidParameter(format!(
                    "relation {}*{} names an unknown generator",
                    p.left, p.right
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(g: &GradedCohomology) -> Vec<String> {
        g.groups().iter().map(ToString::to_string).collect()
    }

    #[test]
    fn unipotent_z_cohomology() {
        let theta = ZAction::from_rows(&[&[1, 1], &[0, 1]]).unwrap();
        let z = z_group_cohomology(&theta);
        assert_eq!(z.invariants, FgGroup::free(1));
        assert_eq!(z.coinvariants, FgGroup::free(1));
    }

    #[test]
    fn published_phi_coinvariants_have_torsion() {
        let phi = ZAction::from_rows(&fixtures::PHI_R32).unwrap();
        let z = z_group_cohomology(&phi);
        assert_eq!(z.invariants, FgGroup::free(3));
        assert_eq!(z.coinvariants.to_string(), "Z^3 + Z/2");
    }

    #[test]
    fn symmetric_square_of_shear() {
        let m = symmetric_square(&IntMatrix::from_i64(2, 2, &[1, 1, 0, 1]));
        assert_eq!(m, IntMatrix::from_i64(3, 3, &[1, 1, 1, 0, 1, 2, 0, 0, 1]));
    }

    #[test]
    fn r2_table() {
        let r2 = mapping_torus_cohomology(&r2_data().unwrap()).unwrap();
        assert_eq!(&table(&r2)[..4], ["Z", "Z", "Z", "Z"]);
        assert_eq!(r2.labels(1), ["a"]);
        assert_eq!(r2.labels(3), ["c"]);
        assert_eq!(r2.labels(4), ["b^2"]);
        let gt = GeneratorTable::of(&r2);
        assert!(gt.relations().any(|p| p.left == "b" && p.right == "a"));
        gt.validate().unwrap();
    }

    #[test]
    fn r32_computed_table() {
        let r32 = mapping_torus_cohomology(&r32_data().unwrap()).unwrap();
        assert_eq!(table(&r32), ["Z", "Z", "Z^2", "Z^2", "Z^3"]);
        assert_eq!(r32.labels(2), ["a1", "a2"]);
        assert_eq!(r32.labels(3), ["a2l", "cl"]);
        assert_eq!(r32.labels(4), ["a1^2", "a2^2", "x"]);
        let gt = GeneratorTable::of(&r32);
        assert!(gt.relations().any(|p| p.left == "a1" && p.right == "a2"));
        assert!(gt.relations().any(|p| p.left == "a1" && p.right == "l"));
    }

    #[test]
    fn trivial_action_is_product_with_circle() {
        let cover =
            crate::catalog::cohomology_of(crate::catalog::CatalogSpace::ComplexProjective(2), 4)
                .unwrap();
        let t = mapping_torus_cohomology(
            &MappingTorusData::new("CP2xS1", cover, "z").with_trivial_actions(),
        )
        .unwrap();
        assert_eq!(table(&t), ["Z", "Z", "Z", "Z", "Z"]);
        assert_eq!(t.labels(3), ["wz"]);
    }

    #[test]
    fn universal_bundles_self_test() {
        let u = universal_bundle_tables().unwrap();
        assert_eq!(u.e32.group(2).unwrap(), &FgGroup::free(2));
        let pair = universal_pair_bundle().unwrap();
        assert_eq!(pair.groups().len(), 4);
    }

    #[test]
    fn orbit_representatives() {
        let theta = ZAction::from_rows(&[&[1, 1], &[0, 1]]).unwrap();
        let g = theta.group().clone();
        let x = g.element_i64(&[-7, 3]).unwrap();
        assert_eq!(
            unbased_classes_over_sphere(&theta, &x).unwrap().coords(),
            g.element_i64(&[2, 3]).unwrap().coords()
        );
        let fixed = g.element_i64(&[5, 0]).unwrap();
        assert_eq!(unbased_classes_over_sphere(&theta, &fixed).unwrap(), fixed);
        let bad = ZAction::from_rows(&[&[2, 1], &[1, 1]]).unwrap();
        assert!(unbased_classes_over_sphere(&bad, &g.element_i64(&[1, 0]).unwrap()).is_err());
    }

    #[test]
    fn t32_squared_kills_circle_class() {
        let t = t32_cohomology_action().unwrap();
        let sq = t.squared().unwrap();
        assert!(sq[1].is_zero());
        assert_eq!(sq[2], Hom::identity(&FgGroup::free(2)));
        assert_eq!(
            t.on_bundles(3).unwrap()[2].matrix(),
            &IntMatrix::from_i64(1, 2, &[1, 3])
        );
    }

    #[test]
    fn homotopy() {
        let [r2, r32] = homotopy_tables();
        assert_eq!(r2.pi(2), FgGroup::free(2));
        assert_eq!(r32.pi(3), FgGroup::free(1));
        assert!(r32.pi(5).is_zero());
    }
}
