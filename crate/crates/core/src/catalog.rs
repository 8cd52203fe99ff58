//! Catalog base spaces with their integral cohomology and cup-by-H² data.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::abelian::{FgGroup, GroupElement, Hom, IntMatrix};
use crate::cochain::{ChainMap, CochainComplex, CocycleCohomology, CupModel};
use crate::error::{Error, Result};
use crate::labels::combination;

/// Largest degree any catalog query may ask for.
pub const MAX_DEGREE: usize = 8;
/// Largest sphere, projective space or genus parameter.
pub const MAX_PARAMETER: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CatalogSpace {
    Point,
    Sphere(u32),
    Torus,
    Surface(u32),
    RealProjective(u32),
    ComplexProjective(u32),
    /// `K(Z,2)` truncated at the requested degree.
    EilenbergMacLaneZ2,
}

impl CatalogSpace {
    pub fn dimension(&self) -> Option<usize> {
        match *self {
            CatalogSpace::Point => Some(0),
            CatalogSpace::Sphere(n) | CatalogSpace::RealProjective(n) => Some(n as usize),
            CatalogSpace::Torus | CatalogSpace::Surface(_) => Some(2),
            CatalogSpace::ComplexProjective(n) => Some(2 * n as usize),
            CatalogSpace::EilenbergMacLaneZ2 => None,
        }
    }

    pub fn is_simply_connected(&self) -> bool {
        match *self {
            CatalogSpace::Point
            | CatalogSpace::ComplexProjective(_)
            | CatalogSpace::EilenbergMacLaneZ2 => true,
            CatalogSpace::Sphere(n) => n >= 2,
            CatalogSpace::Torus | CatalogSpace::Surface(_) => false,
            CatalogSpace::RealProjective(n) => n == 0,
        }
    }

    fn validate(&self) -> Result<()> {
        let (p, lo, hi) = match *self {
            CatalogSpace::Sphere(n) | CatalogSpace::RealProjective(n) => (n, 1, MAX_PARAMETER),
            CatalogSpace::Surface(g) => (g, 1, MAX_PARAMETER),
            CatalogSpace::ComplexProjective(n) => (n, 1, MAX_PARAMETER / 2),
            _ => return Ok(()),
        };
        if p < lo || p > hi {
            return Err(Error::InvalidParameter(format!(
                "{self}: parameter {p} outside {lo}..={hi}"
            )));
        }
        Ok(())
    }

    /// Cellular cochain model, cells through `max_degree`, with cup maps for
    /// a spanning set of degree-two cocycles.
    fn model(&self, max_degree: usize) -> (CochainComplex, CupModel) {
        let one = || BigInt::from(1);
        let top = self.dimension().unwrap_or(max_degree);
        let mut cells: Vec<Vec<String>> = vec![Vec::new(); top + 1];
        cells[0] = vec!["1".to_string()];
        let mut diffs: Vec<IntMatrix> = Vec::new();
        // cup with a degree-two cocycle that sends cell i of degree k to cell
        // `targets[k][i]` of degree k + 2
        let mut shift: Vec<Vec<Option<usize>>> = vec![Vec::new(); top + 1];
        match *self {
            CatalogSpace::Point => {}
            CatalogSpace::Sphere(n) => {
                cells[n as usize] = vec!["vol".to_string()];
                if n == 2 {
                    shift[0] = vec![Some(0)];
                }
            }
            CatalogSpace::Torus | CatalogSpace::Surface(_) => {
                let g = match *self {
                    CatalogSpace::Surface(g) => g,
                    _ => 1,
                };
                cells[1] = if g == 1 {
                    vec!["a".into(), "b".into()]
                } else {
                    (1..=g)
                        .map(|i| format!("a{i}"))
                        .chain((1..=g).map(|i| format!("b{i}")))
                        .collect()
                };
                cells[2] = vec!["vol".to_string()];
                shift[0] = vec![Some(0)];
            }
            CatalogSpace::RealProjective(n) => {
                for (k, cell) in cells.iter_mut().enumerate().take(n as usize + 1).skip(1) {
                    let name = if k == n as usize && k % 2 == 1 {
                        "vol".to_string()
                    } else if k % 2 == 1 {
                        format!("e{k}")
                    } else if k == 2 {
                        "alpha".to_string()
                    } else {
                        format!("alpha^{}", k / 2)
                    };
                    *cell = vec![name];
                }
                for k in 0..n as usize {
                    let d = if k % 2 == 1 { 2 } else { 0 };
                    diffs.push(IntMatrix::from_i64(1, 1, &[d]));
                }
                for (k, s) in shift.iter_mut().enumerate() {
                    if k + 2 <= n as usize {
                        *s = vec![Some(0)];
                    }
                }
            }
            CatalogSpace::ComplexProjective(_) | CatalogSpace::EilenbergMacLaneZ2 => {
                let var = if matches!(self, CatalogSpace::EilenbergMacLaneZ2) {
                    "u"
                } else {
                    "w"
                };
                for k in (2..=top).step_by(2) {
                    cells[k] = vec![if k == 2 {
                        var.to_string()
                    } else {
                        format!("{var}^{}", k / 2)
                    }];
                }
                for k in (0..=top).step_by(2) {
                    if k + 2 <= top {
                        shift[k] = vec![Some(0)];
                    }
                }
            }
        }
        for (k, s) in shift.iter_mut().enumerate() {
            s.resize(cells[k].len(), None);
        }
        let complex = CochainComplex::new(cells, diffs).expect("catalog complexes are valid");
        let mut cup = CupModel::new();
        if complex.dim(2) > 0 && !shift.iter().all(|s| s.iter().all(Option::is_none)) {
            let mut z = vec![BigInt::zero(); complex.dim(2)];
            z[0] = one();
            let maps = (0..=top)
                .map(|k| {
                    let mut m =
                        IntMatrix::zeros(complex.dim(k as isize + 2), complex.dim(k as isize));
                    for (i, t) in shift[k].iter().enumerate() {
                        if let Some(t) = t {
                            m[(*t, i)] = one();
                        }
                    }
                    m
                })
                .collect();
            cup = cup.with(z, ChainMap::new(maps));
        }
        (complex, cup)
    }
}

impl fmt::Display for CatalogSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogSpace::Point => write!(f, "point"),
            CatalogSpace::Sphere(n) => write!(f, "S{n}"),
            CatalogSpace::Torus => write!(f, "T2"),
            CatalogSpace::Surface(g) => write!(f, "Sigma{g}"),
            CatalogSpace::RealProjective(n) => write!(f, "RP{n}"),
            CatalogSpace::ComplexProjective(n) => write!(f, "CP{n}"),
            CatalogSpace::EilenbergMacLaneZ2 => write!(f, "KZ2"),
        }
    }
}

impl FromStr for CatalogSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s
            .trim()
            .chars()
            .filter(|c| !matches!(c, '^' | '_'))
            .collect();
        let num = |rest: &str| -> Result<u32> {
            rest.parse::<u32>()
                .map_err(|_| Error::UnknownSpace(s.to_string()))
        };
        let space = match t.as_str() {
            "point" | "pt" => CatalogSpace::Point,
            "T2" => CatalogSpace::Torus,
            "KZ2" | "K(Z,2)" => CatalogSpace::EilenbergMacLaneZ2,
            _ if t.starts_with("Sigma") => CatalogSpace::Surface(num(&t[5..])?),
            _ if t.starts_with("RP") => CatalogSpace::RealProjective(num(&t[2..])?),
            _ if t.starts_with("CP") => CatalogSpace::ComplexProjective(num(&t[2..])?),
            _ if t.starts_with('S') => CatalogSpace::Sphere(num(&t[1..])?),
            _ => return Err(Error::UnknownSpace(s.to_string())),
        };
        space.validate()?;
        Ok(space)
    }
}

/// A cochain complex together with cup data and per-degree cohomology.
#[derive(Clone, Debug)]
pub struct CochainModel {
    pub complex: CochainComplex,
    pub cup: CupModel,
    pub cohomology: Vec<CocycleCohomology>,
}

impl CochainModel {
    pub fn new(complex: CochainComplex, cup: CupModel, through: usize) -> Self {
        let cohomology = (0..=through).map(|k| complex.cohomology(k)).collect();
        CochainModel {
            complex,
            cup,
            cohomology,
        }
    }
}

/// Integral cohomology in degrees `0..=max_degree` with named generators and
/// cup-by-degree-two maps.
#[derive(Clone, Debug)]
pub struct GradedCohomology {
    name: String,
    groups: Vec<FgGroup>,
    labels: Vec<Vec<String>>,
    /// `cup2[k][i]`: cup with the i-th generator of H², from H^k to H^(k+2).
    cup2: Vec<Vec<Option<Hom>>>,
    dimension: Option<usize>,
    simply_connected: Option<bool>,
    ambiguous: Vec<bool>,
    model: Option<Arc<CochainModel>>,
}

impl GradedCohomology {
    /// Assembles a table from explicit data. `cup2` may be shorter than the
    /// available degree range; missing entries mean no ring data.
    pub fn from_tables(
        name: impl Into<String>,
        groups: Vec<FgGroup>,
        labels: Vec<Vec<String>>,
        cup2: Vec<Vec<Option<Hom>>>,
        simply_connected: Option<bool>,
    ) -> Result<Self> {
        if groups.len() != labels.len() {
            return Err(Error::InvalidParameter(
                "group and label tables differ in length".into(),
            ));
        }
        for (k, (g, l)) in groups.iter().zip(&labels).enumerate() {
            if g.ngens() != l.len() {
                return Err(Error::InvalidParameter(format!(
                    "degree {k}: {} labels for {} generators",
                    l.len(),
                    g.ngens()
                )));
            }
        }
        let max = groups.len().saturating_sub(1);
        let h2 = groups.get(2).cloned().unwrap_or_else(FgGroup::zero);
        let mut cup = cup2;
        cup.resize(max.saturating_sub(1), Vec::new());
        for (k, row) in cup.iter_mut().enumerate() {
            row.resize(h2.ngens(), None);
            for h in row.iter().flatten() {
                if h.domain() != &groups[k] || Some(h.codomain()) != groups.get(k + 2) {
                    return Err(Error::GroupMismatch {
                        left: format!("H^{k} -> H^{}", k + 2),
                        right: format!("{} -> {}", h.domain(), h.codomain()),
                    });
                }
            }
        }
        Ok(GradedCohomology {
            name: name.into(),
            ambiguous: vec![false; groups.len()],
            groups,
            labels,
            cup2: cup,
            dimension: None,
            simply_connected,
            model: None,
        })
    }

    /// Builds the table from a cochain model, deriving cup2 at chain level.
    pub fn from_model(
        name: impl Into<String>,
        model: CochainModel,
        max_degree: usize,
        dimension: Option<usize>,
        simply_connected: Option<bool>,
    ) -> Result<Self> {
        let coh = &model.cohomology;
        if coh.len() <= max_degree {
            return Err(Error::DegreeOutOfRange(max_degree));
        }
        let groups: Vec<FgGroup> = coh[..=max_degree]
            .iter()
            .map(|h| h.group().clone())
            .collect();
        let labels: Vec<Vec<String>> = coh[..=max_degree]
            .iter()
            .map(|h| h.labels().to_vec())
            .collect();
        let mut cup2 = Vec::new();
        if max_degree >= 2 {
            let h2 = &coh[2];
            let maps: Vec<Option<ChainMap>> = (0..h2.group().ngens())
                .map(|i| {
                    let e = h2.group().generator(i);
                    model
                        .cup
                        .cup_with(&h2.representative(e.coords()), &model.complex)
                })
                .collect();
            for k in 0..=max_degree - 2 {
                let row = maps
                    .iter()
                    .map(|m| m.as_ref().and_then(|m| induced(m, &model, k).ok()))
                    .collect();
                cup2.push(row);
            }
        }
        let mut out = GradedCohomology::from_tables(name, groups, labels, cup2, simply_connected)?;
        out.dimension = dimension;
        out.model = Some(Arc::new(model));
        Ok(out)
    }

    pub(crate) fn set_ambiguous(&mut self, flags: Vec<bool>) {
        self.ambiguous = flags;
    }

    pub(crate) fn set_dimension(&mut self, dimension: Option<usize>) {
        self.dimension = dimension;
    }

    pub fn with_labels(mut self, relabel: &[(&str, &str)]) -> Self {
        for row in &mut self.labels {
            for l in row.iter_mut() {
                if let Some((_, to)) = relabel.iter().find(|(from, _)| from == l) {
                    *l = to.to_string();
                }
            }
        }
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn max_degree(&self) -> usize {
        self.groups.len().saturating_sub(1)
    }

    /// Degree above which every group is known to vanish.
    pub fn dimension(&self) -> Option<usize> {
        self.dimension
    }

    pub fn simply_connected(&self) -> Option<bool> {
        self.simply_connected
    }

    pub fn ambiguous(&self) -> &[bool] {
        &self.ambiguous
    }

    pub fn model(&self) -> Option<&CochainModel> {
        self.model.as_deref()
    }

    pub fn groups(&self) -> &[FgGroup] {
        &self.groups
    }

    /// True when H^k is stored or known to vanish.
    pub fn knows_degree(&self, k: isize) -> bool {
        k < 0 || (k as usize) <= self.max_degree() || self.dimension.is_some_and(|d| k as usize > d)
    }

    /// H^k, zero in negative degrees and above the dimension.
    pub fn group(&self, k: isize) -> Result<FgGroup> {
        if k < 0 {
            return Ok(FgGroup::zero());
        }
        match self.groups.get(k as usize) {
            Some(g) => Ok(g.clone()),
            None if self.knows_degree(k) => Ok(FgGroup::zero()),
            None => Err(Error::DegreeOutOfRange(k as usize)),
        }
    }

    pub fn labels(&self, k: usize) -> &[String] {
        self.labels.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn element(&self, k: usize, coords: &[i64]) -> Result<GroupElement> {
        self.group(k as isize)?.element_i64(coords)
    }

    /// Label of an element of H^k as a combination of generator names.
    pub fn describe(&self, k: usize, x: &GroupElement) -> String {
        combination(x.coords(), self.labels(k))
    }

    /// Index of the generator of H^k carrying `label`.
    pub fn generator_index(&self, k: usize, label: &str) -> Option<usize> {
        self.labels(k).iter().position(|l| l == label)
    }

    pub fn generator_named(&self, k: usize, label: &str) -> Option<GroupElement> {
        let i = self.generator_index(k, label)?;
        Some(self.groups[k].generator(i))
    }

    /// Cup with the i-th generator of H², from H^k.
    pub fn cup2_generator(&self, k: usize, i: usize) -> Option<&Hom> {
        self.cup2
            .get(k)
            .and_then(|row| row.get(i))
            .and_then(Option::as_ref)
    }

    /// Cup with `e` in H², from H^k to H^(k+2).
    pub fn cup_by(&self, e: &GroupElement, k: isize) -> Result<Hom> {
        let h2 = self.group(2)?;
        if e.group() != &h2 {
            return Err(Error::GroupMismatch {
                left: h2.to_string(),
                right: e.group().to_string(),
            });
        }
        let dom = self.group(k)?;
        let cod = self.group(k + 2)?;
        let mut out = Hom::zero(&dom, &cod);
        if dom.is_zero() || cod.is_zero() || e.is_zero() {
            return Ok(out);
        }
        for (i, c) in e.coords().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let h = self.cup2_generator(k as usize, i).ok_or_else(|| {
                Error::MissingCupData(format!(
                    "{}: cup with {} from degree {k}",
                    self.name,
                    self.labels(2).get(i).map_or("?", String::as_str)
                ))
            })?;
            out = out.add(&h.scale(c))?;
        }
        Ok(out)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.groups.iter().map(FgGroup::free_rank).collect()
    }

    /// Alternating sum of ranks over the stored degrees.
    pub fn euler_characteristic(&self) -> i64 {
        self.ranks()
            .iter()
            .enumerate()
            .map(|(k, &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum()
    }
}

// Map on cohomology induced by a chain-level cup map, from degree k.
fn induced(map: &ChainMap, model: &CochainModel, k: usize) -> Result<Hom> {
    let src = &model.cohomology[k];
    let dst = &model.cohomology[k + 2];
    let m = map.at(k as isize, &model.complex);
    let cols: Vec<Vec<BigInt>> = (0..src.group().ngens())
        .map(|g| {
            let rep = src.representative(src.group().generator(g).coords());
            dst.class_of(&m.mul_vec(&rep))
                .ok_or_else(|| Error::Exactness("cup map does not preserve cocycles".into()))
        })
        .collect::<Result<_>>()?;
    Hom::new(
        src.group().clone(),
        dst.group().clone(),
        IntMatrix::from_columns(dst.group().ngens(), &cols),
    )
}

/// Standard integral cohomology of a catalog space through `max_degree`.
pub fn cohomology_of(space: CatalogSpace, max_degree: usize) -> Result<GradedCohomology> {
    if max_degree > MAX_DEGREE {
        return Err(Error::DegreeOverflow {
            requested: max_degree,
            max: MAX_DEGREE,
        });
    }
    space.validate()?;
    let (complex, cup) = space.model(max_degree + 1);
    let model = CochainModel::new(complex, cup, max_degree + 1);
    GradedCohomology::from_model(
        space.to_string(),
        model,
        max_degree,
        space.dimension(),
        Some(space.is_simply_connected()),
    )
}

/// Cohomology of `w x S^1`: the trivial circle bundle over `w`.
pub fn kunneth_with_circle(w: &GradedCohomology) -> Result<GradedCohomology> {
    let base = Arc::new(w.clone());
    let zero = w.group(2)?.zero_element();
    let bundle = crate::gysin::CircleBundle::new(base, zero)?;
    let top = match w.dimension() {
        Some(d) if d <= w.max_degree() => w.max_degree().max(d + 1),
        _ => w.max_degree(),
    };
    let total = crate::gysin::total_space_cohomology(&bundle, top)?;
    let mut g = total.as_graded()?;
    g.name = format!("{}xS1", w.name());
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(g: &GradedCohomology) -> Vec<String> {
        g.groups().iter().map(ToString::to_string).collect()
    }

    #[test]
    fn parse_names() {
        assert_eq!(
            "S2".parse::<CatalogSpace>().unwrap(),
            CatalogSpace::Sphere(2)
        );
        assert_eq!(
            "RP^3".parse::<CatalogSpace>().unwrap(),
            CatalogSpace::RealProjective(3)
        );
        assert_eq!(
            "Sigma_3".parse::<CatalogSpace>().unwrap(),
            CatalogSpace::Surface(3)
        );
        assert_eq!(
            "CP2".parse::<CatalogSpace>().unwrap(),
            CatalogSpace::ComplexProjective(2)
        );
        assert!("S9".parse::<CatalogSpace>().is_err());
        assert!("Klein".parse::<CatalogSpace>().is_err());
        for s in ["point", "S3", "T2", "Sigma2", "RP5", "CP3", "KZ2"] {
            assert_eq!(s.parse::<CatalogSpace>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn sphere_table() {
        let g = cohomology_of(CatalogSpace::Sphere(2), 3).unwrap();
        assert_eq!(table(&g), ["Z", "0", "Z", "0"]);
    }

    #[test]
    fn cp2_ring() {
        let g = cohomology_of(CatalogSpace::ComplexProjective(2), 5).unwrap();
        assert_eq!(table(&g), ["Z", "0", "Z", "0", "Z", "0"]);
        let cup = g.cup2_generator(2, 0).unwrap();
        assert_eq!(cup.matrix(), &IntMatrix::from_i64(1, 1, &[1]));
        assert_eq!(g.labels(4), ["w^2"]);
    }

    #[test]
    fn rp3_table() {
        let g = cohomology_of(CatalogSpace::RealProjective(3), 4).unwrap();
        assert_eq!(table(&g), ["Z", "0", "Z/2", "Z", "0"]);
        assert_eq!(g.labels(2), ["alpha"]);
        assert_eq!(g.labels(3), ["vol"]);
    }

    #[test]
    fn rp_even_powers() {
        let g = cohomology_of(CatalogSpace::RealProjective(4), 5).unwrap();
        assert_eq!(table(&g), ["Z", "0", "Z/2", "0", "Z/2", "0"]);
        let cup = g.cup2_generator(2, 0).unwrap();
        assert_eq!(cup.matrix(), &IntMatrix::from_i64(1, 1, &[1]));
        assert_eq!(g.labels(4), ["alpha^2"]);
    }

    #[test]
    fn surfaces() {
        let g = cohomology_of(CatalogSpace::Surface(3), 3).unwrap();
        assert_eq!(table(&g), ["Z", "Z^6", "Z", "0"]);
        assert_eq!(g.labels(1)[0], "a1");
        let t = cohomology_of(CatalogSpace::Torus, 3).unwrap();
        assert_eq!(t.labels(1), ["a", "b"]);
        assert!(t.cup2_generator(1, 0).unwrap().is_zero());
    }

    #[test]
    fn degree_limits() {
        assert!(matches!(
            cohomology_of(CatalogSpace::Sphere(2), 9),
            Err(Error::DegreeOverflow { .. })
        ));
        let g = cohomology_of(CatalogSpace::EilenbergMacLaneZ2, 6).unwrap();
        assert_eq!(table(&g), ["Z", "0", "Z", "0", "Z", "0", "Z"]);
        assert!(!g.knows_degree(7));
    }

    #[test]
    fn product_with_circle() {
        let t = cohomology_of(CatalogSpace::Torus, 2).unwrap();
        let p = kunneth_with_circle(&t).unwrap();
        assert_eq!(table(&p), ["Z", "Z^3", "Z^3", "Z"]);
        let pt = kunneth_with_circle(&cohomology_of(CatalogSpace::Point, 0).unwrap()).unwrap();
        assert_eq!(table(&pt), ["Z", "Z"]);
        assert_eq!(pt.labels(1), ["z"]);
    }
}
