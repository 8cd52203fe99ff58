//! Finite cochain complexes, their cohomology, and chain-level cup maps.

use num_bigint::BigInt;

use crate::abelian::{kernel_basis, present, solve, FgGroup, IntMatrix, Lattice, Presentation};
use crate::error::{Error, Result};
use crate::labels::{combination, suffixed};

/// Cochain complex with one free module per degree `0..=top`; zero above.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    cells: Vec<Vec<String>>,
    diffs: Vec<IntMatrix>,
}

impl CochainComplex {
    /// `diffs[k]` maps degree `k` to degree `k + 1`; the top map may be omitted.
    pub fn new(cells: Vec<Vec<String>>, diffs: Vec<IntMatrix>) -> Result<Self> {
        let dims: Vec<usize> = cells.iter().map(Vec::len).collect();
        let top = dims.len();
        let mut full = Vec::with_capacity(top);
        for k in 0..top {
            let target = dims.get(k + 1).copied().unwrap_or(0);
            let d = match diffs.get(k) {
                Some(d) => d.clone(),
                None => IntMatrix::zeros(target, dims[k]),
            };
            if d.rows() != target || d.cols() != dims[k] {
                return Err(Error::MatrixShape {
                    expected: (target, dims[k]),
                    got: (d.rows(), d.cols()),
                });
            }
            full.push(d);
        }
        for k in 1..top {
            if !full[k].mul(&full[k - 1]).is_zero() {
                return Err(Error::Exactness(format!(
                    "d∘d is nonzero in degree {}",
                    k - 1
                )));
            }
        }
        Ok(CochainComplex { cells, diffs: full })
    }

    /// Highest degree carrying cells, plus one (so an empty complex is 0).
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn dim(&self, k: isize) -> usize {
        if k < 0 {
            return 0;
        }
        self.cells.get(k as usize).map_or(0, Vec::len)
    }

    pub fn cells(&self, k: usize) -> &[String] {
        self.cells.get(k).map_or(&[], Vec::as_slice)
    }

    /// Differential from degree `k` to `k + 1`.
    pub fn diff(&self, k: isize) -> IntMatrix {
        if k >= 0 {
            if let Some(d) = self.diffs.get(k as usize) {
                return d.clone();
            }
        }
        IntMatrix::zeros(self.dim(k + 1), self.dim(k))
    }

    pub fn cohomology(&self, k: usize) -> CocycleCohomology {
        let z = kernel_basis(&self.diff(k as isize));
        let basis = Lattice::from_columns(&z).basis_rows().transpose();
        let incoming = self.diff(k as isize - 1);
        let r = basis.cols();
        let mut rel = IntMatrix::zeros(r, incoming.cols());
        for j in 0..incoming.cols() {
            let c = solve(&basis, &incoming.column(j)).expect("coboundaries are cocycles");
            for (i, v) in c.into_iter().enumerate() {
                rel[(i, j)] = v;
            }
        }
        let pres = present(r, &rel);
        let labels = (0..pres.group.ngens())
            .map(|g| {
                let rep = basis.mul_vec(&pres.section.column(g));
                combination(&rep, self.cells(k))
            })
            .collect();
        CocycleCohomology {
            cocycle_basis: basis,
            pres,
            labels,
        }
    }

    /// Mapping cone of a degree-two chain map: the cochain model of the total
    /// space of a circle bundle whose Euler cocycle induces `euler`.
    ///
    /// Degree `k` is `C^k + C^(k-1)` with `d(x, y) = (dx + e y, -dy)`.
    pub fn circle_bundle_cone(&self, euler: &ChainMap) -> CochainComplex {
        let top = self.len() + 1;
        let mut cells = Vec::with_capacity(top);
        for k in 0..top as isize {
            let mut c: Vec<String> = self
                .cells(k as usize)
                .iter()
                .map(|l| suffixed(l, "x1"))
                .collect();
            if k >= 1 {
                c.extend(self.cells(k as usize - 1).iter().map(|l| suffixed(l, "xz")));
            }
            cells.push(c);
        }
        let mut diffs = Vec::with_capacity(top);
        for k in 0..top as isize {
            let dx = self.diff(k);
            let e = euler.at(k - 1, self);
            let dy = self.diff(k - 1).scale(&BigInt::from(-1));
            let upper = dx.hcat(&e);
            let lower = IntMatrix::zeros(dy.rows(), dx.cols()).hcat(&dy);
            diffs.push(upper.vcat(&lower));
        }
        CochainComplex::new(cells, diffs).expect("mapping cone of a chain map is a complex")
    }
}

/// Cohomology of one degree: cocycle basis plus a canonical quotient.
#[derive(Clone, Debug)]
pub struct CocycleCohomology {
    cocycle_basis: IntMatrix,
    pres: Presentation,
    labels: Vec<String>,
}

impl CocycleCohomology {
    pub fn group(&self) -> &FgGroup {
        &self.pres.group
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Canonical coordinates of the class of a cocycle, `None` if the vector
    /// is not a cocycle.
    pub fn class_of(&self, cocycle: &[BigInt]) -> Option<Vec<BigInt>> {
        if self.cocycle_basis.cols() == 0 {
            return cocycle
                .iter()
                .all(|x| x.sign() == num_bigint::Sign::NoSign)
                .then(Vec::new);
        }
        let t = solve(&self.cocycle_basis, cocycle)?;
        Some(self.pres.project(&t))
    }

    /// A cocycle representing the class with the given canonical coordinates.
    pub fn representative(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.cocycle_basis.mul_vec(&self.pres.lift(coords))
    }
}

/// A family of maps `C^k -> C^(k+2)`, one per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    maps: Vec<IntMatrix>,
}

impl ChainMap {
    pub fn new(maps: Vec<IntMatrix>) -> Self {
        ChainMap { maps }
    }

    pub fn zero() -> Self {
        ChainMap { maps: Vec::new() }
    }

    /// Component in degree `k`, zero where nothing is stored.
    pub fn at(&self, k: isize, c: &CochainComplex) -> IntMatrix {
        let shape = (c.dim(k + 2), c.dim(k));
        if k >= 0 {
            if let Some(m) = self.maps.get(k as usize) {
                if (m.rows(), m.cols()) == shape {
                    return m.clone();
                }
            }
        }
        IntMatrix::zeros(shape.0, shape.1)
    }

    pub fn is_chain_map(&self, c: &CochainComplex) -> bool {
        (0..c.len() as isize).all(|k| {
            let lhs = c.diff(k + 2).mul(&self.at(k, c));
            let rhs = self.at(k + 1, c).mul(&c.diff(k));
            lhs == rhs
        })
    }

    pub fn commutes_with(&self, other: &ChainMap, c: &CochainComplex) -> bool {
        (0..c.len() as isize).all(|k| {
            self.at(k + 2, c).mul(&other.at(k, c)) == other.at(k + 2, c).mul(&self.at(k, c))
        })
    }

    fn add_scaled(&self, other: &ChainMap, k: &BigInt, c: &CochainComplex) -> ChainMap {
        let maps = (0..c.len() as isize)
            .map(|d| self.at(d, c).add(&other.at(d, c).scale(k)))
            .collect();
        ChainMap { maps }
    }

    /// The map `(x, y) -> (f x, f y)` on a circle-bundle cone.
    pub fn on_cone(&self, c: &CochainComplex, cone: &CochainComplex) -> ChainMap {
        let maps = (0..cone.len() as isize)
            .map(|k| self.at(k, c).block_diag(&self.at(k - 1, c)))
            .collect();
        ChainMap { maps }
    }
}

/// Chain-level cup products with a spanning set of degree-two cocycles.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CupModel {
    cocycles: Vec<Vec<BigInt>>,
    maps: Vec<ChainMap>,
}

impl CupModel {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, cocycle: Vec<BigInt>, map: ChainMap) -> Self {
        self.cocycles.push(cocycle);
        self.maps.push(map);
        self
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<BigInt>, &ChainMap)> {
        self.cocycles.iter().zip(&self.maps)
    }

    /// Cup map for an arbitrary degree-two cocycle, obtained by writing it as
    /// a combination of the stored cocycles plus a coboundary.
    pub fn cup_with(&self, cocycle: &[BigInt], c: &CochainComplex) -> Option<ChainMap> {
        let n = c.dim(2);
        let mut m = IntMatrix::from_columns(n, &self.cocycles);
        m = m.hcat(&c.diff(1));
        let sol = solve(&m, cocycle)?;
        let mut out = ChainMap::zero();
        for (j, map) in self.maps.iter().enumerate() {
            out = out.add_scaled(map, &sol[j], c);
        }
        Some(out)
    }
}
