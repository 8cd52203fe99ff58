use num_bigint::BigInt;
use num_integer::Integer;

use super::group::{present, FgGroup, GroupElement};
use super::lattice::Lattice;
use super::matrix::IntMatrix;
use super::snf::{kernel_basis, solve};
use crate::error::{Error, Result};

/// A homomorphism between canonical groups, acting on coordinate columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hom {
    domain: FgGroup,
    codomain: FgGroup,
    matrix: IntMatrix,
}

impl Hom {
    /// Checks shape and well-definedness, then reduces torsion rows.
    pub fn new(domain: FgGroup, codomain: FgGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != codomain.ngens() || matrix.cols() != domain.ngens() {
            return Err(Error::MatrixShape {
                expected: (codomain.ngens(), domain.ngens()),
                got: (matrix.rows(), matrix.cols()),
            });
        }
        let rel = codomain.relation_lattice();
        for j in domain.free_rank()..domain.ngens() {
            let d = domain.generator_order(j);
            let image: Vec<BigInt> = matrix.column(j).iter().map(|x| x * &d).collect();
            if !rel.contains(&image) {
                return Err(Error::IllDefinedHom(format!(
                    "generator {j} of order {d} in {domain} does not map to an element of order dividing {d} in {codomain}"
                )));
            }
        }
        let mut matrix = matrix;
        for i in codomain.free_rank()..codomain.ngens() {
            let d = codomain.generator_order(i);
            for j in 0..matrix.cols() {
                let v = matrix[(i, j)].mod_floor(&d);
                matrix[(i, j)] = v;
            }
        }
        Ok(Hom {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn from_i64(domain: &FgGroup, codomain: &FgGroup, rows: &[Vec<i64>]) -> Result<Self> {
        let m = if rows.is_empty() {
            IntMatrix::zeros(0, domain.ngens())
        } else {
            IntMatrix::from_rows(rows)
        };
        Hom::new(domain.clone(), codomain.clone(), m)
    }

    pub fn zero(domain: &FgGroup, codomain: &FgGroup) -> Self {
        Hom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: IntMatrix::zeros(codomain.ngens(), domain.ngens()),
        }
    }

    pub fn identity(g: &FgGroup) -> Self {
        Hom {
            domain: g.clone(),
            codomain: g.clone(),
            matrix: IntMatrix::identity(g.ngens()),
        }
    }

    /// The map `Z -> g` sending 1 to `x`.
    pub fn from_element(x: &GroupElement) -> Self {
        Hom {
            domain: FgGroup::free(1),
            codomain: x.group().clone(),
            matrix: IntMatrix::from_columns(x.group().ngens(), &[x.coords().to_vec()]),
        }
    }

    pub fn domain(&self) -> &FgGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FgGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement> {
        if x.group() != &self.domain {
            return Err(Error::GroupMismatch {
                left: self.domain.to_string(),
                right: x.group().to_string(),
            });
        }
        self.codomain.element(self.matrix.mul_vec(x.coords()))
    }

    pub fn apply_coords(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.codomain.reduce(&self.matrix.mul_vec(coords))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Hom) -> Result<Hom> {
        if self.codomain != other.domain {
            return Err(Error::GroupMismatch {
                left: self.codomain.to_string(),
                right: other.domain.to_string(),
            });
        }
        Hom::new(
            self.domain.clone(),
            other.codomain.clone(),
            other.matrix.mul(&self.matrix),
        )
    }

    pub fn add(&self, other: &Hom) -> Result<Hom> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::GroupMismatch {
                left: format!("{} -> {}", self.domain, self.codomain),
                right: format!("{} -> {}", other.domain, other.codomain),
            });
        }
        Hom::new(
            self.domain.clone(),
            self.codomain.clone(),
            self.matrix.add(&other.matrix),
        )
    }

    pub fn scale(&self, k: &BigInt) -> Hom {
        Hom::new(
            self.domain.clone(),
            self.codomain.clone(),
            self.matrix.scale(k),
        )
        .expect("multiples of a well-defined map are well-defined")
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    // [matrix | codomain relations]
    fn augmented(&self) -> IntMatrix {
        self.matrix.hcat(&self.codomain.relations())
    }

    /// Lattice in codomain coordinates spanned by the image and the relations.
    pub fn image_lattice(&self) -> Lattice {
        Lattice::from_columns(&self.augmented())
    }

    /// Lattice in domain coordinates of vectors mapping to zero (contains
    /// the domain relations).
    pub fn kernel_lattice(&self) -> Lattice {
        let k = kernel_basis(&self.augmented());
        let top: Vec<usize> = (0..self.domain.ngens()).collect();
        Lattice::from_columns(&k.select_rows(&top))
    }

    /// The kernel as a canonical group with its embedding into the domain.
    pub fn kernel(&self) -> (FgGroup, Hom) {
        embed_sublattice(&self.domain, &self.kernel_lattice())
    }

    /// The image as a canonical group with its embedding into the codomain.
    pub fn image(&self) -> (FgGroup, Hom) {
        embed_sublattice(&self.codomain, &self.image_lattice())
    }

    /// The cokernel as a canonical group with the projection from the codomain.
    pub fn cokernel(&self) -> (FgGroup, Hom) {
        let p = present(self.codomain.ngens(), &self.augmented());
        let proj = Hom::new(self.codomain.clone(), p.group.clone(), p.proj)
            .expect("quotient projection is well-defined");
        (p.group, proj)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_zero()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Some `x` with `self(x) = y`, reduced in the domain.
    pub fn preimage(&self, y: &GroupElement) -> Result<Option<GroupElement>> {
        if y.group() != &self.codomain {
            return Err(Error::GroupMismatch {
                left: self.codomain.to_string(),
                right: y.group().to_string(),
            });
        }
        let sol = solve(&self.augmented(), y.coords());
        Ok(sol.map(|s| {
            let x = s[..self.domain.ngens()].to_vec();
            self.domain.element(x).expect("length matches domain")
        }))
    }

    /// Inverse map when `self` is an isomorphism.
    pub fn inverse(&self) -> Option<Hom> {
        if !self.is_isomorphism() {
            return None;
        }
        let cols: Vec<Vec<BigInt>> = (0..self.codomain.ngens())
            .map(|i| {
                let g = self.codomain.generator(i);
                self.preimage(&g)
                    .ok()
                    .flatten()
                    .expect("isomorphism is surjective")
                    .coords()
                    .to_vec()
            })
            .collect();
        Hom::new(
            self.codomain.clone(),
            self.domain.clone(),
            IntMatrix::from_columns(self.domain.ngens(), &cols),
        )
        .ok()
    }
}

/// Realizes `lattice / relations(ambient)` as a canonical group and embeds it.
pub fn embed_sublattice(ambient: &FgGroup, lattice: &Lattice) -> (FgGroup, Hom) {
    let basis = lattice.basis_rows().transpose();
    let rel = ambient.relations();
    let r = basis.cols();
    let mut rel_coords = IntMatrix::zeros(r, rel.cols());
    for j in 0..rel.cols() {
        let c = solve(&basis, &rel.column(j)).expect("relations lie in the sublattice");
        for (i, v) in c.into_iter().enumerate() {
            rel_coords[(i, j)] = v;
        }
    }
    let p = present(r, &rel_coords);
    let incl = Hom::new(p.group.clone(), ambient.clone(), basis.mul(&p.section))
        .expect("sublattice embedding is well-defined");
    (p.group, incl)
}

/// True iff `image(f) = kernel(g)` inside the middle group.
pub fn is_exact_at(f: &Hom, g: &Hom) -> Result<bool> {
    if f.codomain() != g.domain() {
        return Err(Error::GroupMismatch {
            left: f.codomain().to_string(),
            right: g.domain().to_string(),
        });
    }
    Ok(f.image_lattice() == g.kernel_lattice())
}

/// A subgroup of a canonical group, stored as a lattice of coordinates that
/// contains the ambient relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    ambient: FgGroup,
    lattice: Lattice,
}

impl Subgroup {
    pub fn generated_by(ambient: &FgGroup, gens: &[GroupElement]) -> Result<Self> {
        for g in gens {
            if g.group() != ambient {
                return Err(Error::GroupMismatch {
                    left: ambient.to_string(),
                    right: g.group().to_string(),
                });
            }
        }
        let cols: Vec<Vec<BigInt>> = gens.iter().map(|g| g.coords().to_vec()).collect();
        let m = IntMatrix::from_columns(ambient.ngens(), &cols).hcat(&ambient.relations());
        Ok(Subgroup {
            ambient: ambient.clone(),
            lattice: Lattice::from_columns(&m),
        })
    }

    pub fn image_of(h: &Hom) -> Self {
        Subgroup {
            ambient: h.codomain().clone(),
            lattice: h.image_lattice(),
        }
    }

    pub fn kernel_of(h: &Hom) -> Self {
        Subgroup {
            ambient: h.domain().clone(),
            lattice: h.kernel_lattice(),
        }
    }

    pub fn ambient(&self) -> &FgGroup {
        &self.ambient
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.group() == &self.ambient && self.lattice.contains(x.coords())
    }

    /// Canonical group with its embedding.
    pub fn as_group(&self) -> (FgGroup, Hom) {
        embed_sublattice(&self.ambient, &self.lattice)
    }

    /// Canonical representative of `x + self`.
    pub fn reduce(&self, x: &GroupElement) -> GroupElement {
        let r = self.lattice.reduce(x.coords());
        self.ambient.element(r).expect("length preserved")
    }

    /// The quotient `ambient / self` with its projection.
    pub fn quotient(&self) -> (FgGroup, Hom) {
        let basis = self.lattice.basis_rows().transpose();
        let p = present(self.ambient.ngens(), &basis);
        let proj = Hom::new(self.ambient.clone(), p.group.clone(), p.proj)
            .expect("quotient projection is well-defined");
        (p.group, proj)
    }

    /// Generators of the subgroup as elements of the ambient group.
    pub fn generators(&self) -> Vec<GroupElement> {
        let (_, incl) = self.as_group();
        (0..incl.domain().ngens())
            .map(|i| {
                let col = incl.matrix().column(i);
                self.ambient.element(col).expect("length matches")
            })
            .collect()
    }
}

/// Canonical direct sum with injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub group: FgGroup,
    pub injections: Vec<Hom>,
    pub projections: Vec<Hom>,
    /// Section matrix: canonical generators in concatenated summand coordinates.
    pub section: IntMatrix,
}

pub fn direct_sum(parts: &[FgGroup]) -> DirectSum {
    let mut rel = IntMatrix::zeros(0, 0);
    for g in parts {
        rel = rel.block_diag(&g.relations());
    }
    let n = rel.rows();
    let p = present(n, &rel);
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut offset = 0;
    for g in parts {
        let idx: Vec<usize> = (offset..offset + g.ngens()).collect();
        injections.push(
            Hom::new(g.clone(), p.group.clone(), p.proj.select_cols(&idx))
                .expect("summand injection is well-defined"),
        );
        projections.push(
            Hom::new(p.group.clone(), g.clone(), p.section.select_rows(&idx))
                .expect("summand projection is well-defined"),
        );
        offset += g.ngens();
    }
    DirectSum {
        group: p.group,
        injections,
        projections,
        section: p.section,
    }
}

/// Ext(k, c) vanishes exactly when no torsion order of `k` meets `c`.
pub fn ext_vanishes(k: &FgGroup, c: &FgGroup) -> bool {
    k.torsion()
        .iter()
        .all(|d| c.free_rank() == 0 && c.torsion().iter().all(|e| d.gcd(e) == BigInt::from(1)))
}
