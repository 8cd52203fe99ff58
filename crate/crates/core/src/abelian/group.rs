use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::lattice::Lattice;
use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

/// A finitely generated abelian group `Z^r + Z/d1 + ... + Z/dk` with
/// `2 <= d1 | d2 | ... | dk`.
///
/// Canonical generators are ordered free first, then torsion ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FgGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgGroup {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        for (i, d) in torsion.iter().enumerate() {
            if *d < BigInt::from(2) {
                return Err(Error::InvalidGroup(format!(
                    "torsion factor {d} is below 2"
                )));
            }
            if i + 1 < torsion.len() && !torsion[i + 1].is_multiple_of(d) {
                return Err(Error::InvalidGroup(format!(
                    "torsion factors {d} and {} break the divisibility chain",
                    torsion[i + 1]
                )));
            }
        }
        Ok(FgGroup { free_rank, torsion })
    }

    pub fn zero() -> Self {
        FgGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FgGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(n: impl Into<BigInt>) -> Self {
        Self::from_factors(0, &[n.into()])
    }

    /// Normalizes an arbitrary list of cyclic orders (0 meaning Z, 1 meaning
    /// trivial) into invariant-factor form.
    pub fn from_factors(free_rank: usize, factors: &[BigInt]) -> Self {
        let diag: Vec<BigInt> = factors.iter().map(Signed::abs).collect();
        let s = smith_normal_form(&IntMatrix::diagonal(&diag));
        let mut free = free_rank + (factors.len() - s.rank);
        let mut torsion = Vec::new();
        for d in s.invariant_factors() {
            if d.is_zero() {
                free += 1;
            } else if !d.is_one() {
                torsion.push(d);
            }
        }
        FgGroup {
            free_rank: free,
            torsion,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Number of canonical generators.
    pub fn ngens(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn is_zero(&self) -> bool {
        self.ngens() == 0
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Order of the i-th canonical generator; zero stands for infinite.
    pub fn generator_order(&self, i: usize) -> BigInt {
        if i < self.free_rank {
            BigInt::zero()
        } else {
            self.torsion[i - self.free_rank].clone()
        }
    }

    /// Relation matrix on canonical generators (one column per torsion factor).
    pub fn relations(&self) -> IntMatrix {
        let mut r = IntMatrix::zeros(self.ngens(), self.torsion.len());
        for (j, d) in self.torsion.iter().enumerate() {
            r[(self.free_rank + j, j)] = d.clone();
        }
        r
    }

    pub fn relation_lattice(&self) -> Lattice {
        Lattice::from_columns(&self.relations())
    }

    /// Reduces torsion coordinates into `[0, d)`.
    pub fn reduce(&self, coords: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(coords.len(), self.ngens(), "coordinate length mismatch");
        coords
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i < self.free_rank {
                    c.clone()
                } else {
                    c.mod_floor(&self.torsion[i - self.free_rank])
                }
            })
            .collect()
    }

    pub fn element(&self, coords: Vec<BigInt>) -> Result<GroupElement> {
        if coords.len() != self.ngens() {
            return Err(Error::CoordinateLength {
                expected: self.ngens(),
                got: coords.len(),
            });
        }
        Ok(GroupElement {
            coords: self.reduce(&coords),
            group: self.clone(),
        })
    }

    pub fn element_i64(&self, coords: &[i64]) -> Result<GroupElement> {
        self.element(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero_element(&self) -> GroupElement {
        GroupElement {
            coords: vec![BigInt::zero(); self.ngens()],
            group: self.clone(),
        }
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut coords = vec![BigInt::zero(); self.ngens()];
        coords[i] = BigInt::one();
        GroupElement {
            coords: self.reduce(&coords),
            group: self.clone(),
        }
    }

    /// All elements of a finite group, in lexicographic coordinate order.
    /// Returns `None` for infinite groups or when the order exceeds `limit`.
    pub fn elements(&self, limit: u64) -> Option<Vec<GroupElement>> {
        let order = self.order()?.to_u64()?;
        if order > limit {
            return None;
        }
        let mut out = Vec::with_capacity(order as usize);
        let mut coords = vec![BigInt::zero(); self.ngens()];
        loop {
            out.push(GroupElement {
                coords: coords.clone(),
                group: self.clone(),
            });
            let mut i = self.ngens();
            loop {
                if i == 0 {
                    return Some(out);
                }
                i -= 1;
                coords[i] += 1;
                if coords[i] < self.torsion[i] {
                    break;
                }
                coords[i] = BigInt::zero();
            }
        }
    }
}

impl fmt::Display for FgGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// Order of a group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementOrder {
    Finite(BigInt),
    Infinite,
}

/// An element of an `FgGroup` in canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group: FgGroup,
    coords: Vec<BigInt>,
}

impl GroupElement {
    pub fn group(&self) -> &FgGroup {
        &self.group
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn free_coords(&self) -> &[BigInt] {
        &self.coords[..self.group.free_rank]
    }

    pub fn torsion_coords(&self) -> &[BigInt] {
        &self.coords[self.group.free_rank..]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.group != other.group {
            return Err(Error::GroupMismatch {
                left: self.group.to_string(),
                right: other.group.to_string(),
            });
        }
        let sum: Vec<BigInt> = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        self.group.element(sum)
    }

    pub fn neg(&self) -> GroupElement {
        let neg: Vec<BigInt> = self.coords.iter().map(|a| -a).collect();
        GroupElement {
            coords: self.group.reduce(&neg),
            group: self.group.clone(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> GroupElement {
        let v: Vec<BigInt> = self.coords.iter().map(|a| a * k).collect();
        GroupElement {
            coords: self.group.reduce(&v),
            group: self.group.clone(),
        }
    }

    pub fn order(&self) -> ElementOrder {
        element_order(self)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Least `n >= 1` with `n x = 0`, or infinite.
pub fn element_order(x: &GroupElement) -> ElementOrder {
    if x.free_coords().iter().any(|c| !c.is_zero()) {
        return ElementOrder::Infinite;
    }
    let mut n = BigInt::one();
    for (c, d) in x.torsion_coords().iter().zip(x.group.torsion()) {
        let ord = d / c.gcd(d);
        n = n.lcm(&ord);
    }
    ElementOrder::Finite(n)
}

/// A quotient `Z^n / L` brought into canonical form.
///
/// `proj` (canonical gens x n) sends old coordinates to canonical ones;
/// torsion rows are meant modulo their factor. `section` (n x canonical gens)
/// picks a representative for every canonical generator.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub group: FgGroup,
    pub proj: IntMatrix,
    pub section: IntMatrix,
}

impl Presentation {
    /// Canonical coordinates of an old vector.
    pub fn project(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.group.reduce(&self.proj.mul_vec(v))
    }

    pub fn lift(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.section.mul_vec(coords)
    }

    /// Flips generator signs so each section column starts with a positive
    /// entry. Purely cosmetic, keeps `proj` consistent.
    fn normalize_signs(&mut self) {
        for g in 0..self.group.ngens() {
            let first = self.section.column(g).into_iter().find(|x| !x.is_zero());
            if first.is_some_and(|x| x.is_negative()) {
                self.section.negate_col(g);
                self.proj.negate_row(g);
            }
        }
        for g in self.group.free_rank..self.group.ngens() {
            let d = self.group.torsion[g - self.group.free_rank].clone();
            for j in 0..self.proj.cols() {
                let v = self.proj[(g, j)].mod_floor(&d);
                self.proj[(g, j)] = v;
            }
        }
    }
}

/// Canonical form of `Z^n / (column span of relations)`.
pub fn present(n: usize, relations: &IntMatrix) -> Presentation {
    assert_eq!(relations.rows(), n, "relation matrix has wrong height");
    let lattice = Lattice::from_columns(relations);
    let mut p = if lattice.has_unit_pivots() {
        present_unit_pivots(n, &lattice)
    } else {
        present_smith(n, relations)
    };
    p.normalize_signs();
    p
}

// Quotient free on the non-pivot coordinates: representatives stay readable.
fn present_unit_pivots(n: usize, lattice: &Lattice) -> Presentation {
    let pivots = lattice.pivots();
    let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    let mut proj = IntMatrix::zeros(free.len(), n);
    for j in 0..n {
        let mut e = vec![BigInt::zero(); n];
        e[j] = BigInt::one();
        let r = lattice.reduce(&e);
        for (g, &fj) in free.iter().enumerate() {
            proj[(g, j)] = r[fj].clone();
        }
    }
    let mut section = IntMatrix::zeros(n, free.len());
    for (g, &fj) in free.iter().enumerate() {
        section[(fj, g)] = BigInt::one();
    }
    Presentation {
        group: FgGroup::free(free.len()),
        proj,
        section,
    }
}

fn present_smith(n: usize, relations: &IntMatrix) -> Presentation {
    let s = smith_normal_form(relations);
    let factors = s.invariant_factors();
    let mut torsion_idx = Vec::new();
    let mut torsion = Vec::new();
    for (i, d) in factors.iter().enumerate() {
        if !d.is_one() {
            torsion_idx.push(i);
            torsion.push(d.clone());
        }
    }
    let free_idx: Vec<usize> = (s.rank..n).collect();
    let order: Vec<usize> = free_idx.iter().chain(&torsion_idx).copied().collect();
    let group = FgGroup {
        free_rank: free_idx.len(),
        torsion,
    };
    Presentation {
        proj: s.u.select_rows(&order),
        section: s.u_inv.select_cols(&order),
        group,
    }
}
