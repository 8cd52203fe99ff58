use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// A sublattice of Z^n stored by its reduced row Hermite normal form.
///
/// Two lattices are equal exactly when their stored bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    ambient: usize,
    basis: IntMatrix,
    pivots: Vec<usize>,
}

impl Lattice {
    pub fn zero(ambient: usize) -> Self {
        Lattice {
            ambient,
            basis: IntMatrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    /// Lattice spanned by the columns of `gens`.
    pub fn from_columns(gens: &IntMatrix) -> Self {
        Self::from_rows(&gens.transpose())
    }

    /// Lattice spanned by the rows of `gens`.
    pub fn from_rows(gens: &IntMatrix) -> Self {
        let (basis, pivots) = hermite_rows(gens);
        Lattice {
            ambient: gens.cols(),
            basis,
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    /// Basis vectors as rows, in echelon order.
    pub fn basis_rows(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn join(&self, other: &Lattice) -> Lattice {
        Lattice::from_rows(&self.basis.vcat(&other.basis))
    }

    /// Canonical representative of the coset `v + self`.
    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        let mut out = v.to_vec();
        for (r, &p) in self.pivots.iter().enumerate() {
            let q = out[p].div_floor(&self.basis[(r, p)]);
            if q.is_zero() {
                continue;
            }
            for (j, x) in out.iter_mut().enumerate().skip(p) {
                *x -= &self.basis[(r, j)] * &q;
            }
        }
        out
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        (0..other.rank()).all(|i| self.contains(&other.basis.row(i)))
    }

    /// True when every pivot entry is 1, so the quotient is free on the
    /// non-pivot coordinates.
    pub fn has_unit_pivots(&self) -> bool {
        self.pivots
            .iter()
            .enumerate()
            .all(|(r, &p)| self.basis[(r, p)].is_one())
    }
}

/// Reduced row echelon form over Z: positive pivots, entries above each pivot
/// in `[0, pivot)`, zero rows dropped.
pub fn hermite_rows(m: &IntMatrix) -> (IntMatrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // gcd-combine all rows below r into row r on column c
        for i in r + 1..rows {
            if a[(i, c)].is_zero() {
                continue;
            }
            if a[(r, c)].is_zero() {
                a.swap_rows(r, i);
                continue;
            }
            let x = a[(r, c)].clone();
            let y = a[(i, c)].clone();
            let e = x.extended_gcd(&y);
            let (g, s, t) = (e.gcd, e.x, e.y);
            let xr = &x / &g;
            let yr = &y / &g;
            for j in c..cols {
                let ar = a[(r, j)].clone();
                let ai = a[(i, j)].clone();
                a[(r, j)] = &s * &ar + &t * &ai;
                a[(i, j)] = &xr * &ai - &yr * &ar;
            }
        }
        if a[(r, c)].is_zero() {
            continue;
        }
        if a[(r, c)].is_negative() {
            a.negate_row(r);
        }
        for i in 0..r {
            let q = a[(i, c)].div_floor(&a[(r, c)]);
            a.add_row_multiple(i, r, &-q);
        }
        pivots.push(c);
        r += 1;
    }
    let keep: Vec<usize> = (0..r).collect();
    (a.select_rows(&keep), pivots)
}
