//! Integer linear algebra: Hermite and Smith normal forms, integer kernels,
//! cokernel presentations, image membership and saturation.
//!
//! Matrices are dense and row-major over [`BigInt`]. Sublattices are stored
//! by a basis of row vectors kept in Hermite normal form, so two equal
//! lattices always carry identical bases.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::grading::{Degree, FgAbGroup};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        IntegerMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row vectors; `cols` is needed when there are no rows.
    pub fn from_rows(cols: usize, rows: &[Vec<BigInt>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned());
        }
        IntegerMatrix { rows: rows.len(), cols, data }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<BigInt>> =
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::from_rows(cols, &rows)
    }

    pub fn from_columns(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        Self::from_rows(rows, cols).transpose()
    }

    pub fn diagonal(entries: &[BigInt]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.data[i * n + i] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn to_columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let rows: Vec<Vec<BigInt>> = idx.iter().map(|&i| self.row(i).to_vec()).collect();
        Self::from_rows(self.cols, &rows)
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        self.transpose().select_rows(idx).transpose()
    }

    pub fn hstack(&self, other: &IntegerMatrix) -> Self {
        assert_eq!(self.rows, other.rows);
        let rows: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| self.row(i).iter().chain(other.row(i)).cloned().collect())
            .collect();
        Self::from_rows(self.cols + other.cols, &rows)
    }

    pub fn vstack(&self, other: &IntegerMatrix) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        IntegerMatrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn rank(&self) -> usize {
        let (h, _) = hnf(self);
        (0..h.rows).filter(|&i| h.row(i).iter().any(|x| !x.is_zero())).count()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * a[n - 1][n - 1].clone())
    }

    pub fn is_unimodular(&self) -> bool {
        matches!(self.det(), Ok(d) if d.abs().is_one())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] -= k * row[src]
    fn sub_row_multiple(&mut self, target: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.data[src * self.cols + j] * k;
            self.data[target * self.cols + j] -= v;
        }
    }

    /// col[target] -= k * col[src]
    fn sub_col_multiple(&mut self, target: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.data[i * self.cols + src] * k;
            self.data[i * self.cols + target] -= v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self.data[r * self.cols + j]);
            self.data[r * self.cols + j] = v;
        }
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

/// Divides a vector by the gcd of its entries; the zero vector is returned unchanged.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Rank of a list of vectors of length `dim`.
pub fn rank_of(vectors: &[Vec<BigInt>], dim: usize) -> usize {
    let mut rows: Vec<Vec<BigInt>> = vectors.iter().map(|v| primitive(v)).collect();
    let mut rank = 0;
    for c in 0..dim {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[c].is_zero() {
                continue;
            }
            let a = row[c].clone();
            for j in c..dim {
                row[j] = &row[j] * &pivot[c] - &a * &pivot[j];
            }
            *row = primitive(row);
        }
        rank += 1;
    }
    rank
}

/// Row-style Hermite normal form: returns `(H, U)` with `H = U·M`, `U`
/// unimodular, pivots positive and entries above each pivot reduced into
/// `[0, pivot)`. Zero rows are collected at the bottom.
pub fn hnf(m: &IntegerMatrix) -> (IntegerMatrix, IntegerMatrix) {
    let mut h = m.clone();
    let mut u = IntegerMatrix::identity(m.rows);
    let mut pr = 0;
    for c in 0..m.cols {
        if pr == m.rows {
            break;
        }
        loop {
            let piv = (pr..m.rows)
                .filter(|&i| !h.get(i, c).is_zero())
                .min_by(|&a, &b| h.get(a, c).abs().cmp(&h.get(b, c).abs()));
            let Some(piv) = piv else { break };
            h.swap_rows(pr, piv);
            u.swap_rows(pr, piv);
            let mut clean = true;
            for i in pr + 1..m.rows {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = h.get(i, c).div_floor(h.get(pr, c));
                h.sub_row_multiple(i, pr, &q);
                u.sub_row_multiple(i, pr, &q);
                if !h.get(i, c).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h.get(pr, c).is_zero() {
            continue;
        }
        if h.get(pr, c).is_negative() {
            h.negate_row(pr);
            u.negate_row(pr);
        }
        for i in 0..pr {
            let q = h.get(i, c).div_floor(h.get(pr, c));
            h.sub_row_multiple(i, pr, &q);
            u.sub_row_multiple(i, pr, &q);
        }
        pr += 1;
    }
    (h, u)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    /// Invariant factors `d_1 | d_2 | …`, one per diagonal position (trailing zeros allowed).
    pub diag: Vec<BigInt>,
    pub left: IntegerMatrix,
    pub right: IntegerMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.diag.iter().filter(|d| !d.is_zero()).count()
    }
}

fn min_abs_in_block(d: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let x = d.get(i, j);
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smith normal form `U·M·V = diag(d_1, …)`, pivoting on the entry of
/// smallest absolute value.
pub fn snf(m: &IntegerMatrix) -> SnfResult {
    let (r, c) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntegerMatrix::identity(r);
    let mut v = IntegerMatrix::identity(c);
    let n = r.min(c);
    let mut t = 0;
    while t < n {
        let Some((i, j)) = min_abs_in_block(&d, t) else { break };
        d.swap_rows(t, i);
        u.swap_rows(t, i);
        d.swap_cols(t, j);
        v.swap_cols(t, j);
        loop {
            let mut dirty = false;
            for i in t + 1..r {
                if d.get(i, t).is_zero() {
                    continue;
                }
                let q = d.get(i, t).div_floor(d.get(t, t));
                d.sub_row_multiple(i, t, &q);
                u.sub_row_multiple(i, t, &q);
                dirty |= !d.get(i, t).is_zero();
            }
            for j in t + 1..c {
                if d.get(t, j).is_zero() {
                    continue;
                }
                let q = d.get(t, j).div_floor(d.get(t, t));
                d.sub_col_multiple(j, t, &q);
                v.sub_col_multiple(j, t, &q);
                dirty |= !d.get(t, j).is_zero();
            }
            if dirty {
                // bring the smallest remainder in row/column t to the pivot
                let mut best = (t, t);
                for i in t + 1..r {
                    let x = d.get(i, t);
                    if !x.is_zero() && x.abs() < d.get(best.0, best.1).abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..c {
                    let x = d.get(t, j);
                    if !x.is_zero() && x.abs() < d.get(best.0, best.1).abs() {
                        best = (t, j);
                    }
                }
                d.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
                d.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
                continue;
            }
            let p = d.get(t, t).clone();
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !d.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    // row t += row i, then eliminate again
                    let minus_one = -BigInt::one();
                    d.sub_row_multiple(t, i, &minus_one);
                    u.sub_row_multiple(t, i, &minus_one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let diag = (0..n).map(|i| d.get(i, i).clone()).collect();
    SnfResult { diag, left: u, right: v }
}

/// A sublattice of `Z^ambient_rank`, stored by a basis of rows in Hermite normal form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sublattice {
    ambient_rank: usize,
    basis: IntegerMatrix,
}

impl fmt::Debug for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sublattice({}; {:?})", self.ambient_rank, self.basis)
    }
}

impl Sublattice {
    /// The lattice generated by arbitrary (possibly dependent) vectors.
    pub fn from_generators(ambient_rank: usize, gens: &[Vec<BigInt>]) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.len() != ambient_rank) {
            return Err(Error::DimensionMismatch { expected: ambient_rank, found: g.len() });
        }
        let m = IntegerMatrix::from_rows(ambient_rank, gens);
        let (h, _) = hnf(&m);
        let rows: Vec<Vec<BigInt>> = h.to_rows().into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
        Ok(Sublattice { ambient_rank, basis: IntegerMatrix::from_rows(ambient_rank, &rows) })
    }

    /// Uses the given rows verbatim as a basis (they must be independent).
    pub fn with_basis(ambient_rank: usize, rows: &[Vec<BigInt>]) -> Result<Self> {
        if let Some(g) = rows.iter().find(|g| g.len() != ambient_rank) {
            return Err(Error::DimensionMismatch { expected: ambient_rank, found: g.len() });
        }
        if rank_of(rows, ambient_rank) != rows.len() {
            return Err(Error::InvalidDegree("basis vectors are linearly dependent".into()));
        }
        Ok(Sublattice { ambient_rank, basis: IntegerMatrix::from_rows(ambient_rank, rows) })
    }

    pub fn zero(ambient_rank: usize) -> Self {
        Sublattice { ambient_rank, basis: IntegerMatrix::zeros(0, ambient_rank) }
    }

    pub fn full(ambient_rank: usize) -> Self {
        Sublattice { ambient_rank, basis: IntegerMatrix::identity(ambient_rank) }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &IntegerMatrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<BigInt>> {
        self.basis.to_rows()
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        v.len() == self.ambient_rank
            && matches!(image_membership(&self.basis.transpose(), v), Ok(Some(_)))
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        image_membership(&self.basis.transpose(), v).ok().flatten()
    }

    /// Equality as lattices, independent of the stored basis.
    pub fn lattice_eq(&self, other: &Sublattice) -> bool {
        self.ambient_rank == other.ambient_rank && self.canonical_basis() == other.canonical_basis()
    }

    pub fn canonical_basis(&self) -> IntegerMatrix {
        Self::from_generators(self.ambient_rank, &self.basis.to_rows()).expect("consistent ranks").basis
    }

    /// Index of the lattice in its saturation.
    pub fn index_in_saturation(&self) -> BigInt {
        let sat = saturate(self);
        // both bases have equal rank; express ours in the saturated basis
        let coords: Vec<Vec<BigInt>> =
            self.basis.to_rows().iter().map(|r| sat.coordinates(r).expect("lattice inside its saturation")).collect();
        if coords.is_empty() {
            return BigInt::one();
        }
        IntegerMatrix::from_rows(coords.len(), &coords).det().expect("square").abs()
    }

    pub fn is_saturated(&self) -> bool {
        self.index_in_saturation().is_one()
    }

    /// Sum of two sublattices of the same ambient lattice.
    pub fn sum(&self, other: &Sublattice) -> Result<Sublattice> {
        if self.ambient_rank != other.ambient_rank {
            return Err(Error::DimensionMismatch { expected: self.ambient_rank, found: other.ambient_rank });
        }
        let mut gens = self.basis_rows();
        gens.extend(other.basis_rows());
        Sublattice::from_generators(self.ambient_rank, &gens)
    }
}

/// Basis of `{v : M·v = 0} ∩ Z^cols`, saturated and in Hermite normal form.
pub fn kernel_basis(m: &IntegerMatrix) -> Sublattice {
    let (h, u) = hnf(&m.transpose());
    let rank = (0..h.rows()).filter(|&i| h.row(i).iter().any(|x| !x.is_zero())).count();
    let rows: Vec<Vec<BigInt>> = (rank..h.rows()).map(|i| u.row(i).to_vec()).collect();
    Sublattice::from_generators(m.cols(), &rows).expect("kernel rows have ambient length")
}

/// Smallest direct summand containing `l`.
pub fn saturate(l: &Sublattice) -> Sublattice {
    let perp = kernel_basis(l.basis());
    kernel_basis(perp.basis())
}

/// Presentation of `coker(M) = Z^rows / M·Z^cols` computed from the Smith form.
#[derive(Clone, Debug)]
pub struct CokernelPresentation {
    pub group: FgAbGroup,
    /// Rows map `Z^rows` to the free coordinates followed by the torsion coordinates.
    pub projection: IntegerMatrix,
    /// Column `k` is a preimage in `Z^rows` of the `k`-th group generator.
    pub lift: IntegerMatrix,
}

impl CokernelPresentation {
    pub fn project(&self, x: &[BigInt]) -> Result<Degree> {
        let y = self.projection.mul_vec(x)?;
        let r = self.group.free_rank();
        Ok(self.group.reduce(Degree::new(y[..r].to_vec(), y[r..].to_vec())))
    }
}

pub fn cokernel_presentation(m: &IntegerMatrix) -> CokernelPresentation {
    let s = snf(m);
    let rows = m.rows();
    let k = s.rank();
    let mut proj_rows = Vec::new();
    let mut lift_cols = Vec::new();
    let mut torsion = Vec::new();
    let (uinv, _) = {
        let (h, w) = hnf(&s.left);
        debug_assert!(h == IntegerMatrix::identity(rows));
        (w, h)
    };
    for i in k..rows {
        proj_rows.push(s.left.row(i).to_vec());
        lift_cols.push(uinv.col(i));
    }
    let mut tor_rows = Vec::new();
    let mut tor_lift = Vec::new();
    for i in 0..k {
        if s.diag[i] > BigInt::one() {
            torsion.push(s.diag[i].clone());
            tor_rows.push(s.left.row(i).to_vec());
            tor_lift.push(uinv.col(i));
        }
    }
    proj_rows.extend(tor_rows);
    lift_cols.extend(tor_lift);
    let group = FgAbGroup::new(rows - k, torsion).expect("smith form yields a divisibility chain");
    CokernelPresentation {
        group,
        projection: IntegerMatrix::from_rows(rows, &proj_rows),
        lift: IntegerMatrix::from_columns(rows, &lift_cols),
    }
}

/// Solves `M·x = v` over the integers.
pub fn image_membership(m: &IntegerMatrix, v: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if v.len() != m.rows() {
        return Err(Error::DimensionMismatch { expected: m.rows(), found: v.len() });
    }
    let s = snf(m);
    let w = s.left.mul_vec(v)?;
    let mut y = vec![BigInt::zero(); m.cols()];
    for (i, wi) in w.iter().enumerate() {
        let d = s.diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            if !wi.is_zero() {
                return Ok(None);
            }
        } else {
            let (q, r) = wi.div_rem(&d);
            if !r.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        }
    }
    Ok(Some(s.right.mul_vec(&y)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ints;

    fn m(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    /// Transposed ray matrix of the non-simplicial cone over the square.
    fn square_rays_t() -> IntegerMatrix {
        m(&[&[1, 0, 1], &[0, 1, 1], &[-1, 0, 1], &[0, -1, 1]])
    }

    fn is_hnf(h: &IntegerMatrix) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        for i in 0..h.rows() {
            match h.row(i).iter().position(|x| !x.is_zero()) {
                None => seen_zero = true,
                Some(p) => {
                    if seen_zero || last_pivot.is_some_and(|lp| p <= lp) || !h.get(i, p).is_positive() {
                        return false;
                    }
                    for k in 0..i {
                        let x = h.get(k, p);
                        if x.is_negative() || x >= h.get(i, p) {
                            return false;
                        }
                    }
                    last_pivot = Some(p);
                }
            }
        }
        true
    }

    #[test]
    fn hnf_small() {
        let a = m(&[&[2, 4], &[1, 1]]);
        let (h, u) = hnf(&a);
        assert_eq!(h, m(&[&[1, 1], &[0, 2]]));
        assert_eq!(u.mul(&a).unwrap(), h);
        assert!(u.is_unimodular());
        assert!(is_hnf(&h));
    }

    #[test]
    fn hnf_identity_and_zero() {
        let (h, u) = hnf(&IntegerMatrix::identity(3));
        assert_eq!(h, IntegerMatrix::identity(3));
        assert_eq!(u, IntegerMatrix::identity(3));
        let z = IntegerMatrix::zeros(2, 3);
        assert_eq!(hnf(&z).0, z);
    }

    #[test]
    fn snf_square_cone() {
        let s = snf(&square_rays_t());
        assert_eq!(s.diag, ints(&[1, 1, 2]));
        let d = s.left.mul(&square_rays_t()).unwrap().mul(&s.right).unwrap();
        for i in 0..d.rows() {
            for j in 0..d.cols() {
                let expect = if i == j { s.diag[i].clone() } else { BigInt::zero() };
                assert_eq!(d.get(i, j), &expect);
            }
        }
    }

    #[test]
    fn snf_identity_and_diag() {
        assert_eq!(snf(&IntegerMatrix::identity(3)).diag, ints(&[1, 1, 1]));
        assert_eq!(snf(&m(&[&[6, 0], &[0, 4]])).diag, ints(&[2, 12]));
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&m(&[&[1, 1, 1, 0], &[0, 0, 1, 1]]));
        assert_eq!(k.rank(), 2);
        assert!(k.contains(&ints(&[1, 0, -1, 1])));
        assert!(k.contains(&ints(&[0, 1, -1, 1])));
        assert_eq!(kernel_basis(&m(&[&[1]])).rank(), 0);
        let k = kernel_basis(&m(&[&[1, 1, 1]]));
        assert_eq!(k.rank(), 2);
        assert!(k.contains(&ints(&[1, -1, 0])) && k.contains(&ints(&[0, 1, -1])));
    }

    #[test]
    fn cokernel_examples() {
        let c = cokernel_presentation(&square_rays_t());
        assert_eq!(c.group, FgAbGroup::new(1, ints(&[2])).unwrap());
        for col in square_rays_t().to_columns() {
            assert!(c.project(&col).unwrap().is_zero());
        }
        let c = cokernel_presentation(&IntegerMatrix::identity(2));
        assert!(c.group.is_trivial());
        let c = cokernel_presentation(&m(&[&[2]]));
        assert_eq!(c.group, FgAbGroup::new(0, ints(&[2])).unwrap());
        assert_eq!(c.project(&ints(&[1])).unwrap(), Degree::new(vec![], ints(&[1])));
    }

    #[test]
    fn membership_examples() {
        let a = square_rays_t();
        for mult in [-3i64, -1, 1, 2, 5] {
            let v = ints(&[-mult, mult, -mult, mult]);
            assert_eq!(image_membership(&a, &v).unwrap(), None);
        }
        assert_eq!(image_membership(&a, &ints(&[0, 0, 0, 0])).unwrap(), Some(ints(&[0, 0, 0])));
        assert_eq!(image_membership(&a, &ints(&[-2, -2, 0, 0])).unwrap(), Some(ints(&[-1, -1, -1])));
        assert!(image_membership(&a, &ints(&[1, 2])).is_err());
    }

    #[test]
    fn saturate_examples() {
        let l = Sublattice::from_generators(2, &[ints(&[2, 0])]).unwrap();
        assert!(saturate(&l).lattice_eq(&Sublattice::from_generators(2, &[ints(&[1, 0])]).unwrap()));
        let p = Sublattice::from_generators(2, &[ints(&[1, 1])]).unwrap();
        assert!(saturate(&p).lattice_eq(&p));
        let l = Sublattice::from_generators(2, &[ints(&[2, 2]), ints(&[0, 4])]).unwrap();
        // index of span{(2,2),(0,4)} in Z^2 is |det| = 8
        assert_eq!(l.index_in_saturation(), BigInt::from(8));
        assert!(saturate(&l).lattice_eq(&Sublattice::full(2)));
    }
}
