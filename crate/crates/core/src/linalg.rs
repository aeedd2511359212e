//! Exact integer linear algebra over lattices.
//!
//! Everything here works with arbitrary-precision integers: Hermite and
//! Smith normal forms, integer kernels, saturation of sublattices and the
//! canonical projection onto the quotient by a primitive sublattice.
//! Normalizations are fixed so that identical inputs always produce
//! bit-identical outputs:
//!
//! * Hermite normal form is row-style, pivots positive, entries above a
//!   pivot reduced into `[0, pivot)`.
//! * Kernel and saturation bases are the nonzero rows of a Hermite normal
//!   form.
//! * The quotient projection is read off the Smith decomposition of the
//!   basis matrix and then put into Hermite normal form itself.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from row vectors. All rows must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<BigInt>]) -> Result<Self> {
        for r in rows {
            if r.len() != cols {
                return Err(Error::RankMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        Ok(IntMat {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let converted: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        IntMat::from_rows(cols, &converted).expect("ragged rows in from_i64")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = IntMat::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.get(r, k) * other.get(k, c);
                }
                out.set(r, c, acc);
            }
        }
        out
    }

    /// Applies the matrix to a column vector.
    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::RankMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }

    /// Vertical concatenation; both matrices must share the column count.
    pub fn stack(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.cols, "stack shape mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        IntMat {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.get(r, c).clone();
            self.set(r, c, v);
        }
    }

    /// row[a] -= q * row[b]
    fn row_sub_mul(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.get(a, c) - q * self.get(b, c);
            self.set(a, c, v);
        }
    }

    /// col[a] -= q * col[b]
    fn col_sub_mul(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.get(r, a) - q * self.get(r, b);
            self.set(r, a, v);
        }
    }

    /// row[a] += row[b]
    fn row_add(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            let v = self.get(a, c) + self.get(b, c);
            self.set(a, c, v);
        }
    }

    /// Rank over the rationals (number of Hermite pivots).
    pub fn rank(&self) -> usize {
        let (h, _) = hermite_normal_form(self);
        (0..h.rows)
            .filter(|&r| h.row(r).iter().any(|x| !x.is_zero()))
            .count()
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !a.get(r, k).is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j);
                    a.set(i, j, num / &prev);
                }
                a.set(i, k, BigInt::zero());
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1).clone()
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().abs().is_one()
    }
}

/// Dot product of two integer vectors of equal length.
pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn neg_vec(v: &[BigInt]) -> Vec<BigInt> {
    v.iter().map(|x| -x.clone()).collect()
}

/// Divides a vector by the gcd of its entries, keeping its direction.
/// The zero vector stays zero.
pub fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn vec_from_i64(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Row-style Hermite normal form.
///
/// Returns `(H, U)` with `H = U * M`, `U` unimodular, pivots positive and
/// entries above each pivot reduced into `[0, pivot)`. The form is the
/// unique canonical representative of the row lattice of `M`.
pub fn hermite_normal_form(m: &IntMat) -> (IntMat, IntMat) {
    let mut h = m.clone();
    let mut u = IntMat::identity(m.rows);
    let mut pivot_row = 0;
    for col in 0..h.cols {
        if pivot_row == h.rows {
            break;
        }
        // Euclid on the column until a single nonzero entry survives.
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..h.rows {
                if !h.get(r, col).is_zero()
                    && best.is_none_or(|b| h.get(r, col).abs() < h.get(b, col).abs())
                {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            h.swap_rows(pivot_row, b);
            u.swap_rows(pivot_row, b);
            let p = h.get(pivot_row, col).clone();
            let mut cleared = true;
            for r in pivot_row + 1..h.rows {
                if !h.get(r, col).is_zero() {
                    let q = h.get(r, col) / &p;
                    h.row_sub_mul(r, pivot_row, &q);
                    u.row_sub_mul(r, pivot_row, &q);
                    if !h.get(r, col).is_zero() {
                        cleared = false;
                    }
                }
            }
            if cleared {
                if h.get(pivot_row, col).is_negative() {
                    h.negate_row(pivot_row);
                    u.negate_row(pivot_row);
                }
                let p = h.get(pivot_row, col).clone();
                for r in 0..pivot_row {
                    let q = h.get(r, col).div_floor(&p);
                    h.row_sub_mul(r, pivot_row, &q);
                    u.row_sub_mul(r, pivot_row, &q);
                }
                pivot_row += 1;
                break;
            }
        }
    }
    (h, u)
}

/// Smith normal form.
///
/// Returns `(S, U, V)` with `S = U * M * V`, `U` and `V` unimodular, `S`
/// diagonal with nonnegative entries satisfying `d_i | d_{i+1}`.
pub fn smith_normal_form(m: &IntMat) -> (IntMat, IntMat, IntMat) {
    let mut s = m.clone();
    let mut u = IntMat::identity(m.rows);
    let mut v = IntMat::identity(m.cols);
    let n = m.rows.min(m.cols);
    for t in 0..n {
        'place: loop {
            // Smallest nonzero entry of the trailing submatrix becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for r in t..s.rows {
                for c in t..s.cols {
                    if !s.get(r, c).is_zero()
                        && best.is_none_or(|(br, bc)| s.get(r, c).abs() < s.get(br, bc).abs())
                    {
                        best = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = best else { break 'place };
            s.swap_rows(t, pr);
            u.swap_rows(t, pr);
            s.swap_cols(t, pc);
            v.swap_cols(t, pc);

            let mut dirty = false;
            let p = s.get(t, t).clone();
            for r in t + 1..s.rows {
                if !s.get(r, t).is_zero() {
                    let q = s.get(r, t) / &p;
                    s.row_sub_mul(r, t, &q);
                    u.row_sub_mul(r, t, &q);
                    if !s.get(r, t).is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue 'place;
            }
            for c in t + 1..s.cols {
                if !s.get(t, c).is_zero() {
                    let q = s.get(t, c) / &p;
                    s.col_sub_mul(c, t, &q);
                    v.col_sub_mul(c, t, &q);
                    if !s.get(t, c).is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue 'place;
            }
            // Pivot must divide every remaining entry; fold an offending
            // row into row t and restart otherwise.
            let p = s.get(t, t).clone();
            let offender = (t + 1..s.rows)
                .find(|&r| (t + 1..s.cols).any(|c| !s.get(r, c).mod_floor(&p).is_zero()));
            if let Some(r) = offender {
                s.row_add(t, r);
                u.row_add(t, r);
                continue 'place;
            }
            break 'place;
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    (s, u, v)
}

/// Basis of a sublattice of `Z^n`, kept in Hermite normal form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SublatticeBasis {
    ambient_rank: usize,
    basis: Vec<Vec<BigInt>>,
    primitive: bool,
}

impl SublatticeBasis {
    /// Canonicalizes a list of independent vectors into a sublattice basis.
    /// Fails if the vectors are dependent or of the wrong rank.
    pub fn new(ambient_rank: usize, vectors: &[Vec<BigInt>]) -> Result<Self> {
        let m = IntMat::from_rows(ambient_rank, vectors)?;
        let (h, _) = hermite_normal_form(&m);
        let basis: Vec<Vec<BigInt>> = (0..h.rows())
            .map(|r| h.row(r).to_vec())
            .filter(|row| !is_zero_vec(row))
            .collect();
        if basis.len() != vectors.len() {
            return Err(Error::DependentBasis);
        }
        let primitive = saturation_basis(ambient_rank, &basis) == basis;
        Ok(SublatticeBasis {
            ambient_rank,
            basis,
            primitive,
        })
    }

    /// Canonicalizes a possibly dependent spanning set (dependencies are
    /// dropped rather than rejected).
    pub fn from_spanning(ambient_rank: usize, vectors: &[Vec<BigInt>]) -> Result<Self> {
        let m = IntMat::from_rows(ambient_rank, vectors)?;
        let (h, _) = hermite_normal_form(&m);
        let basis: Vec<Vec<BigInt>> = (0..h.rows())
            .map(|r| h.row(r).to_vec())
            .filter(|row| !is_zero_vec(row))
            .collect();
        SublatticeBasis::new(ambient_rank, &basis)
    }

    /// The zero sublattice.
    pub fn zero(ambient_rank: usize) -> Self {
        SublatticeBasis {
            ambient_rank,
            basis: Vec::new(),
            primitive: true,
        }
    }

    /// The full lattice `Z^n`.
    pub fn full(ambient_rank: usize) -> Self {
        SublatticeBasis {
            ambient_rank,
            basis: IntMat::identity(ambient_rank).row_vecs(),
            primitive: true,
        }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Saturation `(L ⊗ Q) ∩ Z^n`; always primitive.
    pub fn saturate(&self) -> SublatticeBasis {
        if self.primitive {
            return self.clone();
        }
        SublatticeBasis {
            ambient_rank: self.ambient_rank,
            basis: saturation_basis(self.ambient_rank, &self.basis),
            primitive: true,
        }
    }

    /// Exact membership test against the Hermite basis.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        if v.len() != self.ambient_rank {
            return false;
        }
        let mut w = v.to_vec();
        for row in &self.basis {
            let pivot_col = row
                .iter()
                .position(|x| !x.is_zero())
                .expect("zero basis row");
            let (q, r) = w[pivot_col].div_rem(&row[pivot_col]);
            if !r.is_zero() {
                return false;
            }
            for (wi, bi) in w.iter_mut().zip(row) {
                *wi -= &q * bi;
            }
        }
        is_zero_vec(&w)
    }

    /// Canonical surjection `P : Z^n -> Z^(n-k)` with kernel exactly this
    /// sublattice. Requires primitivity.
    ///
    /// `P` is the Hermite normal form of the last `n-k` rows of the left
    /// Smith transform of the basis matrix (as columns), which pins it
    /// down uniquely among all valid projections.
    pub fn quotient_projection(&self) -> Result<IntMat> {
        if !self.primitive {
            return Err(Error::NonPrimitiveSublattice);
        }
        let n = self.ambient_rank;
        let k = self.basis.len();
        if k == 0 {
            return Ok(IntMat::identity(n));
        }
        let a = IntMat::from_rows(n, &self.basis)?.transpose();
        let (s, u, _v) = smith_normal_form(&a);
        for i in 0..k {
            if !s.get(i, i).is_one() {
                return Err(Error::InternalInvariant(
                    "primitive sublattice with nontrivial invariant factors".into(),
                ));
            }
        }
        let tail: Vec<Vec<BigInt>> = (k..n).map(|r| u.row(r).to_vec()).collect();
        let p_raw = IntMat::from_rows(n, &tail)?;
        let (h, _) = hermite_normal_form(&p_raw);
        Ok(h)
    }
}

fn saturation_basis(ambient_rank: usize, basis: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    // Saturation is the orthogonal complement taken twice.
    let m = IntMat::from_rows(ambient_rank, basis).expect("canonical basis rows");
    let k = kernel_matrix(&m);
    kernel_matrix(&k).row_vecs()
}

/// Basis of the saturated integer kernel `{v : Mv = 0}` as matrix rows.
fn kernel_matrix(m: &IntMat) -> IntMat {
    let (h, u) = hermite_normal_form(&m.transpose());
    let rows: Vec<Vec<BigInt>> = (0..h.rows())
        .filter(|&r| h.row(r).iter().all(|x| x.is_zero()))
        .map(|r| u.row(r).to_vec())
        .collect();
    let raw = IntMat::from_rows(m.cols(), &rows).expect("kernel rows");
    let (canon, _) = hermite_normal_form(&raw);
    let nonzero: Vec<Vec<BigInt>> = (0..canon.rows())
        .map(|r| canon.row(r).to_vec())
        .filter(|row| !is_zero_vec(row))
        .collect();
    IntMat::from_rows(m.cols(), &nonzero).expect("canonical kernel rows")
}

/// Saturated integer kernel of `M`, flagged primitive.
pub fn kernel_basis(m: &IntMat) -> SublatticeBasis {
    let k = kernel_matrix(m);
    SublatticeBasis {
        ambient_rank: m.cols(),
        basis: k.row_vecs(),
        primitive: true,
    }
}

/// Integer right inverse of a surjective integer matrix.
pub fn section_of_surjection(p: &IntMat) -> Result<IntMat> {
    let (s, u, v) = smith_normal_form(p);
    for i in 0..p.rows() {
        if !s.get(i, i).is_one() {
            return Err(Error::InternalInvariant(
                "section requested for a non-surjective matrix".into(),
            ));
        }
    }
    // X = V * [I; 0] * U, i.e. the first `rows` columns of V times U.
    let mut embed = IntMat::zero(p.cols(), p.rows());
    for i in 0..p.rows() {
        embed.set(i, i, BigInt::one());
    }
    let x = v.mul(&embed).mul(&u);
    debug_assert_eq!(p.mul(&x), IntMat::identity(p.rows()));
    Ok(x)
}
