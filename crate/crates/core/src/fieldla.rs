//! Exact sparse linear algebra over prime fields.
//!
//! Columns are sorted lists of `(row, coefficient)` pairs and the pivot of a
//! column is its largest row index ("lowest one"). Arithmetic is generic over
//! [`Field`]; [`Gf2`] uses a zero-sized coefficient so its columns are plain
//! row-index lists.

use std::fmt::Debug;

use crate::error::{Error, Result};

pub trait Field: Copy + Send + Sync + 'static {
    type Elem: Copy + PartialEq + Debug + Send + Sync;

    fn modulus(&self) -> u32;
    /// Residue of `v`, or `None` when it is zero.
    fn elem(&self, v: u32) -> Option<Self::Elem>;
    fn value(&self, e: Self::Elem) -> u32;
    fn one(&self) -> Self::Elem;
    /// Sum, or `None` when it is zero.
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Option<Self::Elem>;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn inv(&self, a: Self::Elem) -> Self::Elem;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Gf2;

impl Field for Gf2 {
    type Elem = ();

    fn modulus(&self) -> u32 {
        2
    }
    fn elem(&self, v: u32) -> Option<()> {
        (v % 2 == 1).then_some(())
    }
    fn value(&self, _: ()) -> u32 {
        1
    }
    fn one(&self) {}
    fn add(&self, _: (), _: ()) -> Option<()> {
        None
    }
    fn mul(&self, _: (), _: ()) {}
    fn neg(&self, _: ()) {}
    fn inv(&self, _: ()) {}
}

/// The prime field of order `q`, coefficients stored as residues in `1..q`.
#[derive(Clone, Copy, Debug)]
pub struct Fp(u32);

impl Fp {
    pub fn new(q: u32) -> Result<Self> {
        if is_prime(q) {
            Ok(Self(q))
        } else {
            Err(Error::NonPrimeModulus(q))
        }
    }
}

impl Field for Fp {
    type Elem = u32;

    fn modulus(&self) -> u32 {
        self.0
    }
    fn elem(&self, v: u32) -> Option<u32> {
        let r = v % self.0;
        (r != 0).then_some(r)
    }
    fn value(&self, e: u32) -> u32 {
        e
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, a: u32, b: u32) -> Option<u32> {
        let s = ((a as u64 + b as u64) % self.0 as u64) as u32;
        (s != 0).then_some(s)
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }
    fn neg(&self, a: u32) -> u32 {
        self.0 - a
    }
    fn inv(&self, a: u32) -> u32 {
        // Fermat: a^(q-2)
        let q = self.0 as u64;
        let (mut base, mut exp, mut acc) = (a as u64, q - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % q;
            }
            base = base * base % q;
            exp >>= 1;
        }
        acc as u32
    }
}

pub fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let q = q as u64;
    (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

pub type Column<F> = Vec<(u32, <F as Field>::Elem)>;

/// `out = a + f * b`, dropping cancelled entries.
fn add_scaled<F: Field>(field: F, a: &[(u32, F::Elem)], f: F::Elem, b: &[(u32, F::Elem)], out: &mut Column<F>) {
    out.clear();
    out.reserve(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (ra, ca) = a[i];
        let (rb, cb) = b[j];
        if ra < rb {
            out.push((ra, ca));
            i += 1;
        } else if rb < ra {
            out.push((rb, field.mul(f, cb)));
            j += 1;
        } else {
            if let Some(c) = field.add(ca, field.mul(f, cb)) {
                out.push((ra, c));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|&(r, c)| (r, field.mul(f, c))));
}

const NO_PIVOT: u32 = u32::MAX;

/// Incremental column-echelon basis: stores reduced columns with distinct
/// pivots and reduces new columns against them.
#[derive(Clone, Debug)]
pub struct Reducer<F: Field> {
    field: F,
    pivot_of: Vec<u32>,
    stored: Vec<Column<F>>,
    scratch: Column<F>,
}

impl<F: Field> Reducer<F> {
    pub fn new(field: F, rows: usize) -> Self {
        Self { field, pivot_of: vec![NO_PIVOT; rows], stored: Vec::new(), scratch: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.stored.len()
    }

    /// Reduces `col` in place against the stored basis.
    pub fn reduce(&mut self, col: &mut Column<F>) {
        while let Some(&(low, c)) = col.last() {
            let k = self.pivot_of[low as usize];
            if k == NO_PIVOT {
                return;
            }
            let piv = &self.stored[k as usize];
            let pc = piv.last().expect("stored columns are nonzero").1;
            let f = self.field.neg(self.field.mul(c, self.field.inv(pc)));
            add_scaled(self.field, col, f, piv, &mut self.scratch);
            std::mem::swap(col, &mut self.scratch);
        }
    }

    /// Reduces `col` and stores the remainder if nonzero. Returns whether
    /// the column was independent of the stored basis.
    pub fn push(&mut self, mut col: Column<F>) -> bool {
        self.reduce(&mut col);
        match col.last() {
            Some(&(low, _)) => {
                self.pivot_of[low as usize] = self.stored.len() as u32;
                self.stored.push(col);
                true
            }
            None => false,
        }
    }

    pub fn checkpoint(&self) -> usize {
        self.stored.len()
    }

    /// Drops every column stored after `mark`.
    pub fn rollback(&mut self, mark: usize) {
        for col in self.stored.drain(mark..) {
            let low = col.last().expect("stored columns are nonzero").0;
            self.pivot_of[low as usize] = NO_PIVOT;
        }
    }
}

/// Reduces the columns left to right while tracking the column operations;
/// returns the rank and a basis of the kernel expressed in column indices.
pub fn rank_and_kernel<F: Field>(field: F, rows: usize, columns: Vec<Column<F>>) -> (usize, Vec<Column<F>>) {
    let mut pivot_of = vec![NO_PIVOT; rows];
    let mut reduced: Vec<Column<F>> = Vec::new();
    let mut transforms: Vec<Column<F>> = Vec::new();
    let mut kernel = Vec::new();
    let mut scratch = Vec::new();
    for (j, mut col) in columns.into_iter().enumerate() {
        let mut v: Column<F> = vec![(j as u32, field.one())];
        while let Some(&(low, c)) = col.last() {
            let k = pivot_of[low as usize];
            if k == NO_PIVOT {
                break;
            }
            let k = k as usize;
            let pc = reduced[k].last().expect("nonzero").1;
            let f = field.neg(field.mul(c, field.inv(pc)));
            add_scaled(field, &col, f, &reduced[k], &mut scratch);
            std::mem::swap(&mut col, &mut scratch);
            add_scaled(field, &v, f, &transforms[k], &mut scratch);
            std::mem::swap(&mut v, &mut scratch);
        }
        match col.last() {
            Some(&(low, _)) => {
                pivot_of[low as usize] = reduced.len() as u32;
                reduced.push(col);
                transforms.push(v);
            }
            None => kernel.push(v),
        }
    }
    (reduced.len(), kernel)
}

/// A sparse matrix over F_q stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    modulus: u32,
    rows: usize,
    columns: Vec<Vec<(u32, u32)>>,
}

impl FieldMatrix {
    pub fn new(modulus: u32, rows: usize) -> Result<Self> {
        if !is_prime(modulus) {
            return Err(Error::NonPrimeModulus(modulus));
        }
        Ok(Self { modulus, rows, columns: Vec::new() })
    }

    /// Builds a matrix from dense row-major entries.
    pub fn from_dense(modulus: u32, rows: &[Vec<i64>]) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::new(modulus, rows.len())?;
        for j in 0..ncols {
            let col = rows.iter().enumerate().map(|(i, r)| (i as u32, r[j])).collect();
            m.push_signed_column(col)?;
        }
        Ok(m)
    }

    /// Appends a column given as (row, integer coefficient) pairs. Entries are
    /// reduced mod q, duplicates summed and zeros dropped.
    pub fn push_signed_column(&mut self, mut entries: Vec<(u32, i64)>) -> Result<()> {
        entries.sort_by_key(|e| e.0);
        let q = self.modulus as i64;
        let mut col: Vec<(u32, u32)> = Vec::with_capacity(entries.len());
        for (r, c) in entries {
            if r as usize >= self.rows {
                return Err(Error::InvalidArgument(format!("row {r} out of range {}", self.rows)));
            }
            let c = c.rem_euclid(q) as u32;
            match col.last_mut() {
                Some(last) if last.0 == r => last.1 = (last.1 + c) % self.modulus,
                _ => col.push((r, c)),
            }
        }
        col.retain(|e| e.1 != 0);
        self.columns.push(col);
        Ok(())
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[(u32, u32)] {
        &self.columns[j]
    }

    pub fn transpose(&self) -> Self {
        let mut cols = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, c) in col {
                cols[i as usize].push((j as u32, c));
            }
        }
        Self { modulus: self.modulus, rows: self.columns.len(), columns: cols }
    }

    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        Self {
            modulus: self.modulus,
            rows: self.rows,
            columns: perm.iter().map(|&j| self.columns[j].clone()).collect(),
        }
    }

    pub(crate) fn typed_columns<F: Field>(&self, field: F) -> impl Iterator<Item = Column<F>> + '_ {
        self.columns.iter().map(move |col| {
            col.iter().map(|&(r, c)| (r, field.elem(c).expect("stored coefficients are nonzero"))).collect()
        })
    }
}

fn rank_in<F: Field>(field: F, mats: &[&FieldMatrix], rows: usize) -> usize {
    let mut red = Reducer::new(field, rows);
    for m in mats {
        for col in m.typed_columns(field) {
            red.push(col);
        }
    }
    red.rank()
}

/// Rank over F_q by Gaussian elimination.
pub fn rank(m: &FieldMatrix) -> usize {
    if m.modulus == 2 {
        rank_in(Gf2, &[m], m.rows)
    } else {
        rank_in(Fp(m.modulus), &[m], m.rows)
    }
}

/// Rank of the horizontal concatenation `[A | B]`.
pub fn rank_of_union(a: &FieldMatrix, b: &FieldMatrix) -> Result<usize> {
    if a.rows != b.rows {
        return Err(Error::RowMismatch(a.rows, b.rows));
    }
    if a.modulus != b.modulus {
        return Err(Error::InvalidArgument(format!("moduli differ: {} vs {}", a.modulus, b.modulus)));
    }
    Ok(if a.modulus == 2 { rank_in(Gf2, &[a, b], a.rows) } else { rank_in(Fp(a.modulus), &[a, b], a.rows) })
}

/// Two-level persistence of a filtered boundary matrix.
///
/// `dims[j]` is the dimension of the simplex of column `j` and `levels[j]`
/// its level (1 or 2); all level-1 columns must come first and every
/// nonzero entry must sit above the diagonal. Returns, per dimension, the
/// number of classes born at level 1 that are never killed.
pub fn persistent_reduce(d: &FieldMatrix, dims: &[usize], levels: &[u8]) -> Result<Vec<usize>> {
    let n = d.cols();
    if d.rows != n || dims.len() != n || levels.len() != n {
        return Err(Error::InvalidArgument("boundary matrix must be square with one dim and level per column".into()));
    }
    for j in 0..n {
        if !matches!(levels[j], 1 | 2) || (j > 0 && levels[j] < levels[j - 1]) {
            return Err(Error::OrderingViolation(j));
        }
        if d.columns[j].last().is_some_and(|&(r, _)| r as usize >= j) {
            return Err(Error::OrderingViolation(j));
        }
    }
    let lows = if d.modulus == 2 { lows_in(Gf2, d) } else { lows_in(Fp(d.modulus), d) };
    let mut killed = vec![false; n];
    for low in lows.iter().flatten() {
        killed[*low] = true;
    }
    let top = dims.iter().copied().max().unwrap_or(0);
    let mut counts = vec![0; top + 1];
    for j in 0..n {
        if levels[j] == 1 && lows[j].is_none() && !killed[j] {
            counts[dims[j]] += 1;
        }
    }
    Ok(counts)
}

fn lows_in<F: Field>(field: F, d: &FieldMatrix) -> Vec<Option<usize>> {
    let mut red = Reducer::new(field, d.rows);
    d.typed_columns(field)
        .map(|mut col| {
            red.reduce(&mut col);
            let low = col.last().map(|e| e.0 as usize);
            if low.is_some() {
                red.push(col);
            }
            low
        })
        .collect()
}
