//! Dense linear algebra over the prime field `F_p`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported modulus (exclusive). Products of two residues fit in `u32`.
pub const MAX_MODULUS: u32 = 1 << 16;

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `a^{-1} mod p` for `a != 0`.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

pub fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = (a % p) as u64;
    let p64 = p as u64;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p64;
        }
        b = b * b % p64;
        e >>= 1;
    }
    r as u32
}

/// Reduce a signed integer into `[0, p)`.
pub fn residue(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpVector {
    p: u32,
    entries: Vec<u32>,
}

impl FpVector {
    pub fn zero(p: u32, len: usize) -> Self {
        FpVector {
            p,
            entries: vec![0; len],
        }
    }

    pub fn unit(p: u32, len: usize, i: usize) -> Self {
        let mut v = Self::zero(p, len);
        v.entries[i] = 1;
        v
    }

    /// Entries are reduced mod `p`.
    pub fn from_residues(p: u32, entries: impl IntoIterator<Item = i64>) -> Self {
        FpVector {
            p,
            entries: entries.into_iter().map(|x| residue(x, p)).collect(),
        }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> u32 {
        self.entries[i]
    }

    pub fn set(&mut self, i: usize, x: u32) {
        self.entries[i] = x % self.p;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn leading(&self) -> Option<usize> {
        self.entries.iter().position(|&x| x != 0)
    }

    pub fn scale(&mut self, c: u32) {
        let p = self.p;
        for x in &mut self.entries {
            *x = *x * c % p;
        }
    }

    /// `self += c * other`, touching only columns `from..`.
    fn add_scaled_from(&mut self, c: u32, other: &FpVector, from: usize) {
        let p = self.p;
        for (x, &y) in self.entries[from..].iter_mut().zip(&other.entries[from..]) {
            if y != 0 {
                *x = (*x + c * y) % p;
            }
        }
    }

    pub fn add_scaled(&mut self, c: u32, other: &FpVector) {
        self.add_scaled_from(c % self.p, other, 0);
    }

    /// The unique `c` with `self = c * other`, if any.
    pub fn ratio_to(&self, other: &FpVector) -> Option<u32> {
        let lead = other.leading()?;
        let c = self.entries[lead] * inv_mod(other.entries[lead], self.p) % self.p;
        let mut t = other.clone();
        t.scale(c);
        (t == *self).then_some(c)
    }
}

impl fmt::Display for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Reduced row-echelon form of a list of rows.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub p: u32,
    pub width: usize,
    /// Sorted by pivot column; `rows[k]` has a 1 at `pivots[k]` and zeros in
    /// every other pivot column.
    pub rows: Vec<FpVector>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Incremental reduced row echelon form.
///
/// The basis is kept fully reduced at all times, so an incoming row only
/// needs one subtraction per nonzero entry it has in a pivot column. The
/// result is the unique RREF of the row span, independent of input order.
struct EchelonBuilder {
    p: u32,
    width: usize,
    rows: Vec<FpVector>,
    /// `pivot_row[c]` is the basis row with pivot `c`.
    pivot_row: Vec<Option<usize>>,
}

impl EchelonBuilder {
    fn new(p: u32, width: usize) -> Self {
        EchelonBuilder {
            p,
            width,
            rows: Vec::new(),
            pivot_row: vec![None; width],
        }
    }

    fn reduce(&self, v: &mut FpVector) {
        let p = self.p;
        let hits: Vec<(usize, usize)> = v
            .entries
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .filter_map(|(c, _)| self.pivot_row[c].map(|r| (c, r)))
            .collect();
        for (c, r) in hits {
            let coef = v.entries[c];
            if coef != 0 {
                v.add_scaled_from(p - coef, &self.rows[r], c);
            }
        }
    }

    fn push(&mut self, mut v: FpVector) {
        self.reduce(&mut v);
        let Some(lead) = v.leading() else { return };
        let p = self.p;
        v.scale(inv_mod(v.entries[lead], p));
        for row in &mut self.rows {
            let coef = row.entries[lead];
            if coef != 0 {
                row.add_scaled_from(p - coef, &v, lead);
            }
        }
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(v);
    }

    fn finish(self) -> Echelon {
        let mut pairs: Vec<(usize, FpVector)> = self
            .rows
            .into_iter()
            .map(|r| (r.leading().unwrap(), r))
            .collect();
        pairs.sort_by_key(|(c, _)| *c);
        let (pivots, rows) = pairs.into_iter().unzip();
        Echelon {
            p: self.p,
            width: self.width,
            rows,
            pivots,
        }
    }
}

fn check_rows(p: u32, width: usize, rows: &[FpVector]) -> Result<()> {
    for r in rows {
        if r.p != p {
            return Err(Error::ModulusMismatch(p, r.p));
        }
        if r.len() != width {
            return Err(Error::LengthMismatch {
                expected: width,
                got: r.len(),
            });
        }
    }
    Ok(())
}

/// RREF of `rows`; all rows must share the modulus and length of the first.
pub fn row_reduce(rows: &[FpVector]) -> Result<Echelon> {
    let Some(first) = rows.first() else {
        return Err(Error::invalid("row_reduce needs at least one row"));
    };
    let (p, width) = (first.p, first.len());
    check_rows(p, width, rows)?;
    let mut b = EchelonBuilder::new(p, width);
    for r in rows {
        b.push(r.clone());
    }
    Ok(b.finish())
}

/// `F_p^ambient_dim / span(relations)`.
///
/// Quotient coordinates are the free (non-pivot) columns of the RREF of the
/// relation span, in increasing order.
#[derive(Debug, Clone)]
pub struct QuotientSpace {
    p: u32,
    ambient_dim: usize,
    echelon: Echelon,
    pivot_row: Vec<Option<usize>>,
    free_columns: Vec<usize>,
}

impl QuotientSpace {
    pub fn by_span(p: u32, ambient_dim: usize, relations: &[FpVector]) -> Result<Self> {
        check_rows(p, ambient_dim, relations)?;
        let mut b = EchelonBuilder::new(p, ambient_dim);
        for r in relations {
            b.push(r.clone());
        }
        Ok(Self::from_echelon(b.finish()))
    }

    /// Same as [`by_span`](Self::by_span) but consumes the relations.
    pub fn by_span_owned(p: u32, ambient_dim: usize, relations: Vec<FpVector>) -> Result<Self> {
        check_rows(p, ambient_dim, &relations)?;
        let mut b = EchelonBuilder::new(p, ambient_dim);
        for r in relations {
            b.push(r);
        }
        Ok(Self::from_echelon(b.finish()))
    }

    fn from_echelon(echelon: Echelon) -> Self {
        let ambient_dim = echelon.width;
        let mut pivot_row = vec![None; ambient_dim];
        for (k, &c) in echelon.pivots.iter().enumerate() {
            pivot_row[c] = Some(k);
        }
        let free_columns = (0..ambient_dim).filter(|&c| pivot_row[c].is_none()).collect();
        QuotientSpace {
            p: echelon.p,
            ambient_dim,
            echelon,
            pivot_row,
            free_columns,
        }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.free_columns.len()
    }

    pub fn relation_basis(&self) -> &[FpVector] {
        &self.echelon.rows
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.echelon.pivots
    }

    pub fn free_columns(&self) -> &[usize] {
        &self.free_columns
    }

    fn check(&self, v: &FpVector, len: usize) -> Result<()> {
        if v.p != self.p {
            return Err(Error::ModulusMismatch(self.p, v.p));
        }
        if v.len() != len {
            return Err(Error::LengthMismatch {
                expected: len,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Image of an ambient vector in quotient coordinates.
    pub fn project(&self, v: &FpVector) -> Result<FpVector> {
        self.check(v, self.ambient_dim)?;
        let p = self.p;
        // Subtracting v_c * row(c) for each pivot c only alters free columns.
        let mut out = FpVector::zero(p, self.dim());
        for (k, &c) in self.free_columns.iter().enumerate() {
            out.entries[k] = v.entries[c];
        }
        for (c, &x) in v.entries.iter().enumerate() {
            if x == 0 {
                continue;
            }
            if let Some(r) = self.pivot_row[c] {
                let row = &self.echelon.rows[r];
                for (k, &f) in self.free_columns.iter().enumerate() {
                    let y = row.entries[f];
                    if y != 0 {
                        out.entries[k] = (out.entries[k] + (p - x) * y) % p;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Image of the unit vector `e_b`.
    pub fn project_unit(&self, b: usize) -> FpVector {
        self.project(&FpVector::unit(self.p, self.ambient_dim, b))
            .expect("unit vector has ambient length")
    }

    /// Section of `project`: place quotient coordinates on the free columns.
    pub fn lift(&self, q: &FpVector) -> Result<FpVector> {
        self.check(q, self.dim())?;
        let mut v = FpVector::zero(self.p, self.ambient_dim);
        for (k, &c) in self.free_columns.iter().enumerate() {
            v.entries[c] = q.entries[k];
        }
        Ok(v)
    }

    /// Whether `v` lies in the relation span.
    pub fn contains(&self, v: &FpVector) -> Result<bool> {
        Ok(self.project(v)?.is_zero())
    }
}
