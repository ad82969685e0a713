//! Arithmetic in `F_{p^k}` and the exact linear algebra every counting
//! routine runs on.
//!
//! Elements are indexes `0..q` encoding polynomial coefficient vectors in base
//! `p` (index `sum c_i p^i` is the residue of `sum c_i x^i`); all products and
//! sums go through precomputed tables, which keeps the enumeration loops flat.

use crate::error::{Error, Result};
use crate::scalar::prime_power;
use std::sync::Arc;

/// A field element, as an index into the owning field's tables.
pub type Fel = u16;

#[derive(Debug)]
struct FieldRepr {
    p: u64,
    k: u32,
    q: u64,
    /// Monic irreducible modulus, low-to-high, length k+1 (entries < p).
    modulus: Vec<u64>,
    add: Vec<Fel>,
    mul: Vec<Fel>,
    neg: Vec<Fel>,
    inv: Vec<Fel>,
}

#[derive(Debug, Clone)]
pub struct FiniteField(Arc<FieldRepr>);

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}
impl Eq for FiniteField {}

pub const DEFAULT_FIELD_CAP: u64 = 512;

impl FiniteField {
    /// Builds `F_{p^k}`, finding the modulus by deterministic search in
    /// ascending order of the coefficient index `sum c_i p^i`.
    pub fn new(p: u64, k: u32) -> Result<FiniteField> {
        Self::with_cap(p, k, DEFAULT_FIELD_CAP)
    }

    pub fn with_cap(p: u64, k: u32, cap: u64) -> Result<FiniteField> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidArg("extension degree must be >= 1".into()));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= cap)
            .ok_or(Error::CapExceeded {
                what: "field cardinality",
                needed: (p as u128).pow(k),
                cap: cap as u128,
            })?;
        let modulus = find_modulus(p, k);
        let repr = build_tables(p, k, q, modulus);
        Ok(FiniteField(Arc::new(repr)))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.0.k
    }

    pub fn cardinality(&self) -> u64 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn zero(&self) -> Fel {
        0
    }

    pub fn one(&self) -> Fel {
        1
    }

    pub fn add(&self, a: Fel, b: Fel) -> Fel {
        self.0.add[a as usize * self.0.q as usize + b as usize]
    }

    pub fn sub(&self, a: Fel, b: Fel) -> Fel {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fel, b: Fel) -> Fel {
        self.0.mul[a as usize * self.0.q as usize + b as usize]
    }

    pub fn neg(&self, a: Fel) -> Fel {
        self.0.neg[a as usize]
    }

    pub fn inv(&self, a: Fel) -> Result<Fel> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.0.inv[a as usize])
    }

    pub fn from_u64(&self, v: u64) -> Fel {
        // Integers embed through the prime subfield.
        (v % self.0.p) as Fel
    }

    pub fn elements(&self) -> impl Iterator<Item = Fel> {
        0..self.0.q as Fel
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "p": self.0.p,
            "k": self.0.k,
            "modulus": self.0.modulus,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<FiniteField> {
        let p = v
            .get("p")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| Error::Json("field needs p".into()))?;
        let k = v
            .get("k")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| Error::Json("field needs k".into()))? as u32;
        let f = FiniteField::new(p, k)?;
        if let Some(m) = v.get("modulus") {
            let m: Vec<u64> =
                serde_json::from_value(m.clone()).map_err(|e| Error::Json(e.to_string()))?;
            if m != f.0.modulus {
                return Err(Error::Json(
                    "modulus differs from the deterministic one".into(),
                ));
            }
        }
        Ok(f)
    }
}

fn is_prime(n: u64) -> bool {
    matches!(prime_power(n), Some((_, 1)))
}

/// Polynomial residue arithmetic used only while building the tables.
fn poly_of(idx: u64, p: u64, k: u32) -> Vec<u64> {
    let mut v = idx;
    (0..k)
        .map(|_| {
            let c = v % p;
            v /= p;
            c
        })
        .collect()
}

fn idx_of(poly: &[u64], p: u64) -> u64 {
    poly.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // Reduce by the monic modulus.
    for i in (k..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for (j, &mcoef) in modulus.iter().enumerate().take(k) {
            let pos = i - k + j;
            prod[pos] = (prod[pos] + c * (p - mcoef % p) % p) % p;
        }
    }
    prod.truncate(k.max(1));
    prod.resize(k.max(1), 0);
    prod
}

/// Deterministic irreducibility by exhaustive trial division with all monic
/// polynomials of degree `1..=k/2`.
fn is_irreducible(candidate: &[u64], p: u64) -> bool {
    let k = candidate.len() - 1;
    if k == 1 {
        return true;
    }
    for d in 1..=(k / 2) {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut div = poly_of(idx, p, d as u32);
            div.push(1); // monic of degree d
            if poly_divides(&div, candidate, p) {
                return false;
            }
        }
    }
    true
}

fn poly_divides(div: &[u64], target: &[u64], p: u64) -> bool {
    let mut rem: Vec<u64> = target.to_vec();
    let dd = div.len() - 1;
    while rem.len() > dd && rem.last() == Some(&0) {
        rem.pop();
    }
    while rem.len() - 1 >= dd && rem.iter().any(|&c| c != 0) {
        let shift = rem.len() - 1 - dd;
        let lead = *rem.last().unwrap();
        for (j, &c) in div.iter().enumerate() {
            let pos = shift + j;
            rem[pos] = (rem[pos] + (p - (lead * c) % p)) % p;
        }
        while rem.len() > 1 && rem.last() == Some(&0) {
            rem.pop();
        }
        if rem.iter().all(|&c| c == 0) {
            return true;
        }
        if rem.len() - 1 < dd {
            break;
        }
    }
    rem.iter().all(|&c| c == 0)
}

fn find_modulus(p: u64, k: u32) -> Vec<u64> {
    if k == 1 {
        return vec![0, 1]; // x
    }
    let count = p.pow(k);
    for idx in 0..count {
        let mut cand = poly_of(idx, p, k);
        cand.push(1);
        if is_irreducible(&cand, p) {
            return cand;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn build_tables(p: u64, k: u32, q: u64, modulus: Vec<u64>) -> FieldRepr {
    let qs = q as usize;
    let mut add = vec![0 as Fel; qs * qs];
    let mut mul = vec![0 as Fel; qs * qs];
    let mut neg = vec![0 as Fel; qs];
    let mut inv = vec![0 as Fel; qs];
    for a in 0..q {
        let pa = poly_of(a, p, k);
        let na: Vec<u64> = pa.iter().map(|&c| (p - c) % p).collect();
        neg[a as usize] = idx_of(&na, p) as Fel;
        for b in 0..q {
            let pb = poly_of(b, p, k);
            let sum: Vec<u64> = pa.iter().zip(&pb).map(|(&x, &y)| (x + y) % p).collect();
            add[a as usize * qs + b as usize] = idx_of(&sum, p) as Fel;
            let prod = poly_mul_mod(&pa, &pb, &modulus, p);
            mul[a as usize * qs + b as usize] = idx_of(&prod, p) as Fel;
        }
    }
    for a in 1..q {
        for b in 1..q {
            if mul[a as usize * qs + b as usize] == 1 {
                inv[a as usize] = b as Fel;
                break;
            }
        }
    }
    FieldRepr {
        p,
        k,
        q,
        modulus,
        add,
        mul,
        neg,
        inv,
    }
}

/// A dense matrix over a finite field, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Fel>,
}

impl FMatrix {
    pub fn zeros(rows: usize, cols: usize) -> FMatrix {
        FMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> FMatrix {
        let mut m = FMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Fel>>) -> Result<FMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::ShapeMismatch);
        }
        Ok(FMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn row(&self, i: usize) -> &[Fel] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[Fel] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, f: &FiniteField, other: &FMatrix) -> Result<FMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch);
        }
        let mut out = FMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let v = self[(i, k)];
                if v == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let t = f.mul(v, other[(k, j)]);
                    out[(i, j)] = f.add(out[(i, j)], t);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, f: &FiniteField, other: &FMatrix) -> Result<FMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch);
        }
        let mut out = self.clone();
        for (x, &y) in out.data.iter_mut().zip(&other.data) {
            *x = f.add(*x, y);
        }
        Ok(out)
    }

    pub fn sub(&self, f: &FiniteField, other: &FMatrix) -> Result<FMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch);
        }
        let mut out = self.clone();
        for (x, &y) in out.data.iter_mut().zip(&other.data) {
            *x = f.sub(*x, y);
        }
        Ok(out)
    }

    pub fn apply(&self, f: &FiniteField, v: &[Fel]) -> Result<Vec<Fel>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch);
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = 0 as Fel;
                for j in 0..self.cols {
                    acc = f.add(acc, f.mul(self[(i, j)], v[j]));
                }
                acc
            })
            .collect())
    }

    pub fn transpose(&self) -> FMatrix {
        let mut out = FMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self, f: &FiniteField) -> (FMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| m[(i, c)] != 0) else {
                continue;
            };
            m.swap_rows(r, p);
            let lead_inv = f.inv(m[(r, c)]).expect("pivot nonzero");
            for j in 0..m.cols {
                m[(r, j)] = f.mul(m[(r, j)], lead_inv);
            }
            for i in 0..m.rows {
                if i != r && m[(i, c)] != 0 {
                    let factor = m[(i, c)];
                    for j in 0..m.cols {
                        let t = f.mul(factor, m[(r, j)]);
                        m[(i, j)] = f.sub(m[(i, j)], t);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, f: &FiniteField) -> usize {
        self.rref(f).1.len()
    }

    /// Basis of the right kernel `{x : A x = 0}` as matrix rows.
    pub fn kernel_basis(&self, f: &FiniteField) -> Vec<Vec<Fel>> {
        let (r, pivots) = self.rref(f);
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut x = vec![0 as Fel; self.cols];
            x[free] = 1;
            for (c, slot) in pivot_set.iter().enumerate() {
                if let Some(row) = slot {
                    x[c] = f.neg(r[(*row, free)]);
                }
            }
            basis.push(x);
        }
        basis
    }

    /// One solution of `A x = b`, or `None` when inconsistent.
    pub fn solve(&self, f: &FiniteField, b: &[Fel]) -> Result<Option<Vec<Fel>>> {
        if b.len() != self.rows {
            return Err(Error::ShapeMismatch);
        }
        let mut aug = FMatrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, self.cols)] = b[i];
        }
        let (r, pivots) = aug.rref(f);
        if pivots.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0 as Fel; self.cols];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = r[(row, self.cols)];
        }
        Ok(Some(x))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!((0..self.rows)
            .map(|i| self.row(i).to_vec())
            .collect::<Vec<_>>())
    }

    pub fn from_json(v: &serde_json::Value, rows: usize, cols: usize) -> Result<FMatrix> {
        let data: Vec<Vec<Fel>> =
            serde_json::from_value(v.clone()).map_err(|e| Error::Json(e.to_string()))?;
        if data.len() != rows || data.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch);
        }
        FMatrix::from_rows(data)
    }
}

impl std::ops::Index<(usize, usize)> for FMatrix {
    type Output = Fel;
    fn index(&self, (i, j): (usize, usize)) -> &Fel {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for FMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Fel {
        &mut self.data[i * self.cols + j]
    }
}

/// The Gaussian binomial `[n d]_q` as an exact count.
pub fn gaussian_binomial(n: usize, d: usize, q: u64) -> u128 {
    if d > n {
        return 0;
    }
    // Product formula with exact integer division per step.
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..d {
        num *= (q as u128).pow((n - i) as u32) - 1;
        den *= (q as u128).pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Iterates over all `d`-dimensional subspaces of `F^n`, each yielded exactly
/// once as its reduced-row-echelon basis matrix (`d` rows, `n` cols).
pub struct SubspaceIter {
    field: FiniteField,
    n: usize,
    d: usize,
    pivots: Option<Vec<usize>>,
    free_positions: Vec<(usize, usize)>,
    counter: Vec<Fel>,
    done: bool,
}

/// Checks the subspace-count cap and returns the iterator.
pub fn subspaces(field: &FiniteField, n: usize, d: usize, cap: u128) -> Result<SubspaceIter> {
    let count = gaussian_binomial(n, d, field.cardinality());
    if count > cap {
        return Err(Error::CapExceeded {
            what: "subspace enumeration",
            needed: count,
            cap,
        });
    }
    let mut it = SubspaceIter {
        field: field.clone(),
        n,
        d,
        pivots: None,
        free_positions: Vec::new(),
        counter: Vec::new(),
        done: d > n,
    };
    if !it.done {
        it.init_pivots((0..d).collect());
    }
    Ok(it)
}

impl SubspaceIter {
    fn init_pivots(&mut self, pivots: Vec<usize>) {
        // Free positions: (row i, col j) with j > pivot_i and j not a pivot.
        let mut free = Vec::new();
        for (i, &pc) in pivots.iter().enumerate() {
            for j in (pc + 1)..self.n {
                if !pivots.contains(&j) {
                    free.push((i, j));
                }
            }
        }
        self.counter = vec![0; free.len()];
        self.free_positions = free;
        self.pivots = Some(pivots);
    }

    fn next_pivots(&mut self) -> bool {
        // Advance the pivot-column combination in lexicographic order.
        let Some(mut pivots) = self.pivots.take() else {
            return false;
        };
        let d = self.d;
        let n = self.n;
        if d == 0 {
            return false;
        }
        let mut i = d;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if pivots[i] < n - (d - i) {
                pivots[i] += 1;
                for j in (i + 1)..d {
                    pivots[j] = pivots[j - 1] + 1;
                }
                self.init_pivots(pivots);
                return true;
            }
        }
    }

    fn current(&self) -> FMatrix {
        let pivots = self.pivots.as_ref().unwrap();
        let mut m = FMatrix::zeros(self.d, self.n);
        for (i, &pc) in pivots.iter().enumerate() {
            m[(i, pc)] = 1;
        }
        for (slot, &(i, j)) in self.free_positions.iter().enumerate() {
            m[(i, j)] = self.counter[slot];
        }
        m
    }
}

impl Iterator for SubspaceIter {
    type Item = FMatrix;

    fn next(&mut self) -> Option<FMatrix> {
        if self.done {
            return None;
        }
        if self.d == 0 {
            self.done = true;
            return Some(FMatrix::zeros(0, self.n));
        }
        if self.pivots.is_none() {
            return None;
        }
        let out = self.current();
        // Advance the odometer over free entries.
        let q = self.field.cardinality() as Fel;
        let mut i = 0;
        loop {
            if i == self.counter.len() {
                if !self.next_pivots() {
                    self.done = true;
                }
                break;
            }
            self.counter[i] += 1;
            if self.counter[i] < q {
                break;
            }
            self.counter[i] = 0;
            i += 1;
        }
        Some(out)
    }
}

/// Is `v` in the row space of the rref basis `b`? (Reduction against pivots.)
pub fn in_row_space(f: &FiniteField, b: &FMatrix, v: &[Fel]) -> bool {
    let mut v = v.to_vec();
    for i in 0..b.rows {
        let Some(pc) = (0..b.cols).find(|&j| b[(i, j)] != 0) else {
            continue;
        };
        if v[pc] != 0 {
            let factor = f.mul(v[pc], f.inv(b[(i, pc)]).unwrap());
            for j in 0..b.cols {
                let t = f.mul(factor, b[(i, j)]);
                v[j] = f.sub(v[j], t);
            }
        }
    }
    v.iter().all(|&x| x == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_has_unique_modulus() {
        let f = FiniteField::new(2, 2).unwrap();
        assert_eq!(f.cardinality(), 4);
        assert_eq!(f.modulus(), &[1, 1, 1]); // x^2 + x + 1
    }

    #[test]
    fn f9_modulus_deterministic() {
        let f = FiniteField::new(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]); // x^2 + 1 over F3
    }

    #[test]
    fn non_prime_rejected() {
        assert!(matches!(FiniteField::new(4, 1), Err(Error::NotPrime(4))));
        assert!(FiniteField::with_cap(2, 10, 512).is_err());
    }

    #[test]
    fn field_axioms_all_small_fields() {
        for (p, k) in [(2u64, 1u32), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)] {
            let f = FiniteField::new(p, k).unwrap();
            let q = f.cardinality() as Fel;
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_additive() {
        let f = FiniteField::new(2, 3).unwrap();
        let frob = |x: Fel| f.mul(x, x);
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(frob(f.add(a, b)), f.add(frob(a), frob(b)));
            }
        }
    }

    #[test]
    fn rref_solve_kernel() {
        let f = FiniteField::new(2, 1).unwrap();
        let z = FMatrix::zeros(2, 2);
        assert_eq!(z.kernel_basis(&f).len(), 2);
        let ones = FMatrix::from_rows(vec![vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(ones.rank(&f), 1);
        let id = FMatrix::identity(3);
        let b = vec![1, 0, 1];
        assert_eq!(id.solve(&f, &b).unwrap().unwrap(), b);
        // rref is idempotent.
        let m = FMatrix::from_rows(vec![vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        let (r1, _) = m.rref(&f);
        let (r2, _) = r1.rref(&f);
        assert_eq!(r1, r2);
        // Inconsistent system flagged, not an error.
        let a = FMatrix::from_rows(vec![vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(a.solve(&f, &[0, 1]).unwrap(), None);
        // Kernel round-trip: A x = 0 for every basis vector.
        let a = FMatrix::from_rows(vec![vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        for x in a.kernel_basis(&f) {
            assert!(a.apply(&f, &x).unwrap().iter().all(|&v| v == 0));
        }
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        for (p, k) in [(2u64, 1u32), (2, 2), (3, 1), (3, 2)] {
            let f = FiniteField::new(p, k).unwrap();
            let q = f.cardinality();
            for n in 0..=4usize {
                for d in 0..=n {
                    let count = subspaces(&f, n, d, 1 << 30).unwrap().count() as u128;
                    assert_eq!(
                        count,
                        gaussian_binomial(n, d, q),
                        "mismatch at q={q}, n={n}, d={d}"
                    );
                }
            }
        }
    }

    #[test]
    fn subspace_iter_spec_examples() {
        let f2 = FiniteField::new(2, 1).unwrap();
        assert_eq!(subspaces(&f2, 2, 1, 100).unwrap().count(), 3);
        assert_eq!(subspaces(&f2, 3, 0, 100).unwrap().count(), 1);
        let f4 = FiniteField::new(2, 2).unwrap();
        assert_eq!(subspaces(&f4, 2, 1, 100).unwrap().count(), 5);
        // The cap fails loudly.
        assert!(matches!(
            subspaces(&f4, 4, 2, 10),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn row_space_membership() {
        let f = FiniteField::new(2, 1).unwrap();
        let b = FMatrix::from_rows(vec![vec![1, 0, 1]]).unwrap();
        assert!(in_row_space(&f, &b, &[1, 0, 1]));
        assert!(!in_row_space(&f, &b, &[1, 1, 0]));
        assert!(in_row_space(&f, &b, &[0, 0, 0]));
    }

    #[test]
    fn json_round_trip() {
        let f = FiniteField::new(3, 2).unwrap();
        let j = f.to_json();
        let back = FiniteField::from_json(&j).unwrap();
        assert_eq!(back, f);
    }
}
