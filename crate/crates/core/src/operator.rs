// Copyright 2026 The qudit-lgt Authors
// SPDX-License-Identifier: Apache-2.0

//! Matrix-free many-body operators on the `6^N` product space.
//!
//! Basis index convention: site 1 is the most significant base-6 digit, so the
//! product state `|s₁⟩|s₂⟩…|s_N⟩` sits at `Σ (s_n − 1)·6^(N−n)`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::site::{Level, Mat6, SITE_DIM};

pub type CMatrix = DMatrix<Complex64>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Anything that can be applied to a state vector.
pub trait LinearOperator: Sync {
    fn dim(&self) -> usize;

    /// `y ← A·x`.
    fn apply_into(&self, x: &[Complex64], y: &mut [Complex64]);

    fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut y = vec![ZERO; self.dim()];
        self.apply_into(x, &mut y);
        y
    }
}

impl LinearOperator for CMatrix {
    fn dim(&self) -> usize {
        self.nrows()
    }

    fn apply_into(&self, x: &[Complex64], y: &mut [Complex64]) {
        for (r, out) in y.iter_mut().enumerate() {
            let mut acc = ZERO;
            for (col, &xv) in x.iter().enumerate() {
                acc += self[(r, col)] * xv;
            }
            *out = acc;
        }
    }
}

pub fn product_index(levels: &[Level]) -> usize {
    levels.iter().fold(0, |acc, l| acc * SITE_DIM + l.index())
}

/// 0-based level index of 1-based `site` inside the basis index `index`.
#[inline]
pub fn digit(index: usize, site: usize, n_sites: usize) -> usize {
    (index / SITE_DIM.pow((n_sites - site) as u32)) % SITE_DIM
}

pub fn levels_of(index: usize, n_sites: usize) -> Vec<Level> {
    (1..=n_sites).map(|n| Level::from_index(digit(index, n, n_sites))).collect()
}

/// Sparse entries `(row, col, value)` of a dense local matrix.
pub fn sparse_entries(m: &CMatrix) -> Vec<(usize, usize, Complex64)> {
    let mut out = Vec::new();
    for col in 0..m.ncols() {
        for r in 0..m.nrows() {
            let v = m[(r, col)];
            if v.norm_sqr() > 0.0 {
                out.push((r, col, v));
            }
        }
    }
    out
}

/// In-place application of a local operator on consecutive sites
/// `first_site .. first_site + span` (1-based) of a vector whose layout is
/// `6^N` qudit digits followed by a trailing factor of size `tail`.
pub fn apply_local(
    x: &mut [Complex64],
    n_sites: usize,
    tail: usize,
    first_site: usize,
    span: usize,
    entries: &[(usize, usize, Complex64)],
) {
    let block = SITE_DIM.pow(span as u32);
    let inner = SITE_DIM.pow((n_sites + 1 - first_site - span) as u32) * tail;
    let chunk_len = block * inner;
    let mut scratch = vec![ZERO; chunk_len];
    for chunk in x.chunks_exact_mut(chunk_len) {
        scratch.copy_from_slice(chunk);
        chunk.fill(ZERO);
        for &(r, col, v) in entries {
            let src = &scratch[col * inner..(col + 1) * inner];
            let dst = &mut chunk[r * inner..(r + 1) * inner];
            for (d, s) in dst.iter_mut().zip(src) {
                *d += v * s;
            }
        }
    }
}

/// Local term with its entries grouped by output row.
#[derive(Clone, Debug)]
struct PreparedTerm {
    first_site: usize,
    span: usize,
    rows: Vec<Vec<(usize, Complex64)>>,
}

#[derive(Clone, Debug)]
struct Prepared {
    diag: Vec<f64>,
    terms: Vec<PreparedTerm>,
}

/// Below this dimension the thread pool costs more than it saves.
const PARALLEL_DIM: usize = 6usize.pow(6);

/// `y += op·x` for a prepared local term. Each output slice is written by
/// exactly one task, so the result does not depend on the thread count.
fn accumulate_local(x: &[Complex64], y: &mut [Complex64], n_sites: usize, term: &PreparedTerm) {
    let block = SITE_DIM.pow(term.span as u32);
    let inner = SITE_DIM.pow((n_sites + 1 - term.first_site - term.span) as u32);
    let chunk_len = block * inner;
    let kernel = |idx: usize, dst: &mut [Complex64]| {
        let chunk = idx / block;
        let r = idx % block;
        let base = chunk * chunk_len;
        for &(col, v) in &term.rows[r] {
            let src = &x[base + col * inner..base + (col + 1) * inner];
            for (d, s) in dst.iter_mut().zip(src) {
                *d += v * s;
            }
        }
    };
    if y.len() >= PARALLEL_DIM {
        use rayon::prelude::*;
        y.par_chunks_mut(inner).enumerate().for_each(|(i, d)| kernel(i, d));
    } else {
        y.chunks_mut(inner).enumerate().for_each(|(i, d)| kernel(i, d));
    }
}

/// Applies a dense operator on an arbitrary set of tensor factors.
///
/// `dims` lists every factor dimension in index order (most significant
/// first); `targets` names the factors the operator acts on, in the order
/// used by the operator's own row/column index.
pub fn apply_on_factors(x: &mut [Complex64], dims: &[usize], targets: &[usize], op: &CMatrix) {
    let total: usize = dims.iter().product();
    assert_eq!(x.len(), total);
    let block: usize = targets.iter().map(|&t| dims[t]).product();
    assert_eq!(op.nrows(), block);
    let mut strides = vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * dims[k + 1];
    }
    // offset of each local multi-index inside a global index
    let local_offsets: Vec<usize> = (0..block)
        .map(|mut b| {
            let mut off = 0;
            for &t in targets.iter().rev() {
                off += (b % dims[t]) * strides[t];
                b /= dims[t];
            }
            off
        })
        .collect();
    let entries = sparse_entries(op);
    let mut gathered = vec![ZERO; block];
    let mut result = vec![ZERO; block];
    for base in 0..total {
        if targets.iter().any(|&t| (base / strides[t]) % dims[t] != 0) {
            continue;
        }
        for (g, &off) in gathered.iter_mut().zip(&local_offsets) {
            *g = x[base + off];
        }
        result.fill(ZERO);
        for &(r, col, v) in &entries {
            result[r] += v * gathered[col];
        }
        for (&rv, &off) in result.iter().zip(&local_offsets) {
            x[base + off] = rv;
        }
    }
}

/// Sum of one- and two-site terms on an open chain.
#[derive(Clone, Debug)]
pub struct ManyBodyOperator {
    n_sites: usize,
    /// `(first_site, span) → local matrix`, 1-based sites.
    terms: BTreeMap<(usize, usize), CMatrix>,
    prepared: OnceLock<Prepared>,
}

impl ManyBodyOperator {
    pub fn new(n_sites: usize) -> Self {
        ManyBodyOperator { n_sites, terms: BTreeMap::new(), prepared: OnceLock::new() }
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn add_site_term(&mut self, site: usize, m: &Mat6, coeff: f64) {
        assert!(site >= 1 && site <= self.n_sites);
        let local = CMatrix::from_fn(SITE_DIM, SITE_DIM, |r, c| m[(r, c)] * coeff);
        self.add_local(site, 1, local);
    }

    /// Adds `coeff · left_site ⊗ right_site+1`.
    pub fn add_bond_term(&mut self, site: usize, left: &Mat6, right: &Mat6, coeff: f64) {
        assert!(site >= 1 && site < self.n_sites);
        let d = SITE_DIM;
        let local = CMatrix::from_fn(d * d, d * d, |r, c| {
            left[(r / d, c / d)] * right[(r % d, c % d)] * coeff
        });
        self.add_local(site, 2, local);
    }

    pub fn add_local(&mut self, first_site: usize, span: usize, local: CMatrix) {
        let dim = SITE_DIM.pow(span as u32);
        assert_eq!(local.nrows(), dim);
        assert!(first_site + span - 1 <= self.n_sites);
        self.prepared = OnceLock::new();
        self.terms
            .entry((first_site, span))
            .and_modify(|m| *m += &local)
            .or_insert(local);
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &CMatrix)> {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    pub fn scaled(&self, s: f64) -> Self {
        let mut out = self.clone();
        out.prepared = OnceLock::new();
        for m in out.terms.values_mut() {
            *m *= Complex64::new(s, 0.0);
        }
        out
    }

    pub fn plus(&self, other: &ManyBodyOperator) -> Result<Self> {
        if other.n_sites != self.n_sites {
            return Err(Error::DimensionMismatch { expected: self.n_sites, found: other.n_sites });
        }
        let mut out = self.clone();
        for (&(s, span), m) in &other.terms {
            out.add_local(s, span, m.clone());
        }
        Ok(out)
    }

    /// Replaces every local matrix on site `n` by `u m u†` (two-site terms use
    /// `u ⊗ 1` or `1 ⊗ u` on the matching factor).
    pub fn conjugate_sites(&self, u: &Mat6, on_site: impl Fn(usize) -> bool) -> Self {
        let d = SITE_DIM;
        let id = Mat6::identity();
        let mut out = ManyBodyOperator::new(self.n_sites);
        for (&(s, span), m) in &self.terms {
            let conj = if span == 1 {
                let us = if on_site(s) { u } else { &id };
                let uu = CMatrix::from_fn(d, d, |r, c| us[(r, c)]);
                &uu * m * uu.adjoint()
            } else {
                let ul = if on_site(s) { u } else { &id };
                let ur = if on_site(s + 1) { u } else { &id };
                let uu = CMatrix::from_fn(d * d, d * d, |r, c| ul[(r / d, c / d)] * ur[(r % d, c % d)]);
                &uu * m * uu.adjoint()
            };
            out.add_local(s, span, conj);
        }
        out
    }

    /// Real part of the diagonal of every diagonal one-site term, summed.
    pub fn diagonal(&self) -> Vec<f64> {
        let dim = self.dim();
        let mut diag = vec![0.0; dim];
        for (&(s, span), m) in &self.terms {
            if span == 1 && is_diagonal(m) {
                for (i, d) in diag.iter_mut().enumerate() {
                    let k = digit(i, s, self.n_sites);
                    *d += m[(k, k)].re;
                }
            }
        }
        diag
    }

    pub fn is_diagonal(&self) -> bool {
        self.terms.iter().all(|(&(_, span), m)| span == 1 && is_diagonal(m))
    }

    pub fn to_dense(&self) -> CMatrix {
        let dim = self.dim();
        let mut out = CMatrix::zeros(dim, dim);
        let mut e = vec![ZERO; dim];
        for col in 0..dim {
            e.fill(ZERO);
            e[col] = Complex64::new(1.0, 0.0);
            let y = self.apply(&e);
            for (r, v) in y.into_iter().enumerate() {
                out[(r, col)] = v;
            }
        }
        out
    }

    /// Largest entrywise `|H − H†|` over the local terms, relative to the
    /// largest entry.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut defect: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for m in self.terms.values() {
            let diff = m - m.adjoint();
            defect = defect.max(diff.iter().map(|z| z.norm()).fold(0.0, f64::max));
            scale = scale.max(m.iter().map(|z| z.norm()).fold(0.0, f64::max));
        }
        if scale == 0.0 {
            0.0
        } else {
            defect / scale
        }
    }

    pub fn expectation(&self, x: &[Complex64]) -> Complex64 {
        let y = self.apply(x);
        x.iter().zip(&y).map(|(a, b)| a.conj() * b).sum()
    }
}

fn is_diagonal(m: &CMatrix) -> bool {
    (0..m.nrows()).all(|r| (0..m.ncols()).all(|c| r == c || m[(r, c)].norm_sqr() == 0.0))
}

impl LinearOperator for ManyBodyOperator {
    fn dim(&self) -> usize {
        SITE_DIM.pow(self.n_sites as u32)
    }

    fn apply_into(&self, x: &[Complex64], y: &mut [Complex64]) {
        assert_eq!(x.len(), self.dim());
        assert_eq!(y.len(), self.dim());
        let prep = self.prepared();
        for ((out, &xv), &d) in y.iter_mut().zip(x).zip(&prep.diag) {
            *out = xv * d;
        }
        for term in &prep.terms {
            accumulate_local(x, y, self.n_sites, term);
        }
    }
}

impl ManyBodyOperator {
    fn prepared(&self) -> &Prepared {
        self.prepared.get_or_init(|| {
            let terms = self
                .terms
                .iter()
                .filter(|(&(_, span), m)| !(span == 1 && is_diagonal(m)))
                .map(|(&(first_site, span), m)| {
                    let mut rows = vec![Vec::new(); m.nrows()];
                    for (r, col, v) in sparse_entries(m) {
                        rows[r].push((col, v));
                    }
                    PreparedTerm { first_site, span, rows }
                })
                .collect();
            Prepared { diag: self.diagonal(), terms }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::site;

    #[test]
    fn digits_round_trip() {
        let levels: Vec<Level> = [5u8, 1, 3, 6].iter().map(|&l| Level::new(l).unwrap()).collect();
        let idx = product_index(&levels);
        assert_eq!(levels_of(idx, 4), levels);
        assert_eq!(digit(idx, 3, 4), 2);
    }

    #[test]
    fn local_apply_matches_dense_kron() {
        let mut op = ManyBodyOperator::new(3);
        op.add_bond_term(2, &site::a1(), &site::b1(), 1.0);
        op.add_site_term(1, &site::cyclic_shift(), 1.0);
        let dense = op.to_dense();
        // kron(X, A1 ⊗ B1) + kron(X, 1, 1) built by hand
        let id = CMatrix::identity(6, 6);
        let to_d = |m: &Mat6| CMatrix::from_fn(6, 6, |r, c| m[(r, c)]);
        let ab = to_d(&site::a1()).kronecker(&to_d(&site::b1()));
        let expected = id.kronecker(&ab) + to_d(&site::cyclic_shift()).kronecker(&id).kronecker(&id);
        assert!((dense - expected).iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn factor_application_agrees_with_consecutive_path() {
        let m = CMatrix::from_fn(36, 36, |r, c| Complex64::new((r * 7 + c) as f64 % 5.0, (r + 2 * c) as f64 % 3.0));
        let x: Vec<Complex64> = (0..216).map(|i| Complex64::new(i as f64, -(i as f64) / 3.0)).collect();
        let mut a = x.clone();
        apply_local(&mut a, 3, 1, 2, 2, &sparse_entries(&m));
        let mut b = x.clone();
        apply_on_factors(&mut b, &[6, 6, 6], &[1, 2], &m);
        assert!(a.iter().zip(&b).all(|(p, q)| (p - q).norm() < 1e-9));
    }
}
