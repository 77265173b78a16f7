//! Finite Grassmannians Gr(i, F^n): Gaussian binomials, canonical
//! enumeration by reduced row echelon bases, containment, and the nesting
//! incidence relation `l ⊂ L` between two Grassmannians.
//!
//! Subspaces are ordered first by their pivot-column set (lexicographically)
//! and then by their free entries, read row-major, under the field-element
//! order. The id of a subspace is its position in that order and can be
//! computed directly from the basis (see [`subspace_rank`]), so ids agree
//! between a materialized [`GrassmannTable`] and any subspace built on the fly.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::ffield::{rref, FieldError, FieldSpec, Ffe, MatGF};

/// Refuse to materialize Grassmannians with more elements than this.
pub const MAX_TABLE_SIZE: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrassmannError {
    #[error("need 0 < dim < n, got dim = {dim}, n = {n}")]
    BadDimensions { n: usize, dim: usize },
    #[error("need 1 <= i < j <= n - 1, got i = {i}, j = {j}, n = {n}")]
    BadIncidence { i: usize, j: usize, n: usize },
    #[error("Grassmannian has {count} elements, above the limit of {MAX_TABLE_SIZE}")]
    TooLarge { count: BigUint },
    #[error("subspaces live in different ambient spaces ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Number of `i`-dimensional subspaces of `F_q^n`, by the exact product
/// formula `prod_{t<i} (q^{n-t} - 1) / (q^{t+1} - 1)`.
pub fn gaussian_binomial(n: usize, i: usize, q: u64) -> BigUint {
    assert!(i <= n, "gaussian_binomial needs i <= n");
    assert!(q >= 2, "gaussian_binomial needs q >= 2");
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for t in 0..i {
        num *= q.pow((n - t) as u32) - 1u32;
        den *= q.pow((t + 1) as u32) - 1u32;
    }
    num / den
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(pos) = (0..k).rev().find(|&t| cur[t] < n - k + t) else {
            break;
        };
        cur[pos] += 1;
        for t in pos + 1..k {
            cur[t] = cur[t - 1] + 1;
        }
    }
    out
}

/// Free (non-pivot) positions of an rref basis with the given pivots,
/// row-major.
fn free_positions(n: usize, pivots: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (r, &pc) in pivots.iter().enumerate() {
        for c in pc + 1..n {
            if !pivots.contains(&c) {
                out.push((r, c));
            }
        }
    }
    out
}

/// An element of Gr(dim, F^n), stored by its canonical rref basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    n: usize,
    dim: usize,
    basis: MatGF,
    pivots: Vec<usize>,
    id: u64,
}

impl Subspace {
    /// Row space of `rows`, as a canonical subspace of F^n.
    pub fn span(field: &FieldSpec, rows: &MatGF) -> Result<Self, GrassmannError> {
        let n = rows.cols();
        let red = rref(field, rows);
        if red.rank == 0 || red.rank >= n {
            return Err(GrassmannError::BadDimensions { n, dim: red.rank });
        }
        let id = subspace_rank(field, n, &red.matrix, &red.pivots)?;
        Ok(Subspace { n, dim: red.rank, basis: red.matrix, pivots: red.pivots, id })
    }

    /// Span of vectors with integer coordinates mapped into the prime subfield.
    pub fn span_ints(field: &FieldSpec, rows: &[&[i64]]) -> Result<Self, GrassmannError> {
        Self::span(field, &MatGF::from_ints(field, rows)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &MatGF {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    /// Whether `v` lies in this subspace.
    pub fn contains_vector(&self, field: &FieldSpec, v: &[Ffe]) -> bool {
        let mut w = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let f = w[pc];
            if f.is_zero() {
                continue;
            }
            for (c, &b) in self.basis.row(r).iter().enumerate() {
                w[c] = field.sub(w[c], field.mul(f, b));
            }
        }
        w.iter().all(|e| e.is_zero())
    }
}

/// Position of the rref basis `basis` (with pivot columns `pivots`) in the
/// canonical order of Gr(dim, F^n).
pub fn subspace_rank(
    field: &FieldSpec,
    n: usize,
    basis: &MatGF,
    pivots: &[usize],
) -> Result<u64, GrassmannError> {
    let dim = pivots.len();
    let q = field.q() as u64;
    let too_large = || GrassmannError::TooLarge { count: gaussian_binomial(n, dim, q) };
    let mut offset = 0u64;
    for cand in combinations(n, dim) {
        if cand.as_slice() == pivots {
            break;
        }
        let block = q.checked_pow(free_positions(n, &cand).len() as u32).ok_or_else(too_large)?;
        offset = offset.checked_add(block).ok_or_else(too_large)?;
    }
    q.checked_pow(free_positions(n, pivots).len() as u32)
        .and_then(|b| b.checked_add(offset))
        .ok_or_else(too_large)?;
    let local = free_positions(n, pivots)
        .iter()
        .fold(0u64, |acc, &(r, c)| acc * q + basis.get(r, c).code() as u64);
    Ok(offset + local)
}

/// Whether `small ⊂ big`.
pub fn contains(field: &FieldSpec, small: &Subspace, big: &Subspace) -> Result<bool, GrassmannError> {
    if small.n != big.n {
        return Err(GrassmannError::AmbientMismatch(small.n, big.n));
    }
    if small.dim > big.dim {
        return Ok(false);
    }
    Ok((0..small.dim).all(|r| big.contains_vector(field, small.basis.row(r))))
}

/// Materialized Gr(dim, F^n) in canonical order.
#[derive(Debug, Clone)]
pub struct GrassmannTable {
    field: FieldSpec,
    n: usize,
    dim: usize,
    subspaces: Vec<Subspace>,
    index: HashMap<Vec<Ffe>, usize>,
}

/// Enumerates every `dim`-dimensional subspace of F^n.
pub fn enumerate_subspaces(n: usize, dim: usize, field: &FieldSpec) -> Result<GrassmannTable, GrassmannError> {
    if dim == 0 || dim >= n {
        return Err(GrassmannError::BadDimensions { n, dim });
    }
    let total = gaussian_binomial(n, dim, field.q() as u64);
    if total > BigUint::from(MAX_TABLE_SIZE) {
        return Err(GrassmannError::TooLarge { count: total });
    }
    let q = field.q();
    let mut subspaces = Vec::with_capacity(total.to_usize().unwrap_or(0));
    let mut index = HashMap::with_capacity(subspaces.capacity());
    for pivots in combinations(n, dim) {
        let free = free_positions(n, &pivots);
        let mut template = MatGF::zeros(dim, n);
        for (r, &pc) in pivots.iter().enumerate() {
            template.set(r, pc, field.one());
        }
        // odometer over the free entries, last position fastest
        let mut digits = vec![0u32; free.len()];
        loop {
            let mut basis = template.clone();
            for (&(r, c), &d) in free.iter().zip(&digits) {
                basis.set(r, c, field.from_code(d).expect("digit below q"));
            }
            let id = subspaces.len() as u64;
            index.insert(basis.entries().to_vec(), subspaces.len());
            subspaces.push(Subspace { n, dim, basis, pivots: pivots.clone(), id });
            let Some(pos) = (0..digits.len()).rev().find(|&t| digits[t] + 1 < q) else {
                break;
            };
            digits[pos] += 1;
            digits[pos + 1..].iter_mut().for_each(|d| *d = 0);
        }
    }
    Ok(GrassmannTable { field: field.clone(), n, dim, subspaces, index })
}

impl GrassmannTable {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    pub fn get(&self, id: usize) -> &Subspace {
        &self.subspaces[id]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Subspace> {
        self.subspaces.iter()
    }

    /// Id of the subspace with this canonical (rref) basis.
    pub fn lookup(&self, basis: &MatGF) -> Option<usize> {
        self.index.get(basis.entries()).copied()
    }

    /// Id of an arbitrary subspace of the right shape, via the hash index.
    pub fn id_of(&self, s: &Subspace) -> Option<usize> {
        if s.n != self.n || s.dim != self.dim {
            return None;
        }
        self.lookup(&s.basis)
    }

    /// One subspace per line: the id, then the flattened basis entries as
    /// decimal coefficient vectors, tab-separated.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for s in &self.subspaces {
            write!(out, "{}", s.id).unwrap();
            for &e in s.basis.entries() {
                write!(out, "\t{}", self.field.format(e)).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// The bipartite relation `l ⊂ L` between Gr(i, F^n) and Gr(j, F^n).
#[derive(Debug, Clone)]
pub struct NestingIncidence {
    left: GrassmannTable,
    right: GrassmannTable,
    adjacency: Vec<Vec<usize>>,
    right_adjacency: Vec<Vec<usize>>,
}

/// Builds the nesting incidence. Each `j`-plane `L` is expanded into its
/// `i`-dimensional subspaces through coordinates in Gr(i, F^j).
pub fn incidence_graph(i: usize, j: usize, n: usize, field: &FieldSpec) -> Result<NestingIncidence, GrassmannError> {
    if i == 0 || i >= j || j + 1 > n {
        return Err(GrassmannError::BadIncidence { i, j, n });
    }
    let left = enumerate_subspaces(n, i, field)?;
    let right = enumerate_subspaces(n, j, field)?;
    let coords = enumerate_subspaces(j, i, field)?;
    let mut adjacency = vec![Vec::new(); left.len()];
    let mut right_adjacency = Vec::with_capacity(right.len());
    for big in right.iter() {
        let mut lefts = Vec::with_capacity(coords.len());
        for c in coords.iter() {
            let rows = c.basis().mul(field, big.basis())?;
            let sub = Subspace::span(field, &rows)?;
            let id = sub.id as usize;
            debug_assert_eq!(left.id_of(&sub), Some(id));
            adjacency[id].push(big.id as usize);
            lefts.push(id);
        }
        lefts.sort_unstable();
        right_adjacency.push(lefts);
    }
    // right ids were visited in increasing order, so each list is already sorted
    Ok(NestingIncidence { left, right, adjacency, right_adjacency })
}

impl NestingIncidence {
    pub fn left(&self) -> &GrassmannTable {
        &self.left
    }

    pub fn right(&self) -> &GrassmannTable {
        &self.right
    }

    pub fn field(&self) -> &FieldSpec {
        self.left.field()
    }

    /// Sorted right ids `L` with `l ⊂ L`.
    pub fn neighbors(&self, left_id: usize) -> &[usize] {
        &self.adjacency[left_id]
    }

    /// Sorted left ids `l` with `l ⊂ L`.
    pub fn right_neighbors(&self, right_id: usize) -> &[usize] {
        &self.right_adjacency[right_id]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }

    pub fn is_edge(&self, left_id: usize, right_id: usize) -> bool {
        self.adjacency[left_id].binary_search(&right_id).is_ok()
    }

    /// `(i, j, n)`.
    pub fn dims(&self) -> (usize, usize, usize) {
        (self.left.dim, self.right.dim, self.left.n)
    }

    /// Expected left degree: Gaussian binomial `[n-i, j-i]_q`.
    pub fn expected_left_degree(&self) -> BigUint {
        let (i, j, n) = self.dims();
        gaussian_binomial(n - i, j - i, self.field().q() as u64)
    }

    /// Expected right degree: Gaussian binomial `[j, i]_q`.
    pub fn expected_right_degree(&self) -> BigUint {
        let (i, j, _) = self.dims();
        gaussian_binomial(j, i, self.field().q() as u64)
    }

    /// Checks both degree invariants.
    pub fn degrees_match(&self) -> bool {
        let ld = self.expected_left_degree();
        let rd = self.expected_right_degree();
        self.adjacency.iter().all(|a| BigUint::from(a.len()) == ld)
            && self.right_adjacency.iter().all(|a| BigUint::from(a.len()) == rd)
    }
}
