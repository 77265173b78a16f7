//! Nesting maps between finite Grassmannians.
//!
//! A nesting map sends each `i`-plane `l` to a `j`-plane containing it.
//! When `i + j = n` a bijective one exists; here it is produced as a perfect
//! matching in the incidence graph, which is the same thing as a system of
//! distinct representatives for the family `X_l = { L : l ⊂ L }`. Sampled
//! Hall-condition checks are available as diagnostics.
//!
//! For lines and hyperplanes in even dimension there is also the explicit
//! map `l ↦ l^⊥` for an alternating form, and a classifier that compares the
//! alternating property of a Gram matrix with the nesting property of the
//! induced map on lines.

use std::collections::VecDeque;
use std::fmt::Write as _;

use num_traits::ToPrimitive;
use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::ffield::{is_invertible, kernel, FieldError, FieldSpec, MatGF};
use crate::grassmann::{contains, enumerate_subspaces, GrassmannError, GrassmannTable, NestingIncidence, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NestingError {
    #[error("alternating forms need an even ambient dimension, got {0}")]
    OddDimension(usize),
    #[error("Gram matrix is singular")]
    Singular,
    #[error("Gram matrix is not alternating")]
    NotAlternating,
    #[error("Gram matrix must be square of size {expected}, got {rows}x{cols}")]
    Shape { expected: usize, rows: usize, cols: usize },
    #[error("the counting argument needs i + j = n, got i = {i}, j = {j}, n = {n}")]
    NotComplementary { i: usize, j: usize, n: usize },
    #[error("assignment is not injective: right vertex {0} used twice")]
    NotInjective(usize),
    #[error("right vertex {right} out of range for left vertex {left}")]
    OutOfRange { left: usize, right: usize },
    #[error("exhaustive sweep over {0} matrices is too large")]
    SweepTooLarge(u64),
    #[error(transparent)]
    Grassmann(#[from] GrassmannError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A partial injective assignment from left ids to right ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    left_len: usize,
    right_len: usize,
    pairs: Vec<Option<usize>>,
    size: usize,
}

impl Matching {
    pub fn from_pairs(right_len: usize, pairs: Vec<Option<usize>>) -> Result<Self, NestingError> {
        let mut used = vec![false; right_len];
        for (left, r) in pairs.iter().enumerate() {
            let Some(r) = *r else { continue };
            if r >= right_len {
                return Err(NestingError::OutOfRange { left, right: r });
            }
            if std::mem::replace(&mut used[r], true) {
                return Err(NestingError::NotInjective(r));
            }
        }
        let size = pairs.iter().flatten().count();
        Ok(Matching { left_len: pairs.len(), right_len, pairs, size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn left_len(&self) -> usize {
        self.left_len
    }

    pub fn right_len(&self) -> usize {
        self.right_len
    }

    /// Every left vertex is matched.
    pub fn is_saturating(&self) -> bool {
        self.size == self.left_len
    }

    /// Both sides are saturated, i.e. the assignment is a bijection.
    pub fn is_perfect(&self) -> bool {
        self.is_saturating() && self.size == self.right_len
    }

    pub fn get(&self, left: usize) -> Option<usize> {
        self.pairs[left]
    }

    /// Matched `(left, right)` pairs in left-id order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().enumerate().filter_map(|(l, r)| r.map(|r| (l, r)))
    }

    /// Checks every pair geometrically, `left[l] ⊂ right[r]`, independently of
    /// any incidence graph. Returns the number of pairs that fail.
    pub fn count_non_nesting(&self, left: &GrassmannTable, right: &GrassmannTable) -> Result<usize, NestingError> {
        let field = left.field();
        let mut bad = 0;
        for (l, r) in self.pairs() {
            if !contains(field, left.get(l), right.get(r))? {
                bad += 1;
            }
        }
        Ok(bad)
    }

    /// `leftId<TAB>rightId` per matched pair.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (l, r) in self.pairs() {
            writeln!(out, "{l}\t{r}").unwrap();
        }
        out
    }
}

const UNMATCHED: usize = usize::MAX;
const UNREACHED: usize = usize::MAX;

/// Maximum matching of the nesting incidence by phased augmenting paths
/// (Hopcroft–Karp). Left vertices are processed in id order and adjacency in
/// increasing right id, so the output is deterministic. When `i + j = n`
/// the result is perfect, i.e. a bijective nesting map.
pub fn find_bijective_nesting(inc: &NestingIncidence) -> Matching {
    let adj = inc.adjacency();
    let (nl, nr) = (inc.left().len(), inc.right().len());
    let mut match_l = vec![UNMATCHED; nl];
    let mut match_r = vec![UNMATCHED; nr];
    let mut dist = vec![UNREACHED; nl];
    loop {
        let mut queue = VecDeque::new();
        for l in 0..nl {
            if match_l[l] == UNMATCHED {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = UNREACHED;
            }
        }
        let mut found_free = false;
        while let Some(l) = queue.pop_front() {
            for &r in &adj[l] {
                let m = match_r[r];
                if m == UNMATCHED {
                    found_free = true;
                } else if dist[m] == UNREACHED {
                    dist[m] = dist[l] + 1;
                    queue.push_back(m);
                }
            }
        }
        if !found_free {
            break;
        }
        let mut augmented = false;
        for root in 0..nl {
            if match_l[root] == UNMATCHED {
                augmented |= augment(root, adj, &mut match_l, &mut match_r, &mut dist);
            }
        }
        if !augmented {
            break;
        }
    }
    let pairs = match_l.into_iter().map(|r| (r != UNMATCHED).then_some(r)).collect();
    Matching::from_pairs(nr, pairs).expect("augmenting paths keep the matching injective")
}

/// Layered DFS from `root`, with an explicit stack of `(vertex, next edge)`.
fn augment(root: usize, adj: &[Vec<usize>], match_l: &mut [usize], match_r: &mut [usize], dist: &mut [usize]) -> bool {
    let mut stack = vec![(root, 0usize)];
    while let Some(top) = stack.last_mut() {
        let (u, idx) = *top;
        if idx == adj[u].len() {
            dist[u] = UNREACHED;
            stack.pop();
            continue;
        }
        top.1 += 1;
        let r = adj[u][idx];
        let m = match_r[r];
        if m == UNMATCHED {
            for &(v, next) in &stack {
                let rv = adj[v][next - 1];
                match_l[v] = rv;
                match_r[rv] = v;
            }
            return true;
        }
        if dist[m] == dist[u] + 1 {
            stack.push((m, 0));
        }
    }
    false
}

/// Exact Hall-condition evidence for one subset `{l_1, ..., l_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SubsetCheck {
    pub k: usize,
    /// `|X_{l_1} ∪ ... ∪ X_{l_k}|`
    pub union: usize,
    pub slack: i64,
    /// `|W|` counted along the chosen `l`s.
    pub pairs_by_left: u64,
    /// `|W|` counted along the `L`s in the union.
    pub pairs_by_right: u64,
    /// `k N`
    pub k_n: u64,
}

impl SubsetCheck {
    pub fn double_count_holds(&self) -> bool {
        self.pairs_by_left == self.k_n && self.pairs_by_right == self.k_n
    }

    /// `kN <= |∪X| N`
    pub fn inequality_holds(&self, n_common: u64) -> bool {
        self.k_n <= self.union as u64 * n_common
    }
}

/// Summary of sampled Hall-condition checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HallReport {
    pub checked_subsets: usize,
    pub min_slack: i64,
    pub min_slack_k: usize,
    /// Number of `j`-planes through an `i`-plane, which equals the number of
    /// `i`-planes inside a `j`-plane when `i + j = n`.
    pub n_common: u64,
    pub double_count_pairs: u64,
    pub k_n: u64,
    pub double_count_failures: usize,
    pub inequality_failures: usize,
}

impl HallReport {
    pub fn passed(&self) -> bool {
        self.min_slack >= 0 && self.double_count_failures == 0 && self.inequality_failures == 0
    }
}

fn common_degree(inc: &NestingIncidence) -> Result<u64, NestingError> {
    let (i, j, n) = inc.dims();
    if i + j != n {
        return Err(NestingError::NotComplementary { i, j, n });
    }
    Ok(inc.expected_left_degree().to_u64().expect("degree fits in u64 for materialized tables"))
}

/// Computes the union size and both sides of the double count for one subset
/// of left ids (assumed distinct).
pub fn hall_subset(inc: &NestingIncidence, subset: &[usize]) -> Result<SubsetCheck, NestingError> {
    let n_common = common_degree(inc)?;
    let mut chosen = vec![false; inc.left().len()];
    let mut in_union = vec![false; inc.right().len()];
    let mut pairs_by_left = 0u64;
    for &l in subset {
        chosen[l] = true;
        for &r in inc.neighbors(l) {
            in_union[r] = true;
            pairs_by_left += 1;
        }
    }
    let mut union = 0;
    let mut pairs_by_right = 0u64;
    for (r, _) in in_union.iter().enumerate().filter(|(_, &u)| u) {
        union += 1;
        pairs_by_right += inc.right_neighbors(r).iter().filter(|&&l| chosen[l]).count() as u64;
    }
    let k = subset.len();
    Ok(SubsetCheck {
        k,
        union,
        slack: union as i64 - k as i64,
        pairs_by_left,
        pairs_by_right,
        k_n: k as u64 * n_common,
    })
}

/// Samples `samples` random subsets (size uniform in `1..=|Gr(i)|`) with a
/// seeded generator and checks Hall's inequality and the double count on
/// each. This is diagnostic; the perfect matching is the certificate.
pub fn hall_check(inc: &NestingIncidence, samples: usize, seed: u64) -> Result<HallReport, NestingError> {
    let n_common = common_degree(inc)?;
    let total = inc.left().len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = HallReport {
        checked_subsets: 0,
        min_slack: i64::MAX,
        min_slack_k: 0,
        n_common,
        double_count_pairs: 0,
        k_n: 0,
        double_count_failures: 0,
        inequality_failures: 0,
    };
    for _ in 0..samples {
        let k = rng.gen_range(1..=total);
        let mut subset = index::sample(&mut rng, total, k).into_vec();
        subset.sort_unstable();
        let check = hall_subset(inc, &subset)?;
        report.checked_subsets += 1;
        if check.slack < report.min_slack {
            report.min_slack = check.slack;
            report.min_slack_k = k;
        }
        report.double_count_pairs += check.pairs_by_left;
        report.k_n += check.k_n;
        report.double_count_failures += usize::from(!check.double_count_holds());
        report.inequality_failures += usize::from(!check.inequality_holds(n_common));
    }
    if report.checked_subsets == 0 {
        report.min_slack = 0;
    }
    Ok(report)
}

/// A non-degenerate alternating bilinear form `ω(v, w) = v^T G w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingForm {
    field: FieldSpec,
    n: usize,
    gram: MatGF,
}

/// Transpose equals negative with zero diagonal, which encodes `ω(v, v) = 0`
/// in every characteristic.
pub fn is_alternating_gram(field: &FieldSpec, gram: &MatGF) -> bool {
    let n = gram.rows();
    gram.cols() == n
        && (0..n).all(|r| {
            gram.get(r, r).is_zero() && (0..n).all(|c| gram.get(c, r) == field.neg(gram.get(r, c)))
        })
}

impl AlternatingForm {
    pub fn new(field: &FieldSpec, gram: MatGF) -> Result<Self, NestingError> {
        let n = gram.rows();
        if gram.cols() != n {
            return Err(NestingError::Shape { expected: n, rows: gram.rows(), cols: gram.cols() });
        }
        if n % 2 == 1 {
            return Err(NestingError::OddDimension(n));
        }
        if !is_alternating_gram(field, &gram) {
            return Err(NestingError::NotAlternating);
        }
        if !is_invertible(field, &gram) {
            return Err(NestingError::Singular);
        }
        Ok(AlternatingForm { field: field.clone(), n, gram })
    }

    /// The standard form pairing `e_{2a+1}` with `e_{2a+2}`.
    pub fn standard(field: &FieldSpec, n: usize) -> Result<Self, NestingError> {
        if n % 2 == 1 {
            return Err(NestingError::OddDimension(n));
        }
        let mut gram = MatGF::zeros(n, n);
        for a in (0..n).step_by(2) {
            gram.set(a, a + 1, field.one());
            gram.set(a + 1, a, field.neg(field.one()));
        }
        Self::new(field, gram)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gram(&self) -> &MatGF {
        &self.gram
    }
}

/// `{w : ω(v, w) = 0 for all v ∈ l}` for the bilinear form with Gram matrix
/// `gram` (any form, not only alternating ones).
pub fn bilinear_perp(field: &FieldSpec, gram: &MatGF, l: &Subspace) -> Result<Subspace, NestingError> {
    if l.n() != gram.rows() {
        return Err(GrassmannError::AmbientMismatch(l.n(), gram.rows()).into());
    }
    let constraints = l.basis().mul(field, gram)?;
    Ok(Subspace::span(field, &kernel(field, &constraints))?)
}

/// Orthogonal complement of `l` with respect to an alternating form.
pub fn perp(l: &Subspace, form: &AlternatingForm) -> Result<Subspace, NestingError> {
    bilinear_perp(&form.field, &form.gram, l)
}

/// The map `l ↦ l^⊥` from lines to hyperplanes, packaged as a matching and
/// checked exhaustively: every pair nests and the assignment is bijective.
#[derive(Debug, Clone)]
pub struct SymplecticNesting {
    pub lines: GrassmannTable,
    pub hyperplanes: GrassmannTable,
    pub matching: Matching,
    pub non_nesting_pairs: usize,
    /// Lines with `perp(perp(l)) != l`.
    pub involution_failures: usize,
}

impl SymplecticNesting {
    pub fn verified(&self) -> bool {
        self.matching.is_perfect() && self.non_nesting_pairs == 0 && self.involution_failures == 0
    }
}

pub fn symplectic_nesting_map(form: &AlternatingForm) -> Result<SymplecticNesting, NestingError> {
    let field = &form.field;
    let lines = enumerate_subspaces(form.n, 1, field)?;
    let hyperplanes = enumerate_subspaces(form.n, form.n - 1, field)?;
    let mut pairs = Vec::with_capacity(lines.len());
    let mut involution_failures = 0;
    for l in lines.iter() {
        let h = perp(l, form)?;
        if &perp(&h, form)? != l {
            involution_failures += 1;
        }
        pairs.push(Some(hyperplanes.id_of(&h).expect("perp of a line is a hyperplane")));
    }
    let matching = Matching::from_pairs(hyperplanes.len(), pairs)?;
    let non_nesting_pairs = matching.count_non_nesting(&lines, &hyperplanes)?;
    Ok(SymplecticNesting { lines, hyperplanes, matching, non_nesting_pairs, involution_failures })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LinearClassification {
    pub is_alternating: bool,
    pub is_nesting_exhaustive: bool,
}

impl LinearClassification {
    pub fn agrees(&self) -> bool {
        self.is_alternating == self.is_nesting_exhaustive
    }
}

/// Compares the algebraic test (alternating Gram matrix) with the geometric
/// one (`l ⊂ l^⊥` for every line `l` of the finite projective space).
pub fn linear_nesting_classifier(gram: &MatGF, field: &FieldSpec) -> Result<LinearClassification, NestingError> {
    let n = gram.rows();
    if gram.cols() != n {
        return Err(NestingError::Shape { expected: n, rows: gram.rows(), cols: gram.cols() });
    }
    if !is_invertible(field, gram) {
        return Err(NestingError::Singular);
    }
    let lines = enumerate_subspaces(n, 1, field)?;
    linear_classify_with(gram, field, &lines)
}

fn linear_classify_with(gram: &MatGF, field: &FieldSpec, lines: &GrassmannTable) -> Result<LinearClassification, NestingError> {
    let mut nesting = true;
    for l in lines.iter() {
        if !contains(field, l, &bilinear_perp(field, gram, l)?)? {
            nesting = false;
            break;
        }
    }
    Ok(LinearClassification { is_alternating: is_alternating_gram(field, gram), is_nesting_exhaustive: nesting })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassifierSweep {
    pub matrices: u64,
    pub invertible: u64,
    pub alternating: u64,
    pub nesting: u64,
    pub disagreements: u64,
}

/// Runs the classifier over every invertible `n x n` matrix over `field`.
pub fn classifier_sweep(field: &FieldSpec, n: usize) -> Result<ClassifierSweep, NestingError> {
    let q = field.q() as u64;
    let total = q
        .checked_pow((n * n) as u32)
        .filter(|&t| t <= 1 << 24)
        .ok_or(NestingError::SweepTooLarge(u64::MAX))?;
    let lines = enumerate_subspaces(n, 1, field)?;
    let mut sweep = ClassifierSweep { matrices: total, invertible: 0, alternating: 0, nesting: 0, disagreements: 0 };
    for code in 0..total {
        let mut c = code;
        let entries = (0..n * n)
            .map(|_| {
                let e = field.from_code((c % q) as u32).expect("digit below q");
                c /= q;
                e
            })
            .collect();
        let gram = MatGF::new(n, n, entries)?;
        if !is_invertible(field, &gram) {
            continue;
        }
        sweep.invertible += 1;
        let cls = linear_classify_with(&gram, field, &lines)?;
        sweep.alternating += u64::from(cls.is_alternating);
        sweep.nesting += u64::from(cls.is_nesting_exhaustive);
        sweep.disagreements += u64::from(!cls.agrees());
    }
    Ok(sweep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::incidence_graph;

    fn gf(q: u64) -> FieldSpec {
        FieldSpec::of_order(q).unwrap()
    }

    #[test]
    fn matching_examples() {
        let f2 = gf(2);
        let inc = incidence_graph(1, 3, 4, &f2).unwrap();
        let m = find_bijective_nesting(&inc);
        assert!(m.is_perfect());
        assert_eq!(m.size(), 15);
        assert_eq!(m.count_non_nesting(inc.left(), inc.right()).unwrap(), 0);

        let inc = incidence_graph(1, 2, 4, &f2).unwrap();
        let m = find_bijective_nesting(&inc);
        assert_eq!(m.size(), 15);
        assert!(m.is_saturating());
        assert!(!m.is_perfect());
        assert!(m.pairs().all(|(l, r)| inc.is_edge(l, r)));
    }

    #[test]
    fn matching_is_deterministic() {
        let f3 = gf(3);
        let inc = incidence_graph(1, 3, 4, &f3).unwrap();
        assert_eq!(find_bijective_nesting(&inc), find_bijective_nesting(&inc));
    }

    /// Brute-force maximum matching size by Kuhn's algorithm, used as an oracle.
    fn kuhn_size(adj: &[Vec<usize>], nr: usize) -> usize {
        fn try_kuhn(u: usize, adj: &[Vec<usize>], seen: &mut [bool], mr: &mut [usize]) -> bool {
            for &r in &adj[u] {
                if !seen[r] {
                    seen[r] = true;
                    if mr[r] == usize::MAX || try_kuhn(mr[r], adj, seen, mr) {
                        mr[r] = u;
                        return true;
                    }
                }
            }
            false
        }
        let mut mr = vec![usize::MAX; nr];
        (0..adj.len()).filter(|&u| try_kuhn(u, adj, &mut vec![false; nr], &mut mr)).count()
    }

    #[test]
    fn matching_is_maximum_on_non_complementary_shapes() {
        for (q, i, j, n) in [(2, 1, 2, 4), (2, 2, 4, 5), (3, 1, 2, 3), (2, 1, 4, 5)] {
            let inc = incidence_graph(i, j, n, &gf(q)).unwrap();
            let m = find_bijective_nesting(&inc);
            assert_eq!(m.size(), kuhn_size(inc.adjacency(), inc.right().len()), "{q} {i} {j} {n}");
        }
    }

    #[test]
    fn from_pairs_rejects_collisions() {
        assert_eq!(Matching::from_pairs(3, vec![Some(1), Some(1)]), Err(NestingError::NotInjective(1)));
        assert!(matches!(Matching::from_pairs(1, vec![Some(2)]), Err(NestingError::OutOfRange { .. })));
        let m = Matching::from_pairs(2, vec![Some(1), None]).unwrap();
        assert_eq!(m.to_tsv(), "0\t1\n");
    }

    #[test]
    fn hall_examples() {
        let f2 = gf(2);
        let inc = incidence_graph(1, 3, 4, &f2).unwrap();
        let one = hall_subset(&inc, &[4]).unwrap();
        assert_eq!((one.union, one.slack), (7, 6));
        assert!(one.double_count_holds());
        let all: Vec<usize> = (0..15).collect();
        let whole = hall_subset(&inc, &all).unwrap();
        assert_eq!((whole.union, whole.slack), (15, 0));

        let report = hall_check(&inc, 200, 7).unwrap();
        assert!(report.passed());
        assert_eq!(report.double_count_pairs, report.k_n);

        let not_complementary = incidence_graph(1, 2, 4, &f2).unwrap();
        assert!(matches!(hall_check(&not_complementary, 1, 0), Err(NestingError::NotComplementary { .. })));
    }

    #[test]
    fn hall_check_is_seeded() {
        let inc = incidence_graph(1, 3, 4, &gf(3)).unwrap();
        assert_eq!(hall_check(&inc, 50, 11).unwrap(), hall_check(&inc, 50, 11).unwrap());
    }

    #[test]
    fn perp_examples() {
        let f2 = gf(2);
        let form = AlternatingForm::standard(&f2, 4).unwrap();
        let e1 = Subspace::span_ints(&f2, &[&[1, 0, 0, 0]]).unwrap();
        let expected = Subspace::span_ints(&f2, &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]).unwrap();
        assert_eq!(perp(&e1, &form).unwrap(), expected);
        let e12 = Subspace::span_ints(&f2, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]).unwrap();
        assert_eq!(perp(&e12, &form).unwrap().dim(), 2);
        let lines = enumerate_subspaces(4, 1, &f2).unwrap();
        for l in lines.iter() {
            assert_eq!(&perp(&perp(l, &form).unwrap(), &form).unwrap(), l);
        }
        let wrong = Subspace::span_ints(&f2, &[&[1, 0, 0]]).unwrap();
        assert!(matches!(perp(&wrong, &form), Err(NestingError::Grassmann(GrassmannError::AmbientMismatch(3, 4)))));
    }

    #[test]
    fn perp_reverses_inclusion() {
        let f3 = gf(3);
        let form = AlternatingForm::standard(&f3, 4).unwrap();
        let lines = enumerate_subspaces(4, 1, &f3).unwrap();
        let planes = enumerate_subspaces(4, 2, &f3).unwrap();
        for l in lines.iter() {
            let pl = perp(l, &form).unwrap();
            for m in planes.iter() {
                if contains(&f3, l, m).unwrap() {
                    assert!(contains(&f3, &perp(m, &form).unwrap(), &pl).unwrap());
                }
            }
        }
    }

    #[test]
    fn symplectic_map_examples() {
        let s = symplectic_nesting_map(&AlternatingForm::standard(&gf(2), 4).unwrap()).unwrap();
        assert!(s.verified());
        assert_eq!(s.matching.size(), 15);
        let s = symplectic_nesting_map(&AlternatingForm::standard(&gf(3), 4).unwrap()).unwrap();
        assert!(s.verified());
        assert_eq!(s.matching.size(), 40);
        assert_eq!(AlternatingForm::standard(&gf(2), 3), Err(NestingError::OddDimension(3)));
    }

    #[test]
    fn form_validation() {
        let f3 = gf(3);
        let sym = MatGF::from_ints(&f3, &[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(AlternatingForm::new(&f3, sym), Err(NestingError::NotAlternating));
        let zero = MatGF::zeros(2, 2);
        assert_eq!(AlternatingForm::new(&f3, zero), Err(NestingError::Singular));
        // in characteristic 2 the symmetric hyperbolic plane is alternating
        let f2 = gf(2);
        let hyp = MatGF::from_ints(&f2, &[&[0, 1], &[1, 0]]).unwrap();
        assert!(AlternatingForm::new(&f2, hyp).is_ok());
    }

    #[test]
    fn classifier_examples() {
        let f2 = gf(2);
        let j = AlternatingForm::standard(&f2, 4).unwrap();
        let c = linear_nesting_classifier(j.gram(), &f2).unwrap();
        assert_eq!((c.is_alternating, c.is_nesting_exhaustive), (true, true));
        let id = MatGF::identity(&f2, 2);
        let c = linear_nesting_classifier(&id, &f2).unwrap();
        assert_eq!((c.is_alternating, c.is_nesting_exhaustive), (false, false));
        let g = MatGF::from_ints(&f2, &[&[1, 1], &[1, 0]]).unwrap();
        let c = linear_nesting_classifier(&g, &f2).unwrap();
        assert_eq!((c.is_alternating, c.is_nesting_exhaustive), (false, false));
        let singular = MatGF::from_ints(&f2, &[&[1, 1], &[1, 1]]).unwrap();
        assert_eq!(linear_nesting_classifier(&singular, &f2), Err(NestingError::Singular));
    }

    #[test]
    fn classifier_sweep_small() {
        // |GL(2, 3)| = 48; invertible alternating 2x2 over GF(3): [[0,a],[-a,0]], a != 0
        let s = classifier_sweep(&gf(3), 2).unwrap();
        assert_eq!(s.invertible, 48);
        assert_eq!(s.alternating, 2);
        assert_eq!(s.disagreements, 0);
    }
}
