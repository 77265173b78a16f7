//! Schwarzenberger integrality conditions for rank-r bundles on P^m with
//! Chern polynomial `p(t) = (1 - w_1 t) ... (1 - w_r t)`, and the search over
//! cyclotomic splittings `p q = 1 + t + ... + t^{n-1}`.
//!
//! All values are exact. `B_{s,m} = sum_i binom(s - w_i, m)` is computed from
//! power sums of the `w_i`, which Newton's identities give directly from the
//! coefficients of `p`.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::upoly::{serde_helpers, IntPoly, UniPolyQ};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchwzError {
    #[error("Chern polynomial must have constant term 1, got {0}")]
    NotNormalized(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("polynomial {0} has repeated roots")]
    NotSquarefree(String),
    #[error("need n >= {min}, got {n}")]
    BadN { n: usize, min: usize },
    #[error("need m >= 1")]
    BadM,
    #[error("empty range")]
    EmptyRange,
}

/// Chern polynomial of a candidate bundle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ChernCandidate {
    #[serde(serialize_with = "serde_helpers::int_poly")]
    coeffs: IntPoly,
    r: usize,
    squarefree: bool,
    unit_circle: bool,
}

impl ChernCandidate {
    pub fn new(poly: IntPoly) -> Result<Self, SchwzError> {
        if !poly.coeff(0).is_one() {
            return Err(SchwzError::NotNormalized(poly.to_string()));
        }
        let r = poly.degree().unwrap_or(0);
        let squarefree = is_squarefree(&poly);
        let unit_circle = is_unit_circle(&poly);
        Ok(ChernCandidate { coeffs: poly, r, squarefree, unit_circle })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<Self, SchwzError> {
        Self::new(IntPoly::from_i64(coeffs))
    }

    pub fn poly(&self) -> &IntPoly {
        &self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn is_squarefree(&self) -> bool {
        self.squarefree
    }

    pub fn is_unit_circle(&self) -> bool {
        self.unit_circle
    }

    /// Monic polynomial `x^r p(1/x)` whose roots are the `w_i`.
    pub fn root_polynomial(&self) -> IntPoly {
        let mut c = self.coeffs.coeffs().to_vec();
        c.resize(self.r + 1, BigInt::zero());
        c.reverse();
        IntPoly::new(c)
    }
}

impl std::fmt::Display for ChernCandidate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.coeffs)
    }
}

fn is_squarefree(p: &IntPoly) -> bool {
    if p.degree().unwrap_or(0) == 0 {
        return true;
    }
    let q = p.to_rational();
    q.gcd(&q.derivative()).degree() == Some(0)
}

pub fn euler_phi(mut d: u64) -> u64 {
    let mut out = d;
    let mut f = 2;
    while f * f <= d {
        if d % f == 0 {
            while d % f == 0 {
                d /= f;
            }
            out -= out / f;
        }
        f += 1;
    }
    if d > 1 {
        out -= out / d;
    }
    out
}

/// `Φ_1, ..., Φ_max` (index 0 holds the constant 1), each obtained by dividing
/// `t^d - 1` by the earlier factors for proper divisors of `d`.
pub fn cyclotomics_upto(max: usize) -> Vec<IntPoly> {
    let mut out = vec![IntPoly::one()];
    for d in 1..=max {
        let mut num = IntPoly::monomial(BigInt::one(), d);
        num = &num - &IntPoly::one();
        for e in (1..d).filter(|e| d % e == 0) {
            num = num.exact_div(&out[e]).expect("cyclotomic factor divides t^d - 1");
        }
        out.push(num);
    }
    out
}

pub fn cyclotomic(d: usize) -> IntPoly {
    assert!(d >= 1, "cyclotomic index starts at 1");
    cyclotomics_upto(d).swap_remove(d)
}

/// True iff `p` is plus or minus a product of cyclotomic polynomials, i.e.
/// (for `p(0) = 1`) every reciprocal root lies on the unit circle and is a
/// root of unity.
pub fn is_unit_circle(p: &IntPoly) -> bool {
    let r = match p.degree() {
        None => return false,
        Some(r) => r,
    };
    if r == 0 {
        return p.coeff(0).abs().is_one();
    }
    // phi(d) >= sqrt(d / 2)
    let bound = 2 * r * r + 2;
    let cyc = cyclotomics_upto(bound);
    let mut rest = p.clone();
    for (d, phi) in cyc.iter().enumerate().skip(1) {
        if euler_phi(d as u64) as usize > r {
            continue;
        }
        while let Some(q) = rest.exact_div(phi) {
            rest = q;
        }
        if rest.degree() == Some(0) {
            break;
        }
    }
    rest.degree() == Some(0) && rest.coeff(0).abs().is_one()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicFactor {
    pub d: usize,
    pub poly: IntPoly,
}

/// `{Φ_d : d | n, d > 1}` in increasing `d`; their product is `1 + t + ... + t^{n-1}`.
pub fn cyclotomic_split(n: usize) -> Result<Vec<CyclotomicFactor>, SchwzError> {
    if n < 2 {
        return Err(SchwzError::BadN { n, min: 2 });
    }
    let cyc = cyclotomics_upto(n);
    Ok((2..=n).filter(|d| n % d == 0).map(|d| CyclotomicFactor { d, poly: cyc[d].clone() }).collect())
}

/// `1 + t + ... + t^{n-1}`
pub fn geometric_sum(n: usize) -> IntPoly {
    IntPoly::new(vec![BigInt::one(); n])
}

/// Every `± prod Φ_d` over distinct `d`, normalised to constant term 1, with
/// degree between 1 and `max_rank`. Sorted by degree, then coefficients.
pub fn squarefree_cyclotomic_products(max_rank: usize) -> Vec<ChernCandidate> {
    if max_rank == 0 {
        return Vec::new();
    }
    let bound = 2 * max_rank * max_rank + 2;
    let cyc = cyclotomics_upto(bound);
    let ds: Vec<(usize, usize)> = (1..=bound)
        .map(|d| (d, euler_phi(d as u64) as usize))
        .filter(|&(_, phi)| phi <= max_rank)
        .collect();
    let mut out = Vec::new();
    fn walk(
        ds: &[(usize, usize)],
        cyc: &[IntPoly],
        start: usize,
        deg: usize,
        max_rank: usize,
        acc: IntPoly,
        out: &mut Vec<IntPoly>,
    ) {
        if deg > 0 {
            out.push(acc.clone());
        }
        for k in start..ds.len() {
            let (d, phi) = ds[k];
            if deg + phi <= max_rank {
                walk(ds, cyc, k + 1, deg + phi, max_rank, &acc * &cyc[d], out);
            }
        }
    }
    walk(&ds, &cyc, 0, 0, max_rank, IntPoly::one(), &mut out);
    let mut cands: Vec<ChernCandidate> = out
        .into_iter()
        .map(|p| {
            let p = if p.coeff(0).is_negative() { -&p } else { p };
            let r = p.degree().expect("nonconstant");
            ChernCandidate { coeffs: p, r, squarefree: true, unit_circle: true }
        })
        .collect();
    cands.sort_by(|a, b| a.r.cmp(&b.r).then_with(|| a.coeffs.coeffs().cmp(b.coeffs.coeffs())));
    cands
}

/// Power sums `p_0 = r, p_1, ..., p_M` of the reciprocal roots.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerSums {
    #[serde(serialize_with = "serde_helpers::ints")]
    sums: Vec<BigInt>,
}

impl PowerSums {
    pub fn get(&self, k: usize) -> &BigInt {
        &self.sums[k]
    }

    pub fn max_index(&self) -> usize {
        self.sums.len() - 1
    }

    /// `p_1, ..., p_M`
    pub fn as_slice(&self) -> &[BigInt] {
        &self.sums[1..]
    }
}

/// Newton's identities with `e_k = (-1)^k c_k` collapse to
/// `p_k = -(k c_k + sum_{a=1}^{k-1} c_a p_{k-a})`.
pub fn power_sums(p: &ChernCandidate, max: usize) -> PowerSums {
    let c = |k: usize| p.coeffs.coeff(k);
    let mut sums = vec![BigInt::from(p.r)];
    for k in 1..=max {
        let mut acc = c(k) * BigInt::from(k);
        for a in 1..k {
            acc += c(a) * &sums[k - a];
        }
        sums.push(-acc);
    }
    PowerSums { sums }
}

fn factorial(m: usize) -> BigInt {
    (1..=m).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `prod_{a=0}^{m-1} ((s - a) - w)` as a polynomial in `w`.
fn falling_in_w(s: i64, m: usize) -> IntPoly {
    (0..m as i64).fold(IntPoly::one(), |acc, a| &acc * &IntPoly::from_i64(&[s - a, -1]))
}

fn b_from_sums(ps: &PowerSums, s: i64, m: usize) -> BigRational {
    let poly = falling_in_w(s, m);
    let num: BigInt = poly.coeffs().iter().enumerate().map(|(k, c)| c * ps.get(k)).sum();
    BigRational::new(num, factorial(m))
}

/// `B_{s,m} = sum_i binom(s - w_i, m)`. `m = 0` gives the rank.
pub fn binom_sum_b(p: &ChernCandidate, s: i64, m: usize) -> BigRational {
    b_from_sums(&power_sums(p, m), s, m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SValue {
    pub s: i64,
    #[serde(serialize_with = "serde_helpers::rational")]
    pub value: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SchwzReport {
    pub candidate: ChernCandidate,
    pub m: usize,
    pub checked_s: [i64; 2],
    pub values: Vec<SValue>,
    pub pass: bool,
}

impl SchwzReport {
    pub fn first_failure(&self) -> Option<&SValue> {
        self.values.iter().find(|v| !v.value.is_integer())
    }
}

/// Integrality of `B_{s,m}` for `s = 0..=m`. Since `s -> B_{s,m}` is a
/// polynomial of degree at most `m` with rational coefficients, integrality at
/// `m + 1` consecutive integers implies it on all of Z.
pub fn schwarzenberger_check(p: &ChernCandidate, m: usize) -> Result<SchwzReport, SchwzError> {
    schwarzenberger_check_range(p, m, 0..=m as i64)
}

pub fn schwarzenberger_check_range(
    p: &ChernCandidate,
    m: usize,
    s_range: RangeInclusive<i64>,
) -> Result<SchwzReport, SchwzError> {
    if m == 0 {
        return Err(SchwzError::BadM);
    }
    if s_range.is_empty() {
        return Err(SchwzError::EmptyRange);
    }
    let ps = power_sums(p, m);
    let values: Vec<SValue> = s_range.clone().map(|s| SValue { s, value: b_from_sums(&ps, s, m) }).collect();
    let pass = values.iter().all(|v| v.value.is_integer());
    Ok(SchwzReport { candidate: p.clone(), m, checked_s: [*s_range.start(), *s_range.end()], values, pass })
}

/// `B_{s,m} - B_{s-1,m} = B_{s-1,m-1}` on the grid (needs `m >= 1`).
pub fn pascal_recurrence_check(
    p: &ChernCandidate,
    s_range: RangeInclusive<i64>,
    m_range: RangeInclusive<usize>,
) -> Result<bool, SchwzError> {
    if s_range.is_empty() || m_range.is_empty() {
        return Err(SchwzError::EmptyRange);
    }
    if *m_range.start() == 0 {
        return Err(SchwzError::BadM);
    }
    let ps = power_sums(p, *m_range.end());
    for m in m_range {
        for s in s_range.clone() {
            let lhs = b_from_sums(&ps, s, m) - b_from_sums(&ps, s - 1, m);
            if lhs != b_from_sums(&ps, s - 1, m - 1) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_hypotheses(p: &ChernCandidate, m: usize) -> Result<(), SchwzError> {
    if p.r == 0 || p.r + 2 > m {
        return Err(SchwzError::HypothesisViolated(format!("rank {} is not in 1..={}", p.r, m.saturating_sub(2))));
    }
    if !p.squarefree {
        return Err(SchwzError::HypothesisViolated(format!("{p} has repeated roots")));
    }
    if !p.unit_circle {
        return Err(SchwzError::HypothesisViolated(format!("{p} has roots off the unit circle")));
    }
    Ok(())
}

/// Checks `B_{s,m} = 0` for `s = 1..=m-2` and `B_{1,k} = 0` for `k = 3..=m`.
/// These zeros are forced once the `B_{s,m}` are known to be integers; a
/// `false` here flags a candidate that cannot satisfy the integrality
/// conditions.
pub fn lemma_b_zero_check(p: &ChernCandidate, m: usize) -> Result<bool, SchwzError> {
    check_hypotheses(p, m)?;
    let ps = power_sums(p, m);
    let a = (1..=m as i64 - 2).all(|s| b_from_sums(&ps, s, m).is_zero());
    let b = (3..=m).all(|k| b_from_sums(&ps, 1, k).is_zero());
    Ok(a && b)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TraceRow {
    pub i: usize,
    #[serde(serialize_with = "serde_helpers::rational")]
    pub trace: BigRational,
    #[serde(serialize_with = "serde_helpers::rational")]
    pub expected: BigRational,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TraceFormReport {
    pub candidate: ChernCandidate,
    pub m: usize,
    pub rows: Vec<TraceRow>,
    /// Whether `a = (1 - x)(-x)(-1 - x)` is zero in `Q[x]/(P)`.
    pub a_vanishes: bool,
    pub pass: bool,
}

/// Trace of multiplication by `f` on `Q[x]/(P)`, in the monomial basis.
fn algebra_trace(f: &UniPolyQ, modulus: &UniPolyQ) -> BigRational {
    let r = modulus.degree().unwrap_or(0);
    let mut basis = UniPolyQ::one();
    let x = UniPolyQ::monomial(BigRational::one(), 1);
    let mut acc = BigRational::zero();
    for c in 0..r {
        acc += (&basis * f).rem(modulus).coeff(c);
        basis = (&basis * &x).rem(modulus);
    }
    acc
}

/// Compares `tr(a b_i)` with `(i+3)! B_{1,i+3}` for `i = 0..=m-3`, where
/// `b_i = (-2 - x)(-3 - x) ... (-(i+1) - x)`.
pub fn trace_form_identity(p: &ChernCandidate, m: usize) -> Result<TraceFormReport, SchwzError> {
    if !p.squarefree {
        return Err(SchwzError::NotSquarefree(p.to_string()));
    }
    if m < 3 {
        return Err(SchwzError::BadM);
    }
    let modulus = p.root_polynomial().to_rational();
    let lin = |c: i64| IntPoly::from_i64(&[c, -1]).to_rational();
    let a = &(&lin(1) * &lin(0)) * &lin(-1);
    let a_vanishes = a.rem(&modulus).is_zero();
    let ps = power_sums(p, m);
    let mut rows = Vec::new();
    let mut b = UniPolyQ::one();
    for i in 0..=m - 3 {
        if i > 0 {
            b = &b * &lin(-(i as i64) - 1);
        }
        let trace = algebra_trace(&(&a * &b), &modulus);
        let expected = b_from_sums(&ps, 1, i + 3) * BigRational::from_integer(factorial(i + 3));
        rows.push(TraceRow { i, matches: trace == expected, trace, expected });
    }
    let pass = rows.iter().all(|r| r.matches);
    Ok(TraceFormReport { candidate: p.clone(), m, rows, a_vanishes, pass })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum FactorRole {
    P,
    Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FilterResult {
    pub factor: FactorRole,
    pub rank: usize,
    pub applicable: bool,
    pub pass: Option<bool>,
    /// First `s` with non-integral `B_{s,m}` and that value.
    pub witness_s: Option<i64>,
    #[serde(serialize_with = "ser_opt_rational")]
    pub witness_value: Option<BigRational>,
}

fn ser_opt_rational<S: serde::Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(r) => serde_helpers::rational(r, s),
        None => s.serialize_none(),
    }
}

pub const J2_ANNOTATION: &str = "excluded by a sheaf-theoretic argument (the quotient bundle would be generated \
by global sections yet have none); not certified by the Chern-level filters";
pub const JN1_ANNOTATION: &str = "realized by the perp map of a nondegenerate alternating form";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SplitEntry {
    pub j: usize,
    #[serde(serialize_with = "serde_helpers::int_poly")]
    pub p_coeffs: IntPoly,
    #[serde(serialize_with = "serde_helpers::int_poly")]
    pub q_coeffs: IntPoly,
    pub p_divisors: Vec<usize>,
    pub filter_results: Vec<FilterResult>,
    pub survivor: bool,
    pub annotation: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitTable {
    pub n: usize,
    pub entries: Vec<SplitEntry>,
}

impl SplitTable {
    pub fn survivors(&self) -> impl Iterator<Item = &SplitEntry> {
        self.entries.iter().filter(|e| e.survivor)
    }

    pub fn surviving_js(&self) -> Vec<usize> {
        self.survivors().map(|e| e.j).collect()
    }

    /// `n,j,entries,survivors` rows, one per split degree `j` in increasing order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,j,entries,survivors\n");
        for j in 1..self.n {
            let es: Vec<_> = self.entries.iter().filter(|e| e.j == j).collect();
            if es.is_empty() {
                continue;
            }
            let surv = es.iter().filter(|e| e.survivor).count();
            out.push_str(&format!("{},{},{},{}\n", self.n, j, es.len(), surv));
        }
        out
    }
}

/// Factorizations `p q = 1 + t + ... + t^{n-1}` with `p = c_t(Q)` of rank
/// `n - j` and `q` of rank `j - 1`, filtered by integrality on `P^{n-1}` for
/// each factor of rank at most `n - 3`. Subsets of `{Φ_d}` forming `p` are
/// enumerated as bitmasks in increasing order.
pub fn classify_chern_splits(n: usize) -> Result<SplitTable, SchwzError> {
    if n < 3 {
        return Err(SchwzError::BadN { n, min: 3 });
    }
    let factors = cyclotomic_split(n)?;
    let m = n - 1;
    let f = factors.len();
    let total = geometric_sum(n);
    let mut entries = Vec::new();
    for mask in 1u64..(1u64 << f) - 1 {
        let (mut p, mut q) = (IntPoly::one(), IntPoly::one());
        let mut p_divisors = Vec::new();
        for (k, fac) in factors.iter().enumerate() {
            if mask >> k & 1 == 1 {
                p = &p * &fac.poly;
                p_divisors.push(fac.d);
            } else {
                q = &q * &fac.poly;
            }
        }
        debug_assert_eq!(&p * &q, total);
        let j = n - p.degree().expect("nonzero");
        let mut filter_results = Vec::new();
        for (role, poly) in [(FactorRole::P, &p), (FactorRole::Q, &q)] {
            let cand = ChernCandidate::new(poly.clone())?;
            let rank = cand.rank();
            let applicable = rank >= 1 && rank + 2 <= m;
            let (pass, witness_s, witness_value) = if applicable {
                let rep = schwarzenberger_check(&cand, m)?;
                let w = rep.first_failure().cloned();
                (Some(rep.pass), w.as_ref().map(|v| v.s), w.map(|v| v.value))
            } else {
                (None, None, None)
            };
            filter_results.push(FilterResult { factor: role, rank, applicable, pass, witness_s, witness_value });
        }
        let survivor = filter_results.iter().all(|r| r.pass != Some(false));
        let annotation = match (survivor, j) {
            (true, 2) => Some(J2_ANNOTATION.to_string()),
            (true, j) if j == n - 1 => Some(JN1_ANNOTATION.to_string()),
            _ => None,
        };
        entries.push(SplitEntry { j, p_coeffs: p, q_coeffs: q, p_divisors, filter_results, survivor, annotation });
    }
    Ok(SplitTable { n, entries })
}

/// Value of `B_{s,m}` as an `f64`, for diagnostics.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}
