//! Truncated symmetric-polynomial calculus for Chern classes of bundles on
//! Gr(i, F^n), in the image of the restriction to `i` variables.
//!
//! The cohomology (or Chow) ring is modelled by `Z[x_1, ..., x_i]` with every
//! term of total degree above `n - i` discarded. The relations defining the
//! ring are generated in degrees above `n - i`, so every identity checked
//! here is exact in that ring.
//!
//! What is computed:
//! * the total Chern class of the tautological bundle, `prod (1 - x_a)`;
//! * the total Chern class of the quotient bundle, as the truncated inverse,
//!   which equals `1 + θ_1 + ... + θ_{n-i}` (θ_d the complete homogeneous
//!   polynomial of degree d);
//! * the recursion and Euler-type derivative identities for θ_d in three
//!   variables;
//! * a gcd certificate ruling out singular points of `θ_d(x, y, z) = 0` on
//!   the coordinate lines, plus the Gram determinant of the conic θ_2.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::schwz::{classify_chern_splits, SchwzError, SplitEntry};
use crate::upoly::UniPolyQ;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChernError {
    #[error("operands differ in shape: {0} variables / degree {1} vs {2} variables / degree {3}")]
    Mismatch(usize, u32, usize, u32),
    #[error("constant term is not 1, so the series has no truncated inverse")]
    NotAUnit,
    #[error("polynomial is not a homogeneous quadric")]
    NotQuadric,
    #[error("need 1 <= i < j <= n - 1, got i = {i}, j = {j}, n = {n}")]
    BadDimensions { n: usize, i: usize, j: usize },
    #[error("degree bound must be at least 2, got {0}")]
    BadRange(usize),
    #[error(transparent)]
    Schwz(#[from] SchwzError),
}

/// Sparse polynomial in `num_vars` variables over Z, truncated past total
/// degree `trunc_degree`. No zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncPoly {
    num_vars: usize,
    trunc_degree: u32,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

fn total(exps: &[u32]) -> u32 {
    exps.iter().sum()
}

impl TruncPoly {
    pub fn zero(num_vars: usize, trunc_degree: u32) -> Self {
        TruncPoly { num_vars, trunc_degree, terms: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, trunc_degree: u32, c: BigInt) -> Self {
        let mut p = Self::zero(num_vars, trunc_degree);
        p.add_term(vec![0; num_vars], c);
        p
    }

    pub fn one(num_vars: usize, trunc_degree: u32) -> Self {
        Self::constant(num_vars, trunc_degree, BigInt::one())
    }

    /// The variable `x_{a+1}` (0-based index `a`).
    pub fn var(num_vars: usize, trunc_degree: u32, a: usize) -> Self {
        let mut e = vec![0; num_vars];
        e[a] = 1;
        let mut p = Self::zero(num_vars, trunc_degree);
        p.add_term(e, BigInt::one());
        p
    }

    pub fn from_terms<I>(num_vars: usize, trunc_degree: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut p = Self::zero(num_vars, trunc_degree);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Adds `c x^e`, dropping it if it exceeds the truncation degree.
    pub fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        assert_eq!(exps.len(), self.num_vars, "exponent vector length");
        if total(&exps) > self.trunc_degree || c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn trunc_degree(&self) -> u32 {
        self.trunc_degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&vec![0; self.num_vars])
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    /// Highest total degree present, `None` for zero.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| total(e)).max()
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        let terms = self.terms.iter().filter(|(e, _)| total(e) == d).map(|(e, c)| (e.clone(), c.clone()));
        Self::from_terms(self.num_vars, self.trunc_degree, terms)
    }

    fn check_shape(&self, other: &Self) -> Result<(), ChernError> {
        if self.num_vars != other.num_vars || self.trunc_degree != other.trunc_degree {
            return Err(ChernError::Mismatch(self.num_vars, self.trunc_degree, other.num_vars, other.trunc_degree));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, ChernError> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        out.terms.values_mut().for_each(|c| *c = -c.clone());
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ChernError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let terms = self.terms.iter().map(|(e, v)| (e.clone(), v * c));
        Self::from_terms(self.num_vars, self.trunc_degree, terms)
    }

    /// Product modulo terms of degree above the truncation degree.
    pub fn mul(&self, other: &Self) -> Result<Self, ChernError> {
        self.check_shape(other)?;
        let mut out = Self::zero(self.num_vars, self.trunc_degree);
        for (ea, ca) in &self.terms {
            let da = total(ea);
            for (eb, cb) in &other.terms {
                if da + total(eb) > self.trunc_degree {
                    continue;
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    /// Truncated inverse of a series with constant term 1: writing
    /// `self = 1 - u`, the inverse is `1 + u + u^2 + ... + u^D`.
    pub fn inverse(&self) -> Result<Self, ChernError> {
        if !self.constant_term().is_one() {
            return Err(ChernError::NotAUnit);
        }
        let one = Self::one(self.num_vars, self.trunc_degree);
        let u = one.sub(self)?;
        let mut acc = one.clone();
        let mut power = one;
        for _ in 0..self.trunc_degree {
            power = power.mul(&u)?;
            if power.is_empty() {
                break;
            }
            acc = acc.add(&power)?;
        }
        Ok(acc)
    }

    /// Partial derivative with respect to variable `a` (0-based).
    pub fn partial(&self, a: usize) -> Self {
        let terms = self.terms.iter().filter(|(e, _)| e[a] > 0).map(|(e, c)| {
            let mut e2 = e.clone();
            e2[a] -= 1;
            (e2, c * BigInt::from(e[a]))
        });
        Self::from_terms(self.num_vars, self.trunc_degree, terms)
    }

    /// Re-expresses in `num_vars` variables, sending variable `a` to
    /// `mapping[a]`.
    pub fn embed(&self, num_vars: usize, mapping: &[usize]) -> Self {
        let terms = self.terms.iter().map(|(e, c)| {
            let mut e2 = vec![0; num_vars];
            for (a, &k) in e.iter().enumerate() {
                e2[mapping[a]] += k;
            }
            (e2, c.clone())
        });
        Self::from_terms(num_vars, self.trunc_degree, terms)
    }

    /// Homogenizes to degree `d` with a new variable placed first.
    pub fn homogenize(&self, d: u32) -> Self {
        let terms = self.terms.iter().map(|(e, c)| {
            let mut e2 = Vec::with_capacity(e.len() + 1);
            e2.push(d - total(e));
            e2.extend_from_slice(e);
            (e2, c.clone())
        });
        Self::from_terms(self.num_vars + 1, self.trunc_degree.max(d), terms)
    }

    pub fn with_trunc_degree(&self, d: u32) -> Self {
        Self::from_terms(self.num_vars, d, self.terms.clone())
    }

    /// Terms in graded-lex order: by total degree, then with higher powers
    /// of earlier variables first.
    pub fn graded_terms(&self) -> Vec<(&Vec<u32>, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| total(a).cmp(&total(b)).then_with(|| b.cmp(a)));
        v
    }
}

impl fmt::Display for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.graded_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            match (idx, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(a, &k)| if k == 1 { format!("x{}", a + 1) } else { format!("x{}^{}", a + 1, k) })
                .collect();
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&mono.join("*"))?;
            } else {
                write!(f, "{mag}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

pub fn trunc_mul(a: &TruncPoly, b: &TruncPoly) -> Result<TruncPoly, ChernError> {
    a.mul(b)
}

pub fn trunc_inverse(a: &TruncPoly) -> Result<TruncPoly, ChernError> {
    a.inverse()
}

/// `r`-th elementary symmetric polynomial: the sum of all squarefree
/// monomials of degree `r`.
pub fn elementary_sigma(r: usize, num_vars: usize, trunc_degree: u32) -> TruncPoly {
    let terms = crate::grassmann::combinations(num_vars, r).into_iter().map(|set| {
        let mut e = vec![0; num_vars];
        set.iter().for_each(|&a| e[a] = 1);
        (e, BigInt::one())
    });
    TruncPoly::from_terms(num_vars, trunc_degree, terms)
}

/// All exponent vectors of length `num_vars` with sum `d`.
fn compositions(d: u32, num_vars: usize) -> Vec<Vec<u32>> {
    if num_vars == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in compositions(d - first, num_vars - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Complete homogeneous polynomial θ_d: the sum of all monomials of degree `d`.
pub fn theta(d: u32, num_vars: usize, trunc_degree: u32) -> TruncPoly {
    TruncPoly::from_terms(num_vars, trunc_degree, compositions(d, num_vars).into_iter().map(|e| (e, BigInt::one())))
}

/// Total Chern class of the tautological bundle, `Σ (-1)^r σ_r = Π (1 - x_a)`.
pub fn ctot_tautological(i: usize, trunc_degree: u32) -> TruncPoly {
    let mut acc = TruncPoly::zero(i, trunc_degree);
    for r in 0..=i {
        let sign = if r % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        acc = acc.add(&elementary_sigma(r, i, trunc_degree).scale(&sign)).expect("same shape");
    }
    acc
}

/// Total Chern class of the quotient bundle `V / T_i` on Gr(i, F^n): the
/// inverse of the tautological class, truncated at degree `n - i`.
pub fn ctot_quotient(i: usize, n: usize) -> Result<TruncPoly, ChernError> {
    if i == 0 || i >= n {
        return Err(ChernError::BadDimensions { n, i, j: i + 1 });
    }
    ctot_tautological(i, (n - i) as u32).inverse()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum ThetaIdentity {
    /// `θ_d(x,y,z) = x θ_{d-1}(x,y,z) + θ_d(y,z)`
    Recursion,
    /// `(∂x + ∂y + ∂z) θ_d = (d+2) θ_{d-1}`
    Euler,
}

/// First term where one of the θ identities fails.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{identity:?} identity fails at d = {d}, term {exps:?}: {lhs} vs {rhs}")]
pub struct IdentityMismatch {
    pub d: u32,
    pub identity: ThetaIdentity,
    pub exps: Vec<u32>,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

fn first_difference(d: u32, identity: ThetaIdentity, lhs: &TruncPoly, rhs: &TruncPoly) -> Option<IdentityMismatch> {
    let diff = lhs.sub(rhs).expect("same shape");
    diff.terms().keys().next().map(|e| IdentityMismatch {
        d,
        identity,
        exps: e.clone(),
        lhs: lhs.coeff(e),
        rhs: rhs.coeff(e),
    })
}

/// Checks both θ identities in three variables for `2 <= d <= d_max`.
pub fn verify_theta_identities(d_max: u32) -> Result<(), IdentityMismatch> {
    let deg = d_max.max(2);
    for d in 2..=d_max {
        let full = theta(d, 3, deg);
        let prev = theta(d - 1, 3, deg);
        let x = TruncPoly::var(3, deg, 0);
        let tail = theta(d, 2, deg).embed(3, &[1, 2]);
        let rhs = x.mul(&prev).expect("same shape").add(&tail).expect("same shape");
        if let Some(m) = first_difference(d, ThetaIdentity::Recursion, &full, &rhs) {
            return Err(m);
        }
        let lhs = (0..3).fold(TruncPoly::zero(3, deg), |acc, a| acc.add(&full.partial(a)).expect("same shape"));
        let rhs = prev.scale(&BigInt::from(d + 2));
        if let Some(m) = first_difference(d, ThetaIdentity::Euler, &lhs, &rhs) {
            return Err(m);
        }
    }
    Ok(())
}

/// Boundary step for one degree: `u_d(z) = θ_d(1, z)` and
/// `u_{d-1}(z) = θ_{d-1}(1, z)` have no common root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CertificateEntry {
    pub d: u32,
    #[serde(skip)]
    pub boundary: UniPolyQ,
    #[serde(skip)]
    pub boundary_prev: UniPolyQ,
    #[serde(skip)]
    pub gcd: UniPolyQ,
    pub gcd_degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CertificateChain {
    pub d_max: u32,
    pub entries: Vec<CertificateEntry>,
    pub pass: bool,
}

/// Restriction of a two-variable polynomial to the line where the first
/// variable is 1.
fn restrict_first_to_one(p: &TruncPoly) -> UniPolyQ {
    assert_eq!(p.num_vars(), 2);
    let len = p.terms().keys().map(|e| e[1] as usize + 1).max().unwrap_or(0);
    let mut coeffs = vec![BigRational::zero(); len];
    for (e, c) in p.terms() {
        coeffs[e[1] as usize] += BigRational::from_integer(c.clone());
    }
    UniPolyQ::new(coeffs)
}

pub fn smoothness_certificate(d_max: u32) -> Result<CertificateChain, ChernError> {
    if d_max < 2 {
        return Err(ChernError::BadRange(d_max as usize));
    }
    let mut entries = Vec::new();
    let mut prev = restrict_first_to_one(&theta(1, 2, d_max));
    for d in 2..=d_max {
        let cur = restrict_first_to_one(&theta(d, 2, d_max));
        let gcd = cur.gcd(&prev);
        let gcd_degree = gcd.degree().unwrap_or(0);
        entries.push(CertificateEntry { d, boundary: cur.clone(), boundary_prev: prev, gcd, gcd_degree });
        prev = cur;
    }
    let pass = entries.iter().all(|e| e.gcd == UniPolyQ::one());
    Ok(CertificateChain { d_max, entries, pass })
}

/// Determinant of the symmetric Gram matrix of a homogeneous quadric
/// (diagonal = squared-term coefficients, off-diagonal = half the cross terms).
pub fn quadric_gram_determinant(p: &TruncPoly) -> Result<BigRational, ChernError> {
    let n = p.num_vars();
    if p.terms().keys().any(|e| total(e) != 2) {
        return Err(ChernError::NotQuadric);
    }
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut m = vec![vec![BigRational::zero(); n]; n];
    for (e, c) in p.terms() {
        let c = BigRational::from_integer(c.clone());
        let vars: Vec<usize> = (0..n).filter(|&a| e[a] > 0).collect();
        match vars.as_slice() {
            [a] => m[*a][*a] = c,
            [a, b] => {
                m[*a][*b] = &c * &half;
                m[*b][*a] = &c * &half;
            }
            _ => unreachable!("degree-2 monomial"),
        }
    }
    Ok(rational_determinant(m))
}

fn rational_determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            let f = &m[r][c] / &pivot;
            if f.is_zero() {
                continue;
            }
            for t in c..n {
                let v = &m[c][t] * &f;
                m[r][t] -= v;
            }
        }
    }
    det
}

/// Outcome of trying to rule out a factorization of the quotient Chern class
/// into factors of degrees `n - j` and `j - i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// `i >= 2`: the homogenized class is θ_{n-i}, whose boundary certificate
    /// passes; together with the interior induction step this makes it
    /// irreducible, so no factorization exists.
    NoFactorization {
        degree: u32,
        chain: CertificateChain,
        homogenization_matches: bool,
        /// Gram determinant of θ_2 in `i + 1` variables, when `n - i = 2`.
        gram_determinant: Option<BigRational>,
    },
    /// `i >= 2` but some certificate step failed.
    Unresolved { degree: u32, chain: CertificateChain, homogenization_matches: bool },
    /// `i = 1`: the split analysis of `1 + t + ... + t^{n-1}`; `survivors`
    /// are the Chern-level survivors with the requested `j`.
    ChernLevel { n: usize, j: usize, survivors: Vec<SplitEntry>, surviving_js: Vec<usize> },
}

impl Obstruction {
    pub fn rules_out(&self) -> bool {
        match self {
            Obstruction::NoFactorization { .. } => true,
            Obstruction::Unresolved { .. } => false,
            Obstruction::ChernLevel { survivors, .. } => survivors.is_empty(),
        }
    }
}

pub fn factorization_obstruction(n: usize, i: usize, j: usize) -> Result<Obstruction, ChernError> {
    if i == 0 || i >= j || j + 1 > n {
        return Err(ChernError::BadDimensions { n, i, j });
    }
    if i == 1 {
        let table = classify_chern_splits(n)?;
        let surviving_js = table.survivors().map(|e| e.j).collect();
        let survivors = table.survivors().filter(|e| e.j == j).cloned().collect();
        return Ok(Obstruction::ChernLevel { n, j, survivors, surviving_js });
    }
    let degree = (n - i) as u32;
    let chain = smoothness_certificate(degree)?;
    let homogenized = ctot_quotient(i, n)?.homogenize(degree);
    let homogenization_matches = homogenized == theta(degree, i + 1, degree);
    let gram_determinant = if degree == 2 {
        Some(quadric_gram_determinant(&theta(2, i + 1, 2))?)
    } else {
        None
    };
    let gram_ok = gram_determinant.as_ref().is_none_or(|g| !g.is_zero());
    if chain.pass && homogenization_matches && gram_ok {
        Ok(Obstruction::NoFactorization { degree, chain, homogenization_matches, gram_determinant })
    } else {
        Ok(Obstruction::Unresolved { degree, chain, homogenization_matches })
    }
}
