//! Finite fields GF(p^k) in polynomial-basis form, with dense matrices and
//! row reduction over them.
//!
//! Elements are stored as a packed integer code. For an element with
//! polynomial-basis coordinates `c_0 + c_1 x + ... + c_{k-1} x^{k-1}` the code
//! is `c_0 p^{k-1} + c_1 p^{k-2} + ... + c_{k-1}`, so comparing codes is the
//! same as comparing coefficient sequences lexicographically (lowest degree
//! first). Every element has exactly one code.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("no built-in modulus for GF({p}^{k}); pass one explicitly")]
    NoBuiltinModulus { p: u32, k: u32 },
    #[error("field order {p}^{k} does not fit in 32 bits")]
    TooLarge { p: u64, k: u32 },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("coefficient vector {0:?} is not a valid element")]
    BadElement(Vec<u32>),
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
}

/// Conway polynomials for the non-prime orders the crate knows by heart,
/// lowest-degree coefficient first.
const BUILTIN_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
];

/// Element of a finite field, as a packed code in `0..q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Ffe(u32);

impl Ffe {
    pub const ZERO: Ffe = Ffe(0);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Arithmetic operation selector for [`FieldSpec::apply`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

/// A validated finite field GF(p^k).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    /// Monic irreducible modulus, lowest degree first, length `k + 1`.
    modulus: Option<Vec<u32>>,
    q: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// Builds GF(p^k). When `k > 1` and no modulus is given, a built-in
    /// Conway polynomial is used (available for q <= 64).
    pub fn new(p: u64, k: u32, modulus: Option<&[u32]>) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::BadModulus("extension degree must be at least 1".into()));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= u64::from(u32::MAX))
            .ok_or(FieldError::TooLarge { p, k })?;
        let p = p as u32;
        let q = q as u32;
        if k == 1 {
            if let Some(m) = modulus {
                if m.len() != 2 || m[1] != 1 || m[0] >= p {
                    return Err(FieldError::BadModulus(format!(
                        "{m:?} is not a monic degree-1 polynomial over GF({p})"
                    )));
                }
            }
            return Ok(FieldSpec { p, k, modulus: None, q });
        }
        let modulus = match modulus {
            Some(m) => m.to_vec(),
            None => BUILTIN_MODULI
                .iter()
                .find(|(bp, bk, _)| *bp == p && *bk == k)
                .map(|(_, _, m)| m.to_vec())
                .ok_or(FieldError::NoBuiltinModulus { p, k })?,
        };
        validate_modulus(p, k, &modulus)?;
        Ok(FieldSpec { p, k, modulus: Some(modulus), q })
    }

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        Self::new(p, 1, None)
    }

    /// Builds the field of order `q` with the built-in modulus.
    pub fn of_order(q: u64) -> Result<Self, FieldError> {
        let (p, k) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        Self::new(p, k, None)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.modulus.as_deref()
    }

    pub fn zero(&self) -> Ffe {
        Ffe(0)
    }

    pub fn one(&self) -> Ffe {
        // constant term is the most significant digit
        Ffe(self.p.pow(self.k - 1))
    }

    /// All elements in the fixed total order.
    pub fn elements(&self) -> impl Iterator<Item = Ffe> {
        (0..self.q).map(Ffe)
    }

    pub fn from_code(&self, code: u32) -> Option<Ffe> {
        (code < self.q).then_some(Ffe(code))
    }

    /// Element with the given polynomial-basis coordinates (lowest degree first).
    pub fn element(&self, coeffs: &[u32]) -> Result<Ffe, FieldError> {
        if coeffs.len() != self.k as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(FieldError::BadElement(coeffs.to_vec()));
        }
        Ok(Ffe(coeffs.iter().fold(0, |acc, &c| acc * self.p + c)))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Ffe {
        let r = n.rem_euclid(i64::from(self.p)) as u32;
        Ffe(r * self.p.pow(self.k - 1))
    }

    pub fn coeffs(&self, a: Ffe) -> Vec<u32> {
        let mut out = vec![0; self.k as usize];
        let mut c = a.0;
        for slot in out.iter_mut().rev() {
            *slot = c % self.p;
            c /= self.p;
        }
        out
    }

    fn pack(&self, coeffs: &[u32]) -> Ffe {
        Ffe(coeffs.iter().fold(0, |acc, &c| acc * self.p + c))
    }

    pub fn add(&self, a: Ffe, b: Ffe) -> Ffe {
        if self.k == 1 {
            let s = a.0 as u64 + b.0 as u64;
            return Ffe((s % self.p as u64) as u32);
        }
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let s: Vec<u32> = x.iter().zip(&y).map(|(&u, &v)| (u + v) % self.p).collect();
        self.pack(&s)
    }

    pub fn neg(&self, a: Ffe) -> Ffe {
        if self.k == 1 {
            return Ffe((self.p - a.0) % self.p);
        }
        let s: Vec<u32> = self.coeffs(a).iter().map(|&u| (self.p - u) % self.p).collect();
        self.pack(&s)
    }

    pub fn sub(&self, a: Ffe, b: Ffe) -> Ffe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Ffe, b: Ffe) -> Ffe {
        let p = self.p as u64;
        if self.k == 1 {
            return Ffe(((a.0 as u64 * b.0 as u64) % p) as u32);
        }
        let modulus = self.modulus.as_ref().expect("extension field has a modulus");
        let k = self.k as usize;
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &u) in x.iter().enumerate() {
            if u == 0 {
                continue;
            }
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u as u64 * v as u64) % p;
            }
        }
        for deg in (k..prod.len()).rev() {
            let t = prod[deg];
            if t == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, &m) in modulus[..k].iter().enumerate() {
                let idx = deg - k + i;
                prod[idx] = (prod[idx] + (p - t) * m as u64) % p;
            }
        }
        let low: Vec<u32> = prod[..k].iter().map(|&c| c as u32).collect();
        self.pack(&low)
    }

    pub fn pow(&self, a: Ffe, mut e: u64) -> Ffe {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Ffe) -> Result<Ffe, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.pow(a, u64::from(self.q) - 2))
    }

    pub fn div(&self, a: Ffe, b: Ffe) -> Result<Ffe, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Dispatches one arithmetic operation; unary operations ignore `b`.
    pub fn apply(&self, op: FieldOp, a: Ffe, b: Ffe) -> Result<Ffe, FieldError> {
        Ok(match op {
            FieldOp::Add => self.add(a, b),
            FieldOp::Sub => self.sub(a, b),
            FieldOp::Mul => self.mul(a, b),
            FieldOp::Div => self.div(a, b)?,
            FieldOp::Neg => self.neg(a),
            FieldOp::Inv => self.inv(a)?,
        })
    }

    /// Decimal rendering: the residue for prime fields, otherwise the
    /// comma-separated coefficient vector.
    pub fn format(&self, a: Ffe) -> String {
        self.coeffs(a).iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.k)
        }
    }
}

/// Splits `q` as `p^k`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn validate_modulus(p: u32, k: u32, m: &[u32]) -> Result<(), FieldError> {
    if m.len() != k as usize + 1 {
        return Err(FieldError::BadModulus(format!("{m:?} does not have degree {k}")));
    }
    if m[k as usize] != 1 {
        return Err(FieldError::BadModulus(format!("{m:?} is not monic")));
    }
    if m.iter().any(|&c| c >= p) {
        return Err(FieldError::BadModulus(format!("{m:?} has coefficients outside GF({p})")));
    }
    let m64: Vec<u64> = m.iter().map(|&c| c as u64).collect();
    // every reducible polynomial has a monic factor of degree <= k/2
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d);
        for code in 0..count {
            let mut f = vec![0u64; d as usize + 1];
            let mut c = code;
            for slot in f.iter_mut().take(d as usize) {
                *slot = c % p as u64;
                c /= p as u64;
            }
            f[d as usize] = 1;
            if poly_rem_mod_p(&m64, &f, p as u64).iter().all(|&c| c == 0) {
                return Err(FieldError::BadModulus(format!(
                    "{m:?} is reducible over GF({p}) (factor {f:?})"
                )));
            }
        }
    }
    Ok(())
}

/// Remainder of `a` by the monic polynomial `b` over GF(p), both lowest
/// degree first.
fn poly_rem_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = r.pop().unwrap_or(0);
        if lead != 0 {
            let off = r.len() - db;
            for (i, &bc) in b[..db].iter().enumerate() {
                r[off + i] = (r[off + i] + (p - lead) * bc) % p;
            }
        }
    }
    r
}

/// Dense row-major matrix over a finite field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatGF {
    rows: usize,
    cols: usize,
    entries: Vec<Ffe>,
}

impl MatGF {
    pub fn new(rows: usize, cols: usize, entries: Vec<Ffe>) -> Result<Self, FieldError> {
        if entries.len() != rows * cols {
            return Err(FieldError::Shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(MatGF { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatGF { rows, cols, entries: vec![Ffe::ZERO; rows * cols] }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(cols: usize, rows: &[Vec<Ffe>]) -> Result<Self, FieldError> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(FieldError::Shape(format!("row of length {} in a {cols}-column matrix", bad.len())));
        }
        Ok(MatGF { rows: rows.len(), cols, entries: rows.concat() })
    }

    /// Convenience constructor from integer entries mapped into the prime subfield.
    pub fn from_ints(field: &FieldSpec, rows: &[&[i64]]) -> Result<Self, FieldError> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<Ffe>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_int(v)).collect())
            .collect();
        Self::from_rows(cols, &rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Ffe] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> Ffe {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Ffe) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Ffe] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &MatGF) -> Result<Self, FieldError> {
        if self.cols != other.cols {
            return Err(FieldError::Shape(format!("cannot stack {} and {} columns", self.cols, other.cols)));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(MatGF { rows: self.rows + other.rows, cols: self.cols, entries })
    }

    pub fn mul(&self, field: &FieldSpec, other: &MatGF) -> Result<Self, FieldError> {
        if self.cols != other.rows {
            return Err(FieldError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(r, t);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let v = field.add(out.get(r, c), field.mul(a, other.get(t, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }
}

/// Result of row reduction: the nonzero rows of the reduced row echelon
/// form, their pivot columns, and the rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: MatGF,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Reduced row echelon form. Zero rows are dropped, so the returned matrix
/// is `rank x cols`.
pub fn rref(field: &FieldSpec, m: &MatGF) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        if pr != r {
            for t in 0..cols {
                a.entries.swap(pr * cols + t, r * cols + t);
            }
        }
        let inv = field.inv(a.get(r, c)).expect("pivot is nonzero");
        for t in c..cols {
            a.set(r, t, field.mul(inv, a.get(r, t)));
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c);
            if f.is_zero() {
                continue;
            }
            for t in c..cols {
                let v = field.sub(a.get(i, t), field.mul(f, a.get(r, t)));
                a.set(i, t, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.entries.truncate(r * cols);
    a.rows = r;
    Rref { matrix: a, pivots, rank: r }
}

pub fn rank(field: &FieldSpec, m: &MatGF) -> usize {
    rref(field, m).rank
}

pub fn is_invertible(field: &FieldSpec, m: &MatGF) -> bool {
    m.rows == m.cols && rank(field, m) == m.rows
}

/// Basis (as rows, in rref) of the right kernel `{x : m x = 0}`.
pub fn kernel(field: &FieldSpec, m: &MatGF) -> MatGF {
    let red = rref(field, m);
    let cols = m.cols;
    let free: Vec<usize> = (0..cols).filter(|c| !red.pivots.contains(c)).collect();
    let mut basis = MatGF::zeros(free.len(), cols);
    for (b, &fc) in free.iter().enumerate() {
        basis.set(b, fc, field.one());
        for (r, &pc) in red.pivots.iter().enumerate() {
            basis.set(b, pc, field.neg(red.matrix.get(r, fc)));
        }
    }
    rref(field, &basis).matrix
}
