//! Continuants (Muir symbols), the period diophantine equation and the
//! closed radicand formula.
//!
//! The continuant is the three-term recurrence
//!
//! ```text
//! K() = 1,   K(v1) = v1,   K(v1..vn) = vn * K(v1..v{n-1}) + K(v1..v{n-2})
//! ```
//!
//! and the Muir symbols are its windows over the period variables,
//! A_{i,j} = K(x_j, ..., x_{j+i}) and B_{i,j} = K(x_{j+1}, ..., x_{j+i}).
//! Running the recurrence backwards fixes the degenerate windows
//! K(len -1) = 0 and K(len -2) = 1, which is exactly what makes the
//! radicand formula come out right down to period length 1.
//!
//! A palindromic tuple (x0, ..., xP) with xP = 2*x0 is the expansion of a
//! square root if and only if
//!
//! ```text
//! xP = m * A_{P-2,1} - (-1)^P * A_{P-3,1} * B_{P-3,1}
//! ```
//!
//! for a positive integer m, in which case the radicand is
//! xP^2/4 + m * A_{P-3,1} - (-1)^P * B_{P-3,1}^2.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::cfrac::PeriodicCf;
use crate::error::{Error, Result};

/// Symbolic Muir symbols are kept only for short periods; the term count
/// grows like a Fibonacci number in the window length.
pub const MAX_SYMBOLIC_PERIOD: usize = 16;

/// A variable of the period equation: x0, ..., xP or the multiplier m.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X(u32),
    M,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(i) => write!(f, "x{i}"),
            Var::M => write!(f, "m"),
        }
    }
}

/// Exponent vector, kept sorted by variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    fn one() -> Self {
        Monomial(Vec::new())
    }

    fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    fn degree(&self) -> u64 {
        self.0.iter().map(|&(_, e)| e as u64).sum()
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0, self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }
}

/// Graded lexicographic order in (x0, ..., xP, m): total degree first, ties
/// broken by the exponent of the earliest variable.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                // The side that still has variables has a *later* first
                // variable missing on the other side; the other side's
                // exponent there is 0, so compare against 0.
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    // Earlier variable present only on one side: that side
                    // has a positive exponent where the other has zero.
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(&eb) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate integer polynomial in x0, ..., xP and m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        MultiPoly { terms }
    }

    pub fn var(v: Var) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), BigInt::one());
        MultiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (mono, c) in &other.terms {
            let entry = terms.entry(mono.clone()).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(mono);
            }
        }
        MultiPoly { terms }
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let entry = terms.entry(m).or_insert_with(BigInt::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MultiPoly { terms }
    }

    /// Evaluate with X(i) -> xs[i] and M -> m.
    pub fn eval(&self, xs: &[BigInt], m: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for (mono, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in &mono.0 {
                let base = match v {
                    Var::X(i) => &xs[i as usize],
                    Var::M => m,
                };
                for _ in 0..e {
                    t *= base;
                }
            }
            acc += t;
        }
        acc
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Descending graded lexicographic order.
        for (idx, (mono, coeff)) in self.terms.iter().rev().enumerate() {
            let mag = coeff.abs();
            if idx == 0 {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || mono.0.is_empty() {
                parts.push(mag.to_string());
            }
            for &(v, e) in &mono.0 {
                if e == 1 {
                    parts.push(v.to_string());
                } else {
                    parts.push(format!("{v}^{e}"));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// Numeric continuant K(vals).
pub fn continuant(vals: &[BigInt]) -> BigInt {
    let mut prev2 = BigInt::zero(); // K of length -1
    let mut prev1 = BigInt::one(); // K of the empty list
    for v in vals {
        let next = v * &prev1 + &prev2;
        prev2 = std::mem::replace(&mut prev1, next);
    }
    prev1
}

/// Continuant of a window that may have virtual length -1 or -2, the
/// backward extensions of the recurrence.
fn continuant_virtual(vals: &[BigInt], len: isize) -> BigInt {
    match len {
        -2 => BigInt::one(),
        -1 => BigInt::zero(),
        n if n >= 0 => continuant(&vals[..n as usize]),
        _ => unreachable!("continuant window shorter than -2"),
    }
}

/// Muir symbol A_{i,j} = K(x_j, ..., x_{j+i}) evaluated on a tuple.
pub fn symbol_a(xs: &[BigInt], i: isize, j: usize) -> BigInt {
    continuant_virtual(&xs[j..], i + 1)
}

/// Muir symbol B_{i,j} = K(x_{j+1}, ..., x_{j+i}) evaluated on a tuple.
pub fn symbol_b(xs: &[BigInt], i: isize, j: usize) -> BigInt {
    continuant_virtual(&xs[j + 1..], i)
}

/// Symbolic continuant K(x_from, ..., x_to) over formal variables.
pub fn continuant_poly(from: u32, to_inclusive: i64) -> Result<MultiPoly> {
    let len = to_inclusive - from as i64 + 1;
    if len > (MAX_SYMBOLIC_PERIOD as i64) + 1 {
        return Err(Error::SymbolicTooLarge(len as usize));
    }
    match len {
        -1 => return Ok(MultiPoly::constant(BigInt::one())),
        0 => return Ok(MultiPoly::constant(BigInt::one())),
        _ if len < -1 => return Ok(MultiPoly::zero()),
        _ => {}
    }
    let mut prev2 = MultiPoly::zero();
    let mut prev1 = MultiPoly::constant(BigInt::one());
    for idx in from..=(to_inclusive as u32) {
        let next = MultiPoly::var(Var::X(idx)).mul(&prev1).add(&prev2);
        prev2 = std::mem::replace(&mut prev1, next);
    }
    Ok(prev1)
}

/// Symbolic A_{i,j} as a polynomial in the period variables.
pub fn symbol_a_poly(i: i64, j: u32) -> Result<MultiPoly> {
    match i {
        -2 => Ok(MultiPoly::zero()),
        -1 => Ok(MultiPoly::constant(BigInt::one())),
        _ => continuant_poly(j, j as i64 + i),
    }
}

/// Symbolic B_{i,j} as a polynomial in the period variables.
pub fn symbol_b_poly(i: i64, j: u32) -> Result<MultiPoly> {
    match i {
        -2 => Ok(MultiPoly::constant(BigInt::one())),
        -1 => Ok(MultiPoly::zero()),
        _ => continuant_poly(j + 1, j as i64 + i),
    }
}

fn sign_p(p: usize) -> BigInt {
    if p.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Residual of the period equation for a tuple (x0, ..., xP) and a
/// multiplier m; zero exactly when the pair is a solution.
pub fn period_residual(xs: &[BigInt], m: &BigInt) -> BigInt {
    let p = xs.len() - 1;
    let a_p2 = symbol_a(xs, p as isize - 2, 1);
    let a_p3 = symbol_a(xs, p as isize - 3, 1);
    let b_p3 = symbol_b(xs, p as isize - 3, 1);
    xs[p].clone() - m * a_p2 + sign_p(p) * a_p3 * b_p3
}

/// The unique candidate multiplier for a tuple, when it is a positive
/// integer.  Returns `Ok(None)` when the quotient is not a positive
/// integer, i.e. the tuple solves the period equation for no m.
pub fn solve_multiplier(xs: &[BigInt]) -> Result<Option<BigInt>> {
    let p = xs.len() - 1;
    let denom = symbol_a(xs, p as isize - 2, 1);
    if denom.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let numer = xs[p].clone()
        + sign_p(p) * symbol_a(xs, p as isize - 3, 1) * symbol_b(xs, p as isize - 3, 1);
    if (&numer % &denom).is_zero() {
        let m = numer / denom;
        if m.is_positive() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Radicand D of the square root whose expansion is the solution tuple.
/// Only the xP = 2*x0 branch has the closed form; the odd branch is
/// validated by reconstruction instead.
pub fn radicand_from_solution(xs: &[BigInt], m: &BigInt) -> Result<BigInt> {
    let p = xs.len() - 1;
    if (&xs[p] % 2u8).is_one() {
        return Err(Error::OddXp);
    }
    if !period_residual(xs, m).is_zero() {
        return Err(Error::NotASolution);
    }
    let half = &xs[p] / 2;
    let a_p3 = symbol_a(xs, p as isize - 3, 1);
    let b_p3 = symbol_b(xs, p as isize - 3, 1);
    Ok(&half * &half + m * a_p3 - sign_p(p) * &b_p3 * &b_p3)
}

/// A palindromic solution of the period equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionTuple {
    xs: Vec<BigInt>,
    m: BigInt,
}

impl SolutionTuple {
    pub fn new(xs: Vec<BigInt>) -> Result<Self> {
        if xs.len() < 2 {
            return Err(Error::NonPositiveInput(
                "tuple needs at least x0, x1".into(),
            ));
        }
        if xs.iter().any(|x| x < &BigInt::one()) {
            return Err(Error::NonPositiveInput("tuple entries must be >= 1".into()));
        }
        let p = xs.len() - 1;
        for i in 1..p {
            if xs[i] != xs[p - i] {
                return Err(Error::NotASolution);
            }
        }
        let twice = &xs[0] * 2;
        if xs[p] != twice && xs[p] != &twice - 1 {
            return Err(Error::NotASolution);
        }
        match solve_multiplier(&xs)? {
            Some(m) => Ok(SolutionTuple { xs, m }),
            None => Err(Error::NotASolution),
        }
    }

    pub fn from_cf(cf: &PeriodicCf) -> Result<Self> {
        Self::new(cf.tuple()?)
    }

    pub fn xs(&self) -> &[BigInt] {
        &self.xs
    }

    pub fn multiplier(&self) -> &BigInt {
        &self.m
    }

    pub fn period_len(&self) -> usize {
        self.xs.len() - 1
    }
}
