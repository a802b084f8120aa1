//! Exact continued-fraction expansion and reconstruction of quadratic surds.
//!
//! For a nonsquare D the expansion of sqrt(D) is purely periodic after the
//! integer part,
//!
//! ```text
//! sqrt(D) = [a0; a1, ..., aP]  with  aP = 2*a0
//! ```
//!
//! and the interior (a1, ..., a{P-1}) is a palindrome. Everything here runs
//! on the integer P/Q recurrence
//!
//! ```text
//! P_{i+1} = a_i * Q_i - P_i,    Q_{i+1} = (D - P_{i+1}^2) / Q_i,
//! ```
//!
//! which stays in integers whenever Q divides D - P^2, so no floating point
//! is involved at any point.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact value `(num + sqrt(rad)) / den` with integer parts.
///
/// A perfect-square radicand is folded into the numerator on construction,
/// so `rad > 0` means the value is irrational. Equality is mathematical
/// (cross-multiplied), not representational.
#[derive(Debug, Clone)]
pub struct QuadraticSurd {
    num: BigInt,
    den: BigInt,
    rad: BigUint,
}

impl QuadraticSurd {
    pub fn new(num: BigInt, den: BigInt, rad: BigUint) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let mut s = QuadraticSurd { num, den, rad };
        s.normalize();
        Ok(s)
    }

    /// The value sqrt(d).
    pub fn sqrt(d: u64) -> Result<Self> {
        Self::new(BigInt::zero(), BigInt::one(), BigUint::from(d))
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn radicand(&self) -> &BigUint {
        &self.rad
    }

    pub fn is_rational(&self) -> bool {
        self.rad.is_zero()
    }

    /// True for values of the exact form sqrt(D), D a nonsquare integer.
    pub fn is_pure_sqrt(&self) -> bool {
        !self.rad.is_zero() && self.num.is_zero() && self.den.is_one()
    }

    fn normalize(&mut self) {
        // Fold a perfect-square radicand into the rational part.
        if !self.rad.is_zero() {
            let r = self.rad.sqrt();
            if &r * &r == self.rad {
                self.num += BigInt::from(r);
                self.rad = BigUint::zero();
            }
        }
        if self.rad.is_zero() {
            let g = self.num.gcd(&self.den);
            if !g.is_zero() {
                self.num /= &g;
                self.den /= &g;
            }
            if self.den.is_negative() {
                self.num = -std::mem::take(&mut self.num);
                self.den = -std::mem::take(&mut self.den);
            }
            return;
        }
        // Divide out any common factor of num and den whose square divides
        // the radicand.
        let g = self.num.gcd(&self.den).magnitude().clone();
        let e = largest_square_divisor_within(&g, &self.rad);
        if !e.is_one() {
            let eb = BigInt::from(e.clone());
            self.num /= &eb;
            self.den /= &eb;
            self.rad /= &e * &e;
        }
    }

    /// Sign of the value: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let num_part = if self.rad.is_zero() {
            self.num.clone()
        } else {
            // num + sqrt(rad) > 0  iff  num >= 0 or num^2 < rad
            let pos = !self.num.is_negative() || (&self.num * &self.num).magnitude() < &self.rad;
            if pos {
                BigInt::one()
            } else {
                -BigInt::one()
            }
        };
        let s = num_part.signum() * self.den.signum();
        if s.is_positive() {
            1
        } else if s.is_negative() {
            -1
        } else {
            0
        }
    }
}

impl PartialEq for QuadraticSurd {
    fn eq(&self, other: &Self) -> bool {
        if &self.num * &other.den != &other.num * &self.den {
            return false;
        }
        let d1 = BigInt::from(self.rad.clone()) * &other.den * &other.den;
        let d2 = BigInt::from(other.rad.clone()) * &self.den * &self.den;
        if d1 != d2 {
            return false;
        }
        // Irrational parts must carry the same sign.
        self.rad.is_zero() || self.den.is_negative() == other.den.is_negative()
    }
}

impl Eq for QuadraticSurd {}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rad.is_zero() {
            if self.den.is_one() {
                return write!(f, "{}", self.num);
            }
            return write!(f, "{}/{}", self.num, self.den);
        }
        if self.num.is_zero() && self.den.is_one() {
            return write!(f, "sqrt({})", self.rad);
        }
        if self.num.is_zero() {
            return write!(f, "sqrt({})/{}", self.rad, self.den);
        }
        if self.den.is_one() {
            return write!(f, "{} + sqrt({})", self.num, self.rad);
        }
        write!(f, "({} + sqrt({}))/{}", self.num, self.rad, self.den)
    }
}

/// Largest divisor e of g with e^2 dividing rad that small trial division
/// plus one whole-cofactor test can see.  Partial reduction is sound
/// (equality is cross-multiplied), and a value equal to sqrt(D) reduces
/// completely: its denominator squared divides the radicand.
fn largest_square_divisor_within(g: &BigUint, rad: &BigUint) -> BigUint {
    if g.is_zero() || g.is_one() {
        return BigUint::one();
    }
    let mut e = BigUint::one();
    let mut rest = g.clone();
    let mut rad = rad.clone();
    let mut p = 2u32;
    while p <= 1000 && !rest.is_one() {
        let pb = BigUint::from(p);
        let sq = &pb * &pb;
        while (&rest % &pb).is_zero() && (&rad % &sq).is_zero() {
            rest /= &pb;
            rad /= &sq;
            e *= &pb;
        }
        while (&rest % &pb).is_zero() {
            rest /= &pb;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if !rest.is_one() {
        let sq = &rest * &rest;
        if (&rad % &sq).is_zero() {
            e *= &rest;
        }
    }
    e
}

/// Eventually periodic continued fraction: a head (at least the integer
/// part a0) followed by the minimal repeating block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicCf {
    head: Vec<BigInt>,
    period: Vec<BigInt>,
}

impl PeriodicCf {
    /// Validates entries and reduces the period to its primitive block.
    pub fn new(head: Vec<BigInt>, period: Vec<BigInt>) -> Result<Self> {
        if head.is_empty() {
            return Err(Error::NonPositiveInput("head must contain a0".into()));
        }
        if head[0].is_negative() {
            return Err(Error::NonPositiveInput("a0 must be nonnegative".into()));
        }
        if head.iter().skip(1).any(|a| a < &BigInt::one()) {
            return Err(Error::NonPositiveInput(
                "partial quotients after a0 must be >= 1".into(),
            ));
        }
        if period.is_empty() {
            return Err(Error::NonPositiveInput("period must be nonempty".into()));
        }
        if period.iter().any(|a| a < &BigInt::one()) {
            return Err(Error::NonPositiveInput(
                "period entries must be >= 1".into(),
            ));
        }
        let period = primitive_block(period);
        Ok(PeriodicCf { head, period })
    }

    pub fn from_u64(head: &[u64], period: &[u64]) -> Result<Self> {
        Self::new(
            head.iter().map(|&x| BigInt::from(x)).collect(),
            period.iter().map(|&x| BigInt::from(x)).collect(),
        )
    }

    pub fn a0(&self) -> &BigInt {
        &self.head[0]
    }

    pub fn head(&self) -> &[BigInt] {
        &self.head
    }

    pub fn period(&self) -> &[BigInt] {
        &self.period
    }

    pub fn period_len(&self) -> usize {
        self.period.len()
    }

    /// True when the head is a bare integer part, the shape sqrt(D) takes.
    pub fn is_sqrt_form(&self) -> bool {
        self.head.len() == 1
    }

    /// The tuple (x0, x1, ..., xP) of a sqrt(D)-shaped fraction.
    pub fn tuple(&self) -> Result<Vec<BigInt>> {
        if !self.is_sqrt_form() {
            return Err(Error::NonPositiveInput(
                "tuple is only defined for a pure sqrt expansion".into(),
            ));
        }
        let mut xs = Vec::with_capacity(1 + self.period.len());
        xs.push(self.head[0].clone());
        xs.extend(self.period.iter().cloned());
        Ok(xs)
    }

    /// Infinite partial-quotient stream truncated to `n` terms.
    pub fn quotients(&self, n: usize) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            if i < self.head.len() {
                out.push(self.head[i].clone());
            } else {
                let j = (i - self.head.len()) % self.period.len();
                out.push(self.period[j].clone());
            }
        }
        out
    }
}

/// Reduce a repeated block to its primitive root, e.g. (1,2,1,2) -> (1,2).
fn primitive_block(period: Vec<BigInt>) -> Vec<BigInt> {
    let n = period.len();
    for len in 1..n {
        if n.is_multiple_of(len) && period.chunks(len).all(|c| c == &period[..len]) {
            return period[..len].to_vec();
        }
    }
    period
}

impl fmt::Display for PeriodicCf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<String> = self.head.iter().map(|a| a.to_string()).collect();
        let period: Vec<String> = self.period.iter().map(|a| a.to_string()).collect();
        write!(f, "[{}; {}]", head.join(","), period.join(","))
    }
}

impl FromStr for PeriodicCf {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::ParseCf(s.into()))?;
        let (head, period) = inner
            .split_once(';')
            .ok_or_else(|| Error::ParseCf(s.into()))?;
        let parse_list = |part: &str| -> Result<Vec<BigInt>> {
            part.split(',')
                .map(|tok| BigInt::from_str(tok.trim()).map_err(|_| Error::ParseCf(s.into())))
                .collect()
        };
        PeriodicCf::new(parse_list(head)?, parse_list(period)?)
    }
}

/// Convergent numerators A, denominators B and the full quotients Q of the
/// underlying surd, with Q_0 = 1 for a pure sqrt(D).
#[derive(Debug, Clone)]
pub struct ConvergentTable {
    pub a: Vec<BigInt>,
    pub b: Vec<BigInt>,
    pub q: Vec<BigInt>,
}

/// Continued fraction of sqrt(d) for a nonsquare d >= 2.
pub fn expand_sqrt(d: u64) -> Result<PeriodicCf> {
    expand_sqrt_big(&BigUint::from(d))
}

/// BigUint version of [`expand_sqrt`]; the sweep paths stay in u64 but the
/// reconstruction checks of perturbed families can overflow it.
pub fn expand_sqrt_big(d: &BigUint) -> Result<PeriodicCf> {
    if d < &BigUint::from(2u32) {
        return Err(Error::NonPositiveInput(format!("D = {d} must be >= 2")));
    }
    let a0 = d.sqrt();
    if &a0 * &a0 == *d {
        let digits = d.to_u64_digits();
        return Err(Error::PerfectSquareInput(if digits.len() == 1 {
            digits[0]
        } else {
            u64::MAX
        }));
    }
    let d = BigInt::from(d.clone());
    let a0 = BigInt::from(a0);
    let mut p = a0.clone();
    let mut q = &d - &a0 * &a0;
    let mut period = Vec::new();
    loop {
        // x_i = (p + sqrt(d)) / q with q > 0 throughout for sqrt(D).
        let a = (&a0 + &p).div_floor(&q);
        period.push(a.clone());
        if q.is_one() {
            debug_assert_eq!(a, &a0 * 2);
            break;
        }
        let p_next = &a * &q - &p;
        let q_next = (&d - &p_next * &p_next) / &q;
        p = p_next;
        q = q_next;
    }
    PeriodicCf::new(vec![a0], period)
}

/// Floor of (p + sqrt(d)) / q for irrational sqrt(d), exact.
fn floor_surd(p: &BigInt, q: &BigInt, sqrt_floor: &BigInt) -> BigInt {
    let n = p + sqrt_floor;
    if q.is_positive() {
        n.div_floor(q)
    } else {
        -(n.div_floor(&-q)) - 1
    }
}

/// Eventually periodic expansion of a positive irrational quadratic surd,
/// with explicit pre-period and minimal period.
pub fn expand_surd(s: &QuadraticSurd) -> Result<PeriodicCf> {
    if s.is_rational() {
        return Err(Error::RationalInput);
    }
    if s.signum() <= 0 {
        return Err(Error::NonPositiveInput(format!("surd {s} is not positive")));
    }
    // Scale to the canonical form where den divides rad - num^2.
    let (mut p, mut q, d) = {
        let (p0, q0, d0) = (s.num.clone(), s.den.clone(), BigInt::from(s.rad.clone()));
        if ((&d0 - &p0 * &p0) % &q0).is_zero() {
            (p0, q0, d0)
        } else {
            let scale = q0.abs();
            (&p0 * &scale, &q0 * &scale, &d0 * &scale * &scale)
        }
    };
    let sqrt_floor = d.to_biguint().unwrap().sqrt();
    let sqrt_floor = BigInt::from(sqrt_floor);
    let mut quotients: Vec<BigInt> = Vec::new();
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    loop {
        if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
            if start == 0 {
                // Purely periodic: present as [w0; w1, ..., w0].
                let mut period = quotients[1..].to_vec();
                period.push(quotients[0].clone());
                return PeriodicCf::new(vec![quotients[0].clone()], period);
            }
            let head = quotients[..start].to_vec();
            let period = quotients[start..].to_vec();
            return PeriodicCf::new(head, period);
        }
        seen.insert((p.clone(), q.clone()), quotients.len());
        let a = floor_surd(&p, &q, &sqrt_floor);
        quotients.push(a.clone());
        let p_next = &a * &q - &p;
        let q_next = (&d - &p_next * &p_next) / &q;
        p = p_next;
        q = q_next;
    }
}

/// Radicand of a sqrt-shaped fraction straight from the period equation,
/// avoiding the word-matrix reconstruction on long periods.  None when the
/// shape or the equation does not cooperate; callers then reconstruct.
fn period_equation_radicand(cf: &PeriodicCf) -> Option<BigInt> {
    if !cf.is_sqrt_form() {
        return None;
    }
    let xs = cf.tuple().ok()?;
    let p = xs.len() - 1;
    if xs[p] != cf.a0() * 2 || (1..p).any(|i| xs[i] != xs[p - i]) {
        return None;
    }
    let a2 = crate::muir::symbol_a(&xs, p as isize - 2, 1);
    if a2.is_zero() {
        return None;
    }
    let a3 = crate::muir::symbol_a(&xs, p as isize - 3, 1);
    let b3 = crate::muir::symbol_b(&xs, p as isize - 3, 1);
    let sign: BigInt = if p % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let numer = &xs[p] + &sign * &a3 * &b3;
    if !(&numer % &a2).is_zero() {
        return None;
    }
    let m = numer / &a2;
    if m.is_negative() {
        return None;
    }
    let a0 = cf.a0();
    let d = a0 * a0 + &m * &a3 - &sign * &b3 * &b3;
    // Sanity: d must be a nonsquare with integer part exactly a0.
    if d <= (a0 * a0) {
        return None;
    }
    let du = d.to_biguint()?;
    if BigInt::from(du.sqrt()) != *a0 {
        return None;
    }
    Some(d)
}

/// Convergents A_i/B_i for the first `n` partial quotients, plus the full
/// quotient table Q_0..Q_n of the reconstructed surd.
pub fn convergents(cf: &PeriodicCf, n: usize) -> Result<ConvergentTable> {
    if n == 0 {
        return Err(Error::NonPositiveInput("n must be >= 1".into()));
    }
    let quots = cf.quotients(n);
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    let (mut a_prev2, mut a_prev1) = (BigInt::zero(), BigInt::one()); // A_{-2}, A_{-1}
    let (mut b_prev2, mut b_prev1) = (BigInt::one(), BigInt::zero()); // B_{-2}, B_{-1}
    for ai in &quots {
        let an = ai * &a_prev1 + &a_prev2;
        let bn = ai * &b_prev1 + &b_prev2;
        a.push(an.clone());
        b.push(bn.clone());
        a_prev2 = std::mem::replace(&mut a_prev1, an);
        b_prev2 = std::mem::replace(&mut b_prev1, bn);
    }

    // Full quotients from the P/Q recurrence of the underlying surd.
    let (mut p, mut q, d) = if let Some(d) = period_equation_radicand(cf) {
        (BigInt::zero(), BigInt::one(), d)
    } else {
        let surd = reconstruct_surd(cf)?;
        let (p0, q0, d0) = (
            surd.num.clone(),
            surd.den.clone(),
            BigInt::from(surd.rad.clone()),
        );
        if ((&d0 - &p0 * &p0) % &q0).is_zero() {
            (p0, q0, d0)
        } else {
            let scale = q0.abs();
            (&p0 * &scale, &q0 * &scale, &d0 * &scale * &scale)
        }
    };
    let sqrt_floor = BigInt::from(d.to_biguint().unwrap().sqrt());
    let mut qs = Vec::with_capacity(n + 1);
    qs.push(q.clone());
    for _ in 0..n {
        let ai = floor_surd(&p, &q, &sqrt_floor);
        let p_next = &ai * &q - &p;
        let q_next = (&d - &p_next * &p_next) / &q;
        p = p_next;
        q = q_next;
        qs.push(q.clone());
    }
    Ok(ConvergentTable { a, b, q: qs })
}

/// Exact value of an eventually periodic continued fraction.
///
/// The periodic tail t satisfies the fixed-point equation of its one-period
/// matrix; the head is then folded in by a single rationalization.
pub fn reconstruct_surd(cf: &PeriodicCf) -> Result<QuadraticSurd> {
    // Tail matrix over one period.
    let (ma, mb, mc, md) = word_matrix(cf.period());
    // t = (ma t + mb)/(mc t + md)  =>  mc t^2 + (md - ma) t - mb = 0.
    let u = &ma - &md;
    let v = BigInt::from(2) * &mc;
    let disc = &u * &u + BigInt::from(4) * &mb * &mc;
    if !disc.is_positive() {
        return Err(Error::DegeneratePeriod);
    }
    let disc_u = disc.to_biguint().unwrap();
    let root = disc_u.sqrt();
    if &root * &root == disc_u {
        return Err(Error::DegeneratePeriod);
    }
    // t = (u + sqrt(disc)) / v, v > 0, so t is the positive root.
    let (na, nb, nc, nd) = word_matrix(cf.head());
    // x = (na t + nb)/(nc t + nd) with t = (u + sqrt(disc))/v.
    let g_num = &na * &u + &nb * &v; // alpha*u + beta*v
    let g_den = &nc * &u + &nd * &v; // gamma*u + delta*v
    let e = &g_den * &g_den - &nc * &nc * &disc;
    if e.is_zero() {
        return Err(Error::DegeneratePeriod);
    }
    let f = &g_num * &g_den - &na * &nc * &disc;
    let g = &v * (&na * &nd - &nb * &nc);
    let (f, g, e) = if g.is_negative() {
        (-f, -g, -e)
    } else {
        (f, g, e)
    };
    let common = f.gcd(&g).gcd(&e);
    let (f, g, e) = (&f / &common, &g / &common, &e / &common);
    let rad = (&g * &g * &disc).to_biguint().unwrap();
    QuadraticSurd::new(f, e, rad)
}

/// Product of [[w_i, 1], [1, 0]] over a word.
fn word_matrix(word: &[BigInt]) -> (BigInt, BigInt, BigInt, BigInt) {
    let (mut a, mut b, mut c, mut d) =
        (BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one());
    for w in word {
        let (na, nb) = (&a * w + &b, a.clone());
        let (nc, nd) = (&c * w + &d, c.clone());
        a = na;
        b = nb;
        c = nc;
        d = nd;
    }
    (a, b, c, d)
}
