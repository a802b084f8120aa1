//! Q-rank of the curves E(p), class numbers by reduced-form counting, and
//! the conjecture verdict q_rank + 1 = complexity.
//!
//! The rank formula (1/2h_K) rk E(p) = 1 for p = 3 mod 8 and 0 for
//! p = 7 mod 8 is taken as ground truth; no descent is performed here.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::primes::is_prime;

/// Rank data of E(p) over its field of definition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RankRecord {
    pub p: u64,
    pub q_rank: u32,
    pub h_k: u64,
    pub mw_rank: u64,
}

/// Verdict of the rank/complexity comparison for one prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConjectureVerdict {
    pub p: u64,
    pub q_rank: u32,
    pub complexity: u32,
    pub holds: bool,
}

fn require_3_mod_4(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p % 4 != 3 {
        return Err(Error::WrongResidue {
            p,
            expected: "3 mod 4",
        });
    }
    Ok(())
}

/// Q-rank of E(p): 1 for p = 3 mod 8, 0 for p = 7 mod 8.
pub fn q_rank(p: u64) -> Result<u32> {
    require_3_mod_4(p)?;
    Ok(if p % 8 == 3 { 1 } else { 0 })
}

/// Class number of the imaginary quadratic order of discriminant `disc`,
/// counted as the number of reduced primitive forms (a, b, c) with
/// b^2 - 4ac = disc, |b| <= a <= c and b >= 0 whenever |b| = a or a = c.
pub fn class_number(disc: i64) -> Result<u64> {
    if disc >= 0 || !matches!(disc.rem_euclid(4), 0 | 1) {
        return Err(Error::InvalidDiscriminant(disc));
    }
    let abs = disc.unsigned_abs();
    let mut count = 0u64;
    let b_parity = (disc & 1) as u64;
    let mut b = b_parity;
    // |b| <= a <= c forces 3b^2 <= 4ac - b^2 + ... <= |disc|, so b^2 <= |disc|/3.
    while 3 * b * b <= abs {
        let n = b * b + abs; // 4ac
        if n.is_multiple_of(4) {
            let ac = n / 4;
            let mut a = if b > 0 { b } else { 1 };
            while a * a <= ac {
                if ac.is_multiple_of(a) {
                    let c = ac / a;
                    let g = gcd(gcd(a, b), c);
                    if g == 1 {
                        // (a, b, c) with 0 <= b <= a <= c; the mirror
                        // (a, -b, c) is a distinct reduced form unless
                        // b = 0, b = a or a = c.
                        count += if b == 0 || b == a || a == c { 1 } else { 2 };
                    }
                }
                a += 1;
            }
        }
        b += 2;
    }
    Ok(count)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Mordell-Weil rank of E(p): 2 * h(-p) * q_rank(p).
pub fn mordell_weil_rank(p: u64) -> Result<RankRecord> {
    let q = q_rank(p)?;
    let h = class_number(-(p as i64))?;
    Ok(RankRecord {
        p,
        q_rank: q,
        h_k: h,
        mw_rank: 2 * h * q as u64,
    })
}

/// Does q_rank(p) + 1 equal the given arithmetic complexity?
pub fn verify_conjecture(p: u64, complexity: u32) -> Result<ConjectureVerdict> {
    let q = q_rank(p)?;
    Ok(ConjectureVerdict {
        p,
        q_rank: q,
        complexity,
        holds: q + 1 == complexity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_rank_examples() {
        assert_eq!(q_rank(3).unwrap(), 1);
        assert_eq!(q_rank(7).unwrap(), 0);
        assert_eq!(q_rank(59).unwrap(), 1);
        assert!(matches!(q_rank(13), Err(Error::WrongResidue { .. })));
        assert_eq!(q_rank(15), Err(Error::NotPrime(15)));
    }

    #[test]
    fn q_rank_depends_only_on_residue() {
        let threes: Vec<u64> = vec![3, 11, 19, 43, 59, 67, 83, 107];
        let sevens: Vec<u64> = vec![7, 23, 31, 47, 71, 79, 103, 127];
        assert!(threes.iter().all(|&p| q_rank(p).unwrap() == 1));
        assert!(sevens.iter().all(|&p| q_rank(p).unwrap() == 0));
    }

    /// Independent oracle: iterate (a, b) directly and solve for c.
    fn class_number_oracle(disc: i64) -> u64 {
        let abs = (-disc) as u64;
        let a_max = ((abs as f64 / 3.0).sqrt()) as i64 + 1;
        let mut count = 0u64;
        for a in 1..=a_max {
            for b in (-a + 1)..=a {
                let num = b * b - disc;
                if num % (4 * a) != 0 {
                    continue;
                }
                let c = num / (4 * a);
                if c < a {
                    continue;
                }
                if a == c && b < 0 {
                    continue;
                }
                let g = gcd(gcd(a as u64, b.unsigned_abs()), c as u64);
                if g == 1 {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn class_number_spots() {
        assert_eq!(class_number(-3).unwrap(), 1);
        assert_eq!(class_number(-23).unwrap(), 3);
        assert_eq!(class_number(-47).unwrap(), 5);
        assert_eq!(class_number(-71).unwrap(), 7);
        assert_eq!(class_number(-4).unwrap(), 1);
        assert_eq!(class_number(-163).unwrap(), 1);
    }

    #[test]
    fn class_number_matches_oracle() {
        for p in (3..3000u64).filter(|&p| is_prime(p) && p % 4 == 3) {
            let d = -(p as i64);
            assert_eq!(class_number(d).unwrap(), class_number_oracle(d), "disc={d}");
        }
    }

    #[test]
    fn invalid_discriminants() {
        assert!(class_number(-5).is_err()); // -5 = 3 mod 4
        assert!(class_number(5).is_err());
        assert!(class_number(-6).is_err()); // -6 = 2 mod 4
    }

    #[test]
    fn mordell_weil_examples() {
        let r = mordell_weil_rank(3).unwrap();
        assert_eq!((r.h_k, r.mw_rank), (1, 2));
        let r = mordell_weil_rank(7).unwrap();
        assert_eq!((r.h_k, r.mw_rank), (1, 0));
        let r = mordell_weil_rank(59).unwrap();
        assert_eq!((r.h_k, r.mw_rank), (3, 6));
    }

    #[test]
    fn verdict_examples() {
        assert!(verify_conjecture(3, 2).unwrap().holds);
        assert!(verify_conjecture(7, 1).unwrap().holds);
        assert!(!verify_conjecture(7, 2).unwrap().holds);
    }
}
