//! Primality testing and prime enumeration for the sweep paths.
//!
//! Deterministic for the full 64-bit range: trial division by small primes
//! followed by strong-pseudoprime tests to the first twelve prime bases,
//! which is known to be exact below 3.3 * 10^24.

/// Strong-pseudoprime bases sufficient for all n < 2^64.
const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality test for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'bases: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Simple sieve of Eratosthenes up to `limit` inclusive.
pub fn sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Primes in `[from, to]` congruent to 3 mod 4, ascending.
///
/// Segmented so that sweeps over large ranges do not allocate a sieve for
/// the whole interval at once.
pub fn primes_3_mod_4(from: u64, to: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if to < 3 || from > to {
        return out;
    }
    let from = from.max(2);
    let root = (to as f64).sqrt() as u64 + 2;
    let base = sieve(root);
    const SEG: u64 = 1 << 20;
    let mut lo = from;
    while lo <= to {
        let hi = lo.saturating_add(SEG - 1).min(to);
        let len = (hi - lo + 1) as usize;
        let mut composite = vec![false; len];
        for &p in &base {
            if p * p > hi {
                break;
            }
            let mut j = lo.div_ceil(p).max(2) * p;
            while j <= hi {
                composite[(j - lo) as usize] = true;
                j += p;
            }
        }
        for (i, &c) in composite.iter().enumerate() {
            let n = lo + i as u64;
            if !c && n >= 3 && n % 4 == 3 {
                out.push(n);
            }
        }
        if hi == u64::MAX {
            break;
        }
        lo = hi + 1;
    }
    out
}

/// Largest `s` with `s*s` dividing `n`, together with the squarefree part,
/// so that `n = s^2 * squarefree`. Trial division; meant for small inputs.
pub fn squarefree_decompose(mut n: u64) -> (u64, u64) {
    let mut square_root_part = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0u32;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            square_root_part *= p.pow(e / 2);
            if e % 2 == 1 {
                free *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    free *= n;
    (square_root_part, free)
}

/// True when no square greater than 1 divides `n`.
pub fn is_squarefree(n: u64) -> bool {
    squarefree_decompose(n).0 == 1
}
