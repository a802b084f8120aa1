//! The explicit functor on endomorphism matrices between lattices with
//! complex multiplication and pseudo-lattices with real multiplication.
//!
//! A multiplier of the order of conductor f in Q(sqrt(-D)) acts on a
//! lattice basis as an integer matrix (trace, -1, norm, 0); the functor
//! sends (a, b, c, d) to (a, b, -c, -d), turning the characteristic
//! polynomial x^2 - tr x + N into x^2 - tr x - N and hence the imaginary
//! multiplier into a real one of the same size.  Minimizing the norm over
//! nonzero multipliers with integral matrices picks the primitive
//! generator, and reading the real parameters back off the mapped matrix
//! returns exactly (D, f).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::primes::{is_squarefree, squarefree_decompose};

/// 2x2 integer matrix acting on a lattice basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EndoMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

/// Residue branch of the order generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DiscBranch {
    /// D = 1 mod 4: generator (f + f*sqrt(-D))/2.
    OneMod4,
    /// D = 2 or 3 mod 4: generator f*sqrt(-D).
    TwoThreeMod4,
}

/// Element m + n*omega_f of the order of conductor f in Q(sqrt(-D)).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OrderMultiplier {
    pub m: i64,
    pub n: i64,
    pub d: u64,
    pub f: u64,
    pub branch: DiscBranch,
}

impl OrderMultiplier {
    pub fn new(m: i64, n: i64, d: u64, f: u64) -> Result<Self> {
        if d < 2 || !is_squarefree(d) {
            return Err(Error::NonPositiveInput(format!(
                "D = {d} must be a squarefree integer >= 2"
            )));
        }
        if f < 1 {
            return Err(Error::NonPositiveInput("conductor f must be >= 1".into()));
        }
        let branch = if d % 4 == 1 {
            DiscBranch::OneMod4
        } else {
            DiscBranch::TwoThreeMod4
        };
        Ok(OrderMultiplier { m, n, d, f, branch })
    }

    /// Trace of the multiplier: 2m + fn on the 1 mod 4 branch, 2m else.
    pub fn trace(&self) -> i64 {
        match self.branch {
            DiscBranch::OneMod4 => 2 * self.m + self.f as i64 * self.n,
            DiscBranch::TwoThreeMod4 => 2 * self.m,
        }
    }

    /// Norm of the multiplier, when it is an integer.
    pub fn norm(&self) -> Result<i64> {
        let f = self.f as i64;
        let d = self.d as i64;
        match self.branch {
            DiscBranch::OneMod4 => {
                let t = 2 * self.m + f * self.n;
                let val = t * t + f * f * d * self.n * self.n;
                if val % 4 != 0 {
                    return Err(Error::NonIntegralEntry);
                }
                Ok(val / 4)
            }
            DiscBranch::TwoThreeMod4 => Ok(self.m * self.m + f * f * d * self.n * self.n),
        }
    }
}

/// The functor on endomorphism matrices: (a, b, c, d) -> (a, b, -c, -d).
pub fn teichmuller_map(m: EndoMatrix) -> EndoMatrix {
    EndoMatrix {
        a: m.a,
        b: m.b,
        c: -m.c,
        d: -m.d,
    }
}

/// Matrix (trace, -1, norm, 0) of a nonzero multiplier.
pub fn multiplier_matrix(mult: &OrderMultiplier) -> Result<EndoMatrix> {
    if mult.m == 0 && mult.n == 0 {
        return Err(Error::NonPositiveInput("multiplier must be nonzero".into()));
    }
    Ok(EndoMatrix {
        a: mult.trace(),
        b: -1,
        c: mult.norm()?,
        d: 0,
    })
}

/// Primitive multiplier: the nonzero non-rational multiplier of minimal
/// norm, ties resolved to positive imaginary part (n > 0).
///
/// Closed form: (m, n) = (-f/2, 1) for D = 1 mod 4 and even f,
/// (-f, 2) for D = 1 mod 4 and odd f, and (0, 1) otherwise.
pub fn primitive_multiplier(d: u64, f: u64) -> Result<OrderMultiplier> {
    let fi = f as i64;
    let (m, n) = if d % 4 == 1 {
        if f.is_multiple_of(2) {
            (-fi / 2, 1)
        } else {
            (-fi, 2)
        }
    } else {
        (0, 1)
    };
    OrderMultiplier::new(m, n, d, f)
}

/// Exhaustively minimize the norm over |m|, |n| <= bound with n != 0 and an
/// integral matrix, returning the minimizer with n > 0.
///
/// The norm is at least f^2 D n^2 / 4 for every m, so a whole row can be
/// skipped once that lower bound exceeds the best value seen.
pub fn minimize_norm_exhaustive(d: u64, f: u64, bound: i64) -> Result<OrderMultiplier> {
    let mut best: Option<(i64, OrderMultiplier)> = None;
    for n in 1..=bound {
        let fl = (f * f) as i128 * d as i128 * (n * n) as i128;
        let floor = (fl / 4) as i64;
        if let Some((best_norm, _)) = best {
            if floor > best_norm {
                break;
            }
        }
        for m in -bound..=bound {
            let mult = OrderMultiplier::new(m, n, d, f)?;
            let Ok(norm) = mult.norm() else { continue };
            match best {
                Some((bn, _)) if bn <= norm => {}
                _ => best = Some((norm, mult)),
            }
        }
    }
    best.map(|(_, m)| m)
        .ok_or(Error::NonPositiveInput("empty search window".into()))
}

/// Real-multiplication parameters read off the mapped primitive matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FunctorImage {
    pub multiplier: OrderMultiplier,
    pub cm_matrix: EndoMatrix,
    pub rm_matrix: EndoMatrix,
    pub d: u64,
    pub f: u64,
}

/// Map the primitive multiplier of the (-D, f) order through the functor
/// and extract the real parameters; the content of the correspondence is
/// that they equal (D, f).
pub fn functor_params(d: u64, f: u64) -> Result<FunctorImage> {
    let mult = primitive_multiplier(d, f)?;
    let cm = multiplier_matrix(&mult)?;
    let rm = teichmuller_map(cm);
    // rm = (0, -1, -N, 0) has characteristic polynomial x^2 - N, so the
    // real multiplier is sqrt(N) = s * sqrt(D0) with D0 squarefree.
    let norm = cm.c as u64;
    let (s, d0) = squarefree_decompose(norm);
    // The conductor follows from which minimizer branch produced the norm:
    // n = 1 means f\omega itself (f = 2s on the 1 mod 4 branch), n = 2
    // means the doubled generator (f = s).
    let f0 = if d0 % 4 == 1 && mult.n == 1 { 2 * s } else { s };
    Ok(FunctorImage {
        multiplier: mult,
        cm_matrix: cm,
        rm_matrix: rm,
        d: d0,
        f: f0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_examples() {
        let m = EndoMatrix {
            a: 0,
            b: -1,
            c: 3,
            d: 0,
        };
        assert_eq!(
            teichmuller_map(m),
            EndoMatrix {
                a: 0,
                b: -1,
                c: -3,
                d: 0
            }
        );
        let id = EndoMatrix {
            a: 1,
            b: 0,
            c: 0,
            d: 1,
        };
        assert_eq!(
            teichmuller_map(id),
            EndoMatrix {
                a: 1,
                b: 0,
                c: 0,
                d: -1
            }
        );
        let m = EndoMatrix {
            a: 2,
            b: -1,
            c: 5,
            d: 0,
        };
        assert_eq!(
            teichmuller_map(m),
            EndoMatrix {
                a: 2,
                b: -1,
                c: -5,
                d: 0
            }
        );
    }

    #[test]
    fn map_is_involutive() {
        for (a, b, c, d) in [(1i64, 2, 3, 4), (0, -1, 7, 0), (-3, 5, -2, 9)] {
            let m = EndoMatrix { a, b, c, d };
            assert_eq!(teichmuller_map(teichmuller_map(m)), m);
        }
    }

    #[test]
    fn multiplier_matrix_examples() {
        let m = OrderMultiplier::new(0, 1, 2, 1).unwrap();
        assert_eq!(
            multiplier_matrix(&m).unwrap(),
            EndoMatrix {
                a: 0,
                b: -1,
                c: 2,
                d: 0
            }
        );
        let m = OrderMultiplier::new(-1, 1, 5, 2).unwrap();
        assert_eq!(
            multiplier_matrix(&m).unwrap(),
            EndoMatrix {
                a: 0,
                b: -1,
                c: 5,
                d: 0
            }
        );
        let m = OrderMultiplier::new(1, 0, 3, 1).unwrap();
        assert_eq!(
            multiplier_matrix(&m).unwrap(),
            EndoMatrix {
                a: 2,
                b: -1,
                c: 1,
                d: 0
            }
        );
    }

    #[test]
    fn non_integral_entries_rejected() {
        // D = 5 = 1 mod 4 with f and n both odd: norm would be 3/2.
        let m = OrderMultiplier::new(0, 1, 5, 1).unwrap();
        assert_eq!(m.norm(), Err(Error::NonIntegralEntry));
    }

    #[test]
    fn primitive_multiplier_examples() {
        let m = primitive_multiplier(5, 2).unwrap();
        assert_eq!((m.m, m.n), (-1, 1));
        assert_eq!(m.norm().unwrap(), 5);
        // Odd conductor on the 1 mod 4 branch: the doubled generator wins,
        // norm f^2 D.
        let m = primitive_multiplier(5, 1).unwrap();
        assert_eq!((m.m, m.n), (-1, 2));
        assert_eq!(m.norm().unwrap(), 5);
        let m = primitive_multiplier(2, 1).unwrap();
        assert_eq!((m.m, m.n), (0, 1));
        assert_eq!(m.norm().unwrap(), 2);
    }

    #[test]
    fn exhaustive_minimization_confirms_closed_form_small() {
        for d in [2u64, 3, 5, 7, 10, 13, 15] {
            for f in 1..=4u64 {
                let closed = primitive_multiplier(d, f).unwrap();
                let found = minimize_norm_exhaustive(d, f, (4 * f * d) as i64).unwrap();
                assert_eq!(found.norm().unwrap(), closed.norm().unwrap(), "D={d} f={f}");
                assert_eq!((found.m, found.n), (closed.m, closed.n), "D={d} f={f}");
            }
        }
    }

    #[test]
    fn trace_norm_discriminant() {
        // On the 2,3 mod 4 branch: tr^2 - 4N = -4 f^2 D n^2... for the
        // zero-trace primitive multiplier this is just -4N.
        for d in [2u64, 3, 6, 7, 11] {
            for f in 1..=3u64 {
                for (m, n) in [(0i64, 1i64), (1, 1), (2, -1), (-3, 2)] {
                    let mult = OrderMultiplier::new(m, n, d, f).unwrap();
                    let tr = mult.trace();
                    let norm = mult.norm().unwrap();
                    let lhs = tr * tr - 4 * norm;
                    let rhs = -4 * (f * f) as i64 * d as i64 * n * n;
                    assert_eq!(lhs, rhs);
                    if n != 0 {
                        assert!(lhs < 0);
                    }
                }
            }
        }
    }

    #[test]
    fn order_generator_branch_expands() {
        // Real-side order generator: (sqrt(D)+1)/2 on the 1 mod 4 branch,
        // sqrt(D) otherwise; both must be valid quadratic surds whose
        // expansion reconstructs exactly.
        use crate::cfrac::{expand_surd, reconstruct_surd, QuadraticSurd};
        use num_bigint::{BigInt, BigUint};
        for d in (2u64..60).filter(|&d| crate::primes::is_squarefree(d)) {
            let gen = if d % 4 == 1 {
                QuadraticSurd::new(BigInt::from(1), BigInt::from(2), BigUint::from(d)).unwrap()
            } else {
                QuadraticSurd::sqrt(d).unwrap()
            };
            let cf = expand_surd(&gen).unwrap();
            assert_eq!(reconstruct_surd(&cf).unwrap(), gen, "D={d}");
        }
    }

    #[test]
    fn functor_params_examples() {
        for (d, f) in [(5u64, 2u64), (5, 1), (2, 1), (3, 1), (13, 3), (7, 6)] {
            let img = functor_params(d, f).unwrap();
            assert_eq!((img.d, img.f), (d, f), "D={d} f={f}");
            // The mapped matrix has trace 0 and negated norm.
            assert_eq!(img.rm_matrix.a, 0);
            assert_eq!(img.rm_matrix.c, -img.cm_matrix.c);
        }
    }
}
