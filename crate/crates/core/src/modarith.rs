//! Arithmetic in the prime field F_p and the p-adic combinatorics of
//! factorials and binomial coefficients.
//!
//! Nothing here ever materialises a factorial as an integer: binomials go
//! through Lucas' digitwise product, factorials are split into a p-adic
//! valuation (Legendre) and a unit part computed block by block.

use crate::error::{DpError, Result};

/// A residue modulo the prime of the surrounding [`PrimeCtx`], always in `[0, p)`.
pub type Residue = u32;

/// The characteristic of the ground field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeCtx {
    p: u32,
}

impl PrimeCtx {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) || p > u32::MAX as u64 / 2 {
            return Err(DpError::NotPrime(p));
        }
        Ok(PrimeCtx { p: p as u32 })
    }

    #[inline]
    pub fn p(self) -> u32 {
        self.p
    }

    /// `p^s`, saturating at `u64::MAX`.
    pub fn pow_p(self, s: u32) -> u64 {
        (self.p as u64).saturating_pow(s)
    }

    #[inline]
    pub fn reduce(self, a: u64) -> Residue {
        (a % self.p as u64) as Residue
    }

    #[inline]
    pub fn reduce_signed(self, a: i64) -> Residue {
        a.rem_euclid(self.p as i64) as Residue
    }

    #[inline]
    pub fn add(self, a: Residue, b: Residue) -> Residue {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: Residue, b: Residue) -> Residue {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: Residue) -> Residue {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: Residue, b: Residue) -> Residue {
        ((a as u64 * b as u64) % self.p as u64) as Residue
    }

    pub fn pow(self, mut base: Residue, mut exp: u64) -> Residue {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(self, a: Residue) -> Residue {
        assert!(!a.is_multiple_of(self.p), "inverse of zero mod {}", self.p);
        self.pow(a, self.p as u64 - 2)
    }
}

/// Trial division; p is a machine word and small at desk scale.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Base-p digits of a non-negative integer, least significant first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PAdicDigits {
    pub digits: Vec<Residue>,
}

impl PAdicDigits {
    pub fn value(&self, ctx: PrimeCtx) -> u64 {
        self.digits
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * ctx.p() as u64 + d as u64)
    }

    pub fn digit_sum(&self) -> u64 {
        self.digits.iter().map(|&d| d as u64).sum()
    }
}

pub fn p_adic_digits(mut a: u64, ctx: PrimeCtx) -> PAdicDigits {
    let p = ctx.p() as u64;
    let mut digits = Vec::new();
    while a > 0 {
        digits.push((a % p) as Residue);
        a /= p;
    }
    PAdicDigits { digits }
}

/// `a!` mod p for `a < p`.
fn small_factorial(a: u64, ctx: PrimeCtx) -> Residue {
    debug_assert!(a < ctx.p() as u64);
    (1..=a).fold(1 % ctx.p(), |acc, k| ctx.mul(acc, k as Residue))
}

/// binom(a, b) mod p for digits a, b < p.
fn small_binom(a: u64, b: u64, ctx: PrimeCtx) -> Residue {
    if b > a {
        return 0;
    }
    let num = small_factorial(a, ctx);
    let den = ctx.mul(small_factorial(b, ctx), small_factorial(a - b, ctx));
    ctx.mul(num, ctx.inv(den))
}

/// Binomial coefficient mod p by Lucas' theorem. `b > a` gives 0.
pub fn binom_mod_p(a: u64, b: u64, ctx: PrimeCtx) -> Residue {
    if b > a {
        return 0;
    }
    let p = ctx.p() as u64;
    let (mut a, mut b) = (a, b);
    let mut acc = 1 % ctx.p();
    while b > 0 || a > 0 {
        let (ad, bd) = (a % p, b % p);
        if bd > ad {
            return 0;
        }
        acc = ctx.mul(acc, small_binom(ad, bd, ctx));
        a /= p;
        b /= p;
    }
    acc
}

/// p-adic valuation of `a!` by Legendre: `(a - s_p(a)) / (p - 1)`.
/// Defined as 0 for `a = 0`.
pub fn nu_p_factorial(a: u64, ctx: PrimeCtx) -> u64 {
    let s = p_adic_digits(a, ctx).digit_sum();
    (a - s) / (ctx.p() as u64 - 1)
}

/// The unit part `q mod p` of `a! = q * p^{nu_p(a!)}`.
///
/// The non-multiples of p in each complete block of p consecutive integers
/// multiply to `(p-1)! = -1`; the multiples contribute `p^{a/p} (a/p)!`, so
/// `q(a) = (-1)^{a/p} * (a mod p)! * q(a/p)`.
pub fn factorial_unit_mod_p(a: u64, ctx: PrimeCtx) -> Residue {
    let p = ctx.p() as u64;
    let mut acc = 1 % ctx.p();
    let mut a = a;
    while a > 0 {
        let blocks = a / p;
        acc = ctx.mul(acc, small_factorial(a % p, ctx));
        if blocks % 2 == 1 {
            acc = ctx.neg(acc);
        }
        a = blocks;
    }
    acc
}

/// A ratio of factorials `prod num! / prod den!` mod p, computed through
/// valuations and unit parts. Returns 0 when the ratio is divisible by p.
/// The ratio must be an integer (callers guarantee this).
pub fn factorial_ratio_mod_p(num: &[u64], den: &[(u64, u64)], ctx: PrimeCtx) -> Residue {
    let mut val_num = 0u64;
    let mut unit = 1 % ctx.p();
    for &a in num {
        val_num += nu_p_factorial(a, ctx);
        unit = ctx.mul(unit, factorial_unit_mod_p(a, ctx));
    }
    let mut val_den = 0u64;
    let mut unit_den = 1 % ctx.p();
    for &(a, mult) in den {
        val_den += mult * nu_p_factorial(a, ctx);
        unit_den = ctx.mul(unit_den, ctx.pow(factorial_unit_mod_p(a, ctx), mult));
    }
    debug_assert!(val_num >= val_den, "factorial ratio is not integral");
    if val_num > val_den {
        0
    } else {
        ctx.mul(unit, ctx.inv(unit_den))
    }
}

/// Coefficient `c` in `gamma_i(gamma_j(x)) = c * gamma_{ij}(x)`, which is
/// `(ij)! / (i! (j!)^i)` reduced mod p.
pub fn gamma_compose_coeff(i: u64, j: u64, ctx: PrimeCtx) -> Residue {
    factorial_ratio_mod_p(&[i * j], &[(i, 1), (j, i)], ctx)
}

/// Multinomial `(sum k)! / prod k!` mod p.
pub fn multinomial_mod_p(parts: &[u64], ctx: PrimeCtx) -> Residue {
    let mut total = 0u64;
    let mut acc = 1 % ctx.p();
    for &k in parts {
        total += k;
        acc = ctx.mul(acc, binom_mod_p(total, k, ctx));
        if acc == 0 {
            return 0;
        }
    }
    acc
}
