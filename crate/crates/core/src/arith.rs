//! Integer factorization and quadratic residues.
//!
//! Factorization runs trial division against a sieve of the primes below
//! 10⁶, then Miller–Rabin and Pollard–Brent rho on whatever remains. Knot
//! determinants rarely leave anything for the second stage.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

const SIEVE_LIMIT: u32 = 1_000_000;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = SIEVE_LIMIT as usize;
        let mut composite = vec![false; n + 1];
        let mut primes = Vec::with_capacity(78_500);
        for i in 2..=n {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

/// Sign and prime-power decomposition of a nonzero integer.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Factorization {
    negative: bool,
    factors: BTreeMap<BigUint, u32>,
}

impl Factorization {
    pub fn is_negative(&self) -> bool {
        self.negative
    }

    /// `-1` or `1`.
    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn factors(&self) -> &BTreeMap<BigUint, u32> {
        &self.factors
    }

    pub fn exponent(&self, prime: &BigUint) -> u32 {
        self.factors.get(prime).copied().unwrap_or(0)
    }

    /// Rebuilds the factored integer.
    pub fn value(&self) -> BigInt {
        let magnitude = self
            .factors
            .iter()
            .fold(BigUint::one(), |acc, (p, &e)| acc * p.pow(e));
        let sign = if self.negative { Sign::Minus } else { Sign::Plus };
        BigInt::from_biguint(sign, magnitude)
    }

    /// Signed product of the primes with odd exponent.
    pub fn squarefree_part(&self) -> BigInt {
        let magnitude = self
            .factors
            .iter()
            .filter(|(_, &e)| e % 2 == 1)
            .fold(BigUint::one(), |acc, (p, _)| acc * p);
        let sign = if self.negative { Sign::Minus } else { Sign::Plus };
        BigInt::from_biguint(sign, magnitude)
    }

    fn insert(&mut self, prime: BigUint, exponent: u32) {
        *self.factors.entry(prime).or_insert(0) += exponent;
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Exact prime factorization of a nonzero integer.
pub fn factorize(n: impl Into<BigInt>) -> Result<Factorization> {
    let n = n.into();
    if n.is_zero() {
        return Err(Error::Zero);
    }
    let mut out = Factorization {
        negative: n.sign() == Sign::Minus,
        factors: BTreeMap::new(),
    };
    let mut rest = n.magnitude().clone();
    for &p in small_primes() {
        if rest.is_one() {
            break;
        }
        let p_big = BigUint::from(p);
        if &p_big * &p_big > rest {
            break;
        }
        let mut e = 0;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            out.insert(p_big, e);
        }
    }
    if !rest.is_one() {
        split_cofactor(rest, &mut out);
    }
    Ok(out)
}

// rest has no prime factor below the sieve limit or is itself prime.
fn split_cofactor(rest: BigUint, out: &mut Factorization) {
    let limit = BigUint::from(SIEVE_LIMIT);
    let mut stack = vec![rest];
    while let Some(n) = stack.pop() {
        if n.is_one() {
            continue;
        }
        if n <= &limit * &limit || is_prime(&n) {
            out.insert(n, 1);
            continue;
        }
        let d = match n.to_u64() {
            Some(small) => BigUint::from(pollard_brent_u64(small)),
            None => pollard_brent_big(&n),
        };
        let other = &n / &d;
        stack.push(d);
        stack.push(other);
    }
}

/// Miller–Rabin; deterministic below 3.3·10²⁴, overwhelmingly reliable above.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    for &p in &small_primes()[..64] {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'witness: for &a in &[2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
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

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// n is odd, composite and has no small factor.
fn pollard_brent_u64(n: u64) -> u64 {
    for c in 1u64.. {
        let f = |x: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
        let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
        let mut x = y;
        let mut ys = y;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..128.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("rho exhausts its constants only on primes")
}

fn pollard_brent_big(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut r: u64 = 1;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..128.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                g = q.gcd(n);
                k += 128;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
        c += 1u32;
    }
}

/// Splits `n = p^k · rest` with `p ∤ rest`; `n` must be nonzero.
pub(crate) fn split_valuation(n: &BigInt, p: &BigUint) -> (u32, BigInt) {
    let p = BigInt::from(p.clone());
    let mut rest = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = rest.div_rem(&p);
        if !r.is_zero() {
            return (k, rest);
        }
        rest = q;
        k += 1;
    }
}

/// Least non-negative residue of `a` mod `m`.
pub(crate) fn residue(a: &BigInt, m: &BigUint) -> BigUint {
    let m = BigInt::from(m.clone());
    a.mod_floor(&m).magnitude().clone()
}

/// Euler's criterion; `p` an odd prime not dividing `a`.
pub(crate) fn is_square_residue(a: &BigInt, p: &BigUint) -> bool {
    let r = residue(a, p);
    let exp = (p - 1u32) >> 1;
    r.modpow(&exp, p).is_one()
}

/// Whether `a` is a nonzero square modulo the odd prime `p`.
pub fn is_square_mod(a: impl Into<BigInt>, p: impl Into<BigInt>) -> Result<bool> {
    let a = a.into();
    let p = p.into();
    if p.sign() != Sign::Plus || !is_prime(p.magnitude()) {
        return Err(Error::NotPrime(p));
    }
    if p == BigInt::from(2) {
        return Err(Error::EvenModulus { modulus: p });
    }
    let modulus = p.magnitude().clone();
    if residue(&a, &modulus).is_zero() {
        return Err(Error::NotCoprime { value: a, prime: p });
    }
    Ok(is_square_residue(&a, &modulus))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factor_map(n: i64) -> Vec<(u64, u32)> {
        factorize(n)
            .unwrap()
            .factors()
            .iter()
            .map(|(p, &e)| (p.to_u64().unwrap(), e))
            .collect()
    }

    #[test]
    fn factorizes_small_values() {
        assert_eq!(factor_map(105), vec![(3, 1), (5, 1), (7, 1)]);
        let f = factorize(-246).unwrap();
        assert!(f.is_negative());
        assert_eq!(factor_map(-246), vec![(2, 1), (3, 1), (41, 1)]);
        let one = factorize(1).unwrap();
        assert!(one.factors().is_empty());
        assert_eq!(one.sign(), 1);
        assert_eq!(factorize(0), Err(Error::Zero));
    }

    #[test]
    fn factorizes_past_the_sieve() {
        // two primes just above 10⁶ and a 20-digit semiprime
        let p = 1_000_003u64;
        let q = 1_000_033u64;
        assert_eq!(factor_map((p * q) as i64), vec![(p, 1), (q, 1)]);
        let big = BigInt::from(4_294_967_311u64) * BigInt::from(4_294_967_357u64);
        let f = factorize(big.clone()).unwrap();
        assert_eq!(f.value(), big);
        assert!(f.factors().keys().all(is_prime));
        let huge = BigInt::from(18_446_744_073_709_551_557u64) * BigInt::from(1_000_000_007u64);
        assert_eq!(factorize(huge.clone()).unwrap().value(), huge);
    }

    #[test]
    fn squarefree_part_keeps_sign() {
        assert_eq!(factorize(-23 * 9).unwrap().squarefree_part(), BigInt::from(-23));
        assert_eq!(factorize(49).unwrap().squarefree_part(), BigInt::from(1));
        assert_eq!(factorize(-246).unwrap().to_string(), "-2 * 3 * 41");
    }

    #[test]
    fn square_residues() {
        assert!(is_square_mod(2, 7).unwrap());
        assert!(is_square_mod(5, 19).unwrap());
        assert!(!is_square_mod(2, 19).unwrap());
        assert!(!is_square_mod(2, 5).unwrap());
        assert!(is_square_mod(16, 41).unwrap());
        assert!(!is_square_mod(35, 41).unwrap());
        assert!(is_square_mod(-1, 13).unwrap());
        assert!(matches!(is_square_mod(14, 7), Err(Error::NotCoprime { .. })));
        assert!(matches!(is_square_mod(3, 15), Err(Error::NotPrime(_))));
        assert!(matches!(is_square_mod(3, 2), Err(Error::EvenModulus { .. })));
    }

    #[test]
    fn primality_matches_sieve() {
        let sieve = small_primes();
        let mut idx = 0;
        for n in 0..20_000u64 {
            let expected = idx < sieve.len() && sieve[idx] as u64 == n;
            if expected {
                idx += 1;
            }
            assert_eq!(is_prime_u64(n), expected, "n = {n}");
        }
        assert!(is_prime(&BigUint::from(170_141_183_460_469_231_731_687_303_715_884_105_727u128)));
        assert!(!is_prime(&(BigUint::from(u64::MAX) * BigUint::from(3u32))));
    }
}
