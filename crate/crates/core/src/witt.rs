//! The Witt group of the rationals.
//!
//! A class in W(ℚ) is carried as a diagonal form ⟨a₁⟩⊕…⊕⟨aₙ⟩ in whatever
//! order it was produced. Two forms are compared only through their
//! [`WittInvariant`]: the signature together with the residue classes
//! ∂ₚ ∈ W(ℤₚ) at every prime, which together determine the class completely.
//!
//! ```
//! use knot_witt::witt::DiagonalForm;
//!
//! let b: DiagonalForm = "-23/9 7 -3/5 49".parse().unwrap();
//! assert_eq!(b.signature(), 0);
//! assert_eq!(b.torsion_order().to_string(), "4");
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Neg};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{factorize, is_prime, is_square_residue, residue, split_valuation};
use crate::error::{Error, Result};

/// `numer / denom` as an exact rational; panics on a zero denominator.
pub fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// The square-free integer `s` with `a = s·d²` for some rational `d`.
pub fn canonical_gen(a: &BigRational) -> Result<BigInt> {
    if a.is_zero() {
        return Err(Error::Zero);
    }
    Ok(factorize(a.numer() * a.denom())?.squarefree_part())
}

/// The product generator ⟨a·b⟩.
pub fn tensor_gen(a: &BigRational, b: &BigRational) -> Result<DiagonalForm> {
    DiagonalForm::generator(a * b)
}

/// An ordered diagonal form ⟨a₁⟩⊕…⊕⟨aₙ⟩ with nonzero rational entries.
///
/// `PartialEq` compares entry lists; use [`DiagonalForm::is_equal`] for
/// equality in W(ℚ).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DiagonalForm {
    entries: Vec<BigRational>,
}

impl DiagonalForm {
    /// The empty form, zero in W(ℚ).
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(entries: Vec<BigRational>) -> Result<Self> {
        if entries.iter().any(Zero::is_zero) {
            return Err(Error::Zero);
        }
        Ok(Self { entries })
    }

    pub fn generator(a: BigRational) -> Result<Self> {
        Self::new(vec![a])
    }

    pub fn from_integers(entries: impl IntoIterator<Item = i64>) -> Result<Self> {
        Self::new(
            entries
                .into_iter()
                .map(|a| BigRational::from_integer(a.into()))
                .collect(),
        )
    }

    /// `(numerator, denominator)` pairs.
    pub fn from_ratios(entries: &[(i64, i64)]) -> Result<Self> {
        if entries.iter().any(|&(_, d)| d == 0) {
            return Err(Error::Zero);
        }
        Self::new(entries.iter().map(|&(n, d)| ratio(n, d)).collect())
    }

    /// `count` copies of ⟨a⟩.
    pub fn multiple(a: BigRational, count: usize) -> Result<Self> {
        Self::new(vec![a; count])
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn direct_sum(&self, other: &DiagonalForm) -> DiagonalForm {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        DiagonalForm { entries }
    }

    pub fn negate(&self) -> DiagonalForm {
        DiagonalForm {
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }

    /// Positive entries minus negative entries.
    pub fn signature(&self) -> i64 {
        self.entries
            .iter()
            .map(|a| if a.is_positive() { 1 } else { -1 })
            .sum()
    }

    /// Product of all entries (1 for the empty form).
    pub fn product(&self) -> BigRational {
        self.entries
            .iter()
            .fold(BigRational::one(), |acc, a| acc * a)
    }

    /// Square-free representatives of the entries, in order.
    pub fn canonical(&self) -> Vec<BigInt> {
        self.entries
            .iter()
            .map(|a| canonical_gen(a).expect("entries are nonzero"))
            .collect()
    }

    /// The residue class ∂ₚ of the form in W(ℤₚ).
    pub fn boundary(&self, p: impl Into<BigInt>) -> Result<LocalClass> {
        let p = p.into();
        if p.sign() != Sign::Plus || !is_prime(p.magnitude()) {
            return Err(Error::NotPrime(p));
        }
        Ok(self.boundary_at(p.magnitude()))
    }

    pub(crate) fn boundary_at(&self, p: &BigUint) -> LocalClass {
        let mut class = LocalClass::zero(p.clone());
        for a in &self.entries {
            let (num_exp, num_rest) = split_valuation(a.numer(), p);
            let (den_exp, den_rest) = split_valuation(a.denom(), p);
            if (num_exp + den_exp) % 2 == 1 {
                // ⟨n/d⟩ and ⟨n·d⟩ share a square class
                class += LocalClass::unit_class_at(p.clone(), &(num_rest * den_rest));
            }
        }
        class
    }

    /// Signature and every nonzero residue class.
    pub fn witt_invariant(&self) -> WittInvariant {
        let mut locals: BTreeMap<BigUint, LocalClass> = BTreeMap::new();
        for a in &self.entries {
            let num = factorize(a.numer().clone()).expect("nonzero numerator");
            let den = factorize(a.denom().clone()).expect("nonzero denominator");
            let primes: BTreeSet<&BigUint> =
                num.factors().keys().chain(den.factors().keys()).collect();
            for p in primes {
                if (num.exponent(p) + den.exponent(p)) % 2 == 0 {
                    continue;
                }
                let unit = (a.numer() * a.denom()) / BigInt::from(p.clone()).pow(num.exponent(p) + den.exponent(p));
                let term = LocalClass::unit_class_at(p.clone(), &unit);
                locals
                    .entry(p.clone())
                    .and_modify(|c| *c += term.clone())
                    .or_insert(term);
            }
        }
        locals.retain(|_, c| !c.is_zero());
        WittInvariant {
            signature: self.signature(),
            locals,
        }
    }

    /// Equality in W(ℚ).
    pub fn is_equal(&self, other: &DiagonalForm) -> bool {
        self.signature() == other.signature() && self.witt_invariant() == other.witt_invariant()
    }

    pub fn torsion_order(&self) -> TorsionOrder {
        self.witt_invariant().torsion_order()
    }
}

impl Add for DiagonalForm {
    type Output = DiagonalForm;

    fn add(mut self, rhs: DiagonalForm) -> DiagonalForm {
        self.entries.extend(rhs.entries);
        self
    }
}

impl Add<&DiagonalForm> for &DiagonalForm {
    type Output = DiagonalForm;

    fn add(self, rhs: &DiagonalForm) -> DiagonalForm {
        self.direct_sum(rhs)
    }
}

impl AddAssign<&DiagonalForm> for DiagonalForm {
    fn add_assign(&mut self, rhs: &DiagonalForm) {
        self.entries.extend(rhs.entries.iter().cloned());
    }
}

impl Neg for DiagonalForm {
    type Output = DiagonalForm;

    fn neg(self) -> DiagonalForm {
        self.negate()
    }
}

impl Neg for &DiagonalForm {
    type Output = DiagonalForm;

    fn neg(self) -> DiagonalForm {
        self.negate()
    }
}

impl fmt::Display for DiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        for (i, a) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " ⊕ ")?;
            }
            write!(f, "⟨{a}⟩")?;
        }
        Ok(())
    }
}

/// Parses whitespace- or comma-separated rationals, optionally bracketed:
/// `"[4, 7/4, -4/7]"` or `"4 7/4 -4/7"`.
impl FromStr for DiagonalForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let mut entries = Vec::new();
        for (i, token) in body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .enumerate()
        {
            let value = parse_rational(token).ok_or_else(|| Error::Parse {
                location: format!("entry {}", i + 1),
                message: format!("`{token}` is not a rational number"),
            })?;
            entries.push(value);
        }
        DiagonalForm::new(entries)
    }
}

pub(crate) fn parse_rational(token: &str) -> Option<BigRational> {
    match token.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => token.trim().parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

/// Shape of W(ℤₚ), fixed by p mod 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LocalValue {
    /// p = 2: parity of the number of generators, W ≅ ℤ₂.
    Parity(bool),
    /// p ≡ 1 (mod 4): generator counts of the square and non-square
    /// classes mod 2, W ≅ ℤ₂ ⊕ ℤ₂.
    Klein { square: bool, nonsquare: bool },
    /// p ≡ 3 (mod 4): squares minus non-squares mod 4, W ≅ ℤ₄.
    Cyclic(u8),
}

/// An element of W(ℤₚ) in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalClass {
    prime: BigUint,
    value: LocalValue,
}

impl LocalClass {
    pub fn zero(prime: BigUint) -> Self {
        let value = if prime == BigUint::from(2u32) {
            LocalValue::Parity(false)
        } else if (&prime % 4u32).is_one() {
            LocalValue::Klein {
                square: false,
                nonsquare: false,
            }
        } else {
            LocalValue::Cyclic(0)
        };
        LocalClass { prime, value }
    }

    /// The class of the one-dimensional form ⟨unit⟩ over ℤₚ.
    pub fn generator(p: impl Into<BigInt>, unit: impl Into<BigInt>) -> Result<Self> {
        let p = p.into();
        let unit = unit.into();
        if p.sign() != Sign::Plus || !is_prime(p.magnitude()) {
            return Err(Error::NotPrime(p));
        }
        if residue(&unit, p.magnitude()).is_zero() {
            return Err(Error::NotCoprime {
                value: unit,
                prime: p,
            });
        }
        Ok(Self::unit_class_at(p.magnitude().clone(), &unit))
    }

    // unit is coprime to p
    pub(crate) fn unit_class_at(prime: BigUint, unit: &BigInt) -> Self {
        let mut class = Self::zero(prime);
        class.value = match class.value {
            LocalValue::Parity(_) => LocalValue::Parity(true),
            LocalValue::Klein { .. } => {
                let square = is_square_residue(unit, &class.prime);
                LocalValue::Klein {
                    square,
                    nonsquare: !square,
                }
            }
            LocalValue::Cyclic(_) => {
                LocalValue::Cyclic(if is_square_residue(unit, &class.prime) { 1 } else { 3 })
            }
        };
        class
    }

    pub fn prime(&self) -> &BigUint {
        &self.prime
    }

    pub fn value(&self) -> LocalValue {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        matches!(
            self.value,
            LocalValue::Parity(false)
                | LocalValue::Klein {
                    square: false,
                    nonsquare: false
                }
                | LocalValue::Cyclic(0)
        )
    }

    /// Additive order: 1, 2 or 4.
    pub fn order(&self) -> u8 {
        match self.value {
            LocalValue::Cyclic(1) | LocalValue::Cyclic(3) => 4,
            _ if self.is_zero() => 1,
            _ => 2,
        }
    }

    /// `count` copies of `self`.
    pub fn times(&self, count: u64) -> LocalClass {
        let mut acc = LocalClass::zero(self.prime.clone());
        for _ in 0..count % 4 {
            acc += self.clone();
        }
        acc
    }

    fn smallest_nonsquare(&self) -> BigUint {
        let mut a = BigUint::from(2u32);
        while is_square_residue(&BigInt::from(a.clone()), &self.prime) {
            a += 1u32;
        }
        a
    }
}

impl AddAssign for LocalClass {
    fn add_assign(&mut self, rhs: LocalClass) {
        assert_eq!(self.prime, rhs.prime, "local classes at different primes");
        self.value = match (self.value, rhs.value) {
            (LocalValue::Parity(a), LocalValue::Parity(b)) => LocalValue::Parity(a ^ b),
            (
                LocalValue::Klein {
                    square: a,
                    nonsquare: b,
                },
                LocalValue::Klein {
                    square: c,
                    nonsquare: d,
                },
            ) => LocalValue::Klein {
                square: a ^ c,
                nonsquare: b ^ d,
            },
            (LocalValue::Cyclic(a), LocalValue::Cyclic(b)) => LocalValue::Cyclic((a + b) % 4),
            _ => unreachable!("shape is determined by the prime"),
        };
    }
}

impl Add for LocalClass {
    type Output = LocalClass;

    fn add(mut self, rhs: LocalClass) -> LocalClass {
        self += rhs;
        self
    }
}

impl Neg for LocalClass {
    type Output = LocalClass;

    fn neg(mut self) -> LocalClass {
        if let LocalValue::Cyclic(a) = self.value {
            self.value = LocalValue::Cyclic((4 - a) % 4);
        }
        self
    }
}

impl fmt::Display for LocalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            LocalValue::Parity(false)
            | LocalValue::Cyclic(0)
            | LocalValue::Klein {
                square: false,
                nonsquare: false,
            } => write!(f, "0"),
            LocalValue::Parity(true) | LocalValue::Cyclic(1) => write!(f, "⟨1⟩"),
            LocalValue::Cyclic(k) => write!(f, "{k}⟨1⟩"),
            LocalValue::Klein { square, nonsquare } => {
                let n = self.smallest_nonsquare();
                match (square, nonsquare) {
                    (true, false) => write!(f, "⟨1⟩"),
                    (false, true) => write!(f, "⟨{n}⟩"),
                    _ => write!(f, "⟨1⟩ ⊕ ⟨{n}⟩"),
                }
            }
        }
    }
}

/// Order of a class in W(ℚ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TorsionOrder {
    Finite(u8),
    Infinite,
}

impl fmt::Display for TorsionOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorsionOrder::Finite(n) => write!(f, "{n}"),
            TorsionOrder::Infinite => write!(f, "infinite"),
        }
    }
}

/// The prime at which two invariants differ, with both local classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Separation {
    pub prime: BigUint,
    pub left: LocalClass,
    pub right: LocalClass,
}

impl fmt::Display for Separation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "∂{}: {} vs {}", self.prime, self.left, self.right)
    }
}

/// The complete invariant of a class in W(ℚ).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WittInvariant {
    signature: i64,
    locals: BTreeMap<BigUint, LocalClass>,
}

impl WittInvariant {
    pub fn signature(&self) -> i64 {
        self.signature
    }

    /// Nonzero local classes keyed by prime.
    pub fn locals(&self) -> &BTreeMap<BigUint, LocalClass> {
        &self.locals
    }

    /// The class at `p`, zero when absent.
    pub fn local(&self, p: u64) -> LocalClass {
        let p = BigUint::from(p);
        self.locals
            .get(&p)
            .cloned()
            .unwrap_or_else(|| LocalClass::zero(p))
    }

    pub fn is_zero(&self) -> bool {
        self.signature == 0 && self.locals.is_empty()
    }

    pub fn torsion_order(&self) -> TorsionOrder {
        if self.signature != 0 {
            return TorsionOrder::Infinite;
        }
        let order = self
            .locals
            .values()
            .map(LocalClass::order)
            .fold(1u8, |acc, o| acc.lcm(&o));
        TorsionOrder::Finite(order)
    }

    /// Primes where the local classes differ, in increasing order.
    pub fn separations(&self, other: &WittInvariant) -> Vec<Separation> {
        let primes: BTreeSet<&BigUint> = self.locals.keys().chain(other.locals.keys()).collect();
        primes
            .into_iter()
            .filter_map(|p| {
                let zero = || LocalClass::zero(p.clone());
                let left = self.locals.get(p).cloned().unwrap_or_else(zero);
                let right = other.locals.get(p).cloned().unwrap_or_else(zero);
                (left != right).then(|| Separation {
                    prime: p.clone(),
                    left,
                    right,
                })
            })
            .collect()
    }
}

impl Add for WittInvariant {
    type Output = WittInvariant;

    fn add(mut self, rhs: WittInvariant) -> WittInvariant {
        self.signature += rhs.signature;
        for (p, class) in rhs.locals {
            match self.locals.remove(&p) {
                Some(existing) => {
                    let sum = existing + class;
                    if !sum.is_zero() {
                        self.locals.insert(p, sum);
                    }
                }
                None => {
                    self.locals.insert(p, class);
                }
            }
        }
        self
    }
}

impl fmt::Display for WittInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "σ = {}", self.signature)?;
        for (p, class) in &self.locals {
            write!(f, ", ∂{p} = {class}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(s: &str) -> DiagonalForm {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_generators() {
        assert_eq!(canonical_gen(&ratio(7, 4)).unwrap(), BigInt::from(7));
        assert_eq!(canonical_gen(&ratio(49, 1)).unwrap(), BigInt::from(1));
        assert_eq!(canonical_gen(&ratio(-23, 9)).unwrap(), BigInt::from(-23));
        assert_eq!(canonical_gen(&ratio(-4, 7)).unwrap(), BigInt::from(-7));
        assert_eq!(canonical_gen(&BigRational::zero()), Err(Error::Zero));
    }

    #[test]
    fn direct_sum_and_negation() {
        let f = form("1") + form("-1");
        assert_eq!(f, form("1 -1"));
        assert!(f.is_equal(&DiagonalForm::zero()));
        let g = form("4 7/4 -4/7 15/4");
        assert_eq!(&DiagonalForm::zero() + &g, g);
        assert_eq!(-&g, form("-4 -7/4 4/7 -15/4"));
        assert_eq!(-DiagonalForm::zero(), DiagonalForm::zero());
        assert!(form("4 -1/4").is_equal(&DiagonalForm::zero()));
        assert!(matches!(DiagonalForm::from_integers([1, 0]), Err(Error::Zero)));
    }

    #[test]
    fn tensor_of_generators() {
        assert_eq!(tensor_gen(&ratio(2, 1), &ratio(3, 1)).unwrap(), form("6"));
        assert_eq!(tensor_gen(&ratio(5, 3), &ratio(1, 1)).unwrap(), form("5/3"));
        let t = tensor_gen(&ratio(-2, 1), &ratio(-2, 1)).unwrap();
        assert_eq!(t.canonical(), vec![BigInt::from(1)]);
        assert!(t.is_equal(&form("1")));
    }

    #[test]
    fn signatures() {
        assert_eq!(form("-23/9 7 -3/5 49").signature(), 0);
        assert_eq!(DiagonalForm::zero().signature(), 0);
        assert_eq!(form("4 7/4 -4/7 15/4").signature(), 2);
    }

    #[test]
    fn local_classes_of_the_torsion_example() {
        let b = form("-23/9 7 -3/5 49");
        assert_eq!(b.boundary(3).unwrap(), LocalClass::generator(3, 1).unwrap());
        assert_eq!(b.boundary(5).unwrap(), LocalClass::generator(5, 2).unwrap());
        assert_eq!(
            b.boundary(5).unwrap().value(),
            LocalValue::Klein {
                square: false,
                nonsquare: true
            }
        );
        assert_eq!(b.boundary(7).unwrap().value(), LocalValue::Cyclic(1));
        assert_eq!(b.boundary(23).unwrap().value(), LocalValue::Cyclic(3));
        assert!(b.boundary(2).unwrap().is_zero());
        assert!(b.boundary(11).unwrap().is_zero());
        assert!(matches!(b.boundary(9), Err(Error::NotPrime(_))));
        assert_eq!(b.torsion_order(), TorsionOrder::Finite(4));
        assert_eq!(form("1 -1").torsion_order(), TorsionOrder::Finite(1));
        assert_eq!(form("1").torsion_order(), TorsionOrder::Infinite);
    }

    #[test]
    fn invariant_of_the_empty_form() {
        let inv = DiagonalForm::zero().witt_invariant();
        assert!(inv.is_zero());
        assert_eq!(inv.to_string(), "σ = 0");
    }

    #[test]
    fn invariant_matches_boundary() {
        let f = form("-2 -3/2 8/3 -2 13/8 105/26 12 -18/5 7/50");
        let inv = f.witt_invariant();
        for p in [2u64, 3, 5, 7, 13, 31] {
            assert_eq!(inv.local(p), f.boundary(p).unwrap(), "p = {p}");
        }
    }

    #[test]
    fn local_class_display() {
        assert_eq!(LocalClass::generator(5, 2).unwrap().to_string(), "⟨2⟩");
        assert_eq!(LocalClass::generator(41, 35).unwrap().to_string(), "⟨3⟩");
        assert_eq!(LocalClass::generator(23, -1).unwrap().to_string(), "3⟨1⟩");
        let sum = LocalClass::generator(13, 1).unwrap() + LocalClass::generator(13, 2).unwrap();
        assert_eq!(sum.to_string(), "⟨1⟩ ⊕ ⟨2⟩");
        assert_eq!(-LocalClass::generator(7, 1).unwrap(), LocalClass::generator(7, 3).unwrap());
    }

    #[test]
    fn parsing_rejects_garbage() {
        assert!(matches!("1 x".parse::<DiagonalForm>(), Err(Error::Parse { .. })));
        assert!(matches!("1/0".parse::<DiagonalForm>(), Err(Error::Parse { .. })));
        assert_eq!("[]".parse::<DiagonalForm>().unwrap(), DiagonalForm::zero());
    }
}
