//! Closed forms for 3- and 4-stranded pretzel knots.
//!
//! Both families need exactly one even strand. The formulas are symmetric
//! in the odd strands, so the even strand is rotated to the last slot
//! before evaluation. Longer parameter lists are handled when they reduce
//! to three or four strands by cancelling odd pairs (p, −p), since such an
//! insertion keeps the Witt class and scales the determinant by p².

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::unknotting::{abs_det, u1_obstruction, ObstructionVerdict};
use crate::witt::{DiagonalForm, Separation};

fn invalid(msg: impl Into<String>) -> Error {
    Error::Pretzel(msg.into())
}

fn big(a: i64) -> BigInt {
    BigInt::from(a)
}

fn int(a: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(a.into())
}

fn gen(a: BigRational) -> DiagonalForm {
    DiagonalForm::generator(a).expect("pretzel generators are nonzero")
}

fn sign_of(a: &BigRational) -> i64 {
    if a.is_positive() {
        1
    } else {
        -1
    }
}

/// Twist counts p₁, …, pₙ of a pretzel knot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PretzelParams {
    strands: Vec<i64>,
}

impl PretzelParams {
    /// Nonzero strands, at most one even, exactly one even when n is even.
    pub fn new(strands: Vec<i64>) -> Result<Self> {
        if strands.is_empty() {
            return Err(invalid("no strands"));
        }
        if strands.contains(&0) {
            return Err(invalid("strands must be nonzero"));
        }
        let evens = strands.iter().filter(|p| *p % 2 == 0).count();
        if evens > 1 {
            return Err(invalid(format!("{evens} even strands, at most one allowed")));
        }
        if strands.len().is_multiple_of(2) && evens != 1 {
            return Err(invalid("an even number of strands needs exactly one even strand"));
        }
        Ok(PretzelParams { strands })
    }

    pub fn strands(&self) -> &[i64] {
        &self.strands
    }

    pub fn len(&self) -> usize {
        self.strands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strands.is_empty()
    }

    pub fn even_index(&self) -> Option<usize> {
        self.strands.iter().position(|p| p % 2 == 0)
    }

    /// Σᵢ Πⱼ≠ᵢ pⱼ, the determinant up to sign.
    pub fn signed_determinant(&self) -> BigInt {
        (0..self.strands.len())
            .map(|i| {
                self.strands
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .fold(BigInt::one(), |acc, (_, &p)| acc * p)
            })
            .sum()
    }

    /// Inserts `p` at `first` and `-p` at `second` (positions in the
    /// result, `first < second`).
    pub fn upward_stabilize(&self, p: i64, first: usize, second: usize) -> Result<Self> {
        if p % 2 == 0 {
            return Err(invalid(format!("stabilizing strand {p} must be odd")));
        }
        if first >= second || second > self.strands.len() + 1 {
            return Err(invalid(format!(
                "insertion positions ({first}, {second}) invalid for {} strands",
                self.strands.len()
            )));
        }
        let mut strands = self.strands.clone();
        strands.insert(first, p);
        strands.insert(second, -p);
        PretzelParams::new(strands)
    }

    /// Cancels odd pairs (p, −p) until at most four strands remain.
    pub fn reduced(&self) -> Result<Self> {
        let mut strands = self.strands.clone();
        while strands.len() > 4 {
            let pair = (0..strands.len()).find_map(|i| {
                (i + 1..strands.len())
                    .find(|&j| strands[i] % 2 != 0 && strands[j] == -strands[i])
                    .map(|j| (i, j))
            });
            let Some((i, j)) = pair else {
                return Err(invalid(format!(
                    "{:?} is not an upward stabilization of a 3- or 4-strand pretzel knot",
                    self.strands
                )));
            };
            strands.remove(j);
            strands.remove(i);
        }
        PretzelParams::new(strands)
    }

    fn even_last(&self) -> Vec<i64> {
        let mut s = self.strands.clone();
        if let Some(i) = self.even_index() {
            let n = s.len();
            s.rotate_left((i + 1) % n);
        }
        s
    }
}

/// Rational Witt class, signature and signed determinant of a pretzel knot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PretzelClass {
    pub form: DiagonalForm,
    pub signature: i64,
    pub signed_det: BigInt,
}

impl PretzelClass {
    /// The knot determinant |signed_det|.
    pub fn det(&self) -> Result<u64> {
        abs_det(&self.signed_det)
    }

    pub fn u1_obstruction(&self) -> Result<ObstructionVerdict> {
        u1_obstruction(&self.form, self.det()?, self.signature)
    }
}

pub fn signed_det_3(p1: i64, p2: i64, p3: i64) -> Result<BigInt> {
    Ok(PretzelParams::new(vec![p1, p2, p3])?.signed_determinant())
}

pub fn signed_det_4(p1: i64, p2: i64, p3: i64, p4: i64) -> Result<BigInt> {
    Ok(PretzelParams::new(vec![p1, p2, p3, p4])?.signed_determinant())
}

/// ⊕ₖ₌₁ⁿ⁻¹ ⟨−ε·k(k+1)⟩.
pub fn telescope_sum(n: u32, eps: i64) -> Result<DiagonalForm> {
    check_eps(eps)?;
    if n < 2 {
        return Err(Error::TooSmall(n));
    }
    Ok(twist_block(n as i64, eps))
}

/// ⟨ε·n⟩ ⊕ n·⟨−ε⟩, equal in W(ℚ) to [`telescope_sum`].
pub fn telescope_simplify(n: u32, eps: i64) -> Result<DiagonalForm> {
    check_eps(eps)?;
    if n < 2 {
        return Err(Error::TooSmall(n));
    }
    Ok(gen(int(eps * n as i64)) + DiagonalForm::multiple(int(-eps), n as usize)?)
}

fn check_eps(eps: i64) -> Result<()> {
    if eps.abs() != 1 {
        return Err(invalid(format!("orientation sign must be ±1, got {eps}")));
    }
    Ok(())
}

// ⊕_{k=1}^{n-1} ⟨−ε k(k+1)⟩; empty for n = 1.
fn twist_block(n: i64, eps: i64) -> DiagonalForm {
    let entries = (1..n).map(|k| int(-eps * k * (k + 1))).collect();
    DiagonalForm::new(entries).expect("k(k+1) is nonzero")
}

/// P(p₁, p₂, p₃) with exactly one even strand.
pub fn pretzel3_class(p1: i64, p2: i64, p3: i64) -> Result<PretzelClass> {
    let params = PretzelParams::new(vec![p1, p2, p3])?;
    if params.even_index().is_none() {
        return Err(invalid("the 3-strand closed form needs one even strand"));
    }
    let s = params.even_last();
    let (a, b) = (s[0], s[1]);
    let det = params.signed_determinant();
    if a + b == 0 {
        return Ok(PretzelClass {
            form: DiagonalForm::zero(),
            signature: 0,
            signed_det: det,
        });
    }
    let sum = a + b;
    let mut form = DiagonalForm::zero();
    for p in [a, b] {
        form += &twist_block(p.abs(), p.signum());
    }
    let middle = BigRational::new(big(-sum), big(a) * big(b));
    let last = BigRational::new(det.clone(), big(sum));
    let signature = (a.signum() + b.signum()) - sum + sign_of(&middle) + sign_of(&last);
    form += &(gen(middle) + gen(last));
    Ok(PretzelClass {
        form,
        signature,
        signed_det: det,
    })
}

/// P(p₁, p₂, p₃, p₄) with exactly one even strand.
pub fn pretzel4_class(p1: i64, p2: i64, p3: i64, p4: i64) -> Result<PretzelClass> {
    let params = PretzelParams::new(vec![p1, p2, p3, p4])?;
    let det = params.signed_determinant();
    if det.is_zero() {
        return Err(Error::Degenerate);
    }
    let mut form = DiagonalForm::zero();
    let mut signature = 0;
    let mut product = BigInt::one();
    for &p in params.strands() {
        form += &(gen(int(p)) + DiagonalForm::multiple(int(-p.signum()), p.unsigned_abs() as usize)?);
        signature += p.signum() - p;
        product *= p;
    }
    let tail = BigRational::new(-&det, product.clone());
    signature -= if (&product * &det).is_positive() { 1 } else { -1 };
    form += &gen(tail);
    Ok(PretzelClass {
        form,
        signature,
        signed_det: det,
    })
}

/// Class of any pretzel knot that reduces to three or four strands.
pub fn pretzel_class(params: &PretzelParams) -> Result<PretzelClass> {
    let base = params.reduced()?;
    let mut class = match *base.strands() {
        [a, b, c] => pretzel3_class(a, b, c)?,
        [a, b, c, d] => pretzel4_class(a, b, c, d)?,
        _ => return Err(invalid("closed forms cover three or four strands")),
    };
    class.signed_det = params.signed_determinant();
    Ok(class)
}

/// Whether two forms differ, with the data that separates them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PretzelCheck {
    /// True when the required equality fails, so u ≥ 2.
    pub obstructed: bool,
    pub signature_gap: i64,
    pub separations: Vec<Separation>,
}

impl PretzelCheck {
    fn compare(lhs: &DiagonalForm, rhs: &DiagonalForm) -> Self {
        let (l, r) = (lhs.witt_invariant(), rhs.witt_invariant());
        PretzelCheck {
            obstructed: l != r,
            signature_gap: l.signature() - r.signature(),
            separations: l.separations(&r),
        }
    }

    /// Smallest separating prime.
    pub fn witness(&self) -> Option<&Separation> {
        self.separations.first()
    }

    pub fn separation_at(&self, prime: u64) -> Option<&Separation> {
        let p = num_bigint::BigUint::from(prime);
        self.separations.iter().find(|s| s.prime == p)
    }
}

/// The unknotting-number-one test for P(p₁, 4 − p₁, p₃), which reduces to
/// ⟨−1⟩⊕⟨−2⟩⊕⟨D⟩ against ⟨−2D⟩ with D = 4p₃ − p₁(p₁ − 4).
pub fn check_pretzel1(p1: i64, p3: i64) -> Result<PretzelCheck> {
    if p1 < 7 || p1 % 2 == 0 {
        return Err(invalid(format!("p1 = {p1} must be odd and at least 7")));
    }
    if p3 == 0 || p3 % 2 != 0 {
        return Err(invalid(format!("p3 = {p3} must be even and nonzero")));
    }
    let d = big(4) * p3 - big(p1) * (p1 - 4);
    if !d.is_positive() {
        return Err(invalid(format!("need 4·p3 > p1(p1 − 4), got D = {d}")));
    }
    let lhs = gen(int(-1)) + gen(int(-2)) + gen(int(d.clone()));
    let rhs = gen(int(-2 * d));
    Ok(PretzelCheck::compare(&lhs, &rhs))
}

/// The class φ(P(p, p, p, −3p − 1)) in its simplified six-generator form.
pub fn pretzel2_form(p: i64) -> DiagonalForm {
    let q = 3 * p + 1;
    let mut form = gen(int(p)) + gen(int(p)) + gen(int(p)) + gen(int(-q));
    form += &gen(BigRational::new(big(-(8 * p + 3)), big(p) * q));
    form + gen(int(1))
}

/// The unknotting-number-one test for P(p, p, p, −3p − 1): the six-generator
/// form against ⟨2⟩ ⊕ ⟨2(8p + 3)⟩.
pub fn check_pretzel2(p: i64) -> Result<PretzelCheck> {
    if p <= 0 || p % 2 == 0 {
        return Err(invalid(format!("p = {p} must be odd and positive")));
    }
    let rhs = gen(int(2)) + gen(int(2 * (8 * p + 3)));
    Ok(PretzelCheck::compare(&pretzel2_form(p), &rhs))
}
