//! Crossing changes and unknotting-number obstructions.
//!
//! A positive crossing change turns K₋ into K₊ and moves the signature by
//! 0 or −2. The Witt classes then differ by a two-dimensional form that
//! depends only on the two determinants and on which signature case holds.
//! Iterating down to the unknot pins φ(K) to a short list of forms.
//!
//! Crossing-change names follow that convention: a knot is "unknotted by a
//! positive crossing change" when it plays the role of K₋ and the unknot
//! is K₊.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::witt::{DiagonalForm, Separation};

fn rational(n: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn gen(a: BigRational) -> DiagonalForm {
    DiagonalForm::generator(a).expect("generators built here are nonzero")
}

fn int_gen(a: i128) -> DiagonalForm {
    gen(rational(a))
}

fn big_gen(a: BigInt) -> DiagonalForm {
    gen(BigRational::from_integer(a))
}

pub(crate) fn check_det(det: u64) -> Result<()> {
    if det.is_multiple_of(2) {
        return Err(Error::BadDeterminant(det as i128));
    }
    Ok(())
}

fn check_sigma(sigma: i64) -> Result<()> {
    if sigma % 2 != 0 {
        return Err(Error::OddSignature(sigma));
    }
    Ok(())
}

/// Determinants and signatures on both sides of a positive crossing change.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CrossingContext {
    det_minus: u64,
    det_plus: u64,
    sig_minus: i64,
    sig_plus: i64,
}

impl CrossingContext {
    pub fn new(det_minus: u64, det_plus: u64, sig_minus: i64, sig_plus: i64) -> Result<Self> {
        check_det(det_minus)?;
        check_det(det_plus)?;
        check_sigma(sig_minus)?;
        check_sigma(sig_plus)?;
        if !matches!(sig_plus - sig_minus, 0 | -2) {
            return Err(Error::SignatureJump {
                from: sig_minus,
                to: sig_plus,
            });
        }
        Ok(CrossingContext {
            det_minus,
            det_plus,
            sig_minus,
            sig_plus,
        })
    }

    pub fn det_minus(&self) -> u64 {
        self.det_minus
    }

    pub fn det_plus(&self) -> u64 {
        self.det_plus
    }

    pub fn sig_minus(&self) -> i64 {
        self.sig_minus
    }

    pub fn sig_plus(&self) -> i64 {
        self.sig_plus
    }

    pub fn signature_drops(&self) -> bool {
        self.sig_plus != self.sig_minus
    }

    /// det₊ / det₋ as a rational.
    fn ratio(&self) -> BigRational {
        BigRational::new(self.det_plus.into(), self.det_minus.into())
    }
}

/// Which side of the crossing change is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Given φ(K₋), produce φ(K₊).
    ToPlus,
    /// Given φ(K₊), produce φ(K₋).
    ToMinus,
}

/// The Witt class on the other side of a positive crossing change.
pub fn crossing_change_image(
    phi: &DiagonalForm,
    ctx: &CrossingContext,
    direction: Direction,
) -> DiagonalForm {
    let two = rational(2);
    let drop = ctx.signature_drops();
    match direction {
        Direction::ToPlus => {
            let shift = &two * ctx.ratio();
            let shift = if drop { -shift } else { shift };
            phi + &(gen(shift) + int_gen(-2))
        }
        Direction::ToMinus => {
            let shift = &two * ctx.ratio().recip();
            let shift = if drop { shift } else { -shift };
            phi + &(gen(shift) + int_gen(2))
        }
    }
}

/// φ ⊕ ⟨−1/a⟩ ⊕ ⟨a − 2⟩, the passage from K₋ to K₊ through the pivot `a`
/// of the changed crossing.
pub fn pivot_shift(phi: &DiagonalForm, a: &BigRational) -> Result<DiagonalForm> {
    let shifted = DiagonalForm::new(vec![-a.recip(), a - rational(2)])?;
    Ok(phi + &shifted)
}

/// The pivot `a` with det₊ = det₋·|(a − 2)/a| and the matching sign
/// pattern.
pub fn solve_a(ctx: &CrossingContext) -> Result<BigRational> {
    let minus = BigInt::from(ctx.det_minus);
    let plus = BigInt::from(ctx.det_plus);
    let denom = if ctx.signature_drops() {
        &minus + &plus
    } else {
        if minus == plus {
            return Err(Error::UndefinedPivot);
        }
        &minus - &plus
    };
    Ok(BigRational::new(BigInt::from(2) * minus, denom))
}

/// Lower bound |σ|/2 for the unknotting number.
pub fn signature_lower_bound(sigma: i64) -> Result<u64> {
    check_sigma(sigma)?;
    Ok(sigma.unsigned_abs() / 2)
}

/// Sign of the single crossing change in an unknotting sequence of length 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CrossingSign {
    Positive,
    Negative,
}

impl fmt::Display for CrossingSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrossingSign::Positive => write!(f, "positive"),
            CrossingSign::Negative => write!(f, "negative"),
        }
    }
}

/// The class φ(K) must have if K is unknotted by one crossing change of
/// the given sign; `None` when that sign is incompatible with σ.
pub fn u1_target(det: u64, sigma: i64, sign: CrossingSign) -> Option<DiagonalForm> {
    let d = det as i128;
    match (sign, sigma) {
        (CrossingSign::Positive, 2) => Some(int_gen(2 * d) + int_gen(2)),
        (CrossingSign::Positive, 0) => Some(int_gen(-2 * d) + int_gen(2)),
        (CrossingSign::Negative, 0) => Some(int_gen(2 * d) + int_gen(-2)),
        (CrossingSign::Negative, -2) => Some(int_gen(-2 * d) + int_gen(-2)),
        _ => None,
    }
}

/// Why a sign case cannot unknot the knot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exclusion {
    /// The signature rules this crossing sign out before any Witt class
    /// comparison.
    Signature,
    /// φ differs from the required form; `signature_gap` is
    /// σ(φ) − σ(target) and `separations` lists every prime where the
    /// residue classes differ, smallest first.
    Invariants {
        signature_gap: i64,
        separations: Vec<Separation>,
    },
}

impl Exclusion {
    /// The smallest separating prime, if the exclusion is local.
    pub fn witness(&self) -> Option<&Separation> {
        match self {
            Exclusion::Invariants { separations, .. } => separations.first(),
            Exclusion::Signature => None,
        }
    }

    pub fn separation_at(&self, prime: u64) -> Option<&Separation> {
        match self {
            Exclusion::Invariants { separations, .. } => {
                let p = BigUint::from(prime);
                separations.iter().find(|s| s.prime == p)
            }
            Exclusion::Signature => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CaseOutcome {
    Consistent,
    Excluded(Exclusion),
}

impl CaseOutcome {
    pub fn is_excluded(&self) -> bool {
        matches!(self, CaseOutcome::Excluded(_))
    }

    pub fn exclusion(&self) -> Option<&Exclusion> {
        match self {
            CaseOutcome::Excluded(e) => Some(e),
            CaseOutcome::Consistent => None,
        }
    }
}

fn compare(phi: &DiagonalForm, target: &DiagonalForm) -> CaseOutcome {
    let mine = phi.witt_invariant();
    let theirs = target.witt_invariant();
    if mine == theirs {
        return CaseOutcome::Consistent;
    }
    CaseOutcome::Excluded(Exclusion::Invariants {
        signature_gap: mine.signature() - theirs.signature(),
        separations: mine.separations(&theirs),
    })
}

/// Label for how much an unknotting-number-one test decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnknottingCategory {
    /// Every crossing sign compatible with σ is excluded: u ≥ 2.
    AllExcluded,
    /// σ = 0 and only a single negative crossing change is excluded.
    NegativeExcluded,
    /// σ = 0 and only a single positive crossing change is excluded.
    PositiveExcluded,
    /// Nothing excluded beyond the signature bound.
    Undecided,
}

impl UnknottingCategory {
    pub fn label(&self) -> &'static str {
        match self {
            UnknottingCategory::AllExcluded => "a",
            UnknottingCategory::NegativeExcluded => "b",
            UnknottingCategory::PositiveExcluded => "c",
            UnknottingCategory::Undecided => "-",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        [
            UnknottingCategory::AllExcluded,
            UnknottingCategory::NegativeExcluded,
            UnknottingCategory::PositiveExcluded,
            UnknottingCategory::Undecided,
        ]
        .into_iter()
        .find(|c| c.label() == label)
    }
}

/// Outcome of the unknotting-number-one test for both crossing signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionVerdict {
    pub det: u64,
    pub sigma: i64,
    pub positive: CaseOutcome,
    pub negative: CaseOutcome,
}

impl ObstructionVerdict {
    pub fn outcome(&self, sign: CrossingSign) -> &CaseOutcome {
        match sign {
            CrossingSign::Positive => &self.positive,
            CrossingSign::Negative => &self.negative,
        }
    }

    /// True when no single crossing change can unknot the knot.
    pub fn is_obstructed(&self) -> bool {
        self.positive.is_excluded() && self.negative.is_excluded()
    }

    /// Signs not already excluded by the signature alone.
    pub fn applicable(&self) -> Vec<CrossingSign> {
        [CrossingSign::Positive, CrossingSign::Negative]
            .into_iter()
            .filter(|&s| !matches!(self.outcome(s), CaseOutcome::Excluded(Exclusion::Signature)))
            .collect()
    }

    /// Smallest prime separating φ from the target of some excluded case.
    pub fn witness(&self) -> Option<&Separation> {
        [&self.positive, &self.negative]
            .into_iter()
            .filter_map(|c| c.exclusion().and_then(Exclusion::witness))
            .min_by(|a, b| a.prime.cmp(&b.prime))
    }

    /// Smallest prime separating φ from every locally excluded target.
    pub fn common_witness(&self) -> Option<BigUint> {
        let local: Vec<&Vec<Separation>> = [&self.positive, &self.negative]
            .into_iter()
            .filter_map(|c| match c {
                CaseOutcome::Excluded(Exclusion::Invariants { separations, .. }) => Some(separations),
                _ => None,
            })
            .collect();
        let first = local.first()?;
        first
            .iter()
            .map(|s| &s.prime)
            .find(|p| local.iter().all(|seps| seps.iter().any(|s| &s.prime == *p)))
            .cloned()
    }

    pub fn category(&self) -> UnknottingCategory {
        let applicable = self.applicable();
        let excluded: Vec<CrossingSign> = applicable
            .iter()
            .copied()
            .filter(|&s| self.outcome(s).is_excluded())
            .collect();
        if applicable.is_empty() || excluded.len() == applicable.len() {
            UnknottingCategory::AllExcluded
        } else if excluded == [CrossingSign::Negative] {
            UnknottingCategory::NegativeExcluded
        } else if excluded == [CrossingSign::Positive] {
            UnknottingCategory::PositiveExcluded
        } else {
            UnknottingCategory::Undecided
        }
    }
}

impl fmt::Display for ObstructionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let applicable = self.applicable();
        if applicable.is_empty() {
            return write!(f, "excluded by signature: u >= {}", self.sigma.unsigned_abs() / 2);
        }
        let excluded: Vec<CrossingSign> = applicable
            .iter()
            .copied()
            .filter(|&s| self.outcome(s).is_excluded())
            .collect();
        if excluded.is_empty() {
            return write!(f, "consistent");
        }
        let which = if excluded.len() == 2 {
            "both signs".to_string()
        } else if applicable.len() == 1 {
            format!("{} change", excluded[0])
        } else {
            format!("{} change only", excluded[0])
        };
        write!(f, "excluded ({which})")?;
        let witness = self
            .common_witness()
            .or_else(|| self.witness().map(|s| s.prime.clone()));
        match witness {
            Some(p) => write!(f, ", witness p={p}"),
            None => write!(f, ", witness: signature"),
        }
    }
}

/// Tests φ(K) against every form a knot with unknotting number one and the
/// given determinant and signature could have.
pub fn u1_obstruction(phi: &DiagonalForm, det: u64, sigma: i64) -> Result<ObstructionVerdict> {
    check_det(det)?;
    check_sigma(sigma)?;
    let case = |sign| match u1_target(det, sigma, sign) {
        Some(target) => compare(phi, &target),
        None => CaseOutcome::Excluded(Exclusion::Signature),
    };
    Ok(ObstructionVerdict {
        det,
        sigma,
        positive: case(CrossingSign::Positive),
        negative: case(CrossingSign::Negative),
    })
}

/// Crossing types of a two-step unknotting sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum U2Case {
    NegNeg,
    PosNeg,
    PosPos,
}

impl U2Case {
    pub const ALL: [U2Case; 3] = [U2Case::NegNeg, U2Case::PosNeg, U2Case::PosPos];

    pub fn name(&self) -> &'static str {
        match self {
            U2Case::NegNeg => "neg-neg",
            U2Case::PosNeg => "pos-neg",
            U2Case::PosPos => "pos-pos",
        }
    }
}

/// Sign pattern for the rows printed with ±/∓.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SignChoice {
    PlusMinus,
    MinusPlus,
}

impl SignChoice {
    pub const ALL: [SignChoice; 2] = [SignChoice::PlusMinus, SignChoice::MinusPlus];

    fn first(&self) -> i128 {
        match self {
            SignChoice::PlusMinus => 1,
            SignChoice::MinusPlus => -1,
        }
    }
}

/// Whether the row for `(case, sigma_k)` carries a ± choice; `None` if the
/// row does not exist.
pub fn u2_row_has_choice(case: U2Case, sigma_k: i64) -> Option<bool> {
    match (case, sigma_k) {
        (U2Case::NegNeg, -4) | (U2Case::NegNeg, 0) | (U2Case::PosNeg, -2) | (U2Case::PosPos, 0) => {
            Some(false)
        }
        (U2Case::NegNeg, -2) | (U2Case::PosNeg, 0) => Some(true),
        _ => None,
    }
}

/// The class φ(K) must have when u(K) = 2, K reaches L after one crossing
/// change and σ(K) ≤ 0. `signs` matters only for rows printed with ±.
pub fn u2_target_forms(
    det_k: u64,
    det_l: u64,
    sigma_k: i64,
    case: U2Case,
    signs: SignChoice,
) -> Result<DiagonalForm> {
    check_det(det_k)?;
    check_det(det_l)?;
    let kl = det_k as i128 * det_l as i128;
    let l = det_l as i128;
    let s = signs.first();
    let pair = |a: i128, b: i128| int_gen(a) + int_gen(b);
    let form = match (case, sigma_k) {
        (U2Case::NegNeg, -4) => pair(-2 * kl, -2 * l) + pair(-1, -1),
        (U2Case::NegNeg, -2) => pair(2 * s * kl, -2 * s * l) + pair(-1, -1),
        (U2Case::NegNeg, 0) => pair(2 * kl, 2 * l) + pair(-1, -1),
        (U2Case::PosNeg, -2) => pair(-2 * kl, -2 * l),
        (U2Case::PosNeg, 0) => pair(2 * s * kl, -2 * s * l),
        (U2Case::PosPos, 0) => pair(-2 * kl, -2 * l) + pair(1, 1),
        _ => {
            return Err(Error::InapplicableCase {
                case: case.name(),
                sigma: sigma_k,
            })
        }
    };
    Ok(form)
}

/// Signatures L may have for a matched row, assuming σ(K) ≤ 0.
pub fn intermediate_signatures(case: U2Case, signs: Option<SignChoice>, sigma_k: i64) -> Vec<i64> {
    match (case, signs) {
        (U2Case::NegNeg, Some(SignChoice::PlusMinus)) => vec![sigma_k],
        (U2Case::NegNeg, Some(SignChoice::MinusPlus)) => vec![sigma_k + 2],
        (U2Case::NegNeg, None) => vec![if sigma_k == -4 { -2 } else { 0 }],
        (U2Case::PosNeg, None) => vec![sigma_k, sigma_k + 2],
        (U2Case::PosNeg, Some(SignChoice::PlusMinus)) => vec![sigma_k, sigma_k + 2],
        (U2Case::PosNeg, Some(SignChoice::MinusPlus)) => vec![sigma_k - 2, sigma_k],
        (U2Case::PosPos, _) => vec![0],
    }
}

/// A target row that φ(K) satisfies for some intermediate determinant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct U2Match {
    pub case: U2Case,
    pub signs: Option<SignChoice>,
    /// Possible σ(L), in the orientation of the original knot.
    pub sigma_l: Vec<i64>,
}

/// Every row that φ(K) satisfies with det L = `det_l`. Knots with σ > 0 are
/// handled through their mirror image.
pub fn u2_matches(phi: &DiagonalForm, det_k: u64, sigma_k: i64, det_l: u64) -> Result<Vec<U2Match>> {
    check_det(det_k)?;
    check_det(det_l)?;
    check_sigma(sigma_k)?;
    let flip = sigma_k > 0;
    let (phi, sigma) = if flip {
        (phi.negate(), -sigma_k)
    } else {
        (phi.clone(), sigma_k)
    };
    let invariant = phi.witt_invariant();
    let mut out = Vec::new();
    for case in U2Case::ALL {
        let Some(has_choice) = u2_row_has_choice(case, sigma) else {
            continue;
        };
        let choices: Vec<Option<SignChoice>> = if has_choice {
            SignChoice::ALL.into_iter().map(Some).collect()
        } else {
            vec![None]
        };
        for signs in choices {
            let target = u2_target_forms(det_k, det_l, sigma, case, signs.unwrap_or(SignChoice::PlusMinus))?;
            if target.witt_invariant() == invariant {
                let mut sigma_l = intermediate_signatures(case, signs, sigma);
                if flip {
                    sigma_l.iter_mut().for_each(|s| *s = -*s);
                }
                out.push(U2Match { case, signs, sigma_l });
            }
        }
    }
    Ok(out)
}

/// The sublist of `d_values` for which some applicable row matches φ(K).
pub fn u2_candidate_filter(phi: &DiagonalForm, det_k: u64, sigma_k: i64, d_values: &[u64]) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for &d in d_values {
        if !u2_matches(phi, det_k, sigma_k, d)?.is_empty() {
            out.push(d);
        }
    }
    Ok(out)
}

/// ⊕ᵢ (⟨−2·det Lᵢ₊₁·det Lᵢ⟩ ⊕ ⟨−2⟩) for a sequence L₁ = K, …, Lₙ₊₁ = unknot.
pub fn chain_form(dets: &[u64]) -> Result<DiagonalForm> {
    if dets.len() < 2 || *dets.last().unwrap() != 1 {
        return Err(Error::BadSequence);
    }
    for &d in dets {
        check_det(d)?;
    }
    let mut form = DiagonalForm::zero();
    for pair in dets.windows(2) {
        let product = BigInt::from(pair[0]) * BigInt::from(pair[1]);
        form += &(big_gen(-2 * product) + int_gen(-2));
    }
    Ok(form)
}

/// Double branched cover L(p, q) of a two-bridge knot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LensSurgeryDescription {
    p: i64,
    q: i64,
}

impl LensSurgeryDescription {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p == 0 || p.gcd(&q) != 1 {
            return Err(Error::BadLens { p, q });
        }
        Ok(LensSurgeryDescription { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// The linking form value q/p of a generator.
    pub fn self_linking(&self) -> BigRational {
        BigRational::new(self.q.into(), self.p.into())
    }
}

/// Whether q ≡ ±2t² (mod det) has a solution; `false` forces u(K) > 1.
pub fn lickorish_solvable(lens: &LensSurgeryDescription, det: u64) -> Result<bool> {
    check_det(det)?;
    if lens.p.unsigned_abs() != det {
        return Err(Error::LensMismatch { p: lens.p, det });
    }
    Ok(lickorish_witness(lens.q, det).is_some())
}

/// The least t ≤ det/2 with q ≡ ±2t² (mod det); t and det − t give the
/// same square.
pub fn lickorish_witness(q: i64, det: u64) -> Option<u64> {
    let m = det as i128;
    let q = (q as i128).rem_euclid(m);
    (0..=det / 2).find(|&t| {
        let v = (2 * (t as i128) * (t as i128)).rem_euclid(m);
        v == q || (-v).rem_euclid(m) == q
    })
}

/// |det| as a machine integer.
pub(crate) fn abs_det(det: &BigInt) -> Result<u64> {
    match u64::try_from(det.abs()) {
        Ok(0) => Err(Error::Degenerate),
        Ok(d) => Ok(d),
        Err(_) => Err(Error::DeterminantOverflow(det.clone())),
    }
}
