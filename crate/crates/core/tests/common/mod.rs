//! Brute-force oracles shared by the property suites and the acceptance run.

use std::collections::BTreeSet;

use knot_witt::arith::is_square_mod;
use knot_witt::witt::LocalClass;

pub const TABLE_PRIMES: [u64; 8] = [2, 3, 5, 7, 13, 19, 23, 41];

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

// A form over F_p is determined by its dimension mod 2 and its signed
// discriminant (−1)^(n(n−1)/2)·det up to squares.
fn oracle_key(p: u64, squares: &BTreeSet<u64>, units: &[u64]) -> (usize, bool) {
    let n = units.len();
    if p == 2 {
        return (n % 2, true);
    }
    let mut disc = units.iter().fold(1, |acc, u| acc * u % p);
    if (n * n.saturating_sub(1) / 2) % 2 == 1 {
        disc = (p - disc) % p;
    }
    (n % 2, squares.contains(&disc))
}

fn forms_up_to(p: u64, len: usize) -> Vec<Vec<u64>> {
    let mut all = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..len {
        layer = layer
            .iter()
            .flat_map(|t: &Vec<u64>| (1..p).map(move |u| [t.clone(), vec![u]].concat()))
            .collect();
        all.extend(layer.iter().cloned());
    }
    all
}

/// Checks the W(F_p) arithmetic against the discriminant oracle: the class
/// map is a bijection onto the oracle keys of forms of length ≤ 3, the
/// addition table agrees on representatives, and element orders match the
/// group shape (ℤ₂, ℤ₂⊕ℤ₂ or ℤ₄).
pub fn check_local_table(p: u64) -> Result<(), String> {
    let squares: BTreeSet<u64> = (1..p).map(|t| t * t % p).collect();
    let gens: Vec<LocalClass> = (0..p)
        .map(|u| LocalClass::generator(p as i64, u.max(1) as i64).unwrap())
        .collect();
    let class_of = |units: &[u64]| {
        units
            .iter()
            .fold(LocalClass::zero(p.into()), |acc, &u| acc + gens[u as usize].clone())
    };
    let key = |units: &[u64]| oracle_key(p, &squares, units);

    let mut seen: Vec<(LocalClass, (usize, bool))> = Vec::new();
    for f in &forms_up_to(p, 3) {
        let (c, k) = (class_of(f), key(f));
        if c.is_zero() != (k == key(&[])) {
            return Err(format!("p={p}: zero test disagrees on {f:?}"));
        }
        match seen.iter().find(|(sc, _)| *sc == c) {
            Some((_, sk)) if *sk != k => return Err(format!("p={p}: {f:?} merges two classes")),
            Some(_) => {}
            None => {
                if seen.iter().any(|(_, sk)| *sk == k) {
                    return Err(format!("p={p}: {f:?} splits one class"));
                }
                seen.push((c, k));
            }
        }
    }
    let size = if p == 2 { 2 } else { 4 };
    if seen.len() != size {
        return Err(format!("|W(F_{p})| = {}, expected {size}", seen.len()));
    }

    let reps = forms_up_to(p, 2);
    for x in &reps {
        let cx = class_of(x);
        for y in reps.iter().filter(|y| y.len() <= 1 || x.len() <= 1) {
            let sum = cx.clone() + class_of(y);
            let k = key(&[x.clone(), y.clone()].concat());
            let expected = &seen.iter().find(|(_, sk)| *sk == k).unwrap().0;
            if &sum != expected {
                return Err(format!("p={p}: {x:?} + {y:?} = {sum}, expected {expected}"));
            }
        }
    }

    let orders: BTreeSet<u8> = seen.iter().map(|(c, _)| c.order()).collect();
    let expected: BTreeSet<u8> = if p % 4 == 3 { [1, 2, 4].into() } else { [1, 2].into() };
    if orders != expected {
        return Err(format!("p={p}: element orders {orders:?}, expected {expected:?}"));
    }
    Ok(())
}

/// Euler-criterion residues against squaring every residue, for p < `bound`.
pub fn check_residues(bound: u64) -> Result<(), String> {
    for p in (3..bound).filter(|&n| is_prime(n)) {
        let squares: BTreeSet<i64> = (1..p as i64).map(|t| t * t % p as i64).collect();
        for a in -(2 * p as i64)..=(2 * p as i64) {
            let r = a.rem_euclid(p as i64);
            let got = is_square_mod(a, p);
            match (r, got) {
                (0, Err(_)) => {}
                (0, Ok(_)) => return Err(format!("{a} mod {p} accepted")),
                (_, Ok(s)) if s == squares.contains(&r) => {}
                (_, got) => return Err(format!("is_square_mod({a}, {p}) = {got:?}")),
            }
        }
    }
    Ok(())
}
