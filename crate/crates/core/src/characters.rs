//! The group of characters of `o^x` trivial on the uniformizer: construction,
//! group law, conductor, and exhaustive enumeration of the finite dual groups.
//!
//! A character is stored at its exact conductor level `k` as a vector of
//! exponents against the invariant factors of `o^x / U_F(k)`, one residue per
//! factor in the documented order `[q-1, p^(k-1) x f]`. The unramified part of
//! a quasi-character is dropped throughout: it never moves any conductor in
//! scope.

use crate::error::{Error, Result};
use crate::localfield::{LocalFieldParams, UnitQuotientGroup};

/// A character of the unit group, canonicalized at its exact conductor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnitCharacter {
    field: LocalFieldParams,
    conductor: u64,
    exponents: Vec<u64>,
}

impl UnitCharacter {
    /// The identity of the dual group: conductor 0, empty exponent list.
    pub fn trivial(field: LocalFieldParams) -> Self {
        Self {
            field,
            conductor: 0,
            exponents: Vec::new(),
        }
    }

    /// Builds a character from raw exponents read against the invariant
    /// factors at `level`, reducing them and re-expressing the character at
    /// its exact conductor.
    pub fn from_exponents(field: LocalFieldParams, level: u64, exponents: &[u64]) -> Result<Self> {
        let group = UnitQuotientGroup::new(field, level)?;
        let factors = group.invariant_factors();
        if exponents.len() != factors.len() {
            return Err(Error::ExponentCount {
                level,
                expected: factors.len(),
                got: exponents.len(),
            });
        }
        let reduced: Vec<u64> = exponents
            .iter()
            .zip(factors)
            .map(|(&e, &d)| e % d)
            .collect();
        let conductor = conductor_of_reduced(field, level, &reduced);
        let exponents = compress(field, level, &reduced, conductor);
        Ok(Self {
            field,
            conductor,
            exponents,
        })
    }

    pub fn field(&self) -> LocalFieldParams {
        self.field
    }

    /// The least `m >= 0` such that the character is trivial on the image of
    /// `U_F(m)`.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_trivial(&self) -> bool {
        self.conductor == 0
    }

    /// Canonical exponents against the invariant factors at the conductor
    /// level.
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// Exponents of the same character read at level `m >= conductor`: the
    /// prime-to-p part is kept and each p-part exponent picks up a factor
    /// `p^(m - conductor)`.
    pub fn exponents_at_level(&self, m: u64) -> Vec<u64> {
        assert!(
            m >= self.conductor,
            "cannot express a character below its conductor"
        );
        let f = self.field.residue_degree() as usize;
        if m == 0 {
            return Vec::new();
        }
        let mut lifted = vec![0u64; 1 + f];
        if self.conductor == 0 {
            return lifted;
        }
        lifted[0] = self.exponents[0];
        let scale = self
            .field
            .residue_characteristic()
            .pow((m - self.conductor) as u32);
        for j in 0..f {
            lifted[1 + j] = self.exponents[1 + j] * scale;
        }
        lifted
    }

    /// Exact group law, computed at the larger of the two levels and then
    /// re-canonicalized.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let level = self.conductor.max(other.conductor);
        let group = UnitQuotientGroup::new(self.field, level)?;
        let a = self.exponents_at_level(level);
        let b = other.exponents_at_level(level);
        let sum: Vec<u64> = a
            .iter()
            .zip(&b)
            .zip(group.invariant_factors())
            .map(|((&x, &y), &d)| (x + y) % d)
            .collect();
        Self::from_exponents(self.field, level, &sum)
    }

    pub fn inverse(&self) -> Self {
        self.pow(-1)
    }

    /// Integer power of the character (negative exponents invert).
    pub fn pow(&self, e: i64) -> Self {
        let group = UnitQuotientGroup::new(self.field, self.conductor)
            .expect("conductor level already materialized");
        let powered: Vec<u64> = self
            .exponents
            .iter()
            .zip(group.invariant_factors())
            .map(|(&x, &d)| {
                let r = (x as i128 * e as i128).rem_euclid(d as i128);
                r as u64
            })
            .collect();
        Self::from_exponents(self.field, self.conductor, &powered)
            .expect("powering preserves exponent shape")
    }
}

impl std::fmt::Display for UnitCharacter {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let exps: Vec<String> = self.exponents.iter().map(|e| e.to_string()).collect();
        write!(out, "chi(a={};[{}])", self.conductor, exps.join(","))
    }
}

/// Conductor of a reduced exponent vector at `level`, by the p-adic valuation
/// rule of the concrete model: zero vectors are unramified; otherwise the
/// conductor is `max(c0, max_j (level - v_p(e_j)))` over non-zero p-part
/// exponents, with `c0 = 1` exactly when the prime-to-p exponent is non-zero.
fn conductor_of_reduced(field: LocalFieldParams, level: u64, exponents: &[u64]) -> u64 {
    if exponents.iter().all(|&e| e == 0) {
        return 0;
    }
    let p = field.residue_characteristic();
    let mut conductor = if exponents[0] != 0 { 1 } else { 0 };
    for &e in &exponents[1..] {
        if e != 0 {
            conductor = conductor.max(level - padic_valuation(p, e));
        }
    }
    conductor
}

/// Re-expresses a reduced exponent vector at the (lower) conductor level.
fn compress(field: LocalFieldParams, level: u64, exponents: &[u64], conductor: u64) -> Vec<u64> {
    if conductor == 0 {
        return Vec::new();
    }
    debug_assert!(conductor <= level);
    let scale = field
        .residue_characteristic()
        .pow((level - conductor) as u32);
    let mut out = Vec::with_capacity(exponents.len());
    out.push(exponents[0]);
    for &e in &exponents[1..] {
        debug_assert_eq!(e % scale, 0, "exponent not divisible at conductor level");
        out.push(e / scale);
    }
    out
}

fn padic_valuation(p: u64, mut x: u64) -> u64 {
    debug_assert!(x > 0);
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

/// Whether the pairing of an exponent vector with a group element vanishes:
/// `sum_i e_i x_i / d_i` integral.
pub fn pairing_is_trivial(factors: &[u64], exponents: &[u64], element: &[u64]) -> bool {
    debug_assert_eq!(factors.len(), exponents.len());
    debug_assert_eq!(factors.len(), element.len());
    let lcm = factors
        .iter()
        .fold(1u128, |acc, &d| lcm_u128(acc, d as u128));
    let mut acc: u128 = 0;
    for ((&d, &e), &x) in factors.iter().zip(exponents).zip(element) {
        let term = (e as u128 * x as u128) % d as u128;
        acc = (acc + term * (lcm / d as u128)) % lcm;
    }
    acc == 0
}

fn lcm_u128(a: u128, b: u128) -> u128 {
    if a == 0 || b == 0 {
        return a.max(b).max(1);
    }
    a / gcd_u128(a, b) * b
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// All characters of conductor at most `k`, in lexicographic order of their
/// level-`k` exponent vectors.
pub fn enumerate_up_to(field: LocalFieldParams, k: u64) -> Result<Vec<UnitCharacter>> {
    let group = UnitQuotientGroup::new(field, k)?;
    let factors = group.invariant_factors().to_vec();
    let mut out = Vec::new();
    let mut current = vec![0u64; factors.len()];
    loop {
        out.push(UnitCharacter::from_exponents(field, k, &current)?);
        // Odometer step, last coordinate fastest.
        let mut i = factors.len();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            current[i] += 1;
            if current[i] < factors[i] {
                break;
            }
            current[i] = 0;
        }
    }
}

/// All characters of conductor exactly `k`, in the enumeration order of
/// [`enumerate_up_to`].
pub fn enumerate_exact(field: LocalFieldParams, k: u64) -> Result<Vec<UnitCharacter>> {
    Ok(enumerate_up_to(field, k)?
        .into_iter()
        .filter(|chi| chi.conductor() == k)
        .collect())
}
