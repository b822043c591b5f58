//! Base-field parameters and the filtered unit-quotient groups on which all
//! character arithmetic runs.
//!
//! The concrete model covers unramified fields of odd residue characteristic:
//! the unit quotient `o^x / U_F(m)` is realized as the abstract abelian group
//! `C_{q-1} x (C_{p^(m-1)})^f`, where `U_F(m) = 1 + p^m o` is the principal
//! unit filtration. No field-element arithmetic is performed anywhere; every
//! computation depends on the filtered group structure alone.

use crate::error::{Error, Result};

/// Parameters of the base field: odd residue characteristic `p`, residue
/// degree `f`, and the residue field size `q = p^f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LocalFieldParams {
    p: u64,
    f: u32,
    q: u64,
}

impl LocalFieldParams {
    /// Validates `p` (odd prime) and `f >= 1`, and computes `q = p^f`.
    pub fn new(p: u64, f: u32) -> Result<Self> {
        if !is_odd_prime(p) {
            return Err(Error::NotAnOddPrime(p));
        }
        if f == 0 {
            return Err(Error::ZeroResidueDegree);
        }
        let q = p
            .checked_pow(f)
            .ok_or(Error::Overflow { what: "q = p^f" })?;
        Ok(Self { p, f, q })
    }

    pub fn residue_characteristic(&self) -> u64 {
        self.p
    }

    pub fn residue_degree(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

impl std::fmt::Display for LocalFieldParams {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(out, "F(p={}, f={})", self.p, self.f)
    }
}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Level of the image of the depth-`m` unit ball under the reduced norm of a
/// degree-`n^2` division algebra: `ceil(m / n)`.
///
/// The same integer map describes the intersection of the depth-`m` unit ball
/// with the base field.
pub fn norm_image_level(m: u64, n: u64) -> u64 {
    assert!(n >= 1, "norm degree must be positive");
    m.div_ceil(n)
}

/// The abstract filtered group `o^x / U_F(m)`.
///
/// Invariant factors are `[q-1, p^(m-1), ..., p^(m-1)]` (`f` copies of the
/// `p`-power) for `m >= 1`, and the empty list for `m = 0`. The image of
/// `U_F(l)` is exposed as a designated filtration subgroup for `0 <= l <= m`:
/// the whole group at `l = 0`; for `l >= 1`, zero in the order-`(q-1)` factor
/// and the multiples of `p^(l-1)` in each `p`-power factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitQuotientGroup {
    field: LocalFieldParams,
    level: u64,
    factors: Vec<u64>,
}

impl UnitQuotientGroup {
    pub fn new(field: LocalFieldParams, level: u64) -> Result<Self> {
        let factors = if level == 0 {
            Vec::new()
        } else {
            let exp = u32::try_from(level - 1).map_err(|_| Error::Overflow {
                what: "p^(m-1) invariant factor",
            })?;
            let p_part =
                field
                    .residue_characteristic()
                    .checked_pow(exp)
                    .ok_or(Error::Overflow {
                        what: "p^(m-1) invariant factor",
                    })?;
            let mut factors = Vec::with_capacity(1 + field.residue_degree() as usize);
            factors.push(field.q() - 1);
            factors.extend(std::iter::repeat_n(p_part, field.residue_degree() as usize));
            factors
        };
        Ok(Self {
            field,
            level,
            factors,
        })
    }

    pub fn field(&self) -> LocalFieldParams {
        self.field
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// Invariant factors in the documented order: `q-1` first, then the `f`
    /// copies of `p^(m-1)`.
    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u128 {
        self.factors.iter().map(|&d| d as u128).product()
    }

    /// Order of the image of `U_F(l)`, `0 <= l <= level`.
    pub fn filtration_order(&self, l: u64) -> u128 {
        assert!(l <= self.level, "filtration level exceeds group level");
        if l == 0 {
            self.order()
        } else {
            (self.field.q() as u128).pow((self.level - l) as u32)
        }
    }

    /// Generators of the filtration subgroup at level `l`, as coordinate
    /// vectors. Identity generators (order-1 factors) are omitted.
    pub fn filtration_generators(&self, l: u64) -> Vec<Vec<u64>> {
        assert!(l <= self.level, "filtration level exceeds group level");
        let mut gens = Vec::new();
        if self.level == 0 {
            return gens;
        }
        let p = self.field.residue_characteristic();
        for (i, &d) in self.factors.iter().enumerate() {
            let value = if l == 0 {
                1 % d
            } else if i == 0 {
                // The prime-to-p part dies at every positive filtration level.
                continue;
            } else {
                p.pow((l - 1) as u32) % d
            };
            if value == 0 {
                continue;
            }
            let mut coords = vec![0; self.factors.len()];
            coords[i] = value;
            gens.push(coords);
        }
        gens
    }

    /// Every element of the filtration subgroup at level `l`, in lexicographic
    /// coordinate order. Intended for exhaustive checks on small groups.
    pub fn filtration_elements(&self, l: u64) -> Vec<Vec<u64>> {
        assert!(l <= self.level, "filtration level exceeds group level");
        let p = self.field.residue_characteristic();
        let mut per_factor: Vec<Vec<u64>> = Vec::with_capacity(self.factors.len());
        for (i, &d) in self.factors.iter().enumerate() {
            if l == 0 {
                per_factor.push((0..d).collect());
            } else if i == 0 {
                per_factor.push(vec![0]);
            } else {
                let step = p.pow((l - 1) as u32);
                if step >= d {
                    per_factor.push(vec![0]);
                } else {
                    per_factor.push((0..d / step).map(|k| k * step).collect());
                }
            }
        }
        let mut elements = vec![Vec::new()];
        for choices in &per_factor {
            let mut next = Vec::with_capacity(elements.len() * choices.len());
            for prefix in &elements {
                for &c in choices {
                    let mut e = prefix.clone();
                    e.push(c);
                    next.push(e);
                }
            }
            elements = next;
        }
        elements
    }
}
