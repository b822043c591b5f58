//! The representation algebra: quasi-square-integrable atoms, formal sums,
//! the twisted-conductor engine, dominant/interference breakdowns,
//! division-algebra level bookkeeping, and central characters.
//!
//! An atom records an irreducible quasi-square-integrable representation of
//! `GL(n, F)` as a twist `mu * pi_min` of an opaque twist-minimal class: only
//! the rank `n`, the minimal conductor `a(pi_min)`, the stored twist `mu` and
//! (optionally) the minimal central character matter numerically. A
//! representation is a non-empty formal sum of atoms over a common field, on
//! which conductors and both breakdown terms are additive.

use crate::characters::UnitCharacter;
use crate::error::{Error, Result};
use crate::localfield::LocalFieldParams;

/// A quasi-square-integrable atom `mu * pi_min` on `GL(rank, F)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuasiSquareIntegrable {
    rank: u64,
    minimal_label: String,
    minimal_conductor: u64,
    twist: UnitCharacter,
    minimal_central: Option<UnitCharacter>,
}

/// Canonical label carried by every rank-1 atom: each character is a twist of
/// the trivial character of `GL(1)`.
pub const RANK_ONE_LABEL: &str = "trivial";

impl QuasiSquareIntegrable {
    /// Validates and normalizes an atom.
    ///
    /// Rank-1 atoms are normalized: the minimal conductor must be 0 and the
    /// label is forced to [`RANK_ONE_LABEL`]. For `rank >= 2` the minimal
    /// conductor must be at least `rank - 1` (levels are non-negative). A
    /// minimal central character of conductor `c` is admissible only when
    /// `rank * c <= minimal_conductor`.
    pub fn new(
        rank: u64,
        minimal_label: &str,
        minimal_conductor: u64,
        twist: UnitCharacter,
        minimal_central: Option<UnitCharacter>,
    ) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        let minimal_label = if rank == 1 {
            if minimal_conductor != 0 {
                return Err(Error::Rank1MinimalConductor(minimal_conductor));
            }
            RANK_ONE_LABEL.to_string()
        } else {
            if minimal_conductor < rank - 1 {
                return Err(Error::MinimalConductorTooSmall {
                    rank,
                    min: rank - 1,
                    got: minimal_conductor,
                });
            }
            minimal_label.to_string()
        };
        if let Some(omega) = &minimal_central {
            if omega.field() != twist.field() {
                return Err(Error::FieldMismatch);
            }
            if rank * omega.conductor() > minimal_conductor {
                return Err(Error::CentralCharacterTooRamified {
                    rank,
                    omega: omega.conductor(),
                    minimal: minimal_conductor,
                });
            }
        }
        Ok(Self {
            rank,
            minimal_label,
            minimal_conductor,
            twist,
            minimal_central,
        })
    }

    pub fn field(&self) -> LocalFieldParams {
        self.twist.field()
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    pub fn minimal_label(&self) -> &str {
        &self.minimal_label
    }

    /// `a(pi_min)`.
    pub fn minimal_conductor(&self) -> u64 {
        self.minimal_conductor
    }

    /// The stored twisting character `mu`.
    pub fn twist(&self) -> &UnitCharacter {
        &self.twist
    }

    pub fn minimal_central(&self) -> Option<&UnitCharacter> {
        self.minimal_central.as_ref()
    }

    /// Conductor of the atom itself: `max(a(pi_min), rank * a(mu))`.
    pub fn conductor(&self) -> u64 {
        self.minimal_conductor
            .max(self.rank * self.twist.conductor())
    }

    /// Twist minimality: no twist can lower the conductor, equivalently
    /// `rank * a(mu) <= a(pi_min)`.
    pub fn is_twist_minimal(&self) -> bool {
        self.rank * self.twist.conductor() <= self.minimal_conductor
    }

    /// Conductor of the twisted atom: `max(a(pi_min), rank * a(chi * mu))`.
    pub fn twisted_conductor(&self, chi: &UnitCharacter) -> Result<u64> {
        if chi.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        let product = chi.multiply(&self.twist)?;
        Ok(self.minimal_conductor.max(self.rank * product.conductor()))
    }

    /// The atom with its stored twist replaced by the trivial character.
    pub fn minimal_form(&self) -> Self {
        Self {
            rank: self.rank,
            minimal_label: self.minimal_label.clone(),
            minimal_conductor: self.minimal_conductor,
            twist: UnitCharacter::trivial(self.field()),
            minimal_central: self.minimal_central.clone(),
        }
    }

    /// Central character of the atom: `mu^rank * omega_min`.
    pub fn central_character(&self) -> Result<UnitCharacter> {
        let omega = self
            .minimal_central
            .as_ref()
            .ok_or(Error::MissingCentralCharacter(0))?;
        self.twist.pow(self.rank as i64).multiply(omega)
    }
}

impl std::fmt::Display for QuasiSquareIntegrable {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            out,
            "qsi(n={}, amin={}, mu={})",
            self.rank, self.minimal_conductor, self.twist
        )
    }
}

/// A non-empty formal sum of quasi-square-integrable atoms over one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    components: Vec<QuasiSquareIntegrable>,
}

impl Representation {
    pub fn new(components: Vec<QuasiSquareIntegrable>) -> Result<Self> {
        let first = components.first().ok_or(Error::EmptyRepresentation)?;
        let field = first.field();
        if components.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Self { components })
    }

    pub fn single(atom: QuasiSquareIntegrable) -> Self {
        Self {
            components: vec![atom],
        }
    }

    pub fn field(&self) -> LocalFieldParams {
        self.components[0].field()
    }

    pub fn components(&self) -> &[QuasiSquareIntegrable] {
        &self.components
    }

    /// Total rank `n = n_1 + ... + n_r`.
    pub fn rank(&self) -> u64 {
        self.components.iter().map(|c| c.rank()).sum()
    }

    /// Total conductor `a(pi) = a(pi_1) + ... + a(pi_r)`.
    pub fn conductor(&self) -> u64 {
        self.components.iter().map(|c| c.conductor()).sum()
    }

    /// Conductor of the twist, summed over components.
    pub fn twisted_conductor(&self, chi: &UnitCharacter) -> Result<u64> {
        self.components
            .iter()
            .map(|c| c.twisted_conductor(chi))
            .sum()
    }

    /// The totally minimal representation: every stored twist replaced by the
    /// trivial character.
    pub fn totally_minimal(&self) -> Self {
        Self {
            components: self.components.iter().map(|c| c.minimal_form()).collect(),
        }
    }

    /// Per-component dominant/interference breakdown of the twisted
    /// conductor; the exact identity against the direct computation is
    /// asserted internally.
    pub fn twist_breakdown(&self, chi: &UnitCharacter) -> Result<TwistBreakdown> {
        if chi.field() != self.field() {
            return Err(Error::FieldMismatch);
        }
        let chi_conductor = chi.conductor();
        let mut components = Vec::with_capacity(self.components.len());
        for (index, atom) in self.components.iter().enumerate() {
            let conductor = atom.conductor();
            let rank = atom.rank();
            let (dominant, interference) = if chi_conductor != atom.twist().conductor() {
                ((rank * chi_conductor).saturating_sub(conductor), 0)
            } else {
                let untwisted = atom
                    .minimal_conductor()
                    .max(rank * chi.multiply(atom.twist())?.conductor());
                debug_assert!(untwisted <= conductor);
                (0, conductor - untwisted)
            };
            let twisted = conductor + dominant - interference;
            assert_eq!(
                twisted,
                atom.twisted_conductor(chi)?,
                "breakdown disagrees with the direct twisted conductor for {atom}"
            );
            components.push(ComponentTwist {
                index,
                rank,
                conductor,
                twisted_conductor: twisted,
                dominant,
                interference,
                in_omega: conductor > rank * chi_conductor,
            });
        }
        Ok(TwistBreakdown {
            conductor: self.conductor(),
            chi_conductor,
            twisted_conductor: components.iter().map(|c| c.twisted_conductor).sum(),
            dominant: components.iter().map(|c| c.dominant).sum(),
            interference: components.iter().map(|c| c.interference).sum(),
            components,
        })
    }

    /// Certified window for the twisted conductor given only `a(chi)`:
    /// the totally minimal conductor from below, and from above the total
    /// conductor plus `a(chi)` times the rank outside the dominated set.
    pub fn conductor_bounds(&self, chi_conductor: u64) -> ConductorBounds {
        let lower = self.components.iter().map(|c| c.minimal_conductor()).sum();
        let omega_rank: u64 = self
            .components
            .iter()
            .filter(|c| c.conductor() > c.rank() * chi_conductor)
            .map(|c| c.rank())
            .sum();
        let upper = self.conductor() + chi_conductor * (self.rank() - omega_rank);
        ConductorBounds { lower, upper }
    }

    /// Exponent of `q` in the epsilon factor: `a(pi) - n(psi) * rank`.
    pub fn epsilon_exponent(&self, psi_exponent: i64) -> i64 {
        self.conductor() as i64 - psi_exponent * self.rank() as i64
    }

    /// Central character of the sum: the product of all component central
    /// characters `mu_i^(n_i) * omega_min_i`. Every component must carry one.
    pub fn central_character(&self) -> Result<UnitCharacter> {
        let mut acc = UnitCharacter::trivial(self.field());
        for (index, atom) in self.components.iter().enumerate() {
            if atom.minimal_central().is_none() {
                return Err(Error::MissingCentralCharacter(index));
            }
            acc = acc.multiply(&atom.central_character()?)?;
        }
        Ok(acc)
    }
}

impl std::fmt::Display for Representation {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        write!(out, "[{}]", parts.join(" + "))
    }
}

/// Record of one component under a fixed twist.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ComponentTwist {
    pub index: usize,
    pub rank: u64,
    pub conductor: u64,
    pub twisted_conductor: u64,
    pub dominant: u64,
    pub interference: u64,
    pub in_omega: bool,
}

/// Totals and per-component records for one twist: the twisted conductor
/// equals `conductor + dominant - interference`, exactly.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct TwistBreakdown {
    pub conductor: u64,
    pub chi_conductor: u64,
    pub twisted_conductor: u64,
    pub dominant: u64,
    pub interference: u64,
    pub components: Vec<ComponentTwist>,
}

impl TwistBreakdown {
    /// Indices of components with `a(pi_i) > n_i * a(chi)`.
    pub fn omega_set(&self) -> Vec<usize> {
        self.components
            .iter()
            .filter(|c| c.in_omega)
            .map(|c| c.index)
            .collect()
    }
}

/// Certified lower/upper window for a twisted conductor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct ConductorBounds {
    pub lower: u64,
    pub upper: u64,
}

/// The coarse upper bound `max(a(pi), a(chi)) + (n - 1) a(chi)` of
/// Bushnell-Henniart, attained whenever `a(chi) > a(pi)`.
pub fn bushnell_henniart_bound(a_pi: u64, a_chi: u64, n: u64) -> u64 {
    a_pi.max(a_chi) + (n - 1) * a_chi
}

/// Level of a rank-`n` division-algebra representation from its conductor:
/// `a - n + 1`, defined for `a >= n - 1`.
pub fn level_from_conductor(a: u64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    if a < n - 1 {
        return Err(Error::ConductorBelowMinimum {
            conductor: a,
            min: n - 1,
            rank: n,
        });
    }
    Ok(a + 1 - n)
}

/// Inverse of [`level_from_conductor`]: `l + n - 1`.
pub fn conductor_from_level(l: u64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    Ok(l + n - 1)
}

/// Level of the pullback of a character along the reduced norm:
/// `n * a(chi) - n + 1` for ramified characters, 0 for unramified ones.
pub fn norm_pullback_level(a_chi: u64, n: u64) -> u64 {
    assert!(n >= 1, "norm degree must be positive");
    if a_chi == 0 {
        0
    } else {
        n * a_chi - n + 1
    }
}

/// Upper bound for the level of a twisted division-algebra representation,
/// with its exactness certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwistedLevel {
    pub value: u64,
    pub exact: bool,
}

/// `max` of the two levels; exact whenever the representation is twist
/// minimal or the levels differ.
pub fn twisted_level(level: u64, pullback_level: u64, twist_minimal: bool) -> TwistedLevel {
    TwistedLevel {
        value: level.max(pullback_level),
        exact: twist_minimal || level != pullback_level,
    }
}
