//! Closed-form evaluators for character counts, twist-fixing-set bounds,
//! interference predicates and the dominant conductor formula.
//!
//! Counting formulas are symbolic in the residue field size `q` and accept
//! any prime power, not just those reachable by the concrete character model.
//! Formulas known to disagree with exhaustive enumeration are evaluated
//! verbatim but only ever reported, never asserted; see the verification
//! machinery in the oracle module.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::reps::{QuasiSquareIntegrable, Representation};

/// How a reported count is to be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountKind {
    Exact,
    UpperBound,
    EmptySet,
}

/// A counted or bounded quantity together with the rule that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub kind: CountKind,
    pub value: u64,
    pub source: String,
}

impl CountReport {
    fn empty(source: &str) -> Self {
        Self {
            kind: CountKind::EmptySet,
            value: 0,
            source: source.to_string(),
        }
    }
}

fn validate_prime_power(q: u64) -> Result<()> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let mut p = q;
    for d in 2..=q {
        if d * d > q {
            break;
        }
        if q.is_multiple_of(d) {
            p = d;
            break;
        }
    }
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
    }
    if rest == 1 {
        Ok(())
    } else {
        Err(Error::NotPrimePower(q))
    }
}

fn checked_pow(q: u64, e: u64) -> Result<u64> {
    let e = u32::try_from(e).map_err(|_| Error::Overflow {
        what: "character count",
    })?;
    q.checked_pow(e).ok_or(Error::Overflow {
        what: "character count",
    })
}

fn checked_mul(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b).ok_or(Error::Overflow {
        what: "character count",
    })
}

/// Number of characters of conductor at most `k`: `q^(k-1)(q-1)` for
/// `k >= 1`, and 1 for `k = 0`.
pub fn count_up_to(q: u64, k: u64) -> Result<u64> {
    validate_prime_power(q)?;
    if k == 0 {
        return Ok(1);
    }
    checked_mul(checked_pow(q, k - 1)?, q - 1)
}

/// Number of characters of conductor exactly `k`: `q-2` at `k = 1`,
/// `q^(k-2)(q-1)^2` for `k >= 2`, and 1 at `k = 0`.
pub fn count_exact(q: u64, k: u64) -> Result<u64> {
    validate_prime_power(q)?;
    match k {
        0 => Ok(1),
        1 => Ok(q - 2),
        _ => checked_mul(checked_pow(q, k - 2)?, (q - 1) * (q - 1)),
    }
}

/// The dominant conductor formula `sum_i max(a(pi_i), n_i * a(chi))`. It
/// equals the twisted conductor exactly on the characters without
/// interference.
pub fn dominant_conductor(rep: &Representation, chi_conductor: u64) -> u64 {
    rep.components()
        .iter()
        .map(|c| c.conductor().max(c.rank() * chi_conductor))
        .sum()
}

/// A component is in the no-interference case for a conductor value `k`
/// when it is twist minimal or `n_i * k != a(pi_i)`; for such components the
/// twisted conductor is pinned at `max(a(pi_i), n_i k)` for every character
/// of conductor `k`.
fn is_pinned(component: &QuasiSquareIntegrable, k: u64) -> bool {
    component.is_twist_minimal() || component.rank() * k != component.conductor()
}

/// Bound for the number of characters of conductor exactly `k` whose twist
/// lands on conductor `j`.
///
/// Returns an empty-set report outside the certified window, the exact
/// dual-sphere count when no component can interfere, and otherwise the
/// sharpest applicable upper bound with its provenance.
pub fn twist_fixing_bound(rep: &Representation, k: u64, j: u64) -> Result<CountReport> {
    let q = rep.field().q();
    let bounds = rep.conductor_bounds(k);
    if j < bounds.lower {
        return Ok(CountReport::empty("below the totally minimal conductor"));
    }
    if j > bounds.upper {
        return Ok(CountReport::empty("above the certified upper bound"));
    }

    let pinned_total = dominant_conductor(rep, k);
    if rep.components().iter().all(|c| is_pinned(c, k)) {
        return Ok(if j == pinned_total {
            CountReport {
                kind: CountKind::Exact,
                value: count_exact(q, k)?,
                source: "every conductor-k character lands on the dominant value".to_string(),
            }
        } else {
            CountReport::empty("dominant value missed with no interference possible")
        });
    }

    // Feasible window: pinned components contribute exactly, interfering ones
    // at least their minimal conductor and at most their pinned value.
    let floor: u64 = rep
        .components()
        .iter()
        .map(|c| {
            if is_pinned(c, k) {
                c.conductor().max(c.rank() * k)
            } else {
                c.minimal_conductor()
            }
        })
        .sum();
    if j < floor {
        return Ok(CountReport::empty(
            "below the componentwise attainable window",
        ));
    }
    if j > pinned_total {
        return Ok(CountReport::empty(
            "above the componentwise attainable window",
        ));
    }

    let mut best = CountReport {
        kind: CountKind::UpperBound,
        value: count_exact(q, k)?,
        source: "size of the conductor-k dual sphere".to_string(),
    };
    let mut consider = |value: u64, source: &str| {
        if value < best.value {
            best.value = value;
            best.source = source.to_string();
        }
    };

    if rep.components().len() == 1 {
        // Whole-atom bounds, valid for a single quasi-square-integrable
        // component.
        let drop = pinned_total - j;
        let window = k - (drop / rep.rank()).min(k);
        consider(
            count_up_to(q, window)?,
            "conductor-window bound at k - floor(l/n)",
        );
        consider(count_up_to(q, j / rep.rank())?, "dual ball at floor(j/n)");
    }
    for component in rep.components() {
        // Each contributing character satisfies
        // n_i a(chi mu_i) <= a(chi pi_i) <= j.
        let radius = (component.minimal_conductor() / component.rank()).max(j / component.rank());
        consider(
            count_up_to(q, radius)?,
            "component dual ball at floor(j/n_i)",
        );
    }
    Ok(best)
}

/// Why interference is excluded for a component, if it is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentInterference {
    /// `n_i` does not divide `a(pi_i)`: the component is twist minimal and
    /// never interferes.
    ImpossibleByDivisibility,
    /// `a(pi_i) != n_i * a(chi)`: interference needs the conductors matched.
    ZeroByConductorMismatch,
    /// `a(chi * mu_i) = a(chi)`: the product conductor rules interference out
    /// for this specific character.
    ZeroByProductConductor,
    Possible,
}

impl ComponentInterference {
    /// Ordinal of the absence rule that fired (1 divisibility, 2 conductor
    /// mismatch, 3 product conductor), if any.
    pub fn rule(&self) -> Option<u8> {
        match self {
            Self::ImpossibleByDivisibility => Some(1),
            Self::ZeroByConductorMismatch => Some(2),
            Self::ZeroByProductConductor => Some(3),
            Self::Possible => None,
        }
    }

    pub fn excludes_interference(&self) -> bool {
        self.rule().is_some()
    }
}

/// Per-component interference verdicts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InterferenceStatus {
    pub components: Vec<ComponentInterference>,
}

impl InterferenceStatus {
    pub fn interference_possible(&self) -> bool {
        self.components.contains(&ComponentInterference::Possible)
    }
}

/// Interference verdicts knowing only the conductor of the twisting
/// character.
pub fn interference_status(rep: &Representation, chi_conductor: u64) -> InterferenceStatus {
    let components = rep
        .components()
        .iter()
        .map(|c| {
            if c.conductor() % c.rank() != 0 {
                ComponentInterference::ImpossibleByDivisibility
            } else if c.conductor() != c.rank() * chi_conductor {
                ComponentInterference::ZeroByConductorMismatch
            } else {
                ComponentInterference::Possible
            }
        })
        .collect();
    InterferenceStatus { components }
}

/// Refinement of [`interference_status`] for a concrete character: where the
/// conductor data alone is inconclusive, the product conductor
/// `a(chi * mu_i)` decides.
pub fn interference_status_with(
    rep: &Representation,
    chi: &crate::characters::UnitCharacter,
) -> Result<InterferenceStatus> {
    let coarse = interference_status(rep, chi.conductor());
    let mut components = Vec::with_capacity(coarse.components.len());
    for (component, verdict) in rep.components().iter().zip(coarse.components) {
        if verdict == ComponentInterference::Possible
            && chi.multiply(component.twist())?.conductor() == chi.conductor()
        {
            components.push(ComponentInterference::ZeroByProductConductor);
        } else {
            components.push(verdict);
        }
    }
    Ok(InterferenceStatus { components })
}

/// The stated closed-form interference counts, evaluated verbatim for a
/// non-twist-minimal component.
///
/// For `0 < j <= a(pi_i) - a(pi_min)` with `j = a(pi_i) mod n_i`, the stated
/// count of characters with interference `a(pi_i) - j` is
/// `#X((a(pi_i) - j) / n_i)`; at `j = 0` the stated count of characters in
/// the dual ball of radius `a(pi_i)/n_i` with full interference `a(pi_i)` is
/// `(q - 2) * #X(a(pi_i)/n_i - 1)`. Neither is asserted exact: the
/// verification report compares both against exhaustive enumeration.
pub fn interference_count_formula(
    component: &QuasiSquareIntegrable,
    j: u64,
) -> Result<CountReport> {
    let q = component.field().q();
    let a_pi = component.conductor();
    let rank = component.rank();
    if component.is_twist_minimal()
        || j > a_pi - component.minimal_conductor()
        || j % rank != a_pi % rank
    {
        return Ok(CountReport::empty("outside the stated interference range"));
    }
    if j == 0 {
        let radius = a_pi / rank;
        debug_assert!(radius >= 1);
        return Ok(CountReport {
            kind: CountKind::UpperBound,
            value: checked_mul(q - 2, count_up_to(q, radius - 1)?)?,
            source: "full-interference count as stated; see verification report".to_string(),
        });
    }
    Ok(CountReport {
        kind: CountKind::UpperBound,
        value: count_up_to(q, (a_pi - j) / rank)?,
        source: "interference count as stated; see verification report".to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::UnitCharacter;
    use crate::localfield::LocalFieldParams;

    fn q5() -> LocalFieldParams {
        LocalFieldParams::new(5, 1).unwrap()
    }

    fn mu2() -> UnitCharacter {
        UnitCharacter::from_exponents(q5(), 2, &[0, 1]).unwrap()
    }

    fn rank1_mu2() -> Representation {
        Representation::single(QuasiSquareIntegrable::new(1, "", 0, mu2(), None).unwrap())
    }

    #[test]
    fn closed_form_counts() {
        assert_eq!(count_up_to(5, 3).unwrap(), 100);
        assert_eq!(count_exact(5, 1).unwrap(), 3);
        assert_eq!(count_up_to(7, 0).unwrap(), 1);
        assert_eq!(count_exact(9, 0).unwrap(), 1);
        assert_eq!(count_exact(5, 2).unwrap(), 16);
        assert_eq!(count_up_to(6, 1), Err(Error::NotPrimePower(6)));
        assert_eq!(count_up_to(1, 1), Err(Error::NotPrimePower(1)));
        assert_eq!(count_up_to(9, 2).unwrap(), 72);
    }

    #[test]
    fn twist_fixing_trivial_cases() {
        let minimal = Representation::single(
            QuasiSquareIntegrable::new(2, "st", 1, UnitCharacter::trivial(q5()), None).unwrap(),
        );
        // j = max(a(pi), nk) is hit by the whole dual sphere.
        let hit = twist_fixing_bound(&minimal, 2, 4).unwrap();
        assert_eq!(hit.kind, CountKind::Exact);
        assert_eq!(hit.value, count_exact(5, 2).unwrap());
        // Any other j in the window is empty.
        let miss = twist_fixing_bound(&minimal, 2, 3).unwrap();
        assert_eq!(miss.kind, CountKind::EmptySet);
        assert_eq!(miss.value, 0);
    }

    #[test]
    fn twist_fixing_bounded_case() {
        // Rank-1 atom with a(mu) = 2: k = 2, j = 1 is bounded by #X(1) = 4.
        let rep = rank1_mu2();
        let report = twist_fixing_bound(&rep, 2, 1).unwrap();
        assert_eq!(report.kind, CountKind::UpperBound);
        assert_eq!(report.value, 4);
    }

    #[test]
    fn twist_fixing_window() {
        let rep = rank1_mu2();
        assert_eq!(
            twist_fixing_bound(&rep, 2, 5).unwrap().kind,
            CountKind::EmptySet
        );
        let minimal = Representation::single(
            QuasiSquareIntegrable::new(3, "m", 4, UnitCharacter::trivial(q5()), None).unwrap(),
        );
        assert_eq!(
            twist_fixing_bound(&minimal, 1, 2).unwrap().kind,
            CountKind::EmptySet
        );
    }

    #[test]
    fn interference_predicate_examples() {
        let odd = Representation::single(
            QuasiSquareIntegrable::new(2, "x", 3, UnitCharacter::trivial(q5()), None).unwrap(),
        );
        assert_eq!(
            interference_status(&odd, 1).components,
            vec![ComponentInterference::ImpossibleByDivisibility]
        );

        let even = Representation::single(
            QuasiSquareIntegrable::new(2, "x", 4, UnitCharacter::trivial(q5()), None).unwrap(),
        );
        assert_eq!(
            interference_status(&even, 1).components,
            vec![ComponentInterference::ZeroByConductorMismatch]
        );
        assert_eq!(
            interference_status(&even, 2).components,
            vec![ComponentInterference::Possible]
        );
        assert_eq!(interference_status(&even, 2).components[0].rule(), None);
    }

    #[test]
    fn interference_refinement_example() {
        // chi with a(chi * mu) = a(chi) = 2 excludes interference.
        let rep = rank1_mu2();
        let tau = UnitCharacter::from_exponents(q5(), 2, &[1, 1]).unwrap();
        assert_eq!(tau.conductor(), 2);
        assert_eq!(tau.multiply(&mu2()).unwrap().conductor(), 2);
        let status = interference_status_with(&rep, &tau).unwrap();
        assert_eq!(
            status.components,
            vec![ComponentInterference::ZeroByProductConductor]
        );
        assert_eq!(status.components[0].rule(), Some(3));

        // chi = mu^(-1) leaves interference possible.
        let status = interference_status_with(&rep, &mu2().inverse()).unwrap();
        assert_eq!(status.components, vec![ComponentInterference::Possible]);
    }

    #[test]
    fn stated_interference_formulas() {
        let atom = QuasiSquareIntegrable::new(1, "", 0, mu2(), None).unwrap();
        let at_j1 = interference_count_formula(&atom, 1).unwrap();
        assert_eq!(at_j1.kind, CountKind::UpperBound);
        assert_eq!(at_j1.value, 4);
        let at_j0 = interference_count_formula(&atom, 0).unwrap();
        assert_eq!(at_j0.value, 12);
        let out = interference_count_formula(&atom, 3).unwrap();
        assert_eq!(out.kind, CountKind::EmptySet);

        // Out-of-residue-class j is empty.
        let wide = QuasiSquareIntegrable::new(
            2,
            "w",
            1,
            UnitCharacter::from_exponents(q5(), 1, &[1, 0]).unwrap(),
            None,
        )
        .unwrap();
        assert_eq!(wide.conductor(), 2);
        assert!(!wide.is_twist_minimal());
        assert_eq!(
            interference_count_formula(&wide, 1).unwrap().kind,
            CountKind::EmptySet
        );
    }

    #[test]
    fn dominant_conductor_examples() {
        let rep = rank1_mu2();
        assert_eq!(dominant_conductor(&rep, 0), rep.conductor());
        let minimal = Representation::single(
            QuasiSquareIntegrable::new(2, "st", 1, UnitCharacter::trivial(q5()), None).unwrap(),
        );
        assert_eq!(dominant_conductor(&minimal, 3), 6);
    }
}
