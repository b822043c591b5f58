//! Ground truth by exhaustion: conductors recomputed from raw dual-group
//! data, exact twisted-conductor and interference histograms over concrete
//! character groups, and grid verification of every closed form and bound.
//!
//! The raw path shares only the exponent-vector data model with the rest of
//! the crate: products are formed by coordinate addition at a common level
//! and conductors are re-derived by testing triviality on filtration
//! subgroup generators, never by the canonical valuation rule.

mod verify;

pub use verify::{verify_grid, CheckStatus, VerificationCheck, VerificationReport};

use std::collections::BTreeMap;

use crate::characters::{enumerate_exact, pairing_is_trivial, UnitCharacter};
use crate::counting::count_exact;
use crate::error::{Error, Result};
use crate::localfield::{LocalFieldParams, UnitQuotientGroup};
use crate::reps::{QuasiSquareIntegrable, Representation};

/// Default enumeration guard, expressed in group elements.
pub const DEFAULT_LIMIT: u64 = 10_000_000;

/// Conductor of a raw exponent vector, found by scanning filtration levels
/// from below and testing triviality on subgroup generators.
pub fn raw_conductor(field: LocalFieldParams, level: u64, exponents: &[u64]) -> u64 {
    let group = UnitQuotientGroup::new(field, level).expect("level already materialized");
    for l in 0..=level {
        let trivial = group
            .filtration_generators(l)
            .iter()
            .all(|g| pairing_is_trivial(group.invariant_factors(), exponents, g));
        if trivial {
            return l;
        }
    }
    unreachable!("every character is trivial on the top filtration subgroup")
}

/// Conductor of a product of two characters, computed from raw coordinate
/// sums at a common level followed by a filtration scan.
pub fn raw_product_conductor(a: &UnitCharacter, b: &UnitCharacter) -> Result<u64> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let level = a.conductor().max(b.conductor());
    let group = UnitQuotientGroup::new(a.field(), level)?;
    let sum: Vec<u64> = a
        .exponents_at_level(level)
        .iter()
        .zip(b.exponents_at_level(level))
        .zip(group.invariant_factors())
        .map(|((&x, y), &d)| (x + y) % d)
        .collect();
    Ok(raw_conductor(a.field(), level, &sum))
}

/// Twisted conductor along the raw path: `sum_i max(a_min_i, n_i * a(chi mu_i))`
/// with every product conductor re-derived by filtration scanning.
pub fn raw_twisted_conductor(rep: &Representation, chi: &UnitCharacter) -> Result<u64> {
    let mut total = 0;
    for component in rep.components() {
        let product = raw_product_conductor(chi, component.twist())?;
        total += component
            .minimal_conductor()
            .max(component.rank() * product);
    }
    Ok(total)
}

/// Interference of one component along the raw path: the gap between the
/// pinned value `max(a(pi_i), n_i a(chi))` and the actual twisted conductor.
pub fn raw_interference(component: &QuasiSquareIntegrable, chi: &UnitCharacter) -> Result<u64> {
    let chi_conductor = raw_conductor(
        chi.field(),
        chi.conductor(),
        &chi.exponents_at_level(chi.conductor()),
    );
    let pinned = component.conductor().max(component.rank() * chi_conductor);
    let product = raw_product_conductor(chi, component.twist())?;
    let actual = component
        .minimal_conductor()
        .max(component.rank() * product);
    debug_assert!(actual <= pinned);
    Ok(pinned - actual)
}

/// An exact integer histogram with a deterministic key order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    context: String,
    counts: BTreeMap<u64, u64>,
    total: u64,
}

impl Histogram {
    fn new(context: String) -> Self {
        Self {
            context,
            counts: BTreeMap::new(),
            total: 0,
        }
    }

    fn record(&mut self, key: u64) {
        *self.counts.entry(key).or_insert(0) += 1;
        self.total += 1;
    }

    pub fn context(&self) -> &str {
        &self.context
    }

    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    pub fn count(&self, key: u64) -> u64 {
        self.counts.get(&key).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let pairs: Vec<serde_json::Value> = self
            .counts
            .iter()
            .map(|(&k, &v)| serde_json::json!([k, v]))
            .collect();
        serde_json::json!({
            "context": self.context,
            "total": self.total,
            "counts": pairs,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("key,count\n");
        for (k, v) in &self.counts {
            out.push_str(&format!("{k},{v}\n"));
        }
        out
    }
}

fn guard(needed: u64, limit: u64) -> Result<()> {
    if needed > limit {
        Err(Error::ResourceLimit { needed, limit })
    } else {
        Ok(())
    }
}

/// Distribution of `a(chi pi)` over all characters of conductor exactly `k`,
/// computed along the raw path.
pub fn twisted_conductor_histogram(rep: &Representation, k: u64, limit: u64) -> Result<Histogram> {
    let field = rep.field();
    guard(count_exact(field.q(), k)?, limit)?;
    let mut hist = Histogram::new(format!("a(chi pi) over X'({k}) for pi={rep}"));
    for chi in enumerate_exact(field, k)? {
        hist.record(raw_twisted_conductor(rep, &chi)?);
    }
    Ok(hist)
}

/// Distribution of the interference term of one component over all
/// characters of conductor exactly `k`.
pub fn interference_histogram(
    component: &QuasiSquareIntegrable,
    k: u64,
    limit: u64,
) -> Result<Histogram> {
    let field = component.field();
    guard(count_exact(field.q(), k)?, limit)?;
    let mut hist = Histogram::new(format!("interference over X'({k}) for {component}"));
    for chi in enumerate_exact(field, k)? {
        hist.record(raw_interference(component, &chi)?);
    }
    Ok(hist)
}

/// Grid of atoms and sums over which [`verify_grid`] exercises every
/// invariant.
#[derive(Debug, Clone)]
pub struct GridConfig {
    pub fields: Vec<LocalFieldParams>,
    /// Largest component rank generated.
    pub max_rank: u64,
    /// Largest minimal conductor generated.
    pub max_minimal_conductor: u64,
    /// Stored twists range over all characters of conductor up to this bound.
    pub mu_conductor_bound: u64,
    /// Twisting characters range over conductors up to this bound.
    pub k_bound: u64,
    /// Number of atoms sampled for pairwise sums.
    pub pair_sample: usize,
    /// Enumeration guard in group elements.
    pub limit: u64,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            fields: vec![LocalFieldParams::new(5, 1).expect("5 is an odd prime")],
            max_rank: 3,
            max_minimal_conductor: 4,
            mu_conductor_bound: 2,
            k_bound: 3,
            pair_sample: 200,
            limit: DEFAULT_LIMIT,
        }
    }
}

/// All atoms with rank up to `max_rank`, admissible minimal conductor up to
/// `max_minimal_conductor`, and stored twist running over the whole dual ball
/// of radius `mu_bound`. Rank-1 atoms carry minimal conductor 0 by
/// normalization; higher ranks respect `a_min >= rank - 1`.
pub fn atom_corpus(
    field: LocalFieldParams,
    max_rank: u64,
    max_minimal_conductor: u64,
    mu_bound: u64,
) -> Result<Vec<QuasiSquareIntegrable>> {
    let twists = crate::characters::enumerate_up_to(field, mu_bound)?;
    let mut corpus = Vec::new();
    for rank in 1..=max_rank {
        let minimal_range = if rank == 1 {
            0..=0
        } else {
            (rank - 1)..=max_minimal_conductor.max(rank - 1)
        };
        for a_min in minimal_range {
            let label = format!("min[n={rank},a={a_min}]");
            for mu in &twists {
                corpus.push(QuasiSquareIntegrable::new(
                    rank,
                    &label,
                    a_min,
                    mu.clone(),
                    None,
                )?);
            }
        }
    }
    Ok(corpus)
}

/// Deterministic sample of at most `size` atoms: evenly strided through the
/// corpus order.
pub fn sample_atoms(corpus: &[QuasiSquareIntegrable], size: usize) -> Vec<QuasiSquareIntegrable> {
    if corpus.len() <= size || size == 0 {
        return corpus.to_vec();
    }
    (0..size)
        .map(|i| corpus[i * corpus.len() / size].clone())
        .collect()
}

/// All unordered two-component sums (repetition allowed) of the given atoms.
pub fn pair_sums(atoms: &[QuasiSquareIntegrable]) -> Result<Vec<Representation>> {
    let mut sums = Vec::new();
    for (i, a) in atoms.iter().enumerate() {
        for b in &atoms[i..] {
            sums.push(Representation::new(vec![a.clone(), b.clone()])?);
        }
    }
    Ok(sums)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::enumerate_up_to;

    fn q5() -> LocalFieldParams {
        LocalFieldParams::new(5, 1).unwrap()
    }

    fn mu2() -> UnitCharacter {
        UnitCharacter::from_exponents(q5(), 2, &[0, 1]).unwrap()
    }

    #[test]
    fn raw_conductor_agrees_with_canonical() {
        for (p, f) in [(5u64, 1u32), (3, 2)] {
            let field = LocalFieldParams::new(p, f).unwrap();
            for chi in enumerate_up_to(field, 3).unwrap() {
                for level in chi.conductor()..=3 {
                    assert_eq!(
                        raw_conductor(field, level, &chi.exponents_at_level(level)),
                        chi.conductor()
                    );
                }
            }
        }
    }

    #[test]
    fn raw_product_agrees_with_group_law() {
        let all = enumerate_up_to(q5(), 2).unwrap();
        for a in &all {
            for b in &all {
                assert_eq!(
                    raw_product_conductor(a, b).unwrap(),
                    a.multiply(b).unwrap().conductor()
                );
            }
        }
    }

    #[test]
    fn histogram_trivial_twist() {
        // Twisting the trivial rank-1 atom just reads off a(chi).
        let atom =
            QuasiSquareIntegrable::new(1, "", 0, UnitCharacter::trivial(q5()), None).unwrap();
        let hist =
            twisted_conductor_histogram(&Representation::single(atom), 2, DEFAULT_LIMIT).unwrap();
        assert_eq!(hist.counts(), &BTreeMap::from([(2, 16)]));
    }

    #[test]
    fn histogram_interfering_atom() {
        let atom = QuasiSquareIntegrable::new(1, "", 0, mu2(), None).unwrap();
        let rep = Representation::single(atom.clone());
        let hist = twisted_conductor_histogram(&rep, 2, DEFAULT_LIMIT).unwrap();
        assert_eq!(hist.counts(), &BTreeMap::from([(0, 1), (1, 3), (2, 12)]));
        assert_eq!(hist.total(), 16);

        let delta = interference_histogram(&atom, 2, DEFAULT_LIMIT).unwrap();
        assert_eq!(delta.counts(), &BTreeMap::from([(0, 12), (1, 3), (2, 1)]));
    }

    #[test]
    fn histogram_unramified_sphere() {
        let atom = QuasiSquareIntegrable::new(2, "st", 1, mu2(), None).unwrap();
        let rep = Representation::single(atom);
        let hist = twisted_conductor_histogram(&rep, 0, DEFAULT_LIMIT).unwrap();
        assert_eq!(hist.counts(), &BTreeMap::from([(rep.conductor(), 1)]));
    }

    #[test]
    fn interference_vanishes_for_twist_minimal() {
        let atom =
            QuasiSquareIntegrable::new(2, "st", 1, UnitCharacter::trivial(q5()), None).unwrap();
        for k in 0..=2u64 {
            let hist = interference_histogram(&atom, k, DEFAULT_LIMIT).unwrap();
            assert_eq!(hist.count(0), hist.total());
        }
    }

    #[test]
    fn interference_vanishes_off_the_matched_conductor() {
        let atom = QuasiSquareIntegrable::new(1, "", 0, mu2(), None).unwrap();
        for k in [0u64, 1, 3] {
            let hist = interference_histogram(&atom, k, DEFAULT_LIMIT).unwrap();
            assert_eq!(hist.count(0), hist.total(), "k = {k}");
        }
    }

    #[test]
    fn resource_guard_trips() {
        let atom = QuasiSquareIntegrable::new(1, "", 0, mu2(), None).unwrap();
        let rep = Representation::single(atom);
        assert!(matches!(
            twisted_conductor_histogram(&rep, 2, 10),
            Err(Error::ResourceLimit {
                needed: 16,
                limit: 10
            })
        ));
    }

    #[test]
    fn corpus_shape() {
        let corpus = atom_corpus(q5(), 3, 4, 2).unwrap();
        // ranks 1 (a_min = 0), 2 (a_min 1..4), 3 (a_min 2..4), 20 twists each.
        assert_eq!(corpus.len(), (1 + 4 + 3) * 20);
        let sample = sample_atoms(&corpus, 200);
        assert_eq!(sample.len(), corpus.len());
        let small = sample_atoms(&corpus, 10);
        assert_eq!(small.len(), 10);
    }

    #[test]
    fn histogram_serialization_is_deterministic() {
        let atom = QuasiSquareIntegrable::new(1, "", 0, mu2(), None).unwrap();
        let rep = Representation::single(atom);
        let hist = twisted_conductor_histogram(&rep, 2, DEFAULT_LIMIT).unwrap();
        assert_eq!(hist.to_csv(), "key,count\n0,1\n1,3\n2,12\n");
        let json = hist.to_json_value();
        assert_eq!(json["total"], 16);
        assert_eq!(json["counts"][0][0], 0);
        assert_eq!(json["counts"][0][1], 1);
    }
}
