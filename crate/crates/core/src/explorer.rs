//! Exhaustive probes of the magma's structure over truncated universes.
//!
//! A universe of bound `n` is `P([0, n))`, enumerated in encoding order
//! (`∅, {0}, {1}, {0,1}, …`). `⊕` and `invert` are evaluated on their true
//! finite results; anything that leaves the universe is reported as such
//! rather than truncated.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::RangeError;
use crate::magma::{invert, oplus};
use crate::FinSet;

/// Largest bound accepted by [`scan_associativity`].
pub const MAX_SCAN_BOUND: usize = 6;
/// Largest bound accepted by [`search_closed_subsets`].
pub const MAX_SEARCH_BOUND: usize = 5;

const BATCH: usize = 1 << 12;

/// A triple on which the two association orders disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub a: FinSet,
    pub b: FinSet,
    pub c: FinSet,
    /// `(a ⊕ b) ⊕ c`
    pub left: FinSet,
    /// `a ⊕ (b ⊕ c)`
    pub right: FinSet,
}

/// `Some` iff `(a ⊕ b) ⊕ c ≠ a ⊕ (b ⊕ c)`.
pub fn assoc_witness(a: &FinSet, b: &FinSet, c: &FinSet) -> Option<Witness> {
    let left = oplus(&oplus(a, b), c);
    let right = oplus(a, &oplus(b, c));
    (left != right).then(|| Witness {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        left,
        right,
    })
}

/// All subsets of `[0, bound)` in encoding order.
pub fn universe(bound: usize) -> Vec<FinSet> {
    (0..1u64 << bound).map(FinSet::from_word).collect()
}

fn in_universe(s: &FinSet, bound: usize) -> bool {
    s.max_element().is_none_or(|m| m < bound)
}

fn pool(workers: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("failed to build worker pool")
}

/// Result of [`scan_associativity`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssocScan {
    pub bound: usize,
    pub total_triples: u64,
    pub failing_triples: u64,
    /// Least failing triple under `(encode a, encode b, encode c)` order.
    pub first_witness: Option<Witness>,
}

/// Test every triple over `P([0, bound)` for associativity.
pub fn scan_associativity(bound: usize) -> Result<AssocScan, RangeError> {
    RangeError::check("bound", bound, MAX_SCAN_BOUND)?;
    let sets = universe(bound);
    let rows: Vec<(u64, Option<Witness>)> = sets
        .par_iter()
        .map(|a| {
            let mut failing = 0;
            let mut first = None;
            for b in &sets {
                for c in &sets {
                    if let Some(w) = assoc_witness(a, b, c) {
                        failing += 1;
                        first.get_or_insert(w);
                    }
                }
            }
            (failing, first)
        })
        .collect();
    let n = sets.len() as u64;
    Ok(AssocScan {
        bound,
        total_triples: n * n * n,
        failing_triples: rows.iter().map(|(f, _)| f).sum(),
        first_witness: rows.into_iter().find_map(|(_, w)| w),
    })
}

/// [`scan_associativity`] on a dedicated pool of `workers` threads (`0` picks
/// the rayon default).
pub fn scan_associativity_with_workers(
    bound: usize,
    workers: usize,
) -> Result<AssocScan, RangeError> {
    RangeError::check("bound", bound, MAX_SCAN_BOUND)?;
    pool(workers).install(|| scan_associativity(bound))
}

/// Classification of a candidate sub-group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsetStatus {
    /// Contains `∅`, closed under `⊕` and `invert`, and associative.
    Subgroup,
    /// Some `a ⊕ b` or `invert(a)` has an element at or beyond the bound.
    Escaping,
    /// Some `a ⊕ b` stays in the universe but not in the candidate.
    NotClosed,
    /// Some `invert(a)` stays in the universe but not in the candidate.
    NotInverseClosed,
    NonAssociative,
    /// The candidate lacks `∅`.
    MissingIdentity,
}

/// Why a candidate failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    Oplus {
        a: FinSet,
        b: FinSet,
        result: FinSet,
    },
    Inverse {
        a: FinSet,
        inverse: FinSet,
    },
    Triple(Witness),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubsetReport {
    pub members: Vec<FinSet>,
    pub status: SubsetStatus,
    pub witness: Option<Evidence>,
}

/// Classify `members` as a candidate sub-group of the universe `P([0, bound))`.
///
/// Checks run in a fixed order and the first failure decides the status:
/// identity, universe escape (all products, then all inverses), closure under
/// `⊕`, closure under `invert`, associativity. Pairs are visited as `(a, b)`
/// with `a ≤ b` in encoding order.
pub fn classify_subset(members: Vec<FinSet>, bound: usize) -> SubsetReport {
    let mut members = members;
    members.sort();
    members.dedup();
    let report = |members, status, witness| SubsetReport {
        members,
        status,
        witness,
    };
    if members.first().is_none_or(|m| !m.is_empty()) {
        return report(members, SubsetStatus::MissingIdentity, None);
    }

    let products: Vec<Evidence> = members
        .iter()
        .enumerate()
        .flat_map(|(i, a)| {
            members[i..].iter().map(move |b| Evidence::Oplus {
                a: a.clone(),
                b: b.clone(),
                result: oplus(a, b),
            })
        })
        .collect();
    let inverses: Vec<Evidence> = members
        .iter()
        .map(|a| Evidence::Inverse {
            a: a.clone(),
            inverse: invert(a),
        })
        .collect();
    let produced = |e: &Evidence| match e {
        Evidence::Oplus { result, .. } => result.clone(),
        Evidence::Inverse { inverse, .. } => inverse.clone(),
        Evidence::Triple(_) => unreachable!(),
    };

    if let Some(e) = products
        .iter()
        .chain(&inverses)
        .find(|e| !in_universe(&produced(e), bound))
    {
        let e = e.clone();
        return report(members, SubsetStatus::Escaping, Some(e));
    }
    let absent = |e: &&Evidence| members.binary_search(&produced(e)).is_err();
    if let Some(e) = products.iter().find(absent) {
        let e = e.clone();
        return report(members, SubsetStatus::NotClosed, Some(e));
    }
    if let Some(e) = inverses.iter().find(absent) {
        let e = e.clone();
        return report(members, SubsetStatus::NotInverseClosed, Some(e));
    }
    let triple = members
        .iter()
        .cartesian_product(&members)
        .cartesian_product(&members)
        .find_map(|((a, b), c)| assoc_witness(a, b, c));
    match triple {
        Some(w) => report(
            members,
            SubsetStatus::NonAssociative,
            Some(Evidence::Triple(w)),
        ),
        None => report(members, SubsetStatus::Subgroup, None),
    }
}

/// Totals over one [`search_closed_subsets`] run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchSummary {
    pub bound: usize,
    pub max_size: usize,
    pub candidates: u64,
    pub subgroup: u64,
    pub escaping: u64,
    pub not_closed: u64,
    pub not_inverse_closed: u64,
    pub non_associative: u64,
}

impl SearchSummary {
    fn count(&mut self, status: SubsetStatus) {
        self.candidates += 1;
        match status {
            SubsetStatus::Subgroup => self.subgroup += 1,
            SubsetStatus::Escaping => self.escaping += 1,
            SubsetStatus::NotClosed => self.not_closed += 1,
            SubsetStatus::NotInverseClosed => self.not_inverse_closed += 1,
            SubsetStatus::NonAssociative => self.non_associative += 1,
            SubsetStatus::MissingIdentity => unreachable!("candidates always contain ∅"),
        }
    }
}

fn check_search_bounds(bound: usize, max_size: usize) -> Result<(), RangeError> {
    RangeError::check("bound", bound, MAX_SEARCH_BOUND)?;
    RangeError::check("max_size", max_size, 1 << bound)
}

/// Stream the report of every `S ⊆ P([0, bound))` with `∅ ∈ S` and
/// `|S| ≤ max_size` to `visit`, ordered by size and then lexicographically by
/// the sorted member encodings.
///
/// Candidates are classified in parallel batches on the global rayon pool and
/// handed to `visit` in order on the calling thread, so memory stays bounded
/// for large searches.
pub fn visit_closed_subsets(
    bound: usize,
    max_size: usize,
    visit: impl FnMut(SubsetReport),
) -> Result<SearchSummary, RangeError> {
    visit_in(bound, max_size, None, visit)
}

/// [`visit_closed_subsets`] with classification on a dedicated pool of
/// `workers` threads (`0` picks the rayon default).
pub fn visit_closed_subsets_with_workers(
    bound: usize,
    max_size: usize,
    workers: usize,
    visit: impl FnMut(SubsetReport),
) -> Result<SearchSummary, RangeError> {
    check_search_bounds(bound, max_size)?;
    visit_in(bound, max_size, Some(&pool(workers)), visit)
}

fn visit_in(
    bound: usize,
    max_size: usize,
    pool: Option<&rayon::ThreadPool>,
    mut visit: impl FnMut(SubsetReport),
) -> Result<SearchSummary, RangeError> {
    check_search_bounds(bound, max_size)?;
    let sets = universe(bound);
    let mut summary = SearchSummary {
        bound,
        max_size,
        ..SearchSummary::default()
    };
    let classify_batch = |batch: &[Vec<usize>]| -> Vec<SubsetReport> {
        batch
            .par_iter()
            .map(|idx| {
                let members = std::iter::once(0)
                    .chain(idx.iter().copied())
                    .map(|i| sets[i].clone())
                    .collect();
                classify_subset(members, bound)
            })
            .collect()
    };
    for size in 1..=max_size {
        // Lexicographic combinations of the non-empty sets; ∅ always leads.
        let combos = (1..sets.len()).combinations(size - 1);
        for chunk in &combos.chunks(BATCH) {
            let batch: Vec<Vec<usize>> = chunk.collect();
            let reports = match pool {
                Some(p) => p.install(|| classify_batch(&batch)),
                None => classify_batch(&batch),
            };
            for r in reports {
                summary.count(r.status);
                visit(r);
            }
        }
    }
    Ok(summary)
}

/// Collect every report of [`visit_closed_subsets`].
pub fn search_closed_subsets(
    bound: usize,
    max_size: usize,
) -> Result<Vec<SubsetReport>, RangeError> {
    let mut out = Vec::new();
    visit_closed_subsets(bound, max_size, |r| out.push(r))?;
    Ok(out)
}

/// [`search_closed_subsets`] on a dedicated pool of `workers` threads.
pub fn search_closed_subsets_with_workers(
    bound: usize,
    max_size: usize,
    workers: usize,
) -> Result<Vec<SubsetReport>, RangeError> {
    let mut out = Vec::new();
    visit_closed_subsets_with_workers(bound, max_size, workers, |r| out.push(r))?;
    Ok(out)
}

/// `[A_1, …, A_k]` with `A_1 = A` and `A_{i+1} = A_i ⊕ A`.
pub fn orbit(a: &FinSet, k: usize) -> Vec<FinSet> {
    std::iter::successors(Some(a.clone()), |prev| Some(oplus(prev, a)))
        .take(k)
        .collect()
}
