use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::arith::{Field, Poly, RingRef};
use crate::error::{Error, Result};
use crate::groebner::IdealBasis;

/// Why a sequence failed to be regular at some position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Failure {
    /// The term generates the unit ideal together with its predecessors.
    Unit,
    ZeroDivisor,
}

#[derive(Clone, Debug, Serialize)]
#[serde(bound(serialize = ""))]
pub struct SequenceReport<F: Field> {
    pub sequence: Vec<Poly<F>>,
    pub regular: bool,
    /// Filled in by the permutation check.
    pub a_sequence: Option<bool>,
    /// Positions (1-based) into `sequence` of the first failing ordering.
    pub failing_permutation: Option<Vec<usize>>,
    /// 1-based index of the failing element within the failing ordering.
    pub failing_index: Option<usize>,
    pub failure: Option<Failure>,
    /// Element of `(f_1..f_{i-1}) : f_i` outside `(f_1..f_{i-1})`.
    pub witness: Option<Poly<F>>,
}

struct Breakdown<F: Field> {
    index: usize,
    failure: Failure,
    witness: Option<Poly<F>>,
}

/// Why `f` fails to be a nonzerodivisor and nonunit on `A / ideal`, if it does.
fn step<F: Field>(ideal: &IdealBasis<F>, f: &Poly<F>) -> Option<(Failure, Option<Poly<F>>)> {
    if f.is_unit() || ideal.with_generator(f.clone()).is_unit() {
        return Some((Failure::Unit, None));
    }
    // the reduced basis of the colon ideal does not depend on how `ideal` was generated
    let q = ideal.quotient(f);
    q.reduced_gb()
        .into_iter()
        .find(|g| !ideal.contains(g))
        .map(|w| (Failure::ZeroDivisor, Some(w)))
}

fn first_breakdown<F: Field>(ring: &RingRef<F>, fs: &[Poly<F>]) -> Option<Breakdown<F>> {
    let mut ideal = IdealBasis::zero(ring.clone());
    for (i, f) in fs.iter().enumerate() {
        if let Some((failure, witness)) = step(&ideal, f) {
            return Some(Breakdown {
                index: i + 1,
                failure,
                witness,
            });
        }
        ideal = ideal.with_generator(f.clone());
    }
    None
}

/// Each `f_i` is a nonunit modulo `(f_1..f_{i-1})` and `(f_1..f_{i-1}) : f_i = (f_1..f_{i-1})`.
pub fn is_regular_sequence<F: Field>(ring: &RingRef<F>, fs: &[Poly<F>]) -> SequenceReport<F> {
    let b = first_breakdown(ring, fs);
    SequenceReport {
        sequence: fs.to_vec(),
        regular: b.is_none(),
        a_sequence: None,
        failing_permutation: None,
        failing_index: b.as_ref().map(|b| b.index),
        failure: b.as_ref().map(|b| b.failure),
        witness: b.and_then(|b| b.witness),
    }
}

/// Regular in every order; orderings are tried lexicographically.
pub fn is_a_sequence<F: Field>(ring: &RingRef<F>, fs: &[Poly<F>], perm_cap: usize) -> Result<SequenceReport<F>> {
    if fs.len() > perm_cap {
        return Err(Error::CapExceeded(format!(
            "{} elements exceed the permutation cap {perm_cap}",
            fs.len()
        )));
    }
    if fs.len() >= u64::BITS as usize {
        return Err(Error::CapExceeded(format!("{} elements", fs.len())));
    }
    let mut report = is_regular_sequence(ring, fs);
    let mut search = PermutationSearch {
        ring,
        fs,
        ideals: HashMap::new(),
        passing: HashSet::new(),
        prefix: Vec::new(),
    };
    match search.first_failure(0) {
        None => report.a_sequence = Some(true),
        Some((perm, index, failure, witness)) => {
            report.a_sequence = Some(false);
            report.failing_permutation = Some(perm.iter().map(|i| i + 1).collect());
            report.failing_index = Some(index);
            report.failure = Some(failure);
            report.witness = witness;
        }
    }
    Ok(report)
}

/// Depth-first walk over orderings in lexicographic order. Regularity of a
/// term depends only on the set of earlier terms, so subtrees are keyed by
/// that set and visited at most once.
struct PermutationSearch<'a, F: Field> {
    ring: &'a RingRef<F>,
    fs: &'a [Poly<F>],
    ideals: HashMap<u64, IdealBasis<F>>,
    /// Sets of used terms after which every completion is regular.
    passing: HashSet<u64>,
    prefix: Vec<usize>,
}

type Found<F> = (Vec<usize>, usize, Failure, Option<Poly<F>>);

impl<F: Field> PermutationSearch<'_, F> {
    fn ideal(&mut self, mask: u64) -> &IdealBasis<F> {
        let (ring, fs) = (self.ring, self.fs);
        self.ideals.entry(mask).or_insert_with(|| {
            let gens = (0..fs.len())
                .filter(|j| mask & (1 << j) != 0)
                .map(|j| fs[j].clone())
                .collect();
            IdealBasis::new(ring.clone(), gens).expect("same ring")
        })
    }

    fn first_failure(&mut self, mask: u64) -> Option<Found<F>> {
        if self.passing.contains(&mask) {
            return None;
        }
        let n = self.fs.len();
        for i in (0..n).filter(|i| mask & (1 << i) == 0) {
            let f = &self.fs[i];
            if let Some((failure, witness)) = step(self.ideal(mask), f) {
                // the smallest ordering with this prefix lists the rest ascending
                let mut perm = self.prefix.clone();
                perm.push(i);
                let index = perm.len();
                perm.extend((0..n).filter(|j| *j != i && mask & (1 << j) == 0));
                return Some((perm, index, failure, witness));
            }
            self.prefix.push(i);
            let found = self.first_failure(mask | (1 << i));
            self.prefix.pop();
            if found.is_some() {
                return found;
            }
        }
        self.passing.insert(mask);
        None
    }
}

impl<F: Field> SequenceReport<F> {
    /// Re-checks the stored witness: `w f_i ∈ (f_1..f_{i-1})` and `w ∉ (f_1..f_{i-1})`.
    pub fn witness_verifies(&self, ring: &RingRef<F>) -> bool {
        let (Some(w), Some(i)) = (&self.witness, self.failing_index) else {
            return self.witness.is_none();
        };
        let order: Vec<usize> = match &self.failing_permutation {
            Some(p) => p.iter().map(|j| j - 1).collect(),
            None => (0..self.sequence.len()).collect(),
        };
        let prefix: Vec<Poly<F>> = order[..i - 1].iter().map(|&j| self.sequence[j].clone()).collect();
        let fi = &self.sequence[order[i - 1]];
        let ideal = IdealBasis::new(ring.clone(), prefix).expect("same ring");
        ideal.contains(&(w * fi)) && !ideal.contains(w)
    }
}

/// An element of a colon ideal written in the earlier terms of the sequence.
#[derive(Clone, Debug, Serialize)]
#[serde(bound(serialize = ""))]
pub struct Solution<F: Field> {
    /// 1-based position `i` of the divisor `f_i`.
    pub index: usize,
    /// Generator `x` of `(f_1..f_{i-1}) : f_i`.
    pub element: Poly<F>,
    /// `z` with `x = sum_j f_j z_j`.
    pub coefficients: Vec<Poly<F>>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(bound(serialize = ""))]
pub struct FactorReport<F: Field> {
    pub products: Vec<Poly<F>>,
    /// `h_i = f_i g_i` is an A-sequence.
    pub hypothesis: bool,
    /// `f` is an A-sequence.
    pub conclusion: bool,
    /// Hypothesis holds and the conclusion fails.
    pub counterexample: bool,
    /// For `f` in the given order: every colon generator expressed in the earlier terms.
    pub solutions: Vec<Solution<F>>,
    pub products_report: SequenceReport<F>,
    pub factors_report: SequenceReport<F>,
}

/// Checks whether `h_i = f_i g_i` is an A-sequence and whether `f` is one.
pub fn factor_sequence_check<F: Field>(
    ring: &RingRef<F>,
    fs: &[Poly<F>],
    gs: &[Poly<F>],
    perm_cap: usize,
) -> Result<FactorReport<F>> {
    if fs.len() != gs.len() {
        return Err(Error::Input(format!(
            "{} factors against {} cofactors",
            fs.len(),
            gs.len()
        )));
    }
    if let Some(i) = fs.iter().position(|f| f.is_unit()) {
        return Err(Error::Precondition(format!("f_{} is a unit", i + 1)));
    }
    let hs: Vec<Poly<F>> = fs.iter().zip(gs).map(|(f, g)| f * g).collect();
    let products_report = is_a_sequence(ring, &hs, perm_cap)?;
    let factors_report = is_a_sequence(ring, fs, perm_cap)?;
    let hypothesis = products_report.a_sequence == Some(true);
    let conclusion = factors_report.a_sequence == Some(true);
    let mut solutions = Vec::new();
    if conclusion {
        for i in 1..fs.len() {
            let ideal = IdealBasis::new(ring.clone(), fs[..i].to_vec())?;
            for x in ideal.quotient(&fs[i]).reduced_gb() {
                let coefficients = ideal
                    .certificate(&x)
                    .expect("regular: the colon ideal equals the ideal");
                solutions.push(Solution {
                    index: i + 1,
                    element: x,
                    coefficients,
                });
            }
        }
    }
    Ok(FactorReport {
        products: hs,
        hypothesis,
        conclusion,
        counterexample: hypothesis && !conclusion,
        solutions,
        products_report,
        factors_report,
    })
}

impl<F: Field> FactorReport<F> {
    /// Expands every stored solution.
    pub fn solutions_verify(&self, fs: &[Poly<F>]) -> bool {
        self.solutions.iter().all(|s| {
            let mut acc = Poly::zero(s.element.ring().clone());
            for (f, z) in fs.iter().zip(&s.coefficients) {
                acc = &acc + &(f * z);
            }
            acc == s.element
        })
    }
}
