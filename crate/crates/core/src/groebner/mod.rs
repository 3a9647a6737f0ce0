//! Gröbner bases of ideals and of submodules of free modules.
//!
//! Submodules of `A^r` are handled by one Buchberger engine under a
//! position-over-term order; ideals are the rank-one case. Certificates and
//! syzygies come from the Gröbner basis of the graph module generated by
//! `(g_i, e_i)` in `A^{r+s}`, where the first `r` positions dominate.

mod engine;
mod ideal;
mod submodule;

pub use ideal::{Grade, IdealBasis, NormalForm};
pub use submodule::{syzygies, SubmoduleBasis};

use crate::arith::{Field, Monomial, Poly, RingRef};
use engine::{Term, Vector};

pub(crate) fn to_vector<F: Field>(components: &[Poly<F>], offset: u32) -> Vector<F> {
    let mut terms = Vec::new();
    for (i, p) in components.iter().enumerate() {
        for (m, c) in p.terms() {
            terms.push(Term {
                pos: offset + i as u32,
                mono: m.clone(),
                coeff: c.clone(),
            });
        }
    }
    Vector { terms }
}

/// Components `offset..offset+len` of a vector as polynomials.
pub(crate) fn from_vector<F: Field>(ring: &RingRef<F>, v: &Vector<F>, offset: u32, len: usize) -> Vec<Poly<F>> {
    let mut buckets: Vec<Vec<(Monomial, F)>> = vec![Vec::new(); len];
    for t in &v.terms {
        if t.pos >= offset && ((t.pos - offset) as usize) < len {
            buckets[(t.pos - offset) as usize].push((t.mono.clone(), t.coeff.clone()));
        }
    }
    // terms of a single position are already sorted
    buckets
        .into_iter()
        .map(|ts| Poly::from_sorted_terms(ring.clone(), ts))
        .collect()
}
