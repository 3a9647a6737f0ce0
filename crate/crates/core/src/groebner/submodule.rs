use std::fmt;
use std::sync::{Arc, OnceLock};

use super::engine::{self, LeadIndex, Reduce, Vector};
use super::{from_vector, to_vector};
use crate::arith::{same_ring, Field, Poly, RingExt, RingRef};
use crate::error::{Error, Result};

struct Basis<F> {
    elems: Vec<Vector<F>>,
    index: LeadIndex,
}

impl<F: Field> Basis<F> {
    fn new(elems: Vec<Vector<F>>) -> Self {
        let index = LeadIndex::new(&elems);
        Basis { elems, index }
    }
}

/// Submodule of `A^rank` given by generating vectors.
///
/// The reduced Gröbner basis and the graph basis used for certificates are
/// computed on first use and cached; both caches are write-once.
pub struct SubmoduleBasis<F: Field> {
    ring: RingRef<F>,
    rank: usize,
    generators: Vec<Vec<Poly<F>>>,
    gb: OnceLock<Arc<Basis<F>>>,
    graph: OnceLock<Arc<Basis<F>>>,
}

impl<F: Field> Clone for SubmoduleBasis<F> {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(b) = self.gb.get() {
            let _ = gb.set(b.clone());
        }
        let graph = OnceLock::new();
        if let Some(b) = self.graph.get() {
            let _ = graph.set(b.clone());
        }
        SubmoduleBasis {
            ring: self.ring.clone(),
            rank: self.rank,
            generators: self.generators.clone(),
            gb,
            graph,
        }
    }
}

impl<F: Field> fmt::Debug for SubmoduleBasis<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubmoduleBasis")
            .field("rank", &self.rank)
            .field("generators", &self.generators)
            .finish()
    }
}

impl<F: Field> SubmoduleBasis<F> {
    pub fn new(ring: RingRef<F>, rank: usize, generators: Vec<Vec<Poly<F>>>) -> Result<Self> {
        for g in &generators {
            if g.len() != rank {
                return Err(Error::Dimension(format!(
                    "generator of length {} in a submodule of rank {rank}",
                    g.len()
                )));
            }
            if let Some(p) = g.iter().find(|p| !same_ring(p.ring(), &ring)) {
                return Err(Error::RingMismatch(format!("generator entry {p} from another ring")));
            }
        }
        Ok(SubmoduleBasis {
            ring,
            rank,
            generators,
            gb: OnceLock::new(),
            graph: OnceLock::new(),
        })
    }

    pub fn zero(ring: RingRef<F>, rank: usize) -> Self {
        Self::new(ring, rank, Vec::new()).expect("empty generator list")
    }

    /// The whole free module `A^rank`.
    pub fn full(ring: RingRef<F>, rank: usize) -> Self {
        let gens = (0..rank).map(|i| unit_vector(&ring, rank, i)).collect();
        Self::new(ring, rank, gens).expect("unit vectors")
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[Vec<Poly<F>>] {
        &self.generators
    }

    fn basis(&self) -> &Basis<F> {
        self.gb.get_or_init(|| {
            let gens = self.generators.iter().map(|g| to_vector(g, 0)).collect();
            Arc::new(Basis::new(engine::groebner(self.ring.order(), gens, self.rank == 1)))
        })
    }

    fn graph(&self) -> &Basis<F> {
        self.graph.get_or_init(|| {
            let r = self.rank as u32;
            let gens = self
                .generators
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    let mut v = to_vector(g, 0);
                    v.terms.push(engine::Term {
                        pos: r + i as u32,
                        mono: crate::arith::Monomial::one(self.ring.nvars()),
                        coeff: self.ring.coeff(1),
                    });
                    v
                })
                .collect();
            Arc::new(Basis::new(engine::groebner(self.ring.order(), gens, false)))
        })
    }

    /// The reduced Gröbner basis, sorted by increasing leading term.
    pub fn reduced_gb(&self) -> Vec<Vec<Poly<F>>> {
        self.basis()
            .elems
            .iter()
            .map(|v| from_vector(&self.ring, v, 0, self.rank))
            .collect()
    }

    fn check_len(&self, v: &[Poly<F>]) -> Result<()> {
        if v.len() != self.rank {
            return Err(Error::Dimension(format!(
                "vector of length {} against rank {}",
                v.len(),
                self.rank
            )));
        }
        Ok(())
    }

    /// Normal form of `v` modulo the submodule.
    pub fn reduce(&self, v: &[Poly<F>]) -> Result<Vec<Poly<F>>> {
        self.check_len(v)?;
        let b = self.basis();
        let r = engine::reduce(
            self.ring.order(),
            &to_vector(v, 0),
            &b.elems,
            &b.index,
            Reduce::Full,
            false,
        );
        Ok(from_vector(&self.ring, &r.remainder, 0, self.rank))
    }

    pub fn contains(&self, v: &[Poly<F>]) -> Result<bool> {
        self.check_len(v)?;
        let b = self.basis();
        let r = engine::reduce(
            self.ring.order(),
            &to_vector(v, 0),
            &b.elems,
            &b.index,
            Reduce::Full,
            false,
        );
        Ok(r.remainder.is_zero())
    }

    /// Coefficients `c` with `sum_i c_i * generator_i = v`, or `None` if `v` is not a member.
    pub fn express(&self, v: &[Poly<F>]) -> Result<Option<Vec<Poly<F>>>> {
        self.check_len(v)?;
        let g = self.graph();
        let r = engine::reduce(
            self.ring.order(),
            &to_vector(v, 0),
            &g.elems,
            &g.index,
            Reduce::Below(self.rank as u32),
            false,
        );
        if !r.remainder.is_zero() {
            return Ok(None);
        }
        let coeffs: Vec<Poly<F>> = from_vector(&self.ring, &r.rest, self.rank as u32, self.generators.len())
            .iter()
            .map(|p| -p)
            .collect();
        debug_assert_eq!(self.combine(&coeffs), v);
        Ok(Some(coeffs))
    }

    /// `sum_i c_i * generator_i`.
    pub fn combine(&self, coeffs: &[Poly<F>]) -> Vec<Poly<F>> {
        let mut out = vec![self.ring.zero(); self.rank];
        for (c, g) in coeffs.iter().zip(&self.generators) {
            if c.is_zero() {
                continue;
            }
            for (o, e) in out.iter_mut().zip(g) {
                *o = &*o + &(c * e);
            }
        }
        out
    }

    /// Generators of the module of relations among the generators.
    pub fn syzygies(&self) -> Vec<Vec<Poly<F>>> {
        let g = self.graph();
        let r = self.rank as u32;
        g.elems
            .iter()
            .filter(|v| v.lead().map(|t| t.pos >= r).unwrap_or(false))
            .map(|v| from_vector(&self.ring, v, r, self.generators.len()))
            .collect()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::Dimension(format!(
                "ambient ranks {} and {} differ",
                self.rank, other.rank
            )));
        }
        if !same_ring(&self.ring, &other.ring) {
            return Err(Error::RingMismatch("submodules over different rings".into()));
        }
        Ok(())
    }

    pub fn contains_module(&self, other: &Self) -> Result<bool> {
        self.check_compatible(other)?;
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as submodules, decided by comparing reduced Gröbner bases.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.basis().elems == other.basis().elems)
    }

    /// True when the submodule is all of `A^rank`.
    pub fn is_full(&self) -> bool {
        (0..self.rank).all(|i| {
            self.contains(&unit_vector(&self.ring, self.rank, i))
                .expect("lengths match")
        })
    }

    pub fn is_zero(&self) -> bool {
        self.generators.iter().all(|g| g.iter().all(|p| p.is_zero()))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Self::new(self.ring.clone(), self.rank, gens)
    }

    pub fn with_generators(&self, extra: Vec<Vec<Poly<F>>>) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.extend(extra);
        Self::new(self.ring.clone(), self.rank, gens)
    }

    /// Same generators in another ring over the same variables (e.g. another order).
    pub fn to_ring(&self, ring: &RingRef<F>) -> Result<Self> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.iter().map(|p| p.to_ring(ring)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring.clone(), self.rank, gens)
    }
}

pub(crate) fn unit_vector<F: Field>(ring: &RingRef<F>, rank: usize, i: usize) -> Vec<Poly<F>> {
    (0..rank)
        .map(|j| if j == i { ring.one() } else { ring.zero() })
        .collect()
}

/// Generators of the kernel of the matrix whose columns are `columns` (each of length `rank`).
pub fn syzygies<F: Field>(ring: &RingRef<F>, rank: usize, columns: Vec<Vec<Poly<F>>>) -> Result<Vec<Vec<Poly<F>>>> {
    Ok(SubmoduleBasis::new(ring.clone(), rank, columns)?.syzygies())
}
