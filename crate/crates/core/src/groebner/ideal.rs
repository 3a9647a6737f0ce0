use std::fmt;

use serde::{Serialize, Serializer};

use super::engine::{self, Reduce};
use super::submodule::SubmoduleBasis;
use super::{from_vector, to_vector};
use crate::arith::{Field, Poly, RingExt, RingRef};
use crate::error::{Error, Result};

/// Grade of an ideal; the unit ideal has infinite grade.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Grade {
    Finite(usize),
    Infinite,
}

impl Grade {
    pub fn at_least(&self, n: usize) -> bool {
        match self {
            Grade::Finite(g) => *g >= n,
            Grade::Infinite => true,
        }
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grade::Finite(g) => write!(f, "{g}"),
            Grade::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Grade {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Grade::Finite(g) => s.serialize_u64(*g as u64),
            Grade::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Remainder of a division by a reduced Gröbner basis, with the quotients.
#[derive(Clone, Debug)]
pub struct NormalForm<F: Field> {
    pub remainder: Poly<F>,
    /// `quotients[i]` multiplies the i-th element of the reduced basis.
    pub quotients: Vec<Poly<F>>,
}

impl<F: Field> NormalForm<F> {
    /// Checks `f = sum q_i * b_i + remainder` exactly.
    pub fn verify(&self, f: &Poly<F>, basis: &[Poly<F>]) -> bool {
        let mut acc = self.remainder.clone();
        for (q, b) in self.quotients.iter().zip(basis) {
            acc = &acc + &(q * b);
        }
        &acc == f
    }
}

/// An ideal given by generators; the rank-one case of [`SubmoduleBasis`].
#[derive(Clone, Debug)]
pub struct IdealBasis<F: Field> {
    module: SubmoduleBasis<F>,
}

impl<F: Field> IdealBasis<F> {
    pub fn new(ring: RingRef<F>, generators: Vec<Poly<F>>) -> Result<Self> {
        let gens = generators.into_iter().map(|g| vec![g]).collect();
        Ok(IdealBasis {
            module: SubmoduleBasis::new(ring, 1, gens)?,
        })
    }

    pub fn zero(ring: RingRef<F>) -> Self {
        Self::new(ring, Vec::new()).expect("no generators")
    }

    pub fn unit(ring: RingRef<F>) -> Self {
        let one = ring.one();
        Self::new(ring, vec![one]).expect("one generator")
    }

    pub fn ring(&self) -> &RingRef<F> {
        self.module.ring()
    }

    pub fn generators(&self) -> Vec<Poly<F>> {
        self.module.generators().iter().map(|g| g[0].clone()).collect()
    }

    pub fn as_module(&self) -> &SubmoduleBasis<F> {
        &self.module
    }

    pub fn reduced_gb(&self) -> Vec<Poly<F>> {
        self.module.reduced_gb().into_iter().map(|mut g| g.remove(0)).collect()
    }

    /// Division by the reduced Gröbner basis.
    pub fn normal_form(&self, f: &Poly<F>) -> Result<NormalForm<F>> {
        if !crate::arith::same_ring(f.ring(), self.ring()) {
            return Err(Error::RingMismatch(
                "polynomial and ideal live in different rings".into(),
            ));
        }
        let gb = self.reduced_gb();
        let elems: Vec<_> = gb.iter().map(|g| to_vector(std::slice::from_ref(g), 0)).collect();
        let index = engine::LeadIndex::new(&elems);
        let red = engine::reduce(
            self.ring().order(),
            &to_vector(std::slice::from_ref(f), 0),
            &elems,
            &index,
            Reduce::Full,
            true,
        );
        let remainder = from_vector(self.ring(), &red.remainder, 0, 1).remove(0);
        let quotients = red
            .quotients
            .expect("tracking requested")
            .into_iter()
            .map(|ts| Poly::from_terms(self.ring().clone(), ts))
            .collect();
        Ok(NormalForm { remainder, quotients })
    }

    pub fn contains(&self, f: &Poly<F>) -> bool {
        self.module.contains(std::slice::from_ref(f)).expect("rank one")
    }

    /// Coefficients expressing `f` in the original generators, when `f` is a member.
    pub fn certificate(&self, f: &Poly<F>) -> Option<Vec<Poly<F>>> {
        self.module.express(std::slice::from_ref(f)).expect("rank one")
    }

    pub fn is_unit(&self) -> bool {
        self.contains(&self.ring().one())
    }

    pub fn is_zero(&self) -> bool {
        self.module.is_zero()
    }

    pub fn equals(&self, other: &Self) -> Result<bool> {
        self.module.equals(&other.module)
    }

    pub fn contains_ideal(&self, other: &Self) -> Result<bool> {
        self.module.contains_module(&other.module)
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        Ok(IdealBasis {
            module: self.module.sum(&other.module)?,
        })
    }

    pub fn with_generator(&self, f: Poly<F>) -> Self {
        IdealBasis {
            module: self.module.with_generators(vec![vec![f]]).expect("same ring"),
        }
    }

    /// `(I : f) = { a : a f ∈ I }`, read off the syzygies of `(f, g_1, .., g_s)`.
    pub fn quotient(&self, f: &Poly<F>) -> Self {
        let mut cols = vec![vec![f.clone()]];
        cols.extend(self.module.generators().iter().cloned());
        let syz = super::syzygies(self.ring(), 1, cols).expect("rank one columns");
        let gens = syz.into_iter().map(|s| s[0].clone()).filter(|p| !p.is_zero()).collect();
        Self::new(self.ring().clone(), gens).expect("same ring")
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        let r = self.ring();
        if !crate::arith::same_ring(r, other.ring()) {
            return Err(Error::RingMismatch("ideals over different rings".into()));
        }
        // kernel of A ⊕ A^s ⊕ A^t -> A^2, (a, u, w) ↦ (a - Σu g, a - Σw h)
        let mut cols = vec![vec![r.one(), r.one()]];
        for g in self.generators() {
            cols.push(vec![g, r.zero()]);
        }
        for h in other.generators() {
            cols.push(vec![r.zero(), h]);
        }
        let syz = super::syzygies(r, 2, cols)?;
        let gens = syz.into_iter().map(|s| s[0].clone()).filter(|p| !p.is_zero()).collect();
        Self::new(r.clone(), gens)
    }

    /// `f ∈ √I`, decided by `1 ∈ I + (1 - t f)` in `A[t]`.
    pub fn radical_contains(&self, f: &Poly<F>) -> bool {
        let ext = self.ring().with_extra_var("t");
        let t = ext.var_at(ext.nvars() - 1);
        let mut gens: Vec<Poly<F>> = self.generators().iter().map(|g| g.embed(&ext)).collect();
        gens.push(&ext.one() - &(&t * &f.embed(&ext)));
        IdealBasis::new(ext, gens).expect("same ring").is_unit()
    }

    /// Krull dimension of `A/I`: the largest set of variables containing no leading monomial.
    pub fn dimension(&self) -> Result<usize> {
        if self.is_unit() {
            return Err(Error::UnitIdeal("dimension of the zero ring is undefined".into()));
        }
        let n = self.ring().nvars();
        let leads: Vec<Vec<usize>> = self
            .reduced_gb()
            .iter()
            .map(|g| g.leading_term().expect("nonzero").0.support().collect())
            .collect();
        let mut best = 0;
        for mask in 0u64..(1u64 << n) {
            let size = mask.count_ones() as usize;
            if size <= best {
                continue;
            }
            let independent = leads.iter().all(|supp| !supp.iter().all(|&v| mask & (1 << v) != 0));
            if independent {
                best = size;
            }
        }
        Ok(best)
    }

    /// Grade as codimension; polynomial rings over fields are Cohen–Macaulay.
    pub fn grade(&self) -> Grade {
        if self.is_unit() {
            return Grade::Infinite;
        }
        Grade::Finite(self.ring().nvars() - self.dimension().expect("proper ideal"))
    }

    pub fn to_ring(&self, ring: &RingRef<F>) -> Result<Self> {
        Ok(IdealBasis {
            module: self.module.to_ring(ring)?,
        })
    }
}
