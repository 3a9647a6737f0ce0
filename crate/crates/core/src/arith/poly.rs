use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::Field;
use super::monomial::Monomial;
use super::ring::{Ring, RingRef};
use crate::error::{Error, Result};

/// Sparse polynomial with exact coefficients; terms sorted by decreasing monomial.
#[derive(Clone)]
pub struct Poly<F: Field> {
    ring: RingRef<F>,
    terms: Vec<(Monomial, F)>,
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && same_ring(&self.ring, &other.ring)
    }
}
impl<F: Field> Eq for Poly<F> {}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

pub(crate) fn same_ring<F: Field>(a: &RingRef<F>, b: &RingRef<F>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

impl<F: Field> Poly<F> {
    pub fn zero(ring: RingRef<F>) -> Self {
        Poly {
            ring,
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: RingRef<F>, c: F) -> Self {
        let n = ring.nvars();
        Self::from_terms(ring, vec![(Monomial::one(n), c)])
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated, zero) terms.
    pub fn from_terms(ring: RingRef<F>, mut terms: Vec<(Monomial, F)>) -> Self {
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, F)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { ring, terms: out }
    }

    /// Trusts the caller that terms are sorted, distinct and nonzero.
    pub(crate) fn from_sorted_terms(ring: RingRef<F>, terms: Vec<(Monomial, F)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Poly { ring, terms }
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Units of a polynomial ring over a field are exactly the nonzero constants.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, F)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> Option<&F> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// The constant coefficient, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<F> {
        if self.is_zero() {
            return Some(self.ring.coeff(0));
        }
        if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!(
                "{:?} vs {:?}",
                self.ring.vars(),
                other.ring.vars()
            )))
        }
    }

    pub fn op(&self, other: &Self, op: PolyOp) -> Result<Self> {
        self.check_ring(other)?;
        Ok(match op {
            PolyOp::Add => self.add_impl(other, false),
            PolyOp::Sub => self.add_impl(other, true),
            PolyOp::Mul => self.mul_impl(other),
        })
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match order.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), if negate { cb.neg() } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { ca.sub(cb) } else { ca.add(cb) };
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..]
                .iter()
                .map(|(m, c)| (m.clone(), if negate { c.neg() } else { c.clone() })),
        );
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.ring.clone());
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let mut acc = Poly::zero(self.ring.clone());
        // accumulate row by row, keeping merges linear
        for (m, c) in &other.terms {
            acc = acc.add_impl(&self.mul_term(m, c), false);
        }
        acc
    }

    /// Multiplies by `c * m`. Order is preserved since orders are multiplicative.
    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero(self.ring.clone());
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(tm, tc)| (tm.mul(m), tc.mul(c))).collect(),
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        let n = self.ring.nvars();
        self.mul_term(&Monomial::one(n), c)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv()),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::constant(self.ring.clone(), self.ring.coeff(1));
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact division: `Some(q)` with `self = q * d`, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let (dm, dc) = d.leading_term()?;
        let dc_inv = dc.inv();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.leading_term().cloned() {
            if !dm.divides(&m) {
                return None;
            }
            let qm = dm.quotient(&m);
            let qc = c.mul(&dc_inv);
            rem = rem.add_impl(&d.mul_term(&qm, &qc.neg()), false);
            quot.push((qm, qc));
        }
        Some(Poly::from_sorted_terms(self.ring.clone(), quot))
    }

    /// Re-sorts into another ring over the same variables (e.g. a different order).
    pub fn to_ring(&self, ring: &RingRef<F>) -> Result<Self> {
        if ring.vars() != self.ring.vars() || ring.field() != self.ring.field() {
            return Err(Error::RingMismatch("variables or field differ".into()));
        }
        Ok(Poly::from_terms(ring.clone(), self.terms.clone()))
    }

    /// Embeds into a ring whose variables extend this ring's variables.
    pub fn embed(&self, ring: &RingRef<F>) -> Self {
        let extra = ring.nvars() - self.ring.nvars();
        debug_assert_eq!(&ring.vars()[..self.ring.nvars()], self.ring.vars());
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.clone();
                e.0.extend(std::iter::repeat_n(0, extra));
                (e, c.clone())
            })
            .collect();
        Poly::from_terms(ring.clone(), terms)
    }

    /// Drops trailing variables, which must not occur.
    pub fn restrict_to(&self, ring: &RingRef<F>) -> Option<Self> {
        let n = ring.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if m.0[n..].iter().any(|&e| e != 0) {
                return None;
            }
            terms.push((Monomial::from_exps(&m.0[..n]), c.clone()));
        }
        Some(Poly::from_terms(ring.clone(), terms))
    }
}

impl<F: Field> Ring<F> {
    pub fn poly_op(a: &Poly<F>, b: &Poly<F>, op: PolyOp) -> Result<Poly<F>> {
        a.op(b, op)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:expr) => {
        impl<F: Field> $tr<&Poly<F>> for &Poly<F> {
            type Output = Poly<F>;
            fn $method(self, rhs: &Poly<F>) -> Poly<F> {
                self.op(rhs, $op).expect("ring mismatch in polynomial arithmetic")
            }
        }
        impl<F: Field> $tr<Poly<F>> for Poly<F> {
            type Output = Poly<F>;
            fn $method(self, rhs: Poly<F>) -> Poly<F> {
                (&self).$method(&rhs)
            }
        }
    };
}
binop!(Add, add, PolyOp::Add);
binop!(Sub, sub, PolyOp::Sub);
binop!(Mul, mul, PolyOp::Mul);

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }
}

/// Serialized as its canonical string.
impl<F: Field> serde::Serialize for Poly<F> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    /// Canonical text form, e.g. `x^2 + 2*x*y - 1/2*z`; re-parses to the same value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative_display();
            let abs = c.abs_display();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if m.is_one() || !abs.is_one() {
                parts.push(abs.to_string());
            }
            for (v, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(self.ring.vars()[v].clone()),
                    _ => parts.push(format!("{}^{}", self.ring.vars()[v], e)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}
