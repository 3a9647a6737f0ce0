use std::marker::PhantomData;
use std::sync::Arc;

use num_bigint::BigInt;

use super::field::{small, Field, FieldKind};
use super::monomial::{Monomial, MonomialOrder};
use super::poly::Poly;
use crate::error::{Error, Result};

/// A polynomial ring `k[x_1..x_n]` with a fixed monomial order.
#[derive(Debug)]
pub struct Ring<F> {
    field: FieldKind,
    vars: Vec<String>,
    order: MonomialOrder,
    _coeff: PhantomData<fn() -> F>,
}

pub type RingRef<F> = Arc<Ring<F>>;

impl<F> PartialEq for Ring<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.vars == other.vars && self.order == other.order
    }
}
impl<F> Eq for Ring<F> {}

impl<F: Field> Ring<F> {
    pub fn new(field: FieldKind, vars: Vec<String>, order: MonomialOrder) -> Result<RingRef<F>> {
        field.validate()?;
        if !F::supports(&field) {
            return Err(Error::RingMismatch(format!(
                "coefficient type cannot represent {field}"
            )));
        }
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || !is_identifier(v) {
                return Err(Error::Input(format!("invalid variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::Input(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(Ring {
            field,
            vars,
            order,
            _coeff: PhantomData,
        }))
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn coeff(&self, n: i64) -> F {
        F::from_integer(&small(n), &self.field).expect("ring field validated")
    }

    pub fn coeff_big(&self, n: &BigInt) -> F {
        F::from_integer(n, &self.field).expect("ring field validated")
    }

    pub fn same_ring_with_order(&self, order: MonomialOrder) -> RingRef<F> {
        Arc::new(Ring {
            field: self.field,
            vars: self.vars.clone(),
            order,
            _coeff: PhantomData,
        })
    }

    /// The ring with one more variable appended (last, hence smallest under every order).
    pub fn with_extra_var(&self, name: &str) -> RingRef<F> {
        let mut vars = self.vars.clone();
        let mut fresh = name.to_string();
        while vars.contains(&fresh) {
            fresh.push('_');
        }
        vars.push(fresh);
        Arc::new(Ring {
            field: self.field,
            vars,
            order: self.order,
            _coeff: PhantomData,
        })
    }
}

/// Convenience constructors that need the shared handle.
pub trait RingExt<F: Field> {
    fn zero(&self) -> Poly<F>;
    fn one(&self) -> Poly<F>;
    fn constant(&self, n: i64) -> Poly<F>;
    fn var(&self, name: &str) -> Result<Poly<F>>;
    fn var_at(&self, i: usize) -> Poly<F>;
    fn parse(&self, text: &str) -> Result<Poly<F>>;
    fn monomial(&self, m: Monomial, c: F) -> Poly<F>;
}

impl<F: Field> RingExt<F> for RingRef<F> {
    fn zero(&self) -> Poly<F> {
        Poly::zero(self.clone())
    }
    fn one(&self) -> Poly<F> {
        self.constant(1)
    }
    fn constant(&self, n: i64) -> Poly<F> {
        Poly::constant(self.clone(), self.coeff(n))
    }
    fn var(&self, name: &str) -> Result<Poly<F>> {
        let i = self
            .var_index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(self.var_at(i))
    }
    fn var_at(&self, i: usize) -> Poly<F> {
        self.monomial(Monomial::var(self.nvars(), i, 1), self.coeff(1))
    }
    fn parse(&self, text: &str) -> Result<Poly<F>> {
        super::parse::parse_poly(text, self)
    }
    fn monomial(&self, m: Monomial, c: F) -> Poly<F> {
        Poly::from_terms(self.clone(), vec![(m, c)])
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
