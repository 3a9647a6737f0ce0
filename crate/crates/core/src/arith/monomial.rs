use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// Exponent vector of a monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(pub SmallVec<[u32; 6]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = e;
        m
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables occurring with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }
}

/// Admissible monomial orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum MonomialOrder {
    #[default]
    #[serde(rename = "grevlex")]
    GRevLex,
    #[serde(rename = "lex")]
    Lex,
    #[serde(rename = "grlex")]
    GrLex,
}

impl MonomialOrder {
    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::GRevLex => "grevlex",
            MonomialOrder::Lex => "lex",
            MonomialOrder::GrLex => "grlex",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "grevlex" => Some(MonomialOrder::GRevLex),
            "lex" => Some(MonomialOrder::Lex),
            "grlex" => Some(MonomialOrder::GrLex),
            _ => None,
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::GrLex => a.degree().cmp(&b.degree()).then_with(|| a.0.cmp(&b.0)),
            MonomialOrder::GRevLex => a.degree().cmp(&b.degree()).then_with(|| {
                // smaller exponent in the last differing variable wins
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u32..4, 3).prop_map(|v| Monomial::from_exps(&v))
    }

    const ORDERS: [MonomialOrder; 3] = [MonomialOrder::GRevLex, MonomialOrder::Lex, MonomialOrder::GrLex];

    #[test]
    fn grevlex_small_cases() {
        let o = MonomialOrder::GRevLex;
        // x > y > z ; x*z < y^2 under grevlex
        let xz = Monomial::from_exps(&[1, 0, 1]);
        let yy = Monomial::from_exps(&[0, 2, 0]);
        assert_eq!(o.cmp(&xz, &yy), Ordering::Less);
        assert_eq!(MonomialOrder::Lex.cmp(&xz, &yy), Ordering::Greater);
    }

    proptest! {
        #[test]
        fn orders_total_and_multiplicative(a in mono(), b in mono(), c in mono()) {
            for o in ORDERS {
                let ab = o.cmp(&a, &b);
                prop_assert_eq!(ab, o.cmp(&b, &a).reverse());
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                prop_assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c)), ab);
                prop_assert_ne!(o.cmp(&Monomial::one(3), &a), Ordering::Greater);
            }
        }

        #[test]
        fn orders_transitive(a in mono(), b in mono(), c in mono()) {
            for o in ORDERS {
                if o.cmp(&a, &b) != Ordering::Greater && o.cmp(&b, &c) != Ordering::Greater {
                    prop_assert_ne!(o.cmp(&a, &c), Ordering::Greater);
                }
            }
        }
    }
}
