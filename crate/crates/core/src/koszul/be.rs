use serde::Serialize;

use crate::arith::{Field, Poly};
use crate::error::Result;
use crate::groebner::{Grade, IdealBasis};
use crate::modcalc::{self, Complex};

#[derive(Clone, Debug, Serialize)]
#[serde(bound(serialize = ""))]
pub struct BeReport<F: Field> {
    pub ranks: Vec<usize>,
    /// `r_i = sum_{j >= i} (-1)^{j-i} rank F_j` for `i = 1..=s`.
    pub expected_ranks: Vec<i64>,
    /// Reduced Gröbner bases of `I_{r_i}(d_i)`.
    pub fitting_ideals: Vec<Vec<Poly<F>>>,
    pub grades: Vec<Grade>,
    pub acyclic: bool,
}

/// `F_•` is acyclic iff `grade I_{r_i}(d_i) >= i` for every `i`, with
/// `I_t = A` for `t <= 0` and `I_t = 0` above the size of the matrix.
pub fn be_acyclicity<F: Field>(c: &Complex<F>) -> Result<BeReport<F>> {
    let s = c.length();
    let mut expected = vec![0i64; s + 1];
    let mut acc = 0i64;
    for i in (1..=s).rev() {
        acc = c.rank(i) as i64 - acc;
        expected[i] = acc;
    }
    let mut fitting_ideals = Vec::new();
    let mut grades = Vec::new();
    for (i, &r) in expected.iter().enumerate().skip(1) {
        let d = c.differential(i);
        let bound = d.rows().min(d.cols()) as i64;
        let ideal = if r <= 0 {
            IdealBasis::unit(c.ring().clone())
        } else if r > bound {
            IdealBasis::zero(c.ring().clone())
        } else {
            modcalc::fitting_ideal(d, r as usize)?
        };
        grades.push(ideal.grade());
        fitting_ideals.push(ideal.reduced_gb());
    }
    let acyclic = grades.iter().enumerate().all(|(i, g)| g.at_least(i + 1));
    Ok(BeReport {
        ranks: c.ranks().to_vec(),
        expected_ranks: expected[1..].to_vec(),
        fitting_ideals,
        grades,
        acyclic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{FieldKind, MonomialOrder, Rational, Ring, RingExt, RingRef};
    use crate::koszul::typical_cube;
    use crate::modcalc::Matrix;

    fn ring() -> RingRef<Rational> {
        Ring::new(
            FieldKind::Rationals,
            vec!["x".into(), "y".into(), "z".into()],
            MonomialOrder::GRevLex,
        )
        .unwrap()
    }

    fn koszul(r: &RingRef<Rational>, fs: &[&str]) -> Complex<Rational> {
        let fs: Vec<_> = fs.iter().map(|f| r.parse(f).unwrap()).collect();
        let c = typical_cube(r, &fs);
        c.total_complex(&c.default_ordering()).unwrap()
    }

    #[test]
    fn koszul_complexes_are_acyclic() {
        let r = ring();
        let rep = be_acyclicity(&koszul(&r, &["x", "y"])).unwrap();
        assert_eq!(rep.expected_ranks, vec![1, 1]);
        assert_eq!(rep.grades, vec![Grade::Finite(2), Grade::Finite(2)]);
        assert!(rep.acyclic);
        let rep = be_acyclicity(&koszul(&r, &["x", "y", "z"])).unwrap();
        assert_eq!(rep.expected_ranks, vec![1, 2, 1]);
        assert_eq!(rep.grades, vec![Grade::Finite(3); 3]);
        assert!(rep.acyclic);
    }

    #[test]
    fn zero_map() {
        let r = ring();
        let c = Complex::new(r.clone(), vec![1, 1], vec![Matrix::zero(r.clone(), 1, 1)]).unwrap();
        let rep = be_acyclicity(&c).unwrap();
        assert_eq!(rep.expected_ranks, vec![1]);
        assert_eq!(rep.grades, vec![Grade::Finite(0)]);
        assert!(!rep.acyclic);
        assert!(!c.zero_spherical());
    }

    #[test]
    fn non_regular_pair() {
        let r = ring();
        let c = koszul(&r, &["x*y", "x*z"]);
        let rep = be_acyclicity(&c).unwrap();
        assert!(!rep.acyclic);
        assert_eq!(rep.acyclic, c.zero_spherical());
    }

    #[test]
    fn conventions_outside_the_minor_range() {
        let r = ring();
        // A^2 -> A has r_1 = 2 > 1: the zero ideal, never exact
        let d = Matrix::new(r.clone(), 1, 2, vec![vec![r.var("x").unwrap(), r.var("y").unwrap()]]).unwrap();
        let c = Complex::new(r.clone(), vec![1, 2], vec![d]).unwrap();
        let rep = be_acyclicity(&c).unwrap();
        assert_eq!(rep.grades, vec![Grade::Finite(0)]);
        assert!(!rep.acyclic);
        assert_eq!(rep.acyclic, c.zero_spherical());
        // 0 -> A: r_1 = 0, the unit ideal
        let c = Complex::new(r.clone(), vec![1, 0], vec![Matrix::zero(r.clone(), 1, 0)]).unwrap();
        let rep = be_acyclicity(&c).unwrap();
        assert_eq!(rep.grades, vec![Grade::Infinite]);
        assert!(rep.acyclic);
        assert_eq!(rep.acyclic, c.zero_spherical());
        let c = Complex::new(r.clone(), vec![1], vec![]).unwrap();
        assert!(be_acyclicity(&c).unwrap().acyclic);
    }
}
