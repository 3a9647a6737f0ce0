use serde::{Deserialize, Serialize};

use super::subset::subsets;
use super::Cube;
use crate::arith::Field;
use crate::modcalc;

/// How admissibility is decided; all three give the same verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Injective boundaries and, recursively, admissible `H_0^k` cubes.
    Definition,
    /// `Tot` of every restriction `x|_U^V` is 0-spherical.
    SphericalFaces,
    /// Both faces along the first label, injectivity along it, and its `H_0`.
    Inductive,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Definition, Strategy::SphericalFaces, Strategy::Inductive];

    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Definition => "definition",
            Strategy::SphericalFaces => "spherical_faces",
            Strategy::Inductive => "inductive",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|x| x.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdmissibilityReport {
    pub strategy: Strategy,
    pub admissible: bool,
    /// First obstruction found, when not admissible.
    pub reason: Option<String>,
}

impl<F: Field> Cube<F> {
    pub fn admissibility(&self, strategy: Strategy) -> AdmissibilityReport {
        let reason = match strategy {
            Strategy::Definition => self.obstruction_by_definition(),
            Strategy::SphericalFaces => self.obstruction_by_spheres(),
            Strategy::Inductive => self.obstruction_by_induction(),
        };
        AdmissibilityReport {
            strategy,
            admissible: reason.is_none(),
            reason,
        }
    }

    pub fn is_admissible(&self) -> bool {
        self.obstruction_by_induction().is_none()
    }

    fn boundary_is_mono(&self, t: super::Mask, k: usize) -> bool {
        modcalc::is_injective_between(self.boundary(t, k), self.vertex(t), self.vertex(t & !(1 << k)))
            .expect("shapes checked")
    }

    fn non_mono_reason(&self, t: super::Mask, k: usize) -> String {
        format!("boundary {}|{} is not injective", self.key(t), self.labels[k])
    }

    fn obstruction_by_definition(&self) -> Option<String> {
        for &(t, k) in self.boundaries.keys() {
            if !self.boundary_is_mono(t, k) {
                return Some(self.non_mono_reason(t, k));
            }
        }
        if self.dim() < 2 {
            return None;
        }
        for k in 0..self.dim() {
            let h = self.directional_h0(k).expect("direction in range");
            if let Some(r) = h.obstruction_by_definition() {
                return Some(format!("in H_0 along {}: {r}", self.labels[k]));
            }
        }
        None
    }

    fn obstruction_by_spheres(&self) -> Option<String> {
        let n = self.dim();
        let mut pairs: Vec<(super::Mask, super::Mask)> = Vec::new();
        for u in subsets(n).filter(|&u| u != 0) {
            for v in subsets(n).filter(|&v| v & u == 0) {
                pairs.push((u, v));
            }
        }
        pairs.sort_by_key(|&(u, v)| (u.count_ones(), u, v));
        for (u, v) in pairs {
            let face = self.restrict(u, v).expect("disjoint");
            let data = face.tot_data(&face.default_ordering()).expect("default ordering");
            if let Some(k) = (1..=face.dim()).find(|&k| !face.tot_vanishing(&data, k)) {
                return Some(format!(
                    "H_{k} of the total complex of the restriction to {{{}}} along {{{}}} is nonzero",
                    self.key(u),
                    self.key(v)
                ));
            }
        }
        None
    }

    fn obstruction_by_induction(&self) -> Option<String> {
        if self.dim() == 0 {
            return None;
        }
        let s = 0;
        for t in subsets(self.dim()).filter(|t| t & (1 << s) != 0) {
            if !self.boundary_is_mono(t, s) {
                return Some(self.non_mono_reason(t, s));
            }
        }
        if self.dim() == 1 {
            return None;
        }
        for (name, face) in [
            ("backside", self.backside_face(s)),
            ("frontside", self.frontside_face(s)),
        ] {
            if let Some(r) = face.obstruction_by_induction() {
                return Some(format!("{name} face along {}: {r}", self.labels[s]));
            }
        }
        let h = self.directional_h0(s).expect("direction in range");
        h.obstruction_by_induction()
            .map(|r| format!("in H_0 along {}: {r}", self.labels[s]))
    }

    /// Boundaries along `k` that fail to be injective, as `(T, k)` keys.
    pub fn non_injective_boundaries(&self) -> Vec<(String, String)> {
        self.boundaries
            .keys()
            .filter(|&&(t, k)| !self.boundary_is_mono(t, k))
            .map(|&(t, k)| (self.key(t), self.labels[k].clone()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{ring, scalar_cube};
    use super::*;

    fn verdicts<F: Field>(c: &Cube<F>) -> Vec<bool> {
        Strategy::ALL.iter().map(|&s| c.admissibility(s).admissible).collect()
    }

    #[test]
    fn koszul_cubes_are_admissible() {
        let r = ring(&["x", "y", "z"]);
        assert_eq!(verdicts(&scalar_cube(&r, &["x", "y"])), vec![true; 3]);
        assert_eq!(verdicts(&scalar_cube(&r, &["x", "y", "z"])), vec![true; 3]);
        assert_eq!(verdicts(&scalar_cube(&r, &[])), vec![true; 3]);
    }

    #[test]
    fn zero_boundary_is_not() {
        let r = ring(&["x"]);
        let c = scalar_cube(&r, &["0"]);
        for s in Strategy::ALL {
            let rep = c.admissibility(s);
            assert!(!rep.admissible);
            assert!(rep.reason.is_some());
        }
    }

    #[test]
    fn doubled_square_is_not() {
        let r = ring(&["x", "y"]);
        let c = scalar_cube(&r, &["x", "x"]);
        assert!(c.non_injective_boundaries().is_empty());
        assert_eq!(verdicts(&c), vec![false; 3]);
        assert!(c.backside_face(0).is_admissible() && c.frontside_face(1).is_admissible());
        let rep = c.admissibility(Strategy::SphericalFaces);
        assert!(rep.reason.unwrap().starts_with("H_1"));
    }

    #[test]
    fn non_regular_pairs() {
        let r = ring(&["x", "y", "z"]);
        // (x*y, x*z) shares the factor x
        assert_eq!(verdicts(&scalar_cube(&r, &["x*y", "x*z"])), vec![false; 3]);
        assert_eq!(
            verdicts(&scalar_cube(&r, &["x", "y*(1 - x)", "z*(1 - x)"])),
            vec![false; 3]
        );
        assert_eq!(verdicts(&scalar_cube(&r, &["x^2", "y^3"])), vec![true; 3]);
    }

    #[test]
    fn identity_padding_keeps_admissibility() {
        let r = ring(&["x", "y"]);
        let c = scalar_cube(&r, &["x", "y"]).pad_identity("p").unwrap();
        assert_eq!(verdicts(&c), vec![true; 3]);
    }

    #[test]
    fn strategy_names() {
        for s in Strategy::ALL {
            assert_eq!(Strategy::parse(s.name()), Some(s));
        }
        assert_eq!(Strategy::parse("other"), None);
    }
}
