use std::collections::BTreeMap;

use itertools::Itertools;

use super::subset::{insert_position, members, subsets, Mask};
use super::Cube;
use crate::arith::Field;
use crate::error::{Error, Result};
use crate::groebner::SubmoduleBasis;
use crate::modcalc::{self, FPModule, Matrix};

impl<F: Field> Cube<F> {
    fn check_direction(&self, k: usize) -> Result<()> {
        if k >= self.dim() {
            return Err(Error::OutOfRange(format!(
                "direction {k} outside {} labels",
                self.dim()
            )));
        }
        Ok(())
    }

    fn labels_without(&self, k: usize) -> Vec<String> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, l)| l.clone())
            .collect()
    }

    /// `H_0^k(x)`: at `T ⊆ S∖k` the cokernel of `d^k_{T∪k}`, on the ambient
    /// generators of `x_T`, with the boundaries of `x` acting on it.
    pub fn directional_h0(&self, k: usize) -> Result<Self> {
        self.check_direction(k)?;
        let n = self.dim() - 1;
        let mut vertices = Vec::with_capacity(1 << n);
        for t in subsets(n) {
            let big = insert_position(t, k);
            let v = self
                .vertex(big)
                .with_relations(self.boundary(big | (1 << k), k).columns())?;
            vertices.push(v);
        }
        let mut boundaries = BTreeMap::new();
        for t in subsets(n) {
            let big = insert_position(t, k);
            for j in members(t) {
                let bj = if j < k { j } else { j + 1 };
                boundaries.insert((t, j), self.boundary(big, bj).clone());
            }
        }
        Cube::new(self.ring.clone(), self.labels_without(k), vertices, boundaries)
    }

    /// `H_1^k(x)`: at `T ⊆ S∖k` the kernel of `d^k_{T∪k}`, presented on
    /// generators of the preimage of the target relations.
    pub fn directional_h1(&self, k: usize) -> Result<Self> {
        self.check_direction(k)?;
        let n = self.dim() - 1;
        // per vertex: kernel generators (vectors at x_{T∪k}) and the span used for coordinates
        let mut gens: Vec<Vec<Vec<crate::arith::Poly<F>>>> = Vec::with_capacity(1 << n);
        let mut vertices = Vec::with_capacity(1 << n);
        let mut spans = Vec::with_capacity(1 << n);
        for t in subsets(n) {
            let big = insert_position(t, k);
            let src = self.vertex(big | (1 << k));
            let tgt = self.vertex(big);
            let kgens = modcalc::preimage(self.boundary(big | (1 << k), k), tgt.relations())?;
            let mut cols = kgens.clone();
            cols.extend(src.relations().generators().iter().cloned());
            let span = SubmoduleBasis::new(self.ring.clone(), src.rank(), cols)?;
            let rels = span
                .syzygies()
                .into_iter()
                .map(|s| s[..kgens.len()].to_vec())
                .filter(|v| v.iter().any(|p| !p.is_zero()))
                .collect();
            vertices.push(FPModule::new(self.ring.clone(), kgens.len(), rels)?);
            gens.push(kgens);
            spans.push(span);
        }
        let mut boundaries = BTreeMap::new();
        for t in subsets(n) {
            let big = insert_position(t, k) | (1 << k);
            for j in members(t) {
                let bj = if j < k { j } else { j + 1 };
                let s = t & !(1 << j);
                let d = self.boundary(big, bj);
                let mut cols = Vec::with_capacity(gens[t as usize].len());
                for g in &gens[t as usize] {
                    let image = d.apply(g)?;
                    let c = spans[s as usize].express(&image)?.ok_or_else(|| {
                        Error::InvalidCube(format!(
                            "boundary {}|{} does not preserve kernels",
                            self.key(big),
                            self.labels[bj]
                        ))
                    })?;
                    cols.push(c[..gens[s as usize].len()].to_vec());
                }
                let m = Matrix::from_columns(self.ring.clone(), gens[s as usize].len(), cols)?;
                boundaries.insert((t, j), m);
            }
        }
        Cube::new(self.ring.clone(), self.labels_without(k), vertices, boundaries)
    }

    /// `H_0^{i_1}(H_0^{i_2}(... H_0^{i_r}(x)))` where `order = [i_1, .., i_r]`
    /// are label positions of `x`; the innermost cokernel is taken first.
    pub fn iterated_h0(&self, order: &[usize]) -> Result<Self> {
        if !order.iter().all_unique() {
            return Err(Error::Input("repeated direction in iterated homology".into()));
        }
        let mut cube = self.clone();
        for &i in order.iter().rev() {
            self.check_direction(i)?;
            let pos = cube.label_index(&self.labels[i])?;
            cube = cube.directional_h0(pos)?;
        }
        Ok(cube)
    }

    /// Iterated `H_0^T` for every ordering of `T`, after checking that
    /// `x|_T^V` is admissible for all `V`; returns the cube for the increasing
    /// order and whether every ordering produced identical denominators.
    pub fn iterated_h0_checked(&self, t: Mask, perm_cap: usize) -> Result<(Self, bool)> {
        let dirs: Vec<usize> = members(t).collect();
        if dirs.len() > perm_cap {
            return Err(Error::CapExceeded(format!(
                "{} directions exceed the permutation cap {perm_cap}",
                dirs.len()
            )));
        }
        if t & !self.full() != 0 {
            return Err(Error::OutOfRange("direction set outside the labels".into()));
        }
        let rest = self.full() & !t;
        for v in subsets(self.dim()).filter(|v| v & !rest == 0) {
            let face = self.restrict(t, v)?;
            if !face.admissibility(super::Strategy::Inductive).admissible {
                return Err(Error::Precondition(format!(
                    "restriction to {{{}}} along {{{}}} is not admissible",
                    self.key(t),
                    self.key(v)
                )));
            }
        }
        let base = self.iterated_h0(&dirs)?;
        let mut agree = true;
        for perm in dirs.iter().copied().permutations(dirs.len()).skip(1) {
            let other = self.iterated_h0(&perm)?;
            for (a, b) in base.vertices().iter().zip(other.vertices()) {
                if !a.same_denominator(b)? {
                    agree = false;
                }
            }
        }
        Ok((base, agree))
    }
}
