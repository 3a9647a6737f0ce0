use super::subset::{members, subsets, Mask};
use super::Cube;
use crate::arith::{Field, RingExt};
use crate::error::{Error, Result};
use crate::groebner::SubmoduleBasis;
use crate::modcalc::{self, Complex, Matrix};

/// Degree-wise data of the total complex; modules are `A^{ranks[k]} / relations[k]`.
pub(crate) struct TotData<F: Field> {
    pub ranks: Vec<usize>,
    pub relations: Vec<SubmoduleBasis<F>>,
    /// `diffs[k - 1] = d_k`.
    pub diffs: Vec<Matrix<F>>,
}

impl<F: Field> Cube<F> {
    /// Label positions in list order.
    pub fn default_ordering(&self) -> Vec<usize> {
        (0..self.dim()).collect()
    }

    fn check_ordering(&self, alpha: &[usize]) -> Result<()> {
        let mut seen = vec![false; self.dim()];
        if alpha.len() != self.dim() {
            return Err(Error::Input(format!(
                "ordering of length {} for {} labels",
                alpha.len(),
                self.dim()
            )));
        }
        for &a in alpha {
            if a >= self.dim() || seen[a] {
                return Err(Error::Input("ordering is not a bijection onto the labels".into()));
            }
            seen[a] = true;
        }
        Ok(())
    }

    /// Subsets of each size, ordered by their serialized keys.
    pub fn tot_components(&self) -> Vec<Vec<Mask>> {
        let mut out = vec![Vec::new(); self.dim() + 1];
        for t in subsets(self.dim()) {
            out[t.count_ones() as usize].push(t);
        }
        for level in &mut out {
            level.sort_by_key(|&t| self.key(t));
        }
        out
    }

    /// Sign of the component `x_T -> x_{T∖j}`: one factor `-1` per `t ∈ T` placed after `j`.
    fn tot_sign(position: &[usize], t: Mask, j: usize) -> bool {
        members(t).filter(|&s| position[s] > position[j]).count() % 2 == 1
    }

    pub(crate) fn tot_data(&self, alpha: &[usize]) -> Result<TotData<F>> {
        self.check_ordering(alpha)?;
        let mut position = vec![0; self.dim()];
        for (p, &l) in alpha.iter().enumerate() {
            position[l] = p;
        }
        let components = self.tot_components();
        let offsets: Vec<Vec<usize>> = components
            .iter()
            .map(|level| {
                level
                    .iter()
                    .scan(0, |acc, &t| {
                        let o = *acc;
                        *acc += self.rank(t);
                        Some(o)
                    })
                    .collect()
            })
            .collect();
        let ranks: Vec<usize> = components
            .iter()
            .map(|l| l.iter().map(|&t| self.rank(t)).sum())
            .collect();
        let relations = components
            .iter()
            .enumerate()
            .map(|(k, level)| {
                let mut gens = Vec::new();
                for (idx, &t) in level.iter().enumerate() {
                    for r in self.vertex(t).relations().generators() {
                        let mut v = vec![self.ring.zero(); ranks[k]];
                        for (i, p) in r.iter().enumerate() {
                            v[offsets[k][idx] + i] = p.clone();
                        }
                        gens.push(v);
                    }
                }
                SubmoduleBasis::new(self.ring.clone(), ranks[k], gens).expect("lengths")
            })
            .collect();
        let mut diffs = Vec::with_capacity(self.dim());
        for k in 1..=self.dim() {
            let mut m = Matrix::zero(self.ring.clone(), ranks[k - 1], ranks[k]);
            for (ci, &t) in components[k].iter().enumerate() {
                for j in members(t) {
                    let s = t & !(1 << j);
                    let ri = components[k - 1].iter().position(|&u| u == s).expect("face present");
                    let d = self.boundary(t, j);
                    let neg = Self::tot_sign(&position, t, j);
                    for a in 0..d.rows() {
                        for b in 0..d.cols() {
                            let e = d.get(a, b);
                            if !e.is_zero() {
                                m.set(
                                    offsets[k - 1][ri] + a,
                                    offsets[k][ci] + b,
                                    if neg { -e } else { e.clone() },
                                );
                            }
                        }
                    }
                }
            }
            diffs.push(m);
        }
        Ok(TotData {
            ranks,
            relations,
            diffs,
        })
    }

    /// `Tot_α x` for a free cube; `alpha[p]` is the label placed at position `p`.
    pub fn total_complex(&self, alpha: &[usize]) -> Result<Complex<F>> {
        if !self.is_free() {
            return Err(Error::Precondition(
                "the total complex is only formed for free cubes".into(),
            ));
        }
        self.require_valid()?;
        let data = self.tot_data(alpha)?;
        Complex::new(self.ring.clone(), data.ranks, data.diffs)
    }

    /// `H_k(Tot x) = 0`, computed on presentations so non-free cubes are allowed.
    pub fn tot_homology_vanishes(&self, k: usize) -> Result<bool> {
        Ok(self.tot_vanishing(&self.tot_data(&self.default_ordering())?, k))
    }

    pub(crate) fn tot_vanishing(&self, data: &TotData<F>, k: usize) -> bool {
        if k == 0 || k > self.dim() {
            return k > self.dim();
        }
        let cycles = modcalc::preimage(&data.diffs[k - 1], &data.relations[k - 1]).expect("shapes");
        let mut bounds = data.relations[k].clone();
        if k < self.dim() {
            bounds = bounds.with_generators(data.diffs[k].columns()).expect("lengths");
        }
        cycles.iter().all(|z| bounds.contains(z).expect("length"))
    }

    /// First positive degree with nonzero homology, if any.
    pub fn tot_first_nonzero_homology(&self, alpha: &[usize]) -> Result<Option<usize>> {
        let data = self.tot_data(alpha)?;
        Ok((1..=self.dim()).find(|&k| !self.tot_vanishing(&data, k)))
    }

    pub fn tot_zero_spherical(&self) -> bool {
        self.tot_first_nonzero_homology(&self.default_ordering())
            .expect("default ordering")
            .is_none()
    }

    /// Denominator of `H_0(Tot x)` inside the empty-set vertex.
    pub fn tot_h0_denominator(&self, alpha: &[usize]) -> Result<SubmoduleBasis<F>> {
        let data = self.tot_data(alpha)?;
        let mut den = data.relations[0].clone();
        if self.dim() > 0 {
            den = den.with_generators(data.diffs[0].columns())?;
        }
        Ok(den)
    }
}
