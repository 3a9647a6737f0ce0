use super::matrix::Matrix;
use super::module::{kernel, FPModule};
use crate::arith::{Field, RingRef};
use crate::error::{Error, Result};
use crate::groebner::SubmoduleBasis;

/// `0 -> F_s -d_s-> ... -d_1-> F_0`, free of ranks `r_0..r_s`.
#[derive(Clone, Debug)]
pub struct Complex<F: Field> {
    ring: RingRef<F>,
    ranks: Vec<usize>,
    /// `diffs[k - 1]` is `d_k : F_k -> F_{k-1}`.
    diffs: Vec<Matrix<F>>,
}

impl<F: Field> Complex<F> {
    /// Validates shapes and `d_k d_{k+1} = 0`.
    pub fn new(ring: RingRef<F>, ranks: Vec<usize>, diffs: Vec<Matrix<F>>) -> Result<Self> {
        if ranks.is_empty() || diffs.len() + 1 != ranks.len() {
            return Err(Error::Dimension(format!(
                "{} ranks need {} differentials, got {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.rows() != ranks[k] || d.cols() != ranks[k + 1] {
                return Err(Error::Dimension(format!(
                    "d_{} has shape {}x{}, expected {}x{}",
                    k + 1,
                    d.rows(),
                    d.cols(),
                    ranks[k],
                    ranks[k + 1]
                )));
            }
            if !crate::arith::same_ring(d.ring(), &ring) {
                return Err(Error::RingMismatch(format!("d_{} lives in another ring", k + 1)));
            }
        }
        for k in 1..diffs.len() {
            if !diffs[k - 1].mul(&diffs[k])?.is_zero() {
                return Err(Error::Input(format!("d_{} d_{} is not zero", k, k + 1)));
            }
        }
        Ok(Complex { ring, ranks, diffs })
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    /// The top degree `s`.
    pub fn length(&self) -> usize {
        self.diffs.len()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, k: usize) -> usize {
        self.ranks[k]
    }

    /// `d_k` for `1 <= k <= s`.
    pub fn differential(&self, k: usize) -> &Matrix<F> {
        &self.diffs[k - 1]
    }

    pub fn differentials(&self) -> &[Matrix<F>] {
        &self.diffs
    }

    fn check_index(&self, k: usize) -> Result<()> {
        if k > self.length() {
            return Err(Error::OutOfRange(format!(
                "homology index {k} beyond length {}",
                self.length()
            )));
        }
        Ok(())
    }

    fn cycles(&self, k: usize) -> Vec<Vec<crate::arith::Poly<F>>> {
        if k == 0 {
            Matrix::identity(self.ring.clone(), self.ranks[0]).columns()
        } else {
            kernel(&self.diffs[k - 1])
        }
    }

    fn boundaries(&self, k: usize) -> SubmoduleBasis<F> {
        let gens = if k < self.length() {
            self.diffs[k].columns()
        } else {
            Vec::new()
        };
        SubmoduleBasis::new(self.ring.clone(), self.ranks[k], gens).expect("shapes validated")
    }

    /// Image of `d_1` inside `F_0`; `H_0 = F_0 / denominator`.
    pub fn h0_denominator(&self) -> SubmoduleBasis<F> {
        self.boundaries(0)
    }

    /// `H_k = 0`, decided as `ker d_k ⊆ im d_{k+1}`.
    pub fn homology_vanishes(&self, k: usize) -> Result<bool> {
        self.check_index(k)?;
        let im = self.boundaries(k);
        for z in self.cycles(k) {
            if !im.contains(&z)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Presentation of `ker d_k / im d_{k+1}` on the kernel generators.
    ///
    /// Relations are the syzygies of the kernel generators together with the
    /// coordinates of the image generators in them.
    pub fn homology(&self, k: usize) -> Result<FPModule<F>> {
        self.check_index(k)?;
        let z = self.cycles(k);
        let zb = SubmoduleBasis::new(self.ring.clone(), self.ranks[k], z.clone())?;
        let mut rels = zb.syzygies();
        for b in self.boundaries(k).generators() {
            let c = zb.express(b)?.expect("boundaries are cycles");
            rels.push(c);
        }
        FPModule::new(self.ring.clone(), z.len(), rels)
    }

    /// Homology vanishes in every positive degree.
    pub fn zero_spherical(&self) -> bool {
        (1..=self.length()).all(|k| self.homology_vanishes(k).expect("index in range"))
    }

    pub fn to_ring(&self, ring: &RingRef<F>) -> Result<Self> {
        let diffs = self.diffs.iter().map(|d| d.to_ring(ring)).collect::<Result<Vec<_>>>()?;
        Complex::new(ring.clone(), self.ranks.clone(), diffs)
    }
}
