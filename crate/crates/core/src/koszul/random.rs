use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::cube::{is_koszul_cube, typical_cube};
use super::sequence::is_a_sequence;
use crate::arith::{Field, Monomial, Poly, RingRef};
use crate::cube::{members, subsets, Cube, Mask};
use crate::error::{Error, Result};
use crate::modcalc::Matrix;

pub const MAX_SUMMANDS: usize = 8;
pub const MAX_STEPS: usize = 100;
pub const MAX_DEGREE: u32 = 4;
pub const MAX_EXPONENT: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RandomKoszulParams {
    /// Typical cubes in the direct sum; every vertex has this rank.
    pub summands: usize,
    /// Elementary base changes applied at random vertices.
    pub steps: usize,
    /// Degree bound of the polynomial in a row operation.
    pub max_degree: u32,
    /// Each summand uses `f_s^e` with `1 <= e <= max_exponent`.
    pub max_exponent: u32,
}

impl Default for RandomKoszulParams {
    fn default() -> Self {
        RandomKoszulParams {
            summands: 1,
            steps: 0,
            max_degree: 2,
            max_exponent: 1,
        }
    }
}

impl RandomKoszulParams {
    fn check(&self) -> Result<()> {
        let over =
            |what: &str, v: u64, cap: u64| Err(Error::CapExceeded(format!("{what} = {v} exceeds the cap {cap}")));
        if self.summands == 0 {
            return Err(Error::OutOfRange("at least one summand is needed".into()));
        }
        if self.max_exponent == 0 {
            return Err(Error::OutOfRange("exponents start at 1".into()));
        }
        if self.summands > MAX_SUMMANDS {
            return over("summands", self.summands as u64, MAX_SUMMANDS as u64);
        }
        if self.steps > MAX_STEPS {
            return over("steps", self.steps as u64, MAX_STEPS as u64);
        }
        if self.max_degree > MAX_DEGREE {
            return over("max_degree", self.max_degree as u64, MAX_DEGREE as u64);
        }
        if self.max_exponent > MAX_EXPONENT {
            return over("max_exponent", self.max_exponent as u64, MAX_EXPONENT as u64);
        }
        Ok(())
    }
}

fn random_constant<F: Field>(ring: &RingRef<F>, rng: &mut ChaCha8Rng) -> F {
    loop {
        let c = ring.coeff(rng.gen_range(-3..=3));
        if !c.is_zero() {
            return c;
        }
    }
}

fn random_poly<F: Field>(ring: &RingRef<F>, max_degree: u32, rng: &mut ChaCha8Rng) -> Poly<F> {
    let n = ring.nvars();
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(1..=2) {
        let mut exps = vec![0u32; n];
        if n > 0 {
            for _ in 0..rng.gen_range(0..=max_degree) {
                exps[rng.gen_range(0..n)] += 1;
            }
        }
        terms.push((Monomial::from_exps(&exps), random_constant(ring, rng)));
    }
    Poly::from_terms(ring.clone(), terms)
}

/// An elementary matrix and its inverse.
fn elementary<F: Field>(
    ring: &RingRef<F>,
    rank: usize,
    max_degree: u32,
    rng: &mut ChaCha8Rng,
) -> (Matrix<F>, Matrix<F>) {
    let mut p = Matrix::identity(ring.clone(), rank);
    let mut q = Matrix::identity(ring.clone(), rank);
    if rank > 1 && rng.gen_bool(0.75) {
        let i = rng.gen_range(0..rank);
        let j = (i + rng.gen_range(1..rank)) % rank;
        let c = random_poly(ring, max_degree, rng);
        q.set(i, j, -&c);
        p.set(i, j, c);
    } else {
        let i = rng.gen_range(0..rank);
        let c = random_constant(ring, rng);
        q.set(i, i, Poly::constant(ring.clone(), c.inv()));
        p.set(i, i, Poly::constant(ring.clone(), c));
    }
    (p, q)
}

/// A Koszul cube for `fs`: a direct sum of `Typ(f^e)` followed by random
/// vertex-wise base changes `d ↦ P_{T∖k} d P_T^{-1}`.
pub fn random_koszul<F: Field>(
    ring: &RingRef<F>,
    fs: &[Poly<F>],
    params: RandomKoszulParams,
    seed: u64,
) -> Result<Cube<F>> {
    params.check()?;
    let seq = is_a_sequence(ring, fs, super::DEFAULT_PERM_CAP)?;
    if seq.a_sequence != Some(true) {
        return Err(Error::Precondition("the sequence is not an A-sequence".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = fs.len();
    let mut cube: Option<Cube<F>> = None;
    for _ in 0..params.summands {
        let powered: Vec<Poly<F>> = fs
            .iter()
            .map(|f| f.pow(rng.gen_range(1..=params.max_exponent)))
            .collect();
        let typ = typical_cube(ring, &powered);
        cube = Some(match cube {
            None => typ,
            Some(c) => c.direct_sum(&typ)?,
        });
    }
    let cube = cube.expect("at least one summand");
    let mut boundaries: BTreeMap<(Mask, usize), Matrix<F>> = cube.boundaries().clone();
    let rank = params.summands;
    for _ in 0..params.steps {
        let t: Mask = rng.gen_range(0..(1u32 << n));
        let (p, p_inv) = elementary(ring, rank, params.max_degree, &mut rng);
        for k in members(t) {
            let d = boundaries.get_mut(&(t, k)).expect("present");
            *d = d.mul(&p_inv)?;
        }
        for k in (0..n).filter(|k| t & (1 << k) == 0) {
            let d = boundaries.get_mut(&(t | (1 << k), k)).expect("present");
            *d = p.mul(d)?;
        }
    }
    let labels = cube.labels().to_vec();
    let out = Cube::free(ring.clone(), labels, &vec![rank; 1 << n], boundaries)?;
    let report = out.validate();
    if !report.valid {
        return Err(Error::Incoherent(format!(
            "generated cube is invalid: {}",
            report.violations.join("; ")
        )));
    }
    if !is_koszul_cube(&out, fs)?.is_koszul {
        return Err(Error::Incoherent("generated cube is not Koszul".into()));
    }
    debug_assert!(subsets(n).all(|t| out.rank(t) == rank));
    Ok(out)
}
