use super::matrix::Matrix;
use crate::arith::{Field, Poly, RingExt, RingRef};
use crate::error::{Error, Result};
use crate::groebner::{IdealBasis, SubmoduleBasis};

/// `A^rank / relations`.
#[derive(Clone, Debug)]
pub struct FPModule<F: Field> {
    relations: SubmoduleBasis<F>,
}

impl<F: Field> FPModule<F> {
    pub fn new(ring: RingRef<F>, rank: usize, relations: Vec<Vec<Poly<F>>>) -> Result<Self> {
        Ok(FPModule {
            relations: SubmoduleBasis::new(ring, rank, relations)?,
        })
    }

    pub fn free(ring: RingRef<F>, rank: usize) -> Self {
        FPModule {
            relations: SubmoduleBasis::zero(ring, rank),
        }
    }

    pub fn from_relations(relations: SubmoduleBasis<F>) -> Self {
        FPModule { relations }
    }

    /// `coker(m) = A^rows / (columns of m)`.
    pub fn cokernel(m: &Matrix<F>) -> Self {
        FPModule {
            relations: SubmoduleBasis::new(m.ring().clone(), m.rows(), m.columns()).expect("column lengths match"),
        }
    }

    pub fn ring(&self) -> &RingRef<F> {
        self.relations.ring()
    }

    /// Number of generators.
    pub fn rank(&self) -> usize {
        self.relations.rank()
    }

    /// The submodule of `A^rank` being divided out.
    pub fn relations(&self) -> &SubmoduleBasis<F> {
        &self.relations
    }

    pub fn relation_matrix(&self) -> Matrix<F> {
        Matrix::from_columns(self.ring().clone(), self.rank(), self.relations.generators().to_vec()).expect("lengths")
    }

    pub fn is_free(&self) -> bool {
        self.relations.is_zero()
    }

    /// Same generators, more relations.
    pub fn with_relations(&self, extra: Vec<Vec<Poly<F>>>) -> Result<Self> {
        Ok(FPModule {
            relations: self.relations.with_generators(extra)?,
        })
    }

    /// True iff every generator `e_i` reduces to zero modulo the relations.
    pub fn is_zero(&self) -> bool {
        self.relations.is_full()
    }

    /// Whether the class of `v` vanishes.
    pub fn is_zero_element(&self, v: &[Poly<F>]) -> Result<bool> {
        self.relations.contains(v)
    }

    /// `f * M = 0`.
    pub fn annihilated_by(&self, f: &Poly<F>) -> bool {
        (0..self.rank()).all(|i| {
            let mut e = vec![self.ring().zero(); self.rank()];
            e[i] = f.clone();
            self.relations.contains(&e).expect("length")
        })
    }

    /// `ann M = ∩_i (N : e_i)` where `N` is the relation module.
    pub fn annihilator(&self) -> IdealBasis<F> {
        let ring = self.ring().clone();
        let mut acc = IdealBasis::unit(ring.clone());
        for i in 0..self.rank() {
            let mut e = vec![ring.zero(); self.rank()];
            e[i] = ring.one();
            let mut cols = vec![e];
            cols.extend(self.relations.generators().iter().cloned());
            let syz = crate::groebner::syzygies(&ring, self.rank(), cols).expect("lengths");
            let q = IdealBasis::new(
                ring.clone(),
                syz.into_iter().map(|s| s[0].clone()).filter(|p| !p.is_zero()).collect(),
            )
            .expect("same ring");
            acc = if i == 0 {
                q
            } else {
                acc.intersect(&q).expect("same ring")
            };
        }
        acc
    }

    /// Equality of presentations with the same generators, i.e. of relation submodules.
    pub fn same_denominator(&self, other: &Self) -> Result<bool> {
        self.relations.equals(&other.relations)
    }

    pub fn to_ring(&self, ring: &RingRef<F>) -> Result<Self> {
        Ok(FPModule {
            relations: self.relations.to_ring(ring)?,
        })
    }
}

/// Columns generating the kernel of `m`.
pub fn kernel<F: Field>(m: &Matrix<F>) -> Vec<Vec<Poly<F>>> {
    crate::groebner::syzygies(m.ring(), m.rows(), m.columns()).expect("column lengths")
}

pub fn is_injective<F: Field>(m: &Matrix<F>) -> bool {
    kernel(m).iter().all(|v| v.iter().all(|p| p.is_zero()))
}

/// Generators of `{ v : m v ∈ q }`.
pub fn preimage<F: Field>(m: &Matrix<F>, q: &SubmoduleBasis<F>) -> Result<Vec<Vec<Poly<F>>>> {
    if q.rank() != m.rows() {
        return Err(Error::Dimension(format!(
            "map into rank {} against submodule of rank {}",
            m.rows(),
            q.rank()
        )));
    }
    let mut cols = m.columns();
    cols.extend(q.generators().iter().cloned());
    let syz = crate::groebner::syzygies(m.ring(), m.rows(), cols)?;
    let mut out: Vec<Vec<Poly<F>>> = syz
        .into_iter()
        .map(|s| s[..m.cols()].to_vec())
        .filter(|v| v.iter().any(|p| !p.is_zero()))
        .collect();
    out.dedup();
    Ok(out)
}

/// Whether `m` maps the relations of `src` into those of `tgt`.
pub fn is_well_defined<F: Field>(m: &Matrix<F>, src: &FPModule<F>, tgt: &FPModule<F>) -> Result<bool> {
    check_map(m, src, tgt)?;
    for r in src.relations().generators() {
        if !tgt.relations().contains(&m.apply(r)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Injectivity of the induced map `src -> tgt`: the preimage of the target relations lies in the source relations.
pub fn is_injective_between<F: Field>(m: &Matrix<F>, src: &FPModule<F>, tgt: &FPModule<F>) -> Result<bool> {
    check_map(m, src, tgt)?;
    for v in preimage(m, tgt.relations())? {
        if !src.relations().contains(&v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Surjectivity of `A^cols -> M`: the columns together with the relations span the ambient module.
pub fn is_surjective_onto<F: Field>(p: &Matrix<F>, m: &FPModule<F>) -> Result<bool> {
    if p.rows() != m.rank() {
        return Err(Error::Dimension(format!(
            "map into rank {} against module on {} generators",
            p.rows(),
            m.rank()
        )));
    }
    Ok(m.relations().with_generators(p.columns())?.is_full())
}

fn check_map<F: Field>(m: &Matrix<F>, src: &FPModule<F>, tgt: &FPModule<F>) -> Result<()> {
    if m.cols() != src.rank() || m.rows() != tgt.rank() {
        return Err(Error::Dimension(format!(
            "{}x{} matrix between modules on {} and {} generators",
            m.rows(),
            m.cols(),
            src.rank(),
            tgt.rank()
        )));
    }
    Ok(())
}

/// Finds `g` with `p g ≡ f` modulo the relations of `m`, column by column from membership certificates.
pub fn lift_through_surjection<F: Field>(f: &Matrix<F>, p: &Matrix<F>, m: &FPModule<F>) -> Result<Matrix<F>> {
    if f.rows() != m.rank() {
        return Err(Error::Dimension(format!(
            "map into rank {} against module on {} generators",
            f.rows(),
            m.rank()
        )));
    }
    if !is_surjective_onto(p, m)? {
        return Err(Error::Precondition("the map to lift through is not surjective".into()));
    }
    let mut gens = p.columns();
    gens.extend(m.relations().generators().iter().cloned());
    let span = SubmoduleBasis::new(p.ring().clone(), p.rows(), gens)?;
    let mut cols = Vec::with_capacity(f.cols());
    for (j, col) in f.columns().into_iter().enumerate() {
        let c = span
            .express(&col)?
            .ok_or_else(|| Error::LiftInfeasible(format!("column {j} is not in the image")))?;
        cols.push(c[..p.cols()].to_vec());
    }
    let g = Matrix::from_columns(p.ring().clone(), p.cols(), cols)?;
    let diff = p.mul(&g)?.sub(f)?;
    debug_assert!(diff.columns().iter().all(|c| m.relations().contains(c).unwrap()));
    Ok(g)
}

/// Least `e <= cap` with `f^e M = 0`.
pub fn min_annihilating_power<F: Field>(f: &Poly<F>, m: &FPModule<F>, cap: u32) -> Result<u32> {
    if cap < 1 {
        return Err(Error::OutOfRange("the exponent cap must be at least 1".into()));
    }
    if m.is_zero() {
        return Ok(0);
    }
    let mut power = f.clone();
    for e in 1..=cap {
        if m.annihilated_by(&power) {
            return Ok(e);
        }
        power = &power * f;
    }
    Err(Error::CapExceeded(format!(
        "no power of {f} up to {cap} annihilates the module"
    )))
}

/// The ideal of `t x t` minors.
pub fn fitting_ideal<F: Field>(m: &Matrix<F>, t: usize) -> Result<IdealBasis<F>> {
    let bound = m.rows().min(m.cols());
    if t == 0 || t > bound {
        return Err(Error::OutOfRange(format!("minor size {t} outside 1..={bound}")));
    }
    IdealBasis::new(m.ring().clone(), m.minors(t))
}

/// Serialized as the number of generators and the relation vectors.
impl<F: Field> serde::Serialize for FPModule<F> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FPModule", 2)?;
        st.serialize_field("rank", &self.rank())?;
        st.serialize_field("relations", self.relations.generators())?;
        st.end()
    }
}
