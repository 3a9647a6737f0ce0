//! Cubes over a finite label set `S`: a finitely presented module at every
//! subset `T ⊆ S` and a boundary `d^k_T : x_T -> x_{T∖k}` for each `k ∈ T`.
//!
//! Subsets are bitmasks over label positions. A cube whose vertices carry no
//! relations is called free; cokernel cubes keep the ambient ranks and
//! enlarge the relation sets.

mod admissible;
mod homology;
mod subset;
mod tot;

use std::collections::BTreeMap;

pub use admissible::{AdmissibilityReport, Strategy};
pub use subset::{members, subsets, Mask};

pub(crate) use subset::{key as subset_key, parse_key};

use crate::arith::{Field, RingRef};
use crate::error::{Error, Result};
use crate::modcalc::{self, FPModule, Matrix};

/// Most labels a cube may carry.
pub const MAX_LABELS: usize = 12;

#[derive(Clone, Debug)]
pub struct Cube<F: Field> {
    ring: RingRef<F>,
    labels: Vec<String>,
    vertices: Vec<FPModule<F>>,
    boundaries: BTreeMap<(Mask, usize), Matrix<F>>,
}

/// Outcome of [`Cube::validate`]; each violation is a human-readable line.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub violations: Vec<String>,
}

impl<F: Field> Cube<F> {
    /// Checks labels and shapes; commutativity is left to [`Cube::validate`].
    pub fn new(
        ring: RingRef<F>,
        labels: Vec<String>,
        vertices: Vec<FPModule<F>>,
        boundaries: BTreeMap<(Mask, usize), Matrix<F>>,
    ) -> Result<Self> {
        let n = labels.len();
        if n > MAX_LABELS {
            return Err(Error::OutOfRange(format!(
                "{n} labels exceed the limit of {MAX_LABELS}"
            )));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.contains(',') || l.contains('|') {
                return Err(Error::InvalidCube(format!(
                    "label {l:?} is empty or contains ',' or '|'"
                )));
            }
            if labels[..i].contains(l) {
                return Err(Error::InvalidCube(format!("label {l:?} repeated")));
            }
        }
        if vertices.len() != 1 << n {
            return Err(Error::InvalidCube(format!(
                "{} vertices for {n} labels",
                vertices.len()
            )));
        }
        let cube = Cube {
            ring,
            labels,
            vertices,
            boundaries,
        };
        for v in &cube.vertices {
            if !crate::arith::same_ring(v.ring(), &cube.ring) {
                return Err(Error::RingMismatch("vertex module over another ring".into()));
            }
        }
        for t in subsets(n) {
            for k in members(t) {
                let d = cube.boundaries.get(&(t, k)).ok_or_else(|| {
                    Error::InvalidCube(format!("missing boundary {}|{}", cube.key(t), cube.labels[k]))
                })?;
                let (rows, cols) = (cube.rank(t & !(1 << k)), cube.rank(t));
                if d.rows() != rows || d.cols() != cols {
                    return Err(Error::InvalidCube(format!(
                        "boundary {}|{} is {}x{}, expected {rows}x{cols}",
                        cube.key(t),
                        cube.labels[k],
                        d.rows(),
                        d.cols()
                    )));
                }
            }
        }
        let expected: usize = subsets(n).map(|t| t.count_ones() as usize).sum();
        if cube.boundaries.len() != expected {
            return Err(Error::InvalidCube("boundary entries outside the cube".into()));
        }
        Ok(cube)
    }

    /// A cube of free modules with the given ranks, indexed by mask.
    pub fn free(
        ring: RingRef<F>,
        labels: Vec<String>,
        ranks: &[usize],
        boundaries: BTreeMap<(Mask, usize), Matrix<F>>,
    ) -> Result<Self> {
        let vertices = ranks.iter().map(|&r| FPModule::free(ring.clone(), r)).collect();
        Self::new(ring, labels, vertices, boundaries)
    }

    /// The cube over the empty label set.
    pub fn point(module: FPModule<F>) -> Self {
        Cube {
            ring: module.ring().clone(),
            labels: Vec::new(),
            vertices: vec![module],
            boundaries: BTreeMap::new(),
        }
    }

    pub fn ring(&self) -> &RingRef<F> {
        &self.ring
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn full(&self) -> Mask {
        (1 << self.dim()) - 1
    }

    pub fn vertex(&self, t: Mask) -> &FPModule<F> {
        &self.vertices[t as usize]
    }

    pub fn vertices(&self) -> &[FPModule<F>] {
        &self.vertices
    }

    pub fn rank(&self, t: Mask) -> usize {
        self.vertices[t as usize].rank()
    }

    /// `d^k_T`; panics unless `k ∈ T`.
    pub fn boundary(&self, t: Mask, k: usize) -> &Matrix<F> {
        &self.boundaries[&(t, k)]
    }

    pub fn boundaries(&self) -> &BTreeMap<(Mask, usize), Matrix<F>> {
        &self.boundaries
    }

    pub fn is_free(&self) -> bool {
        self.vertices.iter().all(|v| v.is_free())
    }

    pub fn label_index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Input(format!("unknown label {label:?}")))
    }

    /// Sorted comma-joined labels; `""` is the empty set.
    pub fn key(&self, t: Mask) -> String {
        subset::key(&self.labels, t)
    }

    pub fn parse_key(&self, key: &str) -> Result<Mask> {
        subset::parse_key(&self.labels, key)
    }

    pub fn mask_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Mask> {
        let mut m = 0;
        for l in labels {
            m |= 1 << self.label_index(l.as_ref())?;
        }
        Ok(m)
    }

    /// Checks that boundaries respect relations and that every square commutes
    /// modulo the relations of its corner.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (&(t, k), d) in &self.boundaries {
            let tgt = t & !(1 << k);
            if !modcalc::is_well_defined(d, self.vertex(t), self.vertex(tgt)).expect("shapes checked") {
                violations.push(format!(
                    "boundary {}|{} does not respect the relations",
                    self.key(t),
                    self.labels[k]
                ));
            }
        }
        for t in subsets(self.dim()) {
            let ms: Vec<usize> = members(t).collect();
            for (a, &k) in ms.iter().enumerate() {
                for &l in &ms[a + 1..] {
                    let tk = t & !(1 << k);
                    let tl = t & !(1 << l);
                    let lhs = self.boundary(tk, l).mul(self.boundary(t, k)).expect("shapes");
                    let rhs = self.boundary(tl, k).mul(self.boundary(t, l)).expect("shapes");
                    let corner = self.vertex(t & !(1 << k) & !(1 << l));
                    let diff = lhs.sub(&rhs).expect("shapes");
                    let ok = diff
                        .columns()
                        .iter()
                        .all(|c| corner.is_zero_element(c).expect("length"));
                    if !ok {
                        violations.push(format!(
                            "square at {} in directions {},{} does not commute",
                            self.key(t),
                            self.labels[k],
                            self.labels[l]
                        ));
                    }
                }
            }
        }
        ValidationReport {
            valid: violations.is_empty(),
            violations,
        }
    }

    pub(crate) fn require_valid(&self) -> Result<()> {
        let r = self.validate();
        if r.valid {
            Ok(())
        } else {
            Err(Error::InvalidCube(r.violations.join("; ")))
        }
    }

    /// `x|_U^V`: the `U`-cube with vertex `x_{A ∪ V}` at `A ⊆ U`.
    pub fn restrict(&self, u: Mask, v: Mask) -> Result<Self> {
        if u & v != 0 {
            return Err(Error::InvalidCube("restriction sets overlap".into()));
        }
        if (u | v) & !self.full() != 0 {
            return Err(Error::OutOfRange("restriction sets leave the label set".into()));
        }
        let kept: Vec<usize> = members(u).collect();
        let labels = kept.iter().map(|&i| self.labels[i].clone()).collect();
        let lift = |a: Mask| -> Mask { members(a).fold(v, |acc, i| acc | (1 << kept[i])) };
        let vertices = subsets(kept.len()).map(|a| self.vertex(lift(a)).clone()).collect();
        let mut boundaries = BTreeMap::new();
        for a in subsets(kept.len()) {
            for i in members(a) {
                boundaries.insert((a, i), self.boundary(lift(a), kept[i]).clone());
            }
        }
        Ok(Cube {
            ring: self.ring.clone(),
            labels,
            vertices,
            boundaries,
        })
    }

    /// `x|_{S∖k}^{k}`.
    pub fn backside_face(&self, k: usize) -> Self {
        self.restrict(self.full() & !(1 << k), 1 << k).expect("disjoint")
    }

    /// `x|_{S∖k}^∅`.
    pub fn frontside_face(&self, k: usize) -> Self {
        self.restrict(self.full() & !(1 << k), 0).expect("disjoint")
    }

    /// Whether `d^k_T` is an isomorphism of the presented modules.
    pub fn boundary_is_iso(&self, t: Mask, k: usize) -> bool {
        let d = self.boundary(t, k);
        let (src, tgt) = (self.vertex(t), self.vertex(t & !(1 << k)));
        if src.is_free() && tgt.is_free() {
            return d.is_square() && d.determinant().expect("square").is_unit();
        }
        modcalc::is_injective_between(d, src, tgt).expect("shapes")
            && modcalc::is_surjective_onto(d, tgt).expect("shapes")
    }

    /// Directions along which every boundary is an isomorphism.
    pub fn degenerate_directions(&self) -> Mask {
        (0..self.dim())
            .filter(|&k| {
                subsets(self.dim())
                    .filter(|t| t & (1 << k) != 0)
                    .all(|t| self.boundary_is_iso(t, k))
            })
            .fold(0, |m, k| m | (1 << k))
    }

    /// `x|_N^∅` for the set `N` of non-degenerate directions.
    pub fn nondegenerate_part(&self) -> Self {
        self.restrict(self.full() & !self.degenerate_directions(), 0)
            .expect("disjoint")
    }

    /// No boundary is an isomorphism.
    pub fn is_nondegenerate(&self) -> bool {
        self.boundaries.keys().all(|&(t, k)| !self.boundary_is_iso(t, k))
    }

    /// Vertex-wise direct sum of two cubes on the same labels.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.labels != other.labels {
            return Err(Error::InvalidCube("direct sum of cubes with different labels".into()));
        }
        let vertices = self
            .vertices
            .iter()
            .zip(&other.vertices)
            .map(|(a, b)| {
                let ra = a.relation_matrix();
                let rb = b.relation_matrix();
                FPModule::cokernel(&ra.block_diag(&rb))
            })
            .collect();
        let boundaries = self
            .boundaries
            .iter()
            .map(|(key, d)| (*key, d.block_diag(&other.boundaries[key])))
            .collect();
        Cube::new(self.ring.clone(), self.labels.clone(), vertices, boundaries)
    }

    /// Adds a direction `label` along which the cube is constant with identity boundaries.
    pub fn pad_identity(&self, label: &str) -> Result<Self> {
        let n = self.dim();
        let mut labels = self.labels.clone();
        labels.push(label.to_string());
        let top = 1 << n;
        let mut vertices = self.vertices.clone();
        vertices.extend(self.vertices.iter().cloned());
        let mut boundaries = self.boundaries.clone();
        for (&(t, k), d) in &self.boundaries {
            boundaries.insert((t | top, k), d.clone());
        }
        for t in subsets(n) {
            boundaries.insert((t | top, n), Matrix::identity(self.ring.clone(), self.rank(t)));
        }
        Cube::new(self.ring.clone(), labels, vertices, boundaries)
    }

    /// Same data in another ring over the same variables.
    pub fn to_ring(&self, ring: &RingRef<F>) -> Result<Self> {
        let vertices = self
            .vertices
            .iter()
            .map(|v| v.to_ring(ring))
            .collect::<Result<Vec<_>>>()?;
        let boundaries = self
            .boundaries
            .iter()
            .map(|(k, d)| Ok((*k, d.to_ring(ring)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Cube::new(ring.clone(), self.labels.clone(), vertices, boundaries)
    }
}
