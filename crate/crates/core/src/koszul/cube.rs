use std::collections::BTreeMap;

use serde::Serialize;

use super::sequence::{is_a_sequence, SequenceReport};
use crate::arith::{Field, Poly, RingExt, RingRef};
use crate::cube::{members, subsets, Cube, Mask};
use crate::error::{Error, Result};
use crate::groebner::{IdealBasis, SubmoduleBasis};
use crate::modcalc::{self, FPModule, Matrix};

/// `Typ(f_S)` with labels `"1"..="n"`.
pub fn typical_cube<F: Field>(ring: &RingRef<F>, fs: &[Poly<F>]) -> Cube<F> {
    let labels = (1..=fs.len()).map(|i| i.to_string()).collect();
    typical_cube_with_labels(ring, labels, fs).expect("numeric labels are distinct")
}

/// Rank one everywhere; the boundary along `t` multiplies by `f_t`.
pub fn typical_cube_with_labels<F: Field>(ring: &RingRef<F>, labels: Vec<String>, fs: &[Poly<F>]) -> Result<Cube<F>> {
    if labels.len() != fs.len() {
        return Err(Error::Input(format!(
            "{} labels for {} polynomials",
            labels.len(),
            fs.len()
        )));
    }
    let n = fs.len();
    let mut boundaries = BTreeMap::new();
    for t in subsets(n) {
        for k in members(t) {
            boundaries.insert((t, k), Matrix::scalar(ring.clone(), 1, &fs[k]));
        }
    }
    Cube::free(ring.clone(), labels, &vec![1; 1 << n], boundaries)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundaryDiagnostic {
    pub subset: String,
    pub direction: String,
    pub injective: bool,
    /// `f_k` lies in the radical of the annihilator of the cokernel.
    pub supported: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(bound(serialize = ""))]
pub struct KoszulVerdict<F: Field> {
    pub is_koszul: bool,
    pub diagnostics: Vec<BoundaryDiagnostic>,
    /// Cokernels of injections between free modules have a length-one resolution.
    pub projective_dimension: &'static str,
    /// Filled in only for Koszul cubes.
    pub is_reduced: Option<bool>,
    pub determinant: Option<BTreeMap<String, Poly<F>>>,
    pub nondegenerate: Option<bool>,
    /// Filled in only for non-degenerate Koszul cubes.
    pub det_is_a_sequence: Option<bool>,
}

fn check_input<F: Field>(x: &Cube<F>, fs: &[Poly<F>]) -> Result<()> {
    if fs.len() != x.dim() {
        return Err(Error::Input(format!("{} polynomials for {} labels", fs.len(), x.dim())));
    }
    if !x.is_free() {
        return Err(Error::Precondition("Koszul cubes have free vertices".into()));
    }
    let report = x.validate();
    if !report.valid {
        return Err(Error::InvalidCube(report.violations.join("; ")));
    }
    Ok(())
}

/// `f ∈ √ann(coker d)`, using that the annihilator and the zeroth Fitting
/// ideal of a module have the same radical.
pub(crate) fn supported_on<F: Field>(f: &Poly<F>, d: &Matrix<F>) -> bool {
    if d.rows() == 0 {
        return true;
    }
    if d.cols() < d.rows() {
        return f.is_zero();
    }
    modcalc::fitting_ideal(d, d.rows())
        .expect("minor size in range")
        .radical_contains(f)
}

fn diagnostics<F: Field>(x: &Cube<F>, fs: &[Poly<F>]) -> Vec<BoundaryDiagnostic> {
    x.boundaries()
        .iter()
        .map(|(&(t, k), d)| {
            let injective = modcalc::is_injective(d);
            BoundaryDiagnostic {
                subset: x.key(t),
                direction: x.labels()[k].clone(),
                injective,
                supported: injective && supported_on(&fs[k], d),
            }
        })
        .collect()
}

/// Injective boundaries whose cokernels along `k` are supported on `V(f_k)`.
pub fn is_koszul_cube<F: Field>(x: &Cube<F>, fs: &[Poly<F>]) -> Result<KoszulVerdict<F>> {
    check_input(x, fs)?;
    let diagnostics = diagnostics(x, fs);
    Ok(KoszulVerdict {
        is_koszul: diagnostics.iter().all(|d| d.injective && d.supported),
        diagnostics,
        projective_dimension: "satisfied by construction",
        is_reduced: None,
        determinant: None,
        nondegenerate: None,
        det_is_a_sequence: None,
    })
}

/// [`is_koszul_cube`] followed, for Koszul cubes, by the reduced,
/// determinant and degeneracy checks.
pub fn koszul_analysis<F: Field>(x: &Cube<F>, fs: &[Poly<F>], perm_cap: usize) -> Result<KoszulVerdict<F>> {
    let mut v = is_koszul_cube(x, fs)?;
    if !v.is_koszul {
        return Ok(v);
    }
    v.is_reduced = Some(reduced_unchecked(x, fs));
    let det = determinant_unchecked(x)?;
    let nondegenerate = det.values().all(|d| !d.is_unit());
    if nondegenerate {
        let dets: Vec<Poly<F>> = x.labels().iter().map(|l| det[l].clone()).collect();
        v.det_is_a_sequence = Some(is_a_sequence(x.ring(), &dets, perm_cap)?.a_sequence == Some(true));
    }
    v.nondegenerate = Some(nondegenerate);
    v.determinant = Some(det);
    Ok(v)
}

fn require_koszul<F: Field>(x: &Cube<F>, fs: &[Poly<F>]) -> Result<()> {
    let v = is_koszul_cube(x, fs)?;
    match v.diagnostics.iter().find(|d| !(d.injective && d.supported)) {
        None => Ok(()),
        Some(d) => Err(Error::Precondition(format!(
            "not a Koszul cube: boundary {}|{} is {}",
            d.subset,
            d.direction,
            if d.injective {
                "not supported on the expected locus"
            } else {
                "not injective"
            }
        ))),
    }
}

fn reduced_unchecked<F: Field>(x: &Cube<F>, fs: &[Poly<F>]) -> bool {
    x.boundaries().iter().all(|(&(_, k), d)| {
        let cols = SubmoduleBasis::new(x.ring().clone(), d.rows(), d.columns()).expect("column length");
        (0..d.rows()).all(|i| {
            let mut v = vec![x.ring().zero(); d.rows()];
            v[i] = fs[k].clone();
            cols.contains(&v).expect("length")
        })
    })
}

/// `f_k` kills every cokernel along `k`.
pub fn is_reduced_koszul<F: Field>(x: &Cube<F>, fs: &[Poly<F>]) -> Result<bool> {
    require_koszul(x, fs)?;
    Ok(reduced_unchecked(x, fs))
}

fn determinant_unchecked<F: Field>(x: &Cube<F>) -> Result<BTreeMap<String, Poly<F>>> {
    let r = x.rank(0);
    if let Some(t) = subsets(x.dim()).find(|&t| x.rank(t) != r) {
        return Err(Error::Incoherent(format!(
            "vertex {{{}}} has rank {} against {r}",
            x.key(t),
            x.rank(t)
        )));
    }
    let full = x.full();
    let mut out = BTreeMap::new();
    for k in 0..x.dim() {
        let top = x.boundary(full, k).determinant()?;
        for t in subsets(x.dim()).filter(|t| t & (1 << k) != 0) {
            let here = x.boundary(t, k).determinant()?;
            let unit = here.div_exact(&top).is_some_and(|u| u.is_unit());
            if !unit {
                return Err(Error::Incoherent(format!(
                    "det d^{l}_{{{}}} = {here} is not a unit multiple of det d^{l}_S = {top}",
                    x.key(t),
                    l = x.labels()[k]
                )));
            }
        }
        out.insert(x.labels()[k].clone(), top);
    }
    Ok(out)
}

/// `det d^k_S` for every direction, after checking that every `det d^k_T`
/// differs from it by a unit.
pub fn determinant<F: Field>(x: &Cube<F>, fs: &[Poly<F>]) -> Result<BTreeMap<String, Poly<F>>> {
    require_koszul(x, fs)?;
    determinant_unchecked(x)
}

/// For a Koszul cube a direction is degenerate exactly when its determinant is a unit.
pub fn koszul_degenerate_directions<F: Field>(x: &Cube<F>, fs: &[Poly<F>]) -> Result<Mask> {
    let det = determinant(x, fs)?;
    Ok((0..x.dim())
        .filter(|&k| det[&x.labels()[k]].is_unit())
        .fold(0, |m, k| m | (1 << k)))
}

fn require_nondegenerate<F: Field>(x: &Cube<F>, fs: &[Poly<F>]) -> Result<Vec<Poly<F>>> {
    let det = determinant(x, fs)?;
    let dets: Vec<Poly<F>> = x.labels().iter().map(|l| det[l].clone()).collect();
    if let Some(k) = dets.iter().position(|d| d.is_unit()) {
        return Err(Error::Precondition(format!(
            "direction {} is degenerate",
            x.labels()[k]
        )));
    }
    Ok(dets)
}

/// The determinants, in label order, form an A-sequence.
pub fn det_is_a_sequence<F: Field>(x: &Cube<F>, fs: &[Poly<F>], perm_cap: usize) -> Result<SequenceReport<F>> {
    let dets = require_nondegenerate(x, fs)?;
    is_a_sequence(x.ring(), &dets, perm_cap)
}

#[derive(Clone, Debug, Serialize)]
#[serde(bound(serialize = ""))]
pub struct GeneratorsReport<F: Field> {
    /// `x_∅` modulo the images of the boundaries `d^k_{k}`.
    pub module: FPModule<F>,
    /// The same submodule as the denominator of `H_0(Tot x)`.
    pub matches_total_complex: bool,
    pub determinants: SequenceReport<F>,
}

pub fn generators_presentation<F: Field>(x: &Cube<F>, fs: &[Poly<F>], perm_cap: usize) -> Result<GeneratorsReport<F>> {
    let dets = require_nondegenerate(x, fs)?;
    let mut images = Vec::new();
    for k in 0..x.dim() {
        images.extend(x.boundary(1 << k, k).columns());
    }
    let relations = SubmoduleBasis::new(x.ring().clone(), x.rank(0), images)?;
    let tot = x.tot_h0_denominator(&x.default_ordering())?;
    Ok(GeneratorsReport {
        matches_total_complex: relations.equals(&tot)?,
        module: FPModule::from_relations(relations),
        determinants: is_a_sequence(x.ring(), &dets, perm_cap)?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightEntry {
    /// Directions `T` along which homology is taken.
    pub directions: String,
    /// Vertex `U` of `H_0^T(x)`, disjoint from `T`.
    pub vertex: String,
    pub supported: bool,
    pub spherical: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightReport {
    pub holds: bool,
    pub entries: Vec<WeightEntry>,
}

/// For each disjoint `(T, U)`: every `f_t`, `t ∈ T`, is in the radical of the
/// annihilator of `H_0^T(x)_U`, and `Tot(x|_T^U)` is 0-spherical.
pub fn verify_weight_decomposition<F: Field>(x: &Cube<F>, fs: &[Poly<F>]) -> Result<WeightReport> {
    require_koszul(x, fs)?;
    let n = x.dim();
    let mut entries = Vec::new();
    for t in subsets(n) {
        let dirs: Vec<usize> = members(t).collect();
        let h = x.iterated_h0(&dirs)?;
        for u in subsets(n).filter(|u| u & t == 0) {
            let names: Vec<&str> = members(u).map(|i| x.labels()[i].as_str()).collect();
            let module = h.vertex(h.mask_of(&names)?);
            let supported = dirs.is_empty() || {
                let ann: IdealBasis<F> = module.annihilator();
                dirs.iter().all(|&k| ann.radical_contains(&fs[k]))
            };
            let spherical = x.restrict(t, u)?.tot_zero_spherical();
            entries.push(WeightEntry {
                directions: x.key(t),
                vertex: x.key(u),
                supported,
                spherical,
            });
        }
    }
    Ok(WeightReport {
        holds: entries.iter().all(|e| e.supported && e.spherical),
        entries,
    })
}
