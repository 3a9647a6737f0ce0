//! The JSON input document and the cube, complex and matrix formats shared
//! with emitted reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::arith::{Field, FieldKind, MonomialOrder, Poly, RingExt, RingRef};
use crate::cube::{self, subsets, Cube, Mask, Strategy};
use crate::error::{Error, Result};
use crate::koszul::RandomKoszulParams;
use crate::modcalc::{Complex, FPModule, Matrix};
use crate::resolve::ResolutionInput;

/// Row-major polynomial strings; rows index the target.
pub type Rows = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    /// `"Q"`.
    Named(String),
    Prime {
        #[serde(rename = "Fp")]
        p: u32,
    },
}

impl FieldSpec {
    pub fn kind(&self) -> Result<FieldKind> {
        match self {
            FieldSpec::Named(n) if n == "Q" => Ok(FieldKind::Rationals),
            FieldSpec::Named(n) => Err(Error::Input(format!("unknown field {n:?}; use \"Q\" or {{\"Fp\": p}}"))),
            FieldSpec::Prime { p } => {
                let k = FieldKind::Prime(*p);
                k.validate()?;
                Ok(k)
            }
        }
    }

    pub fn of(kind: FieldKind) -> Self {
        match kind {
            FieldKind::Rationals => FieldSpec::Named("Q".into()),
            FieldKind::Prime(p) => FieldSpec::Prime { p },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
}

impl RingSpec {
    pub fn order(&self) -> Result<Option<MonomialOrder>> {
        self.order
            .as_deref()
            .map(|o| MonomialOrder::parse(o).ok_or_else(|| Error::Input(format!("unknown monomial order {o:?}"))))
            .transpose()
    }

    pub fn of<F: Field>(ring: &RingRef<F>) -> Self {
        RingSpec {
            field: FieldSpec::of(ring.field()),
            vars: ring.vars().to_vec(),
            order: Some(ring.order().name().to_string()),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubeDoc {
    #[serde(rename = "S")]
    pub labels: Vec<String>,
    /// Subset key to rank.
    pub vertices: BTreeMap<String, usize>,
    /// Subset key to relation vectors; free vertices are omitted.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub relations: BTreeMap<String, Vec<Vec<String>>>,
    /// `"T|k"` to the matrix of `d^k_T`.
    #[serde(default)]
    pub boundaries: BTreeMap<String, Rows>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDoc {
    pub ranks: Vec<usize>,
    /// `d_1, .., d_s`.
    pub differentials: Vec<Rows>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct H0Doc {
    #[serde(rename = "T")]
    pub directions: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolveDoc {
    #[serde(rename = "U", default)]
    pub u: Vec<String>,
    /// `f_s` for every label of `U ∪ V`.
    pub sequence: BTreeMap<String, String>,
    pub targets: Vec<CubeDoc>,
    /// One map per consecutive pair of targets, keyed by subset.
    #[serde(default)]
    pub connecting: Vec<BTreeMap<String, Rows>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub ring: RingSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cube: Option<CubeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<Vec<String>>,
    /// The `g_i` of the factor check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cofactors: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Rows>,
    /// Minor size for `fitting`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h0: Option<H0Doc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strategy: Option<Strategy>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub random: Option<RandomKoszulParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolve: Option<ResolveDoc>,
}

impl Document {
    /// Parses JSON text; syntax errors carry line and column.
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            // serde_json reports 1-based lines and the column of the last byte read
            let pos = text
                .split_inclusive('\n')
                .take(e.line().saturating_sub(1))
                .map(str::len)
                .sum::<usize>()
                + e.column().saturating_sub(1);
            let full = e.to_string();
            let msg = full.split(" at line ").next().unwrap_or(&full);
            Error::Syntax {
                pos,
                msg: format!("line {}, column {}: {msg}", e.line(), e.column()),
            }
        })
    }
}

pub fn poly<F: Field>(ring: &RingRef<F>, text: &str, what: &str) -> Result<Poly<F>> {
    ring.parse(text).map_err(|e| match e {
        Error::Syntax { pos, msg } => Error::Syntax {
            pos,
            msg: format!("{msg} in {what} {text:?}"),
        },
        Error::UnknownVariable(v) => Error::UnknownVariable(format!("{v} in {what} {text:?}")),
        other => other,
    })
}

pub fn polys<F: Field>(ring: &RingRef<F>, texts: &[String], what: &str) -> Result<Vec<Poly<F>>> {
    texts
        .iter()
        .enumerate()
        .map(|(i, t)| poly(ring, t, &format!("{what}[{i}]")))
        .collect()
}

pub fn matrix<F: Field>(ring: &RingRef<F>, rows: usize, cols: usize, data: &Rows, what: &str) -> Result<Matrix<F>> {
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(Error::Dimension(format!("{what} must be {rows}x{cols}")));
    }
    let entries = data
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, t)| poly(ring, t, &format!("{what}[{i}][{j}]")))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::new(ring.clone(), rows, cols, entries)
}

/// A matrix whose width is read off its first row.
pub fn free_matrix<F: Field>(ring: &RingRef<F>, data: &Rows, what: &str) -> Result<Matrix<F>> {
    let cols = data
        .first()
        .map(|r| r.len())
        .ok_or_else(|| Error::Input(format!("{what} has no rows")))?;
    matrix(ring, data.len(), cols, data, what)
}

pub fn rows_of<F: Field>(m: &Matrix<F>) -> Rows {
    m.to_rows()
        .iter()
        .map(|r| r.iter().map(|p| p.to_string()).collect())
        .collect()
}

fn boundary_key(labels: &[String], t: Mask, k: usize) -> String {
    format!("{}|{}", cube::subset_key(labels, t), labels[k])
}

impl CubeDoc {
    pub fn to_cube<F: Field>(&self, ring: &RingRef<F>) -> Result<Cube<F>> {
        let labels = &self.labels;
        if labels.len() > cube::MAX_LABELS {
            return Err(Error::OutOfRange(format!(
                "{} labels exceed the limit of {}",
                labels.len(),
                cube::MAX_LABELS
            )));
        }
        for l in labels {
            if l.is_empty() || l.contains(',') || l.contains('|') {
                return Err(Error::InvalidCube(format!(
                    "label {l:?} is empty or contains ',' or '|'"
                )));
            }
        }
        let n = labels.len();
        let mut ranks: Vec<Option<usize>> = vec![None; 1 << n];
        for (key, &r) in &self.vertices {
            let t = cube::parse_key(labels, key)?;
            ranks[t as usize] = Some(r);
        }
        let ranks: Vec<usize> = subsets(n)
            .map(|t| {
                ranks[t as usize]
                    .ok_or_else(|| Error::InvalidCube(format!("missing vertex {:?}", cube::subset_key(labels, t))))
            })
            .collect::<Result<_>>()?;
        let mut vertices: Vec<FPModule<F>> = ranks.iter().map(|&r| FPModule::free(ring.clone(), r)).collect();
        for (key, rels) in &self.relations {
            let t = cube::parse_key(labels, key)?;
            let r = ranks[t as usize];
            let mut vecs = Vec::new();
            for (i, v) in rels.iter().enumerate() {
                if v.len() != r {
                    return Err(Error::Dimension(format!(
                        "relation {i} at {key:?} has length {} for rank {r}",
                        v.len()
                    )));
                }
                vecs.push(polys(ring, v, &format!("relations[{key:?}][{i}]"))?);
            }
            vertices[t as usize] = FPModule::new(ring.clone(), r, vecs)?;
        }
        let mut boundaries = BTreeMap::new();
        for (key, data) in &self.boundaries {
            let (tk, kk) = key
                .split_once('|')
                .ok_or_else(|| Error::Input(format!("boundary key {key:?} is not of the form \"T|k\"")))?;
            let t = cube::parse_key(labels, tk)?;
            let k = labels
                .iter()
                .position(|l| l == kk.trim())
                .ok_or_else(|| Error::Input(format!("unknown direction {kk:?} in boundary key {key:?}")))?;
            if t & (1 << k) == 0 {
                return Err(Error::InvalidCube(format!(
                    "boundary key {key:?}: {kk} is not in the subset"
                )));
            }
            let below = (t & !(1 << k)) as usize;
            let m = matrix(
                ring,
                ranks[below],
                ranks[t as usize],
                data,
                &format!("boundary {key:?}"),
            )?;
            boundaries.insert((t, k), m);
        }
        Cube::new(ring.clone(), labels.clone(), vertices, boundaries)
    }

    pub fn of<F: Field>(c: &Cube<F>) -> Self {
        let labels = c.labels().to_vec();
        let mut vertices = BTreeMap::new();
        let mut relations = BTreeMap::new();
        for t in subsets(c.dim()) {
            let key = c.key(t);
            let v = c.vertex(t);
            vertices.insert(key.clone(), v.rank());
            if !v.is_free() {
                let rels = v
                    .relations()
                    .generators()
                    .iter()
                    .map(|r| r.iter().map(|p| p.to_string()).collect())
                    .collect();
                relations.insert(key, rels);
            }
        }
        let boundaries = c
            .boundaries()
            .iter()
            .map(|(&(t, k), d)| (boundary_key(&labels, t, k), rows_of(d)))
            .collect();
        CubeDoc {
            labels,
            vertices,
            relations,
            boundaries,
        }
    }
}

impl ComplexDoc {
    pub fn to_complex<F: Field>(&self, ring: &RingRef<F>) -> Result<Complex<F>> {
        if self.ranks.is_empty() {
            return Err(Error::Input("a complex needs at least one rank".into()));
        }
        if self.differentials.len() + 1 != self.ranks.len() {
            return Err(Error::Dimension(format!(
                "{} differentials for {} ranks",
                self.differentials.len(),
                self.ranks.len()
            )));
        }
        let diffs = self
            .differentials
            .iter()
            .enumerate()
            .map(|(i, d)| matrix(ring, self.ranks[i], self.ranks[i + 1], d, &format!("d_{}", i + 1)))
            .collect::<Result<Vec<_>>>()?;
        Complex::new(ring.clone(), self.ranks.clone(), diffs)
    }

    pub fn of<F: Field>(c: &Complex<F>) -> Self {
        ComplexDoc {
            ranks: c.ranks().to_vec(),
            differentials: c.differentials().iter().map(rows_of).collect(),
        }
    }
}

impl ResolveDoc {
    pub fn to_input<F: Field>(&self, ring: &RingRef<F>) -> Result<ResolutionInput<F>> {
        let sequence = self
            .sequence
            .iter()
            .map(|(l, t)| Ok((l.clone(), poly(ring, t, &format!("sequence[{l:?}]"))?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let targets = self
            .targets
            .iter()
            .map(|c| c.to_cube(ring))
            .collect::<Result<Vec<_>>>()?;
        let first = targets.first().ok_or_else(|| Error::Input("no target".into()))?;
        let labels = first.labels().to_vec();
        let mut connecting = Vec::new();
        for (i, maps) in self.connecting.iter().enumerate() {
            let (src, tgt) = (
                targets
                    .get(i)
                    .ok_or_else(|| Error::Input(format!("connecting map {i} has no source")))?,
                targets
                    .get(i + 1)
                    .ok_or_else(|| Error::Input(format!("connecting map {i} has no target")))?,
            );
            let mut ms: Vec<Option<Matrix<F>>> = vec![None; 1 << labels.len()];
            for (key, data) in maps {
                let t = cube::parse_key(&labels, key)?;
                ms[t as usize] = Some(matrix(
                    ring,
                    tgt.rank(t),
                    src.rank(t),
                    data,
                    &format!("connecting[{i}][{key:?}]"),
                )?);
            }
            connecting.push(
                subsets(labels.len())
                    .map(|t| {
                        ms[t as usize].take().ok_or_else(|| {
                            Error::Input(format!("connecting map {i} misses {:?}", cube::subset_key(&labels, t)))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Ok(ResolutionInput {
            u: self.u.clone(),
            sequence,
            targets,
            connecting,
        })
    }
}

/// Vertex-wise maps keyed by subset.
pub fn vertex_maps<F: Field>(labels: &[String], maps: &[Matrix<F>]) -> BTreeMap<String, Rows> {
    subsets(labels.len())
        .map(|t| (cube::subset_key(labels, t), rows_of(&maps[t as usize])))
        .collect()
}
