//! Resolutions of cubes by direct sums of typical cubes over `B = A/g_U`.
//!
//! A target is a `V`-cube of finitely presented modules, optionally followed
//! by a second one and a connecting morphism. The output cube `y` has rank
//! `L` at every vertex, relations `g_u e_j` for `u ∈ U`, and diagonal
//! boundaries: summand `j` of type `W ⊆ V` carries `g_v` along `v ∈ W` and
//! `1` along the other directions.

mod check;

use std::collections::BTreeMap;

use crate::arith::{Field, Poly, RingExt, RingRef};
use crate::cube::{members, subsets, Cube, Mask};
use crate::error::{Error, Result};
use crate::groebner::SubmoduleBasis;
use crate::modcalc::{self, FPModule, Matrix};

pub use check::{check_resolution, ResolutionCheck};

/// Most directions in `V`.
pub const MAX_DIRECTIONS: usize = 2;
/// Most targets in a chain `z(0) -> .. -> z(n)`, that is `n + 1`.
pub const MAX_CHAIN: usize = 2;

#[derive(Clone, Debug)]
pub struct ResolutionInput<F: Field> {
    /// Labels of `U`, along which the targets are only annihilated.
    pub u: Vec<String>,
    /// `f_s` for every `s ∈ U ∪ V`.
    pub sequence: BTreeMap<String, Poly<F>>,
    /// `z(0), .., z(n)`, all on the labels `V`.
    pub targets: Vec<Cube<F>>,
    /// `connecting[i][T] : z(i)_T -> z(i+1)_T`, indexed by vertex mask.
    pub connecting: Vec<Vec<Matrix<F>>>,
}

impl<F: Field> ResolutionInput<F> {
    /// A single module with `V = ∅`.
    pub fn module(u: Vec<String>, sequence: BTreeMap<String, Poly<F>>, z: FPModule<F>) -> Self {
        ResolutionInput {
            u,
            sequence,
            targets: vec![Cube::point(z)],
            connecting: Vec::new(),
        }
    }

    /// A single cube.
    pub fn cube(u: Vec<String>, sequence: BTreeMap<String, Poly<F>>, z: Cube<F>) -> Self {
        ResolutionInput {
            u,
            sequence,
            targets: vec![z],
            connecting: Vec::new(),
        }
    }

    pub fn ring(&self) -> &RingRef<F> {
        self.targets[0].ring()
    }

    pub fn v(&self) -> &[String] {
        self.targets[0].labels()
    }

    fn f(&self, label: &str) -> &Poly<F> {
        &self.sequence[label]
    }

    /// Shapes, label sets, caps, commutativity and injectivity of the boundaries.
    pub fn check(&self) -> Result<()> {
        if self.targets.is_empty() {
            return Err(Error::Input("no target".into()));
        }
        if self.targets.len() > MAX_CHAIN {
            return Err(Error::Precondition(format!(
                "chains of {} targets exceed the limit of {MAX_CHAIN}",
                self.targets.len()
            )));
        }
        if self.connecting.len() + 1 != self.targets.len() {
            return Err(Error::Input(format!(
                "{} connecting maps for {} targets",
                self.connecting.len(),
                self.targets.len()
            )));
        }
        let v = self.v();
        if v.len() > MAX_DIRECTIONS {
            return Err(Error::Precondition(format!(
                "{} directions exceed the limit of {MAX_DIRECTIONS}",
                v.len()
            )));
        }
        for (i, u) in self.u.iter().enumerate() {
            if v.contains(u) || self.u[..i].contains(u) {
                return Err(Error::Input(format!("label {u:?} repeated across U and V")));
            }
        }
        for s in self.u.iter().chain(v) {
            if !self.sequence.contains_key(s) {
                return Err(Error::Input(format!("no polynomial for label {s:?}")));
            }
        }
        if let Some(s) = self.sequence.keys().find(|s| !self.u.contains(s) && !v.contains(s)) {
            return Err(Error::Input(format!("polynomial for unknown label {s:?}")));
        }
        for (j, z) in self.targets.iter().enumerate() {
            if z.labels() != v {
                return Err(Error::Input(format!("target {j} is not on the labels of target 0")));
            }
            let report = z.validate();
            if !report.valid {
                return Err(Error::InvalidCube(format!(
                    "target {j}: {}",
                    report.violations.join("; ")
                )));
            }
            if let Some((t, k)) = z.non_injective_boundaries().first() {
                return Err(Error::Precondition(format!(
                    "target {j}: boundary {t}|{k} is not injective"
                )));
            }
        }
        for (i, maps) in self.connecting.iter().enumerate() {
            let (src, tgt) = (&self.targets[i], &self.targets[i + 1]);
            if maps.len() != 1 << v.len() {
                return Err(Error::Input(format!(
                    "connecting map {i} has {} components",
                    maps.len()
                )));
            }
            for t in subsets(v.len()) {
                if !modcalc::is_well_defined(&maps[t as usize], src.vertex(t), tgt.vertex(t))? {
                    return Err(Error::Input(format!(
                        "connecting map {i} is not well defined at {{{}}}",
                        src.key(t)
                    )));
                }
                for k in members(t) {
                    let left = tgt.boundary(t, k).mul(&maps[t as usize])?;
                    let right = maps[(t & !(1 << k)) as usize].mul(src.boundary(t, k))?;
                    if !congruent(&left, &right, tgt.vertex(t & !(1 << k)))? {
                        return Err(Error::Input(format!(
                            "connecting map {i} does not commute with {}|{}",
                            src.key(t),
                            v[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Columns of `a - b` lie in the relations of `m`.
pub(crate) fn congruent<F: Field>(a: &Matrix<F>, b: &Matrix<F>, m: &FPModule<F>) -> Result<bool> {
    for c in a.sub(b)?.columns() {
        if !m.relations().contains(&c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Least exponents: `f_u^{m_u}` kills every vertex and `f_v^{m_v}` kills
/// `H_0(Tot z(j))`, for every target.
pub fn find_exponents<F: Field>(input: &ResolutionInput<F>, cap: u32) -> Result<BTreeMap<String, u32>> {
    input.check()?;
    let mut out = BTreeMap::new();
    for u in &input.u {
        let mut m = 0;
        for z in &input.targets {
            for vertex in z.vertices() {
                m = m.max(modcalc::min_annihilating_power(input.f(u), vertex, cap)?);
            }
        }
        out.insert(u.clone(), m);
    }
    for v in input.v() {
        let mut m = 0;
        for z in &input.targets {
            let h0 = FPModule::from_relations(z.tot_h0_denominator(&z.default_ordering())?);
            m = m.max(modcalc::min_annihilating_power(input.f(v), &h0, cap)?);
        }
        out.insert(v.clone(), m);
    }
    Ok(out)
}

/// Lowering any positive exponent by one loses the annihilation property.
pub fn exponents_are_minimal<F: Field>(input: &ResolutionInput<F>, exponents: &BTreeMap<String, u32>) -> Result<bool> {
    for (s, &m) in exponents {
        if m == 0 {
            continue;
        }
        let lower = input.sequence[s].pow(m - 1);
        let still = if input.u.contains(s) {
            input
                .targets
                .iter()
                .all(|z| z.vertices().iter().all(|x| x.annihilated_by(&lower)))
        } else {
            let mut all = true;
            for z in &input.targets {
                let h0 = FPModule::from_relations(z.tot_h0_denominator(&z.default_ordering())?);
                all &= h0.annihilated_by(&lower);
            }
            all
        };
        if still {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exponents driving the construction: for `v ∈ V` also large enough to kill
/// every vertex of `H_0^v(z(j))`, which the lifting step divides by.
fn construction_exponents<F: Field>(
    input: &ResolutionInput<F>,
    exponents: &BTreeMap<String, u32>,
    cap: u32,
) -> Result<BTreeMap<String, u32>> {
    let mut out = exponents.clone();
    for (k, v) in input.v().iter().enumerate() {
        let mut m = exponents[v];
        for z in &input.targets {
            let h = z.directional_h0(k)?;
            for vertex in h.vertices() {
                m = m.max(modcalc::min_annihilating_power(input.f(v), vertex, cap)?);
            }
        }
        out.insert(v.clone(), m);
    }
    Ok(out)
}

/// One resolved target: `y(i)` with its summand types and the epimorphism onto `z(i)`.
#[derive(Clone, Debug)]
pub struct Stage<F: Field> {
    pub cube: Cube<F>,
    /// Type `W ⊆ V` of each summand `Typ_B(g^W_V)`, as a mask over `V`.
    pub summands: Vec<Mask>,
    /// `epimorphism[T] : y_T -> z_T`.
    pub epimorphism: Vec<Matrix<F>>,
}

impl<F: Field> Stage<F> {
    /// `l_T`: number of summands of type `T`, for every `T ⊆ V`.
    pub fn multiplicities(&self) -> BTreeMap<String, usize> {
        subsets(self.cube.dim())
            .map(|t| (self.cube.key(t), self.summands.iter().filter(|&&w| w == t).count()))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct ResolutionOutput<F: Field> {
    /// Least exponents `m_s`.
    pub exponents: BTreeMap<String, u32>,
    /// Exponents actually used for `g_s = f_s^{m_s}`; at least `exponents`.
    pub construction_exponents: BTreeMap<String, u32>,
    /// `g_s` for every label.
    pub g: BTreeMap<String, Poly<F>>,
    /// `g_U`, the generators of the modulus ideal of `B`.
    pub modulus: Vec<Poly<F>>,
    pub stages: Vec<Stage<F>>,
    /// `connecting[i][T] : y(i)_T -> y(i+1)_T`.
    pub connecting: Vec<Vec<Matrix<F>>>,
}

/// `B^L` presented over `A`.
fn b_module<F: Field>(ring: &RingRef<F>, rank: usize, modulus: &[Poly<F>]) -> FPModule<F> {
    let mut rels = Vec::new();
    for j in 0..rank {
        for g in modulus {
            let mut v = vec![ring.zero(); rank];
            v[j] = g.clone();
            rels.push(v);
        }
    }
    FPModule::new(ring.clone(), rank, rels).expect("vector lengths")
}

/// The cube `⊕_j Typ_B(g^{W_j}_V)` on the labels `labels`.
pub fn typical_sum<F: Field>(
    ring: &RingRef<F>,
    labels: &[String],
    g_v: &[Poly<F>],
    modulus: &[Poly<F>],
    summands: &[Mask],
) -> Result<Cube<F>> {
    let n = labels.len();
    let vertex = b_module(ring, summands.len(), modulus);
    let mut boundaries = BTreeMap::new();
    for t in subsets(n) {
        for k in members(t) {
            let diag: Vec<Poly<F>> = summands
                .iter()
                .map(|&w| if w & (1 << k) != 0 { g_v[k].clone() } else { ring.one() })
                .collect();
            boundaries.insert((t, k), Matrix::diagonal(ring.clone(), &diag));
        }
    }
    Cube::new(ring.clone(), labels.to_vec(), vec![vertex; 1 << n], boundaries)
}

/// Column by column, `a` with `d a ≡ rhs` modulo the relations of `m`.
fn solve_modulo<F: Field>(d: &Matrix<F>, rhs: &Matrix<F>, m: &FPModule<F>, what: &str) -> Result<Matrix<F>> {
    let mut gens = d.columns();
    gens.extend(m.relations().generators().iter().cloned());
    let span = SubmoduleBasis::new(d.ring().clone(), d.rows(), gens)?;
    let mut cols = Vec::with_capacity(rhs.cols());
    for (j, col) in rhs.columns().into_iter().enumerate() {
        let c = span.express(&col)?.ok_or_else(|| {
            Error::LiftInfeasible(format!(
                "{what}: generator {j} with image ({}) has no preimage",
                col.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
            ))
        })?;
        cols.push(c[..d.cols()].to_vec());
    }
    Matrix::from_columns(d.ring().clone(), d.cols(), cols)
}

/// Summand types and epimorphism components of a resolution of `z`.
struct Piece<F: Field> {
    summands: Vec<Mask>,
    maps: Vec<Matrix<F>>,
}

/// Splits `z` along its first label as `z|^{v} -> z|_∅`, resolves the front,
/// lifts `g_v` times its epimorphism to the back, and adds a resolution of the back.
fn resolve_cube<F: Field>(z: &Cube<F>, g_v: &[Poly<F>]) -> Result<Piece<F>> {
    let ring = z.ring();
    if z.dim() == 0 {
        let r = z.rank(0);
        return Ok(Piece {
            summands: vec![0; r],
            maps: vec![Matrix::identity(ring.clone(), r)],
        });
    }
    let n = z.dim();
    let rest = z.full() & !1;
    let front = z.restrict(rest, 0)?;
    let back = z.restrict(rest, 1)?;
    let p0 = resolve_cube(&front, &g_v[1..])?;
    let p1 = resolve_cube(&back, &g_v[1..])?;
    let mut summands: Vec<Mask> = p0.summands.iter().map(|&w| (w << 1) | 1).collect();
    summands.extend(p1.summands.iter().map(|&w| w << 1));
    let mut maps = vec![Matrix::zero(ring.clone(), 0, 0); 1 << n];
    for face in subsets(n - 1) {
        let t = face << 1;
        let d = z.boundary(t | 1, 0);
        let lifted = solve_modulo(
            d,
            &p0.maps[face as usize].scale(&g_v[0]),
            z.vertex(t),
            &format!("lifting along {} at {{{}}}", z.labels()[0], z.key(t | 1)),
        )?;
        maps[(t | 1) as usize] = lifted.hstack(&p1.maps[face as usize])?;
        maps[t as usize] = p0.maps[face as usize].hstack(&d.mul(&p1.maps[face as usize])?)?;
    }
    Ok(Piece { summands, maps })
}

/// `y(0) -> y(1)` over `z(0) -> z(1)`: each summand of type `W` is lifted at
/// the vertex `V∖W` and then carried to the other vertices.
fn connect<F: Field>(
    lower: &Stage<F>,
    upper: &Stage<F>,
    c: &[Matrix<F>],
    targets: (&Cube<F>, &Cube<F>),
    g_v: &[Poly<F>],
) -> Result<Vec<Matrix<F>>> {
    let y1 = &upper.cube;
    let ring = y1.ring();
    let n = y1.dim();
    let full = y1.full();
    let mut columns: Vec<Vec<Vec<Poly<F>>>> = vec![Vec::new(); 1 << n];
    for (j, &w) in lower.summands.iter().enumerate() {
        let base = full & !w;
        let mut col: Vec<Option<Matrix<F>>> = vec![None; 1 << n];
        let image = c[base as usize]
            .mul(&lower.epimorphism[base as usize].submatrix(&(0..targets.0.rank(base)).collect::<Vec<_>>(), &[j]))?;
        let a = modcalc::lift_through_surjection(&image, &upper.epimorphism[base as usize], targets.1.vertex(base))
            .map_err(|e| match e {
                Error::LiftInfeasible(m) => Error::LiftInfeasible(format!("summand {j} at {{{}}}: {m}", y1.key(base))),
                other => other,
            })?;
        col[base as usize] = Some(a);
        let mut above: Vec<Mask> = subsets(n).filter(|s| s & !w == 0 && *s != 0).collect();
        above.sort_by_key(|s| s.count_ones());
        for s in above {
            let t = base | s;
            let k = members(s).next().expect("nonempty");
            let below = col[(t & !(1 << k)) as usize].clone().expect("filled in order");
            let lifted = solve_modulo(
                y1.boundary(t, k),
                &below.scale(&g_v[k]),
                y1.vertex(t & !(1 << k)),
                &format!("carrying summand {j} to {{{}}}", y1.key(t)),
            )?;
            col[t as usize] = Some(lifted);
        }
        for t in subsets(n) {
            if t & base == base {
                continue;
            }
            let mut here = col[(t | base) as usize].clone().expect("filled");
            let mut at = t | base;
            for k in members(base & !t) {
                here = y1.boundary(at, k).mul(&here)?;
                at &= !(1 << k);
            }
            col[t as usize] = Some(here);
        }
        for t in subsets(n) {
            columns[t as usize].push(col[t as usize].as_ref().expect("filled").column(0));
        }
    }
    subsets(n)
        .map(|t| Matrix::from_columns(ring.clone(), y1.rank(t), std::mem::take(&mut columns[t as usize])))
        .collect()
}

/// Resolves every target and connects consecutive resolutions.
pub fn koszul_resolve<F: Field>(input: &ResolutionInput<F>, cap: u32) -> Result<ResolutionOutput<F>> {
    let exponents = find_exponents(input, cap)?;
    let used = construction_exponents(input, &exponents, cap)?;
    let ring = input.ring();
    let g: BTreeMap<String, Poly<F>> = used.iter().map(|(s, &m)| (s.clone(), input.f(s).pow(m))).collect();
    let modulus: Vec<Poly<F>> = input.u.iter().map(|u| g[u].clone()).collect();
    let g_v: Vec<Poly<F>> = input.v().iter().map(|v| g[v].clone()).collect();
    let mut stages = Vec::new();
    for z in &input.targets {
        let piece = resolve_cube(z, &g_v)?;
        let cube = typical_sum(ring, input.v(), &g_v, &modulus, &piece.summands)?;
        stages.push(Stage {
            cube,
            summands: piece.summands,
            epimorphism: piece.maps,
        });
    }
    let mut connecting = Vec::new();
    for (i, c) in input.connecting.iter().enumerate() {
        connecting.push(connect(
            &stages[i],
            &stages[i + 1],
            c,
            (&input.targets[i], &input.targets[i + 1]),
            &g_v,
        )?);
    }
    Ok(ResolutionOutput {
        exponents,
        construction_exponents: used,
        g,
        modulus,
        stages,
        connecting,
    })
}
