use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::document::{free_matrix, polys, ComplexDoc, CubeDoc, Document, RingSpec};
use super::{Command, Options};
use crate::arith::{Field, FieldKind, Fp, MonomialOrder, Poly, Rational, Ring, RingRef};
use crate::cube::{Cube, Strategy};
use crate::error::{Error, Result};
use crate::groebner::IdealBasis;
use crate::koszul;
use crate::modcalc::{self, Complex, FPModule};
use crate::resolve;

pub(super) fn execute(command: Command, doc: &Document, order: MonomialOrder, opts: &Options) -> Result<(bool, Value)> {
    let kind = doc.ring.field.kind()?;
    match kind {
        FieldKind::Rationals => Session::<Rational>::new(doc, kind, order, opts)?.run(command),
        FieldKind::Prime(_) => Session::<Fp>::new(doc, kind, order, opts)?.run(command),
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn strings<F: Field>(ps: &[Poly<F>]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn module_value<F: Field>(m: &FPModule<F>) -> Value {
    json!({
        "rank": m.rank(),
        "relations": m.relations().reduced_gb().iter().map(|v| strings(v)).collect::<Vec<_>>(),
    })
}

struct Session<'a, F: Field> {
    doc: &'a Document,
    ring: RingRef<F>,
    opts: &'a Options,
}

impl<'a, F: Field> Session<'a, F> {
    fn new(doc: &'a Document, kind: FieldKind, order: MonomialOrder, opts: &'a Options) -> Result<Self> {
        let ring = Ring::new(kind, doc.ring.vars.clone(), order)?;
        Ok(Session { doc, ring, opts })
    }

    fn missing(what: &str) -> Error {
        Error::Input(format!("the document has no \"{what}\""))
    }

    fn cube(&self) -> Result<Cube<F>> {
        self.doc
            .cube
            .as_ref()
            .ok_or_else(|| Self::missing("cube"))?
            .to_cube(&self.ring)
    }

    fn sequence(&self) -> Result<Vec<Poly<F>>> {
        polys(
            &self.ring,
            self.doc.sequence.as_ref().ok_or_else(|| Self::missing("sequence"))?,
            "sequence",
        )
    }

    fn cube_and_sequence(&self) -> Result<(Cube<F>, Vec<Poly<F>>)> {
        Ok((self.cube()?, self.sequence()?))
    }

    /// The document's complex, or else the total complex of its cube.
    fn complex(&self) -> Result<Complex<F>> {
        match &self.doc.complex {
            Some(c) => c.to_complex(&self.ring),
            None => {
                let c = self.cube()?;
                c.total_complex(&c.default_ordering())
            }
        }
    }

    fn cube_value(&self, c: &Cube<F>) -> Value {
        json!({ "ring": RingSpec::of(&self.ring), "cube": CubeDoc::of(c) })
    }

    fn run(&self, command: Command) -> Result<(bool, Value)> {
        match command {
            Command::Validate => {
                let rep = self.cube()?.validate();
                Ok((rep.valid, to_value(&rep)))
            }
            Command::Tot => {
                let c = self.cube()?;
                let tot = c.total_complex(&c.default_ordering())?;
                Ok((true, json!({ "ordering": c.labels(), "complex": ComplexDoc::of(&tot) })))
            }
            Command::Homology => self.homology(),
            Command::H0 => self.h0(),
            Command::Admissible => {
                let c = self.cube()?;
                let strategies: Vec<Strategy> = match self.doc.strategy {
                    Some(s) => vec![s],
                    None => Strategy::ALL.to_vec(),
                };
                let reports: Vec<_> = strategies.iter().map(|&s| c.admissibility(s)).collect();
                let agree = reports.windows(2).all(|w| w[0].admissible == w[1].admissible);
                let verdict = reports[0].admissible;
                Ok((
                    verdict && agree,
                    json!({ "admissible": verdict, "strategies_agree": agree, "reports": reports }),
                ))
            }
            Command::KoszulCheck => {
                let (c, fs) = self.cube_and_sequence()?;
                let v = koszul::koszul_analysis(&c, &fs, self.opts.perm_cap)?;
                Ok((v.is_koszul, to_value(&v)))
            }
            Command::ReducedCheck => {
                let (c, fs) = self.cube_and_sequence()?;
                let reduced = koszul::is_reduced_koszul(&c, &fs)?;
                Ok((reduced, json!({ "reduced": reduced })))
            }
            Command::Typical => {
                let fs = self.sequence()?;
                Ok((true, self.cube_value(&koszul::typical_cube(&self.ring, &fs))))
            }
            Command::Det => {
                let (c, fs) = self.cube_and_sequence()?;
                let det = koszul::determinant(&c, &fs)?;
                Ok((true, json!({ "determinants": det, "coherent": true })))
            }
            Command::Fitting => {
                let data = self.doc.matrix.as_ref().ok_or_else(|| Self::missing("matrix"))?;
                let m = free_matrix(&self.ring, data, "matrix")?;
                let t = self.doc.t.ok_or_else(|| Self::missing("t"))?;
                let ideal = modcalc::fitting_ideal(&m, t)?;
                Ok((
                    true,
                    json!({ "t": t, "ideal": strings(&ideal.reduced_gb()), "grade": ideal.grade() }),
                ))
            }
            Command::Grade => {
                let gens = polys(
                    &self.ring,
                    self.doc.ideal.as_ref().ok_or_else(|| Self::missing("ideal"))?,
                    "ideal",
                )?;
                let ideal = IdealBasis::new(self.ring.clone(), gens)?;
                let dimension = ideal.dimension().ok();
                Ok((
                    true,
                    json!({ "groebner_basis": strings(&ideal.reduced_gb()), "grade": ideal.grade(), "dimension": dimension }),
                ))
            }
            Command::BeCheck => {
                let c = self.complex()?;
                let rep = koszul::be_acyclicity(&c)?;
                let spherical = c.zero_spherical();
                Ok((
                    rep.acyclic,
                    json!({ "report": rep, "zero_spherical": spherical, "agrees_with_homology": rep.acyclic == spherical }),
                ))
            }
            Command::Regseq => {
                let fs = self.sequence()?;
                let rep = koszul::is_regular_sequence(&self.ring, &fs);
                let verified = rep.witness_verifies(&self.ring);
                Ok((rep.regular, json!({ "report": rep, "witness_verifies": verified })))
            }
            Command::Aseq => {
                let fs = self.sequence()?;
                let rep = koszul::is_a_sequence(&self.ring, &fs, self.opts.perm_cap)?;
                let verified = rep.witness_verifies(&self.ring);
                Ok((
                    rep.a_sequence == Some(true),
                    json!({ "report": rep, "witness_verifies": verified }),
                ))
            }
            Command::FactorLemma => {
                let fs = self.sequence()?;
                let gs = polys(
                    &self.ring,
                    self.doc.cofactors.as_ref().ok_or_else(|| Self::missing("cofactors"))?,
                    "cofactors",
                )?;
                let rep = koszul::factor_sequence_check(&self.ring, &fs, &gs, self.opts.perm_cap)?;
                let verified = rep.solutions_verify(&fs);
                Ok((
                    !rep.counterexample && verified,
                    json!({ "report": rep, "solutions_verify": verified }),
                ))
            }
            Command::WeightDecomp => {
                let (c, fs) = self.cube_and_sequence()?;
                let rep = koszul::verify_weight_decomposition(&c, &fs)?;
                Ok((rep.holds, to_value(&rep)))
            }
            Command::Generators => {
                let (c, fs) = self.cube_and_sequence()?;
                let rep = koszul::generators_presentation(&c, &fs, self.opts.perm_cap)?;
                let ok = rep.matches_total_complex && rep.determinants.a_sequence == Some(true);
                Ok((
                    ok,
                    json!({
                        "module": module_value(&rep.module),
                        "matches_total_complex": rep.matches_total_complex,
                        "determinants": rep.determinants,
                    }),
                ))
            }
            Command::Resolve => self.resolve(),
            Command::RandomKoszul => {
                let fs = self.sequence()?;
                let params = self.doc.random.unwrap_or_default();
                let c = koszul::random_koszul(&self.ring, &fs, params, self.opts.seed)?;
                let mut v = self.cube_value(&c);
                v["sequence"] = json!(strings(&fs));
                v["params"] = to_value(&params);
                Ok((true, v))
            }
        }
    }

    fn homology(&self) -> Result<(bool, Value)> {
        if self.doc.complex.is_some() {
            let c = self.complex()?;
            let mut degrees = Vec::new();
            for k in 1..=c.length() {
                let h = c.homology(k)?;
                degrees.push(json!({ "degree": k, "vanishes": h.is_zero(), "module": module_value(&h) }));
            }
            let h0 = FPModule::from_relations(c.h0_denominator());
            let spherical = c.zero_spherical();
            return Ok((
                spherical,
                json!({ "h0": module_value(&h0), "degrees": degrees, "zero_spherical": spherical }),
            ));
        }
        let c = self.cube()?;
        let mut degrees = Vec::new();
        for k in 1..=c.dim() {
            degrees.push(json!({ "degree": k, "vanishes": c.tot_homology_vanishes(k)? }));
        }
        let h0 = FPModule::from_relations(c.tot_h0_denominator(&c.default_ordering())?);
        let spherical = c.tot_zero_spherical();
        Ok((
            spherical,
            json!({ "h0": module_value(&h0), "degrees": degrees, "zero_spherical": spherical }),
        ))
    }

    fn h0(&self) -> Result<(bool, Value)> {
        let c = self.cube()?;
        let dirs = &self.doc.h0.as_ref().ok_or_else(|| Self::missing("h0"))?.directions;
        let t = c.mask_of(dirs)?;
        let (h, agree) = c.iterated_h0_checked(t, self.opts.perm_cap)?;
        let mut result = json!({
            "directions": c.key(t),
            "order_independent": agree,
            "cube": CubeDoc::of(&h),
        });
        let mut verdict = agree;
        if t == c.full() {
            let tot = c.tot_h0_denominator(&c.default_ordering())?;
            let matches = h.vertex(0).relations().equals(&tot)?;
            result["matches_total_complex"] = json!(matches);
            verdict &= matches;
        }
        Ok((verdict, result))
    }

    fn resolve(&self) -> Result<(bool, Value)> {
        let rd = self.doc.resolve.as_ref().ok_or_else(|| Self::missing("resolve"))?;
        let input = rd.to_input(&self.ring)?;
        let out = resolve::koszul_resolve(&input, self.opts.max_power)?;
        let check = resolve::check_resolution(&out, &input);
        let v = input.v().to_vec();
        let stages: Vec<Value> = out
            .stages
            .iter()
            .map(|s| {
                json!({
                    "cube": CubeDoc::of(&s.cube),
                    "summands": s.summands.iter().map(|&w| s.cube.key(w)).collect::<Vec<_>>(),
                    "multiplicities": s.multiplicities(),
                    "epimorphism": super::document::vertex_maps(&v, &s.epimorphism),
                })
            })
            .collect();
        let connecting: Vec<_> = out
            .connecting
            .iter()
            .map(|h| super::document::vertex_maps(&v, h))
            .collect();
        let g: BTreeMap<&String, String> = out.g.iter().map(|(k, p)| (k, p.to_string())).collect();
        let minimal = resolve::exponents_are_minimal(&input, &out.exponents)?;
        Ok((
            check.passed && minimal,
            json!({
                "exponents": out.exponents,
                "exponents_minimal": minimal,
                "construction_exponents": out.construction_exponents,
                "g": g,
                "modulus": strings(&out.modulus),
                "stages": stages,
                "connecting": connecting,
                "check": check,
            }),
        ))
    }
}
