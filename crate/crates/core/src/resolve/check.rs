use serde::Serialize;

use super::{congruent, typical_sum, ResolutionInput, ResolutionOutput};
use crate::arith::Field;
use crate::cube::{members, subsets};
use crate::modcalc::{self, FPModule};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResolutionCheck {
    /// (a) every vertex map is onto.
    pub surjective: bool,
    /// (b) every `y(i)` is the declared sum of typical cubes over `B`.
    pub shapes: bool,
    /// (c) the induced map on `H_0(Tot)` is onto.
    pub h0_surjective: bool,
    /// (d) maps are well defined and all squares commute modulo relations.
    pub commutes: bool,
    pub passed: bool,
    pub findings: Vec<String>,
}

/// Re-verifies a resolution against its input; every failure becomes a finding.
pub fn check_resolution<F: Field>(out: &ResolutionOutput<F>, input: &ResolutionInput<F>) -> ResolutionCheck {
    let mut findings = Vec::new();
    let (mut surjective, mut shapes, mut h0_surjective, mut commutes) = (true, true, true, true);
    let ring = input.ring();
    let v = input.v();
    let n = v.len();
    if out.stages.len() != input.targets.len() || out.connecting.len() != input.connecting.len() {
        findings.push("(b) number of stages or connecting maps differs from the input".into());
        return ResolutionCheck {
            surjective: false,
            shapes: false,
            h0_surjective: false,
            commutes: false,
            passed: false,
            findings,
        };
    }
    let modulus_ok = input.u.len() == out.modulus.len()
        && input
            .u
            .iter()
            .zip(&out.modulus)
            .all(|(u, g)| out.g.get(u) == Some(g) && *g == input.sequence[u].pow(out.construction_exponents[u]));
    if !modulus_ok {
        shapes = false;
        findings.push("(b) modulus is not g_U = (f_u^{m_u})".into());
    }
    let g_v: Vec<_> = v
        .iter()
        .map(|l| out.g.get(l).cloned().unwrap_or_else(|| input.sequence[l].clone()))
        .collect();
    for (i, (stage, z)) in out.stages.iter().zip(&input.targets).enumerate() {
        let y = &stage.cube;
        match typical_sum(ring, v, &g_v, &out.modulus, &stage.summands) {
            Ok(expected) => {
                if y.labels() != v || y.boundaries() != expected.boundaries() {
                    shapes = false;
                    findings.push(format!("(b) stage {i}: boundaries differ from the declared summands"));
                }
                for t in subsets(n) {
                    let same = y.dim() == n
                        && y.vertex(t).rank() == expected.vertex(t).rank()
                        && y.vertex(t).same_denominator(expected.vertex(t)).unwrap_or(false);
                    if !same {
                        shapes = false;
                        findings.push(format!(
                            "(b) stage {i}: vertex {{{}}} is not B^{}",
                            z.key(t),
                            stage.summands.len()
                        ));
                    }
                }
            }
            Err(e) => {
                shapes = false;
                findings.push(format!("(b) stage {i}: {e}"));
            }
        }
        if !shapes || stage.epimorphism.len() != 1 << n {
            findings.push(format!("(a) stage {i}: skipped, shapes do not match"));
            surjective = false;
            continue;
        }
        for t in subsets(n) {
            let phi = &stage.epimorphism[t as usize];
            if phi.rows() != z.rank(t) || phi.cols() != y.rank(t) {
                surjective = false;
                findings.push(format!("(a) stage {i}: map at {{{}}} has the wrong size", z.key(t)));
                continue;
            }
            if !modcalc::is_surjective_onto(phi, z.vertex(t)).unwrap_or(false) {
                surjective = false;
                findings.push(format!("(a) stage {i}: map at {{{}}} is not onto", z.key(t)));
            }
            if !modcalc::is_well_defined(phi, y.vertex(t), z.vertex(t)).unwrap_or(false) {
                commutes = false;
                findings.push(format!("(d) stage {i}: map at {{{}}} is not well defined", z.key(t)));
            }
            for k in members(t) {
                let below = t & !(1 << k);
                let ok = z.boundary(t, k).mul(phi).and_then(|l| {
                    let r = stage.epimorphism[below as usize].mul(y.boundary(t, k))?;
                    congruent(&l, &r, z.vertex(below))
                });
                if !ok.unwrap_or(false) {
                    commutes = false;
                    findings.push(format!(
                        "(d) stage {i}: square at {}|{} does not commute",
                        z.key(t),
                        v[k]
                    ));
                }
            }
        }
        let h0 = z
            .tot_h0_denominator(&z.default_ordering())
            .map(FPModule::from_relations);
        let onto = h0.and_then(|m| modcalc::is_surjective_onto(&stage.epimorphism[0], &m));
        if !onto.unwrap_or(false) {
            h0_surjective = false;
            findings.push(format!("(c) stage {i}: H_0 of the total complex is not reached"));
        }
    }
    if shapes && surjective {
        for (i, h) in out.connecting.iter().enumerate() {
            let (y0, y1) = (&out.stages[i].cube, &out.stages[i + 1].cube);
            let (p0, p1) = (&out.stages[i].epimorphism, &out.stages[i + 1].epimorphism);
            let c = &input.connecting[i];
            if h.len() != 1 << n {
                commutes = false;
                findings.push(format!("(d) connecting map {i} has {} components", h.len()));
                continue;
            }
            for t in subsets(n) {
                let ht = &h[t as usize];
                if !modcalc::is_well_defined(ht, y0.vertex(t), y1.vertex(t)).unwrap_or(false) {
                    commutes = false;
                    findings.push(format!(
                        "(d) connecting map {i} is not well defined at {{{}}}",
                        y0.key(t)
                    ));
                    continue;
                }
                let over = p1[t as usize].mul(ht).and_then(|l| {
                    let r = c[t as usize].mul(&p0[t as usize])?;
                    congruent(&l, &r, input.targets[i + 1].vertex(t))
                });
                if !over.unwrap_or(false) {
                    commutes = false;
                    findings.push(format!(
                        "(d) connecting map {i} does not lie over z at {{{}}}",
                        y0.key(t)
                    ));
                }
                for k in members(t) {
                    let below = t & !(1 << k);
                    let ok = y1.boundary(t, k).mul(ht).and_then(|l| {
                        let r = h[below as usize].mul(y0.boundary(t, k))?;
                        congruent(&l, &r, y1.vertex(below))
                    });
                    if !ok.unwrap_or(false) {
                        commutes = false;
                        findings.push(format!(
                            "(d) connecting map {i} does not commute with {}|{}",
                            y0.key(t),
                            v[k]
                        ));
                    }
                }
            }
        }
    }
    ResolutionCheck {
        surjective,
        shapes,
        h0_surjective,
        commutes,
        passed: surjective && shapes && h0_surjective && commutes,
        findings,
    }
}
