//! The nine acceptance criteria. Prints one line per criterion and exits
//! non-zero if any fails.

mod common;

use std::collections::BTreeMap;
use std::path::Path;
use std::time::{Duration, Instant};

use common::*;
use itertools::Itertools;
use koszul_core::arith::{Field, MonomialOrder, Poly, Rational, RingExt};
use koszul_core::cli::{self, Command, Format, JobSpec, Options};
use koszul_core::cube::{members, subsets, Cube, Strategy};
use koszul_core::groebner::SubmoduleBasis;
use koszul_core::koszul::{
    be_acyclicity, det_is_a_sequence, determinant, factor_sequence_check, is_a_sequence, is_koszul_cube,
    is_regular_sequence, koszul_degenerate_directions,
};
use koszul_core::modcalc::FPModule;
use koszul_core::resolve::{check_resolution, exponents_are_minimal, koszul_resolve, ResolutionInput};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))?;
    Ok(t)
}

/// Suite Koszul cubes with `|S| <= 3`, rank at most 4 and entries of degree at most 2.
fn criterion_cubes(r: &koszul_core::arith::RingRef<Rational>, want: usize) -> Vec<KoszulSample<Rational>> {
    let mut out = Vec::new();
    let mut seed = 0;
    while out.len() < want && seed < 5000 {
        let s = koszul_sample(r, seed);
        if s.cube.dim() <= 3 && max_rank(&s.cube) <= 4 && entry_degree(&s.cube) <= 2 {
            out.push(s);
        }
        seed += 1;
    }
    out
}

fn c1_koszul_complex() -> Outcome {
    let start = Instant::now();
    let r = gf101();
    let fs = polys(&r, &["x", "y", "z"]);
    let x = koszul_core::koszul::typical_cube(&r, &fs);
    let c = tot(&x);
    let expected = SubmoduleBasis::new(r.clone(), 1, fs.iter().map(|f| vec![f.clone()]).collect()).unwrap();
    ensure(c.h0_denominator().equals(&expected).unwrap(), || {
        "H_0 is not A/(x,y,z)".into()
    })?;
    for k in 1..=3 {
        ensure(c.homology_vanishes(k).unwrap(), || format!("H_{k} is nonzero"))?;
    }
    ensure(c.ranks() == [1, 3, 3, 1], || format!("ranks {:?}", c.ranks()))?;
    let t = within(start, Duration::from_secs(2))?;
    Ok(format!("H_0 = A/(x,y,z), H_1 = H_2 = H_3 = 0 in {t:.2?}"))
}

fn c2_triple_agreement() -> Outcome {
    let r = qxyz();
    let mut cubes: Vec<(&str, Cube<Rational>)> = Vec::new();
    for seed in 0..80 {
        cubes.push(("koszul", koszul_sample(&r, seed).cube));
    }
    for seed in 80..130 {
        let s = koszul_sample(&r, seed);
        if s.cube.dim() < 3 {
            cubes.push(("padded", s.cube.pad_identity("pad").unwrap()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for seed in 130..200 {
        cubes.push(("perturbed", perturbed(&koszul_sample(&r, seed).cube, &mut rng)));
    }
    for _ in 0..40 {
        let dim = rng.gen_range(1..=3);
        cubes.push(("typical", random_typical(&r, dim, &mut rng)));
    }
    cubes.push(("both-x", both_x_square(&r)));
    let mut admissible = 0;
    let mut disagreements = Vec::new();
    for (i, (kind, x)) in cubes.iter().enumerate() {
        let v: Vec<bool> = Strategy::ALL.iter().map(|&s| x.admissibility(s).admissible).collect();
        if v.iter().any(|&b| b != v[0]) {
            disagreements.push(format!("{kind} #{i}: {v:?}"));
        }
        admissible += v[0] as usize;
    }
    ensure(cubes.len() >= 200, || format!("only {} cubes", cubes.len()))?;
    ensure(admissible < cubes.len() && admissible > 0, || {
        "suite is one-sided".into()
    })?;
    ensure(disagreements.is_empty(), || disagreements.join("; "))?;
    Ok(format!(
        "{} cubes ({admissible} admissible, {} not), 0 disagreements",
        cubes.len(),
        cubes.len() - admissible
    ))
}

fn c3_koszul_admissible() -> Outcome {
    let start = Instant::now();
    let r = qxyz();
    let suite = criterion_cubes(&r, 100);
    ensure(suite.len() >= 100, || format!("only {} qualifying cubes", suite.len()))?;
    for s in &suite {
        let tag = format!("seed {}", s.seed);
        ensure(is_koszul_cube(&s.cube, &s.sequence).unwrap().is_koszul, || {
            format!("{tag}: not Koszul")
        })?;
        ensure(s.cube.is_nondegenerate(), || format!("{tag}: degenerate"))?;
        for st in Strategy::ALL {
            ensure(s.cube.admissibility(st).admissible, || {
                format!("{tag}: not admissible ({})", st.name())
            })?;
        }
        ensure(tot(&s.cube).zero_spherical(), || format!("{tag}: Tot not 0-spherical"))?;
    }
    let t = within(start, Duration::from_secs(300))?;
    let by_dim: BTreeMap<usize, usize> = suite.iter().counts_by(|s| s.cube.dim()).into_iter().collect();
    Ok(format!(
        "{} cubes {by_dim:?} by |S|, all admissible and 0-spherical in {t:.2?}",
        suite.len()
    ))
}

fn c4_buchsbaum_eisenbud() -> Outcome {
    let r = qxyz();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut complexes = Vec::new();
    for seed in 0..50 {
        let c = tot(&small_koszul_sample(&r, seed).cube);
        let i = rng.gen_range(1..=c.length());
        complexes.push(corrupted(&c, i, None));
        let g = loop {
            let g = small_poly(&r, &mut rng);
            if !g.is_unit() {
                break g;
            }
        };
        complexes.push(corrupted(&c, i, Some(&g)));
        complexes.push(c);
    }
    for _ in 0..30 {
        complexes.push(tot(&random_typical(&r, rng.gen_range(1..=3), &mut rng)));
    }
    let mut spherical = 0;
    for (i, c) in complexes.iter().enumerate() {
        let rep = be_acyclicity(c).map_err(|e| format!("complex {i}: {e}"))?;
        let z = c.zero_spherical();
        ensure(rep.acyclic == z, || {
            format!("complex {i}: criterion {} against homology {z}", rep.acyclic)
        })?;
        spherical += z as usize;
    }
    ensure(complexes.len() >= 100, || format!("only {} complexes", complexes.len()))?;
    Ok(format!(
        "{} complexes ({spherical} 0-spherical, {} not), 0 disagreements",
        complexes.len(),
        complexes.len() - spherical
    ))
}

/// `det d^k_T` divides `det d^k_S` with a unit quotient.
fn unit_ratios<F: Field>(x: &Cube<F>) -> bool {
    (0..x.dim()).all(|k| {
        let top = x.boundary(x.full(), k).determinant().unwrap();
        subsets(x.dim()).filter(|t| t & (1 << k) != 0).all(|t| {
            let here = x.boundary(t, k).determinant().unwrap();
            top.div_exact(&here).is_some_and(|u| u.is_unit())
        })
    })
}

fn c5_determinants() -> Outcome {
    let r = qxyz();
    let suite = criterion_cubes(&r, 100);
    let mut nondegenerate = 0;
    let mut degenerate = 0;
    for s in &suite {
        let tag = format!("seed {}", s.seed);
        ensure(unit_ratios(&s.cube), || format!("{tag}: ratio is not a unit"))?;
        determinant(&s.cube, &s.sequence).map_err(|e| format!("{tag}: {e}"))?;
        let deg = koszul_degenerate_directions(&s.cube, &s.sequence).unwrap();
        if deg == 0 {
            let rep = det_is_a_sequence(&s.cube, &s.sequence, 6).unwrap();
            ensure(rep.a_sequence == Some(true), || {
                format!("{tag}: det x is not an A-sequence")
            })?;
            nondegenerate += 1;
        }
        if s.cube.dim() < 3 {
            let padded = s.cube.pad_identity("pad").unwrap();
            let mut fs = s.sequence.clone();
            fs.push(r.parse("x + y*z + 1").unwrap());
            ensure(unit_ratios(&padded), || format!("{tag}: padded ratio is not a unit"))?;
            determinant(&padded, &fs).map_err(|e| format!("{tag} padded: {e}"))?;
            degenerate += 1;
        }
    }
    Ok(format!(
        "unit ratios on {} cubes; det x an A-sequence on all {nondegenerate} non-degenerate ones",
        suite.len() + degenerate
    ))
}

fn c6_order_independence() -> Outcome {
    let r = qxyz();
    let suite = criterion_cubes(&r, 100);
    let mut checks = 0;
    for s in &suite {
        let x = &s.cube;
        let tag = format!("seed {}", s.seed);
        for t in subsets(x.dim()).filter(|&t| t != 0 && t.count_ones() <= 3) {
            let dirs: Vec<usize> = members(t).collect();
            let mut first: Option<Cube<Rational>> = None;
            for perm in dirs.iter().copied().permutations(dirs.len()) {
                let h = x.iterated_h0(&perm).unwrap();
                match &first {
                    None => first = Some(h),
                    Some(f) => {
                        let same = subsets(f.dim()).all(|v| f.vertex(v).same_denominator(h.vertex(v)).unwrap());
                        ensure(same, || format!("{tag}: H_0 along {perm:?} differs"))?;
                    }
                }
                checks += 1;
            }
            if t == x.full() {
                let tot = x.tot_h0_denominator(&x.default_ordering()).unwrap();
                let h = first.as_ref().unwrap();
                ensure(h.vertex(0).relations().equals(&tot).unwrap(), || {
                    format!("{tag}: differs from H_0(Tot)")
                })?;
            }
        }
    }
    Ok(format!(
        "{checks} iterated H_0 computations on {} cubes agree and match H_0(Tot)",
        suite.len()
    ))
}

fn c7_sequences() -> Outcome {
    let lex = common::ring::<Rational>(
        koszul_core::arith::FieldKind::Rationals,
        &["x", "y", "z"],
        MonomialOrder::Lex,
    );
    let fs = polys(&lex, &["x", "y*(1-x)", "z*(1-x)"]);
    ensure(is_regular_sequence(&lex, &fs).regular, || {
        "(x, y(1-x), z(1-x)) not regular".into()
    })?;
    let rep = is_a_sequence(&lex, &fs, 6).unwrap();
    ensure(rep.a_sequence == Some(false), || {
        "(x, y(1-x), z(1-x)) accepted as A-sequence".into()
    })?;
    let perm = rep.failing_permutation.clone().ok_or("no failing permutation")?;
    ensure(rep.witness.is_some() && rep.witness_verifies(&lex), || {
        "witness does not verify".into()
    })?;
    let r = qxyz();
    let pw = polys(&r, &["x^2", "y^3"]);
    ensure(is_a_sequence(&r, &pw, 6).unwrap().a_sequence == Some(true), || {
        "(x^2, y^3) rejected".into()
    })?;
    let mut hypothesis = 0;
    let pairs = 120;
    for seed in 0..pairs {
        let (f, g) = factor_pair(&r, seed);
        let rep = factor_sequence_check(&r, &f, &g, 6).unwrap();
        ensure(!(rep.hypothesis && !rep.conclusion), || {
            format!("pair {seed}: counterexample")
        })?;
        ensure(rep.solutions_verify(&f), || {
            format!("pair {seed}: solutions do not verify")
        })?;
        hypothesis += rep.hypothesis as usize;
    }
    Ok(format!(
        "rejected at permutation {perm:?} with witness {}; (x^2, y^3) accepted; {pairs} factor pairs ({hypothesis} with products an A-sequence), no counterexample",
        rep.witness.unwrap()
    ))
}

/// Label and polynomial pairs.
fn seq(r: &koszul_core::arith::RingRef<Rational>, pairs: &[(&str, &str)]) -> BTreeMap<String, Poly<Rational>> {
    pairs
        .iter()
        .map(|(l, p)| (l.to_string(), r.parse(p).unwrap()))
        .collect()
}

fn c8_resolution() -> Outcome {
    let start = Instant::now();
    let r = qxyz();
    let cyclic = FPModule::new(r.clone(), 1, vec![vec![r.parse("x^2").unwrap()]]).unwrap();
    let worked = vec![
        ResolutionInput::module(vec!["1".into()], seq(&r, &[("1", "x")]), cyclic),
        ResolutionInput::cube(
            vec![],
            seq(&r, &[("1", "x")]),
            koszul_core::koszul::typical_cube(&r, &polys(&r, &["x^2"])),
        ),
        ResolutionInput::cube(
            vec![],
            seq(&r, &[("1", "x"), ("2", "y")]),
            koszul_core::koszul::typical_cube(&r, &polys(&r, &["x^2", "y"])),
        ),
    ];
    let expected: [&[u32]; 3] = [&[2], &[2], &[2, 1]];
    let mut inputs: Vec<ResolutionInput<Rational>> = worked;
    for seed in 0..24 {
        inputs.push(resolution_target(&r, seed));
    }
    for (i, input) in inputs.iter().enumerate() {
        let out = koszul_resolve(input, 64).map_err(|e| format!("input {i}: {e}"))?;
        let rep = check_resolution(&out, input);
        ensure(rep.passed, || format!("input {i}: {}", rep.findings.join("; ")))?;
        ensure(exponents_are_minimal(input, &out.exponents).unwrap(), || {
            format!("input {i}: exponents not minimal")
        })?;
        if let Some(e) = expected.get(i) {
            let got: Vec<u32> = out.exponents.values().copied().collect();
            ensure(got == *e, || format!("worked example {i}: exponents {got:?}"))?;
        }
    }
    let t = within(start, Duration::from_secs(120))?;
    Ok(format!(
        "3 worked examples and {} seeded targets pass, exponents minimal, in {t:.2?}",
        inputs.len() - 3
    ))
}

fn c9_golden() -> Outcome {
    let cli_tests = Path::new(env!("CARGO_MANIFEST_DIR")).join("../cli/tests");
    let cases = std::fs::read_to_string(cli_tests.join("fixtures/cases.txt")).map_err(|e| e.to_string())?;
    let mut files = 0;
    for line in cases.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#')) {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let (fixture, command) = (parts[0], Command::parse(parts[1]).ok_or("unknown command")?);
        let flags = &parts[3..];
        let mut options = Options::default();
        let mut format = Format::Json;
        let mut it = flags.iter();
        while let Some(&f) = it.next() {
            match f {
                "--text" => format = Format::Text,
                "--seed" => options.seed = it.next().unwrap().parse().unwrap(),
                "--perm-cap" => options.perm_cap = it.next().unwrap().parse().unwrap(),
                "--max-power" => options.max_power = it.next().unwrap().parse().unwrap(),
                other => return Err(format!("unknown flag {other}")),
            }
        }
        let input = std::fs::read_to_string(cli_tests.join(format!("fixtures/{fixture}.json"))).unwrap();
        let mut name = format!("{fixture}.{}", parts[1]);
        for f in flags {
            name.push('_');
            name.push_str(f.trim_start_matches('-'));
        }
        name.push_str(if format == Format::Text { ".txt" } else { ".json" });
        let mut verdicts = Vec::new();
        for order in [MonomialOrder::GRevLex, MonomialOrder::Lex, MonomialOrder::GrLex] {
            let job = JobSpec {
                command,
                options: Options {
                    order: Some(order),
                    ..options.clone()
                },
                format,
            };
            let first = cli::run(&job, &input).render(format);
            let second = cli::run(&job, &input).render(format);
            ensure(first == second, || format!("{name} ({}): runs differ", order.name()))?;
            let golden = std::fs::read_to_string(cli_tests.join("golden").join(order.name()).join(&name))
                .map_err(|e| format!("{name}: {e}"))?;
            ensure(golden == first, || {
                format!("{}/{name} differs from golden file", order.name())
            })?;
            verdicts.push(cli::run(&job, &input).verdict);
            files += 1;
        }
        ensure(verdicts.iter().all_equal(), || {
            format!("{name}: verdicts depend on the order")
        })?;
    }
    Ok(format!(
        "{files} golden files byte-identical over two runs; verdicts agree across orders"
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("Koszul complex over GF(101)", c1_koszul_complex),
        ("admissibility strategies agree", c2_triple_agreement),
        ("Koszul cubes admissible and 0-spherical", c3_koszul_admissible),
        ("Buchsbaum-Eisenbud against homology", c4_buchsbaum_eisenbud),
        ("determinant coherence and A-sequences", c5_determinants),
        ("iterated H_0 order independence", c6_order_independence),
        ("A-sequence discrimination and factor lemma", c7_sequences),
        ("resolution algorithm", c8_resolution),
        ("report format stability", c9_golden),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} [{t:.2?}]: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} [{t:.2?}]: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
