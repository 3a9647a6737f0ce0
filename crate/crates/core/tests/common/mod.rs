//! Seeded cube and complex suites shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use koszul_core::arith::{Field, FieldKind, Fp, MonomialOrder, Poly, Rational, Ring, RingExt, RingRef};
use koszul_core::cube::{subsets, Cube, Mask};
use koszul_core::koszul::{random_koszul, typical_cube, RandomKoszulParams};
use koszul_core::modcalc::{Complex, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn ring<F: Field>(kind: FieldKind, vars: &[&str], order: MonomialOrder) -> RingRef<F> {
    Ring::new(kind, vars.iter().map(|v| v.to_string()).collect(), order).unwrap()
}

pub fn qxyz() -> RingRef<Rational> {
    ring(FieldKind::Rationals, &["x", "y", "z"], MonomialOrder::GRevLex)
}

pub fn gf101() -> RingRef<Fp> {
    ring(FieldKind::Prime(101), &["x", "y", "z"], MonomialOrder::GRevLex)
}

pub fn polys<F: Field>(r: &RingRef<F>, s: &[&str]) -> Vec<Poly<F>> {
    s.iter().map(|t| r.parse(t).unwrap()).collect()
}

/// A-sequences in `x, y, z` of length one to three.
pub const A_SEQUENCES: &[&[&str]] = &[
    &["x"],
    &["x^2 + y"],
    &["x", "y"],
    &["x^2", "y"],
    &["x + y", "z"],
    &["x*y - 1", "z"],
    &["x", "y", "z"],
    &["x", "y + z", "z^2"],
    &["x - y", "y^2", "z + x"],
];

/// One member of the seeded Koszul suite: `(sequence, cube)`.
pub struct KoszulSample<F: Field> {
    pub seed: u64,
    pub sequence: Vec<Poly<F>>,
    pub params: RandomKoszulParams,
    pub cube: Cube<F>,
}

/// Parameters for sample `seed`: sequence, summand count, base changes,
/// row-operation degree and exponent bound.
pub fn koszul_params(seed: u64) -> (usize, RandomKoszulParams) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let which = rng.gen_range(0..A_SEQUENCES.len());
    let params = RandomKoszulParams {
        summands: rng.gen_range(1..=4),
        steps: rng.gen_range(0..=6),
        max_degree: rng.gen_range(0..=1),
        max_exponent: rng.gen_range(1..=2),
    };
    (which, params)
}

pub fn koszul_sample<F: Field>(r: &RingRef<F>, seed: u64) -> KoszulSample<F> {
    let (which, params) = koszul_params(seed);
    let sequence = polys(r, A_SEQUENCES[which]);
    let cube = random_koszul(r, &sequence, params, seed).unwrap();
    KoszulSample {
        seed,
        sequence,
        params,
        cube,
    }
}

/// Like [`koszul_sample`] with few enough summands that no term of the total
/// complex has rank above 6; Fitting ideals of larger differentials need
/// hundreds of thousands of minors.
pub fn small_koszul_sample<F: Field>(r: &RingRef<F>, seed: u64) -> KoszulSample<F> {
    let (which, mut params) = koszul_params(seed);
    let n = A_SEQUENCES[which].len();
    let widest = [1, 1, 2, 3][n];
    params.summands = params.summands.min(6 / widest);
    let sequence = polys(r, A_SEQUENCES[which]);
    let cube = random_koszul(r, &sequence, params, seed).unwrap();
    KoszulSample {
        seed,
        sequence,
        params,
        cube,
    }
}

pub fn koszul_suite<F: Field>(r: &RingRef<F>, count: u64) -> Vec<KoszulSample<F>> {
    (0..count).map(|s| koszul_sample(r, s)).collect()
}

/// Largest total degree of a boundary entry.
pub fn entry_degree<F: Field>(c: &Cube<F>) -> u32 {
    c.boundaries()
        .values()
        .flat_map(|d| d.to_rows().into_iter().flatten())
        .filter_map(|p| p.total_degree())
        .max()
        .unwrap_or(0)
}

pub fn max_rank<F: Field>(c: &Cube<F>) -> usize {
    subsets(c.dim()).map(|t| c.rank(t)).max().unwrap_or(0)
}

/// Rank-one square with every boundary multiplication by `x`.
pub fn both_x_square<F: Field>(r: &RingRef<F>) -> Cube<F> {
    let x = r.var("x").unwrap();
    typical_cube(r, &[x.clone(), x])
}

/// A small random polynomial, sometimes zero or a unit.
pub fn small_poly<F: Field>(r: &RingRef<F>, rng: &mut ChaCha8Rng) -> Poly<F> {
    const POOL: &[&str] = &[
        "x", "y", "z", "x*y", "x^2", "x + y", "y*z", "x*z", "x - 1", "y^2 - x", "0", "1", "2*x", "x*y - z",
    ];
    r.parse(POOL[rng.gen_range(0..POOL.len())]).unwrap()
}

/// `Typ(fs)` for random, mostly non-regular, `fs`.
pub fn random_typical<F: Field>(r: &RingRef<F>, dim: usize, rng: &mut ChaCha8Rng) -> Cube<F> {
    let fs: Vec<Poly<F>> = (0..dim).map(|_| small_poly(r, rng)).collect();
    typical_cube(r, &fs)
}

/// A Koszul cube whose boundary at one random `(T, k)` is multiplied by a
/// random polynomial on every vertex containing `T`, keeping it commutative.
pub fn perturbed<F: Field>(c: &Cube<F>, rng: &mut ChaCha8Rng) -> Cube<F> {
    let k = rng.gen_range(0..c.dim());
    let g = small_poly(c.ring(), rng);
    let boundaries: BTreeMap<(Mask, usize), Matrix<F>> = c
        .boundaries()
        .iter()
        .map(|(&(t, j), d)| ((t, j), if j == k { d.scale(&g) } else { d.clone() }))
        .collect();
    Cube::new(c.ring().clone(), c.labels().to_vec(), c.vertices().to_vec(), boundaries).unwrap()
}

/// Total complex with default ordering.
pub fn tot<F: Field>(c: &Cube<F>) -> Complex<F> {
    c.total_complex(&c.default_ordering()).unwrap()
}

/// Copies of `c` with the `i`-th differential zeroed or scaled by `g`.
pub fn corrupted<F: Field>(c: &Complex<F>, i: usize, g: Option<&Poly<F>>) -> Complex<F> {
    let diffs = c
        .differentials()
        .iter()
        .enumerate()
        .map(|(j, d)| match (j + 1 == i, g) {
            (false, _) => d.clone(),
            (true, None) => Matrix::zero(c.ring().clone(), d.rows(), d.cols()),
            (true, Some(g)) => d.scale(g),
        })
        .collect();
    Complex::new(c.ring().clone(), c.ranks().to_vec(), diffs).unwrap()
}

/// Seeded resolution input: a `V`-cube (`|V| <= 2`, labels `"1"`, `"2"` for
/// `x`, `y`) with rank at most 2, optionally killed by a power of `z` along
/// `U = {"u"}`, and sometimes a second target joined by the identity.
pub fn resolution_target(r: &RingRef<Rational>, seed: u64) -> koszul_core::resolve::ResolutionInput<Rational> {
    use koszul_core::modcalc::FPModule;
    use koszul_core::resolve::ResolutionInput;

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xbeef);
    let dim = rng.gen_range(0..=2);
    let with_u = dim == 0 || rng.gen_bool(0.5);
    let all = ["x", "y"];
    let mut sequence: BTreeMap<String, Poly<Rational>> = (0..dim)
        .map(|k| ((k + 1).to_string(), r.parse(all[k]).unwrap()))
        .collect();
    let u = if with_u {
        sequence.insert("u".into(), r.parse("z").unwrap());
        vec!["u".to_string()]
    } else {
        Vec::new()
    };
    let power = rng.gen_range(1..=2);
    let torsion = |rank: usize, p: u32| -> Vec<Vec<Poly<Rational>>> {
        if !with_u {
            return Vec::new();
        }
        (0..rank)
            .map(|j| {
                (0..rank)
                    .map(|i| if i == j { r.parse("z").unwrap().pow(p) } else { r.zero() })
                    .collect()
            })
            .collect()
    };
    let cube = |p: u32, extra: &[Vec<Poly<Rational>>], base: &Cube<Rational>| -> Cube<Rational> {
        let vertices = subsets(base.dim())
            .map(|t| {
                let mut rels = torsion(base.rank(t), p);
                rels.extend(extra.iter().filter(|v| v.len() == base.rank(t)).cloned());
                FPModule::new(r.clone(), base.rank(t), rels).unwrap()
            })
            .collect();
        Cube::new(r.clone(), base.labels().to_vec(), vertices, base.boundaries().clone()).unwrap()
    };
    let base = if dim == 0 {
        Cube::point(FPModule::free(r.clone(), rng.gen_range(1..=2)))
    } else {
        let fs: Vec<Poly<Rational>> = (0..dim).map(|k| r.parse(all[k]).unwrap()).collect();
        let params = RandomKoszulParams {
            summands: rng.gen_range(1..=2),
            steps: rng.gen_range(0..=3),
            max_degree: rng.gen_range(0..=1),
            max_exponent: rng.gen_range(1..=2),
        };
        random_koszul(r, &fs, params, seed).unwrap()
    };
    // bare modules get a random extra relation, still killed by a power of z
    let extra: Vec<Vec<Poly<Rational>>> = if dim == 0 && rng.gen_bool(0.5) {
        vec![(0..base.rank(0))
            .map(|_| &small_poly(r, &mut rng) * &r.parse("z").unwrap())
            .collect()]
    } else {
        Vec::new()
    };
    let z0 = cube(power + 1, &extra, &base);
    if with_u && rng.gen_bool(0.3) {
        let z1 = cube(power, &extra, &base);
        let id = subsets(base.dim())
            .map(|t| Matrix::identity(r.clone(), base.rank(t)))
            .collect();
        ResolutionInput {
            u,
            sequence,
            targets: vec![z0, z1],
            connecting: vec![id],
        }
    } else {
        ResolutionInput::cube(u, sequence, z0)
    }
}

/// A factor pair `(f, g)` of equal length for seed `seed`.
pub fn factor_pair(r: &RingRef<Rational>, seed: u64) -> (Vec<Poly<Rational>>, Vec<Poly<Rational>>) {
    const COFACTORS: &[&str] = &[
        "1",
        "x",
        "y",
        "z",
        "x - 1",
        "y + 1",
        "x*y",
        "z^2",
        "x + y + z",
        "y - z + 1",
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fs: Vec<Poly<Rational>> = if rng.gen_bool(0.6) {
        polys(r, A_SEQUENCES[rng.gen_range(0..A_SEQUENCES.len())])
    } else {
        (0..rng.gen_range(1..4))
            .map(|_| loop {
                let p = small_poly(r, &mut rng);
                if !p.is_unit() {
                    break p;
                }
            })
            .collect()
    };
    let gs = fs
        .iter()
        .map(|_| r.parse(COFACTORS[rng.gen_range(0..COFACTORS.len())]).unwrap())
        .collect();
    (fs, gs)
}
