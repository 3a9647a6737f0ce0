//! Buchberger's algorithm on vectors of polynomials under a position-over-term
//! order. Lower positions dominate, so the leading term of a vector lives in its
//! first nonzero component.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::arith::{Field, Monomial, MonomialOrder};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term<F> {
    pub pos: u32,
    pub mono: Monomial,
    pub coeff: F,
}

/// Sparse vector, terms strictly decreasing in the module order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Vector<F> {
    pub terms: Vec<Term<F>>,
}

impl<F> Default for Vector<F> {
    fn default() -> Self {
        Vector { terms: Vec::new() }
    }
}

impl<F: Field> Vector<F> {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term<F>> {
        self.terms.first()
    }

    pub fn monic(mut self) -> Self {
        if let Some(lc) = self.terms.first().map(|t| t.coeff.clone()) {
            if !lc.is_one() {
                let inv = lc.inv();
                for t in &mut self.terms {
                    t.coeff = t.coeff.mul(&inv);
                }
            }
        }
        self
    }
}

#[inline]
pub(crate) fn cmp_pos_mono(order: MonomialOrder, p1: u32, m1: &Monomial, p2: u32, m2: &Monomial) -> Ordering {
    p2.cmp(&p1).then_with(|| order.cmp(m1, m2))
}

/// `a - c * m * b`.
pub(crate) fn sub_scaled<F: Field>(
    order: MonomialOrder,
    a: &Vector<F>,
    c: &F,
    m: &Monomial,
    b: &Vector<F>,
) -> Vector<F> {
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let mut i = 0;
    let mut scaled = b.terms.iter().map(|t| Term {
        pos: t.pos,
        mono: t.mono.mul(m),
        coeff: t.coeff.mul(c),
    });
    let mut next_b = scaled.next();
    while i < a.terms.len() {
        let Some(tb) = next_b.as_ref() else { break };
        let ta = &a.terms[i];
        match cmp_pos_mono(order, ta.pos, &ta.mono, tb.pos, &tb.mono) {
            Ordering::Greater => {
                out.push(ta.clone());
                i += 1;
            }
            Ordering::Less => {
                let tb = next_b.take().expect("peeked");
                out.push(Term {
                    pos: tb.pos,
                    mono: tb.mono,
                    coeff: tb.coeff.neg(),
                });
                next_b = scaled.next();
            }
            Ordering::Equal => {
                let tb = next_b.take().expect("peeked");
                let cc = ta.coeff.sub(&tb.coeff);
                if !cc.is_zero() {
                    out.push(Term {
                        pos: ta.pos,
                        mono: ta.mono.clone(),
                        coeff: cc,
                    });
                }
                i += 1;
                next_b = scaled.next();
            }
        }
    }
    out.extend(a.terms[i..].iter().cloned());
    while let Some(tb) = next_b {
        out.push(Term {
            pos: tb.pos,
            mono: tb.mono,
            coeff: tb.coeff.neg(),
        });
        next_b = scaled.next();
    }
    Vector { terms: out }
}

/// How far a reduction should go.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Reduce {
    /// Only the leading term is reduced repeatedly.
    Top,
    /// Every term is reduced.
    Full,
    /// Every term in positions below the limit is reduced; stops at the first term beyond it.
    Below(u32),
}

pub(crate) struct Reduction<F> {
    pub remainder: Vector<F>,
    /// Terms not examined (only for `Reduce::Below`): everything from the first term at
    /// a position `>=` the limit onwards.
    pub rest: Vector<F>,
    /// Quotient terms per basis element, when tracking was requested.
    pub quotients: Option<Vec<Vec<(Monomial, F)>>>,
}

/// Index of basis elements by leading position, for reducer lookup.
pub(crate) struct LeadIndex {
    by_pos: Vec<Vec<usize>>,
}

impl LeadIndex {
    pub fn new<F: Field>(basis: &[Vector<F>]) -> Self {
        let mut by_pos: Vec<Vec<usize>> = Vec::new();
        for (i, b) in basis.iter().enumerate() {
            if let Some(t) = b.lead() {
                let p = t.pos as usize;
                if by_pos.len() <= p {
                    by_pos.resize(p + 1, Vec::new());
                }
                by_pos[p].push(i);
            }
        }
        LeadIndex { by_pos }
    }

    fn push(&mut self, pos: u32, idx: usize) {
        let p = pos as usize;
        if self.by_pos.len() <= p {
            self.by_pos.resize(p + 1, Vec::new());
        }
        self.by_pos[p].push(idx);
    }

    fn find<F: Field>(&self, basis: &[Vector<F>], pos: u32, mono: &Monomial) -> Option<usize> {
        self.by_pos.get(pos as usize)?.iter().copied().find(|&i| {
            let l = basis[i].lead().expect("nonzero basis element");
            l.mono.divides(mono)
        })
    }
}

pub(crate) fn reduce<F: Field>(
    order: MonomialOrder,
    f: &Vector<F>,
    basis: &[Vector<F>],
    index: &LeadIndex,
    mode: Reduce,
    track: bool,
) -> Reduction<F> {
    let mut quotients = track.then(|| vec![Vec::new(); basis.len()]);
    let mut p = f.clone();
    let mut rem: Vec<Term<F>> = Vec::new();
    // `p` holds the terms not yet examined
    loop {
        let Some(lt) = p.terms.first().cloned() else { break };
        if let Reduce::Below(limit) = mode {
            if lt.pos >= limit {
                break;
            }
        }
        match index.find(basis, lt.pos, &lt.mono) {
            Some(i) => {
                let g = &basis[i];
                let gl = g.lead().expect("nonzero");
                let m = gl.mono.quotient(&lt.mono);
                let c = lt.coeff.mul(&gl.coeff.inv());
                p = sub_scaled(order, &p, &c, &m, g);
                if let Some(q) = quotients.as_mut() {
                    q[i].push((m, c));
                }
            }
            None => {
                if let Reduce::Top = mode {
                    break;
                }
                rem.push(p.terms.remove(0));
            }
        }
    }
    let (remainder, rest) = match mode {
        Reduce::Top => {
            rem.extend(p.terms);
            (Vector { terms: rem }, Vector::default())
        }
        Reduce::Full => (Vector { terms: rem }, Vector::default()),
        Reduce::Below(_) => (Vector { terms: rem }, p),
    };
    Reduction {
        remainder,
        rest,
        quotients,
    }
}

struct Pair {
    i: usize,
    j: usize,
    pos: u32,
    lcm: Monomial,
}

/// Computes the reduced Gröbner basis, sorted increasingly by leading term.
///
/// `product_criterion` may only be enabled for ideals (one position).
pub(crate) fn groebner<F: Field>(
    order: MonomialOrder,
    gens: Vec<Vector<F>>,
    product_criterion: bool,
) -> Vec<Vector<F>> {
    let mut basis: Vec<Vector<F>> = Vec::new();
    let mut index = LeadIndex { by_pos: Vec::new() };
    let mut pairs: Vec<Pair> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let mut gens: Vec<Vector<F>> = gens.into_iter().filter(|g| !g.is_zero()).collect();
    // small leading terms first: fewer reductions of the later inputs
    gens.sort_by(|a, b| {
        let (la, lb) = (a.lead().unwrap(), b.lead().unwrap());
        cmp_pos_mono(order, la.pos, &la.mono, lb.pos, &lb.mono)
    });

    let add = |h: Vector<F>,
               basis: &mut Vec<Vector<F>>,
               index: &mut LeadIndex,
               pairs: &mut Vec<Pair>,
               pending: &mut HashSet<(usize, usize)>| {
        let h = h.monic();
        let t = basis.len();
        let hl = h.lead().expect("nonzero").clone();
        for (i, b) in basis.iter().enumerate() {
            let bl = b.lead().expect("nonzero");
            if bl.pos == hl.pos {
                pairs.push(Pair {
                    i,
                    j: t,
                    pos: hl.pos,
                    lcm: bl.mono.lcm(&hl.mono),
                });
                pending.insert((i, t));
            }
        }
        index.push(hl.pos, t);
        basis.push(h);
    };

    for g in gens {
        let r = reduce(order, &g, &basis, &index, Reduce::Top, false).remainder;
        if !r.is_zero() {
            add(r, &mut basis, &mut index, &mut pairs, &mut pending);
        }
    }

    while !pairs.is_empty() {
        // normal strategy: smallest lcm first, ties by position then indices
        let mut best = 0;
        for k in 1..pairs.len() {
            let (a, b) = (&pairs[k], &pairs[best]);
            let ord = a
                .lcm
                .degree()
                .cmp(&b.lcm.degree())
                .then_with(|| cmp_pos_mono(order, a.pos, &a.lcm, b.pos, &b.lcm))
                .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)));
            if ord == Ordering::Less {
                best = k;
            }
        }
        let pair = pairs.swap_remove(best);
        pending.remove(&(pair.i, pair.j));
        let (gi, gj) = (&basis[pair.i], &basis[pair.j]);
        let (li, lj) = (gi.lead().unwrap(), gj.lead().unwrap());

        if product_criterion && li.mono.coprime(&lj.mono) {
            continue;
        }
        // chain criterion
        let chain = (0..basis.len()).any(|k| {
            if k == pair.i || k == pair.j {
                return false;
            }
            let lk = basis[k].lead().unwrap();
            lk.pos == pair.pos
                && lk.mono.divides(&pair.lcm)
                && !pending.contains(&(pair.i.min(k), pair.i.max(k)))
                && !pending.contains(&(pair.j.min(k), pair.j.max(k)))
        });
        if chain {
            continue;
        }

        let mi = li.mono.quotient(&pair.lcm);
        let mj = lj.mono.quotient(&pair.lcm);
        let one = li.coeff.one_like();
        // both are monic: S = mi*gi - mj*gj
        let zero = Vector::default();
        let si = sub_scaled(order, &zero, &one.neg(), &mi, gi);
        let s = sub_scaled(order, &si, &one, &mj, gj);
        let r = reduce(order, &s, &basis, &index, Reduce::Top, false).remainder;
        if !r.is_zero() {
            add(r, &mut basis, &mut index, &mut pairs, &mut pending);
        }
    }

    minimize_and_reduce(order, basis)
}

fn minimize_and_reduce<F: Field>(order: MonomialOrder, basis: Vec<Vector<F>>) -> Vec<Vector<F>> {
    // drop elements whose leading term is divisible by another's (keep the earliest of equal ones)
    let mut keep: Vec<Vector<F>> = Vec::new();
    for (i, b) in basis.iter().enumerate() {
        let bl = b.lead().unwrap();
        let redundant = basis.iter().enumerate().any(|(j, c)| {
            if i == j {
                return false;
            }
            let cl = c.lead().unwrap();
            cl.pos == bl.pos && cl.mono.divides(&bl.mono) && (cl.mono != bl.mono || j < i)
        });
        if !redundant {
            keep.push(b.clone());
        }
    }
    keep.sort_by(|a, b| {
        let (la, lb) = (a.lead().unwrap(), b.lead().unwrap());
        cmp_pos_mono(order, la.pos, &la.mono, lb.pos, &lb.mono)
    });
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Vector<F>> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| v.clone())
            .collect();
        let idx = LeadIndex::new(&others);
        let r = reduce(order, &keep[i], &others, &idx, Reduce::Full, false).remainder;
        out.push(r.monic());
    }
    out
}
