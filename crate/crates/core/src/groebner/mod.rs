//! Reduced Gröbner bases of the relation ideal, normal forms, and the
//! standard-monomial basis of the quotient over the parameter ring.
//!
//! Quantum and equivariant parameters are ordinary variables in the lowest
//! blocks of the monomial order, so a reduced basis whose leading monomials
//! are Chern-only exhibits the quotient as a free module over
//! `Q[q, c]` with the standard monomials as basis.

pub mod cache;

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{cmp_monomials, Coeff, Monomial, Polynomial, Term, VarRegistry};

pub const ORDER_TAG: &str = "block-wgrevlex";

/// Caps that turn runaway computations into a clean error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GbConfig {
    pub max_generators: usize,
    pub max_terms: usize,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig { max_generators: 10_000, max_terms: 1_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    registry: Arc<VarRegistry>,
    order_tag: String,
    /// Monic, sorted by increasing leading monomial.
    generators: Vec<Polynomial>,
}

impl GroebnerBasis {
    /// Wraps generators that are already a reduced basis (e.g. loaded from
    /// the cache or assembled from bases in disjoint variables).
    pub fn from_reduced(registry: &Arc<VarRegistry>, mut generators: Vec<Polynomial>) -> Self {
        generators.retain(|g| !g.is_zero());
        let mut generators: Vec<Polynomial> = generators.iter().map(Polynomial::monic).collect();
        generators.sort_by(|a, b| cmp_monomials(registry, a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        GroebnerBasis { registry: registry.clone(), order_tag: ORDER_TAG.to_string(), generators }
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.registry
    }

    pub fn order_tag(&self) -> &str {
        &self.order_tag
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.generators.iter().map(|g| g.leading_monomial().expect("nonzero generator"))
    }

    /// Leading monomials that involve quantum or equivariant variables.
    pub fn parametric_leads(&self) -> Vec<Polynomial> {
        self.generators
            .iter()
            .filter(|g| !g.leading_monomial().unwrap().is_chern_pure(&self.registry))
            .map(|g| Polynomial::monomial(&self.registry, g.leading_monomial().unwrap().clone(), Coeff::one()))
            .collect()
    }

    /// Normal form; panics if `p` lives over another registry.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        assert!(crate::poly::same_registry(p.registry(), &self.registry), "registry mismatch");
        let basis: Vec<&Polynomial> = self.generators.iter().collect();
        reduce_full(p, &basis, usize::MAX).expect("no term cap")
    }

    /// Generators scaled to coprime integer coefficients with positive
    /// leading coefficient.
    pub fn integer_generators(&self) -> Vec<Polynomial> {
        self.generators.iter().map(Polynomial::primitive).collect()
    }

    /// Checks the reduced-basis and Buchberger conditions on the given
    /// generator pairs.
    pub fn check_pairs(&self, pairs: &[(usize, usize)]) -> bool {
        let basis: Vec<&Polynomial> = self.generators.iter().collect();
        pairs.iter().all(|&(i, j)| {
            let s = s_polynomial(&self.generators[i], &self.generators[j]);
            reduce_full(&s, &basis, usize::MAX).map(|r| r.is_zero()).unwrap_or(false)
        })
    }

    pub fn is_reduced(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, g)| {
            g.leading_coeff().is_some_and(|c| c.is_one())
                && self.generators.iter().enumerate().all(|(j, h)| {
                    i == j || g.terms().iter().all(|(m, _)| !h.leading_monomial().unwrap().divides(m))
                })
        })
    }
}

/// Normal form of `x` with respect to `gb`.
pub fn normal_form(x: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    if !crate::poly::same_registry(x.registry(), gb.registry()) {
        return Err(crate::poly::PolyError::RegistryMismatch.into());
    }
    Ok(gb.reduce(x))
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading_term().unwrap();
    let (gm, gc) = g.leading_term().unwrap();
    let lcm = fm.lcm(gm);
    let a = f.mul_term(&fm.quotient_of(&lcm), &gc.clone());
    let b = g.mul_term(&gm.quotient_of(&lcm), &fc.clone());
    &a - &b
}

/// Merges two ascending term lists, the second scaled by `factor`.
fn merge_ascending(reg: &VarRegistry, a: Vec<Term>, b: impl Iterator<Item = Term>, factor: &Coeff) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + 8);
    let mut a = a.into_iter().peekable();
    let mut b = b.peekable();
    loop {
        match (a.peek(), b.peek()) {
            (Some(x), Some(y)) => match cmp_monomials(reg, &x.0, &y.0) {
                Ordering::Less => out.push(a.next().unwrap()),
                Ordering::Greater => {
                    let (m, c) = b.next().unwrap();
                    out.push((m, c * factor));
                }
                Ordering::Equal => {
                    let (m, c) = a.next().unwrap();
                    let (_, d) = b.next().unwrap();
                    let s = c + d * factor;
                    if !s.is_zero() {
                        out.push((m, s));
                    }
                }
            },
            (Some(_), None) => out.push(a.next().unwrap()),
            (None, Some(_)) => {
                let (m, c) = b.next().unwrap();
                out.push((m, c * factor));
            }
            (None, None) => break,
        }
    }
    out
}

/// Full reduction of `p` by `basis`. Work happens on an ascending term list
/// so the current leading term sits at the end.
fn reduce_full(p: &Polynomial, basis: &[&Polynomial], max_terms: usize) -> Result<Polynomial> {
    let reg = p.registry().clone();
    let mut cur: Vec<Term> = p.terms().iter().rev().cloned().collect();
    let mut rem: Vec<Term> = Vec::new();
    while let Some((m, c)) = cur.pop() {
        match basis.iter().find(|g| g.leading_monomial().unwrap().divides(&m)) {
            Some(g) => {
                let (gm, gc) = g.leading_term().unwrap();
                let shift = gm.quotient_of(&m);
                let factor = -(c / gc);
                let tail = g.terms()[1..].iter().rev().map(|(t, d)| (t.mul(&shift), d.clone()));
                cur = merge_ascending(&reg, cur, tail, &factor);
                if cur.len() > max_terms {
                    return Err(Error::ResourceLimit(format!("intermediate polynomial exceeds {max_terms} terms")));
                }
            }
            None => rem.push((m, c)),
        }
    }
    Ok(Polynomial::from_sorted(&reg, rem))
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    degree: u32,
}

struct Engine<'a> {
    reg: Arc<VarRegistry>,
    cfg: &'a GbConfig,
    polys: Vec<Polynomial>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Engine<'_> {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().unwrap()
    }

    fn active_basis(&self) -> Vec<&Polynomial> {
        self.polys.iter().zip(&self.active).filter(|(_, a)| **a).map(|(p, _)| p).collect()
    }

    /// Gebauer–Möller installation of a new generator.
    fn update(&mut self, h: Polynomial) -> Result<()> {
        if h.len() > self.cfg.max_terms {
            return Err(Error::ResourceLimit(format!("generator exceeds {} terms", self.cfg.max_terms)));
        }
        let hi = self.polys.len();
        self.polys.push(h);
        self.active.push(false);
        if self.polys.len() > self.cfg.max_generators {
            return Err(Error::ResourceLimit(format!("more than {} generators", self.cfg.max_generators)));
        }
        let hm = self.lm(hi).clone();
        let reg = self.reg.clone();

        let mut candidates: VecDeque<(usize, Monomial)> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| (g, hm.lcm(self.lm(g))))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while let Some((g, lcm)) = candidates.pop_front() {
            let coprime = hm.is_coprime(self.lm(g));
            let dominated = candidates.iter().chain(kept.iter()).any(|(_, other)| other.divides(&lcm));
            if coprime || !dominated {
                kept.push((g, lcm));
            }
        }
        let new_pairs: Vec<Pair> = kept
            .into_iter()
            .filter(|(g, _)| !hm.is_coprime(self.lm(*g)))
            .map(|(g, lcm)| Pair { i: g, j: hi, degree: lcm.weighted_degree(&reg), lcm })
            .collect();

        // drop old pairs whose lcm is strictly divisible through h
        let polys = &self.polys;
        self.pairs.retain(|p| {
            let lm = |i: usize| polys[i].leading_monomial().unwrap();
            !(hm.divides(&p.lcm) && lm(p.i).lcm(&hm) != p.lcm && lm(p.j).lcm(&hm) != p.lcm)
        });
        self.pairs.extend(new_pairs);

        for g in 0..hi {
            if self.active[g] && hm.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
        self.active[hi] = true;
        Ok(())
    }

    /// Normal strategy: smallest weighted degree, then smallest lcm.
    fn select(&mut self) -> Option<Pair> {
        let reg = &self.reg;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.degree
                    .cmp(&b.degree)
                    .then_with(|| cmp_monomials(reg, &a.lcm, &b.lcm))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Gröbner basis of the ideal generated by `input`.
pub fn groebner_basis(reg: &Arc<VarRegistry>, input: &[Polynomial], cfg: &GbConfig) -> Result<GroebnerBasis> {
    let mut queue: Vec<Polynomial> = input.iter().filter(|p| !p.is_zero()).map(Polynomial::monic).collect();
    queue.sort_by(|a, b| {
        let da = a.leading_monomial().unwrap().weighted_degree(reg);
        let db = b.leading_monomial().unwrap().weighted_degree(reg);
        da.cmp(&db).then_with(|| cmp_monomials(reg, a.leading_monomial().unwrap(), b.leading_monomial().unwrap()))
    });
    queue.reverse();
    let mut engine = Engine { reg: reg.clone(), cfg, polys: Vec::new(), active: Vec::new(), pairs: Vec::new() };

    loop {
        // interleave inputs with S-pairs by degree
        let next_input_deg = queue.last().map(|p| p.leading_monomial().unwrap().weighted_degree(reg));
        let next_pair_deg = engine.pairs.iter().map(|p| p.degree).min();
        let candidate = match (next_input_deg, next_pair_deg) {
            (None, None) => break,
            (Some(di), Some(dp)) if dp < di => {
                let pair = engine.select().unwrap();
                s_polynomial(&engine.polys[pair.i], &engine.polys[pair.j])
            }
            (Some(_), _) => queue.pop().unwrap(),
            (None, Some(_)) => {
                let pair = engine.select().unwrap();
                s_polynomial(&engine.polys[pair.i], &engine.polys[pair.j])
            }
        };
        let h = reduce_full(&candidate, &engine.active_basis(), cfg.max_terms)?;
        if !h.is_zero() {
            engine.update(h.monic())?;
        }
    }

    // interreduce the minimal basis
    let minimal: Vec<Polynomial> = engine.active_basis().into_iter().cloned().collect();
    let mut reduced = Vec::with_capacity(minimal.len());
    for (i, g) in minimal.iter().enumerate() {
        let others: Vec<&Polynomial> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p).collect();
        let (m, c) = g.leading_term().unwrap().clone();
        let tail = Polynomial::from_sorted(reg, g.terms()[1..].to_vec());
        let tail = reduce_full(&tail, &others, cfg.max_terms)?;
        reduced.push(&Polynomial::monomial(reg, m, c) + &tail);
    }
    Ok(GroebnerBasis::from_reduced(reg, reduced))
}

/// Gröbner basis of a presentation's relations.
pub fn buchberger(pres: &crate::presentation::Presentation, cfg: &GbConfig) -> Result<GroebnerBasis> {
    groebner_basis(&pres.registry, &pres.relations, cfg)
}

/// Chern-only monomials outside the leading-monomial ideal, ascending in the
/// monomial order (hence grouped by weighted degree).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StdBasis {
    registry: Arc<VarRegistry>,
    monomials: Vec<Monomial>,
    degrees: Vec<u32>,
    index: HashMap<Monomial, usize>,
}

impl StdBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn monomial(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn as_polynomial(&self, i: usize) -> Polynomial {
        Polynomial::monomial(&self.registry, self.monomials[i].clone(), Coeff::one())
    }

    /// Number of basis monomials in each weighted degree `0..=top`.
    pub fn degree_profile(&self) -> Vec<usize> {
        let top = self.degrees.iter().copied().max().unwrap_or(0) as usize;
        let mut profile = vec![0; top + 1];
        for &d in &self.degrees {
            profile[d as usize] += 1;
        }
        profile
    }

    pub fn top_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Expands a normal form as `Σ coeff_β m_β`, with coefficients in the
    /// parameter ring (same registry, no Chern variables). `None` when a
    /// term is not a standard monomial times a parameter monomial.
    pub fn coordinates(&self, nf: &Polynomial) -> Option<Vec<Polynomial>> {
        let mut buckets: Vec<Vec<Term>> = vec![Vec::new(); self.len()];
        for (m, c) in nf.terms() {
            let (chern, rest) = m.split(&self.registry);
            let idx = self.index_of(&chern)?;
            buckets[idx].push((rest, c.clone()));
        }
        Some(buckets.into_iter().map(|t| Polynomial::from_terms(&self.registry, t)).collect())
    }

    /// `Σ coeffs[β] m_β`.
    pub fn combine(&self, coeffs: &[Polynomial]) -> Polynomial {
        let mut acc = Polynomial::zero(&self.registry);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &c.mul_term(&self.monomials[i], &Coeff::one());
            }
        }
        acc
    }
}

pub fn std_basis(gb: &GroebnerBasis) -> Result<StdBasis> {
    let reg = gb.registry().clone();
    let chern: Vec<usize> = reg.chern_range().collect();
    let leads: Vec<&Monomial> = gb.leading_monomials().filter(|m| m.is_chern_pure(&reg)).collect();
    let mut bounds = Vec::with_capacity(chern.len());
    for &v in &chern {
        let pure = leads
            .iter()
            .filter(|m| m.exps().iter().enumerate().all(|(i, &e)| i == v || e == 0))
            .map(|m| m.exp(v))
            .min();
        match pure {
            Some(e) => bounds.push(e),
            None => return Err(Error::InfiniteStaircase(reg.var(v).name.clone())),
        }
    }
    let mut monomials = Vec::new();
    let mut current = Monomial::one(reg.len());
    fn walk(
        pos: usize,
        chern: &[usize],
        bounds: &[u16],
        leads: &[&Monomial],
        current: &mut Monomial,
        out: &mut Vec<Monomial>,
    ) {
        if leads.iter().any(|l| l.divides(current)) {
            return;
        }
        if pos == chern.len() {
            out.push(current.clone());
            return;
        }
        for e in 0..bounds[pos] {
            current.set_exp(chern[pos], e);
            walk(pos + 1, chern, bounds, leads, current, out);
        }
        current.set_exp(chern[pos], 0);
    }
    walk(0, &chern, &bounds, &leads, &mut current, &mut monomials);
    monomials.sort_by(|a, b| cmp_monomials(&reg, a, b));
    let degrees = monomials.iter().map(|m| m.weighted_degree(&reg)).collect();
    let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    Ok(StdBasis { registry: reg, monomials, degrees, index })
}
