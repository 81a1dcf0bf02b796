//! Cross-checks of the engine against the oracles and the structural
//! properties of the rings, grouped into numbered checks.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::equivariant::{classical_limit, forget_equivariance, induction_check, product_with_embeddings, torus_restriction};
use crate::error::Result;
use crate::groebner::{buchberger, std_basis, GbConfig};
use crate::oracle::{poincare_poly, quantum_pieri, schubert_dictionary, Partition, ProjectiveOracle};
use crate::poly::{parse_polynomial, Degree, Polynomial, VarKind};
use crate::presentation::{classical_relations, FlagType, Presentation};
use crate::ring::QuantumRing;

/// Outcome of one numbered check. `details` lists failures (and, for
/// passing checks, a short summary).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: u32,
    pub name: String,
    pub passed: bool,
    pub details: Vec<String>,
}

impl Check {
    fn new(id: u32, name: &str) -> Self {
        Check { id, name: name.to_string(), passed: true, details: Vec::new() }
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.passed = false;
            self.details.push(what());
        }
    }

    fn note(&mut self, s: String) {
        self.details.push(s);
    }

    fn fail_err(&mut self, context: &str, e: crate::Error) {
        self.passed = false;
        self.details.push(format!("{context}: {e}"));
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub max_n: usize,
    pub passed: bool,
    pub checks: Vec<Check>,
}

/// Runs every check on flag types with `n <= max_n` (pairing-level checks
/// stop at `n = 4`).
pub fn run_suite(max_n: usize, cfg: &GbConfig) -> VerifyReport {
    let pairing_n = max_n.min(4);
    let checks = vec![
        classical_limit_check(max_n),
        projective_check(max_n, cfg),
        projective_plane_counts(cfg),
        grassmannian_check(max_n, cfg),
        complete_flag_check(),
        grading_check(max_n),
        rank_check(max_n, cfg),
        pairing_check(pairing_n, 100, cfg),
        equivariant_check(max_n, cfg),
        structure_check(max_n, pairing_n, cfg),
    ];
    VerifyReport { max_n, passed: checks.iter().all(|c| c.passed), checks }
}

/// Relations at `q = 0` against the coefficients of `prod P_i - x^n`.
pub fn classical_limit_case(f: &FlagType) -> bool {
    let pres = Presentation::new(f, false);
    let reg = &pres.registry;
    let images: Vec<Polynomial> = (0..reg.len())
        .map(|i| match reg.var(i).kind {
            VarKind::Quantum { .. } => Polynomial::zero(reg),
            _ => Polynomial::var(reg, i),
        })
        .collect();
    let at_zero: Vec<Polynomial> = pres.relations.iter().map(|r| r.substitute(reg, &images)).collect();
    at_zero == classical_relations(f, reg)
}

pub fn classical_limit_check(max_n: usize) -> Check {
    let mut c = Check::new(1, "classical limit of the relations");
    let flags = FlagType::all_up_to(max_n);
    for f in &flags {
        c.require(classical_limit_case(f), || format!("{f}: relations at q=0 differ from prod P_i - x^n"));
    }
    c.note(format!("{} flag types", flags.len()));
    c
}

/// `NF(p^n - q) = 0` in `F_{1,n}` and `<p^i, p^j>` against the closed form
/// for `i, j < 2n`.
pub fn projective_case(n: usize, cfg: &GbConfig) -> Result<Vec<String>> {
    let ring = QuantumRing::new(&FlagType::new(&[1, n])?, false, cfg)?;
    let oracle = ProjectiveOracle::new(n);
    let mut failures = Vec::new();
    let p = ring.parse("p[1]")?;
    let q = ring.parse("q[1]")?;
    if !ring.nf(&(&p.pow(n as u32) - &q)).is_zero() {
        failures.push(format!("F_{{1,{n}}}: NF(p^{n} - q) != 0"));
    }
    for i in 0..2 * n {
        for j in 0..2 * n {
            let got = ring.pair(&p.pow(i as u32), &p.pow(j as u32))?;
            let want = match oracle.pairing(i, j) {
                Some(a) => q.pow(a as u32),
                None => Polynomial::zero(ring.registry()),
            };
            if got != want {
                failures.push(format!("F_{{1,{n}}}: <p^{i}, p^{j}> = {got}, expected {want}"));
            }
        }
    }
    Ok(failures)
}

pub fn projective_check(max_n: usize, cfg: &GbConfig) -> Check {
    let mut c = Check::new(2, "projective spaces against p^n = q");
    for n in 2..=max_n {
        match projective_case(n, cfg) {
            Ok(f) => {
                for msg in f {
                    c.require(false, || msg);
                }
            }
            Err(e) => c.fail_err(&format!("F_{{1,{n}}}"), e),
        }
    }
    c
}

/// Lines through two points, and divisor counts, in `P^2`.
pub fn projective_plane_counts(cfg: &GbConfig) -> Check {
    let mut c = Check::new(3, "enumerative counts in P^2");
    let run = |c: &mut Check| -> Result<()> {
        let ring = QuantumRing::new(&FlagType::new(&[1, 3])?, false, cfg)?;
        let line = ring.parse("p[1]")?;
        let pt = ring.parse("p[1]^2")?;
        let gw = ring.gw_3point(&pt, &pt, &line, &[1])?;
        c.require(gw.integer() == Some(1.into()), || format!("I_3,1(pt, pt, line) = {}", gw.value));
        let five = ring.divisor_count(&vec![line.clone(); 5], &[1])?;
        c.require(five.integer() == Some(1.into()), || format!("five lines, degree 1: {}", five.value));
        let eight = ring.divisor_count(&vec![line.clone(); 8], &[2])?;
        c.require(eight.integer() == Some(1.into()), || format!("eight lines, degree 2: {}", eight.value));
        Ok(())
    };
    if let Err(e) = run(&mut c) {
        c.fail_err("P^2", e);
    }
    c
}

/// Engine products `σ_1 * σ_λ` through the Giambelli dictionary against the
/// quantum Pieri rule, for one Grassmannian.
pub fn pieri_case(k: usize, n: usize, cfg: &GbConfig) -> Result<Vec<String>> {
    let ring = QuantumRing::new(&FlagType::new(&[k, n])?, false, cfg)?;
    let dict = schubert_dictionary(&ring)?;
    let class = |mu: &Partition| dict.iter().find(|(p, _)| p == mu).map(|(_, e)| e.payload().clone()).unwrap();
    let q = ring.parse("q[1]")?;
    let sigma1 = class(&Partition::new(&[1], k, n)?);
    let mut failures = Vec::new();
    for (lambda, elem) in &dict {
        let engine = ring.nf(&(&sigma1 * elem.payload()));
        let predicted = quantum_pieri(k, n, lambda)?
            .iter()
            .fold(Polynomial::zero(ring.registry()), |acc, (mu, a)| &acc + &(&q.pow(*a) * &class(mu)));
        if engine != ring.nf(&predicted) {
            failures.push(format!("Gr({k},{n}): σ1*σ{lambda} = {engine}, Pieri gives {}", ring.nf(&predicted)));
        }
    }
    Ok(failures)
}

pub fn grassmannian_check(max_n: usize, cfg: &GbConfig) -> Check {
    let mut c = Check::new(4, "Grassmannian quantum Schubert calculus");
    for n in 2..=max_n {
        for k in 1..n {
            match pieri_case(k, n, cfg) {
                Ok(f) => {
                    for msg in f {
                        c.require(false, || msg);
                    }
                }
                Err(e) => c.fail_err(&format!("Gr({k},{n})"), e),
            }
        }
    }
    if max_n >= 4 {
        let run = |c: &mut Check| -> Result<()> {
            let ring = QuantumRing::new(&FlagType::new(&[2, 4])?, false, cfg)?;
            let s2 = ring.parse_element("c[1][2]")?;
            let s11 = ring.parse_element("c[1][1]^2 - c[1][2]")?;
            let prod = s2.quantum_product(&s11)?;
            c.require(prod.payload() == &ring.parse("q[1]")?, || format!("σ2*σ11 = {prod}"));
            let four = ring.parse_element("c[1][1]")?.pow(4);
            // the q coefficient has degree 0, so it is a multiple of σ_0 = 1
            let at_q = four.payload().coeff_extract(&[1])?;
            c.require(at_q == ring.parse("2")?, || format!("coefficient of q in σ1^4 is {at_q}"));
            Ok(())
        };
        if let Err(e) = run(&mut c) {
            c.fail_err("Gr(2,4)", e);
        }
    }
    c
}

/// `Σ_m` of `F_{1,2,3}` against the Toda integrals, and rank 6.
pub fn complete_flag_check() -> Check {
    let mut c = Check::new(5, "complete flags F_{1,2,3}");
    let f = FlagType::new(&[1, 2, 3]).unwrap();
    let pres = Presentation::new(&f, false);
    let reg = &pres.registry;
    let expected = [
        "c[0][1] + c[1][1] + c[2][1]",
        "c[0][1]*c[1][1] + c[0][1]*c[2][1] + c[1][1]*c[2][1] + q[1] + q[2]",
        "c[0][1]*c[1][1]*c[2][1] + c[0][1]*q[2] + c[2][1]*q[1]",
    ];
    for (m, text) in expected.iter().enumerate() {
        let want = parse_polynomial(text, reg).unwrap();
        c.require(pres.sigma(m + 1) == want, || format!("Σ{} = {}, expected {want}", m + 1, pres.sigma(m + 1)));
    }
    match buchberger(&pres, &GbConfig::default()).and_then(|gb| std_basis(&gb)) {
        Ok(b) => c.require(b.len() == 6, || format!("rank {}", b.len())),
        Err(e) => c.fail_err("F_{1,2,3}", e),
    }
    c
}

pub fn grading_check(max_n: usize) -> Check {
    let mut c = Check::new(6, "weighted homogeneity of Σ_m");
    for f in FlagType::all_up_to(max_n) {
        let pres = Presentation::new(&f, false);
        for m in 1..=f.n() {
            let s = pres.sigma(m);
            c.require(s.weighted_degree() == Degree::Homogeneous(m as u32), || {
                format!("{f}: Σ{m} has degree {:?}", s.weighted_degree())
            });
        }
        let eq = Presentation::new(&f, true);
        for (m, r) in eq.relations.iter().enumerate() {
            c.require(r.weighted_degree() == Degree::Homogeneous(m as u32 + 1), || {
                format!("{f}: equivariant relation {} is not homogeneous", m + 1)
            });
        }
    }
    c
}

/// Rank and degree profile of the standard basis against the Gaussian
/// multinomial.
pub fn rank_case(f: &FlagType, cfg: &GbConfig) -> Result<Option<String>> {
    let pres = Presentation::new(f, false);
    let basis = std_basis(&buchberger(&pres, cfg)?)?;
    let profile: Vec<u64> = basis.degree_profile().iter().map(|&x| x as u64).collect();
    let expected = poincare_poly(f);
    Ok((basis.len() as u64 != f.rank() || profile != expected)
        .then(|| format!("{f}: rank {} profile {profile:?}, expected {} {expected:?}", basis.len(), f.rank())))
}

pub fn rank_check(max_n: usize, cfg: &GbConfig) -> Check {
    let mut c = Check::new(7, "rank and degree profile of the standard basis");
    for f in FlagType::all_up_to(max_n) {
        match rank_case(&f, cfg) {
            Ok(None) => {}
            Ok(Some(msg)) => c.require(false, || msg),
            Err(e) => c.fail_err(&f.to_string(), e),
        }
    }
    c
}

/// Pairing-table invariants, the `q = 0` slice against the classical ring,
/// and the Frobenius property, for one flag type.
pub fn pairing_case(f: &FlagType, trials: usize, cfg: &GbConfig) -> Result<Vec<String>> {
    let ring = QuantumRing::new(f, false, cfg)?;
    let table = ring.pairing_table()?;
    let mut failures = Vec::new();
    if !table.is_symmetric() {
        failures.push(format!("{f}: pairing table not symmetric"));
    }
    if !table.is_homogeneous() {
        failures.push(format!("{f}: pairing table not homogeneous"));
    }
    if !table.is_nondegenerate() {
        failures.push(format!("{f}: pairing table degenerate"));
    }
    let classical = QuantumRing::classical(f, false, cfg)?;
    let slice = table.q_zero();
    for (i, a) in table.basis.iter().enumerate() {
        for (j, b) in table.basis.iter().enumerate() {
            let want = classical.pair(a, b)?;
            if slice[i][j] != want {
                failures.push(format!("{f}: <{a}, {b}> at q=0 is {}, classical {want}", slice[i][j]));
            }
        }
    }
    if !ring.frobenius_check(trials, 0xf1a9 ^ f.rank())? {
        failures.push(format!("{f}: Frobenius property fails"));
    }
    Ok(failures)
}

pub fn pairing_check(max_n: usize, trials: usize, cfg: &GbConfig) -> Check {
    let mut c = Check::new(8, "residue pairing");
    for f in FlagType::all_up_to(max_n) {
        match pairing_case(&f, trials, cfg) {
            Ok(fails) => {
                for msg in fails {
                    c.require(false, || msg);
                }
            }
            Err(e) => c.fail_err(&f.to_string(), e),
        }
    }
    c
}

const EQUIVARIANT_FLAGS: [&[usize]; 4] = [&[1, 2], &[1, 3], &[2, 4], &[1, 2, 3]];

/// `c -> 0` reproduces the non-equivariant ring, `q -> 0` gives
/// `prod P_i(x) = x^n + c_1 x^{n-1} + ... + c_n`, and the equivariant `P^1`
/// pairing value `<a, a> = c_1`.
pub fn equivariant_check(max_n: usize, cfg: &GbConfig) -> Check {
    let mut c = Check::new(9, "equivariant specializations");
    for dims in EQUIVARIANT_FLAGS {
        let f = FlagType::new(dims).unwrap();
        if f.n() > max_n {
            continue;
        }
        let run = |c: &mut Check| -> Result<()> {
            let eq = QuantumRing::new(&f, true, cfg)?;
            let plain = QuantumRing::new(&f, false, cfg)?;
            let forgotten = forget_equivariance(&eq, cfg)?;
            c.require(forgotten.registry() == plain.registry(), || format!("{f}: c=0 registry differs"));
            c.require(forgotten.relations() == plain.relations(), || format!("{f}: c=0 relations differ"));
            c.require(forgotten.gb().generators() == plain.gb().generators(), || format!("{f}: c=0 basis differs"));
            c.require(forgotten.pairing_table()? == plain.pairing_table()?, || format!("{f}: c=0 pairing differs"));

            let limit = classical_limit(&eq, cfg)?;
            let reg = limit.registry();
            let expected: Vec<Polynomial> = classical_relations(&f, reg)
                .into_iter()
                .enumerate()
                .map(|(m, r)| {
                    let cm = reg.index_of_kind(VarKind::Equivariant { index: m + 1 }, 0).expect("parameter");
                    &r - &Polynomial::var(reg, cm)
                })
                .collect();
            c.require(limit.relations() == expected.as_slice(), || format!("{f}: q=0 relations differ"));
            Ok(())
        };
        if let Err(e) = run(&mut c) {
            c.fail_err(&f.to_string(), e);
        }
    }
    let run = |c: &mut Check| -> Result<()> {
        let ring = QuantumRing::new(&FlagType::new(&[1, 2])?, true, cfg)?;
        let a = ring.parse("c[0][1]")?;
        let got = ring.pair(&a, &a)?;
        c.require(got == ring.parse("C[1]")?, || format!("equivariant P^1: <a, a> = {got}, expected C[1]"));
        Ok(())
    };
    if let Err(e) = run(&mut c) {
        c.fail_err("equivariant P^1", e);
    }
    c
}

/// Product, restriction and induction rules.
pub fn structure_check(max_n: usize, torus_n: usize, cfg: &GbConfig) -> Check {
    let mut c = Check::new(10, "product, restriction and induction");
    if let Err(e) = product_part(&mut c, cfg) {
        c.fail_err("product", e);
    }
    for dims in EQUIVARIANT_FLAGS {
        let f = FlagType::new(dims).unwrap();
        if f.n() > torus_n {
            continue;
        }
        if let Err(e) = torus_part(&mut c, &f, cfg) {
            c.fail_err(&format!("{f} torus"), e);
        }
    }
    let mut cases = 0;
    for f in FlagType::all_up_to(max_n) {
        for j in 1..=f.l() {
            cases += 1;
            match induction_check(&f, j, Some(cfg)) {
                Ok(rep) => c.require(rep.holds, || format!("{f}: induction at q{j} fails")),
                Err(e) => c.fail_err(&format!("{f} q{j}"), e),
            }
        }
    }
    c.note(format!("{cases} induction cases"));
    c
}

fn product_part(c: &mut Check, cfg: &GbConfig) -> Result<()> {
    let p1 = QuantumRing::new(&FlagType::new(&[1, 2])?, false, cfg)?;
    let prod = product_with_embeddings(&p1, &p1)?;
    let ring = &prod.ring;
    c.require(ring.rank() == 4, || format!("F_{{1,2}} x F_{{1,2}} has rank {}", ring.rank()));
    let basis: Vec<Polynomial> = (0..p1.rank()).map(|i| p1.basis().as_polynomial(i)).collect();
    for x in &basis {
        for y in &basis {
            for x2 in &basis {
                for y2 in &basis {
                    let lhs = ring.pair(&(&prod.embed_left(x) * &prod.embed_right(x2)), &(&prod.embed_left(y) * &prod.embed_right(y2)))?;
                    let rhs = &prod.embed_left(&p1.pair(x, y)?) * &prod.embed_right(&p1.pair(x2, y2)?);
                    c.require(lhs == rhs, || format!("<{x}⊗{x2}, {y}⊗{y2}> = {lhs}, expected {rhs}"));
                }
            }
        }
    }
    let b = prod.embed_left(&p1.parse("c[1][1]")?);
    let b2 = prod.embed_right(&p1.parse("c[1][1]")?);
    let bb = ring.element(&b)?.quantum_product(&ring.element(&b2)?)?;
    c.require(bb.payload() == &(&b * &b2), || format!("(b⊗1)*(1⊗b') = {bb}"));

    let x = QuantumRing::new(&FlagType::new(&[1, 3])?, false, cfg)?;
    let pt = QuantumRing::new(&FlagType::new(&[2])?, false, cfg)?;
    let with_pt = product_with_embeddings(&x, &pt)?;
    c.require(with_pt.ring.rank() == x.rank(), || "X x pt changes the rank".into());
    for i in 0..x.rank() {
        for j in 0..x.rank() {
            let (a, b) = (x.basis().as_polynomial(i), x.basis().as_polynomial(j));
            let lhs = with_pt.ring.pair(&with_pt.embed_left(&a), &with_pt.embed_left(&b))?;
            c.require(lhs == with_pt.embed_left(&x.pair(&a, &b)?), || format!("X x pt: <{a}, {b}> = {lhs}"));
        }
    }
    Ok(())
}

fn torus_part(c: &mut Check, f: &FlagType, cfg: &GbConfig) -> Result<()> {
    let ring = QuantumRing::new(f, true, cfg)?;
    let torus = torus_restriction(&ring, cfg)?;
    let treg = torus.registry().clone();
    let images: Vec<Polynomial> = ring
        .registry()
        .vars()
        .iter()
        .map(|v| match v.kind {
            VarKind::Equivariant { index } => elementary(&torus, f.n(), index),
            _ => Polynomial::var(&treg, treg.index_of(&v.name).expect("kept variable")),
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7015 + f.rank());
    let top = ring.complex_dim();
    for _ in 0..10 {
        let (da, db) = (rng.gen_range(0..=top), rng.gen_range(0..=top));
        let a = ring.random_homogeneous(&mut rng, da);
        let b = ring.random_homogeneous(&mut rng, db);
        let ab = ring.nf(&(&a * &b));
        let (ta, tb) = (a.substitute(&treg, &images), b.substitute(&treg, &images));
        let lhs = torus.nf(&ab.substitute(&treg, &images));
        let rhs = torus.nf(&(&ta * &tb));
        c.require(lhs == rhs, || format!("{f}: restriction does not commute with a product"));
        let pl = ring.pair(&a, &b)?.substitute(&treg, &images);
        c.require(torus.pair(&ta, &tb)? == pl, || format!("{f}: restriction does not transport the pairing"));
    }
    let t: Vec<usize> = (1..=f.n()).map(|i| treg.index_of(&format!("t[{i}]")).expect("torus variable")).collect();
    for w in t.windows(2) {
        let mut perm: Vec<usize> = (0..treg.len()).collect();
        perm.swap(w[0], w[1]);
        for r in torus.relations() {
            c.require(&r.rename(&treg, &perm) == r, || format!("{f}: relation {r} not symmetric in t"));
        }
    }
    Ok(())
}

/// `e_m(t_1, ..., t_n)` over the registry of `ring`, by expanding
/// `prod (1 + t_i)` degree by degree.
fn elementary(ring: &Arc<QuantumRing>, n: usize, m: usize) -> Polynomial {
    let reg = ring.registry();
    let mut e = vec![Polynomial::one(reg)];
    for i in 1..=n {
        let t = Polynomial::var(reg, reg.index_of(&format!("t[{i}]")).expect("torus variable"));
        let mut next = e.clone();
        next.push(Polynomial::zero(reg));
        for k in 1..next.len() {
            next[k] = &e.get(k).cloned().unwrap_or_else(|| Polynomial::zero(reg)) + &(&t * &e[k - 1]);
        }
        e = next;
    }
    e[m].clone()
}
