//! Subcommand implementations. Each returns a JSON report plus the
//! polynomials shown in LaTeX output.

use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use qflag_core::equivariant::{induction_check, product_ring, specialize_params};
use qflag_core::groebner::cache::GbCache;
use qflag_core::poly::Polynomial;
use qflag_core::verify::run_suite;
use qflag_core::{buchberger, FlagType, GbConfig, GwValue, Presentation, QuantumRing, ResidueMethod};

use crate::{Cli, Command, FlagArgs, GlobalArgs};

#[derive(Debug)]
pub enum CliError {
    Core(qflag_core::Error),
    Usage(String),
}

impl From<qflag_core::Error> for CliError {
    fn from(e: qflag_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(s) => write!(f, "{s}"),
        }
    }
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code().as_str(),
            CliError::Usage(_) => "usage",
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "error": { "code": self.code(), "message": self.to_string() } })
    }
}

/// A JSON report and `(label, polynomial)` pairs for LaTeX rendering.
pub struct Report {
    pub json: Value,
    pub latex: Vec<(String, Polynomial)>,
}

pub struct Outcome {
    pub report: Report,
    pub passed: bool,
}

impl Outcome {
    fn ok(json: Value, latex: Vec<(String, Polynomial)>) -> Self {
        Outcome { report: Report { json, latex }, passed: true }
    }
}

type CliResult<T> = Result<T, CliError>;

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let g = &cli.global;
    let cfg = GbConfig { max_generators: g.max_generators, max_terms: g.max_terms };
    match &cli.command {
        Command::Present(flag) => present(g, &cfg, flag),
        Command::Multiply { flag, a, b } => {
            let ring = build_ring(g, &cfg, flag)?;
            let (pa, pb) = (ring.parse(a)?, ring.parse(b)?);
            let product = ring.element(&pa)?.quantum_product(&ring.element(&pb)?)?.into_payload();
            let coords = coordinates_json(&ring, &product);
            let json = json!({
                "dims": flag.dims,
                "equivariant": flag.equivariant,
                "a": pa.to_string(),
                "b": pb.to_string(),
                "product": product.to_string(),
                "coordinates": coords,
            });
            Ok(Outcome::ok(json, vec![("a * b".into(), product)]))
        }
        Command::Pair { flag, a, b, table } => {
            let ring = build_ring(g, &cfg, flag)?;
            if *table {
                return pairing_table(&ring, flag);
            }
            let (Some(a), Some(b)) = (a, b) else {
                return Err(CliError::Usage("--a and --b are required without --table".into()));
            };
            let (pa, pb) = (ring.parse(a)?, ring.parse(b)?);
            let value = ring.pair(&pa, &pb)?;
            let json = json!({
                "dims": flag.dims,
                "equivariant": flag.equivariant,
                "a": pa.to_string(),
                "b": pb.to_string(),
                "pairing": value.to_string(),
                "residue_method": ring.residue_functional()?.method.to_string(),
            });
            Ok(Outcome::ok(json, vec![("\\langle a, b \\rangle".into(), value)]))
        }
        Command::Gw { flag, a, b, c, degree } => {
            let ring = build_ring(g, &cfg, flag)?;
            let (pa, pb, pc) = (ring.parse(a)?, ring.parse(b)?, ring.parse(c)?);
            let value = ring.gw_3point(&pa, &pb, &pc, degree)?;
            let mut json = gw_json(&value);
            json["dims"] = json!(flag.dims);
            json["classes"] = json!([pa.to_string(), pb.to_string(), pc.to_string()]);
            Ok(Outcome::ok(json, vec![("I_{3,d}".into(), value.value)]))
        }
        Command::CountDivisors { flag, classes, degree } => {
            let ring = build_ring(g, &cfg, flag)?;
            let texts = expand_repeats(classes)?;
            let polys = texts.iter().map(|t| ring.parse(t)).collect::<Result<Vec<_>, _>>()?;
            let value = ring.divisor_count(&polys, degree)?;
            let mut json = gw_json(&value);
            json["dims"] = json!(flag.dims);
            json["classes"] = json!(polys.iter().map(|p| p.to_string()).collect::<Vec<_>>());
            Ok(Outcome::ok(json, vec![("N_d".into(), value.value)]))
        }
        Command::Verify { max_n } => {
            check_n(g, *max_n)?;
            let report = run_suite(*max_n, &cfg);
            let passed = report.passed;
            let json = serde_json::to_value(&report).expect("report serializes");
            Ok(Outcome { report: Report { json, latex: Vec::new() }, passed })
        }
        Command::Specialize { flag, set } => {
            let ring = build_ring(g, &cfg, flag)?;
            let assignments = set.iter().map(|s| parse_assignment(s)).collect::<CliResult<Vec<_>>>()?;
            let specialized = specialize_params(&ring, &assignments, &[], &cfg)?;
            apply_residue_method(g, &specialized)?;
            let mut json = ring_json(&specialized);
            json["dims"] = json!(flag.dims);
            json["assignments"] = json!(assignments.iter().map(|(k, v)| json!({"name": k, "value": v})).collect::<Vec<_>>());
            Ok(Outcome::ok(json, relations_latex(&specialized)))
        }
        Command::Product { flag, with } => {
            let left = build_ring(g, &cfg, flag)?;
            let right = build_ring(g, &cfg, &FlagArgs { dims: with.clone(), equivariant: flag.equivariant })?;
            let ring = product_ring(&left, &right)?;
            apply_residue_method(g, &ring)?;
            let mut json = ring_json(&ring);
            json["factors"] = json!([flag.dims, with]);
            Ok(Outcome::ok(json, relations_latex(&ring)))
        }
        Command::InductionCheck { dims, zero } => {
            let f = flag_type(g, dims)?;
            let j = parse_quantum_index(zero)?;
            let report = induction_check(&f, j, Some(&cfg))?;
            let passed = report.holds;
            let json = serde_json::to_value(&report).expect("report serializes");
            Ok(Outcome { report: Report { json, latex: Vec::new() }, passed })
        }
    }
}

fn check_n(g: &GlobalArgs, n: usize) -> CliResult<()> {
    if n > g.n_limit {
        return Err(qflag_core::Error::ResourceLimit(format!("n = {n} exceeds --n-limit {}", g.n_limit)).into());
    }
    Ok(())
}

fn flag_type(g: &GlobalArgs, dims: &[usize]) -> CliResult<FlagType> {
    let f = FlagType::new(dims)?;
    check_n(g, f.n())?;
    Ok(f)
}

fn apply_residue_method(g: &GlobalArgs, ring: &QuantumRing) -> CliResult<()> {
    let method: ResidueMethod = g
        .residue_method
        .parse()
        .map_err(|_| CliError::Usage(format!("unknown residue method `{}`", g.residue_method)))?;
    ring.use_residue_method(method)?;
    Ok(())
}

/// Builds the ring of a flag type, reading and writing the basis cache when
/// a cache directory is configured.
fn build_ring(g: &GlobalArgs, cfg: &GbConfig, flag: &FlagArgs) -> CliResult<Arc<QuantumRing>> {
    let f = flag_type(g, &flag.dims)?;
    let pres = Presentation::new(&f, flag.equivariant);
    let gb = match &g.cache_dir {
        Some(dir) => GbCache::new(dir).get_or_compute(&pres, cfg)?.0,
        None => buchberger(&pres, cfg)?,
    };
    let ring = QuantumRing::from_presentation(&pres, gb)?;
    apply_residue_method(g, &ring)?;
    Ok(ring)
}

fn present(g: &GlobalArgs, cfg: &GbConfig, flag: &FlagArgs) -> CliResult<Outcome> {
    let ring = build_ring(g, cfg, flag)?;
    let f = FlagType::new(&flag.dims)?;
    let pres = Presentation::new(&f, flag.equivariant);
    let mut json = ring_json(&ring);
    let p = serde_json::to_value(pres.to_json()).expect("presentation serializes");
    for key in ["dims", "blocks", "n", "complex_dim", "equivariant", "chern_polys", "numerator", "denominator"] {
        json[key] = p[key].clone();
    }
    json["degree_profile"] = json!(ring.basis().degree_profile());
    Ok(Outcome::ok(json, relations_latex(&ring)))
}

fn ring_json(ring: &QuantumRing) -> Value {
    let strings = |ps: &[Polynomial]| ps.iter().map(|p| p.to_string()).collect::<Vec<_>>();
    let basis: Vec<String> = (0..ring.rank()).map(|i| ring.basis().as_polynomial(i).to_string()).collect();
    json!({
        "variables": ring.registry().vars().iter().map(|v| json!({"name": v.name, "weight": v.weight})).collect::<Vec<_>>(),
        "relations": strings(ring.relations()),
        "groebner_basis": strings(ring.gb().generators()),
        "standard_basis": basis,
        "rank": ring.rank(),
        "divisors": ring.divisors().iter().map(|d| json!({"name": d.name, "class": d.class.to_string()})).collect::<Vec<_>>(),
    })
}

fn relations_latex(ring: &QuantumRing) -> Vec<(String, Polynomial)> {
    ring.relations().iter().enumerate().map(|(i, r)| (format!("r_{{{}}}", i + 1), r.clone())).collect()
}

fn coordinates_json(ring: &QuantumRing, nf: &Polynomial) -> Vec<Value> {
    ring.coordinates(nf)
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| json!({"basis": ring.basis().as_polynomial(i).to_string(), "coefficient": c.to_string()}))
        .collect()
}

fn pairing_table(ring: &QuantumRing, flag: &FlagArgs) -> CliResult<Outcome> {
    let table = ring.pairing_table()?;
    let strings = |ps: &[Polynomial]| ps.iter().map(|p| p.to_string()).collect::<Vec<_>>();
    let json = json!({
        "dims": flag.dims,
        "equivariant": flag.equivariant,
        "basis": strings(&table.basis),
        "degrees": table.degrees,
        "entries": table.entries.iter().map(|row| strings(row)).collect::<Vec<_>>(),
        "residues": strings(&table.residues),
        "symmetric": table.is_symmetric(),
        "homogeneous": table.is_homogeneous(),
        "nondegenerate": table.is_nondegenerate(),
        "residue_method": ring.residue_functional()?.method.to_string(),
    });
    Ok(Outcome::ok(json, Vec::new()))
}

fn gw_json(v: &GwValue) -> Value {
    json!({
        "degree": v.degree,
        "value": v.value.to_string(),
        "integer": v.integer().map(|i| i.to_string()),
    })
}

/// Expands `xN` tokens: `["p[1]", "x5"]` becomes five copies of `p[1]`.
fn expand_repeats(tokens: &[String]) -> CliResult<Vec<String>> {
    let mut out: Vec<String> = Vec::new();
    for t in tokens {
        match t.strip_prefix('x').and_then(|n| n.parse::<usize>().ok()) {
            Some(count) => {
                let last = out.last().cloned().ok_or_else(|| CliError::Usage(format!("`{t}` has no class to repeat")))?;
                if count == 0 {
                    return Err(CliError::Usage(format!("`{t}`: repeat count must be positive")));
                }
                out.extend(std::iter::repeat_n(last, count - 1));
            }
            None => out.push(t.clone()),
        }
    }
    Ok(out)
}

fn parse_assignment(s: &str) -> CliResult<(String, String)> {
    let (name, value) =
        s.split_once('=').ok_or_else(|| CliError::Usage(format!("`{s}`: expected name=value")))?;
    Ok((name.trim().to_string(), value.trim().to_string()))
}

/// Accepts `q1`, `q[1]` or `1`.
fn parse_quantum_index(s: &str) -> CliResult<usize> {
    let body = s.trim().trim_start_matches('q').trim_start_matches('[').trim_end_matches(']');
    body.parse::<usize>()
        .ok()
        .filter(|&j| j > 0)
        .ok_or_else(|| CliError::Usage(format!("`{s}` is not a quantum variable")))
}
