use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use grmds::{
    companion, is_mds, literal_list, make_ring, min_distance_in, twisted_chain,
    weight_criterion_full_in, weight_criterion_support_in, CodeInstance, ConstructionResult,
    ConstructionSpec, Constructor, Family, GRMatrix, MatrixDoc, ResultDoc, Ring, RingConfig,
    RingElement, SkewPoly, Symbols, VerificationReport, ENUMERATION_BUDGET,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::{
    Cli, ConstructArgs, EmitArgs, EmitFormat, OracleArgs, PolyArgs, RingArgs, SearchArgs,
    SymbolsArg, VerifyArgs,
};
use crate::catalog::{self, CatalogRecord};

pub const EXIT_MDS: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NOT_MDS: i32 = 2;

pub fn print_doc<T: Serialize>(doc: &T, compact: bool) -> Result<()> {
    let text = if compact {
        serde_json::to_string(doc)?
    } else {
        serde_json::to_string_pretty(doc)?
    };
    outln!("{text}");
    Ok(())
}

fn verdict(mds: bool) -> i32 {
    if mds {
        EXIT_MDS
    } else {
        EXIT_NOT_MDS
    }
}

pub fn ring_config(args: &RingArgs) -> Result<RingConfig> {
    let p = args.p.ok_or_else(|| anyhow!("--p is required"))?;
    let modulus = args
        .modulus
        .as_deref()
        .map(|text| {
            text.split(',')
                .map(|c| {
                    c.trim()
                        .parse::<u64>()
                        .with_context(|| format!("modulus coefficient '{c}' is not a non-negative integer"))
                })
                .collect::<Result<Vec<u64>>>()
        })
        .transpose()?;
    Ok(RingConfig::new(p, args.s, args.m, modulus, args.e))
}

fn single_literal(text: &str, flag: &str) -> Result<Vec<i64>> {
    let mut list = literal_list(text)?;
    if list.len() != 1 {
        bail!("--{flag} expects one element literal, got {}", list.len());
    }
    Ok(list.remove(0))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// `N^{[k]} N = I_k` for `N` the chain of length `k = deg g`.
pub fn quasi_involutory(g: &SkewPoly) -> Result<bool> {
    let k = g.degree().unwrap_or(0);
    let n = twisted_chain(g, k)?;
    Ok(n.sigma_twist(k).mul(&n)? == GRMatrix::identity(g.ring(), k))
}

fn pick_symbols(ring: &Ring, k: usize, arg: SymbolsArg) -> Symbols {
    match arg {
        SymbolsArg::Ring => Symbols::Ring,
        SymbolsArg::Residue => Symbols::Residue,
        SymbolsArg::Auto => {
            let within = ring
                .size()
                .checked_pow(k as u32)
                .is_some_and(|n| n <= ENUMERATION_BUDGET);
            if within {
                Symbols::Ring
            } else {
                Symbols::Residue
            }
        }
    }
}

fn symbols_name(symbols: Symbols) -> &'static str {
    match symbols {
        Symbols::Ring => "ring",
        Symbols::Residue => "residue",
    }
}

pub fn ring_info(cli: &Cli, args: &RingArgs) -> Result<i32> {
    #[derive(Serialize)]
    struct RingInfo {
        config: RingConfig,
        size: String,
        characteristic: u64,
        residue_field_order: u64,
        sigma_order: usize,
        teichmuller_order: u64,
        teichmuller_generator: Vec<i64>,
        zeta_is_teichmuller: bool,
    }
    let ring = make_ring(&ring_config(args)?)?;
    let info = RingInfo {
        config: ring.config(),
        size: ring.size().to_string(),
        characteristic: ring.characteristic(),
        residue_field_order: ring.residue_field().order(),
        sigma_order: ring.sigma_order(),
        teichmuller_order: ring.teichmuller_order(),
        teichmuller_generator: RingElement::teichmuller_generator(&ring).to_literal(),
        zeta_is_teichmuller: ring.zeta_is_teichmuller(),
    };
    if cli.json {
        print_doc(&info, true)?;
    } else {
        outln!(
            "GR({}, {}^{}) with modulus {:?}",
            ring.characteristic(),
            ring.p(),
            ring.s() as usize * ring.m(),
            ring.modulus()
        );
        outln!("size: {}", info.size);
        outln!("residue field: F_{}", info.residue_field_order);
        outln!(
            "sigma = theta^{} of order {}",
            ring.sigma_exponent(),
            info.sigma_order
        );
        outln!(
            "Teichmüller generator: {:?} of order {}",
            info.teichmuller_generator, info.teichmuller_order
        );
    }
    Ok(EXIT_MDS)
}

fn spec_from_flags(args: &ConstructArgs) -> Result<ConstructionSpec> {
    let family: Family = args.family.parse()?;
    let ring = ring_config(&args.ring)?;
    let mut spec = ConstructionSpec::new(family, ring.clone(), args.k);
    spec.t = args.t;
    spec.b = args.b;
    spec.xi_power = args.xi_power;
    spec.c = args.c.as_deref().map(|c| single_literal(c, "c")).transpose()?;
    spec.eta = args.eta.as_deref().map(literal_list).transpose()?.unwrap_or_default();
    if let Some(g) = &args.g {
        let literals = literal_list(g)?;
        if family == Family::FromPoly {
            spec.k = literals.len().saturating_sub(1);
        }
        spec.g = Some(literals);
    }
    if family == Family::FromPoly && spec.g.is_none() {
        bail!("--family from_poly needs --g");
    }
    if let Some(base) = &args.base_family {
        if family != Family::CoeffPerturbed {
            bail!("--base-family only applies to coeff_perturbed");
        }
        let mut base_spec = ConstructionSpec::new(base.parse()?, ring, args.k);
        base_spec.t = args.t;
        base_spec.b = args.b;
        base_spec.c = spec.c.clone();
        base_spec.xi_power = args.xi_power;
        base_spec.g = spec.g.clone();
        spec.base_spec = Some(Box::new(base_spec));
    }
    if family == Family::CoeffPerturbed && spec.base_spec.is_none() {
        bail!("--family coeff_perturbed needs --base-family");
    }
    Ok(spec)
}

fn oracle_distance(matrix: &GRMatrix, arg: SymbolsArg) -> Result<(usize, Symbols)> {
    let symbols = pick_symbols(matrix.ring(), matrix.rows(), arg);
    let d = min_distance_in(&CodeInstance::new(matrix.clone())?, symbols)?;
    Ok((d, symbols))
}

pub fn construct(cli: &Cli, args: &ConstructArgs) -> Result<i32> {
    let spec = match &args.spec {
        Some(path) => read_json(path)?,
        None => spec_from_flags(args)?,
    };
    let ctor = Constructor::new();
    let mut result = match ctor.construct(&spec) {
        Ok(result) => result,
        Err(err) => {
            if let Some(path) = &cli.catalog {
                catalog::append(path, &[CatalogRecord::from_error(&spec, &err)])?;
            }
            return Err(err.into());
        }
    };
    decorate(&mut result, args.check_involutory, args.oracle)?;
    print_doc(&ResultDoc::from_result(&result)?, cli.json)?;
    if let Some(path) = &cli.catalog {
        catalog::append(path, &[CatalogRecord::from_result(&spec, &result)])?;
    }
    Ok(verdict(result.report.mds))
}

fn decorate(result: &mut ConstructionResult, involutory: bool, oracle: bool) -> Result<()> {
    if involutory {
        result.report.quasi_involutory = Some(quasi_involutory(&result.g)?);
    }
    if oracle {
        result.report.min_distance = Some(oracle_distance(&result.matrix, SymbolsArg::Auto)?.0);
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifyDoc {
    #[serde(flatten)]
    report: VerificationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    symbols: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weight_criterion_support: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    weight_criterion_full: Option<bool>,
}

/// The matrix under test and, when given by a polynomial, that polynomial.
fn load_target(
    matrix: Option<&Path>,
    ring: &RingArgs,
    poly: &PolyArgs,
) -> Result<(GRMatrix, Option<(SkewPoly, usize)>)> {
    if let Some(path) = matrix {
        let doc: MatrixDoc = read_json(path)?;
        return Ok((doc.to_matrix()?, None));
    }
    let text = poly
        .g
        .as_deref()
        .ok_or_else(|| anyhow!("give either --matrix FILE or --g COEFFS"))?;
    let r = make_ring(&ring_config(ring)?)?;
    let g = SkewPoly::from_literals(&r, &literal_list(text)?)?;
    let t = poly.t.unwrap_or(g.degree().unwrap_or(0));
    Ok((twisted_chain(&g, t)?, Some((g, t))))
}

pub fn verify(cli: &Cli, args: &VerifyArgs) -> Result<i32> {
    let (matrix, poly) = load_target(args.matrix.as_deref(), &args.ring, &args.poly)?;
    let mut doc = VerifyDoc {
        report: is_mds(&matrix)?,
        symbols: None,
        weight_criterion_support: None,
        weight_criterion_full: None,
    };
    if args.oracle {
        let (d, symbols) = oracle_distance(&matrix, SymbolsArg::Auto)?;
        doc.report.min_distance = Some(d);
        doc.symbols = Some(symbols_name(symbols));
    }
    if let Some((g, t)) = &poly {
        if args.check_involutory {
            doc.report.quasi_involutory = Some(quasi_involutory(g)?);
        }
        if args.criterion {
            let symbols = pick_symbols(g.ring(), matrix.rows(), SymbolsArg::Auto);
            doc.symbols = Some(symbols_name(symbols));
            doc.weight_criterion_support = Some(weight_criterion_support_in(g, *t, symbols)?);
            if let Some(n) = args.n {
                doc.weight_criterion_full = Some(weight_criterion_full_in(g, n, symbols)?);
            }
        }
    } else if args.check_involutory {
        bail!("--check-involutory needs --g");
    }
    print_doc(&doc, cli.json)?;
    Ok(verdict(doc.report.mds))
}

pub fn oracle(cli: &Cli, args: &OracleArgs) -> Result<i32> {
    let (matrix, poly) = load_target(args.matrix.as_deref(), &args.ring, &args.poly)?;
    let (d, symbols) = oracle_distance(&matrix, args.symbols)?;
    let k = matrix.rows();
    let mut report = is_mds(&matrix)?;
    report.min_distance = Some(d);
    let support = poly
        .as_ref()
        .map(|(g, t)| weight_criterion_support_in(g, *t, symbols))
        .transpose()?;
    if (d == k + 1) != report.mds || support.is_some_and(|s| s != report.mds) {
        bail!(
            "oracle disagreement: min_distance = {d}, criterion = {support:?}, mds = {}",
            report.mds
        );
    }
    let doc = VerifyDoc {
        report,
        symbols: Some(symbols_name(symbols)),
        weight_criterion_support: support,
        weight_criterion_full: None,
    };
    print_doc(&doc, cli.json)?;
    Ok(verdict(doc.report.mds))
}

fn parse_list<T: std::str::FromStr>(text: &str, flag: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|_| anyhow!("--{flag}: cannot parse '{s}'")))
        .collect()
}

fn random_nilpotents(ring: &Ring, k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let p = ring.p() as i64;
    (0..k)
        .map(|_| {
            let x = RingElement::from_index(ring, rng.gen_range(0..ring.size()));
            x.scale(p).to_literal()
        })
        .collect()
}

pub fn search(cli: &Cli, args: &SearchArgs) -> Result<i32> {
    let config = ring_config(&args.ring)?;
    let ring = make_ring(&config)?;
    let families = args
        .families
        .split(',')
        .map(|f| f.trim().parse::<Family>())
        .collect::<grmds::Result<Vec<_>>>()?;
    if families.contains(&Family::FromPoly) {
        bail!("from_poly has no parameters to search over");
    }
    let xi_powers: Vec<Option<u64>> = match &args.xi_powers {
        Some(text) => parse_list::<u64>(text, "xi-powers")?.into_iter().map(Some).collect(),
        None => vec![None],
    };
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let mut specs = Vec::new();
    if args.b_from <= args.b_to {
        for b in args.b_from..=args.b_to {
            for &family in &families {
                for &xi_power in &xi_powers {
                    let mut spec = ConstructionSpec::new(family, config.clone(), args.k).with_b(b);
                    spec.t = args.t;
                    spec.xi_power = xi_power;
                    match family {
                        Family::RootPerturbed | Family::CoeffPerturbed => {
                            for _ in 0..args.eta_samples {
                                let mut s = spec.clone();
                                s.eta = random_nilpotents(&ring, args.k, &mut rng);
                                if family == Family::CoeffPerturbed {
                                    let mut base = spec.clone();
                                    base.family = Family::ConsecutivePowers;
                                    s.base_spec = Some(Box::new(base));
                                }
                                specs.push(s);
                            }
                        }
                        _ => specs.push(spec),
                    }
                }
            }
        }
    }

    let ctor = Constructor::new();
    let records: Vec<CatalogRecord> = specs
        .iter()
        .map(|spec| match ctor.construct(spec) {
            Ok(result) => CatalogRecord::from_result(spec, &result),
            Err(err) => CatalogRecord::from_error(spec, &err),
        })
        .collect();
    let mds = records.iter().filter(|r| r.mds == Some(true)).count();
    let not_mds = records.iter().filter(|r| r.mds == Some(false)).count();
    let errors = records.iter().filter(|r| r.error.is_some()).count();
    match &cli.catalog {
        Some(path) => catalog::append(path, &records)?,
        None => {
            for record in &records {
                outln!("{}", serde_json::to_string(record)?);
            }
        }
    }
    if cli.json {
        eprintln!(
            "{}",
            serde_json::json!({"records": records.len(), "mds": mds, "not_mds": not_mds, "errors": errors})
        );
    } else {
        eprintln!(
            "{} records: {mds} MDS, {not_mds} not MDS, {errors} errors",
            records.len()
        );
    }
    Ok(EXIT_MDS)
}

pub fn emit(cli: &Cli, args: &EmitArgs) -> Result<i32> {
    let ring = make_ring(&ring_config(&args.ring)?)?;
    let g = SkewPoly::from_literals(&ring, &literal_list(&args.g)?)?;
    match args.format {
        EmitFormat::CompanionRecursion => {
            #[derive(Serialize)]
            struct Recursion {
                format: &'static str,
                ring: RingConfig,
                k: usize,
                sigma_exponent: usize,
                taps: Vec<Vec<i64>>,
            }
            let c = companion(&g)?;
            let k = c.rows();
            let doc = Recursion {
                format: "companion-recursion",
                ring: ring.config(),
                k,
                sigma_exponent: ring.sigma_exponent(),
                taps: c.row(k - 1).iter().map(RingElement::to_literal).collect(),
            };
            print_doc(&doc, cli.json)?;
        }
    }
    Ok(EXIT_MDS)
}
