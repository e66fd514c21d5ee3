use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use grmds::{
    build_w_poly, is_mds, make_ring, twisted_chain, RingConfig, RingElement, SkewPoly,
};
use serde::{Deserialize, Serialize};

use crate::args::ReproduceArgs;
use crate::commands::{print_doc, quasi_involutory, EXIT_ERROR, EXIT_MDS};

/// Recomputed data for one reference example.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleDoc {
    pub name: String,
    pub ring: RingConfig,
    pub cases: Vec<CaseDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseDoc {
    pub label: String,
    pub g: Vec<Vec<i64>>,
    pub t: usize,
    pub matrix: Vec<Vec<Vec<i64>>>,
    pub mds: bool,
    pub quasi_involutory: Option<bool>,
}

struct Example {
    name: &'static str,
    golden: &'static str,
    build: fn() -> Result<ExampleDoc>,
}

const EXAMPLES: [Example; 3] = [
    Example {
        name: "gr25_involutory",
        golden: include_str!("../golden/gr25_involutory.json"),
        build: gr25_involutory,
    },
    Example {
        name: "gr4_deg4_chain",
        golden: include_str!("../golden/gr4_deg4_chain.json"),
        build: gr4_deg4_chain,
    },
    Example {
        name: "gr4_deg8_recursive",
        golden: include_str!("../golden/gr4_deg8_recursive.json"),
        build: gr4_deg8_recursive,
    },
];

fn case(label: &str, g: &SkewPoly, t: usize, involutory: bool) -> Result<CaseDoc> {
    let m = twisted_chain(g, t)?;
    Ok(CaseDoc {
        label: label.to_string(),
        g: g.coeffs().iter().map(RingElement::to_literal).collect(),
        t,
        mds: is_mds(&m)?.mds,
        matrix: m.to_literals(),
        quasi_involutory: if involutory {
            Some(quasi_involutory(g)?)
        } else {
            None
        },
    })
}

fn gr25_involutory() -> Result<ExampleDoc> {
    let config = RingConfig::new(5, 2, 3, Some(vec![3, 3, 0, 1]), 2);
    let ring = make_ring(&config)?;
    let g = SkewPoly::from_ints(&ring, &[1, 2, 2, 1]);
    Ok(ExampleDoc {
        name: "gr25_involutory".into(),
        ring: config,
        cases: vec![case("N_g", &g, 3, true)?],
    })
}

fn gr4_deg4_chain() -> Result<ExampleDoc> {
    let config = RingConfig::new(2, 2, 4, Some(vec![1, 1, 0, 0, 1]), 1);
    let ring = make_ring(&config)?;
    let g = SkewPoly::from_literals(
        &ring,
        &[vec![1], vec![1], vec![0, 0, 0, 1], vec![3, 3, 1, 2], vec![1]],
    )?;
    Ok(ExampleDoc {
        name: "gr4_deg4_chain".into(),
        ring: config,
        cases: vec![case("C^[3] C^[2] C^[1] C", &g, 4, false)?],
    })
}

fn gr4_deg8_recursive() -> Result<ExampleDoc> {
    let config = RingConfig::new(2, 2, 8, Some(vec![1, 1, 0, 0, 0, 0, 1, 1, 1]), 0);
    let ring = make_ring(&config)?;
    let xi = RingElement::teichmuller_generator(&ring);
    let roots: Vec<RingElement> = (0..3).map(|j| xi.pow(j)).collect();
    let g = build_w_poly(&roots)?;
    let two = RingElement::from_int(&ring, 2);
    let perturbed: Vec<RingElement> = roots
        .iter()
        .enumerate()
        .map(|(j, a)| a + &(&two * &xi.pow(j as u64)))
        .collect();
    let h = build_w_poly(&perturbed)?;
    Ok(ExampleDoc {
        name: "gr4_deg8_recursive".into(),
        ring: config,
        cases: vec![case("C_g^3", &g, 3, false)?, case("C_h^3", &h, 3, false)?],
    })
}

#[derive(Serialize)]
struct Outcome {
    example: &'static str,
    pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    diff: Vec<String>,
}

/// Line diff of two pretty-printed documents.
fn diff(expected: &str, actual: &str) -> Vec<String> {
    let e: Vec<&str> = expected.lines().collect();
    let a: Vec<&str> = actual.lines().collect();
    let mut out = Vec::new();
    for i in 0..e.len().max(a.len()) {
        let (x, y) = (e.get(i), a.get(i));
        if x != y {
            if let Some(x) = x {
                out.push(format!("-{}: {x}", i + 1));
            }
            if let Some(y) = y {
                out.push(format!("+{}: {y}", i + 1));
            }
        }
    }
    out
}

fn golden_text(example: &Example, dir: Option<&Path>) -> Result<String> {
    match dir {
        Some(dir) => {
            let path = dir.join(format!("{}.json", example.name));
            fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))
        }
        None => Ok(example.golden.to_string()),
    }
}

fn compare(example: &Example, dir: Option<&Path>) -> Outcome {
    let result = (|| -> Result<Vec<String>> {
        let actual = serde_json::to_string_pretty(&(example.build)()?)?;
        let golden: ExampleDoc = serde_json::from_str(&golden_text(example, dir)?)
            .with_context(|| format!("parsing golden file for {}", example.name))?;
        Ok(diff(&serde_json::to_string_pretty(&golden)?, &actual))
    })();
    match result {
        Ok(lines) => Outcome {
            example: example.name,
            pass: lines.is_empty(),
            diff: lines,
        },
        Err(err) => Outcome {
            example: example.name,
            pass: false,
            diff: vec![format!("error: {err:#}")],
        },
    }
}

pub fn reproduce(json: bool, args: &ReproduceArgs) -> Result<i32> {
    if let Some(dir) = &args.bless {
        fs::create_dir_all(dir)?;
        for example in &EXAMPLES {
            let path = dir.join(format!("{}.json", example.name));
            let text = serde_json::to_string_pretty(&(example.build)()?)? + "\n";
            fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        }
        return Ok(EXIT_MDS);
    }
    let outcomes: Vec<Outcome> = EXAMPLES
        .iter()
        .map(|e| compare(e, args.golden_dir.as_deref()))
        .collect();
    if json {
        print_doc(&outcomes, true)?;
    } else {
        for outcome in &outcomes {
            outln!(
                "{} {}",
                if outcome.pass { "PASS" } else { "FAIL" },
                outcome.example
            );
            for line in &outcome.diff {
                outln!("  {line}");
            }
        }
    }
    Ok(if outcomes.iter().all(|o| o.pass) {
        EXIT_MDS
    } else {
        EXIT_ERROR
    })
}
