use std::io::Write;
use std::ops::RangeInclusive;

use anyhow::{bail, Context};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use verlinde_core::oracle::handle_trace_dimension;
use verlinde_core::surgery::{solve_characteristic, LinkingMatrix};
use verlinde_core::verlinde::{level_rank_check, pu_verlinde, verlinde, Flavor, Refinement, SpinStructure};
use verlinde_core::{AlcoveContext, Certified, Error, PrecisionPolicy};

use crate::cache::ResultCache;
use crate::parse::{parse_sigma, InputError};
use crate::record::OutputRecord;

pub struct Runner {
    pub policy: PrecisionPolicy,
    pub cache: Option<ResultCache>,
}

/// Which structures a refined command evaluates.
pub enum Selection {
    One(String),
    All { genus: u32, split: bool },
}

#[derive(Clone, Copy, clap::ValueEnum)]
pub enum TableFormat {
    Csv,
    Jsonl,
}

#[derive(Serialize)]
struct TableRow {
    #[serde(rename = "N")]
    n: u32,
    #[serde(rename = "K")]
    k: u32,
    g: u32,
    value: String,
    pu_value: String,
    precision_used: Option<u32>,
}

struct Outcome {
    value: Option<String>,
    values: Option<Value>,
    precision: Option<u32>,
}

fn max_precision(it: impl IntoIterator<Item = Option<u32>>) -> Option<u32> {
    it.into_iter().flatten().max()
}

impl Runner {
    fn cached(
        &self,
        command: &str,
        parameters: Value,
        compute: impl FnOnce() -> anyhow::Result<Outcome>,
    ) -> anyhow::Result<OutputRecord> {
        let key = format!(
            "{command} {parameters} prec={} max={}",
            self.policy.initial_bits, self.policy.max_bits
        );
        if let Some(hit) = self.cache.as_ref().and_then(|c| c.get(&key)) {
            return Ok(hit);
        }
        let out = compute()?;
        let record = OutputRecord {
            command: command.to_owned(),
            parameters,
            value: out.value,
            values: out.values,
            precision_used: out.precision,
            elapsed_us: None,
        };
        if let Some(c) = &self.cache {
            c.put(key, record.clone());
        }
        Ok(record)
    }

    pub fn verlinde(&self, n: u32, k: u32, g: u32, pu: bool, oracle: bool) -> anyhow::Result<OutputRecord> {
        let params = json!({ "N": n, "K": k, "g": g, "pu": pu, "oracle": oracle });
        self.cached("verlinde", params, || {
            let ctx = AlcoveContext::new(n, k)?;
            let total = verlinde(&ctx, g, &self.policy)?;
            if oracle {
                let traced = handle_trace_dimension(&ctx, g, &self.policy)?;
                if BigInt::from(traced) != total.value {
                    return Err(Error::Mismatch(format!(
                        "oracle gives {traced} but the sum gives {} for {ctx} at genus {g}",
                        total.value
                    ))
                    .into());
                }
            }
            let c = if pu { pu_verlinde(&ctx, g, &self.policy)? } else { total };
            Ok(Outcome {
                value: Some(c.value.to_string()),
                values: None,
                precision: c.precision_bits,
            })
        })
    }

    pub fn refined(&self, n: u32, k: u32, flavor: Flavor, sel: &Selection) -> anyhow::Result<OutputRecord> {
        let command = match flavor {
            Flavor::Spin { .. } => "spin",
            Flavor::Coho { .. } => "coho",
            Flavor::PuSpin => "pu-spin",
        };
        let step = match flavor {
            Flavor::Spin { step_power } | Flavor::Coho { step_power } => Some(step_power),
            Flavor::PuSpin => None,
        };
        let mut params = json!({ "N": n, "K": k, "step": step });
        match sel {
            Selection::One(spec) => {
                let pairs = parse_sigma(spec)?;
                params["sigma"] = json!(pairs);
                self.cached(command, params, || {
                    let r = Refinement::new(&AlcoveContext::new(n, k)?, flavor)?;
                    let sigma = SpinStructure::new(r.modulus(), &pairs)?;
                    let c = r.evaluate(&sigma, &self.policy)?;
                    Ok(Outcome {
                        value: Some(c.value.to_string()),
                        values: None,
                        precision: c.precision_bits,
                    })
                })
            }
            &Selection::All { genus, split } => {
                params["genus"] = json!(genus);
                params["split"] = json!(split);
                self.cached(command, params, || self.all_structures(n, k, flavor, genus, split))
            }
        }
    }

    fn all_structures(&self, n: u32, k: u32, flavor: Flavor, genus: u32, split: bool) -> anyhow::Result<Outcome> {
        if genus == 0 {
            return Err(InputError("--genus must be at least 1".into()).into());
        }
        let ctx = AlcoveContext::new(n, k)?;
        let r = Refinement::new(&ctx, flavor)?;
        let structures = SpinStructure::enumerate(r.modulus(), genus as usize)?;
        // The first evaluation fills the shared power cache for the rest.
        let first = r.evaluate(&structures[0], &self.policy)?;
        let rest = structures[1..]
            .par_iter()
            .map(|s| r.evaluate(s, &self.policy))
            .collect::<verlinde_core::Result<Vec<Certified>>>()?;
        let results: Vec<Certified> = std::iter::once(first).chain(rest).collect();
        let rows: Vec<Value> = structures
            .iter()
            .zip(&results)
            .map(|(s, c)| json!({ "sigma": s.to_string(), "value": c.value.to_string() }))
            .collect();
        let mut precision = max_precision(results.iter().map(|c| c.precision_bits));
        let value = if split {
            let sum: BigInt = results.iter().map(|c| &c.value).sum();
            let total = match flavor {
                Flavor::PuSpin => pu_verlinde(&ctx, genus, &self.policy)?,
                _ => verlinde(&ctx, genus, &self.policy)?,
            };
            if sum != total.value {
                return Err(Error::Mismatch(format!(
                    "refined values of {ctx} at genus {genus} sum to {sum}, expected {}",
                    total.value
                ))
                .into());
            }
            precision = max_precision([precision, total.precision_bits]);
            Some(sum.to_string())
        } else {
            None
        };
        Ok(Outcome {
            value,
            values: Some(Value::Array(rows)),
            precision,
        })
    }

    pub fn duality(&self, n: u32, k: u32, g_max: u32) -> anyhow::Result<OutputRecord> {
        self.cached("duality", json!({ "N": n, "K": k, "gmax": g_max }), || {
            let report = level_rank_check(n, k, g_max, &self.policy)?;
            let rows = report
                .rows
                .iter()
                .map(|r| json!({ "genus": r.genus, "left": r.left.to_string(), "right": r.right.to_string() }))
                .collect();
            Ok(Outcome {
                value: None,
                values: Some(Value::Array(rows)),
                precision: None,
            })
        })
    }

    pub fn surgery(&self, matrix: &str, d: u32) -> anyhow::Result<OutputRecord> {
        let b: LinkingMatrix =
            serde_json::from_str(matrix).map_err(|e| InputError(format!("malformed matrix {matrix:?}: {e}")))?;
        self.cached("surgery", json!({ "matrix": b, "d": d }), || {
            let resp = solve_characteristic(&b, d)?.to_response();
            Ok(Outcome {
                value: Some(resp.count.to_string()),
                values: Some(serde_json::to_value(&resp)?),
                precision: None,
            })
        })
    }

    pub fn table(
        &self,
        ns: RangeInclusive<u32>,
        ks: RangeInclusive<u32>,
        gs: RangeInclusive<u32>,
        format: TableFormat,
        out: &mut impl Write,
    ) -> anyhow::Result<()> {
        let mut cells = Vec::new();
        for n in ns {
            for k in ks.clone() {
                cells.extend(gs.clone().map(|g| (n, k, g)));
            }
        }
        let rows = cells
            .par_iter()
            .map(|&(n, k, g)| {
                let full = self.verlinde(n, k, g, false, false)?;
                let pu = self.verlinde(n, k, g, true, false)?;
                Ok(TableRow {
                    n,
                    k,
                    g,
                    value: full.value.unwrap_or_default(),
                    pu_value: pu.value.unwrap_or_default(),
                    precision_used: max_precision([full.precision_used, pu.precision_used]),
                })
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        match format {
            TableFormat::Csv => {
                let mut w = csv::Writer::from_writer(out);
                for row in &rows {
                    w.serialize(row)?;
                }
                w.flush()?;
            }
            TableFormat::Jsonl => {
                for row in &rows {
                    serde_json::to_writer(&mut *out, row)?;
                    writeln!(out)?;
                }
            }
        }
        Ok(())
    }
}

/// Reads a σ argument, failing early when none of the selection flags is given.
pub fn selection(sigma: Option<String>, all: bool, split: bool, genus: u32) -> anyhow::Result<Selection> {
    match (sigma, all || split) {
        (Some(s), false) => Ok(Selection::One(s)),
        (None, true) => Ok(Selection::All { genus, split }),
        (Some(_), true) => bail!(InputError("--sigma cannot be combined with --all or --split".into())),
        (None, false) => Err(InputError("give --sigma, --all or --split".into())).context("no structure selected"),
    }
}
