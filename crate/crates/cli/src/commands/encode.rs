//! `encode`, `decode`, `recognize`: the sequence-memory pipeline.

use std::collections::BTreeMap;
use std::process::ExitCode;

use serde::{Deserialize, Serialize};

use ordseq_core::autoencoder::{encode, Codebook, YPopulation};
use ordseq_core::sequence::Item;

use crate::config::Config;
use crate::errors::CliError;
use crate::io::{read_json, read_jsonl, to_jsonl, write_output, SeqRow};
use crate::seeds::split_seed;
use crate::{DecodeArgs, EncodeArgs, RecognizeArgs};

#[derive(Serialize)]
struct EncodeRow {
    id: String,
    n: usize,
    y: Vec<f64>,
}

/// Sequences of different lengths are encoded by per-length populations,
/// each seeded from the root seed and its length.
fn population_for(config: &Config, k: usize, n: usize) -> Result<YPopulation, CliError> {
    let seed = split_seed(config.seed, &format!("y-population/n={n}"));
    Ok(YPopulation::generate(seed, k, n)?)
}

pub fn run(config: &Config, args: EncodeArgs) -> Result<ExitCode, CliError> {
    let rows = read_jsonl::<SeqRow>(&args.input)?;
    let k = args.k.unwrap_or(config.k);
    let theta = args.theta.unwrap_or(config.theta);

    let mut populations: BTreeMap<usize, YPopulation> = BTreeMap::new();
    let mut out_rows = Vec::with_capacity(rows.len());
    let mut book: Option<Codebook> = None;

    for (line, row) in &rows {
        let seq = row.sequence(*line)?;
        let n = seq.len();
        if let std::collections::btree_map::Entry::Vacant(slot) = populations.entry(n) {
            slot.insert(population_for(config, k, n)?);
        }
        let population = &populations[&n];
        let y = encode(&seq, population)
            .map_err(|e| CliError::from(e).with_line_context(&row.id, *line))?;
        out_rows.push(EncodeRow { id: row.id.clone(), n, y });

        if args.learn_book.is_some() {
            let current = match book.take() {
                Some(b) => {
                    if b.n() != n {
                        return Err(CliError::from(ordseq_core::Error::LengthMismatch {
                            left: b.n(),
                            right: n,
                        })
                        .with_line_context(&row.id, *line));
                    }
                    b
                }
                None => Codebook::new(population, theta),
            };
            let (next, _, _) = current
                .learn_labeled(&seq, population, Some(row.id.clone()))
                .map_err(|e| CliError::from(e).with_line_context(&row.id, *line))?;
            book = Some(next);
        }
    }

    let rendered = match args.format.as_str() {
        "csv" => {
            let mut out = String::new();
            for row in &out_rows {
                let ys: Vec<String> = row.y.iter().map(f64::to_string).collect();
                out.push_str(&format!("{},{},{}\n", row.id, row.n, ys.join(",")));
            }
            out
        }
        _ => to_jsonl(&out_rows)?,
    };
    write_output(args.out.as_deref(), &rendered)?;

    if let Some(book_path) = &args.learn_book {
        let book = book.ok_or_else(|| CliError::Usage("no sequences to learn from".into()))?;
        let json = serde_json::to_string_pretty(&book)
            .map_err(|e| CliError::Io(format!("serialization failed: {e}")))?;
        write_output(Some(book_path), &format!("{json}\n"))?;
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Deserialize)]
struct DecodeRequest {
    id: String,
    z: u32,
    bag: Vec<Item>,
}

#[derive(Serialize)]
struct DecodedRow {
    id: String,
    items: Vec<Item>,
}

pub fn run_decode(_config: &Config, args: DecodeArgs) -> Result<ExitCode, CliError> {
    let book: Codebook = read_json(&args.book)?;
    let rows = read_jsonl::<DecodeRequest>(&args.input)?;
    let mut out_rows = Vec::with_capacity(rows.len());
    for (line, row) in rows {
        let seq = book
            .decode(row.z, &row.bag)
            .map_err(|e| CliError::from(e).with_line_context(&row.id, line))?;
        out_rows.push(DecodedRow { id: row.id, items: seq.items().to_vec() });
    }
    write_output(args.out.as_deref(), &to_jsonl(&out_rows)?)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct RecognizeRow {
    id: String,
    z: u32,
    similarity: f64,
}

pub fn run_recognize(_config: &Config, args: RecognizeArgs) -> Result<ExitCode, CliError> {
    let book: Codebook = read_json(&args.book)?;
    let population = YPopulation::generate(book.seed(), book.k(), book.n())?;
    let rows = read_jsonl::<SeqRow>(&args.input)?;
    let mut out_rows = Vec::with_capacity(rows.len());
    for (line, row) in rows {
        let seq = row.sequence(line)?;
        let (z, similarity) = book
            .recognize(&seq, &population)
            .map_err(|e| CliError::from(e).with_line_context(&row.id, line))?;
        out_rows.push(RecognizeRow { id: row.id, z, similarity });
    }
    let rendered = match args.format.as_str() {
        "csv" => {
            let mut out = String::new();
            for row in &out_rows {
                out.push_str(&format!("{},{},{}\n", row.id, row.z, row.similarity));
            }
            out
        }
        _ => to_jsonl(&out_rows)?,
    };
    write_output(args.out.as_deref(), &rendered)?;
    Ok(ExitCode::SUCCESS)
}
