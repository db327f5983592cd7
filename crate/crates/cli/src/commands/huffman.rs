//! `huffman build|encode|decode`: ordinal prefix codecs on disk.

use std::process::ExitCode;

use serde::{Deserialize, Serialize};

use ordseq_core::huffman::{build_codec, Codec, Label, SymbolTable};
use ordseq_core::rational::{parse_ratio, Rational};

use crate::errors::CliError;
use crate::io::{read_json, read_jsonl, to_jsonl, write_output};
use crate::{HuffmanBuildArgs, HuffmanCmd, HuffmanCodeArgs};

pub fn run(cmd: HuffmanCmd) -> Result<ExitCode, CliError> {
    match cmd {
        HuffmanCmd::Build(args) => build(args),
        HuffmanCmd::Encode(args) => encode(args),
        HuffmanCmd::Decode(args) => decode(args),
    }
}

#[derive(Deserialize)]
struct FreqRow {
    symbol: String,
    freq: FreqValue,
}

/// Frequencies as integers or "p/q" strings.
#[derive(Deserialize)]
#[serde(untagged)]
enum FreqValue {
    Count(i64),
    Ratio(String),
}

impl FreqValue {
    fn to_rational(&self) -> Result<Rational, CliError> {
        match self {
            FreqValue::Count(c) => Ok(Rational::new(i128::from(*c), 1)),
            FreqValue::Ratio(s) => Ok(parse_ratio(s).map_err(CliError::from)?),
        }
    }
}

#[derive(Deserialize)]
struct StreamRow {
    #[allow(dead_code)]
    id: String,
    symbols: Vec<String>,
}

fn build(args: HuffmanBuildArgs) -> Result<ExitCode, CliError> {
    let table = match (&args.freqs, &args.corpus) {
        (Some(path), None) => {
            let rows = read_jsonl::<FreqRow>(path)?;
            let entries: Result<Vec<_>, CliError> = rows
                .iter()
                .map(|(_, r)| Ok((r.symbol.clone(), r.freq.to_rational()?)))
                .collect();
            SymbolTable::new(entries?)?
        }
        (None, Some(path)) => {
            let rows = read_jsonl::<StreamRow>(path)?;
            let stream: Vec<String> =
                rows.into_iter().flat_map(|(_, r)| r.symbols).collect();
            SymbolTable::from_counts(&stream)?
        }
        _ => return Err(CliError::Usage("provide exactly one of --freqs or --corpus".into())),
    };
    let codec = build_codec(&table, args.arity)?;
    let json = serde_json::to_string_pretty(&codec)
        .map_err(|e| CliError::Io(format!("serialization failed: {e}")))?;
    write_output(args.out.as_deref(), &format!("{json}\n"))?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct LabelRow {
    id: String,
    labels: Vec<Label>,
}

fn encode(args: HuffmanCodeArgs) -> Result<ExitCode, CliError> {
    let codec: Codec = read_json(&args.codec)?;
    let rows = read_jsonl::<StreamRow>(&args.input)?;
    let mut out_rows = Vec::with_capacity(rows.len());
    for (line, row) in rows {
        let labels = codec
            .encode(&row.symbols)
            .map_err(|e| CliError::from(e).with_line_context(&row.id, line))?;
        out_rows.push(LabelRow { id: row.id, labels });
    }
    write_output(args.out.as_deref(), &to_jsonl(&out_rows)?)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Deserialize)]
struct LabelInRow {
    id: String,
    labels: Vec<Label>,
}

#[derive(Serialize)]
struct SymbolRow {
    id: String,
    symbols: Vec<String>,
}

fn decode(args: HuffmanCodeArgs) -> Result<ExitCode, CliError> {
    let codec: Codec = read_json(&args.codec)?;
    let rows = read_jsonl::<LabelInRow>(&args.input)?;
    let mut out_rows = Vec::with_capacity(rows.len());
    for (line, row) in rows {
        let symbols = codec
            .decode(&row.labels)
            .map_err(|e| CliError::from(e).with_line_context(&row.id, line))?;
        out_rows.push(SymbolRow { id: row.id, symbols });
    }
    write_output(args.out.as_deref(), &to_jsonl(&out_rows)?)?;
    Ok(ExitCode::SUCCESS)
}
