//! `detect signature|match|same`: structure detection over token corpora.

use std::collections::BTreeMap;
use std::process::ExitCode;

use serde::{Deserialize, Serialize};

use ordseq_core::sequence::{Item, Sequence};
use ordseq_core::tasks::{same_structure, structure_signature, MatchResult, Template};

use crate::errors::CliError;
use crate::io::{parse_items, read_jsonl, to_jsonl, write_output};
use crate::{DetectCmd, DetectMatchArgs, DetectSameArgs, DetectSignatureArgs};

pub fn run(cmd: DetectCmd) -> Result<ExitCode, CliError> {
    match cmd {
        DetectCmd::Signature(args) => signature(args),
        DetectCmd::Match(args) => template_match(args),
        DetectCmd::Same(args) => same(args),
    }
}

#[derive(Deserialize)]
struct CorpusRow {
    #[serde(default)]
    word: Option<String>,
    tokens: Vec<String>,
    #[serde(default)]
    label: Option<String>,
}

#[derive(Serialize)]
struct SignatureRow {
    #[serde(skip_serializing_if = "Option::is_none")]
    word: Option<String>,
    signature: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    label_matches: Option<bool>,
}

fn signature(args: DetectSignatureArgs) -> Result<ExitCode, CliError> {
    let rows = read_jsonl::<CorpusRow>(&args.input)?;
    let mut out_rows = Vec::with_capacity(rows.len());
    for (line, row) in rows {
        let id = row.word.clone().unwrap_or_else(|| format!("line-{line}"));
        let seq = Sequence::from_tokens(row.tokens.clone())
            .map_err(|e| CliError::from(e).with_line_context(&id, line))?;
        let sig = structure_signature(&seq)
            .map_err(|e| CliError::from(e).with_line_context(&id, line))?;
        let label_matches = row.label.as_ref().map(|l| l == sig.as_str());
        out_rows.push(SignatureRow {
            word: row.word,
            signature: sig.as_str().to_string(),
            label: row.label,
            label_matches,
        });
    }
    write_output(args.out.as_deref(), &to_jsonl(&out_rows)?)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Deserialize)]
struct MatchInRow {
    id: String,
    tokens: Vec<String>,
}

#[derive(Serialize)]
struct MatchRow {
    id: String,
    #[serde(rename = "match")]
    is_match: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    bindings: Option<BTreeMap<char, Item>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    violation_position: Option<usize>,
    degenerate: bool,
}

fn template_match(args: DetectMatchArgs) -> Result<ExitCode, CliError> {
    let mut template = Template::from_pattern(&args.template)?;
    if args.distinct {
        template = template.with_distinct_vars();
    }
    let rows = read_jsonl::<MatchInRow>(&args.input)?;
    let mut out_rows = Vec::with_capacity(rows.len());
    for (line, row) in rows {
        let seq = Sequence::from_tokens(row.tokens.clone())
            .map_err(|e| CliError::from(e).with_line_context(&row.id, line))?;
        let (result, degenerate) = ordseq_core::tasks::template_match(&template, &seq)
            .map_err(|e| CliError::from(e).with_line_context(&row.id, line))?;
        let out = match result {
            MatchResult::Match(bindings) => MatchRow {
                id: row.id,
                is_match: true,
                bindings: Some(bindings),
                violation_position: None,
                degenerate,
            },
            MatchResult::Violation { position } => MatchRow {
                id: row.id,
                is_match: false,
                bindings: None,
                violation_position: Some(position),
                degenerate,
            },
        };
        out_rows.push(out);
    }
    write_output(args.out.as_deref(), &to_jsonl(&out_rows)?)?;
    Ok(ExitCode::SUCCESS)
}

fn same(args: DetectSameArgs) -> Result<ExitCode, CliError> {
    let a = Sequence::new(parse_items(&args.a)?)?;
    let b = Sequence::new(parse_items(&args.b)?)?;
    let same = same_structure(&a, &b);
    println!("{same}");
    Ok(if same { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
