//! `tree` and `dyck`: stack-order trees and balanced-parenthesis words.

use std::process::ExitCode;

use serde::Serialize;

use ordseq_core::rational::format_ratio;
use ordseq_core::sequence::Sequence;
use ordseq_core::tree::{dyck_validate, stack_order_tree, tree_to_dyck, OrdinalTree};

use crate::errors::CliError;
use crate::io::{parse_items, read_jsonl, to_jsonl, write_output, SeqRow};
use crate::{DyckArgs, TreeArgs};

#[derive(Serialize)]
struct TreeRow {
    id: String,
    tree: OrdinalTree,
    #[serde(skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dyck: Option<String>,
}

pub fn run(args: TreeArgs) -> Result<ExitCode, CliError> {
    let rows: Vec<(usize, SeqRow)> = match (&args.input, &args.items) {
        (Some(path), None) => read_jsonl(path)?,
        (None, Some(items)) => {
            vec![(1, SeqRow { id: "inline".to_string(), items: parse_items(items)? })]
        }
        _ => return Err(CliError::Usage("provide exactly one of --in or --items".into())),
    };

    let mut out_rows = Vec::with_capacity(rows.len());
    for (line, row) in rows {
        let seq: Sequence = row.sequence(line)?;
        let tree = stack_order_tree(&seq)
            .map_err(|e| CliError::from(e).with_line_context(&row.id, line))?;
        let weights = if args.weights {
            let w = ordseq_core::tree::tree_order_weights(&seq)
                .map_err(|e| CliError::from(e).with_line_context(&row.id, line))?;
            Some(w.weights().iter().map(format_ratio).collect())
        } else {
            None
        };
        let dyck = args.dyck.then(|| tree_to_dyck(&tree).to_string());
        out_rows.push(TreeRow { id: row.id, tree, weights, dyck });
    }
    write_output(args.out.as_deref(), &to_jsonl(&out_rows)?)?;
    Ok(ExitCode::SUCCESS)
}

pub fn run_dyck(args: DyckArgs) -> Result<ExitCode, CliError> {
    let valid = dyck_validate(&args.validate)?;
    println!("{valid}");
    Ok(if valid { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
