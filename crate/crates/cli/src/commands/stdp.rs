//! `stdp store|recall|perturb`: ordinal STDP matrices on disk.

use std::process::ExitCode;

use ordseq_core::rank::{rank_code, RankCode};
use ordseq_core::sequence::Sequence;
use ordseq_core::stdp::WeightMatrix;

use crate::config::{parse_kernel, Config};
use crate::errors::CliError;
use crate::io::{parse_items, parse_string_list, parse_u32_list, read_json, write_output};
use crate::seeds::split_seed;
use crate::{StdpCmd, StdpPerturbArgs, StdpRecallArgs, StdpStoreArgs, StdpSweepArgs};

pub fn run(config: &Config, cmd: StdpCmd) -> Result<ExitCode, CliError> {
    match cmd {
        StdpCmd::Store(args) => store(args),
        StdpCmd::Recall(args) => recall(args),
        StdpCmd::Perturb(args) => perturb(config, args),
        StdpCmd::Sweep(args) => sweep(config, args),
    }
}

fn store(args: StdpStoreArgs) -> Result<ExitCode, CliError> {
    let kernel = parse_kernel(&args.kernel)
        .ok_or_else(|| CliError::Usage(format!("unknown kernel {:?}", args.kernel)))?;
    let (code, default_units) = match (&args.rank, &args.items) {
        (Some(rank), None) => {
            let code = RankCode::new(parse_u32_list(rank)?)?;
            (code, None)
        }
        (None, Some(items)) => {
            let seq = Sequence::new(parse_items(items)?)?;
            let units: Vec<String> = seq.items().iter().map(ToString::to_string).collect();
            (rank_code(&seq)?, Some(units))
        }
        _ => return Err(CliError::Usage("provide exactly one of --rank or --items".into())),
    };
    let units = match &args.units {
        Some(list) => Some(parse_string_list(list)),
        None => default_units,
    };
    let matrix = match units {
        Some(units) => WeightMatrix::store_with_units(&code, units, kernel)?,
        None => WeightMatrix::store(&code, kernel),
    };
    let json = serde_json::to_string_pretty(&matrix)
        .map_err(|e| CliError::Io(format!("serialization failed: {e}")))?;
    write_output(args.out.as_deref(), &format!("{json}\n"))?;
    Ok(ExitCode::SUCCESS)
}

fn recall(args: StdpRecallArgs) -> Result<ExitCode, CliError> {
    let matrix: WeightMatrix = read_json(&args.matrix)?;
    let result = match &args.active {
        Some(list) => matrix.recall(&parse_string_list(list))?,
        None => matrix.recall_all(),
    };
    let json = serde_json::to_string_pretty(&result)
        .map_err(|e| CliError::Io(format!("serialization failed: {e}")))?;
    write_output(args.out.as_deref(), &format!("{json}\n"))?;
    Ok(ExitCode::SUCCESS)
}

fn perturb(config: &Config, args: StdpPerturbArgs) -> Result<ExitCode, CliError> {
    if args.epsilon < 0.0 || !args.epsilon.is_finite() {
        return Err(CliError::Usage("epsilon must be a finite nonnegative number".into()));
    }
    let matrix: WeightMatrix = read_json(&args.matrix)?;
    let noisy = matrix.perturb(args.epsilon, config.seed);
    let json = serde_json::to_string_pretty(&noisy)
        .map_err(|e| CliError::Io(format!("serialization failed: {e}")))?;
    write_output(args.out.as_deref(), &format!("{json}\n"))?;
    Ok(ExitCode::SUCCESS)
}

/// Recall stability across a noise grid: for each epsilon, how many of
/// `trials` independent perturbations leave full recall unchanged.
fn sweep(config: &Config, args: StdpSweepArgs) -> Result<ExitCode, CliError> {
    let matrix: WeightMatrix = read_json(&args.matrix)?;
    let epsilons: Vec<f64> = match &args.epsilons {
        Some(list) => list
            .split(',')
            .map(|p| {
                p.trim()
                    .parse()
                    .map_err(|_| CliError::Parse(format!("bad epsilon {:?} in grid", p.trim())))
            })
            .collect::<Result<_, _>>()?,
        None => config.epsilons.clone(),
    };
    if epsilons.iter().any(|e| *e < 0.0 || !e.is_finite()) {
        return Err(CliError::Usage("epsilons must be finite nonnegative numbers".into()));
    }
    if args.trials == 0 {
        return Err(CliError::Usage("trials must be at least 1".into()));
    }
    let baseline = matrix.recall_all().order;
    let mut out = String::from("epsilon,trials,unchanged,fraction\n");
    for (idx, &epsilon) in epsilons.iter().enumerate() {
        let mut unchanged = 0usize;
        for trial in 0..args.trials {
            let seed = split_seed(config.seed, &format!("stdp-sweep/{idx}/{trial}"));
            unchanged += usize::from(matrix.perturb(epsilon, seed).recall_all().order == baseline);
        }
        let fraction = unchanged as f64 / args.trials as f64;
        out.push_str(&format!("{epsilon},{},{unchanged},{fraction}\n", args.trials));
    }
    write_output(args.out.as_deref(), &out)?;
    Ok(ExitCode::SUCCESS)
}
