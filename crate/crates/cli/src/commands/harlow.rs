//! `harlow`: batches of two-door task-set episodes.

use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use ordseq_core::tasks::{constant_env, harlow_episode, Door, TaskSetAgent};

use crate::config::Config;
use crate::errors::CliError;
use crate::io::{to_jsonl, write_output};
use crate::seeds::split_seed;
use crate::HarlowArgs;

#[derive(Serialize)]
struct TrialRow {
    episode: usize,
    trial: usize,
    choice: String,
    reward: u8,
}

pub fn run(config: &Config, args: HarlowArgs) -> Result<ExitCode, CliError> {
    let episodes = args.episodes.unwrap_or(config.episodes);
    let trials = args.trials.unwrap_or(config.trials);
    if trials == 0 {
        return Err(CliError::Usage("trials must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(split_seed(config.seed, "harlow"));

    let mut rows = Vec::with_capacity(episodes * trials);
    for episode in 1..=episodes {
        let baited = if rng.random::<bool>() { Door::A } else { Door::B };
        let first = if args.random_first {
            if rng.random::<bool>() {
                Door::A
            } else {
                Door::B
            }
        } else {
            Door::A
        };
        let mut agent = TaskSetAgent::new(first);
        let log = harlow_episode(&mut agent, constant_env(baited), trials)?;
        for t in &log.trials {
            rows.push(TrialRow {
                episode,
                trial: t.trial,
                choice: t.choice.to_string(),
                reward: u8::from(t.rewarded),
            });
        }
    }

    let rendered = match args.format.as_str() {
        "jsonl" => to_jsonl(&rows)?,
        _ => {
            let mut out = String::from("episode,trial,choice,reward\n");
            for r in &rows {
                out.push_str(&format!("{},{},{},{}\n", r.episode, r.trial, r.choice, r.reward));
            }
            out
        }
    };
    write_output(args.out.as_deref(), &rendered)?;
    Ok(ExitCode::SUCCESS)
}
