use std::collections::BTreeMap;
use std::thread;

use anyhow::Context as _;

use super::{CliError, Completion, Context};
use crate::client::{cache_key, render_prompt, Backoff, Client, ClientError, FetchOutcome};
use crate::manifest::{EntryStatus, ManifestEntry, RunManifest};

#[derive(Debug, Clone, Default)]
pub struct FetchOptions {
    pub models: Vec<String>,
    pub targets: Vec<String>,
    /// Serve only from the store; never touch the network.
    pub replay: bool,
    pub backoff: Backoff,
}

/// Fills the store with one transcript per (model, target) pair and writes
/// the run manifest. Failures are recorded per pair.
pub fn cmd_fetch(
    ctx: &mut Context,
    opts: &FetchOptions,
) -> Result<(RunManifest, Completion), CliError> {
    if opts.models.is_empty() || opts.targets.is_empty() {
        return Err(CliError::usage(
            "fetch needs at least one model and one target",
        ));
    }
    let mut entries = Vec::new();
    // model -> [(entry index, prompt)]
    let mut pending: BTreeMap<String, Vec<(usize, String)>> = BTreeMap::new();

    for model in &opts.models {
        for target in &opts.targets {
            let mut entry = ManifestEntry {
                model_id: model.clone(),
                target: target.clone(),
                prompt: None,
                cache_key: None,
                status: EntryStatus::Failed,
                classification: None,
                retries: 0,
                error: None,
            };
            match render_prompt(&ctx.catalog, target) {
                Err(e) => entry.error = Some(e.to_string()),
                Ok(prompt) => {
                    entry.cache_key = Some(cache_key(model, &prompt));
                    if let Some(t) = ctx.store.lookup(model, &prompt) {
                        entry.status = EntryStatus::Cached;
                        entry.classification = Some(ctx.parser.classify_response(&t.response_text));
                    } else if opts.replay {
                        entry.error = Some("not in store (replay mode)".into());
                    } else {
                        pending
                            .entry(model.clone())
                            .or_default()
                            .push((entries.len(), prompt.clone()));
                    }
                    entry.prompt = Some(prompt);
                }
            }
            entries.push(entry);
        }
    }

    let mut clients = Vec::new();
    for (model, jobs) in pending {
        let client = match ctx.config.endpoint(&model) {
            None => Err(format!("no endpoint configured for model {model}")),
            Some(cfg) => Client::new(cfg.clone())
                .map(|c| c.with_backoff(opts.backoff))
                .map_err(|e| e.to_string()),
        };
        match client {
            Ok(c) => clients.push((c, jobs)),
            Err(message) => {
                for (i, _) in jobs {
                    entries[i].error = Some(message.clone());
                }
            }
        }
    }

    // Endpoints run in parallel; each one is sequential and paced.
    let mut results: Vec<(usize, Result<FetchOutcome, ClientError>)> = thread::scope(|scope| {
        let handles: Vec<_> = clients
            .into_iter()
            .map(|(mut client, jobs)| {
                scope.spawn(move || {
                    jobs.into_iter()
                        .map(|(i, prompt)| (i, client.fetch(&prompt)))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("fetch thread panicked"))
            .collect()
    });
    results.sort_by_key(|(i, _)| *i);

    let mut new_fetches = 0;
    for (i, result) in results {
        let entry = &mut entries[i];
        match result {
            Ok(outcome) => {
                entry.classification = Some(
                    ctx.parser
                        .classify_response(&outcome.transcript.response_text),
                );
                entry.retries = outcome.retries;
                entry.status = EntryStatus::Fetched;
                ctx.store
                    .append(outcome.transcript)
                    .context("appending transcript")?;
                new_fetches += 1;
            }
            Err(e) => {
                if let ClientError::RetriesExhausted { attempts, .. } = &e {
                    entry.retries = attempts - 1;
                }
                log::error!("{} / {}: {e}", entry.model_id, entry.target);
                entry.error = Some(e.to_string());
            }
        }
    }
    for entry in entries.iter().filter(|e| e.status == EntryStatus::Failed) {
        if let Some(error) = &entry.error {
            log::warn!("{} / {}: {error}", entry.model_id, entry.target);
        }
    }

    let manifest = RunManifest {
        toolkit_version: env!("CARGO_PKG_VERSION").to_owned(),
        config: ctx.config.clone(),
        seed: ctx.seed,
        replay: opts.replay,
        models: opts.models.clone(),
        targets: opts.targets.clone(),
        entries,
        new_fetches,
    };
    super::write_file(&ctx.store.manifest_path(), manifest.to_json())?;
    let completion = Completion::from_failures(manifest.failures());
    Ok((manifest, completion))
}
