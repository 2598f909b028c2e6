//! Chat-completions client, prompt templates and cache keys.

use std::thread;
use std::time::{Duration, Instant};

use chrono::Utc;
use hallugraph_core::{Catalog, Source, Target, Transcript};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClientError {
    #[error("unknown target {0:?}")]
    UnknownTarget(String),
    #[error("environment variable {0} holding the API key is not set")]
    MissingApiKey(String),
    #[error("authentication rejected with status {0}")]
    Auth(u16),
    #[error("endpoint answered with status {status}: {body}")]
    Status { status: u16, body: String },
    #[error("gave up after {attempts} attempts: {last}")]
    RetriesExhausted { attempts: u32, last: String },
    #[error("malformed reply: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndpointConfig {
    pub model_id: String,
    /// Absolute URL; `/chat/completions` is appended.
    pub base_url: String,
    /// Name of the environment variable holding the bearer token.
    pub api_key_env: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub temperature: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_tokens: Option<u32>,
    /// Seconds.
    #[serde(default = "default_timeout")]
    pub request_timeout: f64,
    #[serde(default = "default_retries")]
    pub max_retries: u32,
    /// Seconds between consecutive requests to this endpoint.
    #[serde(default)]
    pub min_request_interval: f64,
}

fn default_timeout() -> f64 {
    60.0
}

fn default_retries() -> u32 {
    3
}

impl EndpointConfig {
    pub fn new(model_id: &str, base_url: &str, api_key_env: &str) -> Self {
        Self {
            model_id: model_id.to_owned(),
            base_url: base_url.to_owned(),
            api_key_env: api_key_env.to_owned(),
            temperature: None,
            max_tokens: None,
            request_timeout: default_timeout(),
            max_retries: default_retries(),
            min_request_interval: 0.0,
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        match url::Url::parse(&self.base_url) {
            Ok(u) if u.scheme() == "http" || u.scheme() == "https" => {}
            _ => {
                return Err(format!(
                    "base_url {:?} is not an absolute http(s) URL",
                    self.base_url
                ))
            }
        }
        if !(self.request_timeout.is_finite() && self.request_timeout > 0.0) {
            return Err("request_timeout must be positive".into());
        }
        if !(self.min_request_interval.is_finite() && self.min_request_interval >= 0.0) {
            return Err("min_request_interval must be non-negative".into());
        }
        Ok(())
    }

    pub fn completions_url(&self) -> String {
        format!("{}/chat/completions", self.base_url.trim_end_matches('/'))
    }
}

/// Prompt for a catalog key.
pub fn render_prompt(catalog: &Catalog, key: &str) -> Result<String, ClientError> {
    if !catalog.contains(key) {
        return Err(ClientError::UnknownTarget(key.to_owned()));
    }
    Ok(match key.parse::<Target>() {
        Ok(Target::Atlas(index)) => format!(
            "Provide me with graph {index} from the Graph Atlas, as a python edge list; print it"
        ),
        _ => {
            let name = &catalog.named(key).expect("checked above").prompt_name;
            format!("Provide me the so called \"{name}\" graph as a python edge list; print it")
        }
    })
}

/// Hex SHA-256 over the length-prefixed model id followed by the prompt bytes.
pub fn cache_key(model_id: &str, prompt: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update((model_id.len() as u64).to_le_bytes());
    hasher.update(model_id.as_bytes());
    hasher.update(prompt.as_bytes());
    hex::encode(hasher.finalize())
}

/// Exponential retry delays: `base`, `base·factor`, `base·factor²`, ...
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Backoff {
    pub base: Duration,
    pub factor: u32,
}

impl Default for Backoff {
    fn default() -> Self {
        Self {
            base: Duration::from_secs(1),
            factor: 2,
        }
    }
}

impl Backoff {
    pub fn delay(&self, retry: u32) -> Duration {
        self.base * self.factor.saturating_pow(retry)
    }
}

#[derive(Debug, Clone)]
pub struct FetchOutcome {
    pub transcript: Transcript,
    pub retries: u32,
}

/// One endpoint. Requests through the same client are spaced by
/// `min_request_interval`.
pub struct Client {
    config: EndpointConfig,
    api_key: String,
    agent: ureq::Agent,
    backoff: Backoff,
    last_request: Option<Instant>,
}

enum Attempt {
    Done(String),
    Retry(String),
}

impl Client {
    /// Reads the API key from the configured environment variable.
    pub fn new(config: EndpointConfig) -> Result<Self, ClientError> {
        let api_key = std::env::var(&config.api_key_env)
            .map_err(|_| ClientError::MissingApiKey(config.api_key_env.clone()))?;
        Ok(Self::with_key(config, api_key))
    }

    pub fn with_key(config: EndpointConfig, api_key: String) -> Self {
        let agent = ureq::Agent::config_builder()
            .timeout_global(Some(Duration::from_secs_f64(config.request_timeout)))
            .http_status_as_error(false)
            .build()
            .into();
        Self {
            config,
            api_key,
            agent,
            backoff: Backoff::default(),
            last_request: None,
        }
    }

    pub fn with_backoff(mut self, backoff: Backoff) -> Self {
        self.backoff = backoff;
        self
    }

    pub fn config(&self) -> &EndpointConfig {
        &self.config
    }

    /// Sends `prompt` as a single user message and returns the reply verbatim.
    pub fn fetch(&mut self, prompt: &str) -> Result<FetchOutcome, ClientError> {
        let mut body = json!({
            "model": self.config.model_id,
            "messages": [{"role": "user", "content": prompt}],
        });
        if let Some(t) = self.config.temperature {
            body["temperature"] = json!(t);
        }
        if let Some(m) = self.config.max_tokens {
            body["max_tokens"] = json!(m);
        }

        let mut retries = 0;
        loop {
            match self.attempt(&body)? {
                Attempt::Done(response_text) => {
                    return Ok(FetchOutcome {
                        transcript: Transcript {
                            model_id: self.config.model_id.clone(),
                            prompt: prompt.to_owned(),
                            response_text,
                            fetched_at: Utc::now(),
                            source: Source::Live,
                        },
                        retries,
                    });
                }
                Attempt::Retry(reason) if retries < self.config.max_retries => {
                    let delay = self.backoff.delay(retries);
                    log::warn!(
                        "{}: {reason}; retrying in {:.1}s",
                        self.config.model_id,
                        delay.as_secs_f64()
                    );
                    thread::sleep(delay);
                    retries += 1;
                }
                Attempt::Retry(last) => {
                    return Err(ClientError::RetriesExhausted {
                        attempts: retries + 1,
                        last,
                    })
                }
            }
        }
    }

    fn attempt(&mut self, body: &Value) -> Result<Attempt, ClientError> {
        self.pace();
        let sent = self
            .agent
            .post(&self.config.completions_url())
            .header("Authorization", &format!("Bearer {}", self.api_key))
            .send_json(body);
        self.last_request = Some(Instant::now());
        let mut response = match sent {
            Ok(r) => r,
            Err(e) => return Ok(Attempt::Retry(format!("transport error: {e}"))),
        };
        let status = response.status().as_u16();
        let text = match response.body_mut().read_to_string() {
            Ok(t) => t,
            Err(e) => return Ok(Attempt::Retry(format!("transport error: {e}"))),
        };
        match status {
            200..=299 => extract_content(&text).map(Attempt::Done),
            401 | 403 => Err(ClientError::Auth(status)),
            429 | 500..=599 => Ok(Attempt::Retry(format!("status {status}"))),
            _ => Err(ClientError::Status {
                status,
                body: text.chars().take(200).collect(),
            }),
        }
    }

    fn pace(&self) {
        let interval = Duration::from_secs_f64(self.config.min_request_interval);
        if let Some(last) = self.last_request {
            let since = last.elapsed();
            if since < interval {
                thread::sleep(interval - since);
            }
        }
    }
}

fn extract_content(text: &str) -> Result<String, ClientError> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| ClientError::Malformed(e.to_string()))?;
    value
        .pointer("/choices/0/message/content")
        .and_then(Value::as_str)
        .map(str::to_owned)
        .ok_or_else(|| ClientError::Malformed("no choices[0].message.content".into()))
}
