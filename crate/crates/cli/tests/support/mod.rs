#![allow(dead_code)]

use std::io::{BufRead, BufReader, Read, Write};
use std::net::{TcpListener, TcpStream};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};
use std::thread::{self, JoinHandle};
use std::time::Instant;

use hallugraph_cli::client::{cache_key, render_prompt};
use hallugraph_core::{Catalog, Source, Transcript};

pub fn fixture_store() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/store"))
}

/// Copies the fixture store into a fresh temporary directory.
pub fn copy_fixture_store(dir: &Path) -> PathBuf {
    let store = dir.join("store");
    std::fs::create_dir_all(&store).unwrap();
    std::fs::copy(
        fixture_store().join("transcripts.jsonl"),
        store.join("transcripts.jsonl"),
    )
    .unwrap();
    store
}

pub fn transcript(model: &str, key: &str, text: &str) -> Transcript {
    Transcript {
        model_id: model.to_owned(),
        prompt: render_prompt(&Catalog::bundled(), key).unwrap(),
        response_text: text.to_owned(),
        fetched_at: "2024-06-01T00:00:00Z".parse().unwrap(),
        source: Source::Live,
    }
}

/// Writes a store holding exactly `transcripts`.
pub fn write_store(dir: &Path, transcripts: &[Transcript]) -> PathBuf {
    let store = dir.join("store");
    std::fs::create_dir_all(&store).unwrap();
    let mut text = String::new();
    for t in transcripts {
        text.push_str(&serde_json::to_string(t).unwrap());
        text.push('\n');
    }
    std::fs::write(store.join("transcripts.jsonl"), text).unwrap();
    store
}

/// Python-style edge list over integer labels.
pub fn python_edges(edges: impl IntoIterator<Item = (usize, usize)>) -> String {
    let body: Vec<String> = edges
        .into_iter()
        .map(|(a, b)| format!("({a}, {b})"))
        .collect();
    format!("```python\nedges = [{}]\n```\n", body.join(", "))
}

pub fn run(args: &[&str]) -> i32 {
    hallugraph_cli::run(std::iter::once("hallugraph").chain(args.iter().copied()))
}

pub fn key_for(model: &str, key: &str) -> String {
    cache_key(model, &render_prompt(&Catalog::bundled(), key).unwrap())
}

#[derive(Debug, Clone)]
pub struct Received {
    pub at: Instant,
    pub request_line: String,
    pub headers: Vec<(String, String)>,
    pub body: String,
}

impl Received {
    pub fn header(&self, name: &str) -> Option<&str> {
        self.headers
            .iter()
            .find(|(k, _)| k.eq_ignore_ascii_case(name))
            .map(|(_, v)| v.as_str())
    }
}

/// Minimal HTTP/1.1 server answering each connection with the next scripted
/// (status, body) pair, then closing it.
pub struct StubServer {
    pub base_url: String,
    received: Arc<Mutex<Vec<Received>>>,
    handle: Option<JoinHandle<()>>,
}

impl StubServer {
    pub fn start(script: Vec<(u16, String)>) -> Self {
        let listener = TcpListener::bind("127.0.0.1:0").unwrap();
        let base_url = format!("http://{}/v1", listener.local_addr().unwrap());
        let received = Arc::new(Mutex::new(Vec::new()));
        let log = Arc::clone(&received);
        let handle = thread::spawn(move || {
            for (status, body) in script {
                let (stream, _) = match listener.accept() {
                    Ok(s) => s,
                    Err(_) => return,
                };
                if let Some(r) = serve(stream, status, &body) {
                    log.lock().unwrap().push(r);
                }
            }
        });
        Self {
            base_url,
            received,
            handle: Some(handle),
        }
    }

    pub fn received(&self) -> Vec<Received> {
        self.received.lock().unwrap().clone()
    }
}

impl Drop for StubServer {
    fn drop(&mut self) {
        // Unblock a pending accept if the script was not exhausted.
        let addr = self
            .base_url
            .trim_start_matches("http://")
            .trim_end_matches("/v1")
            .to_owned();
        let _ = TcpStream::connect(addr);
        if let Some(h) = self.handle.take() {
            let _ = h.join();
        }
    }
}

fn serve(stream: TcpStream, status: u16, body: &str) -> Option<Received> {
    let mut reader = BufReader::new(stream.try_clone().ok()?);
    let mut request_line = String::new();
    reader.read_line(&mut request_line).ok()?;
    if request_line.is_empty() {
        return None;
    }
    let at = Instant::now();
    let mut headers = Vec::new();
    loop {
        let mut line = String::new();
        reader.read_line(&mut line).ok()?;
        let line = line.trim_end();
        if line.is_empty() {
            break;
        }
        if let Some((k, v)) = line.split_once(':') {
            headers.push((k.trim().to_owned(), v.trim().to_owned()));
        }
    }
    let length: usize = headers
        .iter()
        .find(|(k, _)| k.eq_ignore_ascii_case("content-length"))
        .and_then(|(_, v)| v.parse().ok())
        .unwrap_or(0);
    let mut request_body = vec![0; length];
    reader.read_exact(&mut request_body).ok()?;

    let reason = match status {
        200 => "OK",
        401 => "Unauthorized",
        429 => "Too Many Requests",
        _ => "Status",
    };
    let response = format!(
        "HTTP/1.1 {status} {reason}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
        body.len()
    );
    let mut stream = stream;
    stream.write_all(response.as_bytes()).ok()?;
    stream.flush().ok()?;
    Some(Received {
        at,
        request_line: request_line.trim_end().to_owned(),
        headers,
        body: String::from_utf8(request_body).ok()?,
    })
}

/// Chat-completions reply carrying `content`.
pub fn completion_body(content: &str) -> String {
    serde_json::json!({
        "id": "stub",
        "object": "chat.completion",
        "choices": [{"index": 0, "message": {"role": "assistant", "content": content}, "finish_reason": "stop"}],
    })
    .to_string()
}

/// TOML config with a single endpoint.
pub fn endpoint_config(
    dir: &Path,
    model: &str,
    base_url: &str,
    key_env: &str,
    extra: &str,
) -> PathBuf {
    let path = dir.join("config.toml");
    std::fs::write(
        &path,
        format!(
            "[[endpoint]]\nmodel_id = \"{model}\"\nbase_url = \"{base_url}\"\napi_key_env = \"{key_env}\"\nrequest_timeout = 10\n{extra}\n"
        ),
    )
    .unwrap();
    path
}
