//! Edge-list extraction from free-form model responses.
//!
//! The scanner looks for parenthesized pairs `(<token>, <token>)` where a
//! token is an integer or a quoted string. Pairs only count when they sit
//! inside a bracket (`[...]`, `{...}`) or a fenced code block; tuples in prose
//! are ignored. Parentheses that open a function call are skipped, except for
//! `add_edge(u, v)`.

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

use crate::graph::LabeledEdgeList;

/// One prompt/response exchange with a model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub model_id: String,
    pub prompt: String,
    pub response_text: String,
    pub fetched_at: DateTime<Utc>,
    pub source: Source,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Live,
    Replay,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    EdgeList,
    Refusal,
    CodeOnly,
    Empty,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::EdgeList => "edge_list",
            Classification::Refusal => "refusal",
            Classification::CodeOnly => "code_only",
            Classification::Empty => "empty",
        }
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WarningKind {
    Duplicate,
    SelfLoop,
    TruncatedTail,
    MixedLabelTypes,
    /// Tuples were found in more than one list or code block; they are merged.
    MultipleLists,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseWarning {
    pub kind: WarningKind,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseResult {
    pub classification: Classification,
    pub edges: LabeledEdgeList,
    pub warnings: Vec<ParseWarning>,
}

impl ParseResult {
    pub fn warning(&self, kind: WarningKind) -> Option<usize> {
        self.warnings
            .iter()
            .find(|w| w.kind == kind)
            .map(|w| w.count)
    }
}

/// Cue lists used to classify responses that carry no edge list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ParserConfig {
    /// Case-insensitive phrases marking a refusal.
    pub refusal_cues: Vec<String>,
    /// Substrings marking code that loads the graph from a library.
    pub generator_patterns: Vec<String>,
}

impl Default for ParserConfig {
    fn default() -> Self {
        Self {
            refusal_cues: ["I don't have access", "I cannot provide", "as an AI"]
                .map(String::from)
                .to_vec(),
            generator_patterns: [
                "karate_club_graph(",
                "les_miserables_graph(",
                "graph_atlas(",
            ]
            .map(String::from)
            .to_vec(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct ResponseParser {
    config: ParserConfig,
}

impl ResponseParser {
    pub fn new(config: ParserConfig) -> Self {
        Self { config }
    }

    pub fn config(&self) -> &ParserConfig {
        &self.config
    }

    pub fn extract_edge_list(&self, text: &str) -> ParseResult {
        let scan = scan_tuples(text);
        let classification = self.classify_scan(text, !scan.tuples.is_empty());

        let mut warnings = Vec::new();
        let mut edges = LabeledEdgeList::new();
        let mut seen = HashSet::new();
        let (mut duplicates, mut self_loops) = (0, 0);
        let (mut ints, mut quoted) = (0, 0);
        for tuple in &scan.tuples {
            for token in [&tuple.a, &tuple.b] {
                if token.quoted {
                    quoted += 1;
                } else {
                    ints += 1;
                }
            }
            let (a, b) = (tuple.a.text, tuple.b.text);
            let key = if a <= b { (a, b) } else { (b, a) };
            if !seen.insert(key) {
                duplicates += 1;
                continue;
            }
            if a == b {
                self_loops += 1;
            }
            edges.push(a, b);
        }

        let mut warn = |kind, count| {
            if count > 0 {
                warnings.push(ParseWarning { kind, count });
            }
        };
        warn(WarningKind::Duplicate, duplicates);
        warn(WarningKind::SelfLoop, self_loops);
        warn(WarningKind::TruncatedTail, usize::from(scan.truncated));
        warn(WarningKind::MixedLabelTypes, ints.min(quoted));
        warn(
            WarningKind::MultipleLists,
            scan.contexts_with_tuples.saturating_sub(1),
        );

        ParseResult {
            classification,
            edges,
            warnings,
        }
    }

    pub fn classify_response(&self, text: &str) -> Classification {
        self.classify_scan(text, !scan_tuples(text).tuples.is_empty())
    }

    fn classify_scan(&self, text: &str, has_tuples: bool) -> Classification {
        if text.trim().is_empty() {
            return Classification::Empty;
        }
        if has_tuples {
            return Classification::EdgeList;
        }
        if self
            .config
            .generator_patterns
            .iter()
            .any(|p| !p.is_empty() && text.contains(p.as_str()))
        {
            return Classification::CodeOnly;
        }
        let normalized = text.replace('\u{2019}', "'").to_lowercase();
        if self
            .config
            .refusal_cues
            .iter()
            .any(|cue| !cue.is_empty() && normalized.contains(&cue.to_lowercase()))
        {
            return Classification::Refusal;
        }
        // Nothing extractable and no recognizable cue.
        Classification::Empty
    }
}

/// [`ResponseParser::extract_edge_list`] with the default cue lists.
pub fn extract_edge_list(text: &str) -> ParseResult {
    ResponseParser::default().extract_edge_list(text)
}

/// [`ResponseParser::classify_response`] with the default cue lists.
pub fn classify_response(text: &str) -> Classification {
    ResponseParser::default().classify_response(text)
}

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    quoted: bool,
}

#[derive(Debug)]
struct RawTuple<'a> {
    a: Token<'a>,
    b: Token<'a>,
}

#[derive(Debug, Default)]
struct Scan<'a> {
    tuples: Vec<RawTuple<'a>>,
    truncated: bool,
    contexts_with_tuples: usize,
}

enum TupleParse<'a> {
    Tuple(RawTuple<'a>, usize),
    NotATuple,
    Truncated,
}

fn scan_tuples(text: &str) -> Scan<'_> {
    let bytes = text.as_bytes();
    let mut scan = Scan::default();
    let mut depth = 0usize;
    let mut in_fence = false;
    // Bumped whenever a new list or fence opens; tuples are tallied per context.
    let mut context = 0usize;
    let mut last_context_with_tuple = None;
    let mut at_line_start = true;
    let mut i = 0;

    while i < bytes.len() {
        if at_line_start {
            let rest = &text[i..];
            let indent = rest.len() - rest.trim_start_matches([' ', '\t']).len();
            if rest[indent..].starts_with("```") {
                in_fence = !in_fence;
                if in_fence {
                    context += 1;
                }
                depth = 0;
                i = rest.find('\n').map_or(bytes.len(), |nl| i + nl + 1);
                continue;
            }
        }
        at_line_start = false;
        match bytes[i] {
            b'\n' => at_line_start = true,
            b'[' | b'{' => {
                if depth == 0 && !in_fence {
                    context += 1;
                }
                depth += 1;
            }
            b']' | b'}' => depth = depth.saturating_sub(1),
            b'(' if (depth > 0 || in_fence) && !is_call(text, i) => match parse_tuple(text, i) {
                TupleParse::Tuple(tuple, end) => {
                    scan.tuples.push(tuple);
                    if last_context_with_tuple != Some(context) {
                        last_context_with_tuple = Some(context);
                        scan.contexts_with_tuples += 1;
                    }
                    i = end;
                    continue;
                }
                TupleParse::Truncated => {
                    scan.truncated = true;
                    break;
                }
                TupleParse::NotATuple => {}
            },
            _ => {}
        }
        i += 1;
    }
    scan
}

/// True when the parenthesis at `open` directly follows an identifier, i.e.
/// opens a call. `add_edge(` is treated as a tuple.
fn is_call(text: &str, open: usize) -> bool {
    let before = &text[..open];
    let ident_start = before
        .rfind(|c: char| !(c.is_alphanumeric() || c == '_'))
        .map_or(0, |p| {
            p + before[p..].chars().next().map_or(1, char::len_utf8)
        });
    let ident = &before[ident_start..];
    !ident.is_empty() && ident != "add_edge"
}

fn parse_tuple(text: &str, open: usize) -> TupleParse<'_> {
    let bytes = text.as_bytes();
    let mut i = open + 1;

    macro_rules! step {
        ($e:expr) => {
            match $e {
                Step::Ok(v) => v,
                Step::Eof => return TupleParse::Truncated,
                Step::Fail => return TupleParse::NotATuple,
            }
        };
    }

    i = skip_ws(bytes, i);
    let (a, next) = step!(parse_token(text, i));
    i = skip_ws(bytes, next);
    step!(expect(bytes, i, b','));
    i = skip_ws(bytes, i + 1);
    let (b, next) = step!(parse_token(text, i));
    i = skip_ws(bytes, next);
    if i < bytes.len() && bytes[i] == b',' {
        i = skip_ws(bytes, i + 1);
    }
    step!(expect(bytes, i, b')'));
    TupleParse::Tuple(RawTuple { a, b }, i + 1)
}

enum Step<T> {
    Ok(T),
    Eof,
    Fail,
}

fn skip_ws(bytes: &[u8], mut i: usize) -> usize {
    while i < bytes.len() && bytes[i].is_ascii_whitespace() {
        i += 1;
    }
    i
}

fn expect(bytes: &[u8], i: usize, want: u8) -> Step<()> {
    match bytes.get(i) {
        None => Step::Eof,
        Some(&c) if c == want => Step::Ok(()),
        Some(_) => Step::Fail,
    }
}

fn parse_token(text: &str, start: usize) -> Step<(Token<'_>, usize)> {
    let bytes = text.as_bytes();
    let Some(&first) = bytes.get(start) else {
        return Step::Eof;
    };
    match first {
        b'\'' | b'"' => {
            let body = start + 1;
            match bytes[body..].iter().position(|&c| c == first || c == b'\n') {
                None => Step::Eof,
                Some(off) if bytes[body + off] == first && off > 0 => Step::Ok((
                    Token {
                        text: &text[body..body + off],
                        quoted: true,
                    },
                    body + off + 1,
                )),
                Some(_) => Step::Fail,
            }
        }
        b'-' | b'0'..=b'9' => {
            let digits_from = if first == b'-' { start + 1 } else { start };
            let mut end = digits_from;
            while end < bytes.len() && bytes[end].is_ascii_digit() {
                end += 1;
            }
            if end == digits_from {
                return if end == bytes.len() {
                    Step::Eof
                } else {
                    Step::Fail
                };
            }
            match bytes.get(end) {
                // A float or identifier continuation is not an integer label.
                Some(c) if c.is_ascii_alphabetic() || *c == b'.' || *c == b'_' => Step::Fail,
                _ => Step::Ok((
                    Token {
                        text: &text[start..end],
                        quoted: false,
                    },
                    end,
                )),
            }
        }
        _ => Step::Fail,
    }
}
