//! A tiny OpenAI-style completions server on a local port. It echoes the
//! prompt split at spaces with a deterministic logprob per token; prompts that
//! arrive with images score every token 0.3 nats higher.

use std::io::{BufRead, BufReader, Read, Write};
use std::net::{TcpListener, TcpStream};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;
use std::thread;

use serde_json::{json, Value};

pub struct EchoServer {
    pub url: String,
    pub requests: Arc<AtomicUsize>,
}

#[derive(Clone, Copy)]
pub enum Behaviour {
    Echo,
    /// `503` for the first `n` requests, then echo.
    FailFirst(usize),
    /// Never returns logprobs, like a chat endpoint.
    NoLogprobs,
}

fn token_logprob(token: &str, images: usize) -> f64 {
    // FNV-1a, so the value depends on the token only
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in token.trim().bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    let base = -0.35 - (h % 97) as f64 / 40.0;
    if images > 0 {
        base + 0.3
    } else {
        base
    }
}

fn respond(body: &Value, behaviour: Behaviour) -> Value {
    let prompt = body["prompt"].as_str().unwrap_or_default();
    if body.get("echo").and_then(Value::as_bool) != Some(true) {
        let seed = body["seed"].as_u64().unwrap_or(0);
        return json!({ "choices": [{ "text": format!(" generated summary number {}", seed % 1000) }] });
    }
    if matches!(behaviour, Behaviour::NoLogprobs) {
        return json!({ "choices": [{ "text": prompt, "logprobs": null }] });
    }
    let images = body["images"].as_array().map_or(0, Vec::len);
    let (mut tokens, mut offsets, mut lps) = (Vec::new(), Vec::new(), Vec::new());
    let mut pos = 0;
    for (i, piece) in prompt.split_inclusive(' ').enumerate() {
        tokens.push(json!(piece));
        offsets.push(json!(pos));
        lps.push(if i == 0 { Value::Null } else { json!(token_logprob(piece, images)) });
        pos += piece.chars().count();
    }
    json!({
        "choices": [{
            "text": prompt,
            "logprobs": { "tokens": tokens, "token_logprobs": lps, "text_offset": offsets }
        }]
    })
}

fn handle(mut stream: TcpStream, behaviour: Behaviour, seen: usize) {
    let mut reader = BufReader::new(stream.try_clone().expect("clone stream"));
    let mut len = 0usize;
    loop {
        let mut line = String::new();
        if reader.read_line(&mut line).unwrap_or(0) == 0 {
            return;
        }
        let line = line.trim_end();
        if line.is_empty() {
            break;
        }
        if let Some((k, v)) = line.split_once(':') {
            if k.eq_ignore_ascii_case("content-length") {
                len = v.trim().parse().unwrap_or(0);
            }
        }
    }
    let mut body = vec![0u8; len];
    if reader.read_exact(&mut body).is_err() {
        return;
    }
    let (status, text) = match behaviour {
        Behaviour::FailFirst(n) if seen < n => ("503 Service Unavailable", "{\"error\":\"busy\"}".to_string()),
        _ => {
            let req: Value = serde_json::from_slice(&body).unwrap_or(Value::Null);
            ("200 OK", respond(&req, behaviour).to_string())
        }
    };
    let _ = write!(
        stream,
        "HTTP/1.1 {status}\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{text}",
        text.len()
    );
}

impl EchoServer {
    pub fn start(behaviour: Behaviour) -> Self {
        let listener = TcpListener::bind("127.0.0.1:0").expect("bind local port");
        let url = format!("http://{}", listener.local_addr().unwrap());
        let requests = Arc::new(AtomicUsize::new(0));
        let counter = requests.clone();
        thread::spawn(move || {
            for stream in listener.incoming().flatten() {
                let seen = counter.fetch_add(1, Ordering::SeqCst);
                thread::spawn(move || handle(stream, behaviour, seen));
            }
        });
        Self { url, requests }
    }

    pub fn count(&self) -> usize {
        self.requests.load(Ordering::SeqCst)
    }
}
