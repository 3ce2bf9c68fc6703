mod common;

use std::time::Duration;

use common::echo_server::{Behaviour, EchoServer};
use vibe_core::provider::openai::CompletionsProvider;
use vibe_core::provider::template::TemplateStore;
use vibe_core::provider::transport::{HttpTransport, RecordingTransport, ReplayTransport, RetryPolicy};
use vibe_core::provider::{FrameSet, Provider, ProviderError, ScoringContext, Slot};

fn retry(n: u32) -> RetryPolicy {
    RetryPolicy { max_attempts: n, base_delay: Duration::from_millis(1) }
}

fn live(server: &EchoServer, attempts: u32) -> CompletionsProvider {
    let http = HttpTransport::new(&server.url, Some("test-key".into()), retry(attempts)).unwrap();
    CompletionsProvider::new(Box::new(http), "echo-model", TemplateStore::bundled())
}

fn ctx() -> ScoringContext {
    ScoringContext::new("grounding-v1").with_text(Slot::MaskedText, "a <MASK> of the sort")
}

#[test]
fn echo_scores_only_the_target_tokens() {
    let server = EchoServer::start(Behaviour::Echo);
    let p = live(&server, 1);
    let lp: vibe_core::domain::TokenLogProbs<f64> = p.score_target(&ctx(), "merge sort on an array").unwrap();
    assert_eq!(lp.len(), 5);
    assert!(lp.all_finite());
    assert!(lp.tokens.iter().all(|t| t.logprob < 0.0));
}

#[test]
fn images_change_the_score() {
    let dir = tempfile::tempdir().unwrap();
    let frame = dir.path().join("f.png");
    image::RgbImage::new(4, 4).save(&frame).unwrap();
    let server = EchoServer::start(Behaviour::Echo);
    let p = live(&server, 1);
    let frames = FrameSet { video_id: "v".into(), masked: false, paths: vec![frame.to_string_lossy().into_owned()] };
    let with: vibe_core::domain::TokenLogProbs<f64> = p.score_target(&ctx().with_frames(frames), "merge sort").unwrap();
    let without: vibe_core::domain::TokenLogProbs<f64> = p.score_target(&ctx(), "merge sort").unwrap();
    assert!((with.total - without.total - 0.6).abs() < 1e-9, "{with:?} vs {without:?}");
}

#[test]
fn transient_failures_are_retried() {
    let server = EchoServer::start(Behaviour::FailFirst(2));
    let p = live(&server, 3);
    let lp: Result<vibe_core::domain::TokenLogProbs<f64>, _> = p.score_target(&ctx(), "sort");
    assert!(lp.is_ok());
    assert_eq!(server.count(), 3);

    let server = EchoServer::start(Behaviour::FailFirst(5));
    let p = live(&server, 2);
    let err = Provider::<f64>::score_target(&p, &ctx(), "sort").unwrap_err();
    assert!(matches!(err, ProviderError::Http { status: 503, .. }), "{err}");
    assert_eq!(server.count(), 2);
}

#[test]
fn endpoints_without_logprobs_are_refused() {
    let server = EchoServer::start(Behaviour::NoLogprobs);
    let p = live(&server, 1);
    assert!(matches!(p.probe(), Err(ProviderError::EchoUnsupported(_))));
    let http = HttpTransport::new(&server.url, None, retry(1)).unwrap();
    let chat = CompletionsProvider::new(Box::new(http), "m", TemplateStore::bundled()).with_path("v1/chat/completions");
    assert!(matches!(chat, Err(ProviderError::EchoUnsupported(_))));
}

#[test]
fn recorded_exchanges_replay_offline() {
    let dir = tempfile::tempdir().unwrap();
    let server = EchoServer::start(Behaviour::Echo);
    let http = HttpTransport::new(&server.url, Some("secret".into()), retry(1)).unwrap();
    let rec = RecordingTransport::new(http, dir.path()).unwrap();
    let p = CompletionsProvider::new(Box::new(rec), "echo-model", TemplateStore::bundled());
    let live: vibe_core::domain::TokenLogProbs<f64> = p.score_target(&ctx(), "merge sort").unwrap();

    for f in std::fs::read_dir(dir.path()).unwrap() {
        let text = std::fs::read_to_string(f.unwrap().path()).unwrap();
        assert!(!text.contains("secret"), "credentials leaked into a fixture");
    }

    let replay = ReplayTransport::new(dir.path()).unwrap();
    let p = CompletionsProvider::new(Box::new(replay), "echo-model", TemplateStore::bundled());
    let again: vibe_core::domain::TokenLogProbs<f64> = p.score_target(&ctx(), "merge sort").unwrap();
    assert_eq!(live, again);
    let miss = Provider::<f64>::score_target(&p, &ctx(), "quick sort").unwrap_err();
    assert!(matches!(miss, ProviderError::ReplayMiss { .. }));
    assert!(miss.is_fatal());
}
