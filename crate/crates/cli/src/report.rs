use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// How an answer should be treated by callers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certainty {
    Definite,
    Inconclusive,
}

impl Certainty {
    pub fn exit_code(self) -> i32 {
        match self {
            Certainty::Definite => 0,
            Certainty::Inconclusive => 2,
        }
    }
}

/// What a subcommand produced, before it is rendered.
pub struct Outcome {
    pub status: &'static str,
    pub certainty: Certainty,
    pub iterations: Option<usize>,
    pub result: Value,
    pub text: String,
}

#[derive(Serialize)]
pub struct RunReport<'a> {
    pub command: &'a str,
    pub digest: String,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    pub result: &'a Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

pub fn digest(input: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(input)))
}
