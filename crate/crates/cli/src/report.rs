use std::process::ExitCode;

use alphaperm::{Complex64, Error};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// Exit statuses shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    /// A check or a comparison against published data failed.
    Mismatch = 1,
    /// Unparseable input, inadmissible parameters, bad arguments.
    Input = 2,
    /// A size guard refused the input.
    TooLarge = 3,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(s as u8)
    }
}

/// A failed command: message plus exit status.
#[derive(Debug)]
pub struct Failure {
    pub status: Status,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            status: Status::Input,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::SizeLimit { .. } => Status::TooLarge,
            _ => Status::Input,
        };
        Self {
            status,
            message: e.to_string(),
        }
    }
}

/// What a command produced: text lines for people, a JSON value for
/// scripts, warnings for stderr, and the exit status.
pub struct Output {
    pub lines: Vec<String>,
    pub json: Value,
    pub warnings: Vec<String>,
    pub status: Status,
}

impl Output {
    pub fn new(lines: Vec<String>, json: Value) -> Self {
        Self {
            lines,
            json,
            warnings: Vec::new(),
            status: Status::Ok,
        }
    }
}

/// Serialised form of a run. `serde_json::Map` keeps keys sorted, so the
/// bytes depend only on the inputs.
#[derive(Serialize)]
pub struct RunResult<'a> {
    pub command: &'a [String],
    pub inputs_digest: String,
    pub outputs: &'a Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

/// SHA-256 over the argument list and the contents of any input files.
pub fn digest(args: &[String], inputs: &[Vec<u8>]) -> String {
    let mut h = Sha256::new();
    for a in args {
        h.update(a.as_bytes());
        h.update([0]);
    }
    for bytes in inputs {
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(bytes);
    }
    format!("{:x}", h.finalize())
}

pub fn complex_json(z: Complex64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

pub fn serialize_complex<S: serde::Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    complex_json(*z).serialize(s)
}

/// A count as a JSON number when it fits in `u64`, else as a decimal string.
pub fn big_json<T: ToString>(x: &T) -> Value
where
    for<'a> u64: TryFrom<&'a T>,
{
    match u64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{z}")
    }
}
