use serde_json::{json, Value};

pub mod exit {
    pub const OK: i32 = 0;
    /// Negative verdict: incoherent, unprovable, invalid proof, illegal frame.
    pub const NEGATIVE: i32 = 1;
    pub const INVALID_INPUT: i32 = 2;
    pub const USAGE: i32 = 64;
}

/// Outcome of one command.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub exit: i32,
    pub verdict: String,
    pub text: String,
    pub json: Value,
}

impl Report {
    /// `fields` is merged into the JSON object after `command` and `verdict`.
    pub fn new(command: &str, exit: i32, verdict: &str, text: String, fields: Value) -> Report {
        let mut json = json!({"command": command, "verdict": verdict});
        if let (Some(obj), Value::Object(extra)) = (json.as_object_mut(), fields) {
            obj.extend(extra);
        }
        Report {
            exit,
            verdict: verdict.to_string(),
            text,
            json,
        }
    }

    pub fn error(command: &str, code: i32, message: impl Into<String>) -> Report {
        let message = message.into();
        Report::new(
            command,
            code,
            "error",
            format!("error: {message}\n"),
            json!({"error": message}),
        )
    }
}
