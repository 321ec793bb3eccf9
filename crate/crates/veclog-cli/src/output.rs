//! Output documents: a stable machine-readable JSON shape and scalar
//! formatting shared by every subcommand.
//!
//! Keys serialize in a fixed (alphabetical) order and all scalars are
//! rendered as decimal strings with 12 significant digits, so identical
//! invocations yield byte-identical output.

use serde_json::{json, Value};

/// Decimal string with 12 significant digits.
pub fn fmt_scalar(x: f64) -> String {
    if x == 0.0 {
        return "0.000000000000".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Exit status conventions: 0 ok, 1 usage error, 2 evaluation or
/// verification failure.
pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_EVAL: i32 = 2;

/// What a subcommand hands back to `main` for printing.
pub struct Outcome {
    pub document: Value,
    pub text: String,
    pub exit: i32,
}

pub struct DocumentParts<'a> {
    pub command: &'a str,
    pub input: Value,
    pub settings: Value,
}

impl DocumentParts<'_> {
    pub fn ok(&self, result: Value, text: String) -> Outcome {
        self.ok_with_exit(result, text, EXIT_OK)
    }

    pub fn ok_with_exit(&self, result: Value, text: String, exit: i32) -> Outcome {
        Outcome {
            document: json!({
                "command": self.command,
                "input": self.input,
                "settings": self.settings,
                "status": "ok",
                "result": result,
            }),
            text,
            exit,
        }
    }

    pub fn error(&self, error: CliError) -> Outcome {
        let mut payload = json!({
            "kind": error.kind,
            "message": error.message,
        });
        if let Some((line, column)) = error.position {
            payload["line"] = json!(line);
            payload["column"] = json!(column);
        }
        let text = format!("error[{}]: {}", error.kind, error.message);
        Outcome {
            document: json!({
                "command": self.command,
                "input": self.input,
                "settings": self.settings,
                "status": "error",
                "error": payload,
            }),
            text,
            exit: error.exit,
        }
    }
}

/// A failure to report, with its document kind and exit code.
pub struct CliError {
    pub kind: &'static str,
    pub message: String,
    pub position: Option<(u32, u32)>,
    pub exit: i32,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> CliError {
        CliError {
            kind: "usage",
            message: message.into(),
            position: None,
            exit: EXIT_USAGE,
        }
    }

    pub fn evaluation(message: impl Into<String>) -> CliError {
        CliError {
            kind: "evaluation",
            message: message.into(),
            position: None,
            exit: EXIT_EVAL,
        }
    }

    pub fn from_parse(err: veclog::parser::ParseError) -> CliError {
        let kind = match err.kind {
            veclog::parser::ParseErrorKind::UnexpectedChar(_) => "lexical",
            _ => "syntax",
        };
        CliError {
            kind,
            message: err.to_string(),
            position: Some((err.line, err.column)),
            exit: EXIT_USAGE,
        }
    }

    pub fn from_eval(err: veclog::eval::EvalError) -> CliError {
        CliError::evaluation(err.to_string())
    }
}
