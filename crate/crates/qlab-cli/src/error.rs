use serde::Serialize;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Unreadable or inconsistent configuration.
    Config(String),
    Library(qlab::Error),
    /// A worked-example value differs from its closed form.
    GoldenMismatch(String),
    Io(String),
}

impl From<qlab::Error> for CliError {
    fn from(e: qlab::Error) -> Self {
        CliError::Library(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(s) => write!(f, "invalid configuration: {s}"),
            CliError::Library(e) => write!(f, "{e}"),
            CliError::GoldenMismatch(s) => write!(f, "golden mismatch: {s}"),
            CliError::Io(s) => write!(f, "i/o error: {s}"),
        }
    }
}

impl std::error::Error for CliError {}

/// Library failures caused by the numerics rather than by the input.
fn numeric(e: &qlab::Error) -> bool {
    use qlab::Error::*;
    matches!(e, NoConvergence(_) | EigvecDrift(_) | NonCommuting(_) | NotBlockDiagonal(_) | Singular)
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Library(e) if numeric(e) => 1,
            CliError::GoldenMismatch(_) => 1,
            _ => 2,
        }
    }

    pub fn kind(&self) -> String {
        match self {
            CliError::Config(_) => "ConfigInvalid".into(),
            CliError::Library(e) => {
                let dbg = format!("{e:?}");
                dbg.split(['(', ' ', '{']).next().unwrap_or("Library").to_string()
            }
            CliError::GoldenMismatch(_) => "GoldenMismatch".into(),
            CliError::Io(_) => "Io".into(),
        }
    }

    pub fn info(&self) -> ErrorInfo {
        ErrorInfo { kind: self.kind(), message: self.to_string(), exit_code: self.exit_code() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
    pub exit_code: i32,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds_and_codes() {
        let e = CliError::from(qlab::Error::EvenCyclic);
        assert_eq!((e.kind().as_str(), e.exit_code()), ("EvenCyclic", 2));
        let d = CliError::from(qlab::Error::EigvecDrift(0.1));
        assert_eq!((d.kind().as_str(), d.exit_code()), ("EigvecDrift", 1));
        let n = CliError::from(qlab::Error::NonPrimitive { n: 4, k: 2 });
        assert_eq!(n.kind(), "NonPrimitive");
        assert_eq!(CliError::Config("x".into()).exit_code(), 2);
    }
}
