use std::fmt;

use rdu_premia::Error;

/// Exit status 2 for bad input, 1 for failures during computation or output.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (prefix, msg) = match self {
            CliError::Input(m) => ("invalid-input", m),
            CliError::Compute(m) => ("computation-error", m),
        };
        let one_line: Vec<&str> = msg.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        write!(f, "{prefix}: {}", one_line.join(" "))
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_)
            | Error::Range(_)
            | Error::Monotonicity(_)
            | Error::InvalidParameter(_)
            | Error::Lottery(_)
            | Error::Scenario(_)
            | Error::Grid(_)
            | Error::Parse(_) => CliError::Input(e.to_string()),
            Error::Degenerate(_)
            | Error::Infeasible(_)
            | Error::Bracket { .. }
            | Error::MaxIter { .. }
            | Error::Stalled { .. } => CliError::Compute(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
