use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Allowed deviation of the probability total from one.
pub const PROB_SUM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct State {
    pub x: f64,
    pub p: f64,
}

/// A finite lottery in canonical form: payoffs strictly ascending, each with
/// positive probability, probabilities summing to one.
///
/// Serialized as a JSON array of `{"x": .., "p": ..}` objects.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<State>", into = "Vec<State>")]
pub struct Lottery {
    states: Vec<State>,
}

impl Lottery {
    /// Validates and canonicalizes `(payoff, probability)` pairs.
    ///
    /// Probabilities must lie in `(0, 1]` and sum to one within
    /// [`PROB_SUM_TOL`]; they are never renormalized. Equal payoffs are merged.
    pub fn new<I>(states: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let mut states: Vec<State> = states.into_iter().map(|(x, p)| State { x, p }).collect();
        if states.is_empty() {
            return Err(Error::Lottery("lottery has no states".into()));
        }
        for (i, s) in states.iter().enumerate() {
            if !s.x.is_finite() {
                return Err(Error::Lottery(format!("state {i}: payoff {} is not finite", s.x)));
            }
            if !(s.p > 0.0 && s.p <= 1.0) {
                return Err(Error::Lottery(format!(
                    "state {i}: probability {} outside (0, 1]",
                    s.p
                )));
            }
        }
        let total: f64 = states.iter().map(|s| s.p).sum();
        if (total - 1.0).abs() > PROB_SUM_TOL {
            return Err(Error::Lottery(format!(
                "probabilities sum to {total}, not 1 (tolerance {PROB_SUM_TOL:e})"
            )));
        }

        states.sort_by(|a, b| a.x.total_cmp(&b.x));
        let mut merged: Vec<State> = Vec::with_capacity(states.len());
        for s in states {
            match merged.last_mut() {
                Some(last) if last.x == s.x => last.p += s.p,
                _ => merged.push(s),
            }
        }
        Ok(Self { states: merged })
    }

    /// The sure payoff `c`.
    pub fn degenerate(c: f64) -> Result<Self> {
        Self::new([(c, 1.0)])
    }

    /// States sorted by ascending payoff.
    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Reads a CSV table with a header row naming columns `x` and `p`.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr
            .headers()
            .map_err(|e| Error::Parse(format!("csv header: {e}")))?
            .clone();
        let column = |name: &str| {
            headers
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| Error::Parse(format!("csv header lacks column {name:?}")))
        };
        let (ix, ip) = (column("x")?, column("p")?);

        let mut pairs = Vec::new();
        for record in rdr.records() {
            let record = record.map_err(|e| Error::Parse(format!("csv: {e}")))?;
            let line = record.position().map_or(0, |p| p.line());
            let field = |idx: usize, name: &str| -> Result<f64> {
                let raw = record.get(idx).unwrap_or("");
                raw.parse::<f64>().map_err(|_| {
                    Error::Parse(format!("line {line}, field {name}: cannot parse {raw:?}"))
                })
            };
            pairs.push((field(ix, "x")?, field(ip, "p")?));
        }
        Self::new(pairs)
    }
}

impl TryFrom<Vec<State>> for Lottery {
    type Error = Error;
    fn try_from(states: Vec<State>) -> Result<Self> {
        Self::new(states.into_iter().map(|s| (s.x, s.p)))
    }
}

impl From<Lottery> for Vec<State> {
    fn from(l: Lottery) -> Self {
        l.states
    }
}
