//! Textual forms of function specifications.
//!
//! Compact strings look like `"cara:1.0"`, `"prelec:0.65,1.0"` or
//! `"composed:power:0.5@tk:0.61"`; the equivalent JSON objects are
//! `{"family": "prelec", "params": [0.65, 1.0]}` and, for compositions,
//! `{"family": "composed", "transform": .., "base": ..}`.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{Transform, UtilityFn, WeightingFn};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FnSpec {
    Compact(String),
    Object {
        family: String,
        #[serde(default)]
        params: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        transform: Option<Box<FnSpec>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        base: Option<Box<FnSpec>>,
    },
}

fn split_compact(s: &str) -> Result<(String, Vec<f64>)> {
    let s = s.trim();
    let (family, rest) = match s.split_once(':') {
        Some((f, r)) => (f.trim(), Some(r)),
        None => (s, None),
    };
    if family.is_empty() {
        return Err(Error::Parse(format!("missing family name in {s:?}")));
    }
    let params = match rest {
        None => Vec::new(),
        Some(r) => r
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad parameter {tok:?} in {s:?}")))
            })
            .collect::<Result<_>>()?,
    };
    Ok((family.to_ascii_lowercase(), params))
}

fn arity(family: &str, params: &[f64], n: usize) -> Result<()> {
    if params.len() == n {
        Ok(())
    } else {
        Err(Error::Parse(format!(
            "{family} takes {n} parameter(s), got {}",
            params.len()
        )))
    }
}

fn utility_from_parts(family: &str, params: &[f64]) -> Result<UtilityFn> {
    match family {
        "linear" => arity(family, params, 0).map(|_| UtilityFn::linear()),
        "log" => arity(family, params, 0).map(|_| UtilityFn::log()),
        "cara" => arity(family, params, 1).and_then(|_| UtilityFn::cara(params[0])),
        "crra" => arity(family, params, 1).and_then(|_| UtilityFn::crra(params[0])),
        "quadratic" => arity(family, params, 1).and_then(|_| UtilityFn::quadratic(params[0])),
        other => Err(Error::Parse(format!("unknown utility family {other:?}"))),
    }
}

fn transform_from_parts(family: &str, params: &[f64]) -> Result<Transform> {
    match family {
        "power" => arity(family, params, 1).and_then(|_| Transform::power(params[0])),
        "exp" => arity(family, params, 1).and_then(|_| Transform::exponential(params[0])),
        "blend" => arity(family, params, 2).and_then(|_| Transform::blend(params[0], params[1])),
        other => Err(Error::Parse(format!("unknown transform family {other:?}"))),
    }
}

fn weighting_from_parts(family: &str, params: &[f64]) -> Result<WeightingFn> {
    match family {
        "identity" => arity(family, params, 0).map(|_| WeightingFn::identity()),
        "power" => arity(family, params, 1).and_then(|_| WeightingFn::power(params[0])),
        "prelec" => arity(family, params, 2).and_then(|_| WeightingFn::prelec(params[0], params[1])),
        "tk" => arity(family, params, 1).and_then(|_| WeightingFn::tk(params[0])),
        "composed" => Err(Error::Parse(
            "composed weighting needs a transform and a base".into(),
        )),
        other => Err(Error::Parse(format!("unknown weighting family {other:?}"))),
    }
}

impl FromStr for UtilityFn {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (family, params) = split_compact(s)?;
        utility_from_parts(&family, &params)
    }
}

impl FromStr for Transform {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (family, params) = split_compact(s)?;
        transform_from_parts(&family, &params)
    }
}

impl FromStr for WeightingFn {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("composed:") {
            let (t, base) = rest.split_once('@').ok_or_else(|| {
                Error::Parse(format!("composed weighting needs <transform>@<base>, got {s:?}"))
            })?;
            return WeightingFn::compose(t.parse()?, base.parse()?);
        }
        let (family, params) = split_compact(s)?;
        weighting_from_parts(&family, &params)
    }
}

impl TryFrom<FnSpec> for UtilityFn {
    type Error = Error;
    fn try_from(spec: FnSpec) -> Result<Self> {
        match spec {
            FnSpec::Compact(s) => s.parse(),
            FnSpec::Object { family, params, .. } => {
                utility_from_parts(&family.to_ascii_lowercase(), &params)
            }
        }
    }
}

impl TryFrom<FnSpec> for Transform {
    type Error = Error;
    fn try_from(spec: FnSpec) -> Result<Self> {
        match spec {
            FnSpec::Compact(s) => s.parse(),
            FnSpec::Object { family, params, .. } => {
                transform_from_parts(&family.to_ascii_lowercase(), &params)
            }
        }
    }
}

impl TryFrom<FnSpec> for WeightingFn {
    type Error = Error;
    fn try_from(spec: FnSpec) -> Result<Self> {
        match spec {
            FnSpec::Compact(s) => s.parse(),
            FnSpec::Object {
                family,
                params,
                transform,
                base,
            } => {
                let family = family.to_ascii_lowercase();
                if family != "composed" {
                    return weighting_from_parts(&family, &params);
                }
                match (transform, base) {
                    (Some(t), Some(b)) => {
                        WeightingFn::compose(Transform::try_from(*t)?, WeightingFn::try_from(*b)?)
                    }
                    _ => Err(Error::Parse(
                        "composed weighting needs both \"transform\" and \"base\"".into(),
                    )),
                }
            }
        }
    }
}

macro_rules! compact_serde {
    ($($ty:ty),*) => {$(
        impl From<$ty> for FnSpec {
            fn from(f: $ty) -> Self {
                FnSpec::Compact(f.to_string())
            }
        }

        impl Serialize for $ty {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.serialize_str(&self.to_string())
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let spec = FnSpec::deserialize(d)?;
                <$ty>::try_from(spec).map_err(serde::de::Error::custom)
            }
        }
    )*};
}

compact_serde!(UtilityFn, WeightingFn, Transform);
