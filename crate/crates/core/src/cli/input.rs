use std::io::Read;

use serde::Deserialize;
use serde_json::Value;

use crate::channel::Channel;
use crate::closedform::{Params, SelbergParams};
use crate::error::{Error, Result};

/// Inline JSON when the argument starts with `{` or `[`, stdin for `-`,
/// otherwise a file path.
pub fn read_input(arg: &str) -> Result<Value> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        arg.to_string()
    } else if arg == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::Input(format!("{arg}: {e}")))?
    };
    Ok(serde_json::from_str(&text)?)
}

pub fn required(input: &Option<Value>) -> Result<&Value> {
    input
        .as_ref()
        .ok_or_else(|| Error::Input("this command needs --input".into()))
}

pub fn parse<T: for<'de> Deserialize<'de>>(v: &Value) -> Result<T> {
    Ok(serde_json::from_value(v.clone())?)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelbergInput {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub m: usize,
}

impl From<&SelbergInput> for SelbergParams {
    fn from(s: &SelbergInput) -> Self {
        SelbergParams::real(s.a, s.b, s.c, s.m)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BetaInput {
    pub a: f64,
    pub b: f64,
}

/// A channel, optionally with `λ` (pairings `(λ,α_j)`) and `κ`.
#[derive(Debug, Deserialize)]
pub struct ChannelInput {
    #[serde(flatten)]
    pub channel: Channel,
    #[serde(default)]
    pub lambda: Option<Vec<f64>>,
    #[serde(default)]
    pub kappa: Option<f64>,
    /// Points `0 < z₁ < … < z_N` for quadrature.
    #[serde(default)]
    pub z: Option<Vec<f64>>,
    /// Scale factor for the exponent probe.
    #[serde(default)]
    pub sigma: Option<f64>,
}

impl ChannelInput {
    pub fn params(&self) -> Result<Params> {
        let kappa = self
            .kappa
            .ok_or_else(|| Error::Input("missing \"kappa\"".into()))?;
        let lambda = match &self.lambda {
            Some(l) => l.clone(),
            None if self.channel.big_n() == 0 => vec![0.0; self.channel.n()],
            None => return Err(Error::Input("missing \"lambda\"".into())),
        };
        Params::new(lambda, kappa)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesInput {
    pub eta: Option<Vec<f64>>,
    #[serde(rename = "I")]
    pub indices: Option<Vec<usize>>,
    pub n: Option<usize>,
    pub lambda: Option<Vec<f64>>,
    pub kappa: f64,
    #[serde(default = "default_order")]
    pub order: u32,
    #[serde(default = "default_zetas")]
    pub zeta: Vec<f64>,
}

fn default_order() -> u32 {
    8
}

fn default_zetas() -> Vec<f64> {
    vec![0.0, 1.0, -0.7]
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyInput {
    /// Parameter sets per check; each suite has its own default.
    pub samples: Option<usize>,
    /// Multiplies every threshold.
    pub threshold_scale: Option<f64>,
}
