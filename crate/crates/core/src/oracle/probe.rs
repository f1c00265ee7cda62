//! Exponent estimates from the response of an integral to rescaling one `z_j`.

use num_complex::Complex64;
use serde::Serialize;

use super::{quad_channel_integral, QuadratureConfig};
use crate::channel::{Channel, ExponentVector};
use crate::closedform::Params;
use crate::error::{Error, Result};

/// Consecutive points closer than this ratio make the estimate unreliable.
pub const MIN_SEPARATION: f64 = 10.0;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeReport {
    pub estimate: ExponentVector,
    pub sigma: f64,
    /// Smallest `z_{j+1}/z_j` over all probe configurations.
    pub min_separation: f64,
    pub ill_conditioned: bool,
}

/// `μ̂_j = log(I(…, σz_j, …)/I(…, z_j/σ, …)) / (2 log σ)` for any integral `f`.
pub fn probe_with<F>(z_base: &[f64], sigma: f64, mut f: F) -> Result<ProbeReport>
where
    F: FnMut(&[f64]) -> Result<Complex64>,
{
    if !(sigma > 1.0 && sigma.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "scale factor must exceed 1, got {sigma}"
        )));
    }
    let mut min_separation = f64::INFINITY;
    let mut estimate = Vec::with_capacity(z_base.len());
    for j in 0..z_base.len() {
        let mut up = z_base.to_vec();
        let mut down = z_base.to_vec();
        up[j] *= sigma;
        down[j] /= sigma;
        for zs in [&up, &down] {
            for w in zs.windows(2) {
                min_separation = min_separation.min(w[1] / w[0]);
            }
        }
        let hi = f(&up)?;
        let lo = f(&down)?;
        estimate.push((hi / lo).ln() / (2.0 * sigma.ln()));
    }
    let ill_conditioned = z_base.len() > 1 && min_separation < MIN_SEPARATION;
    Ok(ProbeReport {
        estimate: ExponentVector::new(estimate),
        sigma,
        min_separation,
        ill_conditioned,
    })
}

/// Exponent probe for the channel integral on its natural cycle.
pub fn probe_exponents(
    ch: &Channel,
    p: &Params,
    z_base: &[f64],
    sigma: f64,
    cfg: &QuadratureConfig,
) -> Result<ProbeReport> {
    probe_with(z_base, sigma, |z| {
        Ok(quad_channel_integral(ch, p, z, cfg)?.value)
    })
}
