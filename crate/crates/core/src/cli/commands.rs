use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::input::{
    parse, required, BetaInput, ChannelInput, SelbergInput, SeriesInput, VerifyInput,
};
use super::{output, suites, RunConfig, EXIT_OK, EXIT_RESIDUAL};
use crate::channel::{self, AffineExponent, Channel, ExponentVector, GenericWeight};
use crate::closedform::{
    classical_selberg_product, contour_beta, contour_beta_product, generalized_selberg_breakdown,
    generalized_selberg_product, SelbergParams,
};
use crate::error::{Error, Result};
use crate::hgsys::{self, SELECTED_ACTION, SELECTED_CONVENTION};
use crate::oracle::{self, CycleSpec, PowerProduct};
use crate::report::{relative_error, ComplexValue};
use crate::special::{pole_distance, DEFAULT_POLE_TOL};

fn cv(z: Complex64) -> ComplexValue {
    ComplexValue::from(z)
}

fn reals(v: &ExponentVector) -> Vec<f64> {
    v.entries().iter().map(|z| z.re).collect()
}

fn sum_vs_integral(result: &oracle::QuadResult, closed: Complex64) -> Value {
    json!({
        "oracle": cv(result.value),
        "error_estimate": result.error_estimate,
        "level": result.level,
        "evaluations": result.evaluations,
        "monte_carlo": result.monte_carlo,
        "closed_form": cv(closed),
        "relative_error": relative_error(result.value, closed, f64::MIN_POSITIVE),
    })
}

fn beta_value(b: &BetaInput, cfg: &RunConfig) -> Result<Complex64> {
    let (a, bb) = (Complex64::new(b.a, 0.0), Complex64::new(b.b, 0.0));
    if pole_distance(1.0 - a) <= DEFAULT_POLE_TOL {
        contour_beta(a, bb)
    } else {
        contour_beta_product(a, bb).eval_with(cfg.precision)
    }
}

pub fn eval(cfg: &RunConfig) -> Result<Value> {
    let v = required(&cfg.input)?;
    if let Some(s) = v.get("selberg") {
        let s: SelbergInput = parse(s)?;
        let value =
            classical_selberg_product(&SelbergParams::from(&s))?.eval_with(cfg.precision)?;
        return Ok(json!({"kind": "classical_selberg", "value": cv(value)}));
    }
    if let Some(b) = v.get("beta") {
        let b: BetaInput = parse(b)?;
        return Ok(json!({"kind": "contour_beta", "value": cv(beta_value(&b, cfg)?)}));
    }
    if v.get("I").is_some() {
        let c: ChannelInput = parse(v)?;
        let p = c.params()?;
        let b = generalized_selberg_breakdown(&c.channel, &p)?;
        let value = generalized_selberg_product(&c.channel, &p)?.eval_with(cfg.precision)?;
        return Ok(json!({
            "kind": "generalized_selberg",
            "channel": c.channel,
            "phase": cv(b.phase),
            "leading_coefficient": cv(b.leading_coefficient),
            "opdam_factor": cv(b.opdam_factor),
            "value": cv(value),
        }));
    }
    Err(Error::Input(
        "eval input needs \"selberg\", \"beta\" or a channel \"I\"".into(),
    ))
}

pub fn oracle(cfg: &RunConfig) -> Result<Value> {
    let v = required(&cfg.input)?;
    let q = &cfg.quadrature;
    if let Some(s) = v.get("selberg") {
        let s: SelbergInput = parse(s)?;
        let sp = SelbergParams::from(&s);
        let r = oracle::quad_simplex_selberg(&sp, q)?;
        let closed = classical_selberg_product(&sp)?.eval_with(cfg.precision)?;
        return Ok(sum_vs_integral(&r, closed));
    }
    if let Some(b) = v.get("beta") {
        let b: BetaInput = parse(b)?;
        let f = PowerProduct::new()
            .real_term(0.0, b.a - 1.0)
            .real_term(1.0, b.b - 1.0);
        let cyc = CycleSpec::loop_around_origin(Complex64::new(1.0, 0.0), Vec::new());
        let r = oracle::quad_loop(&f, &cyc, q)?;
        return Ok(sum_vs_integral(&r, beta_value(&b, cfg)?));
    }
    if v.get("I").is_some() {
        let c: ChannelInput = parse(v)?;
        let p = c.params()?;
        let z =
            c.z.clone()
                .ok_or_else(|| Error::Input("channel oracle needs \"z\"".into()))?;
        if let Some(sigma) = c.sigma {
            let probe = oracle::probe_exponents(&c.channel, &p, &z, sigma, q)?;
            let mu = channel::mu(&c.channel, &p.lambda, p.kappa)?;
            let dev = probe
                .estimate
                .entries()
                .iter()
                .zip(mu.entries())
                .map(|(e, m)| (e - m).norm())
                .fold(0.0, f64::max);
            return Ok(json!({
                "estimate": reals(&probe.estimate),
                "mu": reals(&mu),
                "max_deviation": dev,
                "sigma": probe.sigma,
                "min_separation": probe.min_separation,
                "ill_conditioned": probe.ill_conditioned,
            }));
        }
        let r = oracle::quad_channel_integral(&c.channel, &p, &z, q)?;
        return Ok(json!({
            "oracle": cv(r.value),
            "error_estimate": r.error_estimate,
            "level": r.level,
            "evaluations": r.evaluations,
        }));
    }
    Err(Error::Input(
        "oracle input needs \"selberg\", \"beta\" or a channel \"I\"".into(),
    ))
}

fn format_rational(r: Rational64) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `κ·μ_j` as text, e.g. `(-(λ,α1) - 1)/κ`.
fn format_affine(e: &AffineExponent) -> String {
    let mut parts: Vec<(bool, String)> = Vec::new();
    for (l, c) in e.lambda.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = format!("(λ,α{})", l + 1);
        let mag = c.abs();
        let body = if mag.is_one() {
            term
        } else {
            format!("{}·{term}", format_rational(mag))
        };
        parts.push((c.is_negative(), body));
    }
    if !e.constant.is_zero() {
        parts.push((e.constant.is_negative(), format_rational(e.constant.abs())));
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut text = String::new();
    for (i, (neg, body)) in parts.iter().enumerate() {
        match (i, neg) {
            (0, true) => text.push('-'),
            (0, false) => {}
            (_, true) => text.push_str(" - "),
            (_, false) => text.push_str(" + "),
        }
        text.push_str(body);
    }
    if parts.len() == 1 {
        format!("{text}/κ")
    } else {
        format!("({text})/κ")
    }
}

pub fn channel(cfg: &RunConfig) -> Result<Value> {
    let c: ChannelInput = parse(required(&cfg.input)?)?;
    let ch = &c.channel;
    let kappa_for_phase = c.kappa.unwrap_or(1.0);
    let analysis = channel::analyze(ch, kappa_for_phase)?;
    let amb = ch.ambient()?;
    let mu_exact: Vec<String> = channel::mu_exact(ch, &amb)?
        .iter()
        .map(format_affine)
        .collect();
    let mut out = json!({
        "I": ch.indices(),
        "n": ch.n(),
        "N": ch.big_n(),
        "s": analysis.s,
        "a": analysis.a,
        "level_inversions": ch.level_inversions(),
        "mu_exact": mu_exact,
    });
    if let Some(kappa) = c.kappa {
        out["A"] = json!(cv(analysis.phase));
        out["phase_angle"] = json!(analysis.phase_angle);
        if let Some(lam) = &c.lambda {
            let lam = GenericWeight::new(lam.clone());
            let mu = channel::mu(ch, &lam, kappa)?;
            let eta = channel::eta(&mu, kappa)?;
            out["mu"] = json!(reals(&mu));
            out["eta"] = json!(reals(&eta));
            out["genericity"] = json!(channel::genericity_check(
                &eta,
                channel::DEFAULT_GENERICITY_TOL
            )?);
        }
    } else if analysis.a.iter().all(|&x| x == 0) {
        out["A"] = json!(cv(Complex64::new(1.0, 0.0)));
    }
    Ok(out)
}

pub fn series(cfg: &RunConfig) -> Result<Value> {
    let s: SeriesInput = parse(required(&cfg.input)?)?;
    channel::check_kappa(s.kappa)?;
    let eta = match (&s.eta, &s.indices) {
        (Some(e), None) => ExponentVector::from_real(e.iter().copied()),
        (None, Some(idx)) => {
            let ch = Channel::new(idx.clone(), s.n.unwrap_or(1))?;
            let lam = GenericWeight::new(s.lambda.clone().unwrap_or_default());
            channel::eta(&channel::mu(&ch, &lam, s.kappa)?, s.kappa)?
        }
        _ => {
            return Err(Error::Input(
                "series input needs exactly one of \"eta\" or \"I\"".into(),
            ))
        }
    };
    channel::require_generic(&eta, channel::DEFAULT_GENERICITY_TOL)?;
    let k = 1.0 / s.kappa;
    let series = hgsys::hc_series(&eta, k, s.order)?;
    let l_residual = hgsys::l_residual(&series, &eta, k)?;
    let sekiguchi = if (2..=hgsys::MAX_POINTS).contains(&eta.len()) {
        s.zeta
            .iter()
            .map(|&z| {
                hgsys::sekiguchi_eigencheck(
                    &series,
                    &eta,
                    Complex64::new(z, 0.0),
                    k,
                    SELECTED_CONVENTION,
                    SELECTED_ACTION,
                )
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };
    Ok(json!({
        "eta": reals(&eta),
        "mu": reals(series.base_exponent()),
        "k": k,
        "order": s.order,
        "l_eigenvalue": cv(hgsys::l_eigenvalue(&eta, k)?),
        "l_residual": l_residual,
        "sekiguchi": sekiguchi,
        "series": series.to_dump(),
    }))
}

pub fn verify(cfg: &RunConfig) -> Result<(Value, i32)> {
    let vi: VerifyInput = match &cfg.input {
        Some(v) => parse(v)?,
        None => VerifyInput::default(),
    };
    let scale = vi.threshold_scale.unwrap_or(1.0);
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::Input(format!(
            "threshold_scale must be positive, got {scale}"
        )));
    }
    let rows = suites::run_suite(&cfg.suite, cfg.seed, vi.samples, scale)?;
    let pass = rows.iter().all(|r| r.pass);
    let value = json!({
        "suite": cfg.suite,
        "seed": cfg.seed,
        "pass": pass,
        "rows": rows,
    });
    if let Some(path) = &cfg.emit_plot_data {
        std::fs::write(path, output::to_csv(&value)?)
            .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    }
    Ok((value, if pass { EXIT_OK } else { EXIT_RESIDUAL }))
}
