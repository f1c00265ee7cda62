//! Named verification suites over seeded random parameters.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::channel::{self, Channel, GenericWeight};
use crate::closedform::{opdam_factor, Params};
use crate::error::{Error, Result};
use crate::hgsys::{self, SELECTED_ACTION, SELECTED_CONVENTION};
use crate::identities::{self, IdentityReport};
use crate::sampling::Sampler;

pub const SUITES: &[&str] = &[
    "example2",
    "two_variable",
    "four_index",
    "three_index",
    "series",
    "sekiguchi",
    "monomial",
    "all",
];

const MAX_DRAWS: usize = 100;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteRow {
    pub suite: String,
    pub case: String,
    pub residual: f64,
    pub threshold: f64,
    pub pass: bool,
    pub parameters: BTreeMap<String, f64>,
}

struct Ctx {
    sampler: Sampler,
    samples: Option<usize>,
    scale: f64,
    rows: Vec<SuiteRow>,
}

impl Ctx {
    fn samples(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }

    fn push(
        &mut self,
        suite: &str,
        case: String,
        residual: f64,
        threshold: f64,
        parameters: BTreeMap<String, f64>,
    ) {
        let threshold = threshold * self.scale;
        self.rows.push(SuiteRow {
            suite: suite.into(),
            case,
            residual,
            threshold,
            pass: residual <= threshold,
            parameters,
        });
    }

    fn push_report(&mut self, suite: &str, case: String, r: &IdentityReport, threshold: f64) {
        self.push(suite, case, r.residual(), threshold, r.parameters.clone());
    }

    /// Redraws while the parameters come out non-generic.
    fn draw<T>(&mut self, mut f: impl FnMut(&mut Sampler) -> Result<T>) -> Result<T> {
        let mut last = None;
        for _ in 0..MAX_DRAWS {
            match f(&mut self.sampler) {
                Err(e @ Error::NonGeneric(_)) => last = Some(e),
                other => return other,
            }
        }
        Err(last.unwrap_or_else(|| Error::NonGeneric("no generic draw".into())))
    }
}

fn params_map(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn example2(ctx: &mut Ctx) -> Result<()> {
    for i in 0..ctx.samples(10) {
        let r = ctx.draw(|s| {
            let kappa = s.kappa();
            let a = s.signed_fraction();
            identities::channel_consistency(&[2, 1, 1], 1, &Params::from_level_one(a, kappa)?)
        })?;
        let dev = r
            .closed_form_deviation
            .unwrap_or(f64::INFINITY)
            .max(r.max_pairwise_deviation);
        ctx.push(
            "example2",
            format!("sample{i}"),
            dev,
            1e-10,
            r.report.parameters.clone(),
        );
    }
    Ok(())
}

fn two_variable(ctx: &mut Ctx) -> Result<()> {
    for i in 0..ctx.samples(10) {
        let r = ctx.draw(|s| {
            let kappa = s.kappa();
            let x = s.signed_fraction();
            identities::two_variable_chain(&GenericWeight::new(vec![-x * kappa]), kappa)
        })?;
        ctx.push_report(
            "two_variable",
            format!("sample{i}.product"),
            &r.product,
            1e-10,
        );
        ctx.push_report(
            "two_variable",
            format!("sample{i}.closed_form"),
            &r.closed_form,
            1e-10,
        );
    }
    Ok(())
}

fn two_level_weight(s: &mut Sampler) -> (f64, GenericWeight) {
    let kappa = s.kappa();
    let a = s.signed_fraction();
    let b = s.signed_fraction();
    (kappa, GenericWeight::new(vec![a * kappa, -b * kappa]))
}

fn four_index(ctx: &mut Ctx) -> Result<()> {
    for i in 0..ctx.samples(5) {
        let reports = ctx.draw(|s| {
            let (kappa, lam) = two_level_weight(s);
            (0..=6)
                .map(|m| identities::four_index_check(&lam, kappa, m))
                .collect::<Result<Vec<_>>>()
        })?;
        for (m, r) in reports.iter().enumerate() {
            ctx.push_report("four_index", format!("sample{i}.M{m}"), r, 1e-9);
        }
    }
    Ok(())
}

fn three_index(ctx: &mut Ctx) -> Result<()> {
    for i in 0..ctx.samples(5) {
        let reports = ctx.draw(|s| {
            let kappa = s.kappa();
            let a = s.signed_fraction();
            let lam = GenericWeight::new(vec![-a * kappa]);
            (1..=6)
                .map(|m| identities::three_index_check(&lam, kappa, m))
                .collect::<Result<Vec<_>>>()
        })?;
        for (m, r) in reports.iter().enumerate() {
            ctx.push_report("three_index", format!("sample{i}.M{}", m + 1), r, 1e-9);
        }
    }
    Ok(())
}

fn series(ctx: &mut Ctx) -> Result<()> {
    for i in 0..ctx.samples(10) {
        let (kappa, lam, r) = ctx.draw(|s| {
            let (kappa, lam) = two_level_weight(s);
            let r = hgsys::series_vs_2f1(&lam, kappa, 8)?;
            Ok((kappa, lam, r))
        })?;
        let p = params_map(&[
            ("kappa", kappa),
            ("pairing1", lam.pairings[0]),
            ("pairing2", lam.pairings[1]),
        ]);
        ctx.push("series", format!("sample{i}"), r.max_deviation, 1e-10, p);
    }
    Ok(())
}

const ZETAS: [f64; 3] = [0.0, 1.0, -0.7];

fn sekiguchi(ctx: &mut Ctx) -> Result<()> {
    for i in 0..ctx.samples(10) {
        let (kappa, eta, s) = ctx.draw(|smp| {
            let (kappa, lam) = two_level_weight(smp);
            let ch = Channel::new(vec![3, 2], 2)?;
            let eta = channel::eta(&channel::mu(&ch, &lam, kappa)?, kappa)?;
            channel::require_generic(&eta, channel::DEFAULT_GENERICITY_TOL)?;
            let s = hgsys::hc_series(&eta, 1.0 / kappa, 8)?;
            Ok((kappa, eta, s))
        })?;
        let k = 1.0 / kappa;
        let base = [
            ("kappa", kappa),
            ("eta1", eta.entries()[0].re),
            ("eta2", eta.entries()[1].re),
        ];
        for zeta in ZETAS {
            let r = hgsys::sekiguchi_eigencheck(
                &s,
                &eta,
                Complex64::new(zeta, 0.0),
                k,
                SELECTED_CONVENTION,
                SELECTED_ACTION,
            )?;
            let mut p = params_map(&base);
            p.insert("zeta".into(), zeta);
            ctx.push(
                "sekiguchi",
                format!("sample{i}.zeta{zeta}"),
                r.residual,
                1e-9,
                p,
            );
        }
        let reps =
            hgsys::coefficient_eigenchecks(&s, &eta, k, SELECTED_CONVENTION, SELECTED_ACTION)?;
        for (r, rep) in reps.iter().enumerate() {
            ctx.push(
                "sekiguchi",
                format!("sample{i}.D{}", 2 - r),
                rep.residual,
                1e-9,
                params_map(&base),
            );
        }
    }
    Ok(())
}

fn monomial(ctx: &mut Ctx) -> Result<()> {
    for _ in 0..ctx.samples(1) {
        for n in 1..=3usize {
            for big_n in 1..=4usize {
                for level in 1..=n + 1 {
                    let ch = Channel::new(vec![level; big_n], n)?;
                    let (kappa, v) = ctx.draw(|s| {
                        let kappa = s.kappa();
                        let lam = GenericWeight::new(
                            (0..n).map(|_| s.signed_fraction() * kappa).collect(),
                        );
                        let eta = channel::eta(&channel::mu(&ch, &lam, kappa)?, kappa)?;
                        Ok((kappa, opdam_factor(&eta, kappa, big_n)?))
                    })?;
                    let p = params_map(&[("kappa", kappa), ("n", n as f64), ("N", big_n as f64)]);
                    let case = format!("n{n}.N{big_n}.i{level}");
                    ctx.push("monomial", case, (v - 1.0).norm(), 1e-12, p);
                }
            }
        }
    }
    Ok(())
}

type SuiteFn = fn(&mut Ctx) -> Result<()>;

/// Runs `name` (or every suite for `"all"`).
pub fn run_suite(
    name: &str,
    seed: u64,
    samples: Option<usize>,
    threshold_scale: f64,
) -> Result<Vec<SuiteRow>> {
    let mut ctx = Ctx {
        sampler: Sampler::new(seed),
        samples,
        scale: threshold_scale,
        rows: Vec::new(),
    };
    let table: [(&str, SuiteFn); 7] = [
        ("example2", example2),
        ("two_variable", two_variable),
        ("four_index", four_index),
        ("three_index", three_index),
        ("series", series),
        ("sekiguchi", sekiguchi),
        ("monomial", monomial),
    ];
    let mut matched = false;
    for (suite, f) in table {
        if name == "all" || name == suite {
            matched = true;
            f(&mut ctx)?;
        }
    }
    if !matched {
        return Err(Error::Input(format!(
            "unknown suite {name:?}; expected one of {SUITES:?}"
        )));
    }
    Ok(ctx.rows)
}
