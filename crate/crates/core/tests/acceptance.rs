//! Acceptance gate: one line per criterion, non-zero exit if any fails.

use std::time::{Duration, Instant};

use selberg::channel::{self, distance_to_integer, Channel, GenericWeight};
use selberg::closedform::{
    classical_selberg_ordered, contour_beta, generalized_selberg, monomial_exponent, opdam_factor,
    Params, SelbergParams,
};
use selberg::hgsys::{self, SELECTED_ACTION, SELECTED_CONVENTION};
use selberg::identities::{four_index_check, three_index_check, two_variable_chain};
use selberg::oracle::{
    probe_exponents, quad_loop, quad_simplex_selberg, CycleSpec, PowerProduct, QuadratureConfig,
};
use selberg::report::relative_error;
use selberg::sampling::Sampler;
use selberg::{Complex64, Error, Result};

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn max(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter().fold(0.0, f64::max)
}

/// Redraws parameters that come out non-generic.
fn generic<T>(s: &mut Sampler, mut f: impl FnMut(&mut Sampler) -> Result<T>) -> Result<T> {
    loop {
        match f(s) {
            Err(Error::NonGeneric(_)) => continue,
            other => return other,
        }
    }
}

fn classical_selberg() -> Result<Outcome> {
    let mut s = Sampler::new(101);
    let cfg = QuadratureConfig::with_tolerances(1e-15, 1e-11);
    let mut worst12: f64 = 0.0;
    for m in [1, 2] {
        for _ in 0..20 {
            let sp = SelbergParams::real(
                s.uniform(0.2, 2.5),
                s.uniform(0.2, 2.5),
                s.uniform(0.05, 1.0),
                m,
            );
            let r = quad_simplex_selberg(&sp, &cfg)?;
            worst12 = worst12.max(relative_error(
                r.value,
                classical_selberg_ordered(&sp)?,
                f64::MIN_POSITIVE,
            ));
        }
    }
    let cfg3 = QuadratureConfig::with_tolerances(1e-15, 1e-7);
    let (mut worst3, mut worst_mc, mut mc_count) = (0.0f64, 0.0f64, 0);
    for _ in 0..3 {
        let sp = SelbergParams::real(
            s.uniform(0.4, 2.0),
            s.uniform(0.4, 2.0),
            s.uniform(0.05, 0.6),
            3,
        );
        let r = quad_simplex_selberg(&sp, &cfg3)?;
        let e = relative_error(r.value, classical_selberg_ordered(&sp)?, f64::MIN_POSITIVE);
        if r.monte_carlo {
            mc_count += 1;
            worst_mc = worst_mc.max(e);
        } else {
            worst3 = worst3.max(e);
        }
    }
    Ok(Outcome {
        pass: worst12 <= 1e-8 && worst3 <= 1e-5 && worst_mc <= 1e-3,
        detail: format!(
            "m=1,2 max rel err {worst12:.2e} (tol 1e-8); m=3 max rel err {worst3:.2e} (tol 1e-5); \
             monte carlo samples {mc_count}/3, max rel err {worst_mc:.2e} (tol 1e-3)"
        ),
    })
}

fn loop_beta() -> Result<Outcome> {
    let mut s = Sampler::new(202);
    let cfg = QuadratureConfig::with_tolerances(1e-15, 1e-11);
    let cyc = CycleSpec::loop_around_origin(c(1.0), Vec::new());
    let mut worst: f64 = 0.0;
    let mut n = 0;
    while n < 20 {
        let (a, b) = (s.uniform(-2.0, 3.0), s.uniform(0.05, 3.0));
        if distance_to_integer(c(a)) < 0.05 || distance_to_integer(c(a + b)) < 0.05 {
            continue;
        }
        n += 1;
        let f = PowerProduct::new()
            .real_term(0.0, a - 1.0)
            .real_term(1.0, b - 1.0);
        let r = quad_loop(&f, &cyc, &cfg)?;
        worst = worst.max(relative_error(
            r.value,
            contour_beta(c(a), c(b))?,
            f64::MIN_POSITIVE,
        ));
    }
    Ok(Outcome {
        pass: worst <= 1e-8,
        detail: format!("20 samples, max rel err {worst:.2e} (tol 1e-8)"),
    })
}

fn three_orderings() -> Result<Outcome> {
    let mut s = Sampler::new(303);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let devs = generic(&mut s, |s| {
            let kappa = s.kappa();
            let a = s.signed_fraction();
            let p = Params::from_level_one(a, kappa)?;
            let want = contour_beta(c(a), c(1.0 - 3.0 / kappa))?;
            [[2, 1, 1], [1, 2, 1], [1, 1, 2]]
                .iter()
                .map(|i| {
                    Ok(relative_error(
                        generalized_selberg(&Channel::new(i.to_vec(), 1)?, &p)?,
                        want,
                        0.0,
                    ))
                })
                .collect::<Result<Vec<f64>>>()
        })?;
        worst = worst.max(max(devs));
    }
    Ok(Outcome {
        pass: worst <= 1e-10,
        detail: format!(
            "(2,1,1),(1,2,1),(1,1,2) vs loop Beta, 10 samples, max rel err {worst:.2e} (tol 1e-10)"
        ),
    })
}

fn section_four_chain() -> Result<Outcome> {
    let mut s = Sampler::new(404);
    let (mut prod, mut thm) = (0.0f64, 0.0f64);
    for _ in 0..10 {
        let r = generic(&mut s, |s| {
            let kappa = s.kappa();
            let x = s.signed_fraction();
            two_variable_chain(&GenericWeight::new(vec![-x * kappa]), kappa)
        })?;
        prod = prod.max(r.product.rel_residual);
        thm = thm.max(r.closed_form.rel_residual);
    }
    Ok(Outcome {
        pass: prod <= 1e-10 && thm <= 1e-10,
        detail: format!(
            "10 samples, Selberg×conversion vs nested loops {prod:.2e}, nested loops vs closed form {thm:.2e} (tol 1e-10)"
        ),
    })
}

fn two_level_weight(s: &mut Sampler) -> (f64, GenericWeight) {
    let kappa = s.kappa();
    let (a, b) = (s.signed_fraction(), s.signed_fraction());
    (kappa, GenericWeight::new(vec![a * kappa, -b * kappa]))
}

fn four_index() -> Result<Outcome> {
    let mut s = Sampler::new(505);
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let res = generic(&mut s, |s| {
            let (kappa, lam) = two_level_weight(s);
            (0..=6)
                .map(|m| Ok(four_index_check(&lam, kappa, m)?.rel_residual))
                .collect::<Result<Vec<_>>>()
        })?;
        worst = worst.max(max(res));
    }
    Ok(Outcome {
        pass: worst <= 1e-9,
        detail: format!("M=0..6, 5 samples each, max rel residual {worst:.2e} (tol 1e-9)"),
    })
}

fn three_index() -> Result<Outcome> {
    let mut s = Sampler::new(606);
    let mut worst: f64 = 0.0;
    for _ in 0..5 {
        let res = generic(&mut s, |s| {
            let kappa = s.kappa();
            let lam = GenericWeight::new(vec![-s.signed_fraction() * kappa]);
            (1..=6)
                .map(|m| Ok(three_index_check(&lam, kappa, m)?.rel_residual))
                .collect::<Result<Vec<_>>>()
        })?;
        worst = worst.max(max(res));
    }
    Ok(Outcome {
        pass: worst <= 1e-9,
        detail: format!("M=1..6, 5 samples each, max scaled residual {worst:.2e} (tol 1e-9)"),
    })
}

fn series_vs_gauss() -> Result<Outcome> {
    let mut s = Sampler::new(707);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let r = generic(&mut s, |s| {
            let (kappa, lam) = two_level_weight(s);
            hgsys::series_vs_2f1(&lam, kappa, 8)
        })?;
        worst = worst.max(r.max_deviation);
    }
    Ok(Outcome {
        pass: worst <= 1e-10,
        detail: format!("order 8, 10 samples, max coefficient deviation {worst:.2e} (tol 1e-10)"),
    })
}

fn sekiguchi() -> Result<Outcome> {
    let mut s = Sampler::new(808);
    let mut worst: f64 = 0.0;
    let mut selection_agrees = true;
    for _ in 0..10 {
        let (eta, k, series) = generic(&mut s, |s| {
            let (kappa, lam) = two_level_weight(s);
            let ch = Channel::new(vec![3, 2], 2)?;
            let eta = channel::eta(&channel::mu(&ch, &lam, kappa)?, kappa)?;
            channel::require_generic(&eta, channel::DEFAULT_GENERICITY_TOL)?;
            let series = hgsys::hc_series(&eta, 1.0 / kappa, 8)?;
            Ok((eta, 1.0 / kappa, series))
        })?;
        for zeta in [0.0, 1.0, -0.7] {
            let r = hgsys::sekiguchi_eigencheck(
                &series,
                &eta,
                c(zeta),
                k,
                SELECTED_CONVENTION,
                SELECTED_ACTION,
            )?;
            worst = worst.max(r.residual);
        }
        let best = &hgsys::select_convention(&series, &eta, c(1.0), k)?[0];
        selection_agrees &= best.convention == SELECTED_CONVENTION;
    }
    Ok(Outcome {
        pass: worst <= 1e-9 && selection_agrees,
        detail: format!(
            "N=2, order 8, ζ∈{{0,1,−0.7}}, 10 samples, δ={SELECTED_CONVENTION:?}/{SELECTED_ACTION:?}, \
             max residual {worst:.2e} (tol 1e-9), convention reselected every sample: {selection_agrees}"
        ),
    })
}

fn monomial_law() -> Result<Outcome> {
    let mut s = Sampler::new(909);
    let mut worst_opdam: f64 = 0.0;
    for n in 1..=3usize {
        for big_n in 1..=4usize {
            for level in 1..=n + 1 {
                let ch = Channel::new(vec![level; big_n], n)?;
                let v = generic(&mut s, |s| {
                    let kappa = s.kappa();
                    let lam =
                        GenericWeight::new((0..n).map(|_| s.signed_fraction() * kappa).collect());
                    let eta = channel::eta(&channel::mu(&ch, &lam, kappa)?, kappa)?;
                    opdam_factor(&eta, kappa, big_n)
                })?;
                worst_opdam = worst_opdam.max((v - 1.0).norm());
            }
        }
    }
    let cfg = QuadratureConfig::with_tolerances(1e-15, 1e-10);
    let ch = Channel::new(vec![2, 2], 1)?;
    let mut worst_probe: f64 = 0.0;
    // The exterior cycle converges for a > 0.
    for (a, kappa) in [(0.43, 4.7), (0.81, 6.3), (0.27, 3.1)] {
        let p = Params::from_level_one(a, kappa)?;
        let want = monomial_exponent(&ch, &p)?;
        let r = probe_exponents(&ch, &p, &[1e-3, 1.0], 2.0, &cfg)?;
        worst_probe = worst_probe.max(max(r.estimate.entries().iter().map(|e| (e - want).norm())));
    }
    Ok(Outcome {
        pass: worst_opdam <= 1e-12 && worst_probe <= 1e-3,
        detail: format!(
            "opdam factor of all-equal channels (n≤3, N≤4) max |φ(1)−1| {worst_opdam:.2e} (tol 1e-12); \
             (2,2) probe vs monomial exponent max dev {worst_probe:.2e} (tol 1e-3)"
        ),
    })
}

fn exponent_probe() -> Result<Outcome> {
    let cfg = QuadratureConfig::with_tolerances(1e-15, 1e-10);
    let ch = Channel::new(vec![1, 2, 1], 1)?;
    let mut worst: f64 = 0.0;
    for (a, kappa) in [(0.41, 5.3), (-0.28, 3.7), (0.66, 8.2)] {
        let p = Params::from_level_one(a, kappa)?;
        let r = probe_exponents(&ch, &p, &[1e-4, 1.0, 1e4], 2.0, &cfg)?;
        worst = worst.max((r.estimate.entries()[1] - (a - 2.0 / kappa)).norm());
    }
    Ok(Outcome {
        pass: worst <= 1e-3,
        detail: format!("(1,2,1): μ₂ vs (λ,−α)/κ − 2/κ, 3 samples, max dev {worst:.2e} (tol 1e-3)"),
    })
}

type Criterion = (&'static str, u64, fn() -> Result<Outcome>);

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "classical Selberg vs ordered-simplex quadrature",
            60,
            classical_selberg,
        ),
        ("loop Beta vs loop quadrature", 30, loop_beta),
        ("three orderings of a level-two channel", 1, three_orderings),
        ("two-variable contour chain", 1, section_four_chain),
        ("four-index identity", 10, four_index),
        ("three-index identity", 5, three_index),
        ("two-point series vs 2F1", 10, series_vs_gauss),
        ("Sekiguchi eigencheck", 30, sekiguchi),
        ("monomial law", 60, monomial_law),
        ("exponent probe (1,2,1)", 120, exponent_probe),
    ];
    let mut failures = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let (pass, detail) = match result {
            Ok(o) => (o.pass && in_time, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failures += 1;
        }
        println!(
            "criterion {:>2} [{name}]: {} ; {detail}; {:.3} s (limit {limit} s)",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {}/10 criteria pass", 10 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
