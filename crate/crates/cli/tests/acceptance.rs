//! One pass/fail line per acceptance criterion.
//!
//! Criteria listed in `KNOWN_RED` are measured and reported like every other
//! criterion but do not fail the run; any other failure, or a known-red
//! criterion that starts passing, does.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lsphere::brdf::{albedo_directional, eval_brdf_accurate, eval_brdf_fast, fast_relative_rms, DirectionPair};
use lsphere::{Albedo, BrdfParams};
use lsphere_cli::args::{AlbedoArgs, BrdfArgs, HArgs, PhaseArgs, Suite};
use lsphere_cli::commands::tables::{round_trip_errors, spherical_albedo_gap};
use lsphere_cli::commands::{validate_brdf, validate_h, validate_phase, Output};

/// Criteria whose bounds the model does not meet; see the README.
const KNOWN_RED: [u32; 2] = [3, 8];

/// First measurements of the fast variant's RMS relative deviation, per `kd`,
/// rounded up; regressions beyond these fail.
const FAST_RMS_FROZEN: [(f64, f64); 6] =
    [(0.1, 0.0624), (0.3, 0.0341), (0.5, 0.0260), (0.7, 0.0291), (0.9, 0.100), (1.0, 0.181)];

struct Verdict {
    pass: bool,
    detail: String,
}

fn checks_pass(out: &Output, names: &[&str]) -> (bool, String) {
    let mut detail = Vec::new();
    let mut pass = true;
    for n in names {
        let c = out.check(n).unwrap_or_else(|| panic!("missing check {n}"));
        pass &= c.passed();
        detail.push(match c.bound {
            Some(b) => format!("{n}={:.4e} (bound {:.4e})", c.measured, b),
            None => format!("{n}={:.4e}", c.measured),
        });
    }
    (pass, detail.join(", "))
}

fn c1_phase_normalization(phase: &Output) -> Verdict {
    let (pass, detail) = checks_pass(phase, &["normalization", "mean_cosine"]);
    Verdict { pass, detail }
}

fn c2_legendre(phase: &Output) -> Verdict {
    let names: Vec<String> = (0..=6).map(|k| format!("legendre_a{k}")).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let (pass, _) = checks_pass(phase, &names);
    let worst = names.iter().map(|n| phase.check(n).unwrap().measured).fold(0.0, f64::max);
    Verdict { pass, detail: format!("max |A_k - expected| = {worst:.3e} (bound 1e-8)") }
}

fn c3_fast_sampler(phase: &Output) -> Verdict {
    let (pass, detail) = checks_pass(phase, &["sampler_fast_max_abs", "sampler_fast_argmax_xi"]);
    Verdict { pass, detail }
}

fn c4_exact_sampler(phase: &Output) -> Verdict {
    let (pass, detail) = checks_pass(phase, &["sampler_exact_ks", "sampler_exact_mean_z"]);
    Verdict { pass, detail }
}

fn c5_h_fits(h: &Output) -> Verdict {
    let (pass, detail) = checks_pass(h, &["h0_fit_max_rel", "h1_fit_max_rel"]);
    Verdict { pass, detail }
}

fn c6_h0_infinity(h: &Output) -> Verdict {
    let names = ["h0_infinity_c0", "h0_infinity_c0.25", "h0_infinity_c0.5", "h0_infinity_c0.75", "h0_infinity_c0.9"];
    let (pass, _) = checks_pass(h, &names);
    let worst = names.iter().map(|n| h.check(n).unwrap().measured).fold(0.0, f64::max);
    Verdict { pass, detail: format!("max relative gap at mu = 1e3: {worst:.3e} (bound 1e-3)") }
}

fn brdf_args(c: f64, mu_i: f64, paths: u64, suites: Vec<Suite>) -> BrdfArgs {
    BrdfArgs { albedo: AlbedoArgs::with_c(c), mu_i, paths, suites, ..BrdfArgs::default() }
}

fn c7_single_scatter() -> Verdict {
    let mut pass = true;
    let mut worst = 1.0f64;
    for mu_i in [0.3, 0.7, 1.0] {
        for c in [0.3, 0.7, 1.0] {
            let args = BrdfArgs { max_collisions: 1, ..brdf_args(c, mu_i, 1_000_000, vec![Suite::Single]) };
            let out = validate_brdf::run(&args, 0).expect("single-scatter run");
            let rate = out.check("single_pass_rate").unwrap();
            pass &= rate.passed();
            worst = worst.min(rate.measured);
        }
    }
    Verdict { pass, detail: format!("lowest bin pass rate {worst:.4} over 9 cases (bound 0.99)") }
}

fn c8_conservation() -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    let params = BrdfParams::from_albedo(Albedo::new(1.0).unwrap());
    for mu_i in [0.1, 0.5, 1.0] {
        // No collision cap: every path is followed until it escapes.
        let args = BrdfArgs { max_collisions: 0, ..brdf_args(1.0, mu_i, 2000, vec![Suite::Energy]) };
        let out = validate_brdf::run(&args, 0).expect("conservation run");
        let deficit = out.check("conservation_deficit").unwrap();
        let analytic = albedo_directional(mu_i, &params);
        let ok_analytic = (analytic - 1.0).abs() <= 0.02;
        pass &= deficit.passed() && ok_analytic;
        parts.push(format!(
            "mu_i={mu_i}: mc={:.6} (stderr {:.1e}, max collisions {:.0}) analytic={analytic:.5}{}",
            out.check("albedo_mc").unwrap().measured,
            out.check("albedo_mc_stderr").unwrap().measured,
            out.check("max_path_collisions").unwrap().measured,
            if ok_analytic { "" } else { " outside 2%" },
        ));
    }
    Verdict { pass, detail: parts.join("; ") }
}

fn c9_c10_modes() -> (Verdict, Verdict) {
    let mut pass9 = true;
    let mut pass10 = true;
    let mut d9 = Vec::new();
    let mut d10 = Vec::new();
    for c in [0.5, 0.8, 1.0] {
        for mu_i in [0.3, 0.7] {
            let mut args = brdf_args(c, mu_i, 10_000_000, vec![Suite::Modes]);
            if c == 1.0 {
                args.max_collisions = 10_000;
            }
            let t = Instant::now();
            let out = validate_brdf::run(&args, 0).expect("mode run");
            let m0 = out.check("mode0_pass_rate").unwrap();
            let m1 = out.check("mode1_pass_rate").unwrap();
            pass9 &= m0.passed() && m1.passed();
            d9.push(format!("c={c} mu_i={mu_i}: {:.3}/{:.3}", m0.measured, m1.measured));
            let m2 = out.check("mode2_ratio").unwrap();
            if c == 1.0 {
                pass10 &= m2.passed();
                d10.push(format!("mu_i={mu_i}: {:.4}", m2.measured));
            }
            eprintln!("  mode run c={c} mu_i={mu_i} took {:.0} s", t.elapsed().as_secs_f64());
        }
    }
    (
        Verdict {
            pass: pass9,
            detail: format!(
                "mode0/mode1 pass rates (bound 0.95, floor {}): {}",
                validate_brdf::DEFAULT_FIT_FLOOR,
                d9.join(", ")
            ),
        },
        Verdict { pass: pass10, detail: format!("max|f2|/max f0 at c=1 (bound 0.1): {}", d10.join(", ")) },
    )
}

fn c11_reciprocity() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for _ in 0..10_000 {
        let mu_i = 1.0 - rng.random::<f64>();
        let mu_o = 1.0 - rng.random::<f64>();
        let phi = PI * (2.0 * rng.random::<f64>() - 1.0);
        let params = BrdfParams::from_kd(rng.random::<f64>()).unwrap();
        let a = DirectionPair::new(mu_i, mu_o, phi).unwrap();
        let b = a.swapped();
        worst = worst
            .max((eval_brdf_accurate(&a, &params) - eval_brdf_accurate(&b, &params)).abs())
            .max((eval_brdf_fast(&a, &params) - eval_brdf_fast(&b, &params)).abs());
    }
    Verdict { pass: worst <= 1e-12, detail: format!("max swap difference {worst:.3e} over 1e4 pairs (bound 1e-12)") }
}

fn c12_albedo_mapping() -> Verdict {
    let (gap, at) = spherical_albedo_gap(17).unwrap();
    let (c_err, kd_err) = round_trip_errors(17).unwrap();
    Verdict {
        pass: gap <= 0.02,
        detail: format!(
            "max |albedo_spherical - c_to_kd| = {gap:.4} at c={at} (bound 0.02); round trip c {c_err:.2e}, kd {kd_err:.2e}"
        ),
    }
}

fn c13_fast_fidelity() -> Verdict {
    let mut pass = true;
    let mut parts = Vec::new();
    for (kd, bound) in FAST_RMS_FROZEN {
        let rms = fast_relative_rms(&BrdfParams::from_kd(kd).unwrap(), 32);
        pass &= rms <= bound;
        parts.push(format!("kd={kd}: {rms:.5} (frozen {bound})"));
    }
    Verdict { pass, detail: format!("fast vs accurate RMS relative deviation, 32^3 grid: {}", parts.join(", ")) }
}

fn c14_determinism() -> Verdict {
    let args = brdf_args(0.8, 0.7, 1_000_000, vec![Suite::Single, Suite::Modes, Suite::Energy, Suite::Reciprocity]);
    let a = validate_brdf::run(&args, 1).unwrap().payload;
    let b = validate_brdf::run(&args, 1).unwrap().payload;
    let c = validate_brdf::run(&args, 4).unwrap().payload;
    let d = validate_brdf::run(&args, 2).unwrap().payload;
    let pass = a == b && a == c && a == d;
    Verdict { pass, detail: format!("{} CSV bytes; reruns and 1/2/4 worker threads identical: {pass}", a.len()) }
}

fn main() -> ExitCode {
    let started = Instant::now();
    let phase = validate_phase::run(&PhaseArgs::default()).expect("phase suite");
    let h = validate_h::run(&HArgs::default()).expect("H suite");
    let (v9, v10) = c9_c10_modes();
    let verdicts = vec![
        (1, c1_phase_normalization(&phase)),
        (2, c2_legendre(&phase)),
        (3, c3_fast_sampler(&phase)),
        (4, c4_exact_sampler(&phase)),
        (5, c5_h_fits(&h)),
        (6, c6_h0_infinity(&h)),
        (7, c7_single_scatter()),
        (8, c8_conservation()),
        (9, v9),
        (10, v10),
        (11, c11_reciprocity()),
        (12, c12_albedo_mapping()),
        (13, c13_fast_fidelity()),
        (14, c14_determinism()),
    ];
    let mut unexpected = 0;
    for (n, v) in &verdicts {
        let known = KNOWN_RED.contains(n);
        let tag = match (v.pass, known) {
            (true, false) => "PASS",
            (false, false) => "FAIL",
            (false, true) => "FAIL (known)",
            (true, true) => "PASS (expected FAIL)",
        };
        if v.pass == known {
            unexpected += 1;
        }
        println!("criterion {n:>2}: {tag}: {}", v.detail);
    }
    println!("acceptance finished in {:.0} s, {unexpected} unexpected result(s)", started.elapsed().as_secs_f64());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
