use lsphere::{BrdfParams, Variant, Vec3};
use lsphere_cli::args::{AlbedoArgs, BrdfArgs, Quantity, RenderArgs, Suite, TablesArgs};
use lsphere_cli::commands::render_sphere::{render, LIMB_MU};
use lsphere_cli::commands::{render_sphere, tables, validate_brdf};

#[test]
fn tables_are_deterministic_and_well_formed() {
    for quantity in [Quantity::Constants, Quantity::AlbedoMap, Quantity::Modes] {
        let args = TablesArgs { quantity, grid: 6, albedo: AlbedoArgs::default() };
        let a = tables::run(&args).unwrap();
        let b = tables::run(&args).unwrap();
        assert_eq!(a.payload, b.payload);
        let text = String::from_utf8(a.payload).unwrap();
        let width = text.lines().next().unwrap().split(',').count();
        assert!(text.lines().all(|l| l.split(',').count() == width));
    }
}

#[test]
fn head_on_lambertian_sphere_is_radially_symmetric() {
    let p = BrdfParams::from_kd(0.5).unwrap();
    let n = 48;
    let img = render(&p, Vec3::new(0.0, 0.0, 1.0), Variant::Lambertian, n, std::f64::consts::PI).unwrap();
    for y in 0..n {
        for x in 0..n {
            let v = img.pixels[y * n + x];
            for (u, w) in [(n - 1 - x, y), (x, n - 1 - y), (y, x)] {
                let o = img.pixels[w * n + u];
                match (v, o) {
                    (Some(a), Some(b)) => assert!((a - b).abs() < 1e-12),
                    (None, None) => {}
                    _ => panic!("mask not symmetric at ({x}, {y})"),
                }
            }
        }
    }
}

#[test]
fn light_behind_viewer_brightens_limb_over_lambertian() {
    for kd in [0.3, 0.8] {
        let p = BrdfParams::from_kd(kd).unwrap();
        for light in [Vec3::new(0.0, 0.0, 1.0), Vec3::new(0.0, 0.5, 1.0)] {
            let acc = render(&p, light, Variant::Accurate, 128, 1.0).unwrap().limb_mean();
            let lam = render(&p, light, Variant::Lambertian, 128, 1.0).unwrap().limb_mean();
            assert!(acc > 1.5 * lam, "limb (mu_o < {LIMB_MU}) accurate {acc} vs lambertian {lam}");
        }
    }
}

#[test]
fn render_command_reports_comparison() {
    let args = RenderArgs { size: 24, compare: Some(lsphere_cli::args::VariantArg::Fast), ..RenderArgs::default() };
    let out = render_sphere::run(&args).unwrap();
    assert!(out.check("rms_relative_diff").unwrap().measured > 0.0);
}

#[test]
fn single_collision_cap_matches_exact_single_scattering() {
    let args = BrdfArgs {
        albedo: AlbedoArgs { c: Some(0.7), kd: None },
        mu_i: 0.7,
        paths: 100_000,
        max_collisions: 1,
        bins: lsphere::BinLayout::new(16, 16).unwrap(),
        suites: vec![Suite::Single, Suite::Energy],
        ..BrdfArgs::default()
    };
    let out = validate_brdf::run(&args, 1).unwrap();
    assert!(out.check("single_pass_rate").unwrap().passed());
    assert!(out.check("weight_balance").unwrap().passed());
    assert!(out.check("truncated_fraction").unwrap().measured > 0.0);
}
