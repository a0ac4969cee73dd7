use std::io::Cursor;

use eigqubo::harness::run_spectrum_report;
use eigqubo::instances::{
    generate, mdp_to_qubo, parse_mdplib, parse_orlib, write_mdplib, write_orlib, GeneratorFamily,
    GeneratorSpec, MdpInstance,
};
use eigqubo::solver::brute_force;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn suite(family: GeneratorFamily, count: u64) -> Vec<eigqubo::QuboInstance> {
    (0..count)
        .map(|s| {
            let n = 2 + (s as usize * 7) % 40;
            generate(&GeneratorSpec::new(family, n, 0.3, s)).unwrap()
        })
        .collect()
}

#[test]
fn orlib_suite_round_trips() {
    for family in [GeneratorFamily::OrlibLike, GeneratorFamily::PalubeckisLike, GeneratorFamily::DominantEig] {
        let all = suite(family, 100);
        let mut buf = Vec::new();
        write_orlib(&mut buf, &all).unwrap();
        let back = parse_orlib(Cursor::new(&buf), "s").unwrap();
        assert_eq!(back.len(), all.len());
        for (a, b) in all.iter().zip(&back) {
            assert_eq!(a.n(), b.n());
            assert_eq!(a.as_slice(), b.as_slice());
            assert_eq!(a.offset(), b.offset());
        }
        let mut again = Vec::new();
        write_orlib(&mut again, &back).unwrap();
        assert_eq!(buf, again);
    }
}

#[test]
fn mdplib_suite_round_trips() {
    for s in 0..100u64 {
        let n = 2 + (s as usize) % 30;
        let m = 1 + (s as usize) % n;
        let mdp = MdpInstance::random(format!("mdp{s}"), n, m, 50.0, s).unwrap();
        let mut buf = Vec::new();
        write_mdplib(&mut buf, &mdp).unwrap();
        let back = parse_mdplib(Cursor::new(&buf), &mdp.name).unwrap();
        assert_eq!(back, mdp);
    }
}

#[test]
fn orlib_like_density_is_binomial() {
    let (n, density) = (100usize, 0.1);
    let cells = (n * (n + 1) / 2) as f64;
    let mean = cells * density;
    let sd = (cells * density * (1.0 - density)).sqrt();
    for seed in 0..10 {
        let q = generate(&GeneratorSpec::new(GeneratorFamily::OrlibLike, n, density, seed)).unwrap();
        let nz = q.upper_nonzeros() as f64;
        assert!((nz - mean).abs() <= 3.0 * sd, "seed {seed}: {nz} nonzeros vs {mean} +- {sd}");
        assert!(q.as_slice().iter().all(|v| v.fract() == 0.0 && v.abs() <= 100.0));
    }
}

#[test]
fn dominant_family_has_a_dominant_eigenvalue() {
    let mut dominant = 0;
    for seed in 0..50 {
        let q = generate(&GeneratorSpec::new(GeneratorFamily::DominantEig, 100, 0.1, seed)).unwrap();
        let r = run_spectrum_report(&q).unwrap();
        if r.dominance_ratio >= 3.0 {
            dominant += 1;
        }
    }
    assert!(dominant >= 45, "only {dominant}/50 instances have ratio >= 3");
}

#[test]
fn generator_is_seed_deterministic() {
    for family in [GeneratorFamily::OrlibLike, GeneratorFamily::PalubeckisLike, GeneratorFamily::DominantEig] {
        let spec = GeneratorSpec::new(family, 30, 0.5, 11);
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
        let other = GeneratorSpec { seed: 12, ..spec.clone() };
        assert_ne!(generate(&spec).unwrap().as_slice(), generate(&other).unwrap().as_slice());
    }
}

#[test]
fn mdp_objective_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for s in 0..20u64 {
        let n = 3 + (s as usize) % 20;
        let m = 1 + (s as usize) % n;
        let mdp = MdpInstance::random("m", n, m, 20.0, s).unwrap();
        let p = 7.5;
        let q = mdp_to_qubo(&mdp, p).unwrap();
        for _ in 0..1000 {
            let x: Vec<u8> = (0..n).map(|_| u8::from(rng.random_bool(0.5))).collect();
            let card = x.iter().map(|&b| f64::from(b)).sum::<f64>() - m as f64;
            let want = mdp.diversity(&x) - p * card * card;
            let got = q.evaluate(&x).unwrap();
            assert!((got - want).abs() <= 1e-9 * want.abs().max(1.0), "{got} vs {want}");
        }
    }
}

#[test]
fn mdp_optimum_is_feasible() {
    for s in 0..10u64 {
        let n = 4 + (s as usize) % 8;
        let m = 1 + (s as usize) % (n - 1);
        let mdp = MdpInstance::random("m", n, m, 10.0, 100 + s).unwrap();
        let q = mdp_to_qubo(&mdp, 2.0 * mdp.pair_sum() + 1.0).unwrap();
        let best = brute_force(&q).unwrap();
        assert_eq!(best.x.iter().filter(|&&b| b == 1).count(), m);
    }
}

#[test]
fn mdp_reduction_has_dominant_negative_eigenvalue() {
    let mdp = MdpInstance::random("som", 100, 10, 10.0, 3).unwrap();
    let q = mdp_to_qubo(&mdp, 10.0).unwrap();
    let r = run_spectrum_report(&q).unwrap();
    assert!(r.dominant < 0.0);
    // The penalty's all-ones direction is the only negative mode.
    assert_eq!(r.eigenvalues.iter().filter(|&&v| v < 0.0).count(), 1);
}

#[test]
fn orlib_scale_spectrum_magnitude() {
    let q = generate(&GeneratorSpec::new(GeneratorFamily::OrlibLike, 1000, 0.1, 1)).unwrap();
    let r = run_spectrum_report(&q).unwrap();
    assert!(r.max_abs >= 1e3 && r.max_abs < 1e4, "max |lambda| = {}", r.max_abs);
    assert_eq!(r.histogram.iter().map(|b| b.count).sum::<usize>(), 1000);
}

#[test]
fn malformed_files_report_lines() {
    let cases = [
        ("1\n2 2\n1 1 1\n3 1 2\n", 4),
        ("1\n2 2\n1 2 1\n2 1 2\n", 4),
        ("1\n2 1\n1 1 x\n", 3),
        ("1\n2 1\n1 1 1\n9 9\n", 4),
    ];
    for (text, line) in cases {
        let err = parse_orlib(Cursor::new(text), "bad").unwrap_err().to_string();
        assert!(err.contains(&format!("line {line}")), "{err}");
    }
    let err = parse_mdplib(Cursor::new("3 2\n0 1 1\n0 1 2\n1 2 3\n0 2 1\n"), "bad")
        .unwrap_err()
        .to_string();
    assert!(err.contains("line 3"), "{err}");
}
