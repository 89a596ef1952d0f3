//! Acceptance gate: prints one `PASS`/`FAIL` line per criterion and a summary.
//!
//! Known reds are reported, not panicked on, so the workspace suite stays
//! usable. Set `ACCEPTANCE_STRICT=1` to exit non-zero when any criterion fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use zygmund_core::explorer::{campaign_case, maximize_ratio, run_campaign, CampaignConfig, SearchConfig};
use zygmund_core::families::{
    sample_member, sample_unrestricted, sample_zeros_outside_with, FamilySpec, SamplerOptions, Side,
};
use zygmund_core::inequalities::{
    check_debruijn, check_main_theorem, check_theorem_b, check_theorem_c, check_zygmund,
    conjugate_modulus_discrepancy, reciprocal_identity_discrepancy, run_check, CheckInput, CheckName,
    InequalityParams, QuadConfig, IDENTITY_NODES, IDENTITY_TOL,
};
use zygmund_core::quad::{cp_closed_form, cp_constant, PExponent, QuadratureSpec};
use zygmund_core::Polynomial;

fn line(criterion: u32, what: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("criterion {criterion} [{what}]: {verdict} {detail}");
}

fn ci(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

fn criterion_1_cp_oracle() -> bool {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for p in [1.0, 1.5, 2.0, 3.0, 4.0, 8.0, 16.0] {
        let e = PExponent::Finite(p);
        let diff = (cp_constant(e).unwrap() - cp_closed_form(e).unwrap()).abs();
        worst = worst.max(diff);
    }
    let c2 = cp_constant(PExponent::Finite(2.0)).unwrap();
    let c1 = cp_constant(PExponent::Finite(1.0)).unwrap();
    let elapsed = start.elapsed();
    let pass = worst <= 1e-10
        && (c2 - 0.5f64.sqrt()).abs() <= 1e-10
        && (c1 - PI / 4.0).abs() <= 1e-10
        && elapsed < Duration::from_secs(1);
    line(
        1,
        "C_p quadrature vs Gamma closed form",
        pass,
        &format!("max abs diff {worst:.2e}, C_2 = {c2:.12}, C_1 = {c1:.12}, {elapsed:?}"),
    );
    pass
}

fn criterion_2_identity_suite() -> bool {
    let start = Instant::now();
    let mut worst_recip: f64 = 0.0;
    let mut worst_modulus: f64 = 0.0;
    let mut count = 0;
    for n in 1..=10 {
        let spec = FamilySpec::new(n, 1.0, 1, Side::Unrestricted).unwrap();
        for p in sample_unrestricted(&spec, 20, 2000 + n as u64).unwrap().polynomials {
            worst_recip = worst_recip.max(reciprocal_identity_discrepancy(&p, IDENTITY_NODES));
            worst_modulus = worst_modulus.max(conjugate_modulus_discrepancy(&p, IDENTITY_NODES));
            count += 1;
        }
    }
    let elapsed = start.elapsed();
    let pass = count == 200
        && worst_recip <= IDENTITY_TOL
        && worst_modulus <= IDENTITY_TOL
        && elapsed < Duration::from_secs(5);
    line(
        2,
        "reciprocal and conjugate-modulus identities",
        pass,
        &format!("{count} polynomials, derivative identity {worst_recip:.2e}, modulus identity {worst_modulus:.2e}, {elapsed:?}"),
    );
    pass
}

fn criterion_3_soundness_campaign() -> bool {
    let start = Instant::now();
    let quad = QuadConfig::default();
    let base = CampaignConfig { seed: 2024, ..Default::default() };
    let checks = [
        CheckName::Bernstein,
        CheckName::Zygmund,
        CheckName::AzizShah,
        CheckName::TheoremA,
        CheckName::Debruijn,
        CheckName::TheoremB,
        CheckName::TheoremC,
        CheckName::Main,
        CheckName::Lemma2,
    ];
    let mut all_pass = true;
    for check in checks {
        let out = run_campaign(check, &base, &quad).unwrap();
        let pass = out.violations() == 0 && out.reports.len() >= 1000;
        all_pass &= pass;
        let mut detail = format!(
            "{check}: {} cases, {} skipped, {} violations, max ratio {:.9}",
            out.reports.len(),
            out.skipped.len(),
            out.violations(),
            out.worst_ratio()
        );
        if let Some(worst) = out.reports.iter().filter(|r| !r.satisfied).max_by(|a, b| a.ratio.total_cmp(&b.ratio)) {
            detail.push_str(&format!(
                " (worst violation: n = {}, K = {:?}, mu = {:?}, p = {:?}, |alpha| = {:.4}, |beta| = {:.4})",
                worst.polynomial.degree(),
                worst.params.k,
                worst.params.mu,
                worst.params.p.map(|p| p.to_string()),
                worst.params.alpha.map_or(0.0, |a| a.norm()),
                worst.params.beta.map_or(0.0, |b| b.norm()),
            ));
        }
        line(3, "soundness campaign", pass, &detail);
    }

    let lemma3 = CampaignConfig { cases: 100, n_max: 6, seed: 2024, ..Default::default() };
    let dense = QuadConfig {
        single: QuadratureSpec::default(),
        double: QuadratureSpec { start_nodes: 1024, max_nodes: 1024, rel_tol: 1e-10 },
    };
    let out = run_campaign(CheckName::Lemma3, &lemma3, &dense).unwrap();
    let pass = out.violations() == 0 && out.reports.len() >= 100;
    all_pass &= pass;
    line(
        3,
        "soundness campaign",
        pass,
        &format!(
            "lemma3: {} cases at 1024^2 nodes, {} skipped, {} violations, max ratio {:.9}",
            out.reports.len(),
            out.skipped.len(),
            out.violations(),
            out.worst_ratio()
        ),
    );
    let spec = FamilySpec::new(4, 0.5, 2, Side::ZerosOutsideOpenDisk).unwrap();
    let fixed = InequalityParams { p: Some(PExponent::Finite(2.0)), ..Default::default() };
    let rec = maximize_ratio(CheckName::Main, &spec, &fixed, &SearchConfig::default()).unwrap();
    let pass = !rec.exceeds_bound();
    all_pass &= pass;
    line(
        3,
        "soundness search",
        pass,
        &format!(
            "main at n = 4, K = 0.5, mu = 2, p = 2: best ratio {:.9} at alpha = {:?}",
            rec.best_ratio, rec.argmax.params.alpha
        ),
    );
    let elapsed = start.elapsed();
    let in_time = elapsed < Duration::from_secs(600);
    line(3, "soundness campaign runtime", in_time, &format!("{elapsed:?}"));
    all_pass && in_time
}

fn criterion_4_equality_cases() -> bool {
    let q = QuadratureSpec::default();
    let mut pass_zyg = true;
    for p in [1.0, 2.0, 4.0] {
        for n in [1, 3, 6] {
            let poly = Polynomial::monomial(n, ci(0.7, -1.3));
            let r = check_zygmund(&poly, PExponent::Finite(p), &q).unwrap();
            pass_zyg &= (r.ratio - 1.0).abs() <= 1e-8;
        }
    }
    line(4, "Zygmund equality at alpha z^n", pass_zyg, "p in {1, 2, 4}, n in {1, 3, 6}");

    let mut pass_db = true;
    let mut ratios = Vec::new();
    for n in [2, 3, 5] {
        let poly = Polynomial::from_roots(&vec![ci(-1.0, 0.0); n], ci(1.0, 0.0));
        let r = check_debruijn(&poly, PExponent::Finite(2.0), &q).unwrap();
        pass_db &= r.ratio >= 0.999;
        ratios.push(format!("n={n}: {:.6}", r.ratio));
    }
    line(4, "de Bruijn ratio >= 0.999 at (1+z)^n, p = 2", pass_db, &ratios.join(", "));

    let mut attained = Vec::new();
    for n in [2, 3, 5] {
        let mut c = vec![0.0; n + 1];
        c[0] = 1.0;
        c[n] = 1.0;
        let r = check_debruijn(&Polynomial::from_real(&c), PExponent::Finite(2.0), &q).unwrap();
        attained.push(format!("n={n}: {:.12}", r.ratio));
    }
    println!("criterion 4 [info]: de Bruijn ratio at 1 + z^n, p = 2: {}", attained.join(", "));
    pass_zyg && pass_db
}

fn criterion_5_reduction_equivalence() -> bool {
    let q = QuadratureSpec::default();
    let mut worst_main: f64 = 0.0;
    let mut worst_b: f64 = 0.0;
    let mut cases = 0;
    for i in 0..100 {
        let cfg = CampaignConfig { seed: 77, ..Default::default() };
        let (spec, input) = campaign_case(CheckName::TheoremC, &cfg, i).unwrap();
        let p = &input.poly;
        let (alpha, beta, e) = (input.params.alpha.unwrap(), input.params.beta.unwrap(), input.params.p.unwrap());
        let c = check_theorem_c(p, alpha, beta, e, spec.k, &q).unwrap();
        let m = check_main_theorem(p, alpha, beta, e, spec.k, 1, &q).unwrap();
        worst_main = worst_main.max(rel(c.lhs, m.lhs)).max(rel(c.rhs, m.rhs));

        let unit = FamilySpec::new(spec.n, 1.0, 1, Side::ZerosOutsideOpenDisk).unwrap();
        let pu = sample_member(&unit, 78, i).unwrap();
        let alpha1 = alpha / alpha.norm() * (1.0 + alpha.norm());
        let c1 = check_theorem_c(&pu, alpha1, ci(0.0, 0.0), e, 1.0, &q).unwrap();
        let b = check_theorem_b(&pu, alpha1, e, &q).unwrap();
        worst_b = worst_b.max(rel(c1.lhs, b.lhs)).max(rel(c1.rhs, b.rhs));
        cases += 1;
    }
    let pass = worst_main <= 1e-14 && worst_b <= 1e-14;
    line(
        5,
        "reduction equivalence",
        pass,
        &format!("{cases} inputs: main(mu=1) vs theorem-c {worst_main:.2e}, theorem-c(beta=0, K=1) vs theorem-b {worst_b:.2e}"),
    );
    pass
}

fn criterion_6_typo_resolution() -> bool {
    let quad = QuadConfig::default();
    let cfg = CampaignConfig { seed: 606, ..Default::default() };
    let printed = run_campaign(CheckName::Lemma1Printed, &cfg, &quad).unwrap();
    let proof = run_campaign(CheckName::Lemma1Proof, &cfg, &quad).unwrap();
    println!(
        "criterion 6 [lemma 1 variants over {} inside-disk cases]: K^mu denominator {} violations, K^mu + 1 denominator {} violations",
        printed.reports.len(),
        printed.violations(),
        proof.violations()
    );

    let dense = QuadConfig {
        single: QuadratureSpec::default(),
        double: QuadratureSpec { start_nodes: 256, max_nodes: 1024, rel_tol: 1e-10 },
    };
    let l3 = CampaignConfig { cases: 100, n_max: 6, seed: 607, ..Default::default() };
    let with = run_campaign(CheckName::Lemma3, &l3, &dense).unwrap();
    let without = run_campaign(CheckName::Lemma3Printed, &l3, &dense).unwrap();
    let printed_breaks = without.reports.iter().any(|r| !r.satisfied && r.polynomial.degree() >= 2);
    println!(
        "criterion 6 [lemma 3 without 2pi over {} cases]: violation frequency {:.3}",
        without.reports.len(),
        without.violations() as f64 / without.reports.len().max(1) as f64
    );
    let pass = with.violations() == 0 && with.reports.len() == 100 && printed_breaks;
    line(
        6,
        "typo-resolution artifacts",
        pass,
        &format!("lemma 3 with 2pi: {} violations in {} cases", with.violations(), with.reports.len()),
    );
    pass
}

fn criterion_7_search_sanity() -> bool {
    let start = Instant::now();
    let spec = FamilySpec::new(3, 1.0, 1, Side::Unrestricted).unwrap();
    let fixed = InequalityParams { p: Some(PExponent::Finite(2.0)), ..Default::default() };
    let config = SearchConfig { seed: 7, ..Default::default() };
    let a = maximize_ratio(CheckName::Zygmund, &spec, &fixed, &config).unwrap();
    let b = maximize_ratio(CheckName::Zygmund, &spec, &fixed, &config).unwrap();
    let elapsed = start.elapsed();
    let pass = a.best_ratio >= 0.999
        && a.restarts <= 16
        && a == b
        && elapsed < Duration::from_secs(120);
    line(
        7,
        "search recovers the z^3 basin",
        pass,
        &format!("best ratio {:.12}, {} starts, deterministic {}, {elapsed:?} for two runs", a.best_ratio, a.restarts, a == b),
    );
    pass
}

fn rotated_params(params: &InequalityParams, gamma: f64) -> InequalityParams {
    let turn = Complex64::from_polar(1.0, -gamma);
    InequalityParams {
        alpha: params.alpha.map(|a| a * turn),
        beta: params.beta.map(|b| b * turn),
        ..*params
    }
}

fn criterion_8_invariance() -> bool {
    let quad = QuadConfig::default();
    // rotation is checked where the co-rotation rule applies to a norm the
    // quadrature resolves to 1e-10; scale on every check
    let checks = [
        (CheckName::Bernstein, true),
        (CheckName::Zygmund, true),
        (CheckName::AzizShah, true),
        (CheckName::TheoremA, true),
        (CheckName::Debruijn, true),
        (CheckName::TheoremB, false),
        (CheckName::TheoremC, false),
        (CheckName::Main, false),
        (CheckName::Lemma2, false),
    ];
    let mut all_pass = true;
    for (check, rotate) in checks {
        let mut cfg = CampaignConfig { cases: 200, seed: 808, ..Default::default() };
        if check == CheckName::Debruijn {
            // roots pinned to |z| = 1 put p = 1 kinks on the circle; see below
            cfg.p_values = vec![PExponent::Finite(2.0), PExponent::Finite(4.0)];
        }
        let mut worst_scale: f64 = 0.0;
        let mut worst_rot: f64 = 0.0;
        let mut done = 0;
        for i in 0..cfg.cases {
            let (_, input) = campaign_case(check, &cfg, i).unwrap();
            let base = run_check(check, &input, &quad).unwrap();
            let c = Complex64::from_polar(0.3 + 0.01 * i as f64, 0.7 * i as f64);
            let scaled = CheckInput { poly: input.poly.scale(c), ..input.clone() };
            let rs = run_check(check, &scaled, &quad).unwrap();
            worst_scale = worst_scale.max(rel(base.ratio, rs.ratio));

            done += 1;
            if !rotate {
                continue;
            }
            let gamma = 0.37 + 0.11 * i as f64;
            let rotated = CheckInput {
                poly: input.poly.rotate(gamma),
                majorant: None,
                params: rotated_params(&input.params, gamma),
            };
            let rr = run_check(check, &rotated, &quad).unwrap();
            worst_rot = worst_rot.max(rel(base.lhs, rr.lhs)).max(rel(base.rhs, rr.rhs));
        }
        let pass = done == 200 && worst_scale <= 1e-12 && worst_rot <= 1e-10;
        all_pass &= pass;
        line(
            8,
            "scale and rotation invariance",
            pass,
            &if rotate {
                format!("{check}: {done} cases, scale {worst_scale:.2e}, rotation {worst_rot:.2e}")
            } else {
                format!("{check}: {done} cases, scale {worst_scale:.2e}")
            },
        );
    }
    // de Bruijn at p = 1: |P| is only Lipschitz when a root sits on the
    // circle and resolving roots within 1e-6 of it needs more than 2^20 nodes,
    // so this sweep dilates the sampled roots to modulus >= 1.05
    let spec = FamilySpec::new(6, 1.0, 1, Side::ZerosOutsideOpenDisk).unwrap();
    let opts = SamplerOptions { boundary_frac: 0.0, ..Default::default() };
    let batch = sample_zeros_outside_with(&spec, 200, 9, &opts).unwrap();
    let fine = QuadratureSpec { max_nodes: 1 << 20, ..Default::default() };
    let mut worst: f64 = 0.0;
    for (i, p) in batch.polynomials.iter().enumerate() {
        let dilated: Vec<Complex64> = p.coeffs().iter().enumerate().map(|(j, a)| a / 1.05f64.powi(j as i32)).collect();
        let p = &Polynomial::new(dilated);
        let gamma = 0.37 + 0.11 * i as f64;
        let a = check_debruijn(p, PExponent::Finite(1.0), &fine).unwrap();
        let b = check_debruijn(&p.rotate(gamma), PExponent::Finite(1.0), &fine).unwrap();
        worst = worst.max(rel(a.lhs, b.lhs)).max(rel(a.rhs, b.rhs));
    }
    let pass = worst <= 1e-10;
    all_pass &= pass;
    line(8, "scale and rotation invariance", pass, &format!("debruijn p = 1, roots dilated to |z| >= 1.05: 200 cases, rotation {worst:.2e}"));
    all_pass
}

fn main() {
    let criteria: [fn() -> bool; 8] = [
        criterion_1_cp_oracle,
        criterion_2_identity_suite,
        criterion_3_soundness_campaign,
        criterion_4_equality_cases,
        criterion_5_reduction_equivalence,
        criterion_6_typo_resolution,
        criterion_7_search_sanity,
        criterion_8_invariance,
    ];
    let failed: Vec<usize> = criteria
        .iter()
        .enumerate()
        .filter_map(|(i, c)| (!c()).then_some(i + 1))
        .collect();
    println!("acceptance: {} passed, {} failed {:?}", criteria.len() - failed.len(), failed.len(), failed);
    let strict = std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1");
    if strict && !failed.is_empty() {
        std::process::exit(1);
    }
}
