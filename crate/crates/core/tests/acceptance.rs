//! End-to-end acceptance checks. Runs without the libtest harness so each
//! criterion prints exactly one PASS/FAIL line; exits non-zero on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spacelike_core::evolution::{
    init_gaussian_packet, init_mode, init_plane_wave, step_spectral, FieldState, Grid1D, PacketSpec,
};
use spacelike_core::kinematics::{
    asymptotic_limits, ggt_boost, ggt_to_lorentz, interval, lorentz_boost, momentum_flip_boost,
    speed_from_momentum, BoostVelocity, Event, SpacelikeFourMomentum, ThreeVector,
};
use spacelike_core::planewave::{amplitude_a, bilinears, bispinor_basis, density_current, plane_wave, Branch};
use spacelike_core::spinor_algebra::{build_basis, verify_algebra};
use spacelike_core::weyl::{step_weyl_rk4, step_weyl_spectral, to_weyl, WeylField};
use spacelike_core::{Bispinor, Species};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within(elapsed: Duration, limit_s: f64, out: Outcome) -> Outcome {
    let secs = elapsed.as_secs_f64();
    match out {
        Ok(d) if secs < limit_s => Ok(format!("{d}; {secs:.3}s")),
        Ok(d) => Err(format!("{d}; too slow: {secs:.3}s >= {limit_s}s")),
        Err(d) => Err(format!("{d}; {secs:.3}s")),
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

/// Log-uniform draw of `(p, m)` with `p/m ∈ (1.01, 1e3)`.
fn draw_pm(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let m = 10f64.powf(rng.gen_range(-2.0..1.0));
    let ratio = 10f64.powf(rng.gen_range(1.01f64.log10()..3.0));
    (ratio * m, m)
}

fn algebra() -> Outcome {
    let t = Instant::now();
    let report = verify_algebra(&build_basis());
    let worst = report.identities.iter().map(|c| c.max_deviation).fold(0.0, f64::max);
    let control = verify_algebra(&build_basis().with_beta_as_mass_matrix());
    let n_fail = control.failures().count();
    let out = check(
        report.all_passed && worst == 0.0 && !control.all_passed,
        format!("{} identities, max deviation {worst:e}; negative control fails {n_fail}", report.identities.len()),
    );
    within(t.elapsed(), 1.0, out)
}

fn speed() -> Outcome {
    let t = Instant::now();
    let pm = SpacelikeFourMomentum::on_shell(ThreeVector::new(0.0, 0.0, 16.0), 1.6).map_err(|e| e.to_string())?;
    let u = speed_from_momentum(&pm).finite().ok_or("infinite speed")?;
    // oracle: u = p/√(p² − m²)
    let oracle = 16.0 / (256.0f64 - 2.56).sqrt();
    let out = check((u - 1.005).abs() <= 5e-4 && rel(u, oracle) < 1e-14, format!("u_s = {u:.6}"));
    within(t.elapsed(), 1.0, out)
}

fn amplitude() -> Outcome {
    let t = Instant::now();
    let a = amplitude_a(16.0, 1.6).map_err(|e| e.to_string())?;
    // oracle: A = (p − m)/E = √((p − m)/(p + m)) = √(14.4/17.6)
    let oracle = (14.4f64 / 17.6).sqrt();
    let out = check(
        (0.9..=1.0).contains(&a) && (oracle - 0.90453).abs() < 5e-6 && rel(a, oracle) < 1e-14,
        format!("A = {a:.6}"),
    );
    within(t.elapsed(), 1.0, out)
}

fn energy_limit() -> Outcome {
    let t = Instant::now();
    let v = BoostVelocity::new(ThreeVector::new(0.0, 1e-3, 0.0)).map_err(|e| e.to_string())?;
    let n = ThreeVector::new(0.0, 1.0, 0.0);
    let plus = asymptotic_limits(n, v, 1.0).map_err(|e| e.to_string())?;
    let minus = asymptotic_limits(-n, v, 1.0).map_err(|e| e.to_string())?;
    let mag = plus.e_inf.abs();
    let out = check(
        (5e-4..=2e-3).contains(&mag) && minus.e_inf == -plus.e_inf,
        format!("E_inf(+n) = {:e}, E_inf(-n) = {:e}", plus.e_inf, minus.e_inf),
    );
    within(t.elapsed(), 1.0, out)
}

fn density_closed_form() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut worst_rho, mut worst_j, mut bad_sign) = (0.0f64, 0.0f64, 0usize);
    for _ in 0..1000 {
        let (p, m) = draw_pm(&mut rng);
        let e = ((p - m) * (p + m)).sqrt();
        let s1 = plane_wave(p, m, Branch::Psi1, Species::Antineutrino).map_err(|e| e.to_string())?;
        let s2 = plane_wave(p, m, Branch::Psi2, Species::Antineutrino).map_err(|e| e.to_string())?;
        let dc = density_current(&s1.bispinor);
        worst_rho = worst_rho.max(rel(dc.rho * m, e));
        worst_j = worst_j.max(rel(dc.j.z * m, p));
        if !(density_current(&s2.bispinor).rho < 0.0) {
            bad_sign += 1;
        }
    }
    check(
        worst_rho <= 1e-12 && worst_j <= 1e-12 && bad_sign == 0,
        format!("1000 draws: rho rel {worst_rho:.2e}, j rel {worst_j:.2e}, psi2 rho >= 0 in {bad_sign}"),
    )
}

fn bilinear_table() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut worst_s, mut worst_p) = (0.0f64, 0.0f64);
    for _ in 0..1000 {
        let (p, m) = draw_pm(&mut rng);
        let basis = bispinor_basis(p, m).map_err(|e| e.to_string())?;
        for (i, psi) in basis.iter().enumerate() {
            let b = bilinears(psi);
            let expected = if i % 2 == 0 { 1.0 } else { -1.0 };
            worst_s = worst_s.max((b.scalar - expected).abs());
            worst_p = worst_p.max(b.pseudoscalar.norm());
        }
    }
    check(
        worst_s <= 1e-12 && worst_p <= 1e-12,
        format!("scalar dev {worst_s:.2e}, pseudoscalar dev {worst_p:.2e}"),
    )
}

/// Independent `H ψ` for `p ẑ`: `H = s α_z p + β_s m`.
fn apply_h(psi: &Bispinor, p: f64, m: f64, s: f64) -> Bispinor {
    let [p1, p2, c1, c2] = psi.0;
    let sp = s * p;
    Bispinor::new([sp * c1 + m * c1, -sp * c2 + m * c2, sp * p1 - m * p1, -sp * p2 - m * p2])
}

fn eigenresidual() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (p, m) = draw_pm(&mut rng);
        for species in [Species::Antineutrino, Species::Neutrino] {
            for branch in [Branch::Psi1, Branch::Psi2, Branch::Psi3, Branch::Psi4] {
                let sol = plane_wave(p, m, branch, species).map_err(|e| e.to_string())?;
                let psi = sol.bispinor.normalized();
                let r = apply_h(&psi, p, m, species.momentum_sign()) - psi * sol.energy;
                // spectral norm of H is |p| + m
                worst = worst.max(r.norm() / (p + m));
            }
        }
    }
    check(worst <= 1e-12, format!("max ||H psi - E psi|| / ||H|| = {worst:.2e} (100 draws x 2 signs x 4)"))
}

fn conservation() -> Outcome {
    let t = Instant::now();
    let (m, mode, dt) = (1.0, 16, 0.01);
    let g = Grid1D::new(256, 0.1).map_err(|e| e.to_string())?;
    let mut s = init_plane_wave(g, mode, Branch::Psi1, m, Species::Antineutrino).map_err(|e| e.to_string())?;
    let q0 = s.charge();
    let (mut drift, mut phase) = (0.0f64, 0.0);
    for _ in 0..1000 {
        let next = step_spectral(&s, dt).map_err(|e| e.to_string())?;
        let overlap: Complex64 = s.values.iter().zip(&next.values).map(|(a, b)| a.inner(b)).sum();
        phase += overlap.arg();
        drift = drift.max(rel(next.charge(), q0));
        s = next;
    }
    let k = 2.0 * std::f64::consts::PI * mode as f64 / (256.0 * 0.1);
    let e = (k * k - m * m).sqrt();
    let measured = -phase / s.time;
    let out = check(
        drift <= 1e-10 && rel(measured, e) <= 1e-8,
        format!("|dQ/Q| = {drift:.2e}, phase rate rel err {:.2e}", rel(measured, e)),
    );
    within(t.elapsed(), 10.0, out)
}

fn norm_witness() -> Outcome {
    let m = 1.0;
    let g = Grid1D::new(64, 0.1).map_err(|e| e.to_string())?;
    let seed = Bispinor::from_real([1.0, 0.0, 0.5, 0.0]);
    let mut s = init_mode(g, 0, seed, m, Species::Antineutrino).map_err(|e| e.to_string())?;
    let (n0, q0) = (s.norm(), s.charge());
    let mut q_drift = 0.0f64;
    for _ in 0..100 {
        s = step_spectral(&s, 0.01 / m).map_err(|e| e.to_string())?;
        q_drift = q_drift.max(rel(s.charge(), q0));
    }
    let change = rel(s.norm(), n0);
    check(
        change > 1e-3 && q_drift <= 1e-10,
        format!("norm changed {change:.3e} relative over t = 1/m_s; |dQ/Q| = {q_drift:.2e}"),
    )
}

fn group_velocity() -> Outcome {
    let t = Instant::now();
    let m = 1.0;
    let k0 = 10.0 * m;
    let g = Grid1D::new(2048, 0.05).map_err(|e| e.to_string())?;
    let spec = PacketSpec { k0, width: 1.0 / m, center: 0.0, branch: Branch::Psi1 };
    let (mut s, _) = init_gaussian_packet(g, spec, m, Species::Antineutrino).map_err(|e| e.to_string())?;
    let (mut ts, mut zs) = (Vec::new(), Vec::new());
    let mut prev: Option<f64> = None;
    let length = g.length();
    for _ in 0..=200 {
        let c = s.centroid().ok_or("zero density")?;
        let c = match prev {
            Some(p) => c + ((p - c) / length).round() * length,
            None => c,
        };
        ts.push(s.time);
        zs.push(c);
        prev = Some(c);
        s = step_spectral(&s, 0.1).map_err(|e| e.to_string())?;
    }
    let speed = slope(&ts, &zs);
    let expected = k0 / (k0 * k0 - m * m).sqrt();
    let out = check(
        speed > 1.0 && rel(speed, expected) < 0.01,
        format!("centroid speed {speed:.6} vs pc^2/E {expected:.6}"),
    );
    within(t.elapsed(), 30.0, out)
}

fn slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let cov: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let var: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    cov / var
}

fn random_field(rng: &mut ChaCha8Rng, g: Grid1D, m: f64, species: Species) -> FieldState {
    let mut s = FieldState::zeros(g, m, species).expect("valid mass");
    for v in s.values.iter_mut() {
        *v = Bispinor::new(std::array::from_fn(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))));
    }
    s
}

fn equivariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let g = Grid1D::new(64, 0.2).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for species in [Species::Antineutrino, Species::Neutrino] {
        let state = random_field(&mut rng, g, 0.8, species);
        let dirac = step_spectral(&state, 0.05).map_err(|e| e.to_string())?;
        let weyl = step_weyl_spectral(&WeylField::from_dirac(&state), 0.05).map_err(|e| e.to_string())?;
        for (a, b) in dirac.values.iter().zip(&weyl.values) {
            let wa = to_weyl(a);
            for i in 0..2 {
                worst = worst.max((wa.xi[i] - b.xi[i]).norm()).max((wa.eta[i] - b.eta[i]).norm());
            }
        }
    }
    // massless decoupling: η = 0 must survive both integrators bit for bit
    let mut w = WeylField::from_dirac(&FieldState::zeros(g, 0.0, Species::Neutrino).map_err(|e| e.to_string())?);
    for p in w.values.iter_mut() {
        p.xi = [Complex64::new(rng.gen_range(-1.0..1.0), 0.3), Complex64::new(0.1, rng.gen_range(-1.0..1.0))];
    }
    let mut a = w.clone();
    let mut b = w;
    for _ in 0..200 {
        a = step_weyl_spectral(&a, 0.05).map_err(|e| e.to_string())?;
        b = step_weyl_rk4(&b, 0.05, spacelike_core::evolution::Derivative::Spectral).map_err(|e| e.to_string())?;
    }
    check(
        worst <= 1e-10 && a.eta_is_zero() && b.eta_is_zero(),
        format!("Dirac vs Weyl step max dev {worst:.2e}; eta = 0 preserved over 200 steps: {}", a.eta_is_zero() && b.eta_is_zero()),
    )
}

fn random_event(rng: &mut ChaCha8Rng) -> Event {
    Event::preferred(
        rng.gen_range(-10.0..10.0),
        ThreeVector::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)),
    )
}

fn random_velocity(rng: &mut ChaCha8Rng) -> BoostVelocity {
    loop {
        let v = ThreeVector::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if v.norm() <= 0.99 {
            return BoostVelocity::new(v).expect("subluminal");
        }
    }
}

fn kinematics() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let (mut worst_interval, mut worst_equiv, mut simultaneity_broken) = (0.0f64, 0.0f64, 0usize);
    let err = |e: spacelike_core::Error| e.to_string();
    for _ in 0..1000 {
        let (a, b) = (random_event(&mut rng), random_event(&mut rng));
        let v = random_velocity(&mut rng);
        let s0 = interval(&a, &b).map_err(err)?;
        let s1 = interval(&lorentz_boost(&a, v).map_err(err)?, &lorentz_boost(&b, v).map_err(err)?).map_err(err)?;
        let scale = (a.t - b.t).powi(2) + (a.r - b.r).norm_sqr();
        worst_interval = worst_interval.max((s1 - s0).abs() / scale);

        let twin = Event::preferred(a.t, b.r);
        if ggt_boost(&a, v).map_err(err)?.t != ggt_boost(&twin, v).map_err(err)?.t {
            simultaneity_broken += 1;
        }

        let via_ggt = ggt_to_lorentz(&ggt_boost(&a, v).map_err(err)?).map_err(err)?;
        let lt = lorentz_boost(&a, v).map_err(err)?;
        let size = 1.0 + lt.t.abs() + lt.r.norm();
        worst_equiv = worst_equiv.max(((via_ggt.t - lt.t).abs() + (via_ggt.r - lt.r).norm()) / size);
    }
    // sweep u ≥ 1: no flip threshold, and an explicit LT sweep confirms p' keeps its sign
    let mut flip_found = 0usize;
    for i in 0..=200 {
        let u = 1.0 + 0.05 * i as f64;
        if momentum_flip_boost(u).map_err(err)?.is_some() {
            flip_found += 1;
        }
        let (e, p) = (1.0, u);
        for j in 1..100 {
            let v = j as f64 / 100.0;
            if (p - v * e) <= 0.0 {
                flip_found += 1;
            }
        }
    }
    check(
        worst_interval <= 1e-10 && worst_equiv <= 1e-10 && simultaneity_broken == 0 && flip_found == 0,
        format!(
            "interval rel {worst_interval:.2e}; GGT+time map vs LT {worst_equiv:.2e}; \
             simultaneity breaks {simultaneity_broken}; flips for u >= 1: {flip_found}"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("algebra identities and negative control", algebra),
        ("tachyon speed at m_s = 1.6 eV, p = 16 eV", speed),
        ("bispinor amplitude A", amplitude),
        ("asymptotic energy limit", energy_limit),
        ("density and current closed form", density_closed_form),
        ("bilinear table", bilinear_table),
        ("eigenresidual, both momentum signs", eigenresidual),
        ("charge conservation and phase advance", conservation),
        ("non-Hermiticity witness", norm_witness),
        ("superluminal group velocity", group_velocity),
        ("Dirac/Weyl equivariance and massless decoupling", equivariance),
        ("kinematics properties", kinematics),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS  criterion {:>2}: {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  criterion {:>2}: {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
