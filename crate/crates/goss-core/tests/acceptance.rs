//! One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use goss_core::algebra::{verify_range, Fq};
use goss_core::digits::{ell_partial, height, indicator, rel_p, rel_prec, sigma_act, smooth_add};
use goss_core::sheats::{brute_sheats, largest_factor, power_sum, sheats, sheats_i, weight_n0};
use goss_core::spectrum::{
    gamma_band, gamma_vanishing, irregular_band, jbar, jbar_brute, m_shifted, mu, mu_brute,
    predict_spectrum_a, sheats_of_m_shifted, theta_set,
};
use goss_core::{BigRational, BigUint, Case, Config, KProfile};
use num_traits::Zero;

type Check = std::result::Result<(), String>;

fn b(n: u64) -> BigUint {
    BigUint::from(n)
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn pts(v: &[(i64, i64)]) -> Vec<(BigRational, BigRational)> {
    v.iter().map(|&(x, y)| (r(x, 1), r(y, 1))).collect()
}

fn q(q: u64) -> Config {
    Config::from_q(q).unwrap()
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn mus(p: &KProfile, range: std::ops::Range<usize>) -> Vec<BigUint> {
    p.mu[range].to_vec()
}

fn example_21() -> Check {
    let cfg = q(4);
    let p = KProfile::new(&b(21), &cfg).map_err(err)?;
    ensure!(mus(&p, 1..4) == [b(3), b(75), b(363)], "μ = {:?}", &p.mu);
    ensure!(p.m == b(171) && p.h == 2 && p.s_bar == 1 && p.case == Case::Two, "classification {:?}", p.case_data());
    ensure!(p.gamma0 == b(15), "γ_0 = {}", p.gamma0);
    ensure!(gamma_band(&p, 1).map_err(err)?.is_zero(), "γ_1 ≠ 0");
    ensure!(p.gamma_k == b(6) && p.is_regular, "γ = {}, regular = {}", p.gamma_k, p.is_regular);
    Ok(())
}

fn example_69() -> Check {
    let cfg = q(4);
    let p = KProfile::new(&b(69), &cfg).map_err(err)?;
    ensure!(mus(&p, 1..5) == [b(3), b(27), b(315), b(1467)], "μ = {:?}", &p.mu);
    let bands: Vec<BigUint> = (0..3).map(|i| gamma_band(&p, i)).collect::<Result<_, _>>().map_err(err)?;
    ensure!(bands == [b(51), b(12), b(0)], "γ_i = {bands:?}");
    ensure!(p.gamma_k == b(6) && p.case == Case::Two && p.is_regular, "γ = {}, {:?}", p.gamma_k, p.case);
    let s = predict_spectrum_a(&p).map_err(err)?;
    ensure!(s.newton_breaks == pts(&[(6, 48), (18, 0), (69, 0)]), "breaks {:?}", s.newton_breaks);
    Ok(())
}

fn example_75() -> Check {
    let cfg = q(4);
    let p = KProfile::new(&b(75), &cfg).map_err(err)?;
    ensure!(mus(&p, 1..4) == [b(21), b(165), b(693)], "μ = {:?}", &p.mu);
    ensure!(!p.is_regular, "reported regular");
    ensure!(theta_set(&p, 1).map_err(err)? == [b(165), b(309)], "Θ(75, 1)");
    let band = irregular_band(&p, 1).map_err(err)?;
    ensure!(band.rhos == [r(13, 12)] && band.counts == [b(9)], "ρ = {:?}, counts {:?}", band.rhos, band.counts);
    ensure!(p.gamma0 == b(51), "γ_0 = {}", p.gamma0);
    ensure!(gamma_band(&p, 2).map_err(err)? == b(3), "γ_2");
    ensure!(p.gamma_k == b(12), "γ = {}", p.gamma_k);
    let s = predict_spectrum_a(&p).map_err(err)?;
    ensure!(s.newton_breaks == pts(&[(12, 108), (15, 48), (24, 0), (75, 0)]), "breaks {:?}", s.newton_breaks);
    Ok(())
}

fn example_family() -> Check {
    let qq = 8u64;
    let cfg = q(qq);
    let top = b(qq).pow(qq as u32 - 2) - 1u32;
    let k = &top * &top / (qq - 1);
    let p = KProfile::new(&k, &cfg).map_err(err)?;
    ensure!(p.h == qq - 1 && p.case == Case::One, "H = {}, {:?}", p.h, p.case);
    let want = b(qq - 1) * b(qq).pow(qq as u32 - 3);
    ensure!(p.gamma_k == want, "γ = {}", p.gamma_k);
    ensure!(!p.is_regular, "reported regular");
    let s = predict_spectrum_a(&p).map_err(err)?;
    let rho = r(1, 1) + r(1, (qq * (3 * qq - 1)) as i64);
    let band1: Vec<&BigRational> = s.irregular.iter().filter(|x| x.i == 1).flat_map(|x| &x.rhos).collect();
    ensure!(band1 == [&rho], "band 1 radii {band1:?}");
    ensure!(irregular_band(&p, 1).map_err(err)?.rhos == [rho], "band 1 search");
    Ok(())
}

fn oracle_master() -> Check {
    let fq = Fq::new(q(4)).map_err(err)?;
    let ks: Vec<u64> = (1..=120).filter(|k| k % 2 == 1).collect();
    for rep in verify_range(&ks, 2, &fq).map_err(err)? {
        ensure!(rep.passed, "k = {}: {:?}", rep.k, rep.first_mismatch);
    }
    Ok(())
}

fn scan() -> Check {
    let cfg = q(4);
    let (mut irregular, mut case2) = (Vec::new(), Vec::new());
    for k in (1..=100u64).filter(|k| k % 2 == 1) {
        let p = KProfile::new(&b(k), &cfg).map_err(err)?;
        if !p.is_regular {
            irregular.push(k);
        }
        if p.case == Case::Two {
            case2.push(k);
        }
    }
    ensure!(irregular == [75], "irregular {irregular:?}");
    ensure!(case2 == [21, 69, 81, 87, 93], "Case 2 {case2:?}");
    Ok(())
}

fn digits_suite() -> Check {
    for qq in [4u64, 8, 9] {
        let cfg = q(qq);
        let qm1 = cfg.q_minus_1() as u128;
        for n in 0..=5000u64 {
            let bn = b(n);
            let h = height(&bn, &cfg);
            let ind = indicator(&bn, &cfg).value;
            ensure!(ind / qm1 == h as u128, "q = {qq}, n = {n}: indicator");
            let twisted: Vec<BigUint> = cfg.shifts().map(|s| sigma_act(&bn, s, &cfg)).collect();
            let by_partials = twisted.iter().any(|m| {
                (1..=cfg.f()).all(|i| ell_partial(m, i, &cfg) >= (cfg.p_pow(i) as u128 - 1) * h as u128)
            });
            ensure!(by_partials, "q = {qq}, n = {n}: partial sums");
            for m in &twisted {
                ensure!(height(m, &cfg) == h, "q = {qq}, n = {n}: shifted height");
            }
            let m = n / 3;
            if rel_prec(&b(m), &bn, &cfg) {
                ensure!(rel_p(&b(m), &bn, &cfg), "q = {qq}, n = {n}: ≺ implies ≤_p");
            }
        }
    }
    Ok(())
}

fn sheats_suite() -> Check {
    let cfg = q(4);
    for n in (3..=4000u64).step_by(3) {
        let bn = b(n);
        let sh = sheats(&bn, &cfg).map_err(err)?;
        for i in 1..=sh.h {
            let brute = brute_sheats(&bn, i, &cfg).map_err(err)?;
            ensure!(sheats_i(&bn, i, &cfg).map_err(err)? == brute, "n = {n}, i = {i}");
        }
        for w in sh.composition.windows(2) {
            ensure!(w[1] >= &w[0] * 4u32, "n = {n}: X_(i+1) < q X_i");
        }
        ensure!(smooth_add(&sh.composition, &cfg).is_ok(), "n = {n}: not carry-free");
    }
    let fq = Fq::new(cfg).map_err(err)?;
    for i in 1..=2u32 {
        for n in 1..=1000u64 {
            let s = power_sum(i, n, &fq).map_err(err)?;
            let live = n % 3 == 0 && height(&b(n), &cfg) >= i as u64;
            ensure!(s.is_zero() != live, "S_{i}({n}) vanishing");
            if live {
                let deg = weight_n0(&sheats_i(&b(n), i as usize, &cfg).map_err(err)?);
                ensure!(b(s.degree().unwrap() as u64) == deg, "deg S_{i}({n})");
            }
        }
    }
    Ok(())
}

fn property_suites() -> Check {
    digits_suite()?;
    sheats_suite()?;
    const BOUND: u64 = 1 << 16;
    for qq in [4u64, 8, 9] {
        let cfg = q(qq);
        for k in 1..=200u64 {
            let bk = b(k);
            for i in 1.. {
                let m = mu(&bk, i, &cfg).map_err(err)?;
                if m > b(BOUND) {
                    break;
                }
                ensure!(mu_brute(&bk, i, BOUND, &cfg).map_err(err)? == m, "μ_{i}({k}), q = {qq}");
            }
        }
    }
    for qq in [2u64, 3, 4, 8, 9] {
        let cfg = q(qq);
        for k in 1..=500u64 {
            let j = jbar(&b(k), &cfg).map_err(err)?;
            ensure!(j == b(jbar_brute(k, &cfg)), "j̄({k}), q = {qq}");
            if qq > 2 {
                let m1 = mu(&b(k), 1, &cfg).map_err(err)?;
                ensure!(j * (qq - 1) * qq + m1 == b((qq - 1) * k), "γ_0({k}), q = {qq}");
            }
        }
    }
    Ok(())
}

fn stabilisation() -> Check {
    let cfg = q(4);
    for k in (1..=100u64).filter(|k| k % 2 == 1) {
        let p = KProfile::new(&b(k), &cfg).map_err(err)?;
        let start = p.cutoff().map_or(0, |c| c + 1);
        for i in start..start + 2 {
            let qi = b(4).pow(i as u32);
            let num = b(k) + p.mu_at(i).map_err(err)?;
            ensure!((&num % &qi).is_zero() && num / qi == gamma_vanishing(&p), "k = {k}, i = {i}");
        }
        ensure!(p.closed_form_holds, "k = {k}: closed-form γ = {}, limit {}", p.gamma_closed, p.gamma_k);
        let first = if p.case == Case::One { 1 } else { 2 };
        for i in first..=4 {
            let m = m_shifted(&p, i);
            let want = largest_factor(&m, &cfg).map_err(err)?;
            ensure!(sheats_of_m_shifted(&p, i).map_err(err)? == want, "k = {k}, M^({i})");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Check); 8] = [
        ("q=4 k=21 profile", Duration::from_secs(1), example_21),
        ("q=4 k=69 profile and Newton breaks", Duration::from_secs(1), example_69),
        ("q=4 k=75 irregular band", Duration::from_secs(1), example_75),
        ("q=8 H=q-1 family", Duration::from_secs(30), example_family),
        ("oracle: q=4, t=2, odd k <= 120", Duration::from_secs(600), oracle_master),
        ("scan q=4, k <= 100", Duration::from_secs(30), scan),
        ("property suites", Duration::from_secs(600), property_suites),
        ("stabilisation and closed forms", Duration::from_secs(600), stabilisation),
    ];
    let mut failed = 0;
    for (n, (name, limit, check)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let mut outcome = check();
        let dt = t0.elapsed();
        if outcome.is_ok() && dt > *limit {
            outcome = Err(format!("took {dt:?}, limit {limit:?}"));
        }
        match outcome {
            Ok(()) => println!("PASS {} {name} ({:.3}s)", n + 1, dt.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL {} {name} ({:.3}s): {e}", n + 1, dt.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
