use goss_core::digits::{
    chain_witness, ell, ell_i, ell_partial, ell_sigma, height, indicator, rel_prec, sigma_act, smooth_add,
};
use goss_core::{BigUint, Config, CyclicShift};
use num_traits::ToPrimitive;
use proptest::prelude::*;

const N_TEST: u64 = 5000;
const QS: [u64; 3] = [4, 8, 9];

fn b(n: u64) -> BigUint {
    BigUint::from(n)
}

fn pdigits(mut n: u64, p: u64) -> Vec<u64> {
    let mut d = Vec::new();
    while n > 0 {
        d.push(n % p);
        n /= p;
    }
    d
}

/// Longest chain `0 ≺ n_1 ≺ … ≺ n_h <=_p n`, by dynamic programming over
/// single p-part removals.
fn brute_heights(limit: u64, cfg: &Config) -> Vec<u64> {
    let p = cfg.p() as u64;
    let qm1 = cfg.q_minus_1();
    let mut below = vec![0u64; limit as usize + 1];
    for n in 1..=limit {
        let mut best = 0;
        let mut longest_to_n = 0;
        let mut pw = 1;
        for d in pdigits(n, p) {
            if d > 0 {
                let prev = below[(n - pw) as usize];
                best = best.max(prev);
                longest_to_n = longest_to_n.max(prev + 1);
            }
            pw *= p;
        }
        if n % qm1 == 0 {
            best = best.max(longest_to_n);
        }
        below[n as usize] = best;
    }
    below
}

#[test]
fn height_matches_chain_search() {
    for q in QS {
        let cfg = Config::from_q(q).unwrap();
        let brute = brute_heights(N_TEST, &cfg);
        for n in 0..=N_TEST {
            assert_eq!(height(&b(n), &cfg), brute[n as usize], "q = {q}, n = {n}");
        }
    }
}

#[test]
fn three_characterisations_of_height() {
    for q in QS {
        let cfg = Config::from_q(q).unwrap();
        let qm1 = cfg.q_minus_1() as u128;
        let brute = brute_heights(N_TEST, &cfg);
        for n in 0..=N_TEST {
            let bn = b(n);
            let ind = indicator(&bn, &cfg).value;
            let twisted: Vec<BigUint> = cfg.shifts().map(|s| sigma_act(&bn, s, &cfg)).collect();
            for h in 0..=brute[n as usize] + 1 {
                let by_chain = brute[n as usize] >= h;
                let by_indicator = ind >= qm1 * h as u128;
                let by_partials = twisted.iter().any(|m| {
                    (1..=cfg.f()).all(|i| ell_partial(m, i, &cfg) >= (cfg.p_pow(i) as u128 - 1) * h as u128)
                });
                assert_eq!(by_chain, by_indicator, "q = {q}, n = {n}, H = {h}");
                assert_eq!(by_chain, by_partials, "q = {q}, n = {n}, H = {h}");
            }
        }
    }
}

#[test]
fn chain_witness_is_a_chain() {
    for q in QS {
        let cfg = Config::from_q(q).unwrap();
        for n in (0..=N_TEST).step_by(7) {
            let bn = b(n);
            let h = height(&bn, &cfg);
            let w = chain_witness(&bn, h, &cfg).unwrap();
            assert_eq!(w.chain.len() as u64, h);
            let mut prev = b(0);
            for c in &w.chain {
                assert!(rel_prec(&prev, c, &cfg) && prev != *c, "q = {q}, n = {n}");
                prev = c.clone();
            }
            assert!(goss_core::digits::rel_p(&prev, &bn, &cfg));
            assert!(chain_witness(&bn, h + 1, &cfg).is_err());
        }
    }
}

#[test]
fn height_is_shift_invariant() {
    for q in QS {
        let cfg = Config::from_q(q).unwrap();
        for n in 0..=N_TEST {
            let bn = b(n);
            let h = height(&bn, &cfg);
            for s in cfg.shifts() {
                assert_eq!(height(&sigma_act(&bn, s, &cfg), &cfg), h, "q = {q}, n = {n}, s = {}", s.0);
            }
        }
    }
}

#[test]
fn shifted_congruences() {
    for q in QS {
        let cfg = Config::from_q(q).unwrap();
        let m = cfg.q_minus_1();
        for n in 0..=N_TEST {
            let bn = b(n);
            let l = ell(&bn, &cfg);
            assert_eq!(l % m as u128, (n % m) as u128);
            for s in cfg.shifts() {
                let ns = sigma_act(&bn, s, &cfg).to_u64().unwrap();
                assert_eq!(ns % m, sigma_act(&b(n % m), s, &cfg).to_u64().unwrap() % m);
                let ls = sigma_act(&b(l as u64), s, &cfg).to_u64().unwrap();
                assert_eq!(ell_sigma(&bn, s, &cfg) % m as u128, (ls % m) as u128);
            }
        }
    }
}

#[test]
fn identity_is_minimal_iff_partial_inequalities() {
    for q in QS {
        let cfg = Config::from_q(q).unwrap();
        let qm1 = cfg.q_minus_1() as u128;
        for n in 0..=N_TEST {
            let bn = b(n);
            let l = ell(&bn, &cfg);
            let lhs = cfg.shifts().all(|s| l <= ell_sigma(&bn, s, &cfg));
            let rhs = (1..=cfg.f()).all(|i| ell_partial(&bn, i, &cfg) * qm1 >= l * (cfg.p_pow(i) as u128 - 1));
            assert_eq!(lhs, rhs, "q = {q}, n = {n}");
        }
    }
}

#[test]
fn twisted_sum_from_partial_sum() {
    for q in QS {
        let cfg = Config::from_q(q).unwrap();
        let qm1 = cfg.q_minus_1() as u128;
        for n in 0..=N_TEST {
            let bn = b(n);
            let l = ell(&bn, &cfg);
            for s in cfg.shifts() {
                let partial = if s.0 == 0 { 0 } else { ell_partial(&bn, s.0, &cfg) };
                let lhs = ell_sigma(&bn, s, &cfg) * cfg.p_pow(s.0) as u128;
                assert_eq!(lhs, l + qm1 * partial, "q = {q}, n = {n}, s = {}", s.0);
            }
        }
    }
}

fn q_strategy() -> impl Strategy<Value = Config> {
    prop::sample::select(QS.to_vec()).prop_map(|q| Config::from_q(q).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn smooth_sums_are_additive(cfg in q_strategy(), m in 0..=N_TEST, n in 0..=N_TEST) {
        let (bm, bn) = (b(m), b(n));
        if let Ok(sum) = smooth_add(&[bm.clone(), bn.clone()], &cfg) {
            prop_assert_eq!(&sum, &(&bm + &bn));
            for i in 0..cfg.f() {
                prop_assert_eq!(ell_i(&sum, i, &cfg), ell_i(&bm, i, &cfg) + ell_i(&bn, i, &cfg));
            }
            prop_assert_eq!(ell(&sum, &cfg), ell(&bm, &cfg) + ell(&bn, &cfg));
            for s in cfg.shifts() {
                prop_assert_eq!(ell_sigma(&sum, s, &cfg), ell_sigma(&bm, s, &cfg) + ell_sigma(&bn, s, &cfg));
                let (ms, ns) = (sigma_act(&bm, s, &cfg), sigma_act(&bn, s, &cfg));
                let shifted = smooth_add(&[ms, ns], &cfg);
                prop_assert_eq!(shifted.ok(), Some(sigma_act(&sum, s, &cfg)));
            }
        }
    }

    #[test]
    fn shift_is_additive_mod_q_minus_1(cfg in q_strategy(), m in 0..=N_TEST, n in 0..=N_TEST) {
        let qm1 = cfg.q_minus_1();
        for s in cfg.shifts() {
            let act = |x: u64| sigma_act(&b(x), s, &cfg).to_u64().unwrap();
            prop_assert_eq!(act(m + n) % qm1, (act(m) + act(n)) % qm1);
        }
    }

    #[test]
    fn shift_preserves_orders(cfg in q_strategy(), m in 0..=N_TEST, n in 0..=N_TEST) {
        let (bm, bn) = (b(m), b(n));
        let below = goss_core::digits::rel_p(&bm, &bn, &cfg);
        let all_shifts = cfg.shifts().all(|s| sigma_act(&bm, s, &cfg) <= sigma_act(&bn, s, &cfg));
        if m < cfg.q() && n < cfg.q() {
            prop_assert_eq!(below, all_shifts);
        } else if below {
            prop_assert!(all_shifts);
        }
        if rel_prec(&bm, &bn, &cfg) {
            for s in cfg.shifts() {
                prop_assert!(rel_prec(&sigma_act(&bm, s, &cfg), &sigma_act(&bn, s, &cfg), &cfg));
            }
        }
    }

    #[test]
    fn shifts_compose(cfg in q_strategy(), n in 0..=N_TEST, a in 0u32..3, c in 0u32..3) {
        let (sa, sc) = (CyclicShift(a % cfg.f()), CyclicShift(c % cfg.f()));
        let bn = b(n);
        let twice = sigma_act(&sigma_act(&bn, sa, &cfg), sc, &cfg);
        prop_assert_eq!(twice, sigma_act(&bn, sa.compose(sc, &cfg), &cfg));
        let back = sigma_act(&sigma_act(&bn, sa, &cfg), sa.inverse(&cfg), &cfg);
        prop_assert_eq!(back, bn);
    }
}
