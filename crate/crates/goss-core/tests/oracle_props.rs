use goss_core::algebra::{
    goss_closed_f, lattice_exp, newton_extract, verify, verify_range, Fq, FqPoly, GossPoly, GossSeq, Lattice, RatFunc,
};
use goss_core::{BigUint, Config, KProfile};
use proptest::prelude::*;

fn field(q: u64) -> Fq {
    Fq::new(Config::from_q(q).unwrap()).unwrap()
}

fn sequence(t: usize, upto: usize, fq: &Fq) -> Vec<GossPoly> {
    let exp = lattice_exp(&Lattice::standard(t), fq).unwrap();
    let mut seq = GossSeq::new(&exp, fq).unwrap();
    (1..=upto).map(|_| seq.next_poly().unwrap()).collect()
}

fn frobenius(x: &RatFunc, fq: &Fq) -> RatFunc {
    x.pow(fq.p() as u64, fq)
}

#[test]
fn goss_polynomials_have_the_expected_shape() {
    for (q, t, upto) in [(4u64, 2usize, 120usize), (8, 1, 100), (9, 1, 100)] {
        let fq = field(q);
        let gs = sequence(t, upto, &fq);
        let p = fq.p() as usize;
        for g in &gs {
            let k = g.k();
            assert_eq!(g.coeff(k, &fq), RatFunc::one(), "q = {q}, k = {k}");
            assert!(g.coeff(0, &fq).is_zero());
            if k as u64 <= q {
                assert_eq!(g.support(), vec![k], "q = {q}, k = {k}");
            }
            for j in g.support() {
                assert_eq!((k - j) % (q as usize - 1), 0, "q = {q}, k = {k}, j = {j}");
            }
            if p * k <= upto {
                let gp = &gs[p * k - 1];
                let coeffs = g.coefficients(&fq);
                for (j, c) in gp.coefficients(&fq).iter().enumerate() {
                    let want = if j % p == 0 { frobenius(&coeffs[j / p], &fq) } else { RatFunc::zero() };
                    assert_eq!(*c, want, "q = {q}, k = {k}, j = {j}");
                }
            }
        }
    }
}

#[test]
fn reduction_is_the_constant_field_polynomial() {
    for (q, t, upto) in [(4u64, 2usize, 120usize), (8, 1, 100), (9, 1, 100)] {
        let fq = field(q);
        for g in sequence(t, upto, &fq) {
            let k = g.k() as u64;
            assert_eq!(g.reduction(&fq), Some(goss_closed_f(k, &fq)), "q = {q}, k = {k}");
        }
    }
}

#[test]
fn newton_data_ignores_the_defining_polynomial() {
    let cfg = Config::from_q(8).unwrap();
    let a = Fq::with_modulus(cfg, &[1, 1, 0, 1]).unwrap();
    let b = Fq::with_modulus(cfg, &[1, 0, 1, 1]).unwrap();
    assert_ne!(a.modulus(), b.modulus());
    let ga = sequence(2, 100, &a);
    let gb = sequence(2, 100, &b);
    for (x, y) in ga.iter().zip(&gb) {
        assert_eq!(newton_extract(x), newton_extract(y), "k = {}", x.k());
    }
}

#[test]
fn only_irreducible_moduli_are_accepted() {
    let cfg = Config::from_q(4).unwrap();
    assert!(Fq::with_modulus(cfg, &[1, 0, 1]).is_err());
    assert!(Fq::with_modulus(cfg, &[1, 1]).is_err());
    assert!(Fq::with_modulus(cfg, &[1, 1, 1]).is_ok());
}

#[test]
fn alpha_valuations() {
    for (q, tmax) in [(2u64, 8usize), (3, 5), (4, 4), (8, 2), (9, 2)] {
        let fq = field(q);
        for t in 0..=tmax {
            let e = lattice_exp(&Lattice::standard(t), &fq).unwrap();
            assert_eq!(e.alphas.len(), t + 2);
            assert_eq!(e.alphas[0], RatFunc::one());
            assert!(e.alphas[1].val().unwrap() <= 0, "q = {q}, t = {t}");
            for a in &e.alphas[2..] {
                assert!(a.val().unwrap() < 0, "q = {q}, t = {t}");
            }
        }
    }
}

#[test]
fn lattice_exponential_vanishes_on_the_lattice() {
    let fq = field(4);
    let lat = Lattice::monomial(vec![0, 2, 3]).unwrap();
    let e = lattice_exp(&lat, &fq).unwrap();
    for code in 0..64u32 {
        let coeffs: Vec<u32> = lat.exps().iter().enumerate().map(|(i, _)| (code >> (2 * i)) & 3).collect();
        let mut x = FqPoly::zero();
        for (c, &r) in coeffs.iter().zip(lat.exps()) {
            x.add_assign(&FqPoly::constant(*c).shift(r), &fq);
        }
        let mut acc = FqPoly::zero();
        let mut xp = x.clone();
        for b in &e.betas {
            acc.add_assign(&b.mul(&xp, &fq), &fq);
            xp = xp.frobenius_q(&fq);
        }
        assert!(acc.is_zero(), "lattice point {code}");
    }
}

#[test]
fn verify_odd_k_over_a3() {
    let fq = field(4);
    let ks: Vec<u64> = (1..=120).filter(|k| k % 2 == 1).collect();
    for r in verify_range(&ks, 2, &fq).unwrap() {
        assert!(r.passed, "k = {}: {:?}", r.k, r.first_mismatch);
        assert!(r.reduction_ok);
        assert!(BigUint::from(r.observed_vanishing) >= r.gamma_a);
    }
}

#[test]
fn case_two_undercount_is_visible_in_the_oracle() {
    let fq = field(8);
    let r = verify(91, 2, &fq).unwrap();
    assert!(r.passed, "{:?}", r.first_mismatch);
    assert_eq!(r.observed_vanishing, 28);
    let p = KProfile::new(&BigUint::from(91u32), fq.config()).unwrap();
    assert_eq!(r.gamma_a, p.gamma_k);
    assert!(!p.closed_form_holds);
}

fn field_strategy() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 4, 5, 8, 9, 16, 25, 27, 49, 64, 81, 121, 125, 243])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn field_axioms(q in field_strategy(), seed in any::<[u32; 3]>()) {
        let fq = field(q);
        let [a, b, c] = seed.map(|s| s % q as u32);
        prop_assert_eq!(fq.add(a, b), fq.add(b, a));
        prop_assert_eq!(fq.mul(a, b), fq.mul(b, a));
        prop_assert_eq!(fq.add(fq.add(a, b), c), fq.add(a, fq.add(b, c)));
        prop_assert_eq!(fq.mul(fq.mul(a, b), c), fq.mul(a, fq.mul(b, c)));
        prop_assert_eq!(fq.mul(a, fq.add(b, c)), fq.add(fq.mul(a, b), fq.mul(a, c)));
        prop_assert_eq!(fq.add(a, fq.neg(a)), 0);
        prop_assert_eq!(fq.sub(fq.add(a, b), b), a);
        prop_assert_eq!(fq.mul(a, 1), a);
        prop_assert_eq!(fq.pow(a, q), a);
        let fr = |x| fq.frobenius(x);
        prop_assert_eq!(fr(fq.add(a, b)), fq.add(fr(a), fr(b)));
        if a != 0 {
            prop_assert_eq!(fq.mul(a, fq.inv(a).unwrap()), 1);
        } else {
            prop_assert!(fq.inv(a).is_err());
        }
    }

    #[test]
    fn polynomial_division(q in prop::sample::select(vec![4u64, 8, 9]),
                           a in prop::collection::vec(any::<u32>(), 0..12),
                           d in prop::collection::vec(any::<u32>(), 1..6)) {
        let fq = field(q);
        let a = FqPoly::from_coeffs(a.into_iter().map(|x| x % q as u32).collect());
        let d = FqPoly::from_coeffs(d.into_iter().map(|x| x % q as u32).collect());
        prop_assume!(!d.is_zero());
        let (quo, rem) = a.div_rem(&d, &fq).unwrap();
        prop_assert_eq!(quo.mul(&d, &fq).add(&rem, &fq), a.clone());
        prop_assert!(rem.degree().map_or(true, |r| r < d.degree().unwrap()));
        let g = a.gcd(&d, &fq);
        prop_assert!(g.divides(&a, &fq) && g.divides(&d, &fq));
    }
}
