//! Comparison of predicted spectra with Goss polynomials of the lattices
//! `A_{t+1} = F_q + F_q T + … + F_q T^t`.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::fq::Fq;
use super::goss::{goss_closed_f, GossPoly, GossSeq, GOSS_K_BUDGET};
use super::lattice::{lattice_exp, Lattice};
use super::newton::{breaks_from_segments, newton_extract, Segment};
use crate::error::{Error, Result};
use crate::sheats::WeightSystem;
use crate::spectrum::{gamma_band, l_map, predict_spectrum_a, KProfile};

/// Expected and observed roots of `G_k` in one band.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BandCheck {
    pub band: usize,
    pub expected: Vec<Segment>,
    pub observed: Vec<Segment>,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub k: u64,
    pub t: usize,
    pub bands: Vec<BandCheck>,
    pub expected_vanishing: u64,
    pub observed_vanishing: u64,
    /// `γ(k)` for the full lattice `A`.
    pub gamma_a: BigUint,
    pub expected_breaks: Vec<(BigRational, BigRational)>,
    pub observed_breaks: Vec<(BigRational, BigRational)>,
    /// Whether `G_k` reduces to the closed form of `G_{k,F}`.
    pub reduction_ok: bool,
    pub passed: bool,
    pub first_mismatch: Option<String>,
}

fn compare(k: u64, t: usize, g: &GossPoly, fq: &Fq) -> Result<VerifyReport> {
    let cfg = fq.config();
    let profile = KProfile::with_max_i(&BigUint::from(k), t + 1, cfg)?;
    let spectrum = predict_spectrum_a(&profile)?;
    let ws = WeightSystem::natural(t + 3);
    let ell: Vec<BigRational> =
        (0..=t + 1).map(|i| l_map(&BigRational::from_integer(i.into()), &ws, cfg)).collect::<Result<_>>()?;
    let np = newton_extract(g);
    let mut bands: Vec<BandCheck> = (0..=t)
        .map(|band| BandCheck { band, expected: Vec::new(), observed: Vec::new(), matches: true })
        .collect();
    for e in spectrum.entries.iter().filter(|e| e.band <= t) {
        let count = e.zero_count_gk.to_u64().ok_or_else(|| Error::Internal("huge zero count".into()))?;
        bands[e.band].expected.push(Segment { log_abs: e.log_abs_g.clone(), count });
    }
    let mut stray = Vec::new();
    for s in &np.segments {
        match (0..=t).find(|&i| s.log_abs > ell[i + 1]) {
            Some(i) => bands[i].observed.push(s.clone()),
            None => stray.push(s.clone()),
        }
    }
    if !stray.is_empty() {
        bands.push(BandCheck { band: t + 1, expected: Vec::new(), observed: stray, matches: false });
    }
    let mut first_mismatch = None;
    for b in bands.iter_mut() {
        b.matches = b.matches && b.expected == b.observed;
        if !b.matches && first_mismatch.is_none() {
            first_mismatch = Some(format!("band {}", b.band));
        }
    }
    let mut sum = BigUint::from(0u32);
    for i in 0..=t {
        sum += gamma_band(&profile, i)?;
    }
    let expected_vanishing = (BigUint::from(k) - sum).to_u64().unwrap();
    let observed_vanishing = np.vanishing_order as u64;
    let expected: Vec<Segment> = bands.iter().take(t + 1).flat_map(|b| b.expected.clone()).collect();
    let expected_breaks = breaks_from_segments(k, &expected);
    let reduction_ok = g.reduction(fq) == Some(goss_closed_f(k, fq));
    if first_mismatch.is_none() {
        if expected_vanishing != observed_vanishing {
            first_mismatch = Some("vanishing order".into());
        } else if BigUint::from(expected_vanishing) < spectrum.gamma_k {
            first_mismatch = Some("vanishing order below γ(k)".into());
        } else if expected_breaks != np.breaks {
            first_mismatch = Some("break points".into());
        } else if !reduction_ok {
            first_mismatch = Some("reduction".into());
        }
    }
    Ok(VerifyReport {
        k,
        t,
        bands,
        expected_vanishing,
        observed_vanishing,
        gamma_a: spectrum.gamma_k,
        expected_breaks,
        observed_breaks: np.breaks,
        reduction_ok,
        passed: first_mismatch.is_none(),
        first_mismatch,
    })
}

/// Checks the prediction for `G_{k, A_{t+1}}`.
pub fn verify(k: u64, t: usize, fq: &Fq) -> Result<VerifyReport> {
    Ok(verify_range(&[k], t, fq)?.remove(0))
}

/// Runs [`verify`] for every `k` in `ks` sharing one recursion table.
pub fn verify_range(ks: &[u64], t: usize, fq: &Fq) -> Result<Vec<VerifyReport>> {
    let wanted: BTreeSet<u64> = ks.iter().copied().collect();
    let Some(&top) = wanted.iter().next_back() else {
        return Ok(Vec::new());
    };
    if wanted.contains(&0) {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    if top as usize > GOSS_K_BUDGET {
        return Err(Error::BudgetExceeded(format!("k = {top} exceeds {GOSS_K_BUDGET}")));
    }
    let exp = lattice_exp(&Lattice::standard(t), fq)?;
    let mut seq = GossSeq::new(&exp, fq)?;
    let mut out = Vec::with_capacity(wanted.len());
    for k in 1..=top {
        let g = seq.next_poly()?;
        if wanted.contains(&k) {
            out.push(compare(k, t, &g, fq)?);
        }
    }
    Ok(ks.iter().map(|k| out.iter().find(|r| r.k == *k).unwrap().clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digits::Config;

    #[test]
    fn small_examples() {
        let fq = Fq::new(Config::from_q(4).unwrap()).unwrap();
        let r = verify_range(&[3, 21, 75], 2, &fq).unwrap();
        for rep in &r {
            assert!(rep.passed, "{rep:?}");
        }
        assert_eq!(r[1].observed_vanishing, 6);
        let irr = &r[2].bands[1].observed;
        assert!(irr.contains(&Segment { log_abs: BigRational::new((-16).into(), 3.into()), count: 9 }));
    }
}
