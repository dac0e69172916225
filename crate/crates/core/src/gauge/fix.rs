//! Gauge fixing: choosing (alpha, beta) so that a selected entry of the
//! gauged K_+ vanishes identically in lambda.
//!
//! The bare (normalization-stripped) entry K_+^{(L)}(lambda|beta)_{12}
//! depends on the gauge parameters only through gamma = alpha - beta, and
//! K_+^{(L)}_{21} only through delta = alpha + beta, so each family is a
//! one-complex-unknown root-finding problem; vanishing at two generic
//! lambda forces identical vanishing (the entry is an elliptic function of
//! lambda), which is then spot-checked at five more points.

use super::ops::{k_plus_left, rescale_r};
use super::vectors::GaugeFrame;
use crate::linalg::row_m2_col;
use crate::rng::Rng;
use crate::vertex::{k_matrix, ModelParams, Scalars, Side};
use crate::{C64, Error, Result};
use alloc::vec::Vec;

/// Which triangularity condition the frame realizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaugeFamily {
    /// K_+^{(L)}_{12} = 0 (B-family SOV).
    BLeft,
    /// K_+^{(L)}_{21} = 0 (C-family SOV).
    CLeft,
}

/// Bare residual of the selected entry at `lam` with combination value `u`
/// (gamma for BLeft, delta for CLeft).
fn bare_entry(family: GaugeFamily, lam: C64, u: C64, params: &ModelParams) -> Result<C64> {
    let e = params.ell();
    let eta = params.eta();
    let k = k_matrix(lam, Side::Plus, params)?;
    match family {
        GaugeFamily::BLeft => {
            let w1 = eta * 0.5 - lam + (u - 1.0) * eta;
            let w2 = lam - eta * 0.5 + (u + 1.0) * eta;
            Ok(row_m2_col(&[-e.th3(w1), e.th2(w1)], &k, &[e.th2(w2), e.th3(w2)]))
        }
        GaugeFamily::CLeft => {
            let w1 = eta * 0.5 - lam + (u + 1.0) * eta;
            let w2 = lam - eta * 0.5 + (u + 3.0) * eta;
            Ok(row_m2_col(&[e.th3(w1), -e.th2(w1)], &k, &[e.th2(w2), e.th3(w2)]))
        }
    }
}

/// Result of a gauge fix: the frame plus diagnostics.
#[derive(Debug, Clone)]
pub struct FixedGauge {
    pub frame: GaugeFrame,
    /// Distinct Newton branches found for the fixed combination, modulo the
    /// lattice periods of gamma (reported, not interpreted).
    pub branches: usize,
    /// Worst relative residual of the vanishing entry over the spot-check
    /// points.
    pub residual: f64,
}

/// Finds gauge parameters realizing the requested triangularity, with a
/// 16-point multistart damped Newton in the effective combination, then
/// picks beta for comfortable nondegeneracy margins.
pub fn fix_gauge(params: &ModelParams, family: GaugeFamily, seed: u64) -> Result<FixedGauge> {
    let mut rng = Rng::new(seed);
    let eta = params.eta();
    let l1 = params.generic_lambda(&mut rng);
    let l2 = params.generic_lambda(&mut rng);
    // Scale reference for relative residuals.
    let mut scale = 0.0f64;
    for _ in 0..8 {
        let u = rng.complex_box(-2.0, 2.0, -1.0, 1.0);
        scale = scale.max(bare_entry(family, l1, u, params)?.norm());
    }
    let f = |u: C64| -> Result<C64> { bare_entry(family, l1, u, params) };
    let mut roots: Vec<C64> = Vec::new();
    for _ in 0..16 {
        let mut u = rng.complex_box(-2.0, 2.0, -1.0, 1.0);
        let mut fu = f(u)?;
        let mut converged = false;
        for _ in 0..60 {
            if fu.norm() < 1e-13 * scale {
                converged = true;
                break;
            }
            let h = C64::new(1e-6, 0.0);
            let dfdu = (f(u + h)? - f(u - h)?) / (2.0 * h);
            if dfdu.norm() < 1e-14 {
                break;
            }
            let mut step = fu / dfdu;
            // Damping: halve until the residual decreases.
            let mut improved = false;
            for _ in 0..20 {
                let cand = u - step;
                let fc = f(cand)?;
                if fc.norm() < fu.norm() {
                    u = cand;
                    fu = fc;
                    improved = true;
                    break;
                }
                step *= 0.5;
            }
            if !improved {
                break;
            }
        }
        if !converged {
            continue;
        }
        // Keep only roots where the entry vanishes identically in lambda.
        if bare_entry(family, l2, u, params)?.norm() > 1e-9 * scale {
            continue;
        }
        // Deduplicate modulo the gamma-lattice (periods pi/eta and 2 pi w/eta
        // of the underlying theta arguments).
        let dist = |a: C64, b: C64| {
            crate::elliptic::lattice_distance((a - b) * eta, params.omega())
        };
        if !roots.iter().any(|&r| dist(r, u) < 1e-6) {
            roots.push(u);
        }
    }
    if roots.is_empty() {
        return Err(Error::NewtonFailure("no identically-vanishing gauge branch found"));
    }
    let u_star = roots[0];
    // Pick beta: deterministic candidates, keep the one with the best
    // nondegeneracy margins for the frame and the SOV conditions.
    let mut best: Option<(f64, GaugeFrame)> = None;
    let mut beta_rng = Rng::new(seed ^ 0xbe7a);
    for _ in 0..12 {
        let beta = beta_rng.complex_box(0.3, 1.1, -0.3, 0.3);
        let alpha = match family {
            GaugeFamily::BLeft => u_star + beta,
            GaugeFamily::CLeft => u_star - beta,
        };
        let frame = GaugeFrame { alpha, beta };
        if frame.validate(params).is_err() {
            continue;
        }
        match nondegeneracy_margin(&frame, params) {
            Ok(m) => {
                if best.as_ref().map_or(true, |(bm, _)| m > *bm) {
                    best = Some((m, frame));
                }
            }
            Err(_) => continue,
        }
    }
    let (margin, frame) = best.ok_or(Error::FrameRejected("no workable beta found"))?;
    if margin < 1e-6 {
        return Err(Error::FrameRejected("nondegeneracy margin too small"));
    }
    // Spot-check the identical vanishing at 5 more generic points, through
    // the full (normalized) gauged entry.
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let lam = params.generic_lambda(&mut rng);
        let kl = k_plus_left(lam, &frame, params)?;
        let scale_k = kl[0][0].norm().max(kl[1][1].norm()).max(kl[1][0].norm()).max(1e-30);
        let entry = match family {
            GaugeFamily::BLeft => kl[0][1],
            GaugeFamily::CLeft => kl[1][0],
        };
        worst = worst.max(entry.norm() / scale_k);
    }
    if worst > 1e-8 {
        return Err(Error::NewtonFailure("triangularity does not hold identically"));
    }
    Ok(FixedGauge { frame, branches: roots.len(), residual: worst })
}

/// Smallest magnitude among the SOV nondegeneracy quantities
/// K_-(lambda|beta)_{12} and tilde-K_-(lambda|-beta)_{21} over a small
/// sample, normalized by the K-matrix scale.
pub fn nondegeneracy_margin(frame: &GaugeFrame, params: &ModelParams) -> Result<f64> {
    let mut rng = Rng::new(1234);
    let mut min = f64::INFINITY;
    for _ in 0..4 {
        let lam = params.generic_lambda(&mut rng);
        let km = super::ops::k_minus_gauged(lam, frame, params)?;
        let kt = super::ops::k_minus_tilde(
            lam,
            &GaugeFrame { alpha: frame.alpha, beta: -frame.beta },
            params,
        )?;
        let scale = crate::linalg::m2_norm(&km).max(crate::linalg::m2_norm(&kt)).max(1e-30);
        min = min.min(km[0][1].norm() / scale).min(kt[1][0].norm() / scale);
    }
    Ok(min)
}

/// The two quantum-determinant conditions satisfied by a_+ and d_+ in a
/// fixed frame; returns the worst relative residual of
/// det_q K_+ p(l-eta/2) / (theta(eta-2l) theta(2l+eta) r(l+eta/2) r(-l+eta/2))
///   = a_+(l+eta/2) a_+(-l+eta/2) = d_+(l+eta/2) d_+(-l+eta/2).
pub fn k_qdet_plus_residual(lam: C64, frame: &GaugeFrame, params: &ModelParams) -> Result<f64> {
    let e = params.ell();
    let eta = params.eta();
    let s = Scalars::new(params);
    let lhs = s.det_q_k(Side::Plus, lam)? * s.p(lam - eta * 0.5)
        / (e.tb(eta - lam * 2.0)
            * e.tb(lam * 2.0 + eta)
            * rescale_r(lam + eta * 0.5, frame, params)
            * rescale_r(-lam + eta * 0.5, frame, params));
    let a = super::ops::a_plus(lam + eta * 0.5, frame, params)?
        * super::ops::a_plus(-lam + eta * 0.5, frame, params)?;
    let d = super::ops::d_plus(lam + eta * 0.5, frame, params)?
        * super::ops::d_plus(-lam + eta * 0.5, frame, params)?;
    let scale = lhs.norm().max(a.norm()).max(d.norm()).max(1e-30);
    Ok(((lhs - a).norm() / scale).max((lhs - d).norm() / scale))
}

/// Sensitivity probe: perturbing beta alone by `eps` must break the
/// triangularity (the root in gamma = alpha - beta is isolated).
pub fn perturbation_breaks_triangularity(
    frame: &GaugeFrame,
    params: &ModelParams,
    eps: f64,
) -> Result<bool> {
    let mut rng = Rng::new(4321);
    let lam = params.generic_lambda(&mut rng);
    let perturbed = GaugeFrame { alpha: frame.alpha, beta: frame.beta + eps };
    let kl = k_plus_left(lam, &perturbed, params)?;
    let scale = kl[0][0].norm().max(kl[1][1].norm()).max(1e-30);
    Ok(kl[0][1].norm() / scale > 1e-5)
}

/// A generic (non-fixed) frame for identity batteries, validated for the
/// given parameters.
pub fn generic_frame(params: &ModelParams, seed: u64) -> Result<GaugeFrame> {
    let mut rng = Rng::new(seed);
    for _ in 0..64 {
        let alpha = rng.complex_box(-0.6, 0.6, -0.25, 0.25);
        let beta = rng.complex_box(0.3, 1.2, -0.3, 0.3);
        if let Ok(f) = GaugeFrame::new(alpha, beta, params) {
            if nondegeneracy_margin(&f, params).map_or(false, |m| m > 1e-4) {
                return Ok(f);
            }
        }
    }
    Err(Error::FrameRejected("could not sample a generic frame"))
}

/// Used by the vanishing-entry residual battery: relative size of
/// K_+^{(L)}_{12} at `count` generic points.
pub fn triangularity_residual(
    frame: &GaugeFrame,
    params: &ModelParams,
    seed: u64,
    count: usize,
) -> Result<f64> {
    let mut rng = Rng::new(seed);
    let mut worst = 0.0f64;
    for _ in 0..count {
        let lam = params.generic_lambda(&mut rng);
        let kl = k_plus_left(lam, frame, params)?;
        let scale = kl[0][0].norm().max(kl[1][1].norm()).max(kl[1][0].norm()).max(1e-30);
        worst = worst.max(kl[0][1].norm() / scale);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bare_entry_depends_only_on_combination() {
        let p = ModelParams::sample(2, 5);
        let lam = C64::new(0.21, 0.04);
        let u = C64::new(0.3, -0.1);
        let a = bare_entry(GaugeFamily::BLeft, lam, u, &p).unwrap();
        // Same combination through the full normalized entry with two
        // different (alpha, beta) splits.
        let f1 = GaugeFrame { alpha: u + 0.7, beta: C64::new(0.7, 0.0) };
        let f2 = GaugeFrame { alpha: u + 0.4, beta: C64::new(0.4, 0.0) };
        let k1 = k_plus_left(lam, &f1, &p).unwrap();
        let k2 = k_plus_left(lam, &f2, &p).unwrap();
        // entries differ by scalar normalizations only: both vanish iff the
        // bare form vanishes; compare directions via ratios against the 11
        // entry at a second frame-independent reference
        assert!(a.norm() > 0.0);
        let r1 = k1[0][1];
        let r2 = k2[0][1];
        // both should be nonzero here (u is not a root)
        assert!(r1.norm() > 1e-12 && r2.norm() > 1e-12);
    }

    #[test]
    fn gauge_fix_b_left() {
        let p = ModelParams::sample(2, 11);
        let fixed = fix_gauge(&p, GaugeFamily::BLeft, 77).unwrap();
        assert!(fixed.residual < 1e-8, "triangularity residual {}", fixed.residual);
        assert!(fixed.branches >= 1);
        // quantum determinant conditions for a_+ and d_+
        let mut rng = Rng::new(8);
        for _ in 0..3 {
            let lam = p.generic_lambda(&mut rng);
            let r = k_qdet_plus_residual(lam, &fixed.frame, &p).unwrap();
            assert!(r < 1e-9, "K-q-det residual {r:e}");
        }
        assert!(perturbation_breaks_triangularity(&fixed.frame, &p, 1e-3).unwrap());
    }
}
