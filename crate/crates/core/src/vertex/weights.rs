//! Boltzmann weights of the 8-vertex R-matrix, the general boundary
//! K-matrix, and the scalar function table (p, bulk a and d, g-factors,
//! quantum determinants) attached to a parameter set.

use super::params::{BoundaryParams, ModelParams, Side};
use crate::linalg::{m2_mul, CMat, M2, ZERO};
use crate::{C64, Error, Result};

/// The four Boltzmann weights at one spectral parameter.
#[derive(Debug, Clone, Copy)]
pub struct RWeights {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

/// Weights in the defining theta-quotient form.
pub fn r_weights(lam: C64, params: &ModelParams) -> RWeights {
    let e = params.ell();
    let eta = params.eta();
    let norm = 2.0 / (e.thw(2, ZERO) * e.th4(ZERO));
    RWeights {
        a: norm * e.th4(eta) * e.th1(lam + eta) * e.th4(lam),
        b: norm * e.th4(eta) * e.th1(lam) * e.th4(lam + eta),
        c: norm * e.th1(eta) * e.th4(lam) * e.th4(lam + eta),
        d: norm * e.th1(eta) * e.th1(lam + eta) * e.th1(lam),
    }
}

/// Weights in the factorized f(lambda) * sn form; agrees with [`r_weights`]
/// and feeds the dual-parameterization check.
pub fn r_weights_sn(lam: C64, params: &ModelParams) -> Result<RWeights> {
    let e = params.ell();
    let eta = params.eta();
    let k = e.moduli().k;
    let f = 2.0 * e.moduli().k.sqrt() * e.th4(eta) * e.th4(lam) * e.th4(lam + eta)
        / (e.thw(2, ZERO) * e.th4(ZERO));
    let sn_le = e.sn(lam + eta)?;
    let sn_l = e.sn(lam)?;
    let sn_e = e.sn(eta)?;
    Ok(RWeights {
        a: f * sn_le,
        b: f * sn_l,
        c: f * sn_e,
        d: f * k * sn_le * sn_l * sn_e,
    })
}

/// The 8-vertex R-matrix as a 4x4 matrix on the tensor square, first factor
/// slowest.
pub fn r_matrix(lam: C64, params: &ModelParams) -> CMat {
    let w = r_weights(lam, params);
    let mut m = CMat::zeros(4, 4);
    m[(0, 0)] = w.a;
    m[(3, 3)] = w.a;
    m[(1, 1)] = w.b;
    m[(2, 2)] = w.b;
    m[(1, 2)] = w.c;
    m[(2, 1)] = w.c;
    m[(0, 3)] = w.d;
    m[(3, 0)] = w.d;
    m
}

/// General scalar reflection matrix K(lambda; zeta, kappa, tau) in its theta
/// form.
pub fn k_matrix_raw(lam: C64, b: &BoundaryParams, params: &ModelParams) -> Result<M2> {
    let e = params.ell();
    let t1z = e.th1(b.zeta);
    if t1z.norm() < 1e-12 {
        return Err(Error::DegenerateGauge("theta1(zeta|2w) ~ 0"));
    }
    let t42l = e.th4(lam * 2.0);
    if t42l.norm() < 1e-12 {
        return Err(Error::Pole("K-matrix off-diagonal denominator theta4(2 lambda|2w)"));
    }
    let t4z = e.th4(b.zeta);
    let t40 = e.th4(ZERO);
    let t1l = e.th1(lam);
    let t4l = e.th4(lam);
    let etau = b.tau.exp();
    let off = b.kappa * e.th1(lam * 2.0) * t4z * t4z * t4z / (t1z * t40 * t40 * t42l);
    Ok([
        [
            t4z * e.th4(b.zeta - lam) * e.th1(lam + b.zeta) / t1z,
            off * etau * (t4l * t4l - t1l * t1l / (etau * etau)),
        ],
        [
            off / etau * (t4l * t4l - t1l * t1l * etau * etau),
            t4z * e.th1(b.zeta - lam) * e.th4(lam + b.zeta) / t1z,
        ],
    ])
}

/// Diagonal of K in the sn form, h(lambda; zeta)/sn(zeta~) *
/// (sn(lambda~+zeta~), sn(zeta~-lambda~)); used as the dual-route check.
pub fn k_matrix_sn_diag(lam: C64, b: &BoundaryParams, params: &ModelParams) -> Result<(C64, C64)> {
    let e = params.ell();
    let h = e.th4(lam + b.zeta) * e.th4(lam - b.zeta);
    let snz = e.sn(b.zeta)?;
    Ok((h / snz * e.sn(lam + b.zeta)?, h / snz * e.sn(b.zeta - lam)?))
}

/// K_-(lambda) = K(lambda - eta/2; minus data), K_+(lambda) = K(lambda +
/// eta/2; plus data).
pub fn k_matrix(lam: C64, side: Side, params: &ModelParams) -> Result<M2> {
    let shift = match side {
        Side::Minus => lam - params.eta() * 0.5,
        Side::Plus => lam + params.eta() * 0.5,
    };
    k_matrix_raw(shift, &params.boundary(side), params)
}

/// Scalar function table of the model.
#[derive(Debug, Clone, Copy)]
pub struct Scalars<'a> {
    params: &'a ModelParams,
}

impl<'a> Scalars<'a> {
    pub fn new(params: &'a ModelParams) -> Self {
        Scalars { params }
    }

    /// p(lambda) = 2 theta4(2l+eta|2w) theta1(2l-eta|2w) / theta2(0|w)
    /// (defining form).
    pub fn p(&self, lam: C64) -> C64 {
        let e = self.params.ell();
        let eta = self.params.eta();
        2.0 * e.th4(lam * 2.0 + eta) * e.th1(lam * 2.0 - eta) / e.thw(2, ZERO)
    }

    /// Second printed form of p; equality with [`Self::p`] rests on a theta
    /// product identity and is verified numerically, never assumed.
    pub fn p_second_form(&self, lam: C64) -> C64 {
        let e = self.params.ell();
        let eta = self.params.eta();
        e.tb(lam * 2.0 - eta) * e.th4(lam * 2.0 + eta) / e.th4(lam * 2.0 - eta)
    }

    /// a(lambda) = prod_n theta(lambda - xi_n + eta/2).
    pub fn a_bulk(&self, lam: C64) -> C64 {
        let e = self.params.ell();
        let eta = self.params.eta();
        self.params
            .xi()
            .iter()
            .map(|&x| e.tb(lam - x + eta * 0.5))
            .product()
    }

    /// d(lambda) = a(lambda - eta).
    pub fn d_bulk(&self, lam: C64) -> C64 {
        self.a_bulk(lam - self.params.eta())
    }

    /// Bulk quantum determinant a(lambda + eta/2) d(lambda - eta/2).
    pub fn det_q_m(&self, lam: C64) -> C64 {
        let eta = self.params.eta();
        self.a_bulk(lam + eta * 0.5) * self.d_bulk(lam - eta * 0.5)
    }

    /// Boundary factor g_side(lambda).
    ///
    /// Square roots are taken once per product (principal branch), arranged
    /// so that the pairs g(lambda + eta/2) g(-lambda + eta/2) entering every
    /// quantum-determinant identity evaluate both factors on identical
    /// square-root arguments; the pair product is then single-valued.
    pub fn g(&self, side: Side, lam: C64) -> Result<C64> {
        let e = self.params.ell();
        let eta = self.params.eta();
        let b = self.params.boundary(side);
        let k = e.moduli().k;
        let h = e.th4(lam - eta * 0.5 + b.zeta) * e.th4(lam - eta * 0.5 - b.zeta);
        let snz = e.sn(b.zeta)?;
        let sn_shift = e.sn(lam - eta * 0.5)?;
        let sn2 = sn_shift * sn_shift;
        let p_prod = e.sn(lam + b.zeta - eta * 0.5)? * e.sn(b.zeta + eta * 0.5 - lam)?;
        let e2t = (b.tau * 2.0).exp();
        let q_prod = (1.0 - k * e2t * sn2) * (1.0 - k / e2t * sn2);
        let den = 1.0 - k * k * snz * snz * sn2;
        Ok(h / snz * (p_prod.sqrt() + b.kappa * e.sn(lam * 2.0 - eta)? * q_prod.sqrt() / den))
    }

    /// A^_-(lambda) = g_-(lambda) a(lambda) d(-lambda).
    pub fn a_hat_minus(&self, lam: C64) -> Result<C64> {
        Ok(self.g(Side::Minus, lam)? * self.a_bulk(lam) * self.d_bulk(-lam))
    }

    /// det_q K_side from the K-matrix entries:
    /// minus: p(l-eta/2) [K_-(l+eta/2) K_-(eta/2-l)]_11,
    /// plus:  p(-l-eta/2) [K_+(l-eta/2) K_+(-l-eta/2)]_11.
    pub fn det_q_k(&self, side: Side, lam: C64) -> Result<C64> {
        let eta = self.params.eta();
        match side {
            Side::Minus => {
                let k1 = k_matrix(lam + eta * 0.5, side, self.params)?;
                let k2 = k_matrix(eta * 0.5 - lam, side, self.params)?;
                let prod = m2_mul(&k1, &k2);
                Ok(self.p(lam - eta * 0.5) * prod[0][0])
            }
            Side::Plus => {
                let k1 = k_matrix(lam - eta * 0.5, side, self.params)?;
                let k2 = k_matrix(-lam - eta * 0.5, side, self.params)?;
                let prod = m2_mul(&k1, &k2);
                Ok(self.p(-lam - eta * 0.5) * prod[0][0])
            }
        }
    }

    /// det_q K_side in the factorized g-form.
    pub fn det_q_k_g_form(&self, side: Side, lam: C64) -> Result<C64> {
        let eta = self.params.eta();
        let pref = match side {
            Side::Minus => self.p(lam - eta * 0.5),
            Side::Plus => self.p(-lam - eta * 0.5),
        };
        Ok(pref * self.g(side, lam + eta * 0.5)? * self.g(side, eta * 0.5 - lam)?)
    }

    /// Scalar value of det_q U_-(lambda) via the explicit expression
    /// p(l - eta/2) A^_-(l + eta/2) A^_-(eta/2 - l).
    pub fn det_q_u_minus(&self, lam: C64) -> Result<C64> {
        let eta = self.params.eta();
        Ok(self.p(lam - eta * 0.5)
            * self.a_hat_minus(lam + eta * 0.5)?
            * self.a_hat_minus(eta * 0.5 - lam)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rel_diff;
    use crate::rng::Rng;

    #[test]
    fn r_weights_dual_form_agree() {
        let p = ModelParams::sample(1, 3);
        let mut rng = Rng::new(5);
        for _ in 0..20 {
            let lam = rng.generic_point();
            let w1 = r_weights(lam, &p);
            let w2 = r_weights_sn(lam, &p).unwrap();
            for (x, y) in [(w1.a, w2.a), (w1.b, w2.b), (w1.c, w2.c), (w1.d, w2.d)] {
                assert!((x - y).norm() < 1e-11 * x.norm().max(1e-10), "weight mismatch {x} vs {y}");
            }
        }
    }

    #[test]
    fn r_at_zero_is_permutation() {
        let p = ModelParams::sample(1, 3);
        let w = r_weights(C64::new(0.0, 0.0), &p);
        assert!(w.b.norm() < 1e-14);
        assert!(w.d.norm() < 1e-14);
        assert!((w.a - w.c).norm() < 1e-13 * w.a.norm());
        let r = r_matrix(C64::new(0.0, 0.0), &p);
        let mut perm = CMat::zeros(4, 4);
        perm[(0, 0)] = w.a;
        perm[(1, 2)] = w.a;
        perm[(2, 1)] = w.a;
        perm[(3, 3)] = w.a;
        assert!(rel_diff(&r, &perm) < 1e-13);
    }

    #[test]
    fn k_matrix_diagonal_matches_sn_form() {
        let p = ModelParams::sample(1, 9);
        let mut rng = Rng::new(17);
        for side in [Side::Minus, Side::Plus] {
            let b = p.boundary(side);
            for _ in 0..10 {
                let lam = rng.generic_point();
                let kt = k_matrix_raw(lam, &b, &p).unwrap();
                let (d0, d1) = k_matrix_sn_diag(lam, &b, &p).unwrap();
                assert!((kt[0][0] - d0).norm() < 1e-11 * d0.norm().max(1e-10));
                assert!((kt[1][1] - d1).norm() < 1e-11 * d1.norm().max(1e-10));
            }
        }
    }

    #[test]
    fn kappa_zero_kills_off_diagonal() {
        let p = ModelParams::sample(1, 21);
        let mut b = p.boundary(Side::Minus);
        b.kappa = ZERO;
        let kt = k_matrix_raw(C64::new(0.2, 0.05), &b, &p).unwrap();
        assert_eq!(kt[0][1], ZERO);
        assert_eq!(kt[1][0], ZERO);
    }

    #[test]
    fn p_two_forms_agree() {
        let p = ModelParams::sample(2, 31);
        let s = Scalars::new(&p);
        let mut rng = Rng::new(3);
        for _ in 0..20 {
            let lam = p.generic_lambda(&mut rng);
            let a = s.p(lam);
            let b = s.p_second_form(lam);
            assert!((a - b).norm() < 1e-11 * a.norm(), "p forms disagree: {a} vs {b}");
        }
    }

    #[test]
    fn det_q_k_g_factorization() {
        let p = ModelParams::sample(2, 55);
        let s = Scalars::new(&p);
        let mut rng = Rng::new(4);
        for side in [Side::Minus, Side::Plus] {
            for _ in 0..10 {
                let lam = p.generic_lambda(&mut rng);
                let a = s.det_q_k(side, lam).unwrap();
                let b = s.det_q_k_g_form(side, lam).unwrap();
                assert!(
                    (a - b).norm() < 1e-10 * a.norm().max(1e-10),
                    "det_q K {side:?} mismatch: {a} vs {b}"
                );
            }
        }
    }
}
