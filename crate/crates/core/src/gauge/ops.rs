//! Gauge-transformed operators: the dynamical 6-vertex R-matrix, gauged
//! bulk and boundary monodromy entries, gauged boundary K-matrices, and
//! the even transfer-matrix coefficient functions a_+ and d_+.

use super::vectors::{GaugeFrame, Vectors};
use crate::linalg::{row_m2_col, CMat, M2, V2};
use crate::vertex::{
    boundary_u, hat_monodromy, k_matrix, monodromy, r_matrix, u_tilde, ModelParams, Side,
};
use crate::{C64, Result};

/// Which gauged reflection-algebra generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gen {
    A,
    B,
    C,
    D,
}

/// The dynamical 6-vertex R-matrix R^{(6VD)}(lambda | beta).
pub fn dynamical_r(lam: C64, beta: C64, params: &ModelParams) -> CMat {
    let e = params.ell();
    let eta = params.eta();
    let a = e.tb(lam + eta);
    let b = |bb: C64| e.tb(lam) * e.tb((bb + 1.0) * eta) / e.tb(bb * eta);
    let c = |bb: C64| e.tb(eta) * e.tb(bb * eta + lam) / e.tb(bb * eta);
    let mut m = CMat::zeros(4, 4);
    m[(0, 0)] = a;
    m[(3, 3)] = a;
    m[(1, 1)] = b(beta);
    m[(1, 2)] = c(beta);
    m[(2, 1)] = c(-beta);
    m[(2, 2)] = b(-beta);
    m
}

/// Scaling function r(lambda) = theta4(2l - eta | 2w) theta(l + (alpha+1/2) eta).
pub fn rescale_r(lam: C64, frame: &GaugeFrame, params: &ModelParams) -> C64 {
    let e = params.ell();
    e.th4(lam * 2.0 - params.eta()) * e.tb(lam + (frame.alpha + 0.5) * params.eta())
}

/// Rescaled gauged boundary generator at the printed slot:
/// A_-(lambda | slot), B_-(lambda | slot), ... as dense operators.
///
/// Slot bookkeeping matches the sandwich matrix
/// U_-(l|b) = [[A^_-(l|b+2), B^_-(l|b)], [C^_-(l|b+2), D^_-(l|b)]]
/// built from tilde-G^{-1}(l-eta/2|b) U_-(l) tilde-G(eta/2-l|b).
pub fn gauged_op(
    gen: Gen,
    lam: C64,
    slot: C64,
    frame: &GaugeFrame,
    params: &ModelParams,
) -> Result<CMat> {
    let u = boundary_u(Side::Minus, lam, params)?;
    let v = Vectors::new(params, frame);
    let eta = params.eta();
    let lm = lam - eta * 0.5;
    let rm = eta * 0.5 - lam;
    let raw = match gen {
        Gen::A => u.sandwich(&v.y_til(slot - 3.0, lm)?, &v.x(slot - 1.0, rm)),
        Gen::B => u.sandwich(&v.y_til(slot - 1.0, lm)?, &v.y(slot - 1.0, rm)),
        Gen::C => u.sandwich(&v.x_til(slot - 1.0, lm)?, &v.x(slot - 1.0, rm)),
        Gen::D => u.sandwich(&v.x_til(slot + 1.0, lm)?, &v.y(slot - 1.0, rm)),
    };
    Ok(raw.scale(rescale_r(lam, frame, params)))
}

/// Unrescaled (hatted) gauged generator.
pub fn gauged_op_raw(
    gen: Gen,
    lam: C64,
    slot: C64,
    frame: &GaugeFrame,
    params: &ModelParams,
) -> Result<CMat> {
    let r = rescale_r(lam, frame, params);
    Ok(gauged_op(gen, lam, slot, frame, params)?.scale(1.0 / r))
}

/// Gauged adjoint entries tilde-U_-(lambda|beta) =
/// tilde-G^{-1}(-l-eta/2|b) tilde-U_-(l) tilde-G(eta/2+l|b), same slot
/// layout as U_-(lambda|beta).
pub fn gauged_u_tilde_entry(
    gen: Gen,
    lam: C64,
    slot: C64,
    frame: &GaugeFrame,
    params: &ModelParams,
) -> Result<CMat> {
    let ut = u_tilde(lam, params)?;
    let v = Vectors::new(params, frame);
    let eta = params.eta();
    let lm = -lam - eta * 0.5;
    let rm = eta * 0.5 + lam;
    Ok(match gen {
        Gen::A => ut.sandwich(&v.y_til(slot - 3.0, lm)?, &v.x(slot - 1.0, rm)),
        Gen::B => ut.sandwich(&v.y_til(slot - 1.0, lm)?, &v.y(slot - 1.0, rm)),
        Gen::C => ut.sandwich(&v.x_til(slot - 1.0, lm)?, &v.x(slot - 1.0, rm)),
        Gen::D => ut.sandwich(&v.x_til(slot + 1.0, lm)?, &v.y(slot - 1.0, rm)),
    })
}

/// Gauged bulk monodromy entries A(l|b), B(l|b), C(l|b), D(l|b) from
/// M(l|b) = tilde-G_b^{-1}(l-eta/2) M(l) tilde-G_{b+N}(l-eta/2).
pub fn gauged_bulk(
    gen: Gen,
    lam: C64,
    beta: C64,
    frame: &GaugeFrame,
    params: &ModelParams,
) -> Result<CMat> {
    let m = monodromy(lam, params);
    let v = Vectors::new(params, frame);
    let sh = lam - params.eta() * 0.5;
    let n = params.n_sites() as f64;
    Ok(match gen {
        Gen::A => m.sandwich(&v.y_til(beta - 1.0, sh)?, &v.x(beta + n + 1.0, sh)),
        Gen::B => m.sandwich(&v.y_til(beta - 1.0, sh)?, &v.y(beta + n - 1.0, sh)),
        Gen::C => m.sandwich(&v.x_til(beta + 1.0, sh)?, &v.x(beta + n + 1.0, sh)),
        Gen::D => m.sandwich(&v.x_til(beta + 1.0, sh)?, &v.y(beta + n - 1.0, sh)),
    })
}

/// Gauged hat-monodromy entries bar-A(l|b) ... from
/// M^(l|b) = bar-G_{b+N}^{-1}(eta/2-l) M^(l) bar-G_b(eta/2-l).
pub fn gauged_bulk_hat(
    gen: Gen,
    lam: C64,
    beta: C64,
    frame: &GaugeFrame,
    params: &ModelParams,
) -> Result<CMat> {
    let mh = hat_monodromy(lam, params);
    let v = Vectors::new(params, frame);
    let sh = params.eta() * 0.5 - lam;
    let n = params.n_sites() as f64;
    Ok(match gen {
        Gen::A => mh.sandwich(&v.y_bar(beta + n, sh)?, &v.x(beta, sh)),
        Gen::B => mh.sandwich(&v.y_bar(beta + n, sh)?, &v.y(beta, sh)),
        Gen::C => mh.sandwich(&v.x_bar(beta + n, sh)?, &v.x(beta, sh)),
        Gen::D => mh.sandwich(&v.x_bar(beta + n, sh)?, &v.y(beta, sh)),
    })
}

fn k_sandwich(cov: &V2, k: &M2, vec: &V2) -> C64 {
    row_m2_col(cov, k, vec)
}

/// Gauged K_+ of the left kind; entries as printed.
pub fn k_plus_left(lam: C64, frame: &GaugeFrame, params: &ModelParams) -> Result<M2> {
    let v = Vectors::new(params, frame);
    let k = k_matrix(lam, Side::Plus, params)?;
    let b = frame.beta;
    let eta = params.eta();
    let lp = eta * 0.5 - lam;
    let lm = lam - eta * 0.5;
    Ok([
        [
            k_sandwich(&v.y_til(b - 1.0, lp)?, &k, &v.x_hat(b + 3.0, lm)?),
            k_sandwich(&v.y_til(b + 1.0, lp)?, &k, &v.y_hat(b - 1.0, lm)?),
        ],
        [
            k_sandwich(&v.x_til(b + 1.0, lp)?, &k, &v.x_hat(b + 3.0, lm)?),
            k_sandwich(&v.x_til(b + 3.0, lp)?, &k, &v.y_hat(b - 1.0, lm)?),
        ],
    ])
}

/// Gauged K_+ of the right kind.
pub fn k_plus_right(lam: C64, frame: &GaugeFrame, params: &ModelParams) -> Result<M2> {
    let v = Vectors::new(params, frame);
    let k = k_matrix(lam, Side::Plus, params)?;
    let b = frame.beta;
    let eta = params.eta();
    let lp = eta * 0.5 - lam;
    let lm = lam - eta * 0.5;
    Ok([
        [
            k_sandwich(&v.y_und(b + 1.0, lp)?, &k, &v.x(b + 1.0, lm)),
            k_sandwich(&v.y_und(b + 1.0, lp)?, &k, &v.y(b - 1.0, lm)),
        ],
        [
            k_sandwich(&v.x_und(b + 1.0, lp)?, &k, &v.x(b + 3.0, lm)),
            k_sandwich(&v.x_und(b + 1.0, lp)?, &k, &v.y(b + 1.0, lm)),
        ],
    ])
}

/// Gauged K_- (plain variant).
pub fn k_minus_gauged(lam: C64, frame: &GaugeFrame, params: &ModelParams) -> Result<M2> {
    let v = Vectors::new(params, frame);
    let k = k_matrix(lam, Side::Minus, params)?;
    let b = frame.beta + params.n_sites() as f64;
    let eta = params.eta();
    let lm = lam - eta * 0.5;
    let rp = eta * 0.5 - lam;
    Ok([
        [
            k_sandwich(&v.y_til(b - 1.0, lm)?, &k, &v.x(b - 1.0, rp)),
            k_sandwich(&v.y_til(b - 1.0, lm)?, &k, &v.y(b - 1.0, rp)),
        ],
        [
            k_sandwich(&v.x_til(b + 1.0, lm)?, &k, &v.x(b - 1.0, rp)),
            k_sandwich(&v.x_til(b + 1.0, lm)?, &k, &v.y(b - 1.0, rp)),
        ],
    ])
}

/// Gauged K_- (tilde variant).
pub fn k_minus_tilde(lam: C64, frame: &GaugeFrame, params: &ModelParams) -> Result<M2> {
    let v = Vectors::new(params, frame);
    let k = k_matrix(lam, Side::Minus, params)?;
    let b = frame.beta + params.n_sites() as f64;
    let eta = params.eta();
    let lm = lam - eta * 0.5;
    let rp = eta * 0.5 - lam;
    Ok([
        [
            k_sandwich(&v.y_til(b - 3.0, lm)?, &k, &v.x(b - 1.0, rp)),
            k_sandwich(&v.y_til(b - 3.0, lm)?, &k, &v.y(b - 1.0, rp)),
        ],
        [
            k_sandwich(&v.x_til(b - 1.0, lm)?, &k, &v.x(b - 1.0, rp)),
            k_sandwich(&v.x_til(b - 1.0, lm)?, &k, &v.y(b - 1.0, rp)),
        ],
    ])
}

/// Gauged K_- (barred variant from the left-SOV proof).
pub fn k_minus_barred(lam: C64, frame: &GaugeFrame, params: &ModelParams) -> Result<M2> {
    let v = Vectors::new(params, frame);
    let k = k_matrix(lam, Side::Minus, params)?;
    let b = frame.beta + params.n_sites() as f64;
    let eta = params.eta();
    let lm = lam - eta * 0.5;
    let rp = eta * 0.5 - lam;
    Ok([
        [
            k_sandwich(&v.y_til(b - 1.0, lm)?, &k, &v.x(b + 1.0, rp)),
            k_sandwich(&v.y_til(b - 1.0, lm)?, &k, &v.y(b + 1.0, rp)),
        ],
        [
            k_sandwich(&v.x_til(b + 1.0, lm)?, &k, &v.x(b + 1.0, rp)),
            k_sandwich(&v.x_til(b + 1.0, lm)?, &k, &v.y(b + 1.0, rp)),
        ],
    ])
}

/// Coefficient a_+(lambda) of the explicitly even transfer decomposition.
pub fn a_plus(lam: C64, frame: &GaugeFrame, params: &ModelParams) -> Result<C64> {
    let e = params.ell();
    let eta = params.eta();
    let b = frame.beta;
    let den = e.tb(lam * 2.0) * e.tb((b + 2.0) * eta);
    if den.norm() < 1e-12 {
        return Err(crate::Error::Pole("a_+ coefficient at theta(2 lambda) = 0"));
    }
    let kl = k_plus_left(-lam, frame, params)?;
    Ok(e.tb(lam * 2.0 + eta) * e.tb((b + 1.0) * eta) / den * kl[1][1])
}

/// Coefficient d_+(lambda) of the even decomposition through D_-.
pub fn d_plus(lam: C64, frame: &GaugeFrame, params: &ModelParams) -> Result<C64> {
    let e = params.ell();
    let eta = params.eta();
    let b = frame.beta;
    let den = e.tb(lam * 2.0) * e.tb(b * eta);
    if den.norm() < 1e-12 {
        return Err(crate::Error::Pole("d_+ coefficient at theta(2 lambda) = 0"));
    }
    let kr = k_plus_right(-lam, frame, params)?;
    Ok(e.tb(lam * 2.0 + eta) * e.tb((b + 1.0) * eta) / den * kr[0][0])
}

/// Left transfer decomposition residual (T-decomp-L).
pub fn t_decomp_left_residual(lam: C64, frame: &GaugeFrame, params: &ModelParams) -> Result<f64> {
    let t = crate::vertex::transfer(lam, params)?;
    let kl = k_plus_left(lam, frame, params)?;
    let b = frame.beta;
    let sum = gauged_op(Gen::A, lam, b + 2.0, frame, params)?
        .scale(kl[0][0])
        .add(&gauged_op(Gen::B, lam, b, frame, params)?.scale(kl[1][0]))
        .add(&gauged_op(Gen::C, lam, b + 4.0, frame, params)?.scale(kl[0][1]))
        .add(&gauged_op(Gen::D, lam, b + 2.0, frame, params)?.scale(kl[1][1]));
    Ok(crate::linalg::rel_diff(&t, &sum))
}

/// Right transfer decomposition residual (T-decomp-R).
pub fn t_decomp_right_residual(lam: C64, frame: &GaugeFrame, params: &ModelParams) -> Result<f64> {
    let t = crate::vertex::transfer(lam, params)?;
    let kr = k_plus_right(lam, frame, params)?;
    let b = frame.beta;
    let sum = gauged_op(Gen::A, lam, b + 2.0, frame, params)?
        .scale(kr[0][0])
        .add(&gauged_op(Gen::B, lam, b + 2.0, frame, params)?.scale(kr[1][0]))
        .add(&gauged_op(Gen::C, lam, b + 2.0, frame, params)?.scale(kr[0][1]))
        .add(&gauged_op(Gen::D, lam, b + 2.0, frame, params)?.scale(kr[1][1]));
    Ok(crate::linalg::rel_diff(&t, &sum))
}

/// Even transfer representations: through (a_+, A_-) and (d_+, D_-).
pub fn t_even_residuals(lam: C64, frame: &GaugeFrame, params: &ModelParams) -> Result<(f64, f64)> {
    let t = crate::vertex::transfer(lam, params)?;
    let b = frame.beta;
    let kl = k_plus_left(lam, frame, params)?;
    let kr = k_plus_right(lam, frame, params)?;
    let via_a = gauged_op(Gen::A, lam, b + 2.0, frame, params)?
        .scale(a_plus(lam, frame, params)?)
        .add(&gauged_op(Gen::A, -lam, b + 2.0, frame, params)?.scale(a_plus(-lam, frame, params)?))
        .add(&gauged_op(Gen::C, lam, b + 4.0, frame, params)?.scale(kl[0][1]))
        .add(&gauged_op(Gen::B, lam, b, frame, params)?.scale(kl[1][0]));
    let via_d = gauged_op(Gen::D, lam, b + 2.0, frame, params)?
        .scale(d_plus(lam, frame, params)?)
        .add(&gauged_op(Gen::D, -lam, b + 2.0, frame, params)?.scale(d_plus(-lam, frame, params)?))
        .add(&gauged_op(Gen::C, lam, b + 2.0, frame, params)?.scale(kr[0][1]))
        .add(&gauged_op(Gen::B, lam, b + 2.0, frame, params)?.scale(kr[1][0]));
    Ok((crate::linalg::rel_diff(&t, &via_a), crate::linalg::rel_diff(&t, &via_d)))
}

/// The 4x4 matrix form of Baxter's gauge transformation
/// S(lambda | alpha, beta) = (Y_beta(lambda), X_beta(lambda)).
fn s_matrix(lam: C64, beta: C64, v: &Vectors<'_>) -> M2 {
    let y = v.y(beta, lam);
    let x = v.x(beta, lam);
    [[y[0], x[0]], [y[1], x[1]]]
}

/// Residual of the matrix intertwining relation (the gauge transformation
/// mapping the 8-vertex R-matrix onto the dynamical 6-vertex one).
pub fn intertwining_residual(
    l1: C64,
    l2: C64,
    frame: &GaugeFrame,
    params: &ModelParams,
) -> f64 {
    let v = Vectors::new(params, frame);
    let b = frame.beta;
    let r8 = r_matrix(l1 - l2, params);
    let r6 = dynamical_r(l1 - l2, b, params);
    // 4x4 with space 0 slowest; sigma^z eigenvalue of basis index 0 is +1.
    let s0_plain = |lam: C64, beta: C64| {
        let s = s_matrix(lam, beta, &v);
        CMat::from_fn(4, 4, |i, j| {
            let (i0, ia) = (i / 2, i % 2);
            let (j0, ja) = (j / 2, j % 2);
            if ia != ja {
                C64::new(0.0, 0.0)
            } else {
                s[i0][j0]
            }
        })
    };
    let sa_plain = |lam: C64, beta: C64| {
        let s = s_matrix(lam, beta, &v);
        CMat::from_fn(4, 4, |i, j| {
            let (i0, ia) = (i / 2, i % 2);
            let (j0, ja) = (j / 2, j % 2);
            if i0 != j0 {
                C64::new(0.0, 0.0)
            } else {
                s[ia][ja]
            }
        })
    };
    let sa_shift0 = |lam: C64| {
        CMat::from_fn(4, 4, |i, j| {
            let (i0, ia) = (i / 2, i % 2);
            let (j0, ja) = (j / 2, j % 2);
            if i0 != j0 {
                return C64::new(0.0, 0.0);
            }
            let sgn = if i0 == 0 { 1.0 } else { -1.0 };
            s_matrix(lam, b + sgn, &v)[ia][ja]
        })
    };
    let s0_shifta = |lam: C64| {
        CMat::from_fn(4, 4, |i, j| {
            let (i0, ia) = (i / 2, i % 2);
            let (j0, ja) = (j / 2, j % 2);
            if ia != ja {
                return C64::new(0.0, 0.0);
            }
            let sgn = if ia == 0 { 1.0 } else { -1.0 };
            s_matrix(lam, b + sgn, &v)[i0][j0]
        })
    };
    let lhs = r8.mul(&s0_plain(l1, b)).mul(&sa_shift0(l2));
    let rhs = sa_plain(l2, b).mul(&s0_shifta(l1)).mul(&r6);
    crate::linalg::rel_diff(&lhs, &rhs)
}

/// Residual of the dynamical Yang-Baxter equation on three legs.
pub fn dynamical_ybe_residual(l1: C64, l2: C64, frame: &GaugeFrame, params: &ModelParams) -> f64 {
    let b = frame.beta;
    // legs (1, 2, a), leg 0 slowest; embed with a beta shifted by the sigma^z
    // of the remaining leg.
    let embed = |r_of_beta: &dyn Fn(C64) -> CMat, p: usize, q: usize, shift_leg: Option<usize>| {
        let bits = |i: usize| [(i >> 2) & 1, (i >> 1) & 1, i & 1];
        CMat::from_fn(8, 8, |i, j| {
            let bi = bits(i);
            let bj = bits(j);
            for leg in 0..3 {
                if leg != p && leg != q && bi[leg] != bj[leg] {
                    return C64::new(0.0, 0.0);
                }
            }
            let beta = match shift_leg {
                Some(s) => b + if bi[s] == 0 { 1.0 } else { -1.0 },
                None => b,
            };
            let r = r_of_beta(beta);
            r[(bi[p] * 2 + bi[q], bj[p] * 2 + bj[q])]
        })
    };
    let r12 = |beta: C64| dynamical_r(l1 - l2, beta, params);
    let r1a = |beta: C64| dynamical_r(l1, beta, params);
    let r2a = |beta: C64| dynamical_r(l2, beta, params);
    let lhs = embed(&r12, 0, 1, Some(2))
        .mul(&embed(&r1a, 0, 2, None))
        .mul(&embed(&r2a, 1, 2, Some(0)));
    let rhs = embed(&r2a, 1, 2, None)
        .mul(&embed(&r1a, 0, 2, Some(1)))
        .mul(&embed(&r12, 0, 1, None));
    crate::linalg::rel_diff(&lhs, &rhs)
}

/// Residuals of the four vectorial Baxter relations at (l1, l2); returns the
/// worst.
pub fn g_bax_residual(l1: C64, l2: C64, frame: &GaugeFrame, params: &ModelParams) -> f64 {
    let v = Vectors::new(params, frame);
    let b = frame.beta;
    let e = params.ell();
    let eta = params.eta();
    let l12 = l1 - l2;
    let r = r_matrix(l12, params);
    let aa = e.tb(l12 + eta);
    let bb = |bb_: C64| e.tb(l12) * e.tb((bb_ + 1.0) * eta) / e.tb(bb_ * eta);
    let cc = |bb_: C64| e.tb(eta) * e.tb(bb_ * eta + l12) / e.tb(bb_ * eta);
    let tensor = |u: &V2, w: &V2| -> alloc::vec::Vec<C64> {
        alloc::vec![u[0] * w[0], u[0] * w[1], u[1] * w[0], u[1] * w[1]]
    };
    let mut worst = 0.0f64;
    // G-Bax-1
    let lhs = r.mul_vec(&tensor(&v.x(b, l1), &v.x(b - 1.0, l2)));
    let rhs = crate::linalg::vec_scale(&tensor(&v.x(b - 1.0, l1), &v.x(b, l2)), aa);
    worst = worst.max(crate::linalg::rel_diff_vec(&lhs, &rhs));
    // G-Bax-2
    let lhs = r.mul_vec(&tensor(&v.x(b, l1), &v.y(b - 1.0, l2)));
    let t1 = crate::linalg::vec_scale(&tensor(&v.x(b + 1.0, l1), &v.y(b, l2)), bb(-b));
    let t2 = crate::linalg::vec_scale(&tensor(&v.y(b - 1.0, l1), &v.x(b, l2)), cc(b));
    let rhs: alloc::vec::Vec<C64> = t1.iter().zip(&t2).map(|(x, y)| x + y).collect();
    worst = worst.max(crate::linalg::rel_diff_vec(&lhs, &rhs));
    // G-Bax-3
    let lhs = r.mul_vec(&tensor(&v.y(b, l1), &v.x(b + 1.0, l2)));
    let t1 = crate::linalg::vec_scale(&tensor(&v.y(b - 1.0, l1), &v.x(b, l2)), bb(b));
    let t2 = crate::linalg::vec_scale(&tensor(&v.x(b + 1.0, l1), &v.y(b, l2)), cc(-b));
    let rhs: alloc::vec::Vec<C64> = t1.iter().zip(&t2).map(|(x, y)| x + y).collect();
    worst = worst.max(crate::linalg::rel_diff_vec(&lhs, &rhs));
    // G-Bax-4
    let lhs = r.mul_vec(&tensor(&v.y(b, l1), &v.y(b + 1.0, l2)));
    let rhs = crate::linalg::vec_scale(&tensor(&v.y(b + 1.0, l1), &v.y(b, l2)), aa);
    worst = worst.max(crate::linalg::rel_diff_vec(&lhs, &rhs));
    worst
}
