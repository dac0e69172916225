//! Structural identity battery for the ungauged layer: Yang-Baxter and
//! reflection equations, quantum determinants, parity and inversion
//! relations, transfer-matrix properties and the homogeneous-limit
//! Hamiltonian checks.

use super::chain::{
    boundary_reflection_residual, boundary_u, bulk_yb_residual, hat_monodromy, monodromy,
    monodromy_inverse_residual, quantum_det_u_minus, quantum_det_u_minus_dd,
    scalar_reflection_residual, transfer, transfer_special_values, transfer_via_u_plus, u_tilde,
    u_tilde_trace_route, xyz_hamiltonian, ybe_residual, OpMat2, PAULI_X,
};
use super::params::{ModelParams, Side};
use super::weights::{k_matrix, k_matrix_raw, k_matrix_sn_diag, r_weights, r_weights_sn, Scalars};
use crate::check::Battery;
use crate::linalg::{rel_diff, CMat, ZERO};
use crate::rng::Rng;
use crate::{C64, Result};
use alloc::format;
use alloc::vec::Vec;

const TOL: f64 = 1e-9;

/// Runs the full structural battery at the given chain length.
///
/// Residuals are relative Frobenius norms; each check records the worst
/// value over `samples` generic spectral-parameter draws.
pub fn identity_battery(params: &ModelParams, seed: u64, samples: usize) -> Result<Battery> {
    let mut rng = Rng::new(seed);
    let mut bat = Battery::new();
    let n = params.n_sites();
    let s = Scalars::new(params);
    let eta = params.eta();
    let e = params.ell();

    let pairs: Vec<(C64, C64)> = (0..samples)
        .map(|_| (params.generic_lambda(&mut rng), params.generic_lambda(&mut rng)))
        .collect();

    // R-matrix layer.
    let mut worst = 0.0f64;
    for &(l, m) in &pairs {
        worst = worst.max(ybe_residual(l, m, params));
    }
    bat.record(format!("vertex.ybe.n{n}"), "YB", worst, TOL);

    let w0 = r_weights(ZERO, params);
    bat.record(
        format!("vertex.r_zero_weights.n{n}"),
        "R(0) weights",
        w0.b.norm().max(w0.d.norm()).max((w0.a - w0.c).norm()) / w0.a.norm(),
        1e-12,
    );

    let mut worst = 0.0f64;
    for &(l, _) in &pairs {
        let a = r_weights(l, params);
        let b = r_weights_sn(l, params)?;
        let scale = a.a.norm().max(a.b.norm()).max(a.c.norm()).max(a.d.norm());
        worst = worst.max(
            (a.a - b.a)
                .norm()
                .max((a.b - b.b).norm())
                .max((a.c - b.c).norm())
                .max((a.d - b.d).norm())
                / scale,
        );
    }
    bat.record(format!("vertex.r_dual_form.n{n}"), "R weights f.sn form", worst, 1e-10);

    // Scalar reflection equation for both boundary K's.
    for side in [Side::Minus, Side::Plus] {
        let b = params.boundary(side);
        let mut worst = 0.0f64;
        for &(l, m) in &pairs {
            worst = worst.max(scalar_reflection_residual(l, m, &b, params)?);
        }
        bat.record(format!("vertex.scalar_refl.{side:?}.n{n}"), "bYB", worst, TOL);
    }

    // K diagonal sn-form and det_q K factorization.
    let mut worst_diag = 0.0f64;
    let mut worst_det = 0.0f64;
    for side in [Side::Minus, Side::Plus] {
        let b = params.boundary(side);
        for &(l, _) in &pairs {
            let kt = k_matrix_raw(l, &b, params)?;
            let (d0, d1) = k_matrix_sn_diag(l, &b, params)?;
            let scale = d0.norm().max(d1.norm());
            worst_diag = worst_diag.max((kt[0][0] - d0).norm().max((kt[1][1] - d1).norm()) / scale);
            let a = s.det_q_k(side, l)?;
            let g = s.det_q_k_g_form(side, l)?;
            worst_det = worst_det.max((a - g).norm() / a.norm().max(1e-30));
        }
    }
    bat.record(format!("vertex.k_sn_diag.n{n}"), "K sn form", worst_diag, 1e-10);
    bat.record(format!("vertex.det_q_k.n{n}"), "det K-/K+", worst_det, 1e-9);

    // p-identities, their plus-side analogs and the crossing relations.
    let mut worst_p = 0.0f64;
    let mut worst_cross = 0.0f64;
    for &(l, _) in &pairs {
        let w2 = r_weights(l * 2.0, params);
        let p = s.p(l);
        worst_p = worst_p.max((p - s.p_second_form(l)).norm() / p.norm());
        let km_p = k_matrix(l, Side::Minus, params)?;
        let km_m = k_matrix(-l, Side::Minus, params)?;
        let kp_p = k_matrix(l, Side::Plus, params)?;
        let kp_m = k_matrix(-l, Side::Plus, params)?;
        let checks = [
            (-w2.c * km_p[0][0] + w2.b * km_p[1][1], km_m[0][0]),
            (-w2.c * km_p[1][1] + w2.b * km_p[0][0], km_m[1][1]),
            (-w2.a * km_p[0][1] + w2.d * km_p[1][0], km_m[0][1]),
            (-w2.a * km_p[1][0] + w2.d * km_p[0][1], km_m[1][0]),
            (-w2.c * kp_m[0][0] + w2.b * kp_m[1][1], kp_p[0][0]),
            (-w2.c * kp_m[1][1] + w2.b * kp_m[0][0], kp_p[1][1]),
            (-w2.a * kp_m[0][1] + w2.d * kp_m[1][0], kp_p[0][1]),
            (-w2.a * kp_m[1][0] + w2.d * kp_m[0][1], kp_p[1][0]),
        ];
        for (num, den) in checks {
            worst_p = worst_p.max((num - p * den).norm() / (p * den).norm().max(1e-30));
        }
        // crossing: K_+(-l) entries against the minus-type matrix built
        // from the plus parameters.
        let cross = k_matrix_raw(l - eta * 0.5, &params.boundary(Side::Plus), params)?;
        let pairs_cross = [
            (kp_m[0][0], cross[1][1]),
            (kp_m[1][1], cross[0][0]),
            (kp_m[0][1], -cross[0][1]),
            (kp_m[1][0], -cross[1][0]),
        ];
        for (a, b) in pairs_cross {
            worst_cross = worst_cross.max((a - b).norm() / a.norm().max(1e-30));
        }
    }
    bat.record(format!("vertex.p_identities.n{n}"), "def-p-1/2", worst_p, 1e-10);
    bat.record(format!("vertex.crossing.n{n}"), "a+(-l)=d-(l) block", worst_cross, 1e-10);

    // Bulk monodromy layer.
    let mut worst_yb = 0.0f64;
    let mut worst_qdet = 0.0f64;
    let mut worst_minv = 0.0f64;
    for &(l, m) in &pairs {
        worst_yb = worst_yb.max(bulk_yb_residual(l, m, params));
        let m1 = monodromy(l + eta * 0.5, params);
        let m2 = monodromy(l - eta * 0.5, params);
        let op = m1.a.mul(&m2.d).sub(&m1.b.mul(&m2.c));
        worst_qdet = worst_qdet.max(op.dist_to_scalar(s.det_q_m(l)) / op.norm_fro().max(1e-30));
        worst_minv = worst_minv.max(monodromy_inverse_residual(l, params));
    }
    bat.record(format!("vertex.bulk_yb.n{n}"), "YB", worst_yb, TOL);
    bat.record(format!("vertex.bulk_qdet.n{n}"), "bulk det_q M", worst_qdet, TOL);
    bat.record(format!("vertex.m_inverse.n{n}"), "M-inverse", worst_minv, TOL);

    // Hat monodromy entry pattern (sign structure).
    {
        let l = pairs[0].0;
        let mh = hat_monodromy(l, params);
        let m = monodromy(-l, params);
        let sign = if n % 2 == 1 { -1.0 } else { 1.0 };
        let expect = OpMat2 {
            a: m.d.scale(C64::new(sign, 0.0)),
            b: m.b.scale(C64::new(-sign, 0.0)),
            c: m.c.scale(C64::new(-sign, 0.0)),
            d: m.a.scale(C64::new(sign, 0.0)),
        };
        bat.record(format!("vertex.m_hat_pattern.n{n}"), "M-hat entries", mh.rel_diff(&expect), 1e-13);
    }

    // Boundary reflection equation.
    let mut worst = 0.0f64;
    for &(l, m) in pairs.iter().take(samples.min(4)) {
        worst = worst.max(boundary_reflection_residual(l, m, params)?);
    }
    bat.record(format!("vertex.boundary_refl.n{n}"), "Reflection Equation", worst, TOL);

    // Quantum determinant of U_-: both epsilon signs, the DD route, the
    // explicit expression and the product formula; centrality.
    let mut worst_eps = 0.0f64;
    let mut worst_exp = 0.0f64;
    let mut worst_prod = 0.0f64;
    let mut worst_central = 0.0f64;
    for &(l, m) in pairs.iter().take(samples.min(5)) {
        let d_p = quantum_det_u_minus(l, params, 1)?;
        let d_m = quantum_det_u_minus(l, params, -1)?;
        let d_dd = quantum_det_u_minus_dd(l, params, 1)?;
        let scale = d_p.norm().max(1e-30);
        worst_eps = worst_eps.max((d_p - d_m).norm() / scale).max((d_p - d_dd).norm() / scale);
        worst_exp = worst_exp.max((d_p - s.det_q_u_minus(l)?).norm() / scale);
        let prod = s.det_q_k(Side::Minus, l)? * s.det_q_m(l) * s.det_q_m(-l);
        worst_prod = worst_prod.max((d_p - prod).norm() / scale);
        // centrality against the generators at another point
        let u1 = boundary_u(Side::Minus, l + eta * 0.5, params)?;
        let u2 = boundary_u(Side::Minus, eta * 0.5 - l, params)?;
        let det_op = u1.a.mul(&u2.a).add(&u1.b.mul(&u2.c));
        let um = boundary_u(Side::Minus, m, params)?;
        for x in [&um.a, &um.b, &um.c, &um.d] {
            let c = det_op.commutator(x);
            worst_central =
                worst_central.max(c.norm_fro() / (det_op.norm_fro() * x.norm_fro()).max(1e-30));
        }
    }
    bat.record(format!("vertex.qdet_eps.n{n}"), "q-detU_1/2", worst_eps, TOL);
    bat.record(format!("vertex.qdet_explicit.n{n}"), "q-detU_-exp", worst_exp, TOL);
    bat.record(format!("vertex.qdet_product.n{n}"), "det_q U_- factorization", worst_prod, TOL);
    bat.record(format!("vertex.qdet_central.n{n}"), "det_q central", worst_central, TOL);

    // Adjoint U~ and the parity relations.
    let mut worst_adj = 0.0f64;
    let mut worst_inv = 0.0f64;
    let mut worst_par = 0.0f64;
    for &(l, _) in pairs.iter().take(samples.min(5)) {
        let util = u_tilde(l, params)?;
        worst_adj = worst_adj.max(util.rel_diff(&u_tilde_trace_route(l, params)?));
        // U~(l) = p(l) U(-l)
        let rhs = boundary_u(Side::Minus, -l, params)?.scale(s.p(l));
        worst_adj = worst_adj.max(util.rel_diff(&rhs));
        // U~(l-eta/2) U(l+eta/2) = det_q U_-(l)
        let prod =
            u_tilde(l - eta * 0.5, params)?.mul(&boundary_u(Side::Minus, l + eta * 0.5, params)?);
        let det = s.det_q_u_minus(l)?;
        worst_inv = worst_inv.max(prod.dist_to_scalar(det) / prod.norm_fro().max(1e-30));
        // Inverse relation: U(l+eta/2) U(eta/2-l) = det_q U_-(l)/p(l-eta/2)
        let prod2 = boundary_u(Side::Minus, l + eta * 0.5, params)?
            .mul(&boundary_u(Side::Minus, eta * 0.5 - l, params)?);
        worst_inv = worst_inv
            .max(prod2.dist_to_scalar(det / s.p(l - eta * 0.5)) / prod2.norm_fro().max(1e-30));
        // Parity relations Sym-A-D- and Sym-B-C-.
        let u = boundary_u(Side::Minus, l, params)?;
        let un = boundary_u(Side::Minus, -l, params)?;
        let w2 = r_weights(l * 2.0, params);
        let p = s.p(l);
        let rels = [
            (u.a.scale(w2.b), u.d.scale(w2.c).add(&un.d.scale(p))),
            (u.d.scale(w2.b), u.a.scale(w2.c).add(&un.a.scale(p))),
            (u.b.scale(w2.d), u.c.scale(w2.a).add(&un.c.scale(p))),
            (u.c.scale(w2.d), u.b.scale(w2.a).add(&un.b.scale(p))),
        ];
        for (lhs, rhs) in rels {
            worst_par = worst_par.max(rel_diff(&lhs, &rhs));
        }
        // U~ entry (1,2) against C d(2l) - B a(2l) explicitly.
        let explicit12 = u.c.scale(w2.d).sub(&u.b.scale(w2.a));
        worst_adj = worst_adj.max(rel_diff(&util.b, &explicit12));
    }
    bat.record(format!("vertex.u_tilde.n{n}"), "Utilde-explicit", worst_adj, TOL);
    bat.record(format!("vertex.inverse.n{n}"), "Inverse", worst_inv, TOL);
    bat.record(format!("vertex.parity.n{n}"), "Sym-A-D-/Sym-B-C-", worst_par, TOL);

    // Transfer matrix: evenness, commutativity, dual trace route.
    let mut worst_even = 0.0f64;
    let mut worst_comm = 0.0f64;
    let mut worst_dual = 0.0f64;
    for &(l, m) in &pairs {
        let tl = transfer(l, params)?;
        worst_even = worst_even.max(rel_diff(&tl, &transfer(-l, params)?));
        let tm = transfer(m, params)?;
        let c = tl.commutator(&tm);
        worst_comm = worst_comm.max(c.norm_fro() / (tl.norm_fro() * tm.norm_fro()).max(1e-30));
        worst_dual = worst_dual.max(rel_diff(&tl, &transfer_via_u_plus(l, params)?));
    }
    bat.record(format!("vertex.t_even.n{n}"), "even-transfer", worst_even, TOL);
    bat.record(format!("vertex.t_commute.n{n}"), "transfer", worst_comm, TOL);
    bat.record(format!("vertex.t_dual_trace.n{n}"), "transfer", worst_dual, TOL);

    // Special points of U_- and the transfer special-value table.
    {
        let u = boundary_u(Side::Minus, eta * 0.5, params)?;
        let sign_n = if n % 2 == 1 { -1.0 } else { 1.0 };
        let want = sign_n * e.th4(params.boundary(Side::Minus).zeta).powi(2) * s.det_q_m(ZERO);
        bat.record(
            format!("vertex.u_eta_half.n{n}"),
            "U_-(eta/2)",
            u.dist_to_scalar(want) / u.norm_fro().max(1e-30),
            TOL,
        );
        let pi = core::f64::consts::PI;
        let u2 = boundary_u(Side::Minus, eta * 0.5 + pi / 2.0, params)?;
        let zm = params.boundary(Side::Minus).zeta;
        let c2 = e.th3(zm) * e.th2(zm) * e.th4(zm) / e.th1(zm) * s.det_q_m(C64::new(pi / 2.0, 0.0));
        // sigma_0^z structure: A = c2, D = -c2, B = C = 0.
        let expect = OpMat2 {
            a: CMat::identity(params.dim()).scale(c2),
            b: CMat::zeros(params.dim(), params.dim()),
            c: CMat::zeros(params.dim(), params.dim()),
            d: CMat::identity(params.dim()).scale(-c2),
        };
        bat.record(
            format!("vertex.u_eta_half_pi.n{n}"),
            "U_-(eta/2+pi/2)",
            u2.rel_diff(&expect),
            TOL,
        );
        let sv = transfer_special_values(params)?;
        bat.record(
            format!("vertex.t_special.n{n}"),
            "set-T-0/pi2, pole-1/2",
            sv.cross_check_residual,
            1e-7,
        );
    }

    Ok(bat)
}

/// Homogeneous-limit checks: commutation of the XYZ Hamiltonian with the
/// transfer matrix, diagonal boundary structure at kappa = 0, and the
/// trigonometric-limit couplings.
pub fn hamiltonian_battery(n_sites: usize, seed: u64) -> Result<Battery> {
    let mut bat = Battery::new();
    let template = ModelParams::sample(n_sites, seed);
    let zero_xi = alloc::vec![ZERO; n_sites];
    let params = ModelParams::new_unchecked(
        n_sites,
        template.eta(),
        template.omega(),
        zero_xi.clone(),
        template.boundary(Side::Minus),
        template.boundary(Side::Plus),
    )?;
    let h = xyz_hamiltonian(&params)?;
    let mut rng = Rng::new(seed ^ 0x5ca1ab1e);
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let lam = params.generic_lambda(&mut rng);
        let t = transfer(lam, &params)?;
        let c = h.commutator(&t);
        worst = worst.max(c.norm_fro() / (h.norm_fro() * t.norm_fro()).max(1e-30));
    }
    bat.record(format!("hamiltonian.commute.n{n_sites}"), "H-XXZ-Non-D", worst, 1e-8);

    // kappa = 0: boundary fields purely sigma^z, so H has no single-site X
    // component at the edges.
    {
        let mut bm = template.boundary(Side::Minus);
        let mut bp = template.boundary(Side::Plus);
        bm.kappa = ZERO;
        bp.kappa = ZERO;
        let p0 =
            ModelParams::new_unchecked(n_sites, template.eta(), template.omega(), zero_xi, bm, bp)?;
        let h0 = xyz_hamiltonian(&p0)?;
        let x_edge = super::chain::embed_site(n_sites, 0, &PAULI_X);
        let overlap = h0.mul(&x_edge).trace().norm() / h0.norm_fro();
        bat.record(
            format!("hamiltonian.kappa_zero_diag.n{n_sites}"),
            "H-XXZ-Non-D boundary",
            overlap,
            1e-10,
        );
    }

    // Trigonometric direction: at Im w = 8 the modulus k is ~0 and the
    // couplings 1 +- k sn^2(eta~) collapse to 1.
    {
        let p_trig = ModelParams::new_unchecked(
            2,
            template.eta(),
            C64::new(0.0, 8.0),
            alloc::vec![ZERO, ZERO],
            template.boundary(Side::Minus),
            template.boundary(Side::Plus),
        )?;
        let el = p_trig.ell();
        let k = el.moduli().k;
        let sn = el.sn(p_trig.eta())?;
        let jx = 1.0 + k * sn * sn;
        let jy = 1.0 - k * sn * sn;
        bat.record(
            format!("hamiltonian.trig_limit.n{n_sites}"),
            "H-XXZ-Non-D couplings",
            (jx - 1.0).norm().max((jy - 1.0).norm()),
            1e-8,
        );
    }

    Ok(bat)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn battery_runs_clean_small() {
        for n in [0usize, 1, 2] {
            let p = ModelParams::sample(n, 1000 + n as u64);
            let bat = identity_battery(&p, 5, 3).unwrap();
            for c in &bat.checks {
                assert!(c.pass(), "failed: {c}");
            }
        }
    }

    #[test]
    fn hamiltonian_battery_passes() {
        let bat = hamiltonian_battery(2, 33).unwrap();
        for c in &bat.checks {
            assert!(c.pass(), "failed: {c}");
        }
    }
}
