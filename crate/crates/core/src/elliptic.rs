//! Jacobi theta functions, elliptic moduli and the even-elliptic-polynomial
//! interpolation toolkit.
//!
//! Conventions follow Gradshteyn-Ryzhik with arguments written (z | x), the
//! nome being q = e^{i pi x}:
//!
//! ```text
//! theta1(z|x) = 2 sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1) z)
//! theta2(z|x) = 2 sum_{n>=0}        q^{(n+1/2)^2} cos((2n+1) z)
//! theta3(z|x) = 1 + 2 sum_{n>=1}        q^{n^2} cos(2 n z)
//! theta4(z|x) = 1 + 2 sum_{n>=1} (-1)^n q^{n^2} cos(2 n z)
//! ```
//!
//! These satisfy the quasi-period laws
//! `theta_a(z+pi|x) = (-1)^{d_{a1}+d_{a2}} theta_a(z|x)` and
//! `theta_a(z+pi x|x) = (-1)^{d_{a1}+d_{a4}} e^{-i(2z+pi x)} theta_a(z|x)`,
//! which the whole algebraic layer leans on; they are pinned by unit tests.

use crate::{C64, Error, Result};
use core::f64::consts::PI;

const I: C64 = C64::new(0.0, 1.0);

/// Terms are accumulated until the next one falls below this relative size.
const SERIES_REL_TOL: f64 = 1e-16;
/// Hard cap on series length; never reached for admissible nomes.
const SERIES_MAX_TERMS: usize = 64;

/// Validated half-period ratio: the x of theta(z | x), with Im x > 0 and a
/// convergence margin |e^{i pi x}| <= 0.95.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPeriodRatio {
    omega: C64,
}

impl HalfPeriodRatio {
    pub fn new(omega: C64) -> Result<Self> {
        if !(omega.im > 0.0) {
            return Err(Error::NonConvergentNome);
        }
        let nome_abs = libm::exp(-PI * omega.im);
        if nome_abs > 0.95 {
            return Err(Error::NonConvergentNome);
        }
        Ok(HalfPeriodRatio { omega })
    }

    pub fn value(&self) -> C64 {
        self.omega
    }

    /// q = e^{i pi x}.
    pub fn nome(&self) -> C64 {
        (I * PI * self.omega).exp()
    }
}

/// theta_index(z | ratio) by truncated q-series, after reducing Re z into
/// [-pi/2, pi/2) with the pi-quasi-period.
pub fn theta(index: u8, z: C64, ratio: HalfPeriodRatio) -> Result<C64> {
    if !(1..=4).contains(&index) {
        return Err(Error::InvalidThetaIndex(index));
    }
    if z.im.abs() > 4.0 * PI * ratio.omega.im {
        return Err(Error::ArgumentRange);
    }
    Ok(theta_raw(index, z, ratio.omega))
}

/// Series core. `x` must have positive imaginary part; arguments in the
/// strip |Im z| <~ 4 pi Im x stay far from f64 overflow.
fn theta_raw(index: u8, z: C64, x: C64) -> C64 {
    // Reduce the real part modulo pi; theta1/theta2 pick up (-1)^m.
    let m = libm::round(z.re / PI);
    let z = z - C64::new(m * PI, 0.0);
    let sign = if (index == 1 || index == 2) && (m as i64) % 2 != 0 { -1.0 } else { 1.0 };
    let ipix = I * PI * x;
    let mut sum = C64::new(0.0, 0.0);
    match index {
        1 | 2 => {
            for n in 0..SERIES_MAX_TERMS {
                let nf = n as f64;
                let qpow = (ipix * (nf + 0.5) * (nf + 0.5)).exp();
                let trig = if index == 1 { ((2.0 * nf + 1.0) * z).sin() } else { ((2.0 * nf + 1.0) * z).cos() };
                let alt = if index == 1 && n % 2 == 1 { -1.0 } else { 1.0 };
                let term = qpow * trig * 2.0 * alt;
                sum += term;
                if term.norm() < SERIES_REL_TOL * sum.norm() && n > 1 {
                    break;
                }
            }
        }
        _ => {
            sum = C64::new(1.0, 0.0);
            for n in 1..SERIES_MAX_TERMS {
                let nf = n as f64;
                let qpow = (ipix * nf * nf).exp();
                let alt = if index == 4 && n % 2 == 1 { -1.0 } else { 1.0 };
                let term = qpow * (2.0 * nf * z).cos() * 2.0 * alt;
                sum += term;
                if term.norm() < SERIES_REL_TOL * sum.norm() {
                    break;
                }
            }
        }
    }
    sum * sign
}

/// Elliptic moduli attached to a half-period ratio w: the theta-constant
/// combinations k, k' and K_k built at ratio 2w.
#[derive(Debug, Clone, Copy)]
pub struct EllipticModuli {
    pub k: C64,
    pub k_prime: C64,
    pub big_k: C64,
}

/// Evaluation context for one value of the paper's w: thetas at ratio 2w
/// (the workhorses), theta(z) = theta1(z|w), and the derived moduli.
#[derive(Debug, Clone, Copy)]
pub struct EllCtx {
    omega: C64,
    two_omega: C64,
    moduli: EllipticModuli,
    sqrt_k: C64,
    sqrt_k_prime: C64,
}

impl EllCtx {
    pub fn new(omega: C64) -> Result<Self> {
        let r2 = HalfPeriodRatio::new(omega * 2.0)?;
        HalfPeriodRatio::new(omega)?;
        let zero = C64::new(0.0, 0.0);
        let t2 = theta_raw(2, zero, r2.value());
        let t3 = theta_raw(3, zero, r2.value());
        let t4 = theta_raw(4, zero, r2.value());
        let moduli = EllipticModuli {
            k: (t2 / t3) * (t2 / t3),
            k_prime: (t4 / t3) * (t4 / t3),
            big_k: t3 * t3 * 0.5,
        };
        Ok(EllCtx {
            omega,
            two_omega: omega * 2.0,
            moduli,
            sqrt_k: moduli.k.sqrt(),
            sqrt_k_prime: moduli.k_prime.sqrt(),
        })
    }

    pub fn omega(&self) -> C64 {
        self.omega
    }

    pub fn moduli(&self) -> EllipticModuli {
        self.moduli
    }

    /// Nome q = e^{i pi w} of the w-ratio thetas.
    pub fn nome(&self) -> C64 {
        (I * PI * self.omega).exp()
    }

    /// theta_a(z | 2w).
    pub fn th(&self, index: u8, z: C64) -> C64 {
        theta_raw(index, z, self.two_omega)
    }

    pub fn th1(&self, z: C64) -> C64 {
        theta_raw(1, z, self.two_omega)
    }

    pub fn th2(&self, z: C64) -> C64 {
        theta_raw(2, z, self.two_omega)
    }

    pub fn th3(&self, z: C64) -> C64 {
        theta_raw(3, z, self.two_omega)
    }

    pub fn th4(&self, z: C64) -> C64 {
        theta_raw(4, z, self.two_omega)
    }

    /// theta(z) = theta1(z | w), the building block of all order-M elliptic
    /// polynomials in the w lattice.
    pub fn tb(&self, z: C64) -> C64 {
        theta_raw(1, z, self.omega)
    }

    /// theta_a(z | w), the single-ratio thetas (R-weight normalization and
    /// the function p use theta2(0|w)).
    pub fn thw(&self, index: u8, z: C64) -> C64 {
        theta_raw(index, z, self.omega)
    }

    /// sn(2 K_k z) expressed through thetas at ratio 2w.
    pub fn sn(&self, z: C64) -> Result<C64> {
        let den = self.th4(z);
        if den.norm() < 1e-13 {
            return Err(Error::Pole("sn denominator theta4"));
        }
        Ok(self.th1(z) / (self.sqrt_k * den))
    }

    /// cn(2 K_k z).
    pub fn cn(&self, z: C64) -> Result<C64> {
        let den = self.th4(z);
        if den.norm() < 1e-13 {
            return Err(Error::Pole("cn denominator theta4"));
        }
        Ok(self.sqrt_k_prime / self.sqrt_k * self.th2(z) / den)
    }

    /// dn(2 K_k z).
    pub fn dn(&self, z: C64) -> Result<C64> {
        let den = self.th4(z);
        if den.norm() < 1e-13 {
            return Err(Error::Pole("dn denominator theta4"));
        }
        Ok(self.sqrt_k_prime * self.th3(z) / den)
    }
}

/// Which Jacobi function [`jacobi`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JacobiFn {
    Sn,
    Cn,
    Dn,
}

/// Jacobi elliptic function at the scaled argument 2 K_k lambda.
pub fn jacobi(f: JacobiFn, lambda: C64, ctx: &EllCtx) -> Result<C64> {
    match f {
        JacobiFn::Sn => ctx.sn(lambda),
        JacobiFn::Cn => ctx.cn(lambda),
        JacobiFn::Dn => ctx.dn(lambda),
    }
}

/// Transformation data of an order-M elliptic polynomial:
/// P(z+pi) = (-1)^M P(z) and P(z+2 pi w) = (-e^{-2iz}/q^2)^M e^{2 i norm} P(z).
#[derive(Debug, Clone, Copy)]
pub struct EllipticPolySpec {
    pub order: usize,
    pub norm: C64,
}

impl EllipticPolySpec {
    pub fn new(order: usize, norm: C64) -> Result<Self> {
        if order == 0 {
            return Err(Error::DegenerateNorm);
        }
        Ok(EllipticPolySpec { order, norm })
    }
}

/// Distance of `z` from the lattice pi Z + pi w Z, measured in lattice
/// coordinates.
pub fn lattice_distance(z: C64, omega: C64) -> f64 {
    // Solve z = u pi + v pi w over the reals.
    let det = omega.im; // Im(w) > 0
    let v = z.im / (PI * det);
    let u = (z.re - v * PI * omega.re) / PI;
    let du = u - libm::round(u);
    let dv = v - libm::round(v);
    libm::sqrt(du * du + dv * dv)
}

/// Interpolate an order-M elliptic polynomial with the declared
/// transformation laws through its values at M generic nodes:
///
/// ```text
/// P(z) = sum_a  theta(norm + x_a - z - S) / theta(norm - S)
///        * prod_{b != a} theta(z - x_b) / theta(x_a - x_b) * P(x_a)
/// ```
///
/// with S = sum_n x_n and theta(z) = theta1(z | w).
pub fn elliptic_interpolate(
    spec: EllipticPolySpec,
    nodes: &[C64],
    values: &[C64],
    eval_at: C64,
    ctx: &EllCtx,
) -> Result<C64> {
    if nodes.len() != spec.order || values.len() != spec.order {
        return Err(Error::CoincidentNodes);
    }
    for (i, a) in nodes.iter().enumerate() {
        for b in nodes.iter().skip(i + 1) {
            if lattice_distance(a - b, ctx.omega()) < 1e-10 {
                return Err(Error::CoincidentNodes);
            }
        }
    }
    let s: C64 = nodes.iter().sum();
    let norm_theta = ctx.tb(spec.norm - s);
    if norm_theta.norm() < 1e-13 {
        return Err(Error::DegenerateNorm);
    }
    let mut acc = C64::new(0.0, 0.0);
    for (a, &xa) in nodes.iter().enumerate() {
        let mut w = ctx.tb(spec.norm + xa - eval_at - s) / norm_theta;
        for (b, &xb) in nodes.iter().enumerate() {
            if b != a {
                w *= ctx.tb(eval_at - xb) / ctx.tb(xa - xb);
            }
        }
        acc += w * values[a];
    }
    Ok(acc)
}
