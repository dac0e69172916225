//! Baxter's intertwining (gauge) vectors and covectors.
//!
//! All families are indexed by an effective subscript s (the paper's beta
//! plus integer offsets, sometimes plus the site index): the vectors
//!
//! ```text
//! X_s = (theta2(l+(alpha+s) eta | 2w), theta3(l+(alpha+s) eta | 2w))^T,
//! Y_s = X_{-s},
//! ```
//!
//! their dual covectors (bar/tilde) and the hatted/underlined rescalings
//! used by the transfer-matrix decompositions.

use crate::linalg::{V2, ZERO};
use crate::vertex::ModelParams;
use crate::{C64, Error, Result};

/// Gauge parameters (alpha, beta).
///
/// Validated against the zeros of theta((beta+k) eta) for |k| <= 2 and of
/// theta(beta eta) against the lattice (commutation coefficients and dual
/// normalizations blow up there).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaugeFrame {
    pub alpha: C64,
    pub beta: C64,
}

impl GaugeFrame {
    pub fn new(alpha: C64, beta: C64, params: &ModelParams) -> Result<Self> {
        let f = GaugeFrame { alpha, beta };
        f.validate(params)?;
        Ok(f)
    }

    pub fn validate(&self, params: &ModelParams) -> Result<()> {
        let e = params.ell();
        for k in -2i32..=2 {
            let arg = (self.beta + f64::from(k)) * params.eta();
            if e.tb(arg).norm() < 1e-8 {
                return Err(Error::DegenerateGauge("theta((beta+k) eta) ~ 0"));
            }
            if crate::elliptic::lattice_distance(arg, params.omega()) < 1e-4 {
                return Err(Error::DegenerateGauge("beta eta too close to a theta zero"));
            }
        }
        Ok(())
    }

    /// Frame with beta shifted by an integer (slot bookkeeping).
    pub fn shifted(&self, db: f64) -> GaugeFrame {
        GaugeFrame { alpha: self.alpha, beta: self.beta + db }
    }
}

/// Evaluator for one (params, frame) pair.
#[derive(Debug, Clone, Copy)]
pub struct Vectors<'a> {
    pub params: &'a ModelParams,
    pub alpha: C64,
}

impl<'a> Vectors<'a> {
    pub fn new(params: &'a ModelParams, frame: &GaugeFrame) -> Self {
        Vectors { params, alpha: frame.alpha }
    }

    fn eta(&self) -> C64 {
        self.params.eta()
    }

    /// X_s(lambda).
    pub fn x(&self, s: C64, lam: C64) -> V2 {
        let e = self.params.ell();
        let arg = lam + (self.alpha + s) * self.eta();
        [e.th2(arg), e.th3(arg)]
    }

    /// Y_s(lambda) = X_{-s}(lambda).
    pub fn y(&self, s: C64, lam: C64) -> V2 {
        self.x(-s, lam)
    }

    /// bar X_s(lambda), dual covector with 1/(theta(l+alpha eta) theta(s eta)).
    pub fn x_bar(&self, s: C64, lam: C64) -> Result<V2> {
        let e = self.params.ell();
        let den = e.tb(lam + self.alpha * self.eta()) * e.tb(s * self.eta());
        if den.norm() < 1e-12 {
            return Err(Error::DegenerateGauge("bar-covector normalization"));
        }
        let arg = lam + (self.alpha + s) * self.eta();
        Ok([e.th3(arg) / den, -e.th2(arg) / den])
    }

    /// bar Y_s(lambda).
    pub fn y_bar(&self, s: C64, lam: C64) -> Result<V2> {
        let e = self.params.ell();
        let den = e.tb(lam + self.alpha * self.eta()) * e.tb(s * self.eta());
        if den.norm() < 1e-12 {
            return Err(Error::DegenerateGauge("bar-covector normalization"));
        }
        let arg = lam + (self.alpha - s) * self.eta();
        Ok([-e.th3(arg) / den, e.th2(arg) / den])
    }

    /// tilde X_s(lambda).
    pub fn x_til(&self, s: C64, lam: C64) -> Result<V2> {
        let e = self.params.ell();
        let den = e.tb(lam + (self.alpha + 1.0) * self.eta()) * e.tb((s - 1.0) * self.eta());
        if den.norm() < 1e-12 {
            return Err(Error::DegenerateGauge("tilde-covector normalization"));
        }
        let arg = lam + (self.alpha + s) * self.eta();
        Ok([e.th3(arg) / den, -e.th2(arg) / den])
    }

    /// tilde Y_s(lambda).
    pub fn y_til(&self, s: C64, lam: C64) -> Result<V2> {
        let e = self.params.ell();
        let den = e.tb(lam + (self.alpha + 1.0) * self.eta()) * e.tb((s + 1.0) * self.eta());
        if den.norm() < 1e-12 {
            return Err(Error::DegenerateGauge("tilde-covector normalization"));
        }
        let arg = lam + (self.alpha - s) * self.eta();
        Ok([-e.th3(arg) / den, e.th2(arg) / den])
    }

    /// hat Y_s(lambda) (printed as hat Y_{beta-1} with s = beta - 1).
    pub fn y_hat(&self, s: C64, lam: C64) -> Result<V2> {
        let e = self.params.ell();
        let den = e.tb((s + 2.0) * self.eta())
            * e.tb(lam + (self.alpha + 2.0) * self.eta())
            * e.th4(lam * 2.0);
        if den.norm() < 1e-12 {
            return Err(Error::DegenerateGauge("hat-vector normalization"));
        }
        let scale = e.tb((s + 3.0) * self.eta()) / den;
        let y = self.y(s, lam);
        Ok([y[0] * scale, y[1] * scale])
    }

    /// hat X_s(lambda) (printed as hat X_{beta+3} with s = beta + 3).
    pub fn x_hat(&self, s: C64, lam: C64) -> Result<V2> {
        let e = self.params.ell();
        let den = e.tb((s - 2.0) * self.eta())
            * e.tb(lam + (self.alpha + 2.0) * self.eta())
            * e.th4(lam * 2.0);
        if den.norm() < 1e-12 {
            return Err(Error::DegenerateGauge("hat-vector normalization"));
        }
        let scale = e.tb((s - 3.0) * self.eta()) / den;
        let x = self.x(s, lam);
        Ok([x[0] * scale, x[1] * scale])
    }

    /// underline Y_s(lambda) = bar Y_s(lambda)/(theta4(2l|2w) theta(-l+(alpha+1) eta)).
    pub fn y_und(&self, s: C64, lam: C64) -> Result<V2> {
        let e = self.params.ell();
        let den = e.th4(lam * 2.0) * e.tb(-lam + (self.alpha + 1.0) * self.eta());
        if den.norm() < 1e-12 {
            return Err(Error::DegenerateGauge("underline-covector normalization"));
        }
        let b = self.y_bar(s, lam)?;
        Ok([b[0] / den, b[1] / den])
    }

    /// underline X_s(lambda).
    pub fn x_und(&self, s: C64, lam: C64) -> Result<V2> {
        let e = self.params.ell();
        let den = e.th4(lam * 2.0) * e.tb(-lam + (self.alpha + 1.0) * self.eta());
        if den.norm() < 1e-12 {
            return Err(Error::DegenerateGauge("underline-covector normalization"));
        }
        let b = self.x_bar(s, lam)?;
        Ok([b[0] / den, b[1] / den])
    }
}

/// Snapshot of all vector families at one (lambda, beta), as the public
/// construction surface.
#[derive(Debug, Clone)]
pub struct GaugeVectorSet {
    pub x: V2,
    pub y: V2,
    pub x_bar: V2,
    pub y_bar: V2,
    pub x_til: V2,
    pub y_til: V2,
    pub x_hat: V2,
    pub y_hat: V2,
    pub x_und: V2,
    pub y_und: V2,
}

/// Builds the ten families at subscripts matching the printed duality
/// relations: X/Y/bar at beta, tilde at beta -+ 1, hat at beta + 3 /
/// beta - 1, underline at beta.
pub fn build_gauge_vectors(
    lam: C64,
    frame: &GaugeFrame,
    params: &ModelParams,
) -> Result<GaugeVectorSet> {
    let v = Vectors::new(params, frame);
    let b = frame.beta;
    let set = GaugeVectorSet {
        x: v.x(b, lam),
        y: v.y(b, lam),
        x_bar: v.x_bar(b, lam)?,
        y_bar: v.y_bar(b, lam)?,
        x_til: v.x_til(b + 1.0, lam)?,
        y_til: v.y_til(b - 1.0, lam)?,
        x_hat: v.x_hat(b + 3.0, lam)?,
        y_hat: v.y_hat(b - 1.0, lam)?,
        x_und: v.x_und(b, lam)?,
        y_und: v.y_und(b, lam)?,
    };
    // Internal consistency: duality of the bar pair.
    let d1 = crate::linalg::row_col(&set.y_bar, &set.x) - 1.0;
    let d2 = crate::linalg::row_col(&set.x_bar, &set.y) - 1.0;
    if d1.norm() > 1e-10 || d2.norm() > 1e-10 {
        return Err(Error::DegenerateGauge("duality relations failed"));
    }
    Ok(set)
}

/// Completeness defect || X_b bar-Y_b + Y_b bar-X_b - Id ||.
pub fn completeness_residual_bar(lam: C64, frame: &GaugeFrame, params: &ModelParams) -> Result<f64> {
    let v = Vectors::new(params, frame);
    let b = frame.beta;
    let x = v.x(b, lam);
    let y = v.y(b, lam);
    let xb = v.x_bar(b, lam)?;
    let yb = v.y_bar(b, lam)?;
    let mut worst = ZERO;
    let mut res = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            let got = x[i] * yb[j] + y[i] * xb[j];
            let want = if i == j { C64::new(1.0, 0.0) } else { ZERO };
            let d = (got - want).norm();
            if d > res {
                res = d;
                worst = got;
            }
        }
    }
    let _ = worst;
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::row_col;
    use crate::rng::Rng;

    fn setup() -> (ModelParams, GaugeFrame) {
        let p = ModelParams::sample(2, 7);
        let f = GaugeFrame::new(C64::new(0.23, 0.06), C64::new(0.41, -0.13), &p).unwrap();
        (p, f)
    }

    #[test]
    fn duality_and_completeness() {
        let (p, f) = setup();
        let v = Vectors::new(&p, &f);
        let mut rng = Rng::new(4);
        for _ in 0..20 {
            let lam = rng.generic_point();
            let b = f.beta;
            // bar pair
            let x = v.x(b, lam);
            let y = v.y(b, lam);
            let xb = v.x_bar(b, lam).unwrap();
            let yb = v.y_bar(b, lam).unwrap();
            assert!((row_col(&yb, &x) - 1.0).norm() < 1e-11);
            assert!(row_col(&yb, &y).norm() < 1e-11);
            assert!(row_col(&xb, &x).norm() < 1e-11);
            assert!((row_col(&xb, &y) - 1.0).norm() < 1e-11);
            assert!(completeness_residual_bar(lam, &f, &p).unwrap() < 1e-11);
            // tilde pair
            let xt = v.x_til(b + 1.0, lam).unwrap();
            let yt = v.y_til(b - 1.0, lam).unwrap();
            let xp = v.x(b + 1.0, lam);
            let ym = v.y(b - 1.0, lam);
            assert!((row_col(&yt, &xp) - 1.0).norm() < 1e-11);
            assert!(row_col(&yt, &ym).norm() < 1e-11);
            assert!(row_col(&xt, &xp).norm() < 1e-11);
            assert!((row_col(&xt, &ym) - 1.0).norm() < 1e-11);
            // tilde completeness
            for i in 0..2 {
                for j in 0..2 {
                    let got = xp[i] * yt[j] + ym[i] * xt[j];
                    let want = if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
                    assert!((got - want).norm() < 1e-11);
                }
            }
        }
    }

    #[test]
    fn y_is_x_at_negated_index() {
        let (p, f) = setup();
        let v = Vectors::new(&p, &f);
        let lam = C64::new(0.19, -0.07);
        let y = v.y(f.beta, lam);
        let x = v.x(-f.beta, lam);
        assert_eq!(y, x);
        // tilde version: tilde Y_s = tilde X_{-s}
        let yt = v.y_til(f.beta, lam).unwrap();
        let xt = v.x_til(-f.beta, lam).unwrap();
        assert!((yt[0] - xt[0]).norm() < 1e-13 * yt[0].norm());
        assert!((yt[1] - xt[1]).norm() < 1e-13 * yt[1].norm().max(1e-12));
    }

    #[test]
    fn hatted_dual_normalization() {
        // (tilde Y_{b-1}; tilde X_{b+3}) (hat X_{b+3}, hat Y_{b-1})
        //   = Id / (theta(l+(alpha+1) eta) theta4(2l|2w))
        let (p, f) = setup();
        let v = Vectors::new(&p, &f);
        let e = p.ell();
        let mut rng = Rng::new(14);
        for _ in 0..10 {
            let lam = rng.generic_point();
            let b = f.beta;
            let norm = 1.0 / (e.tb(lam + (f.alpha + 1.0) * p.eta()) * e.th4(lam * 2.0));
            let yt = v.y_til(b - 1.0, lam).unwrap();
            let xt = v.x_til(b + 3.0, lam).unwrap();
            let xh = v.x_hat(b + 3.0, lam).unwrap();
            let yh = v.y_hat(b - 1.0, lam).unwrap();
            assert!((row_col(&yt, &xh) - norm).norm() < 1e-11 * norm.norm());
            assert!(row_col(&yt, &yh).norm() < 1e-11 * norm.norm());
            assert!(row_col(&xt, &xh).norm() < 1e-11 * norm.norm());
            assert!((row_col(&xt, &yh) - norm).norm() < 1e-11 * norm.norm());
            // hatted completeness with the same normalization (the flip
            // side of the duality, with the tilde covectors)
            for i in 0..2 {
                for j in 0..2 {
                    let got = xh[i] * yt[j] + yh[i] * xt[j];
                    let want = if i == j { norm } else { C64::new(0.0, 0.0) };
                    assert!((got - want).norm() < 1e-11 * norm.norm());
                }
            }
        }
    }

    #[test]
    fn frame_rejects_degenerate_beta() {
        let p = ModelParams::sample(1, 3);
        // beta = 0 makes theta(beta eta) = 0
        assert!(GaugeFrame::new(C64::new(0.2, 0.1), C64::new(0.0, 0.0), &p).is_err());
    }
}
