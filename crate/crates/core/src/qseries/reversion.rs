//! Re-expansion of a series in powers of another series.

use num_rational::BigRational;

use super::{QSeries, Var};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Coefficients `α_0..=α_{r_max}` with `F = Σ α_r·φ^r`, by triangular elimination.
///
/// `φ` must start at a positive tick `d` with an invertible coefficient, and
/// `F` must have no terms below tick 0 or off the multiples of `d` that the
/// elimination reaches.
pub fn rebase(f: &QSeries, phi: &QSeries, r_max: usize) -> Result<Vec<Scalar>> {
    let d = phi.min_tick();
    let lead = phi
        .leading_coefficient()
        .ok_or_else(|| Error::NotExpandable("base series is zero".into()))?;
    if d <= 0 {
        return Err(Error::NotExpandable(format!(
            "base series must start at a positive exponent, starts at tick {d}"
        )));
    }
    let lead_inv = lead.inverse()?;

    let mut residual = f.clone();
    let mut phi_pow: Option<QSeries> = None;
    let mut lead_inv_pow = Scalar::one();
    let mut out = Vec::with_capacity(r_max + 1);
    for r in 0..=r_max {
        let t = r as i64 * d;
        if t >= residual.prec_tick() {
            return Err(Error::BeyondPrecision {
                tick: t,
                prec: residual.prec_tick(),
            });
        }
        if !residual.is_zero() && residual.min_tick() < t {
            return Err(Error::NotExpandable(format!(
                "unmatched term at tick {} before power {r} of the base",
                residual.min_tick()
            )));
        }
        let alpha = &residual.coefficient_at_tick(t)? * &lead_inv_pow;
        if r == 0 {
            residual = residual.add_monomial(&-&alpha, 0);
        } else {
            let p = match phi_pow.take() {
                None => phi.clone(),
                Some(p) => p.mul(phi),
            };
            if !alpha.is_zero() {
                residual = residual.sub(&p.scale(&alpha));
            }
            phi_pow = Some(p);
        }
        lead_inv_pow = &lead_inv_pow * &lead_inv;
        out.push(alpha);
    }
    Ok(out)
}

/// Bürmann–Lagrange value of `α_r` in `F = Σ α_r·φ^r`: the coefficient of
/// `v^{r−1}` in `(1/r)·F'·(v/φ)^r`, where `v` is `var` and `φ = u·v + …`.
pub fn lagrange_coefficient(f: &QSeries, phi: &QSeries, r: usize, var: Var) -> Result<Scalar> {
    if r == 0 {
        return Err(Error::InvalidArgument("Bürmann–Lagrange needs r >= 1".into()));
    }
    let vt = var.ticks();
    if phi.min_tick() != vt || phi.is_zero() {
        return Err(Error::NotExpandable(format!(
            "base series must start at tick {vt}, starts at {}",
            phi.min_tick()
        )));
    }
    let ratio = phi.invert()?.shift(vt);
    let expr = f.derivative(var).mul(&ratio.pow(r as i64)?);
    let c = expr.coefficient_at_tick((r as i64 - 1) * vt)?;
    Ok(c.scale(&BigRational::new(1.into(), (r as i64).into())))
}
