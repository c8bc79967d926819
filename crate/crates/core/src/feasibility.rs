//! Existence tests for two-state probabilistic cloning machines and the
//! average-rate bound.
//!
//! A machine that clones each of two candidate states with per-state success
//! rates (r₁, r₂) exists exactly when
//!
//! ```text
//! √((1−r₁)(1−r₂)) − η_in + η_out·√(r₁r₂) ≥ 0
//! ```
//!
//! where η_in is the input overlap magnitude and η_out the output overlap
//! magnitude. The n-state generalization asks that `X − √Γ·Y·√Γ` be positive
//! semidefinite, with X the input Gram, Y the output Gram damped by probe
//! overlaps, and Γ the diagonal matrix of rates.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::states::HermitianMatrix;

/// Slack allowed when testing the two-state inequality, so analytically exact
/// boundary points survive rounding.
pub const FEASIBILITY_SLACK: f64 = 1e-12;

/// Minimum-eigenvalue tolerance for the positive-semidefiniteness test.
pub const PSD_TOL: f64 = 1e-9;

/// Per-state success probabilities (r₁, r₂) of one machine.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatePair {
    r1: f64,
    r2: f64,
}

impl RatePair {
    pub fn new(r1: f64, r2: f64) -> Result<Self> {
        for (name, value) in [("r1", r1), ("r2", r2)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::OutOfRange {
                    name,
                    value,
                    expected: "a probability in [0, 1]",
                });
            }
        }
        Ok(Self { r1, r2 })
    }

    pub(crate) fn new_unchecked(r1: f64, r2: f64) -> Self {
        Self { r1, r2 }
    }

    pub fn r1(&self) -> f64 {
        self.r1
    }

    pub fn r2(&self) -> f64 {
        self.r2
    }
}

/// Input/output overlap magnitudes (η_in, η_out) characterizing one machine.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MachineSpec {
    eta_in: f64,
    eta_out: f64,
}

impl MachineSpec {
    pub fn new(eta_in: f64, eta_out: f64) -> Result<Self> {
        for (name, value) in [("eta_in", eta_in), ("eta_out", eta_out)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::OutOfRange {
                    name,
                    value,
                    expected: "an overlap magnitude in [0, 1]",
                });
            }
        }
        Ok(Self { eta_in, eta_out })
    }

    pub fn eta_in(&self) -> f64 {
        self.eta_in
    }

    pub fn eta_out(&self) -> f64 {
        self.eta_out
    }
}

/// The value of the two-state feasibility expression; the machine exists iff
/// this is ≥ 0 (up to [`FEASIBILITY_SLACK`]).
pub fn feasibility_margin(spec: MachineSpec, rates: RatePair) -> f64 {
    ((1.0 - rates.r1) * (1.0 - rates.r2)).sqrt() - spec.eta_in
        + spec.eta_out * (rates.r1 * rates.r2).sqrt()
}

/// Whether a two-state machine with the given rates exists.
pub fn two_state_feasible(spec: MachineSpec, rates: RatePair) -> bool {
    feasibility_margin(spec, rates) >= -FEASIBILITY_SLACK
}

/// Whether an n-state machine with the given per-state rates exists, for the
/// given input Gram `X`, output overlap Gram (entrywise m-th powers of the
/// output overlaps), and probe Gram.
///
/// Forms `M = X − √Γ·(Y∘P)·√Γ` with `Γ = diag(rates)` and `∘` the entrywise
/// product, and tests `M ⪰ 0` via its smallest eigenvalue at [`PSD_TOL`].
pub fn theorem1_feasible(
    input_gram: &HermitianMatrix,
    output_gram: &HermitianMatrix,
    probe_gram: &HermitianMatrix,
    rates: &[f64],
) -> Result<bool> {
    let n = input_gram.dim();
    for other in [output_gram.dim(), probe_gram.dim(), rates.len()] {
        if other != n {
            return Err(Error::DimensionMismatch { left: n, right: other });
        }
    }
    for &r in rates {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::OutOfRange {
                name: "rate",
                value: r,
                expected: "a probability in [0, 1]",
            });
        }
    }

    let sqrt_gamma = DMatrix::from_diagonal(&DVector::from_iterator(
        n,
        rates.iter().map(|&r| Complex64::new(r.sqrt(), 0.0)),
    ));
    let damped = output_gram.entries().component_mul(probe_gram.entries());
    let m = input_gram.entries() - &sqrt_gamma * damped * &sqrt_gamma;
    let sym = (&m + m.adjoint()).unscale(2.0);
    Ok(sym.symmetric_eigen().eigenvalues.min() >= -PSD_TOL)
}

/// Upper bound on the average success rate (r₁+r₂)/2 of any feasible machine,
/// clamped to 1. Meaningful as a constraint only when η_in > η_out; when
/// η_in ≤ η_out the bound is the trivial 1.
pub fn average_rate_bound(spec: MachineSpec) -> Result<f64> {
    if spec.eta_out == 1.0 {
        return if spec.eta_in == 1.0 {
            Ok(1.0)
        } else {
            Err(Error::SingularBound { eta_in: spec.eta_in })
        };
    }
    Ok(((1.0 - spec.eta_in) / (1.0 - spec.eta_out)).min(1.0))
}
