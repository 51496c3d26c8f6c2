//! Classification of a theory's scalars once the principles are audited.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{run_audit, AuditConfig, Status};
use crate::error::Result;
use crate::random;
use crate::scalars::{
    classify_involution, difference_ring_eq, difference_ring_lift, InvolutionClass, RingId,
    ScalarValue, Tolerance,
};
use crate::theories::TheoryKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconstructionFlags {
    pub square_roots: bool,
    pub bounded: bool,
    pub probabilistic: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReconstructionVerdict {
    pub theory: String,
    /// Ring of pure scalars, i.e. of the underlying dagger category.
    pub scalar_semiring: RingId,
    /// How the positive scalars sit inside their difference ring.
    pub difference_ring: String,
    pub involution: Option<InvolutionClass>,
    /// The theory the principles pin down, when they all hold.
    pub target: Option<String>,
    pub flags: ReconstructionFlags,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub caveat: Option<String>,
}

/// Checks that formal differences of positive scalars behave like the reals:
/// `(a, b) ≡ (a − b, 0)` or `(0, b − a)`, and distinct reals stay distinct.
fn difference_ring_is_real(cfg: &AuditConfig) -> Result<bool> {
    let mut rng = random::stream(cfg.seed, 0);
    let tol = Tolerance::new(cfg.tol);
    for _ in 0..cfg.samples.max(1) {
        let a: f64 = rng.random_range(0.0..4.0);
        let b: f64 = rng.random_range(0.0..4.0);
        let x = difference_ring_lift(ScalarValue::Real(a), ScalarValue::Real(b))?;
        let (p, n) = if a >= b { (a - b, 0.0) } else { (0.0, b - a) };
        let y = difference_ring_lift(ScalarValue::Real(p), ScalarValue::Real(n))?;
        let z = difference_ring_lift(ScalarValue::Real(p + 1.0), ScalarValue::Real(n))?;
        if !difference_ring_eq(&x, &y, &tol)? || difference_ring_eq(&x, &z, &tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn reconstruct_classify(cfg: &AuditConfig) -> Result<ReconstructionVerdict> {
    let kind = cfg.validate()?;
    let report = run_audit(cfg)?;
    let failing: Vec<&str> = report
        .principles
        .iter()
        .filter(|p| p.status != Status::Pass)
        .map(|p| p.principle.as_str())
        .collect();
    let caveat = (!failing.is_empty()).then(|| {
        format!(
            "the reconstruction hypotheses do not hold: {} failed",
            failing.join(", ")
        )
    });

    // Positive scalars, not the pure ones, decide whether weights add up like probabilities.
    let zero_sum_free = report
        .principles
        .iter()
        .flat_map(|p| &p.checks)
        .any(|c| c.name == "zero-sum-free" && c.passed);
    let ring = kind.ring();
    let real = RingId::Real64.flags();
    let (involution, difference_ring, target, flags) = if kind.is_quantum() {
        let class = classify_involution(ring)?;
        let d = if difference_ring_is_real(cfg)? {
            "D(R) = real64".to_string()
        } else {
            "D(R) not identified with real64".to_string()
        };
        let target = match class {
            InvolutionClass::HasImaginaryUnit => "Quant over D(R)[i]",
            InvolutionClass::TrivialInvolution => "Quant over D(R)",
        };
        let flags = ReconstructionFlags {
            square_roots: real.has_square_roots,
            bounded: real.bounded,
            probabilistic: zero_sum_free,
        };
        (Some(class), d, caveat.is_none().then(|| target.to_string()), flags)
    } else {
        let f = ring.flags();
        let d = match kind {
            TheoryKind::Rel => "D(R) collapses: 1 + 1 = 1 identifies every pair",
            _ => "D(R) = rational",
        };
        let flags = ReconstructionFlags {
            square_roots: f.has_square_roots,
            bounded: f.bounded,
            probabilistic: zero_sum_free,
        };
        (None, d.to_string(), None, flags)
    };

    Ok(ReconstructionVerdict {
        theory: kind.as_str().to_string(),
        scalar_semiring: ring,
        difference_ring,
        involution,
        target,
        flags,
        caveat,
    })
}
