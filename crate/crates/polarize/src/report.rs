//! Machine- and human-readable run reports.
//!
//! The JSON schema is versioned through the top-level `schema_version`
//! field. Exit status is derivable from `success`; everything else is
//! deterministic given (scenario, prime, seed) apart from `elapsed_ms`.

use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub scenario: Option<String>,
    pub verdicts: Vec<VerdictRecord>,
    pub scalars: Vec<ScalarRecord>,
    pub refutations: Vec<RefutationRecord>,
    pub preperiodicity: Vec<PreperiodicRecord>,
    pub product_polarization: Option<ProductPolarization>,
    pub jacobian: Option<JacobianRecord>,
    pub seed: u64,
    pub elapsed_ms: u128,
    pub success: bool,
}

impl Report {
    pub fn new(scenario: Option<String>, seed: u64) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            scenario,
            verdicts: Vec::new(),
            scalars: Vec::new(),
            refutations: Vec::new(),
            preperiodicity: Vec::new(),
            product_polarization: None,
            jacobian: None,
            seed,
            elapsed_ms: 0,
            success: true,
        }
    }

    /// Recomputes the overall flag from the per-record ones.
    pub fn settle(&mut self) {
        let jac_ok = self.jacobian.as_ref().is_none_or(|j| j.ok());
        self.success = self.verdicts.iter().all(|v| v.matched)
            && self.scalars.iter().all(|s| s.matched)
            && self.refutations.iter().all(|r| r.consistent)
            && self.preperiodicity.iter().all(|p| p.matched)
            && jac_ok;
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let push = |out: &mut String, s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        push(
            &mut out,
            format!("polarize report (schema {})", self.schema_version),
        );
        if let Some(name) = &self.scenario {
            push(&mut out, format!("scenario: {name}"));
        }
        push(&mut out, format!("seed: {}", self.seed));
        if !self.verdicts.is_empty() {
            push(&mut out, "identities:".to_string());
            for v in &self.verdicts {
                push(
                    &mut out,
                    format!("  [{}] {}  ->  {}", pass(v.matched), v.identity, v.verdict),
                );
            }
        }
        if !self.scalars.is_empty() {
            push(&mut out, "polarization scalars:".to_string());
            for s in &self.scalars {
                let value = s.scalar.clone().unwrap_or_else(|| "absent".to_string());
                push(
                    &mut out,
                    format!(
                        "  [{}] [{}]*D ~ c D with c = {}",
                        pass(s.matched),
                        s.element,
                        value
                    ),
                );
            }
        }
        if let Some(p) = &self.product_polarization {
            push(
                &mut out,
                format!(
                    "  product on A x A: ([{}] x [{}])*(pi1*D + pi2*D) ~ ({}, {})",
                    p.left, p.right, p.scalars.0, p.scalars.1
                ),
            );
        }
        if !self.refutations.is_empty() {
            push(&mut out, "scalar-hypothesis certificates:".to_string());
            for r in &self.refutations {
                let sols = if r.solutions.is_empty() {
                    "no integer solution: hypothesis refuted".to_string()
                } else {
                    format!("solutions {{{}}}", r.solutions.join(", "))
                };
                push(
                    &mut out,
                    format!(
                        "  [{}] ({}, {}): s = {}, t = {}, {}; {}",
                        pass(r.consistent),
                        r.alpha,
                        r.beta,
                        r.sum_scalar,
                        r.product_scalar,
                        r.equation,
                        sols
                    ),
                );
            }
        }
        if !self.preperiodicity.is_empty() {
            push(&mut out, "diagonal preperiodicity:".to_string());
            for p in &self.preperiodicity {
                let what = if p.preperiodic {
                    "preperiodic (ratio is a root of unity)"
                } else {
                    "not preperiodic (ratio is not a root of unity)"
                };
                push(
                    &mut out,
                    format!(
                        "  [{}] ({}, {}): diagonal {}",
                        pass(p.matched),
                        p.phi1,
                        p.phi2,
                        what
                    ),
                );
            }
        }
        if let Some(j) = &self.jacobian {
            push(
                &mut out,
                format!("jacobian corroboration (p = {}, {}):", j.prime, j.curve),
            );
            push(
                &mut out,
                format!(
                    "  [{}] group order: enumerated {}, via point counts {}",
                    pass(j.orders.agree),
                    j.orders.enumerated,
                    j.orders.via_counts
                ),
            );
            push(
                &mut out,
                format!("  [{}] {}", pass(j.automorphism_ok), j.automorphism_check),
            );
            if let Some(ok) = j.endo_product_ok {
                push(
                    &mut out,
                    format!("  [{}] {}", pass(ok), j.endo_product_check),
                );
            }
            for k in &j.kernel_counts {
                push(
                    &mut out,
                    format!(
                        "  [{}] #ker[{}] among rational points = {} ({})",
                        pass(k.ok),
                        k.element,
                        k.count,
                        k.expectation
                    ),
                );
            }
            let s = &j.spot_checks;
            push(
                &mut out,
                format!(
                    "  [{}] homomorphism spot checks on {} sampled pairs",
                    pass(s.homomorphism_ok),
                    s.homomorphism_pairs
                ),
            );
            push(
                &mut out,
                format!(
                    "  [{}] ring-action spot checks on {} sampled points",
                    pass(s.ring_action_ok),
                    s.ring_action_samples
                ),
            );
            push(
                &mut out,
                format!(
                    "  [{}] group order annihilates {} sampled points",
                    pass(s.lagrange_ok),
                    s.lagrange_points
                ),
            );
            if let Some(orbit) = &s.orbit {
                push(
                    &mut out,
                    format!(
                        "  orbit of a sampled pair under ([{}], [{}]): tail {}, period {}",
                        orbit.phi1, orbit.phi2, orbit.tail, orbit.period
                    ),
                );
            }
        }
        push(
            &mut out,
            format!(
                "result: {} ({} ms)",
                if self.success { "PASS" } else { "FAIL" },
                self.elapsed_ms
            ),
        );
        out
    }
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictRecord {
    pub identity: String,
    /// "holds" | "holds_up_to_torsion" | "not_derivable"
    pub verdict: String,
    pub strict: bool,
    pub saturated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion_index: Option<u64>,
    pub expected: String,
    pub matched: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScalarRecord {
    pub element: String,
    /// Decimal string to keep unbounded integers exact; absent when no
    /// scalar is derivable.
    pub scalar: Option<String>,
    pub expected: Option<String>,
    pub matched: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RefutationRecord {
    pub alpha: String,
    pub beta: String,
    pub sum_scalar: String,
    pub product_scalar: String,
    pub equation: String,
    pub solutions: Vec<String>,
    pub refuted: bool,
    pub consistent: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PreperiodicRecord {
    pub phi1: String,
    pub phi2: String,
    pub preperiodic: bool,
    pub matched: bool,
}

/// Bookkeeping for the product polarization on `A × A`: with
/// `D = π₁*Θ + π₂*Θ`, the pair `(φ₁ × φ₂)` pulls `D` back to the common
/// scalar of the two factors.
#[derive(Clone, Debug, Serialize)]
pub struct ProductPolarization {
    pub left: String,
    pub right: String,
    pub scalars: (String, String),
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelCountRecord {
    pub element: String,
    pub count: u64,
    pub expectation: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitRecord {
    pub phi1: String,
    pub phi2: String,
    pub tail: u64,
    pub period: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpotChecks {
    pub homomorphism_pairs: u32,
    pub homomorphism_ok: bool,
    pub ring_action_samples: u32,
    pub ring_action_ok: bool,
    pub lagrange_points: u32,
    pub lagrange_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbit: Option<OrbitRecord>,
}

/// The two independent group-order computations and their agreement.
#[derive(Clone, Debug, Serialize)]
pub struct OrderAgreement {
    pub enumerated: u64,
    pub via_counts: u64,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobianRecord {
    pub prime: u64,
    pub curve: String,
    pub orders: OrderAgreement,
    pub automorphism_check: String,
    pub automorphism_ok: bool,
    pub endo_product_check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub endo_product_ok: Option<bool>,
    pub kernel_counts: Vec<KernelCountRecord>,
    pub spot_checks: SpotChecks,
}

impl JacobianRecord {
    pub fn ok(&self) -> bool {
        self.orders.agree
            && self.automorphism_ok
            && self.endo_product_ok.unwrap_or(true)
            && self.kernel_counts.iter().all(|k| k.ok)
            && self.spot_checks.homomorphism_ok
            && self.spot_checks.ring_action_ok
            && self.spot_checks.lagrange_ok
    }
}
