//! Machine-readable reports for the verification suites.
//!
//! Every report is plain data with a `status` of `"pass"` or `"fail"` and
//! contains nothing run-dependent (no timings, no host details), so the same
//! inputs always serialize to the same bytes.

use serde::{Deserialize, Serialize};

use crate::e3::{verify_commutation, verify_fin_identity, CommutationMode};
use crate::error::VerifyError;
use crate::poly::{Polynomial, Rational};
use crate::potentials::{
    closed_form, expand_uv, verify_closed_form, verify_distinctness, verify_distinctness_corrected, verify_pdes,
    verify_three_term, Params,
};
use crate::quantum::{canonical_basis, verify_c2_annihilates, verify_qu1, verify_qu6_qu8, verify_quantum_commutation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn of<T>(r: &Result<T, VerifyError>) -> Status {
        if r.is_ok() {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Status::Pass
    }
}

/// Offending orbit point of a points-mode run, with exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailedPoint {
    pub index: usize,
    #[serde(rename = "X")]
    pub x: [String; 3],
    #[serde(rename = "M")]
    pub m: [String; 3],
    pub a: [String; 3],
    pub value: String,
}

fn strings(v: &[Rational; 3]) -> [String; 3] {
    v.each_ref().map(|r| r.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassicalReport {
    pub n: u32,
    pub mode: CommutationMode,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_identity: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_terms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_point: Option<FailedPoint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// `verify_commutation` packaged as a report.
pub fn classical_report(n: u32, mode: CommutationMode, count: usize, seed: u64) -> ClassicalReport {
    let result = verify_commutation(n, mode, count, seed);
    let points = mode == CommutationMode::Points;
    let mut report = ClassicalReport {
        n,
        mode,
        status: Status::of(&result),
        count: points.then_some(count),
        seed: points.then_some(seed),
        failed_identity: None,
        residual_terms: None,
        residual: None,
        failed_point: None,
        error: None,
    };
    if let Err(e) = result {
        report.failed_identity = e.identity().map(str::to_owned);
        if let Some(r) = e.residual_polynomial() {
            report.residual_terms = Some(r.len());
            report.residual = Some(r.to_string());
        }
        if let VerifyError::Point {
            index,
            point,
            params,
            value,
            ..
        } = &e
        {
            report.failed_point = Some(FailedPoint {
                index: *index,
                x: strings(&point.x),
                m: strings(&point.m),
                a: strings(params),
                value: value.to_string(),
            });
        }
        report.error = Some(e.to_string());
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumReport {
    pub n: u32,
    pub max_degree: u32,
    pub basis_size: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_identity: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_monomial: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Commutation table, `C2` annihilation, the `L_i(U_n - a_i V_n)`
/// factorization (for `n >= 2`) and `[H_n, I_n] = 0`, all with symbolic `a`.
pub fn quantum_report(n: u32, max_degree: u32) -> QuantumReport {
    let result = (|| {
        if n == 0 {
            return Err(VerifyError::InvalidArgument("n must be at least 1".into()));
        }
        verify_qu1(max_degree.max(1))?;
        verify_c2_annihilates(max_degree)?;
        if n >= 2 {
            verify_qu6_qu8(n, &Params::Symbolic)?;
        }
        verify_quantum_commutation(n, max_degree, &Params::Symbolic)
    })();
    let mut report = QuantumReport {
        n,
        max_degree,
        basis_size: canonical_basis(max_degree).len(),
        status: Status::of(&result),
        failed_identity: None,
        failed_monomial: None,
        error: None,
    };
    if let Err(e) = result {
        report.failed_identity = e.identity().map(str::to_owned);
        if let VerifyError::Operator { monomial, .. } = &e {
            report.failed_monomial = Some(monomial.to_string());
        }
        report.error = Some(e.to_string());
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceReport {
    pub nmax: u32,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_identity: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Closed form vs. recurrence, the three-term relation and both
/// first-order identities, for `n <= nmax`.
pub fn recurrence_report(nmax: u32) -> RecurrenceReport {
    let result = verify_closed_form(nmax)
        .and_then(|_| verify_three_term(nmax.max(2)))
        .and_then(|_| verify_pdes(nmax));
    let mut report = RecurrenceReport {
        nmax,
        status: Status::of(&result),
        failed_identity: None,
        n: None,
        residual: None,
        error: None,
    };
    if let Err(e) = result {
        report.failed_identity = e.identity().map(str::to_owned);
        if let VerifyError::UvResidual { n, residual, .. } = &e {
            report.n = *n;
            report.residual = Some(residual.to_string());
        }
        report.error = Some(e.to_string());
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual_terms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

fn identity_check(identity: &str, result: Result<(), VerifyError>) -> IdentityCheck {
    let residual = result.as_ref().err().and_then(|e| e.residual_polynomial());
    IdentityCheck {
        identity: identity.into(),
        status: Status::of(&result),
        residual_terms: residual.map(Polynomial::len),
        residual: residual.map(|r| r.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WojciechowskiReport {
    pub k: u32,
    pub status: Status,
    pub note: String,
    pub checks: Vec<IdentityCheck>,
}

/// Distinctness from Wojciechowski's potentials at level `k` (2 or 3).
/// For `k = 3` the quoted quartic form is checked literally and the
/// corrected form is reported alongside; `status` follows the literal check.
pub fn wojciechowski_report(k: u32) -> Result<WojciechowskiReport, VerifyError> {
    if !(2..=3).contains(&k) {
        return Err(VerifyError::InvalidArgument(format!("k must be 2 or 3, got {k}")));
    }
    let mut checks = vec![identity_check(
        if k == 2 {
            "V_2 + I_2 = sum_cyc (a2 a3 - a1^2) X1^2 + sum a_i^2"
        } else {
            "V_3 + I_3 = sum_cyc (a1 - a2)(a1 - a3)(3 a1 + 2 a2 + 2 a3) X1^4 + ... (quoted form)"
        },
        verify_distinctness(k),
    )];
    let status = checks[0].status;
    if k == 3 {
        checks.push(identity_check(
            "V_3 + I_3 = sum_cyc (a1 - a2)(a1 - a3)(a1 + a2 + a3) X1^4 + ... (corrected form)",
            verify_distinctness_corrected(&Params::Symbolic),
        ));
    }
    Ok(WojciechowskiReport {
        k,
        status,
        note: "identities are compared modulo X1^2 + X2^2 + X3^2 - 1; without that reduction they do not hold".into(),
        checks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub nmax: u32,
    pub max_degree: u32,
    pub count: usize,
    pub seed: u64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed: Option<String>,
    pub checks: Vec<SuiteEntry>,
}

/// Options for the combined run.
#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub nmax: u32,
    pub max_degree: u32,
    pub count: usize,
    pub seed: u64,
}

/// Recurrence suite, classical commutation (symbolic then points) and the
/// quantum suite for every `n <= nmax`; stops at the first failure.
pub fn suite_report(opts: SuiteOptions, mut progress: impl FnMut(&SuiteEntry)) -> SuiteReport {
    let mut checks: Vec<SuiteEntry> = Vec::new();
    let mut push = |check: &str, n: Option<u32>, status: Status, error: Option<String>| {
        let entry = SuiteEntry {
            check: check.into(),
            n,
            status,
            error,
        };
        progress(&entry);
        checks.push(entry);
        status.passed()
    };
    let mut run = || -> Option<String> {
        let rec = recurrence_report(opts.nmax.max(2));
        if !push("recurrence", None, rec.status, rec.error) {
            return Some("recurrence".into());
        }
        let fin = verify_fin_identity(&Params::Symbolic);
        if !push(
            "{H_2, I_2} master identity",
            None,
            Status::of(&fin),
            fin.err().map(|e| e.to_string()),
        ) {
            return Some("{H_2, I_2} master identity".into());
        }
        for n in 1..=opts.nmax {
            for mode in [CommutationMode::Symbolic, CommutationMode::Points] {
                let r = classical_report(n, mode, opts.count, opts.seed);
                let name = match mode {
                    CommutationMode::Symbolic => "classical symbolic",
                    CommutationMode::Points => "classical points",
                };
                if !push(name, Some(n), r.status, r.error) {
                    return Some(format!("{name} (n = {n})"));
                }
            }
        }
        for n in 1..=opts.nmax {
            let r = quantum_report(n, opts.max_degree);
            if !push("quantum", Some(n), r.status, r.error) {
                return Some(format!("quantum (n = {n})"));
            }
        }
        None
    };
    let failed = run();
    SuiteReport {
        nmax: opts.nmax,
        max_degree: opts.max_degree,
        count: opts.count,
        seed: opts.seed,
        status: if failed.is_none() { Status::Pass } else { Status::Fail },
        failed,
        checks,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PotentialReport {
    pub n: u32,
    pub u_uv: String,
    pub v_uv: String,
    pub u: Polynomial,
    pub v: Polynomial,
}

/// `U_n`, `V_n` in `(U, V)` form and expanded with symbolic `a`.
pub fn potential_report(n: u32) -> Result<PotentialReport, VerifyError> {
    let pair = closed_form(n)?;
    Ok(PotentialReport {
        n,
        u_uv: pair.u.to_string(),
        v_uv: pair.v.to_string(),
        u: expand_uv(&pair.u, &Params::Symbolic),
        v: expand_uv(&pair.v, &Params::Symbolic),
    })
}

impl PotentialReport {
    pub fn to_text(&self) -> String {
        format!(
            "U_{n} = {}\nV_{n} = {}\nU_{n}(X) = {}\nV_{n}(X) = {}\n",
            self.u_uv,
            self.v_uv,
            self.u,
            self.v,
            n = self.n
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_pass_serializes_compactly() {
        let r = classical_report(1, CommutationMode::Symbolic, 0, 0);
        assert!(r.status.passed());
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, r#"{"n":1,"mode":"symbolic","status":"pass"}"#);
    }

    #[test]
    fn points_report_records_sampling() {
        let r = classical_report(2, CommutationMode::Points, 3, 5);
        assert!(r.status.passed());
        assert_eq!((r.count, r.seed), (Some(3), Some(5)));
    }

    #[test]
    fn quantum_report_fields() {
        let r = quantum_report(1, 2);
        assert!(r.status.passed());
        assert_eq!(r.basis_size, canonical_basis(2).len());
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["status"], "pass");
        assert!(v.get("failed_monomial").is_none());
        assert_eq!(quantum_report(0, 2).status, Status::Fail);
    }

    #[test]
    fn wojciechowski_k2_passes_and_k3_quoted_form_fails() {
        assert!(wojciechowski_report(2).unwrap().status.passed());
        let r3 = wojciechowski_report(3).unwrap();
        assert_eq!(r3.status, Status::Fail);
        assert_eq!(r3.checks[1].status, Status::Pass);
        assert!(r3.checks[0].residual_terms.unwrap() > 0);
        assert!(wojciechowski_report(4).is_err());
    }

    #[test]
    fn recurrence_and_potentials() {
        assert!(recurrence_report(6).status.passed());
        let p = potential_report(3).unwrap();
        assert_eq!(p.v_uv, "V^3 - 2*U*V");
        assert!(p.to_text().starts_with("U_3 = "));
        let back: PotentialReport = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
    }
}
