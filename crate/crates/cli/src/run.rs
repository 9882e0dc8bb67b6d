//! Mode dispatch, exit codes and output documents.
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success or certificate |
//! | 2 | honest failure: caps exhausted, no solution within precision, inconsistent system, bound violated |
//! | 3 | `hypothesis_violated` or `seed_inconsistent` |
//! | 4 | input error |

use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use mahlerkit::probe::growth_check_with;
use mahlerkit::probe::BaseEvaluator;
use mahlerkit::sysbuild::consistent;
use mahlerkit::{
    apply_operator, auto_r0, build_system, certify_rational, check_consistency, normalize_equation,
    radius_estimate, rat, solve_series, CertifyError, FailureReason, LaurentTrunc, MahlerEquation,
    MahlerError, MahlerSystem, ProbeError, RadiusEstimate, RatFunc, RatMatrix,
    RationalityCertificate, Seed, SysError,
};
use serde_json::{json, Value};

use crate::parse::format_rational;
use crate::problem::{InputError, Mode, ProblemFile, SCHEMA_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 2;
pub const EXIT_REFUSED: i32 = 3;
pub const EXIT_INPUT: i32 = 4;

/// Command-line overrides.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub terms: Option<usize>,
    pub max_degree: Option<usize>,
    pub deterministic: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub document: Value,
}

/// Why a run did not succeed.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Failure {
    code: i32,
    reason: String,
    details: String,
}

impl Failure {
    fn new(code: i32, reason: &str, details: impl Into<String>) -> Self {
        Self {
            code,
            reason: reason.into(),
            details: details.into(),
        }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::new(EXIT_INPUT, "input_error", e.0)
    }
}

fn mahler_failure(e: MahlerError) -> Failure {
    match e {
        MahlerError::Inconsistent { .. } | MahlerError::ZeroOnly => Failure::new(
            EXIT_REFUSED,
            FailureReason::SeedInconsistent.as_str(),
            e.to_string(),
        ),
        _ => Failure::new(EXIT_INPUT, "input_error", e.to_string()),
    }
}

fn certify_failure(e: CertifyError) -> Failure {
    match e {
        CertifyError::Failure(f) => {
            let code = match f.reason {
                FailureReason::HypothesisViolated | FailureReason::SeedInconsistent => EXIT_REFUSED,
                FailureReason::CapsExhausted => EXIT_FAILURE,
            };
            Failure::new(code, f.reason.as_str(), f.details)
        }
        CertifyError::Input(e) => Failure::new(EXIT_INPUT, "input_error", e.to_string()),
    }
}

fn sys_failure(e: SysError) -> Failure {
    match e {
        SysError::Mahler(e) => mahler_failure(e),
        SysError::PrecisionDeficit { .. } => {
            Failure::new(EXIT_FAILURE, "precision_deficit", e.to_string())
        }
        SysError::ZeroSolution => Failure::new(EXIT_INPUT, "input_error", e.to_string()),
        SysError::VerificationFailed(_) => {
            Failure::new(EXIT_FAILURE, "verification_failed", e.to_string())
        }
    }
}

fn probe_failure(e: ProbeError) -> Failure {
    let reason = match e {
        ProbeError::InvalidR0(_) | ProbeError::BelowBase { .. } => {
            return Failure::new(EXIT_INPUT, "input_error", e.to_string())
        }
        ProbeError::TooFewCoefficients { .. } => "too_few_coefficients",
        ProbeError::PoleProximity { .. } => "pole_proximity",
        ProbeError::InsufficientBasePrecision(_) => "insufficient_base_precision",
    };
    Failure::new(EXIT_FAILURE, reason, e.to_string())
}

fn ratfunc_json(r: &RatFunc) -> Value {
    json!({
        "text": r.to_string(),
        "numerator": r.num().coeffs().iter().map(format_rational).collect::<Vec<_>>(),
        "denominator": r.den().coeffs().iter().map(format_rational).collect::<Vec<_>>(),
    })
}

fn matrix_json(m: &RatMatrix) -> Value {
    m.rows()
        .map(|row| {
            row.iter()
                .map(|e| Value::String(e.to_string()))
                .collect::<Value>()
        })
        .collect()
}

fn series_json(f: &LaurentTrunc, from: i64) -> Value {
    let to = f.order();
    json!({
        "start": from,
        "order": to,
        "coefficients": (from..to)
            .map(|k| format_rational(&f.coeff(k).unwrap_or_else(|| rat(0))))
            .collect::<Vec<_>>(),
    })
}

fn equation_json(eq: &MahlerEquation) -> Value {
    json!({
        "radix": eq.radix(),
        "text": eq.to_string(),
        "coefficients": eq.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

/// Series of `eq` from the seed: solved under the first normalized form,
/// checked against the others.
fn solve_normalized(eq: &MahlerEquation, seed: &Seed, order: i64) -> Result<LaurentTrunc, Failure> {
    let forms = match normalize_equation(eq) {
        Ok(v) => v,
        Err(MahlerError::ZeroOnly) if seed.is_zero() => {
            return Ok(LaurentTrunc::new(
                seed.start,
                vec![rat(0); (order - seed.start).max(0) as usize],
            ))
        }
        Err(e) => return Err(mahler_failure(e)),
    };
    let f = solve_series(&forms[0], &seed.values, seed.start, order).map_err(mahler_failure)?;
    for other in &forms[1..] {
        let res = apply_operator(other, &f).map_err(mahler_failure)?;
        if let Some(k) = res.true_valuation() {
            return Err(Failure::new(
                EXIT_REFUSED,
                FailureReason::SeedInconsistent.as_str(),
                format!("residual of {other} is nonzero at x^{k}"),
            ));
        }
    }
    Ok(f)
}

/// The unique normalized form of an equation, for modes that need one.
fn single_form(eq: &MahlerEquation) -> Result<MahlerEquation, Failure> {
    match normalize_equation(eq) {
        Ok(mut v) => Ok(v.swap_remove(0)),
        Err(e) => Err(mahler_failure(e)),
    }
}

fn solve(pf: &ProblemFile, opts: &Options) -> Result<Value, Failure> {
    let seed = pf.seed()?;
    let caps = pf.caps(opts.terms, opts.max_degree)?;
    let order = seed.start + caps.terms as i64;
    let mut out = Vec::new();
    for k in 0..pf.equations.len() {
        let eq = pf.equation(k)?;
        let f = solve_normalized(&eq, &seed, order)?;
        out.push(json!({
            "equation": equation_json(&eq),
            "series": series_json(&f, seed.start),
        }));
    }
    Ok(json!({ "terms": caps.terms, "solutions": out }))
}

fn system_json(sys: &MahlerSystem) -> Value {
    json!({
        "p": sys.p,
        "q": sys.q,
        "dimension": sys.dim(),
        "basis": sys.basis_tags.iter().map(|&(m, r)| json!({"sigma1": m, "sigma2": r})).collect::<Vec<_>>(),
        "A": matrix_json(&sys.a),
        "B": matrix_json(&sys.b),
        "det_A": sys.a.det().to_string(),
        "det_B": sys.b.det().to_string(),
    })
}

fn built_system(pf: &ProblemFile, opts: &Options) -> Result<MahlerSystem, Failure> {
    let (e1, e2) = pf.pair()?;
    let seed = pf.seed()?;
    let caps = pf.caps(opts.terms, opts.max_degree)?;
    let (e1, e2) = (single_form(&e1)?, single_form(&e2)?);
    build_system(&e1, &e2, &seed, caps).map_err(sys_failure)
}

fn build(pf: &ProblemFile, opts: &Options) -> Result<Value, Failure> {
    let sys = built_system(pf, opts)?;
    let mut doc = system_json(&sys);
    doc["consistent"] = json!(check_consistency(&sys));
    Ok(doc)
}

/// Checks a supplied system, or builds one when none is given.
fn check(pf: &ProblemFile, opts: &Options) -> Result<Value, Failure> {
    let (p, q, a, b, source) = match pf.system()? {
        Some((a, b)) => {
            let q =
                pf.q.ok_or_else(|| InputError("check-consistency needs q".into()))?;
            (pf.p, q, a, b, "supplied")
        }
        None => {
            let sys = built_system(pf, opts)?;
            (sys.p, sys.q, sys.a, sys.b, "built")
        }
    };
    let ok = consistent(p, q, &a, &b);
    let doc = json!({
        "p": p,
        "q": q,
        "system": source,
        "dimension": a.dim(),
        "consistent": ok,
        "det_A": a.det().to_string(),
        "det_B": b.det().to_string(),
    });
    if !ok {
        return Err(Failure::new(
            EXIT_FAILURE,
            "inconsistent_system",
            format!("A(x^{q}) B(x) != B(x^{p}) A(x)"),
        ));
    }
    Ok(doc)
}

fn certificate_json(c: &RationalityCertificate) -> Value {
    json!({
        "value": ratfunc_json(&c.value),
        "equations": [equation_json(&c.eq1), equation_json(&c.eq2)],
        "verified": [c.verified.0, c.verified.1],
        "terms_used": c.terms_used,
        "degree_bounds": [c.degree_bounds.0, c.degree_bounds.1],
        "prefix_matched": c.prefix_matched,
    })
}

fn certify(pf: &ProblemFile, opts: &Options) -> Result<Value, Failure> {
    let (e1, e2) = pf.pair()?;
    let seed = pf.seed()?;
    let caps = pf.caps(opts.terms, opts.max_degree)?;
    let cert = certify_rational(&e1, &e2, &seed, caps).map_err(certify_failure)?;
    Ok(certificate_json(&cert))
}

fn probe(pf: &ProblemFile, opts: &Options) -> Result<Value, Failure> {
    let eq = single_form(&pf.equation(0)?)?;
    let seed = pf.seed()?;
    let caps = pf.caps(opts.terms, opts.max_degree)?;
    let f = solve_normalized(&eq, &seed, seed.start + caps.terms as i64)?;
    let radius = match radius_estimate(&f).map_err(probe_failure)? {
        RadiusEstimate::Finite(r) => json!(r),
        RadiusEstimate::NoFiniteSingularity => json!("no finite singularity detected"),
    };
    let base = BaseEvaluator::from_series(&f);
    let r0 = match pf.probe.r0 {
        Some(r) if !(r.is_finite() && r > 1.0) => {
            return Err(Failure::new(
                EXIT_INPUT,
                "input_error",
                format!("r0 must exceed 1, got {r}"),
            ))
        }
        Some(r) => r,
        None => auto_r0(&eq, base.rational()),
    };
    let j_max = pf.probe.j_max.unwrap_or(3);
    let samples = pf.probe.samples.unwrap_or(32);
    if j_max > 16 || samples == 0 || samples > 1 << 16 {
        return Err(Failure::new(
            EXIT_INPUT,
            "input_error",
            "probe needs j_max <= 16 and 1 <= samples <= 65536",
        ));
    }
    let report = growth_check_with(&eq, &base, r0, j_max, samples).map_err(probe_failure)?;
    let worst = report
        .samples
        .iter()
        .map(|s| s.ln_abs_g - s.ln_bound)
        .fold(f64::NEG_INFINITY, f64::max);
    let doc = json!({
        "radius_estimate": radius,
        "base": match base.rational() {
            Some(r) => json!({ "kind": "rational", "value": r.to_string() }),
            None => json!({ "kind": "series" }),
        },
        "r0": report.r0,
        "p": report.p,
        "j_max": j_max,
        "samples_per_annulus": samples,
        "K": report.k,
        "M": report.m,
        "L": report.l,
        "d": report.d,
        "ln_K": report.ln_k,
        "ln_L": report.ln_l,
        "rejected": report.rejected,
        "worst_ln_margin": worst,
        "all_within_bound": report.all_within_bound,
        "samples": report.samples.iter().map(|s| json!({
            "annulus": s.annulus,
            "ln_abs_x": s.x.ln_abs,
            "arg_x": s.x.arg,
            "ln_abs_g": s.ln_abs_g,
            "ln_bound": s.ln_bound,
        })).collect::<Vec<_>>(),
    });
    if !report.all_within_bound {
        return Err(Failure::new(
            EXIT_FAILURE,
            "bound_violated",
            format!("a sample exceeds the growth bound by a factor exp({worst:.3})"),
        ));
    }
    Ok(doc)
}

fn document(mode: &str, result: Result<Value, Failure>) -> Outcome {
    let mut doc = json!({ "schema": SCHEMA_VERSION, "mode": mode });
    let code = match result {
        Ok(v) => {
            doc["status"] = json!("success");
            doc["result"] = v;
            EXIT_OK
        }
        Err(f) => {
            doc["status"] = json!(if f.code == EXIT_INPUT {
                "input_error"
            } else {
                "failure"
            });
            doc["failure"] = json!({ "reason": f.reason, "details": f.details });
            f.code
        }
    };
    doc["exit_code"] = json!(code);
    Outcome {
        exit_code: code,
        document: doc,
    }
}

/// Runs a parsed problem. A mode named in the file must agree with `mode`.
pub fn run_problem(mode: Mode, pf: &ProblemFile, opts: &Options) -> Outcome {
    if let Some(m) = pf.mode {
        if m != mode {
            return document(
                mode.as_str(),
                Err(Failure::new(
                    EXIT_INPUT,
                    "input_error",
                    format!("problem file is for mode {m}, run as {mode}"),
                )),
            );
        }
    }
    let result = match mode {
        Mode::Solve => solve(pf, opts),
        Mode::BuildSystem => build(pf, opts),
        Mode::CheckConsistency => check(pf, opts),
        Mode::Certify => certify(pf, opts),
        Mode::Probe => probe(pf, opts),
    };
    document(mode.as_str(), result)
}

/// Parses and runs problem-file text.
pub fn run_text(mode: Mode, text: &str, opts: &Options) -> Outcome {
    match ProblemFile::from_json(text) {
        Ok(pf) => run_problem(mode, &pf, opts),
        Err(e) => document(mode.as_str(), Err(e.into())),
    }
}

/// Reads and runs one problem file, stamping the document unless
/// `opts.deterministic`.
pub fn run_file(mode: Mode, path: &Path, opts: &Options) -> Outcome {
    let mut out = match std::fs::read_to_string(path) {
        Ok(text) => run_text(mode, &text, opts),
        Err(e) => document(
            mode.as_str(),
            Err(Failure::new(
                EXIT_INPUT,
                "input_error",
                format!("{}: {e}", path.display()),
            )),
        ),
    };
    if !opts.deterministic {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        out.document["timestamp"] = json!(secs);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(mode: Mode, text: &str) -> Outcome {
        run_text(mode, text, &Options::default())
    }

    const PAIR: &str = r#"{"p": 2, "q": 3,
        "equations": [["-1/(1 + x)"], ["-1/(1 + x + x^2)"]],
        "seed": {"values": ["1"]}}"#;

    #[test]
    fn certifies_geometric_series() {
        let o = run(Mode::Certify, PAIR);
        assert_eq!(o.exit_code, 0, "{}", o.document);
        assert_eq!(o.document["result"]["value"]["text"], "1/(1 - x)");
    }

    #[test]
    fn builds_and_checks_a_system() {
        let o = run(Mode::BuildSystem, PAIR);
        assert_eq!(o.exit_code, 0, "{}", o.document);
        assert_eq!(o.document["result"]["consistent"], true);
        assert_eq!(run(Mode::CheckConsistency, PAIR).exit_code, 0);
        let bad = r#"{"p": 2, "q": 3, "equations": [["1"]],
            "system": {"A": [["x"]], "B": [["1 + x"]]}}"#;
        let o = run(Mode::CheckConsistency, bad);
        assert_eq!(o.exit_code, 2);
        assert_eq!(o.document["failure"]["reason"], "inconsistent_system");
        let good = r#"{"p": 2, "q": 3, "equations": [["1"]],
            "system": {"A": [["1/(1 + x)"]], "B": [["1/(1 + x + x^2)"]]}}"#;
        assert_eq!(run(Mode::CheckConsistency, good).exit_code, 0);
    }

    #[test]
    fn solve_reports_thue_morse() {
        let tm = r#"{"p": 2, "equations": [["-1/(1 - x)"]], "seed": {"values": [1]}, "caps": {"terms": 8}}"#;
        let o = run(Mode::Solve, tm);
        assert_eq!(o.exit_code, 0, "{}", o.document);
        assert_eq!(
            o.document["result"]["solutions"][0]["series"]["coefficients"],
            json!(["1", "-1", "-1", "1", "-1", "1", "1", "-1"])
        );
    }

    #[test]
    fn exit_codes() {
        let dependent = PAIR.replace("\"q\": 3", "\"q\": 4");
        let o = run(Mode::Certify, &dependent);
        assert_eq!(o.exit_code, 3);
        assert_eq!(o.document["failure"]["reason"], "hypothesis_violated");
        // file mode disagrees with the command line
        let tagged = PAIR.replacen('{', r#"{"mode": "probe", "#, 1);
        assert_eq!(run(Mode::Certify, &tagged).exit_code, 4);
        assert_eq!(run(Mode::Certify, "{").exit_code, 4);
        // a second equation but no q
        assert_eq!(
            run(Mode::Certify, &PAIR.replace("\"q\": 3,", "")).exit_code,
            4
        );
        let caps = PAIR.replacen('{', r#"{"caps": {"terms": 64, "max_degree": 0}, "#, 1);
        let o = run(Mode::Certify, &caps);
        assert_eq!(o.exit_code, 2);
        assert_eq!(o.document["failure"]["reason"], "caps_exhausted");
    }

    #[test]
    fn probe_geometric_series() {
        let o = run(
            Mode::Probe,
            &PAIR.replacen('{', r#"{"probe": {"r0": 4}, "#, 1),
        );
        assert_eq!(o.exit_code, 0, "{}", o.document);
        assert_eq!(o.document["result"]["all_within_bound"], true);
        assert_eq!(o.document["result"]["base"]["value"], "1/(1 - x)");
        let o = run(
            Mode::Probe,
            &PAIR.replacen('{', r#"{"probe": {"r0": 0.5}, "#, 1),
        );
        assert_eq!(o.exit_code, 4);
    }
}
