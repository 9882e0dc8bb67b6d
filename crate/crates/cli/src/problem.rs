//! Problem-file schema.
//!
//! ```json
//! {
//!   "schema": "1",
//!   "mode": "certify",
//!   "p": 2,
//!   "q": 3,
//!   "equations": [["-1/(1 + x)"], ["-1/(1 + x + x^2)"]],
//!   "seed": { "start": 0, "values": ["1"] },
//!   "caps": { "terms": 512, "max_degree": 32 }
//! }
//! ```
//!
//! `equations[k]` lists `b_0, …, b_{m−1}` of
//! `f(x^{r^m}) + Σ b_i(x) f(x^{r^i}) = 0` with `r = p` for the first
//! equation and `r = q` for the second. Coefficients and seed values may be
//! strings in the expression grammar or plain integers.

use std::fmt;
use std::str::FromStr;

use mahlerkit::{Caps, MahlerEquation, RatFunc, RatMatrix, Rational, Seed};
use serde::Deserialize;

use crate::parse::{parse_ratfunc_expr, parse_rational};

pub const SCHEMA_VERSION: &str = "1";

/// Largest accepted radix, seed offset and term count; beyond these the
/// exact computations are hopeless anyway.
const MAX_RADIX: u64 = 1 << 16;
const MAX_START: i64 = 1 << 20;
const MAX_TERMS: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Solve,
    BuildSystem,
    CheckConsistency,
    Certify,
    Probe,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Solve => "solve",
            Mode::BuildSystem => "build-system",
            Mode::CheckConsistency => "check-consistency",
            Mode::Certify => "certify",
            Mode::Probe => "probe",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        [
            Mode::Solve,
            Mode::BuildSystem,
            Mode::CheckConsistency,
            Mode::Certify,
            Mode::Probe,
        ]
        .into_iter()
        .find(|m| m.as_str() == s)
        .ok_or_else(|| format!("unknown mode {s:?}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum Exact {
    Int(i64),
    Text(String),
}

impl Exact {
    fn text(&self) -> String {
        match self {
            Exact::Int(n) => n.to_string(),
            Exact::Text(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedInput {
    #[serde(default)]
    pub start: i64,
    pub values: Vec<Exact>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapsInput {
    #[serde(alias = "N_max")]
    pub terms: Option<usize>,
    #[serde(alias = "d_max")]
    pub max_degree: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemInput {
    #[serde(rename = "A")]
    pub a: Vec<Vec<Exact>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<Exact>>,
}

#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProbeInput {
    /// Chosen from the pole set when absent.
    pub r0: Option<f64>,
    pub j_max: Option<u32>,
    pub samples: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub schema: Option<String>,
    pub mode: Option<Mode>,
    pub p: u64,
    pub q: Option<u64>,
    pub equations: Vec<Vec<Exact>>,
    pub seed: Option<SeedInput>,
    #[serde(default)]
    pub caps: CapsInput,
    pub system: Option<SystemInput>,
    #[serde(default)]
    pub probe: ProbeInput,
    /// Free-form description, ignored.
    pub comment: Option<String>,
}

/// A malformed problem; always exit code 4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn input(msg: impl Into<String>) -> InputError {
    InputError(msg.into())
}

fn ratfunc(e: &Exact, what: &str) -> Result<RatFunc, InputError> {
    parse_ratfunc_expr(&e.text()).map_err(|err| input(format!("{what}: {err}")))
}

fn check_radix(r: u64, name: &str) -> Result<(), InputError> {
    if !(2..=MAX_RADIX).contains(&r) {
        return Err(input(format!(
            "{name} must lie in 2..={MAX_RADIX}, got {r}"
        )));
    }
    Ok(())
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self, InputError> {
        let pf: ProblemFile =
            serde_json::from_str(text).map_err(|e| input(format!("problem file: {e}")))?;
        if let Some(s) = &pf.schema {
            if s != SCHEMA_VERSION {
                return Err(input(format!("unsupported schema version {s:?}")));
            }
        }
        check_radix(pf.p, "p")?;
        if let Some(q) = pf.q {
            check_radix(q, "q")?;
        }
        if pf.equations.is_empty() || pf.equations.len() > 2 {
            return Err(input("equations must list one or two equations"));
        }
        Ok(pf)
    }

    pub fn equation(&self, k: usize) -> Result<MahlerEquation, InputError> {
        let radix = match k {
            0 => self.p,
            _ => self.q.ok_or_else(|| input("a second equation needs q"))?,
        };
        let list = self
            .equations
            .get(k)
            .ok_or_else(|| input(format!("equation {} is missing", k + 1)))?;
        let coeffs = list
            .iter()
            .enumerate()
            .map(|(i, c)| ratfunc(c, &format!("equation {} coefficient b_{i}", k + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        let eq = MahlerEquation::new(radix, coeffs)
            .map_err(|e| input(format!("equation {}: {e}", k + 1)))?;
        eq.radix_power(eq.order())
            .map_err(|e| input(format!("equation {}: {e}", k + 1)))?;
        Ok(eq)
    }

    /// Both equations, for the modes that pair them.
    pub fn pair(&self) -> Result<(MahlerEquation, MahlerEquation), InputError> {
        if self.equations.len() != 2 {
            return Err(input("this mode needs two equations"));
        }
        Ok((self.equation(0)?, self.equation(1)?))
    }

    pub fn seed(&self) -> Result<Seed, InputError> {
        let s = self
            .seed
            .as_ref()
            .ok_or_else(|| input("a seed is required"))?;
        if s.values.is_empty() {
            return Err(input("seed values must be nonempty"));
        }
        if s.start.abs() > MAX_START {
            return Err(input(format!(
                "seed start must satisfy |start| <= {MAX_START}"
            )));
        }
        let values = s
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                parse_rational(&v.text()).map_err(|e| input(format!("seed value {i}: {e}")))
            })
            .collect::<Result<Vec<Rational>, _>>()?;
        Ok(Seed::new(s.start, values))
    }

    /// File caps overridden by the command line, defaults elsewhere.
    pub fn caps(
        &self,
        terms: Option<usize>,
        max_degree: Option<usize>,
    ) -> Result<Caps, InputError> {
        let d = Caps::default();
        let caps = Caps {
            terms: terms.or(self.caps.terms).unwrap_or(d.terms),
            max_degree: max_degree.or(self.caps.max_degree).unwrap_or(d.max_degree),
        };
        if caps.terms == 0 || caps.terms > MAX_TERMS {
            return Err(input(format!("terms must lie in 1..={MAX_TERMS}")));
        }
        if caps.max_degree > MAX_TERMS {
            return Err(input(format!("max_degree must not exceed {MAX_TERMS}")));
        }
        Ok(caps)
    }

    pub fn system(&self) -> Result<Option<(RatMatrix, RatMatrix)>, InputError> {
        let Some(s) = &self.system else {
            return Ok(None);
        };
        let matrix = |rows: &[Vec<Exact>], name: &str| -> Result<RatMatrix, InputError> {
            let n = rows.len();
            if n == 0 || rows.iter().any(|r| r.len() != n) {
                return Err(input(format!(
                    "system {name} must be a nonempty square matrix"
                )));
            }
            let rows = rows
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    r.iter()
                        .enumerate()
                        .map(|(j, e)| ratfunc(e, &format!("{name}[{i}][{j}]")))
                        .collect()
                })
                .collect::<Result<Vec<Vec<RatFunc>>, _>>()?;
            Ok(RatMatrix::from_rows(rows))
        };
        let (a, b) = (matrix(&s.a, "A")?, matrix(&s.b, "B")?);
        if a.dim() != b.dim() {
            return Err(input("system A and B differ in size"));
        }
        Ok(Some((a, b)))
    }
}
