//! JSON request handling behind the `chernloci` binary.
//!
//! Every command takes one JSON object and produces one JSON value. Output
//! structs are serialized field by field, so formula output is in a fixed
//! byte layout and re-serializing a parsed formula reproduces it exactly.

use std::fmt;

use chernloci::formulas::{canonical_terms, locus_class, locus_class_deformed};
use chernloci::harness::{run_suite, Bounds, CheckReport, Suite};
use chernloci::specialize::{h_series, q_series, specialize_labels, ChernAssignment, EntryClasses};
use chernloci::symbolic::{Monomial, SymPoly, Symbol, SymbolKind};
use chernloci::triples::{build, signed_perm_length, signed_permutation_c, Family, NormalizedTriple, TripleInput};
use chernloci::Error;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Largest integer a double represents exactly.
const SAFE_INT: i64 = (1 << 53) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Triple,
    Formula,
    Perm,
    Specialize,
    Verify,
}

/// A command with its payload, as accepted by `chernloci run`.
#[derive(Clone, Debug, PartialEq, Deserialize)]
pub struct CommandRequest {
    pub command: Command,
    #[serde(default = "empty_object")]
    pub payload: Value,
}

fn empty_object() -> Value {
    Value::Object(Default::default())
}

#[derive(Debug)]
pub enum CliError {
    /// Bad input: malformed JSON, schema mismatch or an invalid triple.
    Validation(String),
    /// A computation failed on valid input.
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "validation error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Triple(t) => CliError::Validation(t.to_string()),
            Error::Unsupported(_) | Error::Hypothesis(_) | Error::InfeasibleRootModel(_) => {
                CliError::Validation(e.to_string())
            }
            other => CliError::Internal(other.to_string()),
        }
    }
}

fn parse<T: for<'de> Deserialize<'de>>(v: Value) -> Result<T, CliError> {
    serde_json::from_value(v).map_err(|e| CliError::Validation(e.to_string()))
}

/// Triple payload; type A takes `r` where the others take `k`.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct TripleRequest {
    pub family: Family,
    #[serde(default)]
    pub k: Option<Vec<i64>>,
    #[serde(default)]
    pub r: Option<Vec<i64>>,
    pub p: Vec<i64>,
    pub q: Vec<i64>,
    #[serde(default)]
    pub d_parity: Option<u8>,
}

impl TripleRequest {
    fn build(self) -> Result<NormalizedTriple, CliError> {
        let first = match (self.family, self.k, self.r) {
            (Family::A, None, Some(r)) => r,
            (Family::A, _, _) => return Err(CliError::Validation("type A triples take \"r\", not \"k\"".into())),
            (_, Some(k), None) => k,
            (_, _, _) => return Err(CliError::Validation("triples of type B, C, D take \"k\", not \"r\"".into())),
        };
        let mut input = TripleInput::new(self.family, first, self.p, self.q);
        input.d_parity = self.d_parity;
        build(&input).map_err(|e| CliError::Validation(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
struct FormulaRequest {
    #[serde(flatten)]
    triple: TripleRequest,
    #[serde(default)]
    deformed: bool,
}

/// An integer coefficient; outside the exactly representable range of a
/// double it is a decimal string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Big(String),
}

impl Coeff {
    pub fn from_bigint(c: &BigInt) -> Self {
        match c.to_i64() {
            Some(v) if v.abs() <= SAFE_INT => Coeff::Int(v),
            _ => Coeff::Big(c.to_string()),
        }
    }

    pub fn to_bigint(&self) -> Result<BigInt, CliError> {
        match self {
            Coeff::Int(v) => Ok(BigInt::from(*v)),
            Coeff::Big(s) => s.parse().map_err(|_| CliError::Validation(format!("bad coefficient {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorJson {
    pub kind: String,
    pub label: u32,
    pub deg: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: Coeff,
    /// A factor with exponent `e` is listed `e` times.
    pub factors: Vec<FactorJson>,
}

/// A class `(Σ terms) / 2^two_power`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaJson {
    pub two_power: u32,
    pub terms: Vec<TermJson>,
}

impl FormulaJson {
    pub fn from_poly(poly: &SymPoly, two_power: u32) -> Self {
        let terms = canonical_terms(poly)
            .into_iter()
            .map(|(c, factors)| TermJson {
                coeff: Coeff::from_bigint(&c),
                factors: factors
                    .into_iter()
                    .flat_map(|(s, e)| std::iter::repeat_n(factor_json(&s), e as usize))
                    .collect(),
            })
            .collect();
        FormulaJson { two_power, terms }
    }

    pub fn to_poly(&self) -> Result<SymPoly, CliError> {
        let mut out = SymPoly::zero();
        for t in &self.terms {
            let symbols = t.factors.iter().map(parse_factor).collect::<Result<Vec<_>, _>>()?;
            let m = Monomial::from_factors(symbols.into_iter().map(|s| (s, 1)));
            out.add_term(m, t.coeff.to_bigint()?);
        }
        Ok(out)
    }
}

fn factor_json(s: &Symbol) -> FactorJson {
    let kind = match s.kind {
        SymbolKind::C => "c".to_string(),
        SymbolKind::D => "d".to_string(),
        SymbolKind::E => "e".to_string(),
        SymbolKind::Z => "z".to_string(),
        SymbolKind::Root(ch) => ch.to_string(),
    };
    FactorJson { kind, label: s.label, deg: s.degree }
}

fn parse_factor(f: &FactorJson) -> Result<Symbol, CliError> {
    let bad = || CliError::Validation(format!("bad factor {f:?}"));
    let kind = match f.kind.as_str() {
        "c" => SymbolKind::C,
        "d" => SymbolKind::D,
        "e" => SymbolKind::E,
        "z" => SymbolKind::Z,
        other => {
            let mut chars = other.chars();
            match (chars.next(), chars.next()) {
                (Some(ch), None) if ch.is_ascii_alphabetic() => SymbolKind::Root(ch),
                _ => return Err(bad()),
            }
        }
    };
    // roots and z are degree one; a degree-zero c/d/e is an honest symbol
    if matches!(kind, SymbolKind::Z | SymbolKind::Root(_)) && f.deg != 1 {
        return Err(bad());
    }
    Ok(Symbol { kind, label: f.label, degree: f.deg })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
enum SeriesKind {
    H,
    Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
struct SpecializeRequest {
    two_power: u32,
    terms: Vec<TermJson>,
    vars: u32,
    series: SeriesKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermJson {
    pub word: Vec<i64>,
    pub length: u64,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
struct VerifyRequest {
    #[serde(default = "default_suite")]
    suite: String,
    #[serde(default)]
    bounds: Bounds,
}

fn default_suite() -> String {
    "all".into()
}

/// The result of one command.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Response {
    Triple(Box<NormalizedTriple>),
    Formula(FormulaJson),
    Perm(PermJson),
    Verify(Vec<CheckReport>),
}

impl Response {
    /// 0, or 2 when a verification check failed.
    pub fn exit_code(&self) -> i32 {
        match self {
            Response::Verify(reports) if reports.iter().any(|r| !r.passed) => 2,
            _ => 0,
        }
    }

    pub fn to_json(&self, pretty: bool) -> String {
        let s = if pretty { serde_json::to_string_pretty(self) } else { serde_json::to_string(self) };
        s.expect("responses serialize")
    }
}

pub fn run(request: CommandRequest) -> Result<Response, CliError> {
    match request.command {
        Command::Triple => Ok(Response::Triple(Box::new(parse::<TripleRequest>(request.payload)?.build()?))),
        Command::Formula => {
            let req: FormulaRequest = parse(request.payload)?;
            let t = req.triple.build()?;
            let f = if req.deformed { locus_class_deformed(&t)? } else { locus_class(&t)? };
            Ok(Response::Formula(FormulaJson::from_poly(&f.poly, f.two_power)))
        }
        Command::Perm => {
            let t = parse::<TripleRequest>(request.payload)?.build()?;
            let w = signed_permutation_c(&t)?;
            let length = signed_perm_length(&w);
            Ok(Response::Perm(PermJson { word: w.word, length }))
        }
        Command::Specialize => {
            let req: SpecializeRequest = parse(request.payload)?;
            let formula = FormulaJson { two_power: req.two_power, terms: req.terms };
            Ok(Response::Formula(specialize_formula(&formula, req.vars, req.series)?))
        }
        Command::Verify => {
            let req: VerifyRequest = parse(request.payload)?;
            let suite: Suite = req.suite.parse().map_err(CliError::Validation)?;
            Ok(Response::Verify(run_suite(suite, &req.bounds)?))
        }
    }
}

/// Every `c(k)` and `d(k)` becomes the same series in `x_1..x_vars`; `e` and
/// `z` stay symbolic.
fn specialize_formula(formula: &FormulaJson, vars: u32, series: SeriesKind) -> Result<FormulaJson, CliError> {
    let poly = formula.to_poly()?;
    let symbols = poly.symbols();
    let order = symbols.iter().filter(|s| s.is_chern()).map(|s| s.degree as usize).max().unwrap_or(0);
    let labels = symbols.iter().filter(|s| s.is_chern()).map(|s| s.label as usize).max().unwrap_or(0);
    let s = match series {
        SeriesKind::H => h_series(vars, order)?,
        SeriesKind::Q => q_series(vars, order)?,
    };
    let has_d = symbols.iter().any(|s| matches!(s.kind, SymbolKind::D | SymbolKind::E));
    let classes = if has_d { EntryClasses::Split(s) } else { EntryClasses::Chern(s) };
    let assign = ChernAssignment::uniform(labels, classes)?;
    let clabel: Vec<usize> = (1..=labels).collect();
    let value = specialize_labels(&poly, &clabel, &assign).map_err(|e| match e {
        Error::KindMismatch(m) => CliError::Validation(format!("mixed c and d symbols: {m}")),
        other => other.into(),
    })?;
    Ok(FormulaJson::from_poly(&value, formula.two_power))
}
