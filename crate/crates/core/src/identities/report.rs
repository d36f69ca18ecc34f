use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::lemmas::{self, LemmaId};
use super::log_sums::{cor9_function, cor9_rhs, th3_lhs, th3_rhs, MobiusPower};
use super::{
    classic_mertens_floor, combinatoric_rhs, ordered_lhs, th15_lhs, th15_rhs, th1_lhs, th1_rhs,
    th2_lhs, th2_rhs,
};
use crate::algebra::{format_rational, parse_rational, PrimeLogCombo};
use crate::arith::{named, SieveTable};
use crate::error::{Error, Result};
use crate::{Int, LogCombo, Rational};

/// One side of an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Int(Int),
    Rational(Rational),
    Combo(LogCombo),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(v) => write!(f, "{v}"),
            Value::Rational(v) => f.write_str(&format_rational(v)),
            Value::Combo(c) => {
                if c.is_zero() {
                    return f.write_str("0");
                }
                let parts: Vec<String> = c
                    .terms()
                    .map(|(p, v)| format!("{p}:{}", format_rational(v)))
                    .collect();
                f.write_str(&parts.join(";"))
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
enum ValueRepr {
    Int(String),
    Rational(String),
    Combo(BTreeMap<u64, String>),
}

impl Serialize for Value {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let repr = match self {
            Value::Int(v) => ValueRepr::Int(v.to_string()),
            Value::Rational(v) => ValueRepr::Rational(format_rational(v)),
            Value::Combo(c) => {
                ValueRepr::Combo(c.terms().map(|(p, v)| (p, format_rational(v))).collect())
            }
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        Ok(match ValueRepr::deserialize(d)? {
            ValueRepr::Int(s) => Value::Int(s.parse().map_err(D::Error::custom)?),
            ValueRepr::Rational(s) => {
                Value::Rational(parse_rational(&s).map_err(D::Error::custom)?)
            }
            ValueRepr::Combo(m) => {
                let mut terms = Vec::with_capacity(m.len());
                for (p, v) in m {
                    terms.push((p, parse_rational(&v).map_err(D::Error::custom)?));
                }
                Value::Combo(PrimeLogCombo::from_terms(terms))
            }
        })
    }
}

/// Outcome of evaluating both sides of one identity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    #[serde(rename = "identity")]
    pub identity_id: String,
    pub params: BTreeMap<String, String>,
    pub lhs: Value,
    pub rhs: Value,
    pub equal: bool,
    pub lhs_ms: f64,
    pub rhs_ms: f64,
}

impl IdentityReport {
    fn timed<L, R>(id: &str, params: &Params, lhs: L, rhs: R) -> Result<Self>
    where
        L: FnOnce() -> Result<Value>,
        R: FnOnce() -> Result<Value>,
    {
        let t = Instant::now();
        let lhs = lhs()?;
        let lhs_ms = t.elapsed().as_secs_f64() * 1e3;
        let t = Instant::now();
        let rhs = rhs()?;
        let rhs_ms = t.elapsed().as_secs_f64() * 1e3;
        Ok(Self {
            identity_id: id.to_string(),
            params: params.0.clone(),
            equal: lhs == rhs,
            lhs,
            rhs,
            lhs_ms,
            rhs_ms,
        })
    }
}

/// String-keyed parameters with typed accessors.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Params(pub BTreeMap<String, String>);

impl Params {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.0.insert(key.to_string(), value.to_string());
        self
    }

    pub fn set(&mut self, key: &str, value: impl ToString) {
        self.0.insert(key.to_string(), value.to_string());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    pub fn u64(&self, key: &str) -> Result<u64> {
        let raw = self
            .get(key)
            .ok_or_else(|| Error::param(format!("missing parameter {key}")))?;
        raw.parse().map_err(|_| {
            Error::param(format!(
                "parameter {key} = {raw:?} is not a nonnegative integer"
            ))
        })
    }

    pub fn u32(&self, key: &str) -> Result<u32> {
        let v = self.u64(key)?;
        u32::try_from(v).map_err(|_| Error::param(format!("parameter {key} = {v} is too large")))
    }

    pub fn u32_or(&self, key: &str, default: u32) -> Result<u32> {
        if self.get(key).is_some() {
            self.u32(key)
        } else {
            Ok(default)
        }
    }

    pub fn rational(&self, key: &str) -> Result<Rational> {
        let raw = self
            .get(key)
            .ok_or_else(|| Error::param(format!("missing parameter {key}")))?;
        parse_rational(raw)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityId {
    /// Möbius product grid sum against `Σ (1 − r)^{ω(n)}`.
    Th1,
    /// Squared Möbius grid sum against `Σ (1 + r)^{ω(n)}`.
    Th15,
    /// Additive-weight grid sum against `r·T_{r−1}(x)`.
    Th2,
    /// Log-divisor sum against its product closed form.
    Th3,
    /// Strictly ordered grid sum against the combinatoric closed form.
    Cor3,
    /// Log-divisor sum against one of the six specialized closed forms.
    Cor9(u32),
    /// `Σ μ(n)⌊x/n⌋ = 1`.
    Classic,
    Lemma(LemmaId),
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentityId::Th1 => f.write_str("th1"),
            IdentityId::Th15 => f.write_str("th15"),
            IdentityId::Th2 => f.write_str("th2"),
            IdentityId::Th3 => f.write_str("th3"),
            IdentityId::Cor3 => f.write_str("cor3"),
            IdentityId::Cor9(line) => write!(f, "cor9.{line}"),
            IdentityId::Classic => f.write_str("classic"),
            IdentityId::Lemma(id) => write!(f, "lemma.{id}"),
        }
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "th1" => IdentityId::Th1,
            "th15" => IdentityId::Th15,
            "th2" => IdentityId::Th2,
            "th3" => IdentityId::Th3,
            "cor3" => IdentityId::Cor3,
            "classic" => IdentityId::Classic,
            _ => {
                if let Some(line) = s.strip_prefix("cor9.") {
                    let line: u32 = line
                        .parse()
                        .map_err(|_| Error::param(format!("bad closed-form line in {s:?}")))?;
                    if !(1..=6).contains(&line) {
                        return Err(Error::param(format!(
                            "closed-form line must be 1..=6 (got {line})"
                        )));
                    }
                    IdentityId::Cor9(line)
                } else if s.starts_with("lemma.") || s.starts_with("le") {
                    IdentityId::Lemma(s.parse()?)
                } else {
                    return Err(Error::param(format!("unknown identity {s:?}")));
                }
            }
        })
    }
}

impl IdentityId {
    /// The parameter a scan varies: `x` for summatory identities, `n` for
    /// divisor sums, `q` for the divisor-tuple lemma.
    pub fn scan_variable(self) -> &'static str {
        match self {
            IdentityId::Th3 | IdentityId::Cor9(_) | IdentityId::Lemma(LemmaId::Le6) => "n",
            IdentityId::Lemma(LemmaId::Le7) => "q",
            _ => "x",
        }
    }

    /// Smallest sieve limit that covers every argument the evaluation touches.
    pub fn required_sieve_limit(self, params: &Params) -> Result<u64> {
        let key = self.scan_variable();
        let mut limit = params.u64(key)?;
        if let IdentityId::Lemma(LemmaId::Le2 | LemmaId::Le5 | LemmaId::Le8 | LemmaId::Le9) = self {
            limit = limit.max(params.u64("q")?);
        }
        Ok(limit.max(1))
    }
}

fn int(v: Int) -> Value {
    Value::Int(v)
}

/// Evaluates both sides of a lemma.
pub fn verify_lemma(id: LemmaId, params: &Params, sieve: &SieveTable) -> Result<IdentityReport> {
    let name = format!("lemma.{id}");
    let pair = |(l, r): (Int, Int)| (int(l), int(r));
    // Each lemma is evaluated once; the left side is the enumeration, so the
    // combined time is reported against it.
    let t = Instant::now();
    let (lhs, rhs) = match id {
        LemmaId::Le2 => pair(lemmas::le2(params.u64("q")?, params.u64("x")?, sieve)?),
        LemmaId::Le5 => pair(lemmas::le5(params.u64("q")?, params.u64("x")?, sieve)?),
        LemmaId::Le6 => {
            let (l, r) = lemmas::le6(params.u64("n")?, &params.rational("k")?, sieve)?;
            (Value::Rational(l), Value::Rational(r))
        }
        LemmaId::Le7 => pair(lemmas::le7(params.u64("q")?, params.u32("k")?, sieve)?),
        LemmaId::Le8 => pair(lemmas::le8(params.u64("q")?, params.u64("x")?, sieve)?),
        LemmaId::Le9 => pair(lemmas::le9(params.u64("q")?, params.u64("x")?, sieve)?),
        LemmaId::Le10 => pair(lemmas::le10(params.u32("r")?, params.u64("x")?, sieve)?),
    };
    let elapsed = t.elapsed().as_secs_f64() * 1e3;
    Ok(IdentityReport {
        identity_id: name,
        params: params.0.clone(),
        equal: lhs == rhs,
        lhs,
        rhs,
        lhs_ms: elapsed,
        rhs_ms: 0.0,
    })
}

/// Evaluates both sides of the named identity, timing each.
pub fn verify_identity(
    id: IdentityId,
    params: &Params,
    sieve: &SieveTable,
) -> Result<IdentityReport> {
    let name = id.to_string();
    match id {
        IdentityId::Th1 => {
            let (r, x) = (params.u32("r")?, params.u64("x")?);
            IdentityReport::timed(
                &name,
                params,
                || th1_lhs(r, x, sieve).map(int),
                || th1_rhs(r, x, sieve).map(int),
            )
        }
        IdentityId::Th15 => {
            let (r, x) = (params.u32("r")?, params.u64("x")?);
            IdentityReport::timed(
                &name,
                params,
                || th15_lhs(r, x, sieve).map(int),
                || th15_rhs(r, x, sieve).map(int),
            )
        }
        IdentityId::Th2 => {
            let (r, x) = (params.u32("r")?, params.u64("x")?);
            let k = params.u32("k").ok();
            let f = named::by_name(params.get("f").unwrap_or("mu"), k)?;
            let table = f.integer_table(x, sieve)?;
            IdentityReport::timed(
                &name,
                params,
                || th2_lhs(r, x, &table).map(int),
                || th2_rhs(r, x, &table).map(int),
            )
        }
        IdentityId::Th3 => {
            let n = params.u64("n")?;
            let e = MobiusPower::new(params.u32("e")?)?;
            let k = params.u32("k").ok();
            let fname = params
                .get("f")
                .ok_or_else(|| Error::param("th3 needs a function f"))?;
            let f = named::by_name(fname, k)?;
            IdentityReport::timed(
                &name,
                params,
                || th3_lhs(n, e, &f, sieve).map(Value::Combo),
                || th3_rhs(n, e, &f, sieve).map(Value::Combo),
            )
        }
        IdentityId::Cor3 => {
            let (r, x) = (params.u32("r")?, params.u64("x")?);
            IdentityReport::timed(
                &name,
                params,
                || ordered_lhs(r, x, sieve).map(int),
                || combinatoric_rhs(r, x, sieve).map(int),
            )
        }
        IdentityId::Cor9(line) => {
            let n = params.u64("n")?;
            let default_k = if line == 5 { 2 } else { 1 };
            let k = params.u32_or("k", default_k)?;
            let e = params.u32_or("e", 1)?;
            let (f, pow) = cor9_function(line, k, e)?;
            IdentityReport::timed(
                &name,
                params,
                || th3_lhs(n, pow, &f, sieve).map(Value::Combo),
                || cor9_rhs(line, n, k, e, sieve).map(Value::Combo),
            )
        }
        IdentityId::Classic => {
            let x = params.u64("x")?;
            IdentityReport::timed(
                &name,
                params,
                || classic_mertens_floor(x, sieve).map(int),
                || Ok(int(Int::from(1))),
            )
        }
        IdentityId::Lemma(lemma) => verify_lemma(lemma, params, sieve),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational;
    use crate::arith::build_sieve;

    #[test]
    fn report_examples() {
        let s = build_sieve(10_000).unwrap();
        let rep = verify_identity(
            IdentityId::Th1,
            &Params::new().with("r", 2).with("x", 3),
            &s,
        )
        .unwrap();
        assert!(rep.equal);
        assert_eq!(rep.lhs, Value::Int((-1).into()));
        assert_eq!(rep.rhs, Value::Int((-1).into()));

        let rep = verify_identity(
            IdentityId::Th3,
            &Params::new().with("n", 6).with("e", 1).with("f", "inv_id"),
            &s,
        )
        .unwrap();
        assert!(rep.equal);

        let rep =
            verify_identity(IdentityId::Classic, &Params::new().with("x", 10_000), &s).unwrap();
        assert!(rep.equal);
        assert_eq!(rep.rhs, Value::Int(1.into()));
    }

    #[test]
    fn parse_identity_ids() {
        for s in [
            "th1",
            "th15",
            "th2",
            "th3",
            "cor3",
            "cor9.4",
            "classic",
            "lemma.le7",
        ] {
            assert_eq!(s.parse::<IdentityId>().unwrap().to_string(), s);
        }
        assert_eq!(
            "le2".parse::<IdentityId>().unwrap(),
            IdentityId::Lemma(LemmaId::Le2)
        );
        assert!("cor9.7".parse::<IdentityId>().is_err());
        assert!("th9".parse::<IdentityId>().is_err());
    }

    #[test]
    fn errors_surface() {
        let s = build_sieve(100).unwrap();
        let p = Params::new().with("r", 1).with("x", 10);
        assert!(verify_identity(IdentityId::Th1, &p, &s).is_err());
        let p = Params::new()
            .with("r", 2)
            .with("x", 10)
            .with("f", "inv_tau");
        assert!(matches!(
            verify_identity(IdentityId::Th2, &p, &s),
            Err(Error::Type(_))
        ));
        let p = Params::new().with("q", 12).with("k", 2);
        assert!(matches!(
            verify_identity(IdentityId::Lemma(LemmaId::Le7), &p, &s),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn lemma_reports() {
        let s = build_sieve(100).unwrap();
        let rep = verify_lemma(
            LemmaId::Le6,
            &Params::new().with("n", 12).with("k", "-2/3"),
            &s,
        )
        .unwrap();
        assert!(rep.equal);
        // (1 − 2/3)^2
        assert_eq!(rep.rhs, Value::Rational(rational(1, 9)));
    }

    #[test]
    fn json_roundtrip() {
        let s = build_sieve(1000).unwrap();
        for (id, p) in [
            (IdentityId::Th1, Params::new().with("r", 3).with("x", 100)),
            (IdentityId::Cor9(3), Params::new().with("n", 360)),
            (
                IdentityId::Lemma(LemmaId::Le6),
                Params::new().with("n", 30).with("k", "1/2"),
            ),
        ] {
            let rep = verify_identity(id, &p, &s).unwrap();
            let json = serde_json::to_string(&rep).unwrap();
            let back: IdentityReport = serde_json::from_str(&json).unwrap();
            assert_eq!(back, rep, "{json}");
        }
    }

    #[test]
    fn value_display() {
        let c = Value::Combo(PrimeLogCombo::from_terms([
            (2, rational(-1, 3)),
            (3, rational(-1, 6)),
        ]));
        assert_eq!(c.to_string(), "2:-1/3;3:-1/6");
        assert_eq!(Value::Rational(rational(4, 2)).to_string(), "2");
    }
}
