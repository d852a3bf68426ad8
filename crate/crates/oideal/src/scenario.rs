//! Scenario files: parameters plus the facts a run must reproduce.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use oideal_core::{Error, Result};

/// Where an expected value comes from.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Provenance {
    /// `stated` (asserted in the source text), `derived` (computed by an
    /// independent check) or `trivial`.
    pub kind: String,
    pub note: String,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "lowercase")]
pub enum Cmp {
    #[default]
    Eq,
    Le,
    Ge,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FactSpec {
    pub name: String,
    /// A literal, or `{"expr": "2*s"}` over the integer parameters.
    #[serde(default)]
    pub expect: Option<Value>,
    #[serde(default)]
    pub cmp: Cmp,
    /// Facts that are reported but never executed.
    #[serde(default)]
    pub skip: Option<String>,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Scenario {
    pub id: String,
    pub title: String,
    #[serde(default)]
    pub params: BTreeMap<String, Value>,
    pub facts: Vec<FactSpec>,
}

const BUILTIN: &[&str] = &[
    include_str!("../scenarios/intro-chern.json"),
    include_str!("../scenarios/ex3.10-alpha2.json"),
    include_str!("../scenarios/ex3.10-alpha4.json"),
    include_str!("../scenarios/ex3.11.json"),
    include_str!("../scenarios/prop3.13-d4.json"),
    include_str!("../scenarios/prop3.13-d6.json"),
    include_str!("../scenarios/prop3.12.json"),
    include_str!("../scenarios/post4.1.json"),
    include_str!("../scenarios/thm5.5-curve.json"),
    include_str!("../scenarios/cor3.2-instance.json"),
    include_str!("../scenarios/prop3.14-spot.json"),
];

impl Scenario {
    pub fn parse(text: &str) -> Result<Scenario> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("bad scenario file: {e}")))
    }

    /// All shipped scenario instances, in file order.
    pub fn builtin() -> Vec<Scenario> {
        BUILTIN
            .iter()
            .map(|t| Scenario::parse(t).expect("shipped scenario files parse"))
            .collect()
    }

    pub fn int(&self, name: &str) -> Result<i64> {
        self.params
            .get(name)
            .and_then(Value::as_i64)
            .ok_or_else(|| Error::Invalid(format!("scenario {} needs integer parameter `{name}`", self.id)))
    }

    pub fn uint(&self, name: &str) -> Result<usize> {
        let v = self.int(name)?;
        usize::try_from(v).map_err(|_| Error::Invalid(format!("parameter `{name}` must be non-negative")))
    }

    pub fn text(&self, name: &str) -> Option<&str> {
        self.params.get(name).and_then(Value::as_str)
    }

    /// Resolves `{"expr": ...}` expectations against the parameters.
    pub fn expected(&self, fact: &FactSpec) -> Result<Option<Value>> {
        match &fact.expect {
            Some(Value::Object(o)) if o.contains_key("expr") => {
                let e = o["expr"]
                    .as_str()
                    .ok_or_else(|| Error::Invalid("expr must be a string".into()))?;
                Ok(Some(Value::from(eval_expr(e, &self.params)?)))
            }
            other => Ok(other.clone()),
        }
    }
}

/// Integer expressions with `+`, `-`, `*`, parentheses and parameter names.
pub fn eval_expr(text: &str, params: &BTreeMap<String, Value>) -> Result<i64> {
    struct P<'a> {
        s: &'a [u8],
        i: usize,
        params: &'a BTreeMap<String, Value>,
    }
    impl P<'_> {
        fn ws(&mut self) {
            while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
                self.i += 1;
            }
        }
        fn sum(&mut self) -> Result<i64> {
            let mut v = self.product()?;
            loop {
                self.ws();
                match self.s.get(self.i) {
                    Some(b'+') => {
                        self.i += 1;
                        v += self.product()?;
                    }
                    Some(b'-') => {
                        self.i += 1;
                        v -= self.product()?;
                    }
                    _ => return Ok(v),
                }
            }
        }
        fn product(&mut self) -> Result<i64> {
            let mut v = self.atom()?;
            loop {
                self.ws();
                if self.s.get(self.i) == Some(&b'*') {
                    self.i += 1;
                    v *= self.atom()?;
                } else {
                    return Ok(v);
                }
            }
        }
        fn atom(&mut self) -> Result<i64> {
            self.ws();
            let start = self.i;
            match self.s.get(self.i) {
                Some(b'(') => {
                    self.i += 1;
                    let v = self.sum()?;
                    self.ws();
                    if self.s.get(self.i) != Some(&b')') {
                        return Err(Error::Syntax { offset: self.i, message: "expected `)`".into() });
                    }
                    self.i += 1;
                    Ok(v)
                }
                Some(b'-') => {
                    self.i += 1;
                    Ok(-self.atom()?)
                }
                Some(c) if c.is_ascii_digit() => {
                    while self.s.get(self.i).is_some_and(u8::is_ascii_digit) {
                        self.i += 1;
                    }
                    let t = std::str::from_utf8(&self.s[start..self.i]).unwrap();
                    t.parse().map_err(|_| Error::Syntax { offset: start, message: "bad integer".into() })
                }
                Some(c) if c.is_ascii_alphabetic() || *c == b'_' => {
                    while self
                        .s
                        .get(self.i)
                        .is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_')
                    {
                        self.i += 1;
                    }
                    let name = std::str::from_utf8(&self.s[start..self.i]).unwrap();
                    self.params
                        .get(name)
                        .and_then(Value::as_i64)
                        .ok_or_else(|| Error::UnknownVariable(name.to_string()))
                }
                _ => Err(Error::Syntax { offset: self.i, message: "expected a term".into() }),
            }
        }
    }
    let mut p = P { s: text.as_bytes(), i: 0, params };
    let v = p.sum()?;
    p.ws();
    if p.i != p.s.len() {
        return Err(Error::Syntax { offset: p.i, message: "trailing input".into() });
    }
    Ok(v)
}

/// Compares a computed value against an expectation.
pub fn matches(value: &Value, expected: &Value, cmp: Cmp) -> bool {
    match cmp {
        Cmp::Eq => value == expected,
        Cmp::Le | Cmp::Ge => match (value.as_i64(), expected.as_i64()) {
            (Some(v), Some(e)) => {
                if cmp == Cmp::Le {
                    v <= e
                } else {
                    v >= e
                }
            }
            _ => false,
        },
    }
}
