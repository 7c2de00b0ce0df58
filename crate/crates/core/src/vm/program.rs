use serde_json::Value;

use super::expr::{Expr, Fault, Ty};
use crate::error::{Error, Result};

/// A partial function `i -> value(i)` with a simulated halting time.
///
/// Input `i` diverges when the guard is false; otherwise it halts after
/// `cost(i)` steps with output `value(i)`. The range of the function is the
/// r.e. set the program stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumeratorProgram {
    name: String,
    value_src: String,
    cost_src: String,
    guard_src: Option<String>,
    value: Expr,
    cost: Expr,
    guard: Option<Expr>,
}

/// Outcome of running one input to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Halting {
    Halts { value: u64, cost: u64 },
    Diverges,
}

impl EnumeratorProgram {
    pub fn new(name: &str, value: &str, cost: &str, guard: Option<&str>) -> Result<Self> {
        Ok(Self {
            name: name.to_string(),
            value_src: value.to_string(),
            cost_src: cost.to_string(),
            guard_src: guard.map(str::to_string),
            value: Expr::parse(value, Ty::Nat, "value")?,
            cost: Expr::parse(cost, Ty::Nat, "cost")?,
            guard: guard
                .map(|g| Expr::parse(g, Ty::Bool, "guard"))
                .transpose()?,
        })
    }

    /// Parses a JSON program document with keys `name`, `value`, `cost` and
    /// an optional `guard` (string or null).
    pub fn parse(source: &str) -> Result<Self> {
        let doc: Value =
            serde_json::from_str(source).map_err(|e| Error::InvalidDocument(e.to_string()))?;
        let Value::Object(map) = doc else {
            return Err(Error::InvalidDocument("expected a JSON object".into()));
        };
        let string_key = |key: &'static str| -> Result<&str> {
            match map.get(key) {
                None => Err(Error::MissingKey(key)),
                Some(Value::String(s)) => Ok(s.as_str()),
                Some(_) => Err(Error::InvalidDocument(format!("`{key}` must be a string"))),
            }
        };
        let name = string_key("name")?;
        let value = string_key("value")?;
        let cost = string_key("cost")?;
        let guard = match map.get("guard") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) => Some(s.as_str()),
            Some(_) => {
                return Err(Error::InvalidDocument(
                    "`guard` must be a string or null".into(),
                ))
            }
        };
        Self::new(name, value, cost, guard)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn value_source(&self) -> &str {
        &self.value_src
    }

    pub fn cost_source(&self) -> &str {
        &self.cost_src
    }

    pub fn guard_source(&self) -> Option<&str> {
        self.guard_src.as_deref()
    }

    /// Runs input `i` to completion.
    pub fn run(&self, i: u64) -> Result<Halting> {
        let fault = |src: &str, f: Fault| match f {
            Fault::Overflow => Error::Overflow {
                expr: src.to_string(),
                input: i,
            },
            Fault::DivisionByZero => Error::DivisionByZero {
                expr: src.to_string(),
                input: i,
            },
        };
        if let (Some(guard), Some(src)) = (&self.guard, &self.guard_src) {
            if !guard.eval_bool(i).map_err(|f| fault(src, f))? {
                return Ok(Halting::Diverges);
            }
        }
        let cost = self
            .cost
            .eval_nat(i)
            .map_err(|f| fault(&self.cost_src, f))?;
        if cost == 0 {
            return Err(Error::ZeroCost {
                expr: self.cost_src.clone(),
                input: i,
            });
        }
        let value = self
            .value
            .eval_nat(i)
            .map_err(|f| fault(&self.value_src, f))?;
        Ok(Halting::Halts { value, cost })
    }
}
