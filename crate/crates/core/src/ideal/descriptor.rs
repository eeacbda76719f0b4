//! JSON ideal descriptors.
//!
//! ```text
//! {"int": m}
//! {"gen": [c0, …, c_{n-1}]}
//! {"prime_above": p, "index": k}        k-th prime above p, 0-based
//! {"product": [descriptor, …]}
//! {"power": {"base": descriptor, "exp": t}}
//! ```

use std::fmt;

use num_bigint::BigInt;
use serde_json::{Map, Value};

use super::{factor_rational_prime, IdealHNF};
use crate::error::{Error, Result};
use crate::number_field::NumberField;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealDescriptor {
    Int(u64),
    Gen(Vec<i64>),
    PrimeAbove { p: u64, index: usize },
    Product(Vec<IdealDescriptor>),
    Power { base: Box<IdealDescriptor>, exp: u32 },
}

fn expect_u64(v: &Value, path: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| Error::descriptor(path, format!("expected a non-negative integer, found {v}")))
}

fn only_keys(obj: &Map<String, Value>, keys: &[&str], path: &str) -> Result<()> {
    for k in obj.keys() {
        if !keys.contains(&k.as_str()) {
            return Err(Error::descriptor(path, format!("unexpected key \"{k}\"")));
        }
    }
    Ok(())
}

impl IdealDescriptor {
    pub fn parse(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| {
            Error::descriptor(format!("ideal line {} column {}", e.line(), e.column()), e.to_string())
        })?;
        Self::from_value(&value, "ideal")
    }

    pub fn from_value(value: &Value, path: &str) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::descriptor(path, format!("expected an object, found {value}")))?;
        if let Some(v) = obj.get("int") {
            only_keys(obj, &["int"], path)?;
            let m = expect_u64(v, &format!("{path}.int"))?;
            if m == 0 {
                return Err(Error::descriptor(format!("{path}.int"), "must be positive"));
            }
            return Ok(IdealDescriptor::Int(m));
        }
        if let Some(v) = obj.get("gen") {
            only_keys(obj, &["gen"], path)?;
            let arr = v
                .as_array()
                .ok_or_else(|| Error::descriptor(format!("{path}.gen"), "expected an array of integers"))?;
            let coords = arr
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    c.as_i64()
                        .ok_or_else(|| Error::descriptor(format!("{path}.gen[{i}]"), format!("expected an integer, found {c}")))
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(IdealDescriptor::Gen(coords));
        }
        if let Some(v) = obj.get("prime_above") {
            only_keys(obj, &["prime_above", "index"], path)?;
            let p = expect_u64(v, &format!("{path}.prime_above"))?;
            let index = match obj.get("index") {
                Some(i) => expect_u64(i, &format!("{path}.index"))? as usize,
                None => 0,
            };
            return Ok(IdealDescriptor::PrimeAbove { p, index });
        }
        if let Some(v) = obj.get("product") {
            only_keys(obj, &["product"], path)?;
            let arr = v
                .as_array()
                .ok_or_else(|| Error::descriptor(format!("{path}.product"), "expected an array of descriptors"))?;
            let parts = arr
                .iter()
                .enumerate()
                .map(|(i, d)| Self::from_value(d, &format!("{path}.product[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            return Ok(IdealDescriptor::Product(parts));
        }
        if let Some(v) = obj.get("power") {
            only_keys(obj, &["power"], path)?;
            let inner = v
                .as_object()
                .ok_or_else(|| Error::descriptor(format!("{path}.power"), "expected {\"base\": …, \"exp\": …}"))?;
            only_keys(inner, &["base", "exp"], &format!("{path}.power"))?;
            let base = inner
                .get("base")
                .ok_or_else(|| Error::descriptor(format!("{path}.power"), "missing \"base\""))?;
            let exp = inner
                .get("exp")
                .ok_or_else(|| Error::descriptor(format!("{path}.power"), "missing \"exp\""))?;
            let exp = expect_u64(exp, &format!("{path}.power.exp"))?;
            if exp == 0 || exp > u32::MAX as u64 {
                return Err(Error::descriptor(format!("{path}.power.exp"), "must be a positive 32-bit integer"));
            }
            return Ok(IdealDescriptor::Power {
                base: Box::new(Self::from_value(base, &format!("{path}.power.base"))?),
                exp: exp as u32,
            });
        }
        Err(Error::descriptor(path, "expected one of the keys int, gen, prime_above, product, power"))
    }

    pub fn to_value(&self) -> Value {
        use serde_json::json;
        match self {
            IdealDescriptor::Int(m) => json!({ "int": m }),
            IdealDescriptor::Gen(c) => json!({ "gen": c }),
            IdealDescriptor::PrimeAbove { p, index } => json!({ "prime_above": p, "index": index }),
            IdealDescriptor::Product(parts) => {
                json!({ "product": parts.iter().map(|d| d.to_value()).collect::<Vec<_>>() })
            }
            IdealDescriptor::Power { base, exp } => json!({ "power": { "base": base.to_value(), "exp": exp } }),
        }
    }

    pub fn build(&self, field: &NumberField) -> Result<IdealHNF> {
        match self {
            IdealDescriptor::Int(m) => IdealHNF::integer(field, *m),
            IdealDescriptor::Gen(c) => {
                if c.len() != field.degree() {
                    return Err(Error::descriptor(
                        "ideal.gen",
                        format!("expected {} coordinates, found {}", field.degree(), c.len()),
                    ));
                }
                let coords = c.iter().map(|&x| BigInt::from(x)).collect();
                IdealHNF::principal(&field.element(coords)?)
            }
            IdealDescriptor::PrimeAbove { p, index } => {
                let primes = factor_rational_prime(field, *p)?;
                let count = primes.len();
                primes.into_iter().nth(*index).map(|q| q.ideal).ok_or_else(|| {
                    Error::descriptor("ideal.index", format!("only {count} prime(s) above {p}, index {index} requested"))
                })
            }
            IdealDescriptor::Product(parts) => {
                let mut acc = IdealHNF::whole(field);
                for part in parts {
                    acc = acc.mul(&part.build(field)?)?;
                }
                Ok(acc)
            }
            IdealDescriptor::Power { base, exp } => Ok(base.build(field)?.pow(*exp)),
        }
    }
}

impl fmt::Display for IdealDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_value())
    }
}
