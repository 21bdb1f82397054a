//! Exact scalar types usable as facility locations.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_traits::Num;
use serde_json::Value;

/// An exact, totally ordered numeric location.
///
/// Any [`Num`] type with a total order qualifies, which admits the primitive
/// integers and `Ratio<i64>` but keeps floating point out: comparisons between
/// locations must never be approximate.
pub trait Location: Num + Ord + Clone + Debug + Display + Hash + Send + Sync + 'static {
    /// Parses a decimal literal, or `p/q` for rational types.
    fn parse_location(s: &str) -> Option<Self> {
        let s = s.trim();
        Self::from_str_radix(s, 10).ok().or_else(|| {
            // `Ratio` insists on a denominator.
            (!s.contains('/'))
                .then(|| Self::from_str_radix(&format!("{s}/1"), 10).ok())
                .flatten()
        })
    }

    /// Integral values become JSON numbers; anything else a `"p/q"` string.
    fn to_json(&self) -> Value {
        let text = self.to_string();
        match text.parse::<i64>() {
            Ok(v) => Value::from(v),
            Err(_) => Value::String(text),
        }
    }

    fn from_json(value: &Value) -> Option<Self> {
        match value {
            Value::Number(n) if n.is_i64() || n.is_u64() => Self::parse_location(&n.to_string()),
            Value::String(s) => Self::parse_location(s),
            _ => None,
        }
    }
}

impl<T> Location for T where T: Num + Ord + Clone + Debug + Display + Hash + Send + Sync + 'static {}
