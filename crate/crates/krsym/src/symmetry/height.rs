//! Exact height values. Two heights are equal iff their normalized decimal
//! tokens match; symmetry detection never goes through a float tolerance.

use std::fmt;

use super::ModelError;

/// A height: the normalized decimal token plus its parsed value. Equality
/// and hashing use the token; ordering uses the value (tokens are unique
/// per value after normalization, so the order is total and consistent).
#[derive(Clone, Debug)]
pub struct Height {
    token: String,
    value: f64,
}

impl Height {
    pub fn parse(token: &str) -> Result<Self, ModelError> {
        let value: f64 = token
            .trim()
            .parse()
            .map_err(|_| ModelError::Malformed(format!("bad height token {token:?}")))?;
        if !value.is_finite() {
            return Err(ModelError::Malformed(format!(
                "height {token:?} is not finite"
            )));
        }
        Ok(Height::from_value(value))
    }

    /// Canonical token: the shortest round-trip decimal form.
    pub fn from_value(value: f64) -> Self {
        Height {
            token: format!("{value}"),
            value,
        }
    }

    pub fn token(&self) -> &str {
        &self.token
    }

    pub fn value(&self) -> f64 {
        self.value
    }
}

impl PartialEq for Height {
    fn eq(&self, other: &Self) -> bool {
        self.token == other.token
    }
}

impl Eq for Height {}

impl PartialOrd for Height {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Height {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.value
            .partial_cmp(&other.value)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then_with(|| self.token.cmp(&other.token))
    }
}

impl std::hash::Hash for Height {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.token.hash(state);
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token)
    }
}

impl From<i64> for Height {
    fn from(v: i64) -> Self {
        Height::from_value(v as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_normalize() {
        assert_eq!(Height::parse("0.50").unwrap(), Height::parse("0.5").unwrap());
        assert_eq!(Height::parse("3").unwrap().token(), "3");
        assert_ne!(Height::parse("0.5").unwrap(), Height::parse("0.51").unwrap());
        assert!(Height::parse("x").is_err());
        assert!(Height::parse("inf").is_err());
    }

    #[test]
    fn ordering_by_value() {
        let a = Height::parse("-1.5").unwrap();
        let b = Height::parse("0").unwrap();
        let c = Height::parse("2.25").unwrap();
        assert!(a < b && b < c);
    }
}
