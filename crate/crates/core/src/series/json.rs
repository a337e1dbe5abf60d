//! JSON documents for series and germs.
//!
//! ```text
//! {"trunc": N, "scalar": "rational", "terms": [{"tree": "(x,x)", "value": "1/2"}, ...]}
//! {"trunc": N, "scalar": "complex", "terms": [{"tree": "x", "re": 0.5, "im": 0.0}, ...]}
//! ```
//!
//! Germs add a `"base"` field, a `"p/q"` string or a `{"re", "im"}` object.
//! Output lists terms in canonical monomial order and omits zeros.

use num_complex::Complex64;
use serde_json::{Map, Value};

use super::TruncatedPlanarSeries;
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar, ScalarKind};
use crate::trees::PlanarMonomial;

pub fn series_to_value<S: Scalar>(series: &TruncatedPlanarSeries<S>, base: Option<&S>) -> Value {
    let mut doc = Map::new();
    doc.insert("trunc".into(), Value::from(series.trunc()));
    doc.insert("scalar".into(), Value::from(S::KIND.as_str()));
    if let Some(base) = base {
        let mut fields = Map::new();
        base.encode(&mut fields);
        let value = match S::KIND {
            ScalarKind::Rational => fields.remove("value").unwrap_or(Value::Null),
            ScalarKind::Complex => Value::Object(fields),
        };
        doc.insert("base".into(), value);
    }
    let terms = series
        .terms()
        .map(|(tree, c)| {
            let mut obj = Map::new();
            obj.insert("tree".into(), Value::String(tree.to_string()));
            c.encode(&mut obj);
            Value::Object(obj)
        })
        .collect();
    doc.insert("terms".into(), Value::Array(terms));
    Value::Object(doc)
}

pub fn series_to_string<S: Scalar>(series: &TruncatedPlanarSeries<S>) -> String {
    series_to_value(series, None).to_string()
}

/// Reads a series document whose `"scalar"` field matches `S`; also returns
/// the base point when present.
pub fn series_from_value<S: Scalar>(doc: &Value) -> Result<(TruncatedPlanarSeries<S>, Option<S>)> {
    let doc = doc.as_object().ok_or_else(|| Error::Format("expected a JSON object".into()))?;
    let kind = doc.get("scalar").and_then(Value::as_str).unwrap_or("rational");
    if kind != S::KIND.as_str() {
        return Err(Error::Format(format!("expected scalar \"{}\", found \"{kind}\"", S::KIND.as_str())));
    }
    let trunc = doc
        .get("trunc")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Format("missing nonnegative integer \"trunc\"".into()))? as usize;
    let terms = doc
        .get("terms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Format("missing \"terms\" array".into()))?;
    let mut parsed = Vec::with_capacity(terms.len());
    for term in terms {
        let obj = term.as_object().ok_or_else(|| Error::Format("term must be an object".into()))?;
        let tree = obj
            .get("tree")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Format("term needs a \"tree\" string".into()))?;
        parsed.push((PlanarMonomial::parse(tree)?, S::decode(obj)?));
    }
    let series = TruncatedPlanarSeries::from_terms(parsed, trunc)?;
    let base = match doc.get("base") {
        None => None,
        Some(Value::Object(fields)) => Some(S::decode(fields)?),
        Some(Value::String(s)) => Some(S::parse_literal(s)?),
        Some(other) => Some(S::parse_literal(&other.to_string())?),
    };
    Ok((series, base))
}

pub fn series_from_str<S: Scalar>(text: &str) -> Result<TruncatedPlanarSeries<S>> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    series_from_value(&doc).map(|(s, _)| s)
}

/// A series document of either scalar kind.
#[derive(Debug, Clone, PartialEq)]
pub enum AnySeries {
    Rational(TruncatedPlanarSeries<Rational>, Option<Rational>),
    Complex(TruncatedPlanarSeries<Complex64>, Option<Complex64>),
}

impl AnySeries {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: Value = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        match doc.get("scalar").and_then(Value::as_str).unwrap_or("rational") {
            "rational" => series_from_value(&doc).map(|(s, b)| AnySeries::Rational(s, b)),
            "complex" => series_from_value(&doc).map(|(s, b)| AnySeries::Complex(s, b)),
            other => Err(Error::Format(format!("unknown scalar kind \"{other}\""))),
        }
    }

    pub fn to_value(&self) -> Value {
        match self {
            AnySeries::Rational(s, b) => series_to_value(s, b.as_ref()),
            AnySeries::Complex(s, b) => series_to_value(s, b.as_ref()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::g_series;

    #[test]
    fn canonical_rational_document() {
        let s = g_series::<Rational>(3).scale(&Rational::new(1.into(), 2.into()));
        assert_eq!(
            series_to_string(&s),
            r#"{"trunc":3,"scalar":"rational","terms":[{"tree":"x","value":"1/2"},{"tree":"(x,x)","value":"1/2"},{"tree":"(x,(x,x))","value":"1/2"},{"tree":"((x,x),x)","value":"1/2"}]}"#
        );
        assert_eq!(series_from_str::<Rational>(&series_to_string(&s)).unwrap(), s);
    }

    #[test]
    fn complex_document_with_base() {
        let s = TruncatedPlanarSeries::affine(Complex64::new(1.5, -2.0), 2);
        let v = series_to_value(&s, Some(&Complex64::new(0.25, 0.0)));
        assert_eq!(
            v.to_string(),
            r#"{"trunc":2,"scalar":"complex","base":{"re":0.25,"im":0.0},"terms":[{"tree":"1","re":1.5,"im":-2.0},{"tree":"x","re":1.0,"im":0.0}]}"#
        );
        match AnySeries::parse(&v.to_string()).unwrap() {
            AnySeries::Complex(back, base) => {
                assert_eq!(back, s);
                assert_eq!(base, Some(Complex64::new(0.25, 0.0)));
            }
            other => panic!("wrong kind: {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(series_from_str::<Rational>(r#"{"trunc":1,"scalar":"complex","terms":[]}"#).is_err());
        assert!(series_from_str::<Rational>(r#"{"scalar":"rational","terms":[]}"#).is_err());
        assert!(series_from_str::<Rational>(
            r#"{"trunc":1,"scalar":"rational","terms":[{"tree":"(x,x)","value":"1"}]}"#
        )
        .is_err());
        assert!(series_from_str::<Rational>(
            r#"{"trunc":2,"scalar":"rational","terms":[{"tree":"(x)","value":"1"}]}"#
        )
        .is_err());
        assert!(AnySeries::parse(r#"{"trunc":2,"scalar":"real","terms":[]}"#).is_err());
    }

    #[test]
    fn input_zeros_are_dropped_and_duplicates_summed() {
        let s = series_from_str::<Rational>(
            r#"{"trunc":2,"scalar":"rational","terms":[{"tree":"x","value":"1/2"},{"tree":"x","value":"1/2"},{"tree":"(x,x)","value":"0"}]}"#,
        )
        .unwrap();
        assert_eq!(series_to_string(&s), r#"{"trunc":2,"scalar":"rational","terms":[{"tree":"x","value":"1"}]}"#);
    }
}
