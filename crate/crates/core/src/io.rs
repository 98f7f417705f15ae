//! Text formats: exact rationals as `"p/q"` strings, codebook JSON documents
//! `{"n": .., "points": [{"x": "p/q", "y": "p/q"}, ..]}`, interval JSON
//! `{"lower": "p/q", "upper": "p/q", "exact": bool}` and CSV.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::codebook::Codebook;
use crate::engine::CertifiedInterval;
use crate::error::{Error, Result};
use crate::measure::Point;
use crate::Rational;

fn parse_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

/// Parses `p/q`, an integer `p`, or a terminating decimal such as `-0.125`
/// or `1e-12`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    if let Some((mantissa, exp)) = t.split_once(['e', 'E']) {
        if mantissa.contains('/') {
            return parse_err(format!("invalid rational {s:?}"));
        }
        let m = parse_rational(mantissa)?;
        let e: i32 = exp.parse().map_err(|_| Error::Parse(format!("invalid exponent in {s:?}")))?;
        if e.unsigned_abs() > 4000 {
            return parse_err(format!("exponent out of range in {s:?}"));
        }
        let scale = Rational::from_integer(num_traits::pow(BigInt::from(10), e.unsigned_abs() as usize));
        return Ok(if e < 0 { m / scale } else { m * scale });
    }
    let int = |v: &str| BigInt::from_str(v).map_err(|_| Error::Parse(format!("invalid rational {s:?}")));
    if let Some((p, q)) = t.split_once('/') {
        let (p, q) = (int(p.trim())?, int(q.trim())?);
        if q.is_zero() {
            return parse_err(format!("zero denominator in {s:?}"));
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let neg = whole.starts_with('-');
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return parse_err(format!("invalid rational {s:?}"));
        }
        let w = match whole {
            "" | "-" | "+" => BigInt::zero(),
            _ => int(whole)?,
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let f = Rational::new(int(frac)?, scale);
        let mag = Rational::from_integer(if neg { -w } else { w }) + f;
        return Ok(if neg { -mag } else { mag });
    }
    Ok(Rational::from_integer(int(t)?))
}

/// `p/q` in lowest terms with a positive denominator, also for integers.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Decimal rendering with `digits` significant digits.
pub fn format_decimal(r: &Rational, digits: usize) -> String {
    let v = num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN);
    if v == 0.0 {
        return format!("{:.*}", digits - 1, 0.0);
    }
    let mag = v.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - mag).max(0) as usize;
    format!("{v:.decimals$}")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PointDoc {
    x: String,
    y: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CodebookDoc {
    n: usize,
    points: Vec<PointDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    variant: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

/// Optional annotations written next to a codebook.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Annotations {
    pub variant: Option<String>,
    pub error: Option<Rational>,
}

/// One-line JSON document for `codebook`.
pub fn codebook_to_json(codebook: &Codebook<Rational>, notes: &Annotations) -> String {
    let doc = CodebookDoc {
        n: codebook.len(),
        points: codebook
            .iter()
            .map(|p| PointDoc { x: format_rational(&p.x), y: format_rational(&p.y) })
            .collect(),
        variant: notes.variant.clone(),
        error: notes.error.as_ref().map(format_rational),
    };
    serde_json::to_string(&doc).expect("plain data serialises")
}

fn doc_to_codebook(doc: CodebookDoc, which: usize) -> Result<Codebook<Rational>> {
    let ctx = |m: String| Error::Parse(format!("codebook {which}: {m}"));
    if doc.points.len() != doc.n {
        return Err(ctx(format!("\"n\" is {} but {} points are listed", doc.n, doc.points.len())));
    }
    let points = doc
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let x = parse_rational(&p.x).map_err(|e| ctx(format!("point {i}: {e}")))?;
            let y = parse_rational(&p.y).map_err(|e| ctx(format!("point {i}: {e}")))?;
            Ok(Point::new(x, y))
        })
        .collect::<Result<Vec<_>>>()?;
    Codebook::new(points).map_err(|e| ctx(e.to_string()))
}

/// Parses one or more concatenated (e.g. newline-separated) codebook
/// documents. Syntax errors report line and column.
pub fn parse_codebooks(text: &str) -> Result<Vec<Codebook<Rational>>> {
    let mut out = Vec::new();
    for (i, doc) in serde_json::Deserializer::from_str(text).into_iter::<CodebookDoc>().enumerate() {
        // serde_json messages end with "at line L column C".
        let doc = doc.map_err(|e| Error::Parse(e.to_string()))?;
        out.push(doc_to_codebook(doc, i + 1)?);
    }
    if out.is_empty() {
        return parse_err("no codebook found");
    }
    Ok(out)
}

/// JSON form of an interval.
pub fn interval_to_json(interval: &CertifiedInterval<Rational>) -> String {
    serde_json::json!({
        "lower": format_rational(&interval.lower),
        "upper": format_rational(&interval.upper),
        "exact": interval.exact,
    })
    .to_string()
}

/// CSV header for [`codebook_csv_rows`].
pub const CSV_HEADER: &str = "n,variant,error,x,y";

/// One CSV row per point of `codebook`, following [`CSV_HEADER`].
pub fn codebook_csv_rows(codebook: &Codebook<Rational>, notes: &Annotations) -> String {
    let variant = notes.variant.as_deref().unwrap_or("");
    let error = notes.error.as_ref().map(format_rational).unwrap_or_default();
    codebook
        .iter()
        .map(|p| format!("{},{variant},{error},{},{}\n", codebook.len(), format_rational(&p.x), format_rational(&p.y)))
        .collect()
}
