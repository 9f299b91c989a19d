use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational coefficient. `BigRational` keeps itself reduced with a
/// positive denominator, so equal values compare equal.
pub type Scalar = BigRational;

#[cfg(test)]
pub(crate) fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

/// Parses `"3"`, `"-7"`, `"2/5"` or `"-2/5"`. Whitespace around the tokens is
/// ignored; a zero denominator is rejected.
pub fn parse_scalar(text: &str) -> Option<Scalar> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den == BigInt::from(0) {
        return None;
    }
    Some(Scalar::new(num, den))
}
