//! JSON term-list form shared by every file format:
//! `[[coeff, [e_u1, .., e_ud], {"v1_1": 2, ...}], ...]`.
//!
//! The shift map is omitted for terms with no shift variable. Coefficients
//! are JSON integers when they fit in an `i64` and decimal strings otherwise.
//! Terms are written in descending graded-lex order of the u-monomial and,
//! within one u-monomial, descending graded-lex order of the shift monomial.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{Map, Value};

use super::coeff::CoeffPoly;
use super::context::{ShiftContext, ShiftVar};
use super::monomial::Monomial;
use super::upoly::UPoly;
use super::PolyError;

pub fn integer_to_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(x) => Value::from(x),
        None => Value::String(c.to_string()),
    }
}

pub fn integer_from_json(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).or_else(|| n.as_u64().map(BigInt::from)),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

pub fn to_json(p: &UPoly) -> Value {
    let d = p.dim();
    let mut out = Vec::new();
    for (um, c) in p.terms().rev() {
        let exps: Vec<Value> = um.padded(d).into_iter().map(Value::from).collect();
        for (sm, k) in c.terms().rev() {
            let mut term = vec![integer_to_json(k), Value::Array(exps.clone())];
            if !sm.is_one() {
                let mut map = Map::new();
                for (slot, e) in sm.support() {
                    map.insert(ShiftVar::from_index(slot, d).to_string(), Value::from(e));
                }
                term.push(Value::Object(map));
            }
            out.push(Value::Array(term));
        }
    }
    Value::Array(out)
}

/// Parses a term list for dimension `d`. The returned context has exactly as
/// many pairs as the highest pair referenced.
pub fn from_json(v: &Value, d: usize) -> Result<UPoly, PolyError> {
    let bad = |msg: String| PolyError::Format(msg);
    let terms = v.as_array().ok_or_else(|| bad("polynomial must be an array of terms".into()))?;

    let mut parsed = Vec::with_capacity(terms.len());
    let mut pairs = 0u32;
    for (t, term) in terms.iter().enumerate() {
        let parts = term
            .as_array()
            .filter(|a| a.len() == 2 || a.len() == 3)
            .ok_or_else(|| bad(format!("term {} must be [coeff, exponents] or [coeff, exponents, shifts]", t)))?;
        let coeff =
            integer_from_json(&parts[0]).ok_or_else(|| bad(format!("term {}: coefficient must be an integer", t)))?;
        let exps = parts[1].as_array().ok_or_else(|| bad(format!("term {}: exponents must be an array", t)))?;
        if exps.len() != d {
            return Err(bad(format!("term {}: expected {} u-exponents, found {}", t, d, exps.len())));
        }
        let exps = exps
            .iter()
            .map(|e| e.as_u64().and_then(|e| u32::try_from(e).ok()))
            .collect::<Option<Vec<u32>>>()
            .ok_or_else(|| bad(format!("term {}: exponents must be nonnegative integers", t)))?;
        let mut shifts = Vec::new();
        if let Some(map) = parts.get(2) {
            let map = map.as_object().ok_or_else(|| bad(format!("term {}: shift map must be an object", t)))?;
            for (name, e) in map {
                let var: ShiftVar = name.parse()?;
                if var.coord as usize >= d {
                    return Err(bad(format!("term {}: {} has coordinate beyond d = {}", t, name, d)));
                }
                let e = e
                    .as_u64()
                    .and_then(|e| u32::try_from(e).ok())
                    .ok_or_else(|| bad(format!("term {}: exponent of {} must be a nonnegative integer", t, name)))?;
                pairs = pairs.max(var.pair + 1);
                shifts.push((var, e));
            }
        }
        parsed.push((coeff, exps, shifts));
    }

    let ctx = ShiftContext::with_pairs(d, pairs);
    let mut p = UPoly::zero(ctx);
    for (coeff, exps, shifts) in parsed {
        let sm = shifts.iter().fold(Monomial::one(), |m, (var, e)| m.mul(&Monomial::var(var.index(d), *e)));
        p.add_term(Monomial::from_exponents(exps), CoeffPoly::from_terms([(sm, coeff)]));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::ShiftEntry;

    #[test]
    fn integer_poly_round_trip() {
        let ctx = ShiftContext::new(1);
        let p = UPoly::univariate(ctx, &[1, -6, 1]);
        let j = to_json(&p);
        assert_eq!(j.to_string(), "[[1,[2]],[-6,[1]],[1,[0]]]");
        assert_eq!(from_json(&j, 1).unwrap(), p);
    }

    #[test]
    fn shifted_poly_round_trip() {
        let (pair, ctx) = ShiftContext::new(2).fresh_pair();
        let p = UPoly::from_int_terms(ctx, &[(3, &[1, 1])]);
        let q = p
            .shift_substitute(&[ShiftEntry::Formal(ShiftVar::v(pair, 0)), ShiftEntry::Formal(ShiftVar::w(pair, 1))])
            .unwrap();
        let j = to_json(&q);
        let back = from_json(&j, 2).unwrap();
        assert_eq!(back, q);
        assert_eq!(back.context().pairs(), 1);
        assert_eq!(to_json(&back).to_string(), j.to_string());
    }

    #[test]
    fn big_coefficients_use_strings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let p = UPoly::constant(ShiftContext::new(1), big.clone());
        let j = to_json(&p);
        assert!(j.to_string().contains("\"123456789012345678901234567890\""));
        assert_eq!(from_json(&j, 1).unwrap(), p);
    }

    #[test]
    fn rejects_wrong_arity() {
        let j: Value = serde_json::from_str("[[1,[1,0]]]").unwrap();
        assert!(from_json(&j, 1).is_err());
    }
}
