use serde_json::{json, Value};

use super::{GradedClass, VgAlgebra, VgElement};
use crate::error::{Error, Result};
use crate::exactla::Field;

pub const SCHEMA_VERSION: u32 = 1;

/// Tag for the chamber numbering: lexicographic sign vectors with `+ < −`.
pub const CHAMBER_ORDER: &str = "lex-plus-first-v1";

impl<F: Field> VgAlgebra<F> {
    fn header(&self, kind: &str) -> serde_json::Map<String, Value> {
        let mut m = serde_json::Map::new();
        m.insert("schema_version".into(), json!(SCHEMA_VERSION));
        m.insert("kind".into(), json!(kind));
        m.insert("field".into(), json!(self.field().spec().to_string()));
        m.insert("arrangement_hash".into(), json!(self.arrangement().hash()));
        m.insert("chamber_order".into(), json!(CHAMBER_ORDER));
        m
    }

    fn check_header(&self, v: &Value, kind: &str) -> Result<()> {
        let get = |k: &str| v.get(k).ok_or_else(|| Error::Usage(format!("missing field `{k}`")));
        if get("schema_version")? != &json!(SCHEMA_VERSION) {
            return Err(Error::Usage("unsupported schema_version".into()));
        }
        if get("kind")? != &json!(kind) {
            return Err(Error::Usage(format!("expected a {kind}")));
        }
        if get("field")? != &json!(self.field().spec().to_string()) {
            return Err(Error::Usage("field differs".into()));
        }
        if get("arrangement_hash")? != &json!(self.arrangement().hash()) {
            return Err(Error::Usage("saved for a different arrangement".into()));
        }
        if get("chamber_order")? != &json!(CHAMBER_ORDER) {
            return Err(Error::Usage("unknown chamber order".into()));
        }
        Ok(())
    }

    fn parse_values(&self, v: &Value, key: &str, len: usize) -> Result<Vec<F::Elem>> {
        let arr =
            v.get(key).and_then(Value::as_array).ok_or_else(|| Error::Usage(format!("`{key}` must be an array")))?;
        if arr.len() != len {
            return Err(Error::Usage(format!("`{key}` has {} entries, expected {len}", arr.len())));
        }
        arr.iter()
            .map(|x| {
                x.as_str().ok_or_else(|| Error::Usage("values are strings".into())).and_then(|s| self.field().parse(s))
            })
            .collect()
    }

    pub fn element_to_json(&self, e: &VgElement<F>) -> Value {
        let mut m = self.header("vg_element");
        m.insert("values".into(), json!(e.values.iter().map(|x| self.field().format(x)).collect::<Vec<_>>()));
        Value::Object(m)
    }

    pub fn element_from_json(&self, v: &Value) -> Result<VgElement<F>> {
        self.check_header(v, "vg_element")?;
        Ok(VgElement { values: self.parse_values(v, "values", self.dim())? })
    }

    /// Coordinates refer to the grade-`k` monomial basis, listed alongside.
    pub fn class_to_json(&self, u: &GradedClass<F>) -> Value {
        let mut m = self.header("graded_class");
        m.insert("degree".into(), json!(u.degree));
        let basis: Vec<Vec<usize>> = self
            .fil()
            .grade_basis(u.degree)
            .iter()
            .map(|&s| (0..self.n()).filter(|&i| s >> i & 1 == 1).map(|i| i + 1).collect())
            .collect();
        m.insert("basis".into(), json!(basis));
        m.insert("coords".into(), json!(u.coords.iter().map(|x| self.field().format(x)).collect::<Vec<_>>()));
        Value::Object(m)
    }

    pub fn class_from_json(&self, v: &Value) -> Result<GradedClass<F>> {
        self.check_header(v, "graded_class")?;
        let degree =
            v.get("degree").and_then(Value::as_u64).ok_or_else(|| Error::Usage("`degree` must be an integer".into()))?
                as usize;
        let len = self.fil().grade_range(degree).len();
        Ok(GradedClass { degree, coords: self.parse_values(v, "coords", len)? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use crate::exactla::Rationals;
    use crate::vgalgebra::Side;

    #[test]
    fn round_trip() {
        let a = Arrangement::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let vg = VgAlgebra::new(&a, Rationals, false).unwrap();
        let q = Rationals;
        let y = vg.linear(&q.parse("-1/2").unwrap(), &[q.one(), q.one(), q.one()]);
        let back = vg.element_from_json(&vg.element_to_json(&y)).unwrap();
        assert_eq!(back, y);
        let u = vg.fil().graded_class(&vg.heaviside(1, Side::Plus), 1).unwrap();
        let text = vg.class_to_json(&u).to_string();
        let back = vg.class_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, u);
    }

    #[test]
    fn foreign_arrangement_is_rejected() {
        let a = Arrangement::from_i64(2, &[&[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let b = Arrangement::from_i64(2, &[&[1, 0], &[0, 1], &[1, -1]]).unwrap();
        let va = VgAlgebra::new(&a, Rationals, false).unwrap();
        let vb = VgAlgebra::new(&b, Rationals, false).unwrap();
        let j = va.element_to_json(&va.one());
        assert!(vb.element_from_json(&j).is_err());
    }
}
