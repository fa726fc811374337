//! Central real arrangements given by exact rational normals.
//!
//! Chambers are identified with their sign vectors. Positive side of `H_i`
//! means `α_i > 0`.

mod chambers;
mod feasibility;
mod lattice;
mod restriction;

pub use chambers::{chambers, ChamberSet};
pub use feasibility::{feasible, strictly_feasible};
pub(crate) use lattice::subset_rank;
pub use lattice::{format_poly, lattice_isomorphism, poly_from_roots, Flat, Lattice};
pub use restriction::{restriction, Restriction};

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Deserialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exactla::{format_rational, parse_rational, Field, Matrix, Rationals};

/// Soft limit on the number of hyperplanes.
pub const MAX_HYPERPLANES: usize = 16;
/// Soft limit on the ambient dimension.
pub const MAX_DIMENSION: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
    Zero,
}

impl Sign {
    pub fn of(q: &BigRational) -> Sign {
        match crate::exactla::rational_sign(q) {
            1 => Sign::Plus,
            -1 => Sign::Minus,
            _ => Sign::Zero,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
            Sign::Zero => Sign::Zero,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
            Sign::Zero => 0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
            Sign::Zero => '0',
        }
    }

    fn from_symbol(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            '0' => Some(Sign::Zero),
            _ => None,
        }
    }
}

/// Element of `{+,−,0}^n`, ordered lexicographically with `+ < − < 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignVector(pub Vec<Sign>);

impl SignVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_chamber(&self) -> bool {
        self.0.iter().all(|&s| s != Sign::Zero)
    }

    pub fn negate(&self) -> SignVector {
        SignVector(self.0.iter().map(|s| s.flip()).collect())
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.0[i] != Sign::Zero).collect()
    }

    /// Bit `i` is set iff entry `i` is `−`.
    pub fn minus_mask(&self) -> u32 {
        self.0.iter().enumerate().filter(|(_, &s)| s == Sign::Minus).fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn from_minus_mask(n: usize, mask: u32) -> SignVector {
        SignVector((0..n).map(|i| if mask >> i & 1 == 1 { Sign::Minus } else { Sign::Plus }).collect())
    }

    pub fn parse(s: &str) -> Result<SignVector> {
        s.chars()
            .map(|c| Sign::from_symbol(c).ok_or_else(|| Error::Usage(format!("bad sign `{c}` in `{s}`"))))
            .collect::<Result<_>>()
            .map(SignVector)
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

/// A central arrangement `{H_i = ker α_i}` in `ℚ^ell`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    ell: usize,
    normals: Vec<Vec<BigRational>>,
    labels: Vec<String>,
}

impl Arrangement {
    pub fn new(ell: usize, normals: Vec<Vec<BigRational>>) -> Result<Self> {
        let labels = (1..=normals.len()).map(|i| format!("H{i}")).collect();
        Self::with_labels(ell, normals, labels)
    }

    pub fn with_labels(ell: usize, normals: Vec<Vec<BigRational>>, labels: Vec<String>) -> Result<Self> {
        let n = normals.len();
        if n > MAX_HYPERPLANES || ell > MAX_DIMENSION {
            return Err(Error::LimitExceeded(format!(
                "n = {n}, ell = {ell} (limits n <= {MAX_HYPERPLANES}, ell <= {MAX_DIMENSION})"
            )));
        }
        if labels.len() != n {
            return Err(Error::Usage(format!("{} labels for {n} hyperplanes", labels.len())));
        }
        for (i, a) in normals.iter().enumerate() {
            if a.len() != ell {
                return Err(Error::Usage(format!("normal {} has {} coordinates, expected {ell}", i + 1, a.len())));
            }
            if a.iter().all(Zero::is_zero) {
                return Err(Error::Usage(format!("normal {} is zero", i + 1)));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let m = Matrix::from_rows(Rationals, ell, vec![normals[i].clone(), normals[j].clone()]);
                if m.rank() < 2 {
                    return Err(Error::Usage(format!("normals {} and {} are parallel", i + 1, j + 1)));
                }
            }
        }
        Ok(Arrangement { ell, normals, labels })
    }

    pub fn from_i64(ell: usize, normals: &[&[i64]]) -> Result<Self> {
        let normals = normals.iter().map(|r| r.iter().map(|&v| Rationals.from_i64(v)).collect()).collect();
        Self::new(ell, normals)
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn n(&self) -> usize {
        self.normals.len()
    }

    pub fn normals(&self) -> &[Vec<BigRational>] {
        &self.normals
    }

    pub fn normal(&self, i: usize) -> &[BigRational] {
        &self.normals[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// `α_i(v)`.
    pub fn eval(&self, i: usize, v: &[BigRational]) -> BigRational {
        self.normals[i].iter().zip(v).fold(BigRational::zero(), |acc, (a, x)| acc + a * x)
    }

    pub fn sign_vector(&self, v: &[BigRational]) -> SignVector {
        SignVector((0..self.n()).map(|i| Sign::of(&self.eval(i, v))).collect())
    }

    /// Matrix whose rows are the normals.
    pub fn normal_matrix(&self) -> Matrix<Rationals> {
        Matrix::from_rows(Rationals, self.ell, self.normals.clone())
    }

    pub fn rank(&self) -> usize {
        self.normal_matrix().rank()
    }

    /// `A ∖ {H_i}`.
    pub fn delete(&self, i: usize) -> Arrangement {
        let mut normals = self.normals.clone();
        let mut labels = self.labels.clone();
        normals.remove(i);
        labels.remove(i);
        Arrangement { ell: self.ell, normals, labels }
    }

    /// Reorients `H_i` for every `i` with `flip[i]`.
    pub fn reorient(&self, flip: &[bool]) -> Arrangement {
        let mut a = self.clone();
        for (v, &f) in a.normals.iter_mut().zip(flip) {
            if f {
                for x in v.iter_mut() {
                    *x = -x.clone();
                }
            }
        }
        a
    }

    /// Short content hash over the dimension and normals (labels excluded).
    pub fn hash(&self) -> String {
        let mut s = format!("ell={}", self.ell);
        for a in &self.normals {
            s.push(';');
            let coords: Vec<_> = a.iter().map(format_rational).collect();
            s.push_str(&coords.join(","));
        }
        hex::encode(&Sha256::digest(s.as_bytes())[..8])
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawArrangement = serde_json::from_str(text).map_err(Error::json)?;
        let normals = raw
            .normals
            .iter()
            .map(|row| row.iter().map(RawRational::to_rational).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        match raw.labels {
            Some(labels) => Self::with_labels(raw.ell, normals, labels),
            None => Self::new(raw.ell, normals),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let normals: Vec<Vec<String>> = self.normals.iter().map(|a| a.iter().map(format_rational).collect()).collect();
        serde_json::json!({
            "ell": self.ell,
            "normals": normals,
            "labels": self.labels,
        })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawArrangement {
    ell: usize,
    normals: Vec<Vec<RawRational>>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawRational {
    Int(i64),
    Str(String),
}

impl RawRational {
    fn to_rational(&self) -> Result<BigRational> {
        match self {
            RawRational::Int(v) => Ok(Rationals.from_i64(*v)),
            RawRational::Str(s) => parse_rational(s),
        }
    }
}

/// `Sep(C, C') = {i : C_i ≠ C'_i}`.
pub fn sep(c: &SignVector, d: &SignVector) -> Vec<usize> {
    (0..c.len()).filter(|&i| c.0[i] != d.0[i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_input() {
        assert!(Arrangement::from_i64(2, &[&[0, 0]]).is_err());
        assert!(Arrangement::from_i64(2, &[&[1, 2], &[-2, -4]]).is_err());
        assert!(Arrangement::from_i64(2, &[&[1, 2, 3]]).is_err());
        let many: Vec<Vec<i64>> = (1..=17).map(|i| vec![1, i]).collect();
        let refs: Vec<&[i64]> = many.iter().map(|v| v.as_slice()).collect();
        assert!(matches!(Arrangement::from_i64(2, &refs), Err(Error::LimitExceeded(_))));
    }

    #[test]
    fn json_round_trip() {
        let a = Arrangement::from_json(r#"{"ell": 2, "normals": [[1, "0"], ["1/2", -3]]}"#).unwrap();
        assert_eq!(a.labels(), ["H1", "H2"]);
        let b = Arrangement::from_json(&a.to_json().to_string()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 16);
    }

    #[test]
    fn malformed_json_reports_position() {
        let e = Arrangement::from_json("{\"ell\": 2,\n \"normals\": [[1, 0]").unwrap_err();
        match e {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Arrangement::from_json(r#"{"ell": 1, "normals": [[0.5]]}"#).is_err());
    }

    #[test]
    fn sep_is_symmetric() {
        let c = SignVector::parse("++").unwrap();
        let d = SignVector::parse("-+").unwrap();
        assert_eq!(sep(&c, &d), vec![0]);
        assert_eq!(sep(&d, &c), vec![0]);
        assert!(sep(&c, &c).is_empty());
    }

    #[test]
    fn sign_order_puts_plus_first() {
        let mut v =
            [SignVector::parse("-+").unwrap(), SignVector::parse("++").unwrap(), SignVector::parse("+-").unwrap()];
        v.sort();
        let s: Vec<_> = v.iter().map(|x| x.to_string()).collect();
        assert_eq!(s, ["++", "+-", "-+"]);
        assert_eq!(SignVector::parse("-+-").unwrap().minus_mask(), 0b101);
    }
}
