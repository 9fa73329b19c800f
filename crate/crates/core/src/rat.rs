//! Exact rationals and dense rational vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

pub type Rat = BigRational;

/// A point or covector of `R^d` with exact coordinates.
pub type QVec = Vec<Rat>;

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn qvec(xs: &[i64]) -> QVec {
    xs.iter().map(|&x| int(x)).collect()
}

pub fn zeros(n: usize) -> QVec {
    vec![Rat::zero(); n]
}

pub fn unit(n: usize, i: usize) -> QVec {
    let mut v = zeros(n);
    v[i] = Rat::one();
    v
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    let mut s = Rat::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

pub fn add(a: &[Rat], b: &[Rat]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[Rat]) -> QVec {
    a.iter().map(|x| -x).collect()
}

pub fn scale(a: &[Rat], s: &Rat) -> QVec {
    a.iter().map(|x| x * s).collect()
}

/// `a + s*b`
pub fn axpy(a: &[Rat], s: &Rat, b: &[Rat]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub fn is_zero(a: &[Rat]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn sum(vs: &[QVec], n: usize) -> QVec {
    let mut s = zeros(n);
    for v in vs {
        for (x, y) in s.iter_mut().zip(v) {
            *x += y;
        }
    }
    s
}

pub fn mean(vs: &[QVec]) -> QVec {
    let n = vs[0].len();
    let k = int(vs.len() as i64);
    sum(vs, n).into_iter().map(|x| x / &k).collect()
}

pub fn is_integral(a: &[Rat]) -> bool {
    a.iter().all(|x| x.is_integer())
}

/// Least common multiple of all denominators.
pub fn denom_lcm(a: &[Rat]) -> BigInt {
    a.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Positive multiple of `a` with coprime integer entries; the zero vector is returned unchanged.
pub fn primitive(a: &[Rat]) -> QVec {
    if is_zero(a) {
        return a.to_vec();
    }
    let l = denom_lcm(a);
    let ints: Vec<BigInt> = a.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter().map(|x| Rat::from_integer(x / &g)).collect()
}

/// Like [`primitive`] but also flips the sign so the first nonzero entry is positive.
pub fn primitive_signed(a: &[Rat]) -> QVec {
    let p = primitive(a);
    match p.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => neg(&p),
        _ => p,
    }
}

/// Lexicographic comparison of equal-length vectors.
pub fn lex_cmp(a: &[Rat], b: &[Rat]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

pub fn sign(x: &Rat) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

pub fn to_i64_vec(a: &[Rat]) -> Option<Vec<i64>> {
    a.iter()
        .map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None })
        .collect()
}

pub fn fmt_rat(x: &Rat) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn fmt_vec(a: &[Rat]) -> String {
    let parts: Vec<String> = a.iter().map(fmt_rat).collect();
    format!("[{}]", parts.join(","))
}

/// JSON form of a rational: `[num, den]`, with each part written as a string
/// once it no longer fits in 64 bits.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JRat(pub Rat);

impl From<Rat> for JRat {
    fn from(r: Rat) -> Self {
        JRat(r)
    }
}

fn ser_bigint<S: SerializeTuple>(t: &mut S, x: &BigInt) -> Result<(), S::Error> {
    match x.to_i64() {
        Some(v) => t.serialize_element(&v),
        None => t.serialize_element(&x.to_string()),
    }
}

impl Serialize for JRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        ser_bigint(&mut t, self.0.numer())?;
        ser_bigint(&mut t, self.0.denom())?;
        t.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IntPart {
    Int(i64),
    Str(String),
}

impl IntPart {
    fn into_bigint<E: de::Error>(self) -> Result<BigInt, E> {
        match self {
            IntPart::Int(v) => Ok(BigInt::from(v)),
            IntPart::Str(s) => s.trim().parse::<BigInt>().map_err(|_| E::custom(format!("bad integer {s:?}"))),
        }
    }
}

struct JRatVisitor;

impl<'de> Visitor<'de> for JRatVisitor {
    type Value = JRat;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational as [num, den] or an integer")
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<JRat, E> {
        Ok(JRat(int(v)))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<JRat, E> {
        Ok(JRat(Rat::from_integer(BigInt::from(v))))
    }

    fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<JRat, A::Error> {
        let n: IntPart = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(0, &self))?;
        let d: IntPart = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(1, &self))?;
        if seq.next_element::<IntPart>()?.is_some() {
            return Err(de::Error::invalid_length(3, &self));
        }
        let n = n.into_bigint::<A::Error>()?;
        let d = d.into_bigint::<A::Error>()?;
        if d.is_zero() {
            return Err(de::Error::custom("zero denominator"));
        }
        Ok(JRat(Rat::new(n, d)))
    }
}

impl<'de> Deserialize<'de> for JRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        d.deserialize_any(JRatVisitor)
    }
}

pub fn jvec(a: &[Rat]) -> Vec<JRat> {
    a.iter().cloned().map(JRat).collect()
}

pub fn from_jvec(a: &[JRat]) -> QVec {
    a.iter().map(|x| x.0.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_scaling() {
        assert_eq!(primitive(&[frac(1, 2), frac(-3, 4)]), qvec(&[2, -3]));
        assert_eq!(primitive_signed(&[frac(-1, 2), frac(3, 4)]), qvec(&[2, -3]));
        assert_eq!(primitive(&qvec(&[0, 0])), qvec(&[0, 0]));
    }

    #[test]
    fn json_round_trip() {
        let big = Rat::new(BigInt::from(1u64) << 70, BigInt::from(3));
        for r in [frac(-7, 3), int(0), big] {
            let s = serde_json::to_string(&JRat(r.clone())).unwrap();
            let back: JRat = serde_json::from_str(&s).unwrap();
            assert_eq!(back.0, r);
        }
        let s = serde_json::to_string(&JRat(frac(5, 2))).unwrap();
        assert_eq!(s, "[5,2]");
        let plain: JRat = serde_json::from_str("4").unwrap();
        assert_eq!(plain.0, int(4));
        assert!(serde_json::from_str::<JRat>("[1,0]").is_err());
    }
}
