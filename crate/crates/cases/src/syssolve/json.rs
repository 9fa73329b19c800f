//! Serialization of exact rationals as `[num, den]` pairs.

use dualcell_core::rat::{jvec, JRat, QVec, Rat};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::Serializer;
use std::collections::BTreeMap;

pub fn ser_rat<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_some(&JRat(x.clone()))
}

pub fn ser_qvec<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(jvec(v))
}

pub fn ser_qvecs<S: Serializer>(vs: &[QVec], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(vs.len()))?;
    for v in vs {
        seq.serialize_element(&jvec(v))?;
    }
    seq.end()
}

pub fn ser_opt_qvec<S: Serializer>(v: &Option<QVec>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_some(&jvec(v)),
        None => s.serialize_none(),
    }
}

pub fn ser_gauge<S: Serializer>(g: &BTreeMap<usize, QVec>, s: S) -> Result<S::Ok, S::Error> {
    let mut m = s.serialize_map(Some(g.len()))?;
    for (k, v) in g {
        m.serialize_entry(k, &jvec(v))?;
    }
    m.end()
}

pub fn ser_weights<S: Serializer>(w: &[(usize, Rat)], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(w.len()))?;
    for (l, x) in w {
        seq.serialize_element(&(l, JRat(x.clone())))?;
    }
    seq.end()
}
