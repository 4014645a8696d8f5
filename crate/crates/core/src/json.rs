//! Wire helpers: complex scalars travel as `[re, im]` pairs of `f64`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::scalar::{Cx, Real};

pub fn pair<R: Real>(c: &Cx<R>) -> [f64; 2] {
    [c.re.to_f64_lossy(), c.im.to_f64_lossy()]
}

pub fn unpair<R: Real>(p: [f64; 2]) -> Cx<R> {
    Cx::new(R::lit(p[0]), R::lit(p[1]))
}

pub fn pairs<R: Real>(v: &[Cx<R>]) -> Vec<[f64; 2]> {
    v.iter().map(pair).collect()
}

pub fn unpairs<R: Real>(v: &[[f64; 2]]) -> Vec<Cx<R>> {
    v.iter().copied().map(unpair).collect()
}

/// `#[serde(with = "crate::json::cx_vec")]` for `Vec<Cx<R>>` fields.
pub mod cx_vec {
    use super::*;

    pub fn serialize<R: Real, S: Serializer>(v: &[Cx<R>], s: S) -> Result<S::Ok, S::Error> {
        pairs(v).serialize(s)
    }

    pub fn deserialize<'de, R: Real, D: Deserializer<'de>>(d: D) -> Result<Vec<Cx<R>>, D::Error> {
        let raw = Vec::<[f64; 2]>::deserialize(d)?;
        Ok(unpairs(&raw))
    }
}

/// `#[serde(with = "crate::json::cx_one")]` for a single `Cx<R>` field.
pub mod cx_one {
    use super::*;

    pub fn serialize<R: Real, S: Serializer>(v: &Cx<R>, s: S) -> Result<S::Ok, S::Error> {
        pair(v).serialize(s)
    }

    pub fn deserialize<'de, R: Real, D: Deserializer<'de>>(d: D) -> Result<Cx<R>, D::Error> {
        Ok(unpair(<[f64; 2]>::deserialize(d)?))
    }
}

/// `Vec<Vec<Cx<R>>>` as nested arrays of pairs.
pub mod cx_vec_vec {
    use super::*;

    pub fn serialize<R: Real, S: Serializer>(v: &[Vec<Cx<R>>], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|row| pairs(row)).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, R: Real, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Cx<R>>>, D::Error> {
        let raw = Vec::<Vec<[f64; 2]>>::deserialize(d)?;
        Ok(raw.iter().map(|row| unpairs(row)).collect())
    }
}
