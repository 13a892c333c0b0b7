//! JSON forms of matrices, tuples, witnesses and algebras.
//!
//! Scalars are strings (`"3"`, `"1+2*t"`) and need the field to be read
//! back, so every file is a document that names its field once:
//! `{"schema": 1, "field": {"p": 7, "deg": 1}, ...payload}`.

use serde_json::{json, Map, Value};

use crate::algebras::AlgebraStructure;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Mat;
use crate::tuples::{
    CongruenceWitness, EquivalenceWitness, MatTuple, PairClassWitness, SimilarityWitness, SubstitutionMatrix, Witness,
};

pub const SCHEMA_VERSION: u64 = 1;

pub trait JsonCodec: Sized {
    fn to_json(&self) -> Value;
    fn from_json(field: Field, v: &Value) -> Result<Self>;
}

fn parse_err(what: impl Into<String>) -> Error {
    Error::Parse(what.into())
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(format!("missing key {key:?}")))
}

fn get_usize(v: &Value, key: &str) -> Result<usize> {
    get(v, key)?.as_u64().map(|x| x as usize).ok_or_else(|| parse_err(format!("{key:?} must be a count")))
}

impl JsonCodec for Mat {
    fn to_json(&self) -> Value {
        let f = self.field();
        let entries: Vec<Vec<String>> = (0..self.rows()).map(|i| self.row(i).iter().map(|&e| f.format(e)).collect()).collect();
        json!({"rows": self.rows(), "cols": self.cols(), "entries": entries})
    }

    fn from_json(field: Field, v: &Value) -> Result<Mat> {
        let rows = get_usize(v, "rows")?;
        let cols = get_usize(v, "cols")?;
        let entries = get(v, "entries")?.as_array().ok_or_else(|| parse_err("entries must be an array"))?;
        if entries.len() != rows {
            return Err(parse_err(format!("{} entry rows for {rows} rows", entries.len())));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for row in entries {
            let row = row.as_array().ok_or_else(|| parse_err("entry row must be an array"))?;
            if row.len() != cols {
                return Err(parse_err(format!("entry row of length {} for {cols} columns", row.len())));
            }
            for e in row {
                let elem = match e {
                    Value::String(s) => field.parse(s)?,
                    Value::Number(n) => field.from_i64(n.as_i64().ok_or_else(|| parse_err("integer entries only"))?),
                    _ => return Err(parse_err("entries must be strings or integers")),
                };
                data.push(elem);
            }
        }
        Mat::new(field, rows, cols, data)
    }
}

impl JsonCodec for MatTuple {
    fn to_json(&self) -> Value {
        json!({"t": self.len(), "mats": self.mats().iter().map(Mat::to_json).collect::<Vec<_>>()})
    }

    fn from_json(field: Field, v: &Value) -> Result<MatTuple> {
        let mats = get(v, "mats")?.as_array().ok_or_else(|| parse_err("mats must be an array"))?;
        let mats = mats.iter().map(|m| Mat::from_json(field, m)).collect::<Result<Vec<_>>>()?;
        if let Some(t) = v.get("t").and_then(Value::as_u64) {
            if t as usize != mats.len() {
                return Err(parse_err(format!("t = {t} but {} matrices", mats.len())));
            }
        }
        MatTuple::new(mats)
    }
}

impl JsonCodec for SubstitutionMatrix {
    fn to_json(&self) -> Value {
        self.as_mat().to_json()
    }

    fn from_json(field: Field, v: &Value) -> Result<SubstitutionMatrix> {
        SubstitutionMatrix::from_mat(Mat::from_json(field, v)?)
    }
}

impl JsonCodec for Witness {
    fn to_json(&self) -> Value {
        let mut v = match self {
            Witness::Equivalence(w) => json!({"left": w.left.to_json(), "right": w.right.to_json()}),
            Witness::Congruence(w) => json!({"s": w.s.to_json()}),
            Witness::Similarity(w) => json!({"s": w.s.to_json()}),
            Witness::Substitution { r } => json!({"r": r.to_json()}),
            Witness::PairClass(w) => json!({"s": w.congruence.s.to_json(), "r": w.substitution.to_json()}),
        };
        v["kind"] = json!(self.kind());
        v
    }

    fn from_json(field: Field, v: &Value) -> Result<Witness> {
        let kind = get(v, "kind")?.as_str().ok_or_else(|| parse_err("kind must be a string"))?;
        let mat = |key: &str| Mat::from_json(field, get(v, key)?);
        Ok(match kind {
            "equivalence" => Witness::Equivalence(EquivalenceWitness::new(mat("left")?, mat("right")?)?),
            "congruence" => Witness::Congruence(CongruenceWitness::new(mat("s")?)?),
            "similarity" => Witness::Similarity(SimilarityWitness::new(mat("s")?)?),
            "substitution" => Witness::Substitution { r: SubstitutionMatrix::from_json(field, get(v, "r")?)? },
            "pair-class" => Witness::PairClass(PairClassWitness {
                congruence: CongruenceWitness::new(mat("s")?)?,
                substitution: SubstitutionMatrix::from_json(field, get(v, "r")?)?,
            }),
            other => return Err(parse_err(format!("unknown witness kind {other:?}"))),
        })
    }
}

macro_rules! via_witness {
    ($ty:ty, $variant:ident) => {
        impl JsonCodec for $ty {
            fn to_json(&self) -> Value {
                Witness::$variant(self.clone()).to_json()
            }

            fn from_json(field: Field, v: &Value) -> Result<$ty> {
                match Witness::from_json(field, v)? {
                    Witness::$variant(w) => Ok(w),
                    other => Err(parse_err(format!("expected {} witness, got {}", stringify!($variant), other.kind()))),
                }
            }
        }
    };
}

via_witness!(EquivalenceWitness, Equivalence);
via_witness!(CongruenceWitness, Congruence);
via_witness!(SimilarityWitness, Similarity);
via_witness!(PairClassWitness, PairClass);

impl JsonCodec for AlgebraStructure {
    fn to_json(&self) -> Value {
        let f = self.field();
        let d = self.dim();
        let gamma: Vec<Vec<Vec<String>>> = (0..d)
            .map(|i| (0..d).map(|j| self.product(i, j).iter().map(|&e| f.format(e)).collect()).collect())
            .collect();
        json!({"dim": d, "unital": self.unital(), "gamma": gamma})
    }

    fn from_json(field: Field, v: &Value) -> Result<AlgebraStructure> {
        let d = get_usize(v, "dim")?;
        let unital = match get(v, "unital")? {
            Value::Null => None,
            u => Some(u.as_u64().ok_or_else(|| parse_err("unital must be an index or null"))? as usize),
        };
        let gamma = get(v, "gamma")?;
        let mut flat = Vec::with_capacity(d * d * d);
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let s = gamma
                        .get(i)
                        .and_then(|x| x.get(j))
                        .and_then(|x| x.get(k))
                        .and_then(Value::as_str)
                        .ok_or_else(|| parse_err(format!("gamma[{i}][{j}][{k}] missing")))?;
                    flat.push(field.parse(s)?);
                }
            }
        }
        AlgebraStructure::new(field, d, flat, unital)
    }
}

/// Wraps a payload object with the schema version and field.
pub fn document(field: Field, payload: Value) -> Value {
    let mut out = Map::new();
    out.insert("schema".into(), json!(SCHEMA_VERSION));
    out.insert("field".into(), json!({"p": field.p(), "deg": field.deg()}));
    match payload {
        Value::Object(m) => out.extend(m),
        other => {
            out.insert("value".into(), other);
        }
    }
    Value::Object(out)
}

/// Field named by a document.
pub fn document_field(doc: &Value) -> Result<Field> {
    let schema = get(doc, "schema")?.as_u64().ok_or_else(|| parse_err("schema must be an integer"))?;
    if schema != SCHEMA_VERSION {
        return Err(parse_err(format!("unsupported schema {schema}")));
    }
    let f = get(doc, "field")?;
    let p = get(f, "p")?.as_u64().ok_or_else(|| parse_err("field.p must be an integer"))?;
    let deg = get(f, "deg")?.as_u64().ok_or_else(|| parse_err("field.deg must be an integer"))?;
    Field::new(p, deg as u32)
}

pub fn to_document<T: JsonCodec>(field: Field, value: &T) -> Value {
    document(field, value.to_json())
}

pub fn from_document<T: JsonCodec>(doc: &Value) -> Result<(Field, T)> {
    let field = document_field(doc)?;
    Ok((field, T::from_json(field, doc)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn matrix_round_trip_over_extension() {
        let f = Field::new(7, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let m = Mat::random(f, 2, 3, &mut rng);
        let doc = to_document(f, &m);
        assert_eq!(doc["schema"], 1);
        assert_eq!(doc["field"]["deg"], 2);
        let (g, back): (Field, Mat) = from_document(&doc).unwrap();
        assert_eq!((g, back), (f, m));
    }

    #[test]
    fn witness_kinds_round_trip() {
        let f = Field::prime(5).unwrap();
        let s = Mat::from_i64(f, &[&[1, 2], &[0, 1]]);
        let r = SubstitutionMatrix::from_i64(f, [[0, 1], [1, 0]]).unwrap();
        let all = vec![
            Witness::Equivalence(EquivalenceWitness::new(s.clone(), s.transpose()).unwrap()),
            Witness::Congruence(CongruenceWitness::new(s.clone()).unwrap()),
            Witness::Similarity(SimilarityWitness::new(s.clone()).unwrap()),
            Witness::Substitution { r: r.clone() },
            Witness::PairClass(PairClassWitness { congruence: CongruenceWitness::new(s).unwrap(), substitution: r }),
        ];
        for w in all {
            let v = w.to_json();
            assert_eq!(v["kind"], w.kind());
            assert_eq!(Witness::from_json(f, &v).unwrap(), w);
        }
    }

    #[test]
    fn tuple_shape_is_checked() {
        let f = Field::prime(3).unwrap();
        let bad = json!({"t": 2, "mats": [{"rows": 1, "cols": 1, "entries": [["1"]]}]});
        assert!(MatTuple::from_json(f, &bad).is_err());
        let good = json!({"t": 1, "mats": [{"rows": 1, "cols": 2, "entries": [["1", -1]]}]});
        assert_eq!(MatTuple::from_json(f, &good).unwrap().get(0), &Mat::from_i64(f, &[&[1, 2]]));
    }
}
