//! JSON category descriptions and functional files.
//!
//! ```json
//! {
//!   "meta": {"name": "SPH(4)", "d": 4, "max_arity": 2},
//!   "objects": ["o"],
//!   "morphisms": [{"id": "e", "source": "o", "target": "o", "degree": 0, "dual": "x"}],
//!   "eps": [{"out": "e", "word": ["e", "e"], "value": "1/1"}]
//! }
//! ```
//!
//! Words are listed as `[a_n, …, a_1]`; `orientation` is optional.

use std::path::Path;

use serde_json::{json, Map, Value};

use crate::ainfty::{Category, CategoryData, EpsEntry, MorphismSpec, Orientation};
use crate::bar::{DoubleFunctional, Functional};
use crate::error::Error;
use crate::graded::{format_scalar, parse_scalar, LinComb, Scalar, Word};

struct Reader {
    strict: bool,
}

impl Reader {
    fn object<'a>(&self, v: &'a Value, at: &str, allowed: &[&str]) -> Result<&'a Map<String, Value>, Error> {
        let map = v
            .as_object()
            .ok_or_else(|| Error::parse(at, "expected an object"))?;
        if self.strict {
            if let Some(k) = map.keys().find(|k| !allowed.contains(&k.as_str())) {
                return Err(Error::parse(format!("{at}.{k}"), "unknown field"));
            }
        }
        Ok(map)
    }

    fn field<'a>(&self, map: &'a Map<String, Value>, at: &str, key: &str) -> Result<&'a Value, Error> {
        map.get(key)
            .ok_or_else(|| Error::parse(format!("{at}.{key}"), "missing field"))
    }

    fn string(&self, map: &Map<String, Value>, at: &str, key: &str) -> Result<String, Error> {
        self.field(map, at, key)?
            .as_str()
            .map(str::to_string)
            .ok_or_else(|| Error::parse(format!("{at}.{key}"), "expected a string"))
    }

    fn integer(&self, map: &Map<String, Value>, at: &str, key: &str) -> Result<i64, Error> {
        self.field(map, at, key)?
            .as_i64()
            .ok_or_else(|| Error::parse(format!("{at}.{key}"), "expected an integer"))
    }

    fn array<'a>(&self, v: &'a Value, at: &str) -> Result<&'a Vec<Value>, Error> {
        v.as_array().ok_or_else(|| Error::parse(at, "expected an array"))
    }

    fn strings(&self, v: &Value, at: &str) -> Result<Vec<String>, Error> {
        self.array(v, at)?
            .iter()
            .enumerate()
            .map(|(i, s)| {
                s.as_str()
                    .map(str::to_string)
                    .ok_or_else(|| Error::parse(format!("{at}[{i}]"), "expected a string"))
            })
            .collect()
    }

    fn scalar(&self, map: &Map<String, Value>, at: &str, key: &str) -> Result<Scalar, Error> {
        let s = self.string(map, at, key)?;
        parse_scalar(&s).map_err(|m| Error::parse(format!("{at}.{key}"), m))
    }
}

fn parse_json(text: &str) -> Result<Value, Error> {
    serde_json::from_str(text)
        .map_err(|e| Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string()))
}

/// Parses a category description. With `strict`, unknown fields are errors.
pub fn parse_spec_str(text: &str, strict: bool) -> Result<Category, Error> {
    let root = parse_json(text)?;
    let r = Reader { strict };
    let top = r.object(&root, "$", &["meta", "objects", "morphisms", "eps"])?;

    let meta = r.object(r.field(top, "$", "meta")?, "$.meta", &["name", "d", "max_arity"])?;
    let name = r.string(meta, "$.meta", "name")?;
    let d = r.integer(meta, "$.meta", "d")?;
    let max_arity = r.integer(meta, "$.meta", "max_arity")?;
    let max_arity = usize::try_from(max_arity)
        .map_err(|_| Error::parse("$.meta.max_arity", "must be nonnegative"))?;

    let objects = r.strings(r.field(top, "$", "objects")?, "$.objects")?;

    let mut morphisms = Vec::new();
    for (i, m) in r.array(r.field(top, "$", "morphisms")?, "$.morphisms")?.iter().enumerate() {
        let at = format!("$.morphisms[{i}]");
        let map = r.object(m, &at, &["id", "source", "target", "degree", "dual", "orientation"])?;
        let orientation = match map.get("orientation") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) if s == "plus" => Some(Orientation::Plus),
            Some(Value::String(s)) if s == "star" => Some(Orientation::Star),
            Some(_) => return Err(Error::parse(format!("{at}.orientation"), "expected \"plus\" or \"star\"")),
        };
        morphisms.push(MorphismSpec {
            id: r.string(map, &at, "id")?,
            source: r.string(map, &at, "source")?,
            target: r.string(map, &at, "target")?,
            degree: r.integer(map, &at, "degree")?,
            dual: r.string(map, &at, "dual")?,
            orientation,
        });
    }

    let mut eps = Vec::new();
    let eps_value = top.get("eps").cloned().unwrap_or(Value::Array(vec![]));
    for (i, e) in r.array(&eps_value, "$.eps")?.iter().enumerate() {
        let at = format!("$.eps[{i}]");
        let map = r.object(e, &at, &["out", "word", "value"])?;
        eps.push(EpsEntry {
            out: r.string(map, &at, "out")?,
            word: r.strings(r.field(map, &at, "word")?, &format!("{at}.word"))?,
            value: r.scalar(map, &at, "value")?,
        });
    }

    Category::new(CategoryData {
        name,
        d,
        max_arity,
        objects,
        morphisms,
        eps,
    })
}

pub fn parse_spec(path: &Path, strict: bool) -> Result<Category, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::parse(path.display().to_string(), e.to_string()))?;
    parse_spec_str(&text, strict)
}

pub fn spec_to_json(cat: &Category) -> Value {
    let data = cat.to_data();
    let morphisms: Vec<Value> = data
        .morphisms
        .iter()
        .map(|m| {
            let mut v = json!({
                "id": m.id,
                "source": m.source,
                "target": m.target,
                "degree": m.degree,
                "dual": m.dual,
            });
            if let Some(o) = m.orientation {
                v["orientation"] = json!(o.as_str());
            }
            v
        })
        .collect();
    let eps: Vec<Value> = data
        .eps
        .iter()
        .map(|e| json!({ "out": e.out, "word": e.word, "value": format_scalar(&e.value) }))
        .collect();
    json!({
        "meta": { "name": data.name, "d": data.d, "max_arity": data.max_arity },
        "objects": data.objects,
        "morphisms": morphisms,
        "eps": eps,
    })
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn to_canonical_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn serialize_spec(cat: &Category) -> String {
    to_canonical_string(&spec_to_json(cat))
}

/// Parses `[{"word": [...], "value": "n/d"}, …]`. Repeated words add up.
pub fn parse_functional_str(cat: &Category, text: &str, strict: bool) -> Result<Functional, Error> {
    let root = parse_json(text)?;
    let r = Reader { strict };
    let mut out = LinComb::new();
    for (i, item) in r.array(&root, "$")?.iter().enumerate() {
        let at = format!("$[{i}]");
        let map = r.object(item, &at, &["word", "value"])?;
        let ids = r.strings(r.field(map, &at, "word")?, &format!("{at}.word"))?;
        let w = cat
            .parse_word(&ids)
            .map_err(|m| Error::parse(format!("{at}.word"), m))?;
        if w.is_empty() {
            return Err(Error::parse(format!("{at}.word"), "empty word"));
        }
        if !cat.composable(&w) {
            return Err(Error::parse(format!("{at}.word"), "word is not composable"));
        }
        out.add(w, r.scalar(map, &at, "value")?);
    }
    Ok(out)
}

pub fn parse_functional(cat: &Category, path: &Path, strict: bool) -> Result<Functional, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::parse(path.display().to_string(), e.to_string()))?;
    parse_functional_str(cat, &text, strict)
}

pub fn functional_to_json(cat: &Category, f: &Functional) -> Value {
    Value::Array(
        f.iter()
            .map(|(w, c)| json!({ "word": cat.word_ids(w), "value": format_scalar(c) }))
            .collect(),
    )
}

pub fn double_functional_to_json(cat: &Category, big_f: &DoubleFunctional) -> Value {
    let ids = |w: &Word| cat.word_ids(w);
    Value::Array(
        big_f
            .iter()
            .map(|((u, v), c)| json!({ "left": ids(u), "right": ids(v), "value": format_scalar(c) }))
            .collect(),
    )
}
