//! JSON schemas for every toolkit object. Tables are nested arrays of depth
//! equal to the operation arity; constants are scalar entries.

use crate::algebra::{FiniteAlgebra, Mapping, TupleCodec};
use crate::congruence::Congruence;
use crate::error::{Error, Result};
use crate::polymorphism::MultiMap;
use crate::representation::{ActorMode, Representation};
use crate::signature::{SigKind, Signature, Term};
use crate::tensor::{TensorResult, TensorStatus};
use serde_json::{json, Map, Value};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::ParseError(msg.into())
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    let n = v
        .as_i64()
        .ok_or_else(|| parse_err(format!("{what}: expected an integer, got {v}")))?;
    if n < 0 {
        return Err(parse_err(format!("{what}: negative value {n}")));
    }
    Ok(n as usize)
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| parse_err(format!("{what}: expected an array")))
}

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| parse_err(format!("{what}: expected an object")))
}

fn field<'a>(obj: &'a Map<String, Value>, name: &str) -> Result<&'a Value> {
    obj.get(name)
        .ok_or_else(|| parse_err(format!("missing field `{name}`")))
}

pub fn signature_to_json(sig: &Signature) -> Value {
    json!({
        "kind": match sig.kind { SigKind::Omega1 => "omega1", SigKind::Omega2 => "omega2" },
        "ops": sig.ops.iter().map(|o| json!({"name": o.name, "arity": o.arity})).collect::<Vec<_>>(),
    })
}

pub fn signature_from_json(v: &Value) -> Result<Signature> {
    let obj = as_object(v, "signature")?;
    let kind = match field(obj, "kind")?.as_str() {
        Some("omega1") => SigKind::Omega1,
        Some("omega2") => SigKind::Omega2,
        other => return Err(parse_err(format!("signature kind: {other:?}"))),
    };
    let mut ops = Vec::new();
    for op in as_array(field(obj, "ops")?, "signature ops")? {
        let op = as_object(op, "signature op")?;
        let name = field(op, "name")?
            .as_str()
            .ok_or_else(|| parse_err("op name must be a string"))?
            .to_string();
        let arity = field(op, "arity")?;
        let arity = arity
            .as_i64()
            .ok_or_else(|| parse_err("op arity must be an integer"))?;
        if arity < 0 {
            return Err(Error::NegativeArity(name));
        }
        ops.push((name, arity as usize));
    }
    let refs: Vec<(&str, usize)> = ops.iter().map(|(n, a)| (n.as_str(), *a)).collect();
    Signature::new(kind, &refs)
}

fn table_to_nested(table: &[usize], size: usize, arity: usize) -> Value {
    if arity == 0 {
        return json!(table[0]);
    }
    let chunk = table.len() / size;
    if arity == 1 {
        return Value::Array(table.iter().map(|&v| json!(v)).collect());
    }
    Value::Array(
        (0..size)
            .map(|i| table_to_nested(&table[i * chunk..(i + 1) * chunk], size, arity - 1))
            .collect(),
    )
}

fn table_from_nested(v: &Value, size: usize, arity: usize, out: &mut Vec<usize>) -> Result<()> {
    if arity == 0 {
        out.push(as_usize(v, "table entry")?);
        return Ok(());
    }
    let arr = as_array(v, "table row")?;
    if arr.len() != size {
        return Err(parse_err(format!(
            "table row has {} entries, expected {size}",
            arr.len()
        )));
    }
    for row in arr {
        table_from_nested(row, size, arity - 1, out)?;
    }
    Ok(())
}

pub fn algebra_to_json(alg: &FiniteAlgebra) -> Value {
    let mut tables = Map::new();
    for (i, op) in alg.sig.ops.iter().enumerate() {
        tables.insert(
            op.name.clone(),
            table_to_nested(&alg.tables[i], alg.size, op.arity),
        );
    }
    json!({
        "sig": signature_to_json(&alg.sig),
        "size": alg.size,
        "tables": tables,
    })
}

pub fn algebra_from_json(v: &Value) -> Result<FiniteAlgebra> {
    let obj = as_object(v, "algebra")?;
    let sig = signature_from_json(field(obj, "sig")?)?;
    let size = as_usize(field(obj, "size")?, "algebra size")?;
    if size == 0 {
        return Err(parse_err("algebra size must be positive"));
    }
    let tables_obj = as_object(field(obj, "tables")?, "algebra tables")?;
    let mut tables = Vec::with_capacity(sig.ops.len());
    for op in &sig.ops {
        let t = tables_obj
            .get(&op.name)
            .ok_or_else(|| parse_err(format!("missing table for `{}`", op.name)))?;
        let mut flat = Vec::with_capacity(size.pow(op.arity as u32));
        table_from_nested(t, size, op.arity, &mut flat)?;
        tables.push(flat);
    }
    Ok(FiniteAlgebra::new(sig, size, tables))
}

pub fn mapping_to_json(m: &Mapping) -> Value {
    json!({"src_size": m.src_size, "dst_size": m.dst_size, "values": m.values})
}

pub fn mapping_from_json(v: &Value) -> Result<Mapping> {
    let obj = as_object(v, "mapping")?;
    let src = as_usize(field(obj, "src_size")?, "mapping src_size")?;
    let dst = as_usize(field(obj, "dst_size")?, "mapping dst_size")?;
    let values = as_array(field(obj, "values")?, "mapping values")?
        .iter()
        .map(|x| as_usize(x, "mapping value"))
        .collect::<Result<Vec<_>>>()?;
    let m = Mapping::new(src, dst, values);
    if !m.is_valid() {
        return Err(parse_err("mapping is not total or exceeds its codomain"));
    }
    Ok(m)
}

pub fn congruence_to_json(c: &Congruence) -> Value {
    json!({"size": c.carrier_size, "classes": c.classes()})
}

pub fn congruence_from_json(v: &Value) -> Result<Congruence> {
    let obj = as_object(v, "congruence")?;
    let size = as_usize(field(obj, "size")?, "congruence size")?;
    let classes = as_array(field(obj, "classes")?, "congruence classes")?
        .iter()
        .map(|c| {
            as_array(c, "congruence class")?
                .iter()
                .map(|x| as_usize(x, "class member"))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Congruence::from_classes(size, &classes)
}

pub fn representation_to_json(rep: &Representation) -> Value {
    let mut out = Map::new();
    out.insert("actor".into(), algebra_to_json(&rep.actor));
    out.insert("carrier".into(), algebra_to_json(&rep.carrier));
    out.insert(
        "action".into(),
        Value::Array(
            rep.action
                .iter()
                .map(|m| Value::Array(m.values.iter().map(|&v| json!(v)).collect()))
                .collect(),
        ),
    );
    match &rep.mode {
        ActorMode::Monoid { mul, unit } => {
            out.insert("actor_mode".into(), json!("monoid"));
            out.insert("mul".into(), json!(mul));
            out.insert("unit".into(), json!(unit));
        }
        ActorMode::Tabular => {
            out.insert("actor_mode".into(), json!("tabular"));
        }
    }
    Value::Object(out)
}

pub fn representation_from_json(v: &Value) -> Result<Representation> {
    let obj = as_object(v, "representation")?;
    let actor = algebra_from_json(field(obj, "actor")?)?;
    let carrier = algebra_from_json(field(obj, "carrier")?)?;
    let action = as_array(field(obj, "action")?, "representation action")?
        .iter()
        .map(|row| {
            let values = as_array(row, "action row")?
                .iter()
                .map(|x| as_usize(x, "action entry"))
                .collect::<Result<Vec<_>>>()?;
            Ok(Mapping::new(carrier.size, carrier.size, values))
        })
        .collect::<Result<Vec<_>>>()?;
    let mode = match field(obj, "actor_mode")?.as_str() {
        Some("monoid") => ActorMode::Monoid {
            mul: field(obj, "mul")?
                .as_str()
                .ok_or_else(|| parse_err("mul must be an op name"))?
                .to_string(),
            unit: field(obj, "unit")?
                .as_str()
                .ok_or_else(|| parse_err("unit must be an op name"))?
                .to_string(),
        },
        Some("tabular") => ActorMode::Tabular,
        other => return Err(parse_err(format!("actor_mode: {other:?}"))),
    };
    Ok(Representation {
        actor,
        carrier,
        action,
        mode,
    })
}

fn multimap_values_to_nested(values: &[usize], sizes: &[usize]) -> Value {
    if sizes.is_empty() {
        return json!(values[0]);
    }
    let chunk = values.len() / sizes[0];
    Value::Array(
        (0..sizes[0])
            .map(|i| multimap_values_to_nested(&values[i * chunk..(i + 1) * chunk], &sizes[1..]))
            .collect(),
    )
}

fn multimap_values_from_nested(v: &Value, sizes: &[usize], out: &mut Vec<usize>) -> Result<()> {
    if sizes.is_empty() {
        out.push(as_usize(v, "multimap entry")?);
        return Ok(());
    }
    let arr = as_array(v, "multimap level")?;
    if arr.len() != sizes[0] {
        return Err(parse_err(format!(
            "multimap level has {} entries, expected {}",
            arr.len(),
            sizes[0]
        )));
    }
    for row in arr {
        multimap_values_from_nested(row, &sizes[1..], out)?;
    }
    Ok(())
}

pub fn multimap_to_json(m: &MultiMap) -> Value {
    json!({
        "arity": m.arity(),
        "src_sizes": m.src_sizes,
        "dst_size": m.dst_size,
        "values": multimap_values_to_nested(&m.values, &m.src_sizes),
    })
}

pub fn multimap_from_json(v: &Value) -> Result<MultiMap> {
    let obj = as_object(v, "multimap")?;
    let arity = as_usize(field(obj, "arity")?, "multimap arity")?;
    let src_sizes = as_array(field(obj, "src_sizes")?, "multimap src_sizes")?
        .iter()
        .map(|x| as_usize(x, "src size"))
        .collect::<Result<Vec<_>>>()?;
    if src_sizes.len() != arity {
        return Err(parse_err("multimap arity does not match src_sizes"));
    }
    let dst_size = as_usize(field(obj, "dst_size")?, "multimap dst_size")?;
    let mut values = Vec::new();
    multimap_values_from_nested(field(obj, "values")?, &src_sizes, &mut values)?;
    let m = MultiMap::new(src_sizes, dst_size, values);
    if !m.is_valid() {
        return Err(parse_err("multimap is not total or exceeds its codomain"));
    }
    Ok(m)
}

pub fn term_to_json(t: &Term) -> Value {
    match t {
        Term::Gen(g) => json!({"gen": g}),
        Term::Apply(op, args) => json!({
            "op": op,
            "args": args.iter().map(term_to_json).collect::<Vec<_>>(),
        }),
        Term::Act(c, arg) => json!({"act": c, "arg": term_to_json(arg)}),
    }
}

pub fn term_from_json(v: &Value) -> Result<Term> {
    let obj = as_object(v, "term")?;
    if let Some(g) = obj.get("gen") {
        return Ok(Term::Gen(as_usize(g, "generator index")?));
    }
    if let Some(op) = obj.get("op") {
        let name = op
            .as_str()
            .ok_or_else(|| parse_err("term op must be a string"))?;
        let args = as_array(field(obj, "args")?, "term args")?
            .iter()
            .map(term_from_json)
            .collect::<Result<Vec<_>>>()?;
        return Ok(Term::Apply(name.to_string(), args));
    }
    if let Some(c) = obj.get("act") {
        let arg = term_from_json(field(obj, "arg")?)?;
        return Ok(Term::Act(as_usize(c, "actor element")?, Box::new(arg)));
    }
    Err(parse_err("term must have a gen, op, or act field"))
}

pub fn tensor_result_to_json(r: &TensorResult) -> Value {
    let status = match &r.status {
        TensorStatus::Complete => json!("complete"),
        TensorStatus::Truncated { depth, classes } => {
            json!({"truncated": {"depth": depth, "classes": classes}})
        }
    };
    json!({
        "quotient": algebra_to_json(&r.quotient),
        "induced": representation_to_json(&r.induced),
        "gen_map": multimap_to_json(&r.gen_map),
        "status": status,
        "class_terms": r.class_terms.iter().map(term_to_json).collect::<Vec<_>>(),
        "factors": r.factors.iter().map(representation_to_json).collect::<Vec<_>>(),
    })
}

pub fn tensor_result_from_json(v: &Value) -> Result<TensorResult> {
    let obj = as_object(v, "tensor result")?;
    let quotient = algebra_from_json(field(obj, "quotient")?)?;
    let induced = representation_from_json(field(obj, "induced")?)?;
    let gen_map = multimap_from_json(field(obj, "gen_map")?)?;
    let status = match field(obj, "status")? {
        Value::String(s) if s == "complete" => TensorStatus::Complete,
        Value::Object(o) => {
            let t = as_object(
                o.get("truncated")
                    .ok_or_else(|| parse_err("unknown tensor status"))?,
                "truncated status",
            )?;
            TensorStatus::Truncated {
                depth: as_usize(field(t, "depth")?, "truncated depth")?,
                classes: as_usize(field(t, "classes")?, "truncated classes")?,
            }
        }
        other => return Err(parse_err(format!("tensor status: {other}"))),
    };
    let class_terms = as_array(field(obj, "class_terms")?, "class terms")?
        .iter()
        .map(term_from_json)
        .collect::<Result<Vec<_>>>()?;
    let factors = as_array(field(obj, "factors")?, "tensor factors")?
        .iter()
        .map(representation_from_json)
        .collect::<Result<Vec<_>>>()?;
    let codec = TupleCodec {
        sizes: gen_map.src_sizes.clone(),
    };
    Ok(TensorResult {
        quotient,
        induced,
        gen_map,
        status,
        class_terms,
        factors,
        codec,
    })
}

/// Any toolkit object, discriminated by a `type` field.
#[derive(Debug, Clone, PartialEq)]
pub enum Object {
    Signature(Signature),
    Algebra(FiniteAlgebra),
    Mapping(Mapping),
    Congruence(Congruence),
    Representation(Representation),
    MultiMap(MultiMap),
    Tensor(Box<TensorResult>),
}

pub fn object_to_json(obj: &Object) -> Value {
    let (ty, mut body) = match obj {
        Object::Signature(s) => ("signature", signature_to_json(s)),
        Object::Algebra(a) => ("algebra", algebra_to_json(a)),
        Object::Mapping(m) => ("mapping", mapping_to_json(m)),
        Object::Congruence(c) => ("congruence", congruence_to_json(c)),
        Object::Representation(r) => ("representation", representation_to_json(r)),
        Object::MultiMap(m) => ("multimap", multimap_to_json(m)),
        Object::Tensor(t) => ("tensor", tensor_result_to_json(t)),
    };
    body.as_object_mut()
        .expect("object encodings are json objects")
        .insert("type".into(), json!(ty));
    body
}

pub fn object_from_json(v: &Value) -> Result<Object> {
    let obj = as_object(v, "object")?;
    match field(obj, "type")?.as_str() {
        Some("signature") => Ok(Object::Signature(signature_from_json(v)?)),
        Some("algebra") => Ok(Object::Algebra(algebra_from_json(v)?)),
        Some("mapping") => Ok(Object::Mapping(mapping_from_json(v)?)),
        Some("congruence") => Ok(Object::Congruence(congruence_from_json(v)?)),
        Some("representation") => Ok(Object::Representation(representation_from_json(v)?)),
        Some("multimap") => Ok(Object::MultiMap(multimap_from_json(v)?)),
        Some("tensor") => Ok(Object::Tensor(Box::new(tensor_result_from_json(v)?))),
        other => Err(parse_err(format!("unknown object type {other:?}"))),
    }
}

pub fn parse_object_str(s: &str) -> Result<Object> {
    let v: Value =
        serde_json::from_str(s).map_err(|e| parse_err(format!("invalid JSON: {e}")))?;
    object_from_json(&v)
}
