//! JSON file formats for every object the toolkit exchanges.
//!
//! A complex scalar is either a two-element array `[re, im]` of numbers or a
//! string tag from a closed catalog of exact constants
//! ([`symbolic_constant`]); tags keep the shipped fixture files auditable
//! against their typeset sources. A matrix is an array of row arrays of
//! scalars; a vector is a flat array of scalars. Typed objects carry a
//! `"type"` discriminator:
//!
//! * `{"type":"qls","n":N,"entries":[[vec,…],…]}`
//! * `{"type":"qlis","n":N,"d":D,"block_dims":[[a,…],…],"blocks":[[matrix|null,…],…]}`
//! * `{"type":"sppm","n":N,"d":D,"parts":[[matrix,…],…]}`
//! * `{"type":"unitary_family","d":D,"members":[matrix,…]}`
//! * `{"type":"encoder","n":N,"d":D,"map":matrix,"normalization":number}`
//!
//! Writers always emit numeric `[re, im]` scalars, so written files re-read
//! bit-identically.

use serde_json::{json, Value};

use crate::codes::EncoderTensor;
use crate::linalg::{CMatrix, Complex64};
use crate::qlis::{IsometrySquare, SkewPpm};
use crate::qls::QuantumLatinSquare;
use crate::{Error, Result};

/// Expand a symbolic scalar tag. A leading `-` negates any catalog entry.
///
/// `w` is the primitive cube root of unity e^{2πi/3}; `sqrt2/3` is √(2/3).
pub fn symbolic_constant(tag: &str) -> Option<Complex64> {
    if let Some(rest) = tag.strip_prefix('-') {
        return base_constant(rest).map(|z| -z);
    }
    base_constant(tag)
}

fn base_constant(tag: &str) -> Option<Complex64> {
    let s2 = 1.0 / 2f64.sqrt();
    let s3 = 1.0 / 3f64.sqrt();
    let s5 = 1.0 / 5f64.sqrt();
    let s6 = 1.0 / 6f64.sqrt();
    let w = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
    Some(match tag {
        "1/sqrt2" => Complex64::new(s2, 0.0),
        "1/sqrt3" => Complex64::new(s3, 0.0),
        "1/sqrt5" => Complex64::new(s5, 0.0),
        "1/sqrt6" => Complex64::new(s6, 0.0),
        "2/sqrt5" => Complex64::new(2.0 * s5, 0.0),
        "i/sqrt3" => Complex64::new(0.0, s3),
        "i/sqrt5" => Complex64::new(0.0, s5),
        "i/sqrt6" => Complex64::new(0.0, s6),
        "2i/sqrt5" => Complex64::new(0.0, 2.0 * s5),
        "w" => w,
        "w*" => w.conj(),
        "w/sqrt3" => w * s3,
        "w*/sqrt3" => w.conj() * s3,
        "(1+i)/sqrt3" => Complex64::new(s3, s3),
        "(1-i)/sqrt6" => Complex64::new(s6, -s6),
        "1/sqrt6+i/sqrt3" => Complex64::new(s6, s3),
        "1/sqrt3-i/sqrt6" => Complex64::new(s3, -s6),
        "sqrt2/3" => Complex64::new((2.0f64 / 3.0).sqrt(), 0.0),
        _ => return None,
    })
}

fn parse_scalar(v: &Value, context: &str) -> Result<Complex64> {
    match v {
        Value::String(tag) => symbolic_constant(tag)
            .ok_or_else(|| Error::Parse(format!("unknown scalar tag {tag:?} in {context}"))),
        Value::Array(parts) if parts.len() == 2 => {
            let re = parts[0]
                .as_f64()
                .ok_or_else(|| Error::Parse(format!("non-numeric real part in {context}")))?;
            let im = parts[1]
                .as_f64()
                .ok_or_else(|| Error::Parse(format!("non-numeric imaginary part in {context}")))?;
            if !re.is_finite() || !im.is_finite() {
                return Err(Error::Parse(format!("non-finite scalar in {context}")));
            }
            Ok(Complex64::new(re, im))
        }
        _ => Err(Error::Parse(format!(
            "scalar in {context} must be [re, im] or a tag string"
        ))),
    }
}

fn parse_vector(v: &Value, context: &str) -> Result<Vec<Complex64>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{context} must be an array of scalars")))?;
    arr.iter().map(|s| parse_scalar(s, context)).collect()
}

fn parse_matrix(v: &Value, context: &str) -> Result<CMatrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{context} must be an array of rows")))?;
    let data = rows
        .iter()
        .map(|row| parse_vector(row, context))
        .collect::<Result<Vec<_>>>()?;
    CMatrix::from_rows(&data)
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name).ok_or_else(|| Error::Parse(format!("missing field {name:?}")))
}

fn usize_field(v: &Value, name: &str) -> Result<usize> {
    field(v, name)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::Parse(format!("field {name:?} must be a nonnegative integer")))
}

/// Any object a file can hold, discriminated by its `"type"` field.
#[derive(Debug, Clone)]
pub enum FileContent {
    Qls(QuantumLatinSquare),
    Qlis(IsometrySquare),
    Sppm(SkewPpm),
    /// Structurally parsed; unitarity of the members is a separate check.
    UnitaryFamily { d: usize, members: Vec<CMatrix> },
    Encoder(EncoderTensor),
}

impl FileContent {
    pub fn kind(&self) -> &'static str {
        match self {
            FileContent::Qls(_) => "qls",
            FileContent::Qlis(_) => "qlis",
            FileContent::Sppm(_) => "sppm",
            FileContent::UnitaryFamily { .. } => "unitary_family",
            FileContent::Encoder(_) => "encoder",
        }
    }
}

pub fn parse_value(v: &Value) -> Result<FileContent> {
    let kind = field(v, "type")?
        .as_str()
        .ok_or_else(|| Error::Parse("field \"type\" must be a string".into()))?;
    match kind {
        "qls" => parse_qls(v).map(FileContent::Qls),
        "qlis" => parse_qlis(v).map(FileContent::Qlis),
        "sppm" => parse_sppm(v).map(FileContent::Sppm),
        "unitary_family" => {
            let d = usize_field(v, "d")?;
            let members = field(v, "members")?
                .as_array()
                .ok_or_else(|| Error::Parse("\"members\" must be an array".into()))?
                .iter()
                .enumerate()
                .map(|(i, m)| parse_matrix(m, &format!("member {i}")))
                .collect::<Result<Vec<_>>>()?;
            for (i, m) in members.iter().enumerate() {
                if m.rows() != d || m.cols() != d {
                    return Err(Error::Shape(format!(
                        "member {i} has shape {}x{}, expected {d}x{d}",
                        m.rows(),
                        m.cols()
                    )));
                }
            }
            Ok(FileContent::UnitaryFamily { d, members })
        }
        "encoder" => {
            let n = usize_field(v, "n")?;
            let d = usize_field(v, "d")?;
            let map = parse_matrix(field(v, "map")?, "encoder map")?;
            let normalization = field(v, "normalization")?
                .as_f64()
                .ok_or_else(|| Error::Parse("\"normalization\" must be a number".into()))?;
            EncoderTensor::new(n, d, map, normalization).map(FileContent::Encoder)
        }
        other => Err(Error::Parse(format!("unknown file type {other:?}"))),
    }
}

pub fn parse_str(s: &str) -> Result<FileContent> {
    let v: Value =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    parse_value(&v)
}

pub fn read_file(path: &std::path::Path) -> Result<FileContent> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_str(&text)
}

fn parse_qls(v: &Value) -> Result<QuantumLatinSquare> {
    let n = usize_field(v, "n")?;
    let rows = field(v, "entries")?
        .as_array()
        .ok_or_else(|| Error::Parse("\"entries\" must be an array of rows".into()))?;
    if rows.len() != n {
        return Err(Error::Shape(format!("expected {n} rows, found {}", rows.len())));
    }
    let entries = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let cells = row
                .as_array()
                .ok_or_else(|| Error::Parse(format!("row {i} must be an array of vectors")))?;
            cells
                .iter()
                .enumerate()
                .map(|(j, cell)| {
                    let data = parse_vector(cell, &format!("entry ({i},{j})"))?;
                    if data.len() != n {
                        return Err(Error::Shape(format!(
                            "entry ({i},{j}) has {} components, expected {n}",
                            data.len()
                        )));
                    }
                    if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                        return Err(Error::Shape(format!("non-finite entry ({i},{j})")));
                    }
                    Ok(CMatrix::col_from_slice(&data))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    QuantumLatinSquare::from_entries(entries)
}

fn parse_qlis(v: &Value) -> Result<IsometrySquare> {
    let n = usize_field(v, "n")?;
    let d = usize_field(v, "d")?;
    let dims_rows = field(v, "block_dims")?
        .as_array()
        .ok_or_else(|| Error::Parse("\"block_dims\" must be an array of rows".into()))?;
    let block_rows = field(v, "blocks")?
        .as_array()
        .ok_or_else(|| Error::Parse("\"blocks\" must be an array of rows".into()))?;
    if dims_rows.len() != n || block_rows.len() != n {
        return Err(Error::Shape("block arrays must have n rows".into()));
    }
    let mut blocks = Vec::with_capacity(n);
    for i in 0..n {
        let dim_row = dims_rows[i]
            .as_array()
            .ok_or_else(|| Error::Parse(format!("block_dims row {i} must be an array")))?;
        let blk_row = block_rows[i]
            .as_array()
            .ok_or_else(|| Error::Parse(format!("blocks row {i} must be an array")))?;
        if dim_row.len() != n || blk_row.len() != n {
            return Err(Error::Shape(format!("row {i} must have {n} cells")));
        }
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let a = dim_row[j]
                .as_u64()
                .ok_or_else(|| Error::Parse(format!("block_dims[{i}][{j}] must be an integer")))?
                as usize;
            match (&blk_row[j], a) {
                (Value::Null, 0) => row.push(None),
                (Value::Null, _) => {
                    return Err(Error::Shape(format!(
                        "cell ({i},{j}) declares a_ij={a} but has no block"
                    )))
                }
                (_, 0) => {
                    return Err(Error::Shape(format!(
                        "cell ({i},{j}) declares a_ij=0 but carries a block"
                    )))
                }
                (val, _) => {
                    let m = parse_matrix(val, &format!("block ({i},{j})"))?;
                    if m.rows() != d || m.cols() != a {
                        return Err(Error::Shape(format!(
                            "block ({i},{j}) has shape {}x{}, declared {d}x{a}",
                            m.rows(),
                            m.cols()
                        )));
                    }
                    row.push(Some(m));
                }
            }
        }
        blocks.push(row);
    }
    IsometrySquare::new(n, d, blocks)
}

fn parse_sppm(v: &Value) -> Result<SkewPpm> {
    let n = usize_field(v, "n")?;
    let d = usize_field(v, "d")?;
    let rows = field(v, "parts")?
        .as_array()
        .ok_or_else(|| Error::Parse("\"parts\" must be an array of rows".into()))?;
    if rows.len() != n {
        return Err(Error::Shape(format!("expected {n} part rows, found {}", rows.len())));
    }
    let parts = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.as_array()
                .ok_or_else(|| Error::Parse(format!("parts row {i} must be an array")))?
                .iter()
                .enumerate()
                .map(|(j, cell)| parse_matrix(cell, &format!("part ({i},{j})")))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SkewPpm::new(n, d, parts)
}

pub fn scalar_to_value(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn matrix_to_value(m: &CMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| scalar_to_value(m.get(i, j))).collect()))
            .collect(),
    )
}

fn col_to_value(v: &CMatrix) -> Value {
    Value::Array((0..v.rows()).map(|i| scalar_to_value(v.get(i, 0))).collect())
}

pub fn qls_to_value(q: &QuantumLatinSquare) -> Value {
    json!({
        "type": "qls",
        "n": q.n(),
        "entries": Value::Array(
            q.entries()
                .iter()
                .map(|row| Value::Array(row.iter().map(col_to_value).collect()))
                .collect(),
        ),
    })
}

pub fn qlis_to_value(s: &IsometrySquare) -> Value {
    json!({
        "type": "qlis",
        "n": s.n(),
        "d": s.d(),
        "block_dims": s.block_dims(),
        "blocks": Value::Array(
            s.blocks()
                .iter()
                .map(|row| {
                    Value::Array(
                        row.iter()
                            .map(|b| b.as_ref().map_or(Value::Null, matrix_to_value))
                            .collect(),
                    )
                })
                .collect(),
        ),
    })
}

pub fn sppm_to_value(t: &SkewPpm) -> Value {
    json!({
        "type": "sppm",
        "n": t.n(),
        "d": t.d(),
        "parts": Value::Array(
            t.parts()
                .iter()
                .map(|row| Value::Array(row.iter().map(matrix_to_value).collect()))
                .collect(),
        ),
    })
}

pub fn unitary_family_to_value(d: usize, members: &[CMatrix]) -> Value {
    json!({
        "type": "unitary_family",
        "d": d,
        "members": Value::Array(members.iter().map(matrix_to_value).collect()),
    })
}

pub fn encoder_to_value(e: &EncoderTensor) -> Value {
    json!({
        "type": "encoder",
        "n": e.n(),
        "d": e.d(),
        "map": matrix_to_value(e.map()),
        "normalization": e.normalization(),
    })
}

pub fn write_file(path: &std::path::Path, v: &Value) -> Result<()> {
    let mut text = serde_json::to_string_pretty(v)
        .map_err(|e| Error::Parse(format!("cannot serialize: {e}")))?;
    text.push('\n');
    std::fs::write(path, text)
        .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Tolerance;

    #[test]
    fn symbolic_tags_expand_and_negate() {
        let s2 = symbolic_constant("1/sqrt2").unwrap();
        assert!((s2.re - 1.0 / 2f64.sqrt()).abs() < 1e-16 && s2.im == 0.0);
        assert_eq!(symbolic_constant("-1/sqrt2").unwrap(), -s2);
        let w = symbolic_constant("w").unwrap();
        assert!((w.norm() - 1.0).abs() < 1e-15);
        assert!((w * w * w - Complex64::ONE).norm() < 1e-15);
        assert_eq!(symbolic_constant("w*").unwrap(), w.conj());
        assert!(symbolic_constant("no-such-tag").is_none());
    }

    #[test]
    fn qls_round_trips_through_json() {
        let q = crate::qls::generate_cyclic_mols(3, 2).unwrap().remove(1);
        let v = qls_to_value(&q);
        let back = match parse_value(&v).unwrap() {
            FileContent::Qls(q) => q,
            other => panic!("wrong kind {}", other.kind()),
        };
        assert_eq!(back, q);
    }

    #[test]
    fn qlis_round_trips_with_null_blocks() {
        let s = crate::qlis::identity_square(3, 2);
        let v = qlis_to_value(&s);
        let back = match parse_value(&v).unwrap() {
            FileContent::Qlis(s) => s,
            other => panic!("wrong kind {}", other.kind()),
        };
        assert_eq!(back, s);
    }

    #[test]
    fn sppm_and_family_and_encoder_round_trip() {
        let id = crate::qlis::identity_square(2, 2);
        let t = crate::qlis::compose_skew_ppm(&id, &id).unwrap();
        match parse_value(&sppm_to_value(&t)).unwrap() {
            FileContent::Sppm(back) => assert_eq!(back, t),
            other => panic!("wrong kind {}", other.kind()),
        }

        let fam = crate::codes::pauli_family();
        match parse_value(&unitary_family_to_value(fam.d(), fam.members())).unwrap() {
            FileContent::UnitaryFamily { d, members } => {
                assert_eq!(d, 2);
                assert_eq!(members, fam.members());
            }
            other => panic!("wrong kind {}", other.kind()),
        }

        let e = crate::codes::EncoderTensor::from_sppm(&t);
        match parse_value(&encoder_to_value(&e)).unwrap() {
            FileContent::Encoder(back) => assert_eq!(back, e),
            other => panic!("wrong kind {}", other.kind()),
        }
    }

    #[test]
    fn malformed_inputs_are_parse_or_shape_errors() {
        assert!(matches!(parse_str("not json"), Err(crate::Error::Parse(_))));
        assert!(matches!(parse_str("{\"type\":\"zoo\"}"), Err(crate::Error::Parse(_))));
        assert!(matches!(
            parse_str("{\"type\":\"qls\",\"n\":2,\"entries\":[]}"),
            Err(crate::Error::Shape(_))
        ));
        // Declared a_ij without a block.
        let bad = r#"{"type":"qlis","n":1,"d":1,"block_dims":[[1]],"blocks":[[null]]}"#;
        assert!(matches!(parse_str(bad), Err(crate::Error::Shape(_))));
        // Non-finite scalar.
        let nan = r#"{"type":"qls","n":1,"entries":[[["1/sqrt2"]]]}"#;
        // 1/sqrt2 is finite; this parses but is just not unit norm — fine here.
        assert!(parse_str(nan).is_ok());
    }

    #[test]
    fn tag_and_numeric_scalars_agree() {
        let via_tag = parse_str(
            r#"{"type":"unitary_family","d":1,"members":[[["1/sqrt2"]]]}"#,
        )
        .unwrap();
        if let FileContent::UnitaryFamily { members, .. } = via_tag {
            let expect = 1.0 / 2f64.sqrt();
            assert_eq!(members[0].get(0, 0), Complex64::new(expect, 0.0));
            // Not unitary, of course:
            assert!(!crate::linalg::classify_operator(&members[0], Tolerance::default()).is_unitary);
        } else {
            panic!("wrong kind");
        }
    }
}
