//! JSON interchange cards for algebra models.
//!
//! A card is a small JSON document describing one model: a Lie
//! algebra (`"kind": "lie"`), a commutative Frobenius algebra
//! (`"kind": "frobenius"`), or a Lie algebra with an invariant
//! symplectic form (`"kind": "symplectic-model"`). Every numeric
//! entry is a rational written as a string (`"1"`, `"-2/3"`); float
//! literals are rejected so no precision is lost on load.
//!
//! Structure tables are sparse: a Lie card lists bracket entries
//! `{"i": 1, "j": 2, "value": ["0", "0", "1"]}` meaning
//! `[e_1, e_2] = e_3` (indices are 1-based). An entry for the pair
//! `(j, i)` is derived from `(i, j)` by antisymmetry unless it is
//! given explicitly, in which case it is taken literally and the
//! antisymmetry validation can fail with a named witness. Frobenius
//! cards list commutative products the same way, plus the `unit`
//! index and the `trace` functional. Symplectic cards add `omega`
//! entries `{"i": 1, "j": 3, "c": "1"}` for the coefficient of
//! `e^i ^ e^j` with `i < j`.
//!
//! Loading validates everything: the schema (unknown or missing
//! fields are named), the rational literals, and the structural
//! axioms of the model itself (antisymmetry and Jacobi for brackets,
//! commutativity, associativity, unit and trace nondegeneracy for
//! Frobenius cards, closedness and nondegeneracy of the 2-form for
//! symplectic cards). [`AlgebraCard::canonical_json`] reserializes a
//! loaded card in a canonical form: alphabetical keys, entries sorted
//! by index, derived mirror entries and zero entries omitted.

use crate::exterior::ExteriorAlgebra;
use crate::frobenius::FrobeniusAlgebra;
use crate::gerstenhaber::Algebra;
use crate::lie::LieAlgebra;
use crate::ratlin::{format_q, parse_q, vec_is_zero, Q};
use crate::symplectic::SymplecticLieModel;
use num::Zero;
use serde_json::{json, Map, Value};
use std::fmt;
use std::path::Path;

/// The three model families a card can describe.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CardKind {
    Lie,
    Frobenius,
    SymplecticModel,
}

impl CardKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            CardKind::Lie => "lie",
            CardKind::Frobenius => "frobenius",
            CardKind::SymplecticModel => "symplectic-model",
        }
    }
}

impl fmt::Display for CardKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Why a card failed to load. All variants are input errors: the
/// command line maps them to exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum CardError {
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
    #[error("JSON syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error at {location}: {message}")]
    Schema { location: String, message: String },
    #[error("bad rational literal at {location}: {message}")]
    Rational { location: String, message: String },
    #[error("axiom violation in `{name}`: {witness}")]
    Axiom { name: String, witness: String },
}

fn schema(location: impl Into<String>, message: impl Into<String>) -> CardError {
    CardError::Schema {
        location: location.into(),
        message: message.into(),
    }
}

/// A validated model card. The structure table is stored densely;
/// the sparse JSON form is reconstructed on serialization.
#[derive(Clone, Debug)]
pub struct AlgebraCard {
    pub name: String,
    pub kind: CardKind,
    pub dimension: usize,
    pub basis: Vec<String>,
    /// 1-based unit index (Frobenius cards).
    pub unit: Option<usize>,
    /// Dense table: `table[i][j]` = bracket or product of `e_i, e_j`.
    pub table: Vec<Vec<Vec<Q>>>,
    /// Trace functional on the basis (Frobenius cards).
    pub trace: Option<Vec<Q>>,
    /// The 2-form in exterior coordinates (symplectic cards).
    pub omega: Option<Vec<Q>>,
}

/// Largest supported model dimension. Past this the exterior algebra
/// sizes make exact verification impractical.
pub const MAX_CARD_DIMENSION: usize = 16;

impl AlgebraCard {
    /// Reads and fully validates a card file.
    pub fn load(path: &Path) -> Result<AlgebraCard, CardError> {
        let text = std::fs::read_to_string(path).map_err(|e| CardError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::from_json(&text)
    }

    /// Parses and fully validates card JSON.
    pub fn from_json(text: &str) -> Result<AlgebraCard, CardError> {
        let value: Value = serde_json::from_str(text).map_err(|e| CardError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let card = parse_card(&value)?;
        card.validate_axioms()?;
        Ok(card)
    }

    /// Builds the underlying Lie algebra of a `lie` or
    /// `symplectic-model` card, running the axiom checks.
    pub fn to_lie(&self) -> Result<LieAlgebra, CardError> {
        if self.kind == CardKind::Frobenius {
            return Err(schema(
                "kind",
                "a frobenius card has no Lie bracket table",
            ));
        }
        check_antisymmetry(&self.name, &self.basis, &self.table)?;
        LieAlgebra::new(self.basis.clone(), self.table.clone()).map_err(|e| CardError::Axiom {
            name: self.name.clone(),
            witness: e.to_string(),
        })
    }

    /// Builds the Frobenius algebra of a `frobenius` card, running
    /// the axiom checks.
    pub fn to_frobenius(&self) -> Result<FrobeniusAlgebra, CardError> {
        if self.kind != CardKind::Frobenius {
            return Err(schema("kind", "not a frobenius card"));
        }
        let unit = self.unit.expect("frobenius cards store a unit") - 1;
        let algebra = Algebra::new(self.basis.clone(), unit, self.table.clone()).map_err(|e| {
            CardError::Axiom {
                name: self.name.clone(),
                witness: e,
            }
        })?;
        let trace = self.trace.clone().expect("frobenius cards store a trace");
        FrobeniusAlgebra::new(algebra, trace).map_err(|e| CardError::Axiom {
            name: self.name.clone(),
            witness: e,
        })
    }

    /// Builds the symplectic model of a `symplectic-model` card,
    /// running the axiom checks (closedness and nondegeneracy).
    pub fn to_symplectic(&self) -> Result<SymplecticLieModel, CardError> {
        if self.kind != CardKind::SymplecticModel {
            return Err(schema("kind", "not a symplectic-model card"));
        }
        let lie = self.to_lie()?;
        let omega = self.omega.clone().expect("symplectic cards store omega");
        SymplecticLieModel::new(&self.name, lie, omega).map_err(|e| CardError::Axiom {
            name: self.name.clone(),
            witness: e,
        })
    }

    /// Runs the structural validation for this card's kind.
    pub fn validate_axioms(&self) -> Result<(), CardError> {
        match self.kind {
            CardKind::Lie => self.to_lie().map(|_| ()),
            CardKind::Frobenius => self.to_frobenius().map(|_| ()),
            CardKind::SymplecticModel => self.to_symplectic().map(|_| ()),
        }
    }

    /// The canonical JSON form: alphabetical keys, sparse entries
    /// sorted by index, mirrors and zero entries omitted, two-space
    /// indentation, trailing newline.
    pub fn canonical_json(&self) -> String {
        let mut root = Map::new();
        root.insert("name".into(), json!(self.name));
        root.insert("kind".into(), json!(self.kind.as_str()));
        root.insert("dimension".into(), json!(self.dimension));
        root.insert("basis".into(), json!(self.basis));
        if let Some(unit) = self.unit {
            root.insert("unit".into(), json!(unit));
        }
        let mut entries = Vec::new();
        for i in 0..self.dimension {
            let lo = if self.kind == CardKind::Frobenius {
                i
            } else {
                i + 1
            };
            for j in lo..self.dimension {
                if vec_is_zero(&self.table[i][j]) {
                    continue;
                }
                let value: Vec<String> = self.table[i][j].iter().map(format_q).collect();
                entries.push(json!({"i": i + 1, "j": j + 1, "value": value}));
            }
        }
        let table_key = if self.kind == CardKind::Frobenius {
            "products"
        } else {
            "brackets"
        };
        root.insert(table_key.into(), Value::Array(entries));
        if let Some(trace) = &self.trace {
            let t: Vec<String> = trace.iter().map(format_q).collect();
            root.insert("trace".into(), json!(t));
        }
        if let Some(omega) = &self.omega {
            let ext = ExteriorAlgebra::new(self.dimension);
            let mut entries = Vec::new();
            for (idx, &mask) in ext.masks(2).iter().enumerate() {
                if omega[idx].is_zero() {
                    continue;
                }
                let ij = ExteriorAlgebra::mask_indices(mask);
                entries.push(json!({
                    "i": ij[0],
                    "j": ij[1],
                    "c": format_q(&omega[idx]),
                }));
            }
            root.insert("omega".into(), Value::Array(entries));
        }
        let mut text = serde_json::to_string_pretty(&Value::Object(root))
            .expect("card serialization cannot fail");
        text.push('\n');
        text
    }
}

/// Validates `c[i][j] = -c[j][i]` entrywise, naming the 1-based
/// witness `(i, j, k)` of the first failure.
fn check_antisymmetry(
    name: &str,
    basis: &[String],
    table: &[Vec<Vec<Q>>],
) -> Result<(), CardError> {
    let n = basis.len();
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                let sum = &table[i][j][k] + &table[j][i][k];
                if !sum.is_zero() {
                    return Err(CardError::Axiom {
                        name: name.to_string(),
                        witness: format!(
                            "antisymmetry fails at indices ({}, {}, {}): \
                             c[{}][{}][{}] = {} but c[{}][{}][{}] = {}",
                            i + 1,
                            j + 1,
                            k + 1,
                            i + 1,
                            j + 1,
                            k + 1,
                            format_q(&table[i][j][k]),
                            j + 1,
                            i + 1,
                            k + 1,
                            format_q(&table[j][i][k]),
                        ),
                    });
                }
            }
        }
    }
    Ok(())
}

fn expect_object<'v>(value: &'v Value, location: &str) -> Result<&'v Map<String, Value>, CardError> {
    value
        .as_object()
        .ok_or_else(|| schema(location, "expected an object"))
}

fn expect_string<'v>(map: &'v Map<String, Value>, key: &str, location: &str) -> Result<&'v str, CardError> {
    match map.get(key) {
        Some(Value::String(s)) => Ok(s),
        Some(_) => Err(schema(format!("{location}.{key}"), "expected a string")),
        None => Err(schema(location, format!("missing required field `{key}`"))),
    }
}

fn expect_index(map: &Map<String, Value>, key: &str, location: &str, dim: usize) -> Result<usize, CardError> {
    match map.get(key) {
        Some(Value::Number(n)) => {
            let v = n
                .as_u64()
                .ok_or_else(|| schema(format!("{location}.{key}"), "expected a positive integer"))?;
            if v < 1 || v > dim as u64 {
                return Err(schema(
                    format!("{location}.{key}"),
                    format!("index {v} out of range 1..={dim}"),
                ));
            }
            Ok(v as usize)
        }
        Some(_) => Err(schema(
            format!("{location}.{key}"),
            "expected a positive integer",
        )),
        None => Err(schema(location, format!("missing required field `{key}`"))),
    }
}

/// Parses a rational-as-string, rejecting JSON numbers outright.
fn expect_rational(value: &Value, location: &str) -> Result<Q, CardError> {
    match value {
        Value::String(s) => parse_q(s).map_err(|message| CardError::Rational {
            location: location.to_string(),
            message,
        }),
        Value::Number(_) => Err(CardError::Rational {
            location: location.to_string(),
            message: "numeric literals are not accepted; write the rational as a string \
                      like \"1\" or \"-2/3\""
                .to_string(),
        }),
        _ => Err(CardError::Rational {
            location: location.to_string(),
            message: "expected a rational string".to_string(),
        }),
    }
}

fn expect_rational_vec(value: &Value, location: &str, dim: usize) -> Result<Vec<Q>, CardError> {
    let arr = value
        .as_array()
        .ok_or_else(|| schema(location, "expected an array of rational strings"))?;
    if arr.len() != dim {
        return Err(schema(
            location,
            format!("expected {dim} entries, found {}", arr.len()),
        ));
    }
    arr.iter()
        .enumerate()
        .map(|(k, v)| expect_rational(v, &format!("{location}[{k}]")))
        .collect()
}

fn parse_card(value: &Value) -> Result<AlgebraCard, CardError> {
    let map = expect_object(value, "card")?;
    let kind = match expect_string(map, "kind", "card")? {
        "lie" => CardKind::Lie,
        "frobenius" => CardKind::Frobenius,
        "symplectic-model" => CardKind::SymplecticModel,
        other => {
            return Err(schema(
                "card.kind",
                format!("unknown kind `{other}`; expected lie, frobenius or symplectic-model"),
            ))
        }
    };
    let allowed: &[&str] = match kind {
        CardKind::Lie => &["name", "kind", "dimension", "basis", "brackets"],
        CardKind::Frobenius => &["name", "kind", "dimension", "basis", "unit", "products", "trace"],
        CardKind::SymplecticModel => &["name", "kind", "dimension", "basis", "brackets", "omega"],
    };
    for key in map.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(schema(
                format!("card.{key}"),
                format!("unknown field for a {kind} card"),
            ));
        }
    }
    let name = expect_string(map, "name", "card")?.to_string();
    if name.is_empty() {
        return Err(schema("card.name", "the name must be nonempty"));
    }
    let dimension = match map.get("dimension") {
        Some(Value::Number(n)) => n
            .as_u64()
            .ok_or_else(|| schema("card.dimension", "expected a positive integer"))?
            as usize,
        Some(_) => return Err(schema("card.dimension", "expected a positive integer")),
        None => return Err(schema("card", "missing required field `dimension`")),
    };
    if dimension == 0 || dimension > MAX_CARD_DIMENSION {
        return Err(schema(
            "card.dimension",
            format!("dimension must be between 1 and {MAX_CARD_DIMENSION}"),
        ));
    }
    let basis = {
        let arr = map
            .get("basis")
            .ok_or_else(|| schema("card", "missing required field `basis`"))?
            .as_array()
            .ok_or_else(|| schema("card.basis", "expected an array of strings"))?;
        if arr.len() != dimension {
            return Err(schema(
                "card.basis",
                format!("expected {dimension} labels, found {}", arr.len()),
            ));
        }
        let mut labels = Vec::with_capacity(dimension);
        for (k, v) in arr.iter().enumerate() {
            let s = v
                .as_str()
                .ok_or_else(|| schema(format!("card.basis[{k}]"), "expected a string"))?;
            if labels.contains(&s.to_string()) {
                return Err(schema(
                    format!("card.basis[{k}]"),
                    format!("duplicate label `{s}`"),
                ));
            }
            labels.push(s.to_string());
        }
        labels
    };

    let table_key = if kind == CardKind::Frobenius {
        "products"
    } else {
        "brackets"
    };
    let entries = map
        .get(table_key)
        .ok_or_else(|| schema("card", format!("missing required field `{table_key}`")))?
        .as_array()
        .ok_or_else(|| schema(format!("card.{table_key}"), "expected an array of entries"))?;
    let mut table = vec![vec![vec![Q::zero(); dimension]; dimension]; dimension];
    let mut given = vec![vec![false; dimension]; dimension];
    for (e, entry) in entries.iter().enumerate() {
        let location = format!("card.{table_key}[{e}]");
        let obj = expect_object(entry, &location)?;
        for key in obj.keys() {
            if !["i", "j", "value"].contains(&key.as_str()) {
                return Err(schema(format!("{location}.{key}"), "unknown entry field"));
            }
        }
        let i = expect_index(obj, "i", &location, dimension)? - 1;
        let j = expect_index(obj, "j", &location, dimension)? - 1;
        let value = expect_rational_vec(
            obj.get("value")
                .ok_or_else(|| schema(&*location, "missing required field `value`"))?,
            &format!("{location}.value"),
            dimension,
        )?;
        if given[i][j] {
            return Err(schema(
                location,
                format!("duplicate entry for the pair ({}, {})", i + 1, j + 1),
            ));
        }
        given[i][j] = true;
        table[i][j] = value;
    }
    // Derive unspecified mirrors: by antisymmetry for brackets, by
    // commutativity for products. Explicit entries stay literal so a
    // violating card fails validation with a named witness.
    for i in 0..dimension {
        for j in 0..dimension {
            if given[i][j] && !given[j][i] && i != j {
                table[j][i] = if kind == CardKind::Frobenius {
                    table[i][j].clone()
                } else {
                    table[i][j].iter().map(|c| -c).collect()
                };
            }
        }
    }

    let unit = if kind == CardKind::Frobenius {
        Some(expect_index(map, "unit", "card", dimension)?)
    } else {
        None
    };
    let trace = if kind == CardKind::Frobenius {
        let v = map
            .get("trace")
            .ok_or_else(|| schema("card", "missing required field `trace`"))?;
        Some(expect_rational_vec(v, "card.trace", dimension)?)
    } else {
        None
    };

    let omega = if kind == CardKind::SymplecticModel {
        let arr = map
            .get("omega")
            .ok_or_else(|| schema("card", "missing required field `omega`"))?
            .as_array()
            .ok_or_else(|| schema("card.omega", "expected an array of entries"))?;
        let ext = ExteriorAlgebra::new(dimension);
        let mut omega = ext.zero(2);
        let mut seen = vec![false; omega.len()];
        for (e, entry) in arr.iter().enumerate() {
            let location = format!("card.omega[{e}]");
            let obj = expect_object(entry, &location)?;
            for key in obj.keys() {
                if !["i", "j", "c"].contains(&key.as_str()) {
                    return Err(schema(format!("{location}.{key}"), "unknown entry field"));
                }
            }
            let i = expect_index(obj, "i", &location, dimension)?;
            let j = expect_index(obj, "j", &location, dimension)?;
            if i >= j {
                return Err(schema(
                    location,
                    format!("2-form entries need i < j, got ({i}, {j})"),
                ));
            }
            let c = expect_rational(
                obj.get("c")
                    .ok_or_else(|| schema(&*location, "missing required field `c`"))?,
                &format!("{location}.c"),
            )?;
            let idx = ext.mask_index((1 << (i - 1)) | (1 << (j - 1)));
            if seen[idx] {
                return Err(schema(
                    location,
                    format!("duplicate entry for the pair ({i}, {j})"),
                ));
            }
            seen[idx] = true;
            omega[idx] = c;
        }
        Some(omega)
    } else {
        None
    };

    Ok(AlgebraCard {
        name,
        kind,
        dimension,
        basis,
        unit,
        table,
        trace,
        omega,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::q;

    fn heisenberg_json() -> &'static str {
        r#"{
            "name": "heisenberg3",
            "kind": "lie",
            "dimension": 3,
            "basis": ["e1", "e2", "e3"],
            "brackets": [{"i": 1, "j": 2, "value": ["0", "0", "1"]}]
        }"#
    }

    #[test]
    fn lie_card_loads_and_derives_the_mirror_entry() {
        let card = AlgebraCard::from_json(heisenberg_json()).unwrap();
        assert_eq!(card.kind, CardKind::Lie);
        assert_eq!(card.table[0][1][2], q(1, 1));
        assert_eq!(card.table[1][0][2], q(-1, 1));
        let lie = card.to_lie().unwrap();
        assert_eq!(lie.dim(), 3);
    }

    #[test]
    fn explicit_mirror_violating_antisymmetry_names_the_indices() {
        let text = r#"{
            "name": "broken",
            "kind": "lie",
            "dimension": 3,
            "basis": ["e1", "e2", "e3"],
            "brackets": [
                {"i": 1, "j": 2, "value": ["0", "0", "1"]},
                {"i": 2, "j": 1, "value": ["0", "0", "1"]}
            ]
        }"#;
        let err = AlgebraCard::from_json(text).unwrap_err();
        match err {
            CardError::Axiom { witness, .. } => {
                assert!(witness.contains("(1, 2, 3)"), "witness: {witness}");
            }
            other => panic!("expected an axiom error, got {other}"),
        }
    }

    #[test]
    fn float_literals_are_rejected() {
        let text = r#"{
            "name": "floaty",
            "kind": "lie",
            "dimension": 2,
            "basis": ["e1", "e2"],
            "brackets": [{"i": 1, "j": 2, "value": [0.5, "0"]}]
        }"#;
        let err = AlgebraCard::from_json(text).unwrap_err();
        assert!(matches!(err, CardError::Rational { .. }), "got {err}");
    }

    #[test]
    fn unknown_fields_and_bad_indices_are_schema_errors() {
        let text = r#"{
            "name": "x",
            "kind": "lie",
            "dimension": 2,
            "basis": ["e1", "e2"],
            "brackets": [],
            "omega": []
        }"#;
        let err = AlgebraCard::from_json(text).unwrap_err();
        assert!(matches!(err, CardError::Schema { .. }), "got {err}");

        let text = r#"{
            "name": "x",
            "kind": "lie",
            "dimension": 2,
            "basis": ["e1", "e2"],
            "brackets": [{"i": 3, "j": 1, "value": ["0", "0"]}]
        }"#;
        let err = AlgebraCard::from_json(text).unwrap_err();
        assert!(matches!(err, CardError::Schema { .. }), "got {err}");
    }

    #[test]
    fn frobenius_card_round_trips_through_the_canonical_form() {
        let text = r#"{
            "name": "kx2",
            "kind": "frobenius",
            "dimension": 2,
            "basis": ["1", "x"],
            "unit": 1,
            "products": [
                {"i": 1, "j": 1, "value": ["1", "0"]},
                {"i": 1, "j": 2, "value": ["0", "1"]}
            ],
            "trace": ["0", "1"]
        }"#;
        let card = AlgebraCard::from_json(text).unwrap();
        let frob = card.to_frobenius().unwrap();
        assert_eq!(frob.dim(), 2);
        let canon = card.canonical_json();
        let reloaded = AlgebraCard::from_json(&canon).unwrap();
        assert_eq!(reloaded.canonical_json(), canon);
        assert_eq!(reloaded.table, card.table);
    }

    #[test]
    fn degenerate_trace_is_an_axiom_error() {
        let text = r#"{
            "name": "degenerate",
            "kind": "frobenius",
            "dimension": 2,
            "basis": ["1", "x"],
            "unit": 1,
            "products": [
                {"i": 1, "j": 1, "value": ["1", "0"]},
                {"i": 1, "j": 2, "value": ["0", "1"]}
            ],
            "trace": ["1", "0"]
        }"#;
        let err = AlgebraCard::from_json(text).unwrap_err();
        assert!(matches!(err, CardError::Axiom { .. }), "got {err}");
    }

    #[test]
    fn symplectic_card_checks_closedness_and_nondegeneracy() {
        let good = r#"{
            "name": "kt",
            "kind": "symplectic-model",
            "dimension": 4,
            "basis": ["e1", "e2", "e3", "e4"],
            "brackets": [{"i": 1, "j": 2, "value": ["0", "0", "1", "0"]}],
            "omega": [{"i": 1, "j": 3, "c": "1"}, {"i": 2, "j": 4, "c": "1"}]
        }"#;
        let card = AlgebraCard::from_json(good).unwrap();
        let model = card.to_symplectic().unwrap();
        assert_eq!(model.lie.dim(), 4);

        // omega = e1* ^ e3* alone is closed on this algebra but has
        // rank 2 < 4.
        let degenerate = r#"{
            "name": "kt_degenerate",
            "kind": "symplectic-model",
            "dimension": 4,
            "basis": ["e1", "e2", "e3", "e4"],
            "brackets": [{"i": 1, "j": 2, "value": ["0", "0", "1", "0"]}],
            "omega": [{"i": 1, "j": 3, "c": "1"}]
        }"#;
        let err = AlgebraCard::from_json(degenerate).unwrap_err();
        match &err {
            CardError::Axiom { witness, .. } => {
                assert!(witness.contains("degenerate"), "witness: {witness}");
            }
            other => panic!("expected an axiom error, got {other}"),
        }

        // omega with an e3* ^ e4* term is not closed here:
        // d(e3* ^ e4*) = -e1* ^ e2* ^ e4* survives.
        let open = r#"{
            "name": "kt_open",
            "kind": "symplectic-model",
            "dimension": 4,
            "basis": ["e1", "e2", "e3", "e4"],
            "brackets": [{"i": 1, "j": 2, "value": ["0", "0", "1", "0"]}],
            "omega": [{"i": 3, "j": 4, "c": "1"}, {"i": 1, "j": 2, "c": "1"}]
        }"#;
        let err = AlgebraCard::from_json(open).unwrap_err();
        match &err {
            CardError::Axiom { witness, .. } => {
                assert!(witness.contains("not closed"), "witness: {witness}");
            }
            other => panic!("expected an axiom error, got {other}"),
        }
    }

    #[test]
    fn canonical_form_is_idempotent_for_lie_cards() {
        let card = AlgebraCard::from_json(heisenberg_json()).unwrap();
        let canon = card.canonical_json();
        let reloaded = AlgebraCard::from_json(&canon).unwrap();
        assert_eq!(reloaded.canonical_json(), canon);
    }
}
