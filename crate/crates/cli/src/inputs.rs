use std::fs;
use std::path::Path;
use std::sync::Arc;

use entrocone::diagrams::{DiagramJson, JointJson};
use entrocone::groups::{GroupDiagram, GroupDiagramJson};
use entrocone::indexing::CategoryJson;
use entrocone::rational::parse_rational;
use entrocone::spaces::SpaceJson;
use entrocone::{full_diagram, Diagram, EntropyVector, FiniteProbabilitySpace, IndexingCategory, JointDistribution, Rational};
use serde_json::Value;

use crate::error::{CliError, CliResult};

/// The JSON forms accepted wherever a diagram is expected.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagramFormat {
    Diagram,
    Space,
    Joint,
    Group,
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn detect(value: &Value) -> CliResult<DiagramFormat> {
    let has = |k: &str| value.get(k).is_some();
    if has("category") {
        Ok(DiagramFormat::Diagram)
    } else if has("atoms") {
        Ok(DiagramFormat::Space)
    } else if has("support") {
        Ok(DiagramFormat::Joint)
    } else if has("cyclic_orders") {
        Ok(DiagramFormat::Group)
    } else {
        Err(CliError::Input(
            "unrecognized JSON: expected a diagram, space, joint or group diagram".into(),
        ))
    }
}

pub fn diagram_from_value(value: Value) -> CliResult<(Diagram, DiagramFormat)> {
    let format = detect(&value)?;
    let diagram = match format {
        DiagramFormat::Diagram => Diagram::from_json(&serde_json::from_value::<DiagramJson>(value)?)?,
        DiagramFormat::Space => Diagram::single(FiniteProbabilitySpace::from_json(&serde_json::from_value::<SpaceJson>(value)?)?),
        DiagramFormat::Joint => full_diagram(&JointDistribution::from_json(&serde_json::from_value::<JointJson>(value)?)?)?,
        DiagramFormat::Group => GroupDiagram::from_json(&serde_json::from_value::<GroupDiagramJson>(value)?)?.realize()?,
    };
    Ok((diagram, format))
}

pub fn load_diagram(path: &Path) -> CliResult<Diagram> {
    let (d, _) = diagram_from_value(read_json(path)?).map_err(|e| match e {
        CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
        other => other,
    })?;
    Ok(d)
}

pub fn load_space(path: &Path) -> CliResult<FiniteProbabilitySpace> {
    let json: SpaceJson = serde_json::from_value(read_json(path)?)?;
    Ok(FiniteProbabilitySpace::from_json(&json)?)
}

pub fn load_category(path: &Path) -> CliResult<IndexingCategory> {
    let json: CategoryJson = serde_json::from_value(read_json(path)?)?;
    Ok(IndexingCategory::from_json(&json)?)
}

fn parse_coordinates(items: &[String]) -> CliResult<Vec<Rational>> {
    items.iter().map(|s| Ok(parse_rational(s)?)).collect()
}

/// Coordinates separated by commas, semicolons or whitespace, optionally in
/// parentheses: `(2,2,2,2;3,3,3,3,3,4;4,4,4,4;4)`.
pub fn parse_vector_text(text: &str) -> CliResult<Vec<Rational>> {
    let items: Vec<String> = text
        .trim()
        .trim_start_matches('(')
        .trim_end_matches(')')
        .split(|c: char| c == ',' || c == ';' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect();
    parse_coordinates(&items)
}

/// A vector file holds a JSON array, a JSON object with a `coordinates`
/// array, or plain text as accepted by [`parse_vector_text`].
pub fn load_vector(path: &Path) -> CliResult<Vec<Rational>> {
    let text = fs::read_to_string(path)?;
    let trimmed = text.trim_start();
    if !(trimmed.starts_with('[') || trimmed.starts_with('{')) {
        return parse_vector_text(&text);
    }
    let value: Value = serde_json::from_str(&text)?;
    let array = match &value {
        Value::Array(a) => a,
        Value::Object(o) => o
            .get("coordinates")
            .and_then(Value::as_array)
            .ok_or_else(|| CliError::Input("vector object needs a `coordinates` array".into()))?,
        _ => return Err(CliError::Input("vector must be an array".into())),
    };
    let items = array
        .iter()
        .map(|v| match v {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            _ => Err(CliError::Input(format!("bad coordinate {v}"))),
        })
        .collect::<CliResult<Vec<_>>>()?;
    parse_coordinates(&items)
}

pub fn lambda4_vector(coords: Vec<Rational>) -> CliResult<EntropyVector<Rational>> {
    if coords.len() != 15 {
        return Err(CliError::Input(format!("expected 15 coordinates, got {}", coords.len())));
    }
    let shape = Arc::new(IndexingCategory::lambda_n(4)?);
    Ok(EntropyVector::new(shape, coords)?)
}
