//! On-disk formats: configuration and report trees as JSON, with every
//! float written at 17 significant digits so values round-trip exactly.

use std::io::{self, Write};

use equilibria::equilibrium::{CenterOfVorticity, EquilibriumSolution, FarFieldClass, FlowKind};
use equilibria::{PointSet, SpectralReport, StrengthVector, C64};
use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::{Map, Value};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigurationFile {
    pub points: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strengths: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Map<String, Value>>,
}

impl ConfigurationFile {
    pub fn from_points(points: &PointSet, metadata: Map<String, Value>) -> Self {
        Self {
            points: points.iter().map(|z| [z.re, z.im]).collect(),
            strengths: None,
            metadata: Some(metadata),
        }
    }

    pub fn with_strengths(mut self, strengths: &[C64]) -> Self {
        self.strengths = Some(strengths.iter().map(|g| [g.re, g.im]).collect());
        self
    }

    /// Validated points plus strengths when the file carries them.
    pub fn decode(&self) -> Result<(PointSet, Option<StrengthVector>), CliError> {
        let points: Vec<C64> = self.points.iter().map(|p| C64::new(p[0], p[1])).collect();
        let points = PointSet::new(points).map_err(|e| CliError::Input(e.to_string()))?;
        let strengths = match &self.strengths {
            None => None,
            Some(s) => {
                if s.len() != points.len() {
                    return Err(CliError::Input(format!(
                        "{} strengths for {} points",
                        s.len(),
                        points.len()
                    )));
                }
                if let Some(i) = s.iter().position(|g| !(g[0].is_finite() && g[1].is_finite())) {
                    return Err(CliError::Input(format!("strength {i} is not finite")));
                }
                Some(StrengthVector::new(s.iter().map(|g| C64::new(g[0], g[1])).collect()))
            }
        };
        Ok((points, strengths))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionSection {
    pub strengths: Vec<C64>,
    pub residual: f64,
    pub tolerance: f64,
    pub nullity: usize,
    pub zero_eigenvalue_multiplicity: usize,
}

impl From<&EquilibriumSolution> for SolutionSection {
    fn from(s: &EquilibriumSolution) -> Self {
        Self {
            strengths: s.strengths.0.clone(),
            residual: s.residual,
            tolerance: s.tolerance,
            nullity: s.nullity,
            zero_eigenvalue_multiplicity: s.zero_eigenvalue_multiplicity,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationSection {
    pub points: Vec<FlowKind>,
    pub far_field: FarFieldClass,
    /// `None` when the total strength vanishes.
    pub center_of_vorticity: Option<C64>,
}

impl ClassificationSection {
    pub fn new(points: Vec<FlowKind>, far_field: FarFieldClass, cv: &CenterOfVorticity) -> Self {
        Self {
            points,
            far_field,
            center_of_vorticity: cv.defined.then_some(cv.value),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    /// The input points with the solved strengths attached, so a report can
    /// be fed straight back into `verify` or `field`.
    pub configuration: ConfigurationFile,
    pub solution: SolutionSection,
    pub spectrum: SpectralReport,
    pub classification: ClassificationSection,
}

/// Accepts either a bare configuration or a report, whose embedded
/// configuration is used.
pub fn parse_configuration(text: &str) -> Result<ConfigurationFile, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
    let inner = match value {
        Value::Object(mut m) if m.contains_key("solution") => m.remove("configuration").unwrap_or(Value::Null),
        v => v,
    };
    serde_json::from_value(inner).map_err(|e| CliError::Input(e.to_string()))
}

pub fn read_configuration(path: &std::path::Path) -> Result<ConfigurationFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_configuration(&text)
}

/// Pretty printer that writes floats in `{:.16e}` form.
struct Exact<'a>(PrettyFormatter<'a>);

impl Formatter for Exact<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, f64::from(value))
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Exact(PrettyFormatter::with_indent(b"  ")));
    value.serialize(&mut ser).expect("in-memory serialization cannot fail");
    out.push(b'\n');
    out
}
