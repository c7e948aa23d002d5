use std::fmt;

use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::element::{ElementKind, HalfSpaceCut};
use crate::{integrate, BoundaryMode, Error, PolyOrder, TetVariant};

/// Invalid request; names the offending field.
#[derive(Debug, Clone, PartialEq)]
pub struct InputError {
    pub field: String,
    pub message: String,
}

impl InputError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        InputError {
            field: field.into(),
            message: message.into(),
        }
    }

    fn from_core(err: Error) -> Self {
        let field = match &err {
            Error::Arity { field, .. } | Error::NonFinite(field) => field,
            Error::ZeroNormal | Error::ZeroCoefficient => "normal",
            Error::Dimension { .. } => "dim",
            Error::NegativeOrder(_) | Error::InvalidPolyOrder(_) => "s",
            Error::DegreeCap { .. } | Error::FactorialRange { .. } => "powers",
            Error::NotPositiveDefinite { .. } | Error::Unsupported(_) => "request",
        };
        InputError::new(field, err.to_string())
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid `{}`: {}", self.field, self.message)
    }
}

impl From<Error> for InputError {
    fn from(err: Error) -> Self {
        InputError::from_core(err)
    }
}

/// One integral, as read from a JSON line or assembled from flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegralRequest {
    pub element: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    pub normal: Vec<f64>,
    pub d: f64,
    pub powers: Vec<u32>,
    pub s: i32,
    #[serde(default)]
    pub boundary_mode: BoundaryMode,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub normalize: bool,
}

/// Resolves `element` (plus `dim` for a bare `hypercube`).
pub fn resolve_element(name: &str, dim: Option<usize>) -> Result<ElementKind, InputError> {
    let kind = match (name, dim) {
        ("hypercube", Some(dim)) => ElementKind::new_hypercube(dim)?,
        ("hypercube", None) => {
            return Err(InputError::new("dim", "required for element `hypercube`"))
        }
        (other, _) => other
            .parse::<ElementKind>()
            .map_err(|_| InputError::new("element", format!("unknown element `{other}`")))?,
    };
    if let Some(dim) = dim {
        if dim != kind.dim() {
            return Err(InputError::new(
                "dim",
                format!(
                    "{dim} does not match element `{name}` of dimension {}",
                    kind.dim()
                ),
            ));
        }
    }
    Ok(kind)
}

pub fn parse_order(s: i32) -> Result<PolyOrder, InputError> {
    if s == 0 || s == -1 {
        Ok(PolyOrder::new(s)?)
    } else {
        Err(InputError::new(
            "s",
            format!("{s} is not one of -1 (interface) or 0 (subdomain)"),
        ))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegralResponse {
    pub element: ElementKind,
    pub value: f64,
    pub variant: Option<TetVariant>,
    /// Value for the cut scaled to a unit normal; only with `normalize`.
    pub normalized_value: Option<f64>,
}

impl IntegralRequest {
    pub fn cut(&self) -> HalfSpaceCut {
        HalfSpaceCut::new(self.normal.clone(), self.d)
    }

    pub fn compute_with(&self, kernel: &super::Kernel) -> Result<IntegralResponse, InputError> {
        let kind = resolve_element(&self.element, self.dim)?;
        let s = parse_order(self.s)?;
        let cut = self.cut();
        let raw = kernel(kind, &cut, &self.powers, s, self.boundary_mode)?;
        let normalized_value = if self.normalize {
            let norm = cut.norm();
            if norm == 0.0 {
                return Err(InputError::new("normal", "cannot normalize a zero normal"));
            }
            let unit =
                HalfSpaceCut::new(cut.normal.iter().map(|a| a / norm).collect(), cut.d / norm);
            Some(kernel(kind, &unit, &self.powers, s, self.boundary_mode)?.value)
        } else {
            None
        };
        Ok(IntegralResponse {
            element: kind,
            value: raw.value,
            variant: raw.variant,
            normalized_value,
        })
    }

    pub fn compute(&self) -> Result<IntegralResponse, InputError> {
        self.compute_with(&integrate)
    }
}

/// Number printed with 17 significant digits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_finite() {
            write!(f, "{:.16e}", self.0)
        } else {
            f.write_str("null")
        }
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let raw = RawValue::from_string(self.to_string()).map_err(serde::ser::Error::custom)?;
        raw.serialize(serializer)
    }
}

#[derive(Serialize)]
struct ResponseRecord<'a> {
    element: String,
    value: Num,
    #[serde(skip_serializing_if = "Option::is_none")]
    variant: Option<&'a TetVariant>,
    #[serde(skip_serializing_if = "Option::is_none")]
    normalized_value: Option<Num>,
}

impl IntegralResponse {
    pub fn to_json(&self) -> String {
        let record = ResponseRecord {
            element: self.element.to_string(),
            value: Num(self.value),
            variant: self.variant.as_ref(),
            normalized_value: self.normalized_value.map(Num),
        };
        serde_json::to_string(&record).expect("response records always serialize")
    }

    pub const CSV_HEADER: &'static str = "element,value,variant,normalized_value";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{}",
            self.element,
            Num(self.value),
            self.variant.map(|v| v.to_string()).unwrap_or_default(),
            self.normalized_value
                .map(|v| Num(v).to_string())
                .unwrap_or_default(),
        )
    }
}
