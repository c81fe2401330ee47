use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the ambient real vector space shared by all components.
///
/// Coordinates are always finite; construction rejects NaN and infinities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct AmbientPoint {
    coords: Vec<f64>,
}

impl AmbientPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        for (index, &value) in coords.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFiniteCoordinate { index, value });
            }
        }
        Ok(AmbientPoint { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                actual: self.dim(),
            });
        }
        Ok(())
    }
}

impl TryFrom<Vec<f64>> for AmbientPoint {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        AmbientPoint::new(coords)
    }
}

impl From<AmbientPoint> for Vec<f64> {
    fn from(p: AmbientPoint) -> Vec<f64> {
        p.coords
    }
}

/// Shorthand used throughout the tests and examples.
pub fn point(coords: &[f64]) -> AmbientPoint {
    AmbientPoint::new(coords.to_vec()).expect("finite coordinates")
}
