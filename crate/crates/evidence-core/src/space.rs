//! Parameter spaces and parameter points.
//!
//! A [`ParameterSpace`] is a finite Cartesian product of named dimensions.
//! Dimension values are either an explicit list or an integer interval; the
//! interval form is never materialized, which lets a space such as the
//! Birnbaum location family carry ~2·10¹⁰ values for μ while operations work
//! on lazily-chosen finite windows.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{EvidenceError, Result};
use crate::value::Value;

/// The admissible values of one dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DimensionValues {
    /// An explicit, ordered, duplicate-free list.
    Listed(Vec<Value>),
    /// Every integer in `lo..=hi`, enumerated on demand.
    IntRange { lo: i64, hi: i64 },
}

impl DimensionValues {
    /// Number of admissible values.
    pub fn len(&self) -> u128 {
        match self {
            DimensionValues::Listed(vs) => vs.len() as u128,
            DimensionValues::IntRange { lo, hi } => (hi - lo) as u128 + 1,
        }
    }

    /// True when the dimension has no values (only possible pre-validation).
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Membership test.
    pub fn contains(&self, v: &Value) -> bool {
        match self {
            DimensionValues::Listed(vs) => vs.contains(v),
            DimensionValues::IntRange { lo, hi } => {
                matches!(v, Value::Int(i) if lo <= i && i <= hi)
            }
        }
    }

    /// Iterates the values in canonical order. For interval dimensions this
    /// walks the whole range; callers bound the range before iterating.
    pub fn iter(&self) -> Box<dyn Iterator<Item = Value> + '_> {
        match self {
            DimensionValues::Listed(vs) => Box::new(vs.iter().cloned()),
            DimensionValues::IntRange { lo, hi } => Box::new((*lo..=*hi).map(Value::Int)),
        }
    }

    /// Position of `v` in canonical order, if admissible.
    pub fn index_of(&self, v: &Value) -> Option<u128> {
        match self {
            DimensionValues::Listed(vs) => {
                vs.iter().position(|w| w == v).map(|i| i as u128)
            }
            DimensionValues::IntRange { lo, hi } => match v {
                Value::Int(i) if lo <= i && i <= hi => Some((i - lo) as u128),
                _ => None,
            },
        }
    }
}

/// A named dimension of a parameter space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dimension {
    name: String,
    values: DimensionValues,
}

impl Dimension {
    /// A dimension with explicitly listed values.
    pub fn listed(name: impl Into<String>, values: Vec<Value>) -> Self {
        Dimension {
            name: name.into(),
            values: DimensionValues::Listed(values),
        }
    }

    /// A dimension covering every integer in `lo..=hi`.
    pub fn int_range(name: impl Into<String>, lo: i64, hi: i64) -> Self {
        Dimension {
            name: name.into(),
            values: DimensionValues::IntRange { lo, hi },
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn values(&self) -> &DimensionValues {
        &self.values
    }
}

/// A finite product of named dimensions.
///
/// Spaces are handed around as `Arc<ParameterSpace>`; two spaces compare equal
/// when they are structurally identical, so a model parsed from a file is
/// interchangeable with a builtin of the same shape.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct ParameterSpace {
    dims: Vec<Dimension>,
}

impl ParameterSpace {
    /// Validates and builds a space: at least one dimension, distinct
    /// dimension names, and within each dimension at least one value with no
    /// duplicates. Interval dimensions must satisfy `lo <= hi`.
    pub fn new(dims: Vec<Dimension>) -> Result<Arc<Self>> {
        if dims.is_empty() {
            return Err(EvidenceError::InvalidSpace(
                "a parameter space needs at least one dimension".into(),
            ));
        }
        for (i, d) in dims.iter().enumerate() {
            if d.name.is_empty() {
                return Err(EvidenceError::InvalidSpace("empty dimension name".into()));
            }
            if dims[..i].iter().any(|e| e.name == d.name) {
                return Err(EvidenceError::InvalidSpace(format!(
                    "duplicate dimension name {}",
                    d.name
                )));
            }
            match &d.values {
                DimensionValues::Listed(vs) => {
                    if vs.is_empty() {
                        return Err(EvidenceError::InvalidSpace(format!(
                            "dimension {} has no values",
                            d.name
                        )));
                    }
                    for (j, v) in vs.iter().enumerate() {
                        if vs[..j].contains(v) {
                            return Err(EvidenceError::InvalidSpace(format!(
                                "dimension {} lists value {} twice",
                                d.name, v
                            )));
                        }
                    }
                }
                DimensionValues::IntRange { lo, hi } => {
                    if lo > hi {
                        return Err(EvidenceError::InvalidSpace(format!(
                            "dimension {} has an empty interval {lo}..={hi}",
                            d.name
                        )));
                    }
                }
            }
        }
        Ok(Arc::new(ParameterSpace { dims }))
    }

    pub fn dimensions(&self) -> &[Dimension] {
        &self.dims
    }

    /// Index of the dimension called `name`.
    pub fn dimension_index(&self, name: &str) -> Option<usize> {
        self.dims.iter().position(|d| d.name == name)
    }

    /// Total number of parameter points (product of dimension sizes), or
    /// `None` if the product overflows `u128`.
    pub fn point_count(&self) -> Option<u128> {
        self.dims
            .iter()
            .try_fold(1u128, |acc, d| acc.checked_mul(d.values.len()))
    }

    /// True when every dimension is small enough to enumerate `bound` points.
    pub fn is_enumerable_within(&self, bound: u128) -> bool {
        matches!(self.point_count(), Some(n) if n <= bound)
    }

    /// Builds a point from one `(dimension name, value)` pair per dimension,
    /// in any order. Every dimension must be covered exactly once and each
    /// value must be admissible.
    pub fn point(self: &Arc<Self>, coords: &[(&str, Value)]) -> Result<ParameterPoint> {
        let mut slots: Vec<Option<Value>> = vec![None; self.dims.len()];
        for (name, v) in coords {
            let idx = self
                .dimension_index(name)
                .ok_or_else(|| EvidenceError::UnknownDimension {
                    name: (*name).to_owned(),
                })?;
            if slots[idx].is_some() {
                return Err(EvidenceError::SpecInconsistent(format!(
                    "dimension {name} given twice"
                )));
            }
            if !self.dims[idx].values.contains(v) {
                return Err(EvidenceError::UnknownValue {
                    dimension: (*name).to_owned(),
                    value: v.display_token(),
                });
            }
            slots[idx] = Some(v.clone());
        }
        let mut out = Vec::with_capacity(self.dims.len());
        for (slot, dim) in slots.into_iter().zip(&self.dims) {
            out.push(slot.ok_or_else(|| EvidenceError::MissingDimension {
                name: dim.name.clone(),
            })?);
        }
        Ok(ParameterPoint {
            space: Arc::clone(self),
            coords: out,
        })
    }

    /// Builds a point from coordinates already in dimension order.
    pub fn point_from_coords(self: &Arc<Self>, coords: Vec<Value>) -> Result<ParameterPoint> {
        if coords.len() != self.dims.len() {
            return Err(EvidenceError::SpecInconsistent(format!(
                "expected {} coordinates, got {}",
                self.dims.len(),
                coords.len()
            )));
        }
        for (v, d) in coords.iter().zip(&self.dims) {
            if !d.values.contains(v) {
                return Err(EvidenceError::UnknownValue {
                    dimension: d.name.clone(),
                    value: v.display_token(),
                });
            }
        }
        Ok(ParameterPoint {
            space: Arc::clone(self),
            coords,
        })
    }

    /// Resolves a textual token against one dimension, the way the CLI and
    /// the model format do: interval dimensions parse integers, listed
    /// dimensions match the token's parsed value or its canonical display.
    pub fn resolve_value(&self, dimension: &str, token: &str) -> Result<Value> {
        let idx = self
            .dimension_index(dimension)
            .ok_or_else(|| EvidenceError::UnknownDimension {
                name: dimension.to_owned(),
            })?;
        let dim = &self.dims[idx];
        let parsed = Value::parse_token(token);
        if dim.values.contains(&parsed) {
            return Ok(parsed);
        }
        if let DimensionValues::Listed(vs) = &dim.values {
            if let Some(v) = vs.iter().find(|v| v.display_token() == token) {
                return Ok(v.clone());
            }
        }
        Err(EvidenceError::UnknownValue {
            dimension: dimension.to_owned(),
            value: token.to_owned(),
        })
    }

    /// True when `point` belongs to this space.
    pub fn owns(self: &Arc<Self>, point: &ParameterPoint) -> bool {
        Arc::ptr_eq(self, &point.space) || **self == *point.space
    }

    /// Iterates every point in canonical (odometer) order. Callers must bound
    /// [`ParameterSpace::point_count`] first; the iterator itself is lazy.
    pub fn points(self: &Arc<Self>) -> PointsIter {
        PointsIter {
            space: Arc::clone(self),
            odometer: vec![0; self.dims.len()],
            done: false,
        }
    }
}

/// Lazy odometer over the Cartesian product of a space's dimensions.
pub struct PointsIter {
    space: Arc<ParameterSpace>,
    odometer: Vec<u128>,
    done: bool,
}

impl Iterator for PointsIter {
    type Item = ParameterPoint;

    fn next(&mut self) -> Option<ParameterPoint> {
        if self.done {
            return None;
        }
        let coords: Vec<Value> = self
            .odometer
            .iter()
            .zip(self.space.dims.iter())
            .map(|(&i, d)| match &d.values {
                DimensionValues::Listed(vs) => vs[i as usize].clone(),
                DimensionValues::IntRange { lo, .. } => Value::Int(lo + i as i64),
            })
            .collect();
        // Advance the rightmost wheel, carrying leftwards.
        let mut pos = self.space.dims.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.odometer[pos] += 1;
            if self.odometer[pos] < self.space.dims[pos].values.len() {
                break;
            }
            self.odometer[pos] = 0;
        }
        Some(ParameterPoint {
            space: Arc::clone(&self.space),
            coords,
        })
    }
}

/// One point of a parameter space: a full coordinate tuple bound to its space.
#[derive(Debug, Clone)]
pub struct ParameterPoint {
    space: Arc<ParameterSpace>,
    coords: Vec<Value>,
}

impl ParameterPoint {
    pub fn space(&self) -> &Arc<ParameterSpace> {
        &self.space
    }

    /// Coordinates in dimension order.
    pub fn coords(&self) -> &[Value] {
        &self.coords
    }

    /// The coordinate for a named dimension.
    pub fn coord(&self, dimension: &str) -> Option<&Value> {
        let idx = self.space.dimension_index(dimension)?;
        Some(&self.coords[idx])
    }

    /// `dim=value` pairs joined with commas; the CLI's point syntax.
    pub fn display_coords(&self) -> String {
        self.coords
            .iter()
            .zip(self.space.dims.iter())
            .map(|(v, d)| format!("{}={}", d.name, v.display_token()))
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for ParameterPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_coords())
    }
}

impl PartialEq for ParameterPoint {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
            && (Arc::ptr_eq(&self.space, &other.space) || *self.space == *other.space)
    }
}

impl Eq for ParameterPoint {}

impl Hash for ParameterPoint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        // Space identity is checked in `eq`; hashing coordinates alone keeps
        // equal points from structurally equal spaces in the same bucket.
        self.coords.hash(state);
    }
}

impl PartialOrd for ParameterPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on coordinates; canonical for sorting support windows.
impl Ord for ParameterPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}
