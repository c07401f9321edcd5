//! Disk instances and their JSON form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{point_in_disk, ParamSet};
use crate::scalar::{format_rational, serde_rational, Rational};
use crate::{RDisk, RPoint};

/// Closed disks of one shared radius plus the points to be isolated.
/// Point ids are their positions in `points`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskInstance {
    #[serde(with = "serde_rational")]
    pub radius: Rational,
    pub disks: Vec<RDisk>,
    #[serde(default)]
    pub points: Vec<RPoint>,
    /// Terminal disk ids (multiterminal cut instances only).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub terminals: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamSet>,
    /// Free-form record of how the instance was produced.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<serde_json::Value>,
}

impl DiskInstance {
    pub fn new(radius: Rational, disks: Vec<RDisk>, points: Vec<RPoint>) -> Self {
        DiskInstance { radius, disks, points, terminals: Vec::new(), params: None, origin: None }
    }

    pub fn centers(&self) -> Vec<RPoint> {
        self.disks.iter().map(|d| d.center.clone()).collect()
    }

    /// Centers of the disks with the given ids.
    pub fn subset_centers(&self, ids: &[usize]) -> Result<Vec<RPoint>> {
        check_subset(ids, self.disks.len())?;
        Ok(ids.iter().map(|&i| self.disks[i].center.clone()).collect())
    }

    /// Positive radius matching the parameters, and every point outside
    /// every disk.
    pub fn validate(&self) -> Result<()> {
        if self.radius <= Rational::from_integer(0.into()) {
            return Err(Error::Structural("radius must be positive".into()));
        }
        if let Some(p) = &self.params {
            if p.r != self.radius {
                return Err(Error::Structural("radius differs from params.r".into()));
            }
        }
        for (i, p) in self.points.iter().enumerate() {
            if let Some(j) = self.disks.iter().position(|d| point_in_disk(p, &d.center, &self.radius)) {
                return Err(Error::Structural(format!(
                    "point {i} at ({}, {}) is covered by disk {j}",
                    format_rational(&p.x),
                    format_rational(&p.y)
                )));
            }
        }
        Ok(())
    }

    pub fn parse(s: &str) -> Result<Self> {
        let inst: DiskInstance = serde_json::from_str(s)?;
        inst.validate()?;
        Ok(inst)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instance serializes")
    }
}

/// Ids in range and pairwise distinct.
pub fn check_subset(ids: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    for &i in ids {
        if i >= n {
            return Err(Error::Structural(format!("disk id {i} out of range (have {n})")));
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::Structural(format!("disk id {i} repeated")));
        }
    }
    Ok(())
}
