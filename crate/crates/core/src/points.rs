//! Point sets on the plane, the Riemann sphere and the unit disk.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DomainTag {
    Plane,
    Sphere,
    Disk,
}

impl DomainTag {
    pub fn contains(self, z: Complex64) -> bool {
        match self {
            DomainTag::Disk => z.norm_sqr() < 1.0,
            _ => z.re.is_finite() && z.im.is_finite(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DomainTag::Plane => "plane",
            DomainTag::Sphere => "sphere",
            DomainTag::Disk => "disk",
        }
    }
}

/// A point of the extended plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtPoint {
    Finite(Complex64),
    Infinity,
}

/// One point with multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub z: Complex64,
    pub multiplicity: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    pub domain: DomainTag,
    pub points: Vec<Point>,
    /// Multiplicity of the point at infinity (sphere only).
    #[serde(default)]
    pub at_infinity: u32,
    /// Radius of the disk in which the set is complete; `None` means the whole domain.
    #[serde(default)]
    pub window: Option<f64>,
    #[serde(default)]
    pub meta: BTreeMap<String, String>,
}

impl PointSet {
    pub fn new(domain: DomainTag, window: Option<f64>) -> Self {
        PointSet {
            domain,
            points: Vec::new(),
            at_infinity: 0,
            window,
            meta: BTreeMap::new(),
        }
    }

    pub fn from_simple(domain: DomainTag, window: Option<f64>, zs: &[Complex64]) -> Result<Self> {
        let mut ps = PointSet::new(domain, window);
        for &z in zs {
            ps.push(z, 1)?;
        }
        Ok(ps)
    }

    pub fn push(&mut self, z: Complex64, multiplicity: u32) -> Result<()> {
        if !self.domain.contains(z) {
            return Err(Error::OutsideDomain(format!("{z}")));
        }
        if multiplicity == 0 {
            return Err(Error::InvalidParameter("zero multiplicity".into()));
        }
        self.points.push(Point { z, multiplicity });
        Ok(())
    }

    pub fn push_infinity(&mut self, multiplicity: u32) -> Result<()> {
        if self.domain != DomainTag::Sphere {
            return Err(Error::OutsideDomain("infinity".into()));
        }
        self.at_infinity += multiplicity;
        Ok(())
    }

    /// Number of points counted with multiplicity, including infinity.
    pub fn total(&self) -> usize {
        self.points
            .iter()
            .map(|p| p.multiplicity as usize)
            .sum::<usize>()
            + self.at_infinity as usize
    }

    /// Finite points repeated according to multiplicity.
    pub fn expanded(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.total());
        for p in &self.points {
            for _ in 0..p.multiplicity {
                out.push(p.z);
            }
        }
        out
    }
}

/// A region of the extended plane.
pub trait Region {
    fn contains(&self, z: Complex64) -> bool;
    fn contains_infinity(&self) -> bool {
        false
    }
    fn contains_ext(&self, p: ExtPoint) -> bool {
        match p {
            ExtPoint::Finite(z) => self.contains(z),
            ExtPoint::Infinity => self.contains_infinity(),
        }
    }
}

impl<F: Fn(Complex64) -> bool> Region for F {
    fn contains(&self, z: Complex64) -> bool {
        self(z)
    }
}

/// Regions that can be written in configs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "lowercase")]
pub enum Shape {
    /// Open disk `|z - center| < radius`.
    Disk { center: [f64; 2], radius: f64 },
    /// `inner <= |z| < outer`.
    Annulus { inner: f64, outer: f64 },
    /// `|z - center| > radius`, with infinity.
    Exterior { center: [f64; 2], radius: f64 },
}

impl Shape {
    pub fn disk(center: Complex64, radius: f64) -> Self {
        Shape::Disk {
            center: [center.re, center.im],
            radius,
        }
    }
}

impl Region for Shape {
    fn contains(&self, z: Complex64) -> bool {
        match *self {
            Shape::Disk { center, radius } => {
                (z - Complex64::new(center[0], center[1])).norm() < radius
            }
            Shape::Annulus { inner, outer } => {
                let r = z.norm();
                r >= inner && r < outer
            }
            Shape::Exterior { center, radius } => {
                (z - Complex64::new(center[0], center[1])).norm() > radius
            }
        }
    }
    fn contains_infinity(&self) -> bool {
        matches!(self, Shape::Exterior { .. })
    }
}

/// Count of points in a region, with multiplicity.
pub fn count_in_region<R: Region + ?Sized>(ps: &PointSet, region: &R) -> usize {
    let mut n: usize = ps
        .points
        .iter()
        .filter(|p| region.contains(p.z))
        .map(|p| p.multiplicity as usize)
        .sum();
    if ps.at_infinity > 0 && region.contains_infinity() {
        n += ps.at_infinity as usize;
    }
    n
}
