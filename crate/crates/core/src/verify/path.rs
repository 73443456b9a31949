use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Paths must keep at least this distance from `x = ±1`.
pub const SINGULAR_CLEARANCE: f64 = 1e-3;

/// A piecewise-linear path in the `x`-plane.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathSpec {
    pub waypoints: Vec<Complex64>,
}

/// Net number of turns of a path around `-1` and `+1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Winding {
    pub minus_one: f64,
    pub plus_one: f64,
}

fn segment_distance(a: Complex64, b: Complex64, z: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * d.conj()).re / len2).clamp(0.0, 1.0);
    (a + d * t - z).norm()
}

impl PathSpec {
    pub fn new(waypoints: Vec<Complex64>) -> Result<Self> {
        if waypoints.len() < 2 {
            return Err(Error::invalid("path", "a path needs at least two waypoints"));
        }
        let path = PathSpec { waypoints };
        path.check_clearance()?;
        Ok(path)
    }

    pub fn straight(x0: Complex64, x1: Complex64) -> Result<Self> {
        PathSpec::new(vec![x0, x1])
    }

    /// `turns` counterclockwise circuits of a regular polygon with `sides`
    /// vertices on the circle `|x - center| = radius`, starting at angle `phase`.
    pub fn circle(center: Complex64, radius: f64, phase: f64, sides: usize, turns: i32) -> Result<Self> {
        let sign = if turns >= 0 { 1.0 } else { -1.0 };
        let total = sides * turns.unsigned_abs() as usize;
        let points = (0..=total)
            .map(|i| {
                if i == total {
                    center + Complex64::from_polar(radius, phase)
                } else {
                    center + Complex64::from_polar(radius, phase + sign * TAU * i as f64 / sides as f64)
                }
            })
            .collect();
        PathSpec::new(points)
    }

    /// One counterclockwise loop around `point` (`±1`) of the given radius.
    pub fn loop_around(point: f64, radius: f64, phase: f64) -> Result<Self> {
        PathSpec::circle(Complex64::new(point, 0.0), radius, phase, 96, 1)
    }

    pub fn start(&self) -> Complex64 {
        self.waypoints[0]
    }

    pub fn end(&self) -> Complex64 {
        *self.waypoints.last().expect("non-empty path")
    }

    pub fn is_closed(&self) -> bool {
        self.start() == self.end()
    }

    pub fn segments(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        self.waypoints.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn then(&self, other: &PathSpec) -> Result<PathSpec> {
        if self.end() != other.start() {
            return Err(Error::invalid("path", "paths do not join"));
        }
        let mut pts = self.waypoints.clone();
        pts.extend_from_slice(&other.waypoints[1..]);
        PathSpec::new(pts)
    }

    fn check_clearance(&self) -> Result<()> {
        for (a, b) in self.segments() {
            for point in [-1.0, 1.0] {
                let distance = segment_distance(a, b, Complex64::new(point, 0.0));
                if distance < SINGULAR_CLEARANCE {
                    return Err(Error::SingularPath { point, distance });
                }
            }
        }
        Ok(())
    }

    /// Change of `log(x - point)` along the path, accumulated segment by
    /// segment. On a straight segment that avoids `point` the argument moves
    /// by less than `π`, so the principal logarithm of the ratio is exact.
    pub fn log_increment(&self, point: f64) -> Complex64 {
        let z = Complex64::new(point, 0.0);
        self.segments().map(|(a, b)| ((b - z) / (a - z)).ln()).sum()
    }

    pub fn winding(&self) -> Winding {
        Winding {
            minus_one: self.log_increment(-1.0).im / TAU,
            plus_one: self.log_increment(1.0).im / TAU,
        }
    }

    /// Largest `|x - c|` along the path.
    pub fn max_distance_from(&self, c: Complex64) -> f64 {
        self.waypoints.iter().map(|x| (x - c).norm()).fold(0.0, f64::max)
    }
}
