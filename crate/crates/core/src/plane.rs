//! The plane `x + y + z = 0`, its three edge directions and the strip geometry.

use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[Rational; 3]", into = "[Rational; 3]")]
pub struct BPoint {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl BPoint {
    pub fn new(x: Rational, y: Rational, z: Rational) -> Result<Self, Error> {
        if !(&x + &y + &z).is_zero() {
            return Err(Error::InvalidInput(format!(
                "({x}, {y}, {z}) does not satisfy x+y+z=0"
            )));
        }
        Ok(BPoint { x, y, z })
    }

    /// Point with the given x and y; z is solved for.
    pub fn from_xy(x: Rational, y: Rational) -> Self {
        let z = -(&x + &y);
        BPoint { x, y, z }
    }

    pub fn ints(x: i64, y: i64, z: i64) -> Self {
        BPoint::new(x.into(), y.into(), z.into()).expect("coordinates must sum to zero")
    }

    pub fn origin() -> Self {
        BPoint::ints(0, 0, 0)
    }

    pub fn coord(&self, k: usize) -> &Rational {
        match k {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("coordinate index {k} out of range"),
        }
    }

    pub fn coords(&self) -> [&Rational; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn scale(&self, c: &Rational) -> BPoint {
        BPoint {
            x: &self.x * c,
            y: &self.y * c,
            z: &self.z * c,
        }
    }

    pub fn dot(&self, d: [i64; 3]) -> Rational {
        &self.x * d[0] + &self.y * d[1] + &self.z * d[2]
    }

    pub fn is_lattice(&self) -> bool {
        is_lattice(self)
    }

    pub fn is_half_lattice(&self) -> bool {
        is_half_lattice(self)
    }
}

pub fn is_lattice(p: &BPoint) -> bool {
    p.coords().iter().all(|c| c.is_integer())
}

/// Two coordinates in ℤ+1/2 and one in ℤ.
pub fn is_half_lattice(p: &BPoint) -> bool {
    let halves = p.coords().iter().filter(|c| c.is_half_integer()).count();
    let ints = p.coords().iter().filter(|c| c.is_integer()).count();
    halves == 2 && ints == 1
}

impl TryFrom<[Rational; 3]> for BPoint {
    type Error = Error;
    fn try_from(v: [Rational; 3]) -> Result<Self, Error> {
        let [x, y, z] = v;
        BPoint::new(x, y, z)
    }
}

impl From<BPoint> for [Rational; 3] {
    fn from(p: BPoint) -> Self {
        [p.x, p.y, p.z]
    }
}

impl<'b> Add<&'b BPoint> for &BPoint {
    type Output = BPoint;
    fn add(self, rhs: &'b BPoint) -> BPoint {
        BPoint {
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
            z: &self.z + &rhs.z,
        }
    }
}

impl<'b> Sub<&'b BPoint> for &BPoint {
    type Output = BPoint;
    fn sub(self, rhs: &'b BPoint) -> BPoint {
        BPoint {
            x: &self.x - &rhs.x,
            y: &self.y - &rhs.y,
            z: &self.z - &rhs.z,
        }
    }
}

impl fmt::Display for BPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl fmt::Debug for BPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Edge directions of the hexagonal tinkertoy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dir {
    /// `(0,-1,1)`, constant x.
    SouthEast,
    /// `(1,0,-1)`, constant y.
    SouthWest,
    /// `(-1,1,0)`, constant z.
    North,
}

impl Dir {
    pub const ALL: [Dir; 3] = [Dir::SouthEast, Dir::SouthWest, Dir::North];

    pub fn vector(self) -> [i64; 3] {
        match self {
            Dir::SouthEast => [0, -1, 1],
            Dir::SouthWest => [1, 0, -1],
            Dir::North => [-1, 1, 0],
        }
    }

    /// Index of the coordinate that stays constant along this direction.
    pub fn const_index(self) -> usize {
        match self {
            Dir::SouthEast => 0,
            Dir::SouthWest => 1,
            Dir::North => 2,
        }
    }

    pub fn short(self) -> &'static str {
        match self {
            Dir::SouthEast => "se",
            Dir::SouthWest => "sw",
            Dir::North => "n",
        }
    }
}

/// `(x, y, z) ↦ (y − 2δ, x − δ, z + 3δ)`, the identification of the strip.
pub fn twist(p: &BPoint, delta: &Rational) -> BPoint {
    BPoint {
        x: &p.y - delta * 2,
        y: &p.x - delta,
        z: &p.z + delta * 3,
    }
}

/// Inverse of [`twist`].
pub fn untwist(p: &BPoint, delta: &Rational) -> BPoint {
    BPoint {
        x: &p.y + delta,
        y: &p.x + delta * 2,
        z: &p.z - delta * 3,
    }
}

/// Apply [`twist`] `m` times (negative `m` untwists).
pub fn twist_pow(p: &BPoint, delta: &Rational, m: i64) -> BPoint {
    // twist² is the translation by (-3δ, -3δ, 6δ)
    let pairs = m.div_euclid(2);
    let shift = delta * (-3 * pairs);
    let mut q = BPoint {
        x: &p.x + &shift,
        y: &p.y + &shift,
        z: &p.z - &shift * 2,
    };
    if m.rem_euclid(2) == 1 {
        q = twist(&q, delta);
    }
    q
}

/// Membership in the closed rhombus `D^{(k)}` of side `δ`.
///
/// `D^{(2m)}` is `x, y ∈ [(m−1)δ, mδ]`; `D^{(2m+1)}` is
/// `x ∈ [(m−1)δ, mδ]`, `y ∈ [mδ, (m+1)δ]`.
pub fn in_rhombus(p: &BPoint, k: i64, delta: &Rational) -> bool {
    let m = k.div_euclid(2);
    let (xlo, ylo) = if k.rem_euclid(2) == 0 {
        (m - 1, m - 1)
    } else {
        (m - 1, m)
    };
    let within = |v: &Rational, lo: i64| {
        let lo = delta * lo;
        let hi = &lo + delta;
        *v >= lo && *v <= hi
    };
    within(&p.x, xlo) && within(&p.y, ylo)
}
