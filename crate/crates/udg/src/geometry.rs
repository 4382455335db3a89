//! Points and distance-preserving maps of the plane over the field.
//!
//! Rotations are stored as exact (cos, sin) pairs, never as angles. A
//! rotation is admissible when cos² + sin² = 1 holds in the field; the
//! constructors that derive cos from a given sine succeed exactly when the
//! cosine is itself representable, which in practice means 1 − sin² is
//! rational and its square root stays inside Q(√3, √5, √7, √11).

use crate::field::{rat, FieldElement, Rational};
use num_traits::{One, Signed};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("cosine for the requested sine is not representable in the field")]
    UnrepresentableCosine,
    #[error("cos^2 + sin^2 differs from 1")]
    NotARotation,
}

/// A point with both coordinates in the field. `Ord` is the structural
/// coefficient order on (x, y), used for canonical vertex sorting.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: FieldElement,
    pub y: FieldElement,
}

impl Point {
    pub fn new(x: FieldElement, y: FieldElement) -> Self {
        Point { x, y }
    }

    pub fn origin() -> Self {
        Point::new(FieldElement::zero(), FieldElement::zero())
    }

    pub fn from_rationals(x: Rational, y: Rational) -> Self {
        Point::new(FieldElement::from_rational(x), FieldElement::from_rational(y))
    }

    /// Exact squared Euclidean distance.
    pub fn dist2(&self, other: &Point) -> FieldElement {
        let dx = &self.x - &other.x;
        let dy = &self.y - &other.y;
        &(&dx * &dx) + &(&dy * &dy)
    }

    /// dist² ≤ r2, decided exactly (boundary inclusive).
    pub fn within_radius2(&self, other: &Point, r2: &FieldElement) -> bool {
        (&self.dist2(other) - r2).sign() <= 0
    }

    pub fn translate(&self, dx: &FieldElement, dy: &FieldElement) -> Point {
        Point::new(&self.x + dx, &self.y + dy)
    }

    pub fn midpoint(a: &Point, b: &Point) -> Point {
        let half = rat(1, 2);
        Point::new(
            (&a.x + &b.x).mul_rational(&half),
            (&a.y + &b.y).mul_rational(&half),
        )
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl std::fmt::Debug for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Anticlockwise rotation about a centre, determined by exact cos and sin.
/// Clockwise rotation by the same angle is `inverse()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rotation {
    cos: FieldElement,
    sin: FieldElement,
    centre: Point,
}

impl Rotation {
    pub fn try_new(
        cos: FieldElement,
        sin: FieldElement,
        centre: Point,
    ) -> Result<Self, GeometryError> {
        let norm = &(&cos * &cos) + &(&sin * &sin);
        if norm != FieldElement::one() {
            return Err(GeometryError::NotARotation);
        }
        Ok(Rotation { cos, sin, centre })
    }

    /// Rotation whose sine is given; the cosine is recovered as ±√(1 − sin²),
    /// which requires 1 − sin² to be a rational with representable root.
    pub fn from_sin(
        sin: FieldElement,
        negative_cos: bool,
        centre: Point,
    ) -> Result<Self, GeometryError> {
        let s2 = &sin * &sin;
        let s2 = s2
            .as_rational()
            .ok_or(GeometryError::UnrepresentableCosine)?;
        let c2 = Rational::one() - s2;
        if c2.is_negative() {
            return Err(GeometryError::UnrepresentableCosine);
        }
        let mut cos =
            FieldElement::sqrt_rational(&c2).map_err(|_| GeometryError::UnrepresentableCosine)?;
        if negative_cos {
            cos = -cos;
        }
        Ok(Rotation { cos, sin, centre })
    }

    /// Rotation by 2·arcsin(x) for rational x ∈ [−1, 1], via the double-angle
    /// identities cos = 1 − 2x², sin = 2x·√(1 − x²). Negative x turns
    /// clockwise.
    pub fn double_arcsin(x: &Rational, centre: Point) -> Result<Self, GeometryError> {
        if x.abs() > Rational::one() {
            return Err(GeometryError::UnrepresentableCosine);
        }
        let cos = FieldElement::from_rational(Rational::one() - rat(2, 1) * x * x);
        let sin = FieldElement::sqrt_rational(&(Rational::one() - x * x))
            .map_err(|_| GeometryError::UnrepresentableCosine)?
            .mul_rational(&(rat(2, 1) * x));
        Ok(Rotation { cos, sin, centre })
    }

    /// 60° anticlockwise.
    pub fn sixth_turn(centre: Point) -> Self {
        Rotation {
            cos: FieldElement::from_rational(rat(1, 2)),
            sin: FieldElement::sqrt_rational(&rat(3, 4)).unwrap(),
            centre,
        }
    }

    /// Same angle, opposite direction, same centre.
    pub fn inverse(&self) -> Self {
        Rotation {
            cos: self.cos.clone(),
            sin: -&self.sin,
            centre: self.centre.clone(),
        }
    }

    pub fn cos(&self) -> &FieldElement {
        &self.cos
    }

    pub fn sin(&self) -> &FieldElement {
        &self.sin
    }

    pub fn apply(&self, p: &Point) -> Point {
        let dx = &p.x - &self.centre.x;
        let dy = &p.y - &self.centre.y;
        Point::new(
            &self.centre.x + &(&(&self.cos * &dx) - &(&self.sin * &dy)),
            &self.centre.y + &(&(&self.sin * &dx) + &(&self.cos * &dy)),
        )
    }

    /// The k-fold composition of self (k may be 0).
    pub fn apply_times(&self, p: &Point, k: u32) -> Point {
        let mut q = p.clone();
        for _ in 0..k {
            q = self.apply(&q);
        }
        q
    }
}

/// A distance-preserving map, composable from the basic pieces. `Sequence`
/// composes right to left, matching function composition: the last element
/// acts first.
#[derive(Debug, Clone)]
pub enum Isometry {
    Rotate(Rotation),
    Translate { dx: FieldElement, dy: FieldElement },
    /// Reflection across the x-axis: (x, y) ↦ (x, −y).
    ReflectX,
    Sequence(Vec<Isometry>),
}

impl Isometry {
    pub fn apply(&self, p: &Point) -> Point {
        match self {
            Isometry::Rotate(r) => r.apply(p),
            Isometry::Translate { dx, dy } => p.translate(dx, dy),
            Isometry::ReflectX => Point::new(p.x.clone(), -&p.y),
            Isometry::Sequence(parts) => {
                let mut q = p.clone();
                for part in parts.iter().rev() {
                    q = part.apply(&q);
                }
                q
            }
        }
    }
}
