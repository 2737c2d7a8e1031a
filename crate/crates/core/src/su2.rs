//! Spin-1/2 states along arbitrary axes and the SU(2) operators acting on them.
//!
//! Planar directions live in the x–z plane and are measured from the +z
//! reference axis, positive angles turning towards +x. With that choice the
//! real rotation matrix `(cos θ/2, −sin θ/2; sin θ/2, cos θ/2)` is the SU(2)
//! element for a turn about +y, and the planar states
//!
//! ```text
//! |n(α),+⟩ = ( cos α/2,  sin α/2)
//! |n(α),−⟩ = ( sin α/2, −cos α/2)
//! ```
//!
//! agree with the Bloch construction for 3-vectors lying in that plane.
//! The sign of `|n(α),−⟩` is fixed so that `|n(π/2),−⟩ = |n(−π/2),+⟩`
//! componentwise, not merely up to phase.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::{Mul, Neg};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Amplitude of a spinor component or of an overlap between spinors.
pub type ComplexAmplitude = Complex64;

/// Tolerance for algebraic identities (normalization, unitarity).
pub const ALGEBRAIC_TOL: f64 = 1e-12;

/// Wraps an angle into `(−π, π]`. Angles already in range are returned untouched.
pub fn normalize_angle(alpha: f64) -> f64 {
    if alpha > -PI && alpha <= PI {
        return alpha;
    }
    let wrapped = alpha.rem_euclid(TAU);
    if wrapped > PI {
        wrapped - TAU
    } else {
        wrapped
    }
}

/// Outcome of a spin measurement along some axis: `+1` (up) or `−1` (down).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpinSign {
    #[serde(rename = "+")]
    Up,
    #[serde(rename = "-")]
    Down,
}

impl SpinSign {
    pub const BOTH: [SpinSign; 2] = [SpinSign::Up, SpinSign::Down];

    pub fn value(self) -> i8 {
        match self {
            SpinSign::Up => 1,
            SpinSign::Down => -1,
        }
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.value())
    }

    pub fn flip(self) -> SpinSign {
        match self {
            SpinSign::Up => SpinSign::Down,
            SpinSign::Down => SpinSign::Up,
        }
    }

    pub fn from_up(up: bool) -> SpinSign {
        if up {
            SpinSign::Up
        } else {
            SpinSign::Down
        }
    }
}

impl Neg for SpinSign {
    type Output = SpinSign;

    fn neg(self) -> SpinSign {
        self.flip()
    }
}

impl Mul for SpinSign {
    type Output = SpinSign;

    fn mul(self, rhs: SpinSign) -> SpinSign {
        SpinSign::from_up(self == rhs)
    }
}

impl fmt::Display for SpinSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpinSign::Up => f.write_str("+"),
            SpinSign::Down => f.write_str("-"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
enum Axis {
    Planar(f64),
    Vector([f64; 3]),
}

/// A measurement axis.
///
/// Either a planar angle in the x–z plane (normalized to `(−π, π]`) or a
/// general unit 3-vector. Vectors with a zero y-component are stored in
/// planar form so both constructions yield identical spinors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Direction(Axis);

impl Direction {
    pub fn planar(alpha: f64) -> Result<Direction> {
        if !alpha.is_finite() {
            return Err(Error::NonFiniteAngle(alpha));
        }
        Ok(Direction(Axis::Planar(normalize_angle(alpha))))
    }

    /// Builds a direction from a unit 3-vector; the norm must be 1 within `1e-12`.
    pub fn from_vector(x: f64, y: f64, z: f64) -> Result<Direction> {
        let norm = (x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > ALGEBRAIC_TOL {
            return Err(Error::NonUnitVector { norm });
        }
        if y == 0.0 {
            return Direction::planar(x.atan2(z));
        }
        Ok(Direction(Axis::Vector([x, y, z])))
    }

    pub fn z() -> Direction {
        Direction(Axis::Planar(0.0))
    }

    /// The planar angle, if this axis lies in the x–z plane.
    pub fn planar_angle(&self) -> Option<f64> {
        match self.0 {
            Axis::Planar(alpha) => Some(alpha),
            Axis::Vector(_) => None,
        }
    }

    pub fn unit_vector(&self) -> [f64; 3] {
        match self.0 {
            Axis::Planar(alpha) => [alpha.sin(), 0.0, alpha.cos()],
            Axis::Vector(v) => v,
        }
    }

    /// Polar angle from +z and azimuth from +x.
    pub fn spherical(&self) -> (f64, f64) {
        match self.0 {
            Axis::Planar(alpha) if alpha >= 0.0 => (alpha, 0.0),
            Axis::Planar(alpha) => (-alpha, PI),
            Axis::Vector([x, y, z]) => (z.clamp(-1.0, 1.0).acos(), y.atan2(x)),
        }
    }

    pub fn dot(&self, other: &Direction) -> f64 {
        match (self.0, other.0) {
            (Axis::Planar(a), Axis::Planar(b)) => (a - b).cos(),
            _ => {
                let (u, v) = (self.unit_vector(), other.unit_vector());
                u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
            }
        }
    }

    /// Angle between the two axes, in `[0, π]`.
    pub fn angle_to(&self, other: &Direction) -> f64 {
        match (self.0, other.0) {
            (Axis::Planar(a), Axis::Planar(b)) => normalize_angle(a - b).abs(),
            _ => self.dot(other).clamp(-1.0, 1.0).acos(),
        }
    }
}

/// A normalized two-component spin state in the fixed z basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Spinor {
    up: ComplexAmplitude,
    down: ComplexAmplitude,
}

impl Spinor {
    pub fn new(up: ComplexAmplitude, down: ComplexAmplitude) -> Result<Spinor> {
        let norm_sqr = up.norm_sqr() + down.norm_sqr();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > ALGEBRAIC_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Spinor { up, down })
    }

    pub fn from_real(up: f64, down: f64) -> Result<Spinor> {
        Spinor::new(Complex64::new(up, 0.0), Complex64::new(down, 0.0))
    }

    pub fn up(&self) -> ComplexAmplitude {
        self.up
    }

    pub fn down(&self) -> ComplexAmplitude {
        self.down
    }

    pub fn components(&self) -> [ComplexAmplitude; 2] {
        [self.up, self.down]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.up.norm_sqr() + self.down.norm_sqr()
    }

    /// Componentwise distance, the largest absolute difference of any component.
    pub fn max_abs_diff(&self, other: &Spinor) -> f64 {
        (self.up - other.up)
            .norm()
            .max((self.down - other.down).norm())
    }

    fn scaled(self, c: ComplexAmplitude) -> (ComplexAmplitude, ComplexAmplitude) {
        (self.up * c, self.down * c)
    }
}

impl Neg for Spinor {
    type Output = Spinor;

    fn neg(self) -> Spinor {
        Spinor {
            up: -self.up,
            down: -self.down,
        }
    }
}

/// A 2×2 special unitary matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitaryOp {
    m: [[ComplexAmplitude; 2]; 2],
}

impl UnitaryOp {
    pub fn identity() -> UnitaryOp {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        UnitaryOp {
            m: [[one, zero], [zero, one]],
        }
    }

    /// Checks `U†U = I` and `det U = 1` within `1e-12`.
    pub fn from_matrix(m: [[ComplexAmplitude; 2]; 2]) -> Result<UnitaryOp> {
        let op = UnitaryOp { m };
        if op.unitarity_defect() > ALGEBRAIC_TOL || (op.det() - 1.0).norm() > ALGEBRAIC_TOL {
            return Err(Error::NotSpecialUnitary);
        }
        Ok(op)
    }

    /// `exp(−i θ/2 n·σ)`, the SU(2) element for a turn by `theta` about `axis`.
    pub fn about_axis(axis: &Direction, theta: f64) -> UnitaryOp {
        let [nx, ny, nz] = axis.unit_vector();
        let (s, c) = (theta / 2.0).sin_cos();
        // c·I − i s (nx σx + ny σy + nz σz)
        UnitaryOp {
            m: [
                [Complex64::new(c, -s * nz), Complex64::new(-s * ny, -s * nx)],
                [Complex64::new(s * ny, -s * nx), Complex64::new(c, s * nz)],
            ],
        }
    }

    pub fn entries(&self) -> [[ComplexAmplitude; 2]; 2] {
        self.m
    }

    pub fn det(&self) -> ComplexAmplitude {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn dagger(&self) -> UnitaryOp {
        let m = &self.m;
        UnitaryOp {
            m: [
                [m[0][0].conj(), m[1][0].conj()],
                [m[0][1].conj(), m[1][1].conj()],
            ],
        }
    }

    /// Largest entry of `|U†U − I|`.
    pub fn unitarity_defect(&self) -> f64 {
        let p = (self.dagger() * *self).m;
        let id = UnitaryOp::identity().m;
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((p[i][j] - id[i][j]).norm());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &UnitaryOp) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.m[i][j] - other.m[i][j]).norm());
            }
        }
        worst
    }

    pub fn apply(&self, s: &Spinor) -> Spinor {
        Spinor {
            up: self.m[0][0] * s.up + self.m[0][1] * s.down,
            down: self.m[1][0] * s.up + self.m[1][1] * s.down,
        }
    }
}

impl Mul for UnitaryOp {
    type Output = UnitaryOp;

    fn mul(self, rhs: UnitaryOp) -> UnitaryOp {
        let (a, b) = (&self.m, &rhs.m);
        let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        UnitaryOp { m }
    }
}

impl Neg for UnitaryOp {
    type Output = UnitaryOp;

    fn neg(self) -> UnitaryOp {
        let m = self.m;
        UnitaryOp {
            m: [[-m[0][0], -m[0][1]], [-m[1][0], -m[1][1]]],
        }
    }
}

/// The eigenstate `|n,±⟩` of spin along `d`.
pub fn spin_state(d: &Direction, s: SpinSign) -> Spinor {
    match d.0 {
        Axis::Planar(alpha) => {
            let (sin, cos) = (alpha / 2.0).sin_cos();
            let (up, down) = match s {
                SpinSign::Up => (cos, sin),
                SpinSign::Down => (sin, -cos),
            };
            Spinor {
                up: Complex64::new(up, 0.0),
                down: Complex64::new(down, 0.0),
            }
        }
        Axis::Vector(_) => {
            let (polar, azimuth) = d.spherical();
            let (sin, cos) = (polar / 2.0).sin_cos();
            let phase = Complex64::from_polar(1.0, azimuth);
            match s {
                SpinSign::Up => Spinor {
                    up: Complex64::new(cos, 0.0),
                    down: phase * sin,
                },
                SpinSign::Down => Spinor {
                    up: phase.conj() * sin,
                    down: Complex64::new(-cos, 0.0),
                },
            }
        }
    }
}

/// Real planar rotation by `theta`: `rotation(θ)·|n(α),s⟩ = ±|n(α+θ),s⟩`.
pub fn rotation(theta: f64) -> UnitaryOp {
    let (s, c) = (theta / 2.0).sin_cos();
    UnitaryOp {
        m: [
            [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
            [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
        ],
    }
}

/// `⟨a|b⟩`, conjugate-linear in `a`.
pub fn inner_product(a: &Spinor, b: &Spinor) -> ComplexAmplitude {
    a.up.conj() * b.up + a.down.conj() * b.down
}

/// Coefficients of `|target,s⟩` in the `basis` eigenbasis:
/// `|target,s⟩ = c₊|basis,+⟩ + c₋|basis,−⟩`.
pub fn decompose(
    target: &Direction,
    basis: &Direction,
    s: SpinSign,
) -> (ComplexAmplitude, ComplexAmplitude) {
    let state = spin_state(target, s);
    (
        inner_product(&spin_state(basis, SpinSign::Up), &state),
        inner_product(&spin_state(basis, SpinSign::Down), &state),
    )
}

/// Rebuilds a state from basis coefficients; inverse of [`decompose`].
pub fn recombine(basis: &Direction, c_plus: ComplexAmplitude, c_minus: ComplexAmplitude) -> Spinor {
    let (u1, d1) = spin_state(basis, SpinSign::Up).scaled(c_plus);
    let (u2, d2) = spin_state(basis, SpinSign::Down).scaled(c_minus);
    Spinor {
        up: u1 + u2,
        down: d1 + d2,
    }
}

/// Born rule `|⟨a|b⟩|²`, clamped to `[0, 1]` against rounding.
pub fn transition_probability(a: &Spinor, b: &Spinor) -> f64 {
    inner_product(a, b).norm_sqr().clamp(0.0, 1.0)
}

/// True when `a` and `b` differ only by a global phase.
pub fn ray_equivalent(a: &Spinor, b: &Spinor, tol: f64) -> bool {
    (inner_product(a, b).norm() - 1.0).abs() <= tol
}
