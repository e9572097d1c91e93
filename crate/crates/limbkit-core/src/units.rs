//! Typed physical quantities and unit conversions.
//!
//! All internal arithmetic runs in SI canonical units (N, m, kg, s, Pa,
//! rad/s). Display units such as lbf, mm, and rpm exist only at the
//! configuration and CLI boundary, expressed through [`UnitTag`] and the
//! dynamic [`convert`] operation.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Exact-enough conversion constant: newtons per pound-force.
pub const NEWTONS_PER_POUND_FORCE: f64 = 4.4482216;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum UnitError {
    #[error("dimension mismatch: cannot convert {from} ({from_dim}) to {to} ({to_dim})")]
    DimensionMismatch {
        from: UnitTag,
        to: UnitTag,
        from_dim: Dimension,
        to_dim: Dimension,
    },
    #[error("{kind} must be {constraint}, got {value}")]
    OutOfRange {
        kind: &'static str,
        constraint: &'static str,
        value: f64,
    },
}

macro_rules! free_quantity {
    ($(#[$meta:meta])* $name:ident, $ctor:ident, $getter:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(f64);

        impl $name {
            pub const ZERO: Self = Self(0.0);

            pub fn $ctor(value: f64) -> Self {
                Self(value)
            }

            /// Canonical SI value.
            pub fn $getter(self) -> f64 {
                self.0
            }
        }
    };
}

macro_rules! nonneg_quantity {
    ($(#[$meta:meta])* $name:ident, $kind:literal, $ctor:ident, $getter:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
        #[serde(transparent)]
        pub struct $name(f64);

        impl $name {
            pub const ZERO: Self = Self(0.0);

            /// Rejects negative and non-finite values.
            pub fn $ctor(value: f64) -> Result<Self, UnitError> {
                if value.is_finite() && value >= 0.0 {
                    Ok(Self(value))
                } else {
                    Err(UnitError::OutOfRange {
                        kind: $kind,
                        constraint: "finite and >= 0",
                        value,
                    })
                }
            }

            /// Canonical SI value.
            pub fn $getter(self) -> f64 {
                self.0
            }
        }
    };
}

free_quantity!(
    /// Force in newtons. Sign carries the tension/compression convention.
    Force, newtons, newtons_value
);
free_quantity!(
    /// Torque in newton-meters.
    Torque, newton_meters, newton_meters_value
);
free_quantity!(
    /// Linear speed in meters per second. Sign carries direction.
    LinearSpeed, meters_per_second, meters_per_second_value
);
free_quantity!(
    /// Angular speed in radians per second. Sign carries direction.
    AngularSpeed, radians_per_second, radians_per_second_value
);
free_quantity!(
    /// Stress in pascals. Sign carries the tension/compression convention.
    Stress, pascals, pascals_value
);
free_quantity!(
    /// Time in seconds.
    Time, seconds, seconds_value
);

nonneg_quantity!(
    /// Length in meters. Negative lengths are rejected; use raw `f64`
    /// coordinates for signed positions.
    Length, "Length", meters, meters_value
);
nonneg_quantity!(
    /// Mass in kilograms.
    Mass, "Mass", kilograms, kilograms_value
);
nonneg_quantity!(
    /// Stiffness in newtons per meter.
    Stiffness, "Stiffness", newtons_per_meter, newtons_per_meter_value
);

impl Force {
    pub fn pound_force(value: f64) -> Self {
        Self(value * NEWTONS_PER_POUND_FORCE)
    }

    pub fn pound_force_value(self) -> f64 {
        self.0 / NEWTONS_PER_POUND_FORCE
    }
}

impl LinearSpeed {
    pub fn millimeters_per_minute(value: f64) -> Self {
        Self(value * 1e-3 / 60.0)
    }

    pub fn millimeters_per_minute_value(self) -> f64 {
        self.0 * 60.0 / 1e-3
    }
}

impl AngularSpeed {
    pub fn rpm(value: f64) -> Self {
        Self(value * std::f64::consts::TAU / 60.0)
    }

    pub fn rpm_value(self) -> f64 {
        self.0 * 60.0 / std::f64::consts::TAU
    }

    pub fn revolutions_per_second(value: f64) -> Self {
        Self(value * std::f64::consts::TAU)
    }

    pub fn revolutions_per_second_value(self) -> f64 {
        self.0 / std::f64::consts::TAU
    }
}

impl Length {
    pub fn millimeters(value: f64) -> Result<Self, UnitError> {
        Self::meters(value * 1e-3)
    }

    pub fn millimeters_value(self) -> f64 {
        self.0 * 1e3
    }
}

impl Stiffness {
    pub fn kilonewtons_per_meter(value: f64) -> Result<Self, UnitError> {
        Self::newtons_per_meter(value * 1e3)
    }

    pub fn kilonewtons_per_meter_value(self) -> f64 {
        self.0 / 1e3
    }
}

impl Stress {
    pub fn megapascals(value: f64) -> Self {
        Self(value * 1e6)
    }

    pub fn megapascals_value(self) -> f64 {
        self.0 / 1e6
    }

    pub fn gigapascals(value: f64) -> Self {
        Self(value * 1e9)
    }
}

/// Dimensionless efficiency, restricted to (0, 1].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Efficiency(f64);

impl Efficiency {
    pub fn new(value: f64) -> Result<Self, UnitError> {
        if value.is_finite() && value > 0.0 && value <= 1.0 {
            Ok(Self(value))
        } else {
            Err(UnitError::OutOfRange {
                kind: "Efficiency",
                constraint: "in (0, 1]",
                value,
            })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Physical dimension of a [`UnitTag`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Force,
    Torque,
    LinearSpeed,
    AngularSpeed,
    Stiffness,
    Length,
    Mass,
    Stress,
    Time,
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Dimension::Force => "force",
            Dimension::Torque => "torque",
            Dimension::LinearSpeed => "linear speed",
            Dimension::AngularSpeed => "angular speed",
            Dimension::Stiffness => "stiffness",
            Dimension::Length => "length",
            Dimension::Mass => "mass",
            Dimension::Stress => "stress",
            Dimension::Time => "time",
        };
        f.write_str(s)
    }
}

/// Unit tags understood by the dynamic [`convert`] operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum UnitTag {
    Newton,
    PoundForce,
    Kilonewton,
    NewtonMeter,
    MeterPerSecond,
    MillimeterPerSecond,
    MillimeterPerMinute,
    RadianPerSecond,
    RevolutionPerSecond,
    Rpm,
    NewtonPerMeter,
    KilonewtonPerMeter,
    Meter,
    Millimeter,
    Kilogram,
    Pascal,
    Megapascal,
    Gigapascal,
    Second,
    Millisecond,
    Minute,
}

impl UnitTag {
    pub fn dimension(self) -> Dimension {
        use UnitTag::*;
        match self {
            Newton | PoundForce | Kilonewton => Dimension::Force,
            NewtonMeter => Dimension::Torque,
            MeterPerSecond | MillimeterPerSecond | MillimeterPerMinute => Dimension::LinearSpeed,
            RadianPerSecond | RevolutionPerSecond | Rpm => Dimension::AngularSpeed,
            NewtonPerMeter | KilonewtonPerMeter => Dimension::Stiffness,
            Meter | Millimeter => Dimension::Length,
            Kilogram => Dimension::Mass,
            Pascal | Megapascal | Gigapascal => Dimension::Stress,
            Second | Millisecond | Minute => Dimension::Time,
        }
    }

    /// Multiplier taking one of this unit to the dimension's SI canonical unit.
    pub fn si_factor(self) -> f64 {
        use UnitTag::*;
        match self {
            Newton | NewtonMeter | MeterPerSecond | RadianPerSecond | NewtonPerMeter | Meter
            | Kilogram | Pascal | Second => 1.0,
            PoundForce => NEWTONS_PER_POUND_FORCE,
            Kilonewton | KilonewtonPerMeter => 1e3,
            MillimeterPerSecond | Millimeter => 1e-3,
            MillimeterPerMinute => 1e-3 / 60.0,
            RevolutionPerSecond => std::f64::consts::TAU,
            Rpm => std::f64::consts::TAU / 60.0,
            Megapascal => 1e6,
            Gigapascal => 1e9,
            Millisecond => 1e-3,
            Minute => 60.0,
        }
    }

    pub fn symbol(self) -> &'static str {
        use UnitTag::*;
        match self {
            Newton => "N",
            PoundForce => "lbf",
            Kilonewton => "kN",
            NewtonMeter => "N·m",
            MeterPerSecond => "m/s",
            MillimeterPerSecond => "mm/s",
            MillimeterPerMinute => "mm/min",
            RadianPerSecond => "rad/s",
            RevolutionPerSecond => "rev/s",
            Rpm => "rpm",
            NewtonPerMeter => "N/m",
            KilonewtonPerMeter => "kN/m",
            Meter => "m",
            Millimeter => "mm",
            Kilogram => "kg",
            Pascal => "Pa",
            Megapascal => "MPa",
            Gigapascal => "GPa",
            Second => "s",
            Millisecond => "ms",
            Minute => "min",
        }
    }

    /// Every tag, in declaration order. Used by property tests and docs.
    pub fn all() -> &'static [UnitTag] {
        use UnitTag::*;
        &[
            Newton,
            PoundForce,
            Kilonewton,
            NewtonMeter,
            MeterPerSecond,
            MillimeterPerSecond,
            MillimeterPerMinute,
            RadianPerSecond,
            RevolutionPerSecond,
            Rpm,
            NewtonPerMeter,
            KilonewtonPerMeter,
            Meter,
            Millimeter,
            Kilogram,
            Pascal,
            Megapascal,
            Gigapascal,
            Second,
            Millisecond,
            Minute,
        ]
    }
}

impl fmt::Display for UnitTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A runtime-tagged quantity: a value expressed in a specific display unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    pub value: f64,
    pub unit: UnitTag,
}

impl Quantity {
    pub fn new(value: f64, unit: UnitTag) -> Self {
        Self { value, unit }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.value, self.unit)
    }
}

/// Re-expresses `q` in `target`. Fails when the dimensions differ.
pub fn convert(q: Quantity, target: UnitTag) -> Result<Quantity, UnitError> {
    let from_dim = q.unit.dimension();
    let to_dim = target.dimension();
    if from_dim != to_dim {
        return Err(UnitError::DimensionMismatch {
            from: q.unit,
            to: target,
            from_dim,
            to_dim,
        });
    }
    Ok(Quantity {
        value: q.value * q.unit.si_factor() / target.si_factor(),
        unit: target,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn pound_force_to_newtons_matches_design_load() {
        let q = convert(Quantity::new(300.0, UnitTag::PoundForce), UnitTag::Newton).unwrap();
        assert_relative_eq!(q.value, 1334.0, max_relative = 1e-3);
    }

    #[test]
    fn zero_force_converts_to_zero() {
        let q = convert(Quantity::new(0.0, UnitTag::Newton), UnitTag::PoundForce).unwrap();
        assert_eq!(q.value, 0.0);
    }

    #[test]
    fn rpm_to_rev_per_second() {
        let q = convert(
            Quantity::new(4790.0, UnitTag::Rpm),
            UnitTag::RevolutionPerSecond,
        )
        .unwrap();
        assert_relative_eq!(q.value, 79.83, max_relative = 1e-3);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let err = convert(Quantity::new(1.0, UnitTag::Newton), UnitTag::Meter).unwrap_err();
        assert!(matches!(err, UnitError::DimensionMismatch { .. }));
    }

    #[test]
    fn efficiency_bounds() {
        assert!(Efficiency::new(0.9).is_ok());
        assert!(Efficiency::new(1.0).is_ok());
        assert!(Efficiency::new(0.0).is_err());
        assert!(Efficiency::new(1.0001).is_err());
        assert!(Efficiency::new(-0.5).is_err());
        assert!(Efficiency::new(f64::NAN).is_err());
    }

    #[test]
    fn negative_length_mass_stiffness_rejected() {
        assert!(Length::meters(-1.0).is_err());
        assert!(Length::millimeters(-0.1).is_err());
        assert!(Mass::kilograms(-3.3).is_err());
        assert!(Stiffness::newtons_per_meter(-315e3).is_err());
        // Force may be negative (tension vs compression).
        assert_eq!(Force::newtons(-10.0).newtons_value(), -10.0);
    }

    #[test]
    fn typed_helpers_agree_with_tag_factors() {
        assert_relative_eq!(
            LinearSpeed::millimeters_per_minute(18000.0).meters_per_second_value(),
            0.3,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            AngularSpeed::rpm(4790.0).revolutions_per_second_value(),
            4790.0 / 60.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            Stress::megapascals(276.0).pascals_value(),
            276e6,
            max_relative = 1e-12
        );
    }

    fn same_dimension_pairs() -> Vec<(UnitTag, UnitTag)> {
        let mut pairs = Vec::new();
        for &a in UnitTag::all() {
            for &b in UnitTag::all() {
                if a.dimension() == b.dimension() {
                    pairs.push((a, b));
                }
            }
        }
        pairs
    }

    proptest! {
        #[test]
        fn conversions_round_trip(value in -1e9f64..1e9, idx in 0usize..1000) {
            let pairs = same_dimension_pairs();
            let (a, b) = pairs[idx % pairs.len()];
            let out = convert(Quantity::new(value, a), b).unwrap();
            let back = convert(out, a).unwrap();
            let tol = 1e-12 * value.abs().max(1e-300);
            prop_assert!((back.value - value).abs() <= tol,
                "{value} {a} -> {b} -> {a} gave {}", back.value);
        }

        #[test]
        fn cross_dimension_conversion_always_fails(ai in 0usize..21, bi in 0usize..21) {
            let a = UnitTag::all()[ai];
            let b = UnitTag::all()[bi];
            prop_assume!(a.dimension() != b.dimension());
            prop_assert!(convert(Quantity::new(1.0, a), b).is_err());
        }
    }
}
