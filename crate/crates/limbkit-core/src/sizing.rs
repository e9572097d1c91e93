//! Ball-screw drivetrain sizing.
//!
//! Converts an axial design load and a target linear speed into the torque
//! and speed the screw demands from the motor, computes the full-stroke
//! retraction time, and folds the three margins (torque, speed, nut load
//! capacity) into a feasibility verdict.
//!
//! With load `F`, screw lead `L` (meters per revolution), and screw
//! efficiency `eta`:
//!
//! ```text
//! required torque   tau = F * L / (2 * pi * eta)
//! required speed    omega = V_L / L          (revolutions per unit time)
//! retraction time   t = travel / (L * omega_motor)
//! ```

use crate::units::{AngularSpeed, Efficiency, Force, Length, LinearSpeed, Mass, Time, Torque};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Ball-screw transmission parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScrewSpec {
    /// Nut displacement per screw revolution.
    pub lead: Length,
    pub nut_diameter: Length,
    pub screw_diameter: Length,
    pub efficiency: Efficiency,
    /// Static load capacity of the nut.
    pub rated_load: Force,
}

impl ScrewSpec {
    pub fn new(
        lead: Length,
        nut_diameter: Length,
        screw_diameter: Length,
        efficiency: Efficiency,
        rated_load: Force,
    ) -> Self {
        assert!(lead.meters_value() > 0.0, "screw lead must be positive");
        assert!(
            rated_load.newtons_value() > 0.0,
            "rated load must be positive"
        );
        Self {
            lead,
            nut_diameter,
            screw_diameter,
            efficiency,
            rated_load,
        }
    }
}

/// Servomotor catalog parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MotorSpec {
    pub operating_speed: AngularSpeed,
    pub operating_torque: Torque,
    pub supply_voltage_v: f64,
    pub mass: Mass,
    /// Rotor inertia in kg·m². Only the SEA simulation needs it.
    pub rotor_inertia_kg_m2: Option<f64>,
}

impl MotorSpec {
    pub fn new(
        operating_speed: AngularSpeed,
        operating_torque: Torque,
        supply_voltage_v: f64,
        mass: Mass,
        rotor_inertia_kg_m2: Option<f64>,
    ) -> Self {
        assert!(
            operating_speed.radians_per_second_value() > 0.0,
            "motor operating speed must be positive"
        );
        assert!(
            operating_torque.newton_meters_value() > 0.0,
            "motor operating torque must be positive"
        );
        Self {
            operating_speed,
            operating_torque,
            supply_voltage_v,
            mass,
            rotor_inertia_kg_m2,
        }
    }
}

/// Outcome of a drivetrain sizing run. Margins are capability/requirement
/// ratios, so a value >= 1 means the component copes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SizingReport {
    pub required_torque: Torque,
    pub required_speed: AngularSpeed,
    pub torque_margin: f64,
    pub speed_margin: f64,
    pub retraction_time: Time,
    pub load_margin: f64,
    pub feasible: bool,
}

/// Torque the screw demands to push `load`: `F*L / (2*pi*eta)`.
pub fn screw_torque(load: Force, screw: &ScrewSpec) -> Torque {
    assert!(load.newtons_value() >= 0.0, "load must be >= 0");
    let torque =
        load.newtons_value() * screw.lead.meters_value() / (TAU * screw.efficiency.value());
    Torque::newton_meters(torque)
}

/// Rotational speed the screw needs for a nut linear speed: `V_L / L`.
pub fn screw_speed(linear_speed: LinearSpeed, screw: &ScrewSpec) -> AngularSpeed {
    assert!(
        linear_speed.meters_per_second_value() >= 0.0,
        "linear speed must be >= 0"
    );
    let rev_per_sec = linear_speed.meters_per_second_value() / screw.lead.meters_value();
    AngularSpeed::revolutions_per_second(rev_per_sec)
}

/// Time to cover `effective_travel` at the motor's operating speed.
pub fn retraction_time(effective_travel: Length, screw: &ScrewSpec, motor: &MotorSpec) -> Time {
    assert!(
        effective_travel.meters_value() > 0.0,
        "effective travel must be positive"
    );
    let rev_per_sec = motor.operating_speed.revolutions_per_second_value();
    Time::seconds(effective_travel.meters_value() / (screw.lead.meters_value() * rev_per_sec))
}

/// Checks the motor and nut against the screw requirements. Infeasible
/// designs come back with `feasible = false`, never as an error.
pub fn check_feasibility(
    load: Force,
    linear_speed: LinearSpeed,
    travel: Length,
    screw: &ScrewSpec,
    motor: &MotorSpec,
) -> SizingReport {
    let required_torque = screw_torque(load, screw);
    let required_speed = screw_speed(linear_speed, screw);

    let torque_margin = if required_torque.newton_meters_value() > 0.0 {
        motor.operating_torque.newton_meters_value() / required_torque.newton_meters_value()
    } else {
        f64::INFINITY
    };
    let speed_margin = if required_speed.radians_per_second_value() > 0.0 {
        motor.operating_speed.radians_per_second_value()
            / required_speed.radians_per_second_value()
    } else {
        f64::INFINITY
    };
    // Nut capacity check: the full axial load is assumed to land on the nut.
    let load_margin = if load.newtons_value() > 0.0 {
        screw.rated_load.newtons_value() / load.newtons_value()
    } else {
        f64::INFINITY
    };

    SizingReport {
        required_torque,
        required_speed,
        torque_margin,
        speed_margin,
        retraction_time: retraction_time(travel, screw, motor),
        load_margin,
        feasible: torque_margin >= 1.0 && speed_margin >= 1.0 && load_margin >= 1.0,
    }
}

#[cfg(test)]
pub(crate) fn paper_screw() -> ScrewSpec {
    ScrewSpec::new(
        Length::millimeters(5.0).unwrap(),
        Length::millimeters(24.0).unwrap(),
        Length::millimeters(24.0).unwrap(),
        Efficiency::new(0.9).unwrap(),
        Force::pound_force(350.0),
    )
}

#[cfg(test)]
pub(crate) fn paper_motor() -> MotorSpec {
    MotorSpec::new(
        AngularSpeed::rpm(4790.0),
        Torque::newton_meters(1.69),
        50.0,
        Mass::kilograms(3.3).unwrap(),
        Some(1.4e-4),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn torque_for_design_load() {
        let tau = screw_torque(Force::newtons(1334.0), &paper_screw());
        assert_relative_eq!(tau.newton_meters_value(), 1.18, max_relative = 5e-3);
    }

    #[test]
    fn torque_zero_load() {
        let tau = screw_torque(Force::ZERO, &paper_screw());
        assert_eq!(tau.newton_meters_value(), 0.0);
    }

    #[test]
    fn torque_doubles_with_load() {
        // Hand evaluation: 2668 * 0.005 / (2*pi*0.9) = 2.3593 N·m
        let tau = screw_torque(Force::newtons(2668.0), &paper_screw());
        assert_relative_eq!(
            tau.newton_meters_value(),
            2668.0 * 0.005 / (TAU * 0.9),
            max_relative = 1e-12
        );
        assert_relative_eq!(tau.newton_meters_value(), 2.36, max_relative = 5e-3);
    }

    #[test]
    fn speed_for_design_linear_speed() {
        let omega = screw_speed(LinearSpeed::millimeters_per_minute(18000.0), &paper_screw());
        assert_relative_eq!(omega.rpm_value(), 3600.0, max_relative = 1e-12);
    }

    #[test]
    fn speed_zero_input() {
        let omega = screw_speed(LinearSpeed::ZERO, &paper_screw());
        assert_eq!(omega.radians_per_second_value(), 0.0);
    }

    #[test]
    fn speed_halves_with_input() {
        let omega = screw_speed(LinearSpeed::millimeters_per_minute(9000.0), &paper_screw());
        assert_relative_eq!(omega.rpm_value(), 1800.0, max_relative = 1e-12);
    }

    #[test]
    fn retraction_time_full_travel() {
        // 108 mm at 79.83 rev/s through a 5 mm lead: 0.2706 s.
        let motor = MotorSpec::new(
            AngularSpeed::revolutions_per_second(79.83),
            Torque::newton_meters(1.69),
            50.0,
            Mass::kilograms(3.3).unwrap(),
            None,
        );
        let t = retraction_time(Length::millimeters(108.0).unwrap(), &paper_screw(), &motor);
        assert_relative_eq!(t.seconds_value(), 0.27, max_relative = 1e-2);
    }

    #[test]
    fn retraction_time_halves_with_travel() {
        let motor = MotorSpec::new(
            AngularSpeed::revolutions_per_second(79.83),
            Torque::newton_meters(1.69),
            50.0,
            Mass::kilograms(3.3).unwrap(),
            None,
        );
        let t = retraction_time(Length::millimeters(54.0).unwrap(), &paper_screw(), &motor);
        assert_relative_eq!(t.seconds_value(), 0.135, max_relative = 1e-2);
    }

    #[test]
    #[should_panic(expected = "effective travel must be positive")]
    fn retraction_time_rejects_zero_travel() {
        retraction_time(Length::ZERO, &paper_screw(), &paper_motor());
    }

    #[test]
    fn default_drivetrain_is_feasible() {
        let report = check_feasibility(
            Force::newtons(1334.0),
            LinearSpeed::millimeters_per_minute(18000.0),
            Length::millimeters(108.0).unwrap(),
            &paper_screw(),
            &paper_motor(),
        );
        assert!(report.feasible);
        assert_relative_eq!(report.torque_margin, 1.69 / 1.18, max_relative = 5e-3);
        assert_relative_eq!(report.speed_margin, 4790.0 / 3600.0, max_relative = 1e-6);
        assert!(report.load_margin > 1.0);
    }

    #[test]
    fn overload_fails_on_nut_capacity() {
        let report = check_feasibility(
            Force::pound_force(400.0),
            LinearSpeed::millimeters_per_minute(18000.0),
            Length::millimeters(108.0).unwrap(),
            &paper_screw(),
            &paper_motor(),
        );
        assert!(report.load_margin < 1.0);
        assert!(!report.feasible);
    }

    #[test]
    fn doubled_linear_speed_exceeds_motor() {
        let report = check_feasibility(
            Force::newtons(1334.0),
            LinearSpeed::millimeters_per_minute(36000.0),
            Length::millimeters(108.0).unwrap(),
            &paper_screw(),
            &paper_motor(),
        );
        assert_relative_eq!(report.required_speed.rpm_value(), 7200.0, max_relative = 1e-9);
        assert!(report.speed_margin < 1.0);
        assert!(!report.feasible);
    }

    proptest! {
        /// Torque is linear and homogeneous in load.
        #[test]
        fn torque_homogeneous_in_load(f in 0.0f64..1e5, a in 0.0f64..100.0) {
            let screw = paper_screw();
            let t1 = screw_torque(Force::newtons(f), &screw).newton_meters_value();
            let ta = screw_torque(Force::newtons(a * f), &screw).newton_meters_value();
            let tol = 1e-12 * (a * t1).abs().max(1e-300);
            prop_assert!((ta - a * t1).abs() <= tol);
        }

        /// Higher efficiency never raises the torque requirement.
        #[test]
        fn torque_decreasing_in_efficiency(e1 in 0.05f64..1.0, e2 in 0.05f64..1.0) {
            prop_assume!(e1 < e2);
            let mk = |e| ScrewSpec::new(
                Length::millimeters(5.0).unwrap(),
                Length::millimeters(24.0).unwrap(),
                Length::millimeters(24.0).unwrap(),
                Efficiency::new(e).unwrap(),
                Force::pound_force(350.0),
            );
            let t1 = screw_torque(Force::newtons(1334.0), &mk(e1)).newton_meters_value();
            let t2 = screw_torque(Force::newtons(1334.0), &mk(e2)).newton_meters_value();
            prop_assert!(t2 < t1);
        }

        /// time * lead * motor speed reproduces the travel.
        #[test]
        fn retraction_identity(travel_mm in 1.0f64..1000.0, rev_s in 1.0f64..200.0) {
            let motor = MotorSpec::new(
                AngularSpeed::revolutions_per_second(rev_s),
                Torque::newton_meters(1.69),
                50.0,
                Mass::kilograms(3.3).unwrap(),
                None,
            );
            let screw = paper_screw();
            let t = retraction_time(Length::millimeters(travel_mm).unwrap(), &screw, &motor);
            let recovered = t.seconds_value()
                * screw.lead.meters_value()
                * motor.operating_speed.revolutions_per_second_value();
            let tol = 1e-9 * (travel_mm * 1e-3);
            prop_assert!((recovered - travel_mm * 1e-3).abs() <= tol);
        }

        /// A stronger/faster motor can never turn a feasible design infeasible.
        #[test]
        fn feasibility_monotone_in_motor(
            tau1 in 0.1f64..10.0, tau2 in 0.1f64..10.0,
            rpm1 in 100.0f64..20000.0, rpm2 in 100.0f64..20000.0,
        ) {
            prop_assume!(tau1 <= tau2 && rpm1 <= rpm2);
            let mk = |tau, rpm| MotorSpec::new(
                AngularSpeed::rpm(rpm),
                Torque::newton_meters(tau),
                50.0,
                Mass::kilograms(3.3).unwrap(),
                None,
            );
            let run = |m: &MotorSpec| check_feasibility(
                Force::newtons(1334.0),
                LinearSpeed::millimeters_per_minute(18000.0),
                Length::millimeters(108.0).unwrap(),
                &paper_screw(),
                m,
            ).feasible;
            let weak = run(&mk(tau1, rpm1));
            let strong = run(&mk(tau2, rpm2));
            prop_assert!(!weak || strong, "upgrading the motor flipped feasible -> infeasible");
        }
    }
}
