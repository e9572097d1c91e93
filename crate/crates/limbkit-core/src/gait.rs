//! Phase-resolved gait loading over one stride.
//!
//! One stride runs heel-strike to heel-strike. Stance covers the first
//! `stance_fraction` of the cycle (default 60%) and carries the axial load;
//! swing carries the knee travel pulse and no load.
//!
//! The stance load shape is `sin(v) + beta*sin(3v)` over the stance window,
//! which gives the classic double-hump ground-reaction profile: peaks near
//! 15% and 45% of the cycle with a trough at midstance for the default
//! `beta = 0.3`. The shape is normalized analytically so the peak equals
//! `load_factor * body_weight` exactly.

use crate::output::fmt_f64;
use crate::units::{Force, Length, Time};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt::Write as _;

/// Named interval of the gait cycle, as fractions of one stride.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaitPhase {
    pub name: PhaseName,
    pub start_fraction: f64,
    pub end_fraction: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhaseName {
    HeelStrike,
    FootFlat,
    Midstance,
    OppositeHeelStrike,
    ToeOff,
    Swing,
}

impl PhaseName {
    pub fn as_str(self) -> &'static str {
        match self {
            PhaseName::HeelStrike => "heel-strike",
            PhaseName::FootFlat => "foot-flat",
            PhaseName::Midstance => "midstance",
            PhaseName::OppositeHeelStrike => "opposite-heel-strike",
            PhaseName::ToeOff => "toe-off",
            PhaseName::Swing => "swing",
        }
    }
}

/// Shape parameters for load and travel trajectories.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaitShape {
    /// Fraction of the cycle spent in stance.
    pub stance_fraction: f64,
    /// Relative third-harmonic content of the stance load; values above
    /// 1/9 produce the double hump.
    pub second_harmonic: f64,
    /// Swing travel pulse peak, as a fraction of the effective travel.
    pub swing_travel_fraction: f64,
    /// Usable actuator stroke.
    pub effective_travel: Length,
}

impl Default for GaitShape {
    fn default() -> Self {
        Self {
            stance_fraction: 0.6,
            second_harmonic: 0.3,
            swing_travel_fraction: 0.5,
            effective_travel: Length::meters(0.108).expect("positive"),
        }
    }
}

/// Load and travel trajectories over one stride, sampleable at any time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaitProfile {
    pub body_weight: Force,
    pub load_factor: f64,
    pub stride_duration: Time,
    pub phases: Vec<GaitPhase>,
    pub shape: GaitShape,
    /// Analytic maximum of the raw stance shape, cached for normalization.
    shape_peak: f64,
}

/// Builds a profile with the default phase split and shape.
pub fn build_profile(body_weight: Force, stride_duration: Time, load_factor: f64) -> GaitProfile {
    GaitProfile::new(body_weight, stride_duration, load_factor, GaitShape::default())
}

impl GaitProfile {
    pub fn new(
        body_weight: Force,
        stride_duration: Time,
        load_factor: f64,
        shape: GaitShape,
    ) -> Self {
        assert!(body_weight.newtons_value() > 0.0, "body weight must be positive");
        assert!(
            stride_duration.seconds_value() > 0.0,
            "stride duration must be positive"
        );
        assert!(load_factor >= 0.0, "load factor must be >= 0");
        assert!(
            shape.stance_fraction > 0.0 && shape.stance_fraction < 1.0,
            "stance fraction must be in (0, 1)"
        );
        assert!(
            (0.0..=1.0).contains(&shape.swing_travel_fraction),
            "swing travel fraction must be in [0, 1]"
        );

        Self {
            body_weight,
            load_factor,
            stride_duration,
            phases: default_phases(shape.stance_fraction),
            shape,
            shape_peak: stance_shape_peak(shape.second_harmonic),
        }
    }

    /// Axial load at time `t`; periodic with the stride.
    pub fn axial_load(&self, t: Time) -> Force {
        let u = self.cycle_fraction(t);
        if u >= self.shape.stance_fraction {
            return Force::ZERO;
        }
        let v = PI * u / self.shape.stance_fraction;
        let raw = stance_shape(v, self.shape.second_harmonic);
        let peak = self.load_factor * self.body_weight.newtons_value();
        Force::newtons(peak * raw / self.shape_peak)
    }

    /// Knee travel at time `t`: zero through stance, a raised-cosine pulse
    /// peaking mid-swing.
    pub fn knee_travel(&self, t: Time) -> Length {
        let u = self.cycle_fraction(t);
        let sf = self.shape.stance_fraction;
        if u < sf {
            return Length::ZERO;
        }
        let w = (u - sf) / (1.0 - sf);
        let peak =
            self.shape.swing_travel_fraction * self.shape.effective_travel.meters_value();
        Length::meters(peak * 0.5 * (1.0 - (2.0 * PI * w).cos()))
            .expect("raised cosine is non-negative")
    }

    /// `(axial load, knee travel)` at time `t`.
    pub fn sample(&self, t: Time) -> (Force, Length) {
        (self.axial_load(t), self.knee_travel(t))
    }

    /// The phase containing cycle fraction `u` in [0, 1).
    pub fn phase_at(&self, u: f64) -> &GaitPhase {
        let u = u.rem_euclid(1.0);
        self.phases
            .iter()
            .find(|p| u >= p.start_fraction && u < p.end_fraction)
            .unwrap_or_else(|| self.phases.last().expect("phases are non-empty"))
    }

    fn cycle_fraction(&self, t: Time) -> f64 {
        (t.seconds_value() / self.stride_duration.seconds_value()).rem_euclid(1.0)
    }

    /// CSV over one stride: `time_s,axial_force_n,knee_travel_m`.
    pub fn to_csv(&self, sample_rate_hz: f64) -> String {
        assert!(sample_rate_hz > 0.0, "sample rate must be positive");
        let stride = self.stride_duration.seconds_value();
        let n = (stride * sample_rate_hz).ceil() as usize;
        let mut out = String::from("time_s,axial_force_n,knee_travel_m\n");
        for i in 0..=n {
            let t = (i as f64 / sample_rate_hz).min(stride);
            let (f, x) = self.sample(Time::seconds(t));
            let _ = writeln!(
                out,
                "{},{},{}",
                fmt_f64(t),
                fmt_f64(f.newtons_value()),
                fmt_f64(x.meters_value())
            );
        }
        out
    }

    /// Phase boundaries as `phase,start_fraction,end_fraction` lines.
    pub fn phase_table(&self) -> String {
        let mut out = String::from("phase,start_fraction,end_fraction\n");
        for p in &self.phases {
            let _ = writeln!(
                out,
                "{},{},{}",
                p.name.as_str(),
                fmt_f64(p.start_fraction),
                fmt_f64(p.end_fraction)
            );
        }
        out
    }
}

/// Default contact-event split, scaled to the stance window: events at
/// 1/6, 1/2, 5/6, and 11/12 of stance, with opposite heel strike landing
/// at 50% of the cycle for the default 0.6 stance fraction.
fn default_phases(stance_fraction: f64) -> Vec<GaitPhase> {
    let sf = stance_fraction;
    let mk = |name, a, b| GaitPhase {
        name,
        start_fraction: a,
        end_fraction: b,
    };
    vec![
        mk(PhaseName::HeelStrike, 0.0, sf / 6.0),
        mk(PhaseName::FootFlat, sf / 6.0, sf / 2.0),
        mk(PhaseName::Midstance, sf / 2.0, 5.0 * sf / 6.0),
        mk(PhaseName::OppositeHeelStrike, 5.0 * sf / 6.0, 11.0 * sf / 12.0),
        mk(PhaseName::ToeOff, 11.0 * sf / 12.0, sf),
        mk(PhaseName::Swing, sf, 1.0),
    ]
}

fn stance_shape(v: f64, beta: f64) -> f64 {
    v.sin() + beta * (3.0 * v).sin()
}

/// Analytic maximum of `sin(v) + beta*sin(3v)` on [0, pi].
///
/// Stationary points satisfy `cos(v) + 3*beta*cos(3v) = 0`, i.e.
/// `c*(1 - 9*beta) + 12*beta*c^3 = 0` with `c = cos(v)`. For `beta > 1/9`
/// the off-center roots `c = ±sqrt((9*beta - 1)/(12*beta))` are the peaks;
/// otherwise the single peak sits at `v = pi/2`.
fn stance_shape_peak(beta: f64) -> f64 {
    if beta > 1.0 / 9.0 {
        let c = ((9.0 * beta - 1.0) / (12.0 * beta)).sqrt();
        stance_shape(c.acos(), beta)
    } else {
        1.0 - beta
    }
}
