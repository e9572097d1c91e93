//! Bone-depth raster to socket wall stiffness mapping.
//!
//! The wall stiffness map follows the mirrored-compliance principle: regions
//! where the residual limb is stiffest interface with the most compliant
//! socket material. Bone tissue depth is the proxy — deep bone sits under
//! soft surface tissue, which takes a stiff wall — so the fitted map is
//! *increasing* in depth even though the principle reads inverse. The
//! empirical map is implemented exactly as fitted:
//!
//! ```text
//! modulus = 0.0382 * depth_mm + 1.0882
//! ```
//!
//! The number it produces is interpreted in a configured unit (MPa by
//! default); the fit's source data does not pin the unit down, so it is a
//! label, not a conversion.

use crate::output::fmt_f64;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use thiserror::Error;

/// Slope of the depth-to-modulus map, per millimeter of depth.
pub const MODULUS_SLOPE_PER_MM: f64 = 0.0382;
/// Modulus at zero bone depth.
pub const MODULUS_INTERCEPT: f64 = 1.0882;
/// Depths above this are outside the observed fitting range and warn.
pub const DEPTH_WARN_MM: f64 = 50.0;

#[derive(Debug, Error)]
pub enum RasterError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("expected {expected} cells ({width} x {height}), found {found}")]
    CellCount {
        expected: usize,
        found: usize,
        width: usize,
        height: usize,
    },
    #[error("negative depth {value} mm at cell ({x}, {y})")]
    NegativeDepth { x: usize, y: usize, value: f64 },
}

/// Non-fatal findings produced while mapping or quantizing.
#[derive(Debug, Clone, PartialEq)]
pub enum SocketWarning {
    /// Some depths exceed the observed fitting range.
    DepthAboveObservedRange { count: usize, max_depth_mm: f64 },
    /// All moduli are equal, so more than one band cannot be populated.
    DegenerateRange { modulus: f64 },
}

impl std::fmt::Display for SocketWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SocketWarning::DepthAboveObservedRange { count, max_depth_mm } => write!(
                f,
                "{count} cell(s) exceed the observed {DEPTH_WARN_MM} mm depth range (max {max_depth_mm} mm); the linear map is extrapolating"
            ),
            SocketWarning::DegenerateRange { modulus } => write!(
                f,
                "modulus field is constant at {modulus}; all cells assigned band 0"
            ),
        }
    }
}

/// Rasterized bone tissue depth over the limb surface, in millimeters.
/// Cells outside the limb silhouette carry the sentinel value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DepthGrid {
    pub width: usize,
    pub height: usize,
    pub spacing_mm: f64,
    pub sentinel: f64,
    depth_mm: Vec<f64>,
}

impl DepthGrid {
    pub fn new(
        width: usize,
        height: usize,
        spacing_mm: f64,
        sentinel: f64,
        depth_mm: Vec<f64>,
    ) -> Result<Self, RasterError> {
        let expected = width * height;
        if depth_mm.len() != expected {
            return Err(RasterError::CellCount {
                expected,
                found: depth_mm.len(),
                width,
                height,
            });
        }
        for (i, &d) in depth_mm.iter().enumerate() {
            if d != sentinel && d < 0.0 {
                return Err(RasterError::NegativeDepth {
                    x: i % width,
                    y: i / width,
                    value: d,
                });
            }
        }
        Ok(Self {
            width,
            height,
            spacing_mm,
            sentinel,
            depth_mm,
        })
    }

    /// Parses the text raster format: a header line
    /// `width height spacing_mm sentinel`, then `width*height` row-major
    /// depth values in millimeters over the following lines.
    pub fn parse(text: &str) -> Result<Self, RasterError> {
        let mut lines = text.lines().enumerate();
        let (header_idx, header) = lines
            .by_ref()
            .find(|(_, l)| !l.trim().is_empty())
            .ok_or_else(|| RasterError::Malformed {
                line: 1,
                message: "empty raster file".to_string(),
            })?;
        let head: Vec<&str> = header.split_whitespace().collect();
        if head.len() != 4 {
            return Err(RasterError::Malformed {
                line: header_idx + 1,
                message: format!(
                    "header must be `width height spacing_mm sentinel`, found {} field(s)",
                    head.len()
                ),
            });
        }
        let parse_usize = |s: &str, what: &str| {
            s.parse::<usize>().map_err(|_| RasterError::Malformed {
                line: header_idx + 1,
                message: format!("{what} must be a non-negative integer, found {s:?}"),
            })
        };
        let parse_f64 = |s: &str, what: &str, line: usize| {
            s.parse::<f64>().map_err(|_| RasterError::Malformed {
                line,
                message: format!("{what} must be a number, found {s:?}"),
            })
        };
        let width = parse_usize(head[0], "width")?;
        let height = parse_usize(head[1], "height")?;
        let spacing_mm = parse_f64(head[2], "spacing_mm", header_idx + 1)?;
        let sentinel = parse_f64(head[3], "sentinel", header_idx + 1)?;

        let mut depth_mm = Vec::with_capacity(width * height);
        for (idx, line) in lines {
            for tok in line.split_whitespace() {
                depth_mm.push(parse_f64(tok, "depth value", idx + 1)?);
            }
        }
        Self::new(width, height, spacing_mm, sentinel, depth_mm)
    }

    pub fn depth_at(&self, x: usize, y: usize) -> f64 {
        self.depth_mm[y * self.width + x]
    }

    pub fn is_sentinel(&self, x: usize, y: usize) -> bool {
        self.depth_at(x, y) == self.sentinel
    }

    pub fn cells(&self) -> &[f64] {
        &self.depth_mm
    }

    /// `(min, max)` over non-sentinel depths, `None` when all cells are
    /// sentinel.
    pub fn depth_range(&self) -> Option<(f64, f64)> {
        min_max(self.depth_mm.iter().copied().filter(|&d| d != self.sentinel))
    }

    /// Raster-format serialization; round-trips through [`DepthGrid::parse`].
    pub fn to_raster(&self) -> String {
        raster_string(
            self.width,
            self.height,
            self.spacing_mm,
            self.sentinel,
            &self.depth_mm,
        )
    }
}

/// Mapped socket wall stiffness on the same grid as the source depths.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StiffnessField {
    pub width: usize,
    pub height: usize,
    pub spacing_mm: f64,
    pub sentinel: f64,
    /// Unit the modulus numbers are read in. Display label only.
    pub modulus_unit: String,
    modulus: Vec<f64>,
    /// Band index per cell once quantized; sentinel cells carry `None`.
    bands: Option<Vec<Option<usize>>>,
    /// `n_bands + 1` ascending boundaries once quantized.
    band_boundaries: Vec<f64>,
}

impl StiffnessField {
    pub fn modulus_at(&self, x: usize, y: usize) -> f64 {
        self.modulus[y * self.width + x]
    }

    pub fn is_sentinel(&self, x: usize, y: usize) -> bool {
        self.modulus_at(x, y) == self.sentinel
    }

    pub fn cells(&self) -> &[f64] {
        &self.modulus
    }

    pub fn bands(&self) -> Option<&[Option<usize>]> {
        self.bands.as_deref()
    }

    pub fn band_boundaries(&self) -> &[f64] {
        &self.band_boundaries
    }

    /// `(min, max)` over non-sentinel moduli.
    pub fn modulus_range(&self) -> Option<(f64, f64)> {
        min_max(self.modulus.iter().copied().filter(|&m| m != self.sentinel))
    }

    pub fn modulus_raster(&self) -> String {
        raster_string(
            self.width,
            self.height,
            self.spacing_mm,
            self.sentinel,
            &self.modulus,
        )
    }

    /// Band raster; sentinel cells write the sentinel, others the index.
    pub fn band_raster(&self) -> Option<String> {
        let bands = self.bands.as_ref()?;
        let values: Vec<f64> = bands
            .iter()
            .map(|b| b.map(|i| i as f64).unwrap_or(self.sentinel))
            .collect();
        Some(raster_string(
            self.width,
            self.height,
            self.spacing_mm,
            self.sentinel,
            &values,
        ))
    }

    /// Matrix-form CSV of the modulus field (one grid row per CSV row).
    pub fn modulus_csv(&self) -> String {
        matrix_csv(self.width, self.height, |i| fmt_f64(self.modulus[i]))
    }

    pub fn band_csv(&self) -> Option<String> {
        let bands = self.bands.as_ref()?;
        Some(matrix_csv(self.width, self.height, |i| match bands[i] {
            Some(b) => b.to_string(),
            None => fmt_f64(self.sentinel),
        }))
    }

    /// Boundary table CSV: `band,lower,upper`.
    pub fn boundary_csv(&self) -> String {
        let mut out = String::from("band,lower,upper\n");
        for (i, pair) in self.band_boundaries.windows(2).enumerate() {
            let _ = writeln!(out, "{},{},{}", i, fmt_f64(pair[0]), fmt_f64(pair[1]));
        }
        out
    }
}

/// Applies the depth-to-modulus map per cell. Sentinel cells propagate.
/// Depths beyond the observed range are mapped anyway and reported as a
/// warning.
pub fn map_stiffness(grid: &DepthGrid, modulus_unit: &str) -> (StiffnessField, Vec<SocketWarning>) {
    let mut out_of_range = 0usize;
    let mut max_depth = f64::NEG_INFINITY;
    let modulus: Vec<f64> = grid
        .cells()
        .iter()
        .map(|&d| {
            if d == grid.sentinel {
                grid.sentinel
            } else {
                if d > DEPTH_WARN_MM {
                    out_of_range += 1;
                }
                max_depth = max_depth.max(d);
                MODULUS_SLOPE_PER_MM * d + MODULUS_INTERCEPT
            }
        })
        .collect();

    let mut warnings = Vec::new();
    if out_of_range > 0 {
        warnings.push(SocketWarning::DepthAboveObservedRange {
            count: out_of_range,
            max_depth_mm: max_depth,
        });
    }

    (
        StiffnessField {
            width: grid.width,
            height: grid.height,
            spacing_mm: grid.spacing_mm,
            sentinel: grid.sentinel,
            modulus_unit: modulus_unit.to_string(),
            modulus,
            bands: None,
            band_boundaries: Vec::new(),
        },
        warnings,
    )
}

/// Checks that deeper bone always maps to a higher modulus, pairwise over
/// all non-sentinel cells.
pub fn verify_inverse_monotonicity(grid: &DepthGrid, field: &StiffnessField) -> bool {
    assert_eq!(
        (grid.width, grid.height),
        (field.width, field.height),
        "field must come from this grid"
    );
    let mut cells: Vec<(f64, f64)> = grid
        .cells()
        .iter()
        .zip(field.cells())
        .filter(|(&d, _)| d != grid.sentinel)
        .map(|(&d, &m)| (d, m))
        .collect();
    cells.sort_by(|a, b| a.0.total_cmp(&b.0));
    // After sorting by depth, strictly deeper cells must be strictly
    // stiffer; equal depths must agree.
    cells.windows(2).all(|w| {
        if w[0].0 < w[1].0 {
            w[0].1 < w[1].1
        } else {
            w[0].1 == w[1].1
        }
    })
}

/// Assigns each non-sentinel cell a band by uniform partition of the
/// modulus range into `n_bands` intervals. Re-running on the result is a
/// no-op because the modulus values are untouched.
pub fn quantize_bands(
    field: &StiffnessField,
    n_bands: usize,
) -> (StiffnessField, Vec<SocketWarning>) {
    assert!(n_bands >= 1, "n_bands must be >= 1");
    let mut warnings = Vec::new();
    let mut out = field.clone();

    let Some((min, max)) = field.modulus_range() else {
        out.bands = Some(vec![None; field.modulus.len()]);
        out.band_boundaries = vec![];
        return (out, warnings);
    };

    let span = max - min;
    if span == 0.0 && n_bands > 1 {
        warnings.push(SocketWarning::DegenerateRange { modulus: min });
    }

    let boundaries: Vec<f64> = (0..=n_bands)
        .map(|i| min + span * i as f64 / n_bands as f64)
        .collect();

    let bands: Vec<Option<usize>> = field
        .modulus
        .iter()
        .map(|&m| {
            if m == field.sentinel {
                None
            } else if span == 0.0 {
                Some(0)
            } else {
                let idx = ((m - min) / span * n_bands as f64).floor() as usize;
                Some(idx.min(n_bands - 1))
            }
        })
        .collect();

    out.bands = Some(bands);
    out.band_boundaries = boundaries;
    (out, warnings)
}

fn min_max(values: impl Iterator<Item = f64>) -> Option<(f64, f64)> {
    let mut range: Option<(f64, f64)> = None;
    for v in values {
        range = Some(match range {
            None => (v, v),
            Some((lo, hi)) => (lo.min(v), hi.max(v)),
        });
    }
    range
}

fn raster_string(width: usize, height: usize, spacing_mm: f64, sentinel: f64, cells: &[f64]) -> String {
    let mut out = format!(
        "{} {} {} {}\n",
        width,
        height,
        fmt_f64(spacing_mm),
        fmt_f64(sentinel)
    );
    for row in cells.chunks(width.max(1)).take(height) {
        let line: Vec<String> = row.iter().map(|&v| fmt_f64(v)).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

fn matrix_csv(width: usize, height: usize, cell: impl Fn(usize) -> String) -> String {
    let mut out = String::new();
    for y in 0..height {
        let row: Vec<String> = (0..width).map(|x| cell(y * width + x)).collect();
        let _ = writeln!(out, "{}", row.join(","));
    }
    out
}
