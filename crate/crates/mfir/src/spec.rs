//! Filter specifications: linear-phase types, tolerance bands, and gain.
//!
//! A [`FilterSpec`] fixes everything the design search needs: the filter
//! type and order (which together determine the number of free coefficients
//! `M`), the effective coefficient word length `B`, the desired frequency
//! response as a list of [`Band`]s, and how the overall gain is handled.
//!
//! Frequencies are stored as fractions of pi throughout (`0.0..=1.0`); they
//! are only multiplied out to radians when a trigonometric basis function is
//! evaluated.
//!
//! # Example
//!
//! ```
//! use mfir::spec::{Band, FilterSpec, FilterType, GainMode};
//!
//! let spec = FilterSpec::new(
//!     vec![
//!         Band { from_pi: 0.0, to_pi: 0.3, lower: 0.9843, upper: 1.0157 },
//!         Band { from_pi: 0.5, to_pi: 1.0, lower: -0.0066, upper: 0.0066 },
//!     ],
//!     24,
//!     FilterType::I,
//!     8,
//!     GainMode::default_variable(),
//! )
//! .unwrap();
//! assert_eq!(spec.coefficient_count(), 13);
//! ```

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

// ---- filter types ----

/// The four linear-phase FIR filter types.
///
/// Types I/II have symmetric impulse responses, III/IV antisymmetric ones;
/// I/III require an even filter order, II/IV an odd order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FilterType {
    I,
    II,
    III,
    IV,
}

impl FilterType {
    /// Number of free coefficients `M` for filter order `n`.
    pub fn coefficient_count(self, n: u32) -> usize {
        match self {
            FilterType::I => (n / 2 + 1) as usize,
            FilterType::II | FilterType::IV => ((n + 1) / 2) as usize,
            FilterType::III => (n / 2) as usize,
        }
    }

    /// Whether `n` has the parity this type requires (even for I/III, odd
    /// for II/IV).
    pub fn order_is_valid(self, n: u32) -> bool {
        match self {
            FilterType::I | FilterType::III => n % 2 == 0,
            FilterType::II | FilterType::IV => n % 2 == 1,
        }
    }

    /// Whether the impulse response is symmetric (types I and II).
    pub fn is_symmetric(self) -> bool {
        matches!(self, FilterType::I | FilterType::II)
    }
}

impl std::fmt::Display for FilterType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FilterType::I => "I",
            FilterType::II => "II",
            FilterType::III => "III",
            FilterType::IV => "IV",
        })
    }
}

impl std::str::FromStr for FilterType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "I" | "i" | "1" => Ok(FilterType::I),
            "II" | "ii" | "2" => Ok(FilterType::II),
            "III" | "iii" | "3" => Ok(FilterType::III),
            "IV" | "iv" | "4" => Ok(FilterType::IV),
            other => Err(Error::InvalidSpec(format!("unknown filter type '{other}'"))),
        }
    }
}

// ---- bands and gain ----

/// One tolerance band: for all `omega/pi` in `[from_pi, to_pi]` the scaled
/// zero-phase response must lie in `[lower, upper]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub from_pi: f64,
    pub to_pi: f64,
    pub lower: f64,
    pub upper: f64,
}

impl Band {
    /// Band width as a fraction of pi.
    pub fn width(&self) -> f64 {
        self.to_pi - self.from_pi
    }
}

/// How the overall filter gain is treated during design.
///
/// A variable gain gives the search freedom to scale the whole response,
/// which often saves adders; a fixed gain pins the scale exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum GainMode {
    Fixed { value: f64 },
    Variable { lo: f64, hi: f64 },
}

impl GainMode {
    /// The default variable gain interval `[2/3, 4/3]`.
    ///
    /// Any ratio-2 interval of positive gains covers all positive scales up
    /// to factors of two, and factors of two are free in a shift-add
    /// realization, so this interval loses nothing at the real-valued level.
    pub fn default_variable() -> Self {
        GainMode::Variable {
            lo: 2.0 / 3.0,
            hi: 4.0 / 3.0,
        }
    }

    /// Lower and upper gain bound (equal for a fixed gain).
    pub fn bounds(&self) -> (f64, f64) {
        match *self {
            GainMode::Fixed { value } => (value, value),
            GainMode::Variable { lo, hi } => (lo, hi),
        }
    }

    pub fn is_fixed(&self) -> bool {
        matches!(self, GainMode::Fixed { .. })
    }
}

impl Default for GainMode {
    fn default() -> Self {
        GainMode::default_variable()
    }
}

// ---- the specification ----

/// A complete design specification.
///
/// Construct with [`FilterSpec::new`] or [`FilterSpec::from_json`]; both
/// validate band edges, order parity, and gain bounds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FilterSpec {
    #[serde(rename = "type")]
    pub filter_type: FilterType,
    pub order: u32,
    pub wordlength: u32,
    pub gain: GainMode,
    pub bands: Vec<Band>,
}

impl FilterSpec {
    pub fn new(
        bands: Vec<Band>,
        order: u32,
        filter_type: FilterType,
        wordlength: u32,
        gain: GainMode,
    ) -> Result<Self> {
        let spec = FilterSpec {
            filter_type,
            order,
            wordlength,
            gain,
            bands,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Check structural validity. Called by the constructors; useful after
    /// mutating a spec in place.
    pub fn validate(&self) -> Result<()> {
        if !self.filter_type.order_is_valid(self.order) {
            let parity = match self.filter_type {
                FilterType::I | FilterType::III => "even",
                FilterType::II | FilterType::IV => "odd",
            };
            return Err(Error::InvalidSpec(format!(
                "type {} requires an {} filter order, got {}",
                self.filter_type, parity, self.order
            )));
        }
        if self.coefficient_count() == 0 {
            return Err(Error::InvalidSpec(format!(
                "order {} leaves no free coefficients for type {}",
                self.order, self.filter_type
            )));
        }
        if self.wordlength == 0 || self.wordlength > 24 {
            return Err(Error::InvalidSpec(format!(
                "wordlength must be in 1..=24, got {}",
                self.wordlength
            )));
        }
        if self.bands.is_empty() {
            return Err(Error::InvalidSpec("no bands given".into()));
        }
        for (i, b) in self.bands.iter().enumerate() {
            let vals = [b.from_pi, b.to_pi, b.lower, b.upper];
            if vals.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidSpec(format!("band {i} has non-finite entries")));
            }
            if !(0.0..=1.0).contains(&b.from_pi) || !(0.0..=1.0).contains(&b.to_pi) {
                return Err(Error::InvalidSpec(format!(
                    "band {i} edges must lie in [0, 1] as fractions of pi"
                )));
            }
            if b.from_pi >= b.to_pi {
                return Err(Error::InvalidSpec(format!(
                    "band {i} is empty: [{}, {}]",
                    b.from_pi, b.to_pi
                )));
            }
            if b.lower > b.upper {
                return Err(Error::InvalidSpec(format!(
                    "band {i} has lower bound above upper bound"
                )));
            }
        }
        for w in self.bands.windows(2) {
            if w[1].from_pi < w[0].to_pi {
                return Err(Error::InvalidSpec(
                    "bands must be sorted and non-overlapping".into(),
                ));
            }
        }
        let (glo, ghi) = self.gain.bounds();
        if !(glo.is_finite() && ghi.is_finite()) || glo <= 0.0 || glo > ghi {
            return Err(Error::InvalidSpec(format!(
                "gain bounds must satisfy 0 < lo <= hi, got [{glo}, {ghi}]"
            )));
        }
        Ok(())
    }

    /// Number of free coefficients `M`.
    pub fn coefficient_count(&self) -> usize {
        self.filter_type.coefficient_count(self.order)
    }

    /// A copy with every band widened by `eps` on both sides.
    pub fn widened(&self, eps: f64) -> FilterSpec {
        let mut out = self.clone();
        for b in &mut out.bands {
            b.lower -= eps;
            b.upper += eps;
        }
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: FilterSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serialization cannot fail")
    }
}

// ---- zero-phase basis ----

/// Basis function `c_m(omega)` of the zero-phase response, with `omega` in
/// radians.
///
/// * Type I: `1` for `m = 0`, `2 cos(omega m)` for `m > 0`
/// * Type II: `2 cos(omega (m + 1/2))`
/// * Type III: `2 sin(omega (m - 1))`
/// * Type IV: `2 sin(omega (m + 1/2))`
pub fn basis_eval(filter_type: FilterType, m: usize, omega: f64) -> f64 {
    match filter_type {
        FilterType::I => {
            if m == 0 {
                1.0
            } else {
                2.0 * (omega * m as f64).cos()
            }
        }
        FilterType::II => 2.0 * (omega * (m as f64 + 0.5)).cos(),
        FilterType::III => 2.0 * (omega * (m as f64 - 1.0)).sin(),
        FilterType::IV => 2.0 * (omega * (m as f64 + 0.5)).sin(),
    }
}

/// Zero-phase response `sum_m h[m] c_m(omega)` with `omega` in radians.
///
/// `h` is in basis order: `h[m]` multiplies `c_m`. For symmetric types this
/// means `h[0]` is the *center* tap and `h[M-1]` the outermost one, the
/// reverse of impulse-response order `h(0), h(1), ...`.
pub fn zero_phase_response(filter_type: FilterType, h: &[f64], omega: f64) -> f64 {
    h.iter()
        .enumerate()
        .map(|(m, &hm)| hm * basis_eval(filter_type, m, omega))
        .sum()
}

/// Number of structural adders of the tapped delay line, given the integer
/// coefficients in basis order. Zero coefficients remove taps and so save
/// structural adders; the count is clamped at zero.
pub fn structural_adders(filter_type: FilterType, order: u32, h: &[i64]) -> u32 {
    let n = order as i64;
    let raw = match filter_type {
        FilterType::I => {
            let center = if h.first() == Some(&0) { 1 } else { 0 };
            let outer: i64 = h.iter().skip(1).filter(|&&v| v == 0).count() as i64;
            n - center - 2 * outer
        }
        FilterType::III => {
            let outer: i64 = h.iter().skip(1).filter(|&&v| v == 0).count() as i64;
            n - 2 * outer
        }
        FilterType::II | FilterType::IV => {
            let zeros: i64 = h.iter().filter(|&&v| v == 0).count() as i64;
            n - 2 * zeros
        }
    };
    raw.max(0) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn coefficient_counts() {
        assert_eq!(FilterType::I.coefficient_count(24), 13);
        assert_eq!(FilterType::II.coefficient_count(23), 12);
        assert_eq!(FilterType::III.coefficient_count(24), 12);
        assert_eq!(FilterType::IV.coefficient_count(23), 12);
    }

    #[test]
    fn parity_is_enforced() {
        let bands = vec![Band {
            from_pi: 0.0,
            to_pi: 0.5,
            lower: 0.9,
            upper: 1.1,
        }];
        let e = FilterSpec::new(bands, 23, FilterType::I, 8, GainMode::default_variable());
        assert!(matches!(e, Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn band_order_is_enforced() {
        let bands = vec![
            Band {
                from_pi: 0.5,
                to_pi: 1.0,
                lower: -0.1,
                upper: 0.1,
            },
            Band {
                from_pi: 0.0,
                to_pi: 0.6,
                lower: 0.9,
                upper: 1.1,
            },
        ];
        let e = FilterSpec::new(bands, 24, FilterType::I, 8, GainMode::default_variable());
        assert!(matches!(e, Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn basis_values() {
        assert!(close(basis_eval(FilterType::I, 0, 1.234), 1.0));
        assert!(close(
            basis_eval(FilterType::I, 2, std::f64::consts::FRAC_PI_2),
            -2.0
        ));
        assert!(close(basis_eval(FilterType::IV, 3, 0.0), 0.0));
        assert!(close(
            basis_eval(FilterType::III, 0, 0.7),
            -2.0 * 0.7f64.sin()
        ));
        assert!(close(basis_eval(FilterType::III, 1, 0.7), 0.0));
        assert!(close(
            basis_eval(FilterType::II, 1, 0.5),
            2.0 * 0.75f64.cos()
        ));
    }

    #[test]
    fn response_at_dc() {
        let h = [1.0, 2.0, 3.0];
        assert!(close(zero_phase_response(FilterType::I, &h, 0.0), 11.0));
    }

    #[test]
    fn response_uses_basis_order() {
        // Printed coefficient listings give the impulse response from the
        // first tap to the center; the basis expects the reverse. The DC
        // values differ, which pins the convention.
        let printed: Vec<f64> = [1, 2, 0, -4, -3, 6, 11, 0, -21, -18, 29, 96, 128]
            .iter()
            .map(|&v| v as f64)
            .collect();
        let reversed: Vec<f64> = printed.iter().rev().copied().collect();
        assert!(close(
            zero_phase_response(FilterType::I, &reversed, 0.0),
            326.0
        ));
        assert!(close(
            zero_phase_response(FilterType::I, &printed, 0.0),
            453.0
        ));
    }

    #[test]
    fn structural_adder_counts() {
        // 13 nonzero coefficients, order 24: every tap needs its adder.
        let full: Vec<i64> = (1..=13).collect();
        assert_eq!(structural_adders(FilterType::I, 24, &full), 24);

        // Two zero coefficients away from the center save two adders each.
        let h: Vec<i64> = [128, 96, 29, -18, -21, 0, 11, 6, -3, -4, 0, 2, 1].to_vec();
        assert_eq!(structural_adders(FilterType::I, 24, &h), 20);

        let h2: Vec<i64> = [253, 134, 0, -52, -23, 16, 20, 0, -11, -5, 3, 3].to_vec();
        assert_eq!(structural_adders(FilterType::II, 23, &h2), 19);

        // A zero center tap of a type I filter saves one adder.
        let mut center_zero = full.clone();
        center_zero[0] = 0;
        assert_eq!(structural_adders(FilterType::I, 24, &center_zero), 23);

        // The all-zero "filter" has no adders, not a negative count.
        let zeros = vec![0i64; 13];
        assert_eq!(structural_adders(FilterType::I, 24, &zeros), 0);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{
            "type": "I", "order": 24, "wordlength": 8,
            "gain": {"mode": "variable", "lo": 0.6667, "hi": 1.3333},
            "bands": [
                {"from_pi": 0.0, "to_pi": 0.3, "lower": 0.9843, "upper": 1.0157},
                {"from_pi": 0.5, "to_pi": 1.0, "lower": -0.0066, "upper": 0.0066}
            ]
        }"#;
        let spec = FilterSpec::from_json(text).unwrap();
        assert_eq!(spec.order, 24);
        assert_eq!(spec.filter_type, FilterType::I);
        assert_eq!(spec.coefficient_count(), 13);
        assert!(matches!(spec.gain, GainMode::Variable { .. }));
        let again = FilterSpec::from_json(&spec.to_json()).unwrap();
        assert_eq!(spec, again);

        let fixed = r#"{
            "type": "II", "order": 23, "wordlength": 8,
            "gain": {"mode": "fixed", "value": 1.0},
            "bands": [{"from_pi": 0.0, "to_pi": 0.3, "lower": 0.9, "upper": 1.1}]
        }"#;
        let spec = FilterSpec::from_json(fixed).unwrap();
        assert_eq!(spec.gain, GainMode::Fixed { value: 1.0 });
    }

    #[test]
    fn widened_moves_both_bounds() {
        let spec = FilterSpec::new(
            vec![Band {
                from_pi: 0.0,
                to_pi: 0.5,
                lower: 0.9,
                upper: 1.1,
            }],
            8,
            FilterType::I,
            4,
            GainMode::Fixed { value: 1.0 },
        )
        .unwrap();
        let w = spec.widened(0.05);
        assert!(close(w.bands[0].lower, 0.85));
        assert!(close(w.bands[0].upper, 1.15));
        assert_eq!(w.order, spec.order);
    }
}
