//! Feasible-margin analysis.
//!
//! Given characterization rows (possibly across several domains), computes
//! the interval of margins `mu` that leaves every symbol unchanged: an arrow
//! survives while `mu < |V|`, an equal sign survives while `mu >= |V|`. The
//! cells attaining the bounds are the binding constraints — the ones a small
//! change of `mu` would flip first.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::lexicon::EmotionId;
use crate::pipeline::{classify, CharacterizationRow, ConfigError, VariationSymbol};

/// Cells whose |V| lies within this distance of an interval bound are all
/// reported as binding, so ties survive floating-point dust.
pub const BINDING_TIE_TOLERANCE: f64 = 1e-12;

/// One table cell pinned to an interval bound.
#[derive(Debug, Clone, PartialEq)]
pub struct BindingCell {
    pub domain: String,
    pub emotion: EmotionId,
    pub variation: f64,
}

/// The margin interval `{mu : mu > 0, mu >= lower, mu < upper}` over which
/// all symbols stay fixed.
#[derive(Debug, Clone, PartialEq)]
pub struct MuSensitivity {
    /// Largest |V| among equal cells; 0 when there are none (the bound is
    /// then just `mu > 0`).
    pub lower: f64,
    /// Smallest |V| among arrow cells, exclusive; `None` when unbounded.
    pub upper: Option<f64>,
    /// Equal cells attaining `lower` (empty when `lower` is 0).
    pub binding_lower: Vec<BindingCell>,
    /// Arrow cells attaining `upper`.
    pub binding_upper: Vec<BindingCell>,
}

impl MuSensitivity {
    /// Whether `mu` lies in the feasible interval.
    pub fn contains(&self, mu: f64) -> bool {
        mu > 0.0 && mu >= self.lower && self.upper.is_none_or(|u| mu < u)
    }
}

fn magnitude(v: f64) -> f64 {
    if v < 0.0 {
        -v
    } else {
        v
    }
}

/// Derives the feasible margin interval from rows grouped by domain.
pub fn mu_sensitivity(domains: &[(&str, &[CharacterizationRow])]) -> MuSensitivity {
    let mut lower = 0.0_f64;
    let mut upper: Option<f64> = None;
    for (_, rows) in domains {
        for row in *rows {
            let m = magnitude(row.variation);
            match row.symbol {
                VariationSymbol::Equal => {
                    if m > lower {
                        lower = m;
                    }
                }
                VariationSymbol::MoreInFake | VariationSymbol::LessInFake => {
                    if upper.is_none_or(|u| m < u) {
                        upper = Some(m);
                    }
                }
            }
        }
    }

    let mut binding_lower = Vec::new();
    let mut binding_upper = Vec::new();
    for (domain, rows) in domains {
        for row in *rows {
            let m = magnitude(row.variation);
            let cell = || BindingCell {
                domain: domain.to_string(),
                emotion: row.emotion.clone(),
                variation: row.variation,
            };
            match row.symbol {
                VariationSymbol::Equal => {
                    if lower > 0.0 && (lower - m) <= BINDING_TIE_TOLERANCE {
                        binding_lower.push(cell());
                    }
                }
                VariationSymbol::MoreInFake | VariationSymbol::LessInFake => {
                    if let Some(u) = upper {
                        if (m - u) <= BINDING_TIE_TOLERANCE {
                            binding_upper.push(cell());
                        }
                    }
                }
            }
        }
    }

    MuSensitivity {
        lower,
        upper,
        binding_lower,
        binding_upper,
    }
}

/// Re-classifies every row's variation at `mu` and reports whether all
/// symbols match the stored ones. Brute-force counterpart of
/// [`mu_sensitivity`], useful for scanning a grid of margins.
pub fn symbols_unchanged_at(
    domains: &[(&str, &[CharacterizationRow])],
    mu: f64,
) -> Result<bool, ConfigError> {
    for (_, rows) in domains {
        for row in *rows {
            if classify(row.variation, mu)? != row.symbol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
