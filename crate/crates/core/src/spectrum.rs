//! Normalised singular spectrum, Shannon entropy and spectral gap.
//!
//! The nonzero singular values `σ_1 ≥ … ≥ σ_k` of an equilibrium's
//! configuration matrix are normalised to a probability vector and
//! summarised by its entropy `S = −Σ σ̂ ln σ̂`. Two normalisations exist:
//! `power` (σ²/Σσ², the default) and `linear` (σ/Σσ).

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::configuration::ConfigurationMatrix;
use crate::error::{Error, Result};
use crate::linalg::{self, rank_threshold, SvdResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalizationMode {
    /// `σ² / Σσ²`
    #[default]
    Power,
    /// `σ / Σσ`
    Linear,
}

impl NormalizationMode {
    pub fn as_str(self) -> &'static str {
        match self {
            NormalizationMode::Power => "power",
            NormalizationMode::Linear => "linear",
        }
    }
}

impl FromStr for NormalizationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "power" => Ok(Self::Power),
            "linear" => Ok(Self::Linear),
            other => Err(Error::InvalidArgument(format!(
                "unknown normalization mode {other:?} (expected power or linear)"
            ))),
        }
    }
}

impl std::fmt::Display for NormalizationMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Normalise the nonzero singular values to sum to one. Exact zeros are
/// dropped; the caller is expected to have split off numerical zeros with
/// the rank threshold already.
pub fn normalize_spectrum(sigma: &[f64], mode: NormalizationMode) -> Result<Vec<f64>> {
    let weights: Vec<f64> = sigma
        .iter()
        .filter(|&&s| s > 0.0)
        .map(|&s| match mode {
            NormalizationMode::Power => s * s,
            NormalizationMode::Linear => s,
        })
        .collect();
    let total: f64 = weights.iter().sum();
    if weights.is_empty() || !(total > 0.0) {
        return Err(Error::EmptySpectrum);
    }
    Ok(weights.into_iter().map(|w| w / total).collect())
}

/// `−Σ p ln p` (nats).
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    if p.is_empty() {
        return Err(Error::InvalidDistribution("empty distribution".into()));
    }
    if let Some(bad) = p.iter().find(|&&x| !(x > 0.0 && x.is_finite())) {
        return Err(Error::InvalidDistribution(format!(
            "entries must be positive, found {bad}"
        )));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidDistribution(format!("entries sum to {total}, not 1")));
    }
    Ok(-p.iter().map(|&x| x * x.ln()).sum::<f64>())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralReport {
    /// All N singular values, descending.
    pub sigma_raw: Vec<f64>,
    /// The k nonzero values, normalised.
    pub sigma_normalized: Vec<f64>,
    pub entropy: f64,
    /// Smallest nonzero singular value.
    pub spectral_gap_raw: f64,
    pub spectral_gap_normalized: f64,
    pub rank: usize,
    pub normalization_mode: NormalizationMode,
}

pub fn spectral_report(a: &ConfigurationMatrix, mode: NormalizationMode, rel_tol: f64) -> Result<SpectralReport> {
    let s = linalg::svd(a)?;
    spectral_report_from_svd(&s, mode, rel_tol)
}

pub fn spectral_report_from_svd(s: &SvdResult, mode: NormalizationMode, rel_tol: f64) -> Result<SpectralReport> {
    let threshold = rank_threshold(&s.sigma, rel_tol);
    let nonzero: Vec<f64> = s.sigma.iter().copied().filter(|&x| x > threshold).collect();
    let sigma_normalized = normalize_spectrum(&nonzero, mode)?;
    let entropy = shannon_entropy(&sigma_normalized)?;
    Ok(SpectralReport {
        sigma_raw: s.sigma.clone(),
        spectral_gap_raw: *nonzero.last().ok_or(Error::EmptySpectrum)?,
        spectral_gap_normalized: *sigma_normalized.last().ok_or(Error::EmptySpectrum)?,
        rank: nonzero.len(),
        sigma_normalized,
        entropy,
        normalization_mode: mode,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configuration::{build_matrix, PointSet};

    #[test]
    fn equal_pair() {
        for mode in [NormalizationMode::Power, NormalizationMode::Linear] {
            assert_eq!(normalize_spectrum(&[1.0, 1.0], mode).unwrap(), vec![0.5, 0.5]);
        }
        let s = shannon_entropy(&[0.5, 0.5]).unwrap();
        assert!((s - 2f64.ln()).abs() < 1e-15);
        assert_eq!(format!("{s:.4}"), "0.6931");
    }

    #[test]
    fn circle_seven_distribution() {
        let p = normalize_spectrum(&[3.0, 3.0, 2.0, 2.0, 1.0, 1.0], NormalizationMode::Power).unwrap();
        let expected = [9.0 / 28.0, 9.0 / 28.0, 4.0 / 28.0, 4.0 / 28.0, 1.0 / 28.0, 1.0 / 28.0];
        for (a, b) in p.iter().zip(expected) {
            assert!((a - b).abs() < 1e-15);
        }
        for (a, b) in p.iter().zip([0.3214, 0.3214, 0.1429, 0.1429, 0.0357, 0.0357]) {
            assert!((a - b).abs() < 5e-5);
        }
        assert!((shannon_entropy(&p).unwrap() - 1.5236).abs() < 5e-5);
    }

    #[test]
    fn uniform_and_degenerate() {
        let p = normalize_spectrum(&[2.5; 4], NormalizationMode::Linear).unwrap();
        assert!(p.iter().all(|&x| (x - 0.25).abs() < 1e-15));
        assert_eq!(shannon_entropy(&[1.0]).unwrap(), 0.0);
    }

    #[test]
    fn errors() {
        assert_eq!(
            normalize_spectrum(&[0.0, 0.0], NormalizationMode::Power),
            Err(Error::EmptySpectrum)
        );
        assert!(matches!(
            shannon_entropy(&[0.5, 0.6]),
            Err(Error::InvalidDistribution(_))
        ));
        assert!(matches!(
            shannon_entropy(&[1.0, 0.0]),
            Err(Error::InvalidDistribution(_))
        ));
        assert!("cubic".parse::<NormalizationMode>().is_err());
    }

    #[test]
    fn linear_and_power_differ() {
        let a = build_matrix(&PointSet::from_reals(&[0.0, 0.1, 0.35, 0.6, 1.0]).unwrap());
        let p = spectral_report(&a, NormalizationMode::Power, 1e-10).unwrap();
        let l = spectral_report(&a, NormalizationMode::Linear, 1e-10).unwrap();
        assert_eq!(p.sigma_raw, l.sigma_raw);
        assert!((p.sigma_normalized[0] - l.sigma_normalized[0]).abs() > 1e-3);
        assert!(p.entropy < l.entropy);
    }

    #[test]
    fn triangle_report() {
        let a = build_matrix(
            &PointSet::new(vec![
                crate::matrix::C64::new(0.0, 0.0),
                crate::matrix::C64::new(1.0, 0.0),
                crate::matrix::C64::new(0.3, 0.8),
            ])
            .unwrap(),
        );
        let r = spectral_report(&a, NormalizationMode::Power, 1e-10).unwrap();
        assert_eq!(r.rank, 2);
        assert!((r.sigma_normalized[0] - 0.5).abs() < 1e-10);
        assert!((r.entropy - 2f64.ln()).abs() < 1e-10);
        assert!(r.spectral_gap_raw > 0.0);
    }
}
