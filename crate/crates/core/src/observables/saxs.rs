use std::fmt::Write as _;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Vec3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SaxsProfile {
    /// Å⁻¹, strictly increasing.
    pub q: Vec<f64>,
    pub intensity: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<f64>>,
}

impl SaxsProfile {
    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    /// Linear interpolation of intensity (and σ) at `q`; `None` outside the grid.
    pub fn interpolate(&self, q: f64) -> Option<(f64, Option<f64>)> {
        let n = self.q.len();
        if n == 0 || q < self.q[0] || q > self.q[n - 1] {
            return None;
        }
        let hi = self.q.partition_point(|&x| x < q).min(n - 1);
        if self.q[hi] == q || hi == 0 {
            return Some((self.intensity[hi], self.sigma.as_ref().map(|s| s[hi])));
        }
        let lo = hi - 1;
        let w = (q - self.q[lo]) / (self.q[hi] - self.q[lo]);
        let lerp = |v: &[f64]| v[lo] + w * (v[hi] - v[lo]);
        Some((lerp(&self.intensity), self.sigma.as_deref().map(lerp)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub chi: f64,
    pub scale: f64,
    /// Number of q points compared.
    pub points: usize,
}

pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Debye sum `Σᵢ Σⱼ fᵢ fⱼ sinc(q rᵢⱼ)` over all bead pairs including i = j.
pub fn saxs_debye(positions: &[Vec3], form_factors: &[f64], q: &[f64]) -> SaxsProfile {
    assert_eq!(positions.len(), form_factors.len(), "one form factor per bead");
    let self_term: f64 = form_factors.iter().map(|f| f * f).sum();
    let mut pairs = Vec::with_capacity(positions.len() * positions.len().saturating_sub(1) / 2);
    for i in 0..positions.len() {
        for j in i + 1..positions.len() {
            pairs.push(((positions[i] - positions[j]).norm(), form_factors[i] * form_factors[j]));
        }
    }
    let intensity = q
        .iter()
        .map(|&qk| self_term + 2.0 * pairs.iter().map(|&(r, ff)| ff * sinc(qk * r)).sum::<f64>())
        .collect();
    SaxsProfile {
        q: q.to_vec(),
        intensity,
        sigma: None,
    }
}

/// Closed-form scale and reduced chi of `calc` against a reference carrying σ.
/// The reference is interpolated onto the calculated grid; calculated points
/// outside the reference range are skipped.
pub fn fit_saxs(calc: &SaxsProfile, reference: &SaxsProfile) -> Result<FitResult> {
    if reference.sigma.is_none() {
        return Err(Error::Fit("reference profile has no σ column".into()));
    }
    let mut rows = Vec::with_capacity(calc.len());
    for (k, &q) in calc.q.iter().enumerate() {
        if let Some((i_ref, Some(s))) = reference.interpolate(q) {
            if !(s > 0.0) {
                return Err(Error::Fit(format!("σ = {s} at q = {q}")));
            }
            rows.push((calc.intensity[k], i_ref, s));
        }
    }
    if rows.is_empty() {
        return Err(Error::Fit(
            "no overlap between calculated and reference q ranges".into(),
        ));
    }
    let (num, den) = rows.iter().fold((0.0, 0.0), |(n, d), &(ic, ir, s)| {
        (n + ic * ir / (s * s), d + ic * ic / (s * s))
    });
    if den == 0.0 {
        return Err(Error::Fit("calculated profile is identically zero".into()));
    }
    let scale = num / den;
    let ss: f64 = rows.iter().map(|&(ic, ir, s)| ((scale * ic - ir) / s).powi(2)).sum();
    Ok(FitResult {
        chi: (ss / rows.len() as f64).sqrt(),
        scale,
        points: rows.len(),
    })
}

/// Noisy copy of `profile` with `σ(q) = a·I(q) + b`.
pub fn synth_reference<R: Rng + ?Sized>(profile: &SaxsProfile, a: f64, b: f64, rng: &mut R) -> SaxsProfile {
    let sigma: Vec<f64> = profile.intensity.iter().map(|&i| a * i + b).collect();
    let intensity = profile
        .intensity
        .iter()
        .zip(&sigma)
        .map(|(&i, &s)| {
            let z: f64 = StandardNormal.sample(rng);
            i + s * z
        })
        .collect();
    SaxsProfile {
        q: profile.q.clone(),
        intensity,
        sigma: Some(sigma),
    }
}

/// Whitespace-separated `q I [σ]` rows; `#` starts a comment.
pub fn parse_profile(text: &str) -> Result<SaxsProfile> {
    let mut q = Vec::new();
    let mut intensity = Vec::new();
    let mut sigma = Vec::new();
    let mut columns = None;
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let values: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse {
                line: n + 1,
                message: e.to_string(),
            })?;
        if !(2..=3).contains(&values.len()) || *columns.get_or_insert(values.len()) != values.len() {
            return Err(Error::Parse {
                line: n + 1,
                message: format!("expected a consistent 2 or 3 columns, got {}", values.len()),
            });
        }
        if let Some(&last) = q.last() {
            if values[0] <= last {
                return Err(Error::Parse {
                    line: n + 1,
                    message: "q must be strictly increasing".into(),
                });
            }
        }
        q.push(values[0]);
        intensity.push(values[1]);
        if values.len() == 3 {
            sigma.push(values[2]);
        }
    }
    if q.is_empty() {
        return Err(Error::Parse {
            line: 0,
            message: "profile has no data rows".into(),
        });
    }
    Ok(SaxsProfile {
        q,
        intensity,
        sigma: (columns == Some(3)).then_some(sigma),
    })
}

pub fn write_profile(profile: &SaxsProfile) -> String {
    let mut out = String::from("# q I sigma\n");
    for k in 0..profile.len() {
        match &profile.sigma {
            Some(s) => writeln!(out, "{:e} {:e} {:e}", profile.q[k], profile.intensity[k], s[k]),
            None => writeln!(out, "{:e} {:e}", profile.q[k], profile.intensity[k]),
        }
        .expect("writing to a String");
    }
    out
}
