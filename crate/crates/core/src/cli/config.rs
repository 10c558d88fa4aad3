use std::fmt;
use std::path::PathBuf;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::quantum::KMode;
use crate::semiclassical::SemiclassicalParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Quantum,
    SemiPaper,
    SemiStrict,
}

impl Mode {
    pub fn semiclassical(self) -> Option<SemiclassicalParams> {
        match self {
            Self::Quantum => None,
            Self::SemiPaper => Some(SemiclassicalParams::paper()),
            Self::SemiStrict => Some(SemiclassicalParams::strict()),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Quantum => "quantum",
            Self::SemiPaper => "semi-paper",
            Self::SemiStrict => "semi-strict",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Gates,
    Integrals,
    Phasespace,
    Appendixa,
    Appendixb,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OracleSuite {
    Shor,
    Integrals,
    Trace,
    Semistate,
    All,
}

/// `"marginal"` or a residue-class index.
pub fn parse_k(s: &str) -> std::result::Result<KMode, String> {
    if s.eq_ignore_ascii_case("marginal") {
        return Ok(KMode::Marginal);
    }
    s.parse::<u64>()
        .map(KMode::Fixed)
        .map_err(|_| format!("expected a non-negative integer or \"marginal\", got {s:?}"))
}

/// Parses `re`, `re,im` or `re+imi`-style complex literals such as `0.5-1.5i`.
pub fn parse_complex(s: &str) -> Result<num_complex::Complex64> {
    let t = s.trim();
    if let Some((re, im)) = t.split_once(',') {
        let re = re.trim().parse::<f64>();
        let im = im.trim().parse::<f64>();
        return match (re, im) {
            (Ok(re), Ok(im)) => Ok(num_complex::Complex64::new(re, im)),
            _ => Err(invalid(format!("cannot parse complex number {s:?}"))),
        };
    }
    t.parse::<num_complex::Complex64>()
        .map_err(|_| invalid(format!("cannot parse complex number {s:?}")))
}

/// Everything one CLI invocation needs.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub n: u64,
    /// Drawn from the seeded generator when absent.
    pub x: Option<u64>,
    /// Defaults to the smallest `l` with `2^l ≥ N²`.
    pub l: Option<u32>,
    pub k: KMode,
    pub mode: Mode,
    pub seed: u64,
    pub max_trials: usize,
    pub out_path: Option<PathBuf>,
    pub format: Format,
    pub zhat: Option<f64>,
}

impl RunConfig {
    pub fn new(n: u64, mode: Mode) -> Self {
        Self {
            n,
            x: None,
            l: None,
            k: KMode::Fixed(0),
            mode,
            seed: 0,
            max_trials: 100,
            out_path: None,
            format: Format::Csv,
            zhat: None,
        }
    }

    pub fn with_x(mut self, x: u64) -> Self {
        self.x = Some(x);
        self
    }

    pub fn with_l(mut self, l: u32) -> Self {
        self.l = Some(l);
        self
    }

    pub fn with_k(mut self, k: KMode) -> Self {
        self.k = k;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_max_trials(mut self, max_trials: usize) -> Self {
        self.max_trials = max_trials;
        self
    }
}
