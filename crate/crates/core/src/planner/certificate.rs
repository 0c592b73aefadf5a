//! Machine-checkable synthesis certificates.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::StrategyTree;
use crate::bilinear::json::{self, AlgorithmJson};
use crate::bilinear::BilinearAlgorithm;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SynthesisCertificate {
    pub q: u64,
    pub n: usize,
    #[serde(default = "one")]
    pub l: usize,
    pub rank: usize,
    pub verified: bool,
    pub techniques: Vec<String>,
    pub strategy: StrategyTree,
    pub algorithm: AlgorithmJson,
}

fn one() -> usize {
    1
}

impl SynthesisCertificate {
    /// Verifies `alg` and records it; fails if it does not verify.
    pub fn new(q: u64, n: usize, l: usize, strategy: StrategyTree, alg: &BilinearAlgorithm) -> Result<Self> {
        if let Some((i, j)) = alg.first_failure()? {
            return Err(Error::Verification(format!("basis pair ({i}, {j}) disagrees")));
        }
        Ok(SynthesisCertificate {
            q,
            n,
            l,
            rank: alg.rank(),
            verified: true,
            techniques: strategy.techniques().into_iter().collect(),
            strategy,
            algorithm: json::to_json(alg),
        })
    }

    pub fn algorithm(&self) -> Result<BilinearAlgorithm> {
        json::from_json(&self.algorithm)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    /// Parses and re-verifies; the stored status is replaced by the recomputed one.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let mut c: SynthesisCertificate = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let alg = c.algorithm()?;
        if c.rank != alg.rank() {
            return Err(Error::Verification(format!("claimed rank {} but the algorithm has {}", c.rank, alg.rank())));
        }
        c.verified = alg.verify()?;
        Ok(c)
    }
}

/// Outcome of re-running exhaustive verification on a file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub rank: usize,
    pub symmetric: bool,
    pub target: String,
    pub lower_bound: Option<usize>,
    pub failure: Option<(usize, usize)>,
}

impl VerifyReport {
    pub fn of(alg: &BilinearAlgorithm) -> Result<Self> {
        Ok(VerifyReport {
            rank: alg.rank(),
            symmetric: alg.is_symmetric(),
            target: alg.target.to_string(),
            lower_bound: alg.lower_bound(),
            failure: alg.first_failure()?,
        })
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some((i, j)) = self.failure {
            return write!(f, "FAILED rank {}: basis pair ({i}, {j}) disagrees with {}", self.rank, self.target);
        }
        write!(f, "VERIFIED rank {}", self.rank)?;
        if self.symmetric {
            write!(f, ", symmetric")?;
        }
        if let Some(lb) = self.lower_bound {
            write!(f, ", lower bound {lb}")?;
        }
        Ok(())
    }
}

/// Reads a certificate or a bare algorithm, checking a certificate's claimed rank.
pub fn load_algorithm(s: &str) -> Result<BilinearAlgorithm> {
    let v: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    let alg = if v.get("algorithm").is_some() {
        let c: SynthesisCertificate = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
        let alg = c.algorithm()?;
        if c.rank != alg.rank() {
            return Err(Error::Verification(format!("claimed rank {} but the algorithm has {}", c.rank, alg.rank())));
        }
        alg
    } else {
        let j: AlgorithmJson = serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()))?;
        json::from_json(&j)?
    };
    Ok(alg)
}

pub fn verify_str(s: &str) -> Result<VerifyReport> {
    VerifyReport::of(&load_algorithm(s)?)
}

pub fn verify_file(path: &Path) -> Result<VerifyReport> {
    let s = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    verify_str(&s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planner::{synth, synth_truncated, SynthOptions};

    #[test]
    fn round_trip_keeps_verification() {
        let c = synth(2, 4, &SynthOptions::default()).unwrap();
        let back = SynthesisCertificate::from_json_str(&c.to_json_string()).unwrap();
        assert_eq!(back, c);
        assert_eq!(verify_str(&c.to_json_string()).unwrap().to_string(), "VERIFIED rank 9, symmetric, lower bound 7");
    }

    #[test]
    fn truncated_report() {
        let c = synth_truncated(2, 1, 2, &SynthOptions::default()).unwrap();
        let r = verify_str(&c.to_json_string()).unwrap();
        assert!(r.to_string().starts_with("VERIFIED rank 3"));
        assert_eq!(r.lower_bound, None);
    }

    #[test]
    fn corrupted_certificate_fails() {
        let mut c = synth(3, 2, &SynthOptions::default()).unwrap();
        c.algorithm.w[0][0] = vec![(c.algorithm.w[0][0][0] + 1) % 3];
        let r = verify_str(&c.to_json_string()).unwrap();
        assert!(!r.passed());
        assert!(r.to_string().starts_with("FAILED rank 3: basis pair"));
        assert!(!SynthesisCertificate::from_json_str(&c.to_json_string()).unwrap().verified);
        c.rank = 2;
        assert!(matches!(verify_str(&c.to_json_string()), Err(Error::Verification(_))));
    }
}
