use crate::error::{Error, Result};

/// Resource caps shared by the solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of free subconcepts (atoms and quantified concepts) in type elimination.
    pub closure: usize,
    /// Largest domain tried by the brute-force oracle.
    pub domain: usize,
    /// Largest number of interpretations enumerated for one domain size.
    pub interpretations: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            closure: 20,
            domain: 3,
            interpretations: 1 << 22,
        }
    }
}

impl Limits {
    /// Parses overrides of the form `closure=14,domain=3,interpretations=65536`.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Argument(format!("expected key=value, got `{part}`")))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::Argument(format!("bad number in `{part}`")))?;
            match key.trim() {
                "closure" => self.closure = value as usize,
                "domain" => self.domain = value.max(1) as usize,
                "interpretations" => self.interpretations = value,
                other => return Err(Error::Argument(format!("unknown limit `{other}`"))),
            }
        }
        Ok(self)
    }
}
