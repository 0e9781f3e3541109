use std::path::Path;

use clap::ValueEnum;
use qga_maxcut::bench::GraphSpec;
use serde::Deserialize;

use crate::CliError;

#[derive(ValueEnum, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum SuiteKind {
    Complete,
    Er,
}

/// Suite settings read from TOML. Every key is optional.
///
/// ```toml
/// suite = "er"
/// repeats = 5
/// seed = 0
/// max_part_size = 6
/// graphs = ["er:24:0.5:1"]
/// er = [{ n = 50, p = 0.5, seed = 3 }]
/// ```
#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
pub struct SuiteFile {
    pub suite: Option<SuiteKind>,
    pub repeats: Option<usize>,
    pub seed: Option<u64>,
    pub max_part_size: Option<usize>,
    pub qubit_cap: Option<usize>,
    pub iteration_mode: Option<String>,
    pub polish: Option<bool>,
    /// Vertex counts for the complete suite.
    pub complete: Option<Vec<usize>>,
    pub er: Option<Vec<ErEntry>>,
    /// Graph spec strings, added to `er` entries.
    pub graphs: Option<Vec<String>>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct ErEntry {
    pub n: usize,
    pub p: f64,
    #[serde(default)]
    pub seed: u64,
}

impl SuiteFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }

    /// Instances from `er` and `graphs`, or `None` when neither is set.
    pub fn er_specs(&self) -> Result<Option<Vec<GraphSpec>>, CliError> {
        if self.er.is_none() && self.graphs.is_none() {
            return Ok(None);
        }
        let mut specs: Vec<GraphSpec> = self
            .er
            .iter()
            .flatten()
            .map(|e| GraphSpec::ErdosRenyi { n: e.n, p: e.p, seed: e.seed })
            .collect();
        for s in self.graphs.iter().flatten() {
            specs.push(s.parse().map_err(|e: qga_maxcut::Error| CliError::Usage(format!("config: {e}")))?);
        }
        Ok(Some(specs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_file() {
        let f: SuiteFile = toml::from_str(
            r#"
            suite = "er"
            repeats = 3
            max_part_size = 6
            graphs = ["complete:9"]
            er = [{ n = 20, p = 0.3 }]
            "#,
        )
        .unwrap();
        assert_eq!(f.suite, Some(SuiteKind::Er));
        let specs = f.er_specs().unwrap().unwrap();
        assert_eq!(specs[0], GraphSpec::ErdosRenyi { n: 20, p: 0.3, seed: 0 });
        assert_eq!(specs[1], GraphSpec::Complete { n: 9, w: 1 });
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(toml::from_str::<SuiteFile>("repeatz = 3").is_err());
    }
}
