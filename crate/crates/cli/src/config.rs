//! `key=value` configuration, located through `QORBIT_CONFIG`.

use std::fs;

pub const ENV_VAR: &str = "QORBIT_CONFIG";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub dim_cutoff: usize,
    /// Degree bound for relation-kill and compatibility probes.
    pub probe_degree_min: usize,
    /// Degree bound for confluence probes.
    pub probe_degree_max: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            dim_cutoff: 64,
            probe_degree_min: 3,
            probe_degree_max: 4,
            samples: 100,
            seed: 0,
        }
    }
}

impl Config {
    /// Defaults overridden by the file named in `QORBIT_CONFIG`, if set.
    pub fn load() -> Result<Self, String> {
        match std::env::var_os(ENV_VAR) {
            None => Ok(Config::default()),
            Some(path) => {
                let text = fs::read_to_string(&path)
                    .map_err(|e| format!("cannot read {}: {e}", path.to_string_lossy()))?;
                Config::parse(&text)
            }
        }
    }

    /// Blank lines and `#` comments are ignored; unknown keys are errors.
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut c = Config::default();
        for (k, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected key=value", k + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let num = |v: &str| -> Result<u64, String> {
                v.parse::<u64>()
                    .map_err(|_| format!("config line {}: `{v}` is not a non-negative integer", k + 1))
            };
            match key {
                "dim_cutoff" => c.dim_cutoff = num(value)? as usize,
                "probe_degree_min" => c.probe_degree_min = num(value)? as usize,
                "probe_degree_max" => c.probe_degree_max = num(value)? as usize,
                "samples" => c.samples = num(value)? as usize,
                "seed" => c.seed = num(value)?,
                other => return Err(format!("config line {}: unknown key `{other}`", k + 1)),
            }
        }
        if c.probe_degree_min > c.probe_degree_max {
            return Err("probe_degree_min exceeds probe_degree_max".into());
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_overrides() {
        assert_eq!(Config::parse("").unwrap(), Config::default());
        let c = Config::parse("# comment\ndim_cutoff = 8\n\nseed=3 # trailing\n").unwrap();
        assert_eq!(c.dim_cutoff, 8);
        assert_eq!(c.seed, 3);
        assert_eq!(c.probe_degree_max, 4);
        assert!(Config::parse("colour=red").is_err());
        assert!(Config::parse("dim_cutoff").is_err());
        assert!(Config::parse("dim_cutoff=-1").is_err());
        assert!(Config::parse("probe_degree_min=5").is_err());
    }
}
