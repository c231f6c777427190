//! Run configuration: defaults, overridden by a key=value file, overridden by flags.

use sharp_ineq::report::Record;
use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(format!("format must be json or csv, got {s:?}")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    Separated,
    Perturbed,
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "separated" => Ok(Profile::Separated),
            "perturbed" => Ok(Profile::Perturbed),
            _ => Err(format!("profile must be separated or perturbed, got {s:?}")),
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Separated => "separated",
            Profile::Perturbed => "perturbed",
        })
    }
}

/// Every setting a command may read. Unused fields keep their defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: String,
    pub n: usize,
    pub s: f64,
    /// Band limit K of the zonal expansions.
    pub band: usize,
    /// Quadrature size Q.
    pub nodes: usize,
    /// Half-width L of the flow box.
    pub half_width: f64,
    /// Points per axis N of the flow grid.
    pub grid: usize,
    pub seed: u64,
    pub corpus_size: usize,
    /// Band limit of the random corpus functions.
    pub corpus_band: usize,
    /// Constant of the checked inequality, in units of its conjectured value.
    pub constant: f64,
    /// Relative tolerance of margin checks.
    pub tol: f64,
    pub profile: Profile,
    pub t_end: f64,
    pub samples: usize,
    pub amplitude: f64,
    pub scale: f64,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn defaults(command: &str) -> Self {
        let (band, nodes, corpus_band, tol) = match command {
            "constants" => (20, 200, 12, 1e-9),
            "mto" => (16, 400, 8, 1e-9),
            "flow" => (64, 200, 12, 0.01),
            _ => (64, 200, 12, 1e-9),
        };
        Self {
            command: command.to_string(),
            n: 2,
            s: 0.5,
            band,
            nodes,
            half_width: 20.0,
            grid: 128,
            seed: 1,
            corpus_size: 100,
            corpus_band,
            constant: 1.0,
            tol,
            profile: Profile::Separated,
            t_end: 0.25,
            samples: 25,
            amplitude: 0.8,
            scale: 1.5,
            format: Format::Json,
            output: None,
        }
    }

    /// Apply one `key=value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, String>
        where
            T::Err: fmt::Display,
        {
            value.parse().map_err(|e| format!("{key}: cannot parse {value:?}: {e}"))
        }
        match key {
            "n" => self.n = parse(key, value)?,
            "s" => self.s = parse(key, value)?,
            "band" => self.band = parse(key, value)?,
            "nodes" => self.nodes = parse(key, value)?,
            "L" => self.half_width = parse(key, value)?,
            "N" => self.grid = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            "corpus-size" => self.corpus_size = parse(key, value)?,
            "corpus-band" => self.corpus_band = parse(key, value)?,
            "C" => self.constant = parse(key, value)?,
            "tol" => self.tol = parse(key, value)?,
            "profile" => self.profile = parse(key, value)?,
            "t-end" => self.t_end = parse(key, value)?,
            "samples" => self.samples = parse(key, value)?,
            "amplitude" => self.amplitude = parse(key, value)?,
            "scale" => self.scale = parse(key, value)?,
            "format" => self.format = parse(key, value)?,
            "output" => self.output = Some(PathBuf::from(value)),
            _ => return Err(format!("unknown configuration key {key:?}")),
        }
        Ok(())
    }

    /// Apply a flat `key = value` file. Blank lines and `#` comments are skipped.
    pub fn apply_file(&mut self, path: &Path) -> Result<(), String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        for (key, value) in parse_key_values(&text)? {
            self.set(&key, &value)?;
        }
        Ok(())
    }

    /// Range checks that do not depend on the mathematics of a module.
    pub fn validate(&self) -> Result<(), String> {
        if self.corpus_size == 0 {
            return Err("corpus-size must be at least 1".into());
        }
        if self.corpus_band == 0 || self.band == 0 {
            return Err("band limits must be at least 1".into());
        }
        if !(self.tol.is_finite() && self.tol >= 0.0) {
            return Err(format!("tol must be a nonnegative number, got {}", self.tol));
        }
        if !(self.constant.is_finite() && self.constant > 0.0) {
            return Err(format!("C must be positive, got {}", self.constant));
        }
        if self.samples < 5 {
            return Err(format!("samples must be at least 5, got {}", self.samples));
        }
        Ok(())
    }

    pub fn to_record(&self) -> Record {
        Record::new()
            .with("command", self.command.as_str())
            .with("n", self.n)
            .with("s", self.s)
            .with("band", self.band)
            .with("nodes", self.nodes)
            .with("L", self.half_width)
            .with("N", self.grid)
            .with("seed", self.seed)
            .with("corpus_size", self.corpus_size)
            .with("corpus_band", self.corpus_band)
            .with("C", self.constant)
            .with("tol", self.tol)
            .with("profile", self.profile.to_string())
            .with("t_end", self.t_end)
            .with("samples", self.samples)
            .with("amplitude", self.amplitude)
            .with("scale", self.scale)
            .with("format", self.format.to_string())
    }
}

/// Lines of `key = value`; later keys win.
pub fn parse_key_values(text: &str) -> Result<BTreeMap<String, String>, String> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| format!("line {}: expected key=value, got {raw:?}", i + 1))?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() {
            return Err(format!("line {}: empty key", i + 1));
        }
        out.insert(k.to_string(), v.to_string());
    }
    Ok(out)
}
