use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use clap::ValueEnum;

use super::CliError;

/// Named computation selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Rate,
    Efflag,
    Kernel,
    Wkb,
    Trajectory,
    Spectrum,
    Propagator,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Self::Rate => "rate",
            Self::Efflag => "efflag",
            Self::Kernel => "kernel",
            Self::Wkb => "wkb",
            Self::Trajectory => "trajectory",
            Self::Spectrum => "spectrum",
            Self::Propagator => "propagator",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Real,
    Count,
    Sign,
    Path,
}

const KEYS: &[(&str, Kind)] = &[
    ("chi", Kind::Real),
    ("m", Kind::Real),
    ("n_max", Kind::Count),
    ("s_min", Kind::Real),
    ("s_max", Kind::Real),
    ("s_points", Kind::Count),
    ("rel_tol", Kind::Real),
    ("abs_tol", Kind::Real),
    ("terms", Kind::Count),
    ("h", Kind::Real),
    ("out_path", Kind::Path),
    ("p0", Kind::Real),
    ("eps", Kind::Real),
    ("bc", Kind::Sign),
    ("q_min", Kind::Real),
    ("q_max", Kind::Real),
    ("q_points", Kind::Count),
];

/// A validated parameter value.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Real(f64),
    Count(usize),
    Text(String),
}

fn kind_of(key: &str) -> Option<Kind> {
    KEYS.iter().find(|(k, _)| *k == key).map(|(_, kind)| *kind)
}

/// Parses `raw` as the value of `key`; `origin` prefixes error messages.
pub fn parse_value(key: &str, raw: &str, origin: &str) -> Result<Value, CliError> {
    let kind =
        kind_of(key).ok_or_else(|| CliError::Config(format!("{origin}: unknown key `{key}`")))?;
    let raw = raw.trim();
    let bad =
        |what: &str| CliError::Config(format!("{origin}: `{key}` expects {what}, got `{raw}`"));
    match kind {
        Kind::Real => match raw.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(Value::Real(v)),
            _ => Err(bad("a finite real number")),
        },
        Kind::Count => raw
            .parse::<usize>()
            .map(Value::Count)
            .map_err(|_| bad("a non-negative integer")),
        Kind::Sign => match raw {
            "1" | "+1" => Ok(Value::Real(1.0)),
            "-1" => Ok(Value::Real(-1.0)),
            _ => Err(bad("+1 (Feynman) or -1 (Dyson)")),
        },
        Kind::Path => {
            if raw.is_empty() {
                Err(bad("a path"))
            } else {
                Ok(Value::Text(raw.to_string()))
            }
        }
    }
}

/// Command plus validated key/value parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    params: BTreeMap<String, Value>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            params: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.params.insert(key.to_string(), value);
    }

    pub fn contains(&self, key: &str) -> bool {
        self.params.contains_key(key)
    }

    fn real_opt(&self, key: &str) -> Option<f64> {
        match self.params.get(key) {
            Some(Value::Real(v)) => Some(*v),
            _ => None,
        }
    }

    /// Real parameter or `default`.
    pub fn real(&self, key: &str, default: f64) -> f64 {
        self.real_opt(key).unwrap_or(default)
    }

    /// Real parameter that has no default.
    pub fn required_real(&self, key: &str) -> Result<f64, CliError> {
        self.real_opt(key).ok_or_else(|| {
            CliError::Config(format!(
                "missing required key `{key}` for command {}",
                self.command
            ))
        })
    }

    pub fn count(&self, key: &str, default: usize) -> usize {
        match self.params.get(key) {
            Some(Value::Count(v)) => *v,
            _ => default,
        }
    }

    pub fn text(&self, key: &str) -> Option<&str> {
        match self.params.get(key) {
            Some(Value::Text(v)) => Some(v),
            _ => None,
        }
    }
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_config_text(text: &str, origin: &str, into: &mut RunConfig) -> Result<(), CliError> {
    for (idx, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = format!("{origin}:{}", idx + 1);
        let (key, raw) = line.split_once('=').ok_or_else(|| {
            CliError::Config(format!("{at}: expected `key = value`, got `{line}`"))
        })?;
        let key = key.trim();
        into.set(key, parse_value(key, raw, &at)?);
    }
    Ok(())
}

/// Reads the optional config file, then applies `--set` overrides in order.
pub fn parse_config(
    command: Command,
    path: Option<&Path>,
    overrides: &[String],
) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::new(command);
    if let Some(path) = path {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        parse_config_text(&text, &path.display().to_string(), &mut cfg)?;
    }
    for item in overrides {
        let origin = format!("--set {item}");
        let (key, raw) = item
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("{origin}: expected key=value")))?;
        let key = key.trim();
        cfg.set(key, parse_value(key, raw, &origin)?);
    }
    Ok(cfg)
}

/// One key swept over an ordered list of values.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub key: String,
    pub values: Vec<Value>,
}

impl SweepSpec {
    /// Parses `key=v1,v2,...`.
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let origin = format!("--sweep {text}");
        let (key, list) = text
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("{origin}: expected key=v1,v2,...")))?;
        let key = key.trim().to_string();
        if matches!(kind_of(&key), Some(Kind::Path)) {
            return Err(CliError::Config(format!(
                "{origin}: `{key}` cannot be swept"
            )));
        }
        let values = list
            .split(',')
            .map(|raw| parse_value(&key, raw, &origin))
            .collect::<Result<Vec<_>, _>>()?;
        if values.is_empty() {
            return Err(CliError::Config(format!("{origin}: no values")));
        }
        Ok(Self { key, values })
    }

    /// Numeric value of entry `k` for the leading output column.
    pub fn numeric(&self, k: usize) -> f64 {
        match &self.values[k] {
            Value::Real(v) => *v,
            Value::Count(v) => *v as f64,
            Value::Text(_) => f64::NAN,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_format() {
        let mut cfg = RunConfig::new(Command::Rate);
        parse_config_text("# header\nchi = 1.0\n\nterms=3 # trailing\n", "t", &mut cfg).unwrap();
        assert_eq!(cfg.required_real("chi").unwrap(), 1.0);
        assert_eq!(cfg.count("terms", 5), 3);
        assert_eq!(cfg.count("n_max", 40), 40);
        assert_eq!(cfg.real("m", 1.0), 1.0);
    }

    #[test]
    fn errors_name_the_line() {
        let mut cfg = RunConfig::new(Command::Rate);
        let err = parse_config_text("m = 1\nchi = abc\n", "run.cfg", &mut cfg).unwrap_err();
        assert!(err.to_string().contains("run.cfg:2"), "{err}");
        let err = parse_config_text("Chi = 1\n", "run.cfg", &mut cfg).unwrap_err();
        assert!(err.to_string().contains("unknown key"));
        assert!(parse_config_text("chi 1\n", "x", &mut cfg).is_err());
        assert!(parse_config_text("chi = inf\n", "x", &mut cfg).is_err());
        assert!(parse_config_text("terms = -2\n", "x", &mut cfg).is_err());
        assert!(parse_config_text("bc = 0\n", "x", &mut cfg).is_err());
        assert!(RunConfig::new(Command::Rate).required_real("chi").is_err());
    }

    #[test]
    fn overrides_win() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        std::fs::write(&path, "chi = 1\nterms = 3\n").unwrap();
        let cfg = parse_config(Command::Rate, Some(&path), &["terms=8".into()]).unwrap();
        assert_eq!(cfg.count("terms", 5), 8);
        assert!(parse_config(Command::Rate, None, &["terms".into()]).is_err());
    }

    #[test]
    fn sweeps() {
        let sw = SweepSpec::parse("chi=0.5,1,2").unwrap();
        assert_eq!(sw.key, "chi");
        assert_eq!(
            sw.values,
            vec![Value::Real(0.5), Value::Real(1.0), Value::Real(2.0)]
        );
        assert!(SweepSpec::parse("chi=").is_err());
        assert!(SweepSpec::parse("nope=1").is_err());
        assert!(SweepSpec::parse("out_path=a").is_err());
    }
}
