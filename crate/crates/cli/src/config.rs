//! Settings from the optional TOML file, overridden by flags.

use std::io::IsTerminal;
use std::path::{Path, PathBuf};

use erotetic::prover::SearchBounds;
use erotetic::sequent::{validate_assignment, DefeaterAssignment, DefeaterSet};
use serde::Deserialize;

use crate::error::CliError;
use crate::{ColorChoice, Format, GlobalArgs};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    defeaters: Option<PathBuf>,
    format: Option<Format>,
    color: Option<ColorChoice>,
    /// Extra exception members for the agent, e.g. `"[{w}]"`.
    exceptions: Option<String>,
    #[serde(default)]
    bounds: Option<SearchBounds>,
}

/// Fully resolved settings for one command.
#[derive(Debug, Clone)]
pub struct Config {
    pub assignment: DefeaterAssignment,
    pub bounds: SearchBounds,
    pub format: Format,
    pub color: bool,
    pub exceptions: DefeaterSet,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_assignment(path: &Path) -> Result<DefeaterAssignment, CliError> {
    let text = read(path)?;
    let a = DefeaterAssignment::parse(&text).map_err(|e| CliError::Parse {
        what: format!("defeater file {}", path.display()),
        message: e.to_string(),
    })?;
    validate_assignment(&a).map_err(|vs| CliError::InvalidAssignment {
        path: path.display().to_string(),
        violations: vs.iter().map(|v| v.to_string()).collect(),
    })?;
    Ok(a)
}

impl Config {
    pub fn resolve(g: &GlobalArgs) -> Result<Config, CliError> {
        let file: FileConfig = match &g.config {
            Some(path) => toml::from_str(&read(path)?).map_err(|e| CliError::Parse {
                what: format!("config file {}", path.display()),
                message: e.to_string(),
            })?,
            None => FileConfig::default(),
        };
        let assignment = match g.defeaters.as_ref().or(file.defeaters.as_ref()) {
            Some(path) => load_assignment(path)?,
            None => DefeaterAssignment::new(),
        };
        let mut bounds = file.bounds.unwrap_or_default();
        if let Some(n) = g.max_nodes {
            bounds.max_nodes = n;
        }
        if let Some(n) = g.max_depth {
            bounds.max_depth = n;
        }
        bounds.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        let exceptions = match g.exceptions.as_ref().or(file.exceptions.as_ref()) {
            Some(text) => text
                .parse()
                .map_err(|e: erotetic::formula::ParseError| CliError::Parse {
                    what: "exception members".into(),
                    message: e.to_string(),
                })?,
            None => DefeaterSet::new(),
        };
        let color = match g.color.or(file.color).unwrap_or(ColorChoice::Auto) {
            ColorChoice::Always => true,
            ColorChoice::Never => false,
            ColorChoice::Auto => std::io::stdout().is_terminal() && std::env::var_os("NO_COLOR").is_none(),
        };
        Ok(Config {
            assignment,
            bounds,
            format: g.format.or(file.format).unwrap_or(Format::Text),
            color,
            exceptions,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args() -> GlobalArgs {
        GlobalArgs {
            defeaters: None,
            config: None,
            format: None,
            color: Some(ColorChoice::Never),
            max_nodes: None,
            max_depth: None,
            exceptions: None,
        }
    }

    #[test]
    fn defaults_without_files() {
        let c = Config::resolve(&args()).unwrap();
        assert!(c.assignment.is_empty() && c.exceptions.is_empty());
        assert_eq!(
            (c.format, c.color, c.bounds),
            (Format::Text, false, SearchBounds::default())
        );
    }

    #[test]
    fn flags_override_file_bounds() {
        let file: FileConfig = toml::from_str("format = \"json\"\n[bounds]\nmax_nodes = 7\nmax_depth = 3\n").unwrap();
        assert_eq!(file.bounds.unwrap().max_nodes, 7);
        let dir = std::env::temp_dir().join(format!("erotetic-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("c.toml");
        std::fs::write(&path, "format = \"json\"\n[bounds]\nmax_nodes = 7\nmax_depth = 3\n").unwrap();
        let g = GlobalArgs {
            config: Some(path),
            max_depth: Some(9),
            ..args()
        };
        let c = Config::resolve(&g).unwrap();
        assert_eq!((c.format, c.bounds.max_nodes, c.bounds.max_depth), (Format::Json, 7, 9));
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn bad_exceptions_and_bounds_are_rejected() {
        let g = GlobalArgs {
            exceptions: Some("[{w".into()),
            ..args()
        };
        assert!(matches!(Config::resolve(&g), Err(CliError::Parse { .. })));
        let g = GlobalArgs {
            max_nodes: Some(0),
            ..args()
        };
        assert!(matches!(Config::resolve(&g), Err(CliError::Usage(_))));
    }

    #[test]
    fn unknown_config_keys_fail() {
        assert!(toml::from_str::<FileConfig>("colour = true").is_err());
    }
}
