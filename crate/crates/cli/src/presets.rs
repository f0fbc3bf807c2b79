//! Preset lookup: `$GWDK_PRESET_DIR/<name>.json` first, then the copies
//! compiled into the binary.

use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;

use crate::error::{CliError, Result};

pub const PRESET_DIR_ENV: &str = "GWDK_PRESET_DIR";

const EMBEDDED: &[(&str, &str)] = &[
    ("aligo-like", include_str!("../../../presets/aligo-like.json")),
    ("niobe-like", include_str!("../../../presets/niobe-like.json")),
    ("binary-100Mpc", include_str!("../../../presets/binary-100Mpc.json")),
];

pub fn names() -> impl Iterator<Item = &'static str> {
    EMBEDDED.iter().map(|(n, _)| *n)
}

fn from_dir(name: &str) -> Option<PathBuf> {
    let dir = std::env::var_os(PRESET_DIR_ENV)?;
    let path = Path::new(&dir).join(format!("{name}.json"));
    path.is_file().then_some(path)
}

/// Raw JSON text of preset `name`.
pub fn preset_text(name: &str) -> Result<String> {
    if let Some(path) = from_dir(name) {
        return std::fs::read_to_string(&path).map_err(|source| CliError::Read { path, source });
    }
    EMBEDDED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| text.to_string())
        .ok_or_else(|| CliError::UnknownPreset(name.to_string()))
}

pub fn load<T: DeserializeOwned>(name: &str) -> Result<T> {
    parse_json(&preset_text(name)?, &format!("preset {name}"))
}

pub fn load_path<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })?;
    parse_json(&text, &path.display().to_string())
}

pub(crate) fn parse_json<T: DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| CliError::Parse { what: what.to_string(), message: e.to_string() })
}
