//! JSON model configuration.

use std::path::Path;

use salpeter::principal::ModelConfig;
use serde::Deserialize;

use crate::error::CliError;

/// On-disk model description. All numbers are in units of the mass, or of
/// |E_B^1| when the mass is zero.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    mass: f64,
    centers: Vec<f64>,
    bindings: Vec<f64>,
}

/// Read and validate a model configuration.
pub fn load(path: &Path) -> Result<ModelConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|err| CliError::Input(format!("cannot read config {}: {err}", path.display())))?;
    let raw: ConfigFile = serde_json::from_str(&text)
        .map_err(|err| CliError::Input(format!("invalid config {}: {err}", path.display())))?;
    ModelConfig::new(raw.mass, raw.centers, raw.bindings)
        .map_err(|err| CliError::Input(format!("invalid config {}: {err}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(text: &str) -> tempfile::NamedTempFile {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(text.as_bytes()).unwrap();
        file
    }

    #[test]
    fn loads_a_twin_configuration() {
        let file = write_temp(r#"{"mass": 1.0, "centers": [-0.5, 0.5], "bindings": [0.5, 0.5]}"#);
        let cfg = load(file.path()).unwrap();
        assert_eq!(cfg.mass(), 1.0);
        assert_eq!(cfg.centers(), &[-0.5, 0.5]);
        assert_eq!(cfg.bindings(), &[0.5, 0.5]);
    }

    #[test]
    fn rejects_missing_fields_and_unknown_keys() {
        let missing = write_temp(r#"{"mass": 1.0, "centers": [0.0]}"#);
        let err = load(missing.path()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("bindings"), "{err}");

        let unknown = write_temp(r#"{"mass": 1.0, "centers": [0.0], "bindings": [0.5], "extra": 1}"#);
        let err = load(unknown.path()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("extra"), "{err}");
    }

    #[test]
    fn rejects_invalid_models() {
        let duplicate = write_temp(r#"{"mass": 1.0, "centers": [0.0, 0.0], "bindings": [0.5, 0.5]}"#);
        assert_eq!(load(duplicate.path()).unwrap_err().exit_code(), 2);

        let unbound = write_temp(r#"{"mass": 1.0, "centers": [0.0], "bindings": [1.5]}"#);
        assert_eq!(load(unbound.path()).unwrap_err().exit_code(), 2);
    }
}
