//! Input resolution: turn a group source (built-in name, generator file, or
//! saved character table) into the bundle of validated data every command
//! works from.

use std::path::{Path, PathBuf};

use crate::chartab::{dixon_table, load_table, validate_against_class, CharacterTable};
use crate::error::{Error, Result};
use crate::matgroup::{builtin, closure, parse_group_file, GroupData, BUILTIN_NAMES};
use crate::tensorrep::{build_tensor_matrices, TensorMatrices};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSource {
    Builtin(String),
    GeneratorFile(PathBuf),
    TableFile(PathBuf),
}

impl GroupSource {
    /// Interpret a `--group` argument: a known built-in name, otherwise a
    /// path to a generator file.
    pub fn from_group_flag(value: &str) -> GroupSource {
        if BUILTIN_NAMES.contains(&value) {
            GroupSource::Builtin(value.to_string())
        } else {
            GroupSource::GeneratorFile(PathBuf::from(value))
        }
    }

    pub fn label(&self) -> String {
        match self {
            GroupSource::Builtin(name) => name.clone(),
            GroupSource::GeneratorFile(p) | GroupSource::TableFile(p) => file_label(p),
        }
    }
}

fn file_label(p: &Path) -> String {
    p.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| p.display().to_string())
}

/// Everything the commands need: the validated character table, the tensor
/// multiplicity matrices, and (when the source supplied generators) the
/// enumerated group itself.
#[derive(Debug)]
pub struct Prepared {
    pub label: String,
    pub group: Option<GroupData>,
    pub table: CharacterTable,
    pub matrices: TensorMatrices,
}

pub fn prepare(source: &GroupSource) -> Result<Prepared> {
    let label = source.label();
    let (group, table) = match source {
        GroupSource::Builtin(name) => {
            let g = builtin(name)?;
            let t = dixon_table(&g)?;
            (Some(g), t)
        }
        GroupSource::GeneratorFile(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::Io(std::io::Error::new(
                    e.kind(),
                    format!("{}: {e}", path.display()),
                ))
            })?;
            let file = parse_group_file(&text)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            let g = closure(&label, &file.generators, file.order_hint)?;
            let t = dixon_table(&g)?;
            (Some(g), t)
        }
        GroupSource::TableFile(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Error::Io(std::io::Error::new(
                    e.kind(),
                    format!("{}: {e}", path.display()),
                ))
            })?;
            let t = load_table(&text, &label)?;
            (None, t)
        }
    };
    if let Some(g) = &group {
        validate_against_class(&table, &g.class_data())?;
    }
    let matrices = build_tensor_matrices(&table)?;
    Ok(Prepared {
        label,
        group,
        table,
        matrices,
    })
}
