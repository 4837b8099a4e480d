//! Bundled data files and an optional on-disk override directory.
//!
//! Layout of a data directory:
//!
//! ```text
//! table1.txt        stabilizer records
//! table2.txt        (order, lattice) pairs
//! affine.txt        named F2 matrices and vectors
//! groups/*.grp      permutation group generator files
//! ```

use std::path::{Path, PathBuf};

use crate::{Error, Result};

pub const TABLE1: &str = include_str!("../data/table1.txt");
pub const TABLE2: &str = include_str!("../data/table2.txt");
pub const AFFINE: &str = include_str!("../data/affine.txt");

const GROUPS: &[(&str, &str)] = &[
    ("m24.grp", include_str!("../data/groups/m24.grp")),
    ("a5.grp", include_str!("../data/groups/a5.grp")),
    ("a6.grp", include_str!("../data/groups/a6.grp")),
    ("s6.grp", include_str!("../data/groups/s6.grp")),
    ("l27.grp", include_str!("../data/groups/l27.grp")),
    ("c2.grp", include_str!("../data/groups/c2.grp")),
    ("c3.grp", include_str!("../data/groups/c3.grp")),
    ("c4.grp", include_str!("../data/groups/c4.grp")),
    ("c5.grp", include_str!("../data/groups/c5.grp")),
    ("c6.grp", include_str!("../data/groups/c6.grp")),
    ("c7.grp", include_str!("../data/groups/c7.grp")),
    ("c8.grp", include_str!("../data/groups/c8.grp")),
];

/// Environment variable naming a data directory that replaces the bundled files.
pub const DATA_DIR_ENV: &str = "K3TK_DATA_DIR";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DataSource {
    Bundled,
    Dir(PathBuf),
}

impl DataSource {
    /// `Dir` if `K3TK_DATA_DIR` is set and non-empty, otherwise `Bundled`.
    pub fn from_env() -> Self {
        match std::env::var_os(DATA_DIR_ENV) {
            Some(dir) if !dir.is_empty() => DataSource::Dir(PathBuf::from(dir)),
            _ => DataSource::Bundled,
        }
    }

    fn read(&self, rel: &str, bundled: Option<&'static str>) -> Result<String> {
        match self {
            DataSource::Bundled => bundled
                .map(str::to_string)
                .ok_or_else(|| Error::MissingEntry(rel.to_string())),
            DataSource::Dir(dir) => read_file(&dir.join(rel)),
        }
    }

    pub fn table1(&self) -> Result<String> {
        self.read("table1.txt", Some(TABLE1))
    }

    pub fn table2(&self) -> Result<String> {
        self.read("table2.txt", Some(TABLE2))
    }

    pub fn affine(&self) -> Result<String> {
        self.read("affine.txt", Some(AFFINE))
    }

    /// A group file by name, e.g. `a6.grp`.
    pub fn group(&self, name: &str) -> Result<String> {
        let bundled = GROUPS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t);
        self.read(&format!("groups/{name}"), bundled)
    }
}

pub fn bundled_group_names() -> impl Iterator<Item = &'static str> {
    GROUPS.iter().map(|(n, _)| *n)
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}
