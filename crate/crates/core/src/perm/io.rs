//! Group file format:
//!
//! ```text
//! # comment
//! name: A6
//! degree: 6
//! gen: 2 3 4 5 1 6
//! gen: 1 2 3 5 6 4
//! ```
//!
//! Each `gen` line lists the images of points `1..=degree`.

use super::{PermGroup, Permutation};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFile {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Permutation>,
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut name = None;
        let mut degree: Option<usize> = None;
        let mut raw_gens: Vec<(usize, Vec<usize>)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let malformed = |reason: String| Error::Malformed {
                line: line_no,
                reason,
            };
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| malformed(format!("expected `key: value`, got {line:?}")))?;
            let value = value.trim();
            match key.trim() {
                "name" => name = Some(value.to_string()),
                "degree" => {
                    degree = Some(
                        value
                            .parse()
                            .map_err(|_| malformed(format!("bad degree {value:?}")))?,
                    )
                }
                "gen" => {
                    let images = value
                        .split_whitespace()
                        .map(str::parse::<usize>)
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| malformed("generator images must be integers".into()))?;
                    raw_gens.push((line_no, images));
                }
                other => return Err(malformed(format!("unknown key {other:?}"))),
            }
        }
        let degree = degree.ok_or(Error::Malformed {
            line: 0,
            reason: "missing degree".into(),
        })?;
        if degree == 0 || degree > super::MAX_DEGREE {
            return Err(Error::Malformed {
                line: 0,
                reason: format!("degree must be in 1..={}", super::MAX_DEGREE),
            });
        }
        let generators = raw_gens
            .into_iter()
            .map(|(line, images)| {
                if images.len() != degree {
                    return Err(Error::Malformed {
                        line,
                        reason: format!("expected {degree} images, found {}", images.len()),
                    });
                }
                Permutation::from_one_based(&images).map_err(|e| Error::Malformed {
                    line,
                    reason: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            name: name.unwrap_or_default(),
            degree,
            generators,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("name: {}\ndegree: {}\n", self.name, self.degree);
        for g in &self.generators {
            let imgs: Vec<String> = g.one_based().iter().map(usize::to_string).collect();
            out.push_str(&format!("gen: {}\n", imgs.join(" ")));
        }
        out
    }

    pub fn build(&self) -> Result<PermGroup> {
        PermGroup::build(self.degree, &self.generators)
    }
}
