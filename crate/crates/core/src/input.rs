//! The declarative problem file.
//!
//! ```toml
//! vars = 8
//! Q = [[1, 1, 0, 0, -1, -1, 2, -2], ...]
//! ideal = ["T(1)*T(6) + T(2)*T(5) + T(3)*T(4) + T(7)*T(8)"]
//! w = [1, 9, 16, 0]
//! mode = "all-subsets"
//!
//! [grading]
//! free_rank = 3
//! torsion = [2]
//! ```
//!
//! The last `len(torsion)` rows of `Q` are the torsion rows. Faces are lists
//! of 1-based variable indices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::git::FaceSource;
use crate::grading::{DegreeMatrix, GradingGroup, GroupElement};
use crate::poly::{parse_polynomial, GradedPolyRing, Ideal, IndexedVars, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradingSpec {
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<i64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    #[default]
    AllSubsets,
    UserFaces,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all-subsets" => Ok(Mode::AllSubsets),
            "user-faces" => Ok(Mode::UserFaces),
            _ => Err(Error::Parse(format!(
                "unknown mode `{s}` (expected all-subsets or user-faces)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemInput {
    pub vars: usize,
    #[serde(rename = "Q")]
    pub q: Vec<Vec<i64>>,
    #[serde(default)]
    pub ideal: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    pub grading: GradingSpec,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map_or(0, |p| p + 1) + 1;
    (line, col)
}

/// Parses and checks a problem file; every problem found is reported.
pub fn parse_input(text: &str) -> Result<ProblemInput> {
    let input: ProblemInput = toml::from_str(text).map_err(|e| {
        let msg = e.message().trim().to_string();
        match e.span() {
            Some(span) => {
                let (line, col) = line_col(text, span.start);
                Error::Parse(format!("line {line}, column {col}: {msg}"))
            }
            None => Error::Parse(msg),
        }
    })?;
    let diagnostics = input.diagnostics();
    if diagnostics.is_empty() {
        Ok(input)
    } else {
        Err(Error::Parse(diagnostics.join("\n")))
    }
}

impl ProblemInput {
    /// Consistency problems, one message each.
    pub fn diagnostics(&self) -> Vec<String> {
        let mut out = Vec::new();
        let rows = self.grading.free_rank + self.grading.torsion.len();
        if let Some(a) = self.grading.torsion.iter().find(|&&a| a < 2) {
            out.push(format!("grading.torsion: order {a} is below 2"));
        }
        if self.vars == 0 {
            out.push("vars: at least one variable is required".to_string());
        }
        if self.q.len() != rows {
            out.push(format!(
                "Q: {} rows given but the grading group needs {rows}",
                self.q.len()
            ));
        }
        for (i, row) in self.q.iter().enumerate() {
            if row.len() != self.vars {
                out.push(format!(
                    "Q: row {} has {} entries but vars = {}",
                    i + 1,
                    row.len(),
                    self.vars
                ));
            }
        }
        let names = IndexedVars::new("T", self.vars);
        for (i, g) in self.ideal.iter().enumerate() {
            if let Err(e) = parse_polynomial(g, &names) {
                out.push(format!("ideal: generator {}: {e}", i + 1));
            }
        }
        if let Some(w) = &self.w {
            if w.len() != rows {
                out.push(format!("w: {} entries given but the grading group needs {rows}", w.len()));
            }
        }
        if let Some(faces) = &self.faces {
            for (i, f) in faces.iter().enumerate() {
                if f.is_empty() {
                    out.push(format!("faces: face {} is empty", i + 1));
                }
                if let Some(bad) = f.iter().find(|&&v| v == 0 || v > self.vars) {
                    out.push(format!(
                        "faces: face {} names variable {bad}, expected 1..{}",
                        i + 1,
                        self.vars
                    ));
                }
            }
        }
        if self.mode == Some(Mode::UserFaces) && self.faces.is_none() {
            out.push("mode: user-faces requires a `faces` list".to_string());
        }
        out
    }

    pub fn group(&self) -> Result<GradingGroup> {
        GradingGroup::new(self.grading.free_rank, self.grading.torsion.clone())
    }

    pub fn degree_matrix(&self) -> Result<DegreeMatrix> {
        DegreeMatrix::from_rows(self.group()?, &self.q)
    }

    pub fn ring(&self) -> Result<GradedPolyRing> {
        Ok(GradedPolyRing::new(self.degree_matrix()?))
    }

    pub fn generators(&self) -> Result<Vec<Polynomial>> {
        let names = IndexedVars::new("T", self.vars);
        self.ideal
            .iter()
            .map(|g| parse_polynomial(g, &names))
            .collect()
    }

    pub fn ideal(&self) -> Result<Ideal> {
        Ideal::new(self.ring()?, self.generators()?)
    }

    /// `w` as a group element, if present.
    pub fn weight(&self) -> Result<Option<GroupElement>> {
        let Some(w) = &self.w else { return Ok(None) };
        let k = self.grading.free_rank;
        if w.len() != k + self.grading.torsion.len() {
            return Err(Error::Parse(format!("w must have {} entries", k + self.grading.torsion.len())));
        }
        Ok(Some(self.group()?.element(w[..k].to_vec(), w[k..].to_vec())?))
    }

    pub fn mode(&self) -> Mode {
        self.mode.unwrap_or_default()
    }

    pub fn face_source(&self) -> FaceSource {
        match (self.mode(), &self.faces) {
            (Mode::UserFaces, Some(faces)) => FaceSource::UserFaces(
                faces
                    .iter()
                    .map(|f| f.iter().map(|&v| v - 1).collect())
                    .collect(),
            ),
            _ => FaceSource::AllSubsets,
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("problem input serializes")
    }
}

/// Parses `"1,9,16,0"` (also accepting spaces and brackets).
pub fn parse_int_list(text: &str) -> Result<Vec<i64>> {
    text.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<i64>()
                .map_err(|_| Error::Parse(format!("`{s}` is not an integer in `{text}`")))
        })
        .collect()
}
