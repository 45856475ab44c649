use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use rug::Float;
use serde_json::{Map, Number, Value};

use super::sweep::ComparisonRecord;
use crate::error::{Error, Result};
use crate::numkernel::parse_float;

/// A cell fails once its normalized error exceeds this multiple of its ceiling.
pub const CEILING_SLACK: u32 = 2;

/// How many of the largest normalized errors a report lists.
const WORST_SHOWN: usize = 3;

/// Stored normalized-error ceilings, keyed by preset name then cell label.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Ceilings {
    presets: BTreeMap<String, BTreeMap<String, String>>,
}

impl Ceilings {
    pub fn parse(text: &str) -> Result<Self> {
        let root: Value = serde_json::from_str(text)?;
        let obj = root.as_object().ok_or_else(|| Error::Config("ceilings file must hold an object".into()))?;
        let mut presets = BTreeMap::new();
        for (name, cells) in obj {
            let cells = cells
                .as_object()
                .ok_or_else(|| Error::Config(format!("ceilings for {name:?} must be an object")))?;
            let mut m = BTreeMap::new();
            for (cell, v) in cells {
                let text = match v {
                    Value::Number(x) => x.to_string(),
                    _ => return Err(Error::Config(format!("ceiling {name}/{cell} is not a number"))),
                };
                m.insert(cell.clone(), text);
            }
            presets.insert(name.clone(), m);
        }
        Ok(Ceilings { presets })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Ceilings::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        let mut root = Map::new();
        for (name, cells) in &self.presets {
            let mut obj = Map::new();
            for (cell, v) in cells {
                obj.insert(cell.clone(), Value::Number(Number::from_str(v).expect("stored ceilings are numbers")));
            }
            root.insert(name.clone(), Value::Object(obj));
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(root)).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn get(&self, preset: &str, cell: &str) -> Option<Float> {
        self.presets.get(preset)?.get(cell).and_then(|s| parse_float(s, 64))
    }

    pub fn set(&mut self, preset: &str, cell: &str, ceiling: &Float) {
        // Stored as JSON prints it, so a save and load round trip is exact.
        let text = Number::from_str(&format!("{:.5e}", ceiling)).expect("formatted number parses").to_string();
        self.presets.entry(preset.to_string()).or_default().insert(cell.to_string(), text);
    }

    /// Replaces a preset's ceilings with the observed normalized errors.
    pub fn bootstrap(&mut self, preset: &str, records: &[ComparisonRecord]) {
        self.presets.remove(preset);
        for r in records {
            let rounded_up = Float::with_val(64, &r.normalized_err) * (1.0 + 1e-5);
            self.set(preset, &r.cell, &rounded_up);
        }
    }
}

#[derive(Clone, Debug)]
pub struct CellVerdict {
    pub cell: String,
    pub normalized_err: Float,
    pub ceiling: Option<Float>,
}

impl CellVerdict {
    pub fn failed(&self) -> bool {
        match &self.ceiling {
            Some(c) => self.normalized_err > Float::with_val(64, c * CEILING_SLACK),
            None => false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RegressionReport {
    pub preset: String,
    pub cells: Vec<CellVerdict>,
}

impl RegressionReport {
    pub fn passed(&self) -> bool {
        !self.cells.iter().any(CellVerdict::failed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CellVerdict> {
        self.cells.iter().filter(|c| c.failed())
    }

    pub fn new_cells(&self) -> impl Iterator<Item = &CellVerdict> {
        self.cells.iter().filter(|c| c.ceiling.is_none())
    }

    /// Largest normalized errors first; ties keep sweep order.
    pub fn worst(&self) -> Vec<&CellVerdict> {
        let mut v: Vec<&CellVerdict> = self.cells.iter().collect();
        v.sort_by(|a, b| b.normalized_err.partial_cmp(&a.normalized_err).unwrap_or(std::cmp::Ordering::Equal));
        v.truncate(WORST_SHOWN);
        v
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "preset {}: {} ({} cells, {} failed, {} new)",
            self.preset,
            if self.passed() { "PASS" } else { "FAIL" },
            self.cells.len(),
            self.failures().count(),
            self.new_cells().count()
        );
        let line = |s: &mut String, tag: &str, c: &CellVerdict| {
            let ceiling = c.ceiling.as_ref().map_or_else(|| "none".to_string(), |x| format!("{x:.5e}"));
            let _ = writeln!(s, "  {tag} {} normalized={:.5e} ceiling={ceiling}", c.cell, c.normalized_err);
        };
        for c in self.failures() {
            line(&mut s, "fail", c);
        }
        for c in self.new_cells() {
            line(&mut s, "new", c);
        }
        for c in self.worst() {
            line(&mut s, "worst", c);
        }
        s
    }
}

/// Compares each record against its stored ceiling with [`CEILING_SLACK`].
/// Cells without a ceiling are listed as new and do not fail.
pub fn regression_check(preset: &str, records: &[ComparisonRecord], ceilings: &Ceilings) -> RegressionReport {
    let cells = records
        .iter()
        .map(|r| CellVerdict {
            cell: r.cell.clone(),
            normalized_err: r.normalized_err.clone(),
            ceiling: ceilings.get(preset, &r.cell),
        })
        .collect();
    RegressionReport { preset: preset.to_string(), cells }
}

/// [`regression_check`] against a ceilings file.
pub fn regression_check_file(preset: &str, records: &[ComparisonRecord], path: &Path) -> Result<RegressionReport> {
    Ok(regression_check(preset, records, &Ceilings::load(path)?))
}
