use super::config::SweepConfig;
use crate::error::{Error, Result};

/// Bundled sweep configurations, sorted by name.
pub const PRESETS: &[(&str, &str)] = &[
    ("aq_minus", include_str!("../../presets/aq_minus.cfg")),
    ("aq_minus_log2", include_str!("../../presets/aq_minus_log2.cfg")),
    ("aq_minus_n03log", include_str!("../../presets/aq_minus_n03log.cfg")),
    ("aq_plus", include_str!("../../presets/aq_plus.cfg")),
    ("confluent_minus", include_str!("../../presets/confluent_minus.cfg")),
    ("confluent_plus", include_str!("../../presets/confluent_plus.cfg")),
    ("g_minus", include_str!("../../presets/g_minus.cfg")),
    ("g_plus", include_str!("../../presets/g_plus.cfg")),
    ("g_spec_minus", include_str!("../../presets/g_spec_minus.cfg")),
    ("h_minus", include_str!("../../presets/h_minus.cfg")),
    ("h_plus", include_str!("../../presets/h_plus.cfg")),
    ("ismail_masson_minus", include_str!("../../presets/ismail_masson_minus.cfg")),
    ("ismail_masson_plus", include_str!("../../presets/ismail_masson_plus.cfg")),
    ("jackson_minus", include_str!("../../presets/jackson_minus.cfg")),
    ("jackson_minus_nu1", include_str!("../../presets/jackson_minus_nu1.cfg")),
    ("jackson_plus", include_str!("../../presets/jackson_plus.cfg")),
    ("q_laguerre_minus", include_str!("../../presets/q_laguerre_minus.cfg")),
    ("q_laguerre_minus_alpha", include_str!("../../presets/q_laguerre_minus_alpha.cfg")),
    ("q_laguerre_plus", include_str!("../../presets/q_laguerre_plus.cfg")),
    ("stieltjes_wigert_minus", include_str!("../../presets/stieltjes_wigert_minus.cfg")),
    ("stieltjes_wigert_plus", include_str!("../../presets/stieltjes_wigert_plus.cfg")),
];

/// Normalized-error ceilings measured on the bundled presets.
pub const DEFAULT_CEILINGS: &str = include_str!("../../presets/ceilings.json");

pub fn preset_names() -> impl Iterator<Item = &'static str> {
    PRESETS.iter().map(|p| p.0)
}

pub fn preset(name: &str) -> Result<SweepConfig> {
    let (_, text) = PRESETS
        .iter()
        .find(|p| p.0 == name)
        .ok_or_else(|| Error::Config(format!("no preset named {name:?}")))?;
    SweepConfig::parse(text)
}

pub fn all_presets() -> Result<Vec<SweepConfig>> {
    preset_names().map(preset).collect()
}
